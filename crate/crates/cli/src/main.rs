//! Command-line workbench: bound tables, witness construction and
//! verification, brute-force oracles, and the acceptance suite.
//!
//! Exit codes: 0 ok, 2 parameter error, 3 budget exceeded, 4 verification
//! failure.

mod out;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num::BigUint;
use serde_json::json;

use out::{render, row_from_value, Format, Row};
use ranklist::accept;
use ranklist::bounds::{self, BoundReport};
use ranklist::decimal::to_dec;
use ranklist::error::{Error, Result};
use ranklist::ffield::{FieldContext, FieldSpec};
use ranklist::gabidulin::{CodeSpec, GabidulinCode};
use ranklist::oracle::{
    ball_volume_brute, check_pairwise_overlap, list_size_at, max_list_size, OracleBudget,
};
use ranklist::witness::{
    build_witness, verify_witness, witness_code, Witness, WitnessFile, DEFAULT_WORK_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "ranklist",
    version,
    about = "List-size bounds, witnesses, and brute-force oracles for rank-metric codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bound table for one code: one row per decoding radius
    Bounds(BoundsArgs),
    /// Construct a witness list at radius tau, verify it, optionally save it
    Witness(WitnessArgs),
    /// Brute-force cross-checks (exponential work; guarded by --budget)
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the acceptance suite
    Accept(AcceptArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Field characteristic (prime; bound tables accept any q >= 2)
    #[arg(long, conflicts_with_all = ["field_spec", "code_spec"])]
    q: Option<u64>,
    /// Extension degree of the ambient field F_{q^m}
    #[arg(long, conflicts_with_all = ["field_spec", "code_spec"])]
    m: Option<usize>,
    /// Code length
    #[arg(long, conflicts_with = "code_spec")]
    n: Option<usize>,
    /// Code dimension
    #[arg(long, conflicts_with = "code_spec")]
    k: Option<usize>,
    /// JSON field description {"p", "m", "modulus"?}
    #[arg(long, value_name = "PATH")]
    field_spec: Option<PathBuf>,
    /// JSON code description {"field", "n", "k", "alphas"?}
    #[arg(long, value_name = "PATH")]
    code_spec: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Single radius, or the low end of the range when --tau-max is given
    #[arg(long)]
    tau: Option<usize>,
    /// High end of the radius range (inclusive); default covers 0..=d-1
    #[arg(long)]
    tau_max: Option<usize>,
    /// Slack parameter for the tau_LB radius, 0 <= eps < 1
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Decoding radius
    #[arg(long)]
    tau: usize,
    /// Cap on the number of subspace polynomials to enumerate
    #[arg(long, env = "RANKLIST_BUDGET")]
    budget: Option<u64>,
    /// Write the witness JSON here; the report still goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Codewords within radius tau of the received word in a witness file
    ListSize(ListSizeArgs),
    /// Maximum list size over every received word (doubly exponential)
    MaxList(MaxListArgs),
    /// Rank-metric ball volume by explicit matrix enumeration
    BallVolume(BallVolumeArgs),
}

#[derive(Args)]
struct ListSizeArgs {
    /// Witness JSON produced by the witness subcommand
    #[arg(long, value_name = "PATH")]
    witness: PathBuf,
    /// Radius override; defaults to the radius stored in the witness
    #[arg(long)]
    tau: Option<usize>,
    /// Enumeration cap
    #[arg(long, env = "RANKLIST_BUDGET")]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MaxListArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Radius; defaults to d-1
    #[arg(long)]
    tau: Option<usize>,
    /// Enumeration cap
    #[arg(long, env = "RANKLIST_BUDGET")]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BallVolumeArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tau: usize,
    /// Enumeration cap
    #[arg(long, env = "RANKLIST_BUDGET")]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AcceptArgs {
    /// Run a single criterion by id
    #[arg(long, value_name = "CRITERION-ID")]
    only: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::VerificationFailed(_) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::Witness(a) => cmd_witness(a),
        Cmd::Oracle(OracleCmd::ListSize(a)) => cmd_list_size(a),
        Cmd::Oracle(OracleCmd::MaxList(a)) => cmd_max_list(a),
        Cmd::Oracle(OracleCmd::BallVolume(a)) => cmd_ball_volume(a),
        Cmd::Accept(a) => cmd_accept(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::BadParameters(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))
}

fn require<T: Copy>(name: &str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| Error::BadParameters(format!("missing --{name}")))
}

impl ParamArgs {
    fn code_spec(&self) -> Result<Option<CodeSpec>> {
        match &self.code_spec {
            Some(path) => Ok(Some(CodeSpec::from_json(&read(path)?)?)),
            None => Ok(None),
        }
    }

    fn field_spec(&self) -> Result<Option<FieldSpec>> {
        match &self.field_spec {
            Some(path) => Ok(Some(FieldSpec::from_json(&read(path)?)?)),
            None => Ok(None),
        }
    }

    /// (q, m, n, k) without building any field, for the bound formulas.
    fn numeric(&self) -> Result<(u64, usize, usize, usize)> {
        if let Some(cs) = self.code_spec()? {
            return Ok((cs.field.p, cs.field.m, cs.n, cs.k));
        }
        let (q, m) = match self.field_spec()? {
            Some(fs) => (fs.p, fs.m),
            None => (require("q", self.q)?, require("m", self.m)?),
        };
        Ok((q, m, require("n", self.n)?, require("k", self.k)?))
    }

    fn context(&self) -> Result<Arc<FieldContext>> {
        if let Some(cs) = self.code_spec()? {
            return cs.field.build();
        }
        match self.field_spec()? {
            Some(fs) => fs.build(),
            None => FieldContext::new(require("q", self.q)?, require("m", self.m)?),
        }
    }

    /// Code on the default (polynomial-basis prefix) points, or exactly what
    /// the code spec describes.
    fn default_code(&self) -> Result<GabidulinCode> {
        if let Some(cs) = self.code_spec()? {
            return cs.build();
        }
        GabidulinCode::with_default_points(
            &self.context()?,
            require("n", self.n)?,
            require("k", self.k)?,
        )
    }

    /// Code on the embedded-subfield basis the witness construction needs. A
    /// code spec with explicit points is built verbatim and validated later.
    fn embedded_code(&self) -> Result<GabidulinCode> {
        if let Some(cs) = self.code_spec()? {
            return cs.build();
        }
        let ctx = self.context()?;
        let (code, _) = witness_code(&ctx, require("n", self.n)?, require("k", self.k)?)?;
        Ok(code)
    }
}

fn oracle_budget(flag: Option<u64>) -> OracleBudget {
    flag.map(OracleBudget::new).unwrap_or_default()
}

fn emit(rows: &[Row], output: &OutputArgs) -> Result<()> {
    let text = render(rows, output.format);
    match &output.out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn key_values(pairs: Vec<(&str, serde_json::Value)>) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn cmd_bounds(a: BoundsArgs) -> Result<i32> {
    let (q, m, n, k) = a.params.numeric()?;
    bounds::validate_code_params(q, m, n, k)?;
    let d = n - k + 1;
    let lo = a.tau.unwrap_or(0);
    let hi = match (a.tau, a.tau_max) {
        (_, Some(hi)) => hi,
        (Some(t), None) => t,
        (None, None) => d - 1,
    };
    if lo > hi {
        return Err(Error::BadParameters(format!(
            "empty radius range {lo}..={hi}"
        )));
    }
    if hi >= d {
        return Err(Error::RadiusTooLarge { tau: hi, d });
    }
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for tau in lo..=hi {
        let report = BoundReport::compute(q, m, n, k, tau, a.eps)?;
        rows.push(row_from_value(
            serde_json::to_value(&report).expect("plain struct"),
        ));
    }
    emit(&rows, &a.output)?;
    Ok(0)
}

fn cmd_witness(a: WitnessArgs) -> Result<i32> {
    let code = a.params.embedded_code()?;
    let limit = a.budget.unwrap_or(DEFAULT_WORK_LIMIT);
    let w = build_witness(&code, a.tau, limit)?;
    let report = verify_witness(&w)?;
    let overlap = check_pairwise_overlap(w.r(), w.codewords(), code.d())?;
    if let Some(path) = &a.out {
        let mut text = serde_json::to_string_pretty(&w.to_file()?).expect("plain struct");
        text.push('\n');
        write(path, &text)?;
    }
    let ctx = code.ctx();
    let row = key_values(vec![
        ("q", json!(ctx.p())),
        ("m", json!(ctx.m())),
        ("n", json!(code.n())),
        ("k", json!(code.k())),
        ("d", json!(code.d())),
        ("tau", json!(a.tau)),
        ("size", json!(report.size)),
        ("required_size", json!(report.required_size)),
        ("verified", json!(report.pass)),
        ("overlap_pass", json!(overlap.pass)),
        ("overlap_pairs", json!(overlap.checked_pairs)),
        (
            "out",
            json!(a
                .out
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()),
        ),
    ]);
    emit(
        &[row],
        &OutputArgs {
            format: a.format,
            out: None,
        },
    )?;
    if report.pass && overlap.pass {
        Ok(0)
    } else {
        Err(Error::VerificationFailed(
            "witness verification failed".into(),
        ))
    }
}

fn cmd_list_size(a: ListSizeArgs) -> Result<i32> {
    let file: WitnessFile = serde_json::from_str(&read(&a.witness)?)
        .map_err(|e| Error::Format(format!("witness file: {e}")))?;
    let w = Witness::from_file(&file)?;
    let code = w.code().clone();
    let tau = a.tau.unwrap_or(w.tau());
    let ls = list_size_at(&code, w.r(), tau, oracle_budget(a.budget))?;
    let ctx = code.ctx();
    let d = code.d();
    // the summation bound caps the list at any received word once tau < d
    let within_upper = if tau < d {
        let safe = bounds::upper_bound(ctx.p(), ctx.m(), code.n(), code.k(), tau)?.safe;
        Some(BigUint::from(ls.count) <= safe)
    } else {
        None
    };
    // the stored list sits inside the ball whenever the query radius covers it
    let contains_witness = if tau >= w.tau() {
        Some(ls.count >= w.len() as u64)
    } else {
        None
    };
    let agree = within_upper.unwrap_or(true) && contains_witness.unwrap_or(true);
    let row = key_values(vec![
        ("q", json!(ctx.p())),
        ("m", json!(ctx.m())),
        ("n", json!(code.n())),
        ("k", json!(code.k())),
        ("d", json!(d)),
        ("tau", json!(tau)),
        ("count", json!(ls.count)),
        ("witness_size", json!(w.len())),
        ("enumerated", json!(to_dec(&ls.enumerated))),
        ("within_upper", json!(within_upper)),
        ("contains_witness", json!(contains_witness)),
        ("agree", json!(agree)),
    ]);
    emit(&[row], &a.output)?;
    if agree {
        Ok(0)
    } else {
        Err(Error::VerificationFailed(
            "oracle disagrees with the bounds".into(),
        ))
    }
}

fn cmd_max_list(a: MaxListArgs) -> Result<i32> {
    let code = a.params.default_code()?;
    let d = code.d();
    let tau = a.tau.unwrap_or(d - 1);
    let ml = max_list_size(&code, tau, oracle_budget(a.budget))?;
    let ctx = code.ctx();
    let (q, m, n, k) = (ctx.p(), ctx.m(), code.n(), code.k());
    let lower = bounds::lower_bound(q, m, n, k, tau)?.exact;
    let safe = bounds::upper_bound(q, m, n, k, tau)?.safe;
    let max = BigUint::from(ml.max);
    let agree = lower <= max && max <= safe;
    let argmax: Vec<String> = ml.argmax.iter().map(|e| e.value().to_string()).collect();
    let row = key_values(vec![
        ("q", json!(q)),
        ("m", json!(m)),
        ("n", json!(n)),
        ("k", json!(k)),
        ("d", json!(d)),
        ("tau", json!(tau)),
        ("max", json!(ml.max)),
        ("argmax", json!(argmax.join(" "))),
        ("enumerated", json!(to_dec(&ml.enumerated))),
        ("lower_exact", json!(to_dec(&lower))),
        ("upper_safe", json!(to_dec(&safe))),
        ("agree", json!(agree)),
    ]);
    emit(&[row], &a.output)?;
    if agree {
        Ok(0)
    } else {
        Err(Error::VerificationFailed(
            "oracle disagrees with the bounds".into(),
        ))
    }
}

fn cmd_ball_volume(a: BallVolumeArgs) -> Result<i32> {
    let brute = ball_volume_brute(a.m, a.n, a.tau, a.q, oracle_budget(a.budget))?;
    let formula = bounds::ball_volume(a.m, a.n, a.tau, a.q)?;
    let agree = BigUint::from(brute) == formula;
    let row = key_values(vec![
        ("q", json!(a.q)),
        ("m", json!(a.m)),
        ("n", json!(a.n)),
        ("tau", json!(a.tau)),
        ("brute", json!(brute)),
        ("formula", json!(to_dec(&formula))),
        ("agree", json!(agree)),
    ]);
    emit(&[row], &a.output)?;
    if agree {
        Ok(0)
    } else {
        Err(Error::VerificationFailed(
            "brute-force ball volume disagrees with the formula".into(),
        ))
    }
}

fn cmd_accept(a: AcceptArgs) -> Result<i32> {
    let outcomes = accept::run_all(a.only.as_deref());
    if outcomes.is_empty() {
        return Err(Error::BadParameters(format!(
            "unknown criterion id {}",
            a.only.unwrap_or_default()
        )));
    }
    let rows: Vec<Row> = outcomes
        .iter()
        .map(|o| {
            key_values(vec![
                ("id", json!(o.id)),
                ("pass", json!(o.pass)),
                ("detail", json!(o.detail)),
            ])
        })
        .collect();
    emit(&rows, &a.output)?;
    if outcomes.iter().all(|o| o.pass) {
        Ok(0)
    } else {
        Err(Error::VerificationFailed(
            "acceptance criteria failed".into(),
        ))
    }
}
