//! The acceptance suite: one self-contained runner per shipped guarantee,
//! each with a wall-clock limit. The CLI `accept` subcommand and the
//! `acceptance` integration test both drive this module, so the checks run
//! identically in both places.

use std::time::{Duration, Instant};

use num::{BigUint, Zero};

use crate::bounds;
use crate::error::Result;
use crate::ffield::{FieldContext, SubfieldEmbedding};
use crate::fqlinalg::{enumerate_subspaces, FqMatrix};
use crate::gabidulin::{rank_weight, GabidulinCode};
use crate::linpoly::LinearizedPoly;
use crate::oracle::{
    ball_volume_brute, check_pairwise_overlap, list_size_at, max_list_size, OracleBudget,
};
use crate::witness::{build_witness, verify_witness, witness_code, DEFAULT_WORK_LIMIT};

/// Tolerance for comparing the floating-point radius values against the
/// independently bisected references.
pub const REAL_TOLERANCE: f64 = 1e-9;

pub struct Criterion {
    pub id: &'static str,
    pub summary: &'static str,
    pub limit: Duration,
    run: fn() -> Result<(bool, String)>,
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub summary: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionOutcome {
    /// One-line report: verdict, id, timing, detail.
    pub fn line(&self) -> String {
        format!(
            "{} {} [{:.3}s of {:.0}s] {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs_f64(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: "example-12-6",
            summary: "decoding radii for the (q=2, m=n=12, k=6) code",
            limit: Duration::from_secs(1),
            run: c01_example_radii,
        },
        Criterion {
            id: "tight-4-2",
            summary: "matching bounds and a full-size witness for G(4,2), tau=2",
            limit: Duration::from_secs(5),
            run: c02_tight_instance,
        },
        Criterion {
            id: "witness-3-1",
            summary: "witness of size 7 for G(3,1), tau=2, with exhaustive max-list",
            limit: Duration::from_secs(10),
            run: c03_second_witness,
        },
        Criterion {
            id: "gaussian-sandwich",
            summary: "q^{s(n-s)} <= [n s]_q <= 4 q^{s(n-s)} on the small grid",
            limit: Duration::from_secs(1),
            run: c04_gaussian_sandwich,
        },
        Criterion {
            id: "subspace-count",
            summary: "subspace enumeration count equals the Gaussian binomial",
            limit: Duration::from_secs(10),
            run: c05_subspace_count,
        },
        Criterion {
            id: "ball-volume",
            summary: "closed-form ball volume equals brute-force matrix count",
            limit: Duration::from_secs(30),
            run: c06_ball_volume,
        },
        Criterion {
            id: "mrd-distance",
            summary: "exhaustive minimum nonzero rank equals n-k+1",
            limit: Duration::from_secs(30),
            run: c07_mrd,
        },
        Criterion {
            id: "bound-chains",
            summary: "lower/upper bound inequality chains over the parameter grid",
            limit: Duration::from_secs(30),
            run: c08_bound_chains,
        },
        Criterion {
            id: "even-distance-equality",
            summary: "closed form for even d at tau = d/2 equals the summation bound",
            limit: Duration::from_secs(5),
            run: c09_even_distance,
        },
        Criterion {
            id: "witness-overlap",
            summary: "pairwise row-space overlap limit on both witness lists",
            limit: Duration::from_secs(10),
            run: c10_overlap,
        },
        Criterion {
            id: "algebra-suite",
            summary: "linearity, symbolic-product, Frobenius, and rank-nullity sweeps",
            limit: Duration::from_secs(30),
            run: c11_algebra,
        },
    ]
}

/// Runs every criterion (or the one matching `only`), in declaration order.
pub fn run_all(only: Option<&str>) -> Vec<CriterionOutcome> {
    criteria()
        .into_iter()
        .filter(|c| only.is_none_or(|id| id == c.id))
        .map(run_criterion)
        .collect()
}

pub fn run_criterion(c: Criterion) -> CriterionOutcome {
    let start = Instant::now();
    let (mut pass, mut detail) = match (c.run)() {
        Ok((p, d)) => (p, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    if elapsed > c.limit {
        pass = false;
        detail.push_str(&format!(
            " [over time limit: {:.2}s > {:.0}s]",
            elapsed.as_secs_f64(),
            c.limit.as_secs_f64()
        ));
    }
    CriterionOutcome {
        id: c.id,
        summary: c.summary,
        pass,
        detail,
        elapsed,
        limit: c.limit,
    }
}

/// Square root by plain bisection; independent of the libm path used in
/// `bounds::tau_lb`.
fn bisect_sqrt(target: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = target.max(1.0);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if mid * mid <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn c01_example_radii() -> Result<(bool, String)> {
    let (n, d) = (12usize, 7usize);
    let bmd = bounds::bmd_radius(d);
    let t_lb = bounds::tau_lb(n, d, 0.9)?;
    let t_j = bounds::tau_lb(n, d, 0.0)?;
    let ref_lb = n as f64 - bisect_sqrt(12.0 * (12.0 - 7.0 + 0.9));
    let ref_j = n as f64 - bisect_sqrt(12.0 * (12.0 - 7.0));
    let ok = bmd == 3
        && (t_lb.value - ref_lb).abs() < REAL_TOLERANCE
        && t_lb.ceil == 4
        && (t_j.value - ref_j).abs() < REAL_TOLERANCE
        && t_j.ceil == 5;
    Ok((
        ok,
        format!(
            "bmd={bmd} tau_lb(0.9)={:.6}->{} johnson={:.6}->{}",
            t_lb.value, t_lb.ceil, t_j.value, t_j.ceil
        ),
    ))
}

fn c02_tight_instance() -> Result<(bool, String)> {
    let ctx = FieldContext::new(2, 4)?;
    let (code, _) = witness_code(&ctx, 4, 2)?;
    let lower = bounds::lower_bound(2, 4, 4, 2, 2)?;
    let upper = bounds::upper_bound(2, 4, 4, 2, 2)?;
    let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT)?;
    let report = verify_witness(&w)?;
    let ls = list_size_at(&code, w.r(), 2, OracleBudget::default())?;
    let ok = lower.exact == BigUint::from(35u32)
        && upper.exact_sum == BigUint::from(35u32)
        && w.len() == 35
        && report.pass
        && (35..=36).contains(&ls.count)
        && ls.count >= w.len() as u64;
    Ok((
        ok,
        format!(
            "lower={} upper={} witness={} verified={} oracle={}",
            lower.exact,
            upper.exact_sum,
            w.len(),
            report.pass,
            ls.count
        ),
    ))
}

fn c03_second_witness() -> Result<(bool, String)> {
    let ctx = FieldContext::new(2, 3)?;
    let (code, _) = witness_code(&ctx, 3, 1)?;
    let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT)?;
    let report = verify_witness(&w)?;
    let ml = max_list_size(&code, 2, OracleBudget::default())?;
    let safe = bounds::upper_bound(2, 3, 3, 1, 2)?.safe;
    let ok = w.len() >= 7
        && report.pass
        && BigUint::from(ml.max) >= BigUint::from(7u32)
        && BigUint::from(ml.max) <= safe
        && ml.max >= w.len() as u64;
    Ok((
        ok,
        format!(
            "witness={} verified={} exhaustive_max={} safe_cap={}",
            w.len(),
            report.pass,
            ml.max,
            safe
        ),
    ))
}

fn c04_gaussian_sandwich() -> Result<(bool, String)> {
    let mut checked = 0u32;
    for q in [2u64, 3] {
        for n in 0..=8usize {
            for s in 0..=n {
                let v = bounds::gaussian_binomial(n, s, q)?;
                let base = BigUint::from(q).pow((s * (n - s)) as u32);
                if v < base || v > &base * 4u32 {
                    return Ok((false, format!("sandwich broken at q={q} n={n} s={s}")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} (n,s,q) triples inside the sandwich")))
}

fn c05_subspace_count() -> Result<(bool, String)> {
    let mut checked = 0u32;
    for n in 0..=5usize {
        for s in 0..=n {
            let count = enumerate_subspaces(2, n, s)?.count();
            let expected = bounds::gaussian_binomial(n, s, 2)?;
            if BigUint::from(count) != expected {
                return Ok((
                    false,
                    format!("count {count} != {expected} at n={n} s={s}"),
                ));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} (n,s) pairs match the formula")))
}

fn c06_ball_volume() -> Result<(bool, String)> {
    let budget = OracleBudget::default();
    let mut checked = 0u32;
    for m in 1..=4usize {
        for n in 1..=4usize {
            for tau in 0..=m.min(n) {
                let brute = ball_volume_brute(m, n, tau, 2, budget)?;
                let formula = bounds::ball_volume(m, n, tau, 2)?;
                if BigUint::from(brute) != formula {
                    return Ok((
                        false,
                        format!("{brute} != {formula} at m={m} n={n} tau={tau}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} (m,n,tau) cells agree with brute force")))
}

fn c07_mrd() -> Result<(bool, String)> {
    let mut details = Vec::new();
    for n in [3usize, 4] {
        let ctx = FieldContext::new(2, n)?;
        for k in 1..=n {
            let code = GabidulinCode::with_default_points(&ctx, n, k)?;
            let mut min_rank = usize::MAX;
            for f in code.message_polynomials()? {
                if f.is_zero() {
                    continue;
                }
                min_rank = min_rank.min(rank_weight(&code.encode(&f)?)?);
            }
            if min_rank != n - k + 1 {
                return Ok((
                    false,
                    format!("min rank {min_rank} != {} at n={n} k={k}", n - k + 1),
                ));
            }
            details.push(format!("({n},{k})"));
        }
    }
    Ok((true, format!("distance exact for {}", details.join(" "))))
}

fn c08_bound_chains() -> Result<(bool, String)> {
    let mut checked = 0u32;
    for q in [2u64, 3] {
        for n in 1..=8usize {
            let m = n;
            for k in 1..=n {
                let d = n - k + 1;
                for tau in 0..d {
                    let lb = bounds::lower_bound(q, m, n, k, tau)?;
                    let ub = bounds::upper_bound(q, m, n, k, tau)?;
                    if !lb.exp_negative && lb.exact < lb.exp_form {
                        return Ok((
                            false,
                            format!("power-form chain broken at q={q} n={n} k={k} tau={tau}"),
                        ));
                    }
                    let t0 = bounds::bmd_radius(d);
                    if tau > t0 {
                        let mut mid = BigUint::zero();
                        for t in t0 + 1..=tau {
                            mid += BigUint::from(q).pow(((2 * t + 1 - d) * (n - t)) as u32);
                        }
                        mid *= 4u32;
                        if ub.exact_sum > mid || mid > ub.simplified {
                            return Ok((
                                false,
                                format!("summation chain broken at q={q} n={n} k={k} tau={tau}"),
                            ));
                        }
                    }
                    if lb.exact > ub.safe {
                        return Ok((
                            false,
                            format!("bounds crossed at q={q} n={n} k={k} tau={tau}"),
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((true, format!("{checked} grid points keep every chain intact")))
}

fn c09_even_distance() -> Result<(bool, String)> {
    let mut checked = 0u32;
    for n in 2..=10usize {
        for d in (2..=n).step_by(2) {
            let k = n - d + 1;
            let al = bounds::augot_loidreau_special(2, n, d)?;
            let ub = bounds::upper_bound(2, n, n, k, d / 2)?;
            if al != ub.exact_sum {
                return Ok((
                    false,
                    format!("{al} != {} at n={n} d={d}", ub.exact_sum),
                ));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} (n,d) pairs agree on both forms")))
}

fn c10_overlap() -> Result<(bool, String)> {
    let ctx4 = FieldContext::new(2, 4)?;
    let (code4, _) = witness_code(&ctx4, 4, 2)?;
    let w4 = build_witness(&code4, 2, DEFAULT_WORK_LIMIT)?;
    let rep4 = check_pairwise_overlap(w4.r(), w4.codewords(), code4.d())?;
    let ctx3 = FieldContext::new(2, 3)?;
    let (code3, _) = witness_code(&ctx3, 3, 1)?;
    let w3 = build_witness(&code3, 2, DEFAULT_WORK_LIMIT)?;
    let rep3 = check_pairwise_overlap(w3.r(), w3.codewords(), code3.d())?;
    let ok = rep4.pass && rep3.pass;
    Ok((
        ok,
        format!(
            "G(4,2): {} pairs clean; G(3,1): {} pairs clean",
            rep4.checked_pairs, rep3.checked_pairs
        ),
    ))
}

fn c11_algebra() -> Result<(bool, String)> {
    let mut cases = 0u64;

    // evaluation is F_q-linear: exhaustive (a, b, lambda, mu) over F_{2^4}
    // for three fixed polynomials
    let f16 = FieldContext::new(2, 4)?;
    let polys: Vec<LinearizedPoly> = [5u64, 9, 14]
        .iter()
        .map(|&seed| {
            LinearizedPoly::from_coeffs(
                &f16,
                vec![
                    f16.from_value_u64(seed)?,
                    f16.from_value_u64(seed * 3 % 16)?,
                    f16.from_value_u64(seed * 7 % 16)?,
                ],
            )
        })
        .collect::<Result<_>>()?;
    let elems16: Vec<_> = f16.elements().collect();
    for f in &polys {
        for a in &elems16 {
            for b in &elems16 {
                for lam in 0..2u64 {
                    for mu in 0..2u64 {
                        let lhs = f.evaluate(&a.scale(lam).add(&b.scale(mu)))?;
                        let rhs = f
                            .evaluate(a)?
                            .scale(lam)
                            .add(&f.evaluate(b)?.scale(mu));
                        if lhs != rhs {
                            return Ok((false, "linearity of evaluation failed".into()));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }

    // symbolic product: identity element, associativity on 1000 deterministic
    // triples, plus the canonical non-commutativity pair
    let f8 = FieldContext::new(2, 3)?;
    let x = LinearizedPoly::identity(&f8);
    let sample: Vec<LinearizedPoly> = (1..=10u64)
        .map(|v| {
            LinearizedPoly::from_coeffs(
                &f8,
                vec![
                    f8.from_value_u64(v % 8)?,
                    f8.from_value_u64((v * 3 + 1) % 8)?,
                    f8.from_value_u64((v * 5 + 2) % 8)?,
                ],
            )
        })
        .collect::<Result<_>>()?;
    for f in &sample {
        if x.symbolic_product(f)? != *f || f.symbolic_product(&x)? != *f {
            return Ok((false, "identity law failed".into()));
        }
        cases += 1;
    }
    for f in &sample {
        for g in &sample {
            for h in &sample {
                let lhs = f.symbolic_product(g)?.symbolic_product(h)?;
                let rhs = f.symbolic_product(&g.symbolic_product(h)?)?;
                if lhs != rhs {
                    return Ok((false, "associativity failed".into()));
                }
                cases += 1;
            }
        }
    }
    let f4 = FieldContext::new(2, 2)?;
    let a = f4.generator();
    let ax = LinearizedPoly::monomial(a.clone(), 0);
    let x1 = LinearizedPoly::monomial(f4.one(), 1);
    if ax.symbolic_product(&x1)? == x1.symbolic_product(&ax)? {
        return Ok((false, "expected non-commutativity witness commuted".into()));
    }
    cases += 1;

    // Frobenius composition law, exhaustive over two fields
    let f27 = FieldContext::new(3, 3)?;
    for ctx in [&f16, &f27] {
        for e in ctx.elements() {
            for i in 0..=5i64 {
                for j in 0..=5i64 {
                    if e.frobenius(i + j) != e.frobenius(i).frobenius(j) {
                        return Ok((false, "Frobenius composition failed".into()));
                    }
                    cases += 1;
                }
            }
        }
    }

    // rank-nullity, exhaustive over all 3x3 and 2x4 matrices over F_2
    for (rows, cols) in [(3usize, 3usize), (2, 4)] {
        let cells = rows * cols;
        for bits in 0u32..(1 << cells) {
            let entries: Vec<u64> = (0..cells).map(|i| ((bits >> i) & 1) as u64).collect();
            let mat = FqMatrix::new(2, rows, cols, entries)?;
            if mat.rank() + mat.kernel_basis().dim() != cols {
                return Ok((false, format!("rank-nullity failed on a {rows}x{cols} matrix")));
            }
            cases += 1;
        }
    }

    // embedding consistency joins the sweep: mapping commutes with frobenius
    let emb = SubfieldEmbedding::new(&f4, &f16)?;
    for e in f4.elements() {
        let lhs = emb.map(&e.frobenius(1))?;
        let rhs = emb.map(&e)?.frobenius(1);
        if lhs != rhs {
            return Ok((false, "embedding does not commute with Frobenius".into()));
        }
        cases += 1;
    }

    Ok((cases >= 1000, format!("{cases} deterministic cases passed")))
}
