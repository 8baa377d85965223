//! Constructive certificate for the list-size lower bound: an explicit
//! received word r together with a large set of codewords all at rank
//! distance exactly τ from r.
//!
//! The construction enumerates all monic linearized polynomials of q-degree
//! n−τ whose roots fill an (n−τ)-dimensional subspace of the embedded
//! F_{q^n} (there are [n, n−τ]_q of them), buckets them by their coefficients
//! at q-degrees k..n−τ−1, and takes the largest bucket. Differences inside
//! one bucket have q-degree below k, so they encode to codewords; by
//! pigeonhole the bucket has at least [n, n−τ]_q / q^{m(n−τ−k)} members.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::decimal::{parse_dec, to_dec};
use crate::error::{Error, Result};
use crate::ffield::{FieldContext, FieldElement, SubfieldEmbedding};
use crate::fqlinalg::enumerate_subspaces;
use crate::gabidulin::{rank_distance, GabidulinCode};
use crate::linpoly::{subspace_polynomial, LinearizedPoly};

/// Cap on the number of annihilators a witness construction may enumerate.
pub const DEFAULT_WORK_LIMIT: u64 = 1 << 22;

/// Code whose evaluation points are the embedded F_q-basis of F_{q^n} inside
/// F_{q^m}; the witness construction needs exactly these points. Returns the
/// code together with the embedding.
pub fn witness_code(
    ctx: &Arc<FieldContext>,
    n: usize,
    k: usize,
) -> Result<(GabidulinCode, SubfieldEmbedding)> {
    let source = FieldContext::new(ctx.p(), n)?;
    let embedding = SubfieldEmbedding::new(&source, ctx)?;
    let code = GabidulinCode::new(ctx, n, k, embedding.image_basis().to_vec())?;
    Ok((code, embedding))
}

/// Stream of all monic linearized polynomials over F_{q^m} of q-degree n−τ
/// whose root space is an (n−τ)-dimensional subspace of the embedded
/// F_{q^n}; one polynomial per subspace, in the canonical subspace order.
pub struct Annihilators {
    embedding: SubfieldEmbedding,
    subspaces: crate::fqlinalg::SubspaceEnumerator,
}

pub fn enumerate_annihilators(
    q: u64,
    n: usize,
    tau: usize,
    target: &Arc<FieldContext>,
) -> Result<Annihilators> {
    if q != target.p() {
        return Err(Error::BadParameters(format!(
            "q = {q} does not match the field characteristic {}",
            target.p()
        )));
    }
    if tau > n {
        return Err(Error::BadParameters(format!(
            "radius {tau} exceeds the subfield degree {n}"
        )));
    }
    let source = FieldContext::new(q, n)?;
    let embedding = SubfieldEmbedding::new(&source, target)?;
    let subspaces = enumerate_subspaces(q, n, n - tau)?;
    Ok(Annihilators {
        embedding,
        subspaces,
    })
}

impl Annihilators {
    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }
}

impl Iterator for Annihilators {
    type Item = LinearizedPoly;

    fn next(&mut self) -> Option<LinearizedPoly> {
        let u = self.subspaces.next()?;
        Some(
            subspace_polynomial(&u, &self.embedding)
                .expect("enumerated subspace matches the embedding"),
        )
    }
}

/// A received word r with a verified list of codewords at rank distance
/// exactly τ, plus the construction data that produced it.
#[derive(Debug, Clone)]
pub struct Witness {
    code: GabidulinCode,
    tau: usize,
    bucket_key: Vec<FieldElement>,
    base_poly: LinearizedPoly,
    bucket: Vec<LinearizedPoly>,
    r: Vec<FieldElement>,
    codewords: Vec<Vec<FieldElement>>,
    distances: Vec<usize>,
}

impl Witness {
    pub fn code(&self) -> &GabidulinCode {
        &self.code
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Shared coefficients (q-degrees k..n−τ−1) of the winning bucket;
    /// empty when k = n−τ.
    pub fn bucket_key(&self) -> &[FieldElement] {
        &self.bucket_key
    }

    /// The distinguished bucket member f whose evaluation is r.
    pub fn base_poly(&self) -> &LinearizedPoly {
        &self.base_poly
    }

    /// All bucket members in enumeration order (f first among them is not
    /// guaranteed; f is the first member, the bucket keeps stream order).
    pub fn bucket(&self) -> &[LinearizedPoly] {
        &self.bucket
    }

    pub fn r(&self) -> &[FieldElement] {
        &self.r
    }

    /// The certified list: evaluations of f − g over all bucket members g,
    /// including the zero codeword from g = f.
    pub fn codewords(&self) -> &[Vec<FieldElement>] {
        &self.codewords
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

/// Builds the certificate for `code` (points must be the embedded F_{q^n}
/// basis) at radius τ < d. `work_limit` caps the [n, n−τ]_q enumeration.
pub fn build_witness(code: &GabidulinCode, tau: usize, work_limit: u64) -> Result<Witness> {
    let ctx = code.ctx();
    let (q, n, k) = (ctx.p(), code.n(), code.k());
    let d = code.d();
    if tau >= d {
        return Err(Error::RadiusTooLarge { tau, d });
    }
    let total = bounds::gaussian_binomial(n, n - tau, q)?;
    if total > BigUint::from(work_limit) {
        return Err(Error::BudgetExceeded {
            required: to_dec(&total),
            allowed: work_limit,
        });
    }
    let stream = enumerate_annihilators(q, n, tau, ctx)?;
    if code.alphas() != stream.embedding().image_basis() {
        return Err(Error::BadParameters(
            "witness construction needs the embedded subfield basis as evaluation points".into(),
        ));
    }

    // bucket annihilators by their coefficients at q-degrees k..n−τ−1,
    // ordering keys by canonical element values
    let mut polys: Vec<LinearizedPoly> = Vec::new();
    let mut buckets: BTreeMap<Vec<BigUint>, Vec<usize>> = BTreeMap::new();
    for sigma in stream {
        let key: Vec<BigUint> = (k..n - tau).map(|i| sigma.coeff(i).value()).collect();
        let idx = polys.len();
        polys.push(sigma);
        buckets.entry(key).or_default().push(idx);
    }
    debug_assert_eq!(BigUint::from(polys.len()), total);

    // largest bucket; ties resolved toward the smallest key, so keep the
    // first maximum in ascending BTreeMap order (max_by_key would keep the
    // last one)
    let mut chosen: Option<(&Vec<BigUint>, &Vec<usize>)> = None;
    for (key, v) in &buckets {
        if chosen.is_none_or(|(_, best)| v.len() > best.len()) {
            chosen = Some((key, v));
        }
    }
    let (bucket_key_vals, members) = chosen
        .map(|(key, v)| (key.clone(), v.clone()))
        .expect("at least one annihilator exists");

    let f = polys[members[0]].clone();
    let r: Vec<FieldElement> = code
        .alphas()
        .iter()
        .map(|a| f.evaluate(a))
        .collect::<Result<_>>()?;

    let mut bucket = Vec::with_capacity(members.len());
    let mut codewords = Vec::with_capacity(members.len());
    let mut distances = Vec::with_capacity(members.len());
    for &gi in &members {
        let g = polys[gi].clone();
        let diff = f.sub(&g)?;
        if diff.q_degree().is_some_and(|dg| dg >= k) {
            return Err(Error::VerificationFailed(format!(
                "bucket member difference has q-degree {:?}, expected below {k}",
                diff.q_degree()
            )));
        }
        let c = code.encode(&diff)?;
        let dist = rank_distance(&r, &c)?;
        bucket.push(g);
        codewords.push(c);
        distances.push(dist);
    }

    let bucket_key = bucket_key_vals
        .iter()
        .map(|v| ctx.from_value(v))
        .collect::<Result<_>>()?;
    let w = Witness {
        code: code.clone(),
        tau,
        bucket_key,
        base_poly: f,
        bucket,
        r,
        codewords,
        distances,
    };
    let report = verify_witness(&w)?;
    if !report.pass {
        return Err(Error::VerificationFailed(format!(
            "freshly built witness failed verification: {}",
            report.failures.join("; ")
        )));
    }
    Ok(w)
}

/// Independent re-check of a witness; trusts nothing but the code parameters
/// and the raw word lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessReport {
    pub size: usize,
    /// Ceiling of the exact lower-bound rational (decimal string).
    pub required_size: String,
    pub all_codewords: bool,
    pub all_at_distance: bool,
    pub all_distinct: bool,
    pub size_sufficient: bool,
    pub pass: bool,
    pub failures: Vec<String>,
}

pub fn verify_witness(w: &Witness) -> Result<WitnessReport> {
    let code = &w.code;
    let ctx = code.ctx();
    let mut failures = Vec::new();

    let mut all_codewords = true;
    for (i, c) in w.codewords.iter().enumerate() {
        if !code.is_codeword(c)? {
            all_codewords = false;
            failures.push(format!("entry {i} is not a codeword"));
        }
    }

    let mut all_at_distance = true;
    for (i, c) in w.codewords.iter().enumerate() {
        let dist = rank_distance(&w.r, c)?;
        if dist != w.tau {
            all_at_distance = false;
            failures.push(format!(
                "entry {i} has rank distance {dist}, expected {}",
                w.tau
            ));
        }
    }

    let distinct: std::collections::BTreeSet<Vec<BigUint>> = w
        .codewords
        .iter()
        .map(|c| c.iter().map(|e| e.value()).collect())
        .collect();
    let all_distinct = distinct.len() == w.codewords.len();
    if !all_distinct {
        failures.push(format!(
            "only {} distinct codewords among {}",
            distinct.len(),
            w.codewords.len()
        ));
    }

    let required = bounds::lower_bound(ctx.p(), ctx.m(), code.n(), code.k(), w.tau)?.exact;
    let size_sufficient = BigUint::from(w.codewords.len()) >= required;
    if !size_sufficient {
        failures.push(format!(
            "list size {} below the guaranteed {}",
            w.codewords.len(),
            to_dec(&required)
        ));
    }

    let pass = all_codewords && all_at_distance && all_distinct && size_sufficient;
    Ok(WitnessReport {
        size: w.codewords.len(),
        required_size: to_dec(&required),
        all_codewords,
        all_at_distance,
        all_distinct,
        size_sufficient,
        pass,
        failures,
    })
}

/// On-disk witness format. Field order is fixed for diffability; all element
/// values are canonical integers as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub tau: usize,
    /// Modulus of F_{q^m}, ascending coefficients.
    pub field_modulus: Vec<u64>,
    pub alphas: Vec<String>,
    pub bucket_key: Vec<String>,
    /// Coefficients of the base polynomial f, index = q-degree.
    pub base_poly: Vec<String>,
    pub r: Vec<String>,
    pub codewords: Vec<Vec<String>>,
    pub distances: Vec<usize>,
    pub report: WitnessReport,
}

impl Witness {
    pub fn to_file(&self) -> Result<WitnessFile> {
        let ctx = self.code.ctx();
        let vals = |v: &[FieldElement]| -> Vec<String> {
            v.iter().map(|e| to_dec(&e.value())).collect()
        };
        Ok(WitnessFile {
            q: ctx.p(),
            m: ctx.m(),
            n: self.code.n(),
            k: self.code.k(),
            d: self.code.d(),
            tau: self.tau,
            field_modulus: ctx.modulus().to_vec(),
            alphas: vals(self.code.alphas()),
            bucket_key: vals(&self.bucket_key),
            base_poly: vals(self.base_poly.coeffs()),
            r: vals(&self.r),
            codewords: self.codewords.iter().map(|c| vals(c)).collect(),
            distances: self.distances.clone(),
            report: verify_witness(self)?,
        })
    }

    /// Rebuilds a witness from its file form; the bucket is recovered as
    /// g = f − message(c) per stored codeword. The result is re-verified.
    pub fn from_file(file: &WitnessFile) -> Result<Witness> {
        let ctx = FieldContext::with_modulus(file.q, file.m, file.field_modulus.clone())?;
        let parse = |vals: &[String]| -> Result<Vec<FieldElement>> {
            vals.iter().map(|s| ctx.from_value(&parse_dec(s)?)).collect()
        };
        let alphas = parse(&file.alphas)?;
        let code = GabidulinCode::new(&ctx, file.n, file.k, alphas)?;
        let base_poly = LinearizedPoly::from_coeffs(&ctx, parse(&file.base_poly)?)?;
        let r = parse(&file.r)?;
        let codewords: Vec<Vec<FieldElement>> = file
            .codewords
            .iter()
            .map(|c| parse(c))
            .collect::<Result<_>>()?;
        let mut bucket = Vec::with_capacity(codewords.len());
        for c in &codewords {
            let diff = code.message_polynomial(c)?.ok_or_else(|| {
                Error::VerificationFailed("stored list entry is not a codeword".into())
            })?;
            bucket.push(base_poly.sub(&diff)?);
        }
        let distances = codewords
            .iter()
            .map(|c| rank_distance(&r, c))
            .collect::<Result<Vec<_>>>()?;
        if distances != file.distances {
            return Err(Error::VerificationFailed(
                "stored distances disagree with recomputation".into(),
            ));
        }
        Ok(Witness {
            code,
            tau: file.tau,
            bucket_key: parse(&file.bucket_key)?,
            base_poly,
            bucket,
            r,
            codewords,
            distances,
        })
    }
}
