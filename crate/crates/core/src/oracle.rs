//! Brute-force ground truth for the bound formulas: exhaustive list sizes,
//! exhaustive max-list search over all received words, brute-force ball
//! volume, and the pairwise row-space overlap check for witness lists.
//!
//! Every operation computes its exact iteration count first and refuses to
//! start beyond the budget; nothing here is clever by design.

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::decimal::to_dec;
use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::fqlinalg::FqMatrix;
use crate::gabidulin::{expansion_matrix, rank_distance, GabidulinCode};

/// Iteration cap for exhaustive oracle runs.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_enumerations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_enumerations: 1 << 26,
        }
    }
}

impl OracleBudget {
    pub fn new(max_enumerations: u64) -> Self {
        OracleBudget { max_enumerations }
    }

    fn ensure(&self, required: &BigUint) -> Result<()> {
        if *required > BigUint::from(self.max_enumerations) {
            return Err(Error::BudgetExceeded {
                required: to_dec(required),
                allowed: self.max_enumerations,
            });
        }
        Ok(())
    }
}

/// Codewords within rank radius τ of one received word.
#[derive(Debug, Clone)]
pub struct ListSize {
    pub count: u64,
    pub codewords: Vec<Vec<FieldElement>>,
    /// Exact number of enumeration steps the run needed.
    pub enumerated: BigUint,
}

/// |{c : rank_distance(r, c) ≤ τ}| by enumerating all q^{mk} codewords.
pub fn list_size_at(
    code: &GabidulinCode,
    r: &[FieldElement],
    tau: usize,
    budget: OracleBudget,
) -> Result<ListSize> {
    if r.len() != code.n() {
        return Err(Error::LengthMismatch(r.len(), code.n()));
    }
    if tau > code.n() {
        return Err(Error::BadParameters(format!(
            "radius {tau} exceeds the code length {}",
            code.n()
        )));
    }
    let required = code.size();
    budget.ensure(&required)?;
    let mut codewords = Vec::new();
    for f in code.message_polynomials()? {
        let c = code.encode(&f)?;
        if rank_distance(r, &c)? <= tau {
            codewords.push(c);
        }
    }
    Ok(ListSize {
        count: codewords.len() as u64,
        codewords,
        enumerated: required,
    })
}

/// The exhaustive maximum of `list_size_at` over every word of F_{q^m}^n.
#[derive(Debug, Clone)]
pub struct MaxList {
    pub max: u64,
    /// First word attaining the maximum, in canonical order.
    pub argmax: Vec<FieldElement>,
    pub enumerated: BigUint,
}

pub fn max_list_size(
    code: &GabidulinCode,
    tau: usize,
    budget: OracleBudget,
) -> Result<MaxList> {
    let d = code.d();
    if tau >= d {
        return Err(Error::RadiusTooLarge { tau, d });
    }
    let ctx = code.ctx();
    let n = code.n();
    let words = ctx.order().pow(n as u32);
    let required = &words * code.size();
    budget.ensure(&required)?;

    // all codewords once, reused for every received word
    let codewords: Vec<Vec<FieldElement>> = code
        .message_polynomials()?
        .map(|f| code.encode(&f))
        .collect::<Result<_>>()?;

    let order: u64 = ctx
        .order()
        .try_into()
        .expect("budget bound keeps the field enumerable");
    let mut digits = vec![0u64; n];
    let mut best: Option<(u64, Vec<FieldElement>)> = None;
    loop {
        let r: Vec<FieldElement> = digits
            .iter()
            .map(|&v| ctx.from_value_u64(v).expect("digit below order"))
            .collect();
        let mut count = 0u64;
        for c in &codewords {
            if rank_distance(&r, c)? <= tau {
                count += 1;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| count > *b) {
            best = Some((count, r));
        }
        // canonical word order: coordinate 0 is the fastest digit
        let mut advanced = false;
        for d in digits.iter_mut() {
            if *d + 1 < order {
                *d += 1;
                advanced = true;
                break;
            }
            *d = 0;
        }
        if !advanced {
            break;
        }
    }
    let (max, argmax) = best.expect("word space is never empty");
    Ok(MaxList {
        max,
        argmax,
        enumerated: required,
    })
}

/// Result of the pairwise row-space overlap check on a codeword list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlapReport {
    /// Entries whose distance to r exceeds the unique-decoding radius; only
    /// these participate in pairs.
    pub eligible: usize,
    pub checked_pairs: u64,
    /// Pairs (i, j) of original list indices whose row spaces share a
    /// subspace of dimension above t_i + t_j − d.
    pub violations: Vec<(usize, usize)>,
    pub pass: bool,
}

/// For every pair of listed codewords with distances t_i, t_j above
/// ⌊(d−1)/2⌋, checks dim(R(r−c_i) ∩ R(r−c_j)) ≤ t_i + t_j − d. A violation
/// falsifies the implementation, not the statement being tested.
pub fn check_pairwise_overlap(
    r: &[FieldElement],
    codewords: &[Vec<FieldElement>],
    d: usize,
) -> Result<OverlapReport> {
    let t0 = crate::bounds::bmd_radius(d);
    let mut eligible: Vec<(usize, usize, FqMatrix)> = Vec::new(); // (index, t_i, expansion)
    for (i, c) in codewords.iter().enumerate() {
        let t = rank_distance(r, c)?;
        if t > t0 {
            let diff: Vec<FieldElement> = r.iter().zip(c).map(|(a, b)| a.sub(b)).collect();
            eligible.push((i, t, expansion_matrix(&diff)?));
        }
    }
    let mut checked_pairs = 0u64;
    let mut violations = Vec::new();
    for (a, (i, ti, xi)) in eligible.iter().enumerate() {
        let ri = xi.row_space();
        for (j, tj, xj) in eligible.iter().skip(a + 1) {
            checked_pairs += 1;
            let overlap = ri.intersection_dim(&xj.row_space())?;
            if overlap + d > ti + tj {
                violations.push((*i, *j));
            }
        }
    }
    Ok(OverlapReport {
        eligible: eligible.len(),
        checked_pairs,
        pass: violations.is_empty(),
        violations,
    })
}

/// Number of m×n matrices over F_q with rank ≤ τ, by enumerating all q^{mn}
/// matrices and computing each rank.
pub fn ball_volume_brute(
    m: usize,
    n: usize,
    tau: usize,
    q: u64,
    budget: OracleBudget,
) -> Result<u64> {
    if tau > m.min(n) {
        return Err(Error::BadParameters(format!(
            "radius {tau} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    if !crate::modp::is_prime(q) {
        return Err(Error::BadParameters(format!("q = {q} is not prime")));
    }
    let cells = m * n;
    let required = BigUint::from(q).pow(cells as u32);
    budget.ensure(&required)?;
    let mut digits = vec![0u64; cells];
    let mut count = 0u64;
    loop {
        let mat = FqMatrix::new(q, m, n, digits.clone())?;
        if mat.rank() <= tau {
            count += 1;
        }
        let mut advanced = false;
        for d in digits.iter_mut() {
            if *d + 1 < q {
                *d += 1;
                advanced = true;
                break;
            }
            *d = 0;
        }
        if !advanced {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::ffield::FieldContext;
    use crate::witness::{build_witness, witness_code, DEFAULT_WORK_LIMIT};
    use std::sync::Arc;

    fn gf(p: u64, m: usize) -> Arc<FieldContext> {
        FieldContext::new(p, m).unwrap()
    }

    #[test]
    fn list_size_radius_extremes() {
        let f8 = gf(2, 3);
        let (code, _) = witness_code(&f8, 3, 1).unwrap();
        let zero_word = vec![f8.zero(); 3];
        let ls = list_size_at(&code, &zero_word, 0, OracleBudget::default()).unwrap();
        assert_eq!(ls.count, 1); // only the zero codeword itself
        let ls = list_size_at(&code, &zero_word, 3, OracleBudget::default()).unwrap();
        assert_eq!(BigUint::from(ls.count), code.size()); // whole code
    }

    #[test]
    fn list_size_at_tight_witness_word() {
        let f16 = gf(2, 4);
        let (code, _) = witness_code(&f16, 4, 2).unwrap();
        let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT).unwrap();
        let ls = list_size_at(&code, w.r(), 2, OracleBudget::default()).unwrap();
        // every difference from r is monic of q-degree 2, so distance is
        // exactly 2 precisely for the 35 fully-splitting polynomials
        assert_eq!(ls.count, 35);
        assert_eq!(ls.enumerated, BigUint::from(256u32));
        // every witness codeword appears in the oracle's list
        let oracle_set: std::collections::BTreeSet<Vec<num::BigUint>> = ls
            .codewords
            .iter()
            .map(|c| c.iter().map(|e| e.value()).collect())
            .collect();
        for c in w.codewords() {
            let key: Vec<num::BigUint> = c.iter().map(|e| e.value()).collect();
            assert!(oracle_set.contains(&key));
        }
    }

    #[test]
    fn max_list_extremes_and_small_search() {
        let f8 = gf(2, 3);
        let (code, _) = witness_code(&f8, 3, 1).unwrap();
        let ml = max_list_size(&code, 0, OracleBudget::default()).unwrap();
        assert_eq!(ml.max, 1);
        // exhaustive search over all 512 received words at τ = 2
        let ml = max_list_size(&code, 2, OracleBudget::default()).unwrap();
        let lower = bounds::lower_bound(2, 3, 3, 1, 2).unwrap().exact;
        let safe = bounds::upper_bound(2, 3, 3, 1, 2).unwrap().safe;
        assert!(BigUint::from(ml.max) >= lower);
        assert!(BigUint::from(ml.max) <= safe);
        assert_eq!(ml.enumerated, BigUint::from(4096u32));
        // the witness word certifies the same count, so the max reaches it
        let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT).unwrap();
        assert!(ml.max >= w.len() as u64);
    }

    #[test]
    fn max_list_rejects_radius_and_budget() {
        let f8 = gf(2, 3);
        let (code, _) = witness_code(&f8, 3, 1).unwrap();
        assert!(matches!(
            max_list_size(&code, 3, OracleBudget::default()),
            Err(Error::RadiusTooLarge { tau: 3, d: 3 })
        ));
        let f32_ = gf(2, 5);
        let (big_code, _) = witness_code(&f32_, 5, 2).unwrap();
        // 2^25 words × 2^10 codewords is over the default 2^26 budget
        let err = max_list_size(&big_code, 2, OracleBudget::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn ball_volume_brute_matches_formula() {
        assert_eq!(
            ball_volume_brute(2, 2, 1, 2, OracleBudget::default()).unwrap(),
            10
        );
        assert_eq!(
            ball_volume_brute(3, 2, 0, 2, OracleBudget::default()).unwrap(),
            1
        );
        assert_eq!(
            ball_volume_brute(2, 2, 2, 2, OracleBudget::default()).unwrap(),
            16
        );
        for m in 1..=3usize {
            for n in 1..=3usize {
                for tau in 0..=m.min(n) {
                    let brute = ball_volume_brute(m, n, tau, 2, OracleBudget::default()).unwrap();
                    let formula = bounds::ball_volume(m, n, tau, 2).unwrap();
                    assert_eq!(BigUint::from(brute), formula, "at m={m} n={n} tau={tau}");
                }
            }
        }
        // q = 3 spot check
        let brute = ball_volume_brute(2, 2, 1, 3, OracleBudget::default()).unwrap();
        assert_eq!(BigUint::from(brute), bounds::ball_volume(2, 2, 1, 3).unwrap());
    }

    #[test]
    fn ball_volume_brute_budget() {
        let tiny = OracleBudget::new(100);
        assert!(matches!(
            ball_volume_brute(3, 3, 1, 2, tiny),
            Err(Error::BudgetExceeded { allowed: 100, .. })
        ));
    }

    #[test]
    fn overlap_check_on_tight_witness() {
        let f16 = gf(2, 4);
        let (code, _) = witness_code(&f16, 4, 2).unwrap();
        let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT).unwrap();
        let report = check_pairwise_overlap(w.r(), w.codewords(), code.d()).unwrap();
        // all 35 entries sit at distance 2 > ⌊(3−1)/2⌋ = 1
        assert_eq!(report.eligible, 35);
        assert_eq!(report.checked_pairs, 35 * 34 / 2);
        assert!(report.pass, "violations: {:?}", report.violations);
    }

    #[test]
    fn overlap_check_flags_duplicates() {
        let f16 = gf(2, 4);
        let (code, _) = witness_code(&f16, 4, 2).unwrap();
        let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT).unwrap();
        // a duplicated entry shares its whole row space with itself:
        // intersection dim t > 2t − d, so the pair must be reported
        let mut list = w.codewords().to_vec();
        list.push(list[3].clone());
        let report = check_pairwise_overlap(w.r(), &list, code.d()).unwrap();
        assert!(!report.pass);
        assert!(report.violations.contains(&(3, 35)));
    }

    #[test]
    fn overlap_check_vacuous_cases() {
        let f16 = gf(2, 4);
        let (code, _) = witness_code(&f16, 4, 2).unwrap();
        let w = build_witness(&code, 2, DEFAULT_WORK_LIMIT).unwrap();
        // single entry: nothing to pair
        let report =
            check_pairwise_overlap(w.r(), &w.codewords()[..1], code.d()).unwrap();
        assert_eq!(report.checked_pairs, 0);
        assert!(report.pass);
        // entries at or below the unique-decoding radius are filtered out
        let zero = vec![f16.zero(); 4];
        let report = check_pairwise_overlap(&zero, std::slice::from_ref(&zero), code.d()).unwrap();
        assert_eq!(report.eligible, 0);
        assert!(report.pass);
    }
}
