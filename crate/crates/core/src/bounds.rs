//! Exact closed-form bounds on rank-metric list sizes: Gaussian binomials
//! with their sandwich bounds, ball volumes, the exponential lower bound with
//! its radius threshold, the summation upper bound with its simplified form,
//! and the even-distance special case.
//!
//! Every count is computed in arbitrary-precision integers or rationals.
//! Floating point appears only in `tau_lb`, whose documented tolerance is
//! [`TAU_TOLERANCE`].

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::to_dec;
use crate::error::{Error, Result};

/// Tolerance on the pre-ceiling real value of `tau_lb`; values this close to
/// an integer are snapped to it before taking the ceiling.
pub const TAU_TOLERANCE: f64 = 1e-9;

fn q_pow(q: u64, e: u64) -> BigUint {
    let e = u32::try_from(e).expect("exponent fits in u32");
    BigUint::from(q).pow(e)
}

fn big(v: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

/// Gaussian binomial [n s]_q: the number of s-dimensional subspaces of
/// F_q^n, as the exact product Π_{i<s} (q^n − q^i)/(q^s − q^i).
pub fn gaussian_binomial(n: usize, s: usize, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q} must be at least 2")));
    }
    if s > n {
        return Err(Error::BadParameters(format!(
            "Gaussian binomial needs 0 <= s <= n, got s = {s}, n = {n}"
        )));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..s {
        num *= q_pow(q, n as u64) - q_pow(q, i as u64);
        den *= q_pow(q, s as u64) - q_pow(q, i as u64);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Volume of a rank-metric ball of radius τ in F_q^{m×n}: the number of m×n
/// matrices over F_q of rank at most τ, independent of the ball's center.
/// Rank-i matrices are counted as [n i]_q · Π_{j<i} (q^m − q^j).
pub fn ball_volume(m: usize, n: usize, tau: usize, q: u64) -> Result<BigUint> {
    if tau > m.min(n) {
        return Err(Error::BadParameters(format!(
            "radius {tau} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    let mut total = BigUint::zero();
    for i in 0..=tau {
        let mut image_count = BigUint::one();
        for j in 0..i {
            image_count *= q_pow(q, m as u64) - q_pow(q, j as u64);
        }
        total += gaussian_binomial(n, i, q)? * image_count;
    }
    Ok(total)
}

/// Unique-decoding radius ⌊(d−1)/2⌋.
pub fn bmd_radius(d: usize) -> usize {
    d.saturating_sub(1) / 2
}

/// Shared precondition for every bound formula: q >= 2 and 1 <= k <= n <= m.
pub fn validate_code_params(q: u64, m: usize, n: usize, k: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q} must be at least 2")));
    }
    if n == 0 || k == 0 || k > n || n > m {
        return Err(Error::BadParameters(format!(
            "need 1 <= k <= n <= m, got q={q} m={m} n={n} k={k}"
        )));
    }
    Ok(())
}

/// The lower bound on the list size at radius τ < d: the exact rational
/// [n, n−τ]_q / q^{m(n−τ−k)} and its closed power form q^{m+τ(m+n)−τ²−md}.
#[derive(Debug, Clone)]
pub struct LowerBound {
    /// Ceiling of the exact rational; a valid bound since list sizes are
    /// integers.
    pub exact: BigUint,
    /// The exact rational before rounding.
    pub rational: BigRational,
    /// Exponent E of the power form q^E; may be negative.
    pub exp_exponent: i64,
    /// q^E when E ≥ 0; zero (the trivial bound) when E < 0.
    pub exp_form: BigUint,
    /// Set when E < 0: the power form is a true fraction, floored to the
    /// uninformative integer bound 0.
    pub exp_negative: bool,
}

pub fn lower_bound(q: u64, m: usize, n: usize, k: usize, tau: usize) -> Result<LowerBound> {
    validate_code_params(q, m, n, k)?;
    let d = n - k + 1;
    if tau >= d {
        return Err(Error::RadiusTooLarge { tau, d });
    }
    // τ < d means n − τ − k = d − 1 − τ ≥ 0
    let count = gaussian_binomial(n, n - tau, q)?;
    let divisor = q_pow(q, (m * (n - tau - k)) as u64);
    let rational = BigRational::new(big(&count), big(&divisor));
    let exact = rational
        .ceil()
        .to_integer()
        .to_biguint()
        .expect("positive rational");
    let (mi, ni, ti, di) = (m as i64, n as i64, tau as i64, d as i64);
    let exp_exponent = mi + ti * (mi + ni) - ti * ti - mi * di;
    let exp_negative = exp_exponent < 0;
    let exp_form = if exp_negative {
        BigUint::zero()
    } else {
        q_pow(q, exp_exponent as u64)
    };
    Ok(LowerBound {
        exact,
        rational,
        exp_exponent,
        exp_form,
        exp_negative,
    })
}

/// Radius threshold n − √(n(n−d+ε)) beyond which the lower bound grows
/// exponentially; ε = 0 is the rank-metric Johnson radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauLb {
    pub value: f64,
    pub ceil: u64,
}

pub fn tau_lb(n: usize, d: usize, eps: f64) -> Result<TauLb> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::BadParameters(format!(
            "eps = {eps} outside the admissible range 0 <= eps < 1"
        )));
    }
    if d > n || n == 0 {
        return Err(Error::BadParameters(format!(
            "need 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    let nf = n as f64;
    let value = nf - (nf * (nf - d as f64 + eps)).sqrt();
    // snap near-integers before the ceiling so float noise cannot shift it
    let snapped = if (value - value.round()).abs() < TAU_TOLERANCE {
        value.round()
    } else {
        value
    };
    Ok(TauLb {
        value,
        ceil: snapped.ceil() as u64,
    })
}

/// The three forms of the upper bound on the list size at radius τ < d.
#[derive(Debug, Clone)]
pub struct UpperBound {
    /// Floor of the exact rational sum Σ_{t=t0+1}^{τ} [n, 2t+1−d]_q /
    /// [t, 2t+1−d]_q with t0 = ⌊(d−1)/2⌋; 0 when the range is empty.
    pub exact_sum: BigUint,
    /// exact_sum + 1, covering the at most one codeword within the
    /// unique-decoding radius that the sum does not count.
    pub safe: BigUint,
    /// Closed form 4(τ−t0) q^{(2τ−d+1)(n−t0−1)}; 0 when τ ≤ t0.
    pub simplified: BigUint,
}

pub fn upper_bound(q: u64, m: usize, n: usize, k: usize, tau: usize) -> Result<UpperBound> {
    validate_code_params(q, m, n, k)?;
    let d = n - k + 1;
    if tau >= d {
        return Err(Error::RadiusTooLarge { tau, d });
    }
    let t0 = bmd_radius(d);
    let mut sum = BigRational::zero();
    for t in t0 + 1..=tau {
        let s = 2 * t + 1 - d; // 1 <= s <= t since t0 < t <= τ < d
        let num = gaussian_binomial(n, s, q)?;
        let den = gaussian_binomial(t, s, q)?;
        sum += BigRational::new(big(&num), big(&den));
    }
    let exact_sum = sum
        .floor()
        .to_integer()
        .to_biguint()
        .expect("nonnegative sum");
    let safe = &exact_sum + 1u32;
    let simplified = if tau <= t0 {
        BigUint::zero()
    } else {
        let e = ((2 * tau + 1 - d) * (n - t0 - 1)) as u64;
        BigUint::from(4 * (tau - t0) as u64) * q_pow(q, e)
    };
    Ok(UpperBound {
        exact_sum,
        safe,
        simplified,
    })
}

/// Even-distance special case of the upper bound at τ = d/2:
/// ⌊(q^n − 1)/(q^{d/2} − 1)⌋, which equals the single-term summation form.
pub fn augot_loidreau_special(q: u64, n: usize, d: usize) -> Result<BigUint> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::BadParameters(format!(
            "special case needs even d >= 2, got d = {d}"
        )));
    }
    if d > n {
        return Err(Error::BadParameters(format!("need d <= n, got d = {d}, n = {n}")));
    }
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q} must be at least 2")));
    }
    let num = q_pow(q, n as u64) - BigUint::one();
    let den = q_pow(q, (d / 2) as u64) - BigUint::one();
    Ok(num / den)
}

/// Base-q logarithm of a (possibly huge) positive integer, for display.
pub fn log_q_f64(v: &BigUint, q: u64) -> f64 {
    let bits = v.bits();
    let log2 = if bits <= 64 {
        (v.to_u64().expect("fits") as f64).log2()
    } else {
        let top = (v >> (bits - 53)).to_u64().expect("53 bits fit") as f64;
        top.log2() + (bits - 53) as f64
    };
    log2 / (q as f64).log2()
}

/// Everything the bound formulas say about one parameter set (q, m, n, k, τ,
/// ε), with exact integers rendered as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub tau: usize,
    pub eps: f64,
    pub bmd_radius: usize,
    pub tau_lb: f64,
    pub tau_lb_ceil: u64,
    pub johnson_radius: f64,
    pub johnson_radius_ceil: u64,
    pub lower_exact: String,
    pub lower_exp_form: String,
    pub lower_exp_exponent: i64,
    pub lower_exp_negative: bool,
    pub upper_exact_sum: String,
    pub upper_safe: String,
    pub upper_simplified: String,
    /// Present only when d is even and τ = d/2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub al_special: Option<String>,
}

impl BoundReport {
    pub fn compute(q: u64, m: usize, n: usize, k: usize, tau: usize, eps: f64) -> Result<Self> {
        validate_code_params(q, m, n, k)?;
        let d = n - k + 1;
        let lower = lower_bound(q, m, n, k, tau)?;
        let upper = upper_bound(q, m, n, k, tau)?;
        let t = tau_lb(n, d, eps)?;
        let johnson = tau_lb(n, d, 0.0)?;
        let al = if d.is_multiple_of(2) && tau == d / 2 {
            Some(to_dec(&augot_loidreau_special(q, n, d)?))
        } else {
            None
        };
        Ok(BoundReport {
            q,
            m,
            n,
            k,
            d,
            tau,
            eps,
            bmd_radius: bmd_radius(d),
            tau_lb: t.value,
            tau_lb_ceil: t.ceil,
            johnson_radius: johnson.value,
            johnson_radius_ceil: johnson.ceil,
            lower_exact: to_dec(&lower.exact),
            lower_exp_form: to_dec(&lower.exp_form),
            lower_exp_exponent: lower.exp_exponent,
            lower_exp_negative: lower.exp_negative,
            upper_exact_sum: to_dec(&upper.exact_sum),
            upper_safe: to_dec(&upper.safe),
            upper_simplified: to_dec(&upper.simplified),
            al_special: al,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::{enumerate_subspaces, FqMatrix};

    fn gb(n: usize, s: usize, q: u64) -> BigUint {
        gaussian_binomial(n, s, q).unwrap()
    }

    #[test]
    fn gaussian_binomial_edges_and_known_values() {
        for n in 0..6 {
            assert_eq!(gb(n, 0, 2), BigUint::one());
            assert_eq!(gb(n, n, 3), BigUint::one());
        }
        assert_eq!(gb(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gb(3, 1, 2), BigUint::from(7u32));
        assert_eq!(gb(4, 3, 2), BigUint::from(15u32));
        assert_eq!(gb(5, 2, 2), BigUint::from(155u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
        assert!(gaussian_binomial(2, 1, 1).is_err());
    }

    #[test]
    fn gaussian_binomial_matches_subspace_enumeration() {
        for n in 0..=5usize {
            for s in 0..=n {
                let count = enumerate_subspaces(2, n, s).unwrap().count();
                assert_eq!(gb(n, s, 2), BigUint::from(count));
            }
        }
    }

    #[test]
    fn gaussian_symmetry_and_sandwich() {
        for q in [2u64, 3] {
            for n in 0..=8usize {
                for s in 0..=n {
                    let v = gb(n, s, q);
                    assert_eq!(v, gb(n, n - s, q), "symmetry at q={q} n={n} s={s}");
                    let base = q_pow(q, (s * (n - s)) as u64);
                    assert!(v >= base, "lower sandwich at q={q} n={n} s={s}");
                    assert!(v <= &base * 4u32, "upper sandwich at q={q} n={n} s={s}");
                }
            }
        }
    }

    #[test]
    fn ball_volume_edges_and_brute_force() {
        assert_eq!(ball_volume(3, 2, 0, 2).unwrap(), BigUint::one());
        assert_eq!(ball_volume(2, 2, 2, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(ball_volume(3, 3, 3, 3).unwrap(), q_pow(3, 9));
        assert!(ball_volume(2, 2, 3, 2).is_err());
        // independent check: enumerate all 2x2 matrices over F_2
        let mut by_rank = [0u32; 3];
        for bits in 0..16u32 {
            let entries: Vec<u64> = (0..4).map(|i| ((bits >> i) & 1) as u64).collect();
            let m = FqMatrix::new(2, 2, 2, entries).unwrap();
            by_rank[m.rank()] += 1;
        }
        assert_eq!(
            ball_volume(2, 2, 1, 2).unwrap(),
            BigUint::from(by_rank[0] + by_rank[1])
        );
        assert_eq!(by_rank[0] + by_rank[1], 10);
    }

    #[test]
    fn bmd_radius_values() {
        assert_eq!(bmd_radius(7), 3);
        assert_eq!(bmd_radius(1), 0);
        assert_eq!(bmd_radius(4), 1);
        assert_eq!(bmd_radius(0), 0);
    }

    #[test]
    fn lower_bound_tight_case() {
        let lb = lower_bound(2, 4, 4, 2, 2).unwrap();
        assert_eq!(lb.exact, BigUint::from(35u32));
        // exponent m + τ(m+n) − τ² − md = 4 + 16 − 4 − 12 = 4
        assert_eq!(lb.exp_exponent, 4);
        assert_eq!(lb.exp_form, BigUint::from(16u32));
        assert!(!lb.exp_negative);
        assert!(lb.exact >= lb.exp_form);
    }

    #[test]
    fn lower_bound_trivial_and_fractional_cases() {
        // τ = 0: rational 1/q^{m(n−k)} ≤ 1, ceiling 1
        let lb = lower_bound(2, 4, 4, 2, 0).unwrap();
        assert_eq!(lb.exact, BigUint::one());
        // τ = 1: rational 15/16, ceiling 1, exponent negative
        let lb = lower_bound(2, 4, 4, 2, 1).unwrap();
        assert_eq!(
            lb.rational,
            BigRational::new(BigInt::from(15), BigInt::from(16))
        );
        assert_eq!(lb.exact, BigUint::one());
        assert_eq!(lb.exp_exponent, -1);
        assert!(lb.exp_negative);
        assert_eq!(lb.exp_form, BigUint::zero());
    }

    #[test]
    fn lower_bound_rejects_radius_at_distance() {
        assert!(matches!(
            lower_bound(2, 4, 4, 2, 3),
            Err(Error::RadiusTooLarge { tau: 3, d: 3 })
        ));
    }

    #[test]
    fn tau_lb_example_values() {
        // frozen reference values, computed independently by bisection
        let t = tau_lb(12, 7, 0.9).unwrap();
        assert!((t.value - 3.585_726_412_814_948).abs() < TAU_TOLERANCE);
        assert_eq!(t.ceil, 4);
        let j = tau_lb(12, 7, 0.0).unwrap();
        assert!((j.value - 4.254_033_307_585_166).abs() < TAU_TOLERANCE);
        assert_eq!(j.ceil, 5);
        // d = n: threshold equals n exactly
        let full = tau_lb(5, 5, 0.0).unwrap();
        assert_eq!(full.value, 5.0);
        assert_eq!(full.ceil, 5);
        assert!(tau_lb(5, 5, 1.0).is_err());
        assert!(tau_lb(5, 5, -0.1).is_err());
        assert!(tau_lb(4, 5, 0.0).is_err());
    }

    #[test]
    fn upper_bound_single_term_cases() {
        // d = 3, t ranges over {2}: [4 2]_2 / [2 2]_2 = 35
        let ub = upper_bound(2, 4, 4, 2, 2).unwrap();
        assert_eq!(ub.exact_sum, BigUint::from(35u32));
        assert_eq!(ub.safe, BigUint::from(36u32));
        // simplified: 4·(2−1)·2^{(4−3+1)(4−1−1)} = 4·2^4 = 64
        assert_eq!(ub.simplified, BigUint::from(64u32));
        // d = 4, t = 2: [4 1]_2 / [2 1]_2 = 15/3 = 5
        let ub = upper_bound(2, 4, 4, 1, 2).unwrap();
        assert_eq!(ub.exact_sum, BigUint::from(5u32));
    }

    #[test]
    fn upper_bound_empty_range() {
        // τ = ⌊(d−1)/2⌋ leaves no summation terms
        let ub = upper_bound(2, 4, 4, 2, 1).unwrap();
        assert_eq!(ub.exact_sum, BigUint::zero());
        assert_eq!(ub.safe, BigUint::one());
        assert_eq!(ub.simplified, BigUint::zero());
        assert!(upper_bound(2, 4, 4, 2, 3).is_err());
    }

    #[test]
    fn augot_loidreau_values_and_equality() {
        assert_eq!(
            augot_loidreau_special(2, 4, 4).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            augot_loidreau_special(2, 6, 6).unwrap(),
            BigUint::from(9u32)
        );
        // d = 2 reduces to [n 1]_q
        for n in 2..=6usize {
            assert_eq!(augot_loidreau_special(2, n, 2).unwrap(), gb(n, 1, 2));
        }
        assert!(augot_loidreau_special(2, 4, 3).is_err());
        // even d, τ = d/2: always the single Eq-sum term, so the closed form
        // must equal the summation bound
        for n in 2..=10usize {
            for d in (2..=n).step_by(2) {
                let k = n - d + 1;
                let ub = upper_bound(2, n, n, k, d / 2).unwrap();
                assert_eq!(
                    augot_loidreau_special(2, n, d).unwrap(),
                    ub.exact_sum,
                    "mismatch at n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn bound_chains_on_parameter_grid() {
        for q in [2u64, 3] {
            for n in 1..=6usize {
                let m = n;
                for k in 1..=n {
                    let d = n - k + 1;
                    for tau in 0..d {
                        let lb = lower_bound(q, m, n, k, tau).unwrap();
                        let ub = upper_bound(q, m, n, k, tau).unwrap();
                        if !lb.exp_negative {
                            assert!(
                                lb.exact >= lb.exp_form,
                                "power-form chain at q={q} n={n} k={k} tau={tau}"
                            );
                        }
                        let t0 = bmd_radius(d);
                        if tau > t0 {
                            // summand-wise chain: exact sum <= 4 Σ q^{(2t−d+1)(n−t)}
                            let mut mid = BigUint::zero();
                            for t in t0 + 1..=tau {
                                mid += q_pow(q, ((2 * t + 1 - d) * (n - t)) as u64);
                            }
                            mid *= 4u32;
                            assert!(
                                ub.exact_sum <= mid,
                                "mid chain at q={q} n={n} k={k} tau={tau}"
                            );
                            assert!(
                                mid <= ub.simplified,
                                "simplified chain at q={q} n={n} k={k} tau={tau}"
                            );
                        }
                        assert!(
                            lb.exact <= ub.safe,
                            "bounds crossed at q={q} n={n} k={k} tau={tau}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn report_serializes_big_integers_as_strings() {
        let r = BoundReport::compute(2, 12, 12, 6, 4, 0.9).unwrap();
        assert_eq!(r.d, 7);
        assert_eq!(r.bmd_radius, 3);
        assert_eq!(r.tau_lb_ceil, 4);
        assert_eq!(r.johnson_radius_ceil, 5);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["lower_exact"].is_string());
        let parsed: BoundReport = serde_json::from_value(json).unwrap();
        assert_eq!(parsed.lower_exact, r.lower_exact);
        // no AL entry: d = 7 is odd
        assert!(r.al_special.is_none());
        let r44 = BoundReport::compute(2, 4, 4, 1, 2, 0.0).unwrap();
        assert_eq!(r44.al_special.as_deref(), Some("5"));
    }

    #[test]
    fn log_q_of_exact_powers() {
        for e in [3u64, 40, 200] {
            let v = q_pow(2, e);
            assert!((log_q_f64(&v, 2) - e as f64).abs() < 1e-6);
        }
        let v = q_pow(3, 100);
        assert!((log_q_f64(&v, 3) - 100.0).abs() < 1e-6);
    }
}
