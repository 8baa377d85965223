//! Exact arithmetic in F_p (p prime) and F_{p^m}: deterministic field
//! construction, Frobenius powers, and subfield embeddings F_{q^n} -> F_{q^m}
//! for n | m.
//!
//! Elements are dense coefficient vectors in the polynomial basis
//! 1, g, ..., g^{m-1} of F_{p^m} over F_p, where g is a root of the context's
//! modulus. The canonical ordering of elements is by the base-p integer value
//! of the coordinate vector, constant term least significant; every
//! deterministic tie-break in the crate refers to this single ordering.

use std::fmt;
use std::sync::Arc;

use num::{BigUint, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modp;

// ---------------------------------------------------------------------------
// dense polynomials over F_p (ascending coefficients), used for moduli
// ---------------------------------------------------------------------------

fn poly_degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` by `b` over F_p. `b` must have an invertible leading
/// coefficient.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = modp::inv(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let c = modp::mul(r[dr], lead_inv, p);
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] = modp::sub(r[dr - db + i], modp::mul(c, bc, p), p);
        }
    }
    r.truncate(db.max(1));
    r.resize(db.max(1), 0);
    r
}

/// Irreducibility over F_p by trial division: a monic polynomial of degree m
/// is irreducible iff no monic polynomial of degree 1..=m/2 divides it.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = match poly_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    for deg in 1..=m / 2 {
        let mut divisor = vec![0u64; deg + 1];
        divisor[deg] = 1;
        loop {
            let r = poly_rem(f, &divisor, p);
            if poly_degree(&r).is_none() {
                return false;
            }
            // next monic divisor of this degree (odometer on the low coefficients)
            let mut i = 0;
            while i < deg && divisor[i] == p - 1 {
                divisor[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
            divisor[i] += 1;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `m`
/// over F_p, comparing coefficient tuples (c_0, c_1, ..., c_{m-1}) ascending
/// from the constant term. Pure function of (p, m).
pub fn find_irreducible(p: u64, m: usize) -> Result<Vec<u64>> {
    validate_field_params(p, m)?;
    // Lexicographic ascent: c_{m-1} spins fastest.
    let mut tail = vec![0u64; m];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return Ok(f);
        }
        let mut i = m;
        loop {
            if i == 0 {
                // exhausted all monic polynomials of degree m: impossible,
                // irreducibles exist for every (p, m)
                return Err(Error::VerificationFailed(format!(
                    "no irreducible polynomial of degree {m} over F_{p}"
                )));
            }
            i -= 1;
            if tail[i] < p - 1 {
                tail[i] += 1;
                break;
            }
            tail[i] = 0;
        }
    }
}

fn validate_field_params(p: u64, m: usize) -> Result<()> {
    if !modp::is_prime(p) {
        return Err(Error::BadParameters(format!("p = {p} is not prime")));
    }
    if p >= 1 << 62 {
        return Err(Error::BadParameters(format!("p = {p} is too large")));
    }
    if m == 0 {
        return Err(Error::BadParameters("extension degree m must be >= 1".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// FieldContext
// ---------------------------------------------------------------------------

/// Arithmetic context of F_{p^m}: the prime, the extension degree, and a
/// monic irreducible modulus of degree m (ascending coefficients).
///
/// Two contexts with equal (p, m, modulus) define identical arithmetic.
/// Immutable after construction; safe to share across threads.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

impl FieldContext {
    /// F_{p^m} with the deterministic canonical modulus from
    /// [`find_irreducible`].
    pub fn new(p: u64, m: usize) -> Result<Arc<Self>> {
        let modulus = find_irreducible(p, m)?;
        Ok(Arc::new(FieldContext { p, m, modulus }))
    }

    /// F_{p^m} with an explicit modulus, which must be monic of degree
    /// exactly m and irreducible over F_p.
    pub fn with_modulus(p: u64, m: usize, modulus: Vec<u64>) -> Result<Arc<Self>> {
        validate_field_params(p, m)?;
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if poly_degree(&modulus) != Some(m) {
            return Err(Error::BadParameters(format!(
                "modulus must have degree exactly {m}"
            )));
        }
        if modulus[m] != 1 {
            return Err(Error::BadParameters("modulus must be monic".into()));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::BadParameters("modulus is reducible".into()));
        }
        Ok(Arc::new(FieldContext { p, m, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Modulus coefficients, ascending, length m + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order p^m.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m as u32)
    }

    pub fn same(&self, other: &FieldContext) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.constant(1)
    }

    /// The constant c * 1 for c in F_p.
    pub fn constant(self: &Arc<Self>, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.p;
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// The class of x in F_p[x]/(modulus); for m = 1 this is the constant 0.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        if self.m > 1 {
            coeffs[1] = 1;
        }
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// Element from polynomial-basis coordinates (reduced mod p, padded or
    /// truncated to length m; indices >= m must be zero).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.m && coeffs[self.m..].iter().any(|&c| c % self.p != 0) {
            return Err(Error::BadParameters(format!(
                "coordinate vector longer than extension degree {}",
                self.m
            )));
        }
        let mut out = vec![0; self.m];
        for (i, &c) in coeffs.iter().take(self.m).enumerate() {
            out[i] = c % self.p;
        }
        Ok(FieldElement {
            ctx: Arc::clone(self),
            coeffs: out,
        })
    }

    /// Element from its canonical base-p integer value.
    pub fn from_value(self: &Arc<Self>, value: &BigUint) -> Result<FieldElement> {
        if *value >= self.order() {
            return Err(Error::BadParameters(format!(
                "value {value} is not below the field order"
            )));
        }
        let p = BigUint::from(self.p);
        let mut coeffs = vec![0u64; self.m];
        let mut rest = value.clone();
        for c in coeffs.iter_mut() {
            let (q, r) = num::Integer::div_rem(&rest, &p);
            *c = r.try_into().expect("digit below p fits in u64");
            rest = q;
        }
        Ok(FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        })
    }

    pub fn from_value_u64(self: &Arc<Self>, value: u64) -> Result<FieldElement> {
        self.from_value(&BigUint::from(value))
    }

    /// All p^m elements in canonical order (value 0, 1, 2, ...).
    pub fn elements(self: &Arc<Self>) -> Elements {
        Elements {
            ctx: Arc::clone(self),
            next: BigUint::zero(),
            order: self.order(),
        }
    }

    /// The polynomial basis 1, g, ..., g^{m-1}.
    pub fn polynomial_basis(self: &Arc<Self>) -> Vec<FieldElement> {
        (0..self.m)
            .map(|i| {
                let mut coeffs = vec![0; self.m];
                coeffs[i] = 1;
                FieldElement {
                    ctx: Arc::clone(self),
                    coeffs,
                }
            })
            .collect()
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

/// Iterator over all field elements in canonical order.
pub struct Elements {
    ctx: Arc<FieldContext>,
    next: BigUint,
    order: BigUint,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.order {
            return None;
        }
        let e = self
            .ctx
            .from_value(&self.next)
            .expect("counter below order");
        self.next += 1u32;
        Some(e)
    }
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An element of F_{p^m} in polynomial-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Polynomial-basis coordinates, length m, each reduced mod p.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Canonical base-p integer value, constant term least significant.
    pub fn value(&self) -> BigUint {
        let p = BigUint::from(self.ctx.p);
        let mut v = BigUint::zero();
        for &c in self.coeffs.iter().rev() {
            v = v * &p + BigUint::from(c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn assert_same_ctx(&self, other: &FieldElement) {
        assert!(
            self.ctx.same(&other.ctx),
            "field elements from different contexts"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_ctx(other);
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| modp::add(a, b, p))
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_ctx(other);
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| modp::sub(a, b, p))
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.ctx.p;
        let coeffs = self.coeffs.iter().map(|&a| modp::neg(a, p)).collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_ctx(other);
        let p = self.ctx.p;
        let m = self.ctx.m;
        // schoolbook product, then reduce by the modulus
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = modp::add(prod[i + j], modp::mul(a, b, p), p);
            }
        }
        let modulus = &self.ctx.modulus;
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            // x^i = x^{i-m} * (x^m) and x^m = -(low part of modulus)
            for j in 0..m {
                let t = modp::mul(c, modulus[j], p);
                prod[i - m + j] = modp::sub(prod[i - m + j], t, p);
            }
        }
        prod.truncate(m);
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: prod,
        }
    }

    /// Scale by a base-field scalar.
    pub fn scale(&self, c: u64) -> FieldElement {
        let p = self.ctx.p;
        let c = c % p;
        let coeffs = self.coeffs.iter().map(|&a| modp::mul(a, c, p)).collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm on
    /// coordinate polynomials.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.ctx.p;
        // invariants: old_r = old_s * self (mod modulus), r = s * self (mod modulus)
        let mut old_r: Vec<u64> = self.coeffs.clone();
        let mut r: Vec<u64> = self.ctx.modulus.clone();
        let mut old_s: Vec<u64> = vec![1];
        let mut s: Vec<u64> = vec![0];
        while poly_degree(&r).is_some() {
            let (q, rem) = poly_divrem(&old_r, &r, p);
            old_r = r;
            r = rem;
            let qs = poly_mul(&q, &s, p);
            let new_s = poly_sub(&old_s, &qs, p);
            old_s = s;
            s = new_s;
        }
        // old_r is a nonzero constant gcd
        let d = poly_degree(&old_r).expect("gcd of nonzero element is nonzero");
        debug_assert_eq!(d, 0, "modulus is irreducible, gcd must be constant");
        let scale = modp::inv(old_r[0], p);
        let mut coeffs: Vec<u64> = old_s.iter().map(|&c| modp::mul(c, scale, p)).collect();
        coeffs.resize(self.ctx.m, 0);
        Ok(FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    pub fn pow(&self, exp: &BigUint) -> FieldElement {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base);
            }
            if i + 1 < bits {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElement {
        self.pow(&BigUint::from(exp))
    }

    /// Frobenius power a^{q^i} with q = p. Any integer i is accepted and
    /// reduced mod m, so frobenius(a, i + j) = frobenius(frobenius(a, i), j).
    pub fn frobenius(&self, i: i64) -> FieldElement {
        let m = self.ctx.m as i64;
        let steps = i.rem_euclid(m) as usize;
        let mut out = self.clone();
        for _ in 0..steps {
            out = out.pow_u64(self.ctx.p);
        }
        out
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering by canonical value: compare coordinates from the highest index
/// down, which equals the base-p integer ordering.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.value(), self.ctx)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

// polynomial helpers used by the inverse
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = modp::inv(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    let da = poly_degree(&r).unwrap_or(0);
    let mut q = vec![0u64; da.saturating_sub(db) + 1];
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let c = modp::mul(r[dr], lead_inv, p);
        q[dr - db] = c;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] = modp::sub(r[dr - db + i], modp::mul(c, bc, p), p);
        }
    }
    (q, r)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modp::add(out[i + j], modp::mul(x, y, p), p);
        }
    }
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = modp::sub(x, y, p);
    }
    out
}

// ---------------------------------------------------------------------------
// SubfieldEmbedding
// ---------------------------------------------------------------------------

/// The deterministic embedding of F_{q^n} into F_{q^m} for n | m: the source
/// generator maps to the smallest root (canonical element ordering) of the
/// source modulus inside the target field, extended multiplicatively over the
/// source power basis.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    source: Arc<FieldContext>,
    target: Arc<FieldContext>,
    image_basis: Vec<FieldElement>,
}

impl SubfieldEmbedding {
    pub fn new(source: &Arc<FieldContext>, target: &Arc<FieldContext>) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::BadParameters(format!(
                "source characteristic {} differs from target characteristic {}",
                source.p, target.p
            )));
        }
        let (n, m) = (source.m, target.m);
        if m % n != 0 {
            return Err(Error::NonDivisibleDegrees { n, m });
        }
        let root = target
            .elements()
            .find(|e| eval_base_poly(&source.modulus, e).is_zero())
            .ok_or_else(|| {
                Error::VerificationFailed("source modulus has no root in the target field".into())
            })?;
        let mut image_basis = Vec::with_capacity(n);
        let mut power = target.one();
        for _ in 0..n {
            image_basis.push(power.clone());
            power = power.mul(&root);
        }
        Ok(SubfieldEmbedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            image_basis,
        })
    }

    pub fn source(&self) -> &Arc<FieldContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldContext> {
        &self.target
    }

    /// Images of the source polynomial basis: 1, r, ..., r^{n-1} where r is
    /// the chosen root of the source modulus.
    pub fn image_basis(&self) -> &[FieldElement] {
        &self.image_basis
    }

    /// Degree n of the embedded subfield.
    pub fn degree(&self) -> usize {
        self.source.m
    }

    /// Image of a source element.
    pub fn map(&self, a: &FieldElement) -> Result<FieldElement> {
        if !a.ctx.same(&self.source) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.combine(a.coeffs()))
    }

    /// Target element with the given coordinates over the image basis.
    pub fn combine(&self, coords: &[u64]) -> FieldElement {
        let mut acc = self.target.zero();
        for (b, &c) in self.image_basis.iter().zip(coords) {
            acc = acc.add(&b.scale(c));
        }
        acc
    }
}

/// Evaluate a polynomial with F_p coefficients at a target-field element.
fn eval_base_poly(f: &[u64], x: &FieldElement) -> FieldElement {
    let mut acc = x.ctx().zero();
    for &c in f.iter().rev() {
        acc = acc.mul(x).add(&x.ctx().constant(c));
    }
    acc
}

// ---------------------------------------------------------------------------
// field-spec file
// ---------------------------------------------------------------------------

/// JSON field description: `{"p": 2, "m": 4, "modulus": [1,0,0,1,1]}` with
/// the modulus optional (defaults to the canonical irreducible polynomial).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<FieldContext>> {
        match &self.modulus {
            Some(modulus) => FieldContext::with_modulus(self.p, self.m, modulus.clone()),
            None => FieldContext::new(self.p, self.m),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("field spec: {e}")))
    }
}
