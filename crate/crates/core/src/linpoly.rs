//! Linearized polynomials over F_{q^m}: formal sums f(x) = Σ f_i x^{[i]}
//! with x^{[i]} = x^{q^i}, under addition, the non-commutative symbolic
//! product (composition), evaluation, root-space computation, and annihilator
//! construction for subspaces.
//!
//! Polynomials are formal coefficient vectors; they are never reduced modulo
//! the field polynomial x^{[m]} - x, because counting arguments elsewhere in
//! the crate depend on the exact q-degree.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{FieldContext, FieldElement, SubfieldEmbedding};
use crate::fqlinalg::{FqMatrix, Subspace};

/// A linearized polynomial: coefficient i multiplies x^{[i]} = x^{q^i}.
/// The highest stored coefficient is nonzero; the zero polynomial stores
/// nothing.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    ctx: Arc<FieldContext>,
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        LinearizedPoly {
            ctx: Arc::clone(ctx),
            coeffs: Vec::new(),
        }
    }

    /// The identity x = x^{[0]} of the symbolic product.
    pub fn identity(ctx: &Arc<FieldContext>) -> Self {
        Self::monomial(ctx.one(), 0)
    }

    /// c·x^{[i]}; the zero polynomial when c = 0.
    pub fn monomial(c: FieldElement, i: usize) -> Self {
        let ctx = Arc::clone(c.ctx());
        if c.is_zero() {
            return Self::zero(&ctx);
        }
        let mut coeffs = vec![ctx.zero(); i + 1];
        coeffs[i] = c;
        LinearizedPoly { ctx, coeffs }
    }

    /// Polynomial from coefficients (index = q-degree of the term); trailing
    /// zeros are dropped.
    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.ctx().same(ctx)) {
            return Err(Error::ContextMismatch);
        }
        let mut p = LinearizedPoly {
            ctx: Arc::clone(ctx),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with nonzero coefficient; None marks the zero
    /// polynomial (its q-degree is -infinity in the usual convention).
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^{[i]}, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Stored coefficients, lowest index first, trailing entry nonzero.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.ctx.one())
    }

    fn assert_same_ctx(&self, other: &LinearizedPoly) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.assert_same_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        LinearizedPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.assert_same_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        LinearizedPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> LinearizedPoly {
        LinearizedPoly {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Left scalar multiple λ·f (coefficient-wise).
    pub fn scale(&self, lambda: &FieldElement) -> LinearizedPoly {
        if lambda.is_zero() {
            return Self::zero(&self.ctx);
        }
        LinearizedPoly {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| lambda.mul(c)).collect(),
        }
    }

    /// Symbolic product f ⊗ g = f(g(x)): coefficient k of the result is
    /// Σ_{i+j=k} f_i · (g_j)^{q^i}. Non-commutative; x is the two-sided
    /// identity; q-degrees add for nonzero factors.
    pub fn symbolic_product(&self, g: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.assert_same_ctx(g)?;
        if self.is_zero() || g.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let df = self.coeffs.len() - 1;
        let dg = g.coeffs.len() - 1;
        let mut coeffs = vec![self.ctx.zero(); df + dg + 1];
        for (i, fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = fi.mul(&gj.frobenius(i as i64));
                coeffs[i + j] = coeffs[i + j].add(&term);
            }
        }
        LinearizedPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// f(a) = Σ f_i · a^{q^i}.
    pub fn evaluate(&self, a: &FieldElement) -> Result<FieldElement> {
        if !a.ctx().same(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut acc = self.ctx.zero();
        let mut power = a.clone(); // a^{q^i}
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&power));
            }
            if i + 1 < self.coeffs.len() {
                power = power.frobenius(1);
            }
        }
        Ok(acc)
    }

    /// Roots of f inside the embedded domain, as coordinates over the
    /// domain's image basis. Computed as the kernel of the F_q-linear map
    /// b_j ↦ f(b_j) expanded over the coefficient field's polynomial basis.
    pub fn root_space(&self, domain: &SubfieldEmbedding) -> Result<Subspace> {
        if !domain.target().same(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let q = self.ctx.p();
        let m = self.ctx.m();
        let n = domain.degree();
        let mut map = FqMatrix::zero(q, m, n);
        for (j, b) in domain.image_basis().iter().enumerate() {
            let fb = self.evaluate(b)?;
            for (i, &c) in fb.coeffs().iter().enumerate() {
                map.set(i, j, c);
            }
        }
        Ok(map.kernel_basis())
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}·x^[{}]", c.value(), i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The monic annihilator σ_U of a subspace U of the embedded domain:
/// q-degree = dim U, root space exactly U. Built over a basis u_1..u_s of U
/// by σ_0 = x and σ_i = (σ_{i-1})^{[1]} − σ_{i-1}(u_i)^{q-1} · σ_{i-1}.
pub fn subspace_polynomial(
    u: &Subspace,
    domain: &SubfieldEmbedding,
) -> Result<LinearizedPoly> {
    let ctx = domain.target();
    if u.ambient() != domain.degree() {
        return Err(Error::AmbientMismatch(u.ambient(), domain.degree()));
    }
    if u.p() != ctx.p() {
        return Err(Error::ContextMismatch);
    }
    let q = ctx.p();
    let frob_step = LinearizedPoly::monomial(ctx.one(), 1); // x^{[1]}
    let mut sigma = LinearizedPoly::identity(ctx);
    for row in u.basis().row_iter() {
        let u_i = domain.combine(row);
        let v = sigma.evaluate(&u_i)?;
        debug_assert!(!v.is_zero(), "basis rows are independent of earlier span");
        let shifted = frob_step.symbolic_product(&sigma)?;
        sigma = shifted.sub(&sigma.scale(&v.pow_u64(q - 1)))?;
    }
    Ok(sigma)
}
