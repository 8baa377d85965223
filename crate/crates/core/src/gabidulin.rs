//! Gabidulin codes: evaluations of linearized polynomials of q-degree < k at
//! n F_q-linearly independent points of F_{q^m} (n <= m). Rank weight and
//! rank distance come from the F_q-rank of the m×n coefficient expansion.

use std::sync::Arc;

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::decimal::DecInt;
use crate::error::{Error, Result};
use crate::ffield::{FieldContext, FieldElement, FieldSpec};
use crate::fqlinalg::FqMatrix;
use crate::linpoly::LinearizedPoly;

/// Expansion of a vector over F_{q^m} into the m×n matrix whose column j
/// holds the polynomial-basis coordinates of v_j.
pub fn expansion_matrix(v: &[FieldElement]) -> Result<FqMatrix> {
    let first = v
        .first()
        .ok_or_else(|| Error::BadParameters("cannot expand an empty vector".into()))?;
    let ctx = first.ctx();
    let (q, m) = (ctx.p(), ctx.m());
    let mut out = FqMatrix::zero(q, m, v.len());
    for (j, e) in v.iter().enumerate() {
        if !e.ctx().same(ctx) {
            return Err(Error::ContextMismatch);
        }
        for (i, &c) in e.coeffs().iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// F_q-rank of the expansion matrix of v.
pub fn rank_weight(v: &[FieldElement]) -> Result<usize> {
    Ok(expansion_matrix(v)?.rank())
}

/// rank_weight(u - v).
pub fn rank_distance(u: &[FieldElement], v: &[FieldElement]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let diff: Vec<FieldElement> = u.iter().zip(v).map(|(a, b)| a.sub(b)).collect();
    rank_weight(&diff)
}

/// A Gabidulin code G(n, k) over F_{q^m} with fixed evaluation points.
/// Minimum rank distance d = n - k + 1 (the MRD property; verified
/// exhaustively in tests rather than assumed).
#[derive(Debug, Clone)]
pub struct GabidulinCode {
    ctx: Arc<FieldContext>,
    n: usize,
    k: usize,
    alphas: Vec<FieldElement>,
}

impl GabidulinCode {
    /// Code with explicit evaluation points; they must be F_q-linearly
    /// independent.
    pub fn new(
        ctx: &Arc<FieldContext>,
        n: usize,
        k: usize,
        alphas: Vec<FieldElement>,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::BadParameters(format!(
                "dimension k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        if n > ctx.m() {
            return Err(Error::BadParameters(format!(
                "length n = {n} exceeds extension degree m = {}",
                ctx.m()
            )));
        }
        if alphas.len() != n {
            return Err(Error::LengthMismatch(alphas.len(), n));
        }
        if alphas.iter().any(|a| !a.ctx().same(ctx)) {
            return Err(Error::ContextMismatch);
        }
        if expansion_matrix(&alphas)?.rank() != n {
            return Err(Error::DependentPoints);
        }
        Ok(GabidulinCode {
            ctx: Arc::clone(ctx),
            n,
            k,
            alphas,
        })
    }

    /// Code with the default evaluation points 1, g, ..., g^{n-1} (prefix of
    /// the polynomial basis).
    pub fn with_default_points(ctx: &Arc<FieldContext>, n: usize, k: usize) -> Result<Self> {
        if n > ctx.m() {
            return Err(Error::BadParameters(format!(
                "length n = {n} exceeds extension degree m = {}",
                ctx.m()
            )));
        }
        let alphas = ctx.polynomial_basis().into_iter().take(n).collect();
        Self::new(ctx, n, k, alphas)
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance n - k + 1.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    /// Number of codewords, q^{mk}.
    pub fn size(&self) -> BigUint {
        self.ctx.order().pow(self.k as u32)
    }

    /// c = (f(α_0), ..., f(α_{n-1})) for a message of q-degree < k.
    pub fn encode(&self, f: &LinearizedPoly) -> Result<Vec<FieldElement>> {
        if let Some(df) = f.q_degree() {
            if df >= self.k {
                return Err(Error::DegreeTooHigh {
                    got: df,
                    limit: self.k,
                });
            }
        }
        self.alphas.iter().map(|a| f.evaluate(a)).collect()
    }

    /// The unique message polynomial with encode(f) = v, or None when v is
    /// not a codeword. Solves the n×k system with coefficient matrix
    /// M[j][i] = α_j^{q^i} over F_{q^m}.
    pub fn message_polynomial(&self, v: &[FieldElement]) -> Result<Option<LinearizedPoly>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch(v.len(), self.n));
        }
        if v.iter().any(|e| !e.ctx().same(&self.ctx)) {
            return Err(Error::ContextMismatch);
        }
        // augmented rows [α_j^{q^0}, ..., α_j^{q^{k-1}} | v_j]
        let mut rows: Vec<Vec<FieldElement>> = self
            .alphas
            .iter()
            .zip(v)
            .map(|(a, vj)| {
                let mut row: Vec<FieldElement> =
                    (0..self.k).map(|i| a.frobenius(i as i64)).collect();
                row.push(vj.clone());
                row
            })
            .collect();
        let k = self.k;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
        let mut r = 0;
        for c in 0..k {
            let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(pr, r);
            let inv = rows[r][c].inv()?;
            for x in rows[r].iter_mut() {
                *x = x.mul(&inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    let t = f.mul(p);
                    *x = x.sub(&t);
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
        }
        // residual rows must vanish for the system to be consistent
        for row in rows.iter().skip(r) {
            if !row[k].is_zero() {
                return Ok(None);
            }
        }
        let coeffs: Vec<FieldElement> = pivot_of_col
            .iter()
            .map(|p| match p {
                Some(i) => rows[*i][k].clone(),
                None => self.ctx.zero(),
            })
            .collect();
        let f = LinearizedPoly::from_coeffs(&self.ctx, coeffs)?;
        Ok(Some(f))
    }

    pub fn is_codeword(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.message_polynomial(v)?.is_some())
    }

    /// All q^{mk} message polynomials in canonical order: coefficient
    /// vectors (f_0, ..., f_{k-1}) count up with f_0 as the fastest digit,
    /// each digit running through element values 0..q^m.
    pub fn message_polynomials(&self) -> Result<MessagePolys> {
        let order = self.ctx.order();
        let order: u64 = order
            .try_into()
            .map_err(|_| Error::BadParameters("field too large to enumerate messages".into()))?;
        Ok(MessagePolys {
            ctx: Arc::clone(&self.ctx),
            order,
            digits: vec![0; self.k],
            done: false,
        })
    }
}

/// Iterator over all message polynomials of a code, canonical order.
pub struct MessagePolys {
    ctx: Arc<FieldContext>,
    order: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for MessagePolys {
    type Item = LinearizedPoly;

    fn next(&mut self) -> Option<LinearizedPoly> {
        if self.done {
            return None;
        }
        let coeffs: Vec<FieldElement> = self
            .digits
            .iter()
            .map(|&v| self.ctx.from_value_u64(v).expect("digit below order"))
            .collect();
        let out = LinearizedPoly::from_coeffs(&self.ctx, coeffs).expect("same context");
        for d in self.digits.iter_mut() {
            if *d + 1 < self.order {
                *d += 1;
                return Some(out);
            }
            *d = 0;
        }
        self.done = true;
        Some(out)
    }
}

/// JSON code description:
/// `{"field": {...}, "n": 4, "k": 2, "alphas": ["1", "2", "4", "8"]}` with
/// alphas optional (defaults to the polynomial-basis prefix) and element
/// values given as integers or decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpec {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<DecInt>>,
}

impl CodeSpec {
    pub fn build(&self) -> Result<GabidulinCode> {
        let ctx = self.field.build()?;
        match &self.alphas {
            None => GabidulinCode::with_default_points(&ctx, self.n, self.k),
            Some(vals) => {
                let alphas = vals
                    .iter()
                    .map(|v| ctx.from_value(&v.to_biguint()?))
                    .collect::<Result<Vec<_>>>()?;
                GabidulinCode::new(&ctx, self.n, self.k, alphas)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("code spec: {e}")))
    }
}
