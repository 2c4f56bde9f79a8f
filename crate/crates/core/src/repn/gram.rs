//! Trace pairings, their determinants and the negligible morphisms at roots of unity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fusion::power_decomposition;
use super::linalg::{self, Matrix};
use crate::diagram::{Diagram, DEFAULT_MAX_PAIRS};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scalar::{BackendKind, Cyclotomic, Field, ScalarBackend};

/// Loop counts of `D_i ∘ ᵗD_j` closed up, for `D_i, D_j` in `K_{n,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMatrix {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<Diagram>,
    pub loops: Vec<Vec<u32>>,
}

pub fn loop_matrix(m: usize, n: usize) -> Result<LoopMatrix> {
    loop_matrix_with_limit(m, n, DEFAULT_MAX_PAIRS)
}

pub fn loop_matrix_with_limit(m: usize, n: usize, max_pairs: usize) -> Result<LoopMatrix> {
    let basis = Diagram::enumerate_with_limit(n, m, max_pairs)?;
    let transposed: Vec<Diagram> = basis.iter().map(Diagram::rotate_pi).collect();
    let k = basis.len();
    let mut loops = vec![vec![0u32; k]; k];
    for i in 0..k {
        for j in i..k {
            let r = basis[i].compose_unchecked(&transposed[j]);
            let c = r.loops + r.diagram.closure_loops()?;
            loops[i][j] = c;
            loops[j][i] = c;
        }
    }
    Ok(LoopMatrix {
        m,
        n,
        basis,
        loops,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S: Field> {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<Diagram>,
    pub entries: Matrix<S>,
}

impl LoopMatrix {
    pub fn evaluate<S: Field>(&self, backend: &ScalarBackend<S>) -> GramMatrix<S> {
        let max = self.loops.iter().flatten().copied().max().unwrap_or(0);
        let mut pows = vec![backend.one()];
        for _ in 0..max {
            let next = pows.last().unwrap().mul(&backend.d);
            pows.push(next);
        }
        GramMatrix {
            m: self.m,
            n: self.n,
            basis: self.basis.clone(),
            entries: self
                .loops
                .iter()
                .map(|row| row.iter().map(|&c| pows[c as usize].clone()).collect())
                .collect(),
        }
    }

    /// Determinant as an integer polynomial in `d`, by fraction-free
    /// (Bareiss) elimination over `Z[d]`.
    pub fn determinant_poly(&self) -> DPoly {
        let mut a: Vec<Vec<DPoly>> = self
            .loops
            .iter()
            .map(|row| row.iter().map(|&c| DPoly::monomial(c as usize)).collect())
            .collect();
        bareiss(&mut a)
    }
}

pub fn gram_matrix<S: Field>(
    m: usize,
    n: usize,
    backend: &ScalarBackend<S>,
) -> Result<GramMatrix<S>> {
    Ok(loop_matrix(m, n)?.evaluate(backend))
}

impl<S: Field> GramMatrix<S> {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    pub fn nullity(&self) -> usize {
        self.size() - self.rank()
    }

    pub fn determinant(&self, ctx: &S::Ctx) -> S {
        linalg::determinant(&self.entries, ctx)
    }

    pub fn nullspace(&self, ctx: &S::Ctx) -> Vec<Vec<S>> {
        linalg::nullspace(&self.entries, ctx)
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let key = self.basis.iter().map(Diagram::encode).map(|s| s.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (d, row) in self.basis.iter().zip(&cells) {
            out.push_str(&format!("{:<key$} ", d.encode()));
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Dense polynomial in `d` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPoly(Vec<BigInt>);

impl DPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        Self(v)
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        Self(c).trim()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self(v).trim()
    }

    fn sub(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            v[i] += a;
        }
        for (i, b) in o.0.iter().enumerate() {
            v[i] -= b;
        }
        Self(v).trim()
    }

    /// Exact quotient; panics if `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Self {
        let dd = o.degree().expect("division by the zero polynomial");
        let lead = &o.0[dd];
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return Self::zero();
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            assert!((&c % lead).is_zero(), "inexact polynomial division");
            let t = c / lead;
            for (i, b) in o.0.iter().enumerate() {
                rem[k + i] -= &t * b;
            }
            q[k] = t;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self(q).trim()
    }

    /// Value at the backend's `d`.
    pub fn eval<S: Field>(&self, backend: &ScalarBackend<S>) -> Result<S> {
        let mut acc = backend.zero();
        for c in self.0.iter().rev() {
            let ci: i128 = c.try_into().map_err(|_| {
                Error::NumericalFailure(format!("coefficient {c} exceeds 128 bits"))
            })?;
            acc = acc
                .mul(&backend.d)
                .add(&crate::scalar::int_from_i128(&backend.ctx, ci));
        }
        Ok(acc)
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "d".into(),
                _ => format!("d^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn bareiss(a: &mut [Vec<DPoly>]) -> DPoly {
    let n = a.len();
    if n == 0 {
        return DPoly::one();
    }
    let mut sign = false;
    let mut prev = DPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return DPoly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

fn require_cyclotomic<S: Field>() -> Result<()> {
    if S::KIND != BackendKind::Cyclotomic {
        return Err(Error::BackendMismatch(format!(
            "negligible morphisms need the exact cyclotomic backend, not {}",
            S::KIND
        )));
    }
    Ok(())
}

/// A basis of the radical of the trace pairing on `Hom(X^m, X^n)`.
pub fn negligible_basis<S: Field>(
    m: usize,
    n: usize,
    backend: &Arc<ScalarBackend<S>>,
) -> Result<Vec<Morphism<S>>> {
    require_cyclotomic::<S>()?;
    let g = gram_matrix(m, n, backend)?;
    g.nullspace(&backend.ctx)
        .into_iter()
        .map(|v| Morphism::from_terms(backend, n, m, g.basis.iter().cloned().zip(v)))
        .collect()
}

/// Whether `tr(f ∘ D) = 0` for every diagram `D` of the opposite hom-set.
pub fn is_negligible<S: Field>(f: &Morphism<S>) -> Result<bool> {
    for d in Diagram::enumerate(f.bottom(), f.top())? {
        let g = Morphism::from_diagram(f.backend(), d);
        if !f.compose(&g)?.markov_trace()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim End(X^n)` modulo negligibles at `q = exp(iπ/l)`: `C_n - nullity`.
pub fn quotient_dimension(n: usize, l: u32) -> Result<usize> {
    let b = ScalarBackend::<Cyclotomic>::root_of_unity_level(l)?;
    let g = gram_matrix(n, n, &b)?;
    Ok(g.rank())
}

/// `Σ mult²` over the truncated decomposition of `X^n` at level `l`.
pub fn truncated_dimension(n: usize, l: usize) -> Result<u128> {
    Ok(power_decomposition(n, Some(l))?
        .values()
        .map(|m| m * m)
        .sum())
}
