//! Coefficient fields behind one interface.
//!
//! Three backends implement [`Field`]:
//!
//! * [`RationalFunction`]: exact elements of `Q(q)` with `q` transcendental,
//! * [`Cyclotomic`]: exact elements of `Q(zeta_N)` with `q = zeta_N`,
//! * [`ComplexFloat`]: double-precision complex numbers.
//!
//! A [`ScalarBackend`] bundles a field context with the chosen `q` and loop
//! value `d` (by default `q + q^-1`).

mod complex;
mod cyclotomic;
pub mod laurent;
mod parse;
mod ratfunc;

use std::fmt;

pub use complex::{ComplexFloat, FLOAT_TOLERANCE};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use laurent::LaurentPoly;
pub use parse::parse_expression;
pub use ratfunc::RationalFunction;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Generic,
    Cyclotomic,
    Float,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Generic => "generic",
            BackendKind::Cyclotomic => "cyclotomic",
            BackendKind::Float => "float",
        })
    }
}

/// Field operations used throughout the crate.
///
/// Values know their own context (`ctx()`), so binary operations never need
/// one; constructors do.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    /// Operand data precomputed once per composition (see [`Field::sum_products`]).
    type Prepared: Send + Sync;

    const KIND: BackendKind;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Conjugation used by the star operation: `q -> q^-1` in the exact
    /// backends, complex conjugation for floats.
    fn conj(&self) -> Self;

    /// Parse the textual form produced by `Display`.
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self>;

    fn to_complex(&self) -> Option<ComplexFloat> {
        None
    }

    fn prepare(coeffs: &[Self]) -> Self::Prepared;

    /// `sum over (a, b, loops) of lhs[a] * rhs[b] * d^loops`, in the given order.
    fn sum_products(
        ctx: &Self::Ctx,
        lhs: &Self::Prepared,
        rhs: &Self::Prepared,
        terms: &[(u32, u32, u32)],
        d: &Self,
    ) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&Self::one(&self.ctx())).is_zero()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        let inv = other
            .inv()
            .ok_or_else(|| Error::DivisionByZero(other.to_string()))?;
        Ok(self.mul(&inv))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            let inv = self
                .inv()
                .ok_or_else(|| Error::NonInvertibleScalar(self.to_string()))?;
            Ok(inv.pow((-e) as u32))
        }
    }
}

/// Straightforward accumulation used by backends without a faster route.
pub(crate) fn naive_sum_products<S: Field>(
    ctx: &S::Ctx,
    lhs: &[S],
    rhs: &[S],
    terms: &[(u32, u32, u32)],
    d: &S,
) -> S {
    let mut d_pows: Vec<S> = vec![S::one(ctx)];
    let mut acc = S::zero(ctx);
    for &(a, b, loops) in terms {
        while d_pows.len() <= loops as usize {
            let next = d_pows.last().unwrap().mul(d);
            d_pows.push(next);
        }
        let t = lhs[a as usize].mul(&rhs[b as usize]);
        let t = if loops == 0 {
            t
        } else {
            t.mul(&d_pows[loops as usize])
        };
        acc = acc.add(&t);
    }
    acc
}

/// [k]_q = q^{k-1} + q^{k-3} + ... + q^{1-k}, extended oddly to negative k.
pub fn quantum_integer<S: Field>(k: i64, backend: &ScalarBackend<S>) -> S {
    if k < 0 {
        return quantum_integer(-k, backend).neg();
    }
    let ctx = &backend.ctx;
    if k == 0 {
        return S::zero(ctx);
    }
    let q2 = backend.q.mul(&backend.q);
    // start at q^{1-k}
    let mut term = backend.q_inv.pow((k - 1) as u32);
    let mut acc = S::zero(ctx);
    for _ in 0..k {
        acc = acc.add(&term);
        term = term.mul(&q2);
    }
    acc
}

/// A field context together with the distinguished elements `q` and `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarBackend<S: Field> {
    pub ctx: S::Ctx,
    pub q: S,
    pub q_inv: S,
    pub d: S,
}

impl<S: Field> ScalarBackend<S> {
    /// Backend with loop value `d = q + q^-1`.
    pub fn from_q(ctx: S::Ctx, q: S) -> Result<Self> {
        let q_inv = q
            .inv()
            .ok_or_else(|| Error::NonInvertibleScalar(q.to_string()))?;
        let d = q.add(&q_inv);
        Ok(Self { ctx, q, q_inv, d })
    }

    /// Same field and `q`, but a different loop value (for example `-(q + q^-1)`).
    pub fn with_loop_value(&self, d: S) -> Self {
        Self {
            d,
            ..self.clone()
        }
    }

    pub fn kind(&self) -> BackendKind {
        S::KIND
    }

    pub fn zero(&self) -> S {
        S::zero(&self.ctx)
    }

    pub fn one(&self) -> S {
        S::one(&self.ctx)
    }

    pub fn int(&self, n: i64) -> S {
        S::from_int(&self.ctx, n)
    }

    pub fn quantum_integer(&self, k: i64) -> S {
        quantum_integer(k, self)
    }

    /// Parse a scalar expression (`q`, `d`, integers, `+ - * / ^`, parentheses,
    /// `[k]` for quantum integers) or the backend's display form.
    pub fn parse(&self, s: &str) -> Result<S> {
        S::parse(&self.ctx, s).or_else(|_| parse_expression(s, self))
    }
}

impl ScalarBackend<RationalFunction> {
    pub fn generic() -> Self {
        Self::from_q((), RationalFunction::q()).expect("q is invertible")
    }
}

impl ScalarBackend<Cyclotomic> {
    /// `q = zeta_order`, a primitive `order`-th root of unity.
    pub fn cyclotomic(order: u32) -> Result<Self> {
        let field = CyclotomicField::new(order)?;
        let q = Cyclotomic::generator(&field);
        Self::from_q(field, q)
    }

    /// `q = exp(i*pi/l)`, so that `q^2` is a primitive `l`-th root of unity.
    pub fn root_of_unity_level(l: u32) -> Result<Self> {
        Self::cyclotomic(2 * l)
    }
}

impl ScalarBackend<ComplexFloat> {
    pub fn float_q(q: ComplexFloat) -> Result<Self> {
        Self::from_q((), q)
    }

    /// Float backend with real loop value `d`; `q` is a root of `q^2 - |d| q + 1`,
    /// and `d` keeps its sign.
    pub fn float_d(d: f64) -> Result<Self> {
        let a = d.abs();
        let q = if a >= 2.0 {
            ComplexFloat::new((a + (a * a - 4.0).sqrt()) / 2.0, 0.0)
        } else {
            ComplexFloat::new(a / 2.0, (4.0 - a * a).sqrt() / 2.0)
        };
        let b = Self::from_q((), q)?;
        Ok(b.with_loop_value(ComplexFloat::new(d, 0.0)))
    }
}

/// Specialize a rational function at the backend's `q`.
pub fn evaluate_at<S: Field>(r: &RationalFunction, target: &ScalarBackend<S>) -> Result<S> {
    let eval = |p: &LaurentPoly| -> S {
        p.eval_with(
            &target.q,
            &target.q_inv,
            target.zero(),
            |c| int_from_i128(&target.ctx, c),
            |a, b| a.add(b),
            |a, b| a.mul(b),
        )
    };
    let num = eval(r.numerator());
    let den = eval(r.denominator());
    let inv = den
        .inv()
        .ok_or_else(|| Error::DenominatorVanishes(r.denominator().to_string()))?;
    Ok(num.mul(&inv))
}

pub fn int_from_i128<S: Field>(ctx: &S::Ctx, c: i128) -> S {
    if let Ok(small) = i64::try_from(c) {
        return S::from_int(ctx, small);
    }
    // split into base-2^32 digits
    let neg = c < 0;
    let mut mag = c.unsigned_abs();
    let base = S::from_int(ctx, 1i64 << 32);
    let mut digits = Vec::new();
    while mag > 0 {
        digits.push((mag & 0xffff_ffff) as i64);
        mag >>= 32;
    }
    let mut acc = S::zero(ctx);
    for &dg in digits.iter().rev() {
        acc = acc.mul(&base).add(&S::from_int(ctx, dg));
    }
    if neg {
        acc.neg()
    } else {
        acc
    }
}
