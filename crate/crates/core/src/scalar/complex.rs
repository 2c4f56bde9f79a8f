use std::fmt;

use super::{naive_sum_products, BackendKind, Field};
use crate::error::{Error, Result};

/// Absolute tolerance for float equality and zero tests.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
}

impl ComplexFloat {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self::new(re, 0.0)
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
}

impl PartialEq for ComplexFloat {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, FLOAT_TOLERANCE)
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // adding 0.0 turns -0 into 0
        write!(f, "({}, {})", self.re + 0.0, self.im + 0.0)
    }
}

impl Field for ComplexFloat {
    type Ctx = ();
    type Prepared = Vec<ComplexFloat>;
    const KIND: BackendKind = BackendKind::Float;

    fn zero(_: &()) -> Self {
        Self::new(0.0, 0.0)
    }

    fn one(_: &()) -> Self {
        Self::new(1.0, 0.0)
    }

    fn from_int(_: &(), n: i64) -> Self {
        Self::new(n as f64, 0.0)
    }

    fn ctx(&self) {}

    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    fn neg(&self) -> Self {
        Self::new(-self.re, -self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.re * self.re + self.im * self.im;
        Some(Self::new(self.re / n, -self.im / n))
    }

    fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Accepts `(re, im)` or a plain real number.
    fn parse(_: &(), s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            if let Some((a, b)) = inner.split_once(',') {
                let re: f64 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad real part `{}`", a.trim())))?;
                let im: f64 = b.trim().parse().map_err(|_| {
                    Error::parse(a.len() + 2, format!("bad imaginary part `{}`", b.trim()))
                })?;
                return Ok(Self::new(re, im));
            }
        }
        t.parse::<f64>()
            .map(Self::real)
            .map_err(|_| Error::parse(0, format!("expected `(re, im)` or a real number, got `{t}`")))
    }

    fn to_complex(&self) -> Option<ComplexFloat> {
        Some(*self)
    }

    fn prepare(coeffs: &[Self]) -> Vec<Self> {
        coeffs.to_vec()
    }

    fn sum_products(
        ctx: &(),
        lhs: &Vec<Self>,
        rhs: &Vec<Self>,
        terms: &[(u32, u32, u32)],
        d: &Self,
    ) -> Self {
        naive_sum_products(ctx, lhs, rhs, terms, d)
    }
}
