//! Integer Laurent polynomials in `q`, stored densely from the lowest exponent.
//!
//! Coefficients are `i128`; every arithmetic step is overflow-checked and panics
//! with a descriptive message rather than wrapping. Desk-scale computations stay
//! many orders of magnitude below the limit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub(crate) fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("coefficient overflow in Laurent polynomial multiplication")
}

#[inline]
pub(crate) fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .expect("coefficient overflow in Laurent polynomial addition")
}

/// `coeffs[i]` is the coefficient of `q^(low + i)`. Zero is the empty vector
/// with `low == 0`; otherwise both the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::from_dense(0, vec![c])
    }

    pub fn monomial(coeff: i128, exp: i32) -> Self {
        Self::from_dense(exp, vec![coeff])
    }

    /// `q + q^-1`.
    pub fn loop_value() -> Self {
        Self::from_dense(-1, vec![1, 0, 1])
    }

    pub fn from_dense(low: i32, coeffs: Vec<i128>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i128)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0i128; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = cadd(*slot, c);
        }
        Self::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i32) -> i128 {
        let idx = exp - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Iterate nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    pub fn leading_coeff(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn scale(&self, s: i128) -> Self {
        if s == 0 {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&c| cmul(c, s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_assign(other, 1);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_assign(other, -1);
        out
    }

    /// Make room so that exponents `lo..=hi` are addressable without reallocating per term.
    fn reserve_range(&mut self, lo: i32, hi: i32) {
        if self.coeffs.is_empty() {
            self.low = lo;
            self.coeffs = vec![0; (hi - lo + 1) as usize];
            return;
        }
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, extra));
            self.low = lo;
        }
        let cur_hi = self.low + self.coeffs.len() as i32 - 1;
        if hi > cur_hi {
            self.coeffs.resize(self.coeffs.len() + (hi - cur_hi) as usize, 0);
        }
    }

    /// `self += s * other`.
    pub fn add_scaled_assign(&mut self, other: &Self, s: i128) {
        if other.is_zero() || s == 0 {
            return;
        }
        self.reserve_range(other.low, other.high());
        let off = (other.low - self.low) as usize;
        for (i, &c) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + i];
            *slot = cadd(*slot, cmul(c, s));
        }
        self.trim();
    }

    /// `self += a * b` without allocating an intermediate product.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let lo = a.low + b.low;
        let hi = a.high() + b.high();
        self.reserve_range(lo, hi);
        let off = (lo - self.low) as usize;
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &mut self.coeffs[off + i..];
            for (j, &y) in b.coeffs.iter().enumerate() {
                row[j] = cadd(row[j], cmul(x, y));
            }
        }
        self.trim();
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul_assign(self, other);
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// The substitution `q -> q^-1`.
    pub fn reverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            low: -self.high(),
            coeffs,
        }
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0i128, |g, &c| g.gcd(&c))
    }

    /// Divide every coefficient by `s`, which must divide all of them.
    pub fn div_scalar_exact(&self, s: i128) -> Self {
        debug_assert!(s != 0);
        Self {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| {
                    debug_assert_eq!(c % s, 0);
                    c / s
                })
                .collect(),
        }
    }

    /// Exact division by a divisor whose monomial-free part divides `self`.
    /// Returns `None` when the division is not exact over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::from_dense(self.low - divisor.low, q))
    }

    /// Evaluate with Horner's rule, given `q` and `q^-1` in some ring.
    pub fn eval_with<T: Clone>(
        &self,
        q: &T,
        q_inv: &T,
        zero: T,
        from_int: impl Fn(i128) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        if self.is_zero() {
            return zero;
        }
        let mut acc = zero;
        for &c in self.coeffs.iter().rev() {
            acc = add(&mul(&acc, q), &from_int(c));
        }
        let power = |base: &T, n: u32, acc: T| -> T {
            let mut out = acc;
            for _ in 0..n {
                out = mul(&out, base);
            }
            out
        };
        if self.low >= 0 {
            power(q, self.low as u32, acc)
        } else {
            power(q_inv, (-self.low) as u32, acc)
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Exponent-sorted, e.g. `q^-2 + 3 - 2*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (e, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write_q_power(f, e)?,
                _ => {
                    write!(f, "{mag}*")?;
                    write_q_power(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_q_power(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        f.write_str("q")
    } else {
        write!(f, "q^{e}")
    }
}

// ---------------------------------------------------------------------------
// Dense integer polynomial helpers (index = exponent).

fn trim_dense(v: &mut Vec<i128>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Exact quotient `a / b` over the integers, or `None` if `b` does not divide `a`.
pub(crate) fn poly_div_exact(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut rem: Vec<i128> = a.to_vec();
    trim_dense(&mut rem);
    let b_len = b.len();
    let lc = *b.last()?;
    if rem.len() < b_len {
        return if rem.is_empty() { Some(vec![]) } else { None };
    }
    let mut quot = vec![0i128; rem.len() - b_len + 1];
    for i in (0..quot.len()).rev() {
        let top = rem[i + b_len - 1];
        if top == 0 {
            continue;
        }
        if top % lc != 0 {
            return None;
        }
        let c = top / lc;
        quot[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            let v = rem[i + j].checked_sub(c.checked_mul(bj)?)?;
            rem[i + j] = v;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return None;
    }
    Some(quot)
}

const GCD_PRIMES: [u64; 4] = [
    (1 << 62) - 57,
    (1 << 62) - 87,
    (1 << 62) - 117,
    (1 << 61) - 1,
];

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn to_mod(c: i128, p: u64) -> u64 {
    c.rem_euclid(p as i128) as u64
}

fn gcd_mod_p(a: &[i128], b: &[i128], p: u64) -> Vec<u64> {
    let reduce = |v: &[i128]| {
        let mut out: Vec<u64> = v.iter().map(|&c| to_mod(c, p)).collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    };
    let mut r0 = reduce(a);
    let mut r1 = reduce(b);
    while !r1.is_empty() {
        // r0 <- r0 mod r1
        let inv = invmod(*r1.last().unwrap(), p);
        while r0.len() >= r1.len() {
            let shift = r0.len() - r1.len();
            let c = mulmod(*r0.last().unwrap(), inv, p);
            for (j, &x) in r1.iter().enumerate() {
                let t = mulmod(c, x, p);
                let slot = &mut r0[shift + j];
                *slot = (*slot + p - t) % p;
            }
            while r0.last() == Some(&0) {
                r0.pop();
            }
            if r0.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if let Some(&lc) = r0.last() {
        let inv = invmod(lc, p);
        for c in r0.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    r0
}

fn primitive_dense(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &c| g.gcd(&c));
    let mut out: Vec<i128> = if g > 1 {
        v.iter().map(|&c| c / g).collect()
    } else {
        v.to_vec()
    };
    if out.last().is_some_and(|&c| c < 0) {
        out.iter_mut().for_each(|c| *c = -*c);
    }
    out
}

/// Primitive gcd (positive leading coefficient) of two nonzero integer polynomials.
///
/// A modular image is lifted and verified by exact trial division; if every
/// prime fails the computation falls back to a primitive remainder sequence in
/// arbitrary precision.
pub(crate) fn poly_gcd(a: &[i128], b: &[i128]) -> Vec<i128> {
    let a = primitive_dense(a);
    let b = primitive_dense(b);
    if a.len() == 1 || b.len() == 1 {
        return vec![1];
    }
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    for &p in GCD_PRIMES.iter() {
        if to_mod(*a.last().unwrap(), p) == 0 || to_mod(*b.last().unwrap(), p) == 0 {
            continue;
        }
        let g = gcd_mod_p(&a, &b, p);
        if g.len() <= 1 {
            return vec![1];
        }
        let gm = to_mod(gamma, p);
        let half = p / 2;
        let lifted: Vec<i128> = g
            .iter()
            .map(|&c| {
                let v = mulmod(c, gm, p);
                if v > half {
                    v as i128 - p as i128
                } else {
                    v as i128
                }
            })
            .collect();
        let cand = primitive_dense(&lifted);
        if poly_div_exact(&a, &cand).is_some() && poly_div_exact(&b, &cand).is_some() {
            return cand;
        }
    }
    gcd_bigint(&a, &b)
}

fn gcd_bigint(a: &[i128], b: &[i128]) -> Vec<i128> {
    fn prim(v: Vec<BigInt>) -> Vec<BigInt> {
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return v;
        }
        v.into_iter().map(|c| c / &g).collect()
    }
    let big = |v: &[i128]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut r0 = prim(big(a));
    let mut r1 = prim(big(b));
    while r1.len() > 1 || (r1.len() == 1 && !r1[0].is_zero()) {
        // pseudo-remainder of r0 by r1
        let lc = r1.last().unwrap().clone();
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let top = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (j, x) in r1.iter().enumerate() {
                rem[shift + j] -= &top * x;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        r0 = r1;
        r1 = prim(rem);
        if r1.is_empty() {
            break;
        }
    }
    let mut g = prim(r0);
    if g.last().is_some_and(|c| c.is_negative()) {
        g.iter_mut().for_each(|c| *c = -c.clone());
    }
    g.iter()
        .map(|c| c.to_i128().expect("polynomial gcd coefficient exceeds i128"))
        .collect()
}

/// Gcd of the polynomial parts (monomial factors stripped) as a Laurent polynomial
/// with lowest exponent zero and positive leading coefficient.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => LaurentPoly::zero(),
        (true, false) => LaurentPoly::from_dense(0, primitive_dense(&b.coeffs)),
        (false, true) => LaurentPoly::from_dense(0, primitive_dense(&a.coeffs)),
        (false, false) => LaurentPoly::from_dense(0, poly_gcd(&a.coeffs, &b.coeffs)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i128)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn display_is_exponent_sorted() {
        let x = p(&[(2, -1), (-2, 1), (0, 3)]);
        assert_eq!(x.to_string(), "q^-2 + 3 - q^2");
        assert_eq!(p(&[(1, 2), (-1, -1)]).to_string(), "-q^-1 + 2*q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn multiplication_and_reverse() {
        let d = LaurentPoly::loop_value();
        let d2 = d.mul(&d);
        assert_eq!(d2, p(&[(-2, 1), (0, 2), (2, 1)]));
        let x = p(&[(-1, 3), (4, 1)]);
        assert_eq!(x.reverse(), p(&[(1, 3), (-4, 1)]));
        assert_eq!(x.reverse().reverse(), x);
    }

    #[test]
    fn exact_division() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(0, -1), (1, 1)]);
        let prod = a.mul(&b).shift(-3);
        assert_eq!(prod.div_exact(&a).unwrap(), b.shift(-3));
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn gcd_of_products() {
        // (q^2+1)(q+2)^2 and (q^2+1)(q-3)
        let c = p(&[(0, 1), (2, 1)]);
        let u = p(&[(0, 2), (1, 1)]);
        let v = p(&[(0, -3), (1, 1)]);
        let a = c.mul(&u).mul(&u).scale(6);
        let b = c.mul(&v).scale(-4).shift(5);
        assert_eq!(gcd(&a, &b), c);
        assert_eq!(gcd(&u, &v), LaurentPoly::one());
    }

    #[test]
    fn bigint_fallback_agrees_with_modular() {
        let c = p(&[(0, 3), (1, -2), (3, 5)]);
        let u = p(&[(0, 7), (2, 1)]);
        let v = p(&[(0, 1), (1, 1), (2, 9)]);
        let a = c.mul(&u);
        let b = c.mul(&v);
        let modular = poly_gcd(a.coeffs(), b.coeffs());
        let big = gcd_bigint(a.coeffs(), b.coeffs());
        assert_eq!(modular, big);
        assert_eq!(modular, vec![3, -2, 0, 5]);
    }
}
