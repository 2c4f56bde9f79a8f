use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::poly_div_exact;
use super::{naive_sum_products, BackendKind, ComplexFloat, Field, ScalarBackend};
use crate::error::{Error, Result};

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i128> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d)).expect("Phi_d divides x^n - 1");
        }
    }
    p
}

/// The field `Q(zeta_N)` presented as `Q[x] / Phi_N(x)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<i128>,
    /// `x^k mod Phi_N` for `0 <= k < N`.
    powers: Vec<Vec<BigRational>>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order == 0 || order > 720 {
            return Err(Error::IndexOutOfRange(format!(
                "cyclotomic order {order} outside 1..=720"
            )));
        }
        let modulus = cyclotomic_polynomial(order);
        let mut field = Self {
            order,
            modulus,
            powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = field.reduce(vec![BigRational::one()]);
        for _ in 0..order {
            powers.push(cur.clone());
            let mut shifted = vec![BigRational::zero()];
            shifted.extend(cur);
            cur = field.reduce(shifted);
        }
        field.powers = powers;
        Ok(Arc::new(field))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of `Phi_N`, i.e. Euler's totient of `N`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        // Phi_N is monic
        while v.len() > deg {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - deg;
            for (j, &m) in self.modulus[..deg].iter().enumerate() {
                if m != 0 {
                    v[shift + j] -= &top * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        trim(&mut v);
        v
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// An element of `Q(zeta_N)`: a rational polynomial in `q` of degree below
/// `phi(N)`, where `q` is the class of `x`.
#[derive(Clone)]
pub struct Cyclotomic {
    coeffs: Vec<BigRational>,
    field: Arc<CyclotomicField>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl Cyclotomic {
    pub fn generator(field: &Arc<CyclotomicField>) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        Self {
            coeffs: field.reduce(coeffs),
            field: field.clone(),
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing cyclotomic fields of different order"
        );
    }
}

impl fmt::Display for Cyclotomic {
    /// `poly mod Phi_N`, e.g. `1 - q^2 mod Phi_12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match (e, mag.is_one()) {
                (0, _) => f.write_str(&mag_str)?,
                (1, true) => f.write_str("q")?,
                (_, true) => write!(f, "q^{e}")?,
                (1, false) => write!(f, "{mag_str}*q")?,
                (_, false) => write!(f, "{mag_str}*q^{e}")?,
            }
        }
        write!(f, " mod Phi_{}", self.field.order)
    }
}

impl Field for Cyclotomic {
    type Ctx = Arc<CyclotomicField>;
    type Prepared = Vec<Cyclotomic>;
    const KIND: BackendKind = BackendKind::Cyclotomic;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self {
            coeffs: Vec::new(),
            field: ctx.clone(),
        }
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_coeffs(ctx, vec![BigRational::from_integer(BigInt::from(n))])
    }

    fn ctx(&self) -> Self::Ctx {
        self.field.clone()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o += s;
        }
        trim(&mut out);
        Self {
            coeffs: out,
            field: self.field.clone(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            field: self.field.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // extended Euclid on (modulus, self): track s with s * self = r (mod Phi)
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (quot, rem) = div_rem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Phi_N is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let coeffs = s0.into_iter().map(|x| x * &c).collect();
        Some(Self::from_coeffs(&self.field, coeffs))
    }

    fn conj(&self) -> Self {
        let n = self.field.order as usize;
        let mut out = vec![BigRational::zero(); self.field.degree().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, p) in self.field.powers[(n - i % n) % n].iter().enumerate() {
                out[j] += c * p;
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self> {
        let (body, order) = match s.rsplit_once("mod Phi_") {
            Some((body, n)) => {
                let n: u32 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(s.len() - n.len(), "bad cyclotomic order"))?;
                (body.trim(), n)
            }
            None => (s.trim(), ctx.order),
        };
        if order != ctx.order {
            return Err(Error::BackendMismatch(format!(
                "value lives in Q(zeta_{order}), backend is Q(zeta_{})",
                ctx.order
            )));
        }
        let backend = ScalarBackend::from_q(ctx.clone(), Self::generator(ctx))?;
        super::parse_expression(body, &backend)
    }

    fn to_complex(&self) -> Option<ComplexFloat> {
        let theta = 2.0 * std::f64::consts::PI / self.field.order as f64;
        let mut acc = ComplexFloat::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = theta * k as f64;
            acc = acc.add(&ComplexFloat::new(v * ang.cos(), v * ang.sin()));
        }
        Some(acc)
    }

    fn prepare(coeffs: &[Self]) -> Vec<Self> {
        coeffs.to_vec()
    }

    fn sum_products(
        ctx: &Self::Ctx,
        lhs: &Vec<Self>,
        rhs: &Vec<Self>,
        terms: &[(u32, u32, u32)],
        d: &Self,
    ) -> Self {
        naive_sum_products(ctx, lhs, rhs, terms, d)
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lc_inv = b.last().unwrap().recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lc_inv;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn generator_has_exact_order() {
        for n in [3u32, 5, 6, 8, 10, 12] {
            let f = CyclotomicField::new(n).unwrap();
            let q = Cyclotomic::generator(&f);
            assert!(q.pow(n).is_one());
            for k in 1..n {
                assert!(!q.pow(k).is_one(), "q^{k} = 1 in Q(zeta_{n})");
            }
        }
    }

    #[test]
    fn inverse_and_conjugate() {
        let f = CyclotomicField::new(12).unwrap();
        let q = Cyclotomic::generator(&f);
        let x = q.add(&Cyclotomic::from_int(&f, 2)).mul(&q);
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(q.conj().mul(&q).is_one());
        assert_eq!(x.conj().conj(), x);
        // conj is a field automorphism
        assert_eq!(x.mul(&q).conj(), x.conj().mul(&q.conj()));
    }

    #[test]
    fn display_round_trip() {
        let f = CyclotomicField::new(12).unwrap();
        let q = Cyclotomic::generator(&f);
        let half = Cyclotomic::from_int(&f, 2).inv().unwrap();
        let x = q.pow(3).mul(&half).sub(&q);
        let s = x.to_string();
        assert_eq!(s, "-q + 1/2*q^3 mod Phi_12");
        assert_eq!(Cyclotomic::parse(&f, &s).unwrap(), x);
    }

    #[test]
    fn to_complex_uses_principal_root() {
        let f = CyclotomicField::new(10).unwrap();
        let q = Cyclotomic::generator(&f);
        let d = q.add(&q.inv().unwrap()).to_complex().unwrap();
        assert!((d.re - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert!(d.im.abs() < 1e-12);
    }
}
