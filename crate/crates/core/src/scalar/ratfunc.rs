use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use super::laurent::{gcd, LaurentPoly};
use super::{BackendKind, Field, ScalarBackend};
use crate::error::Result;

/// An element of `Q(q)` as a reduced fraction of integer Laurent polynomials.
///
/// Normal form: the denominator is an ordinary polynomial with nonzero constant
/// term and positive leading coefficient, numerator and denominator share no
/// polynomial factor, and the gcd of all coefficients is one. Zero is `0/1`.
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(LaurentPoly::zero());
        }
        let shift = den.low();
        let (num, den) = (num.shift(-shift), den.shift(-shift));
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::from_coprime(num, den)
    }

    /// Normalize units only; caller guarantees the polynomial parts are coprime.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        let shift = den.low();
        let (mut num, mut den) = (num.shift(-shift), den.shift(-shift));
        let c = num.content().gcd(&den.content());
        if c > 1 {
            num = num.div_scalar_exact(c);
            den = den.div_scalar_exact(c);
        }
        if den.leading_coeff() < 0 {
            num = num.neg();
            den = den.neg();
        }
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn q() -> Self {
        Self::from_poly(LaurentPoly::monomial(1, 1))
    }

    /// `q + q^-1`.
    pub fn loop_value() -> Self {
        Self::from_poly(LaurentPoly::loop_value())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Per-operand data: numerators plus interned denominators.
pub struct PreparedRational {
    nums: Vec<LaurentPoly>,
    den_ids: Vec<u32>,
    dens: Vec<LaurentPoly>,
}

impl Field for RationalFunction {
    type Ctx = ();
    type Prepared = PreparedRational;
    const KIND: BackendKind = BackendKind::Generic;

    fn zero(_: &()) -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn one(_: &()) -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    fn from_int(_: &(), n: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(n as i128))
    }

    fn ctx(&self) {}

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&other.num));
            }
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&());
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel before multiplying keeps the gcd inputs small
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }

    fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    fn conj(&self) -> Self {
        Self::from_coprime(self.num.reverse(), self.den.reverse())
    }

    fn parse(_: &(), s: &str) -> Result<Self> {
        super::parse_expression(s, &ScalarBackend::generic())
    }

    fn prepare(coeffs: &[Self]) -> PreparedRational {
        let mut dens: Vec<LaurentPoly> = Vec::new();
        let mut index: HashMap<LaurentPoly, u32> = HashMap::new();
        let mut den_ids = Vec::with_capacity(coeffs.len());
        let mut nums = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let id = *index.entry(c.den.clone()).or_insert_with(|| {
                dens.push(c.den.clone());
                (dens.len() - 1) as u32
            });
            den_ids.push(id);
            nums.push(c.num.clone());
        }
        PreparedRational {
            nums,
            den_ids,
            dens,
        }
    }

    fn sum_products(
        _: &(),
        lhs: &PreparedRational,
        rhs: &PreparedRational,
        terms: &[(u32, u32, u32)],
        d: &Self,
    ) -> Self {
        // Group numerator products by (lhs denominator, rhs denominator, loops);
        // only the few group totals go through gcd-normalizing arithmetic.
        let mut groups: Vec<((u32, u32, u32), LaurentPoly)> = Vec::new();
        let mut slot: HashMap<(u32, u32, u32), usize> = HashMap::new();
        for &(a, b, loops) in terms {
            let key = (lhs.den_ids[a as usize], rhs.den_ids[b as usize], loops);
            let i = *slot.entry(key).or_insert_with(|| {
                groups.push((key, LaurentPoly::zero()));
                groups.len() - 1
            });
            groups[i]
                .1
                .add_mul_assign(&lhs.nums[a as usize], &rhs.nums[b as usize]);
        }
        let mut d_num_pows = vec![LaurentPoly::one()];
        let mut d_den_pows = vec![LaurentPoly::one()];

        // Same-denominator groups are merged as polynomials first.
        let mut by_den: Vec<(LaurentPoly, LaurentPoly)> = Vec::new();
        for ((da, db, loops), acc) in groups {
            if acc.is_zero() {
                continue;
            }
            while d_num_pows.len() <= loops as usize {
                let n = d_num_pows.last().unwrap().mul(&d.num);
                let m = d_den_pows.last().unwrap().mul(&d.den);
                d_num_pows.push(n);
                d_den_pows.push(m);
            }
            let num = acc.mul(&d_num_pows[loops as usize]);
            let den = lhs.dens[da as usize]
                .mul(&rhs.dens[db as usize])
                .mul(&d_den_pows[loops as usize]);
            match by_den.iter_mut().find(|(dd, _)| *dd == den) {
                Some((_, n)) => n.add_scaled_assign(&num, 1),
                None => by_den.push((den, num)),
            }
        }
        match by_den.len() {
            0 => Self::zero(&()),
            1 => {
                let (den, num) = by_den.pop().unwrap();
                Self::new(num, den)
            }
            _ => {
                // common denominator = lcm of the group denominators
                let mut lcm = LaurentPoly::one();
                for (den, _) in &by_den {
                    let g = gcd(&lcm, den);
                    lcm = lcm.mul(&den.div_exact(&g).expect("gcd divides"));
                }
                let mut total = LaurentPoly::zero();
                for (den, num) in &by_den {
                    let cofactor = lcm.div_exact(den).expect("lcm is a multiple");
                    total.add_mul_assign(num, &cofactor);
                }
                Self::new(total, lcm)
            }
        }
    }
}
