//! Exact arithmetic in Q(q), the field of rational functions in q over the
//! rationals. Every scalar in the system — q, q^-1, (q-q^-1)^-2, structural
//! coefficients — lives here.
//!
//! A [`RatFunc`] is a quotient of two integer polynomials in q kept in
//! canonical form: gcd-reduced, integer content cleared, denominator leading
//! coefficient positive. Equality is plain structural comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("evaluation point must satisfy q != 0 and q^4 != 1")]
    BadSpecialization,
}

/// Dense univariate polynomial in q with BigInt coefficients.
/// `coeffs[k]` is the coefficient of q^k; the vector carries no trailing zeros,
/// and the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial c * q^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The variable q.
    pub fn q() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Number of trailing zero coefficients, i.e. the q-adic valuation.
    fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    /// Divide every coefficient by d; panics unless the division is exact.
    fn div_scalar_exact(&self, d: &BigInt) -> IntPoly {
        debug_assert!(!d.is_zero());
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let (qt, r) = c.div_rem(d);
                    debug_assert!(r.is_zero());
                    qt
                })
                .collect(),
        }
    }

    fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Self times q^k.
    fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        IntPoly::new(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::new(coeffs)
    }

    /// Exact polynomial division; panics if rhs does not divide self.
    fn div_exact(&self, rhs: &IntPoly) -> IntPoly {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dn = self.degree().unwrap();
        let dd = rhs.degree().unwrap();
        assert!(dn >= dd, "inexact polynomial division");
        let lead = rhs.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (qt, r) = c.div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, b) in rhs.coeffs.iter().enumerate() {
                let prod = &qt * b;
                rem[k + i] -= prod;
            }
            quo[k] = qt;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::new(quo)
    }

    /// Primitive pseudo-remainder sequence gcd; result has positive leading
    /// coefficient and is primitive up to the content gcd of the inputs.
    pub fn gcd(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return rhs.abs_lead();
        }
        if rhs.is_zero() {
            return self.abs_lead();
        }
        // q^v common factor
        let v = self.valuation().min(rhs.valuation());
        let cont = self.content().gcd(&rhs.content());
        let mut a = IntPoly::new(self.coeffs[self.valuation()..].to_vec());
        let mut b = IntPoly::new(rhs.coeffs[rhs.valuation()..].to_vec());
        a = a.div_scalar_exact(&a.content());
        b = b.div_scalar_exact(&b.content());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                IntPoly::zero()
            } else {
                r.div_scalar_exact(&r.content())
            };
        }
        let mut g = a;
        if g.leading().map_or(false, |c| c.is_negative()) {
            g = g.neg();
        }
        g.mul_scalar(&cont).shift(v)
    }

    /// Pseudo-remainder of self by rhs (rhs nonzero, deg(self) >= deg(rhs)).
    fn pseudo_rem(&self, rhs: &IntPoly) -> IntPoly {
        let dd = rhs.degree().unwrap();
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dn) = rem.degree() {
            if dn < dd {
                break;
            }
            let c = rem.leading().unwrap().clone();
            rem = rem.mul_scalar(&lead).sub(&rhs.mul_scalar(&c).shift(dn - dd));
        }
        rem
    }

    fn abs_lead(&self) -> IntPoly {
        if self.leading().map_or(false, |c| c.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    /// Sparse `c*q^k` form, highest power first, e.g. `q^2-1`, `2*q^3+q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter_terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Element of Q(q) in canonical reduced form.
///
/// Invariants: the denominator is nonzero with positive leading coefficient,
/// gcd(num, den) = 1, and gcd(content(num), content(den)) = 1. The zero
/// element is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Canonicalizing constructor. Fails on a zero denominator.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading().map_or(false, |l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        RatFunc {
            num: IntPoly::constant(BigInt::from(k)),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// The Laurent monomial q^k (k may be negative).
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            RatFunc::from_poly(IntPoly::monomial(BigInt::one(), k as usize))
        } else {
            RatFunc {
                num: IntPoly::one(),
                den: IntPoly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn q() -> Self {
        RatFunc::q_pow(1)
    }

    /// q - q^-1, the ubiquitous bracket divisor.
    pub fn q_minus_qinv() -> Self {
        &RatFunc::q() - &RatFunc::q_pow(-1)
    }

    pub fn ratio(a: i64, b: i64) -> Result<Self, CoeffError> {
        RatFunc::new(
            IntPoly::constant(BigInt::from(a)),
            IntPoly::constant(BigInt::from(b)),
        )
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the numerator's leading coefficient is negative (the
    /// canonical denominator lead is always positive).
    pub fn lead_is_negative(&self) -> bool {
        self.num.leading().map_or(false, |c| c.is_negative())
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Ring-homomorphic evaluation at an exact rational q0 with q0 != 0 and
    /// q0^4 != 1.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, CoeffError> {
        if q0.is_zero() {
            return Err(CoeffError::BadSpecialization);
        }
        let q4 = q0 * q0 * q0 * q0;
        if q4.is_one() {
            return Err(CoeffError::BadSpecialization);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(CoeffError::PoleAtPoint);
        }
        Ok(self.num.eval(q0) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduced(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g), rhs.den.div_exact(&g))
        };
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        let den = self.den.mul(&db);
        RatFunc::reduced(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cross-reduce before multiplying to keep intermediates small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (na, db) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (nb, da) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RatFunc::reduced(na.mul(&nb), da.mul(&db))
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] for a checked route.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero in Q(q)")
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for RatFunc {
    /// `num/(den)` with the numerator parenthesized when it has several terms;
    /// the `/(den)` part is omitted for denominator 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = self.num.iter_terms().count() > 1;
        if self.den.is_one() {
            if multi {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else if multi {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn make_canonicalizes() {
        // (q^2-1)/q is q - q^-1 in canonical form
        let r = RatFunc::new(ip(&[-1, 0, 1]), ip(&[0, 1])).unwrap();
        assert_eq!(r, RatFunc::q_minus_qinv());
        // 2q^2/4q reduces to q/2
        let r = RatFunc::new(ip(&[0, 0, 2]), ip(&[0, 4])).unwrap();
        assert_eq!(r, RatFunc::new(ip(&[0, 1]), ip(&[2])).unwrap());
        // zero normalizes to 0/1
        let r = RatFunc::new(IntPoly::zero(), ip(&[0, 0, 0, 1])).unwrap();
        assert!(r.is_zero());
        assert!(r.denominator().is_one());
    }

    #[test]
    fn make_scale_invariant() {
        let p = ip(&[1, 2]);
        let r = ip(&[3, 0, 1]);
        let s = ip(&[-2, 5]);
        let a = RatFunc::new(p.clone(), r.clone()).unwrap();
        let b = RatFunc::new(p.mul(&s), r.mul(&s)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(ip(&[1]), IntPoly::zero()),
            Err(CoeffError::ZeroDenominator)
        );
    }

    #[test]
    fn add_mul_examples() {
        // q + q^-1 = (q^2+1)/q
        let s = &RatFunc::q() + &RatFunc::q_pow(-1);
        assert_eq!(s, RatFunc::new(ip(&[1, 0, 1]), ip(&[0, 1])).unwrap());
        // (q-q^-1)(q+q^-1) = q^2 - q^-2
        let p = &RatFunc::q_minus_qinv() * &s;
        assert_eq!(p, &RatFunc::q_pow(2) - &RatFunc::q_pow(-2));
        // x + (-x) = 0
        let x = RatFunc::new(ip(&[1, 7]), ip(&[3, 0, 2])).unwrap();
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn inv_examples() {
        assert_eq!(RatFunc::q().inv().unwrap(), RatFunc::q_pow(-1));
        // (q-q^-1)^-1 = q/(q^2-1)
        assert_eq!(
            RatFunc::q_minus_qinv().inv().unwrap(),
            RatFunc::new(ip(&[0, 1]), ip(&[-1, 0, 1])).unwrap()
        );
        assert_eq!(RatFunc::zero().inv(), Err(CoeffError::DivisionByZero));
        let x = RatFunc::new(ip(&[2, -3, 1]), ip(&[0, 5])).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn eval_examples() {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        // (q - q^-1)(2) = 3/2
        assert_eq!(
            RatFunc::q_minus_qinv().eval(&two).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        // q^4 = 1 points are rejected
        assert_eq!(
            RatFunc::q_minus_qinv()
                .inv()
                .unwrap()
                .eval(&BigRational::one()),
            Err(CoeffError::BadSpecialization)
        );
        assert_eq!(
            RatFunc::q().eval(&BigRational::zero()),
            Err(CoeffError::BadSpecialization)
        );
        // ((q^2+1)/q)(3) = 10/3
        let r = RatFunc::new(ip(&[1, 0, 1]), ip(&[0, 1])).unwrap();
        assert_eq!(r.eval(&three).unwrap(), BigRational::new(10.into(), 3.into()));
        // pole detection
        let pole = RatFunc::new(ip(&[1]), ip(&[-2, 1])).unwrap();
        assert_eq!(pole.eval(&two), Err(CoeffError::PoleAtPoint));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFunc::q_minus_qinv().to_string(), "(q^2-1)/(q)");
        assert_eq!(RatFunc::q().to_string(), "q");
        assert_eq!(RatFunc::from_int(-2).to_string(), "-2");
        assert_eq!(
            RatFunc::q_minus_qinv().inv().unwrap().to_string(),
            "q/(q^2-1)"
        );
        assert_eq!(RatFunc::zero().to_string(), "0");
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        let small_poly = proptest::collection::vec(-4i64..=4, 0..4);
        (small_poly.clone(), small_poly).prop_filter_map("nonzero denominator", |(n, d)| {
            let den = IntPoly::new(d.into_iter().map(BigInt::from).collect());
            if den.is_zero() {
                return None;
            }
            Some(RatFunc::new(IntPoly::new(n.into_iter().map(BigInt::from).collect()), den).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_idempotent(a in arb_ratfunc()) {
            let again = RatFunc::new(a.numerator().clone(), a.denominator().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn eval_is_homomorphic(a in arb_ratfunc(), b in arb_ratfunc()) {
            let q0 = BigRational::new(5.into(), 2.into());
            if let (Ok(ea), Ok(eb)) = (a.eval(&q0), b.eval(&q0)) {
                if let Ok(es) = (&a + &b).eval(&q0) {
                    prop_assert_eq!(es, &ea + &eb);
                }
                if let Ok(ep) = (&a * &b).eval(&q0) {
                    prop_assert_eq!(ep, &ea * &eb);
                }
            }
        }
    }
}
