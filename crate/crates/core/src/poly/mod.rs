//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Everything that decides a multiplicity goes through this module, so all
//! arithmetic here is exact. Rationals never appear: division is either exact
//! (`exact_div`) or fraction-free (`pseudo_rem`).

mod cyclotomic;
mod lambda;
mod squarefree;

pub use cyclotomic::{cyclotomic, palindromic_descend, path_charpoly};
pub use lambda::{
    all_lambda_specs, lambda_specs_up_to_degree, minimal_degree, minimal_poly, LambdaSpec,
};
pub use squarefree::squarefree_decompose;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The divisor does not divide the dividend over the integers. Callers use
    /// this as a divisibility test, so it is not necessarily a failure.
    #[error("polynomial is not divisible by the given divisor")]
    NonDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not palindromic")]
    NotPalindromic,
    #[error("palindromic polynomial has odd degree")]
    OddDegree,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid eigenvalue spec {i}/{m}: need 1 <= i < M and gcd(i, M) = 1")]
    InvalidSpec { i: u64, m: u64 },
    #[error("cannot parse eigenvalue spec {0:?}; expected \"i/M\"")]
    SpecSyntax(String),
}

/// Integer polynomial stored densely in ascending degree order.
///
/// The zero polynomial has no coefficients; every other value has a nonzero
/// leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Quotient of an exact division over the integers.
    ///
    /// Returns [`PolyError::NonDivisible`] when some quotient coefficient is not
    /// an integer or the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Err(PolyError::NonDivisible);
        }
        let monic = lead.is_one();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = if monic {
                top.clone()
            } else {
                let (q, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Err(PolyError::NonDivisible);
                }
                q
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NonDivisible);
        }
        Ok(Polynomial::from_coeffs(quot))
    }

    /// Whether `divisor` divides `self` over the integers.
    pub fn divisible_by(&self, divisor: &Polynomial) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Remainder of `lc(d)^(deg a - deg d + 1) * a` divided by `d`.
    pub fn pseudo_rem(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.pop().expect("nonempty");
            let shift = rem.len() - dd;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[shift + j] -= &top * d;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok(Polynomial::from_coeffs(rem))
    }

    /// Primitive gcd with positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Largest `k` with `divisor^k | self`. The zero polynomial reports 0.
    pub fn multiplicity_of(&self, divisor: &Polynomial) -> usize {
        if self.is_zero() || divisor.is_constant() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(q) = cur.exact_div(divisor) {
            k += 1;
            cur = q;
        }
        k
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Compensated Horner evaluation (error-free transforms), accurate to
    /// roughly twice working precision. Plain Horner loses everything to
    /// cancellation on path polynomials past n ~ 25.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut s = 0.0f64;
        let mut err = 0.0f64;
        for c in self.coeffs.iter().rev() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let p = s * x;
            let pe = s.mul_add(x, -p);
            let t = p + c;
            let z = t - p;
            let te = (p - (t - z)) + (c - z);
            s = t;
            err = err * x + (pe + te);
        }
        s + err
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Orders by degree first, then coefficients from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
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
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn normalization_trims_zeros() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn multiply_monomials() {
        assert_eq!(&Polynomial::x() * &Polynomial::x(), p(&[0, 0, 1]));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])), Ok(p(&[1, 1])));
        let q = p(&[0, -2, 0, 1]).exact_div(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(q, Polynomial::x());
        assert_eq!(&q * &p(&[-2, 0, 1]), p(&[0, -2, 0, 1]));
    }

    #[test]
    fn exact_div_reports_non_divisible() {
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[-1, 1])),
            Err(PolyError::NonDivisible)
        );
        // 2x + 1 over 2: leading coefficient divides, constant does not.
        assert_eq!(p(&[1, 2]).exact_div(&p(&[2])), Err(PolyError::NonDivisible));
        assert_eq!(
            p(&[1, 2]).exact_div(&Polynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
        assert_eq!(p(&[1]).exact_div(&p(&[0, 1])), Err(PolyError::NonDivisible));
    }

    #[test]
    fn gcd_is_primitive() {
        // (x - 1)(2x + 3) and (x - 1)(x + 5)
        let a = &p(&[-1, 1]) * &p(&[3, 2]);
        let b = (&p(&[-1, 1]) * &p(&[5, 1])).scale(&BigInt::from(6));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.gcd(&Polynomial::zero()), a.primitive_part());
    }

    #[test]
    fn multiplicity_counts_powers() {
        let f = &p(&[-2, 0, 1]).pow(3) * &p(&[1, 1]);
        assert_eq!(f.multiplicity_of(&p(&[-2, 0, 1])), 3);
        assert_eq!(f.multiplicity_of(&p(&[0, 1])), 0);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(p(&[0, -2, 0, 1]).to_string(), "x^3 - 2x");
        assert_eq!(p(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|c| Polynomial::from_i64(&c))
    }

    proptest! {
        #[test]
        fn exact_div_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b), Ok(a));
        }

        #[test]
        fn ring_identities(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(-(-a.clone()), a);
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), g in small_poly()) {
            let x = &a * &g;
            let y = &b * &g;
            let d = x.gcd(&y);
            if !d.is_zero() {
                prop_assert!(x.divisible_by(&d));
                prop_assert!(y.divisible_by(&d));
                if !g.is_zero() {
                    prop_assert!(d.divisible_by(&g.primitive_part()));
                }
            }
        }
    }
}
