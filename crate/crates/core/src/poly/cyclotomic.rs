use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial};

/// Characteristic polynomial of the path on `n` vertices.
///
/// Uses `phi(P_n) = x * phi(P_{n-1}) - phi(P_{n-2})` with `phi(P_0) = 1`.
pub fn path_charpoly(n: usize) -> Polynomial {
    let x = Polynomial::x();
    let mut prev = Polynomial::one();
    let mut cur = x.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by every
/// `Phi_d` with `d` a proper divisor of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic(n: usize) -> Polynomial {
    assert!(n > 0, "cyclotomic index must be positive");
    let mut acc = Polynomial::monomial(BigInt::one(), n) - Polynomial::one();
    for d in proper_divisors(n) {
        acc = acc
            .exact_div(&cyclotomic(d))
            .expect("Phi_d divides x^n - 1 for d | n");
    }
    acc
}

/// For palindromic `P` of degree `2d`, returns `Q` of degree `d` with
/// `P(z) = z^d Q(z + 1/z)`.
///
/// With `y = z + 1/z`, each `z^k + z^-k` is `B_k(y)` where `B_0 = 2`,
/// `B_1 = y` and `B_k = y B_{k-1} - B_{k-2}`, so
/// `Q = a_d + sum_{k=1..d} a_{d+k} B_k`.
pub fn palindromic_descend(p: &Polynomial) -> Result<Polynomial, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let c = p.coeffs();
    if c.iter().ne(c.iter().rev()) {
        return Err(PolyError::NotPalindromic);
    }
    if deg % 2 == 1 {
        return Err(PolyError::OddDegree);
    }
    let d = deg / 2;
    let y = Polynomial::x();
    let mut q = Polynomial::constant(c[d].clone());
    let mut b_prev = Polynomial::constant(BigInt::from(2));
    let mut b_cur = y.clone();
    for k in 1..=d {
        if !c[d + k].is_zero() {
            q = &q + &b_cur.scale(&c[d + k]);
        }
        let next = &(&y * &b_cur) - &b_prev;
        b_prev = std::mem::replace(&mut b_cur, next);
    }
    Ok(q)
}
