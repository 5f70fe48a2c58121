use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::{cyclotomic, palindromic_descend, PolyError, Polynomial};

/// The algebraic number `2cos(i*pi/M)` for coprime `1 <= i < M`.
///
/// These are exactly the eigenvalues of paths. Equality and hashing use the
/// pair `(i, M)`; the minimal polynomial is computed once on construction.
#[derive(Clone)]
pub struct LambdaSpec {
    numerator: u64,
    denominator: u64,
    minimal_poly: Arc<Polynomial>,
    approx: f64,
}

impl LambdaSpec {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self, PolyError> {
        if numerator == 0 || numerator >= denominator || numerator.gcd(&denominator) != 1 {
            return Err(PolyError::InvalidSpec {
                i: numerator,
                m: denominator,
            });
        }
        let minimal_poly = cached_minimal_poly(numerator, denominator);
        let angle = numerator as f64 * std::f64::consts::PI / denominator as f64;
        Ok(LambdaSpec {
            numerator,
            denominator,
            minimal_poly,
            approx: 2.0 * angle.cos(),
        })
    }

    /// `i` in `2cos(i*pi/M)`.
    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    /// `M` in `2cos(i*pi/M)`; paths `P_n` carry this eigenvalue iff `M | n + 1`.
    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn minimal_poly(&self) -> &Polynomial {
        &self.minimal_poly
    }

    /// Floating-point value, for display only.
    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Key identifying the pair `(i, M)`.
    pub fn key(&self) -> (u64, u64) {
        (self.numerator, self.denominator)
    }
}

/// Conjugates share a minimal polynomial, keyed here by cyclotomic order.
fn cached_minimal_poly(i: u64, m: u64) -> Arc<Polynomial> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Polynomial>>>> = OnceLock::new();
    let order = if i % 2 == 1 { 2 * m } else { m };
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&order) {
        return Arc::clone(p);
    }
    let p = Arc::new(build_minimal_poly(i, m));
    cache
        .lock()
        .expect("cache lock")
        .entry(order)
        .or_insert(p)
        .clone()
}

fn build_minimal_poly(i: u64, m: u64) -> Polynomial {
    // i odd: lambda = z + 1/z for z a primitive 2M-th root of unity.
    // i even (so M odd): lambda = 2cos(2*pi*(i/2)/M), z a primitive M-th root.
    let order = if i % 2 == 1 { 2 * m } else { m } as usize;
    match order {
        1 => Polynomial::from_i64(&[-2, 1]),
        2 => Polynomial::from_i64(&[2, 1]),
        _ => palindromic_descend(&cyclotomic(order))
            .expect("cyclotomic polynomials of order >= 3 are palindromic of even degree"),
    }
}

/// Minimal polynomial of `2cos(i*pi/M)` over the rationals.
pub fn minimal_poly(lambda: &LambdaSpec) -> &Polynomial {
    lambda.minimal_poly()
}

/// Degree of the minimal polynomial of `2cos(i*pi/M)`, from the totient.
pub fn minimal_degree(numerator: u64, denominator: u64) -> usize {
    let phi = if numerator % 2 == 1 {
        totient(2 * denominator)
    } else {
        totient(denominator)
    };
    (phi / 2).max(1) as usize
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Every spec whose minimal polynomial has degree at most `max_degree`,
/// ordered by `(M, i)`. These are all the Chebyshev numbers that can be
/// eigenvalues of a tree on `max_degree` vertices.
pub fn lambda_specs_up_to_degree(max_degree: usize) -> Vec<LambdaSpec> {
    // phi(M) >= sqrt(M / 2), so degree <= d forces M <= 8 d^2.
    let bound = 8 * (max_degree as u64).pow(2) + 2;
    (2..=bound)
        .flat_map(|m| (1..m).map(move |i| (i, m)))
        .filter(|&(i, m)| i.gcd(&m) == 1 && minimal_degree(i, m) <= max_degree)
        .map(|(i, m)| LambdaSpec::new(i, m).expect("coprime and in range"))
        .collect()
}

/// Every valid spec with `2 <= M <= m_max`, ordered by `(M, i)`.
pub fn all_lambda_specs(m_max: u64) -> Vec<LambdaSpec> {
    (2..=m_max)
        .flat_map(|m| (1..m).filter_map(move |i| LambdaSpec::new(i, m).ok()))
        .collect()
}

impl PartialEq for LambdaSpec {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for LambdaSpec {}

impl Hash for LambdaSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for LambdaSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(M, i)`, the sweep ordering.
impl Ord for LambdaSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.denominator, self.numerator).cmp(&(other.denominator, other.numerator))
    }
}

impl fmt::Debug for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaSpec({}/{} ~ {:.6})", self.numerator, self.denominator, self.approx)
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for LambdaSpec {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || PolyError::SpecSyntax(s.to_string());
        let (i, m) = s.trim().split_once('/').ok_or_else(syntax)?;
        let i = i.trim().parse().map_err(|_| syntax())?;
        let m = m.trim().parse().map_err(|_| syntax())?;
        LambdaSpec::new(i, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    fn spec(i: u64, m: u64) -> LambdaSpec {
        LambdaSpec::new(i, m).unwrap()
    }

    fn totient(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(*minimal_poly(&spec(1, 2)), p(&[0, 1]));
        assert_eq!(*minimal_poly(&spec(1, 3)), p(&[-1, 1]));
        assert_eq!(*minimal_poly(&spec(2, 3)), p(&[1, 1]));
        assert_eq!(*minimal_poly(&spec(1, 4)), p(&[-2, 0, 1]));
        assert_eq!(*minimal_poly(&spec(1, 6)), p(&[-3, 0, 1]));
        // 2cos(pi/5) is the golden ratio: x^2 - x - 1.
        assert_eq!(*minimal_poly(&spec(1, 5)), p(&[-1, -1, 1]));
    }

    #[test]
    fn invalid_specs_rejected() {
        for (i, m) in [(0, 4), (4, 4), (5, 4), (2, 4), (3, 6), (1, 1)] {
            assert_eq!(
                LambdaSpec::new(i, m).unwrap_err(),
                PolyError::InvalidSpec { i, m }
            );
        }
    }

    #[test]
    fn parse_and_display() {
        let s: LambdaSpec = "3/8".parse().unwrap();
        assert_eq!(s.key(), (3, 8));
        assert_eq!(s.to_string(), "3/8");
        assert!(" 1 / 2 ".parse::<LambdaSpec>().is_ok());
        assert!(matches!("0.5".parse::<LambdaSpec>(), Err(PolyError::SpecSyntax(_))));
        assert!(matches!("2/4".parse::<LambdaSpec>(), Err(PolyError::InvalidSpec { .. })));
    }

    #[test]
    fn degree_matches_totient_formula() {
        for spec in all_lambda_specs(30) {
            let (i, m) = spec.key();
            let expected = if i % 2 == 1 { totient(2 * m) / 2 } else { totient(m) / 2 }.max(1);
            assert_eq!(spec.minimal_poly().degree(), Some(expected as usize), "{spec}");
            assert!(spec.minimal_poly().is_monic());
        }
    }

    #[test]
    fn minimal_poly_vanishes_at_value() {
        for spec in all_lambda_specs(30) {
            let v = spec.minimal_poly().eval_f64(spec.approx());
            assert!(v.abs() < 1e-9, "{spec}: {v}");
        }
    }

    #[test]
    fn minimal_poly_divides_path_charpoly() {
        for spec in all_lambda_specs(30) {
            let path = super::super::path_charpoly(spec.denominator() as usize - 1);
            assert!(path.divisible_by(spec.minimal_poly()), "{spec}");
        }
    }

    #[test]
    fn totient_based_degree_agrees() {
        for m in 2..200 {
            assert_eq!(super::totient(m), totient(m), "phi({m})");
        }
        for spec in all_lambda_specs(30) {
            let (i, m) = spec.key();
            assert_eq!(minimal_degree(i, m), spec.minimal_poly().degree().unwrap());
        }
    }

    #[test]
    fn degree_cover_is_complete() {
        let cover = lambda_specs_up_to_degree(4);
        assert!(cover.iter().all(|s| s.minimal_poly().degree().unwrap() <= 4));
        // sqrt(3) = 2cos(pi/6) and 2cos(pi/15) (degree 4) are both in.
        assert!(cover.iter().any(|s| s.key() == (1, 6)));
        assert!(cover.iter().any(|s| s.key() == (1, 15)));
        let max_m = cover.iter().map(LambdaSpec::denominator).max().unwrap();
        for m in max_m + 1..=400 {
            for i in (1..m).filter(|i| i.gcd(&m) == 1) {
                assert!(minimal_degree(i, m) > 4, "{i}/{m}");
            }
        }
    }

    #[test]
    fn specs_ordered_by_denominator() {
        let keys: Vec<_> = all_lambda_specs(6).iter().map(LambdaSpec::key).collect();
        assert_eq!(
            keys,
            vec![(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5), (1, 6), (5, 6)]
        );
    }
}
