//! Nullity of `A(T) - lambda I` over the number field `Q(lambda)`.
//!
//! Elements of `Z[x]/(mu)` are dense coefficient vectors of length `deg mu`
//! (empty means zero). `mu` is monic and irreducible, so the ring is an
//! integral domain and cross-multiplying rows never changes the rank. Rows
//! are kept primitive by dividing out their integer content after each update.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::LambdaSpec;
use crate::tree::Tree;

type Elem = Vec<BigInt>;

struct Residues<'a> {
    /// Low coefficients of the monic modulus: `x^d = -sum low[k] x^k`.
    low: &'a [BigInt],
}

impl Residues<'_> {
    fn degree(&self) -> usize {
        self.low.len()
    }

    fn elem_from_coeffs(&self, coeffs: &[BigInt]) -> Elem {
        let d = self.degree();
        let mut buf = coeffs.to_vec();
        self.reduce(&mut buf);
        buf.resize(d, BigInt::zero());
        normalize(buf)
    }

    fn reduce(&self, buf: &mut Vec<BigInt>) {
        let d = self.degree();
        while buf.len() > d {
            let top = buf.pop().expect("longer than d");
            if top.is_zero() {
                continue;
            }
            let base = buf.len() - d;
            for (k, m) in self.low.iter().enumerate() {
                if !m.is_zero() {
                    buf[base + k] -= &top * m;
                }
            }
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![BigInt::zero(); 2 * self.degree() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(&mut prod);
        normalize(prod)
    }
}

fn normalize(e: Elem) -> Elem {
    if e.iter().all(Zero::is_zero) {
        Vec::new()
    } else {
        e
    }
}

fn sub(a: Elem, b: &Elem) -> Elem {
    if b.is_empty() {
        return a;
    }
    if a.is_empty() {
        return b.iter().map(|c| -c).collect();
    }
    normalize(a.into_iter().zip(b).map(|(x, y)| x - y).collect())
}

fn make_primitive(row: &mut [Elem]) {
    let mut g = BigInt::zero();
    for c in row.iter().flatten() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in row.iter_mut().flatten() {
        *c /= &g;
    }
}

/// `n - rank(A(T) - lambda I)` computed by fraction-free elimination in
/// `Z[x]/(mu)`. Rows and columns follow a post-order from vertex 0 (leaves
/// before parents), which gives zero fill-in on trees; the pivot for each
/// column is the first remaining row with a nonzero entry there.
pub fn multiplicity_via_rank(t: &Tree, lambda: &LambdaSpec) -> usize {
    let mu = lambda.minimal_poly();
    let ring = Residues {
        low: &mu.coeffs()[..mu.coeffs().len() - 1],
    };
    let n = t.n();
    let (mut order, _) = t.rooted_order(0);
    order.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let one = ring.elem_from_coeffs(&[BigInt::one()]);
    let minus_x = ring.elem_from_coeffs(&[BigInt::zero(), -BigInt::one()]);
    let mut m: Vec<Vec<Elem>> = vec![vec![Vec::new(); n]; n];
    for (r, &v) in order.iter().enumerate() {
        m[r][r] = minus_x.clone();
        for &w in t.neighbors(v) {
            m[r][pos[w]] = one.clone();
        }
    }

    let mut used = vec![false; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (0..n).find(|&r| !used[r] && !m[r][col].is_empty()) else {
            continue;
        };
        used[pr] = true;
        rank += 1;
        let pivot_row = std::mem::take(&mut m[pr]);
        let pivot = &pivot_row[col];
        for r in 0..n {
            if used[r] || m[r][col].is_empty() {
                continue;
            }
            let factor = std::mem::take(&mut m[r][col]);
            for c in col + 1..n {
                let scaled = ring.mul(pivot, &m[r][c]);
                let cross = ring.mul(&factor, &pivot_row[c]);
                m[r][c] = sub(scaled, &cross);
            }
            make_primitive(&mut m[r][col + 1..]);
        }
        m[pr] = pivot_row;
    }
    n - rank
}
