use super::{PolyError, Polynomial};

/// Yun's squarefree decomposition over the integers.
///
/// Returns `(g_k, k)` pairs, ascending in `k`, with each `g_k` primitive,
/// squarefree, nonconstant and pairwise coprime, such that
/// `p = content * prod g_k^k`. Every root of `g_k` has multiplicity exactly `k`.
pub fn squarefree_decompose(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let f = p.primitive_part();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(parts);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            parts.push((a.clone(), k));
        }
        let next_b = b.exact_div(&a).expect("a divides b");
        let c = d.exact_div(&a).expect("a divides d");
        d = &c - &next_b.derivative();
        b = next_b;
        k += 1;
    }
    Ok(parts)
}
