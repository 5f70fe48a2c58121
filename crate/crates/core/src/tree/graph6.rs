//! graph6: `N(n)` followed by the upper triangle of the adjacency matrix,
//! column by column, packed six bits per printable byte (value + 63).

use super::{Tree, TreeError};

const BIAS: u8 = 63;

fn encode_size(n: usize, out: &mut String) {
    if n < 63 {
        out.push((n as u8 + BIAS) as char);
    } else if n < 258_048 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
}

/// Encodes a graph on `0..n` exactly as labeled.
pub fn encode_graph6(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> String {
    let mut bits = vec![false; n * n.saturating_sub(1) / 2];
    for (u, v) in edges {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        bits[j * (j - 1) / 2 + i] = true;
    }
    let mut out = String::new();
    encode_size(n, &mut out);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + BIAS) as char);
    }
    out
}

/// Decodes any graph6 string into `(n, edges)`; an optional `>>graph6<<`
/// header and trailing whitespace are accepted.
pub fn parse_graph6_graph(s: &str) -> Result<(usize, Vec<(usize, usize)>), TreeError> {
    let s = s.trim_end();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let malformed = |msg: &str| TreeError::MalformedGraph6(msg.to_string());
    if let Some(&b) = bytes.iter().find(|&&b| !(BIAS..=126).contains(&b)) {
        return Err(TreeError::MalformedGraph6(format!("byte {b:#04x} outside 63..=126")));
    }
    let value = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    let (n, body) = match bytes {
        [] => return Err(malformed("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (value(&rest[..6]), &rest[6..]),
        [126, 126, ..] => return Err(malformed("truncated 8-byte size")),
        [126, rest @ ..] if rest.len() >= 3 => (value(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(malformed("truncated 4-byte size")),
        [first, rest @ ..] => ((first - BIAS) as usize, rest),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(TreeError::MalformedGraph6(format!(
            "{} data bytes for n = {n}, expected {expected}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

impl Tree {
    /// graph6 of the canonical labeling, so equal strings iff isomorphic.
    pub fn to_graph6(&self) -> String {
        let t = self.canonical_tree();
        encode_graph6(t.n(), t.edges())
    }

    /// graph6 of this tree's own labeling.
    pub fn to_graph6_labeled(&self) -> String {
        encode_graph6(self.n(), self.edges())
    }

    /// Parses a graph6 string whose graph must be a tree; the labeling is kept.
    pub fn from_graph6(s: &str) -> Result<Tree, TreeError> {
        let (n, edges) = parse_graph6_graph(s)?;
        Tree::from_edges(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    #[test]
    fn single_vertex() {
        assert_eq!(Tree::single().to_graph6(), "@");
        assert_eq!(Tree::from_graph6("@").unwrap(), Tree::single());
    }

    #[test]
    fn known_encodings() {
        // P_3 labeled 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000
        assert_eq!(Tree::path(3).to_graph6_labeled(), "Bg");
        // 5 vertices, 4 edges (networkx reference: "DQc" for this graph)
        let s = encode_graph6(5, [(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(s, "DQc");
    }

    #[test]
    fn round_trip_p3() {
        let t = Tree::from_graph6(&Tree::path(3).to_graph6()).unwrap();
        assert!(t.is_isomorphic(&Tree::path(3)));
    }

    #[test]
    fn four_cycle_rejected() {
        let c4 = encode_graph6(4, [(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(matches!(Tree::from_graph6(&c4), Err(TreeError::NotATree(_))));
        let forest = encode_graph6(4, [(0, 1), (2, 3)]);
        assert!(matches!(Tree::from_graph6(&forest), Err(TreeError::NotATree(_))));
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "C", "C~~~", "~", "~~??", "C\u{1}"] {
            assert!(
                matches!(Tree::from_graph6(bad), Err(TreeError::MalformedGraph6(_))),
                "{bad:?}"
            );
        }
        assert!(Tree::from_graph6(">>graph6<<Bg\n").is_ok());
    }

    #[test]
    fn large_size_prefix() {
        let t = Tree::path(70);
        let s = t.to_graph6_labeled();
        assert!(s.starts_with('~'));
        assert_eq!(Tree::from_graph6(&s).unwrap(), t);
    }

    #[test]
    fn enumerated_round_trip_preserves_class() {
        for n in 1..=10 {
            for t in enumerate_trees(n).unwrap() {
                let s = t.to_graph6();
                let back = Tree::from_graph6(&s).unwrap();
                assert!(back.is_isomorphic(&t));
                assert_eq!(back.to_graph6(), s);
            }
        }
    }
}
