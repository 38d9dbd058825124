use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `α ∈ ℕⁿ` of a monomial `x^α`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x1`, `x2`, ... from largest to smallest, so `x1²` precedes `x1·x2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn plus_unit(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// `α − 1_i`, or `None` when `α_i = 0`.
    pub fn minus_unit(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiIndex(v))
    }

    /// True when every nonzero exponent sits at a position in `range`.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.0.iter().enumerate().all(|(k, &e)| e == 0 || range.contains(&k))
    }

    /// All multi-indices of length `n` and total degree exactly `d`, in
    /// canonical order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(pos: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            let n = cur.len();
            if pos + 1 == n {
                cur[pos] = left as u32;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e as u32;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// Multi-indices over `n` coordinates of degree `d` supported only on
    /// the coordinates in `range`.
    pub fn all_supported(n: usize, range: std::ops::Range<usize>, d: usize) -> Vec<MultiIndex> {
        MultiIndex::all_of_degree(range.len(), d)
            .into_iter()
            .map(|sub| {
                let mut v = vec![0u32; n];
                for (k, e) in sub.0.into_iter().enumerate() {
                    v[range.start + k] = e;
                }
                MultiIndex(v)
            })
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    /// `x1^a1 x2^a2 ...`, all exponents shown.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}^{}", k + 1, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let mut v = [
            MultiIndex::new(vec![0, 2]),
            MultiIndex::new(vec![1, 0]),
            MultiIndex::new(vec![1, 1]),
            MultiIndex::new(vec![0, 0]),
            MultiIndex::new(vec![2, 0]),
            MultiIndex::new(vec![0, 1]),
        ];
        v.sort();
        let got: Vec<Vec<u32>> = v.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_of_degree(3, 2).len(), 6);
        assert_eq!(MultiIndex::all_of_degree(1, 4).len(), 1);
        let ys = MultiIndex::all_supported(3, 2..3, 3);
        assert_eq!(ys, vec![MultiIndex::new(vec![0, 0, 3])]);
        let sorted = {
            let mut s = MultiIndex::all_of_degree(3, 3);
            s.sort();
            s
        };
        assert_eq!(sorted, MultiIndex::all_of_degree(3, 3));
    }
}
