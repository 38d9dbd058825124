use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::{MultiIndex, Series};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// Basis element `e^α_i = x^α ∂/∂x_i`. Ordered by monomial, then target.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldKey {
    pub alpha: MultiIndex,
    pub target: usize,
}

impl FieldKey {
    pub fn new(alpha: MultiIndex, target: usize) -> Self {
        FieldKey { alpha, target }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }
}

/// Formal vector field `Σ c·x^α ∂/∂x_i` on ℂⁿ, exact up to `trusted`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalVectorField {
    dim: usize,
    trusted: usize,
    terms: BTreeMap<FieldKey, Gr>,
}

impl FormalVectorField {
    pub fn zero(dim: usize, trusted: usize) -> Self {
        FormalVectorField { dim, trusted, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(dim: usize, trusted: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, usize, Gr)>,
    {
        let mut f = FormalVectorField::zero(dim, trusted);
        for (a, i, c) in terms {
            f.add_term(a, i, &c);
        }
        f
    }

    /// `Σ v_i ∂/∂x_i`.
    pub fn constant(dim: usize, trusted: usize, v: &[Gr]) -> Self {
        assert_eq!(v.len(), dim);
        FormalVectorField::from_terms(
            dim,
            trusted,
            v.iter().enumerate().map(|(i, c)| (MultiIndex::zero(dim), i, c.clone())),
        )
    }

    /// `∂/∂x_i`.
    pub fn coordinate(dim: usize, trusted: usize, i: usize) -> Self {
        FormalVectorField::monomial(dim, trusted, MultiIndex::zero(dim), i, Gr::from_integer(1))
    }

    pub fn monomial(dim: usize, trusted: usize, alpha: MultiIndex, target: usize, c: Gr) -> Self {
        let mut f = FormalVectorField::zero(dim, trusted);
        f.add_term(alpha, target, &c);
        f
    }

    /// Linear field `Σ_ij M_ij x_j ∂/∂x_i`.
    pub fn linear(m: &Matrix, trusted: usize) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        let mut f = FormalVectorField::zero(n, trusted);
        for i in 0..n {
            for j in 0..n {
                f.add_term(MultiIndex::unit(n, j), i, &m[(i, j)]);
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trusted(&self) -> usize {
        self.trusted
    }

    pub fn terms(&self) -> &BTreeMap<FieldKey, Gr> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, usize, &Gr)> {
        self.terms.iter().map(|(k, c)| (&k.alpha, k.target, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex, target: usize) -> Gr {
        self.terms.get(&FieldKey::new(alpha.clone(), target)).cloned().unwrap_or_else(Gr::zero)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, target: usize, c: &Gr) {
        assert_eq!(alpha.len(), self.dim, "multi-index length mismatch");
        assert!(target < self.dim, "target index out of range");
        if c.is_zero() || alpha.degree() > self.trusted {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(FieldKey::new(alpha, target)) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn low_degree(&self) -> usize {
        self.terms.keys().next().map_or(self.trusted + 1, FieldKey::degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(FieldKey::degree).max()
    }

    pub fn truncate(&self, t: usize) -> Self {
        let trusted = self.trusted.min(t);
        FormalVectorField {
            dim: self.dim,
            trusted,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() <= trusted)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_trusted(mut self, t: usize) -> Self {
        self.trusted = t;
        self.terms.retain(|k, _| k.degree() <= t);
        self
    }

    pub fn degree_part(&self, k: usize) -> Self {
        FormalVectorField {
            dim: self.dim,
            trusted: self.trusted,
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.degree() == k)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.truncate(other.trusted);
        for (k, c) in &other.terms {
            out.add_term(k.alpha.clone(), k.target, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Gr::from_integer(-1)))
    }

    pub fn scale(&self, c: &Gr) -> Self {
        if c.is_zero() {
            return FormalVectorField::zero(self.dim, self.trusted);
        }
        FormalVectorField {
            dim: self.dim,
            trusted: self.trusted,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Coefficient functions: component `i` is the series multiplying `∂/∂x_i`.
    pub fn components(&self) -> Vec<Series> {
        let mut comps: Vec<Series> = (0..self.dim).map(|_| Series::zero(self.dim, self.trusted)).collect();
        for (k, c) in &self.terms {
            comps[k.target].add_term(k.alpha.clone(), c);
        }
        comps
    }

    pub fn from_components(comps: &[Series]) -> Self {
        let dim = comps.len();
        let trusted = comps.iter().map(Series::trusted).min().unwrap_or(0);
        let mut f = FormalVectorField::zero(dim, trusted);
        for (i, s) in comps.iter().enumerate() {
            assert_eq!(s.nvars(), dim);
            for (a, c) in s.terms() {
                f.add_term(a.clone(), i, c);
            }
        }
        f
    }

    /// Degree-0 part as a vector of `E`.
    pub fn constant_vector(&self) -> Vec<Gr> {
        let z = MultiIndex::zero(self.dim);
        (0..self.dim).map(|i| self.coeff(&z, i)).collect()
    }

    /// Degree-1 part as the matrix `M` with `(Mx)_i` the coefficient of `∂/∂x_i`.
    pub fn linear_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (k, c) in &self.terms {
            if k.degree() == 1 {
                let j = (0..self.dim).find(|&j| k.alpha.get(j) == 1).expect("degree one");
                m[(k.target, j)] = c.clone();
            }
        }
        m
    }

    /// First term, in canonical order, where the two fields differ on the
    /// degrees both trust.
    pub fn first_difference(&self, other: &Self) -> Option<(FieldKey, Gr, Gr)> {
        let t = self.trusted.min(other.trusted);
        let a = self.truncate(t);
        let b = other.truncate(t);
        let keys: std::collections::BTreeSet<&FieldKey> = a.terms.keys().chain(b.terms.keys()).collect();
        let diff = keys.into_iter().find_map(|k| {
            let x = a.terms.get(k).cloned().unwrap_or_else(Gr::zero);
            let y = b.terms.get(k).cloned().unwrap_or_else(Gr::zero);
            (x != y).then(|| (k.clone(), x, y))
        });
        diff
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.dim == other.dim && self.first_difference(other).is_none()
    }

    /// One term per line, `coeff * x1^a1 ... xn^an d/dx_i`, canonical order.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, c) in &self.terms {
            let _ = writeln!(s, "{} * {} d/dx{}", c, k.alpha, k.target + 1);
        }
        s
    }
}

fn check_dims(a: &FormalVectorField, b: &FormalVectorField) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!("fields on C^{} and C^{}", a.dim, b.dim)));
    }
    Ok(())
}

/// Trusted degree of `V ⋆ W` (and of `[V, W]`).
fn product_trust(v: &FormalVectorField, w: &FormalVectorField) -> usize {
    let a = (v.trusted + w.low_degree()).saturating_sub(1);
    let b = (w.trusted + v.low_degree()).saturating_sub(1);
    v.trusted.min(w.trusted).min(a).min(b)
}

fn star_into(out: &mut FormalVectorField, v: &FormalVectorField, w: &FormalVectorField, sign: &Gr) {
    let cap = out.trusted;
    for (kv, a) in &v.terms {
        let i = kv.target;
        for (kw, b) in &w.terms {
            let e = kw.alpha.get(i);
            if e == 0 {
                continue;
            }
            if kv.degree() + kw.degree() - 1 > cap {
                continue;
            }
            let alpha = kv.alpha.plus(&kw.alpha).minus_unit(i).expect("exponent positive");
            let c = &(a * b) * &(sign * &Gr::from_integer(e as i64));
            out.add_term(alpha, kw.target, &c);
        }
    }
}

/// `V ⋆ W`: on basis elements `e^α_i ⋆ e^β_j = β_i·e^{α+β−1_i}_j`, i.e. `V`
/// acting as a derivation on the coefficients of `W`.
pub fn star(v: &FormalVectorField, w: &FormalVectorField) -> Result<FormalVectorField> {
    check_dims(v, w)?;
    let mut out = FormalVectorField::zero(v.dim, product_trust(v, w));
    star_into(&mut out, v, w, &Gr::from_integer(1));
    Ok(out)
}

/// `[V, W] = V ⋆ W − W ⋆ V`.
pub fn bracket(v: &FormalVectorField, w: &FormalVectorField) -> Result<FormalVectorField> {
    check_dims(v, w)?;
    let mut out = FormalVectorField::zero(v.dim, product_trust(v, w));
    star_into(&mut out, v, w, &Gr::from_integer(1));
    star_into(&mut out, w, v, &Gr::from_integer(-1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Gr {
        Gr::from_integer(n)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn star_examples() {
        let dx = FormalVectorField::coordinate(1, 5, 0);
        let xdx = FormalVectorField::monomial(1, 5, mi(&[1]), 0, q(1));
        let s = star(&dx, &xdx).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.coeff(&mi(&[0]), 0), q(1));
        assert!(star(&xdx, &dx).unwrap().is_zero());
        assert!(star(&xdx, &FormalVectorField::zero(1, 5)).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let dx = FormalVectorField::coordinate(1, 5, 0);
        let xdx = FormalVectorField::monomial(1, 5, mi(&[1]), 0, q(1));
        let b = bracket(&xdx, &dx).unwrap();
        assert_eq!(b.coeff(&mi(&[0]), 0), q(-1));
        assert_eq!(b.terms().len(), 1);
        assert!(bracket(&xdx, &xdx).unwrap().is_zero());

        let x1d2 = FormalVectorField::monomial(2, 5, mi(&[1, 0]), 1, q(1));
        let x2d1 = FormalVectorField::monomial(2, 5, mi(&[0, 1]), 0, q(1));
        let b = bracket(&x1d2, &x2d1).unwrap();
        let expect = FormalVectorField::from_terms(2, 5, [(mi(&[1, 0]), 0, q(1)), (mi(&[0, 1]), 1, q(-1))]);
        assert!(b.agrees_with(&expect));
    }

    #[test]
    fn constant_terms_cost_one_trusted_degree() {
        let dx = FormalVectorField::coordinate(1, 6, 0);
        let v = FormalVectorField::monomial(1, 6, mi(&[3]), 0, q(1));
        assert_eq!(bracket(&v, &dx).unwrap().trusted(), 5);
        let w = FormalVectorField::monomial(1, 6, mi(&[1]), 0, q(1));
        assert_eq!(bracket(&v, &w).unwrap().trusted(), 6);
    }

    #[test]
    fn dimension_mismatch() {
        let a = FormalVectorField::zero(1, 3);
        let b = FormalVectorField::zero(2, 3);
        assert!(matches!(bracket(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn render_is_canonical() {
        let f = FormalVectorField::from_terms(
            2,
            3,
            [(mi(&[0, 2]), 0, q(1)), (mi(&[1, 0]), 0, q(-1)), (mi(&[0, 1]), 1, Gr::frac(-1, 2))],
        );
        assert_eq!(f.render(), "-1 * x1^1 x2^0 d/dx1\n-1/2 * x1^0 x2^1 d/dx2\n1 * x1^0 x2^2 d/dx1\n");
    }
}
