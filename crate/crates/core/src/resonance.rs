//! Resonance forms, resonance sets, and the search for a resonance vector.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formal::MultiIndex;
use crate::lie::{Decomposition, LieAlgebra, LinearForm, SpectralData};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// `λ^α_j = Σ_i α_i λ_i − λ_j` with `λ = (μ, ν)` and `α` over all `n`
/// coordinates.
pub fn lambda_form(alpha: &MultiIndex, j: usize, spectral: &SpectralData) -> Result<LinearForm> {
    let lambdas = spectral.lambdas();
    let n = lambdas.len();
    if alpha.len() != n || j >= n {
        return Err(Error::IndexOutOfRange(format!(
            "multi-index of length {} and target {j} with {n} spectral forms",
            alpha.len()
        )));
    }
    let mut f = lambdas[j].scale(&-Gr::one());
    for (i, &e) in alpha.exponents().iter().enumerate() {
        if e > 0 {
            f = f.add(&lambdas[i].scale(&Gr::from_integer(e as i64)));
        }
    }
    Ok(f)
}

/// Lifts a multi-index over the `q` `y`-variables to all `n` coordinates.
pub fn lift_y(alpha: &MultiIndex, p: usize) -> MultiIndex {
    let mut v = vec![0u32; p];
    v.extend_from_slice(alpha.exponents());
    MultiIndex::new(v)
}

/// A resonant pair `(α, i)`; `target` indexes the `x`-block for type one and
/// the `y`-block for type two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantPair {
    pub alpha: MultiIndex,
    pub target: usize,
    pub form: LinearForm,
    pub root: LinearForm,
}

impl fmt::Display for ResonantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} | {} | {} | {})", self.alpha, self.target + 1, self.form, self.root)
    }
}

/// Resonant pairs with `1 ≤ |α| ≤ degree`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResonanceSet {
    pub degree: usize,
    /// `Σ α_j ν_j − μ_i` is a root.
    pub r: Vec<ResonantPair>,
    /// `Σ α_j ν_j − ν_i` is a root.
    pub r_prime: Vec<ResonantPair>,
    /// `Σ α_j ν_j − μ_i = 0`.
    pub r0: Vec<ResonantPair>,
    /// `Σ α_j ν_j − ν_i = 0`.
    pub r0_prime: Vec<ResonantPair>,
}

impl ResonanceSet {
    pub fn contains_r(&self, alpha: &MultiIndex, target: usize) -> bool {
        self.r.iter().any(|c| &c.alpha == alpha && c.target == target)
    }

    pub fn contains_r_prime(&self, alpha: &MultiIndex, target: usize) -> bool {
        self.r_prime.iter().any(|c| &c.alpha == alpha && c.target == target)
    }
}

/// Enumerates `α` over the `y`-variables with `1 ≤ |α| ≤ degree` and every
/// target, testing the resonance forms against the roots exactly.
pub fn resonance_sets(spectral: &SpectralData, degree: usize) -> ResonanceSet {
    let (p, q) = (spectral.p, spectral.q);
    let n = p + q;
    let mut out = ResonanceSet { degree, ..Default::default() };
    if spectral.roots.is_empty() {
        return out;
    }
    for k in 1..=degree {
        for alpha in MultiIndex::all_of_degree(q, k) {
            let full = lift_y(&alpha, p);
            for j in 0..n {
                let form = lambda_form(&full, j, spectral).expect("indices in range");
                let (target, sets) =
                    if j < p { (j, (&mut out.r, &mut out.r0)) } else { (j - p, (&mut out.r_prime, &mut out.r0_prime)) };
                if let Some(root) = spectral.roots.iter().find(|r| **r == form) {
                    let pair = ResonantPair { alpha: alpha.clone(), target, form: form.clone(), root: root.clone() };
                    if form.is_zero() {
                        sets.1.push(pair.clone());
                    }
                    sets.0.push(pair);
                }
            }
        }
    }
    out
}

/// Basis of the centralizer of `𝔰` in `𝔯`, as coefficient vectors over the
/// `𝔯` basis.
pub fn centralizer_basis(g: &LieAlgebra, d: &Decomposition) -> Vec<Vec<Gr>> {
    let m = d.r.len();
    if m == 0 {
        return Vec::new();
    }
    let dim = g.dim();
    let mut rows = Vec::new();
    for &s in &d.s {
        for e in 0..dim {
            rows.push(d.r.iter().map(|&r| g.structure_constant(r, s, e).clone()).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return (0..m)
            .map(|k| {
                let mut v = vec![Gr::zero(); m];
                v[k] = Gr::one();
                v
            })
            .collect();
    }
    Matrix::from_rows(rows).kernel()
}

/// Nonzero forms `λ^α_j − v` over `y`-only `α` with `1 ≤ |α| ≤ degree`, all
/// targets `j`, all roots `v`; a resonance vector must not annihilate any.
fn difference_forms(spectral: &SpectralData, degree: usize) -> Vec<LinearForm> {
    let (p, q) = (spectral.p, spectral.q);
    let mut out: Vec<LinearForm> = Vec::new();
    for k in 1..=degree {
        for alpha in MultiIndex::all_of_degree(q, k) {
            let full = lift_y(&alpha, p);
            for j in 0..p + q {
                let form = lambda_form(&full, j, spectral).expect("indices in range");
                for root in &spectral.roots {
                    let diff = form.sub(root);
                    if !diff.is_zero() && !out.contains(&diff) {
                        out.push(diff);
                    }
                }
            }
        }
    }
    out
}

/// Witness of the first coincidence `λ^α_j(X₀) = v(X₀)` with `λ^α_j ≠ v`, or
/// `None` when `x0` is a resonance vector up to `degree`.
pub fn resonance_vector_violation(spectral: &SpectralData, x0: &[Gr], degree: usize) -> Option<String> {
    let (p, q) = (spectral.p, spectral.q);
    for k in 1..=degree {
        for alpha in MultiIndex::all_of_degree(q, k) {
            let full = lift_y(&alpha, p);
            for j in 0..p + q {
                let form = lambda_form(&full, j, spectral).expect("indices in range");
                for root in &spectral.roots {
                    let diff = form.sub(root);
                    if !diff.is_zero() && diff.eval(x0).is_zero() {
                        return Some(format!(
                            "alpha {:?}, target {}: form {} meets root {} at X0",
                            alpha.exponents(),
                            j + 1,
                            form,
                            root
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Coordinate order for enumeration: `0, 1, −1, 2, −2, …`.
fn signed_order(b: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=b {
        v.push(k);
        v.push(-k);
    }
    v
}

/// Searches integer combinations of the centralizer basis in growing boxes
/// `max |t_i| = b`, `b = 1..=max_box`, lexicographically, and returns the
/// first certified resonance vector as coordinates over the `𝔯` basis.
pub fn find_resonance_vector(
    g: &LieAlgebra,
    d: &Decomposition,
    spectral: &SpectralData,
    degree: usize,
    max_box: usize,
) -> Result<Vec<Gr>> {
    if d.r.is_empty() {
        return Err(Error::SearchExhausted("the radical is zero; there is nothing to normalize".into()));
    }
    let z = centralizer_basis(g, d);
    if z.is_empty() {
        return Err(Error::SearchExhausted("the centralizer of s in r is zero".into()));
    }
    let diffs = difference_forms(spectral, degree);
    let m = z.len();
    let rdim = d.r.len();
    for b in 1..=max_box as i64 {
        let order = signed_order(b);
        let mut idx = vec![0usize; m];
        loop {
            let t: Vec<i64> = idx.iter().map(|&i| order[i]).collect();
            if t.iter().any(|v| v.abs() == b) {
                let mut x0 = vec![Gr::zero(); rdim];
                for (tk, zk) in t.iter().zip(&z) {
                    let c = Gr::from_integer(*tk);
                    for (xi, zi) in x0.iter_mut().zip(zk) {
                        *xi += &(&c * zi);
                    }
                }
                if diffs.iter().all(|f| !f.eval(&x0).is_zero()) {
                    debug_assert!(resonance_vector_violation(spectral, &x0, degree).is_none());
                    return Ok(x0);
                }
            }
            // odometer, last coordinate fastest
            let mut pos = m;
            let done = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < order.len() {
                    break false;
                }
                idx[pos] = 0;
            };
            if done {
                break;
            }
        }
    }
    Err(Error::SearchExhausted(format!("no resonance vector with integer coordinates up to {max_box}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Gr {
        Gr::frac(n, d)
    }

    fn form(v: &[(i64, i64)]) -> LinearForm {
        LinearForm(v.iter().map(|&(a, b)| q(a, b)).collect())
    }

    fn aff1_spectral() -> SpectralData {
        SpectralData {
            p: 1,
            q: 1,
            change: Matrix::identity(2),
            mu: vec![form(&[(-1, 1)])],
            nu: vec![form(&[(-1, 2)])],
            roots: vec![form(&[(0, 1)]), form(&[(1, 1)])],
        }
    }

    fn aff1_algebra() -> (LieAlgebra, Decomposition) {
        let mut g = LieAlgebra::from_names(&["X0", "X1"]);
        g.set_bracket(0, 1, &[(1, q(1, 1))]);
        (g, Decomposition { m: vec![1], g0: vec![0], r: vec![0], s: vec![] })
    }

    #[test]
    fn lambda_examples() {
        let s = aff1_spectral();
        assert_eq!(lambda_form(&MultiIndex::new(vec![0, 2]), 0, &s).unwrap(), form(&[(0, 1)]));
        assert_eq!(lambda_form(&MultiIndex::new(vec![0, 3]), 0, &s).unwrap(), form(&[(-1, 2)]));
        for j in 0..2 {
            assert!(lambda_form(&MultiIndex::unit(2, j), j, &s).unwrap().is_zero());
        }
        assert!(lambda_form(&MultiIndex::new(vec![1]), 0, &s).is_err());
    }

    #[test]
    fn aff1_resonance_sets() {
        let sets = resonance_sets(&aff1_spectral(), 3);
        let r: Vec<(Vec<u32>, usize)> = sets.r.iter().map(|c| (c.alpha.exponents().to_vec(), c.target)).collect();
        let rp: Vec<(Vec<u32>, usize)> =
            sets.r_prime.iter().map(|c| (c.alpha.exponents().to_vec(), c.target)).collect();
        assert_eq!(r, vec![(vec![2], 0)]);
        assert_eq!(rp, vec![(vec![1], 0)]);
        assert_eq!(sets.r0.len(), 1);
        assert_eq!(sets.r0_prime.len(), 1);
    }

    #[test]
    fn zero_spectra_make_everything_resonant() {
        let s = SpectralData {
            p: 1,
            q: 2,
            change: Matrix::identity(3),
            mu: vec![form(&[(0, 1)])],
            nu: vec![form(&[(0, 1)]), form(&[(0, 1)])],
            roots: vec![form(&[(0, 1)])],
        };
        let sets = resonance_sets(&s, 3);
        let count: usize = (1..=3).map(|k| MultiIndex::all_of_degree(2, k).len()).sum();
        assert_eq!(sets.r.len(), count);
        assert_eq!(sets.r_prime.len(), 2 * count);
    }

    #[test]
    fn no_y_variables_means_empty_sets() {
        let s = SpectralData {
            p: 1,
            q: 0,
            change: Matrix::identity(1),
            mu: vec![form(&[(-1, 1)])],
            nu: vec![],
            roots: vec![form(&[(0, 1)])],
        };
        let sets = resonance_sets(&s, 4);
        assert!(sets.r.is_empty() && sets.r_prime.is_empty());
    }

    #[test]
    fn aff1_resonance_vector_is_the_generator() {
        let (g, d) = aff1_algebra();
        let x0 = find_resonance_vector(&g, &d, &aff1_spectral(), 6, 16).unwrap();
        assert_eq!(x0, vec![q(1, 1)]);
    }

    #[test]
    fn abelian_two_dim_search_avoids_coincidences() {
        let mut g = LieAlgebra::from_names(&["D1", "D2"]);
        g.set_bracket(0, 1, &[]);
        let d = Decomposition { m: vec![], g0: vec![0, 1], r: vec![0, 1], s: vec![] };
        let s = SpectralData {
            p: 1,
            q: 1,
            change: Matrix::identity(2),
            mu: vec![form(&[(1, 1), (0, 1)])],
            nu: vec![form(&[(0, 1), (1, 1)])],
            roots: vec![form(&[(0, 1), (0, 1)])],
        };
        let x0 = find_resonance_vector(&g, &d, &s, 4, 16).unwrap();
        assert!(resonance_vector_violation(&s, &x0, 4).is_none());
        // y∂x at (1, 1): ν − μ vanishes there but is not a root
        assert!(resonance_vector_violation(&s, &[q(1, 1), q(1, 1)], 4).is_some());
        assert!(resonance_vector_violation(&s, &[q(1, 1), q(0, 1)], 4).is_some());
        assert_eq!(x0, vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn scaling_preserves_resonance_vectors() {
        let s = aff1_spectral();
        for c in [q(3, 1), q(-2, 7), q(5, 3)] {
            assert!(resonance_vector_violation(&s, &[c], 6).is_none());
        }
        assert!(resonance_vector_violation(&s, &[q(0, 1)], 6).is_some());
    }

    #[test]
    fn empty_radical_is_reported() {
        let g = LieAlgebra::from_names(&["P"]);
        let d = Decomposition { m: vec![0], ..Default::default() };
        let s = SpectralData { p: 1, q: 0, change: Matrix::identity(1), mu: vec![], nu: vec![], roots: vec![] };
        assert!(matches!(find_resonance_vector(&g, &d, &s, 3, 4), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn perturbing_nu_changes_the_sets() {
        let a = resonance_sets(&aff1_spectral(), 4);
        let mut s = aff1_spectral();
        s.nu[0] = form(&[(-1, 3)]);
        assert_ne!(resonance_sets(&s, 4), a);
    }
}
