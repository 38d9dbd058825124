//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use lie_normal_form::formal::{pushforward, FormalMap, FormalVectorField, MultiIndex, Series};
use lie_normal_form::lie::{Decomposition, LieAlgebra, LieProblem, NonlinearRep};
use lie_normal_form::linalg::Matrix;
use lie_normal_form::GaussianRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Gr = GaussianRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Gr {
    Gr::frac(n, d)
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

/// Rational with numerator and denominator bounded by 9, sometimes with an
/// imaginary part.
pub fn scalar(r: &mut impl Rng) -> Gr {
    let re = q(r.gen_range(-9..=9), r.gen_range(1..=9));
    if r.gen_bool(0.25) {
        &re + &(&Gr::i() * &q(r.gen_range(-9..=9), r.gen_range(1..=9)))
    } else {
        re
    }
}

pub fn nonzero_scalar(r: &mut impl Rng) -> Gr {
    loop {
        let c = scalar(r);
        if c != Gr::from_integer(0) {
            return c;
        }
    }
}

pub fn random_alpha(r: &mut impl Rng, n: usize, degree: usize) -> MultiIndex {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[r.gen_range(0..n)] += 1;
    }
    MultiIndex::new(e)
}

/// Sparse field on ℂⁿ with at most `max_terms` terms of degree `≤ max_degree`.
pub fn random_field(r: &mut impl Rng, n: usize, max_degree: usize, max_terms: usize) -> FormalVectorField {
    let count = r.gen_range(1..=max_terms);
    let mut f = FormalVectorField::zero(n, max_degree);
    for _ in 0..count {
        let d = r.gen_range(0..=max_degree);
        let a = random_alpha(r, n, d);
        let i = r.gen_range(0..n);
        f.add_term(a, i, &scalar(r));
    }
    f
}

/// Invertible integer matrix with small entries.
pub fn random_invertible(r: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Gr>> =
            (0..n).map(|_| (0..n).map(|_| Gr::from_integer(r.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if m.determinant() != Gr::from_integer(0) {
            return m;
        }
    }
}

/// Map with the given linear part plus a few random terms of degree
/// `2..=degree`.
pub fn random_map_with_linear(r: &mut impl Rng, lin: &Matrix, degree: usize, terms: usize) -> FormalMap {
    let n = lin.rows();
    let comps = (0..n)
        .map(|i| {
            let mut s = Series::from_terms(n, degree, (0..n).map(|j| (MultiIndex::unit(n, j), lin[(i, j)].clone())));
            for _ in 0..r.gen_range(0..=terms) {
                let d = r.gen_range(2..=degree.max(2));
                s.add_term(random_alpha(r, n, d), &scalar(r));
            }
            s.truncate(degree)
        })
        .collect();
    FormalMap::from_components(comps).unwrap()
}

pub fn random_invertible_map(r: &mut impl Rng, n: usize, degree: usize) -> FormalMap {
    let lin = random_invertible(r, n);
    random_map_with_linear(r, &lin, degree, 4)
}

/// `V ⋆ W` computed by differentiating the coefficient functions of `W`
/// along `V`, with no use of the basis rule.
pub fn star_oracle(v: &FormalVectorField, w: &FormalVectorField) -> Vec<Series> {
    let vc = exact_components(v);
    exact_components(w)
        .iter()
        .map(|wj| {
            let mut acc = Series::zero(v.dim(), EXACT);
            for (i, vi) in vc.iter().enumerate() {
                acc = acc.add(&vi.mul(&wj.derivative(i)));
            }
            acc
        })
        .collect()
}

/// Trust used for polynomials known exactly; far above any degree reached.
pub const EXACT: usize = 64;

/// The field's coefficient functions as exact polynomials.
pub fn exact_components(f: &FormalVectorField) -> Vec<Series> {
    f.components().into_iter().map(|s| s.with_trusted(EXACT)).collect()
}

/// True when every coefficient of degree `≤ t` agrees.
pub fn series_agree_to(a: &[Series], b: &[Series], t: usize) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            let low = |s: &Series| {
                s.terms()
                    .iter()
                    .filter(|(k, _)| k.degree() <= t)
                    .map(|(k, c)| (k.clone(), c.clone()))
                    .collect::<Vec<_>>()
            };
            low(x) == low(y)
        })
}

/// The affine group of the line acting on ℂ² with `μ = −1` and `ν` given:
/// `T_{X0} = −x∂x + ν y∂y + Σ a_k y^k ∂x + Σ b_k y^k ∂y`, `T_{X1} = ∂x`.
pub fn aff1_type(k: usize, nu: Gr, x_terms: &[(u32, Gr)], y_terms: &[(u32, Gr)]) -> LieProblem {
    let mut g = LieAlgebra::from_names(&["X0", "X1"]);
    g.set_bracket(0, 1, &[(1, q(1, 1))]);
    let mut t0 = FormalVectorField::zero(2, k);
    t0.add_term(mi(&[1, 0]), 0, &q(-1, 1));
    t0.add_term(mi(&[0, 1]), 1, &nu);
    for (e, c) in x_terms {
        t0.add_term(mi(&[0, *e]), 0, c);
    }
    for (e, c) in y_terms {
        t0.add_term(mi(&[0, *e]), 1, c);
    }
    let t0 = t0.truncate(k);
    let rep = NonlinearRep::new(2, k, vec![t0, FormalVectorField::coordinate(2, k, 0)]).unwrap();
    LieProblem { algebra: g, decomposition: Decomposition { m: vec![1], g0: vec![0], r: vec![0], s: vec![] }, rep }
}

/// Pushes every field forward by `chi` and restates the problem at one
/// degree less, which the ideal fields still trust.
pub fn conjugated(p: &LieProblem, chi: &FormalMap) -> LieProblem {
    let k = p.degree() - 1;
    let fields = p.rep.fields().iter().map(|f| pushforward(f, chi).unwrap().truncate(k).with_trusted(k)).collect();
    LieProblem { rep: NonlinearRep::new(p.n(), k, fields).unwrap(), ..p.clone() }
}
