//! Formal flow box: a coordinate change turning the fields of the abelian
//! ideal into constant fields.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formal::{
    bracket, invert_map, pushforward_with_inverse, FormalMap, FormalVectorField, MultiIndex, Series, Substitution,
};
use crate::lie::{Decomposition, NonlinearRep};
use crate::linalg::{complete_basis, Matrix};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// Result of straightening the ideal `𝔪`.
#[derive(Clone, Debug)]
pub struct StraightenedIdeal {
    /// New coordinates are `phi(old)`.
    pub phi: FormalMap,
    /// The flow map, inverse of `phi`.
    pub flow: FormalMap,
    pub p: usize,
    pub q: usize,
    /// Entry `(i, j)` is `a_i(X_j)` for the `j`-th basis element of `𝔪`.
    pub a_matrix: Matrix,
    /// Every field pushed forward by `phi`; ideal fields are exact constants.
    pub rep: NonlinearRep,
}

/// `D_V f = Σ_i V^i ∂f/∂z_i`.
fn derive(v: &[Series], f: &Series) -> Series {
    let mut acc: Option<Series> = None;
    for (i, vi) in v.iter().enumerate() {
        let term = vi.mul(&f.derivative(i));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| Series::zero(f.nvars(), f.trusted()))
}

fn factorial_of(beta: &MultiIndex) -> Gr {
    let mut f = Gr::one();
    for &e in beta.exponents() {
        for k in 2..=e as i64 {
            f = &f * &Gr::from_integer(k);
        }
    }
    f
}

/// `Ψ(x, y) = exp(Σ x_i V_i)` applied to the section point `ι(y)`, as the
/// truncated sum `Σ_β x^β/β! · (D_V^β z)(ι(y))`. New coordinates put the
/// `p` flow times first and the `q` section coordinates after them.
pub fn build_flow_map(fields: &[FormalVectorField], section: &[Vec<Gr>], degree: usize) -> Result<FormalMap> {
    let p = fields.len();
    let q = section.len();
    let n = p + q;
    if let Some(f) = fields.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch(format!("field on C^{} with p + q = {n}", f.dim())));
    }
    if let Some(s) = section.iter().find(|s| s.len() != n) {
        return Err(Error::DimensionMismatch(format!("section vector of length {} in C^{n}", s.len())));
    }
    for i in 0..p {
        for j in i + 1..p {
            let b = bracket(&fields[i], &fields[j])?;
            if let Some((k, c)) = b.terms().iter().next() {
                return Err(Error::NonCommuting(format!(
                    "[V{}, V{}] has the term {} * {} d/dx{}",
                    i + 1,
                    j + 1,
                    c,
                    k.alpha,
                    k.target + 1
                )));
            }
        }
    }
    let mut frame: Vec<Vec<Gr>> = fields.iter().map(FormalVectorField::constant_vector).collect();
    frame.extend(section.iter().cloned());
    if n > 0 && Matrix::from_columns(n, &frame).rank() < n {
        return Err(Error::DegenerateFrame("constant parts and section do not span the space".into()));
    }

    let comps: Vec<Vec<Series>> = fields.iter().map(|f| f.truncate(degree).components()).collect();
    // D_V^β z_j for every |β| ≤ degree, in the old coordinates z.
    let mut derived: BTreeMap<MultiIndex, Vec<Series>> = BTreeMap::new();
    derived.insert(MultiIndex::zero(p), (0..n).map(|j| Series::variable(n, degree, j)).collect());
    for m in 1..=degree {
        for beta in MultiIndex::all_of_degree(p, m) {
            let r = (0..p).rev().find(|&r| beta.get(r) > 0).expect("nonzero index");
            let prev = &derived[&beta.minus_unit(r).expect("positive exponent")];
            let next: Vec<Series> = prev.iter().map(|f| derive(&comps[r], f)).collect();
            derived.insert(beta, next);
        }
    }

    // z = S·y with y the new variables p..n.
    let subs: Vec<Series> = (0..n)
        .map(|i| Series::from_terms(n, degree, (0..q).map(|j| (MultiIndex::unit(n, p + j), section[j][i].clone()))))
        .collect();
    let mut sub = Substitution::new(&subs, n, degree);
    let mut out: Vec<Series> = (0..n).map(|_| Series::zero(n, degree)).collect();
    for (beta, fs) in &derived {
        let mut lifted = vec![0u32; n];
        lifted[..p].copy_from_slice(beta.exponents());
        let xb = MultiIndex::new(lifted);
        let c = factorial_of(beta).inv().expect("factorial is nonzero");
        for (j, f) in fs.iter().enumerate() {
            let at_section = sub.apply(f);
            out[j] = out[j].add(&at_section.times_monomial(&xb, &c));
        }
    }
    FormalMap::from_components(out.into_iter().map(|s| s.truncate(degree)).collect())
}

/// Straightens the ideal fields of `rep`: the flow of the rescaled fields
/// `U_k = Σ_i G_ik V_i` (with `G` the inverse of the constant parts on the
/// first independent rows) from a section completed by standard vectors.
pub fn straighten(rep: &NonlinearRep, d: &Decomposition) -> Result<StraightenedIdeal> {
    let n = rep.n();
    let k = rep.degree();
    let p = d.m.len();
    if p > n {
        return Err(Error::DegenerateFrame(format!("{p} ideal fields on C^{n}")));
    }
    let q = n - p;
    if p == 0 {
        return Ok(StraightenedIdeal {
            phi: FormalMap::identity(n, k),
            flow: FormalMap::identity(n, k),
            p,
            q,
            a_matrix: Matrix::zeros(0, 0),
            rep: rep.clone(),
        });
    }
    let v: Vec<&FormalVectorField> = d.m.iter().map(|&a| rep.field(a)).collect();
    let v0 = Matrix::from_columns(n, &v.iter().map(|f| f.constant_vector()).collect::<Vec<_>>());
    if v0.rank() < p {
        return Err(Error::DegenerateFrame(format!(
            "constant parts of the ideal fields have rank {} < {p}",
            v0.rank()
        )));
    }
    let pivots = transpose(&v0).rref().1;
    let mut a = Matrix::zeros(p, p);
    for (i, &r) in pivots.iter().enumerate() {
        for j in 0..p {
            a[(i, j)] = v0[(r, j)].clone();
        }
    }
    let g = a.inverse().ok_or_else(|| Error::DegenerateFrame("pivot block is singular".into()))?;
    let u: Vec<FormalVectorField> = (0..p)
        .map(|kk| {
            let mut acc = FormalVectorField::zero(n, k);
            for (i, f) in v.iter().enumerate() {
                if !g[(i, kk)].is_zero() {
                    acc = acc.add(&f.scale(&g[(i, kk)]));
                }
            }
            acc
        })
        .collect();
    let section = complete_basis(n, &(0..p).map(|j| v0.column(j)).collect::<Vec<_>>());
    let flow = build_flow_map(&u, &section, k)?;
    let phi = invert_map(&flow)?;

    let mut fields = Vec::with_capacity(rep.fields().len());
    for f in rep.fields() {
        fields.push(pushforward_with_inverse(f, &phi, &flow)?);
    }
    let mut a_matrix = Matrix::zeros(p, p);
    for (j, &idx) in d.m.iter().enumerate() {
        let pushed = &fields[idx];
        if let Some((key, c)) = pushed.terms().iter().find(|(key, _)| key.degree() > 0 || key.target >= p) {
            return Err(Error::StraighteningResidue(format!(
                "field {j} of the ideal keeps {} * {} d/dx{}",
                c,
                key.alpha,
                key.target + 1
            )));
        }
        let cv = pushed.constant_vector();
        for i in 0..p {
            a_matrix[(i, j)] = cv[i].clone();
        }
    }
    Ok(StraightenedIdeal { phi, flow, p, q, a_matrix, rep: NonlinearRep::new(n, k, fields)? })
}

fn transpose(m: &Matrix) -> Matrix {
    Matrix::from_columns(m.cols(), &m.to_rows())
}
