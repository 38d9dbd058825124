use num_traits::Zero;

use super::{FormalVectorField, MultiIndex, Series, Substitution};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// A formal coordinate change `x ↦ φ(x)` with `φ(0) = 0`, given by `n`
/// component series in `n` variables. Convention throughout the crate:
/// new coordinates are `φ(old)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalMap {
    dim: usize,
    trusted: usize,
    components: Vec<Series>,
}

impl FormalMap {
    pub fn identity(dim: usize, trusted: usize) -> Self {
        FormalMap { dim, trusted, components: (0..dim).map(|i| Series::variable(dim, trusted, i)).collect() }
    }

    /// `x ↦ A·x`.
    pub fn linear(a: &Matrix, trusted: usize) -> Self {
        assert!(a.is_square());
        let n = a.rows();
        let components = (0..n)
            .map(|i| Series::from_terms(n, trusted, (0..n).map(|j| (MultiIndex::unit(n, j), a[(i, j)].clone()))))
            .collect();
        FormalMap { dim: n, trusted, components }
    }

    /// Identity plus the components of a field: `x ↦ x + W(x)`.
    pub fn identity_plus(w: &FormalVectorField, trusted: usize) -> Result<Self> {
        let comps: Vec<Series> = w
            .components()
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.with_trusted(trusted).add(&Series::variable(w.dim(), trusted, i)))
            .collect();
        FormalMap::from_components(comps)
    }

    pub fn from_components(components: Vec<Series>) -> Result<Self> {
        let dim = components.len();
        if let Some(bad) = components.iter().position(|c| c.nvars() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "component {bad} has {} variables, expected {dim}",
                components[bad].nvars()
            )));
        }
        if let Some(bad) = components.iter().position(|c| !c.constant_term().is_zero()) {
            return Err(Error::DimensionMismatch(format!(
                "component {bad} has a nonzero constant term; maps must fix the origin"
            )));
        }
        let trusted = components.iter().map(Series::trusted).min().unwrap_or(0);
        let components = components.into_iter().map(|c| c.truncate(trusted)).collect();
        Ok(FormalMap { dim, trusted, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trusted(&self) -> usize {
        self.trusted
    }

    pub fn components(&self) -> &[Series] {
        &self.components
    }

    /// Degree-one coefficients: entry `(i, j)` is the coefficient of `x_j` in `φ_i`.
    pub fn linear_part(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in self.components.iter().enumerate() {
            for j in 0..self.dim {
                m[(i, j)] = c.coeff(&MultiIndex::unit(self.dim, j));
            }
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        self.linear_part().determinant() != Gr::zero()
    }

    pub fn truncate(&self, t: usize) -> Self {
        FormalMap {
            dim: self.dim,
            trusted: self.trusted.min(t),
            components: self.components.iter().map(|c| c.truncate(t)).collect(),
        }
    }

    /// True when the map equals the identity on every trusted degree.
    pub fn is_identity(&self) -> bool {
        self.agrees_with(&FormalMap::identity(self.dim, self.trusted))
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.dim == other.dim && self.components.iter().zip(&other.components).all(|(a, b)| a.agrees_with(b))
    }

    /// Nonlinear part `φ − φ¹`.
    fn nonlinear_part(&self) -> Vec<Series> {
        self.components
            .iter()
            .map(|c| {
                Series::from_terms(
                    self.dim,
                    c.trusted(),
                    c.terms().iter().filter(|(a, _)| a.degree() >= 2).map(|(a, v)| (a.clone(), v.clone())),
                )
            })
            .collect()
    }

    /// Renders `φ_i = ...` lines, terms in canonical order.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.components.iter().enumerate() {
            s.push_str(&format!("phi{}:", i + 1));
            if c.is_zero() {
                s.push_str(" 0");
            }
            for (a, v) in c.terms() {
                s.push_str(&format!(" + ({v}) * {a}"));
            }
            s.push('\n');
        }
        s
    }
}

fn check_dims(field_dim: usize, map: &FormalMap) -> Result<()> {
    if field_dim != map.dim {
        return Err(Error::DimensionMismatch(format!("object on C^{field_dim} combined with a map on C^{}", map.dim)));
    }
    Ok(())
}

/// `φ ⋆ T`: component `i` is `T` applied as a derivation to `φ_i`,
/// `Σ_j T^j ∂φ_i/∂x_j`.
pub fn apply_derivation(t: &FormalVectorField, phi: &FormalMap) -> Result<Vec<Series>> {
    check_dims(t.dim(), phi)?;
    let coeffs = t.components();
    Ok(phi
        .components
        .iter()
        .map(|p| {
            let mut acc: Option<Series> = None;
            for (j, tj) in coeffs.iter().enumerate() {
                let term = tj.mul(&p.derivative(j));
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            acc.unwrap_or_else(|| Series::zero(t.dim(), t.trusted()))
        })
        .collect())
}

fn substitution_cap(sources: &[&Series], phi: &FormalMap) -> usize {
    sources.iter().map(|s| s.trusted()).max().unwrap_or(0).max(phi.trusted)
}

/// `T ∘ φ`: substitutes `φ` into every coefficient function of `T`.
pub fn compose_field_map(t: &FormalVectorField, phi: &FormalMap) -> Result<FormalVectorField> {
    check_dims(t.dim(), phi)?;
    let comps = t.components();
    let refs: Vec<&Series> = comps.iter().collect();
    let mut sub = Substitution::new(&phi.components, phi.dim, substitution_cap(&refs, phi));
    let out: Vec<Series> = comps.iter().map(|c| sub.apply(c)).collect();
    Ok(FormalVectorField::from_components(&out))
}

/// `φ ∘ χ`.
pub fn compose_maps(phi: &FormalMap, chi: &FormalMap) -> Result<FormalMap> {
    if phi.dim != chi.dim {
        return Err(Error::DimensionMismatch(format!("maps on C^{} and C^{}", phi.dim, chi.dim)));
    }
    let refs: Vec<&Series> = phi.components.iter().collect();
    let mut sub = Substitution::new(&chi.components, chi.dim, substitution_cap(&refs, chi));
    FormalMap::from_components(phi.components.iter().map(|c| sub.apply(c)).collect())
}

/// Compositional inverse, built degree by degree from the fixed point
/// `χ = L⁻¹·(x − N(χ))` where `φ = L + N`.
pub fn invert_map(phi: &FormalMap) -> Result<FormalMap> {
    let n = phi.dim;
    let t = phi.trusted;
    let linv = phi.linear_part().inverse().ok_or(Error::SingularLinearPart)?;
    let nonlinear = phi.nonlinear_part();
    let mut chi = FormalMap::linear(&linv, t);
    if nonlinear.iter().all(Series::is_zero) {
        return Ok(chi);
    }
    // Pass `k` adds the degree `k` terms, which depend only on lower degrees.
    let refs: Vec<&Series> = nonlinear.iter().collect();
    for k in 2..=t {
        let mut sub = Substitution::new(&chi.components, n, substitution_cap(&refs, &chi).min(k));
        let nl: Vec<Series> = nonlinear.iter().map(|c| sub.apply(c)).collect();
        let mut next = chi.components.clone();
        for (i, out) in next.iter_mut().enumerate() {
            for (j, r) in nl.iter().enumerate() {
                if linv[(i, j)].is_zero() {
                    continue;
                }
                for (a, c) in r.terms() {
                    if a.degree() == k {
                        out.add_term(a.clone(), &-(c * &linv[(i, j)]));
                    }
                }
            }
        }
        chi = FormalMap::from_components(next)?;
    }
    Ok(chi)
}

/// `φ_* T`: the field `T'` with `φ ⋆ T = T' ∘ φ`.
pub fn pushforward(t: &FormalVectorField, phi: &FormalMap) -> Result<FormalVectorField> {
    let inv = invert_map(phi)?;
    pushforward_with_inverse(t, phi, &inv)
}

/// [`pushforward`] with a precomputed inverse, for pushing many fields
/// through the same map.
pub fn pushforward_with_inverse(
    t: &FormalVectorField,
    phi: &FormalMap,
    phi_inv: &FormalMap,
) -> Result<FormalVectorField> {
    let lifted = FormalVectorField::from_components(&apply_derivation(t, phi)?);
    compose_field_map(&lifted, phi_inv)
}
