//! The normalization engine: shape splitting, homological equations at the
//! resonance vector, certification of the radical, linearization of the
//! semisimple part, and the full pipeline with its verifier.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formal::{
    bracket, compose_maps, invert_map, pushforward, pushforward_with_inverse, FieldKey, FormalMap, FormalVectorField,
    MultiIndex,
};
use crate::lie::{
    representation_violation, roots_of_radical, spectral_data, validate_input, Check, Decomposition, LieAlgebra,
    LieProblem, LinearForm, NonlinearRep, SpectralData, ValidationReport,
};
use crate::linalg::Matrix;
use crate::resonance::{find_resonance_vector, resonance_sets, ResonanceSet};
use crate::scalar::GaussianRational;
use crate::straighten::straighten;

type Gr = GaussianRational;

fn describe(key: &FieldKey, c: &Gr) -> String {
    format!("{} * {} d/dx{}", c, key.alpha, key.target + 1)
}

fn linear_source(key: &FieldKey) -> usize {
    (0..key.alpha.len()).find(|&j| key.alpha.get(j) == 1).expect("degree-one monomial")
}

/// Terms of a `𝔤₀` field sorted by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ABSplit {
    /// `x`-targeted terms with `y`-only monomials (including `y_j ∂x_i`).
    pub a: FormalVectorField,
    /// Everything else: `K + H +` higher `y`-targeted terms.
    pub b: FormalVectorField,
    /// Linear `y_j ∂y_i` part.
    pub h: FormalVectorField,
    /// Linear `x_j ∂x_i` part.
    pub k: FormalVectorField,
}

/// Splits a straightened `𝔤₀` field, rejecting any term whose shape is
/// impossible once the ideal acts by constant fields.
pub fn ab_split(t: &FormalVectorField, p: usize) -> Result<ABSplit> {
    let n = t.dim();
    let tr = t.trusted();
    let mut s = ABSplit {
        a: FormalVectorField::zero(n, tr),
        b: FormalVectorField::zero(n, tr),
        h: FormalVectorField::zero(n, tr),
        k: FormalVectorField::zero(n, tr),
    };
    for (key, c) in t.terms() {
        let d = key.degree();
        let to_x = key.target < p;
        if d == 0 {
            return Err(Error::ShapeViolation(format!("constant term {}", describe(key, c))));
        }
        if d == 1 {
            let j = linear_source(key);
            match (to_x, j < p) {
                (true, true) => {
                    s.k.add_term(key.alpha.clone(), key.target, c);
                    s.b.add_term(key.alpha.clone(), key.target, c);
                }
                (true, false) => s.a.add_term(key.alpha.clone(), key.target, c),
                (false, false) => {
                    s.h.add_term(key.alpha.clone(), key.target, c);
                    s.b.add_term(key.alpha.clone(), key.target, c);
                }
                (false, true) => {
                    return Err(Error::ShapeViolation(format!("x-dependent y-component {}", describe(key, c))))
                }
            }
            continue;
        }
        if !key.alpha.supported_in(p..n) {
            return Err(Error::ShapeViolation(format!("x-dependent nonlinear term {}", describe(key, c))));
        }
        if to_x {
            s.a.add_term(key.alpha.clone(), key.target, c);
        } else {
            s.b.add_term(key.alpha.clone(), key.target, c);
        }
    }
    Ok(s)
}

/// Diagonal and strictly upper parts of the linear block part `B¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplit {
    pub s1: FormalVectorField,
    pub n1: FormalVectorField,
    /// The `y_j ∂x_i` part, kept apart.
    pub a1: FormalVectorField,
}

/// Splits the linear part of a triangularized field into semisimple and
/// nilpotent pieces.
pub fn split_linear(t: &FormalVectorField, p: usize) -> Result<LinearSplit> {
    let n = t.dim();
    let tr = t.trusted();
    let mut out = LinearSplit {
        s1: FormalVectorField::zero(n, tr),
        n1: FormalVectorField::zero(n, tr),
        a1: FormalVectorField::zero(n, tr),
    };
    for (key, c) in t.terms() {
        if key.degree() != 1 {
            continue;
        }
        let j = linear_source(key);
        let i = key.target;
        if i < p && j >= p {
            out.a1.add_term(key.alpha.clone(), i, c);
        } else if (i < p) != (j < p) || j < i {
            return Err(Error::NotTriangular(format!("lower entry {}", describe(key, c))));
        } else if i == j {
            out.s1.add_term(key.alpha.clone(), i, c);
        } else {
            out.n1.add_term(key.alpha.clone(), i, c);
        }
    }
    let comm = bracket(&out.s1, &out.n1)?;
    if let Some((key, c)) = comm.terms().iter().find(|(k, _)| k.degree() == 1 && linear_source(k) == k.target) {
        return Err(Error::NotTriangular(format!("[S, N] has diagonal term {}", describe(key, c))));
    }
    Ok(out)
}

/// Eigenvalue of `ad S¹` on `x^α ∂/∂x_i`: `Σ α_j λ_j − λ_i`.
pub fn eigenvalue(key: &FieldKey, lambda: &[Gr]) -> Gr {
    let mut v = -&lambda[key.target];
    for (j, &e) in key.alpha.exponents().iter().enumerate() {
        if e > 0 {
            v += &(&lambda[j] * &Gr::from_integer(e as i64));
        }
    }
    v
}

/// `y`-only monomials of degree `k` with every target.
fn y_only_keys(n: usize, p: usize, k: usize) -> Vec<FieldKey> {
    let mut out = Vec::new();
    for alpha in MultiIndex::all_supported(n, p..n, k) {
        for i in 0..n {
            out.push(FieldKey::new(alpha.clone(), i));
        }
    }
    out.sort();
    out
}

/// Keys handled by the homological step of degree `k`.
fn homological_keys(n: usize, p: usize, k: usize) -> Vec<FieldKey> {
    if k == 1 {
        let mut out = Vec::new();
        for j in p..n {
            for i in 0..p {
                out.push(FieldKey::new(MultiIndex::unit(n, j), i));
            }
        }
        out.sort();
        out
    } else {
        y_only_keys(n, p, k)
    }
}

/// Solution of one homological equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologicalStep {
    pub degree: usize,
    /// Conjugating by `I + w` removes the degree part off the kernel.
    pub w: FormalVectorField,
    /// Degree part on the kernel of `ad S¹` after the correction.
    pub kernel: FormalVectorField,
}

/// Solves `[T¹, W]_Im = −T^k_Im` on the monomials whose `ad S¹` eigenvalue
/// is nonzero. For `k = 1` only the `y_j ∂x_i` block is treated.
pub fn homological_step(t: &FormalVectorField, k: usize, p: usize, lambda: &[Gr]) -> Result<HomologicalStep> {
    let n = t.dim();
    let tr = t.trusted();
    let keys = homological_keys(n, p, k);
    let (im, ker): (Vec<FieldKey>, Vec<FieldKey>) =
        keys.into_iter().partition(|key| !eigenvalue(key, lambda).is_zero());
    let t1 = t.degree_part(1);
    let mut w = FormalVectorField::zero(n, tr);
    if !im.is_empty() {
        let mut m = Matrix::zeros(im.len(), im.len());
        for (c, key) in im.iter().enumerate() {
            let col = bracket(&t1, &FormalVectorField::monomial(n, tr, key.alpha.clone(), key.target, Gr::one()))?;
            for (r, row) in im.iter().enumerate() {
                m[(r, c)] = col.coeff(&row.alpha, row.target);
            }
        }
        let rhs: Vec<Gr> = im.iter().map(|key| -t.coeff(&key.alpha, key.target)).collect();
        if rhs.iter().any(|v| !v.is_zero()) {
            if m.rank() < im.len() {
                return Err(Error::SingularHomologicalSystem(format!(
                    "degree {k}: operator has rank {} on {} non-resonant monomials",
                    m.rank(),
                    im.len()
                )));
            }
            let sol = m.solve(&rhs).ok_or_else(|| Error::SingularHomologicalSystem(format!("degree {k}")))?;
            for (key, v) in im.iter().zip(sol) {
                w.add_term(key.alpha.clone(), key.target, &v);
            }
        }
    }
    let corrected = t.add(&bracket(&t1, &w)?);
    let kernel = FormalVectorField::from_terms(
        n,
        tr,
        ker.iter().map(|key| (key.alpha.clone(), key.target, corrected.coeff(&key.alpha, key.target))),
    );
    Ok(HomologicalStep { degree: k, w, kernel })
}

/// One factor `I + W_k` of a normalizing transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub stage: &'static str,
    pub degree: usize,
    pub field: FormalVectorField,
}

/// Normalizing transformation of the single field `T_{X₀}`.
#[derive(Clone, Debug)]
pub struct X0Normalization {
    pub phi: FormalMap,
    pub factors: Vec<Factor>,
    pub t_x0: FormalVectorField,
}

/// Applies the homological steps for degrees `1..=degree`, conjugating
/// after each, and composes the factors.
pub fn normalize_at_x0(t_x0: &FormalVectorField, p: usize, lambda: &[Gr], degree: usize) -> Result<X0Normalization> {
    let n = t_x0.dim();
    let mut t = t_x0.clone();
    let mut phi = FormalMap::identity(n, degree);
    let mut factors = Vec::new();
    for k in 1..=degree {
        let step = homological_step(&t, k, p, lambda)?;
        if step.w.is_zero() {
            continue;
        }
        let f = FormalMap::identity_plus(&step.w, degree)?;
        t = pushforward(&t, &f)?;
        if let Some((key, c)) = t.terms().iter().find(|(key, _)| {
            key.degree() == k && homological_keys(n, p, k).contains(key) && !eigenvalue(key, lambda).is_zero()
        }) {
            return Err(Error::SingularHomologicalSystem(format!("degree {k} residue {}", describe(key, c))));
        }
        phi = compose_maps(&f, &phi)?;
        factors.push(Factor { stage: "normalize_radical", degree: k, field: step.w });
    }
    Ok(X0Normalization { phi, factors, t_x0: t })
}

/// Pushes every field forward by `phi` and re-checks the representation
/// property.
pub fn conjugate_rep(g: &LieAlgebra, rep: &NonlinearRep, phi: &FormalMap) -> Result<NonlinearRep> {
    let inv = invert_map(phi)?;
    let fields = rep.fields().iter().map(|f| pushforward_with_inverse(f, phi, &inv)).collect::<Result<Vec<_>>>()?;
    let out = NonlinearRep::new(rep.n(), rep.degree(), fields)?;
    if let Some(w) = representation_violation(g, &out) {
        return Err(Error::RepresentationBroken(w));
    }
    Ok(out)
}

/// Witness when `phi` moves some `∂/∂x_i`, `i < p`.
pub fn ideal_invariance_violation(phi: &FormalMap, p: usize) -> Result<Option<String>> {
    let n = phi.dim();
    let inv = invert_map(phi)?;
    for i in 0..p {
        let dx = FormalVectorField::coordinate(n, phi.trusted(), i);
        let pushed = pushforward_with_inverse(&dx, phi, &inv)?;
        if let Some((key, a, b)) = pushed.first_difference(&dx) {
            return Ok(Some(format!("d/dx{} picks up {} vs {} on {}", i + 1, a, b, describe(&key, &Gr::one()))));
        }
    }
    Ok(None)
}

/// Conjugates the `𝔤₀` fields by a map that fixes every `∂/∂x_i`; the
/// constant ideal fields are carried over unchanged.
fn conjugate_fixing_ideal(
    g: &LieAlgebra,
    d: &Decomposition,
    rep: &NonlinearRep,
    phi: &FormalMap,
    p: usize,
) -> Result<NonlinearRep> {
    if phi.is_identity() {
        return Ok(rep.clone());
    }
    if let Some(w) = ideal_invariance_violation(phi, p)? {
        return Err(Error::Verification(format!("stage map does not fix the ideal: {w}")));
    }
    let inv = invert_map(phi)?;
    let mut out = rep.clone();
    for &a in &d.g0 {
        out.set_field(a, pushforward_with_inverse(rep.field(a), phi, &inv)?);
    }
    if let Some(w) = representation_violation(g, &out) {
        return Err(Error::RepresentationBroken(w));
    }
    Ok(out)
}

/// Offending terms of the `𝔯` fields: anything outside `R ∪ R′` other than
/// the triangular linear block part.
pub fn radical_residue(
    g: &LieAlgebra,
    d: &Decomposition,
    rep: &NonlinearRep,
    p: usize,
    sets: &ResonanceSet,
) -> Vec<String> {
    let n = rep.n();
    let mut out = Vec::new();
    for &a in &d.r {
        for (key, c) in rep.field(a).terms() {
            let d1 = key.degree();
            let i = key.target;
            let ok = if d1 == 0 {
                false
            } else if d1 == 1 && ((i < p) == (linear_source(key) < p)) {
                linear_source(key) >= i
            } else if !key.alpha.supported_in(p..n) {
                false
            } else {
                let alpha = MultiIndex::new(key.alpha.exponents()[p..].to_vec());
                if i < p {
                    sets.contains_r(&alpha, i)
                } else {
                    sets.contains_r_prime(&alpha, i - p)
                }
            };
            if !ok {
                out.push(format!("T_{}: {}", g.name(a), describe(key, c)));
            }
        }
    }
    out
}

/// Certifies that the `𝔯` fields are supported on resonant pairs.
pub fn normalize_radical(
    g: &LieAlgebra,
    d: &Decomposition,
    rep: &NonlinearRep,
    p: usize,
    sets: &ResonanceSet,
) -> Result<()> {
    let bad = radical_residue(g, d, rep, p, sets);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NonResonantResidue(bad.join("; ")))
    }
}

/// Linearization of the semisimple part.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub psi: FormalMap,
    pub factors: Vec<Factor>,
    pub rep: NonlinearRep,
}

/// For `k = 2..=degree` solves `T_s^k + [T_s¹, ψ^k] = 0` for every `s` in
/// the `𝔰` basis, with `ψ^k` built from `y`-only monomials whose eigenvalue
/// at `X₀` vanishes (all of them when `lambda` is `None`), and conjugates
/// the `𝔤₀` fields by `I + ψ^k`.
pub fn linearize_semisimple(
    g: &LieAlgebra,
    d: &Decomposition,
    rep: &NonlinearRep,
    p: usize,
    lambda: Option<&[Gr]>,
    degree: usize,
) -> Result<Linearization> {
    let n = rep.n();
    let mut cur = rep.clone();
    let mut psi = FormalMap::identity(n, degree);
    let mut factors = Vec::new();
    if d.s.is_empty() {
        return Ok(Linearization { psi, factors, rep: cur });
    }
    for k in 2..=degree {
        let rows = y_only_keys(n, p, k);
        let unknowns: Vec<FieldKey> =
            rows.iter().filter(|key| lambda.is_none_or(|l| eigenvalue(key, l).is_zero())).cloned().collect();
        let mut rhs = Vec::new();
        for &s in &d.s {
            for key in &rows {
                rhs.push(-cur.field(s).coeff(&key.alpha, key.target));
            }
        }
        if rhs.iter().all(Zero::is_zero) {
            continue;
        }
        let mut m = Matrix::zeros(rhs.len(), unknowns.len());
        for (c, u) in unknowns.iter().enumerate() {
            let e = FormalVectorField::monomial(n, degree, u.alpha.clone(), u.target, Gr::one());
            for (si, &s) in d.s.iter().enumerate() {
                let col = bracket(&cur.field(s).degree_part(1), &e)?;
                for (r, key) in rows.iter().enumerate() {
                    m[(si * rows.len() + r, c)] = col.coeff(&key.alpha, key.target);
                }
            }
        }
        let sol = m.solve(&rhs).ok_or_else(|| {
            let (si, key) =
                d.s.iter()
                    .flat_map(|&s| rows.iter().map(move |key| (s, key)))
                    .find(|(s, key)| !cur.field(*s).coeff(&key.alpha, key.target).is_zero())
                    .expect("nonzero right-hand side");
            Error::ConstrainedCocycleInfeasible {
                degree: k,
                residual: format!(
                    "{} equations in {} unknowns inconsistent; T_{} has {}",
                    rhs.len(),
                    unknowns.len(),
                    g.name(si),
                    describe(key, &cur.field(si).coeff(&key.alpha, key.target))
                ),
            }
        })?;
        let w = FormalVectorField::from_terms(
            n,
            degree,
            unknowns.iter().zip(sol).map(|(u, v)| (u.alpha.clone(), u.target, v)),
        );
        if w.is_zero() {
            continue;
        }
        let f = FormalMap::identity_plus(&w, degree)?;
        cur = conjugate_fixing_ideal(g, d, &cur, &f, p)?;
        psi = compose_maps(&f, &psi)?;
        factors.push(Factor { stage: "linearize_semisimple", degree: k, field: w });
    }
    if let Some((s, key, c)) = d.s.iter().find_map(|&s| {
        cur.field(s).terms().iter().find(|(key, _)| key.degree() != 1).map(|(key, c)| (s, key.clone(), c.clone()))
    }) {
        return Err(Error::ConstrainedCocycleInfeasible {
            degree: key.degree(),
            residual: format!("T_{} keeps {}", g.name(s), describe(&key, &c)),
        });
    }
    Ok(Linearization { psi, factors, rep: cur })
}

/// Tunables of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    pub max_search_box: usize,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { max_search_box: 16 }
    }
}

/// Everything produced by [`normalize_full`].
#[derive(Clone, Debug)]
pub struct NormalizationResult {
    pub p: usize,
    pub q: usize,
    /// Entry `(i, j)` is `a_i(X_j)` for the `j`-th basis element of `𝔪`.
    pub a_matrix: Matrix,
    /// `straighten`, `triangularize`, `normalize_radical`, `linearize_semisimple`, in order of application.
    pub stages: Vec<(&'static str, FormalMap)>,
    pub factors: Vec<Factor>,
    pub phi_total: FormalMap,
    pub normalized: NonlinearRep,
    pub spectral: Option<SpectralData>,
    /// Resonance vector, as coordinates over the `𝔯` basis.
    pub x0: Option<Vec<Gr>>,
    pub resonance: Option<ResonanceSet>,
    pub report: ValidationReport,
    /// `[S¹_X, N_X]` residues per `𝔯` basis element; informational only.
    pub observations: Vec<String>,
}

fn lift_r(d: &Decomposition, dim: usize, x: &[Gr]) -> Vec<Gr> {
    let mut v = vec![Gr::zero(); dim];
    for (&a, c) in d.r.iter().zip(x) {
        v[a] = c.clone();
    }
    v
}

/// Full pipeline: validate, straighten, triangularize, resonance data and
/// resonance vector, normalize at `X₀`, certify the radical, linearize the
/// semisimple part, verify.
pub fn normalize_full(problem: &LieProblem, opts: &NormalizeOptions) -> Result<NormalizationResult> {
    let g = &problem.algebra;
    let d = &problem.decomposition;
    let k = problem.degree();
    let n = problem.n();

    let validation = validate_input(g, d, &problem.rep);
    if !validation.passed() {
        return Err(Error::Validation(Box::new(validation)).in_stage("validate"));
    }

    let st = straighten(&problem.rep, d).map_err(|e| e.in_stage("straighten"))?;
    let p = st.p;
    for &a in &d.g0 {
        ab_split(st.rep.field(a), p).map_err(|e| e.in_stage("shape"))?;
    }
    let mut stages = vec![("straighten", st.phi.clone())];
    let mut factors = Vec::new();

    let (rep_n, spectral, x0, resonance, lambda) = if d.r.is_empty() {
        stages.push(("triangularize", FormalMap::identity(n, k)));
        stages.push(("normalize_radical", FormalMap::identity(n, k)));
        (st.rep.clone(), None, None, None, None)
    } else {
        let spectral = spectral_data(g, d, &st.rep, p).map_err(|e| e.in_stage("triangularize"))?;
        let exact = FormalMap::linear(&spectral.change, k + 1);
        let rep_t = if exact.is_identity() {
            st.rep.clone()
        } else {
            conjugate_rep(g, &st.rep, &exact).map_err(|e| e.in_stage("triangularize"))?
        };
        stages.push(("triangularize", FormalMap::linear(&spectral.change, k)));

        let sets = resonance_sets(&spectral, k);
        let x0 = find_resonance_vector(g, d, &spectral, k, opts.max_search_box).map_err(|e| e.in_stage("resonance"))?;
        let lambda = spectral.values_at(&x0);
        let x0_full = lift_r(d, g.dim(), &x0);
        let t_x0 = rep_t.combination(&x0_full);
        split_linear(&t_x0, p).map_err(|e| e.in_stage("normalize_at_x0"))?;
        let xn = normalize_at_x0(&t_x0, p, &lambda, k).map_err(|e| e.in_stage("normalize_at_x0"))?;
        let rep_n = conjugate_fixing_ideal(g, d, &rep_t, &xn.phi, p).map_err(|e| e.in_stage("normalize_radical"))?;
        if let Some((key, a, b)) = rep_n.combination(&x0_full).first_difference(&xn.t_x0) {
            return Err(Error::Verification(format!(
                "conjugated T_X0 differs from the normalized one on {}: {a} vs {b}",
                describe(&key, &Gr::one())
            ))
            .in_stage("normalize_radical"));
        }
        normalize_radical(g, d, &rep_n, p, &sets).map_err(|e| e.in_stage("normalize_radical"))?;
        stages.push(("normalize_radical", xn.phi));
        factors.extend(xn.factors);
        (rep_n, Some(spectral), Some(x0), Some(sets), Some(lambda))
    };

    let lin =
        linearize_semisimple(g, d, &rep_n, p, lambda.as_deref(), k).map_err(|e| e.in_stage("linearize_semisimple"))?;
    stages.push(("linearize_semisimple", lin.psi));
    factors.extend(lin.factors);

    let phi_total = compose_stages(&stages, n, k).map_err(|e| e.in_stage("verify"))?;
    let report = verify_normal_form(problem, &stages, &phi_total, &lin.rep);
    if !report.passed() {
        return Err(Error::Verification(report.failures().join("; ")).in_stage("verify"));
    }
    let observations = commutator_observations(g, d, &lin.rep, p);
    Ok(NormalizationResult {
        p,
        q: n - p,
        a_matrix: st.a_matrix,
        stages,
        factors,
        phi_total,
        normalized: lin.rep,
        spectral,
        x0,
        resonance,
        report,
        observations,
    })
}

/// `φ_last ∘ … ∘ φ_first`.
pub fn compose_stages(stages: &[(impl AsRef<str>, FormalMap)], n: usize, degree: usize) -> Result<FormalMap> {
    let mut total = FormalMap::identity(n, degree);
    for (_, m) in stages {
        total = compose_maps(m, &total)?;
    }
    Ok(total)
}

fn commutator_observations(g: &LieAlgebra, d: &Decomposition, rep: &NonlinearRep, p: usize) -> Vec<String> {
    let mut out = Vec::new();
    for &a in &d.r {
        let f = rep.field(a);
        let diag = FormalVectorField::from_terms(
            f.dim(),
            f.trusted(),
            f.terms()
                .iter()
                .filter(|(key, _)| key.degree() == 1 && linear_source(key) == key.target)
                .map(|(key, c)| (key.alpha.clone(), key.target, c.clone())),
        );
        let rest = f.sub(&diag);
        let count = bracket(&diag, &rest).map(|b| b.terms().len()).unwrap_or(0);
        let _ = p;
        out.push(format!("[S1, N] for T_{} has {count} nonzero terms", g.name(a)));
    }
    out
}

fn ideal_shape_violation(g: &LieAlgebra, d: &Decomposition, rep: &NonlinearRep, p: usize) -> Option<String> {
    for &a in &d.m {
        if let Some((key, c)) = rep.field(a).terms().iter().find(|(key, _)| key.degree() != 0 || key.target >= p) {
            return Some(format!("T_{} has {}", g.name(a), describe(key, c)));
        }
    }
    let mut a_matrix = Matrix::zeros(p, p);
    for (j, &a) in d.m.iter().enumerate() {
        let v = rep.field(a).constant_vector();
        for i in 0..p {
            a_matrix[(i, j)] = v[i].clone();
        }
    }
    if p > 0 && a_matrix.determinant().is_zero() {
        return Some("the constant coefficients a_i(X_j) are singular".into());
    }
    None
}

/// Reads the spectral forms off the diagonals of a triangular normal form.
fn spectral_from_normal_form(g: &LieAlgebra, d: &Decomposition, rep: &NonlinearRep, p: usize) -> Result<SpectralData> {
    let n = rep.n();
    let mut mu = vec![LinearForm::zero(d.r.len()); p];
    let mut nu = vec![LinearForm::zero(d.r.len()); n - p];
    for (col, &a) in d.r.iter().enumerate() {
        let m = rep.field(a).linear_matrix();
        for i in 0..n {
            if i < p {
                mu[i].0[col] = m[(i, i)].clone();
            } else {
                nu[i - p].0[col] = m[(i, i)].clone();
            }
        }
    }
    Ok(SpectralData { p, q: n - p, change: Matrix::identity(n), mu, nu, roots: roots_of_radical(g, d)? })
}

/// Certifies a normal form from scratch: equivalence with the input under
/// `phi_total`, the representation property, the shape of each part, and
/// the stage maps.
pub fn verify_normal_form(
    problem: &LieProblem,
    stages: &[(impl AsRef<str>, FormalMap)],
    phi_total: &FormalMap,
    normalized: &NonlinearRep,
) -> ValidationReport {
    let g = &problem.algebra;
    let d = &problem.decomposition;
    let k = problem.degree();
    let n = problem.n();
    let p = d.m.len();
    let mut rep = ValidationReport::default();

    if normalized.n() != n || normalized.fields().len() != g.dim() || phi_total.dim() != n {
        rep.push(Check::fail("dimensions", "normalized representation does not match the problem"));
        return rep;
    }
    rep.push(Check::pass("dimensions"));
    rep.push(Check::from_option(
        "trusted_degrees",
        normalized
            .fields()
            .iter()
            .position(|f| f.trusted() + 1 < k)
            .map(|a| format!("T_{} is trusted only to degree {}", g.name(a), normalized.field(a).trusted()))
            .or_else(|| {
                (phi_total.trusted() < k).then(|| format!("phi_total trusted only to {}", phi_total.trusted()))
            }),
    ));

    let composed = match compose_stages(stages, n, k) {
        Ok(c) => c,
        Err(e) => {
            rep.push(Check::fail("stage_composition", e.to_string()));
            return rep;
        }
    };
    rep.push(Check::from_option(
        "stage_composition",
        (!composed.agrees_with(phi_total)).then(|| "stage maps do not compose to phi_total".to_string()),
    ));
    let mut invariance = None;
    for (name, m) in stages.iter().skip(1) {
        match ideal_invariance_violation(m, p) {
            Ok(None) => {}
            Ok(Some(w)) => invariance = Some(format!("{}: {w}", name.as_ref())),
            Err(e) => invariance = Some(format!("{}: {e}", name.as_ref())),
        }
        if invariance.is_some() {
            break;
        }
    }
    rep.push(Check::from_option("ideal_invariance", invariance));

    let equivalence = match invert_map(phi_total) {
        Err(e) => Some(e.to_string()),
        Ok(inv) => (0..g.dim()).find_map(|a| match pushforward_with_inverse(problem.rep.field(a), phi_total, &inv) {
            Err(e) => Some(e.to_string()),
            Ok(pushed) => pushed.first_difference(normalized.field(a)).map(|(key, x, y)| {
                format!(
                    "T_{}: pushed forward {} vs normalized {} on degree {} term {}",
                    g.name(a),
                    x,
                    y,
                    key.degree(),
                    describe(&key, &Gr::one())
                )
            }),
        }),
    };
    rep.push(Check::from_option("equivalence", equivalence));
    rep.push(Check::from_option("representation", representation_violation(g, normalized)));
    rep.push(Check::from_option("ideal_constant", ideal_shape_violation(g, d, normalized, p)));
    rep.push(Check::from_option(
        "semisimple_linear",
        d.s.iter().find_map(|&s| {
            normalized
                .field(s)
                .terms()
                .iter()
                .find(|(key, _)| key.degree() != 1)
                .map(|(key, c)| format!("T_{} has {}", g.name(s), describe(key, c)))
        }),
    ));

    let mut shape = None;
    for &a in &d.r {
        if let Err(e) = ab_split(normalized.field(a), p).and_then(|_| split_linear(normalized.field(a), p)) {
            shape = Some(format!("T_{}: {e}", g.name(a)));
            break;
        }
    }
    let shape_ok = shape.is_none();
    rep.push(Check::from_option("radical_triangular", shape));
    let resonant = if !shape_ok {
        Some("skipped: radical fields are not triangular".into())
    } else {
        match spectral_from_normal_form(g, d, normalized, p) {
            Err(e) => Some(e.to_string()),
            Ok(spectral) => {
                let sets = resonance_sets(&spectral, k);
                let bad = radical_residue(g, d, normalized, p, &sets);
                (!bad.is_empty()).then(|| bad.join("; "))
            }
        }
    };
    rep.push(Check::from_option("radical_resonant", resonant));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Gr {
        Gr::frac(n, d)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn field(n: usize, k: usize, terms: &[(&[u32], usize, Gr)]) -> FormalVectorField {
        FormalVectorField::from_terms(n, k, terms.iter().map(|(a, i, c)| (mi(a), *i, c.clone())))
    }

    fn aff1_problem(k: usize, extra: &[(&[u32], usize, Gr)]) -> LieProblem {
        let mut g = LieAlgebra::from_names(&["X0", "X1"]);
        g.set_bracket(0, 1, &[(1, q(1, 1))]);
        let d = Decomposition { m: vec![1], g0: vec![0], r: vec![0], s: vec![] };
        let mut terms: Vec<(&[u32], usize, Gr)> =
            vec![(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 2], 0, q(1, 1))];
        terms.extend(extra.iter().cloned());
        let fields = vec![field(2, k, &terms), FormalVectorField::coordinate(2, k, 0)];
        LieProblem { algebra: g, decomposition: d, rep: NonlinearRep::new(2, k, fields).unwrap() }
    }

    #[test]
    fn ab_split_sorts_terms() {
        let t = field(2, 4, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 2], 0, q(1, 1))]);
        let s = ab_split(&t, 1).unwrap();
        assert_eq!(s.k, field(2, 4, &[(&[1, 0], 0, q(-1, 1))]));
        assert_eq!(s.h, field(2, 4, &[(&[0, 1], 1, q(-1, 2))]));
        assert_eq!(s.a, field(2, 4, &[(&[0, 2], 0, q(1, 1))]));
        assert_eq!(s.b, s.k.add(&s.h));
        assert_eq!(s.a.add(&s.b), t);

        let diag = field(2, 4, &[(&[1, 0], 0, q(2, 1)), (&[0, 1], 1, q(3, 1))]);
        assert!(ab_split(&diag, 1).unwrap().a.is_zero());

        let bad = field(2, 4, &[(&[1, 1], 1, q(1, 1))]);
        assert!(matches!(ab_split(&bad, 1), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn split_linear_examples() {
        let diag = field(2, 3, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2))]);
        let s = split_linear(&diag, 1).unwrap();
        assert_eq!(s.s1, diag);
        assert!(s.n1.is_zero());

        let jordan = field(2, 3, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 0, q(1, 1)), (&[0, 1], 1, q(-1, 1))]);
        let s = split_linear(&jordan, 2).unwrap();
        assert_eq!(s.s1, field(2, 3, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 1))]));
        assert_eq!(s.n1, field(2, 3, &[(&[0, 1], 0, q(1, 1))]));

        let lower = field(2, 3, &[(&[1, 0], 1, q(1, 1))]);
        assert!(matches!(split_linear(&lower, 2), Err(Error::NotTriangular(_))));
    }

    #[test]
    fn homological_step_removes_cubic_term() {
        let t = field(
            2,
            6,
            &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 2], 0, q(1, 1)), (&[0, 3], 0, q(1, 1))],
        );
        let lambda = [q(-1, 1), q(-1, 2)];
        let s = homological_step(&t, 3, 1, &lambda).unwrap();
        assert_eq!(s.w, field(2, 6, &[(&[0, 3], 0, q(2, 1))]));
        let f = FormalMap::identity_plus(&s.w, 6).unwrap();
        let out = pushforward(&t, &f).unwrap();
        assert_eq!(out, field(2, 6, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 2], 0, q(1, 1))]));

        let s2 = homological_step(&t, 2, 1, &lambda).unwrap();
        assert!(s2.w.is_zero());
        assert_eq!(s2.kernel, field(2, 6, &[(&[0, 2], 0, q(1, 1))]));
        assert_eq!(homological_step(&t, 3, 1, &lambda).unwrap(), s);
    }

    #[test]
    fn homological_step_degree_one() {
        let t = field(2, 4, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 1], 0, q(1, 1))]);
        let s = homological_step(&t, 1, 1, &[q(-1, 1), q(-1, 2)]).unwrap();
        assert_eq!(s.w, field(2, 4, &[(&[0, 1], 0, q(-2, 1))]));
    }

    #[test]
    fn aff1_end_to_end() {
        let p = aff1_problem(6, &[(&[0, 3], 0, q(1, 1))]);
        let r = normalize_full(&p, &NormalizeOptions::default()).unwrap();
        let expect = field(2, 6, &[(&[1, 0], 0, q(-1, 1)), (&[0, 1], 1, q(-1, 2)), (&[0, 2], 0, q(1, 1))]);
        assert_eq!(r.normalized.field(0).terms(), expect.terms());
        assert_eq!(r.normalized.field(1).terms(), FormalVectorField::coordinate(2, 6, 0).terms());
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].degree, 3);
        assert_eq!(r.factors[0].field, field(2, 6, &[(&[0, 3], 0, q(2, 1))]));
        let x = &r.phi_total.components()[0];
        assert_eq!(x.coeff(&mi(&[1, 0])), q(1, 1));
        assert_eq!(x.coeff(&mi(&[0, 3])), q(2, 1));
        assert_eq!(x.terms().len(), 2);
        assert!(r.report.passed(), "{}", r.report.render());
    }

    #[test]
    fn already_normal_is_fixed() {
        let p = aff1_problem(5, &[]);
        let r = normalize_full(&p, &NormalizeOptions::default()).unwrap();
        assert!(r.phi_total.is_identity());
        for a in 0..2 {
            assert_eq!(r.normalized.field(a).terms(), p.rep.field(a).terms());
        }
    }

    #[test]
    fn injected_residue_is_reported() {
        let p = aff1_problem(4, &[]);
        let mut rep = p.rep.clone();
        rep.set_field(0, rep.field(0).add(&field(2, 4, &[(&[0, 3], 0, q(1, 1))])));
        let r = normalize_full(&p, &NormalizeOptions::default()).unwrap();
        let sets = r.resonance.unwrap();
        let err = normalize_radical(&p.algebra, &p.decomposition, &rep, 1, &sets).unwrap_err();
        assert!(matches!(err, Error::NonResonantResidue(ref w) if w.contains("x2^3")));
    }

    #[test]
    fn conjugating_by_identity_is_trivial() {
        let p = aff1_problem(4, &[]);
        let out = conjugate_rep(&p.algebra, &p.rep, &FormalMap::identity(2, 4)).unwrap();
        for a in 0..2 {
            assert_eq!(out.field(a).terms(), p.rep.field(a).terms());
        }
        assert_eq!(out.field(1).trusted(), 3);
    }

    fn sl2_c2(k: usize) -> (LieProblem, FormalMap) {
        let mut g = LieAlgebra::from_names(&["E", "F", "H", "P1", "P2"]);
        g.set_bracket(2, 0, &[(0, q(2, 1))]);
        g.set_bracket(2, 1, &[(1, q(-2, 1))]);
        g.set_bracket(0, 1, &[(2, q(1, 1))]);
        g.set_bracket(0, 4, &[(3, q(1, 1))]);
        g.set_bracket(1, 3, &[(4, q(1, 1))]);
        g.set_bracket(2, 3, &[(3, q(1, 1))]);
        g.set_bracket(2, 4, &[(4, q(-1, 1))]);
        let d = Decomposition { m: vec![3, 4], g0: vec![0, 1, 2], r: vec![], s: vec![0, 1, 2] };
        let fields = vec![
            field(3, k, &[(&[0, 1, 0], 0, q(-1, 1))]),
            field(3, k, &[(&[1, 0, 0], 1, q(-1, 1))]),
            field(3, k, &[(&[1, 0, 0], 0, q(-1, 1)), (&[0, 1, 0], 1, q(1, 1))]),
            FormalVectorField::coordinate(3, k, 0),
            FormalVectorField::coordinate(3, k, 1),
        ];
        let rep = NonlinearRep::new(3, k, fields).unwrap();
        let chi = FormalMap::from_components(vec![
            crate::formal::Series::from_terms(3, k, [(mi(&[1, 0, 0]), q(1, 1)), (mi(&[0, 0, 2]), q(1, 1))]),
            crate::formal::Series::from_terms(3, k, [(mi(&[0, 1, 0]), q(1, 1)), (mi(&[0, 0, 3]), q(-1, 2))]),
            crate::formal::Series::from_terms(3, k, [(mi(&[0, 0, 1]), q(1, 1)), (mi(&[0, 0, 2]), q(1, 3))]),
        ])
        .unwrap();
        (LieProblem { algebra: g, decomposition: d, rep }, chi)
    }

    #[test]
    fn semisimple_round_trip() {
        let (lin, chi) = sl2_c2(4);
        let bent = conjugate_rep(&lin.algebra, &lin.rep, &chi).unwrap();
        assert!(bent.field(0).max_degree() > Some(1));
        let p = LieProblem { rep: bent, ..lin.clone() };
        let r = normalize_full(&p, &NormalizeOptions::default()).unwrap();
        assert!(r.report.passed(), "{}", r.report.render());
        for a in 0..5 {
            assert_eq!(r.normalized.field(a).terms(), lin.rep.field(a).terms(), "{}", lin.algebra.name(a));
        }
    }
}
