//! Lie algebras given by structure constants, their decompositions, nonlinear
//! representations, input validation, and simultaneous triangularization.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formal::{bracket, FormalVectorField};
use crate::linalg::{complete_basis, Matrix};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// Finite-dimensional Lie algebra with `[X_a, X_b] = Σ_c C^c_{ab} X_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    // consts[a][b][c] = C^c_{ab}
    consts: Vec<Vec<Vec<Gr>>>,
}

impl LieAlgebra {
    /// Abelian algebra on the given basis names.
    pub fn new(names: Vec<String>) -> Self {
        let d = names.len();
        LieAlgebra { names, consts: vec![vec![vec![Gr::zero(); d]; d]; d] }
    }

    pub fn from_names(names: &[&str]) -> Self {
        LieAlgebra::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &Gr {
        &self.consts[a][b][c]
    }

    pub fn set_structure_constant(&mut self, a: usize, b: usize, c: usize, v: Gr) {
        self.consts[a][b][c] = v;
    }

    /// Sets `[X_a, X_b] = Σ coeff·X_c` and the antisymmetric partner.
    pub fn set_bracket(&mut self, a: usize, b: usize, value: &[(usize, Gr)]) {
        let d = self.dim();
        self.consts[a][b] = vec![Gr::zero(); d];
        self.consts[b][a] = vec![Gr::zero(); d];
        for (c, v) in value {
            self.consts[a][b][*c] += v;
            self.consts[b][a][*c] -= v;
        }
    }

    /// `[X_a, X_b]` as a coordinate vector.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &[Gr] {
        &self.consts[a][b]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, x: &[Gr], y: &[Gr]) -> Vec<Gr> {
        let d = self.dim();
        let mut out = vec![Gr::zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (c, v) in self.consts[a][b].iter().enumerate() {
                    if !v.is_zero() {
                        out[c] += &(&f * v);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<Gr> {
        let mut v = vec![Gr::zero(); self.dim()];
        v[a] = Gr::one();
        v
    }

    /// First `(a, b)` with `C_{ab} ≠ −C_{ba}`.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a..d {
                for c in 0..d {
                    if self.consts[a][b][c] != -&self.consts[b][a][c] {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// First triple `a < b < c` whose Jacobi sum is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (xa, xb, xc) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_vec(&self.bracket_vec(&xa, &xb), &xc);
                    let t2 = self.bracket_vec(&self.bracket_vec(&xb, &xc), &xa);
                    let t3 = self.bracket_vec(&self.bracket_vec(&xc, &xa), &xb);
                    if (0..d).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Index sets `𝔪`, `𝔤₀ = 𝔯 ⊕ 𝔰` within the basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub m: Vec<usize>,
    pub g0: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

/// Basis index to vector field, all on ℂⁿ and truncated at degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonlinearRep {
    n: usize,
    degree: usize,
    fields: Vec<FormalVectorField>,
}

impl NonlinearRep {
    pub fn new(n: usize, degree: usize, fields: Vec<FormalVectorField>) -> Result<Self> {
        if let Some(f) = fields.iter().find(|f| f.dim() != n) {
            return Err(Error::DimensionMismatch(format!("field on C^{} in a representation on C^{n}", f.dim())));
        }
        Ok(NonlinearRep { n, degree, fields })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn fields(&self) -> &[FormalVectorField] {
        &self.fields
    }

    pub fn field(&self, a: usize) -> &FormalVectorField {
        &self.fields[a]
    }

    pub fn set_field(&mut self, a: usize, f: FormalVectorField) {
        assert_eq!(f.dim(), self.n);
        self.fields[a] = f;
    }

    /// `T_X` for `X = Σ x_a X_a`.
    pub fn combination(&self, x: &[Gr]) -> FormalVectorField {
        let mut out = FormalVectorField::zero(self.n, self.degree);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.fields[a].scale(c));
            }
        }
        out
    }
}

/// Everything a normalization run needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieProblem {
    pub algebra: LieAlgebra,
    pub decomposition: Decomposition,
    pub rep: NonlinearRep,
}

impl LieProblem {
    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }
}

/// Linear form on `𝔯`, as its values on the chosen basis of `𝔯`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm(pub Vec<Gr>);

impl LinearForm {
    pub fn zero(dim: usize) -> Self {
        LinearForm(vec![Gr::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Gr] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        LinearForm(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        LinearForm(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Gr) -> LinearForm {
        LinearForm(self.0.iter().map(|a| a * c).collect())
    }

    /// Value at the element with coordinates `x` over the `𝔯` basis.
    pub fn eval(&self, x: &[Gr]) -> Gr {
        let mut s = Gr::zero();
        for (a, b) in self.0.iter().zip(x) {
            s += &(a * b);
        }
        s
    }

    pub fn canonical_cmp(&self, o: &LinearForm) -> Ordering {
        for (a, b) in self.0.iter().zip(&o.0) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&o.0.len())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// One named pass/fail check with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.to_string(), passed: true, witness: None }
    }

    pub fn fail(name: &str, witness: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed: false, witness: Some(witness.into()) }
    }

    pub fn from_option(name: &str, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }
}

/// Ordered list of checks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("failed")))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {}", c.name));
            if let Some(w) = &c.witness {
                s.push_str(&format!(": {w}"));
            }
            s.push('\n');
        }
        s
    }
}

fn outside(v: &[Gr], allowed: &[usize]) -> Option<usize> {
    (0..v.len()).find(|c| !v[*c].is_zero() && !allowed.contains(c))
}

fn closure_violation(g: &LieAlgebra, left: &[usize], right: &[usize], target: &[usize]) -> Option<String> {
    for &a in left {
        for &b in right {
            if let Some(c) = outside(g.basis_bracket(a, b), target) {
                return Some(format!("[{}, {}] has a component along {}", g.name(a), g.name(b), g.name(c)));
            }
        }
    }
    None
}

fn partition_violation(dim: usize, d: &Decomposition) -> Option<String> {
    let all = [&d.m, &d.g0, &d.r, &d.s];
    if let Some(i) = all.iter().flat_map(|v| v.iter()).find(|&&i| i >= dim) {
        return Some(format!("index {i} out of range for a {dim}-dimensional algebra"));
    }
    let count = |set: &[&Vec<usize>], i: usize| set.iter().flat_map(|v| v.iter()).filter(|&&j| j == i).count();
    for i in 0..dim {
        if count(&[&d.m, &d.g0], i) != 1 {
            return Some(format!("basis index {i} is not in exactly one of m, g0"));
        }
    }
    for &i in &d.g0 {
        if count(&[&d.r, &d.s], i) != 1 {
            return Some(format!("g0 index {i} is not in exactly one of r, s"));
        }
    }
    if let Some(i) = d.r.iter().chain(&d.s).find(|i| !d.g0.contains(i)) {
        return Some(format!("index {i} in r or s but not in g0"));
    }
    None
}

/// Row-reduced basis of the span of the given vectors.
fn span_basis(vectors: &[Vec<Gr>]) -> Vec<Vec<Gr>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

fn solvable_violation(g: &LieAlgebra, r: &[usize]) -> Option<String> {
    let mut current: Vec<Vec<Gr>> = r.iter().map(|&a| g.unit(a)).collect();
    for _ in 0..=g.dim() {
        if current.is_empty() {
            return None;
        }
        let mut next = Vec::new();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let b = g.bracket_vec(&current[i], &current[j]);
                if b.iter().any(|v| !v.is_zero()) {
                    next.push(b);
                }
            }
        }
        let next = span_basis(&next);
        if next.len() == current.len() {
            return Some(format!("derived series stabilizes at dimension {}", next.len()));
        }
        current = next;
    }
    Some("derived series does not terminate".into())
}

/// Killing form of the subalgebra spanned by `s`, computed intrinsically.
fn killing_violation(g: &LieAlgebra, s: &[usize]) -> Option<String> {
    if s.is_empty() {
        return None;
    }
    let k = s.len();
    let ad: Vec<Matrix> = s
        .iter()
        .map(|&a| {
            let mut m = Matrix::zeros(k, k);
            for (col, &b) in s.iter().enumerate() {
                for (row, &c) in s.iter().enumerate() {
                    m[(row, col)] = g.structure_constant(a, b, c).clone();
                }
            }
            m
        })
        .collect();
    let mut kf = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            kf[(i, j)] = ad[i].mul(&ad[j]).trace();
        }
    }
    if kf.determinant().is_zero() {
        Some("Killing form of s is degenerate".into())
    } else {
        None
    }
}

fn render_key(k: &crate::formal::FieldKey) -> String {
    format!("{} d/dx{}", k.alpha, k.target + 1)
}

/// Checks every hypothesis the normalization relies on. Never fails; the
/// report carries the verdicts.
pub fn validate_input(g: &LieAlgebra, d: &Decomposition, t: &NonlinearRep) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let dim = g.dim();

    rep.push(Check::from_option(
        "antisymmetry",
        g.antisymmetry_violation()
            .map(|(a, b)| format!("C[{}, {}] != -C[{}, {}]", g.name(a), g.name(b), g.name(b), g.name(a))),
    ));
    rep.push(Check::from_option(
        "jacobi",
        g.jacobi_violation()
            .map(|(a, b, c)| format!("Jacobi sum nonzero on ({}, {}, {})", g.name(a), g.name(b), g.name(c))),
    ));

    let partition = partition_violation(dim, d);
    let partition_ok = partition.is_none();
    rep.push(Check::from_option("partition", partition));
    if partition_ok {
        let all: Vec<usize> = (0..dim).collect();
        rep.push(Check::from_option(
            "abelian_ideal",
            closure_violation(g, &d.m, &d.m, &[]).or_else(|| closure_violation(g, &all, &d.m, &d.m)),
        ));
        rep.push(Check::from_option("g0_subalgebra", closure_violation(g, &d.g0, &d.g0, &d.g0)));
        rep.push(Check::from_option("r_ideal_of_g0", closure_violation(g, &d.g0, &d.r, &d.r)));
        rep.push(Check::from_option("r_solvable", solvable_violation(g, &d.r)));
        rep.push(Check::from_option(
            "s_semisimple",
            closure_violation(g, &d.s, &d.s, &d.s).or_else(|| killing_violation(g, &d.s)),
        ));
    } else {
        for name in ["abelian_ideal", "g0_subalgebra", "r_ideal_of_g0", "r_solvable", "s_semisimple"] {
            rep.push(Check::fail(name, "skipped: invalid partition"));
        }
    }

    let shape = if t.fields().len() != dim {
        Some(format!("{} fields for a {dim}-dimensional algebra", t.fields().len()))
    } else {
        t.fields().iter().position(|f| f.dim() != t.n()).map(|a| format!("field {} is not on C^{}", g.name(a), t.n()))
    };
    let shape_ok = shape.is_none();
    rep.push(Check::from_option("field_dimensions", shape));
    if !shape_ok || !partition_ok {
        for name in ["regularity_g0", "regularity_m", "representation"] {
            rep.push(Check::fail(name, "skipped: inconsistent dimensions"));
        }
        return rep;
    }

    rep.push(Check::from_option(
        "regularity_g0",
        d.g0.iter().find_map(|&a| {
            let v = t.field(a).constant_vector();
            v.iter().any(|c| !c.is_zero()).then(|| format!("T_{} has a nonzero constant term", g.name(a)))
        }),
    ));
    let consts: Vec<Vec<Gr>> = d.m.iter().map(|&a| t.field(a).constant_vector()).collect();
    let rank = if consts.is_empty() { 0 } else { Matrix::from_columns(t.n(), &consts).rank() };
    rep.push(Check::from_option(
        "regularity_m",
        (rank < d.m.len()).then(|| format!("constant parts of the m fields have rank {rank} < {}", d.m.len())),
    ));

    rep.push(Check::from_option("representation", representation_violation(g, t)));
    rep
}

/// First basis pair where `[T_a, T_b] ≠ T_[X_a, X_b]` on degrees below the
/// truncation degree.
pub fn representation_violation(g: &LieAlgebra, t: &NonlinearRep) -> Option<String> {
    let k = t.degree().saturating_sub(1);
    let dim = g.dim();
    for a in 0..dim {
        for b in a + 1..dim {
            let lhs = match bracket(t.field(a), t.field(b)) {
                Ok(x) => x.truncate(k),
                Err(e) => return Some(e.to_string()),
            };
            let rhs = t.combination(g.basis_bracket(a, b)).truncate(k);
            if let Some((key, x, y)) = lhs.first_difference(&rhs) {
                return Some(format!(
                    "[T_{a}, T_{b}] differs from T_[{a}, {b}] at degree {} on {}: {} vs {}",
                    key.degree(),
                    render_key(&key),
                    x,
                    y,
                    a = g.name(a),
                    b = g.name(b),
                ));
            }
        }
    }
    None
}

/// `ad X_a` on all of `𝔤` for each `a` in `subset`; entry `(c, b)` is `C^c_{ab}`.
pub fn adjoint_matrices(g: &LieAlgebra, subset: &[usize]) -> Result<Vec<Matrix>> {
    let d = g.dim();
    subset
        .iter()
        .map(|&a| {
            if a >= d {
                return Err(Error::IndexOutOfRange(format!("basis index {a} in a {d}-dimensional algebra")));
            }
            let mut m = Matrix::zeros(d, d);
            for b in 0..d {
                for c in 0..d {
                    m[(c, b)] = g.structure_constant(a, b, c).clone();
                }
            }
            Ok(m)
        })
        .collect()
}

/// Basis change making a family of matrices upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangularization {
    /// Columns are the new basis: `basis⁻¹ · A · basis` is upper triangular.
    pub basis: Matrix,
    pub basis_inverse: Matrix,
    /// `forms[i]` lists the `i`-th diagonal entry of each conjugated matrix.
    pub forms: Vec<LinearForm>,
}

fn is_eigenvector(a: &Matrix, v: &[Gr]) -> bool {
    let av = a.mul_vec(v);
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let lambda = &av[k] / &v[k];
    av.iter().zip(v).all(|(x, y)| *x == &lambda * y)
}

/// Depth-first search over eigenvalue choices for a common eigenvector.
fn common_eigenvector(mats: &[Matrix], space: Vec<Vec<Gr>>, depth: usize) -> Result<Option<Vec<Gr>>> {
    if space.is_empty() {
        return Ok(None);
    }
    if depth == mats.len() {
        return Ok(Some(space[0].clone()));
    }
    let a = &mats[depth];
    let n = a.rows();
    let s = Matrix::from_columns(n, &space);
    for lambda in a.distinct_eigenvalues()? {
        let shifted = a.sub(&Matrix::identity(n).scale(&lambda));
        let coeffs = shifted.mul(&s).kernel();
        let sub: Vec<Vec<Gr>> = coeffs.iter().map(|c| s.mul_vec(c)).collect();
        if let Some(v) = common_eigenvector(mats, sub, depth + 1)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn triangularize_basis(mats: &[Matrix], n: usize) -> Result<Matrix> {
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let mut e1 = vec![Gr::zero(); n];
    e1[0] = Gr::one();
    let v = if mats.iter().all(|a| is_eigenvector(a, &e1)) {
        e1
    } else {
        let whole: Vec<Vec<Gr>> = (0..n)
            .map(|k| {
                let mut e = vec![Gr::zero(); n];
                e[k] = Gr::one();
                e
            })
            .collect();
        common_eigenvector(mats, whole, 0)?.ok_or_else(|| {
            Error::NotSimultaneouslyTriangularizable(format!("no common eigenvector in dimension {n}"))
        })?
    };
    let mut cols = vec![v.clone()];
    cols.extend(complete_basis(n, &[v]));
    let q = Matrix::from_columns(n, &cols);
    let qi = q.inverse().expect("completed basis is invertible");
    let rest: Vec<Matrix> = mats.iter().map(|a| qi.mul(&a.mul(&q)).block(1, n, 1, n)).collect();
    let inner = triangularize_basis(&rest, n - 1)?;
    Ok(q.mul(&Matrix::block_diag(&Matrix::identity(1), &inner)))
}

/// Finds a basis in which every matrix is upper triangular, by repeated
/// common-eigenvector extraction. When the standard first basis vector is
/// already a common eigenvector it is kept, so triangular input is left alone.
pub fn simultaneous_triangularize(mats: &[Matrix]) -> Result<Triangularization> {
    let n = mats.first().map_or(0, Matrix::rows);
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    let basis = if mats.is_empty() { Matrix::identity(0) } else { triangularize_basis(mats, n)? };
    let basis_inverse = basis.inverse().expect("triangularizing basis is invertible");
    let conj: Vec<Matrix> = mats.iter().map(|a| basis_inverse.mul(&a.mul(&basis))).collect();
    if let Some(k) = conj.iter().position(|c| !c.is_upper_triangular()) {
        return Err(Error::NotSimultaneouslyTriangularizable(format!(
            "matrix {k} is not triangular after conjugation"
        )));
    }
    let forms = (0..n).map(|i| LinearForm(conj.iter().map(|c| c[(i, i)].clone()).collect())).collect();
    Ok(Triangularization { basis, basis_inverse, forms })
}

/// Sorts and deduplicates forms in canonical order.
pub fn canonical_forms(mut forms: Vec<LinearForm>) -> Vec<LinearForm> {
    forms.sort_by(|a, b| a.canonical_cmp(b));
    forms.dedup();
    forms
}

/// Weights of the adjoint action of `𝔯` on `𝔤`, with the zero form always
/// included when `𝔯 ≠ 0`.
pub fn roots_of_radical(g: &LieAlgebra, d: &Decomposition) -> Result<Vec<LinearForm>> {
    if d.r.is_empty() {
        return Ok(Vec::new());
    }
    let tri = simultaneous_triangularize(&adjoint_matrices(g, &d.r)?)?;
    let mut forms = tri.forms;
    forms.push(LinearForm::zero(d.r.len()));
    Ok(canonical_forms(forms))
}

/// Triangularizing coordinates and the spectral forms of `𝔯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub p: usize,
    pub q: usize,
    /// Block-diagonal linear change, new coordinates `change · old`.
    pub change: Matrix,
    /// Diagonal forms of the `x`-block linear parts.
    pub mu: Vec<LinearForm>,
    /// Diagonal forms of the `y`-block linear parts.
    pub nu: Vec<LinearForm>,
    pub roots: Vec<LinearForm>,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn rank(&self) -> usize {
        self.roots.first().map_or(0, LinearForm::dim)
    }

    /// `(μ_1, …, μ_p, ν_1, …, ν_q)`.
    pub fn lambdas(&self) -> Vec<LinearForm> {
        self.mu.iter().chain(&self.nu).cloned().collect()
    }

    pub fn values_at(&self, x0: &[Gr]) -> Vec<Gr> {
        self.lambdas().iter().map(|f| f.eval(x0)).collect()
    }
}

/// Triangularizes the `x`-block and `y`-block linear parts of the `𝔯`
/// fields of a straightened representation and collects the spectral forms.
pub fn spectral_data(g: &LieAlgebra, d: &Decomposition, rep: &NonlinearRep, p: usize) -> Result<SpectralData> {
    let n = rep.n();
    let q = n - p;
    let lin: Vec<Matrix> = d.r.iter().map(|&a| rep.field(a).linear_matrix()).collect();
    let ks: Vec<Matrix> = lin.iter().map(|m| m.block(0, p, 0, p)).collect();
    let hs: Vec<Matrix> = lin.iter().map(|m| m.block(p, n, p, n)).collect();
    let tx = simultaneous_triangularize(&ks)?;
    let ty = simultaneous_triangularize(&hs)?;
    let change = Matrix::block_diag(&tx.basis_inverse, &ty.basis_inverse);
    let (mu, nu) = if d.r.is_empty() { (Vec::new(), Vec::new()) } else { (tx.forms, ty.forms) };
    let change = if change.rows() == n { change } else { Matrix::identity(n) };
    Ok(SpectralData { p, q, change, mu, nu, roots: roots_of_radical(g, d)? })
}
