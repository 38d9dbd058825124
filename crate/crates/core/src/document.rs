//! JSON problem and result documents. Scalars are canonical strings and all
//! indices are zero-based.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::formal::{compose_maps, FormalMap, FormalVectorField, MultiIndex, Series};
use crate::lie::{
    Check, Decomposition, LieAlgebra, LieProblem, LinearForm, NonlinearRep, SpectralData, ValidationReport,
};
use crate::linalg::Matrix;
use crate::normal_form::{verify_normal_form, NormalizationResult};
use crate::resonance::{ResonanceSet, ResonantPair};
use crate::scalar::GaussianRational;
use crate::straighten::StraightenedIdeal;

type Gr = GaussianRational;

pub const RESULT_FORMAT: &str = "lienf-result/1";
pub const STRAIGHTEN_FORMAT: &str = "lienf-straighten/1";
pub const VALIDATION_FORMAT: &str = "lienf-validation/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub a: String,
    pub b: String,
    pub c: String,
    pub coeff: Gr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub names: Vec<String>,
    /// `[a, b] = Σ coeff · c`; the reversed pair follows by antisymmetry.
    pub brackets: Vec<BracketDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDoc {
    pub m: Vec<usize>,
    pub g0: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub target: usize,
    pub coeff: Gr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub n: usize,
    pub degree: usize,
    pub algebra: AlgebraDoc,
    pub decomposition: DecompositionDoc,
    /// Terms of `T_X` per basis name; absent names are zero fields.
    pub representation: BTreeMap<String, Vec<TermDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub trusted_degree: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub alpha: Vec<u32>,
    pub coeff: Gr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub trusted_degree: usize,
    pub components: Vec<Vec<MonomialDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDoc {
    pub p: usize,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageDoc {
    pub name: String,
    pub map: MapDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub stage: String,
    pub degree: usize,
    /// The factor is `I + field`.
    pub field: FieldDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralDoc {
    pub change: Vec<Vec<Gr>>,
    pub mu: Vec<Vec<Gr>>,
    pub nu: Vec<Vec<Gr>>,
    pub roots: Vec<Vec<Gr>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    /// Exponents over the `y`-variables.
    pub alpha: Vec<u32>,
    /// Index within the `x`-block (R, R0) or the `y`-block (R', R0').
    pub target: usize,
    pub form: Vec<Gr>,
    pub root: Vec<Gr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceDoc {
    pub x0: Vec<Gr>,
    #[serde(rename = "R")]
    pub r: Vec<PairDoc>,
    #[serde(rename = "R_prime")]
    pub r_prime: Vec<PairDoc>,
    #[serde(rename = "R0")]
    pub r0: Vec<PairDoc>,
    #[serde(rename = "R0_prime")]
    pub r0_prime: Vec<PairDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    pub format: String,
    pub input_hash: String,
    pub problem: ProblemDoc,
    pub degree: usize,
    pub split: SplitDoc,
    pub a_matrix: Vec<Vec<Gr>>,
    pub stages: Vec<StageDoc>,
    pub factors: Vec<FactorDoc>,
    pub phi_total: MapDoc,
    pub normalized: BTreeMap<String, FieldDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resonance: Option<ResonanceDoc>,
    pub report: ReportDoc,
    pub observations: Vec<String>,
    /// Metadata outside the canonical payload.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stamp: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StraightenDoc {
    pub format: String,
    pub input_hash: String,
    pub split: SplitDoc,
    pub a_matrix: Vec<Vec<Gr>>,
    pub phi: MapDoc,
    pub straightened: BTreeMap<String, FieldDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stamp: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationDoc {
    pub format: String,
    pub input_hash: String,
    pub passed: bool,
    pub report: ReportDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stamp: Option<String>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn check_alpha(alpha: &[u32], n: usize, what: &str) -> Result<MultiIndex> {
    if alpha.len() != n {
        return Err(doc_err(format!("{what}: alpha {alpha:?} has length {} instead of {n}", alpha.len())));
    }
    Ok(MultiIndex::new(alpha.to_vec()))
}

fn field_from_terms(terms: &[TermDoc], n: usize, trusted: usize, what: &str) -> Result<FormalVectorField> {
    let mut seen = BTreeSet::new();
    let mut f = FormalVectorField::zero(n, trusted);
    for t in terms {
        let alpha = check_alpha(&t.alpha, n, what)?;
        if t.target >= n {
            return Err(doc_err(format!("{what}: target {} out of range for n = {n}", t.target)));
        }
        if !seen.insert((alpha.clone(), t.target)) {
            return Err(doc_err(format!("{what}: duplicate term {alpha:?} -> {}", t.target)));
        }
        if alpha.degree() > trusted {
            return Err(doc_err(format!("{what}: term {alpha:?} exceeds degree {trusted}")));
        }
        f.add_term(alpha, t.target, &t.coeff);
    }
    Ok(f)
}

fn terms_of(f: &FormalVectorField) -> Vec<TermDoc> {
    f.terms()
        .iter()
        .map(|(k, c)| TermDoc { alpha: k.alpha.exponents().to_vec(), target: k.target, coeff: c.clone() })
        .collect()
}

impl FieldDoc {
    pub fn from_field(f: &FormalVectorField) -> Self {
        FieldDoc { trusted_degree: f.trusted(), terms: terms_of(f) }
    }

    pub fn to_field(&self, n: usize, what: &str) -> Result<FormalVectorField> {
        field_from_terms(&self.terms, n, self.trusted_degree, what)
    }
}

impl MapDoc {
    pub fn from_map(m: &FormalMap) -> Self {
        MapDoc {
            trusted_degree: m.trusted(),
            components: m
                .components()
                .iter()
                .map(|c| {
                    c.terms()
                        .iter()
                        .map(|(a, v)| MonomialDoc { alpha: a.exponents().to_vec(), coeff: v.clone() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_map(&self, n: usize, what: &str) -> Result<FormalMap> {
        if self.components.len() != n {
            return Err(doc_err(format!("{what}: {} components for n = {n}", self.components.len())));
        }
        let mut comps = Vec::with_capacity(n);
        for (i, c) in self.components.iter().enumerate() {
            let mut s = Series::zero(n, self.trusted_degree);
            let mut seen = BTreeSet::new();
            for m in c {
                let alpha = check_alpha(&m.alpha, n, what)?;
                if alpha.degree() == 0 {
                    return Err(doc_err(format!("{what}: component {i} has a constant term")));
                }
                if alpha.degree() > self.trusted_degree {
                    return Err(doc_err(format!("{what}: term {alpha:?} exceeds degree {}", self.trusted_degree)));
                }
                if !seen.insert(alpha.clone()) {
                    return Err(doc_err(format!("{what}: duplicate monomial {alpha:?}")));
                }
                s.add_term(alpha, &m.coeff);
            }
            comps.push(s);
        }
        FormalMap::from_components(comps)
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Gr>> {
    m.to_rows()
}

fn pair_doc(p: &ResonantPair) -> PairDoc {
    PairDoc {
        alpha: p.alpha.exponents().to_vec(),
        target: p.target,
        form: p.form.coeffs().to_vec(),
        root: p.root.coeffs().to_vec(),
    }
}

impl ResonanceDoc {
    pub fn new(x0: &[Gr], sets: &ResonanceSet) -> Self {
        ResonanceDoc {
            x0: x0.to_vec(),
            r: sets.r.iter().map(pair_doc).collect(),
            r_prime: sets.r_prime.iter().map(pair_doc).collect(),
            r0: sets.r0.iter().map(pair_doc).collect(),
            r0_prime: sets.r0_prime.iter().map(pair_doc).collect(),
        }
    }
}

impl SpectralDoc {
    pub fn new(s: &SpectralData) -> Self {
        let forms = |v: &[LinearForm]| v.iter().map(|f| f.coeffs().to_vec()).collect();
        SpectralDoc { change: matrix_rows(&s.change), mu: forms(&s.mu), nu: forms(&s.nu), roots: forms(&s.roots) }
    }
}

impl ReportDoc {
    pub fn new(r: &ValidationReport) -> Self {
        ReportDoc {
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc { name: c.name.clone(), passed: c.passed, witness: c.witness.clone() })
                .collect(),
        }
    }

    pub fn to_report(&self) -> ValidationReport {
        ValidationReport {
            checks: self
                .checks
                .iter()
                .map(|c| Check { name: c.name.clone(), passed: c.passed, witness: c.witness.clone() })
                .collect(),
        }
    }
}

impl ProblemDoc {
    /// Builds the problem, checking indices, lengths and duplicates. The
    /// mathematical hypotheses are left to validation.
    pub fn to_problem(&self) -> Result<LieProblem> {
        let a = &self.algebra;
        if a.dim != a.names.len() {
            return Err(doc_err(format!("algebra dim {} but {} names", a.dim, a.names.len())));
        }
        if self.n == 0 {
            return Err(doc_err("n must be positive"));
        }
        if self.degree == 0 {
            return Err(doc_err("degree must be at least 1"));
        }
        if a.names.iter().collect::<BTreeSet<_>>().len() != a.dim {
            return Err(doc_err("basis names are not distinct"));
        }
        let index = |name: &str| {
            a.names.iter().position(|x| x == name).ok_or_else(|| doc_err(format!("unknown basis name {name:?}")))
        };
        let mut g = LieAlgebra::new(a.names.clone());
        let mut explicit: BTreeMap<(usize, usize, usize), Gr> = BTreeMap::new();
        for br in &a.brackets {
            let key = (index(&br.a)?, index(&br.b)?, index(&br.c)?);
            if explicit.insert(key, br.coeff.clone()).is_some() {
                return Err(doc_err(format!("duplicate bracket entry [{}, {}] -> {}", br.a, br.b, br.c)));
            }
        }
        for (&(x, y, z), v) in &explicit {
            g.set_structure_constant(x, y, z, v.clone());
            if !explicit.contains_key(&(y, x, z)) {
                g.set_structure_constant(y, x, z, -v);
            }
        }
        let d = &self.decomposition;
        for (set, name) in [(&d.m, "m"), (&d.g0, "g0"), (&d.r, "r"), (&d.s, "s")] {
            if let Some(&i) = set.iter().find(|&&i| i >= a.dim) {
                return Err(doc_err(format!("decomposition.{name} index {i} out of range")));
            }
        }
        for name in self.representation.keys() {
            index(name)?;
        }
        let mut fields = Vec::with_capacity(a.dim);
        for name in &a.names {
            let terms = self.representation.get(name).map(Vec::as_slice).unwrap_or(&[]);
            let f = field_from_terms(terms, self.n, usize::MAX, &format!("representation.{name}"))?;
            fields.push(f.truncate(self.degree).with_trusted(self.degree));
        }
        Ok(LieProblem {
            algebra: g,
            decomposition: Decomposition { m: d.m.clone(), g0: d.g0.clone(), r: d.r.clone(), s: d.s.clone() },
            rep: NonlinearRep::new(self.n, self.degree, fields)?,
        })
    }

    /// Canonical document of a problem: brackets with `a < b` in index
    /// order, terms in monomial order.
    pub fn from_problem(p: &LieProblem) -> Self {
        let g = &p.algebra;
        let mut brackets = Vec::new();
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                for c in 0..g.dim() {
                    let v = g.structure_constant(a, b, c);
                    if !num_traits::Zero::is_zero(v) {
                        brackets.push(BracketDoc {
                            a: g.name(a).to_string(),
                            b: g.name(b).to_string(),
                            c: g.name(c).to_string(),
                            coeff: v.clone(),
                        });
                    }
                }
            }
        }
        let d = &p.decomposition;
        ProblemDoc {
            n: p.n(),
            degree: p.degree(),
            algebra: AlgebraDoc { dim: g.dim(), names: g.names().to_vec(), brackets },
            decomposition: DecompositionDoc { m: d.m.clone(), g0: d.g0.clone(), r: d.r.clone(), s: d.s.clone() },
            representation: (0..g.dim()).map(|a| (g.name(a).to_string(), terms_of(p.rep.field(a)))).collect(),
        }
    }

    /// SHA-256 of the compact canonical serialization.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("documents serialize");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Reads a problem document, optionally overriding the degree, and returns
/// the problem with its canonical document.
pub fn load_problem(text: &str, degree: Option<usize>) -> Result<(LieProblem, ProblemDoc)> {
    let mut doc: ProblemDoc = serde_json::from_str(text)?;
    if let Some(k) = degree {
        doc.degree = k;
    }
    let p = doc.to_problem()?;
    Ok((p.clone(), ProblemDoc::from_problem(&p)))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn named_fields(g: &LieAlgebra, rep: &NonlinearRep) -> BTreeMap<String, FieldDoc> {
    (0..g.dim()).map(|a| (g.name(a).to_string(), FieldDoc::from_field(rep.field(a)))).collect()
}

impl ResultDoc {
    pub fn new(problem: &ProblemDoc, g: &LieAlgebra, r: &NormalizationResult) -> Self {
        ResultDoc {
            format: RESULT_FORMAT.to_string(),
            input_hash: problem.hash(),
            problem: problem.clone(),
            degree: problem.degree,
            split: SplitDoc { p: r.p, q: r.q },
            a_matrix: matrix_rows(&r.a_matrix),
            stages: r.stages.iter().map(|(n, m)| StageDoc { name: n.to_string(), map: MapDoc::from_map(m) }).collect(),
            factors: r
                .factors
                .iter()
                .map(|f| FactorDoc {
                    stage: f.stage.to_string(),
                    degree: f.degree,
                    field: FieldDoc::from_field(&f.field),
                })
                .collect(),
            phi_total: MapDoc::from_map(&r.phi_total),
            normalized: named_fields(g, &r.normalized),
            spectral: r.spectral.as_ref().map(SpectralDoc::new),
            resonance: match (&r.x0, &r.resonance) {
                (Some(x0), Some(sets)) => Some(ResonanceDoc::new(x0, sets)),
                _ => None,
            },
            report: ReportDoc::new(&r.report),
            observations: r.observations.clone(),
            stamp: None,
        }
    }

    /// Re-certifies a result from scratch: input hash, stage maps, factors,
    /// and every clause of the normal form against the embedded problem.
    pub fn verify(&self) -> Result<ValidationReport> {
        if self.format != RESULT_FORMAT {
            return Err(doc_err(format!("unsupported format {:?}", self.format)));
        }
        let problem = self.problem.to_problem()?;
        let n = problem.n();
        let mut report = ValidationReport::default();
        let canonical = ProblemDoc::from_problem(&problem);
        report.push(Check::from_option(
            "input_hash",
            (canonical.hash() != self.input_hash || canonical != self.problem).then(|| {
                format!("embedded problem hashes to {}, document records {}", canonical.hash(), self.input_hash)
            }),
        ));
        report.push(Check::from_option(
            "degree",
            (self.degree != problem.degree())
                .then(|| format!("degree {} vs problem degree {}", self.degree, problem.degree())),
        ));
        let g = &problem.algebra;
        let names: BTreeSet<&String> = g.names().iter().collect();
        if self.normalized.keys().collect::<BTreeSet<_>>() != names {
            report.push(Check::fail("normalized_names", "normalized fields do not match the basis names"));
            return Ok(report);
        }
        let mut fields = Vec::with_capacity(g.dim());
        for name in g.names() {
            fields.push(self.normalized[name].to_field(n, &format!("normalized.{name}"))?);
        }
        let normalized = NonlinearRep::new(n, problem.degree(), fields)?;
        let mut stages = Vec::with_capacity(self.stages.len());
        for s in &self.stages {
            stages.push((s.name.clone(), s.map.to_map(n, &format!("stage {}", s.name))?));
        }
        let phi_total = self.phi_total.to_map(n, "phi_total")?;
        let expected: Vec<&str> = vec!["straighten", "triangularize", "normalize_radical", "linearize_semisimple"];
        report.push(Check::from_option(
            "stage_names",
            (stages.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>() != expected)
                .then(|| format!("stages must be {expected:?}")),
        ));
        report.push(Check::from_option("factors", self.factor_violation(&stages, n, problem.degree())?));
        let split_ok = self.split.p == problem.decomposition.m.len() && self.split.p + self.split.q == n;
        report.push(Check::from_option("split", (!split_ok).then(|| "split does not match the ideal".to_string())));
        let constants: Vec<Vec<Gr>> = (0..self.split.p.min(n))
            .map(|i| {
                problem.decomposition.m.iter().map(|&a| normalized.field(a).constant_vector()[i].clone()).collect()
            })
            .collect();
        report.push(Check::from_option(
            "a_matrix",
            (constants != self.a_matrix).then(|| "a_matrix differs from the constants of the ideal fields".to_string()),
        ));
        for c in verify_normal_form(&problem, &stages, &phi_total, &normalized).checks {
            report.push(c);
        }
        Ok(report)
    }

    fn factor_violation(&self, stages: &[(String, FormalMap)], n: usize, k: usize) -> Result<Option<String>> {
        for (name, map) in stages.iter().filter(|(n, _)| n == "normalize_radical" || n == "linearize_semisimple") {
            let mut acc = FormalMap::identity(n, k);
            for f in self.factors.iter().filter(|f| &f.stage == name) {
                let w = f.field.to_field(n, "factor")?;
                if let Some(bad) = w.terms().keys().find(|key| key.degree() != f.degree) {
                    return Ok(Some(format!(
                        "{name} factor of degree {} has a term of degree {}",
                        f.degree,
                        bad.degree()
                    )));
                }
                acc = compose_maps(&FormalMap::identity_plus(&w, k)?, &acc)?;
            }
            if !acc.agrees_with(map) {
                return Ok(Some(format!("factors of {name} do not compose to its stage map")));
            }
        }
        if let Some(f) =
            self.factors.iter().find(|f| f.stage != "normalize_radical" && f.stage != "linearize_semisimple")
        {
            return Ok(Some(format!("factor attached to unknown stage {:?}", f.stage)));
        }
        Ok(None)
    }
}

impl StraightenDoc {
    pub fn new(problem: &ProblemDoc, g: &LieAlgebra, s: &StraightenedIdeal) -> Self {
        StraightenDoc {
            format: STRAIGHTEN_FORMAT.to_string(),
            input_hash: problem.hash(),
            split: SplitDoc { p: s.p, q: s.q },
            a_matrix: matrix_rows(&s.a_matrix),
            phi: MapDoc::from_map(&s.phi),
            straightened: named_fields(g, &s.rep),
            stamp: None,
        }
    }
}

impl ValidationDoc {
    pub fn new(problem: &ProblemDoc, r: &ValidationReport) -> Self {
        ValidationDoc {
            format: VALIDATION_FORMAT.to_string(),
            input_hash: problem.hash(),
            passed: r.passed(),
            report: ReportDoc::new(r),
            stamp: None,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

fn render_rows(rows: &[Vec<Gr>]) -> String {
    rows.iter().map(|r| format!("  [{}]\n", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect()
}

fn render_fields(out: &mut String, g: &LieAlgebra, rep: &NonlinearRep) {
    for a in 0..g.dim() {
        let f = rep.field(a);
        out.push_str(&format!("T_{} (trusted to degree {}):\n", g.name(a), f.trusted()));
        for line in f.render().lines() {
            out.push_str(&format!("  {line}\n"));
        }
    }
}

/// Human-readable rendering of a normalization result.
pub fn render_result(g: &LieAlgebra, r: &NormalizationResult) -> String {
    let mut s = format!("split: p = {}, q = {}\n", r.p, r.q);
    s.push_str("a matrix:\n");
    s.push_str(&render_rows(&r.a_matrix.to_rows()));
    if let Some(x0) = &r.x0 {
        s.push_str(&format!(
            "resonance vector: [{}]\n",
            x0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ));
    }
    if let Some(sets) = &r.resonance {
        for (label, v) in [("R", &sets.r), ("R'", &sets.r_prime), ("R0", &sets.r0), ("R0'", &sets.r0_prime)] {
            s.push_str(&format!("{label}:\n"));
            for p in v {
                s.push_str(&format!("  {p}\n"));
            }
        }
    }
    s.push_str("normal form:\n");
    render_fields(&mut s, g, &r.normalized);
    for f in &r.factors {
        s.push_str(&format!(
            "factor {} degree {}: I + {}\n",
            f.stage,
            f.degree,
            f.field.render().trim_end().replace('\n', " + ")
        ));
    }
    s.push_str("phi_total:\n");
    s.push_str(&r.phi_total.render());
    s.push_str("report:\n");
    s.push_str(&r.report.render());
    for o in &r.observations {
        s.push_str(&format!("note: {o}\n"));
    }
    s
}

pub fn render_straightened(g: &LieAlgebra, st: &StraightenedIdeal) -> String {
    let mut s = format!("split: p = {}, q = {}\na matrix:\n", st.p, st.q);
    s.push_str(&render_rows(&st.a_matrix.to_rows()));
    s.push_str("phi:\n");
    s.push_str(&st.phi.render());
    s.push_str("straightened:\n");
    render_fields(&mut s, g, &st.rep);
    s
}
