//! Small dense matrices over ℚ(i) and exact eigenvalue extraction.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gr>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Gr::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Gr::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gr>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Gr>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Gr::from_integer(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Gr] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Gr> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Gr>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Gr]) -> Vec<Gr> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Gr::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Gr) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Gr {
        let mut t = Gr::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn diagonal(&self) -> Vec<Gr> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m[(i - r0, j - c0)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Gr>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Gr::zero(); self.cols];
                v[f] = Gr::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::identity(0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn determinant(&self) -> Gr {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Gr::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Gr::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        det
    }

    /// Solves `self · x = b` with free variables set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Gr]) -> Option<Vec<Gr>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in b.iter().enumerate() {
            aug[(i, self.cols)] = v.clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Gr::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Coefficients of `det(z·I − self)`, constant term first.
    pub fn char_poly(&self) -> Vec<Gr> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Gr::zero(); n + 1];
        coeffs[n] = Gr::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n + 1 - k];
            }
            let t = self.mul(&next).trace();
            coeffs[n - k] = -(&t / &Gr::from_usize(k));
            m = next;
        }
        coeffs
    }

    /// Eigenvalues with multiplicity. Triangular matrices are read off
    /// directly; anything else goes through the characteristic polynomial.
    pub fn eigenvalues(&self) -> Result<Vec<Gr>> {
        assert!(self.is_square());
        if self.is_upper_triangular() || self.is_lower_triangular() {
            return Ok(self.diagonal());
        }
        gaussian_rational_roots(&self.char_poly())
    }

    /// Distinct eigenvalues in a deterministic order.
    pub fn distinct_eigenvalues(&self) -> Result<Vec<Gr>> {
        let mut out: Vec<Gr> = Vec::new();
        for v in self.eigenvalues()? {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Gr;
    fn index(&self, (i, j): (usize, usize)) -> &Gr {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gr {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Completes `vectors` (assumed independent) to a basis of ℚ(i)^n using
/// standard basis vectors, scanned in index order.
pub fn complete_basis(n: usize, vectors: &[Vec<Gr>]) -> Vec<Vec<Gr>> {
    let mut basis: Vec<Vec<Gr>> = vectors.to_vec();
    let mut added = Vec::new();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![Gr::zero(); n];
        e[k] = Gr::one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        if Matrix::from_columns(n, &trial).rank() == trial.len() {
            basis.push(e.clone());
            added.push(e);
        }
    }
    added
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
    fn divides(&self, target: &Self) -> bool {
        let n = self.norm();
        let conj = GaussInt { re: self.re.clone(), im: -self.im.clone() };
        let p = target.mul(&conj);
        p.re.is_multiple_of(&n) && p.im.is_multiple_of(&n)
    }
}

fn eval(poly: &[GaussInt], z: &GaussInt) -> GaussInt {
    let mut acc = GaussInt::zero();
    for c in poly.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn deflate(poly: &[GaussInt], root: &GaussInt) -> Vec<GaussInt> {
    let d = poly.len() - 1;
    let mut q = vec![GaussInt::zero(); d];
    q[d - 1] = poly[d].clone();
    for k in (1..d).rev() {
        q[k - 1] = poly[k].add(&root.mul(&q[k]));
    }
    q
}

fn divisors(n: &BigInt, limit: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2u32);
    let trial_limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= trial_limit {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1u32;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pw = d.clone();
            for _ in 0..=e {
                if &pw <= limit {
                    next.push(pw.clone());
                }
                pw *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn poly_trim(mut p: Vec<Gr>) -> Vec<Gr> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_eval(p: &[Gr], z: &Gr) -> Gr {
    let mut acc = Gr::zero();
    for c in p.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

fn poly_derivative(p: &[Gr]) -> Vec<Gr> {
    let d: Vec<Gr> = p.iter().enumerate().skip(1).map(|(k, c)| c * &Gr::from_usize(k)).collect();
    if d.is_empty() {
        vec![Gr::zero()]
    } else {
        poly_trim(d)
    }
}

/// Quotient and remainder; `b` must have a nonzero leading coefficient.
fn poly_divmod(a: &[Gr], b: &[Gr]) -> (Vec<Gr>, Vec<Gr>) {
    let db = b.len() - 1;
    let lead = b[db].inv().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![Gr::zero()], poly_trim(r));
    }
    let mut q = vec![Gr::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * bj);
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    (poly_trim(q), poly_trim(r))
}

fn poly_monic(p: &[Gr]) -> Vec<Gr> {
    let inv = p[p.len() - 1].inv().expect("nonzero leading coefficient");
    p.iter().map(|c| c * &inv).collect()
}

fn poly_gcd(a: &[Gr], b: &[Gr]) -> Vec<Gr> {
    let (mut a, mut b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_divmod(&a, &b).1;
        a = b;
        b = r;
    }
    poly_monic(&a)
}

fn to_complex(z: &Gr) -> Option<Complex64> {
    let c = Complex64::new(z.re().to_f64()?, z.im().to_f64()?);
    (c.re.is_finite() && c.im.is_finite()).then_some(c)
}

/// Simultaneous approximation of all roots of a monic polynomial
/// (Durand-Kerner iteration).
fn approximate_roots(monic: &[Complex64]) -> Vec<Complex64> {
    let d = monic.len() - 1;
    let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * radius / (1.0 + k as f64)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Gaussian rational candidates for the roots, each confirmed by exact
/// evaluation. The roots of the squarefree part `s` are simple, and `L·z` is
/// a Gaussian integer when `L` clears the denominators of the monic `s`.
fn numeric_roots(p: &[Gr]) -> Vec<Gr> {
    let s = poly_monic(&poly_divmod(p, &poly_gcd(p, &poly_derivative(p))).0);
    if s.len() < 2 {
        return Vec::new();
    }
    let Some(cs) = s.iter().map(to_complex).collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    let mut l = BigInt::one();
    for c in &s {
        l = l.lcm(c.re().denom()).lcm(c.im().denom());
    }
    let Some(lf) = l.to_f64() else {
        return Vec::new();
    };
    let mut out: Vec<Gr> = Vec::new();
    for r in approximate_roots(&cs) {
        let w = r * lf;
        let (Some(re), Some(im)) = (BigInt::from_f64(w.re.round()), BigInt::from_f64(w.im.round())) else {
            continue;
        };
        let z = Gr::new(BigRational::new(re, l.clone()), BigRational::new(im, l.clone()));
        if !out.contains(&z) && poly_eval(&s, &z).is_zero() {
            out.push(z);
        }
    }
    out
}

/// All roots in ℚ(i), with multiplicity, of the polynomial with the given
/// coefficients (constant term first). Fails unless the polynomial splits
/// completely over ℚ(i).
pub fn gaussian_rational_roots(coeffs: &[Gr]) -> Result<Vec<Gr>> {
    let mut c: Vec<Gr> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        if c.first().is_none_or(Zero::is_zero) {
            return Err(Error::EigenvalueNotGaussianRational("zero polynomial".into()));
        }
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    while c[0].is_zero() {
        roots.push(Gr::zero());
        c.remove(0);
    }
    for z in numeric_roots(&c) {
        while c.len() > 1 && poly_eval(&c, &z).is_zero() {
            c = poly_divmod(&c, &[-z.clone(), Gr::one()]).0;
            roots.push(z.clone());
        }
    }
    let d = c.len() - 1;
    if d == 0 {
        roots.sort_by(|x, y| x.canonical_cmp(y));
        return Ok(roots);
    }
    let mut lcm = BigInt::one();
    for v in &c {
        lcm = lcm.lcm(v.re().denom()).lcm(v.im().denom());
    }
    let ints: Vec<GaussInt> = c
        .iter()
        .map(|v| GaussInt {
            re: v.re().numer() * (&lcm / v.re().denom()),
            im: v.im().numer() * (&lcm / v.im().denom()),
        })
        .collect();
    // w = a·z turns the polynomial monic with Gaussian-integer coefficients.
    let lead = ints[d].clone();
    let mut g: Vec<GaussInt> = Vec::with_capacity(d + 1);
    let mut lead_pow = GaussInt { re: BigInt::one(), im: BigInt::zero() };
    let mut pows = vec![lead_pow.clone()];
    for _ in 0..d {
        lead_pow = lead_pow.mul(&lead);
        pows.push(lead_pow.clone());
    }
    for (k, coeff) in ints.iter().enumerate().take(d) {
        g.push(coeff.mul(&pows[d - 1 - k]));
    }
    g.push(GaussInt { re: BigInt::one(), im: BigInt::zero() });

    let g0 = g[0].clone();
    let norm = g0.norm();
    let mut bound = BigInt::zero();
    for coeff in &g[..d] {
        let r = coeff.norm().sqrt() + 1u32;
        if r > bound {
            bound = r;
        }
    }
    bound += 1u32;
    if bound > BigInt::from(10_000_000u64) {
        return Err(Error::EigenvalueNotGaussianRational(format!(
            "coefficients too large for exact root search (bound {bound})"
        )));
    }
    let limit = &bound * &bound;
    let mut candidates = Vec::new();
    for dv in divisors(&norm, &limit) {
        let top = dv.sqrt();
        let mut u = BigInt::zero();
        while u <= top {
            let rest = &dv - &u * &u;
            let v = rest.sqrt();
            if &v * &v == rest {
                for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let w = GaussInt { re: &u * su, im: &v * sv };
                    if !candidates.contains(&w) {
                        candidates.push(w);
                    }
                }
            }
            u += 1u32;
        }
    }
    let lead_q = Gr::new(
        num_rational::BigRational::from_integer(lead.re.clone()),
        num_rational::BigRational::from_integer(lead.im.clone()),
    );
    let mut poly = g;
    for w in candidates {
        if poly.len() == 1 {
            break;
        }
        if !w.divides(&g0) {
            continue;
        }
        while poly.len() > 1 && eval(&poly, &w).is_zero() {
            poly = deflate(&poly, &w);
            let wq = Gr::new(
                num_rational::BigRational::from_integer(w.re.clone()),
                num_rational::BigRational::from_integer(w.im.clone()),
            );
            roots.push(&wq / &lead_q);
        }
    }
    if poly.len() > 1 {
        let shown: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        return Err(Error::EigenvalueNotGaussianRational(format!(
            "polynomial with coefficients [{}] does not split over Q(i)",
            shown.join(", ")
        )));
    }
    roots.sort_by(|x, y| x.canonical_cmp(y));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Gr {
        Gr::frac(n, d)
    }

    #[test]
    fn inverse_and_solve() {
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let x = a.solve(&[q(3, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(1, 1)]);
        let sing = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[q(1, 1), q(2, 1)]).is_none());
        assert_eq!(sing.kernel(), vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn determinant_and_char_poly() {
        let a = Matrix::from_i64(&[&[0, 1], &[-2, -3]]);
        assert_eq!(a.determinant(), q(2, 1));
        // z² + 3z + 2
        assert_eq!(a.char_poly(), vec![q(2, 1), q(3, 1), q(1, 1)]);
        let mut ev = a.eigenvalues().unwrap();
        ev.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(ev, vec![q(-2, 1), q(-1, 1)]);
    }

    #[test]
    fn rational_and_gaussian_roots() {
        // (2z − 1)(z + 3)² = 2z³ + 11z² + 12z − 9
        let mut r = gaussian_rational_roots(&[q(-9, 1), q(12, 1), q(11, 1), q(2, 1)]).unwrap();
        r.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(r, vec![q(-3, 1), q(-3, 1), q(1, 2)]);
        // z² + 1/4 → ±i/2
        let r = gaussian_rational_roots(&[q(1, 4), q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(r.len(), 2);
        for z in r {
            assert_eq!(&z * &z, q(-1, 4));
        }
    }

    #[test]
    fn roots_with_large_denominators() {
        let want = vec![q(-5, 9), q(-5, 9), q(-5, 9), q(7, 8), &q(3, 7) + &(&Gr::i() * &q(2, 5))];
        let mut poly = vec![Gr::one()];
        for z in &want {
            let mut next = vec![Gr::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * z);
            }
            poly = next;
        }
        let mut r = gaussian_rational_roots(&poly).unwrap();
        let mut want = want;
        want.sort_by(|x, y| x.canonical_cmp(y));
        r.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(r, want);
    }

    #[test]
    fn irrational_roots_rejected() {
        let err = gaussian_rational_roots(&[q(-2, 1), q(0, 1), q(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::EigenvalueNotGaussianRational(_)));
    }

    #[test]
    fn basis_completion_is_greedy() {
        let v = vec![vec![q(1, 1), q(1, 1)]];
        assert_eq!(complete_basis(2, &v), vec![vec![q(1, 1), q(0, 1)]]);
    }
}
