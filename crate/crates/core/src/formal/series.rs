//! Truncated multivariate power series with trusted-degree bookkeeping.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;

use super::MultiIndex;
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

/// A scalar power series in `nvars` variables whose coefficients are exact
/// up to and including total degree `trusted`. Nothing above that degree is
/// stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    nvars: usize,
    trusted: usize,
    terms: BTreeMap<MultiIndex, Gr>,
}

impl Series {
    pub fn zero(nvars: usize, trusted: usize) -> Self {
        Series { nvars, trusted, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, trusted: usize, c: Gr) -> Self {
        let mut s = Series::zero(nvars, trusted);
        s.add_term(MultiIndex::zero(nvars), &c);
        s
    }

    pub fn variable(nvars: usize, trusted: usize, i: usize) -> Self {
        let mut s = Series::zero(nvars, trusted);
        s.add_term(MultiIndex::unit(nvars, i), &Gr::from_integer(1));
        s
    }

    pub fn from_terms<I>(nvars: usize, trusted: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Gr)>,
    {
        let mut s = Series::zero(nvars, trusted);
        for (a, c) in terms {
            s.add_term(a, &c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trusted(&self) -> usize {
        self.trusted
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Gr> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Gr {
        self.terms.get(alpha).cloned().unwrap_or_else(Gr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulates `c·x^α`; terms above the trusted degree are discarded.
    pub fn add_term(&mut self, alpha: MultiIndex, c: &Gr) {
        assert_eq!(alpha.len(), self.nvars, "multi-index length mismatch");
        if c.is_zero() || alpha.degree() > self.trusted {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Lowest degree that may carry a nonzero coefficient: the smallest
    /// stored degree, or `trusted + 1` when nothing is stored.
    pub fn low_degree(&self) -> usize {
        self.terms.keys().next().map_or(self.trusted + 1, MultiIndex::degree)
    }

    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).find(|&d| d > 0)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    pub fn constant_term(&self) -> Gr {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// Drops terms above `t` and lowers the trusted degree to `min(trusted, t)`.
    pub fn truncate(&self, t: usize) -> Series {
        let trusted = self.trusted.min(t);
        Series {
            nvars: self.nvars,
            trusted,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() <= trusted)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets the trusted degree outright, discarding anything above it. Used
    /// for objects known exactly, such as polynomial factors.
    pub fn with_trusted(mut self, t: usize) -> Series {
        self.trusted = t;
        self.terms.retain(|a, _| a.degree() <= t);
        self
    }

    pub fn degree_part(&self, k: usize) -> Series {
        Series {
            nvars: self.nvars,
            trusted: self.trusted,
            terms: self.terms.iter().filter(|(a, _)| a.degree() == k).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.truncate(other.trusted);
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.truncate(other.trusted);
        for (a, c) in &other.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &Gr) -> Series {
        if c.is_zero() {
            return Series::zero(self.nvars, self.trusted);
        }
        Series {
            nvars: self.nvars,
            trusted: self.trusted,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        self.scale(&Gr::from_integer(-1))
    }

    /// Product; exact up to `min(ta + low(b), tb + low(a))`.
    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.nvars, other.nvars);
        let trusted = (self.trusted + other.low_degree()).min(other.trusted + self.low_degree());
        let mut out = Series::zero(self.nvars, trusted);
        mul_into(&mut out, self, other, trusted);
        out
    }

    /// `∂/∂x_j`; one degree of trust is lost.
    pub fn derivative(&self, j: usize) -> Series {
        let mut out = Series::zero(self.nvars, self.trusted.saturating_sub(1));
        for (a, c) in &self.terms {
            let e = a.get(j);
            if let Some(b) = a.minus_unit(j) {
                out.add_term(b, &(c * &Gr::from_integer(e as i64)));
            }
        }
        out
    }

    /// Multiplies by `c·x^β`; the trusted degree rises by `|β|`.
    pub fn times_monomial(&self, beta: &MultiIndex, c: &Gr) -> Series {
        let mut out = Series::zero(self.nvars, self.trusted + beta.degree());
        for (a, v) in &self.terms {
            out.add_term(a.plus(beta), &(v * c));
        }
        out
    }

    /// True when both agree on every degree up to the smaller trusted degree.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let t = self.trusted.min(other.trusted);
        self.truncate(t).terms == other.truncate(t).terms
    }
}

fn mul_into(out: &mut Series, a: &Series, b: &Series, cap: usize) {
    for (ka, ca) in &a.terms {
        let da = ka.degree();
        if da > cap {
            break;
        }
        for (kb, cb) in &b.terms {
            if da + kb.degree() > cap {
                break;
            }
            out.add_term(ka.plus(kb), &(ca * cb));
        }
    }
}

/// Substitution `f ↦ f(χ_1, …, χ_m)` for a fixed tuple of series with zero
/// constant terms. Powers `χ^α` are cached, so applying the same
/// substitution to many series is cheap.
pub struct Substitution<'a> {
    subs: &'a [Series],
    out_vars: usize,
    low: usize,
    trusted: usize,
    cap: usize,
    cache: HashMap<MultiIndex, Rc<Series>>,
}

impl<'a> Substitution<'a> {
    /// `cap` bounds the degree of every computed term.
    pub fn new(subs: &'a [Series], out_vars: usize, cap: usize) -> Self {
        assert!(subs.iter().all(|s| s.nvars == out_vars), "substitution variable mismatch");
        assert!(subs.iter().all(|s| s.constant_term().is_zero()), "substituted series must vanish at the origin");
        let low = subs.iter().map(Series::low_degree).min().unwrap_or(usize::MAX / 4).max(1);
        let trusted = subs.iter().map(Series::trusted).min().unwrap_or(usize::MAX / 4);
        Substitution { subs, out_vars, low, trusted, cap, cache: HashMap::new() }
    }

    fn power(&mut self, alpha: &MultiIndex) -> Rc<Series> {
        if let Some(p) = self.cache.get(alpha) {
            return Rc::clone(p);
        }
        let result = match (0..alpha.len()).rev().find(|&r| alpha.get(r) > 0) {
            None => Series::constant(self.out_vars, self.cap, Gr::from_integer(1)),
            Some(r) => {
                let prev = self.power(&alpha.minus_unit(r).expect("positive exponent"));
                let mut out = Series::zero(self.out_vars, self.cap);
                mul_into(&mut out, &prev, &self.subs[r], self.cap);
                out
            }
        };
        let rc = Rc::new(result);
        self.cache.insert(alpha.clone(), Rc::clone(&rc));
        rc
    }

    /// Trusted degree of `f(χ)`: unknown terms of `f` land at degree
    /// `≥ (tf+1)·low(χ)`, unknown terms of `χ` at `≥ tχ + 1 + (lo−1)·low(χ)`.
    pub fn trusted_for(&self, f: &Series) -> usize {
        let mut t = (f.trusted + 1).saturating_mul(self.low) - 1;
        if let Some(lo) = f.lowest_nonconstant_degree() {
            t = t.min(self.trusted.saturating_add((lo - 1).saturating_mul(self.low)));
        }
        t.min(self.cap)
    }

    pub fn apply(&mut self, f: &Series) -> Series {
        assert_eq!(f.nvars, self.subs.len(), "substitution arity mismatch");
        let t = self.trusted_for(f);
        let mut out = Series::zero(self.out_vars, t);
        for (alpha, c) in &f.terms {
            if alpha.degree() == 0 {
                out.add_term(MultiIndex::zero(self.out_vars), c);
                continue;
            }
            if alpha.degree().saturating_mul(self.low) > t {
                continue;
            }
            let p = self.power(alpha);
            for (k, v) in &p.terms {
                if k.degree() > t {
                    break;
                }
                out.add_term(k.clone(), &(c * v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Gr {
        Gr::frac(n, d)
    }

    fn uni(coeffs: &[i64], t: usize) -> Series {
        Series::from_terms(1, t, coeffs.iter().enumerate().map(|(k, &c)| (MultiIndex::new(vec![k as u32]), q(c, 1))))
    }

    #[test]
    fn product_trust_accounts_for_low_degree() {
        let a = uni(&[0, 1, 1], 5); // x + x²
        let b = uni(&[1, 1], 5); // 1 + x
        let p = a.mul(&b);
        assert_eq!(p.trusted(), 5);
        assert_eq!(p, uni(&[0, 1, 2, 1], 5));
        let c = uni(&[0, 0, 1], 3); // x², trusted to 3
        assert_eq!(c.mul(&c).trusted(), 5);
    }

    #[test]
    fn derivative_loses_one_degree() {
        let a = uni(&[1, 2, 3], 4);
        let d = a.derivative(0);
        assert_eq!(d.trusted(), 3);
        assert_eq!(d, uni(&[2, 6], 3));
    }

    #[test]
    fn substitution_expands_polynomials() {
        // x² ∘ (x + x²) = x² + 2x³ + x⁴
        let f = uni(&[0, 0, 1], 6);
        let chi = [uni(&[0, 1, 1], 6)];
        let mut s = Substitution::new(&chi, 1, 6);
        assert_eq!(s.apply(&f), uni(&[0, 0, 1, 2, 1], 6));
    }
}
