//! Sparse multivariate polynomials over a coefficient [`Field`].
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is the lexicographic term order induced by the declared variable
//! order. The leading term is the lexicographically largest exponent vector.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};
use crate::univariate::UniPoly;

/// An ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F: Field> {
    vars: Vars,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: &Vars, c: F) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The polynomial `x_k`.
    pub fn var(vars: &Vars, k: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        Self::monomial(vars, e, F::one())
    }

    pub fn monomial(vars: &Vars, exps: Monomial, c: F) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: F) {
        debug_assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0)))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&vec![0; self.nvars()]).cloned().unwrap_or_else(F::zero)
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<F> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> F {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, k: usize) -> bool {
        self.terms.keys().any(|e| e[k] > 0)
    }

    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&k| self.uses_var(k)).collect()
    }

    fn check_ring(&self, other: &Self) {
        assert!(self.vars == other.vars, "variable lists differ: {:?} vs {:?}", self.vars, other.vars);
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c.clone() * &F::from_i64(e[k] as i64));
        }
        out
    }

    /// Divide by the lexicographic leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Square-free factor normal form (see [`Field::factor_normal_scale`]).
    pub fn factor_normal(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let cs: Vec<&F> = self.terms.values().collect();
        self.scale(&F::factor_normal_scale(&cs, &self.leading_coeff()))
    }

    /// Coefficients with respect to `x_k`: entry `j` is the coefficient of
    /// `x_k^j`, a polynomial not involving `x_k`.
    pub fn coeffs_in(&self, k: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(&self.vars); self.degree_in(k) as usize + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let j = e2[k] as usize;
            e2[k] = 0;
            out[j].terms.insert(e2, c.clone());
        }
        out
    }

    /// Leading coefficient with respect to `x_k`.
    pub fn lc_in(&self, k: usize) -> Self {
        let d = self.degree_in(k);
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[k] == d {
                let mut e2 = e.clone();
                e2[k] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitute a constant for `x_k`.
    pub fn substitute_value(&self, k: usize, value: &F) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let p = e2[k];
            e2[k] = 0;
            out.add_term(e2, c.clone() * &value.pow(p));
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.check_ring(divisor);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        if let Some(k) = self.single_var_with(divisor) {
            let a = self.to_univariate(k)?;
            let b = divisor.to_univariate(k)?;
            return a.div_exact(&b).map(|q| Self::from_univariate(&self.vars, k, &q));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(&lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let qc = c * &lc_inv;
            // rem -= qc * x^qm * divisor
            for (e, d) in &divisor.terms {
                let e2: Monomial = e.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_term(e2, -(qc.clone() * d));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// The single variable used by both operands, if there is exactly one
    /// variable involved overall.
    fn single_var_with(&self, other: &Self) -> Option<usize> {
        let mut used = self.used_vars();
        for k in other.used_vars() {
            if !used.contains(&k) {
                used.push(k);
            }
        }
        (used.len() == 1).then(|| used[0])
    }

    /// View as a univariate polynomial in `x_k`; `None` if other variables occur.
    pub fn to_univariate(&self, k: usize) -> Option<UniPoly<F>> {
        let mut coeffs = vec![F::zero(); self.degree_in(k) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != k && x > 0) {
                return None;
            }
            coeffs[e[k] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(vars: &Vars, k: usize, p: &UniPoly<F>) -> Self {
        let mut out = Self::zero(vars);
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; vars.len()];
            e[k] = j as u32;
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Re-embed into another ring: variable `j` of `self` becomes variable
    /// `map[j]` of `target`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (j, &x) in e.iter().enumerate() {
                e2[map[j]] += x;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Same terms over a renamed variable list of equal length.
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(&self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Compare by term sequence from the leading term downward (monomials only).
    pub fn term_order_cmp(&self, other: &Self) -> Ordering {
        self.terms.keys().rev().cmp(other.terms.keys().rev())
    }
}

impl<'a, 'b, F: Field> Add<&'b MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, 'b, F: Field> Sub<&'b MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, 'b, F: Field> Mul<&'b MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'b MultiPoly<F>) -> MultiPoly<F> {
        self.check_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let prod = ca.clone() * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<'a, F: Field> Neg for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

fn fmt_monomial(vars: &Vars, e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(k, &x)| {
            let name = &vars.names()[k];
            if x == 1 {
                name.clone()
            } else {
                format!("{name}^{x}")
            }
        })
        .collect();
    parts.join("*")
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    /// Canonical form: terms in descending term order, explicit `*` and `^`,
    /// e.g. `9*t^4 + 6*t^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, text) = c.coeff_text();
            let mono = fmt_monomial(&self.vars, e);
            let body = if mono.is_empty() {
                text
            } else if text == "1" {
                mono
            } else {
                format!("{text}*{mono}")
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// gcd

/// Pseudo-remainder of `a` by `b` with respect to `x_k`.
fn prem<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, k: usize) -> MultiPoly<F> {
    let db = b.degree_in(k);
    let lcb = b.lc_in(k);
    let mut r = a.clone();
    let mut e = (a.degree_in(k) + 1).saturating_sub(db);
    let mut shift = vec![0; a.nvars()];
    while !r.is_zero() && r.degree_in(k) >= db {
        let dr = r.degree_in(k);
        let lcr = r.lc_in(k);
        shift[k] = dr - db;
        r = &(&r * &lcb) - &(&b.shift(&shift) * &lcr);
        e -= 1;
    }
    &r * &lcb.pow(e)
}

/// gcd of the coefficients of `f` with respect to `x_k`.
fn content_in<F: Field>(f: &MultiPoly<F>, k: usize) -> MultiPoly<F> {
    let mut g = MultiPoly::zero(f.vars());
    for c in f.coeffs_in(k) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(f.vars());
        }
    }
    g
}

fn primitive_part_in<F: Field>(f: &MultiPoly<F>, k: usize) -> MultiPoly<F> {
    let c = content_in(f, k);
    f.div_exact(&c).expect("content divides")
}

/// gcd of two polynomials primitive in `x_k`, via the subresultant
/// remainder sequence.
fn subresultant_gcd<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, k: usize) -> MultiPoly<F> {
    let (mut a, mut b) = if f.degree_in(k) >= g.degree_in(k) { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    let vars = f.vars().clone();
    let mut gg = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let d = a.degree_in(k) - b.degree_in(k);
        let r = prem(&a, &b, k);
        if r.is_zero() {
            break;
        }
        if r.degree_in(k) == 0 {
            return MultiPoly::one(&vars);
        }
        let divisor = &gg * &h.pow(d);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        gg = a.lc_in(k);
        if d > 0 {
            let num = gg.pow(d);
            let den = h.pow(d - 1);
            h = num.div_exact(&den).expect("subresultant h update is exact");
        }
    }
    primitive_part_in(&b, k)
}

/// gcd when one side is a single term: the common monomial content.
fn monomial_gcd<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    let mut e: Monomial = f.terms.keys().next().expect("nonzero").clone();
    for m in f.terms.keys().chain(g.terms.keys()) {
        for (a, b) in e.iter_mut().zip(m) {
            *a = (*a).min(*b);
        }
    }
    MultiPoly::monomial(f.vars(), e, F::one())
}

/// gcd of `small` with `big`, where `small` only uses the variables `keep`:
/// reduce against the coefficients of `big` in the other variables.
fn gcd_with_coefficients<F: Field>(small: &MultiPoly<F>, big: &MultiPoly<F>, keep: &[usize]) -> MultiPoly<F> {
    let mut groups: BTreeMap<Monomial, MultiPoly<F>> = BTreeMap::new();
    for (e, c) in &big.terms {
        let outer: Monomial = e.iter().enumerate().map(|(k, &x)| if keep.contains(&k) { 0 } else { x }).collect();
        let inner: Monomial = e.iter().enumerate().map(|(k, &x)| if keep.contains(&k) { x } else { 0 }).collect();
        groups.entry(outer).or_insert_with(|| MultiPoly::zero(big.vars())).terms.insert(inner, c.clone());
    }
    let mut coeffs: Vec<MultiPoly<F>> = groups.into_values().collect();
    coeffs.sort_by_key(MultiPoly::num_terms);
    let mut g = small.clone();
    for c in &coeffs {
        g = poly_gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one(big.vars());
        }
    }
    g.monic()
}

/// Univariate image in `x_k` after substituting `point` for the others.
fn image_in<F: Field>(f: &MultiPoly<F>, k: usize, point: &[F]) -> UniPoly<F> {
    let mut coeffs = vec![F::zero(); f.degree_in(k) as usize + 1];
    for (e, c) in &f.terms {
        let mut v = c.clone();
        for (j, &x) in e.iter().enumerate() {
            if j != k && x > 0 {
                v = v * &point[j].pow(x);
            }
        }
        coeffs[e[k] as usize] += &v;
    }
    UniPoly::new(coeffs)
}

/// Cheap certificate that `gcd(f, g)` is constant: for every shared variable
/// some evaluation of the others keeps both degrees and has coprime images.
fn provably_coprime<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> bool {
    let gv = g.used_vars();
    let n = f.nvars();
    for k in f.used_vars().into_iter().filter(|k| gv.contains(k)) {
        let (df, dg) = (f.degree_in(k) as usize, g.degree_in(k) as usize);
        let mut certified = false;
        for attempt in 0..3u64 {
            let point: Vec<F> = (0..n)
                .map(|j| {
                    let h = (j as u64 * 7919 + attempt * 104_729 + k as u64 * 31).wrapping_mul(2_654_435_761) % 97;
                    F::from_i64(h as i64 - 48)
                })
                .collect();
            let (a, b) = (image_in(f, k, &point), image_in(g, k, &point));
            if a.degree() != Some(df) || b.degree() != Some(dg) {
                continue;
            }
            if a.gcd(&b).deg() == 0 {
                certified = true;
            }
            break;
        }
        if !certified {
            return false;
        }
    }
    true
}

/// Integer coefficients with content 1 and positive leading coefficient.
fn integer_primitive(f: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let coeffs: Vec<&Rational> = f.terms.values().collect();
    f.scale(&Rational::factor_normal_scale(&coeffs, &f.leading_coeff()))
}

fn integer_content(f: &MultiPoly<Rational>) -> BigInt {
    f.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

fn max_norm(f: &MultiPoly<Rational>) -> BigInt {
    f.terms.values().map(|c| c.numer().abs()).max().unwrap_or_default()
}

/// Rebuild a polynomial in `x_k` from its value at `x_k = xi`, reading the
/// coefficients as balanced base-`xi` digits.
fn xi_adic(h: &MultiPoly<Rational>, xi: &BigInt, k: usize) -> MultiPoly<Rational> {
    let half = xi / 2;
    let xi_q = Rational::from_integer(xi.clone());
    let mut rest = h.clone();
    let mut out = MultiPoly::zero(h.vars());
    let mut shift = vec![0; h.nvars()];
    while !rest.is_zero() {
        let digit = MultiPoly::from_terms(
            h.vars(),
            rest.terms.iter().map(|(e, c)| {
                let mut r = c.numer().mod_floor(xi);
                if r > half {
                    r -= xi;
                }
                (e.clone(), Rational::from_integer(r))
            }),
        );
        out = &out + &digit.shift(&shift);
        rest = (&rest - &digit).scale(&xi_q.inv().expect("nonzero"));
        shift[k] += 1;
    }
    out
}

/// Heuristic gcd of integer polynomials: evaluate one variable at a large
/// integer, recurse, and lift back by balanced `xi`-adic expansion. The
/// candidate is accepted only if it divides both inputs. `None` when every
/// evaluation point fails or the images grow too large.
fn heu_gcd_rec(f: &MultiPoly<Rational>, g: &MultiPoly<Rational>) -> Option<MultiPoly<Rational>> {
    let content = integer_content(f).gcd(&integer_content(g));
    if f.is_constant() || g.is_constant() {
        return Some(MultiPoly::constant(f.vars(), Rational::from_integer(content)));
    }
    let k = (0..f.nvars()).find(|&k| f.uses_var(k) || g.uses_var(k))?;
    let deg = f.degree_in(k).max(g.degree_in(k)) as u64;
    let norm = max_norm(f).min(max_norm(g));
    let mut xi: BigInt = norm * 2u32 + 29u32;
    for _ in 0..6 {
        if xi.bits() * (deg + 1) > 1 << 20 {
            return None;
        }
        let xi_q = Rational::from_integer(xi.clone());
        let (fx, gx) = (f.substitute_value(k, &xi_q), g.substitute_value(k, &xi_q));
        if !fx.is_zero() && !gx.is_zero() {
            if let Some(h) = heu_gcd_rec(&fx, &gx) {
                let cand = integer_primitive(&xi_adic(&h, &xi, k));
                if f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                    return Some(cand.scale(&Rational::from_integer(content)));
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Used only in at most two variables, where the images stay small.
fn heuristic_gcd<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> Option<MultiPoly<F>> {
    let mut used = f.used_vars();
    used.extend(g.used_vars());
    used.sort_unstable();
    used.dedup();
    if used.len() > 2 {
        return None;
    }
    let to_q = |p: &MultiPoly<F>| -> Option<MultiPoly<Rational>> {
        let terms: Option<Vec<_>> = p.terms.iter().map(|(e, c)| Some((e.clone(), c.to_rational()?))).collect();
        Some(integer_primitive(&MultiPoly::from_terms(p.vars(), terms?)))
    };
    let h = heu_gcd_rec(&to_q(f)?, &to_q(g)?)?;
    Some(h.map_coeffs(F::from_rational).monic())
}

/// Greatest common divisor, normalized to unit leading coefficient in the
/// lexicographic term order. `gcd(f, 0)` is `f` normalized.
pub fn poly_gcd<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    f.check_ring(g);
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars());
    }
    if f == g {
        return f.monic();
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        return monomial_gcd(f, g);
    }
    if let Some(k) = f.single_var_with(g) {
        let a = f.to_univariate(k).expect("univariate");
        let b = g.to_univariate(k).expect("univariate");
        return MultiPoly::from_univariate(f.vars(), k, &a.gcd(&b));
    }
    let (fv, gv) = (f.used_vars(), g.used_vars());
    if gv.iter().all(|k| fv.contains(k)) && gv.len() < fv.len() {
        return gcd_with_coefficients(g, f, &gv);
    }
    if fv.iter().all(|k| gv.contains(k)) && fv.len() < gv.len() {
        return gcd_with_coefficients(f, g, &fv);
    }
    if provably_coprime(f, g) {
        return MultiPoly::one(f.vars());
    }
    if let Some(h) = heuristic_gcd(f, g) {
        return h;
    }
    let k = (0..f.nvars()).find(|&k| f.uses_var(k) || g.uses_var(k)).expect("nonconstant");
    if !f.uses_var(k) {
        return poly_gcd(f, &content_in(g, k));
    }
    if !g.uses_var(k) {
        return poly_gcd(&content_in(f, k), g);
    }
    let cf = content_in(f, k);
    let cg = content_in(g, k);
    let c = poly_gcd(&cf, &cg);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let h = subresultant_gcd(&pf, &pg, k);
    (&c * &h).monic()
}

// ---------------------------------------------------------------------------
// square-free decomposition

/// `f = constant · ∏ factor^multiplicity` with pairwise coprime square-free
/// factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeDecomposition<F: Field> {
    pub constant: F,
    pub factors: Vec<(MultiPoly<F>, u32)>,
}

impl<F: Field> SquareFreeDecomposition<F> {
    /// Multiply everything back out.
    pub fn expand(&self, vars: &Vars) -> MultiPoly<F> {
        let mut acc = MultiPoly::constant(vars, self.constant.clone());
        for (p, m) in &self.factors {
            acc = &acc * &p.pow(*m);
        }
        acc
    }

    pub fn all_even(&self) -> bool {
        self.factors.iter().all(|(_, m)| m % 2 == 0)
    }
}

fn accumulate<F: Field>(acc: &mut BTreeMap<u32, MultiPoly<F>>, m: u32, p: MultiPoly<F>) {
    if p.is_constant() {
        return;
    }
    match acc.get_mut(&m) {
        Some(q) => *q = &*q * &p,
        None => {
            acc.insert(m, p);
        }
    }
}

/// Yun's algorithm on a polynomial primitive with respect to `x_k`.
fn yun<F: Field>(p: &MultiPoly<F>, k: usize, acc: &mut BTreeMap<u32, MultiPoly<F>>) {
    let dp = p.derivative(k);
    let a0 = poly_gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(k);
    let mut i = 1;
    while b.uses_var(k) {
        let a = poly_gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(k);
        accumulate(acc, i, a);
        i += 1;
    }
}

fn squarefree_rec<F: Field>(f: &MultiPoly<F>, acc: &mut BTreeMap<u32, MultiPoly<F>>) {
    if f.is_constant() {
        return;
    }
    let k = (0..f.nvars()).find(|&k| f.uses_var(k)).expect("nonconstant");
    if let Some(u) = f.to_univariate(k) {
        yun_univariate(&u, f.vars(), k, acc);
        return;
    }
    let c = content_in(f, k);
    let p = f.div_exact(&c).expect("content divides");
    yun(&p, k, acc);
    squarefree_rec(&c, acc);
}

fn yun_univariate<F: Field>(p: &UniPoly<F>, vars: &Vars, k: usize, acc: &mut BTreeMap<u32, MultiPoly<F>>) {
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        accumulate(acc, i, MultiPoly::from_univariate(vars, k, &a));
        i += 1;
    }
}

/// Square-free decomposition (Yun's algorithm, recursing through contents for
/// multivariate input). Factors are normalized with
/// [`MultiPoly::factor_normal`] and ordered by multiplicity descending, then
/// term order.
pub fn squarefree_decompose<F: Field>(f: &MultiPoly<F>) -> Result<SquareFreeDecomposition<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut acc = BTreeMap::new();
    squarefree_rec(f, &mut acc);
    let mut factors: Vec<(MultiPoly<F>, u32)> = acc.into_iter().map(|(m, p)| (p.factor_normal(), m)).collect();
    factors.sort_by(|(p, m), (q, n)| n.cmp(m).then_with(|| p.term_order_cmp(q)));
    let mut lc = F::one();
    for (p, m) in &factors {
        lc = lc * &p.leading_coeff().pow(*m);
    }
    let constant = f.leading_coeff().div_exact(&lc).expect("nonzero leading coefficient");
    Ok(SquareFreeDecomposition { constant, factors })
}

/// Split `f = content · primitive` where the content is a polynomial in
/// `y_vars` only (the gcd of the coefficients of `f` viewed as a polynomial in
/// the remaining variables) and the primitive part has content 1.
pub fn content_and_primitive<F: Field>(f: &MultiPoly<F>, y_vars: &[&str]) -> Result<(MultiPoly<F>, MultiPoly<F>)> {
    let ys: Vec<usize> = y_vars.iter().map(|v| f.vars().require(v)).collect::<Result<_>>()?;
    content_and_primitive_idx(f, &ys)
}

pub(crate) fn content_and_primitive_idx<F: Field>(f: &MultiPoly<F>, ys: &[usize]) -> Result<(MultiPoly<F>, MultiPoly<F>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut groups: BTreeMap<Monomial, MultiPoly<F>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let x_part: Monomial = e.iter().enumerate().map(|(k, &x)| if ys.contains(&k) { 0 } else { x }).collect();
        let y_part: Monomial = e.iter().enumerate().map(|(k, &x)| if ys.contains(&k) { x } else { 0 }).collect();
        groups
            .entry(x_part)
            .or_insert_with(|| MultiPoly::zero(f.vars()))
            .add_term(y_part, c.clone());
    }
    let mut content = MultiPoly::zero(f.vars());
    for g in groups.values() {
        content = poly_gcd(&content, g);
        if content.is_constant() {
            content = MultiPoly::one(f.vars());
            break;
        }
    }
    let primitive = f.div_exact(&content).expect("content divides");
    Ok((content, primitive))
}

fn normalize_root_sign<F: Field>(h: MultiPoly<F>) -> MultiPoly<F> {
    if h.leading_coeff().is_canonical_sign() {
        h
    } else {
        -&h
    }
}

/// Square root of a polynomial with unit leading coefficient by term-wise
/// extraction; the root also has unit leading coefficient.
pub fn monic_sqrt<F: Field>(f: &MultiPoly<F>) -> Option<MultiPoly<F>> {
    let (lm, lc) = f.leading_term()?;
    if !lc.is_one() || lm.iter().any(|x| x % 2 == 1) {
        return None;
    }
    let lead: Monomial = lm.iter().map(|x| x / 2).collect();
    let bound: Vec<u32> = (0..f.nvars()).map(|k| f.degree_in(k) / 2).collect();
    let half = F::from_i64(2).inv().expect("characteristic zero");
    let vars = f.vars();
    let mut root = MultiPoly::monomial(vars, lead.clone(), F::one());
    let mut rem = f - &(&root * &root);
    let mut last = lead.clone();
    while let Some((e, c)) = rem.leading_term() {
        if e.iter().zip(&lead).any(|(a, b)| a < b) {
            return None;
        }
        let te: Monomial = e.iter().zip(&lead).map(|(a, b)| a - b).collect();
        if te.iter().zip(&bound).any(|(a, b)| a > b) || te >= last {
            return None;
        }
        let t = MultiPoly::monomial(vars, te.clone(), c.clone() * &half);
        let twice_root = root.scale(&F::from_i64(2));
        rem = &rem - &(&(&twice_root * &t) + &(&t * &t));
        root = &root + &t;
        last = te;
    }
    Some(root)
}

/// Square root `h` with `h² = f` over the coefficient field, sign fixed by a
/// canonical leading coefficient.
pub fn poly_sqrt<F: Field>(f: &MultiPoly<F>) -> Option<MultiPoly<F>> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let sf = squarefree_decompose(f).ok()?;
    if !sf.all_even() {
        return None;
    }
    let root = sf.constant.sqrt()?;
    let mut h = MultiPoly::constant(f.vars(), root);
    for (p, m) in &sf.factors {
        h = &h * &p.pow(m / 2);
    }
    Some(normalize_root_sign(h))
}
