//! Rational maps `ℝᵐ → ℝⁿ`: Jacobian, first fundamental form, the
//! PH-preservation test, composition and the line/plane reductions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::PHCurve;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polynomial::{MultiPoly, Vars};
use crate::ratcalc::{is_square_over_reals, RatFunc, RealSquare};
use crate::scalar::{Field, Rational};
use crate::text::parse_expr;

const PROBE_POINTS: usize = 8;
const PROBE_SEED: u64 = 0x5eed_0f_9a11;

/// Components are rational functions of the first `m` ring variables; any
/// further variables are symbolic parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    m: usize,
    components: Vec<RatFunc<Rational>>,
}

/// Symmetric `m×m` matrix of inner products of partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricForm {
    pub entries: Vec<Vec<RatFunc<Rational>>>,
}

impl MetricForm {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `Some(e)` when the form is `e·I`.
    pub fn scalar_diagonal(&self) -> Option<&RatFunc<Rational>> {
        match self.verdict_shape() {
            Ok(e) => Some(e),
            Err(_) => None,
        }
    }

    fn verdict_shape(&self) -> std::result::Result<&RatFunc<Rational>, &'static str> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if !self.entries[i][j].is_zero() {
                    return Err("off-diagonal entries nonzero");
                }
            }
        }
        let e = &self.entries[0][0];
        if (1..n).any(|i| &self.entries[i][i] != e) {
            return Err("diagonal entries differ");
        }
        Ok(e)
    }
}

/// Outcome of the PH-preservation test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhVerdict {
    /// `G = λ²·I` with `λ² = c·q²`.
    Preserving(RealSquare),
    NotPreserving(&'static str),
}

impl PhVerdict {
    pub fn dilation(&self) -> Option<&RealSquare> {
        match self {
            PhVerdict::Preserving(s) => Some(s),
            PhVerdict::NotPreserving(_) => None,
        }
    }

    pub fn is_preserving(&self) -> bool {
        matches!(self, PhVerdict::Preserving(_))
    }
}

fn default_names(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|k| format!("{prefix}{k}")).collect()
}

impl RationalMap {
    pub fn new(m: usize, components: Vec<RatFunc<Rational>>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let vars = first.vars().clone();
        if vars.len() < m {
            return Err(Error::DimensionMismatch { expected: m, found: vars.len() });
        }
        if components.iter().any(|c| c.vars() != &vars) {
            return Err(Error::Format("map components must share one variable list".into()));
        }
        Ok(RationalMap { m, components })
    }

    /// Parse components over `vars`, the first `m` being source coordinates.
    pub fn parse(vars: &[&str], m: usize, components: &[&str]) -> Result<Self> {
        let vars = Vars::new(vars.iter().copied());
        Self::new(m, components.iter().map(|c| parse_expr(c, &vars)).collect::<Result<_>>()?)
    }

    pub fn identity(n: usize) -> Self {
        let vars = Vars::new(default_names("u", n));
        RationalMap { m: n, components: (0..n).map(|k| RatFunc::var(&vars, k)).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    pub fn has_parameters(&self) -> bool {
        self.vars().len() > self.m
    }

    pub fn components(&self) -> &[RatFunc<Rational>] {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(RatFunc::is_polynomial)
    }

    /// `n×m` matrix of `∂Φᵢ/∂uⱼ`.
    pub fn jacobian(&self) -> Vec<Vec<RatFunc<Rational>>> {
        self.components
            .iter()
            .map(|c| (0..self.m).map(|j| c.derivative(j)).collect())
            .collect()
    }

    pub fn first_fundamental_form(&self) -> MetricForm {
        let jac = self.jacobian();
        let vars = self.vars();
        let mut entries = vec![vec![RatFunc::zero(vars); self.m]; self.m];
        for i in 0..self.m {
            for j in i..self.m {
                let g = jac.iter().fold(RatFunc::zero(vars), |acc, row| acc.add(&row[i].mul(&row[j])));
                entries[i][j] = g.clone();
                entries[j][i] = g;
            }
        }
        MetricForm { entries }
    }

    /// Exact Jacobian rank at seeded random points; true when full rank `m`
    /// is reached at some point.
    pub fn has_full_rank(&self) -> bool {
        let jac = self.jacobian();
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        let nv = self.vars().len();
        for _ in 0..PROBE_POINTS {
            let point: Vec<Rational> = (0..nv)
                .map(|_| Rational::new(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=9)).expect("nonzero"))
                .collect();
            let values: Option<Vec<Vec<Rational>>> =
                jac.iter().map(|row| row.iter().map(|e| e.eval(&point)).collect()).collect();
            if values.is_some_and(|v| linalg::rank(&v) == self.m) {
                return true;
            }
        }
        false
    }

    /// The test `G = λ²·I` with `λ²` a square in ℝ(u).
    pub fn is_ph_preserving(&self) -> Result<PhVerdict> {
        if !self.has_full_rank() {
            return Err(Error::RankDeficient);
        }
        let g = self.first_fundamental_form();
        let e = match g.verdict_shape() {
            Ok(e) => e,
            Err(reason) => return Ok(PhVerdict::NotPreserving(reason)),
        };
        Ok(match is_square_over_reals(e) {
            Some(s) => PhVerdict::Preserving(s),
            None => PhVerdict::NotPreserving("diagonal entry is not a real square"),
        })
    }

    /// `λ² = c·q²` of a map passing the PH-preservation test.
    pub fn dilation(&self) -> Result<RealSquare> {
        match self.is_ph_preserving()? {
            PhVerdict::Preserving(s) => Ok(s),
            PhVerdict::NotPreserving(_) => Err(Error::NotConformal),
        }
    }

    fn require_no_parameters(&self) -> Result<()> {
        if self.has_parameters() {
            return Err(Error::DimensionMismatch { expected: self.m, found: self.vars().len() });
        }
        Ok(())
    }

    /// `Φ ∘ r`
    pub fn compose_curve(&self, r: &PHCurve) -> Result<PHCurve> {
        self.require_no_parameters()?;
        if r.dim() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: r.dim() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.compose(r.components()).ok_or(Error::PoleOnCurve))
            .collect::<Result<Vec<_>>>()?;
        PHCurve::new(components)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        self.require_no_parameters()?;
        if inner.target_dim() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: inner.target_dim() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.compose(inner.components()).ok_or(Error::PoleCollapse))
            .collect::<Result<Vec<_>>>()?;
        RationalMap::new(inner.m, components)
    }

    /// `‖(Φ∘ℓ)′(t)‖²` for the line `ℓ(t) = a + t·d`, over the variables
    /// `a1..am, t`.
    pub fn line_speed_form(&self, d: &[Rational]) -> Result<RatFunc<Rational>> {
        self.require_no_parameters()?;
        if d.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: d.len() });
        }
        if d.iter().all(Rational::is_zero) {
            return Err(Error::Format("direction must be nonzero".into()));
        }
        let mut names = default_names("a", self.m);
        names.push("t".into());
        let vars = Vars::new(names);
        let t = RatFunc::var(&vars, self.m);
        let line: Vec<RatFunc<Rational>> =
            (0..self.m).map(|k| RatFunc::var(&vars, k).add(&t.scale(&d[k]))).collect();
        let mut acc = RatFunc::zero(&vars);
        for c in &self.components {
            let along = c.compose(&line).ok_or(Error::PoleOnCurve)?;
            let v = along.derivative(self.m);
            acc = acc.add(&v.mul(&v));
        }
        Ok(acc)
    }

    /// `Φ ∘ ι` with `ι(s₁, s₂) = base + s₁·v₁ + s₂·v₂`.
    pub fn restrict_to_plane(&self, base: &[Rational], v1: &[Rational], v2: &[Rational]) -> Result<RationalMap> {
        self.require_no_parameters()?;
        for v in [base, v1, v2] {
            if v.len() != self.m {
                return Err(Error::DimensionMismatch { expected: self.m, found: v.len() });
            }
        }
        if linalg::rank(&[v1.to_vec(), v2.to_vec()]) < 2 {
            return Err(Error::DependentSpan);
        }
        let vars = Vars::new(["s1", "s2"]);
        let s1 = RatFunc::var(&vars, 0);
        let s2 = RatFunc::var(&vars, 1);
        let iota: Vec<RatFunc<Rational>> = (0..self.m)
            .map(|k| RatFunc::constant(&vars, base[k].clone()).add(&s1.scale(&v1[k])).add(&s2.scale(&v2[k])))
            .collect();
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&iota).ok_or(Error::PoleCollapse))
            .collect::<Result<Vec<_>>>()?;
        RationalMap::new(2, components)
    }

    /// Specialize trailing parameters to values.
    pub fn at_parameters(&self, values: &[Rational]) -> Result<RationalMap> {
        let nv = self.vars().len();
        if values.len() != nv - self.m {
            return Err(Error::DimensionMismatch { expected: nv - self.m, found: values.len() });
        }
        let target = Vars::new(self.vars().names()[..self.m].iter().cloned());
        let args: Vec<RatFunc<Rational>> = (0..nv)
            .map(|k| if k < self.m { RatFunc::var(&target, k) } else { RatFunc::constant(&target, values[k - self.m].clone()) })
            .collect();
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&args).ok_or(Error::PoleCollapse))
            .collect::<Result<Vec<_>>>()?;
        RationalMap::new(self.m, components)
    }

    /// Value at a source point, `None` at a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The unit-sphere parametrization `(2u, 2v, 1−u²−v²)/(1+u²+v²)`.
pub fn sphere_map() -> RationalMap {
    RationalMap::parse(
        &["u", "v"],
        2,
        &["2*u/(1+u^2+v^2)", "2*v/(1+u^2+v^2)", "(1-u^2-v^2)/(1+u^2+v^2)"],
    )
    .expect("well-formed")
}

const FAMILY: [&str; 3] = [
    "-6*(u^2-v^2)*l1*l2 + 3*(u^4+2*u^2*v^2+u^2+v^4+v^2+1)*l1^2 + 3*l2^2",
    "v*(v^2-3*u^2)*(u^2+v^2+4)*l1^2 - 6*v*(u^2+v^2)*l1*l2 - 3*v*l2^2",
    "-u*(u^2-3*v^2)*(u^2+v^2+4)*l1^2 - 6*u*(u^2+v^2)*l1*l2 + 3*u*l2^2",
];

/// The two-parameter conformal family in `(u, v)` with symbolic parameters
/// `l1, l2`.
pub fn conformal_family() -> RationalMap {
    let components: Vec<String> = FAMILY.iter().map(|c| format!("2*({c})/(3*(1+u^2+v^2))")).collect();
    let refs: Vec<&str> = components.iter().map(String::as_str).collect();
    RationalMap::parse(&["u", "v", "l1", "l2"], 2, &refs).expect("well-formed")
}

pub fn conformal_family_at(l1: &Rational, l2: &Rational) -> RationalMap {
    conformal_family().at_parameters(&[l1.clone(), l2.clone()]).expect("two parameters")
}

/// The metric constant printed for the family: `2·(N/(u²+v²+1))²`.
pub fn conformal_family_printed_metric() -> RatFunc<Rational> {
    let vars = conformal_family().vars().clone();
    parse_expr(
        "2*(((u^2+v^2)*(u^2+v^2+4)*l1^2 + 2*(u^2-v^2)*l1*l2 + l2^2)/(u^2+v^2+1))^2",
        &vars,
    )
    .expect("well-formed")
}

// ---------------------------------------------------------------------------
// constant quadratic forms

/// A constant symmetric rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantQuadraticForm {
    entries: Vec<Vec<Rational>>,
}

impl ConstantQuadraticForm {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(ConstantQuadraticForm { entries })
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Rational::zero() }).collect())
            .collect();
        ConstantQuadraticForm { entries }
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dim()).all(|k| {
            let minor: Vec<Vec<Rational>> = self.entries[..k].iter().map(|r| r[..k].to_vec()).collect();
            linalg::det(&minor).is_positive()
        })
    }

    fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| if i == j { self.entries[i][i] == self.entries[0][0] } else { self.entries[i][j].is_zero() }))
    }
}

/// Square test of `P(t) = r′ᵀ S r′` along the rational Tschirnhausen cubic
/// `r = (t³−3t, 3t²)`. Returns `P = c·q²`, with `c` folded into `q` when it
/// is a rational square.
pub fn tschirnhausen_s_test(s: &ConstantQuadraticForm) -> Result<Option<RealSquare>> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    s.require_positive_definite()?;
    let p = tschirnhausen_quartic(s);
    Ok(is_square_over_reals(&RatFunc::from_poly(p)).map(|sq| sq.folded()))
}

/// `r′ᵀ S r′` for the rational Tschirnhausen cubic, as a polynomial in `t`.
pub fn tschirnhausen_quartic(s: &ConstantQuadraticForm) -> MultiPoly<Rational> {
    let vars = Vars::new(["t"]);
    let t = MultiPoly::var(&vars, 0);
    let three = Rational::from(3);
    let r1 = &(&t * &t).scale(&three) - &MultiPoly::constant(&vars, three.clone());
    let r2 = t.scale(&Rational::from(6));
    let r = [r1, r2];
    let mut p = MultiPoly::zero(&vars);
    for i in 0..2 {
        for j in 0..2 {
            p = &p + &(&r[i] * &r[j]).scale(&s.entries[i][j]);
        }
    }
    p
}

/// Whether every coordinate-pair restriction of `S` is a multiple of `I₂`.
pub fn two_plane_scalar_check(s: &ConstantQuadraticForm) -> Result<bool> {
    if s.dim() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    s.require_positive_definite()?;
    let e = &s.entries;
    let n = s.dim();
    Ok((0..n).all(|i| (i + 1..n).all(|j| e[i][j].is_zero() && e[i][i] == e[j][j])))
}
