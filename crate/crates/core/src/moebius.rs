//! Similarities and sphere inversions as rational maps, and their words.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::map::RationalMap;
use crate::ratcalc::{RatFunc, RealSquare};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoebiusFactor {
    Translation(Vec<Rational>),
    /// A rational matrix with `QᵀQ = I`.
    Orthogonal(Vec<Vec<Rational>>),
    Homothety(Rational),
    /// `x ↦ c + ρ²(x − c)/‖x − c‖²`
    Inversion { center: Vec<Rational>, rho2: Rational },
}

impl MoebiusFactor {
    pub fn inversion(center: Vec<Rational>, rho2: Rational) -> Result<Self> {
        if !rho2.is_positive() {
            return Err(Error::InvalidMoebius("inversion needs r2 > 0".into()));
        }
        Ok(MoebiusFactor::Inversion { center, rho2 })
    }

    pub fn homothety(s: Rational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidMoebius("homothety needs s != 0".into()));
        }
        Ok(MoebiusFactor::Homothety(s))
    }

    pub fn orthogonal(q: Vec<Vec<Rational>>) -> Result<Self> {
        let n = q.len();
        if n == 0 || q.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMoebius("orthogonal factor needs a square matrix".into()));
        }
        if linalg::mat_mul(&linalg::transpose(&q), &q) != linalg::identity(n) {
            return Err(Error::InvalidMoebius("matrix is not orthogonal".into()));
        }
        Ok(MoebiusFactor::Orthogonal(q))
    }

    /// Cayley transform `(I − A)(I + A)⁻¹` of a skew-symmetric `A`.
    pub fn cayley(a: &[Vec<Rational>]) -> Result<Self> {
        let n = a.len();
        let id = linalg::identity::<Rational>(n);
        let minus: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| id[i][j].clone() - &a[i][j]).collect()).collect();
        let plus: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| id[i][j].clone() + &a[i][j]).collect()).collect();
        let inv = linalg::inverse(&plus).ok_or_else(|| Error::InvalidMoebius("I + A is singular".into()))?;
        Self::orthogonal(linalg::mat_mul(&minus, &inv))
    }

    /// Dimension implied by the data; a homothety works in any dimension.
    pub fn dim(&self) -> Option<usize> {
        match self {
            MoebiusFactor::Translation(v) => Some(v.len()),
            MoebiusFactor::Orthogonal(q) => Some(q.len()),
            MoebiusFactor::Homothety(_) => None,
            MoebiusFactor::Inversion { center, .. } => Some(center.len()),
        }
    }

    /// The factor as a map `ℝⁿ → ℝⁿ` in the variables `u1..un`.
    pub fn to_map(&self, n: usize) -> Result<RationalMap> {
        if let Some(d) = self.dim() {
            if d != n {
                return Err(Error::DimensionMismatch { expected: n, found: d });
            }
        }
        let id = RationalMap::identity(n);
        let vars = id.vars().clone();
        let x: Vec<RatFunc<Rational>> = id.components().to_vec();
        let constant = |c: &Rational| RatFunc::constant(&vars, c.clone());
        let components = match self {
            MoebiusFactor::Translation(v) => x.iter().zip(v).map(|(xi, vi)| xi.add(&constant(vi))).collect(),
            MoebiusFactor::Orthogonal(q) => q
                .iter()
                .map(|row| row.iter().zip(&x).fold(RatFunc::zero(&vars), |acc, (qij, xj)| acc.add(&xj.scale(qij))))
                .collect(),
            MoebiusFactor::Homothety(s) => x.iter().map(|xi| xi.scale(s)).collect(),
            MoebiusFactor::Inversion { center, rho2 } => {
                let diff: Vec<RatFunc<Rational>> = x.iter().zip(center).map(|(xi, ci)| xi.sub(&constant(ci))).collect();
                let norm = diff.iter().fold(RatFunc::zero(&vars), |acc, d| acc.add(&d.mul(d)));
                let factor = norm.inv()?.scale(rho2);
                diff.iter().zip(center).map(|(d, ci)| constant(ci).add(&d.mul(&factor))).collect()
            }
        };
        RationalMap::new(n, components)
    }
}

fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for MoebiusFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoebiusFactor::Translation(v) => write!(f, "tr v={}", fmt_vector(v)),
            MoebiusFactor::Orthogonal(q) => {
                let rows: Vec<String> = q
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                write!(f, "orth Q=[{}]", rows.join(", "))
            }
            MoebiusFactor::Homothety(s) => write!(f, "hom s={s}"),
            MoebiusFactor::Inversion { center, rho2 } => write!(f, "inv c={} r2={rho2}", fmt_vector(center)),
        }
    }
}

/// Factors applied in order: the first factor acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusWord {
    dim: usize,
    factors: Vec<MoebiusFactor>,
}

impl MoebiusWord {
    pub fn new(dim: Option<usize>, factors: Vec<MoebiusFactor>) -> Result<Self> {
        let mut n = dim;
        for f in &factors {
            match (n, f.dim()) {
                (None, d) => n = d,
                (Some(a), Some(b)) if a != b => return Err(Error::DimensionMismatch { expected: a, found: b }),
                _ => {}
            }
        }
        let dim = n.ok_or_else(|| Error::InvalidMoebius("dimension unknown; add a `dim:` line".into()))?;
        if dim == 0 {
            return Err(Error::InvalidMoebius("dimension must be positive".into()));
        }
        Ok(MoebiusWord { dim, factors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[MoebiusFactor] {
        &self.factors
    }
}

pub fn factor_to_map(f: &MoebiusFactor, n: usize) -> Result<RationalMap> {
    f.to_map(n)
}

/// Compose the factors, first factor innermost.
pub fn word_to_map(w: &MoebiusWord) -> Result<RationalMap> {
    let mut acc = RationalMap::identity(w.dim);
    for f in &w.factors {
        acc = f.to_map(w.dim)?.compose(&acc)?;
    }
    Ok(acc)
}

/// `λ² = c·q²` of a conformal map.
pub fn dilation_of(map: &RationalMap) -> Result<RealSquare> {
    map.dilation()
}
