//! Rational functions over a [`Field`]: arithmetic in reduced form,
//! derivatives, substitution, real-square tests, square extraction and
//! Hermite reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::{content_and_primitive_idx, monic_sqrt, poly_gcd, squarefree_decompose, MultiPoly, Vars};
use crate::scalar::{Field, Rational};
use crate::univariate::UniPoly;

/// A quotient `num / den` with `gcd(num, den)` constant and `den` having unit
/// leading coefficient. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Field> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Reduce `num / den` to normal form.
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(crate::ScalarError::DivisionByZero.into());
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.vars()));
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_coprime(num, den));
        }
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        Ok(Self::from_coprime(num, den))
    }

    /// Assemble from coprime parts, fixing only the leading coefficient of
    /// the denominator.
    fn from_coprime(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        if num.is_zero() {
            return RatFunc::zero(num.vars());
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inv().expect("nonzero denominator");
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        RatFunc { num: MultiPoly::zero(vars), den: MultiPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: &Vars, c: F) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: &Vars, k: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, k))
    }

    pub fn num(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<F> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn uses_var(&self, k: usize) -> bool {
        self.num.uses_var(k) || self.den.uses_var(k)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let t = &self.num + &other.num;
            return Self::new(t, self.den.clone()).expect("nonzero denominator");
        }
        let g = poly_gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return Self::from_coprime(num, &self.den * &other.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&other.num * &b1);
        if t.is_zero() {
            return Self::zero(self.vars());
        }
        let g2 = poly_gcd(&t, &g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = &b1 * &other.den.div_exact(&g2).expect("gcd divides");
        Self::from_coprime(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::from_coprime(&a * &c, &b * &d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(crate::ScalarError::DivisionByZero.into());
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        // numerator and denominator stay coprime under powers
        Self::from_coprime(self.num.pow(e), self.den.pow(e))
    }

    pub fn derivative(&self, k: usize) -> Self {
        if self.den.is_constant() {
            return RatFunc { num: self.num.derivative(k), den: self.den.clone() };
        }
        let dd = self.den.derivative(k);
        let g = poly_gcd(&self.den, &dd);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let dd1 = dd.div_exact(&g).expect("gcd divides");
        let num = &(&self.num.derivative(k) * &d1) - &(&self.num * &dd1);
        Self::new(num, &self.den * &d1).expect("nonzero denominator")
    }

    /// Value at a point, `None` where the denominator vanishes.
    pub fn eval(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) * &d.inv()?)
    }

    /// Substitute `args[j]` for variable `j`. All arguments must share one
    /// ring, which becomes the ring of the result. `None` when the
    /// denominator collapses to zero.
    pub fn compose(&self, args: &[RatFunc<F>]) -> Option<RatFunc<F>> {
        assert_eq!(args.len(), self.vars().len(), "one argument per variable");
        let target = args.first().map(|a| a.vars().clone())?;
        let (nn, nd) = compose_poly(&self.num, args, &target);
        let (dn, dd) = compose_poly(&self.den, args, &target);
        if dn.is_zero() {
            return None;
        }
        // (nn / nd) / (dn / dd)
        Some(Self::new(&nn * &dd, &nd * &dn).expect("nonzero denominator"))
    }

    /// Same function over another ring; variable `j` maps to `map[j]`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Self {
        RatFunc { num: self.num.embed(target, map), den: self.den.embed(target, map) }
    }

    pub fn with_vars(&self, vars: &Vars) -> Self {
        RatFunc { num: self.num.with_vars(vars), den: self.den.with_vars(vars) }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f)).expect("nonzero denominator")
    }
}

/// Substitute rational functions into a polynomial, returning an unreduced
/// numerator/denominator pair over `target`. All arguments are put over
/// their least common denominator `L`; the result is over `L^deg p`.
fn compose_poly<F: Field>(p: &MultiPoly<F>, args: &[RatFunc<F>], target: &Vars) -> (MultiPoly<F>, MultiPoly<F>) {
    let mut lcm = MultiPoly::one(target);
    for a in args {
        if !a.is_polynomial() {
            let g = poly_gcd(&lcm, a.den());
            lcm = &lcm * &a.den().div_exact(&g).expect("gcd divides");
        }
    }
    let lifted: Vec<MultiPoly<F>> = args
        .iter()
        .map(|a| if a.is_polynomial() { &a.num * &lcm } else { &a.num * &lcm.div_exact(a.den()).expect("divides lcm") })
        .collect();
    let total = p.total_degree() as usize;
    let powers = |base: &MultiPoly<F>, upto: usize| -> Vec<MultiPoly<F>> {
        let mut v = vec![MultiPoly::one(target)];
        for j in 1..=upto {
            let next = &v[j - 1] * base;
            v.push(next);
        }
        v
    };
    let arg_pows: Vec<Vec<MultiPoly<F>>> =
        lifted.iter().enumerate().map(|(k, a)| powers(a, p.degree_in(k) as usize)).collect();
    let lcm_pows = powers(&lcm, total);
    let mut num = MultiPoly::zero(target);
    for (e, c) in p.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        let mut deg = 0usize;
        for (k, &ek) in e.iter().enumerate() {
            if ek > 0 {
                t = &t * &arg_pows[k][ek as usize];
                deg += ek as usize;
            }
        }
        if total > deg {
            t = &t * &lcm_pows[total - deg];
        }
        num = &num + &t;
    }
    (num, lcm_pows[total].clone())
}

fn needs_parens<F: Field>(p: &MultiPoly<F>) -> bool {
    p.num_terms() > 1
}

impl<F: Field> fmt::Display for RatFunc<F> {
    /// `num / den`, with parentheses around compound parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = if needs_parens(&self.num) { format!("({})", self.num) } else { self.num.to_string() };
        let den_is_power = self.den.num_terms() == 1 && self.den.used_vars().len() == 1;
        let den = if den_is_power { self.den.to_string() } else { format!("({})", self.den) };
        write!(f, "{num} / {den}")
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Univariate rendering as polynomial part plus proper part, e.g.
/// `1/3*z^3 + 2*z - 1/z`. Falls back to `num / den` for multivariate input.
pub fn format_split<F: Field>(f: &RatFunc<F>) -> String {
    let used: Vec<usize> = {
        let mut u = f.num().used_vars();
        for k in f.den().used_vars() {
            if !u.contains(&k) {
                u.push(k);
            }
        }
        u
    };
    if f.is_polynomial() || used.len() != 1 {
        return f.to_string();
    }
    let k = used[0];
    let vars = f.vars();
    let a = f.num().to_univariate(k).expect("univariate");
    let d = f.den().to_univariate(k).expect("univariate");
    let (q, r) = a.divrem(&d);
    let q = MultiPoly::from_univariate(vars, k, &q);
    let r = MultiPoly::from_univariate(vars, k, &r);
    let den = f.den();
    let den_text = if den.num_terms() == 1 { den.to_string() } else { format!("({den})") };
    // pull a leading minus out of single-term remainders
    let (neg, r_text) = if r.num_terms() == 1 {
        let lc = r.leading_coeff();
        let (neg, _) = lc.coeff_text();
        let shown = if neg { -&r } else { r.clone() };
        (neg, shown.to_string())
    } else {
        (false, format!("({r})"))
    };
    let proper = format!("{r_text}/{den_text}");
    if q.is_zero() {
        if neg {
            format!("-{proper}")
        } else {
            proper
        }
    } else if neg {
        format!("{q} - {proper}")
    } else {
        format!("{q} + {proper}")
    }
}

// ---------------------------------------------------------------------------
// squares

/// `f = scale · root²` with `scale > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealSquare {
    pub scale: Rational,
    pub root: RatFunc<Rational>,
}

impl RealSquare {
    /// Move `scale` into `root` when it is a rational square.
    pub fn folded(&self) -> RealSquare {
        match crate::scalar::rat_is_square(&self.scale) {
            Some(s) => RealSquare { scale: Rational::one_value(), root: self.root.scale(&s) },
            None => self.clone(),
        }
    }

    pub fn expand(&self) -> RatFunc<Rational> {
        self.root.pow(2).scale(&self.scale)
    }
}

impl fmt::Display for RealSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.root.is_polynomial() && self.root.num().num_terms() == 1 {
            self.root.to_string()
        } else {
            format!("({})", self.root)
        };
        if self.scale == Rational::one_value() {
            write!(f, "{root}^2")
        } else {
            write!(f, "{}*{root}^2", self.scale)
        }
    }
}

impl Rational {
    fn one_value() -> Rational {
        <Rational as Field>::one()
    }
}

/// Test whether `f` is a square in ℝ(vars): returns `(c, q)` with
/// `f = c·q²`, `c > 0` rational and `q` having unit leading coefficients in
/// numerator and denominator.
///
/// With the denominator monic, `f` is such a square exactly when
/// `num / lc(num)` and `den` are squares of monic polynomials and
/// `lc(num) > 0`; those roots are extracted term by term.
pub fn is_square_over_reals(f: &RatFunc<Rational>) -> Option<RealSquare> {
    let vars = f.vars();
    if f.is_zero() {
        return Some(RealSquare { scale: Rational::one_value(), root: RatFunc::zero(vars) });
    }
    let c = f.num().leading_coeff();
    if !c.is_positive() {
        return None;
    }
    let qn = monic_sqrt(&f.num().scale(&c.inv()?))?;
    let qd = monic_sqrt(f.den())?;
    Some(RealSquare { scale: c, root: RatFunc::from_coprime(qn, qd) })
}

/// Factor `f = g·h²` with `g` free of `x_vars`, the constructive square
/// extraction over `ℚ[y]` where `y` are the remaining variables.
pub fn square_extract<F: Field>(f: &RatFunc<F>, x_vars: &[&str]) -> Result<(RatFunc<F>, RatFunc<F>)> {
    let vars = f.vars();
    let xs: Vec<usize> = x_vars.iter().map(|v| vars.require(v)).collect::<Result<_>>()?;
    let ys: Vec<usize> = (0..vars.len()).filter(|k| !xs.contains(k)).collect();
    if f.is_zero() {
        return Ok((RatFunc::zero(vars), RatFunc::one(vars)));
    }
    let split = |p: &MultiPoly<F>| -> Result<(MultiPoly<F>, MultiPoly<F>)> {
        let (content, primitive) = content_and_primitive_idx(p, &ys)?;
        if primitive.is_constant() {
            return Ok((&content * &primitive, MultiPoly::one(vars)));
        }
        let sf = squarefree_decompose(&primitive)?;
        if !sf.all_even() {
            return Err(Error::NotGenericallySquare);
        }
        let h = sf.factors.iter().fold(MultiPoly::one(vars), |acc, (q, m)| &acc * &q.pow(m / 2));
        Ok((content.scale(&sf.constant), h))
    };
    let (gn, hn) = split(f.num())?;
    let (gd, hd) = split(f.den())?;
    let g = RatFunc::new(gn, gd)?;
    let h = RatFunc::new(hn, hd)?;
    debug_assert!(xs.iter().all(|&k| !g.uses_var(k)));
    Ok((g, h))
}

// ---------------------------------------------------------------------------
// Hermite reduction

/// `input = rational_part′ + remainder`, with a square-free remainder
/// denominator. `rational_part` includes the primitive of the polynomial part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteResult<F: Field> {
    pub rational_part: RatFunc<F>,
    pub remainder: RatFunc<F>,
}

fn univariate_parts<F: Field>(f: &RatFunc<F>, var: &str) -> Result<(usize, UniPoly<F>, UniPoly<F>)> {
    let k = f.vars().require(var)?;
    let a = f.num().to_univariate(k).ok_or_else(|| Error::NotUnivariate(var.to_string()))?;
    let d = f.den().to_univariate(k).ok_or_else(|| Error::NotUnivariate(var.to_string()))?;
    Ok((k, a, d))
}

/// Hermite reduction (Mack's linear variant) of a univariate rational function.
pub fn hermite_reduce<F: Field>(f: &RatFunc<F>, var: &str) -> Result<HermiteResult<F>> {
    let (k, a, d) = univariate_parts(f, var)?;
    let vars = f.vars();
    let lift = |p: &UniPoly<F>| MultiPoly::from_univariate(vars, k, p);

    let (poly_part, mut a) = a.divrem(&d);
    let mut g = RatFunc::from_poly(lift(&poly_part.integral()));

    let mut d_minus = d.gcd(&d.derivative());
    let d_star = d.div_exact(&d_minus).expect("gcd divides");
    while d_minus.deg() > 0 {
        let d_minus2 = d_minus.gcd(&d_minus.derivative());
        let d_minus_star = d_minus.div_exact(&d_minus2).expect("gcd divides");
        let lhs = d_star
            .mul(&d_minus.derivative())
            .div_exact(&d_minus)
            .expect("exact by construction")
            .neg();
        let (b, c) = UniPoly::solve_bezout(&lhs, &d_minus_star, &a).expect("coprime by construction");
        let correction = b.derivative().mul(&d_star).div_exact(&d_minus_star).expect("exact by construction");
        a = c.sub(&correction);
        g = g.add(&RatFunc::new(lift(&b), lift(&d_minus))?);
        d_minus = d_minus2;
    }
    let remainder = RatFunc::new(lift(&a), lift(&d_star))?;
    Ok(HermiteResult { rational_part: g, remainder })
}

/// Antiderivative with zero integration constant when it is rational.
pub fn rational_primitive<F: Field>(f: &RatFunc<F>, var: &str) -> Result<Option<RatFunc<F>>> {
    let h = hermite_reduce(f, var)?;
    Ok(h.remainder.is_zero().then_some(h.rational_part))
}
