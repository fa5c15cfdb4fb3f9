//! Rational parametric curves, their speed, the PH test and the named
//! example curves.

use crate::error::{Error, Result};
use crate::polynomial::Vars;
use crate::ratcalc::{is_square_over_reals, RatFunc, RealSquare};
use crate::scalar::Rational;
use crate::text::{parse_expr, parse_scalar};

/// A rational curve `t ↦ (r₁(t), …, rₙ(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PHCurve {
    components: Vec<RatFunc<Rational>>,
}

impl PHCurve {
    pub fn new(components: Vec<RatFunc<Rational>>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let vars = first.vars().clone();
        if vars.len() != 1 {
            return Err(Error::NotUnivariate(vars.names().join(",")));
        }
        if components.iter().any(|c| c.vars() != &vars) {
            return Err(Error::Format("curve components must share the parameter".into()));
        }
        Ok(PHCurve { components })
    }

    /// Parse one expression per component in the parameter `param`.
    pub fn parse(param: &str, components: &[&str]) -> Result<Self> {
        let vars = Vars::new([param]);
        Self::new(components.iter().map(|c| parse_expr(c, &vars)).collect::<Result<_>>()?)
    }

    pub fn components(&self) -> &[RatFunc<Rational>] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    pub fn param(&self) -> &str {
        &self.vars().names()[0]
    }

    pub fn hodograph(&self) -> Vec<RatFunc<Rational>> {
        self.components.iter().map(|c| c.derivative(0)).collect()
    }

    /// `Σ rᵢ′(t)²`
    pub fn speed_squared(&self) -> RatFunc<Rational> {
        self.hodograph()
            .iter()
            .fold(RatFunc::zero(self.vars()), |acc, d| acc.add(&d.mul(d)))
    }

    /// `(c, q)` with speed² = c·q², or `None` when the curve is not PH.
    pub fn is_ph(&self) -> Option<RealSquare> {
        is_square_over_reals(&self.speed_squared())
    }

    /// Point at a parameter value; `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(std::slice::from_ref(t))).collect()
    }

    /// `t ↦ r(s·t + a)`
    pub fn reparametrize(&self, s: &Rational, a: &Rational) -> PHCurve {
        let vars = self.vars();
        let arg = RatFunc::var(vars, 0).scale(s).add(&RatFunc::constant(vars, a.clone()));
        let components = self
            .components
            .iter()
            .map(|c| c.compose(std::slice::from_ref(&arg)).expect("affine substitution"))
            .collect();
        PHCurve { components }
    }

    /// The same curve in one more dimension, with last coordinate zero.
    pub fn with_zero_component(&self) -> PHCurve {
        let mut components = self.components.clone();
        components.push(RatFunc::zero(self.vars()));
        PHCurve { components }
    }

    /// `a + t·d`
    pub fn line(a: &[Rational], d: &[Rational]) -> Result<PHCurve> {
        if a.len() != d.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: d.len() });
        }
        let vars = Vars::new(["t"]);
        let t = RatFunc::var(&vars, 0);
        Self::new(
            a.iter()
                .zip(d)
                .map(|(ai, di)| t.scale(di).add(&RatFunc::constant(&vars, ai.clone())))
                .collect(),
        )
    }
}

const NAMES: &str = "tschirnhausen_rational, kozak_quintic_space, paper_quintic_planar, line(a;d)";

/// The example curves by name. Lines are written `line(a1,a2;d1,d2)`.
pub fn named_curve(name: &str) -> Result<PHCurve> {
    let name = name.trim();
    match name {
        "tschirnhausen_rational" => PHCurve::parse("t", &["t^3 - 3*t", "3*t^2"]),
        "kozak_quintic_space" => PHCurve::parse(
            "t",
            &[
                "-t*(t^2-4)/(60*(t^2+1))",
                "-2*t*(3*t-1)/(60*(t^2+1))",
                "-t*(3*t+4)/(60*(t^2+1))",
            ],
        ),
        "paper_quintic_planar" => PHCurve::parse(
            "t",
            &[
                "(t^5-6*t^4+29*t^3-45*t^2+55*t+25)/((t^2-4*t+13)*(t^2-2*t+2))",
                "(-8*t^3+48*t^2-122*t+125)/((t^2-4*t+13)*(t^2-2*t+2))",
            ],
        ),
        _ => {
            let unknown = || Error::UnknownName(format!("{name} (known: {NAMES})"));
            let body = name
                .strip_prefix("line(")
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(unknown)?;
            let (a, d) = body.split_once(';').ok_or_else(unknown)?;
            let nums = |s: &str| -> Result<Vec<Rational>> {
                s.split(',').map(|x| parse_scalar(x.trim())).collect()
            };
            PHCurve::line(&nums(a)?, &nums(d)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn rf(s: &str) -> RatFunc<Rational> {
        parse_expr(s, &Vars::new(["t"])).unwrap()
    }

    #[test]
    fn speed_examples() {
        let line = named_curve("line(1,2;3,4)").unwrap();
        assert_eq!(line.speed_squared(), rf("25"));
        let r = named_curve("tschirnhausen_rational").unwrap();
        assert_eq!(r.speed_squared().to_string(), "9*t^4 + 18*t^2 + 9");
        let img = PHCurve::parse("t", &["-7*t^2+3*t", "24*t^2+4*t"]).unwrap();
        assert_eq!(img.speed_squared(), rf("25*(100*t^2+12*t+1)"));
        // the squared position is 25t²(25t²+6t+1); neither is a square
        let pos = img.components().iter().fold(rf("0"), |acc, c| acc.add(&c.mul(c)));
        assert_eq!(pos, rf("25*t^2*(25*t^2+6*t+1)"));
    }

    #[test]
    fn ph_examples() {
        let s = named_curve("tschirnhausen_rational").unwrap().is_ph().unwrap();
        assert_eq!(s.expand(), rf("(3*t^2+3)^2"));
        assert_eq!(s.folded().root, rf("3*t^2+3"));

        let s = named_curve("kozak_quintic_space").unwrap().is_ph().unwrap();
        assert_eq!(s.expand(), rf("((t^2+6)/(60*(t^2+1)))^2"));

        let img = PHCurve::parse("t", &["-7*t^2+3*t", "24*t^2+4*t"]).unwrap();
        assert!(img.is_ph().is_none());

        assert!(named_curve("paper_quintic_planar").unwrap().is_ph().is_some());
    }

    #[test]
    fn quintic_denominator() {
        let c = named_curve("paper_quintic_planar").unwrap();
        for comp in c.components() {
            assert_eq!(comp.den(), rf("(t^2-4*t+13)*(t^2-2*t+2)").num());
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(named_curve("cardioid"), Err(Error::UnknownName(_))));
        assert!(matches!(named_curve("line(1,2;3)"), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closure_operations() {
        let r = named_curve("kozak_quintic_space").unwrap();
        assert!(r.reparametrize(&q(-3, 2), &q(1, 5)).is_ph().is_some());
        assert!(r.with_zero_component().is_ph().is_some());
        let r = named_curve("tschirnhausen_rational").unwrap();
        assert_eq!(r.eval(&q(2, 1)).unwrap(), vec![q(2, 1), q(12, 1)]);
    }
}
