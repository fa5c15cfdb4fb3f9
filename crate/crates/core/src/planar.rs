//! Complex-analytic plane constructions: `Φ′ = Ψ²`, residue conditions for
//! simple poles, and the passage between complex and real map forms.

use crate::curve::PHCurve;
use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::map::RationalMap;
use crate::polynomial::{poly_sqrt, MultiPoly, Vars};
use crate::ratcalc::{hermite_reduce, RatFunc};
use crate::scalar::{Field, GaussianRational, Rational};

/// A rational function of one complex variable over ℚ(i).
pub type ComplexRatFunc = RatFunc<GaussianRational>;

fn single_var(f: &ComplexRatFunc) -> Result<String> {
    let names = f.vars().names();
    if names.len() != 1 {
        return Err(Error::NotUnivariate(names.join(",")));
    }
    Ok(names[0].clone())
}

/// `Φ = ∫Ψ²` with zero integration constant.
pub fn phi_from_psi(psi: &ComplexRatFunc) -> Result<ComplexRatFunc> {
    let var = single_var(psi)?;
    let h = hermite_reduce(&psi.mul(psi), &var)?;
    if !h.remainder.is_zero() {
        return Err(Error::NonzeroResidue(h.remainder.to_string()));
    }
    Ok(h.rational_part)
}

/// `Ψ` with `Ψ² = Φ′`, sign-normalized, if it exists over ℚ(i).
pub fn psi_sqrt_of_derivative(dphi: &ComplexRatFunc) -> Option<ComplexRatFunc> {
    let num = poly_sqrt(dphi.num())?;
    let den = poly_sqrt(dphi.den())?;
    RatFunc::new(num, den).ok()
}

/// Split `f(x₁, …)` with real variables into real and imaginary parts.
pub fn split_real_imag(f: &ComplexRatFunc) -> (RatFunc<Rational>, RatFunc<Rational>) {
    let conj_den = f.den().map_coeffs(|c| c.conj());
    let num = f.num() * &conj_den;
    let den = (f.den() * &conj_den).map_coeffs(|c| c.re.clone());
    let re = RatFunc::new(num.map_coeffs(|c| c.re.clone()), den.clone()).expect("nonzero denominator");
    let im = RatFunc::new(num.map_coeffs(|c| c.im.clone()), den).expect("nonzero denominator");
    (re, im)
}

/// Substitute `z = x ± i·y` into a function of one complex variable, over
/// the ring `(x, y)`.
pub fn substitute_xy(phi: &ComplexRatFunc, conjugate: bool) -> Result<ComplexRatFunc> {
    single_var(phi)?;
    let xy = Vars::new(["x", "y"]);
    let iy = RatFunc::var(&xy, 1).scale(&GaussianRational::i());
    let z = if conjugate { RatFunc::var(&xy, 0).sub(&iy) } else { RatFunc::var(&xy, 0).add(&iy) };
    phi.compose(&[z]).ok_or(Error::PoleCollapse)
}

/// `(x, y) ↦ (Re Φ, Im Φ)`, or the anti-holomorphic `(Re Φ(z̄), −Im Φ(z̄))`.
pub fn complex_to_real_map(phi: &ComplexRatFunc, conjugate: bool) -> Result<RationalMap> {
    let (re, im) = split_real_imag(&substitute_xy(phi, conjugate)?);
    let im = if conjugate { im.neg() } else { im };
    RationalMap::new(2, vec![re, im])
}

/// The planar curve `t ↦ (Re f(t), Im f(t))` for a real parameter.
pub fn complex_curve(f: &ComplexRatFunc) -> Result<PHCurve> {
    single_var(f)?;
    let t = Vars::new(["t"]);
    let (re, im) = split_real_imag(&f.with_vars(&t));
    PHCurve::new(vec![re, im])
}

/// `Ψ = p(z) + Σₖ Σⱼ aₖ,ⱼ/(z − cₖ)ʲ`; coefficient lists start at `j = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSpec {
    polynomial_part: ComplexRatFunc,
    poles: Vec<(GaussianRational, Vec<GaussianRational>)>,
}

fn check_distinct(locations: &[&GaussianRational]) -> Result<()> {
    for (k, c) in locations.iter().enumerate() {
        if locations[..k].contains(c) {
            return Err(Error::DuplicatePole);
        }
    }
    Ok(())
}

impl LaurentSpec {
    pub fn new(polynomial_part: ComplexRatFunc, poles: Vec<(GaussianRational, Vec<GaussianRational>)>) -> Result<Self> {
        single_var(&polynomial_part)?;
        if !polynomial_part.is_polynomial() {
            return Err(Error::Format("polynomial part has a denominator".into()));
        }
        check_distinct(&poles.iter().map(|(c, _)| c).collect::<Vec<_>>())?;
        Ok(LaurentSpec { polynomial_part, poles })
    }

    pub fn polynomial_part(&self) -> &ComplexRatFunc {
        &self.polynomial_part
    }

    pub fn poles(&self) -> &[(GaussianRational, Vec<GaussianRational>)] {
        &self.poles
    }

    /// Whether every pole carries at least one coefficient.
    pub fn is_complete(&self) -> bool {
        self.poles.iter().all(|(_, a)| !a.is_empty())
    }

    pub fn with_simple_coeffs(&self, coeffs: &[GaussianRational]) -> Result<LaurentSpec> {
        if coeffs.len() != self.poles.len() {
            return Err(Error::DimensionMismatch { expected: self.poles.len(), found: coeffs.len() });
        }
        let poles = self.poles.iter().zip(coeffs).map(|((c, _), a)| (c.clone(), vec![a.clone()])).collect();
        LaurentSpec::new(self.polynomial_part.clone(), poles)
    }

    fn pole_term(&self, c: &GaussianRational, coeffs: &[GaussianRational]) -> ComplexRatFunc {
        let vars = self.polynomial_part.vars();
        let shift = RatFunc::var(vars, 0).sub(&RatFunc::constant(vars, c.clone()));
        let mut acc = RatFunc::zero(vars);
        for (j, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = shift.pow(j as u32 + 1).inv().expect("nonzero").scale(a);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_psi(&self) -> ComplexRatFunc {
        self.poles
            .iter()
            .fold(self.polynomial_part.clone(), |acc, (c, a)| acc.add(&self.pole_term(c, a)))
    }
}

/// Coefficient of `(z − cₖ)⁻¹` in `Ψ²` for a simple pole `k` (0-based):
/// `2·aₖ·R(cₖ)` with `R = Ψ − aₖ/(z − cₖ)`.
pub fn residue_of_square_at_simple_pole(spec: &LaurentSpec, k: usize) -> Result<GaussianRational> {
    let (c, coeffs) = spec.poles.get(k).ok_or(Error::NoSuchPole(k))?;
    if coeffs.len() > 1 {
        return Err(Error::HigherOrderPole(k));
    }
    let Some(a) = coeffs.first() else {
        return Err(Error::Format(format!("pole {k} has no coefficient")));
    };
    let rest = spec.to_psi().sub(&spec.pole_term(c, coeffs));
    let value = rest.eval(std::slice::from_ref(c)).expect("other poles are distinct");
    Ok(GaussianRational::from_i64(2) * a * &value)
}

/// Solve `p(cₖ) + Σ_{j≠k} aⱼ/(cₖ − cⱼ) = 0` for the simple-pole coefficients.
/// `None` when no solution has every `aₖ ≠ 0`.
pub fn solve_simple_pole_coeffs(
    poly_part: &ComplexRatFunc,
    locations: &[GaussianRational],
) -> Result<Option<Vec<GaussianRational>>> {
    single_var(poly_part)?;
    if !poly_part.is_polynomial() {
        return Err(Error::Format("polynomial part has a denominator".into()));
    }
    check_distinct(&locations.iter().collect::<Vec<_>>())?;
    let n = locations.len();
    let mut a = vec![vec![GaussianRational::zero(); n]; n];
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        for j in 0..n {
            if j != k {
                a[k][j] = (locations[k].clone() - &locations[j]).inv().expect("distinct poles");
            }
        }
        let p = poly_part.eval(std::slice::from_ref(&locations[k])).expect("polynomial");
        b.push(-p);
    }
    match linalg::solve(&a, &b) {
        Solution::Unique(x) if x.iter().all(|v| !v.is_zero()) => Ok(Some(x)),
        Solution::Unique(_) | Solution::Inconsistent => Ok(None),
        Solution::Underdetermined => Err(Error::SingularSystem),
    }
}

/// `(a₂² = 3a₁a₃ and a₋₁ = 0) or (a₁² + 12a₃a₋₁ = 0 and a₂ = 0)` for the
/// tuple `(a₋₁, a₀, a₁, a₂, a₃)`.
pub fn laurent_cubic_condition(a: &[GaussianRational; 5], _c: &GaussianRational) -> bool {
    let [am1, _a0, a1, a2, a3] = a;
    let three = GaussianRational::from_i64(3);
    let twelve = GaussianRational::from_i64(12);
    let first = a2.clone() * a2 == three * a1 * a3 && am1.is_zero();
    let second = (a1.clone() * a1 + &(twelve * a3 * am1)).is_zero() && a2.is_zero();
    first || second
}

/// `Σ aᵢ (z − c)ⁱ` for `i = −1..3`, as a function of `z`.
pub fn laurent_cubic(a: &[GaussianRational; 5], c: &GaussianRational) -> ComplexRatFunc {
    let vars = Vars::new(["z"]);
    let shift = RatFunc::var(&vars, 0).sub(&RatFunc::constant(&vars, c.clone()));
    let mut acc = shift.inv().expect("nonzero").scale(&a[0]);
    for (i, ai) in a[1..].iter().enumerate() {
        acc = acc.add(&shift.pow(i as u32).scale(ai));
    }
    acc
}

/// Squared modulus `|f(x + i·y)|²` as a real function of `(x, y)`.
pub fn modulus_squared_xy(f: &ComplexRatFunc) -> Result<RatFunc<Rational>> {
    let (re, im) = split_real_imag(&substitute_xy(f, false)?);
    Ok(re.mul(&re).add(&im.mul(&im)))
}

/// Embed a real polynomial into ℚ(i).
pub fn complexify(p: &MultiPoly<Rational>) -> MultiPoly<GaussianRational> {
    p.map_coeffs(|c| GaussianRational::real(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::named_curve;
    use crate::text::parse_expr;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn cz(s: &str) -> ComplexRatFunc {
        parse_expr(s, &Vars::new(["z"])).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_from_psi(&cz("z")).unwrap(), cz("z^3/3"));
        assert_eq!(phi_from_psi(&cz("(z^2+1)/z")).unwrap(), cz("z^3/3 + 2*z - 1/z"));
        match phi_from_psi(&cz("1 + 1/z")) {
            Err(Error::NonzeroResidue(r)) => assert_eq!(cz(&r), cz("2/z")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_sqrt_of_derivative(&cz("(z^2+1)^2/z^2")), Some(cz("(z^2+1)/z")));
        assert_eq!(psi_sqrt_of_derivative(&cz("z^2")), Some(cz("z")));
        assert_eq!(psi_sqrt_of_derivative(&cz("z")), None);
        assert_eq!(psi_sqrt_of_derivative(&cz("-z^2")), Some(cz("i*z")));
    }

    #[test]
    fn real_form_examples() {
        let m = complex_to_real_map(&cz("z^2 + z"), false).unwrap();
        assert_eq!(m, RationalMap::parse(&["x", "y"], 2, &["x^2-y^2+x", "2*x*y+y"]).unwrap());
        let m = complex_to_real_map(&cz("z"), false).unwrap();
        assert_eq!(m, RationalMap::parse(&["x", "y"], 2, &["x", "y"]).unwrap());
        let m = complex_to_real_map(&cz("z^3/3"), false).unwrap();
        assert_eq!(m, RationalMap::parse(&["x", "y"], 2, &["(x^3-3*x*y^2)/3", "(3*x^2*y-y^3)/3"]).unwrap());
        assert!(m.is_ph_preserving().unwrap().is_preserving());
    }

    #[test]
    fn conjugate_form() {
        // z̄ ↦ conj(z̄²) equals z² on the real form
        let m = complex_to_real_map(&cz("z^2"), true).unwrap();
        assert_eq!(m, RationalMap::parse(&["x", "y"], 2, &["x^2-y^2", "2*x*y"]).unwrap());
        let m = complex_to_real_map(&cz("i*z"), true).unwrap();
        assert_eq!(m, RationalMap::parse(&["x", "y"], 2, &["y", "-x"]).unwrap());
        assert!(m.is_ph_preserving().unwrap().is_preserving());
    }

    #[test]
    fn real_form_with_poles() {
        let m = complex_to_real_map(&cz("z^3/3 + 2*z - 1/z"), false).unwrap();
        let s = m.is_ph_preserving().unwrap().dilation().unwrap().clone();
        let expected = modulus_squared_xy(&cz("(z^2+1)/z")).unwrap();
        assert_eq!(s.expand(), expected.mul(&expected));
    }

    fn quintic_spec() -> LaurentSpec {
        LaurentSpec::new(cz("1"), vec![(g(2, 3), vec![g(1, 2)]), (g(1, 1), vec![g(-1, -2)])]).unwrap()
    }

    #[test]
    fn residue_examples() {
        let spec = quintic_spec();
        assert!(residue_of_square_at_simple_pole(&spec, 0).unwrap().is_zero());
        assert!(residue_of_square_at_simple_pole(&spec, 1).unwrap().is_zero());

        let spec = LaurentSpec::new(cz("1"), vec![(g(0, 0), vec![g(1, 0)])]).unwrap();
        assert_eq!(residue_of_square_at_simple_pole(&spec, 0).unwrap(), g(2, 0));

        let spec = LaurentSpec::new(cz("0"), vec![(g(0, 0), vec![g(1, 0)])]).unwrap();
        assert!(residue_of_square_at_simple_pole(&spec, 0).unwrap().is_zero());

        let spec = LaurentSpec::new(cz("1"), vec![(g(0, 0), vec![g(1, 0), g(1, 0)])]).unwrap();
        assert_eq!(residue_of_square_at_simple_pole(&spec, 0), Err(Error::HigherOrderPole(0)));
        assert_eq!(residue_of_square_at_simple_pole(&spec, 3), Err(Error::NoSuchPole(3)));
    }

    #[test]
    fn residue_matches_hermite() {
        let spec = LaurentSpec::new(cz("z + 2"), vec![(g(1, -1), vec![g(3, 1)]), (g(0, 2), vec![g(-1, 0)])]).unwrap();
        let psi = spec.to_psi();
        let h = hermite_reduce(&psi.mul(&psi), "z").unwrap();
        for (k, (c, _)) in spec.poles().iter().enumerate() {
            let r = residue_of_square_at_simple_pole(&spec, k).unwrap();
            // residue of remainder N/D at a simple root c is N(c)/D'(c)
            let n = h.remainder.num().eval(std::slice::from_ref(c));
            let d = h.remainder.den().derivative(0).eval(std::slice::from_ref(c));
            assert_eq!(r, n * &d.inv().unwrap());
        }
    }

    #[test]
    fn solve_examples() {
        let sol = solve_simple_pole_coeffs(&cz("1"), &[g(2, 3), g(1, 1)]).unwrap();
        assert_eq!(sol, Some(vec![g(1, 2), g(-1, -2)]));
        assert_eq!(solve_simple_pole_coeffs(&cz("1"), &[g(5, 1)]).unwrap(), None);
        assert_eq!(solve_simple_pole_coeffs(&cz("0"), &[g(0, 0), g(1, 0)]).unwrap(), None);
        assert_eq!(solve_simple_pole_coeffs(&cz("1"), &[g(1, 0), g(1, 0)]), Err(Error::DuplicatePole));
    }

    #[test]
    fn planar_quintic_from_psi() {
        let spec = quintic_spec();
        let phi = phi_from_psi(&spec.to_psi()).unwrap();
        assert_eq!(phi, cz("z + (3-4*i)/(z-2-3*i) + (3-4*i)/(z-1-i)"));
        let curve = complex_curve(&phi).unwrap();
        assert_eq!(curve, named_curve("paper_quintic_planar").unwrap());
    }

    #[test]
    fn cubic_condition_examples() {
        let z = g(0, 0);
        assert!(laurent_cubic_condition(&[g(0, 0), g(0, 0), g(3, 0), g(3, 0), g(1, 0)], &z));
        assert!(!laurent_cubic_condition(&[g(0, 0), g(1, 0), g(0, 0), g(1, 0), g(1, 0)], &z));
        assert!(laurent_cubic_condition(&[g(0, 0), g(0, 0), g(0, 0), g(0, 0), g(1, 0)], &z));
    }

    #[test]
    fn cubic_condition_matches_ph() {
        let c = g(1, 2);
        // b₋₁ = 0: a₁ = b₀², a₂ = b₀b₁, a₃ = b₁²/3
        let (b0, b1) = (g(1, 1), g(2, -1));
        let three = GaussianRational::from_i64(3);
        let a = [g(0, 0), g(5, 7), b0.clone() * &b0, b0.clone() * &b1, b1.clone() * &b1 * &three.inv().unwrap()];
        assert!(laurent_cubic_condition(&a, &c));
        assert!(complex_curve(&laurent_cubic(&a, &c)).unwrap().is_ph().is_some());
        let bad = [g(1, 1), g(0, 0), g(1, 3), g(2, 1), g(1, -1)];
        assert!(!laurent_cubic_condition(&bad, &c));
        assert!(complex_curve(&laurent_cubic(&bad, &c)).unwrap().is_ph().is_none());
    }
}
