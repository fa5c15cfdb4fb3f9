//! Seeded example collections: PH curves, PH-preserving maps and random
//! Möbius words, shared by the test suites and the command-line checks.

use rand::Rng;

use crate::curve::{named_curve, PHCurve};
use crate::error::Result;
use crate::map::{conformal_family_at, sphere_map, RationalMap};
use crate::moebius::{word_to_map, MoebiusFactor, MoebiusWord};
use crate::planar::{complex_to_real_map, phi_from_psi, solve_simple_pole_coeffs, LaurentSpec};
use crate::polynomial::{MultiPoly, Vars};
use crate::scalar::{Field, GaussianRational, Rational};
use crate::text::parse_expr;

/// Parameter pairs `(λ₁, λ₂)` at which the conformal family is sampled.
pub const FAMILY_SAMPLES: [(i64, i64); 5] = [(0, 1), (1, 9), (1, 4), (2, 3), (1, 0)];

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)).expect("nonzero denominator")
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn rational_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// Nonzero polynomial with at most `max_terms` terms, each of degree at most
/// `max_deg` in every variable, and small integer coefficients.
pub fn random_poly(rng: &mut impl Rng, vars: &Vars, max_deg: u32, max_terms: usize) -> MultiPoly<Rational> {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<u32>, Rational)> = (0..n)
            .map(|_| {
                let e = (0..vars.len()).map(|_| rng.gen_range(0..=max_deg)).collect();
                (e, Rational::from(rng.gen_range(-6i64..=6)))
            })
            .collect();
        let p = MultiPoly::from_terms(vars, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Like [`random_poly`] but never constant.
pub fn random_nonconstant_poly(rng: &mut impl Rng, vars: &Vars, max_deg: u32, max_terms: usize) -> MultiPoly<Rational> {
    loop {
        let p = random_poly(rng, vars, max_deg, max_terms);
        if !p.is_constant() {
            return p;
        }
    }
}

/// A Gaussian rational with nonzero imaginary part.
pub fn complex_gaussian(rng: &mut impl Rng) -> GaussianRational {
    GaussianRational::new(small_rational(rng), nonzero_rational(rng))
}

pub fn random_line(rng: &mut impl Rng, n: usize) -> PHCurve {
    let a = rational_vector(rng, n);
    let d = loop {
        let d = rational_vector(rng, n);
        if d.iter().any(|x| !x.is_zero()) {
            break d;
        }
    };
    PHCurve::line(&a, &d).expect("matching lengths")
}

/// Rational orthogonal matrix from the Cayley transform of a random
/// skew-symmetric matrix.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> MoebiusFactor {
    let mut a = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = small_rational(rng);
            a[j][i] = -x.clone();
            a[i][j] = x;
        }
    }
    MoebiusFactor::cayley(&a).expect("I + A is invertible for skew A")
}

pub fn random_factor(rng: &mut impl Rng, n: usize) -> MoebiusFactor {
    match rng.gen_range(0..4) {
        0 => MoebiusFactor::Translation(rational_vector(rng, n)),
        1 => random_orthogonal(rng, n),
        2 => MoebiusFactor::homothety(nonzero_rational(rng)).expect("nonzero"),
        _ => {
            let rho2 = Rational::new(rng.gen_range(1i64..=9), rng.gen_range(1i64..=4)).expect("nonzero");
            MoebiusFactor::inversion(rational_vector(rng, n), rho2).expect("positive radius")
        }
    }
}

/// A word of length `1..=max_len` in dimension `n`.
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> MoebiusWord {
    let len = rng.gen_range(1..=max_len);
    let factors = (0..len).map(|_| random_factor(rng, n)).collect();
    MoebiusWord::new(Some(n), factors).expect("consistent dimension")
}

/// PH curves used as test inputs, by dimension.
pub fn ph_curves(rng: &mut impl Rng, n: usize, lines: usize) -> Vec<(String, PHCurve)> {
    let mut out: Vec<(String, PHCurve)> = Vec::new();
    match n {
        2 => {
            out.push(("tschirnhausen_rational".into(), named_curve("tschirnhausen_rational").expect("named")));
            out.push(("paper_quintic_planar".into(), named_curve("paper_quintic_planar").expect("named")));
        }
        3 => {
            out.push(("kozak_quintic_space".into(), named_curve("kozak_quintic_space").expect("named")));
            let t = named_curve("tschirnhausen_rational").expect("named").with_zero_component();
            out.push(("tschirnhausen_rational+0".into(), t));
        }
        _ => {}
    }
    for k in 0..lines {
        out.push((format!("line#{k}"), random_line(rng, n)));
    }
    out
}

fn cz(text: &str) -> crate::planar::ComplexRatFunc {
    parse_expr(text, &Vars::new(["z"])).expect("well-formed")
}

/// Real forms of `∫Ψ²` for a few Ψ, including the residue-solved quintic.
pub fn psi_constructions() -> Result<Vec<(String, RationalMap)>> {
    let mut out = Vec::new();
    for psi in ["z", "(z^2+1)/z", "z^2 - i*z + 1"] {
        let phi = phi_from_psi(&cz(psi))?;
        out.push((format!("psi={psi}"), complex_to_real_map(&phi, false)?));
    }
    let poles = [GaussianRational::from_ints(2, 3), GaussianRational::from_ints(1, 1)];
    let coeffs = solve_simple_pole_coeffs(&cz("1"), &poles)?.expect("quintic poles are solvable");
    let spec = LaurentSpec::new(cz("1"), poles.iter().cloned().zip(coeffs.into_iter().map(|a| vec![a])).collect())?;
    let phi = phi_from_psi(&spec.to_psi())?;
    out.push(("psi=residue-solved".into(), complex_to_real_map(&phi, false)?));
    out.push(("psi=(z^2+1)/z,conjugate".into(), complex_to_real_map(&phi_from_psi(&cz("(z^2+1)/z"))?, true)?));
    Ok(out)
}

/// Every PH-preserving map in the corpus.
pub fn preserving_maps(rng: &mut impl Rng, words_per_dim: usize) -> Result<Vec<(String, RationalMap)>> {
    let mut out = psi_constructions()?;
    for n in [2, 3] {
        for k in 0..words_per_dim {
            let w = random_word(rng, n, 3);
            out.push((format!("moebius{n}#{k}"), word_to_map(&w)?));
        }
    }
    out.push(("sphere".into(), sphere_map()));
    for (l1, l2) in FAMILY_SAMPLES {
        out.push((format!("family({l1},{l2})"), conformal_family_at(&Rational::from(l1), &Rational::from(l2))));
    }
    Ok(out)
}
