use std::process::ExitCode;
use std::time::Instant;

use phkit::corpus::{
    complex_gaussian, nonzero_rational, ph_curves, preserving_maps, random_nonconstant_poly, random_poly, random_word,
    FAMILY_SAMPLES,
};
use phkit::curve::named_curve;
use phkit::map::{conformal_family, conformal_family_printed_metric, tschirnhausen_quartic, tschirnhausen_s_test, ConstantQuadraticForm};
use phkit::moebius::word_to_map;
use phkit::planar::{
    complex_curve, complex_to_real_map, laurent_cubic, laurent_cubic_condition, phi_from_psi, solve_simple_pole_coeffs,
    ComplexRatFunc, LaurentSpec,
};
use phkit::polynomial::{poly_gcd, poly_sqrt, squarefree_decompose};
use phkit::ratcalc::{format_split, hermite_reduce, is_square_over_reals, square_extract};
use phkit::text::parse_expr;
use phkit::{Error, Field, GaussianRational, PHCurve, RatFunc, Rational, RationalMap, Vars};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn cz(text: &str) -> ComplexRatFunc {
    parse_expr(text, &Vars::new(["z"])).unwrap()
}

fn rt(text: &str) -> RatFunc<Rational> {
    parse_expr(text, &Vars::new(["t"])).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn psi_round_trip() -> Outcome {
    let phi = phi_from_psi(&cz("(z^2+1)/z")).map_err(err)?;
    ensure(phi == cz("z^3/3 + 2*z - 1/z"), format!("phi = {phi}"))?;
    ensure(format_split(&phi) == "1/3*z^3 + 2*z - 1/z", format_split(&phi))?;
    let real = complex_to_real_map(&phi, false).map_err(err)?;
    let verdict = real.is_ph_preserving().map_err(err)?;
    ensure(verdict.is_preserving(), "real form is not PH-preserving")?;
    Ok(format!("phi = {}", format_split(&phi)))
}

fn residue_solve() -> Outcome {
    let poles = [g(2, 3), g(1, 1)];
    let coeffs = solve_simple_pole_coeffs(&cz("1"), &poles).map_err(err)?.ok_or("no solution")?;
    ensure(coeffs == vec![g(1, 2), g(-1, -2)], format!("coefficients {coeffs:?}"))?;
    let spec = LaurentSpec::new(cz("1"), poles.iter().cloned().zip(coeffs.iter().map(|a| vec![a.clone()])).collect())
        .map_err(err)?;
    let phi = phi_from_psi(&spec.to_psi()).map_err(err)?;
    let expected = cz("z + (3-4*i)/(z-(2+3*i)) + (3-4*i)/(z-(1+i))");
    ensure(phi == expected, format!("phi = {phi}"))?;
    Ok("a1 = 1+2i, a2 = -1-2i".into())
}

fn quintic() -> Outcome {
    let poles = [g(2, 3), g(1, 1)];
    let coeffs = solve_simple_pole_coeffs(&cz("1"), &poles).map_err(err)?.ok_or("no solution")?;
    let spec = LaurentSpec::new(cz("1"), poles.iter().cloned().zip(coeffs.into_iter().map(|a| vec![a])).collect())
        .map_err(err)?;
    let phi = phi_from_psi(&spec.to_psi()).map_err(err)?;
    let curve = complex_curve(&phi).map_err(err)?;
    let printed = named_curve("paper_quintic_planar").map_err(err)?;
    ensure(curve == printed, "reconstructed quintic differs from the printed one")?;
    let den = rt("(t^2-4*t+13)*(t^2-2*t+2)");
    ensure(curve.components().iter().all(|c| c.den() == den.num()), "denominator mismatch")?;
    let sigma = curve.is_ph().ok_or("quintic is not PH")?;
    Ok(format!("sigma2 = {sigma}"))
}

fn counterexamples() -> Outcome {
    let phi = RationalMap::parse(&["x", "y"], 2, &["x^2 - y^2 + x", "2*x*y + y"]).map_err(err)?;
    let line = named_curve("line(0,0;3,4)").map_err(err)?;
    let img = phi.compose_curve(&line).map_err(err)?;
    let speed = img.speed_squared();
    ensure(speed == rt("25*(100*t^2+12*t+1)"), format!("speed^2 = {speed}"))?;
    ensure(img.is_ph().is_none(), "z^2+z image of (3t,4t) reported PH")?;
    let position = img.components().iter().fold(rt("0"), |acc, c| acc.add(&c.mul(c)));
    ensure(position == rt("25*t^2*(25*t^2+6*t+1)"), format!("|image|^2 = {position}"))?;
    ensure(is_square_over_reals(&position).is_none(), "printed expression is a square")?;

    let square = RationalMap::parse(&["u1", "u2"], 2, &["u1^2", "u2"]).map_err(err)?;
    let verdict = square.is_ph_preserving().map_err(err)?;
    ensure(!verdict.is_preserving(), "(u1^2, u2) reported PH-preserving")?;
    let diag = square.compose_curve(&named_curve("line(0,0;1,1)").map_err(err)?).map_err(err)?;
    ensure(diag.speed_squared() == rt("4*t^2+1"), "speed^2 of (t^2, t)")?;
    ensure(diag.is_ph().is_none(), "(t^2, t) reported PH")?;
    Ok(format!("speed^2 = {speed} (printed {position} is |image|^2); (u1^2,u2): {verdict:?}"))
}

fn space_quintic() -> Outcome {
    let sigma = named_curve("kozak_quintic_space").map_err(err)?.is_ph().ok_or("not PH")?;
    ensure(sigma.expand() == rt("((t^2+6)/(60*(t^2+1)))^2"), format!("sigma2 = {sigma}"))?;
    Ok(format!("sigma2 = {sigma}"))
}

/// `ρ²(x − c)/‖x − c‖² + c` with symbolic centre and radius.
fn symbolic_inversion(n: usize) -> RationalMap {
    let mut names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    names.extend((1..=n).map(|k| format!("c{k}")));
    names.push("r2".into());
    let vars = Vars::new(&names);
    let v = |k: usize| RatFunc::<Rational>::var(&vars, k);
    let diff: Vec<_> = (0..n).map(|k| v(k).sub(&v(n + k))).collect();
    let norm = diff.iter().fold(RatFunc::zero(&vars), |acc, d| acc.add(&d.mul(d)));
    let factor = v(2 * n).div(&norm).unwrap();
    let comps = (0..n).map(|k| v(n + k).add(&diff[k].mul(&factor))).collect();
    RationalMap::new(n, comps).unwrap()
}

fn moebius_words() -> Outcome {
    let mut r = rng(0x6d6f_6562);
    let start = Instant::now();
    for n in [2, 3] {
        for k in 0..50 {
            let w = random_word(&mut r, n, 4);
            let map = word_to_map(&w).map_err(err)?;
            let verdict = map.is_ph_preserving().map_err(err)?;
            ensure(verdict.is_preserving(), format!("word {k} in R^{n} failed: {verdict:?}"))?;
        }
    }
    for n in [2, 3, 4] {
        let inv = symbolic_inversion(n);
        let vars = inv.vars().clone();
        let gform = inv.first_fundamental_form();
        let norm: RatFunc<Rational> = (0..n).fold(RatFunc::zero(&vars), |acc, k| {
            let d = RatFunc::var(&vars, k).sub(&RatFunc::var(&vars, n + k));
            acc.add(&d.mul(&d))
        });
        let expected = RatFunc::var(&vars, 2 * n).pow(2).div(&norm.pow(2)).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { expected.clone() } else { RatFunc::zero(&vars) };
                ensure(gform.entries[i][j] == want, format!("inversion metric entry ({i},{j}) in R^{n}"))?;
            }
        }
    }
    Ok(format!("100 words, inversion identity n = 2, 3, 4 ({:.1?})", start.elapsed()))
}

fn necessity_sweep() -> Outcome {
    let grid: Vec<Rational> = (-4..=4).map(|k| q(k, 2)).collect();
    let mut tested = 0;
    let mut present = 0;
    for a in &grid {
        for b in &grid {
            for c in &grid {
                let s = match ConstantQuadraticForm::new(vec![vec![a.clone(), b.clone()], vec![b.clone(), c.clone()]]) {
                    Ok(s) if s.is_positive_definite() => s,
                    _ => continue,
                };
                tested += 1;
                let verdict = tschirnhausen_s_test(&s).map_err(err)?.is_some();
                let expected = b.is_zero() && a == c;
                let sf = squarefree_decompose(&tschirnhausen_quartic(&s)).map_err(err)?;
                let oracle = sf.all_even() && sf.constant.is_positive();
                ensure(verdict == expected && verdict == oracle, format!("S = [[{a},{b}],[{b},{c}]]"))?;
                present += usize::from(verdict);
            }
        }
    }
    Ok(format!("{tested} positive-definite forms, {present} square"))
}

fn sufficiency_suite() -> Outcome {
    let mut r = rng(0x5u64 << 40 | 0x0ff1c);
    let maps = preserving_maps(&mut r, 8).map_err(err)?;
    let curves2 = ph_curves(&mut r, 2, 3);
    let curves3 = ph_curves(&mut r, 3, 3);
    let mut images = 0;
    let mut poles = 0;
    for (name, map) in &maps {
        ensure(map.is_ph_preserving().map_err(err)?.is_preserving(), format!("{name} is not PH-preserving"))?;
        let curves = if map.source_dim() == 2 { &curves2 } else { &curves3 };
        for (cname, curve) in curves {
            ensure(curve.is_ph().is_some(), format!("{cname} is not PH"))?;
            match map.compose_curve(curve) {
                Ok(img) => {
                    ensure(img.is_ph().is_some(), format!("{name} applied to {cname} is not PH"))?;
                    images += 1;
                }
                Err(Error::PoleOnCurve) => poles += 1,
                Err(e) => return Err(format!("{name} applied to {cname}: {e}")),
            }
        }
    }
    ensure(FAMILY_SAMPLES.len() == 5, "family samples")?;
    Ok(format!("{} maps, {images} images PH, {poles} curves inside a pole set", maps.len()))
}

fn laurent_equivalence() -> Outcome {
    let mut r = rng(0x1a0_7e17);
    let mut agree_true = 0;
    for k in 0..200 {
        let c = complex_gaussian(&mut r);
        let mut a: [GaussianRational; 5] = std::array::from_fn(|_| complex_gaussian(&mut r));
        match k % 4 {
            0 => {
                a[0] = GaussianRational::zero();
                a[2] = a[3].clone() * &a[3] * &(GaussianRational::from_i64(3) * &a[4]).inv().unwrap();
            }
            1 => {
                a[3] = GaussianRational::zero();
                a[0] = -(a[2].clone() * &a[2]) * &(GaussianRational::from_i64(12) * &a[4]).inv().unwrap();
            }
            _ => {}
        }
        let condition = laurent_cubic_condition(&a, &c);
        let curve: PHCurve = complex_curve(&laurent_cubic(&a, &c)).map_err(err)?;
        let brute = curve.is_ph().is_some();
        ensure(condition == brute, format!("tuple {k}: condition {condition}, is_ph {brute}"))?;
        ensure(condition == (k % 4 < 2), format!("tuple {k}: construction"))?;
        agree_true += usize::from(condition);
    }
    Ok(format!("200 tuples agree, {agree_true} satisfy a clause"))
}

fn family_metric() -> Outcome {
    let family = conformal_family();
    let verdict = family.is_ph_preserving().map_err(err)?;
    let form = family.first_fundamental_form();
    let lambda2 = form.scalar_diagonal().ok_or("metric is not scalar")?.clone();
    let sq = verdict.dilation().ok_or("dilation is not a real square")?;
    ensure(sq.expand() == lambda2, "dilation mismatch")?;
    let printed = conformal_family_printed_metric();
    let ratio = lambda2.div(&printed).map_err(err)?;
    let agree = ratio.as_constant() == Some(Rational::from(1));
    Ok(format!(
        "lambda^2 = {sq}; printed {printed}; ratio {ratio}; constants_agree: {}",
        if agree { "yes" } else { "no" }
    ))
}

fn kernel_properties() -> Outcome {
    const N: usize = 500;
    let mut r = rng(0xa1_6eb2a);
    let xy = Vars::new(["x", "y"]);
    let t = Vars::new(["t"]);

    for k in 0..N {
        let a = random_nonconstant_poly(&mut r, &xy, 2, 3);
        let b = random_poly(&mut r, &xy, 1, 2);
        let f = &(&a * &b) * &b;
        let sf = squarefree_decompose(&f).map_err(err)?;
        ensure(sf.expand(&xy) == f, format!("squarefree re-expansion #{k}: {f}"))?;
    }

    for k in 0..N {
        let a = random_poly(&mut r, &xy, 2, 3);
        let b = random_poly(&mut r, &xy, 2, 3);
        let h = random_poly(&mut r, &xy, 1, 3);
        let c = nonzero_rational(&mut r);
        let (ah, bh) = (&a * &h, &b * &h);
        let gcd = poly_gcd(&ah, &bh);
        ensure(poly_gcd(&ah.scale(&c), &bh) == gcd, format!("gcd scaling #{k}"))?;
        ensure(ah.div_exact(&gcd).is_some() && bh.div_exact(&gcd).is_some(), format!("gcd divides #{k}"))?;
        ensure(gcd.div_exact(&h.monic()).is_some(), format!("common factor divides gcd #{k}"))?;
    }

    for k in 0..N {
        let p = random_poly(&mut r, &xy, 2, 4);
        let root = poly_sqrt(&(&p * &p)).ok_or(format!("poly_sqrt #{k} failed"))?;
        ensure(root == p || root == -&p, format!("poly_sqrt round trip #{k}: {p}"))?;
    }

    for k in 0..N {
        let num = random_poly(&mut r, &t, 4, 4);
        let d1 = random_nonconstant_poly(&mut r, &t, 2, 2);
        let d2 = random_poly(&mut r, &t, 1, 2);
        let f = RatFunc::new(num, &d1 * &(&d2 * &d2)).map_err(err)?;
        let h = hermite_reduce(&f, "t").map_err(err)?;
        ensure(h.rational_part.derivative(0).add(&h.remainder) == f, format!("hermite reassembly #{k}: {f}"))?;
        let sf = squarefree_decompose(h.remainder.den()).map_err(err)?;
        ensure(sf.factors.iter().all(|(_, m)| *m == 1), format!("hermite remainder #{k}"))?;
    }

    let y = Vars::new(["y"]);
    for k in 0..N {
        let gy = random_poly(&mut r, &y, 2, 2).embed(&xy, &[1]);
        let h = random_nonconstant_poly(&mut r, &xy, 2, 3);
        let hd = random_poly(&mut r, &xy, 1, 2);
        let f = RatFunc::new(&gy * &(&h * &h), &hd * &hd).map_err(err)?;
        let (g0, h0) = square_extract(&f, &["x"]).map_err(|e| format!("square_extract #{k}: {e}"))?;
        ensure(g0.mul(&h0.mul(&h0)) == f, format!("square_extract re-expansion #{k}"))?;
        ensure(!g0.uses_var(0), format!("square_extract cofactor depends on x #{k}"))?;
    }
    Ok(format!("{N} instances each of 5 properties"))
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 11] = [
        ("psi (z^2+1)/z integrates to z^3/3 + 2z - 1/z, PH-preserving", psi_round_trip),
        ("residue system at poles 2+3i, 1+i", residue_solve),
        ("planar quintic reproduced and PH", quintic),
        ("non-preserving counterexamples", counterexamples),
        ("space quintic sigma^2", space_quintic),
        ("random Moebius words and the inversion metric", moebius_words),
        ("Tschirnhausen necessity sweep", necessity_sweep),
        ("sufficiency over the map and curve corpus", sufficiency_suite),
        ("Laurent cubic condition equivalence", laurent_equivalence),
        ("conformal family metric", family_metric),
        ("algebra kernel properties", kernel_properties),
    ];
    let results: Vec<(Outcome, std::time::Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (out, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, time))) in criteria.iter().zip(results).enumerate() {
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{time:.1?}]\n               {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{time:.1?}]\n               {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
