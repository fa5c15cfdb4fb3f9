//! The golden suite behind `reproduce-paper`: every item recomputes a few
//! `key: value` facts and compares them with the golden file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use phkit::corpus::{
    complex_gaussian, nonzero_rational, ph_curves, preserving_maps, random_nonconstant_poly, random_poly, random_word,
};
use phkit::curve::named_curve;
use phkit::map::{conformal_family, conformal_family_printed_metric, tschirnhausen_quartic, tschirnhausen_s_test, ConstantQuadraticForm, PhVerdict};
use phkit::moebius::word_to_map;
use phkit::planar::{
    complex_curve, complex_to_real_map, laurent_cubic, laurent_cubic_condition, phi_from_psi, solve_simple_pole_coeffs,
    ComplexRatFunc, LaurentSpec,
};
use phkit::polynomial::{poly_gcd, poly_sqrt, squarefree_decompose};
use phkit::ratcalc::{format_split, hermite_reduce, is_square_over_reals, square_extract};
use phkit::text::parse_expr;
use phkit::{Error, Field, GaussianRational, RatFunc, Rational, RationalMap, Vars};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{compact, yes_no};

pub const GOLDEN: &str = include_str!("golden.txt");

type Facts = Vec<(&'static str, String)>;
type Computed = Result<Facts, String>;

pub struct Item {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn() -> Computed,
}

pub const ITEMS: &[Item] = &[
    Item { id: "psi-roundtrip", anchor: "psi = (z^2+1)/z integrates to a PH-preserving map", run: psi_roundtrip },
    Item { id: "quintic-residues", anchor: "simple poles at 2+3i and 1+i over polynomial part 1", run: quintic_residues },
    Item { id: "quintic-curve", anchor: "planar rational quintic on the real axis", run: quintic_curve },
    Item { id: "counterexamples", anchor: "z^2+z on a line and (u1^2, u2)", run: counterexamples },
    Item { id: "space-quintic", anchor: "spatial rational quintic", run: space_quintic },
    Item { id: "moebius-words", anchor: "random Moebius words and the inversion metric", run: moebius_words },
    Item { id: "necessity-sweep", anchor: "constant quadratic forms on a half-integer grid", run: necessity_sweep },
    Item { id: "sufficiency", anchor: "images of PH curves under preserving maps", run: sufficiency },
    Item { id: "laurent-cubic", anchor: "Laurent cubic condition against the PH test", run: laurent_cubic_items },
    Item { id: "family-metric", anchor: "two-parameter conformal family", run: family_metric },
    Item { id: "kernel", anchor: "algebra kernel identities on random inputs", run: kernel },
];

fn err(e: Error) -> String {
    e.to_string()
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn cz(text: &str) -> ComplexRatFunc {
    parse_expr(text, &Vars::new(["z"])).expect("literal")
}

fn rt(text: &str) -> RatFunc<Rational> {
    parse_expr(text, &Vars::new(["t"])).expect("literal")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn verdict_text(v: &PhVerdict) -> String {
    match v {
        PhVerdict::Preserving(_) => "yes".into(),
        PhVerdict::NotPreserving(reason) => format!("no ({reason})"),
    }
}

fn psi_roundtrip() -> Computed {
    let phi = phi_from_psi(&cz("(z^2+1)/z")).map_err(err)?;
    let verdict = complex_to_real_map(&phi, false).map_err(err)?.is_ph_preserving().map_err(err)?;
    let lambda2 = verdict.dilation().map(compact).unwrap_or_default();
    Ok(vec![("phi", format_split(&phi)), ("ph_preserving", verdict_text(&verdict)), ("lambda2", lambda2)])
}

fn quintic_phi() -> Result<(Vec<GaussianRational>, ComplexRatFunc), String> {
    let poles = [g(2, 3), g(1, 1)];
    let a = solve_simple_pole_coeffs(&cz("1"), &poles).map_err(err)?.ok_or("no solution")?;
    let spec = LaurentSpec::new(cz("1"), poles.iter().cloned().zip(a.iter().map(|x| vec![x.clone()])).collect())
        .map_err(err)?;
    Ok((a, phi_from_psi(&spec.to_psi()).map_err(err)?))
}

fn quintic_residues() -> Computed {
    let (a, phi) = quintic_phi()?;
    let expected = cz("z + (3-4*i)/(z-(2+3*i)) + (3-4*i)/(z-(1+i))");
    Ok(vec![
        ("a1", a[0].to_string()),
        ("a2", a[1].to_string()),
        ("phi", format_split(&phi)),
        ("phi_is_z_plus_simple_poles", yes_no(phi == expected).into()),
    ])
}

fn quintic_curve() -> Computed {
    let (_, phi) = quintic_phi()?;
    let c = complex_curve(&phi).map_err(err)?;
    let printed = named_curve("paper_quintic_planar").map_err(err)?;
    let sigma = c.is_ph();
    Ok(vec![
        ("x", c.components()[0].to_string()),
        ("y", c.components()[1].to_string()),
        ("denominator", c.components()[0].den().to_string()),
        ("matches_printed", yes_no(c == printed).into()),
        ("ph", yes_no(sigma.is_some()).into()),
        ("sigma2", sigma.map(|s| compact(&s.folded())).unwrap_or_default()),
    ])
}

fn counterexamples() -> Computed {
    let phi = RationalMap::parse(&["x", "y"], 2, &["x^2 - y^2 + x", "2*x*y + y"]).map_err(err)?;
    let img = phi.compose_curve(&named_curve("line(0,0;3,4)").map_err(err)?).map_err(err)?;
    let position = img.components().iter().fold(rt("0"), |acc, c| acc.add(&c.mul(c)));
    let square = RationalMap::parse(&["u1", "u2"], 2, &["u1^2", "u2"]).map_err(err)?;
    let verdict = square.is_ph_preserving().map_err(err)?;
    let diag = square.compose_curve(&named_curve("line(0,0;1,1)").map_err(err)?).map_err(err)?;
    Ok(vec![
        ("line_image_speed2", img.speed_squared().to_string()),
        ("line_image_ph", yes_no(img.is_ph().is_some()).into()),
        ("line_image_norm2", position.to_string()),
        ("line_image_norm2_square", yes_no(is_square_over_reals(&position).is_some()).into()),
        ("square_map_ph_preserving", verdict_text(&verdict)),
        ("diagonal_image_speed2", diag.speed_squared().to_string()),
        ("diagonal_image_ph", yes_no(diag.is_ph().is_some()).into()),
    ])
}

fn space_quintic() -> Computed {
    let c = named_curve("kozak_quintic_space").map_err(err)?;
    let sigma = c.is_ph().ok_or("not PH")?;
    Ok(vec![
        ("speed2", c.speed_squared().to_string()),
        ("sigma2", compact(&sigma.folded())),
        ("sigma2_exact", yes_no(sigma.expand() == rt("((t^2+6)/(60*(t^2+1)))^2")).into()),
    ])
}

/// `ρ²(x − c)/‖x − c‖² + c` with symbolic centre and radius.
fn symbolic_inversion(n: usize) -> (RationalMap, RatFunc<Rational>) {
    let mut names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    names.extend((1..=n).map(|k| format!("c{k}")));
    names.push("r2".into());
    let vars = Vars::new(&names);
    let v = |k: usize| RatFunc::<Rational>::var(&vars, k);
    let diff: Vec<_> = (0..n).map(|k| v(k).sub(&v(n + k))).collect();
    let norm = diff.iter().fold(RatFunc::zero(&vars), |acc, d| acc.add(&d.mul(d)));
    let factor = v(2 * n).div(&norm).expect("nonzero norm");
    let comps = (0..n).map(|k| v(n + k).add(&diff[k].mul(&factor))).collect();
    let expected = v(2 * n).pow(2).div(&norm.pow(2)).expect("nonzero norm");
    (RationalMap::new(n, comps).expect("square map"), expected)
}

fn moebius_words() -> Computed {
    let mut r = rng(0x6d6f_6562);
    let mut facts = Facts::new();
    for (n, key) in [(2, "preserving_r2"), (3, "preserving_r3")] {
        let mut ok = 0;
        for _ in 0..50 {
            let map = word_to_map(&random_word(&mut r, n, 4)).map_err(err)?;
            ok += usize::from(map.is_ph_preserving().map_err(err)?.is_preserving());
        }
        facts.push((key, format!("{ok} of 50")));
    }
    for (n, key) in [(2, "inversion_metric_r2"), (3, "inversion_metric_r3"), (4, "inversion_metric_r4")] {
        let (inv, expected) = symbolic_inversion(n);
        let gform = inv.first_fundamental_form();
        let holds = (0..n).all(|i| {
            (0..n).all(|j| if i == j { gform.entries[i][j] == expected } else { gform.entries[i][j].is_zero() })
        });
        facts.push((key, yes_no(holds).into()));
    }
    Ok(facts)
}

fn necessity_sweep() -> Computed {
    let grid: Vec<Rational> = (-4..=4).map(|k| Rational::new(k, 2).expect("nonzero")).collect();
    let (mut forms, mut square, mut agree) = (0, 0, 0);
    for a in &grid {
        for b in &grid {
            for c in &grid {
                let s = match ConstantQuadraticForm::new(vec![vec![a.clone(), b.clone()], vec![b.clone(), c.clone()]]) {
                    Ok(s) if s.is_positive_definite() => s,
                    _ => continue,
                };
                forms += 1;
                let verdict = tschirnhausen_s_test(&s).map_err(err)?.is_some();
                let sf = squarefree_decompose(&tschirnhausen_quartic(&s)).map_err(err)?;
                let oracle = sf.all_even() && sf.constant.is_positive();
                let scalar = b.is_zero() && a == c;
                square += usize::from(verdict);
                agree += usize::from(verdict == oracle && verdict == scalar);
            }
        }
    }
    Ok(vec![
        ("positive_definite_forms", forms.to_string()),
        ("square", square.to_string()),
        ("agreeing_with_oracle_and_scalar_rule", agree.to_string()),
    ])
}

fn sufficiency() -> Computed {
    let mut r = rng(0x5u64 << 40 | 0x0ff1c);
    let maps = preserving_maps(&mut r, 8).map_err(err)?;
    let curves2 = ph_curves(&mut r, 2, 3);
    let curves3 = ph_curves(&mut r, 3, 3);
    let (mut preserving, mut images, mut ph, mut pole_sets) = (0, 0, 0, 0);
    for (name, map) in &maps {
        preserving += usize::from(map.is_ph_preserving().map_err(err)?.is_preserving());
        let curves = if map.source_dim() == 2 { &curves2 } else { &curves3 };
        for (cname, curve) in curves {
            match map.compose_curve(curve) {
                Ok(img) => {
                    images += 1;
                    ph += usize::from(img.is_ph().is_some());
                }
                Err(Error::PoleOnCurve) => pole_sets += 1,
                Err(e) => return Err(format!("{name} applied to {cname}: {e}")),
            }
        }
    }
    Ok(vec![
        ("maps", maps.len().to_string()),
        ("maps_preserving", preserving.to_string()),
        ("images", images.to_string()),
        ("images_ph", ph.to_string()),
        ("curves_inside_pole_set", pole_sets.to_string()),
    ])
}

fn laurent_cubic_items() -> Computed {
    let mut r = rng(0x1a0_7e17);
    let (mut agree, mut clause) = (0, 0);
    for k in 0..200 {
        let c = complex_gaussian(&mut r);
        let mut a: [GaussianRational; 5] = std::array::from_fn(|_| complex_gaussian(&mut r));
        match k % 4 {
            0 => {
                a[0] = GaussianRational::zero();
                a[2] = a[3].clone() * &a[3] * &(GaussianRational::from_i64(3) * &a[4]).inv().expect("nonzero");
            }
            1 => {
                a[3] = GaussianRational::zero();
                a[0] = -(a[2].clone() * &a[2]) * &(GaussianRational::from_i64(12) * &a[4]).inv().expect("nonzero");
            }
            _ => {}
        }
        let condition = laurent_cubic_condition(&a, &c);
        let brute = complex_curve(&laurent_cubic(&a, &c)).map_err(err)?.is_ph().is_some();
        agree += usize::from(condition == brute);
        clause += usize::from(condition);
    }
    Ok(vec![("tuples", "200".into()), ("agreeing", agree.to_string()), ("satisfying_a_clause", clause.to_string())])
}

fn family_metric() -> Computed {
    let family = conformal_family();
    let verdict = family.is_ph_preserving().map_err(err)?;
    let form = family.first_fundamental_form();
    let scalar = form.scalar_diagonal().cloned();
    let sq = verdict.dilation().ok_or("dilation is not a real square")?;
    let printed = conformal_family_printed_metric();
    let ratio = sq.expand().div(&printed).map_err(err)?;
    Ok(vec![
        ("metric_scalar", yes_no(scalar.as_ref() == Some(&sq.expand())).into()),
        ("lambda2", compact(sq)),
        ("printed_lambda2", printed.to_string()),
        ("ratio", ratio.to_string()),
        ("constants_agree", yes_no(ratio.as_constant() == Some(Rational::from(1))).into()),
    ])
}

fn kernel() -> Computed {
    const N: usize = 500;
    let mut r = rng(0xa1_6eb2a);
    let xy = Vars::new(["x", "y"]);
    let t = Vars::new(["t"]);
    let count = |ok: usize| format!("{ok} of {N}");

    let mut ok = 0;
    for _ in 0..N {
        let a = random_nonconstant_poly(&mut r, &xy, 2, 3);
        let b = random_poly(&mut r, &xy, 1, 2);
        let f = &(&a * &b) * &b;
        ok += usize::from(squarefree_decompose(&f).map_err(err)?.expand(&xy) == f);
    }
    let mut facts = vec![("squarefree_reexpansion", count(ok))];

    ok = 0;
    for _ in 0..N {
        let a = random_poly(&mut r, &xy, 2, 3);
        let b = random_poly(&mut r, &xy, 2, 3);
        let h = random_poly(&mut r, &xy, 1, 3);
        let c = nonzero_rational(&mut r);
        let (ah, bh) = (&a * &h, &b * &h);
        let gcd = poly_gcd(&ah, &bh);
        let good = poly_gcd(&ah.scale(&c), &bh) == gcd
            && ah.div_exact(&gcd).is_some()
            && bh.div_exact(&gcd).is_some()
            && gcd.div_exact(&h.monic()).is_some();
        ok += usize::from(good);
    }
    facts.push(("gcd_scaling", count(ok)));

    ok = 0;
    for _ in 0..N {
        let p = random_poly(&mut r, &xy, 2, 4);
        ok += usize::from(poly_sqrt(&(&p * &p)).is_some_and(|root| root == p || root == -&p));
    }
    facts.push(("sqrt_round_trip", count(ok)));

    ok = 0;
    for _ in 0..N {
        let num = random_poly(&mut r, &t, 4, 4);
        let d1 = random_nonconstant_poly(&mut r, &t, 2, 2);
        let d2 = random_poly(&mut r, &t, 1, 2);
        let f = RatFunc::new(num, &d1 * &(&d2 * &d2)).map_err(err)?;
        let h = hermite_reduce(&f, "t").map_err(err)?;
        let sf = squarefree_decompose(h.remainder.den()).map_err(err)?;
        let good = h.rational_part.derivative(0).add(&h.remainder) == f && sf.factors.iter().all(|(_, m)| *m == 1);
        ok += usize::from(good);
    }
    facts.push(("hermite_reassembly", count(ok)));

    ok = 0;
    let y = Vars::new(["y"]);
    for _ in 0..N {
        let gy = random_poly(&mut r, &y, 2, 2).embed(&xy, &[1]);
        let h = random_nonconstant_poly(&mut r, &xy, 2, 3);
        let hd = random_poly(&mut r, &xy, 1, 2);
        let f = RatFunc::new(&gy * &(&h * &h), &hd * &hd).map_err(err)?;
        if let Ok((g0, h0)) = square_extract(&f, &["x"]) {
            ok += usize::from(g0.mul(&h0.mul(&h0)) == f && !g0.uses_var(0));
        }
    }
    facts.push(("square_extract_reexpansion", count(ok)));
    Ok(facts)
}

/// `id.key: value` lines grouped by item id.
pub fn parse_golden(text: &str) -> Result<BTreeMap<String, BTreeMap<String, String>>, String> {
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || format!("golden line {}: expected `item.key: value`", n + 1);
        let (lhs, value) = line.split_once(':').ok_or_else(bad)?;
        let (id, key) = lhs.trim().split_once('.').ok_or_else(bad)?;
        out.entry(id.to_string()).or_default().insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub struct Run {
    pub text: String,
    pub failed: usize,
}

/// Run the items whose id starts with `only` (all when `None`).
pub fn run(golden: &BTreeMap<String, BTreeMap<String, String>>, only: Option<&str>) -> Option<Run> {
    let selected: Vec<&Item> = ITEMS.iter().filter(|it| only.map_or(true, |p| it.id.starts_with(p))).collect();
    if selected.is_empty() {
        return None;
    }
    let empty = BTreeMap::new();
    let mut text = String::new();
    let mut failed = 0;
    for item in &selected {
        let expected = golden.get(item.id).unwrap_or(&empty);
        let computed = std::panic::catch_unwind(item.run).unwrap_or_else(|_| Err("panicked".into()));
        let mut problems = Vec::new();
        writeln!(text, "item: {}\nanchor: {}", item.id, item.anchor).unwrap();
        match &computed {
            Ok(facts) => {
                for (key, value) in facts {
                    writeln!(text, "{key}: {value}").unwrap();
                    match expected.get(*key) {
                        None => problems.push(format!("{key} has no golden value")),
                        Some(want) if want != value => problems.push(format!("{key} expected `{want}`")),
                        Some(_) => {}
                    }
                }
                for key in expected.keys() {
                    if !facts.iter().any(|(k, _)| k == key) {
                        problems.push(format!("{key} not computed"));
                    }
                }
            }
            Err(why) => problems.push(format!("computation failed: {why}")),
        }
        if expected.is_empty() {
            problems.push("no golden values".into());
        }
        for p in &problems {
            writeln!(text, "mismatch: {p}").unwrap();
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        failed += usize::from(!problems.is_empty());
        writeln!(text, "status: {status}\n").unwrap();
    }
    writeln!(text, "passed: {} of {}", selected.len() - failed, selected.len()).unwrap();
    Some(Run { text, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_covers_every_item() {
        let golden = parse_golden(GOLDEN).unwrap();
        for item in ITEMS {
            assert!(golden.get(item.id).is_some_and(|k| !k.is_empty()), "{}", item.id);
        }
        assert_eq!(golden.len(), ITEMS.len());
    }

    #[test]
    fn golden_syntax() {
        let g = parse_golden("# c\n\na.b: x: y\n").unwrap();
        assert_eq!(g["a"]["b"], "x: y");
        assert!(parse_golden("nokey: 1").is_err());
        assert!(parse_golden("a.b").is_err());
    }
}
