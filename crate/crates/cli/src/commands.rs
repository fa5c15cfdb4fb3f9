use std::fs;
use std::path::Path;

use anyhow::Context;
use phkit::curve::named_curve;
use phkit::map::PhVerdict;
use phkit::moebius::word_to_map;
use phkit::planar::{complex_curve, complex_to_real_map, phi_from_psi, solve_simple_pole_coeffs, ComplexRatFunc};
use phkit::plot::{render, PlotSpec, PlotTarget};
use phkit::ratcalc::format_split;
use phkit::text::{parse_curve_file, parse_expr, parse_laurent_spec, parse_map_file, parse_moebius_word, parse_scalar};
use phkit::{Error, GaussianRational, PHCurve, Rational, RationalMap, Vars};

use crate::report::{compact, yes_no, Failure, Outcome, Report};

pub fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
}

enum InputKind {
    Curve,
    Map,
    Word,
}

fn first_key(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_once(':'))
        .map(|(k, _)| k.trim())
}

fn kind(text: &str) -> InputKind {
    match first_key(text) {
        Some("params" | "name") => InputKind::Curve,
        Some("source_dim") => InputKind::Map,
        _ => InputKind::Word,
    }
}

/// A curve file, or a single `name: <curve>` line.
fn load_curve(text: &str) -> Result<PHCurve, Error> {
    if first_key(text) == Some("name") {
        let (_, name) = text.split_once(':').expect("key present");
        return named_curve(name.split('#').next().unwrap_or(""));
    }
    parse_curve_file(text)
}

fn load_map(text: &str) -> Result<(RationalMap, Option<usize>), Error> {
    match kind(text) {
        InputKind::Map => Ok((parse_map_file(text)?, None)),
        _ => {
            let w = parse_moebius_word(text)?;
            Ok((word_to_map(&w)?, Some(w.factors().len())))
        }
    }
}

fn push_verdict(r: &mut Report, map: &RationalMap) -> Result<(), Failure> {
    let full = map.has_full_rank();
    r.push("full_rank", yes_no(full));
    if !full {
        r.push("ph_preserving", "no").push("reason", "jacobian rank deficient");
        return Ok(());
    }
    match map.is_ph_preserving()? {
        PhVerdict::Preserving(s) => r.push("ph_preserving", "yes").push("lambda2", compact(&s)),
        PhVerdict::NotPreserving(reason) => r.push("ph_preserving", "no").push("reason", reason),
    };
    Ok(())
}

pub fn check_curve(text: &str) -> Outcome {
    let c = load_curve(text)?;
    let mut r = Report::new();
    r.push("dim", c.dim()).push("param", c.param()).push("speed2", c.speed_squared());
    match c.is_ph() {
        Some(s) => r.push("ph", "yes").push("sigma2", compact(&s.folded())),
        None => r.push("ph", "no"),
    };
    Ok(r)
}

pub fn check_map(text: &str) -> Outcome {
    let (map, factors) = load_map(text)?;
    let mut r = Report::new();
    if let Some(k) = factors {
        r.push("moebius_factors", k);
    }
    r.push("source_dim", map.source_dim()).push("target_dim", map.target_dim());
    for (k, c) in map.components().iter().enumerate() {
        r.push(&format!("component{}", k + 1), c);
    }
    push_verdict(&mut r, &map)?;
    Ok(r)
}

/// `Φ = ∫Ψ²`, its real form and the verdict on it.
fn describe_psi(r: &mut Report, psi: &ComplexRatFunc, with_curve: bool) -> Result<(), Failure> {
    r.push("psi", format_split(psi));
    let phi = match phi_from_psi(psi) {
        Ok(phi) => phi,
        Err(Error::NonzeroResidue(rem)) => {
            r.push("integrable", "no").push("remainder", rem);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    r.push("integrable", "yes").push("phi", format_split(&phi));
    let real = complex_to_real_map(&phi, false)?;
    r.push("re", &real.components()[0]).push("im", &real.components()[1]);
    push_verdict(r, &real)?;
    if with_curve {
        let c = complex_curve(&phi)?;
        r.push("curve_x", &c.components()[0]).push("curve_y", &c.components()[1]);
        match c.is_ph() {
            Some(s) => r.push("curve_ph", "yes").push("curve_sigma2", compact(&s.folded())),
            None => r.push("curve_ph", "no"),
        };
    }
    Ok(())
}

pub fn from_psi(expr: &str) -> Outcome {
    let psi: ComplexRatFunc = parse_expr(expr, &Vars::new(["z"]))?;
    let mut r = Report::new();
    describe_psi(&mut r, &psi, false)?;
    Ok(r)
}

pub fn solve_residues(text: &str) -> Outcome {
    let spec = parse_laurent_spec(text)?;
    let mut r = Report::new();
    r.push("poles", spec.poles().len());
    let unknown = spec.poles().iter().filter(|(_, a)| a.is_empty()).count();
    if unknown == 0 {
        r.push("solution", "given");
        describe_psi(&mut r, &spec.to_psi(), true)?;
        return Ok(r);
    }
    if unknown != spec.poles().len() {
        return Err(Failure::input("format", "either every pole or no pole may carry coefficients"));
    }
    let locations: Vec<GaussianRational> = spec.poles().iter().map(|(c, _)| c.clone()).collect();
    match solve_simple_pole_coeffs(spec.polynomial_part(), &locations) {
        Ok(Some(a)) => {
            r.push("solution", "unique");
            for (k, ak) in a.iter().enumerate() {
                r.push(&format!("a{}", k + 1), ak);
            }
            describe_psi(&mut r, &spec.with_simple_coeffs(&a)?.to_psi(), true)?;
        }
        Ok(None) => {
            r.push("solution", "none");
        }
        Err(Error::SingularSystem) => {
            r.push("solution", "not-unique");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub struct PlotArgs<'a> {
    pub text: &'a str,
    pub t0: &'a str,
    pub t1: &'a str,
    pub samples: usize,
    pub out: &'a Path,
}

pub fn plot(args: &PlotArgs) -> Outcome {
    let target = match kind(args.text) {
        InputKind::Curve => PlotTarget::Curve(load_curve(args.text)?),
        _ => PlotTarget::MapGrid(load_map(args.text)?.0),
    };
    let t0: Rational = parse_scalar(args.t0)?;
    let t1: Rational = parse_scalar(args.t1)?;
    let out = render(&PlotSpec { target, t0, t1, samples: args.samples })?;
    fs::write(args.out, &out.svg).with_context(|| format!("writing {}", args.out.display()))?;
    let mut r = Report::new();
    r.push("out", args.out.display()).push("samples", args.samples).push("skipped", out.skipped);
    Ok(r)
}
