//! Expression parser and the line-oriented file formats for curves, maps,
//! Laurent specifications and Möbius words.

use num_bigint::BigInt;

use crate::curve::PHCurve;
use crate::error::{Error, Result};
use crate::map::RationalMap;
use crate::moebius::{MoebiusFactor, MoebiusWord};
use crate::planar::LaurentSpec;
use crate::polynomial::Vars;
use crate::ratcalc::RatFunc;
use crate::scalar::{Field, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    Open,
    Close,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k < bytes.len() && bytes[k] == b'.' {
                return Err(Error::Syntax { pos: k, msg: "decimal literals are not supported; write p/q".into() });
            }
            let n: BigInt = text[start..k].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                k += 1;
            }
            out.push((start, Tok::Ident(text[start..k].to_string())));
        } else if "+-*/^".contains(c) {
            out.push((k, Tok::Op(c)));
            k += 1;
        } else if c == '(' {
            out.push((k, Tok::Open));
            k += 1;
        } else if c == ')' {
            out.push((k, Tok::Close));
            k += 1;
        } else {
            return Err(Error::Syntax { pos: k, msg: format!("unexpected character `{}`", &text[k..].chars().next().unwrap()) });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    ImaginaryUnit,
    Var(usize),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a Vars,
}

const UNARY_BP: u8 = 5;

fn infix_bp(op: char) -> Option<(u8, u8)> {
    match op {
        '+' | '-' => Some((1, 2)),
        '*' | '/' => Some((3, 4)),
        '^' => Some((7, 8)),
        _ => None,
    }
}

impl Parser<'_> {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self, min_bp: u8) -> Result<ExprAst> {
        let (pos, tok) = self.next();
        let mut lhs = match tok {
            Tok::Int(n) => ExprAst::Int(n),
            Tok::Ident(name) if name == "i" => ExprAst::ImaginaryUnit,
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(k) => ExprAst::Var(k),
                None => return Err(Error::UndeclaredVariable(name)),
            },
            Tok::Op('-') => ExprAst::Neg(Box::new(self.expr(UNARY_BP)?)),
            Tok::Op('+') => self.expr(UNARY_BP)?,
            Tok::Open => {
                let inner = self.expr(0)?;
                match self.next() {
                    (_, Tok::Close) => inner,
                    (p, _) => return Err(Error::Syntax { pos: p, msg: "expected `)`".into() }),
                }
            }
            Tok::End => return Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            _ => return Err(Error::Syntax { pos, msg: "expected an operand".into() }),
        };
        loop {
            let (pos, tok) = self.peek().clone();
            let op = match tok {
                Tok::Op(c) => c,
                Tok::End | Tok::Close => break,
                _ => return Err(Error::Syntax { pos, msg: "expected an operator".into() }),
            };
            let (l_bp, r_bp) = infix_bp(op).expect("known operator");
            if l_bp < min_bp {
                break;
            }
            self.next();
            if op == '^' {
                let e = match self.next() {
                    (_, Tok::Int(n)) => u32::try_from(n)
                        .map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?,
                    (p, _) => {
                        return Err(Error::Syntax { pos: p, msg: "exponent must be a nonnegative integer literal".into() })
                    }
                };
                lhs = ExprAst::Pow(Box::new(lhs), e);
                continue;
            }
            let rhs = Box::new(self.expr(r_bp)?);
            let l = Box::new(lhs);
            lhs = match op {
                '+' => ExprAst::Add(l, rhs),
                '-' => ExprAst::Sub(l, rhs),
                '*' => ExprAst::Mul(l, rhs),
                _ => ExprAst::Div(l, rhs),
            };
        }
        Ok(lhs)
    }
}

pub fn parse_ast(text: &str, vars: &Vars) -> Result<ExprAst> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, vars };
    let ast = p.expr(0)?;
    match p.peek() {
        (_, Tok::End) => Ok(ast),
        (pos, _) => Err(Error::Syntax { pos: *pos, msg: "unbalanced `)`".into() }),
    }
}

impl ExprAst {
    pub fn eval<F: Field>(&self, vars: &Vars) -> Result<RatFunc<F>> {
        Ok(match self {
            ExprAst::Int(n) => RatFunc::constant(vars, F::from_rational(&Rational::from_integer(n.clone()))),
            ExprAst::ImaginaryUnit => {
                RatFunc::constant(vars, F::imaginary_unit().ok_or(Error::ImaginaryInRealContext)?)
            }
            ExprAst::Var(k) => RatFunc::var(vars, *k),
            ExprAst::Neg(a) => a.eval::<F>(vars)?.neg(),
            ExprAst::Add(a, b) => a.eval::<F>(vars)?.add(&b.eval(vars)?),
            ExprAst::Sub(a, b) => a.eval::<F>(vars)?.sub(&b.eval(vars)?),
            ExprAst::Mul(a, b) => a.eval::<F>(vars)?.mul(&b.eval(vars)?),
            ExprAst::Div(a, b) => a.eval::<F>(vars)?.div(&b.eval(vars)?)?,
            ExprAst::Pow(a, e) => a.eval::<F>(vars)?.pow(*e),
        })
    }
}

/// Parse into a normalized rational function over `F`.
pub fn parse_expr<F: Field>(text: &str, vars: &Vars) -> Result<RatFunc<F>> {
    parse_ast(text, vars)?.eval(vars)
}

/// Parse a constant expression such as `2+3*i` or `-4/5`.
pub fn parse_scalar<F: Field>(text: &str) -> Result<F> {
    let vars = Vars::new(Vec::<String>::new());
    let f: RatFunc<F> = parse_expr(text, &vars)?;
    Ok(f.as_constant().unwrap_or_else(F::zero))
}

// ---------------------------------------------------------------------------
// file formats

/// Non-empty lines with `#` comments removed.
fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn header<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Format(format!("missing `{key}:` header")))?;
    match line.split_once(':') {
        Some((k, v)) if k.trim() == key => Ok(v.trim()),
        _ => Err(Error::Format(format!("expected `{key}:` header, found `{line}`"))),
    }
}

fn parse_count(value: &str, key: &str) -> Result<usize> {
    value.parse().map_err(|_| Error::Format(format!("`{key}` must be a positive integer")))
}

pub fn parse_curve_file(text: &str) -> Result<PHCurve> {
    let mut lines = content_lines(text);
    let param = header(lines.next(), "params")?;
    if param.split_whitespace().count() != 1 {
        return Err(Error::Format("a curve has exactly one parameter".into()));
    }
    let dim = parse_count(header(lines.next(), "dim")?, "dim")?;
    let vars = Vars::new([param]);
    let comps = lines.map(|l| parse_expr::<Rational>(l, &vars)).collect::<Result<Vec<_>>>()?;
    if comps.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: comps.len() });
    }
    PHCurve::new(comps)
}

pub fn format_curve_file(r: &PHCurve) -> String {
    let mut s = format!("params: {}\ndim: {}\n", r.param(), r.dim());
    for c in r.components() {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}

pub fn parse_map_file(text: &str) -> Result<RationalMap> {
    let mut lines = content_lines(text);
    let m = parse_count(header(lines.next(), "source_dim")?, "source_dim")?;
    let n = parse_count(header(lines.next(), "target_dim")?, "target_dim")?;
    let names: Vec<&str> = header(lines.next(), "vars")?.split_whitespace().collect();
    if names.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: names.len() });
    }
    let vars = Vars::new(names);
    let comps = lines.map(|l| parse_expr::<Rational>(l, &vars)).collect::<Result<Vec<_>>>()?;
    if comps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: comps.len() });
    }
    RationalMap::new(m, comps)
}

pub fn format_map_file(phi: &RationalMap) -> String {
    let mut s = format!(
        "source_dim: {}\ntarget_dim: {}\nvars: {}\n",
        phi.source_dim(),
        phi.target_dim(),
        phi.vars().names()[..phi.source_dim()].join(" ")
    );
    for c in phi.components() {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}

/// `poly: <expr>; pole <c>: <a_-1>[, <a_-2> ...];` in the variable `z`.
/// A pole written without coefficients (`pole <c>;` or `pole <c>: ?;`) is
/// left unknown, for the residue solver.
pub fn parse_laurent_spec(text: &str) -> Result<LaurentSpec> {
    let z = Vars::new(["z"]);
    let mut poly = None;
    let mut poles = Vec::new();
    let joined: String = content_lines(text).collect::<Vec<_>>().join(" ");
    for item in joined.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(rest) = item.strip_prefix("poly:") {
            if poly.is_some() {
                return Err(Error::Format("duplicate `poly:` entry".into()));
            }
            let p: RatFunc<GaussianRational> = parse_expr(rest, &z)?;
            if !p.is_polynomial() {
                return Err(Error::Format("`poly:` must be a polynomial in z".into()));
            }
            poly = Some(p);
        } else if let Some(rest) = item.strip_prefix("pole") {
            let (loc, coeffs) = match rest.split_once(':') {
                Some((l, c)) => (l, c.trim()),
                None => (rest, ""),
            };
            let c: GaussianRational = parse_scalar(loc.trim())?;
            let coeffs = if coeffs.is_empty() || coeffs == "?" {
                Vec::new()
            } else {
                coeffs.split(',').map(|a| parse_scalar(a.trim())).collect::<Result<Vec<_>>>()?
            };
            poles.push((c, coeffs));
        } else {
            return Err(Error::Format(format!("unrecognized entry `{item}`")));
        }
    }
    let poly = poly.unwrap_or_else(|| RatFunc::zero(&z));
    LaurentSpec::new(poly, poles)
}

pub fn format_laurent_spec(spec: &LaurentSpec) -> String {
    let mut s = format!("poly: {};", spec.polynomial_part());
    for (c, a) in spec.poles() {
        let coeffs: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(" pole {c}: {};", coeffs.join(", ")));
    }
    s
}

fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Format(format!("expected a vector `(..)`, found `{text}`")))?;
    inner.split(',').map(|x| parse_scalar::<Rational>(x.trim())).collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Format(format!("expected a matrix `[[..]]`, found `{text}`")))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| Error::Format("expected `[` starting a row".into()))?;
        let end = body.find(']').ok_or_else(|| Error::Format("unterminated matrix row".into()))?;
        rows.push(body[..end].split(',').map(|x| parse_scalar::<Rational>(x.trim())).collect::<Result<Vec<_>>>()?);
        rest = body[end + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    Ok(rows)
}

/// Split `key=value` fields where values may contain spaces inside brackets.
fn fields(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut parts = Vec::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                parts.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        parts.push(cur);
    }
    for p in parts {
        match p.split_once('=') {
            Some((k, v)) => out.push((k.to_string(), v.to_string())),
            None => out.push((p, String::new())),
        }
    }
    out
}

fn field<'a>(fs: &'a [(String, String)], key: &str, line: &str) -> Result<&'a str> {
    fs.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Format(format!("missing `{key}=` in `{line}`")))
}

fn parse_factor(line: &str) -> Result<MoebiusFactor> {
    let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let fs = fields(rest);
    match kind {
        "inv" => MoebiusFactor::inversion(
            parse_vector(field(&fs, "c", line)?)?,
            parse_scalar(field(&fs, "r2", line)?)?,
        ),
        "tr" => Ok(MoebiusFactor::Translation(parse_vector(field(&fs, "v", line)?)?)),
        "hom" => MoebiusFactor::homothety(parse_scalar(field(&fs, "s", line)?)?),
        "orth" => MoebiusFactor::orthogonal(parse_matrix(field(&fs, "Q", line)?)?),
        _ => Err(Error::Format(format!("unknown factor kind `{kind}`"))),
    }
}

/// One factor per line; an optional `dim: n` header fixes the dimension when
/// no factor implies it.
pub fn parse_moebius_word(text: &str) -> Result<MoebiusWord> {
    let mut dim = None;
    let mut factors = Vec::new();
    for line in content_lines(text) {
        if let Some(v) = line.strip_prefix("dim:") {
            dim = Some(parse_count(v.trim(), "dim")?);
            continue;
        }
        factors.push(parse_factor(line)?);
    }
    MoebiusWord::new(dim, factors)
}

pub fn format_moebius_word(w: &MoebiusWord) -> String {
    let mut s = format!("dim: {}\n", w.dim());
    for f in w.factors() {
        s.push_str(&f.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vz() -> Vars {
        Vars::new(["z"])
    }

    #[test]
    fn precedence() {
        let v = Vars::new(["x", "y"]);
        let p = |s| parse_expr::<Rational>(s, &v).unwrap();
        assert_eq!(p("-x^2"), p("-(x^2)"));
        assert_eq!(p("x - y - x"), p("-y"));
        assert_eq!(p("8/2/2"), p("2"));
        assert_eq!(p("2*x^2*y"), p("(2*(x^2))*y"));
        assert_eq!(p("1 + 2*3"), p("7"));
        assert_eq!(p("-2^2"), p("-4"));
        assert_eq!(p("(x+y)^0"), p("1"));
    }

    #[test]
    fn spec_inputs() {
        let f: RatFunc<Rational> = parse_expr("(z^2+1)^2/z^2", &vz()).unwrap();
        assert_eq!(f.num().to_string(), "z^4 + 2*z^2 + 1");
        assert_eq!(f.den().to_string(), "z^2");
        let t = Vars::new(["t"]);
        let f: RatFunc<Rational> = parse_expr("t", &t).unwrap();
        assert_eq!(f, RatFunc::var(&t, 0));
        let f: RatFunc<Rational> =
            parse_expr("(t^5-6*t^4+29*t^3-45*t^2+55*t+25)/((t^2-4*t+13)*(t^2-2*t+2))", &t).unwrap();
        assert_eq!(f.den().to_string(), "t^4 - 6*t^3 + 23*t^2 - 34*t + 26");
    }

    #[test]
    fn errors() {
        let v = vz();
        assert_eq!(parse_expr::<Rational>("z + w", &v), Err(Error::UndeclaredVariable("w".into())));
        assert_eq!(parse_expr::<Rational>("z + i", &v), Err(Error::ImaginaryInRealContext));
        assert!(matches!(parse_expr::<Rational>("z +", &v), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr::<Rational>("(z", &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr::<Rational>("z)", &v), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr::<Rational>("z^x", &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr::<Rational>("1.5", &v), Err(Error::Syntax { .. })));
        assert!(parse_expr::<Rational>("1/(z-z)", &v).is_err());
    }

    #[test]
    fn gaussian_round_trip() {
        let v = vz();
        let f: RatFunc<GaussianRational> = parse_expr("z + (3-4*i)/(z-2-3*i) - i*z^2/2", &v).unwrap();
        let back: RatFunc<GaussianRational> = parse_expr(&f.to_string(), &v).unwrap();
        assert_eq!(f, back);
        assert_eq!(parse_scalar::<GaussianRational>("2+3*i").unwrap(), GaussianRational::from_ints(2, 3));
    }

    #[test]
    fn curve_file_round_trip() {
        let text = "params: t\ndim: 2\n# tschirnhausen\nt^3 - 3*t\n3*t^2\n";
        let r = parse_curve_file(text).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(format_curve_file(&r), "params: t\ndim: 2\nt^3 - 3*t\n3*t^2\n");
        assert!(matches!(parse_curve_file("params: t\ndim: 3\nt\n"), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn map_file_round_trip() {
        let text = "source_dim: 2\ntarget_dim: 2\nvars: u1 u2\nu1^2\nu2\n";
        let phi = parse_map_file(text).unwrap();
        assert_eq!(format_map_file(&phi), text);
    }

    #[test]
    fn laurent_spec_format() {
        let spec = parse_laurent_spec("poly: 1; pole 2+3*i: 1+2*i; pole 1+i: -1-2*i;").unwrap();
        assert_eq!(spec.poles().len(), 2);
        let again = parse_laurent_spec(&format_laurent_spec(&spec)).unwrap();
        assert_eq!(spec, again);
        let open = parse_laurent_spec("poly: 1; pole 2+3*i; pole 1+i: ?;").unwrap();
        assert!(open.poles().iter().all(|(_, a)| a.is_empty()));
    }

    #[test]
    fn moebius_word_format() {
        let text = "inv c=(0, 0, 0) r2=1\ntr v=(1,0,0)\nhom s=2\n";
        let w = parse_moebius_word(text).unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(parse_moebius_word(&format_moebius_word(&w)).unwrap(), w);
        let w = parse_moebius_word("orth Q=[[3/5, -4/5], [4/5, 3/5]]").unwrap();
        assert_eq!(w.dim(), 2);
        assert!(parse_moebius_word("orth Q=[[1, 1], [0, 1]]").is_err());
        assert!(parse_moebius_word("hom s=2").is_err());
    }
}
