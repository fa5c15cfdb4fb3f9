//! SVG sampling of curves and of map images of a line grid. All sampling
//! and viewport arithmetic is exact; decimals appear only in the output.

use std::fmt::Write as _;

use crate::curve::PHCurve;
use crate::error::{Error, Result};
use crate::map::RationalMap;
use crate::scalar::{Field, Rational};

const PANEL: i64 = 600;
const MARGIN: i64 = 20;
const GRID_LINES: usize = 10;
const DIGITS: usize = 9;

#[derive(Clone, Debug)]
pub enum PlotTarget {
    Curve(PHCurve),
    /// Images of a `GRID_LINES × GRID_LINES` family of coordinate lines.
    MapGrid(RationalMap),
}

#[derive(Clone, Debug)]
pub struct PlotSpec {
    pub target: PlotTarget,
    pub t0: Rational,
    pub t1: Rational,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotOutput {
    pub svg: String,
    pub skipped: usize,
}

/// A polyline in target coordinates; `None` marks a skipped sample.
type Path = Vec<Option<Vec<Rational>>>;

fn sample_params(spec: &PlotSpec) -> Vec<Rational> {
    let steps = Rational::from((spec.samples - 1) as i64);
    let width = spec.t1.clone() - &spec.t0;
    (0..spec.samples)
        .map(|k| spec.t0.clone() + &(width.clone() * &Rational::from(k as i64) / &steps))
        .collect()
}

fn grid_paths(phi: &RationalMap, ts: &[Rational], spec: &PlotSpec) -> Vec<Path> {
    let steps = Rational::from((GRID_LINES - 1) as i64);
    let width = spec.t1.clone() - &spec.t0;
    let levels: Vec<Rational> = (0..GRID_LINES)
        .map(|k| spec.t0.clone() + &(width.clone() * &Rational::from(k as i64) / &steps))
        .collect();
    let mut paths = Vec::new();
    for fixed in 0..2 {
        for level in &levels {
            let path = ts
                .iter()
                .map(|t| {
                    let p = if fixed == 0 { [level.clone(), t.clone()] } else { [t.clone(), level.clone()] };
                    phi.eval(&p)
                })
                .collect();
            paths.push(path);
        }
    }
    paths
}

/// Coordinate pairs shown in each panel.
fn projections(dim: usize) -> Result<Vec<(Option<usize>, usize)>> {
    match dim {
        1 => Ok(vec![(None, 0)]),
        2 => Ok(vec![(Some(0), 1)]),
        3 => Ok(vec![(Some(0), 1), (Some(0), 2)]),
        _ => Err(Error::InvalidPlot(format!("cannot draw dimension {dim}"))),
    }
}

struct Bounds {
    min: [Rational; 2],
    max: [Rational; 2],
}

/// Screen y coordinate, growing downward.
fn screen_y(v: &Rational, min: &Rational, scale: &Rational) -> String {
    (Rational::from(PANEL - MARGIN) - &((v.clone() - min) * scale)).to_decimal(DIGITS)
}

pub fn render(spec: &PlotSpec) -> Result<PlotOutput> {
    if spec.samples < 2 {
        return Err(Error::InvalidPlot("need at least 2 samples".into()));
    }
    if spec.t0 >= spec.t1 {
        return Err(Error::InvalidPlot("range must satisfy a < b".into()));
    }
    let ts = sample_params(spec);
    let (paths, dim, params): (Vec<Path>, usize, Option<Vec<Rational>>) = match &spec.target {
        PlotTarget::Curve(r) => (vec![ts.iter().map(|t| r.eval(t)).collect()], r.dim(), Some(ts.clone())),
        PlotTarget::MapGrid(phi) => {
            if phi.source_dim() != 2 || phi.has_parameters() {
                return Err(Error::InvalidPlot("grid plots need a map of two variables".into()));
            }
            (grid_paths(phi, &ts, spec), phi.target_dim(), None)
        }
    };
    let panels = projections(dim)?;
    let total: usize = paths.iter().map(Vec::len).sum();
    let skipped: usize = paths.iter().map(|p| p.iter().filter(|x| x.is_none()).count()).sum();
    if skipped == total {
        return Err(Error::EmptyPlot);
    }

    let coord = |path_idx: usize, sample: usize, point: &[Rational], axis: Option<usize>| -> Rational {
        match axis {
            Some(a) => point[a].clone(),
            None => {
                debug_assert_eq!(path_idx, 0);
                params.as_ref().expect("curve parameters")[sample].clone()
            }
        }
    };

    let width = PANEL * panels.len() as i64;
    let mut svg = String::new();
    writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL}" viewBox="0 0 {width} {PANEL}">"#).unwrap();
    writeln!(svg, r#"<rect width="{width}" height="{PANEL}" fill="white"/>"#).unwrap();
    if skipped > 0 {
        writeln!(svg, "<!-- skipped {skipped} samples at poles -->").unwrap();
    }
    for (panel, &(ax, ay)) in panels.iter().enumerate() {
        let mut bounds: Option<Bounds> = None;
        for (pi, path) in paths.iter().enumerate() {
            for (si, point) in path.iter().enumerate() {
                let Some(point) = point else { continue };
                let xy = [coord(pi, si, point, ax), point[ay].clone()];
                match &mut bounds {
                    None => bounds = Some(Bounds { min: xy.clone(), max: xy }),
                    Some(b) => {
                        for k in 0..2 {
                            if xy[k] < b.min[k] {
                                b.min[k] = xy[k].clone();
                            }
                            if xy[k] > b.max[k] {
                                b.max[k] = xy[k].clone();
                            }
                        }
                    }
                }
            }
        }
        let b = bounds.expect("some sample survived");
        let inner = Rational::from(PANEL - 2 * MARGIN);
        let span = |k: usize| {
            let s = b.max[k].clone() - &b.min[k];
            if s.is_zero() { Rational::from(1) } else { s }
        };
        let sx = inner.clone() / &span(0);
        let sy = inner / &span(1);
        let scale = if sx < sy { sx } else { sy };
        let x_offset = Rational::from(PANEL * panel as i64);
        writeln!(svg, r#"<g stroke="black" stroke-width="1" fill="none">"#).unwrap();
        for (pi, path) in paths.iter().enumerate() {
            let mut segment: Vec<String> = Vec::new();
            let flush = |segment: &mut Vec<String>, svg: &mut String| {
                if segment.len() >= 2 {
                    writeln!(svg, r#"<polyline points="{}"/>"#, segment.join(" ")).unwrap();
                }
                segment.clear();
            };
            for (si, point) in path.iter().enumerate() {
                match point {
                    None => flush(&mut segment, &mut svg),
                    Some(point) => {
                        let x = coord(pi, si, point, ax);
                        let shifted = (x - &b.min[0]) * &scale + &Rational::from(MARGIN) + &x_offset;
                        let y = screen_y(&point[ay], &b.min[1], &scale);
                        segment.push(format!("{},{}", shifted.to_decimal(DIGITS), y));
                    }
                }
            }
            flush(&mut segment, &mut svg);
        }
        writeln!(svg, "</g>").unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(PlotOutput { svg, skipped })
}
