//! Affine plot data for point star configurations in P^2.
//!
//! Points are shown in the chart `x0 = 1`; a point with `x0 = 0` falls back
//! to the chart of its first nonzero coordinate and is flagged as lying at
//! infinity. Lines are clipped to a box around the finite points.

use hadamard_star::arith::{int, serde_rational, Rational};
use hadamard_star::starconfig::{subset_key, StarConfiguration};
use hadamard_star::{Error, Result};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlotPoint {
    pub subset: String,
    /// Index of the coordinate set to one.
    pub chart: usize,
    pub at_infinity: bool,
    #[serde(with = "serde_rational::vec")]
    pub affine: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlotLine {
    pub form_index: usize,
    pub equation: String,
    /// Endpoints `[[x, y], [x, y]]` in the chart `x0 = 1`; absent for the
    /// line at infinity.
    pub segment: Option<[[String; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlotData {
    #[serde(with = "serde_rational::vec")]
    pub bounds: Vec<Rational>,
    pub points: Vec<PlotPoint>,
    pub lines: Vec<PlotLine>,
}

fn affine(coords: &[Rational]) -> (usize, Vec<Rational>) {
    let chart = coords.iter().position(|x| !x.is_zero()).expect("points are nonzero");
    let rest = coords
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != chart)
        .map(|(_, x)| x / &coords[chart])
        .collect();
    (chart, rest)
}

/// Clips `a0 + a1 x + a2 y = 0` to the box `[xmin, xmax] x [ymin, ymax]`.
fn clip(a: &[Rational], b: &[Rational; 4]) -> Option<[[Rational; 2]; 2]> {
    let [xmin, xmax, ymin, ymax] = b;
    let mut hits: Vec<[Rational; 2]> = Vec::new();
    let mut push = |p: [Rational; 2]| {
        if !hits.contains(&p) {
            hits.push(p);
        }
    };
    if !a[2].is_zero() {
        for x in [xmin, xmax] {
            let y = -(&a[0] + &a[1] * x) / &a[2];
            if &y >= ymin && &y <= ymax {
                push([x.clone(), y]);
            }
        }
    }
    if !a[1].is_zero() {
        for y in [ymin, ymax] {
            let x = -(&a[0] + &a[2] * y) / &a[1];
            if &x >= xmin && &x <= xmax {
                push([x, y.clone()]);
            }
        }
    }
    hits.sort();
    match (hits.first(), hits.last()) {
        (Some(p), Some(q)) => Some([p.clone(), q.clone()]),
        _ => None,
    }
}

pub fn plot_data(star: &StarConfiguration) -> Result<PlotData> {
    if star.ambient_dim() != 2 {
        return Err(Error::BadDim {
            expected: 2,
            found: star.ambient_dim(),
        });
    }
    if star.components().is_empty() {
        return Err(Error::EmptyVariety);
    }
    let mut points = Vec::new();
    for (subset, comp) in star.components() {
        let p = comp.as_point().ok_or(Error::BadCodim {
            c: star.codim(),
            n: 2,
        })?;
        let (chart, coords) = affine(p.coords());
        points.push(PlotPoint {
            subset: subset_key(subset),
            chart,
            at_infinity: chart != 0,
            affine: coords,
        });
    }
    let finite: Vec<&PlotPoint> = points.iter().filter(|p| !p.at_infinity).collect();
    let bounds = if finite.is_empty() {
        [int(-1), int(1), int(-1), int(1)]
    } else {
        let xs = finite.iter().map(|p| p.affine[0].clone());
        let ys = finite.iter().map(|p| p.affine[1].clone());
        let (xmin, xmax) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (ymin, ymax) = (ys.clone().min().unwrap(), ys.max().unwrap());
        [xmin - int(1), xmax + int(1), ymin - int(1), ymax + int(1)]
    };
    let lines = star
        .forms()
        .iter()
        .enumerate()
        .map(|(i, f)| PlotLine {
            form_index: i,
            equation: f.to_string(),
            segment: clip(f.coeffs(), &bounds).map(|[p, q]| {
                [
                    [p[0].to_string(), p[1].to_string()],
                    [q[0].to_string(), q[1].to_string()],
                ]
            }),
        })
        .collect();
    Ok(PlotData {
        bounds: bounds.to_vec(),
        points,
        lines,
    })
}
