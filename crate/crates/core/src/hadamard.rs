//! Hadamard (coordinatewise) products of points, hyperplanes, finite point
//! sets and linear spans.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::projective::{LinearForm, LinearVariety, ProjPoint};

/// `P * Q = [a_0 b_0 : ... : a_n b_n]`, or `None` when every product
/// vanishes and the product is undefined.
pub fn hadamard_point(p: &ProjPoint, q: &ProjPoint) -> Option<ProjPoint> {
    assert_eq!(p.dim(), q.dim(), "points must share an ambient dimension");
    ProjPoint::new(p.coords().iter().zip(q.coords()).map(|(a, b)| a * b).collect()).ok()
}

/// Product of several points taken coordinate by coordinate in one pass;
/// undefined exactly when the full product vector is zero.
pub fn hadamard_product_of(points: &[&ProjPoint]) -> Option<ProjPoint> {
    let first = points.first()?;
    let mut acc: Vec<Rational> = first.coords().to_vec();
    for p in &points[1..] {
        for (x, y) in acc.iter_mut().zip(p.coords()) {
            *x *= y;
        }
    }
    ProjPoint::new(acc).ok()
}

/// The form `L'` with `P * V(L) = V(L')`, i.e. coefficients `a_j / p_j`.
pub fn point_star_hyperplane(p: &ProjPoint, form: &LinearForm) -> Result<LinearForm> {
    if let Some(index) = p.first_zero() {
        return Err(Error::ZeroCoordinate { index });
    }
    if p.dim() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim() + 1,
            found: p.dim() + 1,
        });
    }
    LinearForm::new(form.coeffs().iter().zip(p.coords()).map(|(a, x)| a / x).collect())
}

/// Coordinatewise reciprocal, the inverse of `p` under the Hadamard product.
pub fn hadamard_inverse(p: &ProjPoint) -> Result<ProjPoint> {
    crate::projective::cremona(p)
}

/// A finite set of projective points without repetitions, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<ProjPoint>,
}

impl PointSet {
    /// Drops later duplicates.
    pub fn new(points: impl IntoIterator<Item = ProjPoint>) -> Self {
        let mut out: Vec<ProjPoint> = Vec::new();
        for p in points {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Self { points: out }
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// Equality as sets, ignoring order.
    pub fn same_set(&self, other: &PointSet) -> bool {
        self.len() == other.len() && self.points.iter().all(|p| other.contains(p))
    }

    /// Points sorted into a canonical order.
    pub fn sorted(&self) -> Vec<ProjPoint> {
        let mut v = self.points.clone();
        v.sort();
        v
    }
}

impl FromIterator<ProjPoint> for PointSet {
    fn from_iter<T: IntoIterator<Item = ProjPoint>>(iter: T) -> Self {
        Self::new(iter)
    }
}

/// Output of a finite Hadamard power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerResult {
    pub points: PointSet,
    /// Subsets (or multisets) whose product was undefined and was dropped.
    pub undefined: usize,
}

/// Square-free Hadamard power: products over all `r`-element subsets of
/// `x`, with undefined products dropped and counted.
pub fn squarefree_power(x: &PointSet, r: usize) -> Result<PowerResult> {
    if r < 1 || r > x.len() {
        return Err(Error::BadArity { r, max: x.len() });
    }
    let mut undefined = 0;
    let mut out = Vec::new();
    for subset in x.points().iter().combinations(r) {
        match hadamard_product_of(&subset) {
            Some(p) => out.push(p),
            None => undefined += 1,
        }
    }
    Ok(PowerResult {
        points: PointSet::new(out),
        undefined,
    })
}

/// Hadamard power allowing repeated factors: products over all
/// `r`-multisets of `x`.
pub fn multiset_power(x: &PointSet, r: usize) -> Result<PowerResult> {
    if r < 1 || x.is_empty() {
        return Err(Error::BadArity { r, max: usize::MAX });
    }
    let mut undefined = 0;
    let mut out = Vec::new();
    for multiset in x.points().iter().combinations_with_replacement(r) {
        match hadamard_product_of(&multiset) {
            Some(p) => out.push(p),
            None => undefined += 1,
        }
    }
    Ok(PowerResult {
        points: PointSet::new(out),
        undefined,
    })
}

/// Linear span of a Hadamard product of linear varieties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanProduct {
    pub variety: LinearVariety,
    /// The dimension the product would have if it were itself this linear
    /// variety: `min(n, dim V + dim W)` for a product of two factors.
    pub expected_dim: usize,
    pub has_expected_dim: bool,
}

/// Linear span of `{B * C}` over spanning points of `v` and `w`. The
/// coordinatewise product is bilinear, so this is the span of `V * W`.
pub fn hadamard_span(v: &LinearVariety, w: &LinearVariety) -> Result<SpanProduct> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim() + 1,
            found: w.ambient_dim() + 1,
        });
    }
    let products: Vec<ProjPoint> = v
        .span_points()
        .iter()
        .cartesian_product(w.span_points())
        .filter_map(|(b, c)| hadamard_point(b, c))
        .collect();
    if products.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let variety = LinearVariety::span_of(&products)?;
    let expected_dim = v.ambient_dim().min(v.dim() + w.dim());
    Ok(SpanProduct {
        has_expected_dim: variety.dim() == expected_dim,
        variety,
        expected_dim,
    })
}

/// Span of the `r`-th Hadamard power, seeded by `V^0 = [1 : ... : 1]`.
pub fn hadamard_power_span(v: &LinearVariety, r: usize) -> Result<SpanProduct> {
    if r < 1 {
        return Err(Error::BadArity { r, max: usize::MAX });
    }
    let n = v.ambient_dim();
    let mut acc = LinearVariety::point(&ProjPoint::ones(n));
    for _ in 0..r {
        acc = hadamard_span(v, &acc)?.variety;
    }
    let expected_dim = n.min(r * v.dim());
    Ok(SpanProduct {
        has_expected_dim: acc.dim() == expected_dim,
        variety: acc,
        expected_dim,
    })
}

/// True when every coordinate is one.
pub fn is_identity(p: &ProjPoint) -> bool {
    p.coords().iter().all(One::is_one)
}

/// True when `p` has a zero coordinate.
pub fn has_zero_coordinate(p: &ProjPoint) -> bool {
    p.coords().iter().any(Zero::is_zero)
}
