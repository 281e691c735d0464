//! Projective points, linear forms and linear subvarieties of P^n.
//!
//! Points and forms are stored canonically (first nonzero entry equal to
//! one), so derived equality and hashing are projective equality.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, primitive_integer, serde_rational, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::Budget;

fn canonicalize(mut v: Vec<Rational>) -> Result<Vec<Rational>> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return Err(Error::ZeroVector);
    };
    if !lead.is_one() {
        let inv = lead.recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
    }
    Ok(v)
}

fn display_vector(f: &mut fmt::Formatter<'_>, v: &[Rational]) -> fmt::Result {
    let parts: Vec<String> = primitive_integer(v).iter().map(|x| x.to_string()).collect();
    write!(f, "[{}]", parts.join(":"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoords {
    Bare(#[serde(with = "serde_rational::vec")] Vec<Rational>),
    Point {
        #[serde(with = "serde_rational::vec")]
        coords: Vec<Rational>,
    },
    Form {
        #[serde(with = "serde_rational::vec")]
        coeffs: Vec<Rational>,
    },
}

impl RawCoords {
    fn into_vec(self) -> Vec<Rational> {
        match self {
            RawCoords::Bare(v) | RawCoords::Point { coords: v } | RawCoords::Form { coeffs: v } => v,
        }
    }
}

/// A point `[a_0 : ... : a_n]` of projective n-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCoords")]
pub struct ProjPoint {
    #[serde(with = "serde_rational::vec")]
    coords: Vec<Rational>,
}

impl TryFrom<RawCoords> for ProjPoint {
    type Error = Error;

    fn try_from(raw: RawCoords) -> Result<Self> {
        ProjPoint::new(raw.into_vec())
    }
}

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            coords: canonicalize(coords)?,
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(arith::ints(coords))
    }

    /// The point `[1 : ... : 1]`, identity for the Hadamard product.
    pub fn ones(n: usize) -> Self {
        Self {
            coords: vec![Rational::one(); n + 1],
        }
    }

    /// Coordinate point `E_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); n + 1];
        coords[i] = Rational::one();
        Self { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn zero_count(&self) -> usize {
        self.coords.iter().filter(|x| x.is_zero()).count()
    }

    /// Membership in the stratum of points with at most `i + 1` nonzero
    /// coordinates. `i >= n` covers all of P^n.
    pub fn in_delta(&self, i: usize) -> bool {
        i >= self.dim() || self.zero_count() >= self.dim() - i
    }

    pub fn first_zero(&self) -> Option<usize> {
        self.coords.iter().position(Zero::is_zero)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: self.coords.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display_vector(f, &self.coords)
    }
}

/// A linear form `a_0 x_0 + ... + a_n x_n`, up to scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCoords")]
pub struct LinearForm {
    #[serde(with = "serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<RawCoords> for LinearForm {
    type Error = Error;

    fn try_from(raw: RawCoords) -> Result<Self> {
        LinearForm::new(raw.into_vec())
    }
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            coeffs: canonicalize(coeffs)?,
        })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(arith::ints(coeffs))
    }

    /// The coordinate hyperplane `x_i`.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[i] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients scaled to coprime integers with positive leading entry.
    pub fn integer_coeffs(&self) -> Vec<num_bigint::BigInt> {
        primitive_integer(&self.coeffs)
    }

    /// Indices of the variables appearing with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, _)| j)
            .collect()
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        arith::dot(&self.coeffs, p.coords())
    }

    pub fn vanishes_at(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (j, a) in self.integer_coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a < &num_bigint::BigInt::zero() { "-" } else { "+" };
            let mag = if a < &num_bigint::BigInt::zero() { -a } else { a.clone() };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&format!("x{j}"));
        }
        f.write_str(&out)
    }
}

/// The point of dual projective space whose coordinates are the
/// coefficients of `form`.
pub fn dual_point(form: &LinearForm) -> ProjPoint {
    ProjPoint {
        coords: form.coeffs.clone(),
    }
}

/// The hyperplane whose coefficients are the coordinates of `p`.
pub fn dual_form(p: &ProjPoint) -> LinearForm {
    LinearForm {
        coeffs: p.coords.clone(),
    }
}

/// Standard Cremona transformation `[y_0 : ... : y_n] -> [1/y_0 : ... : 1/y_n]`.
pub fn cremona(p: &ProjPoint) -> Result<ProjPoint> {
    if let Some(index) = p.first_zero() {
        return Err(Error::ZeroCoordinate { index });
    }
    ProjPoint::new(p.coords.iter().map(Rational::recip).collect())
}

/// Rank of the coordinate matrix of `points`.
pub fn point_rank(points: &[ProjPoint]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    RatMatrix::from_rows(first.dim() + 1, points.iter().map(ProjPoint::coords))
        .expect("points share an ambient dimension")
        .rank()
}

pub fn collinear(points: &[ProjPoint; 3]) -> bool {
    point_rank(points) <= 2
}

/// A linear subvariety of P^n, kept both as spanning points and as
/// defining forms.
///
/// Both lists are derived from reduced row echelon forms, so two varieties
/// are equal exactly when they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVariety")]
pub struct LinearVariety {
    ambient_dim: usize,
    span_points: Vec<ProjPoint>,
    defining_forms: Vec<LinearForm>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawVariety {
    Points(Vec<ProjPoint>),
    Spanned { span_points: Vec<ProjPoint> },
}

impl TryFrom<RawVariety> for LinearVariety {
    type Error = Error;

    fn try_from(raw: RawVariety) -> Result<Self> {
        match raw {
            RawVariety::Points(p) | RawVariety::Spanned { span_points: p } => {
                LinearVariety::span_of(&p)
            }
        }
    }
}

impl LinearVariety {
    /// Smallest linear variety containing `points`.
    pub fn span_of(points: &[ProjPoint]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyVariety);
        };
        let n = first.dim();
        for p in points {
            p.check_dim(n)?;
        }
        let m = RatMatrix::from_rows(n + 1, points.iter().map(ProjPoint::coords))?;
        Ok(Self::from_row_space(n, &m))
    }

    /// Common zero locus of `forms` in P^n.
    pub fn from_forms(n: usize, forms: &[LinearForm]) -> Result<Self> {
        for f in forms {
            if f.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: f.coeffs.len(),
                });
            }
        }
        let m = RatMatrix::from_rows(n + 1, forms.iter().map(LinearForm::coeffs))?;
        let kernel = m.kernel_basis();
        if kernel.is_empty() {
            return Err(Error::EmptyVariety);
        }
        let km = RatMatrix::from_rows(n + 1, kernel)?;
        Ok(Self::from_row_space(n, &km))
    }

    /// The variety of the row space of `m` (which must be nonzero).
    fn from_row_space(n: usize, m: &RatMatrix) -> Self {
        let echelon = m.rref();
        let span_points = echelon
            .reduced
            .row_iter()
            .map(|row| ProjPoint::new(row.to_vec()).expect("echelon rows are nonzero"))
            .collect();
        let defining_forms = echelon
            .reduced
            .kernel_basis()
            .into_iter()
            .map(|v| LinearForm::new(v).expect("kernel basis vectors are nonzero"))
            .collect();
        Self {
            ambient_dim: n,
            span_points,
            defining_forms,
        }
    }

    pub fn point(p: &ProjPoint) -> Self {
        Self::span_of(std::slice::from_ref(p)).expect("single point spans")
    }

    pub fn hyperplane(form: &LinearForm) -> Result<Self> {
        Self::from_forms(form.dim(), std::slice::from_ref(form))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn span_points(&self) -> &[ProjPoint] {
        &self.span_points
    }

    pub fn defining_forms(&self) -> &[LinearForm] {
        &self.defining_forms
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.span_points.len() - 1
    }

    pub fn codim(&self) -> usize {
        self.defining_forms.len()
    }

    pub fn is_hyperplane(&self) -> bool {
        self.codim() == 1
    }

    /// The single defining form of a hyperplane.
    pub fn as_hyperplane(&self) -> Option<&LinearForm> {
        self.is_hyperplane().then(|| &self.defining_forms[0])
    }

    /// The underlying point of a zero-dimensional variety.
    pub fn as_point(&self) -> Option<&ProjPoint> {
        (self.dim() == 0).then(|| &self.span_points[0])
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        p.dim() == self.ambient_dim && self.defining_forms.iter().all(|f| f.vanishes_at(p))
    }

    pub fn contains(&self, other: &LinearVariety) -> bool {
        other.span_points.iter().all(|p| self.contains_point(p))
    }

    /// Intersection with the zero loci of `forms`.
    pub fn intersect(&self, forms: &[LinearForm]) -> Result<Self> {
        let mut all = self.defining_forms.clone();
        all.extend_from_slice(forms);
        Self::from_forms(self.ambient_dim, &all)
    }

    /// Whether the variety contains a point with at least `n - i` zero
    /// coordinates. Every coordinate subset of size `n - i` is tried by
    /// stacking its coordinate hyperplanes onto the defining forms.
    pub fn meets_delta(&self, i: usize, budget: &Budget) -> Result<bool> {
        let n = self.ambient_dim;
        if i >= n {
            return Ok(true);
        }
        let k = n - i;
        budget.check_delta(crate::binomial(n + 1, k))?;
        let full = n + 1;
        Ok((0..full).combinations(k).any(|subset| {
            let rows = self
                .defining_forms
                .iter()
                .map(|f| f.coeffs.clone())
                .chain(subset.iter().map(|&j| LinearForm::variable(n, j).coeffs));
            RatMatrix::from_rows(full, rows)
                .expect("rows have n + 1 entries")
                .rank()
                < full
        }))
    }
}
