//! Hadamard and strong Hadamard sets, witnesses, and the two construction
//! pipelines (points on a line, points on a hyperplane).
//!
//! A set of forms `L_i = sum_j a_j(i) x_j` is a strong Hadamard set when
//! there are a form `L` and points `P_i` without zero coordinates such that
//! `V(L_i) = P_i * V(L)` and `P_i` lies on `V(L)`. This holds exactly when
//!
//! 1. every coefficient `a_j(i)` is nonzero, and
//! 2. the reciprocal matrix `M = (1 / a_j(i))` has a kernel vector `b` with
//!    no zero coordinate.
//!
//! A witness is then `L = sum_j sqrt(b_j) x_j` with
//! `P_i = [sqrt(b_0)/a_0(i) : ... : sqrt(b_n)/a_n(i)]`.

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{self, serde_rational, RadicalScalar, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::hadamard::{
    hadamard_power_span, point_star_hyperplane, squarefree_power, PointSet, PowerResult,
};
use crate::projective::{collinear, cremona, dual_point, point_rank, LinearForm, LinearVariety, ProjPoint};
use crate::starconfig::{is_generally_linear, StarConfiguration};
use crate::Budget;

const WITNESS_NOTE: &str = "the witness (L, P_i) is one member of a family; \
    other forms and points (e.g. other square-root branches or kernel vectors) may certify the same set";

/// True when all forms have the same support. An empty or one-element set
/// is trivially a Hadamard set.
pub fn is_hadamard_set(forms: &[LinearForm]) -> bool {
    forms.iter().map(LinearForm::support).all_equal()
}

/// First coefficient that vanishes, as `(form index, coordinate)`.
pub fn first_zero_coefficient(forms: &[LinearForm]) -> Option<(usize, usize)> {
    forms.iter().enumerate().find_map(|(i, f)| {
        f.coeffs().iter().position(Zero::is_zero).map(|j| (i, j))
    })
}

/// The matrix of reciprocal coefficients `1 / a_j(i)`, defined only when
/// every coefficient is nonzero.
pub fn reciprocal_matrix(forms: &[LinearForm]) -> Option<RatMatrix> {
    let n = forms.first()?.dim();
    if first_zero_coefficient(forms).is_some() {
        return None;
    }
    RatMatrix::from_rows(
        n + 1,
        forms
            .iter()
            .map(|f| f.coeffs().iter().map(Rational::recip).collect::<Vec<_>>()),
    )
    .ok()
}

/// A combination of the rows of `m` with exactly one nonzero entry: the
/// coordinate and the row coefficients. Exists iff the kernel of `m` lies in
/// that coordinate hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleEntryCombination {
    pub coordinate: usize,
    #[serde(with = "serde_rational::vec")]
    pub row_coefficients: Vec<Rational>,
}

/// Searches for a row combination of `m` equal to a unit vector by solving
/// `m^T y = e_j` for each `j`.
pub fn single_entry_row_combination(m: &RatMatrix) -> Option<SingleEntryCombination> {
    let mt = m.transpose();
    (0..m.cols()).find_map(|j| {
        let mut e = vec![Rational::zero(); m.cols()];
        e[j] = arith::int(1);
        mt.solve(&e).map(|y| SingleEntryCombination {
            coordinate: j,
            row_coefficients: y,
        })
    })
}

/// Form `L` and points `P_i` certifying a strong Hadamard set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Coefficients `a_j` of `L`, with `a_j^2 = b_j`.
    #[serde(rename = "L")]
    pub form: Vec<RadicalScalar>,
    /// `P_i = [a_0 / a_0(i) : ... : a_n / a_n(i)]`, not normalized.
    pub points: Vec<Vec<RadicalScalar>>,
    #[serde(with = "serde_rational::vec")]
    pub kernel_vector_b: Vec<Rational>,
}

impl Witness {
    /// Checks both defining identities exactly:
    /// `L(P_i) = sum_j b_j / a_j(i) = 0` and `P_i * V(L) = V(L_i)`.
    pub fn verify(&self, forms: &[LinearForm]) -> Result<()> {
        if self.points.len() != forms.len() {
            return Err(Error::VerificationFailed(format!(
                "{} points for {} forms",
                self.points.len(),
                forms.len()
            )));
        }
        for (i, (p, f)) in self.points.iter().zip(forms).enumerate() {
            if p.len() != self.form.len() || f.coeffs().len() != self.form.len() {
                return Err(Error::VerificationFailed(format!("length mismatch at form {i}")));
            }
            // rational route
            let direct: Rational = self
                .kernel_vector_b
                .iter()
                .zip(f.coeffs())
                .map(|(b, a)| b / a)
                .sum();
            if !direct.is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "sum_j b_j / a_j({i}) = {direct}"
                )));
            }
            // radical route: L evaluated at P_i
            let mut value = RadicalScalar::zero();
            for (a, x) in self.form.iter().zip(p) {
                value = value.checked_add(&(a * x)).ok_or_else(|| {
                    Error::VerificationFailed(format!("L(P_{i}) mixes radicands"))
                })?;
            }
            if !value.is_zero() {
                return Err(Error::VerificationFailed(format!("L(P_{i}) = {value}")));
            }
            // P_i * L has coefficients a_j / p_j(i)
            let ratios = self
                .form
                .iter()
                .zip(p)
                .map(|(a, x)| a.ratio(x))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    Error::VerificationFailed(format!("P_{i} * L is not rational"))
                })?;
            let image = LinearForm::new(ratios)
                .map_err(|e| Error::VerificationFailed(format!("P_{i} * L: {e}")))?;
            if &image != f {
                return Err(Error::VerificationFailed(format!(
                    "P_{i} * V(L) = V({image}), expected V({f})"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the witness from an all-nonzero kernel vector `b` of the
/// reciprocal matrix, taking `a_j` as the principal root of `b_j`.
pub fn synthesize_witness(forms: &[LinearForm], b: &[Rational]) -> Result<Witness> {
    if let Some((i, j)) = first_zero_coefficient(forms) {
        return Err(Error::Inadmissible(format!(
            "form {i} has a zero coefficient at x{j}"
        )));
    }
    if let Some(f) = forms.iter().find(|f| f.coeffs().len() != b.len()) {
        return Err(Error::DimensionMismatch {
            expected: b.len(),
            found: f.coeffs().len(),
        });
    }
    if b.iter().any(Zero::is_zero) {
        return Err(Error::Inadmissible("kernel vector has a zero coordinate".into()));
    }
    let form: Vec<RadicalScalar> = b.iter().map(RadicalScalar::sqrt).collect();
    let points = forms
        .iter()
        .map(|f| {
            form.iter()
                .zip(f.coeffs())
                .map(|(a, c)| a.div_rational(c))
                .collect()
        })
        .collect();
    let witness = Witness {
        form,
        points,
        kernel_vector_b: b.to_vec(),
    };
    witness.verify(forms)?;
    Ok(witness)
}

/// Form index and coordinate of a vanishing coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroEntry {
    pub form_index: usize,
    pub coordinate: usize,
}

/// Full verdict of the strong-Hadamard classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub form_count: usize,
    pub is_hadamard_set: bool,
    pub condition1_all_nonzero: bool,
    pub condition1_offending: Option<ZeroEntry>,
    pub condition2_kernel: bool,
    #[serde(rename = "rank_of_M")]
    pub rank_of_m: Option<usize>,
    #[serde(with = "serde_rational::vec_option")]
    pub kernel_vector: Option<Vec<Rational>>,
    pub kernel_search_escalated: bool,
    /// Present when condition (2) fails although condition (1) holds.
    pub single_entry_row_combination: Option<SingleEntryCombination>,
    pub n2_rank_shortcut_used: bool,
    /// For `n = 2`: whether `rank(M) <= 2` agrees with the kernel decision.
    pub n2_rank_shortcut_agrees: Option<bool>,
    pub generally_linear: bool,
    pub generally_linear_failing_subset: Option<Vec<usize>>,
    pub is_strong_hadamard: bool,
    pub is_hadamard_star_configuration: bool,
    pub witness: Option<Witness>,
    pub witness_note: Option<&'static str>,
}

/// Classifies `forms` in P^n. Conditions (1) and (2) are evaluated even when
/// the set is not generally linear; the star-configuration verdict requires
/// both.
pub fn classify(forms: &[LinearForm], n: usize, budget: &Budget) -> Result<ClassificationReport> {
    let gl = is_generally_linear(forms, n, budget)?;
    let offending = first_zero_coefficient(forms).map(|(i, j)| ZeroEntry {
        form_index: i,
        coordinate: j,
    });
    let condition1 = offending.is_none() && !forms.is_empty();
    let m = if condition1 { reciprocal_matrix(forms) } else { None };

    let rank = m.as_ref().map(RatMatrix::rank);
    let kernel = m.as_ref().and_then(RatMatrix::all_nonzero_kernel_vector);
    let condition2 = kernel.is_some();
    let single_entry = match (&m, condition2) {
        (Some(m), false) => single_entry_row_combination(m),
        _ => None,
    };
    let n2_used = n == 2 && m.is_some();
    let n2_agrees = n2_used.then(|| (rank.unwrap_or(0) <= 2) == condition2);

    let strong = condition1 && condition2;
    let witness = match &kernel {
        Some(k) if strong => Some(synthesize_witness(forms, &k.vector)?),
        _ => None,
    };
    Ok(ClassificationReport {
        n,
        form_count: forms.len(),
        is_hadamard_set: is_hadamard_set(forms),
        condition1_all_nonzero: condition1,
        condition1_offending: offending,
        condition2_kernel: condition2,
        rank_of_m: rank,
        kernel_search_escalated: kernel.as_ref().is_some_and(|k| k.escalated),
        kernel_vector: kernel.map(|k| k.vector),
        single_entry_row_combination: single_entry,
        n2_rank_shortcut_used: n2_used,
        n2_rank_shortcut_agrees: n2_agrees,
        generally_linear: gl.generally_linear,
        generally_linear_failing_subset: gl.failing_subset,
        is_strong_hadamard: strong,
        is_hadamard_star_configuration: gl.generally_linear && strong,
        witness_note: witness.as_ref().map(|_| WITNESS_NOTE),
        witness,
    })
}

/// Deterministic sample points `B0 + t * B1` (t = 1, 2, ...) on a line
/// spanned by `B0, B1`, skipping points with a zero coordinate.
pub fn sample_line_points(line: &LinearVariety, m: usize) -> Result<PointSet> {
    if line.dim() != 1 {
        return Err(Error::Inadmissible(format!(
            "expected a line, got a variety of dimension {}",
            line.dim()
        )));
    }
    let n = line.ambient_dim();
    let (b0, b1) = (&line.span_points()[0], &line.span_points()[1]);
    let mut out = Vec::new();
    // each coordinate vanishes for at most one t unless it vanishes on the whole line
    for t in 1..=(m + n + 2) as i64 {
        if out.len() == m {
            break;
        }
        let t = arith::int(t);
        let coords = b0
            .coords()
            .iter()
            .zip(b1.coords())
            .map(|(x, y)| x + &t * y)
            .collect();
        let p = ProjPoint::new(coords)?;
        if !p.in_delta(n - 1) {
            out.push(p);
        }
    }
    if out.len() < m {
        return Err(Error::Inadmissible(format!(
            "line has only {} sample points without zero coordinates",
            out.len()
        )));
    }
    Ok(PointSet::new(out))
}

/// Output of the line construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineConstruction {
    pub line: LinearVariety,
    pub points: PointSet,
    /// The hyperplane `V(L)` spanned by the `(n-1)`-th Hadamard power of the line.
    pub hyperplane: LinearForm,
    pub line_in_hyperplane: bool,
    pub forms: Vec<LinearForm>,
    pub star: StarConfiguration,
    pub squarefree_power: PowerResult,
    pub power_matches_star: bool,
    pub report: ClassificationReport,
}

/// Builds the star configuration `X^{*n}` of points on a line together with
/// its defining forms `L_i = P_i * L`, and classifies those forms.
///
/// The line must avoid `Delta_{n-2}` and the points must have no zero
/// coordinate; when `points` is `None`, `n + 2` points are sampled.
pub fn construct_from_line(
    line: &LinearVariety,
    points: Option<&PointSet>,
    budget: &Budget,
) -> Result<LineConstruction> {
    let n = line.ambient_dim();
    if n < 2 {
        return Err(Error::Inadmissible(format!("ambient dimension {n} < 2")));
    }
    if line.dim() != 1 {
        return Err(Error::Inadmissible(format!(
            "expected a line, got a variety of dimension {}",
            line.dim()
        )));
    }
    if line.meets_delta(n - 2, budget)? {
        return Err(Error::Inadmissible(format!(
            "line meets Delta_{} (a point with at least two zero coordinates)",
            n - 2
        )));
    }
    let points = match points {
        Some(p) => p.clone(),
        None => sample_line_points(line, n + 2)?,
    };
    for (i, p) in points.points().iter().enumerate() {
        if !line.contains_point(p) {
            return Err(Error::Inadmissible(format!("point {i} ({p}) is not on the line")));
        }
        if p.in_delta(n - 1) {
            return Err(Error::Inadmissible(format!("point {i} ({p}) has a zero coordinate")));
        }
    }
    if points.len() <= n {
        return Err(Error::Inadmissible(format!(
            "need more than {n} points, got {}",
            points.len()
        )));
    }
    let power = hadamard_power_span(line, n - 1)?;
    let hyperplane = power
        .variety
        .as_hyperplane()
        .cloned()
        .ok_or(Error::NotHyperplane {
            dim: power.variety.dim(),
        })?;
    let forms = points
        .points()
        .iter()
        .map(|p| point_star_hyperplane(p, &hyperplane))
        .collect::<Result<Vec<_>>>()?;
    let star = StarConfiguration::new(&forms, n, budget)?;
    let sq = squarefree_power(&points, n)?;
    let matches = star.points().is_some_and(|s| s.same_set(&sq.points));
    let report = classify(&forms, n, budget)?;
    Ok(LineConstruction {
        line_in_hyperplane: power.variety.contains(line),
        line: line.clone(),
        points,
        hyperplane,
        forms,
        star,
        squarefree_power: sq,
        power_matches_star: matches,
        report,
    })
}

/// Whether a rational normal curve passes through `q1, q2, q3` and all
/// coordinate points. The Cremona map sends such curves to lines, so this is
/// collinearity of the Cremona images.
pub fn rnc_through_coordinate_points(q1: &ProjPoint, q2: &ProjPoint, q3: &ProjPoint) -> Result<bool> {
    let n = q1.dim();
    for q in [q2, q3] {
        if q.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: q.dim() + 1,
            });
        }
    }
    Ok(collinear(&[cremona(q1)?, cremona(q2)?, cremona(q3)?]))
}

/// Codimension check for one triple of hyperplanes `H_i, H_j, H_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCheck {
    pub indices: [usize; 3],
    pub dual_rank: usize,
    pub duals_collinear: bool,
    /// `(alpha, beta)` with `H_k = alpha H_i + beta H_j` on the primitive
    /// integer coefficient vectors, when such a relation exists.
    #[serde(with = "serde_rational::vec_option")]
    pub relation: Option<Vec<Rational>>,
    pub rnc_through_coordinate_points: bool,
    pub agrees: bool,
}

/// Output of the hyperplane construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneReport {
    pub hyperplane: LinearForm,
    pub points: PointSet,
    pub forms: Vec<LinearForm>,
    pub triples: Vec<TripleCheck>,
    pub flagged_triples: Vec<[usize; 3]>,
    /// Every triple of duals is independent. Necessary, not sufficient, for
    /// the forms to define a star configuration.
    pub all_triples_independent: bool,
    pub generally_linear: bool,
    pub classification: ClassificationReport,
}

/// Forms `H_i = P_i * H` for points on `V(H)`, with the triple-wise
/// codimension check and its rational-normal-curve counterpart.
pub fn hyperplane_construction_report(
    h: &LinearForm,
    points: &PointSet,
    budget: &Budget,
) -> Result<HyperplaneReport> {
    let n = h.dim();
    if let Some(j) = h.coeffs().iter().position(Zero::is_zero) {
        return Err(Error::Inadmissible(format!(
            "hyperplane has zero coefficient at x{j} and contains a coordinate point"
        )));
    }
    for (i, p) in points.points().iter().enumerate() {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: p.dim() + 1,
            });
        }
        if !h.vanishes_at(p) {
            return Err(Error::Inadmissible(format!("point {i} ({p}) is not on V({h})")));
        }
        if p.first_zero().is_some() {
            return Err(Error::Inadmissible(format!("point {i} ({p}) has a zero coordinate")));
        }
    }
    let forms = points
        .points()
        .iter()
        .map(|p| point_star_hyperplane(p, h))
        .collect::<Result<Vec<_>>>()?;
    let rescaled = points
        .points()
        .iter()
        .map(|p| {
            ProjPoint::new(
                p.coords()
                    .iter()
                    .zip(h.coeffs())
                    .map(|(x, a)| x / a)
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let integer: Vec<Vec<Rational>> = forms
        .iter()
        .map(|f| f.integer_coeffs().into_iter().map(Rational::from_integer).collect())
        .collect();

    let mut triples = Vec::new();
    for t in (0..forms.len()).combinations(3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let duals = [dual_point(&forms[i]), dual_point(&forms[j]), dual_point(&forms[k])];
        let dual_rank = point_rank(&duals);
        let pair = RatMatrix::from_rows(n + 1, [&integer[i], &integer[j]])?.transpose();
        let relation = pair.solve(&integer[k]);
        let rnc = rnc_through_coordinate_points(&rescaled[i], &rescaled[j], &rescaled[k])?;
        triples.push(TripleCheck {
            indices: [i, j, k],
            dual_rank,
            duals_collinear: dual_rank <= 2,
            relation,
            rnc_through_coordinate_points: rnc,
            agrees: rnc == (dual_rank <= 2),
        });
    }
    let flagged: Vec<[usize; 3]> = triples
        .iter()
        .filter(|t| t.duals_collinear)
        .map(|t| t.indices)
        .collect();
    let classification = classify(&forms, n, budget)?;
    Ok(HyperplaneReport {
        hyperplane: h.clone(),
        points: points.clone(),
        all_triples_independent: flagged.is_empty(),
        generally_linear: classification.generally_linear,
        flagged_triples: flagged,
        triples,
        forms,
        classification,
    })
}
