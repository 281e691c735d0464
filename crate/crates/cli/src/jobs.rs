use hadamard_star::classify::{classify, construct_from_line, hyperplane_construction_report, sample_line_points};
use hadamard_star::hadamard::{hadamard_power_span, multiset_power, squarefree_power, PointSet};
use hadamard_star::projective::{LinearForm, LinearVariety, ProjPoint};
use hadamard_star::starconfig::{is_generally_linear, StarConfiguration};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{plot, Job, JobContext, JobError};

fn parse<T: DeserializeOwned>(payload: Value) -> Result<T, JobError> {
    serde_json::from_value(payload).map_err(JobError::from)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Ambient dimension shared by all vectors, checked against `declared`.
fn common_dim(dims: impl IntoIterator<Item = usize>, declared: Option<usize>, what: &str) -> Result<usize, JobError> {
    let mut dims = dims.into_iter();
    let first = match (dims.next(), declared) {
        (Some(d), _) => d,
        (None, Some(n)) => return Ok(n),
        (None, None) => return Err(JobError::Malformed(format!("no {what} given"))),
    };
    if dims.any(|d| d != first) {
        return Err(JobError::Malformed(format!("{what} have different lengths")));
    }
    if let Some(n) = declared {
        if n != first {
            return Err(JobError::Malformed(format!(
                "n = {n} but {what} have {} entries",
                first + 1
            )));
        }
    }
    Ok(first)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyPayload {
    forms: Vec<LinearForm>,
    n: Option<usize>,
}

pub struct ClassifyJob;

impl Job for ClassifyJob {
    fn name(&self) -> &'static str {
        "classify"
    }

    fn summary(&self) -> &'static str {
        "decide whether a set of forms is a (strong) Hadamard set and defines a Hadamard star configuration"
    }

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let p: ClassifyPayload = parse(payload)?;
        let n = common_dim(p.forms.iter().map(LinearForm::dim), p.n, "forms")?;
        Ok(to_json(&classify(&p.forms, n, &ctx.budget)?))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinePayload {
    /// Spanning points of the line.
    line: Vec<ProjPoint>,
    points: Option<Vec<ProjPoint>>,
    /// Number of points to sample when `points` is absent.
    m: Option<usize>,
}

pub struct ConstructLineJob;

impl Job for ConstructLineJob {
    fn name(&self) -> &'static str {
        "construct-line"
    }

    fn summary(&self) -> &'static str {
        "square-free Hadamard power of points on a line, its defining forms and their classification"
    }

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let p: LinePayload = parse(payload)?;
        let all = p.line.iter().chain(p.points.iter().flatten());
        common_dim(all.map(ProjPoint::dim), None, "points")?;
        let line = LinearVariety::span_of(&p.line)?;
        let points = match (p.points, p.m) {
            (Some(pts), _) => Some(PointSet::new(pts)),
            (None, Some(m)) => Some(sample_line_points(&line, m)?),
            (None, None) => None,
        };
        Ok(to_json(&construct_from_line(&line, points.as_ref(), &ctx.budget)?))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplanePayload {
    hyperplane: LinearForm,
    points: Vec<ProjPoint>,
}

pub struct ConstructHyperplaneJob;

impl Job for ConstructHyperplaneJob {
    fn name(&self) -> &'static str {
        "construct-hyperplane"
    }

    fn summary(&self) -> &'static str {
        "forms P_i * H for points on a hyperplane, with triple and rational normal curve checks"
    }

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let p: HyperplanePayload = parse(payload)?;
        common_dim(p.points.iter().map(ProjPoint::dim), Some(p.hyperplane.dim()), "points")?;
        let points = PointSet::new(p.points);
        Ok(to_json(&hyperplane_construction_report(&p.hyperplane, &points, &ctx.budget)?))
    }
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerPayload {
    points: Option<Vec<ProjPoint>>,
    /// Spanning points of a linear variety whose power span is wanted.
    variety: Option<Vec<ProjPoint>>,
    r: usize,
    #[serde(default = "default_true")]
    squarefree: bool,
}

pub struct PowerJob;

impl Job for PowerJob {
    fn name(&self) -> &'static str {
        "power"
    }

    fn summary(&self) -> &'static str {
        "Hadamard powers of finite point sets (square-free or not) or power spans of linear varieties"
    }

    fn run(&self, payload: Value, _ctx: &JobContext) -> Result<Value, JobError> {
        let p: PowerPayload = parse(payload)?;
        match (p.points, p.variety) {
            (Some(points), None) => {
                common_dim(points.iter().map(ProjPoint::dim), None, "points")?;
                let set = PointSet::new(points);
                let out = if p.squarefree {
                    squarefree_power(&set, p.r)?
                } else {
                    multiset_power(&set, p.r)?
                };
                Ok(json!({
                    "r": p.r,
                    "squarefree": p.squarefree,
                    "count": out.points.len(),
                    "points": out.points,
                    "undefined": out.undefined,
                }))
            }
            (None, Some(span)) => {
                common_dim(span.iter().map(ProjPoint::dim), None, "points")?;
                let v = LinearVariety::span_of(&span)?;
                let out = hadamard_power_span(&v, p.r)?;
                Ok(json!({
                    "r": p.r,
                    "variety": out.variety,
                    "dim": out.variety.dim(),
                    "expected_dim": out.expected_dim,
                    "has_expected_dim": out.has_expected_dim,
                    "contains_base": out.variety.contains(&v),
                }))
            }
            _ => Err(JobError::Malformed(
                "give exactly one of \"points\" or \"variety\"".into(),
            )),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyStarPayload {
    points: Vec<ProjPoint>,
    forms: Vec<LinearForm>,
    n: Option<usize>,
}

pub struct VerifyStarJob;

impl Job for VerifyStarJob {
    fn name(&self) -> &'static str {
        "verify-star"
    }

    fn summary(&self) -> &'static str {
        "check that a point set is the codimension-n star configuration of the given forms"
    }

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let p: VerifyStarPayload = parse(payload)?;
        let n = common_dim(p.forms.iter().map(LinearForm::dim), p.n, "forms")?;
        common_dim(p.points.iter().map(ProjPoint::dim), Some(n), "points")?;
        let points = PointSet::new(p.points);
        let gl = is_generally_linear(&p.forms, n, &ctx.budget)?;
        let star = if gl.generally_linear {
            Some(StarConfiguration::new(&p.forms, n, &ctx.budget)?)
        } else {
            None
        };
        let computed = star.as_ref().and_then(StarConfiguration::points);
        let matches = computed.as_ref().is_some_and(|c| c.same_set(&points));
        Ok(json!({
            "n": n,
            "generally_linear": gl.generally_linear,
            "generally_linear_failing_subset": gl.failing_subset,
            "is_star_configuration": matches,
            "given_count": points.len(),
            "expected_count": u64::try_from(hadamard_star::binomial(p.forms.len(), n)).ok(),
            "star": star,
        }))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlotPayload {
    forms: Vec<LinearForm>,
}

pub struct PlotDataJob;

impl Job for PlotDataJob {
    fn name(&self) -> &'static str {
        "plot-data"
    }

    fn summary(&self) -> &'static str {
        "affine line segments and points of a star configuration of points in P^2"
    }

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let p: PlotPayload = parse(payload)?;
        if p.forms.is_empty() {
            return Err(hadamard_star::Error::EmptyVariety.into());
        }
        let n = common_dim(p.forms.iter().map(LinearForm::dim), None, "forms")?;
        if n != 2 {
            return Err(hadamard_star::Error::BadDim { expected: 2, found: n }.into());
        }
        let star = StarConfiguration::new(&p.forms, 2, &ctx.budget)?;
        Ok(to_json(&plot::plot_data(&star)?))
    }
}
