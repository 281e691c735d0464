//! Generally linear form sets and the star configurations they define.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::arith::RatMatrix;
use crate::error::{Error, Result};
use crate::hadamard::PointSet;
use crate::projective::{LinearForm, LinearVariety};
use crate::{binomial, Budget};

/// Outcome of the generally-linear check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralLinearity {
    pub generally_linear: bool,
    /// First dependent `(n+1)`-subset in lexicographic order (0-based).
    /// `None` when the check fails only because there are too few forms.
    pub failing_subset: Option<Vec<usize>>,
}

fn check_forms(forms: &[LinearForm], n: usize) -> Result<()> {
    for f in forms {
        if f.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: f.dim() + 1,
            });
        }
    }
    Ok(())
}

/// `r >= n + 1` and every `n + 1` of the forms are linearly independent.
pub fn is_generally_linear(
    forms: &[LinearForm],
    n: usize,
    budget: &Budget,
) -> Result<GeneralLinearity> {
    check_forms(forms, n)?;
    if forms.len() < n + 1 {
        return Ok(GeneralLinearity {
            generally_linear: false,
            failing_subset: None,
        });
    }
    budget.check_generally_linear(binomial(forms.len(), n + 1))?;
    let failing = (0..forms.len()).combinations(n + 1).find(|subset| {
        let m = RatMatrix::from_rows(n + 1, subset.iter().map(|&i| forms[i].coeffs()))
            .expect("forms share an ambient dimension");
        m.rank() < n + 1
    });
    Ok(GeneralLinearity {
        generally_linear: failing.is_none(),
        failing_subset: failing,
    })
}

/// The union of the common zero loci `V(L_i : i in S)` over all
/// `c`-subsets `S` of the forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarConfiguration {
    ambient_dim: usize,
    codim: usize,
    forms: Vec<LinearForm>,
    /// Keyed by 0-based index subsets, in lexicographic order.
    components: BTreeMap<Vec<usize>, LinearVariety>,
}

impl StarConfiguration {
    /// Builds `X_c(forms)`, refusing form sets that are not generally linear.
    ///
    /// For `c = n` every component point is additionally checked to lie on
    /// exactly `n` of the hyperplanes.
    pub fn new(forms: &[LinearForm], c: usize, budget: &Budget) -> Result<Self> {
        let n = forms.first().map(LinearForm::dim).ok_or(Error::NotGenerallyLinear {
            subset: vec![],
            reason: "no forms given".into(),
        })?;
        if c < 1 || c > n {
            return Err(Error::BadCodim { c, n });
        }
        let gl = is_generally_linear(forms, n, budget)?;
        if !gl.generally_linear {
            let reason = match gl.failing_subset {
                Some(_) => format!("{} forms are linearly dependent", n + 1),
                None => format!("{} forms given, need at least {}", forms.len(), n + 1),
            };
            return Err(Error::NotGenerallyLinear {
                subset: gl.failing_subset.unwrap_or_default(),
                reason,
            });
        }
        let star = Self::raw(forms, c)?;
        if c == n {
            for (subset, comp) in &star.components {
                let p = comp.as_point().expect("codimension n components are points");
                let incident: Vec<usize> = forms
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.vanishes_at(p))
                    .map(|(i, _)| i)
                    .collect();
                if incident.len() != n {
                    return Err(Error::NotGenerallyLinear {
                        subset: incident,
                        reason: format!(
                            "point {p} of component {subset:?} lies on more than {n} hyperplanes"
                        ),
                    });
                }
            }
        }
        Ok(star)
    }

    /// Computes the components without requiring general linearity. Fails
    /// only if some component is empty or a form has the wrong dimension.
    pub fn raw(forms: &[LinearForm], c: usize) -> Result<Self> {
        let n = forms.first().map(LinearForm::dim).ok_or(Error::EmptyVariety)?;
        check_forms(forms, n)?;
        if c < 1 || c > n {
            return Err(Error::BadCodim { c, n });
        }
        let mut components = BTreeMap::new();
        for subset in (0..forms.len()).combinations(c) {
            let chosen: Vec<LinearForm> = subset.iter().map(|&i| forms[i].clone()).collect();
            let comp = LinearVariety::from_forms(n, &chosen)?;
            components.insert(subset, comp);
        }
        Ok(Self {
            ambient_dim: n,
            codim: c,
            forms: forms.to_vec(),
            components,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, LinearVariety> {
        &self.components
    }

    /// Component points when every component is zero-dimensional.
    pub fn points(&self) -> Option<PointSet> {
        self.components
            .values()
            .map(|c| c.as_point().cloned())
            .collect::<Option<Vec<_>>>()
            .map(PointSet::new)
    }
}

/// Formats a 0-based subset as the 1-based key `"{1,3,4}"`.
pub fn subset_key(subset: &[usize]) -> String {
    format!("{{{}}}", subset.iter().map(|i| (i + 1).to_string()).join(","))
}

impl Serialize for StarConfiguration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "snake_case")]
        enum Component<'a> {
            Point(&'a crate::projective::ProjPoint),
            Variety(&'a LinearVariety),
        }

        struct Components<'a>(&'a BTreeMap<Vec<usize>, LinearVariety>);

        impl Serialize for Components<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    let c = match v.as_point() {
                        Some(p) => Component::Point(p),
                        None => Component::Variety(v),
                    };
                    map.serialize_entry(&subset_key(k), &c)?;
                }
                map.end()
            }
        }

        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("ambient_dim", &self.ambient_dim)?;
        map.serialize_entry("codim", &self.codim)?;
        map.serialize_entry("forms", &self.forms)?;
        map.serialize_entry("components", &Components(&self.components))?;
        map.end()
    }
}

/// Whether `x` is exactly the point star configuration `X_n(forms)`.
/// Form sets that are not generally linear give `false`.
pub fn is_star_configuration_of_points(
    x: &PointSet,
    forms: &[LinearForm],
    n: usize,
    budget: &Budget,
) -> Result<bool> {
    check_forms(forms, n)?;
    if forms.is_empty() || n == 0 {
        return Ok(false);
    }
    match StarConfiguration::new(forms, n, budget) {
        Ok(star) => Ok(star.points().is_some_and(|pts| pts.same_set(x))),
        Err(Error::NotGenerallyLinear { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}
