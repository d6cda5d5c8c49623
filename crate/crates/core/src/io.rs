//! JSON documents for polytopes, direction sets and counterexample bundles.
//!
//! Rationals travel as strings such as `"-3/4"` or `"7"`. Readers are strict
//! and bounded; writers always emit lowest terms. Parsing never builds a hull,
//! so a document can be checked cheaply before any geometry runs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::containment::{ContainmentVerdict, FarkasCertificate, ShadowCoverReport, ShadowFailure, SubspaceSampler};
use crate::counterexample::CounterexampleBundle;
use crate::error::{Error, Result};
use crate::linalg::{RatVector, Rational};
use crate::polytope::Polytope;
use crate::reliability::{DirectionSet, SimplicialFamily};

pub const MAX_DIM: usize = 6;
pub const MAX_POINTS: usize = 60;
pub const MAX_DIRECTIONS: usize = 64;
/// Longest accepted rational literal, sign and slash included.
pub const MAX_RATIONAL_LEN: usize = 256;
pub const MAX_DOC_BYTES: usize = 1 << 20;

/// Parses `-?digits(/digits)?` with a nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    if s.len() > MAX_RATIONAL_LEN {
        return Err(Error::TooLarge(format!("rational literal of {} bytes", s.len())));
    }
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let mut n = digits(num)?;
    if negative {
        n = -n;
    }
    let d = match den {
        Some(d) => digits(d)?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Lowest-terms text; integers carry no denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

fn format_vector(v: &RatVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_vector(row: &[String], dim: usize, what: &str) -> Result<RatVector> {
    if row.len() != dim {
        return Err(Error::Parse(format!(
            "{what} has {} coordinates, expected {dim}",
            row.len()
        )));
    }
    row.iter().map(|s| parse_rational(s)).collect()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    if dim > MAX_DIM {
        return Err(Error::TooLarge(format!("dim {dim} exceeds {MAX_DIM}")));
    }
    Ok(())
}

fn check_size(text: &str) -> Result<()> {
    if text.len() > MAX_DOC_BYTES {
        return Err(Error::TooLarge(format!("document of {} bytes", text.len())));
    }
    Ok(())
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope) -> PolytopeDoc {
        PolytopeDoc {
            dim: p.dim(),
            vertices: p.vertices().iter().map(format_vector).collect(),
        }
    }

    /// Validated points, in document order.
    pub fn points(&self) -> Result<Vec<RatVector>> {
        check_dim(self.dim)?;
        if self.vertices.is_empty() {
            return Err(Error::Empty);
        }
        if self.vertices.len() > MAX_POINTS {
            return Err(Error::TooLarge(format!(
                "{} vertices exceed {MAX_POINTS}",
                self.vertices.len()
            )));
        }
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, row)| parse_vector(row, self.dim, &format!("vertex {i}")))
            .collect()
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        Polytope::from_points(&self.points()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionsDoc {
    pub dim: usize,
    pub directions: Vec<Vec<String>>,
}

impl DirectionsDoc {
    pub fn from_set(set: &DirectionSet) -> DirectionsDoc {
        DirectionsDoc {
            dim: set.dim(),
            directions: set.directions().iter().map(format_vector).collect(),
        }
    }

    pub fn to_set(&self) -> Result<DirectionSet> {
        check_dim(self.dim)?;
        if self.directions.is_empty() {
            return Err(Error::Empty);
        }
        if self.directions.len() > MAX_DIRECTIONS {
            return Err(Error::TooLarge(format!(
                "{} directions exceed {MAX_DIRECTIONS}",
                self.directions.len()
            )));
        }
        let rows = self
            .directions
            .iter()
            .enumerate()
            .map(|(i, row)| parse_vector(row, self.dim, &format!("direction {i}")))
            .collect::<Result<Vec<_>>>()?;
        DirectionSet::new(self.dim, rows)
    }
}

/// Either kind of geometric input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputDoc {
    Polytope(PolytopeDoc),
    Directions(DirectionsDoc),
}

pub fn parse_polytope_doc(text: &str) -> Result<PolytopeDoc> {
    check_size(text)?;
    serde_json::from_str(text).map_err(json_err)
}

pub fn parse_directions_doc(text: &str) -> Result<DirectionsDoc> {
    check_size(text)?;
    serde_json::from_str(text).map_err(json_err)
}

pub fn parse_input_doc(text: &str) -> Result<InputDoc> {
    check_size(text)?;
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
    let doc = if value.get("directions").is_some() {
        InputDoc::Directions(serde_json::from_value(value).map_err(json_err)?)
    } else {
        InputDoc::Polytope(serde_json::from_value(value).map_err(json_err)?)
    };
    Ok(doc)
}

pub fn read_polytope(text: &str) -> Result<Polytope> {
    parse_polytope_doc(text)?.to_polytope()
}

pub fn write_polytope(p: &Polytope) -> String {
    to_pretty(&PolytopeDoc::from_polytope(p))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerDoc {
    pub seed: u64,
    pub entry_bound: u32,
    pub d: usize,
}

impl From<SubspaceSampler> for SamplerDoc {
    fn from(s: SubspaceSampler) -> Self {
        SamplerDoc {
            seed: s.seed,
            entry_bound: s.entry_bound,
            d: s.d,
        }
    }
}

impl SamplerDoc {
    pub fn to_sampler(&self) -> SubspaceSampler {
        SubspaceSampler {
            seed: self.seed,
            entry_bound: self.entry_bound,
            d: self.d,
        }
    }
}

/// Facet multiplier, keyed by the facet's outward normal so that it
/// survives a hull rebuild that orders facets differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierDoc {
    pub facet: usize,
    pub normal: Vec<String>,
    pub value: String,
}

fn multiplier_docs(l: &Polytope, pairs: &[(usize, Rational)]) -> Vec<MultiplierDoc> {
    pairs
        .iter()
        .map(|(i, y)| MultiplierDoc {
            facet: *i,
            normal: format_vector(l.facets()[*i].normal()),
            value: format_rational(y),
        })
        .collect()
}

fn resolve_multipliers(l: &Polytope, docs: &[MultiplierDoc]) -> Result<Vec<(usize, Rational)>> {
    if docs.len() > MAX_DIRECTIONS {
        return Err(Error::TooLarge(format!("{} multipliers", docs.len())));
    }
    docs.iter()
        .map(|m| {
            let u = parse_vector(&m.normal, l.dim(), "multiplier normal")?;
            let i = l
                .facet_with_normal(&u)
                .ok_or_else(|| Error::Parse(format!("{u} is not a facet normal")))?;
            Ok((i, parse_rational(&m.value)?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub fits: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<MultiplierDoc>>,
}

impl VerdictDoc {
    /// `l` is the containing body; certificate indices refer to its facets.
    pub fn from_verdict(v: &ContainmentVerdict, l: &Polytope) -> VerdictDoc {
        match v {
            ContainmentVerdict::Fits { witness } => VerdictDoc {
                fits: true,
                witness: Some(format_vector(witness)),
                certificate: None,
            },
            ContainmentVerdict::Blocked { certificate } => VerdictDoc {
                fits: false,
                witness: None,
                certificate: Some(multiplier_docs(l, &certificate.multipliers)),
            },
            ContainmentVerdict::HullMismatch => VerdictDoc {
                fits: false,
                witness: None,
                certificate: None,
            },
        }
    }

    pub fn to_verdict(&self, l: &Polytope) -> Result<ContainmentVerdict> {
        match (self.fits, &self.witness, &self.certificate) {
            (true, Some(w), None) => Ok(ContainmentVerdict::Fits {
                witness: parse_vector(w, l.dim(), "witness")?,
            }),
            (false, None, Some(c)) => Ok(ContainmentVerdict::Blocked {
                certificate: FarkasCertificate {
                    multipliers: resolve_multipliers(l, c)?,
                },
            }),
            (false, None, None) => Ok(ContainmentVerdict::HullMismatch),
            _ => Err(Error::Parse("inconsistent verdict".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureDoc {
    pub trial: usize,
    pub basis: Vec<Vec<String>>,
    /// Verdict in the subspace's own coordinates.
    pub verdict: VerdictDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowReportDoc {
    pub sampler: SamplerDoc,
    pub trials: usize,
    pub passes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureDoc>,
}

impl ShadowReportDoc {
    pub fn from_report(r: &ShadowCoverReport) -> ShadowReportDoc {
        ShadowReportDoc {
            sampler: r.sampler.into(),
            trials: r.trials,
            passes: r.passes,
            first_failure: r.first_failure.as_ref().map(|f| FailureDoc {
                trial: f.trial,
                basis: f.basis.iter().map(format_vector).collect(),
                verdict: failure_verdict_doc(&f.verdict),
            }),
        }
    }

    pub fn to_report(&self, n: usize) -> Result<ShadowCoverReport> {
        if self.passes > self.trials {
            return Err(Error::Parse("more passes than trials".into()));
        }
        let first_failure = match &self.first_failure {
            None => None,
            Some(f) => {
                if f.basis.len() > MAX_DIM {
                    return Err(Error::TooLarge(format!("{} basis rows", f.basis.len())));
                }
                let basis = f
                    .basis
                    .iter()
                    .map(|row| parse_vector(row, n, "failure basis row"))
                    .collect::<Result<Vec<_>>>()?;
                Some(ShadowFailure {
                    trial: f.trial,
                    basis,
                    verdict: failure_verdict(&f.verdict)?,
                })
            }
        };
        Ok(ShadowCoverReport {
            sampler: self.sampler.to_sampler(),
            trials: self.trials,
            passes: self.passes,
            first_failure,
        })
    }
}

// Shadow failures refer to facets of a shadow that is not stored, so their
// certificates keep raw indices.
fn failure_verdict_doc(v: &ContainmentVerdict) -> VerdictDoc {
    match v {
        ContainmentVerdict::Fits { witness } => VerdictDoc {
            fits: true,
            witness: Some(format_vector(witness)),
            certificate: None,
        },
        ContainmentVerdict::Blocked { certificate } => VerdictDoc {
            fits: false,
            witness: None,
            certificate: Some(
                certificate
                    .multipliers
                    .iter()
                    .map(|(i, y)| MultiplierDoc {
                        facet: *i,
                        normal: Vec::new(),
                        value: format_rational(y),
                    })
                    .collect(),
            ),
        },
        ContainmentVerdict::HullMismatch => VerdictDoc {
            fits: false,
            witness: None,
            certificate: None,
        },
    }
}

fn failure_verdict(doc: &VerdictDoc) -> Result<ContainmentVerdict> {
    match (doc.fits, &doc.witness, &doc.certificate) {
        (true, Some(w), None) => Ok(ContainmentVerdict::Fits {
            witness: w.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
        }),
        (false, None, Some(c)) => Ok(ContainmentVerdict::Blocked {
            certificate: FarkasCertificate {
                multipliers: c
                    .iter()
                    .map(|m| Ok((m.facet, parse_rational(&m.value)?)))
                    .collect::<Result<_>>()?,
            },
        }),
        (false, None, None) => Ok(ContainmentVerdict::HullMismatch),
        _ => Err(Error::Parse("inconsistent verdict".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub l: PolytopeDoc,
    pub d: usize,
    /// Family members with their simplicial coefficients.
    pub family: Vec<MultiplierDoc>,
    pub s: PolytopeDoc,
    pub alpha: String,
    pub alpha_min: String,
    pub margin: String,
    pub sampler: SamplerDoc,
    pub trials: usize,
    pub noncontainment: Vec<MultiplierDoc>,
    pub shadow_report: ShadowReportDoc,
}

impl BundleDoc {
    pub fn from_bundle(b: &CounterexampleBundle) -> BundleDoc {
        let family: Vec<(usize, Rational)> = b
            .family
            .members
            .iter()
            .copied()
            .zip(b.family.coefficients.iter().cloned())
            .collect();
        BundleDoc {
            l: PolytopeDoc::from_polytope(&b.l),
            d: b.d,
            family: multiplier_docs(&b.l, &family),
            s: PolytopeDoc::from_polytope(&b.s),
            alpha: format_rational(&b.alpha),
            alpha_min: format_rational(&b.alpha_min),
            margin: format_rational(&b.margin),
            sampler: b.sampler.into(),
            trials: b.trials,
            noncontainment: multiplier_docs(&b.l, &b.noncontainment.multipliers),
            shadow_report: ShadowReportDoc::from_report(&b.shadow_report),
        }
    }

    /// Rebuilds both hulls. Facet references are resolved by normal, so the
    /// stored indices are informational. Nothing is verified here.
    pub fn to_bundle(&self) -> Result<CounterexampleBundle> {
        let l = self.l.to_polytope()?;
        let s = self.s.to_polytope()?;
        if s.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: s.dim(),
            });
        }
        let (members, coefficients) = resolve_multipliers(&l, &self.family)?.into_iter().unzip();
        let margin = parse_rational(&self.margin)?;
        if !margin.is_positive() {
            return Err(Error::Parse("margin must be positive".into()));
        }
        Ok(CounterexampleBundle {
            d: self.d,
            family: SimplicialFamily { members, coefficients },
            alpha: parse_rational(&self.alpha)?,
            alpha_min: parse_rational(&self.alpha_min)?,
            margin,
            sampler: self.sampler.to_sampler(),
            trials: self.trials,
            noncontainment: FarkasCertificate {
                multipliers: resolve_multipliers(&l, &self.noncontainment)?,
            },
            shadow_report: self.shadow_report.to_report(l.dim())?,
            s,
            l,
        })
    }
}

pub fn parse_bundle_doc(text: &str) -> Result<BundleDoc> {
    check_size(text)?;
    serde_json::from_str(text).map_err(json_err)
}

pub fn read_bundle(text: &str) -> Result<CounterexampleBundle> {
    parse_bundle_doc(text)?.to_bundle()
}

pub fn write_bundle(b: &CounterexampleBundle) -> String {
    to_pretty(&BundleDoc::from_bundle(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
        for bad in ["", "-", "+1", "1/", "/2", "1/0", "1.5", " 1", "1/-2", "--1", "1e3", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_rational(&"9".repeat(300)), Err(Error::TooLarge(_))));
        assert_eq!(format_rational(&frac(6, -8)), "-3/4");
        assert_eq!(format_rational(&frac(4, 2)), "2");
    }

    #[test]
    fn polytope_round_trip() {
        let p = Polytope::from_int_points(&[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]).unwrap();
        let text = write_polytope(&p);
        assert_eq!(read_polytope(&text).unwrap(), p);
        let doc = parse_polytope_doc(r#"{"dim": 2, "vertices": [["2/4", "0"], ["1", "0"], ["0", "1"]]}"#)
            .unwrap();
        assert_eq!(doc.points().unwrap()[0], RatVector::new(vec![frac(1, 2), int(0)]));
    }

    #[test]
    fn polytope_doc_rejections() {
        for text in [
            r#"{"dim": 2, "vertices": [["1", "0"], ["0"]]}"#,
            r#"{"dim": 2, "vertices": [["1/0", "0"]]}"#,
            r#"{"dim": 2, "vertices": []}"#,
            r#"{"dim": 0, "vertices": [[]]}"#,
            r#"{"dim": 2, "vertices": [[1, 0]]}"#,
            r#"{"dim": 2, "vertices": [["1", "0"]], "extra": 1}"#,
            r#"[1, 2]"#,
        ] {
            assert!(parse_polytope_doc(text).and_then(|d| d.points()).is_err(), "{text}");
        }
        let big = format!(r#"{{"dim": 7, "vertices": [[{}]]}}"#, ["\"0\""; 7].join(","));
        assert!(matches!(
            parse_polytope_doc(&big).and_then(|d| d.points()),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn input_kind_detection() {
        let d = parse_input_doc(r#"{"dim": 2, "directions": [["1","0"],["0","1"],["-1","-1"]]}"#).unwrap();
        assert!(matches!(d, InputDoc::Directions(_)));
        let p = parse_input_doc(r#"{"dim": 1, "vertices": [["0"],["1"]]}"#).unwrap();
        assert!(matches!(p, InputDoc::Polytope(_)));
        if let InputDoc::Directions(doc) = d {
            assert_eq!(doc.to_set().unwrap().len(), 3);
            assert_eq!(DirectionsDoc::from_set(&doc.to_set().unwrap()), doc);
        }
    }
}
