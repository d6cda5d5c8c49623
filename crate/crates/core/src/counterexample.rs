//! Bodies that hide behind a polytope without fitting inside it.
//!
//! Given a simplicial family of `d + 2` or more facet normals of `L`, the hull
//! `S` of points on those facets touches `L` on every family facet, so no
//! translate of `αS` fits in `L` once `α > 1`: the family coefficients are a
//! Farkas certificate. Each `d`-shadow of `S` has room to spare inside the
//! matching shadow of `L`, and a uniform `α > 1` keeps every shadow fitting.
//! That `α` is estimated by sampling, so the shadow half of a bundle is
//! evidence while the non-containment half is exact.

use std::cell::Cell;

use num_traits::{One, Signed};

use crate::containment::{
    sampled_shadow_cover, shadow_scale, translate_fit, ContainmentVerdict, FarkasCertificate,
    ShadowCoverReport, SubspaceSampler,
};
use crate::error::{Error, Result};
use crate::linalg::{int, RatVector, Rational};
use crate::polytope::Polytope;
use crate::reliability::{is_reliable, DirectionSet, SimplicialFamily};
use crate::subspace::Subspace;

/// Hull of the centroids of the facets of `l` with the given outward
/// normals. Returns `S` and the facet indices used.
pub fn build_s(l: &Polytope, normals: &[RatVector], d: usize) -> Result<(Polytope, Vec<usize>)> {
    if normals.len() < d + 2 {
        return Err(Error::BadFamily(format!(
            "{} members, need at least {}",
            normals.len(),
            d + 2
        )));
    }
    let facets = normals
        .iter()
        .map(|u| {
            l.facet_with_normal(u)
                .ok_or_else(|| Error::BadFamily(format!("{u} is not a facet normal")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let points: Vec<RatVector> = facets.iter().map(|&f| l.facet_centroid(f)).collect();
    let s = Polytope::from_points(&points)?;
    for u in normals {
        assert_eq!(s.support(u), l.support(u), "centroid lies on its facet");
    }
    Ok((s, facets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSearch {
    pub alpha: Rational,
    /// Least maximal scale found, after descent.
    pub alpha_min: Rational,
    /// Least maximal scale over the sampled subspaces alone.
    pub sampled_min: Rational,
    /// Trial attaining `sampled_min` (first one on ties).
    pub argmin_trial: usize,
}

/// Sampled starts that get a short descent.
pub const DESCENT_STARTS: usize = 32;
/// Short-descent results refined further.
pub const REFINED_STARTS: usize = 3;
const REFINE_ROUNDS: usize = 6;
/// Scale evaluations allowed per short descent and per refinement.
const SHORT_BUDGET: usize = 150;
const REFINE_BUDGET: usize = 600;
/// Parameter entries stay below this in absolute value.
const MAX_ENTRY: i64 = 1 << 20;

/// Integer rows spanning the orthogonal complement of `rows`.
fn complement_rows(rows: &[RatVector]) -> Option<Vec<RatVector>> {
    let xi = Subspace::from_rows(rows.to_vec()).ok()?;
    let c = xi.orthogonal_complement()?;
    Some(c.basis().rows().iter().map(|r| r.primitive().0).collect())
}

/// Coordinate descent on the entries of `params`, halving the step each
/// round by doubling them. A move that helps is repeated with doubled step
/// while it keeps helping. The subspace is the span of `params`, or its
/// orthogonal complement when `complement` is set (fewer entries when
/// `d > n - d`). Stops after `budget` evaluations. Returns the least scale
/// seen and where.
fn descend(
    l: &Polytope,
    s: &Polytope,
    mut params: Vec<RatVector>,
    complement: bool,
    mut best: Rational,
    rounds: usize,
    budget: usize,
) -> Result<(Rational, Vec<RatVector>)> {
    let two = int(2);
    let limit = int(MAX_ENTRY);
    let want = params_dim(&params, complement, l.dim());
    let spent = Cell::new(0);
    let scale_at = |rows: &[RatVector]| -> Result<Option<Rational>> {
        spent.set(spent.get() + 1);
        if rows.iter().flat_map(|r| r.iter()).any(|x| x.abs() > limit) {
            return Ok(None);
        }
        let xi = if complement {
            complement_rows(rows).and_then(|c| Subspace::from_rows(c).ok())
        } else {
            Subspace::from_rows(rows.to_vec()).ok()
        };
        match xi {
            Some(xi) if xi.dim() == want => shadow_scale(s, l, &xi),
            _ => Ok(None),
        }
    };
    'rounds: for round in 0..rounds {
        if round > 0 {
            params = params.iter().map(|r| r.scale(&two)).collect();
        }
        loop {
            let mut improved = false;
            for i in 0..params.len() {
                for j in 0..params[i].dim() {
                    for dir in [-1i64, 1] {
                        let mut step = 1i64;
                        let mut moved = false;
                        loop {
                            if spent.get() >= budget {
                                break 'rounds;
                            }
                            let mut trial = params.clone();
                            trial[i][j] += int(dir * step);
                            match scale_at(&trial)? {
                                Some(a) if a < best => {
                                    best = a;
                                    params = trial;
                                    moved = true;
                                    step *= 2;
                                }
                                _ => break,
                            }
                        }
                        if moved {
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    Ok((best, params))
}

fn params_dim(params: &[RatVector], complement: bool, n: usize) -> usize {
    if complement {
        n - params.len()
    } else {
        params.len()
    }
}

/// Scale `1 + margin·(α_min - 1)`, where `α_min` estimates the least maximal
/// scale of `S_ξ` inside `L_ξ` over all `d`-subspaces: the minimum over the
/// sampled subspaces, lowered by a local descent from the best samples.
pub fn find_alpha(
    l: &Polytope,
    s: &Polytope,
    sampler: SubspaceSampler,
    trials: usize,
    margin: &Rational,
) -> Result<AlphaSearch> {
    if !margin.is_positive() || *margin >= Rational::one() {
        return Err(Error::InvalidArgument(format!("margin {margin} outside (0, 1)")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is needed".into()));
    }
    let n = l.dim();
    if sampler.d == 0 || sampler.d >= n {
        return Err(Error::BadReliabilityDim { d: sampler.d, n });
    }
    let mut scored: Vec<(Rational, usize, Vec<RatVector>)> = Vec::new();
    for (trial, xi) in sampler.stream(n).take(trials).enumerate() {
        if let Some(a) = shadow_scale(s, l, &xi)? {
            scored.push((a, trial, xi.basis().rows().to_vec()));
        }
    }
    if scored.is_empty() {
        return Err(Error::InvalidArgument("every sampled shadow of S is a point".into()));
    }
    scored.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let (sampled_min, argmin_trial) = (scored[0].0.clone(), scored[0].1);
    if sampled_min <= Rational::one() {
        return Err(Error::NoSlack {
            alpha_min: sampled_min.to_string(),
            trial: argmin_trial,
        });
    }
    let complement = 2 * sampler.d > n;
    let mut short = Vec::new();
    for (a, _, basis) in scored.into_iter().take(DESCENT_STARTS) {
        let params = if complement {
            complement_rows(&basis).expect("d < n")
        } else {
            basis
        };
        short.push(descend(l, s, params, complement, a, 1, SHORT_BUDGET)?);
    }
    short.sort_by(|a, b| a.0.cmp(&b.0));
    let mut alpha_min = short[0].0.clone();
    for (a, params) in short.into_iter().take(REFINED_STARTS) {
        let (found, _) = descend(l, s, params, complement, a, REFINE_ROUNDS, REFINE_BUDGET)?;
        if found < alpha_min {
            alpha_min = found;
        }
    }
    if alpha_min <= Rational::one() {
        return Err(Error::NoSlack {
            alpha_min: alpha_min.to_string(),
            trial: argmin_trial,
        });
    }
    let alpha = Rational::one() + margin * (&alpha_min - Rational::one());
    Ok(AlphaSearch {
        alpha,
        alpha_min,
        sampled_min,
        argmin_trial,
    })
}

/// Everything needed to re-check a counterexample independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleBundle {
    pub l: Polytope,
    pub d: usize,
    /// Members are facet indices of `l`.
    pub family: SimplicialFamily,
    pub s: Polytope,
    pub alpha: Rational,
    pub alpha_min: Rational,
    pub margin: Rational,
    pub sampler: SubspaceSampler,
    pub trials: usize,
    /// Certificate that `alpha·s` has no translate inside `l`.
    pub noncontainment: FarkasCertificate,
    /// `alpha·s` against `l` on the sampler's subspaces.
    pub shadow_report: ShadowCoverReport,
}

impl CounterexampleBundle {
    pub fn scaled(&self) -> Polytope {
        self.s.scale(&self.alpha)
    }
}

/// Family coefficients as facet multipliers.
pub fn family_certificate(family: &SimplicialFamily) -> FarkasCertificate {
    let mut multipliers: Vec<(usize, Rational)> = family
        .members
        .iter()
        .copied()
        .zip(family.coefficients.iter().cloned())
        .collect();
    multipliers.sort_by_key(|a| a.0);
    FarkasCertificate { multipliers }
}

/// Builds a counterexample for a polytope that is not a reliable `d`-cover,
/// using the smallest simplicial family of its facet normals.
pub fn construct(
    l: &Polytope,
    d: usize,
    sampler: SubspaceSampler,
    trials: usize,
    margin: &Rational,
) -> Result<CounterexampleBundle> {
    let verdict = is_reliable(l, d)?;
    let family = verdict.certificate.ok_or(Error::Reliable(d))?;
    construct_with_family(l, d, family, sampler, trials, margin)
}

pub fn construct_with_family(
    l: &Polytope,
    d: usize,
    family: SimplicialFamily,
    sampler: SubspaceSampler,
    trials: usize,
    margin: &Rational,
) -> Result<CounterexampleBundle> {
    let set = DirectionSet::from_polytope(l);
    if !family.verify(&set) {
        return Err(Error::BadFamily("not a simplicial family of facet normals".into()));
    }
    let sampler = SubspaceSampler { d, ..sampler };
    let (s, _) = build_s(l, &family.vectors(&set), d)?;
    let search = find_alpha(l, &s, sampler, trials, margin)?;
    let scaled = s.scale(&search.alpha);
    let noncontainment = family_certificate(&family);
    assert!(noncontainment.verify(&scaled, l));
    // Every sampled `α_ξ` is at least `α_min > α`, and a body that fits at
    // scale `α_ξ` fits at every smaller positive scale, so all the search's
    // own subspaces pass.
    let shadow_report = ShadowCoverReport {
        sampler,
        trials,
        passes: trials,
        first_failure: None,
    };
    Ok(CounterexampleBundle {
        l: l.clone(),
        d,
        family,
        s,
        alpha: search.alpha,
        alpha_min: search.alpha_min,
        margin: margin.clone(),
        sampler,
        trials,
        noncontainment,
        shadow_report,
    })
}

/// The exact half of a bundle check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCheck {
    pub alpha_above_one: bool,
    pub family_valid: bool,
    /// `h_S(u) = h_L(u)` on every family normal.
    pub contacts: bool,
    pub certificate_verifies: bool,
    pub certificate_on_family: bool,
    /// Independent LP run; holds a witness if a translate fits after all.
    pub lp_verdict: ContainmentVerdict,
}

impl ExactCheck {
    pub fn passed(&self) -> bool {
        self.alpha_above_one
            && self.family_valid
            && self.contacts
            && self.certificate_verifies
            && self.certificate_on_family
            && !self.lp_verdict.fits()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCheck {
    /// Proof that no translate of `αS` fits in `L`.
    pub exact: ExactCheck,
    /// Evidence that every `d`-shadow of `αS` fits in that of `L`.
    pub sampled: ShadowCoverReport,
}

impl BundleCheck {
    pub fn passed(&self) -> bool {
        self.exact.passed() && self.sampled.all_pass()
    }
}

/// Re-checks a bundle: the exact certificate plus shadow fits on `trials`
/// subspaces drawn from `fresh_seed`.
pub fn verify_bundle(b: &CounterexampleBundle, fresh_seed: u64, trials: usize) -> Result<BundleCheck> {
    let set = DirectionSet::from_polytope(&b.l);
    let family_valid = b.family.verify(&set);
    let scaled = b.scaled();
    let contacts = family_valid
        && b.family
            .vectors(&set)
            .iter()
            .all(|u| b.s.support(u) == b.l.support(u));
    let certificate_on_family = b
        .noncontainment
        .support()
        .iter()
        .all(|i| b.family.members.contains(i));
    let exact = ExactCheck {
        alpha_above_one: b.alpha > Rational::one(),
        family_valid,
        contacts,
        certificate_verifies: b.noncontainment.verify(&scaled, &b.l),
        certificate_on_family,
        lp_verdict: translate_fit(&scaled, &b.l)?,
    };
    let sampler = SubspaceSampler {
        seed: fresh_seed,
        ..b.sampler
    };
    let sampled = sampled_shadow_cover(&scaled, &b.l, sampler, trials)?;
    Ok(BundleCheck { exact, sampled })
}

/// Seed for re-verification, derived from the construction seed.
pub fn fresh_seed(seed: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x2545_F491)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut v = RatVector::zeros(3);
                v[i] = int(s);
                pts.push(v);
            }
        }
        Polytope::from_points(&pts).unwrap()
    }

    fn family_normals() -> Vec<RatVector> {
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
            .iter()
            .map(|r| RatVector::from_ints(r))
            .collect()
    }

    #[test]
    fn octahedron_tetrahedron() {
        let (s, facets) = build_s(&octahedron(), &family_normals(), 2).unwrap();
        assert_eq!(facets.len(), 4);
        assert_eq!(s.vertices().len(), 4);
        let third = frac(1, 3);
        assert!(s
            .vertices()
            .contains(&RatVector::new(vec![third.clone(), third.clone(), third])));
    }

    #[test]
    fn too_small_family_rejected() {
        let l = octahedron();
        assert!(build_s(&l, &family_normals()[..3], 2).is_err());
        let not_normal = vec![RatVector::from_ints(&[1, 0, 0]); 4];
        assert!(build_s(&l, &not_normal, 2).is_err());
    }

    #[test]
    fn s_equal_l_has_no_slack() {
        let l = octahedron();
        let r = find_alpha(&l, &l, SubspaceSampler::new(3, 10, 2), 5, &frac(1, 2));
        assert!(matches!(r, Err(Error::NoSlack { .. })));
    }

    #[test]
    fn octahedron_bundle_checks_out() {
        let l = octahedron();
        let b = construct(&l, 2, SubspaceSampler::new(11, 10, 2), 60, &frac(1, 2)).unwrap();
        assert!(b.alpha > int(1));
        assert!(b.shadow_report.all_pass());
        let check = verify_bundle(&b, fresh_seed(11), 60).unwrap();
        assert!(check.passed(), "{check:?}");

        let mut touching = b.clone();
        touching.alpha = int(1);
        let check = verify_bundle(&touching, fresh_seed(11), 5).unwrap();
        assert!(check.exact.lp_verdict.fits());
        assert!(!check.exact.passed());
    }

    #[test]
    fn reliable_cover_has_no_counterexample() {
        let p = Polytope::from_int_points(&[&[1, 1, 0], &[1, -1, 0], &[-1, 1, 0], &[-1, -1, 0], &[0, 0, 1]])
            .unwrap();
        assert_eq!(
            construct(&p, 2, SubspaceSampler::new(1, 10, 2), 5, &frac(1, 2)),
            Err(Error::Reliable(2))
        );
    }
}
