//! Translative containment, maximal scaling, and shadow containment.
//!
//! All verdicts here are exact except [`sampled_shadow_cover`], which checks
//! finitely many random subspaces and so only ever produces evidence.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hull::{full_dim_facets, RawFacet};
use crate::linalg::{int, rank_of, RatMatrix, RatVector, Rational};
use crate::lp::{solve_lp, LpOutcome, LpProblem};
use crate::polytope::{direct_sum_all, project, Polytope};
use crate::subspace::{is_direct_sum, Subspace};

/// Nonnegative multipliers on facets `(a_i, b_i)` of `L` proving that no
/// translate of `K` fits: `Σ λ_i a_i = 0` and `Σ λ_i (b_i - h_K(a_i)) < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<(usize, Rational)>,
}

impl FarkasCertificate {
    pub fn verify(&self, k: &Polytope, l: &Polytope) -> bool {
        if self.multipliers.is_empty() || k.dim() != l.dim() {
            return false;
        }
        let mut combo = RatVector::zeros(l.dim());
        let mut slack = Rational::zero();
        for (idx, lambda) in &self.multipliers {
            let Some(f) = l.facets().get(*idx) else {
                return false;
            };
            if !lambda.is_positive() {
                return false;
            }
            combo = &combo + &f.normal().scale(lambda);
            slack += lambda * (f.offset() - k.support(f.normal()));
        }
        combo.is_zero() && slack.is_negative()
    }

    /// Facet indices carrying a multiplier, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.multipliers.iter().map(|(i, _)| *i).collect();
        s.sort_unstable();
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContainmentVerdict {
    /// `K + witness ⊆ L`.
    Fits { witness: RatVector },
    Blocked { certificate: FarkasCertificate },
    /// `L` is lower-dimensional and the direction space of `K`'s affine hull
    /// is not contained in that of `L`, so no translate can fit.
    HullMismatch,
}

impl ContainmentVerdict {
    pub fn fits(&self) -> bool {
        matches!(self, ContainmentVerdict::Fits { .. })
    }

    pub fn witness(&self) -> Option<&RatVector> {
        match self {
            ContainmentVerdict::Fits { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&FarkasCertificate> {
        match self {
            ContainmentVerdict::Blocked { certificate } => Some(certificate),
            _ => None,
        }
    }

    /// Re-checks the verdict by substitution.
    pub fn verify(&self, k: &Polytope, l: &Polytope) -> bool {
        match self {
            ContainmentVerdict::Fits { witness } => {
                witness.dim() == k.dim()
                    && k.vertices().iter().all(|x| l.contains_point(&(x + witness)))
            }
            ContainmentVerdict::Blocked { certificate } => certificate.verify(k, l),
            ContainmentVerdict::HullMismatch => !directions_contained(k, l),
        }
    }
}

fn directions_contained(k: &Polytope, l: &Polytope) -> bool {
    let lk = &l.affine_hull().directions;
    let mut rows = lk.clone();
    rows.extend(k.affine_hull().directions.iter().cloned());
    rank_of(&rows) == lk.len()
}

fn check_dims(k: &Polytope, l: &Polytope) -> Result<()> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: k.dim(),
        });
    }
    Ok(())
}

/// Moves `v` along the orthogonal complement of `L`'s direction space so that
/// `base + v` lands on `L`'s affine hull. Facet constraints of `L` are
/// unaffected because its normals lie in that direction space.
fn onto_hull(l: &Polytope, base: &RatVector, v: &RatVector) -> RatVector {
    let hull = l.affine_hull();
    let off = &(base + v) - &hull.origin;
    let inside = match l.direction_space() {
        Some(s) => s.project_point(&off),
        None => RatVector::zeros(l.dim()),
    };
    &(v - &off) + &inside
}

/// Whether some translate `K + v` lies in `L`.
pub fn translate_fit(k: &Polytope, l: &Polytope) -> Result<ContainmentVerdict> {
    check_dims(k, l)?;
    if !directions_contained(k, l) {
        return Ok(ContainmentVerdict::HullMismatch);
    }
    let n = l.dim();
    let mut lp = LpProblem::new(n);
    for f in l.facets() {
        lp.add_constraint(f.normal().clone(), f.offset() - k.support(f.normal()));
    }
    let verdict = match solve_lp(&lp) {
        LpOutcome::Optimal { point, .. } => ContainmentVerdict::Fits {
            witness: onto_hull(l, &k.vertices()[0], &point),
        },
        LpOutcome::Infeasible(cert) => ContainmentVerdict::Blocked {
            certificate: FarkasCertificate {
                multipliers: cert
                    .constraint_multipliers
                    .into_iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_zero())
                    .collect(),
            },
        },
        LpOutcome::Unbounded { .. } => unreachable!("zero objective"),
    };
    debug_assert!(verdict.verify(k, l));
    Ok(verdict)
}

/// Largest `α >= 0` such that `αK + v ⊆ L` for some `v`, with such a `v`.
pub fn max_scale(k: &Polytope, l: &Polytope) -> Result<(Rational, RatVector)> {
    check_dims(k, l)?;
    let n = l.dim();
    if !directions_contained(k, l) {
        return Ok((Rational::zero(), l.vertices()[0].clone()));
    }
    // variables (α, v)
    let mut obj = RatVector::zeros(n + 1);
    obj[0] = int(1);
    let mut lp = LpProblem::new(n + 1).maximize(obj);
    lp.set_nonneg(0);
    for f in l.facets() {
        let mut a = vec![k.support(f.normal())];
        a.extend(f.normal().iter().cloned());
        lp.add_constraint(RatVector::new(a), f.offset().clone());
    }
    match solve_lp(&lp) {
        LpOutcome::Optimal { point, value } => {
            let v = RatVector::new(point.entries()[1..].to_vec());
            let base = k.vertices()[0].scale(&value);
            Ok((value.clone(), onto_hull(l, &base, &v)))
        }
        LpOutcome::Unbounded { .. } => Err(Error::Unbounded),
        LpOutcome::Infeasible(_) => unreachable!("α = 0 with v on L is feasible"),
    }
}

/// Whether `K_ξ + w ⊆ L_ξ` for some `w`. The verdict is stated for the
/// shadows in `ξ`-coordinates; certificate indices refer to facets of
/// `project(L, ξ)`.
pub fn shadow_fit(k: &Polytope, l: &Polytope, xi: &Subspace) -> Result<ContainmentVerdict> {
    check_dims(k, l)?;
    translate_fit(&project(k, xi)?, &project(l, xi)?)
}

/// Both shadows in the coordinates `Bx` of [`Subspace::dual_coordinates`].
/// Fit verdicts and maximal scales agree with those of [`project`].
pub fn shadows_dual(k: &Polytope, l: &Polytope, xi: &Subspace) -> Result<(Polytope, Polytope)> {
    check_dims(k, l)?;
    let image = |p: &Polytope| {
        let pts: Vec<RatVector> = p.vertices().iter().map(|v| xi.dual_coordinates(v)).collect();
        Polytope::from_points(&pts)
    };
    Ok((image(k)?, image(l)?))
}

fn point_support(points: &[RatVector], u: &RatVector) -> Rational {
    points
        .iter()
        .map(|p| u.dot(p))
        .max()
        .expect("nonempty point set")
}

/// Dual-coordinate images of `K`'s vertices and the facets of the hull of
/// `L`'s, when that hull is full-dimensional. `K` needs no hull since only
/// its support function enters the containment LP.
fn dual_images(k: &Polytope, l: &Polytope, xi: &Subspace) -> Result<Option<(Vec<RatVector>, Vec<RawFacet>)>> {
    check_dims(k, l)?;
    let mut lpts: Vec<RatVector> = l.vertices().iter().map(|v| xi.dual_coordinates(v)).collect();
    lpts.sort();
    lpts.dedup();
    let diffs: Vec<RatVector> = lpts[1..].iter().map(|p| p - &lpts[0]).collect();
    if rank_of(&diffs) < xi.dim() {
        return Ok(None);
    }
    let kpts = k.vertices().iter().map(|v| xi.dual_coordinates(v)).collect();
    Ok(Some((kpts, full_dim_facets(&lpts))))
}

/// Whether the shadows of `K` and `L` on `ξ` admit a translate fit; same
/// verdict as [`shadow_fit`].
pub fn shadow_fits(k: &Polytope, l: &Polytope, xi: &Subspace) -> Result<bool> {
    let Some((kpts, facets)) = dual_images(k, l, xi)? else {
        let (ks, ls) = shadows_dual(k, l, xi)?;
        return Ok(translate_fit(&ks, &ls)?.fits());
    };
    let mut lp = LpProblem::new(xi.dim());
    for f in facets {
        let rhs = &f.offset - point_support(&kpts, &f.normal);
        lp.add_constraint(f.normal, rhs);
    }
    Ok(solve_lp(&lp).is_optimal())
}

/// Maximal scale of `K_ξ` inside `L_ξ`, as [`max_scale`] on the shadows;
/// `None` when unbounded (`K_ξ` a single point).
pub fn shadow_scale(k: &Polytope, l: &Polytope, xi: &Subspace) -> Result<Option<Rational>> {
    let Some((kpts, facets)) = dual_images(k, l, xi)? else {
        let (ks, ls) = shadows_dual(k, l, xi)?;
        return match max_scale(&ks, &ls) {
            Ok((a, _)) => Ok(Some(a)),
            Err(Error::Unbounded) => Ok(None),
            Err(e) => Err(e),
        };
    };
    let d = xi.dim();
    let mut obj = RatVector::zeros(d + 1);
    obj[0] = int(1);
    let mut lp = LpProblem::new(d + 1).maximize(obj);
    lp.set_nonneg(0);
    for f in facets {
        let mut a = vec![point_support(&kpts, &f.normal)];
        a.extend(f.normal.iter().cloned());
        lp.add_constraint(RatVector::new(a), f.offset);
    }
    match solve_lp(&lp) {
        LpOutcome::Optimal { value, .. } => Ok(Some(value)),
        LpOutcome::Unbounded { .. } => Ok(None),
        LpOutcome::Infeasible(_) => unreachable!("α = 0 with v on L is feasible"),
    }
}

/// Seeded stream of random `d`-dimensional subspaces with integer bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceSampler {
    pub seed: u64,
    pub entry_bound: u32,
    pub d: usize,
}

impl SubspaceSampler {
    pub fn new(seed: u64, entry_bound: u32, d: usize) -> Self {
        SubspaceSampler {
            seed,
            entry_bound,
            d,
        }
    }

    /// Subspaces of `R^n`; full rank bases only, so the stream never ends.
    pub fn stream(&self, n: usize) -> SubspaceStream {
        assert!(self.d >= 1 && self.d <= n && self.entry_bound >= 1);
        SubspaceStream {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            bound: self.entry_bound as i64,
            d: self.d,
            n,
        }
    }
}

pub struct SubspaceStream {
    rng: ChaCha8Rng,
    bound: i64,
    d: usize,
    n: usize,
}

impl Iterator for SubspaceStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let rows: Vec<RatVector> = (0..self.d)
                .map(|_| {
                    (0..self.n)
                        .map(|_| int(self.rng.gen_range(-self.bound..=self.bound)))
                        .collect()
                })
                .collect();
            if rank_of(&rows) == self.d {
                return Some(Subspace::from_rows(rows).expect("full rank"));
            }
        }
    }
}

/// Outcome of checking shadow containment on sampled subspaces. Passing every
/// trial is evidence, not proof, that every shadow fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowCoverReport {
    pub sampler: SubspaceSampler,
    pub trials: usize,
    pub passes: usize,
    /// Smallest failing trial index with its subspace basis and the verdict
    /// in that subspace's coordinates.
    pub first_failure: Option<ShadowFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowFailure {
    pub trial: usize,
    pub basis: Vec<RatVector>,
    pub verdict: ContainmentVerdict,
}

impl ShadowCoverReport {
    pub fn all_pass(&self) -> bool {
        self.passes == self.trials
    }

    pub fn failures(&self) -> usize {
        self.trials - self.passes
    }
}

pub fn sampled_shadow_cover(
    k: &Polytope,
    l: &Polytope,
    sampler: SubspaceSampler,
    trials: usize,
) -> Result<ShadowCoverReport> {
    check_dims(k, l)?;
    let n = l.dim();
    if sampler.d == 0 || sampler.d >= n {
        return Err(Error::BadReliabilityDim { d: sampler.d, n });
    }
    let mut passes = 0;
    let mut first_failure = None;
    for (trial, xi) in sampler.stream(n).take(trials).enumerate() {
        if shadow_fits(k, l, &xi)? {
            passes += 1;
        } else if first_failure.is_none() {
            first_failure = Some(ShadowFailure {
                trial,
                basis: xi.basis().rows().to_vec(),
                verdict: shadow_fit(k, l, &xi)?,
            });
        }
    }
    Ok(ShadowCoverReport {
        sampler,
        trials,
        passes,
        first_failure,
    })
}

/// Decides whether a translate of `K` lies in `C = ⊕ factors`, where each
/// factor is given in the coordinates of its subspace, by solving one
/// containment problem per component.
///
/// With `ψ = (Bᵀ)⁻¹` for the stacked bases `B`, `ψC` is the Cartesian product
/// of the factors, so `K + v ⊆ C` splits into independent block problems.
/// For mutually orthogonal components the blocks are plain shadows.
pub fn product_containment(
    k: &Polytope,
    components: &[(Subspace, Polytope)],
) -> Result<ContainmentVerdict> {
    let n = k.dim();
    let subspaces: Vec<&Subspace> = components.iter().map(|(s, _)| s).collect();
    let total: usize = subspaces.iter().map(|s| s.dim()).sum();
    if subspaces.iter().any(|s| s.ambient_dim() != n) || total != n || !is_direct_sum(&subspaces)
    {
        return Err(Error::NotDirectSum { ambient: n });
    }
    let orthogonal = subspaces
        .iter()
        .enumerate()
        .all(|(i, a)| subspaces[i + 1..].iter().all(|b| a.is_orthogonal_to(b)));

    let stacked: Vec<RatVector> = subspaces
        .iter()
        .flat_map(|s| s.basis().rows().iter().cloned())
        .collect();
    let b = RatMatrix::from_rows(stacked)?;
    let psi = b.transpose().inverse()?;

    let mut blocks = Vec::with_capacity(components.len());
    let mut start = 0;
    for (s, factor) in components {
        let range = start..start + s.dim();
        start = range.end;
        let shadow = if orthogonal {
            project(k, s)?
        } else {
            let idx: Vec<usize> = range.clone().collect();
            let pts: Vec<RatVector> = k
                .vertices()
                .iter()
                .map(|x| psi.mul_vec(x).select(&idx))
                .collect();
            Polytope::from_points(&pts)?
        };
        match translate_fit(&shadow, factor)? {
            ContainmentVerdict::Fits { witness } => blocks.push(witness),
            ContainmentVerdict::Blocked { certificate } => {
                let c = direct_sum_all(components)?;
                let certificate = lift_certificate(&certificate, factor, &c, &psi, range)?;
                return Ok(ContainmentVerdict::Blocked { certificate });
            }
            ContainmentVerdict::HullMismatch => return Ok(ContainmentVerdict::HullMismatch),
        }
    }
    let coords: RatVector = blocks.into_iter().flat_map(|w| w.into_entries()).collect();
    Ok(ContainmentVerdict::Fits {
        witness: b.combine_rows(&coords),
    })
}

/// Re-expresses a block certificate against the facets of the assembled `C`.
fn lift_certificate(
    cert: &FarkasCertificate,
    factor: &Polytope,
    c: &Polytope,
    psi: &RatMatrix,
    range: std::ops::Range<usize>,
) -> Result<FarkasCertificate> {
    let n = psi.ncols();
    let mut multipliers = Vec::new();
    for (idx, lambda) in &cert.multipliers {
        let f = &factor.facets()[*idx];
        let mut padded = RatVector::zeros(n);
        for (j, value) in range.clone().zip(f.normal().iter()) {
            padded[j] = value.clone();
        }
        // a·(ψx)_block = (ψᵀ a)·x
        let normal = psi.transpose().mul_vec(&padded);
        let (key, factor_scale) = normal.primitive();
        let target = c
            .facet_with_normal(&key)
            .ok_or(Error::NotDirectSum { ambient: n })?;
        multipliers.push((target, lambda / factor_scale));
    }
    multipliers.sort_by_key(|a| a.0);
    Ok(FarkasCertificate { multipliers })
}
