//! Built-in acceptance checks, shared by the test suite and the CLI.
//!
//! Each check returns a [`CheckReport`] with its own time limit; a check
//! that finishes correctly but late still fails.

use std::time::{Duration, Instant};

use num_traits::One;

use crate::containment::{
    product_containment, sampled_shadow_cover, shadow_fit, translate_fit, SubspaceSampler,
};
use crate::corpus::{self, q_directions, random_direct_sum, random_linear_map, random_polytope};
use crate::counterexample::{construct, fresh_seed, verify_bundle};
use crate::decomposability::{cross_check_2iff2, decompose_directions, is_decomposable, normal_components};
use crate::error::Result;
use crate::linalg::{frac, int, RatVector, Rational};
use crate::polytope::{apply_linear, embed, minkowski_sum, vector_area_check, Polytope};
use crate::reliability::{enumerate_simplicial, is_reliable, parallelotope_check, reliability_of_directions, smallest_family};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CheckReport {
    pub fn line(&self) -> String {
        let limit = self
            .limit
            .map(|l| format!(" (limit {}s)", l.as_secs()))
            .unwrap_or_default();
        format!(
            "[{}] {:>2} {}: {} in {:.2}s{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed(
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Result<Outcome>,
) -> CheckReport {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, detail) = match outcome {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if limit.is_some_and(|l| elapsed > l) {
        passed = false;
    }
    CheckReport {
        id,
        name,
        passed,
        detail,
        elapsed,
        limit,
    }
}

pub const CHECK_NAMES: [&str; 10] = [
    "square pyramid",
    "q directions",
    "1-reliable iff parallelotope",
    "2-reliable iff 2-decomposable",
    "decomposable implies reliable",
    "product containment",
    "counterexample pipeline",
    "linear invariance",
    "embedding invariance",
    "infrastructure invariants",
];

pub fn square_pyramid() -> CheckReport {
    timed(1, CHECK_NAMES[0], Some(Duration::from_secs(1)), || {
        let p = corpus::square_pyramid();
        let r1 = is_reliable(&p, 1)?;
        let r2 = is_reliable(&p, 2)?;
        let (dec2, _) = is_decomposable(&p, 2)?;
        let cert = r1.certificate.as_ref().map_or(0, |c| c.len());
        Ok(Outcome {
            passed: !r1.reliable && cert == 3 && r2.reliable && !dec2,
            detail: format!(
                "reliable(1)={} certificate size {cert}, reliable(2)={}, decomposable(2)={dec2}",
                r1.reliable, r2.reliable
            ),
        })
    })
}

pub fn q_directions_check() -> CheckReport {
    timed(2, CHECK_NAMES[1], Some(Duration::from_secs(1)), || {
        let q = q_directions();
        let five = enumerate_simplicial(&q, 5);
        let four = smallest_family(&q, 4);
        let comps = normal_components(&q)?;
        let report = decompose_directions(&q)?;
        let dims: Vec<usize> = comps.iter().map(|c| c.dim()).collect();
        let r3 = reliability_of_directions(&q, 3)?;
        Ok(Outcome {
            passed: five.is_empty()
                && four.as_ref().is_some_and(|f| f.len() == 4)
                && dims == [4]
                && !report.is_decomposable(3)
                && r3.reliable,
            detail: format!(
                "{} families of size >= 5, size-4 family {}, component dims {dims:?}, decomposable(3)={}, reliable(3)={}",
                five.len(),
                if four.is_some() { "found" } else { "missing" },
                report.is_decomposable(3),
                r3.reliable
            ),
        })
    })
}

pub fn one_reliable_parallelotopes() -> CheckReport {
    timed(3, CHECK_NAMES[2], Some(Duration::from_secs(60)), || {
        let corpus = corpus::standard_corpus(4)?;
        let mut mismatches = Vec::new();
        let mut parallelotopes = 0;
        for (name, p) in &corpus {
            let reliable = is_reliable(p, 1)?.reliable;
            let par = parallelotope_check(p)?;
            parallelotopes += par as usize;
            if reliable != par {
                mismatches.push(name.clone());
            }
        }
        Ok(Outcome {
            passed: corpus.len() >= 200 && mismatches.is_empty(),
            detail: format!(
                "{} polytopes, {parallelotopes} parallelotopes, mismatches {mismatches:?}",
                corpus.len()
            ),
        })
    })
}

pub fn two_reliable_decomposable() -> CheckReport {
    timed(4, CHECK_NAMES[3], Some(Duration::from_secs(300)), || {
        let corpus: Vec<Polytope> = corpus::symmetric_corpus(120)?.into_iter().map(|(_, p)| p).collect();
        let report = cross_check_2iff2(&corpus)?;
        Ok(Outcome {
            passed: report.checked >= 100 && report.passed(),
            detail: format!(
                "{} symmetric polytopes, {} 2-reliable, {} disagreements",
                report.checked,
                report.reliable_count,
                report.violations.len()
            ),
        })
    })
}

pub fn decomposable_implies_reliable() -> CheckReport {
    timed(5, CHECK_NAMES[4], None, || {
        let corpus = corpus::standard_corpus(5)?;
        let mut violations = Vec::new();
        let mut cases = 0;
        let mut converse_fails = 0;
        for (name, p) in &corpus {
            for d in 1..p.dim() {
                let (dec, _) = is_decomposable(p, d)?;
                let rel = is_reliable(p, d)?.reliable;
                cases += 1;
                if dec && !rel {
                    violations.push(format!("{name} d={d}"));
                }
                converse_fails += (rel && !dec) as usize;
            }
        }
        let q = q_directions();
        let q_report = decompose_directions(&q)?;
        for d in 1..4 {
            cases += 1;
            if q_report.is_decomposable(d) && !reliability_of_directions(&q, d)?.reliable {
                violations.push(format!("q-directions d={d}"));
            }
        }
        Ok(Outcome {
            passed: violations.is_empty(),
            detail: format!(
                "{cases} (polytope, d) cases, {converse_fails} reliable but indecomposable, violations {violations:?}"
            ),
        })
    })
}

/// `K` and the factors of `C`, each in its subspace's coordinates.
pub type ProductPair = (Polytope, Vec<(Subspace, Polytope)>);

/// Random `(K, C)` pairs with `C` a direct sum; `K` is either a shrunken
/// copy of `C` moved off center or an unrelated random body.
pub fn product_pairs(count: usize) -> Result<Vec<ProductPair>> {
    let splits: [&[usize]; 4] = [&[1, 1], &[2, 1], &[1, 1, 1], &[2, 2]];
    let mut out = Vec::with_capacity(count);
    for seed in 0..count as u64 {
        let dims = splits[seed as usize % splits.len()];
        let n: usize = dims.iter().sum();
        let sheared = seed % 2 == 1;
        let (parts, c) = random_direct_sum(seed + 500, dims, sheared, seed % 3 == 0, 3)?;
        let k = match seed % 3 {
            0 => random_polytope(seed + 900, n, n + 2, 2)?,
            1 => c.scale(&frac(1, 2)).translate(&RatVector::from_ints(&vec![1; n])),
            _ => c.scale(&frac(9, 10)).translate(&RatVector::from_ints(&vec![-1; n])),
        };
        out.push((k, parts));
    }
    Ok(out)
}

pub fn product_containment_check() -> CheckReport {
    timed(6, CHECK_NAMES[5], None, || {
        let pairs = product_pairs(60)?;
        let mut disagreements = 0;
        let mut unverified = 0;
        let mut fits = 0;
        for (k, parts) in &pairs {
            let c = crate::polytope::direct_sum_all(parts)?;
            let by_parts = product_containment(k, parts)?;
            let direct = translate_fit(k, &c)?;
            fits += direct.fits() as usize;
            disagreements += (by_parts.fits() != direct.fits()) as usize;
            unverified += (!by_parts.verify(k, &c) || !direct.verify(k, &c)) as usize;
        }
        Ok(Outcome {
            passed: disagreements == 0 && unverified == 0 && fits > 0 && fits < pairs.len(),
            detail: format!(
                "{} pairs ({fits} fit), {disagreements} disagreements, {unverified} unverified certificates",
                pairs.len()
            ),
        })
    })
}

/// `(name, L, d)` cases for the end-to-end counterexample check.
pub fn counterexample_cases() -> Result<Vec<(String, Polytope, usize)>> {
    let mut cases = vec![("octahedron".to_string(), corpus::named_polytope("octahedron")?, 2)];
    for n in [3, 4] {
        let p = corpus::standard_simplex(n);
        for d in 1..n {
            cases.push((format!("standard-simplex-{n}"), p.clone(), d));
        }
    }
    for (name, p) in corpus::standard_corpus(4)? {
        if !name.starts_with("random-") || !random_counterexample_member(&name) {
            continue;
        }
        for d in 1..p.dim() {
            if !is_reliable(&p, d)?.reliable {
                cases.push((name.clone(), p.clone(), d));
            }
        }
    }
    Ok(cases)
}

fn random_counterexample_member(name: &str) -> bool {
    let seed: u64 = name.rsplit("-s").next().and_then(|s| s.parse().ok()).unwrap_or(u64::MAX);
    if name.starts_with("random-4d") {
        seed < RANDOM_4D_MEMBERS
    } else {
        seed < RANDOM_LOW_MEMBERS
    }
}

const RANDOM_LOW_MEMBERS: u64 = 30;
const RANDOM_4D_MEMBERS: u64 = 30;

pub const COUNTEREXAMPLE_TRIALS: usize = 1000;
pub const VERIFY_TRIALS: usize = 2000;

pub fn counterexample_pipeline() -> CheckReport {
    timed(7, CHECK_NAMES[6], Some(Duration::from_secs(600)), || {
        let cases = counterexample_cases()?;
        let mut failed = Vec::new();
        let mut min_alpha: Option<Rational> = None;
        for (i, (name, l, d)) in cases.iter().enumerate() {
            let seed = 7000 + i as u64;
            let sampler = SubspaceSampler::new(seed, 10, *d);
            let ok = construct(l, *d, sampler, COUNTEREXAMPLE_TRIALS, &frac(1, 2)).and_then(|b| {
                let check = verify_bundle(&b, fresh_seed(seed), VERIFY_TRIALS)?;
                if min_alpha.as_ref().is_none_or(|m| b.alpha < *m) {
                    min_alpha = Some(b.alpha.clone());
                }
                Ok(check.passed() && b.alpha > Rational::one())
            });
            if !matches!(ok, Ok(true)) {
                failed.push(format!("{name} d={d}"));
            }
        }
        Ok(Outcome {
            passed: failed.is_empty(),
            detail: format!(
                "{} cases, smallest alpha {}, failed {failed:?}",
                cases.len(),
                min_alpha.map_or("-".into(), |a| a.to_string())
            ),
        })
    })
}

pub fn linear_invariance() -> CheckReport {
    timed(8, CHECK_NAMES[7], None, || {
        let mut disagreements = 0;
        let mut fits = 0;
        let count = 50;
        for seed in 0..count as u64 {
            let n = 2 + seed as usize % 3;
            let l = random_polytope(seed + 3000, n, n + 3, 4)?;
            let k = if seed % 2 == 0 {
                random_polytope(seed + 4000, n, n + 2, 2)?
            } else {
                l.scale(&frac(2, 3)).reflect()
            };
            let psi = random_linear_map(seed + 5000, n, 3)?;
            let u: RatVector = random_polytope(seed + 6000, n, n + 1, 5)?.vertices()[0].clone();
            let u = if u.is_zero() { RatVector::unit(n, 0) } else { u };
            let before = shadow_fit(&k, &l, &Subspace::orthogonal_to(&u)?)?.fits();
            // The shadow on u^⊥ collapses lines along u, and ψ maps those
            // lines to lines along ψu.
            let u_image = psi.mul_vec(&u);
            let after = shadow_fit(
                &apply_linear(&k, &psi)?,
                &apply_linear(&l, &psi)?,
                &Subspace::orthogonal_to(&u_image)?,
            )?
            .fits();
            fits += before as usize;
            disagreements += (before != after) as usize;
        }
        Ok(Outcome {
            passed: disagreements == 0 && fits > 0 && fits < count,
            detail: format!("{count} cases ({fits} fit), {disagreements} disagreements"),
        })
    })
}

pub fn embedding_invariance() -> CheckReport {
    timed(9, CHECK_NAMES[8], None, || {
        let mut bad = Vec::new();
        let mut cases = 0;
        // Reliability of a body and of its copy one dimension up.
        for (name, p) in corpus::standard_corpus(4)?.iter().step_by(3) {
            let n = p.dim();
            let up = embed(p, n + 1)?;
            for d in 1..n {
                cases += 1;
                if is_reliable(p, d)?.reliable != is_reliable(&up, d)?.reliable {
                    bad.push(format!("reliability {name} d={d}"));
                }
            }
        }
        // Shadow verdicts on matching subspaces, and passes that persist in
        // the larger space for a body that is covered but not contained.
        let l = corpus::named_polytope("octahedron")?;
        let bundle = construct(&l, 2, SubspaceSampler::new(91, 10, 2), 300, &frac(1, 2))?;
        let pairs = [
            (bundle.scaled(), l.clone()),
            (l.scale(&frac(1, 2)), l.clone()),
            (corpus::cube(3), l.clone()),
            (random_polytope(92, 3, 5, 3)?, random_polytope(93, 3, 6, 4)?),
        ];
        for (i, (k, l)) in pairs.iter().enumerate() {
            let (ku, lu) = (embed(k, 4)?, embed(l, 4)?);
            for (trial, xi) in SubspaceSampler::new(100 + i as u64, 10, 2).stream(3).take(60).enumerate() {
                cases += 1;
                let below = shadow_fit(k, l, &xi)?.fits();
                let above = shadow_fit(&ku, &lu, &xi.padded(1))?.fits();
                if below != above {
                    bad.push(format!("shadow pair {i} trial {trial}"));
                }
            }
        }
        let (k, l) = (&pairs[0].0, &pairs[0].1);
        let report = sampled_shadow_cover(&embed(k, 4)?, &embed(l, 4)?, SubspaceSampler::new(7, 10, 2), 300)?;
        cases += report.trials;
        if !report.all_pass() {
            bad.push(format!("{} failures in R^4", report.failures()));
        }
        let report = sampled_shadow_cover(&embed(k, 4)?, &embed(l, 4)?, SubspaceSampler::new(8, 10, 3), 300)?;
        cases += report.trials;
        if translate_fit(k, l)?.fits() || report.all_pass() {
            bad.push("3-shadows in R^4 should expose the non-containment".into());
        }
        Ok(Outcome {
            passed: bad.is_empty(),
            detail: format!("{cases} comparisons, problems {bad:?}"),
        })
    })
}

pub fn infrastructure_invariants() -> CheckReport {
    timed(10, CHECK_NAMES[9], None, || {
        let corpus = corpus::standard_corpus(5)?;
        let mut bad = Vec::new();
        let mut lp_checks = 0;
        let mut sums = 0;
        for (name, p) in &corpus {
            let mut reversed = p.vertices().to_vec();
            reversed.reverse();
            let again = Polytope::from_points(&reversed)?;
            if !again.same_facets(p) || again.vertices().len() != p.vertices().len() || !facets_consistent(p) {
                bad.push(format!("hull {name}"));
            }
            if !vector_area_check(p)? {
                bad.push(format!("area {name}"));
            }
        }
        for pair in corpus.windows(2) {
            let ((na, a), (nb, b)) = (&pair[0], &pair[1]);
            if a.dim() != b.dim() {
                continue;
            }
            for (k, l) in [(a, b), (b, a), (&a.scale(&frac(1, 3)), b)] {
                lp_checks += 1;
                if !translate_fit(k, l)?.verify(k, l) {
                    bad.push(format!("lp {na} {nb}"));
                }
            }
            if a.vertices().len() * b.vertices().len() <= 120 {
                sums += 1;
                let sum = minkowski_sum(a, b)?;
                for u in test_directions(a.dim()) {
                    if sum.support(&u) != a.support(&u) + b.support(&u) {
                        bad.push(format!("support {na} + {nb}"));
                        break;
                    }
                }
            }
        }
        Ok(Outcome {
            passed: bad.is_empty(),
            detail: format!(
                "{} polytopes, {lp_checks} certificates, {sums} sums, problems {bad:?}",
                corpus.len()
            ),
        })
    })
}

/// Every vertex satisfies every facet inequality, with equality exactly on
/// the facet's incident set, which spans the facet.
fn facets_consistent(p: &Polytope) -> bool {
    let k = p.affine_dim();
    p.facets().iter().all(|f| {
        let on: Vec<usize> = p
            .vertices()
            .iter()
            .enumerate()
            .filter_map(|(i, v)| {
                let value = f.normal().dot(v);
                (value == *f.offset()).then_some(i)
            })
            .collect();
        let inside = p.vertices().iter().all(|v| f.normal().dot(v) <= *f.offset());
        let diffs: Vec<RatVector> = on
            .iter()
            .map(|&i| &p.vertices()[i] - &p.vertices()[on[0]])
            .collect();
        inside && on == f.incident() && crate::linalg::rank_of(&diffs) + 1 == k
    })
}

fn test_directions(n: usize) -> Vec<RatVector> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(RatVector::unit(n, i));
        out.push(-&RatVector::unit(n, i));
    }
    out.push((0..n).map(|i| int(i as i64 + 1)).collect());
    out.push((0..n).map(|i| int(if i % 2 == 0 { 3 } else { -2 })).collect());
    out
}

pub fn run_all() -> Vec<CheckReport> {
    vec![
        square_pyramid(),
        q_directions_check(),
        one_reliable_parallelotopes(),
        two_reliable_decomposable(),
        decomposable_implies_reliable(),
        product_containment_check(),
        counterexample_pipeline(),
        linear_invariance(),
        embedding_invariance(),
        infrastructure_invariants(),
    ]
}

pub fn run_one(id: usize) -> Option<CheckReport> {
    let f: fn() -> CheckReport = match id {
        1 => square_pyramid,
        2 => q_directions_check,
        3 => one_reliable_parallelotopes,
        4 => two_reliable_decomposable,
        5 => decomposable_implies_reliable,
        6 => product_containment_check,
        7 => counterexample_pipeline,
        8 => linear_invariance,
        9 => embedding_invariance,
        10 => infrastructure_invariants,
        _ => return None,
    };
    Some(f())
}
