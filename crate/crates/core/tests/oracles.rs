//! Library results against brute-force oracles.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use num_traits::{One, Zero};
use shadowfit::containment::{max_scale, translate_fit, ContainmentVerdict};
use shadowfit::corpus::{self, q_directions, random_polytope, square_pyramid};
use shadowfit::decomposability::{decompose, normal_components};
use shadowfit::linalg::{frac, int};
use shadowfit::lp::{solve_lp, LpOutcome, LpProblem};
use shadowfit::reliability::{is_reliable, reliability_of_directions, DirectionSet};
use shadowfit::{Polytope, RatVector, Rational};

fn small_polytopes() -> Vec<(String, Polytope)> {
    let mut out: Vec<(String, Polytope)> = [
        "cube-2",
        "cube-3",
        "standard-simplex-2",
        "standard-simplex-3",
        "standard-simplex-4",
        "sheared-box-2",
        "sheared-box-3",
        "square-pyramid",
        "octahedron",
        "hexagon",
        "hexagonal-prism",
        "triangular-prism",
        "rhombic-dodecahedron",
    ]
    .iter()
    .map(|n| (n.to_string(), corpus::named_polytope(n).unwrap()))
    .collect();
    for seed in 0..12 {
        out.push((format!("r2-{seed}"), random_polytope(seed, 2, 7, 6).unwrap()));
        out.push((format!("r3-{seed}"), random_polytope(100 + seed, 3, 7, 4).unwrap()));
    }
    out
}

#[test]
fn hull_matches_brute_force() {
    for (name, p) in small_polytopes() {
        assert_eq!(facet_set(&p), brute_facets(p.vertices()), "{name}");
    }
}

#[test]
fn hull_of_noisy_cloud_matches_brute_force() {
    // interior, edge and duplicate points mixed in
    for seed in 0..8u64 {
        let p = random_polytope(seed, 3, 5, 3).unwrap();
        let mut cloud: Vec<RatVector> = p.vertices().to_vec();
        cloud.push(p.vertex_centroid());
        cloud.push((&cloud[0] + &cloud[1]).scale(&frac(1, 2)));
        cloud.push(cloud[2].clone());
        let q = Polytope::from_points(&cloud).unwrap();
        assert_eq!(facet_set(&q), brute_facets(&cloud), "seed {seed}");
        let verts: BTreeSet<RatVector> = q.vertices().iter().cloned().collect();
        assert_eq!(verts, brute_vertices(&cloud), "seed {seed}");
    }
}

#[test]
fn four_dimensional_hulls_match_brute_force() {
    for name in ["cube-4", "cross-polytope-4", "sheared-box-4"] {
        let p = corpus::named_polytope(name).unwrap();
        assert_eq!(facet_set(&p), brute_facets(p.vertices()), "{name}");
    }
    let p = random_polytope(9, 4, 8, 3).unwrap();
    assert_eq!(facet_set(&p), brute_facets(p.vertices()));
}

/// Smallest size of a simplicial subfamily of size at least `min_size`.
fn smallest_simplicial(set: &DirectionSet, min_size: usize) -> Option<usize> {
    let dirs = set.directions();
    (min_size..=set.dim() + 1).find(|&k| {
        subsets(dirs.len(), k).iter().any(|s| {
            let vs: Vec<RatVector> = s.iter().map(|&i| dirs[i].clone()).collect();
            is_simplicial(&vs)
        })
    })
}

#[test]
fn reliability_matches_subset_enumeration() {
    for (name, p) in small_polytopes() {
        let set = DirectionSet::from_polytope(&p);
        for d in 1..p.dim() {
            let v = is_reliable(&p, d).unwrap();
            let oracle = smallest_simplicial(&set, d + 2);
            assert_eq!(v.reliable, oracle.is_none(), "{name} d={d}");
            assert_eq!(v.certificate.as_ref().map(|f| f.len()), oracle, "{name} d={d}");
            if let Some(f) = &v.certificate {
                assert!(is_simplicial(&f.vectors(&set)), "{name} d={d}");
            }
        }
    }
}

#[test]
fn square_pyramid_reliability() {
    let p = square_pyramid();
    let one = is_reliable(&p, 1).unwrap();
    assert!(!one.reliable);
    assert_eq!(one.certificate.unwrap().len(), 3);
    assert!(is_reliable(&p, 2).unwrap().reliable);
    assert!(!decompose(&p).unwrap().is_decomposable(2));
}

#[test]
fn q_directions_have_no_simplicial_five_family() {
    let q = q_directions();
    assert_eq!(q.len(), 12);
    assert_eq!(smallest_simplicial(&q, 5), None);
    assert_eq!(smallest_simplicial(&q, 4), Some(4));
    assert!(reliability_of_directions(&q, 3).unwrap().reliable);
    let two = reliability_of_directions(&q, 2).unwrap();
    assert!(!two.reliable);
    assert_eq!(two.certificate.unwrap().len(), 4);
}

/// Components as the union of all circuits, with their ranks.
fn circuit_components(set: &DirectionSet) -> BTreeMap<Vec<usize>, usize> {
    let dirs = set.directions();
    let m = dirs.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for k in 2..=set.dim() + 1 {
        for s in subsets(m, k) {
            let vs: Vec<RatVector> = s.iter().map(|&i| dirs[i].clone()).collect();
            if is_circuit(&vs) {
                for w in s.windows(2) {
                    let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups
        .into_values()
        .map(|g| {
            let vs: Vec<RatVector> = g.iter().map(|&i| dirs[i].clone()).collect();
            let r = rank(&vs);
            (g, r)
        })
        .collect()
}

#[test]
fn components_match_circuit_union() {
    for (name, p) in small_polytopes() {
        let set = DirectionSet::from_polytope(&p);
        let lib: BTreeMap<Vec<usize>, usize> = normal_components(&set)
            .unwrap()
            .into_iter()
            .map(|c| {
                let dim = c.dim();
                let mut members = c.members;
                members.sort();
                (members, dim)
            })
            .collect();
        assert_eq!(lib, circuit_components(&set), "{name}");
    }
}

#[test]
fn named_component_dimensions() {
    let dims = |name: &str| {
        let mut d = decompose(&corpus::named_polytope(name).unwrap()).unwrap().component_dims();
        d.sort();
        d
    };
    assert_eq!(dims("hexagonal-prism"), vec![1, 2]);
    assert_eq!(dims("cube-3"), vec![1, 1, 1]);
    assert_eq!(dims("octahedron"), vec![3]);
    let q = circuit_components(&q_directions());
    assert_eq!(q.values().copied().collect::<Vec<_>>(), vec![4]);
}

/// `max α` with `αK + t ⊆ L`, by enumerating basic solutions of the LP in
/// `(α, t)`.
fn oracle_max_scale(k: &Polytope, l: &Polytope) -> Rational {
    let n = l.dim();
    let facets = brute_facets(l.vertices());
    let mut rows: Vec<(RatVector, Rational)> = facets
        .iter()
        .map(|(a, b)| {
            let mut row = vec![support(k.vertices(), a)];
            row.extend(a.iter().cloned());
            (RatVector::new(row), b.clone())
        })
        .collect();
    let mut nonneg = RatVector::zeros(n + 1);
    nonneg[0] = int(-1);
    rows.push((nonneg, Rational::zero()));
    let mut c = RatVector::zeros(n + 1);
    c[0] = int(1);
    vertex_enumeration_max(&c, &rows).expect("α = 0 is feasible")
}

#[test]
fn max_scale_matches_vertex_enumeration() {
    for seed in 0..20u64 {
        let n = 2 + (seed % 2) as usize;
        let k = random_polytope(seed, n, n + 2, 3).unwrap();
        let l = random_polytope(1000 + seed, n, n + 3, 5).unwrap();
        let (alpha, t) = max_scale(&k, &l).unwrap();
        assert_eq!(alpha, oracle_max_scale(&k, &l), "seed {seed}");
        let placed = k.scale(&alpha).translate(&t);
        assert!(placed.vertices().iter().all(|v| l.contains_point(v)), "seed {seed}");
        assert_eq!(translate_fit(&k, &l).unwrap().fits(), alpha >= Rational::one(), "seed {seed}");
    }
}

#[test]
fn containment_verdicts_check_against_brute_force_facets() {
    for seed in 0..30u64 {
        let k = random_polytope(seed, 2, 4, 3).unwrap();
        let l = random_polytope(500 + seed, 2, 6, 4).unwrap();
        let facets = brute_facets(l.vertices());
        match translate_fit(&k, &l).unwrap() {
            ContainmentVerdict::Fits { witness } => {
                for v in k.vertices() {
                    let moved = v + &witness;
                    assert!(facets.iter().all(|(a, b)| a.dot(&moved) <= *b), "seed {seed}");
                }
            }
            ContainmentVerdict::Blocked { certificate } => {
                // Σ y_i a_i = 0 and Σ y_i (b_i - h_K(a_i)) < 0
                let mut combo = RatVector::zeros(2);
                let mut slack = Rational::zero();
                for (i, y) in &certificate.multipliers {
                    assert!(*y > Rational::zero());
                    let f = &l.facets()[*i];
                    let (a, factor) = f.normal().primitive();
                    assert!(facets.contains(&(a.clone(), f.offset() * &factor)));
                    combo = &combo + &f.normal().scale(y);
                    slack += y * (f.offset() - support(k.vertices(), f.normal()));
                }
                assert!(combo.is_zero() && slack < Rational::zero(), "seed {seed}");
            }
            ContainmentVerdict::HullMismatch => panic!("full-dimensional inputs"),
        }
    }
}

#[test]
fn lp_optimum_matches_vertex_enumeration() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let mut rows: Vec<(RatVector, Rational)> = Vec::new();
        // a box keeps every instance bounded
        for j in 0..n {
            rows.push((RatVector::unit(n, j), int(rng.gen_range(1..6))));
            rows.push((-&RatVector::unit(n, j), int(rng.gen_range(1..6))));
        }
        for _ in 0..rng.gen_range(1..5) {
            let a: RatVector = (0..n).map(|_| int(rng.gen_range(-4..=4))).collect();
            rows.push((a, int(rng.gen_range(-6..=6))));
        }
        let c: RatVector = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
        let mut lp = LpProblem::new(n).maximize(c.clone());
        for (a, b) in &rows {
            lp.add_constraint(a.clone(), b.clone());
        }
        let oracle = vertex_enumeration_max(&c, &rows);
        match solve_lp(&lp) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(Some(value.clone()), oracle);
                assert!(lp.is_feasible(&point));
            }
            LpOutcome::Infeasible(cert) => {
                assert_eq!(oracle, None);
                assert!(cert.verify(&lp));
            }
            LpOutcome::Unbounded { .. } => panic!("boxed problem"),
        }
    }
}
