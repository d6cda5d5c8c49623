//! Brute-force oracles shared by the integration tests. They use cofactor
//! expansion and subset enumeration only, never the library's elimination,
//! hull or simplex code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use shadowfit::{Polytope, RatVector, Rational};

/// Determinant by Laplace expansion along the first row.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::from_integer(1.into()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Rational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn rank(vs: &[RatVector]) -> usize {
    let Some(first) = vs.first() else {
        return 0;
    };
    let n = first.dim();
    for k in (1..=vs.len().min(n)).rev() {
        for rows in subsets(vs.len(), k) {
            for cols in subsets(n, k) {
                let m: Vec<Vec<Rational>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| vs[r][c].clone()).collect()).collect();
                if !det(&m).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// For `m` vectors of rank exactly `m - 1`, the coefficients `c` (unique up
/// to scale) with `Σ c_i v_i = 0`; `None` for any other rank.
pub fn one_dim_kernel(vs: &[RatVector]) -> Option<Vec<Rational>> {
    let m = vs.len();
    let n = vs[0].dim();
    if m < 2 || m - 1 > n {
        return None;
    }
    for rows in subsets(n, m - 1) {
        let c: Vec<Rational> = (0..m)
            .map(|i| {
                let minor: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|&r| (0..m).filter(|&j| j != i).map(|j| vs[j][r].clone()).collect())
                    .collect();
                let d = det(&minor);
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let residual_zero = (0..n).all(|r| {
            vs.iter()
                .zip(&c)
                .fold(Rational::zero(), |acc, (v, ci)| acc + &v[r] * ci)
                .is_zero()
        });
        return residual_zero.then_some(c);
    }
    None
}

/// Positive dependency with rank one less than the size.
pub fn is_simplicial(vs: &[RatVector]) -> bool {
    match one_dim_kernel(vs) {
        Some(c) => c.iter().all(|x| x.is_positive()) || c.iter().all(|x| x.is_negative()),
        None => false,
    }
}

/// Minimal dependent set: rank one less than the size with every
/// coefficient nonzero.
pub fn is_circuit(vs: &[RatVector]) -> bool {
    match one_dim_kernel(vs) {
        Some(c) => c.iter().all(|x| !x.is_zero()),
        None => false,
    }
}

/// Normal of the hyperplane through `n` points of `R^n`, by cofactors.
pub fn cofactor_normal(pts: &[&RatVector]) -> RatVector {
    let n = pts[0].dim();
    let diffs: Vec<RatVector> = pts[1..].iter().map(|p| *p - pts[0]).collect();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Rational>> = diffs
                .iter()
                .map(|d| (0..n).filter(|&c| c != j).map(|c| d[c].clone()).collect())
                .collect();
            let v = det(&minor);
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Facets `(primitive normal, offset)` of a full-dimensional point set, by
/// trying every hyperplane through `n` of the points.
pub fn brute_facets(points: &[RatVector]) -> BTreeSet<(RatVector, Rational)> {
    let n = points[0].dim();
    let mut out = BTreeSet::new();
    for subset in subsets(points.len(), n) {
        let chosen: Vec<&RatVector> = subset.iter().map(|&i| &points[i]).collect();
        let normal = cofactor_normal(&chosen);
        if normal.is_zero() {
            continue;
        }
        let (normal, _) = normal.primitive();
        let b = normal.dot(chosen[0]);
        let above = points.iter().any(|p| normal.dot(p) > b);
        let below = points.iter().any(|p| normal.dot(p) < b);
        match (above, below) {
            (false, true) => {
                out.insert((normal, b));
            }
            (true, false) => {
                out.insert((-&normal, -b));
            }
            _ => {}
        }
    }
    out
}

pub fn facet_set(p: &Polytope) -> BTreeSet<(RatVector, Rational)> {
    p.facets()
        .iter()
        .map(|f| {
            let (n, factor) = f.normal().primitive();
            (n, f.offset() * factor)
        })
        .collect()
}

/// Points that lie on facets whose normals span, i.e. the vertices.
pub fn brute_vertices(points: &[RatVector]) -> BTreeSet<RatVector> {
    let facets = brute_facets(points);
    let n = points[0].dim();
    points
        .iter()
        .filter(|p| {
            let active: Vec<RatVector> =
                facets.iter().filter(|(a, b)| a.dot(p) == *b).map(|(a, _)| a.clone()).collect();
            rank(&active) == n
        })
        .cloned()
        .collect()
}

pub fn support(points: &[RatVector], u: &RatVector) -> Rational {
    points.iter().map(|p| u.dot(p)).max().expect("nonempty")
}

/// Optimum of `maximize c·x s.t. a_i·x <= b_i` by enumerating basic
/// solutions; `None` if no basic solution is feasible. The caller ensures
/// the problem is bounded.
pub fn vertex_enumeration_max(c: &RatVector, rows: &[(RatVector, Rational)]) -> Option<Rational> {
    let n = c.dim();
    let mut best: Option<Rational> = None;
    for subset in subsets(rows.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.iter().cloned().collect()).collect();
        let d = det(&a);
        if d.is_zero() {
            continue;
        }
        // Cramer's rule
        let x: RatVector = (0..n)
            .map(|j| {
                let mut aj = a.clone();
                for (r, &i) in subset.iter().enumerate() {
                    aj[r][j] = rows[i].1.clone();
                }
                det(&aj) / &d
            })
            .collect();
        if rows.iter().all(|(ai, bi)| ai.dot(&x) <= *bi) {
            let v = c.dot(&x);
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

pub fn pts(rows: &[&[i64]]) -> Vec<RatVector> {
    rows.iter().map(|r| RatVector::from_ints(r)).collect()
}
