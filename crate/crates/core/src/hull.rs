//! Exact facet enumeration for full-dimensional point sets.
//!
//! Facets are found by gift wrapping: a first facet through the
//! lexicographically smallest point, then for every ridge of a known facet
//! (computed recursively one dimension down unless the facet is a simplex)
//! the unique other facet through that ridge. Arithmetic is exact, so
//! coplanar and cospherical inputs need no special care.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{RatMatrix, RatVector, Rational, Rref};

/// A facet of a full-dimensional point set: `normal · x <= offset` for every
/// point, with equality exactly on `incident` (sorted point indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawFacet {
    pub normal: RatVector,
    pub offset: Rational,
    pub incident: Vec<usize>,
}

/// Affine hull of a point set: `origin + rowspace(directions)`, with
/// `directions` in reduced row echelon form. Projection onto the pivot
/// coordinates is injective on the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub origin: RatVector,
    pub directions: Vec<RatVector>,
    pub pivots: Vec<usize>,
}

impl AffineHull {
    pub fn of(points: &[RatVector]) -> AffineHull {
        let origin = points[0].clone();
        let n = origin.dim();
        let diffs: Vec<RatVector> = points[1..].iter().map(|p| p - &origin).collect();
        let Rref { rows, pivots } = RatMatrix::new(n, diffs).expect("common dimension").rref();
        AffineHull {
            origin,
            directions: rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, p: &RatVector) -> RatVector {
        p.select(&self.pivots)
    }

    /// Whether `p` lies on the hull.
    pub fn contains(&self, p: &RatVector) -> bool {
        let diff = p - &self.origin;
        let mut rows = self.directions.clone();
        rows.push(diff);
        crate::linalg::rank_of(&rows) == self.dim()
    }
}

/// Exact side tests `normal·p - offset` over a fixed point set, in machine
/// integers when the points (scaled to a common denominator) and the normal
/// are small enough, and in rationals otherwise.
struct Sides<'a> {
    points: &'a [RatVector],
    scaled: Option<(Vec<Vec<i64>>, BigInt)>,
}

impl<'a> Sides<'a> {
    fn new(points: &'a [RatVector]) -> Self {
        let den = points
            .iter()
            .flat_map(|p| p.iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Option<Vec<Vec<i64>>> = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| (x.numer() * (&den / x.denom())).to_i64().filter(|v| v.abs() < 1 << 62))
                    .collect()
            })
            .collect();
        Sides {
            points,
            scaled: scaled.map(|s| (s, den)),
        }
    }

    /// Sign of `normal·p_i - offset` for every point.
    fn signs(&self, normal: &RatVector, offset: &Rational) -> Vec<Ordering> {
        if let Some(fast) = self.signs_small(normal, offset) {
            return fast;
        }
        self.points
            .iter()
            .map(|p| (normal.dot(p) - offset).cmp(&Rational::zero()))
            .collect()
    }

    /// [`hyperplane_through`] on these points.
    fn hyperplane(&self, subset: &[usize]) -> Option<(RatVector, Rational)> {
        match self.hyperplane_small(subset) {
            Some(found) => found,
            None => hyperplane_through(self.points, subset),
        }
    }

    /// [`affinely_independent`] on these points.
    fn independent(&self, subset: &[usize]) -> bool {
        let small = self
            .scaled
            .as_ref()
            .and_then(|(pts, _)| rank_small(small_diffs(pts, subset)));
        match small {
            Some(rank) => rank + 1 == subset.len(),
            None => affinely_independent(self.points, subset),
        }
    }

    /// Outer `None` on overflow.
    fn hyperplane_small(&self, subset: &[usize]) -> Option<Option<(RatVector, Rational)>> {
        let (pts, den) = self.scaled.as_ref()?;
        let k = pts[0].len();
        let diffs = small_diffs(pts, subset);
        let mut normal = Vec::with_capacity(k);
        for j in 0..k {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| *x).collect())
                .collect();
            let det = det_small(minor)?;
            normal.push(if (k - 1 + j) % 2 == 0 { det } else { det.checked_neg()? });
        }
        let g = normal.iter().fold(0i128, |acc, x| acc.gcd(x));
        if g == 0 {
            return Some(None);
        }
        let normal: Vec<i128> = normal.into_iter().map(|x| x / g).collect();
        let mut offset: i128 = 0;
        for (a, x) in normal.iter().zip(&pts[subset[0]]) {
            offset = offset.checked_add(a.checked_mul(i128::from(*x))?)?;
        }
        Some(Some((
            normal.into_iter().map(|x| Rational::from_integer(BigInt::from(x))).collect(),
            Rational::new(BigInt::from(offset), den.clone()),
        )))
    }

    fn signs_small(&self, normal: &RatVector, offset: &Rational) -> Option<Vec<Ordering>> {
        let (pts, den) = self.scaled.as_ref()?;
        let a: Vec<i128> = normal
            .iter()
            .map(|x| x.to_integer().to_i64().map(i128::from))
            .collect::<Option<_>>()?;
        let off = offset * Rational::from_integer(den.clone());
        if !off.is_integer() {
            return None;
        }
        let off = off.to_integer().to_i128()?;
        pts.iter()
            .map(|p| {
                let mut acc: i128 = 0;
                for (x, y) in p.iter().zip(&a) {
                    acc = acc.checked_add(i128::from(*x).checked_mul(*y)?)?;
                }
                Some(acc.checked_sub(off)?.cmp(&0))
            })
            .collect()
    }
}

fn small_diffs(pts: &[Vec<i64>], subset: &[usize]) -> Vec<Vec<i128>> {
    let origin = &pts[subset[0]];
    subset[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(origin).map(|(x, o)| i128::from(*x) - i128::from(*o)).collect())
        .collect()
}

/// Bareiss elimination; `None` on overflow.
fn det_small(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n {
        let p = (k..n).find(|&i| m[i][k] != 0);
        let Some(p) = p else {
            return Some(0);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    let det = if n == 0 { 1 } else { m[n - 1][n - 1] };
    Some(if negate { -det } else { det })
}

/// Bareiss forward elimination; `None` on overflow.
fn rank_small(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = m[i][j].checked_mul(m[r][c])?.checked_sub(m[i][c].checked_mul(m[r][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    Some(r)
}

/// Facets of `points`, which must be distinct and affinely span `R^k`
/// (`k = points[0].dim() >= 1`). Normals are primitive integer vectors;
/// output is sorted by normal.
pub(crate) fn full_dim_facets(points: &[RatVector]) -> Vec<RawFacet> {
    let k = points[0].dim();
    debug_assert!(k >= 1);
    if k == 1 {
        return interval_facets(points);
    }
    let sides = Sides::new(points);

    let start = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .expect("nonempty");
    let first = first_facet(points, &sides, start).expect("a full-dimensional set has a facet");

    let mut seen: BTreeSet<RatVector> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(first.normal.clone());
    queue.push_back(first);

    while let Some(facet) = queue.pop_front() {
        let ridges: Vec<Vec<usize>> = if facet.incident.len() == k {
            // a simplex facet: its ridges drop one point each
            (0..k)
                .map(|skip| {
                    let mut r = facet.incident.clone();
                    r.remove(skip);
                    r
                })
                .collect()
        } else {
            let members: Vec<RatVector> =
                facet.incident.iter().map(|&i| points[i].clone()).collect();
            let local = AffineHull::of(&members);
            let reduced: Vec<RatVector> = members.iter().map(|p| local.reduce(p)).collect();
            full_dim_facets(&reduced)
                .into_iter()
                .map(|ridge| ridge.incident.iter().map(|&i| facet.incident[i]).collect())
                .collect()
        };

        for ridge_pts in ridges {
            let next = wrap(points, &sides, &facet, &ridge_pts);
            if seen.insert(next.normal.clone()) {
                queue.push_back(next);
            }
        }
        out.push(facet);
    }
    out.sort_by(|a, b| a.normal.cmp(&b.normal));
    out
}

/// The facet sharing the ridge `ridge_pts` with `facet`: rotate a hyperplane
/// about the ridge and keep the point that is furthest out, as in a 2D
/// Jarvis march in the quotient by the ridge's direction space.
fn wrap(points: &[RatVector], sides: &Sides, facet: &RawFacet, ridge_pts: &[usize]) -> RawFacet {
    let basis = affine_basis(points, ridge_pts);
    // a facet point off the ridge fixes the inner side
    let inner = *facet
        .incident
        .iter()
        .find(|i| !ridge_pts.contains(i))
        .expect("a ridge is a proper face");
    let facet_signs = sides.signs(&facet.normal, &facet.offset);
    let mut best: Option<(RatVector, Rational)> = None;
    for (c, sign) in facet_signs.iter().enumerate() {
        if *sign != Ordering::Less {
            continue;
        }
        let outside = match &best {
            None => true,
            Some((n, b)) => n.dot(&points[c]) > *b,
        };
        if outside {
            let mut through = basis.clone();
            through.push(c);
            let (mut n, mut b) = sides.hyperplane(&through).expect("independent");
            if n.dot(&points[inner]) > b {
                n = -&n;
                b = -b;
            }
            best = Some((n, b));
        }
    }
    let (normal, offset) = best.expect("a full-dimensional set has points off each facet");
    let signs = sides.signs(&normal, &offset);
    debug_assert!(signs.iter().all(|s| *s != Ordering::Greater));
    RawFacet {
        incident: (0..points.len())
            .filter(|&i| signs[i] == Ordering::Equal)
            .collect(),
        normal,
        offset,
    }
}

fn interval_facets(points: &[RatVector]) -> Vec<RawFacet> {
    let lo = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).unwrap();
    let hi = (0..points.len()).max_by(|&a, &b| points[a].cmp(&points[b])).unwrap();
    let mut out = vec![
        RawFacet {
            normal: RatVector::from_ints(&[-1]),
            offset: -points[lo][0].clone(),
            incident: vec![lo],
        },
        RawFacet {
            normal: RatVector::from_ints(&[1]),
            offset: points[hi][0].clone(),
            incident: vec![hi],
        },
    ];
    out.sort_by(|a, b| a.normal.cmp(&b.normal));
    out
}

/// A maximal affinely independent subset of `indices`, greedily in order.
fn affine_basis(points: &[RatVector], indices: &[usize]) -> Vec<usize> {
    let mut chosen = vec![indices[0]];
    let origin = &points[indices[0]];
    let mut diffs: Vec<RatVector> = Vec::new();
    for &i in &indices[1..] {
        let mut trial = diffs.clone();
        trial.push(&points[i] - origin);
        if crate::linalg::rank_of(&trial) == trial.len() {
            diffs = trial;
            chosen.push(i);
        }
    }
    chosen
}

/// First facet containing `start`, by depth-first search over affinely
/// independent `k`-subsets that include it.
fn first_facet(points: &[RatVector], sides: &Sides, start: usize) -> Option<RawFacet> {
    let k = points[0].dim();
    let others: Vec<usize> = (0..points.len()).filter(|&i| i != start).collect();
    let mut chosen = vec![start];
    search_facet(points, sides, &others, 0, k, &mut chosen)
}

fn search_facet(
    points: &[RatVector],
    sides: &Sides,
    others: &[usize],
    from: usize,
    k: usize,
    chosen: &mut Vec<usize>,
) -> Option<RawFacet> {
    if chosen.len() == k {
        return supporting(sides, points, chosen);
    }
    for pos in from..others.len() {
        chosen.push(others[pos]);
        if sides.independent(chosen) {
            if let Some(f) = search_facet(points, sides, others, pos + 1, k, chosen) {
                return Some(f);
            }
        }
        chosen.pop();
    }
    None
}

fn affinely_independent(points: &[RatVector], subset: &[usize]) -> bool {
    let origin = &points[subset[0]];
    let diffs: Vec<RatVector> = subset[1..].iter().map(|&i| &points[i] - origin).collect();
    crate::linalg::rank_of(&diffs) == diffs.len()
}

/// The hyperplane through the `k` points `subset`, with a primitive integer
/// normal of arbitrary orientation; `None` if they are affinely dependent.
fn hyperplane_through(points: &[RatVector], subset: &[usize]) -> Option<(RatVector, Rational)> {
    let k = points[0].dim();
    let origin = &points[subset[0]];
    let diffs: Vec<RatVector> = subset[1..].iter().map(|&i| &points[i] - origin).collect();
    let ns = RatMatrix::new(k, diffs).ok()?.nullspace();
    if ns.len() != 1 {
        return None;
    }
    let (normal, _) = ns[0].primitive();
    let offset = normal.dot(origin);
    Some((normal, offset))
}

fn supporting(sides: &Sides, points: &[RatVector], subset: &[usize]) -> Option<RawFacet> {
    let (mut normal, mut offset) = sides.hyperplane(subset)?;
    let signs = sides.signs(&normal, &offset);
    let pos = signs.contains(&Ordering::Greater);
    let neg = signs.contains(&Ordering::Less);
    if pos == neg {
        // both sides, or every point on the hyperplane
        return None;
    }
    if pos {
        normal = -&normal;
        offset = -offset;
    }
    Some(RawFacet {
        incident: (0..points.len())
            .filter(|&i| signs[i] == Ordering::Equal)
            .collect(),
        normal,
        offset,
    })
}
