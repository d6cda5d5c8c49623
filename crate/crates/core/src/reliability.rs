//! Simplicial families of directions and the reliability test.
//!
//! A family `u_0, …, u_m` is simplicial when it spans an `m`-dimensional space
//! and admits a dependency `Σ c_i u_i = 0` with every `c_i > 0`. A polytope is
//! a `d`-reliable cover exactly when its facet normals contain no simplicial
//! family with `d + 2` or more members.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, RatVector, Rational};
use crate::polytope::Polytope;

/// Nonzero directions with no two positively proportional. Stored as
/// primitive integer vectors in their original orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    dim: usize,
    directions: Vec<RatVector>,
}

impl DirectionSet {
    /// Scales each direction to a primitive integer vector and drops later
    /// positive multiples of earlier ones.
    pub fn new(dim: usize, directions: Vec<RatVector>) -> Result<DirectionSet> {
        let mut out: Vec<RatVector> = Vec::with_capacity(directions.len());
        for (i, u) in directions.into_iter().enumerate() {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            if u.is_zero() {
                return Err(Error::ZeroDirection(i));
            }
            let (p, _) = u.primitive();
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(DirectionSet {
            dim,
            directions: out,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<DirectionSet> {
        let dim = rows.first().ok_or(Error::Empty)?.len();
        Self::new(dim, rows.iter().map(|r| RatVector::from_ints(r)).collect())
    }

    /// Facet normals, indexed like the facets.
    pub fn from_polytope(p: &Polytope) -> DirectionSet {
        DirectionSet {
            dim: p.dim(),
            directions: p.facets().iter().map(|f| f.normal().clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[RatVector] {
        &self.directions
    }

    /// Lexicographically positive representative of the line through
    /// direction `i`, and whether it is the negation of the stored vector.
    pub fn canonical(&self, i: usize) -> (RatVector, bool) {
        self.directions[i].line_key()
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank_of(&self.directions)
    }
}

/// Indices into a [`DirectionSet`] with positive integer coefficients whose
/// weighted sum vanishes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplicialFamily {
    pub members: Vec<usize>,
    pub coefficients: Vec<Rational>,
}

impl SimplicialFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn vectors(&self, set: &DirectionSet) -> Vec<RatVector> {
        self.members
            .iter()
            .map(|&i| set.directions[i].clone())
            .collect()
    }

    /// Positive coefficients, exact zero sum, and rank one less than the size.
    pub fn verify(&self, set: &DirectionSet) -> bool {
        if self.members.len() < 2
            || self.members.len() != self.coefficients.len()
            || self.members.iter().any(|&i| i >= set.len())
            || self.coefficients.iter().any(|c| !c.is_positive())
        {
            return false;
        }
        let vs = self.vectors(set);
        let sum = vs
            .iter()
            .zip(&self.coefficients)
            .fold(RatVector::zeros(set.dim), |acc, (v, c)| &acc + &v.scale(c));
        sum.is_zero() && crate::linalg::rank_of(&vs) == vs.len() - 1
    }
}

/// Positive coefficients if `vectors` form a simplicial family.
pub fn simplicial_coefficients(vectors: &[RatVector]) -> Option<Vec<Rational>> {
    let m = vectors.len();
    if m < 2 || vectors.iter().any(RatVector::is_zero) {
        return None;
    }
    let n = vectors[0].dim();
    // columns are the vectors
    let cols = RatMatrix::new(n, vectors.to_vec()).ok()?.transpose();
    let ns = cols.nullspace();
    if ns.len() != 1 {
        return None;
    }
    let (mut c, _) = ns[0].primitive();
    if c[0].is_negative() {
        c = -&c;
    }
    c.iter()
        .all(Signed::is_positive)
        .then(|| c.into_entries())
}

/// The family formed by all of `vectors`, with members `0..len`.
pub fn is_simplicial(vectors: &[RatVector]) -> Option<SimplicialFamily> {
    simplicial_coefficients(vectors).map(|coefficients| SimplicialFamily {
        members: (0..vectors.len()).collect(),
        coefficients,
    })
}

/// Incremental echelon form for independence tests during the search.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, RatVector)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces `v` and returns the remainder with its pivot, if nonzero.
    fn reduce(&self, v: &RatVector) -> Option<(usize, RatVector)> {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                r = &r - &row.scale(&f);
            }
        }
        let p = r.iter().position(|x| !x.is_zero())?;
        let inv = r[p].recip();
        Some((p, r.scale(&inv)))
    }
}

/// Depth-first search over index sets whose proper prefixes are independent;
/// calls `visit` on every simplicial family of size in `sizes`, in
/// lexicographic order of members. Stops early when `visit` returns `false`.
fn search(
    set: &DirectionSet,
    sizes: std::ops::RangeInclusive<usize>,
    visit: &mut dyn FnMut(SimplicialFamily) -> bool,
) {
    fn go(
        set: &DirectionSet,
        sizes: &std::ops::RangeInclusive<usize>,
        chosen: &mut Vec<usize>,
        ech: &Echelon,
        visit: &mut dyn FnMut(SimplicialFamily) -> bool,
    ) -> bool {
        let start = chosen.last().map_or(0, |&i| i + 1);
        for j in start..set.len() {
            let u = &set.directions[j];
            match ech.reduce(u) {
                Some(row) => {
                    // an independent set of size s can grow into families of size >= s + 2
                    if chosen.len() + 2 <= *sizes.end() {
                        let mut next = ech.clone();
                        next.rows.push(row);
                        chosen.push(j);
                        let more = go(set, sizes, chosen, &next, visit);
                        chosen.pop();
                        if !more {
                            return false;
                        }
                    }
                }
                None => {
                    if sizes.contains(&(chosen.len() + 1)) {
                        chosen.push(j);
                        let vs: Vec<RatVector> =
                            chosen.iter().map(|&i| set.directions[i].clone()).collect();
                        let found = simplicial_coefficients(&vs).map(|coefficients| {
                            SimplicialFamily {
                                members: chosen.clone(),
                                coefficients,
                            }
                        });
                        chosen.pop();
                        if let Some(f) = found {
                            if !visit(f) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
    if set.is_empty() || sizes.is_empty() {
        return;
    }
    go(set, &sizes, &mut Vec::new(), &Echelon::new(), visit);
}

/// Every simplicial family of size at least `min_size`, sorted by size and
/// then by members.
pub fn enumerate_simplicial(set: &DirectionSet, min_size: usize) -> Vec<SimplicialFamily> {
    let mut out = Vec::new();
    search(set, min_size.max(2)..=set.dim + 1, &mut |f| {
        out.push(f);
        true
    });
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    out
}

/// The smallest family of size at least `min_size`, ties broken by members.
pub fn smallest_family(set: &DirectionSet, min_size: usize) -> Option<SimplicialFamily> {
    for size in min_size.max(2)..=set.dim + 1 {
        let mut found = None;
        search(set, size..=size, &mut |f| {
            found = Some(f);
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityVerdict {
    pub d: usize,
    pub reliable: bool,
    /// Smallest simplicial family of size `>= d + 2`, when not reliable.
    pub certificate: Option<SimplicialFamily>,
}

pub fn reliability_of_directions(set: &DirectionSet, d: usize) -> Result<ReliabilityVerdict> {
    let n = set.dim;
    if d == 0 || d >= n {
        return Err(Error::BadReliabilityDim { d, n });
    }
    let certificate = smallest_family(set, d + 2);
    Ok(ReliabilityVerdict {
        d,
        reliable: certificate.is_none(),
        certificate,
    })
}

/// Reliability of `p` as a `d`-cover, judged on its facet normals. The
/// certificate's members are facet indices of `p`.
pub fn is_reliable(p: &Polytope, d: usize) -> Result<ReliabilityVerdict> {
    reliability_of_directions(&DirectionSet::from_polytope(p), d)
}

/// Whether `p` is a parallelotope: `2n` facets in antipodal pairs with
/// independent directions, opposite facets translates of each other.
pub fn parallelotope_check(p: &Polytope) -> Result<bool> {
    let n = p.dim();
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine: p.affine_dim(),
            ambient: n,
        });
    }
    if p.facets().len() != 2 * n {
        return Ok(false);
    }
    let mut reps = Vec::new();
    for (i, f) in p.facets().iter().enumerate() {
        let Some(j) = p.facet_with_normal(&-f.normal()) else {
            return Ok(false);
        };
        if i < j {
            let side = |k: usize| {
                let verts: Vec<RatVector> = p.facets()[k]
                    .incident()
                    .iter()
                    .map(|&v| p.vertices()[v].clone())
                    .collect();
                Polytope::from_points(&verts)
            };
            if side(i)?.translation_to(&side(j)?).is_none() {
                return Ok(false);
            }
            reps.push(f.normal().clone());
        }
    }
    Ok(reps.len() == n && crate::linalg::rank_of(&reps) == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn vs(rows: &[&[i64]]) -> Vec<RatVector> {
        rows.iter().map(|r| RatVector::from_ints(r)).collect()
    }

    fn pyramid() -> Polytope {
        Polytope::from_int_points(&[&[1, 1, 0], &[1, -1, 0], &[-1, 1, 0], &[-1, -1, 0], &[0, 0, 1]])
            .unwrap()
    }

    fn cube() -> Polytope {
        let pts: Vec<RatVector> = (0..8)
            .map(|m| RatVector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        Polytope::from_points(&pts).unwrap()
    }

    #[test]
    fn simplicial_examples() {
        let f = is_simplicial(&vs(&[&[1, 0], &[-1, 0]])).unwrap();
        assert_eq!(f.coefficients, vec![int(1), int(1)]);
        let f = is_simplicial(&vs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 0, -1]])).unwrap();
        assert_eq!(f.coefficients, vec![int(1), int(1), int(2)]);
        assert!(is_simplicial(&vs(&[&[1, 0], &[0, 1], &[-1, 0]])).is_none());
        assert!(is_simplicial(&vs(&[&[1, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn cube_has_only_pairs() {
        let set = DirectionSet::from_polytope(&cube());
        assert!(enumerate_simplicial(&set, 3).is_empty());
        assert_eq!(enumerate_simplicial(&set, 2).len(), 3);
    }

    #[test]
    fn pyramid_families() {
        let set = DirectionSet::from_polytope(&pyramid());
        let fams = enumerate_simplicial(&set, 3);
        assert!(!fams.is_empty());
        assert!(fams.iter().all(|f| f.len() == 3 && f.verify(&set)));
        assert!(enumerate_simplicial(&set, 4).is_empty());
    }

    #[test]
    fn pyramid_reliability() {
        let p = pyramid();
        assert!(is_reliable(&p, 2).unwrap().reliable);
        let v = is_reliable(&p, 1).unwrap();
        assert!(!v.reliable);
        assert_eq!(v.certificate.unwrap().len(), 3);
        assert!(is_reliable(&p, 3).is_err());
    }

    #[test]
    fn simplex_is_unreliable() {
        let s = Polytope::from_int_points(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        for d in 1..3 {
            let v = is_reliable(&s, d).unwrap();
            assert_eq!(v.certificate.unwrap().len(), 4);
        }
    }

    #[test]
    fn direction_set_normalizes() {
        let set = DirectionSet::new(2, vs(&[&[2, 0], &[1, 0], &[-3, 0], &[2, 4]])).unwrap();
        assert_eq!(set.directions(), &vs(&[&[1, 0], &[-1, 0], &[1, 2]])[..]);
        assert_eq!(set.canonical(1), (RatVector::from_ints(&[1, 0]), true));
        assert_eq!(
            DirectionSet::new(2, vs(&[&[1, 0], &[0, 0]])),
            Err(Error::ZeroDirection(1))
        );
    }

    #[test]
    fn parallelotopes() {
        assert!(parallelotope_check(&cube()).unwrap());
        let shear = RatMatrix::from_ints(&[&[1, 2, 0], &[0, 1, -1], &[1, 0, 3]]);
        let sheared = crate::polytope::apply_linear(&cube(), &shear).unwrap();
        assert!(parallelotope_check(&sheared).unwrap());
        assert!(!parallelotope_check(&pyramid()).unwrap());
        let hexagon =
            Polytope::from_int_points(&[&[2, 0], &[-2, 0], &[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
                .unwrap();
        assert!(!parallelotope_check(&hexagon).unwrap());
    }
}
