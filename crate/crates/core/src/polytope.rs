//! Convex polytopes with exact rational vertices.
//!
//! A [`Polytope`] is built from a point list; it keeps the extreme points
//! (sorted lexicographically) and the derived facet list. Lower-dimensional
//! polytopes are handled inside their affine hull: their facets are relative
//! facets and the facet normals lie in the hull's direction space.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::{full_dim_facets, AffineHull};
use crate::linalg::{int, rank_of, RatMatrix, RatVector, Rational};
use crate::subspace::{is_direct_sum, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    normal: RatVector,
    offset: Rational,
    incident: Vec<usize>,
}

impl Facet {
    /// Outward normal, a primitive integer vector.
    pub fn normal(&self) -> &RatVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Indices of the vertices on this facet, ascending.
    pub fn incident(&self) -> &[usize] {
        &self.incident
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    hull: AffineHull,
}

/// Counts of what [`Polytope::from_points`] discarded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Normalization {
    pub duplicates: usize,
    pub non_extreme: usize,
}

impl Polytope {
    /// Convex hull of `points`.
    pub fn from_points(points: &[RatVector]) -> Result<Polytope> {
        Self::from_points_reporting(points).map(|(p, _)| p)
    }

    /// Like [`from_points`](Self::from_points), also reporting how many input
    /// points were duplicates or not extreme.
    pub fn from_points_reporting(points: &[RatVector]) -> Result<(Polytope, Normalization)> {
        let dim = points.first().ok_or(Error::Empty)?.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut norm = Normalization {
            duplicates: points.len() - pts.len(),
            non_extreme: 0,
        };

        let hull = AffineHull::of(&pts);
        let k = hull.dim();
        if k == 0 {
            return Ok((
                Polytope {
                    dim,
                    vertices: pts,
                    facets: Vec::new(),
                    hull,
                },
                norm,
            ));
        }

        let reduced: Vec<RatVector> = pts.iter().map(|p| hull.reduce(p)).collect();
        let raw = full_dim_facets(&reduced);

        // A point is a vertex iff the normals of the facets through it span.
        let is_vertex: Vec<bool> = (0..pts.len())
            .map(|i| {
                let active: Vec<RatVector> = raw
                    .iter()
                    .filter(|f| f.incident.binary_search(&i).is_ok())
                    .map(|f| f.normal.clone())
                    .collect();
                active.len() >= k && rank_of(&active) == k
            })
            .collect();
        let mut new_index = vec![usize::MAX; pts.len()];
        let mut vertices = Vec::new();
        for (i, p) in pts.into_iter().enumerate() {
            if is_vertex[i] {
                new_index[i] = vertices.len();
                vertices.push(p);
            }
        }
        norm.non_extreme = new_index.iter().filter(|&&i| i == usize::MAX).count();

        let lift = NormalLift::new(&hull, dim);
        let mut facets: Vec<Facet> = raw
            .into_iter()
            .map(|f| {
                let (normal, offset) = lift.apply(&f.normal, &f.offset);
                let incident = f
                    .incident
                    .iter()
                    .filter(|&&i| new_index[i] != usize::MAX)
                    .map(|&i| new_index[i])
                    .collect();
                Facet {
                    normal,
                    offset,
                    incident,
                }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        let hull = AffineHull::of(&vertices);
        Ok((
            Polytope {
                dim,
                vertices,
                facets,
                hull,
            },
            norm,
        ))
    }

    pub fn from_int_points(points: &[&[i64]]) -> Result<Polytope> {
        let pts: Vec<RatVector> = points.iter().map(|p| RatVector::from_ints(p)).collect();
        Self::from_points(&pts)
    }

    /// A single point.
    pub fn point(p: RatVector) -> Polytope {
        Self::from_points(&[p]).expect("one point")
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn affine_dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn affine_hull(&self) -> &AffineHull {
        &self.hull
    }

    /// Direction space of the affine hull, `None` for a single point.
    pub fn direction_space(&self) -> Option<Subspace> {
        if self.hull.directions.is_empty() {
            None
        } else {
            Some(Subspace::from_rows(self.hull.directions.clone()).expect("echelon rows"))
        }
    }

    /// Support function `h(u) = max_x x·u`.
    pub fn support(&self, u: &RatVector) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .max()
            .expect("a polytope has a vertex")
    }

    pub fn vertex_centroid(&self) -> RatVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let sum = self
            .vertices
            .iter()
            .fold(RatVector::zeros(self.dim), |acc, v| &acc + v);
        sum.scale(&n.recip())
    }

    /// Average of a facet's vertices; lies in the facet's relative interior.
    pub fn facet_centroid(&self, facet: usize) -> RatVector {
        let f = &self.facets[facet];
        let n = Rational::from_integer(f.incident.len().into());
        let sum = f
            .incident
            .iter()
            .fold(RatVector::zeros(self.dim), |acc, &i| &acc + &self.vertices[i]);
        sum.scale(&n.recip())
    }

    /// Index of the facet whose outward normal is a positive multiple of `u`.
    pub fn facet_with_normal(&self, u: &RatVector) -> Option<usize> {
        let (key, _) = u.primitive();
        self.facets.iter().position(|f| f.normal == key)
    }

    pub fn contains_point(&self, x: &RatVector) -> bool {
        self.hull.contains(x) && self.facets.iter().all(|f| f.normal.dot(x) <= f.offset)
    }

    pub fn translate(&self, t: &RatVector) -> Polytope {
        let vertices: Vec<RatVector> = self.vertices.iter().map(|v| v + t).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset + f.normal.dot(t),
                incident: f.incident.clone(),
            })
            .collect();
        let hull = AffineHull::of(&vertices);
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            hull,
        }
    }

    /// Homothety `factor · P` about the origin; `factor` must be positive.
    pub fn scale(&self, factor: &Rational) -> Polytope {
        assert!(factor.is_positive(), "scale factor must be positive");
        let vertices: Vec<RatVector> = self.vertices.iter().map(|v| v.scale(factor)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset * factor,
                incident: f.incident.clone(),
            })
            .collect();
        let hull = AffineHull::of(&vertices);
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            hull,
        }
    }

    /// `-P`.
    pub fn reflect(&self) -> Polytope {
        let pts: Vec<RatVector> = self.vertices.iter().map(|v| -v).collect();
        Self::from_points(&pts).expect("nonempty")
    }

    /// Same facet structure, compared as sets of (normal, offset).
    pub fn same_facets(&self, other: &Polytope) -> bool {
        let key = |p: &Polytope| {
            let mut v: Vec<(RatVector, Rational)> = p
                .facets
                .iter()
                .map(|f| (f.normal.clone(), f.offset.clone()))
                .collect();
            v.sort();
            v
        };
        self.dim == other.dim && key(self) == key(other)
    }

    /// Whether `other = self + t` for some `t`; returns that `t`.
    pub fn translation_to(&self, other: &Polytope) -> Option<RatVector> {
        if self.dim != other.dim || self.vertices.len() != other.vertices.len() {
            return None;
        }
        // both vertex lists are sorted, and translation preserves lex order
        let t = &other.vertices[0] - &self.vertices[0];
        self.vertices
            .iter()
            .zip(&other.vertices)
            .all(|(a, b)| &(a + &t) == b)
            .then_some(t)
    }
}

/// Maps a facet inequality written in pivot coordinates of an affine hull to
/// an ambient inequality whose normal lies in the hull's direction space.
struct NormalLift {
    // `Rᵀ (R Rᵀ)⁻¹` for the echelon direction rows R; None when full-dimensional
    map: Option<RatMatrix>,
    origin: RatVector,
    pivots: Vec<usize>,
}

impl NormalLift {
    fn new(hull: &AffineHull, dim: usize) -> Self {
        if hull.dim() == dim {
            return NormalLift {
                map: None,
                origin: hull.origin.clone(),
                pivots: hull.pivots.clone(),
            };
        }
        let r = RatMatrix::from_rows(hull.directions.clone()).expect("nonempty hull");
        let gram_inv = r.mul(&r.transpose()).inverse().expect("echelon rows");
        NormalLift {
            map: Some(r.transpose().mul(&gram_inv)),
            origin: hull.origin.clone(),
            pivots: hull.pivots.clone(),
        }
    }

    fn apply(&self, normal: &RatVector, offset: &Rational) -> (RatVector, Rational) {
        let Some(map) = &self.map else {
            return (normal.clone(), offset.clone());
        };
        // The linear form y ↦ normal·y on pivot coordinates equals n·x on the
        // direction space for n = Rᵀ(RRᵀ)⁻¹ normal, since R has identity pivots.
        let n = map.mul_vec(normal);
        let b = offset - normal.dot(&self.origin.select(&self.pivots)) + n.dot(&self.origin);
        let (n, factor) = n.primitive();
        (n, b * factor)
    }
}

/// Orthogonal projection of `p` onto `xi`, in `xi`-coordinates.
pub fn project(p: &Polytope, xi: &Subspace) -> Result<Polytope> {
    if xi.ambient_dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.ambient_dim(),
        });
    }
    let pts: Vec<RatVector> = p.vertices().iter().map(|v| xi.coordinates(v)).collect();
    Polytope::from_points(&pts)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let pts: Vec<RatVector> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a + b))
        .collect();
    Polytope::from_points(&pts)
}

/// Direct sum of `p` (in `xi`-coordinates) and `q` (in `eta`-coordinates).
pub fn direct_sum(p: &Polytope, q: &Polytope, xi: &Subspace, eta: &Subspace) -> Result<Polytope> {
    direct_sum_all(&[(xi.clone(), p.clone()), (eta.clone(), q.clone())])
}

/// Direct sum of factors, each given in the coordinates of its subspace.
pub fn direct_sum_all(parts: &[(Subspace, Polytope)]) -> Result<Polytope> {
    let (first, _) = parts.first().ok_or(Error::Empty)?;
    let n = first.ambient_dim();
    let subspaces: Vec<&Subspace> = parts.iter().map(|(s, _)| s).collect();
    if !is_direct_sum(&subspaces) {
        return Err(Error::NotDirectSum { ambient: n });
    }
    let mut acc = Polytope::point(RatVector::zeros(n));
    for (s, factor) in parts {
        if factor.dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                found: factor.dim(),
            });
        }
        acc = minkowski_sum(&acc, &embed_in(factor, s))?;
    }
    Ok(acc)
}

/// `factor` (in `s`-coordinates) as a polytope of the ambient space.
pub fn embed_in(factor: &Polytope, s: &Subspace) -> Polytope {
    let pts: Vec<RatVector> = factor.vertices().iter().map(|y| s.lift(y)).collect();
    Polytope::from_points(&pts).expect("nonempty")
}

/// Appends zero coordinates up to `target_dim`.
pub fn embed(p: &Polytope, target_dim: usize) -> Result<Polytope> {
    if target_dim < p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: target_dim,
        });
    }
    let pts: Vec<RatVector> = p
        .vertices()
        .iter()
        .map(|v| v.padded(target_dim - p.dim()))
        .collect();
    Polytope::from_points(&pts)
}

/// Image `ψ P` under a nonsingular linear map.
pub fn apply_linear(p: &Polytope, psi: &RatMatrix) -> Result<Polytope> {
    if !psi.is_square() || psi.ncols() != p.dim() {
        return Err(Error::NotSquare {
            rows: psi.nrows(),
            cols: psi.ncols(),
        });
    }
    if psi.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    let pts: Vec<RatVector> = p.vertices().iter().map(|v| psi.mul_vec(v)).collect();
    Polytope::from_points(&pts)
}

/// Center of symmetry, if the vertex set is symmetric about its centroid.
pub fn is_centrally_symmetric(p: &Polytope) -> Option<RatVector> {
    let c = p.vertex_centroid();
    let twice = c.scale(&int(2));
    let mut reflected: Vec<RatVector> = p.vertices().iter().map(|v| &twice - v).collect();
    reflected.sort();
    (reflected == p.vertices()).then_some(c)
}

/// Exact `(n-1)`-volume-weighted outward normal of every facet of a
/// full-dimensional polytope, in facet order.
pub fn facet_area_vectors(p: &Polytope) -> Result<Vec<RatVector>> {
    let n = p.dim();
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine: p.affine_dim(),
            ambient: n,
        });
    }
    let factorial: Rational = (1..n).fold(Rational::one(), |acc, k| acc * int(k as i64));
    let inv = factorial.recip();
    p.facets()
        .iter()
        .map(|f| {
            let pts: Vec<RatVector> = f.incident.iter().map(|&i| p.vertices[i].clone()).collect();
            let mut total = RatVector::zeros(n);
            for simplex in triangulate(&pts)? {
                let diffs: Vec<RatVector> = simplex[1..].iter().map(|x| x - &simplex[0]).collect();
                let mut c = crate::linalg::cross_product(&diffs, n);
                if c.dot(&f.normal).is_negative() {
                    c = -&c;
                }
                total = &total + &c;
            }
            Ok(total.scale(&inv))
        })
        .collect()
}

/// Minkowski's facet identity: the area-weighted outward normals sum to zero.
pub fn vector_area_check(p: &Polytope) -> Result<bool> {
    let sum = facet_area_vectors(p)?
        .iter()
        .fold(RatVector::zeros(p.dim()), |acc, a| &acc + a);
    Ok(sum.is_zero())
}

/// Pulling triangulation: cone from the first vertex over the facets that
/// miss it. Each simplex has `affine_dim + 1` points.
pub fn triangulate(points: &[RatVector]) -> Result<Vec<Vec<RatVector>>> {
    let p = Polytope::from_points(points)?;
    if p.affine_dim() == 0 {
        return Ok(vec![vec![p.vertices[0].clone()]]);
    }
    let apex = p.vertices[0].clone();
    let mut out = Vec::new();
    for f in p.facets.iter().filter(|f| !f.incident.contains(&0)) {
        let pts: Vec<RatVector> = f.incident.iter().map(|&i| p.vertices[i].clone()).collect();
        for mut s in triangulate(&pts)? {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn pyramid() -> Polytope {
        Polytope::from_int_points(&[&[1, 1, 0], &[1, -1, 0], &[-1, 1, 0], &[-1, -1, 0], &[0, 0, 1]])
            .unwrap()
    }

    fn normals(p: &Polytope) -> Vec<RatVector> {
        p.facets().iter().map(|f| f.normal().clone()).collect()
    }

    #[test]
    fn square_from_points() {
        let sq = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        assert_eq!(sq.facets().len(), 4);
        assert!(sq.facets().iter().all(|f| *f.offset() == int(1)));
        let mut ns = normals(&sq);
        ns.sort();
        assert_eq!(
            ns,
            vec![
                RatVector::from_ints(&[-1, 0]),
                RatVector::from_ints(&[0, -1]),
                RatVector::from_ints(&[0, 1]),
                RatVector::from_ints(&[1, 0]),
            ]
        );
    }

    #[test]
    fn square_pyramid_facets() {
        let p = pyramid();
        let mut ns = normals(&p);
        ns.sort();
        let mut expected: Vec<RatVector> = [[0, 0, -1], [1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]
            .iter()
            .map(|r| RatVector::from_ints(r))
            .collect();
        expected.sort();
        assert_eq!(ns, expected);
        let slant = p.facet_with_normal(&RatVector::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(*p.facets()[slant].offset(), int(1));
    }

    #[test]
    fn redundant_center_is_dropped() {
        let (sq, norm) = Polytope::from_points_reporting(&[
            RatVector::from_ints(&[1, 1]),
            RatVector::from_ints(&[1, -1]),
            RatVector::from_ints(&[-1, 1]),
            RatVector::from_ints(&[-1, -1]),
            RatVector::from_ints(&[0, 0]),
            RatVector::from_ints(&[1, 1]),
        ])
        .unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(norm.duplicates, 1);
        assert_eq!(norm.non_extreme, 1);
    }

    #[test]
    fn support_examples() {
        let unit = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(unit.support(&RatVector::from_ints(&[1, 1])), int(2));
        assert_eq!(pyramid().support(&RatVector::from_ints(&[1, 0, 1])), int(1));
        assert_eq!(pyramid().support(&RatVector::zeros(3)), int(0));
    }

    #[test]
    fn projection_examples() {
        let pts: Vec<RatVector> = (0..8)
            .map(|m| {
                RatVector::from_ints(&[
                    if m & 1 == 0 { -1 } else { 1 },
                    if m & 2 == 0 { -1 } else { 1 },
                    if m & 4 == 0 { -1 } else { 1 },
                ])
            })
            .collect();
        let cube = Polytope::from_points(&pts).unwrap();
        let sq = project(&cube, &Subspace::coordinate(3, &[0, 1]).unwrap()).unwrap();
        let expected = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        assert_eq!(sq, expected);

        let seg = project(&pyramid(), &Subspace::coordinate(3, &[2]).unwrap()).unwrap();
        assert_eq!(seg.vertices(), &[RatVector::from_ints(&[0]), RatVector::from_ints(&[1])]);

        assert_eq!(project(&pyramid(), &Subspace::full(3)).unwrap(), pyramid());
    }

    #[test]
    fn minkowski_examples() {
        let s1 = Polytope::from_int_points(&[&[0, 0], &[1, 0]]).unwrap();
        let s2 = Polytope::from_int_points(&[&[0, 0], &[0, 1]]).unwrap();
        let sq = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(minkowski_sum(&s1, &s2).unwrap(), sq);

        let t = RatVector::from_ints(&[3, -2]);
        assert_eq!(
            minkowski_sum(&sq, &Polytope::point(t.clone())).unwrap(),
            sq.translate(&t)
        );

        let tri = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(minkowski_sum(&tri, &tri).unwrap(), tri.scale(&int(2)));
    }

    #[test]
    fn direct_sum_examples() {
        let e1 = Subspace::coordinate(2, &[0]).unwrap();
        let e2 = Subspace::coordinate(2, &[1]).unwrap();
        let unit = Polytope::from_int_points(&[&[0], &[1]]).unwrap();
        let sq = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(direct_sum(&unit, &unit, &e1, &e2).unwrap(), sq);

        let plane = Subspace::coordinate(3, &[0, 1]).unwrap();
        let axis = Subspace::coordinate(3, &[2]).unwrap();
        let tri = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let prism = direct_sum(&tri, &unit, &plane, &axis).unwrap();
        assert_eq!(prism.facets().len(), 5);

        let pt = Polytope::from_int_points(&[&[5]]).unwrap();
        let moved = direct_sum(&tri, &pt, &plane, &axis).unwrap();
        assert_eq!(
            moved,
            embed(&tri, 3).unwrap().translate(&RatVector::from_ints(&[0, 0, 5]))
        );

        assert!(direct_sum(&unit, &unit, &e1, &e1).is_err());
    }

    #[test]
    fn vector_area_examples() {
        let pts: Vec<RatVector> = (0..8)
            .map(|m| RatVector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        let cube = Polytope::from_points(&pts).unwrap();
        assert!(vector_area_check(&cube).unwrap());

        let p = pyramid();
        assert!(vector_area_check(&p).unwrap());
        let areas = facet_area_vectors(&p).unwrap();
        let base = p.facet_with_normal(&RatVector::from_ints(&[0, 0, -1])).unwrap();
        assert_eq!(areas[base], RatVector::from_ints(&[0, 0, -4]));
        let slant = p.facet_with_normal(&RatVector::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(areas[slant], RatVector::from_ints(&[1, 0, 1]));

        let flat = Polytope::from_int_points(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(vector_area_check(&flat).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let pts: Vec<RatVector> = (0..8)
            .map(|m| {
                RatVector::from_ints(&[
                    2 * (m & 1) - 1,
                    2 * ((m >> 1) & 1) - 1,
                    2 * ((m >> 2) & 1) - 1,
                ])
            })
            .collect();
        let cube = Polytope::from_points(&pts).unwrap();
        assert_eq!(is_centrally_symmetric(&cube), Some(RatVector::zeros(3)));
        assert_eq!(is_centrally_symmetric(&pyramid()), None);
        let pt = RatVector::new(vec![frac(1, 3), int(2)]);
        assert_eq!(is_centrally_symmetric(&Polytope::point(pt.clone())), Some(pt));
    }

    #[test]
    fn embed_and_linear_examples() {
        let sq = Polytope::from_int_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let up = embed(&sq, 3).unwrap();
        assert_eq!(up.affine_dim(), 2);
        assert_eq!(up.facets().len(), 4);
        assert!(up.facets().iter().all(|f| f.normal()[2] == int(0)));
        let back = project(&up, &Subspace::coordinate(3, &[0, 1]).unwrap()).unwrap();
        assert_eq!(back, sq);

        let pt = Polytope::point(RatVector::from_ints(&[1]));
        assert_eq!(embed(&pt, 1).unwrap(), pt);

        assert_eq!(apply_linear(&sq, &RatMatrix::identity(2)).unwrap(), sq);
        let shear = RatMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        let para = apply_linear(&sq, &shear).unwrap();
        assert_eq!(
            para,
            Polytope::from_int_points(&[&[0, 0], &[1, 0], &[1, 1], &[2, 1]]).unwrap()
        );
        let box3 = apply_linear(
            &Polytope::from_points(
                &(0..8)
                    .map(|m| RatVector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
            &RatMatrix::diagonal(&[int(2), int(1), int(1)]),
        )
        .unwrap();
        assert_eq!(box3.support(&RatVector::from_ints(&[1, 0, 0])), int(2));
        assert!(apply_linear(&sq, &RatMatrix::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn lower_dimensional_facets_are_relative() {
        // a triangle in the plane x + y + z = 1
        let tri = Polytope::from_int_points(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(tri.affine_dim(), 2);
        assert_eq!(tri.facets().len(), 3);
        let plane = RatVector::from_ints(&[1, 1, 1]);
        for f in tri.facets() {
            assert_eq!(f.normal().dot(&plane), int(0));
            let on: Vec<_> = tri
                .vertices()
                .iter()
                .filter(|v| v.dot(f.normal()) == *f.offset())
                .collect();
            assert_eq!(on.len(), 2);
            assert!(tri.vertices().iter().all(|v| v.dot(f.normal()) <= *f.offset()));
        }
    }
}
