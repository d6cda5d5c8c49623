use crate::error::{Error, Result};
use crate::linalg::{orthogonal_projector, RatMatrix, RatVector};

/// A `d`-dimensional linear subspace of `R^n`, given by `d` independent rows.
///
/// Points of the subspace are addressed by *coordinates* `y ∈ R^d` with
/// `x = Bᵀ y`; the coordinates of the orthogonal projection of an arbitrary
/// `x` are `(B Bᵀ)⁻¹ B x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: RatMatrix,
    gram_inv: RatMatrix,
}

impl Subspace {
    pub fn new(basis: RatMatrix) -> Result<Self> {
        let (d, n) = (basis.nrows(), basis.ncols());
        if d == 0 || d > n {
            return Err(Error::BadSubspaceDim { dim: d, ambient: n });
        }
        let gram_inv = basis
            .mul(&basis.transpose())
            .inverse()
            .map_err(|_| Error::DependentBasis)?;
        Ok(Subspace { basis, gram_inv })
    }

    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self> {
        Self::new(RatMatrix::from_rows(rows)?)
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(n: usize, axes: &[usize]) -> Result<Self> {
        Self::from_rows(axes.iter().map(|&a| RatVector::unit(n, a)).collect())
    }

    pub fn full(n: usize) -> Self {
        Self::new(RatMatrix::identity(n)).expect("identity basis")
    }

    /// The hyperplane `u⊥`.
    pub fn orthogonal_to(u: &RatVector) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroDirection(0));
        }
        let rows = RatMatrix::from_rows(vec![u.clone()])?.nullspace();
        if rows.is_empty() {
            return Err(Error::BadSubspaceDim {
                dim: 0,
                ambient: u.dim(),
            });
        }
        Self::from_rows(rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Coordinates of the orthogonal projection of `x`.
    pub fn coordinates(&self, x: &RatVector) -> RatVector {
        self.gram_inv.mul_vec(&self.basis.mul_vec(x))
    }

    /// `B x`: the coordinates of the projection of `x` under the linear map
    /// `y ↦ B Bᵀ y`. Integer for integer input, and containment of shadows
    /// is unaffected by the map.
    pub fn dual_coordinates(&self, x: &RatVector) -> RatVector {
        self.basis.mul_vec(x)
    }

    /// The ambient point `Bᵀ y` with coordinates `y`.
    pub fn lift(&self, y: &RatVector) -> RatVector {
        self.basis.combine_rows(y)
    }

    /// Orthogonal projection of `x`, as an ambient vector.
    pub fn project_point(&self, x: &RatVector) -> RatVector {
        self.lift(&self.coordinates(x))
    }

    pub fn projector(&self) -> RatMatrix {
        orthogonal_projector(&self.basis).expect("independent basis")
    }

    pub fn contains(&self, v: &RatVector) -> bool {
        self.project_point(v) == *v
    }

    /// `None` when the subspace is the whole space.
    pub fn orthogonal_complement(&self) -> Option<Subspace> {
        let rows = self.basis.nullspace();
        if rows.is_empty() {
            None
        } else {
            Some(Self::from_rows(rows).expect("nullspace basis is independent"))
        }
    }

    pub fn is_orthogonal_to(&self, other: &Subspace) -> bool {
        self.basis
            .rows()
            .iter()
            .all(|a| other.basis.rows().iter().all(|b| num_traits::Zero::is_zero(&a.dot(b))))
    }

    /// The same subspace inside `R^{n + extra}` (zero-padded basis).
    pub fn padded(&self, extra: usize) -> Subspace {
        Self::from_rows(self.basis.rows().iter().map(|r| r.padded(extra)).collect())
            .expect("padding preserves independence")
    }
}

/// Checks that the given subspaces are jointly independent, i.e. their sum is direct.
pub fn is_direct_sum(parts: &[&Subspace]) -> bool {
    let Some(first) = parts.first() else {
        return true;
    };
    let n = first.ambient_dim();
    if parts.iter().any(|s| s.ambient_dim() != n) {
        return false;
    }
    let rows: Vec<RatVector> = parts
        .iter()
        .flat_map(|s| s.basis.rows().iter().cloned())
        .collect();
    let total = rows.len();
    total <= n && crate::linalg::rank_of(&rows) == total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn coordinates_and_lift_round_trip_on_subspace() {
        let s = Subspace::from_rows(vec![RatVector::from_ints(&[1, 1, 0])]).unwrap();
        let y = RatVector::from_ints(&[3]);
        assert_eq!(s.coordinates(&s.lift(&y)), y);
        let x = RatVector::from_ints(&[2, 0, 5]);
        assert_eq!(s.coordinates(&x), RatVector::new(vec![int(1)]));
        assert!(s.contains(&RatVector::from_ints(&[2, 2, 0])));
        assert!(!s.contains(&x));
    }

    #[test]
    fn rejects_dependent_or_empty_bases() {
        assert_eq!(
            Subspace::from_rows(vec![RatVector::from_ints(&[1, 2]), RatVector::from_ints(&[2, 4])]),
            Err(Error::DependentBasis)
        );
        assert!(Subspace::new(RatMatrix::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn complement_and_hyperplane() {
        let u = RatVector::from_ints(&[1, 1, 1]);
        let h = Subspace::orthogonal_to(&u).unwrap();
        assert_eq!(h.dim(), 2);
        let line = Subspace::from_rows(vec![u]).unwrap();
        assert!(h.is_orthogonal_to(&line));
        assert!(is_direct_sum(&[&h, &line]));
        assert!(Subspace::full(3).orthogonal_complement().is_none());
    }
}
