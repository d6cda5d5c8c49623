//! Direct-sum decomposition of a polytope read off its facet normals.
//!
//! The facet normals split into the connected components of their linear
//! matroid: two normals are linked when some minimal dependency (circuit)
//! contains both. The spans of the components form a direct sum of the whole
//! space, and the polytope is the direct sum of its projections along them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, RatVector};
use crate::polytope::{direct_sum_all, is_centrally_symmetric, Polytope};
use crate::reliability::{is_reliable, DirectionSet};
use crate::subspace::{is_direct_sum, Subspace};

/// A group of directions together with their span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub members: Vec<usize>,
    pub span: Subspace,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

/// One summand of a decomposition: `polytope` in the coordinates of `subspace`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub subspace: Subspace,
    pub polytope: Polytope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub dim: usize,
    pub components: Vec<Component>,
    pub factors: Option<Vec<Factor>>,
    /// `d ↦ ` whether every component has dimension at most `d`, for `1 <= d < dim`.
    pub decomposable: BTreeMap<usize, bool>,
}

impl DecompositionReport {
    fn new(dim: usize, components: Vec<Component>, factors: Option<Vec<Factor>>) -> Self {
        let widest = components.iter().map(Component::dim).max().unwrap_or(0);
        let decomposable = (1..dim).map(|d| (d, widest <= d)).collect();
        DecompositionReport {
            dim,
            components,
            factors,
            decomposable,
        }
    }

    pub fn max_component_dim(&self) -> usize {
        self.components.iter().map(Component::dim).max().unwrap_or(0)
    }

    pub fn component_dims(&self) -> Vec<usize> {
        self.components.iter().map(Component::dim).collect()
    }

    pub fn is_decomposable(&self, d: usize) -> bool {
        self.max_component_dim() <= d
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of the directions' linear matroid, ordered by their
/// smallest member. Errors unless the directions span the ambient space.
pub fn normal_components(set: &DirectionSet) -> Result<Vec<Component>> {
    let n = set.dim();
    let dirs = set.directions();
    let rank = set.rank();
    if rank != n {
        return Err(Error::NotSpanning { rank, ambient: n });
    }

    // greedy basis; every other direction joins the basis elements of its
    // fundamental circuit
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<RatVector> = Vec::new();
    for (i, u) in dirs.iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(u.clone());
        if crate::linalg::rank_of(&trial) == trial.len() {
            basis_rows = trial;
            basis_idx.push(i);
        }
        if basis_rows.len() == n {
            break;
        }
    }
    let to_basis = RatMatrix::from_rows(basis_rows)?.transpose().inverse()?;
    let mut uf = UnionFind::new(dirs.len());
    for (i, u) in dirs.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let coords = to_basis.mul_vec(u);
        for (pos, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                uf.union(i, basis_idx[pos]);
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..dirs.len() {
        let root = uf.find(i);
        groups.entry(root).or_default().push(i);
    }
    let components: Vec<Component> = groups
        .into_values()
        .map(|members| {
            let vs: Vec<RatVector> = members.iter().map(|&i| dirs[i].clone()).collect();
            let rows = RatMatrix::new(n, vs).expect("common dimension").rref().rows;
            Component {
                members,
                span: Subspace::from_rows(rows).expect("echelon rows are independent"),
            }
        })
        .collect();

    let spans: Vec<&Subspace> = components.iter().map(|c| &c.span).collect();
    let total: usize = spans.iter().map(|s| s.dim()).sum();
    if total != n || !is_direct_sum(&spans) {
        return Err(Error::NotDirectSum { ambient: n });
    }
    Ok(components)
}

/// Components of a bare direction set, without factors.
pub fn decompose_directions(set: &DirectionSet) -> Result<DecompositionReport> {
    Ok(DecompositionReport::new(
        set.dim(),
        normal_components(set)?,
        None,
    ))
}

/// Components of a full-dimensional polytope's normals and its factors.
pub fn decompose(p: &Polytope) -> Result<DecompositionReport> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine: p.affine_dim(),
            ambient: p.dim(),
        });
    }
    let components = normal_components(&DirectionSet::from_polytope(p))?;
    let factors = extract_factors(p, &components)?;
    Ok(DecompositionReport::new(p.dim(), components, Some(factors)))
}

pub fn is_decomposable(p: &Polytope, d: usize) -> Result<(bool, DecompositionReport)> {
    let report = decompose(p)?;
    Ok((report.is_decomposable(d), report))
}

/// Splits `p` along `components`.
///
/// Let `N` stack the component span bases. A normal in block `i` only sees
/// the block-`i` coordinates of `Nx`, so `N p` is the product of its block
/// projections `F_i`, and `p = Σ E_iᵀ F_i` where the rows of `E_i` are the
/// block-`i` columns of `N⁻¹`. The result is checked by rebuilding `p`.
pub fn extract_factors(p: &Polytope, components: &[Component]) -> Result<Vec<Factor>> {
    let rows: Vec<RatVector> = components
        .iter()
        .flat_map(|c| c.span.basis().rows().iter().cloned())
        .collect();
    let n = p.dim();
    if rows.len() != n {
        return Err(Error::NotDirectSum { ambient: n });
    }
    let big_n = RatMatrix::from_rows(rows)?;
    let inv_t = big_n.inverse()?.transpose();
    let images: Vec<RatVector> = p.vertices().iter().map(|v| big_n.mul_vec(v)).collect();

    let mut factors = Vec::with_capacity(components.len());
    let mut start = 0;
    for c in components {
        let idx: Vec<usize> = (start..start + c.dim()).collect();
        start += c.dim();
        let subspace = Subspace::from_rows(idx.iter().map(|&i| inv_t.row(i).clone()).collect())?;
        let pts: Vec<RatVector> = images.iter().map(|z| z.select(&idx)).collect();
        factors.push(Factor {
            subspace,
            polytope: Polytope::from_points(&pts)?,
        });
    }

    let parts: Vec<(Subspace, Polytope)> = factors
        .iter()
        .map(|f| (f.subspace.clone(), f.polytope.clone()))
        .collect();
    if direct_sum_all(&parts)?.translation_to(p).is_none() {
        return Err(Error::ReconstructionFailed);
    }
    Ok(factors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub checked: usize,
    /// `(index, reliable, decomposable)` for members where the two differ.
    pub violations: Vec<(usize, bool, bool)>,
    pub reliable_count: usize,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For centrally symmetric polytopes of dimension at least 3, compares
/// 2-reliability with 2-decomposability member by member.
pub fn cross_check_2iff2(corpus: &[Polytope]) -> Result<CrossCheckReport> {
    let mut violations = Vec::new();
    let mut reliable_count = 0;
    for (i, p) in corpus.iter().enumerate() {
        if is_centrally_symmetric(p).is_none() {
            return Err(Error::NotCentrallySymmetric(i));
        }
        let reliable = is_reliable(p, 2)?.reliable;
        let (decomposable, _) = is_decomposable(p, 2)?;
        if reliable {
            reliable_count += 1;
        }
        if reliable != decomposable {
            violations.push((i, reliable, decomposable));
        }
    }
    Ok(CrossCheckReport {
        checked: corpus.len(),
        violations,
        reliable_count,
    })
}
