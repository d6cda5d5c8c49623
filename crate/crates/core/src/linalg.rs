//! Exact rational vectors and matrices.
//!
//! Everything here is dense: the polytopes this crate handles live in
//! dimension at most six and every verdict must be exact. Elimination runs
//! fraction-free over integers and converts to [`Rational`] at the end.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_axis` of `R^dim`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        // one reduction at the end instead of a gcd per term
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (a, b) in self.0.iter().zip(&other.0) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let tn = a.numer() * b.numer();
            if a.is_integer() && b.is_integer() {
                if den.is_one() {
                    num += tn;
                } else {
                    num += tn * &den;
                }
                continue;
            }
            let td = a.denom() * b.denom();
            if td == den {
                num += tn;
            } else {
                num = num * &td + tn * &den;
                den *= td;
            }
        }
        Rational::new(num, den)
    }

    pub fn scale(&self, factor: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|x| x * factor).collect())
    }

    /// Entries selected by `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> RatVector {
        RatVector(indices.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Appends `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> RatVector {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(Rational::zero(), extra));
        RatVector(v)
    }

    /// Positive rescaling to a primitive integer vector (coprime integer
    /// entries). Returns the rescaled vector and the positive factor used.
    /// The zero vector is returned unchanged with factor one.
    pub fn primitive(&self) -> (RatVector, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let lcm_den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let factor = Rational::new(lcm_den, g.clone());
        let out = nums
            .into_iter()
            .map(|x| Rational::from_integer(x / &g))
            .collect();
        (RatVector(out), factor)
    }

    /// Sign-normalized representative of the line through `self`: the
    /// primitive vector whose first nonzero entry is positive, plus `true`
    /// when that required flipping the orientation.
    pub fn line_key(&self) -> (RatVector, bool) {
        let (p, _) = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(first) if first.is_negative() => (-&p, true),
            _ => (p, false),
        }
    }

    /// Approximate Euclidean-free rendering for text reports.
    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl<'a> Add<&'a RatVector> for &'a RatVector {
    type Output = RatVector;
    fn add(self, rhs: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a RatVector> for &'a RatVector {
    type Output = RatVector;
    fn sub(self, rhs: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVector {
    type Output = RatVector;
    fn neg(self) -> RatVector {
        RatVector(self.0.iter().map(|x| -x).collect())
    }
}

impl FromIterator<Rational> for RatVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RatVector(iter.into_iter().collect())
    }
}

/// Dense row-major rational matrix. The column count is stored explicitly so
/// that matrices with zero rows still know their width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<RatVector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows of the reduced matrix; row `i` has a 1 in column `pivots[i]`.
    pub rows: Vec<RatVector>,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    /// Builds a matrix from rows of equal length `cols`.
    pub fn new(cols: usize, rows: Vec<RatVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.dim(),
            });
        }
        Ok(RatMatrix { cols, rows })
    }

    /// Builds a matrix from a nonempty list of rows.
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self> {
        let cols = rows.first().map(RatVector::dim).ok_or(Error::Empty)?;
        Self::new(cols, rows)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<RatVector> = rows.iter().map(|r| RatVector::from_ints(r)).collect();
        Self::from_rows(rows).expect("rectangular integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            cols: n,
            rows: (0..n).map(|i| RatVector::unit(n, i)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            cols,
            rows: vec![RatVector::zeros(cols); rows],
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.rows[i][i] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RatVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> RatVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix {
            cols: self.nrows(),
            rows: (0..self.cols).map(|j| self.column(j)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        debug_assert_eq!(v.dim(), self.cols);
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    /// `vᵀ M`, i.e. the linear combination of rows with weights `v`.
    pub fn combine_rows(&self, weights: &RatVector) -> RatVector {
        debug_assert_eq!(weights.dim(), self.nrows());
        let mut out = RatVector::zeros(self.cols);
        for (w, r) in weights.iter().zip(&self.rows) {
            if w.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += w * &r[j];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.cols, rhs.nrows());
        RatMatrix {
            cols: rhs.cols,
            rows: self
                .rows
                .iter()
                .map(|r| rhs.combine_rows(r))
                .collect(),
        }
    }

    /// Stacks the rows of `other` beneath `self`.
    pub fn stack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(RatMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Fraction-free Gauss-Jordan on rows cleared of denominators; every
    /// update divides exactly by the previous pivot, and the rationals are
    /// formed once at the end.
    pub fn rref(&self) -> Rref {
        let (mut a, pivots) = self.integer_echelon(true);
        let out = a
            .iter_mut()
            .zip(&pivots)
            .map(|(row, &p)| {
                let d = row[p].clone();
                row.drain(..)
                    .map(|x| {
                        if x.is_zero() {
                            Rational::zero()
                        } else {
                            Rational::new(x, d.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        Rref { rows: out, pivots }
    }

    /// Integer rows spanning the same space, in echelon form (reduced above
    /// the pivots too when `full`), truncated to the rank.
    fn integer_echelon(&self, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = self.rows.iter().map(integer_row).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for col in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][col].clone();
            let (head, tail) = a.split_at_mut(r);
            let (pivot_row, below) = tail.split_first_mut().expect("row r exists");
            let targets: Vec<&mut Vec<BigInt>> = if full {
                head.iter_mut().chain(below.iter_mut()).collect()
            } else {
                below.iter_mut().collect()
            };
            for row in targets {
                let f = std::mem::take(&mut row[col]);
                for j in 0..self.cols {
                    if j == col {
                        continue;
                    }
                    let x = &row[j];
                    if f.is_zero() && (x.is_zero() || piv == prev) {
                        continue;
                    }
                    let mut v = x * &piv;
                    if !f.is_zero() && !pivot_row[j].is_zero() {
                        v -= &f * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() {
                        v
                    } else {
                        let (q, rem) = v.div_rem(&prev);
                        debug_assert!(rem.is_zero(), "fraction-free step left a remainder");
                        q
                    };
                }
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.integer_echelon(false).1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let Rref { rows, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = RatVector::zeros(self.cols);
                v[free] = Rational::one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.cols,
            });
        }
        let n = self.cols;
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det *= &a[col][col];
            let inv = a[col][col].recip();
            for i in col + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] * &inv;
                #[allow(clippy::needless_range_loop)]
                for j in col..n {
                    let x = &a[col][j] * &f;
                    a[i][j] -= x;
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.cols,
            });
        }
        let n = self.cols;
        let augmented: Vec<RatVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut e = r.entries().to_vec();
                e.extend(RatVector::unit(n, i).into_entries());
                RatVector::new(e)
            })
            .collect();
        let reduced = RatMatrix {
            cols: 2 * n,
            rows: augmented,
        }
        .rref();
        if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let rows = reduced
            .rows
            .into_iter()
            .map(|r| RatVector::new(r.into_entries().split_off(n)))
            .collect();
        Ok(RatMatrix { cols: n, rows })
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &RatVector) -> Result<RatVector> {
        Ok(self.inverse()?.mul_vec(b))
    }
}

impl Mul<&RatVector> for &RatMatrix {
    type Output = RatVector;
    fn mul(self, v: &RatVector) -> RatVector {
        self.mul_vec(v)
    }
}

/// `row` scaled by the lcm of its denominators.
fn integer_row(row: &RatVector) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

/// Rank of a list of vectors (zero for an empty list).
pub fn rank_of(vectors: &[RatVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(first) => RatMatrix {
            cols: first.dim(),
            rows: vectors.to_vec(),
        }
        .rank(),
    }
}

/// Orthogonal projector `Bᵀ (B Bᵀ)⁻¹ B` onto the row space of `basis`.
pub fn orthogonal_projector(basis: &RatMatrix) -> Result<RatMatrix> {
    let gram = basis.mul(&basis.transpose());
    let gram_inv = gram.inverse().map_err(|_| Error::DependentBasis)?;
    Ok(basis.transpose().mul(&gram_inv).mul(basis))
}

/// Generalized cross product of `n - 1` vectors in `R^n`: the vector `c` with
/// `c · x = det[v_1; …; v_{n-1}; x]` for every `x`.
pub fn cross_product(vectors: &[RatVector], n: usize) -> RatVector {
    debug_assert_eq!(vectors.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<RatVector> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = if minor.is_empty() {
                Rational::one()
            } else {
                RatMatrix {
                    cols: n - 1,
                    rows: minor,
                }
                .determinant()
                .expect("square minor")
            };
            // cofactor of the last row, column j
            if (n - 1 + j).is_multiple_of(2) {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        let m = RatMatrix::from_ints(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[-1, 0, 0, -1]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(4).nullspace().is_empty());

        // columns (1,1,0,0), (0,0,1,1), (-1,0,0,-1), (0,-1,-1,0)
        let cols = RatMatrix::from_ints(&[
            &[1, 1, 0, 0],
            &[0, 0, 1, 1],
            &[-1, 0, 0, -1],
            &[0, -1, -1, 0],
        ]);
        let ns = cols.transpose().nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].line_key().0, RatVector::from_ints(&[1, 1, 1, 1]));

        let ns = RatMatrix::from_ints(&[&[1, -1]]).nullspace();
        assert_eq!(ns, vec![RatVector::from_ints(&[1, 1])]);
    }

    #[test]
    fn nullspace_of_empty_row_set_is_everything() {
        let m = RatMatrix::new(3, vec![]).unwrap();
        assert_eq!(m.nullspace().len(), 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn projector_examples() {
        let p = orthogonal_projector(&RatMatrix::from_ints(&[&[1, 0]])).unwrap();
        assert_eq!(p, RatMatrix::from_ints(&[&[1, 0], &[0, 0]]));

        let p = orthogonal_projector(&RatMatrix::from_ints(&[&[1, 1]])).unwrap();
        let half = frac(1, 2);
        let expected = RatMatrix::from_rows(vec![
            RatVector::new(vec![half.clone(), half.clone()]),
            RatVector::new(vec![half.clone(), half]),
        ])
        .unwrap();
        assert_eq!(p, expected);

        assert!(orthogonal_projector(&RatMatrix::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant().unwrap(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert_eq!(
            RatMatrix::from_ints(&[&[0, 1], &[1, 0]]).determinant().unwrap(),
            int(-1)
        );
    }

    #[test]
    fn cross_product_is_orthogonal_and_oriented() {
        let e1 = RatVector::unit(3, 0);
        let e2 = RatVector::unit(3, 1);
        assert_eq!(cross_product(&[e1, e2], 3), RatVector::unit(3, 2));
        assert_eq!(cross_product(&[], 1), RatVector::from_ints(&[1]));
    }

    #[test]
    fn primitive_and_line_key() {
        let v = RatVector::new(vec![frac(-2, 3), frac(4, 3), int(0)]);
        let (p, f) = v.primitive();
        assert_eq!(p, RatVector::from_ints(&[-1, 2, 0]));
        assert_eq!(f, frac(3, 2));
        let (k, flipped) = v.line_key();
        assert_eq!(k, RatVector::from_ints(&[1, -2, 0]));
        assert!(flipped);
    }
}
