//! Named example bodies and seeded random generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{int, RatMatrix, RatVector};
use crate::polytope::{apply_linear, direct_sum_all, Polytope};
use crate::reliability::DirectionSet;
use crate::subspace::Subspace;

const MAX_RETRIES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Example {
    Polytope(Polytope),
    Directions(DirectionSet),
}

/// Every name accepted by [`named`].
pub fn names() -> Vec<String> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push(format!("cube-{n}"));
    }
    for n in 2..=5 {
        out.push(format!("standard-simplex-{n}"));
    }
    for n in 2..=4 {
        out.push(format!("sheared-box-{n}"));
    }
    for s in [
        "square-pyramid",
        "octahedron",
        "cross-polytope-4",
        "hexagon",
        "hexagonal-prism",
        "triangular-prism",
        "rhombic-dodecahedron",
        "q-directions",
    ] {
        out.push(s.to_string());
    }
    out
}

pub fn named(name: &str) -> Result<Example> {
    let unknown = || Error::UnknownExample(name.to_string());
    let sized = |prefix: &str, lo: usize, hi: usize| -> Option<usize> {
        let n: usize = name.strip_prefix(prefix)?.parse().ok()?;
        (lo..=hi).contains(&n).then_some(n)
    };
    if let Some(n) = sized("cube-", 2, 5) {
        return Ok(Example::Polytope(cube(n)));
    }
    if let Some(n) = sized("standard-simplex-", 2, 5) {
        return Ok(Example::Polytope(standard_simplex(n)));
    }
    if let Some(n) = sized("sheared-box-", 2, 4) {
        return Ok(Example::Polytope(sheared_box(n)));
    }
    let p = match name {
        "square-pyramid" => square_pyramid(),
        "octahedron" => cross_polytope(3),
        "cross-polytope-4" => cross_polytope(4),
        "hexagon" => hexagon(),
        "hexagonal-prism" => hexagonal_prism(),
        "triangular-prism" => triangular_prism(),
        "rhombic-dodecahedron" => rhombic_dodecahedron(),
        "q-directions" => return Ok(Example::Directions(q_directions())),
        _ => return Err(unknown()),
    };
    Ok(Example::Polytope(p))
}

/// Like [`named`] but only for polytopes.
pub fn named_polytope(name: &str) -> Result<Polytope> {
    match named(name)? {
        Example::Polytope(p) => Ok(p),
        Example::Directions(_) => Err(Error::UnknownExample(format!("{name} (direction set)"))),
    }
}

fn from_rows(rows: &[Vec<i64>]) -> Polytope {
    let pts: Vec<RatVector> = rows.iter().map(|r| RatVector::from_ints(r)).collect();
    Polytope::from_points(&pts).expect("nonempty")
}

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> Polytope {
    let rows: Vec<Vec<i64>> = (0..1u32 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect())
        .collect();
    from_rows(&rows)
}

/// `conv{0, e_1, …, e_n}`.
pub fn standard_simplex(n: usize) -> Polytope {
    let mut rows = vec![vec![0; n]];
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        rows.push(r);
    }
    from_rows(&rows)
}

/// `conv{±e_i}`.
pub fn cross_polytope(n: usize) -> Polytope {
    let mut rows = Vec::new();
    for i in 0..n {
        for s in [-1, 1] {
            let mut r = vec![0; n];
            r[i] = s;
            rows.push(r);
        }
    }
    from_rows(&rows)
}

/// A square with a point above its center.
pub fn square_pyramid() -> Polytope {
    from_rows(&[
        vec![1, 1, 0],
        vec![1, -1, 0],
        vec![-1, 1, 0],
        vec![-1, -1, 0],
        vec![0, 0, 1],
    ])
}

/// Centrally symmetric hexagon with vertices `(±2, 0)`, `(±1, ±1)`.
pub fn hexagon() -> Polytope {
    from_rows(&[
        vec![2, 0],
        vec![-2, 0],
        vec![1, 1],
        vec![1, -1],
        vec![-1, 1],
        vec![-1, -1],
    ])
}

/// [`hexagon`] times `[-1, 1]`.
pub fn hexagonal_prism() -> Polytope {
    let hex = [[2, 0], [-2, 0], [1, 1], [1, -1], [-1, 1], [-1, -1]];
    let rows: Vec<Vec<i64>> = hex
        .iter()
        .flat_map(|h| [-1, 1].map(|z| vec![h[0], h[1], z]))
        .collect();
    from_rows(&rows)
}

/// `conv{0, e_1, e_2} × [0, 1]`.
pub fn triangular_prism() -> Polytope {
    from_rows(&[
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, 0, 1],
        vec![0, 1, 1],
    ])
}

/// Twelve rhombic faces; vertices `(±1, ±1, ±1)` and `±2e_i`.
pub fn rhombic_dodecahedron() -> Polytope {
    let mut rows: Vec<Vec<i64>> = (0..8)
        .map(|m| (0..3).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect())
        .collect();
    for i in 0..3 {
        for s in [-2, 2] {
            let mut r = vec![0; 3];
            r[i] = s;
            rows.push(r);
        }
    }
    from_rows(&rows)
}

/// `[0, 2] × [0, 1]^{n-1}` under the shear `x_i += x_{i+1}`.
pub fn sheared_box(n: usize) -> Polytope {
    let rows: Vec<Vec<i64>> = (0..1u32 << n)
        .map(|m| {
            (0..n)
                .map(|i| (m >> i & 1) as i64 * if i == 0 { 2 } else { 1 })
                .collect()
        })
        .collect();
    let mut shear = RatMatrix::identity(n).into_rows();
    for (i, row) in shear.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = int(1);
    }
    apply_linear(&from_rows(&rows), &RatMatrix::from_rows(shear).unwrap()).expect("unimodular")
}

/// The twelve vectors `±(e_i + e_j)`, `i < j`, in `R^4`.
pub fn q_directions() -> DirectionSet {
    let mut dirs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for s in [1, -1] {
                let mut v = vec![0; 4];
                v[i] = s;
                v[j] = s;
                dirs.push(RatVector::from_ints(&v));
            }
        }
    }
    DirectionSet::new(4, dirs).expect("nonzero")
}

fn int_point(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> RatVector {
    (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

/// Hull of `vertex_count` random integer points in `[-bound, bound]^n`,
/// resampled until full-dimensional.
pub fn random_polytope(seed: u64, n: usize, vertex_count: usize, bound: i64) -> Result<Polytope> {
    if vertex_count < n + 1 || n == 0 || bound < 1 {
        return Err(Error::InvalidArgument(format!(
            "{vertex_count} points in dimension {n} with bound {bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let pts: Vec<RatVector> = (0..vertex_count).map(|_| int_point(&mut rng, n, bound)).collect();
        let p = Polytope::from_points(&pts)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// Hull of `±v` over `pair_count` random integer vectors `v`.
pub fn random_symmetric_polytope(
    seed: u64,
    n: usize,
    pair_count: usize,
    bound: i64,
) -> Result<Polytope> {
    if pair_count < n || n == 0 || bound < 1 {
        return Err(Error::InvalidArgument(format!(
            "{pair_count} pairs in dimension {n} with bound {bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let mut pts = Vec::with_capacity(2 * pair_count);
        for _ in 0..pair_count {
            let v = int_point(&mut rng, n, bound);
            pts.push(-&v);
            pts.push(v);
        }
        let p = Polytope::from_points(&pts)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// Nonsingular integer matrix with entries in `[-bound, bound]`.
pub fn random_linear_map(seed: u64, n: usize, bound: i64) -> Result<RatMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let rows: Vec<RatVector> = (0..n).map(|_| int_point(&mut rng, n, bound)).collect();
        let m = RatMatrix::from_rows(rows)?;
        if m.rank() == n {
            return Ok(m);
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A random `n`-dimensional subspace decomposition of `R^{Σ dims}` with the
/// given block sizes; coordinate blocks when `sheared` is false.
pub fn random_decomposition(seed: u64, dims: &[usize], sheared: bool) -> Result<Vec<Subspace>> {
    let n: usize = dims.iter().sum();
    let map = if sheared {
        random_linear_map(seed, n, 2)?
    } else {
        RatMatrix::identity(n)
    };
    let mut out = Vec::new();
    let mut start = 0;
    for &d in dims {
        let rows: Vec<RatVector> = (start..start + d).map(|i| map.row(i).clone()).collect();
        start += d;
        out.push(Subspace::from_rows(rows)?);
    }
    Ok(out)
}

/// Direct sum of random factors over a random decomposition. Factors are
/// centrally symmetric when `symmetric` is set.
pub fn random_direct_sum(
    seed: u64,
    dims: &[usize],
    sheared: bool,
    symmetric: bool,
    bound: i64,
) -> Result<(Vec<(Subspace, Polytope)>, Polytope)> {
    let subspaces = random_decomposition(seed, dims, sheared)?;
    let mut parts = Vec::new();
    for (i, (s, &d)) in subspaces.into_iter().zip(dims).enumerate() {
        let fseed = seed.wrapping_mul(31).wrapping_add(i as u64 + 1);
        let factor = if symmetric {
            random_symmetric_polytope(fseed, d, d + (i % 2), bound)?
        } else {
            random_polytope(fseed, d, d + 2, bound)?
        };
        parts.push((s, factor));
    }
    let p = direct_sum_all(&parts)?;
    Ok((parts, p))
}

/// Named polytopes and seeded random ones of dimension `2..=max_dim`,
/// labelled for reporting.
pub fn standard_corpus(max_dim: usize) -> Result<Vec<(String, Polytope)>> {
    let mut out = Vec::new();
    for name in names() {
        if let Ok(Example::Polytope(p)) = named(&name) {
            if p.dim() <= max_dim {
                out.push((name, p));
            }
        }
    }
    for n in 2..=max_dim.min(4) {
        let extra = if n == 4 { 3 } else { 5 };
        for seed in 0..30u64 {
            let count = n + 1 + (seed as usize % extra);
            out.push((
                format!("random-{n}d-s{seed}"),
                random_polytope(seed, n, count, 4)?,
            ));
        }
        for seed in 0..12u64 {
            let pairs = n + (seed as usize % 2);
            out.push((
                format!("symmetric-{n}d-s{seed}"),
                random_symmetric_polytope(seed, n, pairs, 4)?,
            ));
        }
        for seed in 0..10u64 {
            let map = random_linear_map(seed, n, 3)?;
            out.push((format!("parallelotope-{n}d-s{seed}"), apply_linear(&cube(n), &map)?));
        }
    }
    let splits: [&[usize]; 5] = [&[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1]];
    for (k, dims) in splits.iter().enumerate() {
        if dims.iter().sum::<usize>() > max_dim {
            continue;
        }
        for seed in 0..6u64 {
            let (_, p) = random_direct_sum(seed * 10 + k as u64, dims, seed % 2 == 1, seed % 3 == 0, 3)?;
            out.push((format!("sum-{dims:?}-s{seed}"), p));
        }
    }
    Ok(out)
}

/// Centrally symmetric polytopes in dimensions 3 and 4: random hulls of
/// `±v` and direct sums of symmetric factors under random linear maps.
pub fn symmetric_corpus(count: usize) -> Result<Vec<(String, Polytope)>> {
    let splits: [&[usize]; 5] = [&[2, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1], &[3, 1]];
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let name;
        let p = match seed % 3 {
            0 | 1 => {
                let n = 3 + (seed as usize / 3) % 2;
                name = format!("symmetric-{n}d-s{seed}");
                random_symmetric_polytope(seed, n, n + (seed as usize % 2), 3)?
            }
            _ => {
                let dims = splits[(seed as usize / 3) % splits.len()];
                name = format!("symmetric-sum-{dims:?}-s{seed}");
                random_direct_sum(seed, dims, true, true, 3)?.1
            }
        };
        out.push((name, p));
        seed += 1;
    }
    Ok(out)
}
