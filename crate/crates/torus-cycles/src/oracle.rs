//! Independent ground truth: Monte Carlo simulation of the geometric graph,
//! exhaustive ER expectations for small n, exact integer determinants and
//! permanents, derangement counts, and brute-force lattice counts.
//!
//! Everything here is deliberately separate from the series and recurrence
//! code paths it is used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cycleprob::GraphModel;
use crate::error::{Error, Result};
use crate::geometry::{torus_distance_coords, BallSpec};

/// Largest order for which the exact permanent is computed (Ryser's method
/// costs 2^n · n per call).
pub const MAX_EXACT_ORDER: usize = 24;
/// Largest n for which the total ER enumeration runs (2^10 graphs at n = 5).
pub const MAX_ENUMERATION_ORDER: usize = 5;

/// Trials per parallel work item; each item owns one RNG stream, so the
/// merged result does not depend on how rayon schedules the items.
const BATCH: u64 = 1 << 14;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Symmetric 0/1 adjacency matrix with zero diagonal, stored as row bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl AdjacencyMatrix {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_EXACT_ORDER {
            return Err(Error::Capacity(format!(
                "order {n} exceeds the exact-arithmetic cap {MAX_EXACT_ORDER}"
            )));
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut m = Self::empty(n)?;
        for i in 0..n {
            m.rows[i] = ((1u32 << n) - 1) & !(1 << i);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.rows[i] >> j) & 1) as u8
    }

    pub fn set_edge(&mut self, i: usize, j: usize) {
        assert_ne!(i, j, "diagonal stays zero");
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sample a geometric graph: n uniform torus points, edges within distance r.
pub fn sample_gr(spec: &BallSpec, n: usize, seed: u64) -> Result<AdjacencyMatrix> {
    let mut rng = stream_rng(seed, 0);
    sample_gr_with(spec, n, &mut rng)
}

fn sample_gr_with(spec: &BallSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<AdjacencyMatrix> {
    let mut m = AdjacencyMatrix::empty(n)?;
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..spec.d()).map(|_| rng.random::<f64>()).collect())
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if torus_distance_coords(&points[i], &points[j], spec.sigma()) <= spec.r() {
                m.set_edge(i, j);
            }
        }
    }
    Ok(m)
}

/// Fraction of trials in which q fresh uniform points realize the labeled
/// cycle 1-2-...-q-1 (a single edge when q = 2).
pub fn mc_cycle_prob(spec: &BallSpec, q: usize, samples: u64, seed: u64) -> Result<McEstimate> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle length must be >= 2, got {q}"
        )));
    }
    let batches = samples.div_ceil(BATCH);
    let d = spec.d();
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b + 1);
            let trials = BATCH.min(samples - b * BATCH);
            let mut pts = vec![vec![0.0f64; d]; q];
            let mut hits = 0u64;
            for _ in 0..trials {
                for p in pts.iter_mut() {
                    for c in p.iter_mut() {
                        *c = rng.random::<f64>();
                    }
                }
                let cycle = if q == 2 {
                    torus_distance_coords(&pts[0], &pts[1], spec.sigma()) <= spec.r()
                } else {
                    (0..q).all(|i| {
                        torus_distance_coords(&pts[i], &pts[(i + 1) % q], spec.sigma())
                            <= spec.r()
                    })
                };
                if cycle {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(bernoulli_estimate(hits, samples, seed))
}

fn bernoulli_estimate(hits: u64, samples: u64, seed: u64) -> McEstimate {
    let mean = hits as f64 / samples as f64;
    let stderr = if samples > 1 {
        (mean * (1.0 - mean) * samples as f64 / (samples - 1) as f64).sqrt()
            / (samples as f64).sqrt()
    } else {
        0.0
    };
    McEstimate { mean, stderr, samples, seed }
}

/// Sample means of the exact determinant and permanent over sampled graphs.
pub fn mc_matrix_expectations(
    model: &GraphModel,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<(McEstimate, McEstimate)> {
    if n > MAX_EXACT_ORDER {
        return Err(Error::Capacity(format!(
            "order {n} exceeds the exact-arithmetic cap {MAX_EXACT_ORDER}"
        )));
    }
    let batches = samples.div_ceil(BATCH);
    // per-batch (Σdet, Σdet², Σper, Σper²), merged in batch order
    let sums: Vec<[f64; 4]> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b + 1);
            let trials = BATCH.min(samples - b * BATCH);
            let mut acc = [0.0f64; 4];
            for _ in 0..trials {
                let m = match model {
                    GraphModel::Er { p } => {
                        let mut m = AdjacencyMatrix::empty(n).expect("n checked above");
                        for i in 0..n {
                            for j in (i + 1)..n {
                                if rng.random::<f64>() < *p {
                                    m.set_edge(i, j);
                                }
                            }
                        }
                        m
                    }
                    GraphModel::Gr(spec) => {
                        sample_gr_with(spec, n, &mut rng).expect("n checked above")
                    }
                };
                let det = exact_det(&m) as f64;
                let per = exact_per(&m).to_f64().unwrap_or(f64::NAN);
                acc[0] += det;
                acc[1] += det * det;
                acc[2] += per;
                acc[3] += per * per;
            }
            acc
        })
        .collect();
    let mut total = [0.0f64; 4];
    for s in &sums {
        for (t, v) in total.iter_mut().zip(s) {
            *t += v;
        }
    }
    let moment_estimate = |sum: f64, sumsq: f64| {
        let nn = samples as f64;
        let mean = sum / nn;
        let var = ((sumsq - nn * mean * mean) / (nn - 1.0)).max(0.0);
        McEstimate { mean, stderr: (var / nn).sqrt(), samples, seed }
    };
    Ok((
        moment_estimate(total[0], total[1]),
        moment_estimate(total[2], total[3]),
    ))
}

/// Exact determinant by Bareiss fraction-free elimination; all intermediates
/// are minors of the 0/1 matrix and stay far inside i128.
pub fn exact_det(m: &AdjacencyMatrix) -> i128 {
    let n = m.n;
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j) as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    match n {
        0 => 1,
        _ => sign * a[n - 1][n - 1],
    }
}

/// Exact permanent by Ryser's inclusion-exclusion with Gray-code updates of
/// the row sums over the active column subset.
pub fn exact_per(m: &AdjacencyMatrix) -> i128 {
    let n = m.n;
    if n == 0 {
        return 1;
    }
    // Signed subset sums can exceed i128 above n = 22; widen there.
    if n > 22 {
        return exact_per_big(m);
    }
    let mut sums = vec![0i128; n];
    let mut total = 0i128;
    let mut gray = 0u32;
    for t in 1u32..(1 << n) {
        let j = t.trailing_zeros() as usize;
        let add = gray & (1 << j) == 0;
        gray ^= 1 << j;
        for (i, s) in sums.iter_mut().enumerate() {
            let a = ((m.rows[i] >> j) & 1) as i128;
            if add {
                *s += a;
            } else {
                *s -= a;
            }
        }
        let prod: i128 = sums.iter().product();
        if gray.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn exact_per_big(m: &AdjacencyMatrix) -> i128 {
    let n = m.n;
    let mut sums = vec![0i128; n];
    let mut total = BigInt::zero();
    let mut gray = 0u32;
    for t in 1u32..(1 << n) {
        let j = t.trailing_zeros() as usize;
        let add = gray & (1 << j) == 0;
        gray ^= 1 << j;
        for (i, s) in sums.iter_mut().enumerate() {
            let a = ((m.rows[i] >> j) & 1) as i128;
            if add {
                *s += a;
            } else {
                *s -= a;
            }
        }
        let prod: i128 = sums.iter().product();
        if gray.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    // the permanent itself is below n! and fits i128
    total.to_i128().expect("permanent of a 0/1 matrix fits i128")
}

/// Exact ER expectations by total enumeration of all labeled graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct ErExact {
    pub e_det: BigRational,
    pub e_per: BigRational,
    /// Coefficients of E det(xI + A), index = power of x.
    pub poly_lambda: Vec<BigRational>,
    /// Coefficients of E per(xI + A).
    pub poly_gamma: Vec<BigRational>,
}

/// Expectations over all 2^(n choose 2) labeled graphs, exact in rational
/// arithmetic; n <= 5.
pub fn exact_er_expectations(n: usize, p: &BigRational) -> Result<ErExact> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity(format!(
            "total enumeration is capped at n = {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let e = pairs.len();
    let q = BigRational::one() - p;
    // weight by edge count: p^e (1-p)^(E-e)
    let mut pow_p = vec![BigRational::one(); e + 1];
    let mut pow_q = vec![BigRational::one(); e + 1];
    for i in 1..=e {
        pow_p[i] = &pow_p[i - 1] * p;
        pow_q[i] = &pow_q[i - 1] * &q;
    }
    let perms = permutations(n);
    let mut poly_lambda = vec![BigRational::zero(); n + 1];
    let mut poly_gamma = vec![BigRational::zero(); n + 1];
    for mask in 0u32..(1 << e) {
        let mut m = AdjacencyMatrix::empty(n)?;
        for (b, (i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                m.set_edge(*i, *j);
            }
        }
        let edges = mask.count_ones() as usize;
        let weight = &pow_p[edges] * &pow_q[e - edges];
        // det(xI+A) = Σ_σ sign(σ) x^{fix(σ)} Π_{i moved} a_{iσ(i)}
        let (mut lam, mut gam) = (vec![BigInt::zero(); n + 1], vec![BigInt::zero(); n + 1]);
        for perm in &perms {
            let mut fixed = 0usize;
            let mut prod = 1u8;
            for (i, &pi) in perm.image.iter().enumerate() {
                if pi == i {
                    fixed += 1;
                } else {
                    prod &= m.entry(i, pi);
                }
            }
            if prod == 1 {
                let one = BigInt::one();
                gam[fixed] += &one;
                if perm.sign > 0 {
                    lam[fixed] += &one;
                } else {
                    lam[fixed] -= &one;
                }
            }
        }
        for k in 0..=n {
            poly_lambda[k] += &weight * BigRational::from(lam[k].clone());
            poly_gamma[k] += &weight * BigRational::from(gam[k].clone());
        }
    }
    Ok(ErExact {
        e_det: poly_lambda[0].clone(),
        e_per: poly_gamma[0].clone(),
        poly_lambda,
        poly_gamma,
    })
}

struct Perm {
    image: Vec<usize>,
    sign: i8,
}

fn permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    heap_permute(&mut image, n, &mut out);
    out
}

fn heap_permute(image: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(Perm {
            image: image.clone(),
            sign: permutation_sign(image),
        });
        return;
    }
    for i in 0..k {
        heap_permute(image, k - 1, out);
        if k % 2 == 0 {
            image.swap(i, k - 1);
        } else {
            image.swap(0, k - 1);
        }
    }
}

fn permutation_sign(image: &[usize]) -> i8 {
    let mut seen = vec![false; image.len()];
    let mut sign = 1i8;
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = image[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Largest argument for the derangement counters.
pub const MAX_DERANGEMENT: usize = 12;

/// Number of derangements of n elements, via the subfactorial recurrence
/// d_n = n d_{n-1} + (-1)^n.
pub fn derangements(n: usize) -> Result<u64> {
    if n > MAX_DERANGEMENT {
        return Err(Error::Capacity(format!(
            "derangement counts are capped at n = {MAX_DERANGEMENT}, got {n}"
        )));
    }
    let mut d = 1i64; // d_0
    for m in 1..=n as i64 {
        d = m * d + if m % 2 == 0 { 1 } else { -1 };
    }
    Ok(d as u64)
}

/// Derangements by direct filtering of all n! permutations; the slow
/// cross-check for [`derangements`].
pub fn derangements_enumerated(n: usize) -> Result<u64> {
    if n > 10 {
        return Err(Error::Capacity(format!(
            "permutation filtering is capped at n = 10, got {n}"
        )));
    }
    Ok(permutations(n)
        .iter()
        .filter(|p| p.image.iter().enumerate().all(|(i, &pi)| i != pi))
        .count() as u64)
}

pub const MAX_BRUTE_DIMENSION: usize = 4;
pub const MAX_BRUTE_NORM: usize = 400;

/// ψ_d(k) by scanning the integer box [-⌈√k⌉, ⌈√k⌉]^d.
pub fn psi_bruteforce(d: usize, k: usize) -> Result<u64> {
    Ok(psi_bruteforce_table(d, k)?[k])
}

/// All of ψ_d(0..=k_max) from one box scan.
pub fn psi_bruteforce_table(d: usize, k_max: usize) -> Result<Vec<u64>> {
    if d < 1 || d > MAX_BRUTE_DIMENSION || k_max > MAX_BRUTE_NORM {
        return Err(Error::Capacity(format!(
            "brute-force lattice scan is capped at d <= {MAX_BRUTE_DIMENSION}, \
             k <= {MAX_BRUTE_NORM}; got d = {d}, k = {k_max}"
        )));
    }
    let mut counts = vec![0u64; k_max + 1];
    scan_axis(d, k_max, 0, &mut counts);
    Ok(counts)
}

fn scan_axis(dims_left: usize, budget: usize, norm: usize, counts: &mut Vec<u64>) {
    if dims_left == 0 {
        counts[norm] += 1;
        return;
    }
    let mut x = 0usize;
    while norm + x * x <= budget {
        let weight = if x == 0 { 1 } else { 2 }; // ±x
        for _ in 0..weight {
            scan_axis(dims_left - 1, budget, norm + x * x, counts);
        }
        x += 1;
    }
}
