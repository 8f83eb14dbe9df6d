//! Special functions behind the cycle-probability series: the unnormalized
//! sinc, the gamma function at integer and half-integer arguments, Bessel
//! functions of the first kind at orders d/2, and the sum-of-squares counts
//! ψ_d(k) that index the spherical shells of the Z^d lattice.

use crate::error::{Error, Result};

/// Unnormalized sinc: sin(x)/x, with sinc(0) = 1.
///
/// ```
/// use torus_cycles::specfun::sinc;
/// assert_eq!(sinc(0.0), 1.0);
/// assert!((sinc(std::f64::consts::PI)).abs() < 1e-15);
/// ```
pub fn sinc(x: f64) -> f64 {
    // Taylor fallback near 0: the direct quotient loses accuracy to 0/0
    // cancellation.  Truncation error here is x^6/5040 < 1e-27.
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Gamma function at a = twice_a/2 for twice_a >= 1, in closed form.
///
/// Integer arguments reduce to factorials, half-integer arguments to the
/// product Γ(m + 1/2) = √π · (1/2)(3/2)···(m − 1/2).
pub fn gamma_half(twice_a: u32) -> f64 {
    assert!(twice_a >= 1, "gamma_half requires twice_a >= 1");
    if twice_a % 2 == 0 {
        // Γ(a) = (a-1)! for integer a
        let a = twice_a / 2;
        let mut acc = 1.0f64;
        for j in 2..a {
            acc *= j as f64;
        }
        acc
    } else {
        let m = (twice_a - 1) / 2;
        let mut acc = std::f64::consts::PI.sqrt();
        for j in 1..=m {
            acc *= j as f64 - 0.5;
        }
        acc
    }
}

/// A Bessel order ν = twice_nu/2 with 2ν a positive integer.
///
/// The series formulas only need orders d/2 for the torus dimension d, so the
/// constructor accepts 1 <= twice_nu <= 16 (dimensions up to 16).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfIntOrder {
    twice_nu: u32,
}

impl HalfIntOrder {
    pub const MAX_TWICE_NU: u32 = 16;

    pub fn new(twice_nu: u32) -> Result<Self> {
        if twice_nu == 0 || twice_nu > Self::MAX_TWICE_NU {
            return Err(Error::InvalidArgument(format!(
                "unsupported Bessel order 2ν = {twice_nu}; supported range is 1..={}",
                Self::MAX_TWICE_NU
            )));
        }
        Ok(Self { twice_nu })
    }

    /// Order for dimension d, i.e. ν = d/2.
    pub fn for_dimension(d: usize) -> Result<Self> {
        Self::new(u32::try_from(d).map_err(|_| {
            Error::InvalidArgument(format!("dimension {d} out of range"))
        })?)
    }

    pub fn twice_nu(&self) -> u32 {
        self.twice_nu
    }

    pub fn nu(&self) -> f64 {
        self.twice_nu as f64 / 2.0
    }

    fn is_integer(&self) -> bool {
        self.twice_nu % 2 == 0
    }
}

/// Crossover between the ascending series and recurrence-based evaluation.
/// Below this the alternating series loses at most ~3 digits to cancellation,
/// which keeps the result within the 1e-12 relative target.
const SERIES_CUTOFF: f64 = 9.0;

/// Bessel function of the first kind J_ν(x) for ν = twice_nu/2, x >= 0.
///
/// Half-integer orders use the closed trigonometric forms of J_{1/2} and
/// J_{3/2} with upward recurrence; integer orders use the ascending series
/// for small x and a normalized downward (Miller) recurrence for large x.
///
/// ```
/// use torus_cycles::specfun::{bessel_j, HalfIntOrder};
/// let half = HalfIntOrder::new(1).unwrap();
/// let x = std::f64::consts::FRAC_PI_2;
/// // J_{1/2}(x) = sqrt(2/(πx)) sin x
/// assert!((bessel_j(half, x).unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-15);
/// ```
pub fn bessel_j(order: HalfIntOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bessel_j requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0); // J_ν(0) = 0 for every supported ν > 0
    }
    if x < SERIES_CUTOFF {
        return Ok(bessel_series(order, x));
    }
    if order.is_integer() {
        if x >= ASYMPTOTIC_CUTOFF {
            Ok(bessel_asymptotic(order, x))
        } else {
            Ok(bessel_miller(order.twice_nu / 2, x))
        }
    } else {
        Ok(bessel_half_upward(order.twice_nu, x))
    }
}

/// Above this the Hankel asymptotic expansion reaches ~1e-13 even for the
/// largest supported order (ν = 8, μ = 256).
const ASYMPTOTIC_CUTOFF: f64 = 40.0;

/// Hankel's large-argument expansion
/// J_ν(x) ≈ sqrt(2/(πx)) [P cos χ − Q sin χ], χ = x − νπ/2 − π/4,
/// truncated at the smallest term.
fn bessel_asymptotic(order: HalfIntOrder, x: f64) -> f64 {
    let mu = order.nu() * order.nu() * 4.0;
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut a = 1.0f64; // running |a_k|, a_0 = 1
    let mut prev = f64::INFINITY;
    for k in 1u32..24 {
        let odd = 2 * k - 1;
        a *= (mu - (odd * odd) as f64) / (k as f64 * 8.0 * x);
        if a.abs() >= prev {
            break; // asymptotic series started diverging
        }
        prev = a.abs();
        let signed = if (k / 2) % 2 == 0 { a } else { -a };
        if k % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if a.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - order.nu() * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Ascending series J_ν(x) = (x/2)^ν Σ_m (-x²/4)^m / (m! Γ(ν+m+1)).
fn bessel_series(order: HalfIntOrder, x: f64) -> f64 {
    let nu = order.nu();
    let mut term = (x / 2.0).powf(nu) / gamma_half(order.twice_nu + 2);
    let mut sum = term;
    let w = -x * x / 4.0;
    for m in 1..200 {
        term *= w / (m as f64 * (nu + m as f64));
        sum += term;
        if term.abs() < sum.abs() * 1e-18 + 1e-300 {
            break;
        }
    }
    sum
}

/// Half-integer orders at large x: exact trig seeds plus upward recurrence,
/// stable here because every supported ν is below the cutoff argument.
fn bessel_half_upward(twice_nu: u32, x: f64) -> f64 {
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    let mut jm = amp * s; // J_{1/2}
    if twice_nu == 1 {
        return jm;
    }
    let mut j = amp * (s / x - c); // J_{3/2}
    let mut tn = 3; // current order 2ν
    while tn < twice_nu {
        let next = (tn as f64 / x) * j - jm;
        jm = j;
        j = next;
        tn += 2;
    }
    j
}

/// Integer orders at large x: Miller's downward recurrence, normalized with
/// J_0(x) + 2 Σ_k J_{2k}(x) = 1.
fn bessel_miller(n: u32, x: f64) -> f64 {
    // Start far enough above the turning point that the seed error has
    // decayed below f64 resolution by the time the recursion reaches n.
    let start = (x.max(n as f64) + 15.0 * x.cbrt() + 30.0) as usize;
    let start = start + start % 2; // even start keeps the norm bookkeeping simple
    let mut jp = 0.0f64;
    let mut j = 1e-30f64;
    let mut norm = 0.0f64;
    let mut result = 0.0f64;
    for m in (0..=start).rev() {
        let jm = (2.0 * (m as f64 + 1.0) / x) * j - jp;
        jp = j;
        j = jm;
        if m % 2 == 0 {
            norm += if m == 0 { j } else { 2.0 * j };
        }
        if m == n as usize {
            result = j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    result / norm
}

/// The counts ψ_d(0..=K): ψ_d(k) is the number of x in Z^d with ‖x‖² = k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCountTable {
    d: usize,
    counts: Vec<u64>,
}

impl LatticeCountTable {
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts[k]
    }
}

/// Sum-of-d-squares representation counts ψ_d(0), ..., ψ_d(k_max).
///
/// Built by the shell recurrence
/// ψ_d(k) = ψ_{d-1}(k) + 2 Σ_{1<=m<=⌊√k⌋} ψ_{d-1}(k - m²)
/// from the one-dimensional base case ψ_1(0)=1, ψ_1(m²)=2, else 0.
///
/// ```
/// use torus_cycles::specfun::psi_counts;
/// assert_eq!(psi_counts(2, 1).counts(), &[1, 4]);
/// assert_eq!(psi_counts(1, 4).counts(), &[1, 2, 0, 0, 2]);
/// ```
pub fn psi_counts(d: usize, k_max: usize) -> LatticeCountTable {
    assert!(d >= 1, "psi_counts requires d >= 1");
    let mut counts = vec![0u64; k_max + 1];
    counts[0] = 1;
    let mut m = 1usize;
    while m * m <= k_max {
        counts[m * m] = 2;
        m += 1;
    }
    for _ in 2..=d {
        counts = next_dimension(&counts);
    }
    LatticeCountTable { d, counts }
}

fn next_dimension(prev: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; prev.len()];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut s = prev[k];
        let mut m = 1usize;
        while m * m <= k {
            s += 2 * prev[k - m * m];
            m += 1;
        }
        *slot = s;
    }
    out
}
