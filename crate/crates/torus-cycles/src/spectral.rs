//! Expected characteristic and permanental polynomials of xI + A over the
//! random adjacency matrix A, expected elementary symmetric functions of the
//! eigenvalues, expected Hamilton-cycle counts, and threshold solvers.
//!
//! The recurrences multiply factorial ratios near 1e17 into cycle
//! probabilities, so all coefficient arithmetic is exact rational with the
//! inputs and intermediate levels rounded to a configurable number of
//! significand bits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cycleprob::{theta, GraphModel, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::geometry::{max_edge_probability, r_from_p, Sigma};

/// Default significand width for recurrence arithmetic.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Which polynomial a coefficient sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    /// Λ̄: expectation of det(xI + A); alternating cycle signs.
    Lambda,
    /// Γ̄: expectation of per(xI + A); all cycle terms positive.
    Gamma,
}

/// Where the cycle probabilities Θ(q) come from.
#[derive(Debug, Clone)]
pub enum ThetaSource {
    /// Computed from the model (closed form or series).
    Model(GraphModel),
    /// Exact rational ER probabilities Θ(2) = p, Θ(q) = p^q.
    ExactEr(BigRational),
    /// Θ ≡ 1: the complete graph, used by the exact identities.
    One,
    /// Caller-supplied values for q = 2..=n, e.g. a Monte Carlo fallback.
    Values(Vec<f64>),
}

/// Coefficient sequence of Λ̄ or Γ̄ in the indeterminate x.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedPolynomial {
    n: usize,
    kind: PolyKind,
    coeffs: Vec<BigRational>,
}

impl ExpectedPolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    /// Coefficient of x^k, exact.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff_f64(&self, k: usize) -> f64 {
        self.coeffs[k].to_f64().unwrap_or(f64::NAN)
    }

    /// Constant term: the expected determinant (Λ̄) or permanent (Γ̄).
    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }
}

/// Expected elementary symmetric functions F̂_{n,k} of the eigenvalues,
/// read off the Λ̄ coefficients: F̂_{n,k} is the coefficient of x^{n-k}.
#[derive(Debug, Clone, PartialEq)]
pub struct EsfTable {
    n: usize,
    values: Vec<BigRational>,
}

impl EsfTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// F̂_{n,k}, exact; F̂_{n,n} is the expected determinant.
    pub fn value(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    pub fn value_f64(&self, k: usize) -> f64 {
        self.values[k].to_f64().unwrap_or(f64::NAN)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// Expected characteristic polynomial Λ̄ of the model on n vertices.
pub fn lambda_poly(model: &GraphModel, n: usize, precision_bits: u32) -> Result<ExpectedPolynomial> {
    expected_poly(PolyKind::Lambda, &ThetaSource::Model(*model), n, precision_bits, DEFAULT_TOL)
}

/// Expected permanental polynomial Γ̄ of the model on n vertices.
pub fn gamma_poly(model: &GraphModel, n: usize, precision_bits: u32) -> Result<ExpectedPolynomial> {
    expected_poly(PolyKind::Gamma, &ThetaSource::Model(*model), n, precision_bits, DEFAULT_TOL)
}

/// Expected polynomial from an explicit Θ source; the general entry point
/// behind [`lambda_poly`] and [`gamma_poly`].
///
/// The recurrence is
/// P̄_n(x) = x P̄_{n-1}(x) + Σ_{q=2}^n (±1)^{q-1} (n-1)!/(n-q)! Θ(q) P̄_{n-q}(x)
/// with P̄_0 = 1; the sign alternates for Λ̄ and is +1 throughout for Γ̄.
pub fn expected_poly(
    kind: PolyKind,
    source: &ThetaSource,
    n: usize,
    precision_bits: u32,
    tol: f64,
) -> Result<ExpectedPolynomial> {
    if precision_bits < 8 {
        return Err(Error::InvalidArgument(format!(
            "precision_bits must be >= 8, got {precision_bits}"
        )));
    }
    let thetas = theta_values(source, n, tol)?;
    // levels[m] holds the coefficients of P̄_m
    let mut levels: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    levels.push(vec![BigRational::one()]);
    for m in 1..=n {
        let mut coeffs = vec![BigRational::zero(); m + 1];
        for (j, c) in levels[m - 1].iter().enumerate() {
            coeffs[j + 1] = c.clone(); // x * P̄_{m-1}
        }
        let mut ratio = BigInt::one(); // (m-1)!/(m-q)! built as a running product
        for q in 2..=m {
            ratio *= BigInt::from(m - q + 1);
            let negate = kind == PolyKind::Lambda && q % 2 == 0;
            let weight = BigRational::from(ratio.clone()) * &thetas[q - 2];
            for (j, c) in levels[m - q].iter().enumerate() {
                if negate {
                    coeffs[j] -= &weight * c;
                } else {
                    coeffs[j] += &weight * c;
                }
            }
        }
        for c in coeffs.iter_mut() {
            *c = dyadic_round(c, precision_bits);
        }
        levels.push(coeffs);
    }
    Ok(ExpectedPolynomial {
        n,
        kind,
        coeffs: levels.pop().expect("levels is nonempty"),
    })
}

/// Θ(q) for q = 2..=n under the source, memoized across the recurrence.
fn theta_values(source: &ThetaSource, n: usize, tol: f64) -> Result<Vec<BigRational>> {
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for q in 2..=n {
        out.push(match source {
            ThetaSource::Model(model) => {
                let sv = theta(model, q, tol)?;
                if !sv.converged {
                    return Err(Error::NumericalFailure(format!(
                        "cycle-probability series did not converge for q = {q} \
                         (truncation bound {:.3e})",
                        sv.truncation_bound
                    )));
                }
                rational_from_f64(sv.value)?
            }
            ThetaSource::ExactEr(p) => {
                if q == 2 {
                    p.clone()
                } else {
                    num_traits::pow::pow(p.clone(), q)
                }
            }
            ThetaSource::One => BigRational::one(),
            ThetaSource::Values(vals) => {
                let v = *vals.get(q - 2).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "theta values cover q = 2..={}, but q = {q} is needed",
                        vals.len() + 1
                    ))
                })?;
                rational_from_f64(v)?
            }
        });
    }
    Ok(out)
}

fn rational_from_f64(v: f64) -> Result<BigRational> {
    BigRational::from_float(v)
        .ok_or_else(|| Error::NumericalFailure(format!("non-finite cycle probability {v}")))
}

/// Expected elementary symmetric functions of the adjacency eigenvalues.
pub fn esf_table(model: &GraphModel, n: usize, precision_bits: u32) -> Result<EsfTable> {
    let lambda = lambda_poly(model, n, precision_bits)?;
    Ok(esf_from_lambda(&lambda))
}

/// Read F̂_{n,k} = coefficient of x^{n-k} off a computed Λ̄.
pub fn esf_from_lambda(lambda: &ExpectedPolynomial) -> EsfTable {
    assert_eq!(lambda.kind, PolyKind::Lambda, "ESF values come from Λ̄");
    let n = lambda.n;
    let values = (0..=n).map(|k| lambda.coeff(n - k).clone()).collect();
    EsfTable { n, values }
}

/// Expected number of Hamilton cycles: τ = Θ(G_n, n) (n-1)!/2.
pub fn hamilton_expectation(model: &GraphModel, n: usize) -> Result<BigRational> {
    hamilton_expectation_tol(model, n, DEFAULT_TOL)
}

pub fn hamilton_expectation_tol(model: &GraphModel, n: usize, tol: f64) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "Hamilton cycles need n >= 3, got {n}"
        )));
    }
    let theta_n = match model {
        GraphModel::Er { p } => {
            let p = rational_from_f64(*p)?;
            num_traits::pow::pow(p, n)
        }
        GraphModel::Gr(_) => rational_from_f64(theta(model, n, tol)?.value)?,
    };
    let mut labeled_cycles = BigInt::one(); // (n-1)!/2
    for j in 3..n {
        labeled_cycles *= BigInt::from(j);
    }
    Ok(theta_n * BigRational::from(labeled_cycles))
}

/// Which expectation a threshold refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Hamilton,
    Permanent,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Hamilton => write!(f, "hamilton"),
            Quantity::Permanent => write!(f, "permanent"),
        }
    }
}

/// A one-parameter family of models indexed by edge probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFamily {
    Er,
    Gr { d: usize, sigma: Sigma },
}

impl ModelFamily {
    /// The model of this family with edge probability p.
    pub fn model_at(&self, p: f64) -> Result<GraphModel> {
        match self {
            ModelFamily::Er => GraphModel::er(p),
            ModelFamily::Gr { d, sigma } => {
                let r = r_from_p(*d, *sigma, p)?;
                GraphModel::gr(*d, *sigma, r)
            }
        }
    }

    /// Largest representable edge probability (1 for ER, the volume at
    /// r = 1/2 for geometric families).
    pub fn max_edge_probability(&self) -> f64 {
        match self {
            ModelFamily::Er => 1.0,
            ModelFamily::Gr { d, sigma } => max_edge_probability(*d, *sigma).min(1.0),
        }
    }
}

/// Smallest edge probability at which a target expectation reaches 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub n: usize,
    pub quantity: Quantity,
    pub edge_probability: f64,
    pub bracket_width: f64,
}

const BISECTION_TOL: f64 = 1e-6;
const MONOTONICITY_SAMPLES: usize = 16;

/// Bisection for the smallest p with E[target] >= 1.
///
/// Monotonicity of the target in p is asserted on a coarse sample first;
/// the returned probability is the upper end of the final bracket.
pub fn threshold(family: &ModelFamily, n: usize, quantity: Quantity) -> Result<ThresholdResult> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "thresholds need n >= 3, got {n}"
        )));
    }
    let p_max = family.max_edge_probability();
    let eval = |p: f64| -> Result<BigRational> {
        let model = family.model_at(p)?;
        match quantity {
            Quantity::Hamilton => hamilton_expectation(&model, n),
            Quantity::Permanent => {
                // A looser series tolerance than the library default: small
                // bisection probes map to small radii, where short cycles
                // need many more terms, and the bisection bracket of 1e-6
                // dominates the error anyway.
                let source = ThetaSource::Model(model);
                let poly =
                    expected_poly(PolyKind::Gamma, &source, n, DEFAULT_PRECISION_BITS, 1e-9)?;
                Ok(poly.constant_term().clone())
            }
        }
    };
    let mut prev: Option<BigRational> = None;
    for i in 1..=MONOTONICITY_SAMPLES {
        let v = eval(p_max * i as f64 / MONOTONICITY_SAMPLES as f64)?;
        if let Some(p) = prev {
            if v < p {
                return Err(Error::NumericalFailure(format!(
                    "target expectation is not nondecreasing in p for n = {n}"
                )));
            }
        }
        prev = Some(v);
    }
    let one = BigRational::one();
    if prev.expect("sampled at least once") < one {
        return Err(Error::NoThreshold(format!(
            "expectation stays below 1 up to p = {p_max} for n = {n}"
        )));
    }
    let (mut lo, mut hi) = (0.0f64, p_max);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if eval(mid)? >= one {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdResult {
        n,
        quantity,
        edge_probability: hi,
        bracket_width: hi - lo,
    })
}

/// Round a rational to the nearest dyadic with `bits` significand bits.
pub fn dyadic_round(v: &BigRational, bits: u32) -> BigRational {
    if v.is_zero() {
        return v.clone();
    }
    let mag = v.numer().bits() as i64 - v.denom().bits() as i64; // ~ floor(log2 |v|)
    let shift = bits as i64 - mag;
    let mut num = v.numer().abs();
    let mut den = v.denom().clone();
    if shift >= 0 {
        num <<= shift as u64;
    } else {
        den <<= (-shift) as u64;
    }
    // round-half-away nearest integer of num/den
    let q: BigInt = (num * 2 + &den) / (den * 2);
    let q = if v.is_negative() { -q } else { q };
    if shift >= 0 {
        BigRational::new(q, BigInt::one() << shift as u64)
    } else {
        BigRational::from(q << (-shift) as u64)
    }
}
