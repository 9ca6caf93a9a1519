//! Closed-form sampling bounds, Shannon entropy of profiles, and the
//! high-entropy counting lemma checker.
//!
//! Bound formulas use the natural logarithm; entropies are in bits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::MixedProfile;
use crate::hp;

/// Largest `k` an enumeration or sampler can address.
pub const ADDRESSABLE_K: u64 = 1 << 32;

/// Above this many bits an integer bound is only rendered in log2 space.
pub const EXACT_BITS_CAP: f64 = 65_536.0;

/// Fractional bits used for the high-precision evaluations.
const PRECISION: u32 = 160;

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonRange(epsilon))
    }
}

fn check_counts(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("need n, m >= 1, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// `ln(n·m/ε)` at [`PRECISION`] fractional bits.
fn ln_nm_over_eps(n: usize, m: usize, epsilon: f64) -> BigInt {
    let arg = BigRational::from_integer(BigInt::from(n) * BigInt::from(m)) / hp::rational(epsilon);
    hp::ln(&arg, PRECISION)
}

/// `c·(L + shift)/ε²` in fixed point, `L = ln(n·m/ε)`.
fn log_form(n: usize, m: usize, epsilon: f64, c: i64, shift: &BigInt) -> BigInt {
    let eps = hp::rational(epsilon);
    let l = ln_nm_over_eps(n, m, epsilon) + shift;
    (l * BigInt::from(c) * eps.denom() * eps.denom()) / (eps.numer() * eps.numer())
}

/// Ceiling of an f64 expression, escalating to a high-precision evaluation
/// when the value sits within 1e-6 of an integer.
fn robust_ceil(approx: f64, exact: impl FnOnce() -> BigInt) -> u64 {
    if (approx - approx.round()).abs() > 1e-6 && approx < 2f64.powi(52) {
        return approx.ceil() as u64;
    }
    hp::ceil(&exact(), PRECISION).to_u64().expect("k fits in u64")
}

/// `⌈8(ln m + ln n − ln ε + ln 8)/ε²⌉`: a k-uniform ε-equilibrium exists for
/// every k at or above this value.
pub fn k_theorem1(n: usize, m: usize, epsilon: f64) -> Result<u64> {
    check_counts(n, m)?;
    check_epsilon(epsilon)?;
    let approx = 8.0 * ((m as f64).ln() + (n as f64).ln() - epsilon.ln() + 8f64.ln()) / (epsilon * epsilon);
    Ok(robust_ceil(approx, || {
        log_form(
            n,
            m,
            epsilon,
            8,
            &hp::ln(&BigRational::from_integer(8.into()), PRECISION),
        )
    }))
}

/// `8·e^{−kε²/8}/ε`, the tail bound on one forbidden deviation event.
pub fn eq5_bound(k: u64, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    Ok(8.0 * (-(k as f64) * epsilon * epsilon / 8.0).exp() / epsilon)
}

/// A tail bound above 1 says nothing.
pub fn is_vacuous_tail(bound: f64) -> bool {
    bound > 1.0
}

/// A non-negative magnitude rendered both in log2 space and, when small
/// enough, as an exact integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigValue {
    pub log2: f64,
    /// `2^log2` as an f64; infinite when it overflows.
    pub approx: f64,
    /// Exact integer value, for integer thresholds within [`EXACT_BITS_CAP`] bits.
    #[serde(with = "opt_decimal")]
    pub exact: Option<BigUint>,
    /// Decimal rendering with 12 fractional digits, within [`EXACT_BITS_CAP`] bits.
    pub decimal: Option<String>,
}

impl BigValue {
    fn integer(k: BigUint) -> Self {
        let approx = k.to_f64().unwrap_or(f64::INFINITY);
        let log2 = if approx.is_finite() {
            approx.log2()
        } else {
            let shift = k.bits() - 64;
            (&k >> shift).to_f64().unwrap().log2() + shift as f64
        };
        Self {
            log2,
            approx,
            decimal: Some(k.to_string()),
            exact: Some(k),
        }
    }
}

/// `v / 2^prec` with 12 decimal places.
fn fixed_decimal(v: &BigInt, prec: u32) -> String {
    let scaled = hp::round(&(v * BigInt::from(10u64.pow(12))), prec);
    let (int, frac) = num_integer::Integer::div_rem(&scaled, &BigInt::from(10u64.pow(12)));
    format!("{int}.{frac:0>12}")
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|b| b.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Threshold on k for the random sampling guarantee: the larger of a
/// logarithmic term and `e^{16/ε²}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem2K {
    /// `⌈16(ln n + ln m − ln ε + 2)/ε²⌉`
    pub log_term: u64,
    /// `log2 e^{16/ε²} = 16·log2(e)/ε²`
    pub exp_term_log2: f64,
    pub k: BigValue,
    /// False when k exceeds [`ADDRESSABLE_K`].
    pub addressable: bool,
}

impl Theorem2K {
    /// The threshold as a u64 when addressable.
    pub fn as_u64(&self) -> Option<u64> {
        if !self.addressable {
            return None;
        }
        self.k.exact.as_ref().and_then(|k| k.to_u64())
    }
}

/// `⌈max{16(ln n + ln m − ln ε + 2)/ε², e^{16/ε²}}⌉`, never overflowing.
pub fn k_theorem2(n: usize, m: usize, epsilon: f64) -> Result<Theorem2K> {
    check_counts(n, m)?;
    check_epsilon(epsilon)?;
    let approx_log = 16.0 * ((n as f64).ln() + (m as f64).ln() - epsilon.ln() + 2.0) / (epsilon * epsilon);
    let log_term = robust_ceil(approx_log, || {
        log_form(n, m, epsilon, 16, &(BigInt::from(2) << PRECISION))
    });
    let exponent = BigRational::from_integer(16.into()) / (hp::rational(epsilon) * hp::rational(epsilon));
    let exp_term_log2 = exponent.to_f64().unwrap() * std::f64::consts::LOG2_E;
    let exp_exact =
        (exp_term_log2 <= EXACT_BITS_CAP).then(|| hp::to_biguint(hp::ceil(&hp::exp(&exponent, PRECISION), PRECISION)));
    let (k, addressable) = if exp_term_log2 > (log_term as f64).log2() + 1.0 {
        let addressable = exp_exact.as_ref().is_some_and(|v| *v <= BigUint::from(ADDRESSABLE_K));
        let value = match exp_exact {
            Some(k) => BigValue::integer(k),
            None => BigValue {
                log2: exp_term_log2,
                approx: exp_term_log2.exp2(),
                exact: None,
                decimal: None,
            },
        };
        (value, addressable)
    } else {
        // Exponential term can be close to the log term; pick the exact max.
        let exp_int = exp_exact.expect("small exponent has an exact rendering");
        let k = exp_int.max(BigUint::from(log_term));
        let addressable = k <= BigUint::from(ADDRESSABLE_K);
        (BigValue::integer(k), addressable)
    };
    Ok(Theorem2K {
        log_term,
        exp_term_log2,
        k,
        addressable,
    })
}

/// `Σ_i log2 m_i`, the entropy of the uniform profile.
pub fn max_entropy_bits(action_counts: &[usize]) -> f64 {
    action_counts.iter().map(|&m| (m as f64).log2()).sum()
}

/// `4·2^{k(n·log2 m − H)}` expected random-sampling draws, in log2 space.
pub fn expected_samples_bound(n: usize, m: usize, k: u64, entropy_bits: f64) -> Result<BigValue> {
    check_counts(n, m)?;
    expected_samples_bound_for(&vec![m; n], k, entropy_bits)
}

/// [`expected_samples_bound`] with per-player action counts.
pub fn expected_samples_bound_for(action_counts: &[usize], k: u64, entropy_bits: f64) -> Result<BigValue> {
    let max = max_entropy_bits(action_counts);
    if !entropy_bits.is_finite() || entropy_bits < 0.0 || entropy_bits > max + 1e-9 {
        return Err(Error::EntropyTooLarge {
            entropy: entropy_bits,
            max,
        });
    }
    let deficit = (max - entropy_bits).max(0.0);
    let log2 = 2.0 + k as f64 * deficit;
    let decimal = (log2 <= EXACT_BITS_CAP).then(|| fixed_decimal(&hp::exp2(&hp::rational(log2), PRECISION), PRECISION));
    Ok(BigValue {
        log2,
        approx: log2.exp2(),
        exact: None,
        decimal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Theorem1K,
    Theorem2K,
    Eq5Tail,
    ExpectedSamples,
}

/// One evaluated bound with its inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub epsilon: Option<f64>,
    pub k: Option<u64>,
    pub entropy_bits: Option<f64>,
    pub value: BigValue,
    pub vacuous: bool,
    /// Logarithm conventions: thresholds and tails use `ln`, entropies `log2`.
    pub log_base: &'static str,
}

impl BoundReport {
    pub fn theorem1_k(n: usize, m: usize, epsilon: f64) -> Result<Self> {
        let k = k_theorem1(n, m, epsilon)?;
        Ok(Self {
            kind: BoundKind::Theorem1K,
            n: Some(n),
            m: Some(m),
            epsilon: Some(epsilon),
            k: None,
            entropy_bits: None,
            value: BigValue::integer(BigUint::from(k)),
            vacuous: k > ADDRESSABLE_K,
            log_base: "e",
        })
    }

    pub fn theorem2_k(n: usize, m: usize, epsilon: f64) -> Result<Self> {
        let t = k_theorem2(n, m, epsilon)?;
        Ok(Self {
            kind: BoundKind::Theorem2K,
            n: Some(n),
            m: Some(m),
            epsilon: Some(epsilon),
            k: None,
            entropy_bits: None,
            vacuous: !t.addressable,
            value: t.k,
            log_base: "e",
        })
    }

    pub fn eq5_tail(k: u64, epsilon: f64) -> Result<Self> {
        let b = eq5_bound(k, epsilon)?;
        Ok(Self {
            kind: BoundKind::Eq5Tail,
            n: None,
            m: None,
            epsilon: Some(epsilon),
            k: Some(k),
            entropy_bits: None,
            value: BigValue {
                log2: b.log2(),
                approx: b,
                exact: None,
                decimal: Some(format!("{b:.12e}")),
            },
            vacuous: is_vacuous_tail(b),
            log_base: "e",
        })
    }

    pub fn expected_samples(n: usize, m: usize, k: u64, entropy_bits: f64) -> Result<Self> {
        let value = expected_samples_bound(n, m, k, entropy_bits)?;
        Ok(Self {
            kind: BoundKind::ExpectedSamples,
            n: Some(n),
            m: Some(m),
            epsilon: None,
            k: Some(k),
            entropy_bits: Some(entropy_bits),
            vacuous: false,
            value,
            log_base: "2",
        })
    }
}

/// Entropy in bits of one distribution, with `0·log 0 = 0`.
pub fn distribution_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum()
}

/// `H(x) = Σ_i H(x_i)`: the entropy of the product distribution.
pub fn shannon_entropy(x: &MixedProfile) -> f64 {
    x.strategies().iter().map(|s| distribution_entropy(s)).sum()
}

/// `Σ log2 m_i − H(x)`.
pub fn entropy_deficit(x: &MixedProfile) -> f64 {
    let counts: Vec<usize> = x.strategies().iter().map(Vec::len).collect();
    max_entropy_bits(&counts) - shannon_entropy(x)
}

/// Both sides of the counting lemma for a distribution `y` on `M` and a
/// subset `S`: premise `P(y ∈ S) ≥ 1 − 1/log2|M|`, conclusion
/// `|S| ≥ 2^{H(y)}/4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma3Check {
    pub premise_holds: bool,
    pub conclusion_holds: bool,
    pub mass: f64,
    pub mass_threshold: f64,
    pub subset_size: usize,
    pub size_threshold: f64,
    pub entropy_bits: f64,
}

pub fn lemma3_check(y: &[f64], subset: &[usize]) -> Result<Lemma3Check> {
    if y.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "the ground set needs at least 2 elements, got {}",
            y.len()
        )));
    }
    if y.iter().any(|&p| !p.is_finite() || p < 0.0) || (y.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::NotADistribution {
            player: 0,
            reason: "y is not a probability vector".into(),
        });
    }
    let mut members = vec![false; y.len()];
    for &e in subset {
        if e >= y.len() {
            return Err(Error::InvalidParameter(format!(
                "subset element {e} outside the ground set"
            )));
        }
        members[e] = true;
    }
    let subset_size = members.iter().filter(|&&b| b).count();
    let mass: f64 = y.iter().zip(&members).filter(|(_, &b)| b).map(|(p, _)| p).sum();
    let mass_threshold = 1.0 - 1.0 / (y.len() as f64).log2();
    let entropy_bits = distribution_entropy(y);
    let size_threshold = entropy_bits.exp2() / 4.0;
    Ok(Lemma3Check {
        premise_holds: mass >= mass_threshold - 1e-12,
        conclusion_holds: subset_size as f64 >= size_threshold,
        mass,
        mass_threshold,
        subset_size,
        size_threshold,
        entropy_bits,
    })
}

/// Smallest descending-mass prefix whose total meets the lemma's premise.
pub fn greedy_premise_set(y: &[f64]) -> Vec<usize> {
    if y.len() < 2 {
        return (0..y.len()).collect();
    }
    let threshold = 1.0 - 1.0 / (y.len() as f64).log2();
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| y[b].total_cmp(&y[a]).then(a.cmp(&b)));
    let mut mass = 0.0;
    let mut set = Vec::new();
    for e in order {
        if mass >= threshold - 1e-12 && !set.is_empty() {
            break;
        }
        mass += y[e];
        set.push(e);
    }
    set
}

/// Checks `H(x) ≥ n(log2 m − log2 c)` for an equilibrium whose atoms are all
/// at most `c/m`. Returns the slack `H(x) − n(log2 m − log2 c)`.
pub fn small_probability_entropy_slack(x: &MixedProfile, c: f64) -> f64 {
    let floor: f64 = x.strategies().iter().map(|s| (s.len() as f64).log2() - c.log2()).sum();
    shannon_entropy(x) - floor
}
