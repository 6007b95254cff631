//! Arbitrary-magnitude arithmetic with certified comparisons.
//!
//! Quantities like x^y or y_n^{y_n} overflow any fixed-precision type and,
//! past a configurable bit budget, any materializable big integer. Values
//! are therefore carried either exactly ([`ScaleValue::Exact`]) or as an
//! exact-rational bracket on their base-2 logarithm
//! ([`ScaleValue::LogBounds`]). Comparisons on brackets are certified: a
//! returned order is always true of the underlying mathematical values,
//! and overlapping brackets yield [`SvOrdering::Indeterminate`] instead of
//! a guess.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default materialization budget: values up to this many bits stay exact.
///
/// 2^20 bits is the first point where the level-4 endpoints of the
/// counterexample tower genuinely cannot be materialized.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Fractional bits used for log brackets when no caller-driven precision
/// applies.
const DEFAULT_FRAC_BITS: u32 = 96;

/// Hard cap on fractional bits for a single log2 extraction. Past this the
/// bracket is still sound, just wider than the 2⁻³² target.
const MAX_FRAC_BITS: u32 = 1 << 16;

/// Largest exponent magnitude (in bits of the exponent of 2) that we are
/// willing to materialize as an exact rational inside a bracket.
const MAX_LOG_MATERIALIZE_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberError {
    /// All values in scope are positive naturals.
    #[error("scale values must be >= 1")]
    ZeroValue,
    /// The logarithm of the result cannot be materialized as an exact
    /// rational (it would need more than 2^24 bits). Deeper towers are
    /// handled symbolically by the counterexample module.
    #[error("log-domain overflow: result logarithm needs ~2^{0} bits")]
    LogDomainOverflow(u64),
}

/// Exact rational bracket `[lo, hi]` on log₂ of a positive value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBracket {
    lo: BigRational,
    hi: BigRational,
}

impl LogBracket {
    /// Bracket from raw endpoints. The lower endpoint is clamped to 0
    /// (values are ≥ 1).
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        let zero = BigRational::zero();
        let lo = if lo < zero { zero } else { lo };
        assert!(lo <= hi, "invalid log bracket");
        LogBracket { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        LogBracket { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Bracket of the product of the two underlying values.
    pub fn add(&self, other: &LogBracket) -> LogBracket {
        LogBracket { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Bracket scaled by an exact positive integer (value raised to that
    /// power).
    pub fn scale(&self, k: &BigUint) -> LogBracket {
        let k = BigRational::from_integer(BigInt::from(k.clone()));
        LogBracket { lo: &self.lo * &k, hi: &self.hi * &k }
    }

    fn disjoint_below(&self, other: &LogBracket) -> bool {
        self.hi < other.lo
    }
}

/// Certified log₂ bracket of an exact positive integer with roughly
/// `frac_bits` fractional bits of precision (the bracket width is at most
/// `4·2^-frac_bits`).
///
/// Square-and-extract with directed rounding: one all-floor pass yields a
/// lower binary expansion, one all-ceil pass an upper one. The working
/// precision `2·frac_bits + 64` absorbs the error doubling per squaring.
pub fn log2_bounds(x: &BigUint, frac_bits: u32) -> LogBracket {
    assert!(!x.is_zero(), "log2 of zero");
    let frac_bits = frac_bits.clamp(8, MAX_FRAC_BITS);
    let one = BigUint::one();
    if x == &one {
        return LogBracket::point(BigRational::zero());
    }
    let e = x.bits() - 1;
    // Power of two: the logarithm is exactly e.
    if x == &(&one << e) {
        return LogBracket::point(BigRational::from_integer(BigInt::from(e)));
    }

    let p: u32 = 2 * frac_bits + 64;
    let scale_pow = &one << p; // 2^P
    let two_scale = &one << (p + 1); // 2·2^P

    // Mantissa m = x / 2^e ∈ (1, 2), as P-bit fixed point.
    let m_floor = (x << p) >> e;
    let m_ceil = ((x << p) + ((&one << e) - &one)) >> e;

    let run = |mut m: BigUint, round_up: bool| -> BigUint {
        let mut frac = BigUint::zero();
        for _ in 0..frac_bits {
            let sq = &m * &m;
            m = if round_up { (sq + (&scale_pow - &one)) >> p } else { sq >> p };
            frac <<= 1u32;
            if m >= two_scale {
                frac += &one;
                m = if round_up { (m + &one) >> 1 } else { m >> 1 };
            }
        }
        frac
    };

    let frac_lo = run(m_floor, false);
    let frac_hi = run(m_ceil, true);

    let denom = BigInt::from(&one << frac_bits);
    let base = BigInt::from(e) * &denom;
    // One extra ulp of slack on each side covers the unextracted residual
    // and accumulated rounding.
    let lo_num = &base + BigInt::from(frac_lo) - BigInt::one();
    let hi_num = &base + BigInt::from(frac_hi) + BigInt::one();
    LogBracket::new(
        BigRational::new(lo_num, denom.clone()),
        BigRational::new(hi_num, denom),
    )
}

/// Certified log₂ bracket of a positive rational.
pub fn log2_bounds_rational(q: &BigRational, frac_bits: u32) -> LogBracket {
    assert!(q.is_positive(), "log2 of non-positive rational");
    let num = log2_bounds(q.numer().magnitude(), frac_bits);
    let den = log2_bounds(q.denom().magnitude(), frac_bits);
    // log2(n/d) = log2 n − log2 d; no clamping here, the result may be
    // negative.
    LogBracket { lo: num.lo - den.hi, hi: num.hi - den.lo }
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvOrdering {
    Less,
    Equal,
    Greater,
    /// The bracketing intervals overlap; no order can be certified.
    Indeterminate,
}

impl SvOrdering {
    pub fn is_lt(self) -> bool {
        self == SvOrdering::Less
    }
    pub fn is_gt(self) -> bool {
        self == SvOrdering::Greater
    }
    pub fn is_le(self) -> bool {
        matches!(self, SvOrdering::Less | SvOrdering::Equal)
    }
    pub fn is_ge(self) -> bool {
        matches!(self, SvOrdering::Greater | SvOrdering::Equal)
    }
    pub fn reverse(self) -> SvOrdering {
        match self {
            SvOrdering::Less => SvOrdering::Greater,
            SvOrdering::Greater => SvOrdering::Less,
            other => other,
        }
    }
}

/// A positive natural that may exceed any materializable representation.
///
/// `Exact` holds the value itself; `LogBounds` brackets its base-2
/// logarithm between exact rationals. The derived `Ord` is a
/// *representational* total order (used for canonical sets and
/// serialization); mathematical comparisons go through [`sv_compare`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleValue {
    Exact(BigUint),
    LogBounds(LogBracket),
}

impl ScaleValue {
    pub fn from_biguint(v: BigUint) -> Result<Self, NumberError> {
        if v.is_zero() {
            return Err(NumberError::ZeroValue);
        }
        Ok(ScaleValue::Exact(v))
    }

    pub fn from_u64(v: u64) -> Self {
        assert!(v >= 1, "scale values must be >= 1");
        ScaleValue::Exact(BigUint::from(v))
    }

    pub fn one() -> Self {
        ScaleValue::Exact(BigUint::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScaleValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            ScaleValue::Exact(v) => Some(v),
            ScaleValue::LogBounds(_) => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_exact().and_then(|v| v.to_u64())
    }

    /// Bit length of the exact representation, if any.
    pub fn bit_len(&self) -> Option<u64> {
        self.as_exact().map(|v| v.bits())
    }

    /// Certified bracket on log₂ of the value.
    pub fn log2_bracket(&self, frac_bits: u32) -> LogBracket {
        match self {
            ScaleValue::Exact(v) => log2_bounds(v, frac_bits),
            ScaleValue::LogBounds(b) => b.clone(),
        }
    }

    /// The value plus one, with a sound (slightly widened) bracket in the
    /// log-domain case.
    pub fn succ(&self) -> ScaleValue {
        match self {
            ScaleValue::Exact(v) => ScaleValue::Exact(v + BigUint::one()),
            ScaleValue::LogBounds(b) => {
                // log2(v+1) ≤ log2 v + log2(1 + 1/v) and v ≥ 2^floor(lo):
                // bump the upper end by 2^-(k-1) ≥ 1.443·2^-k ≥ log2(1+1/v).
                let k = floor_to_i64(b.lo()).clamp(0, 65);
                let slack = if k <= 1 {
                    BigRational::one()
                } else {
                    pow2_rational(-(k - 1))
                };
                ScaleValue::LogBounds(LogBracket::new(b.lo().clone(), b.hi() + slack))
            }
        }
    }
}

impl fmt::Display for ScaleValue {
    /// Canonical textual form: decimal for exact values,
    /// `log2:[a/b,c/d]` for log-domain brackets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleValue::Exact(v) => write!(f, "{v}"),
            ScaleValue::LogBounds(b) => write!(
                f,
                "log2:[{}/{},{}/{}]",
                b.lo().numer(),
                b.lo().denom(),
                b.hi().numer(),
                b.hi().denom()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scale value: {0}")]
pub struct ParseScaleValueError(pub String);

impl core::str::FromStr for ScaleValue {
    type Err = ParseScaleValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScaleValueError(String::from(s));
        if let Some(body) = s.strip_prefix("log2:[") {
            let body = body.strip_suffix(']').ok_or_else(bad)?;
            let (lo, hi) = body.split_once(',').ok_or_else(bad)?;
            let parse_ratio = |t: &str| -> Result<BigRational, ParseScaleValueError> {
                let (n, d) = t.split_once('/').ok_or_else(bad)?;
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            };
            let lo = parse_ratio(lo)?;
            let hi = parse_ratio(hi)?;
            if lo > hi {
                return Err(bad());
            }
            Ok(ScaleValue::LogBounds(LogBracket::new(lo, hi)))
        } else {
            let v: BigUint = s.parse().map_err(|_| bad())?;
            ScaleValue::from_biguint(v).map_err(|_| bad())
        }
    }
}

impl PartialOrd for ScaleValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScaleValue {
    // Representational order: exact values first (by value), then brackets
    // by endpoints. Canonical and total, but not the mathematical order.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ScaleValue::Exact(a), ScaleValue::Exact(b)) => a.cmp(b),
            (ScaleValue::Exact(_), ScaleValue::LogBounds(_)) => Ordering::Less,
            (ScaleValue::LogBounds(_), ScaleValue::Exact(_)) => Ordering::Greater,
            (ScaleValue::LogBounds(a), ScaleValue::LogBounds(b)) => {
                (a.lo(), a.hi()).cmp(&(b.lo(), b.hi()))
            }
        }
    }
}

/// Certified comparison. A returned `Less`/`Equal`/`Greater` is always
/// true of the exact mathematical values; overlapping brackets give
/// `Indeterminate`.
pub fn sv_compare(a: &ScaleValue, b: &ScaleValue) -> SvOrdering {
    match (a, b) {
        (ScaleValue::Exact(x), ScaleValue::Exact(y)) => match x.cmp(y) {
            Ordering::Less => SvOrdering::Less,
            Ordering::Equal => SvOrdering::Equal,
            Ordering::Greater => SvOrdering::Greater,
        },
        (ScaleValue::Exact(x), ScaleValue::LogBounds(br)) => compare_exact_bracket(x, br),
        (ScaleValue::LogBounds(br), ScaleValue::Exact(y)) => {
            compare_exact_bracket(y, br).reverse()
        }
        (ScaleValue::LogBounds(x), ScaleValue::LogBounds(y)) => {
            if x.is_point() && y.is_point() {
                return match x.lo().cmp(y.lo()) {
                    Ordering::Less => SvOrdering::Less,
                    Ordering::Equal => SvOrdering::Equal,
                    Ordering::Greater => SvOrdering::Greater,
                };
            }
            if x.disjoint_below(y) {
                SvOrdering::Less
            } else if y.disjoint_below(x) {
                SvOrdering::Greater
            } else {
                SvOrdering::Indeterminate
            }
        }
    }
}

fn compare_exact_bracket(x: &BigUint, br: &LogBracket) -> SvOrdering {
    let mut frac = 64u32;
    loop {
        let xb = log2_bounds(x, frac);
        if xb.disjoint_below(br) {
            return SvOrdering::Less;
        }
        if br.disjoint_below(&xb) {
            return SvOrdering::Greater;
        }
        // Exact side strictly inside the fixed bracket: genuinely unknown.
        if xb.lo() > br.lo() && xb.hi() < br.hi() {
            return SvOrdering::Indeterminate;
        }
        if frac >= 8192 {
            return SvOrdering::Indeterminate;
        }
        frac *= 2;
    }
}

/// base^exp with exactness governed by `bit_budget`: the result is
/// `Exact` iff its bit length fits the budget, otherwise a log bracket.
///
/// For exact operands the bracket width stays below 2⁻³² as long as the
/// exponent has at most ~2^16 bits; log-domain exponents force coarse
/// (but still certified) brackets.
pub fn sv_pow(
    base: &ScaleValue,
    exp: &ScaleValue,
    bit_budget: u64,
) -> Result<ScaleValue, NumberError> {
    let one = BigUint::one();
    if let Some(b) = base.as_exact() {
        if b == &one {
            return Ok(ScaleValue::Exact(one));
        }
    }
    if let Some(e) = exp.as_exact() {
        if e.is_zero() {
            return Err(NumberError::ZeroValue);
        }
        if e == &one {
            return Ok(base.clone());
        }
    }

    match (base, exp) {
        (ScaleValue::Exact(b), ScaleValue::Exact(e)) => {
            // Precision so that e·width(log2 b) stays ~2^-40.
            let frac = (41 + e.bits().min(u64::from(MAX_FRAC_BITS))) as u32;
            let lb = log2_bounds(b, frac);
            let lo_bits = floor_to_bigint(&(lb.lo() * big_ratio(e))) + 1;
            let hi_bits = floor_to_bigint(&(lb.hi() * big_ratio(e))) + 1;
            if hi_bits <= BigInt::from(bit_budget) {
                return Ok(ScaleValue::Exact(pow_exact(b, e)));
            }
            if lo_bits > BigInt::from(bit_budget) {
                return Ok(ScaleValue::LogBounds(lb.scale(e)));
            }
            // The budget falls inside the bracket: materialize to decide.
            let v = pow_exact(b, e);
            if v.bits() <= bit_budget {
                Ok(ScaleValue::Exact(v))
            } else {
                Ok(ScaleValue::LogBounds(lb.scale(e)))
            }
        }
        (_, _) => {
            let base_br = base.log2_bracket(DEFAULT_FRAC_BITS);
            let exp_bounds = match exp {
                ScaleValue::Exact(e) => {
                    let r = big_ratio(e);
                    (r.clone(), r)
                }
                ScaleValue::LogBounds(ebr) => {
                    // 2^floor(lo) ≤ e ≤ 2^(floor(hi)+1)
                    let lo_k = floor_to_bigint(ebr.lo());
                    let hi_k = floor_to_bigint(ebr.hi()) + BigInt::one();
                    let max_bits = hi_k.magnitude().bits();
                    if hi_k > BigInt::from(MAX_LOG_MATERIALIZE_BITS) {
                        return Err(NumberError::LogDomainOverflow(max_bits));
                    }
                    (pow2_rational_big(&lo_k), pow2_rational_big(&hi_k))
                }
            };
            let lo = base_br.lo() * &exp_bounds.0;
            let hi = base_br.hi() * &exp_bounds.1;
            Ok(ScaleValue::LogBounds(LogBracket::new(lo, hi)))
        }
    }
}

/// a·b with exactness governed by `bit_budget`.
pub fn sv_mul(a: &ScaleValue, b: &ScaleValue, bit_budget: u64) -> ScaleValue {
    match (a, b) {
        (ScaleValue::Exact(x), ScaleValue::Exact(y)) => {
            if x.bits() + y.bits() <= bit_budget + 1 {
                let v = x * y;
                if v.bits() <= bit_budget {
                    return ScaleValue::Exact(v);
                }
                let br = log2_bounds(&v, DEFAULT_FRAC_BITS);
                return ScaleValue::LogBounds(br);
            }
            let br = log2_bounds(x, DEFAULT_FRAC_BITS).add(&log2_bounds(y, DEFAULT_FRAC_BITS));
            ScaleValue::LogBounds(br)
        }
        _ => {
            let br = a
                .log2_bracket(DEFAULT_FRAC_BITS)
                .add(&b.log2_bracket(DEFAULT_FRAC_BITS));
            ScaleValue::LogBounds(br)
        }
    }
}

fn pow_exact(b: &BigUint, e: &BigUint) -> BigUint {
    let e64 = e
        .to_u64()
        .expect("materialized exponent must fit u64 within any sane bit budget");
    num_traits::Pow::pow(b, e64)
}

fn big_ratio(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

pub(crate) fn floor_to_bigint(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn floor_to_i64(r: &BigRational) -> i64 {
    floor_to_bigint(r).to_i64().unwrap_or(i64::MAX)
}

/// 2^k for small signed k.
pub(crate) fn pow2_rational(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << k as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k) as u64)
    }
}

/// 2^k for a big signed k (caller guards magnitude).
pub(crate) fn pow2_rational_big(k: &BigInt) -> BigRational {
    let mag = k.magnitude().to_u64().expect("guarded exponent");
    if k.is_negative() {
        BigRational::new(BigInt::one(), BigInt::one() << mag)
    } else {
        BigRational::from_integer(BigInt::one() << mag)
    }
}

/// Integer polynomial without constant term: p(t) = Σ c_j t^j, j ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    coeffs: Vec<i64>, // coeffs[j-1] = c_j
}

impl Polynomial {
    /// Coefficients c₁..c_d; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest j with c_j ≠ 0 (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// max |c_j| (0 for the zero polynomial).
    pub fn coef_bound(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Exact evaluation; p(0) = 0 by construction.
    pub fn eval(&self, t: u64) -> BigInt {
        let t = BigInt::from(t);
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * &t + BigInt::from(c);
        }
        acc * &t
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = i + 1;
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let a = c.unsigned_abs();
            match (a, j) {
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{j}")?,
                (_, 1) => write!(f, "{a}t")?,
                (_, _) => write!(f, "{a}t^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn exact(v: u64) -> ScaleValue {
        ScaleValue::from_u64(v)
    }

    /// Independent oracle: naive repeated multiplication.
    fn naive_pow(b: u64, e: u64) -> BigUint {
        let mut acc = BigUint::one();
        let b = BigUint::from(b);
        for _ in 0..e {
            acc *= &b;
        }
        acc
    }

    #[test]
    fn pow_small_exact() {
        let r = sv_pow(&exact(2), &exact(3), 1_000_000).unwrap();
        assert_eq!(r, ScaleValue::Exact(BigUint::from(8u32)));
    }

    #[test]
    fn pow_84_84_bits() {
        let r = sv_pow(&exact(84), &exact(84), 1_000_000).unwrap();
        let v = r.as_exact().expect("84^84 fits a generous budget");
        assert_eq!(v, &naive_pow(84, 84));
        // ⌊84·log₂84⌋ + 1 = ⌊536.95⌋ + 1
        assert_eq!(v.bits(), 537);
    }

    #[test]
    fn pow_past_budget_goes_log() {
        // 84^84 under a 256-bit budget must become a bracket containing
        // the true logarithm.
        let r = sv_pow(&exact(84), &exact(84), 256).unwrap();
        let ScaleValue::LogBounds(br) = &r else {
            panic!("expected log bounds")
        };
        let true_bits = naive_pow(84, 84).bits(); // 538, so 537 ≤ log2 < 538
        assert!(br.lo() < &BigRational::from_integer(BigInt::from(true_bits)));
        assert!(br.hi() > &BigRational::from_integer(BigInt::from(true_bits - 1)));
        assert!(br.width() < pow2_rational(-32));
    }

    #[test]
    fn pow_tower_scale_bracket() {
        // y₃ = (84^84 + 1)·84 has 544 bits; y₃^{y₃} exceeds any budget.
        let y3 = (naive_pow(84, 84) + BigUint::one()) * BigUint::from(84u32);
        assert_eq!(y3.bits(), 544);
        let y3 = ScaleValue::Exact(y3);
        let r = sv_pow(&y3, &y3, DEFAULT_BIT_BUDGET).unwrap();
        let ScaleValue::LogBounds(br) = &r else {
            panic!("expected log bounds")
        };
        assert!(br.width() < pow2_rational(-32));
        // log2(y₃^{y₃}) = y₃·log2 y₃ ∈ (y₃·543, y₃·544).
        let y3v = naive_pow(84, 84) * BigUint::from(84u32);
        let lo_floor = BigRational::from_integer(BigInt::from(y3v.clone()) * 543);
        let hi_ceil = BigRational::from_integer(BigInt::from(y3v + BigUint::from(200u32)) * 544);
        assert!(br.lo() > &lo_floor);
        assert!(br.hi() < &hi_ceil);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(sv_compare(&exact(28), &exact(28)), SvOrdering::Equal);
        let p = sv_pow(&exact(84), &exact(84), 256).unwrap();
        let big = ScaleValue::Exact(BigUint::one() << 500);
        assert_eq!(sv_compare(&p, &big), SvOrdering::Greater);
        assert_eq!(sv_compare(&exact(3), &exact(27)), SvOrdering::Less);
    }

    #[test]
    fn compare_exact_inside_bracket_is_indeterminate() {
        // Bracket [log2 10, log2 1000] contains 100 strictly.
        let br = LogBracket::new(
            log2_bounds(&BigUint::from(10u32), 64).lo().clone(),
            log2_bounds(&BigUint::from(1000u32), 64).hi().clone(),
        );
        let v = ScaleValue::LogBounds(br);
        assert_eq!(sv_compare(&exact(100), &v), SvOrdering::Indeterminate);
        assert_eq!(sv_compare(&exact(5), &v), SvOrdering::Less);
        assert_eq!(sv_compare(&exact(2000), &v), SvOrdering::Greater);
    }

    #[test]
    fn log2_bounds_exact_powers() {
        let br = log2_bounds(&BigUint::from(1u32), 64);
        assert!(br.is_point() && br.lo().is_zero());
        let br = log2_bounds(&(BigUint::one() << 137), 64);
        assert!(br.is_point());
        assert_eq!(br.lo(), &BigRational::from_integer(BigInt::from(137)));
    }

    #[test]
    fn log2_bounds_sound_small_exact_check() {
        // With f fractional bits, lo = a/2^f certifies 2^a ≤ x^(2^f).
        for x in [3u64, 5, 7, 10, 84, 12345] {
            let f = 8u32;
            let br = log2_bounds(&BigUint::from(x), f);
            let denom = BigUint::one() << f;
            let xe = num_traits::Pow::pow(&BigUint::from(x), &denom);
            let lo_scaled = (br.lo() * pow2_rational(f as i64)).to_integer();
            let hi_scaled = (br.hi() * pow2_rational(f as i64)).to_integer();
            // 2^(lo·2^f) ≤ x^(2^f) ≤ 2^(hi·2^f)
            let lo_pow = BigUint::one() << lo_scaled.to_u64().unwrap();
            let hi_pow = BigUint::one() << hi_scaled.to_u64().unwrap();
            assert!(lo_pow <= xe, "lower bound violated for {x}");
            assert!(xe <= hi_pow, "upper bound violated for {x}");
        }
    }

    #[test]
    fn succ_widens_soundly() {
        let v = sv_pow(&exact(84), &exact(84), 256).unwrap();
        let s = v.succ();
        let ScaleValue::LogBounds(sb) = &s else { panic!() };
        let ScaleValue::LogBounds(vb) = &v else { panic!() };
        assert_eq!(sb.lo(), vb.lo());
        assert!(sb.hi() > vb.hi());
        // Still brackets the true successor.
        let truth = naive_pow(84, 84) + BigUint::one();
        assert_ne!(
            sv_compare(&ScaleValue::Exact(truth.clone()), &s),
            SvOrdering::Greater
        );
        assert_ne!(sv_compare(&ScaleValue::Exact(truth), &s), SvOrdering::Less);
    }

    #[test]
    fn mul_exactness_roundtrip() {
        let a = exact(1 << 20);
        let b = exact(12345);
        let m = sv_mul(&a, &b, DEFAULT_BIT_BUDGET);
        assert_eq!(
            m.as_exact().unwrap(),
            &(BigUint::from(1u64 << 20) * BigUint::from(12345u32))
        );
        let tiny_budget = sv_mul(&a, &b, 16);
        assert!(!tiny_budget.is_exact());
    }

    #[test]
    fn canonical_text_roundtrip() {
        let e = exact(28);
        assert_eq!(e.to_string(), "28");
        assert_eq!("28".parse::<ScaleValue>().unwrap(), e);
        let lb = sv_pow(&exact(84), &exact(84), 256).unwrap();
        let s = lb.to_string();
        assert!(s.starts_with("log2:["));
        assert_eq!(s.parse::<ScaleValue>().unwrap(), lb);
        assert!("0".parse::<ScaleValue>().is_err());
        assert!("log2:[1/2]".parse::<ScaleValue>().is_err());
    }

    #[test]
    fn poly_eval_examples() {
        let sq = Polynomial::new(vec![0, 1]);
        assert_eq!(sq.eval(2), BigInt::from(4));
        let p = Polynomial::new(vec![2, 0, 3]);
        assert_eq!(p.eval(2), BigInt::from(28));
        let neg = Polynomial::new(vec![-1]);
        assert_eq!(neg.eval(5), BigInt::from(-5));
        assert_eq!(neg.eval(0), BigInt::zero());
        assert_eq!(Polynomial::zero().degree(), 0);
        assert_eq!(Polynomial::new(vec![0, 0]).degree(), 0);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coef_bound(), 3);
    }

    proptest! {
        #[test]
        fn poly_eval_matches_naive_sum(coeffs in proptest::collection::vec(-50i64..=50, 0..6), t in 0u64..200) {
            let p = Polynomial::new(coeffs.clone());
            let mut naive = BigInt::zero();
            for (i, &c) in coeffs.iter().enumerate() {
                naive += BigInt::from(c) * num_traits::Pow::pow(&BigInt::from(t), (i + 1) as u32);
            }
            prop_assert_eq!(p.eval(t), naive);
        }

        #[test]
        fn compare_never_wrong_on_forced_brackets(a in 2u64..1_000_000, b in 2u64..1_000_000, ea in 1u32..8, eb in 1u32..8) {
            // Force log-domain representations with a tiny budget while the
            // oracle materializes the true values.
            let va = sv_pow(&exact(a), &exact(u64::from(ea)), 8).unwrap();
            let vb = sv_pow(&exact(b), &exact(u64::from(eb)), 8).unwrap();
            let ta = naive_pow(a, u64::from(ea));
            let tb = naive_pow(b, u64::from(eb));
            match sv_compare(&va, &vb) {
                SvOrdering::Less => prop_assert!(ta < tb),
                SvOrdering::Greater => prop_assert!(ta > tb),
                SvOrdering::Equal => prop_assert!(ta == tb),
                SvOrdering::Indeterminate => {}
            }
        }

        #[test]
        fn pow_monotone_never_contradicted(a in 2u64..500, b_extra in 0u64..500, c in 1u64..30, d_extra in 0u64..30, budget in 8u64..512) {
            let b = a + b_extra;
            let d = c + d_extra;
            let p1 = sv_pow(&exact(a), &exact(c), budget).unwrap();
            let p2 = sv_pow(&exact(b), &exact(d), budget).unwrap();
            prop_assert_ne!(sv_compare(&p1, &p2), SvOrdering::Greater);
        }

        #[test]
        fn log2_bounds_brackets_f64(x in 2u64..u64::MAX) {
            let br = log2_bounds(&BigUint::from(x), 40);
            let approx = (x as f64).log2();
            let lo = br.lo().to_f64().unwrap();
            let hi = br.hi().to_f64().unwrap();
            prop_assert!(lo <= approx + 1e-9);
            prop_assert!(hi >= approx - 1e-9);
            prop_assert!(hi - lo < 1e-9);
        }
    }
}
