//! Exact rational arithmetic and the 2-adic (general p-adic) machinery used
//! everywhere else: valuations, the multiplier congruence `x ≈_q y` on
//! rationals, residues of odd rationals modulo powers of two, and square-free
//! decomposition.
//!
//! All scalars are [`Rational`] (arbitrary-precision, always stored in lowest
//! terms with a positive denominator). Every function here is pure.

use std::cmp::Ordering;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The universal scalar: arbitrary-precision signed rational, gcd-reduced
/// with positive denominator after every operation.
pub type Rational = num_rational::BigRational;

/// Largest prime that is verified by trial division at construction time.
/// Larger values are accepted unchecked.
pub const PRIME_CHECK_BOUND: u64 = 1_000_000;

/// Default trial-division bound for [`squarefree_decompose`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("modulus must exceed 1 (exponent must be positive)")]
    ModulusTooSmall,
    #[error("value has p-adic norm != 1, no residue exists")]
    NotAUnit,
    #[error("zero has no square-free decomposition")]
    ZeroInput,
    #[error("factorization exceeds trial-division bound {bound}")]
    FactorizationTooHard { bound: u64 },
}

/// Returns whether `p` is prime, by trial division. Only call for
/// `p <= PRIME_CHECK_BOUND`.
fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A modulus `q = p^exponent` for a prime `p`.
///
/// Primality is verified at construction for `p <= PRIME_CHECK_BOUND`;
/// larger values are taken on trust. Everything downstream in this crate
/// uses `p = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    exponent: u32,
}

impl PrimePower {
    pub fn new(p: u64, exponent: u32) -> Result<Self, NumError> {
        if p <= PRIME_CHECK_BOUND && !is_small_prime(p) {
            return Err(NumError::InvalidPrime(p));
        }
        Ok(PrimePower { p, exponent })
    }

    /// `2^exponent`, the only modulus family the rest of the crate needs.
    pub fn two_to(exponent: u32) -> Self {
        PrimePower { p: 2, exponent }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The modulus value `p^exponent`.
    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.exponent)
    }
}

/// The exponent of `p` in a rational, with `+∞` for zero
/// (so that the p-adic norm of zero is 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// True iff the valuation is at least `e` (zero passes every bound).
    pub fn at_least(&self, e: i64) -> bool {
        match self {
            Valuation::Finite(v) => *v >= e,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

fn int_valuation(n: &BigUint, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    if p == 2 {
        return n.trailing_zeros().unwrap_or(0) as i64;
    }
    let p = BigUint::from(p);
    let mut v = 0i64;
    let mut cur = n.clone();
    loop {
        let (quot, rem) = cur.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        v += 1;
        cur = quot;
    }
}

/// The exponent `ν` such that `x = p^ν · (a/b)` with `a`, `b` coprime to `p`;
/// `Infinite` for `x = 0`.
pub fn p_adic_valuation(x: &Rational, p: u64) -> Result<Valuation, NumError> {
    if p <= PRIME_CHECK_BOUND && !is_small_prime(p) {
        return Err(NumError::InvalidPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // x is reduced, so at most one of the two valuations is nonzero.
    Ok(Valuation::Finite(int_valuation(num, p) - int_valuation(den, p)))
}

/// 2-adic valuation shortcut; panics never (2 is prime).
pub fn two_adic_valuation(x: &Rational) -> Valuation {
    p_adic_valuation(x, 2).expect("2 is prime")
}

/// True iff `x` has p-adic norm 1 (both numerator and denominator coprime
/// to `p`); for `p = 2` this is membership in the odd rationals.
pub fn is_p_unit(x: &Rational, p: u64) -> Result<bool, NumError> {
    Ok(p_adic_valuation(x, p)? == Valuation::Finite(0))
}

/// Membership in the odd rationals (2-adic norm 1).
pub fn is_odd_rational(x: &Rational) -> bool {
    two_adic_valuation(x) == Valuation::Finite(0)
}

/// Multiplier congruence `x ≈_q y`: true iff there is a `k` coprime to `p`
/// with `k(x - y)/q` an integer.
///
/// Decided via one subtraction and one valuation: `x ≈_q y` iff the p-adic
/// valuation of `x - y` is at least the exponent of `q`. The unbounded
/// multiplier search of the raw definition is kept only as the test oracle
/// [`scong_oracle`].
pub fn scong(x: &Rational, y: &Rational, q: &PrimePower) -> bool {
    let diff = x - y;
    p_adic_valuation(&diff, q.p())
        .expect("modulus prime was validated at construction")
        .at_least(q.exponent() as i64)
}

/// Convenience form of [`scong`] against a small integer right-hand side.
pub fn scong_int(x: &Rational, y: i64, q: &PrimePower) -> bool {
    scong(x, &Rational::from(BigInt::from(y)), q)
}

/// Definitional oracle for `x ≈_q y`: searches multipliers `k` coprime to
/// `p` with `k(x - y)/q` an integer.
///
/// The search range is finite because any valid `k` must be a multiple of
/// the reduced denominator `b` of `(x - y)/q`: if `p` divides `b` no
/// multiple of `b` is coprime to `p` and no `k` exists at all, and
/// otherwise `k = b` itself works. It therefore suffices to search up to
/// `b` with its `p`-part removed.
pub fn scong_oracle(x: &Rational, y: &Rational, q: &PrimePower) -> bool {
    let d = (x - y) / Rational::from(BigInt::from(q.modulus()));
    if d.is_zero() {
        return true;
    }
    let den = d.denom().magnitude();
    let p_part = BigUint::from(q.p()).pow(int_valuation(den, q.p()) as u32);
    let bound = den / p_part;
    let p = BigUint::from(q.p());
    let mut k = BigUint::one();
    while k <= bound {
        if !(&k % &p).is_zero() {
            let kd = &d * Rational::from(BigInt::from(k.clone()));
            if kd.is_integer() {
                return true;
            }
        }
        k += BigUint::one();
    }
    false
}

/// The unique `m` in `Z_q^*` with `x ≈_q m`, for `x` of p-adic norm 1 and
/// `q > 1`. Computed as `numerator · denominator⁻¹ mod q`.
pub fn residue(x: &Rational, q: &PrimePower) -> Result<BigUint, NumError> {
    if q.exponent() == 0 {
        return Err(NumError::ModulusTooSmall);
    }
    if !is_p_unit(x, q.p())? {
        return Err(NumError::NotAUnit);
    }
    let modulus = BigInt::from(q.modulus());
    let den = x.denom().mod_floor(&modulus);
    let inv = mod_inverse(&den, &modulus).expect("denominator is a unit mod p^e");
    let m = (x.numer() * inv).mod_floor(&modulus);
    Ok(m.to_biguint().expect("mod_floor of positive modulus"))
}

/// `residue` as a machine integer, for the small moduli used in the
/// classification tables.
pub fn residue_u64(x: &Rational, q: &PrimePower) -> Result<u64, NumError> {
    Ok(residue(x, q)?
        .to_u64()
        .expect("residue fits in u64 for small moduli"))
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(modulus);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(modulus))
}

/// Square-free decomposition `|x| = t² · n` with `n` a positive square-free
/// integer and `t` carrying the sign of `x`.
///
/// For positive `x` this reconstructs `x` exactly as `t²n`. The sign
/// convention on `t` matters when recovering a coordinate `b` from its
/// square: `b = t√n` keeps the sign of `b` in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub t: Rational,
    pub n: BigUint,
}

/// Factor a positive integer by trial division up to `bound`.
///
/// A cofactor left over after trial division is accepted as prime when it is
/// below `bound²` (a composite cofactor would need two factors above
/// `bound`); anything larger fails with `FactorizationTooHard` rather than
/// silently mis-factoring.
pub fn factor_with_bound(n: &BigUint, bound: u64) -> Result<Vec<(u64, u32)>, NumError> {
    let mut factors = Vec::new();
    let mut rem = n.clone();
    if rem.is_zero() {
        return Err(NumError::ZeroInput);
    }
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    let v2 = int_valuation(&rem, 2) as u32;
    if v2 > 0 {
        rem >>= v2 as usize;
        push(2, v2);
    }
    let mut d = 3u64;
    while d <= bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rem {
            break;
        }
        let mut e = 0u32;
        loop {
            let (quot, r) = rem.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rem = quot;
            e += 1;
        }
        push(d, e);
        d += 2;
    }
    if !rem.is_one() {
        let limit = BigUint::from(bound) * BigUint::from(bound);
        if rem > limit {
            return Err(NumError::FactorizationTooHard { bound });
        }
        let p = rem.to_u64().expect("cofactor below bound² fits in u64");
        push(p, 1);
    }
    Ok(factors)
}

/// Square-free part of a positive integer: the product of primes dividing it
/// to an odd power, together with its rational square root complement
/// (`n = s² · sf`, returns `(s, sf)`).
pub fn squarefree_part(n: &BigUint, bound: u64) -> Result<(BigUint, BigUint), NumError> {
    let mut s = BigUint::one();
    let mut sf = BigUint::one();
    for (p, e) in factor_with_bound(n, bound)? {
        let p = BigUint::from(p);
        if e >= 2 {
            s *= p.pow(e / 2);
        }
        if e % 2 == 1 {
            sf *= p;
        }
    }
    Ok((s, sf))
}

/// Decompose a nonzero rational as `t²n` (see [`SquareFreeDecomposition`]),
/// using the default trial-division bound.
pub fn squarefree_decompose(x: &Rational) -> Result<SquareFreeDecomposition, NumError> {
    squarefree_decompose_with_bound(x, DEFAULT_FACTOR_BOUND)
}

pub fn squarefree_decompose_with_bound(
    x: &Rational,
    bound: u64,
) -> Result<SquareFreeDecomposition, NumError> {
    if x.is_zero() {
        return Err(NumError::ZeroInput);
    }
    // |x| = A/B reduced. A/B = (A·B)/B², so with A·B = s²·n square-free
    // decomposed, |x| = (s/B)²·n.
    let a = x.numer().magnitude();
    let b = x.denom().magnitude();
    let (s, n) = squarefree_part(&(a * b), bound)?;
    let sign = if x.is_negative() { Sign::Minus } else { Sign::Plus };
    let t = Rational::new(
        BigInt::from_biguint(sign, s),
        BigInt::from_biguint(Sign::Plus, b.clone()),
    );
    Ok(SquareFreeDecomposition { t, n })
}

/// Parse a rational from its canonical string form `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Serde adaptor: rationals as canonical `"p/q"` / `"p"` strings in all
/// JSON payloads.
pub mod ratstr {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adaptor for `Option<Rational>` fields.
pub mod ratstr_opt {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Shorthand used throughout tests and builders.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}
