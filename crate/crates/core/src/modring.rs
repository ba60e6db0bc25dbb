//! Integer arithmetic for exponents: Bézout coefficients, inverses modulo
//! `q - 1`, small-number primality and factoring, and the closed-form
//! inverse exponents of the three monomial families.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::FamilyClass;

/// Extended Euclid: returns `(g, u, w)` with `u*a + w*b = g = gcd(a, b)` and `g > 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("ext_gcd(0, 0) is undefined".into()));
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        Ok((-e.gcd, -e.x, -e.y))
    } else {
        Ok((e.gcd, e.x, e.y))
    }
}

/// Inverse of `a` modulo `n`, returned in `[1, n)` (or `0` when `n == 1`).
pub fn mod_inverse(a: &BigInt, n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let n_int = BigInt::from(n.clone());
    let reduced = a.mod_floor(&n_int);
    let not_invertible = || Error::NotInvertible {
        a: a.to_string(),
        n: n.to_string(),
    };
    if reduced.is_zero() && !n.is_one() {
        return Err(not_invertible());
    }
    let (g, u, _) = ext_gcd(&reduced, &n_int)?;
    if !g.is_one() {
        return Err(not_invertible());
    }
    Ok(to_biguint(&u.mod_floor(&n_int)))
}

pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

/// Non-negative residue of a `BigInt` known to be non-negative.
pub(crate) fn to_biguint(x: &BigInt) -> BigUint {
    debug_assert!(x.sign() != Sign::Minus);
    x.magnitude().clone()
}

/// The exponent ring `Z / (q - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentRing {
    modulus: BigUint,
}

impl ExponentRing {
    pub fn new(modulus: BigUint) -> Result<Self> {
        if modulus < BigUint::from(2u32) {
            return Err(Error::InvalidArgument(format!(
                "exponent ring modulus must be at least 2, got {modulus}"
            )));
        }
        Ok(Self { modulus })
    }

    /// Ring of exponents for a field of order `q`.
    pub fn for_field_order(q: &BigUint) -> Result<Self> {
        Self::new(q - 1u32)
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn reduce(&self, x: &BigInt) -> BigUint {
        to_biguint(&x.mod_floor(&BigInt::from(self.modulus.clone())))
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    pub fn inverse(&self, a: &BigUint) -> Result<BigUint> {
        mod_inverse(&BigInt::from(a.clone()), &self.modulus)
    }

    pub fn is_unit(&self, a: &BigUint) -> bool {
        a.gcd(&self.modulus).is_one()
    }
}

/// Which formula produced a family's inverse exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InversePath {
    ClosedForm,
    Generic,
}

impl std::fmt::Display for InversePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InversePath::ClosedForm => "closed-form",
            InversePath::Generic => "generic",
        })
    }
}

/// A closed-form inverse exponent, kept alongside its symbolic shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    /// Symbolic formula in `p`, `m` (e.g. `2*3^(2m-1) - 3^(m-1)`).
    pub formula: &'static str,
    /// Exact integer value before reduction, when the formula is integral.
    /// `None` for the form that divides by 5 in the unit group.
    pub integer_value: Option<BigInt>,
    /// Value reduced into `[0, q - 1)`.
    pub value: BigUint,
}

fn pow_big(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn require_odd_m(m: u32) -> Result<()> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::HypothesisViolated(format!(
            "m must be a positive odd integer, got {m}"
        )));
    }
    Ok(())
}

fn require_p3(p: u64) -> Result<()> {
    if p != 3 {
        return Err(Error::HypothesisViolated(format!(
            "this family lives in characteristic 3, got p = {p}"
        )));
    }
    Ok(())
}

/// Forward exponent `d` of a family instance (no hypothesis checks).
pub fn forward_exponent(class: FamilyClass, p: u64, m: u32, s: u64) -> BigUint {
    let pm = pow_big(p, m);
    let d = match class {
        FamilyClass::C1 => &pm + 2u32,
        FamilyClass::C2 => &pm * 2u32 + 3u32,
        FamilyClass::C3 => BigInt::from(s) * (&pm - 1u32) + 1u32,
    };
    to_biguint(&d)
}

/// Closed-form inverse exponent for the parameter sets that have one.
///
/// * `C1`, `p = 3`, odd `m`: `2*3^(2m-1) - 3^(m-1)`
/// * `C2`, `p = 3`, odd `m`: `-(2*3^m - 3)/5`, with `1/5` taken in `Z/(q-1)`
/// * `C3`, `s = 2`, `p = 3`, odd `m`: `3^(2m-1) + 2*3^(m-1)`
/// * `C3`, `s = 2`, `p = 7 mod 12`, odd `m`: `(3 - 2(p^m-1)(2p^m+1))/3`
///
/// Any other parameter set is a `HypothesisViolated` error; callers fall
/// back to [`mod_inverse`].
pub fn closed_form_exponent(class: FamilyClass, p: u64, m: u32, s: u64) -> Result<ClosedForm> {
    require_odd_m(m)?;
    let q_minus_1 = to_biguint(&(pow_big(p, 2 * m) - 1u32));
    let ring = ExponentRing::new(q_minus_1)?;
    match class {
        FamilyClass::C1 => {
            require_p3(p)?;
            let e = pow_big(3, 2 * m - 1) * 2u32 - pow_big(3, m - 1);
            Ok(ClosedForm {
                formula: "2*3^(2m-1) - 3^(m-1)",
                value: ring.reduce(&e),
                integer_value: Some(e),
            })
        }
        FamilyClass::C2 => {
            require_p3(p)?;
            let fifth = ring.inverse(&BigUint::from(5u32)).map_err(|_| {
                Error::HypothesisViolated("5 is not a unit modulo 3^(2m) - 1".into())
            })?;
            let numerator: BigInt = -(pow_big(3, m) * 2u32 - 3u32);
            let e = ring.reduce(&(numerator * BigInt::from(fifth)));
            Ok(ClosedForm {
                formula: "-(2*3^m - 3)/5",
                value: e,
                integer_value: None,
            })
        }
        FamilyClass::C3 => {
            if s != 2 {
                return Err(Error::HypothesisViolated(format!(
                    "closed-form inverses exist only for s = 2, got s = {s}"
                )));
            }
            if p == 3 {
                let e = pow_big(3, 2 * m - 1) + pow_big(3, m - 1) * 2u32;
                Ok(ClosedForm {
                    formula: "3^(2m-1) + 2*3^(m-1)",
                    value: ring.reduce(&e),
                    integer_value: Some(e),
                })
            } else if p % 12 == 7 {
                let pm = pow_big(p, m);
                let numerator = BigInt::from(3) - (&pm - 1u32) * (&pm * 2u32 + 1u32) * 2u32;
                let (e, rem) = numerator.div_rem(&BigInt::from(3));
                if !rem.is_zero() {
                    return Err(Error::InternalInvariant(format!(
                        "(3 - 2(p^m-1)(2p^m+1)) not divisible by 3 for p = {p}, m = {m}"
                    )));
                }
                Ok(ClosedForm {
                    formula: "(3 - 2(p^m-1)(2p^m+1))/3",
                    value: ring.reduce(&e),
                    integer_value: Some(e),
                })
            } else {
                Err(Error::HypothesisViolated(format!(
                    "s = 2 closed form needs p = 3 or p = 7 mod 12, got p = {p}"
                )))
            }
        }
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` by trial division up to `bound`.
///
/// A leftover cofactor is accepted when it is provably prime (`bound^2`
/// exceeds it); otherwise the factorization is refused.
pub fn prime_factors(n: &BigUint, bound: u64) -> Result<Vec<u64>> {
    let mut rest = n
        .to_u64()
        .ok_or_else(|| Error::UnsupportedSize(format!("cannot factor {n}: exceeds 64 bits")))?;
    let mut out = Vec::new();
    if rest < 2 {
        return Ok(out);
    }
    let mut f = 2u64;
    while f <= bound && f.saturating_mul(f) <= rest {
        if rest % f == 0 {
            out.push(f);
            while rest % f == 0 {
                rest /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let b = bound as u128 + 1;
        let proven = b.checked_mul(b).map_or(true, |sq| sq > rest as u128);
        if !(proven || is_prime(rest)) {
            return Err(Error::UnsupportedSize(format!(
                "factoring {n} needs trial division beyond {bound}"
            )));
        }
        out.push(rest);
    }
    Ok(out)
}

/// Exact `p^k` as a `u64`, or `None` on overflow.
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

pub(crate) fn biguint_pow(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn ext_gcd_bezout() {
        let (g, u, w) = ext_gcd(&bi(5), &bi(8)).unwrap();
        assert_eq!(g, bi(1));
        assert_eq!(&u * 5 + &w * 8, g);
        assert_eq!(ext_gcd(&bi(0), &bi(12)).unwrap(), (bi(12), bi(0), bi(1)));
        let (g, u, w) = ext_gcd(&bi(-12), &bi(18)).unwrap();
        assert_eq!(g, bi(6));
        assert_eq!(u * -12 + w * 18, g);
        assert!(ext_gcd(&bi(0), &bi(0)).is_err());
    }

    #[test]
    fn ext_gcd_family_exponents_are_units() {
        for m in [1u32, 3, 5] {
            let d = pow_big(3, m) + 2u32;
            let n = pow_big(3, 2 * m) - 1u32;
            assert_eq!(ext_gcd(&d, &n).unwrap().0, bi(1), "m = {m}");
        }
    }

    #[test]
    fn mod_inverse_examples() {
        let n8 = BigUint::from(8u32);
        assert_eq!(mod_inverse(&bi(5), &n8).unwrap(), BigUint::from(5u32));
        assert_eq!(mod_inverse(&bi(1), &n8).unwrap(), BigUint::from(1u32));
        // 2*3 + 3 = 9 = 1 mod 8
        assert_eq!(mod_inverse(&bi(9), &n8).unwrap(), BigUint::from(1u32));
        assert_eq!(mod_inverse(&bi(-3), &n8).unwrap(), BigUint::from(5u32));
        assert!(matches!(
            mod_inverse(&bi(2), &n8),
            Err(Error::NotInvertible { .. })
        ));
        assert!(mod_inverse(&bi(0), &n8).is_err());
    }

    #[test]
    fn closed_forms_small_cases() {
        let c1 = closed_form_exponent(FamilyClass::C1, 3, 1, 0).unwrap();
        assert_eq!(c1.value, BigUint::from(5u32));
        let c3 = closed_form_exponent(FamilyClass::C3, 3, 1, 2).unwrap();
        assert_eq!(c3.value, BigUint::from(5u32));
        let c3_7 = closed_form_exponent(FamilyClass::C3, 7, 1, 2).unwrap();
        assert_eq!(c3_7.integer_value, Some(bi(-59)));
        assert_eq!(c3_7.value, BigUint::from(37u32));
        let c1_5 = closed_form_exponent(FamilyClass::C1, 3, 5, 0).unwrap();
        assert_eq!(c1_5.value, BigUint::from(39285u32));
    }

    #[test]
    fn closed_form_rejects_bad_hypotheses() {
        assert!(closed_form_exponent(FamilyClass::C1, 3, 2, 0).is_err());
        assert!(closed_form_exponent(FamilyClass::C2, 5, 1, 0).is_err());
        assert!(closed_form_exponent(FamilyClass::C3, 7, 1, 4).is_err());
        assert!(closed_form_exponent(FamilyClass::C3, 11, 1, 2).is_err());
    }

    #[test]
    fn closed_forms_match_generic_inverse() {
        let cases: &[(FamilyClass, u64, u32, u64)] = &[
            (FamilyClass::C1, 3, 1, 0),
            (FamilyClass::C1, 3, 3, 0),
            (FamilyClass::C1, 3, 5, 0),
            (FamilyClass::C1, 3, 7, 0),
            (FamilyClass::C2, 3, 1, 0),
            (FamilyClass::C2, 3, 3, 0),
            (FamilyClass::C2, 3, 5, 0),
            (FamilyClass::C3, 3, 1, 2),
            (FamilyClass::C3, 3, 3, 2),
            (FamilyClass::C3, 7, 1, 2),
            (FamilyClass::C3, 7, 3, 2),
            (FamilyClass::C3, 19, 1, 2),
            (FamilyClass::C3, 31, 1, 2),
        ];
        for &(class, p, m, s) in cases {
            let cf = closed_form_exponent(class, p, m, s).unwrap();
            let d = forward_exponent(class, p, m, s);
            let n = biguint_pow(p, 2 * m) - 1u32;
            let generic = mod_inverse(&BigInt::from(d.clone()), &n).unwrap();
            assert_eq!(cf.value, generic, "{class:?} p={p} m={m} s={s}");
        }
    }

    #[test]
    fn primality_and_factoring() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(prime_factors(&BigUint::from(48u32), 100).unwrap(), vec![2, 3]);
        assert_eq!(
            prime_factors(&BigUint::from(59048u32), 1_000_000).unwrap(),
            vec![2, 11, 61]
        );
        // 1_000_003 is prime; with a tiny bound it is still accepted via Miller-Rabin.
        assert_eq!(
            prime_factors(&BigUint::from(2u64 * 1_000_003), 10).unwrap(),
            vec![2, 1_000_003]
        );
    }
}
