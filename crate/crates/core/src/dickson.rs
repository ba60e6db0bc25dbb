//! Dickson polynomials `D_n(x, a)`: `D_0 = 2`, `D_1 = x`,
//! `D_{i+2} = x D_{i+1} - a D_i`.
//!
//! Coefficients are indexed by `i`, the coefficient of `(-a)^i x^{n-2i}`.
//! Over the integers that coefficient is `n/(n-i) * C(n-i, i)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::modring::gcd;
use crate::monomial::FieldMap;

/// `D_n(x, a)` by iterating the recurrence.
pub fn dickson_eval<F: FiniteField>(field: &F, n: u64, x: F::Elem, a: F::Elem) -> F::Elem {
    let two = field.integer(2);
    if n == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, x);
    for _ in 1..n {
        let next = field.sub(field.mul(x, cur), field.mul(a, prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// `x -> D_n(x, a)` as an evaluable map.
#[derive(Debug, Clone, Copy)]
pub struct DicksonMap<E> {
    pub n: u64,
    pub a: E,
}

impl<F: FiniteField> FieldMap<F> for DicksonMap<F::Elem> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        dickson_eval(field, self.n, x, self.a)
    }
}

/// Integer coefficients `n * C(n-i, i) / (n-i)`, `i` in `[0, n/2]`.
pub fn dickson_integer_coeffs(n: u64) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::InvalidArgument("closed form needs n >= 1".into()));
    }
    let mut out = Vec::with_capacity((n / 2 + 1) as usize);
    for i in 0..=n / 2 {
        let num = BigUint::from(n) * binomial(n - i, i);
        let (c, r) = num.div_rem(&BigUint::from(n - i));
        if !r.is_zero() {
            return Err(Error::InternalInvariant(format!(
                "n*C(n-i,i)/(n-i) not integral at n = {n}, i = {i}"
            )));
        }
        out.push(c);
    }
    Ok(out)
}

/// Closed-form coefficients reduced mod `p`.
pub fn dickson_coeffs(p: u32, n: u64) -> Result<Vec<u32>> {
    let p_big = BigUint::from(p);
    Ok(dickson_integer_coeffs(n)?
        .into_iter()
        .map(|c| (c % &p_big).to_u32().expect("below p"))
        .collect())
}

/// Integer coefficients from the recurrence: `c_{k+2}[i] = c_{k+1}[i] + c_k[i-1]`.
pub fn dickson_recurrence_coeffs(n: u64) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    for _ in 1..n {
        let mut next = cur.clone();
        next.resize(next.len().max(prev.len() + 1), BigInt::zero());
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The fraction `(n-i)/n * C(n-i, i)` as a reduced `(numerator, denominator)`.
pub fn reversed_fraction_coeff(n: u64, i: u64) -> (BigUint, BigUint) {
    let num = BigUint::from(n - i) * binomial(n - i, i);
    let den = BigUint::from(n);
    let g = gcd(&num, &den);
    (num / &g, den / g)
}

/// Integers `n` in `[1, max_n]` where the `(n-i)/n` fraction reproduces the
/// recurrence for every `i`.
pub fn reversed_fraction_agreements(max_n: u64) -> Vec<u64> {
    (1..=max_n)
        .filter(|&n| {
            let rec = dickson_recurrence_coeffs(n);
            (0..=n / 2).all(|i| {
                let (num, den) = reversed_fraction_coeff(n, i);
                den.is_one() && BigInt::from(num) == rec[i as usize]
            })
        })
        .collect()
}

/// `D_n` is a permutation of `F_q` iff `gcd(n, q^2 - 1) = 1`.
pub fn dickson_is_pp(n: u64, q: &BigUint) -> bool {
    n >= 1 && gcd(&BigUint::from(n), &(q * q - 1u32)).is_one()
}

/// Expanded `D_n` over `F_p` as `(coefficient of a^i x^{n-2i})` pairs, sign folded in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DicksonTerm {
    pub a_power: u64,
    pub x_power: u64,
    pub coeff: u32,
}

pub fn dickson_terms(p: u32, n: u64) -> Result<Vec<DicksonTerm>> {
    let coeffs = dickson_coeffs(p, n)?;
    Ok(coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(i, c)| {
            let signed = if i % 2 == 1 { (p - c) % p } else { c };
            DicksonTerm {
                a_power: i as u64,
                x_power: n - 2 * i as u64,
                coeff: signed,
            }
        })
        .collect())
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Whether the recurrence route and the closed form agree mod `p` for `n`.
pub fn closed_form_matches_recurrence(p: u32, n: u64) -> Result<bool> {
    let closed = dickson_coeffs(p, n)?;
    let rec = dickson_recurrence_coeffs(n);
    let p_big = BigInt::from(p);
    Ok(closed.len() == rec.len()
        && closed
            .iter()
            .zip(&rec)
            .all(|(&c, r)| !r.is_negative() && BigInt::from(c) == r.mod_floor(&p_big)))
}
