//! Finite field arithmetic: the prime-power field `F_{p^m}` and the
//! quadratic tower `F_{p^{2m}} = F_{p^m}(alpha)` built on top of it.
//!
//! Both implement [`FiniteField`]. Every element has a canonical index in
//! `[0, q)`: the base-`p` number whose digits are the element's
//! coordinates in the power basis (for the tower, the `a0` digits first,
//! then the `a1` digits). Enumeration, occurrence counting and report
//! witnesses all use that index.

mod base;
mod tower;

pub use base::{BaseElem, BaseField};
pub use tower::{FieldCtx, FieldElem, ModulusVariant, TopModulus};

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modring::prime_factors;

/// Default cap on the order of fields that exhaustive operations accept.
pub const DEFAULT_MAX_Q: u64 = 1 << 20;
/// Default trial-division bound when factoring `q - 1`.
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Size limits shared by a field and everything that sweeps over it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_q: u64,
    pub trial_division_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_q: DEFAULT_MAX_Q,
            trial_division_bound: DEFAULT_TRIAL_DIVISION_BOUND,
        }
    }
}

impl Limits {
    pub fn with_max_q(max_q: u64) -> Self {
        Self {
            max_q,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, q: u64) -> Result<()> {
        if q > self.max_q {
            return Err(Error::UnsupportedSize(format!(
                "field order {q} exceeds the sweep cap {}",
                self.max_q
            )));
        }
        Ok(())
    }
}

/// Powers of a primitive element and the matching discrete-log table.
#[derive(Debug, Clone)]
pub struct SweepTables<E> {
    pub generator: E,
    /// `powers[k] = generator^k` for `k` in `[0, q - 1)`.
    pub powers: Vec<E>,
    /// `log[index(x)] = k` with `generator^k = x`; `u32::MAX` for zero.
    pub log: Vec<u32>,
}

/// A finite field of odd characteristic with canonically indexed elements.
pub trait FiniteField: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    /// Field order `q`.
    fn order(&self) -> u64;
    fn limits(&self) -> &Limits;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;

    fn index(&self, a: Self::Elem) -> u64;
    /// Element with the given canonical index; `idx < q`.
    fn element(&self, idx: u64) -> Self::Elem;

    /// Absolute trace `Tr_1^n`, as a residue in `[0, p)`.
    fn abs_trace(&self, a: Self::Elem) -> u32;

    /// Cached powers/logs of the first primitive element in enumeration order.
    fn sweep_tables(&self) -> Result<&SweepTables<Self::Elem>>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn integer(&self, n: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        self.element(n.rem_euclid(p) as u64)
    }

    /// Power-basis vector with canonical index `p^j`, `j < degree`.
    fn basis(&self, j: u32) -> Self::Elem {
        self.element((self.characteristic() as u64).pow(j))
    }

    fn pow_u64(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn pow_biguint(&self, a: Self::Elem, e: &BigUint) -> Self::Elem {
        if a == self.zero() {
            return if e.is_zero() { self.one() } else { self.zero() };
        }
        let reduced = e % (self.order() - 1);
        self.pow_u64(a, reduced.to_u64().expect("reduced below q - 1"))
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    fn pow(&self, a: Self::Elem, e: &BigInt) -> Result<Self::Elem> {
        if e.is_negative() {
            if a == self.zero() {
                return Err(Error::DivisionByZero);
            }
            let n = BigInt::from(self.order() - 1);
            let r = e.mod_floor(&n);
            return Ok(self.pow_biguint(a, r.magnitude()));
        }
        Ok(self.pow_biguint(a, e.magnitude()))
    }

    fn primitive_element(&self) -> Result<Self::Elem> {
        Ok(self.sweep_tables()?.generator)
    }

    /// All elements in canonical index order.
    fn enumerate(&self) -> Result<Vec<Self::Elem>> {
        self.limits().check(self.order())?;
        Ok((0..self.order()).map(|i| self.element(i)).collect())
    }
}

/// Exact multiplicative order of a nonzero element.
pub fn multiplicative_order<F: FiniteField>(field: &F, a: F::Elem) -> Result<u64> {
    if a == field.zero() {
        return Err(Error::DivisionByZero);
    }
    let n = field.order() - 1;
    let primes = prime_factors(&BigUint::from(n), field.limits().trial_division_bound)?;
    let mut order = n;
    for r in primes {
        while order % r == 0 && field.pow_u64(a, order / r) == field.one() {
            order /= r;
        }
    }
    Ok(order)
}

/// Whether `a` generates the multiplicative group, given the primes of `q - 1`.
pub(crate) fn is_generator<F: FiniteField>(field: &F, a: F::Elem, primes: &[u64]) -> bool {
    let n = field.order() - 1;
    a != field.zero() && primes.iter().all(|&r| field.pow_u64(a, n / r) != field.one())
}

/// First primitive element in enumeration order, its power table and logs.
pub(crate) fn build_sweep_tables<F: FiniteField>(field: &F) -> Result<SweepTables<F::Elem>> {
    let q = field.order();
    field.limits().check(q)?;
    if q > u32::MAX as u64 {
        return Err(Error::UnsupportedSize(format!(
            "field order {q} too large for log tables"
        )));
    }
    let primes = prime_factors(&BigUint::from(q - 1), field.limits().trial_division_bound)?;
    let generator = (1..q)
        .map(|i| field.element(i))
        .find(|&x| is_generator(field, x, &primes))
        .ok_or_else(|| Error::InternalInvariant("no primitive element found".into()))?;
    let mut powers = Vec::with_capacity((q - 1) as usize);
    let mut log = vec![u32::MAX; q as usize];
    let mut x = field.one();
    for k in 0..q - 1 {
        let idx = field.index(x) as usize;
        if log[idx] != u32::MAX {
            return Err(Error::InternalInvariant(format!(
                "generator power {k} repeats an earlier power"
            )));
        }
        log[idx] = k as u32;
        powers.push(x);
        x = field.mul(x, generator);
    }
    if x != field.one() {
        return Err(Error::InternalInvariant(
            "generator^(q-1) != 1".to_string(),
        ));
    }
    Ok(SweepTables {
        generator,
        powers,
        log,
    })
}
