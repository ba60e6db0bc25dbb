use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::{build_sweep_tables, is_generator, FiniteField, Limits, SweepTables};
use crate::error::{Error, Result};
use crate::modring::{is_prime, prime_factors};
use crate::poly::{Poly, PolyRing};

/// Largest base field that gets a full addition table (`u16` entries).
const ADD_TABLE_MAX: u32 = 1024;

/// An element of `F_{p^m}`, stored as its canonical index
/// `sum c_i p^i` over the coefficient vector `(c_0, ..., c_{m-1})`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BaseElem(pub(crate) u32);

impl BaseElem {
    pub const ZERO: BaseElem = BaseElem(0);
    pub const ONE: BaseElem = BaseElem(1);

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseElem({})", self.0)
    }
}

/// `F_{p^m} = F_p[x]/(f)` with `f` the lexicographically smallest monic
/// irreducible of degree `m`. Multiplication runs through exp/log tables.
pub struct BaseField {
    p: u32,
    m: u32,
    qb: u32,
    ring: PolyRing,
    modulus: Poly,
    /// `p^i` for `i` in `0..=m`.
    radix: Vec<u32>,
    /// `exp[k] = g^k`, doubled so `exp[log a + log b]` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
    limits: Limits,
    sweep: OnceLock<Result<SweepTables<BaseElem>>>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<u32> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    u32::try_from(p)
        .ok()
        .filter(|&p| p < (1 << 16))
        .ok_or_else(|| Error::UnsupportedSize(format!("prime {p} is too large")))
}

impl BaseField {
    /// Stand-alone `F_{p^m}`; its order must respect the sweep cap.
    pub fn new(p: u64, m: u32, limits: Limits) -> Result<Self> {
        let p32 = check_odd_prime(p)?;
        let qb = (p32 as u64)
            .checked_pow(m)
            .ok_or_else(|| Error::UnsupportedSize(format!("{p}^{m} overflows")))?;
        limits.check(qb)?;
        Self::build(p32, m, limits)
    }

    pub(crate) fn build(p: u32, m: u32, limits: Limits) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let qb64 = (p as u64).pow(m);
        if qb64 > (1 << 31) {
            return Err(Error::UnsupportedSize(format!(
                "base field of order {qb64} is too large"
            )));
        }
        let qb = qb64 as u32;
        let ring = PolyRing::new(p);
        let modulus = ring.smallest_irreducible(m as usize);
        if !ring.is_irreducible(&modulus) {
            return Err(Error::ReducibleModulus(format!("{modulus:?}")));
        }
        let radix: Vec<u32> = (0..=m).map(|i| p.pow(i)).collect();

        let mut field = BaseField {
            p,
            m,
            qb,
            ring,
            modulus,
            radix,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
            limits,
            sweep: OnceLock::new(),
        };
        field.neg = (0..qb).map(|a| field.neg_digitwise(a)).collect();
        if qb <= ADD_TABLE_MAX {
            let mut table = Vec::with_capacity((qb * qb) as usize);
            for a in 0..qb {
                for b in 0..qb {
                    table.push(field.add_digitwise(a, b) as u16);
                }
            }
            field.add_table = Some(table);
        }
        field.build_log_tables()?;
        Ok(field)
    }

    fn build_log_tables(&mut self) -> Result<()> {
        let n = self.qb - 1;
        let primes = prime_factors(&BigUint::from(n), self.limits.trial_division_bound)?;
        let generator = (1..self.qb)
            .find(|&g| {
                let gp = self.to_poly(g);
                primes.iter().all(|&r| {
                    let e = BigUint::from(n as u64 / r);
                    self.ring.powmod(&gp, &e, &self.modulus) != [1]
                })
            })
            .ok_or_else(|| Error::InternalInvariant("base field has no generator".into()))?;
        let gp = self.to_poly(generator);
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![u32::MAX; self.qb as usize];
        let mut cur: Poly = vec![1];
        for k in 0..n {
            let idx = self.pack_poly(&cur);
            if log[idx as usize] != u32::MAX {
                return Err(Error::InternalInvariant("base generator is not primitive".into()));
            }
            log[idx as usize] = k;
            exp.push(idx);
            cur = self.ring.mulmod(&cur, &gp, &self.modulus);
        }
        let doubled = exp.clone();
        exp.extend(doubled);
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn qb(&self) -> u32 {
        self.qb
    }

    /// Defining polynomial, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn poly_ring(&self) -> PolyRing {
        self.ring
    }

    fn to_poly(&self, mut a: u32) -> Poly {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(a % self.p);
            a /= self.p;
        }
        PolyRing::trim(out)
    }

    fn pack_poly(&self, poly: &[u32]) -> u32 {
        poly.iter()
            .take(self.m as usize)
            .enumerate()
            .map(|(i, &c)| c * self.radix[i])
            .sum()
    }

    /// Coefficient vector of length exactly `m`, constant term first.
    pub fn coeffs(&self, a: BaseElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut x = a.0;
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<BaseElem> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients in [0, {}), got {coeffs:?}",
                self.m, self.p
            )));
        }
        Ok(BaseElem(self.pack_poly(coeffs)))
    }

    /// Reduce an arbitrary polynomial over `F_p` into the field.
    pub fn reduce_poly(&self, poly: &[u32]) -> BaseElem {
        let r = self.ring.rem(poly, &self.modulus);
        BaseElem(self.pack_poly(&r))
    }

    /// The prime-field constant `n mod p`.
    pub fn constant(&self, n: i64) -> BaseElem {
        BaseElem(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.m as usize {
            let s = a % self.p + b % self.p;
            out += if s >= self.p { s - self.p } else { s } * self.radix[i];
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digitwise(&self, mut a: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.m as usize {
            let d = a % self.p;
            out += if d == 0 { 0 } else { self.p - d } * self.radix[i];
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        match &self.add_table {
            Some(t) => BaseElem(t[(a.0 * self.qb + b.0) as usize] as u32),
            None => BaseElem(self.add_digitwise(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: BaseElem) -> BaseElem {
        BaseElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        if a.0 == 0 || b.0 == 0 {
            return BaseElem::ZERO;
        }
        BaseElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: BaseElem) -> Result<BaseElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.qb - 1;
        Ok(BaseElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    /// Inverse through the extended Euclidean algorithm on coefficient
    /// polynomials; shares nothing with the table path.
    pub fn inv_by_ext_gcd(&self, a: BaseElem) -> Result<BaseElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inv = self
            .ring
            .inv_mod(&self.to_poly(a.0), &self.modulus)
            .ok_or_else(|| Error::InternalInvariant("nonzero element not invertible".into()))?;
        Ok(BaseElem(self.pack_poly(&inv)))
    }

    /// Product computed by polynomial multiplication and reduction.
    pub fn mul_by_poly(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        let r = self
            .ring
            .mulmod(&self.to_poly(a.0), &self.to_poly(b.0), &self.modulus);
        BaseElem(self.pack_poly(&r))
    }

    pub fn pow_u64(&self, a: BaseElem, e: u64) -> BaseElem {
        if a.0 == 0 {
            return if e == 0 { BaseElem::ONE } else { BaseElem::ZERO };
        }
        let n = (self.qb - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        BaseElem(self.exp[k as usize])
    }

    /// Whether `a` lies in the prime field.
    pub fn is_prime_field_elem(&self, a: BaseElem) -> bool {
        a.0 < self.p
    }

    /// `Tr_1^m(a) = sum_{i<m} a^(p^i)`, checked to land in `F_p`.
    pub fn trace_to_prime(&self, a: BaseElem) -> Result<u32> {
        let mut acc = BaseElem::ZERO;
        let mut frob = a;
        for _ in 0..self.m {
            acc = self.add(acc, frob);
            frob = self.pow_u64(frob, self.p as u64);
        }
        if !self.is_prime_field_elem(acc) {
            return Err(Error::InternalInvariant(format!(
                "trace {acc:?} is outside the prime field"
            )));
        }
        Ok(acc.0)
    }

    pub fn is_square(&self, a: BaseElem) -> bool {
        a.0 == 0 || self.log[a.0 as usize] % 2 == 0
    }
}

impl FiniteField for BaseField {
    type Elem = BaseElem;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.m
    }

    fn order(&self) -> u64 {
        self.qb as u64
    }

    fn limits(&self) -> &Limits {
        &self.limits
    }

    fn zero(&self) -> BaseElem {
        BaseElem::ZERO
    }

    fn one(&self) -> BaseElem {
        BaseElem::ONE
    }

    fn add(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        BaseField::add(self, a, b)
    }

    fn neg(&self, a: BaseElem) -> BaseElem {
        BaseField::neg(self, a)
    }

    fn mul(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        BaseField::mul(self, a, b)
    }

    fn inv(&self, a: BaseElem) -> Result<BaseElem> {
        BaseField::inv(self, a)
    }

    fn pow_u64(&self, a: BaseElem, e: u64) -> BaseElem {
        BaseField::pow_u64(self, a, e)
    }

    fn index(&self, a: BaseElem) -> u64 {
        a.0 as u64
    }

    fn element(&self, idx: u64) -> BaseElem {
        debug_assert!(idx < self.qb as u64);
        BaseElem(idx as u32)
    }

    fn abs_trace(&self, a: BaseElem) -> u32 {
        self.trace_to_prime(a).expect("trace lands in the prime field")
    }

    fn sweep_tables(&self) -> Result<&SweepTables<BaseElem>> {
        self.sweep
            .get_or_init(|| build_sweep_tables(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

impl BaseField {
    /// Generator check used by tests against the table generator.
    pub fn is_primitive(&self, a: BaseElem) -> Result<bool> {
        let primes = prime_factors(
            &BigUint::from(self.qb - 1),
            self.limits.trial_division_bound,
        )?;
        Ok(is_generator(self, a, &primes))
    }
}
