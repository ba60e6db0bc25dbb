use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::base::check_odd_prime;
use super::{build_sweep_tables, BaseElem, BaseField, FiniteField, Limits, SweepTables};
use crate::error::{Error, Result};
use crate::modring::biguint_pow;

/// Choice of the quadratic `X^2 + bX + c` defining `alpha` over `F_{p^m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusVariant {
    #[serde(rename = "x2+1")]
    X2Plus1,
    #[serde(rename = "x2+2x+2")]
    X2Plus2XPlus2,
    #[serde(rename = "x2+x+2")]
    X2PlusXPlus2,
    /// `X^2 - c` for the first non-square `c` of `F_{p^m}` in index order.
    #[serde(rename = "auto")]
    Auto,
}

impl ModulusVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusVariant::X2Plus1 => "x2+1",
            ModulusVariant::X2Plus2XPlus2 => "x2+2x+2",
            ModulusVariant::X2PlusXPlus2 => "x2+x+2",
            ModulusVariant::Auto => "auto",
        }
    }
}

impl fmt::Display for ModulusVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModulusVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(' ', "").as_str() {
            "x2+1" | "x^2+1" => Ok(ModulusVariant::X2Plus1),
            "x2+2x+2" | "x^2+2x+2" => Ok(ModulusVariant::X2Plus2XPlus2),
            "x2+x+2" | "x^2+x+2" => Ok(ModulusVariant::X2PlusXPlus2),
            "auto" => Ok(ModulusVariant::Auto),
            other => Err(Error::InvalidArgument(format!("unknown modulus '{other}'"))),
        }
    }
}

/// `X^2 + b X + c` over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopModulus {
    pub b: BaseElem,
    pub c: BaseElem,
}

/// An element `a0 + a1 * alpha` of `F_{p^{2m}}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    pub a0: BaseElem,
    pub a1: BaseElem,
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem {
        a0: BaseElem::ZERO,
        a1: BaseElem::ZERO,
    };
    pub const ONE: FieldElem = FieldElem {
        a0: BaseElem::ONE,
        a1: BaseElem::ZERO,
    };

    pub fn new(a0: BaseElem, a1: BaseElem) -> Self {
        Self { a0, a1 }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Whether the element lies in the embedded base field.
    pub fn in_base(self) -> bool {
        self.a1.is_zero()
    }
}

// Enumeration order: a1 most significant.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a1, self.a0).cmp(&(other.a1, other.a0))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}a)", self.a0.raw(), self.a1.raw())
    }
}

/// The tower `F_p -> F_{p^m} -> F_{p^{2m}}`, plus derived sizes.
pub struct FieldCtx {
    base: BaseField,
    variant: ModulusVariant,
    top: TopModulus,
    q: u64,
    limits: Limits,
    sweep: OnceLock<Result<SweepTables<FieldElem>>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.base.p())
            .field("m", &self.base.m())
            .field("base_modulus", &self.base.modulus())
            .field("variant", &self.variant)
            .field("top", &self.top)
            .finish()
    }
}

impl FieldCtx {
    pub fn new(p: u64, m: u32, variant: ModulusVariant) -> Result<Self> {
        Self::with_limits(p, m, variant, Limits::default())
    }

    pub fn with_limits(p: u64, m: u32, variant: ModulusVariant, limits: Limits) -> Result<Self> {
        let p32 = check_odd_prime(p)?;
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let q = m
            .checked_mul(2)
            .and_then(|n| p.checked_pow(n))
            .ok_or_else(|| Error::UnsupportedSize(format!("{p}^(2*{m}) overflows 64 bits")))?;
        limits.check(q)?;
        let base = BaseField::build(p32, m, limits)?;
        let top = resolve_top(&base, variant)?;
        let ctx = FieldCtx {
            base,
            variant,
            top,
            q,
            limits,
            sweep: OnceLock::new(),
        };
        ctx.check_trace_identities()?;
        Ok(ctx)
    }

    /// Characteristic-3 trace values of the fixed moduli:
    /// `x^2+1`: `Tr(alpha) = Tr(alpha^3) = 0`, `Tr(alpha^2) = 1`;
    /// `x^2+2x+2`: `Tr(alpha) = Tr(alpha^3) = 1`, `Tr(alpha^2) = Tr(alpha^6) = 0`.
    fn check_trace_identities(&self) -> Result<()> {
        if self.p() != 3 {
            return Ok(());
        }
        let expected: &[(u64, i64)] = match self.variant {
            ModulusVariant::X2Plus1 => &[(1, 0), (3, 0), (2, 1)],
            ModulusVariant::X2Plus2XPlus2 => &[(1, 1), (3, 1), (2, 0), (6, 0)],
            _ => return Ok(()),
        };
        let alpha = self.alpha();
        for &(k, want) in expected {
            let got = self.trace_to_base(self.pow_u64(alpha, k))?;
            if got != self.base.constant(want) {
                return Err(Error::InternalInvariant(format!(
                    "Tr(alpha^{k}) = {got:?}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn m(&self) -> u32 {
        self.base.m()
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn variant(&self) -> ModulusVariant {
        self.variant
    }

    pub fn top_modulus(&self) -> TopModulus {
        self.top
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_base(&self) -> u64 {
        self.base.qb() as u64
    }

    pub fn q_big(&self) -> BigUint {
        biguint_pow(self.p() as u64, 2 * self.m())
    }

    /// `q - 1`, the order of the multiplicative group.
    pub fn unit_order(&self) -> BigUint {
        self.q_big() - 1u32
    }

    pub fn alpha(&self) -> FieldElem {
        FieldElem::new(BaseElem::ZERO, BaseElem::ONE)
    }

    pub fn embed(&self, b: BaseElem) -> FieldElem {
        FieldElem::new(b, BaseElem::ZERO)
    }

    pub fn constant(&self, n: i64) -> FieldElem {
        self.embed(self.base.constant(n))
    }

    /// Canonical nested encoding `[[a0 coeffs], [a1 coeffs]]`.
    pub fn encode(&self, x: FieldElem) -> Vec<Vec<u32>> {
        vec![self.base.coeffs(x.a0), self.base.coeffs(x.a1)]
    }

    pub fn decode(&self, enc: &[Vec<u32>]) -> Result<FieldElem> {
        match enc {
            [a0, a1] => Ok(FieldElem::new(
                self.base.from_coeffs(a0)?,
                self.base.from_coeffs(a1)?,
            )),
            _ => Err(Error::InvalidArgument(format!(
                "expected two coordinate vectors, got {}",
                enc.len()
            ))),
        }
    }

    /// Base modulus as a coefficient vector, constant term first.
    pub fn base_modulus(&self) -> Vec<u32> {
        self.base.modulus().to_vec()
    }

    /// Top modulus encoded coefficientwise: `[[c], [b], [1]]`.
    pub fn encode_top_modulus(&self) -> Vec<Vec<u32>> {
        vec![
            self.base.coeffs(self.top.c),
            self.base.coeffs(self.top.b),
            self.base.coeffs(BaseElem::ONE),
        ]
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem::new(self.base.add(x.a0, y.a0), self.base.add(x.a1, y.a1))
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        FieldElem::new(self.base.neg(x.a0), self.base.neg(x.a1))
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem::new(self.base.sub(x.a0, y.a0), self.base.sub(x.a1, y.a1))
    }

    /// `alpha^2 = -b alpha - c`.
    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let k = &self.base;
        let t00 = k.mul(x.a0, y.a0);
        let t11 = k.mul(x.a1, y.a1);
        let t01 = k.add(k.mul(x.a0, y.a1), k.mul(x.a1, y.a0));
        let c0 = k.sub(t00, k.mul(self.top.c, t11));
        let c1 = if self.top.b.is_zero() {
            t01
        } else {
            k.sub(t01, k.mul(self.top.b, t11))
        };
        FieldElem::new(c0, c1)
    }

    pub fn scale(&self, lambda: BaseElem, x: FieldElem) -> FieldElem {
        FieldElem::new(self.base.mul(lambda, x.a0), self.base.mul(lambda, x.a1))
    }

    /// Inverse through the conjugate: `(a0 - b a1 - a1 alpha) / N(x)`.
    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.base;
        let norm = self.norm_coords(x);
        let ninv = k.inv(norm)?;
        let re = k.sub(x.a0, k.mul(self.top.b, x.a1));
        Ok(FieldElem::new(k.mul(re, ninv), k.mul(k.neg(x.a1), ninv)))
    }

    fn norm_coords(&self, x: FieldElem) -> BaseElem {
        // N(a0 + a1 alpha) = a0^2 - b a0 a1 + c a1^2
        let k = &self.base;
        let a0a0 = k.mul(x.a0, x.a0);
        let ba0a1 = k.mul(self.top.b, k.mul(x.a0, x.a1));
        let ca1a1 = k.mul(self.top.c, k.mul(x.a1, x.a1));
        k.add(k.sub(a0a0, ba0a1), ca1a1)
    }

    /// Inverse as `x^(q-2)`.
    pub fn inv_by_pow(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(x, self.q - 2))
    }

    /// Inverse computed entirely with coefficient polynomials over `F_p`:
    /// the adjugate of `a0 + a1 X` modulo `X^2 + bX + c`, with the norm
    /// inverted by the extended Euclidean algorithm modulo the base modulus.
    pub fn inv_by_ext_gcd(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = self.base.poly_ring();
        let f = self.base.modulus();
        let a0 = self.base.coeffs(x.a0);
        let a1 = self.base.coeffs(x.a1);
        let b = self.base.coeffs(self.top.b);
        let c = self.base.coeffs(self.top.c);
        let mm = |u: &[u32], v: &[u32]| r.mulmod(u, v, f);
        let norm = r.add(&r.sub(&mm(&a0, &a0), &mm(&b, &mm(&a0, &a1))), &mm(&c, &mm(&a1, &a1)));
        let ninv = r
            .inv_mod(&norm, f)
            .ok_or_else(|| Error::InternalInvariant("norm of a nonzero element is zero".into()))?;
        let re = r.sub(&a0, &mm(&b, &a1));
        let im = r.sub(&[], &a1);
        Ok(FieldElem::new(
            self.base.reduce_poly(&mm(&re, &ninv)),
            self.base.reduce_poly(&mm(&im, &ninv)),
        ))
    }

    pub fn pow_u64(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(p^k)`; `k` is taken modulo `2m`.
    pub fn frobenius(&self, x: FieldElem, k: u32) -> FieldElem {
        let k = k % (2 * self.m());
        let mut y = x;
        for _ in 0..k {
            y = self.pow_u64(y, self.p() as u64);
        }
        y
    }

    /// `x^(p^m)`.
    pub fn conjugate(&self, x: FieldElem) -> FieldElem {
        self.frobenius(x, self.m())
    }

    /// `Tr_m^{2m}(x) = x + x^(p^m)`.
    pub fn trace_to_base(&self, x: FieldElem) -> Result<BaseElem> {
        let s = self.add(x, self.conjugate(x));
        if !s.in_base() {
            return Err(Error::InternalInvariant(format!(
                "trace of {x:?} left the base field: {s:?}"
            )));
        }
        Ok(s.a0)
    }

    /// `N(x) = x^(p^m + 1)`.
    pub fn norm_to_base(&self, x: FieldElem) -> Result<BaseElem> {
        let n = self.mul(x, self.conjugate(x));
        if !n.in_base() {
            return Err(Error::InternalInvariant(format!(
                "norm of {x:?} left the base field: {n:?}"
            )));
        }
        Ok(n.a0)
    }
}

fn resolve_top(base: &BaseField, variant: ModulusVariant) -> Result<TopModulus> {
    let top = match variant {
        ModulusVariant::X2Plus1 => TopModulus {
            b: BaseElem::ZERO,
            c: base.constant(1),
        },
        ModulusVariant::X2Plus2XPlus2 => TopModulus {
            b: base.constant(2),
            c: base.constant(2),
        },
        ModulusVariant::X2PlusXPlus2 => TopModulus {
            b: base.constant(1),
            c: base.constant(2),
        },
        ModulusVariant::Auto => {
            let c = (1..base.qb())
                .map(BaseElem)
                .find(|&c| !base.is_square(c))
                .ok_or_else(|| Error::InternalInvariant("odd field without non-squares".into()))?;
            TopModulus {
                b: BaseElem::ZERO,
                c: base.neg(c),
            }
        }
    };
    // Degree 2: irreducible iff no root in the base field.
    let root = (0..base.qb()).map(BaseElem).find(|&r| {
        let v = base.add(base.add(base.mul(r, r), base.mul(top.b, r)), top.c);
        v.is_zero()
    });
    if let Some(r) = root {
        return Err(Error::ReducibleModulus(format!(
            "{variant} has the root {:?} in F_{}^{}",
            base.coeffs(r),
            base.p(),
            base.m()
        )));
    }
    Ok(top)
}

impl FiniteField for FieldCtx {
    type Elem = FieldElem;

    fn characteristic(&self) -> u32 {
        self.p()
    }

    fn degree(&self) -> u32 {
        2 * self.m()
    }

    fn order(&self) -> u64 {
        self.q
    }

    fn limits(&self) -> &Limits {
        &self.limits
    }

    fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldCtx::add(self, a, b)
    }

    fn neg(&self, a: FieldElem) -> FieldElem {
        FieldCtx::neg(self, a)
    }

    fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldCtx::sub(self, a, b)
    }

    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldCtx::mul(self, a, b)
    }

    fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        FieldCtx::inv(self, a)
    }

    fn pow_u64(&self, a: FieldElem, e: u64) -> FieldElem {
        FieldCtx::pow_u64(self, a, e)
    }

    fn index(&self, a: FieldElem) -> u64 {
        a.a0.raw() as u64 + self.q_base() * a.a1.raw() as u64
    }

    fn element(&self, idx: u64) -> FieldElem {
        debug_assert!(idx < self.q);
        let qb = self.q_base();
        FieldElem::new(BaseElem((idx % qb) as u32), BaseElem((idx / qb) as u32))
    }

    fn abs_trace(&self, a: FieldElem) -> u32 {
        let t = self.trace_to_base(a).expect("relative trace lands in the base field");
        self.base
            .trace_to_prime(t)
            .expect("absolute trace lands in the prime field")
    }

    fn sweep_tables(&self) -> Result<&SweepTables<FieldElem>> {
        self.sweep
            .get_or_init(|| build_sweep_tables(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}
