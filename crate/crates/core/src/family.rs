//! The three complete-permutation monomial classes `v^{-1} x^d`.
//!
//! * C1: `p = 3`, `m` odd, `d = 3^m + 2`, `v` with `Tr_m^{2m}(v) = 0`.
//! * C2: `p = 3`, `m` odd, `d = 2*3^m + 3`, `v0 = 0` or `v1 = 2 v0` in the
//!   `x^2+2x+2` tower.
//! * C3: `d = s(p^m - 1) + 1`, `v` in `U \ U^s` where `U` is the norm-one
//!   subgroup of order `p^m + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{multiplicative_order, BaseElem, FieldCtx, FieldElem, FiniteField, Limits, ModulusVariant};
use crate::modring::{
    biguint_pow, closed_form_exponent, forward_exponent, gcd, mod_inverse, InversePath,
};
use crate::monomial::{Exponent, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyClass {
    C1,
    C2,
    C3,
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyClass::C1 => "C1",
            FamilyClass::C2 => "C2",
            FamilyClass::C3 => "C3",
        })
    }
}

impl FromStr for FamilyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(FamilyClass::C1),
            "c2" => Ok(FamilyClass::C2),
            "c3" => Ok(FamilyClass::C3),
            other => Err(Error::InvalidArgument(format!("unknown class '{other}'"))),
        }
    }
}

/// Raw family parameters, before [`FamilySpec::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(rename = "class")]
    pub class: FamilyClass,
    pub p: u64,
    pub m: u32,
    pub s: Option<u64>,
    #[serde(rename = "modulus_variant")]
    pub modulus: ModulusVariant,
}

impl FamilySpec {
    pub fn c1(m: u32) -> Self {
        Self::c1_with_modulus(m, ModulusVariant::X2Plus1)
    }

    /// C1 over one of the alternative quadratic moduli.
    pub fn c1_with_modulus(m: u32, modulus: ModulusVariant) -> Self {
        Self {
            class: FamilyClass::C1,
            p: 3,
            m,
            s: None,
            modulus,
        }
    }

    pub fn c2(m: u32) -> Self {
        Self {
            class: FamilyClass::C2,
            p: 3,
            m,
            s: None,
            modulus: ModulusVariant::X2Plus2XPlus2,
        }
    }

    pub fn c3(p: u64, m: u32, s: u64) -> Self {
        Self {
            class: FamilyClass::C3,
            p,
            m,
            s: Some(s),
            modulus: ModulusVariant::Auto,
        }
    }

    /// The `s = 2` subfamily with a closed-form inverse: `p = 3` or
    /// `p = 7 (mod 12)`, with `m` odd.
    pub fn c3_s2(p: u64, m: u32) -> Result<Self> {
        if m % 2 == 0 {
            return Err(Error::HypothesisViolated(format!("m = {m} must be odd")));
        }
        if p != 3 && p % 12 != 7 {
            return Err(Error::HypothesisViolated(format!(
                "p = {p} is neither 3 nor 7 mod 12"
            )));
        }
        Ok(Self::c3(p, m, 2))
    }

    pub fn q(&self) -> Option<u64> {
        self.m.checked_mul(2).and_then(|n| self.p.checked_pow(n))
    }

    /// Checks the class hypotheses and derives `d` and its inverse.
    pub fn validate(&self) -> Result<Family> {
        if !crate::modring::is_prime(self.p) || self.p == 2 {
            return Err(Error::NotPrime(self.p));
        }
        if self.m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let (p, m) = (self.p, self.m);
        let s = match self.class {
            FamilyClass::C1 | FamilyClass::C2 => {
                if self.s.is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "s applies to C3 only, not {}",
                        self.class
                    )));
                }
                if p != 3 {
                    return Err(Error::HypothesisViolated(format!("{} needs p = 3, got {p}", self.class)));
                }
                if m % 2 == 0 {
                    return Err(Error::HypothesisViolated(format!(
                        "{} needs m odd, got m = {m}",
                        self.class
                    )));
                }
                if self.class == FamilyClass::C2 && self.modulus != ModulusVariant::X2Plus2XPlus2 {
                    return Err(Error::HypothesisViolated(format!(
                        "C2 is defined over the x2+2x+2 tower, not {}",
                        self.modulus
                    )));
                }
                if self.class == FamilyClass::C1 && self.modulus == ModulusVariant::Auto {
                    return Err(Error::HypothesisViolated(
                        "C1 needs one of x2+1, x2+2x+2, x2+x+2".into(),
                    ));
                }
                0
            }
            FamilyClass::C3 => {
                let s = self
                    .s
                    .ok_or_else(|| Error::InvalidArgument("C3 needs s".into()))?;
                check_c3(p, m, s)?;
                s
            }
        };
        let d = forward_exponent(self.class, p, m, s);
        let q_minus_1 = biguint_pow(p, 2 * m) - 1u32;
        if !gcd(&d, &q_minus_1).is_one() {
            return Err(Error::InternalInvariant(format!(
                "gcd({d}, {q_minus_1}) != 1 despite the hypotheses"
            )));
        }
        let generic = mod_inverse(&BigInt::from(d.clone()), &q_minus_1)?;
        let inverse = match closed_form_exponent(self.class, p, m, s) {
            Ok(cf) => {
                if cf.value != generic {
                    return Err(Error::InternalInvariant(format!(
                        "closed form {} = {} but d^-1 = {generic}",
                        cf.formula, cf.value
                    )));
                }
                InverseExponent {
                    value: cf.value,
                    path: InversePath::ClosedForm,
                    formula: Some(cf.formula),
                    integer_value: cf.integer_value,
                }
            }
            Err(Error::HypothesisViolated(_)) if self.class == FamilyClass::C3 => InverseExponent {
                value: generic,
                path: InversePath::Generic,
                formula: None,
                integer_value: None,
            },
            Err(e) => return Err(e),
        };
        Ok(Family {
            spec: *self,
            s,
            d,
            inverse,
        })
    }
}

fn check_c3(p: u64, m: u32, s: u64) -> Result<()> {
    let n = biguint_pow(p, m) + 1u32;
    let s_big = BigUint::from(s);
    if s == 0 {
        return Err(Error::HypothesisViolated("s must be positive".into()));
    }
    if !gcd(&(&s_big * 2u32 - 1u32), &n).is_one() {
        return Err(Error::HypothesisViolated(format!(
            "gcd(2s-1, p^m+1) = gcd({}, {n}) != 1",
            2 * s - 1
        )));
    }
    if !(&n % (&s_big * 2u32)).is_zero() {
        return Err(Error::HypothesisViolated(format!("2s = {} does not divide p^m+1 = {n}", 2 * s)));
    }
    if !gcd(&(&s_big - 1u32), &n).is_one() {
        return Err(Error::HypothesisViolated(format!(
            "gcd(s-1, p^m+1) = gcd({}, {n}) != 1",
            s - 1
        )));
    }
    Ok(())
}

/// `d^{-1} mod q-1` and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseExponent {
    pub value: BigUint,
    pub path: InversePath,
    /// Symbolic form, when a closed form applies.
    pub formula: Option<&'static str>,
    /// The closed form evaluated over the integers, before reduction.
    pub integer_value: Option<BigInt>,
}

/// A validated family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    spec: FamilySpec,
    s: u64,
    d: BigUint,
    inverse: InverseExponent,
}

impl Family {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn class(&self) -> FamilyClass {
        self.spec.class
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn inverse(&self) -> &InverseExponent {
        &self.inverse
    }

    pub fn context(&self) -> Result<FieldCtx> {
        self.context_with_limits(Limits::default())
    }

    pub fn context_with_limits(&self, limits: Limits) -> Result<FieldCtx> {
        FieldCtx::with_limits(self.spec.p, self.spec.m, self.spec.modulus, limits)
    }

    /// Expected admissible-set size.
    pub fn admissible_count(&self) -> u64 {
        let pm = self.spec.p.pow(self.spec.m);
        match self.spec.class {
            FamilyClass::C1 => pm - 1,
            FamilyClass::C2 => 2 * (pm - 1),
            FamilyClass::C3 => (pm + 1) / self.s * (self.s - 1),
        }
    }

    /// Divisor `(p^m + 1)/s` putting `x^d + v x` in the shape `x^{(q-1)/D + 1} + v x`.
    pub fn wan_divisor(&self) -> Option<u64> {
        (self.spec.class == FamilyClass::C3).then(|| (self.spec.p.pow(self.spec.m) + 1) / self.s)
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        let sp = &self.spec;
        let variant_ok = sp.class == FamilyClass::C3 || ctx.variant() == sp.modulus;
        if ctx.p() as u64 != sp.p || ctx.m() != sp.m || !variant_ok {
            return Err(Error::InvalidArgument(format!(
                "field (p={}, m={}, {}) does not match the family (p={}, m={}, {})",
                ctx.p(),
                ctx.m(),
                ctx.variant(),
                sp.p,
                sp.m,
                sp.modulus
            )));
        }
        Ok(())
    }

    /// Membership by the class's defining rule.
    pub fn is_admissible(&self, ctx: &FieldCtx, v: FieldElem) -> Result<bool> {
        self.check_ctx(ctx)?;
        if v.is_zero() {
            return Ok(false);
        }
        let k = ctx.base();
        let two = k.constant(2);
        Ok(match self.spec.class {
            FamilyClass::C1 => c1_rule(self.spec.modulus, k, v),
            FamilyClass::C2 => v.a0.is_zero() || v.a1 == k.mul(two, v.a0),
            FamilyClass::C3 => {
                let order = self.spec.p.pow(self.spec.m) + 1;
                let in_u = ctx.pow_u64(v, order) == FieldElem::ONE;
                in_u && ctx.pow_u64(v, order / self.s) != FieldElem::ONE
            }
        })
    }

    /// Admissible `v`, in canonical index order.
    pub fn admissible_v(&self, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
        self.check_ctx(ctx)?;
        let k = ctx.base();
        let two = k.constant(2);
        let nonzero = || (1..k.qb()).map(BaseElem);
        let mut out: Vec<FieldElem> = match self.spec.class {
            FamilyClass::C1 => match self.spec.modulus {
                ModulusVariant::X2Plus1 => nonzero().map(|t| FieldElem::new(BaseElem::ZERO, t)).collect(),
                ModulusVariant::X2Plus2XPlus2 => nonzero().map(|t| FieldElem::new(t, t)).collect(),
                ModulusVariant::X2PlusXPlus2 => nonzero().map(|t| FieldElem::new(t, k.mul(two, t))).collect(),
                ModulusVariant::Auto => unreachable!("rejected by validate"),
            },
            FamilyClass::C2 => nonzero()
                .map(|t| FieldElem::new(BaseElem::ZERO, t))
                .chain(nonzero().map(|t| FieldElem::new(t, k.mul(two, t))))
                .collect(),
            FamilyClass::C3 => {
                let circle = unit_circle(ctx)?;
                let cofactor = circle.order / self.s;
                circle
                    .elements(ctx)
                    .into_iter()
                    .filter(|&u| ctx.pow_u64(u, cofactor) != FieldElem::ONE)
                    .collect()
            }
        };
        out.sort();
        Ok(out)
    }

    /// Admissible `v` by the trace/norm statement of each class, found by
    /// scanning the whole field.
    pub fn admissible_by_definition(&self, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
        self.check_ctx(ctx)?;
        let zero = BaseElem::ZERO;
        let alpha = ctx.alpha();
        let alpha3 = ctx.pow_u64(alpha, 3);
        let mut out = Vec::new();
        for v in ctx.enumerate()?.into_iter().skip(1) {
            let keep = match self.spec.class {
                FamilyClass::C1 => ctx.trace_to_base(v)? == zero,
                FamilyClass::C2 => {
                    ctx.trace_to_base(ctx.mul(alpha, v))? == zero
                        || ctx.trace_to_base(ctx.mul(alpha3, v))? == zero
                }
                FamilyClass::C3 => {
                    let order = self.spec.p.pow(self.spec.m) + 1;
                    ctx.norm_to_base(v)? == BaseElem::ONE
                        && ctx.pow_u64(v, order / self.s) != FieldElem::ONE
                }
            };
            if keep {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// `v^{-1} x^d`.
    pub fn forward_monomial(&self, ctx: &FieldCtx, v: FieldElem) -> Result<Monomial<FieldElem>> {
        self.require_admissible(ctx, v)?;
        Monomial::new(ctx, ctx.inv(v)?, &self.d)
    }

    /// `v^e x^e` with `e = d^{-1} mod q-1`.
    pub fn inverse_monomial(&self, ctx: &FieldCtx, v: FieldElem) -> Result<Monomial<FieldElem>> {
        self.require_admissible(ctx, v)?;
        let e = &self.inverse.value;
        Monomial::new(ctx, ctx.pow_biguint(v, e), e)
    }

    pub fn inverse_exponent(&self) -> Exponent {
        Exponent::new(self.inverse.value.clone())
    }

    fn require_admissible(&self, ctx: &FieldCtx, v: FieldElem) -> Result<()> {
        if !self.is_admissible(ctx, v)? {
            return Err(Error::InadmissibleCoefficient(format!("{v:?}")));
        }
        Ok(())
    }
}

fn c1_rule(modulus: ModulusVariant, k: &crate::field::BaseField, v: FieldElem) -> bool {
    match modulus {
        ModulusVariant::X2Plus1 => v.a0.is_zero(),
        ModulusVariant::X2Plus2XPlus2 => v.a0 == v.a1,
        ModulusVariant::X2PlusXPlus2 => v.a1 == k.mul(k.constant(2), v.a0),
        ModulusVariant::Auto => false,
    }
}

/// The norm-one subgroup `U` of order `p^m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitCircle {
    pub generator: FieldElem,
    pub order: u64,
}

impl UnitCircle {
    /// `generator^k` for `k` in `[0, order)`.
    pub fn elements(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut x = FieldElem::ONE;
        for _ in 0..self.order {
            out.push(x);
            x = ctx.mul(x, self.generator);
        }
        out
    }

    /// The subgroup of `s`-th powers, `s | order`.
    pub fn powers(&self, ctx: &FieldCtx, s: u64) -> Result<UnitCircle> {
        if s == 0 || self.order % s != 0 {
            return Err(Error::InvalidArgument(format!("{s} does not divide {}", self.order)));
        }
        Ok(UnitCircle {
            generator: ctx.pow_u64(self.generator, s),
            order: self.order / s,
        })
    }
}

pub fn unit_circle(ctx: &FieldCtx) -> Result<UnitCircle> {
    let g = ctx.primitive_element()?;
    let qb = ctx.q_base();
    let generator = ctx.pow_u64(g, qb - 1);
    let order = qb + 1;
    if ctx.norm_to_base(generator)? != BaseElem::ONE || multiplicative_order(ctx, generator)? != order {
        return Err(Error::InternalInvariant(format!(
            "g^(p^m-1) does not generate a norm-one group of order {order}"
        )));
    }
    Ok(UnitCircle { generator, order })
}
