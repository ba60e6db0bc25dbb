//! Evaluable maps on a finite field: monomials `c*x^d`, dense polynomials,
//! closures, and `f(x) + x`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FiniteField;

/// A non-negative exponent of arbitrary size.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(BigUint);

impl Exponent {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for Exponent {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<BigUint> for Exponent {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Decimal string, arbitrary precision.
impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Anything that can be evaluated pointwise on a field.
pub trait FieldMap<F: FiniteField> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem;

    /// Values on every element, indexed by canonical element index.
    fn image(&self, field: &F) -> Result<Vec<F::Elem>> {
        Ok(field
            .enumerate()?
            .into_iter()
            .map(|x| self.eval(field, x))
            .collect())
    }
}

impl<F: FiniteField, M: FieldMap<F> + ?Sized> FieldMap<F> for &M {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        (**self).eval(field, x)
    }

    fn image(&self, field: &F) -> Result<Vec<F::Elem>> {
        (**self).image(field)
    }
}

/// `coeff * x^exponent` with `coeff != 0` and `exponent` in `[1, q - 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial<E> {
    coeff: E,
    exponent: Exponent,
    /// `exponent` as a machine word (it is below `q - 1`).
    e: u64,
}

impl<E: Copy + fmt::Debug> fmt::Debug for Monomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}*x^{}", self.coeff, self.exponent)
    }
}

impl<E: Copy + Eq> Monomial<E> {
    /// Builds `coeff * x^exponent`, reducing the exponent modulo `q - 1`.
    pub fn new<F: FiniteField<Elem = E>>(field: &F, coeff: E, exponent: &BigUint) -> Result<Self> {
        if coeff == field.zero() {
            return Err(Error::ZeroCoefficient);
        }
        if exponent.is_zero() {
            return Err(Error::InvalidArgument("monomial exponent must be positive".into()));
        }
        let reduced = exponent % (field.order() - 1);
        if reduced.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "exponent {exponent} is a multiple of q - 1"
            )));
        }
        let e = reduced.to_u64().expect("below q - 1");
        Ok(Self {
            coeff,
            exponent: Exponent(reduced),
            e,
        })
    }

    pub fn coeff(&self) -> E {
        self.coeff
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn exponent_u64(&self) -> u64 {
        self.e
    }
}

impl<F: FiniteField> FieldMap<F> for Monomial<F::Elem> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        field.mul(self.coeff, field.pow_u64(x, self.e))
    }

    /// Walks `x = g^k` for a primitive `g`, multiplying by `g^d` each step.
    fn image(&self, field: &F) -> Result<Vec<F::Elem>> {
        let tables = field.sweep_tables()?;
        let step = field.pow_u64(tables.generator, self.e);
        let mut out = vec![field.zero(); field.order() as usize];
        let mut y = self.coeff;
        for &x in &tables.powers {
            out[field.index(x) as usize] = y;
            y = field.mul(y, step);
        }
        Ok(out)
    }
}

/// `x -> f(x) + x`.
#[derive(Debug, Clone)]
pub struct PlusIdentity<M>(pub M);

impl<F: FiniteField, M: FieldMap<F>> FieldMap<F> for PlusIdentity<M> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        field.add(self.0.eval(field, x), x)
    }

    fn image(&self, field: &F) -> Result<Vec<F::Elem>> {
        let mut values = self.0.image(field)?;
        for (i, v) in values.iter_mut().enumerate() {
            *v = field.add(*v, field.element(i as u64));
        }
        Ok(values)
    }
}

/// Wraps a closure as a map.
pub struct FnMap<G>(pub G);

impl<F: FiniteField, G: Fn(F::Elem) -> F::Elem> FieldMap<F> for FnMap<G> {
    fn eval(&self, _field: &F, x: F::Elem) -> F::Elem {
        (self.0)(x)
    }
}

/// Dense polynomial `sum coeffs[i] x^i`, evaluated by Horner's rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly<E> {
    pub coeffs: Vec<E>,
}

impl<F: FiniteField> FieldMap<F> for DensePoly<F::Elem> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }
}

/// `x^n` by plain square-and-multiply at every point (no tables).
pub struct PowerMap(pub u64);

impl<F: FiniteField> FieldMap<F> for PowerMap {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        field.pow_u64(x, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldCtx, ModulusVariant};

    #[test]
    fn monomial_image_matches_pointwise_eval() {
        let ctx = FieldCtx::new(7, 1, ModulusVariant::Auto).unwrap();
        let c = ctx.element(17);
        let mono = Monomial::new(&ctx, c, &BigUint::from(13u32)).unwrap();
        let img = mono.image(&ctx).unwrap();
        for (i, &v) in img.iter().enumerate() {
            let x = ctx.element(i as u64);
            assert_eq!(v, FieldMap::eval(&mono, &ctx, x));
        }
    }

    #[test]
    fn monomial_rejects_degenerate_input() {
        let ctx = FieldCtx::new(3, 1, ModulusVariant::X2Plus1).unwrap();
        assert_eq!(
            Monomial::new(&ctx, ctx.zero(), &BigUint::from(5u32)).unwrap_err(),
            Error::ZeroCoefficient
        );
        assert!(Monomial::new(&ctx, ctx.one(), &BigUint::from(8u32)).is_err());
        let m = Monomial::new(&ctx, ctx.one(), &BigUint::from(13u32)).unwrap();
        assert_eq!(m.exponent_u64(), 5);
    }
}
