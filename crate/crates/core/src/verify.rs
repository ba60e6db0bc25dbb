//! Exhaustive permutation oracles and whole-family verification.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::charsum::char_sums_on_image;
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::field::{FieldCtx, FieldElem, FiniteField};
use crate::modring::{gcd, InversePath};
use crate::monomial::{Exponent, FieldMap, Monomial};

pub use crate::charsum::pp_by_char_sums;

/// Whether an image table (indexed by element index) hits every element once.
pub fn is_permutation_image<F: FiniteField>(field: &F, image: &[F::Elem]) -> bool {
    let q = field.order() as usize;
    if image.len() != q {
        return false;
    }
    let mut seen = vec![false; q];
    for &y in image {
        let i = field.index(y) as usize;
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

pub fn is_permutation<F: FiniteField, M: FieldMap<F>>(field: &F, f: &M) -> Result<bool> {
    Ok(is_permutation_image(field, &f.image(field)?))
}

/// `image[i] + element(i)`.
pub fn plus_identity_image<F: FiniteField>(field: &F, image: &[F::Elem]) -> Vec<F::Elem> {
    image
        .iter()
        .enumerate()
        .map(|(i, &y)| field.add(y, field.element(i as u64)))
        .collect()
}

/// `f` and `f + x` both permute the field.
pub fn is_cpp<F: FiniteField, M: FieldMap<F>>(field: &F, f: &M) -> Result<bool> {
    let img = f.image(field)?;
    Ok(is_permutation_image(field, &img)
        && is_permutation_image(field, &plus_identity_image(field, &img)))
}

/// Wan's criterion for `x^{(q-1)/d + 1} + a x`.
///
/// A zero denominator `a + zeta^j` leaves the pair `(i, j)` satisfied. Such
/// an `a` equals `-zeta^j`, so `(-a)^d = 1` and condition (i) already fails.
pub fn wan_check<F: FiniteField>(field: &F, d: u64, a: F::Elem) -> Result<bool> {
    if a == field.zero() {
        return Err(Error::ZeroCoefficient);
    }
    let n = field.order() - 1;
    if d == 0 || n % d != 0 {
        return Err(Error::BadDivisor {
            d: d.to_string(),
            order: n.to_string(),
        });
    }
    let one = field.one();
    if field.pow_u64(field.neg(a), d) == one {
        return Ok(false);
    }
    let e = n / d;
    let zeta = field.pow_u64(field.primitive_element()?, e);
    let mut zpow = Vec::with_capacity(d as usize);
    let mut z = one;
    for _ in 0..d {
        zpow.push(z);
        z = field.mul(z, zeta);
    }
    // r[i] = (a + zeta^i)^e, so ((a+zeta^i)/(a+zeta^j))^e = r[i]/r[j].
    let r: Vec<F::Elem> = zpow
        .iter()
        .map(|&zi| field.pow_u64(field.add(a, zi), e))
        .collect();
    let zero = field.zero();
    for j in 1..d as usize {
        if r[j] == zero {
            continue;
        }
        for i in 0..j {
            if r[i] == field.mul(r[j], zpow[j - i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `x -> x^{(q-1)/d + 1} + a x`, the shape [`wan_check`] decides.
pub struct WanMap<E> {
    pub exponent: u64,
    pub a: E,
}

impl<E> WanMap<E> {
    pub fn new<F: FiniteField<Elem = E>>(field: &F, d: u64, a: E) -> Self {
        Self {
            exponent: (field.order() - 1) / d + 1,
            a,
        }
    }
}

impl<F: FiniteField> FieldMap<F> for WanMap<F::Elem> {
    fn eval(&self, field: &F, x: F::Elem) -> F::Elem {
        field.add(field.pow_u64(x, self.exponent), field.mul(self.a, x))
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))
}

/// All `v != 0` for which `v^{-1} x^d` is a complete permutation, in index order.
pub fn cpp_scan<F: FiniteField>(field: &F, d: &BigUint, workers: usize) -> Result<Vec<F::Elem>> {
    let q = field.order();
    let n = BigUint::from(q - 1);
    if !gcd(d, &n).is_one() {
        return Err(Error::NotInvertible {
            a: d.to_string(),
            n: n.to_string(),
        });
    }
    let power = Monomial::new(field, field.one(), d)?.image(field)?;
    let xs = field.enumerate()?;
    let q_us = q as usize;
    let scan = |v_idx: u64, seen: &mut Vec<u32>, stamp: &mut u32| -> bool {
        let v = field.element(v_idx);
        let vinv = match field.inv(v) {
            Ok(x) => x,
            Err(_) => return false,
        };
        // f + x first: non-complete candidates collide after ~sqrt(q) points.
        for with_x in [true, false] {
            *stamp = stamp.wrapping_add(1);
            if *stamp == 0 {
                seen.fill(0);
                *stamp = 1;
            }
            for i in 0..q_us {
                let mut y = field.mul(vinv, power[i]);
                if with_x {
                    y = field.add(y, xs[i]);
                }
                let slot = &mut seen[field.index(y) as usize];
                if *slot == *stamp {
                    return false;
                }
                *slot = *stamp;
            }
        }
        true
    };
    let hits: Vec<u64> = pool(workers)?.install(|| {
        (1..q_us)
            .into_par_iter()
            .with_min_len(64)
            .map_init(
                || (vec![0u32; q_us], 0u32),
                |(seen, stamp), v| scan(v as u64, seen, stamp).then_some(v as u64),
            )
            .flatten()
            .collect()
    });
    Ok(hits.into_iter().map(|i| field.element(i)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub workers: usize,
    /// Run [`cpp_scan`] and check the admissible set is contained in it.
    pub scan: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            scan: true,
        }
    }
}

/// Verdicts for one admissible `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VResult {
    pub v: Vec<Vec<u32>>,
    pub v_index: u64,
    pub forward_exponent: Exponent,
    pub inverse_exponent: Exponent,
    pub inverse_path: InversePath,
    /// `f = v^{-1} x^d` permutes.
    pub is_pp: bool,
    /// `f` and `f + x` permute.
    pub is_cpp: bool,
    /// `d * e = 1 mod q-1`.
    pub inverse_exponent_ok: bool,
    /// `f(f^{-1}(x)) = x` and `f^{-1}(f(x)) = x` on every point.
    pub composition_ok: bool,
    /// Character sums agree with the image test for `f` and `f + x`.
    pub char_sum_ok: bool,
    /// Wan's criterion for `f + x` (C3 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wan_ok: Option<bool>,
    /// The inverse monomial is itself complete.
    pub inverse_is_cpp: bool,
}

impl VResult {
    pub fn passed(&self) -> bool {
        self.is_pp
            && self.is_cpp
            && self.inverse_exponent_ok
            && self.composition_ok
            && self.char_sum_ok
            && self.wan_ok.unwrap_or(true)
            && self.inverse_is_cpp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub count: usize,
    /// Admissible set is contained in the scan result.
    pub superset_ok: bool,
    /// Admissible set equals the scan result (reported, not required).
    pub equal: bool,
    /// Scanned `v` outside the admissible set, as encodings.
    pub extra: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub spec: FamilySpec,
    pub d: Exponent,
    pub inverse_e: Exponent,
    pub inverse_path: InversePath,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_formula: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_integer_value: Option<String>,
    pub results: Vec<VResult>,
    pub count: usize,
    pub expected_count: u64,
    pub scan: Option<ScanSummary>,
    /// Index of the first failing `v`, if any.
    pub first_failure: Option<u64>,
    pub all_pass: bool,
    pub elapsed_ms: u64,
}

pub fn verify_family(ctx: &FieldCtx, family: &Family, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let vs = family.admissible_v(ctx)?;
    let q_minus_1 = ctx.unit_order();
    let inv = family.inverse();
    let inverse_exponent_ok = (family.d() * &inv.value) % &q_minus_1 == BigUint::one();
    // Warm the shared tables before fanning out.
    ctx.sweep_tables()?;
    let check = |v: FieldElem| -> Result<VResult> {
        let fwd = family.forward_monomial(ctx, v)?;
        let back = family.inverse_monomial(ctx, v)?;
        let f_img = fwd.image(ctx)?;
        let g_img = plus_identity_image(ctx, &f_img);
        let fi_img = back.image(ctx)?;
        let is_pp = is_permutation_image(ctx, &f_img);
        let is_cpp = is_pp && is_permutation_image(ctx, &g_img);
        let composition_ok = (0..ctx.q()).all(|i| {
            let x = ctx.element(i);
            f_img[ctx.index(fi_img[i as usize]) as usize] == x
                && fi_img[ctx.index(f_img[i as usize]) as usize] == x
        });
        let char_sum_ok = char_sums_on_image(ctx, &f_img)?.vanishes == is_pp
            && char_sums_on_image(ctx, &g_img)?.vanishes == is_permutation_image(ctx, &g_img);
        let wan_ok = match family.wan_divisor() {
            Some(divisor) => Some(wan_check(ctx, divisor, v)?),
            None => None,
        };
        let inverse_is_cpp = is_permutation_image(ctx, &fi_img)
            && is_permutation_image(ctx, &plus_identity_image(ctx, &fi_img));
        Ok(VResult {
            v: ctx.encode(v),
            v_index: ctx.index(v),
            forward_exponent: fwd.exponent().clone(),
            inverse_exponent: back.exponent().clone(),
            inverse_path: inv.path,
            is_pp,
            is_cpp,
            inverse_exponent_ok,
            composition_ok,
            char_sum_ok,
            wan_ok,
            inverse_is_cpp,
        })
    };
    let mut results: Vec<VResult> = pool(opts.workers)?
        .install(|| vs.par_iter().map(|&v| check(v)).collect::<Result<Vec<_>>>())?;
    results.sort_by_key(|r| r.v_index);

    let scan = if opts.scan {
        let hits = cpp_scan(ctx, family.d(), opts.workers)?;
        let superset_ok = vs.iter().all(|v| hits.binary_search(v).is_ok());
        let extra = hits
            .iter()
            .filter(|v| vs.binary_search(v).is_err())
            .map(|&v| ctx.encode(v))
            .collect::<Vec<_>>();
        Some(ScanSummary {
            count: hits.len(),
            superset_ok,
            equal: superset_ok && extra.is_empty(),
            extra,
        })
    } else {
        None
    };

    let first_failure = results.iter().find(|r| !r.passed()).map(|r| r.v_index);
    let all_pass = first_failure.is_none()
        && results.len() as u64 == family.admissible_count()
        && scan.as_ref().map_or(true, |s| s.superset_ok);
    Ok(VerifyReport {
        spec: *family.spec(),
        d: Exponent::new(family.d().clone()),
        inverse_e: family.inverse_exponent(),
        inverse_path: inv.path,
        inverse_formula: inv.formula,
        inverse_integer_value: inv.integer_value.as_ref().map(BigInt::to_string),
        count: results.len(),
        expected_count: family.admissible_count(),
        results,
        scan,
        first_failure,
        all_pass,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
