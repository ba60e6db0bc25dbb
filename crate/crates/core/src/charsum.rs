//! Additive character sums `sum_x w^{Tr(gamma f(x))}` as exact count vectors.
//!
//! The sum vanishes iff every residue `c` in `[0, p)` is hit `q/p` times,
//! since `1 + w + ... + w^{p-1}` is the minimal polynomial of `w` up to the
//! factor `w - 1`. No complex numbers are involved.
//!
//! Two routes:
//! * [`char_sum_uniformity`] evaluates one `gamma` by definition.
//! * [`CharSumSpectrum`] gets the count vectors for every `gamma` at once.
//!   Writing `h(y)` for the number of preimages of `y`, it computes
//!   `F(w) = sum_y h(y) t^{w.y}` in `Z[t]/(t^p - 1)` for every `w` in
//!   `F_p^n` by a radix-`p` transform, then maps `gamma` to `w` through the
//!   trace form `w_j = Tr(gamma b_j)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::monomial::FieldMap;

/// Largest `q * p` handled by the transform; above it sums are taken per `gamma`.
pub const TRANSFORM_LIMIT: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharSum {
    /// `counts[c] = #{x : Tr(gamma f(x)) = c}`.
    pub counts: Vec<u64>,
    pub vanishes: bool,
}

impl CharSum {
    fn from_counts(counts: Vec<u64>, q: u64) -> Self {
        let p = counts.len() as u64;
        let vanishes = counts.iter().all(|&c| c * p == q);
        Self { counts, vanishes }
    }
}

/// Count vector for one nonzero `gamma`, straight from the definition.
pub fn char_sum_uniformity<F: FiniteField, M: FieldMap<F>>(
    field: &F,
    f: &M,
    gamma: F::Elem,
) -> Result<CharSum> {
    if gamma == field.zero() {
        return Err(Error::ZeroGamma);
    }
    let mut counts = vec![0u64; field.characteristic() as usize];
    for x in field.enumerate()? {
        counts[field.abs_trace(field.mul(gamma, f.eval(field, x))) as usize] += 1;
    }
    Ok(CharSum::from_counts(counts, field.order()))
}

/// `Tr(b_k b_j)` for the power basis `b_j = basis(j)`.
#[derive(Debug, Clone)]
pub struct TraceForm {
    p: u32,
    n: u32,
    matrix: Vec<u32>,
}

impl TraceForm {
    pub fn new<F: FiniteField>(field: &F) -> Self {
        let n = field.degree();
        let basis: Vec<F::Elem> = (0..n).map(|j| field.basis(j)).collect();
        let mut matrix = Vec::with_capacity((n * n) as usize);
        for &bk in &basis {
            for &bj in &basis {
                matrix.push(field.abs_trace(field.mul(bk, bj)));
            }
        }
        Self {
            p: field.characteristic(),
            n,
            matrix,
        }
    }

    /// Index of `w` with `w_j = Tr(gamma b_j)`, given `gamma`'s canonical index.
    pub fn weight_index(&self, gamma_index: u64) -> u64 {
        let (p, n) = (self.p as u64, self.n as usize);
        let mut digits = vec![0u64; n];
        let mut g = gamma_index;
        for d in digits.iter_mut() {
            *d = g % p;
            g /= p;
        }
        let mut w = 0u64;
        for j in (0..n).rev() {
            let wj = (0..n)
                .map(|k| digits[k] * self.matrix[k * n + j] as u64)
                .sum::<u64>()
                % p;
            w = w * p + wj;
        }
        w
    }
}

/// Count vectors `F(w)` for every `w` in `F_p^n`.
pub struct CharSumSpectrum {
    p: usize,
    q: u64,
    data: Vec<u32>,
}

impl CharSumSpectrum {
    /// From an image table indexed by canonical element index.
    pub fn from_image<F: FiniteField>(field: &F, image: &[F::Elem]) -> Result<Self> {
        let q = field.order();
        let p = field.characteristic() as usize;
        if image.len() as u64 != q {
            return Err(Error::InvalidArgument(format!(
                "image has {} entries, field has {q}",
                image.len()
            )));
        }
        if q.saturating_mul(p as u64) > TRANSFORM_LIMIT {
            return Err(Error::UnsupportedSize(format!(
                "q*p = {} exceeds the transform limit",
                q as u128 * p as u128
            )));
        }
        let q_us = q as usize;
        let mut data = vec![0u32; q_us * p];
        for &y in image {
            data[field.index(y) as usize * p] += 1;
        }
        transform(&mut data, p, field.degree());
        Ok(Self { p, q, data })
    }

    pub fn counts(&self, w: u64) -> &[u32] {
        let w = w as usize;
        &self.data[w * self.p..(w + 1) * self.p]
    }

    fn uniform(&self, w: u64) -> bool {
        let p = self.p as u64;
        self.counts(w).iter().all(|&c| c as u64 * p == self.q)
    }

    /// Whether every `w != 0` has a flat count vector.
    pub fn all_nonzero_vanish(&self) -> bool {
        (1..self.q).all(|w| self.uniform(w))
    }
}

fn transform(data: &mut [u32], p: usize, n: u32) {
    match p {
        3 => transform_fixed::<3>(data, n),
        5 => transform_fixed::<5>(data, n),
        7 => transform_fixed::<7>(data, n),
        _ => transform_any(data, p, n),
    }
}

// Same butterfly as `transform_any` with the radix known at compile time.
fn transform_fixed<const P: usize>(data: &mut [u32], n: u32) {
    let q = data.len() / P;
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * P;
        for base in (0..q).step_by(block) {
            for start in base..base + stride {
                let mut tmp = [[0u32; P]; P];
                for (v, row) in tmp.iter_mut().enumerate() {
                    let at = (start + v * stride) * P;
                    row.copy_from_slice(&data[at..at + P]);
                }
                for u in 0..P {
                    let mut out = [0u32; P];
                    for (v, row) in tmp.iter().enumerate() {
                        let shift = (u * v) % P;
                        for k in 0..P {
                            out[(k + shift) % P] += row[k];
                        }
                    }
                    let at = (start + u * stride) * P;
                    data[at..at + P].copy_from_slice(&out);
                }
            }
        }
        stride = block;
    }
}

fn transform_any(data: &mut [u32], p: usize, n: u32) {
    let q = data.len() / p;
    let mut tmp = vec![0u32; p * p];
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * p;
        for base in (0..q).step_by(block) {
            for start in base..base + stride {
                for v in 0..p {
                    let at = (start + v * stride) * p;
                    tmp[v * p..(v + 1) * p].copy_from_slice(&data[at..at + p]);
                }
                for u in 0..p {
                    let at = (start + u * stride) * p;
                    let out = &mut data[at..at + p];
                    out.fill(0);
                    for v in 0..p {
                        let shift = (u * v) % p;
                        let src = &tmp[v * p..(v + 1) * p];
                        let (lo, hi) = out.split_at_mut(shift);
                        for (o, s) in hi.iter_mut().zip(src) {
                            *o += s;
                        }
                        for (o, s) in lo.iter_mut().zip(&src[p - shift..]) {
                            *o += s;
                        }
                    }
                }
            }
        }
        stride = block;
    }
}

/// Outcome of testing every nonzero `gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSumVerdict<E> {
    pub vanishes: bool,
    /// First `gamma` in index order whose sum does not vanish.
    pub witness: Option<E>,
}

/// Character-sum test over all nonzero `gamma`, from a precomputed image.
pub fn char_sums_on_image<F: FiniteField>(
    field: &F,
    image: &[F::Elem],
) -> Result<CharSumVerdict<F::Elem>> {
    let q = field.order();
    let spectrum = match CharSumSpectrum::from_image(field, image) {
        Ok(s) => s,
        Err(Error::UnsupportedSize(_)) => return direct_on_image(field, image),
        Err(e) => return Err(e),
    };
    if spectrum.all_nonzero_vanish() {
        return Ok(CharSumVerdict {
            vanishes: true,
            witness: None,
        });
    }
    let form = TraceForm::new(field);
    let witness = (1..q)
        .find(|&g| !spectrum.uniform(form.weight_index(g)))
        .map(|g| field.element(g));
    Ok(CharSumVerdict {
        vanishes: false,
        witness,
    })
}

fn direct_on_image<F: FiniteField>(field: &F, image: &[F::Elem]) -> Result<CharSumVerdict<F::Elem>> {
    let p = field.characteristic() as usize;
    for g in 1..field.order() {
        let gamma = field.element(g);
        let mut counts = vec![0u64; p];
        for &y in image {
            counts[field.abs_trace(field.mul(gamma, y)) as usize] += 1;
        }
        if !CharSum::from_counts(counts, field.order()).vanishes {
            return Ok(CharSumVerdict {
                vanishes: false,
                witness: Some(gamma),
            });
        }
    }
    Ok(CharSumVerdict {
        vanishes: true,
        witness: None,
    })
}

/// Permutation test through character sums.
pub fn pp_by_char_sums<F: FiniteField, M: FieldMap<F>>(field: &F, f: &M) -> Result<bool> {
    Ok(char_sums_on_image(field, &f.image(field)?)?.vanishes)
}
