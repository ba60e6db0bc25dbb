//! Slow, independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use cpplab::FiniteField;

/// Bijectivity by evaluating every point and hashing the values.
pub fn naive_is_bijection<F: FiniteField>(field: &F, f: impl Fn(F::Elem) -> F::Elem) -> bool {
    let mut seen = HashSet::new();
    (0..field.order()).all(|i| seen.insert(f(field.element(i))))
}

/// `x^e` by repeated multiplication, no square-and-multiply.
pub fn slow_pow<F: FiniteField>(field: &F, x: F::Elem, e: u64) -> F::Elem {
    let mut acc = field.one();
    for _ in 0..e {
        acc = field.mul(acc, x);
    }
    acc
}

/// Smallest `e` in `[1, n)` with `d e = 1 (mod n)`, by search.
pub fn brute_inverse(d: u64, n: u64) -> Option<u64> {
    let d = d % n;
    (1..n).find(|&e| (d as u128 * e as u128) % n as u128 == 1)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `D_n` over the integers as a map `(x power, a power) -> coefficient`,
/// iterating `D_{k+2} = x D_{k+1} - a D_k` on bivariate polynomials.
pub fn bivariate_dickson(n: u64) -> BTreeMap<(u64, u64), i128> {
    let mut prev: BTreeMap<(u64, u64), i128> = BTreeMap::from([((0, 0), 2)]);
    if n == 0 {
        return prev;
    }
    let mut cur: BTreeMap<(u64, u64), i128> = BTreeMap::from([((1, 0), 1)]);
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for (&(i, j), &c) in &cur {
            *next.entry((i + 1, j)).or_insert(0) += c;
        }
        for (&(i, j), &c) in &prev {
            *next.entry((i, j + 1)).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Smallest monic irreducible of degree `m` over `F_p` by exhaustive
/// factor search, constant term compared first.
pub fn brute_smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let total = (p as u64).pow(m as u32);
    // Rank: c_0 most significant, so iterate c_0 slowest.
    for rank in 0..total {
        let mut coeffs = vec![0u32; m + 1];
        let mut r = rank;
        for pos in (0..m).rev() {
            coeffs[pos] = (r % p as u64) as u32;
            r /= p as u64;
        }
        coeffs[m] = 1;
        if !has_factor(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible always exists")
}

fn has_factor(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for rank in 0..(p as u64).pow(d as u32) {
            let mut g = vec![0u32; d + 1];
            let mut r = rank;
            for c in g.iter_mut().take(d) {
                *c = (r % p as u64) as u32;
                r /= p as u64;
            }
            g[d] = 1;
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let p = p as u64;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        for (k, &bc) in b.iter().enumerate() {
            r[shift + k] = (r[shift + k] + (p - lead) * bc as u64) % p;
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}
