//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficient vectors are stored constant term first and kept trimmed
//! (no trailing zeros); the zero polynomial is the empty vector.

use crate::modring::prime_factors;
use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyRing {
    p: u32,
}

pub type Poly = Vec<u32>;

impl PolyRing {
    pub fn new(p: u32) -> Self {
        debug_assert!(p >= 2);
        Self { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    fn addc(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn subc(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mulc(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Inverse in `F_p` by Fermat.
    pub fn inv_scalar(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        Some(acc as u32)
    }

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.addc(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.subc(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn scale(&self, a: &[u32], c: u32) -> Poly {
        Self::trim(a.iter().map(|&x| self.mulc(x, c)).collect())
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p;
            }
        }
        Self::trim(acc.into_iter().map(|c| c as u32).collect())
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, a: &[u32], b: &[u32]) -> (Poly, Poly) {
        let db = Self::degree(b).expect("division by zero polynomial");
        let lead_inv = self.inv_scalar(b[db]).expect("nonzero leading coefficient");
        let mut rem: Poly = Self::trim(a.to_vec());
        let Some(da) = Self::degree(&rem) else {
            return (Vec::new(), Vec::new());
        };
        if da < db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u32; da - db + 1];
        for k in (0..=da - db).rev() {
            let c = rem.get(k + db).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            let f = self.mulc(c, lead_inv);
            quot[k] = f;
            for (j, &bj) in b[..=db].iter().enumerate() {
                rem[k + j] = self.subc(rem[k + j], self.mulc(f, bj));
            }
        }
        (Self::trim(quot), Self::trim(rem))
    }

    pub fn rem(&self, a: &[u32], b: &[u32]) -> Poly {
        self.divrem(a, b).1
    }

    pub fn make_monic(&self, a: &[u32]) -> Poly {
        match Self::degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = self.inv_scalar(a[d]).expect("nonzero lead");
                self.scale(a, inv)
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u32], b: &[u32]) -> Poly {
        let mut x = Self::trim(a.to_vec());
        let mut y = Self::trim(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.make_monic(&x)
    }

    /// Extended Euclid: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[u32], b: &[u32]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (Self::trim(a.to_vec()), Self::trim(b.to_vec()));
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match Self::degree(&r0) {
            None => (r0, s0, t0),
            Some(d) => {
                let inv = self.inv_scalar(r0[d]).expect("nonzero lead");
                (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
            }
        }
    }

    /// Inverse of `a` modulo `f`, if `gcd(a, f) = 1`.
    pub fn inv_mod(&self, a: &[u32], f: &[u32]) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(a, f);
        (g == [1]).then(|| self.rem(&s, f))
    }

    pub fn mulmod(&self, a: &[u32], b: &[u32], f: &[u32]) -> Poly {
        self.rem(&self.mul(a, b), f)
    }

    pub fn powmod(&self, a: &[u32], e: &BigUint, f: &[u32]) -> Poly {
        let mut acc: Poly = self.rem(&[1], f);
        let base = self.rem(a, f);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, f);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, f);
            }
        }
        acc
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff
    /// `x^(p^n) = x mod f` and `gcd(x^(p^(n/r)) - x, f) = 1` for primes `r | n`.
    pub fn is_irreducible(&self, f: &[u32]) -> bool {
        let Some(n) = Self::degree(f) else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x: Poly = vec![0, 1];
        let p = BigUint::from(self.p);
        // frob[k] = x^(p^k) mod f
        let mut frob = vec![self.rem(&x, f)];
        for k in 1..=n {
            let next = self.powmod(&frob[k - 1], &p, f);
            frob.push(next);
        }
        if self.sub(&frob[n], &x) != Vec::<u32>::new() {
            return false;
        }
        let primes = prime_factors(&BigUint::from(n as u64), u64::MAX).expect("small n");
        primes.iter().all(|&r| {
            let h = self.sub(&frob[n / r as usize], &x);
            self.gcd(&h, f) == [1]
        })
    }

    /// The smallest monic irreducible of degree `m`, with coefficient tuples
    /// `(c_0, ..., c_{m-1})` ordered lexicographically, constant term first.
    pub fn smallest_irreducible(&self, m: usize) -> Poly {
        assert!(m >= 1);
        let p = self.p as u64;
        let total = p.pow(m as u32);
        for rank in 0..total {
            // c_0 is the most significant digit of the rank.
            let mut coeffs = vec![0u32; m + 1];
            let mut r = rank;
            for i in (0..m).rev() {
                coeffs[i] = (r % p) as u32;
                r /= p;
            }
            coeffs[m] = 1;
            if self.is_irreducible(&coeffs) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    pub fn eval(&self, a: &[u32], x: u32) -> u32 {
        a.iter()
            .rev()
            .fold(0, |acc, &c| self.addc(self.mulc(acc, x), c))
    }
}
