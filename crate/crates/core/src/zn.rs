//! Scalar arithmetic on `Z/N` and exact cardinalities of finite abelian groups.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 1 << 31;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended gcd on nonnegative integers: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r as u64, old_s, old_t)
}

/// Reduce a signed integer into `[0, n)`.
#[inline]
pub fn reduce_signed(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    // both operands are < 2^31, so the product fits in u64
    a * b % n
}

#[inline]
pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    let s = a + b;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
pub fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a % n, n);
    if g != 1 {
        return None;
    }
    Some(reduce_signed(s, n))
}

/// A unit `w` of `Z/n` with `w * a ≡ gcd(a, n) (mod n)`.
pub fn normalizing_unit(a: u64, n: u64) -> u64 {
    let a = a % n;
    if a == 0 {
        return 1;
    }
    let g = gcd(a, n);
    let cofactor = n / g;
    let base = inv_mod((a / g) % cofactor, cofactor).unwrap_or(0);
    let mut w = base;
    // some lift of the inverse modulo n/g is a unit modulo n
    while gcd(w, n) != 1 {
        w += cofactor;
    }
    w % n
}

/// Prime factorisation by trial division (moduli here are below 2^31).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact size of a finite set, kept as a prime factorisation so that orders of
/// large free modules (e.g. `|R|^4096`) never overflow.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cardinality {
    factors: BTreeMap<u64, u64>,
}

impl Cardinality {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "cardinality of an empty set");
        let mut c = Self::one();
        for (p, e) in factorize(n) {
            c.factors.insert(p, e as u64);
        }
        c
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            *out.factors.entry(p).or_insert(0) += e;
        }
        out
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut out = Self::one();
        if k == 0 {
            return out;
        }
        for (&p, &e) in &self.factors {
            out.factors.insert(p, e * k);
        }
        out
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            let cur = out.factors.get(&p).copied().unwrap_or(0);
            if cur < e {
                return None;
            }
            if cur == e {
                out.factors.remove(&p);
            } else {
                out.factors.insert(p, cur - e);
            }
        }
        Some(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.checked_div(self).is_some()
    }

    /// If `self = q^k` for the prime power `q`, return `k`.
    pub fn log_base(&self, q: &Self) -> Option<u64> {
        if self.is_one() {
            return Some(0);
        }
        if q.factors.len() != 1 || self.factors.len() != 1 {
            return None;
        }
        let (&p, &e) = q.factors.iter().next()?;
        let (&sp, &se) = self.factors.iter().next()?;
        if p != sp || se % e != 0 {
            return None;
        }
        Some(se / e)
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_u128() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (p, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cardinality({self})")
    }
}
