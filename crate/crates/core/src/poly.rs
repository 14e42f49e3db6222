//! Dense polynomials over the prime field GF(p), coefficient lists stored
//! lowest degree first. Only what field construction needs: reduction,
//! modular exponentiation, irreducibility by trial division and Conway
//! polynomial search.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo a nonzero `f`.
pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = inv_mod(f[df], p) as u64;
    let mut r: Vec<u32> = trim(a.to_vec());
    let p64 = p as u64;
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - df;
        for (i, &c) in f.iter().enumerate().take(df + 1) {
            let sub = factor * c as u64 % p64;
            r[i + shift] = ((r[i + shift] as u64 + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], f, p);
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Evaluates `g` (coefficients in GF(p)) at the residue `x` modulo `f`.
pub fn eval_mod(g: &[u32], x: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut acc: Vec<u32> = Vec::new();
    for &c in g.iter().rev() {
        acc = mul_mod(&acc, x, f, p);
        let mut sum = acc;
        if sum.is_empty() {
            sum.push(0);
        }
        sum[0] = (sum[0] + c) % p;
        acc = trim(sum);
    }
    acc
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-p
/// digits of `index`.
fn monic_from_index(index: u64, d: usize, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(d + 1);
    let mut n = index;
    for _ in 0..d {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out.push(1);
    out
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(df) = degree(f) else { return false };
    if df == 0 {
        return false;
    }
    for d in 1..=df / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// True when `x` has multiplicative order exactly p^deg(f) - 1 modulo `f`.
/// Such an `f` is necessarily irreducible.
pub fn x_is_primitive(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 || f[0] == 0 {
        return false;
    }
    let order = (p as u64).pow(m as u32) - 1;
    let x = [0, 1];
    if pow_mod(&x, order, f, p) != [1] {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| pow_mod(&x, order / r, f, p) != [1])
}

/// The Conway polynomial C(p, m): the least primitive polynomial of degree m
/// in Conway's ordering whose root is compatible with every C(p, d), d | m.
///
/// Ordering: write f = x^m - c_{m-1} x^{m-1} + c_{m-2} x^{m-2} - ... with
/// c_i in 0..p; candidates are ranked by (c_{m-1}, ..., c_0) lexicographically.
pub fn conway(p: u32, m: usize) -> Vec<u32> {
    let subfields: Vec<(usize, Vec<u32>)> = (1..m)
        .filter(|d| m % d == 0)
        .map(|d| (d, conway(p, d)))
        .collect();
    let order = (p as u64).pow(m as u32) - 1;
    let total = (p as u64).pow(m as u32);
    for index in 0..total {
        let mut f = Vec::with_capacity(m + 1);
        let mut n = index;
        for i in 0..m {
            let c = (n % p as u64) as u32;
            n /= p as u64;
            let signed = if (m - i) % 2 == 1 { (p - c) % p } else { c };
            f.push(signed);
        }
        f.push(1);
        if !x_is_primitive(&f, p) {
            continue;
        }
        let compatible = subfields.iter().all(|(d, sub)| {
            let e = order / ((p as u64).pow(*d as u32) - 1);
            let beta = pow_mod(&[0, 1], e, &f, p);
            eval_mod(sub, &beta, &f, p).is_empty()
        });
        if compatible {
            return f;
        }
    }
    unreachable!("every finite field has a Conway polynomial")
}
