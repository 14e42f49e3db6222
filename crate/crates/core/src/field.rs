//! Finite fields GF(p^m) with q = p^m <= 2^16.
//!
//! Elements are stored in polynomial basis: the coefficient list
//! (c_0, ..., c_{m-1}) over GF(p) is packed into the integer
//! c_0 + c_1 p + ... + c_{m-1} p^{m-1}, which makes the representation
//! canonical and lets an element be used directly as a table index.
//! Multiplication goes through log/antilog tables built from the primitive
//! element; the schoolbook polynomial product is kept as a reference path and
//! the two are checked against each other in tests.
//!
//! Code parameters built on top of a field do not depend on which modulus is
//! chosen, but printed matrix entries do. The default modulus is the Conway
//! polynomial, so runs are reproducible and match common computer-algebra
//! conventions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly;

pub const MAX_ORDER: u32 = 1 << 16;

/// A field element in canonical packed form. Elements are plain handles; the
/// [`Field`] they belong to is carried by the containers that hold them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Packed index; no range check against any field.
    pub const fn from_index(index: u32) -> Elem {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    /// exp[i] = primitive^i for i in 0..2(q-1), doubled to skip a reduction.
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
}

/// GF(p^m) with its modulus and primitive element. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus
                && self.0.primitive == other.0.primitive)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^m).
    ///
    /// Without a modulus (and m > 1) the Conway polynomial is used. Without a
    /// primitive element the one with the smallest packed index is used; under
    /// a Conway modulus that is always `x`. For m = 1 any supplied modulus is
    /// ignored and the field is stored with modulus `x`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>, primitive: Option<Elem>) -> Result<Field> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or(Error::FieldTooLarge { p, m })? as u32;

        let modulus = if m == 1 {
            alloc::vec![0, 1]
        } else if let Some(f) = modulus {
            if f.len() != m as usize + 1 {
                return Err(Error::ModulusDegree { expected: m as usize + 1, found: f.len() });
            }
            if let Some(&c) = f.iter().find(|&&c| c >= p) {
                return Err(Error::ModulusCoefficient(c));
            }
            if f[m as usize] != 1 {
                return Err(Error::ModulusNotMonic);
            }
            if !poly::is_irreducible(f, p) {
                return Err(Error::ReducibleModulus);
            }
            f.to_vec()
        } else {
            poly::conway(p, m as usize)
        };

        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };

        let primitive = match primitive {
            Some(g) => {
                if g.0 >= q {
                    return Err(Error::ElementOutOfRange { index: g.0, order: q });
                }
                if !inner.has_full_order(g) {
                    return Err(Error::NotPrimitive);
                }
                g
            }
            None => (1..q)
                .map(Elem)
                .find(|&g| inner.has_full_order(g))
                .ok_or(Error::NotPrimitive)?,
        };
        inner.primitive = primitive;
        inner.build_tables();
        Ok(Field(Arc::new(inner)))
    }

    /// GF(p) with its least primitive root.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None, None)
    }

    /// GF(q) for a prime power q, with default modulus and primitive element.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, m) = split_prime_power(q).ok_or(Error::NotPrime(q))?;
        Field::new(p, m, None, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.0.primitive
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Range-checked element from its packed index.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.0.q })
        }
    }

    /// Confirms `x` is a valid element of this field.
    pub fn check(&self, x: Elem) -> Result<Elem> {
        self.elem(x.0)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.q).map(Elem)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        self.0.digits(x.0)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.0.m as usize {
            return Err(Error::LengthMismatch { expected: self.0.m as usize, found: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::ModulusCoefficient(c));
        }
        Ok(Elem(self.0.pack(coeffs)))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let i = &*self.0;
        if i.p == 2 {
            Elem(a.0 ^ b.0)
        } else if i.m == 1 {
            Elem((a.0 + b.0) % i.p)
        } else {
            Elem(i.digitwise(a.0, b.0, |x, y| (x + y) % i.p))
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let i = &*self.0;
        if i.p == 2 {
            Elem(a.0 ^ b.0)
        } else if i.m == 1 {
            Elem((a.0 + i.p - b.0) % i.p)
        } else {
            Elem(i.digitwise(a.0, b.0, |x, y| (x + i.p - y) % i.p))
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(Elem::ZERO, a)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let i = &*self.0;
        Elem(i.exp[(i.log[a.0 as usize] + i.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let i = &*self.0;
        let l = i.log[a.0 as usize];
        Ok(Elem(i.exp[((i.q - 1 - l) % (i.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let i = &*self.0;
        let l = i.log[a.0 as usize] as u64 * (e % (i.q as u64 - 1)) % (i.q as u64 - 1);
        Elem(i.exp[l as usize])
    }

    /// primitive^e, negative exponents allowed.
    pub fn exp(&self, e: i64) -> Elem {
        let n = self.0.q as i64 - 1;
        Elem(self.0.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete log to the primitive base, `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x.0 != 0).then(|| self.0.log[x.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Elem) -> Result<u32> {
        let l = self.log(x).ok_or(Error::ZeroElement)?;
        let n = self.0.q - 1;
        Ok(n / gcd(n, l))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }

    /// Polynomial-basis product without tables.
    pub fn mul_reference(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul_reference(a, b)
    }

    /// Text form `GF(p^m)/f_0,...,f_m/g_0,...,g_{m-1}`: modulus and primitive
    /// element as coefficient lists, lowest degree first.
    pub fn descriptor(&self) -> String {
        let join = |v: &[u32]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        format!(
            "GF({}^{})/{}/{}",
            self.0.p,
            self.0.m,
            join(&self.0.modulus),
            join(&self.coeffs(self.0.primitive))
        )
    }

    /// Parses [`Field::descriptor`] output. `GF(q)` and `GF(p^m)` without the
    /// trailing parts select the defaults.
    pub fn parse_descriptor(s: &str) -> Result<Field> {
        let bad = || Error::Parse(format!("bad field descriptor {s:?}"));
        let mut parts = s.trim().split('/');
        let head = parts.next().ok_or_else(bad)?;
        let inner = head
            .strip_prefix("GF(")
            .and_then(|h| h.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, m) = match inner.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => split_prime_power(inner.trim().parse::<u32>().map_err(|_| bad())?)
                .ok_or_else(bad)?,
        };
        let list = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        let modulus = parts.next().map(list).transpose()?;
        let primitive_coeffs = parts.next().map(list).transpose()?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let primitive = match primitive_coeffs {
            Some(c) => {
                if c.len() != m as usize || c.iter().any(|&d| d >= p) {
                    return Err(bad());
                }
                let mut idx = 0u32;
                for &d in c.iter().rev() {
                    idx = idx * p + d;
                }
                Some(Elem(idx))
            }
            None => None,
        };
        Field::new(p, m, modulus.as_deref(), primitive)
    }

    /// Token for one element: the residue for prime fields, `w^e` (or `0`)
    /// for extension fields.
    pub fn format_elem(&self, x: Elem) -> String {
        if self.0.m == 1 {
            x.0.to_string()
        } else {
            match self.log(x) {
                None => "0".into(),
                Some(e) => format!("w^{e}"),
            }
        }
    }

    /// Coefficient form `(c_0,...,c_{m-1})`.
    pub fn format_coeffs(&self, x: Elem) -> String {
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Accepts integers (reduced into the prime subfield), `w`, `w^e` with
    /// possibly negative e, and `-w^e`.
    pub fn parse_elem(&self, token: &str) -> Result<Elem> {
        let t = token.trim();
        let bad = || Error::Parse(format!("bad field element {token:?}"));
        if let Some(rest) = t.strip_prefix('-') {
            if rest.starts_with('w') {
                return Ok(self.neg(self.parse_elem(rest)?));
            }
        }
        if let Some(rest) = t.strip_prefix('w') {
            let e = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
            };
            return Ok(self.exp(e));
        }
        let n = t.parse::<i64>().map_err(|_| bad())?;
        Ok(self.from_int(n))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl Inner {
    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn digitwise(&self, mut a: u32, mut b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_reference(&self, a: Elem, b: Elem) -> Elem {
        if self.m == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let prod = poly::mul_mod(
            &poly::trim(self.digits(a.0)),
            &poly::trim(self.digits(b.0)),
            &self.modulus,
            self.p,
        );
        let mut c = prod;
        c.resize(self.m as usize, 0);
        Elem(self.pack(&c))
    }

    fn pow_reference(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reference(acc, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        acc
    }

    fn has_full_order(&self, g: Elem) -> bool {
        if g.0 == 0 {
            return false;
        }
        let n = self.q as u64 - 1;
        if n == 1 {
            return g == Elem::ONE;
        }
        poly::prime_factors(n)
            .into_iter()
            .all(|r| self.pow_reference(g, n / r) != Elem::ONE)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n.max(1));
        let mut log = alloc::vec![0u32; self.q as usize];
        let mut x = Elem::ONE;
        for i in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_reference(x, self.primitive);
        }
        exp.extend_from_within(..);
        self.exp = exp;
        self.log = log;
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Splits a prime power into (p, m).
pub fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_and_extension_orders() {
        assert_eq!(Field::new(29, 1, None, None).unwrap().order(), 29);
        let f27 = Field::new(3, 3, None, None).unwrap();
        assert_eq!(f27.order(), 27);
        assert_eq!(f27.modulus(), &[1, 2, 0, 1]);
        let f64 = Field::new(2, 6, None, None).unwrap();
        assert_eq!(f64.order(), 64);
        assert!(poly::is_irreducible(f64.modulus(), 2));
        // the default primitive under a Conway modulus is x, packed as p
        assert_eq!(f64.primitive(), Elem(2));
        assert_eq!(f27.primitive(), Elem(3));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(15, 1, None, None).unwrap_err(), Error::NotPrime(15));
        assert_eq!(Field::new(2, 0, None, None).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Field::new(2, 17, None, None), Err(Error::FieldTooLarge { .. })));
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1]), None).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(Field::new(2, 2, Some(&[1, 1, 0]), None).unwrap_err(), Error::ModulusNotMonic);
        // 4 has order 7 in GF(29)
        assert_eq!(Field::new(29, 1, None, Some(Elem(4))).unwrap_err(), Error::NotPrimitive);
    }

    #[test]
    fn small_arithmetic() {
        let f = Field::prime(29).unwrap();
        assert_eq!(f.inv(Elem(3)).unwrap(), Elem(10));
        assert_eq!(f.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.div(Elem(1), Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.neg(Elem(5)), Elem(24));

        let g = Field::with_order(64).unwrap();
        let w = g.primitive();
        assert_eq!(g.mul(w, g.pow(w, 62)), Elem::ONE);
        assert_eq!(g.mul(g.exp(13), g.exp(25)), g.exp(38));
        assert_eq!(g.exp(-1), g.inv(w).unwrap());
    }

    #[test]
    fn nonprimitive_modulus_picks_least_primitive() {
        // x^2 + 1 over GF(3) is irreducible but x has order 4
        let f = Field::new(3, 2, Some(&[1, 0, 1]), None).unwrap();
        assert_eq!(f.mult_order(f.primitive()).unwrap(), 8);
        let least = f.elements().skip(1).find(|&x| f.mult_order(x).unwrap() == 8).unwrap();
        assert_eq!(f.primitive(), least);
    }

    #[test]
    fn descriptor_round_trip() {
        for q in [2, 7, 9, 16, 27, 29, 64, 125] {
            let f = Field::with_order(q).unwrap();
            let g = Field::parse_descriptor(&f.descriptor()).unwrap();
            assert_eq!(f, g);
        }
        let f = Field::parse_descriptor("GF(29)").unwrap();
        assert_eq!(f.descriptor(), "GF(29^1)/0,1/2");
        assert!(Field::parse_descriptor("GF(29^1)/0,1/2/9").is_err());
        assert!(Field::parse_descriptor("F(7)").is_err());
    }

    #[test]
    fn element_tokens() {
        let f = Field::with_order(27).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse_elem(&f.format_elem(x)).unwrap(), x);
        }
        assert_eq!(f.parse_elem("2").unwrap(), f.neg(Elem::ONE));
        assert_eq!(f.parse_elem("w").unwrap(), f.primitive());
        assert_eq!(f.parse_elem("-w^0").unwrap(), f.neg(Elem::ONE));
        assert!(f.parse_elem("v^2").is_err());
        let p = Field::prime(29).unwrap();
        assert_eq!(p.parse_elem("-1").unwrap(), Elem(28));
        assert_eq!(p.format_elem(Elem(12)), "12");
    }

    #[test]
    fn split_powers() {
        assert_eq!(split_prime_power(64), Some((2, 6)));
        assert_eq!(split_prime_power(29), Some((29, 1)));
        assert_eq!(split_prime_power(12), None);
        assert_eq!(split_prime_power(1), None);
    }
}
