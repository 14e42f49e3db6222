use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// The unique multiplicative subgroup of order `d` in GF(q)*, generated by
/// primitive^((q-1)/d). Elements are listed in exponent order
/// 1, g, g^2, ..., g^(d-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    field: Field,
    order: usize,
    generator: Elem,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn new(field: &Field, d: usize) -> Result<Subgroup> {
        let n = field.order() - 1;
        if d == 0 || n as usize % d != 0 {
            return Err(Error::NotADivisor { d, order: n });
        }
        let index = n as usize / d;
        let generator = field.exp(index as i64);
        let elements = (0..d).map(|i| field.exp((i * index) as i64)).collect();
        Ok(Subgroup { field: field.clone(), order: d, generator, elements })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// [GF(q)* : H]
    pub fn index(&self) -> usize {
        (self.field.order() as usize - 1) / self.order
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn is_proper(&self) -> bool {
        self.order < self.field.order() as usize - 1
    }

    /// Membership by x^|H| = 1.
    pub fn contains(&self, x: Elem) -> Result<bool> {
        self.field.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.field.pow(x, self.order as u64) == Elem::ONE)
    }

    /// Index of the coset xH, i.e. log(x) mod [GF(q)* : H].
    pub fn coset_of(&self, x: Elem) -> Result<usize> {
        let l = self.field.log(x).ok_or(Error::ZeroElement)?;
        Ok(l as usize % self.index())
    }

    /// Nonzero elements outside H, in exponent order.
    pub fn non_members(&self) -> impl Iterator<Item = Elem> + '_ {
        let index = self.index();
        (0..self.field.order() as usize - 1)
            .filter(move |e| e % index != 0)
            .map(|e| self.field.exp(e as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn squares_mod_29() {
        let f = Field::prime(29).unwrap();
        let h = Subgroup::new(&f, 14).unwrap();
        let mut got: Vec<u32> = h.elements().iter().map(|x| x.index()).collect();
        got.sort();
        // 28 = -1 is a square since 29 = 1 mod 4; 19 is not
        assert_eq!(got, vec![1, 4, 5, 6, 7, 9, 13, 16, 20, 22, 23, 24, 25, 28]);
        let brute: Vec<u32> = {
            let mut v: Vec<u32> = (1..29u32).map(|x| x * x % 29).collect();
            v.sort();
            v.dedup();
            v
        };
        assert_eq!(got, brute);
        assert!(!h.contains(Elem::from_index(15)).unwrap());
        assert!(!h.contains(Elem::from_index(19)).unwrap());
        assert!(h.contains(Elem::ONE).unwrap());
        assert_eq!(h.contains(Elem::ZERO), Err(Error::ZeroElement));
    }

    #[test]
    fn cubes_in_gf64() {
        let f = Field::with_order(64).unwrap();
        let h = Subgroup::new(&f, 21).unwrap();
        let expected: Vec<Elem> = (0..21).map(|i| f.exp(3 * i)).collect();
        assert_eq!(h.elements(), expected.as_slice());
        let x = f.exp(13);
        assert!(!h.contains(x).unwrap());
        assert_ne!(f.pow(x, 21), Elem::ONE);
    }

    #[test]
    fn trivial_and_bad_orders() {
        let f = Field::prime(11).unwrap();
        let h = Subgroup::new(&f, 1).unwrap();
        assert_eq!(h.elements(), &[Elem::ONE]);
        assert_eq!(Subgroup::new(&f, 3).unwrap_err(), Error::NotADivisor { d: 3, order: 10 });
        assert!(Subgroup::new(&f, 0).is_err());
    }
}
