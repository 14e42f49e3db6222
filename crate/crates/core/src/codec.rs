//! Encoding and erasure decoding against a generator matrix.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::Matrix;

/// A received word. `None` marks an erased position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<Option<Elem>>,
}

impl Codeword {
    pub fn complete(symbols: &[Elem]) -> Codeword {
        Codeword { symbols: symbols.iter().copied().map(Some).collect() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// Copy with the given positions erased.
    pub fn erase(&self, positions: &[usize]) -> Result<Codeword> {
        let mut out = self.clone();
        for &p in positions {
            let slot = out
                .symbols
                .get_mut(p)
                .ok_or(Error::IndexOutOfRange { index: p, bound: self.len() })?;
            *slot = None;
        }
        Ok(out)
    }
}

/// msg · G
pub fn encode(msg: &[Elem], g: &Matrix) -> Result<Codeword> {
    for &x in msg {
        g.field().check(x)?;
    }
    Ok(Codeword::complete(&g.vec_mul(msg)?))
}

/// Recovers the message from the first k surviving positions, then checks
/// every surviving symbol against the re-encoded codeword.
pub fn erasure_decode(cw: &Codeword, g: &Matrix) -> Result<Vec<Elem>> {
    let (k, n) = g.shape();
    if cw.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: cw.len() });
    }
    let erased = cw.erasures();
    if erased > n - k {
        return Err(Error::TooManyErasures { erased, allowed: n - k });
    }
    let survivors: Vec<usize> = (0..n).filter(|&i| cw.symbols[i].is_some()).take(k).collect();
    let received: Vec<Elem> = survivors
        .iter()
        .map(|&i| g.field().check(cw.symbols[i].expect("survivor")))
        .collect::<Result<_>>()?;
    let inverse = g
        .select_columns(&survivors)?
        .inverse()?
        .ok_or_else(|| Error::SingularSurvivors(survivors.clone()))?;
    let msg = inverse.vec_mul(&received)?;
    let again = g.vec_mul(&msg)?;
    for (i, sym) in cw.symbols.iter().enumerate() {
        if let Some(x) = sym {
            if *x != again[i] {
                return Err(Error::CorruptSymbol(i));
            }
        }
    }
    Ok(msg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::gen_rs;
    use crate::field::Field;
    use alloc::vec;

    fn setup() -> Matrix {
        let f = Field::prime(11).unwrap();
        let pts: Vec<Elem> = (1..=7).map(Elem::from_index).collect();
        gen_rs(&f, &pts, 3, false).unwrap()
    }

    #[test]
    fn zero_and_unit_messages() {
        let g = setup();
        assert!(encode(&[Elem::ZERO; 3], &g).unwrap().symbols.iter().all(|s| *s == Some(Elem::ZERO)));
        let e1 = [Elem::ZERO, Elem::ONE, Elem::ZERO];
        assert_eq!(encode(&e1, &g).unwrap(), Codeword::complete(g.row(1)));
        assert!(encode(&[Elem::ONE], &g).is_err());
    }

    #[test]
    fn decode_paths() {
        let g = setup();
        let msg = vec![Elem::from_index(3), Elem::from_index(9), Elem::from_index(4)];
        let cw = encode(&msg, &g).unwrap();
        assert_eq!(erasure_decode(&cw, &g).unwrap(), msg);
        let lossy = cw.erase(&[0, 2, 3, 6]).unwrap();
        assert_eq!(erasure_decode(&lossy, &g).unwrap(), msg);
        let too_many = cw.erase(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(erasure_decode(&too_many, &g), Err(Error::TooManyErasures { erased: 5, allowed: 4 }));
        let mut corrupt = cw.erase(&[0]).unwrap();
        corrupt.symbols[5] = Some(g.field().add(cw.symbols[5].unwrap(), Elem::ONE));
        assert_eq!(erasure_decode(&corrupt, &g), Err(Error::CorruptSymbol(5)));
    }
}
