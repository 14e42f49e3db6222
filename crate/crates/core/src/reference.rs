//! The three reference codes and their published matrices.
//!
//! Published entries are stored as tokens (integers for GF(29), `w^e` for
//! the extension fields) and parsed against the canonical field, whose
//! primitive element is a root of the Conway polynomial.

use alloc::vec::Vec;

use crate::construct::{CodeSpec, Regime, SpecParts};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::subgroup::Subgroup;

/// Published code parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Clone, Debug)]
pub struct Reference {
    pub id: u8,
    pub spec: CodeSpec,
    pub code: Params,
    pub schur: Params,
}

/// A published matrix. `columns[j]` is the column of the rebuilt matrix that
/// printed column j corresponds to.
#[derive(Clone, Debug)]
pub struct Printed {
    pub matrix: Matrix,
    pub columns: Vec<usize>,
}

/// Multiplier exponents, in column order, for the GF(27) code.
pub const GF27_MU_EXPONENTS: [i64; 12] = [22, 12, 2, 24, 14, 4, 16, 6, 18, 8, 20, 10];
/// Multiplier exponents for the GF(64) code as printed; the first lies in H.
pub const GF64_MU_EXPONENTS: [i64; 10] = [51, 30, 60, 3, 33, 6, 36, 9, 39, 12];
/// The same code with w^2 in place of w^51, as the construction describes it.
pub const GF64_TEXT_MU_EXPONENTS: [i64; 10] = [2, 30, 60, 3, 33, 6, 36, 9, 39, 12];

pub fn canonical_field(id: u8) -> Result<Field> {
    match id {
        1 => Field::prime(29),
        2 => Field::with_order(27),
        3 => Field::with_order(64),
        _ => Err(Error::InvalidSpec("unknown reference code")),
    }
}

/// Reference code `id` over its canonical field.
pub fn reference(id: u8) -> Result<Reference> {
    let field = canonical_field(id)?;
    let spec = reference_spec(id, &field)?;
    let (code, schur) = match id {
        1 => ((16, 7, 10), (16, 14, 2)),
        2 => ((15, 7, 9), (15, 14, 1)),
        _ => ((13, 5, 9), (13, 10, 2)),
    };
    let p = |(n, k, d)| Params { n, k, d };
    Ok(Reference { id, spec, code: p(code), schur: p(schur) })
}

/// Reference code `id` rebuilt over `field`. For the extension fields the
/// recipe is read in terms of `field.primitive()`, so any modulus of the
/// right degree gives a code with the same construction.
pub fn reference_spec(id: u8, field: &Field) -> Result<CodeSpec> {
    let w = |e: i64| field.exp(e);
    let parts = match id {
        1 => {
            if field.order() != 29 {
                return Err(Error::FieldShape("reference code 1 lives in GF(29)"));
            }
            let h = Subgroup::new(field, 14)?;
            // multipliers ordered so the points ascend
            let points: [u32; 13] = [3, 4, 6, 8, 9, 10, 11, 13, 15, 16, 22, 24, 26];
            let (b, c) = (Elem::from_index(12), Elem::from_index(7));
            let mus = points
                .iter()
                .map(|&a| crate::construct::multiplier_for_point(field, b, c, Elem::from_index(a)))
                .collect::<Result<Vec<_>>>()?;
            SpecParts {
                k: 7,
                b,
                c,
                subgroup: h,
                mus,
                lambdas: alloc::vec![Elem::from_index(15), Elem::from_index(21)],
                extended: true,
                regime: Regime::Subgroup,
            }
        }
        2 => {
            if field.order() != 27 {
                return Err(Error::FieldShape("reference code 2 lives in GF(27)"));
            }
            SpecParts {
                k: 7,
                b: w(7),
                c: w(11),
                subgroup: Subgroup::new(field, 13)?,
                mus: GF27_MU_EXPONENTS.iter().map(|&e| w(e)).collect(),
                lambdas: alloc::vec![w(15), w(21)],
                extended: true,
                regime: Regime::Subgroup,
            }
        }
        3 => gf64_parts(field, &GF64_MU_EXPONENTS)?,
        _ => return Err(Error::InvalidSpec("unknown reference code")),
    };
    CodeSpec::new(field, parts)
}

/// The GF(64) code with the w^2 multiplier.
pub fn gf64_text_variant(field: &Field) -> Result<CodeSpec> {
    CodeSpec::new(field, gf64_parts(field, &GF64_TEXT_MU_EXPONENTS)?)
}

fn gf64_parts(field: &Field, mu_exponents: &[i64]) -> Result<SpecParts> {
    if field.order() != 64 {
        return Err(Error::FieldShape("reference code 3 lives in GF(64)"));
    }
    let w = |e: i64| field.exp(e);
    Ok(SpecParts {
        k: 5,
        b: w(10),
        c: w(21),
        subgroup: Subgroup::new(field, 21)?,
        mus: mu_exponents.iter().map(|&e| w(e)).collect(),
        lambdas: alloc::vec![w(13), w(25)],
        extended: true,
        regime: Regime::EvenCubics,
    })
}

const GF29_G: [[u32; 16]; 7] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 15, 9, 0],
    // printed with 1 at column 8, where the point is 15
    [3, 4, 6, 8, 9, 10, 11, 13, 15, 16, 22, 24, 26, 23, 10, 0],
    [9, 16, 7, 6, 23, 13, 5, 24, 22, 24, 20, 25, 9, 18, 14, 0],
    [27, 6, 13, 19, 4, 14, 26, 22, 11, 7, 5, 20, 2, 5, 6, 0],
    [23, 24, 20, 7, 7, 24, 25, 25, 20, 25, 23, 16, 23, 4, 11, 0],
    [11, 9, 4, 27, 5, 8, 14, 6, 10, 23, 13, 7, 18, 4, 24, 0],
    [4, 7, 24, 13, 16, 22, 9, 20, 5, 20, 25, 23, 4, 1, 25, 1],
];

/// Entries the published GF(29) generator prints differently: (row, col, printed).
pub const GF29_G_MISPRINTS: [(usize, usize, u32); 1] = [(1, 8, 1)];

const GF29_H_LEFT: [[u32; 7]; 9] = [
    [16, 24, 15, 24, 18, 12, 8],
    [2, 4, 9, 15, 25, 15, 18],
    [11, 15, 16, 27, 21, 5, 22],
    [4, 26, 26, 2, 12, 21, 26],
    [17, 3, 18, 19, 11, 9, 11],
    [19, 5, 21, 17, 5, 9, 12],
    [17, 15, 8, 6, 8, 1, 18],
    [2, 17, 23, 22, 7, 20, 5],
    [24, 15, 23, 18, 5, 17, 14],
];

const GF27_G: [&str; 7] = [
    "1 1 1 1 1 1 1 1 1 1 1 w^21 w^15 0",
    "0 1 w^5 w^22 w^15 w^25 w^10 w^8 w^19 w^3 2 w^18 w^9 0",
    "0 1 w^10 w^18 w^4 w^24 w^20 w^16 w^12 w^6 1 w^20 w^10 0",
    "0 1 w^15 w^14 w^19 w^23 w^4 w^24 w^5 w^9 2 w^11 1 0",
    "0 1 w^20 w^10 w^8 w^22 w^14 w^6 w^24 w^12 1 w^9 w^21 0",
    "0 1 w^25 w^6 w^23 w^21 w^24 w^14 w^17 w^15 2 w^23 w^4 0",
    "0 1 w^4 w^2 w^12 w^20 w^8 w^22 w^10 w^18 1 w^3 w 1",
];

const GF27_H_LEFT: [&str; 8] = [
    "w^25 w^2 w^24 w^15 w^21 w^25 w^17",
    "w^12 w w^9 w^15 w^10 w^7 w^11",
    "w^25 2 w^5 2 w^18 w^14 w^11",
    "w^6 2 w^20 w^17 w^8 w^16 w^17",
    "1 w^8 w^18 w^5 w^21 2 1",
    "w^21 w^8 w^17 w^16 w^8 w^3 w^22",
    "w^22 w^7 w^6 w^6 w^6 w^21 w^16",
    "w w^21 w^6 1 w^2 w^19 w^18",
];

const GF64_G: [&str; 5] = [
    "1 1 1 1 1 1 1 1 1 1 w^3 w^58 0",
    "w^25 w^29 w^7 w^13 w w^23 w^26 w^40 w^46 w^32 w^51 w^55 0",
    "w^50 w^58 w^14 w^26 w^2 w^46 w^52 w^17 w^29 w w^24 w^18 0",
    "w^12 w^24 w^21 w^39 w^3 w^6 w^15 w^57 w^12 w^33 w^52 w^55 0",
    "w^37 w^53 w^28 w^52 w^4 w^29 w^41 w^34 w^58 w^2 w^60 w^3 1",
];

const GF64_H_LEFT: [&str; 8] = [
    "w^25 w^40 w^4 w^11 w^60",
    "w^4 w^38 w^21 w^56 w^36",
    "w^35 w^34 w^40 w^59 w^23",
    "w^15 w^6 w^49 w^18 w^55",
    "1 w^46 w^22 w^22 w^46",
    "w^30 w^4 w^25 w^4 w^15",
    "w^22 w^40 w^57 w^23 w^61",
    "w^24 w^16 w^15 w^11 w^34",
];

fn check_order(id: u8, field: &Field) -> Result<()> {
    if field.order() != canonical_field(id)?.order() {
        return Err(Error::FieldShape("reference code lives in a field of another order"));
    }
    Ok(())
}

fn parse_rows(field: &Field, rows: &[&str]) -> Result<Vec<Vec<Elem>>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|t| field.parse_elem(t)).collect())
        .collect()
}

fn int_rows<const N: usize>(rows: &[[u32; N]]) -> Vec<Vec<Elem>> {
    rows.iter().map(|r| r.iter().map(|&x| Elem::from_index(x)).collect()).collect()
}

/// Published generator of reference code `id` over the canonical field,
/// with known misprints corrected.
pub fn printed_generator(id: u8) -> Result<Printed> {
    printed_generator_in(id, &canonical_field(id)?)
}

/// Published generator with its tokens read in `field`, which must have the
/// order of the canonical field.
pub fn printed_generator_in(id: u8, field: &Field) -> Result<Printed> {
    check_order(id, field)?;
    let (rows, columns): (Vec<Vec<Elem>>, Vec<usize>) = match id {
        1 => (int_rows(&GF29_G), (0..16).collect()),
        // the point w^18 (column 11) is missing from the printed matrix
        2 => (parse_rows(field, &GF27_G)?, (0..15).filter(|&c| c != 11).collect()),
        _ => (parse_rows(field, &GF64_G)?, (0..13).collect()),
    };
    Ok(Printed { matrix: Matrix::from_rows(field, &rows)?, columns })
}

/// Published parity-check matrix of reference code `id`: the printed left
/// block followed by -1 on the diagonal of the right block.
pub fn printed_parity(id: u8) -> Result<Matrix> {
    printed_parity_in(id, &canonical_field(id)?)
}

/// Published parity-check matrix with its tokens read in `field`.
pub fn printed_parity_in(id: u8, field: &Field) -> Result<Matrix> {
    check_order(id, field)?;
    let left = match id {
        1 => int_rows(&GF29_H_LEFT),
        2 => parse_rows(field, &GF27_H_LEFT)?,
        _ => parse_rows(field, &GF64_H_LEFT)?,
    };
    let k = left[0].len();
    let r = left.len();
    let minus_one = field.neg(Elem::ONE);
    Ok(Matrix::from_fn(field, r, k + r, |i, j| {
        if j < k {
            left[i][j]
        } else if j - k == i {
            minus_one
        } else {
            Elem::ZERO
        }
    }))
}
