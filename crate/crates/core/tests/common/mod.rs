#![allow(dead_code)]

use coltrs_core::certify::{criterion, CriterionPath};
use coltrs_core::construct::{CodeSpec, Regime, SpecParts};
use coltrs_core::{Elem, Field, Subgroup};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

pub const SUITE_ORDERS: [u32; 8] = [7, 9, 11, 13, 16, 25, 27, 29];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Multipliers in H, twist scalars outside H.
    Valid,
    /// One twist scalar equals a product of multipliers.
    Forced,
    /// Multipliers and twist scalars drawn without constraint.
    Arbitrary,
}

pub fn e(i: u32) -> Elem {
    Elem::from_index(i)
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (1..n).filter(|d| n % d == 0).collect()
}

fn distinct_sample<R: Rng>(rng: &mut R, pool: &[Elem], count: usize) -> Vec<Elem> {
    pool.choose_multiple(rng, count).copied().collect()
}

/// A random spec of the given kind with n <= `max_n` and k <= `max_k`.
pub fn random_spec<R: Rng>(rng: &mut R, field: &Field, kind: Kind, max_n: usize, max_k: usize) -> CodeSpec {
    loop {
        if let Some(spec) = try_random_spec(rng, field, kind, max_n, max_k) {
            return spec;
        }
    }
}

fn try_random_spec<R: Rng>(rng: &mut R, field: &Field, kind: Kind, max_n: usize, max_k: usize) -> Option<CodeSpec> {
    let q = field.order() as usize;
    let twists = rng.gen_range(1..=2);
    let extended = rng.gen_bool(0.5);
    let room = max_n - twists - usize::from(extended);
    let nonzero: Vec<Elem> = field.elements().skip(1).collect();

    let (subgroup, mus) = match kind {
        Kind::Valid => {
            let ds: Vec<usize> = proper_divisors(q - 1).into_iter().filter(|&d| d >= 2).collect();
            let d = *ds.choose(rng)?;
            let h = Subgroup::new(field, d).ok()?;
            let m = rng.gen_range(1..=room.min(d - 1));
            let mus = distinct_sample(rng, &h.elements()[1..], m);
            (h, mus)
        }
        Kind::Forced | Kind::Arbitrary => {
            let d = *proper_divisors(q - 1).choose(rng)?;
            let h = Subgroup::new(field, d).ok()?;
            let pool: Vec<Elem> = nonzero.iter().copied().filter(|&x| x != Elem::ONE).collect();
            let m = rng.gen_range(1..=room.min(pool.len()));
            (h.clone(), distinct_sample(rng, &pool, m))
        }
    };
    let n = mus.len() + twists + usize::from(extended);
    let k = rng.gen_range(1..=n.min(max_k));

    let lambdas: Vec<Elem> = match kind {
        Kind::Valid => {
            let outside: Vec<Elem> = subgroup.non_members().collect();
            distinct_sample(rng, &outside, twists)
        }
        Kind::Arbitrary => {
            let all: Vec<Elem> = field.elements().collect();
            distinct_sample(rng, &all, twists)
        }
        Kind::Forced => {
            let sizes: Vec<usize> = [k.checked_sub(1), if extended { k.checked_sub(2) } else { None }]
                .into_iter()
                .flatten()
                .filter(|&s| s <= mus.len())
                .collect();
            let s = *sizes.choose(rng)?;
            let chosen = distinct_sample(rng, &mus, s);
            let forced = field.product(chosen);
            let mut lambdas = vec![forced];
            if twists == 2 {
                let other = *field.elements().collect::<Vec<_>>().choose(rng)?;
                if other == forced {
                    return None;
                }
                lambdas.push(other);
                lambdas.shuffle(rng);
            }
            lambdas
        }
    };
    let all: Vec<Elem> = field.elements().collect();
    let bc = distinct_sample(rng, &all, 2);
    let regime = Regime::Subgroup;
    CodeSpec::new(
        field,
        SpecParts { k, b: bc[0], c: bc[1], subgroup, mus, lambdas, extended, regime },
    )
    .ok()
}

/// Two-column spec over GF(7) with n = 6, k = 3. The pairwise products of
/// the multipliers {2, 3, 4, 5} are {1, 3, 5, 6}, so twist scalars 2 and 4
/// satisfy the criterion.
pub fn gf7_n6_k3() -> CodeSpec {
    let f = Field::prime(7).unwrap();
    CodeSpec::new(
        &f,
        SpecParts {
            k: 3,
            b: e(3),
            c: e(1),
            subgroup: Subgroup::new(&f, 1).unwrap(),
            mus: vec![e(2), e(3), e(4), e(5)],
            lambdas: vec![e(2), e(4)],
            extended: false,
            regime: Regime::Subgroup,
        },
    )
    .unwrap()
}

/// First two-column plain spec over GF(11) with n = 8, k = 4, b = 2, c = 1
/// that passes the criterion, searching multiplier sets and twist pairs in
/// lexicographic index order.
pub fn gf11_n8_k4() -> CodeSpec {
    let f = Field::prime(11).unwrap();
    let pool: Vec<Elem> = (2..11).map(e).collect();
    for mus in pool.iter().copied().combinations(6) {
        for pair in (0..11).map(e).combinations(2) {
            let spec = CodeSpec::new(
                &f,
                SpecParts {
                    k: 4,
                    b: e(2),
                    c: e(1),
                    subgroup: Subgroup::new(&f, 1).unwrap(),
                    mus: mus.clone(),
                    lambdas: pair,
                    extended: false,
                    regime: Regime::Subgroup,
                },
            );
            if let Ok(spec) = spec {
                if criterion(&spec, CriterionPath::Enumerate).unwrap().is_mds {
                    return spec;
                }
            }
        }
    }
    panic!("no MDS two-column spec over GF(11) with n = 8");
}
