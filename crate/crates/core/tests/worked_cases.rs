mod common;

use coltrs_core::certify::{
    certify_spec, min_distance, min_distance_by_codewords, non_grs_certificate, oracle_mds, schur_square, Mode,
    NonGrs, DEFAULT_BUDGET,
};
use coltrs_core::construct::{gen_rs, Family, Shape};
use coltrs_core::reference::{canonical_field, printed_generator, reference, reference_spec};
use coltrs_core::{Elem, Field};

#[test]
fn rs_over_gf13_is_inconclusive() {
    let f = Field::prime(13).unwrap();
    let pts: Vec<Elem> = (0..10).map(Elem::from_index).collect();
    let g = gen_rs(&f, &pts, 4, false).unwrap();
    assert_eq!(non_grs_certificate(&g).unwrap(), (NonGrs::Inconclusive, 7));
}

#[test]
fn rs_over_gf11_meets_singleton() {
    let f = Field::prime(11).unwrap();
    let pts: Vec<Elem> = (1..=8).map(Elem::from_index).collect();
    let g = gen_rs(&f, &pts, 3, false).unwrap();
    assert_eq!(min_distance(&g, DEFAULT_BUDGET).unwrap().0, 6);
}

#[test]
fn gf7_two_column_code_by_codeword_sweep() {
    let g = common::gf7_n6_k3().generator();
    assert_eq!(min_distance_by_codewords(&g, DEFAULT_BUDGET).unwrap(), 4);
    assert!(oracle_mds(&g, DEFAULT_BUDGET).unwrap().is_mds);
}

#[test]
fn dimension_one_schur_square() {
    let f = Field::prime(7).unwrap();
    let pts: Vec<Elem> = (0..5).map(Elem::from_index).collect();
    assert_eq!(schur_square(&gen_rs(&f, &pts, 1, true).unwrap()).rows(), 1);
}

#[test]
fn reference_reports() {
    for (id, n, k, d, schur) in [(1u8, 16, 7, 10, 14), (2, 15, 7, 9, 14), (3, 13, 5, 9, 10)] {
        let field = canonical_field(id).unwrap();
        let spec = reference_spec(id, &field).unwrap();
        let report = certify_spec(&spec, Mode::Both, DEFAULT_BUDGET, oracle_mds).unwrap();
        assert_eq!((report.n, report.k, report.d, report.schur_dim), (n, k, Some(d), schur), "reference {id}");
        assert!(report.is_mds);
        assert_eq!(report.non_grs, Some(NonGrs::NotEquivalent));
        assert_eq!(reference(id).unwrap().code.n, n);
    }
}

#[test]
fn printed_gf29_generator_has_full_rank() {
    assert_eq!(printed_generator(1).unwrap().matrix.rank(), 7);
}

#[test]
fn maximal_family_lengths_at_gf29() {
    let f = Field::prime(29).unwrap();
    let shapes = [Shape::OneColumn, Shape::OneColumnExtended, Shape::TwoColumn, Shape::TwoColumnExtended];
    let lengths: Vec<usize> = shapes
        .iter()
        .map(|&s| coltrs_core::construct::corollary_construct(&f, 4, Family::OddSquares, s).unwrap().n())
        .collect();
    assert_eq!(lengths, [14, 15, 15, 16]);
}
