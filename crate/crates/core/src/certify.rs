//! MDS decisions, minimum distance, Schur squares and parity-check matrices.
//!
//! Column index sets are 0-based and sorted. Witnesses are the
//! lexicographically first singular k-subset of columns.

use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::construct::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{det_in_place, Matrix};

/// Default cap on enumerated minors, codewords or column subsets.
pub const DEFAULT_BUDGET: u128 = 5_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsVerdict {
    pub is_mds: bool,
    /// Singular column set, empty when `is_mds`.
    pub witness: Vec<usize>,
}

impl MdsVerdict {
    fn from_witness(witness: Option<Vec<usize>>) -> MdsVerdict {
        match witness {
            Some(w) => MdsVerdict { is_mds: false, witness: w },
            None => MdsVerdict { is_mds: true, witness: Vec::new() },
        }
    }
}

/// Number of k x k minors the oracle inspects.
pub fn oracle_cost(g: &Matrix) -> u128 {
    binomial(g.cols(), g.rows())
}

fn check_oracle_shape(g: &Matrix) -> Result<()> {
    if g.rows() == 0 || g.rows() > g.cols() {
        return Err(Error::DimensionTooLarge { k: g.rows(), n: g.cols() });
    }
    Ok(())
}

/// Every k x k minor, in lexicographic column order. Returns the first
/// singular column set.
pub fn oracle_mds(g: &Matrix, budget: u128) -> Result<MdsVerdict> {
    check_oracle_shape(g)?;
    let needed = oracle_cost(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    for lead in 0..=g.cols() - g.rows() {
        if let Some(w) = first_singular_with_lead(g, lead)? {
            return Ok(MdsVerdict::from_witness(Some(w)));
        }
    }
    Ok(MdsVerdict::from_witness(None))
}

/// The slice of the oracle whose column sets start at `lead`. Slices are
/// disjoint; the overall witness is the one from the smallest failing lead.
pub fn first_singular_with_lead(g: &Matrix, lead: usize) -> Result<Option<Vec<usize>>> {
    check_oracle_shape(g)?;
    let k = g.rows();
    let n = g.cols();
    if lead >= n {
        return Err(Error::IndexOutOfRange { index: lead, bound: n });
    }
    let f = g.field();
    let mut buf = vec![Elem::ZERO; k * k];
    for rest in (lead + 1..n).combinations(k - 1) {
        let cols: Vec<usize> = core::iter::once(lead).chain(rest).collect();
        fill_minor(g, &cols, &mut buf);
        if det_in_place(f, &mut buf, k).is_zero() {
            return Ok(Some(cols));
        }
    }
    Ok(None)
}

fn fill_minor(g: &Matrix, cols: &[usize], buf: &mut [Elem]) {
    let k = cols.len();
    for r in 0..k {
        for (j, &c) in cols.iter().enumerate() {
            buf[r * k + j] = g.get(r, c);
        }
    }
}

/// Outcome of the subset criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub is_mds: bool,
    /// Column set of the singular minor implied by the first violation.
    pub witness: Vec<usize>,
    /// Violating point subset and the twisted column it pairs with.
    pub violation: Option<Violation>,
    /// True when decided by subgroup membership alone.
    pub fast_path: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub twist: usize,
    pub points: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionPath {
    /// Use subgroup membership when it settles the question.
    Auto,
    /// Always enumerate subsets.
    Enumerate,
}

pub fn criterion_one(spec: &CodeSpec, path: CriterionPath) -> Result<CriterionVerdict> {
    if spec.lambdas().len() != 1 {
        return Err(Error::WrongArity { expected: 1, found: spec.lambdas().len() });
    }
    criterion(spec, path)
}

/// Conditions on subsets meeting one twisted column. Subsets meeting both
/// twisted columns reduce, by subtracting one from the other, to a
/// Vandermonde minor on points together with b and c scaled by λ1 - λ2, so
/// they are nonsingular whenever the spec is valid.
pub fn criterion_two(spec: &CodeSpec, path: CriterionPath) -> Result<CriterionVerdict> {
    if spec.lambdas().len() != 2 {
        return Err(Error::WrongArity { expected: 2, found: spec.lambdas().len() });
    }
    if spec.lambdas()[0] == spec.lambdas()[1] {
        return Err(Error::Inconsistent("twist scalars coincide"));
    }
    criterion(spec, path)
}

/// Either criterion, by arity.
pub fn criterion(spec: &CodeSpec, path: CriterionPath) -> Result<CriterionVerdict> {
    if path == CriterionPath::Auto && subgroup_settles(spec)? {
        return Ok(CriterionVerdict { is_mds: true, witness: Vec::new(), violation: None, fast_path: true });
    }
    let f = spec.field();
    let k = spec.k();
    let m = spec.m();
    let anchor_b: Vec<Elem> = spec.points().iter().map(|&a| f.sub(spec.b(), a)).collect();
    let anchor_c: Vec<Elem> = spec.points().iter().map(|&a| f.sub(spec.c(), a)).collect();

    let mut sizes = vec![k - 1];
    if spec.extended() && k >= 2 {
        sizes.push(k - 2);
    }
    let mut best: Option<(Vec<usize>, Violation)> = None;
    for (j, &lambda) in spec.lambdas().iter().enumerate() {
        for &s in &sizes {
            if s > m {
                continue;
            }
            let hit = (0..m).combinations(s).find(|subset| {
                let pb = f.product(subset.iter().map(|&i| anchor_b[i]));
                let pc = f.product(subset.iter().map(|&i| anchor_c[i]));
                f.sub(pb, f.mul(lambda, pc)).is_zero()
            });
            let Some(subset) = hit else { continue };
            let mut cols = subset.clone();
            cols.push(spec.twist_column(j));
            if s + 2 == k {
                cols.push(spec.extension_column().expect("extended"));
            }
            if best.as_ref().map_or(true, |(b, _)| cols < *b) {
                best = Some((cols, Violation { twist: j, points: subset }));
            }
        }
    }
    Ok(match best {
        Some((witness, v)) => CriterionVerdict { is_mds: false, witness, violation: Some(v), fast_path: false },
        None => CriterionVerdict { is_mds: true, witness: Vec::new(), violation: None, fast_path: false },
    })
}

/// All multipliers in H except at most one, which lies in a coset xH, and
/// every twist scalar outside H and xH: then every subset product lies in
/// H or xH and no twist scalar can equal it.
fn subgroup_settles(spec: &CodeSpec) -> Result<bool> {
    let h = spec.subgroup();
    let mut outside = spec.mus().iter().filter_map(|&mu| match h.contains(mu) {
        Ok(true) => None,
        other => Some(other.map(|_| mu)),
    });
    let stray = outside.next().transpose()?;
    if outside.next().is_some() {
        return Ok(false);
    }
    let stray_coset = stray.map(|x| h.coset_of(x)).transpose()?;
    for &lambda in spec.lambdas() {
        if lambda.is_zero() {
            continue;
        }
        let coset = h.coset_of(lambda)?;
        if coset == 0 || Some(coset) == stray_coset {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How a minimum distance was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceRoute {
    /// Every k columns independent, so d = n - k + 1.
    Singleton,
    /// Minimum weight over all projective messages.
    Codewords,
    /// Smallest dependent set of parity-check columns.
    DualColumns,
}

fn require_full_rank(g: &Matrix) -> Result<()> {
    let rank = g.rank();
    if rank < g.rows() {
        return Err(Error::RankDeficient { rank, rows: g.rows() });
    }
    Ok(())
}

/// Exact minimum distance. Tries the MDS shortcut first, then whichever
/// exhaustive route is cheaper.
pub fn min_distance(g: &Matrix, budget: u128) -> Result<(usize, DistanceRoute)> {
    require_full_rank(g)?;
    let (k, n) = g.shape();
    if oracle_cost(g) <= budget && oracle_mds(g, budget)?.is_mds {
        return Ok((n - k + 1, DistanceRoute::Singleton));
    }
    if codeword_cost(g) <= dual_cost(g) {
        Ok((min_distance_by_codewords(g, budget)?, DistanceRoute::Codewords))
    } else {
        Ok((min_distance_by_dual(g, budget)?, DistanceRoute::DualColumns))
    }
}

/// (q^k - 1) / (q - 1)
pub fn codeword_cost(g: &Matrix) -> u128 {
    let q = g.field().order() as u128;
    let mut total = 0u128;
    let mut pow = 1u128;
    for _ in 0..g.rows() {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Column subsets of size up to n - k + 1.
pub fn dual_cost(g: &Matrix) -> u128 {
    let (k, n) = g.shape();
    (1..=n - k + 1).map(|w| binomial(n, w)).fold(0u128, u128::saturating_add)
}

/// Minimum weight over messages whose first nonzero coordinate is 1.
pub fn min_distance_by_codewords(g: &Matrix, budget: u128) -> Result<usize> {
    require_full_rank(g)?;
    let needed = codeword_cost(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f = g.field();
    let q = f.order();
    let (k, n) = g.shape();
    let mut best = n;
    let mut codeword = vec![Elem::ZERO; n];
    for lead in 0..k {
        let free = k - lead - 1;
        let mut digits = vec![0u32; free];
        loop {
            codeword.copy_from_slice(g.row(lead));
            for (i, &d) in digits.iter().enumerate() {
                if d != 0 {
                    let x = Elem::from_index(d);
                    for (slot, &y) in codeword.iter_mut().zip(g.row(lead + 1 + i)) {
                        *slot = f.add(*slot, f.mul(x, y));
                    }
                }
            }
            best = best.min(codeword.iter().filter(|x| !x.is_zero()).count());
            if !advance(&mut digits, q) {
                break;
            }
        }
    }
    Ok(best)
}

fn advance(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// d is the least w such that some w columns of a parity-check matrix are
/// dependent.
pub fn min_distance_by_dual(g: &Matrix, budget: u128) -> Result<usize> {
    require_full_rank(g)?;
    let needed = dual_cost(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let h = g.nullspace();
    let n = g.cols();
    let all_rows: Vec<usize> = (0..h.rows()).collect();
    for w in 1..=n {
        for cols in (0..n).combinations(w) {
            if h.submatrix(&all_rows, &cols)?.rank() < w {
                return Ok(w);
            }
        }
    }
    Err(Error::Inconsistent("no dependent column set in the parity-check matrix"))
}

/// Row basis of the Schur square: the span of all coordinatewise products
/// of pairs of rows. Its row count is dim(C^2).
pub fn schur_square(g: &Matrix) -> Matrix {
    let f = g.field();
    let (k, n) = g.shape();
    let mut rows = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            rows.push(
                g.row(i).iter().zip(g.row(j)).map(|(&x, &y)| f.mul(x, y)).collect::<Vec<_>>(),
            );
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(f, 0, n);
    }
    Matrix::from_rows(f, &rows).expect("rows share a length").row_basis()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonGrs {
    /// dim(C^2) differs from 2k - 1, so C is not equivalent to an (extended) RS code.
    NotEquivalent,
    /// dim(C^2) = 2k - 1; the test says nothing.
    Inconclusive,
}

/// Schur-dimension test against (extended) Reed-Solomon codes. Sound only
/// for 3 <= k <= n/2.
pub fn non_grs_certificate(g: &Matrix) -> Result<(NonGrs, usize)> {
    let (k, n) = g.shape();
    if k < 3 || 2 * k > n {
        return Err(Error::KOutOfCertificateRange { k, n });
    }
    require_full_rank(g)?;
    let dim = schur_square(g).rows();
    let verdict = if dim == 2 * k - 1 { NonGrs::Inconclusive } else { NonGrs::NotEquivalent };
    Ok((verdict, dim))
}

/// Δ_l(x) = ∏ (a_i - x) over the first k points, skipping index l (0-based).
pub fn delta_eval(field: &Field, points: &[Elem], k: usize, l: usize, x: Elem) -> Result<Elem> {
    if k > points.len() {
        return Err(Error::IndexOutOfRange { index: k, bound: points.len() + 1 });
    }
    if l >= k {
        return Err(Error::IndexOutOfRange { index: l, bound: k });
    }
    Ok(field.product(points[..k].iter().enumerate().filter(|&(i, _)| i != l).map(|(_, &a)| field.sub(a, x))))
}

/// Closed-form parity-check matrix of a two-column code.
///
/// Column l < k of each row is a Lagrange coefficient over the first k
/// points; the remaining columns carry -1 on the row's own position:
/// point rows Δ_l(a_r)/Δ_l(a_l), twisted rows (Δ_l(b) - λ Δ_l(c))/Δ_l(a_l),
/// and for the extended code a last row (-1)^(k+1)/Δ_l(a_l).
pub fn parity_closed_form(spec: &CodeSpec) -> Result<Matrix> {
    if spec.lambdas().len() != 2 {
        return Err(Error::WrongArity { expected: 2, found: spec.lambdas().len() });
    }
    let (k, n, m) = (spec.k(), spec.n(), spec.m());
    if m < k {
        return Err(Error::InvalidSpec("closed form needs at least k evaluation points"));
    }
    if spec.extended() && 2 * k > n {
        return Err(Error::KOutOfCertificateRange { k, n });
    }
    let f = spec.field();
    let pts = spec.points();
    let delta = |l: usize, x: Elem| delta_eval(f, pts, k, l, x).expect("l < k <= m");
    let denominators: Vec<Elem> = (0..k)
        .map(|l| f.inv(delta(l, pts[l])))
        .collect::<Result<Vec<_>>>()?;

    let mut h = Matrix::zeros(f, n - k, n);
    let minus_one = f.neg(Elem::ONE);
    let mut row = 0;
    for &a in &pts[k..] {
        for (l, &d) in denominators.iter().enumerate() {
            h.set(row, l, f.mul(delta(l, a), d));
        }
        row += 1;
    }
    for &lambda in spec.lambdas() {
        for (l, &d) in denominators.iter().enumerate() {
            let num = f.sub(delta(l, spec.b()), f.mul(lambda, delta(l, spec.c())));
            h.set(row, l, f.mul(num, d));
        }
        row += 1;
    }
    if spec.extended() {
        let sign = if (k + 1) % 2 == 0 { Elem::ONE } else { minus_one };
        for (l, &d) in denominators.iter().enumerate() {
            h.set(row, l, f.mul(sign, d));
        }
        row += 1;
    }
    debug_assert_eq!(row, n - k);
    for r in 0..n - k {
        h.set(r, k + r, minus_one);
    }
    if !h.mul(&spec.generator().transpose())?.is_zero() {
        return Err(Error::Inconsistent("closed-form parity check does not annihilate G"));
    }
    Ok(h)
}

/// Parity-check matrix by elimination: a basis of {v : G v^T = 0}.
pub fn dual_oracle(g: &Matrix) -> Result<Matrix> {
    require_full_rank(g)?;
    Ok(g.nullspace())
}

/// Which MDS decision procedure to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Oracle,
    Criterion,
    /// Run both and fail if they disagree.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub is_mds: bool,
    pub witness: Vec<usize>,
    pub schur_dim: usize,
    pub schur_distance: Option<usize>,
    /// None when k lies outside 3..=n/2.
    pub non_grs: Option<NonGrs>,
    /// None when no closed-form parity check applies.
    pub dual_ok: Option<bool>,
    /// True when the verdict rests on the criterion alone.
    pub criterion_only: bool,
}

/// Full report for a bare generator matrix. Only the oracle applies.
pub fn certify_matrix(
    g: &Matrix,
    budget: u128,
    oracle: impl Fn(&Matrix, u128) -> Result<MdsVerdict>,
) -> Result<CertificateReport> {
    require_full_rank(g)?;
    let verdict = oracle(g, budget)?;
    finish_report(g, verdict, false, None, budget)
}

/// Full report for a spec. `oracle` decides the minors; pass
/// [`oracle_mds`] or a parallel equivalent.
pub fn certify_spec(
    spec: &CodeSpec,
    mode: Mode,
    budget: u128,
    oracle: impl Fn(&Matrix, u128) -> Result<MdsVerdict>,
) -> Result<CertificateReport> {
    let g = spec.generator();
    let verdict = match mode {
        Mode::Oracle => oracle(&g, budget)?,
        Mode::Criterion => {
            let c = criterion(spec, CriterionPath::Auto)?;
            MdsVerdict { is_mds: c.is_mds, witness: c.witness }
        }
        Mode::Both => {
            let o = oracle(&g, budget)?;
            let c = criterion(spec, CriterionPath::Auto)?;
            if o.is_mds != c.is_mds || o.witness != c.witness {
                return Err(Error::Inconsistent("criterion and oracle disagree"));
            }
            o
        }
    };
    let dual_ok = if spec.lambdas().len() == 2 {
        match parity_closed_form(spec) {
            Ok(h) => Some(h.rows() == g.cols() - g.rows() && crate::matrix::row_space_equal(&h, &dual_oracle(&g)?)?),
            Err(Error::Inconsistent(_)) => Some(false),
            Err(_) => None,
        }
    } else {
        None
    };
    finish_report(&g, verdict, mode == Mode::Criterion, dual_ok, budget)
}

fn finish_report(
    g: &Matrix,
    verdict: MdsVerdict,
    criterion_only: bool,
    dual_ok: Option<bool>,
    budget: u128,
) -> Result<CertificateReport> {
    let (k, n) = g.shape();
    let d = if verdict.is_mds {
        Some(n - k + 1)
    } else {
        exhaustive_distance(g, budget)
    };
    let schur = schur_square(g);
    let schur_distance = if schur.rows() == 0 {
        None
    } else {
        min_distance(&schur, budget).ok().map(|(d, _)| d)
    };
    let non_grs = match non_grs_certificate(g) {
        Ok((v, _)) => Some(v),
        Err(Error::KOutOfCertificateRange { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CertificateReport {
        n,
        k,
        d,
        is_mds: verdict.is_mds,
        witness: verdict.witness,
        schur_dim: schur.rows(),
        schur_distance,
        non_grs,
        dual_ok,
        criterion_only,
    })
}

fn exhaustive_distance(g: &Matrix, budget: u128) -> Option<usize> {
    if codeword_cost(g) <= dual_cost(g) {
        min_distance_by_codewords(g, budget).ok()
    } else {
        min_distance_by_dual(g, budget).ok()
    }
}
