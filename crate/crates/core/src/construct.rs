//! Generator matrices for Reed-Solomon codes and their column twisted
//! variants, and the recipes that produce them.
//!
//! Column layout of every twisted generator, left to right:
//! the m evaluation points, one or two twisted columns `(b^i - λ c^i)`,
//! then the extension column `(0, ..., 0, 1)^T` when extended.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::subgroup::Subgroup;

/// Which MDS argument the multipliers were chosen under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Every multiplier lies in H and every twist scalar lies outside it.
    Subgroup,
    /// H is the cubes of GF(4^m); one multiplier is w^2 and the twist scalars lie in wH.
    EvenCubics,
}

/// The four twisted code shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    OneColumn,
    OneColumnExtended,
    TwoColumn,
    TwoColumnExtended,
}

impl Shape {
    pub fn new(twists: usize, extended: bool) -> Result<Shape> {
        match (twists, extended) {
            (1, false) => Ok(Shape::OneColumn),
            (1, true) => Ok(Shape::OneColumnExtended),
            (2, false) => Ok(Shape::TwoColumn),
            (2, true) => Ok(Shape::TwoColumnExtended),
            (t, _) => Err(Error::WrongArity { expected: 2, found: t }),
        }
    }

    pub fn twists(self) -> usize {
        match self {
            Shape::OneColumn | Shape::OneColumnExtended => 1,
            Shape::TwoColumn | Shape::TwoColumnExtended => 2,
        }
    }

    pub fn extended(self) -> bool {
        matches!(self, Shape::OneColumnExtended | Shape::TwoColumnExtended)
    }

    /// Code length for `points` evaluation points.
    pub fn length(self, points: usize) -> usize {
        points + self.twists() + usize::from(self.extended())
    }
}

/// Multiplicative family used by [`corollary_construct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Odd q, H = squares.
    OddSquares,
    /// q = 4^m, H = cubes, plus the multiplier w^2.
    EvenCubics,
}

/// a = (b - μc) / (1 - μ).
pub fn eval_point(field: &Field, b: Elem, c: Elem, mu: Elem) -> Result<Elem> {
    if mu == Elem::ONE {
        return Err(Error::InvalidSpec("multiplier equals 1"));
    }
    field.div(field.sub(b, field.mul(mu, c)), field.sub(Elem::ONE, mu))
}

/// The multiplier μ = (b - a) / (c - a) that places a point at `a`.
pub fn multiplier_for_point(field: &Field, b: Elem, c: Elem, a: Elem) -> Result<Elem> {
    if a == b || a == c {
        return Err(Error::InvalidSpec("point coincides with b or c"));
    }
    field.div(field.sub(b, a), field.sub(c, a))
}

/// Evaluation points for a list of multipliers. Checks that the outputs are
/// pairwise distinct and avoid `b` and `c`.
pub fn eval_points(field: &Field, b: Elem, c: Elem, mus: &[Elem]) -> Result<Vec<Elem>> {
    field.check(b)?;
    field.check(c)?;
    if b == c {
        return Err(Error::InvalidSpec("b equals c"));
    }
    for (i, &mu) in mus.iter().enumerate() {
        field.check(mu)?;
        if mu.is_zero() {
            return Err(Error::PointCollidesWithAnchor(i));
        }
        if mus[..i].contains(&mu) {
            return Err(Error::InvalidSpec("duplicate multiplier"));
        }
    }
    let points = mus
        .iter()
        .map(|&mu| eval_point(field, b, c, mu))
        .collect::<Result<Vec<_>>>()?;
    check_points(&points, &[b, c])?;
    Ok(points)
}

fn check_points(points: &[Elem], anchors: &[Elem]) -> Result<()> {
    for (i, a) in points.iter().enumerate() {
        if let Some(j) = points[..i].iter().position(|x| x == a) {
            return Err(Error::DuplicatePoint(j, i));
        }
        if anchors.contains(a) {
            return Err(Error::PointCollidesWithAnchor(i));
        }
    }
    Ok(())
}

/// k x n Vandermonde generator (row i holds the i-th powers), with the
/// extension column appended when `extended`.
pub fn gen_rs(field: &Field, points: &[Elem], k: usize, extended: bool) -> Result<Matrix> {
    for &a in points {
        field.check(a)?;
    }
    check_points(points, &[])?;
    let n = points.len() + usize::from(extended);
    if k == 0 || k > n {
        return Err(Error::DimensionTooLarge { k, n });
    }
    Ok(Matrix::from_fn(field, k, n, |r, c| match points.get(c) {
        Some(&a) => field.pow(a, r as u64),
        None => extension_entry(r, k),
    }))
}

fn extension_entry(row: usize, k: usize) -> Elem {
    if row + 1 == k {
        Elem::ONE
    } else {
        Elem::ZERO
    }
}

/// Full recipe for a column twisted Reed-Solomon code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    k: usize,
    b: Elem,
    c: Elem,
    subgroup: Subgroup,
    mus: Vec<Elem>,
    lambdas: Vec<Elem>,
    extended: bool,
    regime: Regime,
    points: Vec<Elem>,
}

/// Inputs to [`CodeSpec::new`].
#[derive(Clone, Debug)]
pub struct SpecParts {
    pub k: usize,
    pub b: Elem,
    pub c: Elem,
    pub subgroup: Subgroup,
    pub mus: Vec<Elem>,
    pub lambdas: Vec<Elem>,
    pub extended: bool,
    pub regime: Regime,
}

impl CodeSpec {
    /// Validates the recipe and derives the evaluation points. Membership of
    /// the multipliers and twist scalars in H is not enforced here; the
    /// certify module decides what the choice implies.
    pub fn new(field: &Field, parts: SpecParts) -> Result<CodeSpec> {
        let SpecParts { k, b, c, subgroup, mus, lambdas, extended, regime } = parts;
        if subgroup.field() != field {
            return Err(Error::MixedFields);
        }
        if lambdas.is_empty() || lambdas.len() > 2 {
            return Err(Error::WrongArity { expected: 2, found: lambdas.len() });
        }
        for &l in &lambdas {
            field.check(l)?;
        }
        if lambdas.len() == 2 && lambdas[0] == lambdas[1] {
            return Err(Error::InvalidSpec("twist scalars coincide"));
        }
        let points = eval_points(field, b, c, &mus)?;
        let shape = Shape::new(lambdas.len(), extended)?;
        let n = shape.length(points.len());
        if k == 0 || k > n {
            return Err(Error::DimensionTooLarge { k, n });
        }
        Ok(CodeSpec { field: field.clone(), k, b, c, subgroup, mus, lambdas, extended, regime, points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn c(&self) -> Elem {
        self.c
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn mus(&self) -> &[Elem] {
        &self.mus
    }

    pub fn lambdas(&self) -> &[Elem] {
        &self.lambdas
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.lambdas.len(), self.extended).expect("validated arity")
    }

    /// Number of evaluation points.
    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn n(&self) -> usize {
        self.shape().length(self.m())
    }

    /// Column index of the j-th twisted column.
    pub fn twist_column(&self, j: usize) -> usize {
        assert!(j < self.lambdas.len());
        self.m() + j
    }

    pub fn extension_column(&self) -> Option<usize> {
        self.extended.then(|| self.m() + self.lambdas.len())
    }

    /// Same recipe with different twist scalars.
    pub fn with_lambdas(&self, lambdas: Vec<Elem>) -> Result<CodeSpec> {
        CodeSpec::new(&self.field, SpecParts { lambdas, ..self.parts() })
    }

    /// Same recipe with a different dimension.
    pub fn with_k(&self, k: usize) -> Result<CodeSpec> {
        CodeSpec::new(&self.field, SpecParts { k, ..self.parts() })
    }

    pub fn parts(&self) -> SpecParts {
        SpecParts {
            k: self.k,
            b: self.b,
            c: self.c,
            subgroup: self.subgroup.clone(),
            mus: self.mus.clone(),
            lambdas: self.lambdas.clone(),
            extended: self.extended,
            regime: self.regime,
        }
    }

    /// The generator matrix for this spec's shape.
    pub fn generator(&self) -> Matrix {
        let f = &self.field;
        let m = self.m();
        let t = self.lambdas.len();
        Matrix::from_fn(f, self.k, self.n(), |r, col| {
            if col < m {
                f.pow(self.points[col], r as u64)
            } else if col < m + t {
                twisted_entry(f, self.b, self.c, self.lambdas[col - m], r)
            } else {
                extension_entry(r, self.k)
            }
        })
    }

    /// The Reed-Solomon generator on the same points, with no twisted columns.
    pub fn rs_baseline(&self) -> Matrix {
        gen_rs(&self.field, &self.points, self.k, false).expect("validated points")
    }
}

/// b^i - λ c^i
fn twisted_entry(f: &Field, b: Elem, c: Elem, lambda: Elem, i: usize) -> Elem {
    f.sub(f.pow(b, i as u64), f.mul(lambda, f.pow(c, i as u64)))
}

/// Generator of a one-column code, plain or extended.
pub fn gen_one_column(spec: &CodeSpec) -> Result<Matrix> {
    if spec.lambdas.len() != 1 {
        return Err(Error::WrongArity { expected: 1, found: spec.lambdas.len() });
    }
    Ok(spec.generator())
}

/// Generator of a two-column code, plain or extended.
pub fn gen_two_column(spec: &CodeSpec) -> Result<Matrix> {
    if spec.lambdas.len() != 2 {
        return Err(Error::WrongArity { expected: 2, found: spec.lambdas.len() });
    }
    Ok(spec.generator())
}

/// Optional overrides for [`five_step`]. Anything left `None` is filled in
/// deterministically.
#[derive(Clone, Debug, Default)]
pub struct FiveStepChoices {
    pub subgroup_order: Option<usize>,
    pub b: Option<Elem>,
    pub c: Option<Elem>,
    pub mus: Option<Vec<Elem>>,
    pub lambdas: [Option<Elem>; 2],
    pub extended: Option<bool>,
}

/// Two-column construction of length `n` and dimension `k`.
///
/// Defaults: H is the largest proper subgroup, b = w and c = 1 (swapped if
/// one of them is forced to the other's default), the multipliers are the
/// first m elements of H \ {1} in exponent order arranged so the points
/// ascend by index, and the twist scalars are the first non-members of H in
/// exponent order. The plain shape is preferred when H is large enough.
pub fn five_step(field: &Field, n: usize, k: usize, choices: &FiveStepChoices) -> Result<CodeSpec> {
    if k < 3 || 2 * k > n {
        return Err(Error::KOutOfCertificateRange { k, n });
    }
    let subgroup = match choices.subgroup_order {
        Some(d) => Subgroup::new(field, d)?,
        None => largest_proper_subgroup(field)?,
    };
    if !subgroup.is_proper() {
        return Err(Error::InvalidSpec("H must be a proper subgroup"));
    }
    let available = subgroup.order() - 1;

    let (m, extended) = match (&choices.mus, choices.extended) {
        (Some(mus), ext) => {
            let m = mus.len();
            let ext = match (ext, n.checked_sub(m + 2)) {
                (Some(e), Some(extra)) if extra == usize::from(e) => e,
                (None, Some(0)) => false,
                (None, Some(1)) => true,
                _ => return Err(Error::InvalidSpec("n does not match the multiplier count")),
            };
            (m, ext)
        }
        (None, Some(ext)) => (n.saturating_sub(2 + usize::from(ext)), ext),
        (None, None) => {
            let plain = n.saturating_sub(2);
            if plain <= available {
                (plain, false)
            } else {
                (n.saturating_sub(3), true)
            }
        }
    };
    if m > available {
        return Err(Error::NoSubgroupLargeEnough { needed: m });
    }

    let w = field.primitive();
    let (b, c) = match (choices.b, choices.c) {
        (Some(b), Some(c)) => (b, c),
        (Some(b), None) => (b, if b == Elem::ONE { w } else { Elem::ONE }),
        (None, Some(c)) => (if c == w { Elem::ONE } else { w }, c),
        (None, None) => (w, Elem::ONE),
    };
    field.check(b)?;
    field.check(c)?;

    let mus = match &choices.mus {
        Some(mus) => {
            for &mu in mus {
                if mu == Elem::ONE || mu.is_zero() || !subgroup.contains(mu)? {
                    return Err(Error::InvalidSpec("multipliers must lie in H \\ {1}"));
                }
            }
            mus.clone()
        }
        None => {
            let mut mus: Vec<Elem> = subgroup.elements()[1..=m].to_vec();
            sort_by_point(field, b, c, &mut mus)?;
            mus
        }
    };

    for forced in choices.lambdas.iter().flatten() {
        if forced.is_zero() || subgroup.contains(*forced)? {
            return Err(Error::InvalidSpec("twist scalars must lie outside H"));
        }
    }
    let lambdas = {
        let mut spare = subgroup
            .non_members()
            .filter(|x| !choices.lambdas.contains(&Some(*x)));
        choices
            .lambdas
            .iter()
            .map(|forced| forced.or_else(|| spare.next()).ok_or(Error::NotEnoughNonMembers))
            .collect::<Result<Vec<_>>>()?
    };

    CodeSpec::new(
        field,
        SpecParts { k, b, c, subgroup, mus, lambdas, extended, regime: Regime::Subgroup },
    )
}

fn largest_proper_subgroup(field: &Field) -> Result<Subgroup> {
    let order = field.order() as usize - 1;
    let d = (1..order).rev().find(|d| order % d == 0).unwrap_or(1);
    Subgroup::new(field, d)
}

/// Reorders multipliers so their evaluation points ascend by element index.
fn sort_by_point(field: &Field, b: Elem, c: Elem, mus: &mut [Elem]) -> Result<()> {
    let mut keyed = mus
        .iter()
        .map(|&mu| Ok((eval_point(field, b, c, mu)?.index(), mu)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_unstable();
    for (slot, (_, mu)) in mus.iter_mut().zip(keyed) {
        *slot = mu;
    }
    Ok(())
}

/// The maximal-length codes of the two multiplicative families.
///
/// `OddSquares` takes H = squares, every element of H \ {1} as a multiplier
/// and the first non-squares as twist scalars. `EvenCubics` takes H = cubes,
/// multipliers H \ {1} followed by w^2, and twist scalars w and w^4 from wH.
/// In both cases b = w and c = 1.
pub fn corollary_construct(field: &Field, k: usize, family: Family, shape: Shape) -> Result<CodeSpec> {
    let q = field.order() as usize;
    let w = field.primitive();
    let (subgroup, mus, lambdas, regime) = match family {
        Family::OddSquares => {
            if field.characteristic() == 2 {
                return Err(Error::FieldShape("odd-squares needs odd q"));
            }
            let h = Subgroup::new(field, (q - 1) / 2)?;
            let mut mus = h.elements()[1..].to_vec();
            sort_by_point(field, w, Elem::ONE, &mut mus)?;
            let lambdas: Vec<Elem> = h.non_members().take(shape.twists()).collect();
            (h, mus, lambdas, Regime::Subgroup)
        }
        Family::EvenCubics => {
            if field.characteristic() != 2 || field.degree() % 2 != 0 {
                return Err(Error::FieldShape("even-cubics needs q = 2^(2m)"));
            }
            let h = Subgroup::new(field, (q - 1) / 3)?;
            let mut mus = h.elements()[1..].to_vec();
            mus.push(field.exp(2));
            let lambdas: Vec<Elem> = [field.exp(1), field.exp(4)][..shape.twists()].to_vec();
            (h, mus, lambdas, Regime::EvenCubics)
        }
    };
    CodeSpec::new(
        field,
        SpecParts { k, b: w, c: Elem::ONE, subgroup, mus, lambdas, extended: shape.extended(), regime },
    )
}
