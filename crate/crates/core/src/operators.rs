//! Invariant operators for the H-action on `R_{0,m}`-valued polynomials.
//!
//! The primitives are the two halves of the Dirac operator `∂⁺ = Σ e_j∧∂_j`,
//! `∂⁻ = Σ e_j•∂_j`, the two halves of left multiplication by the vector
//! variable `x∧`, `x•`, and the diagonal Euler operators. Everything else
//! (Laplacians, `A`, `B`, `X`, `X̃`, ...) is an [`OperatorSpec`] tree over them.

use alloc::boxed::Box;
use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::poly::{CliffordPoly, MultiIndex, TermKey};
use crate::rational::Rational;

/// Which part of a Clifford product with a 1-vector to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorPart {
    /// Outer part `∧` (raises grade).
    Wedge,
    /// Inner part `•` (lowers grade).
    Dot,
    /// The full Clifford product.
    Full,
}

impl VectorPart {
    #[inline]
    fn keeps(self, j: usize, blade: Blade) -> bool {
        match self {
            VectorPart::Wedge => !blade.contains(j + 1),
            VectorPart::Dot => blade.contains(j + 1),
            VectorPart::Full => true,
        }
    }
}

/// `Σ_j e_j ⋆ ∂_{x_j} P` with `⋆` the selected part of the left product.
pub fn dirac_part(p: &CliffordPoly, part: VectorPart) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let e = key.alpha.get(j);
            if e == 0 || !part.keeps(j, key.blade) {
                continue;
            }
            let (neg, blade) = Blade::from_bits(1 << j).product(key.blade);
            out.add_signed(
                TermKey::new(key.alpha.lowered(j), blade),
                c * Rational::from_integer(e.into()),
                neg,
            );
        }
    }
    out
}

/// `∂⁺P = Σ e_j ∧ ∂_{x_j} P`.
pub fn dirac_plus(p: &CliffordPoly) -> CliffordPoly {
    dirac_part(p, VectorPart::Wedge)
}

/// `∂⁻P = Σ e_j • ∂_{x_j} P`.
pub fn dirac_minus(p: &CliffordPoly) -> CliffordPoly {
    dirac_part(p, VectorPart::Dot)
}

/// Left multiplication by the vector variable: `x∧P`, `x•P` or `xP`.
pub fn x_mul(p: &CliffordPoly, part: VectorPart) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            if !part.keeps(j, key.blade) {
                continue;
            }
            let (neg, blade) = Blade::from_bits(1 << j).product(key.blade);
            out.add_signed(TermKey::new(key.alpha.raised(j), blade), c.clone(), neg);
        }
    }
    out
}

/// Right multiplication by the vector variable, `P x`.
pub fn x_mul_right(p: &CliffordPoly) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let (neg, blade) = key.blade.product(Blade::from_bits(1 << j));
            out.add_signed(TermKey::new(key.alpha.raised(j), blade), c.clone(), neg);
        }
    }
    out
}

/// The right Dirac operator `P∂ = Σ (∂_{x_j}P) e_j`, computed literally.
pub fn dirac_right_literal(p: &CliffordPoly) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let e = key.alpha.get(j);
            if e == 0 {
                continue;
            }
            let (neg, blade) = key.blade.product(Blade::from_bits(1 << j));
            out.add_signed(
                TermKey::new(key.alpha.lowered(j), blade),
                c * Rational::from_integer(e.into()),
                neg,
            );
        }
    }
    out
}

fn map_by_grade(p: &CliffordPoly, f: impl Fn(&CliffordPoly) -> CliffordPoly) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.dim());
    for s in p.grades().iter() {
        let img = f(&p.grade_project(s));
        if s % 2 == 1 {
            out.add_scaled_unchecked(&img, &-Rational::one());
        } else {
            out.add_assign_unchecked(&img);
        }
    }
    out
}

/// `P∂`, computed per grade as `(−1)^s (∂⁺ − ∂⁻) P_s`.
pub fn dirac_right(p: &CliffordPoly) -> CliffordPoly {
    map_by_grade(p, |ps| {
        let mut img = dirac_plus(ps);
        img.add_scaled_unchecked(&dirac_minus(ps), &-Rational::one());
        img
    })
}

/// `xPx`, computed per grade as `(−1)^s (x•x∧ − x∧x•) P_s`.
pub fn sandwich_x(p: &CliffordPoly) -> CliffordPoly {
    map_by_grade(p, |ps| {
        let mut img = x_mul(&x_mul(ps, VectorPart::Wedge), VectorPart::Dot);
        img.add_scaled_unchecked(
            &x_mul(&x_mul(ps, VectorPart::Dot), VectorPart::Wedge),
            &-Rational::one(),
        );
        img
    })
}

/// `xPx` by literal left and right multiplication.
pub fn sandwich_x_literal(p: &CliffordPoly) -> CliffordPoly {
    x_mul_right(&x_mul(p, VectorPart::Full))
}

/// Diagonal operators act per bigraded term: `E` by `k`, `∂⁺⌋` by `s`, `∂⁻⌉` by `m − s`.
fn diagonal(p: &CliffordPoly, factor: impl Fn(&TermKey) -> usize) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.dim());
    for (key, c) in p.terms() {
        let f = factor(key);
        if f != 0 {
            out.add_term(*key, c * Rational::from_integer(f.into()));
        }
    }
    out
}

/// `e_j ⋆ P` for a constant generator acting on the values only.
fn generator_left(p: &CliffordPoly, j: usize, part: VectorPart) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.dim());
    for (key, c) in p.terms() {
        if !part.keeps(j, key.blade) {
            continue;
        }
        let (neg, blade) = Blade::from_bits(1 << j).product(key.blade);
        out.add_signed(TermKey::new(key.alpha, blade), c.clone(), neg);
    }
    out
}

/// `E = Σ x_j ∂_{x_j}` from its defining sum.
pub fn euler_literal(p: &CliffordPoly) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let e = key.alpha.get(j);
            if e > 0 {
                // x_j ∂_j x^α = α_j x^α
                out.add_term(*key, c * Rational::from_integer(e.into()));
            }
        }
    }
    out
}

/// `∂⁺⌋ = −Σ e_j∧ e_j•` from its defining sum.
pub fn ferm_plus_literal(p: &CliffordPoly) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.dim());
    for j in 0..p.dim() {
        let inner = generator_left(p, j, VectorPart::Dot);
        out.add_scaled_unchecked(&generator_left(&inner, j, VectorPart::Wedge), &-Rational::one());
    }
    out
}

/// `∂⁻⌉ = −Σ e_j• e_j∧` from its defining sum.
pub fn ferm_minus_literal(p: &CliffordPoly) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.dim());
    for j in 0..p.dim() {
        let outer = generator_left(p, j, VectorPart::Wedge);
        out.add_scaled_unchecked(&generator_left(&outer, j, VectorPart::Dot), &-Rational::one());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Primitive {
    DPlus,
    DMinus,
    XWedge,
    XDot,
    Euler,
    FermPlus,
    FermMinus,
}

impl Primitive {
    pub fn apply(self, p: &CliffordPoly) -> CliffordPoly {
        let m = p.dim();
        match self {
            Primitive::DPlus => dirac_plus(p),
            Primitive::DMinus => dirac_minus(p),
            Primitive::XWedge => x_mul(p, VectorPart::Wedge),
            Primitive::XDot => x_mul(p, VectorPart::Dot),
            Primitive::Euler => diagonal(p, |k| k.degree()),
            Primitive::FermPlus => diagonal(p, |k| k.grade()),
            Primitive::FermMinus => diagonal(p, |k| m - k.grade()),
        }
    }

    /// `(Δs, Δk)`: change of grade and degree.
    pub fn shift(self) -> (isize, isize) {
        match self {
            Primitive::DPlus => (1, -1),
            Primitive::DMinus => (-1, -1),
            Primitive::XWedge => (1, 1),
            Primitive::XDot => (-1, 1),
            Primitive::Euler | Primitive::FermPlus | Primitive::FermMinus => (0, 0),
        }
    }
}

/// A composition tree over [`Primitive`]s. `Compose` applies its operands
/// right to left, as written: `Compose([T, S])` is `T ∘ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorSpec {
    Primitive(Primitive),
    Compose(Vec<OperatorSpec>),
    Sum(Vec<OperatorSpec>),
    Scale(Rational, Box<OperatorSpec>),
}

impl From<Primitive> for OperatorSpec {
    fn from(p: Primitive) -> Self {
        OperatorSpec::Primitive(p)
    }
}

impl OperatorSpec {
    pub fn compose(outer: impl Into<OperatorSpec>, inner: impl Into<OperatorSpec>) -> Self {
        OperatorSpec::Compose(vec![outer.into(), inner.into()])
    }

    pub fn sum(a: impl Into<OperatorSpec>, b: impl Into<OperatorSpec>) -> Self {
        OperatorSpec::Sum(vec![a.into(), b.into()])
    }

    pub fn scaled(factor: Rational, op: impl Into<OperatorSpec>) -> Self {
        OperatorSpec::Scale(factor, Box::new(op.into()))
    }

    pub fn neg(op: impl Into<OperatorSpec>) -> Self {
        Self::scaled(-Rational::one(), op)
    }

    /// `{T, S} = TS + ST`.
    pub fn anticommutator(t: impl Into<OperatorSpec>, s: impl Into<OperatorSpec>) -> Self {
        let (t, s) = (t.into(), s.into());
        Self::sum(Self::compose(t.clone(), s.clone()), Self::compose(s, t))
    }

    /// Evaluates the tree on `p`; no simplification is attempted.
    pub fn apply(&self, p: &CliffordPoly) -> CliffordPoly {
        match self {
            OperatorSpec::Primitive(prim) => prim.apply(p),
            OperatorSpec::Compose(ops) => {
                let mut cur = p.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(&cur);
                }
                cur
            }
            OperatorSpec::Sum(ops) => {
                let mut out = CliffordPoly::zero(p.dim());
                for op in ops {
                    out.add_assign_unchecked(&op.apply(p));
                }
                out
            }
            OperatorSpec::Scale(f, op) => op.apply(p).scale(f),
        }
    }

    /// All `(Δs, Δk)` shifts the operator can produce.
    pub fn shifts(&self) -> BTreeSet<(isize, isize)> {
        match self {
            OperatorSpec::Primitive(p) => [p.shift()].into_iter().collect(),
            OperatorSpec::Compose(ops) => {
                let mut acc: BTreeSet<(isize, isize)> = [(0, 0)].into_iter().collect();
                for op in ops {
                    let s = op.shifts();
                    acc = acc
                        .iter()
                        .flat_map(|a| s.iter().map(move |b| (a.0 + b.0, a.1 + b.1)))
                        .collect();
                }
                acc
            }
            OperatorSpec::Sum(ops) => ops.iter().flat_map(|o| o.shifts()).collect(),
            OperatorSpec::Scale(_, op) => op.shifts(),
        }
    }
}

/// Anything that acts linearly on polynomials with a known set of bigrade shifts.
pub trait LinearOperator {
    fn apply_to(&self, p: &CliffordPoly) -> CliffordPoly;
    fn bigrade_shifts(&self) -> BTreeSet<(isize, isize)>;
}

impl LinearOperator for OperatorSpec {
    fn apply_to(&self, p: &CliffordPoly) -> CliffordPoly {
        self.apply(p)
    }

    fn bigrade_shifts(&self) -> BTreeSet<(isize, isize)> {
        self.shifts()
    }
}

/// Operators whose definition depends on the grade parity of the input,
/// so they are not trees over the primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradedOp {
    /// `P ↦ P∂`
    DiracRight,
    /// `P ↦ xPx`
    SandwichX,
    /// `P ↦ ∂P∂`, literal left then right Dirac.
    DiracBothSides,
}

impl LinearOperator for GradedOp {
    fn apply_to(&self, p: &CliffordPoly) -> CliffordPoly {
        match self {
            GradedOp::DiracRight => dirac_right(p),
            GradedOp::SandwichX => sandwich_x(p),
            GradedOp::DiracBothSides => dirac_right_literal(&dirac_part(p, VectorPart::Full)),
        }
    }

    fn bigrade_shifts(&self) -> BTreeSet<(isize, isize)> {
        match self {
            GradedOp::DiracRight => [(1, -1), (-1, -1)].into_iter().collect(),
            GradedOp::SandwichX => [(0, 2)].into_iter().collect(),
            GradedOp::DiracBothSides => [(-2, -2), (0, -2), (2, -2)].into_iter().collect(),
        }
    }
}

/// Named operators built from the primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivedOp {
    Dirac,
    DiracTilde,
    Laplacian,
    LaplacianTilde,
    Euler,
    FermPlus,
    FermMinus,
    A,
    B,
    X,
    XTilde,
}

impl DerivedOp {
    pub const ALL: [DerivedOp; 11] = [
        DerivedOp::Dirac,
        DerivedOp::DiracTilde,
        DerivedOp::Laplacian,
        DerivedOp::LaplacianTilde,
        DerivedOp::Euler,
        DerivedOp::FermPlus,
        DerivedOp::FermMinus,
        DerivedOp::A,
        DerivedOp::B,
        DerivedOp::X,
        DerivedOp::XTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedOp::Dirac => "DIRAC",
            DerivedOp::DiracTilde => "DIRAC_TILDE",
            DerivedOp::Laplacian => "LAPLACIAN",
            DerivedOp::LaplacianTilde => "LAPLACIAN_TILDE",
            DerivedOp::Euler => "EULER",
            DerivedOp::FermPlus => "FERM_PLUS",
            DerivedOp::FermMinus => "FERM_MINUS",
            DerivedOp::A => "A",
            DerivedOp::B => "B",
            DerivedOp::X => "X",
            DerivedOp::XTilde => "X_TILDE",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == name)
            .ok_or_else(|| Error::UnknownOperator(name.to_string()))
    }

    pub fn spec(self) -> OperatorSpec {
        use Primitive::*;
        let dd = |a: Primitive, b: Primitive| OperatorSpec::compose(a, b);
        match self {
            DerivedOp::Dirac => OperatorSpec::sum(DPlus, DMinus),
            DerivedOp::DiracTilde => OperatorSpec::sum(DPlus, OperatorSpec::neg(DMinus)),
            // Δ = −(∂⁺∂⁻ + ∂⁻∂⁺)
            DerivedOp::Laplacian => {
                OperatorSpec::neg(OperatorSpec::sum(dd(DPlus, DMinus), dd(DMinus, DPlus)))
            }
            // Δ̃ = −(∂⁺∂⁻ − ∂⁻∂⁺)
            DerivedOp::LaplacianTilde => OperatorSpec::neg(OperatorSpec::sum(
                dd(DPlus, DMinus),
                OperatorSpec::neg(dd(DMinus, DPlus)),
            )),
            DerivedOp::Euler => Euler.into(),
            DerivedOp::FermPlus => FermPlus.into(),
            DerivedOp::FermMinus => FermMinus.into(),
            DerivedOp::A => OperatorSpec::sum(Euler, FermPlus),
            DerivedOp::B => OperatorSpec::sum(Euler, FermMinus),
            // X = x∧A − x•B
            DerivedOp::X => OperatorSpec::sum(
                OperatorSpec::compose(XWedge, DerivedOp::A.spec()),
                OperatorSpec::neg(OperatorSpec::compose(XDot, DerivedOp::B.spec())),
            ),
            // X̃ = x∧A + x•B
            DerivedOp::XTilde => OperatorSpec::sum(
                OperatorSpec::compose(XWedge, DerivedOp::A.spec()),
                OperatorSpec::compose(XDot, DerivedOp::B.spec()),
            ),
        }
    }
}

/// Composition tree for a named derived operator.
pub fn derived_operator(name: &str) -> Result<OperatorSpec> {
    Ok(DerivedOp::from_name(name)?.spec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Wedge,
    Dot,
}

/// An alternating word in `x∧`, `x•`, written left to right and applied
/// right to left. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OmegaWord(Vec<Letter>);

impl OmegaWord {
    pub fn empty() -> Self {
        OmegaWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NonAlternatingWord);
        }
        Ok(OmegaWord(letters))
    }

    /// The alternating word of length `len` whose leftmost letter is `first`.
    pub fn alternating(first: Letter, len: usize) -> Self {
        let other = match first {
            Letter::Wedge => Letter::Dot,
            Letter::Dot => Letter::Wedge,
        };
        OmegaWord((0..len).map(|i| if i % 2 == 0 { first } else { other }).collect())
    }

    /// Parses `w`/`d` strings such as `"wd"`; `""` and `"1"` are the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "1" {
            return Ok(Self::empty());
        }
        let letters = text
            .chars()
            .map(|c| match c {
                'w' | 'W' => Ok(Letter::Wedge),
                'd' | 'D' => Ok(Letter::Dot),
                _ => Err(Error::InvalidWord(text.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letter applied first (rightmost).
    pub fn first_applied(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `#x∧ − #x•`: the grade change produced by the word.
    pub fn grade_shift(&self) -> isize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Wedge => 1,
                Letter::Dot => -1,
            })
            .sum()
    }

    pub fn apply(&self, p: &CliffordPoly) -> CliffordPoly {
        let mut cur = p.clone();
        for l in self.0.iter().rev() {
            cur = match l {
                Letter::Wedge => x_mul(&cur, VectorPart::Wedge),
                Letter::Dot => x_mul(&cur, VectorPart::Dot),
            };
        }
        cur
    }

    pub fn to_spec(&self) -> OperatorSpec {
        OperatorSpec::Compose(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::Wedge => Primitive::XWedge.into(),
                    Letter::Dot => Primitive::XDot.into(),
                })
                .collect(),
        )
    }
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::Wedge => "w",
                Letter::Dot => "d",
            })?;
        }
        Ok(())
    }
}

/// Applies an alternating word; non-alternating letter lists are rejected.
pub fn word_apply(letters: &[Letter], p: &CliffordPoly) -> Result<CliffordPoly> {
    Ok(OmegaWord::new(letters.to_vec())?.apply(p))
}

/// A Pin group element given as a product of exact unit 1-vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotorElement {
    factors: Vec<Multivector>,
}

impl RotorElement {
    pub fn new(factors: Vec<Multivector>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::NotAVector);
        };
        let m = first.dim();
        for u in &factors {
            if u.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: u.dim(),
                });
            }
            if u.pure_grade() != Some(1) {
                return Err(Error::NotAVector);
            }
            // u² = −|u|² for a 1-vector
            if u.product_unchecked(u) != Multivector::scalar(m, -Rational::one()) {
                return Err(Error::NotUnit);
            }
        }
        Ok(RotorElement { factors })
    }

    pub fn dim(&self) -> usize {
        self.factors[0].dim()
    }

    pub fn factors(&self) -> &[Multivector] {
        &self.factors
    }

    pub fn multivector(&self) -> Multivector {
        let m = self.dim();
        self.factors
            .iter()
            .fold(Multivector::scalar(m, Rational::one()), |acc, u| acc.product_unchecked(u))
    }

    /// `r⁻¹ = u_n⁻¹ ⋯ u_1⁻¹` with `u⁻¹ = −u`.
    pub fn inverse(&self) -> Multivector {
        let m = self.dim();
        self.factors
            .iter()
            .rev()
            .fold(Multivector::scalar(m, Rational::one()), |acc, u| {
                acc.product_unchecked(&u.neg())
            })
    }
}

/// The H-action `[H(r)P](x) = r P(r⁻¹ x r) r⁻¹`.
pub fn h_action(r: &RotorElement, p: &CliffordPoly) -> Result<CliffordPoly> {
    let m = p.dim();
    if r.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: r.dim(),
        });
    }
    let rv = r.multivector();
    let rinv = r.inverse();

    // r⁻¹ x r = Σ_j x_j (r⁻¹ e_j r) = Σ_i y_i e_i with y_i = Σ_j L_ij x_j
    let mut forms = vec![CliffordPoly::zero(m); m];
    for j in 0..m {
        let image = rinv
            .product_unchecked(&Multivector::generator(m, j + 1)?)
            .product_unchecked(&rv);
        let coords = image.vector_coords()?;
        for (i, c) in coords.into_iter().enumerate() {
            forms[i].add_term(TermKey::new(MultiIndex::unit(m, j), Blade::SCALAR), c);
        }
    }

    let mut powers: BTreeMap<(usize, u32), CliffordPoly> = BTreeMap::new();
    let mut substituted = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        let mut prod = CliffordPoly::monomial(MultiIndex::zero(m), key.blade, c.clone());
        for (i, form) in forms.iter().enumerate() {
            let e = key.alpha.get(i);
            if e == 0 {
                continue;
            }
            let pw = match powers.entry((i, e)) {
                Entry::Occupied(o) => o.into_mut(),
                Entry::Vacant(v) => {
                    let mut pw = CliffordPoly::scalar(m, Rational::one());
                    for _ in 0..e {
                        pw = pw.mul(form)?;
                    }
                    v.insert(pw)
                }
            };
            prod = pw.mul(&prod)?;
        }
        substituted.add_assign_unchecked(&prod);
    }
    substituted.left_mv_multiply(&rv)?.right_mv_multiply(&rinv)
}
