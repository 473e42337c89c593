//! Constructive, certified direct-sum decompositions.
//!
//! Each decomposition is described by a list of *parts*: a source space
//! (usually some `H^s_k`) and its image under an embedding map inside a fixed
//! ambient bigrade. Certification checks that the images are independent,
//! that they lie in the target space and that together they fill it. The
//! same stacked images then give exact coordinates for any input polynomial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use spin::RwLock;

use crate::clifford::{check_dim, GradeSet};
use crate::error::{Error, Result, Violation};
use crate::linalg::{KeyIndex, SpanSolver, SubspaceBasis};
use crate::operators::{sandwich_x, x_mul, DerivedOp, LinearOperator, OmegaWord, VectorPart};
use crate::poly::CliffordPoly;
use crate::rational::{int, Rational};
use crate::spaces::{component_space, hodge, image_basis, joint_kernel, omega_words, space_basis, SpaceKind};

/// Embedding used by a refinement piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Piece {
    /// `H^s_k` itself.
    Hodge,
    /// `x∧ H^s_k`.
    Wedge,
    /// `x• H^s_k`.
    Dot,
    /// `(a x∧x• − b x•x∧) H^s_k` with the harmonic coefficients.
    W,
    /// `((c₁+1)c₂ x∧x• + (c₂+1)c₁ x•x∧) H^s_k`.
    WTilde,
    /// `X H^s_k`, `X = x∧A − x•B`.
    X,
    /// `X̃ H^s_k`, `X̃ = x∧A + x•B`.
    XTilde,
}

impl Piece {
    fn prefix(self) -> &'static str {
        match self {
            Piece::Hodge => "",
            Piece::Wedge => "w.",
            Piece::Dot => "d.",
            Piece::W => "W.",
            Piece::WTilde => "Wt.",
            Piece::X => "X.",
            Piece::XTilde => "Xt.",
        }
    }
}

/// Names one summand of a decomposition. The indices always refer to the
/// source space that the embedding is applied to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentLabel {
    /// `w H^s_k`.
    Word { word: OmegaWord, s: usize, k: usize },
    /// A refinement piece applied to `H^s_k`.
    Piece { piece: Piece, s: usize, k: usize },
    /// `|x|^{2p} Ker^s_k Δ`.
    Radial { p: usize, s: usize, k: usize },
    /// `x^p M_k`.
    VectorPower { p: usize, k: usize },
    /// `x^p (Ker^s_k Δ̃) x^p`.
    Sandwich { p: usize, s: usize, k: usize },
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Word { word, s, k } => write!(f, "{word}.H^{s}_{k}"),
            ComponentLabel::Piece { piece, s, k } => write!(f, "{}H^{s}_{k}", piece.prefix()),
            ComponentLabel::Radial { p, s, k } => write!(f, "|x|^{}.harmonic^{s}_{k}", 2 * p),
            ComponentLabel::VectorPower { p, k } => write!(f, "x^{p}.monogenic_{k}"),
            ComponentLabel::Sandwich { p, s, k } => write!(f, "x^{p}.infra^{s}_{k}.x^{p}"),
        }
    }
}

/// `input = Σ components + residual`. `generators` holds, for each component,
/// the element of the source space that the embedding maps onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub input: CliffordPoly,
    pub components: BTreeMap<ComponentLabel, CliffordPoly>,
    pub generators: BTreeMap<ComponentLabel, CliffordPoly>,
    pub residual: CliffordPoly,
}

impl DecompositionResult {
    fn new(input: &CliffordPoly) -> Self {
        DecompositionResult {
            input: input.clone(),
            components: BTreeMap::new(),
            generators: BTreeMap::new(),
            residual: CliffordPoly::zero(input.dim()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }

    /// `Σ components + residual`.
    pub fn reconstruct(&self) -> CliffordPoly {
        let mut sum = self.residual.clone();
        for c in self.components.values() {
            sum.add_assign_unchecked(c);
        }
        sum
    }

    pub fn component(&self, label: &ComponentLabel) -> CliffordPoly {
        self.components
            .get(label)
            .cloned()
            .unwrap_or_else(|| CliffordPoly::zero(self.input.dim()))
    }

    fn accumulate(&mut self, label: ComponentLabel, component: CliffordPoly, generator: CliffordPoly) {
        if component.is_zero() {
            return;
        }
        let m = self.input.dim();
        self.components
            .entry(label.clone())
            .or_insert_with(|| CliffordPoly::zero(m))
            .add_assign_unchecked(&component);
        self.generators
            .entry(label)
            .or_insert_with(|| CliffordPoly::zero(m))
            .add_assign_unchecked(&generator);
    }
}

/// The certified statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// The nine anticommutator relations between `∂⁺, ∂⁻, x∧, x•`.
    Lemma,
    /// `P* = ⊕ w H^s_k` over Ω-words.
    FischerH,
    /// `Ker^s_k Δ = H ⊕ x∧H ⊕ x•H ⊕ W`.
    Homma,
    /// `M_k = H_k ⊕ X H_{k−1}`.
    MonogenicLeft,
    /// Right monogenics, `H_k ⊕ X̃ H_{k−1}`.
    MonogenicRight,
    /// `R^S`-valued monogenics, `⊕_{s∈S} H^s_k ⊕ ⊕_{s∈S'} X H^s_{k−1}`.
    MoisilTheodoresco,
    /// `Ker^s_k Δ̃ = H ⊕ x∧H ⊕ x•H ⊕ W̃`.
    Infra,
    /// `Ker Δ ∩ Ker Δ̃ = H ⊕ x∧H ⊕ x•H`.
    InfraHarmonic,
    /// `P^s_k = ⊕ |x|^{2p} Ker^s_{k−2p} Δ`.
    ClassicalHarmonic,
    /// `P_k = ⊕ x^p M_{k−p}`, one report per grade parity.
    ClassicalMonogenic,
    /// `P^s_k = ⊕ x^p Ker^s_{k−2p} Δ̃ x^p`.
    ClassicalInfra,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::Lemma,
        Theorem::FischerH,
        Theorem::Homma,
        Theorem::MonogenicLeft,
        Theorem::MonogenicRight,
        Theorem::MoisilTheodoresco,
        Theorem::Infra,
        Theorem::InfraHarmonic,
        Theorem::ClassicalHarmonic,
        Theorem::ClassicalMonogenic,
        Theorem::ClassicalInfra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Lemma => "lemma",
            Theorem::FischerH => "h",
            Theorem::Homma => "homma",
            Theorem::MonogenicLeft => "monogenic-left",
            Theorem::MonogenicRight => "monogenic-right",
            Theorem::MoisilTheodoresco => "mt",
            Theorem::Infra => "infra",
            Theorem::InfraHarmonic => "infra-harmonic",
            Theorem::ClassicalHarmonic => "classical-harmonic",
            Theorem::ClassicalMonogenic => "classical-monogenic",
            Theorem::ClassicalInfra => "classical-infra",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of certifying one theorem at one bigrade.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub m: usize,
    pub grades: GradeSet,
    pub k: usize,
    /// Dimension of every part, in construction order (zero spaces included).
    pub dims: Vec<(String, usize)>,
    /// Dimension of the space the parts must fill.
    pub target_dim: usize,
    pub direct_sum: bool,
    pub fills: bool,
    pub witness: Option<Violation>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.fills && self.witness.is_none()
    }

    pub fn failed(theorem: Theorem, m: usize, grades: GradeSet, k: usize, violation: Violation) -> Self {
        TheoremReport {
            theorem,
            m,
            grades,
            k,
            dims: Vec::new(),
            target_dim: 0,
            direct_sum: false,
            fills: false,
            witness: Some(violation),
        }
    }

    fn violation(&self) -> Violation {
        self.witness.clone().unwrap_or_else(|| Violation {
            context: format!("{} m={} S={} k={}", self.theorem, self.m, self.grades, self.k),
            message: String::from("certification failed"),
            witness: None,
        })
    }
}

/// Left (`∂P`) or right (`P∂`) monogenicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which tower [`classical_fischer_decompose`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassicalMode {
    Harmonic,
    Monogenic,
    Infra,
}

struct Part {
    name: String,
    label: Option<ComponentLabel>,
    source: Arc<SubspaceBasis>,
    image: SubspaceBasis,
}

/// Certified stacked images, ready for coordinate solves.
struct Block {
    index: KeyIndex,
    parts: Vec<Part>,
    solver: SpanSolver,
}

/// A certification result together with the component bases.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub report: TheoremReport,
    pub components: Vec<(String, SubspaceBasis)>,
}

impl Refinement {
    /// Turns a failed report into [`Error::TheoremViolation`].
    pub fn certified(self) -> Result<Self> {
        if self.report.passed() {
            Ok(self)
        } else {
            Err(Error::TheoremViolation(alloc::boxed::Box::new(self.report.violation())))
        }
    }
}

enum Target {
    Ambient,
    Space(Arc<SubspaceBasis>),
}

struct Certified {
    report: TheoremReport,
    block: Option<Block>,
}

type BlockKey = (Theorem, usize, u16, usize);

static BLOCKS: RwLock<BTreeMap<BlockKey, Arc<Certified>>> = RwLock::new(BTreeMap::new());

fn mapped_part(
    name: String,
    label: Option<ComponentLabel>,
    source: Arc<SubspaceBasis>,
    map: impl Fn(&CliffordPoly) -> CliffordPoly,
) -> Result<Part> {
    let image = image_basis(&source, map, name.clone())?;
    Ok(Part {
        name,
        label,
        source,
        image,
    })
}

fn hodge_label(piece: Piece, s: isize, k: isize) -> (String, Option<ComponentLabel>) {
    let name = format!("{}H^{s}_{k}", piece.prefix());
    let label = (s >= 0 && k >= 0).then_some(ComponentLabel::Piece {
        piece,
        s: s as usize,
        k: k as usize,
    });
    (name, label)
}

fn hodge_part(m: usize, piece: Piece, s: isize, k: isize, map: impl Fn(&CliffordPoly) -> CliffordPoly) -> Result<Part> {
    let (name, label) = hodge_label(piece, s, k);
    mapped_part(name, label, hodge(m, s, k)?, map)
}

fn wd(p: &CliffordPoly) -> CliffordPoly {
    x_mul(&x_mul(p, VectorPart::Dot), VectorPart::Wedge)
}

fn dw(p: &CliffordPoly) -> CliffordPoly {
    x_mul(&x_mul(p, VectorPart::Wedge), VectorPart::Dot)
}

/// `c₁ = k−2+s`, `c₂ = k−2+m−s`.
fn infra_constants(m: usize, s: usize, k: usize) -> (i64, i64) {
    let (m, s, k) = (m as i64, s as i64, k as i64);
    (k - 2 + s, k - 2 + m - s)
}

fn has_w(m: usize, s: usize, k: usize) -> bool {
    (1..m).contains(&s) && k >= 2
}

/// `H^s_k`, `x∧H^{s−1}_{k−1}`, `x•H^{s+1}_{k−1}`.
fn three_parts(m: usize, s: usize, k: usize) -> Result<Vec<Part>> {
    let (s, k) = (s as isize, k as isize);
    Ok(alloc::vec![
        hodge_part(m, Piece::Hodge, s, k, |p| p.clone())?,
        hodge_part(m, Piece::Wedge, s - 1, k - 1, |p| x_mul(p, VectorPart::Wedge))?,
        hodge_part(m, Piece::Dot, s + 1, k - 1, |p| x_mul(p, VectorPart::Dot))?,
    ])
}

fn w_part(m: usize, s: usize, k: usize, tilde: bool) -> Result<Part> {
    let piece = if tilde { Piece::WTilde } else { Piece::W };
    let (ks, kk) = (s as isize, k as isize - 2);
    if !has_w(m, s, k) {
        let (name, _) = hodge_label(piece, ks, kk);
        return Ok(Part {
            name,
            label: None,
            source: Arc::new(SubspaceBasis::empty(m, "zero")),
            image: SubspaceBasis::empty(m, "zero"),
        });
    }
    // coefficients of x∧x• and x•x∧
    let (a, b) = if tilde {
        let (c1, c2) = infra_constants(m, s, k);
        ((c1 + 1) * c2, (c2 + 1) * c1)
    } else {
        let (m, s, k) = (m as i64, s as i64, k as i64);
        (k - 2 + m - s, -(k - 2 + s))
    };
    let (a, b) = (int(a), int(b));
    hodge_part(m, piece, ks, kk, move |p| {
        let mut out = wd(p).scale(&a);
        out.add_scaled_unchecked(&dw(p), &b);
        out
    })
}

fn build_parts(theorem: Theorem, m: usize, grades: GradeSet, k: usize) -> Result<(Vec<Part>, Target)> {
    let single = || grades.iter().next().unwrap_or(0);
    match theorem {
        Theorem::Lemma => Ok((Vec::new(), Target::Ambient)),
        Theorem::FischerH => {
            let s = single();
            let mut parts = Vec::new();
            for w in omega_words(k) {
                let k2 = k - w.len();
                let s2 = s as isize - w.grade_shift();
                if !(0..=m as isize).contains(&s2) {
                    continue;
                }
                let s2 = s2 as usize;
                let image = component_space(&w, m, s2, k2)?;
                let label = ComponentLabel::Word {
                    word: w.clone(),
                    s: s2,
                    k: k2,
                };
                parts.push(Part {
                    name: format!("{label}"),
                    label: Some(label),
                    source: space_basis(SpaceKind::Hodge, m, GradeSet::single(s2), k2)?,
                    image,
                });
            }
            Ok((parts, Target::Ambient))
        }
        Theorem::Homma | Theorem::Infra => {
            let s = single();
            let tilde = theorem == Theorem::Infra;
            let mut parts = three_parts(m, s, k)?;
            parts.push(w_part(m, s, k, tilde)?);
            let kind = if tilde { SpaceKind::Infra } else { SpaceKind::Harmonic };
            Ok((parts, Target::Space(space_basis(kind, m, grades, k)?)))
        }
        Theorem::InfraHarmonic => {
            let s = single();
            let target = joint_kernel(
                &[&DerivedOp::Laplacian.spec(), &DerivedOp::LaplacianTilde.spec()],
                m,
                grades,
                k,
                format!("harmonic∩infra^{s}_{k}"),
            )?;
            Ok((three_parts(m, s, k)?, Target::Space(Arc::new(target))))
        }
        Theorem::MonogenicLeft | Theorem::MonogenicRight | Theorem::MoisilTheodoresco => {
            let right = theorem == Theorem::MonogenicRight;
            let (piece, op) = if right {
                (Piece::XTilde, DerivedOp::XTilde.spec())
            } else {
                (Piece::X, DerivedOp::X.spec())
            };
            let mut parts = Vec::new();
            for s in grades.iter() {
                parts.push(hodge_part(m, Piece::Hodge, s as isize, k as isize, |p| p.clone())?);
            }
            for s in derived_grades(grades).iter() {
                let op = op.clone();
                parts.push(hodge_part(m, piece, s as isize, k as isize - 1, move |p| op.apply_to(p))?);
            }
            let kind = if right {
                SpaceKind::MonoRight
            } else if grades == GradeSet::full(m) {
                SpaceKind::MonoLeft
            } else {
                SpaceKind::MonoS
            };
            Ok((parts, Target::Space(space_basis(kind, m, grades, k)?)))
        }
        Theorem::ClassicalHarmonic | Theorem::ClassicalInfra => {
            let s = single();
            let infra = theorem == Theorem::ClassicalInfra;
            let mut parts = Vec::new();
            for p in 0..=k / 2 {
                let inner = k - 2 * p;
                let (label, kind) = if infra {
                    (ComponentLabel::Sandwich { p, s, k: inner }, SpaceKind::Infra)
                } else {
                    (ComponentLabel::Radial { p, s, k: inner }, SpaceKind::Harmonic)
                };
                let source = space_basis(kind, m, grades, inner)?;
                let name = format!("{label}");
                let part = if infra {
                    mapped_part(name, Some(label), source, |q| (0..p).fold(q.clone(), |acc, _| sandwich_x(&acc)))?
                } else {
                    let r2p = radial_power(m, p);
                    mapped_part(name, Some(label), source, move |q| r2p.mul(q).expect("same dimension"))?
                };
                parts.push(part);
            }
            Ok((parts, Target::Ambient))
        }
        Theorem::ClassicalMonogenic => {
            // grades is one parity class; x^p M_{k−p} contributes its part of
            // the matching parity
            let mut parts = Vec::new();
            for p in 0..=k {
                let inner_grades = if p % 2 == 0 { grades } else { other_parity(m, grades) };
                let label = ComponentLabel::VectorPower { p, k: k - p };
                let source = space_basis(SpaceKind::MonoS, m, inner_grades, k - p)?;
                let part = mapped_part(format!("{label}"), Some(label), source, |q| {
                    (0..p).fold(q.clone(), |acc, _| x_mul(&acc, VectorPart::Full))
                })?;
                parts.push(part);
            }
            Ok((parts, Target::Ambient))
        }
    }
}

/// `S' = {s : s−1 ∈ S and s+1 ∈ S}`.
pub fn derived_grades(grades: GradeSet) -> GradeSet {
    let bits = grades.bits();
    GradeSet::from_bits((bits << 1) & (bits >> 1))
}

/// Grades of the given parity: `{0,2,4,…}` for 0, `{1,3,…}` for 1.
pub fn parity_grades(m: usize, parity: usize) -> GradeSet {
    let mut g = GradeSet::EMPTY;
    for s in (parity % 2..=m).step_by(2) {
        g.insert(s);
    }
    g
}

fn other_parity(m: usize, grades: GradeSet) -> GradeSet {
    GradeSet::from_bits(GradeSet::full(m).bits() & !grades.bits())
}

fn radial_power(m: usize, p: usize) -> CliffordPoly {
    let r2 = CliffordPoly::norm_squared(m);
    (0..p).fold(CliffordPoly::scalar(m, int(1)), |acc, _| acc.mul(&r2).expect("same dimension"))
}

fn certify(
    theorem: Theorem,
    m: usize,
    grades: GradeSet,
    k: usize,
    parts: Vec<Part>,
    target: Target,
) -> Certified {
    let context = format!("{theorem} m={m} S={grades} k={k}");
    let index = KeyIndex::monomials(m, grades, k);
    let mut report = TheoremReport {
        theorem,
        m,
        grades,
        k,
        dims: parts.iter().map(|p| (p.name.clone(), p.image.dim())).collect(),
        target_dim: match &target {
            Target::Ambient => index.len(),
            Target::Space(b) => b.dim(),
        },
        direct_sum: false,
        fills: false,
        witness: None,
    };
    let fail = |report: &mut TheoremReport, message: String, witness: Option<CliffordPoly>| {
        report.witness = Some(Violation {
            context: context.clone(),
            message,
            witness,
        });
    };

    let mut cols = Vec::new();
    for part in &parts {
        for v in part.image.vectors() {
            match index.coords(v) {
                Some(c) => cols.push(c),
                None => {
                    fail(
                        &mut report,
                        format!("{} leaves the ambient bigrade", part.name),
                        Some(v.clone()),
                    );
                    return Certified { report, block: None };
                }
            }
        }
    }
    let solver = SpanSolver::new(&cols, index.len());
    report.direct_sum = solver.is_independent();
    if !report.direct_sum {
        let all: Vec<CliffordPoly> = parts.iter().flat_map(|p| p.image.vectors().iter().cloned()).collect();
        let witness = match SubspaceBasis::new(m, "stack", all) {
            Err(Error::TheoremViolation(v)) => v.witness,
            _ => None,
        };
        fail(&mut report, String::from("the parts are not independent"), witness);
    }

    match &target {
        Target::Ambient => {
            report.fills = solver.rank() == index.len();
            if !report.fills && report.witness.is_none() {
                let missing = index
                    .keys()
                    .iter()
                    .map(|key| CliffordPoly::monomial(key.alpha, key.blade, int(1)))
                    .find(|mono| solver.solve(&index.coords(mono).expect("indexed")).is_none());
                fail(
                    &mut report,
                    format!("rank {} of {} in the ambient space", solver.rank(), index.len()),
                    missing,
                );
            }
        }
        Target::Space(space) => {
            let target_cols: Vec<Vec<Rational>> = space
                .vectors()
                .iter()
                .map(|v| index.coords(v).expect("target space lies in the ambient bigrade"))
                .collect();
            let target_solver = SpanSolver::new(&target_cols, index.len());
            let mut contained = true;
            'parts: for part in &parts {
                for v in part.image.vectors() {
                    if target_solver.solve(&index.coords(v).expect("checked")).is_none() {
                        contained = false;
                        if report.witness.is_none() {
                            fail(
                                &mut report,
                                format!("{} is not contained in {}", part.name, space.label()),
                                Some(v.clone()),
                            );
                        }
                        break 'parts;
                    }
                }
            }
            report.fills = contained && solver.rank() == space.dim();
            if !report.fills && report.witness.is_none() {
                let missing = space
                    .vectors()
                    .iter()
                    .zip(&target_cols)
                    .find(|(_, c)| solver.solve(c).is_none())
                    .map(|(v, _)| v.clone());
                fail(
                    &mut report,
                    format!("parts span {} of the {} dimensions of {}", solver.rank(), space.dim(), space.label()),
                    missing,
                );
            }
        }
    }
    let block = report.passed().then_some(Block { index, parts, solver });
    Certified { report, block }
}

fn eigen_check(report: &mut TheoremReport, m: usize, s: usize, k: usize) -> Result<()> {
    if !has_w(m, s, k) || report.witness.is_some() {
        return Ok(());
    }
    let (c1, c2) = infra_constants(m, s, k);
    let lt = DerivedOp::LaplacianTilde.spec();
    let h = hodge(m, s as isize, k as isize - 2)?;
    for p in h.vectors() {
        let checks = [
            ("Δ̃ x∧x•P = −2c₁(c₂+1)P", wd(p), int(-2 * c1 * (c2 + 1))),
            ("Δ̃ x•x∧P = 2(c₁+1)c₂P", dw(p), int(2 * (c1 + 1) * c2)),
        ];
        for (name, q, factor) in checks {
            if lt.apply(&q) != p.scale(&factor) {
                report.witness = Some(Violation {
                    context: format!("infra m={m} s={s} k={k}"),
                    message: format!("eigen-identity {name} fails"),
                    witness: Some(p.clone()),
                });
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_grades(m: usize, grades: GradeSet) -> Result<()> {
    check_dim(m)?;
    if !grades.is_valid_for(m) {
        return Err(Error::GradeOutOfRange {
            grade: grades.max().unwrap_or(0),
            m,
        });
    }
    Ok(())
}

fn certified(theorem: Theorem, m: usize, grades: GradeSet, k: usize) -> Result<Arc<Certified>> {
    check_grades(m, grades)?;
    let key = (theorem, m, grades.bits(), k);
    if let Some(hit) = BLOCKS.read().get(&key) {
        return Ok(hit.clone());
    }
    let result = match build_parts(theorem, m, grades, k) {
        Ok((parts, target)) => {
            let mut c = certify(theorem, m, grades, k, parts, target);
            if theorem == Theorem::Infra {
                eigen_check(&mut c.report, m, grades.iter().next().unwrap_or(0), k)?;
                if c.report.witness.is_some() {
                    c.block = None;
                }
            }
            c
        }
        Err(Error::TheoremViolation(v)) => Certified {
            report: TheoremReport::failed(theorem, m, grades, k, *v),
            block: None,
        },
        Err(e) => return Err(e),
    };
    let result = Arc::new(result);
    BLOCKS.write().insert(key, result.clone());
    Ok(result)
}

fn refinement(theorem: Theorem, m: usize, grades: GradeSet, k: usize) -> Result<Refinement> {
    let c = certified(theorem, m, grades, k)?;
    let components = match &c.block {
        Some(b) => b.parts.iter().map(|p| (p.name.clone(), p.image.clone())).collect(),
        None => Vec::new(),
    };
    Ok(Refinement {
        report: c.report.clone(),
        components,
    })
}

/// Certificate for one theorem at one bigrade (or grade set). Failures are
/// reported, never raised; invalid indices are errors.
pub fn theorem_report(theorem: Theorem, m: usize, grades: GradeSet, k: usize) -> Result<TheoremReport> {
    Ok(certified(theorem, m, grades, k)?.report.clone())
}

/// `Ker^s_k Δ = H^s_k ⊕ x∧H^{s−1}_{k−1} ⊕ x•H^{s+1}_{k−1} ⊕ W^s_k`.
pub fn homma_refine(m: usize, s: usize, k: usize) -> Result<Refinement> {
    refinement(Theorem::Homma, m, GradeSet::single(s), k)
}

/// `Ker^s_k Δ̃ = H^s_k ⊕ x∧H^{s−1}_{k−1} ⊕ x•H^{s+1}_{k−1} ⊕ W̃^s_k`, plus the
/// two eigen-identities on `H^s_{k−2}`.
pub fn inframonogenic_refine(m: usize, s: usize, k: usize) -> Result<Refinement> {
    refinement(Theorem::Infra, m, GradeSet::single(s), k)
}

/// `Ker^s_k Δ ∩ Ker^s_k Δ̃ = H^s_k ⊕ x∧H^{s−1}_{k−1} ⊕ x•H^{s+1}_{k−1}`.
pub fn harmonic_infra_intersection(m: usize, s: usize, k: usize) -> Result<Refinement> {
    refinement(Theorem::InfraHarmonic, m, GradeSet::single(s), k)
}

/// `R^S`-valued monogenics of degree `k`: `⊕_{s∈S} H^s_k ⊕ ⊕_{s∈S'} X H^s_{k−1}`
/// (`X̃` on the right).
pub fn monogenic_refine(m: usize, k: usize, grades: GradeSet, side: Side) -> Result<Refinement> {
    refinement(monogenic_theorem(m, grades, side), m, grades, k)
}

fn monogenic_theorem(m: usize, grades: GradeSet, side: Side) -> Theorem {
    match side {
        Side::Right => Theorem::MonogenicRight,
        Side::Left if grades == GradeSet::full(m) => Theorem::MonogenicLeft,
        Side::Left => Theorem::MoisilTheodoresco,
    }
}

/// Solves `part` against the certified block. Returns `false` if the block is
/// certified but `part` is outside its span.
fn solve_into(out: &mut DecompositionResult, c: &Certified, part: &CliffordPoly) -> Result<bool> {
    let block = c
        .block
        .as_ref()
        .ok_or_else(|| Error::TheoremViolation(alloc::boxed::Box::new(c.report.violation())))?;
    let Some(coords) = block.index.coords(part) else {
        return Ok(false);
    };
    let Some(sol) = block.solver.solve(&coords) else {
        return Ok(false);
    };
    let mut offset = 0;
    for p in &block.parts {
        let n = p.image.dim();
        let c = &sol[offset..offset + n];
        offset += n;
        if let Some(label) = &p.label {
            out.accumulate(label.clone(), p.image.combination(c), p.source.combination(c));
        }
    }
    Ok(true)
}

fn not_spanned(theorem: Theorem, part: &CliffordPoly) -> Error {
    Error::violation(
        format!("{theorem}"),
        "input component is not spanned by the certified parts",
        Some(part.clone()),
    )
}

/// `P = Σ_{s,k} Σ_{w∈Ω} w h_{w,s',k'}` with `h ∈ H^{s'}_{k'}`, solved exactly
/// per bigrade.
pub fn fischer_h_decompose(p: &CliffordPoly) -> Result<DecompositionResult> {
    let m = p.dim();
    let mut out = DecompositionResult::new(p);
    for c in p.bigrade_split() {
        let cert = certified(Theorem::FischerH, m, GradeSet::single(c.s), c.k)?;
        if !solve_into(&mut out, &cert, &c.part)? {
            return Err(not_spanned(Theorem::FischerH, &c.part));
        }
    }
    Ok(out)
}

/// Splits `P` along a refinement (`Homma`, `Infra`, `InfraHarmonic`) per
/// bigrade, or along a monogenic refinement per degree for the given grades
/// and side. Input outside the refined space goes to the residual.
pub fn refine_decompose(
    theorem: Theorem,
    p: &CliffordPoly,
    grades: Option<GradeSet>,
    side: Side,
) -> Result<DecompositionResult> {
    let m = p.dim();
    let mut out = DecompositionResult::new(p);
    match theorem {
        Theorem::Homma | Theorem::Infra | Theorem::InfraHarmonic => {
            for c in p.bigrade_split() {
                let cert = certified(theorem, m, GradeSet::single(c.s), c.k)?;
                if !solve_into(&mut out, &cert, &c.part)? {
                    out.residual.add_assign_unchecked(&c.part);
                }
            }
        }
        Theorem::MonogenicLeft | Theorem::MonogenicRight | Theorem::MoisilTheodoresco => {
            let grades = grades.unwrap_or_else(|| GradeSet::full(m));
            check_grades(m, grades)?;
            let theorem = match theorem {
                Theorem::MonogenicRight => Theorem::MonogenicRight,
                _ => monogenic_theorem(m, grades, side),
            };
            for (k, part) in p.degree_split() {
                let inside = part.filter(|key| grades.contains(key.grade()));
                let outside = part.filter(|key| !grades.contains(key.grade()));
                out.residual.add_assign_unchecked(&outside);
                let cert = certified(theorem, m, grades, k)?;
                if !solve_into(&mut out, &cert, &inside)? {
                    out.residual.add_assign_unchecked(&inside);
                }
            }
        }
        Theorem::FischerH => return fischer_h_decompose(p),
        Theorem::ClassicalHarmonic => return classical_fischer_decompose(p, ClassicalMode::Harmonic),
        Theorem::ClassicalMonogenic => return classical_fischer_decompose(p, ClassicalMode::Monogenic),
        Theorem::ClassicalInfra => return classical_fischer_decompose(p, ClassicalMode::Infra),
        Theorem::Lemma => return Err(Error::UnknownOperator(String::from("lemma is not a decomposition"))),
    }
    Ok(out)
}

/// Classical towers: `P^s_k = ⊕_p |x|^{2p} Ker^s_{k−2p} Δ`, `P_k = ⊕_p x^p M_{k−p}`
/// or `P^s_k = ⊕_p x^p (Ker^s_{k−2p} Δ̃) x^p`.
pub fn classical_fischer_decompose(p: &CliffordPoly, mode: ClassicalMode) -> Result<DecompositionResult> {
    let m = p.dim();
    let mut out = DecompositionResult::new(p);
    match mode {
        ClassicalMode::Harmonic | ClassicalMode::Infra => {
            let theorem = if mode == ClassicalMode::Harmonic {
                Theorem::ClassicalHarmonic
            } else {
                Theorem::ClassicalInfra
            };
            for c in p.bigrade_split() {
                let cert = certified(theorem, m, GradeSet::single(c.s), c.k)?;
                if !solve_into(&mut out, &cert, &c.part)? {
                    return Err(not_spanned(theorem, &c.part));
                }
            }
        }
        ClassicalMode::Monogenic => {
            for (k, part) in p.degree_split() {
                for parity in 0..2 {
                    let grades = parity_grades(m, parity);
                    let piece = part.filter(|key| key.grade() % 2 == parity);
                    if piece.is_zero() {
                        continue;
                    }
                    let cert = certified(Theorem::ClassicalMonogenic, m, grades, k)?;
                    if !solve_into(&mut out, &cert, &piece)? {
                        return Err(not_spanned(Theorem::ClassicalMonogenic, &piece));
                    }
                }
            }
        }
    }
    Ok(out)
}
