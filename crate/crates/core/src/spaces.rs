//! Canonical bases of the polynomial solution spaces.
//!
//! Every space is the exact nullspace of a deterministic operator matrix on
//! the canonical monomial basis, so bases are reproducible run to run. Bases
//! are memoized per `(kind, m, grades, k)` in a process-wide table; all
//! writers compute identical values, so the last write wins harmlessly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use spin::RwLock;

use crate::clifford::{check_dim, GradeSet};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, operator_matrix, KeyIndex, RationalMatrix, SubspaceBasis};
use crate::operators::{DerivedOp, GradedOp, Letter, LinearOperator, OmegaWord, Primitive};
use crate::poly::CliffordPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceKind {
    /// `∂⁺P = 0` and `∂⁻P = 0`.
    Hodge,
    /// `ΔP = 0`.
    Harmonic,
    /// `Δ̃P = 0`.
    Infra,
    /// `∂P = 0`.
    MonoLeft,
    /// `P∂ = 0`.
    MonoRight,
    /// `∂P = 0` for `R^S`-valued `P`; same computation as `MonoLeft`.
    MonoS,
    /// `∂P = 0 = P∂`, cross-checked against `Hodge`.
    TwoSided,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 7] = [
        SpaceKind::Hodge,
        SpaceKind::Harmonic,
        SpaceKind::Infra,
        SpaceKind::MonoLeft,
        SpaceKind::MonoRight,
        SpaceKind::MonoS,
        SpaceKind::TwoSided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Hodge => "hodge",
            SpaceKind::Harmonic => "harmonic",
            SpaceKind::Infra => "infra",
            SpaceKind::MonoLeft => "mono-left",
            SpaceKind::MonoRight => "mono-right",
            SpaceKind::MonoS => "mono-S",
            SpaceKind::TwoSided => "two-sided",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type MemoKey = (SpaceKind, usize, u16, usize);

static MEMO: RwLock<BTreeMap<MemoKey, Arc<SubspaceBasis>>> = RwLock::new(BTreeMap::new());

fn check_bigrade(m: usize, grades: GradeSet) -> Result<()> {
    check_dim(m)?;
    if !grades.is_valid_for(m) {
        return Err(Error::GradeOutOfRange {
            grade: grades.max().unwrap_or(0),
            m,
        });
    }
    Ok(())
}

/// `{x^α e_A : |α| = k, |A| ∈ grades}` in canonical order.
pub fn monomial_basis(m: usize, grades: GradeSet, k: usize) -> Result<SubspaceBasis> {
    check_bigrade(m, grades)?;
    let index = KeyIndex::monomials(m, grades, k);
    let vectors = index
        .keys()
        .iter()
        .map(|key| CliffordPoly::monomial(key.alpha, key.blade, num_traits::One::one()))
        .collect();
    Ok(SubspaceBasis::trusted(m, format!("P^{grades}_{k}"), vectors))
}

/// `dim ⊕_{s∈grades} P^s_k = Σ_s C(m,s) · C(k+m−1, m−1)`.
pub fn ambient_dim(m: usize, grades: GradeSet, k: usize) -> usize {
    let monomials = binomial(k + m - 1, m - 1);
    grades.iter().map(|s| binomial(m, s)).sum::<usize>() * monomials
}

pub(crate) fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Joint kernel of the given operators on `⊕_{s∈grades} P^s_k`.
pub fn joint_kernel(
    ops: &[&dyn LinearOperator],
    m: usize,
    grades: GradeSet,
    k: usize,
    label: impl Into<String>,
) -> Result<SubspaceBasis> {
    check_bigrade(m, grades)?;
    let domain = KeyIndex::monomials(m, grades, k);
    let mut stacked = RationalMatrix::zeros(0, domain.len());
    for op in ops {
        stacked = stacked.vstack(&operator_matrix(*op, m, grades, k).matrix)?;
    }
    let vectors = nullspace(&stacked)
        .into_iter()
        .map(|v| domain.poly(m, &v))
        .collect();
    Ok(SubspaceBasis::trusted(m, label, vectors))
}

fn compute(kind: SpaceKind, m: usize, grades: GradeSet, k: usize) -> Result<SubspaceBasis> {
    let label = format!("{kind}^{grades}_{k}");
    let dplus: crate::operators::OperatorSpec = Primitive::DPlus.into();
    let dminus: crate::operators::OperatorSpec = Primitive::DMinus.into();
    match kind {
        SpaceKind::Hodge => joint_kernel(&[&dplus, &dminus], m, grades, k, label),
        SpaceKind::Harmonic => joint_kernel(&[&DerivedOp::Laplacian.spec()], m, grades, k, label),
        SpaceKind::Infra => joint_kernel(&[&DerivedOp::LaplacianTilde.spec()], m, grades, k, label),
        SpaceKind::MonoLeft | SpaceKind::MonoS => {
            joint_kernel(&[&DerivedOp::Dirac.spec()], m, grades, k, label)
        }
        SpaceKind::MonoRight => joint_kernel(&[&GradedOp::DiracRight], m, grades, k, label),
        SpaceKind::TwoSided => {
            let both = joint_kernel(
                &[&DerivedOp::Dirac.spec(), &GradedOp::DiracRight],
                m,
                grades,
                k,
                label.clone(),
            )?;
            let hodge = space_basis(SpaceKind::Hodge, m, grades, k)?;
            let same_span = both.dim() == hodge.dim()
                && crate::linalg::direct_sum_check(&[&both, &hodge], crate::spaces::ambient_dim(m, grades, k))?
                    .total
                    == hodge.dim();
            if !same_span {
                let witness = both
                    .vectors()
                    .iter()
                    .chain(hodge.vectors())
                    .find(|v| !hodge.contains(v) || !both.contains(v))
                    .cloned();
                return Err(Error::violation(
                    format!("two-sided monogenics m={m} S={grades} k={k}"),
                    format!(
                        "ker ∂ ∩ ker (·∂) has dim {} but the Hodge-de Rham space has dim {}",
                        both.dim(),
                        hodge.dim()
                    ),
                    witness,
                ));
            }
            Ok((*hodge).clone().relabeled(label))
        }
    }
}

/// Canonical basis of the solution space `kind` in `⊕_{s∈grades} P^s_k`.
pub fn space_basis(kind: SpaceKind, m: usize, grades: GradeSet, k: usize) -> Result<Arc<SubspaceBasis>> {
    check_bigrade(m, grades)?;
    let key = (kind, m, grades.bits(), k);
    if let Some(hit) = MEMO.read().get(&key) {
        return Ok(hit.clone());
    }
    let basis = Arc::new(compute(kind, m, grades, k)?);
    MEMO.write().insert(key, basis.clone());
    Ok(basis)
}

/// `H^s_k`, or the zero space when `s ∉ [0, m]` or `k < 0`.
pub fn hodge(m: usize, s: isize, k: isize) -> Result<Arc<SubspaceBasis>> {
    if s < 0 || s > m as isize || k < 0 {
        return Ok(Arc::new(SubspaceBasis::empty(m, format!("H^{s}_{k}"))));
    }
    space_basis(SpaceKind::Hodge, m, GradeSet::single(s as usize), k as usize)
}

/// The empty word and, for each length `1..=max_len`, the two alternating words.
pub fn omega_words(max_len: usize) -> Vec<OmegaWord> {
    let mut out = vec![OmegaWord::empty()];
    for len in 1..=max_len {
        out.push(OmegaWord::alternating(Letter::Wedge, len));
        out.push(OmegaWord::alternating(Letter::Dot, len));
    }
    out
}

/// Whether `w H^s_k` vanishes identically: `x•` applied first to scalars, or
/// `x∧` applied first to pseudoscalars.
pub fn word_kills(w: &OmegaWord, m: usize, s: usize) -> bool {
    match w.first_applied() {
        Some(Letter::Dot) => s == 0,
        Some(Letter::Wedge) => s == m,
        None => false,
    }
}

/// Basis of `w · H^s_k`. Outside the vanishing cases the images of the Hodge
/// basis must stay independent; a dependency is a theorem violation.
pub fn component_space(w: &OmegaWord, m: usize, s: usize, k: usize) -> Result<SubspaceBasis> {
    check_bigrade(m, GradeSet::single(s))?;
    let label = format!("{w}·H^{s}_{k}");
    if word_kills(w, m, s) {
        return Ok(SubspaceBasis::empty(m, label));
    }
    let h = space_basis(SpaceKind::Hodge, m, GradeSet::single(s), k)?;
    image_basis(&h, |p| w.apply(p), label)
}

/// Images of a basis under a linear map, certified independent.
pub(crate) fn image_basis(
    basis: &SubspaceBasis,
    map: impl Fn(&CliffordPoly) -> CliffordPoly,
    label: String,
) -> Result<SubspaceBasis> {
    let m = basis.ambient_dim();
    let images: Vec<CliffordPoly> = basis.vectors().iter().map(&map).collect();
    match SubspaceBasis::new(m, label.clone(), images) {
        Ok(b) => Ok(b),
        Err(Error::TheoremViolation(_)) => {
            // recover a source combination that the map sends to zero
            let index = KeyIndex::new(
                basis
                    .vectors()
                    .iter()
                    .map(&map)
                    .flat_map(|v| v.terms().map(|(k, _)| *k).collect::<Vec<_>>())
                    .collect(),
            );
            let cols: Vec<Vec<crate::rational::Rational>> = basis
                .vectors()
                .iter()
                .map(|v| index.coords(&map(v)).expect("indexed"))
                .collect();
            let mat = RationalMatrix::from_columns(index.len(), &cols);
            let witness = nullspace(&mat).first().map(|c| basis.combination(c));
            Err(Error::violation(
                label,
                "map is not injective on the source space",
                witness,
            ))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_basis_examples() {
        assert_eq!(monomial_basis(3, GradeSet::single(1), 1).unwrap().dim(), 9);
        let b = monomial_basis(2, GradeSet::single(2), 0).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.vectors()[0].terms().next().unwrap().0.blade.indices(), vec![1, 2]);
        assert_eq!(monomial_basis(3, GradeSet::full(3), 2).unwrap().dim(), 48);
        assert_eq!(ambient_dim(3, GradeSet::full(3), 2), 48);
        assert!(monomial_basis(3, GradeSet::single(4), 0).is_err());
        assert!(monomial_basis(9, GradeSet::single(0), 0).is_err());
    }

    #[test]
    fn omega_word_enumeration() {
        assert_eq!(omega_words(0), vec![OmegaWord::empty()]);
        let w2: Vec<String> = omega_words(2).iter().map(|w| format!("{w}")).collect();
        assert_eq!(w2, vec!["1", "w", "d", "wd", "dw"]);
        let w3 = omega_words(3);
        assert_eq!(w3.len(), 7);
        assert_eq!(format!("{}", w3[5]), "wdw");
        assert_eq!(format!("{}", w3[6]), "dwd");
    }

    #[test]
    fn hodge_examples() {
        let h = space_basis(SpaceKind::Hodge, 3, GradeSet::single(0), 0).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.vectors()[0], CliffordPoly::scalar(3, num_traits::One::one()));
        assert_eq!(space_basis(SpaceKind::Hodge, 3, GradeSet::single(1), 1).unwrap().dim(), 5);
        assert_eq!(space_basis(SpaceKind::Hodge, 3, GradeSet::single(0), 2).unwrap().dim(), 0);
        assert_eq!(hodge(3, -1, 2).unwrap().dim(), 0);
        assert_eq!(hodge(3, 1, -1).unwrap().dim(), 0);
    }

    #[test]
    fn component_space_examples() {
        let id = component_space(&OmegaWord::empty(), 3, 1, 1).unwrap();
        assert_eq!(id.dim(), 5);
        for k in 0..3 {
            assert!(component_space(&OmegaWord::parse("d").unwrap(), 3, 0, k).unwrap().is_empty());
        }
        assert!(component_space(&OmegaWord::parse("dw").unwrap(), 3, 3, 0).unwrap().is_empty());
        assert_eq!(component_space(&OmegaWord::parse("wd").unwrap(), 3, 1, 0).unwrap().dim(), 3);
    }
}
