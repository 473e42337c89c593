//! Sparse polynomials `R^m → R_{0,m}` with exact rational coefficients,
//! bigraded by polynomial degree `k` and multivector grade `s`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::clifford::{check_dim, Blade, GradeSet, Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector `α` of the monomial `x^α = x_1^{α_1} ⋯ x_m^{α_m}`.
///
/// Ordered graded-lexicographically: lower degree first, then by the
/// exponent of `x_1` descending, then `x_2`, and so on (so for `m = 2`,
/// `k = 2` the order is `x₁², x₁x₂, x₂²`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    m: u8,
    exps: [u16; MAX_DIM],
}

impl MultiIndex {
    pub fn zero(m: usize) -> Self {
        MultiIndex {
            m: m as u8,
            exps: [0; MAX_DIM],
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        check_dim(exps.len())?;
        let mut out = Self::zero(exps.len());
        for (slot, &e) in out.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::IndexOutOfRange {
                index: e as usize,
                m: u16::MAX as usize,
            })?;
        }
        Ok(out)
    }

    /// `x_i` as a multi-index (0-based `i`).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut out = Self::zero(m);
        out.exps[i] = 1;
        out
    }

    pub fn dim(&self) -> usize {
        self.m as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.m as usize]
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> usize {
        self.exponents().iter().map(|&e| e as usize).sum()
    }

    pub(crate) fn raised(mut self, i: usize) -> Self {
        self.exps[i] += 1;
        self
    }

    pub(crate) fn lowered(mut self, i: usize) -> Self {
        self.exps[i] -= 1;
        self
    }

    pub(crate) fn plus(mut self, other: &MultiIndex) -> Self {
        for (a, b) in self.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        self
    }

    /// All multi-indices of degree `k` in canonical order.
    pub fn all_of_degree(m: usize, k: usize) -> Vec<MultiIndex> {
        fn rec(m: usize, i: usize, left: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
            if i + 1 == m {
                cur.exps[i] = left as u16;
                out.push(*cur);
                return;
            }
            for e in (0..=left).rev() {
                cur.exps[i] = e as u16;
                rec(m, i + 1, left - e, cur, out);
            }
            cur.exps[i] = 0;
        }
        let mut out = Vec::new();
        let mut cur = MultiIndex::zero(m);
        rec(m, 0, k, &mut cur, &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.m.cmp(&other.m))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A term position: monomial first, then blade bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub alpha: MultiIndex,
    pub blade: Blade,
}

impl TermKey {
    pub fn new(alpha: MultiIndex, blade: Blade) -> Self {
        TermKey { alpha, blade }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn grade(&self) -> usize {
        self.blade.grade()
    }
}

/// Canonically ordered term keys spanning `⊕_{s∈grades} P^s_k`.
pub fn monomial_keys(m: usize, grades: GradeSet, k: usize) -> Vec<TermKey> {
    let blades: Vec<Blade> = Blade::all_of_grades(m, grades).collect();
    MultiIndex::all_of_degree(m, k)
        .into_iter()
        .flat_map(|alpha| blades.iter().map(move |b| TermKey::new(alpha, *b)))
        .collect()
}

/// An `R_{0,m}`-valued polynomial `Σ c · x^α e_A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordPoly {
    m: usize,
    terms: BTreeMap<TermKey, Rational>,
}

/// The `(k, s)` bihomogeneous part of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComponent {
    pub k: usize,
    pub s: usize,
    pub part: CliffordPoly,
}

impl CliffordPoly {
    pub fn zero(m: usize) -> Self {
        CliffordPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: &Multivector) -> Self {
        let mut p = Self::zero(value.dim());
        for (b, c) in value.terms() {
            p.add_term(TermKey::new(MultiIndex::zero(value.dim()), b), c.clone());
        }
        p
    }

    pub fn scalar(m: usize, value: Rational) -> Self {
        Self::monomial(MultiIndex::zero(m), Blade::SCALAR, value)
    }

    pub fn monomial(alpha: MultiIndex, blade: Blade, coeff: Rational) -> Self {
        let mut p = Self::zero(alpha.dim());
        p.add_term(TermKey::new(alpha, blade), coeff);
        p
    }

    /// The coordinate function `x_i` (1-based).
    pub fn variable(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, m });
        }
        Ok(Self::monomial(MultiIndex::unit(m, i - 1), Blade::SCALAR, Rational::one()))
    }

    /// The vector variable `x = Σ x_j e_j`.
    pub fn vector_variable(m: usize) -> Self {
        let mut p = Self::zero(m);
        for j in 0..m {
            p.add_term(
                TermKey::new(MultiIndex::unit(m, j), Blade::from_bits(1 << j)),
                Rational::one(),
            );
        }
        p
    }

    /// `|x|² = Σ x_j²`.
    pub fn norm_squared(m: usize) -> Self {
        let mut p = Self::zero(m);
        for j in 0..m {
            let alpha = MultiIndex::unit(m, j).raised(j);
            p.add_term(TermKey::new(alpha, Blade::SCALAR), Rational::one());
        }
        p
    }

    /// Builds from explicit terms, validating dimensions and blades.
    pub fn from_terms(
        m: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Blade, Rational)>,
    ) -> Result<Self> {
        check_dim(m)?;
        let mut p = Self::zero(m);
        for (alpha, blade, c) in terms {
            if alpha.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: alpha.dim(),
                });
            }
            if !blade.is_valid_for(m) {
                return Err(Error::IndexOutOfRange {
                    index: blade.indices().last().copied().unwrap_or(0),
                    m,
                });
            }
            p.add_term(TermKey::new(alpha, blade), c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &TermKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: TermKey, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, key: TermKey, coeff: Rational, negative: bool) {
        self.add_term(key, if negative { -coeff } else { coeff });
    }

    fn same_dim(&self, other: &CliffordPoly) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordPoly) -> Result<CliffordPoly> {
        self.same_dim(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &CliffordPoly) {
        for (k, c) in &other.terms {
            self.add_term(*k, c.clone());
        }
    }

    pub(crate) fn add_scaled_unchecked(&mut self, other: &CliffordPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(*k, c * factor);
        }
    }

    pub fn sub(&self, other: &CliffordPoly) -> Result<CliffordPoly> {
        self.same_dim(other)?;
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &-Rational::one());
        Ok(out)
    }

    pub fn neg(&self) -> CliffordPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> CliffordPoly {
        if factor.is_zero() {
            return Self::zero(self.m);
        }
        CliffordPoly {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// Multiplies every coefficient on the left by the constant `a`.
    pub fn left_mv_multiply(&self, a: &Multivector) -> Result<CliffordPoly> {
        if a.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: a.dim(),
            });
        }
        let mut out = Self::zero(self.m);
        for (key, c) in &self.terms {
            for (b, cb) in a.terms() {
                let (neg, blade) = b.product(key.blade);
                out.add_signed(TermKey::new(key.alpha, blade), cb * c, neg);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient on the right by the constant `a`.
    pub fn right_mv_multiply(&self, a: &Multivector) -> Result<CliffordPoly> {
        if a.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: a.dim(),
            });
        }
        let mut out = Self::zero(self.m);
        for (key, c) in &self.terms {
            for (b, cb) in a.terms() {
                let (neg, blade) = key.blade.product(b);
                out.add_signed(TermKey::new(key.alpha, blade), c * cb, neg);
            }
        }
        Ok(out)
    }

    /// Pointwise Clifford product `(P Q)(x) = P(x) Q(x)`.
    pub fn mul(&self, other: &CliffordPoly) -> Result<CliffordPoly> {
        self.same_dim(other)?;
        let mut out = Self::zero(self.m);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let (neg, blade) = ka.blade.product(kb.blade);
                out.add_signed(TermKey::new(ka.alpha.plus(&kb.alpha), blade), ca * cb, neg);
            }
        }
        Ok(out)
    }

    /// Splits into bihomogeneous parts, ordered by `(k, s)`.
    pub fn bigrade_split(&self) -> Vec<BigradedComponent> {
        let mut parts: BTreeMap<(usize, usize), CliffordPoly> = BTreeMap::new();
        for (key, c) in &self.terms {
            parts
                .entry((key.degree(), key.grade()))
                .or_insert_with(|| Self::zero(self.m))
                .terms
                .insert(*key, c.clone());
        }
        parts
            .into_iter()
            .map(|((k, s), part)| BigradedComponent { k, s, part })
            .collect()
    }

    /// Splits by degree only (all grades kept together), ordered by `k`.
    pub fn degree_split(&self) -> Vec<(usize, CliffordPoly)> {
        let mut parts: BTreeMap<usize, CliffordPoly> = BTreeMap::new();
        for (key, c) in &self.terms {
            parts
                .entry(key.degree())
                .or_insert_with(|| Self::zero(self.m))
                .terms
                .insert(*key, c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn grade_project(&self, s: usize) -> CliffordPoly {
        self.filter(|k| k.grade() == s)
    }

    pub fn degree_project(&self, k: usize) -> CliffordPoly {
        self.filter(|key| key.degree() == k)
    }

    pub(crate) fn filter(&self, keep: impl Fn(&TermKey) -> bool) -> CliffordPoly {
        CliffordPoly {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn grades(&self) -> GradeSet {
        let mut g = GradeSet::EMPTY;
        for key in self.terms.keys() {
            g.insert(key.grade());
        }
        g
    }

    /// Sorted distinct degrees; empty for the zero polynomial.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|k| k.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_bihomogeneous(&self, s: usize, k: usize) -> bool {
        self.terms.keys().all(|key| key.grade() == s && key.degree() == k)
    }

    /// Exact substitution `x = point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Multivector> {
        if point.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: point.len(),
            });
        }
        let mut acc: BTreeMap<Blade, Rational> = BTreeMap::new();
        for (key, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(key.alpha.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            *acc.entry(key.blade).or_insert_with(Rational::zero) += v;
        }
        let mut out = Multivector::zero(self.m);
        for (b, c) in acc {
            out = out.add(&Multivector::blade(self.m, b, c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for CliffordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (key, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in key.alpha.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "x{}", i + 1)?,
                    _ => write!(f, "x{}^{}", i + 1, e)?,
                }
            }
            if key.blade != Blade::SCALAR {
                write!(f, "{}", key.blade)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;
    use proptest::prelude::*;

    fn mono(exps: &[u32], blade: &[usize], c: Rational) -> CliffordPoly {
        let m = exps.len();
        CliffordPoly::monomial(
            MultiIndex::new(exps).unwrap(),
            Blade::from_indices(blade, m).unwrap(),
            c,
        )
    }

    #[test]
    fn canonical_monomial_order() {
        let order = MultiIndex::all_of_degree(2, 2);
        let exps: Vec<Vec<u16>> = order.iter().map(|a| a.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(sorted, order);
        assert!(MultiIndex::new(&[0, 0]).unwrap() < MultiIndex::new(&[0, 1]).unwrap());
        assert_eq!(MultiIndex::all_of_degree(3, 2).len(), 6);
        assert_eq!(MultiIndex::all_of_degree(4, 4).len(), 35);
    }

    #[test]
    fn bigrade_split_examples() {
        let p = mono(&[1, 0], &[], int(1)).add(&mono(&[0, 0], &[1, 2], int(1))).unwrap();
        let parts = p.bigrade_split();
        assert_eq!(parts.len(), 2);
        assert_eq!((parts[0].k, parts[0].s), (0, 2));
        assert_eq!(parts[0].part, mono(&[0, 0], &[1, 2], int(1)));
        assert_eq!((parts[1].k, parts[1].s), (1, 0));
        assert_eq!(parts[1].part, mono(&[1, 0], &[], int(1)));

        assert!(CliffordPoly::zero(3).bigrade_split().is_empty());

        let q = mono(&[1, 0], &[1], int(1)).add(&mono(&[0, 1], &[1], int(1))).unwrap();
        let parts = q.bigrade_split();
        assert_eq!(parts.len(), 1);
        assert_eq!((parts[0].k, parts[0].s), (1, 1));
        assert_eq!(parts[0].part, q);
    }

    #[test]
    fn evaluate_examples() {
        let p = mono(&[2, 0, 0], &[1, 2], int(1));
        let v = p.evaluate(&[int(2), int(0), int(0)]).unwrap();
        assert_eq!(v, Multivector::blade(3, Blade::from_indices(&[1, 2], 3).unwrap(), int(4)));

        let q = mono(&[1, 1, 0], &[], int(1));
        assert_eq!(
            q.evaluate(&[ratio(1, 2), ratio(1, 3), int(0)]).unwrap(),
            Multivector::scalar(3, ratio(1, 6))
        );

        let r = mono(&[0, 0, 0], &[3], int(5)).add(&mono(&[0, 2, 1], &[], int(1))).unwrap();
        assert_eq!(
            r.evaluate(&[int(0), int(0), int(0)]).unwrap(),
            Multivector::blade(3, Blade::from_indices(&[3], 3).unwrap(), int(5))
        );
        assert!(matches!(r.evaluate(&[int(0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn arithmetic_examples() {
        let x1 = CliffordPoly::variable(3, 1).unwrap();
        assert!(x1.add(&x1.neg()).unwrap().is_zero());
        let p = mono(&[0, 1, 0], &[1], int(3));
        assert_eq!(p.scale(&ratio(2, 3)), mono(&[0, 1, 0], &[1], int(2)));
        let e1 = Multivector::generator(3, 1).unwrap();
        assert_eq!(
            mono(&[1, 0, 0], &[1], int(1)).left_mv_multiply(&e1).unwrap(),
            mono(&[1, 0, 0], &[], int(-1))
        );
        assert!(matches!(
            x1.add(&CliffordPoly::zero(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn vector_variable_squares_to_minus_norm() {
        for m in 1..=4 {
            let x = CliffordPoly::vector_variable(m);
            assert_eq!(x.mul(&x).unwrap(), CliffordPoly::norm_squared(m).neg());
        }
    }

    pub(crate) fn arb_poly(m: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = CliffordPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0..=max_deg, m),
                0u16..(1 << m),
                -7i64..=7,
                1i64..=5,
            ),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let mut p = CliffordPoly::zero(m);
            for (exps, b, num, den) in terms {
                p.add_term(
                    TermKey::new(MultiIndex::new(&exps).unwrap(), Blade::from_bits(b)),
                    ratio(num, den),
                );
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn bigrade_split_reconstructs_m2(p in arb_poly(2, 3, 10)) {
            let mut sum = CliffordPoly::zero(2);
            for c in p.bigrade_split() {
                prop_assert!(c.part.is_bihomogeneous(c.s, c.k));
                sum = sum.add(&c.part).unwrap();
            }
            prop_assert_eq!(sum, p);
        }

        #[test]
        fn bigrade_split_reconstructs_m3(p in arb_poly(3, 3, 10)) {
            let sum = p.bigrade_split().iter().fold(CliffordPoly::zero(3), |acc, c| acc.add(&c.part).unwrap());
            prop_assert_eq!(sum, p);
        }

        #[test]
        fn bigrade_split_reconstructs_m4(p in arb_poly(4, 2, 10)) {
            let sum = p.bigrade_split().iter().fold(CliffordPoly::zero(4), |acc, c| acc.add(&c.part).unwrap());
            prop_assert_eq!(sum, p);
        }

        #[test]
        fn evaluate_is_linear(
            p in arb_poly(3, 3, 6),
            q in arb_poly(3, 3, 6),
            pt in proptest::collection::vec((-4i64..=4, 1i64..=3), 3),
        ) {
            let point: Vec<Rational> = pt.into_iter().map(|(a, b)| ratio(a, b)).collect();
            let lhs = p.add(&q).unwrap().evaluate(&point).unwrap();
            let rhs = p.evaluate(&point).unwrap().add(&q.evaluate(&point).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
