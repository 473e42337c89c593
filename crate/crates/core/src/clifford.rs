//! The real Clifford algebra `R_{0,m}`: generators `e_1..e_m` with
//! `e_i e_j + e_j e_i = -2 δ_ij`.
//!
//! Basis blades are stored as bitmasks (bit `i-1` for `e_i`); the external
//! form is the sorted list of 1-based generator indices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

pub fn check_dim(m: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(m))
    }
}

/// A basis blade `e_{i_1} e_{i_2} ... e_{i_s}` with `i_1 < ... < i_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u16) -> Self {
        Blade(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The generator `e_i` (1-based).
    pub fn generator(i: usize, m: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, m });
        }
        Ok(Blade(1 << (i - 1)))
    }

    /// Builds a blade from a strictly increasing list of 1-based indices.
    pub fn from_indices(indices: &[usize], m: usize) -> Result<Self> {
        let mut bits = 0u16;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > m {
                return Err(Error::IndexOutOfRange { index: i, m });
            }
            if i <= last {
                return Err(Error::UnsortedBlade);
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(Blade(bits))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_valid_for(self, m: usize) -> bool {
        (self.0 as u32) >> m == 0
    }

    /// Geometric product of two blades: `(negative, e_{a Δ b})`.
    ///
    /// The sign counts the transpositions needed to sort the concatenated
    /// index list plus one factor `-1` per repeated generator.
    pub fn product(self, other: Blade) -> (bool, Blade) {
        let mut swaps = 0u32;
        let mut a = self.0;
        while a != 0 {
            let bit = a.trailing_zeros();
            swaps += (other.0 & ((1u16 << bit) - 1)).count_ones();
            a &= a - 1;
        }
        swaps += (self.0 & other.0).count_ones();
        (swaps % 2 == 1, Blade(self.0 ^ other.0))
    }

    /// All blades of dimension `m` whose grade lies in `grades`, by ascending bitmask.
    pub fn all_of_grades(m: usize, grades: GradeSet) -> impl Iterator<Item = Blade> {
        (0u16..(1u16 << m))
            .map(Blade)
            .filter(move |b| grades.contains(b.grade()))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// `e_a e_b = sign · e_c` for blades given as index lists. Sign is `±1`.
pub fn blade_product(a: &[usize], b: &[usize], m: usize) -> Result<(i32, Vec<usize>)> {
    let a = Blade::from_indices(a, m)?;
    let b = Blade::from_indices(b, m)?;
    let (neg, c) = a.product(b);
    Ok((if neg { -1 } else { 1 }, c.indices()))
}

/// A subset of the grades `{0, ..., m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GradeSet(u16);

impl GradeSet {
    pub const EMPTY: GradeSet = GradeSet(0);

    pub fn full(m: usize) -> Self {
        GradeSet((1u16 << (m + 1)) - 1)
    }

    pub fn single(s: usize) -> Self {
        GradeSet(1 << s)
    }

    pub fn new(grades: &[usize], m: usize) -> Result<Self> {
        let mut bits = 0u16;
        for &s in grades {
            if s > m {
                return Err(Error::GradeOutOfRange { grade: s, m });
            }
            bits |= 1 << s;
        }
        Ok(GradeSet(bits))
    }

    pub fn from_bits(bits: u16) -> Self {
        GradeSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        s < 16 && self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |s| self.0 & (1 << s) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(self) -> Option<usize> {
        self.iter().last()
    }

    pub fn is_valid_for(self, m: usize) -> bool {
        (self.0 as u32) >> (m + 1) == 0
    }
}

impl fmt::Display for GradeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, s) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// An element of `R_{0,m}` as a sparse map blade → coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    m: usize,
    terms: BTreeMap<Blade, Rational>,
}

impl Multivector {
    pub fn zero(m: usize) -> Self {
        Multivector {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(m: usize, value: Rational) -> Self {
        Self::blade(m, Blade::SCALAR, value)
    }

    pub fn blade(m: usize, blade: Blade, coeff: Rational) -> Self {
        let mut mv = Self::zero(m);
        mv.add_term(blade, coeff);
        mv
    }

    /// The generator `e_i` (1-based).
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        Ok(Self::blade(m, Blade::generator(i, m)?, Rational::one()))
    }

    /// The 1-vector `Σ c_i e_i`.
    pub fn vector(coords: &[Rational]) -> Result<Self> {
        let m = coords.len();
        check_dim(m)?;
        let mut mv = Self::zero(m);
        for (i, c) in coords.iter().enumerate() {
            mv.add_term(Blade(1 << i), c.clone());
        }
        Ok(mv)
    }

    /// Builds from `(indices, coeff)` pairs, validating every blade.
    pub fn from_terms<'a>(
        m: usize,
        terms: impl IntoIterator<Item = (&'a [usize], Rational)>,
    ) -> Result<Self> {
        check_dim(m)?;
        let mut mv = Self::zero(m);
        for (idx, c) in terms {
            mv.add_term(Blade::from_indices(idx, m)?, c);
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, blade: Blade, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_dim(&self, other: &Multivector) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Multivector {
        if factor.is_zero() {
            return Self::zero(self.m);
        }
        Multivector {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, c * factor))
                .collect(),
        }
    }

    /// The Clifford product `self · other`.
    pub fn product(&self, other: &Multivector) -> Result<Multivector> {
        self.same_dim(other)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &Multivector) -> Multivector {
        let mut out = Self::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (neg, c) = a.product(*b);
                let v = ca * cb;
                out.add_term(c, if neg { -v } else { v });
            }
        }
        out
    }

    /// The grade-`s` part.
    pub fn grade_project(&self, s: usize) -> Multivector {
        Multivector {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == s)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn grades(&self) -> GradeSet {
        let mut g = GradeSet::EMPTY;
        for b in self.terms.keys() {
            g.insert(b.grade());
        }
        g
    }

    /// `Some(s)` when all terms have grade `s` (the zero multivector has none).
    pub fn pure_grade(&self) -> Option<usize> {
        let g = self.grades();
        (g.len() == 1).then(|| g.iter().next().unwrap())
    }

    /// Coefficients of a 1-vector, indexed from 0.
    pub fn vector_coords(&self) -> Result<Vec<Rational>> {
        if self.terms.keys().any(|b| b.grade() != 1) {
            return Err(Error::NotAVector);
        }
        Ok((0..self.m).map(|i| self.coeff(Blade(1 << i))).collect())
    }

    /// Splits `u v` for a 1-vector `u` into the inner part `u•v` (each grade
    /// lowered by one) and the outer part `u∧v` (each grade raised by one),
    /// using `u•v_s = ½(u v_s − (−1)^s v_s u)` and `u∧v_s = ½(u v_s + (−1)^s v_s u)`.
    pub fn vector_split_product(&self, v: &Multivector) -> Result<(Multivector, Multivector)> {
        self.same_dim(v)?;
        if self.pure_grade() != Some(1) {
            return Err(Error::NotAVector);
        }
        let half = Rational::new(1.into(), 2.into());
        let mut inner = Self::zero(self.m);
        let mut outer = Self::zero(self.m);
        for s in v.grades().iter() {
            let vs = v.grade_project(s);
            let uv = self.product_unchecked(&vs);
            let mut vu = vs.product_unchecked(self);
            if s % 2 == 1 {
                vu = vu.neg();
            }
            inner = inner.add(&uv.sub(&vu)?.scale(&half))?;
            outer = outer.add(&uv.add(&vu)?.scale(&half))?;
        }
        Ok((inner, outer))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if b.0 == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){b}")?;
            }
        }
        Ok(())
    }
}
