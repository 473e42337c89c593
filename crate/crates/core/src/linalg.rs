//! Dense exact linear algebra over the rationals.
//!
//! Elimination runs fraction-free: every row is scaled to a primitive integer
//! vector, rows are combined as `p·rowᵢ − a·row_pivot` and re-made primitive,
//! and only the final pivot rows are divided through by their pivots. The
//! pivot is always the first nonzero entry of the column, scanning top to
//! bottom, so results are deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::clifford::GradeSet;
use crate::error::{Error, Result};
use crate::operators::LinearOperator;
use crate::poly::{monomial_keys, CliffordPoly, TermKey};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(n_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, f: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * f).collect(),
        }
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        if !v.is_zero() && !v.denom().is_one() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&lcm / v.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

/// Gauss-Jordan on integer rows, pivoting only in columns `< limit`.
fn eliminate(rows: &mut [Vec<BigInt>], limit: usize) -> Vec<usize> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == n {
            break;
        }
        let Some(found) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -core::mem::take(v);
            }
        }
        let nz: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
        let p = pivot_row[c].clone();
        let p_is_one = p.is_one();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            if !p_is_one {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v *= &p;
                    }
                }
            }
            for &j in &nz {
                row[j] -= &a * &pivot_row[j];
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_limited(m: &RationalMatrix, limit: usize) -> Rref {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| primitive_integer_row(m.row(r))).collect();
    let pivots = eliminate(&mut rows, limit);
    let mut out = RationalMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.iter().enumerate() {
        let scale = pivots.get(i).map(|&c| row[c].clone());
        for (j, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let q = match &scale {
                Some(p) => Rational::new(v.clone(), p.clone()),
                None => Rational::from_integer(v.clone()),
            };
            out.set(i, j, q);
        }
    }
    let rank = pivots.len();
    Rref {
        matrix: out,
        pivots,
        rank,
    }
}

pub fn rref(m: &RationalMatrix) -> Rref {
    rref_limited(m, m.cols)
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| primitive_integer_row(m.row(r))).collect();
    eliminate(&mut rows, m.cols).len()
}

/// Basis of `{v : Mv = 0}`, one vector per free column: `1` at the free
/// column, minus the reduced column entries at the pivot positions.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                let e = r.matrix.get(i, f);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            v
        })
        .collect()
}

/// Precomputed elimination for repeated "find coordinates" queries against a
/// fixed family of vectors in `Q^n`.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    n: usize,
    count: usize,
    pivots: Vec<usize>,
    transform: RationalMatrix,
}

impl SpanSolver {
    pub fn new(vectors: &[Vec<Rational>], n: usize) -> Self {
        let count = vectors.len();
        let mut aug = RationalMatrix::zeros(n, count + n);
        for (j, v) in vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    aug.set(i, j, x.clone());
                }
            }
        }
        for i in 0..n {
            aug.set(i, count + i, Rational::one());
        }
        let r = rref_limited(&aug, count);
        let mut transform = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = r.matrix.get(i, count + j);
                if !v.is_zero() {
                    transform.set(i, j, v.clone());
                }
            }
        }
        SpanSolver {
            n,
            count,
            pivots: r.pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.count
    }

    /// Coefficients `c` with `Σ cᵢ vᵢ = b`, or `None` if `b` is not in the span.
    /// When the vectors are dependent, the free coefficients are zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.n);
        let mut y = vec![Rational::zero(); self.n];
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let t = self.transform.get(i, j);
                if !t.is_zero() {
                    *yi += t * bj;
                }
            }
        }
        if y[self.rank()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut c = vec![Rational::zero(); self.count];
        for (i, &p) in self.pivots.iter().enumerate() {
            c[p] = y[i].clone();
        }
        Some(c)
    }
}

/// Coordinates of polynomials against an ordered list of term keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyIndex {
    keys: Vec<TermKey>,
}

impl KeyIndex {
    pub fn new(mut keys: Vec<TermKey>) -> Self {
        keys.sort();
        keys.dedup();
        KeyIndex { keys }
    }

    pub fn monomials(m: usize, grades: GradeSet, k: usize) -> Self {
        KeyIndex {
            keys: monomial_keys(m, grades, k),
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[TermKey] {
        &self.keys
    }

    pub fn position(&self, key: &TermKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    /// `None` when `p` has a term outside the indexed keys.
    pub fn coords(&self, p: &CliffordPoly) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.keys.len()];
        for (key, c) in p.terms() {
            v[self.position(key)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, m: usize, coords: &[Rational]) -> CliffordPoly {
        let mut p = CliffordPoly::zero(m);
        for (key, c) in self.keys.iter().zip(coords) {
            p.add_term(*key, c.clone());
        }
        p
    }
}

/// A linearly independent list of polynomials spanning one named space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    m: usize,
    label: String,
    vectors: Vec<CliffordPoly>,
}

impl SubspaceBasis {
    /// Certifies independence; a dependent family is reported with the first
    /// vector that lies in the span of its predecessors.
    pub fn new(m: usize, label: impl Into<String>, vectors: Vec<CliffordPoly>) -> Result<Self> {
        let label = label.into();
        for v in &vectors {
            if v.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: v.dim(),
                });
            }
        }
        let index = KeyIndex::new(vectors.iter().flat_map(|v| v.terms().map(|(k, _)| *k)).collect());
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| primitive_integer_row(&index.coords(v).expect("indexed")))
            .collect();
        if eliminate(&mut rows.clone(), index.len()).len() == rows.len() {
            return Ok(SubspaceBasis { m, label, vectors });
        }
        for (i, v) in vectors.iter().enumerate() {
            let mut trial = rows[..=i].to_vec();
            if eliminate(&mut trial, index.len()).len() <= i {
                return Err(Error::violation(
                    format!("basis {label}"),
                    format!("vector {i} is dependent on the preceding ones"),
                    Some(v.clone()),
                ));
            }
        }
        Ok(SubspaceBasis { m, label, vectors })
    }

    /// For families independent by construction (e.g. nullspace output, which
    /// carries an identity block on the free columns).
    pub(crate) fn trusted(m: usize, label: impl Into<String>, vectors: Vec<CliffordPoly>) -> Self {
        SubspaceBasis {
            m,
            label: label.into(),
            vectors,
        }
    }

    pub fn empty(m: usize, label: impl Into<String>) -> Self {
        Self::trusted(m, label, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vectors(&self) -> &[CliffordPoly] {
        &self.vectors
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn combination(&self, coeffs: &[Rational]) -> CliffordPoly {
        let mut p = CliffordPoly::zero(self.m);
        for (v, c) in self.vectors.iter().zip(coeffs) {
            p.add_scaled_unchecked(v, c);
        }
        p
    }

    pub fn contains(&self, p: &CliffordPoly) -> bool {
        coords_in_basis(p, self).is_ok()
    }
}

/// Exact coordinates of `p` in `basis`, or [`Error::NotInSpan`].
pub fn coords_in_basis(p: &CliffordPoly, basis: &SubspaceBasis) -> Result<Vec<Rational>> {
    if p.dim() != basis.m {
        return Err(Error::DimensionMismatch {
            expected: basis.m,
            found: p.dim(),
        });
    }
    let index = KeyIndex::new(
        basis
            .vectors
            .iter()
            .chain(core::iter::once(p))
            .flat_map(|v| v.terms().map(|(k, _)| *k))
            .collect(),
    );
    let cols: Vec<Vec<Rational>> = basis.vectors.iter().map(|v| index.coords(v).expect("indexed")).collect();
    let solver = SpanSolver::new(&cols, index.len());
    solver.solve(&index.coords(p).expect("indexed")).ok_or(Error::NotInSpan)
}

/// Outcome of a direct-sum certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumReport {
    pub independent: bool,
    pub dims: Vec<usize>,
    /// Rank of all parts together.
    pub total: usize,
    pub fills_ambient: bool,
}

/// Direct-sum check on coordinate vectors in a common `Q^ambient_dim`.
pub fn direct_sum_check_vectors(parts: &[Vec<Vec<Rational>>], ambient_dim: usize) -> Result<DirectSumReport> {
    let all: Vec<Vec<Rational>> = parts.iter().flatten().cloned().collect();
    if all.iter().any(|v| v.len() != ambient_dim) {
        return Err(Error::AmbientMismatch);
    }
    let total = if all.is_empty() {
        0
    } else {
        rank(&RationalMatrix::from_rows(all.clone())?)
    };
    let dims: Vec<usize> = parts.iter().map(Vec::len).collect();
    Ok(DirectSumReport {
        independent: total == all.len(),
        dims,
        total,
        fills_ambient: total == ambient_dim,
    })
}

/// Direct-sum check on polynomial subspaces of a space of dimension `ambient_dim`.
pub fn direct_sum_check(parts: &[&SubspaceBasis], ambient_dim: usize) -> Result<DirectSumReport> {
    let m = parts.first().map_or(0, |p| p.m);
    if parts.iter().any(|p| p.m != m) {
        return Err(Error::AmbientMismatch);
    }
    let index = KeyIndex::new(
        parts
            .iter()
            .flat_map(|p| p.vectors.iter())
            .flat_map(|v| v.terms().map(|(k, _)| *k))
            .collect(),
    );
    if index.len() > ambient_dim {
        return Err(Error::AmbientMismatch);
    }
    let rows: Vec<Vec<Rational>> = parts
        .iter()
        .flat_map(|p| p.vectors.iter())
        .map(|v| index.coords(v).expect("indexed"))
        .collect();
    let total = if rows.is_empty() {
        0
    } else {
        rank(&RationalMatrix::from_rows(rows.clone())?)
    };
    Ok(DirectSumReport {
        independent: total == rows.len(),
        dims: parts.iter().map(|p| p.dim()).collect(),
        total,
        fills_ambient: total == ambient_dim,
    })
}

/// Matrix of a linear operator on the monomial basis of `⊕_{s∈grades} P^s_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub matrix: RationalMatrix,
    pub domain: KeyIndex,
    pub codomain: KeyIndex,
}

/// Columns follow the canonical monomial basis of the domain; rows follow the
/// canonical basis of every bigrade the operator can reach from it.
pub fn operator_matrix(op: &dyn LinearOperator, m: usize, grades: GradeSet, k: usize) -> OperatorMatrix {
    let domain = KeyIndex::monomials(m, grades, k);
    let mut target_keys = Vec::new();
    for (ds, dk) in op.bigrade_shifts() {
        let k2 = k as isize + dk;
        if k2 < 0 {
            continue;
        }
        let mut g = GradeSet::EMPTY;
        for s in grades.iter() {
            let s2 = s as isize + ds;
            if (0..=m as isize).contains(&s2) {
                g.insert(s2 as usize);
            }
        }
        if !g.is_empty() {
            target_keys.extend(monomial_keys(m, g, k2 as usize));
        }
    }
    let codomain = KeyIndex::new(target_keys);
    let mut matrix = RationalMatrix::zeros(codomain.len(), domain.len());
    for (j, key) in domain.keys().iter().enumerate() {
        let image = op.apply_to(&CliffordPoly::monomial(key.alpha, key.blade, Rational::one()));
        for (tk, c) in image.terms() {
            let i = codomain
                .position(tk)
                .expect("operator image outside its declared bigrade shifts");
            matrix.set(i, j, c.clone());
        }
    }
    OperatorMatrix {
        matrix,
        domain,
        codomain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{DerivedOp, OperatorSpec, Primitive};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn is_rref(r: &Rref) -> bool {
        let m = &r.matrix;
        for (i, &p) in r.pivots.iter().enumerate() {
            if !m.get(i, p).is_one() {
                return false;
            }
            if (0..m.rows()).any(|k| k != i && !m.get(k, p).is_zero()) {
                return false;
            }
            if (0..p).any(|c| !m.get(i, c).is_zero()) {
                return false;
            }
        }
        (r.rank..m.rows()).all(|i| m.row(i).iter().all(Zero::is_zero))
            && r.pivots.windows(2).all(|w| w[0] < w[1])
    }

    #[test]
    fn rref_examples() {
        let r = rref(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(r.matrix, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        let id = RationalMatrix::identity(3);
        let r = rref(&id);
        assert_eq!((r.matrix.clone(), r.rank), (id, 3));
        assert_eq!(rref(&RationalMatrix::from_i64(&[&[0]])).rank, 0);
    }

    #[test]
    fn rref_handles_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3), int(1)],
            vec![ratio(2, 3), ratio(-1, 5), int(0)],
        ])
        .unwrap();
        let r = rref(&m);
        assert!(is_rref(&r));
        assert_eq!(r.rank, 2);
        for ns in nullspace(&m) {
            assert!(m.mul_vec(&ns).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])), vec![v(&[-2, 1])]);
        assert!(nullspace(&RationalMatrix::from_i64(&[&[2, 1], &[1, 1]])).is_empty());
        assert_eq!(nullspace(&RationalMatrix::zeros(2, 3)).len(), 3);
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                prop_oneof![3 => Just((0i64, 1i64)), 2 => (-4i64..=4, 1i64..=3)],
                r * c,
            )
            .prop_map(move |entries| {
                let rows = entries
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(p, q)| ratio(p, q)).collect())
                    .collect();
                RationalMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn nullspace_is_exact_kernel(m in arb_matrix(40, 60)) {
            let r = rref(&m);
            let ns = nullspace(&m);
            prop_assert_eq!(ns.len(), m.cols() - r.rank);
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rref_is_idempotent_and_reduced(m in arb_matrix(12, 12)) {
            let r = rref(&m);
            prop_assert!(is_rref(&r));
            let again = rref(&r.matrix);
            prop_assert_eq!(again.matrix, r.matrix.clone());
            prop_assert_eq!(again.pivots, r.pivots);
        }

        #[test]
        fn span_solver_round_trip(m in arb_matrix(10, 6), coeffs in proptest::collection::vec(-5i64..=5, 6)) {
            let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|c| m.column(c)).collect();
            let solver = SpanSolver::new(&cols, m.rows());
            let c: Vec<Rational> = coeffs.iter().take(m.cols()).map(|&x| int(x)).collect();
            let b = m.mul_vec(&c);
            let sol = solver.solve(&b).expect("in span");
            prop_assert_eq!(m.mul_vec(&sol), b);
            if solver.is_independent() {
                prop_assert_eq!(sol, c);
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let e1 = vec![v(&[1, 0])];
        let e2 = vec![v(&[0, 1])];
        let r = direct_sum_check_vectors(&[e1.clone(), e2], 2).unwrap();
        assert!(r.independent && r.fills_ambient);
        let r = direct_sum_check_vectors(&[e1.clone(), e1.clone()], 2).unwrap();
        assert!(!r.independent);
        let r = direct_sum_check_vectors(&[e1], 2).unwrap();
        assert!(r.independent && !r.fills_ambient);
        assert_eq!(r.dims, vec![1]);
        assert_eq!(
            direct_sum_check_vectors(&[vec![v(&[1, 0, 0])]], 2),
            Err(Error::AmbientMismatch)
        );
    }

    fn x(m: usize, i: usize) -> CliffordPoly {
        CliffordPoly::variable(m, i).unwrap()
    }

    #[test]
    fn coords_examples() {
        let b = SubspaceBasis::new(3, "B", vec![x(3, 1), x(3, 2)]).unwrap();
        assert_eq!(coords_in_basis(&x(3, 1), &b).unwrap(), v(&[1, 0]));
        assert_eq!(coords_in_basis(&CliffordPoly::zero(3), &b).unwrap(), v(&[0, 0]));
        let constants = SubspaceBasis::new(3, "C", vec![CliffordPoly::scalar(3, int(1))]).unwrap();
        assert_eq!(coords_in_basis(&x(3, 1), &constants), Err(Error::NotInSpan));
        assert!(matches!(
            SubspaceBasis::new(3, "D", vec![x(3, 1), x(3, 1).scale(&int(2))]),
            Err(Error::TheoremViolation(_))
        ));
    }

    #[test]
    fn operator_matrix_examples() {
        let lap = DerivedOp::Laplacian.spec();
        let om = operator_matrix(&lap, 2, GradeSet::single(0), 2);
        assert_eq!(om.matrix, RationalMatrix::from_i64(&[&[2, 0, 2]]));

        for (m, s, k) in [(2, 1, 2), (3, 0, 3), (3, 2, 1)] {
            let om = operator_matrix(&DerivedOp::Euler.spec(), m, GradeSet::single(s), k);
            let n = om.domain.len();
            assert_eq!(om.matrix, RationalMatrix::identity(n).scale(&int(k as i64)));
        }

        let dd = OperatorSpec::compose(Primitive::DPlus, Primitive::DPlus);
        for (m, s, k) in [(3, 0, 2), (3, 1, 3), (4, 2, 2)] {
            assert!(operator_matrix(&dd, m, GradeSet::single(s), k).matrix.is_zero());
        }
    }
}
