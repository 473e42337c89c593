//! Random inputs for property runs: polynomials with small rational
//! coefficients and exact rational rotors.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::clifford::{Blade, GradeSet, Multivector};
use crate::error::Result;
use crate::operators::RotorElement;
use crate::poly::{monomial_keys, CliffordPoly};
use crate::rational::{ratio, Rational};

/// A nonzero-or-zero rational `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Random element of `⊕_{s∈grades} P^s_k`. Each monomial is kept with
/// probability `density`; at least one nonzero term is always present when
/// the space is nonzero.
pub fn random_homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    grades: GradeSet,
    k: usize,
    density: f64,
) -> CliffordPoly {
    let keys = monomial_keys(m, grades, k);
    let mut p = CliffordPoly::zero(m);
    for key in &keys {
        if rng.gen_bool(density) {
            p.add_term(*key, random_rational(rng));
        }
    }
    if p.is_zero() && !keys.is_empty() {
        let key = keys[rng.gen_range(0..keys.len())];
        let mut c = random_rational(rng);
        if c.is_zero() {
            c = Rational::one();
        }
        p.add_term(key, c);
    }
    p
}

/// Random element of `P^s_k`.
pub fn random_bihomogeneous<R: Rng + ?Sized>(rng: &mut R, m: usize, s: usize, k: usize) -> CliffordPoly {
    random_homogeneous(rng, m, GradeSet::single(s), k, 0.5)
}

/// Random polynomial of degree at most `max_degree` with all grades mixed.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, m: usize, max_degree: usize) -> CliffordPoly {
    let mut p = CliffordPoly::zero(m);
    for k in 0..=max_degree {
        let part = random_homogeneous(rng, m, GradeSet::full(m), k, 0.25);
        p.add_assign_unchecked(&part);
    }
    p
}

/// Exact rational unit vector: inverse stereographic projection of a random
/// rational point of `Q^{m-1}`, with the pole placed on a random axis.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Multivector {
    let t: Vec<Rational> = (0..m - 1).map(|_| random_rational(rng)).collect();
    let norm: Rational = t.iter().map(|x| x * x).sum();
    let denom = &norm + Rational::one();
    let two = Rational::from_integer(2.into());
    let mut coords: Vec<Rational> = t.iter().map(|x| &two * x / &denom).collect();
    coords.push((&norm - Rational::one()) / &denom);
    let pole = rng.gen_range(0..m);
    coords.swap(pole, m - 1);
    let mut v = Multivector::zero(m);
    for (j, c) in coords.into_iter().enumerate() {
        v.add_term(Blade::from_bits(1 << j), c);
    }
    v
}

/// Product of `1..=max_factors` random rational unit vectors.
pub fn random_rotor<R: Rng + ?Sized>(rng: &mut R, m: usize, max_factors: usize) -> Result<RotorElement> {
    let n = rng.gen_range(1..=max_factors.max(1));
    RotorElement::new((0..n).map(|_| random_unit_vector(rng, m)).collect())
}
