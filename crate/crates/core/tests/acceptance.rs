//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p hfischer-core --release --test acceptance -- --nocapture`
//! to see the summary lines.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};

use hfischer_core::decompose::{
    classical_fischer_decompose, fischer_h_decompose, harmonic_infra_intersection, homma_refine,
    inframonogenic_refine, monogenic_refine, ClassicalMode, ComponentLabel, Side, Theorem,
};
use hfischer_core::linalg::rank;
use hfischer_core::operators::{
    dirac_part, dirac_right, dirac_right_literal, euler_literal, ferm_minus_literal, ferm_plus_literal,
    h_action, sandwich_x_literal, x_mul, VectorPart,
};
use hfischer_core::rational::{int, Rational};
use hfischer_core::sample::{random_bihomogeneous, random_poly, random_rotor};
use hfischer_core::spaces::space_basis;
use hfischer_core::verify::lemma_report;
use hfischer_core::{
    CliffordPoly, DerivedOp, GradeSet, Multivector, MultiIndex, Primitive, RationalMatrix,
    SpaceKind, TermKey,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion(n: u32, name: &str, body: impl FnOnce() -> String) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(detail) => println!("criterion {n} [{name}]: PASS ({detail})"),
        Err(e) => {
            println!("criterion {n} [{name}]: FAIL");
            resume_unwind(e);
        }
    }
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Counts exponent tuples of total degree k by brute enumeration.
fn count_monomials(m: usize, k: usize) -> usize {
    fn go(m: usize, k: usize) -> usize {
        if m == 1 {
            return 1;
        }
        (0..=k).map(|first| go(m - 1, k - first)).sum()
    }
    go(m, k)
}

fn dim_p(m: usize, grades: GradeSet, k: usize) -> usize {
    grades.iter().map(|s| binomial(m, s)).sum::<usize>() * count_monomials(m, k)
}

/// Classical count of scalar harmonics of degree k in m variables.
fn dim_scalar_harmonics(m: usize, k: usize) -> usize {
    count_monomials(m, k) - if k >= 2 { count_monomials(m, k - 2) } else { 0 }
}

fn coordinate_laplacian(p: &CliffordPoly) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let e = key.alpha.get(j);
            if e < 2 {
                continue;
            }
            let mut exps: Vec<u32> = key.alpha.exponents().iter().map(|&x| x as u32).collect();
            exps[j] -= 2;
            let term = CliffordPoly::monomial(MultiIndex::new(&exps).unwrap(), key.blade, c * int((e * (e - 1)) as i64));
            out = out.add(&term).unwrap();
        }
    }
    out
}

/// `∂P` built from generator-by-generator Clifford products of multivectors.
fn literal_dirac(p: &CliffordPoly) -> CliffordPoly {
    let m = p.dim();
    let mut out = CliffordPoly::zero(m);
    for (key, c) in p.terms() {
        for j in 0..m {
            let e = key.alpha.get(j);
            if e == 0 {
                continue;
            }
            let mut exps: Vec<u32> = key.alpha.exponents().iter().map(|&x| x as u32).collect();
            exps[j] -= 1;
            let value = Multivector::generator(m, j + 1)
                .unwrap()
                .product(&Multivector::blade(m, key.blade, c * int(e as i64)))
                .unwrap();
            let alpha = MultiIndex::new(&exps).unwrap();
            let term = CliffordPoly::from_terms(m, value.terms().map(|(b, v)| (alpha, b, v.clone()))).unwrap();
            out = out.add(&term).unwrap();
        }
    }
    out
}

fn x(m: usize, i: usize) -> CliffordPoly {
    CliffordPoly::variable(m, i).unwrap()
}

fn wd(p: &CliffordPoly) -> CliffordPoly {
    x_mul(&x_mul(p, VectorPart::Dot), VectorPart::Wedge)
}

fn dw(p: &CliffordPoly) -> CliffordPoly {
    x_mul(&x_mul(p, VectorPart::Wedge), VectorPart::Dot)
}

fn dims(r: &hfischer_core::decompose::Refinement) -> Vec<usize> {
    r.report.dims.iter().map(|d| d.1).collect()
}

fn in_hodge(p: &CliffordPoly) -> bool {
    dirac_part(p, VectorPart::Wedge).is_zero() && dirac_part(p, VectorPart::Dot).is_zero()
}

#[test]
fn criterion_1_lemma_relations() {
    criterion(1, "lemma relations", || {
        let mut checked = 0;
        for m in 2..=4 {
            for s in 0..=m {
                for k in 0..=4 {
                    let r = lemma_report(m, s, k).unwrap();
                    assert!(r.passed(), "m={m} s={s} k={k}: {:?}", r.witness);
                    assert_eq!(r.dims.len(), 9);
                    checked += 1;
                }
            }
        }
        format!("9 relations on {checked} spaces P^s_k")
    });
}

#[test]
fn criterion_2_fischer_h() {
    criterion(2, "H-action Fischer decomposition", || {
        let mut bigrades = 0;
        for m in 2..=3 {
            for s in 0..=m {
                for k in 0..=4 {
                    let grades = GradeSet::single(s);
                    let r = hfischer_core::decompose::theorem_report(Theorem::FischerH, m, grades, k).unwrap();
                    assert!(r.passed(), "m={m} s={s} k={k}: {:?}", r.witness);
                    let total: usize = r.dims.iter().map(|d| d.1).sum();
                    assert_eq!(total, dim_p(m, grades, k), "m={m} s={s} k={k}");
                    assert_eq!(r.target_dim, dim_p(m, grades, k));
                    bigrades += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e01);
        for m in 2..=3 {
            for _ in 0..100 {
                let p = random_poly(&mut rng, m, 4);
                let d = fischer_h_decompose(&p).unwrap();
                assert!(d.residual.is_zero());
                assert_eq!(d.reconstruct(), p);
                for (label, comp) in &d.components {
                    let ComponentLabel::Word { word, s, k } = label else {
                        panic!("unexpected label {label}");
                    };
                    let g = &d.generators[label];
                    assert!(g.is_bihomogeneous(*s, *k) || g.is_zero());
                    assert!(in_hodge(g), "generator of {label} is not in H");
                    assert_eq!(&word.apply(g), comp);
                }
            }
        }
        format!("{bigrades} bigrades certified, 200 random round trips exact")
    });
}

#[test]
fn criterion_3_homma() {
    criterion(3, "Homma refinement", || {
        let mut n = 0;
        for m in 1..=4 {
            for s in 0..=m {
                for k in 0..=4 {
                    let r = homma_refine(m, s, k).unwrap();
                    assert!(r.report.passed(), "m={m} s={s} k={k}: {:?}", r.report.witness);
                    assert_eq!(r.report.target_dim, binomial(m, s) * dim_scalar_harmonics(m, k));
                    n += 1;
                }
            }
        }
        let r = homma_refine(3, 1, 2).unwrap();
        assert_eq!(dims(&r), vec![7, 0, 5, 3]);
        assert_eq!(r.report.target_dim, 15);
        format!("{n} bigrades, fixture (m=3,s=1,k=2) dims (7,0,5,3) of 15")
    });
}

#[test]
fn criterion_4_monogenic() {
    criterion(4, "monogenic and Moisil-Theodoresco refinements", || {
        for m in 1..=4 {
            for k in 0..=4 {
                for side in [Side::Left, Side::Right] {
                    let r = monogenic_refine(m, k, GradeSet::full(m), side).unwrap();
                    assert!(r.report.passed(), "m={m} k={k} {side:?}: {:?}", r.report.witness);
                }
            }
        }
        // every grade set for m = 3 against a kernel built from literal products
        let m = 3;
        let mut sets = 0;
        for bits in 0u16..16 {
            let grades = GradeSet::from_bits(bits);
            for k in 0..=3 {
                let r = monogenic_refine(m, k, grades, Side::Left).unwrap();
                assert!(r.report.passed(), "S={grades} k={k}: {:?}", r.report.witness);
                let keys: Vec<TermKey> = hfischer_core::poly::monomial_keys(m, grades, k);
                let images: Vec<CliffordPoly> = keys
                    .iter()
                    .map(|key| literal_dirac(&CliffordPoly::monomial(key.alpha, key.blade, int(1))))
                    .collect();
                let rows: BTreeSet<TermKey> = images.iter().flat_map(|p| p.terms().map(|(k, _)| *k)).collect();
                let rows: Vec<TermKey> = rows.into_iter().collect();
                let kernel_dim = if rows.is_empty() {
                    keys.len()
                } else {
                    let mut mat = RationalMatrix::zeros(rows.len(), keys.len());
                    for (j, img) in images.iter().enumerate() {
                        for (key, c) in img.terms() {
                            mat.set(rows.binary_search(key).unwrap(), j, c.clone());
                        }
                    }
                    keys.len() - rank(&mat)
                };
                assert_eq!(r.report.target_dim, kernel_dim, "S={grades} k={k}");
                let total: usize = dims(&r).iter().sum();
                assert_eq!(total, kernel_dim, "S={grades} k={k}");
                sets += 1;
            }
        }
        for s in 0..=m {
            for k in 0..=3 {
                let r = monogenic_refine(m, k, GradeSet::single(s), Side::Left).unwrap();
                let hodge = space_basis(SpaceKind::Hodge, m, GradeSet::single(s), k).unwrap();
                assert_eq!(r.components.len(), 1);
                assert_eq!(r.report.target_dim, hodge.dim());
            }
        }
        let r = monogenic_refine(3, 1, GradeSet::new(&[1, 3], 3).unwrap(), Side::Left).unwrap();
        assert_eq!(dims(&r), vec![5, 0, 3]);
        assert_eq!(r.report.target_dim, 8);
        format!("both sides for m<=4, k<=4; {sets} (S,k) pairs for m=3; MT S={{1,3}} dims (5,0,3)")
    });
}

#[test]
fn criterion_5_inframonogenic() {
    criterion(5, "inframonogenic refinement", || {
        let mut eigen = 0;
        for m in 1..=4 {
            for s in 0..=m {
                for k in 0..=4 {
                    let r = inframonogenic_refine(m, s, k).unwrap();
                    assert!(r.report.passed(), "(i) m={m} s={s} k={k}: {:?}", r.report.witness);
                    let r2 = harmonic_infra_intersection(m, s, k).unwrap();
                    assert!(r2.report.passed(), "(ii) m={m} s={s} k={k}: {:?}", r2.report.witness);
                    let h3 = homma_refine(m, s, k).unwrap();
                    assert_eq!(&dims(&r2)[..], &dims(&h3)[..3]);
                    if (1..m).contains(&s) && k >= 2 {
                        let c1 = (k + s) as i64 - 2;
                        let c2 = (k + m - s) as i64 - 2;
                        let lt = DerivedOp::LaplacianTilde.spec();
                        let h = space_basis(SpaceKind::Hodge, m, GradeSet::single(s), k - 2).unwrap();
                        for p in h.vectors() {
                            assert_eq!(lt.apply(&wd(p)), p.scale(&int(-2 * c1 * (c2 + 1))));
                            assert_eq!(lt.apply(&dw(p)), p.scale(&int(2 * (c1 + 1) * c2)));
                            eigen += 1;
                        }
                        let w = &r.components[3].1;
                        for p in h.vectors() {
                            let gen = wd(p).scale(&int((c1 + 1) * c2)).add(&dw(p).scale(&int((c2 + 1) * c1))).unwrap();
                            assert!(w.contains(&gen));
                        }
                    }
                }
            }
        }
        format!("(i) and (ii) for m<=4, k<=4; eigen-identities on {eigen} basis vectors")
    });
}

#[test]
fn criterion_6_identities() {
    criterion(6, "identity suite", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
        let lt = DerivedOp::LaplacianTilde.spec();
        let dt = DerivedOp::DiracTilde.spec();
        let lap = DerivedOp::Laplacian.spec();
        let mut n = 0;
        for m in 2..=4 {
            for i in 0..100 {
                let s = i % (m + 1);
                let k = (i / (m + 1)) % 5;
                let p = random_bihomogeneous(&mut rng, m, s, k);
                let sign = int(if s % 2 == 0 { 1 } else { -1 });
                let full = dirac_part(&p, VectorPart::Full);
                assert_eq!(dirac_right_literal(&full), lt.apply(&p).scale(&sign), "∂P∂");
                assert_eq!(dirac_right_literal(&p), dt.apply(&p).scale(&sign), "P∂");
                assert_eq!(dirac_right(&p), dirac_right_literal(&p));
                let sandwich = dw(&p).sub(&wd(&p)).unwrap().scale(&sign);
                assert_eq!(sandwich_x_literal(&p), sandwich, "xPx");
                assert_eq!(lap.apply(&p), coordinate_laplacian(&p), "Δ");
                let r2p = CliffordPoly::norm_squared(m).mul(&p).unwrap();
                assert_eq!(r2p, wd(&p).add(&dw(&p)).unwrap().neg(), "|x|²");
                assert_eq!(euler_literal(&p), p.scale(&int(k as i64)), "E");
                assert_eq!(Primitive::Euler.apply(&p), euler_literal(&p));
                assert_eq!(ferm_plus_literal(&p), p.scale(&int(s as i64)), "∂⁺⌋");
                assert_eq!(Primitive::FermPlus.apply(&p), ferm_plus_literal(&p));
                assert_eq!(ferm_minus_literal(&p), p.scale(&int((m - s) as i64)), "∂⁻⌉");
                assert_eq!(Primitive::FermMinus.apply(&p), ferm_minus_literal(&p));
                n += 1;
            }
        }
        format!("8 identities on {n} random bihomogeneous polynomials")
    });
}

#[test]
fn criterion_7_equivariance() {
    criterion(7, "H-equivariance", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4ac7);
        let prims = [Primitive::DPlus, Primitive::DMinus, Primitive::XWedge, Primitive::XDot];
        for m in 2..=3 {
            for _ in 0..20 {
                let r = random_rotor(&mut rng, m, 3).unwrap();
                let p = random_poly(&mut rng, m, 3);
                let hp = h_action(&r, &p).unwrap();
                for op in prims {
                    assert_eq!(
                        op.apply(&hp),
                        h_action(&r, &op.apply(&p)).unwrap(),
                        "{op:?} does not commute with the H-action"
                    );
                }
                let d = fischer_h_decompose(&p).unwrap();
                let dh = fischer_h_decompose(&hp).unwrap();
                let labels: BTreeSet<&ComponentLabel> = d.components.keys().chain(dh.components.keys()).collect();
                for label in labels {
                    assert_eq!(h_action(&r, &d.component(label)).unwrap(), dh.component(label), "{label}");
                }
            }
        }
        String::from("20 rotors per m in {2,3}: 4 primitives and all Fischer components")
    });
}

#[test]
fn criterion_8_towers() {
    criterion(8, "classical towers", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x70e5);
        let lt = DerivedOp::LaplacianTilde.spec();
        let mut n = 0;
        for m in 2..=3 {
            for s in 0..=m {
                for k in 0..=4 {
                    for _ in 0..100 {
                        let p = random_bihomogeneous(&mut rng, m, s, k);
                        for mode in [ClassicalMode::Harmonic, ClassicalMode::Monogenic, ClassicalMode::Infra] {
                            let d = classical_fischer_decompose(&p, mode).unwrap();
                            assert!(d.residual.is_zero());
                            assert_eq!(d.reconstruct(), p);
                            for (label, comp) in &d.components {
                                let g = &d.generators[label];
                                match *label {
                                    ComponentLabel::Radial { p: pw, .. } => {
                                        assert!(coordinate_laplacian(g).is_zero());
                                        let mut img = g.clone();
                                        for _ in 0..pw {
                                            img = CliffordPoly::norm_squared(m).mul(&img).unwrap();
                                        }
                                        assert_eq!(&img, comp);
                                    }
                                    ComponentLabel::VectorPower { p: pw, .. } => {
                                        assert!(literal_dirac(g).is_zero());
                                        let mut img = g.clone();
                                        for _ in 0..pw {
                                            img = CliffordPoly::vector_variable(m).mul(&img).unwrap();
                                        }
                                        assert_eq!(&img, comp);
                                    }
                                    ComponentLabel::Sandwich { p: pw, .. } => {
                                        assert!(lt.apply(g).is_zero());
                                        let xv = CliffordPoly::vector_variable(m);
                                        let mut img = g.clone();
                                        for _ in 0..pw {
                                            img = xv.mul(&img).unwrap().mul(&xv).unwrap();
                                        }
                                        assert_eq!(&img, comp);
                                    }
                                    _ => panic!("unexpected label {label}"),
                                }
                            }
                        }
                        n += 1;
                    }
                }
            }
        }

        let m = 3;
        let x1sq = x(m, 1).mul(&x(m, 1)).unwrap();
        let r2 = CliffordPoly::norm_squared(m);
        let third = Rational::new(1.into(), 3.into());
        let h0 = x1sq.sub(&r2.scale(&third)).unwrap();
        let d = classical_fischer_decompose(&x1sq, ClassicalMode::Harmonic).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.component(&ComponentLabel::Radial { p: 0, s: 0, k: 2 }), h0);
        assert_eq!(d.generators[&ComponentLabel::Radial { p: 1, s: 0, k: 0 }], CliffordPoly::scalar(m, third.clone()));
        let d = classical_fischer_decompose(&x1sq, ClassicalMode::Infra).unwrap();
        assert_eq!(d.generators[&ComponentLabel::Sandwich { p: 0, s: 0, k: 2 }], h0);
        assert_eq!(d.generators[&ComponentLabel::Sandwich { p: 1, s: 0, k: 0 }], CliffordPoly::scalar(m, -third));
        let xv = CliffordPoly::vector_variable(m);
        let d = classical_fischer_decompose(&xv, ClassicalMode::Monogenic).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.generators[&ComponentLabel::VectorPower { p: 1, k: 0 }], CliffordPoly::scalar(m, int(1)));
        format!("{n} random polynomials through 3 towers; x1^2 and x examples exact")
    });
}
