mod common;

use common::*;
use morphic_core::algnum::{AlgebraicNumber, CBox, ModulusClass};
use morphic_core::eigen::{
    analyze, eigenvalue_module, module_equal, spectral_data, verify_eigenvalue, DeltaCase,
    EigenOptions, EigenvalueModule, RecognizabilityStatus,
};
use morphic_core::exactlin::{char_poly, kernel_left, kernel_right, min_poly, qi, qr};
use morphic_core::recog::recognizable;
use morphic_core::returns::{
    coboundary_graph, coboundary_space, derived_sequence, is_periodic, return_words,
    return_words_on,
};
use morphic_core::spectra::{b_graph, compute_b, eigenvalue_dimension, weak_mixing};
use morphic_core::{
    Closure, Morphism, NumberField, RationalMatrix, RationalPolynomial, RationalSubspace,
    WeakMixVerdict, Q,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use std::time::{Duration, Instant};

const DEFECT: f64 = 1e-6;

fn dyadic() -> EigenvalueModule {
    EigenvalueModule::rational(&[qi(1)], Closure::InverseDet(BigInt::from(2)))
}

fn poly(c: &[i64]) -> RationalPolynomial {
    RationalPolynomial::from_ints(c)
}

fn within(start: Instant, secs: u64) {
    assert!(
        start.elapsed() < Duration::from_secs(secs),
        "took {:?}",
        start.elapsed()
    );
}

fn generators_are_eigenvalues(module: &EigenvalueModule, s: &Morphism, tau: &Morphism) {
    for g in module.generators() {
        let d = eigenvalue_defect(&g, s, tau);
        assert!(d < DEFECT, "generator {} has defect {d}", g.render("β"));
    }
}

#[test]
fn criterion_01_thue_morse() {
    let start = Instant::now();
    let tm = thue_morse();
    let module = eigenvalue_module(&tm, &id(&tm)).unwrap();
    assert!(module_equal(&module, &dyadic()));
    generators_are_eigenvalues(&module, &tm, &id(&tm));
    let f = NumberField::rationals();
    assert!(eigenvalue_defect(&f.rational(&qr(3, 8)), &tm, &id(&tm)) < DEFECT);
    assert!(eigenvalue_defect(&f.rational(&qr(1, 3)), &tm, &id(&tm)) > 0.1);
    within(start, 1);
}

#[test]
fn criterion_02_paper_folding() {
    let start = Instant::now();
    let (s, tau) = paper_folding();
    assert_eq!(
        coboundary_space(&s).unwrap(),
        RationalSubspace::span(4, &[q(&[1, -1, 1, -1])])
    );
    let r = analyze(&s, &tau, &EigenOptions::default()).unwrap();
    let perron_column = r.basis.blocks[0].columns(&r.basis.field).len();
    let row: Vec<Option<Q>> = r.cv[0].iter().map(|x| x.as_rational()).collect();
    assert_eq!(perron_column, 1);
    assert_eq!(row[0], Some(qi(8)));
    assert!(row[1..].iter().all(|x| *x == Some(qi(0))));
    assert!(r.cv[1..].iter().flatten().all(|x| x.is_zero()));
    assert_eq!(
        r.w,
        kernel_left(&RationalMatrix::from_ints(&[[0], [1], [0], [-1]]))
    );
    assert!(module_equal(&r.module, &dyadic()));
    generators_are_eigenvalues(&r.module, &s, &tau);
    assert!(
        matches!(r.recognizability, RecognizabilityStatus::Verified { window } if window <= 16)
    );
    assert!(recognizable(&s, &tau, 16).unwrap().is_recognizable());
    assert!(b_graph(&compute_b(&s, &tau).unwrap()).is_connected());
    within(start, 30);
}

#[test]
fn criterion_03_constant_length() {
    let start = Instant::now();
    let s = constant_length();
    assert_eq!(
        coboundary_space(&s).unwrap(),
        RationalSubspace::span(3, &[q(&[1, 1, -1])])
    );
    let r = analyze(&s, &id(&s), &EigenOptions::default()).unwrap();
    assert_eq!(
        r.w,
        RationalSubspace::span(3, &[q(&[1, 1, 0]), q(&[0, 0, 1])])
    );
    let expected = EigenvalueModule::rational(&[qr(1, 2)], Closure::InverseDet(BigInt::from(3)));
    assert!(module_equal(&r.module, &expected));
    generators_are_eigenvalues(&r.module, &s, &id(&s));
    let f = NumberField::rationals();
    assert!(eigenvalue_defect(&f.rational(&qr(1, 18)), &s, &id(&s)) < DEFECT);
    assert!(eigenvalue_defect(&f.rational(&qr(1, 4)), &s, &id(&s)) > 0.1);
    within(start, 5);
}

#[test]
fn criterion_04_jordan_block_at_minus_one() {
    let start = Instant::now();
    let s = jordan_minus_one();
    assert_eq!(
        coboundary_space(&s).unwrap(),
        RationalSubspace::span(4, &[q(&[0, 1, -1, 0])])
    );
    let m = s.abelianization();
    let spec = spectral_data(&m).unwrap();
    let mut values: Vec<Q> = spec
        .noncontracting()
        .iter()
        .map(|e| e.value.as_rational().unwrap())
        .collect();
    values.sort();
    assert_eq!(values, [qi(-1), qi(2)]);
    let minus_one = spec
        .noncontracting()
        .into_iter()
        .find(|e| e.value.as_rational() == Some(qi(-1)))
        .unwrap();
    assert_eq!(minus_one.multiplicity, 2);
    let shifted = m.add(&RationalMatrix::identity(4));
    assert_eq!(kernel_right(&shifted).dim(), 1);
    assert_eq!(kernel_right(&shifted.mul(&shifted)).dim(), 2);
    let module = eigenvalue_module(&s, &id(&s)).unwrap();
    assert!(module_equal(&module, &EigenvalueModule::integers()));
    within(start, 5);
}

#[test]
fn criterion_05_unimodular_with_coboundary() {
    let start = Instant::now();
    let s = golden_with_coboundary();
    let m = s.abelianization();
    assert_eq!(char_poly(&m), &poly(&[-1, 1]) * &poly(&[1, -3, 1]));
    let r = analyze(&s, &id(&s), &EigenOptions::default()).unwrap();
    assert_eq!(r.cv.len(), 2);
    assert_eq!(r.cv[0].len(), 2);
    let det = r.cv[0][0]
        .mul(&r.cv[1][1])
        .sub(&r.cv[0][1].mul(&r.cv[1][0]));
    assert!(!det.is_zero());
    let f = r.perron_vector[0].field().clone();
    let phi = AlgebraicNumber::largest_real_root(&poly(&[-1, -1, 1])).unwrap();
    let phi = f.locate(&phi).unwrap();
    let two = f.rational(&qi(2));
    let expected = [
        two.sub(&phi),
        two.sub(&phi),
        phi.scale(&qi(2)).sub(&f.rational(&qi(3))),
    ];
    assert_eq!(r.perron_vector, expected);
    let ring =
        EigenvalueModule::from_elements(f.clone(), &[f.rational(&qi(1)), phi], Closure::None);
    assert!(module_equal(&r.module, &ring));
    generators_are_eigenvalues(&r.module, &s, &id(&s));
    within(start, 5);
}

#[test]
fn criterion_06_reducible_six_letters() {
    let start = Instant::now();
    let s = reducible_six();
    assert_eq!(
        char_poly(&s.abelianization()),
        &poly(&[-1, 2, -3, 1]) * &poly(&[-1, -1, 0, 1])
    );
    let b = compute_b(&s, &id(&s)).unwrap();
    let plastic = poly(&[-1, -1, 0, 1]);
    let rho = AlgebraicNumber::largest_real_root(&plastic).unwrap();
    let f = NumberField::new(rho.clone());
    let rho_plus_one = f.gen().add(&f.rational(&qi(1))).to_algebraic();
    assert_eq!(b.len(), 2);
    assert!(b.iter().any(|x| x.same(&rho)));
    assert!(b.iter().any(|x| x.same(&rho_plus_one)));
    let g = b_graph(&b);
    let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    assert_eq!(sizes, [2, 2, 2]);
    assert_eq!(eigenvalue_dimension(&s, &id(&s)).unwrap(), 3);
    let module = eigenvalue_module(&s, &id(&s)).unwrap();
    let rho_e = f.gen();
    let expected = EigenvalueModule::from_elements(
        f.clone(),
        &[
            f.rational(&qi(1)),
            rho_e.scale(&qi(3)),
            rho_e.mul(&rho_e).scale(&qi(3)),
        ],
        Closure::None,
    );
    assert!(module_equal(&module, &expected));
    assert_eq!(module.rank(), 3);
    generators_are_eigenvalues(&module, &s, &id(&s));
    within(start, 30);
}

#[test]
fn criterion_07_irreducible_quartic() {
    let start = Instant::now();
    let s = quartic_four();
    let quartic = poly(&[-1, 2, -1, -2, 1]);
    let beta = AlgebraicNumber::largest_real_root(&quartic).unwrap();
    let f = NumberField::new(beta.clone());
    let one_minus_beta = f.rational(&qi(1)).sub(&f.gen());
    assert_eq!(one_minus_beta.minpoly(), quartic);
    let b = compute_b(&s, &id(&s)).unwrap();
    assert_eq!(b.len(), 2);
    assert!(b.iter().any(|x| x.same(&beta)));
    assert!(b.iter().any(|x| x.same(&one_minus_beta.to_algebraic())));
    assert_eq!(b_graph(&b).component_count(), 2);
    assert_eq!(eigenvalue_dimension(&s, &id(&s)).unwrap(), 2);
    let module = eigenvalue_module(&s, &id(&s)).unwrap();
    let sqrt2 = NumberField::new(AlgebraicNumber::largest_real_root(&poly(&[-2, 0, 1])).unwrap());
    let ring = EigenvalueModule::from_elements(
        sqrt2.clone(),
        &[sqrt2.rational(&qi(1)), sqrt2.gen()],
        Closure::None,
    );
    assert!(module_equal(&module, &ring));
    generators_are_eigenvalues(&module, &s, &id(&s));
    within(start, 60);
}

#[test]
fn criterion_08_aperiodicity() {
    let start = Instant::now();
    let tm = thue_morse();
    let seq = derived_sequence(&tm).unwrap();
    assert_eq!(seq[1], sub("012", &["012", "02", "1"]));
    assert_eq!(seq[2], sub("0123", &["01", "23", "013", "2"]));
    assert_eq!(seq[3], seq[2]);
    assert!(!is_periodic(&tm).unwrap());
    let p = sub("abc", &["ab", "c", "abc"]);
    let seq = derived_sequence(&p).unwrap();
    assert_eq!(seq.last().unwrap(), &sub("0", &["00"]));
    assert!(is_periodic(&p).unwrap());
    within(start, 1);
}

#[test]
fn criterion_09_weak_mixing_fixtures() {
    for k in [2, 3] {
        let start = Instant::now();
        let s = itm(k);
        let squared = s.pow(2).unwrap();
        assert_eq!(coboundary_graph(&squared).unwrap().vertex_count(), 1);
        for x in [&s, &squared] {
            assert_eq!(
                weak_mixing(x, &id(x), &EigenOptions::default()).unwrap(),
                WeakMixVerdict::WeaklyMixing
            );
        }
        within(start, 60);
    }
    let start = Instant::now();
    let s = iet_family(2);
    let v = q(&[1, -1, 1, -1, 1, -1, 1]);
    assert_eq!(s.abelianization().apply(&v), v);
    assert!(compute_b(&s, &id(&s))
        .unwrap()
        .iter()
        .any(|x| x.as_rational() == Some(qi(1))));
    assert_eq!(
        weak_mixing(&s, &id(&s), &EigenOptions::default()).unwrap(),
        WeakMixVerdict::WeaklyMixing
    );
    within(start, 60);
}

#[test]
fn criterion_10_cet4_second_substitution() {
    let start = Instant::now();
    let s = cet4_second();
    assert!(coboundary_space(&s)
        .unwrap()
        .contains(&q(&[1, 0, -1, 0, 1, 0, -1, 0])));
    let module = eigenvalue_module(&s, &id(&s)).unwrap();
    let beta = AlgebraicNumber::largest_real_root(&poly(&[-1, 0, -2, 1])).unwrap();
    let f = NumberField::new(beta);
    let b = f.gen();
    let b2 = b.mul(&b);
    let half = qr(1, 2);
    let one = f.rational(&qi(1));
    let expected = EigenvalueModule::from_elements(
        f.clone(),
        &[
            b2.add(&one).scale(&half),
            b2.add(&b).scale(&half),
            b2.clone(),
        ],
        Closure::None,
    );
    assert!(module_equal(&module, &expected));
    generators_are_eigenvalues(&module, &s, &id(&s));
    within(start, 60);
}

fn all_fixtures() -> Vec<(Morphism, Morphism)> {
    let mut out = vec![(thue_morse(), id(&thue_morse())), paper_folding()];
    for s in [
        constant_length(),
        jordan_minus_one(),
        golden_with_coboundary(),
        reducible_six(),
        quartic_four(),
        itm(2),
        itm(3),
        iet_family(2),
        cet4_second(),
    ] {
        let t = id(&s);
        out.push((s, t));
    }
    out
}

fn random_primitive(letters: usize, images: Vec<Vec<usize>>) -> Option<Morphism> {
    let names = &"abcd"[..letters];
    let imgs: Vec<String> = images
        .iter()
        .map(|w| {
            w.iter()
                .map(|&i| names.as_bytes()[i % letters] as char)
                .collect()
        })
        .collect();
    let refs: Vec<&str> = imgs.iter().map(String::as_str).collect();
    let s = Morphism::from_images(names, &refs).ok()?;
    s.is_primitive().then_some(s)
}

fn substitution_strategy() -> impl Strategy<Value = Option<Morphism>> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0usize..n, 1..=4), n)
            .prop_map(move |imgs| random_primitive(n, imgs))
    })
}

fn count_vector(d: usize, w: &[usize]) -> Vec<Q> {
    Morphism::count(d, w)
        .into_iter()
        .map(|c| Q::from_integer(c.into()))
        .collect()
}

#[test]
fn criterion_11_property_suites() {
    let fixtures = all_fixtures();

    // (a) exact witnesses for every reported generator
    for (s, tau) in &fixtures {
        let module = eigenvalue_module(s, tau).unwrap();
        for g in module.generators() {
            assert!(
                verify_eigenvalue(&g, s, tau).unwrap().is_verified(),
                "{}",
                g.render("β")
            );
        }
    }

    let mut runner = TestRunner::new(Config {
        cases: 20,
        ..Config::default()
    });
    let primitive = substitution_strategy()
        .prop_filter("primitive", Option::is_some)
        .prop_map(Option::unwrap);

    // (b) return words: substitution algorithm against a prefix scan
    runner
        .run(&primitive, |s| {
            let (k, a) = fixed_point_seed(&s);
            let fast = return_words(&s.pow(k).unwrap(), a).unwrap();
            let (b, scanned) = scanned_return_words(&s, 50_000);
            prop_assert_eq!(a, b);
            prop_assert_eq!(fast, scanned);
            Ok(())
        })
        .unwrap();

    // (c) coboundary forms vanish on return words on every letter
    runner
        .run(&primitive, |s| {
            let d = s.domain().len();
            let forms = coboundary_graph(&s).unwrap().forms();
            for b in s.domain().letters() {
                for w in return_words_on(&s, b).unwrap() {
                    let c = count_vector(d, &w);
                    for f in &forms {
                        prop_assert!(f.iter().zip(&c).map(|(x, y)| x * y).sum::<Q>().is_zero());
                    }
                }
            }
            Ok(())
        })
        .unwrap();

    // (d) the minimal polynomial annihilates its matrix
    let mut matrices = TestRunner::new(Config {
        cases: 50,
        ..Config::default()
    });
    let matrix = (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n));
    matrices
        .run(&matrix, |rows| {
            let m = RationalMatrix::from_ints(&rows);
            let mu = min_poly(&m);
            prop_assert!(m.eval_poly(&mu).is_zero());
            prop_assert!(char_poly(&m).rem(&mu).is_zero());
            Ok(())
        })
        .unwrap();

    // (e) modulus classes against |∏ roots| = |c₀ / c_n|, certified at 128 bits
    let polys = prop::collection::vec(-6i64..=6, 2..=6)
        .prop_filter("nonzero ends", |c| c[0] != 0 && *c.last().unwrap() != 0);
    matrices
        .run(&polys, |c| {
            let p = poly(&c).squarefree_part();
            let roots = AlgebraicNumber::roots_of(&p);
            prop_assert_eq!(roots.len(), p.degree());
            let mut product = CBox::real(Q::one());
            for r in &roots {
                let b = r.enclosure(128);
                product = product.mul(&b);
                match r.modulus_class() {
                    ModulusClass::LessThanOne => prop_assert!(b.mag2_lower() < Q::one()),
                    ModulusClass::GreaterThanOne => prop_assert!(b.mag2_upper() > Q::one()),
                    ModulusClass::OnUnitCircle => {
                        prop_assert!(b.mag2_lower() <= Q::one() && b.mag2_upper() >= Q::one())
                    }
                }
            }
            let n = p.degree();
            let mut expected = &p.coeff(0) / &p.lc();
            if n % 2 == 1 {
                expected = -expected;
            }
            prop_assert!(product.contains_point(&expected, &Q::zero()));
            let classes: Vec<ModulusClass> =
                roots.iter().map(AlgebraicNumber::modulus_class).collect();
            let size = expected.abs();
            if classes.iter().all(|c| *c == ModulusClass::LessThanOne) {
                prop_assert!(size < Q::one());
            }
            if classes.iter().all(|c| *c == ModulusClass::GreaterThanOne) {
                prop_assert!(size > Q::one());
            }
            if classes.iter().all(|c| *c == ModulusClass::OnUnitCircle) {
                prop_assert!(size.is_one());
            }
            Ok(())
        })
        .unwrap();

    // (f) dimension of the eigenvalue span against the rank of the module
    for (s, tau) in &fixtures {
        let module = eigenvalue_module(s, tau).unwrap();
        assert_eq!(
            eigenvalue_dimension(s, tau).unwrap(),
            module.rank(),
            "{}",
            s.render()
        );
    }
}

#[test]
#[ignore = "slow: allow up to ten minutes"]
fn arnoux_yoccoz_with_preperiod() {
    let start = Instant::now();
    let (s, tau) = arnoux_yoccoz();
    let b = compute_b(&s, &tau).unwrap();
    assert_eq!(b.len(), 1);
    let g = b_graph(&b);
    assert_eq!(g.vertices.len(), 3);
    assert!(g.edges.is_empty());
    let module = eigenvalue_module(&s, &tau).unwrap();
    let beta = AlgebraicNumber::largest_real_root(&poly(&[-1, 1, 1, 1])).unwrap();
    let f = NumberField::new(beta);
    let ring = EigenvalueModule::from_elements(
        f.clone(),
        &[f.rational(&qi(1)), f.gen(), f.gen().mul(&f.gen())],
        Closure::None,
    );
    assert!(module_equal(&module, &ring));
    assert!(matches!(
        analyze(&s, &tau, &EigenOptions::default()).unwrap().case,
        DeltaCase::PseudoUnimodular
    ));
    let plain = compute_b(&s, &id(&s)).unwrap();
    assert!(plain.iter().any(|x| x.as_rational() == Some(qi(1))));
    assert!(b_graph(&plain).is_connected());
    within(start, 600);
}
