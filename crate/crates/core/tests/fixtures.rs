#[path = "support/characters.rs"]
mod characters;

use characters::*;
use cosetkit::corpus::{Corpus, SHIPPED};
use cosetkit::format::parse_group;
use cosetkit::functor::{is_normal, kernel, normality_witnesses};
use cosetkit::group::quotient_functor;
use cosetkit::{compute_fp_dims, tol, RingFunctor};

#[test]
fn shipped_fixtures_match_the_oracle() {
    for (name, contents) in generated_fixtures() {
        let shipped = SHIPPED
            .iter()
            .find(|(f, _)| *f == name)
            .unwrap_or_else(|| panic!("{name} is not shipped"));
        assert_eq!(
            shipped.1, contents,
            "{name} differs from the oracle; rerun gen_fixtures"
        );
    }
}

#[test]
fn every_shipped_fixture_is_valid() {
    let corpus = Corpus::shipped();
    for ring in corpus.rings.values() {
        assert!(ring.validate().is_valid(), "{}", ring.name());
    }
    for (file, spec) in &corpus.functors {
        assert!(
            corpus.resolve(spec).unwrap().validate().is_valid(),
            "{file}"
        );
    }
}

#[test]
fn normality_matches_subgroup_normality() {
    let corpus = Corpus::shipped();
    for (g, h) in restriction_pairs() {
        let spec = g.restriction(&h);
        let f = corpus.functor(&spec.name).unwrap();
        let (definition, unit_class) = normality_witnesses(&f).unwrap();
        assert_eq!(definition, unit_class, "{}", spec.name);
        assert_eq!(
            is_normal(&f).unwrap(),
            g.has_normal_subgroup(&h),
            "{}",
            spec.name
        );
    }
}

#[test]
fn fp_dims_are_character_degrees() {
    let corpus = Corpus::shipped();
    for g in [s3(), s4(), a4(), d4(), q8(), cyclic(5), cyclic(6)] {
        let ring = corpus.ring(&format!("rep_{}", g.name)).unwrap();
        let fp = compute_fp_dims(ring, tol::ITERATION, tol::MAX_ITER).unwrap();
        for (d, deg) in fp.dims.iter().zip(g.degrees()) {
            assert!((d - deg as f64).abs() < 1e-9, "{}: {d} vs {deg}", g.name);
        }
        assert!((fp.ring_dim - g.order() as f64).abs() < 1e-9);
    }
}

#[test]
fn adjoint_unit_is_the_induced_trivial_character() {
    // R(1) has multiplicity ⟨Res χ, 1⟩_H at χ.
    let corpus = Corpus::shipped();
    for (g, h) in restriction_pairs() {
        let f = corpus.functor(&g.restriction(&h).name).unwrap();
        let expected: Vec<i64> = (0..g.chars.len())
            .map(|i| h.inner(|x| g.value(i, x), |_| 1.0.into()).re.round() as i64)
            .collect();
        assert_eq!(f.r1(), expected);
    }
    let f = corpus.functor("res_s4_s3").unwrap();
    assert_eq!(f.r1(), [1, 0, 0, 1, 0]);
}

#[test]
fn kernels_are_characters_trivial_on_the_subgroup() {
    let corpus = Corpus::shipped();
    for (g, h) in restriction_pairs() {
        let f = corpus.functor(&g.restriction(&h).name).unwrap();
        let expected: Vec<usize> = (0..g.chars.len())
            .filter(|&i| {
                let d = g.degree(i) as f64;
                h.elements.iter().all(|x| (g.value(i, x) - d).norm() < 1e-9)
            })
            .collect();
        assert_eq!(
            kernel(&f).unwrap().members(),
            expected.as_slice(),
            "{}",
            h.name
        );
    }
}

#[test]
fn group_files_match_permutation_tables() {
    for g in [s3(), d4(), q8(), a4()] {
        let text = SHIPPED
            .iter()
            .find(|(f, _)| *f == format!("{}.group", g.name))
            .unwrap()
            .1;
        assert_eq!(parse_group(text).unwrap(), g.group());
    }
}

#[test]
fn quaternion_quotient_is_klein_four() {
    let g = q8();
    let group = g.group();
    let centre: Vec<usize> = group.generated([1]);
    assert_eq!(centre, [0, 1]);
    let q = quotient_functor(&group, &centre).unwrap();
    assert_eq!(q.group.order(), 4);
    assert!((0..4).all(|x| q.group.mul(x, x) == 0));
    let source = group.group_ring();
    let f = RingFunctor::from_spec(&q.spec, &source, &q.target).unwrap();
    assert!(f.validate().is_valid());
    assert!(is_normal(&f).unwrap());
    assert_eq!(kernel(&f).unwrap().members(), [0, 1]);
    // ±i, ±j, ±k are not self-dual in ℤQ₈.
    assert!((2..8).all(|x| source.dual(x) != x));
}
