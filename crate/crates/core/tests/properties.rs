#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use cosetkit::corpus::Corpus;
use cosetkit::cosets::{coset_partition, double_cosets};
use cosetkit::format::{parse_ring, write_ring};
use cosetkit::fp::{compute_fp_dims_from, Start};
use cosetkit::functor::up_relation;
use cosetkit::subring::{all_subrings, close_generated};
use cosetkit::{compute_fp_dims, tol, Axiom, FiniteGroup, FusionRing, RingElement};
use num_rational::Rational64;
use proptest::prelude::*;

fn corpus() -> &'static Corpus {
    static CORPUS: std::sync::OnceLock<Corpus> = std::sync::OnceLock::new();
    CORPUS.get_or_init(Corpus::shipped)
}

fn rings() -> Vec<&'static FusionRing> {
    corpus().rings.values().collect()
}

/// The five axioms evaluated straight from their definitions.
fn naive_axioms(r: &FusionRing) -> BTreeSet<Axiom> {
    let n = r.rank();
    let d = |i: usize| r.dual(i);
    let mut out = BTreeSet::new();
    if (0..n).any(|i| d(i) >= n || d(d(i)) != i) {
        out.insert(Axiom::DualInvolution);
    }
    for j in 0..n {
        for k in 0..n {
            let e = u32::from(j == k);
            if r.n(0, j, k) != e || r.n(j, 0, k) != e {
                out.insert(Axiom::UnitLaw);
            }
        }
    }
    for (a, b, c, x) in itertools(n) {
        let left: u64 = (0..n)
            .map(|m| r.n(a, b, m) as u64 * r.n(m, c, x) as u64)
            .sum();
        let right: u64 = (0..n)
            .map(|m| r.n(b, c, m) as u64 * r.n(a, m, x) as u64)
            .sum();
        if left != right {
            out.insert(Axiom::Associativity);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if r.n(i, j, 0) != u32::from(j == d(i)) {
                out.insert(Axiom::Rigidity);
            }
            for k in 0..n {
                let v = r.n(i, j, k);
                if v != r.n(j, d(k), d(i)) || v != r.n(d(k), i, d(j)) {
                    out.insert(Axiom::FrobeniusReciprocity);
                }
            }
        }
    }
    out
}

fn itertools(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n * n * n * n).map(move |x| (x / (n * n * n), x / (n * n) % n, x / n % n, x % n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn validator_agrees_with_definitions(ring in 0usize..13, pick in 0usize..1000, delta in prop_oneof![Just(-1i64), Just(1), Just(2)]) {
        let r = rings()[ring];
        let n = r.rank();
        let (i, j, k) = (pick % n, pick / n % n, pick / (n * n) % n);
        let mut constants: Vec<_> = r.constants().filter(|c| (c.0, c.1, c.2) != (i, j, k)).collect();
        let v = (r.n(i, j, k) as i64 + delta).max(0) as u32;
        constants.push((i, j, k, v));
        let m = FusionRing::new("mutant", r.labels().to_vec(), r.duals().to_vec(), constants).unwrap();
        prop_assert_eq!(m.validate().axioms(), naive_axioms(&m));
    }

    #[test]
    fn coset_relation_is_symmetric(ring in 0usize..13, a in 0usize..64, b in 0usize..64) {
        let r = rings()[ring];
        let subs = all_subrings(r);
        let (d, e) = (&subs[a % subs.len()], &subs[b % subs.len()]);
        let fp = compute_fp_dims(r, tol::ITERATION, tol::MAX_ITER).unwrap();
        let dec = double_cosets(r, d, e, &fp).unwrap();
        prop_assert!(dec.is_symmetric());
        let s = dec.support_matrix();
        for x in 0..r.rank() {
            for y in 0..r.rank() {
                prop_assert_eq!(s[x][y] > 0, s[y][x] > 0);
            }
        }
        prop_assert!(dec.blocks_are_stable() && dec.blocks_are_irreducible());
        // The unit's class holds D ∪ E.
        let unit_block = &dec.classes().blocks()[dec.block_of(0)];
        for &x in d.members().iter().chain(e.members()) {
            prop_assert!(unit_block.contains(&x));
        }
    }

    #[test]
    fn bilinear_form_identities(ring in 0usize..13, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let r = rings()[ring];
        let n = r.rank();
        let (a, b, c) = (a % n, b % n, c % n);
        let x = |i| RingElement::basis(r, i);
        let m = |p: &RingElement, q: &RingElement| p.form_m(q).unwrap();
        let lhs = m(&x(a), &x(b).mul(&x(c)).unwrap());
        prop_assert_eq!(lhs, m(&x(r.dual(b)), &x(c).mul(&x(r.dual(a))).unwrap()));
        prop_assert_eq!(lhs, m(&x(r.dual(c)), &x(r.dual(a)).mul(&x(b)).unwrap()));
        prop_assert_eq!(lhs, Rational64::from(r.n(b, c, a) as i64));
        prop_assert_eq!(m(&x(a), &x(b)), m(&x(r.dual(b)), &x(r.dual(a))));
    }

    #[test]
    fn closure_is_idempotent_and_monotone(ring in 0usize..13, gens in prop::collection::vec(0usize..64, 0..4), extra in 0usize..64) {
        let r = rings()[ring];
        let n = r.rank();
        let gens: Vec<usize> = gens.into_iter().map(|g| g % n).collect();
        let s = close_generated(r, gens.clone()).unwrap();
        let again = close_generated(r, s.members().to_vec()).unwrap();
        prop_assert_eq!(s.members(), again.members());
        let bigger = close_generated(r, gens.into_iter().chain([extra % n])).unwrap();
        prop_assert!(s.members().iter().all(|x| bigger.contains(*x)));
    }

    #[test]
    fn fp_dims_form_a_character(ring in 0usize..13, seed in any::<u64>()) {
        let r = rings()[ring];
        let fp = compute_fp_dims_from(r, Start::Random(seed), tol::ITERATION, tol::MAX_ITER).unwrap();
        let ones = compute_fp_dims_from(r, Start::Ones, tol::ITERATION, tol::MAX_ITER).unwrap();
        for i in 0..r.rank() {
            prop_assert!(fp.dims[i] >= 1.0 - 1e-9);
            prop_assert!((fp.dims[i] - ones.dims[i]).abs() <= 1e-9);
            for j in 0..r.rank() {
                let rhs: f64 = r.product(i, j).iter().map(|&(k, v)| v as f64 * fp.dims[k]).sum();
                prop_assert!((fp.dims[i] * fp.dims[j] - rhs).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn ring_files_round_trip(ring in 0usize..13) {
        let r = rings()[ring];
        let text = write_ring(r);
        let back = parse_ring(&text).unwrap();
        prop_assert_eq!(write_ring(&back), text);
        prop_assert_eq!(back.validate(), r.validate());
    }

    #[test]
    fn abelian_double_cosets_match_the_oracle(m in 1usize..5, n in 1usize..5, k in 0usize..64, l in 0usize..64) {
        // ℤ/m × ℤ/n with (a, b) encoded as a n + b.
        let order = m * n;
        let table = (0..order * order)
            .map(|x| {
                let (p, q) = (x / order, x % order);
                ((p / n + q / n) % m) * n + (p % n + q % n) % n
            })
            .collect();
        let g = FiniteGroup::new("a", table).unwrap();
        let subgroups = g.subgroups();
        let (k, l) = (&subgroups[k % subgroups.len()], &subgroups[l % subgroups.len()]);
        let ring = g.group_ring();
        let d = cosetkit::Subring::new(&ring, k.iter().copied()).unwrap();
        let e = cosetkit::Subring::new(&ring, l.iter().copied()).unwrap();
        prop_assert_eq!(coset_partition(&ring, &d, &e).unwrap(), g.double_cosets(k, l).unwrap());
    }

    #[test]
    fn functor_relations_are_symmetric(which in 0usize..8) {
        let c = corpus();
        let f = c.resolve(&c.functors[which % c.functors.len()].1).unwrap();
        let up = up_relation(&f);
        for a in 0..f.source().rank() {
            for b in 0..f.source().rank() {
                prop_assert_eq!(up.sim[a][b], up.sim[b][a]);
            }
            for y in 0..f.target().rank() {
                prop_assert_eq!(f.row_support(a).contains(&y), f.column_support(y).contains(&a));
            }
        }
        prop_assert!(f.projection_formula_failures().is_empty());
    }
}
