//! Runs every check over a fixture corpus and collects a [`Report`].

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Corpus;
use crate::cosets::{
    coset_partition, coset_product_formula, double_cosets, verify_principal_eigendata,
};
use crate::error::Result;
use crate::fp::{check_regular_absorption, compute_fp_dims_from, FPData, Start};
use crate::functor::{
    analyze, centrality_check, disjoint_or_equal_check, dominant_analysis, is_dominant, kernel,
    normal_image_description, self_trivializing_check, RingFunctor,
};
use crate::grading::{
    component_dim_defect, coset_grading, intermediate_subring_map, universal_grading,
    verify_normal_extension,
};
use crate::group::{quotient_functor, FiniteGroup};
use crate::report::{Report, Status};
use crate::ring::FusionRing;
use crate::subring::{all_subrings, commutator, radical, Subring};
use crate::tol;

/// Exhaustive subring pairs up to this rank, sampled pairs above it.
pub const PAIR_ENUMERATION_MAX_RANK: usize = 8;
pub const SAMPLED_PAIRS: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Assertion tolerance.
    pub tol: f64,
    /// Power-iteration stopping tolerance.
    pub iteration_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: tol::ASSERT,
            iteration_tol: tol::ITERATION,
        }
    }
}

struct Sink<'a> {
    report: &'a mut Report,
    fixture: String,
}

impl Sink<'_> {
    fn name(&self, check: &str) -> String {
        format!("{}/{check}", self.fixture)
    }

    fn check(&mut self, check: &str, ok: bool, detail: impl Into<String>) {
        let name = self.name(check);
        self.report.check(name, ok, detail);
    }

    fn residual(&mut self, check: &str, ok: bool, residual: f64, detail: impl Into<String>) {
        let name = self.name(check);
        self.report
            .push(name, Status::from_bool(ok), detail, Some(residual));
    }

    fn skip(&mut self, check: &str, detail: impl Into<String>) {
        let name = self.name(check);
        self.report.skip(name, detail);
    }

    fn error(&mut self, check: &str, e: impl std::fmt::Display) {
        self.check(check, false, e.to_string());
    }
}

/// Ordered subring pairs to test: all of them for small rings, a seeded sample otherwise.
pub fn subring_pairs<'r>(ring: &'r FusionRing, seed: u64) -> Vec<(Subring<'r>, Subring<'r>)> {
    let subs = all_subrings(ring);
    let all: Vec<(usize, usize)> = (0..subs.len())
        .flat_map(|a| (0..subs.len()).map(move |b| (a, b)))
        .collect();
    let chosen: Vec<(usize, usize)> =
        if ring.rank() <= PAIR_ENUMERATION_MAX_RANK || all.len() <= SAMPLED_PAIRS {
            all
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks: Vec<usize> = sample(&mut rng, all.len(), SAMPLED_PAIRS).into_vec();
            picks.sort_unstable();
            picks.into_iter().map(|i| all[i]).collect()
        };
    chosen
        .into_iter()
        .map(|(a, b)| (subs[a].clone(), subs[b].clone()))
        .collect()
}

fn verify_ring(sink: &mut Sink<'_>, ring: &FusionRing, fp: &Result<FPData>, opts: &VerifyOptions) {
    let fp = match fp {
        Ok(fp) => fp,
        Err(e) => return sink.error("fpdim", e),
    };
    sink.residual(
        "fpdim",
        fp.residual <= tol::RESIDUAL,
        fp.residual,
        format!("FPdim = {:.12}, residual {:.3e}", fp.ring_dim, fp.residual),
    );
    let absorption = check_regular_absorption(ring, fp);
    let defect = absorption.max_defect();
    sink.residual(
        "regular-absorption",
        defect <= opts.tol,
        defect,
        format!("max defect {defect:.3e}"),
    );

    let pairs = subring_pairs(ring, opts.seed);
    let (mut eigen_defect, mut formula_defect) = (0.0f64, 0.0f64);
    let (mut eigen_ok, mut formula_ok, mut blocks_ok) = (true, true, true);
    let mut failure = None;
    for (d, e) in &pairs {
        let dec = match double_cosets(ring, d, e, fp) {
            Ok(dec) => dec,
            Err(err) => return sink.error("cosets-eigen", err),
        };
        match verify_principal_eigendata(&dec, fp, opts.tol, Start::Random(opts.seed)) {
            Ok(rep) => {
                let worst = rep
                    .class_defects
                    .iter()
                    .copied()
                    .fold((rep.eigenvalue - rep.expected).abs(), f64::max);
                eigen_defect = eigen_defect.max(worst);
                if !(rep.passed && worst <= opts.tol && rep.symmetric) && failure.is_none() {
                    failure = Some(format!("D={:?} E={:?}", d.members(), e.members()));
                }
                eigen_ok &= rep.passed && worst <= opts.tol && rep.symmetric;
            }
            Err(err) => return sink.error("cosets-eigen", err),
        }
        for x in 0..ring.rank() {
            match coset_product_formula(&dec, fp, x) {
                Ok(c) => {
                    formula_defect = formula_defect.max(c.defect);
                    formula_ok &= c.passed;
                }
                Err(err) => return sink.error("cosets-formula", err),
            }
        }
        blocks_ok &= dec.blocks_are_stable() && dec.blocks_are_irreducible();
    }
    let scope = if ring.rank() <= PAIR_ENUMERATION_MAX_RANK {
        "all"
    } else {
        "sampled"
    };
    let detail = format!(
        "{} subring pairs ({scope}), max defect {eigen_defect:.3e}",
        pairs.len()
    );
    let detail = match failure {
        Some(f) => format!("{detail}; first failure at {f}"),
        None => detail,
    };
    sink.residual("cosets-eigen", eigen_ok, eigen_defect, detail);
    sink.residual(
        "cosets-formula",
        formula_ok,
        formula_defect,
        format!(
            "{} pairs × {} elements, max defect {formula_defect:.3e}",
            pairs.len(),
            ring.rank()
        ),
    );
    sink.check("cosets-blocks", blocks_ok, format!("{} pairs", pairs.len()));

    match universal_grading(ring) {
        Ok(g) => {
            let defect = component_dim_defect(&g, fp);
            sink.residual(
                "grading-universal",
                defect <= opts.tol,
                defect,
                format!(
                    "{} with group of order {}",
                    g.components().render(ring.labels()),
                    g.group_order()
                ),
            );
            match intermediate_subring_map(&g) {
                Ok(map) => match map.surjective {
                    Some(s) => sink.check(
                        "grading-intermediate",
                        map.injective && s,
                        format!(
                            "{} subgroups, injective {}, surjective {s}",
                            map.entries.len(),
                            map.injective
                        ),
                    ),
                    None => sink.skip("grading-intermediate", "rank above the enumeration cap"),
                },
                Err(e) => sink.error("grading-intermediate", e),
            }
        }
        Err(e) => sink.error("grading-universal", e),
    }
}

fn verify_functor(
    sink: &mut Sink<'_>,
    f: &RingFunctor<'_>,
    fp_src: &FPData,
    fp_tgt: &FPData,
    opts: &VerifyOptions,
) {
    let validation = f.validate();
    let detail = match validation.violations.first() {
        None => "valid".to_string(),
        Some(v) => format!("{} violations, first: {v}", validation.violations.len()),
    };
    sink.check("valid", validation.is_valid(), detail);
    if !validation.is_valid() {
        return sink.skip("analysis", "invalid functor");
    }
    let failures = f.projection_formula_failures();
    sink.check(
        "projection-formula",
        failures.is_empty(),
        format!("{} failing pairs", failures.len()),
    );

    let analysis = match analyze(f, fp_src, fp_tgt) {
        Ok(a) => a,
        Err(e) => return sink.error("analysis", e),
    };
    let src_labels = f.source().labels();
    sink.check(
        "up-classes-r1-cosets",
        analysis.up_classes_are_r1_cosets,
        format!(
            "{} (transitive: {})",
            analysis.up.classes.render(src_labels),
            analysis.up.transitive
        ),
    );
    sink.check(
        "normality-witnesses",
        true,
        format!(
            "{}, kernel {{{}}}",
            if analysis.is_normal {
                "normal"
            } else {
                "not normal"
            },
            analysis.kernel.labels().join(",")
        ),
    );
    match disjoint_or_equal_check(f) {
        Ok(r) => sink.check(
            "disjoint-or-equal",
            r.passed,
            format!("images {}, preimages {}", r.images, r.preimages),
        ),
        Err(e) => sink.error("disjoint-or-equal", e),
    }

    if analysis.is_normal {
        match normal_image_description(f, fp_src, fp_tgt) {
            Ok(r) => sink.residual(
                "image-description",
                r.passed && r.row_defect.max(r.column_defect) <= opts.tol,
                r.row_defect.max(r.column_defect),
                format!(
                    "left cosets {}, left = right {}, transitive {}",
                    r.up_classes_are_left_cosets, r.left_equals_right, r.up_transitive
                ),
            ),
            Err(e) => sink.error("image-description", e),
        }
        match self_trivializing_check(f, fp_src) {
            Ok(r) => sink.residual(
                "self-trivializing",
                r.defect <= opts.tol,
                r.defect,
                format!("FPdim(R(1)) = {:.9}", r.dim),
            ),
            Err(e) => sink.error("self-trivializing", e),
        }
        let ker = &analysis.kernel;
        let (rad, co) = (radical(f.source(), ker), commutator(f.source(), ker));
        sink.check(
            "kernel-radical-commutator",
            rad.members == co.members,
            format!("radical {:?}, commutator {:?}", rad.members, co.members),
        );
        match centrality_check(f.source(), ker, fp_src) {
            Ok(r) => sink.residual(
                "kernel-central",
                r.central,
                r.max_defect,
                format!("supports agree {}", r.supports_agree),
            ),
            Err(e) => sink.error("kernel-central", e),
        }
    } else {
        for check in [
            "image-description",
            "self-trivializing",
            "kernel-radical-commutator",
            "kernel-central",
        ] {
            sink.skip(check, "not normal");
        }
    }

    let dominant = if is_dominant(f) {
        dominant_analysis(f, fp_src, fp_tgt).map(|r| (r, ""))
    } else {
        f.dominant_corestriction().and_then(|(image, entries)| {
            let g = RingFunctor::new(f.name(), f.source(), &image, entries)?;
            let fp_image = compute_fp_dims_from(
                &image,
                Start::Random(opts.seed),
                opts.iteration_tol,
                tol::MAX_ITER,
            )?;
            dominant_analysis(&g, fp_src, &fp_image).map(|r| (r, " on the dominant image"))
        })
    };
    match dominant {
        Ok((r, scope)) => {
            let worst = r
                .image_defects
                .iter()
                .chain(&r.adjoint_defects)
                .copied()
                .fold(r.regular_defect, f64::max);
            let constants: Vec<String> = r
                .adjoint_constants
                .iter()
                .map(|c| format!("{c:.9}"))
                .collect();
            sink.residual(
                "dominant-analysis",
                r.passed && worst <= opts.tol,
                worst,
                format!(
                    "index {:.9}, l = {}, l' = {}, c = [{}]{scope}",
                    r.index,
                    r.up_classes,
                    r.down_classes,
                    constants.join(", ")
                ),
            );
        }
        Err(e) => sink.error("dominant-analysis", e),
    }
}

fn verify_group(sink: &mut Sink<'_>, g: &FiniteGroup, opts: &VerifyOptions) {
    let ring = g.group_ring();
    let validation = ring.validate();
    sink.check(
        "group-ring-valid",
        validation.is_valid(),
        format!("rank {}", ring.rank()),
    );
    if !validation.is_valid() {
        return;
    }
    let subgroups = g.subgroups();
    let mut agree = true;
    for k in &subgroups {
        for l in &subgroups {
            let (d, e) = (
                Subring::new(&ring, k.iter().copied()),
                Subring::new(&ring, l.iter().copied()),
            );
            let ok = match (d, e) {
                (Ok(d), Ok(e)) => match (coset_partition(&ring, &d, &e), g.double_cosets(k, l)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                },
                _ => false,
            };
            agree &= ok;
        }
    }
    sink.check(
        "double-cosets-oracle",
        agree,
        format!("{} subgroup pairs", subgroups.len() * subgroups.len()),
    );

    let normal: Vec<&Vec<usize>> = subgroups
        .iter()
        .filter(|h| g.is_normal_subgroup(h))
        .collect();
    let mut quotients_ok = true;
    let mut extensions_ok = true;
    for n in &normal {
        let Ok(q) = quotient_functor(g, n) else {
            quotients_ok = false;
            continue;
        };
        let Ok(f) = RingFunctor::from_spec(&q.spec, &ring, &q.target) else {
            quotients_ok = false;
            continue;
        };
        quotients_ok &= f.validate().is_valid()
            && crate::functor::is_normal(&f).unwrap_or(false)
            && kernel(&f).is_ok_and(|k| k.members() == n.as_slice());
        let report = Subring::new(&ring, n.iter().copied())
            .and_then(|c1| coset_grading(&ring, &c1))
            .and_then(|grading| verify_normal_extension(&grading, &f));
        extensions_ok &= report.is_ok_and(|r| r.passed);
    }
    sink.check(
        "quotient-functors",
        quotients_ok,
        format!("{} normal subgroups", normal.len()),
    );
    sink.check(
        "normal-extensions",
        extensions_ok,
        format!("{} normal subgroups", normal.len()),
    );

    let fp = compute_fp_dims_from(
        &ring,
        Start::Random(opts.seed),
        opts.iteration_tol,
        tol::MAX_ITER,
    );
    let mut central_ok = true;
    if let Ok(fp) = &fp {
        for h in &subgroups {
            let central = Subring::new(&ring, h.iter().copied())
                .and_then(|d| centrality_check(&ring, &d, fp))
                .is_ok_and(|r| r.central);
            central_ok &= central == g.is_normal_subgroup(h);
        }
    } else {
        central_ok = false;
    }
    sink.check(
        "centrality-iff-normal",
        central_ok,
        format!("{} subgroups", subgroups.len()),
    );

    match universal_grading(&ring)
        .and_then(|gr| intermediate_subring_map(&gr).map(|m| (gr.group_order(), m)))
    {
        Ok((order, map)) => sink.check(
            "pointed-grading",
            order == g.order() && map.is_bijective() && map.entries.len() == subgroups.len(),
            format!(
                "group of order {order}, {} intermediate subrings",
                map.entries.len()
            ),
        ),
        Err(e) => sink.error("pointed-grading", e),
    }
}

/// Checks every fixture in `corpus`. Checks are sorted by fixture file, then check name.
pub fn verify(corpus: &Corpus, opts: &VerifyOptions) -> Report {
    let mut report = Report::new("verify-corpus");
    let mut fps = BTreeMap::new();
    let mut invalid = BTreeMap::new();

    for (name, ring) in &corpus.rings {
        let file = &corpus.ring_files[name];
        let mut sink = Sink {
            report: &mut report,
            fixture: file.clone(),
        };
        let validation = ring.validate();
        if validation.is_valid() {
            sink.check("axioms", true, "valid");
        } else {
            let axioms: Vec<String> = validation.axioms().iter().map(|a| a.to_string()).collect();
            sink.check(
                "axioms",
                false,
                format!(
                    "violates {}; first: {}",
                    axioms.join(", "),
                    validation.violations[0]
                ),
            );
            invalid.insert(name.clone(), ());
            continue;
        }
        let fp = compute_fp_dims_from(
            ring,
            Start::Random(opts.seed),
            opts.iteration_tol,
            tol::MAX_ITER,
        );
        verify_ring(&mut sink, ring, &fp, opts);
        fps.insert(name.clone(), fp);
    }

    for (file, spec) in &corpus.functors {
        let mut sink = Sink {
            report: &mut report,
            fixture: file.clone(),
        };
        let f = match corpus.resolve(spec) {
            Ok(f) => f,
            Err(e) => {
                sink.error("valid", e);
                continue;
            }
        };
        if invalid.contains_key(&spec.source) || invalid.contains_key(&spec.target) {
            sink.skip("analysis", "source or target ring is invalid");
            continue;
        }
        match (&fps[&spec.source], &fps[&spec.target]) {
            (Ok(a), Ok(b)) => verify_functor(&mut sink, &f, a, b, opts),
            _ => sink.skip("analysis", "dimensions unavailable"),
        }
    }

    for (file, g) in &corpus.groups {
        let mut sink = Sink {
            report: &mut report,
            fixture: file.clone(),
        };
        verify_group(&mut sink, g, opts);
    }

    report.checks.sort_by(|a, b| {
        let split = |n: &str| {
            let (f, c) = n.split_once('/').unwrap_or((n, ""));
            (f.to_string(), c.to_string())
        };
        split(&a.name).cmp(&split(&b.name))
    });
    report
}
