//! `cosetkit`: fusion rings, double cosets and ring-level tensor functors.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on parse, I/O or usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cosetkit::corpus::Corpus;
use cosetkit::cosets::{coset_product_formula, double_cosets, verify_principal_eigendata};
use cosetkit::format::{parse_group, parse_ring, read_file, write_functor, write_ring};
use cosetkit::fp::{compute_fp_dims_from, Start};
use cosetkit::functor::{
    analyze, centrality_check, disjoint_or_equal_check, dominant_analysis, is_dominant,
    normal_image_description, power_closure_mismatches, self_trivializing_check,
};
use cosetkit::grading::{
    intermediate_subring_map, universal_grading, verify_normal_extension, Grading,
};
use cosetkit::group::{quotient_functor, FiniteGroup};
use cosetkit::subring::{adjoint_subring, close_generated, commutator, radical};
use cosetkit::verify::{verify, VerifyOptions};
use cosetkit::{tol, Error, FPData, FusionRing, Partition, Report, Subring};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cosetkit",
    version,
    about = "Fusion rings, double cosets and ring-level tensor functors"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance override: the iteration tolerance for `fpdim`, the assertion tolerance elsewhere.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the random power-iteration start and pair sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check ring axioms and functor invariants.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Extra ring files used to resolve functors.
        #[arg(long, num_args = 1..)]
        rings: Vec<PathBuf>,
    },
    /// Frobenius–Perron dimensions.
    Fpdim { ring: PathBuf },
    /// Double cosets relative to a left and a right subring.
    Cosets {
        ring: PathBuf,
        /// Left subring: `0,1,4` or `gen=2,3`. Defaults to the trivial subring.
        #[arg(long)]
        left: Option<String>,
        /// Right subring, same syntax.
        #[arg(long)]
        right: Option<String>,
        /// Check the principal eigendata of T and the product formula.
        #[arg(long)]
        verify: bool,
    },
    /// Validate and describe a functor.
    Functor {
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        rings: Vec<PathBuf>,
        /// Run the structural checks as well.
        #[arg(long)]
        analyze: bool,
    },
    /// Universal grading (or the `grade` lines of the file) and the intermediate-subring map.
    Grading {
        ring: PathBuf,
        /// Normal functor whose kernel is the trivial component.
        #[arg(long)]
        verify_extension: Option<PathBuf>,
        /// Ring files for the witness target.
        #[arg(long, num_args = 1..)]
        rings: Vec<PathBuf>,
    },
    /// Simples some power of which lies in the given subring.
    Radical {
        ring: PathBuf,
        #[arg(long)]
        sub: String,
    },
    /// Simples X with X X* supported in the given subring.
    Commutator {
        ring: PathBuf,
        #[arg(long)]
        sub: String,
    },
    /// The adjoint subring.
    Adjoint { ring: PathBuf },
    /// Generate fixtures from group tables.
    #[command(subcommand)]
    Gen(Gen),
    /// Brute-force group oracles.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Run every check over fixture files or directories (the shipped corpus if none given).
    VerifyCorpus { paths: Vec<PathBuf> },
}

#[derive(Subcommand)]
enum Gen {
    /// The pointed ring Z[G].
    GroupRing { group: PathBuf },
    /// The functor Z[G] → Z[G/N].
    QuotientFunctor {
        group: PathBuf,
        /// Elements of the normal subgroup, e.g. `0,4,5`.
        #[arg(long)]
        n: String,
        /// Also write the target ring Z[G/N] here.
        #[arg(long)]
        target_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Double cosets K\G/L by enumeration.
    DoubleCosets {
        group: PathBuf,
        #[arg(long)]
        k: String,
        #[arg(long)]
        l: String,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A check failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Io { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DuplicateConstant(..)
            | Error::Structure(_)
            | Error::LengthMismatch { .. }
            | Error::UnknownRing(_)
            | Error::InvalidGroup(_)
            | Error::InvalidSubring(_)
            | Error::NotSubgroup(_)
            | Error::NotNormalSubgroup(_)
            | Error::RingMismatch => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    json: bool,
    tol: Option<f64>,
    seed: u64,
}

impl Ctx {
    fn assert_tol(&self) -> f64 {
        self.tol.unwrap_or(tol::ASSERT)
    }

    fn fp(&self, ring: &FusionRing) -> Result<FPData, Error> {
        compute_fp_dims_from(
            ring,
            Start::Random(self.seed),
            tol::ITERATION,
            tol::MAX_ITER,
        )
    }

    fn emit(&self, text: String, value: Value) {
        if self.json {
            out(&format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("json")
            ));
        } else {
            out(&text);
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn load_ring(path: &Path) -> Result<FusionRing, Failure> {
    let text = read_file(path)?;
    parse_ring(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<FiniteGroup, Failure> {
    let text = read_file(path)?;
    parse_group(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Input(format!("bad index {t:?}")))
        })
        .collect()
}

/// `0,1,4` (validated members) or `gen=2,3` (generated closure).
fn parse_sub<'r>(ring: &'r FusionRing, spec: Option<&str>) -> Result<Subring<'r>, Failure> {
    match spec {
        None => Ok(Subring::trivial(ring)),
        Some(s) => match s.strip_prefix("gen=") {
            Some(gens) => Ok(close_generated(ring, parse_indices(gens)?)?),
            None => Ok(Subring::new(ring, parse_indices(s)?)?),
        },
    }
}

fn labels_of(ring: &FusionRing, members: &[usize]) -> Vec<String> {
    members.iter().map(|&i| ring.label(i).to_string()).collect()
}

fn blocks_json(p: &Partition, labels: &[String]) -> Value {
    json!(p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn report_outcome(ctx: &Ctx, report: &Report) -> Outcome {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for c in report.failures() {
        eprintln!("failed: {}: {}", c.name, c.detail);
    }
    if ctx.json {
        out(&format!("{}\n", report.to_json()));
    } else {
        out(&report.render_text());
    }
    Ok(report.passed())
}

fn validate(ctx: &Ctx, files: &[PathBuf], rings: &[PathBuf]) -> Outcome {
    let all: Vec<PathBuf> = files.iter().chain(rings).cloned().collect();
    let (corpus, warnings) = Corpus::load(&all)?;
    let mut report = Report::new("validate");
    report.warnings = warnings;
    for (name, ring) in &corpus.rings {
        let v = ring.validate();
        let detail = match v.violations.first() {
            None => "valid".to_string(),
            Some(first) => {
                let axioms: Vec<String> = v.axioms().iter().map(|a| a.to_string()).collect();
                format!("violates {}; first: {first}", axioms.join(", "))
            }
        };
        report.check(
            format!("{}/axioms", corpus.ring_files[name]),
            v.is_valid(),
            detail,
        );
    }
    for (file, spec) in &corpus.functors {
        let f = corpus.resolve(spec)?;
        let v = f.validate();
        let detail = match v.violations.first() {
            None => "valid".to_string(),
            Some(first) => format!("{} violations; first: {first}", v.violations.len()),
        };
        report.check(format!("{file}/invariants"), v.is_valid(), detail);
    }
    for (file, g) in &corpus.groups {
        report.check(
            format!("{file}/group"),
            true,
            format!("order {}", g.order()),
        );
    }
    report.sort();
    report_outcome(ctx, &report)
}

fn fpdim(ctx: &Ctx, path: &Path) -> Outcome {
    let ring = load_ring(path)?;
    let fp = compute_fp_dims_from(
        &ring,
        Start::Random(ctx.seed),
        ctx.tol.unwrap_or(tol::ITERATION),
        tol::MAX_ITER,
    )?;
    let mut text = String::new();
    for (l, d) in ring.labels().iter().zip(&fp.dims) {
        text += &format!("{l}\t{d:.12}\n");
    }
    text += &format!(
        "FPdim\t{:.12}\nresidual\t{:.3e}\n",
        fp.ring_dim, fp.residual
    );
    ctx.emit(
        text,
        json!({"ring": ring.name(), "labels": ring.labels(), "dims": fp.dims, "ring_dim": fp.ring_dim, "residual": fp.residual}),
    );
    Ok(true)
}

fn cosets(ctx: &Ctx, path: &Path, left: Option<&str>, right: Option<&str>, check: bool) -> Outcome {
    let ring = load_ring(path)?;
    let (d, e) = (parse_sub(&ring, left)?, parse_sub(&ring, right)?);
    let fp = ctx.fp(&ring)?;
    let dec = double_cosets(&ring, &d, &e, &fp)?;
    let mut text = format!("{}\n", dec.classes().render(ring.labels()));
    let mut value = json!({
        "ring": ring.name(),
        "left": labels_of(&ring, d.members()),
        "right": labels_of(&ring, e.members()),
        "blocks": blocks_json(dec.classes(), ring.labels()),
    });
    let mut ok = true;
    if check {
        let tol = ctx.assert_tol();
        let eigen = verify_principal_eigendata(&dec, &fp, tol, Start::Random(ctx.seed))?;
        let mut formula = Vec::new();
        for x in 0..ring.rank() {
            formula.push(coset_product_formula(&dec, &fp, x)?);
        }
        ok = eigen.passed && formula.iter().all(|c| c.passed);
        text += &format!(
            "eigenvalue {:.12} (expected {:.12}), T symmetric {}, irreducible blocks {}: {}\n",
            eigen.eigenvalue,
            eigen.expected,
            eigen.symmetric,
            eigen.irreducible_blocks,
            if eigen.passed { "pass" } else { "fail" }
        );
        for (x, c) in formula.iter().enumerate() {
            text += &format!(
                "R_D {} R_E = {:.9} A{}  defect {:.3e}\n",
                ring.label(x),
                c.scalar,
                c.class,
                c.defect
            );
        }
        value["eigen"] = json!(eigen);
        value["formula"] = json!(formula);
    }
    ctx.emit(text, value);
    Ok(ok)
}

fn functor(ctx: &Ctx, file: &Path, rings: &[PathBuf], full: bool) -> Outcome {
    let all: Vec<PathBuf> = std::iter::once(file.to_path_buf())
        .chain(rings.iter().cloned())
        .collect();
    let (corpus, _) = Corpus::load(&all)?;
    let spec = corpus
        .functors
        .first()
        .map(|(_, s)| s)
        .ok_or_else(|| Failure::Input(format!("{}: not a functor file", file.display())))?;
    let f = corpus.resolve(spec)?;
    let validation = f.validate();
    let mut text = String::new();
    let mut value =
        json!({"functor": f.name(), "source": f.source().name(), "target": f.target().name()});
    value["violations"] = json!(validation
        .violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>());
    if !validation.is_valid() {
        for v in &validation.violations {
            eprintln!("violation: {v}");
        }
        text += &format!(
            "{}: invalid ({} violations)\n",
            f.name(),
            validation.violations.len()
        );
        ctx.emit(text, value);
        return Ok(false);
    }
    let (src, tgt) = (f.source(), f.target());
    let (fp_src, fp_tgt) = (ctx.fp(src)?, ctx.fp(tgt)?);
    let a = analyze(&f, &fp_src, &fp_tgt)?;
    text += &format!("{}: valid\n", f.name());
    text += &format!("kernel: {{{}}}\n", a.kernel.labels().join(","));
    text += &format!(
        "dominant image: {{{}}}\n",
        a.dominant_image.labels().join(",")
    );
    text += &format!(
        "up classes: {} (transitive: {})\n",
        a.up.classes.render(src.labels()),
        a.up.transitive
    );
    text += &format!("down classes: {}\n", a.down.classes.render(tgt.labels()));
    text += &format!(
        "normal: {}\ndominant: {}\nindex: {:.9}\n",
        a.is_normal, a.is_dominant, a.index
    );
    value["kernel"] = json!(labels_of(src, a.kernel.members()));
    value["dominant_image"] = json!(labels_of(tgt, a.dominant_image.members()));
    value["up_classes"] = blocks_json(&a.up.classes, src.labels());
    value["up_transitive"] = json!(a.up.transitive);
    value["down_classes"] = blocks_json(&a.down.classes, tgt.labels());
    value["normal"] = json!(a.is_normal);
    value["dominant"] = json!(a.is_dominant);
    value["index"] = json!(a.index);

    let mut ok = true;
    if full {
        let tol = ctx.assert_tol();
        let mut checks = serde_json::Map::new();
        let mut rows = Vec::new();
        let mut line = |name: &str, pass: bool, detail: String, v: Value, ok: &mut bool| {
            *ok &= pass;
            rows.push(format!(
                "{:<4} {name}  {detail}\n",
                if pass { "pass" } else { "fail" }
            ));
            checks.insert(name.to_string(), v);
        };
        line(
            "up-classes-r1-cosets",
            a.up_classes_are_r1_cosets,
            String::new(),
            json!(a.up_classes_are_r1_cosets),
            &mut ok,
        );
        let failures = f.projection_formula_failures();
        line(
            "projection-formula",
            failures.is_empty(),
            format!("{} failing pairs", failures.len()),
            json!(failures),
            &mut ok,
        );
        let d = disjoint_or_equal_check(&f)?;
        line(
            "disjoint-or-equal",
            d.passed,
            format!("images {}, preimages {}", d.images, d.preimages),
            json!(d),
            &mut ok,
        );
        let mismatches = power_closure_mismatches(&f)?;
        let closure_info = format!(
            "info F(R(1))-power closure differs from the down class at {{{}}}\n",
            labels_of(tgt, &mismatches).join(",")
        );
        if a.is_normal {
            let r = normal_image_description(&f, &fp_src, &fp_tgt)?;
            let defect = r.row_defect.max(r.column_defect);
            line(
                "image-description",
                r.passed && defect <= tol,
                format!("defect {defect:.3e}"),
                json!(r),
                &mut ok,
            );
            let s = self_trivializing_check(&f, &fp_src)?;
            line(
                "self-trivializing",
                s.defect <= tol,
                format!("FPdim(R(1)) = {:.9}", s.dim),
                json!(s),
                &mut ok,
            );
            let c = centrality_check(src, &a.kernel, &fp_src)?;
            line(
                "kernel-central",
                c.central,
                format!("defect {:.3e}", c.max_defect),
                json!(c),
                &mut ok,
            );
            let (rad, co) = (radical(src, &a.kernel), commutator(src, &a.kernel));
            line(
                "kernel-radical-commutator",
                rad.members == co.members,
                format!("radical {{{}}}", labels_of(src, &rad.members).join(",")),
                json!({"radical": rad.members, "commutator": co.members}),
                &mut ok,
            );
        }
        if is_dominant(&f) {
            let r = dominant_analysis(&f, &fp_src, &fp_tgt)?;
            let consts: Vec<String> = r
                .adjoint_constants
                .iter()
                .map(|c| format!("{c:.9}"))
                .collect();
            line(
                "dominant-analysis",
                r.passed,
                format!("index {:.9}, c = [{}]", r.index, consts.join(", ")),
                json!(r),
                &mut ok,
            );
        }
        text += &rows.concat();
        text += &closure_info;
        checks.insert(
            "power-closure-mismatches".into(),
            json!(labels_of(tgt, &mismatches)),
        );
        value["checks"] = Value::Object(checks);
    }
    ctx.emit(text, value);
    Ok(ok)
}

fn grading(ctx: &Ctx, path: &Path, witness: Option<&Path>, rings: &[PathBuf]) -> Outcome {
    let mut all = vec![path.to_path_buf()];
    all.extend(witness.map(Path::to_path_buf));
    all.extend(rings.iter().cloned());
    let (corpus, _) = Corpus::load(&all)?;
    let ring_name = load_ring(path)?.name().to_string();
    let ring = corpus.ring(&ring_name)?;
    let g = if ring.grades().is_some() {
        Grading::from_labels(ring)?
    } else {
        universal_grading(ring)?
    };
    let fp = ctx.fp(ring)?;
    let group = g.group();
    let mut text = format!("components: {}\n", g.components().render(ring.labels()));
    text += &format!("group order: {}\n", g.group_order());
    for a in 0..group.order() {
        let row: Vec<&str> = (0..group.order())
            .map(|b| group.labels()[group.mul(a, b)].as_str())
            .collect();
        text += &format!("  {} | {}\n", group.labels()[a], row.join(" "));
    }
    let dims = g.component_dims(&fp);
    let mut value = json!({
        "ring": ring.name(),
        "components": blocks_json(g.components(), ring.labels()),
        "group_order": g.group_order(),
        "group_table": (0..group.order()).map(|a| (0..group.order()).map(|b| group.mul(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "component_dims": dims,
    });
    let map = intermediate_subring_map(&g)?;
    let mut ok = true;
    for (h, s) in &map.entries {
        text += &format!("  subgroup {h:?} -> {{{}}}\n", s.labels().join(","));
    }
    text += &format!(
        "intermediate map: injective {}, surjective {}\n",
        map.injective,
        map.surjective
            .map_or("skipped".to_string(), |s| s.to_string())
    );
    if map.surjective.is_none() {
        eprintln!(
            "warning: rank above {}, surjectivity not checked",
            tol::SUBRING_ENUMERATION_MAX_RANK
        );
    }
    ok &= map.injective && map.surjective != Some(false);
    value["intermediate"] = json!({
        "entries": map.entries.iter().map(|(h, s)| json!({"subgroup": h, "subring": labels_of(ring, s.members())})).collect::<Vec<_>>(),
        "injective": map.injective,
        "surjective": map.surjective,
    });
    if let Some(w) = witness {
        let spec = corpus
            .functors
            .first()
            .map(|(_, s)| s)
            .ok_or_else(|| Failure::Input(format!("{}: not a functor file", w.display())))?;
        let f = corpus.resolve(spec)?;
        let r = verify_normal_extension(&g, &f)?;
        ok &= r.passed;
        text += &format!(
            "normal extension: left cosets {}, right cosets {}, commutator full {}, radical full {}: {}\n",
            r.left_cosets_match,
            r.right_cosets_match,
            r.commutator_full,
            r.radical_full,
            if r.passed { "pass" } else { "fail" }
        );
        value["extension"] = json!(r);
    }
    ctx.emit(text, value);
    Ok(ok)
}

fn index_set(ctx: &Ctx, path: &Path, sub: Option<&str>, which: &str) -> Outcome {
    let ring = load_ring(path)?;
    let (members, is_subring) = match which {
        "adjoint" => (adjoint_subring(&ring).members().to_vec(), true),
        _ => {
            let d = parse_sub(&ring, sub)?;
            let set = if which == "radical" {
                radical(&ring, &d)
            } else {
                commutator(&ring, &d)
            };
            (set.members, set.is_subring)
        }
    };
    let labels = labels_of(&ring, &members);
    ctx.emit(
        format!("{}\n", labels.join(" ")),
        json!({"ring": ring.name(), which: labels, "members": members, "is_subring": is_subring}),
    );
    Ok(true)
}

fn gen(ctx: &Ctx, what: &Gen) -> Outcome {
    match what {
        Gen::GroupRing { group } => {
            let ring = load_group(group)?.group_ring();
            out(&write_ring(&ring));
        }
        Gen::QuotientFunctor {
            group,
            n,
            target_out,
        } => {
            let g = load_group(group)?;
            let q = quotient_functor(&g, &parse_indices(n)?)?;
            if let Some(out) = target_out {
                std::fs::write(out, write_ring(&q.target)).map_err(|source| {
                    Failure::from(Error::Io {
                        path: out.clone(),
                        source,
                    })
                })?;
            }
            out(&write_functor(&q.spec));
        }
    }
    let _ = ctx;
    Ok(true)
}

fn oracle(ctx: &Ctx, what: &Oracle) -> Outcome {
    let Oracle::DoubleCosets { group, k, l } = what;
    let g = load_group(group)?;
    let p = g.double_cosets(&parse_indices(k)?, &parse_indices(l)?)?;
    ctx.emit(
        format!("{}\n", p.render(g.labels())),
        json!({"group": g.name(), "blocks": blocks_json(&p, g.labels())}),
    );
    Ok(true)
}

fn verify_corpus(ctx: &Ctx, paths: &[PathBuf]) -> Outcome {
    let (corpus, warnings) = if paths.is_empty() {
        (Corpus::shipped(), Vec::new())
    } else {
        Corpus::load(paths)?
    };
    let opts = VerifyOptions {
        seed: ctx.seed,
        tol: ctx.assert_tol(),
        iteration_tol: tol::ITERATION,
    };
    let mut report = verify(&corpus, &opts);
    report.warnings = warnings;
    if report.checks.is_empty() {
        report.warn("no checks ran");
    }
    report_outcome(ctx, &report)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        json: cli.json,
        tol: cli.tol,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Validate { files, rings } => validate(&ctx, files, rings),
        Command::Fpdim { ring } => fpdim(&ctx, ring),
        Command::Cosets {
            ring,
            left,
            right,
            verify,
        } => cosets(&ctx, ring, left.as_deref(), right.as_deref(), *verify),
        Command::Functor {
            file,
            rings,
            analyze,
        } => functor(&ctx, file, rings, *analyze),
        Command::Grading {
            ring,
            verify_extension,
            rings,
        } => grading(&ctx, ring, verify_extension.as_deref(), rings),
        Command::Radical { ring, sub } => index_set(&ctx, ring, Some(sub), "radical"),
        Command::Commutator { ring, sub } => index_set(&ctx, ring, Some(sub), "commutator"),
        Command::Adjoint { ring } => index_set(&ctx, ring, None, "adjoint"),
        Command::Gen(what) => gen(&ctx, what),
        Command::Oracle(what) => oracle(&ctx, what),
        Command::VerifyCorpus { paths } => verify_corpus(&ctx, paths),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
