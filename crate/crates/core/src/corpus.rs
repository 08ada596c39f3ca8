//! The shipped fixture corpus and loading of fixture files from disk.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::format::{parse_functor, parse_group, parse_ring, read_file, FunctorSpec};
use crate::functor::RingFunctor;
use crate::group::FiniteGroup;
use crate::ring::FusionRing;

/// Shipped fixture files as `(file name, contents)`.
pub const SHIPPED: &[(&str, &str)] = &[
    ("a4.group", include_str!("../fixtures/a4.group")),
    ("d4.group", include_str!("../fixtures/d4.group")),
    ("fibonacci.ring", include_str!("../fixtures/fibonacci.ring")),
    ("ising.ring", include_str!("../fixtures/ising.ring")),
    ("q8.group", include_str!("../fixtures/q8.group")),
    ("rep_a4.ring", include_str!("../fixtures/rep_a4.ring")),
    ("rep_d4.ring", include_str!("../fixtures/rep_d4.ring")),
    ("rep_q8.ring", include_str!("../fixtures/rep_q8.ring")),
    ("rep_s3.ring", include_str!("../fixtures/rep_s3.ring")),
    ("rep_s4.ring", include_str!("../fixtures/rep_s4.ring")),
    ("rep_z2.ring", include_str!("../fixtures/rep_z2.ring")),
    ("rep_z3.ring", include_str!("../fixtures/rep_z3.ring")),
    ("rep_z4.ring", include_str!("../fixtures/rep_z4.ring")),
    ("rep_z5.ring", include_str!("../fixtures/rep_z5.ring")),
    ("rep_z6.ring", include_str!("../fixtures/rep_z6.ring")),
    (
        "res_a4_z3.functor",
        include_str!("../fixtures/res_a4_z3.functor"),
    ),
    (
        "res_d4_z2.functor",
        include_str!("../fixtures/res_d4_z2.functor"),
    ),
    (
        "res_d4_z4.functor",
        include_str!("../fixtures/res_d4_z4.functor"),
    ),
    (
        "res_q8_z4.functor",
        include_str!("../fixtures/res_q8_z4.functor"),
    ),
    (
        "res_s3_z2.functor",
        include_str!("../fixtures/res_s3_z2.functor"),
    ),
    (
        "res_s3_z3.functor",
        include_str!("../fixtures/res_s3_z3.functor"),
    ),
    (
        "res_s4_a4.functor",
        include_str!("../fixtures/res_s4_a4.functor"),
    ),
    (
        "res_s4_s3.functor",
        include_str!("../fixtures/res_s4_s3.functor"),
    ),
    ("s3.group", include_str!("../fixtures/s3.group")),
    ("ty_z2z2.ring", include_str!("../fixtures/ty_z2z2.ring")),
];

/// File extensions recognised when scanning a directory.
pub const EXTENSIONS: [&str; 3] = ["ring", "functor", "group"];

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    /// Keyed by ring name.
    pub rings: BTreeMap<String, FusionRing>,
    /// `(file name, functor)` in file-name order.
    pub functors: Vec<(String, FunctorSpec)>,
    /// `(file name, group)` in file-name order.
    pub groups: Vec<(String, FiniteGroup)>,
    /// Ring name to the file it came from.
    pub ring_files: BTreeMap<String, String>,
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

impl Corpus {
    /// The fixtures compiled into the library.
    pub fn shipped() -> Self {
        Self::from_sources(SHIPPED.iter().map(|&(f, t)| (f.to_string(), t.to_string())))
            .expect("shipped fixtures parse")
    }

    /// Parses `(file name, contents)` pairs, dispatching on the leading keyword.
    pub fn from_sources(sources: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let mut corpus = Corpus::default();
        let mut sources: Vec<_> = sources.into_iter().collect();
        sources.sort();
        for (file, text) in sources {
            let tag = |e: Error| match e {
                Error::Parse(p) => Error::Structure(format!("{file}:{}: {}", p.line, p.message)),
                other => Error::Structure(format!("{file}: {other}")),
            };
            match first_keyword(&text) {
                Some("ring") => {
                    let ring = parse_ring(&text).map_err(tag)?;
                    let name = ring.name().to_string();
                    if corpus.rings.contains_key(&name) {
                        return Err(Error::Structure(format!(
                            "{file}: duplicate ring name {name:?}"
                        )));
                    }
                    corpus.ring_files.insert(name.clone(), file.clone());
                    corpus.rings.insert(name, ring);
                }
                Some("functor") => corpus
                    .functors
                    .push((file.clone(), parse_functor(&text).map_err(tag)?)),
                Some("group") => corpus
                    .groups
                    .push((file.clone(), parse_group(&text).map_err(tag)?)),
                _ => {
                    return Err(Error::Structure(format!(
                        "{file}: expected a ring, functor or group file"
                    )))
                }
            }
        }
        Ok(corpus)
    }

    /// Reads files and directories; directories contribute their fixture files in name order.
    /// Returns the corpus and warnings for directories without fixtures.
    pub fn load(paths: &[PathBuf]) -> Result<(Self, Vec<String>)> {
        let mut sources = Vec::new();
        let mut warnings = Vec::new();
        for path in paths {
            if path.is_dir() {
                let before = sources.len();
                for file in fixture_files(path)? {
                    sources.push((display_name(&file), read_file(&file)?));
                }
                if sources.len() == before {
                    warnings.push(format!("{}: no fixture files", path.display()));
                }
            } else {
                sources.push((display_name(path), read_file(path)?));
            }
        }
        Ok((Self::from_sources(sources)?, warnings))
    }

    pub fn ring(&self, name: &str) -> Result<&FusionRing> {
        self.rings
            .get(name)
            .ok_or_else(|| Error::UnknownRing(name.to_string()))
    }

    /// Builds a functor, resolving its source and target by ring name.
    pub fn resolve<'a>(&'a self, spec: &FunctorSpec) -> Result<RingFunctor<'a>> {
        RingFunctor::from_spec(spec, self.ring(&spec.source)?, self.ring(&spec.target)?)
    }

    /// The functor with the given name.
    pub fn functor(&self, name: &str) -> Result<RingFunctor<'_>> {
        let spec = self
            .functors
            .iter()
            .map(|(_, s)| s)
            .find(|s| s.name == name)
            .ok_or_else(|| Error::InvalidFunctor(format!("no functor named {name:?}")))?;
        self.resolve(spec)
    }

    pub fn group(&self, name: &str) -> Result<&FiniteGroup> {
        self.groups
            .iter()
            .map(|(_, g)| g)
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::InvalidGroup(format!("no group named {name:?}")))
    }
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Fixture files directly inside `dir`, sorted by name.
pub fn fixture_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if path.is_file() && EXTENSIONS.contains(&ext) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}
