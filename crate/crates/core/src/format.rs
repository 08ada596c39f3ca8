//! Line-oriented text formats for rings, functors and groups.
//!
//! All three share the same lexical rules: UTF-8, `#` starts a comment,
//! blank lines are ignored, indices are 0-based, and a block ends at `end`.
//!
//! ```text
//! ring <name>
//! rank <n>
//! labels <n labels>
//! dual <n integers>
//! grade <i> <component>     # optional
//! nz <i> <j> <k> <v>
//! end
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, ParseError, Result};
use crate::group::FiniteGroup;
use crate::ring::{FusionRing, UNIT};

type Line<'a> = (usize, Vec<&'a str>);

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((n + 1, tokens))
    })
}

fn int<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token.parse().map_err(|_| {
        ParseError::new(
            line,
            format!("{what}: expected a nonnegative integer, found {token:?}"),
        )
    })
}

fn arity(line: usize, tokens: &[&str], n: usize) -> Result<(), ParseError> {
    if tokens.len() == n + 1 {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            format!(
                "`{}` takes {n} arguments, found {}",
                tokens[0],
                tokens.len() - 1
            ),
        ))
    }
}

fn name_line<'a>(
    it: &mut impl Iterator<Item = Line<'a>>,
    keyword: &str,
) -> Result<String, ParseError> {
    match it.next() {
        Some((n, t)) if t[0] == keyword => {
            arity(n, &t, 1)?;
            Ok(t[1].to_string())
        }
        Some((n, t)) => Err(ParseError::new(
            n,
            format!("expected `{keyword}`, found `{}`", t[0]),
        )),
        None => Err(ParseError::new(
            0,
            format!("empty input, expected `{keyword}`"),
        )),
    }
}

fn finish<'a>(it: &mut impl Iterator<Item = Line<'a>>) -> Result<(), ParseError> {
    match it.next() {
        Some((n, t)) => Err(ParseError::new(
            n,
            format!("unexpected `{}` after `end`", t[0]),
        )),
        None => Ok(()),
    }
}

pub fn parse_ring(text: &str) -> Result<FusionRing> {
    let mut it = lines(text);
    let name = name_line(&mut it, "ring")?;
    let mut rank: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut dual: Option<Vec<usize>> = None;
    let mut grades: BTreeMap<usize, String> = BTreeMap::new();
    let mut constants: BTreeMap<(usize, usize, usize), u32> = BTreeMap::new();
    let mut ended = None;

    for (n, t) in it.by_ref() {
        match t[0] {
            "rank" => {
                arity(n, &t, 1)?;
                let r: usize = int(n, t[1], "rank")?;
                if r == 0 {
                    return Err(ParseError::new(n, "rank must be positive").into());
                }
                rank = Some(r);
            }
            "unit" => {
                arity(n, &t, 1)?;
                let u: usize = int(n, t[1], "unit")?;
                if u != UNIT {
                    return Err(ParseError::new(n, "the unit must be basis element 0").into());
                }
            }
            "labels" => {
                let r = rank.ok_or_else(|| ParseError::new(n, "`labels` before `rank`"))?;
                arity(n, &t, r)?;
                let l: Vec<String> = t[1..].iter().map(|s| s.to_string()).collect();
                if l.iter().collect::<BTreeSet<_>>().len() != l.len() {
                    return Err(ParseError::new(n, "labels must be distinct").into());
                }
                labels = Some(l);
            }
            "dual" => {
                let r = rank.ok_or_else(|| ParseError::new(n, "`dual` before `rank`"))?;
                arity(n, &t, r)?;
                let d = t[1..]
                    .iter()
                    .map(|s| int::<usize>(n, s, "dual"))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(&bad) = d.iter().find(|&&x| x >= r) {
                    return Err(ParseError::new(n, format!("dual index {bad} out of range")).into());
                }
                dual = Some(d);
            }
            "grade" => {
                let r = rank.ok_or_else(|| ParseError::new(n, "`grade` before `rank`"))?;
                arity(n, &t, 2)?;
                let i: usize = int(n, t[1], "grade index")?;
                if i >= r {
                    return Err(ParseError::new(n, format!("grade index {i} out of range")).into());
                }
                if grades.insert(i, t[2].to_string()).is_some() {
                    return Err(ParseError::new(n, format!("duplicate grade for {i}")).into());
                }
            }
            "nz" => {
                let r = rank.ok_or_else(|| ParseError::new(n, "`nz` before `rank`"))?;
                arity(n, &t, 4)?;
                let i: usize = int(n, t[1], "i")?;
                let j: usize = int(n, t[2], "j")?;
                let k: usize = int(n, t[3], "k")?;
                let v: u32 = int(n, t[4], "multiplicity")?;
                if let Some(bad) = [i, j, k].into_iter().find(|&x| x >= r) {
                    return Err(ParseError::new(n, format!("index {bad} out of range")).into());
                }
                if constants.insert((i, j, k), v).is_some() {
                    return Err(
                        ParseError::new(n, format!("duplicate nz triple ({i}, {j}, {k})")).into(),
                    );
                }
            }
            "end" => {
                arity(n, &t, 0)?;
                ended = Some(n);
                break;
            }
            other => return Err(ParseError::new(n, format!("unknown keyword `{other}`")).into()),
        }
    }
    let last = ended.ok_or_else(|| ParseError::new(0, "missing `end`"))?;
    finish(&mut it)?;
    let rank = rank.ok_or_else(|| ParseError::new(last, "missing `rank`"))?;
    let labels = labels.ok_or_else(|| ParseError::new(last, "missing `labels`"))?;
    let dual = dual.ok_or_else(|| ParseError::new(last, "missing `dual`"))?;
    let ring = FusionRing::new(
        name,
        labels,
        dual,
        constants.into_iter().map(|((i, j, k), v)| (i, j, k, v)),
    )?;
    if grades.is_empty() {
        Ok(ring)
    } else if grades.len() != rank {
        Err(ParseError::new(
            last,
            format!("{} of {rank} basis elements have a grade", grades.len()),
        )
        .into())
    } else {
        ring.with_grades(grades.into_values().collect())
    }
}

pub fn write_ring(ring: &FusionRing) -> String {
    let mut out = String::new();
    writeln!(out, "ring {}", ring.name()).unwrap();
    writeln!(out, "rank {}", ring.rank()).unwrap();
    writeln!(out, "labels {}", ring.labels().join(" ")).unwrap();
    let duals: Vec<String> = ring.duals().iter().map(|d| d.to_string()).collect();
    writeln!(out, "dual {}", duals.join(" ")).unwrap();
    if let Some(grades) = ring.grades() {
        for (i, g) in grades.iter().enumerate() {
            writeln!(out, "grade {i} {g}").unwrap();
        }
    }
    for (i, j, k, v) in ring.constants() {
        writeln!(out, "nz {i} {j} {k} {v}").unwrap();
    }
    out.push_str("end\n");
    out
}

/// A functor file before its ring names are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    /// `(i, j, v)`: target simple `j` occurs `v` times in `F(X_i)`.
    pub entries: Vec<(usize, usize, u32)>,
}

pub fn parse_functor(text: &str) -> Result<FunctorSpec> {
    let mut it = lines(text);
    let name = name_line(&mut it, "functor")?;
    let mut source = None;
    let mut target = None;
    let mut entries: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut ended = None;
    for (n, t) in it.by_ref() {
        match t[0] {
            "source" => {
                arity(n, &t, 1)?;
                source = Some(t[1].to_string());
            }
            "target" => {
                arity(n, &t, 1)?;
                target = Some(t[1].to_string());
            }
            "m" => {
                arity(n, &t, 3)?;
                let i: usize = int(n, t[1], "i")?;
                let j: usize = int(n, t[2], "j")?;
                let v: u32 = int(n, t[3], "multiplicity")?;
                if entries.insert((i, j), v).is_some() {
                    return Err(ParseError::new(n, format!("duplicate entry ({i}, {j})")).into());
                }
            }
            "end" => {
                arity(n, &t, 0)?;
                ended = Some(n);
                break;
            }
            other => return Err(ParseError::new(n, format!("unknown keyword `{other}`")).into()),
        }
    }
    let last = ended.ok_or_else(|| ParseError::new(0, "missing `end`"))?;
    finish(&mut it)?;
    Ok(FunctorSpec {
        name,
        source: source.ok_or_else(|| ParseError::new(last, "missing `source`"))?,
        target: target.ok_or_else(|| ParseError::new(last, "missing `target`"))?,
        entries: entries
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((i, j), v)| (i, j, v))
            .collect(),
    })
}

pub fn write_functor(spec: &FunctorSpec) -> String {
    let mut out = String::new();
    writeln!(out, "functor {}", spec.name).unwrap();
    writeln!(out, "source {}", spec.source).unwrap();
    writeln!(out, "target {}", spec.target).unwrap();
    for &(i, j, v) in &spec.entries {
        writeln!(out, "m {i} {j} {v}").unwrap();
    }
    out.push_str("end\n");
    out
}

/// Group files carry a row-major multiplication table; `labels` is optional.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut it = lines(text);
    let name = name_line(&mut it, "group")?;
    let mut order: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut table: Vec<usize> = Vec::new();
    let mut ended = None;
    for (n, t) in it.by_ref() {
        match t[0] {
            "order" => {
                arity(n, &t, 1)?;
                let o: usize = int(n, t[1], "order")?;
                if o == 0 {
                    return Err(ParseError::new(n, "order must be positive").into());
                }
                order = Some(o);
            }
            "labels" => {
                let o = order.ok_or_else(|| ParseError::new(n, "`labels` before `order`"))?;
                arity(n, &t, o)?;
                labels = Some(t[1..].iter().map(|s| s.to_string()).collect());
            }
            "mul" => {
                let o = order.ok_or_else(|| ParseError::new(n, "`mul` before `order`"))?;
                for s in &t[1..] {
                    let x: usize = int(n, s, "mul")?;
                    if x >= o {
                        return Err(ParseError::new(n, format!("element {x} out of range")).into());
                    }
                    table.push(x);
                }
            }
            "end" => {
                arity(n, &t, 0)?;
                ended = Some(n);
                break;
            }
            other => return Err(ParseError::new(n, format!("unknown keyword `{other}`")).into()),
        }
    }
    let last = ended.ok_or_else(|| ParseError::new(0, "missing `end`"))?;
    finish(&mut it)?;
    let order = order.ok_or_else(|| ParseError::new(last, "missing `order`"))?;
    if table.len() != order * order {
        return Err(ParseError::new(
            last,
            format!(
                "mul has {} entries, expected {}",
                table.len(),
                order * order
            ),
        )
        .into());
    }
    let labels = labels.unwrap_or_else(|| FiniteGroup::default_labels(order));
    FiniteGroup::with_labels(name, table, labels)
}

pub fn write_group(group: &FiniteGroup) -> String {
    let mut out = String::new();
    writeln!(out, "group {}", group.name()).unwrap();
    writeln!(out, "order {}", group.order()).unwrap();
    writeln!(out, "labels {}", group.labels().join(" ")).unwrap();
    for a in 0..group.order() {
        let row: Vec<String> = (0..group.order())
            .map(|b| group.mul(a, b).to_string())
            .collect();
        writeln!(out, "mul {}", row.join(" ")).unwrap();
    }
    out.push_str("end\n");
    out
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
