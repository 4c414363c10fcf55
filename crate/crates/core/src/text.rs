//! The `sset v1` and `smap v1` text formats.
//!
//! ```text
//! sset v1
//! gen v 0
//! gen e 1
//! face e 0 = v
//! face e 1 = v
//! ```
//!
//! A face is written `face <name> <i> = <name'>` when non-degenerate and
//! `face <name> <i> = <name'> | <epi values>` otherwise. Maps are written
//! `send <gen> = <gen'> [| <epi values>]` after `source` and `target` lines.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::colimit::SimplicialMap;
use crate::delta::DeltaOperator;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};

fn simplex_text(x: &FiniteSimplicialSet, s: &Simplex) -> String {
    if s.is_degenerate() {
        format!("{} | {}", x.name(s.gen()), s.deg_part())
    } else {
        x.name(s.gen()).to_string()
    }
}

pub fn write_sset(x: &FiniteSimplicialSet) -> String {
    let mut out = String::from("sset v1\n");
    for g in x.generators() {
        writeln!(out, "gen {} {}", x.name(g), g.degree).expect("write to string");
    }
    for g in x.generators().filter(|g| g.degree > 0) {
        for (i, f) in x.faces(g).expect("own generator").iter().enumerate() {
            writeln!(out, "face {} {} = {}", x.name(g), i, simplex_text(x, f)).expect("write to string");
        }
    }
    out
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{token}`")))
}

/// Parses `<name> [| v_0 … v_m]` against a set, where the simplex has
/// degree `degree`.
fn parse_simplex(
    line: usize,
    tokens: &[&str],
    set_lookup: impl Fn(&str) -> Option<GeneratorId>,
    degree: usize,
) -> Result<Simplex> {
    let (&name, rest) = tokens
        .split_first()
        .ok_or_else(|| parse_err(line, "missing simplex"))?;
    let g = set_lookup(name).ok_or_else(|| parse_err(line, format!("unknown generator `{name}`")))?;
    let rho = match rest {
        [] => DeltaOperator::identity(g.degree),
        ["|", values @ ..] => {
            let values = values
                .iter()
                .map(|t| parse_usize(line, t, "operator value"))
                .collect::<Result<Vec<_>>>()?;
            DeltaOperator::new(values, g.degree).map_err(|e| parse_err(line, e.to_string()))?
        }
        _ => return Err(parse_err(line, "expected `|` before operator values")),
    };
    if rho.source_rank() != degree {
        return Err(parse_err(
            line,
            format!("simplex has degree {}, expected {degree}", rho.source_rank()),
        ));
    }
    Simplex::new(g, rho).map_err(|e| parse_err(line, e.to_string()))
}

fn expect_header(text: &str, header: &str) -> Result<()> {
    match lines(text).next() {
        Some((_, t)) if t.join(" ") == header => Ok(()),
        Some((line, _)) => Err(parse_err(line, format!("expected `{header}`"))),
        None => Err(parse_err(1, format!("empty input, expected `{header}`"))),
    }
}

pub fn parse_sset(text: &str) -> Result<FiniteSimplicialSet> {
    parse_sset_builder(text)?.build_validated()
}

/// Parses without checking the simplicial identities, so that
/// [`FiniteSimplicialSet::validate`] can report every violation.
pub fn parse_sset_unchecked(text: &str) -> Result<FiniteSimplicialSet> {
    parse_sset_builder(text)?.build()
}

fn parse_sset_builder(text: &str) -> Result<SSetBuilder> {
    expect_header(text, "sset v1")?;
    let mut b = SSetBuilder::new();
    let mut face_lines = Vec::new();
    for (line, tokens) in lines(text).skip(1) {
        match tokens[0] {
            "gen" => {
                let [_, name, degree] = tokens[..] else {
                    return Err(parse_err(line, "expected `gen <name> <degree>`"));
                };
                let degree = parse_usize(line, degree, "degree")?;
                b.add_generator(degree, Some(name)).map_err(|e| parse_err(line, e.to_string()))?;
            }
            "face" => face_lines.push((line, tokens)),
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let mut faces: HashMap<GeneratorId, Vec<Option<Simplex>>> = HashMap::new();
    for (line, tokens) in face_lines {
        if tokens.len() < 5 || tokens[3] != "=" {
            return Err(parse_err(line, "expected `face <name> <i> = <name'> [| <values>]`"));
        }
        let g = b
            .lookup(tokens[1])
            .ok_or_else(|| parse_err(line, format!("unknown generator `{}`", tokens[1])))?;
        if g.degree == 0 {
            return Err(parse_err(line, format!("`{}` has degree 0 and no faces", tokens[1])));
        }
        let i = parse_usize(line, tokens[2], "face index")?;
        if i > g.degree {
            return Err(parse_err(line, format!("face index {i} exceeds degree {}", g.degree)));
        }
        let s = parse_simplex(line, &tokens[4..], |n| b.lookup(n), g.degree - 1)?;
        let slot = &mut faces.entry(g).or_insert_with(|| vec![None; g.degree + 1])[i];
        if slot.is_some() {
            return Err(parse_err(line, format!("face {i} of `{}` given twice", tokens[1])));
        }
        *slot = Some(s);
    }
    let mut gens: Vec<GeneratorId> = faces.keys().copied().collect();
    gens.sort();
    for g in gens {
        let list = faces.remove(&g).expect("present");
        let list = list
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::InvalidSet(format!("generator {g} is missing face {i}"))))
            .collect::<Result<Vec<_>>>()?;
        b.set_faces(g, list)?;
    }
    Ok(b)
}

pub fn write_smap(f: &SimplicialMap, source_id: &str, target_id: &str) -> String {
    let mut out = format!("smap v1\nsource {source_id}\ntarget {target_id}\n");
    for (g, x) in f.assignments() {
        writeln!(out, "send {} = {}", f.source().name(g), simplex_text(f.target(), x)).expect("write to string");
    }
    out
}

/// Parses a map, resolving the `source` and `target` ids with `resolve`.
pub fn parse_smap(text: &str, mut resolve: impl FnMut(&str) -> Result<Arc<FiniteSimplicialSet>>) -> Result<SimplicialMap> {
    expect_header(text, "smap v1")?;
    let mut source: Option<Arc<FiniteSimplicialSet>> = None;
    let mut target: Option<Arc<FiniteSimplicialSet>> = None;
    let mut sends = Vec::new();
    for (line, tokens) in lines(text).skip(1) {
        match tokens[0] {
            "source" | "target" if tokens.len() >= 2 => {
                let set = resolve(&tokens[1..].join(" "))?;
                let slot = if tokens[0] == "source" { &mut source } else { &mut target };
                if slot.replace(set).is_some() {
                    return Err(parse_err(line, format!("`{}` given twice", tokens[0])));
                }
            }
            "send" => sends.push((line, tokens)),
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let source = source.ok_or_else(|| parse_err(1, "missing `source`"))?;
    let target = target.ok_or_else(|| parse_err(1, "missing `target`"))?;
    let mut assign: Vec<Vec<Option<Simplex>>> = source.counts().iter().map(|&c| vec![None; c]).collect();
    for (line, tokens) in sends {
        if tokens.len() < 4 || tokens[2] != "=" {
            return Err(parse_err(line, "expected `send <gen> = <gen'> [| <values>]`"));
        }
        let g = source
            .generator_by_name(tokens[1])
            .ok_or_else(|| parse_err(line, format!("unknown source generator `{}`", tokens[1])))?;
        let s = parse_simplex(line, &tokens[3..], |n| target.generator_by_name(n), g.degree)?;
        let slot = &mut assign[g.degree][g.index];
        if slot.is_some() {
            return Err(parse_err(line, format!("`{}` sent twice", tokens[1])));
        }
        *slot = Some(s);
    }
    let assign = assign
        .into_iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(i, s)| {
                    s.ok_or_else(|| {
                        Error::InvalidMap(format!("no image for `{}`", source.name(GeneratorId::new(d, i))))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source, target, assign)
}
