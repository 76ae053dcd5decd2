use std::path::Path;
use std::sync::Arc;

use leavitt_core::grading::{DegreeMap, GroupElement, GroupSpec};
use leavitt_core::{parse_graph, Graph};

use crate::{exit, CliError};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError {
        code: exit::NO_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

pub fn load_graph(path: Option<&Path>) -> Result<Arc<Graph>, CliError> {
    let path = path.ok_or_else(|| CliError::usage("--graph FILE is required"))?;
    let text = read(path)?;
    parse_graph(&text)
        .map(Arc::new)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

pub fn load_degrees(spec: &str, graph: &Graph) -> Result<DegreeMap, CliError> {
    if spec == "canonical" {
        return Ok(DegreeMap::canonical(graph));
    }
    if let Some(group) = spec.strip_prefix("canonical:") {
        let group = parse_group_name(group)?;
        return DegreeMap::canonical_in(graph, group).map_err(|e| CliError::usage(e.to_string()));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    DegreeMap::parse(&text, graph, path.parent()).map_err(|e| CliError::data(format!("{spec}: {e}")))
}

fn parse_group_name(s: &str) -> Result<GroupSpec, CliError> {
    let bad = || CliError::usage(format!("unknown group `{s}` (expected Z, Z^k or Z/n)"));
    if s == "Z" {
        return Ok(GroupSpec::Integers);
    }
    if let Some(k) = s.strip_prefix("Z^") {
        return k.parse().ok().filter(|&k| k > 0).map(GroupSpec::Lattice).ok_or_else(bad);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        return n.parse().ok().filter(|&n| n > 0).map(GroupSpec::Cyclic).ok_or_else(bad);
    }
    Err(bad())
}

pub fn parse_degree(d: &DegreeMap, s: &str) -> Result<GroupElement, CliError> {
    d.parse_element(s).map_err(|e| CliError::usage(e.to_string()))
}

/// `A..B` in Z or Z/n, or elements separated by `;` (also `,` outside
/// Z^k).
pub fn parse_window(d: &DegreeMap, text: Option<&str>, bound: usize) -> Result<Vec<GroupElement>, CliError> {
    let group = d.group();
    let Some(text) = text else {
        return Ok(default_window(group, bound));
    };
    let mut out: Vec<GroupElement> = Vec::new();
    if let Some((a, b)) = text.split_once("..") {
        if matches!(group, GroupSpec::Integers | GroupSpec::Cyclic(_)) {
            let parse = |x: &str| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::usage(format!("bad window bound `{x}`")))
            };
            for n in parse(a)?..=parse(b)? {
                out.push(d.group().pow(&group.generator().expect("Z and Z/n have generators"), n));
            }
        } else {
            return Err(CliError::usage(format!("ranges are not available in {group}")));
        }
    } else {
        let separators: &[char] = if matches!(group, GroupSpec::Lattice(_)) { &[';'] } else { &[';', ','] };
        for part in text.split(separators).map(str::trim).filter(|p| !p.is_empty()) {
            out.push(parse_degree(d, part)?);
        }
    }
    let mut dedup = Vec::new();
    for g in out {
        if !dedup.contains(&g) {
            dedup.push(g);
        }
    }
    Ok(dedup)
}

fn default_window(group: &GroupSpec, bound: usize) -> Vec<GroupElement> {
    if let Some(all) = group.elements() {
        return all;
    }
    let b = bound as i64;
    match group {
        GroupSpec::Lattice(k) => {
            let mut out = vec![group.identity()];
            for i in 0..*k {
                let mut v = vec![0i64; *k];
                for s in [1, -1] {
                    v[i] = s;
                    out.push(group_element(&v));
                }
            }
            out
        }
        _ => (-b..=b).map(GroupElement::int).collect(),
    }
}

fn group_element(coords: &[i64]) -> GroupElement {
    let text = coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    GroupSpec::Lattice(coords.len())
        .parse_element(&text)
        .expect("coordinates parse")
}

/// Expressions from the command line, or else the non-blank, non-comment
/// lines of standard input.
pub fn expressions(cli_exprs: &[String], stdin: &str) -> Vec<String> {
    if !cli_exprs.is_empty() {
        return cli_exprs.to_vec();
    }
    stdin
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}
