//! Text formats for complexes (`.cplx`), chains (`.chain`), tree
//! decompositions (`.td`) and weights (`.w`).
//!
//! Vertices are written with their original labels everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::complex::{Chain, SimplicialComplex, WeightFunction};
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines<'a>(
    text: &'a str,
    comment: &'a [&'a str],
) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.trim();
        let skip = line.is_empty()
            || comment.iter().any(|c| {
                line == *c
                    || line.starts_with(&format!("{c} "))
                    || (*c == "#" && line.starts_with('#'))
            });
        (!skip).then_some((i + 1, line))
    })
}

fn parse_ids(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("'{t}' is not a vertex id")))
        })
        .collect()
}

fn reject_repeats(line_no: usize, ids: &[u64]) -> Result<()> {
    let distinct: BTreeSet<&u64> = ids.iter().collect();
    if distinct.len() != ids.len() {
        return Err(parse_err(line_no, "repeated vertex in simplex"));
    }
    Ok(())
}

/// One simplex per line; the complex is the closure of all of them.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut simplices = Vec::new();
    for (no, line) in content_lines(text, &["#"]) {
        let ids = parse_ids(no, line)?;
        reject_repeats(no, &ids)?;
        simplices.push(ids);
    }
    SimplicialComplex::build(&simplices)
}

/// The maximal simplices, in dimension then lexicographic order.
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for s in complex.maximal_simplices() {
        out.push_str(&complex.format_simplex(s));
        out.push('\n');
    }
    out
}

/// A `dim D` line followed by one D-simplex per line. Listing a simplex twice
/// is an error rather than a cancellation.
pub fn parse_chain(text: &str, complex: &SimplicialComplex) -> Result<Chain> {
    let mut lines = content_lines(text, &["#"]);
    let (no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing 'dim D' header"))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", d] => d
            .parse::<usize>()
            .map_err(|_| parse_err(no, format!("'{d}' is not a dimension")))?,
        _ => return Err(parse_err(no, "expected 'dim D'")),
    };
    let mut members = BTreeSet::new();
    for (no, line) in lines {
        let ids = parse_ids(no, line)?;
        reject_repeats(no, &ids)?;
        if ids.len() != dim + 1 {
            return Err(parse_err(
                no,
                format!(
                    "a {dim}-simplex has {} vertices, found {}",
                    dim + 1,
                    ids.len()
                ),
            ));
        }
        let simplex = complex
            .simplex_from_labels(&ids)
            .map_err(|_| parse_err(no, format!("simplex {line} is not in the complex")))?;
        let index = complex
            .index_of(&simplex)
            .expect("simplex_from_labels checks membership");
        if !members.insert(index) {
            return Err(parse_err(no, format!("simplex {line} listed twice")));
        }
    }
    Chain::new(complex, dim, members)
}

pub fn write_chain(complex: &SimplicialComplex, chain: &Chain) -> String {
    let mut out = format!("dim {}\n", chain.dim());
    for i in chain.iter() {
        out.push_str(&complex.format_simplex(complex.simplex(chain.dim(), i)));
        out.push('\n');
    }
    out
}

/// A decomposition as read from a `.td` file, over the raw vertex ids used
/// in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDecomposition {
    pub vertex_count: usize,
    pub bags: Vec<Vec<u64>>,
    /// 0-based node pairs.
    pub edges: Vec<(usize, usize)>,
}

/// Reads the `s td <nodes> <max bag> <vertices>` layout with 1-based node ids.
/// Lines starting with `c` or `#` are comments.
pub fn parse_td_raw(text: &str) -> Result<RawDecomposition> {
    let mut lines = content_lines(text, &["c", "#"]);
    let (no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing 's td' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let numbers: Vec<usize> = match fields[..] {
        ["s", "td", a, b, c] => [a, b, c]
            .iter()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(no, format!("'{t}' is not a count")))
            })
            .collect::<Result<_>>()?,
        _ => {
            return Err(parse_err(
                no,
                "expected 's td <nodes> <max bag> <vertices>'",
            ))
        }
    };
    let (nodes, max_bag, vertex_count) = (numbers[0], numbers[1], numbers[2]);
    let mut bags: Vec<Option<Vec<u64>>> = vec![None; nodes];
    let mut edges = Vec::new();
    let node_id = |no: usize, t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(id) if (1..=nodes).contains(&id) => Ok(id - 1),
            _ => Err(parse_err(
                no,
                format!("'{t}' is not a node id in 1..={nodes}"),
            )),
        }
    };
    for (no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "b" {
            let id = node_id(no, tokens.get(1).copied().unwrap_or(""))?;
            let mut bag = tokens[2..]
                .iter()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| parse_err(no, format!("'{t}' is not a vertex id")))
                })
                .collect::<Result<Vec<_>>>()?;
            reject_repeats(no, &bag)?;
            bag.sort_unstable();
            if bags[id].replace(bag).is_some() {
                return Err(parse_err(no, format!("bag {} given twice", id + 1)));
            }
        } else if tokens.len() == 2 {
            edges.push((node_id(no, tokens[0])?, node_id(no, tokens[1])?));
        } else {
            return Err(parse_err(no, format!("unrecognised line '{line}'")));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(no, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let largest = bags.iter().map(Vec::len).max().unwrap_or(0);
    if largest != max_bag {
        return Err(parse_err(
            no,
            format!("header says max bag {max_bag}, bags have {largest}"),
        ));
    }
    Ok(RawDecomposition {
        vertex_count,
        bags,
        edges,
    })
}

/// Reads a decomposition whose vertex ids are the complex's labels.
pub fn parse_td(text: &str, complex: &SimplicialComplex) -> Result<TreeDecomposition> {
    let raw = parse_td_raw(text)?;
    if raw.vertex_count != complex.vertex_count() {
        return Err(parse_err(
            1,
            format!(
                "header says {} vertices, complex has {}",
                raw.vertex_count,
                complex.vertex_count()
            ),
        ));
    }
    let bags = raw
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .map(|l| {
                    complex.vertex_of_label(*l).ok_or_else(|| {
                        Error::InvalidDecomposition(format!("vertex {l} is not in the complex"))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, raw.edges))
}

/// Writes a decomposition with vertex `v` printed as `name(v)`; `comments`
/// go right after the header.
pub fn write_td_with(
    td: &TreeDecomposition,
    vertex_count: usize,
    comments: &[String],
    name: impl Fn(usize) -> u64,
) -> String {
    let mut out = format!(
        "s td {} {} {}\n",
        td.node_count(),
        td.max_bag_size(),
        vertex_count
    );
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        let mut names: Vec<u64> = bag.iter().map(|v| name(*v)).collect();
        names.sort_unstable();
        for v in names {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (a, b) in td.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn write_td(td: &TreeDecomposition, complex: &SimplicialComplex) -> String {
    write_td_with(td, complex.vertex_count(), &[], |v| complex.label(v))
}

/// `<vertex ids> : <weight>` per line for simplices of dimension `dim`;
/// unlisted simplices weigh 1.
pub fn parse_weights(
    text: &str,
    complex: &SimplicialComplex,
    dim: usize,
) -> Result<WeightFunction> {
    let mut seen: BTreeMap<usize, f64> = BTreeMap::new();
    for (no, line) in content_lines(text, &["#"]) {
        let (ids, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(no, "expected '<vertex ids> : <weight>'"))?;
        let ids = parse_ids(no, ids)?;
        reject_repeats(no, &ids)?;
        if ids.len() != dim + 1 {
            return Err(parse_err(
                no,
                format!(
                    "weights are on {dim}-simplices, found {} vertices",
                    ids.len()
                ),
            ));
        }
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| parse_err(no, format!("'{}' is not a number", value.trim())))?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(parse_err(
                no,
                format!("weight {value} is not a non-negative real"),
            ));
        }
        let simplex = complex
            .simplex_from_labels(&ids)
            .map_err(|_| parse_err(no, "simplex is not in the complex"))?;
        let index = complex.index_of(&simplex).expect("checked membership");
        if seen.insert(index, value).is_some() {
            return Err(parse_err(no, "simplex weighted twice"));
        }
    }
    WeightFunction::from_pairs(complex, dim, seen)
}

/// Every simplex of the weight function's dimension with its weight.
pub fn write_weights(complex: &SimplicialComplex, weights: &WeightFunction) -> String {
    let mut out = String::new();
    for (i, s) in complex.simplices(weights.dim()).iter().enumerate() {
        let _ = writeln!(out, "{} : {}", complex.format_simplex(s), weights.get(i));
    }
    out
}
