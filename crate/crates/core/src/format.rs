//! Plain-text game files.
//!
//! ```text
//! ssg 1
//! # comment
//! 0 max 1 2
//! 1 ave 2 3
//! 2 sink 1/1
//! 3 sink 0/1
//! ```
//!
//! Vertex ids must be exactly `0..n` (any order). Sink values are written reduced;
//! unreduced fractions and bare integers are accepted on input.

use std::fmt::Write as _;

use crate::error::{Result, SsgError};
use crate::game::{Game, VertexId, VertexKind, ViolationKind};
use crate::rational::{fmt_ratio, in_unit_interval, parse_ratio};

pub const HEADER: &str = "ssg 1";

pub fn serialize(game: &Game) -> String {
    let mut out = String::with_capacity(16 * game.len() + 8);
    out.push_str(HEADER);
    out.push('\n');
    for v in game.vertices() {
        let tag = match game.kind(v) {
            VertexKind::Max => "max",
            VertexKind::Min => "min",
            VertexKind::Ave => "ave",
            VertexKind::Sink(s) => {
                let _ = writeln!(out, "{} sink {}", v.0, fmt_ratio(s));
                continue;
            }
        };
        let _ = write!(out, "{} {tag}", v.0);
        for w in game.successors(v) {
            let _ = write!(out, " {}", w.0);
        }
        out.push('\n');
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> SsgError {
    SsgError::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<Game> {
    let mut header_seen = false;
    // (line, kind, successors as written)
    let mut entries: Vec<Option<(usize, VertexKind, Vec<usize>)>> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !header_seen {
            if content.split_whitespace().collect::<Vec<_>>() != ["ssg", "1"] {
                return Err(err(line, format!("expected header `{HEADER}`, found `{content}`")));
            }
            header_seen = true;
            continue;
        }
        let mut tokens = content.split_whitespace();
        let id_tok = tokens.next().expect("nonempty line");
        let id: usize = id_tok
            .parse()
            .map_err(|_| err(line, format!("expected a vertex id, found `{id_tok}`")))?;
        let kind_tok = tokens.next().ok_or_else(|| err(line, "missing vertex kind"))?;
        let rest: Vec<&str> = tokens.collect();
        let (kind, succ) = match kind_tok {
            "sink" => {
                let [value] = rest[..] else {
                    return Err(err(line, "a sink takes exactly one value"));
                };
                let r = parse_ratio(value).ok_or_else(|| err(line, format!("bad sink value `{value}`")))?;
                if !in_unit_interval(&r) {
                    return Err(err(line, format!("sink value {value} lies outside [0, 1]")));
                }
                (VertexKind::Sink(r), vec![id])
            }
            "max" | "min" | "ave" => {
                let succ = rest
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("bad successor id `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let kind = match kind_tok {
                    "max" => VertexKind::Max,
                    "min" => VertexKind::Min,
                    _ => VertexKind::Ave,
                };
                (kind, succ)
            }
            other => return Err(err(line, format!("unknown vertex kind `{other}`"))),
        };
        if entries.len() <= id {
            entries.resize(id + 1, None);
        }
        if let Some((first, _, _)) = &entries[id] {
            return Err(err(line, format!("duplicate vertex id {id} (first defined on line {first})")));
        }
        entries[id] = Some((line, kind, succ));
    }
    if !header_seen {
        return Err(err(last_line.max(1), format!("missing header `{HEADER}`")));
    }
    let n = entries.len();
    let mut kinds = Vec::with_capacity(n);
    let mut succs = Vec::with_capacity(n);
    let mut lines = Vec::with_capacity(n);
    for (id, e) in entries.into_iter().enumerate() {
        let (line, kind, succ) = e.ok_or_else(|| err(last_line, format!("vertex {id} is never defined")))?;
        if let Some(&bad) = succ.iter().find(|&&w| w >= n) {
            return Err(err(line, format!("successor {bad} does not exist")));
        }
        kinds.push(kind);
        succs.push(succ.into_iter().map(VertexId).collect());
        lines.push(line);
    }
    Game::new(kinds, succs).map_err(|e| match e {
        SsgError::InvalidGame(violations) => {
            let v = &violations[0];
            let msg = match &v.kind {
                ViolationKind::AveOutdegree(d) => format!("average vertex {} has {d} successors, needs 2", v.vertex),
                ViolationKind::NoSuccessor => format!("vertex {} has no successor", v.vertex),
                _ => v.to_string(),
            };
            err(lines[v.vertex.0], msg)
        }
        other => other,
    })
}
