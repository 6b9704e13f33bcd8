use std::fmt::Write as _;

use super::ParseError;
use crate::model::{GameGraph, Strategy};
use crate::result::SolveResult;

/// `winner v 0|1` per vertex, then `strategy u -> v`, then `witness v stem
/// ... cycle ...` when witnesses are present and `witnesses` is set.
pub fn serialize_result(g: &GameGraph, r: &SolveResult, witnesses: bool) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "winner {} {}", g.name(v), r.winner(v).index()).unwrap();
    }
    for (&u, &v) in &r.strategy0 {
        writeln!(out, "strategy {} -> {}", g.name(u), g.name(v)).unwrap();
    }
    if let (true, Some(ws)) = (witnesses, &r.witness) {
        for (&v, l) in ws {
            let names = |xs: &[usize]| xs.iter().map(|&x| format!(" {}", g.name(x))).collect::<String>();
            writeln!(out, "witness {} stem{} cycle{}", g.name(v), names(&l.stem), names(&l.cycle)).unwrap();
        }
    }
    out
}

/// Reads `strategy u -> v` lines (the `strategy` keyword is optional);
/// `winner` and `witness` lines and comments are skipped.
pub fn parse_strategy(g: &GameGraph, text: &str) -> Result<Strategy, ParseError> {
    let mut s = Strategy::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None | Some(&"winner") | Some(&"witness") => continue,
            Some(&"strategy") => {
                toks.remove(0);
            }
            _ => {}
        }
        let [u, "->", v] = toks[..] else {
            return Err(ParseError::new(i + 1, 1, "expected `strategy U -> V`"));
        };
        let id = |name: &str| g.id(name).ok_or_else(|| ParseError::new(i + 1, 1, format!("unknown vertex `{name}`")));
        let (u, v) = (id(u)?, id(v)?);
        if !g.has_edge(u, v) {
            return Err(ParseError::new(i + 1, 1, format!("{} is not an edge", g.edge_name((u, v)))));
        }
        if s.insert(u, v).is_some() {
            return Err(ParseError::new(i + 1, 1, format!("second move for `{}`", g.name(u))));
        }
    }
    Ok(s)
}
