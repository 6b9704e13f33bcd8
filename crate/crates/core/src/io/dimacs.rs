use super::ParseError;
use crate::reductions::CnfFormula;

/// Parses DIMACS CNF: `c` comment lines, one `p cnf VARS CLAUSES` header,
/// then zero-terminated clauses that may span lines. A `%` line ends the
/// input, as in the SATLIB benchmark files.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            let toks: Vec<&str> = t.split_whitespace().collect();
            let parsed = match toks[..] {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            if header.is_some() || parsed.is_none() {
                return Err(ParseError::new(no, 1, "malformed or repeated `p cnf` header"));
            }
            header = parsed;
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(ParseError::new(no, 1, "clause before the `p cnf` header"));
        };
        for tok in t.split_whitespace() {
            let col = line.find(tok).map_or(1, |p| p + 1);
            let lit: i32 = tok
                .parse()
                .map_err(|_| ParseError::new(no, col, format!("`{tok}` is not a literal")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(ParseError::new(no, col, format!("literal {lit} exceeds {vars} variables")));
            } else {
                cur.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| ParseError::new(0, 0, "missing `p cnf` header"))?;
    if !cur.is_empty() {
        clauses.push(cur);
    }
    if clauses.len() != count {
        return Err(ParseError::new(0, 0, format!("header announces {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses).map_err(|e| ParseError::new(0, 0, e.to_string()))
}
