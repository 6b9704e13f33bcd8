use crate::error::{Error, Result};
use crate::reductions::sat::CnfFormula;

/// Tries every assignment. At most 20 variables.
pub fn sat_brute(f: &CnfFormula) -> Result<bool> {
    if f.vars > 20 {
        return Err(Error::Bound {
            what: "variables for brute-force SAT",
            bound: 20,
            actual: f.vars as u64,
        });
    }
    let holds = |bits: u32, lit: i32| {
        let v = lit.unsigned_abs() - 1;
        (bits >> v & 1 == 1) == (lit > 0)
    };
    Ok((0u32..1 << f.vars).any(|bits| f.clauses.iter().all(|c| c.iter().any(|&l| holds(bits, l)))))
}
