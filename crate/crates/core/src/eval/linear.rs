//! The linear system `z = A z + b` over the values of the average vertices that
//! remain after the zero set has been removed, and its exact solution.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Result, SsgError};
use crate::game::VertexId;
use crate::rational::Rational;
use crate::structure::scc::tarjan;

/// `z = A z + b`. Row `i` belongs to the average vertex `variables[i]`; each row of
/// `A` holds at most two entries, each a multiple of 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub variables: Vec<VertexId>,
    pub coefficients: Vec<Vec<(usize, Rational)>>,
    pub offset: Vec<Rational>,
}

impl LinearSystem {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Solves `(I - A) z = b` exactly.
    ///
    /// The dependency graph between variables is condensed first; components are
    /// solved in reverse topological order so only cyclic blocks need elimination.
    /// `I - A` is a nonsingular M-matrix once the zero set is gone, so diagonal
    /// pivots never vanish; a zero pivot is reported as an invariant failure.
    pub fn solve(&self) -> Result<Vec<Rational>> {
        let n = self.len();
        let adj: Vec<Vec<usize>> = self
            .coefficients
            .iter()
            .map(|row| row.iter().map(|(j, _)| *j).collect())
            .collect();
        let comps = tarjan(n, |v| adj[v].iter().copied());
        let mut solution: Vec<Option<Rational>> = vec![None; n];
        let mut local = vec![usize::MAX; n];

        for comp in &comps {
            if comp.len() == 1 {
                let i = comp[0];
                let mut rhs = self.offset[i].clone();
                let mut diag = Rational::one();
                for (j, c) in &self.coefficients[i] {
                    if *j == i {
                        diag -= c;
                    } else {
                        rhs += c * solution[*j].as_ref().expect("dependency solved");
                    }
                }
                if diag.is_zero() {
                    return Err(SsgError::invariant("singular system: absorbing average vertex"));
                }
                solution[i] = Some(rhs / diag);
                continue;
            }

            for (k, &i) in comp.iter().enumerate() {
                local[i] = k;
            }
            let m = comp.len();
            let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); m];
            let mut rhs: Vec<Rational> = Vec::with_capacity(m);
            for (k, &i) in comp.iter().enumerate() {
                let mut r = self.offset[i].clone();
                rows[k].insert(k, Rational::one());
                for (j, c) in &self.coefficients[i] {
                    if let Some(z) = &solution[*j] {
                        r += c * z;
                    } else {
                        let e = rows[k].entry(local[*j]).or_insert_with(Rational::zero);
                        *e -= c;
                    }
                }
                rhs.push(r);
            }
            let z = eliminate(rows, rhs)?;
            for (k, &i) in comp.iter().enumerate() {
                solution[i] = Some(z[k].clone());
            }
        }
        Ok(solution.into_iter().map(|z| z.expect("all solved")).collect())
    }
}

/// Sparse Gaussian elimination with diagonal pivots followed by back substitution.
fn eliminate(mut rows: Vec<BTreeMap<usize, Rational>>, mut rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let m = rows.len();
    rows.iter_mut().for_each(|r| r.retain(|_, c| !c.is_zero()));
    // col_rows[c] = rows below the current pivot with a nonzero in column c
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            if c < r {
                col_rows[c].push(r);
            }
        }
    }
    for k in 0..m {
        let pivot = match rows[k].get(&k) {
            Some(p) if !p.is_zero() => p.clone(),
            _ => return Err(SsgError::invariant("singular system: zero pivot")),
        };
        let targets = std::mem::take(&mut col_rows[k]);
        let pivot_row: Vec<(usize, Rational)> = rows[k]
            .iter()
            .filter(|(c, _)| **c > k)
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        let pivot_rhs = rhs[k].clone();
        for r in targets {
            let Some(lead) = rows[r].remove(&k) else { continue };
            if lead.is_zero() {
                continue;
            }
            let factor = lead / &pivot;
            for (c, v) in &pivot_row {
                let e = rows[r].entry(*c).or_insert_with(Rational::zero);
                let was_zero = e.is_zero();
                *e -= &factor * v;
                if e.is_zero() {
                    rows[r].remove(c);
                } else if was_zero && *c < r {
                    col_rows[*c].push(r);
                }
            }
            rhs[r] -= &factor * &pivot_rhs;
        }
    }
    let mut z = vec![Rational::zero(); m];
    for k in (0..m).rev() {
        let mut acc = rhs[k].clone();
        for (c, v) in rows[k].range(k + 1..) {
            acc -= v * &z[*c];
        }
        z[k] = acc / &rows[k][&k];
    }
    Ok(z)
}
