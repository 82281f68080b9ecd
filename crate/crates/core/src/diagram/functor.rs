//! The functor to S_n-modules: [d] ↦ V_n^{⊗d} with V_n = 𝕜^n.
//!
//! A partition λ sends v_𝐢 to the sum of v_𝐣 whose joint pattern (𝐢, 𝐣)
//! equals or coarsens λ; x_λ keeps only the exact pattern. Tuples are indexed
//! with the first tensor factor most significant, so tensor products become
//! Kronecker products.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Basis, BlockMorphism, Diagram};
use crate::error::{Error, Result};
use crate::partition::{is_coarser, pattern, Labels, SetPartition};
use crate::ring::{CycMatrix, Cyclotomic};

/// Bound on n^width for either side of the matrix.
pub const MAX_FUNCTOR_SIDE: u64 = 1_000_000;
/// Bound on the number of dense matrix entries.
pub const MAX_FUNCTOR_ENTRIES: u64 = 1_000_000;

fn side(n: usize, width: usize) -> Result<usize> {
    let s = (n as u64).checked_pow(width as u32).filter(|&s| s <= MAX_FUNCTOR_SIDE);
    s.map(|s| s as usize)
        .ok_or_else(|| Error::Guard(format!("{n}^{width} exceeds the functor bound {MAX_FUNCTOR_SIDE}")))
}

fn digits(mut idx: usize, n: usize, width: usize, out: &mut Labels) {
    let start = out.len();
    out.extend(std::iter::repeat(0).take(width));
    for k in (0..width).rev() {
        out[start + k] = (idx % n) as u8;
        idx /= n;
    }
}

/// Evaluates one diagram; rows are output tuples, columns input tuples.
pub fn functor_matrix<B: Basis>(n: usize, f: &Diagram<B>) -> Result<CycMatrix> {
    let rows = side(n, f.lower())?;
    let cols = side(n, f.upper())?;
    if (rows as u64) * (cols as u64) > MAX_FUNCTOR_ENTRIES {
        return Err(Error::Guard(format!("{rows}x{cols} functor matrix exceeds {MAX_FUNCTOR_ENTRIES} entries")));
    }
    let values: Vec<(SetPartition, Cyclotomic)> = f.terms().map(|(p, c)| (p.clone(), c.eval_int(n as i64))).collect();
    let exact: HashMap<&[u8], &Cyclotomic> = values.iter().map(|(p, c)| (p.labels(), c)).collect();
    let (k, l) = f.widths();
    let data: Vec<Vec<Cyclotomic>> = (0..rows)
        .into_par_iter()
        .map(|r| {
            let mut row = Vec::with_capacity(cols);
            let mut tuple = Labels::new();
            for c in 0..cols {
                tuple.clear();
                digits(c, n.max(1), k, &mut tuple);
                digits(r, n.max(1), l, &mut tuple);
                let pat = pattern(&tuple);
                let entry = if B::IS_ORBIT {
                    exact.get(pat.as_slice()).map_or_else(|| Cyclotomic::zero(1), |c| (*c).clone())
                } else {
                    let target = SetPartition::from_canonical(k, l, pat);
                    let mut acc = Cyclotomic::zero(1);
                    for (p, v) in &values {
                        if is_coarser(&target, p).expect("equal widths") {
                            acc += v;
                        }
                    }
                    acc
                };
                row.push(entry);
            }
            row
        })
        .collect();
    if rows == 0 {
        return Ok(CycMatrix::zeros(0, cols));
    }
    CycMatrix::from_rows(data)
}

/// Evaluates a block matrix, multiplicity index major.
pub fn functor_block<B: Basis>(n: usize, f: &BlockMorphism<B>) -> Result<CycMatrix> {
    let rs = side(n, f.lower())?;
    let cs = side(n, f.upper())?;
    let (rows, cols) = (f.rows() * rs, f.cols() * cs);
    if (rows as u64) * (cols as u64) > MAX_FUNCTOR_ENTRIES {
        return Err(Error::Guard(format!("{rows}x{cols} functor matrix exceeds {MAX_FUNCTOR_ENTRIES} entries")));
    }
    let mut out = CycMatrix::zeros(rows, cols);
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            let e = f.entry(i, j);
            if e.is_zero() {
                continue;
            }
            let m = functor_matrix(n, e)?;
            for a in 0..rs {
                for b in 0..cs {
                    let v = m.get(a, b);
                    if !v.is_zero() {
                        out.set(i * rs + a, j * cs + b, v.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}
