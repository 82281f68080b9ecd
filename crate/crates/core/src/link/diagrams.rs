//! Braid endomorphisms composed in the partition category.

use super::BraidWord;
use crate::center::{Block, CenterObject};
use crate::error::{Error, Result};
use crate::ring::CycPoly;

/// Ambient width beyond which the diagrammatic route refuses to run.
pub const MAX_DIAGRAM_WIDTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosingOrder {
    LeftToRight,
    RightToLeft,
}

/// The braid acting on W^{⊗p}: +i braids factors i and i+1, −i undoes it.
pub fn braid_endomorphism(w: &CenterObject, b: &BraidWord) -> Result<Block> {
    let (n, m, p) = (w.width(), w.multiplicity(), b.strands());
    if n * p > MAX_DIAGRAM_WIDTH {
        return Err(Error::Guard(format!("diagrammatic closure of width {} exceeds {MAX_DIAGRAM_WIDTH}", n * p)));
    }
    let mut acc = w.idempotent().clone();
    for _ in 1..p {
        acc = acc.tensor(w.idempotent());
    }
    let over = if b.letters().iter().any(|&l| l > 0) { Some(w.braiding(w)?) } else { None };
    let under = if b.letters().iter().any(|&l| l < 0) { Some(w.inverse_braiding(w)?) } else { None };
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize;
        let local = if l > 0 { over.as_ref() } else { under.as_ref() }.expect("built above");
        acc = acc.post_window(local, (i - 1) * n, m.pow(i as u32 - 1), m.pow((p - i - 1) as u32))?;
    }
    Ok(acc)
}

/// Trace of [`braid_endomorphism`] by closing one strand group at a time.
pub fn closure_by_diagrams(w: &CenterObject, b: &BraidWord, order: ClosingOrder) -> Result<CycPoly> {
    let (n, m) = (w.width(), w.multiplicity());
    let mut acc = braid_endomorphism(w, b)?;
    for _ in 0..b.strands() {
        acc = acc.partial_trace(n, m, order == ClosingOrder::RightToLeft)?;
    }
    acc.trace()
}
