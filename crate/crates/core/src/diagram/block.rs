//! Matrices of diagrams: morphisms between direct sums [n]^{⊕s} → [n]^{⊕r}.
//!
//! Entry (i, j) is the component from source summand j to target summand i,
//! so composition is the matrix product and the tensor product is the
//! Kronecker product with the first factor major.

use std::fmt;

use rayon::prelude::*;

use super::{Basis, Diagram, OrbitBasis};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ring::{CycMatrix, CycPoly, Cyclotomic};

#[derive(Clone, PartialEq, Eq)]
pub struct BlockMorphism<B: Basis> {
    rows: usize,
    cols: usize,
    upper: usize,
    lower: usize,
    entries: Vec<Diagram<B>>,
}

impl<B: Basis> BlockMorphism<B> {
    pub fn zeros(rows: usize, cols: usize, upper: usize, lower: usize) -> Self {
        BlockMorphism { rows, cols, upper, lower, entries: vec![Diagram::zero(upper, lower); rows * cols] }
    }

    pub fn identity(width: usize, multiplicity: usize) -> Self {
        Self::from_matrix(&Diagram::identity(width), &CycMatrix::identity(multiplicity))
    }

    pub fn from_diagram(d: Diagram<B>) -> Self {
        let (upper, lower) = d.widths();
        BlockMorphism { rows: 1, cols: 1, upper, lower, entries: vec![d] }
    }

    /// d ⊗ A: entry (i, j) is A_ij · d.
    pub fn from_matrix(d: &Diagram<B>, a: &CycMatrix) -> Self {
        let entries = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .map(|(i, j)| d.scale_cyclotomic(a.get(i, j)))
            .collect();
        BlockMorphism { rows: a.rows(), cols: a.cols(), upper: d.upper(), lower: d.lower(), entries }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Diagram<B>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} block matrix", entries.len())));
        }
        let (upper, lower) = entries[0].widths();
        if entries.iter().any(|e| e.widths() != (upper, lower)) {
            return Err(Error::ShapeMismatch("block entries with different widths".into()));
        }
        Ok(BlockMorphism { rows, cols, upper, lower, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn entry(&self, i: usize, j: usize) -> &Diagram<B> {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, d: Diagram<B>) -> Result<()> {
        if d.widths() != (self.upper, self.lower) {
            return Err(Error::ShapeMismatch("entry widths differ from the block matrix".into()));
        }
        self.entries[i * self.cols + j] = d;
        Ok(())
    }

    pub fn entries(&self) -> &[Diagram<B>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Diagram::is_zero)
    }

    /// Total number of basis terms over all entries.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(Diagram::len).sum()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols, self.upper, self.lower) != (other.rows, other.cols, other.upper, other.lower) {
            return Err(Error::ShapeMismatch("block morphisms of different shapes".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Diagram<B>>) -> Self {
        BlockMorphism { rows: self.rows, cols: self.cols, upper: self.upper, lower: self.lower, entries }
    }

    pub fn scale(&self, s: &CycPoly) -> Self {
        self.with_entries(self.entries.iter().map(|e| e.scale(s)).collect())
    }

    pub fn scale_cyclotomic(&self, s: &Cyclotomic) -> Self {
        self.with_entries(self.entries.iter().map(|e| e.scale_cyclotomic(s)).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.upper != other.lower {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} ({}->{}) after {}x{} ({}->{})",
                self.rows, self.cols, self.upper, self.lower, other.rows, other.cols, other.upper, other.lower
            )));
        }
        let entries = (0..self.rows * other.cols)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / other.cols, idx % other.cols);
                let mut acc = Diagram::zero(other.upper, self.lower);
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.compose(b)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockMorphism { rows: self.rows, cols: other.cols, upper: other.upper, lower: self.lower, entries })
    }

    /// Double Kronecker product: diagrams side by side, multiplicities first-major.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let entries = (0..rows * cols)
            .into_par_iter()
            .map(|idx| {
                let (r, c) = (idx / cols, idx % cols);
                let a = self.entry(r / other.rows, c / other.cols);
                let b = other.entry(r % other.rows, c % other.cols);
                if a.is_zero() || b.is_zero() {
                    Diagram::zero(self.upper + other.upper, self.lower + other.lower)
                } else {
                    a.tensor(b)
                }
            })
            .collect();
        BlockMorphism { rows, cols, upper: self.upper + other.upper, lower: self.lower + other.lower, entries }
    }

    /// f ⊗ A ↦ f* ⊗ Aᵗ.
    pub fn dual(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).dual());
            }
        }
        BlockMorphism { rows: self.cols, cols: self.rows, upper: self.lower, lower: self.upper, entries }
    }

    pub fn trace(&self) -> Result<CycPoly> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("trace of a non-square block matrix".into()));
        }
        let mut acc = CycPoly::zero();
        for i in 0..self.rows {
            acc += &self.entry(i, i).trace()?;
        }
        Ok(acc)
    }

    /// Closes the last (or first) tensor factor of width `width` and multiplicity `mult`.
    pub fn partial_trace(&self, width: usize, mult: usize, right: bool) -> Result<Self> {
        if self.rows != self.cols || mult == 0 || self.rows % mult != 0 {
            return Err(Error::ShapeMismatch(format!("cannot close a factor of multiplicity {mult} in {}x{}", self.rows, self.cols)));
        }
        let outer = self.rows / mult;
        let idx = |a: usize, k: usize| if right { a * mult + k } else { k * outer + a };
        let entries = (0..outer * outer)
            .into_par_iter()
            .map(|e| {
                let (a, b) = (e / outer, e % outer);
                let mut acc = Diagram::zero(self.upper - width, self.lower - width);
                for k in 0..mult {
                    let d = self.entry(idx(a, k), idx(b, k));
                    if !d.is_zero() {
                        acc = acc.add(&d.partial_trace(width, right)?)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockMorphism { rows: outer, cols: outer, upper: self.upper - width, lower: self.lower - width, entries })
    }

    /// `(I_left ⊗ local ⊗ I_right) ∘ self`, the local strands starting at `offset`.
    pub fn post_window(&self, local: &Self, offset: usize, left: usize, right: usize) -> Result<Self> {
        if self.rows != left * local.cols * right {
            return Err(Error::ShapeMismatch(format!(
                "window multiplicity {}·{}·{} does not match {} rows",
                left, local.cols, right, self.rows
            )));
        }
        let rows = left * local.rows * right;
        let lower = self.lower - local.upper + local.lower;
        let entries = (0..rows * self.cols)
            .into_par_iter()
            .map(|e| {
                let (r, c) = (e / self.cols, e % self.cols);
                let (a, rest) = (r / (local.rows * right), r % (local.rows * right));
                let (i, b) = (rest / right, rest % right);
                let mut acc = Diagram::zero(self.upper, lower);
                for j in 0..local.cols {
                    let l = local.entry(i, j);
                    let s = self.entry((a * local.cols + j) * right + b, c);
                    if !l.is_zero() && !s.is_zero() {
                        acc = acc.add(&s.post_window(l, offset)?)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockMorphism { rows, cols: self.cols, upper: self.upper, lower, entries })
    }

    /// `self ∘ (I_left ⊗ local ⊗ I_right)`.
    pub fn pre_window(&self, local: &Self, offset: usize, left: usize, right: usize) -> Result<Self> {
        Ok(self.dual().post_window(&local.dual(), offset, left, right)?.dual())
    }

    /// `(π_τ ⊗ I) ∘ self`, see [`Diagram::permute_lower`].
    pub fn permute_lower(&self, tau: &Permutation) -> Result<Self> {
        let entries: Vec<_> = self.entries.par_iter().map(|e| e.permute_lower(tau)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    /// `self ∘ (π_τ ⊗ I)`, see [`Diagram::permute_upper`].
    pub fn permute_upper(&self, tau: &Permutation) -> Result<Self> {
        let entries: Vec<_> = self.entries.par_iter().map(|e| e.permute_upper(tau)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    /// Row r of the result is row `perm[r]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &src in perm {
            entries.extend_from_slice(&self.entries[src * self.cols..(src + 1) * self.cols]);
        }
        self.with_entries(entries)
    }

    /// Column c of the result is column `perm[c]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            for &src in perm {
                entries.push(self.entry(i, src).clone());
            }
        }
        self.with_entries(entries)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        let (upper, lower) = (first.upper, first.lower);
        if parts.iter().any(|p| (p.upper, p.lower) != (upper, lower)) {
            return Err(Error::ShapeMismatch("direct sum of different widths".into()));
        }
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols, upper, lower);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = p.entry(i, j).clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn convert<C: Basis>(&self) -> Result<BlockMorphism<C>> {
        let entries = self.entries.iter().map(Diagram::convert::<C>).collect::<Result<_>>()?;
        Ok(BlockMorphism { rows: self.rows, cols: self.cols, upper: self.upper, lower: self.lower, entries })
    }

    pub fn specialize(&self, t: i64) -> Self {
        self.with_entries(self.entries.iter().map(|e| e.specialize(t)).collect())
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.entries.iter().fold(1, |n, e| crate::ring::lcm_order(n, e.cyclotomic_order()))
    }
}

impl<B: Basis> fmt::Display for BlockMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "[{i},{j}] {}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for BlockMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An object ([n]^{⊕m}, e) of the idempotent completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaroubiObject {
    width: usize,
    multiplicity: usize,
    idempotent: BlockMorphism<OrbitBasis>,
}

impl KaroubiObject {
    /// Checks e ∘ e = e exactly.
    pub fn new(idempotent: BlockMorphism<OrbitBasis>) -> Result<Self> {
        let obj = Self::new_unchecked(idempotent)?;
        if obj.idempotent.compose(&obj.idempotent)? != obj.idempotent {
            return Err(Error::Verification("block morphism is not idempotent".into()));
        }
        Ok(obj)
    }

    pub fn new_unchecked(idempotent: BlockMorphism<OrbitBasis>) -> Result<Self> {
        if idempotent.rows != idempotent.cols || idempotent.upper != idempotent.lower {
            return Err(Error::ShapeMismatch("an idempotent must be a square endomorphism".into()));
        }
        Ok(KaroubiObject { width: idempotent.upper, multiplicity: idempotent.rows, idempotent })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn idempotent(&self) -> &BlockMorphism<OrbitBasis> {
        &self.idempotent
    }

    pub fn tensor(&self, other: &Self) -> Self {
        KaroubiObject {
            width: self.width + other.width,
            multiplicity: self.multiplicity * other.multiplicity,
            idempotent: self.idempotent.tensor(&other.idempotent),
        }
    }

    pub fn dimension(&self) -> Result<CycPoly> {
        self.idempotent.trace()
    }
}
