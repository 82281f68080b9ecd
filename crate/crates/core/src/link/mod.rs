//! Braid words, torus links and the ribbon link polynomials.
//!
//! Closures are evaluated by [`labels`], which follows S_t-orbits of label
//! tuples through the braid. [`diagrams`] composes the braid endomorphism in
//! the partition category and closes it strand by strand; it is exponential in
//! the ambient width and serves as the reference for small cases.

pub mod diagrams;
pub mod labels;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::center::{CenterObject, Provenance};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rho::RhoMap;
use crate::ring::CycPoly;

pub use diagrams::{braid_endomorphism, closure_by_diagrams, ClosingOrder};
pub use labels::{LabelModel, DEFAULT_MAX_STATES};

/// A word in the Artin generators; +i is σ_i, −i its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::OutOfRange("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::OutOfRange(format!("letter {bad} outside ±1..±{}", strands - 1)));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Whitespace- or comma-separated signed generators, e.g. `+1 -2 +1`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i32>().map_err(|_| Error::Parse(format!("bad braid letter {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// This word followed by `other` on the same strands.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if other.strands != self.strands {
            return Err(Error::WidthMismatch { expected: self.strands, found: other.strands });
        }
        Self::new(self.strands, self.letters.iter().chain(&other.letters).copied().collect())
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Reflection in the plane: every crossing changes sign.
    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Markov stabilization by σ_p^{±1} on one new strand.
    pub fn stabilize(&self, positive: bool) -> Self {
        let p = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { p } else { -p });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Inserts `letters` before position `at`.
    pub fn insert(&self, at: usize, letters: &[i32]) -> Result<Self> {
        let mut out = self.letters.clone();
        out.splice(at.min(out.len())..at.min(out.len()), letters.iter().copied());
        Self::new(self.strands, out)
    }

    /// Underlying permutation: strand at position j ends at position π(j).
    pub fn permutation(&self) -> Permutation {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut images = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation::from_images(images).expect("positions form a permutation")
    }

    /// Number of link components of the closure.
    pub fn components(&self) -> usize {
        self.permutation().cycles().len()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.letters.iter().map(|l| format!("{l:+}")).collect::<Vec<_>>().join(" ");
        write!(f, "{body}")
    }
}

/// T_{p,q}: the full cycle σ_1⋯σ_{p−1} raised to the power −q.
///
/// Sign convention: the tables list invariants of T_{2,−3} for the trefoil
/// obtained from three positive letters, so q < 0 yields positive letters.
pub fn torus_braid(p: usize, q: i64) -> Result<BraidWord> {
    if p == 0 {
        return Err(Error::OutOfRange("torus links need p ≥ 1".into()));
    }
    let cycle: Vec<i32> = if q < 0 { (1..p as i32).collect() } else { (1..p as i32).rev().map(|i| -i).collect() };
    let letters = std::iter::repeat(cycle).take(q.unsigned_abs() as usize).flatten().collect();
    BraidWord::new(p, letters)
}

/// A link presented as a braid closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkSpec {
    Torus { p: usize, q: i64 },
    Braid(BraidWord),
}

impl LinkSpec {
    pub fn unknot() -> Self {
        LinkSpec::Torus { p: 1, q: 0 }
    }

    pub fn braid(&self) -> Result<BraidWord> {
        match self {
            LinkSpec::Torus { p, q } => torus_braid(*p, *q),
            LinkSpec::Braid(b) => Ok(b.clone()),
        }
    }
}

impl fmt::Display for LinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkSpec::Torus { p, q } => write!(f, "torus:{p},{q}"),
            LinkSpec::Braid(b) => write!(f, "braid:{}:\"{b}\"", b.strands()),
        }
    }
}

impl FromStr for LinkSpec {
    type Err = Error;

    /// `torus:p,q`, `braid:p:"+1 -2 +1"` (quotes optional) or `unknot`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unknot" {
            return Ok(LinkSpec::unknot());
        }
        if let Some(rest) = s.strip_prefix("torus:") {
            let (p, q) = rest.split_once(',').ok_or_else(|| Error::Parse(format!("{s:?}: expected torus:p,q")))?;
            let p = p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad strand count in {s:?}")))?;
            let q = q.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad twist count in {s:?}")))?;
            if p == 0 {
                return Err(Error::Parse("torus links need p ≥ 1".into()));
            }
            return Ok(LinkSpec::Torus { p, q });
        }
        if let Some(rest) = s.strip_prefix("braid:") {
            let (p, word) = rest.split_once(':').unwrap_or((rest, ""));
            let p = p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad strand count in {s:?}")))?;
            let word = word.trim().trim_matches('"');
            return BraidWord::parse(p, word).map(LinkSpec::Braid).map_err(|e| Error::Parse(e.to_string()));
        }
        Err(Error::Parse(format!("unknown link spec {s:?}; use torus:p,q or braid:p:\"…\"")))
    }
}

/// Closure invariant of an object on a link, possibly divided by its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub value: CycPoly,
    pub dimension: CycPoly,
    pub object: String,
    pub link: LinkSpec,
    pub normalized: bool,
}

impl InvariantResult {
    pub(crate) fn new(raw: CycPoly, dimension: CycPoly, object: String, link: &LinkSpec, normalize: bool) -> Result<Self> {
        let value = if normalize { raw.div_exact(&dimension)? } else { raw };
        Ok(InvariantResult { value, dimension, object, link: link.clone(), normalized: normalize })
    }

    /// The unnormalized invariant.
    pub fn raw(&self) -> CycPoly {
        if self.normalized {
            &self.value * &self.dimension
        } else {
            self.value.clone()
        }
    }
}

/// Closure invariant of any center object: by label tracking when the object
/// came from W_{σ,ρ}, V^μ or their sums, by diagrams otherwise.
pub fn closure_invariant(w: &CenterObject, b: &BraidWord) -> Result<CycPoly> {
    match LabelModel::from_provenance(w.provenance()) {
        Ok(model) => model.closure(b, DEFAULT_MAX_STATES),
        Err(_) => closure_by_diagrams(w, b, ClosingOrder::RightToLeft),
    }
}

/// P_{μ,ρ}(L) = Inv_{W_{σ,ρ}}(L), with σ = ρ.sigma() of cycle type μ.
pub fn p_mu_rho(rho: &RhoMap, link: &LinkSpec, normalize: bool, max_states: u64) -> Result<InvariantResult> {
    let model = LabelModel::interpolation(rho);
    let raw = model.closure(&link.braid()?, max_states)?;
    let dim = model.dimension()?;
    let name = format!("W[mu={}; sigma={}]", rho.sigma().cycle_type(), rho.sigma());
    InvariantResult::new(raw, dim, name, link, normalize)
}

/// P_n(L) = Inv_{D_n}(L).
pub fn p_n(n: usize, link: &LinkSpec, normalize: bool, max_states: u64) -> Result<InvariantResult> {
    let model = LabelModel::regular_sum(n)?;
    let raw = model.closure(&link.braid()?, max_states)?;
    let dim = model.dimension()?;
    InvariantResult::new(raw, dim, format!("D[n={n}]"), link, normalize)
}

/// Reports whether the provenance can be evaluated by label tracking.
pub fn label_evaluable(p: &Provenance) -> bool {
    LabelModel::from_provenance(p).is_ok()
}

#[cfg(test)]
mod tests;
