//! Braid closures by following label tuples.
//!
//! At t = N the object [w] is (ℂ^N)^{⊗w} and the orbit basis element x_λ
//! sends a label tuple to the tuples whose joint equality pattern is exactly
//! λ. On the image of e every strand group carries distinct labels, and the
//! braiding is a bijection on such tuples: (X, Y) ↦ (h_X(Y), X), where h_X
//! sends X[s] to X[σ(s)] and fixes every other label. The trace is then a
//! sum over equality patterns of the p·w labels, a pattern with b classes
//! standing for (N)_b tuples. Everything is polynomial in N, hence valid at
//! generic t.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::BraidWord;
use crate::center::Provenance;
use crate::error::{Error, Result};
use crate::perm::{centralizer, CycleType, Permutation};
use crate::rho::RhoMap;
use crate::ring::{CycMatrix, CycPoly, Cyclotomic};

/// Default cap on the number of label patterns visited per closure.
pub const DEFAULT_MAX_STATES: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Component {
    sigma: Permutation,
    sigma_inv: Permutation,
    group: Vec<Permutation>,
    values: Vec<CycMatrix>,
}

impl Component {
    fn new(sigma: &Permutation, group: Vec<Permutation>, values: Vec<CycMatrix>) -> Self {
        let mut table: Vec<_> = group.into_iter().zip(values).collect();
        table.sort_by(|a, b| a.0.cmp(&b.0));
        let (group, values) = table.into_iter().unzip();
        Component { sigma: sigma.clone(), sigma_inv: sigma.inverse(), group, values }
    }

    fn value(&self, z: &[u8]) -> Option<&CycMatrix> {
        self.group
            .binary_search_by(|g| g.images().map(|i| i as u8).cmp(z.iter().copied()))
            .ok()
            .map(|i| &self.values[i])
    }
}

/// A uniform-width object reduced to what the closure needs: per summand, the
/// hop permutation σ and the weights ρ(z)/|Z|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelModel {
    n: usize,
    /// V^μ carries a second group of n labels that only travels along.
    spectator: bool,
    components: Vec<Component>,
}

impl LabelModel {
    pub fn interpolation(rho: &RhoMap) -> Self {
        let comp = Component::new(rho.sigma(), rho.group().to_vec(), rho.values().to_vec());
        LabelModel { n: rho.sigma().degree(), spectator: false, components: vec![comp] }
    }

    pub fn regular(mu: &CycleType) -> Result<Self> {
        let sigma = mu.representative();
        let group = centralizer(&sigma)?;
        let values = vec![CycMatrix::identity(1); group.len()];
        Ok(LabelModel { n: sigma.degree(), spectator: true, components: vec![Component::new(&sigma, group, values)] })
    }

    pub fn regular_sum(n: usize) -> Result<Self> {
        let parts = CycleType::all(n).iter().map(Self::regular).collect::<Result<Vec<_>>>()?;
        Self::sum(&parts)
    }

    pub fn unit() -> Self {
        let id = Permutation::identity(0);
        LabelModel { n: 0, spectator: false, components: vec![Component::new(&id, vec![id.clone()], vec![CycMatrix::identity(1)])] }
    }

    pub fn sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        if parts.iter().any(|p| p.n != first.n || p.spectator != first.spectator) {
            return Err(Error::ShapeMismatch("summands must share width and kind".into()));
        }
        Ok(LabelModel { n: first.n, spectator: first.spectator, components: parts.iter().flat_map(|p| p.components.clone()).collect() })
    }

    pub fn from_provenance(p: &Provenance) -> Result<Self> {
        match p {
            Provenance::Interpolation { rho, .. } => Ok(Self::interpolation(rho)),
            Provenance::Regular { mu, .. } => Self::regular(mu),
            Provenance::Unit => Ok(Self::unit()),
            Provenance::Sum(parts) => Self::sum(&parts.iter().map(Self::from_provenance).collect::<Result<Vec<_>>>()?),
            _ => Err(Error::Provenance("W_{σ,ρ}, V^μ, the unit or a direct sum of those".into())),
        }
    }

    /// Strands of [1] per braid strand.
    pub fn width(&self) -> usize {
        if self.spectator {
            2 * self.n
        } else {
            self.n
        }
    }

    pub fn dimension(&self) -> Result<CycPoly> {
        self.closure(&BraidWord::empty(1)?, u64::MAX)
    }

    /// Number of label patterns a closure on `strands` strands visits.
    pub fn state_count(&self, strands: usize) -> u128 {
        let n = self.n;
        let groups = strands * if self.spectator { 2 } else { 1 };
        // counts[b] = patterns with b classes so far.
        let mut counts: BTreeMap<usize, u128> = BTreeMap::from([(0, 1)]);
        for _ in 0..groups {
            for u in 0..n {
                let mut next = BTreeMap::new();
                for (&b, &c) in &counts {
                    if b > u {
                        *next.entry(b).or_insert(0u128) += c.saturating_mul((b - u) as u128);
                    }
                    *next.entry(b + 1).or_insert(0u128) += c;
                }
                counts = next;
            }
        }
        counts.values().fold(0u128, |a, &c| a.saturating_add(c))
    }

    /// The categorical trace of the braid acting on the object's p-th tensor power.
    pub fn closure(&self, word: &BraidWord, max_states: u64) -> Result<CycPoly> {
        let p = word.strands();
        let count = self.state_count(p);
        if count > max_states as u128 {
            return Err(Error::Guard(format!(
                "{count} label patterns for {p} strands of width {} exceed the limit {max_states}",
                self.width()
            )));
        }
        let states = self.enumerate(p);
        let slots = p * self.width();
        let cycles = word.permutation().cycles();
        let assignments = self.assignments(&cycles, p);
        let zero = || vec![Cyclotomic::from_int(0); slots + 1];
        let hist = if slots == 0 {
            let mut h = zero();
            self.accumulate(&[], word, &assignments, &mut h);
            h
        } else {
            states
                .par_chunks(slots)
                .fold(zero, |mut h, s| {
                    self.accumulate(s, word, &assignments, &mut h);
                    h
                })
                .reduce(zero, |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                })
        };
        let mut total = CycPoly::zero();
        for (b, c) in hist.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            total += &CycPoly::falling(0, b as u32).scale(c);
        }
        Ok(total)
    }

    /// Component choices constant along the cycles of the braid permutation.
    fn assignments(&self, cycles: &[Vec<usize>], p: usize) -> Vec<Vec<usize>> {
        let k = self.components.len();
        let mut out = Vec::new();
        let total = k.pow(cycles.len() as u32);
        for code in 0..total {
            let mut comps = vec![0; p];
            let mut c = code;
            for cycle in cycles {
                for &j in cycle {
                    comps[j] = c % k;
                }
                c /= k;
            }
            out.push(comps);
        }
        out
    }

    /// Every restricted-growth labelling with distinct labels inside each group.
    fn enumerate(&self, strands: usize) -> Vec<u8> {
        let n = self.n;
        let slots = strands * self.width();
        let mut out = Vec::new();
        let mut cur = vec![0u8; slots];
        fn rec(pos: usize, blocks: u8, n: usize, cur: &mut Vec<u8>, out: &mut Vec<u8>) {
            if pos == cur.len() {
                out.extend_from_slice(cur);
                return;
            }
            let start = pos - pos % n;
            for label in 0..=blocks {
                if cur[start..pos].contains(&label) {
                    continue;
                }
                cur[pos] = label;
                rec(pos + 1, blocks.max(label + 1), n, cur, out);
            }
        }
        if slots == 0 {
            return out;
        }
        rec(0, 0, n, &mut cur, &mut out);
        out
    }

    fn accumulate(&self, start: &[u8], word: &BraidWord, assignments: &[Vec<usize>], hist: &mut [Cyclotomic]) {
        let (n, w) = (self.n, self.width());
        let p = word.strands();
        let blocks = start.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        for comps in assignments {
            let mut labels = start.to_vec();
            let mut origin: Vec<usize> = (0..p).collect();
            for &letter in word.letters() {
                let a = letter.unsigned_abs() as usize - 1;
                let (left, right) = labels.split_at_mut((a + 1) * w);
                let x = &mut left[a * w..];
                let y = &mut right[..w];
                if letter > 0 {
                    // (X, Y) ↦ (h_X(Y), X)
                    let comp = &self.components[comps[origin[a]]];
                    let moved: Vec<u8> = y.iter().map(|&v| hop(x, n, &comp.sigma, v)).collect();
                    y.copy_from_slice(x);
                    x.copy_from_slice(&moved);
                } else {
                    // (X, Y) ↦ (Y, h_Y⁻¹(X))
                    let comp = &self.components[comps[origin[a + 1]]];
                    let moved: Vec<u8> = x.iter().map(|&v| hop(y, n, &comp.sigma_inv, v)).collect();
                    x.copy_from_slice(y);
                    y.copy_from_slice(&moved);
                }
                origin.swap(a, a + 1);
            }
            if let Some(weight) = self.projection_weight(start, &labels, &origin, comps) {
                hist[blocks] += &weight;
            }
        }
    }

    /// ⟨start| e^{⊗p} |end⟩ including the multiplicity trace along cycles.
    fn projection_weight(&self, start: &[u8], end: &[u8], origin: &[usize], comps: &[usize]) -> Option<Cyclotomic> {
        let (n, w) = (self.n, self.width());
        let p = origin.len();
        let mut mats: Vec<&CycMatrix> = Vec::with_capacity(p);
        let mut z = vec![0u8; n];
        for j in 0..p {
            let (s, f) = (&start[j * w..(j + 1) * w], &end[j * w..(j + 1) * w]);
            if self.spectator && s[n..] != f[n..] {
                return None;
            }
            // x_z moves the label in slot a to slot z(a).
            for a in 0..n {
                z[a] = s[..n].iter().position(|&l| l == f[a])? as u8;
            }
            mats.push(self.components[comps[j]].value(&z)?);
        }
        let mut weight = Cyclotomic::from_int(1);
        let mut seen = vec![false; p];
        for j0 in 0..p {
            if seen[j0] {
                continue;
            }
            let mut m = mats[j0].clone();
            seen[j0] = true;
            let mut j = origin[j0];
            while j != j0 {
                seen[j] = true;
                m = m.mul(mats[j]).expect("square matrices of one size");
                j = origin[j];
            }
            weight = &weight * &m.trace();
        }
        let order: usize = comps.iter().map(|&c| self.components[c].group.len()).product();
        Some(weight.scale(&crate::ring::rational(1, order as i64)))
    }
}

#[inline]
fn hop(x: &[u8], n: usize, sigma: &Permutation, v: u8) -> u8 {
    match x[..n].iter().position(|&l| l == v) {
        Some(s) => x[sigma.apply(s)],
        None => v,
    }
}
