//! Morphisms of the partition category: formal linear combinations of set
//! partitions with coefficients in ℚ(ζ_N)[t], in either the partition basis or
//! the orbit basis x_λ.
//!
//! The orbit basis is the workhorse: the idempotents of interpolation objects
//! are short sums of x_g, and x-products never need the Bell-number sized
//! coarsening sums that the partition basis produces.

mod block;
mod functor;
mod mobius;
mod orbit;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{compose_unchecked, parse_blocks, parse_widths, Labels, SetPartition, UnionFind};
use crate::perm::Permutation;
use crate::ring::{parse_poly, CycPoly, Cyclotomic};

pub use block::{BlockMorphism, KaroubiObject};
pub use functor::{functor_block, functor_matrix, MAX_FUNCTOR_ENTRIES, MAX_FUNCTOR_SIDE};
pub use mobius::MAX_MERGE_BLOCKS;

/// Scalar produced by a basis product: 1, t^k or (t − shift)(t − shift − 1)⋯ (len factors).
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    One,
    TPow(u32),
    Falling { shift: u32, len: u32 },
}

impl Weight {
    pub(crate) fn falling(shift: u32, len: u32) -> Self {
        if len == 0 {
            Weight::One
        } else {
            Weight::Falling { shift, len }
        }
    }

    pub(crate) fn t_pow(k: u32) -> Self {
        if k == 0 {
            Weight::One
        } else {
            Weight::TPow(k)
        }
    }

    pub(crate) fn poly(self) -> CycPoly {
        static CACHE: OnceLock<RwLock<HashMap<Weight, CycPoly>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.read().expect("weight cache poisoned").get(&self) {
            return p.clone();
        }
        let p = match self {
            Weight::One => CycPoly::one(),
            Weight::TPow(k) => CycPoly::t_pow(k),
            Weight::Falling { shift, len } => CycPoly::falling(shift as i64, len),
        };
        cache.write().expect("weight cache poisoned").entry(self).or_insert(p).clone()
    }
}

/// A basis of the partition algebra, fixing how basis elements multiply.
pub trait Basis: Copy + Default + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// Marker printed before each basis element in text form.
    const PREFIX: &'static str;
    const IS_ORBIT: bool;

    #[doc(hidden)]
    fn compose_terms(beta: &SetPartition, alpha: &SetPartition, out: &mut Vec<(SetPartition, Weight)>);
    #[doc(hidden)]
    fn tensor_terms(a: &SetPartition, b: &SetPartition, out: &mut Vec<(SetPartition, Weight)>);
    #[doc(hidden)]
    fn trace_term(p: &SetPartition) -> Option<Weight>;
    #[doc(hidden)]
    fn partial_trace_term(p: &SetPartition, close: usize, right: bool) -> Option<(SetPartition, Weight)>;
    #[doc(hidden)]
    fn window_terms(phi: &SetPartition, alpha: &SetPartition, offset: usize, out: &mut Vec<(SetPartition, Weight)>);
    /// The partition-basis element p, expanded in this basis.
    fn from_partition_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>>;
    /// The orbit-basis element x_p, expanded in this basis.
    fn from_orbit_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartitionBasis;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitBasis;

fn coarsenings_with_self(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
    Ok(mobius::merge_table(p.num_blocks())?.iter().map(|(rgs, _)| (p.merge_blocks(rgs), 1)).collect())
}

impl Basis for PartitionBasis {
    const PREFIX: &'static str = "";
    const IS_ORBIT: bool = false;

    fn compose_terms(beta: &SetPartition, alpha: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
        let (p, removed) = compose_unchecked(beta, alpha);
        out.push((p, Weight::t_pow(removed as u32)));
    }

    fn tensor_terms(a: &SetPartition, b: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
        out.push((a.tensor(b), Weight::One));
    }

    fn trace_term(p: &SetPartition) -> Option<Weight> {
        let closed = Self::partial_trace_term(p, p.upper(), true)?;
        Some(closed.1)
    }

    fn partial_trace_term(p: &SetPartition, close: usize, right: bool) -> Option<(SetPartition, Weight)> {
        // Closing strand j glues its two endpoints.
        let w = p.upper();
        let open = w - close;
        let (closed, kept) = if right { (open..w, 0..open) } else { (0..close, close..w) };
        let nb = p.num_blocks();
        let mut uf = UnionFind::new(nb);
        for j in closed {
            uf.union(p.upper_labels()[j] as usize, p.lower_labels()[j] as usize);
        }
        let mut labels = Labels::new();
        labels.extend(p.upper_labels()[kept.clone()].iter().map(|&l| uf.find(l as usize) as u8));
        labels.extend(p.lower_labels()[kept].iter().map(|&l| uf.find(l as usize) as u8));
        let mut present = vec![false; nb];
        for &l in &labels {
            present[l as usize] = true;
        }
        let removed = (0..nb).filter(|&b| uf.find(b) == b && !present[b]).count();
        Some((SetPartition::from_labels(open, open, labels), Weight::t_pow(removed as u32)))
    }

    fn window_terms(phi: &SetPartition, alpha: &SetPartition, offset: usize, out: &mut Vec<(SetPartition, Weight)>) {
        let rest = alpha.lower() - offset - phi.upper();
        let local = SetPartition::identity(offset).tensor(phi).tensor(&SetPartition::identity(rest));
        Self::compose_terms(&local, alpha, out);
    }

    fn from_partition_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
        Ok(vec![(p.clone(), 1)])
    }

    fn from_orbit_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
        Ok(mobius::merge_table(p.num_blocks())?.iter().map(|(rgs, c)| (p.merge_blocks(rgs), *c)).collect())
    }
}

impl Basis for OrbitBasis {
    const PREFIX: &'static str = "x";
    const IS_ORBIT: bool = true;

    fn compose_terms(beta: &SetPartition, alpha: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
        orbit::compose(beta, alpha, out);
    }

    fn tensor_terms(a: &SetPartition, b: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
        orbit::tensor(a, b, out);
    }

    fn trace_term(p: &SetPartition) -> Option<Weight> {
        orbit::trace(p)
    }

    fn partial_trace_term(p: &SetPartition, close: usize, right: bool) -> Option<(SetPartition, Weight)> {
        orbit::partial_trace(p, close, right)
    }

    fn window_terms(phi: &SetPartition, alpha: &SetPartition, offset: usize, out: &mut Vec<(SetPartition, Weight)>) {
        orbit::window(phi, alpha, offset, out);
    }

    fn from_partition_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
        coarsenings_with_self(p)
    }

    fn from_orbit_element(p: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
        Ok(vec![(p.clone(), 1)])
    }
}

type Terms = BTreeMap<SetPartition, CycPoly>;

/// Sparse linear combination of basis elements of P_{k,l}; no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram<B: Basis> {
    upper: usize,
    lower: usize,
    terms: Terms,
    basis: PhantomData<B>,
}

pub type PartitionDiagram = Diagram<PartitionBasis>;
pub type OrbitDiagram = Diagram<OrbitBasis>;

/// Term-pair count above which bilinear products fan out over threads.
const PARALLEL_THRESHOLD: usize = 512;

fn accumulate(acc: &mut Terms, p: SetPartition, c: CycPoly) {
    match acc.entry(p) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
        }
    }
}

fn merge(mut a: Terms, b: Terms) -> Terms {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (p, c) in b {
        accumulate(&mut a, p, c);
    }
    a
}

fn weighted(c: CycPoly, w: Weight) -> CycPoly {
    match w {
        Weight::One => c,
        w => &c * &w.poly(),
    }
}

/// Σ_{a,b} ca·cb·f(a, b) with f producing weighted basis elements.
fn bilinear<F>(left: &Terms, right: &Terms, f: F) -> Terms
where
    F: Fn(&SetPartition, &SetPartition, &mut Vec<(SetPartition, Weight)>) + Sync,
{
    let body = |mut acc: Terms, (pb, cb): (&SetPartition, &CycPoly)| {
        let mut buf = Vec::new();
        for (pa, ca) in left {
            buf.clear();
            f(pa, pb, &mut buf);
            if buf.is_empty() {
                continue;
            }
            let c = ca * cb;
            for (p, w) in buf.drain(..) {
                accumulate(&mut acc, p, weighted(c.clone(), w));
            }
        }
        acc
    };
    let mut out = if left.len() * right.len() >= PARALLEL_THRESHOLD {
        right.par_iter().fold(Terms::new, body).reduce(Terms::new, merge)
    } else {
        right.iter().fold(Terms::new(), body)
    };
    out.retain(|_, c| !c.is_zero());
    out
}

impl<B: Basis> Diagram<B> {
    pub fn zero(upper: usize, lower: usize) -> Self {
        Diagram { upper, lower, terms: Terms::new(), basis: PhantomData }
    }

    /// A single basis element of this basis.
    pub fn basis_element(p: SetPartition) -> Self {
        let (upper, lower) = p.widths();
        let mut terms = Terms::new();
        terms.insert(p, CycPoly::one());
        Diagram { upper, lower, terms, basis: PhantomData }
    }

    pub fn from_terms(upper: usize, lower: usize, terms: impl IntoIterator<Item = (SetPartition, CycPoly)>) -> Result<Self> {
        let mut acc = Terms::new();
        for (p, c) in terms {
            if p.widths() != (upper, lower) {
                return Err(Error::WidthMismatch { expected: upper + lower, found: p.vertex_count() });
            }
            accumulate(&mut acc, p, c);
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Diagram { upper, lower, terms: acc, basis: PhantomData })
    }

    fn from_integer_terms(upper: usize, lower: usize, terms: Vec<(SetPartition, i64)>) -> Self {
        Self::from_terms(upper, lower, terms.into_iter().map(|(p, c)| (p, CycPoly::from_int(c))))
            .expect("expansion preserves widths")
    }

    /// The partition-basis element p in this basis.
    pub fn partition(p: &SetPartition) -> Self {
        let (k, l) = p.widths();
        Self::from_integer_terms(k, l, B::from_partition_element(p).expect("partition within basis-change limits"))
    }

    /// The orbit-basis element x_p in this basis.
    pub fn x(p: &SetPartition) -> Result<Self> {
        let (k, l) = p.widths();
        Ok(Self::from_integer_terms(k, l, B::from_orbit_element(p)?))
    }

    pub fn identity(n: usize) -> Self {
        Self::partition(&SetPartition::identity(n))
    }

    pub fn permutation(sigma: &Permutation) -> Self {
        Self::partition(&SetPartition::permutation(sigma))
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn widths(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&SetPartition, &CycPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &SetPartition) -> CycPoly {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.widths() != other.widths() {
            return Err(Error::ShapeMismatch(format!(
                "diagram widths {:?} and {:?} differ",
                self.widths(),
                other.widths()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            accumulate(&mut terms, p.clone(), c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Diagram { terms, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &CycPoly) -> Self {
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_cyclotomic(&self, s: &Cyclotomic) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    fn clone_shape(&self) -> Self {
        Self::zero(self.upper, self.lower)
    }

    fn map_coeffs(&self, f: impl Fn(&CycPoly) -> CycPoly) -> Self {
        let mut terms: Terms = self.terms.iter().map(|(p, c)| (p.clone(), f(c))).collect();
        terms.retain(|_, c| !c.is_zero());
        Diagram { terms, ..self.clone_shape() }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.lower != self.upper {
            return Err(Error::WidthMismatch { expected: other.lower, found: self.upper });
        }
        let terms = bilinear(&self.terms, &other.terms, |beta, alpha, out| B::compose_terms(beta, alpha, out));
        Ok(Diagram { upper: other.upper, lower: self.lower, terms, basis: PhantomData })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let terms = bilinear(&self.terms, &other.terms, |a, b, out| B::tensor_terms(a, b, out));
        Diagram { upper: self.upper + other.upper, lower: self.lower + other.lower, terms, basis: PhantomData }
    }

    pub fn dual(&self) -> Self {
        let terms = self.terms.iter().map(|(p, c)| (p.dual(), c.clone())).collect();
        Diagram { upper: self.lower, lower: self.upper, terms, basis: PhantomData }
    }

    fn check_endo(&self) -> Result<()> {
        if self.upper != self.lower {
            return Err(Error::ShapeMismatch(format!("trace of a non-endomorphism {}->{}", self.upper, self.lower)));
        }
        Ok(())
    }

    /// Closes every strand.
    pub fn trace(&self) -> Result<CycPoly> {
        self.check_endo()?;
        let mut acc = CycPoly::zero();
        for (p, c) in &self.terms {
            if let Some(w) = B::trace_term(p) {
                acc += &weighted(c.clone(), w);
            }
        }
        Ok(acc)
    }

    /// Closes `close` strands, on the right end if `right`, else on the left.
    pub fn partial_trace(&self, close: usize, right: bool) -> Result<Self> {
        self.check_endo()?;
        if close > self.upper {
            return Err(Error::OutOfRange(format!("cannot close {close} of {} strands", self.upper)));
        }
        let mut terms = Terms::new();
        for (p, c) in &self.terms {
            if let Some((q, w)) = B::partial_trace_term(p, close, right) {
                accumulate(&mut terms, q, weighted(c.clone(), w));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let w = self.upper - close;
        Ok(Diagram { upper: w, lower: w, terms, basis: PhantomData })
    }

    /// `(1_offset ⊗ local ⊗ 1_rest) ∘ self`.
    pub fn post_window(&self, local: &Self, offset: usize) -> Result<Self> {
        if offset + local.upper > self.lower {
            return Err(Error::OutOfRange(format!(
                "window {}..{} exceeds width {}",
                offset,
                offset + local.upper,
                self.lower
            )));
        }
        let terms = bilinear(&local.terms, &self.terms, |phi, alpha, out| B::window_terms(phi, alpha, offset, out));
        Ok(Diagram { upper: self.upper, lower: self.lower - local.upper + local.lower, terms, basis: PhantomData })
    }

    /// `self ∘ (1_offset ⊗ local ⊗ 1_rest)`.
    pub fn pre_window(&self, local: &Self, offset: usize) -> Result<Self> {
        Ok(self.dual().post_window(&local.dual(), offset)?.dual())
    }

    /// `π_τ ∘ self`: lower vertex b moves to position τ(b). Exact in either basis.
    pub fn permute_lower(&self, tau: &Permutation) -> Result<Self> {
        if tau.degree() != self.lower {
            return Err(Error::WidthMismatch { expected: self.lower, found: tau.degree() });
        }
        let k = self.upper;
        Ok(self.relabel(|old, new| {
            for b in 0..tau.degree() {
                new[k + tau.apply(b)] = old[k + b];
            }
        }))
    }

    /// `self ∘ π_τ`: upper vertex a takes the place of the old vertex τ(a).
    pub fn permute_upper(&self, tau: &Permutation) -> Result<Self> {
        if tau.degree() != self.upper {
            return Err(Error::WidthMismatch { expected: self.upper, found: tau.degree() });
        }
        Ok(self.relabel(|old, new| {
            for a in 0..tau.degree() {
                new[a] = old[tau.apply(a)];
            }
        }))
    }

    fn relabel(&self, f: impl Fn(&[u8], &mut Labels)) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| {
                let mut labels: Labels = p.labels().iter().copied().collect();
                f(p.labels(), &mut labels);
                (SetPartition::from_labels(self.upper, self.lower, labels), c.clone())
            })
            .collect();
        Diagram { terms, ..self.clone_shape() }
    }

    /// Rewrites the same morphism in another basis.
    pub fn convert<C: Basis>(&self) -> Result<Diagram<C>> {
        let mut terms = Terms::new();
        for (p, c) in &self.terms {
            let expansion = if B::IS_ORBIT { C::from_orbit_element(p)? } else { C::from_partition_element(p)? };
            for (q, k) in expansion {
                accumulate(&mut terms, q, c.scale(&Cyclotomic::from_int(k)));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Diagram { upper: self.upper, lower: self.lower, terms, basis: PhantomData })
    }

    /// Specializes t to an integer, leaving constant coefficients.
    pub fn specialize(&self, t: i64) -> Self {
        self.map_coeffs(|c| CycPoly::constant(c.eval_int(t)))
    }

    /// Least common cyclotomic order of the coefficients.
    pub fn cyclotomic_order(&self) -> u32 {
        self.terms.values().fold(1, |n, c| crate::ring::lcm_order(n, c.order()))
    }
}

fn render_coeff(c: &CycPoly) -> (bool, String) {
    if let Some(k) = c.as_constant() {
        if let Some(r) = k.as_rational() {
            if r < &num_traits::Zero::zero() {
                return (true, (-r).to_string());
            }
            return (false, r.to_string());
        }
    }
    (false, format!("({c})"))
}

impl<B: Basis> fmt::Display for Diagram<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let (negative, text) = render_coeff(c);
            match (i, negative) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => f.write_str(&text)?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
            write!(f, " * {}{}", B::PREFIX, p.block_string())?;
        }
        write!(f, " : {}->{}", self.upper, self.lower)
    }
}

impl<B: Basis> fmt::Debug for Diagram<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: Basis> FromStr for Diagram<B> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, widths) = s.rsplit_once(':').ok_or_else(|| Error::Parse(format!("diagram {s:?} lacks ': k->l'")))?;
        let (k, l) = parse_widths(widths)?;
        let body = body.trim();
        if body == "0" {
            return Ok(Self::zero(k, l));
        }
        let mut terms = Vec::new();
        let bytes = body.as_bytes();
        let (mut paren, mut brace) = (0i32, 0i32);
        let mut seg_start = 0;
        let mut block_start = 0;
        let mut coeff_text = String::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => paren += 1,
                b')' => paren -= 1,
                b'{' => {
                    if brace == 0 && paren == 0 {
                        coeff_text = body[seg_start..i].to_string();
                        block_start = i;
                    }
                    brace += 1;
                }
                b'}' => {
                    brace -= 1;
                    if brace == 0 && paren == 0 {
                        let blocks = parse_blocks(&body[block_start..=i])?;
                        let p = SetPartition::canonicalize(&blocks, k, l)?;
                        terms.push((p, parse_term_coeff::<B>(&coeff_text)?));
                        seg_start = i + 1;
                    }
                }
                _ => {}
            }
        }
        if brace != 0 || paren != 0 || !body[seg_start..].trim().is_empty() {
            return Err(Error::Parse(format!("unbalanced or trailing text in {s:?}")));
        }
        Self::from_terms(k, l, terms)
    }
}

fn parse_term_coeff<B: Basis>(seg: &str) -> Result<CycPoly> {
    let mut seg = seg.trim();
    if !B::PREFIX.is_empty() {
        seg = seg
            .strip_suffix(B::PREFIX)
            .ok_or_else(|| Error::Parse(format!("orbit-basis terms need the {:?} marker", B::PREFIX)))?
            .trim_end();
    }
    let seg = seg.strip_suffix('*').unwrap_or(seg).trim();
    let seg = seg.strip_prefix('+').unwrap_or(seg).trim();
    match seg {
        "" => Ok(CycPoly::one()),
        "-" => Ok(CycPoly::from_int(-1)),
        _ => parse_poly(seg),
    }
}

#[cfg(test)]
mod tests;
