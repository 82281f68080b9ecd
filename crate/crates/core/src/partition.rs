//! Set partitions of the two-row vertex set {1..k} ∪ {1'..l'}.
//!
//! A partition is stored as a restricted growth string over the vertices in the
//! order `1 < … < k < 1' < … < l'`: vertex `v` carries the index of its block,
//! and blocks are numbered by first appearance. This is exactly the canonical
//! form with blocks sorted by minimal vertex, so equality, hashing and ordering
//! are plain comparisons of the label vector.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub(crate) type Labels = SmallVec<[u8; 32]>;

/// Largest supported vertex count (upper plus lower).
pub const MAX_VERTICES: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Upper,
    Lower,
}

/// A vertex, 1-based within its row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub row: Row,
    pub index: usize,
}

impl VertexId {
    pub fn upper(index: usize) -> Self {
        VertexId { row: Row::Upper, index }
    }

    pub fn lower(index: usize) -> Self {
        VertexId { row: Row::Lower, index }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Upper => write!(f, "{}", self.index),
            Row::Lower => write!(f, "{}'", self.index),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    upper: u16,
    lower: u16,
    labels: Labels,
}

/// Relabels by first appearance; returns the number of blocks.
pub(crate) fn normalize(labels: &mut [u8]) -> usize {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        let slot = &mut map[*l as usize];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        *l = *slot;
    }
    next as usize
}

/// Block pattern of a slice of labels, normalized.
pub(crate) fn pattern(labels: &[u8]) -> Labels {
    let mut p: Labels = labels.iter().copied().collect();
    normalize(&mut p);
    p
}

/// All restricted growth strings of length m, i.e. all set partitions of an m-set.
pub fn set_partitions(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; m];
    fn rec(i: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max {
            cur[i] = v;
            rec(i + 1, if v == max { max + 1 } else { max }, cur, out);
        }
    }
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    cur[0] = 0;
    rec(1, 1, &mut cur, &mut out);
    out
}

pub fn bell(m: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![*row.last().expect("nonempty")];
        for v in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

pub(crate) struct UnionFind {
    parent: SmallVec<[u8; 64]>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).map(|i| i as u8).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u8;
        }
    }
}

impl SetPartition {
    /// Builds from any labelling of the k+l vertices; labels are normalized.
    pub(crate) fn from_labels(upper: usize, lower: usize, mut labels: Labels) -> Self {
        debug_assert_eq!(labels.len(), upper + lower);
        normalize(&mut labels);
        SetPartition { upper: upper as u16, lower: lower as u16, labels }
    }

    /// Builds from a labelling already in canonical form.
    pub(crate) fn from_canonical(upper: usize, lower: usize, labels: Labels) -> Self {
        debug_assert_eq!(pattern(&labels), labels);
        SetPartition { upper: upper as u16, lower: lower as u16, labels }
    }

    pub fn canonicalize(blocks: &[Vec<VertexId>], k: usize, l: usize) -> Result<Self> {
        if k + l > MAX_VERTICES {
            return Err(Error::Guard(format!("{} vertices exceed {MAX_VERTICES}", k + l)));
        }
        let mut labels: Labels = SmallVec::from_elem(u8::MAX, k + l);
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for v in block {
                let flat = match v.row {
                    Row::Upper if (1..=k).contains(&v.index) => v.index - 1,
                    Row::Lower if (1..=l).contains(&v.index) => k + v.index - 1,
                    _ => return Err(Error::InvalidPartition(format!("vertex {v} out of range for P_{{{k},{l}}}"))),
                };
                if labels[flat] != u8::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                labels[flat] = b as u8;
            }
        }
        if let Some(pos) = labels.iter().position(|&x| x == u8::MAX) {
            let v = if pos < k { VertexId::upper(pos + 1) } else { VertexId::lower(pos - k + 1) };
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self::from_labels(k, l, labels))
    }

    pub fn identity(n: usize) -> Self {
        let labels = (0..n as u8).chain(0..n as u8).collect();
        Self::from_canonical(n, n, labels)
    }

    pub fn empty() -> Self {
        Self::identity(0)
    }

    /// The permutation partition {{a, σ(a)'}}.
    pub fn permutation(sigma: &Permutation) -> Self {
        let n = sigma.degree();
        let mut labels: Labels = SmallVec::from_elem(0, 2 * n);
        for a in 0..n {
            labels[a] = a as u8;
            labels[n + sigma.apply(a)] = a as u8;
        }
        Self::from_canonical(n, n, labels)
    }

    /// The single lower vertex, I → [1].
    pub fn unit() -> Self {
        Self::from_canonical(0, 1, SmallVec::from_elem(0, 1))
    }

    /// The single upper vertex, [1] → I.
    pub fn counit() -> Self {
        Self::from_canonical(1, 0, SmallVec::from_elem(0, 1))
    }

    /// One block joining two upper and two lower vertices.
    pub fn merge() -> Self {
        Self::from_canonical(2, 2, SmallVec::from_elem(0, 4))
    }

    /// The crossing {{1,2'},{2,1'}}.
    pub fn swap() -> Self {
        Self::from_labels(2, 2, SmallVec::from_slice(&[0, 1, 1, 0]))
    }

    /// Identity strands on n with strand `from` joined to the extra upper vertex
    /// n+1 and strand `to` joined to the extra lower vertex (n+1)'. 1-based.
    pub fn hop(n: usize, from: usize, to: usize) -> Result<Self> {
        Self::hops(n, &[Some((from, to))])
    }

    /// Identity strands on n followed by one extra strand per entry: `Some((i, j))`
    /// joins its upper vertex to strand i and its lower vertex to strand j,
    /// `None` leaves it a through-strand of its own. 1-based.
    pub fn hops(n: usize, extra: &[Option<(usize, usize)>]) -> Result<Self> {
        let w = n + extra.len();
        let mut labels: Labels = SmallVec::from_elem(0, 2 * w);
        for a in 0..w {
            labels[a] = a as u8;
            labels[w + a] = a as u8;
        }
        for (q, e) in extra.iter().enumerate() {
            if let Some((from, to)) = *e {
                if !(1..=n).contains(&from) || !(1..=n).contains(&to) {
                    return Err(Error::OutOfRange(format!("strands {from},{to} outside 1..{n}")));
                }
                labels[n + q] = (from - 1) as u8;
                labels[w + n + q] = (to - 1) as u8;
            }
        }
        Ok(Self::from_labels(w, w, labels))
    }

    /// `hop(n, i, i)`: strand i tapped by both extra vertices.
    pub fn tap(n: usize, strand: usize) -> Result<Self> {
        Self::hop(n, strand, strand)
    }

    /// P_{2n,0}: vertex i joined with n+i.
    pub fn pairing(n: usize) -> Self {
        let labels = (0..n as u8).chain(0..n as u8).collect();
        Self::from_canonical(2 * n, 0, labels)
    }

    /// P_{0,2n}: vertex i' joined with (n+i)'.
    pub fn copairing(n: usize) -> Self {
        Self::pairing(n).dual()
    }

    /// The crossing [a]⊗[b] → [b]⊗[a].
    pub fn symmetry(a: usize, b: usize) -> Self {
        let images: Vec<usize> = (0..a + b).map(|i| if i < a { b + i } else { i - a }).collect();
        Self::permutation(&Permutation::from_images(images).expect("block swap is a permutation"))
    }

    pub fn upper(&self) -> usize {
        self.upper as usize
    }

    pub fn lower(&self) -> usize {
        self.lower as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn upper_labels(&self) -> &[u8] {
        &self.labels[..self.upper()]
    }

    pub fn lower_labels(&self) -> &[u8] {
        &self.labels[self.upper()..]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    fn vertex(&self, flat: usize) -> VertexId {
        if flat < self.upper() {
            VertexId::upper(flat + 1)
        } else {
            VertexId::lower(flat - self.upper() + 1)
        }
    }

    pub fn blocks(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (flat, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(self.vertex(flat));
        }
        out
    }

    /// Whether this partition is π_σ for some permutation σ.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let n = self.upper();
        if self.lower() != n || self.num_blocks() != n {
            return None;
        }
        let images = self.labels[..n]
            .iter()
            .map(|&label| self.lower_labels().iter().position(|&l| l == label))
            .collect::<Option<Vec<_>>>()?;
        Permutation::from_images(images).ok()
    }

    /// Horizontal juxtaposition with `other` on the right.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = self.num_blocks() as u8;
        let mut labels: Labels = SmallVec::with_capacity(self.vertex_count() + other.vertex_count());
        labels.extend_from_slice(self.upper_labels());
        labels.extend(other.upper_labels().iter().map(|&l| l + shift));
        labels.extend_from_slice(self.lower_labels());
        labels.extend(other.lower_labels().iter().map(|&l| l + shift));
        Self::from_labels(self.upper() + other.upper(), self.lower() + other.lower(), labels)
    }

    /// Swaps the two rows.
    pub fn dual(&self) -> Self {
        let mut labels: Labels = SmallVec::with_capacity(self.vertex_count());
        labels.extend_from_slice(self.lower_labels());
        labels.extend_from_slice(self.upper_labels());
        Self::from_labels(self.lower(), self.upper(), labels)
    }

    /// Merges blocks according to a labelling of the block set.
    pub fn merge_blocks(&self, block_labels: &[u8]) -> Self {
        debug_assert_eq!(block_labels.len(), self.num_blocks());
        let labels = self.labels.iter().map(|&l| block_labels[l as usize]).collect();
        Self::from_labels(self.upper(), self.lower(), labels)
    }

    /// All partitions strictly coarser than this one.
    pub fn coarsenings(&self) -> Vec<Self> {
        set_partitions(self.num_blocks())
            .into_iter()
            .filter(|rgs| rgs.iter().enumerate().any(|(i, &v)| v as usize != i))
            .map(|rgs| self.merge_blocks(&rgs))
            .collect()
    }

    /// Every partition in P_{k,l}.
    pub fn all(k: usize, l: usize) -> Vec<Self> {
        set_partitions(k + l)
            .into_iter()
            .map(|rgs| Self::from_canonical(k, l, rgs.into_iter().collect()))
            .collect()
    }

    pub fn widths(&self) -> (usize, usize) {
        (self.upper(), self.lower())
    }
}

/// Stacks `alpha` (k→l) above `beta` (l→m); returns the composite k→m and the
/// number of components made only of middle vertices.
pub fn compose_partitions(beta: &SetPartition, alpha: &SetPartition) -> Result<(SetPartition, usize)> {
    if alpha.lower() != beta.upper() {
        return Err(Error::WidthMismatch { expected: alpha.lower(), found: beta.upper() });
    }
    Ok(compose_unchecked(beta, alpha))
}

pub(crate) fn compose_unchecked(beta: &SetPartition, alpha: &SetPartition) -> (SetPartition, usize) {
    let na = alpha.num_blocks();
    let nb = beta.num_blocks();
    let mut uf = UnionFind::new(na + nb);
    for (a, b) in alpha.lower_labels().iter().zip(beta.upper_labels()) {
        uf.union(*a as usize, na + *b as usize);
    }
    let mut labels: Labels = SmallVec::with_capacity(alpha.upper() + beta.lower());
    for &a in alpha.upper_labels() {
        labels.push(uf.find(a as usize) as u8);
    }
    for &b in beta.lower_labels() {
        labels.push(uf.find(na + b as usize) as u8);
    }
    let mut outer = [false; 256];
    for &r in &labels {
        outer[r as usize] = true;
    }
    let mut removed = 0;
    for node in 0..na + nb {
        let r = uf.find(node);
        if r == node && !outer[r] {
            removed += 1;
        }
    }
    (SetPartition::from_labels(alpha.upper(), beta.lower(), labels), removed)
}

/// True iff every block of `lambda` lies inside a block of `mu`.
pub fn is_coarser(mu: &SetPartition, lambda: &SetPartition) -> Result<bool> {
    if mu.widths() != lambda.widths() {
        return Err(Error::ShapeMismatch(format!(
            "P_{:?} versus P_{:?}",
            mu.widths(),
            lambda.widths()
        )));
    }
    let mut image = [u8::MAX; 256];
    for (&l, &m) in lambda.labels.iter().zip(&mu.labels) {
        let slot = &mut image[l as usize];
        if *slot == u8::MAX {
            *slot = m;
        } else if *slot != m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named generators of the partition category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Unit,
    Counit,
    Merge,
    Swap,
    Permutation(Permutation),
    Tap { n: usize, strand: usize },
    Hop { n: usize, from: usize, to: usize },
    Pairing(usize),
    Copairing(usize),
    Symmetry(usize, usize),
}

pub fn generator(g: &Generator) -> Result<SetPartition> {
    Ok(match g {
        Generator::Unit => SetPartition::unit(),
        Generator::Counit => SetPartition::counit(),
        Generator::Merge => SetPartition::merge(),
        Generator::Swap => SetPartition::swap(),
        Generator::Permutation(s) => SetPartition::permutation(s),
        Generator::Tap { n, strand } => SetPartition::tap(*n, *strand)?,
        Generator::Hop { n, from, to } => SetPartition::hop(*n, *from, *to)?,
        Generator::Pairing(n) => SetPartition::pairing(*n),
        Generator::Copairing(n) => SetPartition::copairing(*n),
        Generator::Symmetry(a, b) => SetPartition::symmetry(*a, *b),
    })
}

impl SetPartition {
    /// The block list alone, e.g. `{{1,2'},{2,1'}}`.
    pub fn block_string(&self) -> String {
        struct Blocks<'a>(&'a SetPartition);
        impl fmt::Display for Blocks<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_blocks(f)
            }
        }
        Blocks(self).to_string()
    }

    fn write_blocks(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_blocks(f)?;
        write!(f, " : {}->{}", self.upper, self.lower)
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the block list `{{1,2'},{2,1'}}` without widths.
pub(crate) fn parse_blocks(s: &str) -> Result<Vec<Vec<VertexId>>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("partition {s:?} must be wrapped in braces")))?
        .trim();
    let mut blocks = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| Error::Parse(format!("expected '{{' at {rest:?}")))?;
        let close = body.find('}').ok_or_else(|| Error::Parse(format!("unclosed block in {s:?}")))?;
        let mut block = Vec::new();
        for tok in body[..close].split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (digits, row) = match tok.strip_suffix('\'') {
                Some(d) => (d, Row::Lower),
                None => (tok, Row::Upper),
            };
            let index: usize = digits.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?;
            block.push(VertexId { row, index });
        }
        blocks.push(block);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(blocks)
}

pub(crate) fn parse_widths(s: &str) -> Result<(usize, usize)> {
    let (k, l) = s
        .trim()
        .split_once("->")
        .ok_or_else(|| Error::Parse(format!("widths {s:?} must look like k->l")))?;
    let k = k.trim().parse().map_err(|_| Error::Parse(format!("bad width {k:?}")))?;
    let l = l.trim().parse().map_err(|_| Error::Parse(format!("bad width {l:?}")))?;
    Ok((k, l))
}

impl FromStr for SetPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (blocks, widths) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("partition {s:?} lacks ': k->l'")))?;
        let (k, l) = parse_widths(widths)?;
        Self::canonicalize(&parse_blocks(blocks)?, k, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p("{{1'},{1}} : 1->1").to_string(), "{{1},{1'}} : 1->1");
        assert_eq!(p("{{2,1},{1',2'}} : 2->2").to_string(), "{{1,2},{1',2'}} : 2->2");
        let s = "{{1,3,1'},{2},{4},{2',3'}} : 4->3";
        assert_eq!(p(s).to_string(), s);
        assert_eq!(SetPartition::empty().to_string(), "{} : 0->0");
        assert_eq!(p("{} : 0->0"), SetPartition::empty());
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        let v = |r, i| VertexId { row: r, index: i };
        assert!(SetPartition::canonicalize(&[vec![v(Row::Upper, 1)], vec![v(Row::Upper, 1)]], 1, 0).is_err());
        assert!(SetPartition::canonicalize(&[vec![v(Row::Upper, 1)]], 1, 1).is_err());
        assert!(SetPartition::canonicalize(&[vec![v(Row::Lower, 2)]], 0, 1).is_err());
        assert!(SetPartition::canonicalize(&[vec![]], 0, 0).is_err());
    }

    #[test]
    fn composition_examples() {
        let a = p("{{1,2'},{2},{1',3'}} : 2->3");
        assert_eq!(compose_partitions(&SetPartition::identity(3), &a).unwrap(), (a.clone(), 0));
        assert_eq!(compose_partitions(&a, &SetPartition::identity(2)).unwrap(), (a.clone(), 0));
        let (e, removed) = compose_partitions(&SetPartition::counit(), &SetPartition::unit()).unwrap();
        assert_eq!((e, removed), (SetPartition::empty(), 1));
        assert!(compose_partitions(&SetPartition::identity(2), &SetPartition::identity(3)).is_err());
    }

    #[test]
    fn hop_block_description() {
        assert_eq!(SetPartition::hop(3, 1, 3).unwrap().to_string(), "{{1,4,1'},{2,2'},{3,3',4'}} : 4->4");
        assert_eq!(SetPartition::tap(2, 2).unwrap().to_string(), "{{1,1'},{2,3,2',3'}} : 3->3");
        assert!(SetPartition::hop(2, 0, 1).is_err());
    }

    #[test]
    fn named_generators() {
        assert_eq!(SetPartition::swap().to_string(), "{{1,2'},{2,1'}} : 2->2");
        assert_eq!(SetPartition::symmetry(1, 1), SetPartition::swap());
        assert_eq!(SetPartition::symmetry(2, 1).to_string(), "{{1,2'},{2,3'},{3,1'}} : 3->3");
        assert_eq!(SetPartition::pairing(2).to_string(), "{{1,3},{2,4}} : 4->0");
        assert_eq!(SetPartition::unit().dual(), SetPartition::counit());
        assert_eq!(SetPartition::permutation(&Permutation::identity(3)), SetPartition::identity(3));
    }

    #[test]
    fn coarsening_counts() {
        let one = p("{{1,2,1'}} : 2->1");
        assert!(one.coarsenings().is_empty());
        assert_eq!(SetPartition::identity(2).coarsenings(), vec![SetPartition::merge()]);
        assert_eq!(SetPartition::identity(3).coarsenings().len(), 4);
        assert!(is_coarser(&SetPartition::merge(), &SetPartition::identity(2)).unwrap());
        assert!(!is_coarser(&SetPartition::swap(), &SetPartition::identity(2)).unwrap());
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u64> = (0..8).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        for m in 0..7 {
            assert_eq!(set_partitions(m).len() as u64, bell(m));
        }
    }
}
