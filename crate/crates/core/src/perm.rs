//! Permutations of {1..n}, cycle types and brute-force centralizers.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted by brute-force enumeration over S_n.
pub const MAX_ENUMERATION_DEGREE: usize = 8;

/// A bijection of {1..n}, stored 0-based in one-line notation.
///
/// Products read right to left: `a.compose(&b)` is `a ∘ b`, so `b` acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u8).collect() })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// From 1-based cycles on {1..n}.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::OutOfRange(format!("cycle entry {a} outside 1..{n}")));
                }
                if seen[a - 1] {
                    return Err(Error::Parse(format!("entry {a} repeated in cycle notation")));
                }
                seen[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > n {
                    return Err(Error::OutOfRange(format!("cycle entry {b} outside 1..{n}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let Some(body) = rest_trim.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {s:?}")));
            };
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let entries = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad cycle entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if !entries.is_empty() {
                cycles.push(entries);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(&cycles, n)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// self ⊔ other acting on {1..n} ⊔ {n+1..n+m}.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.images.len() as u8;
        Permutation { images: self.images.iter().copied().chain(other.images.iter().map(|&i| i + n)).collect() }
    }

    /// τ σ τ⁻¹ for σ = self.
    pub fn conjugate_by(&self, tau: &Self) -> Self {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Nontrivial and trivial cycles, 0-based, each starting at its minimum, ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// All of S_n in lexicographic one-line order; identity first.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n > MAX_ENUMERATION_DEGREE {
            return Err(Error::Guard(format!("enumerating S_{n} exceeds degree {MAX_ENUMERATION_DEGREE}")));
        }
        Ok((0..n)
            .permutations(n)
            .map(|p| Permutation { images: p.into_iter().map(|i| i as u8).collect() })
            .collect())
    }

    /// One-line notation, 1-based.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("()");
        }
        for c in nontrivial {
            write!(f, "({})", c.iter().map(|i| i + 1).join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// All g ∈ S_n commuting with σ, in lexicographic order.
pub fn centralizer(sigma: &Permutation) -> Result<Vec<Permutation>> {
    Ok(Permutation::all(sigma.degree())?
        .into_iter()
        .filter(|g| g.compose(sigma) == sigma.compose(g))
        .collect())
}

/// A partition of n, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidCycleType(format!("{parts:?} must be nonempty positive parts")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The permutation (1 2 … μ1)(μ1+1 …)… with consecutive cycles.
    pub fn representative(&self) -> Permutation {
        let n = self.size();
        let mut images = vec![0usize; n];
        let mut start = 0;
        for &len in &self.parts {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation::from_images(images).expect("consecutive cycles form a permutation")
    }

    /// ∏_i i^{n_i} n_i! with n_i the multiplicity of part i.
    pub fn centralizer_order(&self) -> u64 {
        self.parts
            .iter()
            .chunk_by(|&&p| p)
            .into_iter()
            .map(|(part, group)| {
                let m = group.count() as u64;
                (part as u64).pow(m as u32) * (1..=m).product::<u64>()
            })
            .product()
    }

    /// All partitions of n, in reverse lexicographic order starting at (n).
    pub fn all(n: usize) -> Vec<CycleType> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if rem == 0 {
                out.push(CycleType { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("cycle type {s:?} must look like (2,1)")))?;
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn composition_reads_right_to_left() {
        let a = cyc("(1 2)", 3);
        let b = cyc("(2 3)", 3);
        // b first: 1→1→2, 2→3→3, 3→2→1
        assert_eq!(a.compose(&b), cyc("(1 2 3)", 3));
        assert_eq!(cyc("(1 2)", 3).conjugate_by(&cyc("(2 3)", 3)), cyc("(1 3)", 3));
    }

    #[test]
    fn display_and_parse() {
        let p = cyc("(3 1)(2 4)", 4);
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 1)", 2).is_err());
        assert!(Permutation::parse_cycles("(1 5)", 4).is_err());
        assert_eq!(cyc("(1,2,3)", 3), cyc("(1 2 3)", 3));
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer(&Permutation::identity(3)).unwrap().len(), 6);
        let z = centralizer(&cyc("(1 2)", 2)).unwrap();
        assert_eq!(z, vec![Permutation::identity(2), cyc("(1 2)", 2)]);
        assert_eq!(centralizer(&cyc("(1 2)(3 4)", 4)).unwrap().len(), 8);
        assert!(centralizer(&Permutation::identity(9)).is_err());
    }

    #[test]
    fn cycle_types() {
        let mu: CycleType = "(2,2)".parse().unwrap();
        assert_eq!(mu.centralizer_order(), 8);
        assert_eq!(mu.representative(), cyc("(1 2)(3 4)", 4));
        assert_eq!(CycleType::all(4).len(), 5);
        assert_eq!(CycleType::all(4)[0].to_string(), "(4)");
        assert!("(0,1)".parse::<CycleType>().is_err());
    }

    #[test]
    fn class_equation() {
        for n in 1..=5 {
            let all = Permutation::all(n).unwrap();
            let fact: usize = (1..=n).product();
            for s in &all {
                let z = centralizer(s).unwrap().len();
                let class: std::collections::BTreeSet<_> = all.iter().map(|g| s.conjugate_by(g)).collect();
                assert_eq!(z * class.len(), fact);
                assert_eq!(z as u64, s.cycle_type().centralizer_order());
            }
        }
    }
}
