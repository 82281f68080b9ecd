//! Crossed S_N-modules as explicit vector spaces.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::link::BraidWord;
use crate::perm::{CycleType, Permutation};
use crate::rho::RhoMap;
use crate::ring::{CycMatrix, Cyclotomic};

/// Largest N for which S_N is enumerated.
pub const MAX_GROUP_DEGREE: usize = 6;

type Column = Vec<(usize, Cyclotomic)>;

/// An S_N-graded S_N-module with h·M_g = M_{hgh⁻¹}, on a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    degree: usize,
    elements: Vec<Permutation>,
    /// Grading of each basis vector.
    grades: Vec<Permutation>,
    /// action[g][b] = g·(basis b) as a sparse column.
    action: Vec<Vec<Column>>,
}

impl CrossedModule {
    /// 𝕜S_N ⊗_{𝕜H} V for H ≤ Z(σ) acting on V by ρ, graded by h_iσh_i⁻¹.
    ///
    /// With N = n and H = Z(σ) this is the simple module W_{μ,ρ}; with N > n,
    /// σ extended by fixed points and H = Z(σ) × S_{N−n} acting through ρ ⊗ 1,
    /// it is the image of W_{σ,ρ} at t = N.
    pub fn induced(big_n: usize, rho: &RhoMap) -> Result<Self> {
        if big_n > MAX_GROUP_DEGREE {
            return Err(Error::Guard(format!("S_{big_n} exceeds the enumeration limit S_{MAX_GROUP_DEGREE}")));
        }
        let n = rho.sigma().degree();
        if big_n < n {
            return Err(Error::OutOfRange(format!("cannot realize σ ∈ S_{n} inside S_{big_n}")));
        }
        if !rho.is_multiplicative() {
            return Err(Error::InvalidRho("the finite oracle needs a genuine representation".into()));
        }
        let sigma = extend(rho.sigma(), big_n);
        let elements = Permutation::all(big_n)?;
        // H = Z(σ) × S_{N−n}, with ρ(z, s) = ρ(z).
        let in_h = |g: &Permutation| (0..n).all(|i| g.apply(i) < n);
        let restrict = |g: &Permutation| Permutation::from_images((0..n).map(|i| g.apply(i)).collect()).expect("stabilizes [n]");
        let rho_of = |g: &Permutation| -> Option<&CycMatrix> {
            if in_h(g) {
                rho.value(&restrict(g))
            } else {
                None
            }
        };
        let mut reps: Vec<Permutation> = Vec::new();
        let mut covered = std::collections::BTreeSet::new();
        for g in &elements {
            if covered.contains(g) {
                continue;
            }
            for h in elements.iter().filter(|h| rho_of(h).is_some()) {
                covered.insert(g.compose(h));
            }
            reps.push(g.clone());
        }
        let k = rho.dim();
        let grades: Vec<Permutation> =
            reps.iter().flat_map(|r| std::iter::repeat(sigma.conjugate_by(r)).take(k)).collect();
        let action = elements
            .par_iter()
            .map(|g| {
                let mut cols = Vec::with_capacity(reps.len() * k);
                for ri in &reps {
                    let moved = g.compose(ri);
                    let (j, z) = reps
                        .iter()
                        .enumerate()
                        .find_map(|(j, rj)| {
                            let z = rj.inverse().compose(&moved);
                            rho_of(&z).map(|m| (j, m))
                        })
                        .expect("cosets cover the group");
                    for v in 0..k {
                        cols.push(
                            (0..k)
                                .filter(|&u| !z.get(u, v).is_zero())
                                .map(|u| (j * k + u, z.get(u, v).clone()))
                                .collect(),
                        );
                    }
                }
                cols
            })
            .collect();
        Ok(CrossedModule { degree: big_n, elements, grades, action })
    }

    /// W_{μ,ρ} ⊂ S_n-crossed modules for σ the standard representative of μ.
    pub fn simple(mu: &CycleType, rho: &RhoMap) -> Result<Self> {
        if rho.sigma().cycle_type() != *mu {
            return Err(Error::InvalidRho(format!("ρ is attached to {} which is not of type {mu}", rho.sigma())));
        }
        Self::induced(mu.size(), rho)
    }

    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        if parts.iter().any(|p| p.degree != first.degree) {
            return Err(Error::ShapeMismatch("summands must be modules over one group".into()));
        }
        let mut grades = Vec::new();
        let mut action = vec![Vec::new(); first.elements.len()];
        for p in parts {
            let shift = grades.len();
            grades.extend(p.grades.iter().cloned());
            for (g, cols) in p.action.iter().enumerate() {
                action[g].extend(cols.iter().map(|c| c.iter().map(|(i, x)| (i + shift, x.clone())).collect::<Column>()));
            }
        }
        Ok(CrossedModule { degree: first.degree, elements: first.elements.clone(), grades, action })
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    pub fn group_degree(&self) -> usize {
        self.degree
    }

    pub fn grades(&self) -> &[Permutation] {
        &self.grades
    }

    fn index(&self, g: &Permutation) -> usize {
        self.elements.binary_search(g).expect("element of S_N")
    }

    pub fn act(&self, g: &Permutation, b: usize) -> &[(usize, Cyclotomic)] {
        &self.action[self.index(g)][b]
    }

    /// The dual: grades inverted, (g·φ)(w) = φ(g⁻¹·w).
    pub fn dual(&self) -> Self {
        let d = self.dim();
        let action = self
            .elements
            .iter()
            .map(|g| {
                let inv = &self.action[self.index(&g.inverse())];
                let mut cols: Vec<Column> = vec![Vec::new(); d];
                for (b, col) in inv.iter().enumerate() {
                    for (a, x) in col {
                        cols[*a].push((b, x.clone()));
                    }
                }
                cols
            })
            .collect();
        CrossedModule {
            degree: self.degree,
            elements: self.elements.clone(),
            grades: self.grades.iter().map(Permutation::inverse).collect(),
            action,
        }
    }

    /// h·M_g ⊆ M_{hgh⁻¹} and (gh)·b = g·(h·b) on every basis vector.
    pub fn is_crossed_module(&self) -> bool {
        let graded = self.elements.iter().all(|h| {
            (0..self.dim()).all(|b| {
                let target = self.grades[b].conjugate_by(h);
                self.act(h, b).iter().all(|(a, _)| self.grades[*a] == target)
            })
        });
        let sample = self.elements.iter().step_by((self.elements.len() / 12).max(1));
        let associative = sample.clone().all(|g| {
            sample.clone().all(|h| {
                (0..self.dim()).all(|b| {
                    let lhs = to_map(self.act(&g.compose(h), b));
                    let mut rhs = BTreeMap::new();
                    for (a, x) in self.act(h, b) {
                        for (c, y) in self.act(g, *a) {
                            add(&mut rhs, *c, &(x * y));
                        }
                    }
                    lhs == rhs
                })
            })
        });
        graded && associative
    }

    /// ev(φ_a ⊗ b) = δ_ab is S_N-invariant and only pairs grades g⁻¹ with g,
    /// so ev and its transpose coev are crossed-module maps.
    pub fn duality_is_equivariant(&self) -> bool {
        let dual = self.dual();
        let d = self.dim();
        let graded = (0..d).all(|a| dual.grades[a].compose(&self.grades[a]).is_identity());
        let invariant = self.elements.iter().step_by((self.elements.len() / 12).max(1)).all(|g| {
            (0..d).all(|a| {
                let ga = to_map(dual.act(g, a));
                (0..d).all(|b| {
                    let gb = to_map(self.act(g, b));
                    let mut s = Cyclotomic::from_int(0);
                    for (i, x) in &ga {
                        if let Some(y) = gb.get(i) {
                            s += &(x * y);
                        }
                    }
                    s == Cyclotomic::from_int((a == b) as i64)
                })
            })
        });
        graded && invariant
    }

    /// The closure of the braid with every strand colored by this module,
    /// c(w ⊗ w') = (|w|·w') ⊗ w, closed by ev^r ∘ (β ⊗ Id) ∘ coev^l.
    pub fn closure(&self, word: &BraidWord, max_states: u64) -> Result<Cyclotomic> {
        let d = self.dim();
        let p = word.strands();
        let states = (d as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
        if states > max_states as u128 {
            return Err(Error::Guard(format!("{d}^{p} basis tensors exceed the limit {max_states}")));
        }
        if d == 0 {
            return Ok(Cyclotomic::from_int(0));
        }
        let total = (0..states as u64)
            .into_par_iter()
            .map(|code| {
                let mut tuple = vec![0usize; p];
                let mut c = code as usize;
                for slot in tuple.iter_mut().rev() {
                    *slot = c % d;
                    c /= d;
                }
                // coev^l pairs basis tuple b with φ_b; ev^r reads off the b-coefficient.
                let image = self.apply_word(&tuple, word);
                image.get(&tuple).cloned().unwrap_or_else(|| Cyclotomic::from_int(0))
            })
            .reduce(|| Cyclotomic::from_int(0), |a, b| &a + &b);
        Ok(total)
    }

    fn apply_word(&self, start: &[usize], word: &BraidWord) -> BTreeMap<Vec<usize>, Cyclotomic> {
        let mut state = BTreeMap::from([(start.to_vec(), Cyclotomic::from_int(1))]);
        for &letter in word.letters() {
            let a = letter.unsigned_abs() as usize - 1;
            let mut next = BTreeMap::new();
            for (tuple, coeff) in state {
                let (x, y) = (tuple[a], tuple[a + 1]);
                let (g, moved, stay_left) = if letter > 0 {
                    // x ⊗ y ↦ (|x|·y) ⊗ x
                    (self.grades[x].clone(), y, false)
                } else {
                    // x ⊗ y ↦ y ⊗ (|y|⁻¹·x)
                    (self.grades[y].inverse(), x, true)
                };
                for (m, c) in self.act(&g, moved) {
                    let mut t = tuple.clone();
                    if stay_left {
                        t[a] = y;
                        t[a + 1] = *m;
                    } else {
                        t[a] = *m;
                        t[a + 1] = x;
                    }
                    add(&mut next, t, &(&coeff * c));
                }
            }
            state = next;
        }
        state
    }
}

/// σ ∈ S_n viewed in S_N, fixing n+1..N.
fn extend(sigma: &Permutation, big_n: usize) -> Permutation {
    let n = sigma.degree();
    Permutation::from_images((0..big_n).map(|i| if i < n { sigma.apply(i) } else { i }).collect()).expect("extension by fixed points")
}

fn to_map(col: &[(usize, Cyclotomic)]) -> BTreeMap<usize, Cyclotomic> {
    let mut m = BTreeMap::new();
    for (i, x) in col {
        add(&mut m, *i, x);
    }
    m
}

/// Adds x at k, dropping the entry if it cancels.
fn add<K: Ord>(m: &mut BTreeMap<K, Cyclotomic>, k: K, x: &Cyclotomic) {
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            if !x.is_zero() {
                v.insert(x.clone());
            }
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += x;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}
