//! Matrix-valued maps ρ on a centralizer Z = Z(σ) ⊂ S_n.
//!
//! The only requirement is the convolution identity
//! `Σ_{z1 z2 = z} ρ(z1) ρ(z2) = |Z| ρ(z)`, which makes
//! `|Z|⁻¹ Σ_z z ⊗ ρ(z)` idempotent in 𝕜Z ⊗ M_k(𝕜). Genuine representations
//! satisfy it, as do their compressions by idempotent matrices.

use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{centralizer, Permutation};
use crate::ring::{lcm_order, parse_cyclotomic, CycMatrix, Cyclotomic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoKind {
    Trivial,
    Sign,
    /// ρ(σ^m) = ζ_{|Z|}^{a m}; needs Z generated by σ.
    CyclicPower(i64),
    Explicit(Vec<(Permutation, CycMatrix)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoMap {
    sigma: Permutation,
    group: Vec<Permutation>,
    values: Vec<CycMatrix>,
    dim: usize,
}

impl RhoMap {
    /// Assembles and validates a map on an explicit group.
    pub fn new(sigma: Permutation, table: Vec<(Permutation, CycMatrix)>) -> Result<Self> {
        let mut table = table;
        table.sort_by(|a, b| a.0.cmp(&b.0));
        if table.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidRho("group element listed twice".into()));
        }
        let dim = table.first().map(|(_, m)| m.rows()).ok_or_else(|| Error::InvalidRho("empty group".into()))?;
        if table.iter().any(|(g, m)| m.rows() != dim || m.cols() != dim || g.degree() != sigma.degree()) {
            return Err(Error::InvalidRho("inconsistent matrix sizes or degrees".into()));
        }
        let (group, values): (Vec<_>, Vec<_>) = table.into_iter().unzip();
        let rho = RhoMap { sigma, group, values, dim };
        rho.check_group()?;
        if !rho.validate() {
            return Err(Error::InvalidRho("convolution identity Σ ρ(z1)ρ(z2) = |Z|ρ(z) fails".into()));
        }
        Ok(rho)
    }

    fn check_group(&self) -> Result<()> {
        if !self.group.iter().any(Permutation::is_identity) {
            return Err(Error::InvalidRho("group lacks the identity".into()));
        }
        for a in &self.group {
            for b in &self.group {
                if self.index_of(&a.compose(b)).is_none() {
                    return Err(Error::InvalidRho(format!("group not closed: {a}·{b}")));
                }
            }
        }
        Ok(())
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    pub fn values(&self) -> &[CycMatrix] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn index_of(&self, z: &Permutation) -> Option<usize> {
        self.group.binary_search(z).ok()
    }

    pub fn value(&self, z: &Permutation) -> Option<&CycMatrix> {
        self.index_of(z).map(|i| &self.values[i])
    }

    /// Least N such that every entry lives in ℚ(ζ_N).
    pub fn cyclotomic_order(&self) -> u32 {
        let mut n = 1;
        for m in &self.values {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    n = lcm_order(n, m.get(i, j).order());
                }
            }
        }
        n
    }

    pub fn trace_at_identity(&self) -> Cyclotomic {
        let id = Permutation::identity(self.sigma.degree());
        self.value(&id).expect("group contains the identity").trace()
    }

    /// Checks the convolution identity exactly.
    pub fn validate(&self) -> bool {
        let order = Cyclotomic::from_int(self.order() as i64);
        let mut sums = vec![CycMatrix::zeros(self.dim, self.dim); self.order()];
        for (a, ra) in self.group.iter().zip(&self.values) {
            for (b, rb) in self.group.iter().zip(&self.values) {
                let Some(k) = self.index_of(&a.compose(b)) else { return false };
                let prod = ra.mul(rb).expect("square matrices of equal size");
                sums[k] = sums[k].add(&prod).expect("equal shapes");
            }
        }
        sums.iter().zip(&self.values).all(|(s, v)| *s == v.scale(&order))
    }

    /// Whether ρ(ab) = ρ(a)ρ(b) for all a, b.
    pub fn is_multiplicative(&self) -> bool {
        self.group.iter().zip(&self.values).all(|(a, ra)| {
            self.group.iter().zip(&self.values).all(|(b, rb)| {
                self.value(&a.compose(b)).is_some_and(|rab| *rab == ra.mul(rb).expect("equal shapes"))
            })
        })
    }

    /// ρ*(z) = ρ(z⁻¹)ᵗ, attached to σ⁻¹ (same centralizer): the data of the dual object.
    pub fn dual(&self) -> RhoMap {
        let values = self
            .group
            .iter()
            .map(|z| self.value(&z.inverse()).expect("group closed under inverses").transpose())
            .collect();
        RhoMap { sigma: self.sigma.inverse(), group: self.group.clone(), values, dim: self.dim }
    }

    /// Applies ζ ↦ ζ^k entrywise.
    pub fn galois(&self, k: i64) -> Result<RhoMap> {
        let values = self
            .values
            .iter()
            .map(|m| {
                let rows = (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m.get(i, j).galois(k)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                CycMatrix::from_rows(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let rho = RhoMap { sigma: self.sigma.clone(), group: self.group.clone(), values, dim: self.dim };
        Ok(rho)
    }

    pub fn to_file(&self) -> RhoFile {
        RhoFile {
            cyclotomic_order: self.cyclotomic_order(),
            values: self
                .group
                .iter()
                .zip(&self.values)
                .map(|(z, m)| RhoEntry {
                    element: z.to_string(),
                    matrix: (0..m.rows())
                        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

pub fn make_rho(kind: &RhoKind, sigma: &Permutation) -> Result<RhoMap> {
    let group = centralizer(sigma)?;
    let scalar = |c: Cyclotomic| CycMatrix::scalar(c);
    let table: Vec<(Permutation, CycMatrix)> = match kind {
        RhoKind::Trivial => group.iter().cloned().map(|z| (z, scalar(Cyclotomic::from_int(1)))).collect(),
        RhoKind::Sign => group
            .iter()
            .cloned()
            .map(|z| {
                let s = z.sign();
                (z, scalar(Cyclotomic::from_int(s)))
            })
            .collect(),
        RhoKind::CyclicPower(a) => {
            let order = group.len();
            if sigma.order() != order {
                return Err(Error::InvalidRho(format!(
                    "centralizer of {sigma} has order {order} but is not generated by it"
                )));
            }
            let g = (*a).rem_euclid(order as i64).gcd(&(order as i64)).max(1);
            let root = (order as i64 / g) as u32;
            let step = a.rem_euclid(order as i64) / g;
            (0..order as i64).map(|m| (sigma.pow(m), scalar(Cyclotomic::zeta(root, step * m)))).collect()
        }
        RhoKind::Explicit(table) => table.clone(),
    };
    if let RhoKind::Explicit(t) = kind {
        let listed: Vec<&Permutation> = t.iter().map(|(z, _)| z).collect();
        if listed.len() != group.len() || group.iter().any(|z| !listed.contains(&z)) {
            return Err(Error::InvalidRho(format!("table must list exactly the centralizer of {sigma}")));
        }
    }
    RhoMap::new(sigma.clone(), table)
}

/// Transport of structure along g ↦ τgτ⁻¹ and conjugation by A.
pub fn conjugate_pair(rho: &RhoMap, tau: &Permutation, a: &CycMatrix) -> Result<RhoMap> {
    let a_inv = a.inverse()?;
    let sigma2 = rho.sigma.conjugate_by(tau);
    let table = rho
        .group
        .iter()
        .zip(&rho.values)
        .map(|(z, m)| Ok((z.conjugate_by(tau), a.mul(m)?.mul(&a_inv)?)))
        .collect::<Result<Vec<_>>>()?;
    RhoMap::new(sigma2, table)
}

/// On-disk form: cycle-notation elements with coefficient strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoFile {
    pub cyclotomic_order: u32,
    pub values: Vec<RhoEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoEntry {
    pub element: String,
    pub matrix: Vec<Vec<String>>,
}

impl RhoFile {
    pub fn table(&self, degree: usize) -> Result<Vec<(Permutation, CycMatrix)>> {
        self.values
            .iter()
            .map(|e| {
                let z = Permutation::parse_cycles(&e.element, degree)?;
                let rows = e
                    .matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| parse_cyclotomic(s))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((z, CycMatrix::from_rows(rows)?))
            })
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
