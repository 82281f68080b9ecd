//! Objects of the monoidal center: a Karoubi object ([n]^{⊕k}, e) together
//! with the seed d_1 of its half-braiding.
//!
//! The half-braiding at [1] is c_1 = Ψ_{[n],[1]} ∘ d_1; at [m] it is the
//! ordered product of m copies of c_1, and at any other object it is read
//! off from strands. Nothing beyond d_1 and its inverse is stored.

mod checks;
#[cfg(test)]
mod tests;

use crate::diagram::{BlockMorphism, KaroubiObject, OrbitBasis, OrbitDiagram, PartitionDiagram};
use crate::error::{Error, Result};
use crate::partition::SetPartition;
use crate::perm::{CycleType, Permutation};
use crate::rho::RhoMap;
use crate::ring::{rational, CycMatrix, CycPoly};

pub use checks::{
    annihilation_holds, d2, diagrammatic_dual_d1, explicit_d2, twist, twist_closed_form, verify_naturality,
    reseeded, NaturalityReport, TwistSide,
};

pub type Block = BlockMorphism<OrbitBasis>;

/// How an object was assembled; some operations need the original data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Interpolation { sigma: Permutation, rho: RhoMap },
    Regular { mu: CycleType, sigma: Permutation },
    Sum(Vec<Provenance>),
    Tensor(Box<Provenance>, Box<Provenance>),
    Unit,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterObject {
    base: KaroubiObject,
    d1: Block,
    d1_inv: Block,
    provenance: Provenance,
}

/// The crossing [a]⊗[b] → [b]⊗[a] as a permutation of a+b strands.
pub(crate) fn crossing(a: usize, b: usize) -> Permutation {
    let images = (0..a + b).map(|i| if i < a { b + i } else { i - a }).collect();
    Permutation::from_images(images).expect("block swap is a permutation")
}

/// `crossing(a, b)` on strands offset..offset+a+b of a total width.
pub(crate) fn crossing_at(width: usize, offset: usize, a: usize, b: usize) -> Permutation {
    let local = crossing(a, b);
    let images = (0..width)
        .map(|i| if i >= offset && i < offset + a + b { offset + local.apply(i - offset) } else { i })
        .collect();
    Permutation::from_images(images).expect("padded block swap is a permutation")
}

/// e_ρ = |Z|⁻¹ Σ_z x_z ⊗ ρ(z).
pub fn build_e_rho(rho: &RhoMap) -> Result<Block> {
    let n = rho.sigma().degree();
    let mut acc = Block::zeros(rho.dim(), rho.dim(), n, n);
    for (z, m) in rho.group().iter().zip(rho.values()) {
        let xz = OrbitDiagram::basis_element(SetPartition::permutation(z));
        acc = acc.add(&Block::from_matrix(&xz, m))?;
    }
    Ok(acc.scale(&CycPoly::from_rational(rational(1, rho.order() as i64))))
}

/// d_1 = 1_{n+1} + Σ_i (E^i_{σ(i)} − E^i_i), in the partition basis.
pub fn build_d1(sigma: &Permutation) -> PartitionDiagram {
    let n = sigma.degree();
    let mut terms = vec![(SetPartition::identity(n + 1), CycPoly::one())];
    for i in 1..=n {
        let image = sigma.apply(i - 1) + 1;
        if image != i {
            terms.push((SetPartition::hop(n, i, image).expect("in range"), CycPoly::one()));
            terms.push((SetPartition::hop(n, i, i).expect("in range"), CycPoly::from_int(-1)));
        }
    }
    PartitionDiagram::from_terms(n + 1, n + 1, terms).expect("uniform widths")
}

/// d_1 ∘ (x_{1_n} ⊗ 1) = x_{1_{n+1}} + Σ_s x_{hop(s, σ(s))}: the only part of
/// d_1 seen by idempotents built from x_z.
pub fn projected_d1(sigma: &Permutation) -> OrbitDiagram {
    let n = sigma.degree();
    let mut terms = vec![(SetPartition::identity(n + 1), CycPoly::one())];
    for s in 1..=n {
        terms.push((SetPartition::hop(n, s, sigma.apply(s - 1) + 1).expect("in range"), CycPoly::one()));
    }
    OrbitDiagram::from_terms(n + 1, n + 1, terms).expect("uniform widths")
}

/// d_1^{⊕k} ∘ (e ⊗ 1) for an idempotent e of width n.
fn restrict_d1(sigma: &Permutation, e: &Block) -> Result<Block> {
    let start = e.tensor(&Block::identity(1, 1));
    start.post_window(&Block::from_diagram(projected_d1(sigma)), 0, 1, e.rows())
}

pub fn build_d1_rho(rho: &RhoMap) -> Result<Block> {
    restrict_d1(rho.sigma(), &build_e_rho(rho)?)
}

/// W_{σ,ρ}.
pub fn interpolation_object(rho: &RhoMap) -> Result<CenterObject> {
    let sigma = rho.sigma().clone();
    let e = build_e_rho(rho)?;
    let d1 = restrict_d1(&sigma, &e)?;
    let d1_inv = restrict_d1(&sigma.inverse(), &e)?;
    Ok(CenterObject {
        base: KaroubiObject::new_unchecked(e)?,
        d1,
        d1_inv,
        provenance: Provenance::Interpolation { sigma, rho: rho.clone() },
    })
}

/// d_1 for V^μ: (1_n ⊗ Ψ_{[1],[n]})(d_1 ⊗ 1_n)(1_n ⊗ Ψ_{[n],[1]})(e_μ ⊗ 1).
fn regular_d1(sigma: &Permutation, e: &Block) -> Result<Block> {
    let n = sigma.degree();
    let w = 2 * n + 1;
    let start = e.tensor(&Block::identity(1, 1));
    let moved = start.permute_lower(&crossing_at(w, n, n, 1))?;
    let acted = moved.post_window(&Block::from_diagram(projected_d1(sigma)), 0, 1, 1)?;
    acted.permute_lower(&crossing_at(w, n, 1, n))
}

/// e_μ = |Z|⁻¹ Σ_z x_z ⊗ x_{1_n} for σ the standard representative of μ.
pub fn build_e_mu(mu: &CycleType) -> Result<Block> {
    let sigma = mu.representative();
    let n = sigma.degree();
    let group = crate::perm::centralizer(&sigma)?;
    let x1 = OrbitDiagram::basis_element(SetPartition::identity(n));
    let mut e = OrbitDiagram::zero(2 * n, 2 * n);
    for z in &group {
        e = e.add(&OrbitDiagram::basis_element(SetPartition::permutation(z)).tensor(&x1))?;
    }
    Ok(Block::from_diagram(e.scale(&CycPoly::from_rational(rational(1, group.len() as i64)))))
}

/// V^μ = ([n]⊗[n], e_μ), lifting the regular crossed module.
pub fn regular_object(mu: &CycleType) -> Result<CenterObject> {
    let sigma = mu.representative();
    let e = build_e_mu(mu)?;
    let d1 = regular_d1(&sigma, &e)?;
    let d1_inv = regular_d1(&sigma.inverse(), &e)?;
    Ok(CenterObject {
        base: KaroubiObject::new_unchecked(e)?,
        d1,
        d1_inv,
        provenance: Provenance::Regular { mu: mu.clone(), sigma },
    })
}

/// D_n = ⊕_{μ ⊢ n} V^μ as one block-diagonal object.
pub fn regular_sum(n: usize) -> Result<CenterObject> {
    let parts = CycleType::all(n).iter().map(regular_object).collect::<Result<Vec<_>>>()?;
    CenterObject::direct_sum(&parts)
}

impl CenterObject {
    /// Wraps arbitrary data without checks; see [`verify_naturality`].
    pub fn from_parts(idempotent: Block, d1: Block, d1_inv: Block) -> Result<Self> {
        let base = KaroubiObject::new_unchecked(idempotent)?;
        let (n, k) = (base.width(), base.multiplicity());
        for d in [&d1, &d1_inv] {
            if d.rows() != k || d.cols() != k || d.upper() != n + 1 || d.lower() != n + 1 {
                return Err(Error::ShapeMismatch(format!("d_1 must be a {k}x{k} endomorphism of width {}", n + 1)));
            }
        }
        Ok(CenterObject { base, d1, d1_inv, provenance: Provenance::Custom })
    }

    /// The tensor unit ([0], 1).
    pub fn unit() -> Self {
        let d1 = Block::identity(1, 1);
        CenterObject {
            base: KaroubiObject::new_unchecked(Block::identity(0, 1)).expect("square"),
            d1: d1.clone(),
            d1_inv: d1,
            provenance: Provenance::Unit,
        }
    }

    pub fn base(&self) -> &KaroubiObject {
        &self.base
    }

    pub fn idempotent(&self) -> &Block {
        self.base.idempotent()
    }

    pub fn width(&self) -> usize {
        self.base.width()
    }

    pub fn multiplicity(&self) -> usize {
        self.base.multiplicity()
    }

    pub fn d1(&self) -> &Block {
        &self.d1
    }

    pub fn d1_inv(&self) -> &Block {
        &self.d1_inv
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Categorical dimension: the trace of the idempotent.
    pub fn dimension(&self) -> Result<CycPoly> {
        self.base.dimension()
    }

    /// c_1 = Ψ_{[n],[1]} ∘ d_1 : W⊗[1] → [1]⊗W.
    pub fn c1(&self) -> Result<Block> {
        self.d1.permute_lower(&crossing(self.width(), 1))
    }

    /// c_1⁻¹ = d_1⁻¹ ∘ Ψ_{[1],[n]} : [1]⊗W → W⊗[1].
    pub fn c1_inv(&self) -> Result<Block> {
        self.d1_inv.permute_upper(&crossing(1, self.width()))
    }

    /// c_m : W⊗[m] → [m]⊗W, restricted to the image of e.
    pub fn half_braiding(&self, m: usize) -> Result<Block> {
        let c1 = self.c1()?;
        let mut acc = self.idempotent().tensor(&Block::identity(m, 1));
        for j in 0..m {
            acc = acc.post_window(&c1, j, 1, 1)?;
        }
        Ok(acc)
    }

    /// Inverse crossing for the letter −i (see [`Self::inverse_braiding`]).
    pub fn inverse_half_braiding(&self, m: usize) -> Result<Block> {
        let c1inv = self.c1_inv()?;
        let mut acc = Block::identity(m, 1).tensor(self.idempotent());
        for j in (0..m).rev() {
            acc = acc.post_window(&c1inv, j, 1, 1)?;
        }
        Ok(acc)
    }

    /// The braiding c^{self}_{other} : self⊗other → other⊗self.
    pub fn braiding(&self, other: &Self) -> Result<Block> {
        let (m1, m2) = (self.multiplicity(), other.multiplicity());
        let c1 = self.c1()?;
        let mut acc = self.idempotent().tensor(other.idempotent());
        for j in 0..other.width() {
            acc = acc.post_window(&c1, j, 1, m2)?;
        }
        Ok(acc.permute_rows(&transpose_index(m1, m2)))
    }

    /// The inverse of `self.braiding(other)`: other⊗self → self⊗other.
    pub fn inverse_braiding(&self, other: &Self) -> Result<Block> {
        let (m1, m2) = (self.multiplicity(), other.multiplicity());
        let c1inv = self.c1_inv()?;
        let mut acc = other.idempotent().tensor(self.idempotent());
        for j in (0..other.width()).rev() {
            acc = acc.post_window(&c1inv, j, m2, 1)?;
        }
        Ok(acc.permute_rows(&transpose_index(m2, m1)))
    }

    /// (V, c) ⊗ (W, d) with half-braiding (c ⊗ 1)(1 ⊗ d).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.width(), other.width());
        let (m1, m2) = (self.multiplicity(), other.multiplicity());
        let w = n1 + n2 + 1;
        let base = self.base.tensor(&other.base);
        let start = base.idempotent().tensor(&Block::identity(1, 1));
        let assemble = |outer: &Block, inner: &Block, forward: bool| -> Result<Block> {
            if forward {
                let a = start.post_window(inner, n1, m1, 1)?;
                let a = a.post_window(outer, 0, 1, m2)?;
                a.permute_lower(&crossing(1, n1 + n2))
            } else {
                let a = start.permute_lower(&crossing(n1 + n2, 1))?;
                let a = a.post_window(outer, 0, 1, m2)?;
                a.post_window(inner, n1, m1, 1)
            }
        };
        let d1 = assemble(&self.c1()?, &other.c1()?, true)?;
        let d1_inv = assemble(&self.c1_inv()?, &other.c1_inv()?, false)?;
        debug_assert_eq!(d1.lower(), w);
        Ok(CenterObject {
            base,
            d1,
            d1_inv,
            provenance: Provenance::Tensor(Box::new(self.provenance.clone()), Box::new(other.provenance.clone())),
        })
    }

    /// Block-diagonal direct sum of objects of equal width.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        if parts.iter().any(|p| p.width() != first.width()) {
            return Err(Error::ShapeMismatch("direct summands must share a width".into()));
        }
        let collect = |f: fn(&Self) -> &Block| BlockMorphism::direct_sum(&parts.iter().map(|p| f(p).clone()).collect::<Vec<_>>());
        Ok(CenterObject {
            base: KaroubiObject::new_unchecked(collect(|p| p.idempotent())?)?,
            d1: collect(|p| &p.d1)?,
            d1_inv: collect(|p| &p.d1_inv)?,
            provenance: Provenance::Sum(parts.iter().map(|p| p.provenance.clone()).collect()),
        })
    }

    /// The dual object; for W_{σ,ρ} this is W_{σ⁻¹,ρ*} with ρ*(z) = ρ(z⁻¹)ᵗ.
    pub fn dual(&self) -> Result<Self> {
        match &self.provenance {
            Provenance::Interpolation { rho, .. } => interpolation_object(&rho.dual()),
            Provenance::Regular { mu, .. } => regular_object(mu),
            _ => Err(Error::Provenance("an interpolation or regular object".into())),
        }
    }

    /// The Karoubi object's image under F_n: a rank, i.e. the dimension at t = n.
    pub fn functor_rank(&self, n: usize) -> Result<usize> {
        Ok(crate::diagram::functor_block(n, self.idempotent())?.rank())
    }
}

/// Row order taking a first-major index (a, b), a < outer, b < inner, to (b, a).
pub(crate) fn transpose_index(outer: usize, inner: usize) -> Vec<usize> {
    (0..outer * inner).map(|r| (r % outer) * inner + r / outer).collect()
}

/// x_z ⊗ A with z a permutation, as a one-term block.
pub fn permutation_block(z: &Permutation, a: &CycMatrix) -> Block {
    Block::from_matrix(&OrbitDiagram::basis_element(SetPartition::permutation(z)), a)
}
