//! Exact checks of the center structure: naturality of the half-braiding,
//! the two-strand seed d_2, the annihilation identities, twists and duals.

use super::{crossing, crossing_at, projected_d1, Block, CenterObject, Provenance};
use crate::diagram::{OrbitDiagram, PartitionDiagram};
use crate::error::{Error, Result};
use crate::partition::SetPartition;
use crate::perm::Permutation;
use crate::ring::{CycMatrix, CycPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct NaturalityReport {
    /// d_1 (Id ⊗ π_*) = Id ⊗ π_*.
    pub unit: bool,
    /// (Id ⊗ π^*) d_1 = Id ⊗ π^*.
    pub counit: bool,
    /// d_2 commutes with Id ⊗ π_X.
    pub swap: bool,
    /// d_2 commutes with Id ⊗ π_H.
    pub merge: bool,
    /// d_1 is fixed by e ⊗ 1 on both sides.
    pub restricted: bool,
    /// The stored inverse composes to e ⊗ 1 on both sides.
    pub inverse: bool,
}

impl NaturalityReport {
    pub fn all(&self) -> bool {
        self.unit && self.counit && self.swap && self.merge && self.restricted && self.inverse
    }
}

fn x(p: SetPartition) -> Block {
    Block::from_diagram(OrbitDiagram::basis_element(p))
}

/// d_2 = (Id ⊗ π_X)(d_1 ⊗ 1)(Id ⊗ π_X)(d_1 ⊗ 1), restricted to W ⊗ [2].
pub fn d2(w: &CenterObject) -> Result<Block> {
    let n = w.width();
    let swap = crossing_at(n + 2, n, 1, 1);
    let step = w.d1().tensor(&Block::identity(1, 1));
    let a = step.permute_lower(&swap)?;
    step.compose(&a)?.permute_lower(&swap)
}

pub fn verify_naturality(w: &CenterObject) -> Result<NaturalityReport> {
    let n = w.width();
    let k = w.multiplicity();
    let e = w.idempotent();
    let e1 = e.tensor(&Block::identity(1, 1));
    let e_unit = e.tensor(&x(SetPartition::unit()));
    let e_counit = e.tensor(&x(SetPartition::counit()));
    let d2 = d2(w)?;
    let swap = crossing_at(n + 2, n, 1, 1);
    let merge = x(SetPartition::merge());
    Ok(NaturalityReport {
        unit: w.d1().compose(&e_unit)? == e_unit,
        counit: e_counit.compose(w.d1())? == e_counit,
        swap: d2.permute_upper(&swap)? == d2.permute_lower(&swap)?,
        merge: d2.pre_window(&merge, n, k, 1)? == d2.post_window(&merge, n, k, 1)?,
        restricted: e1.compose(w.d1())? == *w.d1() && w.d1().compose(&e1)? == *w.d1(),
        inverse: w.d1().compose(w.d1_inv())? == e1 && w.d1_inv().compose(w.d1())? == e1,
    })
}

/// The closed expansion of d_2 in the partition basis: identity plus single
/// and double hops through the two extra strands.
pub fn explicit_d2(sigma: &Permutation) -> PartitionDiagram {
    let n = sigma.degree();
    let s = |i: usize| sigma.apply(i - 1) + 1;
    let e = |a: Option<(usize, usize)>, b: Option<(usize, usize)>| SetPartition::hops(n, &[a, b]).expect("in range");
    let mut terms = vec![(SetPartition::identity(n + 2), 1)];
    for i in 1..=n {
        terms.push((e(Some((i, s(i))), None), 1));
        terms.push((e(None, Some((i, s(i)))), 1));
        terms.push((e(Some((i, i)), None), -1));
        terms.push((e(None, Some((i, i))), -1));
        for j in 1..=n {
            terms.push((e(Some((i, s(i))), Some((j, s(j)))), 1));
            terms.push((e(Some((i, i)), Some((j, j))), 1));
            terms.push((e(Some((i, s(i))), Some((j, j))), -1));
            terms.push((e(Some((i, i)), Some((j, s(j)))), -1));
        }
    }
    PartitionDiagram::from_terms(n + 2, n + 2, terms.into_iter().map(|(p, c)| (p, CycPoly::from_int(c))))
        .expect("uniform widths")
}

/// (E^{i,j}_{a,b})^{⊕k} (e ⊗ π_H) = 0 = (1 ⊗ π_H)(E^{a,b}_{i,j})^{⊕k}(e ⊗ 1_2)
/// for every i ≠ j.
pub fn annihilation_holds(w: &CenterObject) -> Result<bool> {
    let n = w.width();
    let k = w.multiplicity();
    let e = w.idempotent();
    let e_merge = e.tensor(&x(SetPartition::merge()));
    let e2 = e.tensor(&Block::identity(2, 1));
    let merge = x(SetPartition::merge());
    let ident = CycMatrix::identity(k);
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for a in 1..=n {
                for b in 1..=n {
                    let lhs = SetPartition::hops(n, &[Some((i, a)), Some((j, b))])?;
                    let lhs = Block::from_matrix(&OrbitDiagram::partition(&lhs), &ident);
                    if !lhs.compose(&e_merge)?.is_zero() {
                        return Ok(false);
                    }
                    let rhs = SetPartition::hops(n, &[Some((a, i)), Some((b, j))])?;
                    let rhs = Block::from_matrix(&OrbitDiagram::partition(&rhs), &ident);
                    if !rhs.compose(&e2)?.post_window(&merge, n, k, 1)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// ev : X*⊗X → I summed over the multiplicity diagonal.
fn evaluation(n: usize, k: usize) -> Block {
    let pairing = OrbitDiagram::partition(&SetPartition::pairing(n));
    let mut a = CycMatrix::zeros(1, k * k);
    for i in 0..k {
        a.set(0, i * k + i, crate::ring::Cyclotomic::from_int(1));
    }
    Block::from_matrix(&pairing, &a)
}

fn coevaluation(n: usize, k: usize) -> Block {
    evaluation(n, k).dual()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistSide {
    Left,
    Right,
}

/// θ^l = (ev ⊗ Id)(Id ⊗ c_W)(coev ⊗ Id) or its mirror θ^r, by explicit composition.
pub fn twist(w: &CenterObject, side: TwistSide) -> Result<Block> {
    let (n, k) = (w.width(), w.multiplicity());
    let cww = w.braiding(w)?;
    let (ev, coev) = (evaluation(n, k), coevaluation(n, k));
    match side {
        TwistSide::Left => {
            let a = coev.tensor(w.idempotent());
            let b = a.post_window(&cww, n, k, 1)?;
            b.post_window(&ev, 0, 1, k)
        }
        TwistSide::Right => {
            let a = w.idempotent().tensor(&coev);
            let b = a.post_window(&cww, 0, 1, k)?;
            b.post_window(&ev, n, k, 1)
        }
    }
}

/// θ = (π_{σ⁻¹})^{⊕k} e for W_{σ,ρ}; θ = e for the unit and for V^{1^n}.
/// Other V^μ have no closed form here: use the diagrammatic twist.
pub fn twist_closed_form(w: &CenterObject) -> Result<Block> {
    fn trivial(p: &Provenance) -> Option<bool> {
        match p {
            Provenance::Interpolation { sigma, .. } => Some(sigma.is_identity()),
            Provenance::Regular { sigma, .. } => sigma.is_identity().then_some(true),
            Provenance::Unit => Some(true),
            Provenance::Sum(parts) => parts.iter().map(trivial).collect::<Option<Vec<_>>>().map(|v| v.iter().all(|&b| b)),
            _ => None,
        }
    }
    match w.provenance() {
        Provenance::Interpolation { sigma, .. } => w.idempotent().permute_lower(&sigma.inverse()),
        p if trivial(p) == Some(true) => Ok(w.idempotent().clone()),
        _ => Err(Error::Provenance("an interpolation object, V^{1^n}, the unit or a sum of those".into())),
    }
}

/// The dual half-braiding c*_{[1]} = (ev ⊗ Id)(Id ⊗ c_1⁻¹ ⊗ Id)(Id ⊗ coev),
/// returned as the seed Ψ_{[1],[n]} c*_{[1]} on the dual object.
pub fn diagrammatic_dual_d1(w: &CenterObject) -> Result<Block> {
    let (n, k) = (w.width(), w.multiplicity());
    let e_dual = w.idempotent().dual();
    let a = e_dual.tensor(&Block::identity(1, 1)).tensor(&coevaluation(n, k));
    let b = a.post_window(&w.c1_inv()?, n, k, k)?;
    let c = b.post_window(&evaluation(n, k), 0, 1, k)?;
    c.permute_lower(&crossing(1, n))
}

/// d_1 with σ replaced by σ' on the same idempotent; used to probe which
/// seeds pass the naturality test.
pub fn reseeded(w: &CenterObject, sigma: &Permutation) -> Result<CenterObject> {
    let e = w.idempotent();
    let seed = |s: &Permutation| {
        e.tensor(&Block::identity(1, 1)).post_window(&Block::from_diagram(projected_d1(s)), 0, 1, e.rows())
    };
    CenterObject::from_parts(e.clone(), seed(sigma)?, seed(&sigma.inverse())?)
}
