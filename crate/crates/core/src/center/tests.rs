use super::*;
use crate::diagram::{PartitionBasis, PartitionDiagram};
use crate::partition::VertexId;
use crate::perm::Permutation;
use crate::rho::{make_rho, RhoKind};
use crate::ring::{parse_poly, Cyclotomic};

/// Block-list notation: 0 ends a block, v < 10 is upper vertex v, 10 + v is lower vertex v.
/// Drawn-path notation: consecutive entries are joined, 0 lifts the pen,
/// v < 10 is upper vertex v and 10 + v is lower vertex v. Blocks are the
/// connected components.
fn tp(k: usize, l: usize, digits: &[usize]) -> SetPartition {
    let vertex = |d: usize| if d < 10 { VertexId::upper(d) } else { VertexId::lower(d - 10) };
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    for path in digits.split(|&d| d == 0).filter(|p| !p.is_empty()) {
        let mut merged: Vec<VertexId> = path.iter().map(|&d| vertex(d)).collect();
        blocks.retain(|b| {
            let touches = b.iter().any(|v| merged.contains(v));
            if touches {
                merged.extend(b.iter().copied());
            }
            !touches
        });
        merged.sort();
        merged.dedup();
        blocks.push(merged);
    }
    SetPartition::canonicalize(&blocks, k, l).unwrap()
}

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

fn object(s: &str, n: usize, kind: RhoKind) -> CenterObject {
    interpolation_object(&make_rho(&kind, &perm(s, n)).unwrap()).unwrap()
}

fn poly(s: &str) -> CycPoly {
    parse_poly(s).unwrap()
}

fn builtin_rhos(sigma: &Permutation) -> Vec<RhoMap> {
    let mut out = vec![make_rho(&RhoKind::Trivial, sigma).unwrap(), make_rho(&RhoKind::Sign, sigma).unwrap()];
    for a in 1..sigma.order() as i64 {
        if let Ok(r) = make_rho(&RhoKind::CyclicPower(a), sigma) {
            out.push(r);
        }
    }
    out
}

fn all_objects(max_n: usize) -> Vec<CenterObject> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for sigma in Permutation::all(n).unwrap() {
            for rho in builtin_rhos(&sigma) {
                out.push(interpolation_object(&rho).unwrap());
            }
        }
    }
    out
}

fn in_partitions(b: &Block) -> PartitionDiagram {
    assert_eq!((b.rows(), b.cols()), (1, 1));
    b.entry(0, 0).convert::<PartitionBasis>().unwrap()
}

#[test]
fn two_strand_idempotents() {
    let e = build_e_rho(&make_rho(&RhoKind::Trivial, &perm("(1 2)", 2)).unwrap()).unwrap();
    let expected: PartitionDiagram = "1/2 * {{1,1'},{2,2'}} + 1/2 * {{1,2'},{2,1'}} - {{1,2,1',2'}} : 2->2".parse().unwrap();
    assert_eq!(in_partitions(&e), expected);
    let e = build_e_rho(&make_rho(&RhoKind::Sign, &perm("(1 2)", 2)).unwrap()).unwrap();
    let expected: PartitionDiagram = "1/2 * {{1,1'},{2,2'}} - 1/2 * {{1,2'},{2,1'}} : 2->2".parse().unwrap();
    assert_eq!(in_partitions(&e), expected);
    let e = build_e_rho(&make_rho(&RhoKind::Trivial, &Permutation::identity(1)).unwrap()).unwrap();
    assert_eq!(e, Block::identity(1, 1));
}

#[test]
fn three_cycle_idempotent_matches_displayed_expansion() {
    let pd = |digits: &[usize]| PartitionDiagram::basis_element(tp(3, 3, digits));
    let x1 = pd(&[1, 11, 0, 2, 12, 0, 3, 13, 0])
        .sub(&pd(&[1, 11, 1, 3, 13, 11, 0, 2, 12, 0]))
        .unwrap()
        .sub(&pd(&[1, 11, 1, 2, 12, 11, 0, 3, 13, 0]))
        .unwrap()
        .sub(&pd(&[1, 11, 0, 2, 12, 2, 3, 13, 12, 0]))
        .unwrap();
    let merged = pd(&[1, 11, 12, 2, 1, 0, 2, 3, 13, 12, 0]).scale(&CycPoly::from_int(2));
    let x1 = x1.add(&merged).unwrap();
    let xs = pd(&[1, 12, 0, 2, 13, 0, 3, 11, 0])
        .sub(&pd(&[1, 12, 13, 2, 1, 0, 3, 11, 0]))
        .unwrap()
        .sub(&pd(&[1, 11, 12, 3, 1, 0, 2, 13, 0]))
        .unwrap()
        .sub(&pd(&[1, 12, 0, 2, 3, 13, 11, 2, 0]))
        .unwrap()
        .add(&merged)
        .unwrap();
    let xs2 = pd(&[1, 13, 0, 2, 11, 0, 3, 12, 0])
        .sub(&pd(&[1, 2, 13, 11, 1, 0, 3, 12, 0]))
        .unwrap()
        .sub(&pd(&[1, 13, 0, 2, 3, 12, 11, 2, 0]))
        .unwrap()
        .sub(&pd(&[1, 3, 13, 12, 1, 0, 2, 11, 0]))
        .unwrap()
        .add(&merged)
        .unwrap();
    let third = CycPoly::from_rational(rational(1, 3));
    for a in 0..3i64 {
        let rho = make_rho(&RhoKind::CyclicPower(a), &perm("(1 2 3)", 3)).unwrap();
        let z = Cyclotomic::zeta(3, a);
        let expected = x1
            .add(&xs.scale_cyclotomic(&z))
            .unwrap()
            .add(&xs2.scale_cyclotomic(&z.inv().unwrap()))
            .unwrap()
            .scale(&third);
        let got = in_partitions(&build_e_rho(&rho).unwrap());
        assert_eq!(got.specialize(0), expected.specialize(0), "a = {a}");
        assert_eq!(got, expected, "a = {a}");
    }
}

#[test]
fn seeds_match_displayed_examples() {
    assert_eq!(build_d1(&Permutation::identity(1)), PartitionDiagram::identity(2));
    let pd = |k: usize, digits: &[usize], c: i64| PartitionDiagram::basis_element(tp(k, k, digits)).scale(&CycPoly::from_int(c));
    let two = [
        pd(3, &[1, 11, 0, 2, 12, 0, 3, 13, 0], 1),
        pd(3, &[11, 1, 3, 0, 2, 12, 13], 1),
        pd(3, &[1, 11, 13, 0, 12, 2, 3], 1),
        pd(3, &[11, 1, 3, 13, 11, 0, 2, 12], -1),
        pd(3, &[1, 11, 0, 12, 2, 3, 13, 12], -1),
    ];
    let sum = two.iter().skip(1).fold(two[0].clone(), |a, b| a.add(b).unwrap());
    assert_eq!(build_d1(&perm("(1 2)", 2)), sum);
    let three = [
        pd(4, &[1, 11, 0, 2, 12, 0, 3, 13, 0, 4, 14, 0], 1),
        pd(4, &[11, 1, 4, 0, 2, 12, 14, 0, 3, 13], 1),
        pd(4, &[1, 11, 0, 12, 2, 4, 0, 3, 13, 14, 0], 1),
        pd(4, &[1, 11, 14, 0, 2, 12, 0, 13, 3, 4, 0], 1),
        pd(4, &[11, 1, 4, 14, 11, 0, 2, 12, 0, 3, 13, 0], -1),
        pd(4, &[1, 11, 0, 12, 2, 4, 14, 12, 0, 3, 13, 0], -1),
        pd(4, &[1, 11, 0, 12, 2, 0, 3, 13, 14, 4, 3, 0], -1),
    ];
    let sum = three.iter().skip(1).fold(three[0].clone(), |a, b| a.add(b).unwrap());
    assert_eq!(build_d1(&perm("(1 2 3)", 3)), sum);
}

#[test]
fn projected_seed_is_the_seed_on_distinct_labels() {
    for n in 1..=3 {
        let x1 = OrbitDiagram::basis_element(SetPartition::identity(n)).tensor(&OrbitDiagram::identity(1));
        for sigma in Permutation::all(n).unwrap() {
            let full = build_d1(&sigma).convert::<OrbitBasis>().unwrap();
            assert_eq!(full.compose(&x1).unwrap(), projected_d1(&sigma), "{sigma}");
        }
    }
}

#[test]
fn restricted_seed_agrees_with_full_seed() {
    for w in all_objects(3) {
        let Provenance::Interpolation { sigma, .. } = w.provenance() else { unreachable!() };
        let k = w.multiplicity();
        let full = Block::from_matrix(&build_d1(sigma).convert().unwrap(), &CycMatrix::identity(k));
        let e1 = w.idempotent().tensor(&Block::identity(1, 1));
        assert_eq!(full.compose(&e1).unwrap(), *w.d1());
        assert_eq!(e1.compose(&full).unwrap(), *w.d1(), "commutation for {sigma}");
    }
}

#[test]
fn idempotents_and_naturality_up_to_three_strands() {
    for w in all_objects(3) {
        let e = w.idempotent();
        assert_eq!(e.compose(e).unwrap(), *e);
        let report = verify_naturality(&w).unwrap();
        assert!(report.all(), "{:?} for {:?}", report, w.provenance());
    }
}

#[test]
fn seeds_compose_along_the_centralizer() {
    for n in 2..=3 {
        for sigma in Permutation::all(n).unwrap() {
            let rho = make_rho(&RhoKind::Trivial, &sigma).unwrap();
            let e = build_e_rho(&rho).unwrap();
            let full_cycle = sigma.cycle_type().parts() == [n];
            for z1 in rho.group() {
                for z2 in rho.group() {
                    let a = restrict_d1(z1, &e).unwrap();
                    let b = restrict_d1(z2, &e).unwrap();
                    // Only an abelian centralizer lets the z's slide through e.
                    if full_cycle {
                        assert_eq!(b.compose(&a).unwrap(), restrict_d1(&z2.compose(z1), &e).unwrap());
                    }
                }
            }
        }
        let plain = Block::identity(n, 1);
        for s1 in Permutation::all(n).unwrap() {
            for s2 in Permutation::all(n).unwrap() {
                let a = restrict_d1(&s1, &plain).unwrap();
                let b = restrict_d1(&s2, &plain).unwrap();
                assert_eq!(b.compose(&a).unwrap(), restrict_d1(&s2.compose(&s1), &plain).unwrap());
            }
        }
    }
}

#[test]
fn perturbed_seed_is_rejected() {
    let w = object("(1 2)", 2, RhoKind::Trivial);
    let e1 = w.idempotent().tensor(&Block::identity(1, 1));
    let tap = Block::from_diagram(OrbitDiagram::partition(&SetPartition::tap(2, 1).unwrap()));
    let bad = w.d1().add(&tap.compose(&e1).unwrap()).unwrap();
    let probe = CenterObject::from_parts(w.idempotent().clone(), bad, w.d1_inv().clone()).unwrap();
    let report = verify_naturality(&probe).unwrap();
    assert!(!report.unit && !report.all());
    // The identity seed is the symmetric half-braiding, which is natural.
    let symmetric = reseeded(&w, &Permutation::identity(2)).unwrap();
    assert!(verify_naturality(&symmetric).unwrap().all());
}

#[test]
fn two_strand_seed_has_the_explicit_expansion() {
    for w in all_objects(3) {
        let Provenance::Interpolation { sigma, .. } = w.provenance() else { unreachable!() };
        let k = w.multiplicity();
        let explicit = Block::from_matrix(&explicit_d2(sigma).convert().unwrap(), &CycMatrix::identity(k));
        let e2 = w.idempotent().tensor(&Block::identity(2, 1));
        let got = d2(&w).unwrap();
        assert_eq!(explicit.compose(&e2).unwrap(), got, "{sigma}");
        assert_eq!(e2.compose(&explicit).unwrap(), got, "{sigma}");
    }
}

#[test]
fn annihilation_identities() {
    for w in all_objects(3) {
        assert!(annihilation_holds(&w).unwrap(), "{:?}", w.provenance());
    }
}

#[test]
fn twists_agree_with_closed_form() {
    for w in all_objects(3) {
        let closed = twist_closed_form(&w).unwrap();
        assert_eq!(twist(&w, TwistSide::Left).unwrap(), closed, "{:?}", w.provenance());
        assert_eq!(twist(&w, TwistSide::Right).unwrap(), closed, "{:?}", w.provenance());
    }
    let sign = object("(1 2)", 2, RhoKind::Sign);
    assert_eq!(twist_closed_form(&sign).unwrap(), sign.idempotent().scale(&CycPoly::from_int(-1)));
    let triv = object("(1 2)", 2, RhoKind::Trivial);
    assert_eq!(twist_closed_form(&triv).unwrap(), *triv.idempotent());
}

#[test]
fn duals_follow_the_transposed_inverse_rule() {
    for w in all_objects(3) {
        let dual = w.dual().unwrap();
        assert_eq!(*dual.idempotent(), w.idempotent().dual());
        assert_eq!(diagrammatic_dual_d1(&w).unwrap(), *dual.d1(), "{:?}", w.provenance());
        assert_eq!(dual.dual().unwrap(), w);
    }
    let sigma = perm("(1 2 3)", 3);
    let chi = make_rho(&RhoKind::CyclicPower(1), &sigma).unwrap();
    // Relative to σ⁻¹ the exponent is unchanged: ρ*(σ⁻ᵐ) = ρ(σᵐ).
    assert_eq!(chi.dual(), make_rho(&RhoKind::CyclicPower(1), &sigma.inverse()).unwrap());
    let sign = make_rho(&RhoKind::Sign, &perm("(1 2)", 2)).unwrap();
    assert_eq!(sign.dual(), sign);
}

#[test]
fn dimensions() {
    assert_eq!(object("(1 2)", 2, RhoKind::Trivial).dimension().unwrap(), poly("1/2*t^2 - 1/2*t"));
    assert_eq!(object("()", 1, RhoKind::Trivial).dimension().unwrap(), CycPoly::t());
    assert_eq!(object("(1 2)(3 4)", 4, RhoKind::Trivial).dimension().unwrap(), CycPoly::falling(0, 4).scale_rational(&rational(1, 8)));
    for w in all_objects(4) {
        let Provenance::Interpolation { rho, .. } = w.provenance() else { unreachable!() };
        let n = w.width() as u32;
        let closed = CycPoly::falling(0, n).scale(&rho.trace_at_identity()).scale_rational(&rational(1, rho.order() as i64));
        assert_eq!(w.dimension().unwrap(), closed);
    }
}

#[test]
fn half_braidings() {
    let w = object("(1 2)", 2, RhoKind::Trivial);
    assert_eq!(w.half_braiding(0).unwrap(), *w.idempotent());
    let c2 = w.half_braiding(2).unwrap();
    assert_eq!(d2(&w).unwrap().permute_lower(&crossing(2, 2)).unwrap(), c2);
    let back = w.inverse_half_braiding(2).unwrap();
    assert_eq!(back.compose(&c2).unwrap(), w.idempotent().tensor(&Block::identity(2, 1)));
    let strand = object("()", 1, RhoKind::Trivial);
    for m in 0..=3 {
        let expected = Block::from_diagram(OrbitDiagram::partition(&SetPartition::symmetry(1, m)));
        assert_eq!(strand.half_braiding(m).unwrap(), expected);
    }
}

#[test]
fn braidings_and_tensor_products() {
    let strand = object("()", 1, RhoKind::Trivial);
    let sym = Block::from_diagram(OrbitDiagram::partition(&SetPartition::symmetry(1, 1)));
    assert_eq!(strand.braiding(&strand).unwrap(), sym);
    let two = strand.tensor(&strand).unwrap();
    assert!(verify_naturality(&two).unwrap().all());
    let w = object("(1 2)", 2, RhoKind::Sign);
    let v = object("(1 2 3)", 3, RhoKind::CyclicPower(1));
    assert_eq!(w.braiding(&two).unwrap(), w.half_braiding(2).unwrap());
    for (a, b) in [(&w, &v), (&v, &w), (&w, &w)] {
        let c = a.braiding(b).unwrap();
        let ee = a.idempotent().tensor(b.idempotent());
        assert_eq!(a.inverse_braiding(b).unwrap().compose(&c).unwrap(), ee);
    }
    let unit = CenterObject::unit();
    let wu = w.tensor(&unit).unwrap();
    assert_eq!(wu.idempotent(), w.idempotent());
    assert_eq!(wu.d1(), w.d1());
    // (V ⊗ W) braided past X equals V then W braided past X.
    let vw = w.tensor(&strand).unwrap();
    assert!(verify_naturality(&vw).unwrap().all());
    let direct = vw.braiding(&w).unwrap();
    let inner = strand.braiding(&w).unwrap();
    let outer = w.braiding(&w).unwrap();
    let staged = w
        .idempotent()
        .tensor(strand.idempotent())
        .tensor(w.idempotent())
        .post_window(&inner, 2, 1, 1)
        .unwrap()
        .post_window(&outer, 0, 1, 1)
        .unwrap();
    assert_eq!(direct, staged);
}

#[test]
fn regular_objects() {
    let one = regular_object(&CycleType::new(vec![1]).unwrap()).unwrap();
    assert_eq!(one.dimension().unwrap(), CycPoly::t_pow(2));
    assert!(verify_naturality(&one).unwrap().all());
    for n in 1..=4usize {
        let mut total = Cyclotomic::from_int(0);
        for mu in CycleType::all(n) {
            let e = build_e_mu(&mu).unwrap();
            let dim = e.trace().unwrap();
            let closed = CycPoly::falling(0, n as u32).pow(2).scale_rational(&rational(1, mu.centralizer_order() as i64));
            assert_eq!(dim, closed, "{mu}");
            total += &dim.eval_int(n as i64);
        }
        let fact: i64 = (1..=n as i64).product();
        assert_eq!(total, Cyclotomic::from_int(fact * fact));
    }
    for n in 2..=3 {
        for mu in CycleType::all(n) {
            let v = regular_object(&mu).unwrap();
            let e = v.idempotent();
            assert_eq!(e.compose(e).unwrap(), *e);
            assert!(verify_naturality(&v).unwrap().all(), "{mu}");
        }
    }
    // The lift is W_{σ,triv} ⊗ ([n], x_{1_n}), so its twist carries the
    // monodromy of the two factors and is not e_μ once σ ≠ 1.
    for mu in CycleType::all(2) {
        let v = regular_object(&mu).unwrap();
        let e = v.idempotent();
        let left = twist(&v, TwistSide::Left).unwrap();
        assert_eq!(left, twist(&v, TwistSide::Right).unwrap());
        assert_eq!(left.compose(&left).unwrap(), *e);
        if mu.parts() == [1, 1] {
            assert_eq!(left, *e);
            continue;
        }
        assert_ne!(left, *e);
        assert_eq!(left.trace().unwrap(), CycPoly::falling(0, 4).scale_rational(&rational(1, 2)));
        // At t = 2 the degree-(12) part of the regular D(S_2)-module splits
        // into one boson and one fermion, so the twist is traceless.
        let image = crate::diagram::functor_block(2, &left).unwrap();
        assert_eq!(image.trace(), Cyclotomic::from_int(0));
        assert_eq!(image.mul(&image).unwrap(), crate::diagram::functor_block(2, e).unwrap());
    }
}

#[test]
fn functor_ranks() {
    for w in all_objects(3) {
        let Provenance::Interpolation { rho, .. } = w.provenance() else { unreachable!() };
        let n = w.width();
        let fact: usize = (1..=n).product();
        assert_eq!(w.functor_rank(n).unwrap(), fact / rho.order() * rho.dim());
    }
}


#[test]
fn matrix_valued_rho() {
    // The regular representation of Z((12)) ⊂ S_3, which is two-dimensional.
    let s = perm("(1 2)", 3);
    let group = crate::perm::centralizer(&s).unwrap();
    let one = |v| Cyclotomic::from_int(v);
    let table = group
        .iter()
        .map(|z| {
            let m = if z.apply(0) == 0 {
                CycMatrix::identity(2)
            } else {
                CycMatrix::from_rows(vec![vec![one(0), one(1)], vec![one(1), one(0)]]).unwrap()
            };
            (z.clone(), m)
        })
        .collect();
    let rho = make_rho(&RhoKind::Explicit(table), &s).unwrap();
    let w = interpolation_object(&rho).unwrap();
    assert_eq!(w.multiplicity(), 2);
    let e = w.idempotent();
    assert_eq!(e.compose(e).unwrap(), *e);
    assert!(verify_naturality(&w).unwrap().all());
    assert!(annihilation_holds(&w).unwrap());
    let closed = twist_closed_form(&w).unwrap();
    assert_eq!(twist(&w, TwistSide::Left).unwrap(), closed);
    // It splits as the trivial plus the sign character of (12).
    let triv = object("(1 2)", 3, RhoKind::Trivial);
    let sign = object("(1 2)", 3, RhoKind::Sign);
    let sum = &triv.dimension().unwrap() + &sign.dimension().unwrap();
    assert_eq!(w.dimension().unwrap(), sum);
    assert_eq!(w.functor_rank(3).unwrap(), 6);
}
