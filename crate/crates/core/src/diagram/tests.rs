use proptest::prelude::*;

use super::*;
use crate::partition::Labels;

fn p(s: &str) -> SetPartition {
    s.parse().unwrap()
}

fn t() -> CycPoly {
    CycPoly::t()
}

fn arb_partition(k: usize, l: usize) -> impl Strategy<Value = SetPartition> {
    proptest::collection::vec(0u8..(k + l).max(1) as u8, k + l)
        .prop_map(move |v| SetPartition::from_labels(k, l, v.into_iter().collect::<Labels>()))
}

fn arb_pair() -> impl Strategy<Value = (SetPartition, SetPartition)> {
    (0usize..=3, 0usize..=3, 0usize..=3)
        .prop_flat_map(|(k, l, m)| (arb_partition(k, l), arb_partition(l, m)))
}

/// x_λ = λ − Σ_{μ > λ} x_μ, evaluated by plain recursion in the partition basis.
fn x_by_recursion(lambda: &SetPartition) -> PartitionDiagram {
    let mut acc = PartitionDiagram::basis_element(lambda.clone());
    for mu in lambda.coarsenings() {
        acc = acc.sub(&x_by_recursion(&mu)).unwrap();
    }
    acc
}

#[test]
fn displayed_composite_has_one_closed_component() {
    let alpha = p("{{1,3,1'},{2},{4},{2',3'}} : 4->3");
    let beta = p("{{1,1',2'},{2},{3}} : 3->2");
    let d = PartitionDiagram::basis_element(beta).compose(&PartitionDiagram::basis_element(alpha)).unwrap();
    let expected = PartitionDiagram::basis_element(p("{{1,3,1',2'},{2},{4}} : 4->2")).scale(&t());
    assert_eq!(d, expected);
}

#[test]
fn loop_evaluates_to_t() {
    let d = PartitionDiagram::partition(&SetPartition::counit())
        .compose(&PartitionDiagram::partition(&SetPartition::unit()))
        .unwrap();
    assert_eq!(d, PartitionDiagram::basis_element(SetPartition::empty()).scale(&t()));
}

#[test]
fn small_x_elements() {
    let x12 = PartitionDiagram::x(&SetPartition::identity(2)).unwrap();
    let expected: PartitionDiagram = "{{1,1'},{2,2'}} - {{1,2,1',2'}} : 2->2".parse().unwrap();
    assert_eq!(x12, expected);
    let swap = PartitionDiagram::x(&SetPartition::swap()).unwrap();
    let e = x12.add(&swap).unwrap().scale(&CycPoly::from_rational(crate::ring::rational(1, 2)));
    let expected: PartitionDiagram = "1/2 * {{1,1'},{2,2'}} + 1/2 * {{1,2'},{2,1'}} - {{1,2,1',2'}} : 2->2".parse().unwrap();
    assert_eq!(e, expected);
}

#[test]
fn x_matches_recursive_definition() {
    let mut cases = SetPartition::all(2, 2);
    cases.push(SetPartition::identity(3));
    cases.push(p("{{1,2'},{2},{1'}} : 2->2"));
    for lambda in cases {
        assert_eq!(PartitionDiagram::x(&lambda).unwrap(), x_by_recursion(&lambda), "{lambda}");
    }
}

#[test]
fn traces_of_identities() {
    for n in 0..=6 {
        assert_eq!(PartitionDiagram::identity(n).trace().unwrap(), CycPoly::t_pow(n as u32));
        assert_eq!(OrbitDiagram::identity(n).trace().unwrap(), CycPoly::t_pow(n as u32));
    }
    for n in 0..=5 {
        let x = OrbitDiagram::basis_element(SetPartition::identity(n));
        assert_eq!(x.trace().unwrap(), CycPoly::falling(0, n as u32));
    }
}

#[test]
fn partial_trace_of_padded_morphism() {
    let f: OrbitDiagram = "2 * x{{1,2'},{2,1'}} + (t) * x{{1,2,1',2'}} : 2->2".parse().unwrap();
    let padded = f.tensor(&OrbitDiagram::identity(2));
    assert_eq!(padded.partial_trace(2, true).unwrap(), f.scale(&CycPoly::t_pow(2)));
    let padded = OrbitDiagram::identity(1).tensor(&f);
    assert_eq!(padded.partial_trace(1, false).unwrap(), f.scale(&t()));
    assert_eq!(OrbitDiagram::identity(3).partial_trace(2, true).unwrap(), OrbitDiagram::identity(1).scale(&CycPoly::t_pow(2)));
}

#[test]
fn text_roundtrip() {
    let d: PartitionDiagram = "(t - 1) * {{1,1'}} - 1/3 * {{1},{1'}} + (z3) * {{1},{1'}} : 1->1".parse().unwrap();
    assert_eq!(d.to_string().parse::<PartitionDiagram>().unwrap(), d);
    let x: OrbitDiagram = "-x{{1,2'},{2,1'}} : 2->2".parse().unwrap();
    assert_eq!(x.to_string(), "-1 * x{{1,2'},{2,1'}} : 2->2");
    assert_eq!("0 : 1->2".parse::<OrbitDiagram>().unwrap(), OrbitDiagram::zero(1, 2));
    assert!("{{1,1'}} : 1->1".parse::<OrbitDiagram>().is_err());
    assert!("{{1,1'} : 1->1".parse::<PartitionDiagram>().is_err());
}

#[test]
fn width_errors() {
    let a = OrbitDiagram::identity(2);
    let b = OrbitDiagram::identity(3);
    assert!(a.compose(&b).is_err());
    assert!(a.add(&b).is_err());
    assert!(PartitionDiagram::basis_element(SetPartition::unit()).trace().is_err());
    assert!(a.partial_trace(3, true).is_err());
}

fn to_orbit(d: &PartitionDiagram) -> OrbitDiagram {
    d.convert().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orbit_composition_agrees_with_partitions((alpha, beta) in arb_pair()) {
        let xa = OrbitDiagram::basis_element(alpha.clone());
        let xb = OrbitDiagram::basis_element(beta.clone());
        let direct = xb.compose(&xa).unwrap();
        let pa = PartitionDiagram::x(&alpha).unwrap();
        let pb = PartitionDiagram::x(&beta).unwrap();
        let via = to_orbit(&pb.compose(&pa).unwrap());
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn orbit_tensor_agrees_with_partitions(a in arb_partition(2, 1), b in arb_partition(1, 2)) {
        let direct = OrbitDiagram::basis_element(a.clone()).tensor(&OrbitDiagram::basis_element(b.clone()));
        let via = to_orbit(&PartitionDiagram::x(&a).unwrap().tensor(&PartitionDiagram::x(&b).unwrap()));
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn orbit_traces_agree_with_partitions(l in arb_partition(3, 3), close in 0usize..=3, right in any::<bool>()) {
        let x = OrbitDiagram::basis_element(l.clone());
        let px = PartitionDiagram::x(&l).unwrap();
        prop_assert_eq!(x.trace().unwrap(), px.trace().unwrap());
        prop_assert_eq!(x.partial_trace(close, right).unwrap(), to_orbit(&px.partial_trace(close, right).unwrap()));
        let staged = x.partial_trace(close, right).unwrap().trace().unwrap();
        prop_assert_eq!(staged, x.trace().unwrap());
    }

    #[test]
    fn window_agrees_with_padded_composition(
        alpha in arb_partition(2, 4),
        phi in (1usize..=2, 0usize..=2).prop_flat_map(|(w, w2)| arb_partition(w, w2)),
        offset in 0usize..=2,
    ) {
        prop_assume!(offset + phi.upper() <= 4);
        let rest = 4 - offset - phi.upper();
        let xa = OrbitDiagram::basis_element(alpha.clone());
        let xf = OrbitDiagram::basis_element(phi.clone());
        let padded = OrbitDiagram::identity(offset).tensor(&xf).tensor(&OrbitDiagram::identity(rest));
        prop_assert_eq!(xa.post_window(&xf, offset).unwrap(), padded.compose(&xa).unwrap());
        let pa = PartitionDiagram::basis_element(alpha);
        let pf = PartitionDiagram::basis_element(phi);
        let ppad = PartitionDiagram::identity(offset).tensor(&pf).tensor(&PartitionDiagram::identity(rest));
        prop_assert_eq!(pa.post_window(&pf, offset).unwrap(), ppad.compose(&pa).unwrap());
        let back = xa.dual();
        prop_assert_eq!(back.pre_window(&xf.dual(), offset).unwrap(), back.compose(&padded.dual()).unwrap());
    }

    #[test]
    fn basis_change_roundtrips(l in arb_partition(2, 3)) {
        let d = PartitionDiagram::basis_element(l);
        prop_assert_eq!(to_orbit(&d).convert::<PartitionBasis>().unwrap(), d);
    }
}
