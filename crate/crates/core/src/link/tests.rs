use super::*;
use crate::center::{interpolation_object, regular_object};
use crate::perm::CycleType;
use crate::rho::{make_rho, RhoKind};
use crate::ring::parse_poly;

fn rho(cycles: &str, n: usize, kind: RhoKind) -> RhoMap {
    make_rho(&kind, &Permutation::parse_cycles(cycles, n).unwrap()).unwrap()
}

fn word(p: usize, s: &str) -> BraidWord {
    BraidWord::parse(p, s).unwrap()
}

#[test]
fn labels_agree_with_diagrams_on_two_strands() {
    let objects = [
        rho("(1 2)", 2, RhoKind::Trivial),
        rho("(1 2)", 2, RhoKind::Sign),
        rho("()", 2, RhoKind::Sign),
        rho("(1 2)", 3, RhoKind::Trivial),
    ];
    let words = ["", "+1", "-1", "+1 +1", "+1 +1 +1", "-1 -1 -1", "+1 -1 +1"];
    for r in &objects {
        let w = interpolation_object(r).unwrap();
        let model = LabelModel::interpolation(r);
        for s in words {
            let b = word(2, s);
            let by_diagrams = closure_by_diagrams(&w, &b, ClosingOrder::RightToLeft).unwrap();
            assert_eq!(model.closure(&b, DEFAULT_MAX_STATES).unwrap(), by_diagrams, "{s:?} on {:?}", r.sigma());
            assert_eq!(closure_by_diagrams(&w, &b, ClosingOrder::LeftToRight).unwrap(), by_diagrams);
        }
    }
}

#[test]
fn labels_agree_with_diagrams_for_a_complex_character() {
    let r = rho("(1 2 3)", 3, RhoKind::CyclicPower(1));
    let w = interpolation_object(&r).unwrap();
    let model = LabelModel::interpolation(&r);
    for s in ["+1", "-1", "+1 +1 +1", "-1 +1 -1 -1"] {
        let b = word(2, s);
        assert_eq!(model.closure(&b, DEFAULT_MAX_STATES).unwrap(), closure_by_diagrams(&w, &b, ClosingOrder::RightToLeft).unwrap(), "{s}");
    }
}

#[test]
fn calibration_against_the_trefoil_row() {
    let r = rho("(1 2)", 2, RhoKind::Trivial);
    let res = p_mu_rho(&r, &"torus:2,-3".parse().unwrap(), true, DEFAULT_MAX_STATES).unwrap();
    assert_eq!(res.value, parse_poly("2*t - 3").unwrap());
}

#[test]
fn regular_object_labels_agree_with_diagrams() {
    let mu = CycleType::new(vec![2]).unwrap();
    let v = regular_object(&mu).unwrap();
    let model = LabelModel::regular(&mu).unwrap();
    assert_eq!(model.dimension().unwrap(), v.dimension().unwrap());
    let b = word(2, "+1");
    assert_eq!(model.closure(&b, DEFAULT_MAX_STATES).unwrap(), closure_by_diagrams(&v, &b, ClosingOrder::RightToLeft).unwrap());
}

#[test]
fn labels_agree_with_diagrams_on_three_strands() {
    let r = rho("(1 2)", 2, RhoKind::Sign);
    let w = interpolation_object(&r).unwrap();
    let model = LabelModel::interpolation(&r);
    for s in ["+1 -2", "+1 +2 +1"] {
        let b = word(3, s);
        assert_eq!(model.closure(&b, DEFAULT_MAX_STATES).unwrap(), closure_by_diagrams(&w, &b, ClosingOrder::LeftToRight).unwrap(), "{s}");
    }
}
