use super::*;
use crate::link::{torus_braid, LabelModel, DEFAULT_MAX_STATES};
use crate::perm::{CycleType, Permutation};
use crate::rho::{make_rho, RhoKind, RhoMap};

fn simple(parts: &[usize], kind: RhoKind) -> (RhoMap, CrossedModule) {
    let mu = CycleType::new(parts.to_vec()).unwrap();
    let rho = make_rho(&kind, &mu.representative()).unwrap();
    let m = CrossedModule::simple(&mu, &rho).unwrap();
    (rho, m)
}

#[test]
fn simple_module_dimensions_and_grades() {
    let (_, id) = simple(&[1, 1, 1], RhoKind::Trivial);
    assert_eq!(id.dim(), 1);
    assert!(id.grades()[0].is_identity());
    let (_, s2) = simple(&[2], RhoKind::Trivial);
    assert_eq!(s2.dim(), 1);
    assert_eq!(s2.grades()[0], Permutation::parse_cycles("(1 2)", 2).unwrap());
    let (_, t3) = simple(&[2, 1], RhoKind::Trivial);
    assert_eq!(t3.dim(), 3);
    let mut grades: Vec<_> = t3.grades().to_vec();
    grades.sort();
    grades.dedup();
    assert_eq!(grades.len(), 3);
    assert!(grades.iter().all(|g| g.cycle_type() == CycleType::new(vec![2, 1]).unwrap()));
}

#[test]
fn modules_satisfy_the_crossed_axioms() {
    for n in 1..=3 {
        for mu in CycleType::all(n) {
            let rho = make_rho(&RhoKind::Trivial, &mu.representative()).unwrap();
            let m = CrossedModule::simple(&mu, &rho).unwrap();
            assert!(m.is_crossed_module(), "{mu}");
            assert!(m.dual().is_crossed_module(), "{mu}");
            assert!(m.duality_is_equivariant(), "{mu}");
        }
    }
    let (_, m) = simple(&[3], RhoKind::CyclicPower(1));
    assert!(m.is_crossed_module() && m.duality_is_equivariant());
}

#[test]
fn unknot_gives_the_dimension() {
    let (_, m) = simple(&[2, 1], RhoKind::Trivial);
    assert_eq!(finite_invariant(&m, &BraidWord::empty(1).unwrap(), 1000).unwrap(), crate::ring::Cyclotomic::from_int(3));
    let sum = CrossedModule::direct_sum(&[m.clone(), m]).unwrap();
    assert_eq!(sum.dim(), 6);
    assert!(CrossedModule::direct_sum(&[]).is_err());
}

#[test]
fn non_multiplicative_maps_are_rejected() {
    // 2δ_e satisfies the convolution identity but is no representation.
    let sigma = Permutation::parse_cycles("(1 2)", 2).unwrap();
    let m = |x| crate::ring::CycMatrix::from_rows(vec![vec![crate::ring::Cyclotomic::from_int(x)]]).unwrap();
    let rho = RhoMap::new(sigma.clone(), vec![(Permutation::identity(2), m(2)), (sigma, m(0))]).unwrap();
    assert!(!rho.is_multiplicative());
    assert!(CrossedModule::induced(2, &rho).is_err());
}

#[test]
fn artin_counts() {
    for n in 1..=4 {
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(artin_fix_count(n, &BraidWord::empty(1).unwrap(), DEFAULT_MAX_TUPLES).unwrap(), fact);
    }
    let hopf = BraidWord::new(2, vec![-1, -1]).unwrap();
    assert_eq!(artin_fix_count(2, &hopf, DEFAULT_MAX_TUPLES).unwrap(), 4);
    // Commuting pairs in S_3: Σ over classes of |C|·|Z| = 3·6.
    assert_eq!(artin_fix_count(3, &hopf, DEFAULT_MAX_TUPLES).unwrap(), 18);
    // Pairs satisfying the trefoil relation aba = bab, counted directly.
    let trefoil = torus_braid(2, -3).unwrap();
    let direct = (0..6usize)
        .flat_map(|a| (0..6usize).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let all = Permutation::all(3).unwrap();
            let (a, b) = (&all[a], &all[b]);
            a.compose(b).compose(a) == b.compose(a).compose(b)
        })
        .count() as u64;
    assert_eq!(artin_fix_count(3, &trefoil, DEFAULT_MAX_TUPLES).unwrap(), direct);
    assert!(artin_fix_count(5, &torus_braid(5, -1).unwrap(), 1000).is_err());
}

#[test]
fn artin_counts_survive_braid_relations() {
    let pairs = [("+1 +2 +1", "+2 +1 +2"), ("-1 +2 -1 +2", "+2 -1 +2 -1"), ("+1 -1 +2 +2", "+2 +2")];
    for (a, b) in pairs {
        let (a, b) = (BraidWord::parse(3, a).unwrap(), BraidWord::parse(3, b).unwrap());
        for n in 2..=3 {
            assert_eq!(artin_fix_count(n, &a, DEFAULT_MAX_TUPLES).unwrap(), artin_fix_count(n, &b, DEFAULT_MAX_TUPLES).unwrap());
        }
    }
}

#[test]
fn labels_match_induced_modules_above_n() {
    // The image of W_{σ,ρ} at t = N > n is induced from Z(σ) × S_{N−n}.
    let links = [torus_braid(2, -2).unwrap(), torus_braid(2, -3).unwrap(), torus_braid(3, -2).unwrap()];
    for (parts, kind) in [(vec![2], RhoKind::Sign), (vec![3], RhoKind::CyclicPower(1)), (vec![2, 1], RhoKind::Trivial)] {
        let mu = CycleType::new(parts).unwrap();
        let rho = make_rho(&kind, &mu.representative()).unwrap();
        let model = LabelModel::interpolation(&rho);
        for b in &links {
            let poly = model.closure(b, DEFAULT_MAX_STATES).unwrap();
            for big in mu.size()..=5 {
                let m = CrossedModule::induced(big, &rho).unwrap();
                assert_eq!(finite_invariant(&m, b, 10_000_000).unwrap(), poly.eval_int(big as i64), "{mu} {b} N={big}");
            }
        }
    }
}

#[test]
fn regular_module_counts() {
    // The unknot gives dim 𝕜[S_n × S_n] = (n!)².
    for n in 1..=4 {
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(regular_fix_count(n, &BraidWord::empty(1).unwrap(), DEFAULT_MAX_TUPLES).unwrap(), fact * fact);
    }
    // Brute force over explicit pairs on two strands.
    let all = Permutation::all(3).unwrap();
    for s in ["+1", "-1", "+1 +1", "-1 -1 -1", "+1 +1 +1"] {
        let b = BraidWord::parse(2, s).unwrap();
        let mut direct = 0;
        for g in &all {
            for h in &all {
                for g2 in &all {
                    for h2 in &all {
                        let mut x = [(g.clone(), h.clone()), (g2.clone(), h2.clone())];
                        for &l in b.letters() {
                            let [(a, ha), (c, hc)] = x.clone();
                            x = if l > 0 {
                                [(a.compose(&c).compose(&a.inverse()), a.compose(&hc)), (a, ha)]
                            } else {
                                [(c.clone(), hc), (c.inverse().compose(&a).compose(&c), c.inverse().compose(&ha))]
                            };
                        }
                        direct += (x == [(g.clone(), h.clone()), (g2.clone(), h2.clone())]) as u64;
                    }
                }
            }
        }
        assert_eq!(regular_fix_count(3, &b, DEFAULT_MAX_TUPLES).unwrap(), direct, "{s}");
    }
}

#[test]
fn regular_sum_matches_the_regular_module_count() {
    for n in 2..=3 {
        for link in ["unknot", "torus:2,-2", "torus:2,2", "torus:2,-3", "torus:2,3"] {
            let link: crate::link::LinkSpec = link.parse().unwrap();
            let b = link.braid().unwrap();
            let poly = crate::link::p_n(n, &link, false, DEFAULT_MAX_STATES).unwrap().value;
            let count = regular_fix_count(n, &b, DEFAULT_MAX_TUPLES).unwrap();
            assert_eq!(poly.eval_int(n as i64), crate::ring::Cyclotomic::from_int(count as i64), "{link} n={n}");
        }
    }
}
