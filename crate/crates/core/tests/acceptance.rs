//! One line per acceptance criterion.
//!
//! A criterion that does not hold prints FAIL with the reason. Where the
//! failure is a known discrepancy in the reference data, the test pins the
//! independently confirmed values instead of passing silently.

use std::time::Instant;

use deligne::descriptor::ObjectDescriptor;
use deligne::link::{p_n, torus_braid, LinkSpec, DEFAULT_MAX_STATES};
use deligne::oracle::{artin_fix_count, regular_fix_count, DEFAULT_MAX_TUPLES};
use deligne::perm::CycleType;
use deligne::rho::RhoKind;
use deligne::ring::{parse_poly, Cyclotomic};
use deligne::tables::{reproduce, TableId};
use deligne::verify::{default_oracle_links, run, Check, Suite, SuiteConfig};

struct Line {
    index: usize,
    title: &'static str,
    passed: bool,
    summary: String,
}

impl Line {
    fn print(&self, elapsed: std::time::Duration) {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{verdict}] {} ({:.1}s): {}", self.index, self.title, elapsed.as_secs_f64(), self.summary);
    }
}

fn from_checks(index: usize, title: &'static str, checks: &[Check]) -> Line {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect();
    let summary = if failed.is_empty() {
        format!("{}/{} checks exact", checks.len(), checks.len())
    } else {
        format!("{} of {} checks fail: {}", failed.len(), checks.len(), failed.join("; "))
    };
    Line { index, title, passed: failed.is_empty(), summary }
}

fn suite(s: Suite, n: usize) -> Vec<Check> {
    run(s, &SuiteConfig::new(n)).unwrap().checks
}

fn table_line(index: usize, title: &'static str, table: TableId) -> (Line, Vec<deligne::tables::CellOutcome>) {
    let outcomes = reproduce(table, DEFAULT_MAX_STATES).unwrap();
    let bad: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.matches())
        .map(|o| format!("{} {} on {}: computed {}, printed {}", o.cell.mu, o.cell.rho_label, o.cell.link, o.computed, o.expected))
        .collect();
    let matched = outcomes.len() - bad.len();
    let summary = if bad.is_empty() {
        format!("{matched}/{} cells exact", outcomes.len())
    } else {
        format!("{matched}/{} cells exact; {}", outcomes.len(), bad.join("; "))
    };
    (Line { index, title, passed: bad.is_empty(), summary }, outcomes)
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Line| {
        let start = Instant::now();
        let line = f();
        line.print(start.elapsed());
        lines.push(line);
    };

    timed(&mut || table_line(1, "2-cycle table", TableId::TwoCycle).0);
    timed(&mut || table_line(2, "3-cycle table over Q(ζ_3)", TableId::ThreeCycle).0);
    timed(&mut || {
        let (line, outcomes) = table_line(3, "trefoil table", TableId::Trefoil);
        // Two printed cells disagree with every independent evaluation; pin
        // the confirmed values so a regression still fails the test.
        for o in &outcomes {
            match o.cell.mu.parts() {
                [4] => assert_eq!(o.computed, parse_poly("2*t^2 - 18*t + 45").unwrap()),
                [2, 2] => assert_eq!(o.computed, parse_poly("4*t^2 - 32*t + 65").unwrap()),
                _ => assert!(o.matches(), "{} should match the printed value", o.cell.mu),
            }
        }
        let trefoil = torus_braid(2, -3).unwrap();
        for parts in [vec![4], vec![2, 2]] {
            let d = ObjectDescriptor::interpolation(CycleType::new(parts).unwrap(), RhoKind::Trivial);
            let poly = d.invariant(&LinkSpec::Torus { p: 2, q: -3 }, false, DEFAULT_MAX_STATES).unwrap().value;
            for big in 4..=6 {
                let module = d.crossed_module(big).unwrap();
                let finite = deligne::oracle::finite_invariant(&module, &trefoil, 10_000_000).unwrap();
                assert_eq!(finite, poly.eval_int(big as i64), "{d} at N = {big}");
            }
        }
        Line {
            summary: format!("{}; the crossed S_N-module oracle confirms the computed values at N = 4, 5, 6", line.summary),
            ..line
        }
    });
    timed(&mut || from_checks(4, "triviality facts", &suite(Suite::Triviality, 3)));
    timed(&mut || {
        let dims = suite(Suite::Dims, 5);
        let closed: Vec<Check> = dims.into_iter().filter(|c| !c.name.starts_with('Σ')).collect();
        from_checks(5, "closed-form traces and dimensions", &closed)
    });
    timed(&mut || {
        let mut checks = Vec::new();
        for s in [Suite::Naturality, Suite::Twist, Suite::Dual] {
            checks.extend(suite(s, 4));
        }
        from_checks(6, "center-structure properties", &checks)
    });
    timed(&mut || {
        // Per-object agreement and P_n against the regular-module count.
        let oracles = suite(Suite::Oracles, 3);
        let per_object: Vec<&Check> = oracles.iter().filter(|c| c.name.starts_with('W')).collect();
        assert!(oracles.iter().all(|c| c.passed), "oracle suite");
        // The literal statement compares P_n(L)(n) with |Hom(π_1, S_n)|.
        let mut agree = 0;
        let mut differ = Vec::new();
        for n in 2..=3usize {
            for link in default_oracle_links() {
                let word = link.braid().unwrap();
                let poly = p_n(n, &link, false, DEFAULT_MAX_STATES).unwrap().value.eval_int(n as i64);
                let hom = artin_fix_count(n, &word, DEFAULT_MAX_TUPLES).unwrap();
                let regular = regular_fix_count(n, &word, DEFAULT_MAX_TUPLES).unwrap();
                assert_eq!(poly, Cyclotomic::from_int(regular as i64));
                if poly == Cyclotomic::from_int(hom as i64) {
                    agree += 1;
                } else {
                    differ.push(format!("n={n} {link}: P_n gives {poly}, Hom count {hom}"));
                }
            }
        }
        let total = agree + differ.len();
        let summary = format!(
            "{}/{} per-object values equal the crossed-module oracle; P_n(L)(n) equals the Hom count in {agree}/{total} cases ({}); \
             P_n(L)(n) equals the regular Drinfeld-double module count in {total}/{total}",
            per_object.iter().filter(|c| c.passed).count(),
            per_object.len(),
            differ.join("; ")
        );
        Line { index: 7, title: "finite oracle agreement", passed: differ.is_empty(), summary }
    });
    timed(&mut || {
        let dims = suite(Suite::Dims, 4);
        let regular: Vec<Check> = dims.into_iter().filter(|c| c.name.starts_with('Σ')).collect();
        assert_eq!(regular.len(), 4);
        from_checks(8, "regular-object dimension identity", &regular)
    });
    timed(&mut || from_checks(9, "functor consistency", &suite(Suite::Functor, 3)));
    timed(&mut || from_checks(10, "braid-word invariance", &suite(Suite::Braids, 3)));

    let failing: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.index).collect();
    println!("{} of {} criteria pass; failing: {failing:?}", lines.len() - failing.len(), lines.len());
    // 3 fails on two printed cells and 7 on the Hom-count claim; the rest must hold.
    assert_eq!(failing, vec![3, 7]);
}
