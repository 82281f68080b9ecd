//! Named property suites with a pass/fail line per check.
//!
//! Objects are exhaustive over σ ∈ S_m for m ≤ 3 and one representative per
//! cycle type above that.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::center::{
    annihilation_holds, build_e_mu, d2, diagrammatic_dual_d1, explicit_d2, interpolation_object, twist, twist_closed_form,
    verify_naturality, Block, CenterObject, TwistSide,
};
use crate::diagram::{functor_matrix, OrbitDiagram, PartitionDiagram};
use crate::error::{Error, Result};
use crate::link::{p_mu_rho, p_n, BraidWord, LabelModel, LinkSpec};
use crate::oracle::{finite_invariant, regular_fix_count, CrossedModule, DEFAULT_MAX_TUPLES};
use crate::partition::SetPartition;
use crate::perm::{CycleType, Permutation};
use crate::rho::{make_rho, RhoKind, RhoMap};
use crate::ring::{rational, CycMatrix, CycPoly, Cyclotomic};

/// Largest n the center suites accept.
pub const MAX_SUITE_DEGREE: usize = 4;
const EXHAUSTIVE_DEGREE: usize = 3;
/// Tensor-power bound for the finite oracle inside the oracle suite.
const ORACLE_MAX_STATES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Naturality,
    Twist,
    Dual,
    Dims,
    Functor,
    Oracles,
    Braids,
    Triviality,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Naturality,
        Suite::Twist,
        Suite::Dual,
        Suite::Dims,
        Suite::Functor,
        Suite::Oracles,
        Suite::Braids,
        Suite::Triviality,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Naturality => "naturality",
            Suite::Twist => "twist",
            Suite::Dual => "dual",
            Suite::Dims => "dims",
            Suite::Functor => "functor",
            Suite::Oracles => "oracles",
            Suite::Braids => "braids",
            Suite::Triviality => "triviality",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::ALL.map(|s| s.to_string()).join(", "))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample or computed values when the check fails.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) -> Self {
        let detail = if passed { String::new() } else { detail() };
        Check { name: name.into(), passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest degree exercised.
    pub n: usize,
    /// Links for the oracle suite.
    pub links: Vec<LinkSpec>,
    pub max_states: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(n: usize) -> Self {
        SuiteConfig { n, links: default_oracle_links(), max_states: crate::link::DEFAULT_MAX_STATES, seed: 0x5eed }
    }
}

/// Unknot, T_{2,±2} and T_{2,±3}.
pub fn default_oracle_links() -> Vec<LinkSpec> {
    let mut links = vec![LinkSpec::unknot()];
    for q in [-2, 2, -3, 3] {
        links.push(LinkSpec::Torus { p: 2, q });
    }
    links
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    if config.n == 0 {
        return Err(Error::OutOfRange("suites need n ≥ 1".into()));
    }
    let checks = match suite {
        Suite::Naturality => naturality(config)?,
        Suite::Twist => twists(config)?,
        Suite::Dual => duals(config)?,
        Suite::Dims => dims(config)?,
        Suite::Functor => functor(config)?,
        Suite::Oracles => oracles(config)?,
        Suite::Braids => braids(config)?,
        Suite::Triviality => triviality(config)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Trivial, sign and every cyclic character that applies to σ.
pub fn builtin_rhos(sigma: &Permutation) -> Result<Vec<(String, RhoMap)>> {
    let mut out = vec![("trivial".to_string(), make_rho(&RhoKind::Trivial, sigma)?), ("sign".to_string(), make_rho(&RhoKind::Sign, sigma)?)];
    for a in 1..sigma.order() as i64 {
        if let Ok(r) = make_rho(&RhoKind::CyclicPower(a), sigma) {
            out.push((format!("cyclic:{a}"), r));
        }
    }
    Ok(out)
}

fn sigmas(m: usize) -> Result<Vec<Permutation>> {
    if m <= EXHAUSTIVE_DEGREE {
        Permutation::all(m)
    } else {
        Ok(CycleType::all(m).iter().map(CycleType::representative).collect())
    }
}

fn guard_degree(n: usize) -> Result<()> {
    if n > MAX_SUITE_DEGREE {
        return Err(Error::Guard(format!("center suites stop at n = {MAX_SUITE_DEGREE}")));
    }
    Ok(())
}

/// Every (label, W_{σ,ρ}) with σ ∈ S_m, m ≤ n.
fn objects(n: usize) -> Result<Vec<(String, CenterObject)>> {
    guard_degree(n)?;
    let mut specs = Vec::new();
    for m in 1..=n {
        for sigma in sigmas(m)? {
            for (label, rho) in builtin_rhos(&sigma)? {
                specs.push((format!("W[sigma={sigma}; n={m}; rho={label}]"), rho));
            }
        }
    }
    specs.into_par_iter().map(|(label, rho)| Ok((label, interpolation_object(&rho)?))).collect()
}

fn naturality(config: &SuiteConfig) -> Result<Vec<Check>> {
    let per_object: Vec<Vec<Check>> = objects(config.n)?
        .into_par_iter()
        .map(|(label, w)| {
            let e = w.idempotent();
            let report = verify_naturality(&w)?;
            let sigma = w_sigma(&w)?;
            let k = w.multiplicity();
            let explicit = Block::from_matrix(&explicit_d2(&sigma).convert()?, &CycMatrix::identity(k));
            let e2 = e.tensor(&Block::identity(2, 1));
            let two = d2(&w)?;
            Ok(vec![
                Check::new(format!("{label}: e² = e"), e.compose(e)? == *e, String::new),
                Check::new(format!("{label}: d1 fixes the unit"), report.unit, String::new),
                Check::new(format!("{label}: d1 fixes the counit"), report.counit, String::new),
                Check::new(format!("{label}: d2 commutes with the swap"), report.swap, String::new),
                Check::new(format!("{label}: d2 commutes with the merge"), report.merge, String::new),
                Check::new(format!("{label}: d1 commutes with e⊗1"), report.restricted, String::new),
                Check::new(format!("{label}: seed of σ⁻¹ inverts d1"), report.inverse, String::new),
                Check::new(
                    format!("{label}: d2 equals its explicit expansion"),
                    explicit.compose(&e2)? == two && e2.compose(&explicit)? == two,
                    || format!("d2 has {} terms", two.term_count()),
                ),
                Check::new(format!("{label}: off-diagonal hops vanish against the merge"), annihilation_holds(&w)?, String::new),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_object.into_iter().flatten().collect())
}

fn w_sigma(w: &CenterObject) -> Result<Permutation> {
    match w.provenance() {
        crate::center::Provenance::Interpolation { sigma, .. } => Ok(sigma.clone()),
        _ => Err(Error::Provenance("an interpolation object".into())),
    }
}

fn twists(config: &SuiteConfig) -> Result<Vec<Check>> {
    // Above the exhaustive range σ = 1 is skipped: its half-braiding is the
    // symmetry, and W⊗W already has 10⁵ orbit terms at n = 4.
    objects(config.n)?
        .into_par_iter()
        .filter(|(_, w)| w.width() <= EXHAUSTIVE_DEGREE || w_sigma(w).is_ok_and(|s| !s.is_identity()))
        .map(|(label, w)| {
            let closed = twist_closed_form(&w)?;
            let left = twist(&w, TwistSide::Left)?;
            let right = twist(&w, TwistSide::Right)?;
            Ok(Check::new(format!("{label}: left twist = right twist = σ⁻¹e"), left == closed && right == closed, || {
                format!("left matches: {}, right matches: {}", left == closed, right == closed)
            }))
        })
        .collect()
}

fn duals(config: &SuiteConfig) -> Result<Vec<Check>> {
    let per_object: Vec<Vec<Check>> = objects(config.n)?
        .into_par_iter()
        .map(|(label, w)| {
            let crate::center::Provenance::Interpolation { rho, .. } = w.provenance() else { unreachable!("interpolation") };
            let star = rho.dual();
            let transposed = rho.group().iter().all(|z| {
                star.value(z).cloned() == rho.value(&z.inverse()).map(CycMatrix::transpose)
            });
            let dual = w.dual()?;
            Ok(vec![
                Check::new(format!("{label}: ρ*(z) = ρ(z⁻¹)ᵗ on σ⁻¹"), transposed && *star.sigma() == rho.sigma().inverse(), String::new),
                Check::new(format!("{label}: dual idempotent is the transpose"), *dual.idempotent() == w.idempotent().dual(), String::new),
                Check::new(format!("{label}: dual half-braiding from ev/coev"), diagrammatic_dual_d1(&w)? == *dual.d1(), String::new),
                Check::new(format!("{label}: double dual is the object"), dual.dual()? == w, String::new),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_object.into_iter().flatten().collect())
}

fn dims(config: &SuiteConfig) -> Result<Vec<Check>> {
    let n = config.n;
    let mut checks = Vec::new();
    // tr(x_g) = δ_{g,1}(t)_m: exhaustive for m ≤ 4, every seventh element of S_5.
    for m in 1..=n.min(5) {
        let step = if m <= 4 { 1 } else { 7 };
        let group = Permutation::all(m)?;
        let bad: Vec<String> = group
            .par_iter()
            .step_by(step)
            .filter_map(|g| {
                let tr = OrbitDiagram::basis_element(SetPartition::permutation(g)).trace().ok()?;
                let expected = if g.is_identity() { CycPoly::falling(0, m as u32) } else { CycPoly::zero() };
                (tr != expected).then(|| format!("{g}: {tr}"))
            })
            .collect();
        checks.push(Check::new(format!("tr(x_g) = δ_(g,1)(t)_{m} on S_{m}"), bad.is_empty(), || bad.join("; ")));
    }
    for m in 1..=n.min(MAX_SUITE_DEGREE) {
        for mu in CycleType::all(m) {
            let sigma = mu.representative();
            for (label, rho) in builtin_rhos(&sigma)? {
                let computed = LabelModel::interpolation(&rho).dimension()?;
                let closed = CycPoly::falling(0, m as u32).scale(&rho.trace_at_identity()).scale_rational(&rational(1, rho.order() as i64));
                let diagrammatic = crate::center::build_e_rho(&rho)?.trace()?;
                checks.push(Check::new(
                    format!("dim W[mu={mu}; rho={label}] = (t)_{m}·tr ρ(1)/|Z|"),
                    computed == closed && diagrammatic == closed,
                    || format!("labels {computed}, diagrams {diagrammatic}, closed form {closed}"),
                ));
            }
        }
    }
    for m in 0..=6 {
        let d = OrbitDiagram::identity(m).trace()?;
        checks.push(Check::new(format!("dim [{m}] = t^{m}"), d == CycPoly::t_pow(m as u32), || d.to_string()));
    }
    for m in 1..=n.min(MAX_SUITE_DEGREE) {
        let mut total = Cyclotomic::from_int(0);
        for mu in CycleType::all(m) {
            total += &build_e_mu(&mu)?.trace()?.eval_int(m as i64);
        }
        let fact: i64 = (1..=m as i64).product();
        let ok = total == Cyclotomic::from_int(fact * fact);
        checks.push(Check::new(format!("Σ dim V^μ at t = {m} is ({m}!)²"), ok, || total.to_string()));
    }
    Ok(checks)
}

fn random_diagram(rng: &mut ChaCha8Rng, upper: usize, lower: usize) -> Result<PartitionDiagram> {
    let all = SetPartition::all(upper, lower);
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| (all[rng.gen_range(0..all.len())].clone(), CycPoly::from_int(rng.gen_range(-3..=3))))
        .collect::<Vec<_>>();
    PartitionDiagram::from_terms(upper, lower, terms)
}

fn functor(config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let top = config.n.min(EXHAUSTIVE_DEGREE);
    let mut bad = Vec::new();
    const PAIRS: usize = 50;
    for i in 0..PAIRS {
        let n = rng.gen_range(1..=top);
        let (a, b, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let f = random_diagram(&mut rng, a, b)?;
        let g = random_diagram(&mut rng, b, c)?;
        let lhs = functor_matrix(n, &g.compose(&f)?)?;
        let rhs = functor_matrix(n, &g)?.mul(&functor_matrix(n, &f)?)?;
        if lhs != rhs {
            bad.push(format!("pair {i}: n={n}, widths {a}→{b}→{c}"));
        }
    }
    let mut checks = vec![Check::new(format!("F_n(g∘f) = F_n(g)F_n(f) on {PAIRS} random pairs"), bad.is_empty(), || bad.join("; "))];
    for m in 1..=top {
        for mu in CycleType::all(m) {
            for (label, rho) in builtin_rhos(&mu.representative())? {
                let w = interpolation_object(&rho)?;
                let image = crate::diagram::functor_block(m, w.idempotent())?;
                let fact: usize = (1..=m).product();
                let expected = fact / rho.order() * rho.dim();
                let rank = image.rank();
                checks.push(Check::new(
                    format!("F_{m}(e) for W[mu={mu}; rho={label}] is an idempotent of rank {expected}"),
                    rank == expected && image.mul(&image)? == image,
                    || format!("rank {rank}"),
                ));
            }
        }
    }
    Ok(checks)
}

/// One-dimensional built-in characters that are genuine representations.
fn oracle_rhos(sigma: &Permutation) -> Result<Vec<(String, RhoMap)>> {
    Ok(builtin_rhos(sigma)?.into_iter().filter(|(_, r)| r.dim() == 1 && r.is_multiplicative()).collect())
}

fn oracles(config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut jobs = Vec::new();
    for m in 2..=config.n.max(2) {
        for link in &config.links {
            jobs.push((m, None, link.clone()));
            for mu in CycleType::all(m) {
                for (label, rho) in oracle_rhos(&mu.representative())? {
                    jobs.push((m, Some((format!("W[mu={mu}; rho={label}]"), rho)), link.clone()));
                }
            }
        }
    }
    jobs.into_par_iter()
        .map(|(m, object, link)| {
            let word = link.braid()?;
            match object {
                None => {
                    let poly = p_n(m, &link, false, config.max_states)?.value.eval_int(m as i64);
                    let count = Cyclotomic::from_int(regular_fix_count(m, &word, DEFAULT_MAX_TUPLES)? as i64);
                    Ok(Check::new(format!("P_{m}({link}) at t = {m} equals the regular-module count"), poly == count, || {
                        format!("polynomial gives {poly}, count is {count}")
                    }))
                }
                Some((label, rho)) => {
                    let poly = p_mu_rho(&rho, &link, false, config.max_states)?.value.eval_int(m as i64);
                    let module = CrossedModule::induced(m, &rho)?;
                    let finite = finite_invariant(&module, &word, ORACLE_MAX_STATES)?;
                    Ok(Check::new(format!("{label} on {link} at t = {m} equals the crossed-module value"), poly == finite, || {
                        format!("polynomial gives {poly}, oracle gives {finite}")
                    }))
                }
            }
        })
        .collect()
}

fn word(p: usize, s: &str) -> BraidWord {
    BraidWord::parse(p, s).expect("well-formed literal")
}

fn braids(config: &SuiteConfig) -> Result<Vec<Check>> {
    let sign = make_rho(&RhoKind::Sign, &Permutation::parse_cycles("(1 2)", 2)?)?;
    let triv = make_rho(&RhoKind::Trivial, &Permutation::parse_cycles("(1 2)", 2)?)?;
    let mut objects = vec![("W[mu=(2); rho=sign]", sign.clone(), -1), ("W[mu=(2); rho=trivial]", triv, 1)];
    if config.n >= 3 {
        let chi = make_rho(&RhoKind::CyclicPower(1), &Permutation::parse_cycles("(1 2 3)", 3)?)?;
        objects.push(("W[mu=(3); rho=cyclic:1]", chi, 0));
    }
    let letters = [1, -1, 2, -2];
    let mut contexts = vec![vec![]];
    for &a in &letters {
        contexts.push(vec![a]);
        for &b in &letters {
            contexts.push(vec![a, b]);
        }
    }
    // Every sign pattern of the braid relation.
    let relations: Vec<(Vec<i32>, Vec<i32>)> = vec![
        (vec![1, 2, 1], vec![2, 1, 2]),
        (vec![-1, -2, -1], vec![-2, -1, -2]),
        (vec![1, 2, -1], vec![-2, 1, 2]),
        (vec![-1, 2, 1], vec![2, 1, -2]),
        (vec![1, -2, -1], vec![-2, -1, 2]),
        (vec![-1, -2, 1], vec![2, -1, -2]),
    ];
    let mut checks = Vec::new();
    for (label, rho, eigen) in &objects {
        let model = LabelModel::interpolation(rho);
        let close = |w: &BraidWord| model.closure(w, config.max_states);
        let mut bad = Vec::new();
        for (l, r) in &relations {
            for pre in &contexts {
                for post in [vec![], vec![1], vec![-2]] {
                    let lw = BraidWord::new(3, [pre.clone(), l.clone(), post.clone()].concat())?;
                    let rw = BraidWord::new(3, [pre.clone(), r.clone(), post.clone()].concat())?;
                    if close(&lw)? != close(&rw)? {
                        bad.push(format!("{lw} vs {rw}"));
                    }
                }
            }
        }
        checks.push(Check::new(format!("{label}: braid relations in all 3-strand contexts"), bad.is_empty(), || bad.join("; ")));

        let far = [(word(4, "+1 +3 -2"), word(4, "+3 +1 -2")), (word(4, "-1 +3 +2 +2"), word(4, "+3 -1 +2 +2")), (word(4, "+1 -3"), word(4, "-3 +1"))];
        let far_ok = far.iter().map(|(a, b)| Ok(close(a)? == close(b)?)).collect::<Result<Vec<_>>>()?;
        checks.push(Check::new(format!("{label}: far generators commute"), far_ok.iter().all(|&x| x), || format!("{far_ok:?}")));

        let base = word(3, "+1 -2 +1 +1");
        let reference = close(&base)?;
        let mut bad = Vec::new();
        for at in 0..=base.len() {
            for i in [1, 2] {
                for pair in [[i, -i], [-i, i]] {
                    let w = base.insert(at, &pair)?;
                    if close(&w)? != reference {
                        bad.push(w.to_string());
                    }
                }
            }
        }
        checks.push(Check::new(format!("{label}: inserting a generator and its inverse"), bad.is_empty(), || bad.join("; ")));

        let conj = [base.then(&word(3, "+2"))?, word(3, "+2").then(&base)?];
        checks.push(Check::new(format!("{label}: conjugate words close to the same link"), close(&conj[0])? == close(&conj[1])?, String::new));

        if *eigen != 0 {
            let theta = CycPoly::from_int(*eigen);
            let mut bad = Vec::new();
            for w in [word(1, ""), word(2, "+1"), word(2, "-1 -1 -1"), word(3, "+1 -2")] {
                let before = close(&w)?;
                for positive in [true, false] {
                    let after = close(&w.stabilize(positive))?;
                    // A kink of either sign contributes θ^{±1}; both equal ±1 here.
                    if after != &before * &theta {
                        bad.push(format!("{w} stabilized {}", if positive { "+" } else { "-" }));
                    }
                }
            }
            checks.push(Check::new(format!("{label}: a kink multiplies by θ = {eigen}"), bad.is_empty(), || bad.join("; ")));
        }
    }
    Ok(checks)
}

fn triviality(config: &SuiteConfig) -> Result<Vec<Check>> {
    let t2 = make_rho(&RhoKind::Trivial, &Permutation::parse_cycles("(1 2)", 2)?)?;
    let t3 = make_rho(&RhoKind::Trivial, &Permutation::parse_cycles("(1 2 3)", 3)?)?;
    let value = |rho: &RhoMap, p: usize, q: i64| -> Result<CycPoly> {
        Ok(p_mu_rho(rho, &LinkSpec::Torus { p, q }, false, config.max_states)?.value)
    };
    let dim2 = LabelModel::interpolation(&t2).dimension()?;
    let dim3 = LabelModel::interpolation(&t3).dimension()?;
    let cases: Vec<(&str, CycPoly, CycPoly)> = vec![
        ("P_(2),triv(T_{2,-5}) = dim", value(&t2, 2, -5)?, dim2.clone()),
        ("P_(2),triv(T_{2,-7}) = dim", value(&t2, 2, -7)?, dim2),
        ("P_(3),triv(T_{2,-7}) = dim", value(&t3, 2, -7)?, dim3),
        ("P_(2),triv(T_{2,-9}) = P_(2),triv(T_{2,-3})", value(&t2, 2, -9)?, value(&t2, 2, -3)?),
        ("P_(3),triv(T_{2,-9}) = P_(3),triv(T_{2,-3})", value(&t3, 2, -9)?, value(&t3, 2, -3)?),
        ("P_(2),triv(T_{3,-10}) = P_(2),triv(T_{2,-3})", value(&t2, 3, -10)?, value(&t2, 2, -3)?),
    ];
    Ok(cases
        .into_iter()
        .map(|(name, a, b)| {
            let ok = a == b;
            Check::new(name, ok, || format!("{a} vs {b}"))
        })
        .collect())
}
