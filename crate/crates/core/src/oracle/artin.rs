//! Homomorphism counts by the Artin action of braids on S_n^p.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::link::BraidWord;
use crate::perm::Permutation;

/// Default cap on n!^p.
pub const DEFAULT_MAX_TUPLES: u64 = 10_000_000;

fn decode(code: u64, elements: &[Permutation], p: usize) -> Vec<Permutation> {
    let m = elements.len() as u64;
    let mut c = code;
    (0..p)
        .map(|_| {
            let g = elements[(c % m) as usize].clone();
            c /= m;
            g
        })
        .collect()
}

/// Tuples fixed by the Artin action, each with the left multipliers that
/// strand j picks up: position j ends holding w_j·h_{src_j}.
fn fixed_tuples(n: usize, word: &BraidWord, max_tuples: u64) -> Result<Vec<(Vec<usize>, Vec<Permutation>)>> {
    let elements = Permutation::all(n)?;
    let m = elements.len() as u128;
    let p = word.strands();
    let total = m.checked_pow(p as u32).unwrap_or(u128::MAX);
    if total > max_tuples as u128 {
        return Err(Error::Guard(format!("{m}^{p} tuples exceed the limit {max_tuples}")));
    }
    Ok((0..total as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut tuple = decode(code, &elements, p);
            let start = tuple.clone();
            let mut src: Vec<usize> = (0..p).collect();
            let mut mult = vec![Permutation::identity(n); p];
            for &letter in word.letters() {
                let i = letter.unsigned_abs() as usize - 1;
                let (a, b) = (tuple[i].clone(), tuple[i + 1].clone());
                src.swap(i, i + 1);
                mult.swap(i, i + 1);
                if letter > 0 {
                    // (a, x) ⊗ (b, y) ↦ (aba⁻¹, a·y) ⊗ (a, x)
                    mult[i] = a.compose(&mult[i]);
                    tuple[i] = a.compose(&b).compose(&a.inverse());
                    tuple[i + 1] = a;
                } else {
                    // (a, x) ⊗ (b, y) ↦ (b, y) ⊗ (b⁻¹ab, b⁻¹·x)
                    mult[i + 1] = b.inverse().compose(&mult[i + 1]);
                    tuple[i] = b.clone();
                    tuple[i + 1] = b.inverse().compose(&a).compose(&b);
                }
            }
            (tuple == start).then_some((src, mult))
        })
        .collect())
}

/// Number of (g_1,…,g_p) ∈ S_n^p fixed by the braid, where σ_i sends
/// (…, a, b, …) to (…, aba⁻¹, a, …). This is |Hom(π_1(S³∖L), S_n)|.
pub fn artin_fix_count(n: usize, word: &BraidWord, max_tuples: u64) -> Result<u64> {
    Ok(fixed_tuples(n, word, max_tuples)?.len() as u64)
}

/// Closure of the braid on the regular Drinfeld-double module 𝕜[S_n × S_n],
/// where b·(g, h) = (bgb⁻¹, bh) and (g, h) has degree g.
///
/// The basis is permuted, so the trace counts fixed pairs of tuples: each
/// Artin-fixed tuple contributes n! per cycle of the strand permutation
/// along which the collected multipliers compose to 1.
pub fn regular_fix_count(n: usize, word: &BraidWord, max_tuples: u64) -> Result<u64> {
    let order: u64 = (1..=n as u64).product();
    let fixed = fixed_tuples(n, word, max_tuples)?;
    Ok(fixed
        .into_par_iter()
        .map(|(src, mult)| {
            let p = src.len();
            let mut seen = vec![false; p];
            let mut weight = 1u64;
            for j in 0..p {
                if seen[j] {
                    continue;
                }
                // h_j = w_j h_{src j}; going around the cycle must return h_j.
                let mut acc = Permutation::identity(n);
                let mut k = j;
                while !seen[k] {
                    seen[k] = true;
                    acc = acc.compose(&mult[k]);
                    k = src[k];
                }
                if !acc.is_identity() {
                    return 0;
                }
                weight *= order;
            }
            weight
        })
        .sum())
}
