//! Structure constants of the orbit basis x_λ.
//!
//! Under the functor to S_n-modules, x_λ has matrix entry 1 exactly when the
//! equality pattern of the (input, output) index tuple is λ. Every product
//! below is a count of intermediate index tuples realizing two exact patterns
//! at once, which is a falling factorial (t − b)_c in the number of free labels.

use smallvec::SmallVec;

use super::Weight;
use crate::partition::{normalize, pattern, Labels, SetPartition};

const NONE: u8 = u8::MAX;

/// Calls `f` on every partial injective map from `0..from` into `0..to`
/// (`NONE` marks an unmatched source).
fn for_each_partial_injection(from: usize, to: usize, f: &mut dyn FnMut(&[u8])) {
    fn rec(i: usize, to: usize, used: &mut [bool], cur: &mut SmallVec<[u8; 16]>, f: &mut dyn FnMut(&[u8])) {
        if i == cur.len() {
            f(cur);
            return;
        }
        cur[i] = NONE;
        rec(i + 1, to, used, cur, f);
        for v in 0..to {
            if !used[v] {
                used[v] = true;
                cur[i] = v as u8;
                rec(i + 1, to, used, cur, f);
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; to];
    let mut cur: SmallVec<[u8; 16]> = SmallVec::from_elem(NONE, from);
    rec(0, to, &mut used, &mut cur, f);
}

fn block_flags(labels: &[u8], blocks: usize) -> SmallVec<[bool; 32]> {
    let mut seen: SmallVec<[bool; 32]> = SmallVec::from_elem(false, blocks);
    for &l in labels {
        seen[l as usize] = true;
    }
    seen
}

/// x_β ∘ x_α.
pub(super) fn compose(beta: &SetPartition, alpha: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
    let mid_a = pattern(alpha.lower_labels());
    if mid_a.as_slice() != pattern(beta.upper_labels()).as_slice() {
        return;
    }
    let na = alpha.num_blocks();
    let nb = beta.num_blocks();
    let a_upper = block_flags(alpha.upper_labels(), na);
    let a_lower = block_flags(alpha.lower_labels(), na);
    let b_upper = block_flags(beta.upper_labels(), nb);
    let b_lower = block_flags(beta.lower_labels(), nb);

    // Component ids: α-blocks through the middle share their id with the β-block.
    let mut a_id: SmallVec<[u8; 32]> = SmallVec::from_elem(NONE, na);
    let mut b_id: SmallVec<[u8; 32]> = SmallVec::from_elem(NONE, nb);
    let mut next = 0u8;
    let mut middle_only = 0u32;
    let mut outer = 0u32;
    for (&a, &b) in alpha.lower_labels().iter().zip(beta.upper_labels()) {
        if a_id[a as usize] == NONE {
            a_id[a as usize] = next;
            b_id[b as usize] = next;
            next += 1;
            if a_upper[a as usize] || b_lower[b as usize] {
                outer += 1;
            } else {
                middle_only += 1;
            }
        }
    }
    let mut upper_only = SmallVec::<[u8; 16]>::new();
    for a in 0..na {
        if !a_lower[a] {
            a_id[a] = next;
            upper_only.push(next);
            next += 1;
        }
    }
    let lower_only: SmallVec<[usize; 16]> = (0..nb).filter(|&b| !b_upper[b]).collect();
    for &b in &lower_only {
        b_id[b] = next;
        next += 1;
    }
    let k = alpha.upper();
    let m = beta.lower();
    let base_outer = outer + (upper_only.len() + lower_only.len()) as u32;
    for_each_partial_injection(lower_only.len(), upper_only.len(), &mut |matching| {
        let mut ids = b_id.clone();
        let mut matched = 0u32;
        for (i, &u) in matching.iter().enumerate() {
            if u != NONE {
                ids[lower_only[i]] = upper_only[u as usize];
                matched += 1;
            }
        }
        let mut labels: Labels = SmallVec::with_capacity(k + m);
        labels.extend(alpha.upper_labels().iter().map(|&a| a_id[a as usize]));
        labels.extend(beta.lower_labels().iter().map(|&b| ids[b as usize]));
        let blocks = base_outer - matched;
        out.push((SetPartition::from_labels(k, m, labels), Weight::falling(blocks, middle_only)));
    });
}

/// x_α ⊗ x_β: all ways of letting blocks of the two factors share labels.
pub(super) fn tensor(alpha: &SetPartition, beta: &SetPartition, out: &mut Vec<(SetPartition, Weight)>) {
    let na = alpha.num_blocks();
    let nb = beta.num_blocks();
    let k = alpha.upper() + beta.upper();
    let l = alpha.lower() + beta.lower();
    for_each_partial_injection(nb, na, &mut |matching| {
        let id = |b: u8| {
            let m = matching[b as usize];
            if m == NONE {
                (na + b as usize) as u8
            } else {
                m
            }
        };
        let mut labels: Labels = SmallVec::with_capacity(k + l);
        labels.extend_from_slice(alpha.upper_labels());
        labels.extend(beta.upper_labels().iter().map(|&b| id(b)));
        labels.extend_from_slice(alpha.lower_labels());
        labels.extend(beta.lower_labels().iter().map(|&b| id(b)));
        out.push((SetPartition::from_labels(k, l, labels), Weight::One));
    });
}

pub(super) fn trace(lambda: &SetPartition) -> Option<Weight> {
    if lambda.upper_labels() != lambda.lower_labels() {
        return None;
    }
    Some(Weight::falling(0, lambda.num_blocks() as u32))
}

/// Closes `close` strands on the right (or left) of an endomorphism basis element.
pub(super) fn partial_trace(lambda: &SetPartition, close: usize, right: bool) -> Option<(SetPartition, Weight)> {
    let w = lambda.upper();
    let (up, lo) = (lambda.upper_labels(), lambda.lower_labels());
    let closed = if right { w - close..w } else { 0..close };
    if closed.clone().any(|j| up[j] != lo[j]) {
        return None;
    }
    let open = if right { 0..w - close } else { close..w };
    let mut labels: Labels = SmallVec::with_capacity(2 * (w - close));
    labels.extend_from_slice(&up[open.clone()]);
    labels.extend_from_slice(&lo[open]);
    let mut present: SmallVec<[bool; 32]> = SmallVec::from_elem(false, lambda.num_blocks());
    for &l in &labels {
        present[l as usize] = true;
    }
    let closed_only = present.iter().filter(|p| !**p).count() as u32;
    let blocks = normalize(&mut labels) as u32;
    Some((SetPartition::from_canonical(w - close, w - close, labels), Weight::falling(blocks, closed_only)))
}

/// (1_s ⊗ x_φ ⊗ 1_r) ∘ x_α where the window starts at lower vertex `offset` of α.
pub(super) fn window(phi: &SetPartition, alpha: &SetPartition, offset: usize, out: &mut Vec<(SetPartition, Weight)>) {
    let k = alpha.upper();
    let lower = alpha.lower_labels();
    let w = phi.upper();
    let win = &lower[offset..offset + w];
    if pattern(win).as_slice() != pattern(phi.upper_labels()).as_slice() {
        return;
    }
    let na = alpha.num_blocks();
    let nf = phi.num_blocks();
    let a_upper = block_flags(alpha.upper_labels(), na);
    let mut a_side: SmallVec<[bool; 32]> = SmallVec::from_elem(false, na);
    for (i, &l) in lower.iter().enumerate() {
        if i < offset || i >= offset + w {
            a_side[l as usize] = true;
        }
    }
    let f_upper = block_flags(phi.upper_labels(), nf);
    let f_lower = block_flags(phi.lower_labels(), nf);

    // φ-blocks through the window take the id of their α-block.
    let mut f_id: SmallVec<[u8; 32]> = SmallVec::from_elem(NONE, nf);
    let mut in_window: SmallVec<[bool; 32]> = SmallVec::from_elem(false, na);
    for (&a, &f) in win.iter().zip(phi.upper_labels()) {
        f_id[f as usize] = a;
        in_window[a as usize] = true;
    }
    let mut middle_only = 0u32;
    let mut outer = 0u32;
    let mut candidates = SmallVec::<[u8; 16]>::new();
    let mut a_to_f: SmallVec<[u8; 32]> = SmallVec::from_elem(NONE, na);
    for (&a, &f) in win.iter().zip(phi.upper_labels()) {
        a_to_f[a as usize] = f;
    }
    for a in 0..na {
        if in_window[a] {
            if a_upper[a] || a_side[a] || f_lower[a_to_f[a] as usize] {
                outer += 1;
            } else {
                middle_only += 1;
            }
        } else {
            outer += 1;
            candidates.push(a as u8);
        }
    }
    let lower_only: SmallVec<[usize; 16]> = (0..nf).filter(|&f| !f_upper[f]).collect();
    for (i, &f) in lower_only.iter().enumerate() {
        f_id[f] = (na + i) as u8;
    }
    let w_out = phi.lower();
    let new_lower = alpha.lower() - w + w_out;
    let base_outer = outer + lower_only.len() as u32;
    for_each_partial_injection(lower_only.len(), candidates.len(), &mut |matching| {
        let mut ids = f_id.clone();
        let mut matched = 0u32;
        for (i, &c) in matching.iter().enumerate() {
            if c != NONE {
                ids[lower_only[i]] = candidates[c as usize];
                matched += 1;
            }
        }
        let mut labels: Labels = SmallVec::with_capacity(k + new_lower);
        labels.extend_from_slice(alpha.upper_labels());
        labels.extend_from_slice(&lower[..offset]);
        labels.extend(phi.lower_labels().iter().map(|&f| ids[f as usize]));
        labels.extend_from_slice(&lower[offset + w..]);
        out.push((SetPartition::from_labels(k, new_lower, labels), Weight::falling(base_outer - matched, middle_only)));
    });
}
