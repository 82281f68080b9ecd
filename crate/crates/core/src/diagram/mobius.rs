//! Change of basis between partitions and the orbit basis.
//!
//! λ = Σ_{μ ≥ λ} x_μ, and inversely x_λ = Σ_{μ ≥ λ} Möb(λ, μ) μ, where the
//! interval [λ, μ] is a product of full partition lattices, one per group of
//! merged blocks, so Möb is Π (−1)^{g−1} (g−1)!.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::set_partitions;

/// Largest block count for which the merge table is materialized (Bell(12) ≈ 4.2M).
pub const MAX_MERGE_BLOCKS: usize = 12;

pub(crate) type MergeTable = Arc<Vec<(Vec<u8>, i64)>>;

fn cache() -> &'static RwLock<HashMap<usize, MergeTable>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, MergeTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn mobius_coefficient(rgs: &[u8]) -> i64 {
    let groups = rgs.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0i64; groups];
    for &v in rgs {
        sizes[v as usize] += 1;
    }
    sizes
        .into_iter()
        .map(|g| {
            let f: i64 = (1..g).product();
            if g % 2 == 0 {
                -f
            } else {
                f
            }
        })
        .product()
}

/// Every way of merging m blocks, with its Möbius coefficient. Insert-only cache.
pub(crate) fn merge_table(m: usize) -> Result<MergeTable> {
    if m > MAX_MERGE_BLOCKS {
        return Err(Error::Guard(format!("{m} blocks exceed the basis-change limit {MAX_MERGE_BLOCKS}")));
    }
    if let Some(t) = cache().read().expect("merge cache poisoned").get(&m) {
        return Ok(t.clone());
    }
    let table: MergeTable =
        Arc::new(set_partitions(m).into_iter().map(|rgs| { let c = mobius_coefficient(&rgs); (rgs, c) }).collect());
    let mut w = cache().write().expect("merge cache poisoned");
    Ok(w.entry(m).or_insert(table).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_sums_vanish() {
        // Σ_{μ ≥ λ} Möb(λ, μ) = 0 unless λ is already the top element.
        for m in 2..=6 {
            let total: i64 = merge_table(m).unwrap().iter().map(|(_, c)| c).sum();
            assert_eq!(total, 0);
        }
        assert_eq!(merge_table(1).unwrap().len(), 1);
        assert!(merge_table(MAX_MERGE_BLOCKS + 1).is_err());
    }
}
