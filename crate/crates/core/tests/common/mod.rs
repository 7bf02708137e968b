//! Brute-force oracles over plain boolean tables, independent of the crate's
//! bit sets and enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fcarel::FormalContext;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Table = Vec<Vec<bool>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_table(rng: &mut impl Rng, objects: usize, attributes: usize, density: f64) -> Table {
    (0..objects)
        .map(|_| (0..attributes).map(|_| rng.gen_bool(density)).collect())
        .collect()
}

pub fn context(table: &Table, attributes: usize) -> FormalContext {
    FormalContext::anonymous(table, attributes).unwrap()
}

fn intent(table: &Table, attributes: usize, objects: &[usize]) -> Vec<usize> {
    (0..attributes)
        .filter(|&m| objects.iter().all(|&g| table[g][m]))
        .collect()
}

fn extent(table: &Table, attrs: &[usize]) -> Vec<usize> {
    (0..table.len())
        .filter(|&g| attrs.iter().all(|&m| table[g][m]))
        .collect()
}

/// Every concept, found by closing each of the `2^|G|` object sets.
pub fn brute_concepts(table: &Table, attributes: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let g = table.len();
    assert!(g <= 16, "oracle is exponential in |G|");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << g) {
        let objs: Vec<usize> = (0..g).filter(|&i| mask >> i & 1 == 1).collect();
        let b = intent(table, attributes, &objs);
        let a = extent(table, &b);
        out.insert((a, b));
    }
    out
}

/// `Σ_g ℓ(g)`, counting for every object the concepts whose extent holds it.
pub fn label_sum(table: &Table, attributes: usize) -> u64 {
    let cs = brute_concepts(table, attributes);
    (0..table.len())
        .map(|g| cs.iter().filter(|(a, _)| a.contains(&g)).count() as u64)
        .sum()
}

pub fn without_columns(table: &Table, attributes: usize, removed: &[usize]) -> (Table, usize) {
    let keep: Vec<usize> = (0..attributes).filter(|m| !removed.contains(m)).collect();
    let t = table.iter().map(|row| keep.iter().map(|&m| row[m]).collect()).collect();
    (t, keep.len())
}

/// `(lost, total)` label mass when `removed` is deleted from the table.
pub fn label_relevance(table: &Table, attributes: usize, removed: &[usize]) -> (u64, u64) {
    let total = label_sum(table, attributes);
    let (t, k) = without_columns(table, attributes, removed);
    (total - label_sum(&t, k), total)
}

pub fn column(table: &Table, m: usize) -> Vec<bool> {
    table.iter().map(|row| row[m]).collect()
}

pub fn is_clarified(table: &Table, attributes: usize) -> bool {
    let cols: BTreeSet<Vec<bool>> = (0..attributes).map(|m| column(table, m)).collect();
    cols.len() == attributes
}

/// True iff column `m` is not the intersection of the other columns
/// containing it.
pub fn brute_irreducible(table: &Table, attributes: usize, m: usize) -> bool {
    let target = column(table, m);
    let mut meet = vec![true; table.len()];
    for n in (0..attributes).filter(|&n| n != m) {
        let c = column(table, n);
        if target.iter().zip(&c).all(|(&t, &x)| !t || x) {
            meet.iter_mut().zip(&c).for_each(|(a, &x)| *a &= x);
        }
    }
    meet != target
}

pub fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}
