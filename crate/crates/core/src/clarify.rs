//! Attribute clarification and reduction.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::context::FormalContext;

/// Partition of the attributes of a context into classes of equal extents.
///
/// Classes are ordered by their representative, which is the member with the
/// smallest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClarificationMap {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClarificationMap {
    pub fn of(ctx: &FormalContext) -> Self {
        let mut by_column: HashMap<&BitSet, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(ctx.attribute_count());
        for (m, column) in ctx.columns().iter().enumerate() {
            let class = *by_column.entry(column).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[class].push(m);
            class_of.push(class);
        }
        ClarificationMap { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Index of the class (equivalently, of the attribute in the clarified
    /// context) that attribute `m` belongs to.
    pub fn class_of(&self, m: usize) -> usize {
        self.class_of[m]
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// First pair of distinct attributes with equal extents, if any.
    pub fn first_duplicate(&self) -> Option<(usize, usize)> {
        self.classes.iter().find(|c| c.len() > 1).map(|c| (c[0], c[1]))
    }
}

/// Merges attributes with identical columns, keeping the lowest-indexed member
/// of each class.
pub fn clarify(ctx: &FormalContext) -> (FormalContext, ClarificationMap) {
    let map = ClarificationMap::of(ctx);
    if map.is_trivial() {
        return (ctx.clone(), map);
    }
    let keep = BitSet::from_indices(ctx.attribute_count(), map.representatives());
    (ctx.restrict_attributes(&keep), map)
}

/// True if `m'` is the intersection of the extents of other attributes.
///
/// Only attributes whose extents contain `m'` can take part in such an
/// intersection, so it suffices to intersect all of them. The empty
/// intersection is the full object set.
pub fn is_reducible(ctx: &FormalContext, m: usize) -> bool {
    let column = ctx.column(m);
    let mut meet = BitSet::full(ctx.object_count());
    for (n, other) in ctx.columns().iter().enumerate() {
        if n != m && column.is_subset(other) {
            meet.intersect_with(other);
        }
    }
    meet == *column
}

/// Clarifies the context and then removes every reducible attribute.
pub fn reduce(ctx: &FormalContext) -> FormalContext {
    let (clarified, _) = clarify(ctx);
    let keep = BitSet::from_indices(
        clarified.attribute_count(),
        (0..clarified.attribute_count()).filter(|&m| !is_reducible(&clarified, m)),
    );
    clarified.restrict_attributes(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::enumerate_concepts;
    use crate::scale::{make_scale, ScaleKind};

    #[test]
    fn water4_is_clarified() {
        let k = fixtures::water4();
        let (c, map) = clarify(&k);
        assert_eq!(c, k);
        assert!(map.is_trivial());
        assert!(map.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn identical_columns_merge() {
        let k = FormalContext::from_bools(
            ["g", "h"],
            ["m", "x", "n"],
            &[vec![true, false, true], vec![false, true, false]],
        )
        .unwrap();
        let (c, map) = clarify(&k);
        assert_eq!(c.attributes(), ["m", "x"]);
        assert_eq!(map.classes(), [vec![0, 2], vec![1]]);
        assert_eq!(map.class_of(2), 0);
        assert_eq!(map.first_duplicate(), Some((0, 2)));
        assert_eq!(
            enumerate_concepts(&c).unwrap().len(),
            enumerate_concepts(&k).unwrap().len()
        );
    }

    #[test]
    fn water4_reduce_drops_full_column() {
        let k = fixtures::water4();
        assert!(is_reducible(&k, 0));
        assert!((1..4).all(|m| !is_reducible(&k, m)));
        let r = reduce(&k);
        assert_eq!(r.attributes(), ["b", "c", "d"]);
        assert_eq!(enumerate_concepts(&r).unwrap().len(), 6);
    }

    #[test]
    fn contranominal_is_reduced() {
        let k = make_scale(ScaleKind::Contranominal, 5).unwrap();
        assert_eq!(reduce(&k), k);
    }

    #[test]
    fn ordinal_keeps_all_but_full_column() {
        // Column n-1 is full in the ordinal scale.
        let k = make_scale(ScaleKind::Ordinal, 4).unwrap();
        assert_eq!(reduce(&k).attribute_count(), 3);
    }
}
