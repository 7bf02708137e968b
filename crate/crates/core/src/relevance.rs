//! Relevance of attributes and relative relevance of attribute sets.
//!
//! Removing a set `N` of attributes keeps exactly those concepts `c` with
//! `(int(c) ∖ N)' = ext(c)`; their extents are the extents of the smaller
//! context. Relative relevance is the share of extent mass that is lost:
//!
//! ```text
//! r(N) = 1 − Σ_{surviving c} |ext(c)| / Σ_{c} |ext(c)|
//! ```
//!
//! so one enumeration of the full lattice answers every `r(N)`.
//!
//! Relative relevance is meant for attribute clarified contexts. By default a
//! [`RelevanceAnalysis`] clarifies its input and treats an attribute as a proxy
//! for its whole class of equal-extent attributes; [`ClarifyPolicy::Strict`]
//! rejects unclarified input instead.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::bitset::BitSet;
use crate::clarify::{clarify, is_reducible, ClarificationMap};
use crate::context::FormalContext;
use crate::error::{Error, Result, Side};
use crate::lattice::{enumerate_concepts, survives, surviving_extent_sum, ConceptSet, Enumerator};

/// `r(N)` held as the surviving and total extent mass.
#[derive(Clone, Copy, Debug)]
pub struct Relevance {
    surviving: u64,
    total: u64,
}

impl Relevance {
    pub fn new(surviving: u64, total: u64) -> Result<Self> {
        if total == 0 {
            return Err(Error::DegenerateRelevance);
        }
        debug_assert!(surviving <= total);
        Ok(Relevance { surviving, total })
    }

    pub fn surviving_extent_sum(&self) -> u64 {
        self.surviving
    }

    pub fn total_extent_sum(&self) -> u64 {
        self.total
    }

    /// `r = 1 − surviving / total`, reduced.
    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.total - self.surviving, self.total)
    }

    /// `t = surviving / total`; equals 1 for a non-relevant attribute.
    pub fn retention(&self) -> Ratio<u64> {
        Ratio::new(self.surviving, self.total)
    }

    pub fn to_f64(&self) -> f64 {
        (self.total - self.surviving) as f64 / self.total as f64
    }

    pub fn is_zero(&self) -> bool {
        self.surviving == self.total
    }
}

impl PartialEq for Relevance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Relevance {}

impl Ord for Relevance {
    fn cmp(&self, other: &Self) -> Ordering {
        // Larger retention means smaller relevance.
        let lhs = self.surviving as u128 * other.total as u128;
        let rhs = other.surviving as u128 * self.total as u128;
        rhs.cmp(&lhs)
    }
}

impl PartialOrd for Relevance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Relevance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClarifyPolicy {
    /// Merge equal-extent attributes before computing anything.
    #[default]
    Auto,
    /// Fail with [`Error::NotClarified`] on unclarified input.
    Strict,
}

/// A clarified context together with its concept lattice, ready to answer
/// relative relevance queries.
///
/// Queries take attribute indices of the context the analysis was built from;
/// each index stands for its clarification class.
#[derive(Clone, Debug)]
pub struct RelevanceAnalysis {
    context: FormalContext,
    clarification: ClarificationMap,
    concepts: ConceptSet,
    original_attributes: usize,
}

impl RelevanceAnalysis {
    pub fn new(ctx: &FormalContext, policy: ClarifyPolicy) -> Result<Self> {
        Self::with_enumerator(ctx, policy, &Enumerator::default())
    }

    pub fn with_enumerator(ctx: &FormalContext, policy: ClarifyPolicy, enumerator: &Enumerator) -> Result<Self> {
        let (context, clarification) = clarify(ctx);
        if policy == ClarifyPolicy::Strict {
            if let Some((m, n)) = clarification.first_duplicate() {
                return Err(Error::NotClarified(m, n));
            }
        }
        let concepts = enumerator.enumerate(&context)?;
        if concepts.extent_sum() == 0 {
            return Err(Error::DegenerateRelevance);
        }
        Ok(RelevanceAnalysis {
            context,
            clarification,
            concepts,
            original_attributes: ctx.attribute_count(),
        })
    }

    /// The clarified context.
    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn clarification(&self) -> &ClarificationMap {
        &self.clarification
    }

    pub fn concepts(&self) -> &ConceptSet {
        &self.concepts
    }

    pub fn total_extent_sum(&self) -> u64 {
        self.concepts.extent_sum()
    }

    /// Maps original attribute indices to the set of their classes.
    pub fn classes_of(&self, attributes: &[usize]) -> Result<BitSet> {
        let mut set = BitSet::empty(self.context.attribute_count());
        for &m in attributes {
            if m >= self.original_attributes {
                return Err(Error::IndexOutOfRange {
                    side: Side::Attributes,
                    index: m,
                    bound: self.original_attributes,
                });
            }
            set.insert(self.clarification.class_of(m));
        }
        Ok(set)
    }

    /// `r(N)` for original attribute indices.
    pub fn relevance(&self, attributes: &[usize]) -> Result<Relevance> {
        Ok(self.relevance_of_classes(&self.classes_of(attributes)?))
    }

    /// `r(N)` for a set of attributes of the clarified context.
    pub fn relevance_of_classes(&self, removed: &BitSet) -> Relevance {
        let surviving = surviving_extent_sum(&self.concepts, &self.context, removed);
        Relevance {
            surviving,
            total: self.concepts.extent_sum(),
        }
    }
}

/// `r(N)` with automatic clarification.
pub fn relative_relevance(ctx: &FormalContext, attributes: &[usize]) -> Result<Relevance> {
    RelevanceAnalysis::new(ctx, ClarifyPolicy::Auto)?.relevance(attributes)
}

fn check_index(ctx: &FormalContext, side: Side, index: usize) -> Result<()> {
    let bound = match side {
        Side::Objects => ctx.object_count(),
        Side::Attributes => ctx.attribute_count(),
    };
    if index >= bound {
        return Err(Error::IndexOutOfRange { side, index, bound });
    }
    Ok(())
}

/// True iff removing `m` lowers the extent label of `g`, i.e. some concept
/// whose extent contains `g` does not survive the removal.
pub fn is_relevant(ctx: &FormalContext, m: usize, g: usize) -> Result<bool> {
    check_index(ctx, Side::Attributes, m)?;
    check_index(ctx, Side::Objects, g)?;
    let cs = enumerate_concepts(ctx)?;
    let removed = BitSet::from_indices(ctx.attribute_count(), [m]);
    Ok(cs.iter().any(|c| c.extent.contains(g) && !survives(c, ctx, &removed)))
}

/// True iff `m` is relevant to at least one object.
pub fn is_relevant_to_context(ctx: &FormalContext, m: usize) -> Result<bool> {
    check_index(ctx, Side::Attributes, m)?;
    let cs = enumerate_concepts(ctx)?;
    let removed = BitSet::from_indices(ctx.attribute_count(), [m]);
    Ok(cs.iter().any(|c| !c.extent.is_empty() && !survives(c, ctx, &removed)))
}

/// True iff `m'` is not an intersection of other attribute extents. This is a
/// structural test on the columns and never enumerates concepts.
pub fn is_irreducible(ctx: &FormalContext, m: usize) -> Result<bool> {
    check_index(ctx, Side::Attributes, m)?;
    Ok(!is_reducible(ctx, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scale::{make_scale, ScaleKind};

    fn ratio(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn water4_singletons() {
        let k = fixtures::water4();
        let values: Vec<_> = (0..4).map(|m| relative_relevance(&k, &[m]).unwrap().value()).collect();
        assert_eq!(values, [ratio(0, 1), ratio(4, 11), ratio(3, 11), ratio(1, 11)]);
    }

    #[test]
    fn water6_sets() {
        let k = fixtures::water6();
        let a = RelevanceAnalysis::new(&k, ClarifyPolicy::Strict).unwrap();
        let bcd = k.attribute_indices(&["b", "c", "d"]).unwrap();
        let bcg = k.attribute_indices(&["b", "c", "g"]).unwrap();
        assert_eq!(a.relevance(&bcd).unwrap().value(), ratio(17, 33));
        assert_eq!(a.relevance(&bcg).unwrap().value(), ratio(19, 33));
    }

    #[test]
    fn empty_set_has_zero_relevance() {
        let r = relative_relevance(&fixtures::water6(), &[]).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.retention(), ratio(1, 1));
    }

    #[test]
    fn relevance_to_objects_on_water4() {
        let k = fixtures::water4();
        let (b, d, s) = (1, k.object_index("D").unwrap(), k.object_index("S").unwrap());
        assert!(!is_relevant(&k, b, d).unwrap());
        assert!(is_relevant(&k, b, s).unwrap());
        assert!((0..4).all(|g| !is_relevant(&k, 0, g).unwrap()));
        assert!(is_relevant_to_context(&k, b).unwrap());
        assert!(!is_relevant_to_context(&k, 0).unwrap());
    }

    #[test]
    fn irreducibility_on_water4() {
        let k = fixtures::water4();
        assert!(!is_irreducible(&k, 0).unwrap());
        assert!(is_irreducible(&k, 3).unwrap());
        assert!(is_irreducible(&k, 9).is_err());
    }

    #[test]
    fn nominal_attributes_are_relevant() {
        let k = make_scale(ScaleKind::Nominal, 3).unwrap();
        for m in 0..3 {
            assert!(is_relevant_to_context(&k, m).unwrap());
            assert_eq!(relative_relevance(&k, &[m]).unwrap().value(), ratio(1, 6));
        }
    }

    #[test]
    fn contranominal_every_attribute_irreducible() {
        let k = make_scale(ScaleKind::Contranominal, 4).unwrap();
        assert!((0..4).all(|m| is_irreducible(&k, m).unwrap()));
    }

    #[test]
    fn duplicate_columns_follow_policy() {
        let k = FormalContext::from_bools(
            ["g", "h"],
            ["m", "x", "n"],
            &[vec![true, false, true], vec![false, true, false]],
        )
        .unwrap();
        let err = RelevanceAnalysis::new(&k, ClarifyPolicy::Strict).unwrap_err();
        assert!(matches!(err, Error::NotClarified(0, 2)));

        let auto = RelevanceAnalysis::new(&k, ClarifyPolicy::Auto).unwrap();
        assert_eq!(auto.context().attribute_count(), 2);
        // n stands for its class {m, n}
        assert_eq!(auto.relevance(&[2]).unwrap(), auto.relevance(&[0]).unwrap());
        assert!(!auto.relevance(&[2]).unwrap().is_zero());
        // in the raw context removing n alone changes nothing
        assert!(!is_relevant_to_context(&k, 2).unwrap());
    }

    #[test]
    fn degenerate_context_is_an_error() {
        let k = FormalContext::anonymous(&[], 2).unwrap();
        assert!(matches!(relative_relevance(&k, &[0]), Err(Error::DegenerateRelevance)));
        assert!(Relevance::new(0, 0).is_err());
    }

    #[test]
    fn ordering_is_exact() {
        let a = Relevance::new(7, 11).unwrap();
        let b = Relevance::new(14, 22).unwrap();
        let c = Relevance::new(6, 11).unwrap();
        assert_eq!(a, b);
        assert!(c > a);
        assert_eq!(c.to_string(), "5/11");
        assert_eq!(Relevance::new(3, 3).unwrap().to_string(), "0");
    }
}
