//! Enumeration of all formal concepts and the extent label function.
//!
//! Concepts are generated by Close-by-One: a depth-first walk over the
//! attributes in index order where a child `(A ∩ j', (A ∩ j')')` is expanded
//! only if closing added no attribute below `j` that its parent lacked. Each
//! concept is reached exactly once, so nothing is deduplicated afterwards.
//! The subtrees below the top concept are independent and are walked in
//! parallel; the result is sorted into canonical order.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

pub const DEFAULT_CONCEPT_CAP: usize = 5_000_000;

/// A closed pair `(A, B)` with `A' = B` and `B' = A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: BitSet,
    pub intent: BitSet,
}

impl Concept {
    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.intent_of(&self.extent) == self.intent && ctx.extent_of(&self.intent) == self.extent
    }
}

/// All concepts of a context, ordered by extent, with the extent label of every
/// object and the total extent mass `Σ_c |ext(c)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptSet {
    concepts: Vec<Concept>,
    labels: Vec<u64>,
    extent_sum: u64,
}

impl ConceptSet {
    /// Sorts `concepts` canonically and computes labels over `object_count`
    /// objects.
    pub fn from_concepts(mut concepts: Vec<Concept>, object_count: usize) -> Self {
        concepts.sort_unstable_by(|a, b| a.extent.cmp(&b.extent));
        let mut labels = vec![0u64; object_count];
        for c in &concepts {
            for g in &c.extent {
                labels[g] += 1;
            }
        }
        let extent_sum = concepts.iter().map(|c| c.extent.len() as u64).sum();
        ConceptSet {
            concepts,
            labels,
            extent_sum,
        }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Concept> {
        self.concepts.iter()
    }

    /// `ℓ(g)` for every object `g`: the number of concepts whose extent holds `g`.
    pub fn extent_labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> u64 {
        self.labels[g]
    }

    pub fn extent_sum(&self) -> u64 {
        self.extent_sum
    }

    /// The concept with the largest extent.
    pub fn top(&self) -> Option<&Concept> {
        self.concepts.last()
    }

    /// The concept with the smallest extent.
    pub fn bottom(&self) -> Option<&Concept> {
        self.concepts.first()
    }

    pub fn contains(&self, concept: &Concept) -> bool {
        self.concepts
            .binary_search_by(|c| c.extent.cmp(&concept.extent))
            .is_ok_and(|i| self.concepts[i] == *concept)
    }

    /// One line per concept: extent indices, a tab, intent indices.
    pub fn to_tsv(&self) -> String {
        fn join(set: &BitSet) -> String {
            set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        }
        let mut out = String::new();
        for c in &self.concepts {
            out.push_str(&join(&c.extent));
            out.push('\t');
            out.push_str(&join(&c.intent));
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a ConceptSet {
    type Item = &'a Concept;
    type IntoIter = std::slice::Iter<'a, Concept>;

    fn into_iter(self) -> Self::IntoIter {
        self.concepts.iter()
    }
}

/// Configuration for concept enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    cap: usize,
    parallel: bool,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_CONCEPT_CAP,
            parallel: true,
        }
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Maximum number of concepts before enumeration aborts with
    /// [`Error::CapacityExceeded`].
    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn concept_cap(&self) -> usize {
        self.cap
    }

    pub fn enumerate(&self, ctx: &FormalContext) -> Result<ConceptSet> {
        let counter = AtomicUsize::new(0);
        let root = root_concept(ctx);
        let children = children_of(ctx, &root.extent, &root.intent, 0);
        bump(&counter, self.cap)?;

        let walk = |(extent, intent, next): (BitSet, BitSet, usize)| -> Result<Vec<Concept>> {
            let mut found = Vec::new();
            let flow = close_by_one(ctx, extent, intent, next, &mut |extent, intent| {
                if bump(&counter, self.cap).is_err() {
                    return ControlFlow::Break(());
                }
                found.push(Concept {
                    extent: extent.clone(),
                    intent: intent.clone(),
                });
                ControlFlow::Continue(())
            });
            match flow {
                ControlFlow::Continue(()) => Ok(found),
                ControlFlow::Break(()) => Err(capacity_error(&counter, self.cap)),
            }
        };

        let branches: Vec<Vec<Concept>> = if self.parallel && children.len() > 1 {
            children.into_par_iter().map(walk).collect::<Result<_>>()?
        } else {
            children.into_iter().map(walk).collect::<Result<_>>()?
        };

        let mut concepts = Vec::with_capacity(branches.iter().map(Vec::len).sum::<usize>() + 1);
        concepts.push(root);
        concepts.extend(branches.into_iter().flatten());
        Ok(ConceptSet::from_concepts(concepts, ctx.object_count()))
    }

    /// Counts concepts without storing them.
    pub fn count(&self, ctx: &FormalContext) -> Result<usize> {
        let root = root_concept(ctx);
        let mut count = 0usize;
        let cap = self.cap;
        let flow = close_by_one(ctx, root.extent, root.intent, 0, &mut |_, _| {
            count += 1;
            if count > cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        match flow {
            ControlFlow::Continue(()) => Ok(count),
            ControlFlow::Break(()) => Err(Error::CapacityExceeded { cap, enumerated: cap }),
        }
    }
}

fn bump(counter: &AtomicUsize, cap: usize) -> Result<()> {
    if counter.fetch_add(1, Ordering::Relaxed) >= cap {
        Err(capacity_error(counter, cap))
    } else {
        Ok(())
    }
}

fn capacity_error(counter: &AtomicUsize, cap: usize) -> Error {
    Error::CapacityExceeded {
        cap,
        enumerated: counter.load(Ordering::Relaxed).min(cap),
    }
}

fn root_concept(ctx: &FormalContext) -> Concept {
    let extent = BitSet::full(ctx.object_count());
    let intent = ctx.intent_of(&extent);
    Concept { extent, intent }
}

/// Canonical children of `(extent, intent)` generated from attributes `>= start`,
/// each paired with the attribute index its own walk resumes from.
fn children_of(ctx: &FormalContext, extent: &BitSet, intent: &BitSet, start: usize) -> Vec<(BitSet, BitSet, usize)> {
    (start..ctx.attribute_count())
        .filter_map(|j| child(ctx, extent, intent, j).map(|(e, i)| (e, i, j + 1)))
        .collect()
}

/// Extends `intent` by attribute `j` and closes. Returns `None` if `j` is
/// already in the intent or the closure is not canonical.
fn child(ctx: &FormalContext, extent: &BitSet, intent: &BitSet, j: usize) -> Option<(BitSet, BitSet)> {
    if intent.contains(j) {
        return None;
    }
    let new_extent = extent.intersection(ctx.column(j));
    // Canonicity: no attribute below j outside the parent intent may be
    // implied by the new extent.
    for k in 0..j {
        if !intent.contains(k) && new_extent.is_subset(ctx.column(k)) {
            return None;
        }
    }
    let mut new_intent = intent.clone();
    new_intent.insert(j);
    for k in j + 1..ctx.attribute_count() {
        if !new_intent.contains(k) && new_extent.is_subset(ctx.column(k)) {
            new_intent.insert(k);
        }
    }
    Some((new_extent, new_intent))
}

/// Visits `(extent, intent)` and every canonical descendant generated from
/// attributes `>= start`.
fn close_by_one<F>(ctx: &FormalContext, extent: BitSet, intent: BitSet, start: usize, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&BitSet, &BitSet) -> ControlFlow<()>,
{
    visit(&extent, &intent)?;
    for j in start..ctx.attribute_count() {
        if let Some((e, i)) = child(ctx, &extent, &intent, j) {
            close_by_one(ctx, e, i, j + 1, visit)?;
        }
    }
    ControlFlow::Continue(())
}

/// All concepts of `ctx` with the default concept cap.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptSet> {
    Enumerator::default().enumerate(ctx)
}

/// `{c ∈ 𝔅(K) | (int(c) ∖ N)' = ext(c)}`: the concepts whose extent is still an
/// extent once the attributes `removed` are dropped from the context.
pub fn surviving_concepts(cs: &ConceptSet, ctx: &FormalContext, removed: &BitSet) -> ConceptSet {
    let survivors = cs.iter().filter(|c| survives(c, ctx, removed)).cloned().collect();
    ConceptSet::from_concepts(survivors, ctx.object_count())
}

/// `Σ |ext(c)|` over the survivors of removing `removed`, without collecting them.
pub fn surviving_extent_sum(cs: &ConceptSet, ctx: &FormalContext, removed: &BitSet) -> u64 {
    cs.iter()
        .filter(|c| survives(c, ctx, removed))
        .map(|c| c.extent.len() as u64)
        .sum()
}

pub(crate) fn survives(c: &Concept, ctx: &FormalContext, removed: &BitSet) -> bool {
    if c.intent.is_disjoint(removed) {
        return true;
    }
    // ext(c) ⊆ (int(c) ∖ N)' always holds, so equal sizes mean equal sets.
    let reduced = c.intent.difference(removed);
    ctx.extent_of(&reduced).len() == c.extent.len()
}
