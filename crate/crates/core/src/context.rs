//! Formal contexts `(G, M, I)` and the derivation operators.
//!
//! Objects and attributes are identified by position. Names exist only for
//! reading and writing files and for display.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result, Side};

/// A formal context with its incidence stored both row-wise (one attribute set
/// per object) and column-wise (one object set per attribute).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    columns: Vec<BitSet>,
}

fn check_distinct(names: &[String], side: Side) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName {
                side,
                name: name.clone(),
            });
        }
    }
    Ok(())
}

fn transpose_sets(sets: &[BitSet], universe: usize) -> Vec<BitSet> {
    let mut out = vec![BitSet::empty(sets.len()); universe];
    for (i, set) in sets.iter().enumerate() {
        for j in set {
            out[j].insert(i);
        }
    }
    out
}

impl FormalContext {
    /// Builds a context from per-object attribute sets.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, rows: Vec<BitSet>) -> Result<Self> {
        check_distinct(&objects, Side::Objects)?;
        check_distinct(&attributes, Side::Attributes)?;
        if rows.len() != objects.len() {
            return Err(Error::DimensionMismatch {
                what: "objects",
                declared: objects.len(),
                found: rows.len(),
            });
        }
        if let Some(row) = rows.iter().find(|r| r.universe() != attributes.len()) {
            return Err(Error::DimensionMismatch {
                what: "attributes",
                declared: attributes.len(),
                found: row.universe(),
            });
        }
        let columns = transpose_sets(&rows, attributes.len());
        let ctx = FormalContext {
            name: String::new(),
            objects,
            attributes,
            rows,
            columns,
        };
        debug_assert!(ctx.views_consistent());
        Ok(ctx)
    }

    /// Builds a context from a boolean matrix indexed `[object][attribute]`.
    pub fn from_bools<S: Into<String>>(
        objects: impl IntoIterator<Item = S>,
        attributes: impl IntoIterator<Item = S>,
        matrix: &[Vec<bool>],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let attributes: Vec<String> = attributes.into_iter().map(Into::into).collect();
        let mut rows = Vec::with_capacity(matrix.len());
        for row in matrix {
            if row.len() != attributes.len() {
                return Err(Error::DimensionMismatch {
                    what: "attributes",
                    declared: attributes.len(),
                    found: row.len(),
                });
            }
            rows.push(BitSet::from_indices(
                attributes.len(),
                row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j),
            ));
        }
        FormalContext::new(objects, attributes, rows)
    }

    /// Context with generated names `g0, g1, ...` and `m0, m1, ...`.
    pub fn anonymous(matrix: &[Vec<bool>], attribute_count: usize) -> Result<Self> {
        let objects = (0..matrix.len()).map(|i| format!("g{i}"));
        let attributes = (0..attribute_count).map(|j| format!("m{j}"));
        FormalContext::from_bools(objects, attributes, matrix)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    /// `g'` for a single object.
    pub fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    /// `m'` for a single attribute.
    pub fn column(&self, m: usize) -> &BitSet {
        &self.columns[m]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn columns(&self) -> &[BitSet] {
        &self.columns
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    /// Resolves attribute names to indices.
    pub fn attribute_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.attribute_index(n.as_ref()).ok_or_else(|| Error::UnknownName {
                    side: Side::Attributes,
                    name: n.as_ref().to_owned(),
                })
            })
            .collect()
    }

    pub fn views_consistent(&self) -> bool {
        self.columns.len() == self.attributes.len()
            && self.rows.len() == self.objects.len()
            && transpose_sets(&self.rows, self.attributes.len()) == self.columns
    }

    fn universe(&self, side: Side) -> usize {
        match side {
            Side::Objects => self.object_count(),
            Side::Attributes => self.attribute_count(),
        }
    }

    /// Validates indices on `side` and collects them into a set.
    pub fn index_set<I: IntoIterator<Item = usize>>(&self, side: Side, indices: I) -> Result<BitSet> {
        let bound = self.universe(side);
        let mut set = BitSet::empty(bound);
        for index in indices {
            if index >= bound {
                return Err(Error::IndexOutOfRange { side, index, bound });
            }
            set.insert(index);
        }
        Ok(set)
    }

    /// `A'`: the attributes shared by every object in `objects`.
    /// The empty object set derives to all attributes.
    pub fn intent_of(&self, objects: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.attribute_count());
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B'`: the objects having every attribute in `attributes`.
    /// The empty attribute set derives to all objects.
    pub fn extent_of(&self, attributes: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.object_count());
        for m in attributes {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    /// `g''`, the extent of the object concept of `g`.
    pub fn object_closure(&self, g: usize) -> BitSet {
        self.extent_of(&self.rows[g])
    }

    /// Applies the derivation operator to a set of `side` indices.
    pub fn derive<I: IntoIterator<Item = usize>>(&self, side: Side, indices: I) -> Result<BitSet> {
        let set = self.index_set(side, indices)?;
        Ok(match side {
            Side::Objects => self.intent_of(&set),
            Side::Attributes => self.extent_of(&set),
        })
    }

    /// Applies the derivation operator twice.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, side: Side, indices: I) -> Result<BitSet> {
        let set = self.index_set(side, indices)?;
        Ok(match side {
            Side::Objects => self.extent_of(&self.intent_of(&set)),
            Side::Attributes => self.intent_of(&self.extent_of(&set)),
        })
    }

    /// The sub-context on the attributes in `keep`, in their original order.
    pub fn restrict_attributes(&self, keep: &BitSet) -> FormalContext {
        let kept: Vec<usize> = keep.to_vec();
        let attributes = kept.iter().map(|&m| self.attributes[m].clone()).collect();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                BitSet::from_indices(
                    kept.len(),
                    kept.iter()
                        .enumerate()
                        .filter(|(_, &m)| row.contains(m))
                        .map(|(j, _)| j),
                )
            })
            .collect::<Vec<_>>();
        let columns = kept.iter().map(|&m| self.columns[m].clone()).collect();
        FormalContext {
            name: self.name.clone(),
            objects: self.objects.clone(),
            attributes,
            rows,
            columns,
        }
    }

    /// `K_N = (G, M∖N, I ∩ G×(M∖N))`.
    pub fn subcontext_remove(&self, remove: &[usize]) -> Result<FormalContext> {
        let removed = self.index_set(Side::Attributes, remove.iter().copied())?;
        Ok(self.restrict_attributes(&removed.complement()))
    }

    /// `(G, N, I ∩ G×N)`.
    pub fn subcontext_keep(&self, keep: &[usize]) -> Result<FormalContext> {
        let kept = self.index_set(Side::Attributes, keep.iter().copied())?;
        Ok(self.restrict_attributes(&kept))
    }

    /// The dual context `(M, G, I⁻¹)`.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            name: self.name.clone(),
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.columns.clone(),
            columns: self.rows.clone(),
        }
    }
}
