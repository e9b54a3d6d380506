//! Incremental row echelon form over a [`FieldSpec`], with sparse rows keyed
//! by an arbitrary ordered column type.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::field::{FieldSpec, Scalar};

pub type SparseRow<K> = BTreeMap<K, Scalar>;

/// Rows with pairwise distinct pivots, each pivot being the row's least
/// column and normalized to 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    field: FieldSpec,
    rows: BTreeMap<K, SparseRow<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; the result has no entry in a
    /// pivot column.
    pub fn reduce(&self, mut v: SparseRow<K>) -> SparseRow<K> {
        let f = self.field;
        loop {
            let hit = v
                .iter()
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((pivot, c)) = hit else { return v };
            for (k, a) in &self.rows[&pivot] {
                let entry = v.entry(k.clone()).or_insert_with(Scalar::zero);
                *entry = f.sub(entry, &f.mul(&c, a));
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseRow<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns the new row if the rank grew.
    pub fn insert(&mut self, v: SparseRow<K>) -> Option<SparseRow<K>> {
        let r = self.reduce(v);
        let (pivot, lead) = r.iter().next().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = self.field.inv(&lead).expect("nonzero pivot");
        let row: SparseRow<K> = r.into_iter().map(|(k, c)| (k, self.field.mul(&c, &inv))).collect();
        self.rows.insert(pivot, row.clone());
        Some(row)
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<K>> {
        self.rows.values()
    }
}
