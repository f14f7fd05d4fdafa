use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::CoreError;

/// A σ-algebra on a finite outcome set, represented by its atom partition.
///
/// Internally the partition stores, for each outcome, the index of its block.
/// Blocks are numbered canonically by first appearance, so two partitions are
/// equal as σ-algebras iff their `block_of` vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    n_blocks: usize,
}

impl Partition {
    /// The trivial σ-algebra `{∅, Ω}`.
    pub fn trivial(n_outcomes: usize) -> Self {
        Partition {
            block_of: vec![0; n_outcomes],
            n_blocks: if n_outcomes == 0 { 0 } else { 1 },
        }
    }

    /// The discrete σ-algebra (every outcome its own atom).
    pub fn discrete(n_outcomes: usize) -> Self {
        Partition {
            block_of: (0..n_outcomes).collect(),
            n_blocks: n_outcomes,
        }
    }

    /// Builds a partition from explicit blocks, which must be disjoint,
    /// nonempty and cover `0..n_outcomes`.
    pub fn from_blocks(n_outcomes: usize, blocks: &[Vec<usize>]) -> Result<Self, CoreError> {
        let mut block_of = vec![usize::MAX; n_outcomes];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(CoreError::InvalidPartition(format!("block {b} is empty")));
            }
            for &w in block {
                if w >= n_outcomes {
                    return Err(CoreError::InvalidPartition(format!(
                        "outcome {w} out of range (n={n_outcomes})"
                    )));
                }
                if block_of[w] != usize::MAX {
                    return Err(CoreError::InvalidPartition(format!(
                        "outcome {w} appears in two blocks"
                    )));
                }
                block_of[w] = b;
            }
        }
        if let Some(w) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(CoreError::InvalidPartition(format!(
                "outcome {w} not covered by any block"
            )));
        }
        Ok(Self::canonicalize(block_of))
    }

    /// Partition generated by a random variable: blocks are its level sets.
    pub fn from_labels<L: Eq + Hash>(labels: &[L]) -> Self {
        let mut seen: HashMap<&L, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len();
            let b = *seen.entry(l).or_insert(next);
            block_of.push(b);
        }
        let n_blocks = seen.len();
        Partition { block_of, n_blocks }
    }

    fn canonicalize(raw: Vec<usize>) -> Self {
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(raw.len());
        for r in raw {
            let next = relabel.len();
            let b = *relabel.entry(r).or_insert(next);
            block_of.push(b);
        }
        let n_blocks = relabel.len();
        Partition { block_of, n_blocks }
    }

    pub fn n_outcomes(&self) -> usize {
        self.block_of.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn block_index(&self, outcome: usize) -> usize {
        self.block_of[outcome]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Materializes the blocks, ordered by first appearance.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.n_blocks];
        for (w, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(w);
        }
        blocks
    }

    /// Coarsest common refinement (the σ-algebra join `∨`).
    pub fn join(&self, other: &Partition) -> Result<Partition, CoreError> {
        if self.n_outcomes() != other.n_outcomes() {
            return Err(CoreError::Dimension {
                context: "partition join",
                expected: self.n_outcomes(),
                got: other.n_outcomes(),
            });
        }
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Partition::from_labels(&pairs))
    }

    /// True iff `self` is finer than (or equal to) `coarser`: every block of
    /// `self` is contained in a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n_outcomes() != coarser.n_outcomes() {
            return false;
        }
        let mut image = vec![usize::MAX; self.n_blocks];
        for (w, &b) in self.block_of.iter().enumerate() {
            let c = coarser.block_of[w];
            if image[b] == usize::MAX {
                image[b] = c;
            } else if image[b] != c {
                return false;
            }
        }
        true
    }

    /// True iff `set` is measurable: a union of blocks.
    pub fn is_measurable_set(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n_outcomes()];
        for &w in set {
            member[w] = true;
        }
        // every block is all-in or all-out
        let mut verdict: Vec<Option<bool>> = vec![None; self.n_blocks];
        for (w, &b) in self.block_of.iter().enumerate() {
            match verdict[b] {
                None => verdict[b] = Some(member[w]),
                Some(v) => {
                    if v != member[w] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The trace of the σ-algebra on `domain`: the restriction of the atom
    /// equivalence to the given outcomes, returned as blocks.
    pub fn trace(&self, domain: &[usize]) -> Vec<Vec<usize>> {
        let mut by_block: HashMap<usize, Vec<usize>> = HashMap::new();
        for &w in domain {
            by_block.entry(self.block_of[w]).or_default().push(w);
        }
        let mut blocks: Vec<Vec<usize>> = by_block.into_values().collect();
        blocks.sort();
        blocks
    }
}

/// Compares two σ-algebras restricted to `domain`.
///
/// Returns `Ok(())` when the traces agree, otherwise a witness pair of
/// outcomes that one trace separates and the other does not.
pub fn trace_equal(p: &Partition, q: &Partition, domain: &[usize]) -> Result<(), (usize, usize)> {
    for (i, &a) in domain.iter().enumerate() {
        for &b in &domain[i + 1..] {
            if p.same_block(a, b) != q.same_block(a, b) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, w) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{w}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}
