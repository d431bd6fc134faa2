use crate::coloring::ColorAssignment;
use crate::graph::Graph;
use crate::quantum::QuantumMatrix;
use crate::scalar::Scalar;

/// An elite assignment together with the quantum matrix that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry<T> {
    pub x: ColorAssignment,
    pub q: QuantumMatrix<T>,
    pub fitness: usize,
}

/// Bounded elite store for one color level, sorted by fitness ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive<T> {
    capacity: usize,
    entries: Vec<ArchiveEntry<T>>,
}

impl<T: Scalar> Archive<T> {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "archive capacity must be at least 1");
        Self {
            capacity,
            entries: Vec::with_capacity(capacity),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry<T>] {
        &self.entries
    }

    /// Minimum-fitness entry.
    pub fn best(&self) -> Option<&ArchiveEntry<T>> {
        self.entries.first()
    }

    pub fn best_fitness(&self) -> Option<usize> {
        self.best().map(|e| e.fitness)
    }

    pub fn worst_fitness(&self) -> Option<usize> {
        self.entries.last().map(|e| e.fitness)
    }

    /// Inserts the candidate if there is room or it beats the worst entry.
    /// Identical assignments are stored once. Returns whether it was kept.
    pub fn offer(&mut self, x: &ColorAssignment, q: &QuantumMatrix<T>, fitness: usize) -> bool {
        let full = self.entries.len() == self.capacity;
        if full && self.worst_fitness().is_some_and(|w| fitness >= w) {
            return false;
        }
        if self
            .entries
            .iter()
            .any(|e| e.fitness == fitness && e.x == *x)
        {
            return false;
        }
        if full {
            self.entries.pop();
        }
        // After existing entries of equal fitness.
        let at = self.entries.partition_point(|e| e.fitness <= fitness);
        self.entries.insert(
            at,
            ArchiveEntry {
                x: x.clone(),
                q: q.clone(),
                fitness,
            },
        );
        true
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [ArchiveEntry<T>] {
        &mut self.entries
    }

    /// Re-evaluates every entry and restores the ordering.
    pub(crate) fn refresh(&mut self, g: &Graph) {
        for e in &mut self.entries {
            e.fitness = g.count_conflicts(e.x.colors());
        }
        self.entries.sort_by_key(|e| e.fitness);
    }
}
