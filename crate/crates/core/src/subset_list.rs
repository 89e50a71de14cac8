//! Ordered subset list: a subset of a fixed, strictly ascending ground
//! sequence with constant-time deletion and LIFO undo.
//!
//! The live elements form a doubly-linked list threaded through two index
//! arrays. A deleted node keeps its `prev`/`next` links, so as long as undos
//! happen in reverse order of deletions it can be spliced back into exactly
//! the position it left.

/// Subset of a fixed ascending sequence of `u32` values.
///
/// Elements are addressed by their *position* in the ground sequence, which
/// doubles as the index into the link arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSubsetList {
    values: Vec<u32>,
    // Index `values.len()` is the sentinel head.
    prev: Vec<u32>,
    next: Vec<u32>,
    deleted: Vec<u32>,
    len: usize,
}

impl OrderedSubsetList {
    /// Builds the full subset over `values`, which must be strictly ascending.
    pub fn new(values: Vec<u32>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        let n = values.len();
        let head = n as u32;
        // Node i links to i - 1 and i + 1, wrapping through the sentinel.
        let prev = (0..=n)
            .map(|i| if i == 0 { head } else { i as u32 - 1 })
            .collect();
        let next = (0..=n)
            .map(|i| if i == n { 0 } else { i as u32 + 1 })
            .collect();
        Self {
            values,
            prev,
            next,
            deleted: Vec::new(),
            len: n,
        }
    }

    /// Identity ground sequence `0..n`, so positions equal values.
    pub fn full(n: usize) -> Self {
        Self::new((0..n as u32).collect())
    }

    #[inline]
    fn head(&self) -> u32 {
        self.values.len() as u32
    }

    /// Number of live elements.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the ground sequence.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.values.len()
    }

    /// Value stored at ground position `pos`, live or not.
    #[inline]
    pub fn value(&self, pos: usize) -> u32 {
        self.values[pos]
    }

    /// Removes the element at ground position `pos`. The element must be live.
    #[inline]
    pub fn delete(&mut self, pos: usize) {
        debug_assert!(pos < self.values.len());
        let p = self.prev[pos] as usize;
        let n = self.next[pos] as usize;
        self.next[p] = n as u32;
        self.prev[n] = p as u32;
        self.deleted.push(pos as u32);
        self.len -= 1;
    }

    /// Reinserts the most recently deleted element that is not yet restored.
    /// Returns its ground position.
    ///
    /// Panics if nothing is deleted.
    #[inline]
    pub fn undo(&mut self) -> usize {
        let pos = self.deleted.pop().expect("undo without a matching delete") as usize;
        let p = self.prev[pos] as usize;
        let n = self.next[pos] as usize;
        self.next[p] = pos as u32;
        self.prev[n] = pos as u32;
        self.len += 1;
        pos
    }

    /// Number of deletions not yet undone.
    pub fn num_deleted(&self) -> usize {
        self.deleted.len()
    }

    /// Live element with the smallest value, as `(position, value)`.
    #[inline]
    pub fn first(&self) -> Option<(usize, u32)> {
        let pos = self.next[self.head() as usize];
        (pos != self.head()).then(|| (pos as usize, self.values[pos as usize]))
    }

    /// Live values in ascending order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        self.iter_positions().map(move |pos| self.values[pos])
    }

    /// Live values in descending order.
    pub fn iter_rev(&self) -> impl Iterator<Item = u32> + '_ {
        self.iter().rev()
    }

    /// Ground positions of live elements, ascending.
    pub fn iter_positions(&self) -> Positions<'_> {
        let head = self.head();
        Positions {
            list: self,
            front: self.next[head as usize],
            back: self.prev[head as usize],
            remaining: self.len,
        }
    }

    /// Pairs `(position, value)` of live elements, ascending.
    pub fn iter_entries(&self) -> impl DoubleEndedIterator<Item = (usize, u32)> + '_ {
        self.iter_positions()
            .map(move |pos| (pos, self.values[pos]))
    }
}

/// Iterator over live ground positions of an [`OrderedSubsetList`].
pub struct Positions<'a> {
    list: &'a OrderedSubsetList,
    front: u32,
    back: u32,
    remaining: usize,
}

impl Iterator for Positions<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.remaining == 0 {
            return None;
        }
        let pos = self.front as usize;
        self.front = self.list.next[pos];
        self.remaining -= 1;
        Some(pos)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl DoubleEndedIterator for Positions<'_> {
    #[inline]
    fn next_back(&mut self) -> Option<usize> {
        if self.remaining == 0 {
            return None;
        }
        let pos = self.back as usize;
        self.back = self.list.prev[pos];
        self.remaining -= 1;
        Some(pos)
    }
}

impl ExactSizeIterator for Positions<'_> {}
