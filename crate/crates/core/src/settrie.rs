//! Set trie over strictly ascending `u32` sets with subset/superset
//! existence queries.

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Node {
    // Sorted by label.
    children: Vec<(u32, u32)>,
    terminal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetTrie {
    nodes: Vec<Node>,
    num_sets: usize,
}

impl Default for SetTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl SetTrie {
    pub fn new() -> Self {
        Self {
            nodes: vec![Node::default()],
            num_sets: 0,
        }
    }

    /// Number of distinct sets stored.
    pub fn len(&self) -> usize {
        self.num_sets
    }

    pub fn is_empty(&self) -> bool {
        self.num_sets == 0
    }

    fn child(&self, node: usize, label: u32) -> Option<usize> {
        let children = &self.nodes[node].children;
        children
            .binary_search_by_key(&label, |&(l, _)| l)
            .ok()
            .map(|i| children[i].1 as usize)
    }

    /// Stores `set`, which must be strictly ascending.
    pub fn add(&mut self, set: &[u32]) {
        assert!(
            set.windows(2).all(|w| w[0] < w[1]),
            "set trie input must be strictly ascending"
        );
        let mut node = 0;
        for &x in set {
            node = match self.nodes[node]
                .children
                .binary_search_by_key(&x, |&(l, _)| l)
            {
                Ok(i) => self.nodes[node].children[i].1 as usize,
                Err(i) => {
                    let id = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[node].children.insert(i, (x, id as u32));
                    id
                }
            };
        }
        if !self.nodes[node].terminal {
            self.nodes[node].terminal = true;
            self.num_sets += 1;
        }
    }

    /// Whether the trie holds a set that is a subset of `set`.
    pub fn has_subset(&self, set: &[u32]) -> bool {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        self.subset_from(0, set)
    }

    fn subset_from(&self, node: usize, rest: &[u32]) -> bool {
        if self.nodes[node].terminal {
            return true;
        }
        let children = &self.nodes[node].children;
        if children.is_empty() {
            return false;
        }
        // Children and `rest` are both ascending: walk them in step.
        let mut ci = 0;
        for (i, &x) in rest.iter().enumerate() {
            while ci < children.len() && children[ci].0 < x {
                ci += 1;
            }
            if ci == children.len() {
                return false;
            }
            if children[ci].0 == x && self.subset_from(children[ci].1 as usize, &rest[i + 1..]) {
                return true;
            }
        }
        false
    }

    /// Whether the trie holds a set that is a superset of `set`.
    pub fn has_superset(&self, set: &[u32]) -> bool {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        self.superset_from(0, set)
    }

    fn superset_from(&self, node: usize, rest: &[u32]) -> bool {
        let Some((&x, tail)) = rest.split_first() else {
            // Every node lies on the path of some stored set.
            return self.nodes[node].terminal || !self.nodes[node].children.is_empty();
        };
        for &(label, child) in &self.nodes[node].children {
            if label > x {
                break;
            }
            let next = if label == x { tail } else { rest };
            if self.superset_from(child as usize, next) {
                return true;
            }
        }
        false
    }

    /// Whether exactly `set` is stored.
    pub fn contains(&self, set: &[u32]) -> bool {
        let mut node = 0;
        for &x in set {
            match self.child(node, x) {
                Some(c) => node = c,
                None => return false,
            }
        }
        self.nodes[node].terminal
    }
}
