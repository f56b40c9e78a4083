//! Dense bit-indexed node sets.
//!
//! Every closure and enumeration operation trades in subsets of graph nodes,
//! so they are packed into a single `u64`. Graphs are capped at 64 nodes.

/// Maximum number of nodes a [`NodeSet`] can index.
pub const MAX_NODES: usize = 64;

/// A subset of the nodes `0..n` of some owning graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> NodeSet {
        assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(!0)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> NodeSet {
        assert!(i < MAX_NODES);
        NodeSet(1u64 << i)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> NodeSet {
        let mut s = NodeSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_NODES && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_NODES);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersect(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn minus(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Iterate members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All proper subsets, largest mask first, excluding `self`.
    pub fn proper_subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut sub = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            sub = (sub.wrapping_sub(1)) & full;
            if sub == 0 {
                done = true;
            }
            Some(NodeSet(sub))
        })
    }

    /// Render as `{a,b,c}` with 1-based ids, the collection wire format.
    pub fn to_display_1based(self) -> String {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl std::fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NodeSet{}", self.to_display_1based())
    }
}
