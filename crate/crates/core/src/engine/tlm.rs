//! Two-level store of discovered node pairs.
//!
//! The first level holds the roots `(q, Z)`, the second level holds, per
//! root, the set `S_(q,Z)` of nodes reached by well-nested runs from it,
//! together with its push and pop summaries.

use std::collections::HashMap;
use std::hash::Hash;

use crate::model::{StateId, SymbolId, TransitionId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub usize);

/// Index of a node inside its root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

/// Why a root exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootOrigin {
    Start,
    /// First created by `transition` (a push) out of `caller_node` of `caller`.
    Push {
        caller: RootId,
        caller_node: NodeId,
        transition: TransitionId,
    },
}

/// The rule application that put a pair into `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Start,
    /// The self-pair of a root created by a push.
    Root,
    Internal {
        from: NodeId,
        transition: TransitionId,
    },
    /// `caller` (same root) pushes into `callee`, whose `callee_node` pops back.
    Pop {
        caller: NodeId,
        push: TransitionId,
        callee: RootId,
        callee_node: NodeId,
        pop: TransitionId,
    },
}

#[derive(Clone, Debug)]
pub struct Node<P> {
    pub state: StateId,
    pub payload: P,
    pub origin: Origin,
    live: bool,
}

impl<P> Node<P> {
    pub fn is_live(&self) -> bool {
        self.live
    }
}

/// A caller recorded in the push summary of the callee root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushEntry {
    pub caller: RootId,
    pub caller_node: NodeId,
    pub transition: TransitionId,
}

/// A pop successor recorded in the pop summary of the root it leaves.
#[derive(Clone, Debug)]
pub struct PopEntry<P> {
    pub state: StateId,
    pub payload: P,
    pub witness: NodeId,
    pub transition: TransitionId,
}

/// Lookup by key, either by hashing (exact domains) or by a linear scan
/// with a caller-supplied test.
#[derive(Clone, Debug)]
struct Index<K, P> {
    lists: HashMap<K, Vec<usize>>,
    exact: Option<HashMap<K, HashMap<P, usize>>>,
}

impl<K: Hash + Eq + Copy, P: Hash + Eq + Clone> Index<K, P> {
    fn new(exact: bool) -> Self {
        Index {
            lists: HashMap::new(),
            exact: exact.then(HashMap::new),
        }
    }

    fn find<'a>(
        &self,
        key: K,
        cand: &P,
        payload: impl Fn(usize) -> &'a P,
        test: impl Fn(&P, &P) -> bool,
    ) -> Option<usize>
    where
        P: 'a,
    {
        if let Some(ex) = &self.exact {
            return ex.get(&key)?.get(cand).copied();
        }
        self.lists
            .get(&key)?
            .iter()
            .copied()
            .find(|&i| test(cand, payload(i)))
    }

    fn insert(&mut self, key: K, p: &P, idx: usize) {
        self.lists.entry(key).or_default().push(idx);
        if let Some(ex) = &mut self.exact {
            ex.entry(key).or_default().insert(p.clone(), idx);
        }
    }

    fn remove(&mut self, key: K, p: &P, idx: usize) {
        if let Some(list) = self.lists.get_mut(&key) {
            list.retain(|&i| i != idx);
        }
        if let Some(ex) = &mut self.exact {
            if let Some(m) = ex.get_mut(&key) {
                if m.get(p) == Some(&idx) {
                    m.remove(p);
                }
            }
        }
    }

    fn list(&self, key: K) -> &[usize] {
        self.lists.get(&key).map_or(&[], Vec::as_slice)
    }
}

#[derive(Clone, Debug)]
pub struct Root<P> {
    pub state: StateId,
    pub payload: P,
    pub origin: RootOrigin,
    nodes: Vec<Node<P>>,
    node_index: Index<StateId, P>,
    pushes: HashMap<SymbolId, Vec<PushEntry>>,
    push_callers: HashMap<SymbolId, Vec<RootId>>,
    pops: HashMap<SymbolId, Vec<PopEntry<P>>>,
    pop_index: Index<(SymbolId, StateId), P>,
}

impl<P: Hash + Eq + Clone> Root<P> {
    /// All nodes ever added, including removed ones.
    pub fn nodes(&self) -> &[Node<P>] {
        &self.nodes
    }

    pub fn node(&self, n: NodeId) -> &Node<P> {
        &self.nodes[n.0]
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = (NodeId, &Node<P>)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.live)
            .map(|(i, n)| (NodeId(i), n))
    }

    /// Live nodes at `state`, in insertion order.
    pub fn nodes_at(&self, state: StateId) -> impl Iterator<Item = (NodeId, &Node<P>)> + '_ {
        self.node_index
            .list(state)
            .iter()
            .map(move |&i| (NodeId(i), &self.nodes[i]))
    }

    /// Push summary entries for `a`: callers whose push lands on this root.
    pub fn push_entries(&self, a: SymbolId) -> &[PushEntry] {
        self.pushes.get(&a).map_or(&[], Vec::as_slice)
    }

    /// Pop summary entries for `a`, in insertion order.
    pub fn pop_entries(&self, a: SymbolId) -> &[PopEntry<P>] {
        self.pops.get(&a).map_or(&[], Vec::as_slice)
    }

    pub fn pop_symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.pops.keys().copied()
    }

    pub fn push_symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.pushes.keys().copied()
    }
}

/// The store `TLM`.
#[derive(Clone, Debug)]
pub struct Tlm<P> {
    roots: Vec<Root<P>>,
    root_index: Index<StateId, P>,
    exact: bool,
    pairs_added: usize,
}

impl<P: Hash + Eq + Clone> Tlm<P> {
    /// An empty store. With `exact`, lookups hash payloads instead of
    /// scanning with the domain's comparison.
    pub fn new(exact: bool) -> Self {
        Tlm {
            roots: Vec::new(),
            root_index: Index::new(exact),
            exact,
            pairs_added: 0,
        }
    }

    pub fn roots(&self) -> &[Root<P>] {
        &self.roots
    }

    pub fn root(&self, r: RootId) -> &Root<P> {
        &self.roots[r.0]
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Successful `add` calls so far.
    pub fn pairs_added(&self) -> usize {
        self.pairs_added
    }

    pub fn live_pairs(&self) -> usize {
        self.roots.iter().map(|r| r.live_nodes().count()).sum()
    }

    pub fn node(&self, r: RootId, n: NodeId) -> &Node<P> {
        &self.roots[r.0].nodes[n.0]
    }

    pub fn is_live(&self, r: RootId, n: NodeId) -> bool {
        self.roots
            .get(r.0)
            .and_then(|root| root.nodes.get(n.0))
            .is_some_and(|node| node.live)
    }

    /// `isNewRoot`: an existing root at `state` whose payload passes `same`.
    pub fn find_root(
        &self,
        state: StateId,
        p: &P,
        same: impl Fn(&P, &P) -> bool,
    ) -> Option<RootId> {
        self.root_index
            .find(state, p, |i| &self.roots[i].payload, same)
            .map(RootId)
    }

    /// Roots at `state`, in creation order.
    pub fn roots_at(&self, state: StateId) -> impl Iterator<Item = RootId> + '_ {
        self.root_index.list(state).iter().map(|&i| RootId(i))
    }

    /// Creates a first-level entry. Its self-pair is added separately.
    pub fn create_root(&mut self, state: StateId, payload: P, origin: RootOrigin) -> RootId {
        let id = self.roots.len();
        self.root_index.insert(state, &payload, id);
        self.roots.push(Root {
            state,
            payload,
            origin,
            nodes: Vec::new(),
            node_index: Index::new(self.exact),
            pushes: HashMap::new(),
            push_callers: HashMap::new(),
            pops: HashMap::new(),
            pop_index: Index::new(self.exact),
        });
        RootId(id)
    }

    /// `isNewNode`: an existing node of `S_r` at `state` passing `covered`.
    pub fn find_node(
        &self,
        r: RootId,
        state: StateId,
        p: &P,
        covered: impl Fn(&P, &P) -> bool,
    ) -> Option<NodeId> {
        let root = &self.roots[r.0];
        root.node_index
            .find(state, p, |i| &root.nodes[i].payload, covered)
            .map(NodeId)
    }

    /// `add`: puts `[(r), (state, payload)]` into `S`.
    pub fn add(&mut self, r: RootId, state: StateId, payload: P, origin: Origin) -> NodeId {
        let root = &mut self.roots[r.0];
        let id = root.nodes.len();
        root.node_index.insert(state, &payload, id);
        root.nodes.push(Node {
            state,
            payload,
            origin,
            live: true,
        });
        self.pairs_added += 1;
        NodeId(id)
    }

    /// Deletes a pair from `S`. Only meant for checking the fixed-point test.
    pub fn remove_pair(&mut self, r: RootId, n: NodeId) {
        let root = &mut self.roots[r.0];
        let node = &mut root.nodes[n.0];
        if node.live {
            node.live = false;
            let (state, payload) = (node.state, node.payload.clone());
            root.node_index.remove(state, &payload, n.0);
        }
    }

    /// `isNewPush` is the negation of this exact membership test.
    pub fn has_push(&self, callee: RootId, a: SymbolId, caller: RootId) -> bool {
        self.roots[callee.0]
            .push_callers
            .get(&a)
            .is_some_and(|v| v.contains(&caller))
    }

    /// `addPush`, stored with the destination root.
    pub fn add_push(&mut self, callee: RootId, a: SymbolId, entry: PushEntry) {
        let root = &mut self.roots[callee.0];
        root.push_callers.entry(a).or_default().push(entry.caller);
        root.pushes.entry(a).or_default().push(entry);
    }

    /// `isNewPop`: an existing pop entry of `r` for `(a, state)` passing `covered`.
    pub fn find_pop(
        &self,
        r: RootId,
        a: SymbolId,
        state: StateId,
        p: &P,
        covered: impl Fn(&P, &P) -> bool,
    ) -> Option<usize> {
        let root = &self.roots[r.0];
        let pops = root.pops.get(&a)?;
        root.pop_index
            .find((a, state), p, |i| &pops[i].payload, covered)
    }

    /// `addPop`, stored with the source root.
    pub fn add_pop(&mut self, r: RootId, a: SymbolId, entry: PopEntry<P>) {
        let root = &mut self.roots[r.0];
        let list = root.pops.entry(a).or_default();
        root.pop_index
            .insert((a, entry.state), &entry.payload, list.len());
        list.push(entry);
    }

    /// `iterPop`: number of pop entries, for index-based snapshot iteration.
    pub fn pop_len(&self, r: RootId, a: SymbolId) -> usize {
        self.roots[r.0].pop_entries(a).len()
    }

    pub fn pop_entry(&self, r: RootId, a: SymbolId, k: usize) -> &PopEntry<P> {
        &self.roots[r.0].pops[&a][k]
    }

    /// `iterPush`: number of push entries, for index-based snapshot iteration.
    pub fn push_len(&self, r: RootId, a: SymbolId) -> usize {
        self.roots[r.0].push_entries(a).len()
    }

    pub fn push_entry(&self, r: RootId, a: SymbolId, k: usize) -> PushEntry {
        self.roots[r.0].pushes[&a][k]
    }

    /// `iterPop` as an owned snapshot.
    pub fn iter_pop(&self, r: RootId, a: SymbolId) -> Vec<(StateId, P)> {
        self.roots
            .get(r.0)
            .map(|root| {
                root.pop_entries(a)
                    .iter()
                    .map(|e| (e.state, e.payload.clone()))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// `iterPush` as an owned snapshot of caller roots.
    pub fn iter_push(&self, a: SymbolId, r: RootId) -> Vec<RootId> {
        self.roots
            .get(r.0)
            .map(|root| root.push_entries(a).iter().map(|e| e.caller).collect())
            .unwrap_or_default()
    }

    pub fn push_summary_len(&self) -> usize {
        self.roots
            .iter()
            .map(|r| r.pushes.values().map(Vec::len).sum::<usize>())
            .sum()
    }

    pub fn pop_summary_len(&self) -> usize {
        self.roots
            .iter()
            .map(|r| r.pops.values().map(Vec::len).sum::<usize>())
            .sum()
    }
}
