use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use crate::model::{PdtaModel, StackOp, StateId, SymbolId, Transition, TransitionId};

use super::domain::NodeDomain;
use super::tlm::{NodeId, Origin, PopEntry, PushEntry, RootId, RootOrigin, Tlm};
use super::{EngineConfig, EngineError, Order, ReachResult, Stats};

/// A finished run together with the store it built.
#[derive(Clone, Debug)]
pub struct Exploration<P> {
    pub result: ReachResult,
    pub tlm: Tlm<P>,
}

const MAX_REPORTED: usize = 64;

/// Saturates the rules with domain `d`, following the worklist algorithm:
/// nop successors go through `isNewNode`, push successors find or create
/// their root and are matched against its recorded pops, and pop successors
/// are recorded once (`isNewPop`) and matched against the recorded pushes.
pub fn explore<D: NodeDomain>(
    m: &PdtaModel,
    d: &D,
    cfg: &EngineConfig,
) -> Result<Exploration<D::Payload>, EngineError> {
    let start = Instant::now();
    let deadline = cfg.timeout.map(|t| start + t);
    let mut ex = Explorer {
        m,
        d,
        tlm: Tlm::new(d.is_exact()),
        todo: VecDeque::new(),
        check: cfg.check_invariants,
        violations: Vec::new(),
        stop_early: cfg.stop_early,
        found: false,
    };

    let q0 = m.initial();
    let z0 = d.initial();
    let r0 = ex.tlm.create_root(q0, z0.clone(), RootOrigin::Start);
    ex.add(r0, q0, z0, Origin::Start);

    let mut succs = Vec::new();
    let mut iterations = 0usize;
    while !ex.found {
        if ex.check {
            ex.check_worklist();
        }
        let next = match cfg.order {
            Order::Lifo => ex.todo.pop_back(),
            Order::Fifo => ex.todo.pop_front(),
        };
        let Some((r, n)) = next else { break };
        iterations += 1;
        if iterations.is_multiple_of(256) {
            if let Some(deadline) = deadline {
                if Instant::now() >= deadline {
                    return Err(EngineError::Timeout {
                        elapsed: start.elapsed(),
                        pairs_added: ex.tlm.pairs_added(),
                    });
                }
            }
        }
        let node = ex.tlm.node(r, n);
        let (state, payload) = (node.state, node.payload.clone());
        for t in m.outgoing(state) {
            succs.clear();
            d.successors(&payload, t, &mut succs);
            for z in succs.drain(..) {
                match t.op {
                    StackOp::Nop => ex.internal(r, n, t, z),
                    StackOp::Push(a) => ex.push(r, n, t, a, z),
                    StackOp::Pop(a) => ex.pop(r, n, t, a, z),
                }
                if ex.found {
                    break;
                }
            }
            if ex.found {
                break;
            }
        }
    }

    let reachable: BTreeSet<StateId> = ex.tlm.root(r0).live_nodes().map(|(_, n)| n.state).collect();
    let result = ReachResult {
        nonempty: m.finals().any(|q| reachable.contains(&q)),
        reachable,
        stats: Stats {
            pairs_added: ex.tlm.pairs_added(),
            roots: ex.tlm.root_count(),
            push_entries: ex.tlm.push_summary_len(),
            pop_entries: ex.tlm.pop_summary_len(),
            iterations,
            elapsed: start.elapsed(),
        },
        unsound: !d.is_sound(),
        violations: ex.violations,
        fixed_point: None,
        stopped_early: ex.found,
    };
    Ok(Exploration {
        result,
        tlm: ex.tlm,
    })
}

struct Explorer<'a, D: NodeDomain> {
    m: &'a PdtaModel,
    d: &'a D,
    tlm: Tlm<D::Payload>,
    todo: VecDeque<(RootId, NodeId)>,
    check: bool,
    violations: Vec<String>,
    stop_early: bool,
    found: bool,
}

impl<D: NodeDomain> Explorer<'_, D> {
    fn covered(&self) -> impl Fn(&D::Payload, &D::Payload) -> bool + '_ {
        |a, b| self.d.covered(a, b)
    }

    /// `add` followed by `ToDo.add`.
    fn add(&mut self, r: RootId, state: StateId, z: D::Payload, origin: Origin) {
        let n = self.tlm.add(r, state, z, origin);
        if self.check {
            self.check_derivation(r, n);
        }
        self.todo.push_back((r, n));
        if self.stop_early && r == RootId(0) && self.m.is_final(state) {
            self.found = true;
        }
    }

    fn is_new_node(&self, r: RootId, state: StateId, z: &D::Payload) -> bool {
        self.tlm.find_node(r, state, z, self.covered()).is_none()
    }

    fn internal(&mut self, r: RootId, n: NodeId, t: &Transition, z: D::Payload) {
        if self.is_new_node(r, t.tgt, &z) {
            let origin = Origin::Internal {
                from: n,
                transition: t.id,
            };
            self.add(r, t.tgt, z, origin);
        }
    }

    fn push(&mut self, r: RootId, n: NodeId, t: &Transition, a: SymbolId, z: D::Payload) {
        let existing = self.tlm.find_root(t.tgt, &z, |c, e| self.d.same_root(c, e));
        let callee = match existing {
            Some(r1) => r1,
            None => {
                let origin = RootOrigin::Push {
                    caller: r,
                    caller_node: n,
                    transition: t.id,
                };
                let r1 = self.tlm.create_root(t.tgt, z.clone(), origin);
                self.add(r1, t.tgt, z, Origin::Root);
                r1
            }
        };
        if self.tlm.has_push(callee, a, r) {
            return;
        }
        let entry = PushEntry {
            caller: r,
            caller_node: n,
            transition: t.id,
        };
        self.tlm.add_push(callee, a, entry);
        if self.check {
            self.check_push_entry(callee, a, entry);
        }
        for k in 0..self.tlm.pop_len(callee, a) {
            let e = self.tlm.pop_entry(callee, a, k);
            if !self.is_new_node(r, e.state, &e.payload) {
                continue;
            }
            let (state, z2) = (e.state, e.payload.clone());
            let origin = Origin::Pop {
                caller: n,
                push: t.id,
                callee,
                callee_node: e.witness,
                pop: e.transition,
            };
            self.add(r, state, z2, origin);
            if self.found {
                return;
            }
        }
    }

    fn pop(&mut self, r: RootId, n: NodeId, t: &Transition, a: SymbolId, z: D::Payload) {
        if self.tlm.find_pop(r, a, t.tgt, &z, self.covered()).is_some() {
            return;
        }
        self.tlm.add_pop(
            r,
            a,
            PopEntry {
                state: t.tgt,
                payload: z.clone(),
                witness: n,
                transition: t.id,
            },
        );
        if self.check {
            self.check_pop_entry(r, a, self.tlm.pop_len(r, a) - 1);
        }
        for k in 0..self.tlm.push_len(r, a) {
            let p = self.tlm.push_entry(r, a, k);
            if !self.is_new_node(p.caller, t.tgt, &z) {
                continue;
            }
            let origin = Origin::Pop {
                caller: p.caller_node,
                push: p.transition,
                callee: r,
                callee_node: n,
                pop: t.id,
            };
            self.add(p.caller, t.tgt, z.clone(), origin);
            if self.found {
                return;
            }
        }
    }

    fn violation(&mut self, msg: String) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(msg);
        }
    }

    /// Every worklist entry names a pair already in `S`.
    fn check_worklist(&mut self) {
        let bad = self
            .todo
            .iter()
            .find(|&&(r, n)| !self.tlm.is_live(r, n))
            .copied();
        if let Some((r, n)) = bad {
            self.violation(format!("worklist entry ({}, {}) is not in S", r.0, n.0));
        }
    }

    /// Does some successor of the live node `(r, n)` through `t` equal `z`?
    fn derives(&self, r: RootId, n: NodeId, t: TransitionId, z: &D::Payload) -> bool {
        self.successor_matches(r, n, t, |s| s == z)
    }

    fn successor_matches(
        &self,
        r: RootId,
        n: NodeId,
        t: TransitionId,
        pred: impl Fn(&D::Payload) -> bool,
    ) -> bool {
        if !self.tlm.is_live(r, n) {
            return false;
        }
        let node = self.tlm.node(r, n);
        let t = self.m.transition(t);
        if t.src != node.state {
            return false;
        }
        let mut out = Vec::new();
        self.d.successors(&node.payload, t, &mut out);
        out.iter().any(pred)
    }

    /// One rule application from the pairs present before `(r, n)` yields it.
    fn check_derivation(&mut self, r: RootId, n: NodeId) {
        let node = self.tlm.node(r, n);
        let (state, z, origin) = (node.state, node.payload.clone(), node.origin);
        let root = self.tlm.root(r);
        let ok = match origin {
            Origin::Start => {
                r == RootId(0)
                    && n == NodeId(0)
                    && state == self.m.initial()
                    && z == self.d.initial()
            }
            Origin::Root => match root.origin {
                RootOrigin::Start => false,
                RootOrigin::Push {
                    caller,
                    caller_node,
                    transition,
                } => {
                    n == NodeId(0)
                        && state == root.state
                        && z == root.payload
                        && matches!(self.m.transition(transition).op, StackOp::Push(_))
                        && self.m.transition(transition).tgt == state
                        && self.derives(caller, caller_node, transition, &z)
                }
            },
            Origin::Internal { from, transition } => {
                let t = self.m.transition(transition);
                from < n
                    && t.op == StackOp::Nop
                    && t.tgt == state
                    && self.derives(r, from, transition, &z)
            }
            Origin::Pop {
                caller,
                push,
                callee,
                callee_node,
                pop,
            } => {
                let (tp, tq) = (self.m.transition(push), self.m.transition(pop));
                let symbols_match = match (tp.op, tq.op) {
                    (StackOp::Push(a), StackOp::Pop(b)) => a == b,
                    _ => false,
                };
                let callee_root = self.tlm.root(callee);
                symbols_match
                    && caller < n
                    && tp.tgt == callee_root.state
                    && tq.tgt == state
                    && self.successor_matches(r, caller, push, |s| {
                        self.d.same_root(s, &callee_root.payload)
                    })
                    && self.derives(callee, callee_node, pop, &z)
            }
        };
        if !ok {
            self.violation(format!(
                "pair ({}, {}) at state {} is not derivable by one rule ({origin:?})",
                r.0,
                n.0,
                self.m.state_name(state)
            ));
        }
    }

    /// A pop entry is witnessed by a pair of the same root and a pop edge.
    fn check_pop_entry(&mut self, r: RootId, a: SymbolId, k: usize) {
        let e = self.tlm.pop_entry(r, a, k);
        let t = self.m.transition(e.transition);
        let ok = t.op == StackOp::Pop(a)
            && t.tgt == e.state
            && self.derives(r, e.witness, e.transition, &e.payload);
        if !ok {
            self.violation(format!("pop entry {k} of root {} lacks a witness", r.0));
        }
    }

    /// A push entry links a caller pair to a root equivalent to its push successor.
    fn check_push_entry(&mut self, callee: RootId, a: SymbolId, e: PushEntry) {
        let root = self.tlm.root(callee);
        let t = self.m.transition(e.transition);
        let self_pair = root
            .nodes()
            .first()
            .is_some_and(|n| n.is_live() && n.state == root.state && n.payload == root.payload);
        let ok = t.op == StackOp::Push(a)
            && t.tgt == root.state
            && self_pair
            && self.successor_matches(e.caller, e.caller_node, e.transition, |s| {
                self.d.same_root(s, &root.payload)
            });
        if !ok {
            self.violation(format!(
                "push entry from root {} into root {} lacks a witness",
                e.caller.0, callee.0
            ));
        }
    }
}
