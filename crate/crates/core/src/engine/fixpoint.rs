use std::collections::{BTreeMap, BTreeSet};

use crate::model::{PdtaModel, StackOp, StateId, SymbolId};

use super::domain::NodeDomain;
use super::tlm::{RootId, Tlm};

/// Re-applies every rule premise found in the pairs of `tlm` and checks that
/// each conclusion is already present, up to the domain's tests.
///
/// Only the pair sets are consulted: which roots a push lands on and which
/// callers a pop returns to are recomputed from scratch, so a damaged or
/// incomplete summary cannot hide a missing pair.
pub fn verify_fixed_point<D: NodeDomain>(m: &PdtaModel, tlm: &Tlm<D::Payload>, d: &D) -> bool {
    let covered = |r: RootId, q: StateId, z: &D::Payload| {
        tlm.root(r)
            .nodes_at(q)
            .any(|(_, n)| d.covered(z, &n.payload))
    };

    // Start rule.
    let z0 = d.initial();
    let Some(r0) = tlm.roots().first() else {
        return false;
    };
    if r0.state != m.initial() || r0.payload != z0 || !covered(RootId(0), m.initial(), &z0) {
        return false;
    }

    // Internal and Push rules; collect who pushes into which root.
    let mut callers: BTreeMap<(RootId, SymbolId), BTreeSet<RootId>> = BTreeMap::new();
    let mut succs = Vec::new();
    for (ri, root) in tlm.roots().iter().enumerate() {
        let r = RootId(ri);
        for (_, node) in root.live_nodes() {
            for t in m.outgoing(node.state) {
                succs.clear();
                d.successors(&node.payload, t, &mut succs);
                for z in &succs {
                    match t.op {
                        StackOp::Nop => {
                            if !covered(r, t.tgt, z) {
                                return false;
                            }
                        }
                        StackOp::Push(a) => {
                            let Some(r1) = tlm
                                .roots_at(t.tgt)
                                .find(|&r1| d.same_root(z, &tlm.root(r1).payload))
                            else {
                                return false;
                            };
                            let target = tlm.root(r1);
                            if !covered(r1, target.state, &target.payload) {
                                return false;
                            }
                            callers.entry((r1, a)).or_default().insert(r);
                        }
                        StackOp::Pop(_) => {}
                    }
                }
            }
        }
    }

    // Pop rule: every pop successor inside a root returns to each caller.
    for (ri, root) in tlm.roots().iter().enumerate() {
        let r1 = RootId(ri);
        for (_, node) in root.live_nodes() {
            for t in m.outgoing(node.state) {
                let StackOp::Pop(a) = t.op else { continue };
                let Some(cs) = callers.get(&(r1, a)) else {
                    continue;
                };
                succs.clear();
                d.successors(&node.payload, t, &mut succs);
                for z in &succs {
                    if cs.iter().any(|&c| !covered(c, t.tgt, z)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
