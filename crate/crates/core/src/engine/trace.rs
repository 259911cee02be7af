//! Run reconstruction from the provenance recorded with each pair.

use crate::model::{PdtaModel, StateId, TransitionId};

use super::tlm::{NodeId, Origin, RootId, RootOrigin, Tlm};

enum Step {
    Path(RootId, NodeId),
    Emit(TransitionId),
}

/// Edge sequence of a well-nested run from root `r` to its pair `n`.
///
/// Every origin refers to pairs added strictly earlier, so the expansion
/// terminates. It is done with an explicit stack since runs can be long.
pub fn well_nested_path<P>(tlm: &Tlm<P>, r: RootId, n: NodeId) -> Vec<TransitionId>
where
    P: std::hash::Hash + Eq + Clone,
{
    let mut out = Vec::new();
    let mut stack = vec![Step::Path(r, n)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Emit(t) => out.push(t),
            Step::Path(r, n) => match tlm.node(r, n).origin {
                Origin::Start | Origin::Root => {}
                Origin::Internal { from, transition } => {
                    stack.push(Step::Emit(transition));
                    stack.push(Step::Path(r, from));
                }
                Origin::Pop {
                    caller,
                    push,
                    callee,
                    callee_node,
                    pop,
                } => {
                    stack.push(Step::Emit(pop));
                    stack.push(Step::Path(callee, callee_node));
                    stack.push(Step::Emit(push));
                    stack.push(Step::Path(r, caller));
                }
            },
        }
    }
    out
}

/// Edge sequence from the initial configuration to the entry of root `r`,
/// leaving one stack symbol per pending push.
pub fn root_access<P>(tlm: &Tlm<P>, r: RootId) -> Vec<TransitionId>
where
    P: std::hash::Hash + Eq + Clone,
{
    let mut segments = Vec::new();
    let mut cur = r;
    while let RootOrigin::Push {
        caller,
        caller_node,
        transition,
    } = tlm.root(cur).origin
    {
        let mut seg = well_nested_path(tlm, caller, caller_node);
        seg.push(transition);
        segments.push(seg);
        cur = caller;
    }
    segments.into_iter().rev().flatten().collect()
}

/// A run reaching `q` with an empty stack, if `q` occurs under the initial root.
pub fn witness<P>(m: &PdtaModel, tlm: &Tlm<P>, q: StateId) -> Option<Vec<TransitionId>>
where
    P: std::hash::Hash + Eq + Clone,
{
    debug_assert!(q.0 < m.state_count());
    let r0 = RootId(0);
    let (n, _) = tlm.roots().first()?.nodes_at(q).next()?;
    Some(well_nested_path(tlm, r0, n))
}
