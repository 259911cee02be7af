//! Exact feasibility of a given edge sequence.

use thiserror::Error;

use crate::model::{PdtaModel, StackOp, SymbolId, TransitionId};
use crate::zone::Dbm;
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("line {line}: `{text}` is not a transition index")]
    Syntax { line: usize, text: String },
    #[error("step {step}: no transition #{id}")]
    UnknownTransition { step: usize, id: usize },
    #[error("step 0: transition #{id} does not leave the initial state")]
    NotInitial { id: usize },
    #[error("step {step}: transition #{id} does not start where the previous one ended")]
    NotChained { step: usize, id: usize },
    #[error("transition #{id} has a constant outside the zone range")]
    ScalarRange { id: usize },
}

/// How a replay ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub feasible: bool,
    /// Steps executed before the run became infeasible (all of them if feasible).
    pub steps: usize,
    /// Stack after the last executed step, bottom first.
    pub stack: Vec<SymbolId>,
    /// Exact zone after the last executed step.
    pub zone: Dbm<Scalar>,
}

/// Reads newline-separated decimal transition indices; blank lines and
/// `#` comments are skipped.
pub fn parse_trace(text: &str) -> Result<Vec<TransitionId>, ReplayError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let id = body.parse::<usize>().map_err(|_| ReplayError::Syntax {
            line: i + 1,
            text: body.to_string(),
        })?;
        out.push(TransitionId(id));
    }
    Ok(out)
}

/// Whether some choice of delays realizes `trace` with a valid stack: every
/// pop must match the top symbol and every zone along the way must be nonempty.
/// The stack need not be empty at the end.
pub fn replay_trace(m: &PdtaModel, trace: &[TransitionId]) -> Result<bool, ReplayError> {
    replay_detailed(m, trace).map(|o| o.feasible)
}

pub fn replay_detailed(
    m: &PdtaModel,
    trace: &[TransitionId],
) -> Result<ReplayOutcome, ReplayError> {
    let mut at = m.initial();
    for (step, &id) in trace.iter().enumerate() {
        let t = m
            .transitions()
            .get(id.0)
            .ok_or(ReplayError::UnknownTransition { step, id: id.0 })?;
        if t.src != at {
            return Err(if step == 0 {
                ReplayError::NotInitial { id: id.0 }
            } else {
                ReplayError::NotChained { step, id: id.0 }
            });
        }
        at = t.tgt;
    }

    let mut zone = Dbm::<Scalar>::initial(m.clock_count());
    let mut stack = Vec::new();
    for (step, &id) in trace.iter().enumerate() {
        let t = m.transition(id);
        let stuck = |zone, stack| ReplayOutcome {
            feasible: false,
            steps: step,
            stack,
            zone,
        };
        match t.op {
            StackOp::Nop => {}
            StackOp::Push(a) => stack.push(a),
            StackOp::Pop(a) => {
                if stack.last() != Some(&a) {
                    return Ok(stuck(zone, stack));
                }
                stack.pop();
            }
        }
        let guard = t
            .guard
            .constraints::<Scalar>()
            .ok_or(ReplayError::ScalarRange { id: id.0 })?;
        let next = zone.successor(&guard, &t.reset_indices());
        if next.is_empty() {
            return Ok(stuck(zone, stack));
        }
        zone = next;
    }
    Ok(ReplayOutcome {
        feasible: true,
        steps: trace.len(),
        stack,
        zone,
    })
}
