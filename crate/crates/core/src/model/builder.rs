use std::collections::HashMap;

use thiserror::Error;

use super::{
    Atom, ClockId, Comparison, Guard, PdtaModel, StackOp, StateDecl, StateId, SymbolId, Transition,
    TransitionId,
};

/// Name-resolution and well-formedness failures while assembling a model.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },
    #[error("duplicate declaration of {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("no initial state declared")]
    NoInitial,
    #[error("second initial state `{second}` (first was `{first}`)")]
    MultipleInitial { first: String, second: String },
    #[error("edge names process `{found}` but the system is `{expected}`")]
    SystemMismatch { expected: String, found: String },
}

/// A guard atom by clock name, used by [`ModelBuilder::edge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomSpec {
    Clock(String, Comparison, i64),
    Diagonal(String, String, Comparison, i64),
}

/// Incremental, name-based construction of a [`PdtaModel`].
///
/// Declarations must precede their uses, mirroring the text format.
#[derive(Clone, Debug, Default)]
pub struct ModelBuilder {
    name: String,
    clocks: Vec<String>,
    clock_ix: HashMap<String, ClockId>,
    states: Vec<StateDecl>,
    state_ix: HashMap<String, StateId>,
    symbols: Vec<String>,
    symbol_ix: HashMap<String, SymbolId>,
    transitions: Vec<Transition>,
}

impl ModelBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        ModelBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn clock(&mut self, name: &str) -> Result<ClockId, ModelError> {
        declare(&mut self.clocks, &mut self.clock_ix, "clock", name, ClockId)
    }

    pub fn state(
        &mut self,
        name: &str,
        initial: bool,
        accepting: bool,
    ) -> Result<StateId, ModelError> {
        if self.state_ix.contains_key(name) {
            return Err(dup("state", name));
        }
        if initial {
            if let Some(first) = self.states.iter().find(|s| s.initial) {
                return Err(ModelError::MultipleInitial {
                    first: first.name.clone(),
                    second: name.to_string(),
                });
            }
        }
        let id = StateId(self.states.len());
        self.states.push(StateDecl {
            name: name.to_string(),
            initial,
            accepting,
        });
        self.state_ix.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn symbol(&mut self, name: &str) -> Result<SymbolId, ModelError> {
        declare(
            &mut self.symbols,
            &mut self.symbol_ix,
            "symbol",
            name,
            SymbolId,
        )
    }

    pub fn clock_id(&self, name: &str) -> Result<ClockId, ModelError> {
        lookup(&self.clock_ix, "clock", name)
    }

    pub fn state_id(&self, name: &str) -> Result<StateId, ModelError> {
        lookup(&self.state_ix, "state", name)
    }

    pub fn symbol_id(&self, name: &str) -> Result<SymbolId, ModelError> {
        lookup(&self.symbol_ix, "symbol", name)
    }

    /// Adds an edge. `op` is `None` for nop, otherwise `(is_push, symbol)`.
    pub fn edge(
        &mut self,
        src: &str,
        tgt: &str,
        label: &str,
        guard: &[AtomSpec],
        resets: &[&str],
        op: Option<(bool, &str)>,
    ) -> Result<TransitionId, ModelError> {
        let src = self.state_id(src)?;
        let tgt = self.state_id(tgt)?;
        let atoms = guard
            .iter()
            .map(|a| self.resolve_atom(a))
            .collect::<Result<Vec<_>, _>>()?;
        let resets = resets
            .iter()
            .map(|c| self.clock_id(c))
            .collect::<Result<Vec<_>, _>>()?;
        let op = match op {
            None => StackOp::Nop,
            Some((true, a)) => StackOp::Push(self.symbol_id(a)?),
            Some((false, a)) => StackOp::Pop(self.symbol_id(a)?),
        };
        Ok(self.push_transition(src, tgt, label.to_string(), Guard(atoms), op, resets))
    }

    pub(super) fn push_transition(
        &mut self,
        src: StateId,
        tgt: StateId,
        label: String,
        guard: Guard,
        op: StackOp,
        resets: Vec<ClockId>,
    ) -> TransitionId {
        let id = TransitionId(self.transitions.len());
        self.transitions.push(Transition {
            id,
            src,
            tgt,
            label,
            guard,
            op,
            resets,
        });
        id
    }

    fn resolve_atom(&self, a: &AtomSpec) -> Result<Atom, ModelError> {
        Ok(match a {
            AtomSpec::Clock(x, cmp, c) => Atom::Clock {
                clock: self.clock_id(x)?,
                cmp: *cmp,
                constant: *c,
            },
            AtomSpec::Diagonal(x, y, cmp, c) => Atom::Diagonal {
                left: self.clock_id(x)?,
                right: self.clock_id(y)?,
                cmp: *cmp,
                constant: *c,
            },
        })
    }

    pub fn build(self) -> Result<PdtaModel, ModelError> {
        let initial = self
            .states
            .iter()
            .position(|s| s.initial)
            .map(StateId)
            .ok_or(ModelError::NoInitial)?;
        let mut outgoing = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            outgoing[t.src.0].push(t.id);
        }
        Ok(PdtaModel {
            name: self.name,
            clocks: self.clocks,
            states: self.states,
            symbols: self.symbols,
            transitions: self.transitions,
            initial,
            outgoing,
        })
    }
}

fn dup(kind: &'static str, name: &str) -> ModelError {
    ModelError::Duplicate {
        kind,
        name: name.to_string(),
    }
}

fn declare<I: Copy>(
    names: &mut Vec<String>,
    index: &mut HashMap<String, I>,
    kind: &'static str,
    name: &str,
    make: fn(usize) -> I,
) -> Result<I, ModelError> {
    if index.contains_key(name) {
        return Err(dup(kind, name));
    }
    let id = make(names.len());
    names.push(name.to_string());
    index.insert(name.to_string(), id);
    Ok(id)
}

fn lookup<I: Copy>(
    index: &HashMap<String, I>,
    kind: &'static str,
    name: &str,
) -> Result<I, ModelError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| ModelError::Undeclared {
            kind,
            name: name.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_resolves() {
        let mut b = ModelBuilder::new("s");
        b.clock("x").unwrap();
        b.state("q0", true, false).unwrap();
        b.state("q1", false, true).unwrap();
        b.symbol("a").unwrap();
        b.edge(
            "q0",
            "q1",
            "e",
            &[AtomSpec::Clock("x".into(), Comparison::Ge, 1)],
            &["x"],
            Some((true, "a")),
        )
        .unwrap();
        let m = b.build().unwrap();
        let t = &m.transitions()[0];
        assert_eq!(t.op, StackOp::Push(SymbolId(0)));
        assert_eq!(t.resets, vec![ClockId(0)]);
        assert_eq!(m.finals().collect::<Vec<_>>(), vec![StateId(1)]);
    }

    #[test]
    fn rejects_bad_declarations() {
        let mut b = ModelBuilder::new("s");
        b.state("q0", true, false).unwrap();
        assert!(matches!(
            b.state("q0", false, false),
            Err(ModelError::Duplicate { .. })
        ));
        assert!(matches!(
            b.state("q1", true, false),
            Err(ModelError::MultipleInitial { .. })
        ));
        assert!(matches!(
            b.edge("q0", "zz", "e", &[], &[], None),
            Err(ModelError::Undeclared { kind: "state", .. })
        ));
        assert_eq!(ModelBuilder::new("t").build(), Err(ModelError::NoInitial));
    }
}
