//! Pushdown timed automata: data model, text format, validation and
//! LU-bound extraction.

mod builder;
mod parse;
mod print;

use std::fmt;

use crate::zone::{Bound, BoundValue, ClockConstraint, LuBounds};

pub use builder::{AtomSpec, ModelBuilder, ModelError};
pub use parse::{parse_model, ParseError, ParseErrorKind};

/// Largest guard constant an engine-admissible model may use.
pub const MAX_CONSTANT: i64 = 1 << 30;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }
    };
}

id_type!(StateId);
id_type!(
    /// 0-based clock number; the DBM index is one higher.
    ClockId
);
id_type!(SymbolId);
id_type!(
    /// Declaration ordinal of an edge.
    TransitionId
);

impl ClockId {
    pub fn dbm_index(self) -> usize {
        self.0 + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Le,
    Ge,
    Gt,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
        }
    }

    /// Whether `lhs ⋈ rhs` holds.
    pub fn holds<N: PartialOrd>(self, lhs: N, rhs: N) -> bool {
        match self {
            Comparison::Lt => lhs < rhs,
            Comparison::Le => lhs <= rhs,
            Comparison::Ge => lhs >= rhs,
            Comparison::Gt => lhs > rhs,
        }
    }
}

/// An atomic clock constraint. Equalities are expanded by the parser.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Clock {
        clock: ClockId,
        cmp: Comparison,
        constant: i64,
    },
    Diagonal {
        left: ClockId,
        right: ClockId,
        cmp: Comparison,
        constant: i64,
    },
}

impl Atom {
    pub fn constant(&self) -> i64 {
        match *self {
            Atom::Clock { constant, .. } | Atom::Diagonal { constant, .. } => constant,
        }
    }

    /// DBM constraint over DBM indices (`x_i - x_j ≺ c`).
    pub fn to_constraint<T: BoundValue>(&self) -> Option<ClockConstraint<T>> {
        let (i, j, cmp, c) = match *self {
            Atom::Clock {
                clock,
                cmp,
                constant,
            } => (clock.dbm_index(), 0, cmp, constant),
            Atom::Diagonal {
                left,
                right,
                cmp,
                constant,
            } => (left.dbm_index(), right.dbm_index(), cmp, constant),
        };
        let pos = T::from_constant(c)?;
        let neg = T::from_constant(-c)?;
        Some(match cmp {
            Comparison::Le => ClockConstraint::new(i, j, Bound::weak(pos)),
            Comparison::Lt => ClockConstraint::new(i, j, Bound::strict(pos)),
            Comparison::Ge => ClockConstraint::new(j, i, Bound::weak(neg)),
            Comparison::Gt => ClockConstraint::new(j, i, Bound::strict(neg)),
        })
    }
}

/// Conjunction of atoms; the empty conjunction is `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Guard(pub Vec<Atom>);

impl Guard {
    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_true(&self) -> bool {
        self.0.is_empty()
    }

    /// DBM constraints, or `None` if a constant does not fit `T`.
    pub fn constraints<T: BoundValue>(&self) -> Option<Vec<ClockConstraint<T>>> {
        self.0.iter().map(Atom::to_constraint).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StackOp {
    Nop,
    Push(SymbolId),
    Pop(SymbolId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub id: TransitionId,
    pub src: StateId,
    pub tgt: StateId,
    pub label: String,
    pub guard: Guard,
    pub op: StackOp,
    pub resets: Vec<ClockId>,
}

impl Transition {
    pub fn reset_indices(&self) -> Vec<usize> {
        self.resets.iter().map(|c| c.dbm_index()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateDecl {
    pub name: String,
    pub initial: bool,
    pub accepting: bool,
}

/// A pushdown timed automaton `(Q, X, q0, Γ, Δ, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdtaModel {
    name: String,
    clocks: Vec<String>,
    states: Vec<StateDecl>,
    symbols: Vec<String>,
    transitions: Vec<Transition>,
    initial: StateId,
    outgoing: Vec<Vec<TransitionId>>,
}

/// A validation finding that makes a model unusable by the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub transition: Option<TransitionId>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.transition {
            Some(t) => write!(f, "edge #{}: {}", t.0, self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl PdtaModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn clock_count(&self) -> usize {
        self.clocks.len()
    }

    pub fn clock_name(&self, c: ClockId) -> &str {
        &self.clocks[c.0]
    }

    pub fn clocks(&self) -> &[String] {
        &self.clocks
    }

    pub fn states(&self) -> &[StateDecl] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.0].name
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name).map(StateId)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_name(&self, a: SymbolId) -> &str {
        &self.symbols[a.0]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.states[q.0].accepting
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.accepting)
            .map(|(i, _)| StateId(i))
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t.0]
    }

    /// Edges leaving `q`, in declaration order.
    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[q.0].iter().map(|t| &self.transitions[t.0])
    }

    /// Largest absolute constant appearing in a guard.
    pub fn max_constant(&self) -> i64 {
        self.transitions
            .iter()
            .flat_map(|t| t.guard.atoms())
            .map(|a| a.constant().abs())
            .max()
            .unwrap_or(0)
    }

    /// Checks the restrictions the zone engine relies on. An empty result
    /// means the model is admissible.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for t in &self.transitions {
            for atom in t.guard.atoms() {
                let report = |message: String| Diagnostic {
                    transition: Some(t.id),
                    message,
                };
                if let Atom::Diagonal { left, right, .. } = atom {
                    out.push(report(format!(
                        "diagonal constraint unsupported: {}-{}",
                        self.clock_name(*left),
                        self.clock_name(*right)
                    )));
                }
                let c = atom.constant();
                if c.abs() > MAX_CONSTANT {
                    out.push(report(format!(
                        "constant exceeds bound: {c} > {MAX_CONSTANT}"
                    )));
                } else if c < 0 {
                    out.push(report(format!("negative constant {c}")));
                }
            }
        }
        out
    }

    /// Global LU bounds: for every clock, the largest constant in a lower
    /// (`≥`, `>`) respectively upper (`≤`, `<`) guard across all edges.
    pub fn lu_bounds(&self) -> LuBounds {
        compute_lu_bounds(self)
    }
}

/// See [`PdtaModel::lu_bounds`].
pub fn compute_lu_bounds(m: &PdtaModel) -> LuBounds {
    let mut lu = LuBounds::unbounded(m.clock_count());
    for t in m.transitions() {
        for atom in t.guard.atoms() {
            if let Atom::Clock {
                clock,
                cmp,
                constant,
            } = *atom
            {
                match cmp {
                    Comparison::Ge | Comparison::Gt => lu.raise_lower(clock.0, constant),
                    Comparison::Le | Comparison::Lt => lu.raise_upper(clock.0, constant),
                }
            }
        }
    }
    lu
}
