use std::fmt;

use super::{Atom, PdtaModel, StackOp};

impl fmt::Display for PdtaModel {
    /// Renders the model in the text format accepted by `parse_model`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system:{}", self.name)?;
        for c in &self.clocks {
            writeln!(f, "clock:{c}")?;
        }
        for s in &self.states {
            write!(f, "state:{}", s.name)?;
            if s.initial {
                f.write_str(":initial")?;
            }
            if s.accepting {
                f.write_str(":final")?;
            }
            writeln!(f)?;
        }
        for a in &self.symbols {
            writeln!(f, "symbol:{a}")?;
        }
        for t in &self.transitions {
            write!(
                f,
                "edge:{}:{}:{}:{}{{",
                self.name,
                self.state_name(t.src),
                self.state_name(t.tgt),
                t.label
            )?;
            if !t.guard.is_true() {
                f.write_str("provided: ")?;
                for (k, atom) in t.guard.atoms().iter().enumerate() {
                    if k > 0 {
                        f.write_str(" && ")?;
                    }
                    self.write_atom(f, atom)?;
                }
            }
            if !t.resets.is_empty() {
                if !t.guard.is_true() {
                    f.write_str(" : ")?;
                }
                f.write_str("do: ")?;
                for (k, c) in t.resets.iter().enumerate() {
                    if k > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{}=0", self.clock_name(*c))?;
                }
            }
            f.write_str("}")?;
            match t.op {
                StackOp::Nop => writeln!(f, "[]")?,
                StackOp::Push(a) => writeln!(f, "[push:{}]", self.symbol_name(a))?,
                StackOp::Pop(a) => writeln!(f, "[pop:{}]", self.symbol_name(a))?,
            }
        }
        Ok(())
    }
}

impl PdtaModel {
    fn write_atom(&self, f: &mut fmt::Formatter<'_>, atom: &Atom) -> fmt::Result {
        match *atom {
            Atom::Clock {
                clock,
                cmp,
                constant,
            } => write!(f, "{}{}{}", self.clock_name(clock), cmp.symbol(), constant),
            Atom::Diagonal {
                left,
                right,
                cmp,
                constant,
            } => write!(
                f,
                "{}-{}{}{}",
                self.clock_name(left),
                self.clock_name(right),
                cmp.symbol(),
                constant
            ),
        }
    }
}
