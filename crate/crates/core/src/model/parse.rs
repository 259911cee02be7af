//! Line-oriented model text format.
//!
//! ```text
//! system:<name>
//! clock:<name>
//! state:<name>[:initial][:final]
//! symbol:<name>
//! edge:<system>:<src>:<tgt>:<label>{provided: <atom> && ... : do: x=0; y=0}[push:a]
//! ```
//!
//! `#` starts a comment. Every identifier must be declared before use.

use thiserror::Error;

use super::builder::{ModelBuilder, ModelError};
use super::{Atom, ClockId, Comparison, Guard, PdtaModel, StackOp};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A slice of the current line together with its byte offset.
#[derive(Clone, Copy, Debug)]
struct Piece<'a> {
    s: &'a str,
    off: usize,
}

impl<'a> Piece<'a> {
    fn trim(self) -> Self {
        let lead = self.s.len() - self.s.trim_start().len();
        Piece {
            s: self.s.trim(),
            off: self.off + lead,
        }
    }

    fn at(self, from: usize, to: usize) -> Self {
        Piece {
            s: &self.s[from..to],
            off: self.off + from,
        }
    }

    fn from(self, from: usize) -> Self {
        self.at(from, self.s.len())
    }

    fn split_once(self, c: char) -> Option<(Self, Self)> {
        let i = self.s.find(c)?;
        Some((self.at(0, i), self.from(i + c.len_utf8())))
    }

    fn split(self, sep: &'a str) -> Vec<Self> {
        let mut off = self.off;
        self.s
            .split(sep)
            .map(|p| {
                let piece = Piece { s: p, off };
                off += p.len() + sep.len();
                piece
            })
            .collect()
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, at: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
        ParseError {
            line: self.number,
            column: self.text[..at.min(self.text.len())].chars().count() + 1,
            kind: kind.into(),
        }
    }

    fn syntax(&self, at: Piece<'_>, msg: impl Into<String>) -> ParseError {
        self.error(at.off, ParseErrorKind::Syntax(msg.into()))
    }

    fn model(&self, at: Piece<'_>, e: ModelError) -> ParseError {
        self.error(at.off, e)
    }

    fn ident<'p>(&self, p: Piece<'p>, what: &str) -> Result<&'p str, ParseError> {
        let p = p.trim();
        if p.s.is_empty() {
            return Err(self.syntax(p, format!("expected {what} name")));
        }
        if let Some((i, c)) =
            p.s.char_indices()
                .find(|&(_, c)| !(c.is_alphanumeric() || c == '_' || c == '.'))
        {
            return Err(self.syntax(
                p.from(i),
                format!("unexpected character `{c}` in {what} name"),
            ));
        }
        Ok(p.s)
    }
}

/// Parses a model. Errors carry 1-based line and column numbers.
pub fn parse_model(text: &str) -> Result<PdtaModel, ParseError> {
    let mut builder: Option<ModelBuilder> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        last_line = idx + 1;
        let line = Line {
            number: idx + 1,
            text: raw,
        };
        let body = raw.split('#').next().unwrap_or("");
        let piece = Piece { s: body, off: 0 }.trim();
        if piece.s.is_empty() {
            continue;
        }
        let Some((kw, rest)) = piece.split_once(':') else {
            return Err(line.syntax(piece, "expected `<keyword>:<arguments>`"));
        };
        match (kw.s.trim(), builder.as_mut()) {
            ("system", None) => builder = Some(ModelBuilder::new(line.ident(rest, "system")?)),
            ("system", Some(_)) => return Err(line.syntax(kw, "duplicate `system` declaration")),
            (_, None) => {
                return Err(line.syntax(kw, "the first declaration must be `system:<name>`"))
            }
            ("clock", Some(b)) => {
                let name = line.ident(rest, "clock")?;
                b.clock(name).map_err(|e| line.model(rest.trim(), e))?;
            }
            ("symbol", Some(b)) => {
                let name = line.ident(rest, "symbol")?;
                b.symbol(name).map_err(|e| line.model(rest.trim(), e))?;
            }
            ("state", Some(b)) => parse_state(&line, b, rest)?,
            ("edge", Some(b)) => parse_edge(&line, b, rest)?,
            _ => return Err(line.syntax(kw, format!("unknown declaration `{}`", kw.s.trim()))),
        }
    }
    let end = ParseError {
        line: last_line + 1,
        column: 1,
        kind: ParseErrorKind::Syntax("missing `system:<name>` declaration".into()),
    };
    let builder = builder.ok_or(end.clone())?;
    builder.build().map_err(|e| ParseError {
        kind: e.into(),
        ..end
    })
}

fn parse_state(line: &Line<'_>, b: &mut ModelBuilder, rest: Piece<'_>) -> Result<(), ParseError> {
    let mut parts = rest.split(":").into_iter();
    let name_piece = parts.next().expect("split yields at least one piece");
    let name = line.ident(name_piece, "state")?;
    let (mut initial, mut accepting) = (false, false);
    for flag in parts {
        match flag.s.trim() {
            "initial" => initial = true,
            "final" => accepting = true,
            other => return Err(line.syntax(flag.trim(), format!("unknown state flag `{other}`"))),
        }
    }
    b.state(name, initial, accepting)
        .map(|_| ())
        .map_err(|e| line.model(name_piece.trim(), e))
}

fn parse_edge(line: &Line<'_>, b: &mut ModelBuilder, rest: Piece<'_>) -> Result<(), ParseError> {
    let split = rest.s.find(['{', '[']).unwrap_or(rest.s.len());
    let head = rest.at(0, split);
    let mut tail = rest.from(split).trim();

    let fields = head.split(":");
    if fields.len() != 4 {
        return Err(line.syntax(
            head,
            format!(
                "expected `<system>:<src>:<tgt>:<label>`, found {} field(s)",
                fields.len()
            ),
        ));
    }
    let process = line.ident(fields[0], "process")?;
    if process != b.name() {
        let e = ModelError::SystemMismatch {
            expected: b.name().to_string(),
            found: process.to_string(),
        };
        return Err(line.model(fields[0].trim(), e));
    }
    let src_name = line.ident(fields[1], "state")?;
    let src = b
        .state_id(src_name)
        .map_err(|e| line.model(fields[1].trim(), e))?;
    let tgt_name = line.ident(fields[2], "state")?;
    let tgt = b
        .state_id(tgt_name)
        .map_err(|e| line.model(fields[2].trim(), e))?;
    let label = fields[3].s.trim().to_string();

    let mut guard = Guard::default();
    let mut resets = Vec::new();
    if tail.s.starts_with('{') {
        let Some(close) = tail.s.find('}') else {
            return Err(line.syntax(tail, "unclosed `{`"));
        };
        let inner = tail.at(1, close);
        parse_edge_body(line, b, inner, &mut guard, &mut resets)?;
        tail = tail.from(close + 1).trim();
    }
    let mut op = StackOp::Nop;
    if tail.s.starts_with('[') {
        let Some(close) = tail.s.find(']') else {
            return Err(line.syntax(tail, "unclosed `[`"));
        };
        op = parse_stack_op(line, b, tail.at(1, close))?;
        tail = tail.from(close + 1).trim();
    }
    if !tail.s.is_empty() {
        return Err(line.syntax(tail, format!("unexpected trailing text `{}`", tail.s)));
    }
    b.push_transition(src, tgt, label, guard, op, resets);
    Ok(())
}

fn parse_edge_body(
    line: &Line<'_>,
    b: &ModelBuilder,
    inner: Piece<'_>,
    guard: &mut Guard,
    resets: &mut Vec<ClockId>,
) -> Result<(), ParseError> {
    if inner.s.trim().is_empty() {
        return Ok(());
    }
    let parts = inner.split(":");
    let (mut seen_guard, mut seen_do) = (false, false);
    let mut k = 0;
    while k < parts.len() {
        let key = parts[k].trim();
        let Some(value) = parts.get(k + 1).copied() else {
            return Err(line.syntax(key, format!("missing value after `{}`", key.s)));
        };
        match key.s {
            "provided" if !seen_guard => {
                seen_guard = true;
                guard.0 = parse_guard(line, b, value)?;
            }
            "do" if !seen_do => {
                seen_do = true;
                *resets = parse_resets(line, b, value)?;
            }
            "provided" | "do" => {
                return Err(line.syntax(key, format!("duplicate `{}` section", key.s)));
            }
            other => {
                return Err(
                    line.syntax(key, format!("expected `provided` or `do`, found `{other}`"))
                );
            }
        }
        k += 2;
    }
    Ok(())
}

fn parse_guard(
    line: &Line<'_>,
    b: &ModelBuilder,
    value: Piece<'_>,
) -> Result<Vec<Atom>, ParseError> {
    if value.s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut atoms = Vec::new();
    for part in value.split("&&") {
        let part = part.trim();
        if part.s.is_empty() {
            return Err(line.syntax(part, "empty guard atom"));
        }
        parse_atom(line, b, part, &mut atoms)?;
    }
    Ok(atoms)
}

fn parse_atom(
    line: &Line<'_>,
    b: &ModelBuilder,
    part: Piece<'_>,
    out: &mut Vec<Atom>,
) -> Result<(), ParseError> {
    let Some(op_at) = part.s.find(['<', '>', '=', '!']) else {
        return Err(line.syntax(part, "expected a comparison operator"));
    };
    let op_text = &part.s[op_at..];
    let (cmps, len): (&[Comparison], usize) = if op_text.starts_with("<=") {
        (&[Comparison::Le], 2)
    } else if op_text.starts_with(">=") {
        (&[Comparison::Ge], 2)
    } else if op_text.starts_with("==") {
        (&[Comparison::Le, Comparison::Ge], 2)
    } else if op_text.starts_with('<') {
        (&[Comparison::Lt], 1)
    } else if op_text.starts_with('>') {
        (&[Comparison::Gt], 1)
    } else {
        return Err(line.syntax(part.from(op_at), "expected one of <, <=, >, >=, =="));
    };
    let lhs = part.at(0, op_at);
    let rhs = part.from(op_at + len).trim();
    let constant: i64 = rhs.s.parse().map_err(|_| {
        line.syntax(
            rhs,
            format!("expected an integer constant, found `{}`", rhs.s),
        )
    })?;
    let clock = |p: Piece<'_>| -> Result<ClockId, ParseError> {
        let name = line.ident(p, "clock")?;
        b.clock_id(name).map_err(|e| line.model(p.trim(), e))
    };
    let diagonal = match lhs.split_once('-') {
        Some((l, r)) => Some((clock(l)?, clock(r)?)),
        None => None,
    };
    let single = match diagonal {
        None => Some(clock(lhs)?),
        Some(_) => None,
    };
    for &cmp in cmps {
        out.push(match (single, diagonal) {
            (Some(clock), _) => Atom::Clock {
                clock,
                cmp,
                constant,
            },
            (None, Some((left, right))) => Atom::Diagonal {
                left,
                right,
                cmp,
                constant,
            },
            (None, None) => unreachable!("atom has either one or two clocks"),
        });
    }
    Ok(())
}

fn parse_resets(
    line: &Line<'_>,
    b: &ModelBuilder,
    value: Piece<'_>,
) -> Result<Vec<ClockId>, ParseError> {
    let mut out = Vec::new();
    for part in value.split(";") {
        let part = part.trim();
        if part.s.is_empty() {
            continue;
        }
        let Some((name, val)) = part.split_once('=') else {
            return Err(line.syntax(part, "expected `<clock>=0`"));
        };
        let id = b
            .clock_id(line.ident(name, "clock")?)
            .map_err(|e| line.model(name.trim(), e))?;
        if val.s.trim() != "0" {
            return Err(line.syntax(val.trim(), "clocks can only be reset to 0"));
        }
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

fn parse_stack_op(
    line: &Line<'_>,
    b: &ModelBuilder,
    inner: Piece<'_>,
) -> Result<StackOp, ParseError> {
    let inner = inner.trim();
    if inner.s.is_empty() {
        return Ok(StackOp::Nop);
    }
    let Some((kind, sym)) = inner.split_once(':') else {
        return Err(line.syntax(inner, "expected `push:<symbol>` or `pop:<symbol>`"));
    };
    let name = line.ident(sym, "symbol")?;
    let id = b.symbol_id(name).map_err(|e| line.model(sym.trim(), e))?;
    match kind.s.trim() {
        "push" => Ok(StackOp::Push(id)),
        "pop" => Ok(StackOp::Pop(id)),
        other => Err(line.syntax(kind.trim(), format!("unknown stack operation `{other}`"))),
    }
}
