//! The parametric benchmark family and the two small introductory examples.
//!
//! Edges are declared in the order they are drawn in the reference figures;
//! exploration counts depend on it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{AtomSpec, Comparison, ModelBuilder, PdtaModel, MAX_CONSTANT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Benchmark {
    /// Three pushes, then pops under `y ≤ 3` and `x ≥ 1`.
    Fig1,
    /// The example on which pruning roots by simulation goes wrong.
    Fig3,
    B1,
    B2 {
        k: i64,
    },
    B3 {
        k1: i64,
        k2: i64,
    },
    B4,
    B5 {
        k1: i64,
        k2: i64,
    },
    B6 {
        k1: i64,
        k2: i64,
        k3: i64,
    },
    B7,
    B8,
    B9 {
        k1: i64,
        k2: i64,
    },
    B10,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("unknown benchmark `{0}` (expected fig1, fig3 or b1..b10)")]
    Unknown(String),
    #[error("{name} takes {expected} parameter(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{name}: {reason}")]
    Parameter { name: String, reason: String },
}

impl Benchmark {
    /// Looks up a benchmark by name (case-insensitive) with its parameters.
    pub fn new(name: &str, params: &[i64]) -> Result<Self, BenchError> {
        let lower = name.to_ascii_lowercase();
        let arity = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(BenchError::Arity {
                    name: lower.clone(),
                    expected: n,
                    found: params.len(),
                })
            }
        };
        let b = match lower.as_str() {
            "fig1" => arity(0).map(|_| Benchmark::Fig1),
            "fig3" => arity(0).map(|_| Benchmark::Fig3),
            "b1" => arity(0).map(|_| Benchmark::B1),
            "b2" => arity(1).map(|_| Benchmark::B2 { k: params[0] }),
            "b3" => arity(2).map(|_| Benchmark::B3 {
                k1: params[0],
                k2: params[1],
            }),
            "b4" => arity(0).map(|_| Benchmark::B4),
            "b5" => arity(2).map(|_| Benchmark::B5 {
                k1: params[0],
                k2: params[1],
            }),
            "b6" => arity(3).map(|_| Benchmark::B6 {
                k1: params[0],
                k2: params[1],
                k3: params[2],
            }),
            "b7" => arity(0).map(|_| Benchmark::B7),
            "b8" => arity(0).map(|_| Benchmark::B8),
            "b9" => arity(2).map(|_| Benchmark::B9 {
                k1: params[0],
                k2: params[1],
            }),
            "b10" => arity(0).map(|_| Benchmark::B10),
            _ => Err(BenchError::Unknown(name.to_string())),
        }?;
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<(), BenchError> {
        let bad = |reason: &str| {
            Err(BenchError::Parameter {
                name: self.family().to_string(),
                reason: reason.to_string(),
            })
        };
        if self
            .params()
            .iter()
            .any(|&p| !(0..=MAX_CONSTANT).contains(&p))
        {
            return bad(&format!("parameters must lie in 0..={MAX_CONSTANT}"));
        }
        match *self {
            Benchmark::B5 { k1, .. } | Benchmark::B9 { k1, .. } if k1 < 1 => {
                bad("k1 must be at least 1")
            }
            Benchmark::B5 { k1, .. } | Benchmark::B9 { k1, .. } if k1 > 100_000 => {
                bad("k1 above 100000 makes the model unreasonably large")
            }
            Benchmark::B2 { k } if k > 100_000 => {
                bad("k above 100000 makes the model unreasonably large")
            }
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Benchmark::Fig1 => "fig1",
            Benchmark::Fig3 => "fig3",
            Benchmark::B1 => "B1",
            Benchmark::B2 { .. } => "B2",
            Benchmark::B3 { .. } => "B3",
            Benchmark::B4 => "B4",
            Benchmark::B5 { .. } => "B5",
            Benchmark::B6 { .. } => "B6",
            Benchmark::B7 => "B7",
            Benchmark::B8 => "B8",
            Benchmark::B9 { .. } => "B9",
            Benchmark::B10 => "B10",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            Benchmark::B2 { k } => vec![k],
            Benchmark::B3 { k1, k2 } | Benchmark::B5 { k1, k2 } | Benchmark::B9 { k1, k2 } => {
                vec![k1, k2]
            }
            Benchmark::B6 { k1, k2, k3 } => vec![k1, k2, k3],
            _ => Vec::new(),
        }
    }

    /// Identifier usable as a system name, e.g. `B5_100_10`.
    pub fn system_name(&self) -> String {
        std::iter::once(self.family().to_string())
            .chain(self.params().iter().map(i64::to_string))
            .collect::<Vec<_>>()
            .join("_")
    }

    pub fn model(&self) -> PdtaModel {
        let mut g = Gen::new(&self.system_name());
        match *self {
            Benchmark::Fig1 => fig1(&mut g),
            Benchmark::Fig3 => fig3(&mut g),
            Benchmark::B1 => b1(&mut g),
            Benchmark::B2 { k } => b2(&mut g, k),
            Benchmark::B3 { k1, k2 } => b3(&mut g, k1, k2),
            Benchmark::B4 => b4(&mut g),
            Benchmark::B5 { k1, k2 } => b5(&mut g, k1, k2),
            Benchmark::B6 { k1, k2, k3 } => b6(&mut g, k1, k2, k3),
            Benchmark::B7 => b7(&mut g),
            Benchmark::B8 => b8(&mut g),
            Benchmark::B9 { k1, k2 } => b9(&mut g, k1, k2),
            Benchmark::B10 => b10(&mut g),
        }
        g.finish()
    }

    /// The model in the text format.
    pub fn text(&self) -> String {
        self.model().to_string()
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())?;
        let p = self.params();
        if !p.is_empty() {
            let list: Vec<String> = p.iter().map(i64::to_string).collect();
            write!(f, "({})", list.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Benchmark {
    type Err = BenchError;

    /// Accepts `B5(100,10)`, `b5:100:10` or `b5 100 10`.
    fn from_str(s: &str) -> Result<Self, BenchError> {
        let cleaned: String = s
            .chars()
            .map(|c| {
                if matches!(c, '(' | ')' | ',' | ':') {
                    ' '
                } else {
                    c
                }
            })
            .collect();
        let mut words = cleaned.split_whitespace();
        let name = words.next().unwrap_or("");
        let params = words
            .map(|w| {
                w.parse::<i64>().map_err(|_| BenchError::Parameter {
                    name: name.to_string(),
                    reason: format!("`{w}` is not an integer"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Benchmark::new(name, &params)
    }
}

/// Thin wrapper over the builder; generator inputs are trusted, so
/// declaration errors are bugs.
struct Gen {
    b: ModelBuilder,
    edges: usize,
}

type Op<'a> = Option<(bool, &'a str)>;

const NOP: Op<'static> = None;

fn push(a: &str) -> Op<'_> {
    Some((true, a))
}

fn pop(a: &str) -> Op<'_> {
    Some((false, a))
}

fn atom(x: &str, cmp: Comparison, c: i64) -> Vec<AtomSpec> {
    vec![AtomSpec::Clock(x.to_string(), cmp, c)]
}

fn ge(x: &str, c: i64) -> Vec<AtomSpec> {
    atom(x, Comparison::Ge, c)
}

fn gt(x: &str, c: i64) -> Vec<AtomSpec> {
    atom(x, Comparison::Gt, c)
}

fn le(x: &str, c: i64) -> Vec<AtomSpec> {
    atom(x, Comparison::Le, c)
}

fn lt(x: &str, c: i64) -> Vec<AtomSpec> {
    atom(x, Comparison::Lt, c)
}

fn eq(x: &str, c: i64) -> Vec<AtomSpec> {
    [le(x, c), ge(x, c)].concat()
}

impl Gen {
    fn new(name: &str) -> Self {
        Gen {
            b: ModelBuilder::new(name),
            edges: 0,
        }
    }

    fn clocks(&mut self, names: &[&str]) {
        for c in names {
            self.b.clock(c).expect("fresh clock");
        }
    }

    fn symbols(&mut self, names: &[&str]) {
        for a in names {
            self.b.symbol(a).expect("fresh symbol");
        }
    }

    fn state(&mut self, name: &str) {
        self.b.state(name, false, false).expect("fresh state");
    }

    fn initial(&mut self, name: &str) {
        self.b.state(name, true, false).expect("fresh state");
    }

    fn accepting(&mut self, name: &str) {
        self.b.state(name, false, true).expect("fresh state");
    }

    fn edge(&mut self, src: &str, tgt: &str, guard: Vec<AtomSpec>, resets: &[&str], op: Op<'_>) {
        let label = format!("t{}", self.edges);
        self.edges += 1;
        self.b
            .edge(src, tgt, &label, &guard, resets, op)
            .expect("generator refers to declared names");
    }

    fn finish(self) -> PdtaModel {
        self.b.build().expect("generator declares an initial state")
    }
}

fn chain_of_pushes(g: &mut Gen, pushes: usize, y_bound: i64, last: &str) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a"]);
    g.initial("q0");
    let mids: Vec<String> = (1..=pushes).map(|i| format!("r{i}")).collect();
    for m in &mids {
        g.state(m);
    }
    g.accepting(last);
    let mut prev = "q0".to_string();
    for m in &mids {
        g.edge(&prev, m, vec![], &[], push("a"));
        prev = m.clone();
    }
    g.edge(&prev, last, le("y", y_bound), &["x"], pop("a"));
    g.edge(last, last, ge("x", 1), &["x"], pop("a"));
}

fn fig1(g: &mut Gen) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a"]);
    g.initial("q0");
    for q in ["q1", "q2", "q3"] {
        g.state(q);
    }
    g.accepting("q4");
    g.edge("q0", "q1", vec![], &[], push("a"));
    g.edge("q1", "q2", vec![], &[], push("a"));
    g.edge("q2", "q3", vec![], &[], push("a"));
    g.edge("q3", "q4", le("y", 3), &["x"], pop("a"));
    g.edge("q4", "q4", ge("x", 1), &["x"], pop("a"));
}

fn fig3(g: &mut Gen) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a"]);
    g.initial("q0");
    g.state("q1");
    g.state("q2");
    g.accepting("q3");
    g.edge("q0", "q1", ge("x", 1), &["x"], NOP);
    g.edge("q1", "q0", le("y", 1), &[], push("a"));
    g.edge("q0", "q2", vec![], &[], pop("a"));
    g.edge("q2", "q3", vec![], &[], pop("a"));
}

fn b1(g: &mut Gen) {
    chain_of_pushes(g, 8, 10, "q1");
}

fn b2(g: &mut Gen, k: i64) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a"]);
    g.initial("q0");
    g.state("q1");
    let mids: Vec<String> = (1..=k + 1).map(|i| format!("s{i}")).collect();
    for m in &mids {
        g.state(m);
    }
    g.accepting("q2");
    g.edge("q0", "q1", ge("x", 1), &["x"], NOP);
    g.edge("q1", "q0", le("y", k), &[], push("a"));
    let mut prev = "q0".to_string();
    for m in &mids {
        g.edge(&prev, m, vec![], &[], pop("a"));
        prev = m.clone();
    }
    g.edge(&prev, "q2", vec![], &[], NOP);
}

fn b3(g: &mut Gen, k1: i64, k2: i64) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a", "a1", "a2"]);
    g.initial("q1");
    for q in ["q2", "r1", "r2"] {
        g.state(q);
    }
    g.accepting("s1");
    g.state("s2");
    g.edge("q1", "q2", vec![], &["y"], push("a2"));
    g.edge("q1", "q1", vec![], &["x"], push("a1"));
    g.edge("q2", "q2", vec![], &[], push("a"));
    g.edge("q2", "q2", vec![], &["x"], push("a1"));
    g.edge("q1", "r1", ge("x", k1), &[], pop("a1"));
    g.edge("q2", "r2", ge("x", k1), &[], pop("a1"));
    g.edge("r2", "s2", le("y", k2), &[], pop("a"));
    g.edge("r2", "s1", le("y", k2), &[], pop("a2"));
}

fn b4(g: &mut Gen) {
    g.clocks(&["x1", "x2", "x3"]);
    g.symbols(&["a"]);
    g.initial("q0");
    for q in ["q1", "q2", "q3", "q4"] {
        g.state(q);
    }
    g.accepting("q5");
    g.state("q6");
    g.edge("q0", "q1", vec![], &["x1", "x2"], NOP);
    g.edge("q1", "q2", ge("x1", 1), &["x3"], push("a"));
    g.edge("q1", "q3", eq("x1", 1), &["x2"], NOP);
    g.edge("q2", "q6", [eq("x1", 1), le("x2", 3)].concat(), &[], NOP);
    g.edge("q6", "q3", eq("x1", 1), &[], NOP);
    g.edge(
        "q6",
        "q5",
        [le("x1", 1), ge("x2", 1), eq("x3", 1)].concat(),
        &[],
        pop("a"),
    );
    g.edge("q3", "q4", vec![], &["x1", "x2"], NOP);
    g.edge("q4", "q5", [eq("x1", 1), eq("x2", 0)].concat(), &[], NOP);
    g.edge("q3", "q4", eq("x1", 0), &[], NOP);
}

fn b5(g: &mut Gen, k1: i64, k2: i64) {
    g.clocks(&["x", "y"]);
    g.symbols(&["a"]);
    g.initial("q0");
    let k1 = k1 as usize;
    for i in 1..=k1 {
        g.state(&format!("r{i}"));
        g.state(&format!("r{i}p"));
    }
    g.accepting("q1");
    let pushes = k1.div_ceil(2);
    let mut prev = "q0".to_string();
    for i in 1..=k1 {
        let (r, rp) = (format!("r{i}"), format!("r{i}p"));
        let op = if i <= pushes { push("a") } else { pop("a") };
        g.edge(&prev, &r, vec![], &[], op);
        g.edge(&r, &rp, ge("x", 1), &["x"], NOP);
        g.edge(&rp, &r, le("y", k2), &[], NOP);
        prev = r;
    }
    g.edge(&prev, "q1", vec![], &[], NOP);
}

fn b6(g: &mut Gen, k1: i64, k2: i64, k3: i64) {
    g.clocks(&["x", "y", "z1", "z2"]);
    g.symbols(&["a"]);
    g.initial("q1");
    for q in ["q1p", "q2", "q3", "q4"] {
        g.state(q);
    }
    g.accepting("q5");
    g.edge("q1", "q2", eq("x", 1), &["x"], NOP);
    g.edge("q2", "q1", le("y", k1), &[], push("a"));
    g.edge("q1", "q1p", ge("z1", 1), &["z1"], NOP);
    g.edge("q1p", "q1", le("z2", k3), &[], NOP);
    g.edge(
        "q1",
        "q3",
        [eq("x", 0), ge("y", k1)].concat(),
        &["x", "y"],
        NOP,
    );
    g.edge("q3", "q4", eq("x", 1), &["x"], NOP);
    g.edge("q4", "q3", lt("y", k2), &[], pop("a"));
    g.edge("q3", "q5", vec![], &[], NOP);
}

fn b7(g: &mut Gen) {
    g.clocks(&["x", "y", "z"]);
    g.symbols(&["a", "b"]);
    g.initial("q1");
    for q in ["q2", "q3", "q4"] {
        g.state(q);
    }
    g.accepting("q5");
    g.edge("q1", "q1", gt("x", 1), &["x"], push("a"));
    g.edge("q1", "q1", lt("y", 2), &["y"], push("b"));
    g.edge("q1", "q2", [eq("x", 0), eq("z", 20)].concat(), &[], NOP);
    g.edge("q2", "q3", vec![], &[], pop("b"));
    g.edge("q3", "q4", vec![], &[], pop("a"));
    g.edge("q4", "q2", vec![], &[], pop("a"));
    g.edge("q2", "q5", vec![], &[], NOP);
}

fn b8(g: &mut Gen) {
    g.clocks(&["x1", "x2", "x3", "x4"]);
    g.symbols(&["a", "b"]);
    g.initial("q1");
    for q in ["q2", "q3", "q4", "q5", "q6", "q7"] {
        g.state(q);
    }
    g.accepting("q8");
    g.edge("q1", "q2", vec![], &["x2"], push("a"));
    g.edge("q2", "q3", eq("x2", 1), &["x4"], pop("a"));
    g.edge("q3", "q4", eq("x4", 0), &["x3"], push("b"));
    g.edge("q4", "q5", ge("x3", 1), &["x1"], pop("b"));
    g.edge("q5", "q6", vec![], &["x1"], NOP);
    g.edge("q6", "q7", vec![], &["x2"], push("a"));
    g.edge("q7", "q8", ge("x2", 1), &[], pop("a"));
}

fn b9(g: &mut Gen, k1: i64, k2: i64) {
    let k1 = k1 as usize;
    g.clocks(&["x", "y"]);
    let symbols: Vec<String> = (1..=4 * k1).map(|i| format!("a{i}")).collect();
    g.symbols(&symbols.iter().map(String::as_str).collect::<Vec<_>>());
    g.initial("q0");
    for j in 1..=3 * k1 {
        g.state(&format!("r{j}"));
        if j % 3 == 2 {
            g.state(&format!("r{j}p"));
        }
    }
    let line: Vec<String> = (1..4 * k1).map(|i| format!("s{i}")).collect();
    for s in &line {
        g.state(s);
    }
    g.accepting("sf");

    for i in 0..k1 {
        let r = |j: usize| format!("r{}", 3 * i + j);
        let a = |j: usize| format!("a{}", 4 * i + j);
        g.edge("q0", &r(1), vec![], &[], push(&a(1)));
        g.edge(&r(1), &r(2), vec![], &[], push(&a(2)));
        g.edge(&r(2), &r(3), vec![], &[], push(&a(3)));
        g.edge(&r(3), "q0", vec![], &[], push(&a(4)));
    }
    let pops: Vec<String> = (0..k1)
        .flat_map(|i| (1..=4).rev().map(move |j| format!("a{}", 4 * i + j)))
        .collect();
    let stops: Vec<&str> = std::iter::once("q0")
        .chain(line.iter().map(String::as_str))
        .chain(std::iter::once("sf"))
        .collect();
    for (k, a) in pops.iter().enumerate() {
        g.edge(stops[k], stops[k + 1], vec![], &[], pop(a));
    }
    for i in 0..k1 {
        let mid = format!("r{}", 3 * i + 2);
        let midp = format!("{mid}p");
        g.edge(&mid, &midp, ge("x", 1), &["x"], NOP);
        g.edge(&midp, &mid, le("y", k2), &[], NOP);
    }
}

fn b10(g: &mut Gen) {
    g.clocks(&["x", "y", "z"]);
    g.symbols(&["a", "b"]);
    g.initial("q1");
    g.state("q2");
    g.state("q3");
    g.accepting("q4");
    g.edge("q1", "q1", gt("x", 1), &["x"], push("a"));
    g.edge("q1", "q1", lt("y", 2), &["y"], push("b"));
    g.edge("q1", "q2", [eq("x", 0), eq("z", 4)].concat(), &[], NOP);
    g.edge("q2", "q3", vec![], &[], pop("a"));
    g.edge("q3", "q2", vec![], &[], pop("b"));
    g.edge("q2", "q4", vec![], &[], NOP);
}
