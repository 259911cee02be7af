use serde::{Deserialize, Serialize};

use pdta::{PdtaModel, ReachResult};

/// Machine-readable outcome of one run. `reachable` is `;`-joined in CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub model: String,
    pub mode: String,
    pub order: String,
    pub nonempty: bool,
    pub reachable: Vec<String>,
    pub pairs_added: usize,
    pub roots: usize,
    pub time_ms: f64,
    /// `None` when the checks were not requested.
    pub invariants_ok: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    model: String,
    mode: String,
    order: String,
    nonempty: bool,
    reachable: String,
    pairs_added: usize,
    roots: usize,
    time_ms: f64,
    invariants_ok: Option<bool>,
}

impl RunReport {
    pub fn new(m: &PdtaModel, r: &ReachResult, mode: &str, order: &str, checked: bool) -> Self {
        RunReport {
            model: m.name().to_string(),
            mode: mode.to_string(),
            order: order.to_string(),
            nonempty: r.nonempty,
            reachable: r
                .reachable
                .iter()
                .map(|&q| m.state_name(q).to_string())
                .collect(),
            pairs_added: r.stats.pairs_added,
            roots: r.stats.roots,
            time_ms: r.stats.elapsed.as_secs_f64() * 1e3,
            invariants_ok: checked.then(|| r.invariants_ok()),
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    /// Header line plus one record.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(CsvRow {
            model: self.model.clone(),
            mode: self.mode.clone(),
            order: self.order.clone(),
            nonempty: self.nonempty,
            reachable: self.reachable.join(";"),
            pairs_added: self.pairs_added,
            roots: self.roots,
            time_ms: self.time_ms,
            invariants_ok: self.invariants_ok,
        })?;
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    #[cfg(test)]
    pub fn from_csv(text: &str) -> anyhow::Result<Self> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let row: CsvRow = rd
            .deserialize()
            .next()
            .ok_or_else(|| anyhow::anyhow!("no CSV record"))??;
        Ok(RunReport {
            model: row.model,
            mode: row.mode,
            order: row.order,
            nonempty: row.nonempty,
            reachable: if row.reachable.is_empty() {
                Vec::new()
            } else {
                row.reachable.split(';').map(str::to_string).collect()
            },
            pairs_added: row.pairs_added,
            roots: row.roots,
            time_ms: row.time_ms,
            invariants_ok: row.invariants_ok,
        })
    }
}
