use std::collections::BTreeMap;

use boundchain::decomposition::NiceTreeDecomposition;
use boundchain::dp::TableStats;
use boundchain::{Chain, SimplicialComplex};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionStats {
    pub width: usize,
    pub nodes: usize,
    pub leaf: usize,
    pub introduce: usize,
    pub forget: usize,
    pub join: usize,
}

impl DecompositionStats {
    pub fn of(ntd: &NiceTreeDecomposition) -> Self {
        let [leaf, introduce, forget, join] = ntd.kind_counts();
        DecompositionStats {
            width: ntd.width(),
            nodes: ntd.len(),
            leaf,
            introduce,
            forget,
            join,
        }
    }
}

/// One run's outcome. Every key is always present; unused ones are null.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of each input file, by role.
    pub inputs: BTreeMap<String, String>,
    pub decomposition: Option<DecompositionStats>,
    pub status: String,
    pub weight: Option<f64>,
    pub witness: Option<Vec<String>>,
    pub homologous: Option<Vec<String>>,
    pub peak_table_entries: Option<usize>,
    pub total_table_entries: Option<usize>,
    pub details: Value,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            decomposition: None,
            status: "ok".into(),
            weight: None,
            witness: None,
            homologous: None,
            peak_table_entries: None,
            total_table_entries: None,
            details: Value::Null,
            wall_time_ms: 0.0,
        }
    }

    pub fn digest(&mut self, role: &str, bytes: &[u8]) {
        self.inputs
            .insert(role.to_string(), format!("{:x}", Sha256::digest(bytes)));
    }

    pub fn tables(&mut self, stats: &TableStats) {
        self.peak_table_entries = Some(stats.peak_entries());
        self.total_table_entries = Some(stats.total_entries());
    }
}

/// Simplices of a chain in original labels, in lexicographic order.
pub fn chain_lines(complex: &SimplicialComplex, chain: &Chain) -> Vec<String> {
    chain
        .iter()
        .map(|i| complex.format_simplex(complex.simplex(chain.dim(), i)))
        .collect()
}
