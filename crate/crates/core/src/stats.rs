use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Branch,
    HybridNaive,
    HybridFast,
    ClassicDp,
    Oracle,
    VcBranch,
    Color3Branch,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Branch => "branch",
            Algorithm::HybridNaive => "hybrid-naive",
            Algorithm::HybridFast => "hybrid-fast",
            Algorithm::ClassicDp => "classic-dp",
            Algorithm::Oracle => "oracle",
            Algorithm::VcBranch => "vc-branch",
            Algorithm::Color3Branch => "color3-branch",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optimum size (DS, VC) or colourability (3-Coloring).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Size(u32),
    Colorable(bool),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Size(k) => write!(f, "{k}"),
            Answer::Colorable(b) => write!(f, "{b}"),
        }
    }
}

/// Counters recorded by one solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub algorithm: Algorithm,
    pub answer: Answer,
    pub wall_time_ms: f64,
    pub peak_recursion_depth: u64,
    pub peak_live_table_entries: u64,
    pub total_convolution_element_ops: u64,
    pub branch_nodes_visited: u64,
    pub partitions_enumerated: u64,
}

impl SolveStats {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveStats {
            algorithm,
            answer: Answer::Size(0),
            wall_time_ms: 0.0,
            peak_recursion_depth: 0,
            peak_live_table_entries: 0,
            total_convolution_element_ops: 0,
            branch_nodes_visited: 0,
            partitions_enumerated: 0,
        }
    }

    /// Same record without the timing field, for determinism checks.
    pub fn without_time(&self) -> SolveStats {
        SolveStats {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

/// Violations of the table and frame bounds observed during a solve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundAudit {
    pub tables_checked: u64,
    /// Tables with more than `2^(depth - |D|)` entries.
    pub table_entry_violations: u64,
    /// Finite entries with `M[S] - M[∅]` outside `0..=|S|`.
    pub offset_violations: u64,
    pub monotonicity_violations: u64,
    /// Recursion deeper than the decomposition depth plus one.
    pub depth_violations: u64,
    pub frames_checked: u64,
    /// Frames storing more than `l²` list entries.
    pub list_length_violations: u64,
    /// Stored extra costs above the block size.
    pub extra_cost_violations: u64,
    /// Partitions referencing more than `l²` distinct children.
    pub candidate_violations: u64,
}

impl BoundAudit {
    pub fn total_violations(&self) -> u64 {
        self.table_entry_violations
            + self.offset_violations
            + self.monotonicity_violations
            + self.depth_violations
            + self.list_length_violations
            + self.extra_cost_violations
            + self.candidate_violations
    }

    pub fn merge(&mut self, other: &BoundAudit) {
        self.tables_checked += other.tables_checked;
        self.table_entry_violations += other.table_entry_violations;
        self.offset_violations += other.offset_violations;
        self.monotonicity_violations += other.monotonicity_violations;
        self.depth_violations += other.depth_violations;
        self.frames_checked += other.frames_checked;
        self.list_length_violations += other.list_length_violations;
        self.extra_cost_violations += other.extra_cost_violations;
        self.candidate_violations += other.candidate_violations;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub stats: SolveStats,
    pub audit: BoundAudit,
}

impl SolveReport {
    /// Optimum as an integer; panics on a 3-Coloring answer.
    pub fn size(&self) -> u32 {
        match self.stats.answer {
            Answer::Size(s) => s,
            Answer::Colorable(_) => panic!("not a size answer"),
        }
    }
}
