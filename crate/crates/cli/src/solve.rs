use std::time::Instant;

use clap::ValueEnum;
use tdsolve_core::baseline::color3_branch_report;
use tdsolve_core::gadgets::Problem;
use tdsolve_core::stats::Answer;
use tdsolve_core::{
    domset_classic_dp_report, oracle_3col, oracle_domset, oracle_vc, solve_branch_report,
    solve_hybrid_report, vc_branch_with, Algorithm, ConvMode, Graph, SolveError, SolveStats,
    TreedepthDecomposition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Branch,
    Hybrid,
    Dp,
    Oracle,
    All,
}

/// One concrete solver run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Run {
    Branch,
    HybridNaive,
    HybridFast,
    ClassicDp,
    VcBranch { bnb: bool },
    Color3Branch,
    Oracle,
}

impl Run {
    pub fn name(self) -> &'static str {
        match self {
            Run::Branch => Algorithm::Branch.name(),
            Run::HybridNaive => Algorithm::HybridNaive.name(),
            Run::HybridFast => Algorithm::HybridFast.name(),
            Run::ClassicDp => Algorithm::ClassicDp.name(),
            Run::VcBranch { bnb: false } => Algorithm::VcBranch.name(),
            Run::VcBranch { bnb: true } => "vc-branch-bnb",
            Run::Color3Branch => Algorithm::Color3Branch.name(),
            Run::Oracle => Algorithm::Oracle.name(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("algorithm `{algo:?}` is not available for problem {problem}")]
    Unsupported { algo: Algo, problem: &'static str },
}

/// Solver runs for a problem and algorithm choice.
pub fn plan(
    problem: Problem,
    algo: Algo,
    conv: ConvMode,
    bnb: bool,
) -> Result<Vec<Run>, PlanError> {
    let hybrid = match conv {
        ConvMode::Naive => Run::HybridNaive,
        ConvMode::Fast => Run::HybridFast,
    };
    let runs = match (problem, algo) {
        (Problem::Ds, Algo::Branch) => vec![Run::Branch],
        (Problem::Ds, Algo::Hybrid) => vec![hybrid],
        (Problem::Ds, Algo::Dp) => vec![Run::ClassicDp],
        (Problem::Ds, Algo::All) => vec![
            Run::Branch,
            Run::HybridNaive,
            Run::HybridFast,
            Run::ClassicDp,
        ],
        (Problem::Vc, Algo::Branch) => vec![Run::VcBranch { bnb }],
        (Problem::Vc, Algo::All) => vec![Run::VcBranch { bnb: false }, Run::VcBranch { bnb: true }],
        (Problem::Color3, Algo::Branch | Algo::All) => vec![Run::Color3Branch],
        (_, Algo::Oracle) => vec![Run::Oracle],
        (p, a) => {
            return Err(PlanError::Unsupported {
                algo: a,
                problem: p.name(),
            })
        }
    };
    Ok(runs)
}

pub fn execute(
    problem: Problem,
    run: Run,
    g: &Graph,
    t: &TreedepthDecomposition,
) -> Result<SolveStats, SolveError> {
    let stats = match run {
        Run::Branch => solve_branch_report(g, t)?.stats,
        Run::HybridNaive => solve_hybrid_report(g, t, ConvMode::Naive)?.stats,
        Run::HybridFast => solve_hybrid_report(g, t, ConvMode::Fast)?.stats,
        Run::ClassicDp => domset_classic_dp_report(g, t)?.stats,
        Run::VcBranch { bnb } => vc_branch_with(g, t, bnb)?.stats,
        Run::Color3Branch => color3_branch_report(g, t)?.stats,
        Run::Oracle => {
            let start = Instant::now();
            let answer = match problem {
                Problem::Ds => Answer::Size(oracle_domset(g)?),
                Problem::Vc => Answer::Size(oracle_vc(g)?),
                Problem::Color3 => Answer::Colorable(oracle_3col(g)?),
            };
            let mut stats = SolveStats::new(Algorithm::Oracle);
            stats.answer = answer;
            stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            stats
        }
    };
    Ok(stats)
}

/// Runs every planned solver; differing answers are an error.
pub fn execute_all(
    problem: Problem,
    runs: &[Run],
    g: &Graph,
    t: &TreedepthDecomposition,
) -> Result<Vec<SolveStats>, SolveError> {
    let mut out: Vec<SolveStats> = Vec::with_capacity(runs.len());
    for &run in runs {
        let stats = execute(problem, run, g, t)?;
        if let Some(first) = out.first() {
            if first.answer != stats.answer {
                return Err(SolveError::Disagreement(format!(
                    "{} answered {}, {} answered {}",
                    first.algorithm, first.answer, stats.algorithm, stats.answer
                )));
            }
        }
        out.push(stats);
    }
    Ok(out)
}
