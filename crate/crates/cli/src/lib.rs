//! Command-line front end. [`run`] does all the work so it can be driven from
//! tests without spawning a process.

mod cli;
mod report;

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use boundchain::decomposition::{build_decomposition, make_nice, NiceTreeDecomposition, Strategy};
use boundchain::dp::{is_homologous_with, solve_obcp_with, solve_ohcp_with, SolverConfig, Status};
use boundchain::fixtures::random_instance;
use boundchain::hasse::{
    bound_report, hasse_level, hasse_td_from_skeleton, simplex_delta, HasseContext, Rational,
};
use boundchain::io::{
    parse_chain, parse_complex, parse_td, parse_weights, write_chain, write_complex, write_td,
    write_td_with,
};
use boundchain::oracle::{brute_force_obcp, brute_force_ohcp, brute_force_treewidth, OracleBudget};
use boundchain::{Chain, SimplicialComplex, WeightFunction};
use clap::Parser;
use rand::SeedableRng;
use serde_json::json;

pub use cli::{Cli, Command, OracleCommand};
pub use report::{chain_lines, DecompositionStats, RunReport};

/// Overrides the DP entry budget.
pub const BUDGET_ENV: &str = "BOUNDCHAIN_ENTRY_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn solver_config() -> Result<SolverConfig> {
    let mut config = SolverConfig::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        config.entry_budget = v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV} must be a positive integer, got '{v}'"))?;
    }
    Ok(config)
}

struct Loaded {
    report: RunReport,
    started: Instant,
}

impl Loaded {
    fn new(command: &str) -> Self {
        Loaded {
            report: RunReport::new(command),
            started: Instant::now(),
        }
    }

    fn read(&mut self, role: &str, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.report.digest(role, &bytes);
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn complex(&mut self, path: &Path) -> Result<SimplicialComplex> {
        let text = self.read("complex", path)?;
        parse_complex(&text).with_context(|| format!("in {}", path.display()))
    }

    fn chain(&mut self, role: &str, path: &Path, complex: &SimplicialComplex) -> Result<Chain> {
        let text = self.read(role, path)?;
        parse_chain(&text, complex).with_context(|| format!("in {}", path.display()))
    }

    fn weights(
        &mut self,
        path: Option<&Path>,
        complex: &SimplicialComplex,
        dim: usize,
    ) -> Result<Option<WeightFunction>> {
        path.map(|p| {
            let text = self.read("weights", p)?;
            parse_weights(&text, complex, dim).with_context(|| format!("in {}", p.display()))
        })
        .transpose()
    }

    fn decomposition(
        &mut self,
        complex: &SimplicialComplex,
        td: Option<&Path>,
        strategy: &str,
    ) -> Result<NiceTreeDecomposition> {
        let plain = match td {
            Some(p) => {
                let text = self.read("td", p)?;
                parse_td(&text, complex).with_context(|| format!("in {}", p.display()))?
            }
            None => build_decomposition(&complex.skeleton_graph(), strategy.parse::<Strategy>()?)?,
        };
        let nice = make_nice(&plain)?;
        self.report.decomposition = Some(DecompositionStats::of(&nice));
        Ok(nice)
    }

    fn finish(mut self, json_out: bool, code: i32, plain: String) -> Result<(i32, String)> {
        self.report.wall_time_ms = self.started.elapsed().as_secs_f64() * 1000.0;
        if json_out {
            Ok((code, serde_json::to_string(&self.report)? + "\n"))
        } else {
            Ok((code, plain))
        }
    }
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

fn rational(r: Option<Rational>) -> serde_json::Value {
    match r {
        Some(r) => {
            json!({ "exact": r.to_string(), "value": *r.numer() as f64 / *r.denom() as f64 })
        }
        None => serde_json::Value::Null,
    }
}

fn write_or_return(out: Option<&Path>, text: String) -> Result<String> {
    match out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn execute(command: Command) -> Result<(i32, String)> {
    match command {
        Command::SolveObcp {
            common,
            boundary,
            weights,
            check_cycle,
        } => {
            let mut run = Loaded::new("solve-obcp");
            let k = run.complex(&common.complex)?;
            let b = run.chain("boundary", &boundary, &k)?;
            let w = run.weights(weights.as_deref(), &k, b.dim() + 1)?;
            let ntd = run.decomposition(&k, common.td.as_deref(), &common.strategy)?;
            let mut config = solver_config()?;
            config.check_cycle_first = check_cycle;
            let sol = solve_obcp_with(&k, &b, Some(&ntd), w.as_ref(), &config)?;
            run.report.tables(&sol.stats);
            run.report.status = sol.status.as_str().into();
            run.report.weight = sol.weight;
            run.report.witness = sol.chain.as_ref().map(|c| chain_lines(&k, c));
            let (code, plain) = match (&sol.status, &run.report.witness) {
                (Status::Solved, Some(c)) => (
                    EXIT_OK,
                    format!("weight {}\n{}", sol.weight.unwrap_or(0.0), lines(c)),
                ),
                _ => (EXIT_NEGATIVE, "infeasible\n".to_string()),
            };
            run.finish(common.json, code, plain)
        }
        Command::SolveOhcp {
            common,
            chain,
            weights,
        } => {
            let mut run = Loaded::new("solve-ohcp");
            let k = run.complex(&common.complex)?;
            let b = run.chain("chain", &chain, &k)?;
            let w = run.weights(weights.as_deref(), &k, b.dim())?;
            let ntd = run.decomposition(&k, common.td.as_deref(), &common.strategy)?;
            let sol = solve_ohcp_with(&k, &b, Some(&ntd), w.as_ref(), &solver_config()?)?;
            run.report.tables(&sol.stats);
            run.report.status = "solved".into();
            run.report.weight = Some(sol.weight);
            let h = chain_lines(&k, &sol.homologous);
            let c = chain_lines(&k, &sol.witness);
            let plain = format!(
                "weight {}\nhomologous:\n{}witness:\n{}",
                sol.weight,
                lines(&h),
                lines(&c)
            );
            run.report.homologous = Some(h);
            run.report.witness = Some(c);
            run.finish(common.json, EXIT_OK, plain)
        }
        Command::TestHomologous {
            common,
            chain,
            other,
        } => {
            let mut run = Loaded::new("test-homologous");
            let k = run.complex(&common.complex)?;
            let b = run.chain("chain", &chain, &k)?;
            let h = run.chain("other", &other, &k)?;
            let ntd = run.decomposition(&k, common.td.as_deref(), &common.strategy)?;
            let yes = is_homologous_with(&k, &b, &h, Some(&ntd), &solver_config()?)?;
            homology_answer(run, common.json, yes)
        }
        Command::TestNullHomologous { common, chain } => {
            let mut run = Loaded::new("test-null-homologous");
            let k = run.complex(&common.complex)?;
            let b = run.chain("chain", &chain, &k)?;
            let ntd = run.decomposition(&k, common.td.as_deref(), &common.strategy)?;
            let yes = is_homologous_with(
                &k,
                &b,
                &Chain::empty(b.dim()),
                Some(&ntd),
                &solver_config()?,
            )?;
            homology_answer(run, common.json, yes)
        }
        Command::BuildDecomposition {
            complex,
            strategy,
            out,
            json,
        } => {
            let mut run = Loaded::new("build-decomposition");
            let k = run.complex(&complex)?;
            let td = build_decomposition(&k.skeleton_graph(), strategy.parse::<Strategy>()?)?;
            run.report.decomposition = Some(DecompositionStats::of(&make_nice(&td)?));
            run.report.details = json!({ "width": td.width(), "bags": td.node_count() });
            let text = write_or_return(out.as_deref(), write_td(&td, &k))?;
            run.finish(json, EXIT_OK, text)
        }
        Command::BuildHasseTd {
            complex,
            td,
            dim,
            out,
            json,
        } => {
            let mut run = Loaded::new("build-hasse-td");
            let k = run.complex(&complex)?;
            let text = run.read("td", &td)?;
            let skeleton = parse_td(&text, &k).with_context(|| format!("in {}", td.display()))?;
            let hasse = hasse_td_from_skeleton(&k, &skeleton, dim)?;
            let graph = hasse_level(&k, dim)?;
            let comments: Vec<String> = (0..graph.vertex_count())
                .map(|v| format!("v {v} = {}", graph.label(v)))
                .collect();
            run.report.details = json!({
                "hasse_vertices": graph.vertex_count(),
                "hasse_edges": graph.edge_count(),
                "input_max_bag": skeleton.max_bag_size(),
                "max_bag": hasse.max_bag_size(),
                "width": hasse.width(),
            });
            let written = write_td_with(&hasse, graph.vertex_count(), &comments, |v| v as u64);
            let text = write_or_return(out.as_deref(), written)?;
            run.finish(json, EXIT_OK, text)
        }
        Command::HasseStats {
            complex,
            dim,
            delta,
            exact_expansion,
            json,
        } => {
            let mut run = Loaded::new("hasse-stats");
            let k = match (&complex, delta) {
                (_, Some(n)) => simplex_delta(n)?,
                (Some(p), None) => run.complex(p)?,
                (None, None) => bail!("give --complex or --delta"),
            };
            let graph = hasse_level(&k, dim)?;
            let budget = OracleBudget {
                max_tw_vertices: 20,
                ..OracleBudget::default()
            };
            let context = delta.map(|n| HasseContext { n, d: dim });
            let r = bound_report(&graph, context, exact_expansion.then_some(&budget));
            let checks: Vec<_> = r
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "lhs": c.lhs.to_string(), "relation": c.relation, "rhs": c.rhs.to_string(), "holds": c.holds }))
                .collect();
            let violated = r.violations().count();
            run.report.status = if violated == 0 {
                "ok".into()
            } else {
                "violated".into()
            };
            run.report.details = json!({
                "vertices": r.vertices,
                "edges": r.edges,
                "min_degree": r.min_degree,
                "max_degree": r.max_degree,
                "harmonic_mean": rational(r.harmonic_mean),
                "diameter": r.diameter,
                "edge_expansion": rational(r.edge_expansion),
                "vertex_expansion": rational(r.vertex_expansion),
                "treewidth": r.treewidth,
                "tw_lower_bound": rational(r.tw_lower_bound),
                "expansion_lower_bound": rational(r.expansion_lower_bound),
                "checks": checks,
            });
            let show =
                |x: Option<Rational>| x.map_or("not measured".to_string(), |r| r.to_string());
            let mut plain = format!(
                "vertices {}\nedges {}\ndegree {}..{}\nharmonic mean {}\ndiameter {}\nedge expansion {}\nvertex expansion {}\ntreewidth {}\ntreewidth lower bound {}\n",
                r.vertices,
                r.edges,
                r.min_degree,
                r.max_degree,
                show(r.harmonic_mean),
                r.diameter.map_or("infinite".to_string(), |d| d.to_string()),
                show(r.edge_expansion),
                show(r.vertex_expansion),
                r.treewidth.map_or("not measured".to_string(), |t| t.to_string()),
                show(r.tw_lower_bound),
            );
            for c in &r.checks {
                plain.push_str(&format!(
                    "{} {}: {} {} {}\n",
                    if c.holds { "ok" } else { "VIOLATED" },
                    c.name,
                    c.lhs,
                    c.relation,
                    c.rhs
                ));
            }
            run.finish(json, EXIT_OK, plain)
        }
        Command::Oracle(OracleCommand::Obcp {
            complex,
            boundary,
            weights,
            json,
        }) => {
            let mut run = Loaded::new("oracle-obcp");
            let k = run.complex(&complex)?;
            let b = run.chain("boundary", &boundary, &k)?;
            let w = run.weights(weights.as_deref(), &k, b.dim() + 1)?;
            let sol = brute_force_obcp(&k, &b, w.as_ref(), &OracleBudget::default())?;
            run.report.status = sol.status.as_str().into();
            run.report.weight = sol.weight;
            run.report.witness = sol.chain.as_ref().map(|c| chain_lines(&k, c));
            let (code, plain) = match &run.report.witness {
                Some(c) => (
                    EXIT_OK,
                    format!("weight {}\n{}", sol.weight.unwrap_or(0.0), lines(c)),
                ),
                None => (EXIT_NEGATIVE, "infeasible\n".to_string()),
            };
            run.finish(json, code, plain)
        }
        Command::Oracle(OracleCommand::Ohcp {
            complex,
            chain,
            weights,
            json,
        }) => {
            let mut run = Loaded::new("oracle-ohcp");
            let k = run.complex(&complex)?;
            let b = run.chain("chain", &chain, &k)?;
            let w = run.weights(weights.as_deref(), &k, b.dim())?;
            let sol = brute_force_ohcp(&k, &b, w.as_ref(), &OracleBudget::default())?;
            run.report.status = "solved".into();
            run.report.weight = Some(sol.weight);
            let h = chain_lines(&k, &sol.homologous);
            let c = chain_lines(&k, &sol.witness);
            let plain = format!(
                "weight {}\nhomologous:\n{}witness:\n{}",
                sol.weight,
                lines(&h),
                lines(&c)
            );
            run.report.homologous = Some(h);
            run.report.witness = Some(c);
            run.finish(json, EXIT_OK, plain)
        }
        Command::Oracle(OracleCommand::Tw {
            complex,
            dim,
            max_vertices,
            json,
        }) => {
            let mut run = Loaded::new("oracle-tw");
            let k = run.complex(&complex)?;
            let graph = match dim {
                Some(d) => hasse_level(&k, d)?,
                None => k.skeleton_graph(),
            };
            let budget = OracleBudget {
                max_tw_vertices: max_vertices,
                ..OracleBudget::default()
            };
            let tw = brute_force_treewidth(&graph, &budget)?;
            run.report.details = json!({ "treewidth": tw, "vertices": graph.vertex_count() });
            run.finish(json, EXIT_OK, format!("treewidth {tw}\n"))
        }
        Command::Generate {
            seed,
            dim,
            count,
            max_vertices,
            max_simplices,
            out,
        } => {
            if dim == 0 || max_vertices <= dim || max_simplices == 0 {
                bail!("need 1 <= dim < max-vertices and max-simplices >= 1");
            }
            fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut listing = String::new();
            for i in 0..count {
                let inst = random_instance(&mut rng, max_vertices, max_simplices, dim);
                let stem = out.join(format!("instance_{i:03}"));
                let cplx = stem.with_extension("cplx");
                let chain = stem.with_extension("chain");
                fs::write(&cplx, write_complex(&inst.complex))?;
                fs::write(&chain, write_chain(&inst.complex, &inst.target))?;
                listing.push_str(&format!("{}\n{}\n", cplx.display(), chain.display()));
            }
            Ok((EXIT_OK, listing))
        }
    }
}

fn homology_answer(mut run: Loaded, json_out: bool, yes: bool) -> Result<(i32, String)> {
    run.report.status = if yes { "true".into() } else { "false".into() };
    let code = if yes { EXIT_OK } else { EXIT_NEGATIVE };
    run.finish(json_out, code, format!("{yes}\n"))
}
