use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::json;

use homverify::count::{
    chrom_eval_with, chrom_poly_with, hom_count_with, ind_count_with, wr_count_with, Limits,
    ListConstraint,
};
use homverify::search::{edge_mono_scan, find_counterexample, simple_target_scan};
use homverify::verify::{self, Claim, EdgeModel, Report, SweepConfig, Verdict};
use homverify::Graph;

use crate::input::{load_graph, load_target};
use crate::{Cli, Command, CountKind, GraphInput};

/// Exit status of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean = 0,
    Found = 1,
}

type Out = BufWriter<Box<dyn Write + Send>>;

fn line(out: &mut Out, value: &impl Serialize) -> Result<(), String> {
    serde_json::to_writer(&mut *out, value).map_err(|e| e.to_string())?;
    out.write_all(b"\n").map_err(|e| e.to_string())
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("{what} requires --{flag}"))
}

fn graph(input: &GraphInput) -> Result<Graph, String> {
    load_graph(&input.graph, input.format.as_deref())
}

fn claim(tag: &str) -> Result<Claim, String> {
    tag.parse::<Claim>().map_err(|e| e.to_string())
}

pub fn run(cli: &Cli) -> Result<Outcome, String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err("--workers must be at least 1".into());
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| e.to_string())?;

    let sink: Box<dyn Write + Send> = match &cli.output {
        Some(p) => Box::new(File::create(p).map_err(|e| format!("{}: {e}", p.display()))?),
        None => Box::new(io::stdout()),
    };
    let mut out = BufWriter::new(sink);
    let limits = Limits {
        override_guards: cli.override_guards,
    };
    let outcome = pool.install(|| dispatch(&cli.command, limits, &mut out))?;
    out.flush().map_err(|e| e.to_string())?;
    Ok(outcome)
}

fn dispatch(command: &Command, limits: Limits, out: &mut Out) -> Result<Outcome, String> {
    match command {
        Command::Count {
            kind,
            input,
            target,
            q,
        } => {
            let h = graph(input)?;
            let none = ListConstraint::new();
            let count = match kind {
                CountKind::Hom => {
                    let g = load_target(&need(target.clone(), "target", "count hom")?)?;
                    let r = hom_count_with(&h, &g, &none, limits).map_err(|e| e.to_string())?;
                    if r.denom() == &1.into() {
                        r.numer().to_string()
                    } else {
                        r.to_string()
                    }
                }
                CountKind::Chrom => {
                    let q = need(*q, "q", "count chrom")?;
                    chrom_eval_with(&h, q, limits)
                        .map_err(|e| e.to_string())?
                        .to_string()
                }
                CountKind::Ind => ind_count_with(&h, &none, limits)
                    .map_err(|e| e.to_string())?
                    .to_string(),
                CountKind::Wr => wr_count_with(&h, &none, limits)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            };
            line(out, &json!({ "count": count }))?;
            Ok(Outcome::Clean)
        }
        Command::Poly { input } => {
            let h = graph(input)?;
            let p = chrom_poly_with(&h, limits).map_err(|e| e.to_string())?;
            line(out, &json!({ "degree": p.degree(), "coeffs": p }))?;
            Ok(Outcome::Clean)
        }
        Command::Verify {
            claim: tag,
            input,
            q,
            edge,
            ell,
            target,
        } => {
            let c = claim(tag)?;
            let h = graph(input)?;
            let reports = verify_reports(c, &h, *q, *edge, *ell, target.as_deref())?;
            let mut outcome = Outcome::Clean;
            for r in &reports {
                if r.verdict == Verdict::Violated {
                    outcome = Outcome::Found;
                }
                line(out, r)?;
            }
            Ok(outcome)
        }
        Command::Sweep {
            claim: tag,
            max_n,
            min_n,
            qs,
            ell,
            gap_q,
            summary_only,
        } => {
            let c = claim(tag)?;
            let cfg = SweepConfig {
                min_n: *min_n,
                max_n: *max_n,
                qs: qs.clone(),
                cycle_len: *ell,
                gap_q: *gap_q,
            };
            let mut write_err = None;
            let summary = verify::sweep(c, &cfg, |r| {
                if !summary_only && write_err.is_none() {
                    write_err = line(out, r).err();
                }
            })
            .map_err(|e| e.to_string())?;
            if let Some(e) = write_err {
                return Err(e);
            }
            line(out, &json!({ "summary": summary }))?;
            Ok(if summary.violated > 0 {
                Outcome::Found
            } else {
                Outcome::Clean
            })
        }
        Command::Scan {
            target,
            all_simple,
            max_n,
            bipartite_only,
        } => {
            let results = match (target, all_simple) {
                (Some(t), _) => {
                    vec![edge_mono_scan(&load_target(t)?, *max_n, *bipartite_only)
                        .map_err(|e| e.to_string())?]
                }
                (None, Some(k)) => {
                    simple_target_scan(*k, *max_n, *bipartite_only).map_err(|e| e.to_string())?
                }
                (None, None) => return Err("scan requires --target or --all-simple".into()),
            };
            let mut outcome = Outcome::Clean;
            for r in &results {
                if !r.satisfies_all {
                    outcome = Outcome::Found;
                }
                line(out, r)?;
            }
            Ok(outcome)
        }
        Command::Search {
            h,
            format,
            k,
            samples,
            seed,
            fixture_dir,
        } => {
            let h = load_graph(h, format.as_deref())?;
            let found = find_counterexample(&h, *k, *samples, *seed).map_err(|e| e.to_string())?;
            match found {
                None => {
                    line(
                        out,
                        &json!({ "found": false, "samples": samples, "seed": seed }),
                    )?;
                    Ok(Outcome::Clean)
                }
                Some(c) => {
                    if !c.reverify(&h).map_err(|e| e.to_string())? {
                        return Err("internal error: counterexample failed re-verification".into());
                    }
                    let manifest = c.manifest(&h);
                    if let Some(dir) = fixture_dir {
                        std::fs::create_dir_all(dir)
                            .map_err(|e| format!("{}: {e}", dir.display()))?;
                        let write = |name: &str, text: String| {
                            let p = dir.join(name);
                            std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))
                        };
                        write("target.txt", c.target.to_text())?;
                        let m =
                            serde_json::to_string_pretty(&manifest).map_err(|e| e.to_string())?;
                        write("manifest.json", m + "\n")?;
                    }
                    line(
                        out,
                        &json!({ "found": true, "counterexample": c, "manifest": manifest }),
                    )?;
                    Ok(Outcome::Found)
                }
            }
        }
    }
}

fn verify_reports(
    c: Claim,
    h: &Graph,
    q: Option<u64>,
    edge: Option<(usize, usize)>,
    ell: usize,
    target: Option<&str>,
) -> Result<Vec<Report>, String> {
    let tag = c.tag();
    let per_edge = |model: EdgeModel| match edge {
        Some(e) => vec![verify::check_edge_ratio(h, model, e)],
        None => verify::edge_ratio_reports(h, model),
    };
    Ok(match c {
        Claim::ColoringCorrelation => verify::check_correlation_coloring(h, need(q, "q", tag)?),
        Claim::ColoringEdgeRatio => per_edge(EdgeModel::Coloring {
            q: need(q, "q", tag)?,
        }),
        Claim::IndependentEdgeRatio => per_edge(EdgeModel::Independent),
        Claim::WidomEdgeRatio => per_edge(EdgeModel::WidomRowlinson),
        Claim::Sidorenko => {
            let g = load_target(need(target, "target", tag)?)?;
            vec![verify::check_sidorenko_bound(h, &g)]
        }
        Claim::CyclePacking => vec![verify::check_cycle_packing_bound(
            h,
            need(q, "q", tag)?,
            ell,
        )],
        Claim::ConnectedIndependent => vec![verify::check_connected_ind_bound(h)],
        Claim::ConnectedWidom => vec![verify::check_connected_wr_bound(h)],
        Claim::WidomLemma => match edge {
            Some(e) => vec![verify::check_wr_lemma(h, e)],
            None => h
                .edges()
                .iter()
                .map(|&e| verify::check_wr_lemma(h, e))
                .collect(),
        },
        Claim::FreeEnergyGap => vec![verify::check_free_energy_gap(h, need(q, "q", tag)?)],
        Claim::BalancedBipartite => vec![verify::check_balanced_bipartite_bound(
            h,
            need(q, "q", tag)?,
        )],
    })
}
