//! Command-line surface: graph generation, point queries, the bijection,
//! the isomorphism verifier, and a self-test.
//!
//! Exit codes: 0 success, 1 domain error (bad flags or inputs), 2 internal
//! failure (a uniqueness or calibration check tripped). All randomness is
//! fixed by `--seed` (or the CRYSTAL_SEED environment variable), and output
//! is byte-identical for identical invocations.

use crate::binf::{e_fast, e_geometric, epsilon_component, f_fast, f_geometric, generate_binf};
use crate::blambda::{generate_blambda, is_stable_component, staircase_check};
use crate::bridge::{
    crystal_isomorphic, multisegment_to_tableau, shape_of_wdims, tableau_crystal,
    tableau_to_multisegment, IsoOutcome,
};
use crate::error::{Error, Result};
use crate::multiseg::{enumerate_up_to, Multisegment};
use crate::rep::{
    epsilon_point, framed_from_json, is_stable, mat_to_rows, moment_map, rep_from_json,
    FramedPointJson, RepPointJson,
};
use crate::rng::Genericity;
use crate::tableau::Tableau;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "crystals",
    about = "Crystal graphs of sl(n+1), three ways: tableaux, quiver-variety components, and the bijection between them",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Master seed for all randomized genericity arguments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Ten times more samples with ten times larger entries.
    #[arg(long, global = true, default_value_t = false)]
    paranoid: bool,
    /// Worker threads for graph expansion (output is canonical either way).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate the crystal on all components up to a total dimension.
    GenBinf {
        #[arg(long = "type")]
        type_: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Generate the highest-weight crystal for a framing vector.
    GenBlambda {
        #[arg(long = "type")]
        type_: String,
        /// Highest weight in fundamental-weight coordinates, e.g. 1,1.
        #[arg(long)]
        hw: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Decompose a representation point into segments.
    Decompose {
        #[arg(long)]
        rep: String,
    },
    /// Cokernel dimension at a vertex, for a point (--rep) or the generic
    /// value on a component (--ms).
    Epsilon {
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        ms: Option<String>,
        #[arg(long)]
        vertex: usize,
    },
    /// Evaluate the moment map of a point.
    Moment {
        #[arg(long)]
        rep: String,
    },
    /// Stability of a framed point (--framed) or of a component (--ms with
    /// --w).
    Stable {
        #[arg(long)]
        framed: Option<String>,
        #[arg(long)]
        ms: Option<String>,
        #[arg(long)]
        w: Option<String>,
    },
    /// Translate between tableaux and multisegments.
    Biject {
        #[arg(long = "type")]
        type_: String,
        /// Entries of a single-column tableau, e.g. 1,5,8,10.
        #[arg(long)]
        column: Option<String>,
        /// Tableau JSON {"rows":[[...]]}.
        #[arg(long)]
        tableau: Option<String>,
        /// Multisegment JSON (requires --hw for the target shape).
        #[arg(long)]
        ms: Option<String>,
        #[arg(long)]
        hw: Option<String>,
    },
    /// Generate both models of a highest-weight crystal and verify they are
    /// isomorphic; print the node matching.
    VerifyIso {
        #[arg(long = "type")]
        type_: String,
        #[arg(long)]
        hw: String,
    },
    /// Run the calibration and golden-data suite.
    Selftest,
}

fn parse_type(s: &str) -> Result<usize> {
    let stem = s
        .strip_prefix('A')
        .or_else(|| s.strip_prefix('a'))
        .ok_or_else(|| Error::domain(format!("unknown type `{s}`, expected A<n>")))?;
    let n: usize = stem
        .parse()
        .map_err(|_| Error::domain(format!("bad rank in type `{s}`")))?;
    if n == 0 {
        return Err(Error::domain("rank must be at least 1"));
    }
    Ok(n)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::domain(format!("bad number `{x}` in list")))
        })
        .collect()
}

fn parse_ms(s: &str) -> Result<Multisegment> {
    serde_json::from_str(s).map_err(|e| Error::domain(format!("malformed multisegment JSON: {e}")))
}

fn parse_tableau(s: &str) -> Result<Tableau> {
    serde_json::from_str(s).map_err(|e| Error::domain(format!("malformed tableau JSON: {e}")))
}

fn genericity(seed: Option<u64>, paranoid: bool) -> Genericity {
    let seed = seed
        .or_else(|| {
            std::env::var("CRYSTAL_SEED")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_SEED);
    if paranoid {
        Genericity::paranoid(seed)
    } else {
        Genericity::new(seed)
    }
}

fn format_graph(g: &crate::graph::CrystalGraph, format: &str) -> Result<String> {
    match format {
        "json" => Ok(g.to_json_string()),
        "dot" => Ok(g.to_dot_string()),
        other => Err(Error::domain(format!(
            "unknown format `{other}`, expected json or dot"
        ))),
    }
}

/// Run the CLI on the given arguments (without the binary name) and return
/// the output that belongs on stdout.
pub fn run(args: &[String]) -> Result<String> {
    let mut argv = vec!["crystals".to_string()];
    argv.extend(args.iter().cloned());
    let cli = Cli::try_parse_from(&argv).map_err(|e| Error::domain(e.to_string()))?;
    let gen = genericity(cli.seed, cli.paranoid);
    let jobs = cli.jobs.max(1);
    match cli.cmd {
        Cmd::GenBinf {
            type_,
            depth,
            format,
        } => {
            let n = parse_type(&type_)?;
            let g = generate_binf(n, depth, &gen, jobs)?;
            format_graph(&g, &format)
        }
        Cmd::GenBlambda { type_, hw, format } => {
            let n = parse_type(&type_)?;
            let wdims = parse_usize_list(&hw)?;
            if wdims.len() != n {
                return Err(Error::domain(format!(
                    "highest weight has {} coordinates, expected {n}",
                    wdims.len()
                )));
            }
            let g = generate_blambda(n, &wdims, &gen, jobs)?;
            format_graph(&g, &format)
        }
        Cmd::Decompose { rep } => {
            let data: RepPointJson = serde_json::from_str(&rep)
                .map_err(|e| Error::domain(format!("malformed rep JSON: {e}")))?;
            let p = rep_from_json(&data)?;
            let m = crate::rep::decompose_segments(&p)?;
            Ok(serde_json::to_string(&m).unwrap())
        }
        Cmd::Epsilon { rep, ms, vertex } => match (rep, ms) {
            (Some(rep), None) => {
                let data: RepPointJson = serde_json::from_str(&rep)
                    .map_err(|e| Error::domain(format!("malformed rep JSON: {e}")))?;
                let p = rep_from_json(&data)?;
                if vertex == 0 || vertex > p.dims.len() {
                    return Err(Error::domain("vertex out of range"));
                }
                Ok(epsilon_point(&p, vertex).to_string())
            }
            (None, Some(ms)) => {
                let m = parse_ms(&ms)?;
                if vertex == 0 || vertex > m.n {
                    return Err(Error::domain("vertex out of range"));
                }
                Ok(epsilon_component(&m, vertex, &gen).to_string())
            }
            _ => Err(Error::domain("pass exactly one of --rep or --ms")),
        },
        Cmd::Moment { rep } => {
            let data: RepPointJson = serde_json::from_str(&rep)
                .map_err(|e| Error::domain(format!("malformed rep JSON: {e}")))?;
            let p = rep_from_json(&data)?;
            let psi = moment_map(&p);
            let out: BTreeMap<String, Vec<Vec<String>>> = psi
                .iter()
                .map(|(v, m)| (v.to_string(), mat_to_rows(m)))
                .collect();
            Ok(serde_json::to_string(&out).unwrap())
        }
        Cmd::Stable { framed, ms, w } => match (framed, ms) {
            (Some(framed), None) => {
                let data: FramedPointJson = serde_json::from_str(&framed)
                    .map_err(|e| Error::domain(format!("malformed framed-point JSON: {e}")))?;
                let fp = framed_from_json(&data)?;
                Ok(is_stable(&fp)?.to_string())
            }
            (None, Some(ms)) => {
                let m = parse_ms(&ms)?;
                let w = w.ok_or_else(|| Error::domain("--ms requires --w"))?;
                let wdims = parse_usize_list(&w)?;
                Ok(is_stable_component(&m, &wdims, &gen)?.to_string())
            }
            _ => Err(Error::domain("pass exactly one of --framed or --ms")),
        },
        Cmd::Biject {
            type_,
            column,
            tableau,
            ms,
            hw,
        } => {
            let n = parse_type(&type_)?;
            match (column, tableau, ms) {
                (Some(column), None, None) => {
                    let entries = parse_usize_list(&column)?;
                    let rows: Vec<Vec<usize>> = entries.iter().map(|&e| vec![e]).collect();
                    let t = Tableau::new(rows)
                        .map_err(|_| Error::domain("column entries must strictly increase"))?;
                    let m = tableau_to_multisegment(&t, n)?;
                    Ok(serde_json::to_string(&m).unwrap())
                }
                (None, Some(tableau), None) => {
                    let t = parse_tableau(&tableau)?;
                    let m = tableau_to_multisegment(&t, n)?;
                    Ok(serde_json::to_string(&m).unwrap())
                }
                (None, None, Some(ms)) => {
                    let m = parse_ms(&ms)?;
                    let hw = hw.ok_or_else(|| Error::domain("--ms requires --hw"))?;
                    let wdims = parse_usize_list(&hw)?;
                    let t = multisegment_to_tableau(&m, &wdims)?;
                    Ok(serde_json::to_string(&t).unwrap())
                }
                _ => Err(Error::domain(
                    "pass exactly one of --column, --tableau, or --ms",
                )),
            }
        }
        Cmd::VerifyIso { type_, hw } => {
            let n = parse_type(&type_)?;
            let wdims = parse_usize_list(&hw)?;
            if wdims.len() != n {
                return Err(Error::domain(format!(
                    "highest weight has {} coordinates, expected {n}",
                    wdims.len()
                )));
            }
            let geometric = generate_blambda(n, &wdims, &gen, jobs)?;
            let shape = shape_of_wdims(n, &wdims)?;
            let tableaux = tableau_crystal(&shape, n);
            match crystal_isomorphic(&geometric, &tableaux) {
                IsoOutcome::Isomorphic(matching) => {
                    let out = serde_json::json!({
                        "isomorphic": true,
                        "matching": matching.pairs,
                    });
                    Ok(serde_json::to_string_pretty(&out).unwrap())
                }
                IsoOutcome::Mismatch(msg) => Err(Error::internal(format!(
                    "models disagree for type A{n}, hw {hw}: {msg}"
                ))),
            }
        }
        Cmd::Selftest => selftest(&gen, jobs),
    }
}

/// Calibration and golden-data suite. Any mismatch is an internal error.
pub fn selftest(gen: &Genericity, jobs: usize) -> Result<String> {
    let mut report = String::new();
    let ok = |line: &str, report: &mut String| {
        report.push_str("ok ");
        report.push_str(line);
        report.push('\n');
    };

    // Golden tableau crystal of shape (2,1).
    let tabg = tableau_crystal(&[2, 1], 2);
    if tabg.nodes.len() != 8 || tabg.edges.len() != 8 {
        return Err(Error::internal("tableau crystal of shape (2,1) has wrong size"));
    }
    let edge_ids: Vec<(String, usize, String)> = tabg
        .edges
        .iter()
        .map(|e| {
            (
                tabg.nodes[e.src].id.clone(),
                e.color,
                tabg.nodes[e.dst].id.clone(),
            )
        })
        .collect();
    let golden = [
        ("(11/2)", 1, "(12/2)"),
        ("(11/3)", 1, "(12/3)"),
        ("(12/3)", 1, "(22/3)"),
        ("(13/3)", 1, "(23/3)"),
        ("(11/2)", 2, "(11/3)"),
        ("(12/2)", 2, "(13/2)"),
        ("(13/2)", 2, "(13/3)"),
        ("(22/3)", 2, "(23/3)"),
    ];
    for (s, c, d) in golden {
        if !edge_ids
            .iter()
            .any(|(es, ec, ed)| es == s && *ec == c && ed == d)
        {
            return Err(Error::internal(format!(
                "golden edge {s} -{c}-> {d} missing from the tableau crystal"
            )));
        }
    }
    ok("golden tableau crystal (2,1)", &mut report);

    // Geometric model of the same crystal, with the known node matching.
    let geo = generate_blambda(2, &[1, 1], gen, jobs)?;
    if geo.nodes.len() != 8 || geo.edges.len() != 8 {
        return Err(Error::internal("geometric adjoint crystal has wrong size"));
    }
    match crystal_isomorphic(&geo, &tabg) {
        IsoOutcome::Isomorphic(matching) => {
            for (want_ms, want_tab) in
                [("{[1,1],[2,2]}", "(12/3)"), ("{[1,2]}", "(13/2)")]
            {
                if !matching
                    .pairs
                    .iter()
                    .any(|(a, b)| a == want_ms && b == want_tab)
                {
                    return Err(Error::internal(format!(
                        "expected matching {want_ms} <-> {want_tab} not found"
                    )));
                }
            }
        }
        IsoOutcome::Mismatch(msg) => {
            return Err(Error::internal(format!("adjoint models disagree: {msg}")))
        }
    }
    ok("geometric adjoint crystal matches tableaux", &mut report);

    // Column bijection round trip.
    let t = Tableau::new(vec![vec![1], vec![5], vec![8], vec![10]]).unwrap();
    let m = tableau_to_multisegment(&t, 9)?;
    if m.to_string() != "{[4,9],[3,7],[2,4]}" {
        return Err(Error::internal("column bijection gave the wrong segments"));
    }
    let mut wdims = vec![0usize; 9];
    wdims[3] = 1;
    if multisegment_to_tableau(&m, &wdims)? != t {
        return Err(Error::internal("column bijection does not round-trip"));
    }
    ok("column bijection round trip", &mut report);

    // Calibration gate: the fast signature rule must agree with the
    // geometric operators everywhere at desk scale.
    for n in 1..=3usize {
        let all = enumerate_up_to(n, 6);
        let check = |m: &Multisegment| -> Result<()> {
            for i in 1..=n {
                if f_fast(m, i) != f_geometric(m, i, gen)? {
                    return Err(Error::internal(format!(
                        "calibration mismatch: f_{i} of {m}"
                    )));
                }
                if e_fast(m, i) != e_geometric(m, i, gen)? {
                    return Err(Error::internal(format!(
                        "calibration mismatch: e_{i} of {m}"
                    )));
                }
            }
            Ok(())
        };
        if jobs > 1 {
            all.par_iter().map(check).collect::<Result<Vec<_>>>()?;
        } else {
            all.iter().map(check).collect::<Result<Vec<_>>>()?;
        }
        ok(
            &format!("calibration rank {n} on {} multisegments", all.len()),
            &mut report,
        );
    }

    // Staircase rule against sampled stability.
    for n in 1..=3usize {
        for m in enumerate_up_to(n, 4) {
            for r in 1..=n {
                let mut wdims = vec![0usize; n];
                wdims[r - 1] = 1;
                if staircase_check(&m, r) != is_stable_component(&m, &wdims, gen)? {
                    return Err(Error::internal(format!(
                        "staircase rule disagrees with stability at {m}, r={r}"
                    )));
                }
            }
        }
    }
    ok("staircase rule matches sampled stability", &mut report);

    report.push_str(&format!(
        "selftest passed ({} fallback events)\n",
        gen.fallback_count()
    ));
    Ok(report)
}
