//! Command-line frontend: Hodge diamonds of pencil members, orbifold Hodge
//! numbers of threefold quotients, weighted-projective combinatorics, and K3
//! lattice computations, emitted as reproducible JSON or Markdown reports.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use dwork_core::dwork::{hodge_diamond, hodge_hypersurface, singular_fibers};
use dwork_core::group::{named_group_generators, parse_generators, GroupElement};
use dwork_core::k3;
use dwork_core::orbifold::chen_ruan;
use dwork_core::wps;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Parser)]
#[command(name = "dwork", version, about = "Exact geometry of the Dwork pencil")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for the exact-sampling consensus checks over the pencil parameter.
    #[arg(long, global = true, default_value_t = 0)]
    lambda_seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Upper bound on the size of enumerated groups.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hodge diamond and singular fibers of a pencil member (--n), or of a
    /// general smooth hypersurface (--dim with --deg).
    Hodge {
        /// Ambient projective dimension of the Calabi-Yau pencil member.
        #[arg(long, conflicts_with_all = ["dim", "deg"])]
        n: Option<usize>,
        /// Complex dimension of a general hypersurface.
        #[arg(long, requires = "deg")]
        dim: Option<usize>,
        /// Degree of a general hypersurface.
        #[arg(long, requires = "dim")]
        deg: Option<usize>,
    },
    /// Orbifold Hodge numbers of the quotient of the quintic threefold by a
    /// period-preserving group.
    Quotient {
        /// Ambient projective dimension (only 4 is supported).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Named group (A5, A5xH4, G1, G2, G3, Z10, Z15, D5a, D5b) or a
        /// comma-separated list of element literals like
        /// "(1 2)(3 4);0,0,0,0,0" or "h(1,4,0,0,0)".
        #[arg(long)]
        group: String,
    },
    /// Weighted-projective combinatorics of the symmetrized quotient model.
    Wps {
        #[arg(long)]
        n: u64,
    },
    /// K3 lattice computations on the quartic member of the pencil.
    Lattice {
        #[command(subcommand)]
        sub: LatticeCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// The 48 lines on the Fermat quartic and their incidences.
    Lines,
    /// Neron-Severi lattice of the Fermat quartic (20-line basis).
    NsFermat,
    /// Co-invariant lattice of the symplectic (Z/4)^2 twist group.
    OmegaH3,
    /// Co-invariant lattice of a symplectic alternating-group action.
    OmegaA4,
    /// Co-invariant lattice of a symplectic symmetric-group action.
    OmegaS4,
    /// Neron-Severi lattice of the generic quartic in the pencil.
    NsXlambda,
    /// Kummer criterion for the transcendental lattice of the generic quartic.
    KummerTest,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}

fn envelope(command: &str, inputs: Value, seed: u64, results: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "results": results,
        "provenance": "computed",
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn lattice_value(l: &dwork_core::IntegralLattice, labels: Vec<String>) -> Value {
    let (pos, neg, zero) = l.signature().unwrap_or((0, 0, 0));
    json!({
        "basis": labels,
        "gram": k3::gram_rows_i64(&l.gram),
        "rank": l.rank(),
        "det": l.det().to_i64(),
        "signature": [pos, neg, zero],
        "invariant_factors": l
            .invariant_factors()
            .iter()
            .map(|f| f.to_u64())
            .collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let out = match &cli.cmd {
        Cmd::Hodge { n, dim, deg } => {
            let (diamond, fibers, inputs) = match (n, dim, deg) {
                (Some(n), None, None) => (
                    hodge_diamond(*n)?,
                    Some(singular_fibers(*n)?),
                    json!({ "n": n }),
                ),
                (None, Some(m), Some(d)) => (
                    hodge_hypersurface(*m, *d)?,
                    None,
                    json!({ "dim": m, "deg": d }),
                ),
                _ => {
                    eprintln!("error: pass either --n, or both --dim and --deg");
                    std::process::exit(2);
                }
            };
            let results = json!({
                "hodge": serde_json::to_value(&diamond)?,
                "betti": diamond.betti().iter().map(|b| *b as i64).collect::<Vec<_>>(),
                "singular_fibers": fibers.map(|f| serde_json::to_value(f).unwrap()),
            });
            envelope_out(cli, "hodge", inputs, 0, results)?
        }
        Cmd::Quotient { n, group } => {
            if *n != 4 {
                eprintln!("error: only --n 4 quotients are supported");
                std::process::exit(2);
            }
            let gens = resolve_group(group, *n)?;
            let report = chen_ruan(&gens, cli.lambda_seed, cli.cap)?;
            let inputs = json!({
                "n": n,
                "group": group,
                "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            });
            envelope_out(cli, "quotient", inputs, cli.lambda_seed, serde_json::to_value(&report)?)?
        }
        Cmd::Wps { n } => {
            let ws = wps::WeightSystem::symmetric_quintic_model(*n)?;
            let wf = wps::wellformed_check(&ws);
            let term = wps::terminality_verdict(*n)?;
            let results = json!({
                "weight_system": serde_json::to_value(&ws)?,
                "wellformed": serde_json::to_value(&wf)?,
                "terminality": serde_json::to_value(&term)?,
            });
            envelope_out(cli, "wps", json!({ "n": n }), 0, results)?
        }
        Cmd::Lattice { sub } => run_lattice(cli, sub)?,
    };
    println!("{out}");
    Ok(())
}

fn resolve_group(spec: &str, n: usize) -> anyhow::Result<Vec<GroupElement>> {
    match named_group_generators(spec) {
        Ok(g) => Ok(g),
        Err(_) => Ok(parse_generators(spec, n)?),
    }
}

fn run_lattice(cli: &Cli, sub: &LatticeCmd) -> anyhow::Result<String> {
    let ns = k3::ns_fermat()?;
    let line_labels = |idx: &[usize]| -> Vec<String> {
        idx.iter().map(|i| format!("l{i}")).collect()
    };
    let omega_value = |gens: &[k3::MonomialMap]| -> anyhow::Result<Value> {
        let rep = k3::coinvariant_lattice(&ns, gens)?;
        let labels = (1..=rep.omega.rank()).map(|i| format!("w{i}")).collect();
        Ok(json!({
            "invariant_rank": rep.invariant_rank,
            "lattice": lattice_value(&rep.omega, labels),
        }))
    };
    let (name, results) = match sub {
        LatticeCmd::Lines => {
            let meets: Vec<Vec<usize>> = (0..48)
                .map(|i| {
                    (0..48)
                        .filter(|&j| {
                            j != i && ns.full_gram[(i, j)] == num_bigint::BigInt::from(1)
                        })
                        .map(|j| j + 1)
                        .collect()
                })
                .collect();
            (
                "lattice lines",
                json!({
                    "count": ns.lines.len(),
                    "families": 3,
                    "meets": meets,
                }),
            )
        }
        LatticeCmd::NsFermat => (
            "lattice ns-fermat",
            lattice_value(&ns.lattice, line_labels(&k3::NS_BASIS)),
        ),
        LatticeCmd::OmegaH3 => ("lattice omega-H3", omega_value(&k3::h3_generators()?)?),
        LatticeCmd::OmegaA4 => ("lattice omega-A4", omega_value(&k3::a4_generators()?)?),
        LatticeCmd::OmegaS4 => (
            "lattice omega-S4",
            omega_value(&k3::symplectic_s4_generators()?)?,
        ),
        LatticeCmd::NsXlambda => {
            let nsx = k3::ns_xlambda(&ns)?;
            let labels = (1..=19).map(|i| format!("n{i}")).collect();
            (
                "lattice ns-xlambda",
                json!({
                    "lattice": lattice_value(&nsx.lattice, labels),
                    "overlattice_index_sq": nsx.overlattice_index_sq.to_i64(),
                }),
            )
        }
        LatticeCmd::KummerTest => {
            let nsx = k3::ns_xlambda(&ns)?;
            let rep = k3::kummer_test(&nsx)?;
            (
                "lattice kummer-test",
                json!({
                    "transcendental_disc_orders": rep.transcendental_disc.orders,
                    "halvable": rep.twice.is_twice_integral,
                    "halved_is_even": rep.twice.halved_is_even,
                    "halved_disc_orders": rep.twice.halved_disc_orders,
                    "is_kummer": rep.is_kummer,
                }),
            )
        }
    };
    envelope_out(cli, name, json!({}), 0, results)
}

fn envelope_out(
    cli: &Cli,
    command: &str,
    inputs: Value,
    seed: u64,
    results: Value,
) -> anyhow::Result<String> {
    let env = envelope(command, inputs, seed, results);
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(&env)?,
        Format::Md => render_md(&env),
    })
}

fn render_md(env: &Value) -> String {
    let mut out = String::new();
    let command = env["command"].as_str().unwrap_or("?");
    out.push_str(&format!("## {command}\n\n"));
    if let Some(inputs) = env["inputs"].as_object() {
        if !inputs.is_empty() {
            out.push_str("| input | value |\n|---|---|\n");
            for (k, v) in inputs {
                out.push_str(&format!("| {k} | {v} |\n"));
            }
            out.push('\n');
        }
    }
    out.push_str("| result | value |\n|---|---|\n");
    flatten_md("", &env["results"], &mut out);
    out.push_str(&format!(
        "\nseed: {} · provenance: {} · version: {}\n",
        env["seed"], env["provenance"], env["version"]
    ));
    out
}

fn flatten_md(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_md(&key, val, out);
            }
        }
        other => {
            let rendered = other.to_string();
            let shown = if rendered.len() > 120 {
                format!("{}…", &rendered[..120])
            } else {
                rendered
            };
            out.push_str(&format!("| {prefix} | {shown} |\n"));
        }
    }
}
