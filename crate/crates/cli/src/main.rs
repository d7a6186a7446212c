use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sodlab_core::exceptional::{self, ExceptionalSequence};
use sodlab_core::graph::{self, MAX_CRITERION_N, MAX_GRAPH_N};
use sodlab_core::notation;
use sodlab_core::sod::{self, Direction, Filtration, Sod, TStability};
use sodlab_core::wpl2;
use sodlab_core::{DerivedObject, Error, QuiverSpec, Result, TypeAEngine};

#[derive(Parser)]
#[command(
    name = "sodlab",
    version,
    about = "Semiorthogonal decompositions, t-stabilities and mutations for A_n and X(2)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct QuiverArg {
    /// Quiver as JSON, e.g. '{"kind":"typeA","n":3}'.
    #[arg(long)]
    quiver: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Left,
    Right,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Left => Direction::Left,
            Dir::Right => Direction::Right,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded Hom dimensions between two objects.
    Hom {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Report a single degree only.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i32>,
    },
    /// All full exceptional sequences.
    ExcSeqs {
        #[command(flatten)]
        q: QuiverArg,
    },
    /// Mutate a sequence (L_i/R_i), an SOD (rho_i) or a filtration (sigma_i).
    Mutate {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, conflicts_with_all = ["sod", "filtration"])]
        seq: Option<String>,
        #[arg(long, conflicts_with = "filtration")]
        sod: Option<String>,
        #[arg(long)]
        filtration: Option<String>,
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum)]
        dir: Dir,
    },
    /// All nontrivial SODs, or only the finest ones.
    Sods {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        finest: bool,
    },
    /// Harder-Narasimhan filtration of an object.
    Hn {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        tstab: String,
        #[arg(long)]
        object: String,
        /// Print `[F@phase, ...]` instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Merge and reorder a tower of factors into the HN tower.
    NormalizeTower {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        tstab: String,
        #[arg(long)]
        object: String,
        /// Factors from the top down, e.g. 'S2@1, P1@2'.
        #[arg(long)]
        factors: String,
    },
    /// SOD to right admissible filtration, or back with --inverse.
    Xi {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, required_unless_present = "filtration")]
        sod: Option<String>,
        #[arg(long, requires = "inverse")]
        filtration: Option<String>,
        #[arg(long)]
        inverse: bool,
    },
    /// t-stability to SOD, or back with --inverse.
    Eta {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, required_unless_present = "sod")]
        tstab: Option<String>,
        #[arg(long, requires = "inverse")]
        sod: Option<String>,
        #[arg(long)]
        inverse: bool,
    },
    /// Full exceptional sequence to finest SOD, or back with --inverse.
    Chi {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, required_unless_present = "sod")]
        seq: Option<String>,
        #[arg(long, requires = "inverse")]
        sod: Option<String>,
        #[arg(long)]
        inverse: bool,
    },
    /// Whether A is finer than B (SODs, or t-stabilities with --tstab).
    Finer {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        tstab: bool,
    },
    /// Refine an SOD to a finest one, or one piece of a t-stability.
    Refine {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, conflicts_with = "tstab")]
        sod: Option<String>,
        #[arg(long, requires_all = ["piece", "local"])]
        tstab: Option<String>,
        #[arg(long)]
        piece: Option<usize>,
        /// Pieces of the local t-stability, e.g. '(S1|S2)'.
        #[arg(long)]
        local: Option<String>,
    },
    /// Mutation graph of finest SODs.
    Graph {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = MAX_GRAPH_N)]
        max_n: usize,
    },
    /// Reduction decomposition of the mutation graph by last block.
    Reduce {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = MAX_GRAPH_N)]
        max_n: usize,
    },
    /// Graph of reduction groups.
    ComponentGraph {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = MAX_GRAPH_N)]
        max_n: usize,
    },
    /// Braid and inverse laws for rho on every finest SOD.
    CheckBraid {
        #[command(flatten)]
        q: QuiverArg,
    },
    /// Linking-chain criterion against direct connectivity.
    CheckCriterion {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = MAX_CRITERION_N)]
        max_n: usize,
    },
    /// The weighted projective line X(2).
    #[command(subcommand)]
    Wpl2(Wpl2Cmd),
}

#[derive(Subcommand)]
enum Wpl2Cmd {
    /// Graded Hom between two exceptional objects.
    Hom {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i32>,
    },
    /// Check a triple, optionally mutating it.
    Seqs {
        #[arg(long)]
        seq: String,
        #[arg(long, requires = "dir")]
        index: Option<usize>,
        #[arg(long, value_enum)]
        dir: Option<Dir>,
        #[arg(long, default_value_t = wpl2::DEFAULT_BOUND)]
        bound: i64,
    },
    /// Windowed mutation graph around a seed.
    Graph {
        #[arg(long, default_value = "(O(-c),O,S10)")]
        seed: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = wpl2::DEFAULT_BOUND)]
        bound: i64,
        #[arg(long)]
        dot: bool,
    },
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn json(v: &Value) -> Self {
        Outcome::ok(pretty(v))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn engine(q: &QuiverArg) -> Result<TypeAEngine> {
    match QuiverSpec::from_json(&q.quiver)? {
        QuiverSpec::TypeA { n } => TypeAEngine::new(n),
        QuiverSpec::Wpl2 => Err(Error::invalid("this command needs a type A quiver; use `sodlab wpl2`")),
    }
}

fn with_display(mut v: Value, display: String) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("display".into(), Value::String(display));
    }
    v
}

fn seq_json(e: &TypeAEngine, s: &ExceptionalSequence) -> Value {
    json!({ "sequence": s.display(e.n()), "items": s.items, "full": s.full })
}

fn sod_json(e: &TypeAEngine, s: &Sod) -> Value {
    with_display(s.to_json(), s.display(e.n()))
}

fn tstab_json(e: &TypeAEngine, t: &TStability) -> Value {
    with_display(t.to_json(), t.display(e.n()))
}

fn filtration_json(e: &TypeAEngine, f: &Filtration) -> Value {
    with_display(f.to_json(), f.display(e.n()))
}

fn parse_seq(e: &TypeAEngine, s: &str) -> Result<ExceptionalSequence> {
    ExceptionalSequence::new(e, notation::parse_sequence(e.n(), s)?)
}

fn parse_factors(e: &TypeAEngine, s: &str) -> Result<Vec<(DerivedObject, usize)>> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).filter(|r| r.contains('@')).unwrap_or(t);
    notation::split_top(t, ',')
        .into_iter()
        .map(|part| {
            let (obj, phase) = part
                .rsplit_once('@')
                .ok_or_else(|| Error::invalid(format!("factor {part:?} needs an @phase suffix")))?;
            let phase = phase
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad phase in {part:?}")))?;
            Ok((notation::parse_object_any(e.n(), obj)?, phase))
        })
        .collect()
}

fn hom_json(dims: Vec<(i32, usize)>) -> Value {
    let total: usize = dims.iter().map(|d| d.1).sum();
    let list: Vec<Value> = dims
        .into_iter()
        .filter(|d| d.1 > 0)
        .map(|(k, d)| json!({ "degree": k, "dim": d }))
        .collect();
    json!({ "hom": list, "total": total })
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Hom { q, x, y, degree } => {
            let e = engine(&q)?;
            let x = notation::parse_object_any(e.n(), &x)?;
            let y = notation::parse_object_any(e.n(), &y)?;
            Ok(Outcome::json(&match degree {
                Some(k) => json!({ "degree": k, "dim": e.hom_dim(&x, &y, k) }),
                None => hom_json(e.hom_window(&x, &y).into_iter().map(|k| (k, e.hom_dim(&x, &y, k))).collect()),
            }))
        }
        Cmd::ExcSeqs { q } => {
            let e = engine(&q)?;
            let all = exceptional::enumerate_full_exceptional_sequences(&e)?;
            Ok(Outcome::json(&Value::Array(all.iter().map(|s| seq_json(&e, s)).collect())))
        }
        Cmd::Mutate {
            q,
            seq,
            sod: sod_arg,
            filtration,
            index,
            dir,
        } => {
            let e = engine(&q)?;
            if let Some(s) = seq {
                let s = parse_seq(&e, &s)?;
                let out = match dir {
                    Dir::Left => exceptional::left_mutate(&e, &s, index)?,
                    Dir::Right => exceptional::right_mutate(&e, &s, index)?,
                };
                Ok(Outcome::json(&seq_json(&e, &out)))
            } else if let Some(s) = sod_arg {
                let out = sod::rho(&e, &Sod::parse(&e, &s)?, index, dir.into())?;
                Ok(Outcome::json(&sod_json(&e, &out)))
            } else if let Some(f) = filtration {
                let out = sod::sigma(&e, &Filtration::parse(&e, &f)?, index, dir.into())?;
                Ok(Outcome::json(&filtration_json(&e, &out)))
            } else {
                Err(Error::invalid("give one of --seq, --sod or --filtration"))
            }
        }
        Cmd::Sods { q, finest } => {
            let e = engine(&q)?;
            let all = if finest {
                sod::enumerate_finest_sods(&e)?
            } else {
                sod::enumerate_all_sods(&e)?
            };
            Ok(Outcome::json(&Value::Array(all.iter().map(|s| sod_json(&e, s)).collect())))
        }
        Cmd::Hn { q, tstab, object, text } => {
            let e = engine(&q)?;
            let t = TStability::parse(&e, &tstab)?;
            let x = notation::parse_object_any(e.n(), &object)?;
            let r = sod::hn_filtration(&e, &t, &x)?;
            if text {
                Ok(Outcome::ok(format!("[{}]", r.display(e.n()))))
            } else {
                Ok(Outcome::json(&with_display(r.to_json(), r.display(e.n()))))
            }
        }
        Cmd::NormalizeTower {
            q,
            tstab,
            object,
            factors,
        } => {
            let e = engine(&q)?;
            let t = TStability::parse(&e, &tstab)?;
            let x = notation::parse_object_any(e.n(), &object)?;
            let fs = parse_factors(&e, &factors)?;
            let out = sod::normalize_tower(&e, &t, &x, &fs)?;
            let result = with_display(out.result.to_json(), out.result.display(e.n()));
            Ok(Outcome::json(&json!({ "result": result, "steps": out.steps })))
        }
        Cmd::Xi {
            q,
            sod: s,
            filtration,
            inverse,
        } => {
            let e = engine(&q)?;
            if inverse {
                let f = filtration.ok_or_else(|| Error::invalid("--inverse needs --filtration"))?;
                let out = sod::xi_inv(&e, &Filtration::parse(&e, &f)?)?;
                Ok(Outcome::json(&sod_json(&e, &out)))
            } else {
                let s = s.ok_or_else(|| Error::invalid("--sod is required"))?;
                let out = sod::xi(&e, &Sod::parse(&e, &s)?)?;
                Ok(Outcome::json(&filtration_json(&e, &out)))
            }
        }
        Cmd::Eta {
            q,
            tstab,
            sod: s,
            inverse,
        } => {
            let e = engine(&q)?;
            if inverse {
                let s = s.ok_or_else(|| Error::invalid("--inverse needs --sod"))?;
                let out = sod::eta_inv(&e, &Sod::parse(&e, &s)?)?;
                Ok(Outcome::json(&tstab_json(&e, &out)))
            } else {
                let t = tstab.ok_or_else(|| Error::invalid("--tstab is required"))?;
                let out = sod::eta(&e, &TStability::parse(&e, &t)?)?;
                Ok(Outcome::json(&sod_json(&e, &out)))
            }
        }
        Cmd::Chi {
            q,
            seq,
            sod: s,
            inverse,
        } => {
            let e = engine(&q)?;
            if inverse {
                let s = s.ok_or_else(|| Error::invalid("--inverse needs --sod"))?;
                let s = Sod::parse(&e, &s)?;
                let out = sod::chi_inv(&e, &s).map_err(|i| {
                    Error::invalid(format!("block {i} is not generated by one exceptional object"))
                })?;
                Ok(Outcome::json(&seq_json(&e, &out)))
            } else {
                let s = seq.ok_or_else(|| Error::invalid("--seq is required"))?;
                let out = sod::chi(&e, &parse_seq(&e, &s)?)?;
                Ok(Outcome::json(&sod_json(&e, &out)))
            }
        }
        Cmd::Finer { q, a, b, tstab } => {
            let e = engine(&q)?;
            let finer = if tstab {
                sod::is_finer_t(&e, &TStability::parse(&e, &a)?, &TStability::parse(&e, &b)?)?
            } else {
                sod::is_finer(&e, &Sod::parse(&e, &a)?, &Sod::parse(&e, &b)?)?
            };
            Ok(Outcome::json(&json!({ "finer": finer })))
        }
        Cmd::Refine {
            q,
            sod: s,
            tstab,
            piece,
            local,
        } => {
            let e = engine(&q)?;
            if let Some(t) = tstab {
                let t = TStability::parse(&e, &t)?;
                let local = notation::parse_blocks(e.n(), local.as_deref().unwrap_or_default())?;
                let local: Vec<_> = local
                    .iter()
                    .map(|g| e.thick_closure_of(g.iter().copied()))
                    .collect();
                let out = sod::refine_locally(&e, &t, piece.unwrap_or_default(), &local)?;
                Ok(Outcome::json(&tstab_json(&e, &out)))
            } else {
                let s = s.ok_or_else(|| Error::invalid("give --sod, or --tstab with --piece and --local"))?;
                let out = sod::refine_to_finest(&e, &Sod::parse(&e, &s)?)?;
                Ok(Outcome::json(&sod_json(&e, &out)))
            }
        }
        Cmd::Graph { q, dot, json: _, max_n } => {
            let e = engine(&q)?;
            let g = graph::build_graph_capped(&e, max_n)?;
            let label = graph::sod_label(e.n());
            Ok(if dot {
                Outcome::ok(g.to_dot("sods", label))
            } else {
                Outcome::json(&g.to_json(label))
            })
        }
        Cmd::Reduce { q, max_n } => {
            let e = engine(&q)?;
            let n = e.n();
            let g = graph::build_graph_capped(&e, max_n)?;
            let red = graph::reduction_decomposition(&e, &g)?;
            let groups: Vec<Value> = red
                .groups
                .iter()
                .map(|gr| {
                    json!({
                        "u": gr.u.name(n),
                        "members": gr.members,
                        "quotient_sods": gr.quotient_sods.iter().map(|s| s.display(n)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let vertices: Vec<String> = g.vertices.iter().map(|s| s.display(n)).collect();
            Ok(Outcome::json(&json!({ "vertices": vertices, "groups": groups })))
        }
        Cmd::ComponentGraph { q, dot, max_n } => {
            let e = engine(&q)?;
            let n = e.n();
            let g = graph::build_graph_capped(&e, max_n)?;
            let red = graph::reduction_decomposition(&e, &g)?;
            let c = graph::component_graph(&g, &red);
            let label = |iv: &sodlab_core::Interval| iv.name(n);
            Ok(if dot {
                Outcome::ok(c.to_dot("components", label))
            } else {
                Outcome::json(&c.to_json(label))
            })
        }
        Cmd::CheckBraid { q } => {
            let e = engine(&q)?;
            let r = sod::check_braid(&e)?;
            let v = json!({
                "holds": r.holds(),
                "sods": r.sods,
                "checks": r.checks,
                "violations": r.violations,
            });
            Ok(Outcome {
                text: pretty(&v),
                code: if r.holds() { 0 } else { 3 },
            })
        }
        Cmd::CheckCriterion { q, max_n } => {
            let e = engine(&q)?;
            let n = e.n();
            let r = graph::check_connectedness_criterion_capped(&e, max_n)?;
            let connected = graph::build_graph_capped(&e, max_n.max(MAX_GRAPH_N))?.is_connected();
            let chains: Vec<Value> = r
                .chains
                .iter()
                .map(|((u, v), chain)| {
                    json!({
                        "from": u.name(n),
                        "to": v.name(n),
                        "chain": chain.iter().map(|w| w.name(n)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let missing: Vec<Value> = r
                .missing
                .iter()
                .map(|(u, v)| json!([u.name(n), v.name(n)]))
                .collect();
            let agree = r.holds == connected;
            let v = json!({
                "criterion": r.holds,
                "connected": connected,
                "agree": agree,
                "chains": chains,
                "missing": missing,
            });
            Ok(Outcome {
                text: pretty(&v),
                code: if agree { 0 } else { 3 },
            })
        }
        Cmd::Wpl2(c) => run_wpl2(c),
    }
}

fn wpl2_seq_json(seq: &[wpl2::Sheaf]) -> Value {
    json!({
        "sequence": wpl2::display_sequence(seq),
        "full": wpl2::is_full_exceptional(seq),
    })
}

fn run_wpl2(cmd: Wpl2Cmd) -> Result<Outcome> {
    match cmd {
        Wpl2Cmd::Hom { x, y, degree } => {
            let x = wpl2::parse_object(&x)?;
            let y = wpl2::parse_object(&y)?;
            Ok(Outcome::json(&match degree {
                Some(k) => json!({ "degree": k, "dim": wpl2::wpl2_hom_dim(&x, &y, k)? }),
                None => {
                    let base = x.shift - y.shift;
                    let dims = [base, base + 1]
                        .into_iter()
                        .map(|k| Ok((k, wpl2::wpl2_hom_dim(&x, &y, k)?)))
                        .collect::<Result<Vec<_>>>()?;
                    hom_json(dims)
                }
            }))
        }
        Wpl2Cmd::Seqs {
            seq,
            index,
            dir,
            bound,
        } => {
            let s = wpl2::parse_sequence(&seq)?;
            match (index, dir) {
                (Some(i), Some(d)) => {
                    if !wpl2::is_full_exceptional(&s) {
                        return Err(Error::invalid(format!(
                            "{} is not a full exceptional sequence",
                            wpl2::display_sequence(&s)
                        )));
                    }
                    let out = wpl2::mutate(&s, i, d.into(), bound)?;
                    Ok(Outcome::json(&json!({ "input": wpl2_seq_json(&s), "output": wpl2_seq_json(&out) })))
                }
                _ => Ok(Outcome::json(&wpl2_seq_json(&s))),
            }
        }
        Wpl2Cmd::Graph {
            seed,
            radius,
            bound,
            dot,
        } => {
            let seed = wpl2::parse_sequence(&seed)?;
            let g = wpl2::windowed_graph(&seed, radius, bound)?;
            let label = |v: &Vec<wpl2::Sheaf>| wpl2::display_sequence(v);
            Ok(if dot {
                Outcome::ok(g.to_dot("wpl2", label))
            } else {
                Outcome::json(&g.to_json(label))
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", out.text.trim_end()) {
                Ok(()) => ExitCode::from(out.code),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
