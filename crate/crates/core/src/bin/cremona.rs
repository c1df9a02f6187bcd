//! Command-line front end: parse maps, compute degree sequences, classify
//! growth, run stability/blow-down analyses and reproduce the catalog's
//! degree laws.
//!
//! Exit codes: 0 success, 2 parse error, 3 analysis abort, 4 verification
//! mismatch.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cremona::dynamics::{
    blow_down_image, classify_map, degree_sequence, dynamical_degree_estimate, orbit_point,
    stability_check, BlowDown, ProjPoint,
};
use cremona::maps::{bass_inequalities_hold, bidegree, AffineMapSpec};
use cremona::parse::parse_affine_map;
use cremona::poly::Rat;
use cremona::zoo;

const EXIT_PARSE: u8 = 2;
const EXIT_ANALYSIS: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cremona",
    about = "Exact degree-growth workbench for polynomial automorphisms and birational maps",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct MapSel {
    /// Map expression, e.g. "(z1 + z0*z2^2, z0, z2)"
    map: Option<String>,
    /// Catalog entry name (see `zoo list`)
    #[arg(long)]
    zoo: Option<String>,
    /// Entry parameter, repeatable: --param d=3
    #[arg(long = "param", value_parser = parse_kv)]
    params: Vec<(String, i64)>,
}

fn parse_kv(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let v: i64 = v.parse().map_err(|_| format!("bad integer in '{s}'"))?;
    Ok((k.to_string(), v))
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a map and echo its canonical form
    Parse {
        map: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Degree sequence deg f^1 .. deg f^N
    Degrees {
        #[command(flatten)]
        sel: MapSel,
        #[arg(short = 'N', long = "horizon", default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Growth classification of the degree sequence
    Classify {
        #[command(flatten)]
        sel: MapSel,
        #[arg(short = 'N', long = "horizon", default_value_t = 10)]
        n: usize,
        /// Deepening cap: the horizon grows up to this while undetermined
        #[arg(long = "max-horizon")]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Algebraic stability analysis on P^k
    Stability {
        #[command(flatten)]
        sel: MapSel,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Forward orbit of a projective point, e.g. --point 1:2:1
    Orbit {
        #[command(flatten)]
        sel: MapSel,
        #[arg(long)]
        point: String,
        #[arg(short = 'N', long = "horizon", default_value_t = 5)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Image of a coordinate hyperplane
    Blowdown {
        #[command(flatten)]
        sel: MapSel,
        /// Coordinate index of the hyperplane z_i = 0 (default: last)
        #[arg(long)]
        hyperplane: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bidegree (deg f, deg f^-1) and the dimension inequalities
    Bidegree {
        #[command(flatten)]
        sel: MapSel,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Catalog commands
    Zoo {
        #[command(subcommand)]
        sub: ZooCmd,
    },
    /// Check every catalog entry against its stated degree law
    VerifyPaper {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Seed for the randomized monomial spot checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ZooCmd {
    /// List catalog entries
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Show one entry in full
    Show {
        name: String,
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, i64)>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn resolve(sel: &MapSel) -> Result<AffineMapSpec, Failure> {
    match (&sel.map, &sel.zoo) {
        (Some(text), None) => {
            parse_affine_map(text).map_err(|e| fail(EXIT_PARSE, e.to_string()))
        }
        (None, Some(name)) => {
            let params: BTreeMap<String, i64> = sel.params.iter().cloned().collect();
            Ok(zoo::build(name, &params)
                .map_err(|e| fail(EXIT_PARSE, e.to_string()))?
                .map)
        }
        _ => Err(fail(
            EXIT_PARSE,
            "provide exactly one of a map expression or --zoo NAME",
        )),
    }
}

fn emit(value: &serde_json::Value, format: Format, csv: Option<String>, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Csv => match csv {
            Some(s) => print!("{s}"),
            None => println!("{}", serde_json::to_string(value).unwrap()),
        },
        Format::Text => println!("{text}"),
    }
}

fn cmd_degrees(sel: &MapSel, n: usize, format: Format) -> Result<(), Failure> {
    let m = resolve(sel)?;
    let s = degree_sequence(&m, n).map_err(|e| fail(EXIT_ANALYSIS, e.to_string()))?;
    let mut csv = String::from("n,deg\n");
    let mut text = String::new();
    for (i, d) in s.degrees.iter().enumerate() {
        csv.push_str(&format!("{},{}\n", i + 1, d));
        if i > 0 {
            text.push(' ');
        }
        text.push_str(&d.to_string());
    }
    emit(&json!({"degrees": s.degrees}), format, Some(csv), text);
    Ok(())
}

fn cmd_classify(
    sel: &MapSel,
    n: usize,
    n_max: Option<usize>,
    window: usize,
    format: Format,
) -> Result<(), Failure> {
    if n < 6 {
        return Err(fail(EXIT_ANALYSIS, "classification requires a horizon N >= 6"));
    }
    let m = resolve(sel)?;
    let n_max = n_max.unwrap_or(n + 6).max(n);
    let (s, cls) =
        classify_map(&m, n, n_max, window).map_err(|e| fail(EXIT_ANALYSIS, e.to_string()))?;
    let est = dynamical_degree_estimate(&s, window)
        .map_err(|e| fail(EXIT_ANALYSIS, e.to_string()))?;
    let mut v = cls.to_json();
    v["degrees"] = json!(s.degrees);
    v["lambda_estimate"] = json!({
        "nth_root": est.nth_root,
        "last_ratio": est.last_ratio,
        "bracket": [est.bracket.0, est.bracket.1],
        "certified_one": est.certified_one,
    });
    let text = format!("{:?}  degrees {:?}", cls, s.degrees);
    let csv = format!("tag\n{}\n", cls.tag());
    emit(&v, format, Some(csv), text);
    Ok(())
}

fn cmd_stability(sel: &MapSel, format: Format) -> Result<(), Failure> {
    let m = resolve(sel)?.to_projective();
    let rep = stability_check(&m, m.dimension())
        .map_err(|e| fail(EXIT_ANALYSIS, e.to_string()))?;
    let text = format!(
        "stable: {}{}{}",
        rep.stable,
        rep.failure_step
            .map(|s| format!(", failure_step: {s}"))
            .unwrap_or_default(),
        rep.blow_down
            .as_ref()
            .map(|(h, p)| format!(", hyperplane z{h}=0 blown down to {p}"))
            .unwrap_or_default()
    );
    emit(&rep.to_json(), format, None, text);
    Ok(())
}

fn parse_point(text: &str) -> Result<ProjPoint, Failure> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Result<Vec<Rat>, _> = t
        .split(':')
        .map(|c| Rat::from_str(c.trim()))
        .collect();
    match coords {
        Ok(c) if c.len() >= 2 && c.iter().any(|x| !num_traits::Zero::is_zero(x)) => {
            Ok(ProjPoint::new(c))
        }
        _ => Err(fail(
            EXIT_PARSE,
            format!("bad projective point '{text}'; expected e.g. 1:2:1"),
        )),
    }
}

fn cmd_orbit(sel: &MapSel, point: &str, n: usize, format: Format) -> Result<(), Failure> {
    let m = resolve(sel)?.to_projective();
    let p = parse_point(point)?;
    if p.coords.len() != m.dimension() + 1 {
        return Err(fail(
            EXIT_PARSE,
            format!(
                "point has {} coordinates but the map lives on P^{}",
                p.coords.len(),
                m.dimension()
            ),
        ));
    }
    let orbit = orbit_point(&m, &p, n);
    let pts: Vec<String> = orbit.points.iter().map(|q| q.to_string()).collect();
    let v = json!({
        "points": pts,
        "stopped_at_indeterminacy": orbit.stopped_at_indeterminacy,
    });
    let mut text = pts.join(" -> ");
    if let Some(step) = orbit.stopped_at_indeterminacy {
        text.push_str(&format!("  [hit indeterminacy at step {step}]"));
    }
    let csv = {
        let mut s = String::from("n,point\n");
        for (i, p) in pts.iter().enumerate() {
            s.push_str(&format!("{},{}\n", i + 1, p));
        }
        s
    };
    emit(&v, format, Some(csv), text);
    Ok(())
}

fn cmd_blowdown(sel: &MapSel, hyperplane: Option<usize>, format: Format) -> Result<(), Failure> {
    let m = resolve(sel)?.to_projective();
    let h = hyperplane.unwrap_or(m.dimension());
    if h > m.dimension() {
        return Err(fail(EXIT_PARSE, "hyperplane index out of range"));
    }
    let (v, text) = match blow_down_image(&m, h) {
        BlowDown::Point(p) => (
            json!({"hyperplane": h, "result": "point", "point": p.to_string()}),
            format!("z{h}=0 is blown down to {p}"),
        ),
        BlowDown::NotBlownDown => (
            json!({"hyperplane": h, "result": "not_blown_down"}),
            format!("z{h}=0 is not blown down to a point"),
        ),
        BlowDown::HyperplaneInIndeterminacy => (
            json!({"hyperplane": h, "result": "in_indeterminacy"}),
            format!("z{h}=0 lies in the indeterminacy set"),
        ),
    };
    emit(&v, format, None, text);
    Ok(())
}

fn cmd_bidegree(sel: &MapSel, format: Format) -> Result<(), Failure> {
    let m = resolve(sel)?;
    let bd = bidegree(&m).map_err(|e| fail(EXIT_ANALYSIS, e.to_string()))?;
    let k = m.k;
    let bass = bass_inequalities_hold(bd, k);
    let v = json!({
        "forward": bd.fwd,
        "backward": bd.bwd,
        "dimension": k,
        "bass_inequalities": bass,
    });
    emit(
        &v,
        format,
        Some(format!("forward,backward,bass\n{},{},{}\n", bd.fwd, bd.bwd, bass)),
        format!("deg f = {}, deg f^-1 = {}, inequalities hold: {bass}", bd.fwd, bd.bwd),
    );
    Ok(())
}

fn cmd_zoo(sub: &ZooCmd) -> Result<(), Failure> {
    match sub {
        ZooCmd::List { format } => {
            let cat = zoo::catalog();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&zoo::catalog_json()).unwrap()
                ),
                Format::Csv => {
                    print!("name,dimension,citation\n");
                    for e in &cat {
                        print!("{},{},\"{}\"\n", e.name, e.dimension, e.citation);
                    }
                }
                Format::Text => {
                    for e in &cat {
                        println!("{:<18} C^{:<2} {}", e.name, e.dimension, e.citation);
                    }
                }
            }
            Ok(())
        }
        ZooCmd::Show {
            name,
            params,
            format,
        } => {
            let params: BTreeMap<String, i64> = params.iter().cloned().collect();
            let e = zoo::build(name, &params).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            let mut v = e.describe_json();
            v["map"] = json!(e.map.to_string());
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).unwrap()),
                _ => {
                    println!("{}  ({})", e.name, e.citation);
                    println!("  dimension: {}", e.dimension);
                    println!("  parameters: {:?}", e.params);
                    println!("  map: {}", e.map);
                    println!("  law: {}", e.formula_text);
                    println!("  horizon hint: {}", e.horizon_hint);
                }
            }
            Ok(())
        }
    }
}

struct VerifyRow {
    entry: String,
    detail: String,
    status: &'static str, // "pass" | "FAIL" | "report"
}

fn verify_entry(e: &zoo::ZooEntry) -> Vec<VerifyRow> {
    let mut rows = Vec::new();
    let horizon = e.horizon_hint;
    match (&e.expected_degree, degree_sequence(&e.map, horizon)) {
        (Some(f), Ok(s)) => {
            let mut bad = Vec::new();
            for (i, &d) in s.degrees.iter().enumerate() {
                if let Some(expect) = f(i + 1) {
                    let got = Rat::from_integer((d as i64).into());
                    if expect != got {
                        bad.push(format!("n={}: formula {} vs computed {}", i + 1, expect, d));
                    }
                }
            }
            if bad.is_empty() {
                rows.push(VerifyRow {
                    entry: e.name.clone(),
                    detail: format!("degree law, n <= {horizon}"),
                    status: if e.hard_assert { "pass" } else { "report" },
                });
            } else {
                rows.push(VerifyRow {
                    entry: e.name.clone(),
                    detail: bad.join("; "),
                    status: if e.hard_assert { "FAIL" } else { "report" },
                });
            }
        }
        (Some(_), Err(err)) => rows.push(VerifyRow {
            entry: e.name.clone(),
            detail: format!("degree sequence aborted: {err}"),
            status: if e.hard_assert { "FAIL" } else { "report" },
        }),
        (None, _) => rows.push(VerifyRow {
            entry: e.name.clone(),
            detail: "no closed form; skipped".into(),
            status: "report",
        }),
    }
    if let Some(f) = &e.expected_inverse_degree {
        match e.map.inverse() {
            Ok(inv) => match degree_sequence(&inv, horizon) {
                Ok(s) => {
                    let bad: Vec<String> = s
                        .degrees
                        .iter()
                        .enumerate()
                        .filter_map(|(i, &d)| {
                            f(i + 1).and_then(|expect| {
                                let got = Rat::from_integer((d as i64).into());
                                (expect != got).then(|| {
                                    format!("n={}: formula {} vs computed {}", i + 1, expect, d)
                                })
                            })
                        })
                        .collect();
                    rows.push(VerifyRow {
                        entry: format!("{} (inverse)", e.name),
                        detail: if bad.is_empty() {
                            format!("inverse degree law, n <= {horizon}")
                        } else {
                            bad.join("; ")
                        },
                        status: if !bad.is_empty() && e.hard_assert {
                            "FAIL"
                        } else if bad.is_empty() {
                            "pass"
                        } else {
                            "report"
                        },
                    });
                }
                Err(err) => rows.push(VerifyRow {
                    entry: format!("{} (inverse)", e.name),
                    detail: format!("degree sequence aborted: {err}"),
                    status: "FAIL",
                }),
            },
            Err(err) => rows.push(VerifyRow {
                entry: format!("{} (inverse)", e.name),
                detail: format!("inverse unavailable: {err}"),
                status: "FAIL",
            }),
        }
    }
    rows
}

fn monomial_spot_checks(seed: u64) -> VerifyRow {
    use cremona::maps::{int_det, int_matrix_pow, monomial_map, monomial_map_big, ProjectiveMap};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 20 {
        let k = if checked % 2 == 0 { 2 } else { 3 };
        let a: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if int_det(&a) == 0 {
            continue;
        }
        checked += 1;
        let m = monomial_map(&a).unwrap();
        for n in 2..=4u32 {
            let iter = m.iterate(n as usize);
            if iter.aborted_at.is_some() {
                return VerifyRow {
                    entry: "monomial functoriality".into(),
                    detail: format!("iteration aborted for {a:?}"),
                    status: "FAIL",
                };
            }
            let lhs = iter.iterates.last().unwrap();
            let rhs = monomial_map_big(&int_matrix_pow(&a, n)).unwrap();
            if *lhs != rhs {
                return VerifyRow {
                    entry: "monomial functoriality".into(),
                    detail: format!("phi_A^{n} != phi_(A^{n}) for {a:?}"),
                    status: "FAIL",
                };
            }
            let _ = ProjectiveMap::identity(k);
        }
    }
    VerifyRow {
        entry: "monomial functoriality".into(),
        detail: "20 random matrices, n <= 4".into(),
        status: "pass",
    }
}

fn cmd_verify(format: Format, seed: u64) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for e in zoo::catalog() {
        rows.extend(verify_entry(&e));
    }
    rows.push(monomial_spot_checks(seed));
    let any_fail = rows.iter().any(|r| r.status == "FAIL");
    match format {
        Format::Json => {
            let v: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| json!({"entry": r.entry, "detail": r.detail, "status": r.status}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!(v)).unwrap());
        }
        Format::Csv => {
            print!("entry,status,detail\n");
            for r in &rows {
                print!("{},{},\"{}\"\n", r.entry, r.status, r.detail);
            }
        }
        Format::Text => {
            for r in &rows {
                println!("{:<28} {:<7} {}", r.entry, r.status, r.detail);
            }
        }
    }
    if any_fail {
        Err(fail(EXIT_VERIFY, "verification mismatch"))
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Parse { map, format } => {
            let m = parse_affine_map(map).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            let v = json!({
                "dimension": m.k,
                "kind": if m.components.iter().all(|c| c.den.is_one()) { "polynomial" } else { "rational" },
                "canonical": m.to_string(),
            });
            emit(&v, *format, None, m.to_string());
            Ok(())
        }
        Cmd::Degrees { sel, n, format } => cmd_degrees(sel, *n, *format),
        Cmd::Classify {
            sel,
            n,
            n_max,
            window,
            format,
        } => cmd_classify(sel, *n, *n_max, *window, *format),
        Cmd::Stability { sel, format } => cmd_stability(sel, *format),
        Cmd::Orbit {
            sel,
            point,
            n,
            format,
        } => cmd_orbit(sel, point, *n, *format),
        Cmd::Blowdown {
            sel,
            hyperplane,
            format,
        } => cmd_blowdown(sel, *hyperplane, *format),
        Cmd::Bidegree { sel, format } => cmd_bidegree(sel, *format),
        Cmd::Zoo { sub } => cmd_zoo(sub),
        Cmd::VerifyPaper { format, seed } => cmd_verify(*format, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
