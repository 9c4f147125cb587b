mod args;

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Construct, VerifyArgs};
use pekr_core::counting::{build_table, threshold_scan, Lemma};
use pekr_core::family::{
    compress, construct_hm, construct_trivial, family_split, first_violation, recognize_hm,
    triviality_witness, HmWitness, PartitionFamily,
};
use pekr_core::io::{emit_family, parse_family, FamilyFile, Format};
use pekr_core::partition::enumerate_partitions;
use pekr_core::search::{build_graph, max_family, SearchOptions};
use pekr_core::verify::{cmd_verify, exit_code, Claim, Status, VerifyConfig};

/// Exit status of a search that ran out of budget.
const EXIT_TIMED_OUT: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()
        {
            eprintln!("error: cannot configure {} threads: {}", k, e);
            return ExitCode::FAILURE;
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    // a closed pipe downstream is not an error
    let mut stdout = std::io::stdout().lock();
    let _ = stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

fn read_family(path: &Path) -> Result<FamilyFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_family(&text).with_context(|| format!("in {}", path.display()))
}

fn need_t(arg: Option<usize>, file: &FamilyFile) -> Result<usize> {
    match arg.or(file.t) {
        Some(0) => bail!("t must be positive"),
        Some(t) => Ok(t),
        None => bail!("t is required: pass --t or put t=<T> in the header"),
    }
}

fn budget(secs: u64) -> Option<Duration> {
    (secs > 0).then(|| Duration::from_secs(secs))
}

fn members(f: &PartitionFamily) -> Vec<String> {
    f.partitions().iter().map(|p| p.to_string()).collect()
}

fn run(cli: &Cli, out: &mut String) -> Result<u8> {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Bell { n } => {
            let table = build_table(*n);
            if json_out {
                let rows: Vec<_> = (0..=*n)
                    .map(|m| {
                        Ok(json!({ "n": m, "bell": table.bell(m)?, "bell_sf": table.bell_sf(m)? }))
                    })
                    .collect::<Result<_>>()?;
                writeln!(out, "{}", serde_json::Value::Array(rows))?;
            } else {
                writeln!(out, "n\tB_n\tB~_n")?;
                for m in 0..=*n {
                    writeln!(out, "{}\t{}\t{}", m, table.bell(m)?, table.bell_sf(m)?)?;
                }
            }
        }
        Command::Enumerate { n, rgs, count } => {
            let iter = enumerate_partitions(*n)?;
            if *count {
                let c = iter.len();
                if json_out {
                    writeln!(out, "{}", json!({ "n": n, "count": c.to_string() }))?;
                } else {
                    writeln!(out, "{}", c)?;
                }
            } else {
                let show = |p: &pekr_core::SetPartition| {
                    if *rgs {
                        p.to_rgs_string()
                    } else {
                        p.to_string()
                    }
                };
                if json_out {
                    let all: Vec<String> = iter.map(|p| show(&p)).collect();
                    writeln!(out, "{}", json!({ "n": n, "partitions": all }))?;
                } else {
                    for p in iter {
                        writeln!(out, "{}", show(&p))?;
                    }
                }
            }
        }
        Command::Intersect { file, t } => {
            let f = read_family(file)?;
            let t = need_t(*t, &f)?;
            let violation = first_violation(&f.family, t);
            let triv = if f.family.is_empty() {
                None
            } else {
                triviality_witness(&f.family, t)?
            };
            if json_out {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "n": f.family.n(),
                        "t": t,
                        "size": f.family.len(),
                        "intersecting": violation.is_none(),
                        "violation": violation.as_ref().map(|(p, q, s)| json!({
                            "left": p.to_string(), "right": q.to_string(), "shared": s,
                        })),
                        "trivial": triv.is_some(),
                        "common_singletons": triv.as_ref().map(|w| w.common.clone()),
                    })
                )?;
            } else {
                writeln!(out, "size: {}", f.family.len())?;
                match &violation {
                    None => writeln!(out, "{}-intersecting: yes", t)?,
                    Some((p, q, s)) => writeln!(
                        out,
                        "{}-intersecting: no ({} and {} share {} blocks)",
                        t, p, q, s
                    )?,
                }
                match &triv {
                    Some(w) => writeln!(out, "trivial: yes (common singletons {:?})", w.common)?,
                    None => writeln!(out, "trivial: no")?,
                }
            }
        }
        Command::Split { file, i, j } => {
            let f = read_family(file)?;
            let (dec, image) = family_split(&f.family, *i, *j)?;
            if !json_out {
                writeln!(
                    out,
                    "# moved {} of {} members",
                    dec.moved.len(),
                    f.family.len()
                )?;
            }
            write!(out, "{}", emit_family(&image, f.t, cli.format))?;
        }
        Command::Compress { file, t, order } => {
            let f = read_family(file)?;
            let t = need_t(*t, &f)?;
            let rep = compress(&f.family, t, *order)?;
            if json_out {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "n": f.family.n(),
                        "t": t,
                        "steps": rep.steps,
                        "passes": rep.passes,
                        "stuck": rep.stuck,
                        "members": members(&rep.final_family),
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "# {} effective splittings in {} passes{}",
                    rep.effective_steps(),
                    rep.passes,
                    if rep.stuck {
                        ", stopped before compressed"
                    } else {
                        ""
                    }
                )?;
                for s in &rep.steps {
                    writeln!(out, "# S_{},{} moved {}", s.i, s.j, s.moved)?;
                }
                write!(
                    out,
                    "{}",
                    emit_family(&rep.final_family, Some(t), Format::Text)
                )?;
            }
        }
        Command::Construct(c) => {
            let (family, t) = match c {
                Construct::Trivial { n, anchors } => {
                    (construct_trivial(*n, anchors)?, anchors.len())
                }
                Construct::Hm { n, anchors, pivot } => {
                    let w = HmWitness::new(anchors.clone(), *pivot)?;
                    (construct_hm(*n, &w)?, anchors.len())
                }
            };
            write!(out, "{}", emit_family(&family, Some(t), cli.format))?;
        }
        Command::Recognize { file, t } => {
            let f = read_family(file)?;
            let t = need_t(*t, &f)?;
            let w = recognize_hm(&f.family, t)?;
            if json_out {
                writeln!(out, "{}", json!({ "hm_witness": w }))?;
            } else {
                match w {
                    Some(w) => writeln!(out, "H({:?}; {})", w.anchors, w.pivot)?,
                    None => writeln!(out, "none")?,
                }
            }
        }
        Command::Verify(v) => return verify(cli, v, out),
        Command::Search {
            n,
            t,
            mode,
            timeout,
        } => {
            let graph = build_graph(*n, *t)?;
            let opts = SearchOptions {
                timeout: budget(*timeout),
                threads: cli.threads,
            };
            let rep = max_family(&graph, *mode, &opts)?;
            if json_out {
                writeln!(out, "{}", rep.to_json(cli.timing))?;
            } else {
                write!(out, "{}", rep.to_text(cli.timing))?;
            }
            if !rep.optimal {
                return Ok(EXIT_TIMED_OUT);
            }
        }
        Command::Scan {
            lemma,
            t,
            c,
            r,
            n_min,
            n_max,
        } => {
            if *t == 0 {
                bail!("t must be positive");
            }
            let lemma = Lemma::from_name(lemma, *c, *r)?;
            let table = build_table(*n_max);
            let rep = threshold_scan(&table, lemma, *t, *n_min..=*n_max)?;
            if json_out {
                writeln!(out, "{}", serde_json::to_string(&rep)?)?;
            } else {
                let holds = match rep.persistent_from {
                    Some(n) => format!("holds from n = {} through {}", n, n_max),
                    None => format!("does not hold at n = {}", n_max),
                };
                let label = match lemma {
                    Lemma::Less { c } => format!("less c={}", c),
                    Lemma::Less02 { r: Some(r) } => format!("less02 r={}", r),
                    other => other.name().to_string(),
                };
                writeln!(
                    out,
                    "{} t={}: {}{}",
                    label,
                    t,
                    holds,
                    if rep.monotone { "" } else { " (not monotone)" }
                )?;
                let row: Vec<String> = rep
                    .values
                    .iter()
                    .map(|(n, v)| format!("{}:{}", n, if *v { 'T' } else { 'F' }))
                    .collect();
                writeln!(out, "{}", row.join(" "))?;
            }
        }
    }
    Ok(0)
}

fn verify(cli: &Cli, v: &VerifyArgs, out: &mut String) -> Result<u8> {
    let claims = if v.claims.is_empty() {
        Claim::ALL.to_vec()
    } else {
        v.claims
            .iter()
            .map(|c| c.parse())
            .collect::<Result<_, _>>()?
    };
    let range = |lo: Option<usize>, hi: Option<usize>| {
        (lo.is_some() || hi.is_some()).then(|| lo.unwrap_or(0)..=hi.unwrap_or(usize::MAX))
    };
    let cfg = VerifyConfig {
        claims,
        n_range: range(v.n_min, v.n_max),
        t_range: range(v.t_min, v.t_max),
        seed: cli.seed,
        samples: v.samples,
        search: SearchOptions {
            timeout: budget(v.timeout),
            threads: cli.threads,
        },
    };
    let findings = cmd_verify(&cfg)?;
    if cli.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string(&findings)?)?;
    } else {
        for f in &findings {
            let at = match (f.n, f.t) {
                (Some(n), Some(t)) => format!(" at n={} t={}", n, t),
                (Some(n), None) => format!(" at n={}", n),
                _ => String::new(),
            };
            let kind = if f.asymptotic { " [asymptotic]" } else { "" };
            writeln!(
                out,
                "{:<13} {}{}{}",
                f.status.to_string(),
                f.claim,
                at,
                kind
            )?;
            if f.status != Status::Verified {
                writeln!(out, "    {}", f.evidence)?;
            }
        }
    }
    Ok(exit_code(&findings) as u8)
}
