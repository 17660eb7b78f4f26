//! `artin` — presentations, isomorphism word-maps, Reidemeister–Schreier
//! rewriting, abelian invariants, and low-index enumeration for the studied
//! diagram families.
//!
//! Every JSON output carries a `{"tool_version", "command", "params"}`
//! header next to its `result`. Exit codes: 0 success (all checks pass),
//! 1 a verification or reproduction check failed, 2 usage or parameter
//! error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use artin_core::abelian::{
    pair_subgroup_abelianization, pair_subgroup_abelianization_generic,
    point_subgroup_abelianization, AbelianInvariants,
};
use artin_core::diagrams::{
    chain_presentation, delta_presentation, dn_presentation, ngon_presentation, Presentation,
    Quotient,
};
use artin_core::lowindex::{classes_by_index, low_index_tables, table_satisfies};
use artin_core::schreier::{
    bfs_transversal, generic_subgroup_presentation, pair_subgroup_presentation,
    point_coset_table, rho_row_verified, rho_step, t_word,
};
use artin_core::word_maps::{standard_verification, verify_lemma_suite, GeneratorMap, MapFamily};

#[derive(Parser)]
#[command(name = "artin", version, about = "Artin-group presentations, quotients, and verified computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a diagram presentation (optionally with a quotient relator).
    Present(PresentArgs),
    /// Print one of the generator maps and verify it in finite quotients.
    Isomap(IsomapArgs),
    /// Print one row of the pair-stabilizer rewriting table.
    Rho(RhoArgs),
    /// Print a rewritten subgroup presentation.
    Rs(RsArgs),
    /// Print the abelian invariants of a rewritten subgroup.
    Abelianize(AbelianizeArgs),
    /// Enumerate subgroup classes up to an index bound.
    LowIndex(LowIndexArgs),
    /// Recompute the headline invariants over a range of n and compare.
    Reproduce(ReproduceArgs),
    /// Verify all four map families and the word-identity suite.
    VerifyMaps(VerifyMapsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramArg {
    Dn,
    Ngon,
    Delta,
    Chain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuotientArg {
    None,
    Cycle,
    Twisted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Gap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormatArg {
    Text,
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SubgroupArg {
    Pair,
    Point,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathArg {
    Rho,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Fwd,
    Bwd,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    NgonD,
    SquareD,
    ArmSlide,
    Twisted,
}

impl FamilyArg {
    fn family(self) -> MapFamily {
        match self {
            FamilyArg::NgonD => MapFamily::NgonD,
            FamilyArg::SquareD => MapFamily::SquareD,
            FamilyArg::ArmSlide => MapFamily::ArmSlide,
            FamilyArg::Twisted => MapFamily::Twisted,
        }
    }
}

#[derive(Args)]
struct PresentArgs {
    /// Diagram family.
    #[arg(long, value_enum)]
    diagram: DiagramArg,
    /// Number of vertices.
    #[arg(long)]
    n: u32,
    /// Twist / arm parameter (implies --quotient twisted when no quotient
    /// is given for the n-gon).
    #[arg(long)]
    t: Option<u32>,
    /// Quotient relator to add.
    #[arg(long, value_enum)]
    quotient: Option<QuotientArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct IsomapArgs {
    /// Map family.
    #[arg(long, value_enum)]
    pair: FamilyArg,
    #[arg(long)]
    n: u32,
    /// Twist parameter (arm-slide and twisted families only).
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum, default_value = "both")]
    direction: DirectionArg,
    /// Damage the forward map first (negative control; verification must
    /// then fail).
    #[arg(long, hide = true)]
    corrupt: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct RhoArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct RsArgs {
    #[arg(long)]
    n: u32,
    /// Twist parameter (implies --quotient twisted).
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum)]
    quotient: Option<QuotientArg>,
    #[arg(long, value_enum, default_value = "pair")]
    subgroup: SubgroupArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct AbelianizeArgs {
    #[arg(long)]
    n: u32,
    /// Twist parameter (implies --quotient twisted).
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum)]
    quotient: Option<QuotientArg>,
    #[arg(long, value_enum, default_value = "pair")]
    subgroup: SubgroupArg,
    /// Rewriting path for the pair subgroup (the point subgroup always uses
    /// the generic path).
    #[arg(long, value_enum, default_value = "rho")]
    path: PathArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct LowIndexArgs {
    #[arg(long)]
    n: u32,
    /// Twist parameter (implies --quotient twisted).
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum)]
    quotient: Option<QuotientArg>,
    #[arg(long)]
    max_index: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Inclusive range of n, e.g. `5..12` or a single value.
    #[arg(long, default_value = "5..10", value_parser = parse_range)]
    n_range: (u32, u32),
    #[arg(long, value_enum, default_value = "pair")]
    subgroup: SubgroupArg,
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormatArg,
}

#[derive(Args)]
struct VerifyMapsArgs {
    /// Inclusive range of n, e.g. `4..8` or a single value.
    #[arg(long, default_value = "4..8", value_parser = parse_range)]
    n_range: (u32, u32),
    /// Damage every forward map first (negative control; the run must then
    /// report failures and exit nonzero).
    #[arg(long, hide = true)]
    corrupt: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (
            a.parse::<u32>().map_err(|e| e.to_string())?,
            b.parse::<u32>().map_err(|e| e.to_string())?,
        ),
        None => {
            let v = s.parse::<u32>().map_err(|e| e.to_string())?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn envelope(command: &str, params: Value, result: Value) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "result": result,
    })
}

/// Resolve (quotient flag, t flag) into a `Quotient`, enforcing the t
/// ranges. A bare `--t` implies the twisted quotient.
fn resolve_quotient(
    n: u32,
    quotient: Option<QuotientArg>,
    t: Option<u32>,
    max_t: u32,
) -> Result<Quotient, String> {
    match (quotient, t) {
        (None, None) | (Some(QuotientArg::None), None) => Ok(Quotient::None),
        (Some(QuotientArg::Cycle), None) => Ok(Quotient::Cycle),
        (Some(QuotientArg::Cycle), Some(_)) | (Some(QuotientArg::None), Some(_)) => {
            Err("--t only applies to the twisted quotient".into())
        }
        (Some(QuotientArg::Twisted), None) => Err("--quotient twisted requires --t".into()),
        (None, Some(t)) | (Some(QuotientArg::Twisted), Some(t)) => {
            if t < 1 || t > max_t {
                Err(format!("--t must satisfy 1 <= t <= {max_t} for n = {n}"))
            } else {
                Ok(Quotient::Twisted(t))
            }
        }
    }
}

fn check_n(n: u32) -> Result<(), String> {
    if n < 4 {
        Err(format!("--n must be at least 4, got {n}"))
    } else {
        Ok(())
    }
}

fn print_presentation_text(p: &Presentation) {
    println!(
        "generators ({}): {}",
        p.generators.len(),
        p.generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("relations ({}):", p.relations.len());
    for (l, r) in &p.relations {
        println!("  {l} = {r}");
    }
    if !p.relators.is_empty() {
        println!("relators ({}):", p.relators.len());
        for w in &p.relators {
            println!("  {w}");
        }
    }
}

fn emit_presentation(
    p: &Presentation,
    format: FormatArg,
    command: &str,
    params: Value,
) -> Result<(), String> {
    match format {
        FormatArg::Text => print_presentation_text(p),
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(&envelope(command, params, p.to_json()))
                .map_err(|e| e.to_string())?
        ),
        FormatArg::Gap => print!("{}", p.to_gap()),
    }
    Ok(())
}

fn cmd_present(a: PresentArgs) -> Result<ExitCode, String> {
    let (p, desc) = match a.diagram {
        DiagramArg::Dn => {
            check_n(a.n)?;
            if a.t.is_some() || matches!(a.quotient, Some(QuotientArg::Cycle | QuotientArg::Twisted))
            {
                return Err("no quotients are defined on the fork diagram".into());
            }
            (dn_presentation(a.n).map_err(|e| e.to_string())?, "dn")
        }
        DiagramArg::Ngon => {
            check_n(a.n)?;
            let q = resolve_quotient(a.n, a.quotient, a.t, a.n - 2)?;
            (ngon_presentation(a.n, q).map_err(|e| e.to_string())?, "ngon")
        }
        DiagramArg::Delta => {
            check_n(a.n)?;
            let t = a.t.ok_or("--diagram delta requires --t (the arm parameter)")?;
            // the quotient relator lives on the square generators; twisted
            // always means the first twist there
            let q = match a.quotient {
                None | Some(QuotientArg::None) => Quotient::None,
                Some(QuotientArg::Cycle) => Quotient::Cycle,
                Some(QuotientArg::Twisted) => Quotient::Twisted(1),
            };
            (
                delta_presentation(a.n, t, q).map_err(|e| e.to_string())?,
                "delta",
            )
        }
        DiagramArg::Chain => {
            if a.n < 2 {
                return Err("--diagram chain requires --n >= 2".into());
            }
            if a.t.is_some() || matches!(a.quotient, Some(QuotientArg::Cycle | QuotientArg::Twisted))
            {
                return Err("no quotients are defined on the chain diagram".into());
            }
            (chain_presentation(a.n).map_err(|e| e.to_string())?, "chain")
        }
    };
    let params = json!({"diagram": desc, "n": a.n, "t": a.t, "quotient": quotient_name(&p)});
    emit_presentation(&p, a.format, "present", params)?;
    Ok(ExitCode::SUCCESS)
}

fn quotient_name(p: &Presentation) -> &'static str {
    if p.relators.is_empty() {
        "none"
    } else {
        "one-relator"
    }
}

fn map_to_json(m: &GeneratorMap) -> Value {
    json!({
        "name": m.name,
        "images": m.images.iter()
            .map(|(g, w)| json!({"generator": g.to_string(), "image": w.to_string()}))
            .collect::<Vec<_>>(),
    })
}

fn print_map_text(m: &GeneratorMap) {
    println!("{}:", m.name);
    for (g, w) in &m.images {
        println!("  {g} -> {w}");
    }
}

fn cmd_isomap(a: IsomapArgs) -> Result<ExitCode, String> {
    check_n(a.n)?;
    let family = a.pair.family();
    let t = if family.uses_t() {
        let max_t = a.n - 3;
        let t = a.t.ok_or_else(|| {
            format!("--pair {} requires --t (1..={max_t})", family.token())
        })?;
        if t < 1 || t > max_t {
            return Err(format!("--t must satisfy 1 <= t <= {max_t} for n = {}", a.n));
        }
        t
    } else {
        if a.t.is_some() {
            return Err(format!("--pair {} takes no --t", family.token()));
        }
        0
    };
    let (fwd, bwd) = family.maps(a.n, t).map_err(|e| e.to_string())?;
    let report = standard_verification(family, a.n, t, a.corrupt).map_err(|e| e.to_string())?;
    match a.format {
        FormatArg::Text => {
            if a.direction != DirectionArg::Bwd {
                print_map_text(&fwd);
            }
            if a.direction != DirectionArg::Fwd {
                print_map_text(&bwd);
            }
            if report.ok() {
                println!("verification: ok ({} checks)", report.checks);
            } else {
                println!("verification: FAILED");
                for f in &report.failures {
                    println!("  {f}");
                }
            }
        }
        FormatArg::Json => {
            let mut maps = Vec::new();
            if a.direction != DirectionArg::Bwd {
                maps.push(map_to_json(&fwd));
            }
            if a.direction != DirectionArg::Fwd {
                maps.push(map_to_json(&bwd));
            }
            let result = json!({
                "maps": maps,
                "verified": report.ok(),
                "checks": report.checks,
                "failures": report.failures,
            });
            let params = json!({
                "pair": family.token(), "n": a.n,
                "t": if family.uses_t() { Value::from(t) } else { Value::Null },
                "corrupt": a.corrupt,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("isomap", params, result))
                    .map_err(|e| e.to_string())?
            );
        }
        FormatArg::Gap => return Err("isomap has no gap format".into()),
    }
    Ok(if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_rho(a: RhoArgs) -> Result<ExitCode, String> {
    check_n(a.n)?;
    let (rw, (k2, l2)) = rho_step(a.n, a.k, a.l, a.m).map_err(|e| e.to_string())?;
    let verified = rho_row_verified(a.n, a.k, a.l, a.m).map_err(|e| e.to_string())?;
    match a.format {
        FormatArg::Text => {
            println!(
                "rho(t_({},{}), a{}) = {}   next pair: ({}, {})   t-word: {}",
                a.k,
                a.l,
                a.m,
                rw,
                k2,
                l2,
                t_word(a.k, a.l),
            );
            println!("verified in perm and signed images: {}", if verified { "yes" } else { "NO" });
        }
        FormatArg::Json => {
            let params = json!({"n": a.n, "k": a.k, "l": a.l, "m": a.m});
            let result = json!({
                "word": rw.to_string(),
                "next": [k2, l2],
                "verified": verified,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("rho", params, result))
                    .map_err(|e| e.to_string())?
            );
        }
        FormatArg::Gap => return Err("rho has no gap format".into()),
    }
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn subgroup_presentation_for(
    n: u32,
    q: Quotient,
    subgroup: SubgroupArg,
) -> Result<Presentation, String> {
    let base = ngon_presentation(n, q).map_err(|e| e.to_string())?;
    match subgroup {
        SubgroupArg::Pair => pair_subgroup_presentation(n, &base).map_err(|e| e.to_string()),
        SubgroupArg::Point => {
            let table = point_coset_table(n);
            let trans = bfs_transversal(&table);
            generic_subgroup_presentation(&base, &table, &trans).map_err(|e| e.to_string())
        }
    }
}

fn cmd_rs(a: RsArgs) -> Result<ExitCode, String> {
    check_n(a.n)?;
    let q = resolve_quotient(a.n, a.quotient, a.t, a.n - 2)?;
    let p = subgroup_presentation_for(a.n, q, a.subgroup)?;
    let params = json!({
        "n": a.n,
        "quotient": format!("{q:?}"),
        "subgroup": match a.subgroup { SubgroupArg::Pair => "pair", SubgroupArg::Point => "point" },
    });
    emit_presentation(&p, a.format, "rs", params)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_abelianize(a: AbelianizeArgs) -> Result<ExitCode, String> {
    check_n(a.n)?;
    let q = resolve_quotient(a.n, a.quotient, a.t, a.n - 2)?;
    let inv = match (a.subgroup, a.path) {
        (SubgroupArg::Pair, PathArg::Rho) => {
            pair_subgroup_abelianization(a.n, q).map_err(|e| e.to_string())?
        }
        (SubgroupArg::Pair, PathArg::Generic) => {
            pair_subgroup_abelianization_generic(a.n, q).map_err(|e| e.to_string())?
        }
        (SubgroupArg::Point, _) => {
            point_subgroup_abelianization(a.n, q).map_err(|e| e.to_string())?
        }
    };
    match a.format {
        FormatArg::Text => {
            println!("{inv}   (primary: {})", inv.format_primary());
        }
        FormatArg::Json => {
            let params = json!({
                "n": a.n,
                "quotient": format!("{q:?}"),
                "subgroup": match a.subgroup { SubgroupArg::Pair => "pair", SubgroupArg::Point => "point" },
                "path": match a.path { PathArg::Rho => "rho", PathArg::Generic => "generic" },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("abelianize", params, inv.to_json()))
                    .map_err(|e| e.to_string())?
            );
        }
        FormatArg::Gap => return Err("abelianize has no gap format".into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_low_index(a: LowIndexArgs) -> Result<ExitCode, String> {
    check_n(a.n)?;
    if a.max_index < 1 || a.max_index > 8 {
        return Err("--max-index must be between 1 and 8 (the search is exponential)".into());
    }
    let q = resolve_quotient(a.n, a.quotient, a.t, a.n - 2)?;
    let p = ngon_presentation(a.n, q).map_err(|e| e.to_string())?;
    let tables = low_index_tables(&p, a.max_index);
    for t in &tables {
        if !table_satisfies(&p, t) {
            return Err("internal error: a found table fails replay".into());
        }
    }
    let counts = classes_by_index(&p, a.max_index);
    match a.format {
        FormatArg::Text => {
            println!("subgroup classes of the {q:?} quotient at n = {}:", a.n);
            for (idx, cnt) in &counts {
                println!("  index {idx}: {cnt}");
            }
            println!("total: {}", tables.len());
        }
        FormatArg::Json => {
            let params = json!({"n": a.n, "quotient": format!("{q:?}"), "max_index": a.max_index});
            let result = json!({
                "classes": counts.iter().map(|(k, v)| json!({"index": k, "count": v})).collect::<Vec<_>>(),
                "total": tables.len(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("low-index", params, result))
                    .map_err(|e| e.to_string())?
            );
        }
        FormatArg::Gap => return Err("low-index has no gap format".into()),
    }
    Ok(ExitCode::SUCCESS)
}

struct ReproRow {
    n: u32,
    order: u32,
    selector: String,
    expected: AbelianInvariants,
    got: Result<AbelianInvariants, String>,
}

impl ReproRow {
    fn pass(&self) -> bool {
        matches!(&self.got, Ok(g) if *g == self.expected)
    }
}

fn cmd_reproduce(a: ReproduceArgs) -> Result<ExitCode, String> {
    let (lo, hi) = a.n_range;
    if lo < 4 {
        return Err("--n-range must start at 4 or above".into());
    }
    if hi > 40 {
        return Err("--n-range above 40 is not supported; runtimes grow quickly".into());
    }
    // job list: (n, order within n, selector label, quotient, expected)
    let mut jobs: Vec<(u32, u32, String, Quotient, AbelianInvariants)> = Vec::new();
    for n in lo..=hi {
        match a.subgroup {
            SubgroupArg::Pair => {
                let mut order = 0u32;
                jobs.push((
                    n,
                    order,
                    "none".into(),
                    Quotient::None,
                    AbelianInvariants::from_small(4, &[]),
                ));
                order += 1;
                jobs.push((
                    n,
                    order,
                    "cycle".into(),
                    Quotient::Cycle,
                    AbelianInvariants::from_small(3, &[2]),
                ));
                for t in 1..=n - 2 {
                    order += 1;
                    let expected = if t <= n - 3 {
                        AbelianInvariants::from_small(2, &[2, 4])
                    } else {
                        AbelianInvariants::from_small(3, &[2])
                    };
                    jobs.push((n, order, format!("twisted t={t}"), Quotient::Twisted(t), expected));
                }
            }
            SubgroupArg::Point => {
                let mut order = 0u32;
                jobs.push((
                    n,
                    order,
                    "cycle".into(),
                    Quotient::Cycle,
                    AbelianInvariants::from_small(2, &[2]),
                ));
                for t in 1..=n - 2 {
                    order += 1;
                    jobs.push((
                        n,
                        order,
                        format!("twisted t={t}"),
                        Quotient::Twisted(t),
                        AbelianInvariants::from_small(2, &[2]),
                    ));
                }
            }
        }
    }
    use rayon::prelude::*;
    let mut rows: Vec<ReproRow> = jobs
        .into_par_iter()
        .map(|(n, order, selector, q, expected)| {
            let got = match a.subgroup {
                SubgroupArg::Pair => pair_subgroup_abelianization(n, q).map_err(|e| e.to_string()),
                SubgroupArg::Point => {
                    point_subgroup_abelianization(n, q).map_err(|e| e.to_string())
                }
            };
            ReproRow {
                n,
                order,
                selector,
                expected,
                got,
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.n, r.order));
    let all_pass = rows.iter().all(|r| r.pass());
    let subgroup_name = match a.subgroup {
        SubgroupArg::Pair => "pair",
        SubgroupArg::Point => "point",
    };
    match a.format {
        TableFormatArg::Text | TableFormatArg::Tsv => {
            let sep = if a.format == TableFormatArg::Tsv { "\t" } else { "  " };
            println!(
                "{}",
                ["n", "subgroup", "quotient", "expected", "got", "status"].join(sep)
            );
            for r in &rows {
                let got = match &r.got {
                    Ok(g) => g.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                println!(
                    "{}",
                    [
                        r.n.to_string(),
                        subgroup_name.to_string(),
                        r.selector.clone(),
                        r.expected.to_string(),
                        got,
                        if r.pass() { "PASS".into() } else { "FAIL".into() },
                    ]
                    .join(sep)
                );
            }
            println!("{}", if all_pass { "all rows PASS" } else { "some rows FAILED" });
        }
        TableFormatArg::Json => {
            let params = json!({
                "n_range": format!("{lo}..{hi}"),
                "subgroup": subgroup_name,
            });
            let result = json!({
                "rows": rows.iter().map(|r| json!({
                    "n": r.n,
                    "quotient": r.selector,
                    "expected": r.expected.to_json(),
                    "got": match &r.got { Ok(g) => g.to_json(), Err(e) => json!({"error": e}) },
                    "pass": r.pass(),
                })).collect::<Vec<_>>(),
                "all_pass": all_pass,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("reproduce", params, result))
                    .map_err(|e| e.to_string())?
            );
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_verify_maps(a: VerifyMapsArgs) -> Result<ExitCode, String> {
    let (lo, hi) = a.n_range;
    if lo < 4 {
        return Err("--n-range must start at 4 or above".into());
    }
    if hi > 20 {
        return Err("--n-range above 20 is not supported here".into());
    }
    // (n, family order, t, description) — family order 4 = lemma suite
    let mut jobs: Vec<(u32, u32, u32)> = Vec::new();
    for n in lo..=hi {
        for (fi, family) in MapFamily::all().iter().enumerate() {
            if family.uses_t() {
                for t in 1..=n - 3 {
                    jobs.push((n, fi as u32, t));
                }
            } else {
                jobs.push((n, fi as u32, 0));
            }
        }
        jobs.push((n, 4, 0)); // lemma suite
    }
    use rayon::prelude::*;
    let mut results: Vec<(u32, u32, u32, String, Vec<String>, usize)> = jobs
        .into_par_iter()
        .map(|(n, fi, t)| {
            if fi == 4 {
                let fails = verify_lemma_suite(n).map_err(|e| e.to_string());
                match fails {
                    Ok(fails) => (n, fi, t, format!("identity suite n={n}"), fails, 0),
                    Err(e) => (n, fi, t, format!("identity suite n={n}"), vec![e], 0),
                }
            } else {
                let family = MapFamily::all()[fi as usize];
                let label = if family.uses_t() {
                    format!("{} n={n} t={t}", family.token())
                } else {
                    format!("{} n={n}", family.token())
                };
                match standard_verification(family, n, t, a.corrupt) {
                    Ok(rep) => (n, fi, t, label, rep.failures, rep.checks),
                    Err(e) => (n, fi, t, label, vec![e.to_string()], 0),
                }
            }
        })
        .collect();
    results.sort_by_key(|r| (r.0, r.1, r.2));
    let all_pass = results.iter().all(|r| r.4.is_empty());
    match a.format {
        FormatArg::Text => {
            for (_, _, _, label, fails, checks) in &results {
                if fails.is_empty() {
                    if *checks > 0 {
                        println!("ok   {label} ({checks} checks)");
                    } else {
                        println!("ok   {label}");
                    }
                } else {
                    println!("FAIL {label}");
                    for f in fails {
                        println!("     {f}");
                    }
                }
            }
            println!(
                "{}",
                if all_pass {
                    "all map families and identities verified"
                } else {
                    "verification FAILED"
                }
            );
        }
        FormatArg::Json => {
            let params = json!({"n_range": format!("{lo}..{hi}"), "corrupt": a.corrupt});
            let result = json!({
                "checks": results.iter().map(|(_, _, _, label, fails, checks)| json!({
                    "check": label,
                    "pass": fails.is_empty(),
                    "checks": checks,
                    "failures": fails,
                })).collect::<Vec<_>>(),
                "all_pass": all_pass,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("verify-maps", params, result))
                    .map_err(|e| e.to_string())?
            );
        }
        FormatArg::Gap => return Err("verify-maps has no gap format".into()),
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// Restore the default SIGPIPE disposition so `artin ... | head` exits
/// quietly instead of panicking on a closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn init_threads() {
    if let Ok(v) = std::env::var("ARTIN_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    init_threads();
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Present(a) => cmd_present(a),
        Cmd::Isomap(a) => cmd_isomap(a),
        Cmd::Rho(a) => cmd_rho(a),
        Cmd::Rs(a) => cmd_rs(a),
        Cmd::Abelianize(a) => cmd_abelianize(a),
        Cmd::LowIndex(a) => cmd_low_index(a),
        Cmd::Reproduce(a) => cmd_reproduce(a),
        Cmd::VerifyMaps(a) => cmd_verify_maps(a),
    };
    match out {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
