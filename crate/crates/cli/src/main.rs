use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use frobgraph::analysis::{
    analyze_pair, AnalyzeOutput, CatalogOutput, GroupSummary, ScanOutput, TableOutput, SCHEMA,
};
use frobgraph::catalog::{catalog_list, construct_with, GroupSpec};
use frobgraph::chartab::{character_table, CharacterTable};
use frobgraph::group::{Limits, PermGroup, Subgroup};
use frobgraph::perm::{GeneratorSpec, Permutation};
use frobgraph::subgroups::{classify_subgroups, enumerate_subgroup_classes, is_minimal_rich_group};

#[derive(Parser)]
#[command(name = "frobgraph", version, about = "Frobenius graphs, rich subgroups and subgroup depth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Group spec, e.g. S4, A5, AGL1:9:4, SL2:7, Named:G80, File:gens.txt
    #[arg(long, short)]
    group: GroupSpec,
    /// Largest group order to enumerate
    #[arg(long)]
    cap: Option<usize>,
}

impl GroupArgs {
    fn build(&self) -> Result<(PermGroup, CharacterTable)> {
        let limits = match self.cap {
            Some(cap) => Limits::with_max_order(cap),
            None => Limits::default(),
        };
        let g = construct_with(&self.group, limits).with_context(|| format!("building {}", self.group))?;
        let t = character_table(&g).with_context(|| format!("character table of {}", self.group))?;
        Ok((g, t))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius matrix, graph, verdicts and depth for selected subgroups
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        /// Only subgroup classes of this order
        #[arg(long)]
        subgroup_order: Option<usize>,
        /// Every subgroup class (the default when no other selector is given)
        #[arg(long)]
        all_classes: bool,
        /// Sylow p-subgroup classes
        #[arg(long, value_name = "P")]
        sylow: Option<usize>,
        /// Classes of prime order
        #[arg(long)]
        prime_order: bool,
        /// Explicit subgroup generators in cycle notation, repeatable
        #[arg(long = "subgroup-gens", value_name = "PERM")]
        subgroup_gens: Vec<String>,
        /// File with subgroup generators: a "degree N" line, then one permutation per line
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// Include character tables in the output
        #[arg(long)]
        show_tables: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify all subgroup classes of a group
    Scan {
        #[command(flatten)]
        group: GroupArgs,
        /// Also decide whether the group is minimal with a nontrivial rich subgroup
        #[arg(long)]
        check_minimal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Character table only
    Table {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the built-in groups
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-render a JSON report produced by another command
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Report {
    Analyze(AnalyzeOutput),
    Scan(ScanOutput),
    Table(TableOutput),
    Catalog(CatalogOutput),
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn summary_line(g: &GroupSummary) -> String {
    format!(
        "group {}: order {}, degree {}, {} classes, T = {}, k = {}, b = {}\n",
        g.spec, g.order, g.degree, g.classes, g.stats.t, g.stats.k, g.stats.b
    )
}

impl Report {
    fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (Report::Analyze(r), Format::Json) => to_json(r),
            (Report::Scan(r), Format::Json) => to_json(r),
            (Report::Table(r), Format::Json) => to_json(r),
            (Report::Catalog(r), Format::Json) => to_json(r),
            (Report::Analyze(r), Format::Text) => {
                let mut out = summary_line(&r.group);
                if let Some(t) = &r.table {
                    out.push_str("character table of G:\n");
                    out.push_str(&t.render_text());
                }
                if let Some(t) = &r.subgroup_table {
                    out.push_str("character table of H:\n");
                    out.push_str(&t.render_text());
                }
                out.push_str(&format!("{} subgroup(s) selected\n", r.pairs.len()));
                for (i, p) in r.pairs.iter().enumerate() {
                    out.push_str(&format!("\n[{}] ", i + 1));
                    out.push_str(&p.render_text());
                }
                Ok(out)
            }
            (Report::Scan(r), Format::Text) => Ok(summary_line(&r.group) + &r.report.render_text()),
            (Report::Table(r), Format::Text) => Ok(summary_line(&r.group) + &r.table.render_text()),
            (Report::Catalog(r), Format::Text) => Ok(r
                .groups
                .iter()
                .map(|e| format!("{:<14} order {:>5}  degree {:>3}  {}\n", e.spec, e.order, e.degree, e.note))
                .collect()),
            (_, Format::Dot) => bail!("dot output is only available from analyze"),
        }
    }

    fn parse(text: &str) -> Result<Report> {
        let value: Value = serde_json::from_str(text).context("reading JSON report")?;
        match value.get("schema").and_then(Value::as_u64) {
            Some(s) if s == SCHEMA as u64 => {}
            other => bail!("unsupported report schema {:?}", other),
        }
        let has = |key: &str| value.get(key).is_some();
        Ok(if has("pairs") {
            Report::Analyze(serde_json::from_value(value)?)
        } else if has("report") {
            Report::Scan(serde_json::from_value(value)?)
        } else if has("table") {
            Report::Table(serde_json::from_value(value)?)
        } else if has("groups") {
            Report::Catalog(serde_json::from_value(value)?)
        } else {
            bail!("unrecognized report")
        })
    }
}

fn explicit_subgroup(g: &PermGroup, gens: &[String], seed_file: Option<&PathBuf>) -> Result<Subgroup> {
    let mut perms = Vec::new();
    for s in gens {
        perms.push(Permutation::parse_cycles(g.degree(), s).with_context(|| format!("generator {}", s))?);
    }
    if let Some(path) = seed_file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let spec = GeneratorSpec::parse(&text)?;
        if spec.degree != g.degree() {
            bail!("seed file has degree {}, the group has degree {}", spec.degree, g.degree());
        }
        perms.extend(spec.generators);
    }
    Ok(g.subgroup_from_perms(&perms)?)
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    args: &GroupArgs,
    subgroup_order: Option<usize>,
    sylow: Option<usize>,
    prime_order: bool,
    gens: &[String],
    seed_file: Option<&PathBuf>,
    show_tables: bool,
    format: Format,
) -> Result<String> {
    let (g, tg) = args.build()?;
    let explicit = !gens.is_empty() || seed_file.is_some();
    let subgroups: Vec<Subgroup> = if explicit {
        if subgroup_order.is_some() || sylow.is_some() || prime_order {
            bail!("explicit generators cannot be combined with class selectors");
        }
        vec![explicit_subgroup(&g, gens, seed_file)?]
    } else {
        let list = enumerate_subgroup_classes(&g)?;
        let mut selected: Vec<usize> = (0..list.len()).collect();
        if let Some(n) = subgroup_order {
            selected.retain(|&i| list.classes[i].order == n);
        }
        if let Some(p) = sylow {
            let syl = list.sylow(g.order(), p);
            selected.retain(|i| syl.contains(i));
        }
        if prime_order {
            let primes = list.prime_order();
            selected.retain(|i| primes.contains(i));
        }
        selected.into_iter().map(|i| list.classes[i].representative.clone()).collect()
    };
    if subgroups.is_empty() {
        bail!("no subgroup class matches the selectors");
    }
    let analyses = subgroups
        .iter()
        .map(|h| analyze_pair(&g, &tg, h))
        .collect::<frobgraph::Result<Vec<_>>>()?;
    if format == Format::Dot {
        return Ok(analyses.iter().map(|a| a.graph.to_dot()).collect());
    }
    let subgroup_table = if show_tables && subgroups.len() == 1 {
        Some(character_table(&g.subgroup_as_group(&subgroups[0]))?.to_json())
    } else {
        None
    };
    let out = AnalyzeOutput {
        schema: SCHEMA,
        group: GroupSummary::new(&args.group, &g, &tg),
        table: show_tables.then(|| tg.to_json()),
        subgroup_table,
        pairs: analyses.into_iter().map(|a| a.report).collect(),
    };
    Report::Analyze(out).render(format)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Analyze {
            group,
            subgroup_order,
            all_classes: _,
            sylow,
            prime_order,
            subgroup_gens,
            seed_file,
            show_tables,
            format,
        } => analyze(
            &group,
            subgroup_order,
            sylow,
            prime_order,
            &subgroup_gens,
            seed_file.as_ref(),
            show_tables,
            format,
        ),
        Command::Scan { group, check_minimal, format } => {
            let (g, tg) = group.build()?;
            let list = enumerate_subgroup_classes(&g)?;
            let mut report = classify_subgroups(&g, &tg, &list)?;
            if check_minimal {
                report.minimal = Some(is_minimal_rich_group(&g, &tg, &list)?);
            }
            let out = ScanOutput { schema: SCHEMA, group: GroupSummary::new(&group.group, &g, &tg), report };
            Report::Scan(out).render(format)
        }
        Command::Table { group, format } => {
            let (g, tg) = group.build()?;
            let out = TableOutput { schema: SCHEMA, group: GroupSummary::new(&group.group, &g, &tg), table: tg.to_json() };
            Report::Table(out).render(format)
        }
        Command::Catalog { format } => Report::Catalog(CatalogOutput { schema: SCHEMA, groups: catalog_list()? }).render(format),
        Command::Render { input, format } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            Report::parse(&text)?.render(format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}
