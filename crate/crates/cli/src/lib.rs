//! `crossmod` command-line front end.
//!
//! Exit codes: 0 success or a true answer, 1 a false answer from a
//! predicate subcommand, 2 usage or data errors.

pub mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use crossmod::catalog::Catalog;
use crossmod::derivations::{all_derivations_capped, whitehead_group};
use crossmod::enumeration::{census_with, group_census_with};
use crossmod::error::CensusError;
use crossmod::group::{is_isoclinic_group_with, CatalogId};
use crossmod::invariants::{is_aspherical, is_simply_connected, is_stem_xmod, xmod_invariants};
use crossmod::isoclinism::is_isoclinic_xmod_with;
use crossmod::report::{annotate_reference, census_table, group_table, ReportTable, StandardTable};
use crossmod::xmod::{xmod_from_json_with, CrossedModule};

pub use config::Config;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "crossmod", version, about = "Isoclinism families of finite groups and crossed modules")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Questions about single groups from the catalog.
    #[command(subcommand)]
    Groups(GroupsCommand),
    /// Crossed-module censuses and file-based queries.
    #[command(subcommand)]
    Xmods(XmodsCommand),
    /// One of the four standard family tables.
    Report {
        /// table1, table2, table3 or table4
        table: String,
    },
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
pub enum GroupsCommand {
    /// Prints true when two catalog groups (order:index) are isoclinic.
    Isoclinic { first: CatalogId, second: CatalogId },
    /// Isoclinism families of the catalog groups of one order.
    Families { order: usize },
}

#[derive(Debug, Subcommand)]
pub enum XmodsCommand {
    /// Prints (raw, classes, families) for order [n,m].
    Census { n: usize, m: usize },
    /// Family table for order [n,m].
    Families { n: usize, m: usize },
    /// Invariants of a serialized crossed module.
    Invariants { file: PathBuf },
    /// Prints true when two serialized crossed modules are isoclinic.
    Isoclinic { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Lists the active catalog.
    List,
    /// Validates a catalog file and stores its canonical form in the cache
    /// directory (or prints it when no cache directory is set).
    Import { file: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) | Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load_catalog(config: &Config) -> Result<Option<Catalog>, Failure> {
    config
        .catalog
        .as_deref()
        .map(|p| Catalog::from_file(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))))
        .transpose()
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = &cli.config;
    let owned = load_catalog(config)?;
    let catalog = owned.as_ref().unwrap_or_else(|| Catalog::bundled());
    match &cli.command {
        Command::Groups(GroupsCommand::Isoclinic { first, second }) => {
            let g = catalog.group(first.order, first.index).map_err(|e| Failure::Data(e.to_string()))?;
            let h = catalog.group(second.order, second.index).map_err(|e| Failure::Data(e.to_string()))?;
            answer(out, is_isoclinic_group_with(&g, &h, config.mode()).is_some())
        }
        Command::Groups(GroupsCommand::Families { order }) => {
            let rows = group_census_with(catalog, *order, config.mode())?;
            let mut table = group_table(*order, &rows);
            if config.paper_row {
                let which = match order {
                    8 => Some(StandardTable::GroupsOf8),
                    18 => Some(StandardTable::GroupsOf18),
                    _ => None,
                };
                if let Some(w) = which {
                    annotate_reference(&mut table, w);
                }
            }
            emit(out, config, &table)
        }
        Command::Xmods(XmodsCommand::Census { n, m }) => {
            let r = census_with(catalog, *n, *m, config.census_options(), config.cache_dir.as_deref())?;
            let (raw, classes, families) = r.counts();
            if config.format == crossmod::report::Format::Text {
                writeln!(out, "({raw},{classes},{families})")?;
                Ok(EXIT_TRUE)
            } else {
                let mut t = ReportTable::new(
                    format!("Census of order [{n},{m}]"),
                    ["Raw", "Classes", "Families"].map(String::from).to_vec(),
                );
                t.rows.push(vec![raw.to_string(), classes.to_string(), families.to_string()]);
                emit(out, config, &t)
            }
        }
        Command::Xmods(XmodsCommand::Families { n, m }) => {
            let r = census_with(catalog, *n, *m, config.census_options(), config.cache_dir.as_deref())?;
            let mut table = census_table(&r);
            if config.paper_row {
                let which = match (n, m) {
                    (8, 8) => Some(StandardTable::XModsOf8),
                    (18, 18) => Some(StandardTable::XModsOf18),
                    _ => None,
                };
                if let Some(w) = which {
                    annotate_reference(&mut table, w);
                }
            }
            emit(out, config, &table)
        }
        Command::Xmods(XmodsCommand::Invariants { file }) => {
            let x = read_xmod(file, catalog)?;
            emit(out, config, &invariants_table(&x, config.derivation_cap))
        }
        Command::Xmods(XmodsCommand::Isoclinic { first, second }) => {
            let a = read_xmod(first, catalog)?;
            let b = read_xmod(second, catalog)?;
            answer(out, is_isoclinic_xmod_with(&a, &b, config.mode()).is_some())
        }
        Command::Report { table } => {
            let which = StandardTable::parse(table)
                .ok_or_else(|| Failure::Usage(format!("unknown table {table:?} (table1..table4)")))?;
            let mut t = if which.is_census() {
                let o = which.order();
                census_table(&census_with(catalog, o, o, config.census_options(), config.cache_dir.as_deref())?)
            } else {
                group_table(which.order(), &group_census_with(catalog, which.order(), config.mode())?)
            };
            if config.paper_row {
                annotate_reference(&mut t, which);
            }
            emit(out, config, &t)
        }
        Command::Catalog(CatalogCommand::List) => {
            let mut t = ReportTable::new(
                format!("Catalog {} ({} groups)", catalog.version(), catalog.entries().len()),
                ["Id", "Name", "Generators"].map(String::from).to_vec(),
            );
            for e in catalog.entries() {
                t.rows.push(vec![
                    format!("{}:{}", e.order, e.index),
                    e.name.clone(),
                    e.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
                ]);
            }
            emit(out, config, &t)
        }
        Command::Catalog(CatalogCommand::Import { file }) => {
            let imported =
                Catalog::from_file(file).map_err(|e| Failure::Data(format!("{}: {e}", file.display())))?;
            match &config.cache_dir {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    let path = dir.join(format!("catalog-{}.txt", imported.version()));
                    fs::write(&path, imported.format())?;
                    writeln!(
                        out,
                        "imported {} groups, version {}, stored at {}",
                        imported.entries().len(),
                        imported.version(),
                        path.display()
                    )?;
                }
                None => out.write_all(imported.format().as_bytes())?,
            }
            Ok(EXIT_TRUE)
        }
    }
}

fn answer(out: &mut dyn Write, yes: bool) -> Result<i32, Failure> {
    writeln!(out, "{yes}")?;
    Ok(if yes { EXIT_TRUE } else { EXIT_FALSE })
}

fn emit(out: &mut dyn Write, config: &Config, table: &ReportTable) -> Result<i32, Failure> {
    out.write_all(table.render(config.format)?.as_bytes())?;
    Ok(EXIT_TRUE)
}

fn read_xmod(path: &Path, catalog: &Catalog) -> Result<CrossedModule, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    xmod_from_json_with(&text, catalog).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn invariants_table(x: &CrossedModule, derivation_cap: usize) -> ReportTable {
    let inv = xmod_invariants(x);
    let integral = inv.rank.iter().chain(&inv.middle_length).all(|v| v.is_power_of_two());
    let pair = |a: String, b: String| format!("[{a},{b}]");
    let [n, m] = x.order();
    let mut rows = vec![
        ("Order", pair(n.to_string(), m.to_string())),
        ("Rank", pair(inv.rank[0].render(integral), inv.rank[1].render(integral))),
        ("M. L.", pair(inv.middle_length[0].render(integral), inv.middle_length[1].render(integral))),
        ("Class", inv.nilpotency.to_string()),
        ("Derived length", inv.derived_length.map_or_else(|| "-".into(), |d| d.to_string())),
        ("|XM/Z(XM)|", pair(inv.central_quotient[0].to_string(), inv.central_quotient[1].to_string())),
        (
            "Lower central sizes",
            inv.gamma_sizes.iter().map(|s| pair(s[0].to_string(), s[1].to_string())).collect::<Vec<_>>().join(" "),
        ),
        ("Stem", is_stem_xmod(x).to_string()),
        ("Aspherical", is_aspherical(x).to_string()),
        ("Simply connected", is_simply_connected(x).to_string()),
    ];
    let whitehead = match all_derivations_capped(x, derivation_cap) {
        Ok(monoid) => format!("{} of {}", whitehead_group(x, &monoid).group.order(), monoid.len()),
        Err(e) => format!("skipped ({e})"),
    };
    rows.push(("Regular derivations", whitehead));
    let mut t = ReportTable::new(
        format!("Crossed module of order [{n},{m}]"),
        ["Invariant", "Value"].map(String::from).to_vec(),
    );
    t.rows = rows.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
    t
}
