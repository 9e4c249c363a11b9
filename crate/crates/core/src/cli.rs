//! Command-line front end. Reports go to `out`, diagnostics to `err`.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::group::{named_group, FiniteGroup, DEFAULT_AUT_CAP};
use crate::manifest::Manifest;
use crate::normalizer::{
    normalizer_complement_with_cap, predicted_normalizer_order_with_cap, verify_theorem,
};
use crate::oracle::{brute_force_normalizer_with_workers, sylow_report, MAX_ORACLE_DEGREE};
use crate::wreath::{iterated_wreath_with_cap, WreathTower, DEFAULT_DEGREE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wreathnorm",
    version,
    about = "Iterated wreath products and their normalizers"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// `name:param` (cyclic:5, dihedral:8, symmetric:3), `klein4`, `quaternion8`, or `@path` to a Cayley table.
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Number of wreath levels n.
    #[arg(long, global = true, default_value_t = 1)]
    pub level: usize,

    /// Compare the oracle with the predicted normalizer (brute only).
    #[arg(long, global = true)]
    pub compare: bool,

    /// Oracle worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    /// Write the manifest to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub max_degree: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_AUT_CAP)]
    pub max_aut_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build W(G,n) and summarise each level.
    Build,
    /// Print |W(G,n)|.
    Order,
    /// List the generators of the complement M_n.
    Normalizer,
    /// Check N = M_n ⋉ W(G,n) and print one line per check.
    Verify,
    /// Brute-force the normalizer in S_m (m ≤ 9).
    Brute,
    /// Compare |W(C_p,n)| with the p-part of (p^n)!.
    Sylow,
    /// Print or write the generator manifest of W(G,n).
    Export,
}

/// Resolves a `--group` value to a group.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read `{path}`: {e}")))?;
        return FiniteGroup::parse_table_text(&text);
    }
    match spec.split_once(':') {
        Some((name, param)) => {
            let p = param
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad group parameter `{param}`")))?;
            named_group(name, Some(p))
        }
        None => named_group(spec, None),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&config, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Io(format!("cannot write `{}`: {e}", path.display())))
}

fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if config.max_degree == 0 || config.max_aut_order == 0 || config.workers == 0 {
        return Err(Error::Format(
            "caps and worker count must be positive".into(),
        ));
    }
    let spec = config
        .group
        .as_deref()
        .ok_or_else(|| Error::Format("--group is required".into()))?;
    let group = parse_group_spec(spec)?;
    let build = || iterated_wreath_with_cap(&group, config.level, config.max_degree);

    match config.command {
        Command::Build => {
            let tower = build()?;
            let mut text = format!(
                "group: {spec}\nn: {}\ndegree: {}\n",
                tower.levels(),
                tower.degree()
            );
            for i in 0..=tower.levels() {
                text.push_str(&format!(
                    "level {i}: degree {} generators {} order {}\n",
                    tower.level_degree(i),
                    tower.generators(i).len(),
                    tower.chain(i).order()
                ));
            }
            write_out(out, &text)?;
            if let Some(path) = &config.out {
                write_file(path, &Manifest::for_tower(&tower, spec).to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Order => {
            let tower = build()?;
            write_out(out, &format!("{}\n", tower.top_chain().order()))?;
            Ok(EXIT_OK)
        }
        Command::Normalizer => {
            let tower = build()?;
            let comp = normalizer_complement_with_cap(&tower, config.max_aut_order)?;
            let mut text = String::new();
            for g in comp.generators() {
                text.push_str(&format!(
                    "mgen: level={} aut={} {}\n",
                    g.level, g.aut_index, g.perm
                ));
            }
            text.push_str(&format!("complement-order: {}\n", comp.chain().order()));
            text.push_str(&format!(
                "normalizer-order: {}\n",
                comp.normalizer_chain(&tower).order()
            ));
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let tower = build()?;
            let comp = normalizer_complement_with_cap(&tower, config.max_aut_order)?;
            let report = verify_theorem(&tower, &comp);
            write_out(out, &report.to_string())?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Brute => {
            let tower = build()?;
            if tower.degree() > MAX_ORACLE_DEGREE {
                return Err(Error::OracleDegree(tower.degree()));
            }
            brute(config, spec, &group, &tower, out, err)
        }
        Command::Sylow => {
            let p = group.order();
            let cyclic = spec.starts_with("cyclic:");
            if !cyclic {
                return Err(Error::Format("sylow needs --group cyclic:p".into()));
            }
            let report = sylow_report(p, config.level)?;
            let verdict = if report.holds() { "SYLOW" } else { "NOT-SYLOW" };
            write_out(
                out,
                &format!(
                    "tower-order: {}\np-part: {}\n{verdict}\n",
                    report.tower_order, report.p_part
                ),
            )?;
            Ok(if report.holds() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Export => {
            let tower = build()?;
            let text = Manifest::for_tower(&tower, spec).to_string();
            match &config.out {
                Some(path) => write_file(path, &text)?,
                None => write_out(out, &text)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn brute(
    config: &RunConfig,
    spec: &str,
    group: &FiniteGroup,
    tower: &WreathTower,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let result = brute_force_normalizer_with_workers(
        tower.top_generators(),
        tower.degree(),
        config.workers,
    )?;
    let _ = writeln!(err, "oracle elapsed: {:.3}s", result.elapsed.as_secs_f64());
    let mut text = format!("oracle-order: {}\n", result.normalizer_order());
    let mut code = EXIT_OK;
    if config.compare {
        let predicted =
            predicted_normalizer_order_with_cap(group, config.level, config.max_aut_order)?;
        let comp = normalizer_complement_with_cap(tower, config.max_aut_order)?;
        let cross = result.matches_chain(&comp.normalizer_chain(tower));
        let matched = cross && predicted == result.normalizer_order();
        text.push_str(&format!("predicted-order: {predicted}\n"));
        text.push_str(&format!(
            "cross-membership: {}\n",
            if cross { "PASS" } else { "FAIL" }
        ));
        text.push_str(if matched { "MATCH\n" } else { "MISMATCH\n" });
        if !matched {
            code = EXIT_CHECK_FAILED;
        }
    }
    write_out(out, &text)?;
    if let Some(path) = &config.out {
        let manifest = Manifest {
            group: spec.to_owned(),
            levels: tower.levels(),
            degree: tower.degree(),
            generators: result.generators(),
            order: Some(result.normalizer_order()),
        };
        write_file(path, &manifest.to_string())?;
    }
    Ok(code)
}
