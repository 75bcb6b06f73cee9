//! The `coxclique` command line.
//!
//! Every subcommand writes deterministic output to `out`. Failures write a
//! single line `error: <code>: <message>` to `err`; the exit code is 1 for
//! usage and input errors and 2 when a clique matches no template.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cayley::{self, full_group, generate_ball, parity_split, Parity, DEFAULT_BUDGET};
use crate::cliques::{self, clique_to_json, CliqueJson, Scope, TypeCounts, TypeTag};
use crate::element::{self, Element};
use crate::error::Error;
use crate::half::{self, VertexMap};
use crate::system::{parse_diagram, parse_preset, CoxeterSystem, PRESET_HELP};

#[derive(Parser, Debug)]
#[command(name = "coxclique", version, about = "Cayley graphs of Coxeter groups and their maximal 2-cliques")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Export a ball of the Cayley graph, or the whole group without --radius.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: Option<usize>,
        /// Center of the ball, as a word ("e" for the identity).
        #[arg(long, default_value = "e")]
        center: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the maximal 2-cliques with their types.
    Cliques {
        #[command(flatten)]
        group: GroupArgs,
        /// Only cliques whose least member has at most this length.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify every maximal 2-clique and report the counts.
    Verify {
        #[arg(long, conflicts_with = "corpus")]
        group: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        radius: Option<usize>,
        /// Run over the built-in corpus instead of a single group.
        #[arg(long)]
        corpus: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export a half-graph, or extend a map between half-graphs.
    Halfgraph {
        #[command(flatten)]
        group: GroupArgs,
        /// 1 for odd lengths, 2 for even lengths.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        parity: u8,
        /// JSON file with [source, image] pairs to extend.
        #[arg(long, conflicts_with = "witness")]
        extend: Option<String>,
        /// Search the half-graph for an automorphism that breaks an S-coset and try to extend it.
        #[arg(long)]
        witness: bool,
        /// Drop the |S| >= 5 requirement.
        #[arg(long)]
        any_rank: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Distance between two elements.
    Distance {
        #[command(flatten)]
        group: GroupArgs,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the preset names.
    Presets,
}

#[derive(clap::Args, Debug)]
struct GroupArgs {
    /// Preset name or path to a diagram file.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "error: usage: {first}");
            return 1;
        }
    };
    let mut text = String::new();
    let result = dispatch(cli.command, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: usage: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {msg}", e.code());
            if matches!(e, Error::TheoremViolation(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn load_group(source: &str) -> Result<CoxeterSystem, Error> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        parse_diagram(&text)
    } else {
        parse_preset(source)
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn reject(format: Format, allowed: &[Format], what: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} does not support --format {format:?}").to_lowercase()))
    }
}

fn scope_for(radius: Option<usize>, budget: usize) -> Scope {
    match radius {
        Some(radius) => Scope::Ball { radius, budget },
        None => Scope::FullGroup { budget },
    }
}

fn scope_text(scope: Scope) -> String {
    match scope {
        Scope::FullGroup { .. } => "full group".to_string(),
        Scope::Ball { radius, .. } => format!("ball r={radius}"),
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Presets => {
            for line in PRESET_HELP {
                writeln!(out, "{line}").unwrap();
            }
            Ok(())
        }
        Command::Ball {
            group,
            radius,
            center,
            format,
        } => {
            let sys = load_group(&group.group)?;
            let center = Element::parse(&sys, &center)?;
            let ball = match radius {
                Some(r) => generate_ball(&sys, &center, r, group.budget)?,
                None if center.is_identity() => full_group(&sys, group.budget)?,
                None => return Err(Failure::Usage("--center needs --radius".into())),
            };
            match format {
                Format::Dot => out.push_str(&ball.to_dot(&sys)),
                Format::Json => out.push_str(&json(&ball.to_json(&sys))),
                Format::Text => {
                    writeln!(out, "group: {}", sys.name()).unwrap();
                    writeln!(out, "center: {}", ball.center().to_text(&sys)).unwrap();
                    writeln!(out, "radius: {}", ball.radius()).unwrap();
                    writeln!(out, "full group: {}", ball.is_full_group()).unwrap();
                    writeln!(out, "vertices: {}", ball.len()).unwrap();
                    writeln!(out, "edges: {}", ball.edges().len()).unwrap();
                    for (i, v) in ball.vertices().iter().enumerate() {
                        writeln!(out, "{} {}", ball.depth(i), v.to_text(&sys)).unwrap();
                    }
                }
            }
            Ok(())
        }
        Command::Cliques { group, radius, format } => {
            reject(format, &[Format::Text, Format::Json], "cliques")?;
            let sys = load_group(&group.group)?;
            let scope = scope_for(radius, group.budget);
            let found = cliques::enumerate_maximal_2cliques(&sys, scope)?;
            match format {
                Format::Json => {
                    let report = CliquesReport {
                        group: sys.name().to_string(),
                        scope: scope_text(scope),
                        counts: cliques::tally(&found),
                        cliques: found.iter().map(|(c, class)| clique_to_json(&sys, c, class)).collect(),
                    };
                    out.push_str(&json(&report));
                }
                _ => {
                    for (c, class) in &found {
                        let members: Vec<String> = c.members().iter().map(|m| m.to_text(&sys)).collect();
                        let types: Vec<String> = class
                            .types
                            .iter()
                            .map(|t| {
                                let gens: Vec<&str> = t.generators().into_iter().map(|g| sys.gen_name(g)).collect();
                                if gens.is_empty() {
                                    format!("{} w=[{}]", t.tag(), t.w().to_text(&sys))
                                } else {
                                    format!("{} w=[{}] gens={}", t.tag(), t.w().to_text(&sys), gens.join(","))
                                }
                            })
                            .collect();
                        writeln!(out, "{} : {}", members.join(" | "), types.join("; ")).unwrap();
                    }
                }
            }
            Ok(())
        }
        Command::Verify {
            group,
            budget,
            radius,
            corpus,
            format,
        } => {
            reject(format, &[Format::Text, Format::Json], "verify")?;
            let runs: Vec<(String, Scope)> = match (group, corpus) {
                (Some(g), false) => vec![(g, scope_for(radius, budget))],
                (None, true) if radius.is_none() => cliques::corpus().into_iter().map(|(p, s)| (p.to_string(), s)).collect(),
                (None, true) => return Err(Failure::Usage("--corpus takes no --radius".into())),
                _ => return Err(Failure::Usage("give --group or --corpus".into())),
            };
            let mut reports = Vec::new();
            for (source, scope) in runs {
                let sys = load_group(&source)?;
                reports.push(verify_group(&sys, scope)?);
            }
            if format == Format::Json {
                out.push_str(&json(&reports));
            } else {
                for (i, r) in reports.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    r.write_text(out);
                }
            }
            Ok(())
        }
        Command::Halfgraph {
            group,
            parity,
            extend,
            witness,
            any_rank,
            format,
        } => {
            let sys = load_group(&group.group)?;
            let ball = full_group(&sys, group.budget)?;
            let parity = Parity::from_class_number(parity).expect("validated by clap");
            if let Some(path) = extend {
                reject(format, &[Format::Text, Format::Json], "halfgraph --extend")?;
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                let pairs: Vec<[String; 2]> =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                let f = VertexMap::from_json(&sys, &pairs)?;
                let ext = extend_map(&sys, &ball, &f, any_rank)?;
                write_map(out, format, &ext.map().to_json(&sys, &ball));
                return Ok(());
            }
            if witness {
                reject(format, &[Format::Text, Format::Json], "halfgraph --witness")?;
                let Some(f) = half::type_changing_witness(&sys, &ball, parity)? else {
                    writeln!(out, "witness: none").unwrap();
                    return Ok(());
                };
                let outcome = match extend_map(&sys, &ball, &f, any_rank) {
                    Ok(_) => "extendable".to_string(),
                    Err(e @ Error::NotExtendable(_)) => e.to_string(),
                    Err(e) => return Err(e.into()),
                };
                if format == Format::Json {
                    out.push_str(&json(&WitnessReport {
                        group: sys.name().to_string(),
                        parity: parity.class_number(),
                        map: f.to_json(&sys),
                        extension: outcome,
                    }));
                } else {
                    write_map(out, format, &f.to_json(&sys));
                    writeln!(out, "extension: {outcome}").unwrap();
                }
                return Ok(());
            }
            let (odd, even) = parity_split(&sys, &ball);
            let half = if parity == Parity::Odd { odd } else { even };
            match format {
                Format::Dot => out.push_str(&half.to_dot(&sys)),
                Format::Json => out.push_str(&json(&half.to_json(&sys))),
                Format::Text => {
                    writeln!(out, "group: {}", sys.name()).unwrap();
                    writeln!(out, "class: W{}", half.parity.class_number()).unwrap();
                    writeln!(out, "vertices: {}", half.vertices.len()).unwrap();
                    writeln!(out, "edges: {}", half.edges.len()).unwrap();
                    for &(a, b) in &half.edges {
                        writeln!(
                            out,
                            "{} -- {}",
                            half.vertices[a].to_text(&sys),
                            half.vertices[b].to_text(&sys)
                        )
                        .unwrap();
                    }
                }
            }
            Ok(())
        }
        Command::Distance { group, a, b, format } => {
            reject(format, &[Format::Text, Format::Json], "distance")?;
            let sys = load_group(&group.group)?;
            let (a, b) = (Element::parse(&sys, &a)?, Element::parse(&sys, &b)?);
            let d = element::distance(&sys, &a, &b);
            if format == Format::Json {
                out.push_str(&json(&DistanceReport {
                    a: a.to_text(&sys),
                    b: b.to_text(&sys),
                    distance: d,
                }));
            } else {
                writeln!(out, "a: {}", a.to_text(&sys)).unwrap();
                writeln!(out, "b: {}", b.to_text(&sys)).unwrap();
                writeln!(out, "distance: {d}").unwrap();
            }
            Ok(())
        }
    }
}

fn extend_map(
    sys: &CoxeterSystem,
    ball: &cayley::Ball,
    f: &VertexMap,
    any_rank: bool,
) -> Result<half::CayleyAutomorphism, Error> {
    if any_rank {
        half::extend_half_automorphism_any_rank(sys, ball, f)
    } else {
        half::extend_half_automorphism(sys, ball, f)
    }
}

fn write_map(out: &mut String, format: Format, pairs: &[[String; 2]]) {
    if format == Format::Json {
        out.push_str(&json(&pairs));
    } else {
        for [a, b] in pairs {
            writeln!(out, "{a} -> {b}").unwrap();
        }
    }
}

#[derive(Serialize)]
struct CliquesReport {
    group: String,
    scope: String,
    counts: TypeCounts,
    cliques: Vec<CliqueJson>,
}

#[derive(Serialize)]
struct WitnessReport {
    group: String,
    parity: u8,
    map: Vec<[String; 2]>,
    extension: String,
}

#[derive(Serialize)]
struct DistanceReport {
    a: String,
    b: String,
    distance: usize,
}

#[derive(Serialize)]
struct VerifyReport {
    group: String,
    scope: String,
    maximal_2cliques: usize,
    type_i: usize,
    type_ii: usize,
    type_iii: usize,
    type_ii_present: bool,
    violations: usize,
}

impl VerifyReport {
    fn write_text(&self, out: &mut String) {
        writeln!(out, "group: {}", self.group).unwrap();
        writeln!(out, "scope: {}", self.scope).unwrap();
        writeln!(out, "maximal 2-cliques: {}", self.maximal_2cliques).unwrap();
        writeln!(out, "typeI ({}): {}", TypeTag::SCoset, self.type_i).unwrap();
        writeln!(out, "typeII ({}): {}", TypeTag::CommutingTriple, self.type_ii).unwrap();
        writeln!(out, "typeIII ({}): {}", TypeTag::Braid, self.type_iii).unwrap();
        writeln!(out, "typeII present: {}", self.type_ii_present).unwrap();
        writeln!(out, "violations: {}", self.violations).unwrap();
    }
}

fn verify_group(sys: &CoxeterSystem, scope: Scope) -> Result<VerifyReport, Error> {
    let found = cliques::enumerate_maximal_2cliques(sys, scope)?;
    for (c, class) in &found {
        cliques::verify_class(sys, c, class)?;
    }
    let counts = cliques::tally(&found);
    Ok(VerifyReport {
        group: sys.name().to_string(),
        scope: scope_text(scope),
        maximal_2cliques: counts.total,
        type_i: counts.s_coset,
        type_ii: counts.commuting_triple,
        type_iii: counts.braid,
        type_ii_present: counts.commuting_triple > 0,
        violations: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("coxclique").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hexagon_cliques_json() {
        let (code, out, _) = call(&["cliques", "--group", "I2(3)", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let list = v["cliques"].as_array().unwrap();
        assert_eq!(list.len(), 2);
        for c in list {
            assert_eq!(c["types"].as_array().unwrap().len(), 1);
            assert_eq!(c["types"][0]["tag"], "braid");
        }
    }

    #[test]
    fn verify_d4() {
        let (code, out, _) = call(&["verify", "--group", "D4"]);
        assert_eq!(code, 0);
        assert!(out.contains("typeII present: true\n"));
    }

    #[test]
    fn affine_ball_dot() {
        let (code, out, _) = call(&["ball", "--group", "Atilde2", "--radius", "3", "--format", "dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("graph \"Atilde2 ball r=3\" {\n"));
        assert!(out.contains("v0 [label=\"e\"];"));
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, out, err) = call(&["ball", "--group", "Q7"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("error: parse: "));
        assert_eq!(err.lines().count(), 1);

        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: usage: "));
        assert_eq!(err.lines().count(), 1);

        let (code, _, err) = call(&["cliques", "--group", "A3", "--format", "dot"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: usage: "));
    }

    #[test]
    fn infinite_group_needs_radius() {
        let (code, _, err) = call(&["cliques", "--group", "Atilde2", "--budget", "1000"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: budget-exceeded: "));
    }

    #[test]
    fn distance_and_presets() {
        let (code, out, _) = call(&["distance", "--group", "A3", "s1 s2", "s2 s1"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("distance: 2\n"));
        let (code, out, _) = call(&["presets"]);
        assert_eq!(code, 0);
        assert!(out.contains("Cube(n)"));
    }

    #[test]
    fn half_cube_witness() {
        let (code, out, _) = call(&["halfgraph", "--group", "Cube(4)", "--witness", "--any-rank"]);
        assert_eq!(code, 0);
        assert!(out.contains("extension: not extendable"));
        let (code, _, err) = call(&["halfgraph", "--group", "Cube(4)", "--witness"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: rank-too-small"));
    }
}
