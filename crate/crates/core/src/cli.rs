//! Command-line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cone::{asymptotic_cone, emit_dot, siegel_family, ConeResult};
use crate::error::Error;
use crate::hasse::{hasse, HasseDiagram};
use crate::numerics::{sample_orbit_limits, tangent_dimension, DEFAULT_TOL};
use crate::partitions::Partition;
use crate::signed::{dim_k_orbit, enumerate_orbits, parse_diagram, Signature, SignedDiagram};
use crate::triples::{build_ks_triple, cayley, KsTriple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "symcone", version, about = "Nilpotent K-orbits and asymptotic cones for (GL(p+q), GL(p) x GL(q))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the K-orbits with a given Jordan type.
    Orbits {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Asymptotic cone of K·a for an even nilpotent orbit.
    Cone {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        diagram: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closure order on the orbits of one Jordan type.
    Hasse {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        partition: String,
        /// Include every orbit whose Jordan type is dominated by the partition.
        #[arg(long)]
        ambient: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// KS triple and Cayley data of an orbit.
    Triple {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        diagram: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Numerical checks: limit curves, dim K·a, sampled membership.
    Verify {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// dim K·a, computed exactly.
    Dim {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        diagram: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cone of [(+-)^n] in signature (n,n) and the poset of all K_{p,q}.
    Siegel {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct SigArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the program on `argv` (including the program name) and returns the
/// exit code with what would go to standard output and standard error.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (EXIT_USAGE, String::new(), text)
            } else {
                (EXIT_OK, text, String::new())
            };
        }
    };
    let output = output_path(&cli.command).cloned();
    match dispatch(cli.command) {
        Ok(text) => match output {
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => (EXIT_OK, String::new(), String::new()),
                Err(e) => (EXIT_DOMAIN, String::new(), format!("error: cannot write {}: {e}\n", path.display())),
            },
            None => (EXIT_OK, text, String::new()),
        },
        Err(Failure::Usage(msg)) => (EXIT_USAGE, String::new(), format!("error: {msg}\n")),
        Err(Failure::Domain(msg)) => (EXIT_DOMAIN, String::new(), format!("error: {msg}\n")),
    }
}

fn output_path(c: &Command) -> Option<&PathBuf> {
    match c {
        Command::Orbits { out, .. }
        | Command::Cone { out, .. }
        | Command::Hasse { out, .. }
        | Command::Triple { out, .. }
        | Command::Verify { out, .. }
        | Command::Dim { out, .. }
        | Command::Siegel { out, .. } => out.output.as_ref(),
    }
}

fn require(format: Format, allowed: &[Format], command: &str) -> std::result::Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format!("{format:?}").to_lowercase();
        Err(Failure::Usage(format!("format '{name}' is not supported by '{command}'")))
    }
}

fn signature(s: &SigArgs) -> std::result::Result<Signature, Failure> {
    Ok(Signature::new(s.p, s.q)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Outcome {
    use Format::*;
    match command {
        Command::Orbits { sig, partition, out } => {
            require(out.format, &[Text, Json], "orbits")?;
            let sig = signature(&sig)?;
            let lambda: Partition = partition.parse()?;
            let orbits = enumerate_orbits(&lambda, sig)?;
            Ok(match out.format {
                Json => json(&orbits),
                _ => lines(&orbits),
            })
        }
        Command::Cone { sig, diagram, out } => {
            let d = parse_diagram(&diagram, signature(&sig)?)?;
            let r = asymptotic_cone(&d)?;
            Ok(match out.format {
                Json => json(&r),
                Dot => format!("{}{}", r.cone_poset.to_dot("cone"), r.ambient_poset.to_dot("ambient")),
                Text => cone_text(&r),
            })
        }
        Command::Hasse {
            sig,
            partition,
            ambient,
            out,
        } => {
            let sig = signature(&sig)?;
            let lambda: Partition = partition.parse()?;
            let mut nodes = Vec::new();
            if ambient {
                for mu in Partition::all(sig.n()) {
                    if mu.dominance_le(&lambda)? {
                        nodes.extend(enumerate_orbits(&mu, sig)?);
                    }
                }
            } else {
                nodes = enumerate_orbits(&lambda, sig)?;
            }
            let h = hasse(nodes)?;
            Ok(match out.format {
                Json => json(&h),
                Dot => emit_dot(&h),
                Text => hasse_text(&h),
            })
        }
        Command::Triple { sig, diagram, out } => {
            require(out.format, &[Text, Json], "triple")?;
            let d = parse_diagram(&diagram, signature(&sig)?)?;
            let t = build_ks_triple(&d);
            Ok(match out.format {
                Json => json(&serde_json::json!({ "triple": t, "cayley": cayley(&t) })),
                _ => triple_text(&t),
            })
        }
        Command::Verify {
            sig,
            diagram,
            samples,
            tol,
            seed,
            out,
        } => {
            require(out.format, &[Text, Json], "verify")?;
            let d = parse_diagram(&diagram, signature(&sig)?)?;
            let r = sample_orbit_limits(&d, samples, tol, seed)?;
            Ok(match out.format {
                Json => json(&r),
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "diagram: {}", r.diagram);
                    let _ = writeln!(s, "components: {}", r.components);
                    for (t, res) in &r.curve_residuals {
                        let _ = writeln!(s, "curve residual at t={t}: {res:.3e}");
                    }
                    let _ = writeln!(s, "dim K.a: {} (components: {})", r.tangent_dim, r.component_dim);
                    let _ = writeln!(
                        s,
                        "membership failures: {} of {} samples (tol {:e})",
                        r.membership_failures,
                        r.samples * r.components,
                        r.tolerance
                    );
                    s
                }
            })
        }
        Command::Dim { sig, diagram, out } => {
            require(out.format, &[Text, Json], "dim")?;
            let sig = signature(&sig)?;
            let d = parse_diagram(&diagram, sig)?;
            if !d.is_even() {
                return Err(Error::OddPartition(d.partition().to_string()).into());
            }
            let a = cayley(&build_ks_triple(&d)).a;
            let dim = tangent_dimension(&a, sig)?;
            Ok(match out.format {
                Json => json(&serde_json::json!({
                    "diagram": d,
                    "tangent_dim": dim,
                    "orbit_dim": dim_k_orbit(&d),
                })),
                _ => format!("{dim}\n"),
            })
        }
        Command::Siegel { n, out } => {
            let fam = siegel_family(n)?;
            Ok(match out.format {
                Json => json(&fam),
                Dot => fam.extended.to_dot("siegel"),
                Text => {
                    let mut s = cone_text(&fam.cone);
                    let _ = writeln!(s, "K_{{p,q}} poset, p+q <= {n}:");
                    s.push_str(&hasse_text(&fam.extended));
                    s
                }
            })
        }
    }
}

fn lines(ds: &[SignedDiagram]) -> String {
    ds.iter().map(|d| format!("{d}\n")).collect()
}

fn hasse_text(h: &HasseDiagram) -> String {
    let mut s = String::new();
    for (i, d) in h.nodes().iter().enumerate() {
        let _ = writeln!(s, "  {i}: {d}");
    }
    for (big, small) in h.cover_pairs() {
        let _ = writeln!(s, "  {big} > {small}");
    }
    s
}

fn cone_text(r: &ConeResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input: {}", r.input);
    let _ = writeln!(s, "components ({}):", r.components.len());
    s.push_str(&indent(&lines(&r.components)));
    let _ = writeln!(s, "cone ({} orbits):", r.cone_poset.nodes().len());
    s.push_str(&hasse_text(&r.cone_poset));
    let _ = writeln!(s, "ambient ({} orbits):", r.ambient_poset.nodes().len());
    s.push_str(&hasse_text(&r.ambient_poset));
    let _ = writeln!(s, "strict gap ({}):", r.strict_gap.len());
    s.push_str(&indent(&lines(&r.strict_gap)));
    s
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn triple_text(t: &KsTriple) -> String {
    let c = cayley(t);
    let mut s = String::new();
    let _ = writeln!(s, "diagram: {}", t.diagram);
    for (name, m) in [("x", &t.x), ("h", &t.h), ("y", &t.y), ("e", &c.e), ("f", &c.f), ("a", &c.a)] {
        let _ = writeln!(s, "{name} =\n{m}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        run(std::iter::once("symcone").chain(args.iter().copied()))
    }

    #[test]
    fn dim_siegel() {
        let (code, out, _) = go(&["dim", "--p", "2", "--q", "2", "--diagram", "[(+-)^2]"]);
        assert_eq!(code, 0);
        assert_eq!(out, "4\n");
    }

    #[test]
    fn cone_json_has_two_components() {
        let (code, out, _) = go(&["cone", "--p", "3", "--q", "3", "--diagram", "[(+-+)(+)(-)(-)]", "--format", "json"]);
        assert_eq!(code, 0);
        let r: ConeResult = serde_json::from_str(&out).unwrap();
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.strict_gap.len(), 2);
    }

    #[test]
    fn odd_partition_is_a_domain_error() {
        let (code, _, err) = go(&["cone", "--p", "2", "--q", "2", "--diagram", "[(+-)(+)(-)]"]);
        assert_eq!(code, 1);
        assert!(err.contains("even nilpotent required"));
    }

    #[test]
    fn bad_diagram_is_a_domain_error() {
        let (code, _, _) = go(&["triple", "--p", "1", "--q", "1", "--diagram", "[(++)]"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["cone", "--p", "1"]).0, 2);
        assert_eq!(go(&["frobnicate"]).0, 2);
        assert_eq!(go(&["siegel", "--n", "2", "--bogus"]).0, 2);
        assert_eq!(go(&["dim", "--p", "1", "--q", "1", "--diagram", "[(+-)]", "--format", "dot"]).0, 2);
    }

    #[test]
    fn siegel_dot_has_fifteen_nodes() {
        let (code, out, _) = go(&["siegel", "--n", "4", "--format", "dot"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("[label=").count(), 15);
    }
}
