//! The `dgw` command-line front end.
//!
//! Subcommands map directly onto the library: `diagram` for the calculus,
//! `thompson` for `F_r` words and generators, `plmap` for the
//! piecewise-linear representation, `family` for the presentation families,
//! `iso` for the isomorphisms, `semigroup` for the bounded oracles and
//! `verify` for the one-shot check suite.
//!
//! Output is deterministic: identical arguments, seeds and inputs produce
//! byte-identical output. Every subcommand also has `--format json`, which
//! prints flat objects with keys in a fixed order (one object per line for
//! `verify all`). Exit codes: 0 on success, 1 on a domain error (including
//! a failed verification), 2 on a usage error.
//!
//! File arguments accept `-` for standard input. Presentation arguments
//! accept either literal text like `<a,b | a=bab, b=aba>` or a path to a
//! file containing it. The environment variable `DGW_MAX_ITERS` overrides
//! the iteration cap of the middle-normalization loop inside `iso psi`.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::families::IsoInstance;
use crate::presentations::Presentation;
use crate::rng::SplitMix64;
use crate::semigroup::{CountOutcome, Verdict, DEFAULT_MAX_LEN, DEFAULT_MAX_STATES};
use crate::thompson::FWord;

#[derive(Parser)]
#[command(
    name = "dgw",
    version,
    about = "Workbench for semigroup diagrams, diagram groups and Thompson's groups",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Operations on diagram files.
    Diagram {
        #[command(subcommand)]
        cmd: DiagramCmd,
    },
    /// Generalized Thompson's groups F_r.
    Thompson {
        #[command(subcommand)]
        cmd: ThompsonCmd,
    },
    /// Piecewise-linear maps.
    Plmap {
        #[command(subcommand)]
        cmd: PlmapCmd,
    },
    /// Presentation families.
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Isomorphisms between diagram groups and F_r.
    Iso {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// Bounded semigroup oracles.
    Semigroup {
        #[command(subcommand)]
        cmd: SemigroupCmd,
    },
    /// Verification suite.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Args)]
struct PresArg {
    /// Presentation, as literal text like '<a,b | a=bab, b=aba>' or a file path.
    #[arg(long, short = 'p')]
    presentation: String,
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// Cancel all dipoles; print the canonical irreducible diagram.
    Reduce {
        #[command(flatten)]
        pres: PresArg,
        /// Diagram file ('-' for stdin).
        file: String,
    },
    /// Print the canonical derivation order of the isotopy class.
    Canon {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
    /// Concatenate two diagrams (bottom of the first = top of the second).
    Compose {
        #[command(flatten)]
        pres: PresArg,
        file1: String,
        file2: String,
    },
    /// Append the second diagram to the right of the first.
    Sum {
        #[command(flatten)]
        pres: PresArg,
        file1: String,
        file2: String,
    },
    /// Mirror image.
    Invert {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
    /// Split an irreducible diagram into positive halves D1 o D2^-1.
    Split {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
    /// Vertex, edge and cell counts of the planar realization.
    Stats {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
    /// DOT rendering of the planar realization.
    Render {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
}

#[derive(Subcommand)]
enum ThompsonCmd {
    /// The generator diagram x_i of F_r.
    Gen {
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        index: usize,
    },
    /// Standard normal form of a word like 'x0 x3 X2'.
    Nf {
        #[arg(short, long)]
        r: usize,
        word: String,
    },
    /// The reduced diagram of a word.
    Word2diag {
        #[arg(short, long)]
        r: usize,
        word: String,
    },
    /// Check the defining relation x_j x_i = x_i x_{j+r-1} (needs i < j).
    Relcheck {
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        i: usize,
        #[arg(short, long)]
        j: usize,
    },
}

#[derive(Subcommand)]
enum PlmapCmd {
    /// The transition map of a diagram.
    Of {
        #[command(flatten)]
        pres: PresArg,
        file: String,
    },
    /// Compose two maps (first, then second).
    Compose { file1: String, file2: String },
    /// Check slopes and breakpoints against the group F_r.
    Check {
        #[arg(short, long)]
        r: usize,
        file: String,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Fibonacci presentation on n letters.
    Fib {
        #[arg(short, long)]
        n: usize,
    },
    /// Johnson presentation on n letters with right-hand sides of length r.
    Johnson {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        r: usize,
    },
    /// A named isomorphism instance: fib3, fib4, johnson-odd-<s>, johnson-even-<s>.
    Instance { name: String },
}

#[derive(Subcommand)]
enum IsoCmd {
    /// Map a diagram over <x | x = x^r'> into the instance's target.
    Phi {
        #[arg(long)]
        instance: String,
        file: String,
    },
    /// Map an (a,a)-diagram over the target back into F_r'.
    Psi {
        #[arg(long)]
        instance: String,
        file: String,
    },
    /// Round-trip random words through phi and psi.
    Roundtrip {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SemigroupCmd {
    /// Count the elements of the presented semigroup within bounds.
    Count {
        #[command(flatten)]
        pres: PresArg,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Decide equality of two words within bounds.
    Eq {
        #[command(flatten)]
        pres: PresArg,
        word1: String,
        word2: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every verification criterion and print one line per check.
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// One subcommand's output: a text form and a flat JSON object (or one
/// object per line).
enum Output {
    One(String, Map<String, Value>),
    Lines(Vec<(String, Map<String, Value>)>),
}

fn obj(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_presentation(arg: &str) -> Result<Arc<Presentation>> {
    let text = if arg.trim_start().starts_with('<') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(Arc::new(Presentation::parse(text.trim())?))
}

fn load_diagram(pres: &Arc<Presentation>, path: &str) -> Result<Diagram> {
    Diagram::from_text(pres.clone(), &read_input(path)?)
}

fn diagram_output(d: &Diagram) -> Output {
    let atoms: Vec<String> = d
        .to_text()
        .lines()
        .skip(1)
        .map(|s| s.to_string())
        .collect();
    let json = obj(vec![
        ("base", json!(d.presentation().word_string(d.top()))),
        ("atoms", json!(atoms.join(" "))),
        ("cells", json!(d.cell_count())),
        ("bottom", json!(d.presentation().word_string(d.bottom()))),
    ]);
    Output::One(d.to_text().trim_end().to_string(), json)
}

fn instance_arg(name: &str) -> Result<IsoInstance> {
    name.parse()
}

fn psi_cap_from_env() -> Option<usize> {
    std::env::var("DGW_MAX_ITERS").ok().and_then(|v| v.parse().ok())
}

fn run_cmd(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let output = match cli.cmd {
        Cmd::Diagram { cmd } => run_diagram(cmd)?,
        Cmd::Thompson { cmd } => run_thompson(cmd)?,
        Cmd::Plmap { cmd } => run_plmap(cmd)?,
        Cmd::Family { cmd } => run_family(cmd)?,
        Cmd::Iso { cmd } => {
            let (output, code) = run_iso(cmd)?;
            print_output(cli.format, output, out)?;
            return Ok(code);
        }
        Cmd::Semigroup { cmd } => run_semigroup(cmd)?,
        Cmd::Verify { cmd } => {
            let VerifyCmd::All { seed } = cmd;
            let outcomes = crate::verify::run_all(seed);
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let all_pass = passed == outcomes.len();
            let mut lines: Vec<(String, Map<String, Value>)> = outcomes
                .iter()
                .map(|o| {
                    let json = obj(vec![
                        ("index", json!(o.index)),
                        ("name", json!(o.name)),
                        ("pass", json!(o.passed)),
                        ("details", json!(o.details)),
                        ("seed", json!(seed)),
                    ]);
                    (o.line(), json)
                })
                .collect();
            lines.push((
                format!("seed={seed}: {passed}/{} passed", outcomes.len()),
                obj(vec![
                    ("seed", json!(seed)),
                    ("passed", json!(passed)),
                    ("total", json!(outcomes.len())),
                ]),
            ));
            print_output(cli.format, Output::Lines(lines), out)?;
            return Ok(if all_pass { 0 } else { 1 });
        }
    };
    print_output(cli.format, output, out)?;
    Ok(0)
}

fn print_output(format: Format, output: Output, out: &mut dyn Write) -> Result<()> {
    match (format, output) {
        (Format::Text, Output::One(text, _)) => writeln!(out, "{text}")?,
        (Format::Json, Output::One(_, json)) => writeln!(out, "{}", Value::Object(json))?,
        (Format::Text, Output::Lines(lines)) => {
            for (text, _) in lines {
                writeln!(out, "{text}")?;
            }
        }
        (Format::Json, Output::Lines(lines)) => {
            for (_, json) in lines {
                writeln!(out, "{}", Value::Object(json))?;
            }
        }
    }
    Ok(())
}

fn run_diagram(cmd: DiagramCmd) -> Result<Output> {
    Ok(match cmd {
        DiagramCmd::Reduce { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            diagram_output(&load_diagram(&pres, &file)?.reduce())
        }
        DiagramCmd::Canon { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            diagram_output(&load_diagram(&pres, &file)?.canon())
        }
        DiagramCmd::Compose { pres, file1, file2 } => {
            let pres = load_presentation(&pres.presentation)?;
            let d1 = load_diagram(&pres, &file1)?;
            let d2 = load_diagram(&pres, &file2)?;
            diagram_output(&d1.compose(&d2)?)
        }
        DiagramCmd::Sum { pres, file1, file2 } => {
            let pres = load_presentation(&pres.presentation)?;
            let d1 = load_diagram(&pres, &file1)?;
            let d2 = load_diagram(&pres, &file2)?;
            diagram_output(&d1.sum(&d2))
        }
        DiagramCmd::Invert { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            diagram_output(&load_diagram(&pres, &file)?.invert())
        }
        DiagramCmd::Split { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            let d = load_diagram(&pres, &file)?;
            let (left, right) = d.split()?;
            let text = format!("{}\n{}", left.to_text().trim_end(), right.to_text());
            let json = obj(vec![
                ("left_base", json!(pres.word_string(left.top()))),
                (
                    "left_atoms",
                    json!(left.to_text().lines().skip(1).collect::<Vec<_>>().join(" ")),
                ),
                ("right_base", json!(pres.word_string(right.top()))),
                (
                    "right_atoms",
                    json!(right.to_text().lines().skip(1).collect::<Vec<_>>().join(" ")),
                ),
                ("middle", json!(pres.word_string(left.bottom()))),
            ]);
            Output::One(text.trim_end().to_string(), json)
        }
        DiagramCmd::Stats { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            let d = load_diagram(&pres, &file)?;
            let g = crate::geometry::realize(&d);
            let text = format!(
                "vertices={} edges={} cells={}",
                g.vertex_count(),
                g.edge_count(),
                g.cell_count()
            );
            let json = obj(vec![
                ("vertices", json!(g.vertex_count())),
                ("edges", json!(g.edge_count())),
                ("cells", json!(g.cell_count())),
            ]);
            Output::One(text, json)
        }
        DiagramCmd::Render { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            let d = load_diagram(&pres, &file)?;
            let dot = crate::geometry::render_dot(&crate::geometry::realize(&d));
            let json = obj(vec![("dot", json!(dot))]);
            Output::One(dot.trim_end().to_string(), json)
        }
    })
}

fn run_thompson(cmd: ThompsonCmd) -> Result<Output> {
    Ok(match cmd {
        ThompsonCmd::Gen { r, index } => {
            let d = crate::thompson::generator(r, index)?;
            diagram_output(&d)
        }
        ThompsonCmd::Nf { r, word } => {
            let w = FWord::parse(r, &word)?;
            let nf = crate::thompson::normal_form(&w)?;
            let json = obj(vec![("r", json!(r)), ("word", json!(nf.to_string()))]);
            Output::One(nf.to_string(), json)
        }
        ThompsonCmd::Word2diag { r, word } => {
            let w = FWord::parse(r, &word)?;
            diagram_output(&crate::thompson::word_to_diagram(&w)?)
        }
        ThompsonCmd::Relcheck { r, i, j } => {
            let holds = crate::thompson::relation_holds(r, i, j)?;
            let json = obj(vec![
                ("r", json!(r)),
                ("i", json!(i)),
                ("j", json!(j)),
                ("holds", json!(holds)),
            ]);
            Output::One(holds.to_string(), json)
        }
    })
}

fn run_plmap(cmd: PlmapCmd) -> Result<Output> {
    Ok(match cmd {
        PlmapCmd::Of { pres, file } => {
            let pres = load_presentation(&pres.presentation)?;
            let d = load_diagram(&pres, &file)?;
            let f = crate::plmaps::diagram_to_plmap(&d);
            let json = obj(vec![("map", json!(f.to_string()))]);
            Output::One(f.to_string(), json)
        }
        PlmapCmd::Compose { file1, file2 } => {
            let f = crate::plmaps::PlMap::parse(read_input(&file1)?.trim())?;
            let g = crate::plmaps::PlMap::parse(read_input(&file2)?.trim())?;
            let h = f.then(&g)?;
            let json = obj(vec![("map", json!(h.to_string()))]);
            Output::One(h.to_string(), json)
        }
        PlmapCmd::Check { r, file } => {
            let f = crate::plmaps::PlMap::parse(read_input(&file)?.trim())?;
            let valid = f.validate_fr(r);
            let json = obj(vec![("r", json!(r)), ("valid", json!(valid))]);
            Output::One(valid.to_string(), json)
        }
    })
}

fn run_family(cmd: FamilyCmd) -> Result<Output> {
    Ok(match cmd {
        FamilyCmd::Fib { n } => {
            let p = crate::families::fibonacci_presentation(n)?;
            let json = obj(vec![("presentation", json!(p.to_string()))]);
            Output::One(p.to_string(), json)
        }
        FamilyCmd::Johnson { n, r } => {
            let p = crate::families::johnson_presentation(n, r)?;
            let json = obj(vec![("presentation", json!(p.to_string()))]);
            Output::One(p.to_string(), json)
        }
        FamilyCmd::Instance { name } => {
            let inst = instance_arg(&name)?;
            let text = format!(
                "name={} target={} rprime={}",
                inst.name(),
                inst.target(),
                inst.rprime()
            );
            let json = obj(vec![
                ("name", json!(inst.name())),
                ("target", json!(inst.target().to_string())),
                ("rprime", json!(inst.rprime())),
            ]);
            Output::One(text, json)
        }
    })
}

fn run_iso(cmd: IsoCmd) -> Result<(Output, i32)> {
    Ok(match cmd {
        IsoCmd::Phi { instance, file } => {
            let inst = instance_arg(&instance)?;
            let source = crate::thompson::pr(inst.rprime())?;
            let d = load_diagram(&source, &file)?;
            (diagram_output(&crate::isomorphisms::phi(&inst, &d)?), 0)
        }
        IsoCmd::Psi { instance, file } => {
            let inst = instance_arg(&instance)?;
            let d = load_diagram(inst.target(), &file)?;
            let back = crate::isomorphisms::psi_with_cap(&inst, &d, psi_cap_from_env())?;
            (diagram_output(&back), 0)
        }
        IsoCmd::Roundtrip { instance, samples, seed } => {
            let inst = instance_arg(&instance)?;
            let rp = inst.rprime();
            let mut rng = SplitMix64::new(seed);
            let mut failures = 0;
            for _ in 0..samples {
                let w = crate::verify::sample::random_fword(&mut rng, rp, 12, 5);
                let d = crate::thompson::word_to_diagram(&w)?;
                let image = crate::isomorphisms::phi(&inst, &d)?;
                let back = crate::isomorphisms::psi_with_cap(&inst, &image, psi_cap_from_env())?;
                if !back.equal(&d) {
                    failures += 1;
                }
            }
            let pass = failures == 0;
            let text = format!(
                "instance={} samples={samples} seed={seed} failures={failures} {}",
                inst.name(),
                if pass { "pass" } else { "FAIL" }
            );
            let json = obj(vec![
                ("instance", json!(inst.name())),
                ("samples", json!(samples)),
                ("seed", json!(seed)),
                ("failures", json!(failures)),
                ("pass", json!(pass)),
            ]);
            (Output::One(text, json), if pass { 0 } else { 1 })
        }
    })
}

fn run_semigroup(cmd: SemigroupCmd) -> Result<Output> {
    Ok(match cmd {
        SemigroupCmd::Count { pres, max_len, max_states } => {
            let pres = load_presentation(&pres.presentation)?;
            match crate::semigroup::count_elements(&pres, max_len, max_states) {
                CountOutcome::Stable(n) => {
                    let json = obj(vec![
                        ("count", json!(n)),
                        ("stable", json!(true)),
                        ("max_len", json!(max_len)),
                        ("max_states", json!(max_states)),
                    ]);
                    Output::One(n.to_string(), json)
                }
                CountOutcome::Unknown { .. } => {
                    let json = obj(vec![
                        ("count", Value::Null),
                        ("stable", json!(false)),
                        ("max_len", json!(max_len)),
                        ("max_states", json!(max_states)),
                    ]);
                    Output::One(
                        format!("unknown (max_len={max_len}, max_states={max_states})"),
                        json,
                    )
                }
            }
        }
        SemigroupCmd::Eq { pres, word1, word2, max_len, max_states } => {
            let pres = load_presentation(&pres.presentation)?;
            let u = pres.parse_word(&word1)?;
            let v = pres.parse_word(&word2)?;
            if u.is_empty() || v.is_empty() {
                return Err(Error::EmptyWord);
            }
            match crate::semigroup::word_equal(&pres, &u, &v, max_len, max_states) {
                Verdict::Equal { derivation } => {
                    let text = format!("equal ({} cells)\n{}", derivation.cell_count(), derivation);
                    let json = obj(vec![
                        ("verdict", json!("equal")),
                        ("cells", json!(derivation.cell_count())),
                        (
                            "derivation",
                            json!(derivation
                                .to_text()
                                .lines()
                                .skip(1)
                                .collect::<Vec<_>>()
                                .join(" ")),
                        ),
                    ]);
                    Output::One(text.trim_end().to_string(), json)
                }
                Verdict::UnequalWithinBound { max_len, max_states } => {
                    let json = obj(vec![
                        ("verdict", json!("unequal-within-bound")),
                        ("max_len", json!(max_len)),
                        ("max_states", json!(max_states)),
                    ]);
                    Output::One(
                        format!("unequal within bounds (max_len={max_len}, max_states={max_states})"),
                        json,
                    )
                }
                Verdict::Unknown { max_len, max_states } => {
                    let json = obj(vec![
                        ("verdict", json!("unknown")),
                        ("max_len", json!(max_len)),
                        ("max_states", json!(max_states)),
                    ]);
                    Output::One(
                        format!("unknown (max_len={max_len}, max_states={max_states})"),
                        json,
                    )
                }
            }
        }
    })
}

/// Parse and execute; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match run_cmd(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
