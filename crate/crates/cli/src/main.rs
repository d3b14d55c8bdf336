use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use branchproof::enum_cp::enum_to_cp;
use branchproof::format::{
    format_branching, format_cuts, format_enumerative, format_system, parse_branching, parse_cuts, parse_enumerative, parse_integer,
    parse_proof, parse_system, ProofFile,
};
use branchproof::generators::{parse_graph, pn_polytope, qn_polytope, qn_split_refutation, thin_segment, tseitin_polytope, tseitin_sp_refutation};
use branchproof::lp::{find_point, InequalitySystem};
use branchproof::polytope::apply_cg_list;
use branchproof::proof::{certify, proof_stats, verify_branching_proof, verify_certified_proof, verify_enumerative_proof, ProofStats, Report};
use branchproof::recompile::recompile;
use branchproof::Error;

#[derive(Parser)]
#[command(name = "branchproof", version, about = "Build, convert and check proofs of integer infeasibility")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tseitin SAT-LP and its enumerative refutation; writes PREFIX.ineq and PREFIX.proof
    GenTseitin {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Cube-clause polytope P_n
    GenPn {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extended polytope Q_n; also checks its split-cut refutation
    GenQn {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Thin segment M x1 + x2 = 1/2; writes PREFIX.ineq and PREFIX.proof
    ThinSegment {
        m: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rewrite a branching proof with short coefficients
    Recompile {
        system: PathBuf,
        proof: PathBuf,
        #[arg(long)]
        radius: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert an enumerative proof into a cutting-plane proof
    EnumToCp {
        system: PathBuf,
        proof: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Verify {
        kind: Kind,
        system: PathBuf,
        /// Proof file, or a cuts file for `cp`
        proof: PathBuf,
    },
    /// Attach Farkas certificates to every leaf
    Certify {
        system: PathBuf,
        proof: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Length, bit size and largest coefficient of a proof or cuts file
    Stats { proof: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Branching,
    Certified,
    Enumerative,
    Cp,
}

enum Outcome {
    Valid(String),
    Invalid(String),
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// Writes to the file, or to stdout when none was given.
fn emit(output: &Option<PathBuf>, text: &str, log: &mut Vec<String>) -> Result<(), Error> {
    match output {
        Some(p) => {
            write(p, text)?;
            log.push(format!("wrote {}", p.display()));
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn system(path: &Path) -> Result<InequalitySystem, Error> {
    parse_system(&read(path)?)
}

fn integer(s: &str, what: &str) -> Result<branchproof::Integer, Error> {
    parse_integer(s).ok_or_else(|| Error::Precondition(format!("{what} must be an integer, got {s:?}")))
}

fn stats_lines(s: &ProofStats) -> Vec<String> {
    vec![format!("length {}", s.length), format!("bit_size {}", s.bit_size), format!("max_coeff {}", s.max_coeff)]
}

fn report_outcome(r: Report, log: &mut Vec<String>) -> Outcome {
    if r.valid {
        return Outcome::Valid("all leaves empty".into());
    }
    for f in &r.failing_leaves {
        let w = f.witness.as_ref().map(|x| format!(" witness {x}")).unwrap_or_default();
        log.push(format!("failing leaf {}: {}{w}", f.path, f.reason));
    }
    Outcome::Invalid(format!("failing leaf {}", r.failing_leaves[0].path))
}

fn run(cmd: Command, log: &mut Vec<String>) -> Result<Outcome, Error> {
    match cmd {
        Command::GenTseitin { graph, output } => {
            let inst = parse_graph(&read(&graph)?)?;
            let k = tseitin_polytope(&inst)?;
            let t = tseitin_sp_refutation(&inst)?;
            write(&with_ext(&output, ".ineq"), &format_system(&k))?;
            write(&with_ext(&output, ".proof"), &format_enumerative(&t))?;
            log.push(format!("vertices {} edges {} max_degree {}", inst.num_vertices(), inst.edges().len(), inst.max_degree()));
            log.extend(stats_lines(&proof_stats(&t)));
            Ok(Outcome::Valid(format!("wrote {}.ineq and .proof", output.display())))
        }
        Command::GenPn { n, output } => {
            emit(&output, &format_system(&pn_polytope(n)?), log)?;
            Ok(Outcome::Valid(format!("P_{n}")))
        }
        Command::GenQn { n, output } => {
            emit(&output, &format_system(&qn_polytope(n)?), log)?;
            let r = qn_split_refutation(n)?;
            for c in r.side_checks.iter().filter(|c| !c.valid) {
                log.push(format!("split cut y{} fails on side {:?}", c.index, c.side));
            }
            Ok(if r.valid { Outcome::Valid(format!("Q_{n} split refutation checked")) } else { Outcome::Invalid(format!("Q_{n} split refutation")) })
        }
        Command::ThinSegment { m, output } => {
            let (k, t) = thin_segment(&integer(&m, "M")?)?;
            write(&with_ext(&output, ".ineq"), &format_system(&k))?;
            write(&with_ext(&output, ".proof"), &format_branching(&t))?;
            Ok(Outcome::Valid(format!("wrote {}.ineq and .proof", output.display())))
        }
        Command::Recompile { system: s, proof, radius, output } => {
            let k = system(&s)?;
            let t = parse_branching(&read(&proof)?)?;
            let radius = radius.map(|r| integer(&r, "radius")).transpose()?;
            let r = recompile(&k, &t, radius.as_ref())?;
            emit(&output, &format_branching(&r.proof), log)?;
            log.push(format!("radius {} N {}", r.precision.radius, r.precision.n));
            for f in &r.fixups {
                log.push(format!("fixup {} cuts {}", f.path, f.cuts.len()));
            }
            log.extend(stats_lines(&proof_stats(&r.proof)));
            Ok(Outcome::Valid("recompiled proof verified".into()))
        }
        Command::EnumToCp { system: s, proof, output } => {
            let k = system(&s)?;
            let t = parse_enumerative(&read(&proof)?)?;
            let cuts = enum_to_cp(&k, &t)?;
            emit(&output, &format_cuts(&cuts), log)?;
            log.push(format!("tree {} cuts {}", t.len(), cuts.len()));
            Ok(Outcome::Valid("conversion done".into()))
        }
        Command::Verify { kind, system: s, proof } => {
            let k = system(&s)?;
            let text = read(&proof)?;
            match kind {
                Kind::Branching => Ok(report_outcome(verify_branching_proof(&k, &parse_branching(&text)?)?, log)),
                Kind::Enumerative => Ok(report_outcome(verify_enumerative_proof(&k, &parse_enumerative(&text)?)?, log)),
                Kind::Certified => Ok(if verify_certified_proof(&k, &parse_branching(&text)?)? {
                    Outcome::Valid("all certificates check".into())
                } else {
                    Outcome::Invalid("a leaf certificate does not check".into())
                }),
                Kind::Cp => {
                    let cuts = parse_cuts(&text)?;
                    Ok(match find_point(&apply_cg_list(&k, &cuts)?) {
                        Err(_) => Outcome::Valid(format!("{} cuts empty the set", cuts.len())),
                        Ok(x) => Outcome::Invalid(format!("point {x} survives all cuts")),
                    })
                }
            }
        }
        Command::Certify { system: s, proof, output } => {
            let k = system(&s)?;
            let t = certify(&k, &parse_branching(&read(&proof)?)?)?;
            emit(&output, &format_branching(&t), log)?;
            let sizes = t.certificate_bit_sizes();
            log.push(format!("certificates {} total_bit_size {}", sizes.len(), sizes.iter().sum::<u64>()));
            Ok(Outcome::Valid("certified".into()))
        }
        Command::Stats { proof } => {
            let text = read(&proof)?;
            let s = if text.trim_start().starts_with('(') {
                match parse_proof(&text)? {
                    ProofFile::Branching(t) => proof_stats(&t),
                    ProofFile::Enumerative(t) => proof_stats(&t),
                }
            } else {
                proof_stats(&parse_cuts(&text)?[..])
            };
            log.extend(stats_lines(&s));
            Ok(Outcome::Valid("stats".into()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let to_stdout = matches!(
        &cli.command,
        Command::GenPn { output: Some(_), .. }
            | Command::GenQn { output: Some(_), .. }
            | Command::Recompile { output: Some(_), .. }
            | Command::EnumToCp { output: Some(_), .. }
            | Command::Certify { output: Some(_), .. }
            | Command::GenTseitin { .. }
            | Command::ThinSegment { .. }
            | Command::Verify { .. }
            | Command::Stats { .. }
    );
    let mut log = Vec::new();
    let outcome = run(cli.command, &mut log);
    let (line, code) = match outcome {
        Ok(Outcome::Valid(m)) => (format!("RESULT valid {m}"), 0),
        Ok(Outcome::Invalid(m)) => (format!("RESULT invalid {m}"), 1),
        Err(e @ (Error::InvalidProof(_) | Error::InvalidCertificate(_))) => (format!("RESULT invalid {e}"), 1),
        Err(e) => (format!("RESULT error {e}"), 2),
    };
    log.push(line);
    for l in log {
        if to_stdout {
            println!("{l}");
        } else {
            eprintln!("{l}");
        }
    }
    ExitCode::from(code)
}
