use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ipskit::document::CertificateDocument;
use ipskit::exec::Strategy;
use ipskit::field::DEFAULT_PRIME;
use ipskit::gadget::{gadgetize, GadgetLedger};
use ipskit::instances::{
    default_lifted_beta, default_subset_sum_beta, functional_refutation, gadgeted_ry_circuit, lifted_subset_sum,
    mnc_instance, ry_circuit, subset_sum, InstanceBundle, Provenance, INTERVAL_CONVENTIONS,
};
use ipskit::rank::{balanced_partitions, exact_rank, fullrank_witness, rank_matrix, Partition};
use ipskit::rational::{format_compact, parse_rational};
use ipskit::refute::{assemble_refutation_with_shift, AxiomForm};
use ipskit::verify::{boolean_image, verify_exact, verify_pit, PitConfig};
use ipskit::{Circuit, Rational};

#[derive(Debug, Parser)]
#[command(name = "ipskit", version, about = "Algebraic circuits, gadget transforms and refutation certificates")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a circuit and print its canonical form.
    Parse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the expanded polynomial instead of the circuit.
        #[arg(long)]
        expand: bool,
        /// Print size, depth and content hash to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Flatten a circuit into alternating addition and multiplication layers.
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every addition gate of a formula by its gadgetized form.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        ledger: PathBuf,
    },
    /// Build a refutation certificate for `f' + shift`.
    Refute {
        #[arg(long)]
        input: PathBuf,
        /// Ledger from `transform`; required when the circuit has addition gates.
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[arg(long, default_value = "-2", allow_hyphen_values = true, value_parser = rational)]
        shift: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate. Exits 0 when verified, 1 when refuted, 2 on error.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Exact)]
        mode: VerifyMode,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Values of a circuit on the Boolean cube, as `value,count` CSV.
    Image {
        #[arg(long)]
        input: PathBuf,
        /// Enumerate exhaustively up to this many variables, otherwise sample.
        #[arg(long, default_value_t = 24)]
        limit: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an explicit instance family.
    Instance {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Target sum for the subset-sum families.
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        beta: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the refutation circuit, for families that have one.
        #[arg(long)]
        refutation: Option<PathBuf>,
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Partition rank of the gadgeted hard polynomial, as CSV.
    Rank {
        #[arg(long)]
        n: u32,
        /// A partition such as `u1,u3|u2,u4`.
        #[arg(long, conflicts_with = "all")]
        partition: Option<Partition>,
        /// Sweep every balanced partition.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = WitnessSource::Auto)]
        witness: WitnessSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Functional refutation `(1 + f)/2` of `2 - f` for a 0/1-valued circuit.
    Funcref {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        refutation: Option<PathBuf>,
        /// Check the identity modulo the Boolean axioms by expansion.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Exact,
    Pit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ry,
    GadgetedRy,
    Mnc,
    SubsetSum,
    LiftedSubsetSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessSource {
    Auto,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    Circuit::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn form_circuit(form: &AxiomForm) -> Circuit {
    match form {
        AxiomForm::Circuit(c) => c.clone(),
        AxiomForm::Poly(p) => Circuit::from_poly(p),
    }
}

fn instance(family: Family, n: u32, beta: Option<Rational>) -> Result<(Circuit, Option<Circuit>, Provenance)> {
    let bundle = |b: InstanceBundle| (form_circuit(&b.instance), Some(form_circuit(&b.refutation)), b.provenance);
    let params = [("n", n.to_string())];
    Ok(match family {
        Family::Ry => (ry_circuit(n)?, None, Provenance::new("ry", &params, &INTERVAL_CONVENTIONS)),
        Family::GadgetedRy => {
            (gadgeted_ry_circuit(n)?.0, None, Provenance::new("gadgeted-ry", &params, &INTERVAL_CONVENTIONS))
        }
        Family::Mnc => bundle(mnc_instance(n)?),
        Family::SubsetSum => bundle(subset_sum(n, &beta.unwrap_or_else(|| default_subset_sum_beta(n)))?),
        Family::LiftedSubsetSum => bundle(lifted_subset_sum(n, &beta.unwrap_or_else(|| default_lifted_beta(n)))?),
    })
}

/// One CSV field, quoted when it contains a separator.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Parse { input, out, expand, stats } => {
            let c = read_circuit(&input)?;
            if stats {
                let m = c.measure();
                eprintln!("gates {} size {} depth {} hash {}", c.len(), m.size, m.depth, c.content_hash());
            }
            let text = if expand { format!("{}\n", c.expand()?) } else { c.to_text() };
            emit(out.as_deref(), &text)?;
        }
        Command::Normalize { input, out } => {
            emit(out.as_deref(), &read_circuit(&input)?.normalize_layered().to_text())?;
        }
        Command::Transform { input, out, ledger } => {
            let (cp, l) = gadgetize(&read_circuit(&input)?)?;
            emit(out.as_deref(), &cp.to_text())?;
            let mut text = l.to_json();
            text.push('\n');
            emit(Some(&ledger), &text)?;
        }
        Command::Refute { input, ledger, shift, out } => {
            let c = read_circuit(&input)?;
            let l = match ledger {
                Some(p) => GadgetLedger::from_json(&read(&p)?).with_context(|| format!("parsing {}", p.display()))?,
                None if c.gates().iter().any(|g| g.is_add()) => {
                    bail!("{} has addition gates; pass the ledger written by `transform`", input.display())
                }
                None => GadgetLedger::default(),
            };
            let cert = assemble_refutation_with_shift(&c, &l, &shift)?;
            emit(out.as_deref(), &CertificateDocument::from_certificate(&cert).to_json())?;
        }
        Command::Verify { cert, mode, trials, seed, prime, report } => {
            let doc = CertificateDocument::from_json(&read(&cert)?)?;
            let cert = doc.to_certificate()?;
            let r = match mode {
                VerifyMode::Exact => verify_exact(&cert),
                VerifyMode::Pit => verify_pit(&cert, &PitConfig { prime, trials, seed }),
            };
            emit(report.as_deref(), &json(&r))?;
            return Ok(r.exit_code() as u8);
        }
        Command::Image { input, limit, samples, seed, out } => {
            let c = read_circuit(&input)?;
            let r = boolean_image(&c, limit, samples, seed);
            let mut text = String::from("value,count\n");
            for (v, n) in &r.counts {
                text.push_str(&format!("{},{n}\n", format_compact(v)));
            }
            emit(out.as_deref(), &text)?;
            eprintln!(
                "{} {} points over {} variables",
                if r.exhaustive { "enumerated" } else { "sampled" },
                r.points,
                r.variables
            );
        }
        Command::Instance { family, n, beta, out, refutation, provenance } => {
            let (c, g, prov) = instance(family, n, beta)?;
            emit(out.as_deref(), &c.to_text())?;
            match (refutation, g) {
                (Some(p), Some(g)) => emit(Some(&p), &g.to_text())?,
                (Some(_), None) => bail!("this family has no refutation"),
                _ => {}
            }
            if let Some(p) = provenance {
                emit(Some(&p), &json(&prov))?;
            }
        }
        Command::Rank { n, partition, all, witness: WitnessSource::Auto, out } => {
            let parts = match (partition, all) {
                (Some(p), _) => vec![p],
                (None, true) => balanced_partitions(n),
                (None, false) => bail!("pass --partition or --all"),
            };
            let (p_circuit, _) = gadgeted_ry_circuit(n)?;
            let rows = ipskit::exec::map_slice(Strategy::Parallel, &parts, |p| -> Result<String> {
                let w = fullrank_witness(n, p)?;
                let f = p_circuit.partial_evaluate(&w).expand()?;
                let rank = exact_rank(&rank_matrix(&f, p)?);
                let wtext: Vec<String> = w.iter().map(|(v, x)| format!("{v}={}", format_compact(x))).collect();
                Ok(format!("{},{rank},{}\n", field(&p.to_string()), field(&wtext.join(";"))))
            });
            let mut text = String::from("partition,rank,witness\n");
            for row in rows {
                text.push_str(&row?);
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Funcref { input, out, refutation, check } => {
            let f = read_circuit(&input)?;
            let (inst, g) = functional_refutation(&f);
            if check {
                let defect =
                    (&(&inst.expand()? * &g.expand()?).multilinear_reduce() - &ipskit::SparsePoly::one()).is_zero();
                if !defect {
                    bail!("refutation · instance is not 1 modulo the Boolean axioms; is the circuit 0/1-valued?");
                }
            }
            emit(out.as_deref(), &inst.to_text())?;
            if let Some(p) = refutation {
                emit(Some(&p), &g.to_text())?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
