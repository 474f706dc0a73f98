//! `mundici`: run the library's checks on structures described in JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mundici::carrier::{Budget, Carrier};
use mundici::functors::{check_congruence, check_strong_unit, gamma, l_group, phi, psi};
use mundici::goodseq::{check_cancellation, check_monoid_laws};
use mundici::lgroup::{check_lu_axioms, check_torsion_free, LGroup, TORSION_MULTIPLIER};
use mundici::logic::{
    check_interpretation_soundness, check_sequent, guard, interpret, mv_axiom_sequents, parse_sequent, parse_sequents,
    LuModel, MvModel, Sequent,
};
use mundici::mv::{check_mv_axioms, check_mv_order, MvAlgebra};
use mundici::sheaf::{
    check_gamma_sections, check_l_sheaf, check_mv_sheaf, check_phi_sheaf, check_psi_sheaf, check_sheaf_naturality,
    gamma_sheaf, ContinuousMap, Sheaf,
};
use mundici::spec::{self, AlgebraSpec, AnySheaf, GroupSpec, MapSpec, SheafSpec, Structure, StructureSpec};
use mundici::zoo::{run_zoo, RunReport};
use mundici::{LGroupU, Report};

const LIST_LIMIT: usize = 64;

#[derive(Parser)]
#[command(name = "mundici", version, about = "Check MV-algebras, ℓ-groups with unit, and the equivalence between them")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Samples per check on infinite carriers
    #[arg(long, global = true, default_value_t = 200)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Longest good sequence enumerated
    #[arg(long = "max-len", global = true, default_value_t = 3)]
    max_len: usize,
}

#[derive(Subcommand)]
enum Command {
    /// MV axioms and the derived order of an algebra
    MvAxioms { file: PathBuf },
    /// ℓ-group axioms 1–14 and torsion-freeness of a group
    LuAxioms { file: PathBuf },
    /// Γ of a group: its unit interval as an MV-algebra
    Gamma { file: PathBuf },
    /// L of an algebra: the group of good-sequence differences
    Lfunctor { file: PathBuf },
    /// φ: A ≅ ΓL(A) or ψ: G ≅ LΓ(G)
    Roundtrip {
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Validity of sequents in a model
    Sequent {
        #[arg(long)]
        model: PathBuf,
        /// A file with one sequent per line
        #[arg(long)]
        file: Option<PathBuf>,
        sequents: Vec<String>,
    },
    /// Print I(σ) and its guarded form
    Interpret { sequents: Vec<String> },
    /// σ in Γ(G) agrees with guard(I(σ)) in G; the MV axioms by default
    Soundness {
        #[arg(long)]
        group: PathBuf,
        sequents: Vec<String>,
    },
    /// Stalkwise φ or ψ on a sheaf, compatible with restrictions
    SheafRoundtrip { file: PathBuf },
    /// Naturality of the sheaf equivalence along a monotone map
    SheafNaturality {
        /// The map; the identity when omitted
        #[arg(long)]
        map: Option<PathBuf>,
        file: PathBuf,
    },
    /// Every check on the built-in structures
    Zoo,
}

enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct Interpretation {
    sequent: String,
    interpreted: String,
    guarded: String,
}

enum Outcome {
    Run(RunReport),
    Interpretations(Vec<Interpretation>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::new(cli.opts.budget, cli.opts.seed, cli.opts.max_len);
    match run(&cli.command, &budget) {
        Ok(out) => emit(out, cli.opts.json),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit(out: Outcome, json: bool) -> ExitCode {
    match out {
        Outcome::Run(run) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&run).expect("reports serialize"));
            } else {
                for r in &run.reports {
                    println!("{r}");
                }
                for iso in &run.isos {
                    println!("iso: {} ({} instances)", iso.iso, iso.checked);
                }
                let passed = run.reports.iter().filter(|r| r.is_pass()).count();
                println!("{passed}/{} checks passed", run.reports.len());
            }
            if run.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Outcome::Interpretations(items) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&items).expect("terms serialize"));
            } else {
                for i in &items {
                    println!("σ:        {}\nI(σ):     {}\nguarded:  {}", i.sequent, i.interpreted, i.guarded);
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn algebra(path: &Path) -> Result<MvAlgebra, CliError> {
    spec::parse::<AlgebraSpec>(&read(path)?).and_then(|s| s.build()).map_err(CliError::usage)
}

fn group(path: &Path) -> Result<LGroupU, CliError> {
    spec::parse::<GroupSpec>(&read(path)?).and_then(|s| s.build()).map_err(CliError::usage)
}

fn sequents(args: &[String], file: Option<&Path>) -> Result<Vec<Sequent>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = file {
        let parsed = parse_sequents(&read(path)?)
            .map_err(|(line, e)| CliError::Usage(format!("{}:{line}: {e}", path.display())))?;
        out.extend(parsed);
    }
    for a in args {
        out.push(parse_sequent(a).map_err(|e| CliError::Usage(format!("{a:?}: {e}")))?);
    }
    Ok(out)
}

fn run(command: &Command, b: &Budget) -> Result<Outcome, CliError> {
    let report = |name: &str, reports: Vec<Report>| Ok(Outcome::Run(RunReport::new(name, b, reports)));
    match command {
        Command::MvAxioms { file } => {
            let a = algebra(file)?;
            report("mv-axioms", vec![check_mv_axioms(&a, b), check_mv_order(&a, b)])
        }
        Command::LuAxioms { file } => {
            let g = group(file)?;
            report("lu-axioms", vec![check_lu_axioms(&g, b), check_torsion_free(&g, b, TORSION_MULTIPLIER)])
        }
        Command::Gamma { file } => {
            let g = group(file)?;
            let gam = gamma(g.clone());
            if let Some(elems) = g.interval_elements().filter(|e| e.len() <= LIST_LIMIT) {
                let shown: Vec<String> = elems.iter().map(|x| g.render(x)).collect();
                eprintln!("{} = {{{}}}", gam.describe(), shown.join(", "));
            }
            report("gamma", vec![check_mv_axioms(&gam, b)])
        }
        Command::Lfunctor { file } => {
            let a = algebra(file)?;
            let l = l_group(a.clone(), b.max_len);
            report(
                "lfunctor",
                vec![
                    check_monoid_laws(&a, b),
                    check_cancellation(&a, b),
                    check_congruence(&a, b),
                    check_lu_axioms(&l, b),
                    check_strong_unit(&a, b),
                ],
            )
        }
        Command::Roundtrip { algebra: Some(path), .. } => {
            let w = phi(&algebra(path)?, b);
            let mut run = RunReport::new("roundtrip", b, vec![w.report.clone()]);
            run.isos.push(w.summary());
            Ok(Outcome::Run(run))
        }
        Command::Roundtrip { group: Some(path), .. } => {
            let w = psi(&group(path)?, b);
            let mut run = RunReport::new("roundtrip", b, vec![w.report.clone()]);
            run.isos.push(w.summary());
            Ok(Outcome::Run(run))
        }
        Command::Roundtrip { .. } => Err(CliError::usage("one of --algebra or --group is required")),
        Command::Sequent { model, file, sequents: args } => {
            let ss = sequents(args, file.as_deref())?;
            if ss.is_empty() {
                return Err(CliError::usage("no sequents given"));
            }
            let m = spec::parse::<StructureSpec>(&read(model)?).and_then(|s| s.build()).map_err(CliError::usage)?;
            let reports = ss
                .iter()
                .map(|s| match &m {
                    Structure::Algebra(a) => check_sequent(&MvModel(a), s, b),
                    Structure::Group(g) => check_sequent(&LuModel(g), s, b),
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            report("sequent", reports)
        }
        Command::Interpret { sequents: args } => {
            let ss = sequents(args, None)?;
            if ss.is_empty() {
                return Err(CliError::usage("no sequents given"));
            }
            let items = ss
                .iter()
                .map(|s| {
                    let i = interpret(s).map_err(CliError::usage)?;
                    Ok(Interpretation { sequent: s.to_string(), interpreted: i.to_string(), guarded: guard(&i).to_string() })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Outcome::Interpretations(items))
        }
        Command::Soundness { group: path, sequents: args } => {
            let g = group(path)?;
            let mut ss = sequents(args, None)?;
            if ss.is_empty() {
                ss = mv_axiom_sequents();
            }
            let reports = ss
                .iter()
                .map(|s| check_interpretation_soundness(&g, s, b).map(|r| r.agreement))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            report("soundness", reports)
        }
        Command::SheafRoundtrip { file } => match load_sheaf(file)? {
            AnySheaf::Mv(f) => report("sheaf-roundtrip", vec![check_mv_sheaf(&f, b), check_phi_sheaf(&f, b)]),
            AnySheaf::L(f) => report(
                "sheaf-roundtrip",
                vec![check_l_sheaf(&f, b), check_psi_sheaf(&f, b), check_gamma_sections(&f, b)],
            ),
        },
        Command::SheafNaturality { map, file } => {
            let sheaf = load_sheaf(file)?;
            let space = match &sheaf {
                AnySheaf::Mv(f) => f.space.clone(),
                AnySheaf::L(f) => f.space.clone(),
            };
            let f = match map {
                Some(path) => {
                    spec::parse::<MapSpec>(&read(path)?).and_then(|m| m.build(&space)).map_err(CliError::usage)?
                }
                None => ContinuousMap::identity(space),
            };
            let r = match sheaf {
                AnySheaf::Mv(g) => check_sheaf_naturality(&f, &g, b),
                AnySheaf::L(g) => check_sheaf_naturality(&f, &gamma_of(&g, b)?, b),
            };
            report("sheaf-naturality", vec![r])
        }
        Command::Zoo => Ok(Outcome::Run(run_zoo(b))),
    }
}

fn load_sheaf(path: &Path) -> Result<AnySheaf, CliError> {
    spec::parse::<SheafSpec>(&read(path)?).and_then(|s| s.build()).map_err(CliError::usage)
}

fn gamma_of<G: LGroup + Clone + Send + Sync + 'static>(
    f: &Sheaf<G>,
    b: &Budget,
) -> Result<Sheaf<mundici::Gamma<G>>, CliError> {
    gamma_sheaf(f, b).map_err(|e| CliError::Internal(e.to_string()))
}
