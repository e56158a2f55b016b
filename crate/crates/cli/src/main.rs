use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nhopf::bases::Bases;
use nhopf::hopf::{format_tensor, tensor_to_json};
use nhopf::lattice::{EasterlyWind, HasseFormat};
use nhopf::realization::{format_polynomial, polynomial_to_json, realize, RelatedAlphabet};
use nhopf::special::fdb::FdB;
use nhopf::special::wqsym::wqsym_expansion;
use nhopf::verify::run_suite;
use nhopf::{
    AssociativeOperad, Basis, Error, Forest, FreeOperad, HopfElement, MultisetOperad, NaturalHopf, Operad, Signature,
    TensorElement,
};

#[derive(Parser)]
#[command(name = "nhopf", version, about = "Natural Hopf algebras of operads")]
struct Cli {
    /// Signature, inline (`a:1,b:2,c:3`) or a file with one `name arity` per line.
    #[arg(long, global = true)]
    sig: Option<String>,
    /// Use the associative operad (elements `alpha_n`).
    #[arg(long = "as", global = true)]
    assoc: bool,
    /// Use the multiset operad over `--sig` (elements `{a,b}`).
    #[arg(long, global = true)]
    mas: bool,
    #[arg(long, global = true, default_value = "E")]
    basis: Basis,
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Alphabet file, `canonical:L,M` or `levels:BOUND`.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two basis elements (words separated by spaces).
    Product { x: String, y: String },
    Coproduct { x: String },
    Antipode { x: String },
    /// Re-expresses a basis element of `--basis` in the basis `--to`.
    Convert {
        x: String,
        #[arg(long)]
        to: Basis,
    },
    /// Hasse diagram of the interval of a word of generators.
    Lattice {
        #[arg(long)]
        word: String,
    },
    /// Polynomial realization over `--alphabet`.
    Realize { x: String },
    /// Expansion of `E_f` in the monomial basis of WQSym.
    ExpandWqsym { forest: String },
    Fdb {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        s: usize,
        #[command(subcommand)]
        action: FdbAction,
    },
    /// Runs the bounded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum FdbAction {
    /// Regroups a class sum by realized polynomial over the level alphabet.
    Expand {
        word: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e @ Error::Parse { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn load_signature(cli: &Cli) -> Result<Signature, Failure> {
    let Some(src) = &cli.sig else {
        return Err(Failure::Usage("this command needs --sig".into()));
    };
    if Path::new(src).is_file() {
        let text = std::fs::read_to_string(src).map_err(|e| Failure::Usage(format!("{src}: {e}")))?;
        Ok(Signature::parse_file(&text)?)
    } else {
        Ok(Signature::parse_inline(src)?)
    }
}

fn load_alphabet(cli: &Cli, sig: &Signature) -> Result<RelatedAlphabet, Failure> {
    let Some(src) = &cli.alphabet else {
        return Err(Failure::Usage("this command needs --alphabet".into()));
    };
    let number = |s: &str| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad number `{s}` in --alphabet")));
    if let Some(rest) = src.strip_prefix("canonical:") {
        let (l, m) = rest
            .split_once(',')
            .ok_or_else(|| Failure::Usage("expected canonical:L,M".into()))?;
        Ok(RelatedAlphabet::canonical(sig, number(l)?, number(m)?))
    } else if let Some(rest) = src.strip_prefix("levels:") {
        Ok(RelatedAlphabet::leveled(sig, number(rest)?, str::to_string))
    } else {
        let text = std::fs::read_to_string(src).map_err(|e| Failure::Usage(format!("{src}: {e}")))?;
        Ok(RelatedAlphabet::parse_json(&text)?)
    }
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Dot {
        return Err(Failure::Usage("--format dot is only available for `lattice`".into()));
    }
    Ok(())
}

fn emit_element<E: Ord + Clone + Display>(cli: &Cli, x: &HopfElement<E>) {
    match cli.format {
        Format::Json => println!("{}", pretty(&x.to_json())),
        _ => println!("{x}"),
    }
}

fn emit_tensor<E: Ord + Clone + Display>(cli: &Cli, t: &TensorElement<E>, basis: Basis) {
    match cli.format {
        Format::Json => println!("{}", pretty(&tensor_to_json(t, basis))),
        _ => println!("{}", format_tensor(t, basis)),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Product { .. } | Command::Coproduct { .. } | Command::Antipode { .. } => {
            no_dot(cli)?;
            if cli.assoc && cli.mas {
                return Err(Failure::Usage("--as and --mas are exclusive".into()));
            }
            if cli.assoc {
                algebra(cli, NaturalHopf::new(AssociativeOperad))
            } else if cli.mas {
                algebra(cli, NaturalHopf::new(MultisetOperad::new(load_signature(cli)?)?))
            } else {
                free_algebra(cli, load_signature(cli)?)
            }
        }
        Command::Convert { x, to } => {
            no_dot(cli)?;
            let sig = load_signature(cli)?;
            let bases = Bases::new(sig.clone())?;
            let x = single(&FreeOperad::new(sig), cli.basis, x)?;
            emit_element(cli, &bases.convert(&x, *to)?);
            Ok(true)
        }
        Command::Lattice { word } => lattice(cli, word),
        Command::Realize { x } => {
            no_dot(cli)?;
            let sig = load_signature(cli)?;
            let alphabet = load_alphabet(cli, &sig)?;
            let x = single(&FreeOperad::new(sig.clone()), cli.basis, x)?;
            let x = Bases::new(sig)?.convert(&x, Basis::E)?;
            let p = realize(&x, &alphabet)?;
            match cli.format {
                Format::Json => println!("{}", pretty(&polynomial_to_json(&p))),
                _ => println!("{}", format_polynomial(&p)),
            }
            Ok(true)
        }
        Command::ExpandWqsym { forest } => {
            no_dot(cli)?;
            let f = match &cli.sig {
                Some(_) => FreeOperad::new(load_signature(cli)?).parse_forest(forest)?,
                None => Forest::parse(forest)?,
            };
            let m = wqsym_expansion(&f);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    pretty(&json!({
                        "format_version": 1,
                        "forest": f.to_string(),
                        "terms": m.iter().map(|(u, c)| json!({"packed_word": u.to_string(), "coeff": c.to_string()})).collect::<Vec<_>>(),
                    }))
                ),
                _ => {
                    let parts: Vec<String> = m
                        .iter()
                        .map(|(u, c)| if c == &1.into() { format!("M({u})") } else { format!("{c} M({u})") })
                        .collect();
                    println!("{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") });
                }
            }
            Ok(true)
        }
        Command::Fdb { r, s, action: FdbAction::Expand { word, bound } } => {
            no_dot(cli)?;
            let fdb = FdB::new(*r, *s)?;
            let w = fdb.parse_word(word)?;
            let groups = fdb.expand(&w, *bound)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    pretty(&json!({
                        "format_version": 1,
                        "r": r,
                        "s": s,
                        "word": w.to_string(),
                        "bound": bound,
                        "class_size": groups.iter().map(|g| g.members.len()).sum::<usize>(),
                        "groups": groups.iter().map(|g| json!({
                            "coeff": g.coeff.to_string(),
                            "representative": g.representative.to_string(),
                            "members": g.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            "polynomial": polynomial_to_json(&g.polynomial)["monomials"],
                        })).collect::<Vec<_>>(),
                    }))
                ),
                _ => {
                    let parts: Vec<String> = groups
                        .iter()
                        .map(|g| if g.members.len() == 1 { format!("r(E({}))", g.representative) } else { format!("{} r(E({}))", g.coeff, g.representative) })
                        .collect();
                    println!("{}", parts.join(" + "));
                }
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            no_dot(cli)?;
            let reports = run_suite(suite, cli.max_degree)?;
            let ok = reports.iter().all(|r| r.passed());
            match cli.format {
                Format::Json => println!(
                    "{}",
                    pretty(&json!({
                        "format_version": 1,
                        "max_degree": cli.max_degree,
                        "passed": ok,
                        "suites": reports.iter().map(|r| json!({
                            "name": r.name,
                            "checks": r.checks,
                            "passed": r.passed(),
                            "failures": r.failures,
                            "notes": r.notes,
                        })).collect::<Vec<_>>(),
                    }))
                ),
                _ => {
                    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
                    for r in &reports {
                        let status = if r.passed() { "PASS" } else { "FAIL" };
                        println!("{status}  {:width$}  {} checks", r.name, r.checks);
                        for f in &r.failures {
                            println!("      {f}");
                        }
                    }
                }
            }
            Ok(ok)
        }
    }
}

fn single<O: Operad>(op: &O, basis: Basis, text: &str) -> Result<HopfElement<O::Elem>, Failure> {
    let w = op.parse_word(text)?;
    if w.len() != op.reduce_word(w.letters()).len() {
        return Err(Error::Domain(format!("`{text}` contains the unit; basis elements are reduced words")).into());
    }
    Ok(HopfElement::from_terms(basis, nhopf::LinComb::single(w)))
}

fn algebra<O: Operad>(cli: &Cli, h: NaturalHopf<O>) -> Outcome
where
    O::Elem: Display,
{
    if cli.basis != Basis::E {
        return Err(Error::Unsupported(format!("the {} basis exists only for free operads", cli.basis)).into());
    }
    match &cli.command {
        Command::Product { x, y } => {
            let x = single(h.operad(), Basis::E, x)?;
            emit_element(cli, &x.product(&single(h.operad(), Basis::E, y)?)?);
        }
        Command::Coproduct { x } => emit_tensor(cli, &h.coproduct(&single(h.operad(), Basis::E, x)?)?, Basis::E),
        Command::Antipode { x } => emit_element(cli, &h.antipode(&single(h.operad(), Basis::E, x)?)?),
        _ => unreachable!("dispatched by run"),
    }
    Ok(true)
}

/// Free operads support every basis: products use the basis formulas,
/// coproducts and antipodes are computed in `E` and converted back leg by leg.
fn free_algebra(cli: &Cli, sig: Signature) -> Outcome {
    let op = FreeOperad::new(sig.clone());
    let h = NaturalHopf::new(op.clone());
    let basis = cli.basis;
    if basis == Basis::E {
        return algebra(cli, h);
    }
    let bases = Bases::new(sig)?;
    match &cli.command {
        Command::Product { x, y } => {
            emit_element(cli, &bases.product(&single(&op, basis, x)?, &single(&op, basis, y)?)?);
        }
        Command::Coproduct { x } => {
            let e = bases.convert(&single(&op, basis, x)?, Basis::E)?;
            let mut out = TensorElement::zero();
            for ((a, b), c) in &h.coproduct(&e)? {
                let a = bases.convert(&HopfElement::from_terms(Basis::E, nhopf::LinComb::single(a.clone())), basis)?;
                let b = bases.convert(&HopfElement::from_terms(Basis::E, nhopf::LinComb::single(b.clone())), basis)?;
                for (u, cu) in a.terms() {
                    for (v, cv) in b.terms() {
                        out.add_term((u.clone(), v.clone()), c * cu * cv);
                    }
                }
            }
            emit_tensor(cli, &out, basis);
        }
        Command::Antipode { x } => {
            let e = bases.convert(&single(&op, basis, x)?, Basis::E)?;
            emit_element(cli, &bases.convert(&h.antipode(&e)?, basis)?);
        }
        _ => unreachable!("dispatched by run"),
    }
    Ok(true)
}

fn lattice(cli: &Cli, word: &str) -> Outcome {
    let sig = load_signature(cli)?;
    let wind = EasterlyWind::new(sig.clone())?;
    let letters: Vec<String> = if word.contains([' ', ',']) {
        word.split([' ', ',']).filter(|s| !s.is_empty()).map(str::to_string).collect()
    } else if word.chars().all(|c| sig.get(&c.to_string()).is_some()) {
        word.chars().map(String::from).collect()
    } else {
        vec![word.to_string()]
    };
    let names: Vec<&str> = letters.iter().map(String::as_str).collect();
    let interval = wind.interval(&names)?;
    match cli.format {
        Format::Dot => print!("{}", interval.hasse_export(HasseFormat::Dot)),
        Format::Json => println!("{}", interval.hasse_export(HasseFormat::Json)),
        Format::Text => {
            println!("interval of {}: {} elements, {} cover pairs", letters.join(" "), interval.len(), interval.cover_pairs().len());
            println!("bottom: {}", interval.bottom());
            println!("top: {}", interval.top());
            for (f, g) in interval.cover_pairs() {
                println!("{f} -> {g}");
            }
        }
    }
    Ok(true)
}
