use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use hopftwist::catalog;
use hopftwist::format::Document;
use hopftwist::report::{
    compare_with_expected, inline_point, parse_polys, validate_structure, Output, RunConfig, Session,
};
use hopftwist::{Error, Result};

/// Exact twists of coordinate rings of unipotent groups.
#[derive(Parser)]
#[command(name = "hopftwist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Group-definition file.
    #[arg(long = "group", value_name = "FILE", conflicts_with = "example")]
    file: Option<String>,
    /// Built-in example id.
    #[arg(long)]
    example: Option<String>,
    /// Degree bound (defaults to the working bound of the cocycle).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Also require central successive quotients and a matching declared Lie table.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the presentation, r-matrix and cocycle identity.
    Validate(Source),
    /// List the generator commutators of the twisted algebra.
    Present(Source),
    /// Presentation of the stratum of one double coset.
    Strata {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        subgroup: String,
        /// Point name from the file, or inline coordinates `F12=x,F24=x`.
        #[arg(long)]
        point: String,
    },
    /// Commutator ideal, Gamma, and the comparison with C0.
    Gamma(Source),
    /// Points g with J^g = J, up to the degree bound.
    C0(Source),
    /// R-form axioms and values on primitive elements.
    RformCheck(Source),
    /// Reduced Groebner basis (graded lexicographic with later variables larger; parameters last).
    Gb(PolyArgs),
    /// Eliminate variables from an ideal.
    Eliminate {
        #[command(flatten)]
        polys: PolyArgs,
        /// Comma-separated variables to eliminate.
        #[arg(long)]
        drop: String,
    },
    /// Full report; for a built-in example it is compared with the expected one.
    Report(Source),
    /// Print the canonical group file of an input.
    Export(Source),
    /// List the built-in examples.
    Catalog,
}

#[derive(Args)]
struct PolyArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    vars: String,
    /// Comma-separated parameter names.
    #[arg(long, default_value = "")]
    params: String,
    /// Generators of the ideal.
    #[arg(required = true)]
    polys: Vec<String>,
}

fn names(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn document(src: &Source) -> Result<Arc<Document>> {
    match (&src.file, &src.example) {
        (Some(f), None) => {
            let text = std::fs::read_to_string(f).map_err(|e| Error::Input(format!("{f}: {e}")))?;
            Ok(Arc::new(Document::parse(&text)?))
        }
        (None, Some(id)) => catalog::load(id),
        _ => Err(Error::Input("give either --group FILE or --example ID".into())),
    }
}

fn session(src: &Source) -> Result<Session> {
    let cfg = RunConfig { max_degree: src.max_degree, strict: src.strict };
    Session::new(document(src)?, cfg)
}

fn emit(o: Output) -> ExitCode {
    print!("{}", o.text);
    if o.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    Ok(match cli.command {
        Command::Validate(src) => {
            let doc = document(&src)?;
            let cfg = RunConfig { max_degree: src.max_degree, strict: src.strict };
            match Session::new(doc.clone(), cfg) {
                Ok(s) => {
                    let mut o = s.header();
                    let v = s.validate()?;
                    o.text.push_str(&v.text);
                    o.passed = v.passed;
                    emit(o)
                }
                Err(e) => {
                    let mut o = validate_structure(&doc, src.strict);
                    o.text.push_str(&format!("FAIL cocycle construction: {e}\n"));
                    o.passed = false;
                    emit(o)
                }
            }
        }
        Command::Present(src) => emit(session(&src)?.present()?),
        Command::Strata { source, subgroup, point } => {
            let s = session(&source)?;
            let main = s.main();
            let (label, pt) = match main.point(&point) {
                Ok(p) => (point.clone(), p.clone()),
                Err(_) => (point.clone(), inline_point(main, &point)?),
            };
            emit(s.stratum(&subgroup, &label, &pt)?)
        }
        Command::Gamma(src) => emit(session(&src)?.gamma()?),
        Command::C0(src) => emit(session(&src)?.c0()?),
        Command::RformCheck(src) => emit(session(&src)?.rform()?),
        Command::Gb(p) => {
            let (_, ideal) = parse_polys(&names(&p.vars), &names(&p.params), &p.polys)?;
            for g in ideal.groebner() {
                println!("{g}");
            }
            ExitCode::SUCCESS
        }
        Command::Eliminate { polys: p, drop } => {
            let (_, ideal) = parse_polys(&names(&p.vars), &names(&p.params), &p.polys)?;
            let drop = names(&drop);
            let refs: Vec<&str> = drop.iter().map(String::as_str).collect();
            let out = ideal.eliminate(&refs)?;
            for g in out.groebner() {
                println!("{g}");
            }
            ExitCode::SUCCESS
        }
        Command::Report(src) => {
            let s = session(&src)?;
            let mut o = s.full()?;
            if let (Some(id), None) = (&src.example, src.max_degree) {
                compare_with_expected(catalog::entry(id)?.expected, &mut o);
            }
            emit(o)
        }
        Command::Export(src) => {
            print!("{}", document(&src)?.render());
            ExitCode::SUCCESS
        }
        Command::Catalog => {
            for e in catalog::CATALOG {
                println!("{:<16} {}", e.id, e.summary);
            }
            ExitCode::SUCCESS
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Input(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
