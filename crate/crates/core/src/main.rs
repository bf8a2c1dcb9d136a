use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hlr::connections::{ConnectionChain, ConnectionKind, ConnectionPartition};
use hlr::construct::{check_morphism, fiber_product, twist_by_endomorphism, MorphismPair};
use hlr::decomposition::{decompose, format_class};
use hlr::fixtures;
use hlr::ideals::compute_j;
use hlr::io::{parse_matrix_arg, parse_rect_matrix_arg, parse_subspace_arg, read_algebra, write_algebra, IoError};
use hlr::model::{validate_hlr, Check, CheckStatus, HlrAlgebra, ModelError, Strictness};
use hlr::report::{subspace_value, Format, RunReport};
use hlr::roots::{
    cartan_or_declared, root_decomposition, verify_lemma_closures, weight_decomposition, RootDecomposition,
    RootError, RootFunctional, WeightDecomposition,
};
use hlr::structure::analyze;

#[derive(Parser)]
#[command(name = "hlr", version, about = "Exact computations on Hom-Leibniz-Rinehart algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Treat the representation axioms as failures rather than warnings.
    #[arg(long, global = true)]
    strict: bool,
    /// Write output to a file instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom.
    Validate { file: PathBuf },
    /// Root and weight decompositions, classes, class ideals and their claims.
    Decompose {
        file: PathBuf,
        /// Cartan subalgebra: `span{label, ...}` or JSON rows. Defaults to declared_H.
        #[arg(long)]
        cartan: Option<String>,
    },
    /// J-split, multiplicativity, tightness and the component theorems.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        cartan: Option<String>,
        /// Run the component theorems even when their hypotheses fail.
        #[arg(long)]
        force: bool,
    },
    /// Twist by an endomorphism pair; prints the new algebra file.
    Twist {
        file: PathBuf,
        /// Endomorphism of L: JSON rows, `diag(...)` or `id`.
        #[arg(long)]
        psi: String,
        /// Endomorphism of A.
        #[arg(long)]
        phi: String,
    },
    /// Fiber product of two algebras over the same A; prints the new algebra file.
    Fiber { file1: PathBuf, file2: PathBuf },
    /// Check a pair of maps (g on A, f on L) from the first algebra to the second.
    Morphism {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Root and weight connection classes with witnesses.
    Connect {
        file: PathBuf,
        #[arg(long)]
        cartan: Option<String>,
    },
    /// The ideal J.
    J { file: PathBuf },
    /// Print a bundled fixture as an algebra file.
    Fixture {
        /// Fixture name; omit to list them.
        name: Option<String>,
    },
}

enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Math(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NoCartan | RootError::AmbientMismatch { .. } => Failure::Input(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

fn model_failure(e: ModelError) -> Failure {
    match e {
        ModelError::DimensionMismatch { .. } => Failure::Input(e.to_string()),
        other => Failure::Math(other.to_string()),
    }
}

/// Either a rendered report with its verdict, or raw file output.
enum Output {
    Report(RunReport),
    File(String),
}

fn strictness(cli: &Cli) -> Strictness {
    if cli.strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    }
}

fn load(report: &mut RunReport, path: &Path) -> Result<HlrAlgebra, Failure> {
    let (h, bytes) = read_algebra(path)?;
    report.input(&path.display().to_string(), &bytes);
    Ok(h)
}

/// A single summary check for validity; the caller stops when it fails.
fn validity(h: &HlrAlgebra, s: Strictness) -> Check {
    let r = validate_hlr(h, s);
    match r.first_failure() {
        None => Check::pass("valid", "the algebra satisfies every axiom"),
        Some(f) => Check::pass("valid", "the algebra satisfies every axiom")
            .with_status(CheckStatus::Fail)
            .with_note(format!("{} fails", f.id)),
    }
}

fn functionals(fs: &[RootFunctional]) -> Value {
    Value::Array(fs.iter().map(|f| Value::String(f.to_string())).collect())
}

fn classes(p: &ConnectionPartition) -> Value {
    Value::Array(p.classes.iter().map(|c| Value::String(format_class(c))).collect())
}

fn describe_chain(c: &ConnectionChain) -> String {
    match c.kind {
        ConnectionKind::Direct => format!("{} = {} {} psi^{}", c.to, c.sign, c.from, c.start_exponent),
        ConnectionKind::Chain => format!(
            "{} via [{}], start exponent {}, end sign {} exponent {}",
            c.to,
            c.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "),
            c.start_exponent,
            c.sign,
            c.end_exponent
        ),
    }
}

fn witnesses(p: &ConnectionPartition) -> Value {
    let m: serde_json::Map<String, Value> = p
        .direct
        .iter()
        .map(|((a, b), c)| (format!("{a} -> {b}"), Value::String(describe_chain(c))))
        .collect();
    Value::Object(m)
}

fn decompositions(
    h: &HlrAlgebra,
    cartan: Option<&str>,
    report: &mut RunReport,
) -> Result<Option<(RootDecomposition, WeightDecomposition)>, Failure> {
    let given = cartan.map(|c| parse_subspace_arg(c, h)).transpose()?;
    let hsub = cartan_or_declared(h, given.as_ref())?;
    let rd = root_decomposition(h, &hsub)?;
    let wd = weight_decomposition(h, &hsub)?;
    report.fact("H", subspace_value(&rd.h));
    report.fact("split", rd.split);
    if !rd.split {
        report.fact("remainder", subspace_value(&rd.remainder));
        report.claims.push(
            Check::pass("split", "L is the sum of H and the root spaces")
                .with_status(CheckStatus::Fail)
                .with_note(format!("not split: {} lies in no root space", rd.remainder)),
        );
        return Ok(None);
    }
    report.fact("gamma", functionals(&rd.gamma()));
    report.fact("lambda", functionals(&wd.lambda()));
    let spaces = |m: &std::collections::BTreeMap<RootFunctional, hlr::linalg::Subspace>| {
        let o: serde_json::Map<String, Value> = m.iter().map(|(f, s)| (f.to_string(), subspace_value(s))).collect();
        Value::Object(o)
    };
    report.fact("root_spaces", spaces(&rd.roots));
    report.fact("weight_spaces", spaces(&wd.weights));
    report.fact("A0", subspace_value(&wd.a0));
    Ok(Some((rd, wd)))
}

fn cmd_validate(cli: &Cli, file: &Path) -> Result<Output, Failure> {
    let mut report = RunReport::new("validate");
    let h = load(&mut report, file)?;
    report.fact("strictness", if cli.strict { "strict" } else { "lenient" });
    report.extend(&validate_hlr(&h, strictness(cli)));
    Ok(Output::Report(report))
}

fn cmd_decompose(cli: &Cli, file: &Path, cartan: Option<&str>) -> Result<Output, Failure> {
    let mut report = RunReport::new("decompose");
    let h = load(&mut report, file)?;
    let v = validity(&h, strictness(cli));
    let ok = v.holds();
    report.claims.push(v);
    if !ok {
        return Ok(Output::Report(report));
    }
    let Some((rd, wd)) = decompositions(&h, cartan, &mut report)? else {
        return Ok(Output::Report(report));
    };
    report.extend(&verify_lemma_closures(&h, &rd, &wd));
    let d = decompose(&h, &rd, &wd).map_err(|e| Failure::Math(e.to_string()))?;
    if rd.roots.is_empty() && rd.h.is_full() {
        report.fact("summary", "no roots; L = U = H");
    }
    report.fact("root_classes", classes(&d.root_partition));
    report.fact("weight_classes", classes(&d.weight_partition));
    let ideals: serde_json::Map<String, Value> = d
        .root_ideals
        .iter()
        .map(|i| {
            (
                format_class(&i.class_label),
                json!({"L0_part": subspace_value(&i.l0_part), "Lgamma_part": subspace_value(&i.lgamma_part), "total": subspace_value(&i.total)}),
            )
        })
        .collect();
    report.fact("root_ideals", Value::Object(ideals));
    let ideals: serde_json::Map<String, Value> = d
        .weight_ideals
        .iter()
        .map(|i| {
            (
                format_class(&i.class_label),
                json!({"A0_part": subspace_value(&i.a0_part), "Aalpha_part": subspace_value(&i.aalpha_part), "total": subspace_value(&i.total)}),
            )
        })
        .collect();
    report.fact("weight_ideals", Value::Object(ideals));
    if let Some(u) = &d.u {
        report.fact("U", subspace_value(u));
    }
    if let Some(v) = &d.v {
        report.fact("V", subspace_value(v));
    }
    report.extend(&d.claims);
    Ok(Output::Report(report))
}

fn cmd_analyze(cli: &Cli, file: &Path, cartan: Option<&str>, force: bool) -> Result<Output, Failure> {
    let mut report = RunReport::new("analyze");
    let h = load(&mut report, file)?;
    let v = validity(&h, strictness(cli));
    let ok = v.holds();
    report.claims.push(v);
    if !ok {
        return Ok(Output::Report(report));
    }
    let Some((rd, wd)) = decompositions(&h, cartan, &mut report)? else {
        return Ok(Output::Report(report));
    };
    let a = analyze(&h, &rd, &wd, force);
    let p = &a.profile;
    report.fact("gamma_J", functionals(&a.js.gamma_j));
    report.fact("gamma_notJ", functionals(&a.js.gamma_not_j));
    report.fact("J", subspace_value(a.js.j_space()));
    report.fact("maximal_length", p.maximal_length);
    report.fact("root_multiplicative", json!(p.root_multiplicative));
    report.fact("tight", json!(p.tight));
    report.fact("Z_Lie", subspace_value(&p.z_lie));
    report.fact("symmetric_lambda", p.symmetric_lambda);
    report.fact("symmetric_gamma_J", p.symmetric_gamma_j);
    report.fact("symmetric_gamma_notJ", p.symmetric_gamma_not_j);
    report.fact("notJ_classes", classes(&p.not_j_partition));
    report.fact("weight_classes", classes(&p.weight_partition));
    report.fact("ideal_search", a.search.as_str());
    report.fact(
        "ideals",
        Value::Array(a.ideals.iter().map(|i| Value::String(i.to_string())).collect()),
    );
    report.extend(&a.claims);
    Ok(Output::Report(report))
}

fn cmd_connect(cli: &Cli, file: &Path, cartan: Option<&str>) -> Result<Output, Failure> {
    let mut report = RunReport::new("connect");
    let h = load(&mut report, file)?;
    let v = validity(&h, strictness(cli));
    let ok = v.holds();
    report.claims.push(v);
    if !ok {
        return Ok(Output::Report(report));
    }
    let Some((rd, wd)) = decompositions(&h, cartan, &mut report)? else {
        return Ok(Output::Report(report));
    };
    let rp = hlr::connections::root_partition(&rd, &wd);
    let wp = hlr::connections::weight_partition(&wd, &rd);
    report.fact("root_classes", classes(&rp));
    report.fact("weight_classes", classes(&wp));
    report.fact("root_witnesses", witnesses(&rp));
    report.fact("weight_witnesses", witnesses(&wp));
    for (id, name, p) in [("connection.roots", "root", &rp), ("connection.weights", "weight", &wp)] {
        let ok = p.relation_symmetric && p.relation_transitive;
        let c = Check::pass(id, &format!("the {name} connection relation is an equivalence"));
        report.claims.push(if ok {
            c
        } else {
            c.with_status(CheckStatus::Fail).with_note(format!(
                "symmetric: {}; transitive: {}",
                p.relation_symmetric, p.relation_transitive
            ))
        });
    }
    Ok(Output::Report(report))
}

fn cmd_j(file: &Path) -> Result<Output, Failure> {
    let mut report = RunReport::new("j");
    let h = load(&mut report, file)?;
    let j = compute_j(&h);
    report.fact("J", subspace_value(j.space()));
    report.fact(
        "closure_rules",
        Value::Array(j.ideal.witness.rules_fired.iter().map(|r| Value::String(r.to_string())).collect()),
    );
    report.claims.push(j.left_annihilated);
    report.claims.push(j.right_annihilated);
    Ok(Output::Report(report))
}

fn cmd_twist(file: &Path, psi: &str, phi: &str) -> Result<Output, Failure> {
    let (h, _) = read_algebra(file)?;
    let f = parse_matrix_arg(psi, h.dim_l())?;
    let g = parse_matrix_arg(phi, h.dim_a())?;
    let t = twist_by_endomorphism(&h, &g, &f).map_err(model_failure)?;
    Ok(Output::File(write_algebra(&t)))
}

fn cmd_fiber(file1: &Path, file2: &Path) -> Result<Output, Failure> {
    let (h1, _) = read_algebra(file1)?;
    let (h2, _) = read_algebra(file2)?;
    let p = fiber_product(&h1, &h2).map_err(model_failure)?;
    Ok(Output::File(write_algebra(&p)))
}

fn cmd_morphism(file1: &Path, file2: &Path, g: &str, f: &str) -> Result<Output, Failure> {
    let mut report = RunReport::new("morphism");
    let src = load(&mut report, file1)?;
    let dst = load(&mut report, file2)?;
    let g = parse_rect_matrix_arg(g, dst.dim_a(), src.dim_a())?;
    let f = parse_rect_matrix_arg(f, dst.dim_l(), src.dim_l())?;
    let r = check_morphism(&MorphismPair { g, f }, &src, &dst).map_err(model_failure)?;
    report.extend(&r);
    Ok(Output::Report(report))
}

fn cmd_fixture(name: Option<&str>) -> Result<Output, Failure> {
    match name {
        None => {
            let names: Vec<&str> = fixtures::named().into_iter().map(|(n, _)| n).collect();
            Ok(Output::File(format!("{}\n", names.join("\n"))))
        }
        Some(n) => fixtures::by_name(n)
            .map(|h| Output::File(write_algebra(&h)))
            .ok_or_else(|| Failure::Input(format!("unknown fixture {n:?}"))),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli, file),
        Command::Decompose { file, cartan } => cmd_decompose(cli, file, cartan.as_deref()),
        Command::Analyze { file, cartan, force } => cmd_analyze(cli, file, cartan.as_deref(), *force),
        Command::Twist { file, psi, phi } => cmd_twist(file, psi, phi),
        Command::Fiber { file1, file2 } => cmd_fiber(file1, file2),
        Command::Morphism { file1, file2, g, f } => cmd_morphism(file1, file2, g, f),
        Command::Connect { file, cartan } => cmd_connect(cli, file, cartan.as_deref()),
        Command::J { file } => cmd_j(file),
        Command::Fixture { name } => cmd_fixture(name.as_deref()),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let result = run(&cli).and_then(|out| match out {
        Output::Report(r) => {
            emit(&cli, &r.render(format))?;
            Ok(r.exit_code())
        }
        Output::File(text) => {
            emit(&cli, &text)?;
            Ok(0)
        }
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
