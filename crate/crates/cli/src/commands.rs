//! Subcommand definitions and their implementations.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bfly_core::catalog::{base_groups, coefficient_groups, standard_catalog};
use bfly_core::cmodule::CModuleMorphism;
use bfly_core::group::{find_isomorphisms, DEFAULT_ORDER_CAP};
use bfly_core::h2::{baer_sum, pi1_h2, pushforward_extension, unit_extension};
use bfly_core::h3::{
    butterfly_beta, compose_butterflies, find_butterfly_iso, identity_butterfly, inverse_witness, inverse_xext,
    morphism_to_butterfly, phi, pushforward_xext, tensor_xext, CrossedExtension,
};
use bfly_core::oracle::{
    class_of_crossed_extension, cocycle_of_extension, extension_from_2cocycle, z1, Cohomology, SectionChoice,
};

use crate::doc::{self, DocError, Document};
use crate::report::Report;
use crate::suites::{self, Options, SuiteReport, SUITES};
use crate::workspace::{save_in, Workspace};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "bfly", version, about = "Extensions, crossed extensions and butterflies of small finite groups")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized section choices; the least section is used when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest group order accepted when loading documents.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: usize,
    /// Directory of named documents.
    #[arg(long, global = true, env = "BFLY_WORKSPACE")]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a document and check every constructor invariant.
    Validate { doc: String },
    /// Abelian extensions.
    #[command(subcommand)]
    H2(H2Command),
    /// Crossed extensions.
    #[command(subcommand)]
    H3(H3Command),
    /// Butterflies between crossed extensions.
    #[command(subcommand)]
    Butterfly(ButterflyCommand),
    /// Cohomology computed from the bar complex.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// The standard catalog of small examples.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
pub struct Output {
    /// Save the result into the workspace under this name instead of printing it.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum H2Command {
    /// The split extension of a module.
    Unit {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        output: Output,
    },
    /// The Baer sum of two extensions of the same module.
    BaerSum {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        output: Output,
    },
    /// Push an extension forward along a module morphism.
    Pushforward {
        #[arg(long)]
        extension: String,
        #[arg(long = "map")]
        map: String,
        #[command(flatten)]
        output: Output,
    },
    /// Automorphisms of the split extension against crossed homomorphisms.
    Pi1 {
        #[arg(long)]
        module: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum H3Command {
    /// The fibrewise tensor of two crossed extensions.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        output: Output,
    },
    /// The crossed extension with negated kernel arrow.
    Inverse {
        #[arg(long)]
        xext: String,
        #[command(flatten)]
        output: Output,
    },
    /// The unit crossed extension of a module.
    Unit {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        output: Output,
    },
    /// Push a crossed extension forward along a module morphism.
    Pushforward {
        #[arg(long)]
        xext: String,
        #[arg(long = "map")]
        map: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum ButterflyCommand {
    /// `second . first`.
    Compose {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[command(flatten)]
        output: Output,
    },
    /// The module morphism induced by a butterfly.
    Beta {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// The identity butterfly of a crossed extension.
    Identity {
        #[arg(long)]
        xext: String,
        #[command(flatten)]
        output: Output,
    },
    /// Search for an isomorphism between two parallel butterflies.
    Iso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The reverse of a flippable butterfly.
    Flip {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// The butterfly of a morphism of crossed extensions.
    FromMorphism {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// The endo-butterfly of the unit attached to an abelian extension.
    Phi {
        #[arg(long)]
        extension: String,
        #[command(flatten)]
        output: Output,
    },
    /// The flippable butterfly from `E ⊗ E*` to the unit.
    InverseWitness {
        #[arg(long)]
        xext: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Cocycles, coboundaries and cohomology of a module in one degree.
    Cohomology {
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
    },
    /// The group of crossed homomorphisms.
    Z1 {
        #[arg(long)]
        module: String,
    },
    /// The cohomology class of a cocycle, an extension or a crossed extension.
    #[command(group = clap::ArgGroup::new("source").required(true).args(["cochain", "extension", "xext"]))]
    Class {
        #[arg(long)]
        cochain: Option<String>,
        /// Module of the cochain.
        #[arg(long, requires = "cochain")]
        module: Option<String>,
        #[arg(long)]
        extension: Option<String>,
        #[arg(long)]
        xext: Option<String>,
    },
    /// The extension of a 2-cocycle, or of the stored representative of a class.
    #[command(group = clap::ArgGroup::new("source").required(true).args(["cochain", "class"]))]
    Bridge {
        #[arg(long)]
        module: String,
        #[arg(long)]
        cochain: Option<String>,
        #[arg(long)]
        class: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Write every catalog document, with a manifest, into a directory.
    Generate {
        /// Target directory; defaults to the workspace.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced.
pub enum Outcome {
    Document(Document),
    Report(Report),
    /// Suite reports; the exit status follows their verdict.
    Verification(Vec<SuiteReport>),
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Io { .. } => CliError::Usage(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn emit(ws: &Workspace, output: &Output, doc: Document) -> Result<Outcome, CliError> {
    match &output.out {
        Some(name) => {
            let path = ws.save(name, &doc)?;
            Ok(Outcome::Report(Report::new().field("saved", path.display().to_string()).field("kind", doc.kind())))
        }
        None => Ok(Outcome::Document(doc)),
    }
}

fn map_report(beta: &CModuleMorphism) -> Report {
    Report::new()
        .field("map", json!(beta.hom().map()))
        .field("identity", beta.is_identity())
        .field("isomorphism", beta.is_isomorphism())
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ws = Workspace::new(cli.workspace.clone(), cli.cap);
    match &cli.command {
        Command::Validate { doc } => {
            let d = ws.load(doc)?;
            Ok(Outcome::Report(Report::new().field("valid", true).field("kind", d.kind()).field("document", doc.as_str())))
        }
        Command::H2(c) => h2(&ws, c),
        Command::H3(c) => h3(&ws, c),
        Command::Butterfly(c) => butterfly(&ws, c),
        Command::Oracle(c) => oracle(&ws, c, cli.seed),
        Command::Verify { suite } => verify(suite, cli.seed.unwrap_or(0)),
        Command::Catalog(CatalogCommand::Generate { out }) => {
            let dir = out.clone().unwrap_or_else(|| ws.output_dir());
            generate(&dir)
        }
    }
}

fn h2(ws: &Workspace, c: &H2Command) -> Result<Outcome, CliError> {
    match c {
        H2Command::Unit { module, output } => emit(ws, output, Document::Extension(unit_extension(&ws.load_module(module)?))),
        H2Command::BaerSum { left, right, output } => {
            let sum = baer_sum(&ws.load_extension(left)?, &ws.load_extension(right)?).map_err(invalid)?;
            emit(ws, output, Document::Extension(sum))
        }
        H2Command::Pushforward { extension, map, output } => {
            let pf = pushforward_extension(&ws.load_extension(extension)?, &ws.load_module_morphism(map)?).map_err(invalid)?;
            emit(ws, output, Document::Extension(pf.ext))
        }
        H2Command::Pi1 { module } => {
            let m = ws.load_module(module)?;
            let pi1 = pi1_h2(&m);
            let z = z1(&m).map_err(invalid)?;
            let iso = !find_isomorphisms(&pi1.group, &z, Some(1)).is_empty();
            Ok(Outcome::Report(
                Report::new()
                    .field("automorphisms", pi1.group.order())
                    .field("crossed_homomorphisms", z.order())
                    .field("isomorphic", iso),
            ))
        }
    }
}

fn h3(ws: &Workspace, c: &H3Command) -> Result<Outcome, CliError> {
    let doc = |x: CrossedExtension| Document::CrossedExtension(x);
    match c {
        H3Command::Tensor { left, right, output } => {
            let t = tensor_xext(&ws.load_crossed_extension(left)?, &ws.load_crossed_extension(right)?).map_err(invalid)?;
            emit(ws, output, doc(t))
        }
        H3Command::Inverse { xext, output } => emit(ws, output, doc(inverse_xext(&ws.load_crossed_extension(xext)?))),
        H3Command::Unit { module, output } => emit(ws, output, doc(CrossedExtension::unit(&ws.load_module(module)?))),
        H3Command::Pushforward { xext, map, output } => {
            let pf = pushforward_xext(&ws.load_crossed_extension(xext)?, &ws.load_module_morphism(map)?).map_err(invalid)?;
            emit(ws, output, doc(pf.ext))
        }
    }
}

fn butterfly(ws: &Workspace, c: &ButterflyCommand) -> Result<Outcome, CliError> {
    let doc = Document::Butterfly;
    match c {
        ButterflyCommand::Compose { first, second, output } => {
            let b = compose_butterflies(&ws.load_butterfly(second)?, &ws.load_butterfly(first)?).map_err(invalid)?;
            emit(ws, output, doc(b))
        }
        ButterflyCommand::Beta { input, output } => {
            let b = ws.load_butterfly(input)?;
            let beta = butterfly_beta(&b).clone();
            match output.out {
                Some(_) => emit(ws, output, Document::ModuleMorphism(beta)),
                None => Ok(Outcome::Report(map_report(&beta))),
            }
        }
        ButterflyCommand::Identity { xext, output } => emit(ws, output, doc(identity_butterfly(&ws.load_crossed_extension(xext)?))),
        ButterflyCommand::Iso { left, right } => {
            let iso = find_butterfly_iso(&ws.load_butterfly(left)?, &ws.load_butterfly(right)?);
            let mut report = Report::new().field("isomorphic", iso.is_some());
            if let Some(iso) = iso {
                report = report.field("sigma", json!(iso.sigma.map()));
            }
            Ok(Outcome::Report(report))
        }
        ButterflyCommand::Flip { input, output } => emit(ws, output, doc(ws.load_butterfly(input)?.flip().map_err(invalid)?)),
        ButterflyCommand::FromMorphism { input, output } => {
            emit(ws, output, doc(morphism_to_butterfly(&ws.load_xext_morphism(input)?)))
        }
        ButterflyCommand::Phi { extension, output } => emit(ws, output, doc(phi(&ws.load_extension(extension)?))),
        ButterflyCommand::InverseWitness { xext, output } => {
            emit(ws, output, doc(inverse_witness(&ws.load_crossed_extension(xext)?).map_err(invalid)?))
        }
    }
}

/// A JSON number when it fits, a decimal string otherwise.
fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn invariants(h: &Cohomology) -> Value {
    Value::Array(h.invariants().into_iter().map(big).collect())
}

fn cohomology_report(h: &Cohomology) -> Report {
    let mut r = Report::new().field("degree", h.degree()).field("order", big(h.order())).field("invariants", invariants(h));
    if let Some(z) = h.cocycle_order() {
        r = r.field("cocycles", big(z));
    }
    if let Some(b) = h.coboundary_order() {
        r = r.field("coboundaries", big(b));
    }
    r
}

fn class_report(h: &Cohomology, class: usize) -> Report {
    Report::new()
        .field("degree", h.degree())
        .field("class", class)
        .field("digits", json!(h.digits_of(class)))
        .field("invariants", invariants(h))
}

fn oracle(ws: &Workspace, c: &OracleCommand, seed: Option<u64>) -> Result<Outcome, CliError> {
    match c {
        OracleCommand::Cohomology { module, degree } => {
            let h = Cohomology::classes(&ws.load_module(module)?, *degree).map_err(invalid)?;
            Ok(Outcome::Report(cohomology_report(&h)))
        }
        OracleCommand::Z1 { module } => {
            let z = z1(&ws.load_module(module)?).map_err(invalid)?;
            Ok(Outcome::Report(Report::new().field("order", z.order())))
        }
        OracleCommand::Class { cochain, module, extension, xext } => {
            let (f, section) = if let Some(name) = cochain {
                let Some(m) = module else { return Err(CliError::Usage("--cochain needs --module".into())) };
                (doc::cochain(&ws.load_cochain(name)?, &ws.load_module(m)?)?, None)
            } else if let Some(name) = extension {
                (cocycle_of_extension(&ws.load_extension(name)?), None)
            } else if let Some(name) = xext {
                let choice = seed.map_or(SectionChoice::Least, SectionChoice::Seeded);
                (class_of_crossed_extension(&ws.load_crossed_extension(name)?, choice), seed)
            } else {
                return Err(CliError::Usage("one of --cochain, --extension, --xext is required".into()));
            };
            let h = Cohomology::classes(f.module(), f.degree()).map_err(invalid)?;
            let class = h.class_of(&f).map_err(invalid)?;
            let mut report = class_report(&h, class);
            if let Some(s) = section {
                report = report.field("section_seed", s);
            }
            Ok(Outcome::Report(report))
        }
        OracleCommand::Bridge { module, cochain, class, output } => {
            let m = ws.load_module(module)?;
            let f = match (cochain, class) {
                (Some(name), _) => doc::cochain(&ws.load_cochain(name)?, &m)?,
                (None, Some(x)) => Cohomology::classes(&m, 2).and_then(|h| h.representative(*x)).map_err(invalid)?,
                (None, None) => return Err(CliError::Usage("one of --cochain, --class is required".into())),
            };
            emit(ws, output, Document::Extension(extension_from_2cocycle(&f).map_err(invalid)?))
        }
    }
}

fn verify(suite: &str, seed: u64) -> Result<Outcome, CliError> {
    let opts = Options { seed };
    let reports = if suite == "all" {
        suites::run_all(&opts)
    } else {
        let known = SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", ");
        if suites::suite(suite).is_none() {
            return Err(CliError::Usage(format!("unknown suite `{suite}`; expected all, {known}")));
        }
        suites::run_suites(&[suite], &opts)
    }
    .map_err(invalid)?;
    Ok(Outcome::Verification(reports))
}

fn generate(dir: &std::path::Path) -> Result<Outcome, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let catalog = standard_catalog().map_err(invalid)?;
    let mut written = 0;
    let mut groups = base_groups();
    groups.extend(coefficient_groups().into_iter().filter(|g| !base_groups().iter().any(|b| b.name == g.name)));
    for g in groups {
        save_in(dir, &g.name, &Document::Group(g.value))?;
        written += 1;
    }
    for m in &catalog.modules {
        save_in(dir, &m.name, &Document::Module(m.value.clone()))?;
        written += 1;
    }
    for e in &catalog.extensions {
        save_in(dir, &e.name, &Document::Extension(e.value.clone()))?;
        written += 1;
    }
    for x in &catalog.crossed {
        save_in(dir, &x.name, &Document::CrossedExtension(x.value.clone()))?;
        written += 1;
    }
    Ok(Outcome::Report(
        Report::new()
            .field("directory", dir.display().to_string())
            .field("documents", written)
            .field("modules", catalog.modules.len())
            .field("extensions", catalog.extensions.len())
            .field("crossed_extensions", catalog.crossed.len()),
    ))
}
