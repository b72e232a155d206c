//! `groupoid`: build, validate, analyze and trivialize finite group-groupoids.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 bad parameters,
//! 3 a trivialization hypothesis fails, 4 search budget exceeded.

mod workspace;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use groupoid_core::constructions::{
    direct_product_gg, epimorphism_groupoid, group_pair_groupoid, modular_group_groupoid,
    null_group_groupoid, pair_groupoid, product_projections, single_unit_group_groupoid,
    trivial_group_groupoid,
};
use groupoid_core::group::{
    is_commutative, make_cyclic, make_direct_product, validate_group, FiniteGroup, GroupHom,
};
use groupoid_core::group_groupoid::{
    is_commutative_gg, validate_def23, validate_def24, validate_gg_morphism, GroupGroupoid,
};
use groupoid_core::groupoid::{
    alpha_fiber, beta_fiber, is_transitive, isotropy_bundle, isotropy_group,
    isotropy_transport, validate_groupoid,
};
use groupoid_core::json::{group_from_str, GroupGroupoidJson, GroupJson};
use groupoid_core::morphism::{validate_groupoid_morphism, GroupoidMorphism};
use groupoid_core::sweep::{error_name, verify_families, SweepConfig};
use groupoid_core::trivialization::{trivialize, DEFAULT_SEARCH_BUDGET};
use groupoid_core::{Error, FiniteGroupoid, ValidationReport};

use workspace::{Item, Loaded, StoredMorphism, Workspace};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    UnknownName(String),
    Usage(String),
    Io(String),
    /// A structure failed validation.
    Invalid(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::NotTransitive { .. } | Error::NotCommutative(_) | Error::NoSplitSection { .. } => 3,
                Error::SearchBudgetExceeded { .. } => 4,
                Error::InvalidInput(_)
                | Error::InvalidMorphism(_)
                | Error::SectionInvalid(_)
                | Error::InternalInconsistency(_) => 1,
                _ => 2,
            },
            CliError::Invalid(_) => 1,
            CliError::UnknownName(_) | CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => error_name(e),
            CliError::UnknownName(_) => "UnknownName",
            CliError::Usage(_) => "Usage",
            CliError::Io(_) => "Io",
            CliError::Invalid(_) => "Invalid",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::UnknownName(n) => format!("UnknownName: no structure named {n}"),
            CliError::Usage(m) => format!("Usage: {m}"),
            CliError::Io(m) => format!("Io: {m}"),
            CliError::Invalid(m) => format!("Invalid: {m}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "groupoid", version, about = "Finite groupoids and group-groupoids")]
struct Cli {
    /// Workspace file.
    #[arg(long, global = true, env = "GROUPOID_WS", default_value = "groupoids.json")]
    workspace: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure and store it.
    Build(BuildArgs),
    /// Validate a stored structure or a JSON file.
    Validate {
        target: String,
        #[arg(long, default_value = "both", value_parser = ["23", "24", "both"])]
        definition: String,
    },
    /// Fibres, isotropy groups, anchor image, isotropy bundle.
    Analyze {
        name: String,
        #[arg(value_enum)]
        query: Query,
        #[arg(long)]
        at: Option<usize>,
        /// Target point for `transport`.
        #[arg(long)]
        to: Option<usize>,
        /// Carrier arrow for `transport`.
        #[arg(long)]
        carrier: Option<usize>,
    },
    /// Trivialize a transitive commutative group-groupoid.
    Trivialize {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Certificate path; defaults to `<name>.trivialization.json` next to the workspace.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every standard family through all validators.
    VerifyPaper {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// List stored structures.
    List,
    /// Print a stored structure as JSON.
    Show { name: String },
    /// Store a structure read from a JSON file.
    Import { name: String, file: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Query {
    Fibers,
    Isotropy,
    Anchor,
    Bundle,
    Transport,
}

#[derive(Args)]
struct BuildArgs {
    #[command(subcommand)]
    kind: BuildKind,
    /// Name to store the structure under.
    #[arg(long, global = true)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Null group-groupoid: only identity arrows.
    Null {
        #[arg(long)]
        group: String,
    },
    /// One object; composition is the group operation.
    SingleUnit {
        #[arg(long)]
        group: String,
    },
    /// Pair groupoid on n objects (no group structure).
    Pair {
        #[arg(long)]
        n: usize,
    },
    /// Pair groupoid of a group with componentwise operation.
    GroupPair {
        #[arg(long)]
        group: String,
    },
    /// Modular group-groupoid Z_n^2(a).
    Modular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
    /// Trivial group-groupoid TGG(A, B).
    Tgg {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Groupoid of an epimorphism of abelian groups.
    Epi {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Images of the source elements, comma separated.
        #[arg(long, value_delimiter = ',')]
        map: Vec<usize>,
    },
    /// Direct product of two stored group-groupoids, with its projections.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match format {
                Format::Text => eprintln!("{}", e.message()),
                Format::Json => println!(
                    "{}",
                    json!({"error": e.name(), "message": e.message(), "exit_code": e.code()})
                ),
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut ws = Workspace::open(&cli.workspace)?;
    let fmt = cli.format;
    match cli.command {
        Command::Build(args) => build(&mut ws, args, fmt),
        Command::Validate { target, definition } => validate(&ws, &target, &definition, fmt),
        Command::Analyze {
            name,
            query,
            at,
            to,
            carrier,
        } => analyze(&ws, &name, query, at, to, carrier, fmt),
        Command::Trivialize { name, budget, out } => trivialize_cmd(&ws, &name, budget, out, fmt),
        Command::VerifyPaper {
            max_n,
            max_order,
            budget,
            inject_mutant,
        } => verify_paper(
            SweepConfig {
                max_n,
                max_order,
                budget,
                inject_mutant,
            },
            fmt,
        ),
        Command::List => {
            let rows: Vec<Value> = ws
                .entries
                .iter()
                .map(|(n, s)| json!({"name": n, "kind": s.item.kind(), "construction": s.construction}))
                .collect();
            emit(fmt, &json!(rows), || {
                ws.entries
                    .iter()
                    .map(|(n, s)| {
                        let c = s.construction.as_deref().unwrap_or("");
                        format!("{n}\t{}\t{c}\n", s.item.kind())
                    })
                    .collect()
            });
            Ok(0)
        }
        Command::Show { name } => {
            let s = ws.get(&name)?;
            println!("{}", serde_json::to_string_pretty(s).expect("plain data serializes"));
            Ok(0)
        }
        Command::Import { name, file } => {
            let item = read_item(&file)?;
            ws.insert(&name, item, Some(format!("imported from {}", file.display())));
            // revalidates the new entry
            let ws2 = {
                ws.save()?;
                Workspace::open(&cli.workspace)
            };
            if let Err(e) = ws2 {
                ws.entries.remove(&name);
                ws.save()?;
                return Err(e);
            }
            emit(fmt, &json!({"stored": name}), || format!("stored {name}\n"));
            Ok(0)
        }
    }
}

fn emit(fmt: Format, value: &Value, text: impl FnOnce() -> String) {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => print!("{}", text()),
    }
}

/// `Z<n>`, `Z<p>xZ<q>` (any number of factors), or a path to a group JSON file.
fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    if spec.ends_with(".json") {
        let text = fs::read_to_string(spec).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
        return Ok(group_from_str(&text)?.validated()?);
    }
    let mut out: Option<FiniteGroup> = None;
    for factor in spec.split('x') {
        let n: usize = factor
            .strip_prefix('Z')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("bad group literal {spec:?}; use Z<n> or Z<p>xZ<q>")))?;
        let z = make_cyclic(n)?;
        out = Some(match out {
            None => z,
            Some(g) => make_direct_product(&g, &z),
        });
    }
    out.ok_or_else(|| CliError::Usage(format!("empty group literal {spec:?}")))
}

fn gg_item(c: &GroupGroupoid) -> Item {
    Item::GroupGroupoid(GroupGroupoidJson::from(c))
}

fn build(ws: &mut Workspace, args: BuildArgs, fmt: Format) -> Result<u8, CliError> {
    let (default_name, construction, built): (String, String, Built) = match &args.kind {
        BuildKind::Null { group } => (
            format!("null{group}"),
            format!("null({group})"),
            Built::Gg(null_group_groupoid(&parse_group(group)?)?),
        ),
        BuildKind::SingleUnit { group } => (
            format!("single{group}"),
            format!("single-unit({group})"),
            Built::Gg(single_unit_group_groupoid(&parse_group(group)?)?),
        ),
        BuildKind::Pair { n } => (format!("pair{n}"), format!("pair({n})"), Built::Groupoid(pair_groupoid(*n)?)),
        BuildKind::GroupPair { group } => (
            format!("gpair{group}"),
            format!("group-pair({group})"),
            Built::Gg(group_pair_groupoid(&parse_group(group)?)?),
        ),
        BuildKind::Modular { n, a } => (
            format!("m{n}{a}"),
            format!("modular(n={n}, a={a})"),
            Built::Gg(modular_group_groupoid(*n, *a)?),
        ),
        BuildKind::Tgg { a, b } => (
            format!("tgg{a}{b}"),
            format!("tgg(A={a}, B={b})"),
            Built::Gg(trivial_group_groupoid(&parse_group(a)?, &parse_group(b)?)?),
        ),
        BuildKind::Epi { source, target, map } => {
            let (e, f) = (parse_group(source)?, parse_group(target)?);
            let pi = GroupHom::new(&e, &f, map.clone())?;
            (
                format!("epi{source}{target}"),
                format!("epi({source} -> {target})"),
                Built::Gg(epimorphism_groupoid(&pi)?),
            )
        }
        BuildKind::Product { left, right } => {
            let (l, r) = (ws.gg(left)?, ws.gg(right)?);
            (
                format!("{left}x{right}"),
                format!("product({left}, {right})"),
                Built::Product(direct_product_gg(&l, &r)?, left.clone(), right.clone(), l, r),
            )
        }
    };
    let name = args.name.unwrap_or(default_name);
    let summary = match built {
        Built::Gg(c) => {
            let s = summary_gg(&name, &construction, &c);
            ws.insert(&name, gg_item(&c), Some(construction));
            s
        }
        Built::Groupoid(g) => {
            let s = summary_groupoid(&name, &construction, &g, None);
            ws.insert(&name, Item::Groupoid(g.to_parts()), Some(construction));
            s
        }
        Built::Product(p, left, right, l, r) => {
            let s = summary_gg(&name, &construction, &p);
            ws.insert(&name, gg_item(&p), Some(construction));
            for (k, maps) in product_projections(&l, &r).into_iter().enumerate() {
                let target = if k == 0 { &left } else { &right };
                ws.insert(
                    &format!("{name}.pr{}", k + 1),
                    Item::Morphism(StoredMorphism {
                        source: name.clone(),
                        target: target.clone(),
                        maps,
                    }),
                    Some(format!("projection {} of {name}", k + 1)),
                );
            }
            s
        }
    };
    ws.save()?;
    emit(fmt, &summary, || summary_text(&summary));
    Ok(0)
}

#[allow(clippy::large_enum_variant)]
enum Built {
    Gg(GroupGroupoid),
    Groupoid(FiniteGroupoid),
    Product(GroupGroupoid, String, String, GroupGroupoid, GroupGroupoid),
}

fn summary_groupoid(name: &str, construction: &str, g: &FiniteGroupoid, commutative: Option<bool>) -> Value {
    json!({
        "stored": name,
        "construction": construction,
        "arrows": g.arrows(),
        "base": g.base(),
        "composable_pairs": g.composable_count(),
        "transitive": is_transitive(g).transitive,
        "commutative": commutative,
    })
}

fn summary_gg(name: &str, construction: &str, c: &GroupGroupoid) -> Value {
    summary_groupoid(name, construction, &c.groupoid, Some(is_commutative_gg(c)))
}

fn summary_text(v: &Value) -> String {
    let mut s = format!("stored {}: {}\n", v["stored"].as_str().unwrap_or(""), v["construction"].as_str().unwrap_or(""));
    for key in ["arrows", "base", "composable_pairs", "transitive", "commutative"] {
        if !v[key].is_null() {
            s += &format!("  {key}: {}\n", v[key]);
        }
    }
    s
}

fn read_item(path: &Path) -> Result<Item, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    if let Ok(stored) = serde_json::from_str::<workspace::Stored>(&text) {
        return Ok(stored.item);
    }
    if let Ok(c) = serde_json::from_str::<GroupGroupoidJson>(&text) {
        return Ok(Item::GroupGroupoid(c));
    }
    if let Ok(g) = serde_json::from_str::<GroupJson>(&text) {
        return Ok(Item::Group(g));
    }
    let parts: groupoid_core::groupoid::GroupoidParts = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: not a recognised structure: {e}", path.display())))?;
    Ok(Item::Groupoid(parts))
}

fn validate(ws: &Workspace, target: &str, definition: &str, fmt: Format) -> Result<u8, CliError> {
    let loaded = if ws.entries.contains_key(target) {
        ws.load(target)?
    } else if Path::new(target).exists() {
        Loaded::from_item(&read_item(Path::new(target))?)?
    } else {
        return Err(CliError::UnknownName(target.to_string()));
    };
    let mut sections: Vec<(String, ValidationReport)> = Vec::new();
    let mut equivalent = None;
    match &loaded {
        Loaded::Group(g) => sections.push(("group".into(), validate_group(g))),
        Loaded::Groupoid(g) => sections.push(("groupoid".into(), validate_groupoid(g))),
        Loaded::GroupGroupoid(c) => {
            if definition != "23" {
                sections.push(("definition 24".into(), validate_def24(c)));
            }
            if definition != "24" {
                sections.push(("definition 23".into(), validate_def23(c)));
            }
            if definition == "both" {
                equivalent = Some(sections[0].1.is_clean() == sections[1].1.is_clean());
            }
        }
        Loaded::Morphism(m) => {
            let (src, tgt) = (ws.load(&m.source)?, ws.load(&m.target)?);
            let (Some(s), Some(t)) = (src.groupoid(), tgt.groupoid()) else {
                return Err(CliError::Usage("morphism endpoints must be groupoids".into()));
            };
            let h = GroupoidMorphism::unchecked(s, t, m.maps.clone())?;
            let report = match (&src, &tgt) {
                (Loaded::GroupGroupoid(a), Loaded::GroupGroupoid(b)) => validate_gg_morphism(&h, a, b)?,
                _ => validate_groupoid_morphism(&h),
            };
            sections.push(("morphism".into(), report));
        }
    }
    let clean = sections.iter().all(|(_, r)| r.is_clean());
    let value = json!({
        "target": target,
        "clean": clean,
        "equivalent": equivalent,
        "reports": sections.iter().map(|(n, r)| json!({"name": n, "clean": r.is_clean(), "checks": r.checks})).collect::<Vec<_>>(),
    });
    emit(fmt, &value, || {
        let mut s = String::new();
        for (n, r) in &sections {
            s += &format!("== {n}: {}\n{r}", if r.is_clean() { "pass" } else { "FAIL" });
        }
        if let Some(eq) = equivalent {
            s += &format!("equivalent: {}\n", if eq { "yes" } else { "no" });
        }
        s
    });
    Ok(if clean { 0 } else { 1 })
}

fn table_text(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>() + "\n")
        .collect()
}

fn analyze(
    ws: &Workspace,
    name: &str,
    query: Query,
    at: Option<usize>,
    to: Option<usize>,
    carrier: Option<usize>,
    fmt: Format,
) -> Result<u8, CliError> {
    let loaded = ws.load(name)?;
    let g = loaded
        .groupoid()
        .ok_or_else(|| CliError::Usage(format!("{name} has no groupoid to analyze")))?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("{flag} is required")));
    let value = match query {
        Query::Fibers => {
            let points: Vec<usize> = match at {
                Some(u) => vec![u],
                None => (0..g.base()).collect(),
            };
            let mut rows = Vec::new();
            for u in points {
                rows.push(json!({"at": u, "alpha": alpha_fiber(g, u)?, "beta": beta_fiber(g, u)?}));
            }
            json!({"fibers": rows})
        }
        Query::Isotropy => {
            let iso = isotropy_group(g, need(at, "--at")?)?;
            json!({
                "at": iso.at,
                "order": iso.group.order(),
                "trivial": iso.group.order() == 1,
                "arrows": iso.member_arrows,
                "table": iso.group.rows(),
                "commutative": is_commutative(&iso.group),
            })
        }
        Query::Anchor => {
            let t = is_transitive(g);
            json!({"surjective": t.transitive, "missing": t.missing})
        }
        Query::Bundle => {
            let b = isotropy_bundle(g)?;
            json!({
                "arrows": b.members.len(),
                "members": b.members,
                "valid": validate_groupoid(&b.groupoid).is_clean(),
            })
        }
        Query::Transport => {
            let t = isotropy_transport(g, need(at, "--at")?, need(to, "--to")?, need(carrier, "--carrier")?)?;
            json!({
                "from": t.from.member_arrows,
                "to": t.to.member_arrows,
                "carrier": t.carrier,
                "map": t.map,
            })
        }
    };
    emit(fmt, &value, || match query {
        Query::Isotropy => {
            let rows: Vec<Vec<usize>> = serde_json::from_value(value["table"].clone()).unwrap_or_default();
            format!(
                "isotropy group at {}: order {}{}\narrows {}\ncayley table (dense indices):\n{}",
                value["at"],
                value["order"],
                if value["trivial"] == json!(true) { " (trivial)" } else { "" },
                value["arrows"],
                table_text(&rows)
            )
        }
        Query::Anchor => format!("surjective: {}\nmissing: {}\n", value["surjective"], value["missing"]),
        _ => serde_json::to_string_pretty(&value).expect("json") + "\n",
    });
    Ok(0)
}

fn trivialize_cmd(
    ws: &Workspace,
    name: &str,
    budget: u64,
    out: Option<PathBuf>,
    fmt: Format,
) -> Result<u8, CliError> {
    let c = ws.gg(name)?;
    let t = trivialize(&c, budget)?;
    let cert = t.certificate();
    let path = out.unwrap_or_else(|| {
        let dir = ws.path.parent().unwrap_or(Path::new(""));
        dir.join(format!("{name}.trivialization.json"))
    });
    let text = serde_json::to_string_pretty(&cert).expect("plain data serializes");
    fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value = json!({
        "name": name,
        "certificate": path.display().to_string(),
        "source_arrows": cert.verification.source_arrows,
        "target_arrows": cert.verification.target_arrows,
        "isotropy_order": cert.verification.isotropy_order,
        "gamma": cert.gamma,
        "bijective": cert.verification.bijective,
    });
    emit(fmt, &value, || {
        format!(
            "trivialized {name}: {} arrows onto TGG(G(e0), G0) with |G(e0)| = {}\n\
             phi is a bijective group-groupoid morphism with identity on the base\n\
             gamma: {:?}\ncertificate: {}\n",
            cert.verification.source_arrows,
            cert.verification.isotropy_order,
            cert.gamma,
            path.display()
        )
    });
    Ok(0)
}

fn verify_paper(cfg: SweepConfig, fmt: Format) -> Result<u8, CliError> {
    let report = verify_families(&cfg)?;
    let ok = report.passed();
    let value = serde_json::to_value(&report).expect("plain data serializes");
    emit(fmt, &value, || {
        let yn = |b: bool| if b { "pass" } else { "FAIL" };
        let mut s = format!(
            "{:<34} {:>10} {:>6} {:>5} {:>5} {:>6} {:>10} {}\n",
            "structure", "family", "arrows", "def24", "def23", "props", "transitive", "trivialize"
        );
        for r in &report.rows {
            s += &format!(
                "{:<34} {:>10} {:>6} {:>5} {:>5} {:>6} {:>10} {}\n",
                r.name,
                r.family,
                r.arrows,
                yn(r.def24),
                yn(r.def23),
                r.prop21.map(yn).unwrap_or("-"),
                r.transitive,
                r.trivialize
            );
            for f in &r.failures {
                s += &format!("    failure: {f}\n");
            }
        }
        let e = &report.epi;
        s += &format!(
            "G_pi: transitive iff pi injective holds on {}/{} epi-groupoids; \
             transitive iff the target is trivial holds on {}/{}\n",
            e.transitive_equals_injective, e.structures, e.transitive_equals_trivial_target, e.structures
        );
        let failed = report.rows.iter().filter(|r| !r.passed()).count();
        s += &format!("{} structures, {failed} with failures\n", report.rows.len());
        s
    });
    Ok(if ok { 0 } else { 1 })
}
