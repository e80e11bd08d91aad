//! Command-line front end. [`run`] returns the exit code and the text that
//! goes to stdout, so the whole interface can be exercised in-process.
//!
//! Every report starts with `key: value` lines, followed by a `---` line and
//! a human-readable certificate. Exit codes: 0 success, 1 a property fails
//! (the report carries the witness), 2 bad input or a refused size.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::bases::{best_base_bound, greedy_base, mb, mb_classes, BaseSearch, WellOrderedBase};
use crate::closure::{closure, closure_by_intersection, is_closed};
use crate::coloring::{
    chromatic_number, color_from_base, is_list_colorable, list_chromatic_number, Color, Coloring,
    ListColoring, Listing,
};
use crate::compactness::{extend_coloring, ChainFamily, ChainedMatroid, Extension};
use crate::constructions::TableSpec;
use crate::contraction::contract;
use crate::error::{MatroidError, Result};
use crate::format::{parse_chain, parse_listing, parse_spec, serialize, MatroidSpec, Palette};
use crate::lemmas::{check_lemmas_with, LemmaBounds};
use crate::matroid::{Limits, Matroid, Verdict};
use crate::set::{Element, ElementSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check the rank axioms and circuit elimination
    Validate,
    /// List all circuits
    Circuits,
    /// Closure of --subset
    Closure,
    /// Whether --subset is closed
    Closed,
    /// Contract --subset and print the contraction as a table
    Contract,
    /// A well-ordered base (from --order, else the best class bound)
    Base,
    /// The M_B class decomposition of a base
    Mb,
    /// Chromatic number with a witness coloring
    Chromatic,
    /// List chromatic number by exhaustive listing enumeration
    ListChromatic,
    /// Color from a base and the listing in --lists
    ColorFromBase,
    /// Run the lemma battery
    CheckLemmas,
    /// Extend a list coloring along a chain of growing matroids
    Compactness,
}

#[derive(Debug, Parser)]
#[command(name = "matroid", version, about = "Matroid rank oracles, closure, contraction, bases and list coloring")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Matroid file (for compactness: a chain of matroid sections)
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    /// Subset literal such as "{0,2}"
    #[arg(long)]
    subset: Option<ElementSet>,
    /// Contract this subset before running the command
    #[arg(long)]
    contract: Option<ElementSet>,
    /// Listing file
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Element order such as "2,0,1"
    #[arg(long)]
    order: Option<String>,
    /// Largest list size tried by list-chromatic
    #[arg(long)]
    kmax: Option<usize>,
    /// Deepest chain level for compactness
    #[arg(long)]
    depth: Option<usize>,
    /// Built-in chain family for compactness
    #[arg(long)]
    family: Option<ChainFamily>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the exhaustive enumeration bounds
    #[arg(long = "max-n")]
    max_n: Option<usize>,
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut r = Report::default();
    match dispatch(&args, &mut r) {
        Ok(code) => (code, r.render()),
        Err(e) => {
            r.kv("error", &e);
            (exit_code(&e), r.render())
        }
    }
}

fn exit_code(e: &MatroidError) -> i32 {
    match e {
        MatroidError::ElementOutOfRange { .. }
        | MatroidError::TooLarge { .. }
        | MatroidError::Input(_)
        | MatroidError::Axiom(_)
        | MatroidError::NotABase(_) => 2,
        MatroidError::NoProperColoring(_)
        | MatroidError::Loop { .. }
        | MatroidError::ListTooSmall { .. }
        | MatroidError::Certificate(_)
        | MatroidError::InconsistentChain { .. } => 1,
    }
}

#[derive(Debug, Default)]
struct Report {
    kv: Vec<(String, String)>,
    cert: Vec<String>,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.kv.push((key.to_string(), value.to_string()));
    }

    fn cert(&mut self, line: impl Into<String>) {
        self.cert.push(line.into());
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.kv {
            let _ = writeln!(out, "{k}: {v}");
        }
        out.push_str("---\n");
        for l in &self.cert {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

fn limits(args: &Args) -> Limits {
    match args.max_n {
        Some(n) => Limits::default().with_max_n(n),
        None => Limits::default(),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| MatroidError::Input(format!("cannot read {}: {e}", path.display())))
}

fn need<'a, T>(v: &'a Option<T>, flag: &str, cmd: Command) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| {
        let name = cmd.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
        MatroidError::Input(format!("`{name}` needs {flag}"))
    })
}

fn dispatch(args: &Args, r: &mut Report) -> Result<i32> {
    let name = args
        .command
        .to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default();
    r.kv("command", &name);
    r.kv("seed", args.seed);
    if args.command == Command::Compactness {
        return compactness(args, r);
    }
    let path = need(&args.input, "-i FILE", args.command)?;
    r.kv("input", path.display());
    let spec = parse_spec(&read(path)?)?;
    r.kv("kind", spec.kind());
    let built = spec.build(limits(args));
    if args.command == Command::Validate {
        if let Err(MatroidError::Axiom(v)) = &built {
            r.kv("axioms", "fail");
            r.kv("axiom", v.axiom);
            r.kv("witness", format!("{} {}", v.witness.0, v.witness.1));
            r.cert(v.to_string());
            return Ok(1);
        }
    }
    let mut m = built?;
    r.kv("n", m.len());
    r.kv("rank", m.rank(m.ground())?);
    if let Some(z) = args.contract {
        let c = contract(&m, z)?;
        r.kv("contracted", z);
        r.kv("contracted-n", c.matroid.len());
        r.kv("contracted-rank", c.matroid.rank(c.matroid.ground())?);
        r.kv("id-map", show_map(&c.map));
        m = c.matroid;
    }
    match args.command {
        Command::Validate => validate(&m, r),
        Command::Circuits => circuits(&m, r),
        Command::Closure => closure_cmd(&m, *need(&args.subset, "--subset SET", args.command)?, r),
        Command::Closed => closed_cmd(&m, *need(&args.subset, "--subset SET", args.command)?, r),
        Command::Contract => contract_cmd(&m, *need(&args.subset, "--subset SET", args.command)?, r),
        Command::Base => base_cmd(&m, args, r),
        Command::Mb => mb_cmd(&m, args, r),
        Command::Chromatic => chromatic_cmd(&m, r),
        Command::ListChromatic => list_chromatic_cmd(&m, args, r),
        Command::ColorFromBase => color_from_base_cmd(&m, args, r),
        Command::CheckLemmas => check_lemmas_cmd(&m, args, r),
        Command::Compactness => unreachable!(),
    }
}

fn show_map(map: &[Element]) -> String {
    map.iter()
        .enumerate()
        .map(|(i, p)| format!("{i}->{p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(m: &Matroid, r: &mut Report) -> Result<i32> {
    match m.validate_axioms()? {
        Verdict::Pass => r.kv("axioms", "pass"),
        Verdict::Fail(v) => {
            r.kv("axioms", "fail");
            r.kv("axiom", v.axiom);
            r.kv("witness", format!("{} {}", v.witness.0, v.witness.1));
            r.cert(v.to_string());
            return Ok(1);
        }
    }
    if m.len() > m.limits().circuits {
        r.kv("circuit-elimination", format!("skipped (size {} > {})", m.len(), m.limits().circuits));
        return Ok(0);
    }
    match m.check_circuit_elimination()? {
        Verdict::Pass => {
            r.kv("circuit-elimination", "pass");
            r.cert(format!("all {} subsets satisfy the rank axioms", 1u64 << m.len()));
            Ok(0)
        }
        Verdict::Fail(f) => {
            r.kv("circuit-elimination", "fail");
            r.cert(f.to_string());
            Ok(1)
        }
    }
}

fn circuits(m: &Matroid, r: &mut Report) -> Result<i32> {
    let cs = m.circuits()?;
    r.kv("circuits", cs.len());
    for c in &cs {
        r.cert(c.to_string());
    }
    Ok(0)
}

fn closure_cmd(m: &Matroid, x: ElementSet, r: &mut Report) -> Result<i32> {
    let s = closure(m, x)?;
    r.kv("subset", x);
    r.kv("closure", s);
    r.kv("rank", m.rank(x)?);
    if m.len() <= m.limits().exhaustive.min(12) {
        let meet = closure_by_intersection(m, x)?;
        r.kv("intersection-agrees", meet == s);
        if meet != s {
            r.cert(format!("intersection of closed supersets is {meet}"));
            return Ok(1);
        }
    }
    for y in s - x {
        r.cert(format!("{y} is spanned: r({}) = r({})", x.with(y), x));
    }
    Ok(0)
}

fn closed_cmd(m: &Matroid, z: ElementSet, r: &mut Report) -> Result<i32> {
    let closed = is_closed(m, z)?;
    r.kv("subset", z);
    r.kv("closed", closed);
    let rz = m.rank(z)?;
    for y in m.ground() - z {
        if m.rank(z.with(y))? == rz {
            r.cert(format!("adding {y} keeps the rank at {rz}"));
            return Ok(0);
        }
    }
    r.cert(format!("every element outside {z} raises the rank above {rz}"));
    Ok(0)
}

fn contract_cmd(m: &Matroid, z: ElementSet, r: &mut Report) -> Result<i32> {
    let c = contract(m, z)?;
    let mc = &c.matroid;
    r.kv("contract", z);
    r.kv("contraction-n", mc.len());
    r.kv("contraction-rank", mc.rank(mc.ground())?);
    r.kv("loop-free", mc.is_loop_free());
    r.kv("closed", is_closed(m, z)?);
    r.kv("id-map", show_map(&c.map));
    let table = TableSpec::from_matroid(mc)?;
    for l in serialize(&MatroidSpec::Table(table)).lines() {
        r.cert(l);
    }
    Ok(0)
}

fn parse_order(s: &str) -> Result<Vec<Element>> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| MatroidError::Input(format!("bad element `{}` in --order", p.trim())))
        })
        .collect()
}

/// A base from `--order`, or the base with the smallest largest class.
fn choose_base(m: &Matroid, args: &Args, r: &mut Report) -> Result<WellOrderedBase> {
    if let Some(o) = &args.order {
        let order = parse_order(o)?;
        let b = if order.len() == m.len() && !m.is_empty() {
            r.kv("base-source", "greedy along --order");
            greedy_base(m, &order)?
        } else {
            r.kv("base-source", "--order");
            WellOrderedBase::new(m, order)?
        };
        return Ok(b);
    }
    let search = BaseSearch::auto(m.len(), args.seed);
    let bound = best_base_bound(m, search)?;
    r.kv(
        "base-source",
        match search {
            BaseSearch::Exhaustive => "exhaustive search".to_string(),
            BaseSearch::Random { restarts, .. } => format!("{restarts} seeded random orders"),
        },
    );
    r.kv("optimal", bound.optimal);
    Ok(bound.base)
}

fn base_cmd(m: &Matroid, args: &Args, r: &mut Report) -> Result<i32> {
    let b = choose_base(m, args, r)?;
    r.kv("base", &b);
    r.kv("base-size", b.order().len());
    if m.is_loop_free() {
        let d = mb_classes(m, &b)?;
        r.kv("max-class-size", d.max_class_size());
    }
    r.cert(format!("{} is independent with rank {}", b.set(), m.rank(m.ground())?));
    Ok(0)
}

fn mb_cmd(m: &Matroid, args: &Args, r: &mut Report) -> Result<i32> {
    let b = choose_base(m, args, r)?;
    let d = mb_classes(m, &b)?;
    r.kv("base", &b);
    r.kv("max-class-size", d.max_class_size());
    for &(key, class) in &d.classes {
        r.kv(&format!("class {key}"), class);
    }
    for x in m.ground() {
        r.cert(format!("mb({x}) = {}", mb(m, &b, x)?));
    }
    Ok(0)
}

fn loop_report(m: &Matroid, r: &mut Report, key: &str) -> Option<i32> {
    let x = m.loops().min()?;
    r.kv(key, "none");
    r.kv("loop", x);
    r.cert(format!("{{{x}}} is a circuit, so no coloring is proper"));
    Some(1)
}

fn chromatic_cmd(m: &Matroid, r: &mut Report) -> Result<i32> {
    if let Some(code) = loop_report(m, r, "chromatic") {
        return Ok(code);
    }
    let chr = chromatic_number(m)?;
    r.kv("chromatic", chr.value);
    r.kv("coloring", &chr.witness);
    for c in chr.witness.palette() {
        r.cert(format!("color {c}: class {} is independent", chr.witness.class(c)));
    }
    if chr.value > 0 {
        r.cert(format!("no proper coloring with {} colors", chr.value - 1));
    }
    Ok(0)
}

fn read_listing(m: &Matroid, path: &PathBuf) -> Result<(Listing, Palette)> {
    parse_listing(&read(path)?, m.len())
}

fn numeric_palette(k: usize) -> Palette {
    let mut p = Palette::default();
    for c in 0..k {
        p.intern(&c.to_string());
    }
    p
}

fn list_chromatic_cmd(m: &Matroid, args: &Args, r: &mut Report) -> Result<i32> {
    if let Some(code) = loop_report(m, r, "list-chromatic") {
        return Ok(code);
    }
    let mut code = 0;
    if let Some(path) = &args.lists {
        let (l, p) = read_listing(m, path)?;
        match is_list_colorable(m, &l)? {
            ListColoring::Colored(phi) => {
                r.kv("listing-colorable", true);
                r.kv("listing-coloring", p.show_coloring(&phi));
            }
            ListColoring::EmptyList(x) => {
                r.kv("listing-colorable", false);
                r.kv("empty-list", x);
                code = 1;
            }
            ListColoring::Uncolorable => {
                r.kv("listing-colorable", false);
                code = 1;
            }
        }
    }
    let kmax = args.kmax.unwrap_or(m.limits().list_kmax);
    let chr = chromatic_number(m)?;
    let lc = list_chromatic_number(m, kmax)?;
    r.kv("kmax", kmax);
    r.kv("chromatic", chr.value);
    match lc.value {
        Some(v) => r.kv("list-chromatic", v),
        None => r.kv("list-chromatic", format!(">{kmax}")),
    }
    let equality = match lc.value {
        Some(v) if v == chr.value => "equal",
        None if chr.value > kmax => "undetermined",
        _ => {
            code = 1;
            "differ"
        }
    };
    r.kv("chr-equals-list", equality);
    let examined: Vec<String> = lc.examined.iter().map(|(k, c)| format!("k={k}:{c}")).collect();
    r.kv("listings-examined", examined.join(" "));
    for (k, l) in &lc.failures {
        r.cert(format!("uncolorable {k}-listing: {l}"));
    }
    if let (Some(v), Some(w)) = (lc.value, &lc.witness) {
        r.cert(format!("every canonical {v}-listing is colorable; constant lists: {w}"));
    }
    Ok(code)
}

fn color_from_base_cmd(m: &Matroid, args: &Args, r: &mut Report) -> Result<i32> {
    let b = choose_base(m, args, r)?;
    let d = mb_classes(m, &b)?;
    r.kv("base", &b);
    r.kv("max-class-size", d.max_class_size());
    let (l, p) = match &args.lists {
        Some(path) => read_listing(m, path)?,
        None => {
            let k = d.max_class_size();
            r.kv("lists", format!("uniform {k}-lists"));
            (Listing::uniform(m.len(), k), numeric_palette(k))
        }
    };
    let phi = match color_from_base(m, &b, &l) {
        Ok(phi) => phi,
        Err(MatroidError::ListTooSmall {
            element,
            class_key,
            available,
            needed,
        }) => {
            r.kv("precondition", "fail");
            r.kv("element", element);
            r.kv("class", class_key);
            r.cert(format!(
                "element {element} has {available} colors but its class {} has {needed} members",
                d.class_of(class_key).unwrap_or_default()
            ));
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    r.kv("precondition", "pass");
    r.kv("coloring", p.show_coloring(&phi));
    r.kv("proper", true);
    for &(key, class) in &d.classes {
        let names: Vec<String> = class.iter().map(|x| p.name(phi.colors()[x])).collect();
        r.cert(format!("class {key} {class}: colors {}", names.join(",")));
    }
    Ok(0)
}

fn check_lemmas_cmd(m: &Matroid, args: &Args, r: &mut Report) -> Result<i32> {
    let bounds = match args.max_n {
        Some(n) => LemmaBounds {
            rank: n,
            circuits: n,
            closure: n,
            ordered_bases: n,
        },
        None => LemmaBounds::default(),
    };
    let lines = check_lemmas_with(m, args.seed, &bounds);
    let failures = lines.iter().filter(|l| l.status.is_failure()).count();
    let skipped = lines.iter().filter(|l| l.status.is_skipped()).count();
    for l in &lines {
        r.kv(l.id, &l.status);
    }
    r.kv("failures", failures);
    r.kv("skipped", skipped);
    for l in &lines {
        r.cert(format!("{}: {}", l.id, l.statement));
    }
    Ok(if failures > 0 { 1 } else { 0 })
}

fn compactness(args: &Args, r: &mut Report) -> Result<i32> {
    r.kv(
        "search",
        "finite-depth Koenig search over proper list colorings of the chain levels, standing in for an ultrafilter limit",
    );
    let (chain, default_depth) = match (&args.family, &args.input) {
        (Some(f), None) => (ChainedMatroid::family(*f), 3),
        (None, Some(path)) => {
            r.kv("input", path.display());
            let levels: Vec<Matroid> = parse_chain(&read(path)?, limits(args))?
                .into_iter()
                .map(|p| p.matroid)
                .collect();
            let c = ChainedMatroid::from_levels(levels)?;
            let d = c.max_depth().unwrap_or(0);
            (c, d)
        }
        _ => {
            return Err(MatroidError::Input(
                "compactness needs exactly one of --family NAME or -i CHAINFILE".into(),
            ))
        }
    };
    let depth = args.depth.unwrap_or(default_depth);
    r.kv("chain", chain.describe());
    r.kv("depth", depth);
    let top = chain.level(depth)?.len();
    let (l, p) = match &args.lists {
        Some(path) => parse_listing(&read(path)?, top)?,
        None => {
            r.kv("lists", "uniform 2-lists");
            (Listing::uniform(top, 2), numeric_palette(2))
        }
    };
    match extend_coloring(&chain, &l, depth)? {
        Extension::Colored {
            coloring,
            level_sizes,
        } => {
            let sizes: Vec<String> = level_sizes.iter().map(usize::to_string).collect();
            r.kv("level-sizes", sizes.join(","));
            r.kv("result", "colored");
            r.kv("coloring", p.show_coloring(&coloring));
            for (i, &s) in level_sizes.iter().enumerate() {
                let prefix: Coloring = coloring.prefix(s);
                let used: Vec<Color> = prefix.palette();
                r.cert(format!(
                    "level {i}: {s} elements, restriction proper with {} colors",
                    used.len()
                ));
            }
            Ok(0)
        }
        Extension::Stuck { level } => {
            r.kv("result", "none");
            r.kv("stuck-level", level);
            let m = chain.level(level)?;
            r.cert(format!(
                "level {level} has no proper coloring from lists {}",
                p.show_listing(&l.prefix(m.len()))
            ));
            Ok(1)
        }
    }
}
