//! `sumlab`: command-line front end.

mod parse;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sumlab::constructions::{ConstructionSpec, Kind};
use sumlab::oracle::{self, CheckPoint, ConjectureReport, Grid, Status, REGISTRY};
use sumlab::report::{self, Cell, Format, Table};
use sumlab::search::{evaluate, Family, QuantityQuery, SearchConfig, DEFAULT_BUDGET};
use sumlab::sides;
use sumlab::sumset::sumset;
use sumlab::tables::{self, TABLES};
use sumlab::{Error, Group, Lambda, SumsetSpec, Terms};

#[derive(Parser)]
#[command(name = "sumlab", version, about = "Exact sumset computations in finite abelian groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, env = "SUMLAB_FORMAT", default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "SUMLAB_THREADS")]
    threads: Option<usize>,
    /// Search node budget per query.
    #[arg(long, global = true, env = "SUMLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Reserved; every search is exact and deterministic.
    #[arg(long, global = true, env = "SUMLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Include witness sets.
    #[arg(long, global = true, env = "SUMLAB_WITNESSES")]
    witnesses: bool,
    /// Include wall-clock times (makes output nondeterministic).
    #[arg(long, global = true, env = "SUMLAB_TIMING")]
    timing: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one sumset of an explicit set.
    Sumset(SumsetArgs),
    /// Evaluate a side function over parameter ranges.
    Side(SideArgs),
    /// Evaluate an extremal quantity by exhaustive search.
    Quantity(QuantityArgs),
    /// Build an explicit construction and optionally verify its claims.
    Construct(ConstructArgs),
    /// Compare a registered theorem with search over all groups up to a given order.
    Verify(VerifyArgs),
    /// Check a conjecture over a parameter grid.
    Conjecture(ConjectureArgs),
    /// Rebuild a named table.
    Table(TableArgs),
    /// Compare named tables with their committed fixtures.
    Fixtures(FixturesArgs),
}

#[derive(Args)]
struct SumsetArgs {
    #[arg(long)]
    group: String,
    /// Elements, e.g. `2,3` or `(0,1),(1,0)`.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[arg(long, default_value = "exact:2")]
    terms: String,
    #[arg(long, default_value = "plain")]
    variant: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideFn {
    V,
    Vpm,
    U,
    Uhat,
    Vhat,
    Vhatpm,
}

#[derive(Args)]
struct SideArgs {
    #[arg(value_enum)]
    function: SideFn,
    #[arg(long)]
    n: String,
    /// h, or s for vhat and vhatpm.
    #[arg(long, alias = "s")]
    h: String,
    #[arg(long)]
    m: Option<String>,
    #[arg(long, default_value = "1")]
    g: String,
}

#[derive(Args)]
struct QuantityArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value = "plain")]
    variant: String,
    /// Group, repeatable.
    #[arg(long)]
    group: Vec<String>,
    /// Sweep cyclic groups Z_n over a range.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    terms: Option<String>,
    /// `k,l` for sum-free quantities.
    #[arg(long)]
    pair: Option<String>,
    #[arg(long)]
    generating: bool,
    #[arg(long)]
    exclude_zero: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    kind: String,
    /// `key=value` pairs separated by commas.
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Registry id, or `all` for every sweepable theorem.
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = 16)]
    max_n: u64,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    n: Option<String>,
    /// h, or s or k depending on the conjecture.
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    m: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    name: Option<String>,
    /// Range of the table's key (n, m, h or r).
    #[arg(long)]
    n: Option<String>,
    /// List the available tables.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    name: Vec<String>,
    /// Write the rebuilt tables into this directory.
    #[arg(long)]
    write: Option<std::path::PathBuf>,
}

enum Fail {
    Usage(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail::Usage(format!("write failed: {e}"))
    }
}

type Run = Result<Outcome, Fail>;

/// A finished report plus the exit status it implies.
struct Outcome {
    table: Table,
    mismatch: bool,
    skipped: bool,
}

impl Outcome {
    fn ok(table: Table) -> Outcome {
        Outcome { table, mismatch: false, skipped: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("sumlab: {e}");
            return ExitCode::from(1);
        }
    }
    let g = &cli.global;
    let result = match &cli.cmd {
        Cmd::Sumset(a) => run_sumset(g, a),
        Cmd::Side(a) => run_side(a),
        Cmd::Quantity(a) => run_quantity(g, a),
        Cmd::Construct(a) => run_construct(a),
        Cmd::Verify(a) => run_verify(g, a),
        Cmd::Conjecture(a) => run_conjecture(g, a),
        Cmd::Table(a) => run_table(g, a),
        Cmd::Fixtures(a) => run_fixtures(g, a),
    };
    let out = match result {
        Ok(o) => o,
        Err(Fail::Usage(msg)) => {
            eprintln!("sumlab: {msg}");
            return ExitCode::from(1);
        }
        Err(Fail::Budget(msg)) => {
            eprintln!("sumlab: {msg}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut lock = io::BufWriter::new(stdout.lock());
    match report::emit(g.format, &out.table, &mut lock).and_then(|_| lock.flush()) {
        Ok(()) => {}
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("sumlab: {e}");
            return ExitCode::from(1);
        }
    }
    if out.mismatch {
        ExitCode::from(3)
    } else if out.skipped {
        eprintln!("sumlab: some points exceeded the search budget");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cfg(g: &Global) -> SearchConfig {
    SearchConfig { budget: g.budget }
}

fn range(text: &str) -> Result<Vec<u64>, Fail> {
    Ok(parse::range(text)?)
}

fn run_sumset(_: &Global, a: &SumsetArgs) -> Run {
    let g: Group = a.group.parse()?;
    let lambda: Lambda = a.variant.parse()?;
    let terms: Terms = a.terms.parse()?;
    let set = parse::subset(&g, &a.set)?;
    let s = sumset(&set, SumsetSpec::new(lambda, terms));
    let mut t = Table::new(["group", "variant", "terms", "set", "size", "sumset"]);
    t.push(vec![
        g.to_string().into(),
        lambda.name().into(),
        terms.to_string().into(),
        parse::set(&set).into(),
        (s.size() as u64).into(),
        parse::set(&s).into(),
    ]);
    Ok(Outcome::ok(t))
}

fn run_side(a: &SideArgs) -> Run {
    let ns = range(&a.n)?;
    let hs = range(&a.h)?;
    let gs = range(&a.g)?;
    let ms = a.m.as_deref().map(range).transpose()?;
    let need_m = || ms.clone().ok_or_else(|| Fail::Usage("u and uhat need --m".into()));
    let positive = |what: &str, xs: &[u64]| {
        if xs.contains(&0) {
            Err(Fail::Usage(format!("{what} must be positive")))
        } else {
            Ok(())
        }
    };
    positive("n", &ns)?;
    positive("h", &hs)?;
    let t = match a.function {
        SideFn::V => {
            positive("g", &gs)?;
            let mut t = Table::new(["n", "h", "g", "value"]);
            for &n in &ns {
                for &h in &hs {
                    for &g in &gs {
                        t.push(vec![n.into(), h.into(), g.into(), sides::v(n, h, g).into()]);
                    }
                }
            }
            t
        }
        SideFn::Vpm => grid2(&ns, &hs, "h", sides::v_pm),
        SideFn::Vhat => grid2(&ns, &hs, "s", sides::v_hat),
        SideFn::Vhatpm => grid2(&ns, &hs, "s", sides::v_hat_pm),
        SideFn::U | SideFn::Uhat => {
            let ms = need_m()?;
            positive("m", &ms)?;
            let f = if matches!(a.function, SideFn::U) { sides::u } else { sides::u_hat };
            let mut t = Table::new(["n", "m", "h", "value"]);
            for &n in &ns {
                for &m in ms.iter().filter(|&&m| m <= n) {
                    for &h in &hs {
                        t.push(vec![n.into(), m.into(), h.into(), f(n, m, h).into()]);
                    }
                }
            }
            t
        }
    };
    Ok(Outcome::ok(t))
}

fn grid2(ns: &[u64], hs: &[u64], second: &str, f: fn(u64, u64) -> u64) -> Table {
    let mut t = Table::new(["n", second, "value"]);
    for &n in ns {
        for &h in hs {
            t.push(vec![n.into(), h.into(), f(n, h).into()]);
        }
    }
    t
}

fn run_quantity(gl: &Global, a: &QuantityArgs) -> Run {
    let family: Family = a.family.parse()?;
    let lambda: Lambda = a.variant.parse()?;
    let pair = a.pair.as_deref().map(parse::pair).transpose()?;
    let terms: Terms = match (&a.terms, pair) {
        (Some(t), _) => t.parse()?,
        (None, Some((k, _))) => Terms::Exact(k),
        (None, None) => return Err(Fail::Usage("--terms is required (e.g. exact:2, upto:3)".into())),
    };
    let mut groups: Vec<Group> = a.group.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    if let Some(ns) = &a.n {
        for n in range(ns)? {
            groups.push(Group::cyclic(n)?);
        }
    }
    if groups.is_empty() {
        return Err(Fail::Usage("give --group or --n".into()));
    }
    let ms: Vec<Option<u64>> = match &a.m {
        Some(r) => range(r)?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut cols = vec!["group", "family", "variant", "terms", "m", "value", "exhaustive", "nodes", "citations", "known"];
    if gl.witnesses {
        cols.push("witness");
    }
    if gl.timing {
        cols.push("elapsed_ms");
    }
    let mut t = Table::new(cols);
    let mut mismatch = false;
    let terms_label = match pair {
        Some((k, l)) => format!("pair:{k},{l}"),
        None => terms.to_string(),
    };
    for g in &groups {
        for &m in &ms {
            if m.is_some_and(|m| m as usize > g.order()) {
                continue;
            }
            let mut q = QuantityQuery::new(family, SumsetSpec::new(lambda, terms))
                .generating(a.generating)
                .exclude_zero(a.exclude_zero);
            if let Some(m) = m {
                q = q.with_m(m);
            }
            if let Some((k, l)) = pair {
                q = q.with_pair(k, l);
            }
            let start = Instant::now();
            let r = evaluate(g, &q, &cfg(gl))?;
            let elapsed = start.elapsed().as_millis() as u64;
            let known = oracle::known_values(g, &q);
            let ids: Vec<&str> = known.iter().map(|k| k.citation_id.as_str()).collect();
            let predicted = known.first().map(|k| k.value);
            if known.iter().any(|k| k.value != r.value) {
                mismatch = true;
            }
            let mut row: Vec<Cell> = vec![
                g.to_string().into(),
                family.to_string().into(),
                lambda.name().into(),
                terms_label.clone().into(),
                Cell::opt(m),
                Cell::opt(r.value),
                r.exhaustive.into(),
                r.nodes.into(),
                ids.join(";").into(),
                predicted.map_or(Cell::Null, Cell::opt),
            ];
            if gl.witnesses {
                row.push(r.witness_subset(g).map_or(Cell::Null, |w| parse::set(&w).into()));
            }
            if gl.timing {
                row.push(elapsed.into());
            }
            t.push(row);
        }
    }
    Ok(Outcome { table: t, mismatch, skipped: false })
}

fn run_construct(a: &ConstructArgs) -> Run {
    let kind: Kind = a.kind.parse()?;
    let spec = ConstructionSpec::parse_params(kind, &a.params)?;
    let c = spec.build()?;
    let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let head = |t: &mut Vec<Cell>| {
        t.extend([
            kind.name().into(),
            params.join(",").into(),
            c.group.to_string().into(),
            (c.set.size() as u64).into(),
            parse::set(&c.set).into(),
        ])
    };
    if !a.verify {
        let mut t = Table::new(["kind", "params", "group", "size", "set"]);
        let mut row = Vec::new();
        head(&mut row);
        t.push(row);
        return Ok(Outcome::ok(t));
    }
    let mut t = Table::new(["kind", "params", "group", "size", "set", "citation", "claim", "expected", "observed", "ok"]);
    let mut mismatch = false;
    for o in c.verify() {
        mismatch |= !o.ok;
        let mut row = Vec::new();
        head(&mut row);
        row.extend([
            o.claim.citation.into(),
            o.claim.predicate.to_string().into(),
            o.claim.expected.into(),
            o.observed.into(),
            o.ok.into(),
        ]);
        t.push(row);
    }
    Ok(Outcome { table: t, mismatch, skipped: false })
}

fn point_table(reports: &[ConjectureReport], witnesses: bool) -> Table {
    let mut cols = vec!["id", "group", "params", "predicted", "observed", "status", "reason", "forced", "nodes"];
    if witnesses {
        cols.push("witness");
    }
    let mut t = Table::new(cols);
    for p in reports.iter().flat_map(|r| &r.points) {
        t.push(point_row(p, witnesses));
    }
    t
}

fn point_row(p: &CheckPoint, witnesses: bool) -> Vec<Cell> {
    let params: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let (status, reason) = match &p.status {
        Status::Confirmed => ("confirmed", Cell::Null),
        Status::Refuted => ("refuted", Cell::Null),
        Status::Skipped { reason } => ("skipped", reason.clone().into()),
    };
    let mut row = vec![
        p.id.clone().into(),
        p.group.clone().into(),
        params.join(";").into(),
        Cell::opt(p.predicted),
        Cell::opt(p.observed),
        status.into(),
        reason,
        p.forced.map_or(Cell::Null, Cell::Bool),
        p.nodes.into(),
    ];
    if witnesses {
        row.push(p.witness.as_deref().map_or(Cell::Null, |w| parse::coords_set(w).into()));
    }
    row
}

fn run_verify(g: &Global, a: &VerifyArgs) -> Run {
    let ids: Vec<&str> = if a.theorem == "all" {
        REGISTRY.iter().filter(|e| e.sweepable()).map(|e| e.id).collect()
    } else {
        vec![a.theorem.as_str()]
    };
    let reports = ids.iter().map(|id| oracle::theorem_sweep(id, a.max_n, &cfg(g))).collect::<Result<Vec<_>, _>>()?;
    let mismatch = reports.iter().any(|r| r.refuted() > 0);
    let skipped = reports.iter().any(|r| r.skipped() > 0);
    Ok(Outcome { table: point_table(&reports, g.witnesses), mismatch, skipped })
}

fn run_conjecture(g: &Global, a: &ConjectureArgs) -> Run {
    let mut grid = Grid::new(a.n.as_deref().map(range).transpose()?.unwrap_or_default());
    if let Some(h) = &a.h {
        grid = grid.with_h(range(h)?);
    }
    if let Some(m) = &a.m {
        grid = grid.with_m(range(m)?);
    }
    let r = oracle::conjecture_check(&a.id, &grid, &cfg(g))?;
    let skipped = r.skipped() > 0;
    // a refuted conjecture is a finding, not a failure
    Ok(Outcome { table: point_table(&[r], g.witnesses), mismatch: false, skipped })
}

fn run_table(g: &Global, a: &TableArgs) -> Run {
    let Some(name) = a.name.as_deref().filter(|_| !a.list) else {
        let mut t = Table::new(["name", "key", "default", "title", "fixture"]);
        for d in TABLES {
            let keys = d.default_keys();
            let span = match (keys.first(), keys.last()) {
                (Some(lo), Some(hi)) => format!("{lo}..{hi}"),
                _ => String::new(),
            };
            t.push(vec![
                d.name.into(),
                d.key.map_or(Cell::Null, Cell::from),
                span.into(),
                d.title.into(),
                d.fixture_file().into(),
            ]);
        }
        return Ok(Outcome::ok(t));
    };
    let def = tables::table(name)?;
    let keys = a.n.as_deref().map(range).transpose()?;
    Ok(Outcome::ok(def.build(keys.as_deref(), &cfg(g))?))
}

fn run_fixtures(g: &Global, a: &FixturesArgs) -> Run {
    let defs: Vec<&tables::TableDef> = if a.all || a.name.is_empty() {
        TABLES.iter().collect()
    } else {
        a.name.iter().map(|n| tables::table(n)).collect::<Result<_, _>>()?
    };
    let mut t = Table::new(["name", "status", "rows", "first_mismatch"]);
    let mut mismatch = false;
    for d in defs {
        let built = d.build(None, &cfg(g))?;
        if let Some(dir) = &a.write {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{}.csv", d.name)), report::to_string(Format::Csv, &built))?;
        }
        let diff = report::first_mismatch(&d.fixture()?, &built);
        mismatch |= diff.is_some();
        t.push(vec![
            d.name.into(),
            if diff.is_some() { "mismatch" } else { "ok" }.into(),
            (built.rows.len() as u64).into(),
            diff.map_or(Cell::Null, |m| m.to_string().into()),
        ]);
    }
    Ok(Outcome { table: t, mismatch, skipped: false })
}
