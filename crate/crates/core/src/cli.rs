//! The `stf` command line.
//!
//! Exit codes: 0 on success, 1 when a check or report fails (an invalid
//! coding pair, an exceeded budget, a set that is not dense, ...), 2 on
//! usage and parse errors. Results go to standard output (or `--output`),
//! diagnostics to standard error.

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::adcoding::{self, AdError, QCondition};
use crate::codec::{self, CodecError, CodingPair, CodingTree, QuotientStructure};
use crate::forcing::{self, names, CondId, FinitePoset, ForcingError, Kind, Name, Poset, StringPoset};
use crate::hfset::{Budget, HfError, HfSet};
use crate::treealg::{self, Predicate};

/// A failure, tagged with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<HfError> for CliError {
    fn from(e: HfError) -> Self {
        match e {
            HfError::Syntax { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::Format { .. } | CodecError::UnknownLabel(_) => CliError::Usage(e.to_string()),
            CodecError::Hf(h) => h.into(),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<ForcingError> for CliError {
    fn from(e: ForcingError) -> Self {
        match e {
            ForcingError::Format { .. }
            | ForcingError::Syntax { .. }
            | ForcingError::UnknownCondition(_)
            | ForcingError::BadPoset(_)
            | ForcingError::BoundTooLarge(_) => CliError::Usage(e.to_string()),
            ForcingError::Hf(h) => h.into(),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<AdError> for CliError {
    fn from(e: AdError) -> Self {
        match e {
            AdError::Parse(_) | AdError::BadTarget { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "stf",
    version,
    about = "Hereditarily finite sets, coding trees, and forcing at desk scale"
)]
struct Cli {
    /// Node budget for set and tree construction (overrides STF_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Write results to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hereditarily finite set literals.
    #[command(subcommand)]
    Hf(HfCmd),
    /// Coding pairs and coding trees.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Closure constructions on coding trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Posets, names, generic filters and the forcing relation.
    #[command(subcommand)]
    Force(ForceCmd),
    /// Almost-disjoint coding.
    #[command(subcommand)]
    Adcode(AdCmd),
}

#[derive(Subcommand, Debug)]
enum HfCmd {
    /// Print the canonical form.
    Eval { set: String },
    /// The von Neumann rank.
    Rank { set: String },
    /// Members of the transitive closure of {x}, one per line.
    Tc { set: String },
    /// Position in the Ackermann order.
    Key { set: String },
    /// The von Neumann ordinal n.
    Ordinal { n: usize },
    /// The Kuratowski pair ⟨a, b⟩.
    Pair { a: String, b: String },
    /// Whether `member` is an element of `set`.
    Contains { set: String, member: String },
    /// The union of the members.
    Union { set: String },
    /// All members of V_n in Ackermann order.
    Cumulative { n: usize },
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Print the canonical coding pair of a set literal.
    Encode { set: String },
    /// Decode a coding pair file (standard input if omitted).
    Decode { file: Option<PathBuf> },
    /// Check every clause of the coding-pair definition; exit 1 on violations.
    Validate { file: Option<PathBuf> },
    /// Whether two coding pairs are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// The quotient structure: one node per isomorphism class.
    Quotient { file: Option<PathBuf> },
    /// Collapse a quotient structure file to a set.
    Collapse { file: Option<PathBuf> },
    /// The level (distance to the root) of a node.
    Level { label: String, file: Option<PathBuf> },
    /// The subtree below a node.
    Subtree { label: String, file: Option<PathBuf> },
    /// The canonical isomorphism-class string.
    Canon { file: Option<PathBuf> },
    /// Code a finite class given by its members.
    ClassEncode { members: Vec<String> },
    /// Whether `a` codes a member of what `b` codes.
    Member { a: PathBuf, b: PathBuf },
    /// Whether `a` and `b` code the same set.
    Equal { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum TreeCmd {
    /// A tree coding the pair {a, b} of two coded sets.
    Pair { a: PathBuf, b: PathBuf },
    /// A tree coding the union of the coded set.
    Union { file: Option<PathBuf> },
    /// Keep the direct subtrees satisfying a predicate.
    Comprehend {
        #[arg(long)]
        pred: String,
        file: Option<PathBuf>,
    },
    /// The function from the coded set to the embedded child labels.
    Func { file: Option<PathBuf> },
    /// The strict well-order of the members.
    Wellorder { file: Option<PathBuf> },
}

#[derive(Args, Debug)]
struct PosetArgs {
    /// Poset file.
    #[arg(long, conflicts_with = "bound")]
    poset: Option<PathBuf>,
    /// Use binary strings of length at most L, ordered by extension.
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
struct BoundArg {
    /// Maximal string length L of the string poset.
    #[arg(long)]
    bound: usize,
}

#[derive(Subcommand, Debug)]
enum ForceCmd {
    /// A filter through `--at` meeting every `--dense` set.
    Generic {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long = "dense")]
        denses: Vec<String>,
        #[arg(long, default_value = "top")]
        at: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A condition below `--at` meeting every `--dense` set.
    Meet {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long = "dense")]
        denses: Vec<String>,
        #[arg(long, default_value = "top")]
        at: String,
    },
    /// Density and predensity of a set of conditions.
    Dense {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "top")]
        at: String,
    },
    /// Search for a pretameness witness below `--at`.
    Pretame {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long = "dense")]
        denses: Vec<String>,
        #[arg(long, default_value = "top")]
        at: String,
    },
    /// Interpret a name by the principal filter of `--at` or an explicit `--filter`.
    Interpret {
        #[command(flatten)]
        poset: PosetArgs,
        name: String,
        #[arg(long, default_value = "top", conflicts_with = "filter")]
        at: String,
        #[arg(long)]
        filter: Option<String>,
    },
    /// The check name of a set, spelled out.
    Check {
        #[command(flatten)]
        poset: PosetArgs,
        set: String,
    },
    /// Evaluate a name at a string condition.
    Eval {
        #[command(flatten)]
        bound: BoundArg,
        name: String,
        #[arg(long)]
        at: String,
    },
    /// Decide an atomic statement at a string condition.
    Decide {
        #[command(flatten)]
        bound: BoundArg,
        sigma: String,
        tau: String,
        #[arg(long, default_value = "top")]
        at: String,
        #[arg(long, default_value = "member")]
        kind: String,
    },
    /// Compare the syntactic and semantic membership relations on all
    /// rank-bounded names up to `--rank`.
    Grid {
        #[command(flatten)]
        bound: BoundArg,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    indices: usize,
    #[arg(long)]
    horizon: usize,
}

#[derive(Subcommand, Debug)]
enum AdCmd {
    /// Print the family A_β, A'_β.
    Family {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Code a target set of indices and decode it back.
    Simulate {
        #[arg(long, default_value = "")]
        target: String,
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The code of a binary string.
    Code { bits: String },
    /// Codes of all initial segments of a set up to the horizon.
    Transform {
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long)]
        horizon: usize,
    },
    /// Whether `stronger` extends `weaker` (conditions written bits:indices).
    Leq {
        stronger: String,
        weaker: String,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// A common extension of two conditions, if any.
    Compat {
        a: String,
        b: String,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// The indices whose coded sets meet X only below the bound.
    Decode {
        #[arg(long, default_value = "")]
        x: String,
        #[command(flatten)]
        fam: FamilyArgs,
        /// Defaults to the commit bound of the horizon.
        #[arg(long)]
        bound: Option<usize>,
    },
}

struct Ctx<'a> {
    budget: Budget,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Ctx<'_> {
    fn read(&mut self, path: Option<&PathBuf>) -> Result<String, CliError> {
        match path {
            Some(p) if p.as_os_str() != "-" => {
                fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
            }
            _ => {
                if self.stdin_used {
                    return Err(CliError::Usage("standard input can only be read once".into()));
                }
                self.stdin_used = true;
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
                Ok(s)
            }
        }
    }

    fn tree(&mut self, path: Option<&PathBuf>) -> Result<CodingTree, CliError> {
        Ok(self.read(path)?.parse()?)
    }
}

fn hf(s: &str) -> Result<HfSet, CliError> {
    Ok(HfSet::parse(s)?)
}

fn bool_line(b: bool) -> String {
    format!("{b}\n")
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let budget = match cli.budget {
        Some(b) => Ok(Budget::new(b)),
        None => Budget::from_env().map_err(CliError::Usage),
    };
    let result = budget.and_then(|budget| {
        let mut ctx = Ctx {
            budget,
            stdin,
            stdin_used: false,
        };
        dispatch(cli.command, &mut ctx)
    });
    let (text, code) = match result {
        Ok((text, ok)) => (text, if ok { 0 } else { 1 }),
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    code
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Output text and whether the command's check passed.
type Outcome = Result<(String, bool), CliError>;

fn ok(text: String) -> Outcome {
    Ok((text, true))
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::Hf(c) => hf_cmd(c, ctx),
        Command::Code(c) => code_cmd(c, ctx),
        Command::Tree(c) => tree_cmd(c, ctx),
        Command::Force(c) => force_cmd(c, ctx),
        Command::Adcode(c) => ad_cmd(c, ctx),
    }
}

fn hf_cmd(cmd: HfCmd, ctx: &mut Ctx) -> Outcome {
    let text = match cmd {
        HfCmd::Eval { set } => format!("{}\n", hf(&set)?),
        HfCmd::Rank { set } => format!("{}\n", hf(&set)?.rank()),
        HfCmd::Tc { set } => hf(&set)?.tc_single().iter().map(|x| format!("{x}\n")).collect(),
        HfCmd::Key { set } => format!("{}\n", hf(&set)?.serial_key()?),
        HfCmd::Ordinal { n } => format!("{}\n", HfSet::ordinal(n, ctx.budget)?),
        HfCmd::Pair { a, b } => format!("{}\n", HfSet::kpair(&hf(&a)?, &hf(&b)?)),
        HfCmd::Contains { set, member } => bool_line(hf(&set)?.contains(&hf(&member)?)),
        HfCmd::Union { set } => format!("{}\n", hf(&set)?.union()),
        HfCmd::Cumulative { n } => HfSet::cumulative(n, ctx.budget)?
            .iter()
            .map(|x| format!("{x}\n"))
            .collect(),
    };
    ok(text)
}

fn code_cmd(cmd: CodeCmd, ctx: &mut Ctx) -> Outcome {
    let text = match cmd {
        CodeCmd::Encode { set } => codec::encode(&hf(&set)?, ctx.budget)?.to_string(),
        CodeCmd::Decode { file } => format!("{}\n", ctx.tree(file.as_ref())?.decode()),
        CodeCmd::Validate { file } => {
            let pair: CodingPair = ctx.read(file.as_ref())?.parse()?;
            let report = pair.validate();
            return Ok((format!("{}\n", report.to_string().trim_end()), report.is_ok()));
        }
        CodeCmd::Iso { a, b } => bool_line(codec::is_isomorphic(&ctx.tree(Some(&a))?, &ctx.tree(Some(&b))?)),
        CodeCmd::Quotient { file } => ctx.tree(file.as_ref())?.quotient().to_string(),
        CodeCmd::Collapse { file } => {
            let q: QuotientStructure = ctx.read(file.as_ref())?.parse()?;
            format!("{}\n", q.collapse()?)
        }
        CodeCmd::Level { label, file } => format!("{}\n", ctx.tree(file.as_ref())?.level_of(&label)?),
        CodeCmd::Subtree { label, file } => ctx.tree(file.as_ref())?.subtree(&label)?.to_string(),
        CodeCmd::Canon { file } => format!("{}\n", ctx.tree(file.as_ref())?.canonical_form()),
        CodeCmd::ClassEncode { members } => {
            let xs = members.iter().map(|m| hf(m)).collect::<Result<Vec<_>, _>>()?;
            codec::class_encode(&xs, ctx.budget)?.to_string()
        }
        CodeCmd::Member { a, b } => bool_line(codec::codes_membership(&ctx.tree(Some(&a))?, &ctx.tree(Some(&b))?)),
        CodeCmd::Equal { a, b } => bool_line(codec::codes_equality(&ctx.tree(Some(&a))?, &ctx.tree(Some(&b))?)),
    };
    ok(text)
}

fn tree_cmd(cmd: TreeCmd, ctx: &mut Ctx) -> Outcome {
    let b = ctx.budget;
    let t = match cmd {
        TreeCmd::Pair { a, b: other } => treealg::pair_tree(&ctx.tree(Some(&a))?, &ctx.tree(Some(&other))?, b)?,
        TreeCmd::Union { file } => treealg::union_tree(&ctx.tree(file.as_ref())?, b)?,
        TreeCmd::Comprehend { pred, file } => {
            let pred: Predicate = pred.parse().map_err(CliError::Usage)?;
            treealg::comprehension_tree(&ctx.tree(file.as_ref())?, |c| pred.holds(c), b)?
        }
        TreeCmd::Func { file } => treealg::function_tree(&ctx.tree(file.as_ref())?, b)?,
        TreeCmd::Wellorder { file } => treealg::wellorder_tree(&ctx.tree(file.as_ref())?, b)?,
    };
    ok(t.to_string())
}

type DynPoset = Box<dyn Poset<Cond = CondId>>;

fn load_poset(args: &PosetArgs, ctx: &mut Ctx) -> Result<DynPoset, CliError> {
    match (&args.poset, args.bound) {
        (Some(path), _) => {
            let p: FinitePoset = ctx.read(Some(path))?.parse()?;
            Ok(Box::new(p))
        }
        (None, Some(l)) => Ok(Box::new(StringPoset::new(l)?)),
        (None, None) => Err(CliError::Usage("give --poset FILE or --bound L".into())),
    }
}

fn cond_set(poset: &dyn Poset<Cond = CondId>, text: &str) -> Result<BTreeSet<CondId>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Ok(poset.parse_cond(t)?))
        .collect()
}

fn cond_sets(poset: &dyn Poset<Cond = CondId>, texts: &[String]) -> Result<Vec<BTreeSet<CondId>>, CliError> {
    texts.iter().map(|t| cond_set(poset, t)).collect()
}

fn label_set(poset: &dyn Poset<Cond = CondId>, s: &BTreeSet<CondId>) -> String {
    let labels: Vec<String> = s.iter().map(|&c| poset.label(c)).collect();
    format!("{{{}}}", labels.join(","))
}

fn force_cmd(cmd: ForceCmd, ctx: &mut Ctx) -> Outcome {
    match cmd {
        ForceCmd::Generic {
            poset,
            denses,
            at,
            seed,
        } => {
            let p = load_poset(&poset, ctx)?;
            let ds = cond_sets(&*p, &denses)?;
            let g = forcing::generic_filter(&*p, &ds, p.parse_cond(&at)?, seed)?;
            ok(format!("filter {}\n", label_set(&*p, g.members())))
        }
        ForceCmd::Meet { poset, denses, at } => {
            let p = load_poset(&poset, ctx)?;
            let ds = cond_sets(&*p, &denses)?;
            let q = forcing::meet_dense(&*p, p.parse_cond(&at)?, &ds)?;
            ok(format!("{}\n", p.label(q)))
        }
        ForceCmd::Dense { poset, set, at } => {
            let p = load_poset(&poset, ctx)?;
            let d = cond_set(&*p, &set)?;
            let q = p.parse_cond(&at)?;
            ok(format!(
                "dense {}\ndense-below {}\npredense-below {}\n",
                forcing::is_dense(&*p, &d),
                forcing::is_dense_below(&*p, &d, q),
                forcing::is_predense_below(&*p, &d, q)
            ))
        }
        ForceCmd::Pretame { poset, denses, at } => {
            let p = load_poset(&poset, ctx)?;
            let ds = cond_sets(&*p, &denses)?;
            match forcing::pretame_check(&*p, &ds, p.parse_cond(&at)?, ctx.budget) {
                forcing::Pretame::Witness { q, d } => {
                    let mut out = format!("witness {}\n", p.label(q));
                    for (i, di) in d.iter().enumerate() {
                        out.push_str(&format!("d{i} {}\n", label_set(&*p, di)));
                    }
                    ok(out)
                }
                forcing::Pretame::Counterexample { index, r } => Ok((
                    format!("counterexample dense {index} incompatible {}\n", p.label(r)),
                    false,
                )),
            }
        }
        ForceCmd::Interpret {
            poset,
            name,
            at,
            filter,
        } => {
            let p = load_poset(&poset, ctx)?;
            let sigma = Name::parse(&name, &*p)?;
            let g = match filter {
                Some(f) => {
                    let g = forcing::GenericFilter::from_members(cond_set(&*p, &f)?);
                    if !g.is_filter(&*p) {
                        return Err(CliError::Usage(format!("{f:?} is not a filter")));
                    }
                    g
                }
                None => forcing::GenericFilter::principal(&*p, p.parse_cond(&at)?),
            };
            ok(format!("{}\n", forcing::interpret(&sigma, &g)))
        }
        ForceCmd::Check { poset, set } => {
            let p = load_poset(&poset, ctx)?;
            ok(format!(
                "{}\n",
                forcing::check_name(&hf(&set)?, &*p).render_expanded(&*p)
            ))
        }
        ForceCmd::Eval { bound, name, at } => {
            let sp = StringPoset::new(bound.bound)?;
            let sigma = Name::parse(&name, &sp)?;
            ok(format!("{}\n", forcing::eval_at(&sigma, sp.parse_cond(&at)?, &sp)?))
        }
        ForceCmd::Decide {
            bound,
            sigma,
            tau,
            at,
            kind,
        } => {
            let sp = StringPoset::new(bound.bound)?;
            let s = Name::parse(&sigma, &sp)?;
            let t = Name::parse(&tau, &sp)?;
            let p = sp.parse_cond(&at)?;
            let kind: Kind = kind.parse().map_err(CliError::Usage)?;
            let semantic = forcing::semantic_forces(&sp, p, kind, &s, &t)?;
            match kind {
                Kind::Membership => {
                    let syntactic = forcing::forces_membership(&sp, p, &s, &t)?;
                    ok(format!("forces {syntactic}\nsemantic {semantic}\n"))
                }
                Kind::Equality => ok(format!("semantic {semantic}\n")),
            }
        }
        ForceCmd::Grid { bound, rank, jobs } => {
            let sp = StringPoset::new(bound.bound)?;
            let all = names::rank_bounded_names(&sp, rank, ctx.budget)?;
            let report = forcing::definability_grid(&sp, &all, jobs)?;
            Ok((
                format!("names {}\n{report}\n", all.len()),
                report.disagreements.is_empty(),
            ))
        }
    }
}

fn family(args: &FamilyArgs, ctx: &Ctx) -> Result<adcoding::AdFamily, CliError> {
    Ok(adcoding::family(args.indices, args.horizon, ctx.budget)?)
}

fn q_cond(text: &str, fam: &adcoding::AdFamily) -> Result<QCondition, CliError> {
    let c: QCondition = text.parse()?;
    if let Some(&b) = c.s.iter().find(|&&b| b >= fam.indices()) {
        return Err(AdError::BadTarget {
            index: b,
            indices: fam.indices(),
        }
        .into());
    }
    Ok(c)
}

fn fmt_list(s: &BTreeSet<usize>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn ad_cmd(cmd: AdCmd, ctx: &mut Ctx) -> Outcome {
    match cmd {
        AdCmd::Family { fam } => ok(format!("{}\n", family(&fam, ctx)?)),
        AdCmd::Simulate { target, fam, seed } => {
            let target = adcoding::parse_indices(&target)?;
            let sim = adcoding::simulate(&target, fam.indices, fam.horizon, seed, ctx.budget)?;
            let matched = sim.decoded == sim.target;
            Ok((format!("{sim}\nmatch {matched}\n"), matched))
        }
        AdCmd::Code { bits } => {
            let bits = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(CliError::Usage(format!("{c:?} is not a bit"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            ok(format!("{}\n", adcoding::code_segment(&bits)))
        }
        AdCmd::Transform { set, horizon } => {
            let b = adcoding::parse_indices(&set)?;
            ctx.budget.check("transform", horizon.saturating_mul(horizon))?;
            let codes: Vec<String> = adcoding::ad_transform(&b, horizon)
                .iter()
                .map(|c| c.to_string())
                .collect();
            ok(format!("{{{}}}\n", codes.join(",")))
        }
        AdCmd::Leq { stronger, weaker, fam } => {
            let f = family(&fam, ctx)?;
            ok(bool_line(adcoding::q_leq(
                &q_cond(&stronger, &f)?,
                &q_cond(&weaker, &f)?,
                &f,
            )))
        }
        AdCmd::Compat { a, b, fam } => {
            let f = family(&fam, ctx)?;
            match adcoding::common_extension(&q_cond(&a, &f)?, &q_cond(&b, &f)?, &f) {
                Some(w) => ok(format!("compatible {w}\n")),
                None => ok("incompatible\n".to_string()),
            }
        }
        AdCmd::Decode { x, fam, bound } => {
            let f = family(&fam, ctx)?;
            let x = adcoding::parse_indices(&x)?;
            let bound = bound.unwrap_or_else(|| adcoding::commit_bound(f.horizon()));
            ok(format!("{}\n", fmt_list(&adcoding::decode_predicate(&x, &f, bound))))
        }
    }
}

/// One library operation and a CLI invocation that reaches it.
#[derive(Debug, Clone, Copy)]
pub struct Entry {
    pub op: &'static str,
    pub args: &'static [&'static str],
    pub stdin: &'static str,
    pub exit: i32,
}

const TREE3: &str = "root 3\nedge 0 3\nedge 1 3\nedge 2 3\nedge 0' 1\nedge 0'' 2\nedge 1' 2\nedge 0''' 1'\n";
const CYCLIC: &str = "root r\nedge a r\nedge b a\nedge a b\n";
const QUOTIENT3: &str = "root 3\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n";
const CHAIN: &str = "cond t\ncond b\nleq b t\ntop t\n";

macro_rules! entry {
    ($op:expr, [$($a:expr),*]) => {
        entry!($op, [$($a),*], "", 0)
    };
    ($op:expr, [$($a:expr),*], $stdin:expr) => {
        entry!($op, [$($a),*], $stdin, 0)
    };
    ($op:expr, [$($a:expr),*], $stdin:expr, $exit:expr) => {
        Entry { op: $op, args: &["stf", $($a),*], stdin: $stdin, exit: $exit }
    };
}

/// Every library operation with a command line reaching it. File arguments
/// are relative to the package root.
pub const REGISTRY: &[Entry] = &[
    entry!("hfset::parse", ["hf", "eval", "{{},{}}"]),
    entry!("HfSet::rank", ["hf", "rank", "{{{}}}"]),
    entry!("HfSet::tc_single", ["hf", "tc", "{{{}}}"]),
    entry!("HfSet::serial_key", ["hf", "key", "{{},{{}}}"]),
    entry!("HfSet::ordinal", ["hf", "ordinal", "3"]),
    entry!("HfSet::kpair", ["hf", "pair", "{}", "{{}}"]),
    entry!("HfSet::contains", ["hf", "contains", "{{}}", "{}"]),
    entry!("HfSet::union", ["hf", "union", "{{{}}}"]),
    entry!("HfSet::cumulative", ["hf", "cumulative", "2"]),
    entry!("codec::encode", ["code", "encode", "{{}}"]),
    entry!("CodingTree::decode", ["code", "decode"], TREE3),
    entry!("codec::validate", ["code", "validate"], TREE3),
    entry!("codec::validate (invalid)", ["code", "validate"], CYCLIC, 1),
    entry!(
        "codec::is_isomorphic",
        ["code", "iso", "tests/data/tree3.cp", "tests/data/figure_same_level.cp"]
    ),
    entry!("CodingTree::quotient", ["code", "quotient"], TREE3),
    entry!("QuotientStructure::collapse", ["code", "collapse"], QUOTIENT3),
    entry!("CodingTree::level_of", ["code", "level", "0'''"], TREE3),
    entry!("CodingTree::subtree", ["code", "subtree", "2"], TREE3),
    entry!("CodingTree::canonical_form", ["code", "canon"], TREE3),
    entry!("codec::class_encode", ["code", "class-encode", "{}", "{{}}"]),
    entry!(
        "codec::codes_membership",
        ["code", "member", "tests/data/two.cp", "tests/data/tree3.cp"]
    ),
    entry!(
        "codec::codes_equality",
        ["code", "equal", "tests/data/tree3.cp", "tests/data/tree3.cp"]
    ),
    entry!(
        "treealg::pair_tree",
        ["tree", "pair", "tests/data/two.cp", "tests/data/tree3.cp"]
    ),
    entry!("treealg::union_tree", ["tree", "union"], TREE3),
    entry!(
        "treealg::comprehension_tree",
        ["tree", "comprehend", "--pred", "nonempty"],
        TREE3
    ),
    entry!("treealg::function_tree", ["tree", "func"], "root n0\nedge n1 n0\n"),
    entry!("treealg::wellorder_tree", ["tree", "wellorder"], TREE3),
    entry!(
        "forcing::generic_filter",
        ["force", "generic", "--bound", "2", "--dense", "00,01,10,11"]
    ),
    entry!(
        "forcing::meet_dense",
        ["force", "meet", "--bound", "2", "--dense", "00,01,1"]
    ),
    entry!(
        "forcing::is_dense",
        ["force", "dense", "--poset", "-", "--set", "b"],
        CHAIN
    ),
    entry!(
        "forcing::pretame_check",
        ["force", "pretame", "--poset", "-", "--dense", "b"],
        CHAIN
    ),
    entry!(
        "forcing::interpret",
        ["force", "interpret", "--bound", "2", "--at", "10", "[(check({}), 1)]"]
    ),
    entry!("forcing::check_name", ["force", "check", "--bound", "1", "{{}}"]),
    entry!(
        "forcing::eval_at",
        ["force", "eval", "--bound", "2", "--at", "10", "[(check({}), 1)]"]
    ),
    entry!(
        "forcing::forces_membership",
        [
            "force",
            "decide",
            "--bound",
            "3",
            "--at",
            "0",
            "[(check({}), 1)]",
            "[([(check({}), 1)], top)]"
        ]
    ),
    entry!(
        "forcing::semantic_forces",
        ["force", "decide", "--bound", "3", "--kind", "equal", "check({})", "[]"]
    ),
    entry!(
        "forcing::definability_grid",
        ["force", "grid", "--bound", "2", "--rank", "1"]
    ),
    entry!(
        "adcoding::family",
        ["adcode", "family", "--indices", "2", "--horizon", "8"]
    ),
    entry!(
        "adcoding::simulate",
        [
            "adcode",
            "simulate",
            "--target",
            "0",
            "--indices",
            "2",
            "--horizon",
            "32",
            "--seed",
            "1"
        ]
    ),
    entry!("adcoding::code_segment", ["adcode", "code", "01"]),
    entry!(
        "adcoding::ad_transform",
        ["adcode", "transform", "--set", "0", "--horizon", "1"]
    ),
    entry!(
        "adcoding::q_leq",
        ["adcode", "leq", "001:0", ":0", "--indices", "2", "--horizon", "8"]
    ),
    entry!(
        "adcoding::q_compatible",
        ["adcode", "compat", "01:0", "01:1", "--indices", "2", "--horizon", "8"]
    ),
    entry!(
        "adcoding::decode_predicate",
        ["adcode", "decode", "--x", "16", "--indices", "2", "--horizon", "64"]
    ),
];
