//! Command-line front end. [`run_command`] does all the work and returns the
//! exit status with both output streams, so the binary is a thin wrapper and
//! tests can drive it in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use vspread::decomposition::{facets_oracle, facets_theorem, height, primary_decomposition, PrimaryDecomposition};
use vspread::duality::{
    alexander_dual, dual_split_theorem, is_vertex_splittable, linear_quotients_order, vertex_splitting_rooted_at,
    SplitTree,
};
use vspread::powers::{
    classify_ntf, ordinary_power, symbolic_power_from, symbolic_power_of_ideal, ComponentSource, NtfVerdict,
};
use vspread::relation_graph::{
    analytic_spread_borel, analytic_spread_linres, linear_relation_graph, LinearRelationsHypothesis, RelationGraph,
};
use vspread::spread::validate_instance;
use vspread::sweep::{run_sweep, Check, Outcome, SweepConfig, SweepReport};
use vspread::{borel_gens, BorelInstance, Error, Limits, Monomial, MonomialIdeal, PrimeSupport};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "vspread", version, about = "Principal vector-spread Borel ideals")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
struct InstanceArgs {
    /// Number of variables (defaults to the last entry of --u).
    #[arg(long)]
    n: Option<usize>,
    /// Gap vector, comma separated, e.g. 2,1.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Indices of the Borel generator, comma separated, e.g. 2,5,8.
    #[arg(long)]
    u: Option<String>,
    /// Instance as JSON `{"n":8,"t":[2,1],"u":[2,5,8]}`, or a path to such a file.
    #[arg(long, conflicts_with_all = ["n", "t", "u"])]
    instance: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct InputArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Arbitrary ideal as JSON `{"n":3,"gens":[[1,2],[2,3]]}`, or a path.
    #[arg(long, conflicts_with_all = ["n", "t", "u", "instance"])]
    ideal: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Minimal generators of B_t(u).
    Gens(InstanceArgs),
    /// Minimal primary decomposition.
    Primdec {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Use the brute-force facet scan and cross-check it.
        #[arg(long)]
        oracle: bool,
    },
    /// Height of B_t(u).
    Height(InstanceArgs),
    /// Alexander dual of B_t(u) or of a squarefree ideal.
    Dual(InputArgs),
    /// Vertex splitting tree: of B_t(u)^∨ rooted at x1, or of the given ideal.
    Split(InputArgs),
    /// Order with linear quotients: of B_t(u)^∨, or of the given ideal.
    Linquot(InputArgs),
    /// Ordinary power I^k.
    Power {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: u32,
    },
    /// Symbolic power I^(k).
    Symbolic {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: u32,
        /// Take the primes from the associated prime search (instances only).
        #[arg(long)]
        oracle: bool,
    },
    /// Normally torsionfree classification with evidence.
    Ntf {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Linear relation graph and analytic spread.
    Lrg {
        #[command(flatten)]
        input: InputArgs,
        /// Accept the linear-relations hypothesis for an arbitrary --ideal.
        #[arg(long)]
        assume_linear_relations: bool,
    },
    /// Exhaustive verification over a box of instances.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 4)]
    d_max: usize,
    #[arg(long, default_value_t = 3)]
    t_max: usize,
    #[arg(long, default_value_t = 2)]
    k_max: u32,
    #[arg(long, default_value_t = 6)]
    oracle_n_max: usize,
    /// Comma-separated subset of primdec,height,dual,split,linquot,ntf,fm,blocks,spread.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Include per-check wall time (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed invocation: exit code plus diagnostic, and a payload for
/// property violations.
struct Failure {
    code: i32,
    message: String,
    payload: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::Consistency(_) => EXIT_VIOLATION,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string(), payload: None }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into(), payload: None }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                CommandOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let json = cli.json;
    let result = Limits::from_env().map_err(Failure::from).and_then(|limits| dispatch(&cli.cmd, &limits));
    match result {
        Ok(Rendered { code, value, text }) => {
            let stdout = if json { to_json(value) } else { text };
            CommandOutput { code, stdout, stderr: String::new() }
        }
        Err(f) => {
            let stdout = match (&f.payload, json) {
                (Some(p), true) => to_json(p.clone()),
                (Some(p), false) => format!("{}\n", serde_json::to_string_pretty(p).expect("plain data")),
                (None, _) => String::new(),
            };
            CommandOutput { code: f.code, stdout, stderr: format!("error: {}\n", f.message) }
        }
    }
}

fn to_json(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut s = serde_json::to_string_pretty(&value).expect("plain data");
    s.push('\n');
    s
}

struct Rendered {
    code: i32,
    value: Value,
    text: String,
}

fn ok(value: Value, text: String) -> Result<Rendered, Failure> {
    Ok(Rendered { code: EXIT_OK, value, text })
}

fn read_source(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| invalid(format!("cannot read {arg}: {e}")))
    }
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| invalid(format!("--{what}: `{x}` is not an integer"))))
        .collect()
}

fn instance_of(a: &InstanceArgs) -> Result<BorelInstance, Failure> {
    if let Some(src) = &a.instance {
        let text = read_source(src)?;
        let mut v: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("--instance: {e}")))?;
        // a saved transcript carries its instance under a key
        if let Some(inner) = v.get_mut("instance") {
            v = inner.take();
        }
        return serde_json::from_value(v).map_err(|e| invalid(format!("--instance: {e}")));
    }
    let (Some(t), Some(u)) = (&a.t, &a.u) else {
        return Err(invalid("give --t and --u (and optionally --n), or --instance"));
    };
    let t: Vec<i64> = parse_list("t", t)?;
    let u: Vec<usize> = parse_list("u", u)?;
    let n = a.n.unwrap_or_else(|| u.last().copied().unwrap_or(0));
    Ok(validate_instance(n, &t, &u)?)
}

enum Input {
    Instance(BorelInstance),
    Ideal(MonomialIdeal),
}

fn input_of(a: &InputArgs) -> Result<Input, Failure> {
    match &a.ideal {
        Some(src) => {
            let text = read_source(src)?;
            let ideal = serde_json::from_str(&text).map_err(|e| invalid(format!("--ideal: {e}")))?;
            Ok(Input::Ideal(ideal))
        }
        None => Ok(Input::Instance(instance_of(&a.inst)?)),
    }
}

fn ideal_text(label: &str, ideal: &MonomialIdeal) -> String {
    let mut s = format!("{label:<12} {} generators\n", ideal.len());
    for g in ideal.gens() {
        let _ = writeln!(s, "{:<12} {g}", "");
    }
    s
}

fn header(inst: &BorelInstance) -> String {
    format!("{:<12} {inst}\n", "instance")
}

fn comps_json(dec: &PrimaryDecomposition) -> Value {
    json!(dec.components.iter().map(|c| c.vars().to_vec()).collect::<Vec<_>>())
}

fn comps_text(comps: &[PrimeSupport]) -> String {
    let mut s = format!("{:<12} {}\n", "components", comps.len());
    for c in comps {
        let _ = writeln!(s, "{:<12} {c}", "");
    }
    s
}

fn dispatch(cmd: &Cmd, limits: &Limits) -> Result<Rendered, Failure> {
    match cmd {
        Cmd::Gens(a) => {
            let inst = instance_of(a)?;
            let gens = borel_gens(&inst);
            ok(
                json!({"command": "gens", "instance": inst, "count": gens.len(), "ideal": gens}),
                header(&inst) + &ideal_text("generators", &gens),
            )
        }
        Cmd::Primdec { inst, oracle } => primdec(&instance_of(inst)?, *oracle, limits),
        Cmd::Height(a) => {
            let inst = instance_of(a)?;
            let h = height(&inst, limits)?;
            ok(json!({"command": "height", "instance": inst, "height": h}), format!("{h}\n"))
        }
        Cmd::Dual(a) => {
            let (inst, ideal) = match input_of(a)? {
                Input::Instance(i) => {
                    let g = borel_gens(&i);
                    (Some(i), g)
                }
                Input::Ideal(g) => (None, g),
            };
            let dual = alexander_dual(&ideal, limits)?;
            let text = inst.as_ref().map(header).unwrap_or_default() + &ideal_text("dual", &dual);
            ok(json!({"command": "dual", "instance": inst, "ideal": ideal, "dual": dual}), text)
        }
        Cmd::Split(a) => split(input_of(a)?, limits),
        Cmd::Linquot(a) => {
            let (inst, target) = match input_of(a)? {
                Input::Instance(i) => {
                    let d = alexander_dual(&borel_gens(&i), limits)?;
                    (Some(i), d)
                }
                Input::Ideal(g) => (None, g),
            };
            let order = linear_quotients_order(&target, limits)?;
            let mut text = inst.as_ref().map(header).unwrap_or_default();
            match &order {
                Some(q) => {
                    let _ = writeln!(text, "{:<12} {} generators", "order", q.order.len());
                    for g in &q.order {
                        let _ = writeln!(text, "{:<12} {g}", "");
                    }
                }
                None => text.push_str("none\n"),
            }
            let order_json = order.map(|q| q.order.iter().map(Monomial::indices).collect::<Vec<_>>());
            ok(json!({"command": "linquot", "instance": inst, "ideal": target, "order": order_json}), text)
        }
        Cmd::Power { input, k } => {
            let (inst, ideal) = match input_of(input)? {
                Input::Instance(i) => {
                    let g = borel_gens(&i);
                    (Some(i), g)
                }
                Input::Ideal(g) => (None, g),
            };
            let p = ordinary_power(&ideal, *k, limits)?;
            let text = inst.as_ref().map(header).unwrap_or_default() + &ideal_text(&format!("I^{k}"), &p);
            ok(json!({"command": "power", "instance": inst, "k": k, "ideal": p}), text)
        }
        Cmd::Symbolic { input, k, oracle } => {
            let (inst, p) = match input_of(input)? {
                Input::Instance(i) => {
                    let source = if *oracle { ComponentSource::Oracle } else { ComponentSource::Theorem };
                    let p = symbolic_power_from(&i, *k, limits, source)?;
                    (Some(i), p)
                }
                Input::Ideal(g) => {
                    if g.is_zero() || g.is_unit() {
                        return Err(invalid("symbolic powers need a proper non-zero ideal"));
                    }
                    (None, symbolic_power_of_ideal(&g, *k, limits)?)
                }
            };
            let text = inst.as_ref().map(header).unwrap_or_default() + &ideal_text(&format!("I^({k})"), &p);
            ok(json!({"command": "symbolic", "instance": inst, "k": k, "ideal": p}), text)
        }
        Cmd::Ntf { inst, kmax } => {
            let inst = instance_of(inst)?;
            let v = classify_ntf(&inst, *kmax, limits)?;
            let text = header(&inst) + &ntf_text(&v);
            ok(json!({"command": "ntf", "instance": inst, "verdict": v}), text)
        }
        Cmd::Lrg { input, assume_linear_relations } => lrg(input_of(input)?, *assume_linear_relations),
        Cmd::Sweep(a) => sweep(a, limits),
    }
}

fn primdec(inst: &BorelInstance, oracle: bool, limits: &Limits) -> Result<Rendered, Failure> {
    let dec = primary_decomposition(inst, limits)?;
    if oracle {
        let found = facets_oracle(&borel_gens(inst), limits)?;
        let predicted = facets_theorem(inst)?;
        if found != predicted {
            return Err(Failure {
                code: EXIT_VIOLATION,
                message: format!("{}: oracle facets differ from the predicted facets", inst.literal()),
                payload: Some(json!({
                    "command": "primdec",
                    "instance": inst,
                    "predicted": predicted.facets,
                    "oracle": found.facets,
                })),
            });
        }
    }
    let method = if oracle { "oracle" } else { "theorem" };
    let text = header(inst) + &format!("{:<12} {method}\n", "method") + &comps_text(&dec.components);
    ok(json!({"command": "primdec", "instance": inst, "method": method, "components": comps_json(&dec)}), text)
}

fn tree_text(tree: &SplitTree, n: usize, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match tree {
        SplitTree::Node { var, i1, i2 } => {
            let _ = writeln!(out, "{pad}x{var} * I1 + I2  with I = {}", tree.ideal(n));
            tree_text(i1, n, depth + 1, out);
            tree_text(i2, n, depth + 1, out);
        }
        leaf => {
            let _ = writeln!(out, "{pad}leaf {}", leaf.ideal(n));
        }
    }
}

fn split(input: Input, limits: &Limits) -> Result<Rendered, Failure> {
    match input {
        Input::Instance(inst) => {
            let n = inst.n();
            let gens = borel_gens(&inst);
            let parts = dual_split_theorem(&inst, limits)?;
            let dual = alexander_dual(&gens, limits)?;
            let tree = vertex_splitting_rooted_at(&dual, 1).ok_or_else(|| Failure {
                code: EXIT_VIOLATION,
                message: format!("{}: dual has no vertex splitting rooted at x1", inst.literal()),
                payload: None,
            })?;
            let mut text = header(&inst);
            text += &ideal_text("generators", &gens);
            text += &ideal_text("deletion", &parts.deletion);
            text += &ideal_text("link", &parts.link);
            text += &ideal_text("dual", &dual);
            text += &ideal_text("I1", &parts.deletion_dual);
            text += &ideal_text("I2", &parts.link_dual);
            text.push_str("tree\n");
            tree_text(&tree, n, 1, &mut text);
            ok(
                json!({
                    "command": "split",
                    "instance": inst,
                    "ideal": gens,
                    "deletion": parts.deletion,
                    "link": parts.link,
                    "dual": dual,
                    "var": parts.var,
                    "i1": parts.deletion_dual,
                    "i2": parts.link_dual,
                    "tree": tree,
                }),
                text,
            )
        }
        Input::Ideal(ideal) => {
            let n = ideal.nvars();
            let tree = is_vertex_splittable(&ideal);
            let mut text = String::new();
            match &tree {
                Some(t) => tree_text(t, n, 0, &mut text),
                None => text.push_str("none\n"),
            }
            ok(json!({"command": "split", "ideal": ideal, "tree": tree}), text)
        }
    }
}

fn ntf_text(v: &NtfVerdict) -> String {
    let mut s = format!("{:<12} {}\n", "verdict", if v.satisfied { "satisfied" } else { "unsatisfied" });
    for c in &v.checks {
        let rel = if c.equal { "=" } else { "!=" };
        let _ = writeln!(
            s,
            "{:<12} I^{k} {rel} I^({k})  ({} vs {} generators)",
            "",
            c.ordinary_gens,
            c.symbolic_gens,
            k = c.k
        );
    }
    if let Some(c) = &v.certificate {
        let n = c.instance.n();
        let rn = c.reduced.n();
        let mono = |n: usize, idx: &[usize]| Monomial::from_indices(n, idx).map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(s, "{:<12} {}", "Q", c.q);
        let _ = writeln!(s, "{:<12} {} (x_i -> x_(i+{}))", "reduced", c.reduced, c.offset);
        let _ = writeln!(s, "{:<12} {} ({:?})", "witness", mono(rn, &c.w_reduced), c.source);
        let _ = writeln!(s, "{:<12} {}", "lifted", mono(n, &c.w_original));
        let _ =
            writeln!(s, "{:<12} in I^(2): {}, in I^2: {}", "", c.w_original_in_symbolic_square, c.w_original_in_square);
    }
    s
}

fn graph_json(g: &RelationGraph) -> Value {
    json!({
        "vertices": g.vertices,
        "edges": g.edges.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "components": g.components(),
        "equigenerated": g.equigenerated,
    })
}

fn lrg(input: Input, assume: bool) -> Result<Rendered, Failure> {
    let (inst, ideal, spread) = match input {
        Input::Instance(i) => {
            let s = analytic_spread_borel(&i)?;
            let g = borel_gens(&i);
            (Some(i), g, s)
        }
        Input::Ideal(g) => {
            if !assume {
                return Err(invalid("the analytic spread formula needs --assume-linear-relations for --ideal input"));
            }
            let s = analytic_spread_linres(&g, LinearRelationsHypothesis::Assumed)?;
            (None, g, s)
        }
    };
    let g = linear_relation_graph(&ideal);
    let mut text = inst.as_ref().map(header).unwrap_or_default();
    let _ = writeln!(text, "{:<12} {:?}", "vertices", g.vertices);
    let edges: Vec<String> = g.edges.iter().map(|(i, j)| format!("{{{i},{j}}}")).collect();
    let _ = writeln!(text, "{:<12} {}", "edges", edges.join(" "));
    let comps: Vec<String> = g.components().iter().map(|c| format!("{c:?}")).collect();
    let _ = writeln!(text, "{:<12} {}", "components", comps.join(" "));
    let _ = writeln!(text, "{:<12} {} = {} - {} + 1", "spread", spread.value, spread.r, spread.s);
    ok(json!({"command": "lrg", "instance": inst, "graph": graph_json(&g), "analytic_spread": spread}), text)
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = format!("{:<12} {}\n", "instances", r.instances);
    let _ = writeln!(s, "{:<10} {:>8} {:>8} {:>8} {:>8}", "check", "passed", "failed", "capped", "skipped");
    for (c, t) in &r.tallies {
        let _ = writeln!(s, "{:<10} {:>8} {:>8} {:>8} {:>8}", c.name(), t.passed, t.failed, t.resource, t.skipped);
    }
    if let Some(secs) = &r.seconds {
        for (c, t) in secs {
            let _ = writeln!(s, "{:<10} {t:.3}s", c.name());
        }
    }
    for f in &r.failures {
        let msg = match &f.outcome {
            Outcome::Fail { message, .. } | Outcome::Resource { message } => message.as_str(),
            _ => "",
        };
        let _ = writeln!(s, "{} {} {msg}", f.check, f.literal);
    }
    s
}

fn sweep(a: &SweepArgs, limits: &Limits) -> Result<Rendered, Failure> {
    let checks = match &a.checks {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()?,
        None => Check::ALL.to_vec(),
    };
    let cfg = SweepConfig {
        n_max: a.n_max,
        d_max: a.d_max,
        t_max: a.t_max,
        k_max: a.k_max,
        oracle_n_max: a.oracle_n_max,
        checks,
        seed: a.seed,
        timings: a.timings,
    };
    let report = run_sweep(&cfg, limits)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    let mut value = serde_json::to_value(&report).expect("plain data");
    value["command"] = json!("sweep");
    Ok(Rendered { code, text: sweep_text(&report), value })
}
