//! Exhaustive verification over a bounded box of instances.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{facets_oracle, facets_theorem, height, primary_decomposition};
use crate::duality::{
    alexander_dual, dual_split_theorem, is_vertex_splittable, vertex_splitting_rooted_at, QuotientOrder, SplitTree,
};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::Monomial;
use crate::powers::{
    classify_ntf, generator_outside_prime_squares, ntf_condition, product_symbolic_sides, restriction_identity,
};
use crate::relation_graph::{
    analytic_spread_borel, block_structure_check, linear_relation_graph, linear_relation_graph_naive,
};
use crate::spread::{borel_closure_oracle, borel_gens, is_t_strongly_stable, spread_tuples, BorelInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Primdec,
    Height,
    Dual,
    Split,
    Linquot,
    Ntf,
    Fm,
    Blocks,
    Spread,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Primdec,
        Check::Height,
        Check::Dual,
        Check::Split,
        Check::Linquot,
        Check::Ntf,
        Check::Fm,
        Check::Blocks,
        Check::Spread,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Primdec => "primdec",
            Check::Height => "height",
            Check::Dual => "dual",
            Check::Split => "split",
            Check::Linquot => "linquot",
            Check::Ntf => "ntf",
            Check::Fm => "fm",
            Check::Blocks => "blocks",
            Check::Spread => "spread",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::invalid(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_max: usize,
    pub d_max: usize,
    pub t_max: usize,
    pub k_max: u32,
    /// Largest `n` for the checks that run associated prime searches
    /// (`fm` and the maximal-ideal part of `blocks`).
    pub oracle_n_max: usize,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_max: 8,
            d_max: 4,
            t_max: 3,
            k_max: 2,
            oracle_n_max: 6,
            checks: Check::ALL.to_vec(),
            seed: 0x5eed,
            timings: false,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.n_max < 2 || self.d_max < 2 || self.t_max < 1 || self.k_max < 1 {
            return Err(Error::invalid("sweep bounds need n_max, d_max >= 2 and t_max, k_max >= 1"));
        }
        if self.n_max > 16 {
            return Err(Error::Unsupported(format!("n_max = {} is beyond the sweep's range", self.n_max)));
        }
        Ok(())
    }
}

/// All instances in the box, ordered by `n`, then `d`, then `t`
/// lexicographically, then `u` lexicographically.
pub fn enumerate_instances(cfg: &SweepConfig) -> Vec<BorelInstance> {
    let mut out = Vec::new();
    for n in 2..=cfg.n_max {
        for d in 2..=cfg.d_max {
            let mut t = vec![1usize; d - 1];
            loop {
                for tuple in spread_tuples(1, &t, &vec![n; d]) {
                    if tuple[d - 1] == n {
                        out.push(BorelInstance::new(n, &t, &tuple).expect("enumerated tuples are valid"));
                    }
                }
                if !next_vector(&mut t, cfg.t_max) {
                    break;
                }
            }
        }
    }
    out
}

/// Lexicographic successor in `[1, max]^len`; false after the last vector.
fn next_vector(t: &mut [usize], max: usize) -> bool {
    for pos in (0..t.len()).rev() {
        if t[pos] < max {
            t[pos] += 1;
            t[pos + 1..].fill(1);
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Skip,
    Fail {
        message: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        certificate: Option<serde_json::Value>,
    },
    Resource {
        message: String,
    },
}

fn fail(message: impl Into<String>) -> Outcome {
    Outcome::Fail { message: message.into(), certificate: None }
}

fn outcome_of(r: Result<Outcome>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(Error::Resource(m)) => Outcome::Resource { message: m },
        Err(e) => fail(e.to_string()),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub resource: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub check: Check,
    pub instance: BorelInstance,
    /// Re-runnable `{"n":..,"t":[..],"u":[..]}`.
    pub literal: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub instances: usize,
    pub tallies: BTreeMap<Check, Tally>,
    /// Failures and resource hits, in enumeration order.
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<BTreeMap<Check, f64>>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn tally(&self, check: Check) -> Tally {
        self.tallies.get(&check).cloned().unwrap_or_default()
    }
}

struct Ctx<'a> {
    cfg: &'a SweepConfig,
    limits: &'a Limits,
    index: usize,
}

fn check_primdec(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let ideal = borel_gens(inst);
    let theorem = facets_theorem(inst)?;
    let oracle = facets_oracle(&ideal, ctx.limits)?;
    if theorem != oracle {
        return Ok(fail(format!("theorem facets {:?} vs oracle {:?}", theorem.facets, oracle.facets)));
    }
    let dec = primary_decomposition(inst, ctx.limits)?;
    let ass: Vec<_> = ideal.associated_primes()?.into_iter().collect();
    if ass != dec.components {
        return Ok(fail("associated primes differ from the components"));
    }
    Ok(Outcome::Pass)
}

fn check_height(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    height(inst, ctx.limits)?;
    Ok(Outcome::Pass)
}

fn check_dual(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let ideal = borel_gens(inst);
    let dual = alexander_dual(&ideal, ctx.limits)?;
    if alexander_dual(&dual, ctx.limits)? != ideal {
        return Ok(fail("double dual differs from the ideal"));
    }
    Ok(Outcome::Pass)
}

fn rooted_tree(inst: &BorelInstance, ctx: &Ctx) -> Result<(MonomialIdeal, Option<SplitTree>)> {
    let dual = alexander_dual(&borel_gens(inst), ctx.limits)?;
    let tree = vertex_splitting_rooted_at(&dual, 1);
    Ok((dual, tree))
}

fn check_split(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let split = dual_split_theorem(inst, ctx.limits)?;
    let (dual, tree) = rooted_tree(inst, ctx)?;
    let Some(tree) = tree else {
        return Ok(fail("dual has no vertex splitting rooted at x1"));
    };
    tree.verify(&dual)?;
    let n = inst.n();
    match &tree {
        SplitTree::Node { var: 1, i1, i2 } if i1.ideal(n) == split.deletion_dual && i2.ideal(n) == split.link_dual => {}
        _ => return Ok(fail("root split differs from the predicted parts")),
    }
    if is_vertex_splittable(&dual).is_none() {
        return Ok(fail("unrestricted splitting search found nothing"));
    }
    Ok(Outcome::Pass)
}

fn check_linquot(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let (dual, tree) = rooted_tree(inst, ctx)?;
    let Some(tree) = tree else {
        return Ok(fail("dual has no vertex splitting rooted at x1"));
    };
    let order = QuotientOrder { order: tree.induced_order(inst.n()) };
    match order.verify(&dual) {
        Ok(()) => Ok(Outcome::Pass),
        Err(pos) => Ok(fail(format!("split-induced order fails at position {pos}"))),
    }
}

fn check_ntf(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let verdict = classify_ntf(inst, ctx.cfg.k_max.max(2), ctx.limits)?;
    if verdict.satisfied != ntf_condition(inst) {
        return Ok(fail("verdict disagrees with the criterion"));
    }
    if let Some(cert) = &verdict.certificate {
        if let Err(e) = cert.verify(ctx.limits) {
            return Ok(Outcome::Fail { message: e.to_string(), certificate: serde_json::to_value(cert).ok() });
        }
    }
    if verdict.satisfied {
        let dec = primary_decomposition(inst, ctx.limits)?;
        if !generator_outside_prime_squares(inst, &dec) {
            return Ok(fail("u lies in the square of an associated prime"));
        }
        if restriction_identity(inst) == Some(false) {
            return Ok(fail("restriction to 1 - e_{j_i} is not the predicted Borel ideal"));
        }
    }
    Ok(Outcome::Pass)
}

/// A monomial with exponents in `0..=2`, not equal to 1.
pub fn random_monomial(rng: &mut impl Rng, n: usize) -> Monomial {
    loop {
        let exps: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if exps.iter().any(|&e| e > 0) {
            return Monomial::new(exps).expect("n within range");
        }
    }
}

fn check_fm(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    if inst.n() > ctx.cfg.oracle_n_max {
        return Ok(Outcome::Skip);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed ^ (ctx.index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let u = random_monomial(&mut rng, inst.n());
    let j = borel_gens(inst);
    for k in 1..=ctx.cfg.k_max.min(ctx.limits.max_power) {
        let (lhs, rhs) = product_symbolic_sides(&u, &j, k, ctx.limits)?;
        if lhs != rhs {
            return Ok(fail(format!("(uJ)^({k}) != u^{k} J^({k}) for u = {u}")));
        }
    }
    Ok(Outcome::Pass)
}

fn check_blocks(inst: &BorelInstance, ctx: &Ctx) -> Result<Outcome> {
    let report = block_structure_check(inst, ctx.cfg.k_max.min(2), ctx.cfg.oracle_n_max, ctx.limits)?;
    if report.passed() {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail { message: report.violations.join("; "), certificate: serde_json::to_value(&report).ok() })
    }
}

fn check_spread(inst: &BorelInstance, _ctx: &Ctx) -> Result<Outcome> {
    let ideal = borel_gens(inst);
    let closure = borel_closure_oracle(inst.n(), &[inst.generator()], inst.t())?;
    if closure != ideal || !is_t_strongly_stable(&ideal, inst.t())? {
        return Ok(fail("generators differ from the exchange closure of u"));
    }
    let g = linear_relation_graph(&ideal);
    if g != linear_relation_graph_naive(&ideal) {
        return Ok(fail("relation graph differs from the pairwise scan"));
    }
    let spread = analytic_spread_borel(inst)?;
    if (spread.value == 1) != g.edges.is_empty() || g.edges.is_empty() != ideal.is_principal() {
        return Ok(fail("analytic spread 1, empty graph and principality disagree"));
    }
    Ok(Outcome::Pass)
}

fn run_check(check: Check, inst: &BorelInstance, ctx: &Ctx) -> Outcome {
    let r = match check {
        Check::Primdec => check_primdec(inst, ctx),
        Check::Height => check_height(inst, ctx),
        Check::Dual => check_dual(inst, ctx),
        Check::Split => check_split(inst, ctx),
        Check::Linquot => check_linquot(inst, ctx),
        Check::Ntf => check_ntf(inst, ctx),
        Check::Fm => check_fm(inst, ctx),
        Check::Blocks => check_blocks(inst, ctx),
        Check::Spread => check_spread(inst, ctx),
    };
    outcome_of(r)
}

/// Runs the selected checks on every instance in parallel; results are
/// aggregated in enumeration order, so the report is deterministic apart
/// from the optional timings.
pub fn run_sweep(cfg: &SweepConfig, limits: &Limits) -> Result<SweepReport> {
    cfg.validate()?;
    let mut checks = cfg.checks.clone();
    checks.sort_unstable();
    checks.dedup();
    let instances = enumerate_instances(cfg);
    let results: Vec<Vec<(Check, Outcome, f64)>> = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| {
            let ctx = Ctx { cfg, limits, index };
            checks
                .iter()
                .map(|&c| {
                    let start = Instant::now();
                    let o = run_check(c, inst, &ctx);
                    (c, o, start.elapsed().as_secs_f64())
                })
                .collect()
        })
        .collect();

    let mut tallies: BTreeMap<Check, Tally> = checks.iter().map(|&c| (c, Tally::default())).collect();
    let mut seconds: BTreeMap<Check, f64> = BTreeMap::new();
    let mut failures = Vec::new();
    for (index, (inst, per)) in instances.iter().zip(results).enumerate() {
        for (check, outcome, secs) in per {
            *seconds.entry(check).or_default() += secs;
            let t = tallies.get_mut(&check).expect("selected check");
            match &outcome {
                Outcome::Pass => t.passed += 1,
                Outcome::Skip => t.skipped += 1,
                Outcome::Fail { .. } => t.failed += 1,
                Outcome::Resource { .. } => t.resource += 1,
            }
            if matches!(outcome, Outcome::Fail { .. } | Outcome::Resource { .. }) {
                failures.push(Failure { index, check, instance: inst.clone(), literal: inst.literal(), outcome });
            }
        }
    }
    Ok(SweepReport {
        config: cfg.clone(),
        instances: instances.len(),
        tallies,
        failures,
        seconds: cfg.timings.then_some(seconds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize, d: usize, t: usize) -> SweepConfig {
        SweepConfig { n_max: n, d_max: d, t_max: t, ..SweepConfig::default() }
    }

    fn summary(cfg: &SweepConfig) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        enumerate_instances(cfg).iter().map(|i| (i.n(), i.t().as_slice().to_vec(), i.u().to_vec())).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            summary(&small(3, 2, 1)),
            vec![(2, vec![1], vec![1, 2]), (3, vec![1], vec![1, 3]), (3, vec![1], vec![2, 3])]
        );
        assert_eq!(summary(&small(2, 2, 1)), vec![(2, vec![1], vec![1, 2])]);
    }

    #[test]
    fn enumeration_monotone() {
        let base = enumerate_instances(&small(5, 3, 2)).len();
        assert!(enumerate_instances(&small(6, 3, 2)).len() >= base);
        assert!(enumerate_instances(&small(5, 4, 2)).len() >= base);
        assert!(enumerate_instances(&small(5, 3, 3)).len() >= base);
        // non-monotone spread vectors are present
        assert!(enumerate_instances(&small(6, 3, 2)).iter().any(|i| i.t().as_slice() == [1, 2]));
    }

    #[test]
    fn small_sweep_passes() {
        let cfg = SweepConfig { n_max: 5, d_max: 3, t_max: 2, ..SweepConfig::default() };
        let r = run_sweep(&cfg, &Limits::default()).unwrap();
        assert!(r.passed(), "{:#?}", r.failures);
        assert!(r.seconds.is_none());
        assert_eq!(r.tally(Check::Primdec).passed, r.instances);
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }
}
