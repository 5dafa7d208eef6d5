//! The linear relation graph of an equigenerated monomial ideal and the
//! analytic spread formula `ℓ(I) = r - s + 1`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::{Monomial, PrimeSupport, VarSet};
use crate::powers::{ntf_condition, ordinary_power};
use crate::spread::{blocks, borel_gens, BorelInstance};

/// `Γ`: `{i, j}` is an edge when `x_i u_k = x_j u_l` for generators `u_k, u_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationGraph {
    pub n: usize,
    pub vertices: VarSet,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// False when the input had generators of different degrees.
    pub equigenerated: bool,
}

impl RelationGraph {
    fn from_edges(n: usize, edges: BTreeSet<(usize, usize)>, equigenerated: bool) -> Self {
        let mut vertices = VarSet::EMPTY;
        for &(i, j) in &edges {
            vertices.insert(i);
            vertices.insert(j);
        }
        RelationGraph { n, vertices, edges: edges.into_iter().collect(), equigenerated }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let e = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VarSet> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: HashMap<usize, VarSet> = HashMap::new();
        for v in self.vertices.iter() {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().insert(v);
        }
        let mut out: Vec<VarSet> = groups.into_values().collect();
        out.sort_by_key(|c| VarSet::min(*c));
        out
    }

    /// Whether the induced subgraph on `set` is complete.
    pub fn is_clique(&self, set: VarSet) -> bool {
        let v = set.to_vec();
        v.iter().enumerate().all(|(a, &i)| v[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }
}

/// Builds `Γ` by grouping generators under the keys `g / x_v`: two variables
/// sharing a key are joined.
pub fn linear_relation_graph(ideal: &MonomialIdeal) -> RelationGraph {
    let mut groups: HashMap<Monomial, Vec<usize>> = HashMap::new();
    for g in ideal.gens() {
        for v in g.support().iter() {
            let x = Monomial::var(ideal.nvars(), v).expect("variable in range");
            groups.entry(g.div(&x).expect("x_v divides g")).or_default().push(v);
        }
    }
    let mut edges = BTreeSet::new();
    for vars in groups.values() {
        for (a, &i) in vars.iter().enumerate() {
            for &j in &vars[a + 1..] {
                if i != j {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    RelationGraph::from_edges(ideal.nvars(), edges, ideal.is_equigenerated())
}

/// The same graph by testing `x_i u_k = x_j u_l` over all generator pairs
/// and all variable pairs.
pub fn linear_relation_graph_naive(ideal: &MonomialIdeal) -> RelationGraph {
    let n = ideal.nvars();
    let vars: Vec<Monomial> = (1..=n).map(|i| Monomial::var(n, i).expect("in range")).collect();
    let mut edges = BTreeSet::new();
    for uk in ideal.gens() {
        for ul in ideal.gens() {
            for i in 1..=n {
                for j in i + 1..=n {
                    if vars[i - 1].mul_unchecked(uk) == vars[j - 1].mul_unchecked(ul) {
                        edges.insert((i, j));
                    }
                }
            }
        }
    }
    RelationGraph::from_edges(n, edges, ideal.is_equigenerated())
}

/// Why `ℓ(I) = r - s + 1` may be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearRelationsHypothesis {
    /// `B_t(u)` has a linear resolution, hence linear relations.
    BorelLinearResolution,
    /// Asserted by the caller for an arbitrary ideal.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticSpread {
    pub value: usize,
    /// `|V(Γ)|`.
    pub r: usize,
    /// Number of connected components of `Γ`.
    pub s: usize,
    pub hypothesis: LinearRelationsHypothesis,
}

/// `ℓ(I) = r - s + 1`; the empty graph gives 1.
pub fn analytic_spread_linres(ideal: &MonomialIdeal, hypothesis: LinearRelationsHypothesis) -> Result<AnalyticSpread> {
    if ideal.is_zero() || !ideal.is_equigenerated() {
        return Err(Error::Precondition(format!("analytic spread formula needs equigenerated input, got {ideal}")));
    }
    let g = linear_relation_graph(ideal);
    let r = g.vertices.len();
    let s = g.components().len();
    Ok(AnalyticSpread { value: r - s + 1, r, s, hypothesis })
}

pub fn analytic_spread_borel(inst: &BorelInstance) -> Result<AnalyticSpread> {
    analytic_spread_linres(&borel_gens(inst), LinearRelationsHypothesis::BorelLinearResolution)
}

/// Outcome of the block checks. Entries that do not apply are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub criterion: bool,
    /// `|B_i| ≥ 2 ⟺ B_i ⊆ V(Γ)` and the induced graph on such a block is complete.
    pub blocks_in_graph: bool,
    pub blocks_disjoint: Option<bool>,
    pub no_cross_edges: Option<bool>,
    pub components_are_blocks: Option<bool>,
    pub spread_below_n: Option<bool>,
    /// `𝔪 ∉ Ass(I^k)` for `k = 1..=k_max`; skipped above the oracle size.
    pub maximal_ideal_not_associated: Option<bool>,
    pub violations: Vec<String>,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the block structure of `Γ` for `B_t(u)`. The associated prime
/// search on `I^k` only runs when `n ≤ oracle_n`.
pub fn block_structure_check(
    inst: &BorelInstance,
    k_max: u32,
    oracle_n: usize,
    limits: &Limits,
) -> Result<BlockReport> {
    let n = inst.n();
    let ideal = borel_gens(inst);
    let g = linear_relation_graph(&ideal);
    let bl = blocks(inst);
    let mut violations = Vec::new();

    let mut blocks_in_graph = true;
    for r in 0..bl.len() {
        let set = bl.set(r);
        let big = bl.size(r) >= 2;
        if big != set.is_subset(g.vertices) || (big && !g.is_clique(set)) {
            blocks_in_graph = false;
            violations.push(format!("block B_{} = {set:?} vs vertex set {:?}", r + 1, g.vertices));
        }
    }

    let criterion = ntf_condition(inst);
    let mut report = BlockReport {
        criterion,
        blocks_in_graph,
        blocks_disjoint: None,
        no_cross_edges: None,
        components_are_blocks: None,
        spread_below_n: None,
        maximal_ideal_not_associated: None,
        violations: Vec::new(),
    };
    if criterion {
        let sets: Vec<VarSet> = (0..bl.len()).map(|r| bl.set(r)).collect();
        let disjoint =
            sets.iter().enumerate().all(|(a, p)| sets[a + 1..].iter().all(|q| p.intersection(*q).is_empty()));
        let block_of = |v: usize| sets.iter().position(|s| s.contains(v));
        let cross = g.edges.iter().all(|&(i, j)| block_of(i).is_some() && block_of(i) == block_of(j));
        let expected: BTreeSet<VarSet> = (0..bl.len()).filter(|&r| bl.size(r) >= 2).map(|r| bl.set(r)).collect();
        let found: BTreeSet<VarSet> = g.components().into_iter().collect();
        let comps = expected == found;
        let spread = analytic_spread_borel(inst)?;
        let below = ideal.is_principal() || spread.value < n;
        for (ok, what) in [
            (disjoint, "blocks overlap"),
            (cross, "edge joins distinct blocks"),
            (comps, "components differ from the blocks"),
            (below, "analytic spread is not below n"),
        ] {
            if !ok {
                violations.push(what.to_string());
            }
        }
        report.blocks_disjoint = Some(disjoint);
        report.no_cross_edges = Some(cross);
        report.components_are_blocks = Some(comps);
        report.spread_below_n = Some(below);

        if n <= oracle_n {
            let m = PrimeSupport::new(VarSet::full(n))?;
            let mut ok = true;
            for k in 1..=k_max {
                if ordinary_power(&ideal, k, limits)?.associated_primes()?.contains(&m) {
                    ok = false;
                    violations.push(format!("maximal ideal associated to I^{k}"));
                }
            }
            report.maximal_ideal_not_associated = Some(ok);
        }
    }
    report.violations = violations;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, t: &[usize], u: &[usize]) -> BorelInstance {
        BorelInstance::new(n, t, u).unwrap()
    }

    #[test]
    fn small_graphs() {
        let p = MonomialIdeal::from_index_lists(3, &[&[1, 3]]).unwrap();
        let g = linear_relation_graph(&p);
        assert!(g.edges.is_empty() && g.vertices.is_empty());
        assert_eq!(analytic_spread_linres(&p, LinearRelationsHypothesis::Assumed).unwrap().value, 1);

        let tri = MonomialIdeal::from_index_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let g = linear_relation_graph(&tri);
        assert_eq!(g.edges, vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(g, linear_relation_graph_naive(&tri));
        let a = analytic_spread_linres(&tri, LinearRelationsHypothesis::Assumed).unwrap();
        assert_eq!((a.value, a.r, a.s), (3, 3, 1));
    }

    #[test]
    fn mixed_degrees_rejected() {
        let i = MonomialIdeal::from_index_lists(3, &[&[1], &[2, 3]]).unwrap();
        assert!(!linear_relation_graph(&i).equigenerated);
        assert!(matches!(analytic_spread_linres(&i, LinearRelationsHypothesis::Assumed), Err(Error::Precondition(_))));
    }

    #[test]
    fn example_blocks() {
        let l = Limits::default();
        let r = block_structure_check(&inst(8, &[2, 1], &[2, 5, 8]), 2, 6, &l).unwrap();
        assert!(r.passed() && r.blocks_in_graph && !r.criterion);

        let p = inst(6, &[2, 3], &[1, 3, 6]);
        let r = block_structure_check(&p, 2, 6, &l).unwrap();
        assert!(r.passed());
        assert!(linear_relation_graph(&borel_gens(&p)).vertices.is_empty());

        let r = block_structure_check(&inst(6, &[2, 2], &[2, 4, 6]), 2, 6, &l).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.maximal_ideal_not_associated, Some(true));
        let g = linear_relation_graph(&borel_gens(&inst(6, &[2, 2], &[2, 4, 6])));
        assert_eq!(g.edges, vec![(1, 2), (3, 4), (5, 6)]);
    }
}
