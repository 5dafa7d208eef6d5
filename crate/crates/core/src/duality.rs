//! Alexander duals, vertex splittings and linear quotients.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::decomposition::facets_oracle;
use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::{Monomial, PrimeSupport, VarSet};
use crate::spread::{borel_gens, borel_ideal_from, BorelInstance};

fn require_squarefree(ideal: &MonomialIdeal, what: &str) -> Result<()> {
    if ideal.is_squarefree() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} needs a squarefree ideal, got {ideal}")))
    }
}

/// `I^∨ = ∩_{g ∈ G(I)} P_{supp(g)}`.
///
/// By convention `(0)^∨ = S` and `S^∨ = (0)`, which keeps the involution and
/// the splitting formulas valid at the degenerate ends. When `n` is within
/// the oracle cap the result is cross-checked against the generators
/// `x_{[n] \ F}` over the facets `F` of the complex of `I`.
pub fn alexander_dual(ideal: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
    require_squarefree(ideal, "the Alexander dual")?;
    let n = ideal.nvars();
    if ideal.is_zero() {
        return Ok(MonomialIdeal::unit(n));
    }
    if ideal.is_unit() {
        return Ok(MonomialIdeal::zero(n));
    }
    let by_supports = dual_by_supports(ideal, limits)?;
    if n <= limits.oracle_max_vars {
        let by_facets = dual_by_facets(ideal, limits)?;
        if by_facets != by_supports {
            return Err(Error::consistency(format!(
                "dual of {ideal}: support intersection {by_supports} vs facet complements {by_facets}"
            )));
        }
    }
    Ok(by_supports)
}

/// First method: intersect the primes of the generator supports.
pub fn dual_by_supports(ideal: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
    let n = ideal.nvars();
    let mut acc = MonomialIdeal::unit(n);
    for g in ideal.gens() {
        let p = PrimeSupport::new(g.support())?;
        acc = acc.intersect_prime_power(p, 1);
        limits.check_generators(acc.len(), "Alexander dual")?;
    }
    Ok(acc)
}

/// Second method: complements of the facets found by the subset scan.
pub fn dual_by_facets(ideal: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
    let n = ideal.nvars();
    let facets = facets_oracle(ideal, limits)?;
    Ok(minimalize(n, facets.facets.iter().map(|f| Monomial::from_support(n, f.complement(n)))))
}

/// A certificate that an ideal is vertex splittable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitTree {
    Zero,
    Unit,
    Principal {
        generator: Monomial,
    },
    /// `I = x_var · I_1 + I_2`.
    Node {
        var: usize,
        i1: Box<SplitTree>,
        i2: Box<SplitTree>,
    },
}

impl SplitTree {
    /// The ideal this tree certifies, rebuilt from the leaves.
    pub fn ideal(&self, n: usize) -> MonomialIdeal {
        match self {
            SplitTree::Zero => MonomialIdeal::zero(n),
            SplitTree::Unit => MonomialIdeal::unit(n),
            SplitTree::Principal { generator } => minimalize(n, [generator.clone()]),
            SplitTree::Node { var, i1, i2 } => {
                let x = Monomial::var(n, *var).expect("variable in range");
                let left = i1.ideal(n).mul_monomial(&x).expect("same ring");
                left.sum(&i2.ideal(n)).expect("same ring")
            }
        }
    }

    pub fn root_var(&self) -> Option<usize> {
        match self {
            SplitTree::Node { var, .. } => Some(*var),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SplitTree::Node { i1, i2, .. } => 1 + i1.depth().max(i2.depth()),
            _ => 0,
        }
    }

    /// Checks every node against the definition: the split reproduces the
    /// ideal, `I_2 ⊆ I_1`, neither part involves the splitting variable, and
    /// `G(I)` is the disjoint union of `G(x_i I_1)` and `G(I_2)`.
    pub fn verify(&self, ideal: &MonomialIdeal) -> Result<()> {
        let n = ideal.nvars();
        match self {
            SplitTree::Zero if ideal.is_zero() => Ok(()),
            SplitTree::Unit if ideal.is_unit() => Ok(()),
            SplitTree::Principal { generator } if ideal.gens() == std::slice::from_ref(generator) => Ok(()),
            SplitTree::Node { var, i1, i2 } => {
                let (a, b) = split_at(ideal, *var)
                    .ok_or_else(|| Error::consistency(format!("x{var} is not a vertex splitting of {ideal}")))?;
                if a != i1.ideal(n) || b != i2.ideal(n) {
                    return Err(Error::consistency(format!("split parts at x{var} of {ideal} disagree with tree")));
                }
                i1.verify(&a)?;
                i2.verify(&b)
            }
            _ => Err(Error::consistency(format!("leaf {self:?} does not match {ideal}"))),
        }
    }

    /// Generator order induced by the splitting: `x_i` times the order of
    /// `I_1`, followed by the order of `I_2`.
    pub fn induced_order(&self, n: usize) -> Vec<Monomial> {
        match self {
            SplitTree::Zero => Vec::new(),
            SplitTree::Unit => vec![Monomial::one(n)],
            SplitTree::Principal { generator } => vec![generator.clone()],
            SplitTree::Node { var, i1, i2 } => {
                let x = Monomial::var(n, *var).expect("variable in range");
                let mut out: Vec<Monomial> = i1.induced_order(n).iter().map(|m| m.mul_unchecked(&x)).collect();
                out.extend(i2.induced_order(n));
                out
            }
        }
    }
}

/// The unique candidate splitting at `x_i`: `I_1 = (g / x_i : x_i | g)` and
/// `I_2 = (g : x_i ∤ g)`. Returns the pair when it is a valid vertex
/// splitting step, i.e. `I_2 ⊆ I_1` and `x_i` does not occur in `I_1`.
pub fn split_at(ideal: &MonomialIdeal, var: usize) -> Option<(MonomialIdeal, MonomialIdeal)> {
    let n = ideal.nvars();
    if var == 0 || var > n {
        return None;
    }
    let (with, without): (Vec<&Monomial>, Vec<&Monomial>) = ideal.gens().iter().partition(|g| g.exponent(var) > 0);
    if with.iter().any(|g| g.exponent(var) > 1) {
        return None;
    }
    let x = Monomial::var(n, var).expect("checked range");
    let i1 = minimalize(n, with.iter().map(|g| g.div(&x).expect("divisible")));
    let i2 = minimalize(n, without.into_iter().cloned());
    if !i2.is_subideal_of(&i1) {
        return None;
    }
    Some((i1, i2))
}

fn leaf(ideal: &MonomialIdeal) -> Option<SplitTree> {
    if ideal.is_zero() {
        Some(SplitTree::Zero)
    } else if ideal.is_unit() {
        Some(SplitTree::Unit)
    } else if ideal.is_principal() {
        Some(SplitTree::Principal { generator: ideal.gens()[0].clone() })
    } else {
        None
    }
}

/// Splitting candidates: variables of the support, most frequent first.
fn candidates(ideal: &MonomialIdeal) -> Vec<usize> {
    let mut count = vec![0usize; ideal.nvars() + 1];
    for g in ideal.gens() {
        for i in g.support().iter() {
            count[i] += 1;
        }
    }
    let mut vars: Vec<usize> = ideal.support().iter().collect();
    vars.sort_by(|&a, &b| count[b].cmp(&count[a]).then(a.cmp(&b)));
    vars
}

#[derive(Default)]
struct SplitSearch {
    memo: HashMap<MonomialIdeal, Option<SplitTree>>,
}

impl SplitSearch {
    fn run(&mut self, ideal: &MonomialIdeal, first: Option<usize>) -> Option<SplitTree> {
        if let Some(l) = leaf(ideal) {
            return Some(l);
        }
        if first.is_none() {
            if let Some(hit) = self.memo.get(ideal) {
                return hit.clone();
            }
        }
        let vars: Vec<usize> = match first {
            Some(v) => vec![v],
            None => candidates(ideal),
        };
        let mut found = None;
        for var in vars {
            let Some((a, b)) = split_at(ideal, var) else { continue };
            let Some(ta) = self.run(&a, None) else { continue };
            let Some(tb) = self.run(&b, None) else { continue };
            found = Some(SplitTree::Node { var, i1: Box::new(ta), i2: Box::new(tb) });
            break;
        }
        if first.is_none() {
            self.memo.insert(ideal.clone(), found.clone());
        }
        found
    }
}

/// A vertex splitting certificate for `ideal`, if one exists.
pub fn is_vertex_splittable(ideal: &MonomialIdeal) -> Option<SplitTree> {
    SplitSearch::default().run(ideal, None)
}

/// Like [`is_vertex_splittable`], but the root must split at `x_var`.
pub fn vertex_splitting_rooted_at(ideal: &MonomialIdeal, var: usize) -> Option<SplitTree> {
    SplitSearch::default().run(ideal, Some(var))
}

/// The split `B_t(u)^∨ = x_1 I_1 + I_2` with both parts produced from the
/// instance rather than read off the dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSplit {
    pub var: usize,
    /// `B_t(u) ∩ K[x_2, ..., x_n]`, the generators avoiding `x_1`.
    pub deletion: MonomialIdeal,
    /// `B_t(u) : x_1`, the `t'`-spread Borel ideal of `x_{j_2} ... x_{j_d}`
    /// on the variables `x_{1 + t_1}, ..., x_n`.
    pub link: MonomialIdeal,
    /// `I_1 = deletion^∨`.
    pub deletion_dual: MonomialIdeal,
    /// `I_2 = link^∨`.
    pub link_dual: MonomialIdeal,
}

/// Builds the split of `B_t(u)^∨` at `x_1` and checks that it reconstructs
/// the dual, with disjoint generator sets and `I_2 ⊆ I_1`.
pub fn dual_split_theorem(inst: &BorelInstance, limits: &Limits) -> Result<DualSplit> {
    let n = inst.n();
    let t = inst.t().as_slice();
    let u = inst.u();
    let ideal = borel_gens(inst);
    let deletion = ideal.restrict_to_vars(VarSet::interval(2, n));
    let link = borel_ideal_from(n, 1 + t[0], &t[1..], &u[1..]);
    let deletion_dual = alexander_dual(&deletion, limits)?;
    let link_dual = alexander_dual(&link, limits)?;

    let fail = |what: &str| Error::consistency(format!("{}: dual split {what}", inst.literal()));
    let x1 = Monomial::var(n, 1)?;
    if ideal.colon(&x1)? != link {
        return Err(fail("link differs from B_t(u) : x1"));
    }
    if deletion_dual.support().contains(1) || link_dual.support().contains(1) {
        return Err(fail("part involves x1"));
    }
    if !link_dual.is_subideal_of(&deletion_dual) {
        return Err(fail("has I_2 not contained in I_1"));
    }
    let left = deletion_dual.mul_monomial(&x1)?;
    let dual = alexander_dual(&ideal, limits)?;
    if left.sum(&link_dual)? != dual {
        return Err(fail("does not reconstruct the dual"));
    }
    if dual.len() != left.len() + link_dual.len() {
        return Err(fail("generator sets are not disjoint"));
    }
    Ok(DualSplit { var: 1, deletion, link, deletion_dual, link_dual })
}

/// An ordering of `G(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientOrder {
    pub order: Vec<Monomial>,
}

/// Whether `(prefix) : g` is generated by variables, using the quotients
/// `h / gcd(h, g)`: every quotient must be divisible by a quotient of degree one.
fn linear_colon<'a>(prefix: impl Iterator<Item = &'a Monomial> + Clone, g: &Monomial) -> bool {
    let mut vars = 0u64;
    for h in prefix.clone() {
        let q = h.colon_unchecked(g);
        if q.degree() == 1 {
            vars |= q.support().bits();
        }
    }
    prefix.into_iter().all(|h| h.colon_unchecked(g).support().bits() & vars != 0)
}

impl QuotientOrder {
    /// Checks that the order is a permutation of `G(I)` and that every
    /// successive colon is generated by variables. Returns the first failing
    /// position on error.
    pub fn verify(&self, ideal: &MonomialIdeal) -> std::result::Result<(), usize> {
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != ideal.gens() {
            return Err(0);
        }
        for i in 1..self.order.len() {
            if !linear_colon(self.order[..i].iter(), &self.order[i]) {
                return Err(i);
            }
        }
        Ok(())
    }

    /// The successive colon ideals `(g_1, ..., g_{i-1}) : g_i` for `i ≥ 2`.
    pub fn colons(&self, n: usize) -> Vec<MonomialIdeal> {
        (1..self.order.len())
            .map(|i| minimalize(n, self.order[..i].iter().map(|h| h.colon_unchecked(&self.order[i]))))
            .collect()
    }
}

/// An order with linear quotients, if one exists. The order induced by a
/// vertex splitting is tried first; otherwise a backtracking search runs,
/// subject to the generator cap.
pub fn linear_quotients_order(ideal: &MonomialIdeal, limits: &Limits) -> Result<Option<QuotientOrder>> {
    if ideal.is_zero() {
        return Ok(Some(QuotientOrder { order: Vec::new() }));
    }
    if let Some(tree) = is_vertex_splittable(ideal) {
        let q = QuotientOrder { order: tree.induced_order(ideal.nvars()) };
        if q.verify(ideal).is_ok() {
            return Ok(Some(q));
        }
    }
    let m = ideal.len();
    if m > limits.linquot_max_generators {
        return Err(Error::Resource(format!(
            "linear quotient search over {m} generators exceeds cap {}",
            limits.linquot_max_generators
        )));
    }
    let gens = ideal.gens();
    // try low degrees first
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by_key(|&i| (gens[i].degree(), std::cmp::Reverse(i)));
    let mut search =
        Backtrack { gens, idx: &idx, used: vec![false; m], order: Vec::with_capacity(m), dead: HashSet::new() };
    if search.extend() {
        let order = search.order.iter().map(|&i| gens[i].clone()).collect();
        Ok(Some(QuotientOrder { order }))
    } else {
        Ok(None)
    }
}

struct Backtrack<'a> {
    gens: &'a [Monomial],
    idx: &'a [usize],
    used: Vec<bool>,
    order: Vec<usize>,
    dead: HashSet<Vec<u64>>,
}

impl Backtrack<'_> {
    fn key(&self) -> Vec<u64> {
        let mut key = vec![0u64; self.used.len().div_ceil(64)];
        for (i, &u) in self.used.iter().enumerate() {
            if u {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }

    fn extend(&mut self) -> bool {
        if self.order.len() == self.gens.len() {
            return true;
        }
        let key = self.key();
        if self.dead.contains(&key) {
            return false;
        }
        for &i in self.idx {
            if self.used[i] {
                continue;
            }
            let prefix = self.order.iter().map(|&j| &self.gens[j]);
            if !self.order.is_empty() && !linear_colon(prefix, &self.gens[i]) {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            if self.extend() {
                return true;
            }
            self.order.pop();
            self.used[i] = false;
        }
        self.dead.insert(key);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, lists: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_index_lists(n, lists).unwrap()
    }

    #[test]
    fn small_duals() {
        let l = Limits::default();
        assert_eq!(alexander_dual(&ideal(2, &[&[1, 2]]), &l).unwrap(), ideal(2, &[&[1], &[2]]));
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(alexander_dual(&tri, &l).unwrap(), tri);
        assert!(alexander_dual(&MonomialIdeal::zero(3), &l).unwrap().is_unit());
        assert!(alexander_dual(&MonomialIdeal::unit(3), &l).unwrap().is_zero());
        assert!(matches!(alexander_dual(&ideal(2, &[&[1, 1]]), &l), Err(Error::Domain(_))));
    }

    #[test]
    fn example_split_parts() {
        let l = Limits::default();
        let inst = BorelInstance::new(8, &[2, 1], &[2, 5, 8]).unwrap();
        let s = dual_split_theorem(&inst, &l).unwrap();
        assert_eq!(s.deletion_dual, ideal(8, &[&[2], &[4, 5], &[4, 6, 7, 8], &[5, 6, 7, 8]]));
        assert_eq!(s.link_dual, ideal(8, &[&[3, 4, 5], &[3, 4, 6, 7, 8], &[3, 5, 6, 7, 8], &[4, 5, 6, 7, 8]]));
        assert_eq!(s.deletion.len(), 7);
        assert_eq!(s.link.len(), 12);
        let dual = alexander_dual(&borel_gens(&inst), &l).unwrap();
        let tree = vertex_splitting_rooted_at(&dual, 1).unwrap();
        tree.verify(&dual).unwrap();
        let SplitTree::Node { i1, i2, .. } = &tree else { panic!("expected a node") };
        assert_eq!(i1.ideal(8), s.deletion_dual);
        assert_eq!(i2.ideal(8), s.link_dual);
    }

    #[test]
    fn principal_and_triangle_split() {
        let l = Limits::default();
        let inst = BorelInstance::new(6, &[2, 3], &[1, 3, 6]).unwrap();
        let s = dual_split_theorem(&inst, &l).unwrap();
        assert!(s.deletion.is_zero());
        assert!(s.deletion_dual.is_unit());
        assert_eq!(s.link_dual, ideal(6, &[&[3], &[6]]));

        let tri = BorelInstance::new(3, &[1], &[2, 3]).unwrap();
        let s = dual_split_theorem(&tri, &l).unwrap();
        assert_eq!(s.deletion_dual, ideal(3, &[&[2], &[3]]));
        assert_eq!(s.link_dual, ideal(3, &[&[2, 3]]));
    }

    #[test]
    fn splittability() {
        assert_eq!(
            is_vertex_splittable(&ideal(2, &[&[1, 2]])),
            Some(SplitTree::Principal { generator: Monomial::from_indices(2, &[1, 2]).unwrap() })
        );
        assert_eq!(is_vertex_splittable(&ideal(4, &[&[1, 2], &[3, 4]])), None);
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let tree = is_vertex_splittable(&tri).unwrap();
        tree.verify(&tri).unwrap();
        assert_eq!(tree.ideal(3), tri);
    }

    #[test]
    fn linear_quotients() {
        let l = Limits::default();
        let i = ideal(8, &[&[2], &[4, 5], &[4, 6, 7, 8], &[5, 6, 7, 8]]);
        let listed: Vec<Monomial> = [&[2][..], &[4, 5], &[4, 6, 7, 8], &[5, 6, 7, 8]]
            .iter()
            .map(|l| Monomial::from_indices(8, l).unwrap())
            .collect();
        let q = QuotientOrder { order: listed };
        assert_eq!(q.verify(&i), Ok(()));
        let colons = q.colons(8);
        assert_eq!(colons[0], ideal(8, &[&[2]]));
        assert_eq!(colons[1], ideal(8, &[&[2], &[5]]));
        assert_eq!(colons[2], ideal(8, &[&[2], &[4]]));
        assert!(linear_quotients_order(&i, &l).unwrap().is_some());

        let bad = ideal(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(linear_quotients_order(&bad, &l).unwrap(), None);
        let p = ideal(3, &[&[1, 3]]);
        assert_eq!(linear_quotients_order(&p, &l).unwrap().unwrap().order.len(), 1);
    }

    #[test]
    fn backtracking_finds_non_split_order() {
        // Linear quotients but not squarefree: (x1^2, x1x2, x2^2).
        let l = Limits::default();
        let i = ideal(2, &[&[1, 1], &[1, 2], &[2, 2]]);
        let q = linear_quotients_order(&i, &l).unwrap().unwrap();
        assert_eq!(q.verify(&i), Ok(()));
    }

    #[test]
    fn linquot_cap() {
        let l = Limits { linquot_max_generators: 2, ..Limits::default() };
        let bad = ideal(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(linear_quotients_order(&bad, &l).unwrap_err().is_resource());
    }

    #[test]
    fn tree_serializes_nested() {
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let tree = is_vertex_splittable(&tri).unwrap();
        let v = serde_json::to_value(&tree).unwrap();
        assert_eq!(v["kind"], "node");
        assert!(v["i1"]["kind"].is_string());
    }
}
