//! Minimal primary decomposition of `B_t(u)` through the facets of its
//! Stanley–Reisner complex.
//!
//! The facets come in two families: the `t`-spread supports of the minimal
//! generators, and the sets `supp_t(x_{l_1} ... x_{l_{s-1}} x_{j_s}) ∪ [j_s + 1, n]`
//! where `x_{l_1} ... x_{l_{s-1}} x_{j_s}` is a minimal generator of
//! `B_t(x_{j_1} ... x_{j_s})` ending in `x_{j_s}`. Every component of the
//! decomposition is `P_{[n] \ F}` for a facet `F`. A brute-force subset scan
//! ([`facets_oracle`]) recomputes the facets independently.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{intersect_prime_powers, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::{PrimeSupport, VarSet};
use crate::spread::{borel_gens, spread_tuples, t_support_of_indices, BorelInstance};

/// Facets of a simplicial complex on `[n]`, sorted and pairwise incomparable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSet {
    pub n: usize,
    pub facets: Vec<VarSet>,
}

impl FacetSet {
    fn from_unsorted(n: usize, mut facets: Vec<VarSet>) -> Self {
        facets.sort_unstable();
        facets.dedup();
        FacetSet { n, facets }
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// The first pair `(F, G)` with `F ⊊ G`, if any.
    pub fn comparable_pair(&self) -> Option<(VarSet, VarSet)> {
        for (a, &f) in self.facets.iter().enumerate() {
            for (b, &g) in self.facets.iter().enumerate() {
                if a != b && f.is_subset(g) {
                    return Some((f, g));
                }
            }
        }
        None
    }
}

/// Which of the two facet families produced a facet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetOrigin {
    /// `supp_t(v)` for a minimal generator `v`.
    SpreadSupport,
    /// A member of the truncated family for the given `s` (1-based).
    Truncated { s: usize },
}

/// Both facet families with provenance, before deduplication.
pub fn facet_families(inst: &BorelInstance) -> Vec<(VarSet, FacetOrigin)> {
    let n = inst.n();
    let t = inst.t().as_slice();
    let u = inst.u();
    let mut out = Vec::new();
    for g in borel_gens(inst).gens() {
        out.push((t_support_of_indices(&g.support().to_vec(), t), FacetOrigin::SpreadSupport));
    }
    // s = d reproduces spread supports (j_d = n makes the tail empty);
    // generating it anyway and deduplicating makes both readings agree.
    for s in 1..=inst.d() {
        let js = u[s - 1];
        let tail = VarSet::interval(js + 1, n);
        for tuple in spread_tuples(1, &t[..s - 1], &u[..s]) {
            if *tuple.last().expect("s >= 1") != js {
                continue;
            }
            out.push((t_support_of_indices(&tuple, t).union(tail), FacetOrigin::Truncated { s }));
        }
    }
    out
}

/// The facets predicted by the decomposition theorem, deduplicated and
/// checked to be pairwise incomparable.
pub fn facets_theorem(inst: &BorelInstance) -> Result<FacetSet> {
    let set = FacetSet::from_unsorted(inst.n(), facet_families(inst).into_iter().map(|(f, _)| f).collect());
    if let Some((f, g)) = set.comparable_pair() {
        return Err(Error::consistency(format!("{}: predicted facets {f:?} ⊊ {g:?} are comparable", inst.literal())));
    }
    Ok(set)
}

/// Facets of the complex whose Stanley–Reisner ideal is `ideal`, by scanning
/// every subset of `[n]`.
pub fn facets_oracle(ideal: &MonomialIdeal, limits: &Limits) -> Result<FacetSet> {
    let n = ideal.nvars();
    if !ideal.is_squarefree() {
        return Err(Error::domain("the facet oracle needs a squarefree ideal"));
    }
    if n > limits.oracle_max_vars {
        return Err(Error::Resource(format!("facet oracle over {n} variables exceeds cap {}", limits.oracle_max_vars)));
    }
    let masks: Vec<u64> = ideal.gens().iter().map(|g| g.support().bits()).collect();
    let is_face = |f: u64| masks.iter().all(|&g| g & !f != 0);
    let full = VarSet::full(n).bits();
    let mut facets = Vec::new();
    for f in 0..=full {
        if !is_face(f) {
            continue;
        }
        let maximal = (0..n).all(|i| f >> i & 1 == 1 || !is_face(f | 1 << i));
        if maximal {
            facets.push(VarSet::from_bits(f));
        }
    }
    Ok(FacetSet::from_unsorted(n, facets))
}

/// `I = ∩ P_A` over the components, with `A = [n] \ F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryDecomposition {
    pub n: usize,
    pub components: Vec<PrimeSupport>,
}

impl PrimaryDecomposition {
    pub fn from_facets(facets: &FacetSet) -> Result<Self> {
        let mut components =
            facets.facets.iter().map(|f| PrimeSupport::new(f.complement(facets.n))).collect::<Result<Vec<_>>>()?;
        components.sort_unstable();
        Ok(PrimaryDecomposition { n: facets.n, components })
    }

    /// `∩ P_A`, folded under the generator cap.
    pub fn intersection(&self, limits: &Limits) -> Result<MonomialIdeal> {
        intersect_prime_powers(self.n, &self.components, 1, limits)
    }

    pub fn min_height(&self) -> usize {
        self.components.iter().map(|c| c.len()).min().unwrap_or(0)
    }
}

/// The minimal primary decomposition of `B_t(u)`, verified by double
/// containment against the generators.
pub fn primary_decomposition(inst: &BorelInstance, limits: &Limits) -> Result<PrimaryDecomposition> {
    let dec = PrimaryDecomposition::from_facets(&facets_theorem(inst)?)?;
    let ideal = borel_gens(inst);
    let meet = dec.intersection(limits)?;
    if !ideal.is_subideal_of(&meet) || !meet.is_subideal_of(&ideal) {
        return Err(Error::consistency(format!(
            "{}: intersection of components {meet} differs from B_t(u) = {ideal}",
            inst.literal()
        )));
    }
    Ok(dec)
}

/// `height B_t(u) = min(u) = j_1`, cross-checked against the smallest
/// component of the decomposition.
pub fn height(inst: &BorelInstance, limits: &Limits) -> Result<usize> {
    let j1 = inst.u()[0];
    let from_components = primary_decomposition(inst, limits)?.min_height();
    if from_components != j1 {
        return Err(Error::consistency(format!(
            "{}: smallest component has {from_components} variables, min(u) = {j1}",
            inst.literal()
        )));
    }
    Ok(j1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(idx: &[usize]) -> VarSet {
        VarSet::from_indices(idx.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_facets() {
        let inst = BorelInstance::new(3, &[1], &[2, 3]).unwrap();
        let f = facets_theorem(&inst).unwrap();
        assert_eq!(f.facets, vec![set(&[1]), set(&[2]), set(&[3])]);
        let oracle = facets_oracle(&borel_gens(&inst), &Limits::default()).unwrap();
        assert_eq!(f, oracle);
        let dec = primary_decomposition(&inst, &Limits::default()).unwrap();
        let comps: Vec<Vec<usize>> = dec.components.iter().map(|c| c.vars().to_vec()).collect();
        assert_eq!(comps, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(height(&inst, &Limits::default()).unwrap(), 2);
    }

    #[test]
    fn oracle_small_cases() {
        let i = MonomialIdeal::from_index_lists(2, &[&[1, 2]]).unwrap();
        assert_eq!(facets_oracle(&i, &Limits::default()).unwrap().facets, vec![set(&[1]), set(&[2])]);
        let sq = MonomialIdeal::from_index_lists(2, &[&[1, 1]]).unwrap();
        assert!(matches!(facets_oracle(&sq, &Limits::default()), Err(Error::Domain(_))));
        let big = MonomialIdeal::from_index_lists(20, &[&[1, 2]]).unwrap();
        assert!(facets_oracle(&big, &Limits::default()).unwrap_err().is_resource());
    }

    #[test]
    fn example_family_members() {
        let inst = BorelInstance::new(8, &[2, 1], &[2, 5, 8]).unwrap();
        let f = facets_theorem(&inst).unwrap();
        assert!(f.facets.contains(&set(&[2, 3, 5])));
        assert!(f.facets.contains(&VarSet::interval(3, 8)));
        let dec = primary_decomposition(&inst, &Limits::default()).unwrap();
        let p1 = PrimeSupport::new(set(&[1, 4, 6, 7, 8])).unwrap();
        let p2 = PrimeSupport::new(set(&[1, 2])).unwrap();
        assert!(dec.components.contains(&p1));
        assert!(dec.components.contains(&p2));
        assert_eq!(height(&inst, &Limits::default()).unwrap(), 2);
    }

    #[test]
    fn principal_instance() {
        // u = x1 x3 x6, t = (2, 3): one generator with supp_t = {1,2} ∪ {3,4,5}
        let inst = BorelInstance::new(6, &[2, 3], &[1, 3, 6]).unwrap();
        let fam = facet_families(&inst);
        let spread: Vec<VarSet> =
            fam.iter().filter(|(_, o)| *o == FacetOrigin::SpreadSupport).map(|(f, _)| *f).collect();
        assert_eq!(spread, vec![set(&[1, 2, 3, 4, 5])]);
        // the three primes of (x1 x3 x6) are (x1), (x3), (x6)
        let dec = primary_decomposition(&inst, &Limits::default()).unwrap();
        let comps: Vec<Vec<usize>> = dec.components.iter().map(|c| c.vars().to_vec()).collect();
        assert_eq!(comps, vec![vec![1], vec![3], vec![6]]);
        assert_eq!(height(&inst, &Limits::default()).unwrap(), 1);
    }
}
