//! Ordinary and symbolic powers of `B_t(u)`, the normally torsionfree
//! criterion, and the witnesses produced when it fails.

use serde::{Deserialize, Serialize};

use crate::decomposition::{primary_decomposition, PrimaryDecomposition};
use crate::error::{Error, Result};
use crate::ideal::{intersect_all, intersect_prime_powers, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::{Monomial, PrimeSupport, VarSet};
use crate::spread::{borel_gens, borel_ideal_from, BorelInstance};

/// An exponent bound `a ∈ Z_{≥0}^n` for [`a_restriction`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionVector(pub Vec<u16>);

impl RestrictionVector {
    /// `1 = e_1 + ... + e_n`.
    pub fn ones(n: usize) -> Self {
        RestrictionVector(vec![1; n])
    }

    /// `1 - e_i`.
    pub fn ones_minus(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::domain(format!("index {i} outside [1, {n}]")));
        }
        let mut a = vec![1; n];
        a[i - 1] = 0;
        Ok(RestrictionVector(a))
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }
}

/// `I^{≤a}`.
pub fn a_restriction(ideal: &MonomialIdeal, a: &RestrictionVector) -> Result<MonomialIdeal> {
    ideal.restriction(a.as_slice())
}

/// `I(P)`: the variables outside `P` are set to 1.
pub fn monomial_localization(ideal: &MonomialIdeal, p: PrimeSupport) -> MonomialIdeal {
    ideal.localize(p)
}

/// `I^k` with the power and generator caps applied.
pub fn ordinary_power(ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::Precondition("powers start at k = 1".into()));
    }
    limits.check_power(k)?;
    let mut acc = ideal.clone();
    for _ in 1..k {
        acc = acc.product(ideal)?;
        limits.check_generators(acc.len(), "ordinary power")?;
    }
    Ok(acc)
}

/// Where the primes of a symbolic power come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentSource {
    /// The facet families of the decomposition theorem.
    Theorem,
    /// The associated prime search, after checking it agrees with the theorem.
    Oracle,
}

fn oracle_components(inst: &BorelInstance, dec: &PrimaryDecomposition, limits: &Limits) -> Result<Vec<PrimeSupport>> {
    if inst.n() > limits.oracle_max_vars {
        return Err(Error::Resource(format!(
            "associated prime search over {} variables exceeds cap {}",
            inst.n(),
            limits.oracle_max_vars
        )));
    }
    let ass: Vec<PrimeSupport> = borel_gens(inst).associated_primes()?.into_iter().collect();
    let mut theorem = dec.components.clone();
    theorem.sort_unstable();
    if ass != theorem {
        return Err(Error::consistency(format!(
            "{}: associated primes differ from decomposition components",
            inst.literal()
        )));
    }
    Ok(ass)
}

/// `B_t(u)^{(k)} = ∩ P^k` over the components of the decomposition.
pub fn symbolic_power(inst: &BorelInstance, k: u32, limits: &Limits) -> Result<MonomialIdeal> {
    symbolic_power_from(inst, k, limits, ComponentSource::Theorem)
}

pub fn symbolic_power_from(
    inst: &BorelInstance,
    k: u32,
    limits: &Limits,
    source: ComponentSource,
) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::Precondition("symbolic powers start at k = 1".into()));
    }
    limits.check_power(k)?;
    let dec = primary_decomposition(inst, limits)?;
    let comps = match source {
        ComponentSource::Theorem => dec.components,
        ComponentSource::Oracle => oracle_components(inst, &dec, limits)?,
    };
    intersect_prime_powers(inst.n(), &comps, k, limits)
}

/// `I^{(k)} = ∩_{P ∈ Ass(I)} I^k(P)` for an arbitrary proper monomial ideal.
/// For squarefree ideals this is the intersection of the `P^k`.
pub fn symbolic_power_of_ideal(ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<MonomialIdeal> {
    if ideal.nvars() > limits.oracle_max_vars {
        return Err(Error::Resource(format!(
            "associated prime search over {} variables exceeds cap {}",
            ideal.nvars(),
            limits.oracle_max_vars
        )));
    }
    let ass = ideal.associated_primes()?;
    let power = ordinary_power(ideal, k, limits)?;
    let locals: Vec<MonomialIdeal> = ass.iter().map(|&p| power.localize(p)).collect();
    intersect_all(ideal.nvars(), &locals, limits)
}

/// `j_i ≤ t_1 + ... + t_i` for all `i = 1, ..., d - 1`.
pub fn ntf_condition(inst: &BorelInstance) -> bool {
    first_violation(inst).is_none()
}

/// The smallest `i` with `j_i > t_1 + ... + t_i`.
pub fn first_violation(inst: &BorelInstance) -> Option<usize> {
    (1..inst.d()).find(|&i| inst.u()[i - 1] > inst.t().partial_sum(i))
}

fn in_symbolic(w: &Monomial, comps: &[PrimeSupport], k: u32) -> bool {
    comps.iter().all(|p| w.degree_in(p.vars()) >= k)
}

/// Membership of `w` in `I^k` by searching for `g_1 ... g_k | w`.
pub fn in_ordinary_power(w: &Monomial, ideal: &MonomialIdeal, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    ideal.gens().iter().any(|g| w.div(g).is_some_and(|rest| in_ordinary_power(&rest, ideal, k - 1)))
}

/// How a witness monomial was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// `(x_1 ... x_{s_1} x_{s_1 + 1}) (x_{v_2} ... x_{v_{d'}})` in the reduced ring.
    Formula,
    /// The first generator of `I'^{(2)}` outside `I'^2`, used when the
    /// formula monomial fails one of the membership checks.
    BruteForce,
}

/// Evidence that `I^{(2)} ≠ I^2` for an instance violating the criterion.
///
/// The reduction localizes at `Q = P_{[offset + 1, n]}`, and the reduced
/// ring `K[x_1, ..., x_{n'}]` is identified with `K[x_{offset + 1}, ..., x_n]`
/// through `mapping`. The witness is lifted back as
/// `w_original = shift(w_reduced) · (x_1 ... x_offset)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub instance: BorelInstance,
    pub violated_index: usize,
    pub offset: usize,
    pub q: PrimeSupport,
    pub reduced: BorelInstance,
    /// Pairs `[reduced index, original index]`.
    pub mapping: Vec<[usize; 2]>,
    pub localization_matches: bool,
    pub source: WitnessSource,
    /// Formula monomial, kept even when it was rejected.
    pub formula_candidate: Vec<usize>,
    /// Index multisets of the witness monomials.
    pub w_reduced: Vec<usize>,
    pub w_reduced_in_symbolic_square: bool,
    pub w_reduced_in_square: bool,
    pub w_original: Vec<usize>,
    pub w_original_in_symbolic_square: bool,
    pub w_original_in_square: bool,
}

impl WitnessCertificate {
    /// Recomputes every verdict from the instance alone.
    pub fn verify(&self, limits: &Limits) -> Result<()> {
        let fail = |what: &str| Error::consistency(format!("{}: witness {what}", self.instance.literal()));
        let inst = &self.instance;
        let ell = first_violation(inst).ok_or_else(|| fail("issued for an instance meeting the criterion"))?;
        if ell != self.violated_index || inst.t().partial_sum(ell - 1) != self.offset {
            return Err(fail("has the wrong reduction index"));
        }
        let (reduced, q) = reduction(inst, ell)?;
        if reduced != self.reduced || q != self.q {
            return Err(fail("has the wrong reduced instance"));
        }
        let ideal = borel_gens(inst);
        let local = reindex_localization(&ideal, q, self.offset, reduced.n())?;
        if (local == borel_gens(&reduced)) != self.localization_matches || !self.localization_matches {
            return Err(fail("localization does not give the reduced instance"));
        }
        let rn = reduced.n();
        let w = Monomial::from_indices(rn, &self.w_reduced)?;
        let rcomps = primary_decomposition(&reduced, limits)?.components;
        let ri = borel_gens(&reduced);
        let verdicts = (in_symbolic(&w, &rcomps, 2), in_ordinary_power(&w, &ri, 2));
        if verdicts != (self.w_reduced_in_symbolic_square, self.w_reduced_in_square) || verdicts != (true, false) {
            return Err(fail("fails in the reduced ring"));
        }
        let lifted = lift(&w, inst.n(), self.offset)?;
        if lifted.indices() != self.w_original {
            return Err(fail("lift does not match"));
        }
        let comps = primary_decomposition(inst, limits)?.components;
        let verdicts = (in_symbolic(&lifted, &comps, 2), in_ordinary_power(&lifted, &ideal, 2));
        if verdicts != (self.w_original_in_symbolic_square, self.w_original_in_square) || verdicts != (true, false) {
            return Err(fail("fails in the original ring"));
        }
        Ok(())
    }
}

/// The instance `B_s(v)` with `s = (t_ℓ, ..., t_{d-1})` and `v = u / (x_{j_1} ... x_{j_{ℓ-1}})`,
/// re-indexed to start at `x_1`, and the prime `Q`.
fn reduction(inst: &BorelInstance, ell: usize) -> Result<(BorelInstance, PrimeSupport)> {
    let offset = inst.t().partial_sum(ell - 1);
    let n = inst.n();
    let s = &inst.t().as_slice()[ell - 1..];
    let v: Vec<usize> = inst.u()[ell - 1..].iter().map(|j| j - offset).collect();
    let reduced = BorelInstance::new(n - offset, s, &v)?;
    let q = PrimeSupport::new(VarSet::interval(offset + 1, n))?;
    Ok((reduced, q))
}

/// `I(Q)` moved down by `offset` into `n'` variables.
fn reindex_localization(
    ideal: &MonomialIdeal,
    q: PrimeSupport,
    offset: usize,
    n_reduced: usize,
) -> Result<MonomialIdeal> {
    ideal.localize(q).shift(n_reduced, -(offset as isize))
}

fn lift(w: &Monomial, n: usize, offset: usize) -> Result<Monomial> {
    let shifted = w.shift(n, offset as isize)?;
    Ok(shifted.mul_unchecked(&Monomial::from_support(n, VarSet::interval(1, offset)).pow(2)))
}

/// Builds the certificate for an instance violating the criterion.
pub fn witness_noneq(inst: &BorelInstance, limits: &Limits) -> Result<WitnessCertificate> {
    let ell = first_violation(inst)
        .ok_or_else(|| Error::Precondition(format!("{} satisfies the criterion", inst.literal())))?;
    let offset = inst.t().partial_sum(ell - 1);
    let (reduced, q) = reduction(inst, ell)?;
    let rn = reduced.n();
    let ideal = borel_gens(inst);
    let ri = borel_gens(&reduced);
    let localization_matches = reindex_localization(&ideal, q, offset, rn)? == ri;

    let s1 = reduced.t().as_slice()[0];
    let mut formula: Vec<usize> = (1..=s1 + 1).collect();
    formula.extend_from_slice(&reduced.u()[1..]);
    let candidate = Monomial::from_indices(rn, &formula)?;
    let rcomps = primary_decomposition(&reduced, limits)?.components;
    let good = |w: &Monomial| in_symbolic(w, &rcomps, 2) && !in_ordinary_power(w, &ri, 2);

    let (w, source) = if good(&candidate) {
        (candidate, WitnessSource::Formula)
    } else {
        let sym = intersect_prime_powers(rn, &rcomps, 2, limits)?;
        let w = sym.gens().iter().find(|g| !in_ordinary_power(g, &ri, 2)).cloned().ok_or_else(|| {
            Error::consistency(format!("{}: reduced symbolic square equals ordinary square", inst.literal()))
        })?;
        (w, WitnessSource::BruteForce)
    };

    let lifted = lift(&w, inst.n(), offset)?;
    let comps = primary_decomposition(inst, limits)?.components;
    let cert = WitnessCertificate {
        instance: inst.clone(),
        violated_index: ell,
        offset,
        q,
        reduced: reduced.clone(),
        mapping: (1..=rn).map(|i| [i, i + offset]).collect(),
        localization_matches,
        source,
        formula_candidate: formula,
        w_reduced: w.indices(),
        w_reduced_in_symbolic_square: in_symbolic(&w, &rcomps, 2),
        w_reduced_in_square: in_ordinary_power(&w, &ri, 2),
        w_original: lifted.indices(),
        w_original_in_symbolic_square: in_symbolic(&lifted, &comps, 2),
        w_original_in_square: in_ordinary_power(&lifted, &ideal, 2),
    };
    cert.verify(limits)?;
    Ok(cert)
}

/// One comparison of `I^k` with `I^{(k)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCheck {
    pub k: u32,
    pub equal: bool,
    pub ordinary_gens: usize,
    pub symbolic_gens: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NtfVerdict {
    pub satisfied: bool,
    pub checks: Vec<PowerCheck>,
    pub certificate: Option<WitnessCertificate>,
}

fn compare_powers(inst: &BorelInstance, ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<PowerCheck> {
    let ord = ordinary_power(ideal, k, limits)?;
    let sym = symbolic_power(inst, k, limits)?;
    if !ord.is_subideal_of(&sym) {
        return Err(Error::consistency(format!("{}: I^{k} is not contained in I^({k})", inst.literal())));
    }
    Ok(PowerCheck { k, equal: ord == sym, ordinary_gens: ord.len(), symbolic_gens: sym.len() })
}

/// Decides the criterion and backs the answer with evidence: power
/// equalities for `k = 2..k_max` when it holds, a witness and a strict
/// inequality at `k = 2` when it fails.
pub fn classify_ntf(inst: &BorelInstance, k_max: u32, limits: &Limits) -> Result<NtfVerdict> {
    if k_max < 2 {
        return Err(Error::Precondition("k_max must be at least 2".into()));
    }
    let ideal = borel_gens(inst);
    let satisfied = ntf_condition(inst);
    let mut checks = Vec::new();
    for k in 2..=k_max {
        let c = compare_powers(inst, &ideal, k, limits)?;
        if satisfied && !c.equal {
            return Err(Error::consistency(format!("{}: criterion holds but I^{k} != I^({k})", inst.literal())));
        }
        if !satisfied && k == 2 && c.equal {
            return Err(Error::consistency(format!("{}: criterion fails but I^2 = I^(2)", inst.literal())));
        }
        checks.push(c);
    }
    let certificate = if satisfied { None } else { Some(witness_noneq(inst, limits)?) };
    Ok(NtfVerdict { satisfied, checks, certificate })
}

/// `|A ∩ {j_1, ..., j_d}| ≤ 1` for every component `P_A`, i.e. `u ∉ P^2`.
pub fn generator_outside_prime_squares(inst: &BorelInstance, dec: &PrimaryDecomposition) -> bool {
    let u = VarSet::from_indices(inst.u().iter().copied()).expect("indices in range");
    dec.components.iter().all(|p| p.vars().intersection(u).len() <= 1)
}

/// Every block `[t_1 + ... + t_{i-1} + 1, j_i]` has at least two elements.
pub fn blocks_nontrivial(inst: &BorelInstance) -> bool {
    (1..=inst.d()).all(|i| inst.u()[i - 1] > inst.t().partial_sum(i - 1) + 1)
}

/// Index bounds `h` with `B_t(u)^{≤ 1 - e_{j_i}} = B_t(x_{h_1} ... x_{h_d})`,
/// for instances meeting the criterion whose blocks all have two or more
/// elements. `h_i = j_i - 1`, and the shift propagates downwards through
/// every tight gap `j_{r+1} - j_r = t_r`.
pub fn restriction_bounds(inst: &BorelInstance, i: usize) -> Option<Vec<usize>> {
    if !ntf_condition(inst) || !blocks_nontrivial(inst) || i == 0 || i > inst.d() {
        return None;
    }
    let t = inst.t().as_slice();
    let mut h = inst.u().to_vec();
    h[i - 1] -= 1;
    for r in (0..i - 1).rev() {
        if h[r + 1] - h[r] < t[r] {
            h[r] -= 1;
        } else {
            break;
        }
    }
    Some(h)
}

/// Checks `I^{≤ 1 - e_{j_i}} = B_t(h)` for every `i`; `None` when the
/// identity's hypotheses do not apply.
pub fn restriction_identity(inst: &BorelInstance) -> Option<bool> {
    let n = inst.n();
    let ideal = borel_gens(inst);
    let mut ok = true;
    for i in 1..=inst.d() {
        let h = restriction_bounds(inst, i)?;
        let a = RestrictionVector::ones_minus(n, inst.u()[i - 1]).expect("index in range");
        let lhs = a_restriction(&ideal, &a).expect("same ring");
        ok &= lhs == borel_ideal_from(n, 1, inst.t().as_slice(), &h);
    }
    Some(ok)
}

/// `(u J)^{(k)}` computed from `u J` itself, and `u^k J^{(k)}`.
pub fn product_symbolic_sides(
    u: &Monomial,
    j: &MonomialIdeal,
    k: u32,
    limits: &Limits,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let uj = j.mul_monomial(u)?;
    let lhs = symbolic_power_of_ideal(&uj, k, limits)?;
    let rhs = symbolic_power_of_ideal(j, k, limits)?.mul_monomial(&u.pow(k))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, t: &[usize], u: &[usize]) -> BorelInstance {
        BorelInstance::new(n, t, u).unwrap()
    }

    fn mono(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_indices(n, idx).unwrap()
    }

    #[test]
    fn criterion_arithmetic() {
        assert!(!ntf_condition(&inst(8, &[2, 1], &[2, 5, 8])));
        assert!(ntf_condition(&inst(6, &[2, 2], &[2, 4, 6])));
        assert!(!ntf_condition(&inst(3, &[1], &[2, 3])));
        assert_eq!(first_violation(&inst(8, &[2, 1], &[2, 5, 8])), Some(2));
    }

    #[test]
    fn symbolic_basics() {
        let l = Limits::default();
        let tri = inst(3, &[1], &[2, 3]);
        let s2 = symbolic_power(&tri, 2, &l).unwrap();
        assert!(s2.contains(&mono(3, &[1, 2, 3])));
        assert!(!ordinary_power(&borel_gens(&tri), 2, &l).unwrap().contains(&mono(3, &[1, 2, 3])));
        for i in [tri.clone(), inst(8, &[2, 1], &[2, 5, 8]), inst(6, &[2, 2], &[2, 4, 6])] {
            assert_eq!(symbolic_power(&i, 1, &l).unwrap(), borel_gens(&i));
        }
        let oracle = symbolic_power_from(&tri, 2, &l, ComponentSource::Oracle).unwrap();
        assert_eq!(oracle, s2);
        assert!(symbolic_power(&tri, 4, &l).unwrap_err().is_resource());
    }

    #[test]
    fn principal_symbolic_is_ordinary() {
        let l = Limits::default();
        let p = inst(6, &[2, 3], &[1, 3, 6]);
        for k in 1..=3 {
            assert_eq!(symbolic_power(&p, k, &l).unwrap(), ordinary_power(&borel_gens(&p), k, &l).unwrap());
        }
    }

    #[test]
    fn classify_examples() {
        let l = Limits::default();
        let v = classify_ntf(&inst(6, &[2, 2], &[2, 4, 6]), 3, &l).unwrap();
        assert!(v.satisfied);
        assert!(v.checks.iter().all(|c| c.equal));
        assert_eq!(v.checks.len(), 2);

        let v = classify_ntf(&inst(3, &[1], &[2, 3]), 2, &l).unwrap();
        assert!(!v.satisfied);
        let c = v.certificate.unwrap();
        assert_eq!(c.q.vars(), VarSet::full(3));
        assert_eq!(c.w_reduced, vec![1, 2, 3]);
        assert_eq!(c.source, WitnessSource::Formula);

        let v = classify_ntf(&inst(8, &[2, 1], &[2, 5, 8]), 2, &l).unwrap();
        let c = v.certificate.unwrap();
        assert_eq!(c.q.vars(), VarSet::interval(3, 8));
        assert_eq!(c.reduced, inst(6, &[1], &[3, 6]));
        assert!(c.localization_matches);
        c.verify(&l).unwrap();
    }

    #[test]
    fn formula_failure_falls_back() {
        // t = (2), u = x3 x5: the formula gives x1 x2 x3 x5 = (x1 x3)(x2 x5)
        let l = Limits::default();
        let c = witness_noneq(&inst(5, &[2], &[3, 5]), &l).unwrap();
        assert_eq!(c.formula_candidate, vec![1, 2, 3, 5]);
        assert_eq!(c.source, WitnessSource::BruteForce);
        c.verify(&l).unwrap();
    }

    #[test]
    fn formula_rejections_are_classified() {
        // Degree-two reductions with a first gap of two or more put the
        // formula monomial inside I'^2; every other rejection is a monomial
        // missing from I'^(2).
        let l = Limits::default();
        let cfg = crate::sweep::SweepConfig { n_max: 8, ..Default::default() };
        for i in crate::sweep::enumerate_instances(&cfg).iter().filter(|i| !ntf_condition(i)) {
            let c = witness_noneq(i, &l).unwrap();
            let r = &c.reduced;
            let w = Monomial::from_indices(r.n(), &c.formula_candidate).unwrap();
            let in_square = in_ordinary_power(&w, &borel_gens(r), 2);
            let two_factor = r.d() == 2 && r.t().as_slice()[0] >= 2;
            assert_eq!(in_square, two_factor, "{}", i.literal());
        }
        // x1 x2 x3 x5 has degree one in the component (x4, x5)
        let c = witness_noneq(&inst(5, &[1, 2], &[2, 3, 5]), &l).unwrap();
        assert_eq!(c.source, WitnessSource::BruteForce);
        let p = PrimeSupport::new(VarSet::from_indices([4, 5]).unwrap()).unwrap();
        let comps = primary_decomposition(&c.reduced, &l).unwrap().components;
        assert!(comps.contains(&p));
    }

    #[test]
    fn witness_precondition() {
        let err = witness_noneq(&inst(6, &[2, 2], &[2, 4, 6]), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn restrictions_and_localization() {
        let tri = MonomialIdeal::from_index_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        assert_eq!(a_restriction(&tri, &RestrictionVector::ones(3)).unwrap(), tri);
        let r = a_restriction(&tri, &RestrictionVector::ones_minus(3, 2).unwrap()).unwrap();
        assert_eq!(r, MonomialIdeal::from_index_lists(3, &[&[1, 3]]).unwrap());
        let p = PrimeSupport::new(VarSet::interval(1, 2)).unwrap();
        assert_eq!(monomial_localization(&tri, p), MonomialIdeal::from_index_lists(3, &[&[1], &[2]]).unwrap());
        assert_eq!(monomial_localization(&tri, PrimeSupport::new(VarSet::full(3)).unwrap()), tri);
    }

    #[test]
    fn restriction_identity_small() {
        // blocks [1,2], [3,4], [5,6] with tight gaps everywhere
        assert_eq!(restriction_identity(&inst(6, &[2, 2], &[2, 4, 6])), Some(true));
        assert_eq!(restriction_identity(&inst(7, &[3, 2], &[2, 5, 7])), Some(true));
        assert_eq!(restriction_identity(&inst(3, &[1], &[2, 3])), None);
    }

    #[test]
    fn product_lemma_small() {
        let l = Limits::default();
        let j = MonomialIdeal::from_index_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let u = mono(3, &[1]);
        for k in 1..=3 {
            let (a, b) = product_symbolic_sides(&u, &j, k, &l).unwrap();
            assert_eq!(a, b, "k = {k}");
        }
    }

    #[test]
    fn certificate_round_trip() {
        let l = Limits::default();
        let c = witness_noneq(&inst(8, &[2, 1], &[2, 5, 8]), &l).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: WitnessCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
