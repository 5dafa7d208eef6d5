//! Vector-spread monomials and principal vector-spread Borel ideals.
//!
//! A squarefree monomial `x_{i_1} ... x_{i_l}` (`i_1 < ... < i_l`) is
//! `t`-spread when `i_{k+1} - i_k >= t_k` for every `k`. The principal
//! Borel ideal `B_t(u)` is the smallest `t`-spread strongly stable ideal
//! containing `u`; its minimal generators are exactly the `t`-spread
//! monomials `x_{i_1} ... x_{i_d}` with `i_r <= j_r` for all `r`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{Monomial, VarSet, MAX_VARS};

/// Gap vector `t = (t_1, ..., t_{d-1})` with every `t_i >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SpreadVector(Vec<usize>);

impl SpreadVector {
    pub fn new(t: &[i64]) -> Result<Self> {
        if let Some(bad) = t.iter().find(|&&ti| ti <= 0) {
            return Err(Error::Unsupported(format!("spread entry {bad}: only t_i >= 1 (squarefree) is supported")));
        }
        Ok(SpreadVector(t.iter().map(|&ti| ti as usize).collect()))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `t_1 + ... + t_r` (0 for `r = 0`).
    pub fn partial_sum(&self, r: usize) -> usize {
        self.0[..r].iter().sum()
    }
}

impl<'de> Deserialize<'de> for SpreadVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        SpreadVector::new(&raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for SpreadVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for SpreadVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

/// A validated triple `(n, t, u)` defining `B_t(u) ⊂ K[x_1..x_n]`, with
/// `d >= 2`, `u` strictly increasing and `t`-spread, and `j_d = n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BorelInstance {
    n: usize,
    t: SpreadVector,
    u: Vec<usize>,
}

#[derive(Deserialize)]
struct InstanceRepr {
    n: usize,
    t: Vec<i64>,
    u: Vec<usize>,
}

impl<'de> Deserialize<'de> for BorelInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = InstanceRepr::deserialize(d)?;
        validate_instance(r.n, &r.t, &r.u).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for BorelInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for BorelInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_t(u) with n={} t={} u={}", self.n, self.t, self.generator())
    }
}

fn check_spread_shape(t: &[usize], u: &[usize]) -> Result<()> {
    if u.len() != t.len() + 1 {
        return Err(Error::invalid(format!("u has degree {} but t has {} entries (need d - 1)", u.len(), t.len())));
    }
    if u.first() == Some(&0) {
        return Err(Error::invalid("variable indices are 1-based"));
    }
    for (k, w) in u.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(Error::invalid(format!("u must be strictly increasing, got {u:?}")));
        }
        if w[1] - w[0] < t[k] {
            return Err(Error::invalid(format!(
                "u = {u:?} is not t-spread: j_{} - j_{} = {} < t_{} = {}",
                k + 2,
                k + 1,
                w[1] - w[0],
                k + 1,
                t[k]
            )));
        }
    }
    Ok(())
}

/// Validates raw input and normalizes `n` down to `j_d`.
pub fn validate_instance(n: usize, t: &[i64], u: &[usize]) -> Result<BorelInstance> {
    let t = SpreadVector::new(t)?;
    if u.len() < 2 {
        return Err(Error::invalid(format!("degree d = {} < 2: B_t(u) would be generated by variables", u.len())));
    }
    check_spread_shape(t.as_slice(), u)?;
    let jd = *u.last().expect("d >= 2");
    if jd > n {
        return Err(Error::invalid(format!("j_d = {jd} exceeds n = {n}")));
    }
    if jd > MAX_VARS {
        return Err(Error::Unsupported(format!("{jd} variables exceeds the maximum of {MAX_VARS}")));
    }
    Ok(BorelInstance { n: jd, t, u: u.to_vec() })
}

impl BorelInstance {
    pub fn new(n: usize, t: &[usize], u: &[usize]) -> Result<Self> {
        let t: Vec<i64> = t.iter().map(|&x| x as i64).collect();
        validate_instance(n, &t, u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.u.len()
    }

    pub fn t(&self) -> &SpreadVector {
        &self.t
    }

    /// The indices `j_1 < ... < j_d` of the Borel generator.
    pub fn u(&self) -> &[usize] {
        &self.u
    }

    /// The Borel generator `u = x_{j_1} ... x_{j_d}`.
    pub fn generator(&self) -> Monomial {
        Monomial::from_indices(self.n, &self.u).expect("validated")
    }

    /// `u = x_1 x_{1+t_1} ... x_{1+t_1+...+t_{d-1}}`, the only case where
    /// `B_t(u)` is principal.
    pub fn is_principal(&self) -> bool {
        (0..self.d()).all(|r| self.u[r] == self.t.partial_sum(r) + 1)
    }

    /// Re-runnable JSON literal `{"n":..,"t":[..],"u":[..]}`.
    pub fn literal(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Lexicographic enumeration of the tuples `i_1 < ... < i_d` with
/// `i_1 >= lower`, `i_r <= bounds[r]` and `i_{r+1} - i_r >= t_r`.
pub(crate) fn spread_tuples(lower: usize, t: &[usize], bounds: &[usize]) -> Vec<Vec<usize>> {
    fn rec(pos: usize, lo: usize, t: &[usize], bounds: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for i in lo..=bounds[pos] {
            cur.push(i);
            let next = if pos < t.len() { i + t[pos] } else { 0 };
            rec(pos + 1, next, t, bounds, cur, out);
            cur.pop();
        }
    }
    debug_assert!(bounds.len() <= t.len() + 1);
    let mut out = Vec::new();
    rec(0, lower.max(1), t, bounds, &mut Vec::with_capacity(bounds.len()), &mut out);
    out
}

/// Generators of the `t`-spread Borel ideal of `x_{bounds[0]} ... x_{bounds[d-1]}`
/// inside `K[x_lower, ..., x_n]`. For `d = 1` this is the prime
/// `(x_lower, ..., x_{bounds[0]})`.
pub(crate) fn borel_ideal_from(n: usize, lower: usize, t: &[usize], bounds: &[usize]) -> MonomialIdeal {
    let gens = spread_tuples(lower, t, bounds)
        .into_iter()
        .map(|tuple| Monomial::from_indices(n, &tuple).expect("indices within n"));
    minimalize(n, gens)
}

/// Minimal generators of `B_t(u)`, in lexicographic order of index tuples
/// (which coincides with the canonical generator order).
pub fn borel_gens(inst: &BorelInstance) -> MonomialIdeal {
    borel_ideal_from(inst.n, 1, inst.t.as_slice(), &inst.u)
}

/// The degenerate degree-one case: `(x_1, ..., x_j)` in `n` variables.
/// Not a valid [`BorelInstance`]; used as a recursion base.
pub fn degenerate_prime(j: usize, n: usize) -> Result<MonomialIdeal> {
    if j == 0 || j > n {
        return Err(Error::domain(format!("need 1 <= j <= n, got j = {j}, n = {n}")));
    }
    Ok(borel_ideal_from(n, 1, &[], &[j]))
}

fn squarefree_indices(m: &Monomial) -> Result<Vec<usize>> {
    if !m.is_squarefree() {
        return Err(Error::domain(format!("{m} is not squarefree")));
    }
    Ok(m.support().to_vec())
}

/// Whether the consecutive support gaps of `m` meet `t`.
pub fn is_t_spread(m: &Monomial, t: &SpreadVector) -> Result<bool> {
    let idx = squarefree_indices(m)?;
    if idx.len() > t.len() + 1 {
        return Err(Error::domain(format!("{m} has degree {} > d = {}", idx.len(), t.len() + 1)));
    }
    Ok(idx.windows(2).enumerate().all(|(k, w)| w[1] - w[0] >= t.as_slice()[k]))
}

/// `supp_t(m) = ∪_{s < l} [i_s, i_s + t_s - 1]`.
pub fn t_support(m: &Monomial, t: &SpreadVector) -> Result<VarSet> {
    if !is_t_spread(m, t)? {
        return Err(Error::domain(format!("{m} is not {t}-spread")));
    }
    let idx = m.support().to_vec();
    Ok(t_support_of_indices(&idx, t.as_slice()))
}

pub(crate) fn t_support_of_indices(idx: &[usize], t: &[usize]) -> VarSet {
    let mut set = VarSet::EMPTY;
    for s in 0..idx.len().saturating_sub(1) {
        set = set.union(VarSet::interval(idx[s], idx[s] + t[s] - 1));
    }
    set
}

/// The admissible exchanges of a `t`-spread monomial: `x_j (m / x_i)` for
/// `j < i`, `x_i | m`, whenever the result is again `t`-spread.
fn exchanges(m: &Monomial, t: &[usize]) -> Vec<Monomial> {
    let n = m.nvars();
    let idx = m.support().to_vec();
    let mut out = Vec::new();
    for (pos, &i) in idx.iter().enumerate() {
        for j in 1..i {
            if m.exponent(j) > 0 {
                continue;
            }
            let mut new = idx.clone();
            new[pos] = j;
            new.sort_unstable();
            let ok = new.iter().all(|&x| x >= 1)
                && new.windows(2).enumerate().all(|(k, w)| w[1] > w[0] && w[1] - w[0] >= t[k]);
            if ok {
                out.push(Monomial::from_indices(n, &new).expect("indices within n"));
            }
        }
    }
    out
}

/// Closure of `seeds` under all admissible exchanges: the ideal
/// `B_t(seeds)`. Breadth-first, deduplicated on the monomials themselves.
pub fn borel_closure_oracle(n: usize, seeds: &[Monomial], t: &SpreadVector) -> Result<MonomialIdeal> {
    let mut degree = None;
    for s in seeds {
        if s.nvars() != n {
            return Err(Error::Dimension { expected: n, found: s.nvars() });
        }
        if !is_t_spread(s, t)? {
            return Err(Error::domain(format!("seed {s} is not {t}-spread")));
        }
        if *degree.get_or_insert(s.degree()) != s.degree() {
            return Err(Error::domain("seeds must share one degree"));
        }
    }
    let mut seen: BTreeSet<Monomial> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Monomial> = seen.iter().cloned().collect();
    while let Some(m) = queue.pop_front() {
        for e in exchanges(&m, t.as_slice()) {
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    Ok(minimalize(n, seen))
}

/// Whether every admissible exchange of every generator stays in `I`.
pub fn is_t_strongly_stable(ideal: &MonomialIdeal, t: &SpreadVector) -> Result<bool> {
    for g in ideal.gens() {
        if !is_t_spread(g, t)? {
            return Err(Error::domain(format!("generator {g} is not {t}-spread")));
        }
    }
    Ok(ideal.gens().iter().all(|g| exchanges(g, t.as_slice()).iter().all(|e| ideal.contains(e))))
}

/// The intervals `B_r = [t_1 + ... + t_{r-1} + 1, j_r]`, `r = 1..d`.
/// A generator `x_{i_1} ... x_{i_d}` has `i_r ∈ B_r` for every `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockList {
    pub blocks: Vec<(usize, usize)>,
}

impl BlockList {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn size(&self, r: usize) -> usize {
        let (lo, hi) = self.blocks[r];
        hi + 1 - lo
    }

    pub fn set(&self, r: usize) -> VarSet {
        let (lo, hi) = self.blocks[r];
        VarSet::interval(lo, hi)
    }
}

pub fn blocks(inst: &BorelInstance) -> BlockList {
    let blocks = (0..inst.d()).map(|r| (inst.t.partial_sum(r) + 1, inst.u[r])).collect();
    BlockList { blocks }
}
