//! Monomial ideals held by their canonical minimal generating set `G(I)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monomial::{Monomial, PrimeSupport, VarSet, MAX_VARS};

/// A monomial ideal in `K[x_1, ..., x_n]`.
///
/// `gens` is always the minimal generating set, sorted by the canonical
/// order of [`Monomial`], so structural equality is ideal equality. The
/// zero ideal has no generators; the unit ideal has the single generator 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Reduces a list of monomials to the divisibility-minimal ones, deduplicated
/// and in canonical order.
pub fn minimalize(n: usize, ms: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut ms: Vec<Monomial> = ms.into_iter().collect();
    debug_assert!(ms.iter().all(|m| m.nvars() == n));
    ms.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    ms.dedup();

    let mut kept: Vec<Monomial> = Vec::with_capacity(ms.len());
    // Only strictly lower-degree generators can properly divide a candidate,
    // and equal ones were removed above.
    let mut lower = 0;
    let mut current_degree = None;
    for m in ms {
        if current_degree != Some(m.degree()) {
            lower = kept.len();
            current_degree = Some(m.degree());
        }
        if !kept[..lower].iter().any(|g| g.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    MonomialIdeal { n, gens: kept }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Dimension { expected: a, found: b })
    }
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    /// Ideal generated by `gens`, which need not be minimal.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Unsupported(format!("{n} variables exceeds the maximum of {MAX_VARS}")));
        }
        for g in &gens {
            check_dims(n, g.nvars())?;
        }
        Ok(minimalize(n, gens))
    }

    /// Convenience constructor from 1-based index lists.
    pub fn from_index_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let gens = lists.iter().map(|l| Monomial::from_indices(n, l)).collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }

    /// The prime `P_A = (x_i : i ∈ A)`.
    pub fn prime(n: usize, a: PrimeSupport) -> Self {
        let gens = a.vars().iter().map(|i| Monomial::from_support(n, VarSet::singleton(i))).collect::<Vec<_>>();
        minimalize(n, gens)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// All generators share one degree.
    pub fn is_equigenerated(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    /// Whether the ideal is generated by variables (a monomial prime).
    pub fn is_prime(&self) -> bool {
        !self.gens.is_empty() && self.gens.iter().all(|g| g.degree() == 1)
    }

    /// The prime support when the ideal is generated by variables.
    pub fn as_prime(&self) -> Option<PrimeSupport> {
        if !self.is_prime() {
            return None;
        }
        let vars = self.gens.iter().fold(VarSet::EMPTY, |acc, g| acc.union(g.support()));
        PrimeSupport::new(vars).ok()
    }

    /// Union of the supports of the generators.
    pub fn support(&self) -> VarSet {
        self.gens.iter().fold(VarSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).min().unwrap_or(0)
    }

    /// `lcm(G(I))`; 1 for the zero ideal.
    pub fn gens_lcm(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.n), |acc, g| acc.lcm_unchecked(g))
    }

    /// Whether `m ∈ I`: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(self.n, m.nvars());
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dims(self.n, other.n)?;
        Ok(minimalize(self.n, self.gens.iter().chain(other.gens.iter()).cloned()))
    }

    /// `I · J`.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dims(self.n, other.n)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul_unchecked(b));
            }
        }
        Ok(minimalize(self.n, out))
    }

    /// `m · I`.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        check_dims(self.n, m.nvars())?;
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.mul_unchecked(m)).collect();
        // Multiplying by a monomial preserves minimality.
        gens.sort_unstable();
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `I ∩ J`: the minimal elements among pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dims(self.n, other.n)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.lcm_unchecked(b));
            }
        }
        Ok(minimalize(self.n, out))
    }

    /// `I ∩ P_A^k` without materializing `P_A^k`.
    ///
    /// A minimal element of the intersection is `g · m` where `g ∈ G(I)` and
    /// `m` ranges over monomials supported on `A` of degree
    /// `max(0, k - deg_A(g))`.
    pub fn intersect_prime_power(&self, a: PrimeSupport, k: u32) -> MonomialIdeal {
        let mut out = Vec::new();
        let vars = a.vars().to_vec();
        for g in &self.gens {
            let have = g.degree_in(a.vars());
            if have >= k {
                out.push(g.clone());
                continue;
            }
            for_each_monomial_of_degree(self.n, &vars, k - have, |m| out.push(g.mul_unchecked(m)));
        }
        minimalize(self.n, out)
    }

    /// `I : m`, generated by `g / gcd(g, m)` over `g ∈ G(I)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        check_dims(self.n, m.nvars())?;
        Ok(minimalize(self.n, self.gens.iter().map(|g| g.colon_unchecked(m))))
    }

    /// `I^k`; `I^0` is the unit ideal by convention.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `P_A^k`: all monomials of degree exactly `k` supported on `A`.
    pub fn prime_power(a: &VarSet, k: u32, n: usize) -> Result<MonomialIdeal> {
        let a = PrimeSupport::new(*a)?;
        if !a.vars().is_subset(VarSet::full(n)) {
            return Err(Error::domain(format!("{:?} is not a subset of [{n}]", a.vars())));
        }
        let mut out = Vec::new();
        for_each_monomial_of_degree(n, &a.vars().to_vec(), k, |m| out.push(m.clone()));
        Ok(minimalize(n, out))
    }

    /// `I^{≤a}`: the generators whose exponents are bounded by `a`.
    pub fn restriction(&self, a: &[u16]) -> Result<MonomialIdeal> {
        check_dims(self.n, a.len())?;
        let gens = self.gens.iter().filter(|g| g.exponents().iter().zip(a).all(|(e, b)| e <= b)).cloned().collect();
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// Monomial localization `I(P)`: every variable outside `P` is set to 1.
    /// The result keeps `n` but only involves the variables of `P`.
    pub fn localize(&self, p: PrimeSupport) -> MonomialIdeal {
        minimalize(self.n, self.gens.iter().map(|g| g.restrict_to(p.vars())))
    }

    /// `I ∩ K[x_i : i ∈ keep]`: the generators supported on `keep`.
    pub fn restrict_to_vars(&self, keep: VarSet) -> MonomialIdeal {
        let gens = self.gens.iter().filter(|g| g.support().is_subset(keep)).cloned().collect();
        MonomialIdeal { n: self.n, gens }
    }

    /// Re-embeds the ideal in `n` variables via `x_i -> x_{i + shift}`.
    pub fn shift(&self, n: usize, shift: isize) -> Result<MonomialIdeal> {
        let gens = self.gens.iter().map(|g| g.shift(n, shift)).collect::<Result<Vec<_>>>()?;
        Ok(minimalize(n, gens))
    }

    /// Associated primes of `S/I`, found by searching the divisors `w` of
    /// `lcm(G(I))` for which `I : w` is generated by variables. Capping the
    /// search at the lcm is complete: raising an exponent of `w` beyond the
    /// largest exponent of that variable in `G(I)` leaves `I : w` unchanged.
    pub fn associated_primes(&self) -> Result<BTreeSet<PrimeSupport>> {
        if self.is_zero() || self.is_unit() {
            return Err(Error::domain("associated primes need a proper non-zero ideal"));
        }
        let bound = self.gens_lcm();
        let bound = bound.exponents();
        let mut w = vec![0u16; self.n];
        let mut found = BTreeSet::new();
        loop {
            let wm = Monomial::new(w.clone())?;
            if !self.contains(&wm) {
                let c = minimalize(self.n, self.gens.iter().map(|g| g.colon_unchecked(&wm)));
                if let Some(p) = c.as_prime() {
                    found.insert(p);
                }
            }
            // odometer increment over the box bounded by the lcm
            let mut i = 0;
            loop {
                if i == self.n {
                    return Ok(found);
                }
                if w[i] < bound[i] {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
                i += 1;
            }
        }
    }
}

/// Calls `f` on every monomial of degree `k` in the variables `vars` (1-based).
pub(crate) fn for_each_monomial_of_degree(n: usize, vars: &[usize], k: u32, mut f: impl FnMut(&Monomial)) {
    fn rec(vars: &[usize], k: u32, exps: &mut Vec<u16>, f: &mut dyn FnMut(&Monomial)) {
        match vars.split_first() {
            None => {
                if k == 0 {
                    f(&Monomial::new(exps.clone()).expect("ambient checked"));
                }
            }
            Some((&v, rest)) => {
                if rest.is_empty() {
                    exps[v - 1] = k as u16;
                    rec(rest, 0, exps, f);
                    exps[v - 1] = 0;
                    return;
                }
                for e in (0..=k).rev() {
                    exps[v - 1] = e as u16;
                    rec(rest, k - e, exps, f);
                }
                exps[v - 1] = 0;
            }
        }
    }
    if vars.is_empty() && k > 0 {
        return;
    }
    let mut exps = vec![0u16; n];
    rec(vars, k, &mut exps, &mut f);
}

/// Folds [`MonomialIdeal::intersect_prime_power`] over `primes`, giving
/// `∩ P^k`. An empty list yields the unit ideal.
pub fn intersect_prime_powers(n: usize, primes: &[PrimeSupport], k: u32, limits: &Limits) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(n);
    for &p in primes {
        acc = acc.intersect_prime_power(p, k);
        limits.check_generators(acc.len(), "intersection of prime powers")?;
    }
    Ok(acc)
}

/// Left fold of [`MonomialIdeal::intersect`] with the generator cap checked
/// after every step. An empty list yields the unit ideal.
pub fn intersect_all<'a>(
    n: usize,
    ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
    limits: &Limits,
) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(n);
    for i in ideals {
        acc = acc.intersect(i)?;
        limits.check_generators(acc.len(), "intersection")?;
    }
    Ok(acc)
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} vars", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    n: usize,
    gens: Vec<Vec<usize>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRepr { n: self.n, gens: self.gens.iter().map(Monomial::indices).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = IdealRepr::deserialize(d)?;
        let gens = repr
            .gens
            .iter()
            .map(|l| Monomial::from_indices(repr.n, l))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MonomialIdeal::new(repr.n, gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_indices(n, idx).unwrap()
    }

    fn ideal(n: usize, lists: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_index_lists(n, lists).unwrap()
    }

    fn ps(idx: &[usize]) -> PrimeSupport {
        PrimeSupport::new(VarSet::from_indices(idx.iter().copied()).unwrap()).unwrap()
    }

    /// Every monomial in `n` variables of total degree at most `max`.
    fn all_monomials(n: usize, max: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let vars: Vec<usize> = (1..=n).collect();
        for k in 0..=max {
            for_each_monomial_of_degree(n, &vars, k, |x| out.push(x.clone()));
        }
        out
    }

    #[test]
    fn minimalize_examples() {
        let i = minimalize(3, vec![m(3, &[1]), m(3, &[1, 2]), m(3, &[2, 3])]);
        assert_eq!(i, ideal(3, &[&[1], &[2, 3]]));
        assert_eq!(i.gens(), &[m(3, &[2, 3]), m(3, &[1])]);
        assert!(minimalize(3, vec![]).is_zero());
        assert_eq!(minimalize(3, vec![m(3, &[1, 2]), m(3, &[1, 2])]).len(), 1);
    }

    #[test]
    fn contains_examples() {
        let i = ideal(3, &[&[1, 2]]);
        assert!(i.contains(&m(3, &[1, 2, 3])));
        assert!(!i.contains(&m(3, &[1])));
        let z = MonomialIdeal::zero(3);
        assert!(all_monomials(3, 3).iter().all(|x| !z.contains(x)));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(ideal(3, &[&[1]]).intersect(&ideal(3, &[&[2]])).unwrap(), ideal(3, &[&[1, 2]]));
        let a = ideal(3, &[&[1], &[2]]);
        let b = ideal(3, &[&[2], &[3]]);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, ideal(3, &[&[2], &[1, 3]]));
        // membership oracle over all monomials of degree <= 2
        for x in all_monomials(3, 2) {
            assert_eq!(c.contains(&x), a.contains(&x) && b.contains(&x), "{x}");
        }
        let i = ideal(3, &[&[1, 2], &[3, 3]]);
        assert_eq!(i.intersect(&MonomialIdeal::unit(3)).unwrap(), i);
    }

    #[test]
    fn colon_examples() {
        let i = ideal(8, &[&[2], &[4, 5]]);
        let w = m(8, &[4, 6, 7, 8]);
        let c = i.colon(&w).unwrap();
        assert_eq!(c, ideal(8, &[&[2], &[5]]));
        for x in all_monomials(8, 2) {
            assert_eq!(c.contains(&x), i.contains(&x.mul(&w).unwrap()), "{x}");
        }
        assert_eq!(i.colon(&Monomial::one(8)).unwrap(), i);
        assert!(ideal(2, &[&[1, 2]]).colon(&m(2, &[1, 2])).unwrap().is_unit());
    }

    #[test]
    fn power_examples() {
        assert_eq!(ideal(2, &[&[1, 2]]).power(2), ideal(2, &[&[1, 1, 2, 2]]));
        assert_eq!(ideal(2, &[&[1], &[2]]).power(2), ideal(2, &[&[1, 1], &[1, 2], &[2, 2]]));
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let sq = tri.power(2);
        assert_eq!(sq.len(), 6);
        assert!(sq.gens().iter().all(|g| g.degree() == 4));
        assert!(!sq.contains(&m(3, &[1, 2, 3])));
        assert!(tri.power(0).is_unit());
        assert_eq!(tri.power(1), tri);
    }

    #[test]
    fn prime_power_examples() {
        let a = VarSet::from_indices([1, 2]).unwrap();
        assert_eq!(MonomialIdeal::prime_power(&a, 1, 3).unwrap(), ideal(3, &[&[1], &[2]]));
        assert_eq!(MonomialIdeal::prime_power(&a, 2, 3).unwrap(), ideal(3, &[&[1, 1], &[1, 2], &[2, 2]]));
        assert!(MonomialIdeal::prime_power(&VarSet::EMPTY, 2, 3).is_err());
        // stars and bars, cross-checked by filtering all monomials of degree k
        for size in 1..=4usize {
            for k in 1..=3u32 {
                let a = VarSet::interval(1, size);
                let p = MonomialIdeal::prime_power(&a, k, 5).unwrap();
                let brute =
                    all_monomials(5, k).into_iter().filter(|x| x.degree() == k && x.support().is_subset(a)).count();
                assert_eq!(p.len(), brute);
                let binom = (1..=k as usize).fold(1usize, |acc, i| acc * (size + i - 1) / i);
                assert_eq!(p.len(), binom);
            }
        }
    }

    #[test]
    fn intersect_prime_power_matches_generic() {
        let i = ideal(4, &[&[1, 2], &[2, 3, 3], &[4]]);
        for a in [ps(&[1, 2]), ps(&[2, 4]), ps(&[1, 2, 3, 4]), ps(&[3])] {
            for k in 1..=3 {
                let p = MonomialIdeal::prime_power(&a.vars(), k, 4).unwrap();
                assert_eq!(i.intersect_prime_power(a, k), i.intersect(&p).unwrap());
            }
        }
    }

    #[test]
    fn associated_primes_examples() {
        let ass = ideal(2, &[&[1, 2]]).associated_primes().unwrap();
        assert_eq!(ass.into_iter().collect::<Vec<_>>(), vec![ps(&[1]), ps(&[2])]);
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let ass = tri.associated_primes().unwrap();
        assert_eq!(ass, [ps(&[1, 2]), ps(&[1, 3]), ps(&[2, 3])].into_iter().collect());
        let ass2 = tri.power(2).associated_primes().unwrap();
        assert!(ass2.contains(&ps(&[1, 2, 3])));
        assert_eq!(tri.power(2).colon(&m(3, &[1, 2, 3])).unwrap(), MonomialIdeal::prime(3, ps(&[1, 2, 3])));
        assert!(MonomialIdeal::zero(3).associated_primes().is_err());
        assert!(MonomialIdeal::unit(3).associated_primes().is_err());
    }

    #[test]
    fn restriction_and_localization() {
        let tri = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(tri.restriction(&[1, 1, 1]).unwrap(), tri);
        assert_eq!(tri.restriction(&[1, 0, 1]).unwrap(), ideal(3, &[&[1, 3]]));
        assert_eq!(tri.localize(ps(&[1, 2, 3])), tri);
        assert_eq!(tri.localize(ps(&[1, 2])), ideal(3, &[&[1], &[2]]));
    }

    #[test]
    fn fold_respects_cap() {
        let tight = Limits { max_generators: 2, ..Limits::default() };
        let primes = [ps(&[1, 2, 3]), ps(&[1, 2, 3])];
        let err = intersect_prime_powers(3, &primes, 2, &tight).unwrap_err();
        assert!(err.is_resource());
        let ok = intersect_prime_powers(3, &primes, 2, &Limits::default()).unwrap();
        assert_eq!(ok.len(), 6);
    }

    #[test]
    fn serde_round_trip() {
        let i = ideal(8, &[&[2, 4, 5], &[1, 1]]);
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"n":8,"gens":[[2,4,5],[1,1]]}"#);
        let back: MonomialIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
    }
}
