//! Monomials as exponent vectors, plus bitmask subsets of the variables.
//!
//! Variables are 1-based in every public API (`x1..xn`) and stored 0-based.
//! The ambient variable count is capped at [`MAX_VARS`] so that supports and
//! subsets fit a single `u64`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ambient variable count.
pub const MAX_VARS: usize = 64;

fn check_ambient(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(Error::Unsupported(format!("{n} variables exceeds the maximum of {MAX_VARS}")))
    } else {
        Ok(())
    }
}

/// A subset of `[n]`, stored as a bitmask (bit `i - 1` stands for `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    /// The integer interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return VarSet::EMPTY;
        }
        let lo = lo.max(1);
        VarSet(VarSet::full(hi).0 & !VarSet::full(lo - 1).0)
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&i));
        VarSet(1u64 << (i - 1))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i == 0 || i > MAX_VARS {
                return Err(Error::domain(format!("variable index {i} out of range")));
            }
            bits |= 1u64 << (i - 1);
        }
        Ok(VarSet(bits))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= VarSet::singleton(i).0;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    /// `[n] \ self`.
    pub fn complement(self, n: usize) -> VarSet {
        VarSet(VarSet::full(n).0 & !self.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VarSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VarSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        VarSet::from_indices(v).map_err(serde::de::Error::custom)
    }
}

/// A non-empty `A ⊆ [n]`, standing for the monomial prime `P_A = (x_i : i ∈ A)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeSupport(VarSet);

impl PrimeSupport {
    pub fn new(vars: VarSet) -> Result<Self> {
        if vars.is_empty() {
            Err(Error::domain("a monomial prime needs at least one variable"))
        } else {
            Ok(PrimeSupport(vars))
        }
    }

    pub fn vars(self) -> VarSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl<'de> Deserialize<'de> for PrimeSupport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PrimeSupport::new(VarSet::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.0)
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{i}")?;
        }
        f.write_str(")")
    }
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}` in a ring with `n` variables.
///
/// The support mask and total degree are cached next to the exponents; they
/// make the divisibility test a two-word prefilter before the per-variable
/// comparison, which is exact on its own for squarefree monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    support: u64,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Result<Self> {
        check_ambient(exps.len())?;
        Ok(Self::from_exps_unchecked(exps.into_boxed_slice()))
    }

    fn from_exps_unchecked(exps: Box<[u16]>) -> Self {
        let mut support = 0u64;
        let mut degree = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                support |= 1u64 << i;
                degree += u32::from(e);
            }
        }
        Monomial { exps, support, degree }
    }

    pub fn one(n: usize) -> Self {
        Self::from_exps_unchecked(vec![0; n].into_boxed_slice())
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        Self::from_indices(n, &[i])
    }

    /// Builds a monomial from a multiset of 1-based indices, so `[1, 3, 3]`
    /// is `x1*x3^2`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        check_ambient(n)?;
        let mut exps = vec![0u16; n];
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::domain(format!("variable index {i} outside [1, {n}]")));
            }
            exps[i - 1] += 1;
        }
        Ok(Self::from_exps_unchecked(exps.into_boxed_slice()))
    }

    /// The squarefree monomial `x_F = prod_{i in F} x_i`.
    pub fn from_support(n: usize, set: VarSet) -> Self {
        debug_assert!(set.is_subset(VarSet::full(n)));
        let exps: Vec<u16> = (1..=n).map(|i| u16::from(set.contains(i))).collect();
        Self::from_exps_unchecked(exps.into_boxed_slice())
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn support(&self) -> VarSet {
        VarSet(self.support)
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree as usize == self.support.count_ones() as usize
    }

    /// Degree of `self` in the variables of `set`.
    pub fn degree_in(&self, set: VarSet) -> u32 {
        VarSet(self.support & set.0).iter().map(|i| u32::from(self.exps[i - 1])).sum()
    }

    /// 1-based indices with repetition, increasing.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            out.extend(std::iter::repeat_n(i + 1, e as usize));
        }
        out
    }

    fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.nvars(), found: other.nvars() })
        }
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        if self.degree > other.degree || self.support & !other.support != 0 {
            return false;
        }
        if self.degree as usize == self.support.count_ones() as usize
            && other.degree as usize == other.support.count_ones() as usize
        {
            return true;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)).collect();
        Self::from_exps_unchecked(exps)
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.min(b)).collect();
        Ok(Self::from_exps_unchecked(exps))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Self::from_exps_unchecked(exps)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let k = u16::try_from(k).expect("exponent overflow");
        let exps: Box<[u16]> = self.exps.iter().map(|&a| a.checked_mul(k).expect("exponent overflow")).collect();
        Self::from_exps_unchecked(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() || !other.divides(self) {
            return None;
        }
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a - b).collect();
        Some(Self::from_exps_unchecked(exps))
    }

    /// `self / gcd(self, m)`: the generator of `(self) : (m)`.
    pub(crate) fn colon_unchecked(&self, m: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self.exps.iter().zip(m.exps.iter()).map(|(&a, &b)| a.saturating_sub(b)).collect();
        Self::from_exps_unchecked(exps)
    }

    /// Sets every variable outside `keep` to 1.
    pub fn restrict_to(&self, keep: VarSet) -> Monomial {
        let exps: Box<[u16]> =
            self.exps.iter().enumerate().map(|(i, &e)| if keep.contains(i + 1) { e } else { 0 }).collect();
        Self::from_exps_unchecked(exps)
    }

    /// Re-embeds `self` in a ring with `n` variables, sending `x_i` to
    /// `x_{i + shift}`. Fails if an index would leave `[1, n]`.
    pub fn shift(&self, n: usize, shift: isize) -> Result<Monomial> {
        check_ambient(n)?;
        let mut exps = vec![0u16; n];
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = i as isize + shift;
            if j < 0 || j as usize >= n {
                return Err(Error::domain(format!("x{} cannot be shifted by {shift} into {n} variables", i + 1)));
            }
            exps[j as usize] = e;
        }
        Ok(Self::from_exps_unchecked(exps.into_boxed_slice()))
    }
}

/// Canonical generator order: descending degree, then descending
/// lexicographic order on exponent vectors (so `x1x2 < x1x3 < x2x3`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree.cmp(&self.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// Parses either the product form `x1*x3^2` (or `1`) or the index-list form
/// `[1,3,3]`. Neither form carries `n`, so parsing goes through
/// [`parse_monomial`].
pub fn parse_monomial(n: usize, text: &str) -> Result<Monomial> {
    let text = text.trim();
    if text.starts_with('[') {
        let indices: Vec<usize> =
            serde_json::from_str(text).map_err(|e| Error::domain(format!("bad index list `{text}`: {e}")))?;
        return Monomial::from_indices(n, &indices);
    }
    if text == "1" {
        return Ok(Monomial::one(n));
    }
    let mut indices = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let body =
            factor.strip_prefix('x').ok_or_else(|| Error::domain(format!("bad factor `{factor}` in `{text}`")))?;
        let (var, exp) = match body.split_once('^') {
            Some((v, e)) => (v, e),
            None => (body, "1"),
        };
        let var: usize = var.parse().map_err(|_| Error::domain(format!("bad variable in `{factor}`")))?;
        let exp: usize = exp.parse().map_err(|_| Error::domain(format!("bad exponent in `{factor}`")))?;
        indices.extend(std::iter::repeat_n(var, exp));
    }
    Monomial::from_indices(n, &indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_indices(n, idx).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m(3, &[1, 2]).lcm(&m(3, &[2, 3])).unwrap(), m(3, &[1, 2, 3]));
        let x = m(3, &[1, 3, 3]);
        assert_eq!(x.lcm(&Monomial::one(3)).unwrap(), x);
        assert_eq!(m(2, &[1, 1]).lcm(&m(2, &[1, 2])).unwrap(), m(2, &[1, 1, 2]));
        assert_eq!(m(2, &[1]).lcm(&m(3, &[1])), Err(Error::Dimension { expected: 2, found: 3 }));
    }

    #[test]
    fn divisibility_mixed_exponents() {
        assert!(m(3, &[1, 2]).divides(&m(3, &[1, 1, 2])));
        assert!(!m(3, &[1, 1]).divides(&m(3, &[1, 2, 3])));
        assert!(Monomial::one(3).divides(&m(3, &[2])));
        assert!(!m(3, &[3]).divides(&m(3, &[1, 2])));
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![m(3, &[2, 3]), m(3, &[1]), m(3, &[1, 3]), m(3, &[1, 2])];
        v.sort();
        assert_eq!(v, vec![m(3, &[1, 2]), m(3, &[1, 3]), m(3, &[2, 3]), m(3, &[1])]);
    }

    #[test]
    fn text_forms() {
        let x = m(4, &[1, 3, 3]);
        assert_eq!(x.to_string(), "x1*x3^2");
        assert_eq!(parse_monomial(4, "x1*x3^2").unwrap(), x);
        assert_eq!(parse_monomial(4, "[1,3,3]").unwrap(), x);
        assert_eq!(parse_monomial(4, "1").unwrap(), Monomial::one(4));
        assert!(parse_monomial(4, "x5").is_err());
        assert!(parse_monomial(4, "y1").is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,3,3]");
    }

    #[test]
    fn varset_basics() {
        let s = VarSet::interval(3, 5);
        assert_eq!(s.to_vec(), vec![3, 4, 5]);
        assert_eq!(s.complement(6).to_vec(), vec![1, 2, 6]);
        assert_eq!(VarSet::interval(4, 3), VarSet::EMPTY);
        assert_eq!((s.min(), s.max()), (Some(3), Some(5)));
        assert_eq!(VarSet::full(64).len(), 64);
        assert!(PrimeSupport::new(VarSet::EMPTY).is_err());
    }

    #[test]
    fn shift_and_restrict() {
        let x = m(6, &[3, 6]);
        assert_eq!(x.shift(4, -2).unwrap(), m(4, &[1, 4]));
        assert!(x.shift(4, -3).is_err());
        assert_eq!(x.restrict_to(VarSet::interval(1, 4)), m(6, &[3]));
    }
}
