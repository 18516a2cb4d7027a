//! Partitions, flag types and the combinatorics attached to them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A nonincreasing sequence of nonnegative integers, stored without
/// trailing zeros. The empty partition is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!(
                "partition parts must be nonincreasing, got {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(1, ..., 1)` with `n` ones.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `i`-th part (zero based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `conjugate()[j] = #{ i : parts[i] > j }`.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        }
    }

    /// `k.λ`, every part multiplied by `k`.
    pub fn scale(&self, k: u32) -> Partition {
        Partition::new(self.parts.iter().map(|p| p * k).collect()).expect("scaling keeps parts nonincreasing")
    }

    /// Componentwise sum, the shorter partition padded with zeros.
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition::new((0..n).map(|i| self.part(i) + other.part(i)).collect())
            .expect("sum of partitions is nonincreasing")
    }

    /// True if the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Elementary symmetric function `Λ_i` of the parts; `Λ_0 = 1`.
    pub fn elem_sym(&self, i: usize) -> Result<u64> {
        if i > self.len() {
            return Err(Error::domain(format!(
                "elementary symmetric index {i} exceeds partition length {}",
                self.len()
            )));
        }
        // coefficients of prod (1 + λ_j t)
        let mut e = vec![0u64; self.len() + 1];
        e[0] = 1;
        for (j, &p) in self.parts.iter().enumerate() {
            for k in (1..=j + 1).rev() {
                e[k] += e[k - 1] * u64::from(p);
            }
        }
        Ok(e[i])
    }

    /// `Λ_i` with the convention `Λ_i = 0` past the length; used when a
    /// formula mentions `Λ_2` of a one-part partition.
    pub fn elem_sym_or_zero(&self, i: usize) -> u64 {
        self.elem_sym(i).unwrap_or(0)
    }

    /// `Σ_i (2i - 1) λ_i`, which equals the sum of squared conjugate parts.
    pub fn odd_weighted_sum(&self) -> u64 {
        let direct: u64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (2 * i as u64 + 1) * u64::from(p))
            .sum();
        let squares: u64 = self
            .conjugate()
            .parts
            .iter()
            .map(|&c| u64::from(c) * u64::from(c))
            .sum();
        assert_eq!(direct, squares, "odd-weighted sum differs from conjugate squares");
        direct
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `3,2,1`, `[3,2,1]`, `[]` and the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Flag type `r = (r_1 > r_2 > ... > r_t > 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FlagType(Partition);

impl FlagType {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::domain(format!(
                "flag type must be strictly decreasing and positive, got {parts:?}"
            )));
        }
        Ok(FlagType(Partition { parts }))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest flag parameter `r_1`.
    pub fn largest(&self) -> u32 {
        self.0.part(0)
    }

    /// The flag shapes `(2), (3), (3,1), (3,2), (3,2,1)` covered by the
    /// instability theorems.
    pub fn theorem_shapes() -> Vec<FlagType> {
        [vec![2], vec![3], vec![3, 1], vec![3, 2], vec![3, 2, 1]]
            .into_iter()
            .map(|p| FlagType::new(p).expect("valid flag type"))
            .collect()
    }
}

impl<'de> Deserialize<'de> for FlagType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        FlagType::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for FlagType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FlagType::new(s.parse::<Partition>()?.parts)
    }
}

/// Rank of the Schur power `E^λ` of a rank-`e` bundle by the hook-content
/// formula; zero when `λ` is longer than `e`.
pub fn schur_rank(lambda: &Partition, e: u32) -> BigUint {
    if lambda.len() > e as usize {
        return BigUint::zero();
    }
    let conj = lambda.conjugate();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row as usize {
            // e + content is positive because i < len(λ) <= e
            num *= BigUint::from(e as usize + j - i);
            let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
            den *= BigUint::from(hook);
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Littlewood-Richardson coefficient `N_{νμ}^λ`: the number of skew
/// tableaux of shape `λ/ν` and content `μ` whose reverse reading word is a
/// lattice word.
pub fn lr_coefficient(nu: &Partition, mu: &Partition, lambda: &Partition) -> u64 {
    if nu.size() + mu.size() != lambda.size() || !lambda.contains(nu) {
        return 0;
    }
    let mut cells = Vec::new();
    for r in 0..lambda.len() {
        for c in (nu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let mut filler = LrFiller {
        nu,
        lambda,
        content: mu.parts(),
        grid: lambda.parts.iter().map(|&p| vec![0u32; p as usize]).collect(),
        counts: vec![0; mu.len() + 1],
        cells,
    };
    filler.count(0)
}

struct LrFiller<'a> {
    nu: &'a Partition,
    lambda: &'a Partition,
    content: &'a [u32],
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
    cells: Vec<(usize, usize)>,
}

impl LrFiller<'_> {
    fn count(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (r, c) = self.cells[idx];
        let mut total = 0;
        for v in 1..=self.content.len() as u32 {
            let vi = v as usize;
            if self.counts[vi] >= self.content[vi - 1] {
                continue;
            }
            // lattice word: after placing v there are never more v's than (v-1)'s
            if v > 1 && self.counts[vi - 1] <= self.counts[vi] {
                continue;
            }
            // rows weakly increase; the cell to the right is already filled
            if c + 1 < self.lambda.part(r) as usize && v > self.grid[r][c + 1] {
                continue;
            }
            // columns strictly increase
            if r > 0 && c >= self.nu.part(r - 1) as usize && v <= self.grid[r - 1][c] {
                continue;
            }
            self.grid[r][c] = v;
            self.counts[vi] += 1;
            total += self.count(idx + 1);
            self.counts[vi] -= 1;
            self.grid[r][c] = 0;
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrTerm {
    pub nu: Partition,
    pub mu: Partition,
    pub multiplicity: u64,
}

/// All `(ν, μ, N_{νμλ})` with `N > 0`, `len(ν) <= f_rank`, `len(μ) <= g_rank`
/// and optionally `|ν| <= max_nu_size`. This is the decomposition of
/// `(F ⊕ G)^λ` into `F^ν ⊗ G^μ`. Ordered by decreasing `|ν|`, then `ν`.
pub fn lr_decompose(lambda: &Partition, f_rank: u32, g_rank: u32, max_nu_size: Option<u32>) -> Vec<LrTerm> {
    let bound = max_nu_size.unwrap_or(lambda.size()).min(lambda.size());
    let mut out = Vec::new();
    for nu in sub_partitions(lambda) {
        if nu.size() > bound || nu.len() > f_rank as usize {
            continue;
        }
        for mu in partitions_of(lambda.size() - nu.size()) {
            if mu.len() > g_rank as usize {
                continue;
            }
            let n = lr_coefficient(&nu, &mu, lambda);
            if n > 0 {
                out.push(LrTerm {
                    nu: nu.clone(),
                    mu,
                    multiplicity: n,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        b.nu.size()
            .cmp(&a.nu.size())
            .then_with(|| b.nu.cmp(&a.nu))
            .then_with(|| b.mu.cmp(&a.mu))
    });
    out
}

/// Partitions whose diagram fits inside `lambda`.
fn sub_partitions(lambda: &Partition) -> Vec<Partition> {
    fn go(lambda: &Partition, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            out.push(Partition::new(cur.clone()).expect("nonincreasing by construction"));
            return;
        }
        for p in 0..=cap.min(lambda.part(i)) {
            cur.push(p);
            go(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rem: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Borel-Bott-Weil translation `ν ↦ ν̂ + r'`.
///
/// `ν̂` repeats `ν_i` exactly `δ_i = r_i - r_{i+1}` times (with
/// `r_{t+1} = 0`) and then subtracts one from every entry; `r'` is the
/// conjugate of `r`. The result always has length `r_1`.
pub fn bbw_translate(nu: &Partition, r: &FlagType) -> Result<Partition> {
    let t = r.len();
    if nu.len() != t {
        return Err(Error::domain(format!(
            "ν = {nu} must have exactly t = {t} positive parts to give a relatively ample line bundle"
        )));
    }
    let rp = r.partition().parts();
    let mut hat = Vec::with_capacity(r.largest() as usize);
    for i in 0..t {
        let delta = rp[i] - rp.get(i + 1).copied().unwrap_or(0);
        hat.extend(std::iter::repeat_n(nu.part(i) - 1, delta as usize));
    }
    let conj = r.partition().conjugate();
    let raw: Vec<u32> = hat.iter().enumerate().map(|(i, h)| h + conj.part(i)).collect();
    if raw.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::internal(format!(
            "translation of ν = {nu} along r = {r} is not a partition: {raw:?}"
        )));
    }
    let lambda = Partition { parts: raw };
    if lambda.len() != r.largest() as usize {
        return Err(Error::internal(format!(
            "translated partition {lambda} does not have length r_1 = {}",
            r.largest()
        )));
    }
    Ok(lambda)
}

/// Restartable stream over every partition with at most `max_length` parts,
/// each at most `max_part`, ordered by size and then lexicographically
/// decreasing.
#[derive(Clone, Debug)]
pub struct PartitionsInBox {
    items: std::vec::IntoIter<Partition>,
}

impl Iterator for PartitionsInBox {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.items.next()
    }
}

pub fn enumerate_partitions(max_length: usize, max_part: u32) -> PartitionsInBox {
    fn go(len: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition { parts: cur.clone() });
        if cur.len() == len {
            return;
        }
        for p in 1..=cap {
            cur.push(p);
            go(len, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_length, max_part, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    PartitionsInBox { items: out.into_iter() }
}

/// Weight multiplicities of the Schur polynomial `s_λ(x_1, ..., x_e)`:
/// maps each exponent vector to the number of semistandard tableaux of
/// shape `λ` with that content. Computed with the branching rule over
/// horizontal strips.
pub fn kostka_weights(lambda: &Partition, e: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    if lambda.len() > e {
        return out;
    }
    if e == 0 {
        out.insert(Vec::new(), 1);
        return out;
    }
    for mu in horizontal_strip_removals(lambda) {
        if mu.len() > e - 1 {
            continue;
        }
        let last = lambda.size() - mu.size();
        for (mut w, c) in kostka_weights(&mu, e - 1) {
            w.push(last);
            *out.entry(w).or_insert(0) += c;
        }
    }
    out
}

/// All `μ` with `λ_{i+1} <= μ_i <= λ_i`.
fn horizontal_strip_removals(lambda: &Partition) -> Vec<Partition> {
    let mut out = vec![Vec::new()];
    for i in 0..lambda.len() {
        let (lo, hi) = (lambda.part(i + 1), lambda.part(i));
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (lo..=hi).map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|v| Partition::new(v).expect("interlacing sequence is nonincreasing"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[0]).len(), 0);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn scale_and_add() {
        assert_eq!(p(&[3, 1]).scale(2), p(&[6, 2]));
        assert_eq!(p(&[1, 1]).add(&p(&[2, 0])), p(&[3, 1]));
        assert_eq!(p(&[4, 2]).scale(1), p(&[4, 2]));
    }

    #[test]
    fn elementary_symmetric_functions() {
        assert_eq!(p(&[1, 1]).elem_sym(1).unwrap(), 2);
        assert_eq!(p(&[1, 1]).elem_sym(2).unwrap(), 1);
        assert_eq!(p(&[2]).elem_sym(1).unwrap(), 2);
        assert_eq!(p(&[2]).elem_sym_or_zero(2), 0);
        assert_eq!(p(&[3, 2, 1]).elem_sym(2).unwrap(), 11);
        assert_eq!(p(&[3, 2, 1]).elem_sym(0).unwrap(), 1);
        assert!(p(&[2]).elem_sym(2).is_err());
    }

    #[test]
    fn odd_weighted_sums() {
        assert_eq!(p(&[1, 1]).odd_weighted_sum(), 4);
        assert_eq!(p(&[2]).odd_weighted_sum(), 2);
        assert_eq!(p(&[3, 2, 1]).odd_weighted_sum(), 14);
    }

    #[test]
    fn schur_ranks() {
        for e in 1..8u32 {
            for k in 0..7u32 {
                assert_eq!(
                    schur_rank(&p(&[k]), e),
                    BigUint::from(binom((k + e - 1) as u64, (e - 1) as u64))
                );
            }
            assert_eq!(schur_rank(&Partition::column(e as usize), e), BigUint::one());
            assert!(schur_rank(&Partition::column(e as usize + 1), e).is_zero());
        }
        assert_eq!(schur_rank(&p(&[2, 1]), 3), BigUint::from(8u32));
        assert_eq!(schur_rank(&Partition::empty(), 4), BigUint::one());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[2])), 0);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1, 1, 1])), 0);
    }

    #[test]
    fn lr_decompositions() {
        let d = lr_decompose(&p(&[1]), 1, 2, None);
        let got: Vec<_> = d.iter().map(|t| (t.nu.clone(), t.mu.clone(), t.multiplicity)).collect();
        assert_eq!(
            got,
            vec![(p(&[1]), Partition::empty(), 1), (Partition::empty(), p(&[1]), 1)]
        );
        let d = lr_decompose(&p(&[1, 1]), 1, 1, None);
        assert_eq!(d.len(), 1);
        assert_eq!(
            (d[0].nu.clone(), d[0].mu.clone(), d[0].multiplicity),
            (p(&[1]), p(&[1]), 1)
        );
        let d = lr_decompose(&p(&[2]), 1, 1, None);
        let got: Vec<_> = d.iter().map(|t| (t.nu.clone(), t.mu.clone(), t.multiplicity)).collect();
        assert_eq!(
            got,
            vec![
                (p(&[2]), Partition::empty(), 1),
                (p(&[1]), p(&[1]), 1),
                (Partition::empty(), p(&[2]), 1)
            ]
        );
        assert!(lr_decompose(&p(&[2]), 1, 1, Some(1)).iter().all(|t| t.nu.size() <= 1));
    }

    #[test]
    fn bbw_examples() {
        let r1 = FlagType::new(vec![1]).unwrap();
        for k in 1..6 {
            let lam = bbw_translate(&p(&[k]), &r1).unwrap();
            assert_eq!(lam, p(&[k]));
            // h^0 of O(k) on projectivised fibres is the rank of Sym^k
            assert_eq!(schur_rank(&lam, 4), BigUint::from(binom(k as u64 + 3, 3)));
        }
        let r2 = FlagType::new(vec![2]).unwrap();
        let lam = bbw_translate(&p(&[1]), &r2).unwrap();
        assert_eq!(lam, p(&[1, 1]));
        assert_eq!(schur_rank(&lam, 5), BigUint::from(binom(5, 2)));
        let r31 = FlagType::new(vec![3, 1]).unwrap();
        for (a, b) in [(1, 1), (2, 1), (4, 2), (3, 3)] {
            assert_eq!(bbw_translate(&p(&[a, b]), &r31).unwrap(), p(&[a + 1, a, b]));
        }
    }

    #[test]
    fn bbw_rejects_non_ample() {
        let r = FlagType::new(vec![3, 1]).unwrap();
        assert!(matches!(bbw_translate(&p(&[2]), &r), Err(Error::Domain(_))));
        assert!(matches!(bbw_translate(&p(&[2, 0]), &r), Err(Error::Domain(_))));
    }

    #[test]
    fn theorem_shapes_have_length_r1() {
        let expect = [p(&[1, 1]), p(&[1, 1, 1]), p(&[2, 1, 1]), p(&[2, 2, 1]), p(&[3, 2, 1])];
        for (r, want) in FlagType::theorem_shapes().iter().zip(expect) {
            let nu = Partition::column(r.len());
            let lam = bbw_translate(&nu, r).unwrap();
            assert_eq!(lam.len(), r.largest() as usize);
            assert_eq!(lam, want);
        }
    }

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(vec![3, 3]).is_err());
        assert!(FlagType::new(vec![]).is_err());
        assert!(FlagType::new(vec![2, 0]).is_err());
        assert!("3,2,1".parse::<FlagType>().is_ok());
    }

    #[test]
    fn box_enumeration() {
        let v: Vec<_> = enumerate_partitions(1, 2).collect();
        assert_eq!(v, vec![Partition::empty(), p(&[1]), p(&[2])]);
        let v: Vec<_> = enumerate_partitions(2, 1).collect();
        assert_eq!(v, vec![Partition::empty(), p(&[1]), p(&[1, 1])]);
        assert_eq!(enumerate_partitions(3, 3).count(), 20);
        let it = enumerate_partitions(2, 2);
        assert_eq!(it.clone().count(), it.count());
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("[2,2]".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 2, 1]).to_string(), "[3,2,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    fn kostka_weights_count_tableaux() {
        let w = kostka_weights(&p(&[2, 1]), 3);
        assert_eq!(w.values().sum::<u64>(), 8);
        assert_eq!(w[&vec![1, 1, 1]], 2);
        assert_eq!(w[&vec![2, 1, 0]], 1);
        assert!(kostka_weights(&p(&[1, 1, 1]), 2).is_empty());
    }

    fn small_partition(max_size: u32) -> impl Strategy<Value = Partition> {
        (0..=max_size).prop_flat_map(|n| {
            let all = partitions_of(n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(lam in small_partition(12)) {
            prop_assert_eq!(lam.conjugate().conjugate(), lam);
        }

        #[test]
        fn odd_sum_is_conjugate_squares(lam in small_partition(12)) {
            let sq: u64 = lam.conjugate().parts().iter().map(|&c| (c * c) as u64).sum();
            prop_assert_eq!(lam.odd_weighted_sum(), sq);
        }

        #[test]
        fn kostka_total_is_rank(lam in small_partition(6), e in 1usize..5) {
            let total: u64 = kostka_weights(&lam, e).values().sum();
            prop_assert_eq!(BigUint::from(total), schur_rank(&lam, e as u32));
        }
    }

    #[test]
    fn lr_symmetry_exhaustive() {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                for k in 0..=n {
                    for nu in partitions_of(k) {
                        for mu in partitions_of(n - k) {
                            assert_eq!(
                                lr_coefficient(&nu, &mu, &lam),
                                lr_coefficient(&mu, &nu, &lam),
                                "{nu} {mu} {lam}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_factorizes_over_splits() {
        for e in 2..=5u32 {
            for f in 1..e {
                for n in 0..=5 {
                    for lam in partitions_of(n) {
                        let total = lr_decompose(&lam, f, e - f, None)
                            .iter()
                            .fold(BigUint::zero(), |acc, t| {
                                acc + BigUint::from(t.multiplicity) * schur_rank(&t.nu, f) * schur_rank(&t.mu, e - f)
                            });
                        assert_eq!(total, schur_rank(&lam, e), "{lam} e={e} f={f}");
                    }
                }
            }
        }
    }
}
