//! Permutations of `[n]`, their statistics, standard cycle form and the
//! restricted classes `Q_n` and `Q̂_n`.
//!
//! Positions and values are both 1-based, matching one-line notation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::EnumLimit;

/// A permutation of `[n]` in one-line notation, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{entries:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self(entries)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of an empty set");
        Self((1..=n).collect())
    }

    /// `n(n-1)...1`.
    pub fn reversed_identity(n: usize) -> Self {
        assert!(n >= 1, "identity of an empty set");
        Self((1..=n).rev().collect())
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    /// `π(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `π⁻¹(v)`, 1-based.
    pub fn position_of(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self(other.0.iter().map(|&j| self.0[j - 1]).collect()))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Descent positions `i ∈ [n-1]` with `π(i) > π(i+1)`, increasing.
    pub fn des_positions(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Ascent positions `i ∈ [n-1]` with `π(i) < π(i+1)`, increasing.
    pub fn asc_positions(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `{0} ∪ Des(π)`, increasing.
    pub fn des_star(&self) -> Vec<usize> {
        let mut v = vec![0];
        v.extend(self.des_positions());
        v
    }

    /// `Asc(π) ∪ {n}`, increasing.
    pub fn asc_star(&self) -> Vec<usize> {
        let mut v = self.asc_positions();
        v.push(self.len());
        v
    }

    pub fn des(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn asc(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn exc(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v > i + 1)
            .count()
    }

    pub fn aexc(&self) -> usize {
        self.len() - self.exc()
    }

    pub fn fix(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .count()
    }

    pub fn cyc(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j - 1];
            }
        }
        count
    }

    /// Position of the first descent, or `None` for the identity.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1]).map(|i| i + 1)
    }

    /// Membership in `Q_n`: the entry `n` is the top of the first descent
    /// (the identity belongs by convention).
    pub fn is_in_q(&self) -> bool {
        match self.first_descent() {
            None => true,
            Some(i) => self.0[i - 1] == self.len(),
        }
    }

    /// Right-to-left maxima, as values, left to right.
    pub fn rl_maxima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut best = 0;
        for &v in self.0.iter().rev() {
            if v > best {
                best = v;
                out.push(v);
            }
        }
        out.reverse();
        out
    }

    /// Maximal factors each ending in exactly one right-to-left maximum.
    pub fn blocks(&self) -> Vec<&[usize]> {
        let n = self.len();
        let mut is_rlmax = vec![false; n];
        let mut best = 0;
        for i in (0..n).rev() {
            if self.0[i] > best {
                best = self.0[i];
                is_rlmax[i] = true;
            }
        }
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &end) in is_rlmax.iter().enumerate() {
            if end {
                out.push(&self.0[start..=i]);
                start = i + 1;
            }
        }
        out
    }

    pub fn stats(&self) -> StatVector {
        let blocks = self.blocks();
        StatVector {
            des: self.des(),
            asc: self.asc(),
            exc: self.exc(),
            fix: self.fix(),
            cyc: self.cyc(),
            aexc: self.aexc(),
            rlmax: self.rl_maxima().len(),
            bk: blocks.len(),
            bkone: blocks.iter().filter(|b| b.len() == 1).count(),
            fbk: blocks[0].len(),
            fcyc: self.cycle_form().cycles()[0].len(),
        }
    }

    pub fn cycle_form(&self) -> StandardCycleForm {
        StandardCycleForm::from_permutation(self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() < 10 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts `"3142765"` (single digits) or whitespace/comma separated entries.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = |c: char| c.is_whitespace() || c == ',';
        let entries: Option<Vec<usize>> = if s.contains(separated) {
            s.split(separated)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let entries =
            entries.ok_or_else(|| Error::InvalidPermutation(format!("cannot parse {s:?}")))?;
        Self::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The eleven permutation statistics used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StatVector {
    pub des: usize,
    pub asc: usize,
    pub exc: usize,
    pub fix: usize,
    pub cyc: usize,
    pub aexc: usize,
    pub rlmax: usize,
    pub bk: usize,
    pub bkone: usize,
    /// Length of the first block of the one-line word.
    pub fbk: usize,
    /// Size of the first cycle in standard cycle form.
    pub fcyc: usize,
}

/// Cycle notation with each cycle ending in its largest element and cycles
/// ordered by decreasing maxima.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardCycleForm {
    cycles: Vec<Vec<usize>>,
}

impl StandardCycleForm {
    /// Validates that `cycles` is already in canonical order.
    pub fn new(cycles: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = cycles.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::InvalidCycleForm("no cycles".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut prev_max = usize::MAX;
        for c in &cycles {
            let last = *c
                .last()
                .ok_or_else(|| Error::InvalidCycleForm("empty cycle".into()))?;
            if c.iter().any(|&v| v > last) {
                return Err(Error::InvalidCycleForm(format!(
                    "{c:?} does not end with its maximum"
                )));
            }
            if last >= prev_max {
                return Err(Error::InvalidCycleForm(
                    "cycle maxima must strictly decrease".into(),
                ));
            }
            prev_max = last;
            for &v in c {
                if v == 0 || v > n || seen[v] {
                    return Err(Error::InvalidCycleForm(format!(
                        "entries are not a rearrangement of 1..={n}"
                    )));
                }
                seen[v] = true;
            }
        }
        Ok(Self { cycles })
    }

    pub fn from_permutation(pi: &Permutation) -> Self {
        let n = pi.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        // Visiting starting points from n down makes maxima decrease.
        for start in (1..=n).rev() {
            if seen[start] {
                continue;
            }
            // Begin right after the maximum so the cycle ends with it.
            let mut cycle = Vec::new();
            let mut j = pi.at(start);
            loop {
                seen[j] = true;
                cycle.push(j);
                if j == start {
                    break;
                }
                j = pi.at(j);
            }
            cycles.push(cycle);
        }
        Self { cycles }
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut entries = vec![0; self.len()];
        for c in &self.cycles {
            for (i, &v) in c.iter().enumerate() {
                entries[v - 1] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_vec_unchecked(entries)
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Membership in `Q̂_n`: the cycle containing `n` (always the first) is
    /// increasing.
    pub fn is_in_qhat(&self) -> bool {
        self.cycles[0].windows(2).all(|w| w[0] < w[1])
    }

    /// Concatenation of the cycles with parentheses erased.
    pub fn erase(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.cycles.concat())
    }

    /// `σ ↦ σ̂`, the bijection `Q̂_n → Q_n`.
    pub fn hat_erase(&self) -> Result<Permutation> {
        if !self.is_in_qhat() {
            return Err(Error::NotInSet {
                object: self.to_string(),
                set: format!("Q̂_{}", self.len()),
            });
        }
        Ok(self.erase())
    }

    /// Inverse of [`erase`](Self::erase): cut a word after each right-to-left
    /// maximum.
    pub fn from_word(word: &Permutation) -> Self {
        Self {
            cycles: word.blocks().into_iter().map(<[usize]>::to_vec).collect(),
        }
    }

    /// Inverse of [`hat_erase`](Self::hat_erase).
    pub fn hat_lift(word: &Permutation) -> Result<Self> {
        if !word.is_in_q() {
            return Err(Error::NotInSet {
                object: word.to_string(),
                set: format!("Q_{}", word.len()),
            });
        }
        Ok(Self::from_word(word))
    }
}

impl fmt::Display for StandardCycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for StandardCycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardCycleForm{self}")
    }
}

/// Lexicographic iterator over permutations sharing a fixed first entry (or
/// all of `S_n`).
#[derive(Debug, Clone)]
pub struct SymIter {
    current: Option<Vec<usize>>,
    first: Option<usize>,
}

impl SymIter {
    fn all(n: usize) -> Self {
        Self {
            current: Some((1..=n).collect()),
            first: None,
        }
    }

    fn with_first(n: usize, first: usize) -> Self {
        let mut start = vec![first];
        start.extend((1..=n).filter(|&v| v != first));
        Self {
            current: Some(start),
            first: Some(first),
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl Iterator for SymIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) && self.first.is_none_or(|f| next[0] == f) {
            self.current = Some(next);
        }
        Some(Permutation(cur))
    }
}

/// All `n!` permutations of `[n]` in lexicographic order.
pub fn enumerate_sym(n: usize, limit: EnumLimit) -> Result<SymIter> {
    check_size(n, limit)?;
    Ok(SymIter::all(n))
}

/// `Q_n` in lexicographic order.
pub fn enumerate_q(n: usize, limit: EnumLimit) -> Result<impl Iterator<Item = Permutation>> {
    Ok(enumerate_sym(n, limit)?.filter(Permutation::is_in_q))
}

/// `Q_n` built directly (increasing prefix ending in `n`, then any
/// arrangement of the rest), sorted lexicographically. Much cheaper than
/// filtering `S_n`.
pub fn q_members(n: usize, limit: EnumLimit) -> Result<Vec<Permutation>> {
    check_size(n, limit)?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut prefix: Vec<usize> = (1..n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        prefix.push(n);
        let rest: Vec<usize> = (1..n).filter(|v| mask & (1 << (v - 1)) == 0).collect();
        if rest.is_empty() {
            out.push(Permutation(prefix));
            continue;
        }
        let mut tail = rest;
        loop {
            let mut v = prefix.clone();
            v.extend_from_slice(&tail);
            out.push(Permutation(v));
            if !next_permutation(&mut tail) {
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `Q̂_n`, ordered lexicographically by one-line notation.
pub fn enumerate_qhat(
    n: usize,
    limit: EnumLimit,
) -> Result<impl Iterator<Item = StandardCycleForm>> {
    Ok(enumerate_sym(n, limit)?
        .map(|p| p.cycle_form())
        .filter(StandardCycleForm::is_in_qhat))
}

fn check_size(n: usize, limit: EnumLimit) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("permutations need n >= 1".into()));
    }
    limit.check(n)
}

/// Folds every permutation of `[n]` in parallel, one worker job per first
/// entry. `merge` must be associative and commutative for the result to be
/// schedule independent.
pub fn par_fold_sym<T, I, F, M>(n: usize, limit: EnumLimit, init: I, fold: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &Permutation) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    check_size(n, limit)?;
    Ok((1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            for p in SymIter::with_first(n, first) {
                fold(&mut acc, &p);
            }
            acc
        })
        .reduce(&init, &merge))
}

/// Folds every member of `Q̂_n` (in one-line notation) in parallel without
/// touching the rest of `S_n`. Each member is built from its first cycle,
/// an increasing run of values closed by `n`, and an arbitrary permutation
/// of the remaining values.
pub fn par_fold_qhat<T, I, F, M>(
    n: usize,
    limit: EnumLimit,
    init: I,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &Permutation) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    check_size(n, limit)?;
    Ok((0u32..(1 << (n - 1)))
        .into_par_iter()
        .map(|mask| {
            let mut acc = init();
            let mut image = vec![0usize; n + 1];
            let mut cycle: Vec<usize> = (1..n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
            cycle.push(n);
            for w in 0..cycle.len() {
                image[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            let rest: Vec<usize> = (1..n).filter(|v| mask & (1 << (v - 1)) == 0).collect();
            let mut tau: Vec<usize> = (0..rest.len()).collect();
            loop {
                for (i, &r) in rest.iter().enumerate() {
                    image[r] = rest[tau[i]];
                }
                let p = Permutation(image[1..].to_vec());
                fold(&mut acc, &p);
                if !next_permutation(&mut tau) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge))
}

/// `counts[c]` = number of `σ ∈ Q̂_n` with `c` cycles.
///
/// Visits every member like [`par_fold_qhat`], but without materializing
/// permutations: the part outside the first cycle is walked in Heap's order,
/// and each step composes with a transposition, which changes the cycle
/// count by exactly one (split when both points share a cycle, merge
/// otherwise).
pub fn qhat_cycle_counts(n: usize, limit: EnumLimit) -> Result<Vec<u64>> {
    check_size(n, limit)?;
    Ok((0u32..(1 << (n - 1)))
        .into_par_iter()
        .map(|mask| {
            let mut counts = vec![0u64; n + 1];
            let m = n - 1 - mask.count_ones() as usize;
            let mut tau: Vec<usize> = (0..m).collect();
            // The identity on `m` points plus the first cycle.
            let mut cyc = m + 1;
            counts[cyc] += 1;
            let mut c = vec![0usize; m];
            let mut i = 1;
            while i < m {
                if c[i] < i {
                    let j = if i % 2 == 0 { 0 } else { c[i] };
                    let mut k = tau[i];
                    while k != i && k != j {
                        k = tau[k];
                    }
                    if k == j {
                        cyc += 1;
                    } else {
                        cyc -= 1;
                    }
                    tau.swap(i, j);
                    counts[cyc] += 1;
                    c[i] += 1;
                    i = 1;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn lim() -> EnumLimit {
        EnumLimit::default()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert_eq!(
            "10 9 8 7 6 5 4 3 2 1".parse::<Permutation>().unwrap(),
            Permutation::reversed_identity(10)
        );
    }

    #[test]
    fn sym_enumeration_bounds() {
        let s1: Vec<_> = enumerate_sym(1, lim()).unwrap().collect();
        assert_eq!(s1, vec![p("1")]);
        let s3: Vec<_> = enumerate_sym(3, lim()).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], p("123"));
        assert_eq!(s3[5], p("321"));
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_sym(8, lim()).unwrap().count(), 40320);
        assert!(matches!(
            enumerate_sym(11, lim()),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(enumerate_sym(0, lim()).is_err());
    }

    #[test]
    fn direct_q_generation_matches_filter() {
        for n in 1..=8 {
            let filtered: Vec<_> = enumerate_q(n, lim()).unwrap().collect();
            assert_eq!(q_members(n, lim()).unwrap(), filtered, "n={n}");
        }
        assert!(q_members(0, lim()).is_err());
    }

    #[test]
    fn qhat_fold_matches_filter() {
        for n in 1..=7 {
            let mut want: Vec<_> = enumerate_qhat(n, lim())
                .unwrap()
                .map(|f| f.to_permutation())
                .collect();
            want.sort();
            let mut got = par_fold_qhat(
                n,
                lim(),
                Vec::new,
                |acc, p| acc.push(p.clone()),
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
            .unwrap();
            got.sort();
            assert_eq!(got, want, "n={n}");
        }
        assert!(par_fold_qhat(11, lim(), || 0, |_, _| {}, |a, b| a + b).is_err());
    }

    #[test]
    fn q_listings() {
        let q2: Vec<_> = enumerate_q(2, lim()).unwrap().collect();
        assert_eq!(q2, vec![p("12"), p("21")]);
        let q3: Vec<_> = enumerate_q(3, lim()).unwrap().collect();
        assert_eq!(q3, vec![p("123"), p("132"), p("231"), p("312"), p("321")]);
        assert_eq!(enumerate_q(5, lim()).unwrap().count(), 65);
    }

    #[test]
    fn qhat_listing_n3() {
        let mut got: Vec<String> = enumerate_qhat(3, lim())
            .unwrap()
            .map(|c| c.to_string())
            .collect();
        got.sort();
        let mut want = vec!["(3)(2)(1)", "(2,3)(1)", "(3)(1,2)", "(1,3)(2)", "(1,2,3)"];
        want.sort();
        assert_eq!(got, want);
        let q1: Vec<_> = enumerate_qhat(1, lim()).unwrap().collect();
        assert_eq!(q1.len(), 1);
        assert_eq!(q1[0].to_string(), "(1)");
    }

    #[test]
    fn qhat_n4_matches_brute_force_filter() {
        // Oracle: follow functional orbits directly and test the cycle of n.
        let oracle = enumerate_sym(4, lim())
            .unwrap()
            .filter(|pi| {
                let mut cyc = vec![4];
                let mut j = pi.at(4);
                while j != 4 {
                    cyc.push(j);
                    j = pi.at(j);
                }
                // cyc = (4, π(4), π²(4), ...); written ending in 4 it is the rotation.
                let mut written: Vec<usize> = cyc[1..].to_vec();
                written.push(4);
                written.windows(2).all(|w| w[0] < w[1])
            })
            .count();
        assert_eq!(oracle, 16);
        assert_eq!(enumerate_qhat(4, lim()).unwrap().count(), oracle);
        assert_eq!(enumerate_q(4, lim()).unwrap().count(), oracle);
    }

    #[test]
    fn stats_on_worked_examples() {
        let s = p("3142765").stats();
        assert_eq!((s.cyc, s.exc, s.fix), (3, 3, 1));
        let s = p("163254").stats();
        assert_eq!((s.rlmax, s.bk, s.bkone, s.fbk), (3, 3, 1, 2));
        assert_eq!(p("163254").rl_maxima(), vec![6, 5, 4]);
        let blocks: Vec<Vec<usize>> = p("163254").blocks().iter().map(|b| b.to_vec()).collect();
        assert_eq!(blocks, vec![vec![1, 6], vec![3, 2, 5], vec![4]]);
        for n in 1..=6 {
            let s = Permutation::identity(n).stats();
            assert_eq!((s.des, s.asc, s.fix, s.cyc, s.exc), (0, n - 1, n, n, 0));
        }
    }

    #[test]
    fn star_sets() {
        assert_eq!(p("132").des_positions(), vec![2]);
        assert_eq!(p("132").des_star(), vec![0, 2]);
        assert_eq!(Permutation::identity(4).des_star(), vec![0]);
        assert_eq!(Permutation::identity(4).asc_star(), vec![1, 2, 3, 4]);
        assert_eq!(p("321").asc_star(), vec![3]);
    }

    #[test]
    fn standard_cycle_form_examples() {
        // Orbits of 3142765: 1→3→4→2→1, 5→7→5, 6→6.
        let c = p("3142765").cycle_form();
        assert_eq!(c.cycles(), &[vec![5, 7], vec![6], vec![2, 1, 3, 4]]);
        assert_eq!(c.to_string(), "(5,7)(6)(2,1,3,4)");
        assert_eq!(c.to_permutation(), p("3142765"));
        let id = Permutation::identity(4).cycle_form();
        assert_eq!(id.cycles(), &[vec![4], vec![3], vec![2], vec![1]]);
        let c = StandardCycleForm::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(c.to_permutation(), p("231"));
        assert!(StandardCycleForm::new(vec![vec![3, 1]]).is_err());
        assert!(StandardCycleForm::new(vec![vec![1], vec![2]]).is_err());
        assert!(StandardCycleForm::new(vec![vec![2], vec![2]]).is_err());
    }

    #[test]
    fn hat_erase_examples() {
        let c = StandardCycleForm::new(vec![vec![2, 3], vec![1]]).unwrap();
        assert_eq!(c.hat_erase().unwrap(), p("231"));
        let c = StandardCycleForm::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(c.hat_erase().unwrap(), p("123"));
        let c = StandardCycleForm::new(vec![vec![2, 1, 3]]).unwrap();
        assert!(matches!(c.hat_erase(), Err(Error::NotInSet { .. })));
        assert!(StandardCycleForm::hat_lift(&p("213")).is_err());
    }

    #[test]
    fn hat_erase_is_bijection_qhat_to_q() {
        for n in 1..=7 {
            let mut images: Vec<Permutation> = enumerate_qhat(n, lim())
                .unwrap()
                .map(|c| c.hat_erase().unwrap())
                .collect();
            assert!(images.iter().all(Permutation::is_in_q));
            images.sort();
            let before = images.len();
            images.dedup();
            assert_eq!(images.len(), before, "hat_erase not injective at n={n}");
            let q: Vec<_> = enumerate_q(n, lim()).unwrap().collect();
            assert_eq!(images, q);
        }
    }

    #[test]
    fn block_statistics_transport_under_hat() {
        for n in 1..=7 {
            for c in enumerate_qhat(n, lim()).unwrap() {
                let sigma = c.to_permutation();
                let word = c.hat_erase().unwrap();
                let (a, b) = (sigma.stats(), word.stats());
                assert_eq!(a.exc, b.asc, "{c}");
                assert_eq!(a.fix, b.bkone, "{c}");
                assert_eq!(a.cyc, b.bk, "{c}");
                assert_eq!(a.fcyc, b.fbk, "{c}");
                assert_eq!(StandardCycleForm::hat_lift(&word).unwrap(), c);
            }
        }
    }

    #[test]
    fn par_fold_counts_and_sums() {
        let count = par_fold_sym(6, lim(), || 0usize, |acc, _| *acc += 1, |a, b| a + b).unwrap();
        assert_eq!(count, 720);
        let des_total =
            par_fold_sym(5, lim(), || 0usize, |acc, p| *acc += p.des(), |a, b| a + b).unwrap();
        let seq: usize = enumerate_sym(5, lim()).unwrap().map(|p| p.des()).sum();
        assert_eq!(des_total, seq);
    }

    #[test]
    fn compose_and_inverse() {
        let a = p("3142765");
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(a.compose(&p("12")).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm() -> impl Strategy<Value = Permutation> {
            (1usize..=9)
                .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn complementary_counts(pi in arb_perm()) {
                let s = pi.stats();
                prop_assert_eq!(s.des + s.asc, pi.len() - 1);
                prop_assert_eq!(s.exc + s.aexc, pi.len());
                prop_assert_eq!(s.rlmax, s.bk);
            }

            #[test]
            fn cycle_form_round_trip(pi in arb_perm()) {
                let c = pi.cycle_form();
                prop_assert_eq!(c.to_permutation(), pi.clone());
                let again = StandardCycleForm::new(c.cycles().to_vec()).unwrap();
                prop_assert_eq!(again, c.clone());
                prop_assert_eq!(c.cycles().len(), pi.cyc());
            }
        }
    }

    #[test]
    fn qhat_cycle_counts_match_fold() {
        for n in 1..=8 {
            let fold = par_fold_qhat(
                n,
                lim(),
                || vec![0u64; n + 1],
                |acc, p| acc[p.cyc()] += 1,
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
            .unwrap();
            assert_eq!(qhat_cycle_counts(n, lim()).unwrap(), fold, "n={n}");
        }
    }
}
