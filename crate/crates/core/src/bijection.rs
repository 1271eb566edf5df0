//! Insertion and deletion operators, the marked-permutation sets built from
//! `Q_n`, the six bijections between them, and the recursive bijection
//! `Ω_n : Q_n → Q_n` carrying descents to ascents.
//!
//! Every set is labelled by a [`SetKind`] together with the size of the
//! permutations it contains and the value of its statistic (descents for
//! the `D` sets, ascents for the `A` sets). So `RD_{n+2,k}` is
//! `SetLabel::new(SetKind::RD, n + 2, k)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eulerian::BinomialEulerianTable;
use crate::limits::EnumLimit;
use crate::perm::{q_members, Permutation};

/// `α_i`: delete the entry `i`, then close the gap in the values.
pub fn alpha(pi: &Permutation, i: usize) -> Result<Permutation> {
    let n = pi.len();
    if n < 2 {
        return Err(Error::Domain("alpha needs n >= 2".into()));
    }
    if i == 0 || i > n {
        return Err(Error::Domain(format!("alpha: entry {i} is not in [{n}]")));
    }
    let v = pi
        .entries()
        .iter()
        .filter(|&&e| e != i)
        .map(|&e| if e > i { e - 1 } else { e })
        .collect();
    Ok(Permutation::from_vec_unchecked(v))
}

/// `β_{i,j}`: shift every entry `>= i` up by one, then insert `i` after
/// position `j` (`j = 0` prepends).
pub fn beta(pi: &Permutation, i: usize, j: usize) -> Result<Permutation> {
    let n = pi.len();
    if i == 0 || i > n + 1 {
        return Err(Error::Domain(format!(
            "beta: entry {i} is not in [{}]",
            n + 1
        )));
    }
    if j > n {
        return Err(Error::Domain(format!(
            "beta: position {j} is not in 0..={n}"
        )));
    }
    let mut v: Vec<usize> = pi
        .entries()
        .iter()
        .map(|&e| if e >= i { e + 1 } else { e })
        .collect();
    v.insert(j, i);
    Ok(Permutation::from_vec_unchecked(v))
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SetKind {
    QD,
    QA,
    RD,
    RDbar,
    FD,
    HD,
    RHD,
    RHDbar,
    HDbar,
    RA,
    RAbar,
    FA,
    RFA,
    RFAbar,
    HA,
    HAbar,
}

impl SetKind {
    pub const ALL: [SetKind; 16] = [
        SetKind::QD,
        SetKind::QA,
        SetKind::RD,
        SetKind::RDbar,
        SetKind::FD,
        SetKind::HD,
        SetKind::RHD,
        SetKind::RHDbar,
        SetKind::HDbar,
        SetKind::RA,
        SetKind::RAbar,
        SetKind::FA,
        SetKind::RFA,
        SetKind::RFAbar,
        SetKind::HA,
        SetKind::HAbar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::QD => "QD",
            SetKind::QA => "QA",
            SetKind::RD => "RD",
            SetKind::RDbar => "RDbar",
            SetKind::FD => "FD",
            SetKind::HD => "HD",
            SetKind::RHD => "RHD",
            SetKind::RHDbar => "RHDbar",
            SetKind::HDbar => "HDbar",
            SetKind::RA => "RA",
            SetKind::RAbar => "RAbar",
            SetKind::FA => "FA",
            SetKind::RFA => "RFA",
            SetKind::RFAbar => "RFAbar",
            SetKind::HA => "HA",
            SetKind::HAbar => "HAbar",
        }
    }

    /// Whether the members are pairs `[π, i]` rather than bare permutations.
    pub fn is_pair_set(self) -> bool {
        !matches!(
            self,
            SetKind::QD | SetKind::QA | SetKind::RD | SetKind::RDbar | SetKind::RA | SetKind::RAbar
        )
    }

    fn counts_ascents(self) -> bool {
        matches!(
            self,
            SetKind::QA
                | SetKind::RA
                | SetKind::RAbar
                | SetKind::FA
                | SetKind::RFA
                | SetKind::RFAbar
                | SetKind::HA
                | SetKind::HAbar
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SetLabel {
    pub kind: SetKind,
    /// Length of the permutations in the set.
    pub size: usize,
    /// Number of descents (`D` sets) or ascents (`A` sets).
    pub stat: usize,
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.name(), self.size, self.stat)
    }
}

/// Position of the entry 1 and the "valley" test around it.
fn one_is_valley(pi: &Permutation) -> bool {
    let n = pi.len();
    let a = pi.position_of(1);
    a == 1 || (a < n && pi.at(a - 1) > pi.at(a + 1))
}

fn one_is_rise(pi: &Permutation) -> bool {
    let n = pi.len();
    let a = pi.position_of(1);
    a == n || (a > 1 && pi.at(a - 1) < pi.at(a + 1))
}

impl SetLabel {
    pub fn new(kind: SetKind, size: usize, stat: usize) -> Self {
        Self { kind, size, stat }
    }

    fn check_size(&self, pi: &Permutation) -> Result<()> {
        if pi.len() != self.size {
            return Err(Error::Domain(format!(
                "{pi} has length {}, but {self} holds length {}",
                pi.len(),
                self.size
            )));
        }
        Ok(())
    }

    fn in_base(&self, pi: &Permutation) -> bool {
        let stat = if self.kind.counts_ascents() {
            pi.asc()
        } else {
            pi.des()
        };
        stat == self.stat && pi.is_in_q()
    }

    /// Membership of a bare permutation.
    pub fn contains_perm(&self, pi: &Permutation) -> Result<bool> {
        if self.kind.is_pair_set() {
            return Err(Error::Domain(format!("{self} is a set of pairs")));
        }
        self.check_size(pi)?;
        if !self.in_base(pi) {
            return Ok(false);
        }
        Ok(match self.kind {
            SetKind::QD | SetKind::QA => true,
            SetKind::RD | SetKind::RA => one_is_valley(pi),
            SetKind::RDbar | SetKind::RAbar => !one_is_valley(pi) && one_is_rise(pi),
            _ => unreachable!(),
        })
    }

    /// Admissible marks for `pi`, assuming `pi` lies in the underlying `QD`
    /// or `QA` set.
    fn marks(&self, pi: &Permutation) -> Vec<usize> {
        let (m, s) = (self.size, self.stat);
        let top = pi.position_of(m);
        let full: Vec<usize> = match self.kind {
            SetKind::FD => (0..=s).collect(),
            SetKind::HD | SetKind::RHD | SetKind::RHDbar | SetKind::HA => {
                (1..=m.saturating_sub(s)).collect()
            }
            SetKind::HDbar | SetKind::HAbar => (1..=m).collect(),
            SetKind::FA | SetKind::RFA | SetKind::RFAbar => (1..=s).chain([m]).collect(),
            _ => Vec::new(),
        };
        match self.kind {
            SetKind::RHD | SetKind::RFA => full.into_iter().filter(|&i| i >= top).collect(),
            SetKind::RHDbar | SetKind::RFAbar => full.into_iter().filter(|&i| i < top).collect(),
            _ => full,
        }
    }

    /// Membership of a pair `[π, i]`.
    pub fn contains_pair(&self, pi: &Permutation, mark: usize) -> Result<bool> {
        if !self.kind.is_pair_set() {
            return Err(Error::Domain(format!("{self} is a set of permutations")));
        }
        self.check_size(pi)?;
        Ok(self.in_base(pi) && self.marks(pi).contains(&mark))
    }

    pub fn contains(&self, item: &Item) -> Result<bool> {
        match item {
            Item::Perm(p) => self.contains_perm(p),
            Item::Pair(mp) => self.contains_pair(&mp.perm, mp.mark),
        }
    }

    /// Lists the set, drawing on `Q_size` from `cache`.
    pub fn members(&self, cache: &QCache) -> Result<Vec<Item>> {
        let q = cache.get(self.size)?;
        let mut out = Vec::new();
        for pi in q.iter().filter(|p| self.in_base(p)) {
            if self.kind.is_pair_set() {
                for mark in self.marks(pi) {
                    out.push(Item::Pair(MarkedPermutation {
                        perm: pi.clone(),
                        mark,
                    }));
                }
            } else if self.contains_perm(pi)? {
                out.push(Item::Perm(pi.clone()));
            }
        }
        Ok(out)
    }

    pub fn cardinality(&self, cache: &QCache) -> Result<usize> {
        Ok(self.members(cache)?.len())
    }
}

/// A pair `[π, i]` known to lie in the set it was constructed for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkedPermutation {
    perm: Permutation,
    mark: usize,
}

impl MarkedPermutation {
    /// Validates membership of `[perm, mark]` in `set`.
    pub fn new(perm: Permutation, mark: usize, set: SetLabel) -> Result<Self> {
        if !set.contains_pair(&perm, mark)? {
            return Err(Error::NotInSet {
                object: format!("[{perm}, {mark}]"),
                set: set.to_string(),
            });
        }
        Ok(Self { perm, mark })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn mark(&self) -> usize {
        self.mark
    }
}

impl fmt::Display for MarkedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.perm, self.mark)
    }
}

/// A member of any of the sets above.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Perm(Permutation),
    Pair(MarkedPermutation),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Perm(p) => write!(f, "{p}"),
            Item::Pair(mp) => write!(f, "{mp}"),
        }
    }
}

/// `Q_1..Q_max`, generated once and shared by all set enumerations.
#[derive(Debug, Clone)]
pub struct QCache {
    levels: Vec<Vec<Permutation>>,
}

impl QCache {
    pub fn new(max_size: usize, limit: EnumLimit) -> Result<Self> {
        limit.check(max_size)?;
        let levels = (1..=max_size)
            .map(|m| q_members(m, limit))
            .collect::<Result<_>>()?;
        Ok(Self { levels })
    }

    pub fn max_size(&self) -> usize {
        self.levels.len()
    }

    pub fn get(&self, size: usize) -> Result<&[Permutation]> {
        if size == 0 || size > self.levels.len() {
            return Err(Error::Domain(format!(
                "Q_{size} is outside the cache (max {})",
                self.levels.len()
            )));
        }
        Ok(&self.levels[size - 1])
    }
}

fn require_perm(set: SetLabel, pi: &Permutation) -> Result<()> {
    if set.contains_perm(pi)? {
        Ok(())
    } else {
        Err(Error::NotInSet {
            object: pi.to_string(),
            set: set.to_string(),
        })
    }
}

fn require_pair(set: SetLabel, pi: &Permutation, mark: usize) -> Result<()> {
    MarkedPermutation::new(pi.clone(), mark, set).map(|_| ())
}

fn marked(perm: Permutation, mark: usize) -> MarkedPermutation {
    MarkedPermutation { perm, mark }
}

/// Descent positions in increasing order followed by the sentinel 0.
fn des_list(sigma: &Permutation) -> Vec<usize> {
    let mut v = sigma.des_positions();
    v.push(0);
    v
}

/// Ascent positions in increasing order followed by the sentinel `n`.
fn asc_list(sigma: &Permutation) -> Vec<usize> {
    let mut v = sigma.asc_positions();
    v.push(sigma.len());
    v
}

fn index_of(list: &[usize], target: usize, what: &str) -> Result<usize> {
    list.iter().position(|&j| j == target).ok_or_else(|| {
        Error::Domain(format!(
            "position {target} missing from {what} list {list:?}"
        ))
    })
}

fn list_entry(list: &[usize], index: usize) -> Result<usize> {
    list.get(index)
        .copied()
        .ok_or_else(|| Error::Domain(format!("mark index {index} outside {list:?}")))
}

fn size_of_domain(pi: &Permutation, shrink: usize) -> Result<usize> {
    pi.len()
        .checked_sub(shrink)
        .ok_or_else(|| Error::Domain(format!("{pi} is too short")))
}

/// `φ : RD_{n+2,k} → FD_{n+1,k}`.
pub fn phi(pi: &Permutation) -> Result<MarkedPermutation> {
    let (m, k) = (pi.len(), pi.des());
    require_perm(SetLabel::new(SetKind::RD, m, k), pi)?;
    let a = pi.position_of(1);
    let sigma = alpha(pi, 1)?;
    let i = index_of(&des_list(&sigma), a - 1, "Des*")?;
    Ok(marked(sigma, i))
}

pub fn phi_inv(sigma: &Permutation, i: usize) -> Result<Permutation> {
    require_pair(
        SetLabel::new(SetKind::FD, sigma.len(), sigma.des()),
        sigma,
        i,
    )?;
    beta(sigma, 1, list_entry(&des_list(sigma), i)?)
}

/// `θ : RDbar_{n+2,k} → RHD_{n+1,k-1}`; the mark is 1-based.
pub fn theta(pi: &Permutation) -> Result<MarkedPermutation> {
    let (m, k) = (pi.len(), pi.des());
    require_perm(SetLabel::new(SetKind::RDbar, m, k), pi)?;
    let a = pi.position_of(1);
    let sigma = alpha(pi, 1)?;
    let i = index_of(&asc_list(&sigma), a - 1, "Asc*")? + 1;
    Ok(marked(sigma, i))
}

pub fn theta_inv(sigma: &Permutation, i: usize) -> Result<Permutation> {
    require_pair(
        SetLabel::new(SetKind::RHD, sigma.len(), sigma.des()),
        sigma,
        i,
    )?;
    beta(sigma, 1, list_entry(&asc_list(sigma), i - 1)?)
}

/// The index `i < p` with `σ(i) < a <= σ(i+1)` on the increasing prefix
/// `0 = σ(0) < σ(1) < ... < σ(p) = n`.
fn prefix_slot(sigma: &Permutation, a: usize) -> usize {
    let p = sigma.position_of(sigma.len());
    (0..p)
        .find(|&i| {
            let lo = if i == 0 { 0 } else { sigma.at(i) };
            lo < a && a <= sigma.at(i + 1)
        })
        .expect("a lies in [n] and the prefix climbs from 0 to n")
}

fn insert_in_prefix(sigma: &Permutation, a: usize) -> Result<MarkedPermutation> {
    let i = prefix_slot(sigma, a);
    Ok(marked(beta(sigma, a, i)?, i + 1))
}

/// `ψ : HDbar_{n,k-1} → RHDbar_{n+1,k-1}`.
pub fn psi(sigma: &Permutation, a: usize) -> Result<MarkedPermutation> {
    require_pair(
        SetLabel::new(SetKind::HDbar, sigma.len(), sigma.des()),
        sigma,
        a,
    )?;
    insert_in_prefix(sigma, a)
}

pub fn psi_inv(sigma: &Permutation, i: usize) -> Result<MarkedPermutation> {
    require_pair(
        SetLabel::new(SetKind::RHDbar, sigma.len(), sigma.des()),
        sigma,
        i,
    )?;
    let a = sigma.at(i);
    Ok(marked(alpha(sigma, a)?, a))
}

/// `θ̂ : RA_{n+2,k} → HA_{n+1,k-1}`; the mark is 1-based.
pub fn theta_hat(pi: &Permutation) -> Result<MarkedPermutation> {
    let (m, k) = (pi.len(), pi.asc());
    require_perm(SetLabel::new(SetKind::RA, m, k), pi)?;
    let a = pi.position_of(1);
    let sigma = alpha(pi, 1)?;
    let i = index_of(&des_list(&sigma), a - 1, "Des*")? + 1;
    Ok(marked(sigma, i))
}

pub fn theta_hat_inv(sigma: &Permutation, i: usize) -> Result<Permutation> {
    require_pair(
        SetLabel::new(SetKind::HA, sigma.len(), sigma.asc()),
        sigma,
        i,
    )?;
    beta(sigma, 1, list_entry(&des_list(sigma), i - 1)?)
}

/// `φ̂ : RAbar_{n+2,k} → RFA_{n+1,k}`. Ascents carry marks `1..k` in
/// increasing order and the sentinel carries `n+1`.
pub fn phi_hat(pi: &Permutation) -> Result<MarkedPermutation> {
    let (m, k) = (pi.len(), pi.asc());
    require_perm(SetLabel::new(SetKind::RAbar, m, k), pi)?;
    let a = pi.position_of(1);
    let sigma = alpha(pi, 1)?;
    let n1 = size_of_domain(pi, 1)?;
    let t = index_of(&asc_list(&sigma), a - 1, "Asc*")?;
    let i = if t == k { n1 } else { t + 1 };
    Ok(marked(sigma, i))
}

pub fn phi_hat_inv(sigma: &Permutation, i: usize) -> Result<Permutation> {
    let (m, k) = (sigma.len(), sigma.asc());
    require_pair(SetLabel::new(SetKind::RFA, m, k), sigma, i)?;
    let t = if i == m { k } else { i - 1 };
    beta(sigma, 1, list_entry(&asc_list(sigma), t)?)
}

/// `ψ̂ : HAbar_{n,k-1} → RFAbar_{n+1,k}`.
pub fn psi_hat(sigma: &Permutation, a: usize) -> Result<MarkedPermutation> {
    require_pair(
        SetLabel::new(SetKind::HAbar, sigma.len(), sigma.asc()),
        sigma,
        a,
    )?;
    insert_in_prefix(sigma, a)
}

pub fn psi_hat_inv(sigma: &Permutation, i: usize) -> Result<MarkedPermutation> {
    require_pair(
        SetLabel::new(SetKind::RFAbar, sigma.len(), sigma.asc()),
        sigma,
        i,
    )?;
    let a = sigma.at(i);
    Ok(marked(alpha(sigma, a)?, a))
}

/// One of the six lemma bijections, with its domain and codomain for the
/// parameters `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaMap {
    Phi,
    Theta,
    Psi,
    ThetaHat,
    PhiHat,
    PsiHat,
}

impl LemmaMap {
    pub const ALL: [LemmaMap; 6] = [
        LemmaMap::Phi,
        LemmaMap::Theta,
        LemmaMap::Psi,
        LemmaMap::ThetaHat,
        LemmaMap::PhiHat,
        LemmaMap::PsiHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaMap::Phi => "phi",
            LemmaMap::Theta => "theta",
            LemmaMap::Psi => "psi",
            LemmaMap::ThetaHat => "theta_hat",
            LemmaMap::PhiHat => "phi_hat",
            LemmaMap::PsiHat => "psi_hat",
        }
    }

    /// Whether `(n, k)` indexes a map of this family.
    pub fn admits(self, n: usize, k: usize) -> bool {
        match self {
            LemmaMap::Phi | LemmaMap::PhiHat => k <= n + 1,
            LemmaMap::Theta | LemmaMap::ThetaHat => (1..=n + 1).contains(&k),
            LemmaMap::Psi | LemmaMap::PsiHat => n >= 1 && (1..=n).contains(&k),
        }
    }

    pub fn domain(self, n: usize, k: usize) -> SetLabel {
        match self {
            LemmaMap::Phi => SetLabel::new(SetKind::RD, n + 2, k),
            LemmaMap::Theta => SetLabel::new(SetKind::RDbar, n + 2, k),
            LemmaMap::Psi => SetLabel::new(SetKind::HDbar, n, k - 1),
            LemmaMap::ThetaHat => SetLabel::new(SetKind::RA, n + 2, k),
            LemmaMap::PhiHat => SetLabel::new(SetKind::RAbar, n + 2, k),
            LemmaMap::PsiHat => SetLabel::new(SetKind::HAbar, n, k - 1),
        }
    }

    pub fn codomain(self, n: usize, k: usize) -> SetLabel {
        match self {
            LemmaMap::Phi => SetLabel::new(SetKind::FD, n + 1, k),
            LemmaMap::Theta => SetLabel::new(SetKind::RHD, n + 1, k - 1),
            LemmaMap::Psi => SetLabel::new(SetKind::RHDbar, n + 1, k - 1),
            LemmaMap::ThetaHat => SetLabel::new(SetKind::HA, n + 1, k - 1),
            LemmaMap::PhiHat => SetLabel::new(SetKind::RFA, n + 1, k),
            LemmaMap::PsiHat => SetLabel::new(SetKind::RFAbar, n + 1, k),
        }
    }

    pub fn forward(self, x: &Item) -> Result<Item> {
        let out = match (self, x) {
            (LemmaMap::Phi, Item::Perm(p)) => phi(p)?,
            (LemmaMap::Theta, Item::Perm(p)) => theta(p)?,
            (LemmaMap::ThetaHat, Item::Perm(p)) => theta_hat(p)?,
            (LemmaMap::PhiHat, Item::Perm(p)) => phi_hat(p)?,
            (LemmaMap::Psi, Item::Pair(mp)) => psi(&mp.perm, mp.mark)?,
            (LemmaMap::PsiHat, Item::Pair(mp)) => psi_hat(&mp.perm, mp.mark)?,
            _ => return Err(Error::Domain(format!("{} cannot take {x}", self.name()))),
        };
        Ok(Item::Pair(out))
    }

    pub fn inverse(self, y: &Item) -> Result<Item> {
        let Item::Pair(mp) = y else {
            return Err(Error::Domain(format!(
                "{} inverse takes a pair, got {y}",
                self.name()
            )));
        };
        let (s, i) = (&mp.perm, mp.mark);
        Ok(match self {
            LemmaMap::Phi => Item::Perm(phi_inv(s, i)?),
            LemmaMap::Theta => Item::Perm(theta_inv(s, i)?),
            LemmaMap::ThetaHat => Item::Perm(theta_hat_inv(s, i)?),
            LemmaMap::PhiHat => Item::Perm(phi_hat_inv(s, i)?),
            LemmaMap::Psi => Item::Pair(psi_inv(s, i)?),
            LemmaMap::PsiHat => Item::Pair(psi_hat_inv(s, i)?),
        })
    }
}

/// Exhaustive check of one lemma map at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub map: &'static str,
    pub n: usize,
    pub k: usize,
    pub domain: String,
    pub codomain: String,
    pub domain_size: usize,
    pub codomain_size: usize,
    /// Forward images (or errors) falling outside the codomain.
    pub codomain_failures: usize,
    /// Distinct domain elements with equal images.
    pub collisions: usize,
    /// Domain elements with `f⁻¹(f(x)) != x`.
    pub round_trip_failures: usize,
    /// Codomain elements with `f(f⁻¹(y)) != y`.
    pub inverse_round_trip_failures: usize,
    pub passed: bool,
    /// The first few offending elements, described.
    pub counterexamples: Vec<String>,
}

/// Cap on counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 5;

fn note(out: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if out.len() < MAX_COUNTEREXAMPLES {
        out.push(msg());
    }
}

pub fn verify_lemma_map(
    map: LemmaMap,
    n: usize,
    k: usize,
    cache: &QCache,
) -> Result<BijectionReport> {
    if !map.admits(n, k) {
        return Err(Error::Domain(format!(
            "{} is not defined for n={n}, k={k}",
            map.name()
        )));
    }
    let (dom, cod) = (map.domain(n, k), map.codomain(n, k));
    let domain = dom.members(cache)?;
    let codomain = cod.members(cache)?;

    let mut codomain_failures = 0;
    let mut round_trip_failures = 0;
    let mut images = HashMap::new();
    let mut counterexamples = Vec::new();
    for x in &domain {
        match map.forward(x) {
            Ok(y) => {
                if !cod.contains(&y)? {
                    codomain_failures += 1;
                    note(&mut counterexamples, || {
                        format!("{x} -> {y} lies outside {cod}")
                    });
                }
                if map.inverse(&y).ok().as_ref() != Some(x) {
                    round_trip_failures += 1;
                    note(&mut counterexamples, || {
                        format!("{x} -> {y} does not invert back")
                    });
                }
                if let Some(prev) = images.insert(y.clone(), x.clone()) {
                    note(&mut counterexamples, || {
                        format!("{prev} and {x} both map to {y}")
                    });
                }
            }
            Err(e) => {
                codomain_failures += 1;
                round_trip_failures += 1;
                note(&mut counterexamples, || format!("{x}: {e}"));
            }
        }
    }
    let mapped = domain.len() - codomain_failures.min(domain.len());
    let collisions = mapped.saturating_sub(images.len());
    let mut inverse_round_trip_failures = 0;
    for y in &codomain {
        let back = map.inverse(y).and_then(|x| map.forward(&x));
        if back.as_ref().ok() != Some(y) {
            inverse_round_trip_failures += 1;
            note(&mut counterexamples, || {
                format!("{y} does not survive inverse then forward")
            });
        }
    }
    if domain.len() != codomain.len() {
        note(&mut counterexamples, || {
            format!(
                "|{dom}| = {} but |{cod}| = {}",
                domain.len(),
                codomain.len()
            )
        });
    }
    let passed = domain.len() == codomain.len()
        && codomain_failures == 0
        && collisions == 0
        && round_trip_failures == 0
        && inverse_round_trip_failures == 0;
    Ok(BijectionReport {
        map: map.name(),
        n,
        k,
        domain: dom.to_string(),
        codomain: cod.to_string(),
        domain_size: domain.len(),
        codomain_size: codomain.len(),
        codomain_failures,
        collisions,
        round_trip_failures,
        inverse_round_trip_failures,
        passed,
        counterexamples,
    })
}

/// Reports for all six maps and every admissible `(n, k)` with `n <= n_max`.
pub fn verify_all_lemma_maps(n_max: usize, limit: EnumLimit) -> Result<Vec<BijectionReport>> {
    let cache = QCache::new(n_max + 2, limit)?;
    let jobs: Vec<(LemmaMap, usize, usize)> = LemmaMap::ALL
        .iter()
        .flat_map(|&m| (0..=n_max).flat_map(move |n| (0..=n + 1).map(move |k| (m, n, k))))
        .filter(|&(m, n, k)| m.admits(n, k))
        .collect();
    jobs.par_iter()
        .map(|&(m, n, k)| verify_lemma_map(m, n, k, &cache))
        .collect()
}

/// Set sizes behind the two recurrence proofs at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardinalityLedger {
    pub n: usize,
    pub k: usize,
    pub qd: usize,
    pub rd: usize,
    pub rd_bar: usize,
    pub fd: usize,
    pub hd: usize,
    pub rhd: usize,
    pub rhd_bar: usize,
    pub hd_bar: usize,
    pub qa: usize,
    pub ra: usize,
    pub ra_bar: usize,
    pub fa: usize,
    pub ha: usize,
    pub rfa: usize,
    pub rfa_bar: usize,
    pub ha_bar: usize,
    /// Every equation of the descent-side count holds.
    pub descent_balances: bool,
    /// Every equation of the ascent-side count holds, with `B̃` taken from
    /// brute-force ascent counts.
    pub ascent_balances: bool,
}

/// Brute-force `B̃(n,k)`: permutations of `Q_{n+1}` with `k` ascents.
pub fn ascent_counts(cache: &QCache, n: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; n + 1];
    for p in cache.get(n + 1)? {
        counts[p.asc()] += 1;
    }
    Ok(counts)
}

pub fn cardinality_ledger(
    n: usize,
    k: usize,
    cache: &QCache,
    table: &BinomialEulerianTable,
) -> Result<CardinalityLedger> {
    let size = |kind, m, s| SetLabel::new(kind, m, s).cardinality(cache);
    let km1 = k.checked_sub(1);
    let pair = |kind, m| match km1 {
        Some(s) => size(kind, m, s),
        None => Ok(0),
    };
    let l = CardinalityLedger {
        n,
        k,
        qd: size(SetKind::QD, n + 2, k)?,
        rd: size(SetKind::RD, n + 2, k)?,
        rd_bar: size(SetKind::RDbar, n + 2, k)?,
        fd: size(SetKind::FD, n + 1, k)?,
        hd: pair(SetKind::HD, n + 1)?,
        rhd: pair(SetKind::RHD, n + 1)?,
        rhd_bar: pair(SetKind::RHDbar, n + 1)?,
        hd_bar: if n >= 1 { pair(SetKind::HDbar, n)? } else { 0 },
        qa: size(SetKind::QA, n + 2, k)?,
        ra: size(SetKind::RA, n + 2, k)?,
        ra_bar: size(SetKind::RAbar, n + 2, k)?,
        fa: size(SetKind::FA, n + 1, k)?,
        ha: pair(SetKind::HA, n + 1)?,
        rfa: size(SetKind::RFA, n + 1, k)?,
        rfa_bar: size(SetKind::RFAbar, n + 1, k)?,
        ha_bar: if n >= 1 { pair(SetKind::HAbar, n)? } else { 0 },
        descent_balances: false,
        ascent_balances: false,
    };

    let (ni, ki) = (n as isize, k as isize);
    let big = |v: usize| BigInt::from(v);
    let a = |nn: isize, kk: isize| table.get_signed(nn, kk);
    let a_rd_bar = a(ni, ki - 1) * (ni - ki + 2) - a(ni - 1, ki - 1) * n;
    let descent_balances = big(l.qd) == a(ni + 1, ki)
        && l.rd + l.rd_bar == l.qd
        && big(l.rd) == a(ni, ki) * (k + 1)
        && l.rd == l.fd
        && l.rd_bar == l.rhd
        && l.rhd + l.rhd_bar == l.hd
        && l.rhd_bar == l.hd_bar
        && big(l.rd_bar) == a_rd_bar;

    let counts: Vec<Vec<usize>> = (0..=n + 1)
        .map(|m| ascent_counts(cache, m))
        .collect::<Result<_>>()?;
    let b = |nn: isize, kk: isize| -> BigInt {
        if nn < 0 || kk < 0 {
            return BigInt::from(0);
        }
        BigInt::from(counts[nn as usize].get(kk as usize).copied().unwrap_or(0))
    };
    let b_ra = b(ni, ki - 1) * (ni - ki + 2);
    let b_ra_bar = b(ni, ki) * (k + 1) - b(ni - 1, ki - 1) * n;
    let ascent_balances = b(ni + 1, ki) == &b_ra + &b_ra_bar
        && big(l.qa) == b(ni + 1, ki)
        && l.ra + l.ra_bar == l.qa
        && l.ra == l.ha
        && big(l.ra) == b_ra
        && l.ra_bar == l.rfa
        && l.rfa + l.rfa_bar == l.fa
        && l.rfa_bar == l.ha_bar
        && big(l.ra_bar) == b_ra_bar;

    Ok(CardinalityLedger {
        descent_balances,
        ascent_balances,
        ..l
    })
}

pub fn cardinality_ledgers(n_max: usize, limit: EnumLimit) -> Result<Vec<CardinalityLedger>> {
    let cache = QCache::new(n_max + 2, limit)?;
    let table = BinomialEulerianTable::build(n_max + 1);
    let jobs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=n + 1).map(move |k| (n, k)))
        .collect();
    jobs.par_iter()
        .map(|&(n, k)| cardinality_ledger(n, k, &cache, &table))
        .collect()
}

/// Which branch of the recursion produced `Ω_n(π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaCase {
    Base,
    C1,
    C2,
    C3,
}

type Lower<'a> = &'a (dyn Fn(&Permutation) -> Result<Permutation> + Sync);

fn dispatch_error(pi: &Permutation, reason: impl Into<String>) -> Error {
    Error::Dispatch {
        perm: pi.to_string(),
        reason: reason.into(),
    }
}

fn base_omega(pi: &Permutation) -> Option<Permutation> {
    match pi.len() {
        1 => Some(pi.clone()),
        2 => Some(Permutation::from_vec_unchecked(
            pi.entries().iter().rev().copied().collect(),
        )),
        _ => None,
    }
}

/// FD marks `0..k` to FA marks `1..k ∪ {size}`, order preserving.
fn mark_fd_to_fa(i: usize, k: usize, size: usize) -> usize {
    if i == k {
        size
    } else {
        i + 1
    }
}

fn mark_fa_to_fd(i: usize, k: usize, size: usize) -> usize {
    if i == size {
        k
    } else {
        i - 1
    }
}

/// One level of the recursion for `Ω_m`, given `Ω` and `Ω⁻¹` on smaller
/// sizes.
pub fn omega_step(pi: &Permutation, fwd: Lower, inv: Lower) -> Result<(Permutation, OmegaCase)> {
    if !pi.is_in_q() {
        return Err(Error::NotInSet {
            object: pi.to_string(),
            set: format!("Q_{}", pi.len()),
        });
    }
    if let Some(out) = base_omega(pi) {
        return Ok((out, OmegaCase::Base));
    }
    let (m, k) = (pi.len(), pi.des());
    let (n, n1) = (m - 2, m - 1);
    if SetLabel::new(SetKind::RD, m, k).contains_perm(pi)? {
        let fd = phi(pi)?;
        let tau = fwd(fd.perm())?;
        let j = mark_fd_to_fa(fd.mark(), k, n1);
        if SetLabel::new(SetKind::RFA, n1, k).contains_pair(&tau, j)? {
            return Ok((phi_hat_inv(&tau, j)?, OmegaCase::C1));
        }
        if !SetLabel::new(SetKind::RFAbar, n1, k).contains_pair(&tau, j)? {
            return Err(dispatch_error(
                pi,
                format!("[{tau}, {j}] is in neither RFA nor RFAbar"),
            ));
        }
        let habar = psi_hat_inv(&tau, j)?;
        let rho = inv(habar.perm())?;
        debug_assert_eq!(rho.len(), n);
        let rhdbar = psi(&rho, habar.mark())?;
        let up = fwd(rhdbar.perm())?;
        return Ok((theta_hat_inv(&up, rhdbar.mark())?, OmegaCase::C2));
    }
    if SetLabel::new(SetKind::RDbar, m, k).contains_perm(pi)? {
        let rhd = theta(pi)?;
        let tau = fwd(rhd.perm())?;
        return Ok((theta_hat_inv(&tau, rhd.mark())?, OmegaCase::C3));
    }
    Err(dispatch_error(pi, "in neither RD nor RDbar"))
}

/// One level of `Ω_m⁻¹`, mirroring [`omega_step`].
pub fn omega_inv_step(
    rho: &Permutation,
    fwd: Lower,
    inv: Lower,
) -> Result<(Permutation, OmegaCase)> {
    if !rho.is_in_q() {
        return Err(Error::NotInSet {
            object: rho.to_string(),
            set: format!("Q_{}", rho.len()),
        });
    }
    if let Some(out) = base_omega(rho) {
        return Ok((out, OmegaCase::Base));
    }
    let (m, k) = (rho.len(), rho.asc());
    let n1 = m - 1;
    if SetLabel::new(SetKind::RAbar, m, k).contains_perm(rho)? {
        let rfa = phi_hat(rho)?;
        let sigma = inv(rfa.perm())?;
        return Ok((
            phi_inv(&sigma, mark_fa_to_fd(rfa.mark(), k, n1))?,
            OmegaCase::C1,
        ));
    }
    if !SetLabel::new(SetKind::RA, m, k).contains_perm(rho)? {
        return Err(dispatch_error(rho, "in neither RA nor RAbar"));
    }
    let ha = theta_hat(rho)?;
    let sigma = inv(ha.perm())?;
    if SetLabel::new(SetKind::RHD, n1, sigma.des()).contains_pair(&sigma, ha.mark())? {
        return Ok((theta_inv(&sigma, ha.mark())?, OmegaCase::C3));
    }
    let hdbar = psi_inv(&sigma, ha.mark())?;
    let up = fwd(hdbar.perm())?;
    let rfabar = psi_hat(&up, hdbar.mark())?;
    let back = inv(rfabar.perm())?;
    let i = mark_fa_to_fd(rfabar.mark(), k, n1);
    Ok((phi_inv(&back, i)?, OmegaCase::C2))
}

/// `Ω_n(π)` by direct recursion. Fine for single queries; use
/// [`OmegaTable`] to cover all of `Q_n`.
pub fn omega(pi: &Permutation) -> Result<Permutation> {
    omega_step(pi, &omega, &omega_inv).map(|r| r.0)
}

pub fn omega_inv(rho: &Permutation) -> Result<Permutation> {
    omega_inv_step(rho, &omega, &omega_inv).map(|r| r.0)
}

/// `Ω_m` and `Ω_m⁻¹` tabulated on all of `Q_m` for `m <= n_max`.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    forward: Vec<HashMap<Permutation, (Permutation, OmegaCase)>>,
    inverse: Vec<HashMap<Permutation, Permutation>>,
}

impl OmegaTable {
    /// Builds level by level. The inverse at each level is the inverted
    /// forward table; a level that fails to be a bijection stops the build.
    pub fn build(n_max: usize, limit: EnumLimit) -> Result<Self> {
        let mut table = OmegaTable {
            forward: Vec::new(),
            inverse: Vec::new(),
        };
        for m in 1..=n_max {
            let q = q_members(m, limit)?;
            let level: HashMap<_, _> = {
                let t = &table;
                let fwd = |p: &Permutation| t.get(p);
                let inv = |p: &Permutation| t.get_inv(p);
                q.par_iter()
                    .map(|p| omega_step(p, &fwd, &inv).map(|r| (p.clone(), r)))
                    .collect::<Result<_>>()?
            };
            let inverse: HashMap<_, _> = level
                .iter()
                .map(|(k, (v, _))| (v.clone(), k.clone()))
                .collect();
            if inverse.len() != level.len() {
                return Err(Error::Dispatch {
                    perm: format!("Q_{m}"),
                    reason: format!("{} images for {} elements", inverse.len(), level.len()),
                });
            }
            table.forward.push(level);
            table.inverse.push(inverse);
        }
        Ok(table)
    }

    pub fn n_max(&self) -> usize {
        self.forward.len()
    }

    fn lookup<'a, V>(levels: &'a [HashMap<Permutation, V>], p: &Permutation) -> Result<&'a V> {
        levels
            .get(p.len().wrapping_sub(1))
            .and_then(|l| l.get(p))
            .ok_or_else(|| Error::NotInSet {
                object: p.to_string(),
                set: format!("Q_{} (tabulated)", p.len()),
            })
    }

    pub fn get(&self, p: &Permutation) -> Result<Permutation> {
        Self::lookup(&self.forward, p).map(|v| v.0.clone())
    }

    pub fn case(&self, p: &Permutation) -> Result<OmegaCase> {
        Self::lookup(&self.forward, p).map(|v| v.1)
    }

    pub fn get_inv(&self, p: &Permutation) -> Result<Permutation> {
        Self::lookup(&self.inverse, p).cloned()
    }

    /// `(π, Ω_m(π))` for every `π ∈ Q_m`, sorted by `π`.
    pub fn level(&self, m: usize) -> Vec<(Permutation, Permutation)> {
        let mut v: Vec<_> = self.forward[m - 1]
            .iter()
            .map(|(k, (v, _))| (k.clone(), v.clone()))
            .collect();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CaseCounts {
    pub base: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
}

/// Exhaustive check of `Ω_n` on `Q_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub n: usize,
    pub domain_size: usize,
    pub distinct_images: usize,
    /// Images outside `Q_n`.
    pub codomain_failures: usize,
    /// `π` with `des(π) != asc(Ω_n(π))`.
    pub transport_failures: usize,
    /// `π` for which the independently computed inverse step does not
    /// return `π`.
    pub round_trip_failures: usize,
    pub cases: CaseCounts,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

pub fn verify_omega(n_max: usize, limit: EnumLimit) -> Result<Vec<OmegaReport>> {
    let table = OmegaTable::build(n_max, limit)?;
    let fwd = |p: &Permutation| table.get(p);
    let inv = |p: &Permutation| table.get_inv(p);
    (1..=n_max)
        .map(|n| {
            let q = q_members(n, limit)?;
            let mut cases = CaseCounts::default();
            let mut images = HashMap::new();
            let mut counterexamples = Vec::new();
            let (mut codomain_failures, mut transport_failures, mut round_trip_failures) =
                (0, 0, 0);
            for p in &q {
                let img = table.get(p)?;
                match table.case(p)? {
                    OmegaCase::Base => cases.base += 1,
                    OmegaCase::C1 => cases.c1 += 1,
                    OmegaCase::C2 => cases.c2 += 1,
                    OmegaCase::C3 => cases.c3 += 1,
                }
                if !img.is_in_q() || img.len() != n {
                    codomain_failures += 1;
                    note(&mut counterexamples, || {
                        format!("Ω({p}) = {img} is not in Q_{n}")
                    });
                }
                if p.des() != img.asc() {
                    transport_failures += 1;
                    note(&mut counterexamples, || {
                        format!(
                            "des({p}) = {} but asc(Ω({p})) = asc({img}) = {}",
                            p.des(),
                            img.asc()
                        )
                    });
                }
                if omega_inv_step(&img, &fwd, &inv).ok().map(|r| r.0).as_ref() != Some(p) {
                    round_trip_failures += 1;
                    note(&mut counterexamples, || format!("Ω⁻¹(Ω({p})) != {p}"));
                }
                if let Some(prev) = images.insert(img.clone(), p.clone()) {
                    note(&mut counterexamples, || {
                        format!("Ω({prev}) = Ω({p}) = {img}")
                    });
                }
            }
            let passed = images.len() == q.len()
                && codomain_failures == 0
                && transport_failures == 0
                && round_trip_failures == 0;
            Ok(OmegaReport {
                n,
                domain_size: q.len(),
                distinct_images: images.len(),
                codomain_failures,
                transport_failures,
                round_trip_failures,
                cases,
                passed,
                counterexamples,
            })
        })
        .collect()
}
