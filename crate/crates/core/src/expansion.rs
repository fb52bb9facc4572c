//! Expansion of powers of the diagonal class `δ` and exact multiplication by
//! the girth class `γ` in the square-free biflag basis.
//!
//! A monomial is tracked as an [`ExpansionTable`]: the biflag itself plus one
//! arrival element per member and the union of the intersections `F ∩ G`.
//! Multiplying by `δ` rewrites the product as a sum of longer tables whose
//! new member carries the largest uncovered element; multiplying by `γ_c`
//! inserts a member above the closure of the top proper flat joined with
//! `c`. Iterating `δ` from the empty table yields the canonical expansion of
//! `δ^p`; the resistant tables of `δ^{n−k−1}` survive `γ^k` and land on the
//! extended NBC biflags.

use std::collections::BTreeMap;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::activity::{activities, greedy_completion, nbc_bases};
use crate::biflag::{extended_nbc_biflag, nbc_biflag, Biflag, Biflat, CHAIN_INLINE};
use crate::error::{Error, Result};
use crate::eset::{ESet, Element};
use crate::matroid::Matroid;

type Arrivals = SmallVec<[Element; CHAIN_INLINE]>;

/// A biflag monomial in flight: the chain, the arrival element of each
/// member, and the cached union of the intersections `F ∩ G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTable {
    pub biflag: Biflag,
    pub arrivals: Arrivals,
    pub covered: ESet,
}

impl ExpansionTable {
    /// The empty table, representing the monomial `1`.
    pub fn root() -> ExpansionTable {
        ExpansionTable {
            biflag: Biflag::empty(),
            arrivals: Arrivals::new(),
            covered: ESet::EMPTY,
        }
    }

    pub fn len(&self) -> usize {
        self.biflag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.biflag.is_empty()
    }

    /// The pivot of the next `δ` step: the largest uncovered element.
    pub fn pivot(&self, ground: ESet) -> Option<Element> {
        (ground - self.covered).max()
    }

    /// Index (1-based) and flat of the last member whose flat is proper;
    /// `(0, ∅)` when every member carries `E`.
    pub fn last_proper_flat(&self, ground: ESet) -> (usize, ESet) {
        let mut out = (0, ESet::EMPTY);
        for (t, bf) in self.biflag.iter().enumerate() {
            if bf.f != ground {
                out = (t + 1, bf.f);
            }
        }
        out
    }

    fn child(&self, pos: usize, member: Biflat, arrival: Element) -> ExpansionTable {
        let mut arrivals = self.arrivals.clone();
        arrivals.insert(pos, arrival);
        ExpansionTable {
            biflag: self.biflag.inserted_at(pos, member),
            arrivals,
            covered: self.covered | (member.f & member.g),
        }
    }
}

/// One `δ` step: all ways to insert a member carrying the pivot element.
///
/// The pivot `e` is the largest uncovered element; it determines the unique
/// slot `j` with `e ∈ F_{j+1} − F_j` in the sentinel chain, and the new
/// member ranges over flats of `[F_j, F_{j+1}]` and coflats of
/// `[G_{j+1}, G_j]` containing `e` whose union is `E`, subject to the
/// covering condition.
pub fn delta_step(m: &Matroid, table: &ExpansionTable) -> Result<Vec<ExpansionTable>> {
    let ground = m.ground();
    let e = table.pivot(ground).ok_or_else(|| {
        Error::PipelineInvariant("every element is covered; no pivot remains".to_string())
    })?;
    let len = table.len();
    let mut j = len;
    for t in 0..=len {
        let (f_hi, _) = table.biflag.column(t + 1, ground);
        if f_hi.contains(e) {
            j = t;
            break;
        }
    }
    let (f_lo, g_hi) = table.biflag.column(j, ground);
    let (f_hi, g_lo) = table.biflag.column(j + 1, ground);
    if !g_hi.contains(e) || g_lo.contains(e) {
        return Err(Error::PipelineInvariant(format!(
            "pivot {e} misses the dual interval at slot {j}"
        )));
    }
    let flats = m.interval(f_lo, f_hi, Some(e), false)?;
    let coflats = m.interval(g_lo, g_hi, Some(e), true)?;
    let mut out = Vec::new();
    for &f in flats.iter() {
        for &g in coflats.iter() {
            if (f | g) != ground {
                continue;
            }
            if f == ground && g == ground {
                continue;
            }
            if (table.covered | (f & g)) == ground {
                continue;
            }
            out.push(table.child(j, Biflat::new(f, g), e));
        }
    }
    Ok(out)
}

/// One `γ_c` step: all ways to insert a member above `cl(F_l ∪ c)`, where
/// `F_l` is the last proper flat. Errs when `c ∈ F_l`.
pub fn gamma_step(m: &Matroid, table: &ExpansionTable, c: Element) -> Result<Vec<ExpansionTable>> {
    let ground = m.ground();
    let (l, f_l) = table.last_proper_flat(ground);
    if f_l.contains(c) {
        return Err(Error::PivotInFlat { pivot: c });
    }
    let (_, g_l) = table.biflag.column(l, ground);
    let (_, g_next) = table.biflag.column(l + 1, ground);
    let base = m.closure(f_l.with(c));
    let flats = m.interval(base, ground, None, false)?;
    let coflats = m.interval(g_next, g_l, None, true)?;
    let mut out = Vec::new();
    for &f in flats.iter() {
        if f == ground {
            continue;
        }
        for &g in coflats.iter() {
            if (f | g) != ground {
                continue;
            }
            if (table.covered | (f & g)) == ground {
                continue;
            }
            out.push(table.child(l, Biflat::new(f, g), c));
        }
    }
    Ok(out)
}

/// True when `γ^k` annihilates the monomial outright: with `s` distinct
/// proper flats in the chain, either `s + k` exceeds `r`, or it equals `r`
/// while the proper flats miss a rank below `s`.
pub fn eradicates(m: &Matroid, flag: &Biflag, k: usize) -> bool {
    let ground = m.ground();
    let r = m.rank_total() - 1;
    let mut proper: SmallVec<[ESet; CHAIN_INLINE]> = SmallVec::new();
    for bf in flag.iter() {
        if bf.f != ground && proper.last() != Some(&bf.f) {
            proper.push(bf.f);
        }
    }
    let s = proper.len();
    if s + k > r {
        return true;
    }
    if s + k == r {
        for (i, &f) in proper.iter().enumerate() {
            if m.rank(f) != i + 1 {
                return true;
            }
        }
    }
    false
}

/// Per-level tallies of a `δ` walk.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    /// Table count of each level, i.e. the coefficient mass of `δ^p`.
    pub with_multiplicity: Vec<u64>,
    /// Distinct biflags per level.
    pub distinct: Vec<u64>,
    /// Largest level encountered.
    pub peak_frontier: u64,
}

impl Census {
    fn push_level(&mut self, level: &[ExpansionTable]) {
        let with_mult = level.len() as u64;
        let mut distinct = 0u64;
        let mut prev: Option<&Biflag> = None;
        for table in level {
            if prev != Some(&table.biflag) {
                distinct += 1;
                prev = Some(&table.biflag);
            }
        }
        self.with_multiplicity.push(with_mult);
        self.distinct.push(distinct);
        self.peak_frontier = self.peak_frontier.max(with_mult);
    }
}

/// Level-by-level walk of the canonical `δ` expansion. Only the current
/// level is retained, so a full walk on a ground set of a dozen elements
/// stays within memory.
pub struct DeltaWalk<'a> {
    m: &'a Matroid,
    level: Vec<ExpansionTable>,
    power: usize,
    census: Census,
}

impl<'a> DeltaWalk<'a> {
    pub fn new(m: &'a Matroid) -> Result<DeltaWalk<'a>> {
        m.require_loopless_coloopless()?;
        let level = vec![ExpansionTable::root()];
        let mut census = Census::default();
        census.push_level(&level);
        Ok(DeltaWalk { m, level, power: 0, census })
    }

    /// Largest meaningful power: the maximal biflag length `n − 1`.
    pub fn max_power(&self) -> usize {
        self.m.ground_size() - 2
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn level(&self) -> &[ExpansionTable] {
        &self.level
    }

    pub fn census(&self) -> &Census {
        &self.census
    }

    /// Multiplies the current level by `δ` once.
    pub fn advance(&mut self) -> Result<()> {
        if self.power >= self.max_power() {
            return Err(Error::PowerOutOfRange {
                power: self.power + 1,
                max: self.max_power(),
            });
        }
        let nested: Vec<Vec<ExpansionTable>> = self
            .level
            .par_iter()
            .map(|table| delta_step(self.m, table))
            .collect::<Result<_>>()?;
        let mut next: Vec<ExpansionTable> = nested.into_iter().flatten().collect();
        next.par_sort_unstable_by(|a, b| {
            a.biflag.cmp(&b.biflag).then_with(|| a.arrivals.cmp(&b.arrivals))
        });
        self.level = next;
        self.power += 1;
        self.census.push_level(&self.level);
        Ok(())
    }

    pub fn advance_to(&mut self, power: usize) -> Result<()> {
        if power > self.max_power() {
            return Err(Error::PowerOutOfRange { power, max: self.max_power() });
        }
        while self.power < power {
            self.advance()?;
        }
        Ok(())
    }
}

/// A formal sum of biflag monomials with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialSum {
    terms: BTreeMap<Biflag, u64>,
}

impl MonomialSum {
    pub fn new() -> MonomialSum {
        MonomialSum::default()
    }

    pub fn from_tables<'t>(tables: impl IntoIterator<Item = &'t ExpansionTable>) -> MonomialSum {
        let mut sum = MonomialSum::new();
        for table in tables {
            sum.add(table.biflag.clone(), 1);
        }
        sum
    }

    pub fn add(&mut self, flag: Biflag, count: u64) {
        *self.terms.entry(flag).or_insert(0) += count;
    }

    pub fn coefficient(&self, flag: &Biflag) -> u64 {
        self.terms.get(flag).copied().unwrap_or(0)
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total coefficient mass.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Biflag, u64)> {
        self.terms.iter().map(|(flag, &count)| (flag, count))
    }
}

impl FromIterator<(Biflag, u64)> for MonomialSum {
    fn from_iter<I: IntoIterator<Item = (Biflag, u64)>>(iter: I) -> MonomialSum {
        let mut sum = MonomialSum::new();
        for (flag, count) in iter {
            sum.add(flag, count);
        }
        sum
    }
}

/// The canonical expansion of `δ^power` with its walk census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaExpansion {
    pub power: usize,
    pub monomials: MonomialSum,
    pub census: Census,
}

pub fn delta_power(m: &Matroid, power: usize) -> Result<DeltaExpansion> {
    let mut walk = DeltaWalk::new(m)?;
    walk.advance_to(power)?;
    Ok(DeltaExpansion {
        power,
        monomials: MonomialSum::from_tables(walk.level()),
        census: walk.census().clone(),
    })
}

/// The degree of a top-dimensional sum: its total multiplicity, after
/// checking that every monomial has the maximal length `n − 1`.
pub fn degree(m: &Matroid, sum: &MonomialSum) -> Result<u64> {
    let expected = m.ground_size() - 2;
    for (flag, _) in sum.iter() {
        if flag.len() != expected {
            return Err(Error::WrongDegree { expected, got: flag.len() });
        }
    }
    Ok(sum.total())
}

/// Witness that a table of `δ^{n−k−1}` is resistant: the recovered basis,
/// its internally active part (which equals the greedy completion) and the
/// internally passive prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResistantCertificate {
    pub basis: ESet,
    pub active: ESet,
    pub passive: ESet,
}

/// Decides whether a table of `δ^{n−k−1}` survives multiplication by `γ^k`,
/// returning the certificate when it does.
///
/// The test follows the shape of an NBC biflag: proper flats paired with `E`
/// first, then `E` over a strictly decreasing coflat chain; a strictly
/// decreasing independent arrival prefix whose greedy completion is exactly
/// the internal activity, of size `k + 1`; arrivals that are the minima of
/// their flats (resp. of `G − P`); and, decisively, equality with the NBC
/// biflag of the recovered basis.
pub fn resistant_filter(
    m: &Matroid,
    k: usize,
    table: &ExpansionTable,
) -> Result<Option<ResistantCertificate>> {
    let ground = m.ground();
    let r = m.rank_total() - 1;
    if k > r || table.len() + k + 2 != m.ground_size() {
        return Ok(None);
    }
    let rmk = r - k;
    let chain = table.biflag.as_slice();
    for (t, bf) in chain.iter().enumerate() {
        if t < rmk {
            if bf.g != ground || bf.f == ground {
                return Ok(None);
            }
            if t > 0 && !(chain[t - 1].f.is_subset(bf.f) && chain[t - 1].f != bf.f) {
                return Ok(None);
            }
        } else {
            if bf.f != ground {
                return Ok(None);
            }
            if t > rmk && !(bf.g.is_subset(chain[t - 1].g) && bf.g != chain[t - 1].g) {
                return Ok(None);
            }
        }
    }
    let prefix = &table.arrivals[..rmk];
    if !prefix.windows(2).all(|w| w[0] > w[1]) {
        return Ok(None);
    }
    let s: ESet = prefix.iter().copied().collect();
    if !m.is_independent(s) {
        return Ok(None);
    }
    let p = greedy_completion(m, s)?;
    let basis = s | p;
    let rec = activities(m, basis)?;
    if !rec.externally_active.is_empty()
        || rec.internally_active != p
        || p.len() != k + 1
    {
        return Ok(None);
    }
    for (t, bf) in chain.iter().enumerate() {
        let expected = if t < rmk { bf.f.min() } else { (bf.g - p).min() };
        if expected != Some(table.arrivals[t]) {
            return Ok(None);
        }
    }
    let nbc = nbc_biflag(m, basis)?;
    if nbc.biflag != table.biflag || nbc.arrivals[..] != table.arrivals[..] {
        return Ok(None);
    }
    Ok(Some(ResistantCertificate { basis, active: p, passive: s }))
}

/// Pivot rule for exhaustive `γ` multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaPivot {
    /// Smallest element outside the top proper flat.
    MinOutside,
    /// Largest element outside the top proper flat.
    MaxOutside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    /// Drop eradicated monomials after each step. Neutral for the final
    /// result; keeping it on bounds the frontier.
    pub prune: bool,
    pub pivot: GammaPivot,
}

impl Default for ExhaustiveOptions {
    fn default() -> ExhaustiveOptions {
        ExhaustiveOptions { prune: true, pivot: GammaPivot::MinOutside }
    }
}

/// How to compute `γ^k δ^{n−k−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Keep only the resistant tables of `δ^{n−k−1}` and multiply each by
    /// the `γ` classes of its own active elements, pruning eradicated
    /// branches. The pruning is essential: prescribed pivots may land inside
    /// the top flat of a branch that is already zero.
    TheoremPath,
    /// Multiply every table of `δ^{n−k−1}`, choosing each pivot from the
    /// table itself so the step is always defined.
    Exhaustive(ExhaustiveOptions),
}

/// The expansion of `γ^k δ^{n−k−1}` together with the resistant certificates
/// of the `δ` level and the comparison against the extended NBC biflags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaDeltaExpansion {
    pub k: usize,
    pub power: usize,
    pub survivors: MonomialSum,
    pub certificates: Vec<ResistantCertificate>,
    /// Whether the survivors are exactly the extended NBC biflags of the
    /// bases with internal activity `k + 1`, each with coefficient one. The
    /// exhaustive strategy reproduces the coefficient total but generally
    /// not the monomials themselves once `k ≥ 1`.
    pub matches_extended: bool,
}

/// The extended NBC biflags of the bases with internal activity `k + 1`,
/// each with coefficient one.
pub fn expected_extended(m: &Matroid, k: usize) -> Result<MonomialSum> {
    let mut sum = MonomialSum::new();
    for rec in nbc_bases(m) {
        if rec.internal_activity() == k + 1 {
            sum.add(extended_nbc_biflag(m, rec.basis)?.biflag, 1);
        }
    }
    Ok(sum)
}

pub fn gamma_delta_power(m: &Matroid, k: usize, strategy: &Strategy) -> Result<GammaDeltaExpansion> {
    let r = m.rank_total() - 1;
    if k > r {
        return Err(Error::ActivityOutOfRange { k, max: r });
    }
    let mut walk = DeltaWalk::new(m)?;
    let power = walk.max_power() - k;
    walk.advance_to(power)?;
    gamma_from_level(m, k, walk.level(), strategy)
}

/// Runs the `γ` phase on an already-computed level of `δ^{n−k−1}` tables,
/// letting callers share one `δ` walk across several activities.
pub fn gamma_from_level(
    m: &Matroid,
    k: usize,
    level: &[ExpansionTable],
    strategy: &Strategy,
) -> Result<GammaDeltaExpansion> {
    let r = m.rank_total() - 1;
    if k > r {
        return Err(Error::ActivityOutOfRange { k, max: r });
    }
    let power = m.ground_size() - 2 - k;
    let certificates: Vec<(usize, ResistantCertificate)> = level
        .par_iter()
        .enumerate()
        .map(|(i, table)| Ok(resistant_filter(m, k, table)?.map(|cert| (i, cert))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let survivors = match strategy {
        Strategy::TheoremPath => {
            let nested: Vec<Vec<ExpansionTable>> = certificates
                .par_iter()
                .map(|&(i, cert)| {
                    let mut pivots: Vec<Element> = cert
                        .active
                        .without(cert.active.min().expect("activity is nonempty"))
                        .iter()
                        .collect();
                    pivots.reverse();
                    let mut frontier = vec![level[i].clone()];
                    for (idx, &c) in pivots.iter().enumerate() {
                        let remaining = k - idx - 1;
                        let mut next = Vec::new();
                        for table in &frontier {
                            for child in gamma_step(m, table, c)? {
                                if !eradicates(m, &child.biflag, remaining) {
                                    next.push(child);
                                }
                            }
                        }
                        frontier = next;
                    }
                    Ok(frontier)
                })
                .collect::<Result<_>>()?;
            MonomialSum::from_tables(nested.iter().flatten())
        }
        Strategy::Exhaustive(options) => {
            let mut frontier: Vec<ExpansionTable> = level.to_vec();
            for step in 1..=k {
                let remaining = k - step;
                let nested: Vec<Vec<ExpansionTable>> = frontier
                    .par_iter()
                    .map(|table| {
                        let ground = m.ground();
                        let (_, f_l) = table.last_proper_flat(ground);
                        let outside = ground - f_l;
                        let c = match options.pivot {
                            GammaPivot::MinOutside => outside.min(),
                            GammaPivot::MaxOutside => outside.max(),
                        }
                        .ok_or_else(|| {
                            Error::PipelineInvariant(
                                "top proper flat covers the ground set".to_string(),
                            )
                        })?;
                        let children = gamma_step(m, table, c)?;
                        Ok(children
                            .into_iter()
                            .filter(|child| {
                                !options.prune || !eradicates(m, &child.biflag, remaining)
                            })
                            .collect())
                    })
                    .collect::<Result<_>>()?;
                frontier = nested.into_iter().flatten().collect();
            }
            MonomialSum::from_tables(frontier.iter())
        }
    };

    let matches_extended = survivors == expected_extended(m, k)?;
    Ok(GammaDeltaExpansion {
        k,
        power,
        survivors,
        certificates: certificates.into_iter().map(|(_, cert)| cert).collect(),
        matches_extended,
    })
}
