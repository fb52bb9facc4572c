//! Biflats and biflags: pairs of flats spanning the ground set, and chains
//! of pairwise compatible biflats.
//!
//! A biflat `F|G` consists of a nonempty flat `F` and a nonempty coflat `G`
//! with `F ∪ G = E`, not both equal to `E`. Two biflats are compatible when
//! one dominates the other (`F ⊆ F'` and `G ⊇ G'`). A biflag is a set of
//! pairwise compatible biflats whose intersections `F ∩ G` do not jointly
//! cover `E`; every maximal biflag has exactly `n − 1` members, two fewer
//! than the ground-set size.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::activity::activities;
use crate::error::{Error, Result};
use crate::eset::{set_label, ESet, Element};
use crate::matroid::Matroid;

/// Inline capacity for biflag chains; ground sets up to 13 elements stay on
/// the stack.
pub(crate) const CHAIN_INLINE: usize = 12;

pub(crate) type Chain = SmallVec<[Biflat; CHAIN_INLINE]>;

/// A flat/coflat pair `F|G` with `F ∪ G = E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Biflat {
    pub f: ESet,
    pub g: ESet,
}

impl Biflat {
    pub fn new(f: ESet, g: ESet) -> Biflat {
        Biflat { f, g }
    }

    pub fn label(&self, ground: ESet) -> String {
        format!("{}|{}", set_label(self.f, ground.len()), set_label(self.g, ground.len()))
    }

    /// True when the pair dominates `other`: `other.f ⊆ f` and `other.g ⊇ g`.
    fn dominates(&self, other: &Biflat) -> bool {
        other.f.is_subset(self.f) && self.g.is_subset(other.g)
    }
}

impl fmt::Debug for Biflat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{:?}|{:?}", self.f, self.g)
    }
}

/// Biflats are ordered along chains: smaller `F` first, ties broken by
/// larger `G`, then by the dictionary order of the sets themselves. On the
/// members of a biflag this refines compatibility.
impl Ord for Biflat {
    fn cmp(&self, other: &Biflat) -> Ordering {
        (self.f.len(), other.g.len(), self.f, self.g).cmp(&(
            other.f.len(),
            self.g.len(),
            other.f,
            other.g,
        ))
    }
}

impl PartialOrd for Biflat {
    fn partial_cmp(&self, other: &Biflat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Checks the defining conditions of a biflat against a matroid.
pub fn is_biflat(m: &Matroid, bf: &Biflat) -> bool {
    let e = m.ground();
    !bf.f.is_empty()
        && !bf.g.is_empty()
        && !(bf.f == e && bf.g == e)
        && (bf.f | bf.g) == e
        && m.is_flat(bf.f)
        && m.is_coflat(bf.g)
}

/// Compatibility: one of the two biflats dominates the other.
pub fn compatible(a: &Biflat, b: &Biflat) -> bool {
    a.dominates(b) || b.dominates(a)
}

/// A chain of pairwise compatible biflats, stored in chain order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Biflag {
    chain: Chain,
}

impl Biflag {
    pub fn empty() -> Biflag {
        Biflag { chain: Chain::new() }
    }

    /// Builds a biflag from arbitrary order, validating every condition.
    pub fn new(m: &Matroid, biflats: &[Biflat]) -> Result<Biflag> {
        let mut chain: Chain = biflats.iter().copied().collect();
        chain.sort_unstable();
        let flag = Biflag { chain };
        flag.validate(m)?;
        Ok(flag)
    }

    pub(crate) fn from_sorted_unchecked(chain: Chain) -> Biflag {
        Biflag { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn as_slice(&self) -> &[Biflat] {
        &self.chain
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Biflat> {
        self.chain.iter()
    }

    /// The column at `idx` in the sentinel-extended chain: index `0` is
    /// `∅|E`, indices `1..=len` are the members, `len + 1` is `E|∅`.
    pub fn column(&self, idx: usize, ground: ESet) -> (ESet, ESet) {
        if idx == 0 {
            (ESet::EMPTY, ground)
        } else if idx <= self.chain.len() {
            let bf = self.chain[idx - 1];
            (bf.f, bf.g)
        } else {
            (ground, ESet::EMPTY)
        }
    }

    /// Union of the intersections `F ∩ G` over the members.
    pub fn big_union(&self) -> ESet {
        self.chain
            .iter()
            .fold(ESet::EMPTY, |acc, bf| acc | (bf.f & bf.g))
    }

    /// A copy with `bf` inserted at chain position `pos`.
    pub(crate) fn inserted_at(&self, pos: usize, bf: Biflat) -> Biflag {
        let mut chain = self.chain.clone();
        chain.insert(pos, bf);
        Biflag { chain }
    }

    pub fn label(&self, ground: ESet) -> String {
        if self.chain.is_empty() {
            return "1".to_string();
        }
        self.chain
            .iter()
            .map(|bf| format!("x[{}]", bf.label(ground)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Re-checks every defining condition against `m`.
    pub fn validate(&self, m: &Matroid) -> Result<()> {
        for bf in &self.chain {
            if !is_biflat(m, bf) {
                return Err(Error::NotABiflat(bf.label(m.ground())));
            }
        }
        for pair in self.chain.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::NotABiflag(format!(
                    "repeated member {}",
                    pair[0].label(m.ground())
                )));
            }
            if !pair[1].dominates(&pair[0]) {
                return Err(Error::NotABiflag(format!(
                    "incompatible members {} and {}",
                    pair[0].label(m.ground()),
                    pair[1].label(m.ground())
                )));
            }
        }
        if self.big_union() == m.ground() {
            return Err(Error::NotABiflag(
                "the intersections F ∩ G cover the ground set".to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for Biflag {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[")?;
        for (i, bf) in self.chain.iter().enumerate() {
            if i > 0 {
                write!(out, ", ")?;
            }
            write!(out, "{bf:?}")?;
        }
        write!(out, "]")
    }
}

/// Convenience wrapper for [`Biflag::validate`] on a raw chain.
pub fn is_biflag(m: &Matroid, biflats: &[Biflat]) -> bool {
    Biflag::new(m, biflats).is_ok()
}

/// Gap and jump structure of a biflag, indexed by the steps of the
/// sentinel-extended chain: step `j` runs from column `j` to column `j + 1`,
/// for `j = 0..=len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapJumpData {
    /// `gaps[j] = E − (F_j ∪ G_{j+1})`.
    pub gaps: Vec<ESet>,
    /// Steps where the flat strictly grows.
    pub f_jumps: Vec<usize>,
    /// Steps where the coflat strictly shrinks.
    pub g_jumps: Vec<usize>,
    /// Steps where both sides jump.
    pub double_jumps: Vec<usize>,
}

impl GapJumpData {
    pub fn unique_double_jump(&self) -> Option<usize> {
        match self.double_jumps.as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }
}

pub fn gap_jump(flag: &Biflag, ground: ESet) -> GapJumpData {
    let m = flag.len();
    let mut gaps = Vec::with_capacity(m + 1);
    let mut f_jumps = Vec::new();
    let mut g_jumps = Vec::new();
    let mut double_jumps = Vec::new();
    for j in 0..=m {
        let (f_lo, g_lo) = flag.column(j, ground);
        let (f_hi, g_hi) = flag.column(j + 1, ground);
        gaps.push((f_lo | g_hi).complement_in(ground));
        let df = f_lo != f_hi;
        let dg = g_lo != g_hi;
        if df {
            f_jumps.push(j);
        }
        if dg {
            g_jumps.push(j);
        }
        if df && dg {
            double_jumps.push(j);
        }
    }
    GapJumpData { gaps, f_jumps, g_jumps, double_jumps }
}

/// Grows a biflag one member at a time until it reaches the maximal length
/// `n − 1`. Works on loopless, coloopless matroids.
pub fn extend_to_maximal(m: &Matroid, flag: &Biflag) -> Result<Biflag> {
    m.require_loopless_coloopless()?;
    let target = m.ground_size() - 2;
    let mut flag = flag.clone();
    while flag.len() < target {
        let bf = extension_member(m, &flag)?;
        let mut chain: Chain = flag.as_slice().iter().copied().collect();
        chain.push(bf);
        chain.sort_unstable();
        flag = Biflag::from_sorted_unchecked(chain);
        debug_assert!(flag.validate(m).is_ok());
    }
    Ok(flag)
}

/// Produces one biflat that can join `flag`.
fn extension_member(m: &Matroid, flag: &Biflag) -> Result<Biflat> {
    let ground = m.ground();
    let steps = flag.len() + 1;

    // A flat strictly between two consecutive columns: pair it with the
    // upper coflat when that still spans the ground set, otherwise with the
    // lower one, which spans automatically.
    for j in 0..steps {
        let (f_lo, g_lo) = flag.column(j, ground);
        let (f_hi, g_hi) = flag.column(j + 1, ground);
        if f_lo == f_hi {
            continue;
        }
        let between = m.flats_between(f_lo, f_hi, None)?;
        if let Some(&f) = between.iter().find(|&&f| f != f_lo && f != f_hi) {
            let g = if (f | g_hi) == ground { g_hi } else { g_lo };
            return Ok(Biflat::new(f, g));
        }
    }

    // Dual counterpart: a coflat strictly between two consecutive columns.
    for j in 0..steps {
        let (f_lo, g_lo) = flag.column(j, ground);
        let (f_hi, g_hi) = flag.column(j + 1, ground);
        if g_lo == g_hi {
            continue;
        }
        let between = m.coflats_between(g_hi, g_lo, None)?;
        if let Some(&g) = between.iter().find(|&&g| g != g_lo && g != g_hi) {
            let f = if (f_lo | g) == ground { f_lo } else { f_hi };
            return Ok(Biflat::new(f, g));
        }
    }

    // Every step is a cover on both sides, so short chains leave at least
    // two double jumps. One of them keeps the witness element of a nonempty
    // gap; splitting any other double jump diagonally preserves it.
    let data = gap_jump(flag, ground);
    let witness = data
        .double_jumps
        .iter()
        .copied()
        .find(|&j| !data.gaps[j].is_empty())
        .ok_or_else(|| Error::PipelineInvariant("no double jump guards a gap".to_string()))?;
    for &j in &data.double_jumps {
        if j == witness {
            continue;
        }
        let (_, g_lo) = flag.column(j, ground);
        let (f_hi, _) = flag.column(j + 1, ground);
        if f_hi == ground && g_lo == ground {
            continue;
        }
        return Ok(Biflat::new(f_hi, g_lo));
    }
    Err(Error::PipelineInvariant(
        "tight chain offers no second double jump".to_string(),
    ))
}

/// The biflag attached to a basis with no broken circuit: closures of the
/// descending prefixes of the internally passive part, followed by
/// coclosures of the ascending suffixes of the complement minus its least
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcBiflag {
    pub basis: ESet,
    pub biflag: Biflag,
    /// One element per member, in chain order: the internally passive part
    /// descending, then the reduced complement ascending.
    pub arrivals: Vec<Element>,
    /// Number of leading members with coflat `E`.
    pub primal_count: usize,
}

pub fn nbc_biflag(m: &Matroid, basis: ESet) -> Result<NbcBiflag> {
    let rec = activities(m, basis)?;
    if !rec.is_nbc() {
        return Err(Error::NotNbc(basis));
    }
    let ground = m.ground();
    let passive = rec.internally_passive;
    let complement = basis.complement_in(ground);
    let tail = complement.without(complement.min().expect("basis is proper"));

    let mut arrivals: Vec<Element> = passive.iter().collect();
    arrivals.reverse();
    let mut chain = Chain::new();
    let mut prefix = ESet::EMPTY;
    for &e in &arrivals {
        prefix = prefix.with(e);
        chain.push(Biflat::new(m.closure(prefix), ground));
    }
    let primal_count = chain.len();

    let tail_asc: Vec<Element> = tail.iter().collect();
    for (i, _) in tail_asc.iter().enumerate() {
        let suffix: ESet = tail_asc[i..].iter().copied().collect();
        chain.push(Biflat::new(ground, m.coclosure(suffix)));
    }
    arrivals.extend_from_slice(&tail_asc);

    let flag = Biflag::from_sorted_unchecked(chain);
    flag.validate(m)?;
    Ok(NbcBiflag { basis, biflag: flag, arrivals, primal_count })
}

/// The extension of an NBC biflag to maximal length: the active elements
/// above the least one are folded in as closures at the double jump, paired
/// with `E` before the switch index and with the first dual coflat after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedNbcBiflag {
    pub basis: ESet,
    pub biflag: Biflag,
    pub nbc: NbcBiflag,
    /// The inserted members, in chain order.
    pub inserted: Vec<Biflat>,
    /// Arrival elements of the full chain: the inserted members carry the
    /// active elements they fold in.
    pub arrivals: Vec<Element>,
    /// 1-based position `i` of the first inserted member paired with the
    /// dual coflat; `i = k + 1` when every inserted member pairs with `E`.
    pub switch_index: usize,
}

pub fn extended_nbc_biflag(m: &Matroid, basis: ESet) -> Result<ExtendedNbcBiflag> {
    let nbc = nbc_biflag(m, basis)?;
    let ground = m.ground();
    let rec = activities(m, basis)?;
    let active = rec.internally_active;
    let least = active.min().expect("a loopless basis has an active least element");

    let mut pivots: Vec<Element> = active.without(least).iter().collect();
    pivots.reverse();
    let k = pivots.len();

    let passive = rec.internally_passive;
    let cl_passive = m.closure(passive);
    let complement = basis.complement_in(ground);
    let tail = complement.without(complement.min().expect("basis is proper"));
    let cocl_tail = m.coclosure(tail);

    // Switch index two ways: the last folded element outside both spans, and
    // the first prefix whose closure joins the dual coflat to cover E.
    let outside = (1..=k + 1)
        .rev()
        .find(|&i| {
            let c = if i == k + 1 { least } else { pivots[i - 1] };
            !(cl_passive | cocl_tail).contains(c)
        })
        .ok_or_else(|| {
            Error::PipelineInvariant("every active element is already spanned".to_string())
        })?;
    let mut prefix = passive;
    let covering = (1..=k + 1)
        .find(|&i| {
            let c = if i == k + 1 { least } else { pivots[i - 1] };
            prefix = prefix.with(c);
            (m.closure(prefix) | cocl_tail) == ground
        })
        .ok_or_else(|| {
            Error::PipelineInvariant("folding every active element never covers E".to_string())
        })?;
    if outside != covering {
        return Err(Error::PipelineInvariant(format!(
            "switch index mismatch: {outside} vs {covering}"
        )));
    }
    let switch_index = outside;

    let mut inserted = Vec::with_capacity(k);
    let mut grown = passive;
    for (t, &c) in pivots.iter().enumerate() {
        grown = grown.with(c);
        let g = if t + 1 < switch_index { ground } else { cocl_tail };
        inserted.push(Biflat::new(m.closure(grown), g));
    }

    let mut chain: Chain = nbc.biflag.as_slice().iter().copied().collect();
    let mut arrivals = nbc.arrivals.clone();
    for (t, &bf) in inserted.iter().enumerate() {
        chain.insert(nbc.primal_count + t, bf);
        arrivals.insert(nbc.primal_count + t, pivots[t]);
    }
    let flag = Biflag::from_sorted_unchecked(chain);
    flag.validate(m)?;
    if flag.len() != m.ground_size() - 2 {
        return Err(Error::PipelineInvariant(format!(
            "extended chain has {} members, expected {}",
            flag.len(),
            m.ground_size() - 2
        )));
    }
    Ok(ExtendedNbcBiflag { basis, biflag: flag, nbc, inserted, arrivals, switch_index })
}
