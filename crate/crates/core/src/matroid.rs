//! Matroids on an ordered ground set, with graphic and basis-list backends.

use std::sync::atomic::{AtomicU8, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::eset::{ESet, Element, MAX_GROUND};

/// Rank queries are memoized in a full table up to this many ground elements.
const RANK_MEMO_LIMIT: usize = 20;
/// Circuit/cocircuit enumeration scans all subsets; hard cap on the exponent.
const SUBSET_SCAN_LIMIT: usize = 16;
/// Safety valve for the flat-lattice walk.
const FLAT_COUNT_LIMIT: usize = 1 << 22;

const MEMO_UNSET: u8 = u8::MAX;

#[derive(Debug, Clone)]
enum Backend {
    /// Edge list indexed by label; vertices are pre-mapped to `0..vertex_count`.
    Graphic { edges: Vec<(u32, u32)>, vertex_count: usize },
    Bases { bases: Vec<ESet> },
}

/// An immutable matroid. All queries take `&self`; internal memoization is
/// lock-free or sharded, so a `Matroid` can be shared across threads freely.
pub struct Matroid {
    n_plus_1: usize,
    ground: ESet,
    rank_total: usize,
    backend: Backend,
    loops: ESet,
    coloops: ESet,
    rank_memo: Option<Box<[AtomicU8]>>,
    flats: OnceLock<Arc<Vec<ESet>>>,
    coflats: OnceLock<Arc<Vec<ESet>>>,
    circuits: OnceLock<Arc<Vec<ESet>>>,
    cocircuits: OnceLock<Arc<Vec<ESet>>>,
    bases_cache: OnceLock<Arc<Vec<ESet>>>,
    interval_memo: DashMap<(u64, u64, u8, bool), Arc<Vec<ESet>>>,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid")
            .field("n_plus_1", &self.n_plus_1)
            .field("rank", &self.rank_total)
            .field("backend", &self.backend)
            .finish()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let next = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = next;
            x = next;
        }
        x
    }

    /// Merges the classes of `a` and `b`; true when they were distinct.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

impl Matroid {
    /// Builds a graphic matroid from `(label, u, v)` edges. Labels must be
    /// exactly `0..edge_count`; vertex names are arbitrary. Self-loop edges
    /// become loops of the matroid.
    pub fn from_graph(edges: &[(u32, u32, u32)]) -> Result<Matroid> {
        let n_plus_1 = edges.len();
        if n_plus_1 > MAX_GROUND {
            return Err(Error::GroundTooLarge(n_plus_1));
        }
        let mut by_label: Vec<Option<(u32, u32)>> = vec![None; n_plus_1];
        let mut vertices: Vec<u32> = Vec::new();
        for &(label, u, v) in edges {
            let slot = by_label
                .get_mut(label as usize)
                .ok_or(Error::MissingLabel(n_plus_1 as u32))?;
            if slot.is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            *slot = Some((u, v));
            vertices.push(u);
            vertices.push(v);
        }
        if let Some(missing) = by_label.iter().position(Option::is_none) {
            return Err(Error::MissingLabel(missing as u32));
        }
        vertices.sort_unstable();
        vertices.dedup();
        let vertex_id = |v: u32| vertices.binary_search(&v).unwrap() as u32;
        let mapped: Vec<(u32, u32)> = by_label
            .into_iter()
            .map(|e| {
                let (u, v) = e.unwrap();
                (vertex_id(u), vertex_id(v))
            })
            .collect();
        Ok(Matroid::new(
            n_plus_1,
            Backend::Graphic { edges: mapped, vertex_count: vertices.len() },
        ))
    }

    /// Builds a matroid from an explicit list of bases over `n_plus_1`
    /// elements. The list must be nonempty and equicardinal, and a sample of
    /// basis pairs is tested against the exchange axiom.
    pub fn from_bases(n_plus_1: usize, bases: &[ESet]) -> Result<Matroid> {
        if n_plus_1 > MAX_GROUND {
            return Err(Error::GroundTooLarge(n_plus_1));
        }
        if bases.is_empty() {
            return Err(Error::EmptyBases);
        }
        let ground = ESet::full(n_plus_1);
        let mut sorted: Vec<ESet> = bases.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let size = sorted[0].len();
        for &b in &sorted {
            if !b.is_subset(ground) {
                return Err(Error::BasisElementOutOfRange(
                    (b - ground).min().unwrap() as u32,
                    n_plus_1,
                ));
            }
            if b.len() != size {
                return Err(Error::UnequalBasisSize { first: sorted[0], offender: b });
            }
        }
        exchange_spot_check(&sorted)?;
        Ok(Matroid::new(n_plus_1, Backend::Bases { bases: sorted }))
    }

    fn new(n_plus_1: usize, backend: Backend) -> Matroid {
        let ground = ESet::full(n_plus_1);
        let rank_memo = (n_plus_1 <= RANK_MEMO_LIMIT).then(|| {
            let mut v = Vec::with_capacity(1usize << n_plus_1);
            v.resize_with(1usize << n_plus_1, || AtomicU8::new(MEMO_UNSET));
            v.into_boxed_slice()
        });
        let mut m = Matroid {
            n_plus_1,
            ground,
            rank_total: 0,
            backend,
            loops: ESet::EMPTY,
            coloops: ESet::EMPTY,
            rank_memo,
            flats: OnceLock::new(),
            coflats: OnceLock::new(),
            circuits: OnceLock::new(),
            cocircuits: OnceLock::new(),
            bases_cache: OnceLock::new(),
            interval_memo: DashMap::new(),
        };
        m.rank_total = m.rank(ground);
        m.loops = ground.iter().filter(|&e| m.rank(ESet::singleton(e)) == 0).collect();
        m.coloops = ground
            .iter()
            .filter(|&e| m.rank(ground.without(e)) < m.rank_total)
            .collect();
        m
    }

    /// Number of ground elements, `n + 1`.
    pub fn ground_size(&self) -> usize {
        self.n_plus_1
    }

    pub fn ground(&self) -> ESet {
        self.ground
    }

    /// Rank of the whole matroid, `r + 1`.
    pub fn rank_total(&self) -> usize {
        self.rank_total
    }

    /// Rank of the dual, `r⊥ + 1 = n - r`.
    pub fn corank_total(&self) -> usize {
        self.n_plus_1 - self.rank_total
    }

    pub fn loops(&self) -> ESet {
        self.loops
    }

    pub fn coloops(&self) -> ESet {
        self.coloops
    }

    /// The underlying edge list (with vertices renumbered densely) when the
    /// matroid was built from a graph.
    pub fn graph_edges(&self) -> Option<&[(u32, u32)]> {
        match &self.backend {
            Backend::Graphic { edges, .. } => Some(edges),
            Backend::Bases { .. } => None,
        }
    }

    pub fn rank(&self, s: ESet) -> usize {
        if let Some(memo) = &self.rank_memo {
            let slot = &memo[s.bits() as usize];
            let cached = slot.load(AtomicOrdering::Relaxed);
            if cached != MEMO_UNSET {
                return cached as usize;
            }
            let r = self.rank_uncached(s);
            slot.store(r as u8, AtomicOrdering::Relaxed);
            r
        } else {
            self.rank_uncached(s)
        }
    }

    fn rank_uncached(&self, s: ESet) -> usize {
        match &self.backend {
            Backend::Graphic { edges, vertex_count } => {
                let mut uf = UnionFind::new(*vertex_count);
                let mut r = 0;
                for e in s.iter() {
                    let (u, v) = edges[e as usize];
                    if uf.union(u, v) {
                        r += 1;
                    }
                }
                r
            }
            Backend::Bases { bases } => {
                bases.iter().map(|&b| (b & s).len()).max().unwrap_or(0)
            }
        }
    }

    /// Rank in the dual: `|S| + rank(E − S) − rank(E)`.
    pub fn dual_rank(&self, s: ESet) -> usize {
        s.len() + self.rank(s.complement_in(self.ground)) - self.rank_total
    }

    pub fn is_independent(&self, s: ESet) -> bool {
        self.rank(s) == s.len()
    }

    pub fn is_basis(&self, b: ESet) -> bool {
        b.len() == self.rank_total && self.rank(b) == self.rank_total
    }

    pub fn closure(&self, s: ESet) -> ESet {
        let r = self.rank(s);
        let mut c = s;
        for e in s.complement_in(self.ground).iter() {
            if self.rank(s.with(e)) == r {
                c = c.with(e);
            }
        }
        c
    }

    pub fn coclosure(&self, s: ESet) -> ESet {
        let r = self.dual_rank(s);
        let mut c = s;
        for e in s.complement_in(self.ground).iter() {
            if self.dual_rank(s.with(e)) == r {
                c = c.with(e);
            }
        }
        c
    }

    pub fn is_flat(&self, s: ESet) -> bool {
        self.closure(s) == s
    }

    pub fn is_coflat(&self, s: ESet) -> bool {
        self.coclosure(s) == s
    }

    /// The fundamental circuit of `e ∉ B`: `{e}` together with the basis
    /// elements whose exchange against `e` again yields a basis.
    pub fn fundamental_circuit(&self, basis: ESet, e: Element) -> Result<ESet> {
        if !self.is_basis(basis) {
            return Err(Error::NotABasis(basis));
        }
        if basis.contains(e) {
            return Err(Error::ElementInBasis { basis, element: e });
        }
        let mut c = ESet::singleton(e);
        for b in basis.iter() {
            if self.is_basis(basis.without(b).with(e)) {
                c = c.with(b);
            }
        }
        Ok(c)
    }

    /// The fundamental cocircuit of `e ∈ B`: the fundamental circuit of `e`
    /// with respect to the complementary basis of the dual.
    pub fn fundamental_cocircuit(&self, basis: ESet, e: Element) -> Result<ESet> {
        if !self.is_basis(basis) {
            return Err(Error::NotABasis(basis));
        }
        if !basis.contains(e) {
            return Err(Error::ElementNotInBasis { basis, element: e });
        }
        let mut c = ESet::singleton(e);
        for f in basis.complement_in(self.ground).iter() {
            if self.is_basis(basis.without(e).with(f)) {
                c = c.with(f);
            }
        }
        Ok(c)
    }

    /// All flats, sorted. Computed once by walking the flat lattice upward
    /// from the bottom flat.
    pub fn flats(&self) -> &Arc<Vec<ESet>> {
        self.flats
            .get_or_init(|| Arc::new(enumerate_flats(self.ground, |s| self.closure(s))))
    }

    /// All flats of the dual, sorted.
    pub fn coflats(&self) -> &Arc<Vec<ESet>> {
        self.coflats
            .get_or_init(|| Arc::new(enumerate_flats(self.ground, |s| self.coclosure(s))))
    }

    /// All circuits (minimal dependent sets), sorted. Subset scan; only
    /// available on small ground sets.
    pub fn circuits(&self) -> Result<&Arc<Vec<ESet>>> {
        if self.n_plus_1 > SUBSET_SCAN_LIMIT {
            return Err(Error::TooLargeForEnumeration(self.n_plus_1, SUBSET_SCAN_LIMIT));
        }
        Ok(self.circuits.get_or_init(|| {
            Arc::new(minimal_dependent_sets(self.ground, |s| self.rank(s)))
        }))
    }

    /// All cocircuits (circuits of the dual), sorted.
    pub fn cocircuits(&self) -> Result<&Arc<Vec<ESet>>> {
        if self.n_plus_1 > SUBSET_SCAN_LIMIT {
            return Err(Error::TooLargeForEnumeration(self.n_plus_1, SUBSET_SCAN_LIMIT));
        }
        Ok(self.cocircuits.get_or_init(|| {
            Arc::new(minimal_dependent_sets(self.ground, |s| self.dual_rank(s)))
        }))
    }

    /// All bases in ascending dictionary order.
    pub fn bases(&self) -> &Arc<Vec<ESet>> {
        self.bases_cache.get_or_init(|| {
            let mut out = Vec::new();
            let mut current = ESet::EMPTY;
            self.collect_bases(0, &mut current, &mut out);
            Arc::new(out)
        })
    }

    fn collect_bases(&self, start: Element, current: &mut ESet, out: &mut Vec<ESet>) {
        let have = current.len();
        if have == self.rank_total {
            out.push(*current);
            return;
        }
        let needed = self.rank_total - have;
        let last_start = self.n_plus_1 - needed;
        for e in start..=last_start as Element {
            if self.rank(current.with(e)) > have {
                *current = current.with(e);
                self.collect_bases(e + 1, current, out);
                *current = current.without(e);
            }
        }
    }

    /// Flats `F` with `lo ⊆ F ⊆ hi`, sorted; `containing` filters to the
    /// flats holding that element.
    pub fn flats_between(
        &self,
        lo: ESet,
        hi: ESet,
        containing: Option<Element>,
    ) -> Result<Vec<ESet>> {
        Ok(self.interval(lo, hi, containing, false)?.as_ref().clone())
    }

    /// Flats of the dual `G` with `lo ⊆ G ⊆ hi`, sorted; `containing`
    /// filters to the coflats holding that element.
    pub fn coflats_between(
        &self,
        lo: ESet,
        hi: ESet,
        containing: Option<Element>,
    ) -> Result<Vec<ESet>> {
        Ok(self.interval(lo, hi, containing, true)?.as_ref().clone())
    }

    /// Shared interval query; `containing = None` drops the element filter.
    /// Results are memoized per matroid.
    pub(crate) fn interval(
        &self,
        lo: ESet,
        hi: ESet,
        containing: Option<Element>,
        dual: bool,
    ) -> Result<Arc<Vec<ESet>>> {
        let side = if dual { "dual" } else { "matroid" };
        let flat_ok = |s: ESet| if dual { self.is_coflat(s) } else { self.is_flat(s) };
        if !flat_ok(lo) {
            return Err(Error::NotAFlat { set: lo, side });
        }
        if !flat_ok(hi) {
            return Err(Error::NotAFlat { set: hi, side });
        }
        if !lo.is_subset(hi) {
            return Err(Error::IntervalNotNested { lo, hi });
        }
        let key = (lo.bits(), hi.bits(), containing.unwrap_or(u8::MAX), dual);
        if let Some(hit) = self.interval_memo.get(&key) {
            return Ok(hit.clone());
        }
        let list = self.interval_uncached(lo, hi, containing, dual);
        let arc = Arc::new(list);
        self.interval_memo.insert(key, arc.clone());
        Ok(arc)
    }

    fn interval_uncached(
        &self,
        lo: ESet,
        hi: ESet,
        containing: Option<Element>,
        dual: bool,
    ) -> Vec<ESet> {
        let want = |f: ESet| {
            lo.is_subset(f) && f.is_subset(hi) && containing.is_none_or(|e| f.contains(e))
        };
        // With the full flat list cached (or cheap to build), filter it.
        if self.n_plus_1 <= SUBSET_SCAN_LIMIT {
            let all = if dual { self.coflats() } else { self.flats() };
            return all.iter().copied().filter(|&f| want(f)).collect();
        }
        // Otherwise enumerate closures of lo ∪ {containing} ∪ X for X inside
        // the interval; every flat of the interval arises this way.
        let seed = match containing {
            Some(e) => lo.with(e),
            None => lo,
        };
        let mut out: Vec<ESet> = (hi - seed)
            .subsets()
            .map(|x| {
                if dual {
                    self.coclosure(seed | x)
                } else {
                    self.closure(seed | x)
                }
            })
            .filter(|&f| want(f))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// View of the dual matroid backed by this one's rank function.
    pub fn dual(&self) -> DualView<'_> {
        DualView { inner: self }
    }

    /// Errs unless the matroid is loopless and coloopless.
    pub fn require_loopless_coloopless(&self) -> Result<()> {
        if self.loops.is_empty() && self.coloops.is_empty() {
            Ok(())
        } else {
            Err(Error::LoopsOrColoops { loops: self.loops, coloops: self.coloops })
        }
    }
}

/// The dual matroid, viewed through the primal rank oracle.
#[derive(Copy, Clone)]
pub struct DualView<'a> {
    inner: &'a Matroid,
}

impl<'a> DualView<'a> {
    pub fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    pub fn ground(&self) -> ESet {
        self.inner.ground()
    }

    pub fn rank_total(&self) -> usize {
        self.inner.corank_total()
    }

    pub fn rank(&self, s: ESet) -> usize {
        self.inner.dual_rank(s)
    }

    pub fn closure(&self, s: ESet) -> ESet {
        self.inner.coclosure(s)
    }

    pub fn is_flat(&self, s: ESet) -> bool {
        self.inner.is_coflat(s)
    }

    pub fn flats(&self) -> &Arc<Vec<ESet>> {
        self.inner.coflats()
    }

    pub fn circuits(&self) -> Result<&Arc<Vec<ESet>>> {
        self.inner.cocircuits()
    }

    pub fn flats_between(
        &self,
        lo: ESet,
        hi: ESet,
        containing: Option<Element>,
    ) -> Result<Vec<ESet>> {
        self.inner.coflats_between(lo, hi, containing)
    }

    pub fn loops(&self) -> ESet {
        self.inner.coloops()
    }
}

fn exchange_spot_check(bases: &[ESet]) -> Result<()> {
    const PAIR_BUDGET: usize = 64;
    let mut checked = 0usize;
    'outer: for (i, &left) in bases.iter().enumerate() {
        for &right in &bases[i + 1..] {
            if checked >= PAIR_BUDGET {
                break 'outer;
            }
            checked += 1;
            for e in (left - right).iter() {
                let found = (right - left)
                    .iter()
                    .any(|f| bases.binary_search(&left.without(e).with(f)).is_ok());
                if !found {
                    return Err(Error::ExchangeFailed { left, right, element: e });
                }
            }
        }
    }
    Ok(())
}

/// Walks the lattice of closed sets upward from the closure of ∅.
fn enumerate_flats(ground: ESet, closure: impl Fn(ESet) -> ESet) -> Vec<ESet> {
    let bottom = closure(ESet::EMPTY);
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![bottom];
    seen.insert(bottom.bits());
    let mut head = 0;
    while head < queue.len() {
        let f = queue[head];
        head += 1;
        assert!(queue.len() <= FLAT_COUNT_LIMIT, "flat lattice too large");
        for e in (ground - f).iter() {
            let up = closure(f.with(e));
            if seen.insert(up.bits()) {
                queue.push(up);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Minimal sets on which the given rank function drops below cardinality.
fn minimal_dependent_sets(ground: ESet, rank: impl Fn(ESet) -> usize) -> Vec<ESet> {
    let mut out: Vec<ESet> = ground
        .subsets()
        .filter(|&s| {
            !s.is_empty()
                && rank(s) < s.len()
                && s.iter().all(|e| {
                    let t = s.without(e);
                    rank(t) == t.len()
                })
        })
        .collect();
    out.sort_unstable();
    out
}
