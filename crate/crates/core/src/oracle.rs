//! Independent brute-force cross-checks for the main pipelines.
//!
//! Each oracle recomputes a quantity by a route that avoids the machinery it
//! checks: activities from explicit cycle and bond enumerations of a graph,
//! step outputs by filtering every flat/coflat pair against the defining
//! conditions, h-numbers along three separate paths. Disagreements are
//! collected into a [`CrossCheckReport`] whose failing entries always carry
//! a rendered reproducer. Instance sizes are guarded so no oracle scans more
//! than `2^16` subsets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::activity::{activities, fh_vectors, tutte, ActivityRecord};
use crate::biflag::Biflat;
use crate::error::{Error, Result};
use crate::eset::{ESet, Element};
use crate::expansion::{delta_step, gamma_from_level, gamma_step, DeltaWalk, ExpansionTable, Strategy};
use crate::matroid::Matroid;

/// A single named check with its verdict.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Rendered reproducer; present exactly when the check failed.
    pub counterexample: Option<String>,
}

/// Outcomes of one oracle run on one instance.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub instance: String,
    pub checks: Vec<CheckOutcome>,
}

impl CrossCheckReport {
    pub fn new(instance: &str) -> CrossCheckReport {
        CrossCheckReport { instance: instance.to_string(), checks: Vec::new() }
    }

    /// Records a check, rendering the counterexample only on failure.
    pub fn check(&mut self, name: &str, passed: bool, counterexample: impl FnOnce() -> String) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            counterexample: if passed { None } else { Some(counterexample()) },
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check, for test logs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "ok" } else { "FAIL" };
            out.push_str(&format!("{}: {}: {}", self.instance, c.name, verdict));
            if let Some(cx) = &c.counterexample {
                out.push_str(&format!(" [{cx}]"));
            }
            out.push('\n');
        }
        out
    }
}

/// Computes `h_{r−k}` three ways for every `k`: Tutte coefficients
/// `t_{k+1,0}`, the f→h transform of the broken-circuit complex, and the
/// total multiplicity of `γ^k δ^{n−k−1}`, and records their agreement. One
/// `δ` walk is shared across all activities.
pub fn hvector_triple_check(m: &Matroid, instance: &str) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport::new(instance);
    let r = m.rank_total() - 1;
    let vectors = fh_vectors(m)?;
    let t = tutte(m);
    let mut walk = DeltaWalk::new(m)?;
    let max_power = walk.max_power();
    loop {
        let k = max_power - walk.power();
        if k <= r {
            let by_tutte = t.coefficient(k + 1, 0) as i64;
            let by_complex = vectors.bc.h[r - k];
            let by_degree =
                gamma_from_level(m, k, walk.level(), &Strategy::TheoremPath)?.survivors.total() as i64;
            report.check(
                &format!("h_{}(BC) three ways, k={k}", r - k),
                by_tutte == by_complex && by_degree == by_complex,
                || format!("tutte {by_tutte}, complex {by_complex}, degree {by_degree}"),
            );
        }
        if walk.power() == max_power {
            break;
        }
        walk.advance()?;
    }
    Ok(report)
}

const STEP_ORACLE_CAP: usize = 8;

/// Replays the expansion on a small matroid, recomputing every `δ` and `γ`
/// step by filtering all flat/coflat pairs directly against the step
/// conditions (membership of the pivot, compatibility with the whole chain,
/// union covering `E`, and the covering bound) and comparing child tables
/// with the engine's interval-based enumeration. Every reachable table up to
/// `power_limit` is visited; `γ` is tried with every legal pivot.
pub fn step_lemma_bruteforce(
    m: &Matroid,
    power_limit: usize,
    instance: &str,
) -> Result<CrossCheckReport> {
    if m.ground_size() > STEP_ORACLE_CAP {
        return Err(Error::TooLargeForEnumeration(m.ground_size(), STEP_ORACLE_CAP));
    }
    m.require_loopless_coloopless()?;
    let ground = m.ground();
    let flats = flats_by_rank(m, false);
    let coflats = flats_by_rank(m, true);
    let mut report = CrossCheckReport::new(instance);
    let limit = power_limit.min(m.ground_size() - 2);
    let mut tables_seen = 0u64;
    let mut delta_bad: Option<String> = None;
    let mut gamma_bad: Option<String> = None;
    let mut reject_bad: Option<String> = None;
    let mut level = vec![ExpansionTable::root()];
    for power in 0..=limit {
        let mut next = Vec::new();
        for table in &level {
            tables_seen += 1;
            let (_, f_l) = table.last_proper_flat(ground);
            for c in ground.iter() {
                if f_l.contains(c) {
                    if gamma_step(m, table, c).is_ok() && reject_bad.is_none() {
                        reject_bad =
                            Some(format!("γ_{c} accepted inside the top flat of {}", render(table, ground)));
                    }
                    continue;
                }
                let engine = sorted(gamma_step(m, table, c)?);
                let brute = sorted(brute_gamma(&flats, &coflats, table, c, ground));
                if engine != brute && gamma_bad.is_none() {
                    gamma_bad = Some(format!(
                        "γ_{c} on {}: engine {} children, direct {}",
                        render(table, ground),
                        engine.len(),
                        brute.len()
                    ));
                }
            }
            if power == limit {
                continue;
            }
            let engine = sorted(delta_step(m, table)?);
            let brute = sorted(brute_delta(&flats, &coflats, table, ground));
            if engine != brute && delta_bad.is_none() {
                delta_bad = Some(format!(
                    "δ on {}: engine {} children, direct {}",
                    render(table, ground),
                    engine.len(),
                    brute.len()
                ));
            }
            next.extend(engine);
        }
        level = next;
    }
    report.check(
        &format!("δ steps match direct filtering on {tables_seen} tables"),
        delta_bad.is_none(),
        || delta_bad.clone().unwrap(),
    );
    report.check("γ steps match direct filtering", gamma_bad.is_none(), || {
        gamma_bad.clone().unwrap()
    });
    report.check("γ rejects pivots inside the top flat", reject_bad.is_none(), || {
        reject_bad.clone().unwrap()
    });
    Ok(report)
}

/// All flats (or coflats) found by the rank oracle alone: `S` is a flat iff
/// every outside element raises the rank.
fn flats_by_rank(m: &Matroid, dual: bool) -> Vec<ESet> {
    let ground = m.ground();
    let rank = |s: ESet| if dual { m.dual_rank(s) } else { m.rank(s) };
    ground
        .subsets()
        .filter(|&s| (ground - s).iter().all(|e| rank(s.with(e)) > rank(s)))
        .collect()
}

fn comparable(a: Biflat, b: Biflat) -> bool {
    (a.f.is_subset(b.f) && b.g.is_subset(a.g)) || (b.f.is_subset(a.f) && a.g.is_subset(b.g))
}

/// Inserts a member at its canonical position, computed by order comparison
/// rather than slot arithmetic.
fn brute_child(table: &ExpansionTable, member: Biflat, arrival: Element) -> ExpansionTable {
    let pos = table.biflag.iter().take_while(|&&b| b < member).count();
    let mut arrivals = table.arrivals.clone();
    arrivals.insert(pos, arrival);
    ExpansionTable {
        biflag: table.biflag.inserted_at(pos, member),
        arrivals,
        covered: table.covered | (member.f & member.g),
    }
}

fn brute_delta(
    flats: &[ESet],
    coflats: &[ESet],
    table: &ExpansionTable,
    ground: ESet,
) -> Vec<ExpansionTable> {
    let Some(e) = table.pivot(ground) else { return Vec::new() };
    let mut out = Vec::new();
    for &f in flats {
        if !f.contains(e) {
            continue;
        }
        for &g in coflats {
            if !g.contains(e)
                || (f | g) != ground
                || (f == ground && g == ground)
                || (table.covered | (f & g)) == ground
            {
                continue;
            }
            let member = Biflat::new(f, g);
            if table.biflag.iter().all(|&b| comparable(b, member)) {
                out.push(brute_child(table, member, e));
            }
        }
    }
    out
}

fn brute_gamma(
    flats: &[ESet],
    coflats: &[ESet],
    table: &ExpansionTable,
    c: Element,
    ground: ESet,
) -> Vec<ExpansionTable> {
    let mut out = Vec::new();
    for &f in flats {
        if f == ground || !f.contains(c) {
            continue;
        }
        for &g in coflats {
            if (f | g) != ground || (table.covered | (f & g)) == ground {
                continue;
            }
            let member = Biflat::new(f, g);
            if table.biflag.iter().all(|&b| comparable(b, member)) {
                out.push(brute_child(table, member, c));
            }
        }
    }
    out
}

fn sorted(mut tables: Vec<ExpansionTable>) -> Vec<ExpansionTable> {
    tables.sort_unstable_by(|a, b| a.biflag.cmp(&b.biflag).then_with(|| a.arrivals.cmp(&b.arrivals)));
    tables
}

fn render(table: &ExpansionTable, ground: ESet) -> String {
    table.biflag.label(ground)
}

/// True iff the sequence is log-concave at every internal position:
/// `s_i² ≥ s_{i−1} s_{i+1}`. Entries must be nonnegative.
pub fn logconcavity_check(seq: &[i64]) -> bool {
    seq.windows(3)
        .all(|w| (w[1] as i128) * (w[1] as i128) >= (w[0] as i128) * (w[2] as i128))
}

/// Recomputes the activity record of a spanning tree from explicit cycle and
/// bond enumerations of the underlying graph: `e ∈ B` is internally active
/// when it is the least element of the bond meeting `B` exactly in `e`, and
/// `e ∉ B` is externally active when it is the least element of a cycle
/// inside `B ∪ e`.
pub fn activity_bruteforce(m: &Matroid, basis: ESet) -> Result<ActivityRecord> {
    let edges = m
        .graph_edges()
        .ok_or_else(|| Error::PipelineInvariant("activity oracle needs a graphic backend".into()))?;
    if !m.is_basis(basis) {
        return Err(Error::NotABasis(basis));
    }
    let cycles = graph_cycles(edges);
    let bonds = graph_bonds(edges);
    let ground = m.ground();
    let mut ia = ESet::EMPTY;
    for e in basis.iter() {
        if bonds.iter().any(|&c| (c & basis) == ESet::singleton(e) && c.min() == Some(e)) {
            ia = ia.with(e);
        }
    }
    let mut ea = ESet::EMPTY;
    for e in (ground - basis).iter() {
        let reach = basis.with(e);
        if cycles.iter().any(|&c| c.contains(e) && c.is_subset(reach) && c.min() == Some(e)) {
            ea = ea.with(e);
        }
    }
    Ok(ActivityRecord {
        basis,
        internally_active: ia,
        externally_active: ea,
        internally_passive: basis - ia,
        externally_passive: (ground - basis) - ea,
    })
}

/// Compares [`activity_bruteforce`] with the fast route over all bases, or
/// over a seeded sample of them, and checks the basis count against the
/// Tutte mass.
pub fn activity_crosscheck(
    m: &Matroid,
    instance: &str,
    sample: Option<(u64, usize)>,
) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport::new(instance);
    let bases = m.bases().clone();
    let t = tutte(m);
    report.check("basis count equals the Tutte mass", t.basis_count() == bases.len() as u64, || {
        format!("{} bases, Tutte mass {}", bases.len(), t.basis_count())
    });
    let picks: Vec<ESet> = match sample {
        None => bases.to_vec(),
        Some((seed, count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            bases.choose_multiple(&mut rng, count).copied().collect()
        }
    };
    let mut bad: Option<String> = None;
    for &b in &picks {
        let fast = activities(m, b)?;
        let brute = activity_bruteforce(m, b)?;
        if fast != brute {
            bad = Some(format!(
                "basis {:?}: fast IA {:?} EA {:?}, cycle/bond IA {:?} EA {:?}",
                b, fast.internally_active, fast.externally_active, brute.internally_active,
                brute.externally_active
            ));
            break;
        }
    }
    report.check(
        &format!("activities agree with cycle/bond enumeration on {} bases", picks.len()),
        bad.is_none(),
        || bad.clone().unwrap(),
    );
    Ok(report)
}

/// All simple cycles of the graph: nonempty connected edge sets in which
/// every touched vertex has degree two.
fn graph_cycles(edges: &[(u32, u32)]) -> Vec<ESet> {
    let ground = ESet::full(edges.len());
    ground
        .subsets()
        .filter(|&s| !s.is_empty() && is_simple_cycle(edges, s))
        .collect()
}

fn is_simple_cycle(edges: &[(u32, u32)], subset: ESet) -> bool {
    let mut degree = [0u8; 64];
    for e in subset.iter() {
        let (u, v) = edges[e as usize];
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let touched: Vec<u32> = (0..64u32).filter(|&v| degree[v as usize] > 0).collect();
    if touched.iter().any(|&v| degree[v as usize] != 2) {
        return false;
    }
    let mut uf = UnionFind::new(64);
    for e in subset.iter() {
        let (u, v) = edges[e as usize];
        uf.union(u as usize, v as usize);
    }
    let root = uf.find(touched[0] as usize);
    touched.iter().all(|&v| uf.find(v as usize) == root)
}

/// All bonds of the graph: cuts between a vertex bipartition whose two sides
/// each induce a connected subgraph.
fn graph_bonds(edges: &[(u32, u32)]) -> Vec<ESet> {
    let vertex_count = edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
    let full = (1u64 << vertex_count) - 1;
    let mut bonds = Vec::new();
    for low in 0..(1u64 << (vertex_count - 1)) {
        let side = (low << 1) | 1;
        if side == full {
            continue;
        }
        let mut cut = ESet::EMPTY;
        for (label, &(u, v)) in edges.iter().enumerate() {
            if (side >> u & 1) != (side >> v & 1) {
                cut = cut.with(label as Element);
            }
        }
        if !cut.is_empty()
            && induced_connected(edges, vertex_count, side)
            && induced_connected(edges, vertex_count, full & !side)
        {
            bonds.push(cut);
        }
    }
    bonds
}

fn induced_connected(edges: &[(u32, u32)], vertex_count: usize, side: u64) -> bool {
    let mut uf = UnionFind::new(vertex_count);
    for &(u, v) in edges {
        if (side >> u & 1) == 1 && (side >> v & 1) == 1 {
            uf.union(u as usize, v as usize);
        }
    }
    let members: Vec<usize> = (0..vertex_count).filter(|&v| side >> v & 1 == 1).collect();
    match members.split_first() {
        None => true,
        Some((&first, rest)) => {
            let root = uf.find(first);
            rest.iter().all(|&v| uf.find(v) == root)
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> UnionFind {
        UnionFind { parent: (0..size).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.parent[a] = b;
    }
}

/// A random connected, loopless, bridgeless multigraph with `edge_count`
/// edges, deterministic in the seed. Useful as a fuzzing source: the
/// resulting graphic matroid always admits the conormal pipeline.
pub fn random_graphic_matroid(seed: u64, edge_count: usize) -> Matroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vertex_count = rng.gen_range(3..=edge_count.min(6) as u32);
        let mut edges: Vec<(u32, u32, u32)> = Vec::with_capacity(edge_count);
        for label in 0..edge_count as u32 {
            let u = rng.gen_range(0..vertex_count);
            let v = loop {
                let v = rng.gen_range(0..vertex_count);
                if v != u {
                    break v;
                }
            };
            edges.push((label, u, v));
        }
        let plain: Vec<(u32, u32)> = edges.iter().map(|&(_, u, v)| (u, v)).collect();
        if !induced_connected(&plain, vertex_count as usize, (1u64 << vertex_count) - 1) {
            continue;
        }
        let bridge = (0..edge_count).any(|skip| {
            let rest: Vec<(u32, u32)> =
                plain.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
            !induced_connected(&rest, vertex_count as usize, (1u64 << vertex_count) - 1)
        });
        if bridge {
            continue;
        }
        return Matroid::from_graph(&edges).expect("labels are contiguous by construction");
    }
}
