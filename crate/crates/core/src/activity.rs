//! Basis activities, the Tutte polynomial, and broken-circuit complexes.
//!
//! All notions are taken with respect to the ground-set order: an element
//! `e ∉ B` is externally active when it is the least element of the
//! fundamental circuit of `(B, e)`, and `e ∈ B` is internally active when it
//! is the least element of the fundamental cocircuit. The no-broken-circuit
//! (NBC) bases are those with empty external activity.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eset::{ESet, Element};
use crate::matroid::Matroid;

/// A basis together with its active elements on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActivityRecord {
    pub basis: ESet,
    pub internally_active: ESet,
    pub externally_active: ESet,
    pub internally_passive: ESet,
    pub externally_passive: ESet,
}

impl ActivityRecord {
    pub fn internal_activity(&self) -> usize {
        self.internally_active.len()
    }

    pub fn external_activity(&self) -> usize {
        self.externally_active.len()
    }

    pub fn is_nbc(&self) -> bool {
        self.externally_active.is_empty()
    }
}

/// Computes the activity record of a basis.
pub fn activities(m: &Matroid, basis: ESet) -> Result<ActivityRecord> {
    if !m.is_basis(basis) {
        return Err(Error::NotABasis(basis));
    }
    let mut ia = ESet::EMPTY;
    for e in basis.iter() {
        if m.fundamental_cocircuit(basis, e)?.min() == Some(e) {
            ia = ia.with(e);
        }
    }
    let complement = basis.complement_in(m.ground());
    let mut ea = ESet::EMPTY;
    for e in complement.iter() {
        if m.fundamental_circuit(basis, e)?.min() == Some(e) {
            ea = ea.with(e);
        }
    }
    Ok(ActivityRecord {
        basis,
        internally_active: ia,
        externally_active: ea,
        internally_passive: basis - ia,
        externally_passive: complement - ea,
    })
}

/// Activity records for every basis, in ascending basis order.
pub fn all_bases(m: &Matroid) -> Vec<ActivityRecord> {
    m.bases()
        .iter()
        .map(|&b| activities(m, b).expect("enumerated set is a basis"))
        .collect()
}

/// The NBC bases (empty external activity), in ascending basis order.
pub fn nbc_bases(m: &Matroid) -> Vec<ActivityRecord> {
    all_bases(m).into_iter().filter(ActivityRecord::is_nbc).collect()
}

/// The Tutte polynomial as a coefficient table: `t[(i, j)]` counts bases with
/// internal activity `i` and external activity `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePolynomial {
    pub coefficients: BTreeMap<(usize, usize), u64>,
}

impl TuttePolynomial {
    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.coefficients.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total mass of the coefficient table, i.e. the number of bases.
    pub fn basis_count(&self) -> u64 {
        self.coefficients.values().sum()
    }
}

pub fn tutte(m: &Matroid) -> TuttePolynomial {
    let mut coefficients = BTreeMap::new();
    for rec in all_bases(m) {
        *coefficients
            .entry((rec.internal_activity(), rec.external_activity()))
            .or_insert(0) += 1;
    }
    TuttePolynomial { coefficients }
}

/// The inclusion-minimal broken circuits (each circuit minus its least
/// element, pruned to the minimal ones), sorted.
pub fn broken_circuits(m: &Matroid) -> Result<Vec<ESet>> {
    let mut all: Vec<ESet> = m
        .circuits()?
        .iter()
        .map(|&c| c.without(c.min().expect("circuits are nonempty")))
        .collect();
    all.sort_unstable_by_key(|b| b.len());
    let mut minimal: Vec<ESet> = Vec::new();
    for b in all {
        if !minimal.iter().any(|&kept| kept.is_subset(b)) {
            minimal.push(b);
        }
    }
    minimal.sort_unstable();
    Ok(minimal)
}

/// Iterator over the faces of the broken-circuit complex: the subsets of the
/// ground set avoiding every broken circuit. Each call builds a fresh walk.
pub fn bc_faces(m: &Matroid) -> Result<BcFaces> {
    let n = m.ground_size();
    let broken = broken_circuits(m)?;
    // Group the broken circuits by largest element: a face built in ascending
    // element order can only complete a broken circuit at its own maximum.
    let mut by_max: Vec<Vec<ESet>> = vec![Vec::new(); n];
    for b in broken {
        by_max[b.max().expect("broken circuits here are nonempty") as usize].push(b);
    }
    Ok(BcFaces {
        n,
        by_max,
        stack: vec![(ESet::EMPTY, 0)],
    })
}

pub struct BcFaces {
    n: usize,
    by_max: Vec<Vec<ESet>>,
    /// Depth-first frontier of `(face, next element to consider)`.
    stack: Vec<(ESet, Element)>,
}

impl Iterator for BcFaces {
    type Item = ESet;

    fn next(&mut self) -> Option<ESet> {
        let (face, start) = self.stack.pop()?;
        for e in (start..self.n as Element).rev() {
            let grown = face.with(e);
            if self.by_max[e as usize].iter().all(|b| !b.is_subset(grown)) {
                self.stack.push((grown, e + 1));
            }
        }
        Some(face)
    }
}

/// Face counts and their binomial transform for a simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhVector {
    /// `f[i]` counts faces of cardinality `i`; the length is `dim + 2`.
    pub f: Vec<i64>,
    /// `h[k] = Σᵢ (−1)^{k−i} C(D−i, k−i) f[i]` with `D = dim + 1`.
    pub h: Vec<i64>,
}

impl FhVector {
    fn from_f(f: Vec<i64>) -> FhVector {
        let d = f.len() as i64 - 1;
        let h = (0..f.len())
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i as i64, (k - i) as i64) * f[i]
                    })
                    .sum()
            })
            .collect();
        FhVector { f, h }
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut out = 1i64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// f- and h-vectors of the broken-circuit complex `BC` and of the reduced
/// complex `RBC` on `E − 0` (the faces avoiding element 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrokenCircuitVectors {
    pub bc: FhVector,
    pub rbc: FhVector,
}

impl BrokenCircuitVectors {
    /// `β = h_r(BC)`, the next-to-last entry of the h-vector of `BC`.
    pub fn beta(&self) -> i64 {
        self.bc.h[self.bc.h.len() - 2]
    }
}

pub fn fh_vectors(m: &Matroid) -> Result<BrokenCircuitVectors> {
    let r_plus_1 = m.rank_total();
    let mut f_bc = vec![0i64; r_plus_1 + 1];
    let mut f_rbc = vec![0i64; r_plus_1];
    for face in bc_faces(m)? {
        f_bc[face.len()] += 1;
        if !face.contains(0) {
            f_rbc[face.len()] += 1;
        }
    }
    Ok(BrokenCircuitVectors {
        bc: FhVector::from_f(f_bc),
        rbc: FhVector::from_f(f_rbc),
    })
}

/// The lexicographically least completion of an independent set to a basis:
/// scan the ground set in ascending order and take every element that grows
/// the rank. Returns `P = B − S`.
pub fn greedy_completion(m: &Matroid, s: ESet) -> Result<ESet> {
    if !m.is_independent(s) {
        return Err(Error::DependentSet(s));
    }
    let mut basis = s;
    let mut rank = s.len();
    for e in s.complement_in(m.ground()).iter() {
        if rank == m.rank_total() {
            break;
        }
        if m.rank(basis.with(e)) > rank {
            basis = basis.with(e);
            rank += 1;
        }
    }
    Ok(basis - s)
}

/// Completion by cocircuit minima: the least elements of the cocircuits
/// disjoint from `S`. Equals [`greedy_completion`] for independent `S`.
pub fn completion_by_cocircuits(m: &Matroid, s: ESet) -> Result<ESet> {
    Ok(m.cocircuits()?
        .iter()
        .filter(|&&c| (c & s).is_empty())
        .map(|&c| c.min().expect("cocircuits are nonempty"))
        .collect())
}

/// Completion by cocircuit minima, filtering against the closure of `S`
/// instead of `S` itself. Equals [`greedy_completion`] for independent `S`.
pub fn completion_avoiding_closure(m: &Matroid, s: ESet) -> Result<ESet> {
    let cl = m.closure(s);
    Ok(m.cocircuits()?
        .iter()
        .filter(|&&c| (c & cl).is_empty())
        .map(|&c| c.min().expect("cocircuits are nonempty"))
        .collect())
}

/// Internal and external activity of an arbitrary subset `S`:
/// `e ∈ S` is internally active when some cocircuit inside `(E−S) ∪ e` has
/// least element `e`, and `e ∉ S` is externally active when some circuit
/// inside `S ∪ e` has least element `e`. Both reduce to closure tests.
pub fn set_activities(m: &Matroid, s: ESet) -> (ESet, ESet) {
    let complement = s.complement_in(m.ground());
    let ia = s
        .iter()
        .filter(|&e| m.coclosure(complement.above(e)).contains(e))
        .collect();
    let ea = complement
        .iter()
        .filter(|&e| m.closure(s.above(e)).contains(e))
        .collect();
    (ia, ea)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::{cube, pyramid, triangle, u24};

    fn set(els: &[Element]) -> ESet {
        els.iter().copied().collect()
    }

    #[test]
    fn pyramid_activity_examples() {
        let m = pyramid();
        let rec = activities(&m, set(&[0, 4, 5, 6])).unwrap();
        assert_eq!(rec.internally_active, set(&[0]));
        assert_eq!(rec.externally_active, ESet::EMPTY);
        assert_eq!(rec.internally_passive, set(&[4, 5, 6]));
        assert!(rec.is_nbc());

        let spokes = activities(&m, set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(spokes.internally_active, set(&[0, 1, 2, 3]));
        assert_eq!(spokes.externally_active, ESet::EMPTY);

        assert!(matches!(activities(&m, set(&[0, 3, 4, 5])), Err(Error::NotABasis(_))));
    }

    #[test]
    fn cube_activity_example() {
        let m = cube();
        let rec = activities(&m, set(&[0, 1, 5, 6, 7, 8, 11])).unwrap();
        assert_eq!(rec.internally_active, set(&[0, 1, 6]));
        assert!(rec.is_nbc());
    }

    #[test]
    fn nbc_counts() {
        assert_eq!(nbc_bases(&pyramid()).len(), 14);
        assert_eq!(nbc_bases(&cube()).len(), 133);
        let beta_bases: Vec<ESet> = nbc_bases(&pyramid())
            .into_iter()
            .filter(|r| r.internal_activity() == 1)
            .map(|r| r.basis)
            .collect();
        assert_eq!(beta_bases, vec![set(&[0, 4, 5, 6]), set(&[0, 4, 5, 7]), set(&[0, 4, 6, 7])]);
    }

    #[test]
    fn nbc_bases_contain_zero() {
        for m in [pyramid(), cube(), triangle(), u24()] {
            for rec in nbc_bases(&m) {
                assert!(rec.basis.contains(0));
                assert!(rec.internally_active.contains(0));
            }
        }
    }

    #[test]
    fn internal_external_duality() {
        for m in [pyramid(), triangle(), u24()] {
            let bases: Vec<ESet> = m.bases().as_ref().clone();
            let dual = Matroid::from_bases(
                m.ground_size(),
                &bases
                    .iter()
                    .map(|&b| b.complement_in(m.ground()))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            for &b in &bases {
                let rec = activities(&m, b).unwrap();
                let drec = activities(&dual, b.complement_in(m.ground())).unwrap();
                assert_eq!(rec.internally_active, drec.externally_active);
                assert_eq!(rec.externally_active, drec.internally_active);
            }
        }
    }

    #[test]
    fn tutte_pyramid() {
        let t = tutte(&pyramid());
        assert_eq!(t.basis_count(), 45);
        // Activity generating table of the wheel over four spokes.
        assert_eq!(t.coefficient(1, 0), 3);
        assert_eq!(t.coefficient(2, 0), 6);
        assert_eq!(t.coefficient(3, 0), 4);
        assert_eq!(t.coefficient(4, 0), 1);
        assert_eq!(t.coefficient(0, 1), 3);
        assert_eq!(t.coefficient(0, 2), 6);
        assert_eq!(t.coefficient(0, 3), 4);
        assert_eq!(t.coefficient(0, 4), 1);
    }

    #[test]
    fn tutte_u24() {
        let t = tutte(&u24());
        assert_eq!(t.basis_count(), 6);
        assert_eq!(t.coefficient(2, 0), 1);
        assert_eq!(t.coefficient(1, 0), 2);
        assert_eq!(t.coefficient(0, 1), 2);
        assert_eq!(t.coefficient(0, 2), 1);
        assert_eq!(t.coefficient(1, 1), 0);
    }

    #[test]
    fn triangle_broken_circuits() {
        let m = triangle();
        assert_eq!(broken_circuits(&m).unwrap(), vec![set(&[1, 2])]);
        let mut faces: Vec<ESet> = bc_faces(&m).unwrap().collect();
        faces.sort_unstable();
        let mut expected = vec![
            ESet::EMPTY,
            set(&[0]),
            set(&[1]),
            set(&[2]),
            set(&[0, 1]),
            set(&[0, 2]),
        ];
        expected.sort_unstable();
        assert_eq!(faces, expected);
    }

    #[test]
    fn bc_facets_are_nbc_bases() {
        for m in [pyramid(), cube(), triangle(), u24()] {
            let r = m.rank_total();
            let mut facets: Vec<ESet> = bc_faces(&m)
                .unwrap()
                .filter(|f| f.len() == r)
                .collect();
            facets.sort_unstable();
            let nbc: Vec<ESet> = nbc_bases(&m).into_iter().map(|r| r.basis).collect();
            assert_eq!(facets, nbc);
            assert!(facets.iter().all(|f| f.contains(0)));
        }
    }

    #[test]
    fn fh_pyramid() {
        let v = fh_vectors(&pyramid()).unwrap();
        assert_eq!(v.bc.f, vec![1, 8, 24, 31, 14]);
        assert_eq!(v.bc.h, vec![1, 4, 6, 3, 0]);
        assert_eq!(v.rbc.f, vec![1, 7, 17, 14]);
        assert_eq!(v.rbc.h, vec![1, 4, 6, 3]);
        assert_eq!(v.beta(), 3);
    }

    #[test]
    fn fh_cube() {
        let v = fh_vectors(&cube()).unwrap();
        assert_eq!(v.rbc.f, vec![1, 11, 55, 159, 282, 290, 133]);
        assert_eq!(v.rbc.h, vec![1, 5, 15, 29, 40, 32, 11]);
        assert_eq!(v.beta(), 11);
    }

    #[test]
    fn bc_is_cone_over_rbc() {
        for m in [pyramid(), cube(), triangle(), u24()] {
            let v = fh_vectors(&m).unwrap();
            let r_plus_1 = m.rank_total();
            for i in 0..=r_plus_1 {
                let prev = if i == 0 { 0 } else { v.rbc.f.get(i - 1).copied().unwrap_or(0) };
                let same = v.rbc.f.get(i).copied().unwrap_or(0);
                assert_eq!(v.bc.f[i], same + prev);
            }
            // Coning preserves the h-vector apart from the trailing zero.
            assert_eq!(&v.bc.h[..r_plus_1], &v.rbc.h[..]);
            assert_eq!(v.bc.h[r_plus_1], 0);
        }
    }

    #[test]
    fn h_matches_tutte_column() {
        for m in [pyramid(), cube(), triangle(), u24()] {
            let v = fh_vectors(&m).unwrap();
            let t = tutte(&m);
            let r = m.rank_total() - 1;
            for k in 0..=r {
                assert_eq!(v.rbc.h[r - k], t.coefficient(k + 1, 0) as i64);
            }
        }
    }

    #[test]
    fn greedy_completion_examples() {
        let m = pyramid();
        assert_eq!(greedy_completion(&m, set(&[1, 5])).unwrap(), set(&[2, 3]));
        assert_eq!(greedy_completion(&m, set(&[0, 4, 5, 6])).unwrap(), ESet::EMPTY);
        assert!(matches!(
            greedy_completion(&m, set(&[0, 3, 4])),
            Err(Error::DependentSet(_))
        ));
        let c = cube();
        assert_eq!(greedy_completion(&c, set(&[5, 7, 8, 11])).unwrap(), set(&[0, 1, 6]));
    }

    #[test]
    fn completion_definitions_agree() {
        for m in [pyramid(), cube(), triangle(), u24()] {
            for s in m.ground().subsets().filter(|&s| m.is_independent(s)) {
                let greedy = greedy_completion(&m, s).unwrap();
                assert_eq!(greedy, completion_by_cocircuits(&m, s).unwrap());
                assert_eq!(greedy, completion_avoiding_closure(&m, s).unwrap());
            }
        }
    }

    #[test]
    fn completion_decomposes_basis() {
        // B = S ⊔ P(S) is the least basis containing S; its activities
        // restrict to the set activities of S.
        let m = pyramid();
        for s in m.ground().subsets().filter(|&s| m.is_independent(s)) {
            let p = greedy_completion(&m, s).unwrap();
            let b = s | p;
            let least = m
                .bases()
                .iter()
                .copied()
                .filter(|&c| s.is_subset(c))
                .min()
                .unwrap();
            assert_eq!(b, least);
            let rec = activities(&m, b).unwrap();
            let (ia_s, ea_s) = set_activities(&m, s);
            assert_eq!(rec.internally_active, ia_s | p);
            assert_eq!(rec.externally_active, ea_s);
        }
    }

    #[test]
    fn set_activity_examples() {
        let m = pyramid();
        let (ia, ea) = set_activities(&m, set(&[1, 5]));
        assert_eq!(ia, ESet::EMPTY);
        assert_eq!(ea, set(&[0]));
        let (ia, ea) = set_activities(&m, ESet::EMPTY);
        assert_eq!(ia, ESet::EMPTY);
        assert_eq!(ea, ESet::EMPTY);
        // On a basis the set activities agree with the basis activities.
        for rec in all_bases(&m) {
            let (ia, ea) = set_activities(&m, rec.basis);
            assert_eq!(ia, rec.internally_active);
            assert_eq!(ea, rec.externally_active);
        }
    }
}
