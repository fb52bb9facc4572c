//! Serializable reports for expansion runs.
//!
//! The JSON layout is part of the public interface: every field is always
//! present, the monomial list is sorted in canonical chain order, and a
//! report survives a serialize/deserialize/serialize round trip byte for
//! byte. Elements appear as plain integers; pretty labels are a rendering
//! concern and stay out of the data.

use serde::{Deserialize, Serialize};

use crate::activity::fh_vectors;
use crate::biflag::{Biflag, Biflat};
use crate::error::Result;
use crate::eset::ESet;
use crate::expansion::{Census, DeltaExpansion, GammaDeltaExpansion, MonomialSum};
use crate::matroid::Matroid;

/// Identity of the input matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidInfo {
    pub source: String,
    pub n_plus_1: usize,
    pub rank: usize,
}

impl MatroidInfo {
    pub fn new(m: &Matroid, source: &str) -> MatroidInfo {
        MatroidInfo {
            source: source.to_string(),
            n_plus_1: m.ground_size(),
            rank: m.rank_total(),
        }
    }
}

/// One biflat with both sides listed as ascending elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiflatEntry {
    #[serde(rename = "F")]
    pub f: Vec<u8>,
    #[serde(rename = "G")]
    pub g: Vec<u8>,
}

impl BiflatEntry {
    pub fn from_biflat(bf: Biflat) -> BiflatEntry {
        BiflatEntry { f: bf.f.iter().collect(), g: bf.g.iter().collect() }
    }

    pub fn to_biflat(&self) -> Biflat {
        let fold = |xs: &[u8]| xs.iter().fold(ESet::EMPTY, |s, &e| s.with(e));
        Biflat::new(fold(&self.f), fold(&self.g))
    }
}

/// Degree check against the reduced broken-circuit h-vector. Populated only
/// when the monomials reach full degree, where the entry `h_{r−k}` predicts
/// the total multiplicity; otherwise both sides are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVectorCheck {
    pub expected: Vec<i64>,
    pub computed: Vec<i64>,
}

impl HVectorCheck {
    fn empty() -> HVectorCheck {
        HVectorCheck { expected: Vec::new(), computed: Vec::new() }
    }

    pub fn agrees(&self) -> bool {
        self.expected == self.computed
    }
}

/// Full record of one expansion: the input, the resulting monomials with
/// multiplicities, per-level census data, and the degree cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub matroid: MatroidInfo,
    pub k: usize,
    pub power: usize,
    pub monomials: Vec<Vec<BiflatEntry>>,
    pub multiplicities: Vec<u64>,
    pub census: CensusReport,
    pub h_vector_check: HVectorCheck,
}

/// Census section of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub with_multiplicity: Vec<u64>,
    pub distinct: Vec<u64>,
    pub peak_frontier: u64,
}

impl CensusReport {
    fn from_census(census: &Census) -> CensusReport {
        CensusReport {
            with_multiplicity: census.with_multiplicity.clone(),
            distinct: census.distinct.clone(),
            peak_frontier: census.peak_frontier,
        }
    }
}

fn monomial_rows(sum: &MonomialSum) -> (Vec<Vec<BiflatEntry>>, Vec<u64>) {
    let mut monomials = Vec::with_capacity(sum.len());
    let mut multiplicities = Vec::with_capacity(sum.len());
    for (flag, mult) in sum.iter() {
        monomials.push(flag.iter().map(|&bf| BiflatEntry::from_biflat(bf)).collect());
        multiplicities.push(mult);
    }
    (monomials, multiplicities)
}

fn degree_check(m: &Matroid, k: usize, sum: &MonomialSum) -> Result<HVectorCheck> {
    let vectors = fh_vectors(m)?;
    let expected = vectors.rbc.h[m.rank_total() - 1 - k];
    Ok(HVectorCheck { expected: vec![expected], computed: vec![sum.total() as i64] })
}

impl ExpansionReport {
    /// Report for a plain `δ^power` expansion.
    pub fn delta(m: &Matroid, source: &str, exp: &DeltaExpansion) -> Result<ExpansionReport> {
        let (monomials, multiplicities) = monomial_rows(&exp.monomials);
        let h_vector_check = if exp.power + 1 == m.ground_size() - 1 {
            degree_check(m, 0, &exp.monomials)?
        } else {
            HVectorCheck::empty()
        };
        Ok(ExpansionReport {
            matroid: MatroidInfo::new(m, source),
            k: 0,
            power: exp.power,
            monomials,
            multiplicities,
            census: CensusReport::from_census(&exp.census),
            h_vector_check,
        })
    }

    /// Report for a `γ^k δ^power` run; the census covers the `δ` walk that
    /// fed it.
    pub fn gamma_delta(
        m: &Matroid,
        source: &str,
        exp: &GammaDeltaExpansion,
        census: &Census,
    ) -> Result<ExpansionReport> {
        let (monomials, multiplicities) = monomial_rows(&exp.survivors);
        Ok(ExpansionReport {
            matroid: MatroidInfo::new(m, source),
            k: exp.k,
            power: exp.power,
            monomials,
            multiplicities,
            census: CensusReport::from_census(census),
            h_vector_check: degree_check(m, exp.k, &exp.survivors)?,
        })
    }

    /// Rebuilds the monomial multiset, revalidating every chain.
    pub fn monomial_sum(&self, m: &Matroid) -> Result<MonomialSum> {
        let mut sum = MonomialSum::new();
        for (row, &mult) in self.monomials.iter().zip(&self.multiplicities) {
            let biflats: Vec<Biflat> = row.iter().map(BiflatEntry::to_biflat).collect();
            sum.add(Biflag::new(m, &biflats)?, mult);
        }
        Ok(sum)
    }
}

/// Ground set summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub matroid: MatroidInfo,
    pub corank: usize,
    pub loops: Vec<u8>,
    pub coloops: Vec<u8>,
    pub bases: u64,
}

impl InfoReport {
    pub fn new(m: &Matroid, source: &str) -> InfoReport {
        InfoReport {
            matroid: MatroidInfo::new(m, source),
            corank: m.corank_total(),
            loops: m.loops().iter().collect(),
            coloops: m.coloops().iter().collect(),
            bases: m.bases().len() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVectorPair {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

/// f- and h-vectors of the broken-circuit complex and its reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVectorsReport {
    pub matroid: MatroidInfo,
    pub bc: HVectorPair,
    pub rbc: HVectorPair,
    pub beta: i64,
}

impl HVectorsReport {
    pub fn new(m: &Matroid, source: &str) -> Result<HVectorsReport> {
        let v = fh_vectors(m)?;
        Ok(HVectorsReport {
            matroid: MatroidInfo::new(m, source),
            bc: HVectorPair { f: v.bc.f.clone(), h: v.bc.h.clone() },
            rbc: HVectorPair { f: v.rbc.f.clone(), h: v.rbc.h.clone() },
            beta: v.beta(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteEntry {
    pub i: usize,
    pub j: usize,
    pub t: u64,
}

/// Tutte coefficients `t_{i,j}`, sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteReport {
    pub matroid: MatroidInfo,
    pub coefficients: Vec<TutteEntry>,
    pub bases: u64,
}

impl TutteReport {
    pub fn new(m: &Matroid, source: &str) -> TutteReport {
        let t = crate::activity::tutte(m);
        TutteReport {
            matroid: MatroidInfo::new(m, source),
            coefficients: t
                .coefficients
                .iter()
                .map(|(&(i, j), &count)| TutteEntry { i, j, t: count })
                .collect(),
            bases: t.basis_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbcBasisRow {
    pub basis: Vec<u8>,
    pub internally_active: Vec<u8>,
}

/// NBC bases with their internally active sets, sorted by basis, optionally
/// restricted to one internal activity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbcReport {
    pub matroid: MatroidInfo,
    pub activity: Option<usize>,
    pub bases: Vec<NbcBasisRow>,
}

impl NbcReport {
    pub fn new(m: &Matroid, source: &str, activity: Option<usize>) -> NbcReport {
        let mut bases: Vec<NbcBasisRow> = crate::activity::nbc_bases(m)
            .into_iter()
            .filter(|rec| activity.is_none_or(|a| rec.internal_activity() == a))
            .map(|rec| NbcBasisRow {
                basis: rec.basis.iter().collect(),
                internally_active: rec.internally_active.iter().collect(),
            })
            .collect();
        bases.sort_by(|a, b| a.basis.cmp(&b.basis));
        NbcReport { matroid: MatroidInfo::new(m, source), activity, bases }
    }
}

/// One activity parameter of a verification run: the reduced h-vector entry
/// it must reproduce, what each strategy produced, and whether the
/// theorem-path multiset equals the extended NBC biflags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub k: usize,
    pub power: usize,
    pub expected: i64,
    pub theorem_path: u64,
    pub exhaustive: Option<u64>,
    pub bijective: bool,
}

/// Verification summary; `monomials` lists the survivors when a single `k`
/// was requested and stays empty otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub matroid: MatroidInfo,
    pub rows: Vec<VerifyRow>,
    pub monomials: Vec<Vec<BiflatEntry>>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogConcavityRow {
    pub sequence: String,
    pub values: Vec<i64>,
    pub log_concave: bool,
}

/// Log-concavity verdicts for the four f/h sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogConcavityReport {
    pub matroid: MatroidInfo,
    pub checks: Vec<LogConcavityRow>,
    pub all_log_concave: bool,
}

impl LogConcavityReport {
    pub fn new(m: &Matroid, source: &str) -> Result<LogConcavityReport> {
        let v = fh_vectors(m)?;
        let checks: Vec<LogConcavityRow> =
            [("bc.f", &v.bc.f), ("bc.h", &v.bc.h), ("rbc.f", &v.rbc.f), ("rbc.h", &v.rbc.h)]
                .into_iter()
                .map(|(name, values)| LogConcavityRow {
                    sequence: name.to_string(),
                    values: values.clone(),
                    log_concave: crate::oracle::logconcavity_check(values),
                })
                .collect();
        let all_log_concave = checks.iter().all(|row| row.log_concave);
        Ok(LogConcavityReport { matroid: MatroidInfo::new(m, source), checks, all_log_concave })
    }
}
