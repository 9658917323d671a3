//! CSS mapping from classical codes with known Hermitian hulls to
//! entanglement-assisted quantum code parameters, and the enumeration
//! pipelines built on it.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{is_mds, min_distance, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::hullctl::{reduce_hull, ScalingPlan};
use crate::linalg::GfMatrix;
use crate::par;
use crate::rs::{rs_code, FamilySpec};
use crate::twisted::{twisted_hull_candidate, TwistSpec};

/// `[[n, k, d, c]]_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqecParams {
    #[serde(skip)]
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub c: usize,
}

impl std::fmt::Display for EaqecParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}, {}, {}]]_{}",
            self.n, self.k, self.d, self.c, self.q
        )
    }
}

fn check_level(n: usize, k: usize, l: usize) -> Result<()> {
    if l > k || k + l > n {
        return Err(Error::BadLevel { n, k, l });
    }
    Ok(())
}

/// `[[n, k−l, d, n−k−l]]` from an `[n, k, d]` code with hull level `l`.
pub fn css_primary(q: u32, n: usize, k: usize, d: usize, l: usize) -> Result<EaqecParams> {
    check_level(n, k, l)?;
    Ok(EaqecParams {
        q,
        n,
        k: k - l,
        d,
        c: n - k - l,
    })
}

/// `[[n, n−k−l, d⊥, k−l]]` from the Hermitian dual of an `[n, k]` code.
pub fn css_dual(q: u32, n: usize, k: usize, d_perp: usize, l: usize) -> Result<EaqecParams> {
    check_level(n, k, l)?;
    Ok(EaqecParams {
        q,
        n,
        k: n - k - l,
        d: d_perp,
        c: k - l,
    })
}

/// `(n + c + 2) − (2d + k)`.
pub fn defect(p: &EaqecParams) -> i64 {
    (p.n + p.c + 2) as i64 - (2 * p.d + p.k) as i64
}

pub fn is_mds_eaqec(p: &EaqecParams) -> bool {
    defect(p) == 0 && 2 * p.d <= p.n + 2
}

/// Where a classical code came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Grs(FamilySpec),
    Twisted(TwistSpec),
    /// GRS on the first `n` field elements, or on all of them plus the point
    /// at infinity when `extended`.
    Generic {
        n: usize,
        k: usize,
        extended: bool,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grs(s) => s.family.name(),
            Family::Twisted(_) => "twisted",
            Family::Generic {
                extended: false, ..
            } => "generic",
            Family::Generic { extended: true, .. } => "extended-generic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classical {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// One emitted parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoveryRecord {
    pub q: u32,
    pub family: Family,
    pub classical: Classical,
    pub hull_dim: usize,
    pub level: usize,
    pub eaqec: EaqecParams,
    pub defect: i64,
    pub mds: bool,
    pub scaling: ScalingPlan,
}

impl DiscoveryRecord {
    /// Recomputes every derived field from `q`, `classical` and `level`.
    pub fn is_consistent(&self) -> bool {
        let Classical { n, k, d } = self.classical;
        let Ok(mut p) = css_primary(self.q, n, k, d, self.level) else {
            return false;
        };
        p.q = self.eaqec.q;
        p == self.eaqec
            && self.level <= self.hull_dim
            && defect(&p) == self.defect
            && is_mds_eaqec(&p) == self.mds
    }

    fn sort_key(&self) -> (usize, usize, usize) {
        (self.eaqec.n, self.eaqec.d, self.eaqec.c)
    }
}

/// Sorts by `(n, d, c)`; ties keep their relative order.
pub fn sort_records(records: &mut [DiscoveryRecord]) {
    records.sort_by_key(DiscoveryRecord::sort_key);
}

/// Minimum distance, through the cheaper Singleton test when it applies.
/// GRS members are MDS by construction, so their distance is `n − k + 1`
/// even when the budget rules out a check; a failed check is an error.
fn classical_distance(family: &Family, code: &LinearCode, budget: u128) -> Result<usize> {
    let singleton = code.n() - code.k() + 1;
    let grs = !matches!(family, Family::Twisted(_));
    match is_mds(code, budget) {
        Ok(true) => Ok(singleton),
        Ok(false) if grs => Err(Error::InvalidFamily(format!(
            "{} member of length {} is not MDS",
            family.name(),
            code.n()
        ))),
        Ok(false) => min_distance(code, budget),
        Err(Error::BudgetExceeded { .. }) if grs => Ok(singleton),
        Err(e) => Err(e),
    }
}

/// Records for every level `0..=min(h, n−k−1)` of `code`, each realized by
/// scaling and checked by the hull oracle. Every record has `c ≥ 1`.
pub fn level_records(
    family: &Family,
    code: &LinearCode,
    budget: u128,
) -> Result<Vec<DiscoveryRecord>> {
    let (n, k) = (code.n(), code.k());
    let q = code.field().q();
    let d = classical_distance(family, code, budget)?;
    let h = code.hull_dim();
    let top = h.min(n - k - 1);
    (0..=top)
        .map(|level| {
            let (_, scaling) = reduce_hull(code, level)?;
            let eaqec = css_primary(q, n, k, d, level)?;
            Ok(DiscoveryRecord {
                q,
                family: family.clone(),
                classical: Classical { n, k, d },
                hull_dim: h,
                level,
                eaqec,
                defect: defect(&eaqec),
                mds: is_mds_eaqec(&eaqec),
                scaling,
            })
        })
        .collect()
}

/// GRS on all `q²` points plus infinity, where the last column reads off the
/// coefficient of `x^{k−1}`.
fn extended_rs(field: &Field, k: usize) -> Result<LinearCode> {
    let n = field.order() as usize + 1;
    if k == 0 || k >= n {
        return Err(Error::BadDimension { k, n });
    }
    let mut gen = GfMatrix::zeros(field, k, n);
    for (j, a) in field.elements().enumerate() {
        for i in 0..k {
            gen.set(i, j, field.pow(a, i as u64));
        }
    }
    gen.set(k - 1, n - 1, Elt::ONE);
    Ok(LinearCode::new(&gen))
}

/// Coset-union spec with the largest `n_1` realizing length `n`, if any.
fn coset_spec_for(field: &Field, n: usize, k: usize) -> Option<FamilySpec> {
    let q = field.q() as usize;
    let group = q * q - 1;
    let units = field.base_field_units();
    (1..=group)
        .filter(|n_1| group.is_multiple_of(*n_1) && n.is_multiple_of(*n_1))
        .filter_map(|n_1| {
            let v = n / n_1;
            if v > units.len() || v == 0 {
                return None;
            }
            FamilySpec::coset(field, n_1, units[..v].to_vec(), k).ok()
        })
        .next_back()
}

/// An MDS `[n, k]` code for the existence sweep: a subgroup or coset family
/// member when the arithmetic allows, otherwise a generic GRS.
pub fn mds_code_for(field: &Field, n: usize, k: usize) -> Result<(Family, LinearCode)> {
    let group = field.order() as usize - 1;
    if group.is_multiple_of(n) {
        if let Ok(spec) = FamilySpec::subgroup(field, n, k) {
            let (code, _) = spec.build(field)?;
            return Ok((Family::Grs(spec), code));
        }
    }
    if let Some(spec) = coset_spec_for(field, n, k) {
        let (code, _) = spec.build(field)?;
        return Ok((Family::Grs(spec), code));
    }
    let extended = n == group + 2;
    let code = if extended {
        extended_rs(field, k)?
    } else {
        let points: Vec<Elt> = field.elements().take(n).collect();
        rs_code(field, &points, k)?
    };
    Ok((Family::Generic { n, k, extended }, code))
}

/// Every hull level of an `[n, n−d+1, d]` MDS code as EAQEC records.
pub fn enumerate_for_length_distance(
    field: &Field,
    n: usize,
    d: usize,
    budget: u128,
) -> Result<Vec<DiscoveryRecord>> {
    let max_n = field.order() as usize + 1;
    if n < 2 || n > max_n {
        return Err(Error::BadRange(format!("n = {n} outside 2..={max_n}")));
    }
    if d < 2 || 2 * d > n + 2 {
        return Err(Error::BadRange(format!(
            "d = {d} outside 2..=(n+2)/2 for n = {n}"
        )));
    }
    let k = n - d + 1;
    let (family, code) = mds_code_for(field, n, k)?;
    let mut records = level_records(&family, &code, budget)?;
    sort_records(&mut records);
    Ok(records)
}

/// Enumeration over many `(n, d)` pairs, fanned out and merged in order.
pub fn enumerate_pairs(
    field: &Field,
    pairs: &[(usize, usize)],
    budget: u128,
) -> Result<Vec<DiscoveryRecord>> {
    let parts = par::map(pairs, |&(n, d)| {
        enumerate_for_length_distance(field, n, d, budget)
    });
    let mut records = Vec::new();
    for part in parts {
        records.extend(part?);
    }
    sort_records(&mut records);
    Ok(records)
}

/// The promised number of distinct nonzero `c` values,
/// `k_1(n−k−2)/q + 1 − t`.
pub fn distinct_c_bound(spec: &FamilySpec) -> Ratio<i64> {
    let (n, k, q) = (spec.n as i64, spec.k as i64, i64::from(spec.q));
    Ratio::new(spec.k_1 as i64 * (n - k - 2), q) + 1 - spec.t as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub count: usize,
    pub claimed: Ratio<i64>,
    pub required: usize,
    pub hull_dim: usize,
}

impl CountReport {
    pub fn holds(&self) -> bool {
        self.count >= self.required
    }
}

/// Number of distinct nonzero `c` among the MDS EAQEC records of a family
/// member. At least one level always exists, so `required` is never below 1.
pub fn count_distinct_c(field: &Field, spec: &FamilySpec, budget: u128) -> Result<CountReport> {
    let (code, report) = spec.build(field)?;
    let records = level_records(&Family::Grs(spec.clone()), &code, budget)?;
    let mut cs: Vec<usize> = records
        .iter()
        .filter(|r| r.mds && r.eaqec.c > 0)
        .map(|r| r.eaqec.c)
        .collect();
    cs.sort_unstable();
    cs.dedup();
    let claimed = distinct_c_bound(spec);
    let required = claimed.floor().to_integer().max(1) as usize;
    Ok(CountReport {
        count: cs.len(),
        claimed,
        required,
        hull_dim: report.hull_dim,
    })
}

/// Records for one explicitly chosen family member.
pub fn family_records(
    field: &Field,
    family: &Family,
    budget: u128,
) -> Result<Vec<DiscoveryRecord>> {
    let code = match family {
        Family::Grs(spec) => spec.build(field)?.0,
        Family::Twisted(spec) => twisted_hull_candidate(field, spec)?.0,
        Family::Generic { n, k, .. } => mds_generic(field, *n, *k)?,
    };
    let mut records = level_records(family, &code, budget)?;
    sort_records(&mut records);
    Ok(records)
}

fn mds_generic(field: &Field, n: usize, k: usize) -> Result<LinearCode> {
    let max_n = field.order() as usize + 1;
    if n > max_n || k == 0 || k >= n {
        return Err(Error::BadDimension { k, n });
    }
    if n == max_n {
        extended_rs(field, k)
    } else {
        let points: Vec<Elt> = field.elements().take(n).collect();
        rs_code(field, &points, k)
    }
}
