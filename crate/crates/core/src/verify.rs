//! Sweeps that hold every constructed code against the bounds it claims.
//!
//! Each instance yields one [`Finding`] carrying the claimed value and the
//! value the exact oracles produce. A failing finding is a result, not a
//! crash.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::code::{binomial, is_mds, LinearCode};
use crate::eaqec::{count_distinct_c, enumerate_for_length_distance};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::hullctl::reduce_hull;
use crate::par;
use crate::rs::{FamilyKind, FamilySpec};
use crate::twisted::{
    check_twisted_duality, is_twisted_mds, twisted_code, twisted_dual_basis,
    twisted_hull_candidate, TwistSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    LengthDistance,
    SubgroupBound,
    CosetBound,
    TwistedBound,
    Reduction,
    TwistedDual,
    TwistedMds,
    Schur,
    PuncturedBound,
    SubgroupCount,
    CosetCount,
    PuncturedCount,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::LengthDistance,
        Suite::SubgroupBound,
        Suite::CosetBound,
        Suite::TwistedBound,
        Suite::Reduction,
        Suite::TwistedDual,
        Suite::TwistedMds,
        Suite::Schur,
        Suite::PuncturedBound,
        Suite::SubgroupCount,
        Suite::CosetCount,
        Suite::PuncturedCount,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::LengthDistance => "3.1",
            Suite::SubgroupBound => "3.2",
            Suite::CosetBound => "3.3",
            Suite::TwistedBound => "4.1",
            Suite::Reduction => "prop3.1",
            Suite::TwistedDual => "prop4.1",
            Suite::TwistedMds => "prop4.2",
            Suite::Schur => "schur",
            Suite::PuncturedBound => "cor3.1",
            Suite::SubgroupCount => "cor3.2",
            Suite::CosetCount => "cor3.3",
            Suite::PuncturedCount => "cor3.4",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite id {s:?}")))
    }
}

/// Parses a suite id, where `all` selects every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub suite: Suite,
    pub instance: String,
    pub claimed: String,
    pub oracle: String,
    pub pass: bool,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} claimed={} oracle={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite.id(),
            self.instance,
            self.claimed,
            self.oracle
        )
    }
}

/// Restricts a sweep. Unset ranges take the suite's default scope.
#[derive(Clone, Debug)]
pub struct Scope {
    pub n: Option<RangeInclusive<usize>>,
    pub k: Option<RangeInclusive<usize>>,
    pub budget: u128,
}

impl Scope {
    pub fn new(budget: u128) -> Self {
        Scope {
            n: None,
            k: None,
            budget,
        }
    }

    fn n_ok(&self, n: usize) -> bool {
        self.n.as_ref().is_none_or(|r| r.contains(&n))
    }

    fn k_ok(&self, k: usize) -> bool {
        self.k.as_ref().is_none_or(|r| r.contains(&k))
    }
}

/// Largest coset-family length swept by default.
pub const MAX_COSET_N: usize = 40;
/// Largest twisted length swept by default.
pub const MAX_TWISTED_N: usize = 16;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// All `v`-subsets of `items`, in lexicographic order.
fn subsets<T: Clone>(items: &[T], v: usize) -> Vec<Vec<T>> {
    if v == 0 {
        return vec![Vec::new()];
    }
    if items.len() < v {
        return Vec::new();
    }
    let mut out: Vec<Vec<T>> = subsets(&items[1..], v - 1)
        .into_iter()
        .map(|mut rest| {
            rest.insert(0, items[0].clone());
            rest
        })
        .collect();
    out.extend(subsets(&items[1..], v));
    out
}

/// Subgroup family members with `n ≥ 4` and `n/2 ≤ k ≤ n−2`.
pub fn subgroup_specs(field: &Field, scope: &Scope) -> Vec<FamilySpec> {
    let group = field.order() as usize - 1;
    let mut specs = Vec::new();
    for n in divisors(group)
        .into_iter()
        .filter(|&n| n >= 4 && scope.n_ok(n))
    {
        for k in n.div_ceil(2)..=n - 2 {
            if scope.k_ok(k) {
                specs.extend(FamilySpec::subgroup(field, n, k).ok());
            }
        }
    }
    specs
}

/// Coset-union members (`punctured = false`) or their punctured variants
/// with `t ≥ 1`, over every subset `b` of GF(q)*, up to length 40.
pub fn coset_specs(field: &Field, scope: &Scope, punctured: bool) -> Vec<FamilySpec> {
    let q = field.q() as usize;
    let group = q * q - 1;
    let units = field.base_field_units();
    let mut specs = Vec::new();
    for n_1 in divisors(group).into_iter().filter(|&m| gcd(m, q - 1) == 1) {
        for v in 1..=q - 1 {
            let full = v * n_1;
            for b in subsets(&units, v) {
                let ts = if punctured { 1..full } else { 0..1 };
                for t in ts {
                    let n = full - t;
                    if !(2..=MAX_COSET_N).contains(&n) || !scope.n_ok(n) {
                        continue;
                    }
                    for k in n.div_ceil(2)..n {
                        if !scope.k_ok(k) {
                            continue;
                        }
                        let spec = if punctured {
                            FamilySpec::punctured_coset(field, n_1, b.clone(), t, k)
                        } else {
                            FamilySpec::coset(field, n_1, b.clone(), k)
                        };
                        specs.extend(spec.ok());
                    }
                }
            }
        }
    }
    specs
}

/// Twisted specs with `n | q²−1`, `n ≤ 16`, every `k` in `1..n` and every
/// nonzero η.
pub fn twist_specs(field: &Field, scope: &Scope) -> Vec<TwistSpec> {
    let group = field.order() as usize - 1;
    let mut specs = Vec::new();
    for n in divisors(group)
        .into_iter()
        .filter(|&n| (2..=MAX_TWISTED_N).contains(&n) && scope.n_ok(n))
    {
        for k in (1..n).filter(|&k| scope.k_ok(k)) {
            for eta in field.elements().skip(1) {
                specs.extend(TwistSpec::new(field, n, k, eta).ok());
            }
        }
    }
    specs
}

fn describe(spec: &FamilySpec) -> String {
    let b: Vec<String> = spec.b.iter().map(|e| e.0.to_string()).collect();
    match spec.family {
        FamilyKind::Subgroup => format!("q={} n={} k={}", spec.q, spec.n, spec.k),
        _ => format!(
            "q={} n={} k={} n1={} v={} b={} t={} printed-hypothesis={}",
            spec.q,
            spec.n,
            spec.k,
            spec.n_1,
            spec.v,
            b.join(","),
            spec.t,
            spec.printed_hypothesis_holds()
        ),
    }
}

fn twist_describe(spec: &TwistSpec) -> String {
    format!("q={} n={} k={} eta={}", spec.q, spec.n, spec.k, spec.eta.0)
}

fn ceil_nonneg(r: num_rational::Ratio<i64>) -> usize {
    r.ceil().to_integer().max(0) as usize
}

fn error_finding(suite: Suite, instance: String, e: &Error) -> Finding {
    Finding {
        suite,
        instance,
        claimed: "-".into(),
        oracle: format!("error: {e}"),
        pass: false,
    }
}

fn hull_bound_finding(field: &Field, suite: Suite, spec: &FamilySpec) -> Finding {
    let instance = describe(spec);
    let (_, report) = match spec.build(field) {
        Ok(built) => built,
        Err(e) => return error_finding(suite, instance, &e),
    };
    let need = ceil_nonneg(report.bound_claimed.expect("family bound"));
    let (claimed, pass) = match report.bound_count {
        Some(count) => (
            format!("{count}>=ceil({})={need}", spec.claimed_bound()),
            report.hull_dim >= count && count >= need,
        ),
        None => (
            format!("ceil({})={need}", spec.claimed_bound()),
            report.hull_dim >= need,
        ),
    };
    Finding {
        suite,
        instance,
        claimed,
        oracle: report.hull_dim.to_string(),
        pass,
    }
}

/// Every level `0..=h` of `code` is reached exactly, by an equivalent code
/// that stays MDS when that is checkable within the budget.
fn reduction_finding(code: &LinearCode, instance: String, budget: u128) -> Finding {
    let h = code.hull_dim();
    let check_mds = binomial(code.n(), code.k()) <= budget;
    let mut reached = Vec::with_capacity(h + 1);
    let mut pass = true;
    for target in 0..=h {
        match reduce_hull(code, target) {
            Ok((red, plan)) => {
                let got = red.hull_dim();
                let same_shape = red.n() == code.n() && red.k() == code.k();
                let equivalent = code.scale(&plan.vector(code.n())).is_ok_and(|c| c == red);
                let mds = !check_mds || is_mds(&red, budget).unwrap_or(false);
                pass &= got == target && same_shape && equivalent && mds;
                reached.push(got.to_string());
            }
            Err(e) => {
                pass = false;
                reached.push(format!("error: {e}"));
            }
        }
    }
    Finding {
        suite: Suite::Reduction,
        instance: format!("{instance} h={h}"),
        claimed: format!("levels 0..={h}"),
        oracle: reached.join(","),
        pass,
    }
}

fn count_finding(field: &Field, suite: Suite, spec: &FamilySpec, budget: u128) -> Finding {
    let instance = describe(spec);
    match count_distinct_c(field, spec, budget) {
        Ok(r) => Finding {
            suite,
            instance,
            claimed: format!("floor({})={}", r.claimed, r.required),
            oracle: r.count.to_string(),
            pass: r.holds(),
        },
        Err(e) => error_finding(suite, instance, &e),
    }
}

/// Every `(n, d)` with `4 ≤ n ≤ q²+1`, `2 ≤ d ≤ (n+2)/2` yields a record with
/// `c ≥ 1`, and every record satisfies the MDS EAQEC equality.
fn length_distance(field: &Field, scope: &Scope) -> Vec<Finding> {
    let max_n = field.order() as usize + 1;
    let pairs: Vec<(usize, usize)> = (4..=max_n)
        .filter(|&n| scope.n_ok(n))
        .flat_map(|n| (2..=(n + 2) / 2).map(move |d| (n, d)))
        .collect();
    par::map(&pairs, |&(n, d)| {
        let instance = format!("q={} n={n} d={d}", field.q());
        match enumerate_for_length_distance(field, n, d, scope.budget) {
            Ok(recs) => {
                let cs: Vec<String> = recs.iter().map(|r| r.eaqec.c.to_string()).collect();
                let exact = recs.iter().all(|r| {
                    r.is_consistent()
                        && r.mds
                        && 2 * r.eaqec.d + r.eaqec.k == r.eaqec.n + r.eaqec.c + 2
                });
                Finding {
                    suite: Suite::LengthDistance,
                    instance: format!("{instance} family={}", recs[0].family.name()),
                    claimed: "some c>=1".into(),
                    oracle: format!("c={}", cs.join(",")),
                    pass: exact && recs.iter().any(|r| r.eaqec.c >= 1),
                }
            }
            Err(e) => error_finding(Suite::LengthDistance, instance, &e),
        }
    })
}

fn twisted_bound(field: &Field, scope: &Scope) -> Vec<Finding> {
    let specs: Vec<TwistSpec> = twist_specs(field, scope)
        .into_iter()
        .filter(|s| 2 * s.k >= s.n)
        .collect();
    par::map(&specs, |spec| {
        let instance = twist_describe(spec);
        let built = twisted_hull_candidate(field, spec).and_then(|(code, report)| {
            let dual_ok = code.hermitian_dual() == twisted_dual_basis(field, spec)?;
            Ok((report, dual_ok))
        });
        match built {
            Ok((report, dual_ok)) => {
                let count = report.bound_count.expect("twisted count");
                let need = ceil_nonneg(spec.claimed_bound());
                Finding {
                    suite: Suite::TwistedBound,
                    instance,
                    claimed: format!("ceil({})={need} monomials={count}", spec.claimed_bound()),
                    oracle: format!("{} dual={}", report.hull_dim, dual_ok),
                    pass: dual_ok && report.hull_dim >= need && report.hull_dim >= count,
                }
            }
            Err(e) => error_finding(Suite::TwistedBound, instance, &e),
        }
    })
}

fn twisted_dual(field: &Field, scope: &Scope) -> Vec<Finding> {
    let specs = twist_specs(field, scope);
    par::map(&specs, |spec| {
        let instance = twist_describe(spec);
        match check_twisted_duality(field, spec) {
            Ok(check) => Finding {
                suite: Suite::TwistedDual,
                instance,
                claimed: "dual basis as displayed".into(),
                oracle: format!(
                    "displayed={} flipped={}",
                    check.as_displayed, check.sign_flipped
                ),
                pass: check.holds(),
            },
            Err(e) => error_finding(Suite::TwistedDual, instance, &e),
        }
    })
}

/// η ∉ α implies MDS; codes with η ∈ α are reported without a constraint.
fn twisted_mds(field: &Field, scope: &Scope) -> Vec<Finding> {
    let specs = twist_specs(field, scope);
    par::map(&specs, |spec| {
        let instance = twist_describe(spec);
        let outside = !spec.eta_in_alpha(field);
        match is_twisted_mds(field, spec, scope.budget) {
            Ok(mds) => Finding {
                suite: Suite::TwistedMds,
                instance: format!("{instance} eta-in-alpha={}", !outside),
                claimed: if outside { "MDS" } else { "unconstrained" }.into(),
                oracle: if mds { "MDS" } else { "not MDS" }.into(),
                pass: mds || !outside,
            },
            Err(e) => error_finding(Suite::TwistedMds, instance, &e),
        }
    })
}

/// Exact Schur-square dimension of a twisted code with `2k ≤ n`.
///
/// For `k ≥ 3` the square is spanned by `x, ..., x^{2k−1}` and
/// `1 + η²x^{2k}`, giving `2k` when `2k < n`; at `2k = n` the last generator
/// collapses to the constant `1 + η²`, so the dimension is `n` unless
/// `η² = −1`. For `k = 2` only `x²`, `x + ηx³` and `1 + η²x⁴` appear, and
/// `k = 1` gives a single word.
pub fn expected_twisted_schur_dim(field: &Field, spec: &TwistSpec) -> usize {
    let (n, k) = (spec.n, spec.k);
    let collapses = 2 * k == n && field.add(Elt::ONE, field.mul(spec.eta, spec.eta)).is_zero();
    match k {
        1 => 1,
        2 => 3 - usize::from(collapses),
        _ if 2 * k < n => 2 * k,
        _ => n - usize::from(collapses),
    }
}

/// Whether the promised `min(2k, n)` Schur dimension applies: it needs
/// `k ≥ 3`, and at `2k = n` also `η² ≠ −1`.
pub fn schur_claim_applies(field: &Field, spec: &TwistSpec) -> bool {
    spec.k >= 3
        && (2 * spec.k < spec.n || !field.add(Elt::ONE, field.mul(spec.eta, spec.eta)).is_zero())
}

fn schur(field: &Field, scope: &Scope) -> Vec<Finding> {
    let specs: Vec<TwistSpec> = twist_specs(field, scope)
        .into_iter()
        .filter(|s| 2 * s.k <= s.n)
        .collect();
    par::map(&specs, |spec| {
        let instance = twist_describe(spec);
        match twisted_code(field, spec) {
            Ok(code) => {
                let dim = code.schur_square().k();
                let expected = expected_twisted_schur_dim(field, spec);
                let applies = schur_claim_applies(field, spec);
                let promised = (2 * spec.k).min(spec.n);
                Finding {
                    suite: Suite::Schur,
                    instance: format!("{instance} claim-applies={applies}"),
                    claimed: format!("exact {expected}, >= {promised} when applicable"),
                    oracle: dim.to_string(),
                    pass: dim == expected && (!applies || dim >= promised),
                }
            }
            Err(e) => error_finding(Suite::Schur, instance, &e),
        }
    })
}

/// Runs one suite over its default scope, narrowed by `scope`.
pub fn run_suite(field: &Field, suite: Suite, scope: &Scope) -> Vec<Finding> {
    let budget = scope.budget;
    match suite {
        Suite::LengthDistance => length_distance(field, scope),
        Suite::SubgroupBound => {
            let specs = subgroup_specs(field, scope);
            par::map(&specs, |s| hull_bound_finding(field, suite, s))
        }
        Suite::CosetBound => {
            let specs = coset_specs(field, scope, false);
            par::map(&specs, |s| hull_bound_finding(field, suite, s))
        }
        Suite::PuncturedBound => {
            let specs = coset_specs(field, scope, true);
            par::map(&specs, |s| hull_bound_finding(field, suite, s))
        }
        Suite::TwistedBound => twisted_bound(field, scope),
        Suite::Reduction => {
            if field.q() < 3 {
                return Vec::new();
            }
            let mut specs = subgroup_specs(field, scope);
            specs.extend(coset_specs(field, scope, false));
            specs.extend(coset_specs(field, scope, true));
            par::map(&specs, |s| match s.build(field) {
                Ok((code, _)) => reduction_finding(&code, describe(s), budget),
                Err(e) => error_finding(suite, describe(s), &e),
            })
            .into_iter()
            .filter(|f| !f.instance.ends_with(" h=0"))
            .collect()
        }
        Suite::TwistedDual => twisted_dual(field, scope),
        Suite::TwistedMds => twisted_mds(field, scope),
        Suite::Schur => schur(field, scope),
        Suite::SubgroupCount | Suite::CosetCount | Suite::PuncturedCount => {
            if field.q() < 3 {
                return Vec::new();
            }
            let specs = match suite {
                Suite::SubgroupCount => {
                    // Counts are claimed for every k in [n/2, n−1].
                    let group = field.order() as usize - 1;
                    divisors(group)
                        .into_iter()
                        .filter(|&n| n >= 2 && scope.n_ok(n))
                        .flat_map(|n| {
                            (n.div_ceil(2)..n)
                                .filter(|&k| scope.k_ok(k))
                                .filter_map(move |k| FamilySpec::subgroup(field, n, k).ok())
                        })
                        .collect()
                }
                Suite::CosetCount => coset_specs(field, scope, false),
                _ => coset_specs(field, scope, true),
            };
            par::map(&specs, |s| count_finding(field, suite, s, budget))
        }
    }
}
