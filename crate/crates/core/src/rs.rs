//! Reed-Solomon families with large Hermitian hulls: evaluation at a
//! multiplicative subgroup, at a union of cosets of one, and punctured
//! coset unions.

use std::ops::RangeInclusive;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{HullReport, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::GfMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Subgroup,
    Coset,
    PuncturedCoset,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Subgroup => "subgroup",
            FamilyKind::Coset => "coset",
            FamilyKind::PuncturedCoset => "punctured-coset",
        }
    }
}

/// Parameters of one family member. For the subgroup family `n_1 = n`,
/// `v = 1`, `b = [1]` and `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub n_1: usize,
    pub v: usize,
    pub b: Vec<Elt>,
    pub t: usize,
    pub k_1: usize,
    pub k_2: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidFamily(msg.into()))
}

impl FamilySpec {
    pub fn subgroup(field: &Field, n: usize, k: usize) -> Result<Self> {
        let q = field.q();
        let spec = FamilySpec {
            family: FamilyKind::Subgroup,
            q,
            n,
            k,
            n_1: n,
            v: 1,
            b: vec![Elt::ONE],
            t: 0,
            k_1: k / q as usize,
            k_2: k % q as usize,
        };
        spec.validate(field)?;
        Ok(spec)
    }

    pub fn coset(field: &Field, n_1: usize, b: Vec<Elt>, k: usize) -> Result<Self> {
        Self::punctured_coset(field, n_1, b, 0, k).map(|mut s| {
            s.family = FamilyKind::Coset;
            s
        })
    }

    pub fn punctured_coset(
        field: &Field,
        n_1: usize,
        b: Vec<Elt>,
        t: usize,
        k: usize,
    ) -> Result<Self> {
        let q = field.q();
        let v = b.len();
        let Some(n) = (v * n_1).checked_sub(t) else {
            return invalid(format!("cannot puncture {t} of {} positions", v * n_1));
        };
        let spec = FamilySpec {
            family: FamilyKind::PuncturedCoset,
            q,
            n,
            k,
            n_1,
            v,
            b,
            t,
            k_1: k / q as usize,
            k_2: k % q as usize,
        };
        spec.validate(field)?;
        Ok(spec)
    }

    /// Checks every family invariant against `field`.
    pub fn validate(&self, field: &Field) -> Result<()> {
        let q = field.q() as usize;
        let group = field.order() as usize - 1;
        if self.q as usize != q {
            return invalid(format!("spec q = {} but field q = {q}", self.q));
        }
        if self.n_1 == 0 || !group.is_multiple_of(self.n_1) {
            return invalid(format!("n_1 = {} does not divide {group}", self.n_1));
        }
        if self.n == 0 || self.k == 0 || self.k >= self.n {
            return invalid(format!(
                "need 1 <= k <= n-1, got n = {}, k = {}",
                self.n, self.k
            ));
        }
        if 2 * self.k < self.n {
            return invalid(format!("need k >= n/2, got n = {}, k = {}", self.n, self.k));
        }
        if self.k_1 * q + self.k_2 != self.k || self.k_1 >= q || self.k_2 >= q {
            return invalid(format!("k = {} has no digits k_1, k_2 < q", self.k));
        }
        match self.family {
            FamilyKind::Subgroup => {
                if self.n_1 != self.n || self.v != 1 || self.t != 0 || self.b != [Elt::ONE] {
                    return invalid("subgroup family must use the whole subgroup");
                }
            }
            FamilyKind::Coset | FamilyKind::PuncturedCoset => {
                if self.family == FamilyKind::Coset && self.t != 0 {
                    return invalid("coset family has t = 0");
                }
                if self.v == 0 || self.v > q - 1 {
                    return invalid(format!("need 1 <= v <= q-1, got v = {}", self.v));
                }
                if self.v != self.b.len() || self.v * self.n_1 != self.n + self.t {
                    return invalid("n, v, n_1, t are inconsistent");
                }
                for (i, &bi) in self.b.iter().enumerate() {
                    if bi.is_zero() || !field.contains(bi) || !field.in_base_field(bi) {
                        return invalid(format!("b[{i}] = {bi} is not in GF(q)*"));
                    }
                    if self.b[..i].contains(&bi) {
                        return invalid(format!("b[{i}] = {bi} repeats"));
                    }
                }
                if gcd(self.n_1, q - 1) != 1 {
                    return invalid(format!(
                        "gcd(n_1, q-1) = gcd({}, {}) != 1, cosets of the order-n_1 subgroup meet GF(q)*",
                        self.n_1,
                        q - 1
                    ));
                }
                if self.t > self.n - self.k {
                    return invalid(format!(
                        "need t < n-k+1, got t = {}, n = {}, k = {}",
                        self.t, self.n, self.k
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether `(q+1) | n_1`, the divisibility hypothesis as printed for the
    /// coset families. Reported alongside the enforced coprimality check.
    pub fn printed_hypothesis_holds(&self) -> bool {
        self.n_1.is_multiple_of(self.q as usize + 1)
    }

    /// The rational hull bound this family member claims.
    pub fn claimed_bound(&self) -> Ratio<i64> {
        let (n, k, q) = (self.n as i64, self.k as i64, i64::from(self.q));
        match self.family {
            FamilyKind::Subgroup => Ratio::new(k * (n - k - 2), q * q),
            FamilyKind::Coset => Ratio::new(self.k_1 as i64 * (n - k - 2), q),
            FamilyKind::PuncturedCoset => (Ratio::new(self.k_1 as i64 * (n - k - 2), q)
                - self.t as i64)
                .max(Ratio::from_integer(0)),
        }
    }

    /// Constructs the family member and its hull report.
    pub fn build(&self, field: &Field) -> Result<(LinearCode, HullReport)> {
        match self.family {
            FamilyKind::Subgroup => subgroup_candidate(field, self.n, self.k),
            FamilyKind::Coset => coset_candidate(field, self),
            FamilyKind::PuncturedCoset => punctured_candidate(field, self),
        }
    }
}

/// `u_i = Π_{j≠i} (a_i − a_j)`, the derivative of `Π (x − a_j)` at `a_i`.
pub fn multiplier_u(field: &Field, points: &[Elt]) -> Result<Vec<Elt>> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint(i));
        }
    }
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elt::ONE, |acc, (_, &aj)| field.mul(acc, field.sub(ai, aj)))
        })
        .collect())
}

/// Generalized RS code with rows `(m_1 a_1^j, ..., m_n a_n^j)`, `j < k`.
pub fn rs_eval(field: &Field, points: &[Elt], k: usize, multipliers: &[Elt]) -> Result<LinearCode> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::BadDimension { k, n });
    }
    if multipliers.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} multipliers for {n} points",
            multipliers.len()
        )));
    }
    if let Some(i) = multipliers.iter().position(|m| m.is_zero()) {
        return Err(Error::ZeroScalar(i));
    }
    let rows = (0..k as u64)
        .map(|j| {
            points
                .iter()
                .zip(multipliers)
                .map(|(&a, &m)| field.mul(m, field.pow(a, j)))
                .collect()
        })
        .collect();
    Ok(LinearCode::new(&GfMatrix::from_rows(field, n, rows)?))
}

/// Plain RS code (all-ones multipliers).
pub fn rs_code(field: &Field, points: &[Elt], k: usize) -> Result<LinearCode> {
    rs_eval(field, points, k, &vec![Elt::ONE; points.len()])
}

/// `|{ j ∈ I : (j·q mod n) ∈ J }|`.
pub fn count_common_monomials(
    q: u32,
    n: usize,
    expo_i: RangeInclusive<usize>,
    expo_j: RangeInclusive<usize>,
) -> usize {
    let q = q as usize;
    expo_i.filter(|j| expo_j.contains(&(j * q % n))).count()
}

fn invert_all(field: &Field, v: &[Elt]) -> Result<Vec<Elt>> {
    v.iter().map(|&x| field.inv(x)).collect()
}

/// `C = (U^{-1}·RS(n, k))^q` on the order-n subgroup; its Hermitian dual is
/// exactly `RS(n, n−k)`, and its hull is spanned by the common monomials.
pub fn subgroup_candidate(field: &Field, n: usize, k: usize) -> Result<(LinearCode, HullReport)> {
    let spec = FamilySpec::subgroup(field, n, k)?;
    let points = field.subgroup_of_order(n as u32)?;
    let u = multiplier_u(field, &points)?;
    let code = rs_eval(field, &points, k, &invert_all(field, &u)?)?.conjugate();
    let count = count_common_monomials(field.q(), n, 1..=k, 0..=n - k - 1);
    let report = code
        .hermitian_hull()
        .with_bounds(Some(spec.claimed_bound()), Some(count));
    Ok((code, report))
}

/// `∪ b_i·G` for the order-`n_1` subgroup G, coset by coset.
pub fn coset_points(field: &Field, n_1: usize, b: &[Elt]) -> Result<Vec<Elt>> {
    let g = field.subgroup_of_order(n_1 as u32)?;
    for (i, &bi) in b.iter().enumerate() {
        if bi.is_zero() || !field.in_base_field(bi) {
            return invalid(format!("b[{i}] = {bi} is not in GF(q)*"));
        }
        if b[..i].contains(&bi) {
            return invalid(format!("b[{i}] = {bi} repeats"));
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; field.order() as usize];
    let mut points = Vec::with_capacity(b.len() * n_1);
    for (i, &bi) in b.iter().enumerate() {
        for &x in &g {
            let a = field.mul(bi, x);
            if let Some(j) = owner[a.0 as usize] {
                return Err(Error::CosetCollision(j, i));
            }
            owner[a.0 as usize] = Some(i);
            points.push(a);
        }
    }
    Ok(points)
}

/// A coset-union code with the scalings used to build it.
#[derive(Clone, Debug)]
pub struct CosetCode {
    pub points: Vec<Elt>,
    /// Norm preimages `η_i` with `η_i^{q+1} = B_i`.
    pub eta: Vec<Elt>,
    pub code: LinearCode,
}

impl CosetCode {
    /// The code its Hermitian dual must equal: `η^{-q}·RS(n, n−k)`.
    pub fn expected_hermitian_dual(&self, field: &Field) -> Result<LinearCode> {
        let n = self.points.len();
        let scale: Vec<Elt> = self
            .eta
            .iter()
            .map(|&e| field.inv(field.frobenius(e)))
            .collect::<Result<_>>()?;
        rs_eval(field, &self.points, n - self.code.k(), &scale)
    }
}

/// `(η/B)·((h₁')^{-1}·RS(n, k))^q` on `∪ b_i·G`, where `h₁ = x^{n_1} − 1`
/// and `u_i = h₁'(a_i)·B_i` with `B_i ∈ GF(q)*`.
pub fn coset_code(field: &Field, n_1: usize, b: &[Elt], k: usize) -> Result<CosetCode> {
    let points = coset_points(field, n_1, b)?;
    let n1 = field.from_int(n_1 as i64);
    let h1_prime: Vec<Elt> = points
        .iter()
        .map(|&a| field.mul(n1, field.pow(a, n_1 as u64 - 1)))
        .collect();
    let u = multiplier_u(field, &points)?;
    let mut eta = Vec::with_capacity(points.len());
    let mut outer = Vec::with_capacity(points.len());
    for (&ui, &hi) in u.iter().zip(&h1_prime) {
        let bi = field.div(ui, hi)?;
        assert!(field.in_base_field(bi), "B_i must lie in GF(q)*");
        let e = field
            .norm_preimage(bi)
            .expect("the norm GF(q²)* → GF(q)* is surjective");
        eta.push(e);
        outer.push(field.div(e, bi)?);
    }
    let inner = rs_eval(field, &points, k, &invert_all(field, &h1_prime)?)?.conjugate();
    let code = inner.scale(&outer)?;
    Ok(CosetCode { points, eta, code })
}

pub fn coset_candidate(field: &Field, spec: &FamilySpec) -> Result<(LinearCode, HullReport)> {
    if spec.family != FamilyKind::Coset {
        return invalid("coset_candidate needs a coset spec");
    }
    spec.validate(field)?;
    let built = coset_code(field, spec.n_1, &spec.b, spec.k)?;
    let report = built
        .code
        .hermitian_hull()
        .with_bounds(Some(spec.claimed_bound()), None);
    Ok((built.code, report))
}

/// The coset code on `v·n_1` points with its last `t` positions punctured.
pub fn punctured_candidate(field: &Field, spec: &FamilySpec) -> Result<(LinearCode, HullReport)> {
    if spec.family == FamilyKind::Subgroup {
        return invalid("punctured_candidate needs a coset spec");
    }
    spec.validate(field)?;
    let parent = coset_code(field, spec.n_1, &spec.b, spec.k)?;
    let full = spec.n + spec.t;
    let trailing: Vec<usize> = (spec.n..full).collect();
    let code = parent.code.puncture(&trailing)?;
    let report = code
        .hermitian_hull()
        .with_bounds(Some(spec.claimed_bound()), None);
    Ok((code, report))
}
