//! Twisted Reed-Solomon codes `C_{α,η,k}` evaluated at a multiplicative
//! subgroup α: the span of `1 + ηx^k, x, ..., x^{k−1}`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{is_mds, HullReport, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::GfMatrix;
use crate::rs::{count_common_monomials, multiplier_u};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpec {
    pub q: u32,
    /// Order of the evaluation subgroup α.
    pub n: usize,
    pub k: usize,
    pub eta: Elt,
}

impl TwistSpec {
    pub fn new(field: &Field, n: usize, k: usize, eta: Elt) -> Result<Self> {
        let spec = TwistSpec {
            q: field.q(),
            n,
            k,
            eta,
        };
        spec.validate(field)?;
        Ok(spec)
    }

    pub fn validate(&self, field: &Field) -> Result<()> {
        let group = field.order() as usize - 1;
        if self.q != field.q() {
            return Err(Error::BadSpec(format!(
                "spec q = {} but field q = {}",
                self.q,
                field.q()
            )));
        }
        if self.n == 0 || !group.is_multiple_of(self.n) {
            return Err(Error::BadSpec(format!(
                "n = {} does not divide {group}",
                self.n
            )));
        }
        if self.k == 0 || self.k >= self.n {
            return Err(Error::BadSpec(format!(
                "need 1 <= k <= n-1, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if self.eta.is_zero() || !field.contains(self.eta) {
            return Err(Error::BadSpec(format!(
                "eta = {} must be a nonzero element",
                self.eta
            )));
        }
        Ok(())
    }

    /// The evaluation points, the order-n subgroup.
    pub fn alpha(&self, field: &Field) -> Vec<Elt> {
        field
            .subgroup_of_order(self.n as u32)
            .expect("validated divisor")
    }

    pub fn eta_in_alpha(&self, field: &Field) -> bool {
        field.pow(self.eta, self.n as u64) == Elt::ONE
    }

    /// Rational hull bound `k(n−k−2)/q²`.
    pub fn claimed_bound(&self) -> Ratio<i64> {
        let (n, k, q) = (self.n as i64, self.k as i64, i64::from(self.q));
        Ratio::new(k * (n - k - 2), q * q)
    }
}

/// A polynomial as `(exponent, coefficient)` terms.
type Terms = Vec<(u64, Elt)>;

fn evaluation_code(field: &Field, points: &[Elt], polys: &[Terms]) -> LinearCode {
    let rows = polys
        .iter()
        .map(|terms| {
            points
                .iter()
                .map(|&a| {
                    terms.iter().fold(Elt::ZERO, |acc, &(e, c)| {
                        field.add(acc, field.mul(c, field.pow(a, e)))
                    })
                })
                .collect()
        })
        .collect();
    LinearCode::new(&GfMatrix::from_rows(field, points.len(), rows).expect("rows of length n"))
}

fn twisted_polys(spec: &TwistSpec) -> Vec<Terms> {
    let k = spec.k as u64;
    std::iter::once(vec![(0, Elt::ONE), (k, spec.eta)])
        .chain((1..k).map(|j| vec![(j, Elt::ONE)]))
        .collect()
}

/// `h_j = x^j` for `j < n−k−1`, and `h_{n−k−1} = x^{n−k−1} − η·x^{n−1}`.
fn dual_polys(field: &Field, n: usize, k: usize, eta: Elt) -> Vec<Terms> {
    let last = (n - k - 1) as u64;
    (0..last)
        .map(|j| vec![(j, Elt::ONE)])
        .chain(std::iter::once(vec![
            (last, Elt::ONE),
            (n as u64 - 1, field.neg(eta)),
        ]))
        .collect()
}

pub fn twisted_code(field: &Field, spec: &TwistSpec) -> Result<LinearCode> {
    spec.validate(field)?;
    Ok(evaluation_code(
        field,
        &spec.alpha(field),
        &twisted_polys(spec),
    ))
}

/// Evaluation code of `1, x, ..., x^{n−k−2}, x^{n−k−1} − η·x^{n−1}`.
pub fn twisted_dual_basis(field: &Field, spec: &TwistSpec) -> Result<LinearCode> {
    spec.validate(field)?;
    Ok(evaluation_code(
        field,
        &spec.alpha(field),
        &dual_polys(field, spec.n, spec.k, spec.eta),
    ))
}

/// Which placement of the sign of η makes `U^{-1}·span{h_j}` the Euclidean
/// dual of the twisted code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    /// `h_{n−k−1} = x^{n−k−1} − η·x^{n−1}`, the basis as displayed.
    pub as_displayed: bool,
    /// `h_{n−k−1} = x^{n−k−1} + η·x^{n−1}`, i.e. the displayed basis built
    /// from −η.
    pub sign_flipped: bool,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.as_displayed
    }
}

pub fn check_twisted_duality(field: &Field, spec: &TwistSpec) -> Result<DualityCheck> {
    let dual = twisted_code(field, spec)?.euclidean_dual();
    let alpha = spec.alpha(field);
    let u_inv: Vec<Elt> = multiplier_u(field, &alpha)?
        .into_iter()
        .map(|u| field.inv(u))
        .collect::<Result<_>>()?;
    let candidate = |eta: Elt| -> Result<bool> {
        let h = evaluation_code(field, &alpha, &dual_polys(field, spec.n, spec.k, eta));
        Ok(h.scale(&u_inv)? == dual)
    };
    Ok(DualityCheck {
        as_displayed: candidate(spec.eta)?,
        sign_flipped: candidate(field.neg(spec.eta))?,
    })
}

/// Whether the twisted code is MDS. Guaranteed when η ∉ α; reported only
/// otherwise.
pub fn is_twisted_mds(field: &Field, spec: &TwistSpec, budget: u128) -> Result<bool> {
    is_mds(&twisted_code(field, spec)?, budget)
}

/// Common pure monomials of `(U^{-1}·C_{α,η,k})^q` and its Hermitian dual.
///
/// `U^{-1}` multiplies by `x` up to a constant, so the pure monomials of
/// `U^{-1}·C_{α,η,k}` are `x^2, ..., x^k` (the twisted generator `x + ηx^{k+1}`
/// is not one), while the dual contributes `x^0, ..., x^{n−k−2}`. The count is
/// `|{ e ∈ [2..k] : eq mod n ∈ [0..n−k−2] }|`.
pub fn twisted_monomial_count(spec: &TwistSpec) -> usize {
    if spec.n < spec.k + 2 || spec.k < 2 {
        return 0;
    }
    count_common_monomials(spec.q, spec.n, 2..=spec.k, 0..=spec.n - spec.k - 2)
}

/// `C = (U^{-1}·C_{α,η,k})^q`, whose Hermitian dual is
/// [`twisted_dual_basis`].
pub fn twisted_hull_candidate(field: &Field, spec: &TwistSpec) -> Result<(LinearCode, HullReport)> {
    spec.validate(field)?;
    if 2 * spec.k < spec.n {
        return Err(Error::BadSpec(format!(
            "need k >= n/2, got n = {}, k = {}",
            spec.n, spec.k
        )));
    }
    let alpha = spec.alpha(field);
    let u_inv: Vec<Elt> = multiplier_u(field, &alpha)?
        .into_iter()
        .map(|u| field.inv(u))
        .collect::<Result<_>>()?;
    let code = twisted_code(field, spec)?.scale(&u_inv)?.conjugate();
    let report = code.hermitian_hull().with_bounds(
        Some(spec.claimed_bound()),
        Some(twisted_monomial_count(spec)),
    );
    Ok((code, report))
}
