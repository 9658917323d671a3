//! Lowering the Hermitian hull dimension of a code by coordinate scaling.
//!
//! Scaling the hull-pivot coordinates of `l − l'` hull rows by scalars whose
//! norm is not 1 leaves a code with hull dimension exactly `l'`. Every result
//! is re-checked against the hull oracle before it is returned.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::GfMatrix;

/// A code in the block shape `[I_l 0 P; 0 I_{k−l} Q]` after a column
/// permutation, with the hull generated by the first `l` rows.
#[derive(Clone, Debug)]
pub struct StandardForm {
    /// The permuted code.
    pub code: LinearCode,
    /// `perm[i]` is the original coordinate placed at position `i`.
    pub perm: Vec<usize>,
    pub l: usize,
    /// The `k × n` generator in block shape.
    pub generator: GfMatrix,
}

impl StandardForm {
    /// `P`, the `l × (n−k)` tail of the hull rows.
    pub fn p_block(&self) -> GfMatrix {
        let k = self.generator.rows();
        let rows: Vec<usize> = (0..self.l).collect();
        let cols: Vec<usize> = (k..self.generator.cols()).collect();
        self.generator.select_rows(&rows).select_columns(&cols)
    }

    /// `Q`, the `(k−l) × (n−k)` tail of the remaining rows.
    pub fn q_block(&self) -> GfMatrix {
        let k = self.generator.rows();
        let rows: Vec<usize> = (self.l..k).collect();
        let cols: Vec<usize> = (k..self.generator.cols()).collect();
        self.generator.select_rows(&rows).select_columns(&cols)
    }

    /// `P·P̄ᵀ`, which equals `−I_l` for a Hermitian self-orthogonal hull.
    pub fn hull_gram(&self) -> GfMatrix {
        let p = self.p_block();
        let f = p.field().clone();
        let conj_t = p.map(|e| f.frobenius(e)).transpose();
        p.mul(&conj_t).expect("conformable")
    }
}

pub fn standard_form(code: &LinearCode) -> Result<StandardForm> {
    let (n, k) = (code.n(), code.k());
    let hull = code.hermitian_hull().hull_basis;
    let l = hull.rows();
    let hull_pivots = hull.rref().pivots;
    let gen = code.gen();

    // Complete the hull pivots to an information set using only columns on
    // which every hull row vanishes.
    let mut chosen = hull_pivots.clone();
    let mut rank = gen.select_columns(&chosen).rank();
    if rank != l {
        return Err(Error::NonOrthonormalizable(
            "hull pivots are not independent in the code".into(),
        ));
    }
    for c in 0..n {
        if rank == k {
            break;
        }
        if chosen.contains(&c) || (0..l).any(|i| !hull.get(i, c).is_zero()) {
            continue;
        }
        chosen.push(c);
        let r = gen.select_columns(&chosen).rank();
        if r > rank {
            rank = r;
        } else {
            chosen.pop();
        }
    }
    if rank != k {
        return Err(Error::NonOrthonormalizable(format!(
            "only {} of {} information columns avoid the hull support",
            rank - l,
            k - l
        )));
    }
    let mut perm = chosen.clone();
    perm.extend((0..n).filter(|c| !chosen.contains(c)));

    let permuted = LinearCode::new(&gen.select_columns(&perm));
    let generator = permuted.gen().clone();
    let form = StandardForm {
        code: permuted,
        perm,
        l,
        generator,
    };
    let f = code.field();
    let minus_id = GfMatrix::identity(f, l).map(|e| f.neg(e));
    let top: Vec<usize> = (0..l).collect();
    let hull_rows = form.generator.select_rows(&top);
    if hull_rows != hull.select_columns(&form.perm).row_basis() || form.hull_gram() != minus_id {
        return Err(Error::NonOrthonormalizable(
            "leading rows do not form a normalized hull basis".into(),
        ));
    }
    Ok(form)
}

/// The scalars applied by [`reduce_hull`], off the all-ones vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingPlan {
    pub positions: Vec<usize>,
    #[serde(rename = "lambda_encodings")]
    pub lambdas: Vec<Elt>,
    #[serde(skip)]
    pub l_target: usize,
}

impl ScalingPlan {
    /// The full weight-n scaling vector.
    pub fn vector(&self, n: usize) -> Vec<Elt> {
        let mut v = vec![Elt::ONE; n];
        for (&p, &l) in self.positions.iter().zip(&self.lambdas) {
            v[p] = l;
        }
        v
    }
}

/// Nonzero scalars with `λ^{q+1} ≠ 1`, smallest encoding first.
fn nontrivial_norm_scalars(field: &Field) -> Vec<Elt> {
    field
        .elements()
        .filter(|&e| !e.is_zero() && field.norm(e) != Elt::ONE)
        .collect()
}

/// Returns `v·C` with Hermitian hull dimension exactly `l_target`.
pub fn reduce_hull(code: &LinearCode, l_target: usize) -> Result<(LinearCode, ScalingPlan)> {
    let field = code.field();
    if field.q() < 3 {
        return Err(Error::UnsupportedField(field.q()));
    }
    let hull = code.hermitian_hull();
    let l = hull.hull_dim;
    if l_target > l {
        return Err(Error::TargetTooLarge {
            target: l_target,
            hull: l,
        });
    }
    if l_target == l {
        return Ok((
            code.clone(),
            ScalingPlan {
                l_target,
                ..ScalingPlan::default()
            },
        ));
    }
    let scalars = nontrivial_norm_scalars(field);
    let pivots = hull.hull_basis.rref().pivots;
    let positions: Vec<usize> = pivots[..l - l_target].to_vec();
    let lambdas = vec![scalars[0]; positions.len()];
    let plan = ScalingPlan {
        positions,
        lambdas,
        l_target,
    };
    let scaled = code.scale(&plan.vector(code.n()))?;
    if scaled.hull_dim() == l_target {
        return Ok((scaled, plan));
    }
    greedy_reduce(code, l_target, &scalars)
}

/// Fallback: lower the hull one coordinate at a time.
fn greedy_reduce(
    code: &LinearCode,
    l_target: usize,
    scalars: &[Elt],
) -> Result<(LinearCode, ScalingPlan)> {
    let n = code.n();
    let field = code.field();
    let mut v = vec![Elt::ONE; n];
    let mut current = code.clone();
    let mut h = current.hull_dim();
    'outer: while h > l_target {
        for pos in 0..n {
            for &lambda in scalars {
                let mut step = vec![Elt::ONE; n];
                step[pos] = lambda;
                let trial = current.scale(&step)?;
                if trial.hull_dim() + 1 == h {
                    v[pos] = field.mul(v[pos], lambda);
                    current = trial;
                    h -= 1;
                    continue 'outer;
                }
            }
        }
        return Err(Error::ReductionFailed {
            target: l_target,
            got: h,
        });
    }
    let (positions, lambdas) = v
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != Elt::ONE)
        .map(|(i, &e)| (i, e))
        .unzip();
    Ok((
        current,
        ScalingPlan {
            positions,
            lambdas,
            l_target,
        },
    ))
}
