//! Linear codes over GF(q²): duals, Hermitian hulls, coordinate scaling,
//! puncturing and shortening, and exhaustive distance computations.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{next_nonempty, parse_numbers, GfMatrix};
use crate::par;

/// Default number of codeword (or column-subset) evaluations allowed in an
/// exhaustive search.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// An `[n, k]` code stored by its RREF generator matrix, so equal codes have
/// identical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: GfMatrix,
}

/// Hermitian hull of a code, together with whatever lower bounds the
/// constructing family claims for it.
#[derive(Clone, Debug)]
pub struct HullReport {
    pub hull_dim: usize,
    pub hull_basis: GfMatrix,
    /// Rational bound asserted for the family, if any.
    pub bound_claimed: Option<Ratio<i64>>,
    /// Count of common monomials, when the family has one.
    pub bound_count: Option<usize>,
    /// `hull_dim` meets every bound present.
    pub oracle_ok: bool,
}

impl HullReport {
    pub fn with_bounds(mut self, claimed: Option<Ratio<i64>>, count: Option<usize>) -> Self {
        self.bound_claimed = claimed;
        self.bound_count = count;
        let h = self.hull_dim as i64;
        self.oracle_ok = claimed.is_none_or(|b| h >= b.ceil().to_integer())
            && count.is_none_or(|c| self.hull_dim >= c);
        self
    }

    /// Smallest integer the claimed bound forces, clamped at zero.
    pub fn claimed_floor_dim(&self) -> usize {
        self.bound_claimed
            .map_or(0, |b| b.ceil().to_integer().max(0) as usize)
    }
}

impl LinearCode {
    /// Code spanned by the rows of `gen`; dependent rows are discarded.
    pub fn new(gen: &GfMatrix) -> Self {
        LinearCode {
            gen: gen.row_basis(),
        }
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: GfMatrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: GfMatrix::identity(field, n),
        }
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn gen(&self) -> &GfMatrix {
        &self.gen
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn contains(&self, word: &[Elt]) -> bool {
        let f = self.field();
        let Ok(w) = GfMatrix::from_rows(f, self.n(), vec![word.to_vec()]) else {
            return false;
        };
        self.gen.stack(&w).is_ok_and(|m| m.rank() == self.k())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.gen
            .stack(&other.gen)
            .is_ok_and(|m| m.rank() == other.k())
    }

    pub fn euclidean_dual(&self) -> LinearCode {
        LinearCode {
            gen: self.gen.nullspace(),
        }
    }

    /// Component-wise q-th power image `C^q`.
    pub fn conjugate(&self) -> LinearCode {
        let f = self.field().clone();
        LinearCode {
            gen: self.gen.map(|e| f.frobenius(e)),
        }
    }

    /// `C^{⊥_H} = (C^⊥)^q`.
    pub fn hermitian_dual(&self) -> LinearCode {
        self.euclidean_dual().conjugate()
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(LinearCode {
            gen: self.gen.rowspace_meet(&other.gen)?,
        })
    }

    /// `C ∩ C^{⊥_H}`, without family bounds.
    pub fn hermitian_hull(&self) -> HullReport {
        let basis = self
            .gen
            .rowspace_meet(&self.hermitian_dual().gen)
            .expect("dual has the same length and field");
        HullReport {
            hull_dim: basis.rows(),
            hull_basis: basis,
            bound_claimed: None,
            bound_count: None,
            oracle_ok: true,
        }
    }

    pub fn hull_dim(&self) -> usize {
        self.hermitian_hull().hull_dim
    }

    /// `v·C`: column `i` multiplied by `v[i]`.
    pub fn scale(&self, v: &[Elt]) -> Result<LinearCode> {
        if let Some(i) = v.iter().position(|e| e.is_zero()) {
            return Err(Error::ZeroScalar(i));
        }
        Ok(LinearCode::new(&self.gen.scale_columns(v)?))
    }

    fn check_positions(&self, positions: &[usize]) -> Result<Vec<usize>> {
        let mut s = positions.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&i| i >= self.n()) {
            return Err(Error::DimensionMismatch(format!(
                "position {bad} outside length {}",
                self.n()
            )));
        }
        Ok(s)
    }

    fn kept_positions(&self, removed: &[usize]) -> Vec<usize> {
        (0..self.n())
            .filter(|i| removed.binary_search(i).is_err())
            .collect()
    }

    /// Deletes the coordinates in `positions`.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let s = self.check_positions(positions)?;
        Ok(LinearCode::new(
            &self.gen.select_columns(&self.kept_positions(&s)),
        ))
    }

    /// Codewords vanishing on `positions`, with those coordinates deleted.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode> {
        let s = self.check_positions(positions)?;
        let kept = self.kept_positions(&s);
        let messages = self.gen.select_columns(&s).transpose().nullspace();
        if messages.rows() == 0 {
            return Ok(LinearCode::zero(self.field(), kept.len()));
        }
        let sub = messages.mul(&self.gen)?;
        Ok(LinearCode::new(&sub.select_columns(&kept)))
    }

    /// Span of all coordinate-wise products of pairs of generator rows.
    pub fn schur_square(&self) -> LinearCode {
        let f = self.field();
        let k = self.k();
        let mut rows = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                let a = self.gen.row(i);
                let b = self.gen.row(j);
                rows.push(a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect());
            }
        }
        LinearCode::new(&GfMatrix::from_rows(f, self.n(), rows).expect("rows of length n"))
    }

    /// Text form: field header, `n k`, then the generator matrix.
    pub fn to_text(&self) -> String {
        format!(
            "{}\n{} {}\n{}",
            self.field().header(),
            self.n(),
            self.k(),
            self.gen.to_text()
        )
    }

    pub fn parse_text(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines();
        let header =
            next_nonempty(&mut lines).ok_or_else(|| Error::Parse("empty code file".into()))?;
        let field = crate::field::FieldTower::parse_header(header)?;
        let nk = next_nonempty(&mut lines).ok_or_else(|| Error::Parse("missing `n k`".into()))?;
        let nk = parse_numbers(nk)?;
        let [n, k] = nk[..] else {
            return Err(Error::Parse(format!("expected `n k`, got {nk:?}")));
        };
        let gen = GfMatrix::parse_lines(&field, &mut lines)?;
        if gen.cols() != n as usize || gen.rows() != k as usize {
            return Err(Error::Parse(format!(
                "declared [{n},{k}] but matrix is {}x{}",
                gen.rows(),
                gen.cols()
            )));
        }
        let code = LinearCode::new(&gen);
        if code.k() != k as usize {
            return Err(Error::Parse(format!(
                "generator has rank {} but k = {k}",
                code.k()
            )));
        }
        Ok(code)
    }
}

pub(crate) fn weight(word: &[Elt]) -> usize {
    word.iter().filter(|e| !e.is_zero()).count()
}

/// `base^exp`, saturating at `u128::MAX`.
fn sat_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Number of nonzero codewords an exhaustive distance search visits.
pub fn enumeration_count(code: &LinearCode) -> u128 {
    sat_pow(u128::from(code.field().order()), code.k()).saturating_sub(1)
}

/// Exact minimum Hamming weight by enumerating every nonzero message.
///
/// Only messages whose leading nonzero coefficient is 1 are visited, which
/// covers every codeword up to a nonzero scalar.
pub fn min_distance(code: &LinearCode, budget: u128) -> Result<usize> {
    let k = code.k();
    if k == 0 {
        return Err(Error::EmptyCode);
    }
    let required = enumeration_count(code);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let f = code.field();
    let n = code.n();
    let gen = code.gen();
    if k == 1 {
        return Ok(weight(gen.row(0)));
    }
    let order = f.order();
    // deltas[j][a] = ((a+1) - a)·row_j, with a+1 wrapping to 0 after the last
    // encoding; stepping digit j from a to its successor adds this row.
    let deltas: Vec<Vec<Vec<Elt>>> = (0..k)
        .map(|j| {
            (0..order)
                .map(|a| {
                    let next = if a + 1 == order { 0 } else { a + 1 };
                    let d = f.sub(Elt(next), Elt(a));
                    gen.row(j).iter().map(|&x| f.mul(d, x)).collect()
                })
                .collect()
        })
        .collect();

    let mut tasks: Vec<(usize, Option<u32>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 == k {
            tasks.push((lead, None));
        } else {
            tasks.extend((0..order).map(|v| (lead, Some(v))));
        }
    }
    let best = par::min(&tasks, |&(lead, first)| {
        let mut word = gen.row(lead).to_vec();
        let free_from = match first {
            None => k,
            Some(v) => {
                let row = gen.row(lead + 1);
                for c in 0..n {
                    word[c] = f.add(word[c], f.mul(Elt(v), row[c]));
                }
                lead + 2
            }
        };
        Some(scan_tail(f, &deltas, word, free_from..k, order))
    });
    Ok(best.expect("at least one task"))
}

fn scan_tail(
    f: &Field,
    deltas: &[Vec<Vec<Elt>>],
    mut word: Vec<Elt>,
    free: std::ops::Range<usize>,
    order: u32,
) -> usize {
    let free: Vec<usize> = free.collect();
    let mut digits = vec![0u32; free.len()];
    let mut best = weight(&word);
    loop {
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return best;
            }
            let old = digits[pos];
            let delta = &deltas[free[pos]][old as usize];
            for (w, &d) in word.iter_mut().zip(delta) {
                *w = f.add(*w, d);
            }
            let new = if old + 1 == order { 0 } else { old + 1 };
            digits[pos] = new;
            if new != 0 {
                break;
            }
            pos += 1;
        }
        best = best.min(weight(&word));
    }
}

/// Whether `code` meets the Singleton bound `d = n − k + 1`.
///
/// Uses the k-column minor test when `C(n, k)` fits the budget, otherwise an
/// exhaustive distance search.
pub fn is_mds(code: &LinearCode, budget: u128) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    if k == 0 || k == n {
        return Ok(true);
    }
    let subsets = binomial(n, k);
    if subsets <= budget {
        return Ok(all_minors_nonsingular(code));
    }
    let words = enumeration_count(code);
    if words <= budget {
        return Ok(min_distance(code, budget)? == n - k + 1);
    }
    Err(Error::BudgetExceeded {
        required: subsets.min(words),
        budget,
    })
}

/// Every k×k column submatrix of the generator is invertible.
pub fn all_minors_nonsingular(code: &LinearCode) -> bool {
    all_columns_independent(code.gen(), code.k())
}

/// Every set of `k` columns of `m` is linearly independent.
fn all_columns_independent(m: &GfMatrix, k: usize) -> bool {
    let n = m.cols();
    if k == 0 {
        return true;
    }
    if k > m.rows() {
        return false;
    }
    let firsts: Vec<usize> = (0..=n - k).collect();
    par::all(&firsts, |&first| {
        let mut idx: Vec<usize> = std::iter::once(first).chain(first + 1..first + k).collect();
        loop {
            if m.select_columns(&idx).rank() != k {
                return false;
            }
            // Next (k-1)-subset of first+1..n in lexicographic order.
            let mut i = k - 1;
            loop {
                if i == 0 {
                    return true;
                }
                if idx[i] < n - (k - i) {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                i -= 1;
            }
        }
    })
}
