//! Reference implementations that share nothing with the library beyond the
//! element encoding and the field's modulus.

#![allow(dead_code)]

use hullcraft::{Elt, Field, LinearCode};

/// GF(p^deg) as coefficient vectors reduced by schoolbook long division.
pub struct Naive {
    pub p: u32,
    pub deg: usize,
    pub modulus: Vec<u32>,
    pub order: u32,
    pub q: u32,
}

impl Naive {
    pub fn of(field: &Field) -> Naive {
        let modulus = field.modulus().to_vec();
        let deg = modulus.len() - 1;
        let p = field.p();
        Naive {
            p,
            deg,
            order: p.pow(deg as u32),
            q: p.pow(deg as u32 / 2),
            modulus,
        }
    }

    pub fn digits(&self, a: Elt) -> Vec<u32> {
        let mut x = a.0;
        (0..self.deg)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[u32]) -> Elt {
        Elt(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: Elt) -> Elt {
        let x = self.digits(a);
        let s: Vec<u32> = x.iter().map(|u| (self.p - u) % self.p).collect();
        self.pack(&s)
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let (x, y) = (self.digits(a), self.digits(b));
        let p = u64::from(self.p);
        let mut prod = vec![0u64; 2 * self.deg];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(u) * u64::from(v)) % p;
            }
        }
        // The modulus is monic, so subtract c·x^{i−deg}·m(x) from the top down.
        for i in (self.deg..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                let idx = i - self.deg + j;
                prod[idx] = (prod[idx] + (p - c) * u64::from(m)) % p;
            }
        }
        let low: Vec<u32> = prod[..self.deg].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        let mut acc = Elt(1);
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Inverse by search.
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        (1..self.order).map(Elt).find(|&b| self.mul(a, b) == Elt(1))
    }

    pub fn conj(&self, a: Elt) -> Elt {
        self.pow(a, u64::from(self.q))
    }

    pub fn herm(&self, x: &[Elt], y: &[Elt]) -> Elt {
        x.iter().zip(y).fold(Elt(0), |acc, (&a, &b)| {
            self.add(acc, self.mul(a, self.conj(b)))
        })
    }

    /// Rank by plain Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<Elt>]) -> usize {
        let mut m: Vec<Vec<Elt>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != Elt(0)) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv(m[rank][c]).unwrap();
            let pivot_row: Vec<Elt> = m[rank].iter().map(|&x| self.mul(x, inv)).collect();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[c] != Elt(0) {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.add(*x, self.neg(self.mul(f, y)));
                    }
                }
            }
            m[rank] = pivot_row;
            rank += 1;
        }
        rank
    }

    /// Every codeword of `code`, message digits in little-endian order.
    pub fn codewords(&self, code: &LinearCode) -> Vec<Vec<Elt>> {
        let k = code.k();
        let n = code.n();
        let rows = code.gen().row_vecs();
        let total = (self.order as u64).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut word = vec![Elt(0); n];
                for row in &rows {
                    let coeff = Elt((idx % u64::from(self.order)) as u32);
                    idx /= u64::from(self.order);
                    for (w, &g) in word.iter_mut().zip(row) {
                        *w = self.add(*w, self.mul(coeff, g));
                    }
                }
                word
            })
            .collect()
    }

    /// Hull dimension from the number of codewords orthogonal to every row.
    pub fn brute_hull_dim(&self, code: &LinearCode) -> usize {
        let rows = code.gen().row_vecs();
        let size = self
            .codewords(code)
            .iter()
            .filter(|w| rows.iter().all(|r| self.herm(w, r) == Elt(0)))
            .count() as u64;
        let mut h = 0;
        let mut x = 1u64;
        while x < size {
            x *= u64::from(self.order);
            h += 1;
        }
        assert_eq!(x, size, "hull size is not a power of the field order");
        h
    }

    /// `k − rank(G·Ḡᵀ)`.
    pub fn gram_hull_dim(&self, code: &LinearCode) -> usize {
        let rows = code.gen().row_vecs();
        let gram: Vec<Vec<Elt>> = rows
            .iter()
            .map(|a| rows.iter().map(|b| self.herm(a, b)).collect())
            .collect();
        rows.len() - self.rank(&gram)
    }

    pub fn brute_min_distance(&self, code: &LinearCode) -> usize {
        self.codewords(code)
            .iter()
            .map(|w| w.iter().filter(|&&x| x != Elt(0)).count())
            .filter(|&w| w > 0)
            .min()
            .unwrap()
    }
}

/// `|{ e ∈ exps : eq mod n ∈ targets }|`, recomputed for the tests.
pub fn monomials(
    q: usize,
    n: usize,
    exps: std::ops::RangeInclusive<usize>,
    lo: usize,
    hi: usize,
) -> usize {
    exps.filter(|&e| {
        let r = e * q % n;
        lo <= r && r <= hi
    })
    .count()
}

/// `ceil(num/den)` clamped at zero.
pub fn ceil_div(num: i64, den: i64) -> usize {
    if num <= 0 {
        0
    } else {
        ((num + den - 1) / den) as usize
    }
}
