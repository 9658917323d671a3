//! The field tower GF(p) ⊂ GF(q) ⊂ GF(q²), q = p^m.
//!
//! Elements of GF(q²) are polynomials of degree < 2m over GF(p), reduced
//! modulo a fixed monic irreducible polynomial and packed into an integer as
//! little-endian base-p digits. The packing is bijective, so `Elt(0)` is zero,
//! `Elt(1)` is one and every integer in `[0, q²)` names exactly one element.
//!
//! Towers with q² ≤ 2^16 carry log/antilog tables; larger towers fall back to
//! schoolbook polynomial arithmetic with identical results.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order, p^{2m} ≤ 2^31.
pub const MAX_ORDER: u64 = 1 << 31;

const TABLE_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 512;

/// A GF(q²) element in its canonical base-p digit encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elt(pub u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to an immutable tower.
pub type Field = Arc<FieldTower>;

/// Binary and unary field operations, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    /// Raise to a non-negative integer exponent.
    Pow(u64),
}

struct Tables {
    /// `exp[i] = g^i` for `i < 2(q²-1)`, doubled so products skip a reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

pub struct FieldTower {
    p: u32,
    m: u32,
    q: u32,
    order: u32,
    degree: usize,
    modulus: Vec<u32>,
    generator: Elt,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

/// Builds GF(p^{2m}) with the smallest monic irreducible modulus and the
/// smallest primitive element, both ordered by integer encoding.
pub fn build_tower(p: u32, m: u32) -> Result<Field> {
    FieldTower::build(p, m).map(Arc::new)
}

impl FieldTower {
    pub fn build(p: u32, m: u32) -> Result<Self> {
        let order = check_size(p, m)?;
        let degree = 2 * m as usize;
        let modulus = (0..order)
            .map(|e| {
                let mut c = to_digits(e, p, degree);
                c.push(1);
                c
            })
            .find(|c| poly::is_irreducible(c, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::assemble(p, m, order, modulus)
    }

    /// Builds the tower on a caller-supplied modulus `c_0, ..., c_{2m}`.
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        let order = check_size(p, m)?;
        let degree = 2 * m as usize;
        if modulus.len() != degree + 1
            || modulus[degree] != 1
            || modulus.iter().any(|&c| c >= p)
            || !poly::is_irreducible(modulus, p)
        {
            return Err(Error::BadModulus(format!("{modulus:?}")));
        }
        Self::assemble(p, m, order, modulus.to_vec())
    }

    fn assemble(p: u32, m: u32, order: u32, modulus: Vec<u32>) -> Result<Self> {
        let mut tower = FieldTower {
            p,
            m,
            q: p.pow(m),
            order,
            degree: 2 * m as usize,
            modulus,
            generator: Elt::ONE,
            tables: None,
        };
        let group = u64::from(order - 1);
        let primes = prime_factors(group);
        tower.generator = (1..order)
            .map(Elt)
            .find(|&g| primes.iter().all(|&r| tower.pow(g, group / r) != Elt::ONE))
            .expect("GF(q²)* is cyclic");
        if order <= TABLE_LIMIT {
            tower.tables = Some(tower.make_tables());
        }
        Ok(tower)
    }

    fn make_tables(&self) -> Tables {
        let n = self.order as usize;
        let mut exp = vec![0u32; 2 * (n - 1)];
        let mut log = vec![0u32; n];
        let mut x = Elt::ONE;
        for i in 0..n - 1 {
            exp[i] = x.0;
            exp[i + n - 1] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.generator);
        }
        let neg = (0..self.order).map(|a| self.neg_slow(Elt(a)).0).collect();
        let add = (self.order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..self.order {
                for b in 0..self.order {
                    t.push(self.add_slow(Elt(a), Elt(b)).0 as u16);
                }
            }
            t
        });
        Tables { exp, log, neg, add }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Size of the base field GF(q).
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Size of the full field, q².
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element of GF(q²)*.
    pub fn generator(&self) -> Elt {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.order).map(Elt)
    }

    pub fn contains(&self, a: Elt) -> bool {
        a.0 < self.order
    }

    /// Embeds an integer through GF(p).
    pub fn from_int(&self, i: i64) -> Elt {
        Elt(i.rem_euclid(i64::from(self.p)) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        match &self.tables {
            Some(Tables { add: Some(t), .. }) => {
                Elt(u32::from(t[(a.0 * self.order + b.0) as usize]))
            }
            _ if self.p == 2 => Elt(a.0 ^ b.0),
            _ => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        match &self.tables {
            Some(t) => Elt(t.neg[a.0 as usize]),
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        match &self.tables {
            Some(t) => Elt(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Elt(t.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
            }
            None => self.pow(a, u64::from(self.order) - 2),
        })
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.is_zero() {
            return Elt::ZERO;
        }
        if let Some(t) = &self.tables {
            let group = u64::from(self.order - 1);
            let l = u64::from(t.log[a.0 as usize]) * (e % group) % group;
            return Elt(t.exp[l as usize]);
        }
        let (mut base, mut e, mut acc) = (a, e, Elt::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Dispatches one of the field operations by name.
    pub fn arith(&self, a: Elt, b: Elt, op: Op) -> Result<Elt> {
        Ok(match op {
            Op::Add => self.add(a, b),
            Op::Sub => self.sub(a, b),
            Op::Mul => self.mul(a, b),
            Op::Div => self.div(a, b)?,
            Op::Neg => self.neg(a),
            Op::Inv => self.inv(a)?,
            Op::Pow(e) => self.pow(a, e),
        })
    }

    /// The q-power Frobenius map x ↦ x^q.
    #[inline]
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, u64::from(self.q))
    }

    /// The norm x ↦ x^{q+1} onto GF(q).
    pub fn norm(&self, a: Elt) -> Elt {
        self.pow(a, u64::from(self.q) + 1)
    }

    /// True when `a` lies in the subfield GF(q).
    pub fn in_base_field(&self, a: Elt) -> bool {
        self.frobenius(a) == a
    }

    /// Nonzero elements of GF(q), in encoding order.
    pub fn base_field_units(&self) -> Vec<Elt> {
        self.elements()
            .filter(|&a| !a.is_zero() && self.in_base_field(a))
            .collect()
    }

    /// Smallest encoding `η` with `η^{q+1} = b`, if any.
    pub fn norm_preimage(&self, b: Elt) -> Option<Elt> {
        self.elements().find(|&e| self.norm(e) == b)
    }

    /// The `n` distinct n-th roots of unity `g^{(q²-1)/n·j}`, `j = 0..n`.
    pub fn subgroup_of_order(&self, n: u32) -> Result<Vec<Elt>> {
        let group = self.order - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::NotADivisor { n, order: group });
        }
        let step = self.pow(self.generator, u64::from(group / n));
        let mut out = Vec::with_capacity(n as usize);
        let mut x = Elt::ONE;
        for _ in 0..n {
            out.push(x);
            x = self.mul(x, step);
        }
        Ok(out)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elt) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = u64::from(self.order - 1);
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == Elt::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Header line identifying the field in exported artifacts.
    pub fn header(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        format!(
            "GF({}^{}) p={} modulus={}",
            self.p,
            self.degree,
            self.p,
            coeffs.join(",")
        )
    }

    /// Rebuilds a tower from a [`header`](Self::header) line.
    pub fn parse_header(line: &str) -> Result<Field> {
        let bad = || Error::Parse(format!("bad field header: {line:?}"));
        let mut p = None;
        let mut modulus = None;
        for tok in line.split_whitespace().skip(1) {
            if let Some(v) = tok.strip_prefix("p=") {
                p = Some(v.parse::<u32>().map_err(|_| bad())?);
            } else if let Some(v) = tok.strip_prefix("modulus=") {
                let c: std::result::Result<Vec<u32>, _> =
                    v.split(',').map(str::parse::<u32>).collect();
                modulus = Some(c.map_err(|_| bad())?);
            }
        }
        if !line.starts_with("GF(") {
            return Err(bad());
        }
        let (p, modulus) = (p.ok_or_else(bad)?, modulus.ok_or_else(bad)?);
        if modulus.len() < 3 || (modulus.len() - 1) % 2 != 0 {
            return Err(bad());
        }
        let m = ((modulus.len() - 1) / 2) as u32;
        FieldTower::with_modulus(p, m, &modulus).map(Arc::new)
    }

    fn add_slow(&self, a: Elt, b: Elt) -> Elt {
        let p = u64::from(self.p);
        let (mut a, mut b) = (u64::from(a.0), u64::from(b.0));
        let (mut r, mut w) = (0u64, 1u64);
        for _ in 0..self.degree {
            r += ((a % p + b % p) % p) * w;
            w *= p;
            a /= p;
            b /= p;
        }
        Elt(r as u32)
    }

    fn neg_slow(&self, a: Elt) -> Elt {
        let p = u64::from(self.p);
        let mut a = u64::from(a.0);
        let (mut r, mut w) = (0u64, 1u64);
        for _ in 0..self.degree {
            r += ((p - a % p) % p) * w;
            w *= p;
            a /= p;
        }
        Elt(r as u32)
    }

    fn mul_slow(&self, a: Elt, b: Elt) -> Elt {
        let x = to_digits(a.0, self.p, self.degree);
        let y = to_digits(b.0, self.p, self.degree);
        let prod = poly::rem(&poly::mul(&x, &y, self.p), &self.modulus, self.p);
        Elt(from_digits(&prod, self.p))
    }
}

fn check_size(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (0..2 * m).try_fold(1u64, |acc, _| {
        let next = acc * u64::from(p);
        (next <= MAX_ORDER).then_some(next)
    });
    match order {
        Some(o) if m >= 1 => Ok(o as u32),
        _ => Err(Error::SizeExceeded { p, m }),
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = u64::from(n);
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn to_digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(v % p);
        v /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Dense polynomials over GF(p), little-endian coefficient vectors.
mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut base, mut e, mut acc) = (u64::from(a), u64::from(p) - 2, 1u64);
        let p = u64::from(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = u64::from(p);
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = u64::from(inv_mod(m[dm], p));
        let p64 = u64::from(p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = u64::from(*r.last().unwrap()) * lead_inv % p64;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * u64::from(mi) % p64;
                r[shift + i] = ((u64::from(r[shift + i]) + p64 - sub) % p64) as u32;
            }
            r = trim(r);
        }
        r.resize(dm, 0);
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect()
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = trim(rem(&a, &b, p));
            a = b;
            b = r;
        }
        a
    }

    /// Rabin-style test: no factor of degree ≤ deg/2, checked through
    /// gcd(f, x^{p^i} − x) for each i up to deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, &f, p);
        for _ in 0..deg / 2 {
            // h ← h^p mod f
            let mut acc = rem(&[1], &f, p);
            for _ in 0..p {
                acc = rem(&mul(&acc, &h, p), &f, p);
            }
            h = acc;
            let g = gcd(&f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
