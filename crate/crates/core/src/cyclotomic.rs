//! Exact arithmetic in the cyclotomic integers `Z[zeta_e]`.
//!
//! A value of conductor `e` is stored as a length-`e` coefficient vector
//! over `1, zeta_e, .., zeta_e^(e-1)`, reduced modulo the cyclotomic
//! polynomial `Phi_e` so that only the first `phi(e)` entries can be
//! nonzero. Since `1, .., zeta_e^(phi(e)-1)` is a basis of `Q(zeta_e)`, two
//! values of the same conductor are equal exactly when their vectors are.
//! Values of different conductors are compared after lifting both to the
//! least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::perm::{gcd, lcm};

pub const DEFAULT_MAX_CONDUCTOR: u32 = 5040;

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `a op b` with both operands lifted to the common conductor.
pub fn arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic> {
    arith_bounded(a, b, op, DEFAULT_MAX_CONDUCTOR)
}

pub fn arith_bounded(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp, bound: u32) -> Result<Cyclotomic> {
    let e = lcm(a.conductor as u64, b.conductor as u64);
    if e > bound as u64 {
        return Err(Error::ConductorOverflow { conductor: e, bound });
    }
    let e = e as u32;
    let mut acc = CycAccumulator::new(e);
    match op {
        ArithOp::Add => {
            acc.add_scaled(1, a)?;
            acc.add_scaled(1, b)?;
        }
        ArithOp::Sub => {
            acc.add_scaled(1, a)?;
            acc.add_scaled(-1, b)?;
        }
        ArithOp::Mul => acc.add_product(1, a, b)?,
    }
    acc.finish()
}

impl Cyclotomic {
    pub fn integer(c: i64) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![c],
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `zeta_e^k`
    pub fn zeta(e: u32, k: i64) -> Result<Self> {
        assert!(e > 0, "conductor must be positive");
        let mut raw = vec![0i64; e as usize];
        raw[k.rem_euclid(e as i64) as usize] = 1;
        Self::from_raw(e, raw)
    }

    /// Reduces `sum raw[k] zeta_e^k` (any length) to canonical form.
    pub fn from_raw(e: u32, raw: Vec<i64>) -> Result<Self> {
        assert!(e > 0, "conductor must be positive");
        let e_us = e as usize;
        let mut r = if raw.len() == e_us {
            raw
        } else {
            let mut folded = vec![0i64; e_us];
            for (k, c) in raw.into_iter().enumerate() {
                let slot = &mut folded[k % e_us];
                *slot = slot.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
            }
            folded
        };
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        for k in (deg..e_us).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            // x^k = x^(k-deg) * (Phi - lower terms)
            let shift = k - deg;
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    let t = c.checked_mul(pj).ok_or(Error::ArithmeticOverflow)?;
                    r[shift + j] = r[shift + j].checked_sub(t).ok_or(Error::ArithmeticOverflow)?;
                }
            }
            r[k] = 0;
        }
        Ok(Cyclotomic { conductor: e, coeffs: r })
    }

    #[inline]
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients, length equal to the conductor.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The same value written over a multiple `f` of the conductor.
    pub fn lift(&self, f: u32) -> Result<Self> {
        if f % self.conductor != 0 {
            return Err(Error::InternalInconsistency(format!(
                "cannot lift conductor {} to {}",
                self.conductor, f
            )));
        }
        if f == self.conductor {
            return Ok(self.clone());
        }
        let step = (f / self.conductor) as usize;
        let mut raw = vec![0i64; f as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c;
        }
        Self::from_raw(f, raw)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Mul)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Image under `zeta_e -> zeta_e^k`.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self> {
        let e = self.conductor as i64;
        if gcd(k.rem_euclid(e) as u64, e as u64) != 1 {
            return Err(Error::NotCoprime {
                k,
                conductor: self.conductor,
            });
        }
        let mut raw = vec![0i64; e as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                raw[(j as i64 * k).rem_euclid(e) as usize] += c;
            }
        }
        Self::from_raw(self.conductor, raw)
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois_conjugate(self.conductor as i64 - 1)
            .expect("e-1 is coprime to e")
    }

    pub fn to_rational_integer(&self) -> Result<i64> {
        if self.coeffs[1..].iter().any(|&c| c != 0) {
            return Err(Error::NotRational(self.to_string()));
        }
        Ok(self.coeffs[0])
    }

    /// Key for deterministic ordering: conductor first, then coefficients.
    pub fn canonical_key(&self) -> (u32, &[i64]) {
        (self.conductor, &self.coeffs)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let e = lcm(self.conductor as u64, other.conductor as u64) as u32;
        match (self.lift(e), other.lift(e)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k == 0 {
                terms.push(c.to_string());
            } else {
                terms.push(format!("{}*z({})^{}", c, self.conductor, k));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parses the rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("{}: '{}'", msg, s),
        };
        let mut terms: Vec<(u32, i64, i64)> = Vec::new();
        for term in s.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            match term.split_once("*z(") {
                None => {
                    let c: i64 = term.parse().map_err(|_| bad("bad integer"))?;
                    terms.push((1, c, 0));
                }
                Some((c, rest)) => {
                    let c: i64 = c.parse().map_err(|_| bad("bad coefficient"))?;
                    let (e, k) = rest.split_once(")^").ok_or_else(|| bad("expected ')^'"))?;
                    let e: u32 = e.parse().map_err(|_| bad("bad conductor"))?;
                    let k: i64 = k.parse().map_err(|_| bad("bad exponent"))?;
                    if e == 0 {
                        return Err(bad("zero conductor"));
                    }
                    terms.push((e, c, k));
                }
            }
        }
        let e = terms.iter().fold(1u64, |acc, t| lcm(acc, t.0 as u64));
        if e > DEFAULT_MAX_CONDUCTOR as u64 {
            return Err(Error::ConductorOverflow {
                conductor: e,
                bound: DEFAULT_MAX_CONDUCTOR,
            });
        }
        let e = e as u32;
        let mut raw = vec![0i64; e as usize];
        for (te, c, k) in terms {
            let idx = (k * (e / te) as i64).rem_euclid(e as i64) as usize;
            raw[idx] = raw[idx].checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        }
        Cyclotomic::from_raw(e, raw)
    }
}

/// Unreduced running sum in `Z[x]/(x^e - 1)`; reduced once at the end.
#[derive(Debug, Clone)]
pub struct CycAccumulator {
    conductor: u32,
    raw: Vec<i64>,
}

impl CycAccumulator {
    pub fn new(conductor: u32) -> Self {
        CycAccumulator {
            conductor,
            raw: vec![0; conductor as usize],
        }
    }

    fn check(&self, a: &Cyclotomic) -> Result<usize> {
        if self.conductor % a.conductor != 0 {
            return Err(Error::InternalInconsistency(format!(
                "conductor {} does not divide accumulator conductor {}",
                a.conductor, self.conductor
            )));
        }
        Ok((self.conductor / a.conductor) as usize)
    }

    /// Adds `w * a`.
    pub fn add_scaled(&mut self, w: i64, a: &Cyclotomic) -> Result<()> {
        let sa = self.check(a)?;
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                let t = c.checked_mul(w).ok_or(Error::ArithmeticOverflow)?;
                let slot = &mut self.raw[i * sa];
                *slot = slot.checked_add(t).ok_or(Error::ArithmeticOverflow)?;
            }
        }
        Ok(())
    }

    /// Adds `w * a * b`.
    pub fn add_product(&mut self, w: i64, a: &Cyclotomic, b: &Cyclotomic) -> Result<()> {
        let sa = self.check(a)?;
        let sb = self.check(b)?;
        let e = self.conductor as usize;
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let wa = ca.checked_mul(w).ok_or(Error::ArithmeticOverflow)?;
            let base = i * sa;
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let t = wa.checked_mul(cb).ok_or(Error::ArithmeticOverflow)?;
                let slot = &mut self.raw[(base + j * sb) % e];
                *slot = slot.checked_add(t).ok_or(Error::ArithmeticOverflow)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Cyclotomic> {
        Cyclotomic::from_raw(self.conductor, self.raw)
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut xd = vec![0i64; d as usize + 1];
        xd[0] = -1;
        xd[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &xd),
            -1 => den = poly_mul(&den, &xd),
            _ => {}
        }
    }
    let phi = Arc::new(poly_div_exact(&num, &den));
    phi_cache().write().expect("cache lock").insert(n, phi.clone());
    phi
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                r[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact division");
    q
}
