//! Small finite fields by lookup tables.
//!
//! `GF(p^n)` is `F_p[x]/(f)` for the first monic primitive polynomial `f`
//! of degree `n` in the order of coefficient vectors `(c_0, ..., c_{n-1})`
//! read as base-`p` numbers. Elements are the integers `0..q`, whose
//! base-`p` digits are polynomial coefficients, so `p^i` is `x^i` and `1`
//! is the unit.

use crate::error::{Error, Result};
use crate::modp::{prime_divisors, primitive_root};

pub const MAX_FIELD: usize = 64;

#[derive(Debug, Clone)]
pub struct Field {
    p: usize,
    n: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    /// `exp[i] = w^i` for the primitive element `w`.
    exp: Vec<u16>,
    log: Vec<u16>,
    /// Coefficients `c_0..c_{n-1}` of the reduction `x^n = -sum c_i x^i`;
    /// empty for prime fields.
    modulus: Vec<usize>,
}

/// Splits `q = p^n`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let ps = prime_divisors(q as u64);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0] as usize;
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    Some((p, n))
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidSpec(format!("{} is not a prime power", q)))?;
        if q > MAX_FIELD {
            return Err(Error::InvalidSpec(format!("field size {} exceeds {}", q, MAX_FIELD)));
        }
        let add = (0..q * q)
            .map(|ab| {
                let (mut a, mut b) = (ab / q, ab % q);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..n {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out as u16
            })
            .collect();
        let (modulus, w) = if n == 1 {
            (Vec::new(), primitive_root(p as u64) as usize)
        } else {
            (first_primitive_modulus(p, n), p)
        };
        let mut field = Field {
            p,
            n,
            q,
            add,
            mul: Vec::new(),
            exp: Vec::new(),
            log: vec![0; q],
            modulus,
        };
        let mut exp = Vec::with_capacity(q - 1);
        let mut x = 1usize;
        for i in 0..q - 1 {
            exp.push(x as u16);
            field.log[x] = i as u16;
            x = field.mul_slow(x, w);
        }
        debug_assert_eq!(x, 1);
        field.exp = exp;
        let mut mul = vec![0u16; q * q];
        for a in 1..q {
            for b in 1..q {
                let e = (field.log[a] as usize + field.log[b] as usize) % (q - 1);
                mul[a * q + b] = field.exp[e];
            }
        }
        field.mul = mul;
        Ok(field)
    }

    fn digits(&self, mut a: usize) -> Vec<usize> {
        (0..self.n)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Polynomial multiplication modulo the defining polynomial.
    fn mul_slow(&self, a: usize, b: usize) -> usize {
        if self.n == 1 {
            return a * b % self.p;
        }
        let d = mul_poly_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.from_digits(&d)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        let e = (self.q - 1 - self.log[a] as usize) % (self.q - 1);
        self.exp[e] as usize
    }

    /// `w^k` for the fixed primitive element `w`.
    pub fn primitive_power(&self, k: usize) -> usize {
        self.exp[k % (self.q - 1)] as usize
    }

    /// Additive basis `1, x, ..., x^{n-1}`.
    pub fn basis(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.p.pow(i as u32)).collect()
    }
}

/// `a * b mod (x^n + sum c_i x^i)` over `F_p`, coefficient vectors of length
/// `n`.
fn mul_poly_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let n = modulus.len();
    let mut prod = vec![0usize; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (n..2 * n).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // x^d = x^{d-n} * x^n = -x^{d-n} sum m_i x^i
        for (i, &m) in modulus.iter().enumerate() {
            prod[d - n + i] = (prod[d - n + i] + (p - c) * m) % p;
        }
    }
    prod.truncate(n);
    prod
}

/// First monic `f` of degree `n >= 2` for which `x` has order `p^n - 1` modulo
/// `f`. Such an `f` is irreducible: otherwise the quotient ring has zero
/// divisors and fewer than `p^n - 1` units.
fn first_primitive_modulus(p: usize, n: usize) -> Vec<usize> {
    let q = p.pow(n as u32);
    let order = (q - 1) as u64;
    let qs = prime_divisors(order);
    for code in 0..q {
        let mut m = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            m.push(c % p);
            c /= p;
        }
        if m[0] == 0 {
            continue;
        }
        let pow = |e: u64| -> Vec<usize> {
            let mut result = vec![0usize; n];
            result[0] = 1;
            let mut base = vec![0usize; n];
            base[1] = 1;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    result = mul_poly_mod(&result, &base, &m, p);
                }
                base = mul_poly_mod(&base, &base, &m, p);
                e >>= 1;
            }
            result
        };
        let mut one = vec![0usize; n];
        one[0] = 1;
        if pow(order) == one && qs.iter().all(|&r| pow(order / r) != one) {
            return m;
        }
    }
    unreachable!("primitive polynomials exist for every degree")
}
