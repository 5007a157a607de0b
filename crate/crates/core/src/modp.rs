//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2^32`.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero");
    pow_mod(a, p - 2, p)
}

/// Smallest generator of `F_p^*`.
pub(crate) fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields are cyclic")
}

/// Smallest prime `p` with `p = 1 (mod exponent)` and `p > 2 sqrt(order)`.
pub fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

/// Row-reduces in place; returns the pivot column of each nonzero row. The
/// matrix is left in reduced row echelon form with zero rows removed.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mul_mod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a square or rectangular `M` given by rows.
pub(crate) fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)`, lowest degree first, via
/// reduction to upper Hessenberg form.
pub(crate) fn char_poly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for col in 0..n.saturating_sub(2) {
        let target = col + 1;
        let Some(piv) = (target..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != target {
            h.swap(piv, target);
            for row in h.iter_mut() {
                row.swap(piv, target);
            }
        }
        let inv = inv_mod(h[target][col], p);
        for j in target + 1..n {
            if h[j][col] == 0 {
                continue;
            }
            let u = mul_mod(h[j][col], inv, p);
            for c in 0..n {
                let sub = mul_mod(u, h[target][c], p);
                h[j][c] = (h[j][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(u, row[j], p);
                row[target] = (row[target] + add) % p;
            }
        }
    }
    // polys[m] = char poly of the leading m x m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 0..n {
        // (x - h[mm][mm]) * polys[mm]
        let prev = &polys[mm];
        let mut next = vec![0u64; mm + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - mul_mod(c, h[mm][mm], p)) % p;
        }
        let mut t = 1u64;
        for i in (0..mm).rev() {
            t = mul_mod(t, h[i + 1][i], p);
            let coef = mul_mod(h[i][mm], t, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

pub(crate) fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}
