//! Character tables by the Dixon-Schneider method.
//!
//! The class sums span the center of the group algebra; over `F_p` with
//! `p = 1 (mod exponent)` every irreducible character gives a common
//! eigenvector `w_i = |C_i| chi(g_i) / chi(1)` of the class matrices
//! `A_j[i][l] = a_{ijl}`. Once the eigenvectors are separated the degrees
//! follow from the first orthogonality relation, and each value is lifted
//! from `F_p` to `Z[zeta_o]` by counting eigenvalue multiplicities of the
//! representing matrix of `g`, which are integers in `[0, chi(1)]`.

use serde::{Deserialize, Serialize};

use crate::classes::{conjugacy_classes, ClassData};
use crate::cyclotomic::{CycAccumulator, Cyclotomic, DEFAULT_MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modp::{self, choose_prime, inv_mod, mul_mod, pow_mod};

/// Structure constants `a_{ijk}` of the class algebra.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    k: usize,
    data: Vec<u32>,
}

impl StructureConstants {
    /// Number of pairs `(x, y)` with `x` in `C_i`, `y` in `C_j` and `xy`
    /// equal to the fixed representative of `C_k`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(j * self.k + i) * self.k + k]
    }

    pub fn classes(&self) -> usize {
        self.k
    }
}

pub fn structure_constants(g: &PermGroup, cd: &ClassData) -> StructureConstants {
    let k = cd.len();
    let mut data = vec![0u32; k * k * k];
    for (l, &rep) in cd.representatives.iter().enumerate() {
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), rep);
            let i = cd.class_of(x);
            let j = cd.class_of(y);
            data[(j * k + i) * k + l] += 1;
        }
    }
    StructureConstants { k, data }
}

/// A single structure constant, counted directly.
pub fn class_multiplication_coefficient(g: &PermGroup, cd: &ClassData, i: usize, j: usize, k: usize) -> u32 {
    let target = cd.representatives[k];
    (0..g.order())
        .filter(|&x| cd.class_of(x) == i && cd.class_of(g.mul(g.inv(x), target)) == j)
        .count() as u32
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    classes: ClassData,
    exponent: u32,
    prime: u64,
    values: Vec<Vec<Cyclotomic>>,
    conjugates: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    derived_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStats {
    /// Sum of the degrees.
    pub t: u64,
    /// Number of irreducible characters.
    pub k: usize,
    /// Largest degree.
    pub b: u64,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    #[inline]
    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    #[inline]
    pub fn conj_value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.conjugates[chi][class]
    }

    pub fn row(&self, chi: usize) -> &[Cyclotomic] {
        &self.values[chi]
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    /// `[G : G']`, computed from the derived subgroup.
    pub fn derived_index(&self) -> usize {
        self.derived_index
    }

    pub fn stats(&self) -> TableStats {
        table_stats(self)
    }

    /// Kernel of a character as a union of classes.
    pub fn kernel_classes(&self, chi: usize) -> Vec<usize> {
        let deg = Cyclotomic::integer(self.degrees[chi] as i64);
        (0..self.classes.len()).filter(|&c| self.values[chi][c] == deg).collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order,
            exponent: self.exponent,
            class_sizes: self.classes.sizes.clone(),
            element_orders: self.classes.element_orders.clone(),
            rows: self
                .values
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    /// Text grid, one character per line.
    pub fn render_text(&self) -> String {
        self.to_json().render_text()
    }
}

fn class_letter(c: usize) -> String {
    let mut n = c;
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + (n % 26) as u8) as char);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s
}

/// JSON export of a character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub exponent: u32,
    pub class_sizes: Vec<usize>,
    pub element_orders: Vec<u32>,
    pub rows: Vec<Vec<String>>,
}

impl TableJson {
    /// Text grid, one character per line.
    pub fn render_text(&self) -> String {
        let ncols = self.class_sizes.len();
        let centralizers: Vec<String> = self.class_sizes.iter().map(|s| (self.order / s).to_string()).collect();
        let header: Vec<String> = (0..ncols)
            .map(|c| format!("{}{}", self.element_orders[c], class_letter(c)))
            .collect();
        let widths: Vec<usize> = (0..ncols)
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len(), centralizers[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |label: &str, items: &[String]| -> String {
            let mut s = format!("{:>6} ", label);
            for (c, it) in items.iter().enumerate() {
                s.push_str(&format!(" {:>w$}", it, w = widths[c]));
            }
            s.push('\n');
            s
        };
        let mut out = line("|C(g)|", &centralizers);
        out.push_str(&line("", &header));
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&line(&format!("X.{}", i + 1), r));
        }
        out
    }
}

pub fn table_stats(t: &CharacterTable) -> TableStats {
    TableStats {
        t: t.degrees.iter().sum(),
        k: t.degrees.len(),
        b: t.degrees.iter().copied().max().unwrap_or(1),
    }
}

/// Computes and verifies the character table.
pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g);
    character_table_with_classes(g, classes)
}

pub fn character_table_with_classes(g: &PermGroup, classes: ClassData) -> Result<CharacterTable> {
    let n = g.order() as u64;
    let exponent = g.exponent();
    if exponent > DEFAULT_MAX_CONDUCTOR as u64 {
        return Err(Error::ConductorOverflow {
            conductor: exponent,
            bound: DEFAULT_MAX_CONDUCTOR,
        });
    }
    let k = classes.len();
    let p = choose_prime(exponent, n);
    let sc = structure_constants(g, &classes);

    let eigen = common_eigenvectors(&sc, p)?;

    // degrees from sum_i w_i w_{i'} / |C_i| = |G| / chi(1)^2
    let max_deg = isqrt(n);
    let mut raw_rows: Vec<(u64, Vec<Vec<i64>>)> = Vec::with_capacity(k);
    let z = pow_mod(modp::primitive_root(p), (p - 1) / exponent, p);
    for w in &eigen {
        let mut s = 0u64;
        for i in 0..k {
            let ii = classes.inverse_class[i] as usize;
            let term = mul_mod(mul_mod(w[i], w[ii], p), inv_mod(classes.sizes[i] as u64 % p, p), p);
            s = (s + term) % p;
        }
        if s == 0 {
            return Err(Error::InternalInconsistency("degenerate eigenvector norm".into()));
        }
        let d2 = mul_mod(n % p, inv_mod(s, p), p);
        let deg = (1..=max_deg)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::InternalInconsistency("no admissible degree".into()))?;
        let theta: Vec<u64> = (0..k)
            .map(|i| mul_mod(mul_mod(w[i], deg, p), inv_mod(classes.sizes[i] as u64 % p, p), p))
            .collect();
        let mut mults = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes.element_orders[c] as u64;
            let root = pow_mod(z, exponent / o, p);
            let o_inv = inv_mod(o % p, p);
            let mut m = Vec::with_capacity(o as usize);
            for kk in 0..o {
                let mut acc = 0u64;
                for j in 0..o {
                    let val = theta[classes.power_map[c][j as usize] as usize];
                    let tw = pow_mod(root, (o - (j * kk) % o) % o, p);
                    acc = (acc + mul_mod(val, tw, p)) % p;
                }
                let mk = mul_mod(acc, o_inv, p);
                if mk > deg {
                    return Err(Error::InternalInconsistency(format!(
                        "eigenvalue multiplicity {} exceeds degree {}",
                        mk, deg
                    )));
                }
                m.push(mk as i64);
            }
            if m.iter().sum::<i64>() != deg as i64 {
                return Err(Error::InternalInconsistency("multiplicities do not sum to the degree".into()));
            }
            mults.push(m);
        }
        raw_rows.push((deg, mults));
    }

    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = raw_rows
        .into_iter()
        .map(|(deg, mults)| {
            let vals = mults
                .into_iter()
                .enumerate()
                .map(|(c, m)| Cyclotomic::from_raw(classes.element_orders[c], m))
                .collect::<Result<Vec<_>>>()?;
            Ok((deg, vals))
        })
        .collect::<Result<Vec<_>>>()?;

    // trivial character first, then by degree and value tuple
    let one = Cyclotomic::one();
    let triv_pos = rows
        .iter()
        .position(|(d, r)| *d == 1 && r.iter().all(|v| *v == one))
        .ok_or_else(|| Error::InternalInconsistency("trivial character missing".into()))?;
    let trivial = rows.remove(triv_pos);
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            a.1.iter()
                .map(Cyclotomic::canonical_key)
                .cmp(b.1.iter().map(Cyclotomic::canonical_key))
        })
    });
    rows.insert(0, trivial);

    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|r| r.1).collect();
    let conjugates = values
        .iter()
        .map(|r| r.iter().map(Cyclotomic::complex_conjugate).collect())
        .collect();
    let derived_index = g.order() / g.derived_subgroup().order();
    let table = CharacterTable {
        order: g.order(),
        classes,
        exponent: exponent as u32,
        prime: p,
        values,
        conjugates,
        degrees,
        derived_index,
    };
    verify_table(&table)?;
    Ok(table)
}

/// Splits `F_p^k` into common eigenlines of the class matrices, taken in
/// class order. Returns one eigenvector per line, scaled so that its
/// identity-class entry is 1.
fn common_eigenvectors(sc: &StructureConstants, p: u64) -> Result<Vec<Vec<u64>>> {
    let k = sc.classes();
    let mut blocks: Vec<Block> = vec![Block::new(
        (0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect(),
        p,
    )];
    for j in 1..k {
        if blocks.iter().all(|b| b.basis.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.basis.len() == 1 {
                next.push(block);
                continue;
            }
            let restricted = block.restrict(sc, j, p);
            let cp = modp::char_poly(&restricted, p);
            let d = block.basis.len();
            let mut covered = 0;
            for lambda in 0..p {
                if modp::eval_poly(&cp, lambda, p) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| {
                                if r == c {
                                    (restricted[r][c] + p - lambda) % p
                                } else {
                                    restricted[r][c]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ns = modp::nullspace(&shifted, p);
                covered += ns.len();
                let vectors = ns
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; k];
                        for (t, &ct) in c.iter().enumerate() {
                            if ct == 0 {
                                continue;
                            }
                            for (x, &bx) in v.iter_mut().zip(&block.basis[t]) {
                                *x = (*x + mul_mod(ct, bx, p)) % p;
                            }
                        }
                        v
                    })
                    .collect();
                next.push(Block::new(vectors, p));
            }
            if covered != d {
                return Err(Error::InternalInconsistency(format!(
                    "class matrix {} is not diagonalizable on a block of dimension {}",
                    j, d
                )));
            }
        }
        blocks = next;
    }
    if blocks.len() != k || blocks.iter().any(|b| b.basis.len() != 1) {
        return Err(Error::InternalInconsistency("eigenspaces did not separate".into()));
    }
    blocks
        .into_iter()
        .map(|b| {
            let v = &b.basis[0];
            if v[0] == 0 {
                return Err(Error::InternalInconsistency("eigenvector vanishes at the identity".into()));
            }
            let inv = inv_mod(v[0], p);
            Ok(v.iter().map(|&x| mul_mod(x, inv, p)).collect())
        })
        .collect()
}

/// Invariant subspace in reduced row echelon form.
struct Block {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Block {
    fn new(mut basis: Vec<Vec<u64>>, p: u64) -> Block {
        let pivots = modp::rref(&mut basis, p);
        Block { basis, pivots }
    }

    /// Matrix of `A_j` on this subspace in the echelon basis: since the
    /// basis is reduced, the coordinates of a vector in the span are its
    /// entries at the pivot columns.
    fn restrict(&self, sc: &StructureConstants, j: usize, p: u64) -> Vec<Vec<u64>> {
        let k = sc.classes();
        let d = self.basis.len();
        let mut out = vec![vec![0u64; d]; d];
        for (t, v) in self.basis.iter().enumerate() {
            for (s, &piv) in self.pivots.iter().enumerate() {
                let mut acc = 0u64;
                for l in 0..k {
                    if v[l] != 0 {
                        acc = (acc + sc.get(piv, j, l) as u64 % p * v[l]) % p;
                    }
                }
                out[s][t] = acc;
            }
        }
        out
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Re-checks every table invariant with exact arithmetic.
pub fn verify_table(t: &CharacterTable) -> Result<()> {
    let k = t.values.len();
    let cd = &t.classes;
    let n = t.order as i64;
    let fail = |m: String| Err(Error::InternalInconsistency(m));
    if k != cd.len() {
        return fail(format!("{} characters for {} classes", k, cd.len()));
    }
    if cd.class_of(0) != 0 || cd.sizes[0] != 1 {
        return fail("identity class is not first".into());
    }
    if cd.sizes.iter().sum::<usize>() != t.order {
        return fail("class sizes do not sum to the group order".into());
    }
    let one = Cyclotomic::one();
    if !t.values[0].iter().all(|v| *v == one) {
        return fail("first row is not the trivial character".into());
    }
    for (i, row) in t.values.iter().enumerate() {
        if row[0] != Cyclotomic::integer(t.degrees[i] as i64) {
            return fail(format!("degree column mismatch for character {}", i));
        }
        if t.order as u64 % t.degrees[i] != 0 {
            return fail(format!("degree {} does not divide {}", t.degrees[i], t.order));
        }
    }
    if t.degrees.iter().map(|d| d * d).sum::<u64>() != t.order as u64 {
        return fail("sum of squared degrees differs from the group order".into());
    }
    let e = t.exponent;
    for i in 0..k {
        for l in i..k {
            let mut acc = CycAccumulator::new(e);
            for c in 0..k {
                acc.add_product(cd.sizes[c] as i64, &t.values[i][c], &t.conjugates[l][c])?;
            }
            let s = acc.finish()?.to_rational_integer()?;
            let expect = if i == l { n } else { 0 };
            if s != expect {
                return fail(format!("row orthogonality fails for ({}, {}): {} != {}", i, l, s, expect));
            }
        }
    }
    for c in 0..k {
        for c2 in c..k {
            let mut acc = CycAccumulator::new(e);
            for i in 0..k {
                acc.add_product(1, &t.values[i][c], &t.conjugates[i][c2])?;
            }
            let s = acc.finish()?.to_rational_integer()?;
            let expect = if c == c2 { cd.centralizer_orders[c] as i64 } else { 0 };
            if s != expect {
                return fail(format!("column orthogonality fails for ({}, {}): {} != {}", c, c2, s, expect));
            }
        }
    }
    // |G| = T b - [G:G'] (b - 1) - sum_{1 < chi(1) < b} chi(1) (b - chi(1))
    let stats = table_stats(t);
    let linear = t.degrees.iter().filter(|&&d| d == 1).count();
    if linear != t.derived_index {
        return fail(format!("{} linear characters but [G:G'] = {}", linear, t.derived_index));
    }
    let b = stats.b as i64;
    let middle: i64 = t
        .degrees
        .iter()
        .filter(|&&d| d > 1 && (d as i64) < b)
        .map(|&d| d as i64 * (b - d as i64))
        .sum();
    let rhs = stats.t as i64 * b - t.derived_index as i64 * (b - 1) - middle;
    if rhs != n {
        return fail(format!("degree identity gives {} instead of {}", rhs, n));
    }
    let abelian = k == t.order;
    if (n == stats.t as i64 * b) != abelian || n > stats.t as i64 * b {
        return fail("|G| <= T(G) b(G) with equality exactly for abelian groups is violated".into());
    }
    Ok(())
}
