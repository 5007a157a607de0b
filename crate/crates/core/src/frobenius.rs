//! Restriction and induction between a group and a subgroup: the Frobenius
//! matrix `F(G, H)` of multiplicities `[chi_H, phi]`, the Gram matrix of
//! induced characters, and the richness / diameter-three predicates.

use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, CharacterTable};
use crate::cyclotomic::CycAccumulator;
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};

/// H-class index to G-class index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionMap {
    pub map: Vec<usize>,
}

/// Rows are `Irr(H)`, columns `Irr(G)`, both in table order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusMatrix {
    pub entries: Vec<Vec<u64>>,
    pub sub_degrees: Vec<u64>,
    pub degrees: Vec<u64>,
}

/// `S = M M^T`, indexed by `Irr(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedGram {
    pub entries: Vec<Vec<u64>>,
}

impl FrobeniusMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.degrees.len()
    }

    #[inline]
    pub fn get(&self, phi: usize, chi: usize) -> u64 {
        self.entries[phi][chi]
    }

    pub fn transpose(&self) -> Vec<Vec<u64>> {
        (0..self.cols())
            .map(|c| self.entries.iter().map(|r| r[c]).collect())
            .collect()
    }

    pub fn render_text(&self) -> String {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{:>w$}", v, w = width)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// True if the two matrices agree after permuting rows and columns.
    pub fn equivalent_up_to_permutation(&self, other: &[Vec<u64>]) -> bool {
        permutation_equivalent(&self.entries, other)
    }
}

impl InducedGram {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, phi: usize, psi: usize) -> u64 {
        self.entries[phi][psi]
    }
}

/// Locates each H-class representative in its G-class.
pub fn fusion_map(g: &PermGroup, h: &Subgroup, tg: &CharacterTable, th: &CharacterTable) -> FusionMap {
    debug_assert_eq!(g.order(), tg.order());
    let map = th
        .classes()
        .representatives
        .iter()
        .map(|&local| tg.classes().class_of(h.elements()[local] as usize))
        .collect();
    FusionMap { map }
}

/// A subgroup together with its own table and class fusion, so that several
/// quantities can be derived from one set of tables.
#[derive(Debug, Clone)]
pub struct SubgroupPair<'a> {
    pub group: &'a PermGroup,
    pub table: &'a CharacterTable,
    pub subgroup: Subgroup,
    pub sub_group: PermGroup,
    pub sub_table: CharacterTable,
    pub fusion: FusionMap,
}

impl<'a> SubgroupPair<'a> {
    pub fn new(group: &'a PermGroup, table: &'a CharacterTable, subgroup: Subgroup) -> Result<Self> {
        let sub_group = group.subgroup_as_group(&subgroup);
        let sub_table = character_table(&sub_group)?;
        let fusion = fusion_map(group, &subgroup, table, &sub_table);
        Ok(SubgroupPair {
            group,
            table,
            subgroup,
            sub_group,
            sub_table,
            fusion,
        })
    }

    pub fn is_proper(&self) -> bool {
        self.subgroup.order() < self.group.order()
    }

    pub fn frobenius_matrix(&self) -> Result<FrobeniusMatrix> {
        frobenius_matrix(self)
    }

    /// Class of `H` containing the parent element `x`, if `x` lies in `H`.
    fn sub_class(&self, x: usize) -> usize {
        let local = self.subgroup.local_index(x).expect("element of the subgroup");
        self.sub_table.classes().class_of(local)
    }
}

/// `[chi_H, phi]` for every pair, exact.
pub fn frobenius_matrix(pair: &SubgroupPair<'_>) -> Result<FrobeniusMatrix> {
    let tg = pair.table;
    let th = &pair.sub_table;
    let ch = th.classes();
    let order_h = pair.subgroup.order() as i64;
    let e = th.exponent();
    let mut entries = vec![vec![0u64; tg.len()]; th.len()];
    for (phi, row) in entries.iter_mut().enumerate() {
        for (chi, slot) in row.iter_mut().enumerate() {
            let mut acc = CycAccumulator::new(e);
            for c in 0..ch.len() {
                acc.add_product(ch.sizes[c] as i64, tg.value(chi, pair.fusion.map[c]), th.conj_value(phi, c))?;
            }
            let s = acc.finish()?.to_rational_integer()?;
            if s < 0 || s % order_h != 0 {
                return Err(Error::InternalInconsistency(format!(
                    "multiplicity sum {} for ({}, {}) is not a nonnegative multiple of {}",
                    s, phi, chi, order_h
                )));
            }
            *slot = (s / order_h) as u64;
        }
    }
    let m = FrobeniusMatrix {
        entries,
        sub_degrees: th.degrees().to_vec(),
        degrees: tg.degrees().to_vec(),
    };
    for chi in 0..m.cols() {
        let restricted: u64 = (0..m.rows()).map(|phi| m.get(phi, chi) * m.sub_degrees[phi]).sum();
        if restricted != m.degrees[chi] {
            return Err(Error::InternalInconsistency(format!(
                "restriction of character {} has degree {} instead of {}",
                chi, restricted, m.degrees[chi]
            )));
        }
    }
    if m.get(0, 0) != 1 {
        return Err(Error::InternalInconsistency("trivial characters do not pair to 1".into()));
    }
    Ok(m)
}

/// Multiplicities of `Irr(G)` in `1_H^G`, from the G-table alone:
/// `[chi_H, 1_H] = (1/|H|) sum_c |H cap C_c| chi(g_c)`.
pub fn permutation_character(g: &PermGroup, tg: &CharacterTable, h: &Subgroup) -> Result<Vec<u64>> {
    debug_assert_eq!(g.order(), tg.order());
    let cd = tg.classes();
    let mut hits = vec![0i64; cd.len()];
    for &x in h.elements() {
        hits[cd.class_of(x as usize)] += 1;
    }
    let order_h = h.order() as i64;
    let mut out = Vec::with_capacity(tg.len());
    for chi in 0..tg.len() {
        let mut acc = CycAccumulator::new(tg.exponent());
        for (c, &n) in hits.iter().enumerate() {
            if n != 0 {
                acc.add_scaled(n, tg.value(chi, c))?;
            }
        }
        let s = acc.finish()?.to_rational_integer()?;
        if s < 0 || s % order_h != 0 {
            return Err(Error::InternalInconsistency(format!(
                "permutation character multiplicity {}/{} is not a nonnegative integer",
                s, order_h
            )));
        }
        out.push((s / order_h) as u64);
    }
    let index = (g.order() / h.order()) as u64;
    let total: u64 = out.iter().zip(tg.degrees()).map(|(m, d)| m * d).sum();
    if total != index {
        return Err(Error::InternalInconsistency(format!(
            "permutation character has degree {} instead of the index {}",
            total, index
        )));
    }
    Ok(out)
}

pub fn induced_gram(m: &FrobeniusMatrix) -> InducedGram {
    let r = m.rows();
    let mut entries = vec![vec![0u64; r]; r];
    for i in 0..r {
        for j in i..r {
            let s: u64 = m.entries[i].iter().zip(&m.entries[j]).map(|(a, b)| a * b).sum();
            entries[i][j] = s;
            entries[j][i] = s;
        }
    }
    InducedGram { entries }
}

/// Representatives of the `H`-`H` double cosets, taken as the smallest
/// element of each double coset.
pub fn double_coset_representatives(g: &PermGroup, h: &Subgroup) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in h.elements() {
            let ax = g.mul(a as usize, x);
            for &b in h.elements() {
                seen[g.mul(ax, b as usize)] = true;
            }
        }
    }
    reps
}

/// Number of `H`-orbits on the cosets of `H`.
pub fn burnside_rank(g: &PermGroup, h: &Subgroup) -> usize {
    double_coset_representatives(g, h).len()
}

/// For one double coset representative `t`: the pairs of H-classes
/// `(class(x), class(t x t^-1))` over `x` in `I = H cap t^-1 H t`, counted.
fn mackey_term(pair: &SubgroupPair<'_>, t: usize) -> (usize, Vec<((usize, usize), i64)>) {
    let g = pair.group;
    let ti = g.inv(t);
    let mut counts: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
    let mut size = 0;
    for &x in pair.subgroup.elements() {
        let y = g.mul(g.mul(t, x as usize), ti);
        if pair.subgroup.contains(y) {
            size += 1;
            *counts.entry((pair.sub_class(x as usize), pair.sub_class(y))).or_default() += 1;
        }
    }
    (size, counts.into_iter().collect())
}

/// `[phi^G, psi^G]` by the double coset decomposition
/// `sum_t [phi_I, (psi^t)_I]` with `I = H cap t^-1 H t` and
/// `psi^t(x) = psi(t x t^-1)`. Uses no G-characters at all.
pub fn mackey_inner_product(pair: &SubgroupPair<'_>, phi: usize, psi: usize) -> Result<u64> {
    let reps = double_coset_representatives(pair.group, &pair.subgroup);
    let terms: Vec<_> = reps.iter().map(|&t| mackey_term(pair, t)).collect();
    mackey_sum(pair, &terms, phi, psi)
}

/// The whole Gram matrix by double cosets.
pub fn mackey_gram(pair: &SubgroupPair<'_>) -> Result<InducedGram> {
    let reps = double_coset_representatives(pair.group, &pair.subgroup);
    let terms: Vec<_> = reps.iter().map(|&t| mackey_term(pair, t)).collect();
    let k = pair.sub_table.len();
    let mut entries = vec![vec![0u64; k]; k];
    for phi in 0..k {
        for psi in 0..k {
            entries[phi][psi] = mackey_sum(pair, &terms, phi, psi)?;
        }
    }
    Ok(InducedGram { entries })
}

fn mackey_sum(
    pair: &SubgroupPair<'_>,
    terms: &[(usize, Vec<((usize, usize), i64)>)],
    phi: usize,
    psi: usize,
) -> Result<u64> {
    let th = &pair.sub_table;
    let mut total = 0i64;
    for (size, counts) in terms {
        let mut acc = CycAccumulator::new(th.exponent());
        for &((a, b), n) in counts {
            acc.add_product(n, th.value(phi, a), th.conj_value(psi, b))?;
        }
        let s = acc.finish()?.to_rational_integer()?;
        let size = *size as i64;
        if s < 0 || s % size != 0 {
            return Err(Error::InternalInconsistency(format!(
                "double coset term {}/{} is not a nonnegative integer",
                s, size
            )));
        }
        total += s / size;
    }
    Ok(total as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichVerdict {
    pub rich: bool,
    /// First character of `G` missing from `1_H^G`.
    pub witness: Option<usize>,
    pub multiplicities: Vec<u64>,
}

/// Every irreducible character of `G` occurs in `1_H^G`.
pub fn is_rich(g: &PermGroup, tg: &CharacterTable, h: &Subgroup) -> Result<RichVerdict> {
    if h.order() == g.order() {
        return Err(Error::NotProper);
    }
    let multiplicities = permutation_character(g, tg, h)?;
    let witness = multiplicities.iter().position(|&m| m == 0);
    Ok(RichVerdict {
        rich: witness.is_none(),
        witness,
        multiplicities,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiiVerdict {
    pub holds: bool,
    /// A pair `(phi, psi)` with `[phi^G, psi^G] = 0`.
    pub witness: Option<(usize, usize)>,
}

/// All induced characters pairwise share a constituent.
pub fn satisfies_bii(s: &InducedGram) -> BiiVerdict {
    let k = s.len();
    let witness = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .find(|&(i, j)| s.get(i, j) == 0);
    BiiVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// Nontrivial, proper, rich, and all induced characters pairwise
/// non-orthogonal.
pub fn is_diameter_three(pair: &SubgroupPair<'_>) -> Result<bool> {
    if pair.subgroup.is_trivial() || !pair.is_proper() {
        return Ok(false);
    }
    if !is_rich(pair.group, pair.table, &pair.subgroup)?.rich {
        return Ok(false);
    }
    let m = pair.frobenius_matrix()?;
    Ok(satisfies_bii(&induced_gram(&m)).holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiiShortcuts {
    /// Some conjugate of `H` meets `H` trivially.
    pub trivial_intersection: bool,
    /// `H` is core-free and `N_G(H)` is transitive on `H \ {1}`.
    pub transitive_normalizer: bool,
}

impl BiiShortcuts {
    pub fn any(&self) -> bool {
        self.trivial_intersection || self.transitive_normalizer
    }
}

pub fn bii_shortcuts(g: &PermGroup, h: &Subgroup) -> BiiShortcuts {
    let trivial_intersection = double_coset_representatives(g, h).into_iter().any(|t| {
        let ti = g.inv(t);
        h.elements()
            .iter()
            .filter(|&&x| h.contains(g.mul(g.mul(t, x as usize), ti)))
            .count()
            == 1
    });
    let transitive_normalizer = g.core(h).is_trivial() && {
        if h.is_trivial() {
            true
        } else {
            let n = g.normalizer(h);
            let x = h.elements()[1] as usize;
            let mut orbit: Vec<usize> = n.elements().iter().map(|&y| g.conj(x, y as usize)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit.len() == h.order() - 1
        }
    };
    BiiShortcuts {
        trivial_intersection,
        transitive_normalizer,
    }
}

/// Row and column permutation equivalence of two small integer matrices,
/// by backtracking over row assignments with column signatures as a guard.
pub fn permutation_equivalent(a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let cols = a[0].len();
    if b.iter().chain(a).any(|r| r.len() != cols) {
        return false;
    }
    let sorted = |r: &Vec<u64>| {
        let mut s = r.clone();
        s.sort_unstable();
        s
    };
    let mut used = vec![false; a.len()];
    let mut assign = Vec::with_capacity(a.len());
    fn columns_match(a: &[Vec<u64>], b: &[Vec<u64>], assign: &[usize]) -> bool {
        // the chosen rows of b, as multisets of column vectors, must agree
        let cols = a[0].len();
        let mut ca: Vec<Vec<u64>> = (0..cols).map(|c| (0..assign.len()).map(|i| a[i][c]).collect()).collect();
        let mut cb: Vec<Vec<u64>> = (0..cols).map(|c| assign.iter().map(|&j| b[j][c]).collect()).collect();
        ca.sort_unstable();
        cb.sort_unstable();
        ca == cb
    }
    fn search(
        a: &[Vec<u64>],
        b: &[Vec<u64>],
        used: &mut [bool],
        assign: &mut Vec<usize>,
        sorted: &dyn Fn(&Vec<u64>) -> Vec<u64>,
    ) -> bool {
        let i = assign.len();
        if i == a.len() {
            return true;
        }
        let target = sorted(&a[i]);
        for j in 0..b.len() {
            if used[j] || sorted(&b[j]) != target {
                continue;
            }
            used[j] = true;
            assign.push(j);
            if columns_match(a, b, assign) && search(a, b, used, assign, sorted) {
                return true;
            }
            assign.pop();
            used[j] = false;
        }
        false
    }
    search(a, b, &mut used, &mut assign, &sorted)
}
