//! Subgroups up to conjugacy, and per-class verdicts for whole-group scans.
//!
//! Every solvable subgroup `K > 1` has a normal subgroup `H` of prime index
//! `p`; picking `z` in `K \ H` and replacing it by its `p`-part gives an
//! element of prime-power order with `z^p` in `H`, so `K = <H, z>` with `z`
//! in `N(H)`. Closing the trivial group under these extensions therefore
//! reaches every solvable subgroup. A nonsolvable subgroup is reached the
//! same way from its perfect radical, so perfect subgroups are seeded
//! separately as two-generator closures.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, CharacterTable};
use crate::classes::conjugacy_classes;
use crate::depth::{minimal_depth, DepthReport};
use crate::error::Result;
use crate::frobenius::{induced_gram, is_rich, permutation_character, satisfies_bii, SubgroupPair};
use crate::graph::{frobenius_graph, Diameter};
use crate::group::{ElementSet, PermGroup, Subgroup};
use crate::modp::{is_prime, prime_divisors};

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// The conjugate whose sorted element list is lexicographically least.
    pub representative: Subgroup,
    /// Number of conjugates, `[G : N_G(rep)]`.
    pub length: usize,
    pub order: usize,
}

#[derive(Debug, Clone)]
pub struct SubgroupClassList {
    pub classes: Vec<SubgroupClass>,
    conjugates: Vec<Vec<ElementSet>>,
}

impl SubgroupClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.length).sum()
    }

    /// Member sets of all conjugates of class `i`.
    pub fn conjugates(&self, i: usize) -> &[ElementSet] {
        &self.conjugates[i]
    }

    /// Some conjugate of class `i` lies inside the representative of `j`.
    pub fn contained_in(&self, i: usize, j: usize) -> bool {
        let big = self.classes[j].representative.members();
        self.classes[i].order <= self.classes[j].order
            && self.classes[j].order % self.classes[i].order == 0
            && self.conjugates[i].iter().any(|s| s.is_subset(big))
    }

    pub fn with_order(&self, order: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.classes[i].order == order).collect()
    }

    pub fn prime_order(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| is_prime(self.classes[i].order as u64)).collect()
    }

    /// Sylow `p`-subgroup classes (a single class, or none if `p` does
    /// not divide the order).
    pub fn sylow(&self, group_order: usize, p: usize) -> Vec<usize> {
        let mut part = 1;
        while group_order % (part * p) == 0 {
            part *= p;
        }
        if part == 1 {
            return Vec::new();
        }
        self.with_order(part)
    }

    /// Proper classes not contained in a larger proper class.
    pub fn maximal(&self, group_order: usize) -> Vec<usize> {
        let proper: Vec<usize> = (0..self.len()).filter(|&i| self.classes[i].order < group_order).collect();
        proper
            .iter()
            .copied()
            .filter(|&i| {
                !proper
                    .iter()
                    .any(|&j| self.classes[j].order > self.classes[i].order && self.contained_in(i, j))
            })
            .collect()
    }

    /// Index of the class containing a given subgroup.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        (0..self.len()).find(|&i| {
            self.classes[i].order == h.order() && self.conjugates[i].iter().any(|s| s == h.members())
        })
    }
}

struct Enumerator<'a> {
    g: &'a PermGroup,
    seen: HashMap<ElementSet, usize>,
    found: Vec<(Subgroup, Vec<ElementSet>)>,
}

impl<'a> Enumerator<'a> {
    fn add(&mut self, k: Subgroup) {
        if self.seen.contains_key(k.members()) {
            return;
        }
        let id = self.found.len();
        let mut orbit = vec![k.members().clone()];
        self.seen.insert(k.members().clone(), id);
        let mut i = 0;
        while i < orbit.len() {
            let elems: Vec<u32> = orbit[i].iter().map(|x| x as u32).collect();
            for &s in self.g.generator_indices() {
                let c = self.g.conjugate_set(&orbit[i], &elems, s as usize);
                if !self.seen.contains_key(&c) {
                    self.seen.insert(c.clone(), id);
                    orbit.push(c);
                }
            }
            i += 1;
        }
        self.found.push((k, orbit));
    }

    /// All `<H, z>` with `z` in `N(H) \ H` of prime-power order and
    /// `z^p` in `H`.
    fn extend(&mut self, idx: usize) {
        let g = self.g;
        let h = self.found[idx].0.clone();
        let n = g.normalizer(&h);
        let mut covered = h.members().clone();
        for &z in n.elements() {
            let z = z as usize;
            if covered.contains(z) {
                continue;
            }
            let ord = g.element_order(z) as u64;
            let primes = prime_divisors(ord);
            if primes.len() != 1 {
                continue;
            }
            let p = primes[0] as usize;
            if !h.contains(g.pow(z, p as u64)) {
                continue;
            }
            let mut members = ElementSet::new(g.order());
            let mut zi = 0usize;
            for _ in 0..p {
                for &x in h.elements() {
                    members.insert(g.mul(x as usize, zi));
                }
                zi = g.mul(zi, z);
            }
            for x in members.iter() {
                covered.insert(x);
            }
            if !self.seen.contains_key(&members) {
                let k = g.subgroup_from_set(members);
                self.add(k);
            }
        }
    }
}

/// Derived subgroup of `K`, computed inside the parent.
fn derived_of(g: &PermGroup, k: &Subgroup) -> Subgroup {
    let gens: Vec<usize> = k.generators().iter().map(|&x| x as usize).collect();
    let mut seeds: Vec<usize> = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.commutator(a, b);
            if c != 0 && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    // normal closure inside K
    loop {
        let d = g.subgroup_generated(&seeds);
        let mut added = false;
        for &x in d.generators() {
            for &s in &gens {
                let y = g.conj(x as usize, s);
                if !d.contains(y) && !seeds.contains(&y) {
                    seeds.push(y);
                    added = true;
                }
            }
        }
        if !added {
            return d;
        }
    }
}

/// Nontrivial perfect subgroups generated by a class representative and one
/// further element. Covers every perfect subgroup that is two-generated,
/// which holds for the simple groups and the groups `SL(2, q)` in range.
fn perfect_seeds(g: &PermGroup) -> Vec<Subgroup> {
    let cd = conjugacy_classes(g);
    let mut checked: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for &x in cd.representatives.iter().skip(1) {
        for y in 1..g.order() {
            let k = g.subgroup_generated(&[x, y]);
            // the smallest nonsolvable group has order 60
            if k.order() < 60 || !checked.insert(k.members().clone()) {
                continue;
            }
            if derived_of(g, &k).order() == k.order() {
                out.push(k);
            }
        }
    }
    out
}

pub fn enumerate_subgroup_classes(g: &PermGroup) -> Result<SubgroupClassList> {
    let mut en = Enumerator {
        g,
        seen: HashMap::new(),
        found: Vec::new(),
    };
    en.add(g.trivial_subgroup());
    if !g.is_solvable() {
        for k in perfect_seeds(g) {
            en.add(k);
        }
    }
    let mut i = 0;
    while i < en.found.len() {
        en.extend(i);
        i += 1;
    }
    let mut classes: Vec<(SubgroupClass, Vec<ElementSet>)> = en
        .found
        .into_iter()
        .map(|(k, orbit)| {
            let rep_set = orbit
                .iter()
                .min_by(|a, b| a.iter().cmp(b.iter()))
                .expect("orbit contains the subgroup")
                .clone();
            let representative = g.subgroup_from_set(rep_set);
            let class = SubgroupClass {
                length: orbit.len(),
                order: k.order(),
                representative,
            };
            (class, orbit)
        })
        .collect();
    classes.sort_by(|a, b| {
        a.0.order
            .cmp(&b.0.order)
            .then_with(|| a.0.representative.elements().cmp(b.0.representative.elements()))
    });
    let (classes, conjugates) = classes.into_iter().unzip();
    Ok(SubgroupClassList { classes, conjugates })
}

/// Classes of subgroups of prime order, found directly from the elements of
/// prime order without the full enumeration.
pub fn prime_order_classes(g: &PermGroup) -> Vec<Subgroup> {
    let cd = conjugacy_classes(g);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    for &x in &cd.representatives {
        if !is_prime(g.element_order(x) as u64) {
            continue;
        }
        let k = g.subgroup_generated(&[x]);
        if seen.contains(k.members()) {
            continue;
        }
        // every conjugate of <x> is generated by a power of a conjugate of x
        for t in 0..g.order() {
            seen.insert(g.conjugate_set(k.members(), k.elements(), t));
        }
        out.push(k);
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    out
}

/// A prime-order subgroup that is rich, if any. For such a subgroup the
/// graph has diameter three: richness forces a trivial core, hence a
/// conjugate meeting it trivially.
pub fn has_diameter_three_subgroup(g: &PermGroup, tg: &CharacterTable) -> Result<Option<Subgroup>> {
    for h in prime_order_classes(g) {
        if h.order() < g.order() && is_rich(g, tg, &h)?.rich {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    /// `None` for nonsolvable subgroups.
    pub derived_length: Option<usize>,
}

pub fn fingerprint(g: &PermGroup, h: &Subgroup) -> Fingerprint {
    let hg = g.subgroup_as_group(h);
    let (len, solvable) = hg.derived_length();
    Fingerprint {
        order: h.order(),
        abelian: hg.is_abelian(),
        exponent: hg.exponent(),
        derived_length: solvable.then_some(len),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub index: usize,
    pub order: usize,
    pub length: usize,
    pub generators: Vec<String>,
    pub fingerprint: Fingerprint,
    pub proper: bool,
    pub rich: bool,
    pub rich_witness: Option<usize>,
    pub bii: bool,
    pub bii_witness: Option<(usize, usize)>,
    pub diameter_three: bool,
    pub diameter: Diameter,
    pub components: usize,
    pub depth: DepthReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub group_order: usize,
    pub classes: Vec<ClassVerdict>,
    /// All classes.
    pub n: usize,
    /// Nontrivial rich classes.
    pub g: usize,
    /// Rich classes maximal under inclusion among rich classes.
    pub m: usize,
    pub maximal_rich: Vec<usize>,
    pub minimal: Option<bool>,
}

impl ClassificationReport {
    pub fn rich_orders(&self) -> Vec<usize> {
        self.classes.iter().filter(|c| c.rich).map(|c| c.order).collect()
    }

    pub fn maximal_rich_orders(&self) -> Vec<usize> {
        self.maximal_rich.iter().map(|&i| self.classes[i].order).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "|G| = {}   n = {}   g = {}   m = {}\n",
            self.group_order, self.n, self.g, self.m
        );
        if let Some(min) = self.minimal {
            out.push_str(&format!("minimal with a nontrivial rich subgroup: {}\n", min));
        }
        out.push_str(&format!(
            "{:>4} {:>6} {:>6} {:>5} {:>5} {:>5} {:>9} {:>5}  generators\n",
            "#", "order", "length", "rich", "b(ii)", "diam3", "diameter", "depth"
        ));
        for c in &self.classes {
            let mark = if self.maximal_rich.contains(&c.index) { "*" } else { " " };
            out.push_str(&format!(
                "{:>3}{} {:>6} {:>6} {:>5} {:>5} {:>5} {:>9} {:>5}  {}\n",
                c.index,
                mark,
                c.order,
                c.length,
                yes_no(c.rich),
                yes_no(c.bii),
                yes_no(c.diameter_three),
                c.diameter.to_string(),
                c.depth.minimal_depth,
                c.generators.join(" ")
            ));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "+"
    } else {
        "-"
    }
}

/// Verdicts for every class, evaluated in parallel, in class order.
pub fn classify_subgroups(
    g: &PermGroup,
    tg: &CharacterTable,
    list: &SubgroupClassList,
) -> Result<ClassificationReport> {
    let classes: Vec<ClassVerdict> = list
        .classes
        .par_iter()
        .enumerate()
        .map(|(index, class)| classify_one(g, tg, index, class))
        .collect::<Result<Vec<_>>>()?;
    let rich: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].rich).collect();
    let maximal_rich: Vec<usize> = rich
        .iter()
        .copied()
        .filter(|&i| {
            !rich
                .iter()
                .any(|&j| list.classes[j].order > list.classes[i].order && list.contained_in(i, j))
        })
        .collect();
    Ok(ClassificationReport {
        group_order: g.order(),
        n: classes.len(),
        g: rich.iter().filter(|&&i| classes[i].order > 1).count(),
        m: maximal_rich.len(),
        maximal_rich,
        classes,
        minimal: None,
    })
}

fn classify_one(g: &PermGroup, tg: &CharacterTable, index: usize, class: &SubgroupClass) -> Result<ClassVerdict> {
    let h = &class.representative;
    let proper = h.order() < g.order();
    let (rich, rich_witness) = if proper {
        let v = is_rich(g, tg, h)?;
        (v.rich, v.witness)
    } else {
        (false, None)
    };
    let pair = SubgroupPair::new(g, tg, h.clone())?;
    let m = pair.frobenius_matrix()?;
    let bii = satisfies_bii(&induced_gram(&m));
    let graph = frobenius_graph(&m);
    Ok(ClassVerdict {
        index,
        order: h.order(),
        length: class.length,
        generators: h.generator_perms(g).iter().map(ToString::to_string).collect(),
        fingerprint: fingerprint(g, h),
        proper,
        rich,
        rich_witness,
        bii: bii.holds,
        bii_witness: bii.witness,
        diameter_three: proper && h.order() > 1 && rich && bii.holds,
        diameter: graph.diameter,
        components: graph.components,
        depth: minimal_depth(&m),
    })
}

/// `G` has a nontrivial rich subgroup and none of its maximal subgroups
/// does. Checking maximal subgroups suffices since a rich subgroup of a
/// subgroup yields one in every overgroup.
pub fn is_minimal_rich_group(g: &PermGroup, tg: &CharacterTable, list: &SubgroupClassList) -> Result<bool> {
    if has_diameter_three_subgroup(g, tg)?.is_none() {
        return Ok(false);
    }
    for i in list.maximal(g.order()) {
        let m = g.subgroup_as_group(&list.classes[i].representative);
        let tm = character_table(&m)?;
        if has_diameter_three_subgroup(&m, &tm)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Huppert: a finite group is supersolvable iff every maximal subgroup has
/// prime index.
pub fn is_supersolvable(g: &PermGroup, list: &SubgroupClassList) -> bool {
    list.maximal(g.order())
        .into_iter()
        .all(|i| is_prime((g.order() / list.classes[i].order) as u64))
}

/// Rich prime-order classes, by the same test as the full scan but
/// restricted to the directly enumerated prime-order subgroups.
pub fn rich_prime_order_subgroups(g: &PermGroup, tg: &CharacterTable) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for h in prime_order_classes(g).into_iter().filter(|h| h.order() < g.order()) {
        let mult = permutation_character(g, tg, &h)?;
        if mult.iter().all(|&m| m > 0) {
            out.push(h);
        }
    }
    Ok(out)
}
