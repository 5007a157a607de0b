//! Permutation groups with explicitly enumerated elements, and subgroups
//! given as element sets inside such a group.
//!
//! Every group keeps its elements sorted lexicographically by image array,
//! so element index 0 is always the identity. All group-theoretic work
//! happens on element indices; multiplication goes through a Cayley table
//! for groups up to [`TABLE_LIMIT`] elements and through base images above
//! that.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Groups at most this large get a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Size bounds for explicit element enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_080,
            max_degree: 128,
        }
    }
}

impl Limits {
    pub fn with_max_order(max_order: usize) -> Self {
        Limits {
            max_order,
            ..Limits::default()
        }
    }

    /// No degree bound; used for internally constructed actions such as the
    /// action on cosets.
    pub fn unbounded_degree(max_order: usize) -> Self {
        Limits {
            max_order,
            max_degree: usize::MAX,
        }
    }
}

type BaseKey = SmallVec<[u32; 8]>;

/// A finite permutation group with its full element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<u32>,
    elements: Vec<Permutation>,
    base: Vec<usize>,
    index: HashMap<BaseKey, u32>,
    table: Option<Vec<u16>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Generates the group by closing the generators under composition.
pub fn group_from_generators(
    degree: usize,
    generators: &[Permutation],
    limits: Limits,
) -> Result<PermGroup> {
    if degree > limits.max_degree {
        return Err(Error::DeskScaleExceeded {
            what: format!("degree {}", degree),
            limit: limits.max_degree,
        });
    }
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {} has degree {}, expected {}",
                g,
                g.degree(),
                degree
            )));
        }
        // re-validate in case the caller built it by hand
        Permutation::from_images(g.images().to_vec())?;
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let prod = elements[i].then(g);
            if !seen.contains(&prod) {
                if elements.len() >= limits.max_order {
                    return Err(Error::DeskScaleExceeded {
                        what: "group order".into(),
                        limit: limits.max_order,
                    });
                }
                seen.insert(prod.clone());
                elements.push(prod);
            }
        }
        i += 1;
    }
    Ok(PermGroup::from_elements(degree, generators.to_vec(), elements))
}

impl PermGroup {
    /// Builds the group structure from a complete, closed element list.
    pub(crate) fn from_elements(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> PermGroup {
        elements.sort_unstable();
        let base = compute_base(degree, &elements);
        Self::with_base(degree, generators, elements, base)
    }

    fn with_base(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        base: Vec<usize>,
    ) -> PermGroup {
        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            index.insert(base_key(e, &base), i as u32);
        }
        let mut group = PermGroup {
            degree,
            generators,
            generator_indices: Vec::new(),
            elements,
            base,
            index,
            table: None,
            inverses: Vec::new(),
            orders: Vec::new(),
        };
        if n <= TABLE_LIMIT {
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                // images of the base points under a, then under each b
                let a_base: BaseKey = group.base.iter().map(|&p| group.elements[a].images()[p]).collect();
                for b in 0..n {
                    let key: BaseKey = a_base
                        .iter()
                        .map(|&p| group.elements[b].images()[p as usize])
                        .collect();
                    table[a * n + b] = group.index[&key] as u16;
                }
            }
            group.table = Some(table);
        }
        group.inverses = (0..n)
            .map(|i| group.index_of(&group.elements[i].inverse()).expect("closed under inverses"))
            .map(|i| i as u32)
            .collect();
        group.generator_indices = group
            .generators
            .iter()
            .map(|g| group.index_of(g).expect("generator in group") as u32)
            .collect();
        group.orders = (0..n)
            .map(|i| {
                let mut k = 1u32;
                let mut x = i;
                while x != 0 {
                    x = group.mul(x, i);
                    k += 1;
                }
                k
            })
            .collect();
        group
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_elements(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Indices of the generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let idx = *self.index.get(&base_key(p, &self.base))? as usize;
        (self.elements[idx] == *p).then_some(idx)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Index of `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => {
                let ea = self.elements[a].images();
                let eb = self.elements[b].images();
                let key: BaseKey = self.base.iter().map(|&p| eb[ea[p] as usize]).collect();
                self.index[&key] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g^-1 x g`
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let k = k % self.orders[x] as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| crate::perm::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_indices;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize)))
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        let n = self.order();
        let mut members = ElementSet::new(n);
        for i in 0..n {
            members.insert(i);
        }
        Subgroup {
            members,
            elements: (0..n as u32).collect(),
            generators: self.generator_indices.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = ElementSet::new(self.order());
        members.insert(0);
        Subgroup {
            members,
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = ElementSet::new(self.order());
        members.insert(0);
        let mut elements = vec![0u32];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i] as usize;
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    elements.push(y as u32);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        let mut generators: Vec<u32> = gens.iter().filter(|&&g| g != 0).map(|&g| g as u32).collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    /// The subgroup generated by the given permutations, which must lie in
    /// the group.
    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{} is not in the group", p)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(&idx))
    }

    /// Wraps an element set already known to be a subgroup.
    pub fn subgroup_from_set(&self, members: ElementSet) -> Subgroup {
        let elements: Vec<u32> = members.iter().map(|i| i as u32).collect();
        let generators = self.small_generating_set(&elements);
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    /// Greedy generating set: walk the elements in index order and keep
    /// each one not yet generated.
    fn small_generating_set(&self, elements: &[u32]) -> Vec<u32> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = ElementSet::new(self.order());
        span.insert(0);
        let mut span_elems = vec![0usize];
        for &e in elements {
            let e = e as usize;
            if span.contains(e) {
                continue;
            }
            gens.push(e);
            let mut i = 0;
            // extend the span incrementally: it is a group closed under the
            // old generators, so multiplying by all generators suffices
            let mut frontier: Vec<usize> = span_elems.clone();
            while i < frontier.len() {
                let x = frontier[i];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !span.contains(y) {
                        span.insert(y);
                        span_elems.push(y);
                        frontier.push(y);
                    }
                }
                i += 1;
            }
        }
        gens.into_iter().map(|g| g as u32).collect()
    }

    /// Permutation image of the subgroup's elements, as its own group.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let elements: Vec<Permutation> = h.elements.iter().map(|&i| self.elements[i as usize].clone()).collect();
        let generators = h.generators.iter().map(|&i| self.elements[i as usize].clone()).collect();
        // sorted parent order restricts to sorted subgroup order, and a base
        // of the parent is a base of every subgroup
        PermGroup::with_base(self.degree, generators, elements, self.base.clone())
    }

    /// Conjugate subgroup `g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut members = ElementSet::new(self.order());
        let gi = self.inv(g);
        for &x in &h.elements {
            members.insert(self.mul(self.mul(gi, x as usize), g));
        }
        let elements: Vec<u32> = members.iter().map(|i| i as u32).collect();
        let mut generators: Vec<u32> = h
            .generators
            .iter()
            .map(|&x| self.mul(self.mul(gi, x as usize), g) as u32)
            .collect();
        generators.sort_unstable();
        Subgroup {
            members,
            elements,
            generators,
        }
    }

    /// Element set of `g^-1 H g`, without generators.
    pub(crate) fn conjugate_set(&self, set: &ElementSet, elements: &[u32], g: usize) -> ElementSet {
        let mut out = ElementSet::new(set.capacity());
        let gi = self.inv(g);
        for &x in elements {
            out.insert(self.mul(self.mul(gi, x as usize), g));
        }
        out
    }

    /// `N_G(H)`, by filtering every element of the group.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut members = ElementSet::new(self.order());
        for g in 0..self.order() {
            if h.generators.iter().all(|&x| h.members.contains(self.conj(x as usize, g))) {
                members.insert(g);
            }
        }
        self.subgroup_from_set(members)
    }

    /// `C_G(x)`
    pub fn centralizer_of(&self, x: usize) -> Subgroup {
        let mut members = ElementSet::new(self.order());
        for g in 0..self.order() {
            if self.mul(g, x) == self.mul(x, g) {
                members.insert(g);
            }
        }
        self.subgroup_from_set(members)
    }

    /// Whether `H` is normal in the group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generator_indices.iter().all(|&g| {
            h.generators
                .iter()
                .all(|&x| h.members.contains(self.conj(x as usize, g as usize)))
        })
    }

    /// Core of `H`: the elements all of whose conjugates lie in `H`. The
    /// set is pruned by the group generators until it is stable, which
    /// yields the largest normal subgroup of the group inside `H`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let mut set = h.members.clone();
        let mut elems: Vec<u32> = h.elements.clone();
        loop {
            let kept: Vec<u32> = elems
                .iter()
                .copied()
                .filter(|&x| {
                    self.generator_indices
                        .iter()
                        .all(|&g| set.contains(self.conj(x as usize, g as usize)))
                })
                .collect();
            if kept.len() == elems.len() {
                break;
            }
            set = ElementSet::new(self.order());
            for &x in &kept {
                set.insert(x as usize);
            }
            elems = kept;
        }
        self.subgroup_from_set(set)
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&x| x != 0).collect();
        loop {
            let k = self.subgroup_generated(&gens);
            let mut added = false;
            let current = k.generators.clone();
            for &x in &current {
                for &g in &self.generator_indices {
                    let y = self.conj(x as usize, g as usize);
                    if !k.members.contains(y) && !gens.contains(&y) {
                        gens.push(y);
                        added = true;
                    }
                }
            }
            if !added {
                return k;
            }
        }
    }

    /// Derived subgroup: normal closure of commutators of generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = &self.generator_indices;
        let mut comms = Vec::new();
        for &a in g {
            for &b in g {
                let c = self.commutator(a as usize, b as usize);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.normal_closure(&comms)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Length of the derived series down to its terminal term, and whether
    /// that term is trivial.
    pub fn derived_length(&self) -> (usize, bool) {
        let mut current = self.clone();
        let mut len = 0;
        loop {
            if current.order() == 1 {
                return (len, true);
            }
            let d = current.derived_subgroup();
            if d.order() == current.order() {
                return (len, false);
            }
            current = current.subgroup_as_group(&d);
            len += 1;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_length().1
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Searches for `g` with `g^-1 H1 g = H2`.
    pub fn subgroups_conjugate(&self, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
        if h1.order() != h2.order() {
            return None;
        }
        (0..self.order()).find(|&g| {
            h1.generators
                .iter()
                .all(|&x| h2.members.contains(self.conj(x as usize, g)))
        })
    }

    /// Action on the right cosets `Hx` of `H`.
    pub fn coset_action(&self, h: &Subgroup) -> Result<CosetAction> {
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &hh in &h.elements {
                coset_of[self.mul(hh as usize, x)] = id;
            }
        }
        let m = reps.len();
        let image_of = |g: usize| -> Permutation {
            let images: Vec<u32> = reps.iter().map(|&r| coset_of[self.mul(r, g)]).collect();
            Permutation::from_images(images).expect("cosets are permuted")
        };
        let generators: Vec<Permutation> = self.generator_indices.iter().map(|&g| image_of(g as usize)).collect();
        let image = group_from_generators(m, &generators, Limits::unbounded_degree(n.max(1)))?;
        let mut element_images = Vec::with_capacity(n);
        let mut kernel = ElementSet::new(n);
        for g in 0..n {
            let p = image_of(g);
            if p.is_identity() {
                kernel.insert(g);
            }
            element_images.push(image.index_of(&p).expect("image closed") as u32);
        }
        let kernel = self.subgroup_from_set(kernel);
        Ok(CosetAction {
            image,
            element_images,
            coset_representatives: reps,
            kernel,
        })
    }

    /// Elements of order exactly `p`.
    pub fn elements_of_order(&self, k: u32) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.orders[x] == k).collect()
    }
}

/// Image of the action on right cosets of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub image: PermGroup,
    /// For each element index of the acting group, its index in `image`.
    pub element_images: Vec<u32>,
    pub coset_representatives: Vec<usize>,
    pub kernel: Subgroup,
}

impl CosetAction {
    /// Image of a subgroup of the acting group inside `image`.
    pub fn image_of_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut set = ElementSet::new(self.image.order());
        for &x in &h.elements {
            set.insert(self.element_images[x as usize] as usize);
        }
        self.image.subgroup_from_set(set)
    }
}

/// Greedy base: repeatedly pick the smallest point moved by the current
/// pointwise stabilizer.
fn compute_base(degree: usize, elements: &[Permutation]) -> Vec<usize> {
    let mut base = Vec::new();
    let mut stab: Vec<&Permutation> = elements.iter().collect();
    loop {
        let moved = (0..degree).find(|&p| stab.iter().any(|e| e.image(p) != p));
        match moved {
            None => return base,
            Some(p) => {
                base.push(p);
                stab.retain(|e| e.image(p) == p);
            }
        }
    }
}

fn base_key(p: &Permutation, base: &[usize]) -> BaseKey {
    base.iter().map(|&b| p.images()[b]).collect()
}

/// Fixed-capacity bit set over element indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    capacity: usize,
}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElementSet {
    pub fn new(capacity: usize) -> Self {
        ElementSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            capacity: self.capacity,
        }
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }
}

/// A subgroup of a [`PermGroup`], stored as element indices of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: ElementSet,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl Subgroup {
    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    /// Sorted parent indices.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Parent indices of a generating set.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_perms(&self, parent: &PermGroup) -> Vec<Permutation> {
        self.generators.iter().map(|&g| parent.element(g as usize).clone()).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn intersection(&self, parent: &PermGroup, other: &Subgroup) -> Subgroup {
        parent.subgroup_from_set(self.members.intersection(&other.members))
    }

    /// Position of a parent index inside `elements`, i.e. the element index
    /// in [`PermGroup::subgroup_as_group`].
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&(x as u32)).ok()
    }
}
