//! Structural invariants checked over the catalog and on random inputs.

use std::sync::OnceLock;

use frobgraph::catalog::{construct, GroupSpec, CATALOG};
use frobgraph::chartab::{character_table, CharacterTable};
use frobgraph::depth::{has_depth, minimal_depth};
use frobgraph::frobenius::{bii_shortcuts, induced_gram, is_diameter_three, is_rich, satisfies_bii, SubgroupPair};
use frobgraph::graph::{frobenius_graph, Diameter};
use frobgraph::group::{PermGroup, Subgroup};
use frobgraph::subgroups::{
    classify_subgroups, enumerate_subgroup_classes, has_diameter_three_subgroup, ClassificationReport,
    SubgroupClassList,
};
use proptest::prelude::*;

struct Entry {
    name: &'static str,
    group: PermGroup,
    table: CharacterTable,
    list: SubgroupClassList,
    report: ClassificationReport,
}

fn catalog() -> &'static [Entry] {
    static CELL: OnceLock<Vec<Entry>> = OnceLock::new();
    CELL.get_or_init(|| {
        CATALOG
            .iter()
            .map(|&(name, _)| {
                let group = construct(&name.parse::<GroupSpec>().unwrap()).unwrap();
                let table = character_table(&group).unwrap();
                let list = enumerate_subgroup_classes(&group).unwrap();
                let report = classify_subgroups(&group, &table, &list).unwrap();
                Entry { name, group, table, list, report }
            })
            .collect()
    })
}

fn reps(e: &Entry) -> impl Iterator<Item = &Subgroup> {
    e.list.classes.iter().map(|c| &c.representative)
}

fn nontrivial_rich(e: &Entry) -> impl Iterator<Item = &Subgroup> {
    e.report
        .classes
        .iter()
        .filter(|c| c.rich && c.order > 1)
        .map(|c| &e.list.classes[c.index].representative)
}

#[test]
fn class_sizes_partition_the_group() {
    for e in catalog() {
        let cd = e.table.classes();
        assert_eq!(cd.sizes.iter().sum::<usize>(), e.group.order(), "{}", e.name);
        assert!(cd.sizes.iter().all(|s| e.group.order() % s == 0), "{}", e.name);
    }
}

#[test]
fn core_is_coset_action_kernel() {
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        for h in reps(e) {
            let action = e.group.coset_action(h).unwrap();
            let core = e.group.core(h);
            assert_eq!(action.kernel.elements(), core.elements(), "{}", e.name);
            assert_eq!(action.image.order() * core.order(), e.group.order(), "{}", e.name);
        }
    }
}

#[test]
fn subgroup_conjugacy_is_an_equivalence() {
    for e in catalog().iter().filter(|e| e.group.order() <= 120) {
        let g = &e.group;
        // a few members of every class, tagged by class
        let mut sample = Vec::new();
        for i in 0..e.list.len() {
            for set in e.list.conjugates(i).iter().take(3) {
                sample.push((i, g.subgroup_from_set(set.clone())));
            }
        }
        for (i, a) in &sample {
            let w = g.subgroups_conjugate(a, a).expect("reflexive");
            assert_eq!(g.conjugate_subgroup(a, w).elements(), a.elements());
            for (j, b) in &sample {
                let ab = g.subgroups_conjugate(a, b);
                assert_eq!(ab.is_some(), i == j, "{}: classes {} and {}", e.name, i, j);
                assert_eq!(ab.is_some(), g.subgroups_conjugate(b, a).is_some());
                if let Some(x) = ab {
                    assert_eq!(g.conjugate_subgroup(a, x).elements(), b.elements());
                }
            }
        }
    }
}

#[test]
fn class_lengths_are_normalizer_indices() {
    for e in catalog() {
        let mut total = 0;
        for c in &e.list.classes {
            assert_eq!(c.length * e.group.normalizer(&c.representative).order(), e.group.order(), "{}", e.name);
            total += c.length;
        }
        assert_eq!(total, e.list.total_subgroups());
    }
}

#[test]
fn tables_are_deterministic() {
    for name in ["S4", "AGL1:8", "SL2:3", "A5"] {
        let g = construct(&name.parse::<GroupSpec>().unwrap()).unwrap();
        let a = character_table(&g).unwrap();
        let b = character_table(&g).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{}", name);
    }
}

#[test]
fn order_bound_by_degree_sum_and_largest_degree() {
    for e in catalog() {
        let s = e.table.stats();
        let tb = (s.t * s.b) as usize;
        assert!(e.group.order() <= tb, "{}", e.name);
        assert_eq!(e.group.order() == tb, e.group.is_abelian(), "{}", e.name);
        assert!(s.t as usize >= s.k);
        assert_eq!(s.t as usize == s.k, e.group.is_abelian());
    }
}

#[test]
fn rich_subgroups_kill_commutators_in_degree_two_characters() {
    for e in catalog() {
        for h in nontrivial_rich(e) {
            let pair = SubgroupPair::new(&e.group, &e.table, h.clone()).unwrap();
            let m = pair.frobenius_matrix().unwrap();
            let hd = pair.sub_group.derived_subgroup();
            for chi in (0..e.table.len()).filter(|&c| e.table.degrees()[c] == 2 && m.get(0, c) > 0) {
                let kernel = e.table.kernel_classes(chi);
                for &x in hd.elements() {
                    let parent = h.elements()[x as usize] as usize;
                    assert!(kernel.contains(&e.table.classes().class_of(parent)), "{}", e.name);
                }
            }
        }
    }
}

/// Local copy of `k` inside `u` viewed as a group.
fn localize(u: &Subgroup, k: &Subgroup, ug: &PermGroup) -> Subgroup {
    let local: Vec<usize> = k.elements().iter().map(|&x| u.local_index(x as usize).unwrap()).collect();
    ug.subgroup_generated(&local)
}

/// Spot check over every factorization `G = HU` with `H` rich; none occur
/// among the catalog groups, so this guards future catalog additions.
#[test]
fn richness_passes_to_complements() {
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        let g = &e.group;
        for h in nontrivial_rich(e) {
            for i in 0..e.list.len() {
                for set in e.list.conjugates(i) {
                    let u = g.subgroup_from_set(set.clone());
                    let inter = h.intersection(g, &u);
                    if h.order() * u.order() != g.order() * inter.order() || u.order() == g.order() {
                        continue;
                    }
                    let ug = g.subgroup_as_group(&u);
                    let ut = character_table(&ug).unwrap();
                    let local = localize(&u, &inter, &ug);
                    assert!(local.order() < ug.order());
                    assert!(is_rich(&ug, &ut, &local).unwrap().rich, "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn richness_passes_to_quotients() {
    let mut checked = 0;
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        let g = &e.group;
        let normals: Vec<&Subgroup> =
            reps(e).filter(|n| n.order() > 1 && n.order() < g.order() && g.is_normal(n)).collect();
        for h in nontrivial_rich(e) {
            for n in &normals {
                let action = g.coset_action(n).unwrap();
                let image = action.image_of_subgroup(h);
                let qt = character_table(&action.image).unwrap();
                assert!(image.order() < action.image.order(), "{}", e.name);
                assert!(is_rich(&action.image, &qt, &image).unwrap().rich, "{}", e.name);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn diameter_three_subgroups_are_small() {
    for e in catalog() {
        for c in e.report.classes.iter().filter(|c| c.diameter_three) {
            assert!(c.order <= 16, "{}: order {}", e.name, c.order);
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn prime_order_classes_are_complete() {
    for e in catalog() {
        for p in (2..=e.group.order()).filter(|&p| is_prime(p) && e.group.order() % p == 0) {
            let from_classes: usize = e.list.with_order(p).iter().map(|&i| e.list.classes[i].length).sum();
            let elements = e.group.elements_of_order(p as u32).len();
            assert_eq!(from_classes * (p - 1), elements, "{} p={}", e.name, p);
        }
    }
}

#[test]
fn three_way_diameter_three_equivalence() {
    for e in catalog() {
        let quick = has_diameter_three_subgroup(&e.group, &e.table).unwrap().is_some();
        let any_d3 = e.report.classes.iter().any(|c| c.diameter_three);
        let any_rich = e.report.classes.iter().any(|c| c.rich && c.order > 1);
        assert_eq!(quick, any_d3, "{}", e.name);
        assert_eq!(any_d3, any_rich, "{}", e.name);
        assert!(e.report.g <= e.report.n);
        assert!(e.report.classes.iter().filter(|c| c.diameter_three).all(|c| c.rich));
    }
}

#[test]
fn depth_and_diameter() {
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        let g = &e.group;
        for h in reps(e).filter(|h| h.order() < g.order()) {
            let pair = SubgroupPair::new(g, &e.table, h.clone()).unwrap();
            let m = pair.frobenius_matrix().unwrap();
            let report = minimal_depth(&m);
            let d = report.minimal_depth;
            for n in d..d + 4 {
                assert!(has_depth(&m, n), "{}: depth {} but not {}", e.name, d, n);
            }
            if d > 1 {
                assert!(!has_depth(&m, d - 1));
            }
            assert_eq!(has_depth(&m, 2), g.is_normal(h), "{}", e.name);
            let graph = frobenius_graph(&m);
            let s = induced_gram(&m);
            if graph.diameter == Diameter::Finite(3) {
                assert!(s.entries.iter().flatten().all(|&x| x > 0));
                assert!(has_depth(&m, 3));
            }
            if !h.is_trivial() && g.core(h).is_trivial() && has_depth(&m, 3) {
                assert!(
                    matches!(graph.diameter, Diameter::Finite(3) | Diameter::Finite(4)),
                    "{}: diameter {}",
                    e.name,
                    graph.diameter
                );
            }
        }
    }
}

#[test]
fn paths_from_the_trivial_character_are_odd() {
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        for h in reps(e).filter(|h| h.order() < e.group.order()) {
            let pair = SubgroupPair::new(&e.group, &e.table, h.clone()).unwrap();
            let m = pair.frobenius_matrix().unwrap();
            let graph = frobenius_graph(&m);
            let kg = m.cols();
            for phi in 1..m.rows() {
                if let Some(d) = graph.distance(0, kg + phi) {
                    assert!(d % 2 == 1 && d > 1, "{}", e.name);
                }
            }
            if h.is_trivial() {
                assert_eq!(graph.diameter, Diameter::Finite(2));
            }
        }
    }
}

#[test]
fn shortcuts_imply_bii() {
    for e in catalog().iter().filter(|e| e.group.order() <= 720) {
        for h in reps(e) {
            if bii_shortcuts(&e.group, h).any() {
                let pair = SubgroupPair::new(&e.group, &e.table, h.clone()).unwrap();
                assert!(satisfies_bii(&induced_gram(&pair.frobenius_matrix().unwrap())).holds, "{}", e.name);
            }
        }
    }
}

#[test]
fn affine_groups_have_a_regular_normal_translation_subgroup() {
    for (spec, q, p) in [("AGL1:8", 8, 2), ("AGL1:9:4", 9, 3), ("AGL1:16", 16, 2), ("AGL1:25:6", 25, 5)] {
        let g = construct(&spec.parse::<GroupSpec>().unwrap()).unwrap();
        let translations: Vec<usize> = (0..g.order())
            .filter(|&x| {
                let p = g.element(x);
                p.is_identity() || (0..g.degree()).all(|pt| p.image(pt) != pt)
            })
            .collect();
        let n = g.subgroup_generated(&translations);
        assert_eq!(n.order(), q, "{}", spec);
        assert!(g.is_normal(&n));
        assert!(g.subgroup_as_group(&n).is_abelian());
        assert!(n.elements().iter().skip(1).all(|&x| g.element_order(x as usize) == p));
    }
}

#[test]
fn index_two_subgroup_of_agl_1_27_has_order_three_witness() {
    let g = construct(&GroupSpec::Agl1Subgroup { q: 27, d: 13 }).unwrap();
    assert_eq!(g.order(), 351);
    let t = character_table(&g).unwrap();
    let w = has_diameter_three_subgroup(&g, &t).unwrap().expect("a diameter-3 subgroup");
    assert_eq!(w.order(), 3);
    let pair = SubgroupPair::new(&g, &t, w).unwrap();
    assert!(is_diameter_three(&pair).unwrap());
}

/// Index of a catalog group of order at most 200.
fn small_group() -> impl Strategy<Value = usize> {
    let small: Vec<usize> = (0..catalog().len()).filter(|&i| catalog()[i].group.order() <= 200).collect();
    proptest::sample::select(small)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_subgroups_are_conjugate_to_an_enumerated_class(
        idx in small_group(),
        picks in proptest::collection::vec(0usize..10_000, 1..3),
        conj in 0usize..10_000,
    ) {
        let e = &catalog()[idx];
        let g = &e.group;
        let gens: Vec<usize> = picks.iter().map(|&x| x % g.order()).collect();
        let h = g.subgroup_generated(&gens);
        let hc = g.conjugate_subgroup(&h, conj % g.order());
        let i = e.list.class_of(&h).expect("enumeration is complete");
        prop_assert_eq!(e.list.class_of(&hc), Some(i));
        prop_assert!(g.subgroups_conjugate(&h, &hc).is_some());
        let (c1, c2) = (g.core(&h), g.core(&hc));
        prop_assert_eq!(c1.elements(), c2.elements());
    }

    #[test]
    fn reciprocity_on_random_pairs(idx in small_group(), pick in 0usize..10_000) {
        let e = &catalog()[idx];
        let g = &e.group;
        let h = g.subgroup_generated(&[pick % g.order()]);
        let pair = SubgroupPair::new(g, &e.table, h.clone()).unwrap();
        let m = pair.frobenius_matrix().unwrap();
        for chi in 0..m.cols() {
            let restricted: u64 = (0..m.rows()).map(|phi| m.get(phi, chi) * m.sub_degrees[phi]).sum();
            prop_assert_eq!(restricted, m.degrees[chi]);
        }
        let index = (g.order() / h.order()) as u64;
        for phi in 0..m.rows() {
            let induced: u64 = (0..m.cols()).map(|chi| m.get(phi, chi) * m.degrees[chi]).sum();
            prop_assert_eq!(induced, m.sub_degrees[phi] * index);
        }
    }
}
