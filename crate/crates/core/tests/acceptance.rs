//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use frobgraph::catalog::{affine_diam3_criterion, construct, GroupSpec, CATALOG};
use frobgraph::chartab::{character_table, verify_table, CharacterTable};
use frobgraph::depth::minimal_depth;
use frobgraph::frobenius::{
    burnside_rank, induced_gram, is_diameter_three, is_rich, mackey_gram, permutation_character, satisfies_bii,
    SubgroupPair,
};
use frobgraph::graph::{frobenius_graph, irr_action_orbits, Diameter};
use frobgraph::group::{PermGroup, Subgroup};
use frobgraph::subgroups::{
    classify_subgroups, enumerate_subgroup_classes, has_diameter_three_subgroup, is_minimal_rich_group,
    is_supersolvable, SubgroupClassList,
};

type Outcome = Result<String, String>;

fn group(spec: &str) -> (PermGroup, CharacterTable) {
    let g = construct(&spec.parse::<GroupSpec>().unwrap()).unwrap();
    let t = character_table(&g).unwrap();
    (g, t)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Stabilizer of the last point in `S_{n+1}`.
fn point_stabilizer(g: &PermGroup) -> Subgroup {
    let last = g.degree() - 1;
    let members: Vec<usize> = (0..g.order()).filter(|&x| g.element(x).image(last) == last).collect();
    g.subgroup_generated(&members)
}

const ORDER_80_MATRIX: [[u64; 8]; 4] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 2, 2, 0],
    [0, 0, 0, 0, 0, 2, 0, 2],
    [0, 0, 0, 0, 0, 0, 2, 2],
];

fn criterion_1() -> Outcome {
    let (g, t) = group("Named:G80");
    let list = enumerate_subgroup_classes(&g).map_err(err)?;
    let fours = list.with_order(4);
    let mut hits = Vec::new();
    for &i in &fours {
        let pair = SubgroupPair::new(&g, &t, list.classes[i].representative.clone()).map_err(err)?;
        let m = pair.frobenius_matrix().map_err(err)?;
        let d3 = is_diameter_three(&pair).map_err(err)?;
        let graph = frobenius_graph(&m);
        ensure(d3 == (graph.diameter == Diameter::Finite(3)), || "predicate and graph disagree".into())?;
        if d3 {
            hits.push(m);
        }
    }
    ensure(hits.len() == 1, || format!("{} diameter-3 classes of order 4", hits.len()))?;
    let expected: Vec<Vec<u64>> = ORDER_80_MATRIX.iter().map(|r| r.to_vec()).collect();
    ensure(hits[0].equivalent_up_to_permutation(&expected), || {
        format!("matrix differs:\n{}", hits[0].render_text())
    })?;
    Ok(format!(
        "{} classes of order 4, exactly one of diameter 3, matrix matches up to permutation",
        fours.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut found = Vec::new();
    for n in 2..=5usize {
        let (g, t) = group(&format!("S{}", n + 1));
        let h = point_stabilizer(&g);
        ensure(h.order() * (n + 1) == g.order(), || "bad stabilizer".into())?;
        let pair = SubgroupPair::new(&g, &t, h).map_err(err)?;
        let graph = frobenius_graph(&pair.frobenius_matrix().map_err(err)?);
        if n == 2 {
            ensure(
                graph.vertex_count() == 5 && graph.is_connected() && graph.component_path_length(0) == Some(4),
                || "S2 < S3 is not a path on 5 vertices".into(),
            )?;
        }
        ensure(graph.diameter == Diameter::Finite(2 * n as u32), || {
            format!("S{} < S{}: diameter {}", n, n + 1, graph.diameter)
        })?;
        found.push(graph.diameter.to_string());
    }
    Ok(format!("S2<S3 path on 5 vertices; diameters for n = 2..5: {}", found.join(", ")))
}

fn criterion_3() -> Outcome {
    let (g, t) = group("Named:G351");
    let degrees = t.degrees();
    let linear = degrees.iter().filter(|&&d| d == 1).count();
    let big = degrees.iter().filter(|&&d| d == 13).count();
    ensure(linear == 13 && big == 2 && degrees.len() == 15, || format!("degrees {:?}", degrees))?;
    let stats = t.stats();
    ensure((stats.t, stats.k, stats.b) == (39, 15, 13), || format!("stats {:?}", stats))?;
    let list = enumerate_subgroup_classes(&g).map_err(err)?;
    let mut matched = 0;
    for &i in &list.with_order(9) {
        let h = &list.classes[i].representative;
        let perm_char = permutation_character(&g, &t, h).map_err(err)?;
        if perm_char.iter().any(|&m| m != 1) {
            continue;
        }
        let pair = SubgroupPair::new(&g, &t, h.clone()).map_err(err)?;
        let m = pair.frobenius_matrix().map_err(err)?;
        let s = induced_gram(&m);
        let bii = satisfies_bii(&s);
        let (phi, psi) = bii.witness.ok_or("order-9 subgroup satisfies b(ii)")?;
        // phi^G and psi^G are read off the rows of M
        let pure = |row: usize| -> Option<usize> {
            let support: Vec<usize> = (0..m.cols()).filter(|&c| m.get(row, c) > 0).collect();
            (support.len() == 1 && m.get(row, support[0]) == 3 && degrees[support[0]] == 13).then(|| support[0])
        };
        let (chi, eta) = (pure(phi).ok_or("phi^G is not 3 chi")?, pure(psi).ok_or("psi^G is not 3 eta")?);
        ensure(chi != eta, || "witness characters coincide".into())?;
        ensure(is_rich(&g, &t, h).map_err(err)?.rich, || "not rich".into())?;
        ensure(!is_diameter_three(&pair).map_err(err)?, || "diameter 3".into())?;
        let graph = frobenius_graph(&m);
        ensure(graph.diameter != Diameter::Finite(3), || "graph has diameter 3".into())?;
        matched += 1;
    }
    ensure(matched >= 1, || "no order-9 subgroup with 1_H^G the sum of all irreducibles".into())?;
    // order-3 subgroups, reported rather than assumed
    let mut threes = Vec::new();
    for &i in &list.with_order(3) {
        let pair = SubgroupPair::new(&g, &t, list.classes[i].representative.clone()).map_err(err)?;
        threes.push(is_diameter_three(&pair).map_err(err)?);
    }
    Ok(format!(
        "13 linear + 2 of degree 13; {} order-9 class(es) rich, fail b(ii) with phi^G = 3chi, psi^G = 3eta; \
         order-3 classes diameter 3: {:?}",
        matched, threes
    ))
}

fn table2_row(spec: &str, n: usize, gg: usize, m: usize, orders: &[usize]) -> Result<String, String> {
    let (g, t) = group(spec);
    let list = enumerate_subgroup_classes(&g).map_err(err)?;
    let report = classify_subgroups(&g, &t, &list).map_err(err)?;
    let mut got = report.maximal_rich_orders();
    got.sort_unstable();
    ensure((report.n, report.g, report.m) == (n, gg, m) && got == orders, || {
        format!("{}: n={} g={} m={} maximal rich orders {:?}", spec, report.n, report.g, report.m, got)
    })?;
    ensure(
        report.maximal_rich.iter().all(|&i| report.classes[i].diameter_three),
        || format!("{}: a maximal rich class is not diameter 3", spec),
    )?;
    Ok(format!("{} n={} g={} m={} maximal rich {:?}", spec, n, gg, m, orders))
}

fn criterion_4() -> Outcome {
    let a = table2_row("A5", 9, 2, 2, &[2, 3])?;
    let b = table2_row("PSL3:2", 15, 3, 2, &[3, 4])?;
    let mut rows = vec![a, b];
    // further rows of the same table, beyond the required two
    rows.push(table2_row("A6", 22, 9, 6, &[4, 4, 4, 5, 6, 6])?);
    rows.push(table2_row("PSL2:8", 12, 4, 3, &[3, 4, 7])?);
    rows.push(table2_row("PSL2:11", 16, 7, 5, &[4, 5, 6, 6, 6])?);
    rows.push(table2_row("PSL2:13", 16, 7, 5, &[4, 6, 6, 6, 7])?);
    Ok(rows.join("; "))
}

fn criterion_5() -> Outcome {
    let (g5, t5) = group("SL2:5");
    ensure(has_diameter_three_subgroup(&g5, &t5).map_err(err)?.is_none(), || {
        "SL(2,5) has a diameter-3 subgroup".into()
    })?;
    let list5 = enumerate_subgroup_classes(&g5).map_err(err)?;
    let r5 = classify_subgroups(&g5, &t5, &list5).map_err(err)?;
    ensure(r5.classes.iter().all(|c| !c.diameter_three), || "full scan of SL(2,5) disagrees".into())?;
    let (g7, t7) = group("SL2:7");
    let w = has_diameter_three_subgroup(&g7, &t7).map_err(err)?.ok_or("SL(2,7) has no diameter-3 subgroup")?;
    ensure(w.order() == 3, || format!("witness of order {}", w.order()))?;
    let list7 = enumerate_subgroup_classes(&g7).map_err(err)?;
    ensure(is_minimal_rich_group(&g7, &t7, &list7).map_err(err)?, || "SL(2,7) is not minimal".into())?;
    Ok("SL(2,5): none (prime-order and full scan); SL(2,7): order 3 witness, minimal".into())
}

fn criterion_6() -> Outcome {
    let (g, t) = group("S3");
    let h = point_stabilizer(&g);
    let pair = SubgroupPair::new(&g, &t, h).map_err(err)?;
    let m = pair.frobenius_matrix().map_err(err)?;
    let d = minimal_depth(&m).minimal_depth;
    let diam = frobenius_graph(&m).diameter;
    ensure(d == 3 && diam == Diameter::Finite(4), || format!("S2<S3: depth {} diameter {}", d, diam))?;
    let (g, t) = group("Named:D12");
    let list = enumerate_subgroup_classes(&g).map_err(err)?;
    let syl = list.sylow(g.order(), 2);
    ensure(syl.len() == 1, || "Sylow 2 class missing".into())?;
    let pair = SubgroupPair::new(&g, &t, list.classes[syl[0]].representative.clone()).map_err(err)?;
    let m = pair.frobenius_matrix().map_err(err)?;
    let graph = frobenius_graph(&m);
    let depth = minimal_depth(&m).minimal_depth;
    ensure(graph.components == 2, || format!("{} components", graph.components))?;
    ensure(
        (0..2).all(|c| graph.component_path_length(c) == Some(4)),
        || "components are not paths of length 4".into(),
    )?;
    ensure(depth == 3, || format!("D12 depth {}", depth))?;
    Ok("S2<S3 depth 3 diameter 4; Sylow-2 < D12 depth 3, two paths of length 4".into())
}

/// Catalog groups with their class lists, up to the given order.
fn catalog_groups(max_order: usize) -> Vec<(String, PermGroup, CharacterTable, SubgroupClassList)> {
    CATALOG
        .iter()
        .filter_map(|(s, _)| {
            let g = construct(&s.parse::<GroupSpec>().unwrap()).unwrap();
            (g.order() <= max_order).then(|| {
                let t = character_table(&g).unwrap();
                let list = enumerate_subgroup_classes(&g).unwrap();
                (s.to_string(), g, t, list)
            })
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (name, g, t, list) in catalog_groups(2000) {
        for (i, class) in list.classes.iter().enumerate() {
            let h = &class.representative;
            let pair = SubgroupPair::new(&g, &t, h.clone()).map_err(err)?;
            let m = pair.frobenius_matrix().map_err(err)?;
            let s = induced_gram(&m);
            let graph = frobenius_graph(&m);
            let mut fail = |what: &str| violations.push(format!("{} class {}: {}", name, i, what));
            if is_diameter_three(&pair).map_err(err)? != (graph.diameter == Diameter::Finite(3)) {
                fail("diameter-3 predicate disagrees with the graph");
            }
            let core = g.core(h);
            if irr_action_orbits(&g, &core).map_err(err)?.count != graph.components {
                fail("component count differs from orbit count");
            }
            if graph.is_connected() != core.is_trivial() {
                fail("connectivity differs from core triviality");
            }
            if mackey_gram(&pair).map_err(err)? != s {
                fail("double coset sum differs from M M^T");
            }
            if burnside_rank(&g, h) as u64 != s.get(0, 0) {
                fail("double coset count differs from S[1][1]");
            }
            if permutation_character(&g, &t, h).map_err(err)? != m.entries[0] {
                fail("permutation character differs from the first row");
            }
            for chi in 0..m.cols() {
                let restricted: u64 = (0..m.rows()).map(|phi| m.get(phi, chi) * m.sub_degrees[phi]).sum();
                if restricted != m.degrees[chi] {
                    fail("restricted degree mismatch");
                }
            }
            for phi in 0..m.rows() {
                let induced: u64 = (0..m.cols()).map(|chi| m.get(phi, chi) * m.degrees[chi]).sum();
                if induced as usize != m.sub_degrees[phi] as usize * g.order() / h.order() {
                    fail("induced degree mismatch");
                }
            }
            pairs += 1;
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{} pairs, zero violations", pairs))
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut r = n;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn criterion_8() -> Outcome {
    let mut rich_count = 0;
    let mut supersolvable = Vec::new();
    let mut violations = Vec::new();
    for (name, g, t, list) in catalog_groups(2000) {
        let stats = t.stats();
        let derived = g.derived_subgroup();
        let n = g.order();
        let report = classify_subgroups(&g, &t, &list).map_err(err)?;
        let any_rich = report.classes.iter().any(|c| c.rich && c.order > 1);
        if is_supersolvable(&g, &list) {
            supersolvable.push(name.clone());
            if any_rich {
                violations.push(format!("{}: supersolvable with a rich subgroup", name));
            }
        }
        for c in report.classes.iter().filter(|c| c.rich && c.order > 1) {
            rich_count += 1;
            let h = &list.classes[c.index].representative;
            let hn = h.order();
            let index = n / hn;
            let mut fail = |what: &str| violations.push(format!("{} class {}: {}", name, c.index, what));
            if hn * hn >= n {
                fail("|H| >= sqrt|G|");
            }
            if hn as u64 >= stats.b {
                fail("|H| >= b(G)");
            }
            if hn + stats.k > index + 1 {
                fail("|H| > [G:H] - k(G) + 1");
            }
            if !h.is_subgroup_of(&derived) {
                fail("H not inside G'");
            }
            if !g.core(h).is_trivial() {
                fail("nontrivial core");
            }
            if is_prime_power(index) {
                fail("prime-power index");
            }
            if stats.t as usize > index {
                fail("T(G) > [G:H]");
            }
        }
    }
    for expected in ["C4", "E:2:3", "D8", "Named:D12", "Named:S3xC4"] {
        if !supersolvable.iter().any(|s| s == expected) {
            violations.push(format!("{} not recognized as supersolvable", expected));
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!(
        "{} nontrivial rich classes checked, {} supersolvable groups without rich subgroups, zero violations",
        rich_count,
        supersolvable.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut checked = Vec::new();
    for p in [3usize, 5, 7] {
        let q = p * p;
        for d in (2..q).filter(|d| (q - 1) % d == 0) {
            let predicted = affine_diam3_criterion(p, d).map_err(err)?;
            let spec = GroupSpec::Agl1Subgroup { q, d };
            let g = construct(&spec).map_err(err)?;
            let t = character_table(&g).map_err(err)?;
            let quick = has_diameter_three_subgroup(&g, &t).map_err(err)?.is_some();
            let list = enumerate_subgroup_classes(&g).map_err(err)?;
            let full = classify_subgroups(&g, &t, &list).map_err(err)?;
            let scanned = full.classes.iter().any(|c| c.diameter_three);
            ensure(predicted == quick && quick == scanned, || {
                format!("{}: criterion {} prime-order scan {} full scan {}", spec, predicted, quick, scanned)
            })?;
            checked.push(format!("{}:{}{}", q, d, if predicted { "+" } else { "-" }));
        }
    }
    Ok(format!("{} groups agree: {}", checked.len(), checked.join(" ")))
}

fn criterion_10() -> Outcome {
    let mut n = 0;
    for (s, _) in CATALOG {
        let g = construct(&s.parse::<GroupSpec>().unwrap()).map_err(err)?;
        let t = character_table(&g).map_err(|e| format!("{}: {}", s, e))?;
        verify_table(&t).map_err(|e| format!("{}: {}", s, e))?;
        n += 1;
    }
    let (_, t) = group("AGL1:8");
    let st = t.stats();
    ensure((st.t, st.k, st.b) == (14, 8, 7), || format!("AGL(1,8) stats {:?}", st))?;
    Ok(format!("{} catalog tables verified exactly", n))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome, Duration, &str); 10] = [
        (1, criterion_1, Duration::from_secs(5), "order-80 Frobenius matrix"),
        (2, criterion_2, Duration::from_secs(60), "diameter of S_n < S_{n+1}"),
        (3, criterion_3, Duration::from_secs(30), "G351 rich but not diameter 3"),
        (4, criterion_4, Duration::from_secs(60), "simple group scans"),
        (5, criterion_5, Duration::from_secs(300), "SL(2,5) and SL(2,7)"),
        (6, criterion_6, Duration::from_secs(1), "depth examples"),
        (7, criterion_7, Duration::from_secs(600), "equivalence suite"),
        (8, criterion_8, Duration::from_secs(600), "bounds and obstructions"),
        (9, criterion_9, Duration::from_secs(600), "affine criterion"),
        (10, criterion_10, Duration::from_secs(600), "character table validation"),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, run, budget, title) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{} (over the {:?} budget)", d, budget)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} [{}] {:>8.2}s  {}: {}", id, status, elapsed.as_secs_f64(), title, detail);
    }
    if failed > 0 {
        println!("{} criterion(s) failed", failed);
        std::process::exit(1);
    }
}
