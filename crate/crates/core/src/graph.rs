//! The bipartite graph on `Irr(G) + Irr(H)` whose biadjacency matrix is the
//! support of the Frobenius matrix.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chartab::character_table;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusMatrix;
use crate::group::{PermGroup, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diameter {
    Finite(u32),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{}", d),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

/// Vertices `0..k(G)` are the characters of `G`, followed by the `k(H)`
/// characters of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusGraph {
    pub degrees: Vec<u64>,
    pub sub_degrees: Vec<u64>,
    pub adjacency: Vec<Vec<usize>>,
    pub component_id: Vec<usize>,
    pub components: usize,
    /// `None` for vertices whose component is not the whole graph.
    pub eccentricity: Vec<Option<u32>>,
    pub diameter: Diameter,
}

pub fn frobenius_graph(m: &FrobeniusMatrix) -> FrobeniusGraph {
    let kg = m.cols();
    let kh = m.rows();
    let n = kg + kh;
    let mut adjacency = vec![Vec::new(); n];
    for phi in 0..kh {
        for chi in 0..kg {
            if m.get(phi, chi) > 0 {
                adjacency[chi].push(kg + phi);
                adjacency[kg + phi].push(chi);
            }
        }
    }
    let mut component_id = vec![usize::MAX; n];
    let mut components = 0;
    let mut eccentricity = vec![None; n];
    for s in 0..n {
        let dist = bfs(&adjacency, s);
        if component_id[s] == usize::MAX {
            for (v, d) in dist.iter().enumerate() {
                if d.is_some() {
                    component_id[v] = components;
                }
            }
            components += 1;
        }
        if dist.iter().all(Option::is_some) {
            eccentricity[s] = dist.iter().flatten().copied().max();
        }
    }
    let diameter = if components == 1 {
        Diameter::Finite(eccentricity.iter().flatten().copied().max().unwrap_or(0))
    } else {
        Diameter::Infinite
    };
    FrobeniusGraph {
        degrees: m.degrees.clone(),
        sub_degrees: m.sub_degrees.clone(),
        adjacency,
        component_id,
        components,
        eccentricity,
        diameter,
    }
}

fn bfs(adjacency: &[Vec<usize>], s: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices are reached");
        for &w in &adjacency[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

impl FrobeniusGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    /// Shortest path length, if any.
    pub fn distance(&self, a: usize, b: usize) -> Option<u32> {
        bfs(&self.adjacency, a)[b]
    }

    /// Vertices of each component, in vertex order.
    pub fn component_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.components];
        for (v, &c) in self.component_id.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// The component is a simple path; returns its length in edges.
    pub fn component_path_length(&self, c: usize) -> Option<usize> {
        let verts: Vec<usize> = (0..self.vertex_count()).filter(|&v| self.component_id[v] == c).collect();
        let edges: usize = verts.iter().map(|&v| self.adjacency[v].len()).sum::<usize>() / 2;
        let ends = verts.iter().filter(|&&v| self.adjacency[v].len() <= 1).count();
        let max_deg = verts.iter().map(|&v| self.adjacency[v].len()).max().unwrap_or(0);
        let is_path = edges + 1 == verts.len() && max_deg <= 2 && (verts.len() == 1 || ends == 2);
        is_path.then_some(edges)
    }

    /// Graphviz rendering, vertices labelled by character degree.
    pub fn to_dot(&self) -> String {
        let kg = self.degrees.len();
        let mut out = String::from("graph frobenius {\n");
        for (i, d) in self.degrees.iter().enumerate() {
            out.push_str(&format!("  g{} [label=\"{}\"];\n", i, d));
        }
        for (i, d) in self.sub_degrees.iter().enumerate() {
            out.push_str(&format!("  h{} [label=\"{}\", shape=box];\n", i, d));
        }
        for chi in 0..kg {
            for &w in &self.adjacency[chi] {
                out.push_str(&format!("  g{} -- h{};\n", chi, w - kg));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrOrbits {
    pub count: usize,
    /// Orbits of `G` on the characters of `K`, as sorted index lists.
    pub orbits: Vec<Vec<usize>>,
}

/// Orbits of the conjugation action of `G` on `Irr(K)` for `K` normal in `G`.
pub fn irr_action_orbits(g: &PermGroup, k: &Subgroup) -> Result<IrrOrbits> {
    if !g.is_normal(k) {
        return Err(Error::InvalidSpec("subgroup is not normal".into()));
    }
    let kg = g.subgroup_as_group(k);
    let tk = character_table(&kg)?;
    let cd = tk.classes();
    let n = tk.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &s in g.generator_indices() {
        // class c of K goes to the class of rep_c^s
        let moved: Vec<usize> = cd
            .representatives
            .iter()
            .map(|&local| {
                let x = g.conj(k.elements()[local] as usize, s as usize);
                cd.class_of(k.local_index(x).expect("normal subgroup"))
            })
            .collect();
        for chi in 0..n {
            let row: Vec<_> = (0..n).map(|c| tk.value(chi, moved[c]).clone()).collect();
            let image = (0..n)
                .find(|&psi| tk.row(psi) == row.as_slice())
                .ok_or_else(|| Error::InternalInconsistency("conjugated character is not irreducible".into()))?;
            let (a, b) = (find(&mut parent, chi), find(&mut parent, image));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for chi in 0..n {
        let r = find(&mut parent, chi);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(chi);
    }
    Ok(IrrOrbits {
        count: orbits.len(),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::SubgroupPair;
    use crate::group::{group_from_generators, Limits};
    use crate::perm::Permutation;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        let g: Vec<_> = gens.iter().map(|s| Permutation::parse_cycles(deg, s).unwrap()).collect();
        group_from_generators(deg, &g, Limits::default()).unwrap()
    }

    fn graph_of(g: &PermGroup, h: Subgroup) -> FrobeniusGraph {
        let t = character_table(g).unwrap();
        let pair = SubgroupPair::new(g, &t, h).unwrap();
        frobenius_graph(&pair.frobenius_matrix().unwrap())
    }

    #[test]
    fn s3_path() {
        let g = grp(3, &["(1,2)", "(1,2,3)"]);
        let h = g.subgroup_from_perms(&[Permutation::parse_cycles(3, "(1,2)").unwrap()]).unwrap();
        let gr = graph_of(&g, h);
        assert_eq!(gr.vertex_count(), 5);
        assert_eq!(gr.diameter, Diameter::Finite(4));
        assert_eq!(gr.component_path_length(0), Some(4));
        assert!(gr.to_dot().contains("g0 -- h0"));
    }

    #[test]
    fn degenerate_diameters() {
        let g = grp(3, &["(1,2)", "(1,2,3)"]);
        assert_eq!(graph_of(&g, g.trivial_subgroup()).diameter, Diameter::Finite(2));
        assert_eq!(graph_of(&g, g.whole()).diameter, Diameter::Infinite);
        let one = PermGroup::trivial(1);
        assert_eq!(graph_of(&one, one.whole()).diameter, Diameter::Finite(1));
    }

    #[test]
    fn orbits_on_normal_subgroups() {
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        let v4 = s4
            .subgroup_from_perms(&[
                Permutation::parse_cycles(4, "(1,2)(3,4)").unwrap(),
                Permutation::parse_cycles(4, "(1,3)(2,4)").unwrap(),
            ])
            .unwrap();
        let o = irr_action_orbits(&s4, &v4).unwrap();
        assert_eq!(o.count, 2);
        assert_eq!(o.orbits, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(irr_action_orbits(&s4, &s4.trivial_subgroup()).unwrap().count, 1);
    }
}
