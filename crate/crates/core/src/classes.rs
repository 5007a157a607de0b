//! Conjugacy classes with representatives, centralizer orders and power maps.

use crate::group::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    /// Element index of each class representative (the lexicographically
    /// smallest element of its class).
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<u32>,
    pub centralizer_orders: Vec<usize>,
    pub element_orders: Vec<u32>,
    /// `power_map[c][j]` is the class of `rep_c^j` for `0 <= j < ord(rep_c)`.
    pub power_map: Vec<Vec<u32>>,
    /// Class of the inverses.
    pub inverse_class: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    /// Class of `rep_c^k` for any integer `k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let o = self.element_orders[c] as i64;
        self.power_map[c][k.rem_euclid(o) as usize] as usize
    }
}

/// Orbits of the conjugation action, walked in element order so that each
/// class is discovered from its smallest member.
pub fn conjugacy_classes(g: &PermGroup) -> ClassData {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    let gens = g.generator_indices();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        representatives.push(x);
        class_of[x] = id;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in gens {
                let z = g.conj(y, s as usize);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        sizes.push(orbit.len());
    }
    let centralizer_orders = sizes.iter().map(|&s| n / s).collect();
    let element_orders: Vec<u32> = representatives.iter().map(|&r| g.element_order(r)).collect();
    let power_map = representatives
        .iter()
        .map(|&r| {
            let o = g.element_order(r) as usize;
            let mut out = Vec::with_capacity(o);
            let mut acc = 0usize;
            for _ in 0..o {
                out.push(class_of[acc]);
                acc = g.mul(acc, r);
            }
            out
        })
        .collect();
    let inverse_class = representatives.iter().map(|&r| class_of[g.inv(r)]).collect();
    ClassData {
        representatives,
        sizes,
        class_of,
        centralizer_orders,
        element_orders,
        power_map,
        inverse_class,
    }
}
