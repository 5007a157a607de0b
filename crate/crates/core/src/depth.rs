//! Minimal depth of a subgroup from the Frobenius matrix `M` and
//! `S = M M^T`.
//!
//! Depth `2m+1` asks for `S^{m+1} <= q S^m` and depth `2m` for
//! `S^m M <= q S^{m-1} M`, entrywise, for some `q > 0`. All matrices here
//! have nonnegative entries, so such a `q` exists exactly when the support
//! of the left side lies inside the support of the right side: if it does,
//! `q = max a_ij / b_ij` over the support works, and if some `a_ij > 0`
//! meets `b_ij = 0` no `q` does. Moreover the support of a product of
//! nonnegative matrices is the boolean product of the supports, so the
//! whole computation runs on 0/1 patterns.

use serde::{Deserialize, Serialize};

use crate::frobenius::{induced_gram, FrobeniusMatrix};

/// Row-major 0/1 pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Support {
    pub fn of(m: &[Vec<u64>]) -> Support {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        Support {
            rows,
            cols,
            bits: m.iter().flatten().map(|&v| v > 0).collect(),
        }
    }

    pub fn identity(n: usize) -> Support {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        Support { rows: n, cols: n, bits }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn product(&self, other: &Support) -> Support {
        assert_eq!(self.cols, other.rows);
        let mut bits = vec![false; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if !self.get(i, k) {
                    continue;
                }
                for j in 0..other.cols {
                    if other.get(k, j) {
                        bits[i * other.cols + j] = true;
                    }
                }
            }
        }
        Support {
            rows: self.rows,
            cols: other.cols,
            bits,
        }
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.bits.len() == other.bits.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub minimal_depth: u32,
    /// Smallest `m >= 0` with `supp S^{m+1} <= supp S^m`.
    pub odd_m: u32,
    /// Smallest `m >= 1` with `supp S^m M <= supp S^{m-1} M`.
    pub even_m: u32,
    /// Number of nonzero entries of `S^0, S^1, ...` up to stabilization.
    pub support_chain_lengths: Vec<usize>,
    /// Depth 1, which only arises from the `S^0 = I` convention.
    pub degenerate: bool,
}

/// Supports of `S^0, S^1, ...` until two consecutive ones agree. The chain
/// is non-decreasing because `S` has a positive diagonal.
fn power_chain(s: &Support) -> Vec<Support> {
    let mut chain = vec![Support::identity(s.rows)];
    loop {
        let next = chain.last().expect("nonempty").product(s);
        let stable = next == *chain.last().expect("nonempty");
        chain.push(next);
        if stable {
            return chain;
        }
    }
}

pub fn minimal_depth(m: &FrobeniusMatrix) -> DepthReport {
    let s = Support::of(&induced_gram(m).entries);
    let mm = Support::of(&m.entries);
    let chain = power_chain(&s);
    let odd_m = (0..chain.len() - 1)
        .find(|&i| chain[i + 1].is_subset(&chain[i]))
        .expect("chain ends with a repeat") as u32;
    let even_m = (1..chain.len())
        .find(|&i| chain[i].product(&mm).is_subset(&chain[i - 1].product(&mm)))
        .expect("stable powers give an even certificate") as u32;
    let minimal_depth = (2 * odd_m + 1).min(2 * even_m);
    DepthReport {
        minimal_depth,
        odd_m,
        even_m,
        support_chain_lengths: chain[..chain.len() - 1].iter().map(Support::count).collect(),
        degenerate: minimal_depth == 1,
    }
}

/// Whether depth `n >= 1` holds, straight from the definition.
pub fn has_depth(m: &FrobeniusMatrix, n: u32) -> bool {
    let s = Support::of(&induced_gram(m).entries);
    let mm = Support::of(&m.entries);
    let power = |k: u32| (0..k).fold(Support::identity(s.rows), |acc, _| acc.product(&s));
    if n % 2 == 1 {
        let k = (n - 1) / 2;
        power(k + 1).is_subset(&power(k))
    } else {
        let k = n / 2;
        power(k).product(&mm).is_subset(&power(k - 1).product(&mm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Searches `q` among the ratios `a_ij / b_ij` and checks `A <= q B`
    /// with exact cross-multiplication.
    fn dominated_by_rational_q(a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
        let mut candidates: Vec<(u64, u64)> = vec![(1, 1)];
        for (ra, rb) in a.iter().zip(b) {
            for (&x, &y) in ra.iter().zip(rb) {
                if y > 0 {
                    candidates.push((x.max(1), y));
                }
            }
        }
        candidates.iter().any(|&(num, den)| {
            a.iter()
                .flatten()
                .zip(b.iter().flatten())
                .all(|(&x, &y)| x as u128 * den as u128 <= num as u128 * y as u128)
        })
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1u64..9], cols), rows)
    }

    proptest! {
        #[test]
        fn support_containment_matches_q_search(a in matrix(3, 4), b in matrix(3, 4)) {
            prop_assert_eq!(Support::of(&a).is_subset(&Support::of(&b)), dominated_by_rational_q(&a, &b));
        }

        #[test]
        fn support_of_product_is_boolean_product(a in matrix(3, 4), b in matrix(4, 2)) {
            let prod: Vec<Vec<u64>> = (0..3)
                .map(|i| (0..2).map(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect();
            prop_assert_eq!(Support::of(&prod), Support::of(&a).product(&Support::of(&b)));
        }
    }

    fn fm(entries: Vec<Vec<u64>>, sub: Vec<u64>, deg: Vec<u64>) -> FrobeniusMatrix {
        FrobeniusMatrix {
            entries,
            sub_degrees: sub,
            degrees: deg,
        }
    }

    #[test]
    fn s2_in_s3_has_depth_three() {
        let m = fm(vec![vec![1, 0, 1], vec![0, 1, 1]], vec![1, 1], vec![1, 1, 2]);
        let r = minimal_depth(&m);
        assert_eq!(r.minimal_depth, 3);
        assert_eq!(r.odd_m, 1);
        assert!(!has_depth(&m, 2));
        for n in 3..8 {
            assert!(has_depth(&m, n));
        }
    }

    #[test]
    fn whole_group_is_degenerate_depth_one() {
        let m = fm(vec![vec![1, 0], vec![0, 1]], vec![1, 1], vec![1, 1]);
        let r = minimal_depth(&m);
        assert_eq!(r.minimal_depth, 1);
        assert!(r.degenerate);
    }
}
