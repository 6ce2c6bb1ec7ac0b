//! Naive checkers shared by the integration suites. They use only
//! `has_edge` and plain loops, never the library's own degree or component
//! code.
#![allow(dead_code)]

use cograph::{Graph, Rational, RestrictedCertificate, Side, VertexSet};
use num_traits::Zero;

pub fn adjacent_on(g: &Graph, u: usize, v: usize, side: Side) -> bool {
    u != v && (g.has_edge(u, v) == (side == Side::Graph))
}

pub fn max_degree(g: &Graph, set: &[usize], side: Side) -> usize {
    set.iter()
        .map(|&u| set.iter().filter(|&&v| adjacent_on(g, u, v, side)).count())
        .max()
        .unwrap_or(0)
}

/// `count ≤ r` without the library's helpers.
pub fn le(count: usize, r: &Rational) -> bool {
    Rational::from_integer(count.into()) <= *r
}

/// The certificate's set has the stated side max degree ≤ `bound`.
pub fn cert_ok(g: &Graph, c: &RestrictedCertificate, bound: &Rational) -> bool {
    let set = c.set.to_vec();
    !set.is_empty() && set.iter().all(|&v| v < g.n()) && le(max_degree(g, &set, c.side), bound)
}

/// `X` is ε-restricted: some side has max degree ≤ ε|X|.
pub fn is_restricted(g: &Graph, set: &[usize], eps: &Rational) -> bool {
    let cap = eps * Rational::from_integer(set.len().into());
    [Side::Graph, Side::Complement]
        .into_iter()
        .any(|s| le(max_degree(g, set, s), &cap))
}

/// Sizes of the connected components of one side of `G[set]`.
pub fn component_sizes(g: &Graph, set: &[usize], side: Side) -> Vec<usize> {
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for j in 0..set.len() {
                if !seen[j] && adjacent_on(g, set[i], set[j], side) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push(size);
    }
    out
}

/// The sets are disjoint and cover `0..n`.
pub fn is_partition(n: usize, sets: &[VertexSet]) -> bool {
    let mut count = vec![0usize; n];
    for s in sets {
        for v in s.iter() {
            if v >= n {
                return false;
            }
            count[v] += 1;
        }
    }
    count.iter().all(|&c| c == 1)
}

/// Induced copies of `h` in `g` by trying every injection.
pub fn naive_copies(h: &Graph, g: &Graph) -> u64 {
    fn go(h: &Graph, g: &Graph, map: &mut Vec<usize>) -> u64 {
        let i = map.len();
        if i == h.n() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.n() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| h.has_edge(i, j) == g.has_edge(v, map[j])) {
                map.push(v);
                total += go(h, g, map);
                map.pop();
            }
        }
        total
    }
    go(h, g, &mut Vec::new())
}

/// Some four vertices induce a path.
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n();
    let perms = [
        [0, 1, 2, 3],
        [0, 1, 3, 2],
        [0, 2, 1, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [0, 3, 2, 1],
        [1, 0, 2, 3],
        [1, 0, 3, 2],
        [1, 2, 0, 3],
        [1, 3, 0, 2],
        [2, 0, 1, 3],
        [2, 1, 0, 3],
    ];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    for p in &perms {
                        let (w, x, y, z) = (q[p[0]], q[p[1]], q[p[2]], q[p[3]]);
                        if g.has_edge(w, x)
                            && g.has_edge(x, y)
                            && g.has_edge(y, z)
                            && !g.has_edge(w, y)
                            && !g.has_edge(w, z)
                            && !g.has_edge(x, z)
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn nonneg(r: &Rational) -> bool {
    !(*r < Rational::zero())
}
