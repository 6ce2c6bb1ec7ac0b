//! Exponential reference searches for small graphs. Every search refuses to
//! run beyond its vertex budget rather than truncating.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexSet};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices_subset: usize,
    pub max_vertices_partition: usize,
    /// Host size for the naive injection count.
    pub max_vertices_count: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices_subset: 16,
            max_vertices_partition: 14,
            max_vertices_count: 10,
            time_cap: None,
        }
    }
}

/// Hard ceiling for the `u32` mask representation.
const MASK_LIMIT: usize = 24;

struct Clock {
    start: Instant,
    cap: Option<Duration>,
    what: &'static str,
}

impl Clock {
    fn new(budget: &OracleBudget, what: &'static str) -> Self {
        Clock {
            start: Instant::now(),
            cap: budget.time_cap,
            what,
        }
    }

    fn check(&self) -> Result<()> {
        match self.cap {
            Some(cap) if self.start.elapsed() > cap => Err(Error::TimeCap {
                what: self.what,
                seconds: cap.as_secs(),
            }),
            _ => Ok(()),
        }
    }
}

fn refuse(what: &'static str, size: usize, budget: usize) -> Result<()> {
    if size > budget.min(MASK_LIMIT) {
        return Err(Error::OverBudget { what, size, budget });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | 1 << v))
        .collect()
}

fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// Per-size degree caps: `⌊ε·s⌋`, or `⌊bound⌋` for every size.
fn degree_caps(n: usize, eps: &Rational, absolute: Option<&Rational>) -> Vec<usize> {
    (0..=n)
        .map(|s| match absolute {
            Some(b) => rational::floor_usize(b),
            None => rational::floor_usize(&rational::scale(eps, s)),
        })
        .collect()
}

/// Visits all nonempty subsets in Gray-code order with the in-set degree of
/// every vertex kept up to date. The callback sees the mask, its size and
/// the degree table, and returns whether to keep going.
fn gray_walk(
    adj: &[u32],
    clock: &Clock,
    mut visit: impl FnMut(u32, usize, &[usize]) -> bool,
) -> Result<()> {
    let n = adj.len();
    let mut deg = vec![0usize; n];
    let mut mask = 0u32;
    let mut size = 0usize;
    for i in 1u64..1u64 << n {
        let w = i.trailing_zeros() as usize;
        let bit = 1u32 << w;
        let adding = mask & bit == 0;
        mask ^= bit;
        let mut nb = adj[w];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if adding {
                deg[u] += 1;
            } else {
                deg[u] -= 1;
            }
        }
        if adding {
            size += 1;
        } else {
            size -= 1;
        }
        if i & 0xfff == 0 {
            clock.check()?;
        }
        if !visit(mask, size, &deg) {
            break;
        }
    }
    Ok(())
}

fn side_max(mask: u32, size: usize, deg: &[usize], side: Side) -> usize {
    let mut m = mask;
    let mut best = 0;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = match side {
            Side::Graph => deg[v],
            Side::Complement => size - 1 - deg[v],
        };
        best = best.max(d);
    }
    best
}

/// Largest nonempty `X` with one side of maximum degree `≤ ε|X|`, or
/// `≤ absolute_bound` when given, plus a witness and its side.
pub fn max_restricted_set(
    g: &Graph,
    eps: &Rational,
    absolute_bound: Option<&Rational>,
    budget: &OracleBudget,
) -> Result<(usize, VertexSet, Side)> {
    refuse("max_restricted_set", g.n(), budget.max_vertices_subset)?;
    if g.n() == 0 {
        return Err(Error::input("empty graph has no nonempty subsets"));
    }
    let adj = masks(g);
    let caps = degree_caps(g.n(), eps, absolute_bound);
    let clock = Clock::new(budget, "max_restricted_set");
    let mut best: Option<(usize, u32, Side)> = None;
    gray_walk(&adj, &clock, |mask, size, deg| {
        if best.is_none_or(|(b, _, _)| size > b) {
            for side in [Side::Graph, Side::Complement] {
                if side_max(mask, size, deg, side) <= caps[size] {
                    best = Some((size, mask, side));
                    break;
                }
            }
        }
        true
    })?;
    let (size, mask, side) = best.expect("singletons always qualify unless eps < 0");
    Ok((size, mask_to_set(g.n(), mask), side))
}

/// `restricted[mask]` for every subset, relative bound `ε|X|`.
fn restricted_table(g: &Graph, eps: &Rational, clock: &Clock) -> Result<Vec<bool>> {
    let adj = masks(g);
    let caps = degree_caps(g.n(), eps, None);
    let mut table = vec![false; 1 << g.n()];
    gray_walk(&adj, clock, |mask, size, deg| {
        table[mask as usize] = side_max(mask, size, deg, Side::Graph) <= caps[size]
            || side_max(mask, size, deg, Side::Complement) <= caps[size];
        true
    })?;
    Ok(table)
}

/// Minimum number of parts in a partition into ε-restricted sets, with an
/// optimal partition (parts ordered by smallest member).
pub fn min_restricted_partition(
    g: &Graph,
    eps: &Rational,
    budget: &OracleBudget,
) -> Result<(usize, Vec<VertexSet>)> {
    refuse("min_restricted_partition", g.n(), budget.max_vertices_partition)?;
    let n = g.n();
    let clock = Clock::new(budget, "min_restricted_partition");
    let ok = restricted_table(g, eps, &clock)?;
    let full = (1usize << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    let mut choice = vec![0usize; 1 << n];
    best[0] = 0;
    for mask in 1..=full {
        if mask & 0xff == 0 {
            clock.check()?;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // submasks of `rest`, each joined with the lowest bit
        let mut sub = rest;
        loop {
            let part = sub | low;
            if ok[part] {
                let r = best[mask ^ part];
                if r != usize::MAX && r + 1 < best[mask] {
                    best[mask] = r + 1;
                    choice[mask] = part;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut parts = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let part = choice[mask];
        parts.push(mask_to_set(n, part as u32));
        mask ^= part;
    }
    parts.sort_by_key(|p| p.min());
    Ok((best[full], parts))
}

/// Copies of `H` in `G` by checking every injective map directly.
pub fn count_copies_reference(h: &Graph, g: &Graph, budget: &OracleBudget) -> Result<BigUint> {
    refuse("count_copies_reference", g.n(), budget.max_vertices_count)?;
    let k = h.n();
    if k > g.n() {
        return Ok(BigUint::zero());
    }
    let mut image = vec![0usize; k];
    let mut used = vec![false; g.n()];
    let mut count = BigUint::zero();
    fn rec(
        i: usize,
        h: &Graph,
        g: &Graph,
        image: &mut [usize],
        used: &mut [bool],
        count: &mut BigUint,
    ) {
        if i == image.len() {
            let ok = (0..image.len()).all(|a| {
                (a + 1..image.len()).all(|b| h.has_edge(a, b) == g.has_edge(image[a], image[b]))
            });
            if ok {
                *count += 1u32;
            }
            return;
        }
        for v in 0..g.n() {
            if !used[v] {
                used[v] = true;
                image[i] = v;
                rec(i + 1, h, g, image, used, count);
                used[v] = false;
            }
        }
    }
    rec(0, h, g, &mut image, &mut used, &mut count);
    Ok(count)
}

/// Largest nonempty `X` such that one side has at most `ε·C(|X|, 2)` edges
/// inside `X`.
pub fn max_sparse_or_dense_set(
    g: &Graph,
    eps: &Rational,
    budget: &OracleBudget,
) -> Result<(usize, VertexSet, Side)> {
    refuse("max_sparse_or_dense_set", g.n(), budget.max_vertices_subset)?;
    if g.n() == 0 {
        return Err(Error::input("empty graph has no nonempty subsets"));
    }
    let n = g.n();
    let adj = masks(g);
    let caps: Vec<usize> = (0..=n)
        .map(|s| rational::floor_usize(&(eps * rational::int(s * s.saturating_sub(1) / 2))))
        .collect();
    let clock = Clock::new(budget, "max_sparse_or_dense_set");
    let mut best: Option<(usize, u32, Side)> = None;
    let mut edges = 0usize;
    let mut prev = 0u32;
    gray_walk(&adj, &clock, |mask, size, deg| {
        let changed = mask ^ prev;
        let w = changed.trailing_zeros() as usize;
        if mask & changed != 0 {
            edges += deg[w];
        } else {
            edges -= deg[w];
        }
        prev = mask;
        if best.is_none_or(|(b, _, _)| size > b) {
            let non_edges = size * size.saturating_sub(1) / 2 - edges;
            if edges <= caps[size] {
                best = Some((size, mask, Side::Graph));
            } else if non_edges <= caps[size] {
                best = Some((size, mask, Side::Complement));
            }
        }
        true
    })?;
    let (size, mask, side) = best.expect("singletons always qualify");
    Ok((size, mask_to_set(n, mask), side))
}

/// Some partition of `V(G)` into a thin set and a thick set, by trying all
/// `2^n` splits.
pub fn find_thin_thick(g: &Graph, budget: &OracleBudget) -> Result<Option<(VertexSet, VertexSet)>> {
    refuse("find_thin_thick", g.n(), budget.max_vertices_subset)?;
    let n = g.n();
    let clock = Clock::new(budget, "find_thin_thick");
    let all = g.vertices();
    for mask in 0u64..1u64 << n {
        if mask & 0xff == 0 {
            clock.check()?;
        }
        let thin = mask_to_set(n, mask as u32);
        let thick = all.difference(&thin);
        if crate::partition::is_thin(g, &thin) && crate::partition::is_thick(g, &thick) {
            return Ok(Some((thin, thick)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, counterex_k, cycle, disjoint_cliques, edgeless, half_graph, path};
    use crate::rational::ratio;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn max_set_examples() {
        let (s, w, side) = max_restricted_set(&complete(4), &ratio(1, 2), None, &budget()).unwrap();
        assert_eq!((s, side), (4, Side::Complement));
        assert_eq!(w.len(), 4);
        let h = half_graph(8).unwrap();
        let (s, _, _) = max_restricted_set(&h, &ratio(1, 2), Some(&ratio(8, 3)), &budget()).unwrap();
        assert_eq!(s, 6);
        let (s, _, _) = max_restricted_set(&Graph::empty(1), &ratio(1, 1), None, &budget()).unwrap();
        assert_eq!(s, 1);
        assert!(matches!(
            max_restricted_set(&edgeless(17), &ratio(1, 2), None, &budget()),
            Err(Error::OverBudget { size: 17, .. })
        ));
    }

    #[test]
    fn min_partition_examples() {
        let (c, parts) = min_restricted_partition(&edgeless(6), &ratio(1, 2), &budget()).unwrap();
        assert_eq!((c, parts.len()), (1, 1));
        // cliques 1, 5, 5: graph-side degree 4 <= (2/5)*11, so V is one part
        let g = counterex_k(&ratio(2, 5), 1).unwrap().graph;
        let (c, parts) = min_restricted_partition(&g, &ratio(2, 5), &budget()).unwrap();
        assert_eq!((c, parts.len()), (1, 1));
        // cliques 1, 5, 5 at 1/4: each clique is dense, no two mix
        let (c, parts) = min_restricted_partition(&g, &ratio(1, 4), &budget()).unwrap();
        assert_eq!((c, parts.len()), (3, 3));
        let mut union = VertexSet::new(g.n());
        for p in &parts {
            assert!(g.check_restricted(p, &ratio(2, 5)).is_some());
            assert!(union.is_disjoint(p));
            union.union_with(p);
        }
        assert_eq!(union, g.vertices());
        // P4 at eps = 1/4: restricted sets have at most two vertices
        let (c, _) = min_restricted_partition(&path(4), &ratio(1, 4), &budget()).unwrap();
        assert_eq!(c, 2);
    }

    #[test]
    fn reference_count_examples() {
        let p4 = path(4);
        assert_eq!(count_copies_reference(&p4, &p4, &budget()).unwrap(), BigUint::from(2u32));
        assert_eq!(
            count_copies_reference(&complete(3), &complete(4), &budget()).unwrap(),
            BigUint::from(24u32)
        );
        assert!(count_copies_reference(&edgeless(2), &complete(4), &budget()).unwrap().is_zero());
        assert_eq!(
            count_copies_reference(&p4, &cycle(5).unwrap(), &budget()).unwrap(),
            BigUint::from(10u32)
        );
        assert!(count_copies_reference(&p4, &edgeless(11), &budget()).is_err());
    }

    #[test]
    fn sparse_or_dense_examples() {
        let (s, _, side) = max_sparse_or_dense_set(&complete(5), &ratio(1, 4), &budget()).unwrap();
        assert_eq!((s, side), (5, Side::Complement));
        // C5 has density exactly 1/2; at 2/5 every 4-set is a P4 (density 1/2)
        let c5 = cycle(5).unwrap();
        let (s, _, _) = max_sparse_or_dense_set(&c5, &ratio(1, 2), &budget()).unwrap();
        assert_eq!(s, 5);
        let (s, w, side) = max_sparse_or_dense_set(&c5, &ratio(2, 5), &budget()).unwrap();
        assert_eq!((s, w.len()), (3, 3));
        assert!(c5.side_edge_count(&w, side) <= 1);
    }

    #[test]
    fn thin_thick_search() {
        let (thin, thick) = find_thin_thick(&complete(4), &budget()).unwrap().unwrap();
        assert!(thin.len() <= 1);
        assert_eq!(thin.union(&thick), complete(4).vertices());
        assert!(find_thin_thick(&disjoint_cliques(&[3, 3]).unwrap(), &budget()).unwrap().is_some());
    }

    #[test]
    fn time_cap_refuses() {
        let b = OracleBudget {
            time_cap: Some(Duration::ZERO),
            ..OracleBudget::default()
        };
        assert!(matches!(
            max_restricted_set(&edgeless(16), &ratio(1, 2), None, &b),
            Err(Error::TimeCap { .. })
        ));
    }
}
