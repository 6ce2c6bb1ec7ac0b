//! Extremal constructions and random instances.
//!
//! Numbering is block-contiguous: cliques in the order given, the stable
//! half of a half-graph before the clique half, and `A, B, C, D` in that
//! order for [`counterex3`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::rational::{self, Rational};

/// The named constructions, with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    DisjointCliques(Vec<usize>),
    HalfGraph(usize),
    CounterexK { eps: Rational, n: usize },
    Counterex3(usize),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            ConstructionSpec::DisjointCliques(sizes) => disjoint_cliques(sizes),
            ConstructionSpec::HalfGraph(two_n) => half_graph(*two_n),
            ConstructionSpec::CounterexK { eps, n } => counterex_k(eps, *n).map(|c| c.graph),
            ConstructionSpec::Counterex3(n) => counterex3(*n),
        }
    }
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    let all = VertexSet::full(n);
    for v in 0..n {
        let mut rest = all.clone();
        rest.remove(v);
        b.join_sets(&VertexSet::from_iter(n, [v]), &rest);
    }
    b.build()
}

pub fn edgeless(n: usize) -> Graph {
    Graph::empty(n)
}

/// Cycle `0-1-…-(n−1)-0`, for `n ≥ 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Path `0-1-…-(n−1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges).expect("path edges are in range")
}

pub fn disjoint_cliques(sizes: &[usize]) -> Result<Graph> {
    if sizes.contains(&0) {
        return Err(Error::input("clique sizes must be at least 1"));
    }
    let n = sizes.iter().sum();
    let mut b = GraphBuilder::new(n);
    let mut start = 0;
    for &s in sizes {
        for u in start..start + s {
            for v in u + 1..start + s {
                b.add_edge(u, v);
            }
        }
        start += s;
    }
    Ok(b.build())
}

/// `a_1..a_n` (ids `0..n`, stable) and `b_1..b_n` (ids `n..2n`, clique) with
/// `a_i ~ b_j` iff `i ≤ j`.
pub fn half_graph(two_n: usize) -> Result<Graph> {
    if two_n < 2 || two_n % 2 == 1 {
        return Err(Error::input("half graph needs an even vertex count >= 2"));
    }
    let n = two_n / 2;
    let mut b = GraphBuilder::new(two_n);
    for i in 0..n {
        for j in i..n {
            b.add_edge(i, n + j);
            if j > i {
                b.add_edge(n + i, n + j);
            }
        }
    }
    Ok(b.build())
}

/// Cliques `C_0` of size `n` and `C_1..C_k` of size `mn`.
#[derive(Clone, Debug)]
pub struct CounterexK {
    pub graph: Graph,
    /// `⌊1/ε⌋`.
    pub k: usize,
    /// Least `m` with `(1 − kε)m ≥ 1`.
    pub m: usize,
    pub n: usize,
}

pub fn counterex_k(eps: &Rational, n: usize) -> Result<CounterexK> {
    if *eps <= rational::ratio(0, 1) || *eps >= rational::ratio(1, 2) {
        return Err(Error::input("counterex_k needs 0 < eps < 1/2"));
    }
    let inv = eps.recip();
    if inv.is_integer() {
        return Err(Error::input("counterex_k needs 1/eps not an integer"));
    }
    if n == 0 {
        return Err(Error::input("counterex_k needs n >= 1"));
    }
    let k = rational::floor_usize(&inv);
    let slack = rational::int(1) - rational::scale(eps, k);
    let m = rational::ceil_usize(&slack.recip());
    let mut sizes = vec![n];
    sizes.extend(std::iter::repeat_n(m * n, k));
    Ok(CounterexK {
        graph: disjoint_cliques(&sizes)?,
        k,
        m,
        n,
    })
}

/// Stable sets `A, B, C` of sizes `2n, 3n, 4n`, pairwise complete, and a
/// clique `D` of size `5n` anticomplete to them.
pub fn counterex3(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("counterex3 needs n >= 1"));
    }
    let total = 14 * n;
    let block = |from: usize, len: usize| VertexSet::from_iter(total, from..from + len);
    let (a, bb, c) = (block(0, 2 * n), block(2 * n, 3 * n), block(5 * n, 4 * n));
    let mut b = GraphBuilder::new(total);
    b.join_sets(&a, &bb);
    b.join_sets(&a, &c);
    b.join_sets(&bb, &c);
    for u in 9 * n..total {
        for v in u + 1..total {
            b.add_edge(u, v);
        }
    }
    Ok(b.build())
}

/// `G(n, p)` with each pair `u < v` (lexicographic order) kept when
/// `gen_range(0..q) < p'` for `p = p'/q`, drawn from
/// `ChaCha8Rng::seed_from_u64(seed)`.
pub fn gnp(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    if !rational::in_closed_unit(p) {
        return Err(Error::input("edge probability must lie in [0, 1]"));
    }
    let (num, den) = rational::as_u64_pair(p)
        .ok_or_else(|| Error::input("edge probability numerator/denominator too large"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}
