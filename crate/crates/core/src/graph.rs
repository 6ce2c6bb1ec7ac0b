//! Simple undirected graphs with bitset adjacency rows, vertex sets, and the
//! restricted-set checker that every other module leans on.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Which of `G[X]` or `Ḡ[X]` a statement is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Graph,
    Complement,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Graph => Side::Complement,
            Side::Complement => Side::Graph,
        }
    }

    /// One-letter tag used by the text formats.
    pub fn tag(self) -> &'static str {
        match self {
            Side::Graph => "g",
            Side::Complement => "c",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Side> {
        match tag {
            "g" => Some(Side::Graph),
            "c" => Some(Side::Complement),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// How two disjoint vertex sets see each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Complete,
    Anticomplete,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Complete => Polarity::Anticomplete,
            Polarity::Anticomplete => Polarity::Complete,
        }
    }

    /// The polarity as seen from `side`: complete in `Ḡ` means anticomplete
    /// in `G`.
    pub fn on(self, side: Side) -> Polarity {
        match side {
            Side::Graph => self,
            Side::Complement => self.flip(),
        }
    }
}

/// A subset of `0..capacity`, iterated in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_iter(capacity: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set = VertexSet::new(capacity);
        for v in members {
            set.insert(v);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Panics if `v` is outside the capacity.
    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.bits.len() {
            self.bits.set(v, false);
        }
    }

    pub fn min(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// The `k` smallest members (all of them if `k >= len`).
    pub fn smallest(&self, k: usize) -> VertexSet {
        VertexSet::from_iter(self.capacity(), self.iter().take(k))
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Incremental construction; used by generators and parsers.
pub(crate) struct GraphBuilder {
    rows: Vec<FixedBitSet>,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Self {
        GraphBuilder {
            rows: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    /// Returns false if the edge was already present.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        let fresh = !self.rows[u].contains(v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        fresh
    }

    /// Makes `a` complete to `b` (the sets must be disjoint).
    pub(crate) fn join_sets(&mut self, a: &VertexSet, b: &VertexSet) {
        for u in a.iter() {
            self.rows[u].union_with(b.bits());
        }
        for v in b.iter() {
            self.rows[v].union_with(a.bits());
        }
    }

    pub(crate) fn build(self) -> Graph {
        Graph { rows: self.rows }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    /// Duplicate pairs are merged. The error names the 1-based position of
    /// the offending pair.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// `N(v)` as a vertex set.
    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet {
            bits: self.rows[v].clone(),
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut r = row.clone();
                r.toggle_range(..);
                r.set(v, false);
                r
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(rows.len(), n);
        Graph { rows }
    }

    fn check_set(&self, x: &VertexSet) -> Result<()> {
        if x.iter().any(|v| v >= self.n()) {
            return Err(Error::input(format!(
                "vertex set {x:?} is not contained in 0..{}",
                self.n()
            )));
        }
        Ok(())
    }

    /// `G[X]` relabelled in ascending order of original id, together with
    /// the map from new ids to original ids.
    pub fn induced(&self, x: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(x)?;
        let map = x.to_vec();
        let mut b = GraphBuilder::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        Ok((b.build(), map))
    }

    /// Neighbours of `v` inside `x` on the given side (`v` itself excluded).
    pub fn side_degree_within(&self, v: usize, x: &VertexSet, side: Side) -> usize {
        let inside = self.rows[v].intersection_count(x.bits());
        match side {
            Side::Graph => inside,
            Side::Complement => x.len() - inside - usize::from(x.contains(v)),
        }
    }

    /// Maximum degree of `G[X]` or `Ḡ[X]`; 0 for the empty set.
    pub fn side_max_degree(&self, x: &VertexSet, side: Side) -> usize {
        let size = x.len();
        let mut best = 0;
        for v in x.iter() {
            let inside = self.rows[v].intersection_count(x.bits());
            let d = match side {
                Side::Graph => inside,
                Side::Complement => size - 1 - inside,
            };
            best = best.max(d);
        }
        best
    }

    /// Number of edges of `G[X]` or `Ḡ[X]`.
    pub fn side_edge_count(&self, x: &VertexSet, side: Side) -> usize {
        let twice: usize = x
            .iter()
            .map(|v| self.rows[v].intersection_count(x.bits()))
            .sum();
        let inside = twice / 2;
        match side {
            Side::Graph => inside,
            Side::Complement => pairs(x.len()) - inside,
        }
    }

    /// Edges divided by `C(n, 2)`; undefined below two vertices.
    pub fn edge_density(&self) -> Result<Rational> {
        let n = self.n();
        if n < 2 {
            return Err(Error::input(format!(
                "edge density is undefined on {n} vertices"
            )));
        }
        Ok(Rational::new(self.edge_count().into(), pairs(n).into()))
    }

    /// Certificate that `X` is ε-restricted, or `None`. The side with the
    /// smaller maximum degree is reported (graph side on ties), with that
    /// degree as the bound. Empty `X` never gets a certificate.
    pub fn check_restricted(&self, x: &VertexSet, eps: &Rational) -> Option<RestrictedCertificate> {
        if x.is_empty() || x.iter().any(|v| v >= self.n()) {
            return None;
        }
        let dg = self.side_max_degree(x, Side::Graph);
        let dc = self.side_max_degree(x, Side::Complement);
        let (side, d) = if dg <= dc {
            (Side::Graph, dg)
        } else {
            (Side::Complement, dc)
        };
        if !rational::le(d, &rational::scale(eps, x.len())) {
            return None;
        }
        Some(RestrictedCertificate {
            set: x.clone(),
            side,
            degree_bound: rational::int(d),
            epsilon: Some(eps.clone()),
        })
    }

    /// Connected components of `G[X]` (or `Ḡ[X]`), ordered by smallest
    /// member.
    pub fn components(&self, x: &VertexSet, side: Side) -> Vec<VertexSet> {
        let n = self.n();
        let mut unvisited = x.bits().clone();
        unvisited.grow(n);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        while let Some(start) = unvisited.minimum() {
            unvisited.set(start, false);
            let mut comp = FixedBitSet::with_capacity(n);
            comp.insert(start);
            stack.push(start);
            while let Some(v) = stack.pop() {
                let mut reach = unvisited.clone();
                match side {
                    Side::Graph => reach.intersect_with(&self.rows[v]),
                    Side::Complement => reach.difference_with(&self.rows[v]),
                }
                unvisited.difference_with(&reach);
                comp.union_with(&reach);
                stack.extend(reach.ones());
            }
            out.push(VertexSet { bits: comp });
        }
        out
    }

    /// Polarity of the pair `(a, b)` if it is pure. Pairs with an empty side
    /// are reported as anticomplete.
    pub fn pair_polarity(&self, a: &VertexSet, b: &VertexSet) -> Option<Polarity> {
        let cross: usize = a.iter().map(|v| self.rows[v].intersection_count(b.bits())).sum();
        if cross == 0 {
            Some(Polarity::Anticomplete)
        } else if cross == a.len() * b.len() {
            Some(Polarity::Complete)
        } else {
            None
        }
    }

    /// Whether `(a, b)` has exactly the given polarity (vacuous if either is
    /// empty).
    pub fn is_pure_as(&self, a: &VertexSet, b: &VertexSet, polarity: Polarity) -> bool {
        if a.is_empty() || b.is_empty() {
            return true;
        }
        self.pair_polarity(a, b) == Some(polarity)
    }
}

pub(crate) fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A set together with the side and degree bound it satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedCertificate {
    pub set: VertexSet,
    pub side: Side,
    /// Maximum degree on `side` inside `set` is at most this.
    pub degree_bound: Rational,
    /// When present, the certificate also claims `degree_bound ≤ ε·|set|`.
    pub epsilon: Option<Rational>,
}

impl RestrictedCertificate {
    /// Re-checks the certificate against `g` from scratch.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.set.is_empty() {
            return Err(Error::check("certificate set is empty"));
        }
        g.check_set(&self.set)?;
        if self.degree_bound < Rational::zero() {
            return Err(Error::check("negative degree bound"));
        }
        let d = g.side_max_degree(&self.set, self.side);
        if !rational::le(d, &self.degree_bound) {
            return Err(Error::check(format!(
                "max degree {d} on side {} exceeds bound {}",
                self.side,
                rational::format_rational(&self.degree_bound)
            )));
        }
        if let Some(eps) = &self.epsilon {
            let cap = rational::scale(eps, self.set.len());
            if self.degree_bound > cap {
                return Err(Error::check(format!(
                    "bound {} exceeds eps*|X| = {}",
                    rational::format_rational(&self.degree_bound),
                    rational::format_rational(&cap)
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// Reads the `n m` / `u v` edge-list format. Duplicate edges are merged with
/// a warning; self-loops and out-of-range ids are errors.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hl, header)?;
    let mut b = GraphBuilder::new(n);
    let mut seen = 0;
    for (line, l) in lines {
        if seen == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if !b.add_edge(u, v) {
            log::warn!("line {line}: duplicate edge ({u}, {v}) ignored");
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(b.build())
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| Error::Parse {
                line,
                msg: format!("not a non-negative integer pair: {l:?}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: format!("trailing tokens in {l:?}"),
        });
    }
    Ok((a, b))
}

/// Writes the edge-list format with edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
