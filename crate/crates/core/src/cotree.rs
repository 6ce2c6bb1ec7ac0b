//! Cograph recognition and cotrees.
//!
//! A cotree is stored as an arena in preorder: the root is node 0 and every
//! child has a larger index than its parent, so a reverse scan over the arena
//! is a valid postorder. Children are ordered by their smallest leaf. Leaves
//! carry original vertex ids, so a cotree restricted to a subset still talks
//! about the vertices of the host graph.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Side, VertexSet};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf(usize),
    /// Children pairwise anticomplete.
    Union,
    /// Children pairwise complete.
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    /// Number of leaves below.
    pub size: usize,
    pub min_leaf: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<Node>,
    /// Size of the host vertex range; leaves lie in `0..universe`.
    universe: usize,
}

/// Induced path `a-b-c-d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P4Witness(pub [usize; 4]);

impl P4Witness {
    pub fn validate(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.0;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && [a, b, c, d].iter().all(|&v| v < g.n())
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(b, d)
            && !g.has_edge(a, d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Recognition {
    Cograph(Cotree),
    NotCograph(P4Witness),
}

impl Recognition {
    pub fn cotree(self) -> Option<Cotree> {
        match self {
            Recognition::Cograph(t) => Some(t),
            Recognition::NotCograph(_) => None,
        }
    }

    pub fn is_cograph(&self) -> bool {
        matches!(self, Recognition::Cograph(_))
    }
}

/// Loose tree used while building; turned into a [`Cotree`] by
/// [`Cotree::from_raw`].
struct RawNode {
    kind: NodeKind,
    children: Vec<usize>,
}

/// Recognizes `G` by repeated component / co-component splitting.
pub fn build_cotree(g: &Graph) -> Result<Recognition> {
    if g.n() == 0 {
        return Err(Error::input("cannot decompose the empty graph"));
    }
    build_cotree_on(g, &g.vertices())
}

/// Recognition of `G[X]` for nonempty `X`.
pub fn build_cotree_on(g: &Graph, x: &VertexSet) -> Result<Recognition> {
    if x.is_empty() {
        return Err(Error::input("cannot decompose an empty vertex set"));
    }
    let mut raw: Vec<RawNode> = Vec::new();
    let mut stack = vec![(x.clone(), None::<usize>)];
    while let Some((set, parent)) = stack.pop() {
        let id = raw.len();
        if let Some(p) = parent {
            raw[p].children.push(id);
        }
        if set.len() == 1 {
            raw.push(RawNode {
                kind: NodeKind::Leaf(set.min().unwrap()),
                children: Vec::new(),
            });
            continue;
        }
        let comps = g.components(&set, Side::Graph);
        let (kind, parts) = if comps.len() > 1 {
            (NodeKind::Union, comps)
        } else {
            let co = g.components(&set, Side::Complement);
            if co.len() == 1 {
                return Ok(Recognition::NotCograph(find_p4(g, &set)));
            }
            (NodeKind::Join, co)
        };
        raw.push(RawNode {
            kind,
            children: Vec::new(),
        });
        for part in parts.into_iter().rev() {
            stack.push((part, Some(id)));
        }
    }
    Ok(Recognition::Cograph(Cotree::from_raw(&raw, 0, g.n())))
}

/// Induced P4 inside `X`, where `G[X]` and its complement are both
/// connected. Scans candidate middle edges `bc` in ascending order.
fn find_p4(g: &Graph, x: &VertexSet) -> P4Witness {
    for b in x.iter() {
        let nb = g.neighbours(b).intersection(x);
        for c in nb.iter().filter(|&c| c > b) {
            let nc = g.neighbours(c).intersection(x);
            let mut a_side = nb.difference(&nc);
            a_side.remove(c);
            let mut d_side = nc.difference(&nb);
            d_side.remove(b);
            for a in a_side.iter() {
                let far = d_side.difference(&g.neighbours(a));
                if let Some(d) = far.min() {
                    let path = if a < d { [a, b, c, d] } else { [d, c, b, a] };
                    return P4Witness(path);
                }
            }
        }
    }
    unreachable!("a graph that is connected with connected complement contains an induced P4")
}

/// Largest clique and stable set of a cograph, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueStable {
    pub clique: VertexSet,
    pub stable: VertexSet,
}

impl Cotree {
    /// Normalizes a raw tree: unary nodes vanish, same-kind children are
    /// absorbed, children are sorted by smallest leaf, and the arena is laid
    /// out in preorder.
    fn from_raw(raw: &[RawNode], root: usize, universe: usize) -> Cotree {
        // flattened children of each raw node, computed bottom-up
        let mut flat: Vec<Option<(NodeKind, Vec<usize>)>> = (0..raw.len()).map(|_| None).collect();
        let mut order = Vec::with_capacity(raw.len());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(raw[v].children.iter().copied());
        }
        // representative raw node after collapsing unary chains
        let mut rep: Vec<usize> = (0..raw.len()).collect();
        for &v in order.iter().rev() {
            let node = &raw[v];
            if let NodeKind::Leaf(_) = node.kind {
                flat[v] = Some((node.kind, Vec::new()));
                continue;
            }
            let mut kids = Vec::new();
            for &c in &node.children {
                let r = rep[c];
                match &flat[r] {
                    Some((k, grand)) if *k == node.kind => kids.extend(grand.iter().copied()),
                    _ => kids.push(r),
                }
            }
            if kids.len() == 1 {
                rep[v] = kids[0];
            } else {
                flat[v] = Some((node.kind, kids));
            }
        }
        let mut nodes: Vec<Node> = Vec::with_capacity(raw.len());
        let mut min_of = vec![usize::MAX; raw.len()];
        for &v in order.iter().rev() {
            if let Some((kind, kids)) = &flat[v] {
                min_of[v] = match kind {
                    NodeKind::Leaf(x) => *x,
                    _ => kids.iter().map(|&c| min_of[c]).min().unwrap(),
                };
            }
        }
        let mut queue = vec![(rep[root], None::<usize>)];
        while let Some((v, parent)) = queue.pop() {
            let id = nodes.len();
            let (kind, kids) = flat[v].clone().unwrap();
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            nodes.push(Node {
                kind,
                children: Vec::new(),
                parent,
                size: 0,
                min_leaf: min_of[v],
            });
            let mut kids = kids;
            kids.sort_by_key(|&c| min_of[c]);
            for &c in kids.iter().rev() {
                queue.push((c, Some(id)));
            }
        }
        let mut t = Cotree { nodes, universe };
        t.recount();
        t
    }

    fn recount(&mut self) {
        for i in (0..self.nodes.len()).rev() {
            let size = match self.nodes[i].kind {
                NodeKind::Leaf(_) => 1,
                _ => self.nodes[i]
                    .children
                    .iter()
                    .map(|&c| self.nodes[c].size)
                    .sum(),
            };
            self.nodes[i].size = size;
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        self.nodes[0].size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leaves below `id`.
    pub fn leaf_set(&self, id: usize) -> VertexSet {
        let mut out = VertexSet::new(self.universe);
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            match self.nodes[v].kind {
                NodeKind::Leaf(x) => out.insert(x),
                _ => stack.extend(self.nodes[v].children.iter().copied()),
            }
        }
        out
    }

    /// Leaves below `id` in ascending vertex order.
    pub fn leaves_sorted(&self, id: usize) -> Vec<usize> {
        self.leaf_set(id).to_vec()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.leaf_set(0)
    }

    /// The graph on `0..universe` realized by the tree (vertices outside the
    /// tree are isolated).
    pub fn realize(&self) -> Graph {
        let mut b = GraphBuilder::new(self.universe);
        let mut sets: Vec<Option<VertexSet>> = vec![None; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            let node = &self.nodes[i];
            let set = match node.kind {
                NodeKind::Leaf(x) => VertexSet::from_iter(self.universe, [x]),
                kind => {
                    let kids: Vec<VertexSet> = node
                        .children
                        .iter()
                        .map(|&c| sets[c].take().unwrap())
                        .collect();
                    let mut all = VertexSet::new(self.universe);
                    for k in &kids {
                        all.union_with(k);
                    }
                    if kind == NodeKind::Join {
                        let mut seen = VertexSet::new(self.universe);
                        for k in &kids {
                            if !seen.is_empty() {
                                b.join_sets(k, &seen);
                            }
                            seen.union_with(k);
                        }
                    }
                    all
                }
            };
            sets[i] = Some(set);
        }
        b.build()
    }

    /// Cotree of `G[X ∩ leaves]`, or `None` if the intersection is empty.
    pub fn restrict(&self, x: &VertexSet) -> Option<Cotree> {
        let mut raw: Vec<RawNode> = Vec::with_capacity(self.nodes.len());
        let mut keep = vec![false; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            keep[i] = match self.nodes[i].kind {
                NodeKind::Leaf(v) => x.contains(v),
                _ => self.nodes[i].children.iter().any(|&c| keep[c]),
            };
        }
        if !keep[0] {
            return None;
        }
        let mut map = vec![usize::MAX; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            map[i] = raw.len();
            raw.push(RawNode {
                kind: node.kind,
                children: Vec::new(),
            });
            if let Some(p) = node.parent {
                raw[map[p]].children.push(map[i]);
            }
        }
        Some(Cotree::from_raw(&raw, 0, self.universe))
    }

    /// Exact maximum clique and stable set by tree DP.
    pub fn max_clique_and_stable(&self) -> CliqueStable {
        let mut best: Vec<Option<(VertexSet, VertexSet)>> = vec![None; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            let node = &self.nodes[i];
            let value = match node.kind {
                NodeKind::Leaf(v) => {
                    let s = VertexSet::from_iter(self.universe, [v]);
                    (s.clone(), s)
                }
                kind => {
                    let kids: Vec<(VertexSet, VertexSet)> = node
                        .children
                        .iter()
                        .map(|&c| best[c].take().unwrap())
                        .collect();
                    let mut summed = VertexSet::new(self.universe);
                    let mut biggest_clique = &kids[0].0;
                    let mut biggest_stable = &kids[0].1;
                    for (c, s) in &kids {
                        if c.len() > biggest_clique.len() {
                            biggest_clique = c;
                        }
                        if s.len() > biggest_stable.len() {
                            biggest_stable = s;
                        }
                    }
                    if kind == NodeKind::Join {
                        for (c, _) in &kids {
                            summed.union_with(c);
                        }
                        (summed, biggest_stable.clone())
                    } else {
                        for (_, s) in &kids {
                            summed.union_with(s);
                        }
                        (biggest_clique.clone(), summed)
                    }
                }
            };
            best[i] = Some(value);
        }
        let (clique, stable) = best[0].take().unwrap();
        CliqueStable { clique, stable }
    }

    /// Checks the structural invariants: normal form, children order, sizes,
    /// and distinct leaves.
    pub fn check_normal(&self) -> Result<()> {
        let mut seen = VertexSet::new(self.universe);
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NodeKind::Leaf(v) => {
                    if v >= self.universe || seen.contains(v) {
                        return Err(Error::check(format!("leaf {v} repeated or out of range")));
                    }
                    seen.insert(v);
                }
                kind => {
                    if node.children.len() < 2 {
                        return Err(Error::check(format!("node {i} has fewer than two children")));
                    }
                    for w in node.children.windows(2) {
                        if self.nodes[w[0]].min_leaf >= self.nodes[w[1]].min_leaf {
                            return Err(Error::check(format!("children of node {i} out of order")));
                        }
                    }
                    for &c in &node.children {
                        if self.nodes[c].kind == kind {
                            return Err(Error::check(format!(
                                "node {i} has a child of its own kind"
                            )));
                        }
                        if c <= i || self.nodes[c].parent != Some(i) {
                            return Err(Error::check(format!("bad parent link at node {c}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Cotree {
    /// `(U c1 c2 ...)` / `(J ...)` with leaves as decimal ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Open(usize),
            Close,
        }
        let mut stack = vec![Step::Open(0)];
        let mut first = true;
        while let Some(step) = stack.pop() {
            match step {
                Step::Close => f.write_str(")")?,
                Step::Open(v) => {
                    if !first {
                        f.write_str(" ")?;
                    }
                    first = false;
                    match self.nodes[v].kind {
                        NodeKind::Leaf(x) => write!(f, "{x}")?,
                        kind => {
                            f.write_str(if kind == NodeKind::Union { "(U" } else { "(J" })?;
                            stack.push(Step::Close);
                            for &c in self.nodes[v].children.iter().rev() {
                                stack.push(Step::Open(c));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cotree({self})")
    }
}

/// Parses the parenthesized cotree format. Leaves must be distinct and below
/// `universe`; the result is normalized.
pub fn parse_cotree(text: &str, universe: usize) -> Result<Cotree> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let mut tokens = spaced.split_whitespace().peekable();
    let mut raw: Vec<RawNode> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let mut seen = VertexSet::new(universe);
    let mut done = false;
    while let Some(tok) = tokens.next() {
        if done {
            return Err(bad(format!("trailing token {tok:?}")));
        }
        let id = raw.len();
        match tok {
            "(" => {
                let kind = match tokens.next() {
                    Some("U") => NodeKind::Union,
                    Some("J") => NodeKind::Join,
                    other => return Err(bad(format!("expected U or J, found {other:?}"))),
                };
                if let Some(&p) = open.last() {
                    raw[p].children.push(id);
                }
                raw.push(RawNode {
                    kind,
                    children: Vec::new(),
                });
                open.push(id);
            }
            ")" => {
                let v = open.pop().ok_or_else(|| bad("unbalanced `)`".into()))?;
                if raw[v].children.is_empty() {
                    return Err(bad("internal node without children".into()));
                }
                done = open.is_empty();
            }
            leaf => {
                let x: usize = leaf
                    .parse()
                    .map_err(|_| bad(format!("bad leaf {leaf:?}")))?;
                if x >= universe || seen.contains(x) {
                    return Err(bad(format!("leaf {x} repeated or outside 0..{universe}")));
                }
                seen.insert(x);
                if let Some(&p) = open.last() {
                    raw[p].children.push(id);
                }
                raw.push(RawNode {
                    kind: NodeKind::Leaf(x),
                    children: Vec::new(),
                });
                done = open.is_empty();
            }
        }
    }
    if raw.is_empty() || !open.is_empty() {
        return Err(bad("incomplete cotree".into()));
    }
    Ok(Cotree::from_raw(&raw, 0, universe))
}

/// Random cograph on `n` vertices and its cotree.
///
/// Draws a binary tree depth-first from a `ChaCha8Rng` seeded with
/// `seed_from_u64(seed)`: at each node of size `s ≥ 2` it draws the kind
/// (join iff `gen_range(0..q) < p` for `join_bias = p/q`) and then the left
/// size `gen_range(1..s)`, then builds the left subtree before the right.
/// Leaves are numbered in that order and relabelled by a permutation from
/// `SliceRandom::shuffle` on the same generator. Same-kind parent/child
/// pairs are merged afterwards.
pub fn random_cograph(n: usize, join_bias: &Rational, seed: u64) -> Result<(Graph, Cotree)> {
    if n == 0 {
        return Err(Error::input("random_cograph needs n >= 1"));
    }
    if !rational::in_closed_unit(join_bias) {
        return Err(Error::input("join bias must lie in [0, 1]"));
    }
    let (p, q) = rational::as_u64_pair(join_bias)
        .ok_or_else(|| Error::input("join bias numerator/denominator too large"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<RawNode> = Vec::with_capacity(2 * n);
    let mut next_leaf = 0;
    let mut stack = vec![(n, None::<usize>)];
    while let Some((size, parent)) = stack.pop() {
        let id = raw.len();
        if let Some(par) = parent {
            raw[par].children.push(id);
        }
        if size == 1 {
            raw.push(RawNode {
                kind: NodeKind::Leaf(next_leaf),
                children: Vec::new(),
            });
            next_leaf += 1;
            continue;
        }
        let kind = if rng.gen_range(0..q) < p {
            NodeKind::Join
        } else {
            NodeKind::Union
        };
        let left = rng.gen_range(1..size);
        raw.push(RawNode {
            kind,
            children: Vec::new(),
        });
        stack.push((size - left, Some(id)));
        stack.push((left, Some(id)));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    for node in &mut raw {
        if let NodeKind::Leaf(x) = node.kind {
            node.kind = NodeKind::Leaf(perm[x]);
        }
    }
    let tree = Cotree::from_raw(&raw, 0, n);
    Ok((tree.realize(), tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    fn clique(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        graph(n, &e)
    }

    #[test]
    fn recognition_examples() {
        let t = build_cotree(&clique(3)).unwrap().cotree().unwrap();
        assert_eq!(t.to_string(), "(J 0 1 2)");
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            build_cotree(&p4).unwrap(),
            Recognition::NotCograph(P4Witness([0, 1, 2, 3]))
        );
        let t = build_cotree(&graph(4, &[(0, 1), (2, 3)])).unwrap().cotree().unwrap();
        assert_eq!(t.to_string(), "(U (J 0 1) (J 2 3))");
        assert!(build_cotree(&Graph::empty(0)).is_err());
        assert_eq!(build_cotree(&Graph::empty(1)).unwrap().cotree().unwrap().to_string(), "0");
    }

    #[test]
    fn p4_witness_in_c5() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        match build_cotree(&c5).unwrap() {
            Recognition::NotCograph(w) => assert!(w.validate(&c5)),
            other => panic!("C5 recognized as {other:?}"),
        }
    }

    #[test]
    fn clique_and_stable_examples() {
        let t = build_cotree(&clique(4)).unwrap().cotree().unwrap();
        let cs = t.max_clique_and_stable();
        assert_eq!((cs.clique.len(), cs.stable.len()), (4, 1));
        let two_k3 = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let cs = build_cotree(&two_k3).unwrap().cotree().unwrap().max_clique_and_stable();
        assert_eq!((cs.clique.len(), cs.stable.len()), (3, 2));
    }

    #[test]
    fn text_round_trip() {
        let text = "(U (J 0 1) 2 (J 3 (U 4 5)))";
        let t = parse_cotree(text, 6).unwrap();
        assert_eq!(t.to_string(), text);
        let nested = parse_cotree("(U (U 2 0) (J 1 3))", 4).unwrap();
        assert_eq!(nested.to_string(), "(U 0 (J 1 3) 2)");
        assert!(parse_cotree("(U 0 0)", 2).is_err());
        assert!(parse_cotree("(X 0 1)", 2).is_err());
        assert!(parse_cotree("(U 0 1", 2).is_err());
        assert!(parse_cotree("(U 0 1) 2", 3).is_err());
    }

    #[test]
    fn restrict_collapses_and_flattens() {
        let t = parse_cotree("(U (J 0 (U 1 2)) 3)", 4).unwrap();
        let r = t.restrict(&VertexSet::from_iter(4, [1, 2, 3])).unwrap();
        assert_eq!(r.to_string(), "(U 1 2 3)");
        r.check_normal().unwrap();
        assert!(t.restrict(&VertexSet::new(4)).is_none());
        let single = t.restrict(&VertexSet::from_iter(4, [2])).unwrap();
        assert_eq!(single.to_string(), "2");
    }

    #[test]
    fn random_cograph_is_deterministic() {
        let (g1, t1) = random_cograph(50, &ratio(1, 2), 7).unwrap();
        let (g2, t2) = random_cograph(50, &ratio(1, 2), 7).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(t1, t2);
        assert!(build_cotree(&g1).unwrap().is_cograph());
        let (g, _) = random_cograph(1, &ratio(1, 2), 0).unwrap();
        assert_eq!(g.n(), 1);
        assert!(random_cograph(0, &ratio(1, 2), 0).is_err());
    }

    fn arb_cograph(max_n: usize) -> impl Strategy<Value = (Graph, Cotree)> {
        (1..=max_n, 1u64..4, any::<u64>())
            .prop_map(|(n, b, seed)| random_cograph(n, &ratio(b as i64, 4), seed).unwrap())
    }

    fn brute_clique_stable(g: &Graph) -> (usize, usize) {
        let n = g.n();
        let (mut c, mut s) = (0, 0);
        for mask in 0u32..1 << n {
            let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let pairs = || vs.iter().enumerate().flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)));
            if pairs().all(|(u, v)| g.has_edge(u, v)) {
                c = c.max(vs.len());
            }
            if pairs().all(|(u, v)| !g.has_edge(u, v)) {
                s = s.max(vs.len());
            }
        }
        (c, s)
    }

    proptest! {
        #[test]
        fn build_realizes_the_graph((g, t) in arb_cograph(40)) {
            t.check_normal().unwrap();
            prop_assert_eq!(&t.realize(), &g);
            let rebuilt = build_cotree(&g).unwrap().cotree().unwrap();
            rebuilt.check_normal().unwrap();
            prop_assert_eq!(&rebuilt, &t);
            let text = t.to_string();
            prop_assert_eq!(parse_cotree(&text, g.n()).unwrap(), t);
        }

        #[test]
        fn restriction_realizes_induced_subgraph((g, t) in arb_cograph(30), mask in any::<u32>()) {
            let x = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| mask >> v & 1 == 1));
            match t.restrict(&x) {
                None => prop_assert!(x.is_empty()),
                Some(r) => {
                    r.check_normal().unwrap();
                    prop_assert_eq!(r.vertex_set(), x.clone());
                    let realized = r.realize();
                    for u in x.iter() {
                        for v in x.iter() {
                            if u != v {
                                prop_assert_eq!(realized.has_edge(u, v), g.has_edge(u, v));
                            }
                        }
                    }
                    prop_assert_eq!(build_cotree_on(&g, &x).unwrap().cotree().unwrap(), r);
                }
            }
        }

        #[test]
        fn clique_stable_matches_brute_force((g, t) in arb_cograph(14)) {
            let cs = t.max_clique_and_stable();
            prop_assert_eq!(g.side_max_degree(&cs.clique, Side::Complement), 0);
            prop_assert_eq!(g.side_max_degree(&cs.stable, Side::Graph), 0);
            prop_assert_eq!((cs.clique.len(), cs.stable.len()), brute_clique_stable(&g));
        }
    }
}
