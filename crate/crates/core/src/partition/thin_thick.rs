use crate::cotree::{Cotree, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexSet};

fn components_small(g: &Graph, x: &VertexSet, side: Side) -> bool {
    g.components(x, side).iter().all(|c| 2 * c.len() <= x.len() + 1)
}

/// Every component of `G[X]` has at most `(|X| + 1)/2` vertices.
pub fn is_thin(g: &Graph, x: &VertexSet) -> bool {
    components_small(g, x, Side::Graph)
}

/// Every component of `Ḡ[X]` has at most `(|X| + 1)/2` vertices.
pub fn is_thick(g: &Graph, x: &VertexSet) -> bool {
    components_small(g, x, Side::Complement)
}

/// Partitions the cotree's vertex set into a thin part and a thick part.
///
/// Peels children off the cotree while more than half the vertices remain,
/// collecting the peeled vertices as `A` (anticomplete to the rest) and `B`
/// (complete to the rest). The remainder splits as `P ∪ Q` with
/// `|P|, |Q| ≤ N/2`; `A` plus balanced slices of `P` and `Q` is thin and
/// `B` plus the rest is thick. At a union node the same is done in the
/// complement and the roles of the two outputs swap.
pub fn thin_thick_partition(t: &Cotree, g: &Graph) -> Result<(VertexSet, VertexSet)> {
    let universe = t.universe();
    let n = t.len();
    if n == 1 {
        return Ok((t.vertex_set(), VertexSet::new(universe)));
    }
    let mut anti = VertexSet::new(universe);
    let mut comp = VertexSet::new(universe);
    let mut node = t.root();
    let mut remaining = n;
    let kids = loop {
        let mut kids = t.node(node).children.clone();
        kids.sort_by_key(|&c| (t.node(c).size, t.node(c).min_leaf));
        let union = t.node(node).kind == NodeKind::Union;
        let mut start = 0;
        while kids.len() - start >= 2 && 2 * (remaining - t.node(kids[start]).size) > n {
            let s = t.leaf_set(kids[start]);
            remaining -= s.len();
            if union {
                anti.union_with(&s);
            } else {
                comp.union_with(&s);
            }
            start += 1;
        }
        if kids.len() - start == 1 {
            node = kids[start];
            debug_assert!(!matches!(t.node(node).kind, NodeKind::Leaf(_)));
            continue;
        }
        break kids[start..].to_vec();
    };
    let union = t.node(node).kind == NodeKind::Union;
    let (a, b) = if union { (comp, anti) } else { (anti, comp) };
    let (last, rest) = kids.split_last().unwrap();
    let mut p = t.leaf_set(*last);
    let mut q = VertexSet::new(universe);
    for &c in rest {
        q.union_with(&t.leaf_set(c));
    }
    if q.len() < p.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let (sa, sb, sp, sq) = (a.len() as i64, b.len() as i64, p.len() as i64, q.len() as i64);
    let m = (sq - sp - sb).max(0);
    debug_assert!(m <= sa);
    let from_p = ((sa - m + 1) / 2) as usize;
    let from_q = ((sa + m) / 2) as usize;
    let p_out = p.smallest(from_p);
    let q_out = q.smallest(from_q);
    let mut x = a;
    x.union_with(&p_out);
    x.union_with(&q_out);
    let mut y = b;
    y.union_with(&p.difference(&p_out));
    y.union_with(&q.difference(&q_out));
    let (thin, thick) = if union { (y, x) } else { (x, y) };
    if !is_thin(g, &thin) || !is_thick(g, &thick) {
        return Err(Error::check("thin/thick partition failed its own check"));
    }
    Ok((thin, thick))
}
