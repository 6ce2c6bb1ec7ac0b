//! Sparse/dense set extraction in cographs.
//!
//! All extractors work on the vertex set of the cotree they are given, so a
//! restricted cotree extracts from the corresponding induced subgraph. `N`
//! below is the number of leaves of that cotree.

use num_traits::{One, Zero};

use crate::cotree::{Cotree, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Polarity, RestrictedCertificate, Side, VertexSet};
use crate::rational::{self, ratio, Rational};

/// Parameters `(x, y)` with `x, y ≥ 0` and `min(x, y) ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionParams {
    x: Rational,
    y: Rational,
}

impl ExtractionParams {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        if x < Rational::zero() || y < Rational::zero() {
            return Err(Error::input("extraction parameters must be non-negative"));
        }
        if x > Rational::one() && y > Rational::one() {
            return Err(Error::input("extraction parameters need min(x, y) <= 1"));
        }
        Ok(ExtractionParams { x, y })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }
}

enum Bullet {
    /// Sparse set: graph-side degree bounded.
    First(VertexSet),
    /// Dense set: complement-side degree bounded.
    Second(VertexSet),
}

struct Frame {
    node: usize,
    x: Rational,
    y: Rational,
    next: usize,
    acc: VertexSet,
}

/// Cases that need no recursion.
fn direct(t: &Cotree, node: usize, x: &Rational, y: &Rational) -> Option<Bullet> {
    let one = Rational::one();
    let s = t.node(node).size;
    let take = |r: &Rational| {
        let k = rational::ceil_usize(&rational::scale(r, s)).max(1);
        t.leaf_set(node).smallest(k)
    };
    if *x > one {
        return Some(Bullet::Second(take(y)));
    }
    if *y > one {
        return Some(Bullet::First(take(x)));
    }
    if let NodeKind::Leaf(v) = t.node(node).kind {
        return Some(Bullet::First(VertexSet::from_iter(t.universe(), [v])));
    }
    None
}

/// Walks the cotree keeping `x·y·size` fixed: union children rescale `y`,
/// join children rescale `x`. A union returns the first dense child set it
/// finds, otherwise the union of the sparse ones; joins are dual.
fn better_bullet(t: &Cotree, x: &Rational, y: &Rational) -> Bullet {
    if let Some(b) = direct(t, t.root(), x, y) {
        return b;
    }
    let mut stack = vec![Frame {
        node: t.root(),
        x: x.clone(),
        y: y.clone(),
        next: 0,
        acc: VertexSet::new(t.universe()),
    }];
    let mut pending: Option<Bullet> = None;
    loop {
        let top = stack.last_mut().unwrap();
        let node = t.node(top.node);
        let union = node.kind == NodeKind::Union;
        if let Some(r) = pending.take() {
            match (union, r) {
                (true, Bullet::Second(set)) | (false, Bullet::First(set)) => {
                    let r = if union { Bullet::Second(set) } else { Bullet::First(set) };
                    stack.pop();
                    if stack.is_empty() {
                        return r;
                    }
                    pending = Some(r);
                    continue;
                }
                (_, Bullet::First(set)) | (_, Bullet::Second(set)) => top.acc.union_with(&set),
            }
        }
        if top.next == node.children.len() {
            let acc = std::mem::replace(&mut top.acc, VertexSet::new(0));
            let r = if union { Bullet::First(acc) } else { Bullet::Second(acc) };
            stack.pop();
            if stack.is_empty() {
                return r;
            }
            pending = Some(r);
            continue;
        }
        let child = node.children[top.next];
        top.next += 1;
        let ratio = Rational::new(node.size.into(), t.node(child).size.into());
        let (cx, cy) = if union {
            (top.x.clone(), &top.y * ratio)
        } else {
            (&top.x * ratio, top.y.clone())
        };
        match direct(t, child, &cx, &cy) {
            Some(b) => pending = Some(b),
            None => stack.push(Frame {
                node: child,
                x: cx,
                y: cy,
                next: 0,
                acc: VertexSet::new(t.universe()),
            }),
        }
    }
}

/// Either a set of size `≥ xN` whose graph-side degree is `≤ xyN`, or a set
/// of size `≥ yN` whose complement-side degree is `≤ xyN`. The certificate's
/// side says which.
pub fn betterthm_extract(t: &Cotree, g: &Graph, p: &ExtractionParams) -> Result<RestrictedCertificate> {
    let n = t.len();
    let bound = &p.x * &p.y * rational::int(n);
    let (set, side, size_factor) = match better_bullet(t, &p.x, &p.y) {
        Bullet::First(s) => (s, Side::Graph, &p.x),
        Bullet::Second(s) => (s, Side::Complement, &p.y),
    };
    if !rational::ge(set.len(), &rational::scale(size_factor, n)) {
        return Err(Error::check(format!(
            "extracted {} vertices, fewer than {}·{n}",
            set.len(),
            rational::format_rational(size_factor)
        )));
    }
    let cert = RestrictedCertificate {
        set,
        side,
        degree_bound: bound,
        epsilon: None,
    };
    cert.validate(g)?;
    Ok(cert)
}

fn check_eps_unit(eps: &Rational) -> Result<()> {
    if !rational::in_closed_unit(eps) {
        return Err(Error::input("eps must lie in [0, 1]"));
    }
    Ok(())
}

/// A set of size `≥ ⌈εN⌉` with one side of maximum degree `≤ ε²N`.
pub fn p4thm_extract(t: &Cotree, g: &Graph, eps: &Rational) -> Result<RestrictedCertificate> {
    check_eps_unit(eps)?;
    let p = ExtractionParams::new(eps.clone(), eps.clone())?;
    let mut cert = betterthm_extract(t, g, &p)?;
    cert.epsilon = Some(eps.clone());
    cert.validate(g)?;
    Ok(cert)
}

/// Sets `X` (graph side) and `Y` (complement side), both with maximum degree
/// `≤ εN`, and `|X|·|Y| ≥ εN²`.
///
/// Starts from a single vertex for `X` and `⌈εN⌉` vertices for `Y`, then
/// repeatedly asks [`betterthm_extract`] for an `X` one larger or a `Y` large
/// enough to close the gap, keeping `xyN = εN` throughout.
pub fn product_extract(
    t: &Cotree,
    g: &Graph,
    eps: &Rational,
) -> Result<(RestrictedCertificate, RestrictedCertificate)> {
    check_eps_unit(eps)?;
    if eps.is_zero() {
        return Err(Error::input("product extraction needs eps > 0"));
    }
    let n = t.len();
    let bound = rational::scale(eps, n);
    let target = &bound * rational::int(n);
    let all = t.vertex_set();
    let mut x = all.smallest(1);
    let mut y = all.smallest(rational::ceil_usize(&bound).max(1));
    while !rational::ge(x.len() * y.len(), &target) {
        let a = rational::int(x.len());
        let k = rational::ceil_usize(&(&target / &a));
        debug_assert!(k >= 2);
        let delta = (&target / rational::int(k - 1) - &a) / rational::int(2);
        let grown = &a + delta;
        let p = ExtractionParams::new(&grown / rational::int(n), &bound / &grown)?;
        let cert = betterthm_extract(t, g, &p)?;
        match cert.side {
            Side::Graph => {
                if cert.set.len() <= x.len() {
                    return Err(Error::check("sparse side failed to grow"));
                }
                x = cert.set;
            }
            Side::Complement => y = cert.set,
        }
    }
    let mk = |set: VertexSet, side| RestrictedCertificate {
        set,
        side,
        degree_bound: bound.clone(),
        epsilon: None,
    };
    let (cx, cy) = (mk(x, Side::Graph), mk(y, Side::Complement));
    cx.validate(g)?;
    cy.validate(g)?;
    Ok((cx, cy))
}

/// Peels the minimum child of the current cotree node until one child is
/// left, then descends into it. Each piece comes with its polarity to
/// everything peeled after it.
fn peel(t: &Cotree) -> Vec<(VertexSet, Polarity)> {
    let mut pieces = Vec::new();
    let mut node = t.root();
    loop {
        let nd = t.node(node);
        let pol = match nd.kind {
            NodeKind::Leaf(v) => {
                pieces.push((VertexSet::from_iter(t.universe(), [v]), Polarity::Anticomplete));
                return pieces;
            }
            NodeKind::Union => Polarity::Anticomplete,
            NodeKind::Join => Polarity::Complete,
        };
        let mut kids = nd.children.clone();
        kids.sort_by_key(|&c| (t.node(c).size, t.node(c).min_leaf));
        let last = kids.pop().unwrap();
        for c in kids {
            pieces.push((t.leaf_set(c), pol));
        }
        node = last;
    }
}

fn side_of(pol: Polarity) -> Side {
    match pol {
        Polarity::Anticomplete => Side::Graph,
        Polarity::Complete => Side::Complement,
    }
}

/// For `1/2 ≤ ε < 1` and `δ = 1/(2−ε)`: a set with `|X| > δN` and one side
/// of maximum degree `≤ εδN`.
pub fn toprange_extract(t: &Cotree, g: &Graph, eps: &Rational) -> Result<RestrictedCertificate> {
    if *eps < ratio(1, 2) || *eps >= Rational::one() {
        return Err(Error::input("toprange extraction needs 1/2 <= eps < 1"));
    }
    let n = t.len();
    let nn = rational::int(n);
    let delta = (ratio(2, 1) - eps).recip();
    let dn = eps * &delta * &nn;
    let half = &delta * &nn / rational::int(2);
    let pieces = peel(t);
    let k = pieces.len();

    let (set, side) = if let Some(i) = pieces[..k - 1]
        .iter()
        .position(|(p, _)| rational::gt(p.len(), &half))
    {
        let take = rational::floor_usize(&(&half + Rational::one()));
        let a = pieces[i].0.smallest(take);
        let mut rest = VertexSet::new(t.universe());
        for (p, _) in &pieces[i + 1..] {
            rest.union_with(p);
        }
        let b = rest.smallest(take);
        (a.union(&b), side_of(pieces[i].1))
    } else if rational::le(n - 1, &dn) {
        (t.vertex_set(), Side::Graph)
    } else {
        let cap = &dn + Rational::one();
        // suffix[h] = |X_{h+1} ∪ … ∪ X_k| with pieces numbered from 1
        let mut suffix = vec![0usize; k + 1];
        for i in (0..k).rev() {
            suffix[i] = suffix[i + 1] + pieces[i].0.len();
        }
        let h = (0..k).find(|&h| rational::le(suffix[h], &cap)).unwrap();
        debug_assert!(h >= 1);
        let (xh, pol) = (&pieces[h - 1].0, pieces[h - 1].1);
        let mut y = VertexSet::new(t.universe());
        for (p, _) in &pieces[h..] {
            y.union_with(p);
        }
        let z = xh.smallest(rational::floor_usize(&cap) - y.len());
        let mut a = y.clone();
        let mut b = y.union(&z);
        for (p, q) in &pieces[..h] {
            if *q == pol {
                a.union_with(p);
            } else {
                b.union_with(p);
            }
        }
        let w = side_of(pol);
        if a.len() >= b.len() {
            (a, w)
        } else {
            (b, w.other())
        }
    };
    if !rational::gt(set.len(), &(&delta * &nn)) {
        return Err(Error::check(format!(
            "toprange set of size {} is not larger than delta·N",
            set.len()
        )));
    }
    let cert = RestrictedCertificate {
        set,
        side,
        degree_bound: dn,
        epsilon: None,
    };
    cert.validate(g)?;
    Ok(cert)
}

/// Known bounds on the best extraction fraction `δ_ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaBounds {
    pub eps: Rational,
    pub lower: Rational,
    pub upper: Rational,
    /// Present exactly when `ε ≥ 1/2`.
    pub exact: Option<Rational>,
}

pub fn delta_bounds(eps: &Rational) -> Result<DeltaBounds> {
    if *eps <= Rational::zero() {
        return Err(Error::input("delta bounds need eps > 0"));
    }
    if *eps >= Rational::one() {
        return Err(Error::input("delta bounds need eps < 1"));
    }
    if *eps >= ratio(1, 2) {
        let exact = (ratio(2, 1) - eps).recip();
        return Ok(DeltaBounds {
            eps: eps.clone(),
            lower: exact.clone(),
            upper: exact.clone(),
            exact: Some(exact),
        });
    }
    let m = rational::ceil_usize(&eps.recip()) - 1;
    Ok(DeltaBounds {
        eps: eps.clone(),
        lower: eps.clone(),
        upper: rational::int(m).recip(),
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::{build_cotree, random_cograph};
    use crate::graph::GraphBuilder;
    use proptest::prelude::*;

    fn cotree(g: &Graph) -> Cotree {
        build_cotree(g).unwrap().cotree().unwrap()
    }

    fn cliques(sizes: &[usize]) -> Graph {
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
        b.build()
    }

    /// a1..an = 0..n, b1..bn = n..2n.
    fn half(n: usize) -> Graph {
        let mut b = GraphBuilder::new(2 * n);
        for i in 0..n {
            for j in i..n {
                b.add_edge(i, n + j);
                if j > i {
                    b.add_edge(n + i, n + j);
                }
            }
        }
        b.build()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    #[test]
    fn betterthm_on_two_cliques() {
        let g = cliques(&[5, 5]);
        let p = ExtractionParams::new(ratio(1, 2), ratio(1, 2)).unwrap();
        let cert = betterthm_extract(&cotree(&g), &g, &p).unwrap();
        assert_eq!(cert.side, Side::Complement);
        assert_eq!(cert.set, set(10, &[0, 1, 2, 3, 4]));
        assert_eq!(cert.degree_bound, ratio(5, 2));
    }

    #[test]
    fn betterthm_degenerate_cases() {
        let g = cliques(&[3, 2]);
        let t = cotree(&g);
        let p = ExtractionParams::new(ratio(0, 1), ratio(1, 1)).unwrap();
        let cert = betterthm_extract(&t, &g, &p).unwrap();
        assert!(!cert.set.is_empty());
        assert_eq!(g.side_max_degree(&cert.set, cert.side), 0);
        let k1 = Graph::empty(1);
        for (x, y) in [(0, 1), (1, 1), (3, 1), (1, 5)] {
            let p = ExtractionParams::new(ratio(x, 1), ratio(y, 1)).unwrap();
            let cert = betterthm_extract(&cotree(&k1), &k1, &p).unwrap();
            assert_eq!(cert.set, set(1, &[0]));
        }
        assert!(ExtractionParams::new(ratio(2, 1), ratio(3, 2)).is_err());
        assert!(ExtractionParams::new(ratio(-1, 2), ratio(1, 2)).is_err());
    }

    #[test]
    fn p4thm_examples() {
        let k1 = Graph::empty(1);
        assert_eq!(p4thm_extract(&cotree(&k1), &k1, &ratio(1, 1)).unwrap().set, set(1, &[0]));
        let g = cliques(&[5, 5]);
        let cert = p4thm_extract(&cotree(&g), &g, &ratio(1, 2)).unwrap();
        assert!(cert.len() >= 5);
        assert!(rational::le(g.side_max_degree(&cert.set, cert.side), &ratio(5, 2)));
        let h = half(4);
        let cert = p4thm_extract(&cotree(&h), &h, &ratio(1, 2)).unwrap();
        assert!(cert.len() >= 4);
        assert!(h.side_max_degree(&cert.set, cert.side) <= 2);
        // the stable half qualifies as well
        assert_eq!(h.side_max_degree(&set(8, &[0, 1, 2, 3]), Side::Graph), 0);
    }

    #[test]
    fn product_examples() {
        let k6 = cliques(&[6]);
        let (x, y) = product_extract(&cotree(&k6), &k6, &ratio(1, 1)).unwrap();
        assert!(x.len() * y.len() >= 36);
        let g = cliques(&[5, 5]);
        let (x, y) = product_extract(&cotree(&g), &g, &ratio(1, 4)).unwrap();
        assert!(x.len() * y.len() >= 25);
        assert!(rational::le(g.side_max_degree(&x.set, Side::Graph), &ratio(5, 2)));
        assert!(rational::le(g.side_max_degree(&y.set, Side::Complement), &ratio(5, 2)));
        let (g, t) = random_cograph(100, &ratio(1, 2), 3).unwrap();
        let (x, y) = product_extract(&t, &g, &ratio(1, 10)).unwrap();
        assert!(x.len() * y.len() >= 1000);
        assert!(g.side_max_degree(&x.set, Side::Graph) <= 10);
        assert!(g.side_max_degree(&y.set, Side::Complement) <= 10);
    }

    #[test]
    fn toprange_examples() {
        let h = half(4);
        let cert = toprange_extract(&cotree(&h), &h, &ratio(1, 2)).unwrap();
        assert_eq!(cert.len(), 6);
        assert!(rational::le(h.side_max_degree(&cert.set, cert.side), &ratio(8, 3)));
        let k4 = cliques(&[4]);
        let cert = toprange_extract(&cotree(&k4), &k4, &ratio(1, 2)).unwrap();
        assert_eq!(cert.set, k4.vertices());
        assert_eq!(cert.side, Side::Complement);
        let g = cliques(&[5, 5]);
        let cert = toprange_extract(&cotree(&g), &g, &ratio(1, 2)).unwrap();
        assert!(cert.len() >= 7);
        assert!(rational::le(g.side_max_degree(&cert.set, cert.side), &ratio(10, 3)));
        assert!(toprange_extract(&cotree(&g), &g, &ratio(2, 5)).is_err());
        assert!(toprange_extract(&cotree(&g), &g, &ratio(1, 1)).is_err());
    }

    #[test]
    fn delta_bound_examples() {
        let b = delta_bounds(&ratio(2, 5)).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (ratio(2, 5), ratio(1, 2), None));
        let b = delta_bounds(&ratio(1, 2)).unwrap();
        assert_eq!(b.exact, Some(ratio(2, 3)));
        assert!(delta_bounds(&ratio(0, 1)).is_err());
        assert!(delta_bounds(&ratio(1, 1)).is_err());
        let b = delta_bounds(&ratio(1, 3)).unwrap();
        assert_eq!(b.upper, ratio(1, 2));
        let b = delta_bounds(&ratio(3, 10)).unwrap();
        assert_eq!(b.upper, ratio(1, 3));
    }

    fn arb_cograph() -> impl Strategy<Value = (Graph, Cotree)> {
        (1usize..80, 1i64..4, any::<u64>())
            .prop_map(|(n, b, seed)| random_cograph(n, &ratio(b, 4), seed).unwrap())
    }

    fn arb_unit() -> impl Strategy<Value = Rational> {
        (0i64..=12, 1i64..=12)
            .prop_filter("in [0,1]", |(p, q)| p <= q)
            .prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn betterthm_bullets_hold((g, t) in arb_cograph(), x in 0i64..30, y in 0i64..30) {
            let (x, y) = (ratio(x, 10), ratio(y, 10));
            prop_assume!(x <= Rational::one() || y <= Rational::one());
            let p = ExtractionParams::new(x.clone(), y.clone()).unwrap();
            let cert = betterthm_extract(&t, &g, &p).unwrap();
            let n = g.n();
            let d = g.side_max_degree(&cert.set, cert.side);
            prop_assert!(rational::le(d, &(&x * &y * rational::int(n))));
            let factor = if cert.side == Side::Graph { &x } else { &y };
            prop_assert!(rational::ge(cert.len(), &rational::scale(factor, n)));
        }

        #[test]
        fn p4thm_guarantee((g, t) in arb_cograph(), eps in arb_unit()) {
            let cert = p4thm_extract(&t, &g, &eps).unwrap();
            let n = g.n();
            prop_assert!(cert.len() >= rational::ceil_usize(&rational::scale(&eps, n)));
            prop_assert!(rational::le(g.side_max_degree(&cert.set, cert.side), &(&eps * &eps * rational::int(n))));
            prop_assert!(&eps * &eps * rational::int(n) <= rational::scale(&eps, cert.len()));
        }

        #[test]
        fn product_guarantee((g, t) in arb_cograph(), eps in arb_unit()) {
            prop_assume!(!eps.is_zero());
            let (x, y) = product_extract(&t, &g, &eps).unwrap();
            let n = g.n();
            let cap = rational::scale(&eps, n);
            prop_assert!(rational::le(g.side_max_degree(&x.set, Side::Graph), &cap));
            prop_assert!(rational::le(g.side_max_degree(&y.set, Side::Complement), &cap));
            prop_assert!(rational::ge(x.len() * y.len(), &(&cap * rational::int(n))));
        }

        #[test]
        fn toprange_guarantee((g, t) in arb_cograph(), p in 5i64..10) {
            let eps = ratio(p, 10);
            let cert = toprange_extract(&t, &g, &eps).unwrap();
            let n = rational::int(g.n());
            let delta = (ratio(2, 1) - &eps).recip();
            prop_assert!(rational::int(cert.len()) > &delta * &n);
            prop_assert!(rational::le(g.side_max_degree(&cert.set, cert.side), &(&eps * &delta * &n)));
        }

        #[test]
        fn extraction_on_restricted_cotree((g, t) in arb_cograph(), mask in any::<u64>(), eps in arb_unit()) {
            let x = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| mask >> (v % 64) & 1 == 1));
            prop_assume!(!x.is_empty());
            let r = t.restrict(&x).unwrap();
            let cert = p4thm_extract(&r, &g, &eps).unwrap();
            prop_assert!(cert.set.is_subset(&x));
            prop_assert!(cert.len() >= rational::ceil_usize(&rational::scale(&eps, x.len())));
        }
    }
}
