use crate::cotree::{Cotree, NodeKind};
use crate::error::{Error, Result};
use crate::extract::p4thm_extract;
use crate::graph::{Graph, RestrictedCertificate, Side, VertexSet};
use crate::rational::{self, Rational};

use super::{Beribboning, Part, PurePair, Report, Ribbon, Violation};

/// `A_0..A_3` partitioning the cotree's vertices. `A_0` is ε-restricted and
/// each non-empty `A_i` (`i ≥ 1`) has a witness set of size `≥ ε²N/4` that
/// is pure to it. `A_1, A_2, A_3` are pairwise pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitOutcome {
    pub parts: [VertexSet; 4],
    pub certificate: RestrictedCertificate,
    /// Witness for `A_{i+1}`; `left` is the part, `right` the witness.
    pub witnesses: [Option<PurePair>; 3],
}

impl SplitOutcome {
    /// Checks the outcome against `g` for a cotree on `domain`.
    pub fn validate(&self, g: &Graph, eps: &Rational, domain: &VertexSet) -> Report {
        let mut out = Report::default();
        let n = domain.len();
        let mut seen = VertexSet::new(domain.capacity());
        for (i, a) in self.parts.iter().enumerate() {
            if !seen.is_disjoint(a) {
                out.violations.push(Violation::Partition(format!("A{i} overlaps an earlier part")));
            }
            seen.union_with(a);
        }
        if seen != *domain {
            out.violations.push(Violation::Partition("parts do not cover the domain".into()));
        }
        let cert = &self.certificate;
        if cert.set != self.parts[0] || cert.epsilon.as_ref() != Some(eps) {
            out.violations.push(Violation::Certificate {
                part: 0,
                msg: "certificate does not describe A0 at eps".into(),
            });
        } else if let Err(e) = cert.validate(g) {
            out.violations.push(Violation::Certificate {
                part: 0,
                msg: e.to_string(),
            });
        }
        let min_witness = eps * eps * rational::int(n) / rational::int(4);
        for i in 1..4 {
            let a = &self.parts[i];
            match &self.witnesses[i - 1] {
                None if a.is_empty() => {}
                Some(w)
                    if w.left == *a
                        && !a.is_empty()
                        && w.right.is_subset(domain)
                        && rational::ge(w.right.len(), &min_witness)
                        && w.validate(g) => {}
                _ => out.violations.push(Violation::Disjointness { part: i, block: 0 }),
            }
            for j in i + 1..4 {
                if g.pair_polarity(a, &self.parts[j]).is_none() {
                    out.violations.push(Violation::Purity { a: i, b: j });
                }
            }
        }
        out
    }

    /// One-level beribboning: `A_0` restricted, every other non-empty part
    /// restricted if it happens to be, otherwise ribboned by its witness.
    pub fn into_beribboning(self, g: &Graph, eps: &Rational) -> Beribboning {
        let SplitOutcome {
            parts,
            certificate,
            witnesses,
        } = self;
        let mut out = vec![Part::restricted(certificate)];
        for (a, w) in parts.into_iter().skip(1).zip(witnesses) {
            if a.is_empty() {
                continue;
            }
            out.push(match g.check_restricted(&a, eps) {
                Some(c) => Part::restricted(c),
                None => {
                    let w = w.expect("non-empty part has a witness");
                    Part::ribboned(Ribbon {
                        attachment: a,
                        blocks: vec![w.right],
                        polarities: vec![w.polarity],
                    })
                }
            });
        }
        Beribboning {
            parts: out,
            k: 1,
            eps: eps.clone(),
        }
    }
}

/// Splits the vertex set of `t` (at least two vertices) into an ε-restricted
/// part and three pairwise pure parts with large pure witnesses.
///
/// Small pieces (at most `ε²N/4` vertices) that are pure to everything else
/// are peeled off the cotree while they total under `N/2`. What remains
/// splits at a cotree node into its smallest child `C` and the rest `B`.
pub fn split(t: &Cotree, g: &Graph, eps: &Rational) -> Result<SplitOutcome> {
    if *eps <= rational::ratio(0, 1) || *eps > rational::ratio(1, 1) {
        return Err(Error::input("split needs 0 < eps <= 1"));
    }
    let n = t.len();
    if n < 2 {
        return Err(Error::input("split needs at least two vertices"));
    }
    let universe = t.universe();
    let small_cap = eps * eps * rational::int(n) / rational::int(4);
    let small = |s: usize| rational::le(s, &small_cap);

    // peeled pieces complete (resp. anticomplete) to the rest in G
    let mut comp = VertexSet::new(universe);
    let mut anti = VertexSet::new(universe);
    let mut peeled = 0;
    let mut node = t.root();
    let kids = loop {
        let mut kids = t.node(node).children.clone();
        kids.sort_by_key(|&c| (t.node(c).size, t.node(c).min_leaf));
        let union = t.node(node).kind == NodeKind::Union;
        let mut start = 0;
        while kids.len() - start >= 2 {
            let s = t.node(kids[start]).size;
            if !small(s) || 2 * (peeled + s) >= n {
                break;
            }
            let set = t.leaf_set(kids[start]);
            if union {
                anti.union_with(&set);
            } else {
                comp.union_with(&set);
            }
            peeled += s;
            start += 1;
        }
        if kids.len() - start == 1 {
            node = kids[start];
            continue;
        }
        break kids[start..].to_vec();
    };
    let c = t.leaf_set(kids[0]);
    let mut b = VertexSet::new(universe);
    for &k in &kids[1..] {
        b.union_with(&t.leaf_set(k));
    }
    // (complete, anticomplete) on side `w`
    let on_side = |w: Side| match w {
        Side::Graph => (comp.clone(), anti.clone()),
        Side::Complement => (anti.clone(), comp.clone()),
    };

    let parts: [VertexSet; 4];
    let witness_sets: [VertexSet; 3];
    if small(c.len()) {
        let w = if t.node(node).kind == NodeKind::Join {
            Side::Graph
        } else {
            Side::Complement
        };
        let (p, q) = on_side(w);
        let p_c = p.union(&c);
        let quarter = rational::scale(eps, n) / rational::int(4);
        if rational::ge(p_c.len(), &quarter) {
            witness_sets = [p_c.clone(), b.clone(), VertexSet::new(universe)];
            parts = [p_c, b, q, VertexSet::new(universe)];
        } else {
            if !rational::ge(q.len(), &quarter) {
                return Err(Error::check("split: neither peeled side reaches eps*N/4"));
            }
            witness_sets = [q.clone(), b.clone(), VertexSet::new(universe)];
            parts = [q, b, p_c, VertexSet::new(universe)];
        }
    } else {
        let tb = t.restrict(&b).expect("B is non-empty");
        let found = p4thm_extract(&tb, g, eps)?;
        let want = rational::ceil_usize(&rational::scale(eps, b.len())).max(1);
        let x = found.set.smallest(want);
        let (p, q) = on_side(found.side);
        witness_sets = [c.clone(), b.clone(), b.clone()];
        parts = [q.union(&x), b.difference(&x), c, p];
    }

    let certificate = g
        .check_restricted(&parts[0], eps)
        .ok_or_else(|| Error::check("split: A0 is not eps-restricted"))?;
    let mut witnesses: [Option<PurePair>; 3] = [None, None, None];
    for i in 0..3 {
        let a = &parts[i + 1];
        if a.is_empty() {
            continue;
        }
        let right = witness_sets[i].clone();
        let polarity = g
            .pair_polarity(a, &right)
            .ok_or_else(|| Error::check(format!("split: witness for A{} is not pure", i + 1)))?;
        witnesses[i] = Some(PurePair {
            left: a.clone(),
            right,
            polarity,
        });
    }
    Ok(SplitOutcome {
        parts,
        certificate,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::{build_cotree, random_cograph};
    use crate::generators::{complete, counterex3, disjoint_cliques, edgeless, half_graph};
    use crate::partition::{validate_stage, StageBounds};
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn run(g: &Graph, eps: &Rational) -> SplitOutcome {
        let t = build_cotree(g).unwrap().cotree().unwrap();
        let out = split(&t, g, eps).unwrap();
        let r = out.validate(g, eps, &g.vertices());
        assert!(r.pass(), "{r}");
        out
    }

    #[test]
    fn k2_at_one() {
        let g = complete(2);
        let out = run(&g, &ratio(1, 1));
        assert_eq!(out.parts[0].len(), 1);
        assert_eq!(out.parts[2].len(), 1);
        assert!(out.parts[1].is_empty() && out.parts[3].is_empty());
        let w = out.witnesses[1].as_ref().unwrap();
        assert_eq!(w.right, out.parts[0]);
    }

    #[test]
    fn fixed_instances() {
        for g in [
            edgeless(10),
            complete(10),
            disjoint_cliques(&[5, 5]).unwrap(),
            disjoint_cliques(&[1, 1, 1, 7]).unwrap(),
            half_graph(16).unwrap(),
            counterex3(2).unwrap(),
        ] {
            for eps in [ratio(1, 1), ratio(1, 2), ratio(1, 5)] {
                run(&g, &eps);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = complete(1);
        let t = build_cotree(&g).unwrap().cotree().unwrap();
        assert!(split(&t, &g, &ratio(1, 2)).is_err());
        let g = complete(3);
        let t = build_cotree(&g).unwrap().cotree().unwrap();
        assert!(split(&t, &g, &ratio(0, 1)).is_err());
        assert!(split(&t, &g, &ratio(3, 2)).is_err());
    }

    proptest! {
        #[test]
        fn random_cographs_split(n in 2usize..60, bias in 0i64..=4, seed in any::<u64>(), e in 1i64..=8) {
            let (g, t) = random_cograph(n, &ratio(bias, 4), seed).unwrap();
            let eps = ratio(1, e);
            let out = split(&t, &g, &eps).unwrap();
            let r = out.validate(&g, &eps, &g.vertices());
            prop_assert!(r.pass(), "{}", r);
            let b = out.into_beribboning(&g, &eps);
            let r = validate_stage(&b, &g, &StageBounds::split(&eps));
            prop_assert!(r.pass(), "{}", r);
        }

        #[test]
        fn split_on_induced_subsets(n in 4usize..40, seed in any::<u64>(), keep in any::<u64>()) {
            let (g, t) = random_cograph(n, &ratio(1, 2), seed).unwrap();
            let x = VertexSet::from_iter(n, (0..n).filter(|v| keep >> (v % 64) & 1 == 1 || *v < 2));
            let tx = t.restrict(&x).unwrap();
            let eps = ratio(1, 3);
            let out = split(&tx, &g, &eps).unwrap();
            prop_assert!(out.validate(&g, &eps, &x).pass());
        }
    }
}
