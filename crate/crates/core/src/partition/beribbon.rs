use crate::cotree::Cotree;
use crate::error::{Error, Result};
use crate::extract::p4thm_extract;
use crate::graph::{Graph, Polarity, RestrictedCertificate, VertexSet};
use crate::rational::{self, Rational};

use super::{split, validate_beribboning, Beribboning, Part, PartKind, Ribbon};

/// Covers `X` by at most `steps` ε-restricted sets, each extracted from what
/// is left; returns the sets and the uncovered rest. Each step removes at
/// least an ε fraction, so the rest has at most `(1 − ε)^steps·|X|`
/// vertices.
pub fn greedy_restricted_cover(
    t: &Cotree,
    g: &Graph,
    x: &VertexSet,
    eps: &Rational,
    steps: usize,
) -> Result<(Vec<RestrictedCertificate>, VertexSet)> {
    cover_until(t, g, x, eps, steps, 0)
}

/// As [`greedy_restricted_cover`], stopping early once at most `stop_at`
/// vertices are left.
pub(crate) fn cover_until(
    t: &Cotree,
    g: &Graph,
    x: &VertexSet,
    eps: &Rational,
    steps: usize,
    stop_at: usize,
) -> Result<(Vec<RestrictedCertificate>, VertexSet)> {
    if *eps <= rational::ratio(0, 1) || *eps > rational::ratio(1, 1) {
        return Err(Error::input("greedy cover needs 0 < eps <= 1"));
    }
    let mut rest = x.intersection(&t.vertex_set());
    let mut out = Vec::new();
    for _ in 0..steps {
        if rest.len() <= stop_at {
            break;
        }
        let tr = t.restrict(&rest).expect("rest is non-empty");
        let c = p4thm_extract(&tr, g, eps)?;
        rest.difference_with(&c.set);
        out.push(c);
    }
    Ok((out, rest))
}

fn check_eps(eps: &Rational, max: Rational) -> Result<()> {
    if *eps <= rational::ratio(0, 1) || *eps > max {
        return Err(Error::input(format!(
            "eps must lie in (0, {}]",
            rational::format_rational(&max)
        )));
    }
    Ok(())
}

/// Reduces the number of ribboned parts to at most `ε⁻²`.
///
/// With more ribboned parts than that, `t = ⌈1/ε⌉` of them are pairwise
/// complete or pairwise anticomplete. Take the `t` smallest such parts; the
/// smallest one together with equally sized slices of the others forms a new
/// ε-restricted part. The trimmed parts keep their ribbons.
pub fn prune(b: Beribboning, t: &Cotree, g: &Graph) -> Result<Beribboning> {
    validate_beribboning(&b, g).into_result()?;
    check_eps(&b.eps, rational::ratio(1, 1))?;
    let parts = prune_parts(b.parts, &b.eps, t, g)?;
    Ok(Beribboning { parts, ..b })
}

pub(crate) fn prune_parts(mut parts: Vec<Part>, eps: &Rational, t: &Cotree, g: &Graph) -> Result<Vec<Part>> {
    let limit = (eps * eps).recip();
    let take = rational::ceil_usize(&eps.recip());
    loop {
        let ribboned: Vec<usize> = (0..parts.len()).filter(|&i| !parts[i].is_restricted()).collect();
        if rational::le(ribboned.len(), &limit) {
            return Ok(parts);
        }
        let mut owner = vec![usize::MAX; g.n()];
        let mut reps = VertexSet::new(g.n());
        for &i in &ribboned {
            let v = parts[i].set.min().expect("parts are non-empty");
            owner[v] = i;
            reps.insert(v);
        }
        let quotient = t.restrict(&reps).expect("reps are non-empty");
        let cs = quotient.max_clique_and_stable();
        let family = if cs.clique.len() >= take {
            cs.clique
        } else if cs.stable.len() >= take {
            cs.stable
        } else {
            return Err(Error::check("prune: no pure family of ceil(1/eps) parts"));
        };
        let mut chosen: Vec<usize> = family.iter().map(|v| owner[v]).collect();
        chosen.sort_by_key(|&i| (parts[i].set.len(), i));
        chosen.truncate(take);
        let smallest = chosen[0];
        let s = parts[smallest].set.len();
        let mut merged = parts[smallest].set.clone();
        for &i in &chosen[1..] {
            let slice = parts[i].set.smallest(s);
            merged.union_with(&slice);
            let left = parts[i].set.difference(&slice);
            parts[i].set = left.clone();
            if let PartKind::Ribboned(r) = &mut parts[i].kind {
                r.attachment = left;
            }
        }
        let cert = g
            .check_restricted(&merged, eps)
            .ok_or_else(|| Error::check("prune: merged part is not eps-restricted"))?;
        parts[smallest] = Part::restricted(cert);
        parts.retain(|p| !p.set.is_empty());
    }
}

/// An (ε, k)-beribboning with at most `ε⁻²` ribboned parts and at most
/// `1 + 3kε⁻²` parts, every ribbon of breadth at least `ε²/4`.
///
/// Each level splits every ribboned part, prepends the split witness to the
/// inherited ribbon, then prunes.
pub fn growtree(t: &Cotree, g: &Graph, eps: &Rational, k: usize) -> Result<Beribboning> {
    check_eps(eps, rational::ratio(1, 1))?;
    if t.len() != g.n() {
        return Err(Error::input("growtree needs a cotree of the whole graph"));
    }
    let all = g.vertices();
    let mut parts = vec![match g.check_restricted(&all, eps) {
        Some(c) => Part::restricted(c),
        None => Part::ribboned(Ribbon::empty(all)),
    }];
    for level in 1..=k {
        let mut next = Vec::with_capacity(parts.len() * 4);
        for part in parts {
            let ribbon = match part.kind {
                PartKind::Restricted(_) => {
                    next.push(part);
                    continue;
                }
                PartKind::Ribboned(r) => r,
            };
            if let Some(c) = g.check_restricted(&part.set, eps) {
                next.push(Part::restricted(c));
                continue;
            }
            let tx = t.restrict(&part.set).expect("parts are non-empty");
            let out = split(&tx, g, eps)?;
            next.push(Part::restricted(out.certificate));
            for (a, w) in out.parts.into_iter().skip(1).zip(out.witnesses) {
                if a.is_empty() {
                    continue;
                }
                if let Some(c) = g.check_restricted(&a, eps) {
                    next.push(Part::restricted(c));
                    continue;
                }
                let w = w.expect("non-empty part has a witness");
                let mut blocks = vec![w.right];
                blocks.extend(ribbon.blocks.iter().cloned());
                let mut polarities = vec![w.polarity];
                polarities.extend(ribbon.polarities.iter().copied());
                next.push(Part::ribboned(Ribbon {
                    attachment: a,
                    blocks,
                    polarities,
                }));
            }
        }
        parts = prune_parts(next, eps, t, g)?;
        log::debug!(
            "growtree level {level}: {} parts, {} ribboned",
            parts.len(),
            parts.iter().filter(|p| !p.is_restricted()).count()
        );
    }
    Ok(Beribboning {
        parts,
        k,
        eps: eps.clone(),
    })
}

/// An (ε, ⌈1/ε⌉)-beribboning whose ribbons are pure, for `ε ≤ 1/2`.
///
/// Grows ribbons of length `2⌈1/ε⌉` and keeps, on each, whichever of the
/// complete and anticomplete blocks is more numerous (complete on ties).
pub fn pureribbon(t: &Cotree, g: &Graph, eps: &Rational) -> Result<Beribboning> {
    check_eps(eps, rational::ratio(1, 2))?;
    let k = rational::ceil_usize(&eps.recip());
    let mut b = growtree(t, g, eps, 2 * k)?;
    for part in &mut b.parts {
        if let PartKind::Ribboned(r) = &mut part.kind {
            let complete = r.polarities.iter().filter(|&&p| p == Polarity::Complete).count();
            let keep = if 2 * complete >= r.len() {
                Polarity::Complete
            } else {
                Polarity::Anticomplete
            };
            let blocks: Vec<VertexSet> = r
                .blocks
                .iter()
                .zip(&r.polarities)
                .filter(|(_, &p)| p == keep)
                .map(|(b, _)| b.clone())
                .take(k)
                .collect();
            r.polarities = vec![keep; blocks.len()];
            r.blocks = blocks;
        }
    }
    b.k = k;
    Ok(b)
}
