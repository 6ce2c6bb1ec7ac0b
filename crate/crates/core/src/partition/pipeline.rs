use num_traits::One;

use crate::cotree::Cotree;
use crate::error::{Error, Result};
use crate::graph::{Graph, RestrictedCertificate, VertexSet};
use crate::rational::{self, Rational};

use super::beribbon::{cover_until, pureribbon};
use super::edge_coloring::bipartite_edge_coloring;
use super::{validate_beribboning, validate_restricted_partition, Beribboning, Part, PartKind};

/// Exponent in the size threshold `ε^{-Q}` below which prettification
/// dissolves a ribboned part.
pub const Q: u32 = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrettifyOptions {
    /// Ribboned parts with fewer vertices are dissolved. `None` means
    /// `ε^{-Q}`.
    pub dissolve_below: Option<usize>,
}

/// Least `t` with `(1 − ε)^t · size < 1`: enough greedy steps to cover a set
/// of `size` vertices completely.
pub fn dissolve_cap(eps: &Rational, size: usize) -> usize {
    let keep = Rational::one() - eps;
    let mut left = rational::int(size);
    let mut t = 0;
    while left >= Rational::one() {
        left *= &keep;
        t += 1;
    }
    t
}

/// Cuts every block into chunks of `m` consecutive vertices and keeps one
/// colour class of a proper `m`-edge-colouring of the chunk/vertex incidence
/// graph. The returned `C_ij ⊆ B_ij` are pairwise disjoint across all
/// ribbons. The class maximizing `min |C_ij|` is kept (lowest colour on
/// ties).
pub fn disjoint_chunks(ribbons: &[Vec<VertexSet>], m: usize) -> Vec<Vec<VertexSet>> {
    let capacity = ribbons.iter().flatten().map(|b| b.capacity()).next().unwrap_or(0);
    let mut owner = Vec::new(); // chunk -> (ribbon, block)
    let mut edges = Vec::new();
    for (i, blocks) in ribbons.iter().enumerate() {
        for (j, block) in blocks.iter().enumerate() {
            for chunk in block.to_vec().chunks(m.max(1)) {
                for &v in chunk {
                    edges.push((owner.len(), v));
                }
                owner.push((i, j));
            }
        }
    }
    let (colour, delta) = bipartite_edge_coloring(owner.len(), capacity, &edges);
    let class = |c: usize| {
        let mut out: Vec<Vec<VertexSet>> = ribbons
            .iter()
            .map(|bs| vec![VertexSet::new(capacity); bs.len()])
            .collect();
        for (&(chunk, v), &col) in edges.iter().zip(&colour) {
            if col == c {
                let (i, j) = owner[chunk];
                out[i][j].insert(v);
            }
        }
        out
    };
    let score = |c: &Vec<Vec<VertexSet>>| c.iter().flatten().map(|s| s.len()).min().unwrap_or(0);
    let mut best = class(0);
    for c in 1..delta {
        let cand = class(c);
        if score(&cand) > score(&best) {
            best = cand;
        }
    }
    best
}

/// Shrinks each `C_ij` to `D_ij` holding the `⌊|C_ij ∩ Y|/2⌋` smallest
/// vertices of `C_ij ∩ Y` for every part `Y`.
pub fn halve_per_part(blocks: &[Vec<VertexSet>], parts: &[VertexSet]) -> Vec<Vec<VertexSet>> {
    blocks
        .iter()
        .map(|bs| {
            bs.iter()
                .map(|c| {
                    let mut d = VertexSet::new(c.capacity());
                    for y in parts {
                        let inside = c.intersection(y);
                        d.union_with(&inside.smallest(inside.len() / 2));
                    }
                    d
                })
                .collect()
        })
        .collect()
}

/// Truncates every block of ribbon `i` to its `sizes[i]` smallest vertices,
/// or `None` for ribbons with a block that is too small.
pub fn equalize_blocks(blocks: &[Vec<VertexSet>], sizes: &[usize]) -> Vec<Option<Vec<VertexSet>>> {
    blocks
        .iter()
        .zip(sizes)
        .map(|(bs, &s)| {
            if bs.iter().all(|b| b.len() >= s) {
                Some(bs.iter().map(|b| b.smallest(s)).collect())
            } else {
                None
            }
        })
        .collect()
}

/// Makes ribbons pairwise disjoint, equal-sized within each ribbon, and
/// covering at most half of every part. Ribboned parts with fewer than
/// `ε^{-Q}` vertices are first dissolved into ε-restricted parts.
pub fn prettify(b: Beribboning, t: &Cotree, g: &Graph) -> Result<Beribboning> {
    prettify_with(b, t, g, &PrettifyOptions::default())
}

/// [`prettify`] with an explicit dissolve threshold. Parts whose blocks
/// cannot keep `⌈(ε⁴/32)|X|⌉` vertices after the disjointification are
/// dissolved as well.
pub fn prettify_with(b: Beribboning, t: &Cotree, g: &Graph, opts: &PrettifyOptions) -> Result<Beribboning> {
    validate_beribboning(&b, g).into_result()?;
    if b.ribbons().any(|(_, r)| !r.is_pure()) {
        return Err(Error::input("prettify needs pure ribbons"));
    }
    let eps = b.eps.clone();
    let below = match opts.dissolve_below {
        Some(s) => rational::int(s),
        None => num_traits::Pow::pow(eps.recip(), Q),
    };
    let mut parts = Vec::with_capacity(b.parts.len());
    let mut keep = Vec::new();
    for part in b.parts {
        if part.is_restricted() || rational::int(part.set.len()) >= below {
            if !part.is_restricted() {
                keep.push(parts.len());
            }
            parts.push(Some(part));
        } else {
            dissolve(&part.set, &eps, t, g, &mut parts)?;
        }
    }
    if !keep.is_empty() {
        let ribbons: Vec<Vec<VertexSet>> = keep
            .iter()
            .map(|&i| parts[i].as_ref().unwrap().ribbon().unwrap().blocks.clone())
            .collect();
        let c = disjoint_chunks(&ribbons, keep.len());
        let part_sets: Vec<VertexSet> = parts.iter().map(|p| p.as_ref().unwrap().set.clone()).collect();
        let d = halve_per_part(&c, &part_sets);
        let e4 = &eps * &eps * &eps * &eps / rational::int(32);
        let sizes: Vec<usize> = keep
            .iter()
            .map(|&i| rational::ceil_usize(&rational::scale(&e4, parts[i].as_ref().unwrap().set.len())))
            .collect();
        for (&i, blocks) in keep.iter().zip(equalize_blocks(&d, &sizes)) {
            match blocks {
                Some(blocks) => {
                    if let Some(PartKind::Ribboned(r)) = parts[i].as_mut().map(|p| &mut p.kind) {
                        r.blocks = blocks;
                    }
                }
                None => {
                    let part = parts[i].take().unwrap();
                    log::debug!("prettify: dissolving a part of {} vertices with thin blocks", part.set.len());
                    dissolve(&part.set, &eps, t, g, &mut parts)?;
                }
            }
        }
    }
    Ok(Beribboning {
        parts: parts.into_iter().flatten().collect(),
        k: b.k,
        eps,
    })
}

fn dissolve(x: &VertexSet, eps: &Rational, t: &Cotree, g: &Graph, out: &mut Vec<Option<Part>>) -> Result<()> {
    let cap = dissolve_cap(eps, x.len());
    let (certs, rest) = cover_until(t, g, x, eps, cap, 0)?;
    if !rest.is_empty() {
        return Err(Error::check("prettify: greedy cover did not exhaust a part"));
    }
    out.extend(certs.into_iter().map(|c| Some(Part::restricted(c))));
    Ok(())
}

/// Partition of `V(G)` into at most `⌊480ε⁻⁴⌋` ε-restricted parts, for
/// `0 < ε ≤ 1`.
///
/// Runs the beribboning pipeline at `ε/2`. Each prettified ribbon then
/// absorbs what greedy covering leaves of its part, and the vertices not
/// used by any ribbon keep their restricted parts.
pub fn rodl_partition(t: &Cotree, g: &Graph, eps: &Rational) -> Result<Vec<RestrictedCertificate>> {
    if *eps <= rational::ratio(0, 1) || *eps > rational::ratio(1, 1) {
        return Err(Error::input("rodl partition needs 0 < eps <= 1"));
    }
    if t.len() != g.n() {
        return Err(Error::input("rodl partition needs a cotree of the whole graph"));
    }
    let restrict = |x: &VertexSet| {
        g.check_restricted(x, eps)
            .ok_or_else(|| Error::check("rodl partition produced a part that is not eps-restricted"))
    };
    let mut out = Vec::new();
    if eps.is_one() {
        out.push(restrict(&g.vertices())?);
    } else {
        let half = eps / rational::int(2);
        let b = prettify(pureribbon(t, g, &half)?, t, g)?;
        let mut used = VertexSet::new(g.n());
        for (_, r) in b.ribbons() {
            used.union_with(&r.block_union());
        }
        let steps = rational::ceil_usize(&(rational::int(8) / (&half * &half)));
        for part in &b.parts {
            let free = part.set.difference(&used);
            match &part.kind {
                PartKind::Restricted(_) => {
                    if !free.is_empty() {
                        out.push(restrict(&free)?);
                    }
                }
                PartKind::Ribboned(r) => {
                    let block = r.blocks.first().map_or(0, |b| b.len());
                    let (certs, rest) = cover_until(t, g, &free, &half, steps, block)?;
                    if rest.len() > block {
                        return Err(Error::check("rodl partition: greedy cover left too much"));
                    }
                    for c in certs {
                        out.push(restrict(&c.set)?);
                    }
                    let merged = rest.union(&r.block_union());
                    if !merged.is_empty() {
                        out.push(restrict(&merged)?);
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| c.set.min());
    let cap = rational::floor_usize(&(rational::int(480) / num_traits::Pow::pow(eps.clone(), 4u32)));
    if out.len() > cap {
        return Err(Error::check(format!("rodl partition has {} parts, above {cap}", out.len())));
    }
    validate_restricted_partition(&out, g, eps).into_result()?;
    Ok(out)
}
