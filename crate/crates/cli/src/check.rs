//! Checkers that recompute claims from adjacency queries only.

use cograph::{Graph, Rational, RestrictedCertificate, Side, VertexSet};

fn adjacent_on(g: &Graph, u: usize, v: usize, side: Side) -> bool {
    match side {
        Side::Graph => g.has_edge(u, v),
        Side::Complement => !g.has_edge(u, v),
    }
}

pub fn max_degree(g: &Graph, set: &VertexSet, side: Side) -> usize {
    let members = set.to_vec();
    members
        .iter()
        .map(|&u| members.iter().filter(|&&v| v != u && adjacent_on(g, u, v, side)).count())
        .max()
        .unwrap_or(0)
}

fn at_most(count: usize, bound: &Rational) -> bool {
    Rational::from_integer(count.into()) <= *bound
}

/// `Ok` when the side degree of the certificate's set is within its bound,
/// else the violated inequality.
pub fn certificate(g: &Graph, c: &RestrictedCertificate) -> Result<(), String> {
    let deg = max_degree(g, &c.set, c.side);
    if !at_most(deg, &c.degree_bound) {
        return Err(format!("max {} degree {deg} > {}", c.side, cograph::rational::format_rational(&c.degree_bound)));
    }
    if let Some(eps) = &c.epsilon {
        let cap = eps * Rational::from_integer(c.set.len().into());
        if !at_most(deg, &cap) {
            return Err(format!(
                "max {} degree {deg} > eps*|X| = {}",
                c.side,
                cograph::rational::format_rational(&cap)
            ));
        }
    }
    Ok(())
}

/// Component sizes of `set` on `side`, by breadth-first search.
pub fn component_sizes(g: &Graph, set: &VertexSet, side: Side) -> Vec<usize> {
    let members = set.to_vec();
    let mut seen = vec![false; members.len()];
    let mut sizes = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut size = 0;
        while let Some(i) = queue.pop() {
            size += 1;
            for j in 0..members.len() {
                if !seen[j] && adjacent_on(g, members[i], members[j], side) {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Every vertex of `0..n` in exactly one set.
pub fn partition(n: usize, sets: &[&VertexSet]) -> Result<(), String> {
    let mut count = vec![0usize; n];
    for s in sets {
        for v in s.iter() {
            if v >= n {
                return Err(format!("vertex {v} outside 0..{n}"));
            }
            count[v] += 1;
        }
    }
    match count.iter().position(|&c| c != 1) {
        Some(v) => Err(format!("vertex {v} covered {} times", count[v])),
        None => Ok(()),
    }
}
