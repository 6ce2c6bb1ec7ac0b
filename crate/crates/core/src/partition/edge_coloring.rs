//! Edge colouring of bipartite multigraphs with maximum-degree many colours.

/// Colours `edges` (pairs `(left, right)`) so that edges sharing an endpoint
/// differ, using `Δ` colours where `Δ` is the maximum degree. Returns the
/// colour of each edge and `Δ`.
///
/// Edges are coloured one at a time. When no colour is free at both ends,
/// the alternating path of the two candidate colours starting at the right
/// endpoint is flipped; in a bipartite graph it never returns to the left
/// endpoint.
pub fn bipartite_edge_coloring(left: usize, right: usize, edges: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let total = left + right;
    let mut degree = vec![0usize; total];
    for &(u, v) in edges {
        assert!(u < left && v < right, "edge ({u}, {v}) out of range");
        degree[u] += 1;
        degree[left + v] += 1;
    }
    let delta = degree.iter().copied().max().unwrap_or(0);
    let ends: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u, left + v)).collect();
    // at[node][c] is the edge of colour c at node
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; delta]; total];
    let mut colour = vec![usize::MAX; edges.len()];
    let other = |e: usize, x: usize| if ends[e].0 == x { ends[e].1 } else { ends[e].0 };
    let free = |at: &[Vec<Option<usize>>], x: usize| at[x].iter().position(|s| s.is_none()).expect("a free colour");
    for e in 0..edges.len() {
        let (u, v) = ends[e];
        let a = free(&at, u);
        if at[v][a].is_some() {
            let b = free(&at, v);
            let mut path = Vec::new();
            let (mut x, mut c) = (v, a);
            while let Some(f) = at[x][c] {
                path.push(f);
                x = other(f, x);
                c = if c == a { b } else { a };
            }
            for &f in &path {
                let (p, q) = ends[f];
                at[p][colour[f]] = None;
                at[q][colour[f]] = None;
            }
            for &f in &path {
                let c = if colour[f] == a { b } else { a };
                colour[f] = c;
                let (p, q) = ends[f];
                at[p][c] = Some(f);
                at[q][c] = Some(f);
            }
        }
        colour[e] = a;
        at[u][a] = Some(e);
        at[v][a] = Some(e);
    }
    (colour, delta)
}
