//! Induced copy counting, vertex substitution, and an empirical check of the
//! viral disjunction: many copies of `H`, or a large set on which one side
//! is sparse.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cotree::build_cotree;
use crate::error::{Error, Result};
use crate::extract::p4thm_extract;
use crate::graph::{pairs, Graph, GraphBuilder, Side, VertexSet};
use crate::oracle::{max_sparse_or_dense_set, OracleBudget};
use crate::rational::{self, Rational};

/// Largest pattern accepted.
pub const MAX_PATTERN: usize = 8;

/// A pattern graph with `1..=MAX_PATTERN` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern(Graph);

impl Pattern {
    pub fn new(g: Graph) -> Result<Pattern> {
        if g.n() == 0 || g.n() > MAX_PATTERN {
            return Err(Error::input(format!(
                "patterns need 1..={MAX_PATTERN} vertices, got {}",
                g.n()
            )));
        }
        Ok(Pattern(g))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

/// Number of injections `V(H) → V(G)` preserving edges and non-edges.
///
/// Backtracks over images with candidate bitsets; the last vertex is counted
/// by popcount. Work is split across threads by the image of the first
/// pattern vertex.
pub fn count_copies(h: &Pattern, g: &Graph) -> BigUint {
    let k = h.n();
    let n = g.n();
    if k > n {
        return BigUint::zero();
    }
    let hg = h.graph();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(hg.degree(v)), v));
    // adjacent[i][j]: order[i] ~ order[j]
    let adjacent: Vec<Vec<bool>> = order
        .iter()
        .map(|&a| order.iter().map(|&b| hg.has_edge(a, b)).collect())
        .collect();
    if k == 1 {
        return BigUint::from(n);
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut images = vec![first];
            let mut scratch = vec![FixedBitSet::with_capacity(n); k];
            BigUint::from(extend(g, &adjacent, &mut images, &mut scratch))
        })
        .sum()
}

fn extend(g: &Graph, adjacent: &[Vec<bool>], images: &mut Vec<usize>, scratch: &mut [FixedBitSet]) -> u128 {
    let depth = images.len();
    let k = adjacent.len();
    let cand = &mut scratch[depth];
    cand.insert_range(..);
    for (j, &w) in images.iter().enumerate() {
        if adjacent[depth][j] {
            cand.intersect_with(g.row(w));
        } else {
            cand.difference_with(g.row(w));
        }
        cand.set(w, false);
    }
    if depth + 1 == k {
        return cand.count_ones(..) as u128;
    }
    let next: Vec<usize> = cand.ones().collect();
    let mut total = 0u128;
    for v in next {
        images.push(v);
        total += extend(g, adjacent, images, scratch);
        images.pop();
    }
    total
}

/// Replaces vertex `v` of `h1` by a copy of `h2` joined to `N(v)`. The
/// other vertices of `h1` keep their relative order; `h2` comes last.
pub fn substitute(h1: &Graph, v: usize, h2: &Graph) -> Result<Graph> {
    if v >= h1.n() {
        return Err(Error::input(format!("vertex {v} outside 0..{}", h1.n())));
    }
    if h2.n() == 0 {
        return Err(Error::input("cannot substitute an empty graph"));
    }
    let keep: Vec<usize> = (0..h1.n()).filter(|&u| u != v).collect();
    let offset = keep.len();
    let mut b = GraphBuilder::new(offset + h2.n());
    for (i, &a) in keep.iter().enumerate() {
        for (j, &c) in keep.iter().enumerate().skip(i + 1) {
            if h1.has_edge(a, c) {
                b.add_edge(i, j);
            }
        }
        if h1.has_edge(a, v) {
            for x in 0..h2.n() {
                b.add_edge(i, offset + x);
            }
        }
    }
    for (x, y) in h2.edges() {
        b.add_edge(offset + x, offset + y);
    }
    Ok(b.build())
}

/// The base patterns followed by `depth` substitution rounds. Each round
/// draws `H1` from the pool, a vertex of `H1`, then `H2` among pool members
/// small enough for the result to stay within [`MAX_PATTERN`] vertices; a
/// round with no such `H2` adds nothing. Exact duplicates are dropped.
/// All draws use `ChaCha8Rng::seed_from_u64(seed)`.
pub fn substitution_closure_sample(base: &[Pattern], depth: usize, seed: u64) -> Vec<Pattern> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Pattern> = Vec::new();
    for p in base {
        if !pool.contains(p) {
            pool.push(p.clone());
        }
    }
    if pool.is_empty() {
        return pool;
    }
    for _ in 0..depth {
        let h1 = pool[rng.gen_range(0..pool.len())].clone();
        let v = rng.gen_range(0..h1.n());
        let room = MAX_PATTERN + 1 - h1.n();
        let fits: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].n() <= room).collect();
        if fits.is_empty() {
            continue;
        }
        let h2 = &pool[fits[rng.gen_range(0..fits.len())]];
        let out = substitute(h1.graph(), v, h2.graph()).expect("vertex drawn in range");
        let out = Pattern::new(out).expect("size kept within the cap");
        if !pool.contains(&out) {
            pool.push(out);
        }
    }
    pool
}

/// `d = (|H2| + 1)(d1 + 1) + d2`, the exponent obtained for a substitution of
/// viral graphs with exponents `d1` (outer) and `d2` (inserted).
pub fn substitution_exponent(d1: &Rational, d2: &Rational, h2_size: usize) -> Rational {
    rational::int(h2_size + 1) * (d1 + Rational::one()) + d2
}

/// Edge density of one side of `G[set]`, `0` when `|set| < 2`.
pub fn side_density(g: &Graph, set: &VertexSet, side: Side) -> Rational {
    let p = pairs(set.len());
    if p == 0 {
        return Rational::zero();
    }
    Rational::new(g.side_edge_count(set, side).into(), p.into())
}

/// A set on which one side has edge density at most ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedDensityCertificate {
    pub set: VertexSet,
    pub side: Side,
    pub density: Rational,
}

impl RestrictedDensityCertificate {
    /// Recomputes the density and checks it is as stated and at most `eps`.
    pub fn validate(&self, g: &Graph, eps: &Rational) -> Result<()> {
        if self.set.is_empty() || self.set.iter().any(|v| v >= g.n()) {
            return Err(Error::check("density witness is empty or out of range"));
        }
        let d = side_density(g, &self.set, self.side);
        if d != self.density {
            return Err(Error::check(format!(
                "stated density {} but measured {}",
                rational::format_rational(&self.density),
                rational::format_rational(&d)
            )));
        }
        if d > *eps {
            return Err(Error::check(format!(
                "density {} exceeds eps {}",
                rational::format_rational(&d),
                rational::format_rational(eps)
            )));
        }
        Ok(())
    }
}

/// `ε^d · scale`, compared exactly even for fractional `d = p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub eps: Rational,
    pub d: Rational,
    pub scale: BigUint,
}

/// Keeps exact powering affordable.
const MAX_EXPONENT_PART: u64 = 4096;

impl Threshold {
    fn new(eps: &Rational, d: &Rational, scale: BigUint) -> Result<Threshold> {
        let (p, q) = rational::as_u64_pair(d).ok_or_else(|| Error::input("d must be a positive rational"))?;
        if p == 0 || p > MAX_EXPONENT_PART || q > MAX_EXPONENT_PART {
            return Err(Error::input(format!(
                "d = {} needs a numerator in 1..={MAX_EXPONENT_PART} and denominator <= {MAX_EXPONENT_PART}",
                rational::format_rational(d)
            )));
        }
        Ok(Threshold {
            eps: eps.clone(),
            d: d.clone(),
            scale,
        })
    }

    /// `value ≥ ε^d · scale`.
    pub fn is_met_by(&self, value: &BigUint) -> bool {
        if self.scale.is_zero() {
            return true;
        }
        let (p, q) = rational::as_u64_pair(&self.d).expect("checked on construction");
        let ratio = Rational::new(value.clone().into(), self.scale.clone().into());
        num_traits::pow(ratio, q as usize) >= num_traits::pow(self.eps.clone(), p as usize)
    }

    /// The exact value when `d` is an integer.
    pub fn exact(&self) -> Option<Rational> {
        self.d.is_integer().then(|| {
            let p = rational::as_u64_pair(&self.d).expect("checked on construction").0;
            num_traits::pow(self.eps.clone(), p as usize) * Rational::from_integer(self.scale.clone().into())
        })
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.exact() {
            Some(v) => f.write_str(&rational::format_rational(&v)),
            None => write!(
                f,
                "({})^({})*{}",
                rational::format_rational(&self.eps),
                rational::format_rational(&self.d),
                self.scale
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViralBranch {
    ManyCopies,
    SparseOrDenseSet,
    Undecided,
}

impl ViralBranch {
    pub fn name(self) -> &'static str {
        match self {
            ViralBranch::ManyCopies => "many_copies",
            ViralBranch::SparseOrDenseSet => "sparse_or_dense_set",
            ViralBranch::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViralVerdict {
    pub branch: ViralBranch,
    pub copy_count: BigUint,
    /// `ε^d·|G|^{|H|}`.
    pub threshold: Threshold,
    /// `ε^d·|G|`, the size a witness must reach.
    pub size_threshold: Threshold,
    pub witness: Option<RestrictedDensityCertificate>,
}

impl ViralVerdict {
    /// Re-checks the claim of the verdict. Undecided verdicts claim nothing.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self.branch {
            ViralBranch::ManyCopies => {
                if !self.threshold.is_met_by(&self.copy_count) {
                    return Err(Error::check("copy count below threshold"));
                }
            }
            ViralBranch::SparseOrDenseSet => {
                let w = self
                    .witness
                    .as_ref()
                    .ok_or_else(|| Error::check("sparse_or_dense_set verdict without witness"))?;
                w.validate(g, &self.threshold.eps)?;
                if !self.size_threshold.is_met_by(&BigUint::from(w.set.len())) {
                    return Err(Error::check("witness smaller than eps^d |G|"));
                }
            }
            ViralBranch::Undecided => {}
        }
        Ok(())
    }
}

/// Decides one side of the viral disjunction for `G` and `H` when it can.
///
/// Counts copies exactly first. Failing that, looks for a set of at least
/// `ε^d|G|` vertices with one side of density at most ε: from the cotree
/// when `G` is a cograph, then by greedy peeling of maximum-degree vertices
/// on either side, then exhaustively when `G` fits the oracle budget.
pub fn viral_check(g: &Graph, h: &Pattern, eps: &Rational, d: &Rational) -> Result<ViralVerdict> {
    if *eps <= Rational::zero() || *eps > rational::ratio(1, 2) {
        return Err(Error::input("viral check needs 0 < eps <= 1/2"));
    }
    if *d <= Rational::zero() {
        return Err(Error::input("viral check needs d > 0"));
    }
    let n = g.n();
    let copy_count = count_copies(h, g);
    let threshold = Threshold::new(eps, d, num_traits::pow(BigUint::from(n), h.n()))?;
    let size_threshold = Threshold::new(eps, d, BigUint::from(n))?;
    let mut verdict = ViralVerdict {
        branch: ViralBranch::Undecided,
        copy_count,
        threshold,
        size_threshold,
        witness: None,
    };
    if verdict.threshold.is_met_by(&verdict.copy_count) {
        verdict.branch = ViralBranch::ManyCopies;
        return Ok(verdict);
    }
    if n == 0 {
        return Ok(verdict);
    }
    let big_enough = |s: &VertexSet| verdict.size_threshold.is_met_by(&BigUint::from(s.len()));
    let certify = |set: VertexSet, side: Side| {
        let density = side_density(g, &set, side);
        (density <= *eps && big_enough(&set)).then_some(RestrictedDensityCertificate { set, side, density })
    };
    let mut found = None;
    if let Some(t) = build_cotree(g)?.cotree() {
        let mut e = eps.clone();
        for _ in 0..4 {
            let c = p4thm_extract(&t, g, &e)?;
            if let Some(w) = certify(c.set, c.side) {
                found = Some(w);
                break;
            }
            e /= rational::int(2);
        }
    }
    if found.is_none() {
        found = [Side::Graph, Side::Complement]
            .into_iter()
            .find_map(|side| peel(g, eps, side).and_then(|s| certify(s, side)));
    }
    let budget = OracleBudget::default();
    if found.is_none() && n <= budget.max_vertices_subset {
        let (_, set, side) = max_sparse_or_dense_set(g, eps, &budget)?;
        found = certify(set, side);
    }
    if let Some(w) = found {
        verdict.branch = ViralBranch::SparseOrDenseSet;
        verdict.witness = Some(w);
    }
    verdict.validate(g)?;
    Ok(verdict)
}

/// Removes a vertex of maximum side degree until the side density is at
/// most ε; returns the first such set.
fn peel(g: &Graph, eps: &Rational, side: Side) -> Option<VertexSet> {
    let n = g.n();
    let mut x = g.vertices();
    let mut deg: Vec<usize> = (0..n).map(|v| g.side_degree_within(v, &x, side)).collect();
    let mut edges: usize = deg.iter().sum::<usize>() / 2;
    while !x.is_empty() {
        let p = pairs(x.len());
        if p == 0 || !rational::gt(edges, &rational::scale(eps, p)) {
            return Some(x);
        }
        let v = x.iter().max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))?;
        x.remove(v);
        edges -= deg[v];
        for u in x.iter() {
            let adjacent = g.has_edge(u, v);
            if adjacent == (side == Side::Graph) {
                deg[u] -= 1;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::random_cograph;
    use crate::generators::{complete, cycle, edgeless, gnp, path};
    use crate::oracle::count_copies_reference;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn pat(g: Graph) -> Pattern {
        Pattern::new(g).unwrap()
    }

    #[test]
    fn count_examples() {
        let p4 = pat(path(4));
        assert_eq!(count_copies(&p4, &path(4)), BigUint::from(2u32));
        assert!(count_copies(&p4, &cycle(4).unwrap()).is_zero());
        assert_eq!(count_copies(&p4, &cycle(5).unwrap()), BigUint::from(10u32));
        assert_eq!(count_copies(&pat(complete(3)), &complete(4)), BigUint::from(24u32));
        assert_eq!(count_copies(&pat(edgeless(1)), &complete(7)), BigUint::from(7u32));
        assert!(count_copies(&pat(complete(5)), &complete(4)).is_zero());
        assert!(Pattern::new(edgeless(0)).is_err());
        assert!(Pattern::new(edgeless(9)).is_err());
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute(&complete(2), 1, &complete(2)).unwrap(), complete(3));
        let p3 = substitute(&complete(2), 1, &edgeless(2)).unwrap();
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        let g = substitute(&path(4), 0, &path(4)).unwrap();
        assert_eq!(g.n(), 7);
        assert!(!build_cotree(&g).unwrap().is_cograph());
        assert!(substitute(&path(4), 4, &path(4)).is_err());
        assert!(substitute(&path(4), 0, &edgeless(0)).is_err());
    }

    #[test]
    fn closure_examples() {
        let k1 = pat(edgeless(1));
        assert_eq!(substitution_closure_sample(std::slice::from_ref(&k1), 5, 3), vec![k1]);
        let base = [pat(complete(2)), pat(edgeless(2))];
        for p in substitution_closure_sample(&base, 2, 1) {
            assert!(build_cotree(p.graph()).unwrap().is_cograph());
        }
        let out = substitution_closure_sample(&[pat(path(4))], 1, 1);
        let p4 = pat(path(4));
        assert!(out.iter().all(|p| !count_copies(&p4, p.graph()).is_zero()));
        assert_eq!(substitution_closure_sample(&base, 6, 9), substitution_closure_sample(&base, 6, 9));
    }

    #[test]
    fn exponent_helper() {
        assert_eq!(substitution_exponent(&ratio(2, 1), &ratio(3, 1), 4), ratio(18, 1));
        assert_eq!(substitution_exponent(&ratio(1, 2), &ratio(0, 1), 1), ratio(3, 1));
    }

    #[test]
    fn threshold_is_exact() {
        let t = Threshold::new(&ratio(1, 2), &ratio(3, 1), BigUint::from(625u32)).unwrap();
        assert_eq!(t.exact(), Some(ratio(625, 8)));
        assert!(!t.is_met_by(&BigUint::from(78u32)));
        assert!(t.is_met_by(&BigUint::from(79u32)));
        // (1/4)^(1/2) * 16 = 8
        let t = Threshold::new(&ratio(1, 4), &ratio(1, 2), BigUint::from(16u32)).unwrap();
        assert!(t.is_met_by(&BigUint::from(8u32)));
        assert!(!t.is_met_by(&BigUint::from(7u32)));
        assert_eq!(t.exact(), None);
        assert!(Threshold::new(&ratio(1, 4), &ratio(1, 5000), BigUint::from(1u32)).is_err());
    }

    #[test]
    fn viral_examples() {
        let p4 = pat(path(4));
        let v = viral_check(&cycle(5).unwrap(), &p4, &ratio(1, 2), &ratio(3, 1)).unwrap();
        assert_eq!(v.copy_count, BigUint::from(10u32));
        assert_eq!(v.branch, ViralBranch::SparseOrDenseSet);
        assert_eq!(v.threshold.to_string(), "625/8");
        let v = viral_check(&edgeless(100), &p4, &ratio(1, 4), &ratio(5, 1)).unwrap();
        assert!(v.copy_count.is_zero());
        assert_eq!(v.branch, ViralBranch::SparseOrDenseSet);
        let (g, _) = random_cograph(400, &ratio(1, 2), 17).unwrap();
        let v = viral_check(&g, &p4, &ratio(1, 10), &ratio(3, 1)).unwrap();
        assert_ne!(v.branch, ViralBranch::Undecided);
        v.validate(&g).unwrap();
        // 30 ordered edges in K6 against (1/2)*36
        let v = viral_check(&complete(6), &pat(complete(2)), &ratio(1, 2), &ratio(1, 1)).unwrap();
        assert_eq!(v.branch, ViralBranch::ManyCopies);
        assert!(viral_check(&complete(6), &p4, &ratio(3, 4), &ratio(1, 1)).is_err());
    }

    #[test]
    fn forged_verdicts_fail() {
        let g = cycle(5).unwrap();
        let p4 = pat(path(4));
        let mut v = viral_check(&g, &p4, &ratio(1, 2), &ratio(3, 1)).unwrap();
        v.witness.as_mut().unwrap().density = ratio(0, 1);
        assert!(v.validate(&g).is_err());
        v.witness = None;
        v.branch = ViralBranch::ManyCopies;
        assert!(v.validate(&g).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_reference(n in 1usize..9, num in 0i64..=4, seed in any::<u64>(), hn in 1usize..5, hseed in any::<u64>()) {
            let g = gnp(n, &ratio(num, 4), seed).unwrap();
            let h = gnp(hn, &ratio(1, 2), hseed).unwrap();
            let fast = count_copies(&pat(h.clone()), &g);
            let slow = count_copies_reference(&h, &g, &OracleBudget::default()).unwrap();
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn verdicts_validate(n in 1usize..30, num in 0i64..=4, seed in any::<u64>(), e in 2i64..=6) {
            let g = gnp(n, &ratio(num, 4), seed).unwrap();
            let v = viral_check(&g, &pat(path(4)), &ratio(1, e), &ratio(2, 1)).unwrap();
            prop_assert!(v.validate(&g).is_ok());
        }

        #[test]
        fn substitution_keeps_cographs(s1 in any::<u64>(), s2 in any::<u64>(), n1 in 1usize..6, n2 in 1usize..4, v in 0usize..6) {
            let (a, _) = random_cograph(n1, &ratio(1, 2), s1).unwrap();
            let (b, _) = random_cograph(n2, &ratio(1, 2), s2).unwrap();
            let out = substitute(&a, v % n1, &b).unwrap();
            prop_assert!(build_cotree(&out).unwrap().is_cograph());
        }
    }
}
