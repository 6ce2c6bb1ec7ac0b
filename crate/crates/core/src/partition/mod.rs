//! Restricted partitions of cographs.
//!
//! The pipeline runs [`split`] inside [`growtree`], then [`pureribbon`],
//! [`prettify`] and finally [`rodl_partition`]. Every stage produces a
//! [`Beribboning`] that [`validate_stage`] can check against the stage's
//! dimension and breadth bounds.

mod beribbon;
pub mod edge_coloring;
mod pipeline;
mod split;
mod thin_thick;

use std::fmt::{self, Write as _};

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{Graph, Polarity, RestrictedCertificate, Side, VertexSet};
use crate::rational::{self, Rational};

pub use beribbon::{greedy_restricted_cover, growtree, prune, pureribbon};
pub use pipeline::{
    dissolve_cap, disjoint_chunks, equalize_blocks, halve_per_part, prettify, prettify_with, rodl_partition,
    PrettifyOptions, Q,
};
pub use split::{split, SplitOutcome};
pub use thin_thick::{is_thick, is_thin, thin_thick_partition};

/// Disjoint sets that are complete or anticomplete to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePair {
    pub left: VertexSet,
    pub right: VertexSet,
    pub polarity: Polarity,
}

impl PurePair {
    pub fn validate(&self, g: &Graph) -> bool {
        self.left.is_disjoint(&self.right) && g.is_pure_as(&self.left, &self.right, self.polarity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RibbonPolarity {
    Complete,
    Anticomplete,
    Mixed,
}

/// Blocks `B_1..B_k`, each complete or anticomplete to the attachment and
/// all earlier blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ribbon {
    pub attachment: VertexSet,
    pub blocks: Vec<VertexSet>,
    /// Polarity of each block towards everything before it.
    pub polarities: Vec<Polarity>,
}

impl Ribbon {
    pub fn empty(attachment: VertexSet) -> Ribbon {
        Ribbon {
            attachment,
            blocks: Vec::new(),
            polarities: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn polarity(&self) -> RibbonPolarity {
        if self.polarities.iter().all(|&p| p == Polarity::Complete) {
            RibbonPolarity::Complete
        } else if self.polarities.iter().all(|&p| p == Polarity::Anticomplete) {
            RibbonPolarity::Anticomplete
        } else {
            RibbonPolarity::Mixed
        }
    }

    /// Pure ribbons (and empty ones) have a single polarity throughout.
    pub fn is_pure(&self) -> bool {
        self.is_empty() || self.polarity() != RibbonPolarity::Mixed
    }

    /// `min |B_i| / |X|`, or 1 for an empty ribbon.
    pub fn breadth(&self) -> Rational {
        match self.blocks.iter().map(|b| b.len()).min() {
            None => Rational::one(),
            Some(s) => Rational::new(s.into(), self.attachment.len().into()),
        }
    }

    pub fn block_union(&self) -> VertexSet {
        let mut out = VertexSet::new(self.attachment.capacity());
        for b in &self.blocks {
            out.union_with(b);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartKind {
    Restricted(RestrictedCertificate),
    Ribboned(Ribbon),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub set: VertexSet,
    pub kind: PartKind,
}

impl Part {
    pub fn restricted(cert: RestrictedCertificate) -> Part {
        Part {
            set: cert.set.clone(),
            kind: PartKind::Restricted(cert),
        }
    }

    pub fn ribboned(ribbon: Ribbon) -> Part {
        Part {
            set: ribbon.attachment.clone(),
            kind: PartKind::Ribboned(ribbon),
        }
    }

    pub fn is_restricted(&self) -> bool {
        matches!(self.kind, PartKind::Restricted(_))
    }

    pub fn ribbon(&self) -> Option<&Ribbon> {
        match &self.kind {
            PartKind::Ribboned(r) => Some(r),
            PartKind::Restricted(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&RestrictedCertificate> {
        match &self.kind {
            PartKind::Restricted(c) => Some(c),
            PartKind::Ribboned(_) => None,
        }
    }
}

/// A partition where each part is ε-restricted or carries a ribbon of
/// length at least `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beribboning {
    pub parts: Vec<Part>,
    pub k: usize,
    pub eps: Rational,
}

impl Beribboning {
    /// `(m, n)`: ribboned parts and all parts.
    pub fn dimensions(&self) -> (usize, usize) {
        let m = self.parts.iter().filter(|p| !p.is_restricted()).count();
        (m, self.parts.len())
    }

    /// Minimum ribbon breadth, 1 if there are no ribbons.
    pub fn breadth(&self) -> Rational {
        self.ribbons()
            .map(|(_, r)| r.breadth())
            .min()
            .unwrap_or_else(Rational::one)
    }

    pub fn ribbons(&self) -> impl Iterator<Item = (usize, &Ribbon)> {
        self.parts.iter().enumerate().filter_map(|(i, p)| p.ribbon().map(|r| (i, r)))
    }
}

/// One broken invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Parts overlap, are empty, or miss vertices.
    Partition(String),
    Certificate { part: usize, msg: String },
    /// A ribbon's attachment differs from its part or a block meets the
    /// attachment or another block.
    Disjointness { part: usize, block: usize },
    /// A block is not pure towards what precedes it as recorded.
    RibbonPolarity { part: usize, block: usize },
    RibbonLength { part: usize, len: usize, k: usize },
    /// Two ribboned parts do not form a pure pair.
    Purity { a: usize, b: usize },
    Dimensions { m: usize, n: usize, detail: String },
    Breadth { value: Rational, min: Rational },
    ImpureRibbon { part: usize },
    /// Prettified ribbons share a vertex.
    RibbonOverlap { a: usize, b: usize },
    /// More than half of a part lies inside ribbon blocks.
    Overlap { part: usize, inside: usize },
    UnequalBlocks { part: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Partition(m) => write!(f, "partition: {m}"),
            Violation::Certificate { part, msg } => write!(f, "certificate of part {part}: {msg}"),
            Violation::Disjointness { part, block } => {
                write!(f, "disjointness: block {block} of part {part}")
            }
            Violation::RibbonPolarity { part, block } => {
                write!(f, "ribbon polarity: block {block} of part {part}")
            }
            Violation::RibbonLength { part, len, k } => {
                write!(f, "ribbon length: part {part} has {len} < {k}")
            }
            Violation::Purity { a, b } => write!(f, "purity: parts {a} and {b}"),
            Violation::Dimensions { m, n, detail } => write!(f, "dimensions ({m}, {n}): {detail}"),
            Violation::Breadth { value, min } => write!(
                f,
                "breadth {} below {}",
                rational::format_rational(value),
                rational::format_rational(min)
            ),
            Violation::ImpureRibbon { part } => write!(f, "impure ribbon on part {part}"),
            Violation::RibbonOverlap { a, b } => write!(f, "ribbons of parts {a} and {b} overlap"),
            Violation::Overlap { part, inside } => {
                write!(f, "part {part} has {inside} vertices inside ribbon blocks")
            }
            Violation::UnequalBlocks { part } => write!(f, "unequal block sizes on part {part}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::check(v.to_string())),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return f.write_str("PASS");
        }
        write!(f, "FAIL")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Bounds a stage promises on top of the basic invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageBounds {
    pub max_m: Option<Rational>,
    pub max_n: Option<Rational>,
    pub min_breadth: Option<Rational>,
    pub pure: bool,
    pub prettified: bool,
}

impl StageBounds {
    /// Split seen as a one-level beribboning: `(3, 4)`, breadth `ε²/4`.
    pub fn split(eps: &Rational) -> StageBounds {
        StageBounds {
            max_m: Some(rational::int(3)),
            max_n: Some(rational::int(4)),
            min_breadth: Some(eps * eps / rational::int(4)),
            ..StageBounds::default()
        }
    }

    /// `(ε⁻², 1 + 3kε⁻²)`, breadth `ε²/4`.
    pub fn growtree(eps: &Rational, k: usize) -> StageBounds {
        let inv2 = (eps * eps).recip();
        StageBounds {
            max_m: Some(inv2.clone()),
            max_n: Some(Rational::one() + rational::int(3 * k) * inv2),
            min_breadth: Some(eps * eps / rational::int(4)),
            ..StageBounds::default()
        }
    }

    /// `(ε⁻², 10ε⁻³)`, breadth `ε²/4`, pure.
    pub fn pureribbon(eps: &Rational) -> StageBounds {
        let inv = eps.recip();
        StageBounds {
            max_m: Some(&inv * &inv),
            max_n: Some(rational::int(10) * &inv * &inv * &inv),
            min_breadth: Some(eps * eps / rational::int(4)),
            pure: true,
            prettified: false,
        }
    }

    /// `(ε⁻², 21ε⁻⁴)`, breadth `ε⁴/32`, prettified.
    pub fn prettified(eps: &Rational) -> StageBounds {
        let inv2 = (eps * eps).recip();
        let e4 = eps * eps * eps * eps;
        StageBounds {
            max_m: Some(inv2.clone()),
            max_n: Some(rational::int(21) * &inv2 * &inv2),
            min_breadth: Some(e4 / rational::int(32)),
            pure: true,
            prettified: true,
        }
    }
}

/// Basic beribboning invariants: partition, certificates, ribbon structure
/// and length, and purity between ribboned parts.
pub fn validate_beribboning(b: &Beribboning, g: &Graph) -> Report {
    let mut out = Report::default();
    let n = g.n();
    let mut seen = VertexSet::new(n);
    for (i, p) in b.parts.iter().enumerate() {
        if p.set.is_empty() {
            out.violations.push(Violation::Partition(format!("part {i} is empty")));
        }
        if p.set.iter().any(|v| v >= n) {
            out.violations.push(Violation::Partition(format!("part {i} leaves 0..{n}")));
            continue;
        }
        if !seen.is_disjoint(&p.set) {
            out.violations.push(Violation::Partition(format!("part {i} overlaps an earlier part")));
        }
        seen.union_with(&p.set);
        match &p.kind {
            PartKind::Restricted(c) => {
                let msg = if c.set != p.set {
                    Some("certificate set differs from part".to_string())
                } else if c.epsilon.as_ref() != Some(&b.eps) {
                    Some("certificate is not stated at the beribboning's eps".to_string())
                } else {
                    c.validate(g).err().map(|e| e.to_string())
                };
                if let Some(msg) = msg {
                    out.violations.push(Violation::Certificate { part: i, msg });
                }
            }
            PartKind::Ribboned(r) => check_ribbon(i, r, &p.set, b.k, g, &mut out),
        }
    }
    if seen.len() != n {
        out.violations.push(Violation::Partition(format!(
            "parts cover {} of {n} vertices",
            seen.len()
        )));
    }
    let ribboned: Vec<usize> = (0..b.parts.len()).filter(|&i| !b.parts[i].is_restricted()).collect();
    for (x, &i) in ribboned.iter().enumerate() {
        for &j in &ribboned[x + 1..] {
            if g.pair_polarity(&b.parts[i].set, &b.parts[j].set).is_none() {
                out.violations.push(Violation::Purity { a: i, b: j });
            }
        }
    }
    out
}

fn check_ribbon(i: usize, r: &Ribbon, set: &VertexSet, k: usize, g: &Graph, out: &mut Report) {
    if r.attachment != *set || r.blocks.len() != r.polarities.len() {
        out.violations.push(Violation::Disjointness { part: i, block: 0 });
        return;
    }
    if r.len() < k {
        out.violations.push(Violation::RibbonLength {
            part: i,
            len: r.len(),
            k,
        });
    }
    let mut before = set.clone();
    for (j, (block, &pol)) in r.blocks.iter().zip(&r.polarities).enumerate() {
        if block.is_empty() || !block.is_disjoint(&before) {
            out.violations.push(Violation::Disjointness { part: i, block: j });
        } else if !g.is_pure_as(block, &before, pol) {
            out.violations.push(Violation::RibbonPolarity { part: i, block: j });
        }
        before.union_with(block);
    }
}

/// [`validate_beribboning`] plus the stage's dimension, breadth, purity and
/// prettification requirements.
pub fn validate_stage(b: &Beribboning, g: &Graph, bounds: &StageBounds) -> Report {
    let mut out = validate_beribboning(b, g);
    let (m, n) = b.dimensions();
    if let Some(max) = &bounds.max_m {
        if !rational::le(m, max) {
            out.violations.push(Violation::Dimensions {
                m,
                n,
                detail: format!("m exceeds {}", rational::format_rational(max)),
            });
        }
    }
    if let Some(max) = &bounds.max_n {
        if !rational::le(n, max) {
            out.violations.push(Violation::Dimensions {
                m,
                n,
                detail: format!("n exceeds {}", rational::format_rational(max)),
            });
        }
    }
    if let Some(min) = &bounds.min_breadth {
        let value = b.breadth();
        if value < *min {
            out.violations.push(Violation::Breadth {
                value,
                min: min.clone(),
            });
        }
    }
    if bounds.pure || bounds.prettified {
        for (i, r) in b.ribbons() {
            if !r.is_pure() {
                out.violations.push(Violation::ImpureRibbon { part: i });
            }
        }
    }
    if bounds.prettified {
        check_prettified(b, &mut out);
    }
    out
}

fn check_prettified(b: &Beribboning, out: &mut Report) {
    let ribbons: Vec<(usize, VertexSet)> = b.ribbons().map(|(i, r)| (i, r.block_union())).collect();
    for (x, (i, u)) in ribbons.iter().enumerate() {
        for (j, w) in &ribbons[x + 1..] {
            if !u.is_disjoint(w) {
                out.violations.push(Violation::RibbonOverlap { a: *i, b: *j });
            }
        }
    }
    let all = ribbons.iter().fold(VertexSet::new(b.parts.first().map_or(0, |p| p.set.capacity())), |mut acc, (_, u)| {
        acc.union_with(u);
        acc
    });
    for (i, p) in b.parts.iter().enumerate() {
        let inside = p.set.intersection_len(&all);
        if 2 * inside > p.set.len() {
            out.violations.push(Violation::Overlap { part: i, inside });
        }
    }
    for (i, r) in b.ribbons() {
        if r.blocks.windows(2).any(|w| w[0].len() != w[1].len()) {
            out.violations.push(Violation::UnequalBlocks { part: i });
        }
    }
}

/// Checks that `certs` partition `V(G)` and each is ε-restricted.
pub fn validate_restricted_partition(certs: &[RestrictedCertificate], g: &Graph, eps: &Rational) -> Report {
    let mut out = Report::default();
    let mut seen = VertexSet::new(g.n());
    for (i, c) in certs.iter().enumerate() {
        if c.set.iter().any(|v| v >= g.n()) {
            out.violations.push(Violation::Partition(format!("part {i} leaves 0..{}", g.n())));
            continue;
        }
        if !seen.is_disjoint(&c.set) {
            out.violations.push(Violation::Partition(format!("part {i} overlaps an earlier part")));
        }
        seen.union_with(&c.set);
        let msg = match c.validate(g) {
            Err(e) => Some(e.to_string()),
            Ok(()) => match &c.epsilon {
                Some(e) if e <= eps => None,
                _ => {
                    // bound stated without eps: check the relative form directly
                    let cap = rational::scale(eps, c.set.len());
                    (!rational::le(g.side_max_degree(&c.set, c.side), &cap))
                        .then(|| "not eps-restricted".to_string())
                }
            },
        };
        if let Some(msg) = msg {
            out.violations.push(Violation::Certificate { part: i, msg });
        }
    }
    if seen.len() != g.n() {
        out.violations.push(Violation::Partition(format!(
            "parts cover {} of {} vertices",
            seen.len(),
            g.n()
        )));
    }
    out
}

fn polarity_word(p: Polarity) -> &'static str {
    match p {
        Polarity::Complete => "complete",
        Polarity::Anticomplete => "anticomplete",
    }
}

fn members(set: &VertexSet) -> String {
    let mut s = String::new();
    for v in set.iter() {
        let _ = write!(s, " {v}");
    }
    s
}

/// `part <i> side <g|c> bound <p/q> : v...` per certificate.
pub fn write_partition(certs: &[RestrictedCertificate]) -> String {
    let mut out = String::new();
    for (i, c) in certs.iter().enumerate() {
        let _ = writeln!(
            out,
            "part {i} side {} bound {} :{}",
            c.side,
            rational::format_rational(&c.degree_bound),
            members(&c.set)
        );
    }
    out
}

/// Restricted parts as in [`write_partition`]; ribboned parts as
/// `part <i> ribbon <len> :` lines followed by one
/// `block <i> <j> <complete|anticomplete> : v...` line per block.
pub fn write_beribboning(b: &Beribboning) -> String {
    let mut out = String::new();
    for (i, p) in b.parts.iter().enumerate() {
        match &p.kind {
            PartKind::Restricted(c) => {
                let _ = writeln!(
                    out,
                    "part {i} side {} bound {} :{}",
                    c.side,
                    rational::format_rational(&c.degree_bound),
                    members(&p.set)
                );
            }
            PartKind::Ribboned(r) => {
                let _ = writeln!(out, "part {i} ribbon {} :{}", r.len(), members(&p.set));
                for (j, (block, &pol)) in r.blocks.iter().zip(&r.polarities).enumerate() {
                    let _ = writeln!(out, "block {i} {j} {} :{}", polarity_word(pol), members(block));
                }
            }
        }
    }
    out
}

/// Reads [`write_partition`] output back. Certificates carry no eps; the
/// reader of the file decides which eps to check against.
pub fn parse_partition(text: &str, n: usize) -> Result<Vec<RestrictedCertificate>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: line_no, msg };
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| bad("missing `:`".into()))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        if words.len() != 6 || words[0] != "part" || words[2] != "side" || words[4] != "bound" {
            return Err(bad(format!("expected `part <i> side <g|c> bound <p/q> :`, found {head:?}")));
        }
        let side = Side::from_tag(words[3]).ok_or_else(|| bad(format!("bad side {:?}", words[3])))?;
        let bound = rational::parse_rational(words[5]).map_err(|e| bad(e.to_string()))?;
        let mut set = VertexSet::new(n);
        for tok in tail.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| bad(format!("bad vertex {tok:?}")))?;
            if v >= n {
                return Err(bad(format!("vertex {v} outside 0..{n}")));
            }
            set.insert(v);
        }
        out.push(RestrictedCertificate {
            set,
            side,
            degree_bound: bound,
            epsilon: None,
        });
    }
    Ok(out)
}
