use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cograph::cotree::{build_cotree, Recognition};
use cograph::extract::{betterthm_extract, delta_bounds, p4thm_extract, product_extract, toprange_extract, ExtractionParams};
use cograph::generators::{complete, counterex3, counterex_k, cycle, disjoint_cliques, edgeless, gnp, half_graph, path};
use cograph::oracle::{count_copies_reference, max_restricted_set, min_restricted_partition};
use cograph::partition::{
    growtree, parse_partition, prettify, pureribbon, rodl_partition, split, thin_thick_partition, validate_stage,
    write_beribboning, write_partition, Beribboning, StageBounds,
};
use cograph::rational::{format_rational, int};
use cograph::viral::{count_copies, viral_check, Pattern, ViralBranch};
use cograph::{random_cograph, write_graph, Cotree, Graph, Rational, RestrictedCertificate, Side, VertexSet};
use serde_json::json;

use crate::{check, rational_arg, usage, Ctx, Failure};

type Outcome = Result<(), Failure>;

fn members(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn ceil(r: &Rational) -> usize {
    cograph::rational::ceil_usize(r)
}

fn cotree_of(g: &Graph) -> Result<Cotree, Failure> {
    match build_cotree(g)? {
        Recognition::Cograph(t) => Ok(t),
        Recognition::NotCograph(w) => Err(Failure::Run(format!("not a cograph: induced P4 on {:?}", w.0))),
    }
}

fn check_cert(ctx: &mut Ctx, name: &str, g: &Graph, c: &RestrictedCertificate) {
    ctx.report.check(name, check::certificate(g, c).map(|_| String::new()));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Cliques,
    Half,
    CxK,
    Cx3,
    Random,
    Gnp,
    Cycle,
    Path,
    Complete,
    Edgeless,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Integer parameters: clique sizes, `2n`, `n`, or the vertex count.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    params: Vec<usize>,
    /// Join bias for `random`, edge probability for `gnp`.
    #[arg(long, value_parser = rational_arg, default_value = "1/2")]
    p: Rational,
}

pub fn gen(ctx: &mut Ctx, a: &GenArgs) -> Outcome {
    let one = |p: &[usize]| -> Result<usize, Failure> {
        match p {
            [n] => Ok(*n),
            _ => Err(usage("--params takes exactly one value for this kind")),
        }
    };
    let seed = ctx.global.seed;
    let (g, cograph_expected) = match a.kind {
        GenKind::Cliques => (disjoint_cliques(&a.params)?, true),
        GenKind::Half => (half_graph(one(&a.params)?)?, true),
        GenKind::CxK => {
            let c = counterex_k(&ctx.eps()?, one(&a.params)?)?;
            ctx.report.output("k", c.k);
            ctx.report.output("m", c.m);
            (c.graph, true)
        }
        GenKind::Cx3 => (counterex3(one(&a.params)?)?, true),
        GenKind::Random => (random_cograph(one(&a.params)?, &a.p, seed)?.0, true),
        GenKind::Gnp => (gnp(one(&a.params)?, &a.p, seed)?, false),
        GenKind::Cycle => (cycle(one(&a.params)?)?, false),
        GenKind::Path => (path(one(&a.params)?), false),
        GenKind::Complete => (complete(one(&a.params)?), true),
        GenKind::Edgeless => (edgeless(one(&a.params)?), true),
    };
    let text = write_graph(&g);
    ctx.report.output("n", g.n());
    ctx.report.output("m", g.edge_count());
    ctx.report.output("graph", text.clone());
    ctx.report.text.extend(text.lines().map(str::to_owned));
    if cograph_expected {
        let ok = match build_cotree(&g)? {
            Recognition::Cograph(t) => {
                if t.realize() == g {
                    Ok("cotree realizes the graph".to_owned())
                } else {
                    Err("cotree does not realize the graph".to_owned())
                }
            }
            Recognition::NotCograph(w) => Err(format!("induced P4 on {:?}", w.0)),
        };
        ctx.report.check("cograph", ok);
    }
    Ok(())
}

fn is_clique_on(g: &Graph, set: &VertexSet, side: Side) -> bool {
    let m = set.to_vec();
    m.iter().enumerate().all(|(i, &u)| {
        m[i + 1..].iter().all(|&v| match side {
            Side::Graph => g.has_edge(u, v),
            Side::Complement => !g.has_edge(u, v),
        })
    })
}

pub fn cotree(ctx: &mut Ctx) -> Outcome {
    let g = ctx.graph()?;
    match build_cotree(&g)? {
        Recognition::Cograph(t) => {
            let cs = t.max_clique_and_stable();
            ctx.report.line(t.to_string());
            ctx.report.line(format!("clique {} : {}", cs.clique.len(), members(&cs.clique)));
            ctx.report.line(format!("stable {} : {}", cs.stable.len(), members(&cs.stable)));
            ctx.report.output("cograph", true);
            ctx.report.output("cotree", t.to_string());
            ctx.report.output("clique", cs.clique.to_vec());
            ctx.report.output("stable", cs.stable.to_vec());
            let realized = t.realize() == g;
            ctx.report.check(
                "realize",
                if realized { Ok(String::new()) } else { Err("cotree does not realize the graph".into()) },
            );
            let ok = is_clique_on(&g, &cs.clique, Side::Graph) && is_clique_on(&g, &cs.stable, Side::Complement);
            ctx.report.check(
                "clique-stable",
                if ok { Ok(String::new()) } else { Err("witness is not a clique / stable set".into()) },
            );
        }
        Recognition::NotCograph(w) => {
            let [a, b, c, d] = w.0;
            ctx.report.line(format!("not a cograph: induced P4 {a} {b} {c} {d}"));
            ctx.report.output("cograph", false);
            ctx.report.output("p4", w.0.to_vec());
            let ok = g.has_edge(a, b)
                && g.has_edge(b, c)
                && g.has_edge(c, d)
                && !g.has_edge(a, c)
                && !g.has_edge(b, d)
                && !g.has_edge(a, d);
            ctx.report.check(
                "p4-witness",
                if ok { Ok(String::new()) } else { Err("witness is not an induced P4".into()) },
            );
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtractMode {
    P4,
    Better,
    Product,
    Toprange,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long, value_enum, default_value = "p4")]
    mode: ExtractMode,
    #[arg(long, value_parser = rational_arg)]
    x: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    y: Option<Rational>,
}

fn cert_line(label: &str, c: &RestrictedCertificate) -> String {
    format!(
        "{label} side {} bound {} size {} : {}",
        c.side,
        format_rational(&c.degree_bound),
        c.set.len(),
        members(&c.set)
    )
}

fn cert_json(c: &RestrictedCertificate) -> serde_json::Value {
    json!({
        "side": c.side.tag(),
        "bound": format_rational(&c.degree_bound),
        "size": c.set.len(),
        "set": c.set.to_vec(),
    })
}

fn inequality(name: &str, holds: bool, text: String) -> (String, Result<String, String>) {
    (name.to_owned(), if holds { Ok(text) } else { Err(format!("violated: {text}")) })
}

fn at_least(count: usize, r: &Rational) -> bool {
    int(count) >= *r
}

pub fn extract(ctx: &mut Ctx, a: &ExtractArgs) -> Outcome {
    let g = ctx.graph()?;
    let t = cotree_of(&g)?;
    let nn = int(g.n());
    let mut guarantees = Vec::new();
    match a.mode {
        ExtractMode::P4 | ExtractMode::Toprange | ExtractMode::Better => {
            let (c, size_min, strict, bound_max) = match a.mode {
                ExtractMode::P4 => {
                    let eps = ctx.eps()?;
                    let c = p4thm_extract(&t, &g, &eps)?;
                    (c, int(ceil(&(&eps * &nn))), false, &eps * &eps * &nn)
                }
                ExtractMode::Toprange => {
                    let eps = ctx.eps()?;
                    let c = toprange_extract(&t, &g, &eps)?;
                    let delta = delta_bounds(&eps)?.exact.expect("toprange accepted eps >= 1/2");
                    (c, &delta * &nn, true, &eps * &delta * &nn)
                }
                _ => {
                    let x = a.x.clone().ok_or_else(|| usage("--x is required for --mode better"))?;
                    let y = a.y.clone().ok_or_else(|| usage("--y is required for --mode better"))?;
                    let c = betterthm_extract(&t, &g, &ExtractionParams::new(x.clone(), y.clone())?)?;
                    let size = if c.side == Side::Graph { &x * &nn } else { &y * &nn };
                    (c, size, false, &x * &y * &nn)
                }
            };
            ctx.report.line(cert_line("cert", &c));
            ctx.report.output("certificate", cert_json(&c));
            check_cert(ctx, "certificate", &g, &c);
            let size = c.set.len();
            guarantees.push(if strict {
                inequality("size", int(size) > size_min, format!("|X| = {size} > {}", format_rational(&size_min)))
            } else {
                inequality("size", at_least(size, &size_min), format!("|X| = {size} >= {}", format_rational(&size_min)))
            });
            let deg = check::max_degree(&g, &c.set, c.side);
            guarantees.push(inequality(
                "degree",
                int(deg) <= bound_max,
                format!("max {} degree {deg} <= {}", c.side, format_rational(&bound_max)),
            ));
        }
        ExtractMode::Product => {
            let eps = ctx.eps()?;
            let (x, y) = product_extract(&t, &g, &eps)?;
            ctx.report.line(cert_line("cert-x", &x));
            ctx.report.line(cert_line("cert-y", &y));
            ctx.report.output("x", cert_json(&x));
            ctx.report.output("y", cert_json(&y));
            check_cert(ctx, "certificate-x", &g, &x);
            check_cert(ctx, "certificate-y", &g, &y);
            let bound = &eps * &nn;
            let dx = check::max_degree(&g, &x.set, Side::Graph);
            let dy = check::max_degree(&g, &y.set, Side::Complement);
            guarantees.push(inequality(
                "degree",
                int(dx.max(dy)) <= bound,
                format!("graph degree {dx}, complement degree {dy} <= {}", format_rational(&bound)),
            ));
            let prod = x.set.len() * y.set.len();
            let target = &eps * &nn * &nn;
            guarantees.push(inequality(
                "product",
                at_least(prod, &target),
                format!("|X||Y| = {prod} >= {}", format_rational(&target)),
            ));
        }
    }
    for (name, outcome) in guarantees {
        ctx.report.check(&name, outcome);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Split,
    Grow,
    Pure,
    Pretty,
    Final,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[arg(long, value_enum, default_value = "final")]
    stage: Stage,
    /// Depth for `--stage grow`; `2⌈1/ε⌉` when omitted.
    #[arg(long)]
    k: Option<usize>,
}

fn report_beribboning(ctx: &mut Ctx, g: &Graph, b: &Beribboning, bounds: &StageBounds) {
    let (m, n) = b.dimensions();
    ctx.report.text.extend(write_beribboning(b).lines().map(str::to_owned));
    ctx.report.line(format!("dimensions {m} {n} breadth {}", format_rational(&b.breadth())));
    ctx.report.output("dimensions", json!([m, n]));
    ctx.report.output("breadth", format_rational(&b.breadth()));
    ctx.report.output("beribboning", write_beribboning(b));
    let sets: Vec<&VertexSet> = b.parts.iter().map(|p| &p.set).collect();
    ctx.report.check("partition", check::partition(g.n(), &sets).map(|_| String::new()));
    for (i, p) in b.parts.iter().enumerate() {
        if let Some(c) = p.certificate() {
            if let Err(e) = check::certificate(g, c) {
                ctx.report.check(&format!("part {i}"), Err(e));
            }
        }
    }
    let rep = validate_stage(b, g, bounds);
    ctx.report.check("stage", if rep.pass() { Ok(String::new()) } else { Err(rep.to_string()) });
}

pub fn partition(ctx: &mut Ctx, a: &PartitionArgs) -> Outcome {
    let g = ctx.graph()?;
    let eps = ctx.eps()?;
    let t = cotree_of(&g)?;
    match a.stage {
        Stage::Final => {
            let certs = rodl_partition(&t, &g, &eps)?;
            let cap = cograph::rational::floor_usize(&(int(480) / num_traits::pow(eps.clone(), 4)));
            ctx.report.text.extend(write_partition(&certs).lines().map(str::to_owned));
            ctx.report.output("parts", certs.len());
            ctx.report.output("cap", cap);
            ctx.report.output("partition", write_partition(&certs));
            let sets: Vec<&VertexSet> = certs.iter().map(|c| &c.set).collect();
            ctx.report.check("partition", check::partition(g.n(), &sets).map(|_| String::new()));
            let mut bad = None;
            for (i, c) in certs.iter().enumerate() {
                let deg = check::max_degree(&g, &c.set, c.side);
                if int(deg) > &eps * int(c.set.len()) {
                    bad = Some(format!("part {i}: max {} degree {deg} > eps*|X|", c.side));
                    break;
                }
                if let Err(e) = check::certificate(&g, c) {
                    bad = Some(format!("part {i}: {e}"));
                    break;
                }
            }
            ctx.report.check("restricted", bad.map_or(Ok(String::new()), Err));
            let (n, holds) = (certs.len(), certs.len() <= cap);
            let (name, outcome) = inequality("count", holds, format!("{n} parts <= {cap}"));
            ctx.report.check(&name, outcome);
        }
        Stage::Split => {
            let s = split(&t, &g, &eps)?;
            let rep = s.validate(&g, &eps, &g.vertices());
            ctx.report.check("split", if rep.pass() { Ok(String::new()) } else { Err(rep.to_string()) });
            let b = s.into_beribboning(&g, &eps);
            report_beribboning(ctx, &g, &b, &StageBounds::split(&eps));
        }
        Stage::Grow => {
            let k = a.k.unwrap_or_else(|| 2 * ceil(&eps.recip()));
            let b = growtree(&t, &g, &eps, k)?;
            report_beribboning(ctx, &g, &b, &StageBounds::growtree(&eps, k));
        }
        Stage::Pure => {
            let b = pureribbon(&t, &g, &eps)?;
            report_beribboning(ctx, &g, &b, &StageBounds::pureribbon(&eps));
        }
        Stage::Pretty => {
            let b = prettify(pureribbon(&t, &g, &eps)?, &t, &g)?;
            report_beribboning(ctx, &g, &b, &StageBounds::prettified(&eps));
        }
    }
    Ok(())
}

pub fn thin_thick(ctx: &mut Ctx) -> Outcome {
    let g = ctx.graph()?;
    let t = cotree_of(&g)?;
    let (x, y) = thin_thick_partition(&t, &g)?;
    ctx.report.line(format!("thin {} : {}", x.len(), members(&x)));
    ctx.report.line(format!("thick {} : {}", y.len(), members(&y)));
    ctx.report.output("thin", x.to_vec());
    ctx.report.output("thick", y.to_vec());
    ctx.report.check("partition", check::partition(g.n(), &[&x, &y]).map(|_| String::new()));
    for (name, set, side) in [("thin", &x, Side::Graph), ("thick", &y, Side::Complement)] {
        let largest = check::component_sizes(&g, set, side).into_iter().max().unwrap_or(0);
        let (name, outcome) = inequality(
            name,
            2 * largest <= set.len() + 1,
            format!("largest {side} component {largest} <= ({} + 1)/2", set.len()),
        );
        ctx.report.check(&name, outcome);
    }
    Ok(())
}

pub fn count(ctx: &mut Ctx) -> Outcome {
    let h = ctx.pattern()?;
    let g = ctx.graph()?;
    let p = Pattern::new(h.clone())?;
    let c = count_copies(&p, &g);
    ctx.report.line(format!("copies {c}"));
    ctx.report.output("copies", c.to_string());
    let budget = ctx.budget();
    if g.n() <= budget.max_vertices_count {
        let r = count_copies_reference(&h, &g, &budget)?;
        let (name, outcome) = inequality("reference", r == c, format!("reference count {r} = {c}"));
        ctx.report.check(&name, outcome);
    } else {
        log::info!("graph has {} vertices, reference count skipped", g.n());
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct ViralArgs {
    /// Exponent `d` of the threshold `ε^d`.
    #[arg(long, value_parser = rational_arg)]
    d: Rational,
}

pub fn viral(ctx: &mut Ctx, a: &ViralArgs) -> Outcome {
    let h = ctx.pattern()?;
    let g = ctx.graph()?;
    let eps = ctx.eps()?;
    let v = viral_check(&g, &Pattern::new(h)?, &eps, &a.d)?;
    ctx.report.line(format!("branch {}", v.branch.name()));
    ctx.report.line(format!("copies {}", v.copy_count));
    ctx.report.line(format!("threshold {}", v.threshold));
    ctx.report.line(format!("size-threshold {}", v.size_threshold));
    ctx.report.output("branch", v.branch.name());
    ctx.report.output("copies", v.copy_count.to_string());
    ctx.report.output("threshold", v.threshold.to_string());
    ctx.report.output("size_threshold", v.size_threshold.to_string());
    if let Some(w) = &v.witness {
        ctx.report.line(format!(
            "witness side {} density {} size {} : {}",
            w.side,
            format_rational(&w.density),
            w.set.len(),
            members(&w.set)
        ));
        ctx.report.output(
            "witness",
            json!({"side": w.side.tag(), "density": format_rational(&w.density), "set": w.set.to_vec()}),
        );
    }
    match v.branch {
        ViralBranch::ManyCopies => {
            let ok = v.threshold.is_met_by(&v.copy_count);
            let (name, outcome) = inequality("copies", ok, format!("{} >= {}", v.copy_count, v.threshold));
            ctx.report.check(&name, outcome);
        }
        ViralBranch::SparseOrDenseSet => {
            let w = v.witness.as_ref().ok_or("sparse_or_dense_set verdict without a witness".to_owned())?;
            let m = w.set.to_vec();
            let mut edges = 0usize;
            for (i, &x) in m.iter().enumerate() {
                for &y in &m[i + 1..] {
                    if g.has_edge(x, y) == (w.side == Side::Graph) {
                        edges += 1;
                    }
                }
            }
            let pairs = m.len() * m.len().saturating_sub(1) / 2;
            let ok = int(edges) <= &eps * int(pairs);
            let (name, outcome) = inequality(
                "density",
                ok,
                format!("{edges} {} edges <= eps * {pairs} pairs", w.side),
            );
            ctx.report.check(&name, outcome);
            let ok = v.size_threshold.is_met_by(&m.len().into());
            let (name, outcome) = inequality("size", ok, format!("{} >= {}", m.len(), v.size_threshold));
            ctx.report.check(&name, outcome);
        }
        ViralBranch::Undecided => {}
    }
    ctx.report.check("verdict", v.validate(&g).map(|_| String::new()).map_err(|e| e.to_string()));
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleOp {
    Maxset,
    Minpart,
    Count,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    op: OracleOp,
    /// Absolute degree bound for `maxset` instead of `ε|X|`.
    #[arg(long, value_parser = rational_arg)]
    bound: Option<Rational>,
}

pub fn oracle(ctx: &mut Ctx, a: &OracleArgs) -> Outcome {
    let budget = ctx.budget();
    match a.op {
        OracleOp::Maxset => {
            let g = ctx.graph()?;
            let eps = ctx.eps()?;
            let (v, w, side) = max_restricted_set(&g, &eps, a.bound.as_ref(), &budget)?;
            ctx.report.line(format!("value {v} witness side {side} : {}", members(&w)));
            ctx.report.output("value", v);
            ctx.report.output("witness", json!({"side": side.tag(), "set": w.to_vec()}));
            let cap = a.bound.clone().unwrap_or_else(|| &eps * int(w.len()));
            let deg = check::max_degree(&g, &w, side);
            let (name, outcome) =
                inequality("witness", int(deg) <= cap && w.len() == v, format!("max {side} degree {deg} <= {}", format_rational(&cap)));
            ctx.report.check(&name, outcome);
        }
        OracleOp::Minpart => {
            let g = ctx.graph()?;
            let eps = ctx.eps()?;
            let (v, parts) = min_restricted_partition(&g, &eps, &budget)?;
            let text: Vec<String> = parts.iter().map(members).collect();
            ctx.report.line(format!("value {v} witness {}", text.join(" | ")));
            ctx.report.output("value", v);
            ctx.report.output("witness", parts.iter().map(|p| p.to_vec()).collect::<Vec<_>>());
            let refs: Vec<&VertexSet> = parts.iter().collect();
            ctx.report.check("partition", check::partition(g.n(), &refs).map(|_| String::new()));
            let ok = parts.iter().all(|p| {
                let cap = &eps * int(p.len());
                [Side::Graph, Side::Complement].iter().any(|&s| int(check::max_degree(&g, p, s)) <= cap)
            });
            let (name, outcome) = inequality("restricted", ok && parts.len() == v, "every part eps-restricted".into());
            ctx.report.check(&name, outcome);
        }
        OracleOp::Count => {
            let h = ctx.pattern()?;
            let g = ctx.graph()?;
            let v = count_copies_reference(&h, &g, &budget)?;
            ctx.report.line(format!("value {v} witness -"));
            ctx.report.output("value", v.to_string());
            if let Ok(p) = Pattern::new(h) {
                let fast = count_copies(&p, &g);
                let (name, outcome) = inequality("fast-count", fast == v, format!("fast count {fast} = {v}"));
                ctx.report.check(&name, outcome);
            }
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Partition file, one `part` line per part.
    #[arg(long)]
    parts: PathBuf,
}

pub fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> Outcome {
    let g = ctx.graph()?;
    let eps = ctx.eps()?;
    let text = ctx.file("parts", &a.parts)?;
    let certs = parse_partition(&text, g.n()).map_err(|e| Failure::Run(format!("parts: {e}")))?;
    ctx.report.line(format!("parts {}", certs.len()));
    ctx.report.output("parts", certs.len());
    let sets: Vec<&VertexSet> = certs.iter().map(|c| &c.set).collect();
    ctx.report.check("partition", check::partition(g.n(), &sets).map(|_| String::new()));
    for (i, c) in certs.iter().enumerate() {
        let deg = check::max_degree(&g, &c.set, c.side);
        let cap = &eps * int(c.set.len());
        let mut problems = Vec::new();
        if int(deg) > c.degree_bound {
            problems.push(format!("max {} degree {deg} > stated bound {}", c.side, format_rational(&c.degree_bound)));
        }
        if int(deg) > cap {
            problems.push(format!("max {} degree {deg} > eps*|X| = {}", c.side, format_rational(&cap)));
        }
        if !problems.is_empty() {
            ctx.report.check(&format!("part {i}"), Err(problems.join("; ")));
        }
    }
    if ctx.report.pass() {
        ctx.report.check("restricted", Ok(format!("{} parts re-checked", certs.len())));
    }
    Ok(())
}
