//! Values recorded in `fixtures/oracle_regressions.txt`.

mod common;

use cograph::generators::{counterex3, counterex_k, cycle};
use cograph::oracle::{min_restricted_partition, OracleBudget};
use cograph::rational::ratio;
use cograph::viral::{viral_check, Pattern, ViralBranch};

use common::*;

fn fixture(key: &str) -> usize {
    include_str!("fixtures/oracle_regressions.txt")
        .lines()
        .find_map(|l| l.strip_prefix(key)?.trim().strip_prefix('=')?.trim().parse().ok())
        .unwrap_or_else(|| panic!("fixture {key} missing"))
}

#[test]
fn counterex3_minimum_partition() {
    let g = counterex3(1).unwrap();
    let eps = ratio(1, 3);
    let (k, parts) = min_restricted_partition(&g, &eps, &OracleBudget::default()).unwrap();
    assert_eq!(k, fixture("minpart counterex3 1 eps 1/3"));
    assert!(is_partition(g.n(), &parts));
    assert!(parts.iter().all(|p| is_restricted(&g, &p.to_vec(), &eps)));
}

#[test]
fn counterex_k_minimum_partition() {
    let eps = ratio(2, 5);
    let c = counterex_k(&eps, 1).unwrap();
    let (k, _) = min_restricted_partition(&c.graph, &eps, &OracleBudget::default()).unwrap();
    assert_eq!(k, fixture("minpart counterex_k 2/5 1 eps 2/5"));
    // the whole vertex set has complement degree 6 ≤ (2/5)·11
    assert!(is_restricted(&c.graph, &(0..11).collect::<Vec<_>>(), &eps));
}

#[test]
fn c5_viral_witness() {
    let c5 = cycle(5).unwrap();
    let v = viral_check(&c5, &Pattern::new(c5.clone()).unwrap(), &ratio(2, 5), &ratio(1, 1)).unwrap();
    assert_eq!(v.branch, ViralBranch::SparseOrDenseSet);
    let w = v.witness.as_ref().unwrap();
    assert_eq!(w.set.len(), fixture("viral c5 c5 eps 2/5 d 1 witness size"));
    assert!(v.validate(&c5).is_ok());
}
