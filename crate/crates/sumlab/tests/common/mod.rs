//! Property checks shared by the property suite and the acceptance report.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use sumlab::counting::{layer_size, LayerSpec};
use sumlab::search::{evaluate, Family, QuantityQuery, SearchConfig};
use sumlab::sumset::sumset;
use sumlab::{Group, Lambda, Subset, SumsetSpec, Terms};

pub const CASES: u32 = 1000;

const GROUPS: &[&str] = &[
    "Z1", "Z2", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z9", "Z10", "Z12", "Z2xZ4", "Z3^2", "Z13", "Z15", "Z2^4", "Z16",
    "Z2xZ8", "Z18", "Z20", "Z2xZ10", "Z21", "Z24", "Z2xZ12", "Z3^3", "Z30",
];

const SMALL: &[&str] = &["Z3", "Z4", "Z5", "Z6", "Z7", "Z2xZ2", "Z8", "Z2xZ4", "Z9", "Z3^2", "Z10", "Z11", "Z12", "Z2xZ6"];

/// Nonempty subsets of groups of order at most 30.
pub fn set() -> impl Strategy<Value = Subset> {
    (0..GROUPS.len(), any::<u64>())
        .prop_map(|(i, mask)| {
            let g: Group = GROUPS[i].parse().unwrap();
            Subset::from_indices(&g, (0..g.order()).filter(|&j| mask >> j & 1 == 1))
        })
        .prop_filter("nonempty", |a| !a.is_empty())
}

fn size(a: &Subset, lambda: Lambda, terms: Terms) -> usize {
    sumset(a, SumsetSpec::new(lambda, terms)).size()
}

pub fn shift_invariance((a, h, shift): (Subset, u64, usize)) -> Result<(), TestCaseError> {
    let t = a.translate(shift % a.group().order());
    for lambda in [Lambda::N0, Lambda::Restricted] {
        prop_assert_eq!(size(&a, lambda, Terms::Exact(h)), size(&t, lambda, Terms::Exact(h)));
    }
    Ok(())
}

pub fn up_to_s((a, s): (Subset, u64)) -> Result<(), TestCaseError> {
    let a0 = a.union(&Subset::from_indices(a.group(), [0]));
    for lambda in [Lambda::N0, Lambda::Z] {
        prop_assert_eq!(sumset(&a, SumsetSpec::new(lambda, Terms::UpTo(s))), sumset(&a0, SumsetSpec::exact(lambda, s)));
    }
    Ok(())
}

/// `h(A u -A)` is the union of the signed layers `(h-2k)A`.
pub fn signed_decomposition((a, h): (Subset, u64)) -> Result<(), TestCaseError> {
    let sym = a.union(&a.negated());
    let mut layers = Subset::empty(a.group());
    for k in (h % 2..=h).step_by(2) {
        layers = layers.union(&sumset(&a, SumsetSpec::exact(Lambda::Z, k)));
    }
    prop_assert_eq!(sumset(&sym, SumsetSpec::exact(Lambda::N0, h)), layers);
    Ok(())
}

pub fn symmetric_set((a, h): (Subset, u64)) -> Result<(), TestCaseError> {
    let sym = a.union(&a.negated());
    prop_assert_eq!(sumset(&sym, SumsetSpec::exact(Lambda::Z, h)), sumset(&sym, SumsetSpec::exact(Lambda::N0, h)));
    Ok(())
}

pub fn palindromy((a, pick): (Subset, u64)) -> Result<(), TestCaseError> {
    let m = a.size() as u64;
    let h = pick % (m + 1);
    prop_assert_eq!(size(&a, Lambda::Restricted, Terms::Exact(h)), size(&a, Lambda::Restricted, Terms::Exact(m - h)));
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Case {
    pub group: Group,
    pub query: QuantityQuery,
}

/// Random small queries over all seven families.
pub fn case() -> impl Strategy<Value = Case> {
    (0..SMALL.len(), 0usize..7, 0usize..4, 1u64..4, 1u64..6, any::<bool>()).prop_map(|(gi, fam, li, h, m, flag)| {
        let group: Group = SMALL[gi].parse().unwrap();
        let lambda = Lambda::ALL[li];
        let m = m.min(group.order() as u64);
        let query = match fam {
            0 => QuantityQuery::new(Family::Nu, SumsetSpec::exact(lambda, h)).with_m(m),
            1 => QuantityQuery::new(Family::Rho, SumsetSpec::exact(lambda, h)).with_m(m),
            2 => QuantityQuery::new(Family::Phi, SumsetSpec::new(lambda, if flag { Terms::UpTo(h) } else { Terms::Exact(h) })),
            3 => QuantityQuery::new(Family::Sigma, SumsetSpec::exact(lambda, h.max(2))),
            4 => QuantityQuery::new(Family::Tau, SumsetSpec::new(lambda, if flag { Terms::Range1(h) } else { Terms::Exact(h) })),
            5 => {
                let (k, l) = (h + 1, 1 + m % h);
                let lambda = if flag { Lambda::Restricted } else { Lambda::N0 };
                QuantityQuery::new(Family::Mu, SumsetSpec::exact(lambda, k)).with_pair(k, l)
            }
            _ => QuantityQuery::new(Family::Chi, SumsetSpec::exact(lambda, h)).exclude_zero(flag),
        };
        Case { group, query }
    })
}

/// Searches, then checks the witness against the sumset engine.
pub fn witness_reverifies(c: Case) -> Result<(), TestCaseError> {
    let (g, q) = (&c.group, c.query);
    let r = evaluate(g, &q, &SearchConfig::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(r.exhaustive);
    let (Some(value), Some(w)) = (r.value, r.witness_subset(g)) else {
        return Ok(());
    };
    let hs = |a: &Subset| sumset(a, q.spec);
    match q.family {
        Family::Nu | Family::Rho => {
            prop_assert_eq!(w.size() as u64, q.m.unwrap());
            prop_assert_eq!(hs(&w).size() as u64, value);
        }
        Family::Phi => {
            prop_assert_eq!(w.size() as u64, value);
            prop_assert!(hs(&w).is_full());
        }
        Family::Sigma => {
            prop_assert_eq!(w.size() as u64, value);
            let want = layer_size(LayerSpec { lambda: q.spec.lambda, m: value, terms: q.spec.terms }).unwrap();
            prop_assert_eq!(hs(&w).size() as u128, want);
        }
        Family::Tau => {
            prop_assert_eq!(w.size() as u64, value);
            prop_assert!(!hs(&w).contains(0));
        }
        Family::Mu => {
            let (k, l) = q.pair.unwrap();
            prop_assert_eq!(w.size() as u64, value);
            let ka = sumset(&w, SumsetSpec::exact(q.spec.lambda, k));
            let la = sumset(&w, SumsetSpec::exact(q.spec.lambda, l));
            prop_assert!(ka.is_disjoint(&la));
        }
        Family::Chi => {
            prop_assert_eq!(w.size() as u64 + 1, value);
            prop_assert!(!hs(&w).is_full());
            if q.exclude_zero {
                prop_assert!(!w.contains(0));
            }
        }
    }
    Ok(())
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every suite under a fresh runner, for reporting.
pub fn all_suites() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("shift invariance", run((set(), 0u64..5, any::<usize>()), shift_invariance)),
        ("[0,s]A = s(A u {0})", run((set(), 0u64..5), up_to_s)),
        ("signed decomposition", run((set(), 0u64..5), signed_decomposition)),
        ("symmetric sets", run((set(), 0u64..5), symmetric_set)),
        ("restricted palindromy", run((set(), any::<u64>()), palindromy)),
        ("witness re-verification", run(case(), witness_reverifies)),
    ]
}
