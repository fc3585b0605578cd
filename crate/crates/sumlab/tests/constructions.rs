use rayon::prelude::*;
use sumlab::arith::divisors;
use sumlab::constructions::*;
use sumlab::sides::f_hat;
use sumlab::sumset::sumset;
use sumlab::{Group, Lambda, SumsetSpec, Terms};

#[test]
fn a_d_sizes_over_grid() {
    let bad: Vec<_> = (1..=40u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut bad = Vec::new();
            for &d in divisors(n).iter() {
                for m in 1..=n {
                    for h in 1..=5 {
                        let c = build_a_d_claims(n, m, d, h).unwrap();
                        // the restricted claim is examined separately below
                        if c.verify().iter().any(|o| !o.ok && o.claim.citation != "thm:uhattheorem") {
                            bad.push((n, m, d, h));
                        }
                    }
                }
            }
            bad
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

/// Grid points where `|h^A_d(n,m)|` differs from `f^_d(n,m,h)`.
pub fn restricted_a_d_mismatches(max_n: u64, max_h: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for &d in divisors(n).iter() {
            for m in 2..=n {
                let a = build_a_d(n, m, d).unwrap();
                for h in 1..m.min(max_h + 1) {
                    let got = sumset(&a, SumsetSpec::exact(Lambda::Restricted, h)).size() as u64;
                    if got != f_hat(n, m, h, d) {
                        out.push((n, m, d, h));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn restricted_a_d_against_f_hat() {
    // h^A and (m-h)^A are translates of each other's negatives, so every
    // disagreement must sit above m/2 and match the mirrored formula
    let bad = restricted_a_d_mismatches(40, 5);
    for &(n, m, d, h) in &bad {
        assert!(2 * h > m, "n={n} m={m} d={d} h={h}");
        let a = build_a_d(n, m, d).unwrap();
        let got = sumset(&a, SumsetSpec::exact(Lambda::Restricted, h)).size() as u64;
        assert_eq!(got, f_hat(n, m, m - h, d));
        assert!(got < f_hat(n, m, h, d));
    }
    assert_eq!(bad.len(), 29);
    assert!(bad.contains(&(6, 5, 3, 4)) && bad.contains(&(12, 7, 4, 5)));
}

#[test]
fn interval_formula_matches_scan() {
    for n in 2..=40u64 {
        for k in 2..=5.min(n) {
            for l in 1..k {
                let scan = interval_weak_sumfree_scan(n, k, l).unwrap();
                assert_eq!(interval_weak_sumfree_size(n, k, l).unwrap(), scan, "n={n} k={k} l={l}");
                assert!(kl_lower(n, k, l) <= scan);
            }
        }
    }
}

#[test]
fn named_sets_over_grid() {
    let mut built = 0;
    for n in 1..=60u64 {
        let mut specs = vec![
            ConstructionSpec::new(Kind::SelfridgeMinus2, &[("n", n as i64)]),
            ConstructionSpec::new(Kind::SelfridgeEven, &[("n", n as i64)]),
            ConstructionSpec::new(Kind::ErdosGriggs, &[("n", n as i64)]),
            ConstructionSpec::new(Kind::Diderrich, &[("n", n as i64)]),
            ConstructionSpec::new(Kind::ThreeIndependent, &[("n", n as i64)]),
        ];
        for t in 1..=6 {
            specs.push(ConstructionSpec::new(Kind::ZeroFreeInterval, &[("n", n as i64), ("t", t)]));
            specs.push(ConstructionSpec::new(Kind::Collins, &[("n", n as i64), ("h", t)]));
        }
        for k in 2..=6 {
            for l in 1..k {
                let p = [("n", n as i64), ("k", k), ("l", l)];
                specs.push(ConstructionSpec::new(Kind::Hallfors1, &p));
                specs.push(ConstructionSpec::new(Kind::IntervalSumFree, &p));
                for d in (2..=n as i64).step_by(2) {
                    specs.push(ConstructionSpec::new(Kind::Hallfors2, &[p[0], p[1], p[2], ("d", d)]));
                }
            }
        }
        for s in specs {
            // parameter combinations outside a builder's hypotheses are rejected
            if let Ok(c) = s.build() {
                built += 1;
                let fails: Vec<_> = c.verify().into_iter().filter(|o| !o.ok).collect();
                assert!(fails.is_empty(), "{s:?}: {fails:?}");
            }
        }
    }
    for r in 1..=4 {
        assert!(bui(r).unwrap().all_hold());
        for k in 2..=6u64 {
            if k.pow(r as u32) <= 1 << 12 {
                assert!(kemnitz(k, r).unwrap().all_hold(), "k={k} r={r}");
            }
        }
    }
    for f in [[2u64, 4], [3, 3], [2, 6], [4, 4], [3, 9]] {
        let g = Group::normalize(&f).unwrap();
        assert!(diderrich(&g).unwrap().all_hold(), "{g}");
    }
    for s in 1..=6 {
        assert!(perfect_spanning_pair(s, PairVariant::Consecutive).unwrap().all_hold());
        assert!(perfect_spanning_pair(s, PairVariant::OneAnd2s1).unwrap().all_hold());
    }
    assert!(built > 1000);
}

#[test]
fn erdos_griggs_sums_form_an_interval() {
    for n in 3..=60u64 {
        let c = erdos_griggs(n).unwrap();
        let k = two_sqrt(n) as i64;
        let (lo, hi) = if k % 2 == 1 { (-(k * k - 1) / 8, (k * k - 1) / 8) } else { (-(k * k - 2 * k) / 8, (k * k + 2 * k) / 8) };
        if k >= 3 && hi - lo + 1 < n as i64 {
            let want = sumlab::Subset::from_residues(&c.group, lo..=hi);
            assert_eq!(sumset(&c.set, SumsetSpec::new(Lambda::Restricted, Terms::AllN)), want, "n={n}");
        }
    }
}
