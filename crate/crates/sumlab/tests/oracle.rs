use sumlab::group::GroupElement;
use sumlab::oracle::*;
use sumlab::search::{Family, QuantityQuery, SearchConfig};
use sumlab::sumset::sumset;
use sumlab::{Group, Lambda, Subset, SumsetSpec, Terms};

fn cfg() -> SearchConfig {
    SearchConfig { budget: 300_000_000 }
}

#[test]
fn every_theorem_agrees_with_search_up_to_16() {
    let mut total = 0;
    for e in REGISTRY.iter().filter(|e| e.sweepable()) {
        let r = theorem_sweep(e.id, 16, &cfg()).unwrap();
        total += r.points.len();
        let bad: Vec<_> = r.points.iter().filter(|p| !p.is_confirmed()).take(3).collect();
        assert!(bad.is_empty(), "{}: {bad:?}", e.id);
    }
    assert!(total > 1000);
}

#[test]
fn zconj_h3_up_to_30() {
    let r = conjecture_check("conj-zconj", &Grid::new(1..=30).with_h([3]), &cfg()).unwrap();
    assert_eq!(r.points.len(), 30);
    assert_eq!(r.confirmed(), 30);
    let forced = r.points.iter().filter(|p| p.forced == Some(true)).count();
    assert!(forced > 0 && forced < 30);
}

#[test]
fn mu_02_up_to_20() {
    let r = conjecture_check("conj-mu-[0,2]", &Grid::new(1..=20), &cfg()).unwrap();
    assert_eq!(r.points.len(), 20);
    assert_eq!(r.confirmed(), 20);
}

#[test]
fn no_perfect_2_bases_of_size_4_to_8() {
    let r = conjecture_check("conj:no-perfect-bases", &Grid::new([]).with_h([2]).with_m(4..=8), &cfg()).unwrap();
    assert!(r.refuted() == 0 && r.skipped() == 0, "{:?}", r.points);
    // both readings are present
    assert!(r.points.iter().any(|p| p.params["restricted"] == 1));
    assert!(r.points.iter().any(|p| p.params["restricted"] == 0));
}

#[test]
fn perfect_restricted_basis_outside_cyclic_groups() {
    let g = Group::power(2, 4).unwrap();
    let rows = [[0, 0, 1, 1], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 0], [1, 0, 0, 1]];
    let idx: Vec<usize> = rows.iter().map(|r| g.index(&GroupElement::new(r.to_vec())).unwrap()).collect();
    let a = Subset::from_indices(&g, idx);
    let s = sumset(&a, SumsetSpec::new(Lambda::Restricted, Terms::UpTo(2)));
    assert_eq!(s.size(), 16);
}

#[test]
fn matzke_holds_for_s_at_least_2() {
    let r = conjecture_check("conj:Matzke-limited-conj", &Grid::new(1..=14).with_h([2, 3]), &cfg()).unwrap();
    assert_eq!(r.refuted(), 0);
    assert_eq!(r.skipped(), 0);
}

#[test]
fn matzke_at_s_1_disagrees_with_the_symmetric_set_count() {
    // {0,2,3,4} in Z_6 is symmetric and contains 0
    assert_eq!(u_pm_upto(6, 4, 1), 5);
    let r = conjecture_check("conj:Matzke-limited-conj", &Grid::new([6]).with_h([1]).with_m([4]), &cfg()).unwrap();
    assert_eq!(r.points.len(), 1);
    assert_eq!(r.points[0].observed, Some(4));
    assert!(r.points[0].is_refuted());
}

#[test]
fn dimension_conjecture_breaks_at_z17() {
    let r = conjecture_check("conj:dim-G-m", &Grid::new(1..=17), &cfg()).unwrap();
    let bad: Vec<_> = r.points.iter().filter(|p| p.is_refuted()).map(|p| (p.group.clone(), p.params["m"], p.observed)).collect();
    assert_eq!(bad, vec![("Z17".to_string(), 14, Some(4)), ("Z17".to_string(), 15, Some(4))]);
}

#[test]
fn small_conjectures_hold() {
    for (id, grid) in [
        ("conj:zfconj", Grid::new(1..=20)),
        ("conj:rhohatforh=2", Grid::new(3..=14)),
        ("conj:rhohatforh=3", Grid::new(4..=12)),
        ("conj:chi-pm-cyclic", Grid::new(1..=16).with_h([1, 2, 3])),
        ("conj:upper-for-|Sigma|", Grid::new(1..=12)),
        ("conj:zero-sum-free-simple-n-even", Grid::new(2..=24)),
        ("conj:GaoTha", Grid::new([]).with_h([2, 3, 4])),
        ("conj:inverse-tau-hat-pm-2-power", Grid::new([]).with_h([1, 2, 3, 4])),
    ] {
        let r = conjecture_check(id, &grid, &cfg()).unwrap();
        assert!(!r.points.is_empty(), "{id}");
        assert_eq!(r.confirmed(), r.points.len(), "{id}");
    }
}

#[test]
fn hypotheses_gate_applicability() {
    // Z_p formula must not fire on composite order
    let q = QuantityQuery::new(Family::Rho, SumsetSpec::exact(Lambda::Restricted, 2)).with_m(4);
    let ids: Vec<_> = known_values(&Group::cyclic(9).unwrap(), &q).into_iter().map(|k| k.citation_id).collect();
    assert!(!ids.iter().any(|i| i == "thm:Dias-Da-Silva-Hamidoune"));
    let ids: Vec<_> = known_values(&Group::cyclic(7).unwrap(), &q).into_iter().map(|k| k.citation_id).collect();
    assert!(ids.iter().any(|i| i == "thm:Dias-Da-Silva-Hamidoune"));
}

#[test]
fn known_values_agree_with_each_other() {
    for n in 1..=20 {
        for g in Group::all_of_order(n) {
            for h in 1..=4 {
                for m in 1..=n {
                    for lambda in [Lambda::N0, Lambda::Restricted] {
                        let q = QuantityQuery::new(Family::Rho, SumsetSpec::exact(lambda, h)).with_m(m);
                        known_value(&g, &q).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn annotations_and_conjectures_are_not_swept() {
    assert!(theorem_sweep("conj:zconj", 5, &cfg()).is_err());
    assert!(theorem_sweep("note:Qu-2014a", 5, &cfg()).is_err());
    assert!(entry("no-such-id").is_err());
}
