//! Named tables: each one is a sweep that rebuilds a published table, paired
//! with a committed CSV transcription of it.

use rayon::prelude::*;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::report::{first_mismatch, Cell, Mismatch, Table};
use crate::search::{evaluate, max_sum_free, sidon_set, Family, QuantityQuery, SearchConfig};
use crate::sides::{u, u_hat, v};
use crate::sumset::{Lambda, SumsetSpec, Terms};

type Build = fn(&[u64], &SearchConfig) -> Result<Vec<Vec<Cell>>>;

pub struct TableDef {
    pub name: &'static str,
    pub title: &'static str,
    pub columns: &'static [&'static str],
    /// What `--n` ranges over, if the table takes it.
    pub key: Option<&'static str>,
    default_keys: fn() -> Vec<u64>,
    build: Build,
    fixture: &'static str,
}

impl TableDef {
    pub fn default_keys(&self) -> Vec<u64> {
        (self.default_keys)()
    }

    pub fn fixture_file(&self) -> String {
        format!("fixtures/{}.csv", self.name)
    }

    pub fn fixture(&self) -> Result<Table> {
        Table::from_csv(self.name, self.fixture)
    }

    /// Rebuilds the table; `keys = None` uses the fixture's range.
    pub fn build(&self, keys: Option<&[u64]>, cfg: &SearchConfig) -> Result<Table> {
        let keys = match (keys, self.key) {
            (None, _) => self.default_keys(),
            (Some(k), Some(_)) => k.to_vec(),
            (Some(_), None) => return Err(Error::InvalidParameter(format!("table {} takes no --n range", self.name))),
        };
        let mut t = Table::new(self.columns.iter().copied());
        t.provenance = self.fixture()?.provenance;
        for row in (self.build)(&keys, cfg)? {
            t.push(row);
        }
        Ok(t)
    }

    /// Rebuilds over the default range and compares with the fixture.
    pub fn check(&self, cfg: &SearchConfig) -> Result<Option<Mismatch>> {
        Ok(first_mismatch(&self.fixture()?, &self.build(None, cfg)?))
    }
}

pub fn table(name: &str) -> Result<&'static TableDef> {
    TABLES
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Parse { what: "table name", token: name.to_string() })
}

fn cyclic(n: u64) -> Result<Group> {
    Group::cyclic(n)
}

fn value(g: &Group, q: QuantityQuery, cfg: &SearchConfig) -> Result<Option<u64>> {
    Ok(evaluate(g, &q, cfg)?.value)
}

fn par_rows<F>(keys: &[u64], f: F) -> Result<Vec<Vec<Cell>>>
where
    F: Fn(u64) -> Result<Vec<Vec<Cell>>> + Sync,
{
    let parts: Vec<Result<Vec<Vec<Cell>>>> = keys.par_iter().map(|&k| f(k)).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// builders

fn v_rows(keys: &[u64], _: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    const COLS: [(u64, u64); 8] = [(3, 1), (3, 3), (4, 1), (4, 2), (4, 4), (5, 1), (5, 3), (5, 5)];
    Ok(keys
        .iter()
        .map(|&n| std::iter::once(n.into()).chain(COLS.iter().map(|&(h, g)| v(n, h, g).into())).collect())
        .collect())
}

fn u15_rows(keys: &[u64], _: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    Ok(keys.iter().map(|&h| std::iter::once(h.into()).chain((1..=15).map(|m| u(15, m, h).into())).collect()).collect())
}

fn uhat15_rows(keys: &[u64], _: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    Ok(keys
        .iter()
        .map(|&h| {
            let cells = (1..=15).map(|m| if m > h { u_hat(15, m, h).into() } else { Cell::Null });
            std::iter::once(h.into()).chain(cells).collect()
        })
        .collect())
}

fn nu_bound(n: u64, m: u64, h: u64) -> u64 {
    binomial(m + h - 1, h).min(n as u128) as u64
}

/// `(m, h, bound, value)` with `nu(Z_n,m,h)` below the trivial bound, by h then m.
fn nu_exceptions(n: u64, cfg: &SearchConfig) -> Result<Vec<(u64, u64, u64, u64)>> {
    let g = cyclic(n)?;
    let pts: Vec<(u64, u64)> = (1..=n).flat_map(|h| (2..=n).map(move |m| (m, h))).collect();
    let found: Vec<Result<Option<(u64, u64, u64, u64)>>> = pts
        .par_iter()
        .map(|&(m, h)| {
            let bound = nu_bound(n, m, h);
            let q = QuantityQuery::new(Family::Nu, SumsetSpec::exact(Lambda::N0, h)).with_m(m);
            let val = value(&g, q, cfg)?.unwrap_or(0);
            Ok((val < bound).then_some((m, h, bound, val)))
        })
        .collect();
    found.into_iter().filter_map(|r| r.transpose()).collect()
}

fn nu_count_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |n| Ok(vec![vec![n.into(), (nu_exceptions(n, cfg)?.len() as u64).into()]]))
}

fn nu_exception_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |n| {
        Ok(nu_exceptions(n, cfg)?
            .into_iter()
            .map(|(m, h, b, val)| vec![n.into(), m.into(), h.into(), b.into(), val.into()])
            .collect())
    })
}

fn rhohat_exception_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |n| {
        let g = cyclic(n)?;
        let pts: Vec<(u64, u64)> = (2..=n).flat_map(|m| (1..=m / 2).map(move |h| (m, h))).collect();
        let found: Vec<Result<Option<Vec<Cell>>>> = pts
            .par_iter()
            .map(|&(m, h)| {
                let q = QuantityQuery::new(Family::Rho, SumsetSpec::exact(Lambda::Restricted, h)).with_m(m);
                let val = value(&g, q, cfg)?.unwrap_or(0);
                let bound = u_hat(n, m, h);
                Ok((val < bound).then(|| vec![n.into(), m.into(), h.into(), bound.into(), val.into()]))
            })
            .collect();
        found.into_iter().filter_map(|r| r.transpose()).collect()
    })
}

fn phi_list(lambda: Lambda) -> impl Fn(&[u64], &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    move |keys, cfg| {
        par_rows(keys, |n| {
            let q = QuantityQuery::new(Family::Phi, SumsetSpec::new(lambda, Terms::UpTo(2)));
            Ok(vec![vec![n.into(), Cell::opt(value(&cyclic(n)?, q, cfg)?)]])
        })
    }
}

fn phi_plain_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    phi_list(Lambda::N0)(keys, cfg)
}

fn phi_pm_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    phi_list(Lambda::Z)(keys, cfg)
}

fn phi_hat_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    phi_list(Lambda::Restricted)(keys, cfg)
}

fn phi10_rows(_: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    let g = cyclic(10)?;
    [("phi", Lambda::N0), ("phi-pm", Lambda::Z)]
        .into_iter()
        .map(|(label, lambda)| {
            let mut row = vec![Cell::from(label)];
            for h in 1..=9 {
                let q = QuantityQuery::new(Family::Phi, SumsetSpec::exact(lambda, h));
                row.push(Cell::opt(value(&g, q, cfg)?));
            }
            Ok(row)
        })
        .collect()
}

/// Least n with a Sidon-type m-set in `Z_n`.
fn least_sidon_order(m: u64, lambda: Lambda, cfg: &SearchConfig) -> Result<u64> {
    let spec = SumsetSpec::exact(lambda, 2);
    let mut n = m.max(1);
    loop {
        if sidon_set(&cyclic(n)?, m, spec, cfg)?.is_some() {
            return Ok(n);
        }
        n += 1;
    }
}

fn sidon_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |m| Ok(vec![vec![m.into(), least_sidon_order(m, Lambda::N0, cfg)?.into()]]))
}

fn weak_sidon_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |m| Ok(vec![vec![m.into(), least_sidon_order(m, Lambda::Restricted, cfg)?.into()]]))
}

fn chi_hat15_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    let g = cyclic(15)?;
    par_rows(keys, |h| {
        let q = QuantityQuery::new(Family::Chi, SumsetSpec::exact(Lambda::Restricted, h));
        Ok(vec![vec![h.into(), Cell::opt(value(&g, q, cfg)?)]])
    })
}

fn hallfors_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    const PAIRS: [(u64, u64); 5] = [(3, 1), (4, 1), (3, 2), (4, 2), (4, 3)];
    par_rows(keys, |n| {
        let g = cyclic(n)?;
        let mut row = vec![Cell::Int(n)];
        for (k, l) in PAIRS {
            row.push(Cell::opt(max_sum_free(&g, k, l, true, cfg)?.value));
        }
        Ok(vec![row])
    })
}

fn tau_hat_3r_rows(keys: &[u64], cfg: &SearchConfig) -> Result<Vec<Vec<Cell>>> {
    par_rows(keys, |r| {
        let g = Group::power(3, r as usize)?;
        let q = QuantityQuery::new(Family::Tau, SumsetSpec::exact(Lambda::Restricted, 3));
        Ok(vec![vec![r.into(), Cell::opt(value(&g, q, cfg)?)]])
    })
}

// ---------------------------------------------------------------------------
// registry

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!("../fixtures/", $name, ".csv"))
    };
}

pub static TABLES: &[TableDef] = &[
    TableDef {
        name: "v-table",
        title: "v_g(n,h) for the eight (h,g) columns",
        columns: &["n", "v1(n,3)", "v3(n,3)", "v1(n,4)", "v2(n,4)", "v4(n,4)", "v1(n,5)", "v3(n,5)", "v5(n,5)"],
        key: Some("n"),
        default_keys: || (2..=40).collect(),
        build: v_rows,
        fixture: fixture!("v-table"),
    },
    TableDef {
        name: "u-15",
        title: "u(15,m,h) for m = 1..15",
        columns: &["h", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15"],
        key: Some("h"),
        default_keys: || (2..=5).collect(),
        build: u15_rows,
        fixture: fixture!("u-15"),
    },
    TableDef {
        name: "uhat-15",
        title: "u^(15,m,h) for h < m <= 15",
        columns: &["h", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15"],
        key: Some("h"),
        default_keys: || (2..=5).collect(),
        build: uhat15_rows,
        fixture: fixture!("uhat-15"),
    },
    TableDef {
        name: "nu-exception-counts",
        title: "number of (m,h) with nu(Z_n,m,h) < min{n, C(m+h-1,h)}",
        columns: &["n", "exceptions"],
        key: Some("n"),
        default_keys: || (2..=20).collect(),
        build: nu_count_rows,
        fixture: fixture!("nu-exception-counts"),
    },
    TableDef {
        name: "nu-exceptions",
        title: "the (m,h) with nu(Z_n,m,h) below the trivial bound",
        columns: &["n", "m", "h", "bound", "value"],
        key: Some("n"),
        default_keys: || vec![20],
        build: nu_exception_rows,
        fixture: fixture!("nu-exceptions"),
    },
    TableDef {
        name: "rhohat-exceptions",
        title: "(n,m,h) with h <= m/2 and rho^(Z_n,m,h) < u^(n,m,h)",
        columns: &["n", "m", "h", "bound", "value"],
        key: Some("n"),
        default_keys: || (1..=20).collect(),
        build: rhohat_exception_rows,
        fixture: fixture!("rhohat-exceptions"),
    },
    TableDef {
        name: "phi-z10",
        title: "phi(Z_10,h) and phi_pm(Z_10,h) for h = 1..9",
        columns: &["quantity", "h=1", "h=2", "h=3", "h=4", "h=5", "h=6", "h=7", "h=8", "h=9"],
        key: None,
        default_keys: Vec::new,
        build: phi10_rows,
        fixture: fixture!("phi-z10"),
    },
    TableDef {
        name: "phi-cyclic-upto2",
        title: "phi(Z_n,[0,2])",
        columns: &["n", "value"],
        key: Some("n"),
        default_keys: || (1..=35).collect(),
        build: phi_plain_rows,
        fixture: fixture!("phi-cyclic-upto2"),
    },
    TableDef {
        name: "phi-pm-cyclic-upto2",
        title: "phi_pm(Z_n,[0,2])",
        columns: &["n", "value"],
        key: Some("n"),
        // n = 50 is absent from the published list
        default_keys: || (1..=49).chain([51]).collect(),
        build: phi_pm_rows,
        fixture: fixture!("phi-pm-cyclic-upto2"),
    },
    TableDef {
        name: "phi-hat-cyclic-upto2",
        title: "phi^(Z_n,[0,2])",
        columns: &["n", "value"],
        key: Some("n"),
        default_keys: || (1..=37).collect(),
        build: phi_hat_rows,
        fixture: fixture!("phi-hat-cyclic-upto2"),
    },
    TableDef {
        name: "sidon-f",
        title: "f(m,2): least n such that Z_n has a Sidon set of size m",
        columns: &["m", "value"],
        key: Some("m"),
        default_keys: || (1..=6).collect(),
        build: sidon_rows,
        fixture: fixture!("sidon-f"),
    },
    TableDef {
        name: "sidon-f-hat",
        title: "f^(m,2): least n such that Z_n has a weak Sidon set of size m",
        columns: &["m", "value"],
        key: Some("m"),
        default_keys: || (2..=7).collect(),
        build: weak_sidon_rows,
        fixture: fixture!("sidon-f-hat"),
    },
    TableDef {
        name: "chi-hat-z15",
        title: "restricted h-critical numbers of Z_15",
        columns: &["h", "value"],
        key: Some("h"),
        default_keys: || (1..=14).collect(),
        build: chi_hat15_rows,
        fixture: fixture!("chi-hat-z15"),
    },
    TableDef {
        name: "hallfors",
        title: "mu^(Z_n,{k,l}) for 1 <= l < k <= 4, (k,l) != (2,1)",
        columns: &["n", "mu^(3,1)", "mu^(4,1)", "mu^(3,2)", "mu^(4,2)", "mu^(4,3)"],
        key: Some("n"),
        default_keys: || (5..=20).collect(),
        build: hallfors_rows,
        fixture: fixture!("hallfors"),
    },
    TableDef {
        name: "tau-hat-z3r",
        title: "tau^(Z_3^r,3)",
        columns: &["r", "value"],
        key: Some("r"),
        default_keys: || (1..=3).collect(),
        build: tau_hat_3r_rows,
        fixture: fixture!("tau-hat-z3r"),
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_with_matching_headers() {
        for t in TABLES {
            let f = t.fixture().unwrap();
            assert_eq!(f.columns, t.columns, "{}", t.name);
            assert!(!f.provenance.is_empty(), "{}", t.name);
            assert!(!f.rows.is_empty(), "{}", t.name);
        }
    }

    #[test]
    fn cheap_tables_match() {
        let cfg = SearchConfig::default();
        for name in ["v-table", "u-15", "chi-hat-z15", "tau-hat-z3r", "phi-z10"] {
            let t = table(name).unwrap();
            assert_eq!(t.check(&cfg).unwrap(), None, "{name}");
        }
    }

    #[test]
    fn keyless_tables_reject_ranges() {
        assert!(table("phi-z10").unwrap().build(Some(&[3]), &SearchConfig::default()).is_err());
        assert!(table("nope").is_err());
    }
}
