//! Parsing of ranges and subsets, and formatting of sets.

use sumlab::{Error, Group, GroupElement, Result, Subset};

fn bad(what: &'static str, token: &str) -> Error {
    Error::Parse { what, token: token.to_string() }
}

/// `5`, `1..30`, `1..=30` and comma-separated mixtures of those.
pub fn range(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("range", part));
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(bad("range", part));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err(bad("range", text));
    }
    Ok(out)
}

pub fn pair(text: &str) -> Result<(u64, u64)> {
    let (k, l) = text.split_once(',').ok_or_else(|| bad("pair k,l", text))?;
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("pair k,l", text));
    Ok((num(k)?, num(l)?))
}

/// Integers for cyclic groups, `(a,b)` tuples otherwise; braces optional.
pub fn subset(g: &Group, text: &str) -> Result<Subset> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    if body.contains('(') {
        let mut elems = Vec::new();
        for chunk in body.split(')') {
            let Some((_, inner)) = chunk.split_once('(') else {
                if chunk.trim_matches(|c: char| c == ',' || c == ';' || c.is_whitespace()).is_empty() {
                    continue;
                }
                return Err(bad("set element", chunk.trim()));
            };
            let coords = inner
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad("set element", inner)))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != g.rank() || coords.iter().zip(g.factors()).any(|(c, f)| c >= f) {
                return Err(bad("set element", &format!("({inner})")));
            }
            elems.push(GroupElement::new(coords));
        }
        return Subset::from_elements(g, &elems);
    }
    if g.rank() > 1 {
        return Err(bad("set (use (a,b,...) tuples for noncyclic groups)", text));
    }
    let xs = body
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| bad("set element", t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subset::from_residues(g, xs))
}

pub fn element(coords: &[u64]) -> String {
    match coords {
        [] => "0".to_string(),
        [x] => x.to_string(),
        _ => {
            let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
            format!("({})", parts.join(","))
        }
    }
}

pub fn coords_set(elems: &[Vec<u64>]) -> String {
    let parts: Vec<String> = elems.iter().map(|e| element(e)).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn set(a: &Subset) -> String {
    let elems: Vec<Vec<u64>> = a.elements().into_iter().map(|e| e.coords).collect();
    coords_set(&elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(range("3").unwrap(), vec![3]);
        assert_eq!(range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(range("1..=2,7").unwrap(), vec![1, 2, 7]);
        assert!(range("4..1").is_err());
        assert!(range("x").is_err());
    }

    #[test]
    fn sets() {
        let g: Group = "Z13".parse().unwrap();
        assert_eq!(set(&subset(&g, "{2, 3}").unwrap()), "{2,3}");
        assert_eq!(set(&subset(&g, "-1").unwrap()), "{12}");
        let h: Group = "Z2xZ4".parse().unwrap();
        assert_eq!(set(&subset(&h, "(1,0),(0,3)").unwrap()), "{(0,3),(1,0)}");
        assert!(subset(&h, "1,2").is_err());
        assert!(subset(&h, "(2,0)").is_err());
    }
}
