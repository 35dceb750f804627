//! Group spec grammar: `Cn`, `Dn` (order 2n), `S3`, `A4`, `Q8`, `F21`,
//! `perm[(1 2 3), (1 2)]`, and products joined by `x` or `×`.

use super::FiniteGroup;
use crate::{Error, Result};

fn parse_err(detail: impl Into<String>) -> Error {
    Error::Parse { what: "group", detail: detail.into() }
}

/// Splits on `sep` outside brackets and parentheses.
fn split_top_level(s: &str, is_sep: impl Fn(char) -> bool) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && is_sep(c) {
            parts.push(String::new());
        } else {
            parts.last_mut().expect("nonempty").push(c);
        }
    }
    parts
}

/// Parses cycle notation on points `1..=degree`, e.g. `(1 2 3)(4 5)`.
fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| parse_err(format!("expected '(' in {s:?}")))?;
        let end = body.find(')').ok_or_else(|| parse_err(format!("unclosed cycle in {s:?}")))?;
        let points = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&p| p >= 1).ok_or_else(|| parse_err(format!("bad point {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(points);
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

fn permutation_group(name: &str, gens: &[&str]) -> Result<FiniteGroup> {
    let parsed = gens.iter().map(|g| parse_cycles(g)).collect::<Result<Vec<_>>>()?;
    let degree = parsed.iter().flatten().flatten().copied().max().unwrap_or(1);
    let mut perms = Vec::new();
    for cycles in &parsed {
        let mut p: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if std::mem::replace(&mut moved[a - 1], true) {
                    return Err(parse_err(format!("point {a} repeated in a generator")));
                }
                p[a - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        perms.push(p);
    }
    FiniteGroup::from_permutations(name, degree, &perms)
}

fn parse_factor(s: &str) -> Result<FiniteGroup> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("perm[").and_then(|b| b.strip_suffix(']')) {
        let gens = split_top_level(body, |c| c == ',');
        let gens: Vec<&str> = gens.iter().map(|g| g.trim()).filter(|g| !g.is_empty()).collect();
        return permutation_group(s, &gens);
    }
    let number = |rest: &str| rest.parse::<usize>().ok().filter(|&n| (1..=super::MAX_ORDER).contains(&n));
    match s {
        "S3" => return Ok(FiniteGroup::dihedral(3).with_name("S3")),
        "A4" => return permutation_group("A4", &["(1 2 3)", "(1 2)(3 4)"]),
        "Q8" => return permutation_group("Q8", &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
        "F21" => return permutation_group("F21", &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        _ => {}
    }
    if let Some(n) = s.strip_prefix('C').and_then(number) {
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = s.strip_prefix('D').and_then(number) {
        if 2 * n <= super::MAX_ORDER {
            return Ok(FiniteGroup::dihedral(n));
        }
    }
    Err(parse_err(format!("unknown group {s:?}")))
}

/// Parses a group spec.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let factors = split_top_level(spec.trim(), |c| c == 'x' || c == '×');
    if factors.iter().any(|f| f.trim().is_empty()) {
        return Err(parse_err(format!("empty factor in {spec:?}")));
    }
    let mut groups = factors.iter().map(|f| parse_factor(f)).collect::<Result<Vec<_>>>()?;
    let total: usize = groups.iter().map(FiniteGroup::order).product();
    if total > super::MAX_ORDER {
        return Err(Error::InvalidGroup(format!("{spec}: order {total} exceeds {}", super::MAX_ORDER)));
    }
    let first = groups.remove(0);
    Ok(groups.iter().fold(first, |acc, g| FiniteGroup::direct_product(&acc, g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_group("C2").unwrap().order(), 2);
        let g = parse_group("C3xC2").unwrap();
        assert_eq!((g.order(), g.is_abelian(), g.name()), (6, true, "C3xC2"));
        assert_eq!(parse_group("C3×C2").unwrap().order(), 6);
        let d5 = parse_group("perm[(1 2 3 4 5), (2 5)(3 4)]").unwrap();
        assert_eq!(d5.order(), 10);
        assert!(!d5.is_abelian());
        assert_eq!(parse_group("A4").unwrap().order(), 12);
        assert_eq!(parse_group("Q8").unwrap().order(), 8);
        assert_eq!(parse_group("F21").unwrap().order(), 21);
    }

    #[test]
    fn errors() {
        for bad in ["", "C", "Cx", "X7", "perm[(1 2)(2 3)]", "perm[(1 2]", "C0"] {
            assert!(parse_group(bad).is_err(), "{bad}");
        }
    }
}
