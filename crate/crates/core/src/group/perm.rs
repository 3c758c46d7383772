//! Permutations in disjoint-cycle notation and permutation-group closure.
//!
//! Products compose left to right: in `a * b` the permutation `a` is applied
//! first, so `x^(ab) = (x^a)^b`.

use std::collections::HashMap;
use std::fmt;

use super::{FiniteGroup, GroupError};

pub const DEFAULT_ORDER_CAP: usize = 10_080;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles with points written 1-based, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

/// Parses a product of disjoint cycles such as `"(1 2)(3 4 5)"` on points
/// `1..=degree`. `"()"` and the empty string denote the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation, GroupError> {
    let malformed = |why: &str| GroupError::MalformedCycle(format!("{text:?}: {why}"));
    let mut images: Vec<u16> = (0..degree as u16).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| malformed("expected '('"))?;
        let close = body.find(')').ok_or_else(|| malformed("unclosed cycle"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(malformed("nested '('"));
        }
        let mut points = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let point: usize = tok.parse().map_err(|_| malformed("non-numeric point"))?;
            if point == 0 {
                return Err(malformed("points are numbered from 1"));
            }
            if point > degree {
                return Err(GroupError::DegreeExceeded { point, degree });
            }
            if used[point - 1] {
                return Err(malformed("point repeated; cycles must be disjoint"));
            }
            used[point - 1] = true;
            points.push(point - 1);
        }
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()] as u16;
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(Permutation(images))
}

/// Splits `"(1 2),(1 2 3)"` into generator strings at top-level commas.
fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

/// Parses `"perm:<degree>:<cycles>[,<cycles>...]"`.
pub fn parse_perm_spec(spec: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let parse_err = |reason: &str| GroupError::Parse {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let rest = spec
        .strip_prefix("perm:")
        .ok_or_else(|| parse_err("expected prefix perm:"))?;
    let (degree, gens) = rest
        .split_once(':')
        .ok_or_else(|| parse_err("expected perm:<degree>:<generators>"))?;
    let degree: usize = degree
        .trim()
        .parse()
        .map_err(|_| parse_err("degree is not a number"))?;
    let gens = split_generators(gens);
    FiniteGroup::from_generators(degree, &gens, cap)
}

impl FiniteGroup {
    /// Closes a set of permutations under multiplication.
    ///
    /// Generators are sorted and deduplicated first; elements are numbered in
    /// breadth-first discovery order starting from the identity, so the
    /// numbering depends only on the generated set, not on the order the
    /// generators were listed in.
    pub fn from_generators(degree: usize, generators: &[&str], cap: usize) -> Result<Self, GroupError> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(GroupError::MalformedCycle(format!("unsupported degree {degree}")));
        }
        let mut gens = generators
            .iter()
            .map(|g| parse_cycles(degree, g))
            .collect::<Result<Vec<_>, _>>()?;
        gens.retain(|g| !g.is_identity());
        gens.sort();
        gens.dedup();
        let (elements, _) = close_permutations(degree, &gens, cap)?;
        Ok(Self::from_permutations(&elements))
    }

    /// Builds the multiplication table of an explicit list of permutations
    /// that is already closed, with the identity first.
    pub(crate) fn from_permutations(elements: &[Permutation]) -> Self {
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let names = elements.iter().map(format_cycles).collect();
        FiniteGroup::from_fn(elements.len(), names, |a, b| index[&elements[a].then(&elements[b])])
    }
}

fn close_permutations(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>), GroupError> {
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for g in gens {
            let next = current.then(g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }
    Ok((elements, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: enumerate every permutation of `degree` points and
    /// keep the even ones.
    fn even_permutation_count(degree: usize) -> usize {
        fn rec(prefix: &mut Vec<usize>, degree: usize, count: &mut usize) {
            if prefix.len() == degree {
                let inversions = (0..degree)
                    .flat_map(|i| (i + 1..degree).map(move |j| (i, j)))
                    .filter(|&(i, j)| prefix[i] > prefix[j])
                    .count();
                if inversions % 2 == 0 {
                    *count += 1;
                }
                return;
            }
            for x in 0..degree {
                if !prefix.contains(&x) {
                    prefix.push(x);
                    rec(prefix, degree, count);
                    prefix.pop();
                }
            }
        }
        let mut count = 0;
        rec(&mut Vec::new(), degree, &mut count);
        count
    }

    #[test]
    fn symmetric_three() {
        let g = FiniteGroup::from_generators(3, &["(1 2)", "(1 2 3)"], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(0), "()");
    }

    #[test]
    fn alternating_four_and_five_match_enumeration() {
        let a4 = FiniteGroup::from_generators(4, &["(1 2 3)", "(1 2)(3 4)"], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a4.order(), even_permutation_count(4));
        assert_eq!(a4.order(), 12);
        let a5 = FiniteGroup::from_generators(5, &["(1 2 3 4 5)", "(1 2 3)"], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a5.order(), even_permutation_count(5));
        assert_eq!(a5.order(), 60);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = FiniteGroup::from_generators(4, &["(1 2 3 4)", "(1 2)"], DEFAULT_ORDER_CAP).unwrap();
        let b = FiniteGroup::from_generators(4, &["(1 2)", "(1 2 3 4)"], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), 24);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_cycles(3, "(1 4)"), Err(GroupError::DegreeExceeded { point: 4, degree: 3 })));
        assert!(matches!(parse_cycles(3, "(1 2"), Err(GroupError::MalformedCycle(_))));
        assert!(matches!(parse_cycles(3, "(1 2)(2 3)"), Err(GroupError::MalformedCycle(_))));
        assert!(matches!(parse_cycles(3, "(a b)"), Err(GroupError::MalformedCycle(_))));
        assert!(matches!(parse_cycles(3, "1 2"), Err(GroupError::MalformedCycle(_))));
        assert!(parse_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn order_cap() {
        let err = FiniteGroup::from_generators(5, &["(1 2 3 4 5)", "(1 2)"], 100).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: 100 });
    }

    #[test]
    fn perm_spec_string() {
        let g = parse_perm_spec("perm:5:(1 2 3 4 5),(1 2 3)", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(format_cycles(&parse_cycles(5, "(3 1 2)(4 5)").unwrap()), "(1 2 3)(4 5)");
    }
}
