//! Named groups and the group-spec mini language.
//!
//! | spec          | group                                              |
//! |---------------|----------------------------------------------------|
//! | `Cn`          | cyclic of order n                                  |
//! | `Dn`          | dihedral of order n (n even)                       |
//! | `Sn`, `An`    | symmetric / alternating on n points                |
//! | `Q8`          | quaternion group                                   |
//! | `Heis3`       | extraspecial of order 27, exponent 3               |
//! | `frob:m:k:u`  | `Z/m x Z/k`, generator acting by `x -> u x`        |
//! | `perm:d:...`  | closure of permutations in cycle notation          |
//! | `file:path`   | Cayley table file                                  |

use std::fmt::Write as _;

use num_integer::Integer;

use super::perm::{parse_perm_spec, DEFAULT_ORDER_CAP};
use super::product::semidirect_product;
use super::{FiniteGroup, GroupError};

/// Catalog groups of order at most 24 used by the verification battery.
pub const SMALL_CATALOG: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "S3", "D8", "Q8", "D10", "A4", "D12", "D14", "D16", "D18",
    "frob:5:4:2", "D20", "frob:7:3:2", "D22", "S4", "D24",
];

/// Larger catalog groups that appear in the worked examples.
pub const EXTENDED_CATALOG: &[&str] = &["Heis3", "A5"];

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order 0");
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    FiniteGroup::from_fn(n, names, |a, b| (a + b) % n)
}

/// Dihedral group of order `n`: `r^i s^a` has index `a * n/2 + i`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(GroupError::Parse {
            spec: format!("D{n}"),
            reason: "dihedral order must be even and at least 2".into(),
        });
    }
    let m = n / 2;
    let names = (0..n)
        .map(|x| {
            let (i, a) = (x % m, x / m);
            let rot = match i {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{i}"),
            };
            match (rot.is_empty(), a) {
                (true, 0) => "1".to_string(),
                (false, 0) => rot,
                (true, _) => "s".to_string(),
                (false, _) => format!("{rot}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_fn(n, names, |x, y| {
        let (i, a) = (x % m, x / m);
        let (k, b) = (y % m, y / m);
        // s r^k = r^-k s
        let rot = if a == 0 { (i + k) % m } else { (i + m - k) % m };
        ((a + b) % 2) * m + rot
    }))
}

pub fn symmetric(degree: usize) -> Result<FiniteGroup, GroupError> {
    match degree {
        0 | 1 => FiniteGroup::from_generators(1, &[], DEFAULT_ORDER_CAP),
        _ => {
            let long = format!(
                "({})",
                (1..=degree).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            );
            FiniteGroup::from_generators(degree, &["(1 2)", &long], DEFAULT_ORDER_CAP)
        }
    }
}

pub fn alternating(degree: usize) -> Result<FiniteGroup, GroupError> {
    if degree < 3 {
        return FiniteGroup::from_generators(1, &[], DEFAULT_ORDER_CAP);
    }
    let gens: Vec<String> = (3..=degree).map(|k| format!("(1 2 {k})")).collect();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    FiniteGroup::from_generators(degree, &refs, DEFAULT_ORDER_CAP)
}

/// Quaternion group: index `2u + s` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn quaternion8() -> FiniteGroup {
    // unit products: (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let units = ["1", "i", "j", "k"];
    let names = (0..8)
        .map(|x| {
            let (u, s) = (x / 2, x % 2);
            if s == 0 {
                units[u].to_string()
            } else {
                format!("-{}", units[u])
            }
        })
        .collect();
    FiniteGroup::from_fn(8, names, |x, y| {
        let (u, s) = (x / 2, x % 2);
        let (v, t) = (y / 2, y % 2);
        let (sign, w) = UNIT[u][v];
        2 * w + (s + t + sign) % 2
    })
}

/// Upper unitriangular 3x3 matrices over F_3; `(a, b, c)` has index
/// `a + 3b + 9c` and multiplies as `(a+a', b+b', c+c'+ab')`.
pub fn heisenberg3() -> FiniteGroup {
    let split = |x: usize| (x % 3, (x / 3) % 3, x / 9);
    let names = (0..27)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("x{a}y{b}z{c}")
        })
        .collect();
    FiniteGroup::from_fn(27, names, |x, y| {
        let (a, b, c) = split(x);
        let (d, e, f) = split(y);
        (a + d) % 3 + 3 * ((b + e) % 3) + 9 * ((c + f + a * e) % 3)
    })
}

/// `Z/m x Z/k` where the generator of `Z/k` acts by multiplication by `u`.
pub fn frobenius(m: usize, k: usize, u: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 || k == 0 {
        return Err(GroupError::Parse {
            spec: format!("frob:{m}:{k}:{u}"),
            reason: "orders must be positive".into(),
        });
    }
    if u.gcd(&m) != 1 {
        return Err(GroupError::NotAutomorphism(format!(
            "multiplication by {u} is not invertible mod {m}"
        )));
    }
    let action: Vec<usize> = (0..m).map(|x| (u * x) % m).collect();
    semidirect_product(&cyclic(m), &cyclic(k), &action)
}

/// Parses a group spec (see the module table).
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let err = |reason: &str| GroupError::Parse {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if let Some(path) = spec.strip_prefix("file:") {
        return read_cayley_file(path);
    }
    if spec.starts_with("perm:") {
        return parse_perm_spec(spec, DEFAULT_ORDER_CAP);
    }
    if let Some(rest) = spec.strip_prefix("frob:") {
        let parts: Vec<usize> = rest
            .split(':')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("expected frob:<m>:<k>:<u> with integers"))?;
        if parts.len() != 3 {
            return Err(err("expected frob:<m>:<k>:<u>"));
        }
        return frobenius(parts[0], parts[1], parts[2]);
    }
    match spec {
        "Q8" => return Ok(quaternion8()),
        "Heis3" => return Ok(heisenberg3()),
        _ => {}
    }
    let (kind, n) = spec.split_at(1.min(spec.len()));
    let n: usize = n.parse().map_err(|_| err("unknown group spec"))?;
    match kind {
        "C" if n > 0 => Ok(cyclic(n)),
        "D" => dihedral(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(err("unknown group spec")),
    }
}

/// Reads the Cayley table file format: first line `n`, then `n` rows of `n`
/// indices, then optional `i <label>` lines. Blank lines and `#` comments are
/// ignored.
pub fn read_cayley_file(path: &str) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.to_string(),
        reason: e.to_string(),
    })?;
    parse_cayley_text(&text).map_err(|reason| match reason {
        Ok(group_err) => group_err,
        Err(reason) => GroupError::Parse {
            spec: format!("file:{path}"),
            reason,
        },
    })
}

type ParseOutcome = Result<FiniteGroup, Result<GroupError, String>>;

fn parse_cayley_text(text: &str) -> ParseOutcome {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Err("empty file".to_string()))?
        .parse()
        .map_err(|_| Err("first line must be the group order".to_string()))?;
    let mut table = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Err(format!("missing table row {r}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| Err(format!("row {r} has a non-integer entry")))?;
        table.push(row);
    }
    let mut names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    for line in lines {
        let (idx, label) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Err(format!("bad name line {line:?}")))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| Err(format!("bad name index in {line:?}")))?;
        if idx >= n {
            return Err(Err(format!("name index {idx} out of range")));
        }
        names[idx] = label.trim().to_string();
    }
    FiniteGroup::from_cayley(&table, Some(names)).map_err(Ok)
}

/// Writes `g` in the Cayley table file format.
pub fn write_cayley_table(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for a in g.elements() {
        let row: Vec<String> = g.row(a).map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for a in g.elements() {
        let _ = writeln!(out, "{a} {}", g.name(a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::center;

    #[test]
    fn catalog_orders() {
        for (spec, order) in [
            ("C5", 5),
            ("D8", 8),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("Q8", 8),
            ("Heis3", 27),
            ("frob:7:3:2", 21),
            ("frob:5:4:2", 20),
            ("perm:4:(1 2 3 4),(1 3)", 8),
        ] {
            assert_eq!(parse_group_spec(spec).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn catalog_lists_parse() {
        for spec in SMALL_CATALOG {
            let g = parse_group_spec(spec).unwrap();
            assert!(g.order() <= 24, "{spec}");
        }
        for spec in EXTENDED_CATALOG {
            parse_group_spec(spec).unwrap();
        }
    }

    #[test]
    fn small_structure_facts() {
        assert_eq!(center(&quaternion8()).order(), 2);
        assert_eq!(center(&heisenberg3()).order(), 3);
        assert!(heisenberg3().elements().all(|g| heisenberg3().element_order(g) <= 3));
        assert_eq!(center(&dihedral(8).unwrap()).order(), 2);
        assert_eq!(center(&dihedral(10).unwrap()).order(), 1);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(parse_group_spec("X9"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_spec("D7"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_spec("frob:7:3"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_spec("frob:6:2:2"), Err(GroupError::NotAutomorphism(_))));
        assert!(matches!(parse_group_spec("file:/nonexistent/x"), Err(GroupError::Io { .. })));
    }

    #[test]
    fn cayley_file_round_trip() {
        let g = dihedral(8).unwrap();
        let text = write_cayley_table(&g);
        let back = parse_cayley_text(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn broken_file_reports_associativity() {
        let text = "3\n0 2 1\n2 1 0\n1 0 2\n";
        assert!(matches!(
            parse_cayley_text(text),
            Err(Ok(GroupError::NotAssociative { .. }))
        ));
    }
}
