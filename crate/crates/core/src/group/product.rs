use super::{FiniteGroup, GroupError};

/// Direct product `A x B`; element `(a, b)` has index `b * |A| + a`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let na = a.order();
    let names = (0..a.order() * b.order())
        .map(|i| pair_name(a.name(i % na), b.name(i / na)))
        .collect();
    FiniteGroup::from_fn(na * b.order(), names, |x, y| {
        let (xa, xb) = (x % na, x / na);
        let (ya, yb) = (y % na, y / na);
        b.mul(xb, yb) * na + a.mul(xa, ya)
    })
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Semidirect product `K x_phi H` for cyclic `H`.
///
/// `action[k]` is the image of `k` under the automorphism attached to a
/// generator `h` of `H`. Only the order of `H` enters the table: element
/// `(k, h^j)` has index `j * |K| + k` and
/// `(k1, h^i)(k2, h^j) = (k1 * action^i(k2), h^(i+j))`.
pub fn semidirect_product(
    k: &FiniteGroup,
    h: &FiniteGroup,
    action: &[usize],
) -> Result<FiniteGroup, GroupError> {
    let nk = k.order();
    let nh = h.order();
    if action.len() != nk {
        return Err(GroupError::NotAutomorphism(format!(
            "action has {} entries, kernel has order {nk}",
            action.len()
        )));
    }
    let mut seen = vec![false; nk];
    for &x in action {
        if x >= nk || std::mem::replace(&mut seen[x], true) {
            return Err(GroupError::NotAutomorphism("action is not a bijection".into()));
        }
    }
    for x in 0..nk {
        for y in 0..nk {
            if action[k.mul(x, y)] != k.mul(action[x], action[y]) {
                return Err(GroupError::NotAutomorphism(format!(
                    "phi({x}*{y}) != phi({x})*phi({y})"
                )));
            }
        }
    }
    if !(0..nh).any(|g| h.element_order(g) == nh) {
        return Err(GroupError::NotCyclic { order: nh });
    }

    // powers[j] = action^j as a lookup table
    let mut powers: Vec<Vec<usize>> = vec![(0..nk).collect()];
    loop {
        let next: Vec<usize> = powers.last().unwrap().iter().map(|&x| action[x]).collect();
        if next.iter().enumerate().all(|(i, &x)| i == x) {
            break;
        }
        powers.push(next);
    }
    let action_order = powers.len();
    if !nh.is_multiple_of(action_order) {
        return Err(GroupError::OrderMismatch {
            action_order,
            order: nh,
        });
    }
    let names = (0..nk * nh)
        .map(|i| {
            let (kk, j) = (i % nk, i / nk);
            match (kk, j) {
                (0, 0) => "1".to_string(),
                (_, 0) => k.name(kk).to_string(),
                (0, _) => format!("h^{j}"),
                _ => format!("{}.h^{j}", k.name(kk)),
            }
        })
        .collect();
    Ok(FiniteGroup::from_fn(nk * nh, names, |x, y| {
        let (k1, i) = (x % nk, x / nk);
        let (k2, j) = (y % nk, y / nk);
        let kk = k.mul(k1, powers[i % action_order][k2]);
        ((i + j) % nh) * nk + kk
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, center, cyclic, generate, Subgroup};

    #[test]
    fn frobenius_21_has_trivially_intersecting_complement() {
        let k = cyclic(7);
        let h = cyclic(3);
        let action: Vec<usize> = (0..7).map(|x| (2 * x) % 7).collect();
        let g = semidirect_product(&k, &h, &action).unwrap();
        assert_eq!(g.order(), 21);
        // complement generated by (0, h)
        let hsub = generate(&g, &[7]);
        assert_eq!(hsub.order(), 3);
        for x in g.elements().filter(|x| !hsub.contains(*x)) {
            let conj: Vec<usize> = hsub.members().iter().map(|&y| g.conj(x, y)).collect();
            let meet = conj.iter().filter(|&&y| hsub.contains(y)).count();
            assert_eq!(meet, 1, "H meets H^g nontrivially for g = {x}");
        }
    }

    #[test]
    fn klein_by_three_cycle_is_a4() {
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        // involutions of V4 are 1, 2, 3; rotate them
        let action = vec![0, 2, 3, 1];
        let g = semidirect_product(&v4, &cyclic(3), &action).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.order_statistics(), alternating(4).unwrap().order_statistics());
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let g = semidirect_product(&cyclic(3), &cyclic(4), &[0, 1, 2]).unwrap();
        assert!(g.is_abelian());
        assert_eq!(center(&g).order(), 12);
        let _ = Subgroup::whole(&g);
    }

    #[test]
    fn rejects_bad_actions() {
        let k = cyclic(7);
        let not_hom: Vec<usize> = vec![0, 2, 1, 3, 4, 5, 6];
        assert!(matches!(
            semidirect_product(&k, &cyclic(3), &not_hom),
            Err(GroupError::NotAutomorphism(_))
        ));
        // multiply by 3 has order 6 mod 7, which does not divide 3
        let times3: Vec<usize> = (0..7).map(|x| (3 * x) % 7).collect();
        assert_eq!(
            semidirect_product(&k, &cyclic(3), &times3).unwrap_err(),
            GroupError::OrderMismatch { action_order: 6, order: 3 }
        );
    }
}
