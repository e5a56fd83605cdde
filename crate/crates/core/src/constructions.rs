//! Explicit antiautomorphisms. Every factory checks its output with
//! [`TableMap::is_antiautomorphism`] before returning it.

use crate::arith::is_unit;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::linear::{irreducible_poly_z2, multiplication_map};
use crate::map::TableMap;

fn verified(map: TableMap, what: &'static str) -> Result<TableMap> {
    if map.is_antiautomorphism() {
        Ok(map)
    } else {
        Err(Error::UnverifiedWitness(what))
    }
}

fn from_listing(moduli: &[u64], rows: &[(&[u64], &[u64])], what: &'static str) -> Result<TableMap> {
    let group = AbelianGroup::new(moduli.to_vec())?;
    verified(TableMap::from_pairs(&group, rows)?, what)
}

/// `x -> -x`; an antiautomorphism exactly when `G` has no element of order 2.
pub fn negation(group: &AbelianGroup) -> Result<TableMap> {
    if group.count_involutions() != 0 {
        return Err(Error::MethodInapplicable(format!(
            "negation on {group}: the group has elements of order 2"
        )));
    }
    verified(TableMap::negation(group)?, "negation")
}

/// The nonlinear antiautomorphism of `Z2 + Z2` moving `(0,0)` to `(1,0)`.
pub fn klein_antiauto() -> Result<TableMap> {
    from_listing(
        &[2, 2],
        &[
            (&[1, 1], &[0, 0]),
            (&[0, 1], &[0, 1]),
            (&[0, 0], &[1, 0]),
            (&[1, 0], &[1, 1]),
        ],
        "Z2+Z2 table",
    )
}

/// A nonlinear antiautomorphism of `Z2^3` with the single fixed point `(1,1,0)`.
pub fn z2cubed_antiauto() -> Result<TableMap> {
    from_listing(
        &[2, 2, 2],
        &[
            (&[1, 1, 1], &[0, 0, 0]),
            (&[1, 0, 1], &[0, 0, 1]),
            (&[0, 1, 1], &[0, 1, 0]),
            (&[0, 0, 1], &[0, 1, 1]),
            (&[0, 1, 0], &[1, 0, 0]),
            (&[0, 0, 0], &[1, 0, 1]),
            (&[1, 1, 0], &[1, 1, 0]),
            (&[1, 0, 0], &[1, 1, 1]),
        ],
        "Z2^3 table",
    )
}

/// A nonlinear antiautomorphism of `Z2 + Z4`, a group with no
/// biantiautomorphism.
pub fn z2_z4_antiauto() -> Result<TableMap> {
    from_listing(
        &[2, 4],
        &[
            (&[1, 3], &[0, 0]),
            (&[1, 2], &[0, 1]),
            (&[0, 3], &[0, 2]),
            (&[0, 2], &[0, 3]),
            (&[1, 0], &[1, 0]),
            (&[0, 1], &[1, 1]),
            (&[0, 0], &[1, 2]),
            (&[1, 1], &[1, 3]),
        ],
        "Z2+Z4 table",
    )
}

/// Antiautomorphism of `Z2^r` for `r >= 2`: `r/2` Klein tables for even `r`,
/// otherwise `(r-3)/2` Klein tables followed by the `Z2^3` table.
pub fn elementary2_antiauto(r: u64) -> Result<TableMap> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let klein = klein_antiauto()?;
    let mut parts = vec![klein; (r / 2) as usize];
    if r % 2 == 1 {
        parts.pop();
        parts.push(z2cubed_antiauto()?);
    }
    verified(TableMap::direct_sum(&parts)?, "elementary 2-group direct sum")
}

/// Linear antiautomorphism of `Z_{2^m}^n` from the companion matrix of the
/// smallest irreducible binary polynomial of degree `n`. The table has
/// `2^(mn)` entries and must fit under `max_order`.
pub fn homogeneous2_antiauto(m: u32, n: u32, max_order: u64) -> Result<TableMap> {
    if m < 1 {
        return Err(Error::RankTooSmall(m as u64));
    }
    if n < 2 {
        return Err(Error::RankTooSmall(n as u64));
    }
    let order = (m as u64)
        .checked_mul(n as u64)
        .filter(|&e| e < 64)
        .map(|e| 1u64 << e);
    match order {
        Some(o) if o <= max_order => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "Z_2^{m} to the power {n} exceeds the table cap {max_order}"
            )))
        }
    }
    let f = irreducible_poly_z2(n)?;
    let c = f.companion_matrix(1 << m)?;
    verified(c.to_map()?, "companion matrix map")
}

/// Valid multipliers `a` for `Z_n`: units with `a - 1` also a unit.
pub fn valid_multipliers(n: u64) -> Vec<u64> {
    (2..n).filter(|&a| is_unit(a, n) && is_unit(a - 1, n)).collect()
}

/// `t -> a t + b` on `Z_n`, checked.
pub fn affine_antiauto(n: u64, a: u64, b: u64) -> Result<TableMap> {
    let group = AbelianGroup::cyclic(n)?;
    let shift = group.element(vec![b])?;
    let map = multiplication_map(&group, a % n)?.translate(&shift)?;
    if !map.is_antiautomorphism() {
        return Err(Error::MethodInapplicable(format!(
            "t -> {a}t + {b} is not an antiautomorphism of Z{n}"
        )));
    }
    Ok(map)
}

/// Every affine map `t -> a t + b` on `Z_n` (odd `n >= 3`) with
/// `gcd(a, n) = gcd(a - 1, n) = 1`, ordered by `a` then `b`.
pub fn odd_cyclic_antiautos(n: u64) -> Result<impl Iterator<Item = Result<TableMap>>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::NotOdd(n));
    }
    AbelianGroup::cyclic(n)?.dense_order()?;
    Ok(valid_multipliers(n)
        .into_iter()
        .flat_map(move |a| (0..n).map(move |b| affine_antiauto(n, a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::count_antiautomorphisms;
    use crate::SearchBudget;

    fn el(g: &AbelianGroup, s: &str) -> crate::GroupElement {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn klein() {
        let f = klein_antiauto().unwrap();
        let g = f.group().clone();
        assert_eq!(f.apply(&el(&g, "1,1")).unwrap(), el(&g, "0,0"));
        assert_eq!(f.apply(&el(&g, "0,0")).unwrap(), el(&g, "1,0"));
        assert!(f.is_antiautomorphism());
        assert!(!f.is_linear());
    }

    #[test]
    fn z2cubed() {
        let f = z2cubed_antiauto().unwrap();
        let g = f.group().clone();
        assert_eq!(f.apply(&el(&g, "1,1,1")).unwrap(), el(&g, "0,0,0"));
        assert_eq!(f.apply(&el(&g, "1,1,0")).unwrap(), el(&g, "1,1,0"));
        assert!(!f.is_linear());
    }

    #[test]
    fn z2_z4() {
        let f = z2_z4_antiauto().unwrap();
        let g = f.group().clone();
        assert_eq!(f.apply(&el(&g, "1,3")).unwrap(), el(&g, "0,0"));
        assert_eq!(f.apply(&el(&g, "1,0")).unwrap(), el(&g, "1,0"));
        assert!(!f.is_linear());
    }

    #[test]
    fn elementary() {
        assert_eq!(elementary2_antiauto(2).unwrap(), klein_antiauto().unwrap());
        let k = klein_antiauto().unwrap();
        assert_eq!(
            elementary2_antiauto(4).unwrap(),
            TableMap::direct_sum(&[k.clone(), k.clone()]).unwrap()
        );
        assert_eq!(
            elementary2_antiauto(5).unwrap(),
            TableMap::direct_sum(&[k, z2cubed_antiauto().unwrap()]).unwrap()
        );
        for r in 2..=6 {
            let f = elementary2_antiauto(r).unwrap();
            assert_eq!(f.group().moduli(), vec![2; r as usize].as_slice());
            assert!(f.is_antiautomorphism());
        }
        assert_eq!(elementary2_antiauto(1), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn homogeneous() {
        for (m, n) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
            let f = homogeneous2_antiauto(m, n, 4096).unwrap();
            assert_eq!(f.group().moduli(), vec![1u64 << m; n as usize].as_slice());
            assert!(f.is_antiautomorphism() && f.is_linear());
        }
        assert!(matches!(homogeneous2_antiauto(4, 4, 4096), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn negation_requires_odd_order() {
        assert!(negation(&AbelianGroup::new(vec![3, 5]).unwrap()).is_ok());
        assert!(matches!(
            negation(&AbelianGroup::new(vec![3, 4]).unwrap()),
            Err(Error::MethodInapplicable(_))
        ));
    }

    #[test]
    fn odd_cyclic_family() {
        let count = |n| odd_cyclic_antiautos(n).unwrap().collect::<Result<Vec<_>>>().unwrap();
        assert_eq!(count(3).len(), 3);
        assert_eq!(count(5).len(), 15);
        assert_eq!(count(9).len(), 27);
        let all = count(15);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(matches!(odd_cyclic_antiautos(4), Err(Error::NotOdd(4))));
    }

    #[test]
    fn family_is_everything_for_z3() {
        let budget = SearchBudget::default();
        let z3 = AbelianGroup::cyclic(3).unwrap();
        assert_eq!(count_antiautomorphisms(&z3, &budget).unwrap(), 3);
    }

    #[test]
    fn affine_rejects_bad_multiplier() {
        assert!(affine_antiauto(9, 4, 0).is_err());
        assert!(affine_antiauto(9, 2, 5).is_ok());
    }
}
