//! Finite abelian groups `Z_{d1} + ... + Z_{dk}` with elements stored as
//! residue vectors and addressed by a mixed-radix index (last coordinate
//! varies fastest).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, Result};

/// Hard ceiling on the order of any group materialized as a dense table.
/// Callers apply their own, usually much smaller, budget on top of this.
pub const MAX_DENSE_ORDER: u64 = 1 << 22;

/// Default cap on full-enumeration operations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 4096;

/// A finite abelian group given by an ordered list of cyclic moduli.
///
/// The moduli are kept exactly as given: `Z2 + Z4` and `Z4 + Z2` are distinct
/// representations of the same isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

/// An element of an [`AbelianGroup`], one reduced residue per modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.coords)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("invalid integer {t:?} in {s:?}")))
        })
        .collect()
}

impl AbelianGroup {
    pub fn new(moduli: impl Into<Vec<u64>>) -> Result<Self> {
        let moduli = moduli.into();
        if moduli.is_empty() {
            return Err(Error::EmptyModuli);
        }
        let mut order = 1u64;
        for &d in &moduli {
            if d < 2 {
                return Err(Error::ModulusTooSmall(d));
            }
            order = order.checked_mul(d).ok_or(Error::OrderOverflow)?;
        }
        Ok(AbelianGroup { moduli, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Direct sum, moduli concatenated in the given order.
    pub fn direct_sum(parts: &[AbelianGroup]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .flat_map(|g| g.moduli.iter().copied())
                .collect::<Vec<_>>(),
        )
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.moduli.len() == 1
    }

    /// The common modulus if every factor has the same modulus.
    pub fn homogeneous_modulus(&self) -> Option<u64> {
        let m = self.moduli[0];
        self.moduli.iter().all(|&d| d == m).then_some(m)
    }

    /// Order as a table length, refusing anything above `cap`.
    pub fn enumerable_order(&self, cap: u64) -> Result<usize> {
        let cap = cap.min(MAX_DENSE_ORDER);
        if self.order > cap {
            return Err(Error::BudgetExceeded(format!(
                "group {self} has order {} above the enumeration cap {cap}",
                self.order
            )));
        }
        Ok(self.order as usize)
    }

    pub(crate) fn dense_order(&self) -> Result<usize> {
        self.enumerable_order(MAX_DENSE_ORDER)
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let x = GroupElement { coords };
        self.check(&x)?;
        Ok(x)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        self.element(parse_list(s)?)
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: self.moduli.len(),
                found: x.coords.len(),
            });
        }
        for (&v, &d) in x.coords.iter().zip(&self.moduli) {
            if v >= d {
                return Err(Error::ResidueOutOfRange { value: v, modulus: d });
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = self
            .moduli
            .iter()
            .zip(a.coords.iter().zip(&b.coords))
            .map(|(&d, (&x, &y))| ((x as u128 + y as u128) % d as u128) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = self
            .moduli
            .iter()
            .zip(&a.coords)
            .map(|(&d, &x)| if x == 0 { 0 } else { d - x })
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// `k * x`.
    pub fn scale(&self, k: u64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords = self
            .moduli
            .iter()
            .zip(&x.coords)
            .map(|(&d, &v)| ((k as u128 * v as u128) % d as u128) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Least `m >= 1` with `m * x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        Ok(self
            .moduli
            .iter()
            .zip(&x.coords)
            .fold(1u64, |acc, (&d, &v)| acc.lcm(&(d / v.gcd(&d)))))
    }

    /// Mixed-radix index, last coordinate fastest.
    pub fn element_index(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        self.dense_order()?;
        Ok(self
            .moduli
            .iter()
            .zip(&x.coords)
            .fold(0usize, |acc, (&d, &v)| acc * d as usize + v as usize))
    }

    pub fn index_element(&self, index: usize) -> Result<GroupElement> {
        let order = self.dense_order()?;
        if index >= order {
            return Err(Error::IndexOutOfRange { index, order });
        }
        let mut coords = vec![0; self.moduli.len()];
        let mut rest = index;
        for (c, &d) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = (rest % d as usize) as u64;
            rest /= d as usize;
        }
        Ok(GroupElement { coords })
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let order = self.dense_order()?;
        Ok((0..order).map(move |i| self.index_element(i).expect("index in range")))
    }

    // Index-level arithmetic. Callers guarantee indices are in range.

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        self.combine_idx(a, b, |x, y, d| (x + y) % d)
    }

    pub(crate) fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.combine_idx(a, b, |x, y, d| (x + d - y) % d)
    }

    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        self.sub_idx(0, a)
    }

    fn combine_idx(&self, mut a: usize, mut b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &d in self.moduli.iter().rev() {
            let d = d as usize;
            out += op(a % d, b % d, d) * place;
            place *= d;
            a /= d;
            b /= d;
        }
        out
    }

    /// Full subtraction table: `table[x * n + y] = index(x - y)`.
    pub(crate) fn sub_table(&self) -> Result<Vec<usize>> {
        let n = self.dense_order()?;
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                t.push(self.sub_idx(x, y));
            }
        }
        Ok(t)
    }

    /// Number of elements of order 2, by closed form.
    pub fn count_involutions(&self) -> u64 {
        let twos = self.moduli.iter().filter(|&&d| d % 2 == 0).count() as u32;
        (1u64 << twos) - 1
    }

    /// Number of elements of order 2, by scanning the group.
    pub fn count_involutions_exhaustive(&self) -> Result<u64> {
        let mut n = 0;
        for x in self.elements()? {
            if self.element_order(&x)? == 2 {
                n += 1;
            }
        }
        Ok(n)
    }

    /// The involution when there is exactly one.
    pub fn unique_involution(&self) -> Option<GroupElement> {
        if self.count_involutions() != 1 {
            return None;
        }
        let coords = self
            .moduli
            .iter()
            .map(|&d| if d % 2 == 0 { d / 2 } else { 0 })
            .collect();
        Some(GroupElement { coords })
    }

    /// Sum of all elements, computed by direct summation.
    pub fn group_sum(&self) -> Result<GroupElement> {
        let mut acc = self.zero();
        for x in self.elements()? {
            acc = self.add(&acc, &x)?;
        }
        Ok(acc)
    }

    /// Isomorphism onto the primary decomposition: each modulus is split into
    /// its prime-power parts, in factor order and then ascending prime order.
    pub fn crt_decompose(&self) -> Result<GroupIsomorphism> {
        let mut parts: Vec<Vec<u64>> = Vec::with_capacity(self.moduli.len());
        for &d in &self.moduli {
            parts.push(
                factorize(d)
                    .into_iter()
                    .map(|(p, e)| p.pow(e))
                    .collect(),
            );
        }
        let target = AbelianGroup::new(parts.concat())?;
        let n = self.dense_order()?;
        let mut forward = vec![0; n];
        let mut backward = vec![0; n];
        for (i, x) in self.elements()?.enumerate() {
            let coords: Vec<u64> = x
                .coords
                .iter()
                .zip(&parts)
                .flat_map(|(&v, ps)| ps.iter().map(move |&q| v % q))
                .collect();
            let j = target.element_index(&GroupElement { coords })?;
            forward[i] = j;
            backward[j] = i;
        }
        Ok(GroupIsomorphism {
            source: self.clone(),
            target,
            forward,
            backward,
        })
    }

    /// Isomorphism that reorders coordinates: target coordinate `k` is source
    /// coordinate `perm[k]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<GroupIsomorphism> {
        let k = self.rank();
        let mut seen = vec![false; k];
        if perm.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: perm.len() });
        }
        for &p in perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        let target = AbelianGroup::new(perm.iter().map(|&p| self.moduli[p]).collect::<Vec<_>>())?;
        let n = self.dense_order()?;
        let mut forward = vec![0; n];
        let mut backward = vec![0; n];
        for (i, x) in self.elements()?.enumerate() {
            let coords = perm.iter().map(|&p| x.coords[p]).collect();
            let j = target.element_index(&GroupElement { coords })?;
            forward[i] = j;
            backward[j] = i;
        }
        Ok(GroupIsomorphism {
            source: self.clone(),
            target,
            forward,
            backward,
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.moduli)
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AbelianGroup::new(parse_list(s)?)
    }
}

impl TryFrom<String> for AbelianGroup {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AbelianGroup> for String {
    fn from(g: AbelianGroup) -> String {
        g.to_string()
    }
}

/// An isomorphism between two presentations, stored as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIsomorphism {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl GroupIsomorphism {
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        let i = self.source.element_index(x)?;
        self.target.index_element(self.forward[i])
    }

    pub fn apply_inverse(&self, y: &GroupElement) -> Result<GroupElement> {
        let j = self.target.element_index(y)?;
        self.source.index_element(self.backward[j])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupIsomorphism) -> Result<GroupIsomorphism> {
        if self.target != other.source {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupIsomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            forward: self.forward.iter().map(|&j| other.forward[j]).collect(),
            backward: other.backward.iter().map(|&j| self.backward[j]).collect(),
        })
    }

    /// Exhaustive check: mutually inverse tables and additive forward map.
    pub fn verify(&self) -> bool {
        let n = self.forward.len();
        if self.source.order() != n as u64 || self.target.order() != n as u64 || self.backward.len() != n {
            return false;
        }
        let inverse = (0..n).all(|i| self.forward[i] < n && self.backward[self.forward[i]] == i)
            && (0..n).all(|j| self.backward[j] < n && self.forward[self.backward[j]] == j);
        inverse
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.forward[self.source.add_idx(a, b)]
                        == self.target.add_idx(self.forward[a], self.forward[b])
                })
            })
    }
}

/// Partitions of `n` into positive parts, each listed in non-increasing order,
/// emitted from `[n]` down to `[1, ..., 1]`.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative of every isomorphism class of abelian groups of order
/// `n`, in primary decomposition form. Primes ascend; within a prime the
/// moduli ascend; classes are ordered from the cyclic one down to the
/// elementary one, earlier primes varying slowest.
pub fn abelian_groups_of_order(n: u64) -> Result<Vec<AbelianGroup>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for prefix in &combos {
            for part in partitions(e) {
                let mut moduli = prefix.clone();
                moduli.extend(part.iter().rev().map(|&k| p.pow(k)));
                next.push(moduli);
            }
        }
        combos = next;
    }
    combos.into_iter().map(AbelianGroup::new).collect()
}

/// Every abelian group class of order `2..=max_order`, ordered by order.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<AbelianGroup> {
    (2..=max_order)
        .flat_map(|n| abelian_groups_of_order(n).expect("n >= 2"))
        .collect()
}
