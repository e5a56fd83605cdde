//! Total maps `G -> G` stored as dense index tables, together with the
//! antimorphism, antiautomorphism, linearity and fixed-point predicates.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement, GroupIsomorphism};

/// A total function on a group: `table[i]` is the index of the image of the
/// element with index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct TableMap {
    group: AbelianGroup,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    group: AbelianGroup,
    table: Vec<usize>,
}

impl TryFrom<RawMap> for TableMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        TableMap::new(raw.group, raw.table)
    }
}

impl From<TableMap> for RawMap {
    fn from(m: TableMap) -> Self {
        RawMap {
            group: m.group,
            table: m.table,
        }
    }
}

impl TableMap {
    pub fn new(group: AbelianGroup, table: Vec<usize>) -> Result<Self> {
        let n = group.dense_order()?;
        if table.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: table.len(),
            });
        }
        if let Some((position, &entry)) = table.iter().enumerate().find(|(_, &e)| e >= n) {
            return Err(Error::InvalidTable { position, entry });
        }
        Ok(TableMap { group, table })
    }

    /// Tabulates `f` over every element.
    pub fn from_fn(
        group: &AbelianGroup,
        mut f: impl FnMut(&GroupElement) -> Result<GroupElement>,
    ) -> Result<Self> {
        let table = group
            .elements()?
            .map(|x| group.element_index(&f(&x)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableMap {
            group: group.clone(),
            table,
        })
    }

    /// Builds a map from `(x, f(x))` pairs covering the whole group once.
    pub fn from_pairs(group: &AbelianGroup, pairs: &[(&[u64], &[u64])]) -> Result<Self> {
        let n = group.dense_order()?;
        let mut table = vec![None; n];
        for (x, y) in pairs {
            let i = group.element_index(&group.element(x.to_vec())?)?;
            let j = group.element_index(&group.element(y.to_vec())?)?;
            if table[i].replace(j).is_some() {
                return Err(Error::Parse(format!("element {x:?} listed twice")));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::Parse(format!("no image for index {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableMap {
            group: group.clone(),
            table,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        let i = self.group.element_index(x)?;
        self.group.index_element(self.table[i])
    }

    pub fn identity(group: &AbelianGroup) -> Result<Self> {
        let n = group.dense_order()?;
        Ok(TableMap {
            group: group.clone(),
            table: (0..n).collect(),
        })
    }

    pub fn negation(group: &AbelianGroup) -> Result<Self> {
        let n = group.dense_order()?;
        Ok(TableMap {
            group: group.clone(),
            table: (0..n).map(|i| group.neg_idx(i)).collect(),
        })
    }

    /// The constant map onto `c`.
    pub fn constant(group: &AbelianGroup, c: &GroupElement) -> Result<Self> {
        let n = group.dense_order()?;
        let j = group.element_index(c)?;
        Ok(TableMap {
            group: group.clone(),
            table: vec![j; n],
        })
    }

    pub fn is_bijection(&self) -> bool {
        is_permutation(&self.table)
    }

    /// `x -> x - f(x)`.
    pub fn difference_map(&self) -> TableMap {
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &fx)| self.group.sub_idx(x, fx))
            .collect();
        TableMap {
            group: self.group.clone(),
            table,
        }
    }

    /// `id - f` is injective.
    pub fn is_antimorphism(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().enumerate().all(|(x, &fx)| {
            let d = self.group.sub_idx(x, fx);
            !std::mem::replace(&mut seen[d], true)
        })
    }

    /// Bijective antimorphism.
    pub fn is_antiautomorphism(&self) -> bool {
        self.is_bijection() && self.is_antimorphism()
    }

    /// `f(0) = 0` and `f(x + y) = f(x) + f(y)` for every pair.
    pub fn is_linear(&self) -> bool {
        let g = &self.group;
        let n = self.table.len();
        self.table[0] == 0
            && (0..n).all(|x| {
                (x..n).all(|y| self.table[g.add_idx(x, y)] == g.add_idx(self.table[x], self.table[y]))
            })
    }

    /// No nonzero fixed point. The value at 0 is ignored.
    pub fn is_fixed_point_free(&self) -> bool {
        self.table.iter().enumerate().skip(1).all(|(x, &fx)| x != fx)
    }

    /// Coordinate-block direct sum on the concatenated group.
    pub fn direct_sum(maps: &[TableMap]) -> Result<TableMap> {
        let first = maps.first().ok_or(Error::EmptyModuli)?;
        let mut acc = first.clone();
        for m in &maps[1..] {
            let group = AbelianGroup::direct_sum(&[acc.group.clone(), m.group.clone()])?;
            let k = m.table.len();
            group.dense_order()?;
            let mut table = Vec::with_capacity(acc.table.len() * k);
            for &a in &acc.table {
                for &b in &m.table {
                    table.push(a * k + b);
                }
            }
            acc = TableMap { group, table };
        }
        Ok(acc)
    }

    /// `x -> f(x) + b`.
    pub fn translate(&self, b: &GroupElement) -> Result<TableMap> {
        let j = self.group.element_index(b)?;
        let table = self.table.iter().map(|&fx| self.group.add_idx(fx, j)).collect();
        Ok(TableMap {
            group: self.group.clone(),
            table,
        })
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &TableMap) -> Result<TableMap> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(TableMap {
            group: self.group.clone(),
            table: other.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    /// Least `m >= 1` with `f^m = id`, from the cycle lengths.
    pub fn map_order(&self) -> Result<u64> {
        if !self.is_bijection() {
            return Err(Error::NotBijective);
        }
        let mut seen = vec![false; self.table.len()];
        let mut order = 1u64;
        for start in 0..self.table.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.table[x];
                len += 1;
            }
            let g = order.gcd(&len);
            order = (order / g).checked_mul(len).ok_or(Error::Overflow)?;
        }
        Ok(order)
    }

    /// Transports a map on `iso.target` back to `iso.source`:
    /// `iso^-1 ∘ f ∘ iso`.
    pub fn pull_back(&self, iso: &GroupIsomorphism) -> Result<TableMap> {
        if self.group != iso.target {
            return Err(Error::GroupMismatch);
        }
        let table = iso
            .forward
            .iter()
            .map(|&y| iso.backward[self.table[y]])
            .collect();
        Ok(TableMap {
            group: iso.source.clone(),
            table,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("maps always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One `x -> f(x)` line per element, in index order.
    pub fn to_pair_listing(&self) -> String {
        let mut out = String::new();
        for (i, &j) in self.table.iter().enumerate() {
            let x = self.group.index_element(i).expect("index in range");
            let y = self.group.index_element(j).expect("index in range");
            let _ = writeln!(out, "{x} -> {y}");
        }
        out
    }

    /// Parses the pair listing produced by [`TableMap::to_pair_listing`].
    pub fn from_pair_listing(group: &AbelianGroup, s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (x, y) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("missing '->' in {line:?}")))?;
            pairs.push((
                group.parse_element(x.trim())?.into_coords(),
                group.parse_element(y.trim())?.into_coords(),
            ));
        }
        let borrowed: Vec<(&[u64], &[u64])> =
            pairs.iter().map(|(x, y)| (x.as_slice(), y.as_slice())).collect();
        TableMap::from_pairs(group, &borrowed)
    }
}

pub(crate) fn is_permutation(table: &[usize]) -> bool {
    let mut seen = vec![false; table.len()];
    table
        .iter()
        .all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
}
