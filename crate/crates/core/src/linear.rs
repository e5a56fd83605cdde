//! Linear endomorphisms: residue matrices on homogeneous groups, multiplication
//! maps on cyclic groups, binary polynomials with their companion matrices, and
//! enumeration of endomorphisms of arbitrary finite abelian groups.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arith::is_unit;
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::map::TableMap;

/// Square matrix over `Z_m` acting on the homogeneous group `Z_m^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    group: AbelianGroup,
    modulus: u64,
    rows: Vec<Vec<u64>>,
}

impl ResidueMatrix {
    /// Entries are reduced modulo the common modulus.
    pub fn new(group: AbelianGroup, rows: Vec<Vec<u64>>) -> Result<Self> {
        let modulus = group.homogeneous_modulus().ok_or(Error::NonHomogeneousGroup)?;
        let n = group.rank();
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rows.len() });
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                if r.len() != n {
                    Err(Error::DimensionMismatch { expected: n, found: r.len() })
                } else {
                    Ok(r.into_iter().map(|v| v % modulus).collect())
                }
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(ResidueMatrix { group, modulus, rows })
    }

    /// Matrix on `Z_modulus^n` where `n` is the number of rows.
    pub fn from_rows(modulus: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let group = AbelianGroup::new(vec![modulus; rows.len()])?;
        Self::new(group, rows)
    }

    pub fn identity(group: AbelianGroup) -> Result<Self> {
        let n = group.rank();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Self::new(group, rows)
    }

    /// Parses a row-major JSON array of arrays.
    pub fn from_json(modulus: u64, s: &str) -> Result<Self> {
        let rows: Vec<Vec<u64>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_rows(modulus, rows)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `A - I`.
    pub fn minus_identity(&self) -> ResidueMatrix {
        let m = self.modulus;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| if i == j { (v + m - 1) % m } else { v })
                    .collect()
            })
            .collect();
        ResidueMatrix {
            group: self.group.clone(),
            modulus: m,
            rows,
        }
    }

    /// Reduces every entry modulo `m`, which must divide the current modulus.
    pub fn reduce(&self, m: u64) -> Result<ResidueMatrix> {
        if m < 2 || !self.modulus.is_multiple_of(m) {
            return Err(Error::Parse(format!("{m} does not divide {}", self.modulus)));
        }
        ResidueMatrix::from_rows(m, self.rows.clone())
    }

    /// Tabulates `x -> A x`.
    pub fn to_map(&self) -> Result<TableMap> {
        let m = self.modulus as u128;
        TableMap::from_fn(&self.group, |x| {
            let coords = self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(x.coords())
                        .fold(0u128, |acc, (&a, &v)| (acc + a as u128 * v as u128) % m)
                        as u64
                })
                .collect();
            Ok(GroupElement::new(coords))
        })
    }

    /// Determinant reduced into `[0, m)`, computed over the integers with
    /// fraction-free (Bareiss) elimination.
    pub fn det_mod(&self) -> Result<u64> {
        let det = bareiss_det(
            self.rows
                .iter()
                .map(|r| r.iter().map(|&v| v as i128).collect())
                .collect(),
        )?;
        Ok(det.rem_euclid(self.modulus as i128) as u64)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(is_unit(self.det_mod()?, self.modulus))
    }

    /// `A - I` is invertible, i.e. no nonzero vector is fixed.
    pub fn has_no_eigenvalue_one(&self) -> Result<bool> {
        self.minus_identity().is_invertible()
    }
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(Error::Overflow)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// `t -> a t` on the cyclic group `Z_n`.
pub fn multiplication_map(group: &AbelianGroup, a: u64) -> Result<TableMap> {
    if !group.is_cyclic_presentation() {
        return Err(Error::NotCyclic);
    }
    let n = group.order();
    if a >= n {
        return Err(Error::ResidueOutOfRange { value: a, modulus: n });
    }
    TableMap::from_fn(group, |x| group.scale(a, x))
}

/// Monic polynomial over `Z2`; bit `i` holds the coefficient of `t^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPolynomial {
    bits: u64,
}

impl BinaryPolynomial {
    /// Degree must be between 1 and 62.
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits < 2 || bits.leading_zeros() == 0 {
            return Err(Error::Parse(format!("polynomial bits {bits:#b} out of range")));
        }
        Ok(BinaryPolynomial { bits })
    }

    /// Coefficients listed from the constant term up; the last must be 1.
    pub fn from_coefficients(coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() > 63 {
            return Err(Error::Parse("degree too large".into()));
        }
        let mut bits = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("coefficient {c} is not 0 or 1"))),
            }
        }
        if coeffs.last() != Some(&1) {
            return Err(Error::Parse("polynomial must be monic".into()));
        }
        Self::from_bits(bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn degree(&self) -> u32 {
        63 - self.bits.leading_zeros()
    }

    pub fn coefficient(&self, i: u32) -> u8 {
        ((self.bits >> i) & 1) as u8
    }

    pub fn coefficients(&self) -> Vec<u8> {
        (0..=self.degree()).map(|i| self.coefficient(i)).collect()
    }

    /// Value at `t = 1` over `Z2`.
    pub fn eval_one(&self) -> u8 {
        (self.bits.count_ones() % 2) as u8
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        (1..=n / 2).all(|d| ((1u64 << d)..(1u64 << (d + 1))).all(|q| gf2_rem(self.bits, q) != 0))
    }

    /// Frobenius companion matrix with 0/1 entries, read modulo `modulus`
    /// (a power of two): ones on the subdiagonal and the coefficients
    /// `c_0, ..., c_{n-1}` in the last column.
    pub fn companion_matrix(&self, modulus: u64) -> Result<ResidueMatrix> {
        if !modulus.is_power_of_two() || modulus < 2 {
            return Err(Error::NotPowerOfTwo(modulus));
        }
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let n = self.degree() as usize;
        if n < 2 {
            return Err(Error::RankTooSmall(n as u64));
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == n - 1 {
                            u64::from(self.coefficient(i as u32))
                        } else {
                            u64::from(i == j + 1)
                        }
                    })
                    .collect()
            })
            .collect();
        ResidueMatrix::from_rows(modulus, rows)
    }
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..=self.degree()).rev().filter(|&i| self.coefficient(i) == 1) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for BinaryPolynomial {
    type Err = Error;

    /// Coefficient list from the constant term up, e.g. `"1,1,0,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coefficients(&coeffs)
    }
}

/// The irreducible polynomial of degree `n` over `Z2` with the smallest
/// integer encoding (bit `i` = coefficient of `t^i`).
pub fn irreducible_poly_z2(n: u32) -> Result<BinaryPolynomial> {
    if !(1..=62).contains(&n) {
        return Err(Error::RankTooSmall(n as u64));
    }
    ((1u64 << n)..(1u64 << (n + 1)))
        .map(|bits| BinaryPolynomial { bits })
        .find(BinaryPolynomial::is_irreducible)
        .ok_or(Error::NotIrreducible)
}

/// Number of endomorphisms: `prod_{i,j} gcd(d_i, d_j)`.
pub fn endomorphism_count(group: &AbelianGroup) -> Option<u64> {
    let d = group.moduli();
    d.iter()
        .flat_map(|a| d.iter().map(move |b| a.gcd(b)))
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// Lazily generated endomorphisms in lexicographic order of the tuple of
/// generator image indices (first generator slowest).
pub struct Endomorphisms {
    group: AbelianGroup,
    /// Admissible images of each standard generator, in index order.
    candidates: Vec<Vec<usize>>,
    cursor: Option<Vec<usize>>,
}

impl Endomorphisms {
    fn new(group: &AbelianGroup, budget: &SearchBudget) -> Result<Self> {
        group.enumerable_order(budget.max_table_order)?;
        match endomorphism_count(group) {
            Some(c) if c <= budget.max_endomorphisms => {}
            _ => {
                return Err(Error::BudgetExceeded(format!(
                    "group {group} has more than {} endomorphisms",
                    budget.max_endomorphisms
                )))
            }
        }
        let d = group.moduli();
        let candidates = d
            .iter()
            .map(|&di| {
                group
                    .elements()
                    .expect("order checked")
                    .enumerate()
                    .filter(|(_, y)| y.coords().iter().zip(d).all(|(&v, &dj)| (v as u128 * di as u128).is_multiple_of(dj as u128)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Endomorphisms {
            group: group.clone(),
            candidates,
            cursor: Some(vec![0; d.len()]),
        })
    }

    fn tabulate(&self, images: &[usize]) -> TableMap {
        let g = &self.group;
        let n = g.order() as usize;
        // multiples[i][k] = k * image_i
        let multiples: Vec<Vec<usize>> = images
            .iter()
            .zip(g.moduli())
            .map(|(&y, &d)| {
                let mut v = Vec::with_capacity(d as usize);
                let mut acc = 0;
                for _ in 0..d {
                    v.push(acc);
                    acc = g.add_idx(acc, y);
                }
                v
            })
            .collect();
        let table = (0..n)
            .map(|i| {
                let x = g.index_element(i).expect("in range");
                x.coords()
                    .iter()
                    .zip(&multiples)
                    .fold(0, |acc, (&c, m)| g.add_idx(acc, m[c as usize]))
            })
            .collect();
        TableMap::new(g.clone(), table).expect("valid table")
    }
}

impl Iterator for Endomorphisms {
    type Item = TableMap;

    fn next(&mut self) -> Option<TableMap> {
        let pos = self.cursor.as_ref()?.clone();
        let images: Vec<usize> = pos.iter().zip(&self.candidates).map(|(&k, c)| c[k]).collect();
        let map = self.tabulate(&images);
        // advance the odometer, last generator fastest
        let cur = self.cursor.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.candidates[i].len() {
                break;
            }
            cur[i] = 0;
        }
        Some(map)
    }
}

pub fn enumerate_endomorphisms(group: &AbelianGroup, budget: &SearchBudget) -> Result<Endomorphisms> {
    Endomorphisms::new(group, budget)
}

/// The bijective endomorphisms, in the same order.
pub fn enumerate_automorphisms(
    group: &AbelianGroup,
    budget: &SearchBudget,
) -> Result<impl Iterator<Item = TableMap>> {
    Ok(enumerate_endomorphisms(group, budget)?.filter(TableMap::is_bijection))
}
