//! Deciding whether a group admits an antiautomorphism (or a linear one),
//! with a verified witness whenever the answer is yes.
//!
//! The antiautomorphism decision runs these cases in order:
//!
//! 1. no element of order 2: negation works;
//! 2. exactly one element of order 2: none exists;
//! 3. the 2-primary part is `Z_{2^m}^n` with `n >= 2` (up to reordering): the
//!    elementary 2-group tables (`m = 1`) or a companion matrix (`m >= 2`),
//!    direct-summed with negation on the odd part;
//! 4. the 2-primary part is `Z2 + Z4`: the explicit table, plus odd negation;
//! 5. otherwise a budgeted search.
//!
//! Witnesses are built on the primary decomposition and pulled back to the
//! caller's presentation, then checked again before being returned.

use std::fmt;

use serde::Serialize;

use crate::budget::SearchBudget;
use crate::constructions::{elementary2_antiauto, homogeneous2_antiauto, negation, z2_z4_antiauto};
use crate::error::Result;
use crate::group::{AbelianGroup, GroupIsomorphism, MAX_DENSE_ORDER};
use crate::linear::enumerate_automorphisms;
use crate::map::TableMap;
use crate::search::exists_antiautomorphism_search;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Exists,
    NotExists,
    Unknown,
}

/// How a witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "negation")]
    Negation,
    #[serde(rename = "elementary2")]
    Elementary2,
    #[serde(rename = "companion2")]
    Companion2,
    #[serde(rename = "explicit-table-Z2Z4")]
    ExplicitTableZ2Z4,
    #[serde(rename = "direct-sum")]
    DirectSum,
    #[serde(rename = "search")]
    Search,
}

/// Why no witness exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    #[serde(rename = "unique-involution")]
    UniqueInvolution,
    #[serde(rename = "search-exhausted")]
    SearchExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exists => "Exists",
            Status::NotExists => "NotExists",
            Status::Unknown => "Unknown",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Negation => "negation",
            Method::Elementary2 => "elementary2",
            Method::Companion2 => "companion2",
            Method::ExplicitTableZ2Z4 => "explicit-table-Z2Z4",
            Method::DirectSum => "direct-sum",
            Method::Search => "search",
        })
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::UniqueInvolution => "unique-involution",
            Reason::SearchExhausted => "search-exhausted",
        })
    }
}

/// Outcome of a decision. `Exists` always carries a verified witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub method: Option<Method>,
    /// For `direct-sum`, the methods used on the 2-part and the odd part.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Method>,
    pub reason: Option<Reason>,
    pub witness: Option<TableMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_note: Option<String>,
}

impl Verdict {
    fn exists(method: Method, parts: Vec<Method>, witness: TableMap) -> Verdict {
        Verdict {
            status: Status::Exists,
            method: Some(method),
            parts,
            reason: None,
            witness: Some(witness),
            budget_note: None,
        }
    }

    fn not_exists(reason: Reason) -> Verdict {
        Verdict {
            status: Status::NotExists,
            method: None,
            parts: Vec::new(),
            reason: Some(reason),
            witness: None,
            budget_note: None,
        }
    }

    fn unknown(note: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Unknown,
            method: None,
            parts: Vec::new(),
            reason: None,
            witness: None,
            budget_note: Some(note.into()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts always serialize")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(m) = self.method {
            write!(f, " method={m}")?;
            if !self.parts.is_empty() {
                let parts: Vec<String> = self.parts.iter().map(Method::to_string).collect();
                write!(f, " ({})", parts.join(" + "))?;
            }
        }
        if let Some(r) = self.reason {
            write!(f, " reason={r}")?;
        }
        if let Some(note) = &self.budget_note {
            write!(f, " note={note:?}")?;
        }
        Ok(())
    }
}

/// `G ≅ T ⊕ O` with `T` the 2-primary part (moduli ascending) and `O` the
/// odd part, either of which may be trivial.
pub struct PrimarySplit {
    pub iso: GroupIsomorphism,
    pub two_part: Option<AbelianGroup>,
    pub odd_part: Option<AbelianGroup>,
}

pub fn primary_split(group: &AbelianGroup) -> Result<PrimarySplit> {
    let crt = group.crt_decompose()?;
    let moduli = crt.target.moduli().to_vec();
    let mut perm: Vec<usize> = (0..moduli.len()).collect();
    perm.sort_by_key(|&i| {
        let d = moduli[i];
        if d % 2 == 0 {
            (0, d)
        } else {
            (1, 0)
        }
    });
    let iso = crt.then(&crt.target.permute_coordinates(&perm)?)?;
    let (two, odd): (Vec<u64>, Vec<u64>) = iso.target.moduli().iter().partition(|&&d| d % 2 == 0);
    Ok(PrimarySplit {
        iso,
        two_part: (!two.is_empty()).then(|| AbelianGroup::new(two)).transpose()?,
        odd_part: (!odd.is_empty()).then(|| AbelianGroup::new(odd)).transpose()?,
    })
}

fn finish(method: Method, parts: Vec<Method>, witness: TableMap) -> Verdict {
    if witness.is_antiautomorphism() {
        Verdict::exists(method, parts, witness)
    } else {
        Verdict::unknown(format!("{method} witness failed verification"))
    }
}

/// Outcome of handling the 2-part.
enum TwoPart {
    Witness(Method, TableMap),
    Absent,
}

fn decide_two_part(two: &AbelianGroup, budget: &SearchBudget) -> Result<TwoPart> {
    let moduli = two.moduli();
    let n = moduli.len() as u32;
    if let (Some(m), true) = (two.homogeneous_modulus(), n >= 2) {
        let exp = m.trailing_zeros();
        return Ok(if exp == 1 {
            TwoPart::Witness(Method::Elementary2, elementary2_antiauto(n as u64)?)
        } else {
            TwoPart::Witness(
                Method::Companion2,
                homogeneous2_antiauto(exp, n, budget.max_table_order)?,
            )
        });
    }
    if moduli == [2, 4] {
        return Ok(TwoPart::Witness(Method::ExplicitTableZ2Z4, z2_z4_antiauto()?));
    }
    Ok(match exists_antiautomorphism_search(two, budget)? {
        Some(w) => TwoPart::Witness(Method::Search, w),
        None => TwoPart::Absent,
    })
}

fn decide_split(group: &AbelianGroup, budget: &SearchBudget) -> Result<Verdict> {
    group.enumerable_order(budget.max_table_order)?;
    let split = primary_split(group)?;
    let two = split.two_part.as_ref().expect("group has an involution");
    let (method, two_witness) = match decide_two_part(two, budget)? {
        TwoPart::Witness(m, w) => (m, w),
        TwoPart::Absent => {
            // The 2-part alone has none; only a search on the whole group
            // can settle the mixed case.
            if split.odd_part.is_none() {
                return Ok(Verdict::not_exists(Reason::SearchExhausted));
            }
            return Ok(match exists_antiautomorphism_search(group, budget)? {
                Some(w) => finish(Method::Search, Vec::new(), w),
                None => Verdict::not_exists(Reason::SearchExhausted),
            });
        }
    };
    let (method, parts, on_split) = match &split.odd_part {
        None => (method, Vec::new(), two_witness),
        Some(odd) => (
            Method::DirectSum,
            vec![method, Method::Negation],
            TableMap::direct_sum(&[two_witness, negation(odd)?])?,
        ),
    };
    Ok(finish(method, parts, on_split.pull_back(&split.iso)?))
}

fn negation_verdict(group: &AbelianGroup) -> Verdict {
    match group.enumerable_order(MAX_DENSE_ORDER).and_then(|_| negation(group)) {
        Ok(w) => finish(Method::Negation, Vec::new(), w),
        Err(e) => Verdict::unknown(e.to_string()),
    }
}

/// Decides whether `group` admits an antiautomorphism.
pub fn decide_antiautomorphism(group: &AbelianGroup, budget: &SearchBudget) -> Verdict {
    match group.count_involutions() {
        0 => negation_verdict(group),
        1 => Verdict::not_exists(Reason::UniqueInvolution),
        _ => decide_split(group, budget).unwrap_or_else(|e| Verdict::unknown(e.to_string())),
    }
}

/// Decides whether `group` admits an antiautomorphism that is also an
/// automorphism.
pub fn decide_biantiautomorphism(group: &AbelianGroup, budget: &SearchBudget) -> Verdict {
    match group.count_involutions() {
        0 => negation_verdict(group),
        1 => Verdict::not_exists(Reason::UniqueInvolution),
        _ => match enumerate_automorphisms(group, budget) {
            Ok(mut autos) => match autos.find(TableMap::is_antimorphism) {
                Some(w) => finish(Method::Search, Vec::new(), w),
                None => Verdict::not_exists(Reason::SearchExhausted),
            },
            Err(e) => Verdict::unknown(e.to_string()),
        },
    }
}
