//! Desk-scale sweeps that check each structural statement about
//! antiautomorphisms over every applicable group up to a maximum order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::budget::SearchBudget;
use crate::classify::{decide_antiautomorphism, primary_split, Status};
use crate::constructions::{elementary2_antiauto, homogeneous2_antiauto, z2_z4_antiauto};
use crate::error::{Error, Result};
use crate::group::{abelian_groups_up_to, AbelianGroup};
use crate::linear::enumerate_automorphisms;
use crate::map::TableMap;
use crate::search::{
    biantiauto_count_formula, count_antiautomorphisms, count_biantiautomorphisms_bruteforce,
    enumerate_antiautomorphisms, exists_antiautomorphism_search, verify_no_prime_order_fpf_automorphism,
};

/// The statements that can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Proposition {
    /// Even cyclic groups have no antiautomorphism.
    P2,
    /// Negation is an antiautomorphism iff there is no element of order 2.
    P5,
    /// A unique element of order 2 rules antiautomorphisms out; the group sum
    /// equals that element.
    P6,
    /// Direct sums of antiautomorphisms are antiautomorphisms.
    L7,
    /// Elementary abelian 2-groups of rank at least 2 admit antiautomorphisms.
    P9,
    /// `Z_{2^m}^n` with `n >= 2` admits a linear antiautomorphism.
    P10,
    /// `Z2 + Z4` admits an antiautomorphism but no linear one.
    P11,
    /// `Z_{2^d1} + ... + Z_{2^dk}` with distinct `d_i` has no fixed-point-free
    /// automorphism of prime order.
    P12,
    /// Closed-form count of linear antiautomorphisms of odd cyclic groups.
    TFormula,
    /// The three-case classification.
    TClassification,
}

impl Proposition {
    pub const ALL: [Proposition; 10] = [
        Proposition::P2,
        Proposition::P5,
        Proposition::P6,
        Proposition::L7,
        Proposition::P9,
        Proposition::P10,
        Proposition::P11,
        Proposition::P12,
        Proposition::TFormula,
        Proposition::TClassification,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Proposition::P2 => "P2",
            Proposition::P5 => "P5",
            Proposition::P6 => "P6",
            Proposition::L7 => "L7",
            Proposition::P9 => "P9",
            Proposition::P10 => "P10",
            Proposition::P11 => "P11",
            Proposition::P12 => "P12",
            Proposition::TFormula => "T-formula",
            Proposition::TClassification => "T-classification",
        }
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Proposition::ALL
            .into_iter()
            .find(|p| p.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    /// The check did not fit the budget.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportLine {
    pub subject: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub proposition: String,
    pub max_order: u64,
    pub lines: Vec<ReportLine>,
}

impl Report {
    fn count(&self, outcome: Outcome) -> usize {
        self.lines.iter().filter(|l| l.outcome == outcome).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Outcome::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Outcome::Skipped)
    }

    /// No failures and at least one check actually ran.
    pub fn ok(&self) -> bool {
        self.failed() == 0 && self.passed() > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = match l.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "SKIP",
            };
            writeln!(f, "{tag} {} {}", l.subject, l.detail)?;
        }
        write!(
            f,
            "{} max-order {}: {} passed, {} failed, {} skipped",
            self.proposition,
            self.max_order,
            self.passed(),
            self.failed(),
            self.skipped()
        )
    }
}

struct Lines(Vec<ReportLine>);

impl Lines {
    fn check(&mut self, subject: impl fmt::Display, ok: bool, detail: impl Into<String>) {
        self.0.push(ReportLine {
            subject: subject.to_string(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, subject: impl fmt::Display, why: impl fmt::Display) {
        self.0.push(ReportLine {
            subject: subject.to_string(),
            outcome: Outcome::Skipped,
            detail: why.to_string(),
        });
    }

    /// Records `Err(BudgetExceeded)` as skipped, other errors as failures.
    fn record<T>(&mut self, subject: impl fmt::Display, r: Result<T>, judge: impl FnOnce(T) -> (bool, String)) {
        match r {
            Ok(v) => {
                let (ok, detail) = judge(v);
                self.check(subject, ok, detail);
            }
            Err(e @ Error::BudgetExceeded(_)) => self.skip(subject, e),
            Err(e) => self.check(subject, false, e.to_string()),
        }
    }
}

/// Number of antiautomorphisms if the count fits the budget, otherwise
/// whether one exists.
enum Presence {
    Count(u64),
    Exists(bool),
}

impl Presence {
    fn any(&self) -> bool {
        match self {
            Presence::Count(c) => *c > 0,
            Presence::Exists(e) => *e,
        }
    }
}

impl fmt::Display for Presence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presence::Count(c) => write!(f, "count {c}"),
            Presence::Exists(true) => f.write_str("search found a witness"),
            Presence::Exists(false) => f.write_str("search exhausted"),
        }
    }
}

fn presence(group: &AbelianGroup, budget: &SearchBudget) -> Result<Presence> {
    if group.order() <= budget.max_count_order {
        count_antiautomorphisms(group, budget).map(Presence::Count)
    } else {
        exists_antiautomorphism_search(group, budget).map(|w| Presence::Exists(w.is_some()))
    }
}

/// 2-groups `Z_{2^d1} + ...` with `d1 < d2 < ...` of order at most `max_order`.
fn distinct_exponent_two_groups(max_order: u64) -> Vec<AbelianGroup> {
    let max_total = 63 - max_order.max(1).leading_zeros();
    let mut out = Vec::new();
    fn rec(next: u32, left: u32, prefix: &mut Vec<u64>, out: &mut Vec<AbelianGroup>) {
        if !prefix.is_empty() {
            out.push(AbelianGroup::new(prefix.clone()).expect("moduli >= 2"));
        }
        for d in next..=left {
            prefix.push(1 << d);
            rec(d + 1, left - d, prefix, out);
            prefix.pop();
        }
    }
    rec(1, max_total, &mut Vec::new(), &mut out);
    out.sort_by_key(|g| (g.order(), g.moduli().to_vec()));
    out
}

/// Runs the sweep for `prop` over every applicable group of order at most
/// `max_order`.
pub fn verify_proposition(prop: Proposition, max_order: u64, budget: &SearchBudget) -> Result<Report> {
    let mut lines = Lines(Vec::new());
    let groups = || abelian_groups_up_to(max_order.min(budget.max_table_order));
    match prop {
        Proposition::P2 => {
            for n in (2..=max_order).step_by(2) {
                let g = AbelianGroup::cyclic(n)?;
                lines.record(&g, presence(&g, budget), |p| (!p.any(), p.to_string()));
            }
        }
        Proposition::P5 => {
            for g in groups() {
                let inv = g.count_involutions();
                lines.record(&g, TableMap::negation(&g), |neg| {
                    let anti = neg.is_antiautomorphism();
                    (anti == (inv == 0), format!("involutions {inv}, negation antiautomorphism {anti}"))
                });
            }
        }
        Proposition::P6 => {
            for g in groups().into_iter().filter(|g| g.count_involutions() == 1) {
                let inv = g.unique_involution().expect("exactly one");
                match g.group_sum() {
                    Ok(sum) if sum == inv => {}
                    Ok(sum) => {
                        lines.check(&g, false, format!("group sum {sum} differs from involution {inv}"));
                        continue;
                    }
                    Err(e) => {
                        lines.skip(&g, e);
                        continue;
                    }
                }
                lines.record(&g, presence(&g, budget), |p| {
                    (!p.any(), format!("group sum = involution {inv}; {p}"))
                });
            }
        }
        Proposition::L7 => {
            let small = budget.with_max_solutions(Some(3));
            let with_witnesses: Vec<(AbelianGroup, Vec<TableMap>)> = abelian_groups_up_to(max_order / 2)
                .into_iter()
                .filter_map(|g| {
                    let ws: Vec<TableMap> = enumerate_antiautomorphisms(&g, &small).ok()?.collect();
                    (!ws.is_empty()).then_some((g, ws))
                })
                .collect();
            for (g1, w1) in &with_witnesses {
                for (g2, w2) in &with_witnesses {
                    if g1.order() * g2.order() > max_order {
                        continue;
                    }
                    let mut ok = true;
                    for a in w1 {
                        for b in w2 {
                            ok &= TableMap::direct_sum(&[a.clone(), b.clone()])
                                .map(|s| s.is_antiautomorphism())
                                .unwrap_or(false);
                        }
                    }
                    let subject = format!("({g1}) + ({g2})");
                    lines.check(subject, ok, format!("{} sums checked", w1.len() * w2.len()));
                }
            }
        }
        Proposition::P9 => {
            let mut r = 2u32;
            while r < 63 && (1u64 << r) <= max_order {
                let g = AbelianGroup::new(vec![2; r as usize])?;
                lines.record(&g, elementary2_antiauto(r as u64), |f| {
                    (f.is_antiautomorphism() && f.group() == &g, "direct-sum construction".into())
                });
                r += 1;
            }
            for (moduli, expected) in [(vec![2u64, 2], 8u64), (vec![2, 2, 2], 384)] {
                let g = AbelianGroup::new(moduli)?;
                if g.order() <= max_order {
                    lines.record(&g, count_antiautomorphisms(&g, budget), |c| {
                        (c == expected, format!("count {c}, expected {expected}"))
                    });
                }
            }
        }
        Proposition::P10 => {
            for m in 1u32..63 {
                if (1u64 << (2 * m)) > max_order {
                    break;
                }
                for n in 2u32.. {
                    if m * n >= 63 || (1u64 << (m * n)) > max_order {
                        break;
                    }
                    let g = AbelianGroup::new(vec![1u64 << m; n as usize])?;
                    lines.record(&g, homogeneous2_antiauto(m, n, budget.max_table_order), |f| {
                        (
                            f.is_antiautomorphism() && f.is_linear(),
                            "companion matrix map is a linear antiautomorphism".into(),
                        )
                    });
                }
            }
        }
        Proposition::P11 => {
            if max_order >= 8 {
                let g = AbelianGroup::new(vec![2, 4])?;
                lines.record("table", z2_z4_antiauto(), |f| {
                    (f.is_antiautomorphism() && !f.is_linear(), "antiautomorphism, not linear".into())
                });
                lines.record(
                    "Aut(2,4)",
                    enumerate_automorphisms(&g, budget).map(|it| it.count()),
                    |c| (c == 8, format!("{c} automorphisms")),
                );
                lines.record("linear", count_biantiautomorphisms_bruteforce(&g, budget), |c| {
                    (c == 0, format!("{c} biantiautomorphisms"))
                });
                lines.record("search", exists_antiautomorphism_search(&g, budget), |w| {
                    (w.is_some(), "search finds a witness".into())
                });
            }
        }
        Proposition::P12 => {
            for g in distinct_exponent_two_groups(max_order) {
                lines.record(&g, verify_no_prime_order_fpf_automorphism(&g, budget), |ok| {
                    (ok, "no fixed-point-free automorphism of prime order".into())
                });
            }
        }
        Proposition::TFormula => {
            for n in (3..=max_order).step_by(2) {
                let g = AbelianGroup::cyclic(n)?;
                let formula = biantiauto_count_formula(n)?;
                lines.record(&g, count_biantiautomorphisms_bruteforce(&g, budget), |c| {
                    (c == formula, format!("brute force {c}, formula {formula}"))
                });
            }
        }
        Proposition::TClassification => {
            for g in groups() {
                let v = decide_antiautomorphism(&g, budget);
                let inv = g.count_involutions();
                let homogeneous_two = primary_split(&g)?
                    .two_part
                    .is_some_and(|t| t.rank() >= 2 && t.homogeneous_modulus().is_some());
                let expected = if inv == 0 || homogeneous_two {
                    Some(Status::Exists)
                } else if inv == 1 {
                    Some(Status::NotExists)
                } else {
                    None
                };
                let witness_ok = v.witness.as_ref().is_none_or(TableMap::is_antiautomorphism);
                let ok = witness_ok && expected.is_none_or(|e| e == v.status);
                let detail = match expected {
                    Some(e) => format!("expected {e}, got {v}"),
                    None => format!("not covered; got {v}"),
                };
                lines.check(&g, ok, detail);
            }
        }
    }
    Ok(Report {
        proposition: prop.id().to_string(),
        max_order,
        lines: lines.0,
    })
}
