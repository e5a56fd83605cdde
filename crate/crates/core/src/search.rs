//! Exhaustive search for antiautomorphisms, brute-force biantiautomorphism
//! counts, and the closed-form counts and bounds they are checked against.
//!
//! The search assigns `f(0), f(1), ...` in index order while tracking two
//! bitmasks: images still unused and differences `x - f(x)` still unused.
//! A branch dies as soon as either constraint is violated, so both
//! bijectivity conditions are pruned at every node.

use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{factorize, is_prime, is_unit};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::linear::{endomorphism_count, enumerate_automorphisms};
use crate::map::TableMap;

pub use crate::arith::{euler_phi, subfactorial};

/// Masks are `u128`, so no search runs on groups larger than this.
pub const MAX_SEARCH_ORDER: u64 = 128;

type Mask = u128;

#[derive(Debug)]
struct Tables {
    group: AbelianGroup,
    n: usize,
    /// `sub[x * n + y] = index(x - y)`.
    sub: Vec<u8>,
    neg: Vec<u8>,
    chunks: usize,
    /// `shift[(x * chunks + c) * 256 + b]` is the mask of `x + s` over the
    /// elements `s = 8c + i` with bit `i` set in `b`.
    shift: Vec<Mask>,
}

impl Tables {
    fn new(group: &AbelianGroup, cap: u64) -> Result<Arc<Self>> {
        let cap = cap.min(MAX_SEARCH_ORDER);
        if group.order() > cap {
            return Err(Error::BudgetExceeded(format!(
                "group {group} has order {} above the search cap {cap}",
                group.order()
            )));
        }
        let n = group.order() as usize;
        let sub: Vec<u8> = group.sub_table()?.into_iter().map(|v| v as u8).collect();
        let neg = (0..n).map(|x| sub[x]).collect();
        let chunks = n.div_ceil(8);
        let mut shift = vec![0; n * chunks * 256];
        for x in 0..n {
            for c in 0..chunks {
                for b in 0..256usize {
                    let mut m: Mask = 0;
                    for i in (0..8).filter(|i| b >> i & 1 == 1) {
                        let s = 8 * c + i;
                        if s < n {
                            m |= 1 << group.add_idx(x, s);
                        }
                    }
                    shift[(x * chunks + c) * 256 + b] = m;
                }
            }
        }
        Ok(Arc::new(Tables {
            group: group.clone(),
            n,
            sub,
            neg,
            chunks,
            shift,
        }))
    }

    fn full(&self) -> Mask {
        if self.n == 128 {
            Mask::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    /// `{x + s : s in set}`.
    #[inline]
    fn translate(&self, x: usize, set: Mask) -> Mask {
        let base = x * self.chunks * 256;
        let mut out = 0;
        for c in 0..self.chunks {
            let b = (set >> (8 * c)) as usize & 0xff;
            out |= self.shift[base + c * 256 + b];
        }
        out
    }
}

/// Counting state for the most-constrained-first search. Differences are
/// tracked negated so that the images still allowed for `x` are
/// `free_img & (x + neg_free_diff)`.
#[derive(Clone, Copy)]
struct CountState {
    unassigned: Mask,
    free_img: Mask,
    neg_free_diff: Mask,
}

impl CountState {
    fn root(t: &Tables) -> Self {
        CountState {
            unassigned: t.full(),
            free_img: t.full(),
            neg_free_diff: t.full(),
        }
    }

    fn assign(self, t: &Tables, x: usize, y: usize) -> Option<Self> {
        let d = t.sub[x * t.n + y] as usize;
        let nd = t.neg[d] as usize;
        if self.unassigned & (1 << x) == 0 || self.free_img & (1 << y) == 0 || self.neg_free_diff & (1 << nd) == 0 {
            return None;
        }
        Some(CountState {
            unassigned: self.unassigned & !(1 << x),
            free_img: self.free_img & !(1 << y),
            neg_free_diff: self.neg_free_diff & !(1 << nd),
        })
    }

    fn candidates(&self, t: &Tables, x: usize) -> Mask {
        self.free_img & t.translate(x, self.neg_free_diff)
    }

    /// The unassigned element with the fewest admissible images, with those
    /// images. `None` when some element has no admissible image left.
    fn branch(&self, t: &Tables) -> Option<(usize, Mask)> {
        let mut best: Option<(usize, Mask)> = None;
        let mut best_k = u32::MAX;
        let mut rest = self.unassigned;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cand = self.candidates(t, x);
            let k = cand.count_ones();
            if k == 0 {
                return None;
            }
            if k < best_k {
                best_k = k;
                best = Some((x, cand));
                if k == 1 {
                    break;
                }
            }
        }
        best
    }

    fn count(self, t: &Tables) -> u64 {
        if self.unassigned == 0 {
            return 1;
        }
        let Some((x, mut cand)) = self.branch(t) else {
            return 0;
        };
        let mut total = 0;
        while cand != 0 {
            let y = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            total += self.assign(t, x, y).expect("candidate is admissible").count(t);
        }
        total
    }
}

enum Step {
    Solution,
    Exhausted,
    NodeLimit,
}

/// Depth-first search state; `assign[x]` is the image of `x`.
struct Search {
    tables: Arc<Tables>,
    assign: Vec<usize>,
    remaining: Vec<Mask>,
    free_img: Mask,
    free_diff: Mask,
    base: usize,
    depth: usize,
    nodes: u64,
    finished: bool,
}

impl Search {
    /// Search below a fixed prefix `f(0..prefix.len())`. Returns `None` when
    /// the prefix already violates a constraint.
    fn with_prefix(tables: Arc<Tables>, prefix: &[usize]) -> Option<Self> {
        let n = tables.n;
        let mut free_img = tables.full();
        let mut free_diff = tables.full();
        let mut assign = vec![0; n];
        for (x, &y) in prefix.iter().enumerate() {
            let d = tables.sub[x * n + y] as usize;
            if free_img & (1 << y) == 0 || free_diff & (1 << d) == 0 {
                return None;
            }
            free_img &= !(1 << y);
            free_diff &= !(1 << d);
            assign[x] = y;
        }
        let base = prefix.len();
        let mut remaining = vec![0; n + 1];
        remaining[base] = free_img;
        Some(Search {
            tables,
            assign,
            remaining,
            free_img,
            free_diff,
            base,
            depth: base,
            nodes: 0,
            finished: false,
        })
    }

    /// Undo the assignment at `depth - 1`. Returns false once the prefix is
    /// reached.
    fn backtrack(&mut self) -> bool {
        if self.depth == self.base {
            self.finished = true;
            return false;
        }
        self.depth -= 1;
        let x = self.depth;
        let y = self.assign[x];
        let d = self.tables.sub[x * self.tables.n + y] as usize;
        self.free_img |= 1 << y;
        self.free_diff |= 1 << d;
        true
    }

    fn next(&mut self, node_limit: Option<u64>) -> Step {
        let n = self.tables.n;
        if self.finished {
            return Step::Exhausted;
        }
        if self.depth == n {
            // resume after a reported solution
            if !self.backtrack() {
                return Step::Exhausted;
            }
        }
        loop {
            let cand = self.remaining[self.depth];
            if cand == 0 {
                if !self.backtrack() {
                    return Step::Exhausted;
                }
                continue;
            }
            let y = cand.trailing_zeros() as usize;
            self.remaining[self.depth] = cand & (cand - 1);
            let x = self.depth;
            let d = self.tables.sub[x * n + y] as usize;
            if self.free_diff & (1 << d) == 0 {
                continue;
            }
            self.nodes += 1;
            if let Some(limit) = node_limit {
                if self.nodes > limit {
                    return Step::NodeLimit;
                }
            }
            self.assign[x] = y;
            self.free_img &= !(1 << y);
            self.free_diff &= !(1 << d);
            self.depth += 1;
            if self.depth == n {
                return Step::Solution;
            }
            self.remaining[self.depth] = self.free_img;
        }
    }

    fn count(mut self) -> u64 {
        let mut c = 0;
        while let Step::Solution = self.next(None) {
            c += 1;
        }
        c
    }

    fn current_map(&self) -> TableMap {
        TableMap::new(self.tables.group.clone(), self.assign.clone()).expect("complete assignment")
    }
}

/// Groups with at most this many endomorphisms use automorphism orbits to
/// merge root branches.
const SYMMETRY_ENDOMORPHISM_LIMIT: u64 = 1 << 16;

/// Root branches of the reduced search as `(image of pivot, multiplicity)`.
///
/// With `f(0) = 0` fixed, conjugating by an automorphism `a` that fixes the
/// pivot `e` sends the solutions with `f(e) = y` bijectively onto those with
/// `f(e) = a(y)`. Branches in one orbit of the stabilizer therefore have the
/// same count. The involution `f -> id - f` also preserves solutions and
/// sends `f(e) = y` to `f(e) = e - y`, merging those orbits in pairs. Only
/// the smallest image of each merged orbit is searched.
fn root_branches(group: &AbelianGroup, t: &Tables, start: &CountState, pivot: usize) -> Vec<(usize, u64)> {
    let cand = start.candidates(t, pivot);
    let images: Vec<usize> = (0..t.n).filter(|&y| cand >> y & 1 == 1).collect();
    let stabilizer: Vec<TableMap> = match endomorphism_count(group) {
        Some(c) if c <= SYMMETRY_ENDOMORPHISM_LIMIT => {
            let budget = SearchBudget {
                max_endomorphisms: SYMMETRY_ENDOMORPHISM_LIMIT,
                ..SearchBudget::default()
            };
            enumerate_automorphisms(group, &budget)
                .map(|it| it.filter(|a| a.table()[pivot] == pivot).collect())
                .unwrap_or_default()
        }
        _ => Vec::new(),
    };
    let mut seen: Mask = 0;
    let mut out = Vec::new();
    for &y in &images {
        if seen >> y & 1 == 1 {
            continue;
        }
        let mirror = t.sub[pivot * t.n + y] as usize;
        let mut orbit: Mask = 1 << y | 1 << mirror;
        for a in &stabilizer {
            orbit |= 1 << a.table()[y] | 1 << a.table()[mirror];
        }
        seen |= orbit;
        out.push((y, u64::from(orbit.count_ones())));
    }
    out
}

/// Exact number of antiautomorphisms, using the current rayon pool.
///
/// Translation `f -> f + b` permutes solutions and changes `f(0)`, so every
/// value of `f(0)` carries the same number of solutions; only `f(0) = 0` is
/// searched. The image of the pivot element (index 1) is then split into
/// automorphism orbits, see [`root_branches`]. Below the root the search
/// always branches on the unassigned element with the fewest admissible
/// images. Root branches run in parallel and are summed in branch order.
pub fn count_antiautomorphisms(group: &AbelianGroup, budget: &SearchBudget) -> Result<u64> {
    let tables = Tables::new(group, budget.max_count_order)?;
    let t = &*tables;
    let Some(start) = CountState::root(t).assign(t, 0, 0) else {
        return Ok(0);
    };
    let pivot = 1;
    let branches = root_branches(group, t, &start, pivot);
    let counts: Vec<u64> = branches
        .into_par_iter()
        .map(|(y, weight)| weight * start.assign(t, pivot, y).expect("candidate is admissible").count(t))
        .collect();
    Ok(counts.iter().sum::<u64>() * t.n as u64)
}

/// [`count_antiautomorphisms`] on a dedicated pool of `jobs` workers.
pub fn count_antiautomorphisms_with_jobs(
    group: &AbelianGroup,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<u64> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::BudgetExceeded(format!("cannot start worker pool: {e}")))?;
    pool.install(|| count_antiautomorphisms(group, budget))
}

/// Single-threaded count without the translation reduction; every solution
/// is visited. Used to cross-check the reduced count.
pub fn count_antiautomorphisms_plain(group: &AbelianGroup, budget: &SearchBudget) -> Result<u64> {
    let tables = Tables::new(group, budget.max_count_order)?;
    Ok(Search::with_prefix(tables, &[]).map(Search::count).unwrap_or(0))
}

/// Streams every antiautomorphism in lexicographic order of its table.
pub struct Antiautomorphisms {
    search: Search,
    limit: Option<u64>,
    emitted: u64,
}

impl Iterator for Antiautomorphisms {
    type Item = TableMap;

    fn next(&mut self) -> Option<TableMap> {
        if self.limit.is_some_and(|l| self.emitted >= l) {
            return None;
        }
        match self.search.next(None) {
            Step::Solution => {
                self.emitted += 1;
                Some(self.search.current_map())
            }
            _ => None,
        }
    }
}

/// All antiautomorphisms, up to `budget.max_solutions`. Unlimited streams are
/// held to the counting cap, limited ones to the existence cap.
pub fn enumerate_antiautomorphisms(group: &AbelianGroup, budget: &SearchBudget) -> Result<Antiautomorphisms> {
    let cap = match budget.max_solutions {
        Some(_) => budget.max_exists_order,
        None => budget.max_count_order,
    };
    let tables = Tables::new(group, cap)?;
    let search = Search::with_prefix(tables, &[]).expect("empty prefix is valid");
    Ok(Antiautomorphisms {
        search,
        limit: budget.max_solutions,
        emitted: 0,
    })
}

/// The lexicographically first antiautomorphism, or `None` once the space is
/// exhausted. Running out of nodes is a budget error, never an absence.
pub fn exists_antiautomorphism_search(group: &AbelianGroup, budget: &SearchBudget) -> Result<Option<TableMap>> {
    let tables = Tables::new(group, budget.max_exists_order)?;
    let mut search = Search::with_prefix(tables, &[]).expect("empty prefix is valid");
    match search.next(budget.max_search_nodes) {
        Step::Solution => Ok(Some(search.current_map())),
        Step::Exhausted => Ok(None),
        Step::NodeLimit => Err(Error::BudgetExceeded(format!(
            "search on {group} exceeded {} nodes",
            budget.max_search_nodes.unwrap_or(0)
        ))),
    }
}

/// Automorphisms that are antiautomorphisms, by enumeration.
pub fn count_biantiautomorphisms_bruteforce(group: &AbelianGroup, budget: &SearchBudget) -> Result<u64> {
    Ok(enumerate_automorphisms(group, budget)?
        .filter(TableMap::is_antimorphism)
        .count() as u64)
}

fn require_odd(n: u64) -> Result<()> {
    if n.is_multiple_of(2) {
        Err(Error::EvenInput(n))
    } else if n < 3 {
        Err(Error::NotOdd(n))
    } else {
        Ok(())
    }
}

/// `prod_p p^(a-1) (p - 2)` over the prime powers `p^a` exactly dividing `n`.
pub fn biantiauto_count_formula(n: u64) -> Result<u64> {
    require_odd(n)?;
    factorize(n).into_iter().try_fold(1u64, |acc, (p, a)| {
        acc.checked_mul(p.pow(a - 1) * (p - 2)).ok_or(Error::Overflow)
    })
}

/// `prod_p (p^(2a) - 2 p^(2a-1))` over the prime powers of an odd `n`.
pub fn antiauto_lower_bound(n: u64) -> Result<u64> {
    require_odd(n)?;
    factorize(n).into_iter().try_fold(1u64, |acc, (p, a)| {
        let term = p
            .checked_pow(2 * a - 1)
            .and_then(|q| q.checked_mul(p - 2))
            .ok_or(Error::Overflow)?;
        acc.checked_mul(term).ok_or(Error::Overflow)
    })
}

/// `!(p - 1) * p` for an odd prime `p`.
pub fn antiauto_upper_bound_prime(p: u64) -> Result<u128> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let k = u32::try_from(p - 1).map_err(|_| Error::Overflow)?;
    subfactorial(k)?
        .checked_mul(p as u128)
        .ok_or(Error::Overflow)
}

fn prime_power(p: u64, alpha: u32) -> Result<u64> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 {
        return Err(Error::RankTooSmall(0));
    }
    p.checked_pow(alpha).ok_or(Error::Overflow)
}

/// `p^a - 2 p^(a-1)`.
pub fn count_valid_multipliers_closed_form(p: u64, alpha: u32) -> Result<u64> {
    let q = prime_power(p, alpha)?;
    Ok(q - 2 * (q / p))
}

/// `#{a in [2, p^a - 1] : gcd(a, p^a) = gcd(a - 1, p^a) = 1}` by scanning.
pub fn count_valid_multipliers_scan(p: u64, alpha: u32) -> Result<u64> {
    let q = prime_power(p, alpha)?;
    Ok((2..q).filter(|&a| is_unit(a, q) && is_unit(a - 1, q)).count() as u64)
}

/// Multipliers `a` for which `t -> a t` is a biantiautomorphism of
/// `Z_{p^alpha}`; the closed form and the scan must agree.
pub fn count_valid_multipliers(p: u64, alpha: u32) -> Result<u64> {
    let closed = count_valid_multipliers_closed_form(p, alpha)?;
    let scan = count_valid_multipliers_scan(p, alpha)?;
    if closed != scan {
        return Err(Error::UnverifiedWitness("multiplier closed form disagrees with scan"));
    }
    Ok(closed)
}

/// True iff no automorphism is both fixed-point-free and of prime order.
pub fn verify_no_prime_order_fpf_automorphism(group: &AbelianGroup, budget: &SearchBudget) -> Result<bool> {
    for f in enumerate_automorphisms(group, budget)? {
        if f.is_fixed_point_free() && is_prime(f.map_order()?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> AbelianGroup {
        AbelianGroup::new(m.to_vec()).unwrap()
    }

    /// Brute force over every permutation.
    fn permutation_oracle(group: &AbelianGroup) -> u64 {
        fn rec(pos: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, group: &AbelianGroup, count: &mut u64) {
            let n = used.len();
            if pos == n {
                let f = TableMap::new(group.clone(), perm.clone()).unwrap();
                if f.difference_map().is_bijection() {
                    *count += 1;
                }
                return;
            }
            for y in 0..n {
                if !used[y] {
                    used[y] = true;
                    perm.push(y);
                    rec(pos + 1, perm, used, group, count);
                    perm.pop();
                    used[y] = false;
                }
            }
        }
        let n = group.order() as usize;
        let mut count = 0;
        rec(0, &mut Vec::new(), &mut vec![false; n], group, &mut count);
        count
    }

    #[test]
    fn counts_match_permutation_oracle() {
        let budget = SearchBudget::default();
        for m in [&[2u64][..], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[2, 4], &[2, 2, 2], &[8]] {
            let group = g(m);
            let oracle = permutation_oracle(&group);
            assert_eq!(count_antiautomorphisms(&group, &budget).unwrap(), oracle, "{group}");
            assert_eq!(count_antiautomorphisms_plain(&group, &budget).unwrap(), oracle, "{group}");
        }
    }

    #[test]
    fn known_counts() {
        let budget = SearchBudget::default();
        assert_eq!(count_antiautomorphisms(&g(&[2, 2]), &budget).unwrap(), 8);
        assert_eq!(count_antiautomorphisms(&g(&[2, 2, 2]), &budget).unwrap(), 384);
        assert_eq!(count_antiautomorphisms(&g(&[3]), &budget).unwrap(), 3);
        assert_eq!(count_antiautomorphisms(&g(&[4]), &budget).unwrap(), 0);
    }

    #[test]
    fn count_budget() {
        let budget = SearchBudget::default();
        assert!(matches!(
            count_antiautomorphisms(&g(&[17]), &budget),
            Err(Error::BudgetExceeded(_))
        ));
        let big = budget.with_search_order(1000);
        assert!(matches!(
            exists_antiautomorphism_search(&g(&[2, 2, 2, 2, 2, 2, 2, 2]), &big),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn enumeration() {
        let budget = SearchBudget::default();
        let klein: Vec<_> = enumerate_antiautomorphisms(&g(&[2, 2]), &budget).unwrap().collect();
        assert_eq!(klein.len(), 8);
        assert!(klein.iter().all(TableMap::is_antiautomorphism));
        assert!(klein.windows(2).all(|w| w[0].table() < w[1].table()));

        assert_eq!(enumerate_antiautomorphisms(&g(&[6]), &budget).unwrap().count(), 0);
        let limited = budget.with_max_solutions(Some(3));
        assert_eq!(enumerate_antiautomorphisms(&g(&[2, 2, 2]), &limited).unwrap().count(), 3);
    }

    #[test]
    fn existence() {
        let budget = SearchBudget::default();
        let w = exists_antiautomorphism_search(&g(&[2, 4]), &budget).unwrap().unwrap();
        assert!(w.is_antiautomorphism());
        assert_eq!(exists_antiautomorphism_search(&g(&[8]), &budget).unwrap(), None);
        assert_eq!(exists_antiautomorphism_search(&g(&[2]), &budget).unwrap(), None);
        let tight = SearchBudget {
            max_search_nodes: Some(5),
            ..budget
        };
        assert!(exists_antiautomorphism_search(&g(&[16]), &tight).is_err());
    }

    #[test]
    fn biantiautomorphisms() {
        let budget = SearchBudget::default();
        assert_eq!(count_biantiautomorphisms_bruteforce(&g(&[2, 4]), &budget).unwrap(), 0);
        assert_eq!(count_biantiautomorphisms_bruteforce(&g(&[9]), &budget).unwrap(), 3);
        assert_eq!(count_biantiautomorphisms_bruteforce(&g(&[3]), &budget).unwrap(), 1);
    }

    #[test]
    fn formulas() {
        assert_eq!(biantiauto_count_formula(9).unwrap(), 3);
        assert_eq!(biantiauto_count_formula(15).unwrap(), 3);
        assert_eq!(biantiauto_count_formula(7).unwrap(), 5);
        assert_eq!(biantiauto_count_formula(8), Err(Error::EvenInput(8)));

        assert_eq!(antiauto_lower_bound(9).unwrap(), 27);
        assert_eq!(antiauto_lower_bound(15).unwrap(), 45);
        assert_eq!(antiauto_lower_bound(3).unwrap(), 3);
        assert_eq!(subfactorial(4).unwrap(), 9);
        assert_eq!(antiauto_upper_bound_prime(5).unwrap(), 45);
        assert_eq!(antiauto_upper_bound_prime(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn multipliers() {
        assert_eq!(count_valid_multipliers(3, 2).unwrap(), 3);
        assert_eq!(count_valid_multipliers(5, 1).unwrap(), 3);
        assert_eq!(count_valid_multipliers(7, 1).unwrap(), 5);
        assert_eq!(count_valid_multipliers(4, 1), Err(Error::NotPrime(4)));
        for p in [3u64, 5, 7, 11, 13] {
            let mut alpha = 1;
            while p.pow(alpha) <= 2187 {
                assert_eq!(
                    count_valid_multipliers_closed_form(p, alpha).unwrap(),
                    count_valid_multipliers_scan(p, alpha).unwrap()
                );
                alpha += 1;
            }
        }
    }

    #[test]
    fn prime_order_fixed_point_free() {
        let budget = SearchBudget::default();
        assert!(verify_no_prime_order_fpf_automorphism(&g(&[2, 4]), &budget).unwrap());
        assert!(verify_no_prime_order_fpf_automorphism(&g(&[2, 8]), &budget).unwrap());
        assert!(!verify_no_prime_order_fpf_automorphism(&g(&[3]), &budget).unwrap());
    }
}
