//! The twelve acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use antiauto_core::constructions::{homogeneous2_antiauto, z2_z4_antiauto};
use antiauto_core::search::{
    antiauto_lower_bound, antiauto_upper_bound_prime, biantiauto_count_formula, count_antiautomorphisms,
    count_antiautomorphisms_with_jobs, count_biantiautomorphisms_bruteforce, exists_antiautomorphism_search,
    verify_no_prime_order_fpf_automorphism,
};
use antiauto_core::{
    abelian_groups_up_to, decide_antiautomorphism, AbelianGroup, GroupElement, SearchBudget, Status, TableMap,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn g(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn count(s: &str) -> Result<u64, String> {
    count_antiautomorphisms(&g(s), &budget()).map_err(|e| format!("{s}: {e}"))
}

/// Involutions found by scanning every element.
fn scanned_involutions(group: &AbelianGroup) -> Vec<GroupElement> {
    group
        .elements()
        .unwrap()
        .filter(|x| *x != group.zero() && group.add(x, x).unwrap() == group.zero())
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn c1() -> Check {
    // One warm-up call so thread-pool start-up is not billed to the search.
    count("2,2")?;
    let (c, t) = timed(|| count("2,2"));
    let c = c?;
    ensure(c == 8, format!("count {c}"))?;
    ensure(t < Duration::from_millis(1), format!("took {t:?}"))?;
    Ok(format!("count 8 in {t:?}"))
}

fn c2() -> Check {
    let (c, t) = timed(|| count("2,2,2"));
    let c = c?;
    ensure(c == 384, format!("count {c}"))?;
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("count 384 in {t:?}"))
}

fn c3() -> Check {
    for n in (2..=16).step_by(2) {
        let c = count(&n.to_string())?;
        ensure(c == 0, format!("Z{n}: count {c}"))?;
    }
    let mut checked = 0;
    for group in abelian_groups_up_to(16) {
        if scanned_involutions(&group).len() == 1 {
            let c = count(&group.to_string())?;
            ensure(c == 0, format!("{group}: count {c}"))?;
            checked += 1;
        }
    }
    Ok(format!("even cyclic n <= 16 and {checked} unique-involution groups all count 0"))
}

fn c4() -> Check {
    let mut seen = Vec::new();
    for n in [3u64, 5, 7, 9, 15] {
        let c = count(&n.to_string())?;
        let lower = antiauto_lower_bound(n).map_err(|e| e.to_string())?;
        ensure(c >= lower, format!("Z{n}: count {c} < lower bound {lower}"))?;
        if antiauto_core::arith::is_prime(n) {
            let upper = antiauto_upper_bound_prime(n).map_err(|e| e.to_string())?;
            ensure(c as u128 <= upper, format!("Z{n}: count {c} > upper bound {upper}"))?;
        }
        seen.push(format!("Z{n}={c}>={lower}"));
    }
    ensure(antiauto_lower_bound(9) == Ok(27), "lower bound for 9")?;
    ensure(antiauto_lower_bound(15) == Ok(45), "lower bound for 15")?;
    ensure(antiauto_upper_bound_prime(5) == Ok(45), "upper bound for 5")?;
    Ok(seen.join(" "))
}

fn c5() -> Check {
    let (res, t) = timed(|| -> Result<(), String> {
        for n in (3..=45u64).step_by(2) {
            let brute = count_biantiautomorphisms_bruteforce(&AbelianGroup::cyclic(n).unwrap(), &budget())
                .map_err(|e| e.to_string())?;
            let formula = biantiauto_count_formula(n).map_err(|e| e.to_string())?;
            ensure(brute == formula, format!("Z{n}: brute force {brute}, formula {formula}"))?;
        }
        Ok(())
    });
    res?;
    ensure(t < Duration::from_secs(10), format!("took {t:?}"))?;
    Ok(format!("odd n in 3..=45 agree in {t:?}"))
}

fn c6() -> Check {
    let group = g("2,4");
    let bianti = count_biantiautomorphisms_bruteforce(&group, &budget()).map_err(|e| e.to_string())?;
    ensure(bianti == 0, format!("{bianti} biantiautomorphisms"))?;
    let witness = exists_antiautomorphism_search(&group, &budget()).map_err(|e| e.to_string())?;
    ensure(
        witness.as_ref().is_some_and(TableMap::is_antiautomorphism),
        "search found no witness",
    )?;
    let table = z2_z4_antiauto().map_err(|e| e.to_string())?;
    ensure(table.is_antiautomorphism(), "table is not an antiautomorphism")?;
    ensure(!table.is_linear(), "table is linear")?;
    Ok("no linear antiautomorphism; search and table witnesses verified".into())
}

fn c7() -> Check {
    for (m, n) in [(1u32, 2u32), (1, 3), (2, 2), (3, 2), (2, 3)] {
        let f = homogeneous2_antiauto(m, n, 1 << 12).map_err(|e| format!("({m},{n}): {e}"))?;
        ensure(f.len() == 1 << (m * n), format!("({m},{n}): table size {}", f.len()))?;
        ensure(f.is_antiautomorphism(), format!("({m},{n}) failed"))?;
    }
    Ok("all five tables verified".into())
}

fn c8() -> Check {
    let groups = abelian_groups_up_to(64);
    for group in &groups {
        let sum = group.group_sum().map_err(|e| e.to_string())?;
        let inv = scanned_involutions(group);
        let expected = if inv.len() == 1 { inv[0].clone() } else { group.zero() };
        ensure(sum == expected, format!("{group}: sum {sum}, expected {expected}"))?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn c9() -> Check {
    let groups = abelian_groups_up_to(32);
    for group in &groups {
        let neg = TableMap::from_fn(group, |x| group.neg(x)).map_err(|e| e.to_string())?;
        let no_inv = scanned_involutions(group).is_empty();
        ensure(neg.is_antiautomorphism() == no_inv, format!("{group}"))?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn c10() -> Check {
    for s in ["2,4", "2,8", "4,8", "2,4,8"] {
        let ok = verify_no_prime_order_fpf_automorphism(&g(s), &budget()).map_err(|e| format!("{s}: {e}"))?;
        ensure(ok, format!("{s} has a fixed-point-free automorphism of prime order"))?;
    }
    Ok("Z2+Z4, Z2+Z8, Z4+Z8, Z2+Z4+Z8".into())
}

fn c11() -> Check {
    let groups = abelian_groups_up_to(16);
    for group in &groups {
        let verdict = decide_antiautomorphism(group, &budget());
        let truth = count(&group.to_string())? > 0;
        let expected = if truth { Status::Exists } else { Status::NotExists };
        ensure(verdict.status == expected, format!("{group}: verdict {verdict}, count > 0 is {truth}"))?;
    }
    Ok(format!("{} groups, no Unknown", groups.len()))
}

fn c12() -> Check {
    let mut seen = Vec::new();
    for s in ["2,2,2", "9"] {
        let counts: Vec<u64> = [1usize, 2, 8]
            .iter()
            .map(|&j| count_antiautomorphisms_with_jobs(&g(s), &budget(), j).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(counts.windows(2).all(|w| w[0] == w[1]), format!("{s}: {counts:?}"))?;
        seen.push(format!("{s}={}", counts[0]));
    }
    Ok(format!("jobs 1, 2, 8 agree: {}", seen.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("count Z2^2 = 8 under 1 ms", c1),
        ("count Z2^3 = 384 under 1 s", c2),
        ("no antiautomorphisms: even cyclic and unique involution", c3),
        ("odd cyclic bounds", c4),
        ("linear count formula for odd n <= 45", c5),
        ("Z2+Z4: antiautomorphism but no linear one", c6),
        ("companion constructions", c7),
        ("group sum sweep to order 64", c8),
        ("negation characterization to order 32", c9),
        ("no prime-order fixed-point-free automorphism", c10),
        ("classifier matches counts to order 16", c11),
        ("counts independent of worker count", c12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
