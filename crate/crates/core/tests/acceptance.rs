//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use surfsym::catalog::{crosscheck, Catalog};
use surfsym::classifier::{classify, classify_all, max_order};
use surfsym::extend::{decide, decide_rules_only, Bracket, ExtensionType};
use surfsym::orbifold::{enumerate_quotient_signatures, orbifold_euler_characteristic};
use surfsym::{ActionClass, Character, CombinatorialCover, Mode, Rational, SignedBidiagonalMap};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(classes: &[ActionClass]) -> BTreeMap<String, &ActionClass> {
    classes.iter().filter_map(|c| c.name().map(|n| (n.to_string(), c))).collect()
}

/// Expected brackets of the genus-2 classes, typed in independently of
/// the catalog file.
const EXPECTED_BRACKETS: [(&str, &str); 21] = [
    ("rho_{2,1}", "{+}"),
    ("rho_{2,2}", "{+,-}"),
    ("tau_{2,1}", "{+,-}"),
    ("tau_{2,2}", "{+,-}"),
    ("tau_{2,3}", "{+}"),
    ("tau_{2,4}", "{∅}"),
    ("tau_{2,5}", "{-}"),
    ("rho_3", "{+}"),
    ("rho_4", "{-}"),
    ("tau_{4,1}", "{+,-}"),
    ("tau_{4,2}", "{∅}"),
    ("rho_5", "{∅}"),
    ("rho_{6,1}", "{+}"),
    ("rho_{6,2}", "{-}"),
    ("tau_{6,1}", "{∅}"),
    ("tau_{6,2}", "{-}"),
    ("tau_{6,3}", "{∅}"),
    ("rho_8", "{∅}"),
    ("tau_8", "{∅}"),
    ("rho_10", "{∅}"),
    ("tau_{12}", "{+}"),
];

fn relaxed_classification() -> Outcome {
    let classes = classify_all(2, Mode::Paper).map_err(|e| e.to_string())?;
    ensure(classes.len() == 21, || format!("{} classes, expected 21", classes.len()))?;
    let names = named(&classes);
    ensure(names.len() == 21, || format!("{} distinct catalog names among 21 classes", names.len()))?;
    for (name, _) in EXPECTED_BRACKETS {
        ensure(names.contains_key(name), || format!("{name} not found"))?;
    }
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &classes {
        *orders.entry(c.order()).or_default() += 1;
    }
    let expected: BTreeMap<u32, usize> =
        [(2, 7), (3, 1), (4, 3), (5, 1), (6, 5), (8, 2), (10, 1), (12, 1)].into_iter().collect();
    ensure(orders == expected, || format!("orders {orders:?}"))?;
    Ok("21 classes, bijective with catalog names, orders 2x7 3 4x3 5 6x5 8x2 10 12".into())
}

fn strict_adjudication() -> Outcome {
    let classes = classify_all(2, Mode::Strict).map_err(|e| e.to_string())?;
    ensure(classes.len() == 20, || format!("{} classes, expected 20", classes.len()))?;
    let catalog = Catalog::genus2();
    let report = crosscheck(catalog, &classes, None);
    ensure(report.missing_in_enumeration == ["tau_{4,2}"], || {
        format!("missing in enumeration: {:?}", report.missing_in_enumeration)
    })?;
    ensure(report.missing_in_catalog.is_empty(), || format!("unnamed: {:?}", report.missing_in_catalog))?;
    let [a] = report.adjudications.as_slice() else {
        return Err(format!("{} adjudications", report.adjudications.len()));
    };
    let violation = a.violation.as_deref().ok_or("no orientation-character violation cited")?;
    ensure(violation.contains("crosscap"), || format!("violation text: {violation}"))?;
    // Independent rebuild of the datum's cover.
    let entry = catalog.entry("tau_{4,2}").ok_or("no catalog entry")?;
    let cover = CombinatorialCover::build_unchecked(&entry.epimorphism.realize()).map_err(|e| e.to_string())?;
    ensure(
        cover.is_orientable() == a.orientable && cover.euler_characteristic() == a.chi && cover.is_connected(),
        || "adjudication disagrees with a fresh cover".into(),
    )?;
    Ok(format!(
        "20 classes; diff names tau_{{4,2}} ({violation}); oracle: chi {}, {}",
        a.chi,
        if a.orientable { "orientable" } else { "non-orientable" }
    ))
}

fn brackets() -> Outcome {
    let classes = classify_all(2, Mode::Paper).map_err(|e| e.to_string())?;
    let names = named(&classes);
    for (name, expected) in EXPECTED_BRACKETS {
        let class = names.get(name).ok_or_else(|| format!("{name} missing"))?;
        let full = decide(class).map_err(|e| format!("{name}: {e}"))?;
        ensure(full.summary().to_string() == expected, || {
            format!("{name}: decided {}, expected {expected}", full.summary())
        })?;
        let rules = decide_rules_only(class).map_err(|e| format!("{name} rules-only: {e}"))?;
        for ty in ExtensionType::ALL {
            ensure(!(rules.status(ty).is_ruled_out() && full.status(ty).is_realized()), || {
                format!("{name}: rules rule out {} but it is realized", ty.code())
            })?;
        }
    }
    let rules = |name: &str| -> Result<_, String> {
        decide_rules_only(names.get(name).ok_or_else(|| format!("{name} missing"))?).map_err(|e| e.to_string())
    };
    for name in ["rho_5", "rho_8", "tau_8", "rho_10", "tau_{2,4}"] {
        let v = rules(name)?;
        ensure(v.summary() == Bracket::EMPTY, || format!("{name}: rules give {}", v.summary()))?;
    }
    for (name, ty) in [("rho_{2,1}", ExtensionType::Pm), ("tau_{2,3}", ExtensionType::Mm), ("tau_{2,5}", ExtensionType::Mp)] {
        let v = rules(name)?;
        ensure(v.status(ty).is_ruled_out(), || format!("{name}: rules leave {} open", ty.code()))?;
    }
    Ok("21 brackets match; rules alone derive the stated empties and negatives".into())
}

fn construction_maps() -> Outcome {
    for g in [2, 4, 6] {
        let tau = SignedBidiagonalMap::tau(g);
        let ty = tau.map_type(g).map_err(|e| e.to_string())?;
        ensure(tau.order() == 4 * (g + 1) && ty == ExtensionType::Mp, || {
            format!("tau({g}): order {} type {}", tau.order(), ty.code())
        })?;
    }
    let st = SignedBidiagonalMap::from_word("sigma tau", 2).map_err(|e| e.to_string())?;
    let st_ty = st.map_type(2).map_err(|e| e.to_string())?;
    ensure(st.order() == 6 && st_ty == ExtensionType::Pm, || format!("sigma tau: {} {}", st.order(), st_ty.code()))?;
    let st4 = SignedBidiagonalMap::from_word("sigma tau^4", 2).map_err(|e| e.to_string())?;
    let st4_ty = st4.map_type(2).map_err(|e| e.to_string())?;
    ensure(st4.order() == 6 && st4_ty == ExtensionType::Mm, || {
        format!("sigma tau^4: {} {}", st4.order(), st4_ty.code())
    })?;
    let rho = SignedBidiagonalMap::rho(2);
    let rho_ty = rho.map_type(2).map_err(|e| e.to_string())?;
    ensure(rho.order() == 2 && rho_ty == ExtensionType::Pp, || format!("rho: {} {}", rho.order(), rho_ty.code()))?;
    Ok("tau(g) order 4g+4 type (-,+) for g=2,4,6; sigma tau 6 (+,-); sigma tau^4 6 (-,-); rho 2 (+,+)".into())
}

fn max_orders() -> Outcome {
    for g in [2, 3, 4] {
        let pres = max_order(g, Some(Character::Preserving), Mode::Strict).map_err(|e| e.to_string())?;
        ensure(pres == 4 * g + 2, || format!("g={g}: preserving max {pres}"))?;
        let any = max_order(g, None, Mode::Strict).map_err(|e| e.to_string())?;
        let want = if g % 2 == 0 { 4 * g + 4 } else { 4 * g + 2 };
        ensure(any == want, || format!("g={g}: max {any}, expected {want}"))?;
    }
    for g in [2, 4, 6] {
        let n = 4 * g + 4;
        let classes = classify(g, n, Character::Reversing, Mode::Strict).map_err(|e| e.to_string())?;
        let [class] = classes.as_slice() else {
            return Err(format!("g={g}: {} classes of order {n}", classes.len()));
        };
        let v = decide(class).map_err(|e| e.to_string())?;
        ensure(v.status(ExtensionType::Mp).is_realized(), || format!("g={g}: order-{n} class not realized by tau"))?;
        ensure(SignedBidiagonalMap::tau(g).order() == n, || format!("g={g}: tau order"))?;
    }
    Ok("preserving max 4g+2 and overall max 4g+4/4g+2 for g=2,3,4; tau(g) realizes order 4g+4 for g=2,4,6".into())
}

fn nonextendable_involutions() -> Outcome {
    let mut witnesses = Vec::new();
    for g in 2..=6 {
        let classes = classify(g, 2, Character::Reversing, Mode::Strict).map_err(|e| e.to_string())?;
        let mut found = None;
        for class in &classes {
            let v = decide_rules_only(class).map_err(|e| e.to_string())?;
            if ExtensionType::ALL.into_iter().all(|ty| v.status(ty).is_ruled_out()) {
                found = Some(class.signature().to_string());
                break;
            }
        }
        let sig = found.ok_or_else(|| format!("g={g}: every reversing involution has an open type"))?;
        witnesses.push(format!("g={g} {sig}"));
    }
    Ok(witnesses.join(", "))
}

fn oracle_suite() -> Outcome {
    let mut checked = 0;
    let mut signatures = 0;
    for g in [2, 3] {
        let target = Rational::from_integer(2 - 2 * g as i64);
        for n in 2..=4 * g + 4 {
            for character in Character::ALL {
                if character == Character::Reversing && n % 2 == 1 {
                    continue;
                }
                for sig in enumerate_quotient_signatures(g, n, character).map_err(|e| e.to_string())? {
                    let chi = orbifold_euler_characteristic(&sig) * Rational::from_integer(n as i64);
                    ensure(chi == target, || format!("g={g} n={n} {sig}: n*chi = {chi}"))?;
                    signatures += 1;
                }
            }
        }
        for class in classify_all(g, Mode::Strict).map_err(|e| e.to_string())? {
            let label = class.epimorphism().to_string();
            let cover = CombinatorialCover::from_epimorphism(class.epimorphism()).map_err(|e| format!("{label}: {e}"))?;
            let report = cover.report();
            ensure(report.connected && report.orientable && report.chi == 2 - 2 * g as i64, || {
                format!("{label}: {report:?}")
            })?;
            for count in &report.fixed_counts {
                let formula = class.fixed_points(count.power).map_err(|e| format!("{label}: {e}"))?;
                ensure(formula == count.fixed_points, || {
                    format!("{label}: power {} cover {} formula {formula}", count.power, count.fixed_points)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classes verified by cover; {signatures} signatures satisfy RH exactly"))
}

fn emptiness() -> Outcome {
    let orders: Vec<u32> = [7, 9, 11].into_iter().chain(13..=24).collect();
    for &n in &orders {
        for mode in [Mode::Strict, Mode::Paper] {
            for character in Character::ALL {
                if character == Character::Reversing && n % 2 == 1 {
                    continue;
                }
                let classes = classify(2, n, character, mode).map_err(|e| e.to_string())?;
                ensure(classes.is_empty(), || format!("n={n} {character:?} {mode}: {} classes", classes.len()))?;
            }
        }
    }
    Ok(format!("no genus-2 classes for n in 7, 9, 11, 13..24 ({} orders)", orders.len()))
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, title: "genus-2 classification, relaxed presentation", limit: Some(Duration::from_secs(10)), run: relaxed_classification },
    Criterion { id: 2, title: "strict classification and adjudication", limit: Some(Duration::from_secs(10)), run: strict_adjudication },
    Criterion { id: 3, title: "extendability brackets", limit: Some(Duration::from_secs(10)), run: brackets },
    Criterion { id: 4, title: "construction map orders and types", limit: None, run: construction_maps },
    Criterion { id: 5, title: "maximal orders", limit: Some(Duration::from_secs(120)), run: max_orders },
    Criterion { id: 6, title: "non-extendable reversing involutions", limit: None, run: nonextendable_involutions },
    Criterion { id: 7, title: "cover oracle", limit: Some(Duration::from_secs(60)), run: oracle_suite },
    Criterion { id: 8, title: "empty orders in genus 2", limit: None, run: emptiness },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("exceeded {} s", limit.as_secs())),
            (o, _) => o,
        };
        let limit = c.limit.map_or_else(String::new, |l| format!(", limit {} s", l.as_secs()));
        match outcome {
            Ok(detail) => println!("PASS {} {}: {detail} [{:.2} s{limit}]", c.id, c.title, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {}: {why} [{:.2} s{limit}]", c.id, c.title, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", CRITERIA.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
