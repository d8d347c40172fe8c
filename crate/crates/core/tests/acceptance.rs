//! The acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{engine, w};
use modrep::chars::{decompose_into_weyl, freudenthal_weyl_char, weyl_dim};
use modrep::classify::{
    p_restricted_weights, sl2_oracle, sl3_oracle, sln_p2_clauses, sln_p2_oracle, sp4_oracle, stembridge_char0_oracle,
};
use modrep::tensor::{is_mf, is_mf_engine, mf_char0, tensor_factors};
use modrep::{RootSystem, RootType, VerdictValue, Weight};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    check(t.elapsed() <= limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn clebsch_gordan() -> Outcome {
    let t = Instant::now();
    let rs = RootSystem::new(RootType::A(1)).unwrap();
    let mut n = 0;
    for lam in 0..=12 {
        for mu in 0..=lam {
            let prod = freudenthal_weyl_char(&rs, &w(&[lam])).unwrap().mul(&freudenthal_weyl_char(&rs, &w(&[mu])).unwrap()).unwrap();
            let got: BTreeMap<Weight, i64> = decompose_into_weyl(&rs, &prod).unwrap().terms().clone();
            let want: BTreeMap<Weight, i64> = (0..=mu).map(|k| (w(&[lam + mu - 2 * k]), 1)).collect();
            check(got == want, || format!("({lam})x({mu}): {got:?}"))?;
            n += 1;
        }
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!("{n} products"))
}

fn sl2_classification() -> Outcome {
    let mut pairs = 0;
    for p in [2u32, 3, 5, 7] {
        let e = engine(RootType::A(1), p);
        let top = (p * p - 1) as i32;
        for a in 0..=top {
            for c in 0..=top {
                let (l, m) = (w(&[a]), w(&[c]));
                let want = sl2_oracle(&l, &m, p).unwrap().value;
                let got = is_mf(&e, &l, &m).unwrap().value;
                check(want == got, || format!("p={p} {l}x{m}: oracle {want}, engine {got}"))?;
                let q = p as i32;
                let digits_ok = [1, q].iter().all(|&s| (a / s) % q + (c / s) % q < q);
                check(VerdictValue::from_bool(digits_ok) == want, || format!("p={p} {l}x{m}: digit rule"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, 0 mismatches"))
}

fn sl3_classification() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    for p in [2u32, 3, 5, 7] {
        let e = engine(RootType::A(2), p);
        let ws = p_restricted_weights(2, p);
        for l in &ws {
            for m in &ws {
                let want = sl3_oracle(l, m, p).unwrap();
                let got = is_mf_engine(&e, l, m).unwrap();
                check(want.value == got.value, || format!("p={p} {l}x{m}: oracle {want}, engine {got}"))?;
                pairs += 1;
            }
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{pairs} pairs, 0 mismatches"))
}

fn named_decompositions() -> Outcome {
    let e = engine(RootType::A(2), 5);
    let d = tensor_factors(&e, &w(&[1, 0]), &w(&[0, 4])).unwrap().resolved().unwrap();
    check(d.factors() == [(w(&[1, 4]), 1), (w(&[0, 3]), 1)], || format!("L(1,0)xL(0,4) = {d}"))?;
    let (lam, top) = (w(&[1, 1]), w(&[2, 2]));
    let nu = top - w(&[1, 1]);
    let d = tensor_factors(&e, &lam, &lam).unwrap().resolved().unwrap();
    let k = d.multiplicity(&nu);
    check(k >= 2, || format!("[L(1,1)xL(1,1) : L(1,1)] = {k} < 2"))?;
    // m_M(ν) = 6, less one for each of L(2,2), L(3,0), L(0,3), whose
    // multiplicity at ν is 1 (a+b = p−1 for (2,2)); nothing else lies above ν.
    let ch = common::simple_char_product(&e, &lam, &lam);
    check(ch.get(&nu) == 6, || format!("m_M(1,1) = {}", ch.get(&nu)))?;
    let above = [top, w(&[3, 0]), w(&[0, 3])];
    let removed: i64 = above.iter().map(|x| e.simple_char(x).unwrap().get(&nu)).sum();
    check(removed == 3, || format!("factors above (1,1) contribute {removed}"))?;
    check(k as i64 == 6 - removed, || format!("[L(1,1)xL(1,1) : L(1,1)] = {k}, expected {}", 6 - removed))?;
    Ok(format!("L(1,0)xL(0,4) = L(1,4) + L(0,3); [L(1,1)xL(1,1) : L(1,1)] = {k} (at least 2)"))
}

/// Composition factors of Δ(λ) in A2 read off from the alcove of λ.
fn a2_table(a: i32, b: i32, p: i32) -> Vec<(i32, i32)> {
    if a + b < p - 1 || a == p - 1 || b == p - 1 {
        vec![(a, b)]
    } else {
        let m = a + b + 2 - p;
        vec![(a, b), (a - m, b - m)]
    }
}

/// The same for B2, with the linked weight given by the affine reflection in
/// α1+α2 (fw coordinates (1,0)) or α1+2α2 (fw coordinates (0,2)).
fn b2_table(a: i32, b: i32, p: i32) -> Vec<(i32, i32)> {
    let (x3, x4) = (2 * a + b + 3, a + b + 2);
    let short = |k: i32| (a - (x3 - k * p), b);
    let long = (a, b - 2 * (x4 - p));
    if a == p - 1 {
        vec![(a, b)]
    } else if b == p - 1 {
        if x3 > 2 * p {
            vec![(a, b), short(2)]
        } else {
            vec![(a, b)]
        }
    } else if x3 <= p || x4 == p || x3 == 2 * p {
        vec![(a, b)]
    } else if x4 < p {
        vec![(a, b), short(1)]
    } else if x3 < 2 * p {
        vec![(a, b), long]
    } else {
        vec![(a, b), short(2)]
    }
}

fn weyl_module_tables() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for ty in [RootType::A(2), RootType::B2] {
        for p in [5u32, 7] {
            let e = engine(ty, p);
            for lam in p_restricted_weights(2, p) {
                let got = e.weyl_composition_factors(&lam).unwrap();
                let got = got.resolved().ok_or_else(|| format!("{ty} p={p} {lam}: undetermined"))?;
                let closed = e.rank2_factor_oracle(&lam).unwrap();
                check(got == closed, || format!("{ty} p={p} {lam}: engine {got}, closed form {closed}"))?;
                let (a, b, pi) = (lam.get(0), lam.get(1), p as i32);
                let table = if ty == RootType::B2 { b2_table(a, b, pi) } else { a2_table(a, b, pi) };
                let mut want: Vec<Weight> = table.into_iter().map(|(x, y)| w(&[x, y])).collect();
                let mut have: Vec<Weight> = got.factors().iter().map(|(x, k)| {
                    assert_eq!(*k, 1);
                    *x
                }).collect();
                want.sort();
                have.sort();
                check(want == have, || format!("{ty} p={p} {lam}: engine {got}, table {want:?}"))?;
                n += 1;
            }
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{n} Weyl modules"))
}

fn in_open_family(l: &Weight, m: &Weight) -> bool {
    let fam = |l: &Weight, m: &Weight| {
        let (a, b, c, d) = (l.get(0), l.get(1), m.get(0), m.get(1));
        let ab = a != 0 && b != 0;
        (ab && c == 0 && d >= 2) || (ab && c != 0 && d == 0) || (ab && c != 0 && d != 0)
    };
    fam(l, m) || fam(m, l)
}

/// The pair is settled by one of the partial results for the open families.
fn settled_by_partial(l: &Weight, m: &Weight, p: i32) -> bool {
    let one = |l: &Weight, m: &Weight| {
        let (a, b, c, d) = (l.get(0), l.get(1), m.get(0), m.get(1));
        let bd = a >= 1 && b >= 2 && c == 0 && d >= 2 && (2 * a + b + 2) % p != 0 && a + b != p - 1;
        let c2 = |x: i32, y: i32| 2 * x + y + 3 > p && x + y + 2 < p;
        let c3 = |x: i32, y: i32| x + y + 2 > p && 2 * x + y + 3 < 2 * p && y < p - 1;
        let alcoves = c2(a, b) && 2 * c + d + 3 <= p && c3(a + c, b + d);
        bd || alcoves
    };
    one(l, m) || one(m, l)
}

fn sp4_soundness() -> Outcome {
    let t = Instant::now();
    let mut report = Vec::new();
    for p in [5u32, 7] {
        let e = engine(RootType::B2, p);
        let ws = p_restricted_weights(2, p);
        let (mut definite, mut unknown, mut family, mut expected_unknown) = (0, 0, 0, 0);
        for l in &ws {
            for m in &ws {
                let want = sp4_oracle(l, m, p).unwrap();
                let got = is_mf_engine(&e, l, m).unwrap();
                if in_open_family(l, m) {
                    family += 1;
                    if !settled_by_partial(l, m, p as i32) {
                        expected_unknown += 1;
                    }
                }
                match want.value {
                    VerdictValue::Unknown => unknown += 1,
                    v => {
                        definite += 1;
                        check(v == got.value, || format!("p={p} {l}x{m}: oracle {want}, engine {got}"))?;
                    }
                }
            }
        }
        check(unknown == expected_unknown, || format!("p={p}: {unknown} unknown, expected {expected_unknown}"))?;
        report.push(format!("p={p}: {definite} definite agree, {unknown} unknown ({family} in open families)"));
    }
    within(t, Duration::from_secs(900))?;
    Ok(report.join("; "))
}

fn b2_euclid(nu: &Weight) -> (i32, i32) {
    // doubled Euclidean coordinates: ω1 = ε1, ω2 = (ε1+ε2)/2
    (2 * nu.get(0) + nu.get(1), nu.get(1))
}

fn weight_closed_forms() -> Outcome {
    let mut n = 0;
    for p in [5u32, 7, 11] {
        let e = engine(RootType::A(2), p);
        let rs = e.root_system();
        for a in 0..(p as i32).min(9) {
            let ch = e.simple_char(&w(&[a, 0])).unwrap();
            // λ − iα1 − jα2 = (a − 2i + j, i − 2j)
            let mut count = 0;
            for i in 0..=a {
                for j in 0..=i {
                    let nu = w(&[a - 2 * i + j, i - 2 * j]);
                    check(ch.get(&nu) == 1, || format!("A2 p={p} L({a},0) at {nu}: {}", ch.get(&nu)))?;
                    count += 1;
                }
            }
            check(ch.dimension().unwrap() == count, || format!("A2 p={p} L({a},0) has extra weights"))?;
            check(weyl_dim(rs, &w(&[a, 0])).unwrap() == count, || "dimension".into())?;
            n += 1;
        }
    }
    let b2 = RootSystem::new(RootType::B2).unwrap();
    for a in 0..=8 {
        let ch = freudenthal_weyl_char(&b2, &w(&[a, 0])).unwrap();
        let mut total = 0;
        for x in -2 * a..=2 * a {
            for y in -2 * a..=2 * a {
                if (x - y) % 2 != 0 {
                    continue;
                }
                let nu = w(&[(x - y) / 2, y]);
                let norm = if x % 2 == 0 && y % 2 == 0 { Some((x.abs() + y.abs()) / 2) } else { None };
                let want = match norm {
                    Some(k) if k <= a => (a - k) / 2 + 1,
                    _ => 0,
                };
                check(ch.get(&nu) as i32 == want, || format!("B2 Δ({a},0) at {nu}: {} vs {want}", ch.get(&nu)))?;
                total += want as i64;
            }
        }
        check(total == ch.dimension().unwrap(), || format!("B2 Δ({a},0) has weights outside the box"))?;
        n += 1;
    }
    for p in [5u32, 7, 11, 13, 17] {
        let a = (p as i32 - 1) / 2;
        let ch = engine(RootType::B2, p).simple_char(&w(&[a, 0])).unwrap();
        let mut total = 0;
        for x in -2 * a..=2 * a {
            for y in -2 * a..=2 * a {
                if (x - y) % 2 != 0 {
                    continue;
                }
                let nu = w(&[(x - y) / 2, y]);
                let want = (x % 2 == 0 && y % 2 == 0 && (x.abs() + y.abs()) / 2 <= a) as i64;
                check(ch.get(&nu) == want, || format!("B2 p={p} L({a},0) at {nu}"))?;
                total += want;
            }
        }
        check(total == ch.dimension().unwrap(), || format!("B2 p={p} L({a},0) has extra weights"))?;
        n += 1;
    }
    for p in [5u32, 7, 11] {
        let e = engine(RootType::B2, p);
        for b in 0..(p as i32).min(9) {
            let lam = w(&[0, b]);
            let (sim, weyl) = (e.simple_char(&lam).unwrap(), e.table().weyl_char(&lam).unwrap());
            check(*sim == *weyl, || format!("B2 p={p} L(0,{b}) != Δ(0,{b})"))?;
            let mut total = 0;
            for x in -b..=b {
                for y in -b..=b {
                    if (x - y) % 2 != 0 {
                        continue;
                    }
                    let nu = w(&[(x - y) / 2, y]);
                    let (ex, ey) = b2_euclid(&nu);
                    let inf2 = ex.abs().max(ey.abs());
                    // b/2 − |ν|∞ ∈ ℕ, in doubled units
                    let want = if inf2 <= b && (b - inf2) % 2 == 0 { ((b - inf2) / 2 + 1) as i64 } else { 0 };
                    check(sim.get(&nu) == want, || format!("B2 p={p} L(0,{b}) at {nu}: {} vs {want}", sim.get(&nu)))?;
                    total += want;
                }
            }
            check(total == sim.dimension().unwrap(), || format!("B2 L(0,{b}) has extra weights"))?;
            n += 1;
        }
    }
    Ok(format!("{n} characters"))
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dimensions() -> Outcome {
    let a2 = RootSystem::new(RootType::A(2)).unwrap();
    let b2 = RootSystem::new(RootType::B2).unwrap();
    for a in 0..=20i64 {
        let d = weyl_dim(&a2, &w(&[a as i32, 0])).unwrap();
        check(d == (a + 1) * (a + 2) / 2, || format!("dim Δ({a},0) = {d}"))?;
        let d = weyl_dim(&b2, &w(&[0, a as i32])).unwrap();
        check(d == binom(a + 3, 3), || format!("B2 dim Δ(0,{a}) = {d}"))?;
    }
    let want = weyl_dim(&b2, &w(&[2, 0])).unwrap() - 1;
    let got = engine(RootType::B2, 5).simple_char(&w(&[2, 0])).unwrap().dimension().unwrap();
    check(got == want && got == 13, || format!("B2 p=5 dim L(2,0) = {got}"))?;
    Ok("A2 Δ(a,0), B2 Δ(0,a) for a <= 20; B2 p=5 dim L(2,0) = 13".into())
}

fn char0_oracles() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for (ty, max) in [(RootType::A(2), 6), (RootType::B2, 5)] {
        let e = engine(ty, 5);
        let ws: Vec<Weight> = (0..=max).flat_map(|a| (0..=max).map(move |b| w(&[a, b]))).collect();
        for l in &ws {
            for m in &ws {
                let got = mf_char0(e.table(), l, m).unwrap();
                let want = stembridge_char0_oracle(ty, l, m).unwrap();
                check(VerdictValue::from_bool(got) == want.value, || format!("{ty} {l}x{m}: computed {got}, {want}"))?;
                n += 1;
            }
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{n} pairs"))
}

fn omegas(n: usize, idx: &[usize]) -> Weight {
    let mut c = vec![0i64; n];
    for &i in idx {
        c[i - 1] += 1;
    }
    Weight::new(&c).unwrap()
}

fn sln_p2() -> Outcome {
    let v = sln_p2_oracle(4, &omegas(4, &[1]), &omegas(4, &[2, 4])).unwrap();
    check(v.value == VerdictValue::MultiplicityFree && v.clause == "clause (1)", || format!("n=4 w1 x (w2+w4): {v}"))?;
    let v = sln_p2_oracle(5, &omegas(5, &[2]), &omegas(5, &[5])).unwrap();
    check(v.value == VerdictValue::MultiplicityFree && v.clause == "clause (3)", || format!("n=5 w2 x w5: {v}"))?;
    let (l, m) = (omegas(4, &[2]), omegas(4, &[3]));
    let v = sln_p2_oracle(4, &l, &m).unwrap();
    check(v.value == VerdictValue::HasMultiplicity, || format!("n=4 w2 x w3: {v}"))?;
    for (a, b) in [(&l, &m), (&m, &l), (&l.reversed(), &m.reversed()), (&m.reversed(), &l.reversed())] {
        check(sln_p2_clauses(4, a, b).is_empty(), || "n=4 w2 x w3 matches a clause".into())?;
    }
    let mut report = Vec::new();
    for n in [2usize, 3] {
        let e = engine(RootType::A(n), 2);
        let ws = p_restricted_weights(n, 2);
        let (mut resolved, mut undetermined) = (0, 0);
        for l in &ws {
            for m in &ws {
                let got = is_mf_engine(&e, l, m).unwrap();
                if got.value == VerdictValue::Unknown {
                    undetermined += 1;
                    continue;
                }
                let want = sln_p2_oracle(n, l, m).unwrap();
                check(want.value == got.value, || format!("A{n} {l}x{m}: oracle {want}, engine {got}"))?;
                resolved += 1;
            }
        }
        report.push(format!("A{n}: {resolved} resolvable agree, {undetermined} undetermined"));
    }
    Ok(format!("transcription examples hold; {}", report.join("; ")))
}

fn property_suites() -> Outcome {
    type Suite = fn(u32) -> Result<u32, String>;
    let suites: [(&str, Suite, u32); 7] = [
        ("normalization", common::normalization_invariance, 150),
        ("saturation", common::saturation, 150),
        ("conservation", common::weyl_conservation_and_linkage, 200),
        ("tensor conservation", common::tensor_conservation, 150),
        ("greedy order", common::greedy_order_independence, 150),
        ("dual/reorder", common::dual_reorder_invariance, 200),
        ("weyl filtration", common::weyl_filtration, 100),
    ];
    let mut total = 0;
    for (name, suite, cases) in suites {
        total += suite(cases).map_err(|e| format!("{name}: {e}"))?;
    }
    check(total >= 1000, || format!("only {total} instances"))?;
    Ok(format!("{total} generated instances"))
}

fn main() -> ExitCode {
    type Criterion = fn() -> Outcome;
    let criteria: [(&str, Criterion); 11] = [
        ("Clebsch-Gordan identity", clebsch_gordan),
        ("SL2 classification", sl2_classification),
        ("SL3 classification", sl3_classification),
        ("named SL3 decompositions", named_decompositions),
        ("Weyl module tables", weyl_module_tables),
        ("Sp4 oracle soundness", sp4_soundness),
        ("weight multiplicity closed forms", weight_closed_forms),
        ("dimension spot checks", dimensions),
        ("characteristic-zero oracles", char0_oracles),
        ("SLn at p = 2", sln_p2),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
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
