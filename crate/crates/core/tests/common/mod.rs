#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use modrep::chars::{decompose_into_weyl, freudenthal_weyl_char};
use modrep::classify::{oracle, VerdictValue};
use modrep::tensor::{is_mf_engine, tensor_char, tensor_factors, tensor_factors_by_characters};
use modrep::weights::{leq, linked_up};
use modrep::{Character, Engine, Q, RootSystem, RootType, Weight, WeylCombination, WeylTable};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn w(c: &[i32]) -> Weight {
    Weight::from_slice(c)
}

/// Engines are shared so that simple characters are computed once per run.
pub fn engine(ty: RootType, p: u32) -> Arc<Engine> {
    type Engines = Mutex<HashMap<(RootType, u32), Arc<Engine>>>;
    static CACHE: OnceLock<Engines> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache.entry((ty, p)).or_insert_with(|| Arc::new(Engine::for_type(ty, p).unwrap())).clone()
}

pub fn rank2_type() -> impl Strategy<Value = RootType> {
    prop_oneof![Just(RootType::A(2)), Just(RootType::B2)]
}

pub fn weight2(max: i32) -> impl Strategy<Value = Weight> {
    (0..=max, 0..=max).prop_map(|(a, b)| w(&[a, b]))
}

/// A rank-two type, a prime at which the rank-two tables apply, and a
/// p-restricted pair.
pub fn restricted_pair() -> impl Strategy<Value = (RootType, u32, Weight, Weight)> {
    (rank2_type(), prop_oneof![Just(5u32), Just(7u32)]).prop_flat_map(|(ty, p)| {
        let m = p as i32 - 1;
        (Just(ty), Just(p), weight2(m), weight2(m))
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, f).map(|_| cases).map_err(|e| e.to_string())
}

fn ok<T>(r: modrep::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn simple_char_product(e: &Engine, lam: &Weight, mu: &Weight) -> Character {
    e.simple_char(lam).unwrap().mul(&e.simple_char(mu).unwrap()).unwrap()
}

fn simples_to_char(e: &Engine, factors: &[(Weight, u64)]) -> Result<Character, TestCaseError> {
    let mut total = Character::zero(e.root_system().rank());
    for (nu, k) in factors {
        total = ok(total.add_scaled(&*ok(e.simple_char(nu))?, *k as i64))?;
    }
    Ok(total)
}

/// B2 characters do not depend on the scaling of the invariant form.
pub fn normalization_invariance(cases: u32) -> Result<u32, String> {
    let scaled = Arc::new(RootSystem::with_form_scale(RootType::B2, Q::from_integer(2)).unwrap());
    let plain = RootSystem::new(RootType::B2).unwrap();
    let scaled_engine = Engine::with_table(Arc::new(WeylTable::new(scaled.clone())), 5).unwrap();
    let plain_engine = engine(RootType::B2, 5);
    run(cases, weight2(6), |lam| {
        prop_assert_eq!(ok(freudenthal_weyl_char(&plain, &lam))?, ok(freudenthal_weyl_char(&scaled, &lam))?);
        prop_assert_eq!(ok(plain_engine.jantzen_sum_weyl(&lam))?, ok(scaled_engine.jantzen_sum_weyl(&lam))?);
        prop_assert_eq!(&*ok(plain_engine.simple_char(&lam))?, &*ok(scaled_engine.simple_char(&lam))?);
        Ok(())
    })
}

/// The support of χ(λ) is saturated: ν − iα lies in it for 0 ≤ i ≤ ⟨ν,α∨⟩.
pub fn saturation(cases: u32) -> Result<u32, String> {
    run(cases, (rank2_type(), weight2(6)), |(ty, lam)| {
        let e = engine(ty, 5);
        let rs = e.root_system();
        let ch = ok(e.table().weyl_char(&lam))?;
        for (nu, _) in ch.iter() {
            for (idx, root) in rs.positive_roots().iter().enumerate() {
                for i in 0..=rs.pairing(nu, idx).max(0) {
                    let down = *nu - root.fw * (i as i32);
                    prop_assert!(ch.get(&down) > 0, "{} missing below {} along root {}", down, nu, idx);
                }
            }
        }
        Ok(())
    })
}

/// ch Δ(λ) equals the sum of the characters of its composition factors, and
/// every proper factor is strongly linked and strictly below λ.
pub fn weyl_conservation_and_linkage(cases: u32) -> Result<u32, String> {
    run(cases, restricted_pair(), |(ty, p, lam, _)| {
        let e = engine(ty, p);
        let rs = e.root_system();
        let d = ok(e.weyl_composition_factors(&lam))?.resolved().ok_or_else(|| TestCaseError::fail("undetermined"))?;
        prop_assert_eq!(simples_to_char(&e, d.factors())?, (*ok(e.table().weyl_char(&lam))?).clone());
        prop_assert_eq!(d.multiplicity(&lam), 1);
        for (mu, _) in d.factors() {
            if *mu != lam {
                prop_assert!(linked_up(rs, mu, &lam, p), "{} not linked below {}", mu, lam);
                prop_assert!(leq(rs, mu, &lam) && *mu != lam);
            }
        }
        Ok(())
    })
}

/// Σ mult · ch L(η) over the tensor factors equals ch L(λ) · ch L(μ).
pub fn tensor_conservation(cases: u32) -> Result<u32, String> {
    run(cases, restricted_pair(), |(ty, p, lam, mu)| {
        let e = engine(ty, p);
        if let Some(d) = ok(tensor_factors(&e, &lam, &mu))?.resolved() {
            prop_assert_eq!(simples_to_char(&e, d.factors())?, ok(tensor_char(&e, &lam, &mu))?);
        }
        Ok(())
    })
}

/// Any choice among incomparable maximal weights gives the same result.
pub fn greedy_order_independence(cases: u32) -> Result<u32, String> {
    let strategy = (restricted_pair(), proptest::collection::vec(any::<u32>(), 1..16));
    run(cases, strategy, |((ty, p, lam, mu), choices)| {
        let e = engine(ty, p);
        let mut k = 0usize;
        let mut pick = |ws: &[Weight]| {
            k += 1;
            choices[k % choices.len()] as usize % ws.len()
        };
        let want = ok(tensor_factors(&e, &lam, &mu))?;
        let got = ok(tensor_factors_by_characters(&e, &lam, &mu, &mut pick))?;
        prop_assert_eq!(want, got);
        let c = ok(tensor_char(&e, &lam, &mu))?;
        prop_assert_eq!(ok(e.table().decompose_with(&c, &mut pick))?, ok(e.table().decompose(&c))?);
        Ok(())
    })
}

/// Verdicts are unchanged by swapping the factors and by dualizing both.
pub fn dual_reorder_invariance(cases: u32) -> Result<u32, String> {
    run(cases, restricted_pair(), |(ty, p, lam, mu)| {
        let e = engine(ty, p);
        let dual = |x: &Weight| if ty == RootType::A(2) { x.reversed() } else { *x };
        let base = ok(is_mf_engine(&e, &lam, &mu))?.value;
        prop_assert_eq!(ok(is_mf_engine(&e, &mu, &lam))?.value, base);
        prop_assert_eq!(ok(is_mf_engine(&e, &dual(&lam), &dual(&mu)))?.value, base);
        let o = ok(oracle(ty, p, &lam, &mu))?.value;
        prop_assert_eq!(ok(oracle(ty, p, &mu, &lam))?.value, o);
        prop_assert_eq!(ok(oracle(ty, p, &dual(&lam), &dual(&mu)))?.value, o);
        Ok(())
    })
}

/// Weyl character products have a Weyl filtration with Δ(λ+μ) in it, and the
/// fast product agrees with multiply-then-decompose.
pub fn weyl_filtration(cases: u32) -> Result<u32, String> {
    run(cases, (rank2_type(), weight2(4), weight2(4)), |(ty, lam, mu)| {
        let e = engine(ty, 5);
        let rs = e.root_system();
        let t = e.table();
        let prod = ok(ok(t.weyl_char(&lam))?.mul(&*ok(t.weyl_char(&mu))?))?;
        let comb: WeylCombination = ok(decompose_into_weyl(rs, &prod))?;
        prop_assert!(comb.iter().all(|(_, &k)| k > 0));
        prop_assert!(comb.coefficient(&(lam + mu)) >= 1);
        prop_assert_eq!(ok(t.product_with_weyl(&*ok(t.weyl_char(&lam))?, &mu))?, comb);
        Ok(())
    })
}

/// m_{Δ(λ)}(μ) is unchanged when the coordinates of λ in J are lowered to
/// the corresponding root coefficients of λ − μ.
pub fn cavallin(cases: u32) -> Result<u32, String> {
    let strategy = (rank2_type(), weight2(6), (0..=6i32, 0..=6i32), 1..4usize);
    run(cases, strategy, |(ty, lam, (c1, c2), jmask)| {
        let e = engine(ty, 5);
        let rs = e.root_system();
        let simple = |i: usize| rs.positive_roots().iter().find(|r| r.height == 1 && r.simple_coords[i] == 1).unwrap().fw;
        let c = [c1, c2];
        let j: Vec<usize> = (0..2).filter(|i| jmask & (1 << i) != 0).collect();
        prop_assume!(j.iter().all(|&i| c[i] <= lam.get(i)));
        let drop = |x: Weight| x - simple(0) * c[0] - simple(1) * c[1];
        let mut lam2 = lam;
        for &i in &j {
            lam2.set(i, c[i]);
        }
        let m1 = ok(e.table().weyl_char(&lam))?.get(&drop(lam));
        let m2 = ok(e.table().weyl_char(&lam2))?.get(&drop(lam2));
        prop_assert_eq!(m1, m2);
        Ok(())
    })
}

/// The tensor verdict against the closed-form classification, where definite.
pub fn oracle_agreement(ty: RootType, p: u32, lam: &Weight, mu: &Weight) -> bool {
    let e = engine(ty, p);
    let want = oracle(ty, p, lam, mu).unwrap().value;
    let got = is_mf_engine(&e, lam, mu).unwrap().value;
    want == VerdictValue::Unknown || got == VerdictValue::Unknown || want == got
}
