//! Tensor products of simple modules: characters, composition factors,
//! multiplicity-freeness and the reduction to p-restricted layers.

use crate::chars::{product_with_weyl, Character, WeylCombination, WeylTable};
use crate::classify::{Verdict, VerdictValue};
use crate::error::{Error, Result};
use crate::weights::{p_adic_expand, Weight};
use crate::weylmod::{Decomposition, Engine, ResolutionOutcome};

pub const ENGINE_CLAUSE: &str = "engine";

/// ch L(λ) · ch L(μ) as a full character.
pub fn tensor_char(engine: &Engine, lambda: &Weight, mu: &Weight) -> Result<Character> {
    engine.simple_char(lambda)?.mul(&*engine.simple_char(mu)?)
}

/// ch L(λ) · ch L(μ) in the Weyl basis, as `Σ_ν d_ν ch L(λ)·χ(ν)` where
/// `ch L(μ) = Σ_ν d_ν χ(ν)`. The factor expanded in full is the one giving
/// the smaller amount of work.
pub fn tensor_weyl(engine: &Engine, lambda: &Weight, mu: &Weight) -> Result<WeylCombination> {
    let (cl, cm) = (engine.simple_char(lambda)?, engine.simple_char(mu)?);
    let (wl, wm) = (engine.simple_weyl(lambda)?, engine.simple_weyl(mu)?);
    let (full, comb) = if cl.len() * wm.len() <= cm.len() * wl.len() { (cl, wm) } else { (cm, wl) };
    let rs = engine.root_system();
    let mut out = WeylCombination::zero(rs.rank());
    for (nu, &d) in comb.iter() {
        out.add_scaled(&product_with_weyl(rs, &full, nu)?, d)?;
    }
    Ok(out)
}

fn to_decomposition(engine: &Engine, coeffs: Vec<(Weight, i64)>) -> Decomposition {
    Decomposition::new(engine.root_system(), coeffs.into_iter().map(|(w, k)| (w, k as u64)))
}

/// Composition factors of L(λ) ⊗ L(μ) by repeatedly removing the simple
/// character at the highest remaining weight.
pub fn tensor_factors(engine: &Engine, lambda: &Weight, mu: &Weight) -> Result<ResolutionOutcome> {
    ResolutionOutcome::capture(
        tensor_weyl(engine, lambda, mu).and_then(|c| Ok(to_decomposition(engine, engine.decompose_into_simples(&c)?))),
    )
}

/// The same decomposition computed on full characters, letting `pick`
/// choose among the maximal weights at each step.
pub fn tensor_factors_by_characters(
    engine: &Engine,
    lambda: &Weight,
    mu: &Weight,
    pick: &mut dyn FnMut(&[Weight]) -> usize,
) -> Result<ResolutionOutcome> {
    ResolutionOutcome::capture(tensor_char(engine, lambda, mu).and_then(|c| {
        Ok(to_decomposition(engine, engine.decompose_character_into_simples(&c, pick)?))
    }))
}

fn verdict_from(outcome: &ResolutionOutcome, clause: &str) -> Verdict {
    match outcome {
        ResolutionOutcome::Resolved(d) => match d.first_repeated() {
            None => Verdict::new(VerdictValue::MultiplicityFree, clause),
            Some(w) => Verdict::new(VerdictValue::HasMultiplicity, clause).with_witness(w),
        },
        ResolutionOutcome::Undetermined { .. } => Verdict::new(VerdictValue::Unknown, clause),
    }
}

/// Multiplicity-freeness of L(λ) ⊗ L(μ) by brute force.
pub fn is_mf_engine(engine: &Engine, lambda: &Weight, mu: &Weight) -> Result<Verdict> {
    Ok(verdict_from(&tensor_factors(engine, lambda, mu)?, ENGINE_CLAUSE))
}

/// Multiplicity-freeness for arbitrary dominant weights: the product is
/// multiplicity free exactly when every pair of p-adic layers is.
pub fn is_mf(engine: &Engine, lambda: &Weight, mu: &Weight) -> Result<Verdict> {
    let p = engine.p();
    let ll = p_adic_expand(lambda, p)?.layers;
    let ml = p_adic_expand(mu, p)?.layers;
    let zero = engine.root_system().zero();
    let mut unknown = false;
    for i in 0..ll.len().max(ml.len()) {
        let (a, b) = (ll.get(i).copied().unwrap_or(zero), ml.get(i).copied().unwrap_or(zero));
        let v = is_mf_engine(engine, &a, &b)?;
        match v.value {
            VerdictValue::HasMultiplicity => {
                return Ok(Verdict { clause: format!("engine, layer {i}"), ..v });
            }
            VerdictValue::Unknown => unknown = true,
            VerdictValue::MultiplicityFree => {}
        }
    }
    let value = if unknown { VerdictValue::Unknown } else { VerdictValue::MultiplicityFree };
    Ok(Verdict::new(value, ENGINE_CLAUSE))
}

/// Characteristic-zero multiplicity-freeness: χ(λ)χ(μ) has all Weyl
/// coefficients equal to 1.
pub fn mf_char0(table: &WeylTable, lambda: &Weight, mu: &Weight) -> Result<bool> {
    let comb = char0_decomposition(table, lambda, mu)?;
    let mf = comb.iter().all(|(_, &k)| k == 1);
    Ok(mf)
}

/// χ(λ)χ(μ) in the Weyl basis, expanding the smaller factor.
pub fn char0_decomposition(table: &WeylTable, lambda: &Weight, mu: &Weight) -> Result<WeylCombination> {
    let rs = table.root_system();
    for w in [lambda, mu] {
        rs.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(*w));
        }
    }
    let (small, other) = if table.dominant(lambda)?.len() <= table.dominant(mu)?.len() { (lambda, mu) } else { (mu, lambda) };
    product_with_weyl(rs, &*table.weyl_char(small)?, other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootType;

    fn w(c: &[i32]) -> Weight {
        Weight::from_slice(c)
    }

    #[test]
    fn tensor_char_examples() {
        let a1 = Engine::for_type(RootType::A(1), 7).unwrap();
        let t = a1.table();
        let expected = t.weyl_char(&w(&[3])).unwrap().mul(&t.weyl_char(&w(&[2])).unwrap()).unwrap();
        assert_eq!(tensor_char(&a1, &w(&[3]), &w(&[2])).unwrap(), expected);

        let a2 = Engine::for_type(RootType::A(2), 5).unwrap();
        assert_eq!(tensor_char(&a2, &w(&[2, 2]), &w(&[0, 0])).unwrap(), *a2.simple_char(&w(&[2, 2])).unwrap());
        assert_eq!(tensor_char(&a2, &w(&[1, 0]), &w(&[0, 4])).unwrap().get(&w(&[1, 4])), 1);
    }

    #[test]
    fn tensor_factor_examples() {
        let a2 = Engine::for_type(RootType::A(2), 5).unwrap();
        let d = tensor_factors(&a2, &w(&[1, 0]), &w(&[0, 4])).unwrap().resolved().unwrap();
        assert_eq!(d.factors(), &[(w(&[1, 4]), 1), (w(&[0, 3]), 1)]);
        let d = tensor_factors(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap().resolved().unwrap();
        assert!(d.multiplicity(&w(&[1, 1])) >= 2);
        let d = tensor_factors(&a2, &w(&[3, 1]), &w(&[0, 0])).unwrap().resolved().unwrap();
        assert_eq!(d.factors(), &[(w(&[3, 1]), 1)]);
    }

    #[test]
    fn verdict_examples() {
        let a1 = Engine::for_type(RootType::A(1), 7).unwrap();
        assert_eq!(is_mf_engine(&a1, &w(&[3]), &w(&[2])).unwrap().value, VerdictValue::MultiplicityFree);
        assert_eq!(is_mf_engine(&a1, &w(&[3]), &w(&[4])).unwrap().value, VerdictValue::HasMultiplicity);
        let a2 = Engine::for_type(RootType::A(2), 5).unwrap();
        let v = is_mf_engine(&a2, &w(&[2, 0]), &w(&[0, 2])).unwrap();
        assert_eq!(v.value, VerdictValue::HasMultiplicity);
        assert!(v.witness.is_some());
    }

    #[test]
    fn p_adic_examples() {
        let e2 = Engine::for_type(RootType::A(1), 2).unwrap();
        assert_eq!(is_mf(&e2, &w(&[5]), &w(&[2])).unwrap().value, VerdictValue::MultiplicityFree);
        let e3 = Engine::for_type(RootType::A(1), 3).unwrap();
        assert_eq!(is_mf(&e3, &w(&[4]), &w(&[4])).unwrap().value, VerdictValue::MultiplicityFree);
        assert_eq!(is_mf(&e3, &w(&[2]), &w(&[2])).unwrap().value, VerdictValue::HasMultiplicity);
    }

    #[test]
    fn char0_examples() {
        let b2 = Engine::for_type(RootType::B2, 5).unwrap();
        assert!(!mf_char0(b2.table(), &w(&[1, 1]), &w(&[1, 1])).unwrap());
        assert!(mf_char0(b2.table(), &w(&[1, 0]), &w(&[4, 4])).unwrap());
        let a1 = Engine::for_type(RootType::A(1), 5).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert!(mf_char0(a1.table(), &w(&[a]), &w(&[b])).unwrap());
            }
        }
    }
}
