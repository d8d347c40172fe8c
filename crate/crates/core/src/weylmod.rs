//! Jantzen sum formula, composition factors of Weyl modules and characters
//! of simple modules, with closed-form rank-2 tables as an independent check.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::chars::{product_with_weyl, Character, Graded, WeylCombination, WeylTable};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootType};
use crate::weights::{alcove_locate, dot_reflect, leq, p_adic_expand, AlcoveName, Weight};

/// Composition factors with multiplicities, sorted by decreasing height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    factors: Vec<(Weight, u64)>,
}

impl Decomposition {
    /// Merges repeated weights and sorts; zero multiplicities are dropped.
    pub fn new(rs: &RootSystem, factors: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        let mut merged: HashMap<Weight, u64> = HashMap::new();
        for (w, m) in factors {
            *merged.entry(w).or_insert(0) += m;
        }
        let mut ws: Vec<Weight> = merged.iter().filter(|(_, &m)| m > 0).map(|(w, _)| *w).collect();
        crate::chars::sort_by_height_desc(rs, &mut ws);
        Decomposition { factors: ws.into_iter().map(|w| (w, merged[&w])).collect() }
    }

    pub fn factors(&self) -> &[(Weight, u64)] {
        &self.factors
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.factors.iter().find(|(v, _)| v == w).map_or(0, |&(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.factors.iter().map(|&(_, m)| m).sum()
    }

    /// The highest factor occurring more than once.
    pub fn first_repeated(&self) -> Option<Weight> {
        self.factors.iter().find(|&&(_, m)| m > 1).map(|&(w, _)| w)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.first_repeated().is_none()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "L{w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionOutcome {
    Resolved(Decomposition),
    /// Some Jantzen coefficient exceeded 1; `weights` are the offenders.
    Undetermined { reason: String, weights: Vec<Weight> },
}

impl ResolutionOutcome {
    pub fn resolved(self) -> Option<Decomposition> {
        match self {
            ResolutionOutcome::Resolved(d) => Some(d),
            ResolutionOutcome::Undetermined { .. } => None,
        }
    }

    pub fn as_resolved(&self) -> Option<&Decomposition> {
        match self {
            ResolutionOutcome::Resolved(d) => Some(d),
            ResolutionOutcome::Undetermined { .. } => None,
        }
    }

    /// Turns an `Undetermined` error into the undetermined outcome.
    pub(crate) fn capture(r: Result<Decomposition>) -> Result<Self> {
        match r {
            Ok(d) => Ok(ResolutionOutcome::Resolved(d)),
            Err(e @ Error::Undetermined { .. }) => {
                let weights = match &e {
                    Error::Undetermined { offending, .. } => offending.clone(),
                    _ => unreachable!(),
                };
                Ok(ResolutionOutcome::Undetermined { reason: e.to_string(), weights })
            }
            Err(e) => Err(e),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn valuation(mut n: i64, p: i64) -> i64 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Simple-module computations for one root system and one characteristic.
///
/// Simple characters are kept in the Weyl-character basis and memoized; the
/// memo is idempotent, so racing threads may recompute but never disagree.
#[derive(Debug)]
pub struct Engine {
    table: Arc<WeylTable>,
    p: u32,
    simple_weyl: RwLock<HashMap<Weight, Arc<WeylCombination>>>,
    simple_full: RwLock<HashMap<Weight, Arc<Character>>>,
    weyl_factors: RwLock<HashMap<Weight, Arc<Vec<Weight>>>>,
}

impl Engine {
    pub fn new(rs: RootSystem, p: u32) -> Result<Self> {
        Self::with_table(Arc::new(WeylTable::new(Arc::new(rs))), p)
    }

    /// Shares Weyl characters with other engines over the same root system.
    pub fn with_table(table: Arc<WeylTable>, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Engine {
            table,
            p,
            simple_weyl: RwLock::default(),
            simple_full: RwLock::default(),
            weyl_factors: RwLock::default(),
        })
    }

    pub fn for_type(ty: RootType, p: u32) -> Result<Self> {
        Self::new(RootSystem::new(ty)?, p)
    }

    pub fn root_system(&self) -> &RootSystem {
        self.table.root_system()
    }

    pub fn table(&self) -> &Arc<WeylTable> {
        &self.table
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.root_system().check_rank(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(*lambda))
        }
    }

    fn check_restricted(&self, lambda: &Weight) -> Result<()> {
        self.check_dominant(lambda)?;
        if lambda.is_restricted(self.p) {
            Ok(())
        } else {
            Err(Error::NotRestricted { weight: *lambda, p: self.p })
        }
    }

    /// The Jantzen sum `Σ_{α>0} Σ_{0<mp<⟨λ+ρ,α∨⟩} ν_p(mp) χ(s_{α,mp}•λ)` in
    /// the Weyl basis.
    pub fn jantzen_sum_weyl(&self, lambda: &Weight) -> Result<WeylCombination> {
        self.check_dominant(lambda)?;
        let rs = self.root_system();
        let p = self.p as i64;
        let mut out = WeylCombination::zero(rs.rank());
        for r in 0..rs.positive_roots().len() {
            let x = rs.pairing(&(*lambda + rs.rho()), r);
            let mut m = 1;
            while m * p < x {
                let v = 1 + valuation(m, p);
                out.add_extended(rs, &dot_reflect(rs, r, m, self.p, lambda), v)?;
                m += 1;
            }
        }
        Ok(out)
    }

    pub fn jantzen_sum(&self, lambda: &Weight) -> Result<Character> {
        self.table.expand(&self.jantzen_sum_weyl(lambda)?)
    }

    /// Δ(λ) is simple exactly when the Jantzen sum vanishes.
    pub fn weyl_is_simple(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.jantzen_sum_weyl(lambda)?.is_zero())
    }

    /// Writes a combination of Weyl characters as a non-negative combination
    /// of simple characters by peeling off the highest term.
    pub fn decompose_into_simples(&self, comb: &WeylCombination) -> Result<Vec<(Weight, i64)>> {
        let rs = self.root_system();
        let mut rest = Graded::new(rs);
        for (w, &k) in comb.iter() {
            rest.add(*w, k)?;
        }
        let mut out = Vec::new();
        while let Some((eta, k)) = rest.top() {
            if k < 0 {
                return Err(Error::Invariant(format!("negative coefficient {k} of L{eta}")));
            }
            out.push((eta, k));
            for (nu, &d) in self.simple_weyl(&eta)?.iter() {
                rest.add(*nu, -k.checked_mul(d).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Same as [`Engine::decompose_into_simples`] on a full character,
    /// subtracting simple characters at the maximal weight chosen by `pick`.
    pub fn decompose_character_into_simples(
        &self,
        c: &Character,
        pick: &mut dyn FnMut(&[Weight]) -> usize,
    ) -> Result<Vec<(Weight, i64)>> {
        let rs = self.root_system();
        let mut rest = c.clone();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let maximal = rest.maximal_weights(rs);
            if let Some(bad) = maximal.iter().find(|w| !w.is_dominant()) {
                return Err(Error::NotInvariant(*bad));
            }
            let eta = maximal[pick(&maximal) % maximal.len()];
            let k = rest.get(&eta);
            if k < 0 {
                return Err(Error::Invariant(format!("negative coefficient {k} of L{eta}")));
            }
            out.push((eta, k));
            rest = rest.add_scaled(&*self.simple_char(&eta)?, -k)?;
        }
        Ok(out)
    }

    /// Factors of Δ(λ) other than L(λ); errors with `Undetermined` when some
    /// Jantzen coefficient exceeds 1.
    fn lower_factors(&self, lambda: &Weight) -> Result<Arc<Vec<Weight>>> {
        if let Some(v) = self.weyl_factors.read().expect("cache lock").get(lambda) {
            return Ok(v.clone());
        }
        let coeffs = self.decompose_into_simples(&self.jantzen_sum_weyl(lambda)?)?;
        let offending: Vec<Weight> = coeffs.iter().filter(|&&(_, k)| k > 1).map(|&(w, _)| w).collect();
        if !offending.is_empty() {
            return Err(Error::Undetermined { weight: *lambda, offending });
        }
        let v = Arc::new(coeffs.into_iter().map(|(w, _)| w).collect::<Vec<_>>());
        self.weyl_factors.write().expect("cache lock").insert(*lambda, v.clone());
        Ok(v)
    }

    /// Composition factors of Δ(λ) for p-restricted λ.
    pub fn weyl_composition_factors(&self, lambda: &Weight) -> Result<ResolutionOutcome> {
        self.check_restricted(lambda)?;
        ResolutionOutcome::capture(self.lower_factors(lambda).map(|lower| {
            Decomposition::new(self.root_system(), std::iter::once((*lambda, 1)).chain(lower.iter().map(|&w| (w, 1))))
        }))
    }

    /// ch L(λ) in the Weyl basis. Restricted weights subtract the lower
    /// composition factors of Δ(λ); others go through Steinberg's tensor
    /// product theorem, `L(λ) = L(λ_0) ⊗ L(λ')^[1]`.
    pub fn simple_weyl(&self, lambda: &Weight) -> Result<Arc<WeylCombination>> {
        if let Some(v) = self.simple_weyl.read().expect("cache lock").get(lambda) {
            return Ok(v.clone());
        }
        self.check_dominant(lambda)?;
        let rs = self.root_system();
        let mut comb = WeylCombination::single(*lambda);
        if lambda.is_restricted(self.p) {
            for mu in self.lower_factors(lambda)?.iter() {
                comb.add_scaled(&*self.simple_weyl(mu)?, -1)?;
            }
        } else {
            let base = p_adic_expand(lambda, self.p)?.layers[0];
            let upper = (*lambda - base).div_exact(self.p as i32);
            let twisted = self.simple_char(&upper)?.twist(self.p as i32);
            comb = WeylCombination::zero(rs.rank());
            for (nu, &d) in self.simple_weyl(&base)?.iter() {
                comb.add_scaled(&product_with_weyl(rs, &twisted, nu)?, d)?;
            }
        }
        let v = Arc::new(comb);
        self.simple_weyl.write().expect("cache lock").insert(*lambda, v.clone());
        Ok(v)
    }

    /// The full character of L(λ).
    pub fn simple_char(&self, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(c) = self.simple_full.read().expect("cache lock").get(lambda) {
            return Ok(c.clone());
        }
        self.check_dominant(lambda)?;
        let c = if lambda.is_restricted(self.p) {
            self.table.expand(&*self.simple_weyl(lambda)?)?
        } else {
            let mut acc = Character::exp(self.root_system().zero());
            let mut q = 1i32;
            for layer in p_adic_expand(lambda, self.p)?.layers {
                if !layer.is_zero() {
                    acc = acc.mul(&self.simple_char(&layer)?.twist(q))?;
                }
                q = q.checked_mul(self.p as i32).ok_or(Error::Overflow)?;
            }
            acc
        };
        let c = Arc::new(c);
        self.simple_full.write().expect("cache lock").insert(*lambda, c.clone());
        Ok(c)
    }

    /// m_{L(λ)}(ν).
    pub fn simple_multiplicity(&self, lambda: &Weight, nu: &Weight) -> Result<i64> {
        Ok(self.simple_char(lambda)?.get(nu))
    }

    /// Composition factors of Δ(λ) read off the alcove of λ (types A2, B2).
    pub fn rank2_factor_oracle(&self, lambda: &Weight) -> Result<Decomposition> {
        self.check_restricted(lambda)?;
        let rs = self.root_system();
        let name = alcove_locate(rs, lambda, self.p).rank2_name;
        let lower = match (rs.root_type(), name) {
            (RootType::A(2), Some(AlcoveName::C2)) => {
                let theta = lambda.get(0) + lambda.get(1) + 2 - self.p as i32;
                Some(*lambda - rs.rho() * theta)
            }
            (RootType::A(2), Some(_)) => None,
            (RootType::B2, Some(AlcoveName::C2)) => Some(self.linked_below(lambda, AlcoveName::C1)?),
            (RootType::B2, Some(AlcoveName::C3)) => Some(self.linked_below(lambda, AlcoveName::C2)?),
            (RootType::B2, Some(AlcoveName::C4)) => Some(self.linked_below(lambda, AlcoveName::C3)?),
            (RootType::B2, Some(AlcoveName::F47)) => Some(self.linked_below(lambda, AlcoveName::F35)?),
            (RootType::B2, Some(_)) => None,
            (ty, _) => return Err(Error::Unsupported(format!("closed-form Weyl module tables for {ty}"))),
        };
        Ok(Decomposition::new(rs, std::iter::once((*lambda, 1)).chain(lower.map(|w| (w, 1)))))
    }

    /// The unique dominant weight below λ in the named alcove or wall that is
    /// the image of λ under a single affine dot-reflection.
    fn linked_below(&self, lambda: &Weight, target: AlcoveName) -> Result<Weight> {
        let rs = self.root_system();
        let mut found: Vec<Weight> = Vec::new();
        for r in 0..rs.positive_roots().len() {
            for m in 0..=3 {
                let image = dot_reflect(rs, r, m, self.p, lambda);
                if image.is_dominant()
                    && image != *lambda
                    && leq(rs, &image, lambda)
                    && alcove_locate(rs, &image, self.p).rank2_name == Some(target)
                    && !found.contains(&image)
                {
                    found.push(image);
                }
            }
        }
        match found.as_slice() {
            [w] => Ok(*w),
            _ => Err(Error::Invariant(format!("expected one weight in {target} linked to {lambda}, found {found:?}"))),
        }
    }
}
