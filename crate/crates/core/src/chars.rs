//! The character ring: sparse exact characters, Freudenthal multiplicities,
//! Weyl characters and dimensions, and change of basis into Weyl characters.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weights::{leq, Weight};

fn add_checked(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul_checked(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// A finitely supported map from weights to integers, no zero values stored.
#[derive(Clone, Debug)]
pub struct Character {
    rank: usize,
    support: BTreeMap<Weight, i64>,
    invariant: bool,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.support == other.support
    }
}

impl Eq for Character {}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character { rank, support: BTreeMap::new(), invariant: true }
    }

    /// The formal exponential e^λ.
    pub fn exp(lambda: Weight) -> Self {
        Character {
            rank: lambda.rank(),
            support: BTreeMap::from([(lambda, 1)]),
            invariant: lambda.is_zero(),
        }
    }

    /// Builds from a map, dropping zeros. `invariant` is a claim the caller
    /// vouches for; see [`Character::is_invariant_under`] to check it.
    pub fn from_map(rank: usize, map: BTreeMap<Weight, i64>, invariant: bool) -> Result<Self> {
        for w in map.keys() {
            if w.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: w.rank() });
            }
        }
        let support = map.into_iter().filter(|&(_, m)| m != 0).collect();
        Ok(Character { rank, support, invariant })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_invariant(&self) -> bool {
        self.invariant
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.support.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.support.iter()
    }

    pub fn support(&self) -> &BTreeMap<Weight, i64> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn dimension(&self) -> Result<i64> {
        self.support.values().try_fold(0i64, |acc, &m| add_checked(acc, m))
    }

    /// Entries at dominant weights, in weight order.
    pub fn dominant_part(&self) -> Vec<(Weight, i64)> {
        self.support.iter().filter(|(w, _)| w.is_dominant()).map(|(w, m)| (*w, *m)).collect()
    }

    fn check_rank(&self, other: &Character) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank, got: other.rank })
        }
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.add_scaled(other, -1)
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &Character, k: i64) -> Result<Character> {
        self.check_rank(other)?;
        let mut support = self.support.clone();
        for (w, &m) in &other.support {
            accumulate(&mut support, *w, mul_checked(m, k)?)?;
        }
        Ok(Character { rank: self.rank, support, invariant: self.invariant && other.invariant })
    }

    pub fn scale(&self, k: i64) -> Result<Character> {
        if k == 0 {
            return Ok(Character { invariant: self.invariant, ..Character::zero(self.rank) });
        }
        let support = self
            .support
            .iter()
            .map(|(w, &m)| Ok((*w, mul_checked(m, k)?)))
            .collect::<Result<_>>()?;
        Ok(Character { rank: self.rank, support, invariant: self.invariant })
    }

    /// Convolution product: the character of a tensor product.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.check_rank(other)?;
        let mut acc: HashMap<Weight, i64> = HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (x, &m) in &self.support {
            for (y, &n) in &other.support {
                let e = acc.entry(*x + *y).or_insert(0);
                *e = add_checked(*e, mul_checked(m, n)?)?;
            }
        }
        let support = acc.into_iter().filter(|&(_, m)| m != 0).collect();
        Ok(Character { rank: self.rank, support, invariant: self.invariant && other.invariant })
    }

    /// Multiplies every support weight by `q` (Frobenius twist by q = p^i).
    pub fn twist(&self, q: i32) -> Character {
        let support = self.support.iter().map(|(w, &m)| (*w * q, m)).collect();
        Character { rank: self.rank, support, invariant: self.invariant }
    }

    /// Checks `m(s_i λ) = m(λ)` for every stored weight and simple reflection.
    pub fn is_invariant_under(&self, rs: &RootSystem) -> bool {
        self.support
            .iter()
            .all(|(w, &m)| (0..rs.rank()).all(|i| self.get(&rs.simple_reflect(w, i)) == m))
    }

    /// Maximal support weights with respect to the dominance order.
    pub fn maximal_weights(&self, rs: &RootSystem) -> Vec<Weight> {
        let ws: Vec<Weight> = self.support.keys().copied().collect();
        ws.iter()
            .filter(|&&w| !ws.iter().any(|&v| v != w && leq(rs, &w, &v)))
            .copied()
            .collect()
    }
}

fn accumulate(map: &mut BTreeMap<Weight, i64>, w: Weight, k: i64) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    let e = map.entry(w).or_insert(0);
    *e = add_checked(*e, k)?;
    if *e == 0 {
        map.remove(&w);
    }
    Ok(())
}

/// All dominant μ ≤ λ, sorted by decreasing height. Every such μ is joined
/// to λ by a chain of dominant weights differing by positive roots, so the
/// search never leaves the dominant chamber.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::from([*lambda]);
    let mut stack = vec![*lambda];
    while let Some(x) = stack.pop() {
        for root in rs.positive_roots() {
            let y = x - root.fw;
            if y.is_dominant() && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    sort_by_height_desc(rs, &mut out);
    out
}

pub(crate) fn sort_by_height_desc(rs: &RootSystem, ws: &mut [Weight]) {
    ws.sort_by(|a, b| rs.height_scaled(b).cmp(&rs.height_scaled(a)).then_with(|| b.cmp(a)));
}

/// Weight multiplicities of Δ(λ) at dominant weights, by Freudenthal's
/// recursion, sorted by decreasing height.
pub fn freudenthal_dominant(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Weight, i64)>> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(*lambda));
    }
    let doms = dominant_weights_below(rs, lambda);
    let rho = rs.rho();
    let lr = *lambda + rho;
    let top = rs.inner_scaled(&lr, &lr);
    let mut mult: HashMap<Weight, i64> = HashMap::with_capacity(doms.len());
    let mut out = Vec::with_capacity(doms.len());
    mult.insert(*lambda, 1);
    out.push((*lambda, 1));
    for mu in doms.into_iter().skip(1) {
        let mr = mu + rho;
        let den = top - rs.inner_scaled(&mr, &mr);
        if den <= 0 {
            return Err(Error::Invariant(format!("Freudenthal denominator {den} at {mu} below {lambda}")));
        }
        let mut sum = 0i128;
        for root in rs.positive_roots() {
            let mut nu = mu + root.fw;
            // α-strings through a weight of Δ(λ) are unbroken
            while let Some(&m) = mult.get(&rs.dominant_conjugate(&nu)) {
                sum += m as i128 * rs.inner_scaled(&nu, &root.fw);
                nu = nu + root.fw;
            }
        }
        let num = 2 * sum;
        if num % den != 0 {
            return Err(Error::Invariant(format!("Freudenthal quotient not integral at {mu} below {lambda}")));
        }
        let m = i64::try_from(num / den).map_err(|_| Error::Overflow)?;
        if m <= 0 {
            return Err(Error::Invariant(format!("non-positive multiplicity {m} at {mu} below {lambda}")));
        }
        mult.insert(mu, m);
        out.push((mu, m));
    }
    Ok(out)
}

/// Extends dominant multiplicities to a W-invariant character.
pub fn extend_by_orbits(rs: &RootSystem, dominant: &[(Weight, i64)]) -> Character {
    let mut support = BTreeMap::new();
    for &(mu, m) in dominant {
        if m != 0 {
            for w in rs.orbit_of_dominant(&mu) {
                support.insert(w, m);
            }
        }
    }
    Character { rank: rs.rank(), support, invariant: true }
}

/// The character χ(λ) of the Weyl module Δ(λ).
pub fn freudenthal_weyl_char(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    Ok(extend_by_orbits(rs, &freudenthal_dominant(rs, lambda)?))
}

/// Weyl's degree formula.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<i64> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(*lambda));
    }
    let shifted = *lambda + rs.rho();
    let mut num = 1i128;
    let mut den = 1i128;
    for r in 0..rs.positive_roots().len() {
        num = num.checked_mul(rs.pairing(&shifted, r) as i128).ok_or(Error::Overflow)?;
        den *= rs.pairing(&rs.rho(), r) as i128;
        let g = num::integer::gcd(num, den);
        num /= g;
        den /= g;
    }
    if den != 1 {
        return Err(Error::Invariant(format!("Weyl degree of {lambda} not integral")));
    }
    i64::try_from(num).map_err(|_| Error::Overflow)
}

/// χ(λ) for arbitrary λ as `±χ(w•λ)` with `w•λ` dominant, or `None` when
/// χ(λ) = 0.
pub fn extended_weyl_char(rs: &RootSystem, lambda: &Weight) -> Option<(i64, Weight)> {
    let d = rs.dominant_dot_representative(lambda);
    (d.sign != 0).then_some((d.sign as i64, d.weight))
}

/// A ℤ-linear combination of Weyl characters χ(ν), ν dominant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylCombination {
    rank: usize,
    terms: BTreeMap<Weight, i64>,
}

impl WeylCombination {
    pub fn zero(rank: usize) -> Self {
        WeylCombination { rank, terms: BTreeMap::new() }
    }

    pub fn single(lambda: Weight) -> Self {
        WeylCombination { rank: lambda.rank(), terms: BTreeMap::from([(lambda, 1)]) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Weight, k: i64) -> Result<()> {
        debug_assert!(w.is_dominant());
        accumulate(&mut self.terms, w, k)
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &WeylCombination, k: i64) -> Result<()> {
        for (w, &c) in &other.terms {
            accumulate(&mut self.terms, *w, mul_checked(c, k)?)?;
        }
        Ok(())
    }

    /// Adds `k·χ(λ)` for arbitrary λ, folding through the dot action.
    pub fn add_extended(&mut self, rs: &RootSystem, lambda: &Weight, k: i64) -> Result<()> {
        match extended_weyl_char(rs, lambda) {
            Some((s, w)) => accumulate(&mut self.terms, w, mul_checked(s, k)?),
            None => Ok(()),
        }
    }

    /// Terms sorted by decreasing height, ties by decreasing weight.
    pub fn sorted(&self, rs: &RootSystem) -> Vec<(Weight, i64)> {
        let mut ws: Vec<Weight> = self.terms.keys().copied().collect();
        sort_by_height_desc(rs, &mut ws);
        ws.into_iter().map(|w| (w, self.terms[&w])).collect()
    }

    pub fn dimension(&self, rs: &RootSystem) -> Result<i64> {
        self.terms.iter().try_fold(0i64, |acc, (w, &k)| add_checked(acc, mul_checked(k, weyl_dim(rs, w)?)?))
    }
}

/// A map keyed by (height, weight) so the maximal-height entry is at the end.
pub(crate) struct Graded<'a> {
    rs: &'a RootSystem,
    map: BTreeMap<(i64, Weight), i64>,
}

impl<'a> Graded<'a> {
    pub(crate) fn new(rs: &'a RootSystem) -> Self {
        Graded { rs, map: BTreeMap::new() }
    }

    pub(crate) fn add(&mut self, w: Weight, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let key = (self.rs.height_scaled(&w), w);
        let e = self.map.entry(key).or_insert(0);
        *e = add_checked(*e, k)?;
        if *e == 0 {
            self.map.remove(&key);
        }
        Ok(())
    }

    pub(crate) fn top(&self) -> Option<(Weight, i64)> {
        self.map.last_key_value().map(|(&(_, w), &k)| (w, k))
    }
}

type Cache<T> = RwLock<HashMap<Weight, Arc<T>>>;

/// Memoized Weyl characters for one root system. The cache is idempotent, so
/// concurrent duplicate computation only costs time.
#[derive(Debug)]
pub struct WeylTable {
    rs: Arc<RootSystem>,
    dominant: Cache<Vec<(Weight, i64)>>,
    full: Cache<Character>,
}

impl WeylTable {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        WeylTable { rs, dominant: RwLock::default(), full: RwLock::default() }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// Dominant multiplicities of Δ(λ), sorted by decreasing height.
    pub fn dominant(&self, lambda: &Weight) -> Result<Arc<Vec<(Weight, i64)>>> {
        if let Some(v) = self.dominant.read().expect("cache lock").get(lambda) {
            return Ok(v.clone());
        }
        let v = Arc::new(freudenthal_dominant(&self.rs, lambda)?);
        self.dominant.write().expect("cache lock").insert(*lambda, v.clone());
        Ok(v)
    }

    pub fn weyl_char(&self, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(c) = self.full.read().expect("cache lock").get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(extend_by_orbits(&self.rs, &self.dominant(lambda)?));
        self.full.write().expect("cache lock").insert(*lambda, c.clone());
        Ok(c)
    }

    /// Dominant multiplicities of `Σ k_ν χ(ν)`.
    pub fn expand_dominant(&self, comb: &WeylCombination) -> Result<BTreeMap<Weight, i64>> {
        let mut acc = BTreeMap::new();
        for (nu, &k) in comb.iter() {
            for &(w, m) in self.dominant(nu)?.iter() {
                accumulate(&mut acc, w, mul_checked(k, m)?)?;
            }
        }
        Ok(acc)
    }

    /// The character `Σ k_ν χ(ν)`.
    pub fn expand(&self, comb: &WeylCombination) -> Result<Character> {
        let dom: Vec<(Weight, i64)> = self.expand_dominant(comb)?.into_iter().collect();
        Ok(extend_by_orbits(&self.rs, &dom))
    }

    /// Writes a W-invariant character in the basis of Weyl characters,
    /// always subtracting at the maximal weight of largest height, ties
    /// broken towards the lexicographically largest weight.
    pub fn decompose(&self, c: &Character) -> Result<WeylCombination> {
        let rs = &*self.rs;
        let mut rest = Graded::new(rs);
        for (w, &m) in c.iter() {
            rest.add(*w, m)?;
        }
        let mut out = WeylCombination::zero(rs.rank());
        while let Some((eta, k)) = rest.top() {
            if !eta.is_dominant() {
                return Err(Error::NotInvariant(eta));
            }
            out.add_term(eta, k)?;
            for (w, &m) in self.weyl_char(&eta)?.iter() {
                rest.add(*w, mul_checked(-k, m)?)?;
            }
        }
        Ok(out)
    }

    /// Like [`WeylTable::decompose`], but `pick` chooses which maximal
    /// weight to peel off next from the full list of maximal weights.
    pub fn decompose_with(
        &self,
        c: &Character,
        pick: &mut dyn FnMut(&[Weight]) -> usize,
    ) -> Result<WeylCombination> {
        let rs = &*self.rs;
        let mut rest = c.clone();
        let mut out = WeylCombination::zero(rs.rank());
        while !rest.is_empty() {
            let maximal = rest.maximal_weights(rs);
            if let Some(bad) = maximal.iter().find(|w| !w.is_dominant()) {
                return Err(Error::NotInvariant(*bad));
            }
            let eta = maximal[pick(&maximal) % maximal.len()];
            let k = rest.get(&eta);
            out.add_term(eta, k)?;
            rest = rest.add_scaled(&*self.weyl_char(&eta)?, -k)?;
        }
        Ok(out)
    }

    /// `a·χ(μ) = Σ_ν a(ν) χ(μ+ν)` for W-invariant a.
    pub fn product_with_weyl(&self, a: &Character, mu: &Weight) -> Result<WeylCombination> {
        product_with_weyl(&self.rs, a, mu)
    }
}

/// The unique expression of a W-invariant character in Weyl characters.
pub fn decompose_into_weyl(rs: &RootSystem, c: &Character) -> Result<WeylCombination> {
    WeylTable::new(Arc::new(rs.clone())).decompose(c)
}

/// `a·χ(μ)` in the Weyl basis, for W-invariant a and dominant μ.
pub fn product_with_weyl(rs: &RootSystem, a: &Character, mu: &Weight) -> Result<WeylCombination> {
    if !a.is_invariant() {
        return Err(Error::Precondition("product_with_weyl needs a W-invariant character".into()));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(*mu));
    }
    let mut out = WeylCombination::zero(rs.rank());
    for (nu, &m) in a.iter() {
        out.add_extended(rs, &(*mu + *nu), m)?;
    }
    Ok(out)
}
