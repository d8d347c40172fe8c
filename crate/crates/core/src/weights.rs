//! Weights in fundamental-weight coordinates, the dot action of the affine
//! Weyl group, alcove location, the linkage order and p-adic expansion.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootType};

/// Largest rank a [`Weight`] can carry.
pub const MAX_RANK: usize = 8;

/// An integral weight in the basis of fundamental weights.
///
/// Coordinates past `rank` are always zero, so the derived comparisons and
/// hashing agree with comparison of the coordinate slices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    rank: u8,
    c: [i32; MAX_RANK],
}

impl Weight {
    pub fn new(coords: &[i64]) -> Result<Self> {
        if coords.len() > MAX_RANK {
            return Err(Error::RankTooLarge(coords.len()));
        }
        let mut c = [0i32; MAX_RANK];
        for (slot, &x) in c.iter_mut().zip(coords) {
            *slot = i32::try_from(x).map_err(|_| Error::CoordinateRange(x))?;
        }
        Ok(Weight { rank: coords.len() as u8, c })
    }

    /// Builds a weight from small literals; panics on bad input.
    pub fn from_slice(coords: &[i32]) -> Self {
        assert!(coords.len() <= MAX_RANK, "rank {} too large", coords.len());
        let mut c = [0i32; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Weight { rank: coords.len() as u8, c }
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} too large");
        Weight { rank: rank as u8, c: [0; MAX_RANK] }
    }

    /// The fundamental weight ω_i, with `i` counted from 1.
    pub fn omega(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "ω_{i} out of range for rank {rank}");
        let mut w = Weight::zero(rank);
        w.c[i - 1] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.c[..self.rank as usize]
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.coords().iter().map(|&x| x as i64).collect()
    }

    pub fn get(&self, i: usize) -> i32 {
        self.coords()[i]
    }

    pub fn set(&mut self, i: usize, v: i32) {
        assert!(i < self.rank as usize);
        self.c[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }

    /// Dominant and every coordinate below `p`.
    pub fn is_restricted(&self, p: u32) -> bool {
        self.coords().iter().all(|&x| x >= 0 && (x as i64) < p as i64)
    }

    /// Coordinates in reverse order; this is the highest weight of the dual
    /// module in types A_n and the identity on B2.
    pub fn reversed(&self) -> Self {
        let mut w = *self;
        w.c[..self.rank as usize].reverse();
        w
    }

    /// Coordinate-wise quotient, asserting exact divisibility.
    pub fn div_exact(&self, q: i32) -> Self {
        let mut w = *self;
        for x in &mut w.c[..self.rank as usize] {
            assert_eq!(*x % q, 0, "weight {self} not divisible by {q}");
            *x /= q;
        }
        w
    }

    fn zip_with(self, other: Self, f: impl Fn(i32, i32) -> i32) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch in weight arithmetic");
        let mut c = [0; MAX_RANK];
        for (i, slot) in c.iter_mut().enumerate().take(self.rank as usize) {
            *slot = f(self.c[i], other.c[i]);
        }
        Weight { rank: self.rank, c }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::zero(self.rank()) - self
    }
}

impl Mul<i32> for Weight {
    type Output = Weight;
    fn mul(self, k: i32) -> Weight {
        self.zip_with(self, |a, _| a * k)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rank()))?;
        for x in self.coords() {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

/// `μ ≤ λ`: the difference is a non-negative integral combination of simple roots.
pub fn leq(rs: &RootSystem, mu: &Weight, lambda: &Weight) -> bool {
    match rs.root_coords_scaled(&(*lambda - *mu)) {
        Some(v) => {
            let d = rs.root_denominator();
            v.iter().all(|&x| x >= 0 && x % d == 0)
        }
        None => false,
    }
}

pub fn is_p_restricted(lambda: &Weight, p: u32) -> Result<bool> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(*lambda));
    }
    Ok(lambda.is_restricted(p))
}

/// `s_{α,mp}•λ` for the positive root with index `root`.
pub fn dot_reflect(rs: &RootSystem, root: usize, m: i64, p: u32, lambda: &Weight) -> Weight {
    let shift = rs.pairing(&(*lambda + rs.rho()), root) - m * p as i64;
    *lambda - rs.positive_roots()[root].fw * (shift as i32)
}

/// Names of the alcoves and walls meeting the p-restricted dominant region in
/// ranks A2 and B2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum AlcoveName {
    C1,
    C2,
    C3,
    C4,
    F12,
    F23,
    /// The A2 wall `b = p−1`, mirror image of F23 under duality.
    F23Prime,
    F34,
    F35,
    F46,
    F47,
    Vertex,
    NonRestricted,
}

impl AlcoveName {
    pub fn is_open_alcove(self) -> bool {
        matches!(self, AlcoveName::C1 | AlcoveName::C2 | AlcoveName::C3 | AlcoveName::C4)
    }
}

impl fmt::Display for AlcoveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlcoveName::C1 => "C1",
            AlcoveName::C2 => "C2",
            AlcoveName::C3 => "C3",
            AlcoveName::C4 => "C4",
            AlcoveName::F12 => "F12",
            AlcoveName::F23 => "F23",
            AlcoveName::F23Prime => "F23'",
            AlcoveName::F34 => "F34",
            AlcoveName::F35 => "F35",
            AlcoveName::F46 => "F46",
            AlcoveName::F47 => "F47",
            AlcoveName::Vertex => "vertex",
            AlcoveName::NonRestricted => "non-restricted",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveLocation {
    /// `n_α = ⌈⟨λ+ρ, α∨⟩ / p⌉`, indexed like the positive roots.
    pub indices: Vec<i64>,
    /// `(root index, m)` with `⟨λ+ρ, α∨⟩ = mp`.
    pub walls: Vec<(usize, i64)>,
    pub rank2_name: Option<AlcoveName>,
}

impl AlcoveLocation {
    pub fn is_open(&self) -> bool {
        self.walls.is_empty()
    }

    /// Membership in the upper closure of the alcove with the given indices.
    pub fn in_upper_closure(&self, indices: &[i64]) -> bool {
        self.indices == indices
    }

    /// Membership in the upper closure of the fundamental alcove.
    pub fn in_fundamental_closure(&self) -> bool {
        self.indices.iter().all(|&n| n == 1)
    }
}

fn ceil_div(x: i64, p: i64) -> i64 {
    -((-x).div_euclid(p))
}

pub fn alcove_locate(rs: &RootSystem, lambda: &Weight, p: u32) -> AlcoveLocation {
    let pp = p as i64;
    let shifted = *lambda + rs.rho();
    let mut indices = Vec::with_capacity(rs.positive_roots().len());
    let mut walls = Vec::new();
    for r in 0..rs.positive_roots().len() {
        let x = rs.pairing(&shifted, r);
        indices.push(ceil_div(x, pp));
        if x % pp == 0 {
            walls.push((r, x / pp));
        }
    }
    let rank2_name = match rs.root_type() {
        RootType::A(2) => Some(name_a2(lambda, pp)),
        RootType::B2 => Some(name_b2(lambda, pp)),
        _ => None,
    };
    AlcoveLocation { indices, walls, rank2_name }
}

fn name_a2(lambda: &Weight, p: i64) -> AlcoveName {
    if !lambda.is_restricted(p as u32) {
        return AlcoveName::NonRestricted;
    }
    let (x1, x2) = (lambda.get(0) as i64 + 1, lambda.get(1) as i64 + 1);
    let x3 = x1 + x2;
    match (x1 == p, x2 == p) {
        (true, true) => AlcoveName::Vertex,
        (true, false) => AlcoveName::F23,
        (false, true) => AlcoveName::F23Prime,
        _ if x3 < p => AlcoveName::C1,
        _ if x3 == p => AlcoveName::F12,
        _ => AlcoveName::C2,
    }
}

fn name_b2(lambda: &Weight, p: i64) -> AlcoveName {
    if !lambda.is_restricted(p as u32) {
        return AlcoveName::NonRestricted;
    }
    let (a, b) = (lambda.get(0) as i64, lambda.get(1) as i64);
    // pairings of λ+ρ with α1∨, α2∨, (α1+α2)∨, (α1+2α2)∨
    let (x1, x2, x3, x4) = (a + 1, b + 1, 2 * a + b + 3, a + b + 2);
    if x1 == p && x2 == p {
        AlcoveName::Vertex
    } else if x1 == p {
        AlcoveName::F46
    } else if x2 == p {
        if x3 <= 2 * p {
            AlcoveName::F35
        } else {
            AlcoveName::F47
        }
    } else if x3 < p {
        AlcoveName::C1
    } else if x3 == p {
        AlcoveName::F12
    } else if x4 < p {
        AlcoveName::C2
    } else if x4 == p {
        AlcoveName::F23
    } else if x3 < 2 * p {
        AlcoveName::C3
    } else if x3 == 2 * p {
        AlcoveName::F34
    } else {
        AlcoveName::C4
    }
}

/// `λ↑μ`: μ is reached from λ by a chain of affine dot-reflections, each
/// weakly increasing in the dominance order.
pub fn linked_up(rs: &RootSystem, lambda: &Weight, mu: &Weight, p: u32) -> bool {
    if lambda == mu {
        return true;
    }
    if !leq(rs, lambda, mu) {
        return false;
    }
    let pp = p as i64;
    let top = rs.height_scaled(mu);
    let rho = rs.rho();
    let mut seen = HashSet::from([*lambda]);
    let mut queue = VecDeque::from([*lambda]);
    while let Some(nu) = queue.pop_front() {
        for (r, root) in rs.positive_roots().iter().enumerate() {
            let x = rs.pairing(&(nu + rho), r);
            let step = rs.height_scaled(&root.fw);
            // s_{α,mp}•ν = ν + kα with k = mp − x, so k ≥ 1 moves strictly up.
            let mut m = ceil_div(x + 1, pp);
            loop {
                let k = m * pp - x;
                if rs.height_scaled(&nu) + k * step > top {
                    break;
                }
                let image = nu + root.fw * (k as i32);
                if image == *mu {
                    return true;
                }
                if leq(rs, &image, mu) && seen.insert(image) {
                    queue.push_back(image);
                }
                m += 1;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicExpansion {
    pub layers: Vec<Weight>,
}

impl PAdicExpansion {
    pub fn recombine(&self, p: u32) -> Weight {
        let mut acc = Weight::zero(self.layers[0].rank());
        let mut q = 1i32;
        for layer in &self.layers {
            acc = acc + *layer * q;
            q = q.saturating_mul(p as i32);
        }
        acc
    }
}

pub fn p_adic_expand(lambda: &Weight, p: u32) -> Result<PAdicExpansion> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(*lambda));
    }
    let p = p as i32;
    let mut rest = *lambda;
    let mut layers = Vec::new();
    loop {
        let mut digit = rest;
        for i in 0..rest.rank() {
            digit.set(i, rest.get(i) % p);
        }
        layers.push(digit);
        rest = (rest - digit).div_exact(p);
        if rest.is_zero() {
            break;
        }
    }
    Ok(PAdicExpansion { layers })
}

/// Scales every coordinate by `q`; the Frobenius twist on highest weights.
pub fn twist(lambda: &Weight, q: i32) -> Weight {
    *lambda * q
}
