//! Root systems of types A_n and B2 = C2, built from an explicit Euclidean
//! realization, with Weyl-group orbit machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weights::{Weight, MAX_RANK};

pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A(usize),
    /// B2 and C2 are the same root system.
    B2,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) => n,
            RootType::B2 => 2,
        }
    }

    /// Parses `A`, `An`, `B2` or `C2`; a bare `A` takes the rank argument.
    pub fn parse(label: &str, rank: Option<usize>) -> Result<Self> {
        let t = label.trim().to_ascii_uppercase();
        let ty = match t.as_str() {
            "B2" | "C2" => RootType::B2,
            "B" | "C" if rank == Some(2) => RootType::B2,
            "A" => RootType::A(rank.ok_or_else(|| Error::Unsupported("type A needs a rank".into()))?),
            _ if t.starts_with('A') => {
                let n = t[1..].parse::<usize>().map_err(|_| Error::Unsupported(label.to_string()))?;
                RootType::A(n)
            }
            _ => return Err(Error::Unsupported(label.to_string())),
        };
        if let Some(r) = rank {
            if r != ty.rank() {
                return Err(Error::Unsupported(format!("{label} with rank {r}")));
            }
        }
        if let RootType::A(0) = ty {
            return Err(Error::Unsupported("A0".into()));
        }
        Ok(ty)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B2 => write!(f, "B2"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RootType::parse(s, None)
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub euclid: Vec<Q>,
    /// Coefficients in the basis of simple roots.
    pub simple_coords: Vec<i64>,
    /// The root itself in fundamental-weight coordinates.
    pub fw: Weight,
    pub height: i64,
    pub norm2: Q,
    /// `⟨ω_i, α∨⟩` for each i, so that `⟨λ, α∨⟩ = Σ λ_i coroot_i`.
    coroot: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootType,
    rank: usize,
    form_scale: Q,
    simple_roots: Vec<Vec<Q>>,
    positive_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Q>>,
    fundamental_weights: Vec<Vec<Q>>,
    rho: Weight,
    coxeter_number: i64,
    highest_short_root: usize,
    /// `inv_den · C⁻¹` as integers.
    inv_scaled: Vec<Vec<i64>>,
    inv_den: i64,
    /// `gram_den · (ω_i, ω_j)` as integers.
    gram: Vec<Vec<i64>>,
    gram_den: i64,
    /// height of ω_i times `inv_den`.
    omega_height: Vec<i64>,
    root_lookup: BTreeMap<Vec<i64>, usize>,
}

fn dot(form_scale: Q, x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + *a * *b) * form_scale
}

fn to_int(q: Q, what: &str) -> i64 {
    assert!(q.is_integer(), "{what} is not integral: {q}");
    q.to_integer()
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Cartan matrix");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Q>) -> i64 {
    xs.fold(1i64, |acc, q| num::integer::lcm(acc, *q.denom()))
}

impl RootSystem {
    pub fn new(ty: RootType) -> Result<Self> {
        Self::with_form_scale(ty, Q::one())
    }

    /// Build with the Euclidean inner product multiplied by `scale`. Every
    /// derived quantity depends only on ratios of inner products, so results
    /// are independent of the scale.
    pub fn with_form_scale(ty: RootType, scale: Q) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Precondition("form scale must be positive".into()));
        }
        let simple_roots: Vec<Vec<Q>> = match ty {
            RootType::A(0) => return Err(Error::Unsupported("A0".into())),
            RootType::A(n) if n > MAX_RANK => return Err(Error::RankTooLarge(n)),
            RootType::A(n) => (0..n)
                .map(|i| {
                    let mut v = vec![Q::zero(); n + 1];
                    v[i] = Q::one();
                    v[i + 1] = -Q::one();
                    v
                })
                .collect(),
            RootType::B2 => vec![vec![Q::one(), -Q::one()], vec![Q::zero(), Q::one()]],
        };
        let rank = simple_roots.len();
        let ip = |x: &[Q], y: &[Q]| dot(scale, x, y);

        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = ip(&simple_roots[j], &simple_roots[i]) * Q::from(2)
                            / ip(&simple_roots[i], &simple_roots[i]);
                        to_int(v, "Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let cartan_q: Vec<Vec<Q>> = cartan.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
        let cartan_inverse = invert(&cartan_q);

        // α_j = Σ_i C_{ij} ω_i, so ω_i = Σ_j (C⁻¹)_{ji} α_j.
        let dim = simple_roots[0].len();
        let fundamental_weights: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                let mut v = vec![Q::zero(); dim];
                for (j, alpha) in simple_roots.iter().enumerate() {
                    for (x, a) in v.iter_mut().zip(alpha) {
                        *x += cartan_inverse[j][i] * *a;
                    }
                }
                v
            })
            .collect();

        let inv_den = lcm_of_denominators(cartan_inverse.iter().flatten());
        let inv_scaled: Vec<Vec<i64>> = cartan_inverse
            .iter()
            .map(|r| r.iter().map(|q| to_int(*q * Q::from(inv_den), "scaled inverse")).collect())
            .collect();
        let omega_height: Vec<i64> = (0..rank).map(|i| (0..rank).map(|j| inv_scaled[j][i]).sum()).collect();

        let gram_q: Vec<Vec<Q>> = fundamental_weights
            .iter()
            .map(|x| fundamental_weights.iter().map(|y| ip(x, y)).collect())
            .collect();
        let gram_den = lcm_of_denominators(gram_q.iter().flatten());
        let gram: Vec<Vec<i64>> = gram_q
            .iter()
            .map(|r| r.iter().map(|q| to_int(*q * Q::from(gram_den), "scaled Gram entry")).collect())
            .collect();

        // Roots by closure under simple reflections, in fundamental-weight coordinates.
        let simple_fw: Vec<Weight> = (0..rank)
            .map(|j| Weight::new(&(0..rank).map(|i| cartan[i][j]).collect::<Vec<_>>()).expect("rank bounded"))
            .collect();
        let mut all: BTreeSet<Weight> = simple_fw.iter().copied().collect();
        let mut stack: Vec<Weight> = simple_fw.clone();
        while let Some(beta) = stack.pop() {
            for (i, alpha) in simple_fw.iter().enumerate() {
                let image = beta - *alpha * beta.get(i);
                if all.insert(image) {
                    stack.push(image);
                }
            }
        }

        let mut positive_roots: Vec<Root> = Vec::new();
        for beta in all {
            let coords: Vec<i64> = (0..rank)
                .map(|i| {
                    let v: Q = (0..rank).map(|j| cartan_inverse[i][j] * Q::from(beta.get(j) as i64)).sum();
                    to_int(v, "root coordinate")
                })
                .collect();
            if coords.iter().any(|&c| c < 0) {
                continue;
            }
            let mut euclid = vec![Q::zero(); dim];
            for (c, alpha) in coords.iter().zip(&simple_roots) {
                for (x, a) in euclid.iter_mut().zip(alpha) {
                    *x += Q::from(*c) * *a;
                }
            }
            let norm2 = ip(&euclid, &euclid);
            let coroot = fundamental_weights
                .iter()
                .map(|om| to_int(ip(om, &euclid) * Q::from(2) / norm2, "coroot pairing"))
                .collect();
            positive_roots.push(Root {
                height: coords.iter().sum(),
                simple_coords: coords,
                euclid,
                fw: beta,
                norm2,
                coroot,
            });
        }
        positive_roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.simple_coords.cmp(&a.simple_coords)));

        let rho = Weight::new(&vec![1; rank]).expect("rank bounded");
        let min_norm = positive_roots.iter().map(|r| r.norm2).min().expect("nonempty");
        let highest_short_root = (0..positive_roots.len())
            .filter(|&i| positive_roots[i].norm2 == min_norm)
            .max_by_key(|&i| positive_roots[i].height)
            .expect("nonempty");
        let root_lookup = positive_roots.iter().enumerate().map(|(i, r)| (r.simple_coords.clone(), i)).collect();

        let mut rs = RootSystem {
            ty,
            rank,
            form_scale: scale,
            simple_roots,
            positive_roots,
            cartan,
            cartan_inverse,
            fundamental_weights,
            rho,
            coxeter_number: 0,
            highest_short_root,
            inv_scaled,
            inv_den,
            gram,
            gram_den,
            omega_height,
            root_lookup,
        };
        rs.coxeter_number = rs.pairing(&rho, highest_short_root) + 1;
        Ok(rs)
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form_scale(&self) -> Q {
        self.form_scale
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    /// Sorted by height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_inverse
    }

    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental_weights
    }

    pub fn rho(&self) -> Weight {
        self.rho
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn highest_short_root(&self) -> &Root {
        &self.positive_roots[self.highest_short_root]
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank, got: w.rank() })
        }
    }

    /// Index of the positive root with the given simple-root coefficients.
    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.root_lookup.get(simple_coords).copied()
    }

    /// `⟨λ, α∨⟩` for the positive root with index `root`.
    pub fn pairing(&self, lambda: &Weight, root: usize) -> i64 {
        lambda.coords().iter().zip(&self.positive_roots[root].coroot).map(|(&x, &k)| x as i64 * k).sum()
    }

    /// `⟨λ, α∨⟩` for any root α, positive or negative, given by its
    /// simple-root coefficients.
    pub fn pairing_with_root(&self, lambda: &Weight, simple_coords: &[i64]) -> Result<i64> {
        self.check_rank(lambda)?;
        if let Some(r) = self.root_index(simple_coords) {
            return Ok(self.pairing(lambda, r));
        }
        let neg: Vec<i64> = simple_coords.iter().map(|x| -x).collect();
        match self.root_index(&neg) {
            Some(r) => Ok(-self.pairing(lambda, r)),
            None => Err(Error::NotARoot(format!("{simple_coords:?}"))),
        }
    }

    /// `2(v, α)/(α, α)` for a Euclidean vector v.
    pub fn pairing_euclidean(&self, v: &[Q], root: usize) -> Q {
        let r = &self.positive_roots[root];
        dot(self.form_scale, v, &r.euclid) * Q::from(2) / r.norm2
    }

    pub fn to_euclidean(&self, lambda: &Weight) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.simple_roots[0].len()];
        for (i, om) in self.fundamental_weights.iter().enumerate() {
            for (x, o) in v.iter_mut().zip(om) {
                *x += Q::from(lambda.get(i) as i64) * *o;
            }
        }
        v
    }

    /// The weight with `⟨v, α_i∨⟩` as coordinates; errors unless integral.
    pub fn from_euclidean(&self, v: &[Q]) -> Result<Weight> {
        let coords: Vec<i64> = (0..self.rank)
            .map(|i| {
                let r = self.root_index(&unit(self.rank, i)).expect("simple root");
                let x = self.pairing_euclidean(v, r);
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(Error::Precondition(format!("{v:?} is not an integral weight")))
                }
            })
            .collect::<Result<_>>()?;
        Weight::new(&coords)
    }

    /// `(λ, μ)` under the scaled form.
    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> Q {
        Q::new(self.inner_scaled(lambda, mu) as i64, self.gram_den)
    }

    /// `gram_denominator · (λ, μ)` as an exact integer.
    pub fn inner_scaled(&self, lambda: &Weight, mu: &Weight) -> i128 {
        let mut acc = 0i128;
        for (i, &x) in lambda.coords().iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.gram[i];
            let s: i128 = mu.coords().iter().zip(row).map(|(&y, &g)| y as i128 * g as i128).sum();
            acc += x as i128 * s;
        }
        acc
    }

    pub fn gram_denominator(&self) -> i64 {
        self.gram_den
    }

    /// `root_denominator · C⁻¹ λ`, i.e. scaled coordinates in the basis of
    /// simple roots. `None` on rank mismatch.
    pub fn root_coords_scaled(&self, lambda: &Weight) -> Option<Vec<i64>> {
        if lambda.rank() != self.rank {
            return None;
        }
        Some(
            self.inv_scaled
                .iter()
                .map(|row| row.iter().zip(lambda.coords()).map(|(&a, &x)| a * x as i64).sum())
                .collect(),
        )
    }

    pub fn root_denominator(&self) -> i64 {
        self.inv_den
    }

    /// Height times `root_denominator`, an integer for every weight.
    pub fn height_scaled(&self, lambda: &Weight) -> i64 {
        lambda.coords().iter().zip(&self.omega_height).map(|(&x, &h)| x as i64 * h).sum()
    }

    /// `s_i λ = λ − ⟨λ, α_i∨⟩ α_i`.
    pub fn simple_reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let mut out = *lambda;
        let k = lambda.get(i);
        for j in 0..self.rank {
            out.set(j, out.get(j) - k * self.cartan[j][i] as i32);
        }
        out
    }

    /// `s_α λ` for the positive root with index `root`.
    pub fn reflect(&self, lambda: &Weight, root: usize) -> Weight {
        *lambda - self.positive_roots[root].fw * self.pairing(lambda, root) as i32
    }

    /// The W-orbit of λ by closure under simple reflections.
    pub fn weyl_orbit(&self, lambda: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([*lambda]);
        let mut stack = vec![*lambda];
        while let Some(x) = stack.pop() {
            for i in 0..self.rank {
                if x.get(i) != 0 {
                    let y = self.simple_reflect(&x, i);
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen
    }

    /// Orbit of a dominant weight, listed without a set. Every orbit element
    /// is produced from a unique predecessor by raising a negative-free
    /// coordinate, so no deduplication is needed.
    pub fn orbit_of_dominant(&self, lambda: &Weight) -> Vec<Weight> {
        debug_assert!(lambda.is_dominant());
        let mut out = vec![*lambda];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for i in 0..self.rank {
                if x.get(i) > 0 {
                    let y = self.simple_reflect(&x, i);
                    // accept y only from its canonical parent: the first
                    // negative coordinate of y must be i
                    if (0..i).all(|j| y.get(j) >= 0) {
                        out.push(y);
                    }
                }
            }
        }
        out
    }

    /// The dominant weight in the W-orbit of λ.
    pub fn dominant_conjugate(&self, lambda: &Weight) -> Weight {
        let mut x = *lambda;
        while let Some(i) = (0..self.rank).find(|&i| x.get(i) < 0) {
            x = self.simple_reflect(&x, i);
        }
        x
    }

    /// Moves λ into the closed dominant chamber by simple dot-reflections.
    pub fn dominant_dot_representative(&self, lambda: &Weight) -> DotRepresentative {
        let mut x = *lambda + self.rho;
        let mut sign = 1i8;
        loop {
            if x.coords().contains(&0) {
                return DotRepresentative { weight: x - self.rho, sign: 0 };
            }
            match (0..self.rank).find(|&i| x.get(i) < 0) {
                Some(i) => {
                    x = self.simple_reflect(&x, i);
                    sign = -sign;
                }
                None => return DotRepresentative { weight: x - self.rho, sign },
            }
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `w•λ` in the closure of the dominant chamber together with `det w`, or
/// sign 0 when λ+ρ lies on a reflecting hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DotRepresentative {
    pub weight: Weight,
    pub sign: i8,
}

pub fn build_root_system(ty: RootType) -> Result<RootSystem> {
    RootSystem::new(ty)
}
