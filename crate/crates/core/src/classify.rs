//! Closed-form multiplicity-freeness classifications and exhaustive
//! comparison against the brute-force engine.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootType};
use crate::tensor::{is_mf_engine, mf_char0};
use crate::weights::{alcove_locate, p_adic_expand, AlcoveName, Weight};
use crate::weylmod::{is_prime, Decomposition, Engine, ResolutionOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VerdictValue {
    MultiplicityFree,
    HasMultiplicity,
    Unknown,
}

impl VerdictValue {
    pub fn from_bool(mf: bool) -> Self {
        if mf {
            VerdictValue::MultiplicityFree
        } else {
            VerdictValue::HasMultiplicity
        }
    }

    pub fn is_definite(self) -> bool {
        self != VerdictValue::Unknown
    }
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictValue::MultiplicityFree => "MultiplicityFree",
            VerdictValue::HasMultiplicity => "HasMultiplicity",
            VerdictValue::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// A classification answer with the clause or engine that produced it. For
/// engine verdicts with multiplicity, `witness` is a repeated factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub clause: String,
    pub witness: Option<Weight>,
}

impl Verdict {
    pub fn new(value: VerdictValue, clause: impl Into<String>) -> Self {
        Verdict { value, clause: clause.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Weight) -> Self {
        self.witness = Some(w);
        self
    }

    fn mf(clause: impl Into<String>) -> Self {
        Verdict::new(VerdictValue::MultiplicityFree, clause)
    }

    fn has(clause: impl Into<String>) -> Self {
        Verdict::new(VerdictValue::HasMultiplicity, clause)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.value, self.clause)?;
        if let Some(w) = self.witness {
            write!(f, " witness L{w}")?;
        }
        Ok(())
    }
}

const ZERO_CLAUSE: &str = "zero factor";

fn check_inputs(rank: usize, weights: [&Weight; 2]) -> Result<()> {
    for w in weights {
        if w.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, got: w.rank() });
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(*w));
        }
    }
    Ok(())
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Applies a restricted-weight oracle layer by layer. Multiplicity in any
/// layer decides; otherwise an unknown layer makes the answer unknown.
fn layered(
    lambda: &Weight,
    mu: &Weight,
    p: u32,
    restricted: impl Fn(&Weight, &Weight) -> Result<Verdict>,
) -> Result<Verdict> {
    let ll = p_adic_expand(lambda, p)?.layers;
    let ml = p_adic_expand(mu, p)?.layers;
    if ll.len() == 1 && ml.len() == 1 {
        return restricted(lambda, mu);
    }
    let zero = Weight::zero(lambda.rank());
    let mut unknown = None;
    for i in 0..ll.len().max(ml.len()) {
        let a = ll.get(i).copied().unwrap_or(zero);
        let b = ml.get(i).copied().unwrap_or(zero);
        let v = restricted(&a, &b)?;
        match v.value {
            VerdictValue::HasMultiplicity => return Ok(Verdict { clause: format!("layer {i}: {}", v.clause), ..v }),
            VerdictValue::Unknown => unknown = unknown.or(Some(i)),
            VerdictValue::MultiplicityFree => {}
        }
    }
    Ok(match unknown {
        Some(i) => Verdict::new(VerdictValue::Unknown, format!("layer {i} unknown")),
        None => Verdict::mf("every layer multiplicity free"),
    })
}

/// SL2: multiplicity free iff every pair of p-adic digits sums below p.
pub fn sl2_oracle(lambda: &Weight, mu: &Weight, p: u32) -> Result<Verdict> {
    check_inputs(1, [lambda, mu])?;
    check_prime(p)?;
    let ll = p_adic_expand(lambda, p)?.layers;
    let ml = p_adic_expand(mu, p)?.layers;
    for i in 0..ll.len().max(ml.len()) {
        let a = ll.get(i).map_or(0, |w| w.get(0));
        let c = ml.get(i).map_or(0, |w| w.get(0));
        if a + c >= p as i32 {
            return Ok(Verdict::has(format!("layer {i}: {a}+{c} >= p")));
        }
    }
    Ok(Verdict::mf("every layer sum below p"))
}

/// Clauses (1)–(10) of the SL3 classification satisfied by the ordered pair
/// ((a,b),(c,d)).
pub fn sl3_clauses(lambda: &Weight, mu: &Weight, p: u32) -> Vec<u8> {
    let (a, b) = (lambda.get(0) as i64, lambda.get(1) as i64);
    let (c, d) = (mu.get(0) as i64, mu.get(1) as i64);
    let p = p as i64;
    let conds = [
        b == 0 && d == 0 && a + c < p,
        a == 0 && c == 0 && b + d < p,
        b == 0 && c == 0 && (a + d < p - 1 || (a, d) == (p - 1, 1) || (a, d) == (1, p - 1)),
        b == 0 && a + c + d < p - 1,
        a == 0 && b + c + d < p - 1,
        b == 0 && c + d == p - 1 && a + c < p && a < c + 2,
        a == 0 && c + d == p - 1 && b + d < p && b < d + 2,
        b == 0 && c + d > p - 1 && a + c < p && a + d < p,
        a == 0 && c + d > p - 1 && b + c < p && b + d < p,
        a + b < p - 1 && c + d == p - 1 && a + b + c < p && a + b + d < p,
    ];
    (1..=10u8).zip(conds).filter(|&(_, c)| c).map(|(i, _)| i).collect()
}

/// Every (variant, clause) match over both orderings and both duals.
pub fn sl3_matching_clauses(lambda: &Weight, mu: &Weight, p: u32) -> Vec<(&'static str, u8)> {
    let (ld, md) = (lambda.reversed(), mu.reversed());
    let variants = [("", lambda, mu), ("swapped, ", mu, lambda), ("dual, ", &ld, &md), ("dual swapped, ", &md, &ld)];
    variants
        .iter()
        .flat_map(|&(tag, l, m)| sl3_clauses(l, m, p).into_iter().map(move |c| (tag, c)))
        .collect()
}

/// SL3: the ten-clause classification, up to reordering and duality.
/// Non-restricted weights are reduced to their p-adic layers.
pub fn sl3_oracle(lambda: &Weight, mu: &Weight, p: u32) -> Result<Verdict> {
    check_inputs(2, [lambda, mu])?;
    check_prime(p)?;
    layered(lambda, mu, p, |l, m| {
        if l.is_zero() || m.is_zero() {
            return Ok(Verdict::mf(ZERO_CLAUSE));
        }
        Ok(match sl3_matching_clauses(l, m, p).first() {
            Some((tag, c)) => Verdict::mf(format!("{tag}clause ({c})")),
            None => Verdict::has("no clause"),
        })
    })
}

/// Sp4 verdicts for one ordering of a restricted pair, as (verdict, clause).
fn sp4_ordered(lambda: &Weight, mu: &Weight, p: u32) -> Option<(bool, String)> {
    let (a, b) = (lambda.get(0) as i64, lambda.get(1) as i64);
    let (c, d) = (mu.get(0) as i64, mu.get(1) as i64);
    let pp = p as i64;
    let half = (pp - 1) / 2;
    // (0,b) ⊗ (0,d)
    if a == 0 && c == 0 {
        let mf = b + d <= pp - 3 || (b, d) == (1, pp - 2) || (b, d) == (pp - 2, 1);
        return Some((mf, "(0,b)x(0,d)".into()));
    }
    // (a,0) ⊗ (c,0), a ≤ c
    if b == 0 && d == 0 && a <= c {
        let mf = a + c <= (pp - 3) / 2 || (c >= half && a + c < pp - 1) || (a == half && c == half);
        return Some((mf, "(a,0)x(c,0)".into()));
    }
    // (a,0) ⊗ (0,d)
    if b == 0 && c == 0 {
        let (mf, case) = if a == pp - 2 {
            (d == 1, "a=p-2")
        } else if a == pp - 1 {
            (d == 1, "a=p-1")
        } else if 2 * a + d <= pp - 3 {
            (true, "2a+d<=p-3")
        } else if a <= (pp - 3) / 2 && d <= pp - 3 {
            ((a, d) == (1, pp - 3), "a<=(p-3)/2, d<=p-3")
        } else if a <= (pp - 3) / 2 && d == pp - 2 {
            (false, "a<=(p-3)/2, d=p-2")
        } else if a <= (pp - 3) / 2 && d == pp - 1 {
            (a == 1, "a<=(p-3)/2, d=p-1")
        } else if a + d <= pp - 2 {
            (true, "(p-1)/2<=a<=p-3, a+d<=p-2")
        } else {
            (false, "(p-1)/2<=a<=p-3, a+d>p-2")
        };
        return Some((mf, format!("(a,0)x(0,d), {case}")));
    }
    // (a,b) ⊗ (0,1), a,b ≥ 1
    if a >= 1 && b >= 1 && (c, d) == (0, 1) {
        let name = alcove_locate(&b2(), lambda, p).rank2_name.expect("B2 names");
        return Some((name.is_open_alcove(), format!("(a,b)x(0,1), lambda in {name}")));
    }
    // partial result for (a,b) ⊗ (0,d)
    if a >= 1 && b >= 2 && c == 0 && d >= 2 && (2 * a + b + 2) % pp != 0 && a + b != pp - 1 {
        return Some((false, "(a,b)x(0,d), 2a+b+2 != 0 mod p, a+b != p-1".into()));
    }
    if in_c2_c1_c3(lambda, mu, p) {
        return Some((false, "lambda in C2, mu in upper closure of C1, lambda+mu in C3".into()));
    }
    None
}

fn in_c2_c1_c3(lambda: &Weight, mu: &Weight, p: u32) -> bool {
    let rs = b2();
    let name = |w: &Weight| alcove_locate(&rs, w, p).rank2_name;
    name(lambda) == Some(AlcoveName::C2)
        && alcove_locate(&rs, mu, p).in_fundamental_closure()
        && name(&(*lambda + *mu)) == Some(AlcoveName::C3)
}

fn b2() -> RootSystem {
    RootSystem::new(RootType::B2).expect("B2 is supported")
}

/// Which of the families left open for Sp4 a restricted pair belongs to, if
/// any, trying both orderings.
pub fn sp4_open_family(lambda: &Weight, mu: &Weight) -> Option<u8> {
    let fam = |l: &Weight, m: &Weight| {
        let (a, b, c, d) = (l.get(0), l.get(1), m.get(0), m.get(1));
        if a * b * c * d != 0 {
            Some(3)
        } else if a != 0 && b != 0 && c == 0 && d >= 2 {
            Some(1)
        } else if a != 0 && b != 0 && c != 0 && d == 0 {
            Some(2)
        } else {
            None
        }
    };
    fam(lambda, mu).or_else(|| fam(mu, lambda))
}

/// Every Sp4 proposition that applies to the pair, over both orderings.
pub fn sp4_matching_clauses(lambda: &Weight, mu: &Weight, p: u32) -> Vec<(bool, String)> {
    let mut out: Vec<(bool, String)> = Vec::new();
    out.extend(sp4_ordered(lambda, mu, p));
    out.extend(sp4_ordered(mu, lambda, p).map(|(v, c)| (v, format!("swapped, {c}"))));
    out
}

/// Sp4: three-valued, encoding the settled families and the proved partial
/// results; everything else is `Unknown`.
pub fn sp4_oracle(lambda: &Weight, mu: &Weight, p: u32) -> Result<Verdict> {
    check_inputs(2, [lambda, mu])?;
    check_prime(p)?;
    if p < 5 {
        return Err(Error::Precondition("the Sp4 classification needs p >= 5".into()));
    }
    layered(lambda, mu, p, |l, m| {
        if l.is_zero() || m.is_zero() {
            return Ok(Verdict::mf(ZERO_CLAUSE));
        }
        Ok(match sp4_matching_clauses(l, m, p).into_iter().next() {
            Some((mf, clause)) => Verdict::new(VerdictValue::from_bool(mf), clause),
            None => {
                let fam = sp4_open_family(l, m).expect("unsettled pairs lie in an open family");
                Verdict::new(VerdictValue::Unknown, format!("open family {fam}"))
            }
        })
    })
}

/// Clauses (1)–(4) of the SLn classification at p = 2 for the ordered pair.
pub fn sln_p2_clauses(n: usize, lambda: &Weight, mu: &Weight) -> Vec<u8> {
    let support = |w: &Weight| -> Vec<usize> { (1..=n).filter(|&i| w.get(i - 1) != 0).collect() };
    let is_omega = |w: &Weight, i: usize| i >= 1 && i <= n && support(w) == vec![i];
    let single = |w: &Weight| -> Option<usize> {
        let s = support(w);
        (s.len() == 1).then(|| s[0])
    };
    let ms = support(mu);
    let mut out = Vec::new();
    if is_omega(lambda, 1) && !ms.is_empty() && ms.iter().all(|&i| i > 1 && i % 2 == 0) {
        out.push(1);
    }
    if is_omega(lambda, n) && !ms.is_empty() && ms.iter().all(|&i| i < n && (n + 1 - i).is_multiple_of(2)) {
        out.push(2);
    }
    if let Some(j) = single(mu) {
        if n >= 2 && is_omega(lambda, 2) && j > 2 && (j - 2) % 4 == 3 {
            out.push(3);
        }
        if n >= 2 && is_omega(lambda, n - 1) && j + 1 < n && (n - 1 - j) % 4 == 3 {
            out.push(4);
        }
    }
    out
}

/// SLn at p = 2, up to reordering and duality.
pub fn sln_p2_oracle(n: usize, lambda: &Weight, mu: &Weight) -> Result<Verdict> {
    check_inputs(n, [lambda, mu])?;
    for w in [lambda, mu] {
        if !w.is_restricted(2) {
            return Err(Error::NotRestricted { weight: *w, p: 2 });
        }
    }
    if lambda.is_zero() || mu.is_zero() {
        return Ok(Verdict::mf(ZERO_CLAUSE));
    }
    let (ld, md) = (lambda.reversed(), mu.reversed());
    let variants = [("", lambda, mu), ("swapped, ", mu, lambda), ("dual, ", &ld, &md), ("dual swapped, ", &md, &ld)];
    for (tag, l, m) in variants {
        if let Some(c) = sln_p2_clauses(n, l, m).first() {
            return Ok(Verdict::mf(format!("{tag}clause ({c})")));
        }
    }
    Ok(Verdict::has("no clause"))
}

/// Characteristic-zero classifications: all of A1, A2 (`abcd = 0`), B2 (six
/// clauses) and, in type A_n, products with a fundamental weight.
pub fn stembridge_char0_oracle(ty: RootType, lambda: &Weight, mu: &Weight) -> Result<Verdict> {
    check_inputs(ty.rank(), [lambda, mu])?;
    if lambda.is_zero() || mu.is_zero() {
        return Ok(Verdict::mf(ZERO_CLAUSE));
    }
    match ty {
        RootType::A(1) => Ok(Verdict::mf("Clebsch-Gordan")),
        RootType::A(2) => {
            let prod = lambda.coords().iter().chain(mu.coords()).map(|&x| x as i64).product::<i64>();
            Ok(Verdict::new(VerdictValue::from_bool(prod == 0), "abcd = 0"))
        }
        RootType::B2 => {
            let clause = |l: &Weight, m: &Weight| -> Option<u8> {
                let (a, b, c, d) = (l.get(0), l.get(1), m.get(0), m.get(1));
                let conds = [a == 0 && b == 1, a == 1 && b == 0, a == 0 && d == 0, a == 0 && c == 0, b == 0 && d == 1, b == 0 && d == 0];
                (1..=6u8).zip(conds).find(|&(_, c)| c).map(|(i, _)| i)
            };
            Ok(match clause(lambda, mu) {
                Some(c) => Verdict::mf(format!("clause ({c})")),
                None => match clause(mu, lambda) {
                    Some(c) => Verdict::mf(format!("swapped, clause ({c})")),
                    None => Verdict::has("no clause"),
                },
            })
        }
        RootType::A(n) => {
            let fundamental = |w: &Weight| w.is_zero() || (w.coords().iter().sum::<i32>() == 1);
            if fundamental(lambda) || fundamental(mu) {
                Ok(Verdict::mf("fundamental factor"))
            } else {
                Err(Error::Unsupported(format!("characteristic-zero classification for A{n} beyond fundamental factors")))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    OracleVsEngine,
    Char0VsEngineInC1,
    Rank2Tables,
}

impl FromStr for VerifyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "oracle_vs_engine" => Ok(VerifyMode::OracleVsEngine),
            "char0_vs_engine_in_c1" | "char0_vs_engine_in_C1" => Ok(VerifyMode::Char0VsEngineInC1),
            "rank2_tables" => Ok(VerifyMode::Rank2Tables),
            _ => Err(Error::Precondition(format!("unknown verify mode {s}"))),
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyMode::OracleVsEngine => "oracle_vs_engine",
            VerifyMode::Char0VsEngineInC1 => "char0_vs_engine_in_C1",
            VerifyMode::Rank2Tables => "rank2_tables",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub lhs: Weight,
    pub rhs: Option<Weight>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub root_type: String,
    pub p: u32,
    pub mode: VerifyMode,
    /// Pairs, or weights for `rank2_tables`, examined.
    pub total: usize,
    /// Items where both sides gave a definite answer.
    pub compared: usize,
    pub agreements: usize,
    pub oracle_unknown: usize,
    /// Engine verdicts on oracle-unknown pairs; reported, not checked.
    pub unknown_engine_mf: usize,
    pub unknown_engine_has_multiplicity: usize,
    pub engine_undetermined: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All p-restricted dominant weights in lexicographic order.
pub fn p_restricted_weights(rank: usize, p: u32) -> Vec<Weight> {
    let total = (p as usize).pow(rank as u32);
    (0..total)
        .map(|mut k| {
            let mut c = vec![0i64; rank];
            for x in c.iter_mut().rev() {
                *x = (k % p as usize) as i64;
                k /= p as usize;
            }
            Weight::new(&c).expect("rank bounded")
        })
        .collect()
}

enum Outcome {
    Agree,
    Mismatch(Mismatch),
    OracleUnknown(VerdictValue),
    EngineUndetermined,
}

type PairOracle = Box<dyn Fn(&Weight, &Weight) -> Result<Verdict> + Sync>;

fn pair_oracle(ty: RootType, p: u32) -> Result<PairOracle> {
    Ok(match ty {
        RootType::A(1) => Box::new(move |l, m| sl2_oracle(l, m, p)),
        RootType::A(2) => Box::new(move |l, m| sl3_oracle(l, m, p)),
        RootType::B2 => {
            if p < 5 {
                return Err(Error::Precondition("the Sp4 classification needs p >= 5".into()));
            }
            Box::new(move |l, m| sp4_oracle(l, m, p))
        }
        RootType::A(n) if p == 2 => Box::new(move |l, m| sln_p2_oracle(n, l, m)),
        RootType::A(n) => return Err(Error::Unsupported(format!("no classification for A{n} at p = {p}"))),
    })
}

/// The closed-form classification for the type at p.
pub fn oracle(ty: RootType, p: u32, lambda: &Weight, mu: &Weight) -> Result<Verdict> {
    pair_oracle(ty, p)?(lambda, mu)
}

/// Exhaustive comparison of a closed form against the engine. Pairs are
/// evaluated in parallel; the report lists them in a fixed order.
pub fn verify_range(ty: RootType, p: u32, mode: VerifyMode) -> Result<VerifyReport> {
    let engine = Engine::for_type(ty, p)?;
    verify_with_engine(&engine, mode)
}

pub fn verify_with_engine(engine: &Engine, mode: VerifyMode) -> Result<VerifyReport> {
    let rs = engine.root_system();
    let ty = rs.root_type();
    let p = engine.p();
    let weights = p_restricted_weights(rs.rank(), p);
    let outcomes: Vec<Outcome> = match mode {
        VerifyMode::OracleVsEngine => {
            let oracle = pair_oracle(ty, p)?;
            let pairs: Vec<(Weight, Weight)> =
                weights.iter().flat_map(|l| weights.iter().map(move |m| (*l, *m))).collect();
            pairs
                .par_iter()
                .map(|(l, m)| {
                    let want = oracle(l, m)?;
                    let got = is_mf_engine(engine, l, m)?;
                    Ok(compare(l, Some(m), &want, &got))
                })
                .collect::<Result<_>>()?
        }
        VerifyMode::Char0VsEngineInC1 => {
            let pairs: Vec<(Weight, Weight)> = weights
                .iter()
                .flat_map(|l| weights.iter().map(move |m| (*l, *m)))
                .filter(|(l, m)| alcove_locate(rs, &(*l + *m), p).in_fundamental_closure())
                .collect();
            pairs
                .par_iter()
                .map(|(l, m)| {
                    let want = Verdict::new(VerdictValue::from_bool(mf_char0(engine.table(), l, m)?), "char0");
                    let got = is_mf_engine(engine, l, m)?;
                    Ok(compare(l, Some(m), &want, &got))
                })
                .collect::<Result<_>>()?
        }
        VerifyMode::Rank2Tables => weights
            .par_iter()
            .map(|l| {
                let want = engine.rank2_factor_oracle(l)?;
                Ok(match engine.weyl_composition_factors(l)? {
                    ResolutionOutcome::Resolved(got) if got == want => Outcome::Agree,
                    ResolutionOutcome::Resolved(got) => Outcome::Mismatch(Mismatch {
                        lhs: *l,
                        rhs: None,
                        expected: fmt_factors(&want),
                        found: fmt_factors(&got),
                    }),
                    ResolutionOutcome::Undetermined { .. } => Outcome::EngineUndetermined,
                })
            })
            .collect::<Result<_>>()?,
    };
    let mut report = VerifyReport {
        root_type: ty.to_string(),
        p,
        mode,
        total: outcomes.len(),
        compared: 0,
        agreements: 0,
        oracle_unknown: 0,
        unknown_engine_mf: 0,
        unknown_engine_has_multiplicity: 0,
        engine_undetermined: 0,
        mismatches: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Agree => {
                report.compared += 1;
                report.agreements += 1;
            }
            Outcome::Mismatch(m) => {
                report.compared += 1;
                report.mismatches.push(m);
            }
            Outcome::OracleUnknown(v) => {
                report.oracle_unknown += 1;
                match v {
                    VerdictValue::MultiplicityFree => report.unknown_engine_mf += 1,
                    VerdictValue::HasMultiplicity => report.unknown_engine_has_multiplicity += 1,
                    VerdictValue::Unknown => report.engine_undetermined += 1,
                }
            }
            Outcome::EngineUndetermined => report.engine_undetermined += 1,
        }
    }
    Ok(report)
}

fn fmt_factors(d: &Decomposition) -> String {
    d.to_string()
}

fn compare(l: &Weight, m: Option<&Weight>, want: &Verdict, got: &Verdict) -> Outcome {
    match (want.value, got.value) {
        (VerdictValue::Unknown, g) => Outcome::OracleUnknown(g),
        (_, VerdictValue::Unknown) => Outcome::EngineUndetermined,
        (w, g) if w == g => Outcome::Agree,
        _ => Outcome::Mismatch(Mismatch { lhs: *l, rhs: m.copied(), expected: want.to_string(), found: got.to_string() }),
    }
}
