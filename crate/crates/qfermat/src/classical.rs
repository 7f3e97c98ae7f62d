//! The q = 1 side: integer congruences mod p and mod p², verified with
//! machine-word modular arithmetic over large prime ranges.
//!
//! Products use double-width intermediates; the documented safe bound is
//! p < 2³¹ (p² fits in a u64), and the sunZH case additionally needs
//! p³ < 2⁶³ (p < 2²¹). Desk-scale sweeps stop at 10⁴.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::primes::is_prime;
use crate::report::{Report, Status};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// An element of Z/M with M = p or p².
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn new(value: u64, modulus: u64) -> Self {
        ModP {
            value: value % modulus,
            modulus,
        }
    }

    /// Signed constructor; negative values wrap.
    pub fn from_i64(value: i64, modulus: u64) -> Self {
        ModP {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        ModP::new(self.value + other.value, self.modulus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        ModP::new(self.value + self.modulus - other.value, self.modulus)
    }

    pub fn neg(&self) -> Self {
        ModP::new(self.modulus - self.value % self.modulus, self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        ModP::new(mulmod(self.value, other.value, self.modulus), self.modulus)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, self.modulus);
            }
            base = mulmod(base, base, self.modulus);
            e >>= 1;
        }
        ModP::new(acc, self.modulus)
    }

    pub fn inv(&self) -> Result<Self> {
        mod_inv(self.value, self.modulus)
    }
}

/// a⁻¹ mod M by the extended Euclidean algorithm.
pub fn mod_inv(a: u64, modulus: u64) -> Result<ModP> {
    let (mut r0, mut r1) = (modulus as i128, (a % modulus) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NonInvertible {
            gcd: LaurentPoly::from_int(r0 as i64),
        });
    }
    Ok(ModP::from_i64(s0 as i64, modulus))
}

/// All of 1⁻¹..n⁻¹ mod M with the prefix-product trick: one extended Euclid
/// plus O(n) multiplications. Index 0 is unused.
pub fn batch_inverses(n: u64, modulus: u64) -> Result<Vec<u64>> {
    let mut prefix = Vec::with_capacity(n as usize + 1);
    prefix.push(1u64);
    for k in 1..=n {
        prefix.push(mulmod(*prefix.last().unwrap(), k % modulus, modulus));
    }
    let mut inv_run = mod_inv(prefix[n as usize], modulus)?.value();
    let mut out = vec![0u64; n as usize + 1];
    for k in (1..=n as usize).rev() {
        out[k] = mulmod(inv_run, prefix[k - 1], modulus);
        inv_run = mulmod(inv_run, k as u64 % modulus, modulus);
    }
    Ok(out)
}

/// ((2^{p-1} mod p²) - 1)/p mod p — the Fermat quotient of p to base 2.
pub fn fermat_quotient2(p: u64) -> ModP {
    let p2 = p * p;
    let pow = ModP::new(2, p2).pow(p - 1).value();
    ModP::new((pow - 1) / p, p)
}

/// D_0..D_{n_max} mod p, by the standard three-term recurrence
/// n·D_n = 3(2n-1)·D_{n-1} - (n-1)·D_{n-2} (divisions only by n < p).
pub fn delannoy_mod(n_max: u64, p: u64) -> Result<Vec<ModP>> {
    if n_max > p - 1 {
        return Err(Error::InvalidParams(format!(
            "delannoy_mod needs n_max <= p-1, got n_max={n_max}, p={p}"
        )));
    }
    let inv = batch_inverses(n_max.max(1), p)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(ModP::new(1, p));
    if n_max >= 1 {
        out.push(ModP::new(3, p));
    }
    for n in 2..=n_max {
        let a = ModP::new(3 * (2 * n - 1) % p, p).mul(&out[n as usize - 1]);
        let b = ModP::new((n - 1) % p, p).mul(&out[n as usize - 2]);
        out.push(a.sub(&b).mul(&ModP::new(inv[n as usize], p)));
    }
    Ok(out)
}

/// Weight shape of a nested chain sum Σ over 1 <= k_1 <= ... <= k_m <= p-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestedVariant {
    /// ∏ 1/k_i · 1/2^{k_m}.
    HalfPowLast,
    /// (1-x)^{k_1} ∏ 1/k_i.
    XFirst(i64),
    /// (2^{k_1} - (-1)^{k_1}) ∏ 1/k_i.
    TwoMinusNegFirst(),
}

struct Tables {
    p: u64,
    inv: Vec<u64>,
    pow2: Vec<u64>,
    inv_pow2: Vec<u64>,
}

impl Tables {
    fn build(p: u64) -> Result<Tables> {
        let inv = batch_inverses(p - 1, p)?;
        let mut pow2 = vec![1u64];
        let mut inv_pow2 = vec![1u64];
        let inv2 = mod_inv(2, p)?.value();
        for _ in 1..p {
            pow2.push(mulmod(*pow2.last().unwrap(), 2, p));
            inv_pow2.push(mulmod(*inv_pow2.last().unwrap(), inv2, p));
        }
        Ok(Tables {
            p,
            inv,
            pow2,
            inv_pow2,
        })
    }

    fn inv_pow(&self, k: usize, m: u32) -> u64 {
        let mut acc = 1;
        for _ in 0..m {
            acc = mulmod(acc, self.inv[k], self.p);
        }
        acc
    }
}

fn first_index_weight(t: &Tables, variant: NestedVariant, k: usize) -> u64 {
    match variant {
        NestedVariant::HalfPowLast => 1,
        NestedVariant::XFirst(x) => {
            let base = ModP::from_i64(1 - x, t.p);
            base.pow(k as u64).value()
        }
        NestedVariant::TwoMinusNegFirst() => {
            let neg = if k % 2 == 0 { 1 } else { t.p - 1 };
            (t.pow2[k] + t.p - neg) % t.p
        }
    }
}

fn nested_sum_with(t: &Tables, m: u32, variant: NestedVariant) -> ModP {
    let p = t.p;
    let n = p as usize - 1;
    // level 1 carries the first-index weight; the last level's 1/2^{k_m}
    // weight (HalfPowLast) is applied at the end
    let mut level: Vec<u64> = (0..=n)
        .map(|k| {
            if k == 0 {
                0
            } else {
                mulmod(first_index_weight(t, variant, k), t.inv[k], p)
            }
        })
        .collect();
    for _ in 2..=m {
        let mut prefix = 0u64;
        let mut next = vec![0u64; n + 1];
        for k in 1..=n {
            prefix = (prefix + level[k]) % p;
            next[k] = mulmod(prefix, t.inv[k], p);
        }
        level = next;
    }
    let mut acc = 0u64;
    for k in 1..=n {
        let w = match variant {
            NestedVariant::HalfPowLast => mulmod(level[k], t.inv_pow2[k], p),
            _ => level[k],
        };
        acc = (acc + w) % p;
    }
    ModP::new(acc, p)
}

/// Nested chain sum Σ_{1<=k1<=...<=km<=p-1} of the variant weight, by the
/// same telescoping DP as the q-side.
pub fn nested_sum_mod(m: u32, p: u64, variant: NestedVariant) -> Result<ModP> {
    if m < 1 {
        return Err(Error::InvalidParams("need m >= 1".into()));
    }
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(nested_sum_with(&Tables::build(p)?, m, variant))
}

/// Brute-force oracle: enumerate every chain explicitly.
pub fn nested_sum_mod_by_enumeration(m: u32, p: u64, variant: NestedVariant) -> Result<ModP> {
    if m < 1 {
        return Err(Error::InvalidParams("need m >= 1".into()));
    }
    let t = Tables::build(p)?;
    fn chains(lo: usize, hi: usize, m: u32) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in lo..=hi {
            for mut rest in chains(k, hi, m - 1) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }
    let mut acc = 0u64;
    for chain in chains(1, p as usize - 1, m) {
        let mut w = first_index_weight(&t, variant, chain[0]);
        for &k in &chain {
            w = mulmod(w, t.inv[k], p);
        }
        if let NestedVariant::HalfPowLast = variant {
            w = mulmod(w, t.inv_pow2[*chain.last().unwrap()], p);
        }
        acc = (acc + w) % p;
    }
    Ok(ModP::new(acc, p))
}

// ---------------------------------------------------------------- catalog

enum ClBuilt {
    Pair(ModP, ModP),
    Holds { pass: bool, witness: Option<String> },
}

struct ClCtx<'a> {
    t: &'a Tables,
    m: u32,
    x: i64,
    perturb: bool,
}

type ClBuilder = fn(&ClCtx) -> Result<ClBuilt>;

pub struct ClassicalCase {
    pub id: &'static str,
    /// m grid (empty = the case takes no m).
    pub m_values: &'static [u32],
    /// whether the case sweeps the integer parameter x.
    pub takes_x: bool,
    constraint: fn(p: u64, m: u32) -> bool,
    builder: ClBuilder,
}

fn ge3(_p: u64, _m: u32) -> bool {
    true
}
fn ge5(p: u64, _m: u32) -> bool {
    p >= 5
}
fn gt_m_plus_1(p: u64, m: u32) -> bool {
    p > m as u64 + 1
}

/// (1/2) Σ (-1)^{k-1}/k mod p.
fn half_alternating_harmonic(t: &Tables, upto: usize) -> ModP {
    let mut acc = 0u64;
    for k in 1..=upto {
        if k % 2 == 1 {
            acc = (acc + t.inv[k]) % t.p;
        } else {
            acc = (acc + t.p - t.inv[k]) % t.p;
        }
    }
    ModP::new(acc, t.p)
}

/// Eq. (1): the Fermat quotient equals both alternating-harmonic forms.
fn build_known(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let fq = fermat_quotient2(t.p);
    let half = mod_inv(2, t.p)?;
    let mut s1 = half_alternating_harmonic(t, t.p as usize - 1).mul(&half);
    let s2 = half_alternating_harmonic(t, (t.p as usize - 1) / 2);
    if c.perturb {
        s1 = s1.add(&ModP::new(1, t.p));
    }
    let pass = fq == s1 && s1 == s2;
    Ok(ClBuilt::Holds {
        pass,
        witness: (!pass).then(|| {
            format!(
                "fq={}, full-range form={}, half-range form={} (mod {})",
                fq.value(),
                s1.value(),
                s2.value(),
                t.p
            )
        }),
    })
}

/// Glaisher: Σ 2^{k-1}/k ≡ -fq.
fn build_glaisher(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let mut acc = 0u64;
    for k in 1..t.p as usize {
        acc = (acc + mulmod(t.pow2[k - 1], t.inv[k], t.p)) % t.p;
    }
    Ok(ClBuilt::Pair(
        ModP::new(acc, t.p),
        fermat_quotient2(t.p).neg(),
    ))
}

/// Kohnen: Σ 1/(k 2^k) ≡ Σ_{k<=(p-1)/2} (-1)^{k-1}/k.
fn build_kohnen(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let mut acc = 0u64;
    for k in 1..t.p as usize {
        acc = (acc + mulmod(t.inv[k], t.inv_pow2[k], t.p)) % t.p;
    }
    Ok(ClBuilt::Pair(
        ModP::new(acc, t.p),
        half_alternating_harmonic(t, (t.p as usize - 1) / 2),
    ))
}

/// Z.-W. Sun: Σ D_k/k ≡ -fq.
fn build_sun_delannoy(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let d = delannoy_mod(t.p - 1, t.p)?;
    let mut acc = ModP::new(0, t.p);
    for k in 1..t.p as usize {
        acc = acc.add(&d[k].mul(&ModP::new(t.inv[k], t.p)));
    }
    Ok(ClBuilt::Pair(acc, fermat_quotient2(t.p).neg()))
}

/// Σ (-1)^{k-1}/k^m mod p.
fn alternating_power_sum(t: &Tables, m: u32) -> ModP {
    let mut acc = 0u64;
    for k in 1..t.p as usize {
        let term = t.inv_pow(k, m);
        if k % 2 == 1 {
            acc = (acc + term) % t.p;
        } else {
            acc = (acc + t.p - term) % t.p;
        }
    }
    ModP::new(acc, t.p)
}

/// Multi-sum Kohnen: chain sum with 1/2^{k_m} ≡ (1/2) Σ (-1)^{k-1}/k^m.
fn build_multi_kohnen(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::HalfPowLast);
    let rhs = alternating_power_sum(t, c.m).mul(&mod_inv(2, t.p)?);
    Ok(ClBuilt::Pair(lhs, rhs))
}

/// Even m: the same chain sum vanishes.
fn build_multi_even(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::HalfPowLast);
    Ok(ClBuilt::Pair(lhs, ModP::new(0, t.p)))
}

/// Σ H_k/(k 2^k) ≡ 0, p >= 5.
fn build_sun_harmonic(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let mut h = 0u64;
    let mut acc = 0u64;
    for k in 1..t.p as usize {
        h = (h + t.inv[k]) % t.p;
        acc = (acc + mulmod(h, mulmod(t.inv[k], t.inv_pow2[k], t.p), t.p)) % t.p;
    }
    Ok(ClBuilt::Pair(ModP::new(acc, t.p), ModP::new(0, t.p)))
}

/// Σ 1/k^m ≡ 0 for p > m+1.
fn build_power_sum_zero(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let mut acc = 0u64;
    for k in 1..t.p as usize {
        acc = (acc + t.inv_pow(k, c.m)) % t.p;
    }
    Ok(ClBuilt::Pair(ModP::new(acc, t.p), ModP::new(0, t.p)))
}

/// Σ (x^k - 1)/k^m mod p.
fn x_power_rhs(t: &Tables, m: u32, x: i64) -> ModP {
    let xm = ModP::from_i64(x, t.p);
    let mut xpow = ModP::new(1, t.p);
    let mut acc = ModP::new(0, t.p);
    for k in 1..t.p as usize {
        xpow = xpow.mul(&xm);
        let diff = xpow.sub(&ModP::new(1, t.p));
        acc = acc.add(&diff.mul(&ModP::new(t.inv_pow(k, m), t.p)));
    }
    acc
}

/// x-parameterized corollary: chain sum of (1-x)^{k_1}/∏k_i ≡ Σ (x^k-1)/k^m.
fn build_xxyy(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::XFirst(c.x));
    Ok(ClBuilt::Pair(lhs, x_power_rhs(t, c.m, c.x)))
}

/// x = -1: chain sum of 2^{k_1}/∏k_i ≡ Σ ((-1)^k - 1)/k^m.
fn build_cor_x_neg1(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::XFirst(-1));
    Ok(ClBuilt::Pair(lhs, x_power_rhs(t, c.m, -1)))
}

/// x = 2: chain sum of (-1)^{k_1}/∏k_i ≡ Σ (2^k - 1)/k^m.
fn build_cor_x_2(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::XFirst(2));
    Ok(ClBuilt::Pair(lhs, x_power_rhs(t, c.m, 2)))
}

/// The difference of the two: chain sum of (2^{k_1} - (-1)^{k_1})/∏k_i
/// ≡ Σ ((-1)^k - 2^k)/k^m.
fn build_cor_combined(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let lhs = nested_sum_with(t, c.m, NestedVariant::TwoMinusNegFirst());
    let rhs = x_power_rhs(t, c.m, -1).sub(&x_power_rhs(t, c.m, 2));
    Ok(ClBuilt::Pair(lhs, rhs))
}

/// Z.-W. Sun 1995: Σ_{k<=(p-1)/2} 1/(k 2^k) ≡ Σ_{k<=⌊3p/4⌋} (-1)^{k-1}/k.
fn build_sun95(c: &ClCtx) -> Result<ClBuilt> {
    let t = c.t;
    let mut lhs = 0u64;
    for k in 1..=(t.p as usize - 1) / 2 {
        lhs = (lhs + mulmod(t.inv[k], t.inv_pow2[k], t.p)) % t.p;
    }
    // greatest integer not exceeding 3p/4
    let rhs = half_alternating_harmonic(t, (3 * t.p / 4) as usize);
    Ok(ClBuilt::Pair(ModP::new(lhs, t.p), rhs))
}

/// Z.-H. Sun's mod p² refinement of Kohnen's congruence:
/// Σ 1/(k 2^k) ≡ fq - fq²·p/2 (mod p²), with fq = (2^{p-1}-1)/p computed
/// exactly mod p³.
fn build_sun_zh(c: &ClCtx) -> Result<ClBuilt> {
    let p = c.t.p;
    assert!(p < (1 << 21), "sunZH needs p^3 to fit in a u64");
    let p2 = p * p;
    let p3 = p2 * p;
    let t = (ModP::new(2, p3).pow(p - 1).value() - 1) / p;
    let t = ModP::new(t, p2);
    let rhs = t.sub(&ModP::new(p, p2).mul(&t).mul(&t).mul(&mod_inv(2, p2)?));

    let inv = batch_inverses(p - 1, p2)?;
    let inv2 = mod_inv(2, p2)?;
    let mut inv_pow2 = ModP::new(1, p2);
    let mut lhs = ModP::new(0, p2);
    for k in 1..p as usize {
        inv_pow2 = inv_pow2.mul(&inv2);
        lhs = lhs.add(&ModP::new(inv[k], p2).mul(&inv_pow2));
    }
    Ok(ClBuilt::Pair(lhs, rhs))
}

static M1234: &[u32] = &[1, 2, 3, 4];
static M24: &[u32] = &[2, 4];
static M123: &[u32] = &[1, 2, 3];

static CASES: &[ClassicalCase] = &[
    ClassicalCase {
        id: "known",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_known,
    },
    ClassicalCase {
        id: "glaisher",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_glaisher,
    },
    ClassicalCase {
        id: "kohnen",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_kohnen,
    },
    ClassicalCase {
        id: "sun-delannoy",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_sun_delannoy,
    },
    ClassicalCase {
        id: "multi-kohnen",
        m_values: M1234,
        takes_x: false,
        constraint: gt_m_plus_1,
        builder: build_multi_kohnen,
    },
    ClassicalCase {
        id: "multi-even",
        m_values: M24,
        takes_x: false,
        constraint: gt_m_plus_1,
        builder: build_multi_even,
    },
    ClassicalCase {
        id: "sun-harmonic",
        m_values: &[],
        takes_x: false,
        constraint: ge5,
        builder: build_sun_harmonic,
    },
    ClassicalCase {
        id: "power-sum-zero",
        m_values: M1234,
        takes_x: false,
        constraint: gt_m_plus_1,
        builder: build_power_sum_zero,
    },
    ClassicalCase {
        id: "xxyy",
        m_values: M123,
        takes_x: true,
        constraint: ge3,
        builder: build_xxyy,
    },
    ClassicalCase {
        id: "cor-x-neg1",
        m_values: M123,
        takes_x: false,
        constraint: ge3,
        builder: build_cor_x_neg1,
    },
    ClassicalCase {
        id: "cor-x-2",
        m_values: M123,
        takes_x: false,
        constraint: ge3,
        builder: build_cor_x_2,
    },
    ClassicalCase {
        id: "cor-combined",
        m_values: M123,
        takes_x: false,
        constraint: ge3,
        builder: build_cor_combined,
    },
    ClassicalCase {
        id: "sun95",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_sun95,
    },
    ClassicalCase {
        id: "sunZH",
        m_values: &[],
        takes_x: false,
        constraint: ge3,
        builder: build_sun_zh,
    },
];

pub fn classical_cases() -> &'static [ClassicalCase] {
    CASES
}

pub fn classical_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

pub fn find_classical_case(id: &str) -> Result<&'static ClassicalCase> {
    CASES
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

fn run_classical_case(
    case: &ClassicalCase,
    t: &Tables,
    m: Option<u32>,
    x: Option<i64>,
    perturb: bool,
    exploratory: bool,
) -> Report {
    let mut params = BTreeMap::new();
    if let Some(m) = m {
        params.insert("m".to_string(), m as i64);
    }
    if let Some(x) = x {
        params.insert("x".to_string(), x);
    }
    let start = Instant::now();
    let report = |status, witness| Report {
        case: case.id.to_string(),
        prime: Some(t.p),
        params: params.clone(),
        status,
        witness,
        millis: start.elapsed().as_millis() as u64,
    };

    let constraint_met = (case.constraint)(t.p, m.unwrap_or(1));
    if !constraint_met && !exploratory {
        return report(Status::Skipped, None);
    }
    let ctx = ClCtx {
        t,
        m: m.unwrap_or(1),
        x: x.unwrap_or(0),
        perturb,
    };
    let (pass, witness) = match (case.builder)(&ctx) {
        Ok(ClBuilt::Pair(lhs, mut rhs)) => {
            if perturb {
                rhs = rhs.add(&ModP::new(1, rhs.modulus()));
            }
            let pass = lhs == rhs;
            (
                pass,
                (!pass).then(|| {
                    format!(
                        "lhs={} rhs={} (mod {})",
                        lhs.value(),
                        rhs.value(),
                        lhs.modulus()
                    )
                }),
            )
        }
        Ok(ClBuilt::Holds { pass, witness }) => (pass, witness),
        Err(e) => {
            if constraint_met {
                return report(Status::Error, Some(e.to_string()));
            }
            (false, Some(e.to_string()))
        }
    };
    let status = match (constraint_met, pass) {
        (true, true) => Status::Pass,
        (true, false) => Status::Fail,
        (false, true) => Status::ExploratoryPass,
        (false, false) => Status::ExploratoryFail,
    };
    report(status, witness)
}

/// Verifies one classical case at one prime.
pub fn verify_classical(id: &str, p: u64, m: Option<u32>, x: Option<i64>) -> Result<Report> {
    let case = find_classical_case(id)?;
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let t = Tables::build(p)?;
    let m = (!case.m_values.is_empty()).then(|| m.unwrap_or(1));
    let x = case.takes_x.then(|| x.unwrap_or(-1));
    Ok(run_classical_case(case, &t, m, x, false, false))
}

pub struct ClassicalSweepOptions<'a> {
    pub case_ids: &'a [String],
    /// Caps each case's m grid.
    pub m_max: u32,
    /// x values for the x-parameterized case.
    pub x_values: &'a [i64],
    pub exploratory: bool,
    pub perturb: bool,
}

impl Default for ClassicalSweepOptions<'_> {
    fn default() -> Self {
        ClassicalSweepOptions {
            case_ids: &[],
            m_max: 4,
            x_values: &[-3, -2, -1, 0, 1, 2, 3],
            exploratory: false,
            perturb: false,
        }
    }
}

/// Sweeps the classical catalog over the given primes, in parallel over
/// primes; per-prime inverse/power tables are shared across cases.
pub fn classical_all(primes: &[u64], opts: &ClassicalSweepOptions) -> Result<Vec<Report>> {
    let selected: Vec<&ClassicalCase> = if opts.case_ids.is_empty() {
        CASES.iter().collect()
    } else {
        opts.case_ids
            .iter()
            .map(|id| find_classical_case(id))
            .collect::<Result<_>>()?
    };
    let mut reports: Vec<Report> = primes
        .par_iter()
        .map(|&p| -> Result<Vec<Report>> {
            if p < 3 || !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let t = Tables::build(p)?;
            let mut out = Vec::new();
            for case in &selected {
                let ms: Vec<Option<u32>> = if case.m_values.is_empty() {
                    vec![None]
                } else {
                    case.m_values
                        .iter()
                        .filter(|&&m| m <= opts.m_max)
                        .map(|&m| Some(m))
                        .collect()
                };
                let xs: Vec<Option<i64>> = if case.takes_x {
                    opts.x_values.iter().map(|&x| Some(x)).collect()
                } else {
                    vec![None]
                };
                for &m in &ms {
                    for &x in &xs {
                        out.push(run_classical_case(
                            case,
                            &t,
                            m,
                            x,
                            opts.perturb,
                            opts.exploratory,
                        ));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    crate::report::sort_reports(&mut reports);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(2, 5).unwrap().value(), 3);
        assert_eq!(mod_inv(1, 97).unwrap().value(), 1);
        assert_eq!(mod_inv(4, 25).unwrap().value(), 19);
        assert!(mod_inv(5, 25).is_err());
        for k in 1..31u64 {
            let i = mod_inv(k, 31 * 31).unwrap();
            assert_eq!(mulmod(k, i.value(), 31 * 31), 1);
        }
    }

    #[test]
    fn batch_matches_individual() {
        for modulus in [13u64, 97, 97 * 97] {
            let inv = batch_inverses(12, modulus).unwrap();
            for k in 1..=12u64 {
                assert_eq!(inv[k as usize], mod_inv(k, modulus).unwrap().value());
            }
        }
    }

    #[test]
    fn fermat_quotient_examples() {
        assert_eq!(fermat_quotient2(3).value(), 1); // (4-1)/3
        assert_eq!(fermat_quotient2(5).value(), 3); // (16-1)/5
        assert_eq!(fermat_quotient2(7).value(), 2); // (64-1)/7 = 9 = 2 mod 7
    }

    /// The defining binomial sum, evaluated exactly in 128-bit integers —
    /// the oracle for the recurrence.
    fn delannoy_exact(n: u64) -> u128 {
        fn comb(n: u64, k: u64) -> u128 {
            let mut acc = 1u128;
            for j in 0..k {
                acc = acc * (n - j) as u128 / (j + 1) as u128;
            }
            acc
        }
        (0..=n).map(|k| comb(n + k, 2 * k) * comb(2 * k, k)).sum()
    }

    #[test]
    fn delannoy_recurrence_matches_binomial_sum() {
        let d = delannoy_mod(25, 1009).unwrap();
        for n in 0..=25u64 {
            assert_eq!(
                d[n as usize].value(),
                (delannoy_exact(n) % 1009) as u64,
                "n={n}"
            );
        }
        assert_eq!(
            d[..5].iter().map(ModP::value).collect::<Vec<_>>(),
            vec![1, 3, 13, 63, 321]
        );
        let d5 = delannoy_mod(4, 5).unwrap();
        assert_eq!(d5[4].value(), 1); // 321 mod 5
        assert!(delannoy_mod(5, 5).is_err());
    }

    #[test]
    fn nested_sum_examples() {
        // m=1, Eq.(13) weight, p=5: 1/2 + 1/8 + 1/24 + 1/64 = 3 mod 5
        assert_eq!(
            nested_sum_mod(1, 5, NestedVariant::HalfPowLast)
                .unwrap()
                .value(),
            3
        );
        // m=2 equals the direct double sum with harmonic numbers
        for p in [5u64, 7, 11, 13] {
            let t = Tables::build(p).unwrap();
            let mut h = 0u64;
            let mut direct = 0u64;
            for k in 1..p as usize {
                h = (h + t.inv[k]) % p;
                direct = (direct + mulmod(h, mulmod(t.inv[k], t.inv_pow2[k], p), p)) % p;
            }
            assert_eq!(
                nested_sum_mod(2, p, NestedVariant::HalfPowLast)
                    .unwrap()
                    .value(),
                direct
            );
        }
    }

    #[test]
    fn nested_dp_matches_enumeration() {
        let variants = [
            NestedVariant::HalfPowLast,
            NestedVariant::XFirst(-3),
            NestedVariant::XFirst(2),
            NestedVariant::TwoMinusNegFirst(),
        ];
        for p in [5u64, 7, 11, 13] {
            for m in 1..=3 {
                for v in variants {
                    assert_eq!(
                        nested_sum_mod(m, p, v).unwrap(),
                        nested_sum_mod_by_enumeration(m, p, v).unwrap(),
                        "p={p} m={m} {v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn xxyy_m1_is_direct_sum() {
        // at m=1 the chain sum is just Σ (1-x)^k / k
        for p in [13u64, 97] {
            let t = Tables::build(p).unwrap();
            for x in [-3i64, -1, 0, 2, 5] {
                let base = ModP::from_i64(1 - x, p);
                let mut pow = ModP::new(1, p);
                let mut direct = ModP::new(0, p);
                for k in 1..p as usize {
                    pow = pow.mul(&base);
                    direct = direct.add(&pow.mul(&ModP::new(t.inv[k], p)));
                }
                assert_eq!(
                    nested_sum_mod(1, p, NestedVariant::XFirst(x)).unwrap(),
                    direct
                );
            }
        }
    }

    #[test]
    fn verify_examples_at_5() {
        let g = verify_classical("glaisher", 5, None, None).unwrap();
        assert_eq!(g.status, Status::Pass);
        let k = verify_classical("kohnen", 5, None, None).unwrap();
        assert_eq!(k.status, Status::Pass);
        let s = verify_classical("sun-delannoy", 5, None, None).unwrap();
        assert_eq!(s.status, Status::Pass);
        // and the hand-computed values behind them
        let t = Tables::build(5).unwrap();
        let mut glaisher_lhs = 0u64;
        for k in 1..5 {
            glaisher_lhs = (glaisher_lhs + mulmod(t.pow2[k - 1], t.inv[k], 5)) % 5;
        }
        assert_eq!(glaisher_lhs, 2); // = -3 mod 5
    }

    #[test]
    fn eq1_internal_consistency() {
        for p in crate::primes::primes_in(3, 200) {
            let t = Tables::build(p).unwrap();
            let half = mod_inv(2, p).unwrap();
            let s1 = half_alternating_harmonic(&t, p as usize - 1).mul(&half);
            let s2 = half_alternating_harmonic(&t, (p as usize - 1) / 2);
            assert_eq!(s1, s2, "p={p}");
        }
    }

    #[test]
    fn combined_case_is_termwise_difference() {
        for p in [7u64, 11, 13, 31] {
            let t = Tables::build(p).unwrap();
            for m in 1..=3 {
                let lhs_combined = nested_sum_with(&t, m, NestedVariant::TwoMinusNegFirst());
                let lhs_diff = nested_sum_with(&t, m, NestedVariant::XFirst(-1))
                    .sub(&nested_sum_with(&t, m, NestedVariant::XFirst(2)));
                assert_eq!(lhs_combined, lhs_diff, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn whole_catalog_small_primes() {
        let primes = crate::primes::primes_in(3, 50);
        let reports = classical_all(&primes, &ClassicalSweepOptions::default()).unwrap();
        for r in &reports {
            assert!(
                matches!(r.status, Status::Pass | Status::Skipped),
                "{:?}",
                r
            );
        }
        for id in classical_ids() {
            assert!(reports.iter().any(|r| r.case == id), "missing {id}");
        }
        assert_eq!(classical_ids().len(), 14);
    }

    #[test]
    fn perturbed_case_fails() {
        for id in ["kohnen", "sunZH", "known"] {
            let case = find_classical_case(id).unwrap();
            let t = Tables::build(13).unwrap();
            let r = run_classical_case(case, &t, None, None, true, false);
            assert_eq!(r.status, Status::Fail, "{id}");
            assert!(r.witness.is_some(), "{id}");
        }
    }
}
