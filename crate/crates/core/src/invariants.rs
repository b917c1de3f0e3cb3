//! The signed counts `N_{m,k}`, their open Gromov-Witten normalization
//! `Gamma_{m,k}`, and the layer sums `N_m^GW` of genus-0 Gromov-Witten
//! invariants.
//!
//! `N_{m,k}` is computed by two independent routes: the closed forms
//!
//! ```text
//! N_{2n+1,0} = (1/4) N_{1,0} b^n (n + 1/2)^(n-2)
//! N_{2n+2,1} = N_{2,1} b^n (n + 1)^(n-2),        b = 4 N_{2,1} / d
//! ```
//!
//! and the quadratic recursions
//!
//! ```text
//! m d N_{m,k} = 2 sum_{j=1..n} C(n-1, n-j) j (m-2j)^2 N_{m-2j,k} N_{2j,1}
//! ```
//!
//! for `(m, k) = (2n+1, 0)` and `(2n+2, 1)`. All arithmetic is exact; every
//! division is checked for integrality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed values for one degree `d <= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedConstants {
    pub degree: u32,
    pub n10: BigInt,
    pub n21: BigInt,
    /// base of the closed form for root-weighted GW sums
    pub a: BigInt,
    pub provenance: &'static str,
}

impl SeedConstants {
    pub fn for_degree(d: u32) -> Result<Self> {
        let (n10, n21, a, provenance) = match d {
            1 => (8, 30, 60, "stored initial values N_{1,0}=8, N_{2,1}=30"),
            2 => (
                0,
                6,
                6,
                "stored initial values N_{1,0}=0, N_{2,1}=6; odd rows vanish",
            ),
            3 => (3, 3, 2, "stored initial values N_{1,0}=3, N_{2,1}=3"),
            _ => return Err(degree_err(d, 3)),
        };
        Ok(SeedConstants {
            degree: d,
            n10: BigInt::from(n10),
            n21: BigInt::from(n21),
            a: BigInt::from(a),
            provenance,
        })
    }

    /// `b = 4 N_{2,1} / d`, an integer for every supported degree.
    pub fn b(&self) -> BigInt {
        let num: BigInt = &self.n21 * 4;
        let (q, r) = num.div_rem(&BigInt::from(self.degree));
        debug_assert!(r.is_zero());
        q
    }
}

/// Initial values `N_1^GW, N_2^GW, N_3^GW` for `1 <= d <= 6`.
pub const GW_SEEDS: [[i64; 3]; 6] = [
    [252, 5130, 446400],
    [56, 138, 344],
    [27, 27, 84],
    [16, 10, 16],
    [10, 5, 5],
    [6, 3, 2],
];

pub fn gw_seeds(d: u32) -> Result<[i64; 3]> {
    if !(1..=6).contains(&d) {
        return Err(degree_err(d, 6));
    }
    Ok(GW_SEEDS[d as usize - 1])
}

fn degree_err(d: u32, max: u32) -> Error {
    Error::DegreeOutOfRange {
        degree: d,
        min: 1,
        max,
    }
}

fn check_index(d: u32, m: u32, k: u32) -> Result<()> {
    if !(1..=3).contains(&d) {
        return Err(degree_err(d, 3));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    if k > m - 1 {
        return Err(Error::PointsOutOfRange { m, k });
    }
    if (m - 1 - k) % 2 != 0 {
        return Err(Error::ParityMismatch { m, k });
    }
    Ok(())
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

fn integral(value: BigRational, context: impl FnOnce() -> String) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralResult {
            value: value.to_string(),
            context: context(),
        })
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `N_{m,k}` from the closed forms.
pub fn n_closed(d: u32, m: u32, k: u32) -> Result<BigInt> {
    check_index(d, m, k)?;
    if k >= 2 {
        return Ok(BigInt::zero());
    }
    if d == 2 && m % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let seeds = SeedConstants::for_degree(d)?;
    let b = rat(seeds.b());
    let value = if m % 2 == 1 {
        let n = ((m - 1) / 2) as i64;
        let half = rat(2 * n + 1) / rat(2);
        rat(seeds.n10.clone()) / rat(4) * rat_pow(&b, n) * rat_pow(&half, n - 2)
    } else {
        let n = ((m - 2) / 2) as i64;
        rat(seeds.n21.clone()) * rat_pow(&b, n) * rat_pow(&rat(n + 1), n - 2)
    };
    integral(value, || format!("closed form N_({m},{k}), d={d}"))
}

/// Memoized solver for the quadratic recursions of one degree.
#[derive(Debug, Clone)]
pub struct RecursiveSolver {
    degree: u32,
    /// `odd[n] = N_{2n+1,0}`
    odd: Vec<BigInt>,
    /// `even[n] = N_{2n+2,1}`
    even: Vec<BigInt>,
}

impl RecursiveSolver {
    pub fn new(d: u32) -> Result<Self> {
        let seeds = SeedConstants::for_degree(d)?;
        Ok(RecursiveSolver {
            degree: d,
            odd: vec![seeds.n10],
            even: vec![seeds.n21],
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn n21(&self, j: usize) -> &BigInt {
        // N_{2j,1} = even[j-1]
        &self.even[j - 1]
    }

    fn extend_even(&mut self, upto: usize) -> Result<()> {
        while self.even.len() <= upto {
            let n = self.even.len();
            let m = (2 * n + 2) as i64;
            let mut acc = BigInt::zero();
            for j in 1..=n {
                let c = binom(n as i64 - 1, (n - j) as i64);
                let w = c * (j as i64) * BigInt::from((m - 2 * j as i64).pow(2));
                // N_{m-2j,1} = even[n-j]
                acc += w * &self.even[n - j] * self.n21(j);
            }
            acc *= 2;
            let div = BigInt::from(m * self.degree as i64);
            let (q, r) = acc.div_rem(&div);
            if !r.is_zero() {
                return Err(Error::NonIntegralResult {
                    value: format!("{acc}/{div}"),
                    context: format!("recursion N_({m},1), d={}", self.degree),
                });
            }
            self.even.push(q);
        }
        Ok(())
    }

    fn extend_odd(&mut self, upto: usize) -> Result<()> {
        if upto > 0 {
            self.extend_even(upto - 1)?;
        }
        while self.odd.len() <= upto {
            let n = self.odd.len();
            let m = (2 * n + 1) as i64;
            let mut acc = BigInt::zero();
            for j in 1..=n {
                let c = binom(n as i64 - 1, (n - j) as i64);
                let w = c * (j as i64) * BigInt::from((m - 2 * j as i64).pow(2));
                // N_{m-2j,0} = odd[n-j]
                acc += w * &self.odd[n - j] * self.n21(j);
            }
            acc *= 2;
            let div = BigInt::from(m * self.degree as i64);
            let (q, r) = acc.div_rem(&div);
            if !r.is_zero() {
                return Err(Error::NonIntegralResult {
                    value: format!("{acc}/{div}"),
                    context: format!("recursion N_({m},0), d={}", self.degree),
                });
            }
            self.odd.push(q);
        }
        Ok(())
    }

    pub fn get(&mut self, m: u32, k: u32) -> Result<BigInt> {
        check_index(self.degree, m, k)?;
        if k >= 2 {
            return Ok(BigInt::zero());
        }
        if m % 2 == 1 {
            let n = ((m - 1) / 2) as usize;
            self.extend_odd(n)?;
            Ok(self.odd[n].clone())
        } else {
            let n = ((m - 2) / 2) as usize;
            self.extend_even(n)?;
            Ok(self.even[n].clone())
        }
    }
}

/// `N_{m,k}` from the recursions.
pub fn n_recursive(d: u32, m: u32, k: u32) -> Result<BigInt> {
    RecursiveSolver::new(d)?.get(m, k)
}

/// `Gamma_{m,k} = -N_{m,k} / 2^(l-1)` with `l = (m - k - 1) / 2`.
pub fn gamma_from_n(m: u32, k: u32, n: &BigInt) -> Result<BigRational> {
    if m == 0 || k > m - 1 {
        return Err(Error::PointsOutOfRange { m, k });
    }
    if (m - 1 - k) % 2 != 0 {
        return Err(Error::ParityMismatch { m, k });
    }
    let l = ((m - 1 - k) / 2) as i64;
    Ok(-rat(n.clone()) * rat_pow(&rat(2), 1 - l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Recursion,
    Closed,
}

/// `N_{m,k}` for all admissible `(m, k)` with `m <= max_m`, plus `N_m^GW`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    pub degree: u32,
    pub entries: BTreeMap<(u32, u32), BigInt>,
    pub gw_entries: BTreeMap<u32, BigInt>,
}

impl InvariantTable {
    pub fn compute(d: u32, max_m: u32, method: Method) -> Result<Self> {
        let mut solver = RecursiveSolver::new(d)?;
        let mut entries = BTreeMap::new();
        for m in 1..=max_m {
            for k in (0..m).filter(|k| (m - 1 - k) % 2 == 0) {
                let v = match method {
                    Method::Recursion => solver.get(m, k)?,
                    Method::Closed => n_closed(d, m, k)?,
                };
                entries.insert((m, k), v);
            }
        }
        let gw_entries = gw_sequence(d, max_m)?
            .into_iter()
            .enumerate()
            .map(|(i, v)| (i as u32 + 1, v))
            .collect();
        Ok(InvariantTable {
            degree: d,
            entries,
            gw_entries,
        })
    }

    pub fn get(&self, m: u32, k: u32) -> Option<&BigInt> {
        self.entries.get(&(m, k))
    }

    pub fn gamma(&self, m: u32, k: u32) -> Option<BigRational> {
        self.get(m, k).and_then(|n| gamma_from_n(m, k, n).ok())
    }
}

/// `N_1^GW ..= N_max_m^GW` from the layer recursion
///
/// ```text
/// d^2 N_m = sum_{m1+m2=m} N_m1 N_m2 m1^2 m2 (m2 C(m-4, m1-2) - m1 C(m-4, m1-1)),  m >= 4
/// ```
pub fn gw_sequence(d: u32, max_m: u32) -> Result<Vec<BigInt>> {
    gw_sequence_with_seeds(d, max_m, gw_seeds(d)?)
}

/// As [`gw_sequence`] with explicit initial values.
pub fn gw_sequence_with_seeds(d: u32, max_m: u32, seeds: [i64; 3]) -> Result<Vec<BigInt>> {
    if !(1..=6).contains(&d) {
        return Err(degree_err(d, 6));
    }
    let mut seq: Vec<BigInt> = seeds.iter().map(|&s| BigInt::from(s)).collect();
    seq.truncate(max_m as usize);
    let d2 = BigInt::from(d * d);
    for m in 4..=max_m as i64 {
        let mut acc = BigInt::zero();
        for m1 in 1..m {
            let m2 = m - m1;
            let bracket = binom(m - 4, m1 - 2) * m2 - binom(m - 4, m1 - 1) * m1;
            if bracket.is_zero() {
                continue;
            }
            acc += &seq[m1 as usize - 1] * &seq[m2 as usize - 1] * (m1 * m1 * m2) * bracket;
        }
        let (q, r) = acc.div_rem(&d2);
        if !r.is_zero() {
            return Err(Error::NonIntegralResult {
                value: format!("{acc}/{d2}"),
                context: format!("GW layer recursion m={m}, d={d}"),
            });
        }
        seq.push(q);
    }
    Ok(seq)
}

pub fn gw_layer_sum(d: u32, m: u32) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    Ok(gw_sequence(d, m)?.pop().expect("non-empty"))
}

/// `sum_{a in L^n} (e.a)^2 GW_a = 2 d a^n n^(n-3)` for a root `e`.
pub fn root_weighted_gw_sum(d: u32, n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let seeds = SeedConstants::for_degree(d)?;
    let value = rat(2 * d as i64)
        * rat_pow(&rat(seeds.a), n as i64)
        * rat_pow(&rat(n as i64), n as i64 - 3);
    integral(value, || format!("root-weighted GW sum n={n}, d={d}"))
}

/// Checks `N_{2m,1} = 2^(m-3) sum_{a in L^m} (e.a)^2 GW_a`.
pub fn magic_check(d: u32, m: u32) -> Result<bool> {
    let lhs = rat(n_closed(d, 2 * m, 1)?);
    let rhs = rat_pow(&rat(2), m as i64 - 3) * rat(root_weighted_gw_sum(d, m)?);
    Ok(lhs == rhs)
}

/// Checks `n 2^n = sum_k (n - 2k)^2 C(n, k)`.
pub fn binom_square_sum(n: u32) -> bool {
    let n = n as i64;
    let lhs = BigInt::from(n) << n as usize;
    let rhs: BigInt = (0..=n).map(|k| binom(n, k) * (n - 2 * k).pow(2)).sum();
    lhs == rhs
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> Option<f64> {
    if !x.is_positive() {
        return None;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift as usize;
    Some(top.to_f64()?.ln() + shift as f64 * std::f64::consts::LN_2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub m: u32,
    /// `log N_{2m}^GW - 2m log m`
    pub gw_residual: Option<f64>,
    /// `log N_{2m,1} - m log m`
    pub even_residual: f64,
    /// `log N_{2m+1,0} - m log m`; absent when the odd row vanishes
    pub odd_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub degree: u32,
    pub rows: Vec<GrowthRow>,
    /// smallest `C` with `|residual| <= C m` over the rows, per sequence
    pub gw_constant: f64,
    pub even_constant: f64,
    pub odd_constant: Option<f64>,
}

pub const GROWTH_MAX_M: u32 = 30;

/// Residuals of the growth rates of `N_{2m}^GW`, `N_{2m,1}`, `N_{2m+1,0}`
/// against `2m log m`, `m log m`, `m log m`.
pub fn growth_report(d: u32, m_max: u32) -> Result<GrowthReport> {
    if m_max == 0 || m_max > GROWTH_MAX_M {
        return Err(Error::InvalidParameter(format!(
            "m_max must be in 1..={GROWTH_MAX_M}"
        )));
    }
    let gw = gw_sequence(d, 2 * m_max)?;
    let mut solver = RecursiveSolver::new(d)?;
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let mf = m as f64;
        let mlogm = mf * mf.ln();
        let gw_residual = ln_big(&gw[2 * m as usize - 1]).map(|l| l - 2.0 * mlogm);
        let even = solver.get(2 * m, 1)?;
        let even_residual = ln_big(&even).ok_or_else(|| Error::NonIntegralResult {
            value: even.to_string(),
            context: "non-positive N_{2m,1}".into(),
        })? - mlogm;
        let odd = solver.get(2 * m + 1, 0)?;
        let odd_residual = ln_big(&odd).map(|l| l - mlogm);
        rows.push(GrowthRow {
            m,
            gw_residual,
            even_residual,
            odd_residual,
        });
    }
    let fit = |vals: Vec<(u32, f64)>| {
        vals.into_iter()
            .map(|(m, r)| r.abs() / m as f64)
            .fold(0.0f64, f64::max)
    };
    let gw_constant = fit(rows
        .iter()
        .filter_map(|r| r.gw_residual.map(|x| (r.m, x)))
        .collect());
    let even_constant = fit(rows.iter().map(|r| (r.m, r.even_residual)).collect());
    let odd_constant = if rows.iter().all(|r| r.odd_residual.is_some()) {
        Some(fit(rows
            .iter()
            .map(|r| (r.m, r.odd_residual.unwrap()))
            .collect()))
    } else {
        None
    };
    Ok(GrowthReport {
        degree: d,
        rows,
        gw_constant,
        even_constant,
        odd_constant,
    })
}
