//! Truncated power series with exact rational coefficients, the tree
//! function, and the generating functions of the real invariants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::{n_closed, SeedConstants};

/// `c_0 + c_1 x + ... + c_N x^N`, exact modulo `x^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

impl FormalSeries {
    /// Pads with zeros or truncates to the given order.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        FormalSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `n! c_n`, the coefficient read as an exponential generating function.
    pub fn egf_coeff(&self, n: usize) -> BigRational {
        self.coeff(n) * BigRational::from_integer(factorial(n))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self::new(
            (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
            n,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self::new(
            (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
            n,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order())
    }

    /// `f(x) -> f(b x)`.
    pub fn substitute_scale(&self, b: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= b;
        }
        Self::new(out, self.order())
    }

    /// `f / x^k`. Requires the first `k` coefficients to vanish; the order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidParameter(format!(
                "cannot divide a series of order {} by x^{k}",
                self.order()
            )));
        }
        if let Some(c) = self.coeffs[..k].iter().find(|c| !c.is_zero()) {
            return Err(Error::BadConstantTerm {
                expected: "0".into(),
                found: c.to_string(),
            });
        }
        Ok(Self::new(self.coeffs[k..].to_vec(), self.order() - k))
    }

    /// `x^k f`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self::new(out, self.order())
    }

    fn require_constant(&self, expected: i64) -> Result<()> {
        if self.coeffs[0] != rat(expected) {
            return Err(Error::BadConstantTerm {
                expected: expected.to_string(),
                found: self.coeffs[0].to_string(),
            });
        }
        Ok(())
    }

    /// `exp(f)` for `f(0) = 0`, via `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant(0)?;
        let n = self.order();
        let mut g = vec![BigRational::one()];
        for i in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=i {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[i - k] * rat(k as i64);
                }
            }
            g.push(acc / rat(i as i64));
        }
        Ok(Self::new(g, n))
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        self.require_constant(1)?;
        let n = self.order();
        let mut h = vec![BigRational::zero()];
        for i in 1..=n {
            let mut acc = &self.coeffs[i] * rat(i as i64);
            for k in 1..i {
                if !h[k].is_zero() {
                    acc -= &h[k] * &self.coeffs[i - k] * rat(k as i64);
                }
            }
            h.push(acc / rat(i as i64));
        }
        Ok(Self::new(h, n))
    }

    /// `f^s` for `f(0) = 1` and rational `s`.
    pub fn pow_rational(&self, s: &BigRational) -> Result<Self> {
        self.log()?.scale(s).exp()
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `T(x) = sum_{n>=1} n^(n-1) x^n / n!`.
pub fn tree_function(order: usize) -> FormalSeries {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(n).pow(n as u32 - 1), factorial(n))
            }
        })
        .collect();
    FormalSeries::new(coeffs, order)
}

/// The same generating function obtained in two independent ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoRoutes {
    /// from the tree function
    pub formula: FormalSeries,
    /// from the closed-form values, `N / n!`
    pub coefficients: FormalSeries,
}

impl TwoRoutes {
    pub fn agree(&self) -> bool {
        self.formula == self.coefficients
    }
}

pub const MAX_SERIES_ORDER: usize = 30;

fn series_params(d: u32, order: usize) -> Result<(SeedConstants, BigRational)> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::InvalidParameter(format!(
            "order must be <= {MAX_SERIES_ORDER}"
        )));
    }
    let seeds = SeedConstants::for_degree(d)?;
    let b = BigRational::from_integer(seeds.b());
    Ok((seeds, b))
}

/// `N^even(x) = sum_n N_{2n+2,1} x^n / n! = N_{2,1} (bx)^(-1) (T(bx) - T(bx)^2 / 2)`.
pub fn n_even_series(d: u32, order: usize) -> Result<TwoRoutes> {
    let (seeds, b) = series_params(d, order)?;
    let t = tree_function(order + 1);
    let g = t.sub(&t.mul(&t).scale(&BigRational::new(1.into(), 2.into())));
    let formula = g
        .shift_down(1)?
        .substitute_scale(&b)
        .scale(&BigRational::from_integer(seeds.n21));
    let coefficients = FormalSeries::new(
        (0..=order)
            .map(|n| n_closed(d, 2 * n as u32 + 2, 1).map(|v| BigRational::new(v, factorial(n))))
            .collect::<Result<_>>()?,
        order,
    );
    Ok(TwoRoutes {
        formula,
        coefficients,
    })
}

/// `N^odd(x) = sum_n N_{2n+1,0} x^n / n! = N_{1,0} (bx)^(-1/2) (T^(1/2) - T^(3/2) / 3)(bx)`.
pub fn n_odd_series(d: u32, order: usize) -> Result<TwoRoutes> {
    let (seeds, b) = series_params(d, order)?;
    // with U = T(y)/y: y^(-1/2) (T^(1/2) - T^(3/2)/3) = U^(1/2) - y U^(3/2) / 3
    let u = tree_function(order + 1).shift_down(1)?;
    let half = BigRational::new(1.into(), 2.into());
    let three_halves = BigRational::new(3.into(), 2.into());
    let g = u.pow_rational(&half)?.sub(
        &u.pow_rational(&three_halves)?
            .shift_up(1)
            .scale(&BigRational::new(1.into(), 3.into())),
    );
    let formula = g
        .substitute_scale(&b)
        .scale(&BigRational::from_integer(seeds.n10));
    let coefficients = FormalSeries::new(
        (0..=order)
            .map(|n| n_closed(d, 2 * n as u32 + 1, 0).map(|v| BigRational::new(v, factorial(n))))
            .collect::<Result<_>>()?,
        order,
    );
    Ok(TwoRoutes {
        formula,
        coefficients,
    })
}

/// Checks `sum_n (1/2)(n + 1/2)^(n-1) x^n / n! = e^(T/2) = (T/x)^(1/2)`.
pub fn half_tree_identity(order: usize) -> Result<bool> {
    let half = BigRational::new(1.into(), 2.into());
    let t = tree_function(order + 1);
    let via_exp = t.truncate(order).scale(&half).exp()?;
    let via_root = t.shift_down(1)?.pow_rational(&half)?;
    let explicit = FormalSeries::new(
        (0..=order)
            .map(|n| {
                let base = BigRational::new(BigInt::from(2 * n + 1), 2.into());
                let p = num_traits::pow::Pow::pow(&base, n as i32 - 1);
                &half * p / BigRational::from_integer(factorial(n))
            })
            .collect(),
        order,
    );
    Ok(via_exp == via_root && via_exp == explicit)
}

/// Abel's binomial identity
/// `(x+y)^m / x = sum_{k=0..m} C(m,k) (x - kz)^(k-1) (y + kz)^(m-k)`.
pub fn abel_check(m: u32, x: &BigRational, y: &BigRational, z: &BigRational) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::DivisionByZeroInSpecialization);
    }
    let lhs = num_traits::pow(x + y, m as usize) / x;
    let mut rhs = BigRational::zero();
    let mut c = BigInt::one();
    for k in 0..=m as i64 {
        let kz = z * rat(k);
        let left = if k == 0 {
            x.recip()
        } else {
            num_traits::pow(x - &kz, k as usize - 1)
        };
        let right = num_traits::pow(y + &kz, (m as i64 - k) as usize);
        rhs += BigRational::from_integer(c.clone()) * left * right;
        c = c * (m as i64 - k) / (k + 1);
    }
    Ok(lhs == rhs)
}

/// The two specializations `x = -z = 1, m = n - 1` with `y = n` (even rows)
/// and `y = n - 1/2` (odd rows).
pub fn abel_specializations(n: u32) -> Result<(bool, bool)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let one = rat(1);
    let z = rat(-1);
    let even = abel_check(n - 1, &one, &rat(n as i64), &z)?;
    let y_odd = BigRational::new(BigInt::from(2 * n as i64 - 1), 2.into());
    let odd = abel_check(n - 1, &one, &y_odd, &z)?;
    Ok((even, odd))
}
