//! Picard lattices of del Pezzo surfaces in the blow-up basis.
//!
//! A degree-`d` del Pezzo surface (`1 <= d <= 6`) is modelled as the plane
//! blown up in `9 - d` points. Its second homology is `Z^(10-d)` with basis
//! `(h, e_1, ..., e_{9-d})` and intersection form `diag(1, -1, ..., -1)`; the
//! canonical class is `K = -3h + e_1 + ... + e_{9-d}`.
//!
//! Classes are integral except for the outputs of [`DelPezzoLattice::project_perp`],
//! which may carry denominator 2. The two states are kept apart by
//! [`DivisorClass::denom`].

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Intersection form `diag(1, -1, ..., -1)` on raw coordinate vectors.
#[inline]
pub fn form(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = a[0] * b[0];
    for i in 1..a.len() {
        acc -= a[i] * b[i];
    }
    acc
}

/// A divisor class `coords / denom` with `denom` in `{1, 2}`.
///
/// The representation is normalized: a class whose numerators are all even
/// is stored with denominator 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    coords: Vec<i64>,
    denom: u8,
}

impl DivisorClass {
    /// An integral class.
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords, denom: 1 }
    }

    /// The class `numerators / 2`, reduced to denominator 1 when possible.
    pub fn from_halves(numerators: Vec<i64>) -> Self {
        if numerators.iter().all(|c| c % 2 == 0) {
            DivisorClass::new(numerators.into_iter().map(|c| c / 2).collect())
        } else {
            DivisorClass {
                coords: numerators,
                denom: 2,
            }
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass::new(vec![0; rank])
    }

    /// Numerators in the basis `(h, e_1, ...)`.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn denom(&self) -> u8 {
        self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom == 1
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Numerators over the common denominator 2.
    pub(crate) fn halves(&self) -> Vec<i64> {
        let f = if self.denom == 1 { 2 } else { 1 };
        self.coords.iter().map(|c| c * f).collect()
    }

    /// Integral coordinates, or `HalfIntegral` when the class has denominator 2.
    pub fn integral_coords(&self) -> Result<&[i64]> {
        if self.is_integral() {
            Ok(&self.coords)
        } else {
            Err(Error::HalfIntegral(self.to_string()))
        }
    }

    pub fn scale(&self, c: i64) -> DivisorClass {
        let num = self.coords.iter().map(|x| x * c).collect::<Vec<_>>();
        if self.denom == 1 {
            DivisorClass::new(num)
        } else {
            DivisorClass::from_halves(num)
        }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        if self.is_integral() && other.is_integral() {
            return DivisorClass::new(
                self.coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a + b)
                    .collect(),
            );
        }
        let a = self.halves();
        let b = other.halves();
        DivisorClass::from_halves(a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|c| -c).collect(),
            denom: self.denom,
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 2 {
            write!(f, "1/2")?;
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A root: a class `v` with `v.K = 0` and `v.v = -2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root(DivisorClass);

impl Root {
    pub fn class(&self) -> &DivisorClass {
        &self.0
    }

    pub fn into_class(self) -> DivisorClass {
        self.0
    }
}

/// Picard lattice of a degree-`d` del Pezzo surface.
#[derive(Debug)]
pub struct DelPezzoLattice {
    degree: u32,
    canonical: DivisorClass,
    roots: OnceLock<Vec<DivisorClass>>,
    pub(crate) lines: OnceLock<Vec<DivisorClass>>,
}

impl Clone for DelPezzoLattice {
    fn clone(&self) -> Self {
        DelPezzoLattice {
            degree: self.degree,
            canonical: self.canonical.clone(),
            roots: self.roots.clone(),
            lines: self.lines.clone(),
        }
    }
}

impl PartialEq for DelPezzoLattice {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
    }
}

impl Eq for DelPezzoLattice {}

pub const MIN_DEGREE: u32 = 1;
pub const MAX_DEGREE: u32 = 6;

impl DelPezzoLattice {
    pub fn new(degree: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::DegreeOutOfRange {
                degree,
                min: MIN_DEGREE,
                max: MAX_DEGREE,
            });
        }
        let rank = (10 - degree) as usize;
        let mut k = vec![1; rank];
        k[0] = -3;
        Ok(DelPezzoLattice {
            degree,
            canonical: DivisorClass::new(k),
            roots: OnceLock::new(),
            lines: OnceLock::new(),
        })
    }

    /// The anticanonical degree `d = K.K`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        10 - self.degree as usize
    }

    /// Number of blown-up points.
    pub fn points(&self) -> usize {
        self.rank() - 1
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn anticanonical(&self) -> DivisorClass {
        self.canonical.neg()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| match (i, j) {
                        (0, 0) => 1,
                        (i, j) if i == j => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    /// Pullback of a line in the plane.
    pub fn h(&self) -> DivisorClass {
        let mut c = vec![0; self.rank()];
        c[0] = 1;
        DivisorClass::new(c)
    }

    /// Exceptional class `e_i`, `1 <= i <= 9 - d`.
    pub fn e(&self, i: usize) -> DivisorClass {
        assert!(
            i >= 1 && i <= self.points(),
            "exceptional index {i} out of range"
        );
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        DivisorClass::new(c)
    }

    /// An integral class from coordinates, checking the rank.
    pub fn class(&self, coords: Vec<i64>) -> Result<DivisorClass> {
        self.check_len(coords.len())?;
        Ok(DivisorClass::new(coords))
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(Error::LatticeMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    /// Exact intersection number; half-integral when a denominator-2 class
    /// participates.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Ratio<i64>> {
        self.check_len(a.rank())?;
        self.check_len(b.rank())?;
        let num = form(a.coords(), b.coords());
        Ok(Ratio::new(num, a.denom() as i64 * b.denom() as i64))
    }

    /// Intersection number of two integral classes.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check_len(a.rank())?;
        self.check_len(b.rank())?;
        Ok(form(a.integral_coords()?, b.integral_coords()?))
    }

    /// The anticanonical degree `-a.K` of an integral class.
    pub fn anticanonical_degree(&self, a: &DivisorClass) -> Result<i64> {
        Ok(-self.dot(a, &self.canonical)?)
    }

    /// `g_a = 1 + (a.a + a.K) / 2`.
    pub fn arithmetic_genus(&self, a: &DivisorClass) -> Result<i64> {
        let sq = self.dot(a, a)?;
        let ak = self.dot(a, &self.canonical)?;
        debug_assert_eq!((sq + ak).rem_euclid(2), 0);
        Ok(1 + (sq + ak) / 2)
    }

    pub fn is_root(&self, v: &DivisorClass) -> bool {
        v.rank() == self.rank()
            && v.is_integral()
            && form(v.coords(), v.coords()) == -2
            && form(v.coords(), self.canonical.coords()) == 0
    }

    pub fn root(&self, v: DivisorClass) -> Result<Root> {
        self.check_len(v.rank())?;
        if self.is_root(&v) {
            Ok(Root(v))
        } else {
            Err(Error::NotARoot(v.to_string()))
        }
    }

    /// All roots, in lexicographic order of coordinates.
    pub fn roots(&self) -> &[DivisorClass] {
        self.roots.get_or_init(|| self.enumerate(0, -2))
    }

    /// Simple roots `e_1 - e_2, ..., e_{r-1} - e_r, h - e_1 - e_2 - e_3`.
    pub fn simple_roots(&self) -> Vec<DivisorClass> {
        let r = self.points();
        let mut out = Vec::with_capacity(r);
        for i in 1..r {
            out.push(self.e(i).sub(&self.e(i + 1)));
        }
        out.push(self.h().sub(&self.e(1)).sub(&self.e(2)).sub(&self.e(3)));
        out
    }

    /// Picard-Lefschetz reflection `s_e(v) = v + (e.v) e`.
    pub fn reflect(&self, e: &DivisorClass, v: &DivisorClass) -> Result<DivisorClass> {
        self.check_len(v.rank())?;
        if !self.is_root(e) {
            return Err(Error::NotARoot(e.to_string()));
        }
        Ok(reflect_raw(e, v))
    }

    /// Orbit of `v` under the Weyl group, sorted.
    pub fn weyl_orbit(&self, v: &DivisorClass) -> Result<Vec<DivisorClass>> {
        self.check_len(v.rank())?;
        let simple = self.simple_roots();
        let mut seen: HashSet<DivisorClass> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(u) = queue.pop_front() {
            for s in &simple {
                let w = reflect_raw(s, &u);
                if !seen.contains(&w) {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Orthogonal projection onto `e^perp`: `v + (1/2)(e.v) e`.
    pub fn project_perp(&self, e: &DivisorClass, v: &DivisorClass) -> Result<DivisorClass> {
        self.check_len(v.rank())?;
        if !self.is_root(e) {
            return Err(Error::NotARoot(e.to_string()));
        }
        // work over the denominator 4 when v is already half-integral
        let vh = v.halves();
        let ev2 = form(e.coords(), &vh); // 2 (e.v)
        if ev2 % 2 == 0 {
            let ev = ev2 / 2;
            let num: Vec<i64> = vh.iter().zip(e.coords()).map(|(a, b)| a + ev * b).collect();
            return Ok(DivisorClass::from_halves(num));
        }
        // 2(e.v) odd means v had denominator 2 and the result needs 4
        Err(Error::InvalidParameter(format!(
            "projection of {v} along {e} needs denominator 4"
        )))
    }

    /// All integral classes `a` with `a.K = k_pairing` and `a.a = norm`.
    ///
    /// `K^perp` is negative definite, so each such set is finite. The search
    /// bounds `h`-coordinate `a0` by Cauchy-Schwarz on the exceptional part:
    /// `(k + 3 a0)^2 <= r (a0^2 - norm)`, i.e.
    /// `d a0^2 + 6 k a0 + k^2 + r norm <= 0`.
    pub fn enumerate(&self, k_pairing: i64, norm: i64) -> Vec<DivisorClass> {
        let mut out = Vec::new();
        let (lo, hi) = match self.h_range(k_pairing, norm) {
            Some(r) => r,
            None => return out,
        };
        let r = self.points();
        let mut buf = vec![0i64; self.rank()];
        for a0 in lo..=hi {
            if !self.h_admissible(a0, k_pairing, norm) {
                continue;
            }
            let sum = -k_pairing - 3 * a0;
            let sq = a0 * a0 - norm;
            if sq < 0 {
                continue;
            }
            buf[0] = a0;
            fill(&mut buf, 1, r, sum, sq, &mut out);
        }
        out.sort();
        out
    }

    /// Range of `h`-coordinates that can satisfy the norm condition, padded
    /// by one on each side.
    pub(crate) fn h_range(&self, k: i64, norm: i64) -> Option<(i64, i64)> {
        let d = self.degree as i64;
        let r = self.points() as i64;
        let disc = 36 * k * k - 4 * d * (k * k + r * norm);
        if disc < 0 {
            return None;
        }
        let s = disc.sqrt() + 1;
        let lo = (-6 * k - s).div_euclid(2 * d) - 1;
        let hi = (-6 * k + s).div_euclid(2 * d) + 1;
        Some((lo, hi))
    }

    pub(crate) fn h_admissible(&self, a0: i64, k: i64, norm: i64) -> bool {
        let d = self.degree as i64;
        let r = self.points() as i64;
        d * a0 * a0 + 6 * k * a0 + k * k + r * norm <= 0
    }
}

fn reflect_raw(e: &DivisorClass, v: &DivisorClass) -> DivisorClass {
    let vh = v.halves();
    let ev2 = form(e.coords(), &vh);
    DivisorClass::from_halves(
        vh.iter()
            .zip(e.coords())
            .map(|(a, b)| a + ev2 * b)
            .collect(),
    )
}

/// Fill `buf[pos..pos+n]` with integers of sum `sum` and square-sum `sq`.
fn fill(buf: &mut [i64], pos: usize, n: usize, sum: i64, sq: i64, out: &mut Vec<DivisorClass>) {
    if n == 0 {
        if sum == 0 && sq == 0 {
            out.push(DivisorClass::new(buf.to_vec()));
        }
        return;
    }
    if sum * sum > n as i64 * sq || (sum - sq).rem_euclid(2) != 0 {
        return;
    }
    if n == 1 {
        if sum * sum == sq {
            buf[pos] = sum;
            out.push(DivisorClass::new(buf.to_vec()));
        }
        return;
    }
    let b = sq.sqrt();
    for a in -b..=b {
        let rs = sum - a;
        let rq = sq - a * a;
        if rs * rs > (n as i64 - 1) * rq {
            continue;
        }
        buf[pos] = a;
        fill(buf, pos + 1, n - 1, rs, rq, out);
    }
}
