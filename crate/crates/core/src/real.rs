//! Real structures: integral involutions modelling the action of complex
//! conjugation on the Picard lattice.
//!
//! Four presets are provided. `maximal` acts as `-1` on every basis class
//! (the blow-up of the real plane in real points). The auxiliary presets
//! `aux-d1`, `aux-d2`, `aux-d3` realize surfaces with a small anti-invariant
//! lattice `H_2^-`:
//!
//! * `aux-d1`: `H_2^-` spanned by `K` and the root `e = e_1 - e_2`;
//! * `aux-d2`: `H_2^-` spanned by `K`, three orthogonal roots
//!   `r_1 = h - e_1 - e_2 - e_7`, `r_2 = h - e_3 - e_4 - e_7`,
//!   `r_3 = h - e_5 - e_6 - e_7` and the line `e_7 = (-K - r_1 - r_2 - r_3)/2`;
//! * `aux-d3`: `H_2^-` spanned by the three coplanar lines `e_1`,
//!   `h - e_1 - e_2`, `2h - e_1 - e_3 - e_4 - e_5 - e_6`.
//!
//! Each auxiliary involution is `-1` on the listed span and `+1` on its
//! orthogonal complement.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{self, LayerSet};
use crate::error::{Error, Result};
use crate::lattice::{form, DelPezzoLattice, DivisorClass};
use crate::linalg::{self, IntMatrix};

/// Which construction produced a [`RealStructure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Maximal,
    AuxD1 { root: DivisorClass },
    AuxD2 { roots: [DivisorClass; 3] },
    AuxD3 { lines: [DivisorClass; 3] },
    Custom,
}

pub const PRESET_NAMES: [&str; 4] = ["maximal", "aux-d1", "aux-d2", "aux-d3"];

#[derive(Debug, Clone)]
pub struct RealStructure {
    lattice: DelPezzoLattice,
    conj: IntMatrix,
    name: String,
    preset: Preset,
    anti_basis: Vec<DivisorClass>,
}

impl RealStructure {
    /// Validates `conj` and computes a basis of `ker(1 + conj)`.
    pub fn from_matrix(lattice: DelPezzoLattice, conj: IntMatrix, name: &str) -> Result<Self> {
        let n = lattice.rank();
        if conj.len() != n || conj.iter().any(|r| r.len() != n) {
            return Err(Error::LatticeMismatch {
                expected: n,
                found: conj.len(),
            });
        }
        if linalg::mat_mul(&conj, &conj) != linalg::identity(n) {
            return Err(Error::NotAnInvolution);
        }
        let gram = lattice.gram();
        let pulled = linalg::mat_mul(&linalg::transpose(&conj), &linalg::mat_mul(&gram, &conj));
        if pulled != gram {
            return Err(Error::NotAnIsometry);
        }
        let k = lattice.canonical().coords().to_vec();
        let ck = linalg::mat_vec(&conj, &k);
        if ck.iter().zip(&k).any(|(a, b)| *a != -b) {
            return Err(Error::KNotAntiInvariant);
        }
        let mut one_plus = conj.clone();
        for (i, row) in one_plus.iter_mut().enumerate() {
            row[i] += 1;
        }
        let anti_basis = linalg::integer_kernel(&one_plus, n)
            .into_iter()
            .map(DivisorClass::new)
            .collect();
        Ok(RealStructure {
            lattice,
            conj,
            name: name.to_string(),
            preset: Preset::Custom,
            anti_basis,
        })
    }

    /// The involution acting as `-1` on the span of `generators` and as `+1`
    /// on its orthogonal complement.
    pub fn from_anti_invariant(
        lattice: DelPezzoLattice,
        generators: &[DivisorClass],
        name: &str,
    ) -> Result<Self> {
        let n = lattice.rank();
        let k = generators.len();
        let g: Vec<Vec<BigRational>> = generators
            .iter()
            .map(|a| {
                generators
                    .iter()
                    .map(|b| rat(form(a.coords(), b.coords())))
                    .collect()
            })
            .collect();
        let ginv = invert(&g).ok_or_else(|| {
            Error::InvalidParameter("anti-invariant generators span a degenerate sublattice".into())
        })?;
        // conj(x) = x - 2 sum_ij g_i (G^-1)_ij (g_j . x)
        let mut conj = vec![vec![0i64; n]; n];
        for col in 0..n {
            let mut x = vec![0i64; n];
            x[col] = 1;
            let pairings: Vec<BigRational> = generators
                .iter()
                .map(|gj| rat(form(gj.coords(), &x)))
                .collect();
            for row in 0..n {
                let mut acc = rat(x[row]);
                for i in 0..k {
                    let mut coef = BigRational::zero();
                    for j in 0..k {
                        coef += &ginv[i][j] * &pairings[j];
                    }
                    acc -= rat(2) * coef * rat(generators[i].coords()[row]);
                }
                if !acc.is_integer() {
                    return Err(Error::NonIntegralResult {
                        value: acc.to_string(),
                        context: "involution from anti-invariant generators".into(),
                    });
                }
                conj[row][col] = i64::try_from(acc.to_integer()).expect("small entry");
            }
        }
        RealStructure::from_matrix(lattice, conj, name)
    }

    /// One of the named presets on a lattice of the given degree.
    pub fn preset(name: &str, degree: u32) -> Result<Self> {
        let lattice = DelPezzoLattice::new(degree)?;
        let need = |d: u32| -> Result<()> {
            if degree != d {
                Err(Error::DegreeMismatch {
                    expected: d,
                    found: degree,
                })
            } else {
                Ok(())
            }
        };
        match name {
            "maximal" => {
                let n = lattice.rank();
                let conj = (0..n)
                    .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
                    .collect();
                let mut r = RealStructure::from_matrix(lattice, conj, name)?;
                r.preset = Preset::Maximal;
                Ok(r)
            }
            "aux-d1" => {
                need(1)?;
                let e = lattice.e(1).sub(&lattice.e(2));
                let k = lattice.canonical().clone();
                let mut r =
                    RealStructure::from_anti_invariant(lattice, &[k.clone(), e.clone()], name)?;
                r.adopt_basis(vec![k, e.clone()])?;
                r.preset = Preset::AuxD1 { root: e };
                Ok(r)
            }
            "aux-d2" => {
                need(2)?;
                let h = lattice.h();
                let e = |i| lattice.e(i);
                let r1 = h.sub(&e(1)).sub(&e(2)).sub(&e(7));
                let r2 = h.sub(&e(3)).sub(&e(4)).sub(&e(7));
                let r3 = h.sub(&e(5)).sub(&e(6)).sub(&e(7));
                let line = e(7);
                let k = lattice.canonical().clone();
                let mut r = RealStructure::from_anti_invariant(
                    lattice.clone(),
                    &[k, r1.clone(), r2.clone(), r3.clone()],
                    name,
                )?;
                r.adopt_basis(vec![line, r1.clone(), r2.clone(), r3.clone()])?;
                r.preset = Preset::AuxD2 {
                    roots: [r1, r2, r3],
                };
                Ok(r)
            }
            "aux-d3" => {
                need(3)?;
                let h = lattice.h();
                let e = |i| lattice.e(i);
                let l1 = e(1);
                let l2 = h.sub(&e(1)).sub(&e(2));
                let l3 = h
                    .scale(2)
                    .sub(&e(1))
                    .sub(&e(3))
                    .sub(&e(4))
                    .sub(&e(5))
                    .sub(&e(6));
                let lines = [l1, l2, l3];
                let mut r = RealStructure::from_anti_invariant(lattice, &lines, name)?;
                r.adopt_basis(lines.to_vec())?;
                r.preset = Preset::AuxD3 { lines };
                Ok(r)
            }
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// Replace the computed kernel basis by `basis` after checking that both
    /// span the same lattice.
    fn adopt_basis(&mut self, basis: Vec<DivisorClass>) -> Result<()> {
        let kernel: Vec<Vec<i64>> = self
            .anti_basis
            .iter()
            .map(|b| b.coords().to_vec())
            .collect();
        let nice: Vec<Vec<i64>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        if nice.len() != kernel.len() {
            return Err(Error::InvalidParameter("basis has the wrong rank".into()));
        }
        let mut transition = Vec::with_capacity(nice.len());
        for v in &nice {
            let c = linalg::integer_coordinates(&kernel, v).ok_or_else(|| {
                Error::VectorOutsideDomain(DivisorClass::new(v.clone()).to_string())
            })?;
            transition.push(c);
        }
        if linalg::int_determinant(&transition) != BigInt::one() {
            return Err(Error::InvalidParameter(
                "basis spans a proper sublattice of H_2^-".into(),
            ));
        }
        self.anti_basis = basis;
        Ok(())
    }

    pub fn lattice(&self) -> &DelPezzoLattice {
        &self.lattice
    }

    pub fn degree(&self) -> u32 {
        self.lattice.degree()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn preset_kind(&self) -> &Preset {
        &self.preset
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.conj
    }

    /// A basis of `H_2^- = ker(1 + conj)`.
    pub fn anti_basis(&self) -> &[DivisorClass] {
        &self.anti_basis
    }

    pub fn anti_rank(&self) -> usize {
        self.anti_basis.len()
    }

    /// Gram matrix of [`Self::anti_basis`].
    pub fn anti_gram(&self) -> IntMatrix {
        self.anti_basis
            .iter()
            .map(|a| {
                self.anti_basis
                    .iter()
                    .map(|b| form(a.coords(), b.coords()))
                    .collect()
            })
            .collect()
    }

    pub fn apply(&self, v: &DivisorClass) -> DivisorClass {
        let img = linalg::mat_vec(&self.conj, v.coords());
        if v.is_integral() {
            DivisorClass::new(img)
        } else {
            DivisorClass::from_halves(img)
        }
    }

    pub fn is_anti_invariant(&self, v: &DivisorClass) -> bool {
        self.apply(v) == v.neg()
    }

    /// Effective anti-invariant classes of anticanonical degree `m`.
    pub fn real_layer(&self, m: u32, rational_only: bool) -> Result<LayerSet> {
        let mut layer = curves::layer(&self.lattice, m, rational_only)?;
        layer.classes.retain(|a| self.is_anti_invariant(a));
        Ok(layer)
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for c in 0..2 * n {
            let t = &a[col][c] * &inv;
            a[col][c] = t;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Geiser involution on a degree-2 lattice: `v -> (v.K) K - v`.
pub fn geiser_action(lat: &DelPezzoLattice, v: &DivisorClass) -> Result<DivisorClass> {
    if lat.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: lat.degree(),
        });
    }
    Ok(deck_reflection(lat, v, 1))
}

/// Bertini involution on a degree-1 lattice: `v -> 2 (v.K) K - v`.
pub fn bertini_action(lat: &DelPezzoLattice, v: &DivisorClass) -> Result<DivisorClass> {
    if lat.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: lat.degree(),
        });
    }
    Ok(deck_reflection(lat, v, 2))
}

/// `v -> c (v.K) K - v`, where `c = 2 / K.K` makes it the reflection in the
/// line through `K`.
fn deck_reflection(lat: &DelPezzoLattice, v: &DivisorClass, c: i64) -> DivisorClass {
    let vh = v.halves();
    let k = lat.canonical().coords();
    let vk2 = form(&vh, k); // 2 (v.K)
    DivisorClass::from_halves(vh.iter().zip(k).map(|(x, kk)| c * vk2 * kk - x).collect())
}

/// A signed permutation of the three orthogonal roots of `aux-d2`:
/// the coefficient of `r_i` in the image is `signs[i]` times the coefficient
/// of `r_{perm[i]}` in the source. `K` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    /// `(self * other)(v) = self(other(v))`
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut perm = [0; 3];
        let mut signs = [0; 3];
        for i in 0..3 {
            let j = self.perm[i];
            perm[i] = other.perm[j];
            signs[i] = self.signs[i] * other.signs[j];
        }
        SignedPerm { perm, signs }
    }
}

/// The dihedral group of order 8 acting on `aux-d2` by signed permutations of
/// its three roots. It is generated by `(b1, b2, b3) -> (b2, -b1, -b3)` and
/// the swap `(b1, b2, b3) -> (b2, b1, b3)`, and preserves the two classes
/// of real lines distinguished by the product of their signs.
pub fn dihedral_group() -> Vec<SignedPerm> {
    let rot = SignedPerm {
        perm: [1, 0, 2],
        signs: [1, -1, -1],
    };
    let swap = SignedPerm {
        perm: [1, 0, 2],
        signs: [1, 1, 1],
    };
    let mut group: BTreeSet<SignedPerm> = BTreeSet::new();
    group.insert(SignedPerm::IDENTITY);
    loop {
        let before = group.len();
        let current: Vec<_> = group.iter().copied().collect();
        for g in &current {
            group.insert(g.compose(&rot));
            group.insert(g.compose(&swap));
        }
        if group.len() == before {
            break;
        }
    }
    group.into_iter().collect()
}

/// Apply a signed permutation of `aux-d2` to a class of `H_2^-`.
pub fn apply_signed_perm(
    r: &RealStructure,
    g: &SignedPerm,
    v: &DivisorClass,
) -> Result<DivisorClass> {
    let Preset::AuxD2 { roots } = r.preset_kind() else {
        return Err(Error::InvalidParameter(
            "signed permutations act on the aux-d2 preset only".into(),
        ));
    };
    let vh = v.halves();
    let k = r.lattice().canonical().coords();
    // v = a K + sum b_i r_i with 2a = v.K, 2b_i = -(v.r_i); in halves: 4a, 4b_i
    let a4 = form(&vh, k);
    let b4: Vec<i64> = roots.iter().map(|ri| -form(&vh, ri.coords())).collect();
    let recon: Vec<i64> = (0..vh.len())
        .map(|c| a4 * k[c] + (0..3).map(|i| b4[i] * roots[i].coords()[c]).sum::<i64>())
        .collect();
    if recon.iter().zip(&vh).any(|(x, y)| *x != 2 * y) {
        return Err(Error::VectorOutsideDomain(v.to_string()));
    }
    let img4: Vec<i64> = (0..vh.len())
        .map(|c| {
            a4 * k[c]
                + (0..3)
                    .map(|i| g.signs[i] * b4[g.perm[i]] * roots[i].coords()[c])
                    .sum::<i64>()
        })
        .collect();
    if img4.iter().any(|x| x % 2 != 0) {
        return Err(Error::NonIntegralResult {
            value: format!("{img4:?}/4"),
            context: "signed permutation image".into(),
        });
    }
    Ok(DivisorClass::from_halves(
        img4.iter().map(|x| x / 2).collect(),
    ))
}

/// The set `W_R = {w in K^perp ∩ H_2^- : w.w = -d(1+d), -K - w in d H_2^-}`
/// with the two sum identities checked.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WRealSet {
    pub elements: Vec<DivisorClass>,
    /// `sum_w w`
    pub sum: DivisorClass,
    /// `sum_H H` over real lines, i.e. `L^1_R` without `-K`
    pub line_sum: DivisorClass,
    pub sum_vanishes: bool,
    /// `d * sum_H H == -|W_R| K`
    pub line_sum_matches: bool,
}

pub fn wreal(r: &RealStructure) -> Result<WRealSet> {
    let lat = r.lattice();
    let d = lat.degree() as i64;
    let rank = lat.rank();
    let mk = lat.anticanonical();
    let mut elements = Vec::new();
    for w in lat.enumerate(0, -d * (1 + d)) {
        if !r.is_anti_invariant(&w) {
            continue;
        }
        let rest = mk.sub(&w);
        if rest.coords().iter().all(|c| c % d == 0) {
            elements.push(w);
        }
    }
    let sum = elements
        .iter()
        .fold(DivisorClass::zero(rank), |acc, w| acc.add(w));
    let real_lines: Vec<DivisorClass> = r
        .real_layer(1, true)?
        .classes
        .into_iter()
        .filter(|a| *a != mk)
        .collect();
    let line_sum = real_lines
        .iter()
        .fold(DivisorClass::zero(rank), |acc, h| acc.add(h));
    let line_sum_matches = line_sum.scale(d) == lat.canonical().scale(-(elements.len() as i64));
    Ok(WRealSet {
        sum_vanishes: sum.is_zero(),
        elements,
        sum,
        line_sum,
        line_sum_matches,
    })
}
