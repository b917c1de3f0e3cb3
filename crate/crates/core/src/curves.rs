//! Lines, effectivity and anticanonical layers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{form, DelPezzoLattice, DivisorClass};

/// All classes `a` with `a.a = a.K = -1`, sorted.
pub fn lines(lat: &DelPezzoLattice) -> &[DivisorClass] {
    lat.lines.get_or_init(|| lat.enumerate(-1, -1))
}

fn require_low_degree(lat: &DelPezzoLattice) -> Result<()> {
    if lat.degree() > 3 {
        return Err(Error::DegreeOutOfRange {
            degree: lat.degree(),
            min: 1,
            max: 3,
        });
    }
    Ok(())
}

/// Generators of the effective cone for `d <= 3`: the lines, plus `-K` when
/// `d = 1`.
pub fn effective_generators(lat: &DelPezzoLattice) -> Result<Vec<DivisorClass>> {
    require_low_degree(lat)?;
    let mut gens = lines(lat).to_vec();
    if lat.degree() == 1 {
        gens.push(lat.anticanonical());
    }
    Ok(gens)
}

/// Exact membership test for the semigroup spanned by the effective
/// generators.
///
/// Every generator has anticanonical degree 1, so a class of degree `m` is
/// effective iff it is a sum of exactly `m` generators. Distinct generators
/// meet non-negatively, hence a line `L` with `a.L < 0` must occur in any
/// decomposition of `a`; such lines are peeled off without branching. The
/// remaining classes are searched over all generators with memoization.
pub struct EffectiveCone<'a> {
    lat: &'a DelPezzoLattice,
    gens: Vec<DivisorClass>,
    line_count: usize,
    memo: HashMap<Vec<i64>, bool>,
}

impl<'a> EffectiveCone<'a> {
    pub fn new(lat: &'a DelPezzoLattice) -> Result<Self> {
        let gens = effective_generators(lat)?;
        let line_count = lines(lat).len();
        Ok(EffectiveCone {
            lat,
            gens,
            line_count,
            memo: HashMap::new(),
        })
    }

    pub fn generators(&self) -> &[DivisorClass] {
        &self.gens
    }

    pub fn contains(&mut self, a: &DivisorClass) -> Result<bool> {
        let coords = a.integral_coords()?;
        if coords.len() != self.lat.rank() {
            return Err(Error::LatticeMismatch {
                expected: self.lat.rank(),
                found: coords.len(),
            });
        }
        Ok(self.search(coords.to_vec()))
    }

    fn search(&mut self, a: Vec<i64>) -> bool {
        let m = -form(&a, self.lat.canonical().coords());
        if m < 0 {
            return false;
        }
        if m == 0 {
            return a.iter().all(|&c| c == 0);
        }
        let sq = form(&a, &a);
        // a = sum of m generators with pairwise products >= 0 and squares >= -1
        if sq < -m * m {
            return false;
        }
        if let Some(&hit) = self.memo.get(&a) {
            return hit;
        }
        let forced = self.gens[..self.line_count]
            .iter()
            .position(|g| form(&a, g.coords()) < 0);
        let found = match forced {
            Some(i) => {
                let rest = sub(&a, self.gens[i].coords());
                self.search(rest)
            }
            None => {
                if self.gens.iter().any(|g| g.coords() == a.as_slice()) {
                    true
                } else {
                    let mut hit = false;
                    for i in 0..self.gens.len() {
                        let rest = sub(&a, self.gens[i].coords());
                        if self.search(rest) {
                            hit = true;
                            break;
                        }
                    }
                    hit
                }
            }
        };
        self.memo.insert(a, found);
        found
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_effective(lat: &DelPezzoLattice, a: &DivisorClass) -> Result<bool> {
    EffectiveCone::new(lat)?.contains(a)
}

/// Effective classes of a fixed anticanonical degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSet {
    pub degree: u32,
    pub m: u32,
    pub rational_only: bool,
    pub classes: Vec<DivisorClass>,
}

impl LayerSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, a: &DivisorClass) -> bool {
        self.classes.binary_search(a).is_ok()
    }
}

/// The layer `{a effective : -a.K = m}`.
///
/// With `rational_only` the layer is restricted to classes with `g_a >= 0`
/// and `a.a >= -1`, the classes that can carry irreducible rational curves.
pub fn layer(lat: &DelPezzoLattice, m: u32, rational_only: bool) -> Result<LayerSet> {
    require_low_degree(lat)?;
    if m == 0 {
        return Err(Error::InvalidParameter(
            "layer degree m must be >= 1".into(),
        ));
    }
    let mi = m as i64;
    let d = lat.degree() as i64;
    // Hodge index: a.a * d <= (a.K)^2
    let max_sq = (mi * mi).div_euclid(d);
    let min_sq = if rational_only {
        // g_a >= 0 means a.a >= m - 2
        (mi - 2).max(-1)
    } else {
        -mi * mi
    };
    let mut cone = EffectiveCone::new(lat)?;
    let mut classes = Vec::new();
    for sq in min_sq..=max_sq {
        if (sq - mi).rem_euclid(2) != 0 {
            continue;
        }
        for a in lat.enumerate(-mi, sq) {
            if cone.contains(&a)? {
                classes.push(a);
            }
        }
    }
    classes.sort();
    Ok(LayerSet {
        degree: lat.degree(),
        m,
        rational_only,
        classes,
    })
}

/// Number of unordered pairs of disjoint lines on a cubic surface.
pub fn disjoint_line_pairs(lat: &DelPezzoLattice) -> Result<usize> {
    if lat.degree() != 3 {
        return Err(Error::DegreeOutOfRange {
            degree: lat.degree(),
            min: 3,
            max: 3,
        });
    }
    let ls = lines(lat);
    let mut count = 0;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            if form(ls[i].coords(), ls[j].coords()) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(d: u32) -> DelPezzoLattice {
        DelPezzoLattice::new(d).unwrap()
    }

    #[test]
    fn line_counts() {
        assert_eq!(lines(&l(3)).len(), 27);
        assert_eq!(lines(&l(2)).len(), 56);
        assert_eq!(lines(&l(1)).len(), 240);
    }

    #[test]
    fn lines_have_genus_zero() {
        for d in 1..=6 {
            let lat = l(d);
            for line in lines(&lat) {
                assert_eq!(lat.arithmetic_genus(line).unwrap(), 0);
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(effective_generators(&l(3)).unwrap().len(), 27);
        assert_eq!(effective_generators(&l(2)).unwrap().len(), 56);
        let g1 = effective_generators(&l(1)).unwrap();
        assert_eq!(g1.len(), 241);
        assert!(g1.contains(&l(1).anticanonical()));
        assert!(effective_generators(&l(4)).is_err());
    }

    #[test]
    fn effectivity_examples() {
        let lat = l(3);
        assert!(is_effective(&lat, &lat.anticanonical()).unwrap());
        let bad = lat.h().sub(&lat.e(1).scale(2));
        assert!(!is_effective(&lat, &bad).unwrap());
        for line in lines(&lat) {
            assert!(is_effective(&lat, line).unwrap());
        }
        assert!(!is_effective(&lat, &lat.e(1).neg()).unwrap());
        assert!(is_effective(&lat, &DivisorClass::zero(7)).unwrap());
    }

    #[test]
    fn each_line_misses_sixteen() {
        let lat = l(3);
        let ls = lines(&lat);
        for a in ls {
            let n = ls
                .iter()
                .filter(|b| form(a.coords(), b.coords()) == 0)
                .count();
            assert_eq!(n, 16);
        }
        assert_eq!(disjoint_line_pairs(&lat).unwrap(), 216);
        assert!(disjoint_line_pairs(&l(2)).is_err());
    }

    #[test]
    fn small_layers_cubic() {
        let lat = l(3);
        assert_eq!(layer(&lat, 1, true).unwrap().len(), 27);
        assert_eq!(layer(&lat, 2, true).unwrap().len(), 27);
        let l3 = layer(&lat, 3, true).unwrap();
        assert_eq!(l3.len(), 73);
        assert!(l3.contains(&lat.anticanonical()));
        // unfiltered layer 2: 27 conics, 216 disjoint pairs, 27 doubled lines
        assert_eq!(layer(&lat, 2, false).unwrap().len(), 27 + 216 + 27);
    }

    #[test]
    fn residual_conics() {
        let lat = l(3);
        let l2 = layer(&lat, 2, true).unwrap();
        let mut image: Vec<_> = lines(&lat)
            .iter()
            .map(|line| lat.anticanonical().sub(line))
            .collect();
        image.sort();
        assert_eq!(image, l2.classes);
    }

    #[test]
    fn rational_quartics() {
        let lat = l(3);
        let l4 = layer(&lat, 4, true).unwrap();
        let two_mk = lat.anticanonical().scale(2);
        let ls = lines(&lat);
        let mut quartics = Vec::new();
        for i in 0..ls.len() {
            for j in i + 1..ls.len() {
                if form(ls[i].coords(), ls[j].coords()) == 0 {
                    quartics.push(two_mk.sub(&ls[i]).sub(&ls[j]));
                }
            }
        }
        quartics.sort();
        quartics.dedup();
        assert_eq!(quartics.len(), 216);
        let genus_zero: Vec<_> = l4
            .classes
            .iter()
            .filter(|a| lat.arithmetic_genus(a).unwrap() == 0)
            .cloned()
            .collect();
        assert_eq!(genus_zero, quartics);
        // the rest are the genus-one classes -K + L
        assert_eq!(l4.len(), 216 + 27);
    }

    #[test]
    fn layers_are_weyl_stable() {
        let lat = l(3);
        for m in 1..=3 {
            let layer = layer(&lat, m, true).unwrap();
            for s in lat.simple_roots() {
                for a in &layer.classes {
                    assert!(layer.contains(&lat.reflect(&s, a).unwrap()));
                }
            }
        }
    }
}
