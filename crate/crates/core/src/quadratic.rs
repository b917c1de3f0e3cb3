//! `Z/4`-valued quadratic refinements of the intersection form on `H_2^-`.
//!
//! A quadratic function is fixed by its values on a basis. On a general
//! vector `sum a_i v_i` it is
//!
//! ```text
//! q = sum_i [a_i q(v_i) + a_i (a_i - 1) v_i.v_i] + 2 sum_{i<j} a_i a_j v_i.v_j   (mod 4)
//! ```
//!
//! which is the unique extension satisfying `q(x + y) = q(x) + q(y) + 2 x.y`.
//! Basis values must satisfy `q(v) = v.v (mod 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{form, DelPezzoLattice, DivisorClass};
use crate::linalg;
use crate::real::{geiser_action, RealStructure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFunction {
    basis: Vec<DivisorClass>,
    gram: Vec<Vec<i64>>,
    values: Vec<u8>,
}

impl QuadraticFunction {
    pub fn new(basis: Vec<DivisorClass>, values: Vec<u8>) -> Result<Self> {
        if basis.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} basis vectors but {} values",
                basis.len(),
                values.len()
            )));
        }
        let raw: Vec<Vec<i64>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        for b in &basis {
            b.integral_coords()?;
        }
        // linear independence: each basis vector has a unique expansion
        for (i, b) in raw.iter().enumerate() {
            let rest: Vec<Vec<i64>> = raw
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if !rest.is_empty() && linalg::solve_in_basis(&rest, b).is_some() {
                return Err(Error::InvalidParameter(
                    "basis is linearly dependent".into(),
                ));
            }
        }
        let gram: Vec<Vec<i64>> = raw
            .iter()
            .map(|a| raw.iter().map(|b| form(a, b)).collect())
            .collect();
        let values: Vec<u8> = values.into_iter().map(|v| v % 4).collect();
        for i in 0..basis.len() {
            if (values[i] as i64 - gram[i][i]).rem_euclid(2) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "value {} on {} violates q(v) = v.v (mod 2)",
                    values[i], basis[i]
                )));
            }
        }
        Ok(QuadraticFunction {
            basis,
            gram,
            values,
        })
    }

    pub fn basis(&self) -> &[DivisorClass] {
        &self.basis
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Integer coordinates of `v` in the basis.
    pub fn coordinates(&self, v: &DivisorClass) -> Result<Vec<i64>> {
        let raw: Vec<Vec<i64>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let coords = v
            .integral_coords()
            .map_err(|_| Error::VectorOutsideDomain(v.to_string()))?;
        linalg::integer_coordinates(&raw, coords)
            .ok_or_else(|| Error::VectorOutsideDomain(v.to_string()))
    }

    pub fn eval(&self, v: &DivisorClass) -> Result<u8> {
        let a = self.coordinates(v)?;
        Ok(self.eval_coords(&a))
    }

    pub fn eval_coords(&self, a: &[i64]) -> u8 {
        let n = self.basis.len();
        let mut acc: i64 = 0;
        for i in 0..n {
            let ai = a[i].rem_euclid(4);
            acc += ai * self.values[i] as i64 + ai * (ai - 1) * self.gram[i][i].rem_euclid(4);
            for j in i + 1..n {
                acc += 2 * ai * a[j].rem_euclid(4) * self.gram[i][j].rem_euclid(4);
            }
        }
        acc.rem_euclid(4) as u8
    }

    /// The same function re-expressed on another basis of the same lattice.
    pub fn rebase(&self, basis: Vec<DivisorClass>) -> Result<QuadraticFunction> {
        let values = basis
            .iter()
            .map(|b| self.eval(b))
            .collect::<Result<Vec<_>>>()?;
        QuadraticFunction::new(basis, values)
    }
}

/// All parity-respecting quadratic functions on `H_2^-` of `r` meeting the
/// given `(vector, residue)` constraints, in lexicographic order of their
/// basis values.
///
/// An empty solution set is reported as `InconsistentConstraints` carrying a
/// minimal conflicting subset of constraint indices.
pub fn quad_solve(
    r: &RealStructure,
    constraints: &[(DivisorClass, u8)],
) -> Result<Vec<QuadraticFunction>> {
    let basis = r.anti_basis().to_vec();
    let raw: Vec<Vec<i64>> = basis.iter().map(|b| b.coords().to_vec()).collect();
    let mut coords = Vec::with_capacity(constraints.len());
    for (v, _) in constraints {
        let c = v
            .integral_coords()
            .ok()
            .and_then(|x| linalg::integer_coordinates(&raw, x))
            .ok_or_else(|| Error::VectorOutsideDomain(v.to_string()))?;
        coords.push(c);
    }
    let all = enumerate_functions(&basis)?;
    let solutions = filter(
        &all,
        constraints,
        &coords,
        &(0..constraints.len()).collect::<Vec<_>>(),
    );
    if !solutions.is_empty() {
        return Ok(solutions);
    }
    // shrink to a minimal inconsistent subset
    let mut active: Vec<usize> = (0..constraints.len()).collect();
    let mut i = 0;
    while i < active.len() {
        let mut trial = active.clone();
        trial.remove(i);
        if filter(&all, constraints, &coords, &trial).is_empty() {
            active = trial;
        } else {
            i += 1;
        }
    }
    Err(Error::InconsistentConstraints {
        conflicting: active,
    })
}

fn enumerate_functions(basis: &[DivisorClass]) -> Result<Vec<QuadraticFunction>> {
    let n = basis.len();
    let parity: Vec<u8> = basis
        .iter()
        .map(|b| form(b.coords(), b.coords()).rem_euclid(2) as u8)
        .collect();
    let mut out = Vec::with_capacity(1 << n);
    for bits in 0..(1u32 << n) {
        // most significant bit first so the order is lexicographic in values
        let values = (0..n)
            .map(|i| parity[i] + 2 * ((bits >> (n - 1 - i)) & 1) as u8)
            .collect();
        out.push(QuadraticFunction::new(basis.to_vec(), values)?);
    }
    Ok(out)
}

fn filter(
    all: &[QuadraticFunction],
    constraints: &[(DivisorClass, u8)],
    coords: &[Vec<i64>],
    active: &[usize],
) -> Vec<QuadraticFunction> {
    all.iter()
        .filter(|q| {
            active
                .iter()
                .all(|&i| q.eval_coords(&coords[i]) == constraints[i].1 % 4)
        })
        .cloned()
        .collect()
}

/// One row of a Geiser skew-symmetry check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewCheck {
    pub vector: DivisorClass,
    pub q: u8,
    pub q_geiser: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeiserSkewReport {
    pub holds: bool,
    pub checks: Vec<SkewCheck>,
}

/// Checks `q(gamma v) = -q(v)` on the basis and all pairwise sums. Both sides
/// are quadratic functions, so agreement on a basis already implies
/// agreement everywhere.
pub fn check_geiser_skew(lat: &DelPezzoLattice, q: &QuadraticFunction) -> Result<GeiserSkewReport> {
    let mut tests: Vec<DivisorClass> = q.basis().to_vec();
    for i in 0..q.basis().len() {
        for j in i + 1..q.basis().len() {
            tests.push(q.basis()[i].add(&q.basis()[j]));
        }
    }
    let mut checks = Vec::with_capacity(tests.len());
    let mut holds = true;
    for v in tests {
        let g = geiser_action(lat, &v)?;
        let qv = q.eval(&v)?;
        let qg = q.eval(&g)?;
        if (qg as i64 + qv as i64).rem_euclid(4) != 0 {
            holds = false;
        }
        checks.push(SkewCheck {
            vector: v,
            q: qv,
            q_geiser: qg,
        });
    }
    Ok(GeiserSkewReport { holds, checks })
}

/// `i^(q - m^2)` as a sign when `q = m^2 (mod 2)`; `None` if imaginary.
pub fn weight_sign(q: u8, m: i64) -> Option<i64> {
    let e = (q as i64 - m * m).rem_euclid(4);
    match e {
        0 => Some(1),
        2 => Some(-1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{Preset, RealStructure};

    #[test]
    fn eval_examples() {
        let r = RealStructure::preset("aux-d3", 3).unwrap();
        let q = QuadraticFunction::new(r.anti_basis().to_vec(), vec![1, 3, 1]).unwrap();
        let zero = DivisorClass::zero(7);
        assert_eq!(q.eval(&zero).unwrap(), 0);
        let Preset::AuxD3 { lines } = r.preset_kind() else {
            panic!()
        };
        let sum = lines[0].add(&lines[1]).add(&lines[2]);
        // q(L1) + q(L2) + q(L3) + 2 * 3 pairwise products of 1
        assert_eq!(q.eval(&sum).unwrap(), (1 + 3 + 1 + 2) % 4);
        for (i, l) in lines.iter().enumerate() {
            let qv = q.values()[i];
            let sq = form(l.coords(), l.coords());
            let two = l.scale(2);
            assert_eq!(
                q.eval(&two).unwrap() as i64,
                (2 * qv as i64 + 2 * sq).rem_euclid(4)
            );
        }
    }

    #[test]
    fn parity_is_enforced() {
        let r = RealStructure::preset("aux-d3", 3).unwrap();
        assert!(QuadraticFunction::new(r.anti_basis().to_vec(), vec![0, 1, 1]).is_err());
    }

    #[test]
    fn outside_domain() {
        let r = RealStructure::preset("aux-d3", 3).unwrap();
        let q = QuadraticFunction::new(r.anti_basis().to_vec(), vec![1, 1, 1]).unwrap();
        let lat = r.lattice();
        assert!(matches!(
            q.eval(&lat.e(2)),
            Err(Error::VectorOutsideDomain(_))
        ));
    }

    #[test]
    fn solve_aux_d1() {
        let r = RealStructure::preset("aux-d1", 1).unwrap();
        let lat = r.lattice();
        let e = lat.e(1).sub(&lat.e(2));
        let sols = quad_solve(&r, &[(e.clone(), 0)]).unwrap();
        assert_eq!(sols.len(), 2);
        assert_ne!(sols[0].values()[0], sols[1].values()[0]);
        assert!(sols.iter().all(|q| q.eval(&e).unwrap() == 0));
    }

    #[test]
    fn solve_counts() {
        for (name, d) in [("maximal", 3), ("aux-d1", 1), ("aux-d2", 2), ("aux-d3", 3)] {
            let r = RealStructure::preset(name, d).unwrap();
            let sols = quad_solve(&r, &[]).unwrap();
            assert_eq!(sols.len(), 1 << r.anti_rank(), "{name}");
        }
    }

    #[test]
    fn contradictory_constraints() {
        let r = RealStructure::preset("aux-d1", 1).unwrap();
        let lat = r.lattice();
        let e = lat.e(1).sub(&lat.e(2));
        let k = lat.canonical().clone();
        let err = quad_solve(&r, &[(k, 1), (e.clone(), 0), (e, 2)]).unwrap_err();
        assert_eq!(
            err,
            Error::InconsistentConstraints {
                conflicting: vec![1, 2]
            }
        );
    }

    #[test]
    fn geiser_skew_on_aux_d2() {
        let r = RealStructure::preset("aux-d2", 2).unwrap();
        let lat = r.lattice();
        let all = quad_solve(&r, &[]).unwrap();
        let mk = lat.anticanonical();
        for q in &all {
            let report = check_geiser_skew(lat, q).unwrap();
            // skew-symmetry is exactly the condition q(-K) = 0
            assert_eq!(report.holds, q.eval(&mk).unwrap() == 0, "{:?}", q.values());
            // q(-K) is always even
            assert_eq!(q.eval(&mk).unwrap() % 2, 0);
        }
        let skew = all
            .iter()
            .filter(|q| check_geiser_skew(lat, q).unwrap().holds)
            .count();
        assert_eq!(skew, all.len() / 2);
    }

    #[test]
    fn weights() {
        assert_eq!(weight_sign(1, 3), Some(1));
        assert_eq!(weight_sign(3, 3), Some(-1));
        assert_eq!(weight_sign(0, 2), Some(1));
        assert_eq!(weight_sign(1, 2), None);
    }
}
