//! Fusion rings over non-closed base fields, with endomorphism division
//! algebra data and exact Frobenius-Perron dimensions.
//!
//! Over a non-closed base, a simple object contributes D^2 / dim(End) to
//! the category dimension, and the unit appears in X ⊗ X* with multiplicity
//! dim(End X). Both conventions are pinned by the reproducible figures of
//! the real Witt class construction.

use crate::algreal::AlgebraicReal;
use crate::groupcoh::FiniteGroup;
use crate::poly::{char_poly, q, Q};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("table shapes are inconsistent")]
    TableShape,
    #[error("end data missing for some basis element")]
    EndDataMissing,
    #[error("division algebra data inconsistent: dim {dim} != k {k} * n^2 {n}^2")]
    InconsistentDivisionData { dim: u64, k: u64, n: u64 },
    #[error("ring is flagged Galois-nontrivial; category dimension undefined here")]
    GaloisNontrivial,
}

/// Endomorphism division algebra of a simple object: dimension over the
/// base field, degree k of the center over the base, matrix degree n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndData {
    pub dim: u64,
    pub center_degree: u64,
    pub matrix_degree: u64,
}

impl EndData {
    pub fn split() -> Self {
        EndData {
            dim: 1,
            center_degree: 1,
            matrix_degree: 1,
        }
    }

    /// End = C over R.
    pub fn complex_over_real() -> Self {
        EndData {
            dim: 2,
            center_degree: 2,
            matrix_degree: 1,
        }
    }

    /// End = H over R.
    pub fn quaternion_over_real() -> Self {
        EndData {
            dim: 4,
            center_degree: 1,
            matrix_degree: 2,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.dim == self.center_degree * self.matrix_degree * self.matrix_degree
    }
}

/// First fusion-axiom violation found, with a short reason.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionViolation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FusionRing {
    basis_labels: Vec<String>,
    n_table: Vec<u64>,
    unit: usize,
    dual: Vec<usize>,
    end_data: Option<Vec<EndData>>,
    galois_nontrivial: bool,
}

impl FusionRing {
    pub fn new(
        basis_labels: Vec<String>,
        n_table: Vec<u64>,
        unit: usize,
        dual: Vec<usize>,
        end_data: Option<Vec<EndData>>,
    ) -> Result<Self, RingError> {
        let r = basis_labels.len();
        if n_table.len() != r * r * r || dual.len() != r || unit >= r {
            return Err(RingError::TableShape);
        }
        if let Some(ed) = &end_data {
            if ed.len() != r {
                return Err(RingError::TableShape);
            }
            for e in ed {
                if !e.is_consistent() {
                    return Err(RingError::InconsistentDivisionData {
                        dim: e.dim,
                        k: e.center_degree,
                        n: e.matrix_degree,
                    });
                }
            }
        }
        Ok(FusionRing {
            basis_labels,
            n_table,
            unit,
            dual,
            end_data,
            galois_nontrivial: false,
        })
    }

    pub fn set_galois_nontrivial(&mut self, flag: bool) {
        self.galois_nontrivial = flag;
    }

    /// Group ring of a finite group, fully split end data.
    pub fn group_ring(group: &FiniteGroup) -> Self {
        let r = group.order();
        let mut n_table = vec![0u64; r * r * r];
        for i in 0..r {
            for j in 0..r {
                n_table[(i * r + j) * r + group.mul(i, j)] = 1;
            }
        }
        FusionRing::new(
            (0..r).map(|g| format!("g{g}")).collect(),
            n_table,
            group.identity(),
            (0..r).map(|g| group.inv(g)).collect(),
            Some(vec![EndData::split(); r]),
        )
        .expect("group ring is a fusion ring")
    }

    /// The Fibonacci ring: basis {1, tau} with tau^2 = 1 + tau.
    pub fn fibonacci() -> Self {
        let mut n_table = vec![0u64; 8];
        let mut set = |i: usize, j: usize, k: usize, v: u64| n_table[(i * 2 + j) * 2 + k] = v;
        set(0, 0, 0, 1);
        set(0, 1, 1, 1);
        set(1, 0, 1, 1);
        set(1, 1, 0, 1);
        set(1, 1, 1, 1);
        FusionRing::new(
            vec!["1".into(), "tau".into()],
            n_table,
            0,
            vec![0, 1],
            Some(vec![EndData::split(); 2]),
        )
        .expect("fibonacci ring")
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.n_table[(i * r + j) * r + k]
    }

    pub fn end_data(&self) -> Option<&[EndData]> {
        self.end_data.as_deref()
    }

    pub fn end_dim(&self, i: usize) -> u64 {
        self.end_data.as_ref().map_or(1, |ed| ed[i].dim)
    }

    /// Verifies unit laws, associativity, and duality (the unit appears in
    /// i ⊗ dual(i) with multiplicity dim End(i), and nowhere else).
    pub fn check_axioms(&self) -> Option<FusionViolation> {
        let r = self.rank();
        let u = self.unit;
        for j in 0..r {
            for k in 0..r {
                let expect = u64::from(j == k);
                if self.n(u, j, k) != expect {
                    return Some(FusionViolation {
                        axiom: "left unit",
                        indices: vec![j, k],
                    });
                }
                if self.n(j, u, k) != expect {
                    return Some(FusionViolation {
                        axiom: "right unit",
                        indices: vec![j, k],
                    });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r).map(|m| self.n(i, j, m) * self.n(m, k, l)).sum();
                        let rhs: u64 = (0..r).map(|m| self.n(j, k, m) * self.n(i, m, l)).sum();
                        if lhs != rhs {
                            return Some(FusionViolation {
                                axiom: "associativity",
                                indices: vec![i, j, k, l],
                            });
                        }
                    }
                }
            }
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                return Some(FusionViolation {
                    axiom: "dual involution",
                    indices: vec![i],
                });
            }
            for j in 0..r {
                let expect = if j == self.dual[i] { self.end_dim(i) } else { 0 };
                if self.n(i, j, u) != expect {
                    return Some(FusionViolation {
                        axiom: "duality",
                        indices: vec![i, j],
                    });
                }
            }
        }
        None
    }

    /// Left-multiplication matrix of basis element i, acting on columns.
    fn left_mult_matrix(&self, i: usize) -> Vec<Vec<Q>> {
        let r = self.rank();
        (0..r)
            .map(|s| (0..r).map(|t| q(self.n(i, s, t) as i64)).collect())
            .collect()
    }

    /// Frobenius-Perron dimension of a basis element: the largest real
    /// eigenvalue of its left-multiplication matrix, certified by Sturm
    /// isolation of the characteristic polynomial.
    pub fn fpdim_object(&self, i: usize) -> AlgebraicReal {
        let cp = char_poly(&self.left_mult_matrix(i));
        AlgebraicReal::largest_root_of(&cp).expect("fusion matrix has a real eigenvalue")
    }

    /// FPdim of the category: Σ_X FPdim(X)^2 / dim(End X), exact.
    pub fn fpdim_category(&self) -> Result<AlgebraicReal, RingError> {
        if self.galois_nontrivial {
            return Err(RingError::GaloisNontrivial);
        }
        if self.end_data.is_none() {
            return Err(RingError::EndDataMissing);
        }
        let mut acc = AlgebraicReal::from_integer(0);
        for i in 0..self.rank() {
            let d = self.fpdim_object(i);
            acc = acc.add(&d.square().div_int(self.end_dim(i) as i64));
        }
        Ok(acc)
    }
}

/// Base-change splitting of one simple object: X over the closure breaks
/// into k pairwise distinct simples, each with multiplicity n and dimension
/// d = D/(nk).
pub fn base_change_split(
    end: &EndData,
    fpdim: &AlgebraicReal,
) -> Result<(u64, u64, AlgebraicReal), RingError> {
    if !end.is_consistent() {
        return Err(RingError::InconsistentDivisionData {
            dim: end.dim,
            k: end.center_degree,
            n: end.matrix_degree,
        });
    }
    let k = end.center_degree;
    let n = end.matrix_degree;
    let d = fpdim.div_int((n * k) as i64);
    Ok((k, n, d))
}

/// FPdim(center) = FPdim(ring)^2, exact.
pub fn fpdim_center_square_check(ring: &FusionRing, center: &FusionRing) -> Result<bool, RingError> {
    let a = ring.fpdim_category()?;
    let b = center.fpdim_category()?;
    Ok(b.eq_exact(&a.square()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q_ratio, QPoly};

    #[test]
    fn group_ring_axioms_and_dims() {
        let g = FiniteGroup::cyclic(2);
        let ring = FusionRing::group_ring(&g);
        assert!(ring.check_axioms().is_none());
        for i in 0..2 {
            assert!(ring.fpdim_object(i).eq_rational(&q(1)));
        }
        assert!(ring.fpdim_category().unwrap().eq_rational(&q(2)));
    }

    #[test]
    fn fibonacci_ring() {
        let fib = FusionRing::fibonacci();
        assert!(fib.check_axioms().is_none());
        let tau = fib.fpdim_object(1);
        // min poly x^2 - x - 1
        assert_eq!(tau.poly(), &QPoly::from_i64(&[-1, -1, 1]).monic());
        let golden = AlgebraicReal::largest_root_of(&QPoly::from_i64(&[-1, -1, 1])).unwrap();
        assert!(tau.eq_exact(&golden));
        // category dim 1 + tau^2 = (5+sqrt5)/2
        let total = fib.fpdim_category().unwrap();
        let sqrt5 = AlgebraicReal::largest_root_of(&QPoly::from_i64(&[-5, 0, 1])).unwrap();
        let expect = sqrt5.add(&AlgebraicReal::from_integer(5)).div_int(2);
        assert!(total.eq_exact(&expect));
    }

    #[test]
    fn fibonacci_broken_associativity() {
        let mut n_table = vec![0u64; 8];
        let mut set = |i: usize, j: usize, k: usize, v: u64| n_table[(i * 2 + j) * 2 + k] = v;
        set(0, 0, 0, 1);
        set(0, 1, 1, 1);
        set(1, 0, 1, 1);
        set(1, 1, 0, 1);
        set(1, 1, 1, 2); // corrupted
        let bad = FusionRing::new(
            vec!["1".into(), "tau".into()],
            n_table,
            0,
            vec![0, 1],
            None,
        )
        .unwrap();
        let v = bad.check_axioms().unwrap();
        assert_eq!(v.axiom, "associativity");
    }

    #[test]
    fn fpdim_multiplicative_on_rings() {
        for ring in [
            FusionRing::group_ring(&FiniteGroup::cyclic(3)),
            FusionRing::fibonacci(),
        ] {
            let r = ring.rank();
            let dims: Vec<AlgebraicReal> = (0..r).map(|i| ring.fpdim_object(i)).collect();
            for i in 0..r {
                for j in 0..r {
                    let lhs = dims[i].mul(&dims[j]);
                    let mut rhs = AlgebraicReal::from_integer(0);
                    for k in 0..r {
                        rhs = rhs.add(&dims[k].scale(&q(ring.n(i, j, k) as i64)));
                    }
                    assert!(lhs.eq_exact(&rhs), "multiplicativity at ({i},{j})");
                    // duals share dimension, and every dim >= 1
                    assert!(dims[i].eq_exact(&dims[ring.dual(i)]));
                    assert!(dims[i] >= AlgebraicReal::from_integer(1));
                }
            }
        }
    }

    #[test]
    fn base_change_splits() {
        let two = AlgebraicReal::from_integer(2);
        // End = R: (1,1,D)
        let (k, n, d) = base_change_split(&EndData::split(), &two).unwrap();
        assert_eq!((k, n), (1, 1));
        assert!(d.eq_rational(&q(2)));
        // End = C over R: (2,1), d = 1
        let (k, n, d) = base_change_split(&EndData::complex_over_real(), &two).unwrap();
        assert_eq!((k, n), (2, 1));
        assert!(d.eq_rational(&q(1)));
        // End = H over R: (1,2), d = 1
        let (k, n, d) = base_change_split(&EndData::quaternion_over_real(), &two).unwrap();
        assert_eq!((k, n), (1, 2));
        assert!(d.eq_rational(&q(1)));
        // inconsistent data is refused
        let bad = EndData {
            dim: 3,
            center_degree: 1,
            matrix_degree: 1,
        };
        assert!(base_change_split(&bad, &two).is_err());
        let _ = q_ratio(1, 2);
    }

    #[test]
    fn center_square_checks() {
        let z2 = FiniteGroup::cyclic(2);
        let ring = FusionRing::group_ring(&z2);
        let center_group = FiniteGroup::direct_product(&z2, &z2);
        let center_ring = FusionRing::group_ring(&center_group);
        assert!(fpdim_center_square_check(&ring, &center_ring).unwrap());
        let z3 = FiniteGroup::cyclic(3);
        let ring3 = FusionRing::group_ring(&z3);
        let center3 = FusionRing::group_ring(&FiniteGroup::direct_product(&z3, &z3));
        assert!(fpdim_center_square_check(&ring3, &center3).unwrap());
        // trivial ring vs itself
        let t = FusionRing::group_ring(&FiniteGroup::trivial());
        assert!(fpdim_center_square_check(&t, &t).unwrap());
        // 2 != 1^2
        assert!(!fpdim_center_square_check(&t, &ring).unwrap());
    }

    #[test]
    fn galois_nontrivial_refused() {
        let mut ring = FusionRing::group_ring(&FiniteGroup::cyclic(2));
        ring.set_galois_nontrivial(true);
        assert!(matches!(
            ring.fpdim_category(),
            Err(RingError::GaloisNontrivial)
        ));
    }
}
