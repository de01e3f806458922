//! Exact real algebraic numbers: a squarefree defining polynomial plus an
//! open isolating interval with rational endpoints. Sums and products go
//! through resultants; comparisons and zero tests are decided by interval
//! refinement against the exact polynomial, never by floating point.

use crate::poly::{lagrange_interpolate, q, q_ratio, QPoly, Q};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct AlgebraicReal {
    poly: QPoly,
    lo: Q,
    hi: Q,
}

impl AlgebraicReal {
    /// Invariant: poly squarefree, poly(lo) != 0 != poly(hi), exactly one
    /// real root in (lo, hi).
    fn make(poly: QPoly, lo: Q, hi: Q) -> Self {
        debug_assert!(!poly.eval(&lo).is_zero() && !poly.eval(&hi).is_zero());
        AlgebraicReal { poly, lo, hi }
    }

    pub fn from_rational(r: Q) -> Self {
        let poly = QPoly::new(vec![-r.clone(), Q::one()]);
        AlgebraicReal::make(poly, &r - q(1), &r + q(1))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    /// All real roots of `poly` in ascending order.
    pub fn roots_of(poly: &QPoly) -> Vec<AlgebraicReal> {
        let sf = poly.squarefree();
        sf.isolate_real_roots(&q_ratio(1, 1024))
            .into_iter()
            .map(|(lo, hi)| {
                // move to an open interval with nonvanishing endpoints
                let mut lo = lo;
                while sf.eval(&lo).is_zero() {
                    lo = &lo - q_ratio(1, 1 << 16);
                }
                AlgebraicReal::make(sf.clone(), lo, hi)
            })
            .collect()
    }

    /// The largest real root of `poly` (None when there is none).
    pub fn largest_root_of(poly: &QPoly) -> Option<AlgebraicReal> {
        Self::roots_of(poly).pop()
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn interval(&self) -> (Q, Q) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.poly.degree() == 1).then(|| -self.poly.coeff(0) / self.poly.coeff(1))
    }

    /// Shrinks the isolating interval below the given width.
    pub fn refine(&mut self, width: &Q) {
        if (&self.hi - &self.lo) < *width {
            return;
        }
        let chain = self.poly.sturm_chain();
        let (lo, hi) = self.poly.refine_root(&chain, &self.lo, &self.hi, width);
        // refine_root bisections keep endpoints off the squarefree roots
        self.lo = lo;
        self.hi = hi;
    }

    pub fn is_zero(&self) -> bool {
        self.poly.eval(&Q::zero()).is_zero() && self.lo.is_negative() && self.hi.is_positive()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut me = self.clone();
        let mut width = &me.hi - &me.lo;
        loop {
            if me.lo.is_positive() {
                return 1;
            }
            if me.hi.is_negative() || me.hi.is_zero() {
                return -1;
            }
            width = width / q(4);
            me.refine(&width);
        }
    }

    pub fn neg(&self) -> AlgebraicReal {
        let d = self.poly.degree();
        let flipped = QPoly::new(
            self.poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if (d - i) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        );
        AlgebraicReal::make(flipped, -self.hi.clone(), -self.lo.clone())
    }

    pub fn add(&self, other: &AlgebraicReal) -> AlgebraicReal {
        if let Some(r) = other.as_rational() {
            return self.shift(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.shift(&r);
        }
        // annihilator of a+b: Res_y(f(y), g(x - y)), by interpolation
        let n = self.poly.degree();
        let m = other.poly.degree();
        let target = n * m;
        let mut points = Vec::with_capacity(target + 1);
        for t in 0..=target as i64 {
            let tq = q(t);
            // g(t - y) as a polynomial in y
            let gty = other.poly.compose(&QPoly::new(vec![tq.clone(), q(-1)]));
            points.push((tq, self.poly.resultant(&gty)));
        }
        let ann = lagrange_interpolate(&points).squarefree();
        self.locate_combination(other, ann, |alo, ahi, blo, bhi| (alo + blo, ahi + bhi))
    }

    pub fn sub(&self, other: &AlgebraicReal) -> AlgebraicReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &AlgebraicReal) -> AlgebraicReal {
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        // annihilator of a*b: Res_y(f(y), y^m g(x/y)), by interpolation
        let n = self.poly.degree();
        let m = other.poly.degree();
        let target = n * m;
        let mut points = Vec::with_capacity(target + 1);
        for t in 0..=target as i64 {
            let tq = q(t);
            let mut coeffs = vec![Q::zero(); m + 1];
            let mut tpow = Q::one();
            for i in 0..=m {
                coeffs[m - i] = other.poly.coeff(i) * &tpow;
                tpow *= &tq;
            }
            let h = QPoly::new(coeffs);
            points.push((tq, self.poly.resultant(&h)));
        }
        let ann = lagrange_interpolate(&points).squarefree();
        self.locate_combination(other, ann, |alo, ahi, blo, bhi| {
            let cands = [alo * blo, alo * bhi, ahi * blo, ahi * bhi];
            let mut mn = cands[0].clone();
            let mut mx = cands[0].clone();
            for c in &cands[1..] {
                if *c < mn {
                    mn = c.clone();
                }
                if *c > mx {
                    mx = c.clone();
                }
            }
            (mn, mx)
        })
    }

    pub fn shift(&self, r: &Q) -> AlgebraicReal {
        if let Some(s) = self.as_rational() {
            return Self::from_rational(s + r);
        }
        let shifted = self.poly.compose(&QPoly::new(vec![-r.clone(), Q::one()]));
        AlgebraicReal::make(shifted, &self.lo + r, &self.hi + r)
    }

    pub fn scale(&self, r: &Q) -> AlgebraicReal {
        if r.is_zero() {
            return Self::from_rational(Q::zero());
        }
        if let Some(s) = self.as_rational() {
            return Self::from_rational(s * r);
        }
        // root of f(x/r)
        let d = self.poly.degree();
        let scaled = QPoly::new(
            self.poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * r.pow((d - i) as i32))
                .collect(),
        );
        let (a, b) = (&self.lo * r, &self.hi * r);
        let (lo, hi) = if r.is_positive() { (a, b) } else { (b, a) };
        AlgebraicReal::make(scaled, lo, hi)
    }

    pub fn div_int(&self, n: i64) -> AlgebraicReal {
        self.scale(&q_ratio(1, n))
    }

    pub fn square(&self) -> AlgebraicReal {
        self.mul(self)
    }

    /// Given the annihilator of the combination, refine both operands until
    /// the candidate interval isolates a single root with clean endpoints.
    fn locate_combination(
        &self,
        other: &AlgebraicReal,
        ann: QPoly,
        bound: impl Fn(&Q, &Q, &Q, &Q) -> (Q, Q),
    ) -> AlgebraicReal {
        let chain = ann.sturm_chain();
        let mut a = self.clone();
        let mut b = other.clone();
        let mut width = (&a.hi - &a.lo).max(&b.hi - &b.lo);
        loop {
            let (lo, hi) = bound(&a.lo, &a.hi, &b.lo, &b.hi);
            let clean = !ann.eval(&lo).is_zero() && !ann.eval(&hi).is_zero();
            if clean && QPoly::count_real_roots_between(&chain, &lo, &hi) == 1 {
                return AlgebraicReal::make(ann, lo, hi);
            }
            width = width / q(4);
            a.refine(&width);
            b.refine(&width);
        }
    }

    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        // cheap interval separation first
        if self.hi < other.lo {
            return Ordering::Less;
        }
        if other.hi < self.lo {
            return Ordering::Greater;
        }
        match self.sub(other).signum() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    pub fn eq_exact(&self, other: &AlgebraicReal) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }

    pub fn eq_rational(&self, r: &Q) -> bool {
        self.poly.eval(r).is_zero() && self.lo < *r && *r < self.hi
    }

    pub fn to_f64(&self) -> f64 {
        let mut me = self.clone();
        me.refine(&q_ratio(1, 1i64 << 40));
        ((&me.lo + &me.hi) / q(2)).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}
impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}
impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPoly;

    fn sqrt(n: i64) -> AlgebraicReal {
        AlgebraicReal::largest_root_of(&QPoly::from_i64(&[-n, 0, 1])).unwrap()
    }

    #[test]
    fn rational_roundtrip() {
        let a = AlgebraicReal::from_rational(q_ratio(3, 7));
        assert_eq!(a.as_rational(), Some(q_ratio(3, 7)));
        assert!(a.eq_rational(&q_ratio(3, 7)));
        assert!(!a.is_zero());
        assert_eq!(a.signum(), 1);
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt(2);
        assert!(s.square().eq_rational(&q(2)));
        let diff = s.square().sub(&AlgebraicReal::from_integer(2));
        assert!(diff.is_zero());
    }

    #[test]
    fn golden_ratio_identity() {
        // tau = (1+sqrt5)/2 satisfies tau^2 = tau + 1
        let tau = AlgebraicReal::largest_root_of(&QPoly::from_i64(&[-1, -1, 1])).unwrap();
        let lhs = tau.square();
        let rhs = tau.add(&AlgebraicReal::from_integer(1));
        assert!(lhs.eq_exact(&rhs));
        // and tau = (1 + sqrt 5)/2 built independently
        let other = sqrt(5).add(&AlgebraicReal::from_integer(1)).div_int(2);
        assert!(tau.eq_exact(&other));
        assert!((tau.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn sums_and_products_mix() {
        // sqrt2 * sqrt3 = sqrt6
        let prod = sqrt(2).mul(&sqrt(3));
        assert!(prod.eq_exact(&sqrt(6)));
        // sqrt2 + sqrt3 is a root of x^4 - 10x^2 + 1
        let s = sqrt(2).add(&sqrt(3));
        let expect = QPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert!(expect.eval(&Q::zero()).is_positive());
        let val_poly = s.poly();
        // the defining polynomial divides the known minimal polynomial or
        // vice versa; equality of the numbers is what matters
        let root = AlgebraicReal::largest_root_of(&expect).unwrap();
        assert!(s.eq_exact(&root));
        let _ = val_poly;
    }

    #[test]
    fn ordering() {
        assert!(sqrt(2) < sqrt(3));
        assert!(sqrt(2).neg() < AlgebraicReal::from_integer(0));
        let one = AlgebraicReal::from_integer(1);
        assert!(sqrt(2) > one);
        assert_eq!(sqrt(2).cmp_exact(&sqrt(2)), Ordering::Equal);
    }

    #[test]
    fn roots_enumeration() {
        let f = QPoly::from_i64(&[-2, 0, 1]).mul(&QPoly::from_i64(&[-3, 0, 1]));
        let roots = AlgebraicReal::roots_of(&f);
        assert_eq!(roots.len(), 4);
        assert!(roots[3].eq_exact(&sqrt(3)));
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
    }
}
