//! Dense univariate polynomials over the rationals.
//!
//! Everything downstream (minimal polynomials, characteristic polynomials,
//! Sturm chains, resultants) funnels through this module. Coefficients are
//! exact `BigRational`s; no floating point enters any decision here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Z = BigInt;
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Polynomial with coefficients in ascending degree order. The zero
/// polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Q::zero(), Q::one()])
    }

    /// Monomial c·x^k.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        QPoly::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with deg(0) = 0 by convention. Use `is_zero` to disambiguate.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lead = self.leading();
        QPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading();
        let ddeg = divisor.degree();
        if rem.len() < divisor.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - ddeg];
        while rem.len() >= divisor.coeffs.len() && !rem.iter().all(|c| c.is_zero()) {
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() < divisor.coeffs.len() {
                break;
            }
            let shift = rem.len() - divisor.coeffs.len();
            let factor = rem.last().unwrap() / &dlead;
            quot[shift] = factor.clone();
            for (k, d) in divisor.coeffs.iter().enumerate() {
                let t = d * &factor;
                rem[shift + k] -= t;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    /// Squarefree part f / gcd(f, f').
    pub fn squarefree(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in any commutative ring supplied through closures.
    pub fn eval_with<T: Clone>(
        &self,
        zero: T,
        from_q: impl Fn(&Q) -> T,
        add: impl Fn(&T, &T) -> T,
        mul_x: impl Fn(&T) -> T,
    ) -> T {
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            acc = add(&mul_x(&acc), &from_q(c));
        }
        acc
    }

    /// Interval evaluation: given x in [lo, hi], returns [min, max] bounds on f(x).
    pub fn eval_interval(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let mut acc_lo = Q::zero();
        let mut acc_hi = Q::zero();
        for c in self.coeffs.iter().rev() {
            // multiply interval [acc_lo, acc_hi] by [lo, hi]
            let cands = [
                &acc_lo * lo,
                &acc_lo * hi,
                &acc_hi * lo,
                &acc_hi * hi,
            ];
            let mut mn = cands[0].clone();
            let mut mx = cands[0].clone();
            for cand in &cands[1..] {
                if *cand < mn {
                    mn = cand.clone();
                }
                if *cand > mx {
                    mx = cand.clone();
                }
            }
            acc_lo = mn + c;
            acc_hi = mx + c;
        }
        (acc_lo, acc_hi)
    }

    /// Composition f(g(x)).
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    pub fn pow(&self, mut e: usize) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Clears denominators and content; sign of the leading coefficient is
    /// made positive. Useful for resultant work and display.
    pub fn primitive_integer(&self) -> Vec<Z> {
        if self.is_zero() {
            return vec![];
        }
        let mut denom = Z::one();
        for c in &self.coeffs {
            denom = num_integer::lcm(denom, c.denom().clone());
        }
        let ints: Vec<Z> = self.coeffs.iter().map(|c| c.numer() * &denom / c.denom()).collect();
        let mut g = Z::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if g.is_zero() {
            return ints;
        }
        let mut out: Vec<Z> = ints.iter().map(|v| v / &g).collect();
        if out.last().unwrap().is_negative() {
            for v in &mut out {
                *v = -(v.clone());
            }
        }
        out
    }

    /// Cauchy bound: every complex root z of f satisfies |z| <= bound.
    pub fn root_bound(&self) -> Q {
        assert!(!self.is_zero());
        let lead = self.leading().abs();
        let mut m = Q::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lead;
            if r > m {
                m = r;
            }
        }
        m + Q::one()
    }

    /// Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let f = self.squarefree();
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_real_roots_between(chain: &[QPoly], lo: &Q, hi: &Q) -> i64 {
        let sv = |x: &Q| -> i64 {
            let mut count = 0;
            let mut last: Option<bool> = None;
            for p in chain {
                let v = p.eval(x);
                if v.is_zero() {
                    continue;
                }
                let sign = v.is_positive();
                if let Some(prev) = last {
                    if prev != sign {
                        count += 1;
                    }
                }
                last = Some(sign);
            }
            count
        };
        sv(lo) - sv(hi)
    }

    pub fn count_real_roots(&self) -> i64 {
        if self.is_zero() || self.degree() == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let b = self.root_bound();
        QPoly::count_real_roots_between(&chain, &(-b.clone()), &b)
    }

    /// Isolating intervals (lo, hi] for every distinct real root, left to right.
    /// Intervals are refined until their width is below `width`.
    pub fn isolate_real_roots(&self, width: &Q) -> Vec<(Q, Q)> {
        if self.is_zero() || self.degree() == 0 {
            return vec![];
        }
        let chain = self.sturm_chain();
        let b = self.root_bound();
        let mut stack = vec![(-b.clone(), b.clone())];
        let mut found: Vec<(Q, Q)> = vec![];
        while let Some((lo, hi)) = stack.pop() {
            let n = QPoly::count_real_roots_between(&chain, &lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && (&hi - &lo) < *width {
                found.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / q(2);
            // keep the isolation invariant: mid must not be a root of the
            // squarefree part, else nudge it
            let mut mid = mid;
            if chain[0].eval(&mid).is_zero() {
                mid = (&lo + &mid) / q(2);
                while chain[0].eval(&mid).is_zero() {
                    mid = (&lo + &mid) / q(2);
                }
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found
    }

    /// Refines an isolating interval (lo, hi] of `self` by bisection until
    /// width < `width`. The interval must contain exactly one root.
    pub fn refine_root(&self, chain: &[QPoly], lo: &Q, hi: &Q, width: &Q) -> (Q, Q) {
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        while (&hi - &lo) >= *width {
            let mut mid = (&lo + &hi) / q(2);
            while chain[0].eval(&mid).is_zero() {
                mid = (&lo + &mid) / q(2);
            }
            if QPoly::count_real_roots_between(chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Resultant of two rational polynomials via the Sylvester matrix.
    pub fn resultant(&self, other: &QPoly) -> Q {
        if self.is_zero() || other.is_zero() {
            return Q::zero();
        }
        let m = self.degree();
        let n = other.degree();
        if m == 0 {
            return self.leading().pow(n as i32).clone();
        }
        if n == 0 {
            return other.leading().pow(m as i32).clone();
        }
        let size = m + n;
        let mut mat = vec![vec![Q::zero(); size]; size];
        for i in 0..n {
            for (k, c) in self.coeffs.iter().enumerate() {
                mat[i][i + m - k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in other.coeffs.iter().enumerate() {
                mat[n + i][i + n - k] = c.clone();
            }
        }
        det_q(mat)
    }
}

/// Determinant over the rationals by fraction-free-ish Gaussian elimination.
pub fn det_q(mut mat: Vec<Vec<Q>>) -> Q {
    let n = mat.len();
    let mut det = Q::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else {
            return Q::zero();
        };
        if p != col {
            mat.swap(p, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            for c in col..n {
                let t = &mat[col][c] * &factor;
                mat[r][c] -= t;
            }
        }
    }
    det
}

/// Unique polynomial of degree < points.len() through the given points.
pub fn lagrange_interpolate(points: &[(Q, Q)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            basis = basis.mul(&QPoly::new(vec![-xj / &denom, Q::one() / &denom]));
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Characteristic polynomial det(xI - A) of a square rational matrix, by
/// evaluation at degree+1 sample points and interpolation.
pub fn char_poly(a: &[Vec<Q>]) -> QPoly {
    let n = a.len();
    let mut points = Vec::with_capacity(n + 1);
    for t in 0..=n as i64 {
        let tq = q(t);
        let m: Vec<Vec<Q>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            &tq - &a[r][c]
                        } else {
                            -a[r][c].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        points.push((tq, det_q(m)));
    }
    lagrange_interpolate(&points)
}

/// n-th cyclotomic polynomial, computed by dividing x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_poly(n: u64) -> QPoly {
    assert!(n >= 1);
    let mut num = QPoly::monomial(Q::one(), n as usize).sub(&QPoly::one());
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            let (quot, rem) = num.div_rem(&phi_d);
            debug_assert!(rem.is_zero());
            num = quot;
        }
    }
    num
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), QPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(8), QPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(3), QPoly::from_i64(&[1, 1, 1]));
        // degree phi(n) for a spread of n
        for n in 1..=24u64 {
            assert_eq!(cyclotomic_poly(n).degree() as u64, euler_phi(n), "n={n}");
        }
    }

    #[test]
    fn division_and_gcd() {
        let f = QPoly::from_i64(&[-2, 0, 0, 1]); // x^3 - 2
        let g = QPoly::from_i64(&[1, 1]); // x + 1
        let (quot, rem) = f.div_rem(&g);
        assert_eq!(quot.mul(&g).add(&rem), f);
        let h = f.mul(&g);
        assert_eq!(h.gcd(&g), g.monic());
    }

    #[test]
    fn sturm_counts() {
        // x^3 - 2: exactly one real root
        let f = QPoly::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(f.count_real_roots(), 1);
        // x^2 + 1: none
        assert_eq!(QPoly::from_i64(&[1, 0, 1]).count_real_roots(), 0);
        // x^2 - 2: two
        assert_eq!(QPoly::from_i64(&[-2, 0, 1]).count_real_roots(), 2);
        // (x-1)^2 (x+3): distinct real roots of the squarefree part
        let f = QPoly::from_i64(&[-1, 1]).pow(2).mul(&QPoly::from_i64(&[3, 1]));
        assert_eq!(f.count_real_roots(), 2);
    }

    #[test]
    fn isolate_cbrt2() {
        let f = QPoly::from_i64(&[-2, 0, 0, 1]);
        let roots = f.isolate_real_roots(&q_ratio(1, 1000));
        assert_eq!(roots.len(), 1);
        let (lo, hi) = &roots[0];
        // 1.2599... lands in the interval
        assert!(lo < &q_ratio(126, 100) && &q_ratio(1259, 1000) < hi || lo < &q_ratio(1260, 1000));
        assert!(f.eval(lo) * f.eval(hi) < Q::zero());
    }

    #[test]
    fn resultant_known() {
        // res(x^2 - 2, x^2 - 3) = product of (r_i - s_j) pairs = (2-3)^2 ... = 1
        let f = QPoly::from_i64(&[-2, 0, 1]);
        let g = QPoly::from_i64(&[-3, 0, 1]);
        assert_eq!(f.resultant(&g), q(1));
        // res(x - a, g) = g(a)
        let lin = QPoly::from_i64(&[-5, 1]);
        assert_eq!(lin.resultant(&g), g.eval(&q(5)));
    }

    #[test]
    fn interval_eval_contains_value() {
        let f = QPoly::from_i64(&[1, -3, 0, 2]);
        let (lo, hi) = (q_ratio(1, 2), q_ratio(3, 4));
        let (blo, bhi) = f.eval_interval(&lo, &hi);
        for t in [lo.clone(), hi.clone(), (lo + hi) / q(2)] {
            let v = f.eval(&t);
            assert!(blo <= v && v <= bhi);
        }
    }
}
