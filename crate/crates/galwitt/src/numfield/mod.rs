//! Exact arithmetic in number fields presented as ℚ[x]/(f).
//!
//! A field carries its monic minimal polynomial, verified irreducible at
//! construction. Elements are coordinate vectors in the power basis
//! 1, θ, ..., θ^{d-1}, always fully reduced. Automorphisms store the image
//! of θ and are verified to be roots of the minimal polynomial.

mod embed;

pub use embed::{EmbeddingApprox, SignCertificate, SqrtOutcome};

use crate::poly::{cyclotomic_poly, euler_phi, q, QPoly, Q, Z};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    #[error("minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("minimal polynomial is reducible over Q: {0}")]
    Reducible(String),
    #[error("no irreducibility certificate found among the first 100 primes")]
    NoCertificate,
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("candidate image is not a root of the minimal polynomial")]
    NotARoot,
    #[error("root reconstruction inconclusive at height bound {0}")]
    ReconstructionInconclusive(u64),
}

#[derive(Debug)]
struct FieldInner {
    min_poly: QPoly,
    degree: usize,
    label: String,
    cyclotomic_order: Option<u64>,
    /// θ^k for k in d..=2d-2, reduced to the power basis.
    high_powers: Vec<Vec<Q>>,
}

/// A number field ℚ[x]/(f). Cheap to clone; equality compares presentations.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.inner.label)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.min_poly == other.inner.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Builds a field from a monic minimal polynomial, verifying
    /// irreducibility: rational-root search for degree <= 3, a mod-p
    /// certificate over the first 100 primes otherwise.
    pub fn new(min_poly: QPoly, label: impl Into<String>) -> Result<NumberField, NumFieldError> {
        if min_poly.is_zero() || min_poly.degree() < 1 || !min_poly.is_monic() {
            return Err(NumFieldError::NotMonic);
        }
        check_irreducible(&min_poly)?;
        Ok(Self::new_unchecked(min_poly, label, None))
    }

    fn new_unchecked(
        min_poly: QPoly,
        label: impl Into<String>,
        cyclotomic_order: Option<u64>,
    ) -> NumberField {
        let degree = min_poly.degree();
        let mut high_powers = Vec::new();
        if degree >= 1 {
            // x^d = -(f - x^d), then multiply up by x and re-reduce
            let mut cur: Vec<Q> = (0..degree).map(|i| -min_poly.coeff(i)).collect();
            high_powers.push(cur.clone());
            for _ in degree + 1..=2 * degree.saturating_sub(1) {
                let mut next = vec![Q::zero(); degree];
                let top = cur[degree - 1].clone();
                for i in (1..degree).rev() {
                    next[i] = cur[i - 1].clone();
                }
                if !top.is_zero() {
                    for (i, hp) in high_powers[0].iter().enumerate() {
                        next[i] += hp * &top;
                    }
                }
                high_powers.push(next.clone());
                cur = next;
            }
        }
        NumberField {
            inner: Arc::new(FieldInner {
                min_poly,
                degree,
                label: label.into(),
                cyclotomic_order,
                high_powers,
            }),
        }
    }

    /// The rationals, as the degree-1 field ℚ[x]/(x).
    pub fn rationals() -> NumberField {
        Self::new_unchecked(QPoly::from_i64(&[0, 1]), "Q", Some(1))
    }

    /// ℚ(ζ_n); the minimal polynomial is the n-th cyclotomic polynomial,
    /// irreducible over ℚ by construction.
    pub fn cyclotomic(n: u64) -> NumberField {
        assert!(n >= 1, "cyclotomic order must be positive");
        if n == 1 {
            return Self::rationals();
        }
        let phi = cyclotomic_poly(n);
        debug_assert_eq!(phi.degree() as u64, euler_phi(n));
        Self::new_unchecked(phi, format!("Q(zeta_{n})"), Some(n))
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.inner.min_poly
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.inner.cyclotomic_order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![Q::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Q::one())
    }

    pub fn from_rational(&self, c: Q) -> FieldElement {
        let mut coeffs = vec![Q::zero(); self.degree()];
        coeffs[0] = c;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_i64(&self, c: i64) -> FieldElement {
        self.from_rational(q(c))
    }

    /// The distinguished generator θ. For ℚ this is 0 (the class of x).
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![Q::zero(); self.degree()];
        if self.degree() >= 2 {
            coeffs[1] = Q::one();
        }
        // for degree 1 the generator is the root of x + c, i.e. -c
        if self.degree() == 1 {
            coeffs[0] = -self.min_poly().coeff(0);
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// ζ_n^k when the field was constructed as a cyclotomic field.
    pub fn zeta_power(&self, k: i64) -> FieldElement {
        let n = self
            .cyclotomic_order()
            .expect("zeta_power requires a cyclotomic field") as i64;
        let k = k.rem_euclid(n) as usize;
        self.generator().pow(k as u64)
    }

    pub fn element(&self, coeffs: Vec<Q>) -> FieldElement {
        assert_eq!(coeffs.len(), self.degree(), "coordinate length mismatch");
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    fn reduce(&self, raw: &[Q]) -> Vec<Q> {
        let d = self.degree();
        let mut out: Vec<Q> = raw.iter().take(d).cloned().collect();
        out.resize(d, Q::zero());
        for (k, c) in raw.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            let table = &self.inner.high_powers[k - d];
            for i in 0..d {
                out[i] += &table[i] * c;
            }
        }
        out
    }

    /// All automorphisms of the field, i.e. all roots of the minimal
    /// polynomial lying in the field. Cyclotomic fields are handled by
    /// ζ -> ζ^k directly; general fields go through numeric reconstruction
    /// with exact verification.
    pub fn automorphisms(&self) -> Result<Vec<FieldAutomorphism>, NumFieldError> {
        if let Some(n) = self.cyclotomic_order() {
            let mut autos = Vec::new();
            for k in 1..=n {
                if num_integer::gcd(k, n) == 1 {
                    let image = self.zeta_power(k as i64);
                    autos.push(FieldAutomorphism::new(image)?);
                }
            }
            return Ok(autos);
        }
        embed::automorphisms_by_reconstruction(self, embed::DEFAULT_HEIGHT_BOUND)
    }

    /// True when the field is Galois over ℚ (#automorphisms == degree).
    pub fn is_galois(&self) -> Result<bool, NumFieldError> {
        Ok(self.automorphisms()?.len() == self.degree())
    }

    /// Numeric approximations of all roots of the minimal polynomial,
    /// accurate to 2^-precision, real roots flagged.
    pub fn numeric_embeddings(&self, precision: u32) -> Vec<EmbeddingApprox> {
        embed::numeric_embeddings(self.min_poly(), precision)
    }

    /// Exact square root search with a three-valued outcome; see
    /// [`SqrtOutcome`]. A negative certified real embedding refutes.
    pub fn sqrt_in_field(&self, d: &FieldElement, height_bound: u64) -> SqrtOutcome {
        embed::sqrt_in_field(d, height_bound)
    }
}

/// Element of a number field in the power basis, always fully reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coeffs: Vec<Q>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, other.field);
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, other.field);
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, other.field);
        let d = self.field.degree();
        let mut raw = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(&raw),
        }
    }

    pub fn scale(&self, c: &Q) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
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

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// coefficient polynomial and the minimal polynomial.
    pub fn invert(&self) -> Result<FieldElement, NumFieldError> {
        if self.is_zero() {
            return Err(NumFieldError::DivisionByZero);
        }
        let a = QPoly::new(self.coeffs.clone());
        let f = self.field.min_poly().clone();
        // Bezout: u*a + v*f = gcd = constant (f irreducible, a nonzero of lower degree)
        let (g, u, _v) = ext_gcd(&a, &f);
        debug_assert_eq!(g.degree(), 0);
        let ginv = Q::one() / g.coeff(0);
        let inv_poly = u.scale(&ginv);
        let out = FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(inv_poly.coeffs()),
        };
        debug_assert!(out.mul(self).is_one());
        Ok(out)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, NumFieldError> {
        Ok(self.mul(&other.invert()?))
    }

    /// The element as a polynomial in θ.
    pub fn as_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }
}

/// Field automorphism, stored as the image of the generator together with
/// its precomputed powers.
#[derive(Clone)]
pub struct FieldAutomorphism {
    field: NumberField,
    image: FieldElement,
    image_powers: Vec<FieldElement>,
}

impl fmt::Debug for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aut({:?} -> {:?})", self.field, self.image_of_generator())
    }
}

impl PartialEq for FieldAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.image_of_generator() == other.image_of_generator()
    }
}
impl Eq for FieldAutomorphism {}

impl FieldAutomorphism {
    /// Verifies f(image) = 0 exactly before accepting.
    pub fn new(image_of_generator: FieldElement) -> Result<FieldAutomorphism, NumFieldError> {
        let field = image_of_generator.field().clone();
        let value = field.min_poly().eval_with(
            field.zero(),
            |c| field.from_rational(c.clone()),
            |a, b| a.add(b),
            |a| a.mul(&image_of_generator),
        );
        if !value.is_zero() {
            return Err(NumFieldError::NotARoot);
        }
        let d = field.degree();
        let mut image_powers = Vec::with_capacity(d);
        let mut acc = field.one();
        for _ in 0..d {
            image_powers.push(acc.clone());
            acc = acc.mul(&image_of_generator);
        }
        Ok(FieldAutomorphism {
            field,
            image: image_of_generator,
            image_powers,
        })
    }

    pub fn identity(field: &NumberField) -> FieldAutomorphism {
        FieldAutomorphism::new(field.generator()).expect("generator is a root")
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        debug_assert_eq!(*x.field(), self.field);
        let mut acc = self.field.zero();
        for (c, p) in x.coeffs().iter().zip(&self.image_powers) {
            if !c.is_zero() {
                acc = acc.add(&p.scale(c));
            }
        }
        acc
    }

    /// self ∘ other (apply other first).
    pub fn compose(&self, other: &FieldAutomorphism) -> FieldAutomorphism {
        let img = self.apply(other.image_of_generator());
        FieldAutomorphism::new(img).expect("composite of automorphisms is an automorphism")
    }

    pub fn is_identity(&self) -> bool {
        *self.image_of_generator() == self.field.generator()
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            n += 1;
            assert!(n <= self.field.degree(), "automorphism order exceeds degree");
        }
        n
    }
}

/// Extended gcd over ℚ[x]: returns (g, u, v) with u*a + v*b = g.
fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
    let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quot.mul(&s1));
        let t2 = t0.sub(&quot.mul(&t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

const FIRST_100_PRIMES_LIMIT: u64 = 542; // 100th prime is 541

fn small_primes() -> impl Iterator<Item = u64> {
    (2..FIRST_100_PRIMES_LIMIT).filter(|&n| {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    })
}

fn check_irreducible(f: &QPoly) -> Result<(), NumFieldError> {
    let deg = f.degree();
    if deg == 1 {
        return Ok(());
    }
    if deg <= 3 {
        // degree 2 or 3: reducible over Q iff there is a rational root
        if has_rational_root(f) {
            return Err(NumFieldError::Reducible("rational root found".into()));
        }
        return Ok(());
    }
    let ints = f.primitive_integer();
    for p in small_primes() {
        let fp: Vec<u64> = ints
            .iter()
            .map(|c| (c % Z::from(p) + Z::from(p)) % Z::from(p))
            .map(|c| u64::try_from(c).unwrap())
            .collect();
        if fp[deg] == 0 {
            continue; // leading coefficient vanishes mod p
        }
        if modpoly::is_irreducible(&fp, p) {
            return Ok(());
        }
    }
    Err(NumFieldError::NoCertificate)
}

fn has_rational_root(f: &QPoly) -> bool {
    let ints = f.primitive_integer();
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    if a0.is_zero() {
        return true; // x divides
    }
    let p_divs = divisors(&a0.abs());
    let q_divs = divisors(&an.abs());
    for p in &p_divs {
        for qd in &q_divs {
            for sign in [1i64, -1] {
                let cand = Q::new(p * Z::from(sign), qd.clone());
                if f.eval(&cand).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn divisors(n: &Z) -> Vec<Z> {
    let mut out = Vec::new();
    let mut d = Z::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Polynomial arithmetic mod small primes, for irreducibility certificates.
mod modpoly {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem_mod(&out, f, p)
    }

    fn rem_mod(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let fd = f.len() - 1;
        let finv = mod_inv(f[fd], p);
        while r.len() > fd {
            let shift = r.len() - 1 - fd;
            let factor = (r[r.len() - 1] * finv) % p;
            for (k, &c) in f.iter().enumerate() {
                let sub = (c * factor) % p;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mod_inv(a: u64, p: u64) -> u64 {
        mod_pow(a, p - 2, p)
    }

    fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    fn poly_pow_x(e: &num_bigint::BigUint, f: &[u64], p: u64) -> Vec<u64> {
        // x^e mod (f, p) by square and multiply over the bits of e
        let mut acc = vec![1u64];
        let x = vec![0u64, 1];
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = mul_mod(&acc, &acc, f, p);
            if e.bit(i) {
                acc = mul_mod(&acc, &x, f, p);
            }
        }
        acc
    }

    fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem_mod(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test for f over F_p.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        use num_bigint::BigUint;
        let n = (f.len() - 1) as u64;
        if n == 0 {
            return false;
        }
        let bp = BigUint::from(p);
        // x^{p^n} == x mod f
        let xpn = poly_pow_x(&bp.pow(n as u32), f, p);
        let mut diff = xpn;
        // subtract x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if !diff.is_empty() {
            return false;
        }
        // for each prime divisor q of n: gcd(x^{p^{n/q}} - x, f) == 1
        let mut m = n;
        let mut qdiv = 2;
        let mut prime_divs = vec![];
        while qdiv * qdiv <= m {
            if m % qdiv == 0 {
                prime_divs.push(qdiv);
                while m % qdiv == 0 {
                    m /= qdiv;
                }
            }
            qdiv += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        for qd in prime_divs {
            let e = bp.pow((n / qd) as u32);
            let mut g = poly_pow_x(&e, f, p);
            if g.len() < 2 {
                g.resize(2, 0);
            }
            g[1] = (g[1] + p - 1) % p;
            trim(&mut g);
            let d = gcd_mod(&g, f, p);
            if d.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;

    fn gaussian() -> NumberField {
        NumberField::cyclotomic(4)
    }

    fn cbrt2() -> NumberField {
        NumberField::new(QPoly::from_i64(&[-2, 0, 0, 1]), "Q(cbrt2)").unwrap()
    }

    #[test]
    fn cyclotomic_degrees() {
        assert_eq!(NumberField::cyclotomic(1).degree(), 1);
        let qi = gaussian();
        assert_eq!(qi.degree(), 2);
        assert_eq!(qi.min_poly(), &QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(NumberField::cyclotomic(8).degree(), 4);
    }

    #[test]
    fn reducible_is_refused() {
        assert!(NumberField::new(QPoly::from_i64(&[-1, 0, 1]), "bad").is_err()); // x^2-1
        assert!(NumberField::new(QPoly::from_i64(&[0, 0, 1]), "bad").is_err()); // x^2
        assert!(NumberField::new(QPoly::from_i64(&[-4, 0, 0, 0, 1]), "bad").is_err()); // x^4-4
    }

    #[test]
    fn irreducible_quartic_certificate() {
        // x^4 + x + 1 is irreducible (mod 2 certificate exists)
        assert!(NumberField::new(QPoly::from_i64(&[1, 1, 0, 0, 1]), "f").is_ok());
        // x^4 - 10x^2 + 1 (min poly of sqrt2+sqrt3) is irreducible over Q but
        // reducible mod every prime: construction is refused by design
        assert!(matches!(
            NumberField::new(QPoly::from_i64(&[1, 0, -10, 0, 1]), "f"),
            Err(NumFieldError::NoCertificate)
        ));
    }

    #[test]
    fn arithmetic_in_gaussian() {
        let qi = gaussian();
        let i = qi.generator();
        assert!(i.mul(&i).add(&qi.one()).is_zero());
        // (1+i) inverse is (1-i)/2
        let x = qi.one().add(&i);
        let inv = x.invert().unwrap();
        assert_eq!(
            inv,
            qi.element(vec![q_ratio(1, 2), q_ratio(-1, 2)])
        );
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn invert_cbrt2() {
        let k = cbrt2();
        let theta = k.generator();
        let inv = theta.invert().unwrap();
        // theta^2 / 2
        assert_eq!(inv, k.element(vec![q(0), q(0), q_ratio(1, 2)]));
        assert!(theta.mul(&inv).is_one());
        assert_eq!(k.one().invert().unwrap(), k.one());
        assert!(matches!(
            k.zero().invert(),
            Err(NumFieldError::DivisionByZero)
        ));
    }

    #[test]
    fn automorphisms_gaussian() {
        let qi = gaussian();
        let autos = qi.automorphisms().unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos.iter().any(|a| a.is_identity()));
        let conj = autos.iter().find(|a| !a.is_identity()).unwrap();
        assert_eq!(*conj.image_of_generator(), qi.generator().neg());
        assert_eq!(conj.order(), 2);
    }

    #[test]
    fn automorphisms_zeta8_group() {
        let k = NumberField::cyclotomic(8);
        let autos = k.automorphisms().unwrap();
        assert_eq!(autos.len(), 4);
        // composition matches multiplication in (Z/8)^x: every composite of
        // two automorphisms is again in the list and the group is 2-torsion
        for a in &autos {
            assert!(a.compose(a).is_identity());
            for b in &autos {
                let c = a.compose(b);
                assert!(autos.contains(&c));
            }
        }
    }

    #[test]
    fn automorphism_is_ring_hom() {
        let k = NumberField::cyclotomic(8);
        let autos = k.automorphisms().unwrap();
        let x = k.element(vec![q(1), q(2), q_ratio(3, 5), q(-1)]);
        let y = k.element(vec![q(0), q(7), q(-2), q_ratio(1, 3)]);
        for a in &autos {
            assert_eq!(a.apply(&x.add(&y)), a.apply(&x).add(&a.apply(&y)));
            assert_eq!(a.apply(&x.mul(&y)), a.apply(&x).mul(&a.apply(&y)));
            assert!(a.apply(&k.one()).is_one());
        }
    }

    #[test]
    fn automorphisms_cbrt2_only_identity() {
        let k = cbrt2();
        let autos = k.automorphisms().unwrap();
        assert_eq!(autos.len(), 1);
        assert!(autos[0].is_identity());
    }
}
