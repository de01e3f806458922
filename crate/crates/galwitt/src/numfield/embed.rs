//! Numeric embeddings and exact reconstruction.
//!
//! Floating point only ever seeds Newton iterations here; every returned
//! equality (automorphism, square root) is verified exactly in the field,
//! and every refutation is backed by a Sturm count or an interval sign
//! certificate. Failures surface as `Inconclusive`, never as guesses.

use super::{FieldAutomorphism, FieldElement, NumFieldError, NumberField};
use crate::poly::{q, QPoly, Q, Z};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) const DEFAULT_HEIGHT_BOUND: u64 = 10_000;

/// One root of the minimal polynomial, to the requested accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingApprox {
    pub re: Q,
    pub im: Q,
    pub is_real: bool,
    /// exact isolating interval for real roots
    pub real_interval: Option<(Q, Q)>,
}

/// Witness that some real embedding sends the tested element to a negative
/// number: the element cannot be a square.
#[derive(Debug, Clone, PartialEq)]
pub struct SignCertificate {
    pub embedding_index: usize,
    pub theta_interval: (Q, Q),
    pub value_upper_bound: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SqrtOutcome {
    Root(FieldElement),
    NoRoot(SignCertificate),
    Inconclusive,
}

impl SqrtOutcome {
    pub fn root(self) -> Option<FieldElement> {
        match self {
            SqrtOutcome::Root(r) => Some(r),
            _ => None,
        }
    }
}

/// Rational complex numbers; exact arithmetic with explicit truncation.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct QC {
    pub re: Q,
    pub im: Q,
}

impl QC {
    fn new(re: Q, im: Q) -> Self {
        QC { re, im }
    }

    fn zero() -> Self {
        QC::new(Q::zero(), Q::zero())
    }

    fn from_q(re: Q) -> Self {
        QC::new(re, Q::zero())
    }

    fn from_f64(z: Complex64) -> Option<Self> {
        Some(QC::new(Q::from_float(z.re)?, Q::from_float(z.im)?))
    }

    fn add(&self, o: &QC) -> QC {
        QC::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &QC) -> QC {
        QC::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &QC) -> QC {
        QC::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn div(&self, o: &QC) -> QC {
        let n = &o.re * &o.re + &o.im * &o.im;
        QC::new(
            (&self.re * &o.re + &self.im * &o.im) / &n,
            (&self.im * &o.re - &self.re * &o.im) / &n,
        )
    }

    fn neg(&self) -> QC {
        QC::new(-self.re.clone(), -self.im.clone())
    }

    fn conj(&self) -> QC {
        QC::new(self.re.clone(), -self.im.clone())
    }

    fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    fn truncate(&self, bits: u32) -> QC {
        QC::new(dyadic_round(&self.re, bits), dyadic_round(&self.im, bits))
    }
}

/// Nearest dyadic rational with denominator 2^bits.
fn dyadic_round(x: &Q, bits: u32) -> Q {
    let scale = Z::from(1u8) << bits;
    let scaled = x * Q::from_integer(scale.clone());
    let rounded = (scaled + Q::new(Z::from(1), Z::from(2))).floor();
    rounded / Q::from_integer(scale)
}

fn pow2_inv(bits: u32) -> Q {
    Q::new(Z::one(), Z::from(1u8) << bits)
}

/// All roots of `f`, accurate to 2^-precision. Real roots come first in
/// ascending order with exact isolating intervals; complex roots follow,
/// ordered by (re, im) with conjugates adjacent in the grouping step.
pub fn numeric_embeddings(f: &QPoly, precision: u32) -> Vec<EmbeddingApprox> {
    let d = f.degree();
    let sf = f.squarefree();
    let width = pow2_inv(precision + 1);
    let real_intervals = sf.isolate_real_roots(&width);
    let mut out: Vec<EmbeddingApprox> = real_intervals
        .iter()
        .map(|(lo, hi)| EmbeddingApprox {
            re: (lo + hi) / q(2),
            im: Q::zero(),
            is_real: true,
            real_interval: Some((lo.clone(), hi.clone())),
        })
        .collect();
    let n_complex = d - real_intervals.len();
    if n_complex > 0 {
        let seeds = durand_kerner(f);
        // drop the approximations matching known real roots: keep the
        // n_complex with largest |Im|
        let mut by_im: Vec<Complex64> = seeds;
        by_im.sort_by(|a, b| b.im.abs().partial_cmp(&a.im.abs()).unwrap());
        let mut complex: Vec<EmbeddingApprox> = Vec::new();
        for z in by_im.into_iter().take(n_complex) {
            let seed = QC::from_f64(z).expect("finite seed");
            let polished = newton_polish(f, seed, precision + 2);
            complex.push(EmbeddingApprox {
                re: polished.re,
                im: polished.im,
                is_real: false,
                real_interval: None,
            });
        }
        complex.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
        out.extend(complex);
    }
    out
}

fn durand_kerner(f: &QPoly) -> Vec<Complex64> {
    let d = f.degree();
    let coeffs: Vec<Complex64> = {
        let lead = f.leading();
        f.coeffs()
            .iter()
            .map(|c| Complex64::new((c / &lead).to_f64().unwrap_or(0.0), 0.0))
            .collect()
    };
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let radius = f.root_bound().to_f64().unwrap_or(2.0);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
            Complex64::from_polar(radius * 0.7 + 0.1, angle)
        })
        .collect();
    for _ in 0..200 {
        let mut delta_max: f64 = 0.0;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta_max = delta_max.max(step.norm());
        }
        if delta_max < 1e-13 {
            break;
        }
    }
    roots
}

/// Exact-rational Newton refinement until the step is below 2^-bits.
fn newton_polish(f: &QPoly, seed: QC, bits: u32) -> QC {
    let fp = f.derivative();
    let eval = |z: &QC, p: &QPoly| -> QC {
        let mut acc = QC::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z).add(&QC::from_q(c.clone()));
        }
        acc
    };
    let tol = pow2_inv(bits);
    let mut z = seed;
    for _ in 0..80 {
        let fv = eval(&z, f);
        let dv = eval(&z, &fp);
        if dv.norm_sq().is_zero() {
            break;
        }
        let step = fv.div(&dv);
        z = z.sub(&step).truncate(3 * bits);
        if step.re.abs() < tol && step.im.abs() < tol {
            break;
        }
    }
    z
}

/// Best rational approximation with denominator <= max_den, by continued
/// fractions.
fn rationalize(x: &Q, max_den: u64) -> Q {
    let cap = Z::from(max_den);
    let (mut p0, mut q0) = (Z::one(), Z::zero());
    let (mut p1, mut q1) = (x.floor().numer().clone(), Z::one());
    let mut frac = x - Q::from_integer(p1.clone());
    while !frac.is_zero() {
        let recip = Q::one() / frac;
        let a = recip.floor().numer().clone();
        frac = recip - Q::from_integer(a.clone());
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    Q::new(p1, q1)
}

/// Units of the embedding list: a real index, or a conjugate pair (k, kbar).
#[derive(Debug, Clone)]
enum Unit {
    Real(usize),
    Pair(usize, usize),
}

impl Unit {
    fn first(&self) -> usize {
        match self {
            Unit::Real(k) => *k,
            Unit::Pair(k, _) => *k,
        }
    }
}

fn group_units(embs: &[EmbeddingApprox]) -> Vec<Unit> {
    let mut units = Vec::new();
    let mut used = vec![false; embs.len()];
    for (k, e) in embs.iter().enumerate() {
        if used[k] {
            continue;
        }
        used[k] = true;
        if e.is_real {
            units.push(Unit::Real(k));
        } else {
            // partner: closest to the conjugate value
            let mut best = None;
            let mut best_d: Option<Q> = None;
            for (j, e2) in embs.iter().enumerate() {
                if used[j] || e2.is_real {
                    continue;
                }
                let dr = &e2.re - &e.re;
                let di = &e2.im + &e.im;
                let dist = &dr * &dr + &di * &di;
                if best_d.as_ref().map_or(true, |b| dist < *b) {
                    best_d = Some(dist);
                    best = Some(j);
                }
            }
            let j = best.expect("complex roots come in conjugate pairs");
            used[j] = true;
            units.push(Unit::Pair(k, j));
        }
    }
    units
}

/// One way of filling the target values for a unit: the positions it sets,
/// and (for injective searches) which target unit it consumes.
struct UnitOption {
    sets: Vec<(usize, QC)>,
    consumes: Option<usize>,
}

/// Depth-first enumeration over per-unit options, enforcing that no two
/// units consume the same target. `visit` returns true to stop the search.
fn for_each_assignment(
    units: &[Unit],
    n: usize,
    options: &dyn Fn(&Unit) -> Vec<UnitOption>,
    visit: &mut dyn FnMut(&[QC]) -> bool,
) -> bool {
    fn rec(
        units: &[Unit],
        idx: usize,
        w: &mut Vec<Option<QC>>,
        used: &mut Vec<bool>,
        options: &dyn Fn(&Unit) -> Vec<UnitOption>,
        visit: &mut dyn FnMut(&[QC]) -> bool,
    ) -> bool {
        if idx == units.len() {
            let full: Vec<QC> = w.iter().map(|x| x.clone().unwrap()).collect();
            return visit(&full);
        }
        for opt in options(&units[idx]) {
            if let Some(t) = opt.consumes {
                if used[t] {
                    continue;
                }
                used[t] = true;
            }
            for (pos, val) in &opt.sets {
                w[*pos] = Some(val.clone());
            }
            let stop = rec(units, idx + 1, w, used, options, visit);
            for (pos, _) in &opt.sets {
                w[*pos] = None;
            }
            if let Some(t) = opt.consumes {
                used[t] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
    let mut w = vec![None; n];
    let mut used = vec![false; units.len()];
    rec(units, 0, &mut w, &mut used, options, visit)
}

fn solve_complex(v: &[Vec<QC>], w: &[QC]) -> Option<Vec<QC>> {
    let n = v.len();
    let mut m: Vec<Vec<QC>> = v
        .iter()
        .zip(w)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm_sq().cmp(&m[b][col].norm_sq()))?;
        if m[piv][col].norm_sq().is_zero() {
            return None;
        }
        m.swap(piv, col);
        let pivot = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].norm_sq().is_zero() {
                continue;
            }
            let factor = m[r][col].div(&pivot);
            for c in col..=n {
                let t = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    Some((0..n).map(|i| m[i][n].div(&m[i][i])).collect())
}

fn vandermonde(embs: &[EmbeddingApprox], bits: u32) -> Vec<Vec<QC>> {
    embs.iter()
        .map(|e| {
            let z = QC::new(e.re.clone(), e.im.clone());
            let mut row = Vec::with_capacity(embs.len());
            let mut acc = QC::from_q(Q::one());
            for _ in 0..embs.len() {
                row.push(acc.clone());
                acc = acc.mul(&z).truncate(3 * bits);
            }
            row
        })
        .collect()
}

/// Solve for rational coordinates, round them at the height bound, and run
/// the caller's exact verification.
fn reconstruct_and_verify(
    field: &NumberField,
    vmat: &[Vec<QC>],
    targets: &[QC],
    height_bound: u64,
    precision: u32,
    verify: &dyn Fn(&FieldElement) -> bool,
) -> Option<FieldElement> {
    let sol = solve_complex(vmat, targets)?;
    let tol = pow2_inv(precision / 2);
    let mut coeffs = Vec::with_capacity(sol.len());
    for c in &sol {
        if c.im.abs() > tol {
            return None;
        }
        coeffs.push(rationalize(&c.re, height_bound));
    }
    let cand = field.element(coeffs);
    verify(&cand).then_some(cand)
}

/// Finds all roots of the minimal polynomial inside the field. Complex
/// targets are refuted wholesale when the distinguished embedding is real;
/// remaining targets are searched over conjugation-equivariant bijections
/// of embeddings onto roots, each candidate verified exactly.
pub(crate) fn automorphisms_by_reconstruction(
    field: &NumberField,
    height_bound: u64,
) -> Result<Vec<FieldAutomorphism>, NumFieldError> {
    let d = field.degree();
    if d == 1 {
        return Ok(vec![FieldAutomorphism::identity(field)]);
    }
    let f = field.min_poly().clone();
    let verify = |cand: &FieldElement| -> bool {
        f.eval_with(
            field.zero(),
            |c| field.from_rational(c.clone()),
            |a, b| a.add(b),
            |a| a.mul(cand),
        )
        .is_zero()
    };
    for precision in [96u32, 192, 384] {
        let embs = numeric_embeddings(&f, precision);
        let units = group_units(&embs);
        let vmat = vandermonde(&embs, precision);
        let emb0_real = embs[0].is_real;
        let mut resolved = vec![false; d];
        let mut found: Vec<FieldElement> = Vec::new();
        for (j, t) in embs.iter().enumerate() {
            // an element always has a real value under a real embedding, so
            // a complex root can never lie in a field with embs[0] real
            if emb0_real && !t.is_real {
                resolved[j] = true;
            }
        }
        for j in 0..d {
            if resolved[j] {
                continue;
            }
            let opts = |u: &Unit| -> Vec<UnitOption> {
                let mut opts = Vec::new();
                for (ti, tu) in units.iter().enumerate() {
                    match (u, tu) {
                        (Unit::Real(k), Unit::Real(t)) => {
                            if *k == 0 && *t != j {
                                continue;
                            }
                            opts.push(UnitOption {
                                sets: vec![(*k, QC::new(embs[*t].re.clone(), embs[*t].im.clone()))],
                                consumes: Some(ti),
                            });
                        }
                        (Unit::Pair(k, kb), Unit::Pair(t, tb)) => {
                            for (a, b) in [(*t, *tb), (*tb, *t)] {
                                if *k == 0 && a != j {
                                    continue;
                                }
                                let za = QC::new(embs[a].re.clone(), embs[a].im.clone());
                                let zb = QC::new(embs[b].re.clone(), embs[b].im.clone());
                                opts.push(UnitOption {
                                    sets: vec![(*k, za), (*kb, zb)],
                                    consumes: Some(ti),
                                });
                            }
                        }
                        // a complex embedding can land on a real root only if
                        // the root is hit twice, which bijectivity forbids
                        _ => {}
                    }
                }
                opts
            };
            // the unit containing position 0 must exist for j to be reachable
            let reachable = units.iter().any(|u| {
                u.first() == 0
                    && match u {
                        Unit::Real(_) => embs[j].is_real,
                        Unit::Pair(_, _) => !embs[j].is_real,
                    }
            });
            if !reachable {
                resolved[j] = true; // structurally refuted
                continue;
            }
            let mut hit: Option<FieldElement> = None;
            for_each_assignment(&units, d, &opts, &mut |w| {
                if let Some(el) =
                    reconstruct_and_verify(field, &vmat, w, height_bound, precision, &verify)
                {
                    hit = Some(el);
                    true
                } else {
                    false
                }
            });
            if let Some(el) = hit {
                if !found.contains(&el) {
                    found.push(el);
                }
                resolved[j] = true;
            }
        }
        if resolved.iter().all(|&r| r) {
            let mut autos = Vec::new();
            for el in found {
                autos.push(FieldAutomorphism::new(el)?);
            }
            return Ok(autos);
        }
    }
    // Unverified, unrefuted targets remain after the precision ladder: the
    // height bound does not let us decide them either way.
    Err(NumFieldError::ReconstructionInconclusive(height_bound))
}

/// Certified sign of `d` at each real embedding: refines the isolating
/// interval of θ until the interval evaluation of d's polynomial has a
/// definite sign. Terminates because embeddings of a nonzero element are
/// nonzero.
fn real_embedding_signs(d: &FieldElement) -> Vec<(usize, (Q, Q), Q, Q)> {
    let field = d.field();
    let f = field.min_poly();
    let chain = f.sturm_chain();
    let sf = f.squarefree();
    let width0 = q(1) / q(1 << 20);
    let dpoly = d.as_poly();
    let mut out = Vec::new();
    for (idx, (lo0, hi0)) in sf.isolate_real_roots(&width0).iter().enumerate() {
        let (mut lo, mut hi) = (lo0.clone(), hi0.clone());
        loop {
            let (vlo, vhi) = dpoly.eval_interval(&lo, &hi);
            if vhi.is_negative() || vlo.is_positive() || (vlo.is_zero() && vhi.is_zero()) {
                out.push((idx, (lo, hi), vlo, vhi));
                break;
            }
            let width = (&hi - &lo) / q(4);
            let (nlo, nhi) = sf.refine_root(&chain, &lo, &hi, &width);
            lo = nlo;
            hi = nhi;
        }
    }
    out
}

/// Exact square-root search. Never returns an unverified value; a `NoRoot`
/// answer carries a negative-embedding certificate.
pub(crate) fn sqrt_in_field(d: &FieldElement, height_bound: u64) -> SqrtOutcome {
    let field = d.field().clone();
    if d.is_zero() {
        return SqrtOutcome::Root(field.zero());
    }
    // exact rational fast path: catches squares of rationals in any field
    if let Some(r) = d.as_rational() {
        if !r.is_negative() {
            let num = r.numer().sqrt();
            let den = r.denom().sqrt();
            if &num * &num == *r.numer() && &den * &den == *r.denom() {
                return SqrtOutcome::Root(field.from_rational(Q::new(num, den)));
            }
        }
    }
    // sign refutation at any real embedding
    for (idx, interval, _vlo, vhi) in real_embedding_signs(d) {
        if vhi.is_negative() {
            return SqrtOutcome::NoRoot(SignCertificate {
                embedding_index: idx,
                theta_interval: interval,
                value_upper_bound: vhi,
            });
        }
    }
    let deg = field.degree();
    if deg == 1 {
        return SqrtOutcome::Inconclusive; // nonnegative rational non-square
    }
    let f = field.min_poly().clone();
    let dpoly = d.as_poly();
    let verify = |cand: &FieldElement| -> bool { cand.mul(cand) == *d };
    for precision in [96u32, 192, 384] {
        let embs = numeric_embeddings(&f, precision);
        let units = group_units(&embs);
        let vmat = vandermonde(&embs, precision);
        let values: Vec<QC> = embs
            .iter()
            .map(|e| {
                let z = QC::new(e.re.clone(), e.im.clone());
                let mut acc = QC::zero();
                for c in dpoly.coeffs().iter().rev() {
                    acc = acc.mul(&z).add(&QC::from_q(c.clone())).truncate(3 * precision);
                }
                acc
            })
            .collect();
        let sqrts: Vec<QC> = values.iter().map(|v| complex_sqrt(v, precision)).collect();
        let opts = |u: &Unit| -> Vec<UnitOption> {
            match u {
                Unit::Real(k) => {
                    let s = sqrts[*k].clone();
                    vec![
                        UnitOption {
                            sets: vec![(*k, s.clone())],
                            consumes: None,
                        },
                        UnitOption {
                            sets: vec![(*k, s.neg())],
                            consumes: None,
                        },
                    ]
                }
                Unit::Pair(k, kb) => {
                    let s = sqrts[*k].clone();
                    vec![
                        UnitOption {
                            sets: vec![(*k, s.clone()), (*kb, s.conj())],
                            consumes: None,
                        },
                        UnitOption {
                            sets: vec![(*k, s.neg()), (*kb, s.conj().neg())],
                            consumes: None,
                        },
                    ]
                }
            }
        };
        let mut hit: Option<FieldElement> = None;
        for_each_assignment(&units, deg, &opts, &mut |w| {
            if let Some(el) =
                reconstruct_and_verify(&field, &vmat, w, height_bound, precision, &verify)
            {
                hit = Some(el);
                true
            } else {
                false
            }
        });
        if let Some(el) = hit {
            return SqrtOutcome::Root(el);
        }
    }
    SqrtOutcome::Inconclusive
}

fn complex_sqrt(v: &QC, bits: u32) -> QC {
    if v.norm_sq().is_zero() {
        return QC::zero();
    }
    let seed = {
        let re = v.re.to_f64().unwrap_or(0.0);
        let im = v.im.to_f64().unwrap_or(0.0);
        let s = Complex64::new(re, im).sqrt();
        QC::from_f64(if s.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            s
        })
        .unwrap()
    };
    // Newton for z^2 - v
    let mut z = seed;
    let tol = pow2_inv(bits + 2);
    for _ in 0..80 {
        if z.norm_sq().is_zero() {
            z = QC::from_q(Q::one());
        }
        let step = z.mul(&z).sub(v).div(&z.add(&z));
        z = z.sub(&step).truncate(3 * bits);
        if step.re.abs() < tol && step.im.abs() < tol {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;

    #[test]
    fn embeddings_gaussian() {
        let f = QPoly::from_i64(&[1, 0, 1]);
        let embs = numeric_embeddings(&f, 40);
        assert_eq!(embs.len(), 2);
        assert!(embs.iter().all(|e| !e.is_real));
        for e in &embs {
            assert!(e.re.abs() < q_ratio(1, 1 << 30));
            assert!((e.im.abs() - q(1)).abs() < q_ratio(1, 1 << 30));
        }
    }

    #[test]
    fn embeddings_sqrt2() {
        let f = QPoly::from_i64(&[-2, 0, 1]);
        let embs = numeric_embeddings(&f, 48);
        assert_eq!(embs.len(), 2);
        assert!(embs.iter().all(|e| e.is_real));
        let target = Q::from_float(std::f64::consts::SQRT_2).unwrap();
        assert!((embs[1].re.clone() - target).abs() < q_ratio(1, 1 << 40));
    }

    #[test]
    fn embeddings_cbrt2_residual() {
        let f = QPoly::from_i64(&[-2, 0, 0, 1]);
        let prec = 40u32;
        let embs = numeric_embeddings(&f, prec);
        assert_eq!(embs.len(), 3);
        assert_eq!(embs.iter().filter(|e| e.is_real).count(), 1);
        // residual < 2^-precision at every root
        for e in &embs {
            let z = QC::new(e.re.clone(), e.im.clone());
            let mut acc = QC::zero();
            for c in f.coeffs().iter().rev() {
                acc = acc.mul(&z).add(&QC::from_q(c.clone()));
            }
            let bound = pow2_inv(prec);
            assert!(acc.norm_sq() < &bound * &bound, "residual too large");
        }
    }

    #[test]
    fn sqrt_rational_and_defining_relation() {
        let qq = NumberField::rationals();
        match qq.sqrt_in_field(&qq.from_i64(4), 100) {
            SqrtOutcome::Root(r) => assert_eq!(r, qq.from_i64(2)),
            other => panic!("expected root, got {other:?}"),
        }
        assert!(matches!(
            qq.sqrt_in_field(&qq.from_i64(-3), 100),
            SqrtOutcome::NoRoot(_)
        ));
        let qi = NumberField::cyclotomic(4);
        match qi.sqrt_in_field(&qi.from_i64(-1), 100) {
            SqrtOutcome::Root(r) => {
                assert!(r == qi.generator() || r == qi.generator().neg());
                assert_eq!(r.mul(&r), qi.from_i64(-1));
            }
            other => panic!("expected root, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_sign_certificate_cbrt2() {
        let k = NumberField::new(QPoly::from_i64(&[-2, 0, 0, 1]), "Q(cbrt2)").unwrap();
        let theta = k.generator();
        let d = theta.mul(&theta).scale(&q(-3));
        match k.sqrt_in_field(&d, 1000) {
            SqrtOutcome::NoRoot(cert) => {
                assert!(cert.value_upper_bound.is_negative());
            }
            other => panic!("expected NoRoot, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_zeta8_square() {
        // sqrt(i) in Q(zeta_8) is zeta_8 itself
        let k = NumberField::cyclotomic(8);
        let i = k.zeta_power(2);
        match k.sqrt_in_field(&i, 1000) {
            SqrtOutcome::Root(r) => assert_eq!(r.mul(&r), i),
            other => panic!("expected root, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_inconclusive_for_nonsquare_rational() {
        let qq = NumberField::rationals();
        assert!(matches!(
            qq.sqrt_in_field(&qq.from_i64(2), 100),
            SqrtOutcome::Inconclusive
        ));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        let x = q_ratio(22, 7) + Q::new(Z::one(), Z::from(1u64) << 60);
        assert_eq!(rationalize(&x, 100), q_ratio(22, 7));
    }
}
