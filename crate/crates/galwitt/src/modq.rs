//! Linear algebra over Z/p^e, with CRT assembly for composite moduli.
//!
//! Z/p^e is a chain ring: picking the entry of least p-valuation as pivot
//! makes every division exact, so elimination never grows entries. This is
//! what keeps the bar-resolution kernels fast where integer Smith normal
//! form would suffer coefficient explosion.

use crate::intmat::{AbelianStructure, IntMat};

#[derive(Clone, PartialEq, Eq)]
pub struct ModMat {
    pub rows: usize,
    pub cols: usize,
    pub q: u64,
    data: Vec<u64>,
}

impl std::fmt::Debug for ModMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ModMat {}x{} mod {}", self.rows, self.cols, self.q)
    }
}

impl std::ops::Index<(usize, usize)> for ModMat {
    type Output = u64;
    fn index(&self, (r, c): (usize, usize)) -> &u64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ModMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u64 {
        &mut self.data[r * self.cols + c]
    }
}

impl ModMat {
    pub fn zeros(rows: usize, cols: usize, q: u64) -> Self {
        ModMat {
            rows,
            cols,
            q,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, q: u64) -> Self {
        let mut m = Self::zeros(n, n, q);
        for i in 0..n {
            m[(i, i)] = 1 % q;
        }
        m
    }

    pub fn from_intmat(a: &IntMat, q: u64) -> Self {
        let mut m = Self::zeros(a.rows(), a.cols(), q);
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                m[(r, c)] = a[(r, c)].rem_euclid(q as i128) as u64;
            }
        }
        m
    }

    pub fn mul(&self, other: &ModMat) -> ModMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.q, other.q);
        let q = self.q;
        let mut out = ModMat::zeros(self.rows, other.cols, q);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other[(k, c)];
                    if b != 0 {
                        out[(r, c)] = (out[(r, c)] + a * b) % q;
                    }
                }
            }
        }
        out
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }
}

fn val_p(x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut x = x;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn pow_u64(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // extended euclid; a must be a unit mod q
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (q as i128, (a % q) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        t -= quot * new_t;
        std::mem::swap(&mut t, &mut new_t);
        r -= quot * new_r;
        std::mem::swap(&mut r, &mut new_r);
    }
    assert_eq!(r, 1, "not a unit mod {q}");
    t.rem_euclid(q as i128) as u64
}

/// Diagonalization over Z/p^e with invertible transforms: p * a * q = d,
/// diagonal entries exactly p^{v_k} (or 0 for valuation e), valuations
/// ascending.
pub struct ModSnf {
    pub d: ModMat,
    pub p_left: Option<ModMat>,
    pub p_left_inv: Option<ModMat>,
}

pub fn modular_snf(a: &ModMat, prime: u64, e: u32, track_left: bool) -> ModSnf {
    let q = a.q;
    debug_assert_eq!(pow_u64(prime, e), q);
    let mut m = a.clone();
    let mut pl = track_left.then(|| ModMat::identity(a.rows, q));
    let mut pli = track_left.then(|| ModMat::identity(a.rows, q));
    let n = m.rows.min(m.cols);
    for k in 0..n {
        // min-valuation pivot in the submatrix
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for r in k..m.rows {
            for c in k..m.cols {
                let v = val_p(m[(r, c)], prime, e);
                if v < e && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((r, c, v));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pr, pc, v)) = best else {
            break;
        };
        // move pivot to (k, k)
        if pr != k {
            for c in 0..m.cols {
                m.data.swap(pr * m.cols + c, k * m.cols + c);
            }
            if let Some(p) = &mut pl {
                for c in 0..p.cols {
                    p.data.swap(pr * p.cols + c, k * p.cols + c);
                }
            }
            if let Some(pi) = &mut pli {
                for r in 0..pi.rows {
                    pi.data.swap(r * pi.cols + pr, r * pi.cols + k);
                }
            }
        }
        if pc != k {
            for r in 0..m.rows {
                m.data.swap(r * m.cols + pc, r * m.cols + k);
            }
        }
        // normalize pivot to exactly p^v
        let pv = pow_u64(prime, v);
        let unit = m[(k, k)] / pv;
        let uinv = inv_mod(unit, q);
        for c in k..m.cols {
            m[(k, c)] = m[(k, c)] * uinv % q;
        }
        if let Some(p) = &mut pl {
            for c in 0..p.cols {
                p[(k, c)] = p[(k, c)] * uinv % q;
            }
        }
        if let Some(pi) = &mut pli {
            for r in 0..pi.rows {
                pi[(r, k)] = pi[(r, k)] * unit % q;
            }
        }
        debug_assert_eq!(m[(k, k)], pv);
        // clear column k below/above with exact divisions
        for r in 0..m.rows {
            if r == k || m[(r, k)] == 0 {
                continue;
            }
            let f = m[(r, k)] / pv;
            debug_assert_eq!(m[(r, k)] % pv, 0, "pivot not minimal");
            for c in k..m.cols {
                let sub = f * m[(k, c)] % q;
                m[(r, c)] = (m[(r, c)] + q - sub) % q;
            }
            if let Some(p) = &mut pl {
                for c in 0..p.cols {
                    let sub = f * p[(k, c)] % q;
                    p[(r, c)] = (p[(r, c)] + q - sub) % q;
                }
            }
            if let Some(pi) = &mut pli {
                for rr in 0..pi.rows {
                    let add = f * pi[(rr, r)] % q;
                    pi[(rr, k)] = (pi[(rr, k)] + add) % q;
                }
            }
        }
        // clear row k to the right (column ops; column k now has only the pivot)
        for c in k + 1..m.cols {
            if m[(k, c)] == 0 {
                continue;
            }
            let f = m[(k, c)] / pv;
            debug_assert_eq!(m[(k, c)] % pv, 0, "pivot not minimal");
            for r in 0..m.rows {
                let sub = f * m[(r, k)] % q;
                m[(r, c)] = (m[(r, c)] + q - sub) % q;
            }
        }
    }
    ModSnf {
        d: m,
        p_left: pl,
        p_left_inv: pli,
    }
}

/// Generating set for {x in (Z/q)^cols : A x = 0}, q = p^e, returned as a
/// square matrix whose columns generate the kernel. Rows are folded in one
/// at a time, so sparse differentials cost little.
pub fn kernel_mod(a: &ModMat, prime: u64, e: u32) -> ModMat {
    let q = a.q;
    let cols = a.cols;
    let mut k = ModMat::identity(cols, q);
    for row in 0..a.rows {
        // v = a_row . K
        let mut v = vec![0u64; cols];
        for c in 0..cols {
            let ac = a[(row, c)];
            if ac == 0 {
                continue;
            }
            for j in 0..cols {
                let kj = k[(c, j)];
                if kj != 0 {
                    v[j] = (v[j] + ac * kj) % q;
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        // pivot of least valuation
        let (jstar, w) = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(j, &x)| (j, val_p(x, prime, e)))
            .min_by_key(|&(_, w)| w)
            .unwrap();
        let pw = pow_u64(prime, w);
        let unit = v[jstar] / pw;
        let uinv = inv_mod(unit, q);
        // scale column jstar so its v-value is exactly p^w
        for r in 0..cols {
            k[(r, jstar)] = k[(r, jstar)] * uinv % q;
        }
        // eliminate the rest
        for j in 0..cols {
            if j == jstar || v[j] == 0 {
                continue;
            }
            let f = v[j] / pw;
            debug_assert_eq!(v[j] % pw, 0);
            for r in 0..cols {
                let sub = f * k[(r, jstar)] % q;
                k[(r, j)] = (k[(r, j)] + q - sub) % q;
            }
        }
        // annihilator of the pivot column
        let ann = pow_u64(prime, e - w) % q;
        for r in 0..cols {
            k[(r, jstar)] = k[(r, jstar)] * ann % q;
        }
    }
    k
}

/// Structure and representatives of span(z)/span(w) inside (Z/q)^a, q = p^e.
/// Factors are powers of p in ascending order; representatives are ambient
/// vectors mod q.
pub fn mod_subquotient(
    z: &ModMat,
    w: &ModMat,
    prime: u64,
    e: u32,
) -> (Vec<u64>, Vec<Vec<u64>>) {
    let q = z.q;
    let a = z.rows;
    assert_eq!(w.rows, a);
    let s = modular_snf(z, prime, e, true);
    let p_left = s.p_left.as_ref().unwrap();
    let p_inv = s.p_left_inv.as_ref().unwrap();
    // span(z) = Pinv . (+) p^{v_i} R over all rows i (v_i = e beyond the diag)
    let vals: Vec<u32> = (0..a)
        .map(|i| {
            if i < s.d.cols {
                val_p(s.d[(i, i)], prime, e)
            } else {
                e
            }
        })
        .collect();
    // W in the scaled coordinates
    let y = p_left.mul(w);
    let mut aug = ModMat::zeros(a, w.cols + a, q);
    for i in 0..a {
        let pv = pow_u64(prime, vals[i]);
        for j in 0..w.cols {
            let entry = y[(i, j)];
            assert_eq!(
                entry % pv,
                0,
                "w is not contained in span(z) (row {i}, col {j})"
            );
            aug[(i, j)] = entry / pv;
        }
        // modulus of coordinate i: p^{e - v_i}
        let diag = pow_u64(prime, e - vals[i]) % q;
        aug[(i, w.cols + i)] = diag;
    }
    let s2 = modular_snf(&aug, prime, e, true);
    let p2_inv = s2.p_left_inv.as_ref().unwrap();
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for k in 0..a {
        let dval = if k < s2.d.cols {
            val_p(s2.d[(k, k)], prime, e)
        } else {
            e
        };
        if dval == 0 {
            continue;
        }
        factors.push(pow_u64(prime, dval));
        // generator in coordinate space, scaled back to the lattice and
        // mapped through Pinv
        let gcol = p2_inv.col(k);
        let mut yvec = vec![0u64; a];
        for i in 0..a {
            yvec[i] = gcol[i] * (pow_u64(prime, vals[i]) % q) % q;
        }
        let mut x = vec![0u64; a];
        for r in 0..a {
            let mut acc: u128 = 0;
            for i in 0..a {
                if yvec[i] != 0 && p_inv[(r, i)] != 0 {
                    acc += p_inv[(r, i)] as u128 * yvec[i] as u128;
                }
            }
            x[r] = (acc % q as u128) as u64;
        }
        reps.push(x);
    }
    // ascending by factor size
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by_key(|&i| factors[i]);
    let factors_sorted: Vec<u64> = order.iter().map(|&i| factors[i]).collect();
    let reps_sorted: Vec<Vec<u64>> = order.iter().map(|&i| reps[i].clone()).collect();
    (factors_sorted, reps_sorted)
}

fn prime_power_decomposition(q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = q;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// H = ker(A)/im(B) for maps of free (Z/q)-modules, computed per prime power
/// and assembled by CRT. Returns the abelian structure and ambient
/// representatives mod q.
pub fn homology_mod_q(a: &IntMat, b: &IntMat, q: u64) -> (AbelianStructure, Vec<Vec<i128>>) {
    assert!(q >= 1);
    if q == 1 {
        return (AbelianStructure::trivial(), vec![]);
    }
    let dim = a.cols();
    assert_eq!(b.rows(), dim);
    let mut per_prime: Vec<(u64, Vec<u64>, Vec<Vec<u64>>)> = Vec::new();
    for (p, e) in prime_power_decomposition(q) {
        let qp = pow_u64(p, e);
        let ap = ModMat::from_intmat(a, qp);
        let bp = ModMat::from_intmat(b, qp);
        let z = kernel_mod(&ap, p, e);
        let (factors, reps) = mod_subquotient(&z, &bp, p, e);
        per_prime.push((qp, factors, reps));
    }
    // CRT merge: combine the largest factors of each prime first
    let max_len = per_prime.iter().map(|(_, f, _)| f.len()).max().unwrap_or(0);
    let mut merged: Vec<(u64, Vec<i128>)> = vec![(1, vec![0i128; dim]); max_len];
    for (qp, factors, reps) in &per_prime {
        let other = q / qp;
        // CRT coefficient: lift x mod qp to x * other * inv(other mod qp) mod q
        let coeff = if *qp == q {
            1u128
        } else {
            (other as u128) * (inv_mod(other % qp, *qp) as u128) % q as u128
        };
        // align descending: position from the end
        let len = factors.len();
        for (slot, idx) in (0..len).rev().enumerate() {
            let pos = max_len - 1 - slot;
            merged[pos].0 *= factors[idx];
            for r in 0..dim {
                let add = (reps[idx][r] as u128 * coeff) % q as u128;
                let cur = merged[pos].1[r].rem_euclid(q as i128) as u128;
                merged[pos].1[r] = ((cur + add) % q as u128) as i128;
            }
        }
    }
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for (f, rep) in merged {
        if f > 1 {
            factors.push(f);
            reps.push(rep);
        }
    }
    (
        AbelianStructure {
            factors,
            free_rank: 0,
        },
        reps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_mod_8() {
        // [[2, 4], [6, 4]] mod 8
        let mut a = ModMat::zeros(2, 2, 8);
        a[(0, 0)] = 2;
        a[(0, 1)] = 4;
        a[(1, 0)] = 6;
        a[(1, 1)] = 4;
        let s = modular_snf(&a, 2, 3, true);
        assert_eq!(s.d[(0, 0)], 2);
        assert_eq!(s.d[(0, 1)], 0);
        assert_eq!(s.d[(1, 0)], 0);
        // determinant 2*4-4*6 = -16 = 0 mod 8: second entry 0 mod 8
        assert_eq!(s.d[(1, 1)], 0);
        // p * pinv = identity
        let p = s.p_left.as_ref().unwrap();
        let pi = s.p_left_inv.as_ref().unwrap();
        let prod = p.mul(pi);
        assert_eq!(prod, ModMat::identity(2, 8));
    }

    #[test]
    fn kernel_mod_scalar() {
        // kernel of [2] mod 4 is {0, 2}
        let a = ModMat::from_intmat(&IntMat::from_rows(vec![vec![2]]), 4);
        let k = kernel_mod(&a, 2, 2);
        // the generating set spans {0, 2}
        let gens: Vec<u64> = (0..k.cols).map(|c| k[(0, c)]).collect();
        assert!(gens.contains(&2));
        assert!(gens.iter().all(|&g| g == 0 || g == 2));
    }

    #[test]
    fn homology_z2_from_mod4() {
        // ker([2])/im([0]) over Z/4 = {0,2} = Z/2
        let a = IntMat::from_rows(vec![vec![2]]);
        let b = IntMat::zeros(1, 0);
        let (s, reps) = homology_mod_q(&a, &b, 4);
        assert_eq!(s.factors, vec![2]);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0][0].rem_euclid(4), 2);
    }

    #[test]
    fn homology_crt_composite() {
        // ker of zero map on (Z/12)^1 modulo im([4]): Z/12 / <4> = Z/4
        let a = IntMat::zeros(0, 1);
        let b = IntMat::from_rows(vec![vec![4]]);
        let (s, _) = homology_mod_q(&a, &b, 12);
        assert_eq!(s.factors, vec![4]);
        // full group: Z/12
        let b0 = IntMat::zeros(1, 0);
        let (s0, reps) = homology_mod_q(&a, &b0, 12);
        assert_eq!(s0.factors, vec![12]);
        assert_eq!(reps.len(), 1);
        // the representative generates: it must be a unit times ... mod 12
        let g = reps[0][0].rem_euclid(12) as u64;
        assert_eq!(num_integer::gcd(g, 12), 1);
    }
}
