//! Dense integer matrices and Smith normal form.
//!
//! Entries are i128 with checked arithmetic: at the scales this crate
//! works at (bar complexes of groups of order <= 64 with small torsion
//! coefficients) intermediate entries stay tiny under minimal-pivot
//! elimination, and an overflow aborts loudly rather than wrapping.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(12) {
            write!(f, "  [")?;
            for c in 0..self.cols.min(12) {
                write!(f, "{:>4}", self[(r, c)])?;
            }
            writeln!(f, "{}]", if self.cols > 12 { " ..." } else { "" })?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (r, c): (usize, usize)) -> &i128 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i128 {
        &mut self.data[r * self.cols + c]
    }
}

fn ovf() -> ! {
    panic!("integer overflow in matrix arithmetic; input exceeds supported scale")
}

#[inline]
fn chk_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).unwrap_or_else(|| ovf())
}

#[inline]
fn chk_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).unwrap_or_else(|| ovf())
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        let mut m = IntMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> Vec<i128> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<i128>>) -> Self {
        let mut m = IntMat::zeros(rows, cols.len());
        for (c, colv) in cols.iter().enumerate() {
            assert_eq!(colv.len(), rows);
            for (r, v) in colv.iter().enumerate() {
                m[(r, c)] = *v;
            }
        }
        m
    }

    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)];
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)];
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other[(k, c)];
                    if b != 0 {
                        m[(r, c)] = chk_add(m[(r, c)], chk_mul(a, b));
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = 0i128;
                for c in 0..self.cols {
                    let a = self[(r, c)];
                    if a != 0 && v[c] != 0 {
                        acc = chk_add(acc, chk_mul(a, v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Which transforms to track: [p, pinv, q, qinv] with p*a*q = d.
pub type SnfFlags = [bool; 4];

pub struct SnfResult {
    pub d: IntMat,
    pub p: Option<IntMat>,
    pub pinv: Option<IntMat>,
    pub q: Option<IntMat>,
    pub qinv: Option<IntMat>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| self.d[(i, i)] != 0).count()
    }

    pub fn diag(&self) -> Vec<i128> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)]).collect()
    }
}

struct SnfCalc {
    a: IntMat,
    p: Option<IntMat>,
    pinv: Option<IntMat>,
    q: Option<IntMat>,
    qinv: Option<IntMat>,
}

impl SnfCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols {
            self.a.data.swap(i * self.a.cols + c, j * self.a.cols + c);
        }
        if let Some(p) = &mut self.p {
            for c in 0..p.cols {
                p.data.swap(i * p.cols + c, j * p.cols + c);
            }
        }
        if let Some(pinv) = &mut self.pinv {
            for r in 0..pinv.rows {
                pinv.data.swap(r * pinv.cols + i, r * pinv.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows {
            self.a.data.swap(r * self.a.cols + i, r * self.a.cols + j);
        }
        if let Some(q) = &mut self.q {
            for r in 0..q.rows {
                q.data.swap(r * q.cols + i, r * q.cols + j);
            }
        }
        if let Some(qinv) = &mut self.qinv {
            for c in 0..qinv.cols {
                qinv.data.swap(i * qinv.cols + c, j * qinv.cols + c);
            }
        }
    }

    /// row_j += f * row_i
    fn add_row(&mut self, i: usize, j: usize, f: i128) {
        if f == 0 {
            return;
        }
        let cols = self.a.cols;
        for c in 0..cols {
            let v = self.a.data[i * cols + c];
            if v != 0 {
                let t = chk_mul(f, v);
                let cell = &mut self.a.data[j * cols + c];
                *cell = chk_add(*cell, t);
            }
        }
        if let Some(p) = &mut self.p {
            for c in 0..p.cols {
                let v = p.data[i * p.cols + c];
                if v != 0 {
                    let t = chk_mul(f, v);
                    let cell = &mut p.data[j * p.cols + c];
                    *cell = chk_add(*cell, t);
                }
            }
        }
        if let Some(pinv) = &mut self.pinv {
            // inverse operation: col_i -= f * col_j
            for r in 0..pinv.rows {
                let v = pinv.data[r * pinv.cols + j];
                if v != 0 {
                    let t = chk_mul(f, v);
                    let cell = &mut pinv.data[r * pinv.cols + i];
                    *cell = chk_add(*cell, -t);
                }
            }
        }
    }

    /// col_j += f * col_i
    fn add_col(&mut self, i: usize, j: usize, f: i128) {
        if f == 0 {
            return;
        }
        let cols = self.a.cols;
        for r in 0..self.a.rows {
            let v = self.a.data[r * cols + i];
            if v != 0 {
                let t = chk_mul(f, v);
                let cell = &mut self.a.data[r * cols + j];
                *cell = chk_add(*cell, t);
            }
        }
        if let Some(q) = &mut self.q {
            for r in 0..q.rows {
                let v = q.data[r * q.cols + i];
                if v != 0 {
                    let t = chk_mul(f, v);
                    let cell = &mut q.data[r * q.cols + j];
                    *cell = chk_add(*cell, t);
                }
            }
        }
        if let Some(qinv) = &mut self.qinv {
            // inverse operation: row_i -= f * row_j
            for c in 0..qinv.cols {
                let v = qinv.data[j * qinv.cols + c];
                if v != 0 {
                    let t = chk_mul(f, v);
                    let cell = &mut qinv.data[i * qinv.cols + c];
                    *cell = chk_add(*cell, -t);
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        let cols = self.a.cols;
        for c in 0..cols {
            self.a.data[i * cols + c] = -self.a.data[i * cols + c];
        }
        if let Some(p) = &mut self.p {
            for c in 0..p.cols {
                p.data[i * p.cols + c] = -p.data[i * p.cols + c];
            }
        }
        if let Some(pinv) = &mut self.pinv {
            for r in 0..pinv.rows {
                pinv.data[r * pinv.cols + i] = -pinv.data[r * pinv.cols + i];
            }
        }
    }

    /// Picks the pivot in the submatrix at (k, k): prefers a ±1 entry
    /// (found by early-exit scan), otherwise the entry of minimal absolute
    /// value.
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i128)> = None;
        for r in k..self.a.rows {
            let base = r * self.a.cols;
            for c in k..self.a.cols {
                let v = self.a.data[base + c].abs();
                if v == 0 {
                    continue;
                }
                if v == 1 {
                    return Some((r, c));
                }
                if best.map_or(true, |(_, _, b)| v < b) {
                    best = Some((r, c, v));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn eliminate(&mut self) -> usize {
        let mut k = 0;
        let n = self.a.rows.min(self.a.cols);
        while k < n {
            let Some((pr, pc)) = self.select_pivot(k) else {
                break;
            };
            self.swap_rows(k, pr);
            self.swap_cols(k, pc);
            loop {
                let pivot = self.a[(k, k)];
                debug_assert!(pivot != 0);
                let mut clean = true;
                for r in k + 1..self.a.rows {
                    let v = self.a[(r, k)];
                    if v == 0 {
                        continue;
                    }
                    let quot = v.div_euclid(pivot);
                    self.add_row(k, r, -quot);
                    if self.a[(r, k)] != 0 {
                        clean = false;
                    }
                }
                for c in k + 1..self.a.cols {
                    let v = self.a[(k, c)];
                    if v == 0 {
                        continue;
                    }
                    let quot = v.div_euclid(pivot);
                    self.add_col(k, c, -quot);
                    if self.a[(k, c)] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
                // a smaller remainder appeared somewhere in row/col k: make
                // it the pivot and continue
                let mut moved = false;
                for r in k + 1..self.a.rows {
                    if self.a[(r, k)] != 0 && self.a[(r, k)].abs() < self.a[(k, k)].abs() {
                        self.swap_rows(k, r);
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    for c in k + 1..self.a.cols {
                        if self.a[(k, c)] != 0 && self.a[(k, c)].abs() < self.a[(k, k)].abs() {
                            self.swap_cols(k, c);
                            break;
                        }
                    }
                }
            }
            k += 1;
        }
        k
    }

    fn normalize(&mut self, rank: usize) {
        // positive diagonal
        for i in 0..rank {
            if self.a[(i, i)] < 0 {
                self.negate_row(i);
            }
        }
        // divisibility chain d1 | d2 | ...
        loop {
            let mut done = true;
            for i in 0..rank.saturating_sub(1) {
                let a = self.a[(i, i)];
                let b = self.a[(i + 1, i + 1)];
                if b % a != 0 {
                    done = false;
                    // bring b next to a and run a 2x2 gcd step
                    self.add_col(i + 1, i, 1);
                    loop {
                        let pivot = self.a[(i, i)];
                        let below = self.a[(i + 1, i)];
                        if below == 0 {
                            break;
                        }
                        let quot = below.div_euclid(pivot);
                        self.add_row(i, i + 1, -quot);
                        if self.a[(i + 1, i)] != 0 {
                            self.swap_rows(i, i + 1);
                        }
                    }
                    // clear the fill-in at (i, i+1)
                    let fill = self.a[(i, i + 1)];
                    let quot = fill.div_euclid(self.a[(i, i)]);
                    self.add_col(i, i + 1, -quot);
                    debug_assert_eq!(self.a[(i, i + 1)] % self.a[(i, i)], 0);
                    // any remaining multiple is absorbed by one more column op
                    if self.a[(i, i + 1)] != 0 {
                        let f = self.a[(i, i + 1)] / self.a[(i, i)];
                        self.add_col(i, i + 1, -f);
                    }
                    if self.a[(i, i)] < 0 {
                        self.negate_row(i);
                    }
                    if self.a[(i + 1, i + 1)] < 0 {
                        self.negate_row(i + 1);
                    }
                }
            }
            if done {
                break;
            }
        }
    }
}

/// Smith normal form: p * a * q = d with unimodular p, q; d diagonal with
/// positive entries in divisibility order.
pub fn snf(a: &IntMat, flags: SnfFlags) -> SnfResult {
    let mut calc = SnfCalc {
        a: a.clone(),
        p: flags[0].then(|| IntMat::identity(a.rows())),
        pinv: flags[1].then(|| IntMat::identity(a.rows())),
        q: flags[2].then(|| IntMat::identity(a.cols())),
        qinv: flags[3].then(|| IntMat::identity(a.cols())),
    };
    let rank = calc.eliminate();
    calc.normalize(rank);
    SnfResult {
        d: calc.a,
        p: calc.p,
        pinv: calc.pinv,
        q: calc.q,
        qinv: calc.qinv,
    }
}

/// Basis of the right kernel {x : a x = 0}, as matrix columns.
pub fn kernel(a: &IntMat) -> IntMat {
    let s = snf(a, [false, false, true, false]);
    let rank = s.rank();
    let q = s.q.unwrap();
    let cols: Vec<Vec<i128>> = (rank..a.cols()).map(|c| q.col(c)).collect();
    IntMat::from_cols(a.cols(), cols)
}

/// Exact solution x of a x = b (columnwise); None when unsolvable.
pub fn solve_exact(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows(), b.rows());
    let s = snf(a, [true, false, true, false]);
    let rank = s.rank();
    let p = s.p.unwrap();
    let q = s.q.unwrap();
    let y = p.mul(b);
    let mut xprime = IntMat::zeros(a.cols(), b.cols());
    for c in 0..b.cols() {
        for r in 0..a.rows() {
            let v = y[(r, c)];
            if r < rank {
                let d = s.d[(r, r)];
                if v % d != 0 {
                    return None;
                }
                xprime[(r, c)] = v / d;
            } else if v != 0 {
                return None;
            }
        }
    }
    Some(q.mul(&xprime))
}

/// Presentation of a finitely generated abelian group: torsion factors in
/// divisibility order (every factor > 1) plus a free rank.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AbelianStructure {
    pub factors: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        AbelianStructure {
            factors: vec![],
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.factors.iter().map(|&f| f as u128).product())
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure and representatives of a subquotient Z / W of Z^a, where Z and
/// W are given by generating sets (columns) with span(W) ⊆ span(Z).
///
/// Returns the abelian structure together with one ambient representative
/// per reported generator (torsion generators first, in factor order, then
/// free generators).
pub fn subquotient_with_reps(
    z_gens: &IntMat,
    w_gens: &IntMat,
) -> (AbelianStructure, Vec<Vec<i128>>) {
    let a = z_gens.rows();
    assert_eq!(w_gens.rows(), a);
    // basis of span(Z): K = pinv . diag over the first `rank` columns
    let sz = snf(z_gens, [false, true, false, false]);
    let rank_z = sz.rank();
    let pinv = sz.pinv.unwrap();
    let kcols: Vec<Vec<i128>> = (0..rank_z)
        .map(|i| {
            let d = sz.d[(i, i)];
            pinv.col(i).iter().map(|&v| chk_mul(v, d)).collect()
        })
        .collect();
    let k = IntMat::from_cols(a, kcols);
    if rank_z == 0 {
        return (AbelianStructure::trivial(), vec![]);
    }
    // express W in the K basis
    let x = solve_exact(&k, w_gens).expect("W must be contained in Z");
    quotient_of_free(&k, &x)
}

/// Structure of Z^r / span(x) where the free module Z^r is embedded in the
/// ambient space by the basis matrix `k` (a x r); representatives are
/// returned in ambient coordinates.
pub(crate) fn quotient_of_free(k: &IntMat, x: &IntMat) -> (AbelianStructure, Vec<Vec<i128>>) {
    let r = k.cols();
    let sx = snf(x, [false, true, false, false]);
    let rank_x = sx.rank();
    let pinv2 = sx.pinv.unwrap();
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for i in 0..rank_x {
        let d = sx.d[(i, i)];
        if d != 1 {
            factors.push(u64::try_from(d).expect("factor fits u64"));
            reps.push(k.mul_vec(&pinv2.col(i)));
        }
    }
    let free_rank = r - rank_x;
    for i in rank_x..r {
        reps.push(k.mul_vec(&pinv2.col(i)));
    }
    (
        AbelianStructure { factors, free_rank },
        reps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_transform(a: &IntMat) {
        let s = snf(a, [true, true, true, true]);
        let p = s.p.as_ref().unwrap();
        let q = s.q.as_ref().unwrap();
        let pinv = s.pinv.as_ref().unwrap();
        let qinv = s.qinv.as_ref().unwrap();
        assert_eq!(p.mul(a).mul(q), s.d, "p a q != d");
        assert_eq!(p.mul(pinv), IntMat::identity(a.rows()));
        assert_eq!(qinv.mul(q), IntMat::identity(a.cols()));
        assert_eq!(pinv.mul(&s.d).mul(qinv), *a, "pinv d qinv != a");
        // divisibility chain
        let diag = s.diag();
        for w in diag.windows(2) {
            if w[1] != 0 {
                assert!(w[0] != 0 && w[1] % w[0] == 0, "diag not in div order: {diag:?}");
            }
        }
    }

    #[test]
    fn snf_known() {
        let a = IntMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = snf(&a, [true, true, true, true]);
        assert_eq!(s.diag(), vec![2, 2, 156]);
        check_transform(&a);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let s = snf(&a, [false, false, false, false]);
        assert_eq!(s.diag(), vec![1, 3]);
        check_transform(&a);
        let z = IntMat::zeros(3, 2);
        assert_eq!(snf(&z, [false; 4]).rank(), 0);
    }

    #[test]
    fn snf_random_property() {
        // deterministic pseudo-random small matrices
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 21) as i128 - 10
        };
        for _ in 0..25 {
            let r = 2 + (next().unsigned_abs() as usize % 4);
            let c = 2 + (next().unsigned_abs() as usize % 4);
            let a = IntMat::from_fn(r, c, |_, _| next());
            check_transform(&a);
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let b = IntMat::from_cols(2, vec![vec![6, 15]]);
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        // unsolvable over Z: 2x = 1
        let two = IntMat::from_rows(vec![vec![2]]);
        let one = IntMat::from_rows(vec![vec![1]]);
        assert!(solve_exact(&two, &one).is_none());
    }

    #[test]
    fn subquotient_z_mod_2z() {
        // Z / 2Z inside Z^1
        let z = IntMat::identity(1);
        let w = IntMat::from_rows(vec![vec![2]]);
        let (s, reps) = subquotient_with_reps(&z, &w);
        assert_eq!(s.factors, vec![2]);
        assert_eq!(s.free_rank, 0);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0][0] % 2, 1);
    }

    #[test]
    fn subquotient_mixed() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 in invariant form... but
        // (2,0),(0,3) has SNF diag (1, 6): quotient is Z/6
        let z = IntMat::identity(2);
        let w = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let (s, _) = subquotient_with_reps(&z, &w);
        assert_eq!(s.factors, vec![6]);
        // free part: Z^2 / <(1,1)> = Z
        let w2 = IntMat::from_cols(2, vec![vec![1, 1]]);
        let (s2, _) = subquotient_with_reps(&z, &w2);
        assert_eq!(s2.factors, Vec::<u64>::new());
        assert_eq!(s2.free_rank, 1);
        // subgroup case: Z = 2Z^... span{(2,0),(0,2)} mod span{(4,0),(0,2)}
        let zg = IntMat::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let wg = IntMat::from_rows(vec![vec![4, 0], vec![0, 2]]);
        let (s3, reps3) = subquotient_with_reps(&zg, &wg);
        assert_eq!(s3.factors, vec![2]);
        assert_eq!(s3.free_rank, 0);
        // the representative must be in span(Z) but not span(W)
        assert_eq!(reps3[0].len(), 2);
        assert_eq!(reps3[0][0].rem_euclid(4), 2);
    }
}
