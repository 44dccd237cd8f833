//! Exact linear algebra over `F_l` and `Z/l^N`.
//!
//! Scalars are canonical representatives in `[0, l^N)` stored as `u64`.
//! Matrices are dense, row-major, and act on row vectors from the right: a
//! map from a rank-`a` module to a rank-`b` module is an `a x b` matrix `M`
//! sending `x` to `x * M`. Under this convention the kernel of a map is the
//! left kernel `{x : x M = 0}` and the image is the row span of `M`.
//!
//! The canonical form for row spans is the Howell normal form. Over `Z/l^N`
//! it differs from a plain echelon form: for every column `j` it contains
//! generators for all span elements whose first `j` coordinates vanish, which
//! makes membership tests and canonical comparison of row spans valid. Over a
//! field (`N = 1`) it degenerates to the reduced row echelon form.

use thiserror::Error;

/// Errors from ring construction and matrix arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("modulus base {0} is not prime")]
    NotPrime(u64),
    #[error("modulus exponent must be at least 1")]
    ZeroExponent,
    #[error("modulus {l}^{n} overflows the scalar type")]
    Overflow { l: u64, n: u32 },
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("composite of the differentials is nonzero: not a complex")]
    NotAComplex,
    #[error("boundary row {0} lies outside the cycle span")]
    BoundaryOutsideCycles(usize),
    #[error("no solution to the linear system")]
    NoSolution,
}

/// The coefficient ring `Z/l^N` with `l` prime; `N = 1` gives the field `F_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoeffRing {
    l: u64,
    n: u32,
    modulus: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoeffRing {
    /// Build `Z/l^N`. Fails if `l` is not prime, `n = 0`, or `l^n` overflows.
    pub fn new(l: u64, n: u32) -> Result<Self, CoeffError> {
        if !is_prime(l) {
            return Err(CoeffError::NotPrime(l));
        }
        if n == 0 {
            return Err(CoeffError::ZeroExponent);
        }
        let mut modulus: u64 = 1;
        for _ in 0..n {
            modulus = modulus
                .checked_mul(l)
                .filter(|&m| m <= 1 << 62)
                .ok_or(CoeffError::Overflow { l, n })?;
        }
        Ok(CoeffRing { l, n, modulus })
    }

    /// The residue field `F_l`.
    pub fn field(l: u64) -> Result<Self, CoeffError> {
        CoeffRing::new(l, 1)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.n == 1
    }

    /// The ring `Z/l^1` with the same prime.
    pub fn residue_field(&self) -> CoeffRing {
        CoeffRing {
            l: self.l,
            n: 1,
            modulus: self.l,
        }
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn reduce_signed(&self, x: i64) -> u64 {
        let m = self.modulus as i64;
        (((x % m) + m) % m) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a % self.modulus == 0 {
            0
        } else {
            self.modulus - a % self.modulus
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// `l`-adic valuation of the canonical representative; `val(0) = N`.
    pub fn val(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.n;
        }
        let mut v = 0;
        while x % self.l == 0 {
            x /= self.l;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        x % self.l != 0 && x % self.modulus != 0
    }

    /// Inverse of a unit; errors on non-units (multiples of `l`).
    pub fn inv(&self, x: u64) -> Result<u64, CoeffError> {
        let x = x % self.modulus;
        if !self.is_unit(x) {
            return Err(CoeffError::NotAUnit(x, self.modulus));
        }
        // extended Euclid on (x, modulus)
        let (mut r0, mut r1) = (x as i128, self.modulus as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.modulus as i128;
        Ok((((s0 % m) + m) % m) as u64)
    }

    pub fn pow(&self, x: u64, e: u32) -> u64 {
        let mut acc = 1u64;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }
}

/// Dense row-major matrix over a [`CoeffRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zero(ring: CoeffRing, rows: usize, cols: usize) -> Mat {
        Mat {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: CoeffRing, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; all rows must share a length.
    pub fn from_rows(ring: CoeffRing, rows: Vec<Vec<u64>>) -> Result<Mat, CoeffError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(CoeffError::Shape(format!(
                    "ragged rows: expected {c} columns, found {}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| ring.reduce(x)));
        }
        Ok(Mat {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    /// A matrix with the given column count and no rows.
    pub fn empty(ring: CoeffRing, cols: usize) -> Mat {
        Mat::zero(ring, 0, cols)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = self.ring.reduce(x);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<u64> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row.iter().map(|&x| self.ring.reduce(x)));
        self.rows += 1;
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, CoeffError> {
        if self.ring != other.ring {
            return Err(CoeffError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(CoeffError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zero(self.ring, self.rows, other.cols);
        let m = self.ring.modulus() as u128;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u128;
                    let add = a as u128 * other.get(k, j) as u128 % m;
                    out.set(i, j, ((cur + add) % m) as u64);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, CoeffError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::Shape("add of unequal shapes".into()));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ring.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, CoeffError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::Shape("sub of unequal shapes".into()));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ring.sub(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.ring.mul(*a, c);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Stack rows of `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, CoeffError> {
        if self.cols != other.cols {
            return Err(CoeffError::Shape("vstack column mismatch".into()));
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        Ok(out)
    }

    /// Put columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, CoeffError> {
        if self.rows != other.rows {
            return Err(CoeffError::Shape("hstack row mismatch".into()));
        }
        let mut out = Mat::zero(self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Keep the columns in `[lo, hi)`.
    pub fn column_slice(&self, lo: usize, hi: usize) -> Mat {
        let mut out = Mat::zero(self.ring, self.rows, hi - lo);
        for i in 0..self.rows {
            for j in lo..hi {
                out.set(i, j - lo, self.get(i, j));
            }
        }
        out
    }

    fn leading(row: &[u64]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    /// Howell normal form of the row span. Zero rows are dropped; rows are
    /// ordered by strictly increasing pivot column; each pivot is a power of
    /// `l`; entries above a pivot are reduced modulo the pivot; and the span
    /// of rows with pivot column `>= j` contains every span element whose
    /// first `j` coordinates vanish.
    pub fn howell_form(&self) -> Mat {
        let ring = self.ring;
        let l = ring.l();
        let n = ring.exponent();
        let mut work: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row_vec(i))
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut result: Vec<Vec<u64>> = Vec::new();
        for col in 0..self.cols {
            // rows whose leading entry sits exactly in this column
            let mut best: Option<usize> = None;
            for (i, r) in work.iter().enumerate() {
                if Mat::leading(r) == Some(col) {
                    let better = match best {
                        None => true,
                        Some(b) => ring.val(r[col]) < ring.val(work[b][col]),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            let Some(bi) = best else { continue };
            let mut piv = work.swap_remove(bi);
            let e = ring.val(piv[col]);
            let unit = piv[col] / ring.pow(l, e).max(1);
            let uinv = ring.inv(unit).expect("unit part is invertible");
            for x in piv.iter_mut() {
                *x = ring.mul(*x, uinv);
            }
            let le = ring.pow(l, e);
            // clear this column in the remaining working rows
            for r in work.iter_mut() {
                if Mat::leading(r) == Some(col) {
                    let q = r[col] / le;
                    for (a, &b) in r.iter_mut().zip(&piv) {
                        *a = ring.sub(*a, ring.mul(q, b));
                    }
                }
            }
            // annihilator shadow keeps the Howell property over Z/l^N
            if e > 0 {
                let mult = ring.pow(l, n - e);
                let shadow: Vec<u64> = piv.iter().map(|&x| ring.mul(x, mult)).collect();
                if shadow.iter().any(|&x| x != 0) {
                    work.push(shadow);
                }
            }
            work.retain(|r| r.iter().any(|&x| x != 0));
            result.push(piv);
        }
        // reduce entries above each pivot modulo the pivot value
        for i in 0..result.len() {
            let col = Mat::leading(&result[i]).unwrap();
            let e = ring.val(result[i][col]);
            let le = ring.pow(l, e);
            for k in 0..i {
                let q = result[k][col] / le;
                if q != 0 {
                    for j in 0..self.cols {
                        let sub = ring.mul(q, result[i][j]);
                        result[k][j] = ring.sub(result[k][j], sub);
                    }
                }
            }
        }
        let cols = self.cols;
        let rows = result.len();
        Mat {
            ring,
            rows,
            cols,
            data: result.into_iter().flatten().collect(),
        }
    }

    /// Pivot positions `(column, l-adic valuation of pivot)` of a matrix in
    /// Howell form.
    pub fn pivots(&self) -> Vec<(usize, u32)> {
        (0..self.rows)
            .map(|i| {
                let c = Mat::leading(self.row(i)).expect("Howell form has no zero rows");
                (c, self.ring.val(self.get(i, c)))
            })
            .collect()
    }

    /// `log_l` of the number of elements in the row span (`self` must be in
    /// Howell form).
    pub fn span_size_exponent(&self) -> u64 {
        let n = self.ring.exponent() as u64;
        self.pivots().iter().map(|&(_, e)| n - e as u64).sum()
    }

    /// Reduce `v` against a Howell form; returns the remainder and the
    /// combination coefficients of the rows used.
    fn reduce_against(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let ring = self.ring;
        let l = ring.l();
        let mut rem: Vec<u64> = v.iter().map(|&x| ring.reduce(x)).collect();
        let mut coeffs = vec![0u64; self.rows];
        for i in 0..self.rows {
            let col = Mat::leading(self.row(i)).unwrap();
            if rem[col] == 0 {
                continue;
            }
            let e = ring.val(self.get(i, col));
            if ring.val(rem[col]) < e {
                continue; // cannot be cleared by this pivot
            }
            let q = rem[col] / ring.pow(l, e);
            coeffs[i] = q;
            for j in 0..self.cols {
                let sub = ring.mul(q, self.get(i, j));
                rem[j] = ring.sub(rem[j], sub);
            }
        }
        (rem, coeffs)
    }

    /// Membership of `v` in the row span of a Howell-form matrix.
    pub fn span_contains(&self, v: &[u64]) -> bool {
        self.reduce_against(v).0.iter().all(|&x| x == 0)
    }

    /// Basis (in Howell form) of the left kernel `{x : x * self = 0}`.
    pub fn kernel_basis(&self) -> Mat {
        if self.rows == 0 {
            return Mat::empty(self.ring, 0);
        }
        // Howell form of [self | I]: rows with zero left block give the kernel.
        let aug = self
            .hstack(&Mat::identity(self.ring, self.rows))
            .expect("shapes agree");
        let h = aug.howell_form();
        let mut gens = Mat::empty(self.ring, self.rows);
        for i in 0..h.rows() {
            if h.row(i)[..self.cols].iter().all(|&x| x == 0) {
                gens.push_row(&h.row(i)[self.cols..]);
            }
        }
        gens.howell_form()
    }

    /// One solution of `x * self = b`, if any (canonical: built from Howell
    /// reduction, so repeated calls return the same representative).
    pub fn solve_left(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.cols, "rhs length mismatch");
        if self.rows == 0 {
            return if b.iter().all(|&x| self.ring.reduce(x) == 0) {
                Some(vec![])
            } else {
                None
            };
        }
        let aug = self
            .hstack(&Mat::identity(self.ring, self.rows))
            .expect("shapes agree");
        let h = aug.howell_form();
        // reduce b against the left blocks of the Howell rows
        let ring = self.ring;
        let l = ring.l();
        let mut rem: Vec<u64> = b.iter().map(|&x| ring.reduce(x)).collect();
        let mut x = vec![0u64; self.rows];
        for i in 0..h.rows() {
            let row = h.row(i);
            let Some(col) = Mat::leading(&row[..self.cols]) else {
                continue;
            };
            if rem[col] == 0 {
                continue;
            }
            let e = ring.val(row[col]);
            if ring.val(rem[col]) < e {
                return None;
            }
            let q = rem[col] / ring.pow(l, e);
            for j in 0..self.cols {
                rem[j] = ring.sub(rem[j], ring.mul(q, row[j]));
            }
            for j in 0..self.rows {
                x[j] = ring.add(x[j], ring.mul(q, row[self.cols + j]));
            }
        }
        if rem.iter().all(|&v| v == 0) {
            Some(x)
        } else {
            None
        }
    }

    /// Diagonal `l`-adic valuations of the Smith-style normal form over
    /// `Z/l^N` (row and column operations). Ascending; zero diagonal entries
    /// are reported with valuation `N`.
    pub fn smith_valuations(&self) -> Vec<u32> {
        let ring = self.ring;
        let l = ring.l();
        let mut a = self.clone();
        let steps = self.rows.min(self.cols);
        let mut vals = Vec::new();
        for step in 0..steps {
            // locate minimal valuation in the trailing block
            let mut best: Option<(usize, usize, u32)> = None;
            for r in step..a.rows {
                for c in step..a.cols {
                    let x = a.get(r, c);
                    if x != 0 {
                        let v = ring.val(x);
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((r, c, v));
                        }
                    }
                }
            }
            let Some((pr, pc, e)) = best else {
                break;
            };
            // swap into place
            for j in 0..a.cols {
                let (x, y) = (a.get(step, j), a.get(pr, j));
                a.set(step, j, y);
                a.set(pr, j, x);
            }
            for i in 0..a.rows {
                let (x, y) = (a.get(i, step), a.get(i, pc));
                a.set(i, step, y);
                a.set(i, pc, x);
            }
            let le = ring.pow(l, e);
            let unit = a.get(step, step) / le;
            let uinv = ring.inv(unit).expect("unit part invertible");
            for j in 0..a.cols {
                let x = ring.mul(a.get(step, j), uinv);
                a.set(step, j, x);
            }
            for r in step + 1..a.rows {
                let q = a.get(r, step) / le;
                if q != 0 {
                    for j in 0..a.cols {
                        let sub = ring.mul(q, a.get(step, j));
                        let x = ring.sub(a.get(r, j), sub);
                        a.set(r, j, x);
                    }
                }
            }
            for c in step + 1..a.cols {
                let q = a.get(step, c) / le;
                if q != 0 {
                    for i in 0..a.rows {
                        let sub = ring.mul(q, a.get(i, step));
                        let x = ring.sub(a.get(i, c), sub);
                        a.set(i, c, x);
                    }
                }
            }
            vals.push(e);
        }
        vals
    }

    /// Greedy complement: standard basis vectors extending the row span of a
    /// Howell-form matrix to the full ambient module. Field coefficients only.
    pub fn complement_basis(&self) -> Mat {
        assert!(self.ring.is_field(), "complement basis needs a field");
        let mut acc = self.clone();
        let mut out = Mat::empty(self.ring, self.cols);
        for j in 0..self.cols {
            let mut e = vec![0u64; self.cols];
            e[j] = 1;
            if !acc.howell_form().span_contains(&e) {
                acc.push_row(&e);
                out.push_row(&e);
            }
        }
        out
    }
}

/// A subquotient `ker(d_out)/im(d_in)` of a free module, with canonical data.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ring: CoeffRing,
    ambient: usize,
    cycles: Mat,
    boundaries: Mat,
    invariant_factors: Vec<u64>,
    reps: Mat,
}

impl Subquotient {
    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// Rank of the ambient free module.
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Howell basis of the cycle span.
    pub fn cycles(&self) -> &Mat {
        &self.cycles
    }

    /// Howell basis of the boundary span.
    pub fn boundaries(&self) -> &Mat {
        &self.boundaries
    }

    /// Invariant factors of the subquotient: prime powers dividing `l^N`,
    /// ascending. Over `F_l` every factor is `l`.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of invariant factors; over `F_l` this is the dimension.
    pub fn dimension(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Chosen representative cycles: the first Howell cycles outside the span
    /// of the boundaries (and of the representatives already chosen). Over
    /// `F_l` the classes of these rows form a basis of the quotient.
    pub fn representatives(&self) -> &Mat {
        &self.reps
    }

    /// Does `v` represent the zero class (i.e. lie in the boundary span)?
    pub fn is_zero_class(&self, v: &[u64]) -> bool {
        self.boundaries.span_contains(v)
    }

    /// Coordinates of the class of `v` with respect to the representative
    /// rows, if `v` lies in the cycle span. Over `F_l` the coordinates are
    /// unique.
    pub fn class_coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let stacked = self.reps.vstack(&self.boundaries).expect("same ambient");
        let x = stacked.solve_left(v)?;
        Some(x[..self.reps.rows()].to_vec())
    }
}

/// Homology of `source --d_in--> middle --d_out--> end` at the middle term,
/// with maps acting on row vectors. Rejects pairs with `d_in * d_out != 0`.
pub fn homology(d_in: &Mat, d_out: &Mat) -> Result<Subquotient, CoeffError> {
    if d_in.ring() != d_out.ring() {
        return Err(CoeffError::RingMismatch);
    }
    let ring = d_in.ring();
    let mid = d_in.cols();
    if d_out.rows() != mid {
        return Err(CoeffError::Shape(format!(
            "middle rank mismatch: d_in has {} columns, d_out has {} rows",
            mid,
            d_out.rows()
        )));
    }
    if d_in.rows() > 0 && d_out.cols() > 0 && !d_in.mul(d_out)?.is_zero() {
        return Err(CoeffError::NotAComplex);
    }
    let cycles = if d_out.cols() == 0 {
        Mat::identity(ring, mid)
    } else {
        d_out.kernel_basis()
    };
    let boundaries = d_in.howell_form();
    for i in 0..boundaries.rows() {
        if !cycles.span_contains(boundaries.row(i)) {
            return Err(CoeffError::BoundaryOutsideCycles(i));
        }
    }
    // presentation of cycles/boundaries on the cycle generators
    let rz = cycles.rows();
    let mut pres = Mat::empty(ring, rz);
    for i in 0..boundaries.rows() {
        let coords = cycles
            .solve_left(boundaries.row(i))
            .expect("membership already checked");
        pres.push_row(&coords);
    }
    if rz > 0 {
        let rels = cycles.kernel_basis();
        for i in 0..rels.rows() {
            pres.push_row(rels.row(i));
        }
    }
    // Quotienting R^rz by a row span with Smith diagonal l^e_1, ..., l^e_k
    // leaves the sum of the quotients Z/l^e_j; generators not hit by any
    // diagonal entry contribute full Z/l^N factors. Valuation-0 diagonal
    // entries (unit pivots) kill their generator outright.
    let diag = pres.smith_valuations();
    let n = ring.exponent();
    let mut factors: Vec<u64> = Vec::new();
    for j in 0..rz {
        let e = diag.get(j).copied().unwrap_or(n).min(n);
        if e > 0 {
            // plain integer power: the factor l^N is the full modulus, which
            // would reduce to zero under ring arithmetic
            factors.push((0..e).fold(1u64, |acc, _| acc * ring.l()));
        }
    }
    factors.sort_unstable();
    // representative cycles: greedy against boundaries + chosen reps
    let mut acc = boundaries.clone();
    let mut reps = Mat::empty(ring, mid);
    for i in 0..cycles.rows() {
        let h = acc.howell_form();
        if !h.span_contains(cycles.row(i)) {
            reps.push_row(cycles.row(i));
            acc.push_row(cycles.row(i));
        }
    }
    Ok(Subquotient {
        ring,
        ambient: mid,
        cycles,
        boundaries,
        invariant_factors: factors,
        reps,
    })
}
