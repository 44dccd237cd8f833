//! Truncated positively graded Lie algebras given by structure constants.
//!
//! An algebra here is `L = L(1) + L(2) + ... + L(d)` with each piece a free
//! module of finite rank over the coefficient ring, brackets satisfying
//! `[L(i), L(j)] <= L(i+j)`, and every bracket landing above degree `d`
//! truncated to zero. Such algebras are nilpotent by construction. Brackets
//! are alternating (`[x, x] = 0`), which is stronger than antisymmetry when
//! `l = 2`.
//!
//! Basis elements are addressed as `(degree, index)` with degrees starting
//! at 1; the flat order sorts by degree, then index.

use crate::coeff::{CoeffError, CoeffRing, Mat};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedLieError {
    #[error("truncation degree must be at least 1")]
    BadTruncation,
    #[error("basis label count does not match the rank in degree {0}")]
    LabelCount(usize),
    #[error("basis index ({0},{1}) out of range")]
    BadIndex(usize, usize),
    #[error("bracket pairs must be listed once with (degree,index) lexicographically increasing; offending pair (({0},{1}),({2},{3}))")]
    BadPairOrder(usize, usize, usize, usize),
    #[error("bracket value for (({0},{1}),({2},{3})) leaves the graded piece of degree {4}")]
    GradingViolation(usize, usize, usize, usize, usize),
    #[error("bracket is not alternating at basis element ({0},{1})")]
    NotAlternating(usize, usize),
    #[error("bracket is not antisymmetric at pair (({0},{1}),({2},{3}))")]
    NotAntisymmetric(usize, usize, usize, usize),
    #[error("Jacobi identity fails on the basis triple (({0},{1}),({2},{3}),({4},{5}))")]
    JacobiViolation(usize, usize, usize, usize, usize, usize),
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("truncation degrees differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("morphism matrix for degree {0} has the wrong shape")]
    MorphismShape(usize),
    #[error("map does not respect brackets at pair (({0},{1}),({2},{3}))")]
    NotAMorphism(usize, usize, usize, usize),
    #[error("module action identity fails on ((({0},{1}),({2},{3})), module basis ({4},{5}))")]
    NotAModule(usize, usize, usize, usize, i64, usize),
    #[error("quotient constructions require field coefficients")]
    NeedsField,
    #[error("generator weights must be at least 1")]
    BadGeneratorWeight,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Homogeneous-by-degree element: one coordinate row per degree `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coords: Vec<Vec<u64>>,
}

impl Element {
    pub fn coords(&self) -> &[Vec<u64>] {
        &self.coords
    }

    pub fn degree_part(&self, deg: usize) -> &[u64] {
        &self.coords[deg - 1]
    }

    pub fn degree_part_mut(&mut self, deg: usize) -> &mut Vec<u64> {
        &mut self.coords[deg - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// The single degree in which the element is supported, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for (i, part) in self.coords.iter().enumerate() {
            if part.iter().any(|&x| x != 0) {
                if deg.is_some() {
                    return None;
                }
                deg = Some(i + 1);
            }
        }
        deg
    }
}

/// A truncated positively graded Lie algebra with explicit structure
/// constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    ring: CoeffRing,
    d: usize,
    ranks: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// Full ordered table: `table[(i,j)][a][b]` = coordinates of
    /// `[e_(i,a), e_(j,b)]` in the degree `i+j` piece; stored for all ordered
    /// pairs with `i + j <= d`.
    table: BTreeMap<(usize, usize), Vec<Vec<Vec<u64>>>>,
}

/// One structure constant entry: `[e_left, e_right] = sum of (index, coeff)`
/// in the piece of degree `left.0 + right.0`.
pub type BracketSpec = ((usize, usize), (usize, usize), Vec<(usize, u64)>);

impl GradedLieAlgebra {
    /// Build and validate an algebra from bracket data listed once per
    /// lexicographically increasing basis pair. Omitted pairs default to a
    /// zero bracket; the transposed and diagonal entries are derived.
    pub fn new(
        ring: CoeffRing,
        ranks: Vec<usize>,
        labels: Vec<Vec<String>>,
        brackets: &[BracketSpec],
    ) -> Result<Self, GradedLieError> {
        let alg = Self::new_unchecked(ring, ranks, labels, brackets)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Same as [`GradedLieAlgebra::new`] but skips the Jacobi and alternating
    /// checks. For building deliberately corrupted instances in tests and for
    /// the validator itself.
    pub fn new_unchecked(
        ring: CoeffRing,
        ranks: Vec<usize>,
        labels: Vec<Vec<String>>,
        brackets: &[BracketSpec],
    ) -> Result<Self, GradedLieError> {
        let d = ranks.len();
        if d == 0 {
            return Err(GradedLieError::BadTruncation);
        }
        let labels = if labels.is_empty() {
            ranks
                .iter()
                .enumerate()
                .map(|(i, &r)| (0..r).map(|a| format!("e{}_{}", i + 1, a)).collect())
                .collect()
        } else {
            labels
        };
        for (i, lab) in labels.iter().enumerate() {
            if lab.len() != ranks[i] {
                return Err(GradedLieError::LabelCount(i + 1));
            }
        }
        let mut table: BTreeMap<(usize, usize), Vec<Vec<Vec<u64>>>> = BTreeMap::new();
        for i in 1..=d {
            for j in 1..=d {
                if i + j <= d {
                    table.insert(
                        (i, j),
                        vec![vec![vec![0u64; ranks[i + j - 1]]; ranks[j - 1]]; ranks[i - 1]],
                    );
                }
            }
        }
        let mut seen: Vec<((usize, usize), (usize, usize))> = Vec::new();
        for &((di, a), (dj, b), ref value) in brackets {
            if di == 0 || di > d || a >= ranks[di - 1] {
                return Err(GradedLieError::BadIndex(di, a));
            }
            if dj == 0 || dj > d || b >= ranks[dj - 1] {
                return Err(GradedLieError::BadIndex(dj, b));
            }
            if (di, a) >= (dj, b) || seen.contains(&((di, a), (dj, b))) {
                return Err(GradedLieError::BadPairOrder(di, a, dj, b));
            }
            seen.push(((di, a), (dj, b)));
            let target = di + dj;
            if target > d {
                if !value.is_empty() {
                    return Err(GradedLieError::GradingViolation(di, a, dj, b, target));
                }
                continue;
            }
            let tr = ranks[target - 1];
            let mut row = vec![0u64; tr];
            for &(idx, coeff) in value {
                if idx >= tr {
                    return Err(GradedLieError::GradingViolation(di, a, dj, b, target));
                }
                row[idx] = ring.add(row[idx], coeff);
            }
            let neg: Vec<u64> = row.iter().map(|&x| ring.neg(x)).collect();
            table.get_mut(&(di, dj)).unwrap()[a][b] = row;
            table.get_mut(&(dj, di)).unwrap()[b][a] = neg;
        }
        Ok(GradedLieAlgebra {
            ring,
            d,
            ranks,
            labels,
            table,
        })
    }

    /// The abelian algebra with the given piece ranks.
    pub fn abelian(ring: CoeffRing, ranks: Vec<usize>) -> Result<Self, GradedLieError> {
        Self::new(ring, ranks, vec![], &[])
    }

    /// The zero algebra (one degree of rank zero).
    pub fn zero_algebra(ring: CoeffRing) -> Self {
        Self::abelian(ring, vec![0]).expect("zero algebra is valid")
    }

    /// The Heisenberg-type algebra: `x, y` in degree 1, `z` in degree 2,
    /// `[x, y] = z`.
    pub fn heisenberg(ring: CoeffRing) -> Self {
        Self::new(
            ring,
            vec![2, 1],
            vec![
                vec!["x".to_string(), "y".to_string()],
                vec!["z".to_string()],
            ],
            &[((1, 0), (1, 1), vec![(0, 1)])],
        )
        .expect("Heisenberg algebra is valid")
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// Truncation degree `d`.
    pub fn truncation(&self) -> usize {
        self.d
    }

    /// Rank of the degree-`deg` piece (zero outside `1..=d`).
    pub fn rank(&self, deg: usize) -> usize {
        if deg >= 1 && deg <= self.d {
            self.ranks[deg - 1]
        } else {
            0
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_dim(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn label(&self, deg: usize, idx: usize) -> &str {
        &self.labels[deg - 1][idx]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// All basis addresses in flat order (by degree, then index).
    pub fn basis(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.total_dim());
        for deg in 1..=self.d {
            for idx in 0..self.ranks[deg - 1] {
                out.push((deg, idx));
            }
        }
        out
    }

    /// Structure constants of `[e_(i,a), e_(j,b)]` as coordinates in degree
    /// `i+j`; empty slice when the product degree is truncated away.
    pub fn bracket_basis(&self, i: usize, a: usize, j: usize, b: usize) -> &[u64] {
        static EMPTY: &[u64] = &[];
        match self.table.get(&(i, j)) {
            Some(t) => &t[a][b],
            None => EMPTY,
        }
    }

    pub fn zero_element(&self) -> Element {
        Element {
            coords: self.ranks.iter().map(|&r| vec![0u64; r]).collect(),
        }
    }

    pub fn basis_element(&self, deg: usize, idx: usize) -> Element {
        let mut e = self.zero_element();
        e.coords[deg - 1][idx] = 1;
        e
    }

    pub fn element_from_coords(&self, coords: Vec<Vec<u64>>) -> Result<Element, GradedLieError> {
        if coords.len() != self.d {
            return Err(GradedLieError::BadTruncation);
        }
        for (i, part) in coords.iter().enumerate() {
            if part.len() != self.ranks[i] {
                return Err(GradedLieError::BadIndex(i + 1, part.len()));
            }
        }
        let coords = coords
            .into_iter()
            .map(|p| p.into_iter().map(|x| self.ring.reduce(x)).collect())
            .collect();
        Ok(Element { coords })
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(&u, &v)| self.ring.add(u, v))
                    .collect()
            })
            .collect();
        Element { coords }
    }

    pub fn scale(&self, c: u64, x: &Element) -> Element {
        let coords = x
            .coords
            .iter()
            .map(|p| p.iter().map(|&u| self.ring.mul(c, u)).collect())
            .collect();
        Element { coords }
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add(x, &self.scale(self.ring.neg(1), y))
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero_element();
        for i in 1..=self.d {
            for j in 1..=self.d {
                if i + j > self.d {
                    continue;
                }
                let target = &mut out.coords[i + j - 1];
                for a in 0..self.ranks[i - 1] {
                    let xa = x.coords[i - 1][a];
                    if xa == 0 {
                        continue;
                    }
                    for b in 0..self.ranks[j - 1] {
                        let yb = y.coords[j - 1][b];
                        if yb == 0 {
                            continue;
                        }
                        let c = self.ring.mul(xa, yb);
                        for (t, &s) in target.iter_mut().zip(self.bracket_basis(i, a, j, b)) {
                            *t = self.ring.add(*t, self.ring.mul(c, s));
                        }
                    }
                }
            }
        }
        out
    }

    /// Check alternating brackets, antisymmetry of the stored table, grading
    /// bounds (guaranteed by the representation), and the graded Jacobi
    /// identity on all basis triples.
    pub fn validate(&self) -> Result<(), GradedLieError> {
        for deg in 1..=self.d {
            for a in 0..self.ranks[deg - 1] {
                if self
                    .bracket_basis(deg, a, deg, a)
                    .iter()
                    .any(|&x| x != 0)
                {
                    return Err(GradedLieError::NotAlternating(deg, a));
                }
            }
        }
        let basis = self.basis();
        for &(i, a) in &basis {
            for &(j, b) in &basis {
                if i + j > self.d {
                    continue;
                }
                let fwd = self.bracket_basis(i, a, j, b);
                let bwd = self.bracket_basis(j, b, i, a);
                if fwd
                    .iter()
                    .zip(bwd)
                    .any(|(&f, &w)| self.ring.add(f, w) != 0)
                {
                    return Err(GradedLieError::NotAntisymmetric(i, a, j, b));
                }
            }
        }
        for &(i, a) in &basis {
            for &(j, b) in &basis {
                for &(k, c) in &basis {
                    if i + j + k > self.d {
                        continue;
                    }
                    let x = self.basis_element(i, a);
                    let y = self.basis_element(j, b);
                    let z = self.basis_element(k, c);
                    let s1 = self.bracket(&self.bracket(&x, &y), &z);
                    let s2 = self.bracket(&self.bracket(&y, &z), &x);
                    let s3 = self.bracket(&self.bracket(&z, &x), &y);
                    if !self.add(&self.add(&s1, &s2), &s3).is_zero() {
                        return Err(GradedLieError::JacobiViolation(i, a, j, b, k, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The quotient `L / (pieces of degree >= n)`. For positively graded
    /// algebras the span of the pieces of degree `>= n` contains all `n`-fold
    /// brackets, so this is the quotient by the `n`-th lower central term.
    /// The ambient truncation degree is kept (pieces of degree `>= n` become
    /// rank zero) so the projection is an equal-truncation morphism.
    pub fn central_quotient(&self, n: usize) -> (GradedLieAlgebra, GradedMorphism) {
        let keep = n.saturating_sub(1).min(self.d); // pieces 1..=keep survive
        let mut ranks = vec![0usize; self.d];
        let mut labels = vec![Vec::new(); self.d];
        for i in 0..keep {
            ranks[i] = self.ranks[i];
            labels[i] = self.labels[i].clone();
        }
        let mut table = BTreeMap::new();
        for i in 1..=self.d {
            for j in 1..=self.d {
                if i + j <= self.d {
                    let tab: Vec<Vec<Vec<u64>>> = (0..ranks[i - 1])
                        .map(|a| {
                            (0..ranks[j - 1])
                                .map(|b| {
                                    if i + j <= keep {
                                        self.bracket_basis(i, a, j, b).to_vec()
                                    } else {
                                        Vec::new()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    table.insert((i, j), tab);
                }
            }
        }
        let quot = GradedLieAlgebra {
            ring: self.ring,
            d: self.d,
            ranks,
            labels,
            table,
        };
        let mut proj_mats = Vec::new();
        for deg in 1..=self.d {
            let rows = self.ranks[deg - 1];
            let cols = quot.rank(deg);
            let mut m = Mat::zero(self.ring, rows, cols);
            for a in 0..cols.min(rows) {
                m.set(a, a, 1);
            }
            proj_mats.push(m);
        }
        let proj = GradedMorphism {
            ring: self.ring,
            mats: proj_mats,
            source_d: self.d,
            target_d: quot.d,
        };
        (quot, proj)
    }

    /// Entrywise reduction of the structure constants to `F_l`.
    pub fn reduce_mod_l(&self) -> GradedLieAlgebra {
        let fld = self.ring.residue_field();
        let mut table = BTreeMap::new();
        for (&key, tab) in &self.table {
            let new_tab: Vec<Vec<Vec<u64>>> = tab
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|&x| fld.reduce(x)).collect())
                        .collect()
                })
                .collect();
            table.insert(key, new_tab);
        }
        GradedLieAlgebra {
            ring: fld,
            d: self.d,
            ranks: self.ranks.clone(),
            labels: self.labels.clone(),
            table,
        }
    }

    /// Direct sum with componentwise brackets and zero cross brackets.
    pub fn direct_sum(&self, other: &GradedLieAlgebra) -> Result<GradedLieAlgebra, GradedLieError> {
        if self.ring != other.ring {
            return Err(GradedLieError::RingMismatch);
        }
        if self.d != other.d {
            return Err(GradedLieError::TruncationMismatch(self.d, other.d));
        }
        let ranks: Vec<usize> = (1..=self.d).map(|i| self.rank(i) + other.rank(i)).collect();
        let labels: Vec<Vec<String>> = (1..=self.d)
            .map(|i| {
                let mut l: Vec<String> = (0..self.rank(i))
                    .map(|a| format!("a.{}", self.label(i, a)))
                    .collect();
                l.extend((0..other.rank(i)).map(|a| format!("b.{}", other.label(i, a))));
                l
            })
            .collect();
        let mut table = BTreeMap::new();
        for i in 1..=self.d {
            for j in 1..=self.d {
                if i + j > self.d {
                    continue;
                }
                let (ri, rj, rt) = (ranks[i - 1], ranks[j - 1], ranks[i + j - 1]);
                let (si, sj, st) = (self.rank(i), self.rank(j), self.rank(i + j));
                let mut tab = vec![vec![vec![0u64; rt]; rj]; ri];
                for a in 0..si {
                    for b in 0..sj {
                        let v = self.bracket_basis(i, a, j, b);
                        for (c, &x) in v.iter().enumerate() {
                            tab[a][b][c] = x;
                        }
                    }
                }
                for a in 0..other.rank(i) {
                    for b in 0..other.rank(j) {
                        let v = other.bracket_basis(i, a, j, b);
                        for (c, &x) in v.iter().enumerate() {
                            tab[si + a][sj + b][st + c] = x;
                        }
                    }
                }
                table.insert((i, j), tab);
            }
        }
        Ok(GradedLieAlgebra {
            ring: self.ring,
            d: self.d,
            ranks,
            labels,
            table,
        })
    }
}

/// A degree-preserving linear map between equal-truncation algebras, one
/// matrix per degree acting on coordinate rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    ring: CoeffRing,
    source_d: usize,
    target_d: usize,
    mats: Vec<Mat>,
}

impl GradedMorphism {
    /// Build from per-degree matrices (`source rank x target rank`) and check
    /// shapes against the two algebras; bracket compatibility is checked by
    /// [`GradedMorphism::validate`].
    pub fn new(
        source: &GradedLieAlgebra,
        target: &GradedLieAlgebra,
        mats: Vec<Mat>,
    ) -> Result<Self, GradedLieError> {
        if source.ring() != target.ring() {
            return Err(GradedLieError::RingMismatch);
        }
        if source.truncation() != target.truncation() {
            return Err(GradedLieError::TruncationMismatch(
                source.truncation(),
                target.truncation(),
            ));
        }
        if mats.len() != source.truncation() {
            return Err(GradedLieError::MorphismShape(mats.len()));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != source.rank(i + 1) || m.cols() != target.rank(i + 1) {
                return Err(GradedLieError::MorphismShape(i + 1));
            }
        }
        Ok(GradedMorphism {
            ring: source.ring(),
            source_d: source.truncation(),
            target_d: target.truncation(),
            mats,
        })
    }

    pub fn identity(alg: &GradedLieAlgebra) -> Self {
        let mats = (1..=alg.truncation())
            .map(|i| Mat::identity(alg.ring(), alg.rank(i)))
            .collect();
        GradedMorphism {
            ring: alg.ring(),
            source_d: alg.truncation(),
            target_d: alg.truncation(),
            mats,
        }
    }

    pub fn zero_map(source: &GradedLieAlgebra, target: &GradedLieAlgebra) -> Result<Self, GradedLieError> {
        let mats = (1..=source.truncation())
            .map(|i| Mat::zero(source.ring(), source.rank(i), target.rank(i)))
            .collect();
        GradedMorphism::new(source, target, mats)
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.mats
    }

    pub fn matrix(&self, deg: usize) -> &Mat {
        &self.mats[deg - 1]
    }

    pub fn apply(&self, x: &Element) -> Element {
        let coords = x
            .coords
            .iter()
            .zip(&self.mats)
            .map(|(part, m)| {
                let mut out = vec![0u64; m.cols()];
                for (a, &xa) in part.iter().enumerate() {
                    if xa == 0 {
                        continue;
                    }
                    for (o, c) in out.iter_mut().zip(0..m.cols()) {
                        *o = self.ring.add(*o, self.ring.mul(xa, m.get(a, c)));
                    }
                }
                out
            })
            .collect();
        Element { coords }
    }

    /// `other` after `self` (apply `self` first).
    pub fn then(&self, other: &GradedMorphism) -> Result<GradedMorphism, GradedLieError> {
        if self.target_d != other.source_d {
            return Err(GradedLieError::TruncationMismatch(
                self.target_d,
                other.source_d,
            ));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GradedMorphism {
            ring: self.ring,
            source_d: self.source_d,
            target_d: other.target_d,
            mats,
        })
    }

    /// Bracket compatibility on all basis pairs of the source.
    pub fn validate(
        &self,
        source: &GradedLieAlgebra,
        target: &GradedLieAlgebra,
    ) -> Result<(), GradedLieError> {
        for (i, a) in source.basis() {
            for (j, b) in source.basis() {
                if i + j > source.truncation() {
                    continue;
                }
                let lhs = self.apply(&{
                    let mut e = source.zero_element();
                    let v = source.bracket_basis(i, a, j, b);
                    e.coords[i + j - 1] = v.to_vec();
                    e
                });
                let fx = self.apply(&source.basis_element(i, a));
                let fy = self.apply(&source.basis_element(j, b));
                let rhs = target.bracket(&fx, &fy);
                if lhs != rhs {
                    return Err(GradedLieError::NotAMorphism(i, a, j, b));
                }
            }
        }
        Ok(())
    }

    /// Surjective in every degree?
    pub fn is_surjective(&self) -> bool {
        self.mats
            .iter()
            .all(|m| m.howell_form().span_size_exponent() == (m.ring().exponent() as u64) * m.cols() as u64)
    }

    /// Per-degree kernel bases.
    pub fn kernel(&self) -> Vec<Mat> {
        self.mats.iter().map(|m| m.kernel_basis()).collect()
    }
}

/// A graded module over a graded Lie algebra, with pieces indexed by a
/// (possibly shifted) integer range and action constants
/// `action[(ldeg, mdeg)][a][b]` = coordinates of `e_(ldeg,a) . m_(mdeg,b)` in
/// module degree `ldeg + mdeg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    ring: CoeffRing,
    lo: i64,
    ranks: Vec<usize>,
    action: BTreeMap<(usize, i64), Vec<Vec<Vec<u64>>>>,
}

impl LieModule {
    pub fn new(
        ring: CoeffRing,
        lo: i64,
        ranks: Vec<usize>,
        action: BTreeMap<(usize, i64), Vec<Vec<Vec<u64>>>>,
    ) -> Self {
        LieModule {
            ring,
            lo,
            ranks,
            action,
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.ranks.len() as i64 - 1)
    }

    pub fn rank(&self, deg: i64) -> usize {
        if deg < self.lo {
            return 0;
        }
        let off = (deg - self.lo) as usize;
        self.ranks.get(off).copied().unwrap_or(0)
    }

    /// Coordinates of `e_(ldeg,a) . m_(mdeg,b)` in module degree
    /// `ldeg + mdeg`; empty when out of range.
    pub fn act_basis(&self, ldeg: usize, a: usize, mdeg: i64, b: usize) -> &[u64] {
        static EMPTY: &[u64] = &[];
        match self.action.get(&(ldeg, mdeg)) {
            Some(t) => t.get(a).and_then(|r| r.get(b)).map(|v| &v[..]).unwrap_or(EMPTY),
            None => EMPTY,
        }
    }

    /// Module axiom `[x,y].m = x.(y.m) - y.(x.m)` on all basis triples.
    pub fn validate(&self, alg: &GradedLieAlgebra) -> Result<(), GradedLieError> {
        let (mlo, mhi) = self.degree_range();
        for (i, a) in alg.basis() {
            for (j, b) in alg.basis() {
                for mdeg in mlo..=mhi {
                    for c in 0..self.rank(mdeg) {
                        // lhs: [x,y].m
                        let mut lhs = vec![0u64; self.rank(i as i64 + j as i64 + mdeg)];
                        if i + j <= alg.truncation() {
                            for (t, &coef) in alg.bracket_basis(i, a, j, b).iter().enumerate() {
                                if coef == 0 {
                                    continue;
                                }
                                for (o, &v) in lhs
                                    .iter_mut()
                                    .zip(self.act_basis(i + j, t, mdeg, c))
                                {
                                    *o = self.ring.add(*o, self.ring.mul(coef, v));
                                }
                            }
                        }
                        // rhs: x.(y.m) - y.(x.m)
                        let mut rhs = vec![0u64; self.rank(i as i64 + j as i64 + mdeg)];
                        for (t, &coef) in self.act_basis(j, b, mdeg, c).iter().enumerate() {
                            if coef == 0 {
                                continue;
                            }
                            for (o, &v) in rhs
                                .iter_mut()
                                .zip(self.act_basis(i, a, j as i64 + mdeg, t))
                            {
                                *o = self.ring.add(*o, self.ring.mul(coef, v));
                            }
                        }
                        for (t, &coef) in self.act_basis(i, a, mdeg, c).iter().enumerate() {
                            if coef == 0 {
                                continue;
                            }
                            for (o, &v) in rhs
                                .iter_mut()
                                .zip(self.act_basis(j, b, i as i64 + mdeg, t))
                            {
                                *o = self.ring.sub(*o, self.ring.mul(coef, v));
                            }
                        }
                        if lhs != rhs {
                            return Err(GradedLieError::NotAModule(i, a, j, b, mdeg, c));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The adjoint module: `M = L` with `x . m = [x, m]`.
pub fn adjoint_module(alg: &GradedLieAlgebra) -> LieModule {
    let d = alg.truncation();
    let mut action = BTreeMap::new();
    for i in 1..=d {
        for j in 1..=d {
            if i + j > d {
                continue;
            }
            let tab: Vec<Vec<Vec<u64>>> = (0..alg.rank(i))
                .map(|a| {
                    (0..alg.rank(j))
                        .map(|b| alg.bracket_basis(i, a, j, b).to_vec())
                        .collect()
                })
                .collect();
            action.insert((i, j as i64), tab);
        }
    }
    LieModule::new(alg.ring(), 1, alg.ranks().to_vec(), action)
}

/// The module structure on the target of a map `rho: G -> L` via
/// `x . m = [rho(x), m]`; requires `rho` to be a bracket morphism.
pub fn pullback_module(
    source: &GradedLieAlgebra,
    target: &GradedLieAlgebra,
    rho: &GradedMorphism,
) -> LieModule {
    let d = source.truncation();
    let mut action = BTreeMap::new();
    for i in 1..=d {
        for j in 1..=d {
            if i + j > d {
                continue;
            }
            let tab: Vec<Vec<Vec<u64>>> = (0..source.rank(i))
                .map(|a| {
                    let img = rho.apply(&source.basis_element(i, a));
                    (0..target.rank(j))
                        .map(|b| {
                            let m = target.basis_element(j, b);
                            target.bracket(&img, &m).coords()[i + j - 1].clone()
                        })
                        .collect()
                })
                .collect();
            action.insert((i, j as i64), tab);
        }
    }
    LieModule::new(source.ring(), 1, target.ranks().to_vec(), action)
}

// ---------------------------------------------------------------------------
// Free Lie algebras on weighted generators, Lyndon-word basis
// ---------------------------------------------------------------------------

/// A free Lie algebra truncated at degree `d`, with its Lyndon-word basis.
/// Basis elements of weight `m` are the standard bracketings of Lyndon words
/// of total weight `m`, ordered lexicographically by word.
#[derive(Debug, Clone)]
pub struct FreeLie {
    algebra: GradedLieAlgebra,
    /// Lyndon words per degree (letters index the generators).
    words: Vec<Vec<Vec<u8>>>,
    /// `(degree, index)` of each generator in the basis.
    generators: Vec<(usize, usize)>,
    weights: Vec<usize>,
}

fn is_lyndon(w: &[u8]) -> bool {
    // strictly smaller than all proper rotations
    let n = w.len();
    if n == 0 {
        return false;
    }
    for r in 1..n {
        let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
        if rot.as_slice() <= w {
            return false;
        }
    }
    true
}

/// Standard factorization of a Lyndon word of length >= 2: `w = u v` with `v`
/// the lexicographically least proper suffix; both factors are Lyndon.
fn standard_factorization(w: &[u8]) -> (Vec<u8>, Vec<u8>) {
    debug_assert!(w.len() >= 2);
    let mut best = 1;
    for s in 2..w.len() {
        if w[s..] < w[best..] {
            best = s;
        }
    }
    (w[..best].to_vec(), w[best..].to_vec())
}

type Poly = BTreeMap<Vec<u8>, i64>;

fn poly_add(acc: &mut Poly, other: &Poly, scale: i64) {
    for (k, &v) in other {
        let e = acc.entry(k.clone()).or_insert(0);
        *e += scale * v;
        if *e == 0 {
            acc.remove(k);
        }
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, &va) in a {
        for (kb, &vb) in b {
            let mut k = ka.clone();
            k.extend_from_slice(kb);
            let e = out.entry(k).or_insert(0);
            *e += va * vb;
            if *e == 0 {
                // keep map clean
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Noncommutative expansion of the standard bracketing of a Lyndon word.
fn lyndon_poly(w: &[u8], cache: &mut BTreeMap<Vec<u8>, Poly>) -> Poly {
    if let Some(p) = cache.get(w) {
        return p.clone();
    }
    let p = if w.len() == 1 {
        let mut p = Poly::new();
        p.insert(w.to_vec(), 1);
        p
    } else {
        let (u, v) = standard_factorization(w);
        let pu = lyndon_poly(&u, cache);
        let pv = lyndon_poly(&v, cache);
        let mut p = poly_mul(&pu, &pv);
        poly_add(&mut p, &poly_mul(&pv, &pu), -1);
        p
    };
    cache.insert(w.to_vec(), p.clone());
    p
}

/// Rewrite a Lie element of the tensor algebra in the Lyndon basis. The
/// standard bracketing of a Lyndon word expands as the word itself plus
/// lexicographically larger words, so repeatedly stripping the least word
/// terminates and recovers the basis coordinates.
fn rewrite_in_lyndon(mut q: Poly, cache: &mut BTreeMap<Vec<u8>, Poly>) -> BTreeMap<Vec<u8>, i64> {
    let mut out = BTreeMap::new();
    while let Some((w, &c)) = q.iter().next() {
        let w = w.clone();
        debug_assert!(is_lyndon(&w), "least word of a Lie element must be Lyndon");
        let p = lyndon_poly(&w, cache);
        poly_add(&mut q, &p, -c);
        out.insert(w, c);
    }
    out
}

fn bracket_label(w: &[u8], names: &[String]) -> String {
    if w.len() == 1 {
        names[w[0] as usize].clone()
    } else {
        let (u, v) = standard_factorization(w);
        format!("[{},{}]", bracket_label(&u, names), bracket_label(&v, names))
    }
}

/// The free Lie algebra on generators with the given names and weights,
/// truncated at degree `d`. Structure constants come from rewriting brackets
/// of standard bracketings in the Lyndon basis inside the tensor algebra.
pub fn free_lie_truncated(
    ring: CoeffRing,
    generators: &[(String, usize)],
    d: usize,
) -> Result<FreeLie, GradedLieError> {
    if d == 0 {
        return Err(GradedLieError::BadTruncation);
    }
    if generators.iter().any(|&(_, w)| w == 0) {
        return Err(GradedLieError::BadGeneratorWeight);
    }
    let g = generators.len();
    let weights: Vec<usize> = generators.iter().map(|&(_, w)| w).collect();
    let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
    // enumerate words of each weight, keep Lyndon ones in lex order
    let mut words: Vec<Vec<Vec<u8>>> = vec![Vec::new(); d];
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    // breadth-first by word length; weights bound the length by d
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            let wt: usize = w.iter().map(|&c| weights[c as usize]).sum();
            for c in 0..g as u8 {
                let nwt = wt + weights[c as usize];
                if nwt <= d {
                    let mut nw = w.clone();
                    nw.push(c);
                    if is_lyndon(&nw) {
                        words[nwt - 1].push(nw.clone());
                    }
                    next.push(nw);
                }
            }
        }
        frontier = next;
    }
    for lst in words.iter_mut() {
        lst.sort();
        lst.dedup();
    }
    let ranks: Vec<usize> = words.iter().map(|l| l.len()).collect();
    let labels: Vec<Vec<String>> = words
        .iter()
        .map(|lst| lst.iter().map(|w| bracket_label(w, &names)).collect())
        .collect();
    // index of each word within its weight
    let index_of = |w: &[u8], words: &Vec<Vec<Vec<u8>>>| -> (usize, usize) {
        let wt: usize = w.iter().map(|&c| weights[c as usize]).sum();
        let idx = words[wt - 1]
            .binary_search_by(|cand| cand.as_slice().cmp(w))
            .expect("Lyndon word is in the basis");
        (wt, idx)
    };
    let mut cache = BTreeMap::new();
    let mut brackets: Vec<BracketSpec> = Vec::new();
    for i in 1..=d {
        for a in 0..ranks[i - 1] {
            for j in i..=d {
                if i + j > d {
                    continue;
                }
                for b in 0..ranks[j - 1] {
                    if j == i && b <= a {
                        continue;
                    }
                    let wu = words[i - 1][a].clone();
                    let wv = words[j - 1][b].clone();
                    let pu = lyndon_poly(&wu, &mut cache);
                    let pv = lyndon_poly(&wv, &mut cache);
                    let mut q = poly_mul(&pu, &pv);
                    poly_add(&mut q, &poly_mul(&pv, &pu), -1);
                    let expr = rewrite_in_lyndon(q, &mut cache);
                    let mut value = Vec::new();
                    for (w, c) in expr {
                        let (wt, idx) = index_of(&w, &words);
                        debug_assert_eq!(wt, i + j);
                        value.push((idx, ring.reduce_signed(c)));
                    }
                    if !value.is_empty() {
                        brackets.push(((i, a), (j, b), value));
                    }
                }
            }
        }
    }
    let algebra = GradedLieAlgebra::new(ring, ranks, labels, &brackets)?;
    let generators: Vec<(usize, usize)> = (0..g)
        .map(|c| index_of(&[c as u8], &words))
        .collect();
    Ok(FreeLie {
        algebra,
        words,
        generators,
        weights,
    })
}

impl FreeLie {
    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> GradedLieAlgebra {
        self.algebra
    }

    /// `(degree, index)` positions of the generators in the basis.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn generator_weights(&self) -> &[usize] {
        &self.weights
    }

    /// The unique bracket morphism extending degree-respecting generator
    /// images into a target with the same truncation. Every basis element is
    /// the standard bracketing of its word, so images follow recursively.
    pub fn extend_to_morphism(
        &self,
        target: &GradedLieAlgebra,
        images: &[Element],
    ) -> Result<GradedMorphism, GradedLieError> {
        let d = self.algebra.truncation();
        if target.truncation() != d {
            return Err(GradedLieError::TruncationMismatch(d, target.truncation()));
        }
        if images.len() != self.generators.len() {
            return Err(GradedLieError::MorphismShape(0));
        }
        for (gi, img) in images.iter().enumerate() {
            let (gdeg, _) = self.generators[gi];
            for (i, part) in img.coords().iter().enumerate() {
                if i + 1 != gdeg && part.iter().any(|&x| x != 0) {
                    return Err(GradedLieError::MorphismShape(gdeg));
                }
            }
        }
        // image of each Lyndon word via its standard factorization
        let mut img_of: BTreeMap<Vec<u8>, Element> = BTreeMap::new();
        for deg in 1..=d {
            for w in &self.words[deg - 1] {
                let e = if w.len() == 1 {
                    images[w[0] as usize].clone()
                } else {
                    let (u, v) = standard_factorization(w);
                    target.bracket(&img_of[&u], &img_of[&v])
                };
                img_of.insert(w.clone(), e);
            }
        }
        let mut mats = Vec::new();
        for deg in 1..=d {
            let mut m = Mat::zero(self.algebra.ring(), self.algebra.rank(deg), target.rank(deg));
            for (a, w) in self.words[deg - 1].iter().enumerate() {
                for (c, &x) in img_of[w].degree_part(deg).iter().enumerate() {
                    m.set(a, c, x);
                }
            }
            mats.push(m);
        }
        GradedMorphism::new(&self.algebra, target, mats)
    }
}

/// Quotient of `L` by the graded ideal generated by the given homogeneous
/// elements (field coefficients). Returns the quotient and the projection.
pub fn ideal_quotient(
    alg: &GradedLieAlgebra,
    generators: &[Element],
) -> Result<(GradedLieAlgebra, GradedMorphism), GradedLieError> {
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(GradedLieError::NeedsField);
    }
    let d = alg.truncation();
    // per-degree spans of the ideal, closed under bracketing with L
    let mut ideal: Vec<Mat> = (1..=d).map(|i| Mat::empty(ring, alg.rank(i))).collect();
    for g in generators {
        for deg in 1..=d {
            let part = g.degree_part(deg);
            if part.iter().any(|&x| x != 0) {
                ideal[deg - 1].push_row(part);
            }
        }
    }
    loop {
        let mut grew = false;
        let snapshot: Vec<Mat> = ideal.iter().map(|m| m.howell_form()).collect();
        for k in 1..=d {
            for r in 0..snapshot[k - 1].rows() {
                let mut v = alg.zero_element();
                v.coords[k - 1] = snapshot[k - 1].row_vec(r);
                for (i, a) in alg.basis() {
                    if i + k > d {
                        continue;
                    }
                    let w = alg.bracket(&alg.basis_element(i, a), &v);
                    let part = w.degree_part(i + k);
                    if part.iter().any(|&x| x != 0)
                        && !ideal[i + k - 1].howell_form().span_contains(part)
                    {
                        ideal[i + k - 1].push_row(part);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let ideal: Vec<Mat> = ideal.into_iter().map(|m| m.howell_form()).collect();
    let comps: Vec<Mat> = ideal.iter().map(|m| m.complement_basis()).collect();
    let ranks: Vec<usize> = comps.iter().map(|c| c.rows()).collect();
    let labels: Vec<Vec<String>> = (1..=d)
        .map(|deg| {
            (0..comps[deg - 1].rows())
                .map(|r| {
                    let row = comps[deg - 1].row(r);
                    let a = row.iter().position(|&x| x == 1).unwrap();
                    alg.label(deg, a).to_string()
                })
                .collect()
        })
        .collect();
    // projection: express a vector as ideal part + complement part
    let project = |deg: usize, v: &[u64]| -> Vec<u64> {
        let stacked = comps[deg - 1]
            .vstack(&ideal[deg - 1])
            .expect("same ambient");
        let x = stacked
            .solve_left(v)
            .expect("complement plus ideal spans the piece");
        x[..comps[deg - 1].rows()].to_vec()
    };
    let mut brackets: Vec<BracketSpec> = Vec::new();
    for i in 1..=d {
        for a in 0..ranks[i - 1] {
            for j in i..=d {
                if i + j > d {
                    continue;
                }
                for b in 0..ranks[j - 1] {
                    if j == i && b <= a {
                        continue;
                    }
                    let mut x = alg.zero_element();
                    x.coords[i - 1] = comps[i - 1].row_vec(a);
                    let mut y = alg.zero_element();
                    y.coords[j - 1] = comps[j - 1].row_vec(b);
                    let w = alg.bracket(&x, &y);
                    let p = project(i + j, w.degree_part(i + j));
                    let value: Vec<(usize, u64)> = p
                        .iter()
                        .enumerate()
                        .filter(|&(_, &c)| c != 0)
                        .map(|(idx, &c)| (idx, c))
                        .collect();
                    if !value.is_empty() {
                        brackets.push(((i, a), (j, b), value));
                    }
                }
            }
        }
    }
    let quot = GradedLieAlgebra::new(ring, ranks, labels, &brackets)?;
    let mut mats = Vec::new();
    for deg in 1..=d {
        let mut m = Mat::zero(ring, alg.rank(deg), quot.rank(deg));
        for a in 0..alg.rank(deg) {
            let mut v = vec![0u64; alg.rank(deg)];
            v[a] = 1;
            for (c, &x) in project(deg, &v).iter().enumerate() {
                m.set(a, c, x);
            }
        }
        mats.push(m);
    }
    let proj = GradedMorphism::new(alg, &quot, mats)?;
    proj.validate(alg, &quot)?;
    Ok((quot, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> CoeffRing {
        CoeffRing::field(5).unwrap()
    }

    #[test]
    fn heisenberg_validates_and_brackets() {
        let h = GradedLieAlgebra::heisenberg(f5());
        assert_eq!(h.ranks(), &[2, 1]);
        let x = h.basis_element(1, 0);
        let y = h.basis_element(1, 1);
        let z = h.basis_element(2, 0);
        assert_eq!(h.bracket(&x, &y), z);
        assert_eq!(h.bracket(&y, &x), h.scale(4, &z));
        assert!(h.bracket(&x, &x).is_zero());
        assert!(h.bracket(&x, &z).is_zero(), "degree 3 is truncated away");
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // x,y,u degree 1; z degree 2; w degree 3. [x,y]=z alone is fine.
        let ring = CoeffRing::field(5).unwrap();
        let good = GradedLieAlgebra::new(
            ring,
            vec![3, 1, 1],
            vec![],
            &[((1, 0), (1, 1), vec![(0, 1)])],
        );
        assert!(good.is_ok());
        // adding [u,z]=w breaks Jacobi on (x,y,u):
        // [[x,y],u] + [[y,u],x] + [[u,x],y] = [z,u] = -w
        let nasty = GradedLieAlgebra::new(
            ring,
            vec![3, 1, 1],
            vec![],
            &[
                ((1, 0), (1, 1), vec![(0, 1)]),
                ((1, 2), (2, 0), vec![(0, 1)]),
            ],
        );
        assert!(matches!(
            nasty,
            Err(GradedLieError::JacobiViolation(..))
        ));
    }

    #[test]
    fn alternating_is_enforced_over_f2() {
        let ring = CoeffRing::field(2).unwrap();
        // over F2 antisymmetry is vacuous, alternating is not: [x,x] = z
        let mut alg = GradedLieAlgebra::abelian(ring, vec![1, 1]).unwrap();
        alg.table.get_mut(&(1, 1)).unwrap()[0][0] = vec![1];
        assert_eq!(
            alg.validate(),
            Err(GradedLieError::NotAlternating(1, 0))
        );
    }

    #[test]
    fn free_lie_ranks_two_generators() {
        let f = free_lie_truncated(
            f5(),
            &[("x".into(), 1), ("y".into(), 1)],
            6,
        )
        .unwrap();
        assert_eq!(f.algebra().ranks(), &[2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn free_lie_degree_three_basis_labels() {
        let f = free_lie_truncated(f5(), &[("x".into(), 1), ("y".into(), 1)], 3).unwrap();
        assert_eq!(f.algebra().ranks(), &[2, 1, 2]);
        assert_eq!(f.algebra().label(2, 0), "[x,y]");
        assert_eq!(f.algebra().label(3, 0), "[x,[x,y]]");
        assert_eq!(f.algebra().label(3, 1), "[[x,y],y]");
    }

    #[test]
    fn free_lie_weighted_generators() {
        // one generator of weight 1 and one of weight 2
        let f = free_lie_truncated(f5(), &[("a".into(), 1), ("b".into(), 2)], 4).unwrap();
        // weight 1: a; weight 2: b; weight 3: [a,b]; weight 4: [a,[a,b]]
        assert_eq!(f.algebra().ranks(), &[1, 1, 1, 1]);
        assert_eq!(f.algebra().label(3, 0), "[a,b]");
    }

    #[test]
    fn free_lie_jacobi_holds() {
        for l in [2u64, 3, 5] {
            let ring = CoeffRing::field(l).unwrap();
            let f = free_lie_truncated(ring, &[("x".into(), 1), ("y".into(), 1)], 5).unwrap();
            assert!(f.algebra().validate().is_ok());
        }
    }

    #[test]
    fn extend_to_morphism_is_a_morphism() {
        let ring = CoeffRing::field(3).unwrap();
        let f = free_lie_truncated(ring, &[("x".into(), 1), ("y".into(), 1)], 2).unwrap();
        let h = GradedLieAlgebra::heisenberg(ring);
        let imgs = vec![h.basis_element(1, 1), h.basis_element(1, 0)];
        let m = f.extend_to_morphism(&h, &imgs).unwrap();
        m.validate(f.algebra(), &h).unwrap();
        // [x,y] |-> [y,x] = -z
        let e = m.apply(&f.algebra().basis_element(2, 0));
        assert_eq!(e.degree_part(2), &[2]);
    }

    #[test]
    fn central_quotient_truncates() {
        let f = free_lie_truncated(f5(), &[("x".into(), 1), ("y".into(), 1)], 4).unwrap();
        let (q, proj) = f.algebra().central_quotient(3);
        assert_eq!(q.ranks(), &[2, 1, 0, 0]);
        proj.validate(f.algebra(), &q).unwrap();
        assert!(proj.is_surjective());
        // a stage past the truncation changes nothing
        let (q2, _) = q.central_quotient(7);
        assert_eq!(q2.ranks(), q.ranks());
        // degenerate stage: everything dies
        let (q0, _) = f.algebra().central_quotient(1);
        assert_eq!(q0.total_dim(), 0);
    }

    #[test]
    fn ideal_quotient_of_free_algebra() {
        let ring = CoeffRing::field(3).unwrap();
        let f = free_lie_truncated(ring, &[("x".into(), 1), ("y".into(), 1)], 3).unwrap();
        // kill [x,y]: the quotient is abelian in degree 2 and degree 3 dies
        let gen = f.algebra().basis_element(2, 0);
        let (q, proj) = ideal_quotient(f.algebra(), &[gen]).unwrap();
        assert_eq!(q.ranks(), &[2, 0, 0]);
        proj.validate(f.algebra(), &q).unwrap();
    }

    #[test]
    fn adjoint_module_satisfies_axiom() {
        let h = GradedLieAlgebra::heisenberg(f5());
        let m = adjoint_module(&h);
        m.validate(&h).unwrap();
        // x . y = z
        assert_eq!(m.act_basis(1, 0, 1, 1), &[1]);
    }

    #[test]
    fn direct_sum_validates() {
        let h = GradedLieAlgebra::heisenberg(f5());
        let a = GradedLieAlgebra::abelian(f5(), vec![1, 1]).unwrap();
        let s = h.direct_sum(&a).unwrap();
        assert_eq!(s.ranks(), &[3, 2]);
        s.validate().unwrap();
        // cross brackets vanish
        let xa = s.basis_element(1, 0);
        let xb = s.basis_element(1, 2);
        assert!(s.bracket(&xa, &xb).is_zero());
    }

    #[test]
    fn reduce_mod_l_from_z25() {
        let z25 = CoeffRing::new(5, 2).unwrap();
        let h = GradedLieAlgebra::new(
            z25,
            vec![2, 1],
            vec![],
            &[((1, 0), (1, 1), vec![(0, 6)])],
        )
        .unwrap();
        let hbar = h.reduce_mod_l();
        assert!(hbar.ring().is_field());
        assert_eq!(hbar.bracket_basis(1, 0, 1, 1), &[1]);
    }

    #[test]
    fn morphism_surjectivity_and_kernel() {
        let h = GradedLieAlgebra::heisenberg(f5());
        let (q, proj) = h.central_quotient(2);
        assert_eq!(q.ranks(), &[2, 0]);
        assert!(proj.is_surjective());
        let k = proj.kernel();
        assert_eq!(k[0].rows(), 0);
        assert_eq!(k[1].rows(), 1);
    }
}
