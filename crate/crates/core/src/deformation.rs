//! Deformations of a graded Lie algebra over Artin local bases.
//!
//! A deformation of `L` over a local algebra `A` is an `A`-bilinear bracket
//! on `L ⊗ A` that reduces to `L`'s bracket modulo the maximal ideal. The
//! module provides:
//!
//! - the universal infinitesimal deformation `η⁰` over `D₁ = k ⊕ H²(L,L)(0)′`
//!   and the classification of square-zero deformations by morphisms out of
//!   `D₁`;
//! - obstruction classes in `H³(L,L)(0)` for lifting a deformation along a
//!   square-zero extension of bases, and the extension step itself;
//! - the stage-by-stage construction of the miniversal base `D_k`
//!   (universal square-zero extension of `D_k` modulo the dual of the
//!   obstruction map), together with the order-2 quadratic presentation of
//!   the base;
//! - gauge equivalence of deformations (graded `A`-linear isomorphisms that
//!   are the identity mod `m`), solved by iterative lifting along the
//!   `m`-adic filtration.
//!
//! Everything here works over the residue field `F_l`; algebras over
//! `Z/l^N` enter the picture through `reduce_mod_l` and through the
//! representation-lifting module, not through this one.

use crate::ce_cohomology::{cochain_space, cohomology_space, delta_matrix, AlgCochain};
use crate::coeff::{CoeffError, CoeffRing, Mat, Subquotient};
use crate::graded_lie::{adjoint_module, GradedLieAlgebra, GradedLieError};
use crate::harrison::{
    quotient_by_subideal, universal_extension, AlgebraMorphism, AlgExtension, ArtinError,
    ArtinLocalAlgebra,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("the algebra and the base must share the same field of coefficients")]
    RingMismatch,
    #[error("deformation theory here runs over the residue field; reduce the input first")]
    NeedsField,
    #[error("deformation base does not match the extension base")]
    BaseMismatch,
    #[error("operation requires a square-zero base (m^2 = 0)")]
    NotSquareZeroBase,
    #[error("bracket table has the wrong shape: {0}")]
    Shape(String),
    #[error("section cochain {0} is not closed")]
    SectionNotClosed(usize),
    #[error("section cochain {0} does not represent the expected basis class")]
    SectionWrongClass(usize),
    #[error("deformation coefficient lies outside the maximal ideal")]
    CoefficientNotInMaxIdeal,
    #[error("bracket is not alternating at degree {0}, index {1}")]
    NotAlternating(usize, usize),
    #[error("bracket is not antisymmetric at ({0:?}, {1:?})")]
    NotAntisymmetric((usize, usize), (usize, usize)),
    #[error("Jacobi identity fails over the base at {0:?}")]
    JacobiViolation([(usize, usize); 3]),
    #[error("reduction mod m does not recover the reference bracket at ({0:?}, {1:?})")]
    ReductionMismatch((usize, usize), (usize, usize)),
    #[error("extension is not usable here: {0}")]
    BadExtension(String),
    #[error("deformation over a square-zero base carries a non-closed linear term (invalid input)")]
    DeviationNotClosed,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Artin(#[from] ArtinError),
    #[error(transparent)]
    Lie(#[from] GradedLieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Bracket constants over a base algebra: `table[(i,j)][a][b][t]` is the
/// coefficient (an element of the base, as coordinates) of the `t`-th basis
/// vector of degree `i+j` in the bracket of basis vectors `(i,a)` and
/// `(j,b)`.
pub type BracketTable = BTreeMap<(usize, usize), Vec<Vec<Vec<Vec<u64>>>>>;

fn table_domain(alg: &GradedLieAlgebra) -> Vec<(usize, usize)> {
    let d = alg.truncation();
    let mut keys = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            if i + j <= d {
                keys.push((i, j));
            }
        }
    }
    keys
}

fn zero_table(alg: &GradedLieAlgebra, base: &ArtinLocalAlgebra) -> BracketTable {
    let mut table = BTreeMap::new();
    for (i, j) in table_domain(alg) {
        table.insert(
            (i, j),
            vec![vec![vec![vec![0u64; base.rank()]; alg.rank(i + j)]; alg.rank(j)]; alg.rank(i)],
        );
    }
    table
}

/// Add `coeff ⊗ cochain` to a table: the 2-cochain's values, scaled by a
/// base element, accumulated antisymmetrically.
fn add_cochain_term(
    alg: &GradedLieAlgebra,
    base: &ArtinLocalAlgebra,
    table: &mut BracketTable,
    coeff: &[u64],
    cochain: &AlgCochain,
) {
    let module = adjoint_module(alg);
    let space = cochain_space(alg, &module, 2, 0);
    for (p, (tup, m)) in space.basis().iter().enumerate() {
        let c = cochain.coords[p];
        if c == 0 {
            continue;
        }
        let (di, a) = tup[0];
        let (dj, b) = tup[1];
        let scaled = base.scale(c, coeff);
        let entry = &mut table.get_mut(&(di, dj)).expect("domain key")[a][b][*m];
        *entry = base.add(entry, &scaled);
        let neg = base.sub(&vec![0; base.rank()], &scaled);
        let entry = &mut table.get_mut(&(dj, di)).expect("domain key")[b][a][*m];
        *entry = base.add(entry, &neg);
    }
}

/// `[[x,y],z] - [[x,z],y] + [[y,z],x]` for basis addresses, with
/// coefficients in the base; the all-zero vector list certifies Jacobi for
/// the triple.
fn jacobi_defect(
    alg: &GradedLieAlgebra,
    base: &ArtinLocalAlgebra,
    table: &BracketTable,
    t1: (usize, usize),
    t2: (usize, usize),
    t3: (usize, usize),
) -> Vec<Vec<u64>> {
    let deg = t1.0 + t2.0 + t3.0;
    let rank = if deg <= alg.truncation() {
        alg.rank(deg)
    } else {
        0
    };
    let mut out = vec![vec![0u64; base.rank()]; rank];
    if rank == 0 {
        return out;
    }
    let mut term = |x: (usize, usize), y: (usize, usize), z: (usize, usize), negate: bool| {
        let Some(inner_block) = table.get(&(x.0, y.0)) else {
            return;
        };
        let inner = &inner_block[x.1][y.1];
        let mid = x.0 + y.0;
        let Some(outer_block) = table.get(&(mid, z.0)) else {
            return;
        };
        for (t, cin) in inner.iter().enumerate() {
            if cin.iter().all(|&v| v == 0) {
                continue;
            }
            let outer = &outer_block[t][z.1];
            for (s, cout) in outer.iter().enumerate() {
                if cout.iter().all(|&v| v == 0) {
                    continue;
                }
                let prod = base.mul(cin, cout);
                out[s] = if negate {
                    base.sub(&out[s], &prod)
                } else {
                    base.add(&out[s], &prod)
                };
            }
        }
    };
    term(t1, t2, t3, false);
    term(t1, t3, t2, true);
    term(t2, t3, t1, false);
    out
}

/// A bracket on `L ⊗ A` reducing to `L` modulo the maximal ideal.
#[derive(Debug, Clone)]
pub struct LieDeformation {
    algebra: GradedLieAlgebra,
    base: ArtinLocalAlgebra,
    table: BracketTable,
}

impl LieDeformation {
    pub fn new(
        algebra: GradedLieAlgebra,
        base: ArtinLocalAlgebra,
        table: BracketTable,
    ) -> Result<Self, DeformError> {
        let def = LieDeformation {
            algebra,
            base,
            table,
        };
        def.validate()?;
        Ok(def)
    }

    /// The constant deformation `L ⊗ A` with the untouched bracket.
    pub fn trivial(
        algebra: &GradedLieAlgebra,
        base: &ArtinLocalAlgebra,
    ) -> Result<Self, DeformError> {
        Self::from_cochain_terms(algebra, base, &[])
    }

    /// Bracket `[x,y] ⊗ 1 + Σ coeff_k · μ_k(x,y)` for weight-zero 2-cochains
    /// `μ_k` and maximal-ideal elements `coeff_k`. The result is fully
    /// validated, so a non-Jacobi combination is rejected here.
    pub fn from_cochain_terms(
        algebra: &GradedLieAlgebra,
        base: &ArtinLocalAlgebra,
        terms: &[(Vec<u64>, AlgCochain)],
    ) -> Result<Self, DeformError> {
        if algebra.ring() != base.ring() {
            return Err(DeformError::RingMismatch);
        }
        let mut table = zero_table(algebra, base);
        // constant part: the reference constants times the unit
        for (&(i, j), block) in table.iter_mut() {
            for a in 0..algebra.rank(i) {
                for b in 0..algebra.rank(j) {
                    let c = algebra.bracket_basis(i, a, j, b);
                    for (t, &coeff) in c.iter().enumerate() {
                        if coeff != 0 {
                            block[a][b][t] = base.scale(coeff, &base.one());
                        }
                    }
                }
            }
        }
        for (coeff, cochain) in terms {
            if coeff.len() != base.rank() {
                return Err(DeformError::Shape("coefficient length".into()));
            }
            if !base.in_max_ideal(coeff) {
                return Err(DeformError::CoefficientNotInMaxIdeal);
            }
            if cochain.s != 2 || cochain.w != 0 {
                return Err(DeformError::Shape(
                    "deformation terms must be weight-zero 2-cochains".into(),
                ));
            }
            add_cochain_term(algebra, base, &mut table, coeff, cochain);
        }
        Self::new(algebra.clone(), base.clone(), table)
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &ArtinLocalAlgebra {
        &self.base
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// Bracket of two basis vectors: coefficients in the base per target
    /// basis index (empty when the degrees exceed the truncation).
    pub fn bracket_basis(&self, i: usize, a: usize, j: usize, b: usize) -> Vec<Vec<u64>> {
        self.table
            .get(&(i, j))
            .map(|blk| blk[a][b].clone())
            .unwrap_or_default()
    }

    pub fn validate(&self) -> Result<(), DeformError> {
        if self.algebra.ring() != self.base.ring() {
            return Err(DeformError::RingMismatch);
        }
        let alg = &self.algebra;
        let base = &self.base;
        let keys = table_domain(alg);
        if self.table.len() != keys.len() {
            return Err(DeformError::Shape("table key count".into()));
        }
        for &(i, j) in &keys {
            let block = self
                .table
                .get(&(i, j))
                .ok_or_else(|| DeformError::Shape(format!("missing key ({i},{j})")))?;
            if block.len() != alg.rank(i)
                || block.iter().any(|r| r.len() != alg.rank(j))
                || block
                    .iter()
                    .flatten()
                    .any(|v| v.len() != alg.rank(i + j) || v.iter().any(|c| c.len() != base.rank()))
            {
                return Err(DeformError::Shape(format!("block ({i},{j})")));
            }
        }
        // alternating and antisymmetric
        for &(i, j) in &keys {
            let block = &self.table[&(i, j)];
            let flipped = &self.table[&(j, i)];
            for a in 0..alg.rank(i) {
                for b in 0..alg.rank(j) {
                    for (t, v) in block[a][b].iter().enumerate() {
                        let neg = base.sub(&vec![0; base.rank()], &flipped[b][a][t]);
                        if *v != neg {
                            return Err(DeformError::NotAntisymmetric((i, a), (j, b)));
                        }
                    }
                    if i == j && a == b && block[a][b].iter().any(|v| v.iter().any(|&c| c != 0)) {
                        return Err(DeformError::NotAlternating(i, a));
                    }
                }
            }
        }
        // reduction mod m recovers the reference constants
        for &(i, j) in &keys {
            let block = &self.table[&(i, j)];
            for a in 0..alg.rank(i) {
                for b in 0..alg.rank(j) {
                    let reference = alg.bracket_basis(i, a, j, b);
                    for (t, v) in block[a][b].iter().enumerate() {
                        if base.residue(v) != alg.ring().residue_field().reduce(reference[t]) {
                            return Err(DeformError::ReductionMismatch((i, a), (j, b)));
                        }
                    }
                }
            }
        }
        // Jacobi over the base on increasing basis triples
        let basis = alg.basis();
        for x in 0..basis.len() {
            for y in (x + 1)..basis.len() {
                for z in (y + 1)..basis.len() {
                    let defect = jacobi_defect(alg, base, &self.table, basis[x], basis[y], basis[z]);
                    if defect.iter().any(|v| v.iter().any(|&c| c != 0)) {
                        return Err(DeformError::JacobiViolation([basis[x], basis[y], basis[z]]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A choice of closed 2-cochain representing each basis class of
/// `H²(L,L)(0)`.
#[derive(Debug, Clone)]
pub struct CocycleSection {
    classes: Subquotient,
    cochains: Vec<AlgCochain>,
}

impl CocycleSection {
    /// The canonical section: the representative rows chosen by the
    /// cohomology computation itself.
    pub fn standard(alg: &GradedLieAlgebra) -> Result<Self, DeformError> {
        if !alg.ring().is_field() {
            return Err(DeformError::NeedsField);
        }
        let module = adjoint_module(alg);
        let classes = cohomology_space(alg, &module, 2, 0)?;
        let cochains = (0..classes.dimension())
            .map(|i| AlgCochain {
                s: 2,
                w: 0,
                coords: classes.representatives().row_vec(i),
            })
            .collect();
        Ok(CocycleSection { classes, cochains })
    }

    /// A custom section; each cochain must be closed and represent the
    /// matching basis class of the canonical `H²(L,L)(0)`.
    pub fn new(alg: &GradedLieAlgebra, cochains: Vec<AlgCochain>) -> Result<Self, DeformError> {
        if !alg.ring().is_field() {
            return Err(DeformError::NeedsField);
        }
        let module = adjoint_module(alg);
        let classes = cohomology_space(alg, &module, 2, 0)?;
        if cochains.len() != classes.dimension() {
            return Err(DeformError::Shape("section size".into()));
        }
        let d2 = delta_matrix(alg, &module, 2, 0);
        for (i, c) in cochains.iter().enumerate() {
            if c.s != 2 || c.w != 0 || c.coords.len() != d2.rows() {
                return Err(DeformError::Shape("section cochain shape".into()));
            }
            let mut row = Mat::empty(alg.ring(), d2.rows());
            row.push_row(&c.coords);
            if !row.mul(&d2)?.is_zero() {
                return Err(DeformError::SectionNotClosed(i));
            }
            let coords = classes
                .class_coords(&c.coords)
                .ok_or(DeformError::SectionNotClosed(i))?;
            let expected: Vec<u64> = (0..classes.dimension())
                .map(|j| u64::from(j == i))
                .collect();
            if coords != expected {
                return Err(DeformError::SectionWrongClass(i));
            }
        }
        Ok(CocycleSection { classes, cochains })
    }

    pub fn dimension(&self) -> usize {
        self.cochains.len()
    }

    pub fn classes(&self) -> &Subquotient {
        &self.classes
    }

    pub fn cochain(&self, i: usize) -> &AlgCochain {
        &self.cochains[i]
    }
}

/// The universal infinitesimal deformation: over
/// `D₁ = k ⊕ H²(L,L)(0)′` (square-zero), the bracket
/// `[x,y] ⊗ 1 + Σ_i μ_i(x,y) ⊗ t_i`. Jacobi over `D₁` holds because each
/// `μ_i` is closed and `m²_{D₁} = 0`; it is still checked exactly.
pub fn eta_zero(
    alg: &GradedLieAlgebra,
    section: &CocycleSection,
) -> Result<LieDeformation, DeformError> {
    if !alg.ring().is_field() {
        return Err(DeformError::NeedsField);
    }
    let h = section.dimension();
    let base = ArtinLocalAlgebra::square_zero(alg.ring(), h);
    let terms: Vec<(Vec<u64>, AlgCochain)> = (0..h)
        .map(|i| {
            let mut coeff = vec![0u64; h + 1];
            coeff[i + 1] = 1;
            (coeff, section.cochain(i).clone())
        })
        .collect();
    LieDeformation::from_cochain_terms(alg, &base, &terms)
}

/// Transport a deformation along a local unital morphism of bases.
pub fn push_forward(
    def: &LieDeformation,
    phi: &AlgebraMorphism,
    target: &ArtinLocalAlgebra,
) -> Result<LieDeformation, DeformError> {
    // re-derive the morphism against these two algebras so a mismatched map
    // cannot slip through
    let phi = AlgebraMorphism::new(def.base(), target, phi.matrix().clone())?;
    let mut table = zero_table(def.algebra(), target);
    for (key, block) in def.table() {
        let out = table.get_mut(key).expect("same domain");
        for (a, row) in block.iter().enumerate() {
            for (b, val) in row.iter().enumerate() {
                for (t, coeff) in val.iter().enumerate() {
                    out[a][b][t] = phi.apply(coeff);
                }
            }
        }
    }
    LieDeformation::new(def.algebra().clone(), target.clone(), table)
}

/// The unique morphism `D₁ → A` (square-zero `A`) whose push-forward of
/// `η⁰` is equivalent to the given deformation: read off the deviation
/// cochains along the maximal-ideal basis and take their class coordinates.
pub fn classify_square_zero(
    def: &LieDeformation,
    section: &CocycleSection,
) -> Result<AlgebraMorphism, DeformError> {
    let base = def.base();
    let powers = base.ideal_power_spans()?;
    if powers.len() > 1 && powers[1].rows() > 0 {
        return Err(DeformError::NotSquareZeroBase);
    }
    let alg = def.algebra();
    let ring = alg.ring();
    let module = adjoint_module(alg);
    let space = cochain_space(alg, &module, 2, 0);
    let h = section.dimension();
    let d1 = ArtinLocalAlgebra::square_zero(ring, h);
    let mut mat = Mat::zero(ring, h + 1, base.rank());
    for (j, &x) in base.one().iter().enumerate() {
        mat.set(0, j, x);
    }
    for q in 0..base.rank() {
        if q == base.unit_index() {
            continue;
        }
        // deviation cochain along the q-th maximal ideal direction
        let mut gamma = vec![0u64; space.dim()];
        for (p, (tup, m)) in space.basis().iter().enumerate() {
            let (di, a) = tup[0];
            let (dj, b) = tup[1];
            gamma[p] = def.table()[&(di, dj)][a][b][*m][q];
        }
        let coords = section
            .classes()
            .class_coords(&gamma)
            .ok_or(DeformError::DeviationNotClosed)?;
        for (i, &c) in coords.iter().enumerate() {
            mat.set(1 + i, q, c);
        }
    }
    Ok(AlgebraMorphism::new(&d1, base, mat)?)
}

/// Deterministic lift of the bracket constants along a base extension
/// (canonical solution of the projection system per coefficient).
pub fn lift_table(def: &LieDeformation, ext: &AlgExtension) -> Result<BracketTable, DeformError> {
    if !def.base().same_structure(ext.base()) {
        return Err(DeformError::BaseMismatch);
    }
    let p = ext.projection().matrix();
    let total = ext.total();
    let mut out = zero_table(def.algebra(), total);
    for (key, block) in def.table() {
        let target = out.get_mut(key).expect("same domain");
        for (a, row) in block.iter().enumerate() {
            for (b, val) in row.iter().enumerate() {
                for (t, coeff) in val.iter().enumerate() {
                    target[a][b][t] = p
                        .solve_left(coeff)
                        .ok_or_else(|| DeformError::Internal("projection not surjective".into()))?;
                }
            }
        }
    }
    Ok(out)
}

/// The obstruction to extending a deformation: one class in `H³(L,L)(0)`
/// per kernel generator of the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionClass {
    /// Coordinates with respect to the representative basis of `H³(L,L)(0)`.
    pub coords: Vec<u64>,
    /// The defect 3-cocycle itself, in `C³(L,L)(0)` coordinates.
    pub cocycle: Vec<u64>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

fn extension_usable(ext: &AlgExtension) -> Result<(), DeformError> {
    if !ext.total().ring().is_field() {
        return Err(DeformError::NeedsField);
    }
    if !ext.kernel_is_elementary() || !ext.kernel_killed_by_max_ideal() {
        return Err(DeformError::BadExtension(
            "kernel must be a residue-field module killed by the maximal ideal".into(),
        ));
    }
    Ok(())
}

/// Obstruction classes of an explicit lift: the Jacobi defect of the lifted
/// constants lives in `L ⊗ ker(B → A)` and its kernel coordinates form
/// closed 3-cochains; their classes do not depend on the lift.
pub fn obstruction_of_lift(
    alg: &GradedLieAlgebra,
    ext: &AlgExtension,
    lifted: &BracketTable,
) -> Result<Vec<ObstructionClass>, DeformError> {
    extension_usable(ext)?;
    let total = ext.total();
    let kernel = ext.kernel_rows();
    let e = kernel.rows();
    let module = adjoint_module(alg);
    let space3 = cochain_space(alg, &module, 3, 0);
    let mut cocycles = vec![vec![0u64; space3.dim()]; e];
    let mut cached: Option<(Vec<(usize, usize)>, Vec<Vec<u64>>)> = None;
    for (p, (tup, m)) in space3.basis().iter().enumerate() {
        let defect = match &cached {
            Some((t, d)) if t == tup => d.clone(),
            _ => {
                let d = jacobi_defect(alg, total, lifted, tup[0], tup[1], tup[2]);
                cached = Some((tup.clone(), d.clone()));
                d
            }
        };
        let lambda = kernel.solve_left(&defect[*m]).ok_or_else(|| {
            DeformError::Internal("Jacobi defect escaped the extension kernel".into())
        })?;
        for (k, &l) in lambda.iter().enumerate() {
            cocycles[k][p] = l;
        }
    }
    let d3 = delta_matrix(alg, &module, 3, 0);
    let h3 = cohomology_space(alg, &module, 3, 0)?;
    let mut out = Vec::with_capacity(e);
    for gamma in cocycles {
        let mut row = Mat::empty(alg.ring(), d3.rows());
        row.push_row(&gamma);
        if !row.mul(&d3)?.is_zero() {
            return Err(DeformError::Internal("defect cochain is not closed".into()));
        }
        let coords = h3
            .class_coords(&gamma)
            .ok_or_else(|| DeformError::Internal("defect class outside cycle span".into()))?;
        out.push(ObstructionClass {
            coords,
            cocycle: gamma,
        });
    }
    Ok(out)
}

/// The obstruction class for a rank-one extension kernel.
pub fn obstruction_class(
    def: &LieDeformation,
    ext: &AlgExtension,
) -> Result<ObstructionClass, DeformError> {
    if ext.kernel_rank() != 1 {
        return Err(DeformError::BadExtension(
            "expected a rank-one kernel; use the tower step for larger ones".into(),
        ));
    }
    let lifted = lift_table(def, ext)?;
    Ok(obstruction_of_lift(def.algebra(), ext, &lifted)?
        .pop()
        .expect("one kernel generator"))
}

pub enum ExtendOutcome {
    Extended(LieDeformation),
    Obstructed(Vec<ObstructionClass>),
}

/// Extend a deformation along a square-zero base extension. Succeeds exactly
/// when every obstruction class vanishes; the correction solves
/// `δβ = defect` and the result is re-validated over the bigger base.
pub fn extend_deformation(
    def: &LieDeformation,
    ext: &AlgExtension,
) -> Result<ExtendOutcome, DeformError> {
    let lifted = lift_table(def, ext)?;
    let alg = def.algebra();
    let obstructions = obstruction_of_lift(alg, ext, &lifted)?;
    let module = adjoint_module(alg);
    let d2 = delta_matrix(alg, &module, 2, 0);
    let mut corrections = Vec::with_capacity(obstructions.len());
    for ob in &obstructions {
        match d2.solve_left(&ob.cocycle) {
            Some(beta) => {
                if !ob.is_zero() {
                    return Err(DeformError::Internal(
                        "solvable defect with nonzero class".into(),
                    ));
                }
                corrections.push(beta);
            }
            None => {
                if ob.is_zero() {
                    return Err(DeformError::Internal(
                        "vanishing class with unsolvable defect".into(),
                    ));
                }
                return Ok(ExtendOutcome::Obstructed(obstructions));
            }
        }
    }
    let total = ext.total();
    let mut table = lifted;
    for (k, beta) in corrections.iter().enumerate() {
        let cochain = AlgCochain {
            s: 2,
            w: 0,
            coords: beta.clone(),
        };
        add_cochain_term(alg, total, &mut table, ext.kernel_rows().row(k), &cochain);
    }
    Ok(ExtendOutcome::Extended(LieDeformation::new(
        alg.clone(),
        total.clone(),
        table,
    )?))
}

/// A graded base-linear isomorphism `L ⊗ A → L ⊗ A` congruent to the
/// identity mod `m`: `mats[deg-1][a][b]` is the base coefficient of target
/// basis vector `b` in the image of basis vector `a` of that degree.
#[derive(Debug, Clone)]
pub struct DeformationIso {
    mats: Vec<Vec<Vec<Vec<u64>>>>,
}

impl DeformationIso {
    pub fn identity(alg: &GradedLieAlgebra, base: &ArtinLocalAlgebra) -> Self {
        let mats = (1..=alg.truncation())
            .map(|deg| {
                let r = alg.rank(deg);
                (0..r)
                    .map(|a| {
                        (0..r)
                            .map(|b| {
                                if a == b {
                                    base.one()
                                } else {
                                    base.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        DeformationIso { mats }
    }

    pub fn coefficient(&self, deg: usize, a: usize, b: usize) -> &[u64] {
        &self.mats[deg - 1][a][b]
    }

    fn is_identity_mod_m(&self, base: &ArtinLocalAlgebra) -> bool {
        self.mats.iter().all(|m| {
            m.iter().enumerate().all(|(a, row)| {
                row.iter()
                    .enumerate()
                    .all(|(b, v)| base.residue(v) == u64::from(a == b))
            })
        })
    }

    /// Apply to a basis vector: base coefficients per target index of the
    /// same degree.
    fn image(&self, deg: usize, a: usize) -> &Vec<Vec<u64>> {
        &self.mats[deg - 1][a]
    }
}

/// Does the isomorphism carry the first bracket to the second
/// (`Φ[x,y]₁ = [Φx, Φy]₂` on all basis pairs), while reducing to the
/// identity?
pub fn transports(def1: &LieDeformation, def2: &LieDeformation, iso: &DeformationIso) -> bool {
    let alg = def1.algebra();
    let base = def1.base();
    if !iso.is_identity_mod_m(base) {
        return false;
    }
    let basis = alg.basis();
    for &(di, a) in &basis {
        for &(dj, b) in &basis {
            let deg = di + dj;
            if deg > alg.truncation() {
                continue;
            }
            let rank = alg.rank(deg);
            // Φ([x,y]₁)
            let mut lhs = vec![vec![0u64; base.rank()]; rank];
            let b1 = def1.bracket_basis(di, a, dj, b);
            for (t, c) in b1.iter().enumerate() {
                if c.iter().all(|&v| v == 0) {
                    continue;
                }
                for (u, m) in iso.image(deg, t).iter().enumerate() {
                    lhs[u] = base.add(&lhs[u], &base.mul(c, m));
                }
            }
            // [Φx, Φy]₂
            let mut rhs = vec![vec![0u64; base.rank()]; rank];
            for (t, mx) in iso.image(di, a).iter().enumerate() {
                if mx.iter().all(|&v| v == 0) {
                    continue;
                }
                for (u, my) in iso.image(dj, b).iter().enumerate() {
                    if my.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let scale = base.mul(mx, my);
                    let b2 = def2.bracket_basis(di, t, dj, u);
                    for (s, c) in b2.iter().enumerate() {
                        rhs[s] = base.add(&rhs[s], &base.mul(&scale, c));
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Search for a gauge equivalence by iterative lifting along the m-adic
/// filtration: at each level solve a linear cochain system for the
/// correction. Complete for square-zero bases; for deeper bases a `Some`
/// answer is always a verified equivalence, while `None` means the greedy
/// lift got stuck.
pub fn find_equivalence(
    def1: &LieDeformation,
    def2: &LieDeformation,
) -> Result<Option<DeformationIso>, DeformError> {
    if !def1.base().same_structure(def2.base()) {
        return Err(DeformError::BaseMismatch);
    }
    let alg = def1.algebra();
    let base = def1.base();
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(DeformError::NeedsField);
    }
    let module = adjoint_module(alg);
    let space1 = cochain_space(alg, &module, 1, 0);
    let space2 = cochain_space(alg, &module, 2, 0);
    let d1 = delta_matrix(alg, &module, 1, 0);
    let powers = base.ideal_power_spans()?;
    let mut iso = DeformationIso::identity(alg, base);
    for level in 1..=powers.len() {
        // current defect per 2-cochain slot, with base coefficients
        let mut defect: Vec<Vec<u64>> = Vec::with_capacity(space2.dim());
        let mut all_zero = true;
        for (tup, m) in space2.basis() {
            let (di, a) = tup[0];
            let (dj, b) = tup[1];
            let deg = di + dj;
            let rank = alg.rank(deg);
            let mut lhs = vec![vec![0u64; base.rank()]; rank];
            for (t, c) in def1.bracket_basis(di, a, dj, b).iter().enumerate() {
                for (u, mcoef) in iso.image(deg, t).iter().enumerate() {
                    lhs[u] = base.add(&lhs[u], &base.mul(c, mcoef));
                }
            }
            let mut rhs = vec![vec![0u64; base.rank()]; rank];
            for (t, mx) in iso.image(di, a).iter().enumerate() {
                for (u, my) in iso.image(dj, b).iter().enumerate() {
                    let scale = base.mul(mx, my);
                    if scale.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let b2 = def2.bracket_basis(di, t, dj, u);
                    for (s, c) in b2.iter().enumerate() {
                        rhs[s] = base.add(&rhs[s], &base.mul(&scale, c));
                    }
                }
            }
            let dvec = base.sub(&lhs[*m], &rhs[*m]);
            if dvec.iter().any(|&v| v != 0) {
                all_zero = false;
            }
            defect.push(dvec);
        }
        if all_zero {
            return Ok(Some(iso));
        }
        if level >= powers.len() {
            // m^level = 0 yet the defect survived: the invariant broke
            return Err(DeformError::Internal(
                "gauge defect survived past the filtration".into(),
            ));
        }
        let mj = &powers[level - 1];
        let mj1 = &powers[level];
        // basis of m^level mod m^(level+1)
        let mut wrows = Mat::empty(ring, base.rank());
        let mut acc = mj1.clone();
        for i in 0..mj.rows() {
            if !acc.howell_form().span_contains(mj.row(i)) {
                wrows.push_row(mj.row(i));
                acc.push_row(mj.row(i));
            }
        }
        let decomp = wrows.vstack(mj1)?;
        // the defect must sit in m^level
        let mjh = mj.howell_form();
        for v in &defect {
            if !mjh.span_contains(v) {
                return Ok(None);
            }
        }
        for w in 0..wrows.rows() {
            let mut dw = vec![0u64; space2.dim()];
            for (p, v) in defect.iter().enumerate() {
                let sol = decomp
                    .solve_left(v)
                    .ok_or_else(|| DeformError::Internal("filtration decomposition".into()))?;
                dw[p] = sol[w];
            }
            if dw.iter().all(|&x| x == 0) {
                continue;
            }
            let Some(psi) = d1.solve_left(&dw) else {
                return Ok(None);
            };
            // fold psi ⊗ w into the isomorphism
            for (p, (tup, bidx)) in space1.basis().iter().enumerate() {
                if psi[p] == 0 {
                    continue;
                }
                let (deg, a) = tup[0];
                let scaled = base.scale(psi[p], wrows.row(w));
                let entry = &mut iso.mats[deg - 1][a][*bidx];
                *entry = base.add(entry, &scaled);
            }
        }
    }
    // the filtration bottomed out with a zero maximal ideal
    Ok(Some(iso))
}

/// A stage of the miniversal tower: the base `D_k`, the deformation over
/// it, and the extension data linking it to the previous stage.
#[derive(Debug, Clone)]
pub struct DeformationBase {
    pub stage: usize,
    pub base: ArtinLocalAlgebra,
    pub eta: LieDeformation,
    /// `0 → (ker Φ)′ → D_k → D_{k-1} → 0`; `None` at the first stage.
    pub extension: Option<AlgExtension>,
    /// Rank of the obstruction map at the step that produced this stage.
    pub phi_rank: usize,
}

/// Stage 1: `D₁ = k ⊕ H²(L,L)(0)′` with the universal infinitesimal
/// deformation.
pub fn miniversal_start(
    alg: &GradedLieAlgebra,
    section: &CocycleSection,
) -> Result<DeformationBase, DeformError> {
    let eta = eta_zero(alg, section)?;
    Ok(DeformationBase {
        stage: 1,
        base: eta.base().clone(),
        eta,
        extension: None,
        phi_rank: 0,
    })
}

/// One step of the tower: take the universal square-zero extension `C` of
/// `D_k`, read the obstruction classes of `η_k` along its kernel directions,
/// quotient `C` by the image of the dualized obstruction map, and extend
/// `η_k` to the result (the obstruction vanishes there by construction).
pub fn miniversal_step(stage: &DeformationBase) -> Result<DeformationBase, DeformError> {
    let d_k = &stage.base;
    let alg = stage.eta.algebra().clone();
    let ring = alg.ring();
    let uext = universal_extension(d_k)?;
    let e = uext.kernel_rank();
    let c = uext.total().clone();
    let lifted = lift_table(&stage.eta, &uext)?;
    let obstructions = obstruction_of_lift(&alg, &uext, &lifted)?;
    let h3_dim = obstructions.first().map_or(0, |o| o.coords.len());
    // rows of the dualized obstruction map, as elements of the kernel k^e,
    // then pushed into C along the kernel embedding
    let mut w_small = Mat::empty(ring, e);
    let mut w_in_c = Mat::empty(ring, c.rank());
    for j in 0..h3_dim {
        let row: Vec<u64> = (0..e).map(|i| obstructions[i].coords[j]).collect();
        if row.iter().all(|&x| x == 0) {
            continue;
        }
        w_small.push_row(&row);
        let mut embedded = vec![0u64; c.rank()];
        for (i, &coef) in row.iter().enumerate() {
            let scaled = c.scale(coef, uext.kernel_rows().row(i));
            embedded = c.add(&embedded, &scaled);
        }
        w_in_c.push_row(&embedded);
    }
    let phi_rank = w_small.howell_form().rows();
    let (next_base, _to_quotient, kept) = quotient_by_subideal(&c, &w_in_c)?;
    let mut proj = Mat::zero(ring, next_base.rank(), d_k.rank());
    for (j, &idx) in kept.iter().enumerate() {
        for t in 0..d_k.rank() {
            proj.set(j, t, uext.projection().matrix().get(idx, t));
        }
    }
    let projection = AlgebraMorphism::new(&next_base, d_k, proj)?;
    let kernel = projection.kernel_module_basis();
    let ext = AlgExtension::new(next_base.clone(), d_k.clone(), projection, kernel)?;
    if ext.kernel_rank() != e - phi_rank {
        return Err(DeformError::Internal(format!(
            "tower kernel rank {} differs from {} - {}",
            ext.kernel_rank(),
            e,
            phi_rank
        )));
    }
    let eta = match extend_deformation(&stage.eta, &ext)? {
        ExtendOutcome::Extended(eta) => eta,
        ExtendOutcome::Obstructed(_) => {
            return Err(DeformError::Internal(
                "obstruction failed to vanish on the cokernel stage".into(),
            ))
        }
    };
    Ok(DeformationBase {
        stage: stage.stage + 1,
        base: next_base,
        eta,
        extension: Some(ext),
        phi_rank,
    })
}

/// The first `stages` floors of the tower.
pub fn miniversal_tower(
    alg: &GradedLieAlgebra,
    section: &CocycleSection,
    stages: usize,
) -> Result<Vec<DeformationBase>, DeformError> {
    let mut out = vec![miniversal_start(alg, section)?];
    while out.len() < stages {
        let next = miniversal_step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// The order-2 term of the formal map cutting out the miniversal base:
/// the pairing `(α, β) ↦ class of [μ(α), μ(β)]` in `H³(L,L)(0)`. For odd
/// `l` the quadratic form is `ω(α) = ½ [μ(α), μ(α)]`; for `l = 2` only the
/// bilinear pairing is reported.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    ring: CoeffRing,
    /// `pairing[i][j]` = class coordinates of `[μ_i, μ_j]` in `H³(0)`.
    pub pairing: Vec<Vec<Vec<u64>>>,
    pub h3_dimension: usize,
}

impl QuadraticForm {
    pub fn is_zero(&self) -> bool {
        self.pairing
            .iter()
            .flatten()
            .all(|v| v.iter().all(|&c| c == 0))
    }

    /// `ω(α)` for a coordinate vector `α` on the chosen `H²(0)` basis;
    /// `None` when `l = 2` (halving unavailable).
    pub fn evaluate(&self, alpha: &[u64]) -> Option<Vec<u64>> {
        if self.ring.l() == 2 {
            return None;
        }
        let half = self.ring.inv(2).expect("2 is a unit for odd l");
        let mut out = vec![0u64; self.h3_dimension];
        for (i, &ai) in alpha.iter().enumerate() {
            for (j, &aj) in alpha.iter().enumerate() {
                let c = self.ring.mul(half, self.ring.mul(ai, aj));
                if c == 0 {
                    continue;
                }
                for (t, o) in out.iter_mut().enumerate() {
                    *o = self.ring.add(*o, self.ring.mul(c, self.pairing[i][j][t]));
                }
            }
        }
        Some(out)
    }
}

/// The symmetric pairing `H²(0) × H²(0) → H³(0)` induced by the bracket on
/// cochains, in the section's representative basis.
pub fn quadratic_map(
    alg: &GradedLieAlgebra,
    section: &CocycleSection,
) -> Result<QuadraticForm, DeformError> {
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(DeformError::NeedsField);
    }
    let module = adjoint_module(alg);
    let h3 = cohomology_space(alg, &module, 3, 0)?;
    let n = section.dimension();
    let mut pairing = vec![vec![vec![0u64; h3.dimension()]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let nr = crate::ce_cohomology::nr_bracket(alg, section.cochain(i), section.cochain(j));
            let coords = h3
                .class_coords(&nr.coords)
                .ok_or_else(|| DeformError::Internal("cocycle pairing left the cycles".into()))?;
            pairing[i][j] = coords;
        }
    }
    Ok(QuadraticForm {
        ring,
        pairing,
        h3_dimension: h3.dimension(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_lie::BracketSpec;

    fn f(l: u64) -> CoeffRing {
        CoeffRing::field(l).unwrap()
    }

    fn ab21(l: u64) -> GradedLieAlgebra {
        GradedLieAlgebra::abelian(f(l), vec![2, 1]).unwrap()
    }

    /// Ranks (2,1,1,1) with [x,y]=z, [x,z]=w, [y,z]=w: nonabelian,
    /// dim H²(0) = 1, dim H³(0) = 0, dim im δ¹ = 3.
    fn fam(l: u64) -> GradedLieAlgebra {
        let specs: Vec<BracketSpec> = vec![
            ((1, 0), (1, 1), vec![(0, 1)]),
            ((1, 0), (2, 0), vec![(0, 1)]),
            ((1, 1), (2, 0), vec![(0, 1)]),
        ];
        GradedLieAlgebra::new(f(l), vec![2, 1, 1, 1], vec![], &specs).unwrap()
    }

    fn ab4(l: u64) -> GradedLieAlgebra {
        GradedLieAlgebra::abelian(f(l), vec![2, 1, 1, 1]).unwrap()
    }

    /// The crafted closed 2-cochain on the rank-(2,1,1,1) abelian algebra:
    /// (x,y) ↦ z, (x,z) ↦ u, (y,u) ↦ v. Its self-insertion on (x,y,z) is v,
    /// so the direction is obstructed at second order.
    fn crafted_cochain(alg: &GradedLieAlgebra) -> AlgCochain {
        let module = adjoint_module(alg);
        let space = cochain_space(alg, &module, 2, 0);
        let mut coords = vec![0u64; space.dim()];
        for (tup, tgt, val) in [
            (vec![(1, 0), (1, 1)], 0usize, 1u64), // (x,y) -> z
            (vec![(1, 0), (2, 0)], 0, 1),         // (x,z) -> u
            (vec![(1, 1), (3, 0)], 0, 1),         // (y,u) -> v
        ] {
            let p = space.position(&tup, tgt).unwrap();
            coords[p] = val;
        }
        AlgCochain { s: 2, w: 0, coords }
    }

    #[test]
    fn eta_zero_on_rigid_heisenberg_is_trivial() {
        let alg = GradedLieAlgebra::heisenberg(f(5));
        let section = CocycleSection::standard(&alg).unwrap();
        assert_eq!(section.dimension(), 0);
        let eta = eta_zero(&alg, &section).unwrap();
        assert_eq!(eta.base().rank(), 1);
        let trivial = LieDeformation::trivial(&alg, eta.base()).unwrap();
        assert_eq!(eta.table(), trivial.table());
    }

    #[test]
    fn eta_zero_on_ab21_deforms_along_t() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        assert_eq!(section.dimension(), 1);
        let eta = eta_zero(&alg, &section).unwrap();
        assert_eq!(eta.base().as_truncated_polynomial(), Some(2));
        // [x, y] = t·z
        assert_eq!(eta.bracket_basis(1, 0, 1, 1), vec![vec![0, 1]]);
        // antisymmetric counterpart
        assert_eq!(eta.bracket_basis(1, 1, 1, 0), vec![vec![0, 4]]);
    }

    #[test]
    fn eta_zero_validates_across_suite() {
        for alg in [
            GradedLieAlgebra::heisenberg(f(5)),
            ab21(5),
            fam(5),
            fam(2),
            fam(3),
            ab4(2),
            ab4(3),
        ] {
            let section = CocycleSection::standard(&alg).unwrap();
            let eta = eta_zero(&alg, &section).unwrap();
            eta.validate().unwrap();
        }
    }

    #[test]
    fn fam_cohomology_dimensions_match_expectations() {
        for l in [2, 3, 5] {
            let alg = fam(l);
            let module = adjoint_module(&alg);
            let dims: Vec<usize> = (0..4)
                .map(|s| {
                    cohomology_space(&alg, &module, s, 0)
                        .unwrap()
                        .dimension()
                })
                .collect();
            assert_eq!(dims, vec![0, 4, 1, 0], "l = {l}");
        }
    }

    #[test]
    fn push_forward_substitutes_coefficients() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        let eta = eta_zero(&alg, &section).unwrap();
        let target = ArtinLocalAlgebra::dual_numbers(f(5));
        // t ↦ 2ε
        let mat = Mat::from_rows(f(5), vec![vec![1, 0], vec![0, 2]]).unwrap();
        let phi = AlgebraMorphism::new(eta.base(), &target, mat).unwrap();
        let pushed = push_forward(&eta, &phi, &target).unwrap();
        assert_eq!(pushed.bracket_basis(1, 0, 1, 1), vec![vec![0, 2]]);
        // the morphism killing the maximal ideal recovers the trivial
        // deformation
        let point = ArtinLocalAlgebra::base(f(5));
        let kill = Mat::from_rows(f(5), vec![vec![1], vec![0]]).unwrap();
        let phi0 = AlgebraMorphism::new(eta.base(), &point, kill).unwrap();
        let reduced = push_forward(&eta, &phi0, &point).unwrap();
        assert_eq!(
            reduced.table(),
            LieDeformation::trivial(&alg, &point).unwrap().table()
        );
        // identity morphism is a no-op
        let same = push_forward(&eta, &AlgebraMorphism::identity(eta.base()), eta.base()).unwrap();
        assert_eq!(same.table(), eta.table());
    }

    #[test]
    fn classify_recovers_every_push_forward() {
        // exhaustive over all morphisms D₁ → A for small square-zero A
        for l in [2u64, 3] {
            let alg = fam(l);
            let section = CocycleSection::standard(&alg).unwrap();
            assert_eq!(section.dimension(), 1);
            let eta = eta_zero(&alg, &section).unwrap();
            for target in [
                ArtinLocalAlgebra::dual_numbers(f(l)),
                ArtinLocalAlgebra::square_zero(f(l), 2),
            ] {
                let mrank = target.rank() - 1;
                let total = l.pow(mrank as u32);
                for code in 0..total {
                    let mut mat = Mat::zero(f(l), 2, target.rank());
                    mat.set(0, target.unit_index(), 1);
                    let mut c = code;
                    for q in 0..target.rank() {
                        if q == target.unit_index() {
                            continue;
                        }
                        mat.set(1, q, c % l);
                        c /= l;
                    }
                    let phi = AlgebraMorphism::new(eta.base(), &target, mat.clone()).unwrap();
                    let pushed = push_forward(&eta, &phi, &target).unwrap();
                    let recovered = classify_square_zero(&pushed, &section).unwrap();
                    assert_eq!(recovered.matrix(), &mat);
                }
            }
        }
    }

    #[test]
    fn classify_rejects_deep_bases() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        let deep = ArtinLocalAlgebra::truncated_polynomial(f(5), 3);
        let def = LieDeformation::trivial(&alg, &deep).unwrap();
        assert!(matches!(
            classify_square_zero(&def, &section),
            Err(DeformError::NotSquareZeroBase)
        ));
    }

    #[test]
    fn section_replacement_by_coboundary_gives_isomorphic_deformation() {
        let alg = fam(5);
        let module = adjoint_module(&alg);
        let d1 = delta_matrix(&alg, &module, 1, 0);
        // pick a 1-cochain with a nonzero coboundary
        let row = (0..d1.rows())
            .find(|&i| d1.row(i).iter().any(|&x| x != 0))
            .expect("im delta^1 is 3-dimensional here");
        let dnu = AlgCochain {
            s: 2,
            w: 0,
            coords: d1.row_vec(row),
        };
        let section = CocycleSection::standard(&alg).unwrap();
        let mu_prime = section.cochain(0).add(alg.ring(), &dnu);
        let section2 = CocycleSection::new(&alg, vec![mu_prime]).unwrap();
        let eta1 = eta_zero(&alg, &section).unwrap();
        let eta2 = eta_zero(&alg, &section2).unwrap();
        assert_ne!(eta1.table(), eta2.table());
        let iso = find_equivalence(&eta1, &eta2)
            .unwrap()
            .expect("coboundary shifts are gauge-trivial");
        assert!(transports(&eta1, &eta2, &iso));
        // negative control: the deformed and trivial structures are not
        // equivalent
        let trivial = LieDeformation::trivial(&alg, eta1.base()).unwrap();
        assert!(find_equivalence(&eta1, &trivial).unwrap().is_none());
    }

    #[test]
    fn ab21_extends_freely_up_the_truncation_tower() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        let eta = eta_zero(&alg, &section).unwrap();
        // D₁ is structurally F₅[t]/t²; extend along 0 → k → F₅[t]/t³ → F₅[t]/t²
        let ext = AlgExtension::truncation(f(5), 2);
        assert!(eta.base().same_structure(ext.base()));
        let ob = obstruction_class(&eta, &ext).unwrap();
        assert!(ob.is_zero());
        assert!(ob.coords.is_empty()); // H³(0) itself vanishes
        match extend_deformation(&eta, &ext).unwrap() {
            ExtendOutcome::Extended(bigger) => {
                assert_eq!(bigger.bracket_basis(1, 0, 1, 1), vec![vec![0, 1, 0]]);
            }
            ExtendOutcome::Obstructed(_) => panic!("no obstruction expected"),
        }
    }

    #[test]
    fn crafted_direction_is_obstructed_over_f2_and_f3() {
        for l in [2u64, 3] {
            let alg = ab4(l);
            let mu = crafted_cochain(&alg);
            let dual = ArtinLocalAlgebra::dual_numbers(f(l));
            let t = vec![0, 1];
            let def = LieDeformation::from_cochain_terms(&alg, &dual, &[(t, mu)]).unwrap();
            let ext = AlgExtension::truncation(f(l), 2);
            let ob = obstruction_class(&def, &ext).unwrap();
            assert_eq!(ob.coords, vec![1], "l = {l}");
            match extend_deformation(&def, &ext).unwrap() {
                ExtendOutcome::Extended(_) => panic!("extension should be obstructed"),
                ExtendOutcome::Obstructed(obs) => assert!(!obs[0].is_zero()),
            }
        }
    }

    #[test]
    fn exhaustive_search_confirms_the_obstruction() {
        // every candidate second-order correction fails Jacobi over F₂[t]/t³
        let alg = ab4(2);
        let mu = crafted_cochain(&alg);
        let cubic = ArtinLocalAlgebra::truncated_polynomial(f(2), 3);
        let module = adjoint_module(&alg);
        let dim2 = cochain_space(&alg, &module, 2, 0).dim();
        assert_eq!(dim2, 5);
        let mut successes = 0usize;
        for code in 0..(1u64 << dim2) {
            let beta_coords: Vec<u64> = (0..dim2).map(|i| (code >> i) & 1).collect();
            let beta = AlgCochain {
                s: 2,
                w: 0,
                coords: beta_coords,
            };
            let terms = vec![
                (vec![0, 1, 0], mu.clone()),
                (vec![0, 0, 1], beta),
            ];
            if LieDeformation::from_cochain_terms(&alg, &cubic, &terms).is_ok() {
                successes += 1;
            }
        }
        assert_eq!(successes, 0);
    }

    #[test]
    fn obstruction_class_is_lift_independent() {
        let alg = ab4(3);
        let mu = crafted_cochain(&alg);
        let dual = ArtinLocalAlgebra::dual_numbers(f(3));
        let def = LieDeformation::from_cochain_terms(&alg, &dual, &[(vec![0, 1], mu)]).unwrap();
        let ext = AlgExtension::truncation(f(3), 2);
        let lifted = lift_table(&def, &ext).unwrap();
        let base_obs = obstruction_of_lift(&alg, &ext, &lifted).unwrap();
        // perturb the lift by kernel-valued junk: t² times an arbitrary
        // 2-cochain
        let module = adjoint_module(&alg);
        let space = cochain_space(&alg, &module, 2, 0);
        for seed in [1u64, 7, 23] {
            let mut tweaked = lifted.clone();
            let junk_coords: Vec<u64> = (0..space.dim())
                .map(|i| (seed.wrapping_mul(2654435761).wrapping_add(i as u64 * 97)) % 3)
                .collect();
            let junk = AlgCochain {
                s: 2,
                w: 0,
                coords: junk_coords,
            };
            add_cochain_term(&alg, ext.total(), &mut tweaked, &[0, 0, 1], &junk);
            let obs = obstruction_of_lift(&alg, &ext, &tweaked).unwrap();
            assert_eq!(obs[0].coords, base_obs[0].coords);
        }
    }

    #[test]
    fn tower_on_heisenberg_stays_at_the_point() {
        let alg = GradedLieAlgebra::heisenberg(f(5));
        let section = CocycleSection::standard(&alg).unwrap();
        let tower = miniversal_tower(&alg, &section, 3).unwrap();
        for stage in &tower {
            assert_eq!(stage.base.rank(), 1);
            assert_eq!(stage.phi_rank, 0);
        }
    }

    #[test]
    fn tower_on_ab21_builds_power_series_truncations() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        let tower = miniversal_tower(&alg, &section, 4).unwrap();
        for (k, stage) in tower.iter().enumerate() {
            // stage k+1 lives over F₅[t]/t^(k+2)
            assert_eq!(
                stage.base.as_truncated_polynomial(),
                Some(k + 2),
                "stage {}",
                stage.stage
            );
            assert_eq!(stage.phi_rank, 0);
            // the deformation stays [x,y] = t·z at every stage
            let b = stage.eta.bracket_basis(1, 0, 1, 1);
            let mut expected = vec![0u64; stage.base.rank()];
            expected[1] = 1;
            assert_eq!(b, vec![expected]);
            if let Some(ext) = &stage.extension {
                assert_eq!(ext.kernel_rank(), 1);
            }
        }
    }

    #[test]
    fn tower_on_obstructed_abelian_cuts_one_direction() {
        let alg = ab4(2);
        let section = CocycleSection::standard(&alg).unwrap();
        assert_eq!(section.dimension(), 5);
        let tower = miniversal_tower(&alg, &section, 2).unwrap();
        assert_eq!(tower[0].base.rank(), 6);
        // universal extension of the square-zero D₁ has a 15-dimensional
        // kernel; the obstruction map has rank 1, so the next stage keeps 14
        // kernel directions
        let stage2 = &tower[1];
        assert_eq!(stage2.phi_rank, 1);
        assert_eq!(stage2.base.rank(), 20);
        assert_eq!(stage2.extension.as_ref().unwrap().kernel_rank(), 14);
        stage2.eta.validate().unwrap();
    }

    #[test]
    fn quadratic_map_vanishes_where_h3_does() {
        let alg = ab21(5);
        let section = CocycleSection::standard(&alg).unwrap();
        let q = quadratic_map(&alg, &section).unwrap();
        assert_eq!(q.h3_dimension, 0);
        assert!(q.is_zero());
        let heis = GradedLieAlgebra::heisenberg(f(5));
        let hsection = CocycleSection::standard(&heis).unwrap();
        let hq = quadratic_map(&heis, &hsection).unwrap();
        assert!(hq.pairing.is_empty());
    }

    #[test]
    fn quadratic_map_detects_the_obstructed_direction() {
        let alg = ab4(3);
        let section = CocycleSection::standard(&alg).unwrap();
        let q = quadratic_map(&alg, &section).unwrap();
        assert_eq!(q.h3_dimension, 1);
        assert!(!q.is_zero());
        // symmetry of the pairing
        for i in 0..section.dimension() {
            for j in 0..section.dimension() {
                assert_eq!(q.pairing[i][j], q.pairing[j][i]);
            }
        }
        // the crafted direction evaluates to its self-insertion class
        let mu = crafted_cochain(&alg);
        let coords = section.classes().class_coords(&mu.coords).unwrap();
        let omega = q.evaluate(&coords).unwrap();
        assert_eq!(omega, vec![1]);
    }

    #[test]
    fn quadratic_form_is_not_halved_in_characteristic_two() {
        let alg = ab4(2);
        let section = CocycleSection::standard(&alg).unwrap();
        let q = quadratic_map(&alg, &section).unwrap();
        assert!(q.evaluate(&vec![0; section.dimension()]).is_none());
        assert!(!q.is_zero());
    }
}
