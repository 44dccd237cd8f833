//! Deformations of graded Lie algebra maps `ρ̄: G → L̄` with fixed source
//! and target.
//!
//! A deformation of `ρ̄` over an Artin local base `A` is a degree-preserving
//! `A`-linear map `G ⊗ A → L̄ ⊗ A` that respects brackets and reduces to
//! `ρ̄` modulo the maximal ideal. The coefficient module throughout is the
//! composite of `ρ̄` with the adjoint action (`x · m = [ρ̄(x), m]`):
//!
//! - the tangent space of the deformation problem is `H¹(G, Ad∘ρ̄)(0)`;
//! - lifting along a base extension with kernel killed by the maximal ideal
//!   is controlled by a certificate class in `H²(G, Ad∘ρ̄)(0)` per kernel
//!   direction: the class vanishes exactly when a lift exists;
//! - the order-2 relations of the universal parameter ring come from the
//!   pairing `(c, c′) ↦ [c(x), c′(y)] + [c′(x), c(y)]` on tangent cocycles.
//!
//! Because the algebras here are strictly positively graded, `C⁰(G, M)(0)`
//! vanishes, so tangent cocycles and tangent classes coincide and the inner
//! degree-0 gauge group is trivial: distinct lifts are genuinely
//! inequivalent.

use crate::ce_cohomology::{cochain_space, cohomology_space, delta_matrix};
use crate::coeff::{CoeffError, Mat, Subquotient};
use crate::graded_lie::{pullback_module, GradedLieAlgebra, GradedLieError, GradedMorphism, LieModule};
use crate::harrison::{AlgExtension, ArtinError, ArtinLocalAlgebra};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("source, target, and base must share one coefficient ring")]
    RingMismatch,
    #[error("tangent and obstruction spaces require field coefficients")]
    NeedsField,
    #[error("deformation base does not match the extension base")]
    BaseMismatch,
    #[error("extension kernel is not killed by the maximal ideal")]
    KernelNotSmall,
    #[error("image table has the wrong shape: {0}")]
    Shape(String),
    #[error("reduction mod m does not recover the reference map at degree {0}, index {1}")]
    ReductionMismatch(usize, usize),
    #[error("map does not respect brackets at ({0:?}, {1:?})")]
    BracketDefect((usize, usize), (usize, usize)),
    #[error("deformation coefficient lies outside the maximal ideal")]
    CoefficientNotInMaxIdeal,
    #[error("tangent coordinate vector has the wrong length")]
    TangentShape,
    #[error("search space of size {0} exceeds the bound {1}")]
    SearchSpaceTooLarge(u128, u128),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Artin(#[from] ArtinError),
    #[error(transparent)]
    Lie(#[from] GradedLieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A graded bracket map `ρ̄: G → L̄` together with the module structure it
/// induces on the target.
#[derive(Debug, Clone)]
pub struct GradedRep {
    source: GradedLieAlgebra,
    target: GradedLieAlgebra,
    rho: GradedMorphism,
    module: LieModule,
}

impl GradedRep {
    pub fn new(
        source: GradedLieAlgebra,
        target: GradedLieAlgebra,
        rho: GradedMorphism,
    ) -> Result<Self, RepError> {
        // re-derive against the stated pair so a foreign morphism cannot
        // slip through, and validate bracket compatibility
        let rho = GradedMorphism::new(&source, &target, rho.matrices().to_vec())?;
        rho.validate(&source, &target)?;
        let module = pullback_module(&source, &target, &rho);
        module.validate(&source)?;
        Ok(GradedRep {
            source,
            target,
            rho,
            module,
        })
    }

    /// The zero map, which always respects brackets.
    pub fn zero(source: GradedLieAlgebra, target: GradedLieAlgebra) -> Result<Self, RepError> {
        let rho = GradedMorphism::zero_map(&source, &target)?;
        Self::new(source, target, rho)
    }

    pub fn identity(alg: &GradedLieAlgebra) -> Result<Self, RepError> {
        Self::new(
            alg.clone(),
            alg.clone(),
            GradedMorphism::identity(alg),
        )
    }

    pub fn source(&self) -> &GradedLieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedLieAlgebra {
        &self.target
    }

    pub fn rho(&self) -> &GradedMorphism {
        &self.rho
    }

    /// The target as a module over the source through the map.
    pub fn module(&self) -> &LieModule {
        &self.module
    }
}

/// A degree-preserving bracket-respecting map `G → L̄ ⊗ A` reducing to the
/// reference map mod `m`: `images[deg-1][a][b]` holds the base coefficient
/// of target basis vector `b` in the image of source basis vector `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDeformation {
    base: ArtinLocalAlgebra,
    images: Vec<Vec<Vec<Vec<u64>>>>,
}

impl RepDeformation {
    pub fn new(
        rep: &GradedRep,
        base: &ArtinLocalAlgebra,
        images: Vec<Vec<Vec<Vec<u64>>>>,
    ) -> Result<Self, RepError> {
        let def = RepDeformation {
            base: base.clone(),
            images,
        };
        def.validate(rep)?;
        Ok(def)
    }

    /// The constant deformation `ρ̄ ⊗ 1`.
    pub fn trivial(rep: &GradedRep, base: &ArtinLocalAlgebra) -> Result<Self, RepError> {
        Self::from_cochain_terms(rep, base, &[])
    }

    /// `ρ̄ ⊗ 1 + Σ coeff_k ⊗ c_k` for weight-zero 1-cochains given by
    /// `C¹(G, Ad∘ρ̄)(0)` coordinates and maximal-ideal coefficients. Fully
    /// validated, so non-lifts are rejected here.
    pub fn from_cochain_terms(
        rep: &GradedRep,
        base: &ArtinLocalAlgebra,
        terms: &[(Vec<u64>, Vec<u64>)],
    ) -> Result<Self, RepError> {
        let source = &rep.source;
        if source.ring() != base.ring() {
            return Err(RepError::RingMismatch);
        }
        let mut images: Vec<Vec<Vec<Vec<u64>>>> = (1..=source.truncation())
            .map(|deg| {
                let m = rep.rho.matrix(deg);
                (0..source.rank(deg))
                    .map(|a| {
                        (0..rep.target.rank(deg))
                            .map(|b| base.scale(m.get(a, b), &base.one()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let space = cochain_space(source, &rep.module, 1, 0);
        for (coeff, cochain) in terms {
            if coeff.len() != base.rank() {
                return Err(RepError::Shape("coefficient length".into()));
            }
            if !base.in_max_ideal(coeff) {
                return Err(RepError::CoefficientNotInMaxIdeal);
            }
            if cochain.len() != space.dim() {
                return Err(RepError::TangentShape);
            }
            for (p, (tup, b)) in space.basis().iter().enumerate() {
                if cochain[p] == 0 {
                    continue;
                }
                let (deg, a) = tup[0];
                let scaled = base.scale(cochain[p], coeff);
                let entry = &mut images[deg - 1][a][*b];
                *entry = base.add(entry, &scaled);
            }
        }
        Self::new(rep, base, images)
    }

    pub fn base(&self) -> &ArtinLocalAlgebra {
        &self.base
    }

    pub fn images(&self) -> &Vec<Vec<Vec<Vec<u64>>>> {
        &self.images
    }

    /// Base coefficients of the image of source basis vector `(deg, a)`.
    pub fn image(&self, deg: usize, a: usize) -> &Vec<Vec<u64>> {
        &self.images[deg - 1][a]
    }

    /// The 1-cochain of coefficients along a non-unit base direction, as
    /// `C¹(G, Ad∘ρ̄)(0)` coordinates.
    pub fn deviation_cochain(&self, rep: &GradedRep, q: usize) -> Vec<u64> {
        let space = cochain_space(&rep.source, &rep.module, 1, 0);
        space
            .basis()
            .iter()
            .map(|(tup, b)| {
                let (deg, a) = tup[0];
                self.images[deg - 1][a][*b][q]
            })
            .collect()
    }

    pub fn validate(&self, rep: &GradedRep) -> Result<(), RepError> {
        let source = &rep.source;
        let target = &rep.target;
        let base = &self.base;
        if source.ring() != base.ring() || target.ring() != base.ring() {
            return Err(RepError::RingMismatch);
        }
        let d = source.truncation();
        if self.images.len() != d {
            return Err(RepError::Shape("degree count".into()));
        }
        for deg in 1..=d {
            let block = &self.images[deg - 1];
            if block.len() != source.rank(deg)
                || block
                    .iter()
                    .any(|r| r.len() != target.rank(deg) || r.iter().any(|v| v.len() != base.rank()))
            {
                return Err(RepError::Shape(format!("degree {deg} block")));
            }
        }
        // reduction mod m recovers the reference map
        for deg in 1..=d {
            let m = rep.rho.matrix(deg);
            for a in 0..source.rank(deg) {
                for b in 0..target.rank(deg) {
                    if base.residue(&self.images[deg - 1][a][b])
                        != base.ring().residue_field().reduce(m.get(a, b))
                    {
                        return Err(RepError::ReductionMismatch(deg, a));
                    }
                }
            }
        }
        // bracket condition on increasing basis pairs (antisymmetry of both
        // brackets makes the remaining pairs redundant)
        let basis = source.basis();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let (di, a) = basis[i];
                let (dj, b) = basis[j];
                let deg = di + dj;
                if deg > d {
                    continue;
                }
                if self.bracket_defect(rep, (di, a), (dj, b)).is_some() {
                    return Err(RepError::BracketDefect((di, a), (dj, b)));
                }
            }
        }
        Ok(())
    }

    /// `ρ([x,y]) − [ρx, ρy]` on a source basis pair; `None` when it
    /// vanishes, otherwise the target coefficients.
    fn bracket_defect(
        &self,
        rep: &GradedRep,
        (di, a): (usize, usize),
        (dj, b): (usize, usize),
    ) -> Option<Vec<Vec<u64>>> {
        let base = &self.base;
        let deg = di + dj;
        let rank = rep.target.rank(deg);
        let mut defect = vec![vec![0u64; base.rank()]; rank];
        let cg = rep.source.bracket_basis(di, a, dj, b);
        for (t, &c) in cg.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (s, v) in self.images[deg - 1][t].iter().enumerate() {
                defect[s] = base.add(&defect[s], &base.scale(c, v));
            }
        }
        for (p, vp) in self.images[di - 1][a].iter().enumerate() {
            if vp.iter().all(|&x| x == 0) {
                continue;
            }
            for (q, vq) in self.images[dj - 1][b].iter().enumerate() {
                if vq.iter().all(|&x| x == 0) {
                    continue;
                }
                let prod = base.mul(vp, vq);
                let cl = rep.target.bracket_basis(di, p, dj, q);
                for (s, &c) in cl.iter().enumerate() {
                    if c != 0 {
                        defect[s] = base.sub(&defect[s], &base.scale(c, &prod));
                    }
                }
            }
        }
        if defect.iter().any(|v| v.iter().any(|&x| x != 0)) {
            Some(defect)
        } else {
            None
        }
    }
}

/// `H¹(G, Ad∘ρ̄)(0)` with its representative cocycles. Each representative
/// exponentiates to a first-order deformation over the dual numbers.
pub fn tangent_space(rep: &GradedRep) -> Result<Subquotient, RepError> {
    if !rep.source.ring().is_field() {
        return Err(RepError::NeedsField);
    }
    Ok(cohomology_space(&rep.source, &rep.module, 1, 0)?)
}

/// Per kernel direction of a base extension: the class of the lifting
/// defect in `H²(G, Ad∘ρ̄)(0)`, zero exactly when a lift exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    /// Class coordinates on the representative basis of `H²(G, Ad∘ρ̄)(0)`,
    /// one row per kernel generator.
    pub coords: Vec<Vec<u64>>,
    /// The defect 2-cocycles, in `C²(G, Ad∘ρ̄)(0)` coordinates.
    pub witnesses: Vec<Vec<u64>>,
}

impl ObstructionCertificate {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(|&c| c == 0)
    }
}

fn check_extension(rho0: &RepDeformation, ext: &AlgExtension) -> Result<(), RepError> {
    if !ext.total().ring().is_field() {
        return Err(RepError::NeedsField);
    }
    if !rho0.base.same_structure(ext.base()) {
        return Err(RepError::BaseMismatch);
    }
    if !ext.kernel_killed_by_max_ideal() {
        return Err(RepError::KernelNotSmall);
    }
    Ok(())
}

/// Canonical entrywise lift of the image table along the extension.
fn lift_images(
    rho0: &RepDeformation,
    ext: &AlgExtension,
) -> Result<Vec<Vec<Vec<Vec<u64>>>>, RepError> {
    let p = ext.projection().matrix();
    rho0.images
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            p.solve_left(v)
                                .ok_or_else(|| RepError::Internal("projection not surjective".into()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn certificate_of_lift(
    rep: &GradedRep,
    ext: &AlgExtension,
    lifted: &RepDeformation,
) -> Result<ObstructionCertificate, RepError> {
    let kernel = ext.kernel_rows();
    let e = kernel.rows();
    let space2 = cochain_space(&rep.source, &rep.module, 2, 0);
    let mut witnesses = vec![vec![0u64; space2.dim()]; e];
    for (p, (tup, m)) in space2.basis().iter().enumerate() {
        let defect = lifted.bracket_defect(rep, tup[0], tup[1]);
        let value = match &defect {
            Some(d) => d[*m].clone(),
            None => continue,
        };
        let lambda = kernel.solve_left(&value).ok_or_else(|| {
            RepError::Internal("lifting defect escaped the extension kernel".into())
        })?;
        for (k, &l) in lambda.iter().enumerate() {
            witnesses[k][p] = l;
        }
    }
    let d2 = delta_matrix(&rep.source, &rep.module, 2, 0);
    let h2 = cohomology_space(&rep.source, &rep.module, 2, 0)?;
    let mut coords = Vec::with_capacity(e);
    for w in &witnesses {
        let mut row = Mat::empty(rep.source.ring(), d2.rows());
        row.push_row(w);
        if !row.mul(&d2)?.is_zero() {
            return Err(RepError::Internal("lifting defect is not closed".into()));
        }
        coords.push(
            h2.class_coords(w)
                .ok_or_else(|| RepError::Internal("defect class outside cycle span".into()))?,
        );
    }
    Ok(ObstructionCertificate { coords, witnesses })
}

/// The lifting certificate of a deformation along a base extension whose
/// kernel is killed by the maximal ideal. The class does not depend on the
/// chosen entrywise lift.
pub fn rep_obstruction(
    rep: &GradedRep,
    rho0: &RepDeformation,
    ext: &AlgExtension,
) -> Result<ObstructionCertificate, RepError> {
    check_extension(rho0, ext)?;
    let lifted = RepDeformation {
        base: ext.total().clone(),
        images: lift_images(rho0, ext)?,
    };
    certificate_of_lift(rep, ext, &lifted)
}

pub enum RepLiftOutcome {
    Lifted(RepDeformation),
    Obstructed(ObstructionCertificate),
}

/// Lift a deformation along the extension when the certificate vanishes:
/// the correction solves the first-differential system `δc = defect` per
/// kernel direction; the lifted map is re-validated in full.
pub fn lift_representation(
    rep: &GradedRep,
    rho0: &RepDeformation,
    ext: &AlgExtension,
) -> Result<RepLiftOutcome, RepError> {
    check_extension(rho0, ext)?;
    let total = ext.total();
    let mut images = lift_images(rho0, ext)?;
    let lifted = RepDeformation {
        base: total.clone(),
        images: images.clone(),
    };
    let cert = certificate_of_lift(rep, ext, &lifted)?;
    let d1 = delta_matrix(&rep.source, &rep.module, 1, 0);
    let space1 = cochain_space(&rep.source, &rep.module, 1, 0);
    let mut corrections = Vec::with_capacity(cert.witnesses.len());
    for (k, w) in cert.witnesses.iter().enumerate() {
        match d1.solve_left(w) {
            Some(c) => {
                if cert.coords[k].iter().any(|&x| x != 0) {
                    return Err(RepError::Internal("solvable defect with nonzero class".into()));
                }
                corrections.push(c);
            }
            None => {
                if cert.coords[k].iter().all(|&x| x == 0) {
                    return Err(RepError::Internal("vanishing class with unsolvable defect".into()));
                }
                return Ok(RepLiftOutcome::Obstructed(cert));
            }
        }
    }
    for (k, c) in corrections.iter().enumerate() {
        for (p, (tup, b)) in space1.basis().iter().enumerate() {
            if c[p] == 0 {
                continue;
            }
            let (deg, a) = tup[0];
            let scaled = total.scale(c[p], ext.kernel_rows().row(k));
            let entry = &mut images[deg - 1][a][*b];
            *entry = total.add(entry, &scaled);
        }
    }
    Ok(RepLiftOutcome::Lifted(RepDeformation::new(rep, total, images)?))
}

/// The result of a brute-force lift enumeration. Strictly positive gradings
/// make the inner degree-0 gauge group trivial (`(L̄ ⊗ m)₀ = 0`), so every
/// lift is its own equivalence class and no quotienting happens.
pub struct LiftEnumeration {
    pub lifts: Vec<RepDeformation>,
    pub search_space: u128,
    /// Order of the inner gauge group acting on the lifts; `1` here, see
    /// the struct docs.
    pub gauge_group_size: u64,
}

/// Enumerate every bracket-respecting lift of the reference map over the
/// base, in lexicographic coordinate order. Refuses searches larger than
/// `bound`.
pub fn enumerate_lifts(
    rep: &GradedRep,
    base: &ArtinLocalAlgebra,
    bound: u128,
) -> Result<LiftEnumeration, RepError> {
    let source = &rep.source;
    if source.ring() != base.ring() {
        return Err(RepError::RingMismatch);
    }
    let space = cochain_space(source, &rep.module, 1, 0);
    let slots = space.dim();
    let mrank = base.rank() - 1;
    let l = base.ring().modulus() as u128;
    let coords = slots
        .checked_mul(mrank)
        .ok_or_else(|| RepError::Internal("coordinate count overflow".into()))?;
    let mut search_space: u128 = 1;
    for _ in 0..coords {
        search_space = search_space
            .checked_mul(l)
            .ok_or(RepError::SearchSpaceTooLarge(u128::MAX, bound))?;
        if search_space > bound {
            return Err(RepError::SearchSpaceTooLarge(search_space, bound));
        }
    }
    // maximal-ideal basis directions (unit vectors off the unit index)
    let dirs: Vec<usize> = (0..base.rank()).filter(|&q| q != base.unit_index()).collect();
    let modulus = base.ring().modulus();
    let mut lifts = Vec::new();
    let mut odometer = vec![0u64; coords];
    loop {
        // terms: per direction, the 1-cochain of coordinates assigned to it
        let terms: Vec<(Vec<u64>, Vec<u64>)> = dirs
            .iter()
            .enumerate()
            .map(|(di, &q)| {
                let mut coeff = vec![0u64; base.rank()];
                coeff[q] = 1;
                let cochain = odometer[di * slots..(di + 1) * slots].to_vec();
                (coeff, cochain)
            })
            .collect();
        if let Ok(lift) = RepDeformation::from_cochain_terms(rep, base, &terms) {
            lifts.push(lift);
        }
        // advance
        let mut i = 0;
        loop {
            if i == coords {
                return Ok(LiftEnumeration {
                    lifts,
                    search_space,
                    gauge_group_size: 1,
                });
            }
            odometer[i] += 1;
            if odometer[i] < modulus {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

/// The order-2 presentation of the universal parameter ring: `h₁` formal
/// parameters, one quadratic relation per `H²(G, Ad∘ρ̄)(0)` direction.
#[derive(Debug, Clone)]
pub struct RepPresentation {
    ring: crate::coeff::CoeffRing,
    pub h1_dimension: usize,
    pub h2_dimension: usize,
    /// `pairing[i][j]` = class of `(x,y) ↦ [c_i x, c_j y] + [c_j x, c_i y]`.
    pub pairing: Vec<Vec<Vec<u64>>>,
    /// `self_classes[i]` = class of `(x,y) ↦ [c_i x, c_i y]`; for odd `l`
    /// this is half the diagonal pairing entry.
    pub self_classes: Vec<Vec<u64>>,
}

impl RepPresentation {
    pub fn is_zero_pairing(&self) -> bool {
        self.pairing.iter().flatten().all(|v| v.iter().all(|&c| c == 0))
            && self.self_classes.iter().all(|v| v.iter().all(|&c| c == 0))
    }

    /// The exact second-order obstruction of the tangent vector with these
    /// coordinates: the class of `(x,y) ↦ [c(α)x, c(α)y]`. A first-order
    /// deformation extends one more order exactly when this vanishes.
    pub fn obstruction_value(&self, alpha: &[u64]) -> Vec<u64> {
        let ring = self.ring;
        let mut out = vec![0u64; self.h2_dimension];
        for (i, &ai) in alpha.iter().enumerate() {
            let sq = ring.mul(ai, ai);
            for (t, o) in out.iter_mut().enumerate() {
                *o = ring.add(*o, ring.mul(sq, self.self_classes[i][t]));
            }
            for (j, &aj) in alpha.iter().enumerate().skip(i + 1) {
                let c = ring.mul(ai, aj);
                if c == 0 {
                    continue;
                }
                for (t, o) in out.iter_mut().enumerate() {
                    *o = ring.add(*o, ring.mul(c, self.pairing[i][j][t]));
                }
            }
        }
        out
    }

    /// The halved quadratic form `½ Σ α_i α_j pairing[i][j]`; `None` when
    /// `l = 2`. For odd `l` it coincides with [`Self::obstruction_value`].
    pub fn halved_evaluation(&self, alpha: &[u64]) -> Option<Vec<u64>> {
        if self.ring.l() == 2 {
            return None;
        }
        let half = self.ring.inv(2).expect("2 is a unit for odd l");
        let mut out = vec![0u64; self.h2_dimension];
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

/// Compute the symmetric tangent pairing and the self-insertion classes
/// from the canonical tangent representatives.
pub fn quadratic_relations(rep: &GradedRep) -> Result<RepPresentation, RepError> {
    let ring = rep.source.ring();
    if !ring.is_field() {
        return Err(RepError::NeedsField);
    }
    let tangent = tangent_space(rep)?;
    let h2 = cohomology_space(&rep.source, &rep.module, 2, 0)?;
    let space1 = cochain_space(&rep.source, &rep.module, 1, 0);
    let space2 = cochain_space(&rep.source, &rep.module, 2, 0);
    let n = tangent.dimension();
    // cocycle as map: (deg, a) -> target coefficients
    let as_map = |coords: &[u64]| -> Vec<Vec<Vec<u64>>> {
        let mut out: Vec<Vec<Vec<u64>>> = (1..=rep.source.truncation())
            .map(|deg| vec![vec![0u64; rep.target.rank(deg)]; rep.source.rank(deg)])
            .collect();
        for (p, (tup, b)) in space1.basis().iter().enumerate() {
            let (deg, a) = tup[0];
            out[deg - 1][a][*b] = coords[p];
        }
        out
    };
    let maps: Vec<Vec<Vec<Vec<u64>>>> = (0..n)
        .map(|i| as_map(tangent.representatives().row(i)))
        .collect();
    // value of (x,y) -> [ci x, cj y] on the C^2 basis (not alternating for
    // i != j; callers symmetrize)
    let insert = |ci: &Vec<Vec<Vec<u64>>>, cj: &Vec<Vec<Vec<u64>>>| -> Vec<u64> {
        space2
            .basis()
            .iter()
            .map(|(tup, m)| {
                let (d1, a1) = tup[0];
                let (d2, a2) = tup[1];
                let mut acc = 0u64;
                for (p, &cp) in ci[d1 - 1][a1].iter().enumerate() {
                    if cp == 0 {
                        continue;
                    }
                    for (q, &cq) in cj[d2 - 1][a2].iter().enumerate() {
                        if cq == 0 {
                            continue;
                        }
                        let cl = rep.target.bracket_basis(d1, p, d2, q);
                        acc = ring.add(acc, ring.mul(ring.mul(cp, cq), cl[*m]));
                    }
                }
                acc
            })
            .collect()
    };
    let class_of = |v: &[u64]| -> Result<Vec<u64>, RepError> {
        h2.class_coords(v)
            .ok_or_else(|| RepError::Internal("tangent pairing left the cycles".into()))
    };
    let mut pairing = vec![vec![vec![0u64; h2.dimension()]; n]; n];
    let mut self_classes = vec![vec![0u64; h2.dimension()]; n];
    for i in 0..n {
        self_classes[i] = class_of(&insert(&maps[i], &maps[i]))?;
        for j in 0..n {
            let mut v = insert(&maps[i], &maps[j]);
            for (x, y) in v.iter_mut().zip(insert(&maps[j], &maps[i])) {
                *x = ring.add(*x, y);
            }
            pairing[i][j] = class_of(&v)?;
        }
    }
    Ok(RepPresentation {
        ring,
        h1_dimension: n,
        h2_dimension: h2.dimension(),
        pairing,
        self_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;
    use crate::graded_lie::free_lie_truncated;
    use std::collections::BTreeSet;

    fn f(l: u64) -> CoeffRing {
        CoeffRing::field(l).unwrap()
    }

    /// Zero map from the rank-(2,1) abelian algebra into the Heisenberg
    /// algebra: every degree-0 hom is a tangent cocycle (h₁ = 5) and the
    /// second-order obstruction of `x ↦ αx'+βy', y ↦ γx'+δy'` is
    /// `(αδ − βγ)·[x',y' ↦ z']`.
    fn zero_into_heisenberg(l: u64) -> GradedRep {
        let source = GradedLieAlgebra::abelian(f(l), vec![2, 1]).unwrap();
        let target = GradedLieAlgebra::heisenberg(f(l));
        GradedRep::zero(source, target).unwrap()
    }

    #[test]
    fn tangent_of_one_generator_abelian_line() {
        let alg = GradedLieAlgebra::abelian(f(2), vec![1]).unwrap();
        let rep = GradedRep::identity(&alg).unwrap();
        let tangent = tangent_space(&rep).unwrap();
        assert_eq!(tangent.dimension(), 1);
        let dual = ArtinLocalAlgebra::dual_numbers(f(2));
        let c = tangent.representatives().row_vec(0);
        let lift = RepDeformation::from_cochain_terms(&rep, &dual, &[(vec![0, 1], c)]).unwrap();
        assert_eq!(lift.image(1, 0), &vec![vec![1, 1]]);
        let all = enumerate_lifts(&rep, &dual, 100).unwrap();
        assert_eq!(all.lifts.len(), 2);
        assert_eq!(all.search_space, 2);
        assert_eq!(all.gauge_group_size, 1);
    }

    #[test]
    fn tangent_representatives_exponentiate_and_stay_distinct() {
        for rep in [
            GradedRep::identity(&GradedLieAlgebra::heisenberg(f(2))).unwrap(),
            GradedRep::identity(&GradedLieAlgebra::abelian(f(2), vec![2, 1]).unwrap()).unwrap(),
            zero_into_heisenberg(2),
        ] {
            let tangent = tangent_space(&rep).unwrap();
            let dual = ArtinLocalAlgebra::dual_numbers(f(2));
            let mut seen = BTreeSet::new();
            for i in 0..tangent.dimension() {
                let c = tangent.representatives().row_vec(i);
                let lift =
                    RepDeformation::from_cochain_terms(&rep, &dual, &[(vec![0, 1], c)]).unwrap();
                assert!(seen.insert(lift.deviation_cochain(&rep, 1)));
            }
            assert_eq!(seen.len(), tangent.dimension());
        }
    }

    #[test]
    fn lift_counts_over_dual_numbers_match_tangent_dimension() {
        // |lifts over k[eps]| = l^(dim H^1(0)); C^0(0) = 0 makes every
        // cocycle a class, so the count is exact, not just a lower bound
        let fam = {
            let specs = vec![
                ((1, 0), (1, 1), vec![(0, 1)]),
                ((1, 0), (2, 0), vec![(0, 1)]),
                ((1, 1), (2, 0), vec![(0, 1)]),
            ];
            GradedLieAlgebra::new(f(2), vec![2, 1, 1, 1], vec![], &specs).unwrap()
        };
        let free3 = free_lie_truncated(f(2), &[("x".into(), 1), ("y".into(), 1)], 3)
            .unwrap()
            .into_algebra();
        let cases = [
            (GradedRep::identity(&GradedLieAlgebra::heisenberg(f(2))).unwrap(), 4usize),
            (
                GradedRep::identity(&GradedLieAlgebra::abelian(f(2), vec![2, 1]).unwrap()).unwrap(),
                5,
            ),
            (GradedRep::identity(&fam).unwrap(), 4),
            (GradedRep::identity(&free3).unwrap(), 4),
            (zero_into_heisenberg(2), 5),
        ];
        let dual = ArtinLocalAlgebra::dual_numbers(f(2));
        for (rep, h1) in cases {
            assert_eq!(tangent_space(&rep).unwrap().dimension(), h1);
            let all = enumerate_lifts(&rep, &dual, 1 << 12).unwrap();
            assert_eq!(all.lifts.len(), 1usize << h1);
        }
    }

    #[test]
    fn tangent_of_zero_map_counts_commutator_free_homs() {
        // degree-0 homs Heis -> Heis vanishing on the bracket image: the
        // four degree-1 coordinates are free, the z-image is pinned to 0
        let heis = GradedLieAlgebra::heisenberg(f(5));
        let rep = GradedRep::zero(heis.clone(), heis).unwrap();
        assert_eq!(tangent_space(&rep).unwrap().dimension(), 4);
    }

    #[test]
    fn enumeration_over_the_field_is_the_reference_map_alone() {
        let rep = zero_into_heisenberg(3);
        let point = ArtinLocalAlgebra::base(f(3));
        let all = enumerate_lifts(&rep, &point, 10).unwrap();
        assert_eq!(all.lifts.len(), 1);
        assert_eq!(all.lifts[0], RepDeformation::trivial(&rep, &point).unwrap());
    }

    #[test]
    fn enumeration_refuses_oversized_searches() {
        let rep = zero_into_heisenberg(3);
        let cubic = ArtinLocalAlgebra::truncated_polynomial(f(3), 3);
        match enumerate_lifts(&rep, &cubic, 100) {
            Err(RepError::SearchSpaceTooLarge(size, bound)) => {
                assert!(size > 100);
                assert_eq!(bound, 100);
            }
            _ => panic!("expected a search-space refusal"),
        }
    }

    #[test]
    fn free_source_lifts_without_obstruction() {
        // maps out of a free truncation extend along any coefficient chain:
        // generator images lift freely
        let free = free_lie_truncated(f(5), &[("x".into(), 1), ("y".into(), 1)], 3).unwrap();
        let alg = free.algebra().clone();
        // a nontrivial endomorphism: x -> x, y -> x + y
        let images = vec![
            alg.basis_element(1, 0),
            {
                let mut c = alg.zero_element().coords().to_vec();
                c[0] = vec![1, 1];
                alg.element_from_coords(c).unwrap()
            },
        ];
        let rho = free.extend_to_morphism(&alg, &images).unwrap();
        let rep = GradedRep::new(alg.clone(), alg.clone(), rho).unwrap();
        let tangent = tangent_space(&rep).unwrap();
        assert!(tangent.dimension() > 0);
        // obstruction target is trivial for the free truncation
        assert_eq!(
            cohomology_space(&rep.source, &rep.module, 2, 0).unwrap().dimension(),
            0
        );
        let quad = ArtinLocalAlgebra::truncated_polynomial(f(5), 2);
        let c = tangent.representatives().row_vec(0);
        let rho1 = RepDeformation::from_cochain_terms(&rep, &quad, &[(vec![0, 1], c)]).unwrap();
        let ext2 = AlgExtension::truncation(f(5), 2);
        let cert = rep_obstruction(&rep, &rho1, &ext2).unwrap();
        assert!(cert.is_zero());
        let rho2 = match lift_representation(&rep, &rho1, &ext2).unwrap() {
            RepLiftOutcome::Lifted(r) => r,
            RepLiftOutcome::Obstructed(_) => panic!("free source must lift"),
        };
        // one more rung up the chain
        let ext3 = AlgExtension::truncation(f(5), 3);
        match lift_representation(&rep, &rho2, &ext3).unwrap() {
            RepLiftOutcome::Lifted(r) => {
                assert_eq!(r.base().rank(), 4);
                // the first-order deviation is preserved up the tower
                assert_eq!(
                    r.deviation_cochain(&rep, 1),
                    rho1.deviation_cochain(&rep, 1)
                );
            }
            RepLiftOutcome::Obstructed(_) => panic!("free source must lift"),
        }
    }

    #[test]
    fn trivial_deformation_lifts_trivially_with_zero_witness() {
        let rep = zero_into_heisenberg(5);
        let quad = ArtinLocalAlgebra::truncated_polynomial(f(5), 2);
        let rho0 = RepDeformation::trivial(&rep, &quad).unwrap();
        let ext = AlgExtension::truncation(f(5), 2);
        let cert = rep_obstruction(&rep, &rho0, &ext).unwrap();
        assert!(cert.is_zero());
        assert!(cert.witnesses.iter().flatten().all(|&x| x == 0));
        match lift_representation(&rep, &rho0, &ext).unwrap() {
            RepLiftOutcome::Lifted(r) => {
                assert_eq!(r, RepDeformation::trivial(&rep, ext.total()).unwrap());
            }
            RepLiftOutcome::Obstructed(_) => panic!("trivial lift must exist"),
        }
    }

    #[test]
    fn hyperbolic_obstruction_over_f2() {
        // rho = t(alpha x' + beta y', gamma x' + delta y') extends to t^2
        // exactly when alpha*delta - beta*gamma = 0
        let rep = zero_into_heisenberg(2);
        let tangent = tangent_space(&rep).unwrap();
        assert_eq!(tangent.dimension(), 5);
        let quad = ArtinLocalAlgebra::truncated_polynomial(f(2), 2);
        let ext = AlgExtension::truncation(f(2), 2);
        let mut liftable = 0usize;
        let mut first_obstructed = None;
        for code in 0..32u64 {
            let alpha: Vec<u64> = (0..5).map(|i| (code >> i) & 1).collect();
            let mut c = vec![0u64; tangent.representatives().cols()];
            for (i, &ai) in alpha.iter().enumerate() {
                if ai != 0 {
                    for (x,y) in c.iter_mut().zip(tangent.representatives().row(i)) {
                        *x ^= y;
                    }
                }
            }
            let rho1 =
                RepDeformation::from_cochain_terms(&rep, &quad, &[(vec![0, 1], c)]).unwrap();
            let cert = rep_obstruction(&rep, &rho1, &ext).unwrap();
            match lift_representation(&rep, &rho1, &ext).unwrap() {
                RepLiftOutcome::Lifted(_) => {
                    assert!(cert.is_zero());
                    liftable += 1;
                }
                RepLiftOutcome::Obstructed(c2) => {
                    assert!(!cert.is_zero());
                    assert_eq!(cert.coords, c2.coords);
                    if first_obstructed.is_none() {
                        first_obstructed = Some(rho1.clone());
                    }
                }
            }
        }
        // #{2x2 singular matrices over F2} * #{z-images} = 10 * 2
        assert_eq!(liftable, 20);
        // exhaustive confirmation for one obstructed instance: no
        // second-order correction exists among all 32 candidates
        let obstructed = first_obstructed.expect("12 obstructed directions exist");
        let cubic = ArtinLocalAlgebra::truncated_polynomial(f(2), 3);
        let c1 = obstructed.deviation_cochain(&rep, 1);
        for code in 0..32u64 {
            let c2: Vec<u64> = (0..5).map(|i| (code >> i) & 1).collect();
            let terms = vec![(vec![0, 1, 0], c1.clone()), (vec![0, 0, 1], c2)];
            assert!(RepDeformation::from_cochain_terms(&rep, &cubic, &terms).is_err());
        }
    }

    #[test]
    fn quadratic_relations_cut_out_the_liftable_tangent_vectors() {
        let rep = zero_into_heisenberg(3);
        let pres = quadratic_relations(&rep).unwrap();
        assert_eq!(pres.h1_dimension, 5);
        assert_eq!(pres.h2_dimension, 1);
        // symmetry and odd-characteristic halving consistency
        let ring = f(3);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(pres.pairing[i][j], pres.pairing[j][i]);
            }
            let doubled: Vec<u64> = pres.self_classes[i]
                .iter()
                .map(|&x| ring.mul(2, x))
                .collect();
            assert_eq!(pres.pairing[i][i], doubled);
        }
        // the scalar pairing matrix has rank 4 (hyperbolic on two planes)
        let mut scalar = Mat::zero(ring, 5, 5);
        for i in 0..5 {
            for j in 0..5 {
                scalar.set(i, j, pres.pairing[i][j][0]);
            }
        }
        assert_eq!(scalar.howell_form().rows(), 4);
        // obstruction_value agrees with the halved form and with lifting
        let quad = ArtinLocalAlgebra::truncated_polynomial(f(3), 2);
        let ext = AlgExtension::truncation(f(3), 2);
        let tangent = tangent_space(&rep).unwrap();
        let mut zero_count = 0usize;
        for code in 0..243u64 {
            let mut alpha = vec![0u64; 5];
            let mut c = code;
            for a in alpha.iter_mut() {
                *a = c % 3;
                c /= 3;
            }
            let value = pres.obstruction_value(&alpha);
            assert_eq!(pres.halved_evaluation(&alpha).unwrap(), value);
            let mut coords = vec![0u64; tangent.representatives().cols()];
            for (i, &ai) in alpha.iter().enumerate() {
                for (x, y) in coords.iter_mut().zip(tangent.representatives().row(i)) {
                    *x = ring.add(*x, ring.mul(ai, *y));
                }
            }
            let rho1 =
                RepDeformation::from_cochain_terms(&rep, &quad, &[(vec![0, 1], coords)]).unwrap();
            let lifted = matches!(
                lift_representation(&rep, &rho1, &ext).unwrap(),
                RepLiftOutcome::Lifted(_)
            );
            assert_eq!(lifted, value.iter().all(|&x| x == 0));
            if lifted {
                zero_count += 1;
            }
        }
        // #{2x2 singular matrices over F3} * #{z-images} = 33 * 3
        assert_eq!(zero_count, 99);
    }

    #[test]
    fn full_enumeration_confirms_the_order_two_presentation() {
        // every lift over F3[t]/t^3 = (liftable first-order part) x (free
        // second-order correction): 99 * 243 lifts, and the set of
        // first-order parts is exactly the zero locus of the relation
        let rep = zero_into_heisenberg(3);
        let cubic = ArtinLocalAlgebra::truncated_polynomial(f(3), 3);
        let all = enumerate_lifts(&rep, &cubic, 60_000).unwrap();
        assert_eq!(all.search_space, 59_049);
        assert_eq!(all.lifts.len(), 99 * 243);
        let first_orders: BTreeSet<Vec<u64>> = all
            .lifts
            .iter()
            .map(|l| l.deviation_cochain(&rep, 1))
            .collect();
        assert_eq!(first_orders.len(), 99);
        let pres = quadratic_relations(&rep).unwrap();
        let tangent = tangent_space(&rep).unwrap();
        let ring = f(3);
        let mut predicted = BTreeSet::new();
        for code in 0..243u64 {
            let mut alpha = vec![0u64; 5];
            let mut c = code;
            for a in alpha.iter_mut() {
                *a = c % 3;
                c /= 3;
            }
            if pres.obstruction_value(&alpha).iter().all(|&x| x == 0) {
                let mut coords = vec![0u64; tangent.representatives().cols()];
                for (i, &ai) in alpha.iter().enumerate() {
                    for (x, y) in coords.iter_mut().zip(tangent.representatives().row(i)) {
                        *x = ring.add(*x, ring.mul(ai, *y));
                    }
                }
                predicted.insert(coords);
            }
        }
        assert_eq!(first_orders, predicted);
    }

    #[test]
    fn presentation_is_empty_or_zero_in_the_expected_cases() {
        // free truncation: the obstruction target vanishes
        let free3 = free_lie_truncated(f(5), &[("x".into(), 1), ("y".into(), 1)], 3)
            .unwrap()
            .into_algebra();
        let rep = GradedRep::identity(&free3).unwrap();
        let pres = quadratic_relations(&rep).unwrap();
        assert_eq!(pres.h2_dimension, 0);
        assert!(pres.is_zero_pairing());
        assert!(pres.obstruction_value(&vec![1; pres.h1_dimension]).is_empty());
        // rank-zero target: no tangent directions at all
        let heis = GradedLieAlgebra::heisenberg(f(5));
        let none = GradedLieAlgebra::abelian(f(5), vec![0, 0]).unwrap();
        let rep0 = GradedRep::zero(heis, none).unwrap();
        let pres0 = quadratic_relations(&rep0).unwrap();
        assert_eq!(pres0.h1_dimension, 0);
        assert!(pres0.pairing.is_empty());
        // and the halved form is refused in characteristic two
        let rep2 = zero_into_heisenberg(2);
        let pres2 = quadratic_relations(&rep2).unwrap();
        assert!(pres2.halved_evaluation(&vec![0; 5]).is_none());
        assert!(!pres2.is_zero_pairing());
    }
}
