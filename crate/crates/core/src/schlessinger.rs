//! Representability tests for set-valued functors on small categories of
//! truncated graded Lie algebras.
//!
//! A [`TestCategory`] is a finite diagram: objects are equal-truncation
//! algebras over one field, arrows are validated graded morphisms, and a
//! list of designated cospans `(f: N′ → N, g: N″ → N)` comes with a cone
//! object plus two legs that the constructor verifies to be a genuine
//! fiber product `N′ ×_N N″`. Functors are given either by a representing
//! object (`Hom(L, −)`, evaluated by brute enumeration) or by explicit
//! tables.
//!
//! [`check_criteria`] runs the four lifting criteria on the designated
//! cospans: surjectivity of `F(N′ ×_N N″) → F(N′) ×_{F(N)} F(N″)` over
//! small sections (H1), bijectivity at `(N = 0, N″ = L(ε))` (H2),
//! finite-dimensionality of the tangent set `F(L(ε))` under the ε-scalings
//! (H3), and bijectivity over all small sections (H4). H1–H3 together are
//! the hull criterion; adding H4 gives pro-representability.
//!
//! Arrows are split into a core pool, over which the checker quantifies
//! and demands cospan coverage, and auxiliary cone legs, which only carry
//! functor actions. Without the split, covering one small section between
//! nonzero objects would demand cones among ever-larger products, with no
//! finite closure.

use crate::coeff::{CoeffError, Mat};
use crate::graded_lie::{Element, GradedLieAlgebra, GradedLieError, GradedMorphism};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchlessingerError {
    #[error("this construction requires field coefficients")]
    NeedsField,
    #[error("objects must share one coefficient ring")]
    RingMismatch,
    #[error("objects must share one truncation degree")]
    TruncationMismatch,
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("the distinguished zero object has a nonzero rank")]
    NotZeroObject,
    #[error("the distinguished ε-object is not one-dimensional in degree 1")]
    NotEpsilonObject,
    #[error("fiber product legs must share a target")]
    TargetMismatch,
    #[error("cospan {0} is invalid: {1}")]
    ConeMismatch(usize, String),
    #[error("hom space of size {0} exceeds the bound {1}")]
    HomSpaceTooLarge(u128, u128),
    #[error("functor sends the zero object to a set of size {0}, not 1")]
    ZeroAxiom(usize),
    #[error("oracle is not a functor: {0}")]
    NotAFunctor(String),
    #[error("oracle table has the wrong shape: {0}")]
    OracleShape(String),
    #[error("no designated cospan covers the pair (arrow {0}, small arrow {1})")]
    MissingCospan(usize, usize),
    #[error("universal property fails on cospan {0}: {1}")]
    UniversalProperty(usize, String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Lie(#[from] GradedLieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// An arrow of the diagram. Auxiliary arrows exist only to carry functor
/// actions for cone legs; the criteria checker does not quantify over
/// them.
#[derive(Debug, Clone)]
pub struct CatArrow {
    pub source: usize,
    pub target: usize,
    pub map: GradedMorphism,
    pub auxiliary: bool,
}

/// A designated cospan `(f, g)` together with a verified limit cone:
/// `left: cone → source(f)`, `right: cone → source(g)`. All five fields
/// index into the category's object and arrow lists.
#[derive(Debug, Clone)]
pub struct Cospan {
    pub f: usize,
    pub g: usize,
    pub cone: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone)]
pub struct TestCategory {
    objects: Vec<GradedLieAlgebra>,
    arrows: Vec<CatArrow>,
    cospans: Vec<Cospan>,
    zero: usize,
    epsilon: usize,
}

/// Outcome of the small-section test: surjective with a central kernel
/// generated by one element. A zero kernel counts as small but is flagged
/// degenerate and excluded from the H1/H4 quantification.
#[derive(Debug, Clone)]
pub struct SmallSection {
    pub small: bool,
    pub degenerate: bool,
    pub generator: Option<Element>,
}

/// Decide whether `map` is surjective with a principal central ideal
/// kernel. Centrality forces the ideal to be a line, so the test is:
/// surjective, kernel of dimension at most one, and the kernel line
/// brackets to zero with all of the source.
pub fn is_small_section(
    source: &GradedLieAlgebra,
    target: &GradedLieAlgebra,
    map: &GradedMorphism,
) -> Result<SmallSection, SchlessingerError> {
    let map = GradedMorphism::new(source, target, map.matrices().to_vec())?;
    map.validate(source, target)?;
    let not_small = SmallSection {
        small: false,
        degenerate: false,
        generator: None,
    };
    if !map.is_surjective() {
        return Ok(not_small);
    }
    let kernel = map.kernel();
    let total: usize = kernel.iter().map(|k| k.rows()).sum();
    match total {
        0 => Ok(SmallSection {
            small: true,
            degenerate: true,
            generator: None,
        }),
        1 => {
            let (deg, row) = kernel
                .iter()
                .enumerate()
                .find_map(|(i, k)| (k.rows() == 1).then(|| (i + 1, k.row_vec(0))))
                .expect("one kernel row exists");
            let mut coords: Vec<Vec<u64>> = (1..=source.truncation())
                .map(|i| vec![0u64; source.rank(i)])
                .collect();
            coords[deg - 1] = row;
            let t = source.element_from_coords(coords)?;
            let central = source
                .basis()
                .into_iter()
                .all(|(i, a)| source.bracket(&source.basis_element(i, a), &t).is_zero());
            if central {
                Ok(SmallSection {
                    small: true,
                    degenerate: false,
                    generator: Some(t),
                })
            } else {
                Ok(not_small)
            }
        }
        _ => Ok(not_small),
    }
}

/// The fiber product `{(a, b) : f(a) = g(b)}` of `f: N′ → N` and
/// `g: N″ → N` as a sub-Lie-algebra of the direct sum, with its two
/// projections. Basis rows per degree come from the canonical kernel
/// basis, so the construction is deterministic.
pub fn fiber_product(
    nprime: &GradedLieAlgebra,
    nsecond: &GradedLieAlgebra,
    n: &GradedLieAlgebra,
    f: &GradedMorphism,
    g: &GradedMorphism,
) -> Result<(GradedLieAlgebra, GradedMorphism, GradedMorphism), SchlessingerError> {
    let ring = n.ring();
    if nprime.ring() != ring || nsecond.ring() != ring {
        return Err(SchlessingerError::RingMismatch);
    }
    if !ring.is_field() {
        return Err(SchlessingerError::NeedsField);
    }
    let d = n.truncation();
    if nprime.truncation() != d || nsecond.truncation() != d {
        return Err(SchlessingerError::TruncationMismatch);
    }
    let f = GradedMorphism::new(nprime, n, f.matrices().to_vec())?;
    f.validate(nprime, n)?;
    let g = GradedMorphism::new(nsecond, n, g.matrices().to_vec())?;
    g.validate(nsecond, n)?;
    // degreewise solutions of f(a) - g(b) = 0
    let bases: Vec<Mat> = (1..=d)
        .map(|deg| {
            let stacked = f
                .matrix(deg)
                .vstack(&g.matrix(deg).scale(ring.neg(1)))?;
            Ok(stacked.kernel_basis())
        })
        .collect::<Result<_, CoeffError>>()?;
    let ranks: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
    let mut specs = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            if i + j > d {
                continue;
            }
            for a in 0..ranks[i - 1] {
                let b_start = if i == j { a + 1 } else { 0 };
                for b in b_start..ranks[j - 1] {
                    let value = bracket_in_sum(
                        nprime, nsecond, &bases, i, bases[i - 1].row(a), j, bases[j - 1].row(b),
                    )?;
                    let entries: Vec<(usize, u64)> = value
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(t, &c)| (t, c))
                        .collect();
                    if !entries.is_empty() {
                        specs.push(((i, a), (j, b), entries));
                    }
                }
            }
        }
    }
    let fiber = GradedLieAlgebra::new(ring, ranks.clone(), vec![], &specs)?;
    let mut left_mats = Vec::new();
    let mut right_mats = Vec::new();
    for deg in 1..=d {
        let rp = nprime.rank(deg);
        let rs = nsecond.rank(deg);
        let mut lm = Mat::zero(ring, ranks[deg - 1], rp);
        let mut rm = Mat::zero(ring, ranks[deg - 1], rs);
        for a in 0..ranks[deg - 1] {
            let row = bases[deg - 1].row(a);
            for c in 0..rp {
                lm.set(a, c, row[c]);
            }
            for c in 0..rs {
                rm.set(a, c, row[rp + c]);
            }
        }
        left_mats.push(lm);
        right_mats.push(rm);
    }
    let left = GradedMorphism::new(&fiber, nprime, left_mats)?;
    left.validate(&fiber, nprime)?;
    let right = GradedMorphism::new(&fiber, nsecond, right_mats)?;
    right.validate(&fiber, nsecond)?;
    Ok((fiber, left, right))
}

/// Bracket of two fiber-basis rows inside `N′ ⊕ N″`, re-expressed in the
/// degree-`i+j` fiber basis.
fn bracket_in_sum(
    nprime: &GradedLieAlgebra,
    nsecond: &GradedLieAlgebra,
    bases: &[Mat],
    i: usize,
    x: &[u64],
    j: usize,
    y: &[u64],
) -> Result<Vec<u64>, SchlessingerError> {
    let ring = nprime.ring();
    let rp_i = nprime.rank(i);
    let rp_j = nprime.rank(j);
    let rp_t = nprime.rank(i + j);
    let rs_t = nsecond.rank(i + j);
    let mut ambient = vec![0u64; rp_t + rs_t];
    for (a, &xa) in x[..rp_i].iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y[..rp_j].iter().enumerate() {
            if yb == 0 {
                continue;
            }
            let c = ring.mul(xa, yb);
            for (t, &v) in nprime.bracket_basis(i, a, j, b).iter().enumerate() {
                ambient[t] = ring.add(ambient[t], ring.mul(c, v));
            }
        }
    }
    for (a, &xa) in x[rp_i..].iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y[rp_j..].iter().enumerate() {
            if yb == 0 {
                continue;
            }
            let c = ring.mul(xa, yb);
            for (t, &v) in nsecond.bracket_basis(i, a, j, b).iter().enumerate() {
                ambient[rp_t + t] = ring.add(ambient[rp_t + t], ring.mul(c, v));
            }
        }
    }
    bases[i + j - 1].solve_left(&ambient).ok_or_else(|| {
        SchlessingerError::Internal("fiber bracket left the fiber subspace".into())
    })
}

impl TestCategory {
    /// Validate and assemble a category. Every arrow is re-validated
    /// against its stated endpoints, and every designated cospan is
    /// checked to be a genuine fiber product: the legs commute with the
    /// cospan and the comparison map onto the concrete fiber product is an
    /// isomorphism.
    pub fn new(
        objects: Vec<GradedLieAlgebra>,
        arrows: Vec<CatArrow>,
        cospans: Vec<Cospan>,
        zero: usize,
        epsilon: usize,
    ) -> Result<Self, SchlessingerError> {
        if objects.is_empty() {
            return Err(SchlessingerError::BadIndex("no objects".into()));
        }
        let ring = objects[0].ring();
        if !ring.is_field() {
            return Err(SchlessingerError::NeedsField);
        }
        let d = objects[0].truncation();
        for o in &objects {
            if o.ring() != ring {
                return Err(SchlessingerError::RingMismatch);
            }
            if o.truncation() != d {
                return Err(SchlessingerError::TruncationMismatch);
            }
        }
        let obj = |i: usize| -> Result<&GradedLieAlgebra, SchlessingerError> {
            objects
                .get(i)
                .ok_or_else(|| SchlessingerError::BadIndex(format!("object {i}")))
        };
        let zero_obj = obj(zero)?;
        if (1..=d).any(|i| zero_obj.rank(i) != 0) {
            return Err(SchlessingerError::NotZeroObject);
        }
        let eps = obj(epsilon)?;
        if eps.rank(1) != 1 || (2..=d).any(|i| eps.rank(i) != 0) {
            return Err(SchlessingerError::NotEpsilonObject);
        }
        for a in &arrows {
            let src = obj(a.source)?;
            let tgt = obj(a.target)?;
            let rebuilt = GradedMorphism::new(src, tgt, a.map.matrices().to_vec())?;
            rebuilt.validate(src, tgt)?;
        }
        for (ci, c) in cospans.iter().enumerate() {
            let bad = |why: &str| SchlessingerError::ConeMismatch(ci, why.into());
            let arrow = |i: usize| -> Result<&CatArrow, SchlessingerError> {
                arrows
                    .get(i)
                    .ok_or_else(|| SchlessingerError::BadIndex(format!("arrow {i}")))
            };
            let (f, g) = (arrow(c.f)?, arrow(c.g)?);
            let (left, right) = (arrow(c.left)?, arrow(c.right)?);
            if f.target != g.target {
                return Err(bad("cospan legs have different targets"));
            }
            if left.source != c.cone || right.source != c.cone {
                return Err(bad("cone legs do not start at the cone"));
            }
            if left.target != f.source || right.target != g.source {
                return Err(bad("cone legs do not end at the cospan sources"));
            }
            if left.map.then(&f.map)? != right.map.then(&g.map)? {
                return Err(bad("cone legs do not commute with the cospan"));
            }
            let (fiber, _, _) = fiber_product(
                obj(f.source)?,
                obj(g.source)?,
                obj(f.target)?,
                &f.map,
                &g.map,
            )?;
            let cone = obj(c.cone)?;
            for deg in 1..=d {
                if cone.rank(deg) != fiber.rank(deg) {
                    return Err(bad("cone rank differs from the fiber product"));
                }
                // comparison map: cone basis -> (left, right) coordinates,
                // expressed in the fiber basis; must be invertible
                let combined = left.map.matrix(deg).hstack(right.map.matrix(deg))?;
                let rp = obj(f.source)?.rank(deg);
                let rs = obj(g.source)?.rank(deg);
                let fiber_rows = {
                    let stacked = f
                        .map
                        .matrix(deg)
                        .vstack(&g.map.matrix(deg).scale(ring.neg(1)))?;
                    stacked.kernel_basis()
                };
                let mut comparison = Mat::zero(ring, cone.rank(deg), fiber.rank(deg));
                for r in 0..combined.rows() {
                    let row: Vec<u64> = (0..rp + rs).map(|cix| combined.get(r, cix)).collect();
                    let coords = fiber_rows
                        .solve_left(&row)
                        .ok_or_else(|| bad("cone does not land in the fiber product"))?;
                    for (cix, v) in coords.into_iter().enumerate() {
                        comparison.set(r, cix, v);
                    }
                }
                if comparison.howell_form().rows() != fiber.rank(deg) {
                    return Err(bad("comparison map onto the fiber product is not invertible"));
                }
            }
        }
        Ok(TestCategory {
            objects,
            arrows,
            cospans,
            zero,
            epsilon,
        })
    }

    pub fn objects(&self) -> &[GradedLieAlgebra] {
        &self.objects
    }

    pub fn arrows(&self) -> &[CatArrow] {
        &self.arrows
    }

    pub fn cospans(&self) -> &[Cospan] {
        &self.cospans
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn epsilon(&self) -> usize {
        self.epsilon
    }

    /// The minimal category around one seed object: `0`, `L(ε)`, the seed
    /// `S`, and the products `S ⊕ L(ε)` and `L(ε) ⊕ L(ε)`.
    ///
    /// Core arrows (in order): identities on the five objects, the zero
    /// maps `L(ε) → 0` and `S → 0`, and the ε-scalings by `2..l`.
    /// Auxiliary cone legs: the four product projections. Cospans cover
    /// every core pair over the zero object.
    pub fn epsilon_category(seed: &GradedLieAlgebra) -> Result<Self, SchlessingerError> {
        let ring = seed.ring();
        let d = seed.truncation();
        let zero = GradedLieAlgebra::abelian(ring, vec![0; d])?;
        let eps = epsilon_object(ring, d)?;
        let s_eps = seed.direct_sum(&eps)?;
        let eps_eps = eps.direct_sum(&eps)?;
        let objects = vec![
            zero.clone(),
            eps.clone(),
            seed.clone(),
            s_eps.clone(),
            eps_eps.clone(),
        ];
        let mut arrows = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            arrows.push(CatArrow {
                source: i,
                target: i,
                map: GradedMorphism::identity(o),
                auxiliary: false,
            });
        }
        let z_eps = arrows.len();
        arrows.push(CatArrow {
            source: 1,
            target: 0,
            map: GradedMorphism::zero_map(&eps, &zero)?,
            auxiliary: false,
        });
        let z_seed = arrows.len();
        arrows.push(CatArrow {
            source: 2,
            target: 0,
            map: GradedMorphism::zero_map(seed, &zero)?,
            auxiliary: false,
        });
        for c in 2..ring.modulus() {
            arrows.push(CatArrow {
                source: 1,
                target: 1,
                map: scaling(&eps, c)?,
                auxiliary: false,
            });
        }
        let p1 = arrows.len();
        arrows.push(CatArrow {
            source: 4,
            target: 1,
            map: proj_first(&eps_eps, &eps, &eps)?,
            auxiliary: true,
        });
        let p2 = arrows.len();
        arrows.push(CatArrow {
            source: 4,
            target: 1,
            map: proj_second(&eps_eps, &eps, &eps)?,
            auxiliary: true,
        });
        let p_s = arrows.len();
        arrows.push(CatArrow {
            source: 3,
            target: 2,
            map: proj_first(&s_eps, seed, &eps)?,
            auxiliary: true,
        });
        let q_eps = arrows.len();
        arrows.push(CatArrow {
            source: 3,
            target: 1,
            map: proj_second(&s_eps, seed, &eps)?,
            auxiliary: true,
        });
        let cospans = vec![
            Cospan {
                f: z_eps,
                g: z_eps,
                cone: 4,
                left: p1,
                right: p2,
            },
            Cospan {
                f: z_seed,
                g: z_eps,
                cone: 3,
                left: p_s,
                right: q_eps,
            },
            Cospan {
                f: 0,
                g: z_eps,
                cone: 1,
                left: z_eps,
                right: 1,
            },
        ];
        TestCategory::new(objects, arrows, cospans, 0, 1)
    }

    /// The category around a seed with one-dimensional top degree and its
    /// central quotient `Q = S / S(d)`: objects `0`, `L(ε)`, `S`, `Q`,
    /// `S ⊕ L(ε)`, `Q ⊕ L(ε)`, `L(ε) ⊕ L(ε)`, and `S ×_Q S`. The quotient
    /// map is a non-degenerate small section between nonzero objects, so
    /// H1/H4 get exercised away from the zero object.
    pub fn quotient_category(seed: &GradedLieAlgebra) -> Result<Self, SchlessingerError> {
        let ring = seed.ring();
        let d = seed.truncation();
        if seed.rank(d) != 1 {
            return Err(SchlessingerError::BadIndex(
                "quotient_category needs a one-dimensional top degree".into(),
            ));
        }
        let zero = GradedLieAlgebra::abelian(ring, vec![0; d])?;
        let eps = epsilon_object(ring, d)?;
        let (quot, q_map) = seed.central_quotient(d);
        let s_eps = seed.direct_sum(&eps)?;
        let q_eps_obj = quot.direct_sum(&eps)?;
        let eps_eps = eps.direct_sum(&eps)?;
        let (pair, pi1, pi2) = fiber_product(seed, seed, &quot, &q_map, &q_map)?;
        let objects = vec![
            zero.clone(),
            eps.clone(),
            seed.clone(),
            quot.clone(),
            s_eps.clone(),
            q_eps_obj.clone(),
            eps_eps.clone(),
            pair.clone(),
        ];
        let mut arrows = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            arrows.push(CatArrow {
                source: i,
                target: i,
                map: GradedMorphism::identity(o),
                auxiliary: false,
            });
        }
        let z_eps = arrows.len();
        arrows.push(CatArrow {
            source: 1,
            target: 0,
            map: GradedMorphism::zero_map(&eps, &zero)?,
            auxiliary: false,
        });
        let z_seed = arrows.len();
        arrows.push(CatArrow {
            source: 2,
            target: 0,
            map: GradedMorphism::zero_map(seed, &zero)?,
            auxiliary: false,
        });
        let z_quot = arrows.len();
        arrows.push(CatArrow {
            source: 3,
            target: 0,
            map: GradedMorphism::zero_map(&quot, &zero)?,
            auxiliary: false,
        });
        let q_arrow = arrows.len();
        arrows.push(CatArrow {
            source: 2,
            target: 3,
            map: q_map.clone(),
            auxiliary: false,
        });
        for c in 2..ring.modulus() {
            arrows.push(CatArrow {
                source: 1,
                target: 1,
                map: scaling(&eps, c)?,
                auxiliary: false,
            });
        }
        let aux = |arrows: &mut Vec<CatArrow>, source, target, map| {
            arrows.push(CatArrow {
                source,
                target,
                map,
                auxiliary: true,
            });
            arrows.len() - 1
        };
        let p1 = aux(&mut arrows, 6, 1, proj_first(&eps_eps, &eps, &eps)?);
        let p2 = aux(&mut arrows, 6, 1, proj_second(&eps_eps, &eps, &eps)?);
        let p_s = aux(&mut arrows, 4, 2, proj_first(&s_eps, seed, &eps)?);
        let q_s = aux(&mut arrows, 4, 1, proj_second(&s_eps, seed, &eps)?);
        let p_q = aux(&mut arrows, 5, 3, proj_first(&q_eps_obj, &quot, &eps)?);
        let q_q = aux(&mut arrows, 5, 1, proj_second(&q_eps_obj, &quot, &eps)?);
        let pi1 = aux(&mut arrows, 7, 2, pi1);
        let pi2 = aux(&mut arrows, 7, 2, pi2);
        let cospans = vec![
            Cospan {
                f: z_eps,
                g: z_eps,
                cone: 6,
                left: p1,
                right: p2,
            },
            Cospan {
                f: z_seed,
                g: z_eps,
                cone: 4,
                left: p_s,
                right: q_s,
            },
            Cospan {
                f: z_quot,
                g: z_eps,
                cone: 5,
                left: p_q,
                right: q_q,
            },
            Cospan {
                f: 0,
                g: z_eps,
                cone: 1,
                left: z_eps,
                right: 1,
            },
            Cospan {
                f: 3,
                g: q_arrow,
                cone: 2,
                left: q_arrow,
                right: 2,
            },
            Cospan {
                f: q_arrow,
                g: q_arrow,
                cone: 7,
                left: pi1,
                right: pi2,
            },
        ];
        TestCategory::new(objects, arrows, cospans, 0, 1)
    }
}

fn epsilon_object(
    ring: crate::coeff::CoeffRing,
    d: usize,
) -> Result<GradedLieAlgebra, SchlessingerError> {
    let mut ranks = vec![0usize; d];
    ranks[0] = 1;
    Ok(GradedLieAlgebra::abelian(ring, ranks)?)
}

fn scaling(eps: &GradedLieAlgebra, c: u64) -> Result<GradedMorphism, SchlessingerError> {
    let ring = eps.ring();
    let mats = (1..=eps.truncation())
        .map(|deg| {
            let n = eps.rank(deg);
            let mut m = Mat::zero(ring, n, n);
            for a in 0..n {
                m.set(a, a, ring.reduce(c));
            }
            m
        })
        .collect();
    Ok(GradedMorphism::new(eps, eps, mats)?)
}

fn proj_first(
    sum: &GradedLieAlgebra,
    a: &GradedLieAlgebra,
    b: &GradedLieAlgebra,
) -> Result<GradedMorphism, SchlessingerError> {
    let ring = sum.ring();
    let mats = (1..=sum.truncation())
        .map(|deg| {
            let (ra, rb) = (a.rank(deg), b.rank(deg));
            let mut m = Mat::zero(ring, ra + rb, ra);
            for i in 0..ra {
                m.set(i, i, 1);
            }
            m
        })
        .collect();
    Ok(GradedMorphism::new(sum, a, mats)?)
}

fn proj_second(
    sum: &GradedLieAlgebra,
    a: &GradedLieAlgebra,
    b: &GradedLieAlgebra,
) -> Result<GradedMorphism, SchlessingerError> {
    let ring = sum.ring();
    let mats = (1..=sum.truncation())
        .map(|deg| {
            let (ra, rb) = (a.rank(deg), b.rank(deg));
            let mut m = Mat::zero(ring, ra + rb, rb);
            for i in 0..rb {
                m.set(ra + i, i, 1);
            }
            m
        })
        .collect();
    Ok(GradedMorphism::new(sum, b, mats)?)
}

/// All graded Lie morphisms `source → target`, in lexicographic order of
/// their matrix entries. Refuses searches larger than `bound`.
pub fn enumerate_homs(
    source: &GradedLieAlgebra,
    target: &GradedLieAlgebra,
    bound: u128,
) -> Result<Vec<GradedMorphism>, SchlessingerError> {
    let ring = source.ring();
    if target.ring() != ring {
        return Err(SchlessingerError::RingMismatch);
    }
    let d = source.truncation();
    let entries: usize = (1..=d).map(|i| source.rank(i) * target.rank(i)).sum();
    let l = ring.modulus() as u128;
    let mut size: u128 = 1;
    for _ in 0..entries {
        size = size
            .checked_mul(l)
            .ok_or(SchlessingerError::HomSpaceTooLarge(u128::MAX, bound))?;
        if size > bound {
            return Err(SchlessingerError::HomSpaceTooLarge(size, bound));
        }
    }
    let mut out = Vec::new();
    let mut odometer = vec![0u64; entries];
    loop {
        let mut mats = Vec::with_capacity(d);
        let mut pos = 0;
        for deg in 1..=d {
            let (rs, rt) = (source.rank(deg), target.rank(deg));
            let mut m = Mat::zero(ring, rs, rt);
            for r in 0..rs {
                for c in 0..rt {
                    m.set(r, c, odometer[pos]);
                    pos += 1;
                }
            }
            mats.push(m);
        }
        let cand = GradedMorphism::new(source, target, mats)?;
        if cand.validate(source, target).is_ok() {
            out.push(cand);
        }
        let mut i = 0;
        loop {
            if i == entries {
                return Ok(out);
            }
            odometer[i] += 1;
            if odometer[i] < ring.modulus() {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

/// A set-valued functor on the category: either represented by a listed
/// object (`Hom(objects[i], −)`) or an explicit table. Table element sets
/// are `0..sizes[object]`; `actions[arrow]` maps source indices to target
/// indices, covering auxiliary arrows too.
#[derive(Debug, Clone)]
pub enum FunctorOracle {
    Representable { object: usize },
    Table(TableOracle),
}

#[derive(Debug, Clone)]
pub struct TableOracle {
    pub sizes: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

fn morphism_key(m: &GradedMorphism) -> Vec<u64> {
    let mut key = Vec::new();
    for mat in m.matrices() {
        for r in 0..mat.rows() {
            for c in 0..mat.cols() {
                key.push(mat.get(r, c));
            }
        }
    }
    key
}

/// Evaluate the oracle on every object and arrow of the category,
/// checking the functor axioms: the zero object maps to a point,
/// identities act as identities, and actions respect every composition of
/// core arrows whose composite is itself listed.
pub fn tabulate(
    cat: &TestCategory,
    oracle: &FunctorOracle,
    hom_bound: u128,
) -> Result<TableOracle, SchlessingerError> {
    let tab = match oracle {
        FunctorOracle::Representable { object } => {
            let rep = cat
                .objects
                .get(*object)
                .ok_or_else(|| SchlessingerError::BadIndex(format!("object {object}")))?;
            let mut homs: Vec<Vec<GradedMorphism>> = Vec::with_capacity(cat.objects.len());
            let mut lookup: Vec<BTreeMap<Vec<u64>, usize>> = Vec::with_capacity(cat.objects.len());
            for o in &cat.objects {
                let hs = enumerate_homs(rep, o, hom_bound)?;
                let mut map = BTreeMap::new();
                for (i, h) in hs.iter().enumerate() {
                    map.insert(morphism_key(h), i);
                }
                homs.push(hs);
                lookup.push(map);
            }
            let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
            let mut actions = Vec::with_capacity(cat.arrows.len());
            for a in &cat.arrows {
                let mut act = Vec::with_capacity(sizes[a.source]);
                for h in &homs[a.source] {
                    let composed = h.then(&a.map)?;
                    let idx = lookup[a.target]
                        .get(&morphism_key(&composed))
                        .ok_or_else(|| {
                            SchlessingerError::Internal(
                                "composition left the enumerated hom set".into(),
                            )
                        })?;
                    act.push(*idx);
                }
                actions.push(act);
            }
            TableOracle { sizes, actions }
        }
        FunctorOracle::Table(t) => t.clone(),
    };
    if tab.sizes.len() != cat.objects.len() {
        return Err(SchlessingerError::OracleShape("one size per object".into()));
    }
    if tab.actions.len() != cat.arrows.len() {
        return Err(SchlessingerError::OracleShape("one action per arrow".into()));
    }
    for (i, a) in cat.arrows.iter().enumerate() {
        let act = &tab.actions[i];
        if act.len() != tab.sizes[a.source] || act.iter().any(|&v| v >= tab.sizes[a.target]) {
            return Err(SchlessingerError::OracleShape(format!("action of arrow {i}")));
        }
    }
    if tab.sizes[cat.zero] != 1 {
        return Err(SchlessingerError::ZeroAxiom(tab.sizes[cat.zero]));
    }
    for (i, a) in cat.arrows.iter().enumerate() {
        if a.source == a.target && a.map == GradedMorphism::identity(&cat.objects[a.source]) {
            if tab.actions[i].iter().enumerate().any(|(u, &v)| u != v) {
                return Err(SchlessingerError::NotAFunctor(format!(
                    "identity arrow {i} does not act as the identity"
                )));
            }
        }
    }
    // functoriality on core compositions whose composite is listed
    for (i, m1) in cat.arrows.iter().enumerate() {
        if m1.auxiliary {
            continue;
        }
        for (j, m2) in cat.arrows.iter().enumerate() {
            if m2.auxiliary || m1.target != m2.source {
                continue;
            }
            let composite = m1.map.then(&m2.map)?;
            let listed = cat.arrows.iter().position(|a| {
                a.source == m1.source && a.target == m2.target && a.map == composite
            });
            if let Some(k) = listed {
                for u in 0..tab.sizes[m1.source] {
                    if tab.actions[k][u] != tab.actions[j][tab.actions[i][u]] {
                        return Err(SchlessingerError::NotAFunctor(format!(
                            "arrows {i};{j} disagree with their listed composite {k}"
                        )));
                    }
                }
            }
        }
    }
    Ok(tab)
}

/// Per-cospan outcome of the comparison map
/// `F(cone) → F(N′) ×_{F(N)} F(N″)`.
#[derive(Debug, Clone)]
pub struct CospanOutcome {
    pub cospan: usize,
    /// Whether the cospan counts for H1/H4: `g` is a non-degenerate small
    /// section.
    pub h14: bool,
    /// Whether the cospan counts for H2: the target is the zero object and
    /// `g` starts at the ε-object.
    pub h2: bool,
    pub surjective: bool,
    pub injective: bool,
}

#[derive(Debug, Clone)]
pub struct CriteriaReport {
    pub outcomes: Vec<CospanOutcome>,
    /// `|F(L(ε))|`.
    pub tangent_size: usize,
    /// `log_l` of the tangent size when it is an exact power of `l`.
    pub tangent_dimension: Option<u32>,
    /// Nonzero ε-scalings act bijectively on the tangent set.
    pub scalings_act: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub h4: bool,
}

impl CriteriaReport {
    /// H1-H3: the functor admits a hull.
    pub fn has_hull(&self) -> bool {
        self.h1 && self.h2 && self.h3
    }

    /// H1-H4: the functor is pro-representable.
    pub fn pro_representable(&self) -> bool {
        self.has_hull() && self.h4
    }
}

/// Run the four criteria over the designated cospans. Coverage is
/// enforced first: every pair (core arrow `f`, core non-degenerate small
/// section `g`) with a common target must have a designated cospan —
/// the category, not the checker, is responsible for shipping the closure.
pub fn check_criteria(
    cat: &TestCategory,
    oracle: &FunctorOracle,
    hom_bound: u128,
) -> Result<CriteriaReport, SchlessingerError> {
    let tab = tabulate(cat, oracle, hom_bound)?;
    let smalls: Vec<SmallSection> = cat
        .arrows
        .iter()
        .map(|a| is_small_section(&cat.objects[a.source], &cat.objects[a.target], &a.map))
        .collect::<Result<_, _>>()?;
    for (gi, (g, sg)) in cat.arrows.iter().zip(&smalls).enumerate() {
        if g.auxiliary || !sg.small || sg.degenerate {
            continue;
        }
        for (fi, f) in cat.arrows.iter().enumerate() {
            if f.auxiliary || f.target != g.target {
                continue;
            }
            if !cat.cospans.iter().any(|c| c.f == fi && c.g == gi) {
                return Err(SchlessingerError::MissingCospan(fi, gi));
            }
        }
    }
    let mut outcomes = Vec::with_capacity(cat.cospans.len());
    for (ci, c) in cat.cospans.iter().enumerate() {
        let (f, g) = (&cat.arrows[c.f], &cat.arrows[c.g]);
        let h14 = smalls[c.g].small && !smalls[c.g].degenerate;
        let h2 = f.target == cat.zero && g.source == cat.epsilon;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for x in 0..tab.sizes[f.source] {
            for y in 0..tab.sizes[g.source] {
                if tab.actions[c.f][x] == tab.actions[c.g][y] {
                    pairs.push((x, y));
                }
            }
        }
        let mut hits = vec![0usize; pairs.len()];
        for u in 0..tab.sizes[c.cone] {
            let image = (tab.actions[c.left][u], tab.actions[c.right][u]);
            match pairs.iter().position(|&p| p == image) {
                Some(k) => hits[k] += 1,
                None => {
                    return Err(SchlessingerError::NotAFunctor(
                        "cone legs do not commute with the cospan under the oracle".into(),
                    ))
                }
            }
        }
        outcomes.push(CospanOutcome {
            cospan: ci,
            h14,
            h2,
            surjective: hits.iter().all(|&h| h >= 1),
            injective: hits.iter().all(|&h| h <= 1),
        });
    }
    let tangent_size = tab.sizes[cat.epsilon];
    let l = cat.objects[0].ring().modulus();
    let tangent_dimension = {
        let mut s = tangent_size;
        let mut e = 0u32;
        while s > 1 && s % (l as usize) == 0 {
            s /= l as usize;
            e += 1;
        }
        (s == 1).then_some(e)
    };
    let mut scalings_act = true;
    for (i, a) in cat.arrows.iter().enumerate() {
        if a.auxiliary || a.source != cat.epsilon || a.target != cat.epsilon {
            continue;
        }
        let c = a.map.matrix(1).get(0, 0);
        let act = &tab.actions[i];
        if c != 0 {
            let mut seen = vec![false; tangent_size];
            for &v in act {
                seen[v] = true;
            }
            if seen.iter().any(|&s| !s) {
                scalings_act = false;
            }
        } else if act.windows(2).any(|w| w[0] != w[1]) {
            scalings_act = false;
        }
    }
    let h1 = outcomes.iter().filter(|o| o.h14).all(|o| o.surjective);
    let h2 = outcomes
        .iter()
        .filter(|o| o.h2)
        .all(|o| o.surjective && o.injective);
    let h3 = tangent_dimension.is_some() && scalings_act;
    let h4 = outcomes
        .iter()
        .filter(|o| o.h14)
        .all(|o| o.surjective && o.injective);
    Ok(CriteriaReport {
        outcomes,
        tangent_size,
        tangent_dimension,
        scalings_act,
        h1,
        h2,
        h3,
        h4,
    })
}

/// Exhaustively verify the universal property of a designated cospan
/// against the category: every commuting pair of arrows from a listed
/// object factors through the cone by exactly one graded morphism.
pub fn universal_property_holds(
    cat: &TestCategory,
    cospan: usize,
    hom_bound: u128,
) -> Result<(), SchlessingerError> {
    let c = cat
        .cospans
        .get(cospan)
        .ok_or_else(|| SchlessingerError::BadIndex(format!("cospan {cospan}")))?;
    let (f, g) = (&cat.arrows[c.f], &cat.arrows[c.g]);
    let (left, right) = (&cat.arrows[c.left], &cat.arrows[c.right]);
    for (u_idx, u) in cat.arrows.iter().enumerate() {
        if u.target != f.source {
            continue;
        }
        for (v_idx, v) in cat.arrows.iter().enumerate() {
            if v.target != g.source || v.source != u.source {
                continue;
            }
            if u.map.then(&f.map)? != v.map.then(&g.map)? {
                continue;
            }
            let candidates = enumerate_homs(
                &cat.objects[u.source],
                &cat.objects[c.cone],
                hom_bound,
            )?;
            let factoring = candidates
                .iter()
                .filter(|w| {
                    w.then(&left.map).map(|m| m == u.map).unwrap_or(false)
                        && w.then(&right.map).map(|m| m == v.map).unwrap_or(false)
                })
                .count();
            if factoring != 1 {
                return Err(SchlessingerError::UniversalProperty(
                    cospan,
                    format!(
                        "arrows {u_idx} and {v_idx} factor {factoring} times, expected once"
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Evaluations of `Hom(represented, −)` along the central-series tower
/// `target / Γ_n(target)` for `n = 1, …, d+1`, together with the check
/// that composing with each transition projection keeps every morphism
/// inside the next enumerated hom set.
#[derive(Debug, Clone)]
pub struct LimitSequence {
    pub sizes: Vec<usize>,
    pub consistent: bool,
}

pub fn limit_sequence(
    represented: &GradedLieAlgebra,
    target: &GradedLieAlgebra,
    hom_bound: u128,
) -> Result<LimitSequence, SchlessingerError> {
    let ring = target.ring();
    if !ring.is_field() {
        return Err(SchlessingerError::NeedsField);
    }
    let d = target.truncation();
    let stages: Vec<GradedLieAlgebra> = (1..=d + 1)
        .map(|n| target.central_quotient(n).0)
        .collect();
    let homs: Vec<Vec<GradedMorphism>> = stages
        .iter()
        .map(|q| enumerate_homs(represented, q, hom_bound))
        .collect::<Result<_, _>>()?;
    let mut consistent = true;
    for n in 0..stages.len() - 1 {
        // transition (stage n+1) -> (stage n): identity on the surviving part
        let big = &stages[n + 1];
        let small = &stages[n];
        let mats: Vec<Mat> = (1..=d)
            .map(|deg| {
                let mut m = Mat::zero(ring, big.rank(deg), small.rank(deg));
                for a in 0..small.rank(deg).min(big.rank(deg)) {
                    m.set(a, a, 1);
                }
                m
            })
            .collect();
        let trans = GradedMorphism::new(big, small, mats)?;
        trans.validate(big, small)?;
        let keys: std::collections::BTreeSet<Vec<u64>> =
            homs[n].iter().map(morphism_key).collect();
        for h in &homs[n + 1] {
            let pushed = h.then(&trans)?;
            if !keys.contains(&morphism_key(&pushed)) {
                consistent = false;
            }
        }
    }
    Ok(LimitSequence {
        sizes: homs.iter().map(|h| h.len()).collect(),
        consistent,
    })
}
