//! End-to-end walks through the public API, from structure constants to
//! miniversal bases and representation lifts, pinning the numbers the
//! smaller unit tests justify piecewise.

use lieforge_core::ce_cohomology::cohomology_space;
use lieforge_core::coeff::CoeffRing;
use lieforge_core::deformation::{
    classify_square_zero, eta_zero, extend_deformation, miniversal_tower, obstruction_class,
    CocycleSection, ExtendOutcome, LieDeformation,
};
use lieforge_core::graded_lie::{adjoint_module, free_lie_truncated, GradedLieAlgebra};
use lieforge_core::harrison::{AlgExtension, ArtinLocalAlgebra};
use lieforge_core::rep_deform::{
    enumerate_lifts, lift_representation, quadratic_relations, rep_obstruction, tangent_space,
    GradedRep, RepDeformation, RepLiftOutcome,
};

fn f(l: u64) -> CoeffRing {
    CoeffRing::field(l).unwrap()
}

#[test]
fn heisenberg_is_rigid_but_not_cohomologically_trivial() {
    let alg = GradedLieAlgebra::heisenberg(f(5));
    let module = adjoint_module(&alg);
    let dims: Vec<usize> = (0..=3)
        .map(|q| cohomology_space(&alg, &module, q, 0).unwrap().dimension())
        .collect();
    assert_eq!(dims, vec![0, 4, 0, 0]);

    // H^2(0) = 0 makes the miniversal base the point at every stage
    let section = CocycleSection::standard(&alg).unwrap();
    assert_eq!(section.dimension(), 0);
    for stage in miniversal_tower(&alg, &section, 3).unwrap() {
        assert_eq!(stage.base.rank(), 1);
        assert_eq!(stage.phi_rank, 0);
    }
}

#[test]
fn the_abelian_two_one_algebra_deforms_onto_a_line() {
    // one tangent direction, deforming [x,y] from 0 to t z
    let alg = GradedLieAlgebra::abelian(f(5), vec![2, 1]).unwrap();
    let section = CocycleSection::standard(&alg).unwrap();
    assert_eq!(section.dimension(), 1);

    let eta = eta_zero(&alg, &section).unwrap();
    eta.validate().unwrap();
    assert_eq!(eta.base().as_truncated_polynomial(), Some(2));
    assert_eq!(eta.bracket_basis(1, 0, 1, 1), vec![vec![0, 1]]);

    // the classification of the universal deformation is the identity on D_1
    let phi = classify_square_zero(&eta, &section).unwrap();
    assert_eq!(phi.matrix().row_vec(0), vec![1, 0]);
    assert_eq!(phi.matrix().row_vec(1), vec![0, 1]);

    // unobstructed: every truncation step extends, and the tower confirms it
    let ring = f(5);
    let mut def = eta;
    for n in 2..=4 {
        let ext = AlgExtension::truncation(ring, n);
        assert!(obstruction_class(&def, &ext).unwrap().is_zero());
        def = match extend_deformation(&def, &ext).unwrap() {
            ExtendOutcome::Extended(next) => next,
            ExtendOutcome::Obstructed(_) => panic!("the line direction is unobstructed"),
        };
        def.validate().unwrap();
    }
    assert_eq!(def.base().as_truncated_polynomial(), Some(5));

    let tower = miniversal_tower(&alg, &section, 4).unwrap();
    for stage in &tower {
        assert_eq!(stage.base.as_truncated_polynomial(), Some(stage.stage + 1));
        assert_eq!(stage.phi_rank, 0);
    }
}

#[test]
fn an_obstructed_direction_is_caught_at_the_first_extension_step() {
    // on the abelian (2,1,1,1) algebra the closed direction
    // (x,y) -> z, (x,z) -> u, (y,u) -> v has a nonzero self-bracket class
    let ring = f(2);
    let alg = GradedLieAlgebra::abelian(ring, vec![2, 1, 1, 1]).unwrap();
    let module = adjoint_module(&alg);
    let space = lieforge_core::ce_cohomology::cochain_space(&alg, &module, 2, 0);
    let mut coords = vec![0u64; space.dim()];
    for (tup, tgt) in [
        (vec![(1, 0), (1, 1)], 0usize),
        (vec![(1, 0), (2, 0)], 0),
        (vec![(1, 1), (3, 0)], 0),
    ] {
        coords[space.position(&tup, tgt).unwrap()] = 1;
    }
    let mu = lieforge_core::ce_cohomology::AlgCochain { s: 2, w: 0, coords };
    let dual = ArtinLocalAlgebra::dual_numbers(ring);
    let t = vec![0, 1];
    let def = LieDeformation::from_cochain_terms(&alg, &dual, &[(t, mu)]).unwrap();
    let ext = AlgExtension::truncation(ring, 2);
    assert!(!obstruction_class(&def, &ext).unwrap().is_zero());
    match extend_deformation(&def, &ext).unwrap() {
        ExtendOutcome::Extended(_) => panic!("the crafted direction must not extend"),
        ExtendOutcome::Obstructed(classes) => {
            assert!(classes.iter().any(|c| !c.is_zero()));
        }
    }
}

#[test]
fn zero_representation_lift_counts_follow_the_tangent_space() {
    // the zero map ab(2,1) -> Heisenberg over F_2: five tangent directions,
    // one quadratic relation
    let ring = f(2);
    let source = GradedLieAlgebra::abelian(ring, vec![2, 1]).unwrap();
    let target = GradedLieAlgebra::heisenberg(ring);
    let rep = GradedRep::zero(source, target).unwrap();

    assert_eq!(tangent_space(&rep).unwrap().dimension(), 5);
    let first = enumerate_lifts(&rep, &ArtinLocalAlgebra::dual_numbers(ring), 1 << 16).unwrap();
    assert_eq!(first.lifts.len(), 32);
    assert_eq!(first.gauge_group_size, 1);

    // over F_2[t]/t^3 exactly 20 of the 32 tangent classes extend, each in
    // 32 ways
    let cubic = ArtinLocalAlgebra::truncated_polynomial(ring, 3);
    let second = enumerate_lifts(&rep, &cubic, 1 << 16).unwrap();
    assert_eq!(second.lifts.len(), 640);

    let pres = quadratic_relations(&rep).unwrap();
    assert_eq!((pres.h1_dimension, pres.h2_dimension), (5, 1));
    assert!(!pres.is_zero_pairing());
}

#[test]
fn free_truncated_sources_lift_along_the_coefficient_chain() {
    let ring = f(3);
    let free = free_lie_truncated(ring, &[("x".into(), 1), ("y".into(), 1)], 2).unwrap();
    let target = GradedLieAlgebra::heisenberg(ring);
    // x -> x, y -> y extends to the unique bracket morphism
    let images = vec![
        target
            .element_from_coords(vec![vec![1, 0], vec![0]])
            .unwrap(),
        target
            .element_from_coords(vec![vec![0, 1], vec![0]])
            .unwrap(),
    ];
    let rho = free.extend_to_morphism(&target, &images).unwrap();
    let rep = GradedRep::new(free.algebra().clone(), target, rho).unwrap();

    let mut lift = RepDeformation::trivial(&rep, &ArtinLocalAlgebra::base(ring)).unwrap();
    for n in 1..=3 {
        let ext = AlgExtension::truncation(ring, n);
        assert!(rep_obstruction(&rep, &lift, &ext).unwrap().is_zero());
        lift = match lift_representation(&rep, &lift, &ext).unwrap() {
            RepLiftOutcome::Lifted(next) => next,
            RepLiftOutcome::Obstructed(_) => panic!("free sources never obstruct"),
        };
        lift.validate(&rep).unwrap();
    }
    assert_eq!(lift.base().as_truncated_polynomial(), Some(4));
}
