//! Exact computational deformation theory for graded Lie algebras.
//!
//! The crate works over the coefficient rings `F_l` and `Z/l^N` (`l` prime)
//! and is organized bottom-up:
//!
//! * [`coeff`] — canonical exact linear algebra: dense matrices, Howell normal
//!   forms, kernels, linear solving, and subquotients with invariant factors.
//! * [`graded_lie`] — truncated positively graded Lie algebras given by
//!   structure constants, morphisms, modules, free Lie algebras on weighted
//!   generators (Lyndon bases), and quotient constructions.
//! * [`ce_cohomology`] — the graded Chevalley–Eilenberg complex with module
//!   coefficients, cohomology spaces per internal grade, and the
//!   Nijenhuis–Richardson bracket on cochains.
//! * [`harrison`] — Artin local algebras with multiplication tables, Harrison
//!   cohomology in low degrees, and the universal square-zero extension.
//! * [`deformation`] — graded Lie brackets over Artin bases: the universal
//!   square-zero deformation, obstruction classes in `H^3`, extensions across
//!   small algebra extensions, the miniversal base tower, and the quadratic
//!   obstruction pairing.
//! * [`rep_deform`] — deformations of graded Lie algebra maps: tangent spaces
//!   in `H^1`, obstruction certificates in `H^2`, lifting along coefficient
//!   chains, exhaustive lift enumeration, and quadratic relation presentations.
//! * [`schlessinger`] — a checker for the Schlessinger-style criteria H1–H4
//!   for set-valued functors on nilpotent graded Lie algebras.
//!
//! Everything is deterministic: no randomness, no hash-order dependence, and
//! all canonical forms (Howell representatives, chosen cocycles) are stable
//! across runs.

pub mod ce_cohomology;
pub mod coeff;
pub mod deformation;
pub mod graded_lie;
pub mod harrison;
pub mod rep_deform;
pub mod schlessinger;
