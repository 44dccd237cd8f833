//! Cochain complexes and cohomology of graded Lie algebras with coefficients
//! in a graded module.
//!
//! An `s`-cochain of weight `w` is an alternating `s`-linear map sending
//! `L(i_1) x ... x L(i_s)` into `M(i_1 + ... + i_s + w)`. The differential is
//!
//! ```text
//! (d f)(x_1..x_{s+1}) =  sum_u (-1)^(u+1)  x_u . f(.. x_u-hat ..)
//!                      + sum_{u<v} (-1)^(u+v) f([x_u,x_v], .. x_u-hat .. x_v-hat ..)
//! ```
//!
//! with 1-based positions, so `(d m)(x) = x . m` in arity zero. Cochains are
//! coordinate rows over a deterministic basis: increasing basis tuples in
//! flat `(degree, index)` order, then the target piece index; the
//! differential becomes a matrix acting on row vectors and cohomology reduces
//! to [`crate::coeff::homology`].
//!
//! The same complex computes algebra cohomology (adjoint coefficients) and
//! the cohomology controlling morphism deformations (coefficients pulled
//! back along the map).

use crate::coeff::{CoeffError, CoeffRing, Mat, Subquotient};
use crate::graded_lie::{adjoint_module, Element, GradedLieAlgebra, LieModule};
use std::collections::BTreeMap;

/// Ordered basis of the space of `s`-cochains of weight `w`.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    s: usize,
    w: i64,
    /// `(increasing tuple of (degree,index), index in the target piece)`.
    basis: Vec<(Vec<(usize, usize)>, usize)>,
    pos: BTreeMap<(Vec<(usize, usize)>, usize), usize>,
}

impl CochainSpace {
    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn weight(&self) -> i64 {
        self.w
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(Vec<(usize, usize)>, usize)] {
        &self.basis
    }

    pub fn position(&self, tuple: &[(usize, usize)], midx: usize) -> Option<usize> {
        self.pos.get(&(tuple.to_vec(), midx)).copied()
    }

    /// Evaluate a coordinate cochain on an arbitrary tuple of basis
    /// addresses. Repeated entries give zero; out-of-order entries pick up
    /// the permutation sign. The result is a coordinate vector in the module
    /// piece of degree `(sum of entry degrees) + w`.
    pub fn eval_basis(
        &self,
        module: &LieModule,
        coords: &[u64],
        tuple: &[(usize, usize)],
    ) -> Vec<u64> {
        debug_assert_eq!(tuple.len(), self.s);
        debug_assert_eq!(coords.len(), self.dim());
        let ring = module.ring();
        let tdeg = tuple.iter().map(|&(d, _)| d as i64).sum::<i64>() + self.w;
        let mut out = vec![0u64; module.rank(tdeg)];
        let Some((sorted, sign)) = sort_with_sign(tuple) else {
            return out;
        };
        let rank = out.len();
        for m in 0..rank {
            if let Some(p) = self.position(&sorted, m) {
                let c = coords[p];
                if c != 0 {
                    out[m] = if sign >= 0 { c } else { ring.neg(c) };
                }
            }
        }
        out
    }
}

/// Sort a basis tuple into flat increasing order, returning the permutation
/// sign, or `None` when an entry repeats.
fn sort_with_sign(tuple: &[(usize, usize)]) -> Option<(Vec<(usize, usize)>, i32)> {
    let mut v = tuple.to_vec();
    let mut sign = 1;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for i in 1..v.len() {
        if v[i - 1] == v[i] {
            return None;
        }
    }
    Some((v, sign))
}

fn increasing_tuples(alg: &GradedLieAlgebra, s: usize) -> Vec<Vec<(usize, usize)>> {
    let basis = alg.basis();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..s).collect();
    if s > basis.len() {
        return out;
    }
    if s == 0 {
        out.push(Vec::new());
        return out;
    }
    loop {
        out.push(cur.iter().map(|&i| basis[i]).collect());
        // advance the combination
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + basis.len() - s {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..s {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The ordered basis of `C^s(L, M)(w)`.
pub fn cochain_space(
    alg: &GradedLieAlgebra,
    module: &LieModule,
    s: usize,
    w: i64,
) -> CochainSpace {
    let mut basis = Vec::new();
    for tup in increasing_tuples(alg, s) {
        let tdeg = tup.iter().map(|&(d, _)| d as i64).sum::<i64>() + w;
        for m in 0..module.rank(tdeg) {
            basis.push((tup.clone(), m));
        }
    }
    let pos = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    CochainSpace { s, w, basis, pos }
}

/// Matrix of the differential `C^s(L,M)(w) -> C^{s+1}(L,M)(w)` acting on
/// coordinate rows.
pub fn delta_matrix(alg: &GradedLieAlgebra, module: &LieModule, s: usize, w: i64) -> Mat {
    let src = cochain_space(alg, module, s, w);
    let tgt = cochain_space(alg, module, s + 1, w);
    let ring = module.ring();
    let mut m = Mat::zero(ring, src.dim(), tgt.dim());
    let tuples = increasing_tuples(alg, s + 1);
    for (r, (t_src, midx)) in src.basis().iter().enumerate() {
        let mdeg = t_src.iter().map(|&(d, _)| d as i64).sum::<i64>() + w;
        for u in &tuples {
            let out_deg = u.iter().map(|&(d, _)| d as i64).sum::<i64>() + w;
            let out_rank = module.rank(out_deg);
            if out_rank == 0 {
                continue;
            }
            let mut val = vec![0u64; out_rank];
            // action sum: position i (0-based) carries sign (-1)^i
            for i in 0..u.len() {
                let mut rest: Vec<(usize, usize)> = Vec::with_capacity(u.len() - 1);
                rest.extend_from_slice(&u[..i]);
                rest.extend_from_slice(&u[i + 1..]);
                if rest != *t_src {
                    continue;
                }
                let (xd, xa) = u[i];
                let acted = module.act_basis(xd, xa, mdeg, *midx);
                let neg = i % 2 == 1;
                for (o, &a) in val.iter_mut().zip(acted) {
                    *o = if neg { ring.sub(*o, a) } else { ring.add(*o, a) };
                }
            }
            // bracket sum: 0-based (i,j) carries (-1)^(i+j) from 1-based (-1)^(u+v)
            for i in 0..u.len() {
                for j in i + 1..u.len() {
                    let (di, ai) = u[i];
                    let (dj, aj) = u[j];
                    let bracket = alg.bracket_basis(di, ai, dj, aj);
                    if bracket.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let mut rest: Vec<(usize, usize)> = Vec::with_capacity(u.len() - 1);
                    rest.push((di + dj, 0)); // placeholder, set per component
                    for (k, &e) in u.iter().enumerate() {
                        if k != i && k != j {
                            rest.push(e);
                        }
                    }
                    let base_neg = (i + j) % 2 == 1;
                    for (c, &coef) in bracket.iter().enumerate() {
                        if coef == 0 {
                            continue;
                        }
                        rest[0] = (di + dj, c);
                        let Some((sorted, perm_sign)) = sort_with_sign(&rest) else {
                            continue;
                        };
                        if sorted != *t_src {
                            continue;
                        }
                        let neg = base_neg ^ (perm_sign < 0);
                        val[*midx] = if neg {
                            ring.sub(val[*midx], coef)
                        } else {
                            ring.add(val[*midx], coef)
                        };
                    }
                }
            }
            for (k, &x) in val.iter().enumerate() {
                if x != 0 {
                    let col = tgt.position(u, k).expect("target basis covers the value");
                    m.set(r, col, ring.add(m.get(r, col), x));
                }
            }
        }
    }
    m
}

/// `H^s(L, M)(w)` as a subquotient of the `s`-cochain space.
pub fn cohomology_space(
    alg: &GradedLieAlgebra,
    module: &LieModule,
    s: usize,
    w: i64,
) -> Result<Subquotient, CoeffError> {
    let ring = module.ring();
    let d_out = delta_matrix(alg, module, s, w);
    let d_in = if s == 0 {
        Mat::zero(ring, 0, d_out.rows())
    } else {
        delta_matrix(alg, module, s - 1, w)
    };
    crate::coeff::homology(&d_in, &d_out)
}

/// Dimension of `H^s(L, M)(w)` over a field (counts invariant factors
/// otherwise).
pub fn cohomology_dim(
    alg: &GradedLieAlgebra,
    module: &LieModule,
    s: usize,
    w: i64,
) -> Result<usize, CoeffError> {
    Ok(cohomology_space(alg, module, s, w)?.dimension())
}

// ---------------------------------------------------------------------------
// Algebra-valued cochains and the graded bracket on them
// ---------------------------------------------------------------------------

/// An alternating multilinear map `L^s -> L` of weight `w`, as coordinates
/// over the adjoint-coefficient cochain basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgCochain {
    pub s: usize,
    pub w: i64,
    pub coords: Vec<u64>,
}

impl AlgCochain {
    pub fn zero(alg: &GradedLieAlgebra, s: usize, w: i64) -> AlgCochain {
        let space = cochain_space(alg, &adjoint_module(alg), s, w);
        AlgCochain {
            s,
            w,
            coords: vec![0; space.dim()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// Evaluate on a tuple of basis addresses, as an element of `L`.
    pub fn eval(&self, alg: &GradedLieAlgebra, tuple: &[(usize, usize)]) -> Element {
        let module = adjoint_module(alg);
        let space = cochain_space(alg, &module, self.s, self.w);
        let v = space.eval_basis(&module, &self.coords, tuple);
        let tdeg = tuple.iter().map(|&(d, _)| d as i64).sum::<i64>() + self.w;
        let mut e = alg.zero_element();
        if tdeg >= 1 && tdeg <= alg.truncation() as i64 {
            *e.degree_part_mut(tdeg as usize) = v;
        }
        e
    }

    /// The multiplication cochain itself: `mu(x, y) = [x, y]`.
    pub fn structure_cochain(alg: &GradedLieAlgebra) -> AlgCochain {
        let module = adjoint_module(alg);
        let space = cochain_space(alg, &module, 2, 0);
        let mut coords = vec![0u64; space.dim()];
        for (p, (tup, m)) in space.basis().iter().enumerate() {
            let (di, ai) = tup[0];
            let (dj, aj) = tup[1];
            let b = alg.bracket_basis(di, ai, dj, aj);
            if !b.is_empty() {
                coords[p] = b[*m];
            }
        }
        AlgCochain { s: 2, w: 0, coords }
    }

    pub fn add(&self, ring: CoeffRing, other: &AlgCochain) -> AlgCochain {
        assert_eq!((self.s, self.w), (other.s, other.w));
        AlgCochain {
            s: self.s,
            w: self.w,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: CoeffRing, c: u64) -> AlgCochain {
        AlgCochain {
            s: self.s,
            w: self.w,
            coords: self.coords.iter().map(|&x| ring.mul(c, x)).collect(),
        }
    }

    pub fn sub(&self, ring: CoeffRing, other: &AlgCochain) -> AlgCochain {
        self.add(ring, &other.scale(ring, ring.neg(1)))
    }
}

/// Insertion composition `f` after `g` summed over `(q, p-1)`-shuffles:
///
/// ```text
/// (f ~o~ g)(x_1..x_{p+q-1}) = sum_sigma sgn(sigma)
///     f(g(x_{sigma(1)}..x_{sigma(q)}), x_{sigma(q+1)}..)
/// ```
fn insertion(alg: &GradedLieAlgebra, f: &AlgCochain, g: &AlgCochain) -> AlgCochain {
    let p = f.s;
    let q = g.s;
    if p == 0 {
        return AlgCochain::zero(alg, 0, f.w + g.w);
    }
    let arity = p + q - 1;
    let w = f.w + g.w;
    let module = adjoint_module(alg);
    let ring = alg.ring();
    let out_space = cochain_space(alg, &module, arity, w);
    let f_space = cochain_space(alg, &module, p, f.w);
    let g_space = cochain_space(alg, &module, q, g.w);
    let mut coords = vec![0u64; out_space.dim()];
    for u in increasing_tuples(alg, arity) {
        let out_deg = u.iter().map(|&(d, _)| d as i64).sum::<i64>() + w;
        let out_rank = module.rank(out_deg);
        if out_rank == 0 {
            continue;
        }
        let mut val = vec![0u64; out_rank];
        for subset in increasing_tuples_of_indices(arity, q) {
            // shuffle sign: inversions between chosen and remaining positions
            let mut sign = 1i32;
            let mut rest_pos = Vec::with_capacity(arity - q);
            {
                let mut inside = vec![false; arity];
                for &i in &subset {
                    inside[i] = true;
                }
                for (i, &inb) in inside.iter().enumerate() {
                    if !inb {
                        rest_pos.push(i);
                    }
                }
                // count pairs (i in subset, j in rest) with i > j
                for &i in &subset {
                    for &j in &rest_pos {
                        if i > j {
                            sign = -sign;
                        }
                    }
                }
            }
            let g_args: Vec<(usize, usize)> = subset.iter().map(|&i| u[i]).collect();
            let g_deg = g_args.iter().map(|&(d, _)| d as i64).sum::<i64>() + g.w;
            if g_deg < 1 || g_deg > alg.truncation() as i64 {
                continue;
            }
            let inner = g_space.eval_basis(&module, &g.coords, &g_args);
            for (c, &coef) in inner.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let mut f_args: Vec<(usize, usize)> = Vec::with_capacity(p);
                f_args.push((g_deg as usize, c));
                f_args.extend(rest_pos.iter().map(|&i| u[i]));
                let outer = f_space.eval_basis(&module, &f.coords, &f_args);
                for (o, &x) in val.iter_mut().zip(&outer) {
                    let t = ring.mul(coef, x);
                    *o = if sign >= 0 {
                        ring.add(*o, t)
                    } else {
                        ring.sub(*o, t)
                    };
                }
            }
        }
        for (k, &x) in val.iter().enumerate() {
            if x != 0 {
                let pos = out_space.position(&u, k).expect("value fits the basis");
                coords[pos] = x;
            }
        }
    }
    AlgCochain { s: arity, w, coords }
}

fn increasing_tuples_of_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The graded bracket `[f, g] = f ~o~ g - (-1)^((p-1)(q-1)) g ~o~ f` on
/// algebra-valued cochains. `[mu, mu]` vanishes exactly when the structure
/// cochain `mu` satisfies the Jacobi identity, and `[mu, -]` is the
/// differential up to sign conventions fixed by the module documentation.
pub fn nr_bracket(alg: &GradedLieAlgebra, f: &AlgCochain, g: &AlgCochain) -> AlgCochain {
    let ring = alg.ring();
    let fg = insertion(alg, f, g);
    let gf = insertion(alg, g, f);
    let sign_neg = ((f.s + 1) * (g.s + 1)) % 2 == 1; // (-1)^((p-1)(q-1))
    if sign_neg {
        fg.add(ring, &gf)
    } else {
        fg.sub(ring, &gf)
    }
}
