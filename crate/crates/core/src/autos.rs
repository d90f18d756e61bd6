//! Automorphisms of the adjacency relation: the parametric families, their
//! composition law, transitivity, and an exhaustive oracle over AGL(Y).

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::apsg::SemipolarSpace;
use crate::error::{Error, Result};
use crate::forms::{AlternatingMap, Point};
use crate::gf::{Fe, Field};
use crate::linalg::{general_linear_group, solve, Ambient, Grid, Matrix, Vector};

/// Default cap on `|Y|` for the exhaustive oracle.
pub const ORACLE_CAP: usize = 27;

/// `x -> linear·x + translation` on the flattened coordinates of `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vector,
}

impl AffineMap {
    pub fn identity(field: Field, dim: usize) -> Self {
        AffineMap { linear: Matrix::identity(field, dim), translation: Vector::zero(field, dim) }
    }

    pub fn apply_flat(&self, y: &Vector) -> Vector {
        &self.linear.apply(y) + &self.translation
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::from_flat(p.v.len(), &self.apply_flat(&p.flat()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap { linear: self.linear.mul(&other.linear), translation: self.apply_flat(&other.translation) }
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = self.linear.inverse()?;
        let t = -&inv.apply(&self.translation);
        Some(AffineMap { linear: inv, translation: t })
    }

    /// The induced permutation of grid indices.
    pub fn permutation(&self, grid: &Grid) -> Vec<usize> {
        (0..grid.size()).map(|i| grid.index_of(&self.apply_flat(&grid.vector(i)))).collect()
    }
}

/// Parameters of `F([v,u]) = [psi1(v) + psi2(u) + v0, phi(u) + u0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralAutoParams {
    #[serde(rename = "psi1_matrix")]
    pub psi1: Matrix,
    #[serde(rename = "phi_matrix")]
    pub phi: Matrix,
    pub u0: Vector,
    pub v0: Vector,
    #[serde(skip)]
    pub psi2: Matrix,
}

impl GeneralAutoParams {
    pub fn to_map(&self) -> AffineMap {
        let f = self.phi.field();
        let (nu, n) = (self.psi1.rows(), self.phi.rows());
        AffineMap {
            linear: Matrix::block(&self.psi1, &self.psi2, &Matrix::zero(f, n, nu), &self.phi),
            translation: self.v0.concat(&self.u0),
        }
    }
}

/// Parameters of `f([a,u]) = [alpha·a + v∘u + b, phi(u) + w]` for a scalar form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticAutoParams {
    pub alpha: u32,
    pub b: u32,
    pub w: Vector,
    #[serde(rename = "phi_matrix")]
    pub phi: Matrix,
    #[serde(skip)]
    pub v: Vector,
}

impl SymplecticAutoParams {
    pub fn to_map(&self) -> AffineMap {
        let f = self.phi.field();
        let n = self.phi.rows();
        let top = Matrix::from_data(f, 1, n, self.v.coords().to_vec());
        AffineMap {
            linear: Matrix::block(
                &Matrix::from_data(f, 1, 1, vec![self.alpha]),
                &top,
                &Matrix::zero(f, n, 1),
                &self.phi,
            ),
            translation: Vector::new(f, vec![self.b]).concat(&self.w),
        }
    }
}

fn check_square(m: &Matrix, n: usize, what: &'static str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
    }
    if !m.is_invertible() {
        return Err(Error::NotCompatible(format!("{what} is not bijective")));
    }
    Ok(())
}

/// The `psi1` with `eta(phi u1, phi u2) = psi1(eta(u1, u2))` on basis pairs.
pub fn induced_psi1(phi: &Matrix, eta: &AlternatingMap) -> Result<Matrix> {
    let (f, n, nu) = (eta.field(), eta.n(), eta.nu());
    check_square(phi, n, "phi")?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            xs.push(eta.coeff(i, j));
            ys.push(eta.eval(&phi.column(i), &phi.column(j)));
        }
    }
    // Row r of psi1 solves X^T · row = (r-th coordinates of ys).
    let xt = Matrix::from_data(f, xs.len(), nu, xs.iter().flat_map(|x| x.coords().to_vec()).collect());
    let mut data = Vec::with_capacity(nu * nu);
    for r in 0..nu {
        let target = Vector::new(f, ys.iter().map(|y| y.coords()[r]).collect());
        let (row, _) = solve(&xt, &target)
            .ok_or_else(|| Error::NotCompatible("eta(phi·, phi·) is not a linear image of eta".into()))?;
        data.extend_from_slice(row.coords());
    }
    let psi1 = Matrix::from_data(f, nu, nu, data);
    if !psi1.is_invertible() {
        return Err(Error::NotCompatible("induced psi1 is not bijective".into()));
    }
    Ok(psi1)
}

/// The multiplier `|phi|`: the scalar with `eta(phi u1, phi u2) = |phi| eta(u1, u2)`.
pub fn multiplier(phi: &Matrix, eta: &AlternatingMap) -> Result<Fe> {
    if eta.nu() != 1 {
        return Err(Error::RequiresScalarForm(eta.nu()));
    }
    let psi1 = induced_psi1(phi, eta)?;
    Ok(eta.field().elem(i64::from(psi1.get(0, 0))))
}

pub fn build_general_auto(
    eta: &AlternatingMap,
    psi1: &Matrix,
    phi: &Matrix,
    u0: &Vector,
    v0: &Vector,
) -> Result<(GeneralAutoParams, AffineMap)> {
    let (n, nu) = (eta.n(), eta.nu());
    check_square(psi1, nu, "psi1")?;
    check_square(phi, n, "phi")?;
    if u0.len() != n || v0.len() != nu {
        return Err(Error::DimensionMismatch { expected: n + nu, found: u0.len() + v0.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if eta.eval(&phi.column(i), &phi.column(j)) != psi1.apply(&eta.coeff(i, j)) {
                return Err(Error::NotCompatible(format!("condition b) fails on basis pair ({i}, {j})")));
            }
        }
    }
    let cols: Vec<Vector> = (0..n).map(|j| eta.eval(&phi.column(j), u0)).collect();
    let psi2 = Matrix::from_images(eta.field(), nu, &cols)?;
    let params = GeneralAutoParams { psi1: psi1.clone(), phi: phi.clone(), u0: u0.clone(), v0: v0.clone(), psi2 };
    let map = params.to_map();
    Ok((params, map))
}

/// `rho(F p1, F p2) = psi1(rho(p1, p2))` on all pairs.
pub fn verify_semiform_scaling(space: &SemipolarSpace, f: &AffineMap, psi1: &Matrix) -> bool {
    let rho = space.rho();
    let g = space.grid();
    let img = f.permutation(g);
    let nu = space.nu();
    (0..g.size()).into_par_iter().all(|i| {
        let mut a = vec![0u32; nu];
        let mut b = vec![0u32; nu];
        (0..g.size()).all(|j| {
            a.iter_mut().for_each(|x| *x = 0);
            b.iter_mut().for_each(|x| *x = 0);
            rho.eval_flat(g.coords(img[i]), g.coords(img[j]), &mut a);
            rho.eval_flat(g.coords(i), g.coords(j), &mut b);
            a == psi1.apply(&Vector::new(rho.field(), b.clone())).coords()
        })
    })
}

/// An automorphism of the form `[v,u] -> [v + eta(u,u0) + v0, u + u0]` taking `src` to `dst`.
pub fn point_transitive_auto(eta: &AlternatingMap, src: &Point, dst: &Point) -> Result<(GeneralAutoParams, AffineMap)> {
    let f = eta.field();
    let u0 = &dst.u - &src.u;
    let v0 = &(&dst.v - &src.v) - &eta.eval(&src.u, &u0);
    build_general_auto(eta, &Matrix::identity(f, eta.nu()), &Matrix::identity(f, eta.n()), &u0, &v0)
}

pub fn build_symplectic_auto(
    eta: &AlternatingMap,
    alpha: Fe,
    b: Fe,
    w: &Vector,
    phi: &Matrix,
) -> Result<(SymplecticAutoParams, AffineMap)> {
    if alpha.is_zero() {
        return Err(Error::NotCompatible("alpha must be nonzero".into()));
    }
    let m = multiplier(phi, eta)?;
    if m != alpha {
        return Err(Error::NotCompatible(format!("multiplier of phi is {m}, not {alpha}")));
    }
    if w.len() != eta.n() {
        return Err(Error::DimensionMismatch { expected: eta.n(), found: w.len() });
    }
    let v = Vector::new(eta.field(), (0..eta.n()).map(|j| eta.eval(&phi.column(j), w).coords()[0]).collect());
    let params = SymplecticAutoParams { alpha: alpha.value(), b: b.value(), w: w.clone(), phi: phi.clone(), v };
    let map = params.to_map();
    Ok((params, map))
}

/// Parameters of `f2 ∘ f1`.
pub fn compose_params(
    eta: &AlternatingMap,
    f2: &SymplecticAutoParams,
    f1: &SymplecticAutoParams,
) -> Result<SymplecticAutoParams> {
    let f = eta.field();
    let phi = f2.phi.mul(&f1.phi);
    let w = &f2.phi.apply(&f1.w) + &f2.w;
    let b = f.elem(i64::from(f2.alpha)) * f.elem(i64::from(f1.b))
        + eta.scalar(&f2.phi.apply(&f1.w), &f2.w)?
        + f.elem(i64::from(f2.b));
    let alpha = f.elem(i64::from(f2.alpha)) * f.elem(i64::from(f1.alpha));
    Ok(build_symplectic_auto(eta, alpha, b, &w, &phi)?.0)
}

/// Whether the map and its inverse both preserve adjacency.
pub fn preserves_adjacency(space: &SemipolarSpace, map: &AffineMap) -> bool {
    let perm = map.permutation(space.grid());
    preserves_with_perm(space, &perm)
}

fn preserves_with_perm(space: &SemipolarSpace, perm: &[usize]) -> bool {
    let n = perm.len();
    (0..n).all(|i| (i..n).all(|j| space.adjacent_idx(i, j) == space.adjacent_idx(perm[i], perm[j])))
}

/// Every affine bijection of `Y` preserving adjacency in both directions,
/// sorted by point permutation.
pub fn brute_force_aut_group(space: &SemipolarSpace, cap: usize) -> Result<Vec<AffineMap>> {
    let size = space.size();
    if size > cap {
        return Err(Error::EnumerationTooLarge { required: size as u128, budget: cap as u64 });
    }
    let g = space.grid();
    let gl = general_linear_group(space.field(), g.dim(), space.budget())?;
    let mut found: Vec<(Vec<usize>, AffineMap)> = gl
        .par_iter()
        .flat_map_iter(|m| {
            let lin: Vec<usize> = (0..size).map(|i| g.index_of(&m.apply(&g.vector(i)))).collect();
            (0..size).filter_map(move |t| {
                let perm: Vec<usize> = lin.iter().map(|&x| g.add(x, t)).collect();
                preserves_with_perm(space, &perm)
                    .then(|| (perm, AffineMap { linear: m.clone(), translation: g.vector(t) }))
            })
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|x| x.1).collect())
}

/// All maps of the symplectic parametric family: every `phi` with a
/// multiplier, every `b` and every `w`.
pub fn parametric_family(space: &SemipolarSpace) -> Result<Vec<(SymplecticAutoParams, AffineMap)>> {
    let eta = space.eta();
    let f = space.field();
    let gl = general_linear_group(f, eta.n(), space.budget())?;
    let ws = Ambient::new(f, eta.n()).vectors(space.budget())?;
    let mut out = Vec::new();
    for phi in gl {
        let Ok(alpha) = multiplier(&phi, eta) else { continue };
        for b in f.elements() {
            for w in &ws {
                out.push(build_symplectic_auto(eta, alpha, b, w, &phi)?);
            }
        }
    }
    Ok(out)
}

/// The constant `c` with `rho(f p1, f p2) = c·rho(p1, p2)` for all pairs, if any.
pub fn rho_scale_factor(space: &SemipolarSpace, map: &AffineMap) -> Option<Fe> {
    let f = space.field();
    let g = space.grid();
    let perm = map.permutation(g);
    let rho = space.rho();
    let nu = space.nu();
    let mut factor: Option<u32> = None;
    let (mut a, mut b) = (vec![0u32; nu], vec![0u32; nu]);
    for i in 0..g.size() {
        for j in 0..g.size() {
            a.iter_mut().for_each(|x| *x = 0);
            b.iter_mut().for_each(|x| *x = 0);
            rho.eval_flat(g.coords(perm[i]), g.coords(perm[j]), &mut a);
            rho.eval_flat(g.coords(i), g.coords(j), &mut b);
            let Some(k) = b.iter().position(|&x| x != 0) else {
                if a.iter().any(|&x| x != 0) {
                    return None;
                }
                continue;
            };
            let c = *factor.get_or_insert_with(|| f.mul(a[k], f.inv(b[k]).expect("nonzero")));
            if c == 0 || a.iter().zip(&b).any(|(&x, &y)| x != f.mul(c, y)) {
                return None;
            }
        }
    }
    factor.map(|c| f.elem(i64::from(c)))
}

/// The linear part maps `V' x {0}` into itself.
pub fn fixes_vertical_directions(map: &AffineMap, nu: usize) -> bool {
    let dim = map.linear.rows();
    (0..nu).all(|j| (nu..dim).all(|i| map.linear.get(i, j) == 0))
}

/// Orbit of a point index under the group generated by `gens`.
pub fn orbit(space: &SemipolarSpace, gens: &[AffineMap], start: usize) -> Vec<usize> {
    let perms: Vec<Vec<usize>> = gens.iter().map(|m| m.permutation(space.grid())).collect();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for p in &perms {
            if seen.insert(p[x]) {
                queue.push_back(p[x]);
            }
        }
    }
    seen.into_iter().collect()
}

/// Transitivity maps for the unit vectors of `V` and `V'`.
pub fn translation_generators(eta: &AlternatingMap) -> Result<Vec<AffineMap>> {
    let f = eta.field();
    let (n, nu) = (eta.n(), eta.nu());
    let origin = Point::origin(f, nu, n);
    let targets = (0..n)
        .map(|i| Point::new(Vector::zero(f, nu), Vector::unit(f, n, i)))
        .chain((0..nu).map(|k| Point::new(Vector::unit(f, nu, k), Vector::zero(f, n))));
    targets.map(|t| point_transitive_auto(eta, &origin, &t).map(|x| x.1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Semiform;
    use crate::linalg::Budget;

    fn field(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn sym(p: u32, m: usize) -> SemipolarSpace {
        SemipolarSpace::new(&Semiform::symplectic(field(p), m).unwrap(), Budget::default()).unwrap()
    }

    fn mat(f: Field, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(f, rows).unwrap()
    }

    #[test]
    fn multiplier_examples() {
        let f = field(3);
        let eta = sym(3, 1).eta().clone();
        assert_eq!(multiplier(&Matrix::identity(f, 2), &eta).unwrap(), f.one());
        assert_eq!(multiplier(&Matrix::scalar(f, 2, f.elem(2)), &eta).unwrap(), f.elem(4));
        let swap = mat(f, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(multiplier(&swap, &eta).unwrap(), -f.one());
        let eta2 = sym(3, 2).eta().clone();
        let skew = mat(f, &[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let tilt = mat(f, &[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert!(multiplier(&skew, &eta2).is_ok());
        assert!(matches!(multiplier(&tilt, &eta2), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn multiplier_is_multiplicative() {
        let f = field(3);
        let s = sym(3, 1);
        let gl = general_linear_group(f, 2, Budget::default()).unwrap();
        for a in gl.iter().step_by(5) {
            for b in gl.iter().step_by(7) {
                let (ma, mb) = (multiplier(a, s.eta()).unwrap(), multiplier(b, s.eta()).unwrap());
                assert_eq!(multiplier(&a.mul(b), s.eta()).unwrap(), ma * mb);
            }
        }
    }

    #[test]
    fn general_auto_examples() {
        let f = field(3);
        let s = sym(3, 1);
        let eta = s.eta();
        let (id1, id2) = (Matrix::identity(f, 1), Matrix::identity(f, 2));
        let zero_u = Vector::zero(f, 2);
        let zero_v = Vector::zero(f, 1);
        let (_, m) = build_general_auto(eta, &id1, &id2, &zero_u, &zero_v).unwrap();
        assert_eq!(m, AffineMap::identity(f, 3));
        assert!(verify_semiform_scaling(&s, &m, &id1));

        let u0 = Vector::from_ints(f, &[1, 2]);
        let v0 = Vector::from_ints(f, &[1]);
        let (_, m) = build_general_auto(eta, &id1, &id2, &u0, &v0).unwrap();
        for i in 0..s.size() {
            let p = s.point(i);
            let want = Point::new(&(&p.v + &eta.eval(&p.u, &u0)) + &v0, &p.u + &u0);
            assert_eq!(m.apply(&p), want);
        }
        assert!(preserves_adjacency(&s, &m));
        assert!(verify_semiform_scaling(&s, &m, &id1));

        let swap = mat(f, &[vec![0, 1], vec![1, 0]]);
        let psi1 = induced_psi1(&swap, eta).unwrap();
        assert_eq!(psi1.get(0, 0), 2);
        let (_, m) = build_general_auto(eta, &psi1, &swap, &u0, &v0).unwrap();
        assert!(preserves_adjacency(&s, &m));
        assert!(verify_semiform_scaling(&s, &m, &psi1));
        assert!(matches!(build_general_auto(eta, &id1, &swap, &u0, &v0), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn scaling_over_gf5() {
        let f = field(5);
        let s = sym(5, 1);
        let phi = mat(f, &[vec![2, 0], vec![0, 1]]);
        let (p, m) =
            build_symplectic_auto(s.eta(), f.elem(2), f.elem(3), &Vector::from_ints(f, &[1, 4]), &phi).unwrap();
        assert_eq!(p.alpha, 2);
        assert!(verify_semiform_scaling(&s, &m, &Matrix::scalar(f, 1, f.elem(2))));
        assert_eq!(rho_scale_factor(&s, &m), Some(f.elem(2)));
    }

    #[test]
    fn transitivity_examples() {
        let s = sym(3, 1);
        let f = s.field();
        let eta = s.eta();
        for i in [0, 5, 13, 26] {
            for j in [0, 7, 19, 26] {
                let (src, dst) = (s.point(i), s.point(j));
                let (_, m) = point_transitive_auto(eta, &src, &dst).unwrap();
                assert_eq!(m.apply(&src), dst);
                assert!(preserves_adjacency(&s, &m));
            }
        }
        let (_, m) = point_transitive_auto(eta, &s.point(4), &s.point(4)).unwrap();
        assert_eq!(m, AffineMap::identity(f, 3));
        let gens = translation_generators(eta).unwrap();
        assert_eq!(orbit(&s, &gens, 0).len(), 27);
    }

    #[test]
    fn symplectic_auto_examples() {
        let f = field(3);
        let s = sym(3, 1);
        let eta = s.eta();
        let id = Matrix::identity(f, 2);
        let zero = Vector::zero(f, 2);
        let (_, m) = build_symplectic_auto(eta, f.one(), f.zero(), &zero, &id).unwrap();
        assert_eq!(m, AffineMap::identity(f, 3));
        // Vertical translation by b.
        let (p, m) = build_symplectic_auto(eta, f.one(), f.elem(2), &zero, &id).unwrap();
        assert!(p.v.is_zero());
        assert!(m.linear.is_identity());
        assert!(preserves_adjacency(&s, &m));
        // A translation with w != 0 is not an automorphism.
        let tau = AffineMap { linear: Matrix::identity(f, 3), translation: Vector::from_ints(f, &[0, 1, 0]) };
        assert!(!preserves_adjacency(&s, &tau));
        assert!(matches!(build_symplectic_auto(eta, f.elem(2), f.zero(), &zero, &id), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn composition_law() {
        let f = field(3);
        let s = sym(3, 1);
        let eta = s.eta();
        let id = Matrix::identity(f, 2);
        let zero = Vector::zero(f, 2);
        let (t1, _) = build_symplectic_auto(eta, f.one(), f.elem(1), &zero, &id).unwrap();
        let (t2, _) = build_symplectic_auto(eta, f.one(), f.elem(1), &zero, &id).unwrap();
        assert_eq!(compose_params(eta, &t2, &t1).unwrap().b, 2);
        let (e, _) = build_symplectic_auto(eta, f.one(), f.zero(), &zero, &id).unwrap();
        assert_eq!(compose_params(eta, &e, &t1).unwrap(), t1);

        let phi1 = mat(f, &[vec![1, 1], vec![0, 1]]);
        let phi2 = mat(f, &[vec![0, 1], vec![1, 0]]);
        let (a, ma) = build_symplectic_auto(eta, f.one(), f.elem(2), &Vector::from_ints(f, &[1, 2]), &phi1).unwrap();
        let (b, mb) = build_symplectic_auto(eta, f.elem(2), f.elem(1), &Vector::from_ints(f, &[2, 0]), &phi2).unwrap();
        let c = compose_params(eta, &b, &a).unwrap();
        let mc = c.to_map();
        for i in 0..s.size() {
            let p = s.point(i);
            assert_eq!(mc.apply(&p), mb.apply(&ma.apply(&p)));
        }
        assert_eq!(mc, mb.compose(&ma));
    }

    #[test]
    fn oracle_rejects_large_spaces() {
        assert!(matches!(brute_force_aut_group(&sym(3, 2), ORACLE_CAP), Err(Error::EnumerationTooLarge { .. })));
    }
}
