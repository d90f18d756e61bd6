//! Hyperbolic polar spaces obtained by doubling a symmetric form, their
//! reducts by a maximal singular subspace, and the reconstruction of the
//! deleted subspace from the reduct alone.
//!
//! Subspace dimensions in reports are vector dimensions unless named
//! `*_projective`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{grow_maximal_cliques, BitSet};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{Ambient, Budget, Matrix, Subspace, Vector};

/// A nondegenerate symmetric bilinear form on `GF(p)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    gram: Matrix,
}

impl SymmetricForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        if gram != gram.transpose() {
            return Err(Error::InvalidArgument("gram matrix is not symmetric".into()));
        }
        if !gram.is_invertible() {
            return Err(Error::DegenerateForm);
        }
        Ok(SymmetricForm { gram })
    }

    pub fn diagonal(field: Field, entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let mut g = Matrix::zero(field, n, n);
        for (i, &e) in entries.iter().enumerate() {
            g.set(i, i, field.reduce(e));
        }
        Self::new(g)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> u32 {
        x.dot(&self.gram.apply(y)).value()
    }
}

/// Congruence diagonalization: `D = P G P^T` with `P` invertible.
pub fn diagonalize(form: &SymmetricForm) -> Vec<u32> {
    let f = form.gram.field();
    let n = form.dim();
    let mut g: Vec<Vec<u32>> = (0..n).map(|i| form.gram.row(i).coords().to_vec()).collect();
    for k in 0..n {
        if g[k][k] == 0 {
            if let Some(j) = (k + 1..n).find(|&j| g[j][j] != 0) {
                g.swap(k, j);
                for row in g.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| g[k][j] != 0) {
                // e_k += e_j makes the diagonal entry 2 g[k][j] != 0.
                let rj = g[j].clone();
                for (x, y) in g[k].iter_mut().zip(&rj) {
                    *x = f.add(*x, *y);
                }
                for row in g.iter_mut() {
                    row[k] = f.add(row[k], row[j]);
                }
            } else {
                continue;
            }
        }
        let inv = f.inv(g[k][k]).expect("nonzero pivot");
        for i in k + 1..n {
            let c = f.mul(g[i][k], inv);
            if c == 0 {
                continue;
            }
            let rk = g[k].clone();
            for (x, y) in g[i].iter_mut().zip(&rk) {
                *x = f.sub(*x, f.mul(c, *y));
            }
            for row in g.iter_mut() {
                row[i] = f.sub(row[i], f.mul(c, row[k]));
            }
        }
    }
    (0..n).map(|i| g[i][i]).collect()
}

/// Witt index `dim/2` iff `(-1)^(dim/2)·disc` is a square (even dimension).
pub fn is_hyperbolic(form: &SymmetricForm) -> bool {
    let f = form.gram.field();
    let n = form.dim();
    if n % 2 == 1 {
        return false;
    }
    let disc = diagonalize(form).into_iter().fold(1, |a, x| f.mul(a, x));
    let sign = if (n / 2).is_multiple_of(2) { 1 } else { f.neg(1) };
    disc != 0 && f.is_square(f.mul(sign, disc))
}

/// Points of a hyperbolic quadric in `PG(2n-1, q)`.
pub fn hyperbolic_quadric_size(n: u32, q: u32) -> u128 {
    let q = q as u128;
    (q.pow(n) - 1) * (q.pow(n - 1) + 1) / (q - 1)
}

/// The polar space of `zeta([u1,v1],[u2,v2]) = xi(u1,v2) + xi(v1,u2)` on `W ⊕ W`.
pub struct HypPolarSpace {
    xi: SymmetricForm,
    zeta: SymmetricForm,
    ambient: Ambient,
    points: Vec<Vector>,
    index: HashMap<Vector, usize>,
    perp: Vec<BitSet>,
    lines: Vec<Vec<usize>>,
    /// `{<[u,v]> : xi(u,v) = 0}` equals the set of zeta-isotropic points.
    pub sub1_equals_q1: bool,
}

#[derive(Clone, Debug)]
pub struct Maximal {
    pub subspace: Subspace,
    pub points: Vec<usize>,
}

impl HypPolarSpace {
    pub fn build_double(xi: &SymmetricForm, budget: Budget) -> Result<Self> {
        let n = xi.dim();
        if n < 3 {
            return Err(Error::InvalidArgument(format!("base dimension must be at least 3, got {n}")));
        }
        let f = xi.gram.field();
        let z = Matrix::zero(f, n, n);
        let zeta = SymmetricForm::new(Matrix::block(&z, &xi.gram, &xi.gram, &z))?;
        let ambient = Ambient::new(f, 2 * n);
        let all = ambient.projective_points(budget)?;
        let mut sub1_equals_q1 = true;
        let mut points = Vec::new();
        for x in all {
            let (u, v) = x.split_at(n);
            let iso = zeta.eval(&x, &x) == 0;
            sub1_equals_q1 &= iso == (xi.eval(&u, &v) == 0);
            if iso {
                points.push(x);
            }
        }
        let index: HashMap<Vector, usize> = points.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let perp: Vec<BitSet> = points
            .par_iter()
            .map(|x| {
                let gx = zeta.gram.apply(x);
                let mut row = BitSet::new(points.len());
                for (j, y) in points.iter().enumerate() {
                    if gx.dot(y).is_zero() {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let mut space =
            HypPolarSpace { xi: xi.clone(), zeta, ambient, points, index, perp, lines: Vec::new(), sub1_equals_q1 };
        let mut lines = BTreeSet::new();
        for i in 0..space.points.len() {
            for j in space.perp[i].iter().filter(|&j| j > i) {
                lines.insert(space.span_ids(&[i, j]));
            }
        }
        space.lines = lines.into_iter().collect();
        Ok(space)
    }

    pub fn xi(&self) -> &SymmetricForm {
        &self.xi
    }

    pub fn zeta(&self) -> &SymmetricForm {
        &self.zeta
    }

    pub fn field(&self) -> Field {
        self.ambient.field
    }

    /// Base dimension `n`; the ambient is `2n`.
    pub fn n(&self) -> usize {
        self.xi.dim()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn collinear(&self, i: usize, j: usize) -> bool {
        self.perp[i].contains(j)
    }

    fn subspace_of(&self, ids: &[usize]) -> Subspace {
        let gens: Vec<Vector> = ids.iter().map(|&i| self.points[i].clone()).collect();
        Subspace::span(self.ambient, &gens).expect("dimensions agree")
    }

    fn ids_of(&self, s: &Subspace) -> Vec<usize> {
        let mut ids: Vec<usize> = s.projective_points().iter().map(|x| self.index[x]).collect();
        ids.sort_unstable();
        ids
    }

    fn span_ids(&self, ids: &[usize]) -> Vec<usize> {
        self.ids_of(&self.subspace_of(ids))
    }

    /// `W x {0}`.
    pub fn standard_z(&self) -> Subspace {
        let n = self.n();
        let gens: Vec<Vector> = (0..n).map(|i| Vector::unit(self.field(), 2 * n, i)).collect();
        Subspace::span(self.ambient, &gens).expect("dimensions agree")
    }

    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().all(|x| b.iter().all(|y| self.zeta.eval(x, y) == 0))
    }

    /// All maximal totally singular subspaces, in canonical order.
    pub fn maximal_singulars(&self) -> Vec<Maximal> {
        let seeds = self.lines.clone();
        let maxis = grow_maximal_cliques(seeds, &self.perp, |s| self.span_ids(&s));
        maxis.into_iter().map(|points| Maximal { subspace: self.subspace_of(&points), points }).collect()
    }

    /// Splits maximals into the two classes of `X ≈ Y :<=> 2 | dim X - dim(X ∩ Y)`,
    /// labelled by the class of the first maximal. Returns `None` if `≈` is not an
    /// equivalence with exactly two classes.
    pub fn parity_classes(maxis: &[Maximal]) -> Option<Vec<u8>> {
        let rel = |a: &Maximal, b: &Maximal| {
            (a.subspace.dim() - a.subspace.intersection(&b.subspace).dim()).is_multiple_of(2)
        };
        let first = maxis.first()?;
        let labels: Vec<u8> = maxis.iter().map(|x| u8::from(!rel(first, x))).collect();
        let consistent = (0..maxis.len())
            .into_par_iter()
            .all(|i| (0..maxis.len()).all(|j| rel(&maxis[i], &maxis[j]) == (labels[i] == labels[j])));
        (consistent && labels.contains(&0) && labels.contains(&1)).then_some(labels)
    }

    pub fn reduct(&self, z: &Subspace) -> Result<Reduct<'_>> {
        if z.dim() != self.n() || !self.is_totally_singular(z) {
            return Err(Error::InvalidSubspace("not a maximal singular subspace"));
        }
        let z_points = self.ids_of(z);
        let mut in_z = BitSet::new(self.points.len());
        for &i in &z_points {
            in_z.insert(i);
        }
        let points: Vec<usize> = (0..self.points.len()).filter(|&i| !in_z.contains(i)).collect();
        let lines: Vec<Vec<usize>> = self
            .lines
            .iter()
            .map(|l| l.iter().copied().filter(|&i| !in_z.contains(i)).collect::<Vec<_>>())
            .filter(|l| l.len() >= 2)
            .collect();
        Ok(Reduct { space: self, z: z.clone(), z_points, in_z, points, lines })
    }
}

/// The polar space with the points of a maximal singular subspace `Z` removed.
pub struct Reduct<'a> {
    space: &'a HypPolarSpace,
    z: Subspace,
    z_points: Vec<usize>,
    in_z: BitSet,
    /// Surviving point ids (ids of the full polar space).
    pub points: Vec<usize>,
    /// Clipped lines with at least two surviving points.
    pub lines: Vec<Vec<usize>>,
}

/// A maximal singular subspace of the reduct, classified by its size.
#[derive(Clone, Debug, Serialize)]
pub struct ReductMaximal {
    pub points: Vec<usize>,
    pub class: ReductClass,
    /// Vector dimension of `X ∩ Z` for the polar-space maximal `X` it comes from.
    pub meet_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductClass {
    /// A projective space with one point removed.
    R0,
    /// An affine space.
    R1,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classified {
    pub maximals: Vec<ReductMaximal>,
    pub r0: Vec<usize>,
    pub r1: Vec<usize>,
    pub other: Vec<usize>,
    /// The reduct's maximal singular subspaces are exactly `{X \ Z : X != Z}`.
    pub matches_polar: bool,
    /// Size classes agree with `dim(X ∩ Z)` being 1 (R0) or n-1 (R1).
    pub matches_meet_dims: bool,
}

/// Recovered points and hyperplanes of `Z` with their incidence.
#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    /// `≃`-classes of R0, as indices into `r0`.
    pub classes: Vec<Vec<usize>>,
    /// `incidence[c][h]`: class `c` is incident with the `h`-th member of R1.
    pub incidence: Vec<Vec<bool>>,
    /// Recovered lines, as sets of class indices.
    pub lines: Vec<Vec<usize>>,
    /// Class -> point of `Z` (id in the polar space), via the improper point.
    pub point_map: Vec<usize>,
    /// R1 member -> hyperplane of `Z`, as sorted point ids.
    pub hyperplane_map: Vec<Vec<usize>>,
    pub isomorphic: bool,
    pub lines_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub n: usize,
    pub p: u32,
    pub quadric_points: usize,
    pub expected_quadric_points: u128,
    pub hyperbolic: bool,
    pub sub1_equals_q1: bool,
    pub lines: usize,
    pub maximals: usize,
    pub parity_classes: Option<[usize; 2]>,
    pub reduct_points: usize,
    pub reduct_lines: usize,
    pub r0: usize,
    pub r1: usize,
    pub other: usize,
    pub maximals_match: bool,
    pub classes: usize,
    pub z_points: usize,
    pub isomorphic: bool,
    pub lines_match: bool,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.sub1_equals_q1
            && self.hyperbolic
            && self.quadric_points as u128 == self.expected_quadric_points
            && self.parity_classes.is_some_and(|[a, b]| a == b)
            && self.maximals_match
            && self.classes == self.z_points
            && self.isomorphic
            && self.lines_match
    }
}

impl<'a> Reduct<'a> {
    pub fn space(&self) -> &HypPolarSpace {
        self.space
    }

    pub fn z(&self) -> &Subspace {
        &self.z
    }

    pub fn z_points(&self) -> &[usize] {
        &self.z_points
    }

    /// Maximal singular subspaces computed inside the reduct, then classified.
    pub fn classify_maximals(&self) -> Classified {
        let sp = self.space;
        let total = sp.points.len();
        let mut adj: Vec<BitSet> = sp.perp.clone();
        for row in adj.iter_mut() {
            for &z in &self.z_points {
                row.remove(z);
            }
        }
        for &z in &self.z_points {
            adj[z] = BitSet::new(total);
        }
        let mut line_of: HashMap<(usize, usize), usize> = HashMap::new();
        for (k, l) in self.lines.iter().enumerate() {
            for &a in l {
                for &b in l {
                    line_of.insert((a, b), k);
                }
            }
        }
        let close = |mut s: Vec<usize>| loop {
            s.sort_unstable();
            s.dedup();
            let mut added = BTreeSet::new();
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    if let Some(&k) = line_of.get(&(a, b)) {
                        added.extend(self.lines[k].iter().copied().filter(|x| s.binary_search(x).is_err()));
                    }
                }
            }
            if added.is_empty() {
                return s;
            }
            s.extend(added);
        };
        let found = grow_maximal_cliques(self.lines.clone(), &adj, close);

        let q = sp.field().modulus() as usize;
        let n = sp.n();
        let proj = (q.pow(n as u32) - 1) / (q - 1);
        let affine = q.pow(n as u32 - 1);

        let polar: BTreeSet<Vec<usize>> = sp
            .maximal_singulars()
            .iter()
            .map(|x| x.points.iter().copied().filter(|&i| !self.in_z.contains(i)).collect::<Vec<_>>())
            .filter(|x| !x.is_empty())
            .collect();
        let matches_polar = polar.len() == found.len() && found.iter().all(|x| polar.contains(x));

        let maximals: Vec<ReductMaximal> = found
            .into_iter()
            .map(|points| {
                let meet_dim = sp.subspace_of(&points).intersection(&self.z).dim();
                let class = match points.len() {
                    s if s == proj - 1 => ReductClass::R0,
                    s if s == affine => ReductClass::R1,
                    _ => ReductClass::Other,
                };
                ReductMaximal { points, class, meet_dim }
            })
            .collect();
        let pick =
            |c: ReductClass| maximals.iter().enumerate().filter(|x| x.1.class == c).map(|x| x.0).collect::<Vec<_>>();
        let matches_meet_dims = maximals.iter().all(|m| match m.class {
            ReductClass::R0 => m.meet_dim == 1,
            ReductClass::R1 => m.meet_dim == n - 1,
            ReductClass::Other => m.meet_dim != 1 && m.meet_dim != n - 1,
        });
        Classified {
            r0: pick(ReductClass::R0),
            r1: pick(ReductClass::R1),
            other: pick(ReductClass::Other),
            maximals,
            matches_polar,
            matches_meet_dims,
        }
    }

    /// Some clipped line lies inside both `j0` and `j1`.
    pub fn inc(&self, j0: &ReductMaximal, j1: &ReductMaximal) -> bool {
        self.lines
            .iter()
            .any(|l| l.iter().all(|x| j0.points.binary_search(x).is_ok() && j1.points.binary_search(x).is_ok()))
    }

    /// `X ∩ Z` for the polar-space maximal spanned by a reduct maximal.
    pub fn improper_part(&self, j: &ReductMaximal) -> Vec<usize> {
        let sp = self.space;
        sp.ids_of(&sp.subspace_of(&j.points).intersection(&self.z))
    }

    /// Recovers the points and hyperplanes of `Z` from `inc` alone and
    /// compares against the deleted subspace.
    pub fn reconstruct(&self, c: &Classified) -> Reconstruction {
        let r0: Vec<&ReductMaximal> = c.r0.iter().map(|&i| &c.maximals[i]).collect();
        let r1: Vec<&ReductMaximal> = c.r1.iter().map(|&i| &c.maximals[i]).collect();
        let profiles: Vec<Vec<bool>> = r0.par_iter().map(|a| r1.iter().map(|b| self.inc(a, b)).collect()).collect();
        let mut by_profile: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        for (i, p) in profiles.iter().enumerate() {
            match by_profile.iter_mut().find(|x| &x.0 == p) {
                Some(x) => x.1.push(i),
                None => by_profile.push((p.clone(), vec![i])),
            }
        }
        let classes: Vec<Vec<usize>> = by_profile.iter().map(|x| x.1.clone()).collect();
        let incidence: Vec<Vec<bool>> = by_profile.into_iter().map(|x| x.0).collect();

        // Ground truth through improper points and hyperplanes.
        let point_of = |i: usize| self.improper_part(r0[i]);
        let point_map: Vec<usize> = classes
            .iter()
            .map(|cl| {
                let p = point_of(cl[0]);
                if p.len() == 1 && cl.iter().all(|&i| point_of(i) == p) {
                    p[0]
                } else {
                    usize::MAX
                }
            })
            .collect();
        let hyperplane_map: Vec<Vec<usize>> = r1.iter().map(|j| self.improper_part(j)).collect();
        let distinct_points: BTreeSet<usize> = point_map.iter().copied().collect();
        let distinct_hyper: BTreeSet<&Vec<usize>> = hyperplane_map.iter().collect();
        let hyper_size = {
            let q = self.space.field().modulus() as usize;
            let n = self.space.n();
            (q.pow(n as u32 - 1) - 1) / (q - 1)
        };
        let bijective = !point_map.contains(&usize::MAX)
            && distinct_points.len() == classes.len()
            && distinct_points.iter().copied().eq(self.z_points.iter().copied())
            && distinct_hyper.len() == r1.len()
            && hyperplane_map.iter().all(|h| h.len() == hyper_size)
            && r1.len() == self.z_points.len();
        let preserves = bijective
            && (0..classes.len()).all(|c| {
                (0..r1.len()).all(|h| incidence[c][h] == hyperplane_map[h].binary_search(&point_map[c]).is_ok())
            });

        // A recovered line: classes on every recovered hyperplane through two classes.
        let mut lines = BTreeSet::new();
        for a in 0..classes.len() {
            for b in a + 1..classes.len() {
                let through: Vec<usize> = (0..r1.len()).filter(|&h| incidence[a][h] && incidence[b][h]).collect();
                let line: Vec<usize> =
                    (0..classes.len()).filter(|&x| through.iter().all(|&h| incidence[x][h])).collect();
                lines.insert(line);
            }
        }
        let lines: Vec<Vec<usize>> = lines.into_iter().collect();
        let lines_match = preserves && {
            let sp = self.space;
            let truth: BTreeSet<Vec<usize>> =
                sp.lines.iter().filter(|l| l.iter().all(|x| self.in_z.contains(*x))).cloned().collect();
            let mapped: BTreeSet<Vec<usize>> = lines
                .iter()
                .map(|l| {
                    let mut v: Vec<usize> = l.iter().map(|&c| point_map[c]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            truth == mapped
        };
        Reconstruction { classes, incidence, lines, point_map, hyperplane_map, isomorphic: preserves, lines_match }
    }
}

/// Builds the doubled space, deletes `z` (default `W x {0}`), reconstructs it.
pub fn reconstruction_report(xi: &SymmetricForm, z: Option<&Subspace>, budget: Budget) -> Result<ReconstructionReport> {
    let space = HypPolarSpace::build_double(xi, budget)?;
    let maxis = space.maximal_singulars();
    let parity = HypPolarSpace::parity_classes(&maxis).map(|labels| {
        let ones = labels.iter().filter(|&&l| l == 1).count();
        [labels.len() - ones, ones]
    });
    let z = z.cloned().unwrap_or_else(|| space.standard_z());
    let reduct = space.reduct(&z)?;
    let classified = reduct.classify_maximals();
    let rec = reduct.reconstruct(&classified);
    Ok(ReconstructionReport {
        n: space.n(),
        p: space.field().modulus(),
        quadric_points: space.points.len(),
        expected_quadric_points: hyperbolic_quadric_size(space.n() as u32, space.field().modulus()),
        hyperbolic: is_hyperbolic(&space.zeta),
        sub1_equals_q1: space.sub1_equals_q1,
        lines: space.lines.len(),
        maximals: maxis.len(),
        parity_classes: parity,
        reduct_points: reduct.points.len(),
        reduct_lines: reduct.lines.len(),
        r0: classified.r0.len(),
        r1: classified.r1.len(),
        other: classified.other.len(),
        maximals_match: classified.matches_polar && classified.matches_meet_dims,
        classes: rec.classes.len(),
        z_points: reduct.z_points.len(),
        isomorphic: rec.isomorphic,
        lines_match: rec.lines_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn identity_form() -> SymmetricForm {
        SymmetricForm::diagonal(f3(), &[1, 1, 1]).unwrap()
    }

    #[test]
    fn form_validation() {
        let f = f3();
        assert!(matches!(SymmetricForm::diagonal(f, &[1, 0, 1]), Err(Error::DegenerateForm)));
        let skew = Matrix::from_rows(f, &[vec![0, 1], vec![2, 0]]).unwrap();
        assert!(SymmetricForm::new(skew).is_err());
        let xi2 = SymmetricForm::diagonal(f, &[1, 1]).unwrap();
        assert!(HypPolarSpace::build_double(&xi2, Budget::default()).is_err());
    }

    #[test]
    fn diagonalization_and_witt_index() {
        let f = f3();
        let hyp = SymmetricForm::new(Matrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        assert!(is_hyperbolic(&hyp));
        let d = diagonalize(&hyp);
        assert!(d.iter().all(|&x| x != 0));
        // x^2 + y^2 is anisotropic over GF(3).
        assert!(!is_hyperbolic(&SymmetricForm::diagonal(f, &[1, 1]).unwrap()));
        assert!(is_hyperbolic(&SymmetricForm::diagonal(f, &[1, 2]).unwrap()));
        assert_eq!(hyperbolic_quadric_size(3, 3), 130);
    }

    #[test]
    fn doubled_space_counts() {
        let sp = HypPolarSpace::build_double(&identity_form(), Budget::default()).unwrap();
        assert!(sp.sub1_equals_q1);
        assert!(is_hyperbolic(sp.zeta()));
        assert_eq!(sp.points().len(), 130);
        assert_eq!(sp.lines().len(), 520);
        assert!(sp.is_totally_singular(&sp.standard_z()));
        let x = Vector::from_ints(f3(), &[1, 2, 0, 0, 1, 1]);
        let y = Vector::from_ints(f3(), &[0, 1, 1, 2, 2, 0]);
        assert_eq!(sp.zeta().eval(&x, &y), sp.zeta().eval(&y, &x));

        let maxis = sp.maximal_singulars();
        assert_eq!(maxis.len(), 80);
        assert!(maxis.iter().any(|m| m.subspace == sp.standard_z()));
        let labels = HypPolarSpace::parity_classes(&maxis).unwrap();
        assert_eq!(labels.iter().filter(|&&l| l == 0).count(), 40);
    }

    #[test]
    fn reduct_census() {
        let sp = HypPolarSpace::build_double(&identity_form(), Budget::default()).unwrap();
        let r = sp.reduct(&sp.standard_z()).unwrap();
        assert_eq!((r.points.len(), r.lines.len()), (117, 507));
        assert!(r.lines.iter().all(|l| l.len() == 3 || l.len() == 4));
        let c = r.classify_maximals();
        assert!(c.matches_polar && c.matches_meet_dims);
        assert_eq!((c.r0.len(), c.r1.len(), c.other.len()), (39, 13, 27));
        let bad = Subspace::span(Ambient::new(f3(), 6), &[Vector::unit(f3(), 6, 0)]).unwrap();
        assert!(matches!(sp.reduct(&bad), Err(Error::InvalidSubspace(_))));
    }

    #[test]
    fn reconstruction_identity_form() {
        let rep = reconstruction_report(&identity_form(), None, Budget::default()).unwrap();
        assert_eq!(rep.classes, 13);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn reconstruction_other_z() {
        let sp = HypPolarSpace::build_double(&identity_form(), Budget::default()).unwrap();
        let maxis = sp.maximal_singulars();
        for m in maxis.iter().step_by(17) {
            let r = sp.reduct(&m.subspace).unwrap();
            let c = r.classify_maximals();
            let rec = r.reconstruct(&c);
            assert_eq!(rec.classes.len(), 13);
            assert!(rec.isomorphic && rec.lines_match);
        }
    }
}
