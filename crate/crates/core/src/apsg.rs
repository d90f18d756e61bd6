//! The affine semipolar space `<Y, G>` of a semiform: adjacency, singular
//! lines, excluded directions, triangles, line recovery and pencils.
//!
//! Points are addressed by their row-major index over the flattened
//! `(v, u)` coordinates, `v` varying slowest; index 0 is the origin.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{grow_maximal_cliques, BitSet};
use crate::error::{Error, Result};
use crate::forms::{normalize, AlternatingMap, Semiform};
use crate::gf::{Fe, Field};
use crate::linalg::{affine_dimension, enumerate_subspaces, kernel, solve, Ambient, Budget, Grid, Subspace, Vector};
use crate::report::{AxiomReport, Verdict, Witness};

pub use crate::forms::Point;

/// An affine line `base + <dir>` in canonical form: `dir` has leading
/// coordinate 1 and `base` vanishes at that coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffLine {
    base: Point,
    dir: Point,
}

impl AffLine {
    pub fn new(base: Point, dir: Point) -> Result<Self> {
        if dir.is_zero() {
            return Err(Error::InvalidArgument("line direction must be nonzero".into()));
        }
        if base.v.len() != dir.v.len() || base.u.len() != dir.u.len() {
            return Err(Error::DimensionMismatch { expected: base.flat().len(), found: dir.flat().len() });
        }
        let nu = base.v.len();
        let d = dir.flat().normalized();
        let k = d.pivot().expect("nonzero direction");
        let mut b = base.flat();
        let f = b.field();
        let c = b.coords()[k];
        b.axpy(f.neg(c), &d);
        Ok(AffLine { base: Point::from_flat(nu, &b), dir: Point::from_flat(nu, &d) })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidPair("a line needs two distinct points"));
        }
        Self::new(p.clone(), q.sub(p))
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn dir(&self) -> &Point {
        &self.dir
    }

    pub fn field(&self) -> Field {
        self.dir.v.field()
    }

    /// The `p` points `base + a·dir`, in order of `a`.
    pub fn points(&self) -> Vec<Point> {
        self.field().elements().map(|a| self.base.add(&self.dir.scale(a))).collect()
    }

    pub fn contains(&self, x: &Point) -> bool {
        let diff = x.sub(&self.base).flat();
        let d = self.dir.flat();
        let k = d.pivot().expect("nonzero direction");
        diff == d.scale_raw(diff.coords()[k])
    }
}

/// Classification of a set `{[v,u] : eta(u0,u) = v0 + alpha v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ZClass {
    Empty,
    Whole,
    Affine { dim: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ZSet {
    pub points: Vec<usize>,
    pub class: ZClass,
    /// The set is closed under affine lines through its points.
    pub subspace: bool,
    /// `nu + dim ker(eta_{u0})` when `alpha = 0`, otherwise `dim V`.
    pub predicted_dim: usize,
}

/// A proper triangle `p, q, r` with its parameters `u = u_q - u_p`,
/// `y = u_r - u_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub p: Point,
    pub q: Point,
    pub r: Point,
    pub u: Vector,
    pub y: Vector,
    /// `q = [v_p + eta(u,u_p), u_p + u]`, `r = [v_p + eta(y,u_p), u_p + y]`
    /// and `eta(u, y) = 0`.
    pub parametric: bool,
}

/// Lines and planes of the space through one point, with the map to the
/// null system of `eta` given by `<[v, u]> -> <u>`.
#[derive(Clone, Debug, Serialize)]
pub struct PencilStructure {
    pub at: Point,
    /// Singular lines through `at`.
    pub lines: Vec<AffLine>,
    /// Singular planes through `at`, each as the sorted indices of its lines.
    pub planes: Vec<Vec<usize>>,
    /// Image `<u>` (normalized) of each line.
    pub image: Vec<Vector>,
    /// Number of 2-subspaces `<u', u''>` of V with `eta(u', u'') = 0`.
    pub null_system_lines: usize,
    /// The map is a bijection onto the points of PG(V) carrying planes
    /// exactly onto the null-system lines.
    pub isomorphic: bool,
}

impl PencilStructure {
    /// Compares two pencils through their images in the null system.
    pub fn isomorphic_to(&self, other: &PencilStructure) -> bool {
        if !(self.isomorphic && other.isomorphic) || self.lines.len() != other.lines.len() {
            return false;
        }
        let pos: std::collections::HashMap<&Vector, usize> =
            other.image.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let Some(map): Option<Vec<usize>> = self.image.iter().map(|v| pos.get(v).copied()).collect() else {
            return false;
        };
        let theirs: HashSet<&Vec<usize>> = other.planes.iter().collect();
        self.planes.len() == other.planes.len()
            && self.planes.iter().all(|pl| {
                let mut img: Vec<usize> = pl.iter().map(|&i| map[i]).collect();
                img.sort_unstable();
                theirs.contains(&img)
            })
    }
}

pub struct SemipolarSpace {
    rho: Semiform,
    grid: Grid,
    adj: Vec<BitSet>,
    budget: Budget,
    star: OnceLock<bool>,
}

impl SemipolarSpace {
    /// Builds the space, normalizing the atlas first. Requires a
    /// nondegenerate `eta`.
    pub fn new(rho: &Semiform, budget: Budget) -> Result<Self> {
        if !rho.eta().is_nondegenerate(budget)? {
            return Err(Error::DegenerateForm);
        }
        Self::build(rho, budget)
    }

    /// Like [`SemipolarSpace::new`] but accepts a degenerate `eta`.
    pub fn with_degenerate(rho: &Semiform, budget: Budget) -> Result<Self> {
        Self::build(rho, budget)
    }

    fn build(rho: &Semiform, budget: Budget) -> Result<Self> {
        let rho = if rho.is_simplified() { rho.clone() } else { normalize(rho)?.semiform };
        let amb = rho.ambient();
        budget.check(amb.size().saturating_mul(amb.size()))?;
        let grid = Grid::new(amb, budget)?;
        let n = grid.size();
        let nu = rho.nu();
        let adj = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = BitSet::new(n);
                let mut out = vec![0u32; nu];
                for j in 0..n {
                    rho.eval_flat(grid.coords(i), grid.coords(j), &mut out);
                    if out.iter().all(|&x| x == 0) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(SemipolarSpace { rho, grid, adj, budget, star: OnceLock::new() })
    }

    pub fn rho(&self) -> &Semiform {
        &self.rho
    }

    pub fn eta(&self) -> &AlternatingMap {
        self.rho.eta()
    }

    pub fn field(&self) -> Field {
        self.rho.field()
    }

    pub fn nu(&self) -> usize {
        self.rho.nu()
    }

    pub fn n(&self) -> usize {
        self.rho.n()
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Number of points, `p^(nu + n)`.
    pub fn size(&self) -> usize {
        self.grid.size()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn point(&self, i: usize) -> Point {
        Point::from_flat(self.nu(), &self.grid.vector(i))
    }

    pub fn index(&self, p: &Point) -> usize {
        self.grid.index_of(&p.flat())
    }

    pub fn origin(&self) -> Point {
        self.rho.origin()
    }

    pub fn adjacent(&self, p1: &Point, p2: &Point) -> bool {
        self.adjacent_idx(self.index(p1), self.index(p2))
    }

    #[inline]
    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    /// `base + <dir>` is singular iff `eta(u_base, u_dir) = -v_dir`.
    pub fn line_is_singular(&self, line: &AffLine) -> bool {
        let lhs = self.eta().eval(&line.base().u, &line.dir().u);
        lhs == -&line.dir().v
    }

    /// Singularity checked on all pairs of points of the line.
    pub fn line_is_singular_pairwise(&self, line: &AffLine) -> bool {
        let idx = self.line_indices(line);
        idx.iter().all(|&a| idx.iter().all(|&b| self.adjacent_idx(a, b)))
    }

    pub fn line_indices(&self, line: &AffLine) -> Vec<usize> {
        line.points().iter().map(|x| self.index(x)).collect()
    }

    /// Canonical representatives of the direction classes of `Y`.
    pub fn directions(&self) -> Vec<Point> {
        (1..self.size())
            .filter(|&i| {
                let c = self.grid.coords(i);
                c[c.iter().position(|&x| x != 0).unwrap()] == 1
            })
            .map(|i| self.point(i))
            .collect()
    }

    pub fn singular_lines_through(&self, p: &Point) -> Vec<AffLine> {
        let mut out: Vec<AffLine> = self
            .directions()
            .into_iter()
            .map(|d| AffLine::new(p.clone(), d).expect("nonzero direction"))
            .filter(|l| self.line_is_singular(l))
            .collect();
        out.sort();
        out
    }

    /// Every singular line, each once.
    pub fn all_singular_lines(&self) -> Vec<AffLine> {
        let dirs = self.directions();
        let set: BTreeSet<AffLine> = (0..self.size())
            .into_par_iter()
            .flat_map_iter(|i| {
                let p = self.point(i);
                dirs.iter()
                    .map(move |d| AffLine::new(p.clone(), d.clone()).expect("nonzero direction"))
                    .filter(|l| self.line_is_singular(l))
                    .collect::<Vec<_>>()
            })
            .collect();
        set.into_iter().collect()
    }

    /// Directions `[v0, u0]` for which `eta(u0, u) = v0` has no solution.
    pub fn direction_excluded_set(&self) -> Vec<Point> {
        self.directions().into_iter().filter(|d| solve(&self.eta().eta_u(&d.u), &d.v).is_none()).collect()
    }

    /// Directions carrying no singular line, found by scanning every base point.
    pub fn direction_excluded_set_by_scan(&self) -> Vec<Point> {
        self.directions()
            .into_par_iter()
            .filter(|d| {
                (0..self.size()).all(|i| !self.line_is_singular(&AffLine::new(self.point(i), d.clone()).unwrap()))
            })
            .collect()
    }

    /// The set `{[v, u] : eta(u0, u) = v0 + alpha v}`.
    pub fn zset(&self, u0: &Vector, v0: &Vector, alpha: Fe) -> Result<ZSet> {
        if u0.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: u0.len() });
        }
        if v0.len() != self.nu() {
            return Err(Error::DimensionMismatch { expected: self.nu(), found: v0.len() });
        }
        let points: Vec<usize> = (0..self.size())
            .filter(|&i| {
                let p = self.point(i);
                self.eta().eval(u0, &p.u) == v0 + &p.v.scale(alpha)
            })
            .collect();
        let predicted_dim = if alpha.is_zero() { self.nu() + kernel(&self.eta().eta_u(u0)).dim() } else { self.n() };
        let vecs: Vec<Vector> = points.iter().map(|&i| self.grid.vector(i)).collect();
        let class = match affine_dimension(&vecs) {
            _ if points.is_empty() => ZClass::Empty,
            _ if points.len() == self.size() => ZClass::Whole,
            Some(dim) => ZClass::Affine { dim },
            None => ZClass::Affine { dim: usize::MAX },
        };
        let subspace = points.is_empty() || self.is_line_closed(&points);
        Ok(ZSet { points, class, subspace, predicted_dim })
    }

    fn is_line_closed(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        set.iter().all(|&a| {
            set.iter().filter(|&&b| b > a).all(|&b| {
                let line = AffLine::through(&self.point(a), &self.point(b)).unwrap();
                self.line_indices(&line).iter().all(|x| members.contains(x))
            })
        })
    }

    /// `{x : x ~ p}` with its affine dimension, if it is an affine subspace.
    pub fn joinable_subspace(&self, p: &Point) -> (Vec<usize>, Option<usize>) {
        let pts = self.adj[self.index(p)].to_vec();
        let vecs: Vec<Vector> = pts.iter().map(|&i| self.grid.vector(i)).collect();
        let dim = affine_dimension(&vecs);
        (pts, dim)
    }

    /// All proper triangles through `p`, as unordered pairs `{q, r}`.
    pub fn triangles_through(&self, p: &Point) -> Vec<Triangle> {
        let i = self.index(p);
        let nbrs: Vec<usize> = self.adj[i].iter().filter(|&x| x != i).collect();
        let eta = self.eta();
        let mut out = Vec::new();
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                if !self.adjacent_idx(a, b) {
                    continue;
                }
                let (q, r) = (self.point(a), self.point(b));
                if AffLine::through(p, &q).unwrap().contains(&r) {
                    continue;
                }
                let u = &q.u - &p.u;
                let y = &r.u - &p.u;
                let parametric = q.v == &p.v + &eta.eval(&u, &p.u)
                    && r.v == &p.v + &eta.eval(&y, &p.u)
                    && eta.eval(&u, &y).is_zero();
                out.push(Triangle { p: p.clone(), q, r, u, y, parametric });
            }
        }
        out
    }

    /// Gamma-space checks using the singular-line criterion.
    pub fn verify_gamma_space(&self) -> AxiomReport {
        let mut report = self.verify_gamma_space_with(|l| self.line_is_singular(l));
        report.push(self.verify_collinear_to_line());
        let maxis = self.maximal_singular_subspaces();
        let bad = maxis.iter().find(|s| {
            let vecs: Vec<Vector> = s.iter().map(|&i| self.grid.vector(i)).collect();
            affine_dimension(&vecs).is_none()
        });
        report.push(Verdict::new(
            "singular-subspaces-affine",
            maxis.len() as u64,
            bad.map(|s| Witness::points(s.iter().map(|&i| self.grid.coords(i).to_vec()).collect())),
        ));
        report
    }

    /// For every point `p` and every two distinct lines through `p` accepted
    /// by `is_line`, every line through `p` in their plane must be accepted.
    pub fn verify_gamma_space_with<F>(&self, is_line: F) -> AxiomReport
    where
        F: Fn(&AffLine) -> bool + Sync,
    {
        let dirs = self.directions();
        let f = self.field();
        let results: Vec<(u64, Option<Witness>)> = (0..self.size())
            .into_par_iter()
            .map(|i| {
                let p = self.point(i);
                let through: Vec<&Point> =
                    dirs.iter().filter(|d| is_line(&AffLine::new(p.clone(), (*d).clone()).unwrap())).collect();
                let mut checked = 0u64;
                for (k, a) in through.iter().enumerate() {
                    for b in &through[k + 1..] {
                        for lam in f.elements() {
                            checked += 1;
                            let d = a.add(&b.scale(lam));
                            let line = AffLine::new(p.clone(), d.clone()).unwrap();
                            if !is_line(&line) {
                                let w = Witness::points(vec![p.coords(), a.coords(), b.coords(), d.coords()])
                                    .with_detail("point, two line directions, rejected direction in their plane");
                                return (checked, Some(w));
                            }
                        }
                    }
                }
                (checked, None)
            })
            .collect();
        let checked = results.iter().map(|r| r.0).sum();
        let witness = results.into_iter().find_map(|r| r.1);
        AxiomReport { verdicts: vec![Verdict::new("plane-closure", checked, witness)] }
    }

    /// A point adjacent to two points of a singular line is adjacent to all of it.
    fn verify_collinear_to_line(&self) -> Verdict {
        let lines = self.all_singular_lines();
        let n = self.size();
        let w = lines.par_iter().find_map_first(|l| {
            let idx = self.line_indices(l);
            (0..n)
                .find(|&x| {
                    let hits = idx.iter().filter(|&&a| self.adjacent_idx(x, a)).count();
                    hits >= 2 && hits < idx.len()
                })
                .map(|x| {
                    let mut pts = vec![self.grid.coords(x).to_vec()];
                    pts.extend(idx.iter().map(|&a| self.grid.coords(a).to_vec()));
                    Witness::points(pts)
                })
        });
        Verdict::new("collinear-to-line", (lines.len() * n) as u64, w)
    }

    /// Every singular line has a parallel line that is not singular.
    pub fn verify_parallel_unclosed(&self) -> AxiomReport {
        let lines = self.all_singular_lines();
        let n = self.size();
        let w = lines.par_iter().find_map_first(|l| {
            let has_bad =
                (0..n).any(|i| !self.line_is_singular(&AffLine::new(self.point(i), l.dir().clone()).unwrap()));
            (!has_bad).then(|| Witness::points(vec![l.base().coords(), l.dir().coords()]))
        });
        AxiomReport { verdicts: vec![Verdict::new("parallel-unclosed", lines.len() as u64, w)] }
    }

    pub fn condition_star(&self) -> bool {
        *self.star.get_or_init(|| condition_star_holds(self.eta(), self.budget).unwrap_or(false))
    }

    /// `⋂ {x : x ~ y}` over all `y ~ p, q`.
    fn common_closure(&self, i: usize, j: usize) -> Vec<usize> {
        let mut common = self.adj[i].clone();
        common.intersect_with(&self.adj[j]);
        let mut out = BitSet::full(self.size());
        for y in common.iter() {
            out.intersect_with(&self.adj[y]);
        }
        out.to_vec()
    }

    /// The singular line through adjacent `p != q`, recovered from adjacency alone.
    pub fn recover_line(&self, p: &Point, q: &Point) -> Result<Vec<Point>> {
        let (i, j) = (self.index(p), self.index(q));
        if i == j {
            return Err(Error::InvalidPair("points must be distinct"));
        }
        if !self.adjacent_idx(i, j) {
            return Err(Error::InvalidPair("points must be adjacent"));
        }
        if !self.condition_star() {
            return Err(Error::PreconditionUnavailable("condition (*) fails for eta"));
        }
        Ok(self.common_closure(i, j).into_iter().map(|k| self.point(k)).collect())
    }

    /// For a scalar form: the affine line through two distinct points,
    /// recovered from adjacency alone. Pairs with `u_p = u_q` have no common
    /// neighbour, so the intersection is vacuous and they are refused.
    pub fn recover_affine_line(&self, p: &Point, q: &Point) -> Result<Vec<Point>> {
        if self.nu() != 1 {
            return Err(Error::RequiresScalarForm(self.nu()));
        }
        let (i, j) = (self.index(p), self.index(q));
        if i == j {
            return Err(Error::InvalidPair("points must be distinct"));
        }
        let mut common = self.adj[i].clone();
        common.intersect_with(&self.adj[j]);
        if common.count() == 0 {
            return Err(Error::PreconditionUnavailable("no point is adjacent to both p and q"));
        }
        Ok(self.common_closure(i, j).into_iter().map(|k| self.point(k)).collect())
    }

    /// Index-level variant of the recovery, for exhaustive sweeps.
    pub fn recover_indices(&self, i: usize, j: usize) -> Vec<usize> {
        self.common_closure(i, j)
    }

    pub fn pencil_structure(&self, p: &Point) -> Result<PencilStructure> {
        let lines = self.singular_lines_through(p);
        let f = self.field();
        let image: Vec<Vector> = lines.iter().map(|l| l.dir().u.normalized()).collect();
        let pos: std::collections::HashMap<&Vector, usize> = image.iter().enumerate().map(|(i, v)| (v, i)).collect();

        let mut planes: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                let (da, db) = (lines[a].dir(), lines[b].dir());
                let pts: Vec<usize> = f
                    .elements()
                    .flat_map(|x| f.elements().map(move |y| (x, y)))
                    .map(|(x, y)| self.index(&p.add(&da.scale(x)).add(&db.scale(y))))
                    .collect();
                if !pts.iter().all(|&s| pts.iter().all(|&t| self.adjacent_idx(s, t))) {
                    continue;
                }
                let mut members: Vec<usize> = std::iter::once(db.clone())
                    .chain(f.elements().map(|x| da.add(&db.scale(x))))
                    .map(|d| AffLine::new(p.clone(), d).unwrap())
                    .filter_map(|l| lines.binary_search(&l).ok())
                    .collect();
                members.sort_unstable();
                planes.insert(members);
            }
        }
        let planes: Vec<Vec<usize>> = planes.into_iter().collect();

        let amb = Ambient::new(f, self.n());
        let proj = amb.projective_points(self.budget)?;
        let null_lines: Vec<Subspace> = enumerate_subspaces(2, amb, self.budget)?
            .into_iter()
            .filter(|w| self.eta().eval(&w.basis()[0], &w.basis()[1]).is_zero())
            .collect();
        let bijective =
            image.len() == proj.len() && pos.len() == image.len() && proj.iter().all(|x| pos.contains_key(x));
        let plane_images: HashSet<Vec<usize>> = null_lines
            .iter()
            .filter_map(|w| {
                let mut ids: Vec<usize> =
                    w.projective_points().iter().map(|x| pos.get(x).copied()).collect::<Option<_>>()?;
                ids.sort_unstable();
                Some(ids)
            })
            .collect();
        let isomorphic = bijective
            && plane_images.len() == null_lines.len()
            && planes.len() == null_lines.len()
            && planes.iter().all(|pl| plane_images.contains(pl));
        Ok(PencilStructure { at: p.clone(), lines, planes, image, null_system_lines: null_lines.len(), isomorphic })
    }

    /// Maximal singular subspaces, grown from singular lines by adding a
    /// point adjacent to everything and closing under affine lines.
    pub fn maximal_singular_subspaces(&self) -> Vec<Vec<usize>> {
        let seeds: Vec<Vec<usize>> = self
            .all_singular_lines()
            .iter()
            .map(|l| {
                let mut v = self.line_indices(l);
                v.sort_unstable();
                v
            })
            .collect();
        grow_maximal_cliques(seeds, &self.adj, |s| self.line_closure(s))
    }

    /// Closes a point set under affine lines through pairs of its points.
    fn line_closure(&self, mut set: Vec<usize>) -> Vec<usize> {
        set.sort_unstable();
        set.dedup();
        loop {
            let members: HashSet<usize> = set.iter().copied().collect();
            let mut added = BTreeSet::new();
            for (k, &a) in set.iter().enumerate() {
                for &b in &set[k + 1..] {
                    let line = AffLine::through(&self.point(a), &self.point(b)).unwrap();
                    for x in self.line_indices(&line) {
                        if !members.contains(&x) {
                            added.insert(x);
                        }
                    }
                }
            }
            if added.is_empty() {
                return set;
            }
            set.extend(added);
            set.sort_unstable();
        }
    }
}

/// Every pair of non-parallel `u', u''` admits `y` with
/// `eta(u', y) = 0 != eta(u'', y)`, i.e. `ker eta_{u'}` is not inside `ker eta_{u''}`.
pub fn condition_star_holds(eta: &AlternatingMap, budget: Budget) -> Result<bool> {
    let amb = Ambient::new(eta.field(), eta.n());
    let proj = amb.projective_points(budget)?;
    let kernels: Vec<Subspace> = proj.iter().map(|u| kernel(&eta.eta_u(u))).collect();
    Ok((0..proj.len())
        .into_par_iter()
        .all(|a| (0..proj.len()).all(|b| a == b || !kernels[a].is_subspace_of(&kernels[b]))))
}

/// `dim ker(eta_u) = 1` for every nonzero `u`.
pub fn kernel_dims_all_one(eta: &AlternatingMap, budget: Budget) -> Result<bool> {
    let amb = Ambient::new(eta.field(), eta.n());
    Ok(amb.projective_points(budget)?.iter().all(|u| kernel(&eta.eta_u(u)).dim() == 1))
}
