//! Equidistance `p1p2 ≡ p3p4 :<=> rho(p1,p2) = rho(p3,p4)`, bisectors,
//! spheres, midpoints and the polar description of bisectors.
//!
//! Bisectors and spheres need a scalar form (`nu = 1`); equidistance works
//! for any `nu`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::apsg::SemipolarSpace;
use crate::error::{Error, Result};
use crate::forms::Point;
use crate::gf::Fe;
use crate::linalg::Vector;
use crate::report::{AxiomReport, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Empty,
    Hyperplane,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BisectorKind {
    T,
    M,
    Sphere,
}

/// `{[a,u] : eta(u0, u) = beta + alpha·a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HyperplaneDescriptor {
    pub u0: Vector,
    pub alpha: u32,
    pub beta: u32,
}

impl HyperplaneDescriptor {
    pub fn contains(&self, space: &SemipolarSpace, p: &Point) -> bool {
        let f = space.field();
        let lhs = space.eta().eval(&self.u0, &p.u).coords()[0];
        lhs == f.add(self.beta, f.mul(self.alpha, p.v.coords()[0]))
    }

    /// Assumes a nondegenerate `eta`, so `u0 != 0` gives a nonconstant equation.
    pub fn classify(&self) -> Classification {
        match (self.u0.is_zero() && self.alpha == 0, self.beta == 0) {
            (true, true) => Classification::All,
            (true, false) => Classification::Empty,
            (false, _) => Classification::Hyperplane,
        }
    }

    /// Scaled so the first nonzero of `(alpha, u0)` is 1; `All` and `Empty`
    /// collapse to fixed representatives.
    pub fn normalized(&self) -> HyperplaneDescriptor {
        let f = self.u0.field();
        let lead = std::iter::once(self.alpha).chain(self.u0.coords().iter().copied()).find(|&x| x != 0);
        let c = match lead {
            Some(x) => f.inv(x).expect("nonzero"),
            None => {
                return HyperplaneDescriptor { u0: self.u0.scale_raw(0), alpha: 0, beta: u32::from(self.beta != 0) }
            }
        };
        HyperplaneDescriptor { u0: self.u0.scale_raw(c), alpha: f.mul(self.alpha, c), beta: f.mul(self.beta, c) }
    }

    pub fn points(&self, space: &SemipolarSpace) -> Vec<usize> {
        (0..space.size()).filter(|&i| self.contains(space, &space.point(i))).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bisector {
    pub kind: BisectorKind,
    pub pair: [Point; 2],
    /// Point indices satisfying the defining equidistance.
    pub points: Vec<usize>,
    /// `None` only for an empty set.
    pub descriptor: Option<HyperplaneDescriptor>,
    pub classification: Classification,
}

#[derive(Clone, Debug, Serialize)]
pub struct BisectorReport {
    pub pair: [Vec<u32>; 2],
    pub kind: BisectorKind,
    pub classification: Classification,
    pub equation: Option<HyperplaneDescriptor>,
    pub cardinality: usize,
}

impl Bisector {
    pub fn report(&self) -> BisectorReport {
        BisectorReport {
            pair: [self.pair[0].coords(), self.pair[1].coords()],
            kind: self.kind,
            classification: self.classification,
            equation: self.descriptor.clone(),
            cardinality: self.points.len(),
        }
    }

    /// The explicit equation describes exactly the defined set.
    pub fn matches_equation(&self, space: &SemipolarSpace) -> bool {
        match &self.descriptor {
            Some(d) => d.points(space) == self.points,
            None => self.points.is_empty(),
        }
    }
}

fn require_scalar(space: &SemipolarSpace) -> Result<()> {
    match space.nu() {
        1 => Ok(()),
        nu => Err(Error::RequiresScalarForm(nu)),
    }
}

#[inline]
fn rho_idx(space: &SemipolarSpace, i: usize, j: usize) -> u32 {
    let mut out = [0u32];
    space.rho().eval_flat(space.grid().coords(i), space.grid().coords(j), &mut out);
    out[0]
}

pub fn equidistant(space: &SemipolarSpace, p1: &Point, p2: &Point, p3: &Point, p4: &Point) -> Result<bool> {
    let rho = space.rho();
    Ok(rho.eval(p1, p2)? == rho.eval(p3, p4)?)
}

fn bisector_from(
    space: &SemipolarSpace,
    kind: BisectorKind,
    p1: &Point,
    p2: &Point,
    descriptor: HyperplaneDescriptor,
) -> Result<Bisector> {
    require_scalar(space)?;
    let (i1, i2) = (space.index(p1), space.index(p2));
    let points: Vec<usize> = (0..space.size())
        .filter(|&x| match kind {
            BisectorKind::T => rho_idx(space, i1, x) == rho_idx(space, i2, x),
            BisectorKind::M => rho_idx(space, i1, x) == rho_idx(space, x, i2),
            BisectorKind::Sphere => rho_idx(space, i1, x) == rho_idx(space, i1, i2),
        })
        .collect();
    let classification = descriptor.classify();
    let descriptor = (classification != Classification::Empty).then_some(descriptor);
    Ok(Bisector { kind, pair: [p1.clone(), p2.clone()], points, descriptor, classification })
}

/// `{p : p1p ≡ p2p}`, with equation `eta(u1 - u2, u) = a1 - a2`.
pub fn bisector_t(space: &SemipolarSpace, p1: &Point, p2: &Point) -> Result<Bisector> {
    let f = space.field();
    let d = HyperplaneDescriptor { u0: &p1.u - &p2.u, alpha: 0, beta: f.sub(p1.v.coords()[0], p2.v.coords()[0]) };
    bisector_from(space, BisectorKind::T, p1, p2, d)
}

/// `{p : p1p ≡ pp2}`, with equation `eta(u1 + u2, u) = (a1 + a2) - 2a`.
pub fn bisector_m(space: &SemipolarSpace, p1: &Point, p2: &Point) -> Result<Bisector> {
    let f = space.field();
    let d = HyperplaneDescriptor {
        u0: &p1.u + &p2.u,
        alpha: f.neg(2 % f.modulus()),
        beta: f.add(p1.v.coords()[0], p2.v.coords()[0]),
    };
    bisector_from(space, BisectorKind::M, p1, p2, d)
}

/// `{p : p1p ≡ p1p2}`, with equation `eta(u1, u) = (eta(u1, u2) + a2) - a`.
pub fn sphere(space: &SemipolarSpace, p1: &Point, p2: &Point) -> Result<Bisector> {
    let f = space.field();
    let e = space.eta().eval(&p1.u, &p2.u).coords()[0];
    let d = HyperplaneDescriptor { u0: p1.u.clone(), alpha: f.neg(1), beta: f.add(e, p2.v.coords()[0]) };
    bisector_from(space, BisectorKind::Sphere, p1, p2, d)
}

pub fn midpoint(p1: &Point, p2: &Point) -> Point {
    let f = p1.v.field();
    p1.add(p2).scale(f.elem(i64::from(f.half())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairComparison {
    pub sets_equal: bool,
    pub criterion: bool,
}

/// Set equality of `bisector_t` against `(p2 - p1)·gamma = q2 - q1` for some `gamma != 0`.
pub fn bisectors_equal_t(space: &SemipolarSpace, p: (&Point, &Point), q: (&Point, &Point)) -> Result<PairComparison> {
    let a = bisector_t(space, p.0, p.1)?;
    let b = bisector_t(space, q.0, q.1)?;
    let dp = p.1.sub(p.0);
    let dq = q.1.sub(q.0);
    let criterion = space.field().units().any(|g| dp.scale(g) == dq);
    Ok(PairComparison { sets_equal: a.points == b.points, criterion })
}

/// Set equality of `bisector_m` against `p1 + p2 = q1 + q2`.
pub fn bisectors_equal_m(space: &SemipolarSpace, p: (&Point, &Point), q: (&Point, &Point)) -> Result<PairComparison> {
    let a = bisector_m(space, p.0, p.1)?;
    let b = bisector_m(space, q.0, q.1)?;
    Ok(PairComparison { sets_equal: a.points == b.points, criterion: p.0.add(p.1) == q.0.add(q.1) })
}

/// The central symmetry `x -> c - x` with centre `c/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralSymmetry {
    pub centre: Point,
    sum: Point,
}

impl CentralSymmetry {
    pub fn apply(&self, x: &Point) -> Point {
        self.sum.sub(x)
    }
}

/// The relation `bisector_m(p1, p2) = H`, which is empty or a central symmetry.
pub fn symmetry_m(space: &SemipolarSpace, h: &HyperplaneDescriptor) -> Result<Option<CentralSymmetry>> {
    require_scalar(space)?;
    let target = h.normalized();
    let n = space.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let target = &target;
            (0..n).filter_map(move |j| {
                let b = bisector_m(space, &space.point(i), &space.point(j)).ok()?;
                (b.descriptor.as_ref()?.normalized() == *target).then_some((i, j))
            })
        })
        .collect();
    let Some(&(i, j)) = pairs.first() else {
        return Ok(None);
    };
    let sum = space.point(i).add(&space.point(j));
    for &(a, b) in &pairs {
        if space.point(a).add(&space.point(b)) != sum {
            return Err(Error::NotCompatible("pairs with the same m-bisector have different centres".into()));
        }
    }
    let f = space.field();
    let centre = sum.scale(f.elem(i64::from(f.half())));
    Ok(Some(CentralSymmetry { centre, sum }))
}

/// Whenever `bisector_t(p1, p2) = H`, every pair `(x, x + (p2 - p1))` has bisector `H` too.
pub fn translation_in_sigma_t(space: &SemipolarSpace, p1: &Point, p2: &Point) -> Result<bool> {
    let h = bisector_t(space, p1, p2)?.points;
    let d = p2.sub(p1);
    for i in 0..space.size() {
        let x = space.point(i);
        if bisector_t(space, &x, &x.add(&d))?.points != h {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `bisector_m(p1,p2) = {r : (p1 ⊕ p2) ~ r}` and `bisector_t(p1,p2)` is the set of
/// `r = [b, y]` with `xi(theta, <1, b, y>) = 0` where `theta = [0, a2 - a1, u2 - u1]`
/// and `xi([a1,b1,u1],[a2,b2,u2]) = a1 b2 - a2 b1 + eta(u1,u2)`.
pub fn polar_correspondence_check(space: &SemipolarSpace, p1: &Point, p2: &Point) -> Result<bool> {
    require_scalar(space)?;
    let f = space.field();
    let q = midpoint(p1, p2);
    let qi = space.index(&q);
    let m = bisector_m(space, p1, p2)?;
    let polar: Vec<usize> = (0..space.size()).filter(|&r| space.adjacent_idx(qi, r)).collect();
    if m.points != polar {
        return Ok(false);
    }
    let t = bisector_t(space, p1, p2)?;
    let theta_b = f.sub(p2.v.coords()[0], p1.v.coords()[0]);
    let theta_u = &p2.u - &p1.u;
    let ortho: Vec<usize> = (0..space.size())
        .filter(|&r| {
            let pr = space.point(r);
            // xi([0, theta_b, theta_u], [1, b, y]) = 0·b - 1·theta_b + eta(theta_u, y)
            let x = f.sub(space.eta().eval(&theta_u, &pr.u).coords()[0], theta_b);
            x == 0
        })
        .collect();
    Ok(t.points == ortho)
}

/// A pair and a translation with `rho(p1 + t, p2 + t) != rho(p1, p2)`.
#[derive(Clone, Debug, Serialize)]
pub struct TranslationWitness {
    pub p1: Point,
    pub p2: Point,
    pub t: Point,
    pub before: Vector,
    pub after: Vector,
}

pub fn translation_noninvariance_witness(space: &SemipolarSpace) -> Option<TranslationWitness> {
    let n = space.size();
    let rho = space.rho();
    (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            (0..n).find_map(|k| {
                let (p1, p2, t) = (space.point(i), space.point(j), space.point(k));
                let before = rho.eval(&p1, &p2).ok()?;
                let after = rho.eval(&p1.add(&t), &p2.add(&t)).ok()?;
                (before != after).then_some(TranslationWitness { p1, p2, t, before, after })
            })
        })
    })
}

/// Cap on `|Y|` for the all-pairs-of-pairs bisector comparison.
pub const PAIR_OF_PAIRS_CAP: usize = 27;

/// The bisector/sphere/midpoint/polar suite.
pub fn verify_metric(space: &SemipolarSpace) -> Result<AxiomReport> {
    require_scalar(space)?;
    let n = space.size();
    let pn = space.field().modulus() as usize;
    let hyper = n / pn;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let w =
        |i: usize, j: usize| Witness::points(vec![space.grid().coords(i).to_vec(), space.grid().coords(j).to_vec()]);

    let rows: Vec<PairRow> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p1, p2) = (space.point(i), space.point(j));
            let t = bisector_t(space, &p1, &p2).expect("scalar");
            let m = bisector_m(space, &p1, &p2).expect("scalar");
            let s = sphere(space, &p1, &p2).expect("scalar");
            let vertical = i != j && p1.u == p2.u;
            let sizes_ok = (t.points.is_empty() || t.points.len() == hyper || i == j)
                && m.points.len() == hyper
                && s.points.len() == hyper;
            let eq_ok = t.matches_equation(space) && m.matches_equation(space) && s.matches_equation(space);
            let empty_ok = i == j || t.points.is_empty() == vertical;
            let mid = midpoint(&p1, &p2);
            let mid_ok = equidistant(space, &p1, &mid, &mid, &p2).unwrap() && m.points.contains(&space.index(&mid));
            let polar_ok = i == j || polar_correspondence_check(space, &p1, &p2).unwrap();
            let ok = [sizes_ok, eq_ok, empty_ok, mid_ok, polar_ok];
            PairRow { t: t.points, m: m.points, failed: ok.map(|x| (!x).then(|| w(i, j))) }
        })
        .collect();

    let checked = pairs.len() as u64;
    let mut report = AxiomReport::default();
    for (k, name) in
        ["hyperplane-cardinality", "explicit-equations", "t-empty-iff-vertical", "midpoint", "polar-correspondence"]
            .into_iter()
            .enumerate()
    {
        report.push(Verdict::new(name, checked, rows.iter().find_map(|r| r.failed[k].clone())));
    }

    let (i0, j0) = (0, 1);
    let rem_t = rows[i0 * n + i0].t.len() == n;
    let rem_m = rows[i0 * n + i0].m == space.neighbors(i0).to_vec();
    report.push(Verdict::new("degenerate-bisectors", 2, (!(rem_t && rem_m)).then(|| w(i0, i0))));

    let sigma_ok = translation_in_sigma_t(space, &space.point(i0), &space.point(j0))?;
    report.push(Verdict::new("sigma-t-contains-translation", n as u64, (!sigma_ok).then(|| w(i0, j0))));

    if n <= PAIR_OF_PAIRS_CAP {
        report.push(verify_pair_criteria(space, &pairs, &rows));
    }
    Ok(report)
}

struct PairRow {
    t: Vec<usize>,
    m: Vec<usize>,
    failed: [Option<Witness>; 5],
}

/// Closed-form equality criteria for bisectors, compared with set equality on all pairs of pairs.
fn verify_pair_criteria(space: &SemipolarSpace, pairs: &[(usize, usize)], rows: &[PairRow]) -> Verdict {
    let mut t_ids: HashMap<&Vec<usize>, usize> = HashMap::new();
    let mut m_ids: HashMap<&Vec<usize>, usize> = HashMap::new();
    let ids: Vec<(usize, usize)> = rows
        .iter()
        .map(|r| {
            let k = t_ids.len();
            let a = *t_ids.entry(&r.t).or_insert(k);
            let k = m_ids.len();
            let b = *m_ids.entry(&r.m).or_insert(k);
            (a, b)
        })
        .collect();
    let distinct: Vec<usize> = (0..pairs.len()).filter(|&k| pairs[k].0 != pairs[k].1).collect();
    let g = space.grid();
    let diffs: Vec<Vector> = pairs.iter().map(|&(i, j)| g.vector(g.sub(j, i))).collect();
    let sums: Vec<usize> = pairs.iter().map(|&(i, j)| g.add(i, j)).collect();
    let units: Vec<Fe> = space.field().units().collect();
    let w = distinct.par_iter().find_map_first(|&a| {
        distinct.iter().find_map(|&b| {
            let t_crit = units.iter().any(|&c| diffs[a].scale(c) == diffs[b]);
            let m_crit = sums[a] == sums[b];
            let bad = (t_crit != (ids[a].0 == ids[b].0)) || (m_crit != (ids[a].1 == ids[b].1));
            bad.then(|| {
                let c = |k: usize| g.coords(k).to_vec();
                Witness::points(vec![c(pairs[a].0), c(pairs[a].1), c(pairs[b].0), c(pairs[b].1)])
            })
        })
    });
    Verdict::new("bisector-criteria", (distinct.len() * distinct.len()) as u64, w)
}

/// Equidistance laws: equivalence on pairs, reversal, and the adjacency characterizations.
pub fn verify_equidistance(space: &SemipolarSpace) -> AxiomReport {
    let n = space.size();
    let rho = |i, j| rho_idx(space, i, j);
    let w =
        |i: usize, j: usize| Witness::points(vec![space.grid().coords(i).to_vec(), space.grid().coords(j).to_vec()]);
    let null = (0..n).into_par_iter().find_map_first(|i| {
        (0..n).find(|&j| i != j && ((rho(i, j) == rho(0, 0)) != space.adjacent_idx(i, j))).map(|j| w(i, j))
    });
    let swap = (0..n)
        .into_par_iter()
        .find_map_first(|i| (0..n).find(|&j| (rho(i, j) == rho(j, i)) != space.adjacent_idx(i, j)).map(|j| w(i, j)));
    let f = space.field();
    let reversal =
        (0..n).into_par_iter().find_map_first(|i| (0..n).find(|&j| rho(j, i) != f.neg(rho(i, j))).map(|j| w(i, j)));
    let mut report = AxiomReport::default();
    report.push(Verdict::new("null-segment", (n * n) as u64, null));
    report.push(Verdict::new("reversed-segment", (n * n) as u64, swap));
    report.push(Verdict::new("reversal-law", (n * n) as u64, reversal));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Semiform;
    use crate::gf::Field;
    use crate::linalg::Budget;

    fn sym(p: u32, m: usize) -> SemipolarSpace {
        SemipolarSpace::new(&Semiform::symplectic(Field::new(p).unwrap(), m).unwrap(), Budget::default()).unwrap()
    }

    fn pt(s: &SemipolarSpace, a: i64, u: &[i64]) -> Point {
        s.rho().point(&[a], u).unwrap()
    }

    #[test]
    fn equidistance_examples() {
        let s = sym(3, 1);
        let (p1, p2) = (pt(&s, 0, &[1, 0]), pt(&s, 0, &[0, 0]));
        assert!(equidistant(&s, &p1, &p2, &p1, &p2).unwrap());
        let p = pt(&s, 1, &[1, 1]);
        assert_eq!(equidistant(&s, &p1, &p2, &p, &p).unwrap(), s.adjacent(&p1, &p2));
        let far = pt(&s, 1, &[0, 0]);
        assert!(!equidistant(&s, &far, &p2, &p, &p).unwrap());
        assert!(!equidistant(&s, &far, &p2, &p2, &far).unwrap());
        assert!(verify_equidistance(&s).all_pass());
    }

    #[test]
    fn bisector_examples() {
        let s = sym(3, 1);
        let o = s.origin();
        assert_eq!(bisector_t(&s, &o, &o).unwrap().classification, Classification::All);
        assert_eq!(bisector_t(&s, &o, &o).unwrap().points.len(), 27);
        let vert = pt(&s, 1, &[0, 0]);
        let b = bisector_t(&s, &o, &vert).unwrap();
        assert!(b.points.is_empty() && b.descriptor.is_none());
        let b = bisector_t(&s, &pt(&s, 0, &[1, 0]), &o).unwrap();
        assert_eq!((b.classification, b.points.len()), (Classification::Hyperplane, 9));
        assert!(b.matches_equation(&s));

        let m = bisector_m(&s, &o, &o).unwrap();
        assert_eq!(m.points, s.neighbors(0).to_vec());
        let m = bisector_m(&s, &o, &vert).unwrap();
        assert_eq!(m.points.len(), 9);
        assert!(m.points.iter().all(|&i| s.point(i).v.coords()[0] == 2));
    }

    #[test]
    fn sphere_examples() {
        let s = sym(3, 1);
        let p1 = pt(&s, 1, &[2, 1]);
        let sp = sphere(&s, &p1, &p1).unwrap();
        assert!(sp.points.contains(&s.index(&p1)));
        let sp = sphere(&s, &p1, &pt(&s, 2, &[0, 1])).unwrap();
        assert_eq!(sp.points.len(), 9);
        assert!(sp.matches_equation(&s));
    }

    #[test]
    fn midpoint_examples() {
        let s5 = sym(5, 1);
        let m = midpoint(&s5.origin(), &pt(&s5, 1, &[0, 0]));
        assert_eq!(m, pt(&s5, 3, &[0, 0]));
        let p = pt(&s5, 2, &[3, 4]);
        assert_eq!(midpoint(&p, &p), p);
    }

    #[test]
    fn bisector_equality_examples() {
        let s = sym(3, 1);
        let (p1, p2) = (pt(&s, 0, &[1, 0]), pt(&s, 1, &[2, 2]));
        let t = pt(&s, 2, &[1, 1]);
        let c = bisectors_equal_t(&s, (&p1, &p2), (&p1.add(&t), &p2.add(&t))).unwrap();
        assert_eq!(c, PairComparison { sets_equal: true, criterion: true });
        let f = s.field();
        let doubled = p1.add(&p2.sub(&p1).scale(f.elem(2)));
        assert!(bisectors_equal_t(&s, (&p1, &p2), (&p1, &doubled)).unwrap().sets_equal);
        let c = bisectors_equal_t(&s, (&p1, &p2), (&p1, &pt(&s, 0, &[0, 1]))).unwrap();
        assert_eq!(c, PairComparison { sets_equal: false, criterion: false });

        let q = pt(&s, 1, &[1, 2]);
        let refl = |x: &Point| q.scale(f.elem(2)).sub(x);
        let c = bisectors_equal_m(&s, (&p1, &refl(&p1)), (&p2, &refl(&p2))).unwrap();
        assert_eq!(c, PairComparison { sets_equal: true, criterion: true });
        let c = bisectors_equal_m(&s, (&p1, &p2), (&p1, &q)).unwrap();
        assert_eq!(c, PairComparison { sets_equal: false, criterion: false });
    }

    #[test]
    fn symmetry_examples() {
        let s = sym(3, 1);
        let (p, q) = (pt(&s, 0, &[1, 0]), pt(&s, 1, &[2, 2]));
        let h = bisector_m(&s, &p, &q).unwrap().descriptor.unwrap();
        let sym = symmetry_m(&s, &h).unwrap().unwrap();
        assert_eq!(sym.centre, midpoint(&p, &q));
        assert_eq!(sym.apply(&p), q);
        for i in 0..s.size() {
            assert_eq!(sym.apply(&sym.apply(&s.point(i))), s.point(i));
        }
        // alpha = 0 hyperplanes are never m-bisectors.
        let f = s.field();
        let h = HyperplaneDescriptor { u0: Vector::from_ints(f, &[1, 0]), alpha: 0, beta: 0 };
        assert!(symmetry_m(&s, &h).unwrap().is_none());
        assert!(translation_in_sigma_t(&s, &p, &q).unwrap());
    }

    #[test]
    fn polar_examples() {
        let s = sym(3, 1);
        let o = s.origin();
        assert!(polar_correspondence_check(&s, &o, &pt(&s, 1, &[0, 0])).unwrap());
        assert!(polar_correspondence_check(&s, &o, &pt(&s, 2, &[1, 2])).unwrap());
        let w = translation_noninvariance_witness(&s).unwrap();
        assert_ne!(w.before, w.after);
    }

    #[test]
    fn metric_suite_m1() {
        let rep = verify_metric(&sym(3, 1)).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert!(rep.get("bisector-criteria").is_some());
    }

    #[test]
    fn normalization() {
        let f = Field::new(3).unwrap();
        let h = HyperplaneDescriptor { u0: Vector::from_ints(f, &[2, 1]), alpha: 1, beta: 2 };
        let n = h.normalized();
        assert_eq!((n.alpha, n.beta, n.u0.coords().to_vec()), (1, 2, vec![2, 1]));
        let h = HyperplaneDescriptor { u0: Vector::from_ints(f, &[2, 1]), alpha: 0, beta: 2 };
        assert_eq!(h.normalized().u0.coords(), &[1, 2]);
        let e = HyperplaneDescriptor { u0: Vector::zero(f, 2), alpha: 0, beta: 2 };
        assert_eq!(e.classify(), Classification::Empty);
    }
}
