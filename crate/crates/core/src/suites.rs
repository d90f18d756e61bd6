//! Named verification suites with JSON-serializable reports.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::apsg::{kernel_dims_all_one, AffLine, SemipolarSpace};
use crate::autos::{
    brute_force_aut_group, fixes_vertical_directions, orbit, parametric_family, preserves_adjacency, rho_scale_factor,
    translation_generators, verify_semiform_scaling, ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::forms::{
    check_atlas_axioms, check_semiform_axioms, printed_identity_d, verify_identities, OperationTable, Semiform,
};
use crate::hyperbolic::{reconstruction_report, HypPolarSpace, SymmetricForm};
use crate::linalg::{Budget, Matrix};
use crate::metric::{translation_noninvariance_witness, verify_equidistance, verify_metric};
use crate::report::{Verdict, Witness};

pub const SUITES: [&str; 14] = [
    "axioms",
    "identities",
    "gamma",
    "lines",
    "dset",
    "joinable",
    "triangles",
    "recover",
    "pencil",
    "autos",
    "oracle",
    "metric",
    "bisectors",
    "hyperbolic",
];

/// Suites defined only for scalar forms.
pub const SCALAR_ONLY: [&str; 3] = ["oracle", "metric", "bisectors"];

/// Splits `SUITES` into those that apply to `rho` and the rest, with a reason.
pub fn applicable_suites(rho: &Semiform) -> (Vec<String>, BTreeMap<String, String>) {
    let nu = rho.eta().nu();
    let size = (rho.field().modulus() as u128).pow((nu + rho.eta().n()) as u32);
    let mut run = Vec::new();
    let mut skipped = BTreeMap::new();
    for s in SUITES {
        if nu != 1 && SCALAR_ONLY.contains(&s) {
            skipped.insert(s.to_string(), format!("requires nu = 1, got nu = {nu}"));
        } else if s == "oracle" && size > ORACLE_CAP as u128 {
            skipped.insert(s.to_string(), format!("{size} points exceed the oracle cap of {ORACLE_CAP}"));
        } else {
            run.push(s.to_string());
        }
    }
    (run, skipped)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteConfig {
    pub budget: Budget,
    /// Check only this many seeded-random points in the per-point suites.
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    pub notes: BTreeMap<String, Value>,
}

impl SuiteReport {
    fn new(suite: &str, verdicts: Vec<Verdict>, notes: BTreeMap<String, Value>) -> Self {
        SuiteReport { suite: suite.to_string(), pass: verdicts.iter().all(|v| v.pass), verdicts, notes }
    }
}

/// Lazily built space shared by the suites of one run.
pub struct Context<'a> {
    pub rho: &'a Semiform,
    pub config: SuiteConfig,
    space: Option<SemipolarSpace>,
}

impl<'a> Context<'a> {
    pub fn new(rho: &'a Semiform, config: SuiteConfig) -> Self {
        Context { rho, config, space: None }
    }

    fn space(&mut self) -> Result<&SemipolarSpace> {
        if self.space.is_none() {
            self.space = Some(SemipolarSpace::new(self.rho, self.config.budget)?);
        }
        Ok(self.space.as_ref().expect("just built"))
    }

    /// Point indices to check: all, or a seeded sample.
    fn points(&self, n: usize) -> Vec<usize> {
        match self.config.sample {
            Some(k) if k < n => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
                let mut v = sample(&mut rng, n, k).into_vec();
                v.sort_unstable();
                v
            }
            _ => (0..n).collect(),
        }
    }

    pub fn run(&mut self, suite: &str) -> Result<SuiteReport> {
        match suite {
            "axioms" => self.axioms(),
            "identities" => self.identities(),
            "gamma" => self.gamma(),
            "lines" => self.lines(),
            "dset" => self.dset(),
            "joinable" => self.joinable(),
            "triangles" => self.triangles(),
            "recover" => self.recover(),
            "pencil" => self.pencil(),
            "autos" => self.autos(),
            "oracle" => self.oracle(),
            "metric" => self.metric(),
            "bisectors" => self.bisectors(),
            "hyperbolic" => self.hyperbolic(),
            other => Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
        }
    }

    fn axioms(&mut self) -> Result<SuiteReport> {
        let table = OperationTable::of_semiform(self.rho, self.config.budget)?;
        let rep = check_semiform_axioms(&table);
        let mut verdicts = rep.report.verdicts;
        let mut notes = BTreeMap::new();
        match &rep.decomposition {
            Some(d) => {
                let w = (!d.is_consistent()).then(|| Witness::points(vec![]).with_detail("decomposition inconsistent"));
                verdicts.push(Verdict::new("recombination", table.domain().size().pow(2) as u64, w));
                notes.insert("dim_m".into(), json!(d.dim_m()));
                notes.insert("dim_d".into(), json!(d.dim_d()));
                notes.insert("recombination_mismatches".into(), json!(d.recombination_mismatches));
                notes.insert("literal_delta_mismatches".into(), json!(d.literal_delta_mismatches));
            }
            None => verdicts.push(Verdict::fail(
                "recombination",
                0,
                Witness::points(vec![]).with_detail("no decomposition"),
            )),
        }
        let atlas = OperationTable::of_atlas(self.rho.atlas(), self.config.budget)?;
        let arep = check_atlas_axioms(&atlas);
        verdicts.extend(arep.report.verdicts.into_iter().map(|mut v| {
            v.name = format!("atlas/{}", v.name);
            v
        }));
        Ok(SuiteReport::new("axioms", verdicts, notes))
    }

    fn identities(&mut self) -> Result<SuiteReport> {
        let rep = verify_identities(self.rho, self.config.budget)?;
        let printed = printed_identity_d(self.rho, self.config.budget)?;
        let mut notes = BTreeMap::new();
        notes.insert("D(printed)".into(), serde_json::to_value(&printed).expect("serializable"));
        Ok(SuiteReport::new("identities", rep.verdicts, notes))
    }

    fn gamma(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let mut rep = s.verify_gamma_space();
        rep.extend(s.verify_parallel_unclosed());
        let mut notes = BTreeMap::new();
        notes.insert("singular_lines".into(), json!(s.all_singular_lines().len()));
        notes.insert("maximal_singular_subspaces".into(), json!(s.maximal_singular_subspaces().len()));
        Ok(SuiteReport::new("gamma", rep.verdicts, notes))
    }

    fn lines(&mut self) -> Result<SuiteReport> {
        let n = self.space()?.size();
        let pts = self.points(n);
        let s = self.space()?;
        let dirs = s.directions();
        let w = pts.par_iter().find_map_first(|&i| {
            let p = s.point(i);
            dirs.iter().find_map(|d| {
                let l = AffLine::new(p.clone(), d.clone()).expect("nonzero direction");
                (s.line_is_singular(&l) != s.line_is_singular_pairwise(&l))
                    .then(|| Witness::points(vec![p.coords(), d.coords()]))
            })
        });
        let counts: BTreeSet<usize> = pts.par_iter().map(|&i| s.singular_lines_through(&s.point(i)).len()).collect();
        let mut notes = BTreeMap::new();
        notes.insert("singular_lines_through_a_point".into(), json!(counts));
        let v = Verdict::new("criterion-vs-pairwise", (pts.len() * dirs.len()) as u64, w);
        Ok(SuiteReport::new("lines", vec![v], notes))
    }

    fn dset(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let d = s.direction_excluded_set();
        let scan = s.direction_excluded_set_by_scan();
        let w = (d != scan).then(|| Witness::points(d.iter().chain(&scan).map(|x| x.coords()).collect()));
        let mut notes = BTreeMap::new();
        notes.insert("excluded_directions".into(), json!(d.len()));
        notes.insert("directions".into(), json!(s.directions().len()));
        Ok(SuiteReport::new("dset", vec![Verdict::new("solvability-vs-scan", s.directions().len() as u64, w)], notes))
    }

    fn joinable(&mut self) -> Result<SuiteReport> {
        let n = self.space()?.size();
        let pts = self.points(n);
        let s = self.space()?;
        let q = s.field().modulus() as usize;
        let want = q.pow(s.n() as u32);
        let w = pts.par_iter().find_map_first(|&i| {
            let (set, dim) = s.joinable_subspace(&s.point(i));
            (set.len() != want || dim != Some(s.n())).then(|| Witness::points(vec![s.grid().coords(i).to_vec()]))
        });
        let mut notes = BTreeMap::new();
        notes.insert("expected_size".into(), json!(want));
        Ok(SuiteReport::new("joinable", vec![Verdict::new("joinable-dimension", pts.len() as u64, w)], notes))
    }

    fn triangles(&mut self) -> Result<SuiteReport> {
        let budget = self.config.budget;
        let s = self.space()?;
        let t = s.triangles_through(&s.origin());
        let k1 = kernel_dims_all_one(s.eta(), budget)?;
        let census = if t.is_empty() == k1 {
            None
        } else {
            Some(Witness::points(vec![]).with_detail(format!("{} triangles, kernels all 1-dim: {k1}", t.len())))
        };
        let param =
            t.iter().find(|x| !x.parametric).map(|x| Witness::points(vec![x.p.coords(), x.q.coords(), x.r.coords()]));
        let mut notes = BTreeMap::new();
        notes.insert("triangles_through_origin".into(), json!(t.len()));
        notes.insert("kernel_dims_all_one".into(), json!(k1));
        let v = vec![
            Verdict::new("triangle-census", 1, census),
            Verdict::new("triangle-parametrization", t.len() as u64, param),
        ];
        Ok(SuiteReport::new("triangles", v, notes))
    }

    fn recover(&mut self) -> Result<SuiteReport> {
        let n = self.space()?.size();
        let pts = self.points(n);
        let s = self.space()?;
        let mut verdicts = Vec::new();
        let star = s.condition_star();
        verdicts.push(Verdict::new("condition-star", 1, (!star).then(|| Witness::points(vec![]))));
        let n = s.size();
        let pair_w =
            |i: usize, j: usize| Witness::points(vec![s.grid().coords(i).to_vec(), s.grid().coords(j).to_vec()]);
        if star {
            let checked: u64 = pts.iter().map(|&i| s.neighbors(i).count() as u64 - 1).sum();
            let w = pts.par_iter().find_map_first(|&i| {
                s.neighbors(i).iter().filter(|&j| j != i).find_map(|j| {
                    let mut line = s.line_indices(&AffLine::through(&s.point(i), &s.point(j)).expect("distinct"));
                    line.sort_unstable();
                    (s.recover_indices(i, j) != line).then(|| pair_w(i, j))
                })
            });
            verdicts.push(Verdict::new("recover-line", checked, w));
        }
        if s.nu() == 1 {
            let w = pts.par_iter().find_map_first(|&i| {
                (0..n).filter(|&j| j != i).find_map(|j| {
                    let (p, q) = (s.point(i), s.point(j));
                    let got = s.recover_affine_line(&p, &q);
                    let ok = if p.u == q.u {
                        matches!(got, Err(Error::PreconditionUnavailable(_)))
                    } else {
                        let mut want = AffLine::through(&p, &q).expect("distinct").points();
                        want.sort();
                        got.map(|g| g == want).unwrap_or(false)
                    };
                    (!ok).then(|| pair_w(i, j))
                })
            });
            verdicts.push(Verdict::new("recover-affine-line", (pts.len() * (n - 1)) as u64, w));
        }
        Ok(SuiteReport::new("recover", verdicts, BTreeMap::new()))
    }

    fn pencil(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let a = s.pencil_structure(&s.origin())?;
        let b = s.pencil_structure(&s.point(s.size() - 1))?;
        let mut notes = BTreeMap::new();
        notes.insert("points".into(), json!(a.lines.len()));
        notes.insert("lines".into(), json!(a.planes.len()));
        notes.insert("null_system_lines".into(), json!(a.null_system_lines));
        let v = vec![
            Verdict::new("null-system-isomorphism", 1, (!a.isomorphic).then(|| Witness::points(vec![a.at.coords()]))),
            Verdict::new(
                "pencils-isomorphic",
                1,
                (!a.isomorphic_to(&b)).then(|| Witness::points(vec![a.at.coords(), b.at.coords()])),
            ),
        ];
        Ok(SuiteReport::new("pencil", v, notes))
    }

    fn autos(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let gens = translation_generators(s.eta())?;
        let id = Matrix::identity(s.field(), s.nu());
        let bad = gens.iter().position(|g| !preserves_adjacency(s, g) || !verify_semiform_scaling(s, g, &id));
        let orb = orbit(s, &gens, 0);
        let mut notes = BTreeMap::new();
        notes.insert("generators".into(), json!(gens.len()));
        notes.insert("orbit_of_origin".into(), json!(orb.len()));
        let v = vec![
            Verdict::new(
                "generators-preserve-rho",
                gens.len() as u64,
                bad.map(|k| Witness::points(vec![gens[k].translation.coords().to_vec()])),
            ),
            Verdict::new(
                "transitive",
                s.size() as u64,
                (orb.len() != s.size())
                    .then(|| Witness::points(vec![]).with_detail(format!("orbit size {}", orb.len()))),
            ),
        ];
        Ok(SuiteReport::new("autos", v, notes))
    }

    fn oracle(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        if s.nu() != 1 {
            return Err(Error::RequiresScalarForm(s.nu()));
        }
        let group = brute_force_aut_group(s, ORACLE_CAP)?;
        let family = parametric_family(s)?;
        let perms = |maps: Vec<Vec<usize>>| maps.into_iter().collect::<BTreeSet<_>>();
        let a = perms(group.par_iter().map(|m| m.permutation(s.grid())).collect());
        let b = perms(family.par_iter().map(|m| m.1.permutation(s.grid())).collect());
        let q = s.field().modulus() as u128;
        let m = s.n() / 2;
        let predicted = gsp_order(m as u32, q) * q.pow(s.n() as u32) * q;
        let nonscaling = group.iter().position(|g| rho_scale_factor(s, g).is_none());
        let moving = group.iter().position(|g| !fixes_vertical_directions(g, 1));
        let mut notes = BTreeMap::new();
        notes.insert("group_size".into(), json!(group.len()));
        notes.insert("family_size".into(), json!(family.len()));
        notes.insert("predicted".into(), json!(predicted));
        let mw = |k: Option<usize>| {
            k.map(|k| {
                Witness::points(vec![group[k].translation.coords().to_vec()])
                    .with_detail(format!("{:?}", group[k].linear.to_nested()))
            })
        };
        let v = vec![
            Verdict::new(
                "oracle-equals-family",
                (a.len() + b.len()) as u64,
                (a != b)
                    .then(|| Witness::points(vec![]).with_detail(format!("oracle {} vs family {}", a.len(), b.len()))),
            ),
            Verdict::new(
                "oracle-count",
                1,
                (group.len() as u128 != predicted)
                    .then(|| Witness::points(vec![]).with_detail(format!("{} != {predicted}", group.len()))),
            ),
            Verdict::new("scales-rho", group.len() as u64, mw(nonscaling)),
            Verdict::new("fixes-vertical-direction", group.len() as u64, mw(moving)),
        ];
        Ok(SuiteReport::new("oracle", v, notes))
    }

    fn metric(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let mut verdicts = verify_equidistance(s).verdicts;
        let w = translation_noninvariance_witness(s);
        let mut notes = BTreeMap::new();
        verdicts.push(Verdict::new(
            "translation-noninvariance",
            1,
            w.is_none().then(|| Witness::points(vec![]).with_detail("every translation preserves rho")),
        ));
        if let Some(w) = w {
            notes.insert("translation_witness".into(), serde_json::to_value(&w).expect("serializable"));
        }
        Ok(SuiteReport::new("metric", verdicts, notes))
    }

    fn bisectors(&mut self) -> Result<SuiteReport> {
        let s = self.space()?;
        let rep = verify_metric(s)?;
        Ok(SuiteReport::new("bisectors", rep.verdicts, BTreeMap::new()))
    }

    fn hyperbolic(&mut self) -> Result<SuiteReport> {
        let f = self.rho.field();
        let budget = self.config.budget;
        let mut verdicts = Vec::new();
        let mut notes = BTreeMap::new();
        for (name, diag) in [("identity", [1, 1, 1]), ("diag(1,1,-1)", [1, 1, -1])] {
            let xi = SymmetricForm::diagonal(f, &diag)?;
            let rep = reconstruction_report(&xi, None, budget)?;
            verdicts.push(Verdict::new(
                format!("reconstruct/{name}"),
                1,
                (!rep.passed())
                    .then(|| Witness::points(vec![]).with_detail(serde_json::to_string(&rep).expect("serializable"))),
            ));
            let (tried, failed) = round_trip_all(&xi, budget)?;
            verdicts.push(Verdict::new(
                format!("round-trip-every-z/{name}"),
                tried as u64,
                failed.map(|k| Witness::points(vec![]).with_detail(format!("maximal #{k}"))),
            ));
            notes.insert(name.to_string(), serde_json::to_value(&rep).expect("serializable"));
        }
        Ok(SuiteReport::new("hyperbolic", verdicts, notes))
    }
}

/// Deletes each maximal singular subspace in turn and reconstructs it.
fn round_trip_all(xi: &SymmetricForm, budget: Budget) -> Result<(usize, Option<usize>)> {
    let sp = HypPolarSpace::build_double(xi, budget)?;
    let maxis = sp.maximal_singulars();
    let z_size = maxis.first().map_or(0, |m| m.points.len());
    let failed = maxis.par_iter().enumerate().find_map_first(|(k, m)| {
        let r = sp.reduct(&m.subspace).ok()?;
        let c = r.classify_maximals();
        let rec = r.reconstruct(&c);
        (!(c.matches_polar && rec.classes.len() == z_size && rec.isomorphic && rec.lines_match)).then_some(k)
    });
    Ok((maxis.len(), failed))
}

/// `|GSp(2m, q)| = (q - 1) q^(m^2) prod_{i=1..m} (q^(2i) - 1)`.
pub fn gsp_order(m: u32, q: u128) -> u128 {
    (q - 1) * q.pow(m * m) * (1..=m).map(|i| q.pow(2 * i) - 1).product::<u128>()
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub instance: Value,
    pub seed: u64,
    pub sample: Option<usize>,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
}

/// Runs the named suites in order.
pub fn run_suites(rho: &Semiform, instance: Value, names: &[String], config: SuiteConfig) -> Result<RunReport> {
    let mut ctx = Context::new(rho, config);
    let suites = names.iter().map(|n| ctx.run(n)).collect::<Result<Vec<_>>>()?;
    let pass = suites.iter().all(|s| s.pass);
    Ok(RunReport { instance, seed: config.seed, sample: config.sample, pass, suites, skipped: BTreeMap::new() })
}
