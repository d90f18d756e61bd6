//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

use std::process::ExitCode;
use std::time::Instant;

use semipolar::apsg::SemipolarSpace;
use semipolar::forms::{adversarial, check_semiform_axioms, recheck_semiform_witness, verify_identities};
use semipolar::hyperbolic::{reconstruction_report, SymmetricForm};
use semipolar::metric::translation_noninvariance_witness;
use semipolar::suites::{applicable_suites, run_suites, Context, SuiteConfig, SuiteReport};
use semipolar::{AxiomReport, Budget, Field, OperationTable, Semiform};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn field(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn sym(p: u32, m: usize) -> Semiform {
    Semiform::symplectic(field(p), m).unwrap()
}

fn cross() -> Semiform {
    Semiform::cross(field(3)).unwrap()
}

fn space(rho: &Semiform) -> SemipolarSpace {
    SemipolarSpace::new(rho, Budget::default()).unwrap()
}

fn suite(rho: &Semiform, name: &str) -> SuiteReport {
    Context::new(rho, SuiteConfig::default()).run(name).unwrap()
}

fn failures(label: &str, rep: &AxiomReport) -> Option<String> {
    let bad: Vec<&str> = rep.failures().map(|v| v.name.as_str()).collect();
    (!bad.is_empty()).then(|| format!("{label}: {}", bad.join(", ")))
}

fn suite_failures(label: &str, rep: &SuiteReport) -> Option<String> {
    let bad: Vec<&str> = rep.verdicts.iter().filter(|v| !v.pass).map(|v| v.name.as_str()).collect();
    (!rep.pass).then(|| format!("{label}/{}: {}", rep.suite, bad.join(", ")))
}

fn collect(errors: Vec<Option<String>>, ok: String) -> Outcome {
    let errors: Vec<String> = errors.into_iter().flatten().collect();
    if errors.is_empty() {
        Ok(ok)
    } else {
        Err(errors.join("; "))
    }
}

fn c1_axioms() -> Outcome {
    let instances = [
        ("sym m=1 GF(3)", sym(3, 1)),
        ("sym m=2 GF(3)", sym(3, 2)),
        ("sym m=1 GF(5)", sym(5, 1)),
        ("cross GF(3)", cross()),
        ("wedge n=3 GF(3)", Semiform::wedge(field(3), 3).unwrap()),
    ];
    let mut errors = Vec::new();
    for (label, rho) in &instances {
        let table = OperationTable::of_semiform(rho, Budget::default()).map_err(|e| e.to_string())?;
        let rep = check_semiform_axioms(&table);
        errors.push(failures(label, &rep.report));
        match &rep.decomposition {
            Some(d) if d.is_consistent() && d.recombination_mismatches == 0 => {}
            Some(d) => errors.push(Some(format!("{label}: {} recombination mismatches", d.recombination_mismatches))),
            None => errors.push(Some(format!("{label}: no decomposition"))),
        }
    }
    collect(errors, format!("A1-A8 and recombination on {} instances", instances.len()))
}

fn c2_adversarial() -> Outcome {
    let base3 = OperationTable::of_semiform(&sym(3, 1), Budget::default()).map_err(|e| e.to_string())?;
    let base5 = OperationTable::of_semiform(&sym(5, 1), Budget::default()).map_err(|e| e.to_string())?;
    let cases = [
        ("break_antisymmetry", adversarial::break_antisymmetry(&base3), "A1"),
        ("quadratic_coboundary", adversarial::quadratic_coboundary(&base3), "A5"),
        ("quartic_twist", adversarial::quartic_twist(&base5), "A7"),
    ];
    let mut notes = Vec::new();
    for (label, table, axiom) in &cases {
        let rep = check_semiform_axioms(table);
        let v = rep.report.get(axiom).ok_or(format!("{label}: no verdict {axiom}"))?;
        let w = v.witness.as_ref().ok_or(format!("{label}: {axiom} not rejected"))?;
        if !recheck_semiform_witness(table, axiom, w) {
            return Err(format!("{label}: {axiom} witness does not re-evaluate to a violation"));
        }
        notes.push(format!("{label} rejected by {axiom} at {:?}", w.points));
    }
    Ok(notes.join("; "))
}

fn c3_identities() -> Outcome {
    let rep = verify_identities(&sym(5, 1), Budget::default()).map_err(|e| e.to_string())?;
    let checked: Vec<String> = rep.verdicts.iter().map(|v| format!("{}:{}", v.name, v.checked)).collect();
    collect(vec![failures("sym m=1 GF(5)", &rep)], format!("identities on sym m=1 GF(5) [{}]", checked.join(" ")))
}

fn c4_gamma() -> Outcome {
    let mut errors = Vec::new();
    for (label, rho) in [("sym m=2", sym(3, 2)), ("cross", cross())] {
        let s = space(&rho);
        errors.push(failures(label, &s.verify_gamma_space()));
        errors.push(failures(label, &s.verify_parallel_unclosed()));
    }
    collect(errors, "gamma-space and parallel-unclosed on sym m=2 (243) and cross (729)".into())
}

fn c5_triangles() -> Outcome {
    let count = |rho: &Semiform| {
        let s = space(rho);
        (0..s.size()).map(|i| s.triangles_through(&s.point(i)).len()).sum::<usize>()
    };
    let (a, b, c) = (count(&sym(3, 1)), count(&cross()), count(&sym(3, 2)));
    let msg = format!("triangle incidences: sym m=1 {a}, cross {b}, sym m=2 {c}");
    if a == 0 && b == 0 && c > 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c6_recover() -> Outcome {
    let rep = suite(&sym(3, 2), "recover");
    let checked = rep.verdicts.iter().find(|v| v.name == "recover-line").map_or(0, |v| v.checked);
    if checked == 0 {
        return Err("recover-line did not run".into());
    }
    collect(vec![suite_failures("sym m=2", &rep)], format!("{checked} adjacent ordered pairs recovered on sym m=2"))
}

fn c7_joinable() -> Outcome {
    let errors = [("sym m=2", sym(3, 2)), ("cross", cross())]
        .iter()
        .map(|(l, rho)| suite_failures(l, &suite(rho, "joinable")))
        .collect();
    collect(errors, "|J(p)| = 3^n with affine dimension n at every point of sym m=2 and cross".into())
}

fn c8_oracle() -> Outcome {
    let rep = suite(&sym(3, 1), "oracle");
    let n = &rep.notes;
    let msg = format!("oracle {} / family {} / predicted {}", n["group_size"], n["family_size"], n["predicted"]);
    if rep.pass && n["predicted"] == 1296 {
        Ok(msg)
    } else {
        Err(suite_failures("sym m=1", &rep).unwrap_or(msg))
    }
}

fn c9_transitivity() -> Outcome {
    let mut notes = Vec::new();
    let mut errors = Vec::new();
    for (label, rho) in [("sym m=2", sym(3, 2)), ("cross", cross())] {
        let rep = suite(&rho, "autos");
        notes.push(format!("{label} orbit {}", rep.notes["orbit_of_origin"]));
        errors.push(suite_failures(label, &rep));
    }
    collect(errors, notes.join(", "))
}

fn c10_metric() -> Outcome {
    let mut errors = Vec::new();
    let mut criteria = false;
    for (label, rho) in [("sym m=1", sym(3, 1)), ("sym m=2", sym(3, 2))] {
        let rep = suite(&rho, "bisectors");
        criteria |= rep.verdicts.iter().any(|v| v.name == "bisector-criteria");
        errors.push(suite_failures(label, &rep));
    }
    if !criteria {
        errors.push(Some("pair-of-pairs criteria not checked".into()));
    }
    collect(errors, "bisector cardinalities, equations, polar correspondence, pair criteria on m=1".into())
}

fn c11_translation() -> Outcome {
    let s = space(&sym(3, 1));
    let w = translation_noninvariance_witness(&s).ok_or("no witness found")?;
    if w.before == w.after {
        return Err("witness does not change rho".into());
    }
    Ok(format!(
        "rho({:?}, {:?}) = {:?} but after translating by {:?} it is {:?}",
        w.p1.coords(),
        w.p2.coords(),
        w.before.coords(),
        w.t.coords(),
        w.after.coords()
    ))
}

fn c12_hyperbolic() -> Outcome {
    let mut notes = Vec::new();
    let mut errors = Vec::new();
    for (label, diag) in [("I", [1, 1, 1]), ("diag(1,1,-1)", [1, 1, -1])] {
        let xi = SymmetricForm::diagonal(field(3), &diag).map_err(|e| e.to_string())?;
        let rep = reconstruction_report(&xi, None, Budget::default()).map_err(|e| e.to_string())?;
        notes.push(format!("{label}: {} classes, isomorphic {}", rep.classes, rep.isomorphic));
        if !rep.passed() || rep.classes != 13 {
            errors.push(Some(format!("{label}: {}", serde_json::to_string(&rep).unwrap())));
        }
    }
    collect(errors, notes.join(", "))
}

fn c13_determinism() -> Outcome {
    let rho = sym(3, 1);
    let (names, _) = applicable_suites(&rho);
    let run = |cfg: SuiteConfig| {
        let rep = run_suites(&rho, serde_json::json!({ "kind": "symplectic" }), &names, cfg).unwrap();
        serde_json::to_string_pretty(&rep).unwrap()
    };
    let exhaustive = SuiteConfig::default();
    let sampled = SuiteConfig { sample: Some(9), seed: 42, ..SuiteConfig::default() };
    let (a, b) = (run(exhaustive), run(exhaustive));
    let (c, d) = (run(sampled), run(sampled));
    if a == b && c == d {
        Ok(format!("{} suites, {} bytes, byte-identical on rerun (exhaustive and seeded)", names.len(), a.len()))
    } else {
        Err("reports differ between runs".into())
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("semiform axioms", c1_axioms),
        ("adversarial tables rejected", c2_adversarial),
        ("identities A-F", c3_identities),
        ("gamma space", c4_gamma),
        ("triangle census", c5_triangles),
        ("line recovery", c6_recover),
        ("joinable-set dimension", c7_joinable),
        ("automorphism completeness", c8_oracle),
        ("transitivity", c9_transitivity),
        ("metric suite", c10_metric),
        ("translation non-invariance", c11_translation),
        ("hyperbolic reconstruction", c12_hyperbolic),
        ("determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
