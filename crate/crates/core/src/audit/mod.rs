//! Machine-checked replay of the case analysis excluding k-reptile tetrahedra for
//! non-cube k. Each step carries an exact certificate that [`check`] re-verifies from
//! its JSON form alone.

pub mod check;
pub mod encode;
pub mod steps;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::integer_cube_root;
use crate::error::{Error, Result};
use crate::hill::{subdivide, verify_reptile, HillSpec};

pub use steps::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "inapplicable" => Ok(Verdict::Inapplicable),
            other => Err(Error::Parse(format!("unknown verdict {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditStep {
    pub id: String,
    pub claim: String,
    pub inputs: Value,
    pub certificate: Value,
    pub verdict: Verdict,
}

impl AuditStep {
    pub fn new(id: &str, claim: impl Into<String>, inputs: Value, certificate: Value, verdict: Verdict) -> Self {
        AuditStep { id: id.to_string(), claim: claim.into(), inputs, certificate, verdict }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "claim": self.claim,
            "inputs": self.inputs,
            "certificate": self.certificate,
            "verdict": self.verdict.as_str(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let text = |key: &str| {
            v.get(key).and_then(Value::as_str).map(str::to_string).ok_or_else(|| Error::Parse(format!("step needs a {key} string")))
        };
        Ok(AuditStep {
            id: text("id")?,
            claim: text("claim")?,
            inputs: v.get("inputs").cloned().unwrap_or(Value::Null),
            certificate: v.get("certificate").cloned().unwrap_or(Value::Null),
            verdict: Verdict::parse(&text("verdict")?)?,
        })
    }
}

pub const EXCLUDED: &str = "excluded";
pub const NOT_EXCLUDED: &str = "not excluded";
pub const CUBE: &str = "cube: theorem inapplicable";
pub const HILL_EXISTS: &str = "Hill construction exists";
pub const TWO_LENGTH_BOUND: u32 = 10;

/// Ids of the steps shared by every non-cube `k`, in report order.
pub const SHARED_STEPS: [&str; 8] = [
    "tripod-determinant",
    "multiples",
    "path-complement",
    "beta-constraints",
    "path-determinant",
    "bound-chain",
    "exclude-pi-over-5",
    "final-cases",
];

/// Every step id, `k`-dependent ones first.
pub fn step_ids() -> Vec<&'static str> {
    let mut ids = vec!["rho-degree", "two-lengths"];
    ids.extend(SHARED_STEPS);
    ids
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub k: u64,
    pub steps: Vec<AuditStep>,
    /// Whether the independent checker accepted every certificate.
    pub rechecked: bool,
    pub conclusion: String,
    pub annotation: Option<Value>,
}

impl AuditReport {
    pub fn excluded(&self) -> bool {
        self.conclusion == EXCLUDED
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "conclusion": self.conclusion,
            "rechecked": self.rechecked,
            "steps": self.steps.iter().map(AuditStep::to_json).collect::<Vec<_>>(),
            "annotation": self.annotation,
        })
    }
}

/// A single step by id; `k` is used by the `k`-dependent steps only.
pub fn run_step(id: &str, k: u64) -> Result<AuditStep> {
    match id {
        "rho-degree" => rho_degree_step(k),
        "two-lengths" => two_length_step(k, TWO_LENGTH_BOUND),
        "tripod-determinant" => tripod_identity_step(),
        "multiples" => multiples_case_step(),
        "path-complement" => path_complement_step(),
        "beta-constraints" => beta_constraints_step(),
        "path-determinant" => path_det_factorization_step(),
        "bound-chain" => bound_chain_step(),
        "exclude-pi-over-5" => exclude_pi_over_5_step(),
        "final-cases" => final_cases_step(),
        other => Err(Error::Invalid(format!("unknown audit step {other}; expected one of {}", step_ids().join(", ")))),
    }
}

/// Annotation for `k = m^3`: the Hill tetrahedron split into `m^3` similar copies, verified.
pub fn hill_annotation(k: u64) -> Result<Value> {
    let m = integer_cube_root(k).ok_or_else(|| Error::Invalid(format!("{k} is not a cube")))?;
    let spec = HillSpec::orthonormal(3)?;
    let report = verify_reptile(&subdivide(&spec, m as u32)?)?;
    Ok(json!({
        "note": HILL_EXISTS,
        "m": m,
        "verified": report.all_ok(),
        "reptile_report": report.to_json(),
    }))
}

fn assemble(k: u64, steps: Vec<AuditStep>) -> AuditReport {
    let rechecked = steps.iter().all(|s| check::check_step(&s.to_json()).unwrap_or(false));
    let passed = steps.iter().all(|s| s.verdict == Verdict::Pass);
    let conclusion = if passed && rechecked { EXCLUDED } else { NOT_EXCLUDED };
    AuditReport { k, steps, rechecked, conclusion: conclusion.into(), annotation: None }
}

/// Report for a single `k >= 2`.
pub fn audit_k(k: u64, shared: &[AuditStep]) -> Result<AuditReport> {
    if integer_cube_root(k).is_some() {
        let step = rho_degree_step(k)?;
        let rechecked = check::check_step(&step.to_json())?;
        return Ok(AuditReport { k, steps: vec![step], rechecked, conclusion: CUBE.into(), annotation: Some(hill_annotation(k)?) });
    }
    let mut steps = vec![rho_degree_step(k)?, two_length_step(k, TWO_LENGTH_BOUND)?];
    steps.extend(shared.iter().cloned());
    Ok(assemble(k, steps))
}

/// The shared steps, computed concurrently and returned in report order.
pub fn shared_steps() -> Result<Vec<AuditStep>> {
    SHARED_STEPS.par_iter().map(|id| run_step(id, 2)).collect()
}

/// One report per `k` in `2..=k_max`: non-cube `k` are excluded when every step passes
/// and re-checks, cube `k` carry the verified Hill subdivision instead.
pub fn run_full_audit(k_max: u64) -> Result<Vec<AuditReport>> {
    if k_max < 2 {
        return Err(Error::Invalid(format!("k range 2..={k_max} is empty")));
    }
    let shared = shared_steps()?;
    (2..=k_max).into_par_iter().map(|k| audit_k(k, &shared)).collect()
}

pub fn reports_to_json(reports: &[AuditReport]) -> Value {
    json!({
        "assumptions": [RATIONAL_ANGLE_ASSUMPTION],
        "reports": reports.iter().map(AuditReport::to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_degree_cases() {
        assert_eq!(rho_degree_step(2).unwrap().verdict, Verdict::Pass);
        assert_eq!(rho_degree_step(7).unwrap().verdict, Verdict::Pass);
        assert_eq!(rho_degree_step(8).unwrap().verdict, Verdict::Inapplicable);
        assert!(run_full_audit(1).is_err());
        assert!(run_step("nope", 2).is_err());
    }

    #[test]
    fn two_lengths_scan() {
        let s = two_length_step(2, 10).unwrap();
        assert_eq!(s.verdict, Verdict::Pass);
        assert_eq!(s.certificate["systems"], json!(14640));
        assert_eq!(two_length_step(5, 6).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn shared_steps_pass_and_recheck() {
        for s in shared_steps().unwrap() {
            assert_eq!(s.verdict, Verdict::Pass, "{}: {}", s.id, s.certificate);
            assert!(check::check_step(&s.to_json()).unwrap(), "checker rejects {}", s.id);
        }
    }

    fn corrupted(step: &AuditStep, edit: impl FnOnce(&mut Value)) -> bool {
        let mut j = step.to_json();
        edit(&mut j["certificate"]);
        check::check_step(&j).unwrap_or(false)
    }

    #[test]
    fn checker_rejects_corruption() {
        let tripod = tripod_identity_step().unwrap();
        assert!(!corrupted(&tripod, |c| {
            c["matrix"][0][1] = json!("-t");
            c["matrix"][1][0] = json!("-t");
        }));
        let complement = path_complement_step().unwrap();
        assert!(!corrupted(&complement, |c| {
            c["matrix"][1][1] = json!("1");
        }));
        assert!(!corrupted(&complement, |c| c["coefficients"] = json!([1, 0, 0, 1])));
        let multiples = multiples_case_step().unwrap();
        assert!(!corrupted(&multiples, |c| c["bookkeeping"][1]["feasible_m"] = json!([2, 3])));
        let path = path_det_factorization_step().unwrap();
        assert!(!corrupted(&path, |c| c["spot_checks"][3]["det"] = json!("1/7")));
        let finals = final_cases_step().unwrap();
        assert!(!corrupted(&finals, |c| c["cases"][1]["roots"][0]["expected"] = json!("-0.420")));
        let two = two_length_step(2, 4).unwrap();
        assert!(check::check_step(&two.to_json()).unwrap());
        assert!(!corrupted(&two, |c| c["rho_enclosure"] = json!(["1/2", "3/4"])));
    }

    #[test]
    fn final_cases_values() {
        let s = final_cases_step().unwrap();
        assert_eq!(s.verdict, Verdict::Pass);
        let approx: Vec<f64> = s.certificate["cases"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|c| c["roots"].as_array().unwrap().iter().map(|r| r["approx"].as_f64().unwrap()).collect::<Vec<_>>())
            .collect();
        let expect = [-0.618, 0.618, -0.427, 0.151, -0.348, -0.131];
        for (a, e) in approx.iter().zip(expect) {
            assert!((a - e).abs() < 1e-3, "{a} vs {e}");
        }
        let golden_conj = crate::algebra::parse_real("1 - phi").unwrap();
        let first: crate::algebra::AlgebraicReal = serde_json::from_value(s.certificate["cases"][0]["roots"][0]["value"].clone()).unwrap();
        assert_eq!(first, golden_conj);
    }

    #[test]
    fn half_cosine_does_not_force_positive_lambda1() {
        use crate::algebra::rat;
        use crate::fiedler::symbolic::{lambda1, reduce, var};
        // at t = 1/2 and s = -1/(2g) the eigenvalue is negative
        let s = var("g").sub(&crate::fiedler::symbolic::integer(1)).scale(&rat(-1, 2));
        let v = reduce(&lambda1().substitute_rational("t", &rat(1, 2)).unwrap().substitute("s", &s).unwrap()).unwrap();
        let phi = crate::algebra::parse_real("phi").unwrap();
        let value = v.eval(&[]).err().map(|_| {
            let c = v.coefficients_in("g").unwrap();
            let c0 = c[0].eval(&[]).unwrap();
            let c1 = c.get(1).map(|p| p.eval(&[]).unwrap()).unwrap_or_default();
            phi.mul_rational(&c1).add_rational(&c0)
        });
        assert!(value.unwrap().sign() == std::cmp::Ordering::Less);
    }

    #[test]
    fn full_audit_to_eight() {
        let reports = run_full_audit(8).unwrap();
        assert_eq!(reports.len(), 7);
        for r in &reports[..6] {
            assert!(r.excluded() && r.rechecked, "k = {}", r.k);
            assert!(check::check_report(&r.to_json()).unwrap());
        }
        let eight = &reports[6];
        assert_eq!(eight.conclusion, CUBE);
        assert_eq!(eight.annotation.as_ref().unwrap()["verified"], json!(true));
        let again = run_full_audit(8).unwrap();
        assert_eq!(reports_to_json(&reports).to_string(), reports_to_json(&again).to_string());
    }
}
