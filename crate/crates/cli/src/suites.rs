use anyhow::{anyhow, bail, Result};
use pnkit_core::spaces::{
    better_than, check_characterization_alpha, check_characterization_phi, check_pn_axioms, check_serstnev,
    check_tau_m_upgrade, fnorm_to_pn, holder_menger_check, holder_scalar_check, HolderOptions, SerstnevKind,
};
use pnkit_core::topology::{check_bounded_iff_dbounded, fnormed_dbounded_props};
use pnkit_core::{CheckParams, ProbNorm};
use serde::Serialize;
use serde_json::{json, Value};

use crate::schema::SpecFile;
use crate::Suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 3,
        }
    }

    fn of(passed: bool) -> Outcome {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub outcome: Outcome,
    pub result: Value,
}

#[derive(Debug, Serialize)]
pub struct CheckOutput {
    pub outcome: Outcome,
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteResult>,
}

fn name(s: Suite) -> &'static str {
    match s {
        Suite::Axioms => "axioms",
        Suite::Serstnev => "serstnev",
        Suite::Better => "better",
        Suite::Holder => "holder",
        Suite::Thm83 => "thm83",
        Suite::Fnorm => "fnorm",
    }
}

/// Runs the suites concurrently and reports them in the order given.
pub fn run_all(spec: &SpecFile, suites: &[Suite], params: &CheckParams) -> Result<CheckOutput> {
    let mut seen = Vec::new();
    for s in suites {
        if !seen.contains(s) {
            seen.push(*s);
        }
    }
    let results: Vec<Result<SuiteResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seen.iter().map(|s| scope.spawn(move || run_one(spec, *s, params))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(anyhow!("suite panicked"))))
            .collect()
    });
    let suites = results.into_iter().collect::<Result<Vec<_>>>()?;
    let outcome = suites.iter().map(|r| r.outcome).max().unwrap_or(Outcome::Pass);
    Ok(CheckOutput { outcome, seed: params.seed, samples: params.samples, suites })
}

/// Checks that presuppose the scaling law; a violated hypothesis counts as a failure.
fn follow_up(out: &mut Value, key: &str, r: pnkit_core::Result<pnkit_core::Report>) -> bool {
    match r {
        Ok(r) => {
            let ok = r.passed();
            out[key] = json!(r);
            ok
        }
        Err(e) => {
            out[key] = json!({ "error": e.to_string() });
            false
        }
    }
}

fn run_one(spec: &SpecFile, suite: Suite, p: &CheckParams) -> Result<SuiteResult> {
    let s = spec.space.build()?;
    let (outcome, result) = match suite {
        Suite::Axioms => {
            let r = check_pn_axioms(&s, p);
            (Outcome::of(r.passed()), json!({ "space": format!("{:?}", s.norm), "axioms": r }))
        }
        Suite::Serstnev => {
            let kind = match &spec.serstnev {
                Some(k) => k.build()?,
                None => match s.norm.serstnev_phi() {
                    Some(phi) => SerstnevKind::Phi(phi),
                    None => bail!("the serstnev suite needs a `serstnev` entry for this space"),
                },
            };
            let main = check_serstnev(&s, &kind, p);
            let mut passed = main.passed();
            let mut out = json!({ "kind": format!("{kind:?}"), "serstnev": main });
            match &kind {
                SerstnevKind::Alpha(a) => {
                    passed &= follow_up(&mut out, "characterization", check_characterization_alpha(&s, *a, p));
                    passed &= follow_up(&mut out, "tau_m_upgrade", check_tau_m_upgrade(&s, *a, p));
                }
                SerstnevKind::Phi(phi) if phi.in_minf() => {
                    passed &= follow_up(&mut out, "characterization", check_characterization_phi(&s, phi, p));
                }
                _ => {}
            }
            (Outcome::of(passed), out)
        }
        Suite::Better => {
            let other = spec.compare.as_ref().ok_or_else(|| anyhow!("the better suite needs a `compare` space"))?.build()?;
            let b = better_than(&s, &other, p)?;
            (Outcome::of(b.is_better()), json!({ "is_better": b.is_better(), "comparison": b }))
        }
        Suite::Holder => {
            let (base, alpha) = spec
                .space
                .alpha_simple_parts()
                .filter(|(_, a)| *a > 1.0)
                .ok_or_else(|| anyhow!("the holder suite needs an alpha_simple space with alpha > 1"))?;
            let opts = HolderOptions { grid_points: spec.holder.grid_points, pairs: spec.holder.pairs, axioms: spec.holder.axioms };
            let scalar = holder_scalar_check(p.samples, p.seed);
            let menger = holder_menger_check(&s.space, base.build()?, alpha, p, &opts)?;
            (Outcome::of(scalar.passed && menger.passed()), json!({ "scalar": scalar, "menger": menger }))
        }
        Suite::Thm83 => {
            let phi = match &spec.phi {
                Some(phi) => phi.build()?,
                None => s.norm.serstnev_phi().ok_or_else(|| anyhow!("the thm83 suite needs a `phi` entry"))?,
            };
            if spec.sets.is_empty() {
                bail!("the thm83 suite needs at least one entry in `sets`");
            }
            let mut outcome = Outcome::Pass;
            let mut items = Vec::new();
            for set in &spec.sets {
                let r = check_bounded_iff_dbounded(&s, &phi, set, spec.bounds.max_n, spec.bounds.max_k, p)?;
                let o = if !r.report.passed() {
                    Outcome::Fail
                } else if r.inconclusive() {
                    Outcome::Inconclusive
                } else {
                    Outcome::Pass
                };
                outcome = outcome.max(o);
                items.push(json!({ "set": set, "outcome": o, "result": r }));
            }
            (outcome, json!({ "phi": format!("{phi:?}"), "sets": items }))
        }
        Suite::Fnorm => {
            let g = match (&spec.fnorm, &s.norm) {
                (Some(g), _) => g.build()?,
                (None, ProbNorm::EpsOfG(g)) => g.clone(),
                _ => bail!("the fnorm suite needs an `fnorm` entry or an eps_of_g space"),
            };
            let c = fnorm_to_pn(&s.space, &g, p);
            let mut passed = c.fnorm_axioms.passed() && c.pn_axioms.passed() && c.claims.passed();
            let ks = spec.ks.clone().unwrap_or_else(|| vec![2.0, 3.0, 5.0]);
            let mut sets = Vec::new();
            for set in &spec.sets {
                let r = fnormed_dbounded_props(&s.space, &g, set, &ks)?;
                passed &= r.passed();
                sets.push(json!({ "set": set, "report": r }));
            }
            (Outcome::of(passed), json!({ "fnorm": format!("{g:?}"), "correspondence": c, "sets": sets }))
        }
    };
    Ok(SuiteResult { suite: name(suite), outcome, result })
}
