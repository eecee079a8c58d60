//! Routing of equations to the per-family procedures, and the command layer
//! behind the binary.

use serde_json::{json, Value};

use crate::cayley::{decide_cayley, saturation_length, solve_brute, solve_cayley};
use crate::dihedral::{decide_dn, reduce_partition, solve_dn};
use crate::equation::{verify, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::highdim::{decide_heisenberg, decide_ut4, solve_heisenberg, solve_ut4};
use crate::json;
use crate::mat2::{classify, decide_gl2, decide_tl2, gl2_method, solve_gl2, solve_tl2};
use crate::numtheory::Rng;
use crate::perm::characters::decide_by_characters;
use crate::perm::{reduce_3partition, reduce_3partition_an};
use crate::semidirect::{decide_signvector, reduce_xcover, solve_signvector, SIGN_CAP};

/// Outcome of `decide` or `solve`. `solution` is verified whenever present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub solvable: bool,
    pub method: &'static str,
    pub solution: Option<Solution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Brute,
    Cayley,
    Characters,
    Dihedral,
    Gl2,
    Tl2,
    Heisenberg,
    Ut4,
    SignVector,
}

fn sign_vector_shape(eq: &SphericalEquation) -> bool {
    let cs = eq.constants().iter().filter_map(|c| c.as_semidirect()).collect::<Vec<_>>();
    cs.iter().all(|c| c.sign() == 1) && cs.iter().filter(|c| !c.is_identity()).count() <= SIGN_CAP
}

fn route(eq: &SphericalEquation, force_oracle: bool) -> Route {
    if force_oracle {
        return Route::Brute;
    }
    let g = eq.group();
    match g {
        GroupSpec::Cayley(_) | GroupSpec::Sl2 { .. } | GroupSpec::Et2 { .. } => Route::Cayley,
        GroupSpec::Symmetric { .. } | GroupSpec::Alternating { .. } => {
            if g.is_enumerable() {
                Route::Cayley
            } else {
                Route::Characters
            }
        }
        GroupSpec::Dihedral { .. } => Route::Dihedral,
        GroupSpec::Gl2 { .. } => Route::Gl2,
        GroupSpec::Tl2 { p } if *p == 2 => Route::Cayley,
        GroupSpec::Tl2 { .. } => Route::Tl2,
        GroupSpec::Heisenberg { .. } => Route::Heisenberg,
        GroupSpec::Ut4 { .. } => Route::Ut4,
        GroupSpec::Semidirect { .. } => {
            if sign_vector_shape(eq) {
                Route::SignVector
            } else {
                Route::Cayley
            }
        }
    }
}

fn method_name(eq: &SphericalEquation, r: Route) -> Result<&'static str> {
    Ok(match r {
        Route::Brute => "brute",
        Route::Cayley => "cayley-dp",
        Route::Characters => "sn-character-count",
        Route::Dihedral => "dihedral-criteria",
        Route::Gl2 => gl2_method(eq)?,
        Route::Tl2 => "tl2-criteria",
        Route::Heisenberg => "heisenberg-closed-form",
        Route::Ut4 => "ut4-case-ladder",
        Route::SignVector => "semidirect-signvector",
    })
}

pub fn decide(eq: &SphericalEquation, force_oracle: bool) -> Result<Verdict> {
    let r = route(eq, force_oracle);
    let method = method_name(eq, r)?;
    let solvable = match r {
        Route::Brute => solve_brute(eq)?.is_some(),
        Route::Cayley => decide_cayley(eq)?,
        Route::Characters => decide_by_characters(eq).map_err(|e| match e {
            Error::UnsupportedShape(msg) => Error::TooLarge(format!("{msg}; group too large to enumerate")),
            e => e,
        })?,
        Route::Dihedral => decide_dn(eq)?,
        Route::Gl2 => decide_gl2(eq)?,
        Route::Tl2 => decide_tl2(eq)?,
        Route::Heisenberg => decide_heisenberg(eq)?,
        Route::Ut4 => decide_ut4(eq)?,
        Route::SignVector => decide_signvector(eq)?,
    };
    Ok(Verdict { solvable, method, solution: None })
}

pub fn solve(eq: &SphericalEquation, rng: &mut Rng, force_oracle: bool) -> Result<Verdict> {
    let r = route(eq, force_oracle);
    let method = method_name(eq, r)?;
    let solution = match r {
        Route::Brute => solve_brute(eq)?,
        Route::Cayley => solve_cayley(eq)?,
        Route::Characters => {
            return Err(Error::TooLarge("no constructive solver for symmetric groups beyond enumeration".into()))
        }
        Route::Dihedral => solve_dn(eq)?,
        Route::Gl2 => solve_gl2(eq, rng)?,
        Route::Tl2 => solve_tl2(eq)?,
        Route::Heisenberg => solve_heisenberg(eq)?,
        Route::Ut4 => solve_ut4(eq)?,
        Route::SignVector => solve_signvector(eq)?,
    };
    if let Some(sol) = &solution {
        if !verify(eq, sol)? {
            return Err(Error::Internal(format!("{method} produced a solution that does not verify")));
        }
    }
    Ok(Verdict { solvable: solution.is_some(), method, solution })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Decide,
    Solve,
    Verify,
    Reduce,
    Oracle,
    Saturation,
    Classify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    ThreePartition,
    Partition,
    XCover,
}

/// One invocation: the verb, its JSON inputs (already read) and options.
#[derive(Debug, Clone)]
pub struct Command {
    pub verb: Verb,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub force_oracle: bool,
    pub from: Option<Reduction>,
    pub alternating: bool,
    pub m: Option<u64>,
}

impl Command {
    pub fn new(verb: Verb, inputs: Vec<String>) -> Self {
        Command { verb, inputs, seed: 0, force_oracle: false, from: None, alternating: false, m: None }
    }
}

fn verdict_json(v: &Verdict, with_solution: bool) -> Value {
    let mut out = json!({"solvable": v.solvable, "method": v.method});
    if with_solution {
        if let Some(sol) = &v.solution {
            out["solution"] = json::solution_to_json(sol);
            out["verified"] = json!(true);
        }
    }
    out
}

fn input(cmd: &Command, i: usize) -> Result<Value> {
    let text = cmd.inputs.get(i).ok_or_else(|| Error::Json(format!("missing input #{}", i + 1)))?;
    json::parse(text)
}

pub fn dispatch(cmd: &Command) -> Result<Value> {
    match cmd.verb {
        Verb::Decide => {
            let eq = json::equation_from_json(&input(cmd, 0)?)?;
            Ok(verdict_json(&decide(&eq, cmd.force_oracle)?, false))
        }
        Verb::Solve => {
            let eq = json::equation_from_json(&input(cmd, 0)?)?;
            let mut rng = Rng::new(cmd.seed);
            Ok(verdict_json(&solve(&eq, &mut rng, cmd.force_oracle)?, true))
        }
        Verb::Oracle => {
            let eq = json::equation_from_json(&input(cmd, 0)?)?;
            let mut rng = Rng::new(cmd.seed);
            Ok(verdict_json(&solve(&eq, &mut rng, true)?, true))
        }
        Verb::Verify => {
            let eq = json::equation_from_json(&input(cmd, 0)?)?;
            let raw = input(cmd, 1)?;
            // a full `solve` report is accepted as well
            let sol_value = raw.get("solution").cloned().unwrap_or(raw);
            let sol = json::solution_from_json(eq.group(), &sol_value)?;
            Ok(json!({"verified": verify(&eq, &sol)?}))
        }
        Verb::Reduce => {
            let v = input(cmd, 0)?;
            let eq = match cmd.from.ok_or_else(|| Error::Json("reduce needs --from".into()))? {
                Reduction::ThreePartition => {
                    let inst = json::three_partition_from_json(&v)?;
                    if cmd.alternating {
                        reduce_3partition_an(&inst)?
                    } else {
                        reduce_3partition(&inst)?
                    }
                }
                Reduction::Partition => reduce_partition(&json::partition_from_json(&v)?)?,
                Reduction::XCover => {
                    let (inst, m) = json::xcover_from_json(&v)?;
                    reduce_xcover(&inst, cmd.m.or(m).unwrap_or(3))?
                }
            };
            Ok(json::equation_to_json(&eq))
        }
        Verb::Saturation => {
            let v = input(cmd, 0)?;
            let g = match v.get("group") {
                Some(g) => json::group_from_json(g)?,
                None => json::group_from_json(&v)?,
            };
            Ok(match saturation_length(&g)? {
                Some(l) => json!({"saturation_length": l}),
                None => json!({"saturation_length": "none"}),
            })
        }
        Verb::Classify => {
            let m = json::matrix_from_json(&input(cmd, 0)?, None)?;
            Ok(json::classification_to_json(&m, &classify(&m)?))
        }
    }
}

/// 2 for input errors, 3 for capacity errors, 4 for retry exhaustion and
/// 1 for internal failures.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge(_) => 3,
        Error::RetryExhausted(_) => 4,
        Error::Internal(_) => 1,
        _ => 2,
    }
}
