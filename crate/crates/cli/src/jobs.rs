//! One function per subcommand. Each returns the rendered output and whether
//! every check passed.

use bineuler_core::betti::{
    betti_enum_checks, betti_poly, charlier_generating_check, egf_betti_check, egf_t_check,
    t2_finding, t_comparison, t_poly, t_recurrence_polys, TRoute,
};
use bineuler_core::bijection::{cardinality_ledgers, verify_all_lemma_maps, verify_omega};
use bineuler_core::eulerian::{
    binomial_eulerian, chain_numbers, egf_a2_check, egf_pde_checks, egf_tilde_a_checks,
    eulerian_poly, route_agreement, symmetric_identity_report, symmetry_reports, Route,
};
use bineuler_core::multistat::{
    a_xyq_enum_all, block_cycle_check, egf_multistat_checks, recurrence_check,
    specialization_checks, tilde_a_xyqp_enum, tilde_a_xyqp_rec,
};
use bineuler_core::realroot::{real_root_verdicts, Family};
use bineuler_core::report::IdentityCheck;
use bineuler_core::table::{TableFamily, Triangle};
use bineuler_core::{EnumLimit, Error, Result};
use serde_json::{json, Value};

use crate::{
    BeRoute, Command, ConjectureCmd, EgfArg, FamilyArg, Format, MultistatRoute, PolyCmd, TArg,
    TableArg, VerifyCmd,
};

pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn json(schema: &str, mut body: Value, passed: bool) -> Self {
        body["schema"] = Value::String(format!("bineuler.{schema}.v1"));
        Self {
            text: format!("{body}\n"),
            passed,
        }
    }

    /// A case-dispatch failure of the recursive bijection is a failed
    /// check, not a usage error.
    pub fn dispatch_failure(err: &Error) -> Self {
        Self::json(
            "verify.omega",
            json!({ "passed": false, "counterexamples": [err.to_string()] }),
            false,
        )
    }
}

pub fn run(cmd: &Command, limit: EnumLimit) -> Result<Outcome> {
    match cmd {
        Command::Poly(p) => poly(p, limit),
        Command::Verify(v) => verify(v, limit),
        Command::Conjecture(ConjectureCmd::RealRoots { family, max_n }) => {
            real_roots(*family, *max_n)
        }
        Command::Table {
            family,
            max_n,
            format,
        } => Ok(table(*family, *max_n, *format)),
    }
}

fn poly(cmd: &PolyCmd, limit: EnumLimit) -> Result<Outcome> {
    Ok(match *cmd {
        PolyCmd::Eulerian { n } => Outcome::json(
            "poly.eulerian",
            json!({ "n": n, "coeffs": eulerian_poly(n) }),
            true,
        ),
        PolyCmd::BinomialEulerian { n, route } => {
            let route = match route {
                BeRoute::Def => Route::Def,
                BeRoute::Table => Route::Table,
                BeRoute::ThreeTerm => Route::ThreeTerm,
                BeRoute::NthOrder => Route::NthOrder,
                BeRoute::Enum => Route::Enum,
            };
            Outcome::json(
                "poly.binomial-eulerian",
                json!({ "n": n, "route": route.name(), "coeffs": binomial_eulerian(n, route, limit)? }),
                true,
            )
        }
        PolyCmd::Multistat { n, route } => {
            let (name, m) = match route {
                MultistatRoute::Enum => ("enum", tilde_a_xyqp_enum(n, limit)?),
                MultistatRoute::Rec => ("rec", tilde_a_xyqp_rec(n, &a_xyq_enum_all(n, limit)?)?),
            };
            Outcome::json(
                "poly.multistat",
                json!({
                    "n": n,
                    "route": name,
                    "variables": ["x", "y", "q", "p"],
                    "terms": m.poly,
                }),
                true,
            )
        }
        PolyCmd::Betti { n } => Outcome::json(
            "poly.betti",
            json!({ "n": n, "coeffs": betti_poly(n) }),
            true,
        ),
        PolyCmd::T { n, route } => {
            let route = match route {
                TArg::Enum => TRoute::Enum,
                TArg::Rec => TRoute::Recurrence,
                TArg::Charlier => TRoute::Charlier,
                TArg::Egf => TRoute::Egf,
            };
            Outcome::json(
                "poly.t",
                json!({ "n": n, "route": route.name(), "coeffs_q": t_poly(n, route, limit)? }),
                true,
            )
        }
    })
}

/// Report for a list of identity checks; mismatches are the counterexamples.
fn checks(schema: &str, checks: Vec<IdentityCheck>) -> Outcome {
    let passed = checks.iter().all(|c| c.passed);
    Outcome::json(
        schema,
        json!({ "passed": passed, "checks": checks }),
        passed,
    )
}

fn verify(cmd: &VerifyCmd, limit: EnumLimit) -> Result<Outcome> {
    Ok(match *cmd {
        VerifyCmd::Bijections { max_n } => {
            let reports = verify_all_lemma_maps(max_n, limit)?;
            let ledgers = cardinality_ledgers(max_n, limit)?;
            let failing_maps: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
            let failing_ledgers: Vec<_> = ledgers
                .iter()
                .filter(|l| !(l.descent_balances && l.ascent_balances))
                .collect();
            let passed = failing_maps.is_empty() && failing_ledgers.is_empty();
            Outcome::json(
                "verify.bijections",
                json!({
                    "max_n": max_n,
                    "passed": passed,
                    "reports": reports,
                    "ledgers": ledgers,
                    "counterexamples": { "maps": failing_maps, "ledgers": failing_ledgers },
                }),
                passed,
            )
        }
        VerifyCmd::Omega { max_n } => {
            let reports = verify_omega(max_n, limit)?;
            let passed = reports.iter().all(|r| r.passed);
            let counterexamples: Vec<_> = reports
                .iter()
                .flat_map(|r| r.counterexamples.iter().cloned())
                .collect();
            Outcome::json(
                "verify.omega",
                json!({
                    "max_n": max_n,
                    "passed": passed,
                    "reports": reports,
                    "counterexamples": counterexamples,
                }),
                passed,
            )
        }
        VerifyCmd::Identity2 { max_ab } => {
            checks("verify.identity2", vec![symmetric_identity_report(max_ab)])
        }
        VerifyCmd::Egf { which, order } => {
            let list = match which {
                EgfArg::TildeA => egf_tilde_a_checks(order),
                EgfArg::Pde => egf_pde_checks(order),
                EgfArg::A2 => vec![egf_a2_check(order)],
                EgfArg::Multistat => egf_multistat_checks(order, limit)?,
                EgfArg::Betti => vec![egf_betti_check(order)],
                EgfArg::Tq => vec![
                    egf_t_check(&t_recurrence_polys(order)),
                    charlier_generating_check(1, order)?,
                    charlier_generating_check(2, order)?,
                ],
            };
            checks("verify.egf", list)
        }
        VerifyCmd::Specializations { max_n } => checks(
            "verify.specializations",
            specialization_checks(max_n, limit)?,
        ),
        VerifyCmd::Prop31 { max_n } => {
            checks("verify.prop31", vec![block_cycle_check(max_n, limit)?])
        }
        VerifyCmd::BettiEnum { max_n } => {
            checks("verify.betti-enum", betti_enum_checks(max_n, limit)?)
        }
        VerifyCmd::MultistatRec { max_n } => checks(
            "verify.multistat-rec",
            vec![recurrence_check(max_n, limit)?],
        ),
        VerifyCmd::Routes { max_n, with_enum } => {
            let mut list = vec![route_agreement(max_n, &Route::CLOSED, limit)?];
            if with_enum {
                list.push(route_agreement(max_n, &[Route::Enum], limit)?);
            }
            checks("verify.routes", list)
        }
        VerifyCmd::Symmetry { max_n } => {
            let reports = symmetry_reports(max_n);
            let failing: Vec<_> = reports
                .iter()
                .filter(|r| !(r.palindromic && r.gamma_nonnegative))
                .collect();
            let passed = failing.is_empty();
            Outcome::json(
                "verify.symmetry",
                json!({ "passed": passed, "reports": reports, "counterexamples": failing }),
                passed,
            )
        }
        VerifyCmd::Chain { max_n } => {
            let c = chain_numbers(max_n);
            let passed = c.agree();
            Outcome::json(
                "verify.chain",
                json!({ "passed": passed, "routes": c }),
                passed,
            )
        }
        VerifyCmd::TRoutes { max_n } => {
            let comparisons = (0..=max_n)
                .map(|n| t_comparison(n, limit))
                .collect::<Result<Vec<_>>>()?;
            let failing: Vec<_> = comparisons.iter().filter(|c| !c.routes_agree).collect();
            let passed = failing.is_empty();
            Outcome::json(
                "verify.t-routes",
                json!({
                    "passed": passed,
                    "comparisons": comparisons,
                    "finding": t2_finding(limit)?,
                    "counterexamples": failing,
                }),
                passed,
            )
        }
    })
}

fn real_roots(family: FamilyArg, max_n: usize) -> Result<Outcome> {
    let family = match family {
        FamilyArg::TildeA => Family::TildeA,
        FamilyArg::T => Family::TOverQ,
    };
    let verdicts = real_root_verdicts(family, max_n)?;
    let counterexamples: Vec<_> = verdicts.iter().filter(|v| !v.real_rooted).collect();
    let passed = counterexamples.is_empty();
    Ok(Outcome::json(
        "conjecture.real-roots",
        json!({
            "family": family.name(),
            "max_n": max_n,
            "passed": passed,
            "verdicts": verdicts,
            "counterexamples": counterexamples,
        }),
        passed,
    ))
}

fn table(family: TableArg, max_n: usize, format: Format) -> Outcome {
    let family = match family {
        TableArg::Eulerian => TableFamily::Eulerian,
        TableArg::BinomialEulerian => TableFamily::BinomialEulerian,
        TableArg::Betti => TableFamily::Betti,
        TableArg::T => TableFamily::T,
    };
    let t = Triangle::build(family, max_n);
    match format {
        Format::Csv => Outcome {
            text: t.to_csv(),
            passed: true,
        },
        Format::Json => Outcome::json(
            "table",
            serde_json::to_value(&t).expect("serializable"),
            true,
        ),
    }
}
