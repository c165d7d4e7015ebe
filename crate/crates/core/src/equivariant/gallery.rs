//! Explicit actions realizing each case of the fixed-point classification.
//!
//! Every case is assembled from the combinators in [`super`] at concrete
//! parameters, and carries the fixed-set type it is meant to realize and the
//! expected rank verdict.

use serde::Serialize;

use super::{report, sphere_fixing, two_fixed_points, ActionExpr, Based, FixedSetReport};
use crate::classify::{ComponentDescriptor, FixedSetType};
use crate::{Error, Result};

use ComponentDescriptor::{Point, Sphere, P2};

/// Case identifiers, in catalog order.
pub const CASE_IDS: &[&str] = &[
    "1-wedge",
    "1-cone",
    "2-wedge",
    "2-cone",
    "3-sphere-pair",
    "3-wedge-point",
    "3-P2-point",
    "4-three-spheres",
    "4-P2-sphere",
    "thm2-Sr",
];

/// Concrete parameters of a case. Unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryCase {
    pub id: &'static str,
    pub params: Params,
    pub action: ActionExpr,
    pub claimed: FixedSetType,
    pub expected_tnhz: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub params: Params,
    pub action: String,
    pub claimed: String,
    pub observed: String,
    pub expected_tnhz: bool,
    pub report: FixedSetReport,
    pub passed: bool,
}

fn case_id(id: &str) -> Result<&'static str> {
    CASE_IDS
        .iter()
        .copied()
        .find(|c| *c == id)
        .ok_or_else(|| Error::UnknownCase(format!("`{id}`; known cases: {}", CASE_IDS.join(", "))))
}

/// Smallest legal parameters for a case.
pub fn default_params(id: &str) -> Result<Params> {
    let p = |n, r, s, t| Params { n, r, s, t };
    Ok(match case_id(id)? {
        "1-wedge" | "1-cone" => p(2, 0, 0, 0),
        "2-wedge" | "2-cone" => p(2, 2, 0, 0),
        "3-sphere-pair" | "3-wedge-point" => p(2, 2, 0, 0),
        "3-P2-point" => p(4, 2, 0, 0),
        "4-three-spheres" => p(2, 2, 4, 6),
        "4-P2-sphere" => p(2, 2, 4, 0),
        _ => p(3, 1, 0, 0),
    })
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Parameters(what.to_string()))
    }
}

fn even_n(p: &Params) -> Result<()> {
    need(
        p.n >= 2 && p.n.is_multiple_of(2),
        "this case needs an even n >= 2",
    )
}

/// Builds a case at the given parameters.
pub fn build(id: &str, p: Params) -> Result<GalleryCase> {
    let id = case_id(id)?;
    let n = p.n;
    let fst = FixedSetType::new;
    let (action, claimed, expected_tnhz) = match id {
        "1-wedge" => {
            even_n(&p)?;
            let a = ActionExpr::wedge(vec![
                two_fixed_points(n)?,
                two_fixed_points(2 * n)?,
                two_fixed_points(3 * n)?,
            ]);
            (a, fst(vec![Point; 4]), true)
        }
        "1-cone" => {
            even_n(&p)?;
            let a = ActionExpr::wedge(vec![
                ActionExpr::ConeA { n, k: 0 },
                two_fixed_points(3 * n)?,
            ]);
            (a, fst(vec![Point; 4]), true)
        }
        "2-wedge" => {
            even_n(&p)?;
            need(
                p.r >= 2 && p.r <= 3 * n - 2 && p.r.is_multiple_of(2),
                "r must be even with 2 <= r <= 3n - 2",
            )?;
            let a = ActionExpr::wedge(vec![
                two_fixed_points(n)?,
                two_fixed_points(2 * n)?,
                sphere_fixing(3 * n, p.r)?,
            ]);
            (a, fst(vec![Sphere(p.r), Point, Point]), true)
        }
        "2-cone" => {
            even_n(&p)?;
            need(
                p.r >= 2 && p.r <= 3 * n - 2 && p.r.is_multiple_of(2),
                "r must be even with 2 <= r <= 3n - 2",
            )?;
            let a = ActionExpr::wedge(vec![
                ActionExpr::ConeA { n, k: 0 },
                sphere_fixing(3 * n, p.r)?,
            ]);
            (a, fst(vec![Sphere(p.r), Point, Point]), true)
        }
        "3-sphere-pair" | "3-wedge-point" => {
            need(matches!(n, 2 | 4 | 8), "this case needs n in {2, 4, 8}")?;
            need(
                p.r >= 2 && p.r <= n && p.r.is_multiple_of(2),
                "r must be even with 2 <= r <= n",
            )?;
            let s = if n == 8 { 6 } else { n };
            // S^{n-1} ⋆ M has fixed set S^s ⊔ pt; component 1 is the point
            let y = ActionExpr::join(ActionExpr::FreeRotation(n - 1), ActionExpr::MultConeA(n));
            let first = sphere_fixing(n, p.r)?;
            if id == "3-sphere-pair" {
                let a = ActionExpr::WedgeA(vec![Based::new(first), Based::at(y, 1)]);
                (a, fst(vec![Sphere(p.r), Sphere(s)]), true)
            } else {
                let a = ActionExpr::WedgeA(vec![Based::new(first), Based::at(y, 0)]);
                let wedge = ComponentDescriptor::wedge_spheres(vec![p.r, s]);
                (a, fst(vec![wedge, Point]), true)
            }
        }
        "3-P2-point" => {
            even_n(&p)?;
            need(
                p.r >= 2 && p.r <= n && p.r.is_multiple_of(2),
                "r must be even with 2 <= r <= n",
            )?;
            let a = ActionExpr::wedge(vec![
                two_fixed_points(n)?,
                ActionExpr::join(
                    ActionExpr::FreeRotation(n - 1),
                    ActionExpr::ConeA { n, k: p.r },
                ),
            ]);
            (a, fst(vec![P2(p.r), Point]), true)
        }
        "4-three-spheres" => {
            let parity_ok = if n.is_multiple_of(2) {
                [p.r, p.s, p.t].iter().all(|d| d % 2 == 0)
            } else {
                p.r % 2 == 1 && p.s.is_multiple_of(2) && p.t % 2 == 1
            };
            need(
                n >= 1 && parity_ok && p.r >= 1 && p.s >= 1 && p.t >= 1,
                "r, s, t must all be even for even n; r, t odd and s even for odd n",
            )?;
            let a = ActionExpr::wedge(vec![
                sphere_fixing(n, p.r)?,
                sphere_fixing(2 * n, p.s)?,
                sphere_fixing(3 * n, p.t)?,
            ]);
            let wedge = ComponentDescriptor::wedge_spheres(vec![p.r, p.s, p.t]);
            (a, fst(vec![wedge]), true)
        }
        "4-P2-sphere" => {
            even_n(&p)?;
            need(
                p.r >= 2 && p.r <= n && p.r.is_multiple_of(2),
                "r must be even with 2 <= r <= n",
            )?;
            need(
                p.s >= 2 && p.s.is_multiple_of(2),
                "s must be even and positive",
            )?;
            let a = ActionExpr::wedge(vec![
                ActionExpr::ConeA { n, k: p.r },
                sphere_fixing(3 * n, p.s)?,
            ]);
            (
                a,
                fst(vec![ComponentDescriptor::P2WedgeSphere { r: p.r, s: p.s }]),
                true,
            )
        }
        _ => {
            need(n >= 3 && n % 2 == 1, "this case needs an odd n >= 3")?;
            need(
                p.r % 2 == 1 && p.r <= 3 * n,
                "r must be odd with 1 <= r <= 3n",
            )?;
            let z = ActionExpr::puncture(ActionExpr::BundleA(n));
            let w = ActionExpr::join(
                ActionExpr::Trivial(crate::space::SpaceExpr::Sphere(n - 3)),
                z,
            );
            let a = ActionExpr::wedge(vec![w, sphere_fixing(3 * n, p.r)?]);
            (a, fst(vec![Sphere(p.r)]), false)
        }
    };
    Ok(GalleryCase {
        id,
        params: p,
        action,
        claimed,
        expected_tnhz,
    })
}

/// Default instance of every case, plus `thm2-Sr` for each odd `r` at
/// `n = 3`, and a few larger parameters.
pub fn catalog() -> Vec<GalleryCase> {
    let mut out = Vec::new();
    for id in CASE_IDS {
        let p = default_params(id).expect("known id");
        if *id == "thm2-Sr" {
            for r in (1..=3 * p.n).step_by(2) {
                out.push(build(id, Params { r, ..p }).expect("catalog parameters"));
            }
        } else {
            out.push(build(id, p).expect("catalog parameters"));
        }
    }
    let extra = [
        (
            "1-cone",
            Params {
                n: 4,
                r: 0,
                s: 0,
                t: 0,
            },
        ),
        (
            "2-cone",
            Params {
                n: 4,
                r: 10,
                s: 0,
                t: 0,
            },
        ),
        (
            "3-sphere-pair",
            Params {
                n: 8,
                r: 2,
                s: 0,
                t: 0,
            },
        ),
        (
            "3-wedge-point",
            Params {
                n: 4,
                r: 2,
                s: 0,
                t: 0,
            },
        ),
        (
            "4-three-spheres",
            Params {
                n: 3,
                r: 1,
                s: 2,
                t: 1,
            },
        ),
        (
            "4-P2-sphere",
            Params {
                n: 4,
                r: 4,
                s: 2,
                t: 0,
            },
        ),
        (
            "thm2-Sr",
            Params {
                n: 5,
                r: 7,
                s: 0,
                t: 0,
            },
        ),
    ];
    for (id, p) in extra {
        out.push(build(id, p).expect("catalog parameters"));
    }
    out
}

/// Computes the report of a case and checks it against the claim.
pub fn run(case: &GalleryCase) -> Result<CaseOutcome> {
    let report = report(&case.action)?;
    let observed = FixedSetType::from_space(&report.fixed)?;
    let passed = observed == case.claimed && report.tnhz == case.expected_tnhz;
    Ok(CaseOutcome {
        id: case.id.to_string(),
        params: case.params,
        action: case.action.to_string(),
        claimed: case.claimed.to_string(),
        observed: observed.to_string(),
        expected_tnhz: case.expected_tnhz,
        report,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{enumerate_fixed_types, Axioms};

    #[test]
    fn catalog_passes() {
        let cases = catalog();
        assert!(cases.len() >= 10);
        for c in &cases {
            let out = run(c).unwrap();
            assert!(out.passed, "{}: {} vs {}", c.id, out.claimed, out.observed);
        }
    }

    #[test]
    fn realizations_inhabit_the_classification() {
        for c in catalog() {
            let allowed = enumerate_fixed_types(c.params.n, c.expected_tnhz, &Axioms::default());
            assert!(allowed.contains(&c.claimed), "{} {:?}", c.id, c.params);
        }
    }

    #[test]
    fn odd_sphere_case_reports() {
        let r = run(&build("thm2-Sr", default_params("thm2-Sr").unwrap()).unwrap()).unwrap();
        assert_eq!((r.report.rank_total, r.report.rank_fixed), (4, 2));
        assert!(!r.report.tnhz);
        assert_eq!(r.observed, "S1");
    }

    #[test]
    fn p2_point_example() {
        let r = run(&build("3-P2-point", default_params("3-P2-point").unwrap()).unwrap()).unwrap();
        assert_eq!(r.observed, "pt ⊔ P2(2)");
        assert!(r.report.tnhz);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            build("nope", default_params("1-wedge").unwrap()),
            Err(Error::UnknownCase(_))
        ));
        assert!(build(
            "1-wedge",
            Params {
                n: 3,
                r: 0,
                s: 0,
                t: 0
            }
        )
        .is_err());
        assert!(build(
            "2-wedge",
            Params {
                n: 2,
                r: 3,
                s: 0,
                t: 0
            }
        )
        .is_err());
        assert!(build(
            "thm2-Sr",
            Params {
                n: 3,
                r: 2,
                s: 0,
                t: 0
            }
        )
        .is_err());
        assert!(build(
            "3-sphere-pair",
            Params {
                n: 6,
                r: 2,
                s: 0,
                t: 0
            }
        )
        .is_err());
    }
}
