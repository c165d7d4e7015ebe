//! Circle actions as expressions, and their fixed-point sets.
//!
//! [`ActionExpr`] combines a handful of basic actions (trivial, free
//! rotation, and three declared constructions whose fixed sets are taken as
//! given) with suspension, join, wedge and puncturing. [`fixed_set`] applies
//! the combinator rules literally; [`report`] compares total rank and Euler
//! characteristic of the space and of its fixed set.

use std::fmt;

use serde::Serialize;

use crate::space::SpaceExpr;
use crate::{Error, Result};

pub mod gallery;

/// An action summand of a wedge, with the fixed connected component that
/// carries the wedge basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Based {
    pub action: ActionExpr,
    pub component: usize,
}

impl Based {
    pub fn new(action: ActionExpr) -> Self {
        Based {
            action,
            component: 0,
        }
    }

    pub fn at(action: ActionExpr, component: usize) -> Self {
        Based { action, component }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ActionExpr {
    /// Every point fixed.
    Trivial(SpaceExpr),
    /// Scalar multiplication on the unit sphere `S^k ⊂ C^{(k+1)/2}`, `k` odd.
    FreeRotation(u32),
    /// Suspension; the two cone points are fixed.
    SuspA(Box<ActionExpr>),
    JoinA(Box<ActionExpr>, Box<ActionExpr>),
    /// Wedge taken at fixed points.
    WedgeA(Vec<Based>),
    /// Action on the cone `X_n` of the bidegree-(2,−1) construction induced
    /// by a circle in `O(n)` fixing `R^k`; the fixed set is `X_k`, three
    /// points when `k = 0`.
    ConeA {
        n: u32,
        k: u32,
    },
    /// Action on the cone of the complex, quaternion or octonion
    /// multiplication map for `n = 2, 4, 8`.
    MultConeA(u32),
    /// Action on `S^2 × S^{n+2}` fixing `S^3`, from the vector-bundle
    /// construction over `S^2`, `n` odd.
    BundleA(u32),
    /// Removes one fixed point.
    Puncture(Box<ActionExpr>),
}

impl ActionExpr {
    pub fn susp(a: ActionExpr) -> Self {
        ActionExpr::SuspA(Box::new(a))
    }

    pub fn join(a: ActionExpr, b: ActionExpr) -> Self {
        ActionExpr::JoinA(Box::new(a), Box::new(b))
    }

    pub fn puncture(a: ActionExpr) -> Self {
        ActionExpr::Puncture(Box::new(a))
    }

    /// Wedge with every basepoint in the first fixed component.
    pub fn wedge(children: Vec<ActionExpr>) -> Self {
        ActionExpr::WedgeA(children.into_iter().map(Based::new).collect())
    }

    /// Checks parameter invariants of every node. Wedge and puncture
    /// conditions that depend on fixed sets are checked by [`fixed_set`].
    pub fn validate(&self) -> Result<()> {
        match self {
            ActionExpr::Trivial(x) => x.validate(),
            ActionExpr::FreeRotation(k) => {
                if k % 2 == 0 {
                    Err(Error::InvalidAction(format!(
                        "FreeRotation requires odd dimension, got {k}"
                    )))
                } else {
                    Ok(())
                }
            }
            ActionExpr::SuspA(c) | ActionExpr::Puncture(c) => c.validate(),
            ActionExpr::JoinA(a, b) => {
                a.validate()?;
                b.validate()
            }
            ActionExpr::WedgeA(cs) => {
                if cs.is_empty() {
                    return Err(Error::InvalidAction(
                        "wedge needs at least one summand".into(),
                    ));
                }
                cs.iter().try_for_each(|c| c.action.validate())
            }
            ActionExpr::ConeA { n, k } => {
                if *n < 2 || n % 2 == 1 {
                    return Err(Error::InvalidAction(format!(
                        "ConeA requires even n >= 2, got {n}"
                    )));
                }
                if k > n || k % 2 == 1 {
                    return Err(Error::InvalidAction(format!(
                        "ConeA fixed subspace R^{k} must have even dimension at most n = {n}"
                    )));
                }
                Ok(())
            }
            ActionExpr::MultConeA(n) => {
                if matches!(n, 2 | 4 | 8) {
                    Ok(())
                } else {
                    Err(Error::InvalidAction(format!(
                        "MultConeA requires n in {{2, 4, 8}}, got {n}"
                    )))
                }
            }
            ActionExpr::BundleA(n) => {
                if *n >= 3 && n % 2 == 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidAction(format!(
                        "BundleA requires odd n >= 3, got {n}"
                    )))
                }
            }
        }
    }
}

/// The space acted on.
pub fn total_space(a: &ActionExpr) -> Result<SpaceExpr> {
    a.validate()?;
    total_unchecked(a)
}

fn total_unchecked(a: &ActionExpr) -> Result<SpaceExpr> {
    Ok(match a {
        ActionExpr::Trivial(x) => x.clone(),
        ActionExpr::FreeRotation(k) => SpaceExpr::Sphere(*k),
        ActionExpr::SuspA(c) => SpaceExpr::susp(total_unchecked(c)?),
        ActionExpr::JoinA(l, r) => SpaceExpr::join(total_unchecked(l)?, total_unchecked(r)?),
        ActionExpr::WedgeA(cs) => SpaceExpr::Wedge(
            cs.iter()
                .map(|c| total_unchecked(&c.action))
                .collect::<Result<_>>()?,
        ),
        ActionExpr::ConeA { n, .. } => SpaceExpr::MappingCone { n: *n, hopf: -2 },
        ActionExpr::MultConeA(n) => SpaceExpr::MappingCone { n: *n, hopf: 1 },
        ActionExpr::BundleA(n) => {
            SpaceExpr::product(SpaceExpr::Sphere(2), SpaceExpr::Sphere(n + 2))
        }
        ActionExpr::Puncture(c) => SpaceExpr::punctured(total_unchecked(c)?),
    })
}

/// Fixed-point set of the action.
pub fn fixed_set(a: &ActionExpr) -> Result<SpaceExpr> {
    a.validate()?;
    fixed_unchecked(a)
}

fn fixed_unchecked(a: &ActionExpr) -> Result<SpaceExpr> {
    Ok(match a {
        ActionExpr::Trivial(x) => x.clone(),
        ActionExpr::FreeRotation(_) => SpaceExpr::Empty,
        ActionExpr::SuspA(c) => {
            let f = fixed_unchecked(c)?;
            if f.is_empty_space()? {
                SpaceExpr::Sphere(0)
            } else {
                SpaceExpr::join(SpaceExpr::Sphere(0), f)
            }
        }
        ActionExpr::JoinA(l, r) => SpaceExpr::join(fixed_unchecked(l)?, fixed_unchecked(r)?),
        ActionExpr::WedgeA(cs) => {
            let mut parts = Vec::with_capacity(cs.len());
            for (i, c) in cs.iter().enumerate() {
                let f = fixed_unchecked(&c.action)?;
                parts.push(
                    rebase(&f, c.component)
                        .map_err(|e| Error::InvalidAction(format!("wedge summand {i}: {e}")))?,
                );
            }
            SpaceExpr::Wedge(parts)
        }
        ActionExpr::ConeA { k, .. } => {
            if *k == 0 {
                SpaceExpr::points(3)
            } else {
                SpaceExpr::MappingCone { n: *k, hopf: -2 }
            }
        }
        ActionExpr::MultConeA(n) => {
            let sphere = if *n == 8 { 6 } else { *n };
            SpaceExpr::disjoint(vec![SpaceExpr::Sphere(sphere), SpaceExpr::Point])
        }
        ActionExpr::BundleA(_) => SpaceExpr::Sphere(3),
        ActionExpr::Puncture(c) => {
            let total = total_unchecked(c)?;
            SpaceExpr::punctured(total).validate().map_err(|e| {
                Error::InvalidAction(format!("cannot puncture the total space: {e}"))
            })?;
            remove_fixed_point(&fixed_unchecked(c)?)?
        }
    })
}

/// Moves fixed component `index` to the front so that it carries the wedge
/// basepoint.
fn rebase(f: &SpaceExpr, index: usize) -> Result<SpaceExpr> {
    let comps = f.components()?;
    if comps.is_empty() {
        return Err(Error::InvalidAction(
            "basepoint must be a fixed point, but the fixed set of this summand is empty"
                .to_string(),
        ));
    }
    if index >= comps.len() {
        return Err(Error::InvalidAction(format!(
            "basepoint component {index} does not exist; the fixed set `{f}` has {} components",
            comps.len()
        )));
    }
    if index == 0 {
        return Ok(f.clone());
    }
    let mut ordered = vec![comps[index].clone()];
    ordered.extend(
        comps
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, c)| c),
    );
    Ok(SpaceExpr::Disjoint(ordered))
}

/// Removes one point from a fixed set: an isolated point if there is one,
/// otherwise a point of a sphere or of a product of two spheres.
fn remove_fixed_point(f: &SpaceExpr) -> Result<SpaceExpr> {
    match f {
        SpaceExpr::Empty => Err(Error::InvalidAction(
            "puncture needs a fixed point, but the fixed set is empty".into(),
        )),
        SpaceExpr::Point => Ok(SpaceExpr::Empty),
        SpaceExpr::Sphere(0) => Ok(SpaceExpr::Point),
        SpaceExpr::Sphere(_) | SpaceExpr::Product(..) => {
            let p = SpaceExpr::punctured(f.clone());
            p.validate().map_err(|_| {
                Error::InvalidAction(format!("cannot remove a point from the fixed set `{f}`"))
            })?;
            Ok(p)
        }
        SpaceExpr::Disjoint(cs) => {
            let Some(i) = cs.iter().position(|c| *c == SpaceExpr::Point) else {
                return Err(Error::InvalidAction(format!(
                    "no isolated fixed point to remove in `{f}`"
                )));
            };
            let mut rest = cs.clone();
            rest.remove(i);
            Ok(SpaceExpr::Disjoint(rest))
        }
        other => Err(Error::InvalidAction(format!(
            "cannot remove a point from the fixed set `{other}`"
        ))),
    }
}

/// Ranks and Euler characteristics of a space and its fixed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedSetReport {
    #[serde(serialize_with = "as_display")]
    pub total: SpaceExpr,
    #[serde(serialize_with = "as_display")]
    pub fixed: SpaceExpr,
    pub rank_total: u64,
    pub rank_fixed: u64,
    pub chi_total: i64,
    pub chi_fixed: i64,
    /// Rank equality, i.e. the space is totally non-homologous to zero in
    /// its Borel construction.
    pub tnhz: bool,
}

fn as_display<S: serde::Serializer>(e: &SpaceExpr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

/// Builds the report and checks `rank_fixed ≤ rank_total` and
/// `chi_fixed = chi_total`. A failed check means a combinator rule or a
/// declared primitive is wrong.
pub fn report(a: &ActionExpr) -> Result<FixedSetReport> {
    let total = total_space(a)?;
    let fixed = fixed_set(a)?;
    let (pt, pf) = (total.eval_poincare()?, fixed.eval_poincare()?);
    let r = FixedSetReport {
        rank_total: pt.total_rank(),
        rank_fixed: pf.total_rank(),
        chi_total: pt.euler_char()?,
        chi_fixed: pf.euler_char()?,
        tnhz: pt.total_rank() == pf.total_rank(),
        total,
        fixed,
    };
    if r.rank_fixed > r.rank_total {
        return Err(Error::Violation(format!(
            "fixed set `{}` has total rank {} > {} for `{}`",
            r.fixed, r.rank_fixed, r.rank_total, r.total
        )));
    }
    if r.chi_fixed != r.chi_total {
        return Err(Error::Violation(format!(
            "euler characteristic of fixed set `{}` is {}, of `{}` is {}",
            r.fixed, r.chi_fixed, r.total, r.chi_total
        )));
    }
    Ok(r)
}

/// Action on `S^m` whose fixed set is `S^r`, for `r ≡ m (mod 2)` and
/// `0 ≤ r ≤ m`; `r = m` is the trivial action. Built as the join of a free
/// rotation on `S^{m−r−1}` with the trivial action on `S^r`.
pub fn sphere_fixing(m: u32, r: u32) -> Result<ActionExpr> {
    if r > m || (m - r) % 2 == 1 {
        return Err(Error::Parameters(format!(
            "no circle action on S^{m} fixes S^{r}: need r <= m with m - r even"
        )));
    }
    Ok(if r == m {
        ActionExpr::Trivial(SpaceExpr::Sphere(m))
    } else {
        ActionExpr::join(
            ActionExpr::FreeRotation(m - r - 1),
            ActionExpr::Trivial(SpaceExpr::Sphere(r)),
        )
    })
}

/// Action on an even-dimensional sphere `S^m` with exactly two fixed points.
pub fn two_fixed_points(m: u32) -> Result<ActionExpr> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::Parameters(format!(
            "a two-fixed-point action needs an even-dimensional sphere, got S^{m}"
        )));
    }
    Ok(ActionExpr::susp(ActionExpr::FreeRotation(m - 1)))
}

fn write_list(f: &mut fmt::Formatter<'_>, cs: &[Based]) -> fmt::Result {
    f.write_str("wedgeA(")?;
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{}", c.action)?;
        if c.component != 0 {
            write!(f, " @{}", c.component)?;
        }
    }
    f.write_str(")")
}

impl fmt::Display for ActionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionExpr::Trivial(x) => write!(f, "trivial({x})"),
            ActionExpr::FreeRotation(k) => write!(f, "rotfree({k})"),
            ActionExpr::SuspA(c) => write!(f, "suspA({c})"),
            ActionExpr::JoinA(a, b) => write!(f, "joinA({a}, {b})"),
            ActionExpr::WedgeA(cs) => write_list(f, cs),
            ActionExpr::ConeA { n, k } => write!(f, "coneA({n}, {k})"),
            ActionExpr::MultConeA(n) => write!(f, "multA({n})"),
            ActionExpr::BundleA(n) => write!(f, "bundleA({n})"),
            ActionExpr::Puncture(c) => write!(f, "punctA({c})"),
        }
    }
}
