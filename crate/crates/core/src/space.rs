//! Space expressions and their rational cohomology.
//!
//! A [`SpaceExpr`] describes a space only up to rational cohomology. Leaves
//! are spheres, truncated projective spaces `P^h(n)`, Toda spaces of type
//! `(a, b)` and two-cell complexes `S^n ∪ e^{2n}` recorded by the Hopf
//! invariant of the attaching map. Internal nodes are the usual space
//! constructions.
//!
//! Wedge summands may be disconnected; the basepoint then lies in the first
//! connected component of each summand (see [`SpaceExpr::components`]).

use std::fmt;

use crate::graded::{self, PoincarePolynomial, DEFAULT_DEGREE_CAP};
use crate::ring::{Generator, Monomial, Relation, RingParams, RingPresentation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Empty,
    Point,
    Sphere(u32),
    /// `P^h(n)`: cohomology `Q[z]/z^{h+1}` with `deg z = n`.
    PTrunc {
        h: u32,
        n: u32,
    },
    /// Toda space of type `(a, b)`: ranks 1 in degrees 0, n, 2n, 3n.
    Toda {
        n: u32,
        a: i64,
        b: i64,
    },
    Wedge(Vec<SpaceExpr>),
    Disjoint(Vec<SpaceExpr>),
    Join(Box<SpaceExpr>, Box<SpaceExpr>),
    Susp(Box<SpaceExpr>),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    /// Cone of a map `S^{2n-1} -> S^n` with the given Hopf invariant.
    MappingCone {
        n: u32,
        hopf: i64,
    },
    /// The child with one point removed.
    Punctured(Box<SpaceExpr>),
}

/// Rational type of a Toda space, a function of `(n, a ≠ 0, b ≠ 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RationalTypeLabel {
    ProductSpheres(u32),
    P3(u32),
    WedgeThreeSpheres(u32),
    P2WedgeSphere(u32),
}

impl RationalTypeLabel {
    pub fn name(&self) -> &'static str {
        match self {
            RationalTypeLabel::ProductSpheres(_) => "ProductSpheres",
            RationalTypeLabel::P3(_) => "P3",
            RationalTypeLabel::WedgeThreeSpheres(_) => "WedgeThreeSpheres",
            RationalTypeLabel::P2WedgeSphere(_) => "P2WedgeSphere",
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            RationalTypeLabel::ProductSpheres(n)
            | RationalTypeLabel::P3(n)
            | RationalTypeLabel::WedgeThreeSpheres(n)
            | RationalTypeLabel::P2WedgeSphere(n) => n,
        }
    }

    /// A representative space expression of this rational type.
    pub fn model(&self) -> SpaceExpr {
        let n = self.n();
        match self {
            RationalTypeLabel::ProductSpheres(_) => {
                SpaceExpr::product(SpaceExpr::Sphere(n), SpaceExpr::Sphere(2 * n))
            }
            RationalTypeLabel::P3(_) => SpaceExpr::PTrunc { h: 3, n },
            RationalTypeLabel::WedgeThreeSpheres(_) => SpaceExpr::Wedge(vec![
                SpaceExpr::Sphere(n),
                SpaceExpr::Sphere(2 * n),
                SpaceExpr::Sphere(3 * n),
            ]),
            RationalTypeLabel::P2WedgeSphere(_) => SpaceExpr::Wedge(vec![
                SpaceExpr::PTrunc { h: 2, n },
                SpaceExpr::Sphere(3 * n),
            ]),
        }
    }
}

impl fmt::Display for RationalTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.n())
    }
}

/// Rational class of the cone on `S^{2n-1} -> S^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeClass {
    /// `x^2 = h·y` with `h ≠ 0`: rationally `P^2(n)`.
    ProjectivePlane(u32),
    /// `x^2 = 0`: rationally `S^n ∨ S^{2n}`.
    SphereWedge(u32),
}

impl fmt::Display for ConeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConeClass::ProjectivePlane(n) => write!(f, "P2({n})"),
            ConeClass::SphereWedge(n) => write!(f, "S{n}∨S{}", 2 * n),
        }
    }
}

/// Indecomposable wedge summand of a connected rational type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Sphere(u32),
    P2(u32),
    /// Anything outside spheres and `P^2`, with a short description.
    Other(String),
}

impl SpaceExpr {
    pub fn wedge(children: Vec<SpaceExpr>) -> Self {
        SpaceExpr::Wedge(children)
    }

    pub fn disjoint(children: Vec<SpaceExpr>) -> Self {
        SpaceExpr::Disjoint(children)
    }

    pub fn join(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn susp(c: SpaceExpr) -> Self {
        SpaceExpr::Susp(Box::new(c))
    }

    pub fn product(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn punctured(c: SpaceExpr) -> Self {
        SpaceExpr::Punctured(Box::new(c))
    }

    /// `k` isolated points.
    pub fn points(k: usize) -> Self {
        match k {
            0 => SpaceExpr::Empty,
            1 => SpaceExpr::Point,
            k => SpaceExpr::Disjoint(vec![SpaceExpr::Point; k]),
        }
    }

    /// Checks the parameter invariants of every node.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceExpr::Empty | SpaceExpr::Point | SpaceExpr::Sphere(_) => Ok(()),
            SpaceExpr::PTrunc { h, n } => {
                if *h == 0 || *n == 0 {
                    return Err(Error::InvalidSpace("P^h(n) needs h >= 1 and n >= 1".into()));
                }
                if n % 2 == 1 && *h != 1 {
                    return Err(Error::InvalidSpace(format!(
                        "P^{h}({n}): an odd-degree generator squares to zero rationally, so h must be 1"
                    )));
                }
                Ok(())
            }
            SpaceExpr::Toda { n, a, .. } => check_toda_params(*n, *a),
            SpaceExpr::MappingCone { n, hopf } => check_cone_params(*n, *hopf),
            SpaceExpr::Wedge(cs) => {
                if cs.is_empty() {
                    return Err(Error::InvalidSpace("wedge needs at least one summand".into()));
                }
                cs.iter().try_for_each(SpaceExpr::validate)
            }
            SpaceExpr::Disjoint(cs) => cs.iter().try_for_each(SpaceExpr::validate),
            SpaceExpr::Join(a, b) | SpaceExpr::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            SpaceExpr::Susp(c) => c.validate(),
            SpaceExpr::Punctured(c) => match c.as_ref() {
                SpaceExpr::Sphere(_) => Ok(()),
                SpaceExpr::Product(a, b)
                    if matches!(
                        (a.as_ref(), b.as_ref()),
                        (SpaceExpr::Sphere(p), SpaceExpr::Sphere(q)) if *p >= 1 && *q >= 1
                    ) =>
                {
                    Ok(())
                }
                other => Err(Error::InvalidSpace(format!(
                    "puncturing is defined for spheres and products of two positive-dimensional spheres, not `{other}`"
                ))),
            },
        }
    }

    /// Unreduced Poincaré polynomial with the default degree cap.
    pub fn eval_poincare(&self) -> Result<PoincarePolynomial> {
        self.eval_poincare_capped(DEFAULT_DEGREE_CAP)
    }

    pub fn eval_poincare_capped(&self, cap: u32) -> Result<PoincarePolynomial> {
        self.validate()?;
        self.eval_unchecked(cap)
    }

    fn eval_unchecked(&self, cap: u32) -> Result<PoincarePolynomial> {
        let leaf_degree = |d: u64| -> Result<i32> {
            if d > cap as u64 {
                Err(Error::DegreeCap {
                    degree: d as i64,
                    cap,
                })
            } else {
                Ok(d as i32)
            }
        };
        let p = match self {
            SpaceExpr::Empty => PoincarePolynomial::empty_space(),
            SpaceExpr::Point => PoincarePolynomial::point(),
            SpaceExpr::Sphere(k) => {
                leaf_degree(*k as u64)?;
                PoincarePolynomial::sphere(*k)?
            }
            SpaceExpr::PTrunc { h, n } => {
                let top = leaf_degree(*h as u64 * *n as u64)?;
                let n = *n as i32;
                PoincarePolynomial::unreduced((0..=top).step_by(n as usize).map(|d| (d, 1)))?
            }
            SpaceExpr::Toda { n, .. } => {
                leaf_degree(3 * *n as u64)?;
                let n = *n as i32;
                PoincarePolynomial::unreduced([(0, 1), (n, 1), (2 * n, 1), (3 * n, 1)])?
            }
            SpaceExpr::MappingCone { n, .. } => {
                leaf_degree(2 * *n as u64)?;
                let n = *n as i32;
                PoincarePolynomial::unreduced([(0, 1), (n, 1), (2 * n, 1)])?
            }
            SpaceExpr::Wedge(cs) => {
                let ps = cs
                    .iter()
                    .map(|c| c.eval_unchecked(cap))
                    .collect::<Result<Vec<_>>>()?;
                graded::pointed_wedge_poly(&ps)
                    .map_err(|e| Error::InvalidSpace(format!("in `{self}`: {e}")))?
            }
            SpaceExpr::Disjoint(cs) => {
                let ps = cs
                    .iter()
                    .map(|c| c.eval_unchecked(cap))
                    .collect::<Result<Vec<_>>>()?;
                graded::disjoint_poly(&ps)?
            }
            SpaceExpr::Join(a, b) => {
                let pa = a.eval_unchecked(cap)?.to_reduced()?;
                let pb = b.eval_unchecked(cap)?.to_reduced()?;
                graded::join_poly(&pa, &pb)?.to_unreduced()?
            }
            SpaceExpr::Susp(c) => {
                let s0 = PoincarePolynomial::sphere(0)?.to_reduced()?;
                let pc = c.eval_unchecked(cap)?.to_reduced()?;
                graded::join_poly(&s0, &pc)?.to_unreduced()?
            }
            SpaceExpr::Product(a, b) => {
                graded::product_poly(&a.eval_unchecked(cap)?, &b.eval_unchecked(cap)?)?
            }
            SpaceExpr::Punctured(c) => match c.as_ref() {
                SpaceExpr::Sphere(_) => PoincarePolynomial::point(),
                _ => {
                    let full = c.eval_unchecked(cap)?;
                    let top = full.max_degree().unwrap_or(0);
                    PoincarePolynomial::unreduced(full.ranks().map(|(d, r)| {
                        if d == top {
                            (d, r - 1)
                        } else {
                            (d, r)
                        }
                    }))?
                }
            },
        };
        p.check_cap(cap)?;
        Ok(p)
    }

    /// Connected components, each as an expression. Wedge nodes are rebuilt
    /// from the basepoint components of their summands.
    pub fn components(&self) -> Result<Vec<SpaceExpr>> {
        Ok(match self {
            SpaceExpr::Empty => vec![],
            SpaceExpr::Sphere(0) => vec![SpaceExpr::Point, SpaceExpr::Point],
            SpaceExpr::Point
            | SpaceExpr::Sphere(_)
            | SpaceExpr::PTrunc { .. }
            | SpaceExpr::Toda { .. }
            | SpaceExpr::MappingCone { .. } => vec![self.clone()],
            SpaceExpr::Disjoint(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    out.extend(c.components()?);
                }
                out
            }
            SpaceExpr::Wedge(cs) => {
                let mut based = Vec::new();
                let mut rest = Vec::new();
                for c in cs {
                    let mut comps = c.components()?.into_iter();
                    let first = comps.next().ok_or_else(|| {
                        Error::InvalidSpace(format!("wedge summand `{c}` is empty"))
                    })?;
                    based.push(first);
                    rest.extend(comps);
                }
                let head = if based.len() == 1 {
                    based.pop().expect("one summand")
                } else {
                    SpaceExpr::Wedge(based)
                };
                std::iter::once(head).chain(rest).collect()
            }
            SpaceExpr::Join(a, b) => {
                if a.is_empty_space()? {
                    b.components()?
                } else if b.is_empty_space()? {
                    a.components()?
                } else {
                    vec![self.clone()]
                }
            }
            SpaceExpr::Susp(c) => {
                if c.is_empty_space()? {
                    vec![SpaceExpr::Point, SpaceExpr::Point]
                } else {
                    vec![self.clone()]
                }
            }
            SpaceExpr::Product(a, b) => {
                let (ca, cb) = (a.components()?, b.components()?);
                let mut out = Vec::new();
                for x in &ca {
                    for y in &cb {
                        out.push(match (x, y) {
                            (SpaceExpr::Point, y) => y.clone(),
                            (x, SpaceExpr::Point) => x.clone(),
                            (x, y) => SpaceExpr::product(x.clone(), y.clone()),
                        });
                    }
                }
                out
            }
            SpaceExpr::Punctured(c) => match c.as_ref() {
                SpaceExpr::Sphere(_) => vec![SpaceExpr::Point],
                _ => vec![self.clone()],
            },
        })
    }

    pub fn is_empty_space(&self) -> Result<bool> {
        Ok(self.eval_poincare()?.is_empty_space())
    }

    /// Wedge decomposition of a connected expression into spheres and
    /// `P^2`'s, as far as the cohomology ring allows. A point has no
    /// summands.
    pub fn rational_summands(&self) -> Result<Vec<Summand>> {
        let p = self.eval_poincare()?;
        if !p.is_connected() {
            return Err(Error::InvalidSpace(format!("`{self}` is not connected")));
        }
        Ok(match self {
            SpaceExpr::Point => vec![],
            SpaceExpr::Sphere(k) => vec![Summand::Sphere(*k)],
            SpaceExpr::PTrunc { h: 1, n } => vec![Summand::Sphere(*n)],
            SpaceExpr::PTrunc { h: 2, n } => vec![Summand::P2(*n)],
            SpaceExpr::PTrunc { h, n } => vec![Summand::Other(format!("P^{h}({n})"))],
            SpaceExpr::MappingCone { n, hopf } => match mapping_cone_class(*n, *hopf)? {
                ConeClass::ProjectivePlane(n) => vec![Summand::P2(n)],
                ConeClass::SphereWedge(n) => vec![Summand::Sphere(n), Summand::Sphere(2 * n)],
            },
            SpaceExpr::Toda { n, a, b } => match classify_type(*n, *a, *b)? {
                RationalTypeLabel::WedgeThreeSpheres(n) => vec![
                    Summand::Sphere(n),
                    Summand::Sphere(2 * n),
                    Summand::Sphere(3 * n),
                ],
                RationalTypeLabel::P2WedgeSphere(n) => {
                    vec![Summand::P2(n), Summand::Sphere(3 * n)]
                }
                label => vec![Summand::Other(label.to_string())],
            },
            SpaceExpr::Wedge(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    let first = c.components()?.into_iter().next().ok_or_else(|| {
                        Error::InvalidSpace(format!("wedge summand `{c}` is empty"))
                    })?;
                    out.extend(first.rational_summands()?);
                }
                out
            }
            SpaceExpr::Disjoint(cs) => {
                // connected, so exactly one nonempty part
                let mut out = Vec::new();
                for c in cs {
                    if !c.is_empty_space()? {
                        out.extend(c.rational_summands()?);
                    }
                }
                out
            }
            // cup products vanish in a join of nonempty spaces
            SpaceExpr::Join(a, b) if a.is_empty_space()? => b.rational_summands()?,
            SpaceExpr::Join(a, b) if b.is_empty_space()? => a.rational_summands()?,
            SpaceExpr::Join(..) | SpaceExpr::Susp(_) => spheres_from_ranks(&p),
            SpaceExpr::Product(a, b) => {
                let (pa, pb) = (a.eval_poincare()?, b.eval_poincare()?);
                if pa.to_reduced()?.is_zero() {
                    b.rational_summands()?
                } else if pb.to_reduced()?.is_zero() {
                    a.rational_summands()?
                } else {
                    vec![Summand::Other(format!("{self}"))]
                }
            }
            SpaceExpr::Punctured(c) => match c.as_ref() {
                SpaceExpr::Product(a, b) => match (a.as_ref(), b.as_ref()) {
                    (SpaceExpr::Sphere(p), SpaceExpr::Sphere(q)) => {
                        vec![Summand::Sphere(*p), Summand::Sphere(*q)]
                    }
                    _ => unreachable!("validated puncture"),
                },
                _ => vec![],
            },
            SpaceExpr::Empty => unreachable!("empty space is not connected"),
        })
    }
}

fn spheres_from_ranks(p: &PoincarePolynomial) -> Vec<Summand> {
    p.ranks()
        .filter(|&(d, _)| d > 0)
        .flat_map(|(d, r)| std::iter::repeat_n(Summand::Sphere(d as u32), r as usize))
        .collect()
}

fn check_toda_params(n: u32, a: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSpace("Toda space needs n >= 1".into()));
    }
    if n % 2 == 1 && a != 0 {
        return Err(Error::InvalidSpace(format!(
            "Toda space with odd n = {n}: u1 has odd degree so u1^2 = 0, forcing a = 0 (got a = {a})"
        )));
    }
    Ok(())
}

fn check_cone_params(n: u32, hopf: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSpace("mapping cone needs n >= 1".into()));
    }
    if n % 2 == 1 && hopf != 0 {
        return Err(Error::InvalidSpace(format!(
            "mapping cone with odd n = {n}: x^2 = 0 by graded commutativity, so the Hopf invariant must be 0 (got {hopf})"
        )));
    }
    Ok(())
}

fn generators(spec: &[(&str, u32)]) -> Vec<Generator> {
    spec.iter()
        .map(|&(name, degree)| Generator {
            name: name.to_string(),
            degree,
        })
        .collect()
}

/// `u1^2 = a·u2`, `u1·u2 = b·u3`, everything above degree `3n` zero.
pub fn toda_ring(n: u32, a: i64, b: i64) -> Result<RingPresentation> {
    check_toda_params(n, a)?;
    let relations = vec![
        Relation {
            lhs: Monomial(vec![2, 0, 0]),
            rhs: vec![(a, Monomial(vec![0, 1, 0]))],
        },
        Relation {
            lhs: Monomial(vec![1, 1, 0]),
            rhs: vec![(b, Monomial(vec![0, 0, 1]))],
        },
    ];
    RingPresentation::new(
        generators(&[("u1", n), ("u2", 2 * n), ("u3", 3 * n)]),
        relations,
        3 * n,
        RingParams::Toda { n, a, b },
    )
}

/// `Q[z]/z^{h+1}` with `deg z = n`.
pub fn truncated_ring(h: u32, n: u32) -> Result<RingPresentation> {
    SpaceExpr::PTrunc { h, n }.validate()?;
    let relations = vec![Relation {
        lhs: Monomial(vec![h + 1]),
        rhs: vec![],
    }];
    RingPresentation::new(
        generators(&[("z", n)]),
        relations,
        h * n,
        RingParams::Truncated { n, h },
    )
}

/// `x^2 = h·y` on generators of degrees `n` and `2n`, with its rational class.
pub fn mapping_cone_ring(n: u32, hopf: i64) -> Result<(RingPresentation, ConeClass)> {
    let class = mapping_cone_class(n, hopf)?;
    let ring = RingPresentation::new(
        generators(&[("x", n), ("y", 2 * n)]),
        vec![Relation {
            lhs: Monomial(vec![2, 0]),
            rhs: vec![(hopf, Monomial(vec![0, 1]))],
        }],
        2 * n,
        RingParams::MappingCone { n, hopf },
    )?;
    Ok((ring, class))
}

fn mapping_cone_class(n: u32, hopf: i64) -> Result<ConeClass> {
    check_cone_params(n, hopf)?;
    Ok(if hopf != 0 {
        ConeClass::ProjectivePlane(n)
    } else {
        ConeClass::SphereWedge(n)
    })
}

/// Rational type of a Toda space from the vanishing pattern of `(a, b)`.
pub fn classify_type(n: u32, a: i64, b: i64) -> Result<RationalTypeLabel> {
    check_toda_params(n, a)?;
    Ok(match (a != 0, b != 0) {
        (false, true) => RationalTypeLabel::ProductSpheres(n),
        (true, true) => RationalTypeLabel::P3(n),
        (false, false) => RationalTypeLabel::WedgeThreeSpheres(n),
        (true, false) => RationalTypeLabel::P2WedgeSphere(n),
    })
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, items: &[SpaceExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// Prints in the expression-language syntax accepted by [`crate::dsl`].
impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Empty => f.write_str("empty"),
            SpaceExpr::Point => f.write_str("pt"),
            SpaceExpr::Sphere(k) => write!(f, "S({k})"),
            SpaceExpr::PTrunc { h, n } => write!(f, "P({h}, {n})"),
            SpaceExpr::Toda { n, a, b } => write!(f, "toda({n}, {a}, {b})"),
            SpaceExpr::MappingCone { n, hopf } => write!(f, "cone({n}, {hopf})"),
            SpaceExpr::Wedge(cs) => write_list(f, "wedge", cs),
            SpaceExpr::Disjoint(cs) => write_list(f, "disj", cs),
            SpaceExpr::Join(a, b) => write!(f, "join({a}, {b})"),
            SpaceExpr::Susp(c) => write!(f, "susp({c})"),
            SpaceExpr::Product(a, b) => write!(f, "prod({a}, {b})"),
            SpaceExpr::Punctured(c) => write!(f, "punct({c})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SpaceExpr::*;

    fn un(pairs: &[(i32, u64)]) -> PoincarePolynomial {
        PoincarePolynomial::unreduced(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let toda = Toda { n: 2, a: 1, b: 0 };
        assert_eq!(
            toda.eval_poincare().unwrap(),
            un(&[(0, 1), (2, 1), (4, 1), (6, 1)])
        );

        let z = SpaceExpr::punctured(SpaceExpr::product(Sphere(2), Sphere(5)));
        assert_eq!(z.eval_poincare().unwrap(), un(&[(0, 1), (2, 1), (5, 1)]));

        let s = SpaceExpr::join(Sphere(0), Sphere(4));
        assert_eq!(s.eval_poincare().unwrap(), un(&[(0, 1), (5, 1)]));

        assert_eq!(Sphere(0).eval_poincare().unwrap(), un(&[(0, 2)]));
        assert_eq!(
            PTrunc { h: 3, n: 2 }.eval_poincare().unwrap(),
            un(&[(0, 1), (2, 1), (4, 1), (6, 1)])
        );
        assert_eq!(
            SpaceExpr::susp(Empty).eval_poincare().unwrap(),
            un(&[(0, 2)])
        );
        assert_eq!(
            SpaceExpr::join(Empty, Sphere(3)).eval_poincare().unwrap(),
            un(&[(0, 1), (3, 1)])
        );
    }

    #[test]
    fn invalid_expressions() {
        assert!(Toda { n: 3, a: 1, b: 0 }.eval_poincare().is_err());
        assert!(PTrunc { h: 2, n: 3 }.eval_poincare().is_err());
        assert!(MappingCone { n: 3, hopf: 2 }.eval_poincare().is_err());
        assert!(SpaceExpr::punctured(Toda { n: 2, a: 0, b: 0 })
            .validate()
            .is_err());
        assert!(Wedge(vec![]).validate().is_err());
        assert!(Wedge(vec![Sphere(2), Empty]).eval_poincare().is_err());
        assert!(matches!(
            Sphere(300).eval_poincare(),
            Err(Error::DegreeCap { .. })
        ));
        assert!(matches!(
            Sphere(10).eval_poincare_capped(8),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn toda_ring_examples() {
        let r = toda_ring(2, 1, 1).unwrap();
        assert_eq!(r.relation_strings(), vec!["u1^2 = u2", "u1*u2 = u3"]);
        // rationally P^3(2)
        assert_eq!(
            r.additive_ranks().unwrap(),
            truncated_ring(3, 2).unwrap().additive_ranks().unwrap()
        );

        let r = toda_ring(3, 0, 0).unwrap();
        assert_eq!(r.relation_strings(), vec!["u1^2 = 0", "u1*u2 = 0"]);

        let r = toda_ring(2, 5, 0).unwrap();
        assert_eq!(r.relation_strings(), vec!["u1^2 = 5*u2", "u1*u2 = 0"]);

        let err = toda_ring(3, 1, 0).unwrap_err();
        assert!(err.to_string().contains("a = 0"));
    }

    #[test]
    fn classify_type_examples() {
        assert_eq!(
            classify_type(2, 0, 3).unwrap(),
            RationalTypeLabel::ProductSpheres(2)
        );
        assert_eq!(
            classify_type(2, 1, 0).unwrap(),
            RationalTypeLabel::P2WedgeSphere(2)
        );
        assert_eq!(
            classify_type(3, 0, 0).unwrap(),
            RationalTypeLabel::WedgeThreeSpheres(3)
        );
        assert_eq!(classify_type(2, -4, 7).unwrap(), RationalTypeLabel::P3(2));
        assert!(classify_type(5, 2, 0).is_err());
    }

    #[test]
    fn mapping_cone_ring_examples() {
        for n in [2, 4, 8] {
            assert_eq!(
                mapping_cone_ring(n, -2).unwrap().1,
                ConeClass::ProjectivePlane(n)
            );
        }
        assert_eq!(
            mapping_cone_ring(2, 1).unwrap().1,
            ConeClass::ProjectivePlane(2)
        );
        assert_eq!(
            mapping_cone_ring(4, 0).unwrap().1,
            ConeClass::SphereWedge(4)
        );
        assert!(mapping_cone_ring(3, 1).is_err());
        assert_eq!(
            mapping_cone_ring(3, 0).unwrap().1,
            ConeClass::SphereWedge(3)
        );
    }

    #[test]
    fn components_and_summands() {
        let f = Wedge(vec![Sphere(0), Sphere(0), Sphere(0)]);
        assert_eq!(f.components().unwrap().len(), 4);

        let g = Wedge(vec![Sphere(2), Disjoint(vec![Sphere(4), Point])]);
        let comps = g.components().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(
            comps[0].rational_summands().unwrap(),
            vec![Summand::Sphere(2), Summand::Sphere(4)]
        );
        assert_eq!(comps[1], Point);

        assert_eq!(
            MappingCone { n: 4, hopf: -2 }.rational_summands().unwrap(),
            vec![Summand::P2(4)]
        );
        let cone_join = SpaceExpr::join(Sphere(1), Point);
        assert!(cone_join.rational_summands().unwrap().is_empty());
        assert_eq!(
            SpaceExpr::join(Empty, MappingCone { n: 2, hopf: -2 })
                .rational_summands()
                .unwrap(),
            vec![Summand::P2(2)]
        );
        assert_eq!(
            SpaceExpr::punctured(SpaceExpr::product(Sphere(2), Sphere(5)))
                .rational_summands()
                .unwrap(),
            vec![Summand::Sphere(2), Summand::Sphere(5)]
        );
    }

    fn valid_toda() -> impl Strategy<Value = (u32, i64, i64)> {
        (1u32..20, -5i64..5, -5i64..5).prop_map(|(n, a, b)| (n, if n % 2 == 1 { 0 } else { a }, b))
    }

    proptest! {
        #[test]
        fn toda_ranks_independent_of_type((n, a, b) in valid_toda()) {
            let p = Toda { n, a, b }.eval_poincare().unwrap();
            let label = classify_type(n, a, b).unwrap();
            prop_assert_eq!(&p, &label.model().eval_poincare().unwrap());
            prop_assert_eq!(p.total_rank(), 4);
            prop_assert_eq!(&toda_ring(n, a, b).unwrap().additive_ranks().unwrap(), &p);
        }

        #[test]
        fn cone_ring_matches_ranks(n in 1u32..30, h in -6i64..6) {
            let h = if n % 2 == 1 { 0 } else { h };
            let (ring, _) = mapping_cone_ring(n, h).unwrap();
            prop_assert_eq!(
                ring.additive_ranks().unwrap(),
                MappingCone { n, hopf: h }.eval_poincare().unwrap()
            );
        }

        #[test]
        fn truncated_ring_matches_ranks(n in 1u32..20, h in 1u32..6) {
            let h = if n % 2 == 1 { 1 } else { h };
            prop_assert_eq!(
                truncated_ring(h, n).unwrap().additive_ranks().unwrap(),
                PTrunc { h, n }.eval_poincare().unwrap()
            );
        }
    }
}
