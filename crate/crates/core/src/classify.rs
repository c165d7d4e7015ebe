//! Enumeration of fixed-point-set types admissible for a circle action on a
//! Toda space of type `(a, 0)`.
//!
//! A candidate fixed set is a multiset of connected components drawn from a
//! fixed catalog (points, spheres, wedges of two or three spheres, `P^2(r)`
//! and `P^2(r) ∨ S^s`). The enumerator keeps exactly the multisets whose
//! total rank and Euler characteristic are compatible with the ambient
//! space:
//!
//! - total rank equal to 4 when the space is totally non-homologous to zero
//!   in its Borel construction, at most 3 otherwise;
//! - Euler characteristic equal to that of the ambient space, 4 for even `n`
//!   and 0 for odd `n`.
//!
//! [`theorem_reference_list`] holds the same classification written out by
//! hand, case by case, so that [`compare`] can check one against the other.

use std::collections::BTreeSet;
use std::fmt;

use crate::space::{SpaceExpr, Summand};
use crate::{Error, Result};

/// A connected rational type from the component catalog.
///
/// The derived order is the canonical one: variant first
/// (`Point < Sphere < WedgeSpheres < P2 < P2WedgeSphere`), then parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentDescriptor {
    Point,
    Sphere(u32),
    /// Two or three sphere dimensions, ascending.
    WedgeSpheres(Vec<u32>),
    P2(u32),
    P2WedgeSphere {
        r: u32,
        s: u32,
    },
}

impl ComponentDescriptor {
    pub fn wedge_spheres(mut dims: Vec<u32>) -> Self {
        dims.sort_unstable();
        ComponentDescriptor::WedgeSpheres(dims)
    }

    /// Unreduced total rank.
    pub fn total_rank(&self) -> u64 {
        match self {
            ComponentDescriptor::Point => 1,
            ComponentDescriptor::Sphere(_) => 2,
            ComponentDescriptor::WedgeSpheres(d) => 1 + d.len() as u64,
            ComponentDescriptor::P2(_) => 3,
            ComponentDescriptor::P2WedgeSphere { .. } => 4,
        }
    }

    pub fn euler_char(&self) -> i64 {
        let sign = |d: u32| if d.is_multiple_of(2) { 1 } else { -1 };
        match self {
            ComponentDescriptor::Point => 1,
            ComponentDescriptor::Sphere(r) => 1 + sign(*r),
            ComponentDescriptor::WedgeSpheres(d) => 1 + d.iter().map(|&r| sign(r)).sum::<i64>(),
            ComponentDescriptor::P2(r) => 2 + sign(*r),
            ComponentDescriptor::P2WedgeSphere { r, s } => 2 + sign(*r) + sign(*s),
        }
    }

    fn from_summands(mut summands: Vec<Summand>) -> Result<Self> {
        summands.sort();
        let spheres: Option<Vec<u32>> = summands
            .iter()
            .map(|s| match s {
                Summand::Sphere(k) => Some(*k),
                _ => None,
            })
            .collect();
        Ok(match (summands.as_slice(), spheres) {
            ([], _) => ComponentDescriptor::Point,
            (_, Some(dims)) if dims.len() == 1 => ComponentDescriptor::Sphere(dims[0]),
            (_, Some(dims)) if dims.len() <= 3 => ComponentDescriptor::wedge_spheres(dims),
            ([Summand::P2(r)], _) => ComponentDescriptor::P2(*r),
            ([Summand::Sphere(s), Summand::P2(r)], _) => {
                ComponentDescriptor::P2WedgeSphere { r: *r, s: *s }
            }
            _ => {
                return Err(Error::InvalidSpace(format!(
                    "component with summands {summands:?} is outside the catalog"
                )))
            }
        })
    }
}

impl fmt::Display for ComponentDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentDescriptor::Point => f.write_str("pt"),
            ComponentDescriptor::Sphere(r) => write!(f, "S{r}"),
            ComponentDescriptor::WedgeSpheres(d) => {
                let parts: Vec<String> = d.iter().map(|r| format!("S{r}")).collect();
                f.write_str(&parts.join("∨"))
            }
            ComponentDescriptor::P2(r) => write!(f, "P2({r})"),
            ComponentDescriptor::P2WedgeSphere { r, s } => write!(f, "P2({r})∨S{s}"),
        }
    }
}

/// Multiset of components in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FixedSetType {
    components: Vec<ComponentDescriptor>,
}

impl FixedSetType {
    pub fn new(mut components: Vec<ComponentDescriptor>) -> Self {
        components.sort();
        FixedSetType { components }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[ComponentDescriptor] {
        &self.components
    }

    pub fn total_rank(&self) -> u64 {
        self.components
            .iter()
            .map(ComponentDescriptor::total_rank)
            .sum()
    }

    pub fn euler_char(&self) -> i64 {
        self.components
            .iter()
            .map(ComponentDescriptor::euler_char)
            .sum()
    }

    /// Reads the component types off a fixed-set expression.
    pub fn from_space(f: &SpaceExpr) -> Result<Self> {
        let components = f
            .components()?
            .iter()
            .map(|c| ComponentDescriptor::from_summands(c.rational_summands()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(components))
    }
}

impl fmt::Display for FixedSetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ⊔ "))
    }
}

/// Constraints on `P^2(r)` components that rank and Euler-characteristic
/// bookkeeping cannot derive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Axioms {
    /// `r` even. An odd-degree generator squares to zero rationally, so an
    /// odd `r` would not be a projective plane at all.
    pub p2_even: bool,
    /// `r ≤ n`, the range stated for the `P^2(r) ⊔ pt` and `S^s ∨ P^2(r)`
    /// cases. Without it `r` ranges up to `2r ≤ 3n`.
    pub p2_at_most_n: bool,
}

impl Default for Axioms {
    fn default() -> Self {
        Axioms {
            p2_even: true,
            p2_at_most_n: true,
        }
    }
}

impl Axioms {
    fn p2_range(&self, n: u32) -> impl Iterator<Item = u32> + '_ {
        let hi = if self.p2_at_most_n { n } else { 3 * n / 2 };
        let even = self.p2_even;
        (1..=hi).filter(move |r| !even || r % 2 == 0)
    }

    fn allows_p2(&self, n: u32, r: u32) -> bool {
        self.p2_range(n).any(|x| x == r)
    }
}

/// Euler characteristic of a Toda space of dimension parameter `n`.
pub fn ambient_euler_char(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        4
    } else {
        0
    }
}

fn catalog(n: u32, axioms: &Axioms) -> Vec<ComponentDescriptor> {
    let top = 3 * n;
    let mut out = vec![ComponentDescriptor::Point];
    out.extend((1..=top).map(ComponentDescriptor::Sphere));
    for r in 1..=top {
        for s in r..=top {
            out.push(ComponentDescriptor::WedgeSpheres(vec![r, s]));
            for t in s..=top {
                out.push(ComponentDescriptor::WedgeSpheres(vec![r, s, t]));
            }
        }
    }
    for r in axioms.p2_range(n) {
        out.push(ComponentDescriptor::P2(r));
        out.extend((1..=top).map(|s| ComponentDescriptor::P2WedgeSphere { r, s }));
    }
    out.sort();
    out
}

/// All fixed-set types compatible with the rank criterion and `χ(F) = χ(X)`.
pub fn enumerate_fixed_types(n: u32, tnhz: bool, axioms: &Axioms) -> BTreeSet<FixedSetType> {
    let cat = catalog(n, axioms);
    let chi = ambient_euler_char(n);
    let budget = 4u64;
    let mut out = BTreeSet::new();
    let mut stack = Vec::new();
    extend_multisets(
        &cat,
        0,
        budget,
        &mut stack,
        &mut |comps: &[ComponentDescriptor]| {
            let rank: u64 = comps.iter().map(ComponentDescriptor::total_rank).sum();
            let rank_ok = if tnhz { rank == budget } else { rank < budget };
            let euler: i64 = comps.iter().map(ComponentDescriptor::euler_char).sum();
            if rank_ok && euler == chi {
                out.insert(FixedSetType::new(comps.to_vec()));
            }
        },
    );
    out
}

/// Visits every multiset (as a non-decreasing index sequence starting at
/// `from`) whose total rank is at most `budget`.
fn extend_multisets(
    cat: &[ComponentDescriptor],
    from: usize,
    budget: u64,
    stack: &mut Vec<ComponentDescriptor>,
    visit: &mut impl FnMut(&[ComponentDescriptor]),
) {
    visit(stack);
    for i in from..cat.len() {
        let r = cat[i].total_rank();
        if r > budget {
            continue;
        }
        stack.push(cat[i].clone());
        extend_multisets(cat, i, budget - r, stack, visit);
        stack.pop();
    }
}

/// The classification written out case by case, with the parity
/// refinements forced by the Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TheoremReference {
    pub cases: BTreeSet<FixedSetType>,
    /// Instances of the stated cases that the configured [`Axioms`] rule out.
    pub axiom_excluded: BTreeSet<FixedSetType>,
}

pub fn theorem_reference_list(n: u32, tnhz: bool, axioms: &Axioms) -> TheoremReference {
    use ComponentDescriptor::*;

    let mut reference = TheoremReference::default();
    let top = 3 * n;
    let even_n = n.is_multiple_of(2);

    if !tnhz {
        // even n is always TNHZ; odd n leaves the empty set or one odd sphere
        if !even_n {
            reference.cases.insert(FixedSetType::empty());
            for r in (1..=top).step_by(2) {
                reference.cases.insert(FixedSetType::new(vec![Sphere(r)]));
            }
        }
        return reference;
    }

    let add_p2 = |r: u32, fst: FixedSetType, reference: &mut TheoremReference| {
        if axioms.allows_p2(n, r) {
            reference.cases.insert(fst);
        } else {
            reference.axiom_excluded.insert(fst);
        }
    };

    // (1) four acyclic components, n even
    if even_n {
        reference.cases.insert(FixedSetType::new(vec![Point; 4]));
    }

    // (2) S^r ⊔ pt ⊔ pt, n and r even
    if even_n {
        for r in (2..=top).step_by(2) {
            reference
                .cases
                .insert(FixedSetType::new(vec![Sphere(r), Point, Point]));
        }
    }

    // (3) two components; r, s share the parity of n
    let same_parity: Vec<u32> = (1..=top).filter(|r| r % 2 == n % 2).collect();
    for (i, &r) in same_parity.iter().enumerate() {
        for &s in &same_parity[i..] {
            reference
                .cases
                .insert(FixedSetType::new(vec![Sphere(r), Sphere(s)]));
            reference.cases.insert(FixedSetType::new(vec![
                ComponentDescriptor::wedge_spheres(vec![r, s]),
                Point,
            ]));
        }
    }
    if even_n {
        for r in (2..=n).step_by(2) {
            add_p2(r, FixedSetType::new(vec![P2(r), Point]), &mut reference);
        }
    }

    // (4) one component
    for r in 1..=top {
        for s in r..=top {
            for t in s..=top {
                let evens = [r, s, t].iter().filter(|d| *d % 2 == 0).count();
                let ok = if even_n { evens == 3 } else { evens == 1 };
                if ok {
                    reference.cases.insert(FixedSetType::new(vec![
                        ComponentDescriptor::wedge_spheres(vec![r, s, t]),
                    ]));
                }
            }
        }
    }
    // S^s ∨ P^2(r): both even for even n, both odd for odd n
    for r in 1..=n {
        for s in 1..=top {
            if r % 2 == n % 2 && s % 2 == n % 2 {
                add_p2(
                    r,
                    FixedSetType::new(vec![P2WedgeSphere { r, s }]),
                    &mut reference,
                );
            }
        }
    }
    reference
}

/// Symmetric difference of two sets of fixed-set types.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diff {
    pub only_left: Vec<FixedSetType>,
    pub only_right: Vec<FixedSetType>,
}

impl Diff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

pub fn compare(lhs: &BTreeSet<FixedSetType>, rhs: &BTreeSet<FixedSetType>) -> Diff {
    Diff {
        only_left: lhs.difference(rhs).cloned().collect(),
        only_right: rhs.difference(lhs).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentDescriptor::*;

    fn fst(c: Vec<ComponentDescriptor>) -> FixedSetType {
        FixedSetType::new(c)
    }

    fn names(s: &BTreeSet<FixedSetType>) -> Vec<String> {
        s.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn odd_n_non_tnhz() {
        let got = enumerate_fixed_types(3, false, &Axioms::default());
        assert_eq!(names(&got), vec!["∅", "S1", "S3", "S5", "S7", "S9"]);
    }

    #[test]
    fn even_n_non_tnhz_is_empty() {
        assert!(enumerate_fixed_types(2, false, &Axioms::default()).is_empty());
    }

    #[test]
    fn even_n_tnhz_contents() {
        let got = enumerate_fixed_types(2, true, &Axioms::default());
        assert!(got.contains(&fst(vec![Point; 4])));
        for r in [2, 4, 6] {
            assert!(got.contains(&fst(vec![Sphere(r), Point, Point])));
        }
        for r in [1, 3, 5] {
            assert!(!got.contains(&fst(vec![Sphere(r), Point, Point])));
        }
        assert!(got
            .iter()
            .all(|f| f.total_rank() == 4 && f.euler_char() == 4));
        assert!(got
            .iter()
            .flat_map(|f| f.components())
            .all(|c| !matches!(c, Sphere(r) if r % 2 == 1)));
    }

    #[test]
    fn reference_examples() {
        let r2 = theorem_reference_list(2, true, &Axioms::default());
        let p2_point: Vec<_> = r2
            .cases
            .iter()
            .filter(|f| f.components().iter().any(|c| matches!(c, P2(_))))
            .collect();
        assert_eq!(p2_point, vec![&fst(vec![Point, P2(2)])]);

        let r3 = theorem_reference_list(3, true, &Axioms::default());
        let triples: Vec<_> = r3
            .cases
            .iter()
            .filter_map(|f| match f.components() {
                [WedgeSpheres(d)] if d.len() == 3 => Some(d.clone()),
                _ => None,
            })
            .collect();
        assert!(!triples.is_empty());
        assert!(triples
            .iter()
            .all(|d| d.iter().filter(|r| *r % 2 == 0).count() == 1));
        // odd-r projective planes are stated but excluded by the parity axiom
        assert!(r3
            .axiom_excluded
            .contains(&fst(vec![P2WedgeSphere { r: 1, s: 3 }])));
    }

    #[test]
    fn enumerator_matches_reference() {
        for n in 1..=6 {
            for tnhz in [false, true] {
                let axioms = Axioms::default();
                let diff = compare(
                    &enumerate_fixed_types(n, tnhz, &axioms),
                    &theorem_reference_list(n, tnhz, &axioms).cases,
                );
                assert!(diff.is_empty(), "n={n} tnhz={tnhz}: {diff:?}");
            }
        }
    }

    #[test]
    fn relaxed_parity_surfaces_odd_projective_planes() {
        let axioms = Axioms {
            p2_even: false,
            p2_at_most_n: true,
        };
        let reference = theorem_reference_list(3, true, &axioms);
        assert!(reference.axiom_excluded.is_empty());
        let diff = compare(&enumerate_fixed_types(3, true, &axioms), &reference.cases);
        assert!(diff.is_empty(), "{diff:?}");
        assert!(reference
            .cases
            .contains(&fst(vec![P2WedgeSphere { r: 1, s: 1 }])));
    }

    #[test]
    fn relaxed_range_shows_up_in_diff() {
        let axioms = Axioms {
            p2_even: true,
            p2_at_most_n: false,
        };
        let diff = compare(
            &enumerate_fixed_types(2, true, &axioms),
            &theorem_reference_list(2, true, &axioms).cases,
        );
        // 2r ≤ 3n = 6 admits nothing new at n = 2; at n = 4, r = 6 appears
        assert!(diff.is_empty());
        let diff = compare(
            &enumerate_fixed_types(4, true, &axioms),
            &theorem_reference_list(4, true, &axioms).cases,
        );
        assert!(diff.only_left.contains(&fst(vec![Point, P2(6)])));
        assert!(diff.only_right.is_empty());
    }

    #[test]
    fn emitted_types_respect_rank_and_euler() {
        for n in 1..=5 {
            let chi = ambient_euler_char(n);
            for f in enumerate_fixed_types(n, true, &Axioms::default()) {
                assert_eq!(f.total_rank(), 4);
                assert_eq!(f.euler_char(), chi);
            }
            for f in enumerate_fixed_types(n, false, &Axioms::default()) {
                assert!(f.total_rank() <= 3);
                assert_eq!(f.euler_char(), chi);
            }
        }
    }

    #[test]
    fn canonical_order_and_display() {
        let f = fst(vec![
            P2(2),
            Point,
            ComponentDescriptor::wedge_spheres(vec![4, 2]),
            Sphere(3),
        ]);
        assert_eq!(f.to_string(), "pt ⊔ S3 ⊔ S2∨S4 ⊔ P2(2)");
        assert_eq!(FixedSetType::empty().to_string(), "∅");
        assert!(compare(&BTreeSet::from([f.clone()]), &BTreeSet::from([f])).is_empty());
    }

    #[test]
    fn from_space_reads_components() {
        use crate::space::SpaceExpr as S;
        let f = S::Wedge(vec![
            S::Sphere(2),
            S::Disjoint(vec![S::Sphere(4), S::Point]),
        ]);
        assert_eq!(
            FixedSetType::from_space(&f).unwrap(),
            fst(vec![Point, ComponentDescriptor::wedge_spheres(vec![2, 4])])
        );
        let g = S::Wedge(vec![S::Sphere(0), S::MappingCone { n: 2, hopf: -2 }]);
        assert_eq!(
            FixedSetType::from_space(&g).unwrap(),
            fst(vec![Point, P2(2)])
        );
        assert!(FixedSetType::from_space(&S::product(S::Sphere(2), S::Sphere(2))).is_err());
        assert_eq!(
            FixedSetType::from_space(&S::Empty).unwrap(),
            FixedSetType::empty()
        );
    }
}
