//! Poincaré polynomials over the rationals.
//!
//! A [`PoincarePolynomial`] is a finitely supported map from degree to rank.
//! Unreduced polynomials describe `rk H^d(X)` directly. Reduced polynomials
//! drop the basepoint class in degree 0. The empty space has no basepoint to
//! drop: its reduced polynomial carries a single rank in degree −1, which is
//! the augmented-complex convention and makes the join rule uniform
//! (`∅ ⋆ Y = Y`, `∅ ⋆ ∅ = ∅`).

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Default upper bound on cohomological degrees accepted by evaluators.
pub const DEFAULT_DEGREE_CAP: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    ranks: BTreeMap<i32, u64>,
    reduced: bool,
}

impl PoincarePolynomial {
    /// Builds a polynomial, dropping zero ranks and checking the degree
    /// conventions of the requested flavour.
    pub fn new<I>(ranks: I, reduced: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, u64)>,
    {
        let mut map = BTreeMap::new();
        for (d, r) in ranks {
            if r == 0 {
                continue;
            }
            let slot = map.entry(d).or_insert(0u64);
            *slot = slot
                .checked_add(r)
                .ok_or_else(|| Error::Polynomial("rank overflow".into()))?;
        }
        let p = PoincarePolynomial {
            ranks: map,
            reduced,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn unreduced<I>(ranks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, u64)>,
    {
        Self::new(ranks, false)
    }

    pub fn reduced<I>(ranks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, u64)>,
    {
        Self::new(ranks, true)
    }

    /// Unreduced polynomial of the empty space (the zero polynomial).
    pub fn empty_space() -> Self {
        PoincarePolynomial {
            ranks: BTreeMap::new(),
            reduced: false,
        }
    }

    pub fn point() -> Self {
        PoincarePolynomial {
            ranks: BTreeMap::from([(0, 1)]),
            reduced: false,
        }
    }

    /// Unreduced polynomial of `S^k`; `S^0` is two points.
    pub fn sphere(k: u32) -> Result<Self> {
        let k = degree_from_u32(k)?;
        Self::unreduced([(0, 1), (k, 1)])
    }

    fn validate(&self) -> Result<()> {
        if self.reduced {
            if let Some(&r) = self.ranks.get(&-1) {
                if r != 1 || self.ranks.len() != 1 {
                    return Err(Error::Polynomial(
                        "degree -1 is reserved for the reduced empty space".into(),
                    ));
                }
            }
            if self.ranks.keys().any(|&d| d < -1) {
                return Err(Error::Polynomial("negative degree".into()));
            }
        } else if self.ranks.keys().any(|&d| d < 0) {
            return Err(Error::Polynomial(
                "unreduced polynomial with negative degree".into(),
            ));
        }
        Ok(())
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn rank(&self, degree: i32) -> u64 {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero `(degree, rank)` pairs in increasing degree.
    pub fn ranks(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.ranks.iter().map(|(&d, &r)| (d, r))
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// True for the unreduced polynomial of the empty space or the reduced
    /// polynomial `{-1: 1}`.
    pub fn is_empty_space(&self) -> bool {
        if self.reduced {
            self.rank(-1) == 1
        } else {
            self.ranks.is_empty()
        }
    }

    /// Unreduced polynomial with rank exactly 1 in degree 0.
    pub fn is_connected(&self) -> bool {
        !self.reduced && self.rank(0) == 1
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.ranks.keys().next_back().copied()
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.values().sum()
    }

    /// Alternating sum of ranks. Only meaningful for unreduced polynomials.
    pub fn euler_char(&self) -> Result<i64> {
        if self.reduced {
            return Err(Error::Polynomial(
                "euler characteristic of a reduced polynomial is ambiguous".into(),
            ));
        }
        Ok(self.alternating_sum())
    }

    /// Reduced Euler characteristic, `χ − 1` of the underlying space.
    pub fn reduced_euler_char(&self) -> Result<i64> {
        if !self.reduced {
            return Err(Error::Polynomial("expected a reduced polynomial".into()));
        }
        Ok(self.alternating_sum())
    }

    fn alternating_sum(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&d, &r)| {
                if d.rem_euclid(2) == 0 {
                    r as i64
                } else {
                    -(r as i64)
                }
            })
            .sum()
    }

    pub fn to_reduced(&self) -> Result<Self> {
        if self.reduced {
            return Err(Error::Polynomial("polynomial is already reduced".into()));
        }
        if self.ranks.is_empty() {
            return Ok(PoincarePolynomial {
                ranks: BTreeMap::from([(-1, 1)]),
                reduced: true,
            });
        }
        let mut ranks = self.ranks.clone();
        match ranks.get_mut(&0) {
            Some(r) if *r > 1 => *r -= 1,
            Some(_) => {
                ranks.remove(&0);
            }
            None => {
                return Err(Error::Polynomial(
                    "nonempty space without degree-0 class".into(),
                ))
            }
        }
        Ok(PoincarePolynomial {
            ranks,
            reduced: true,
        })
    }

    pub fn to_unreduced(&self) -> Result<Self> {
        if !self.reduced {
            return Err(Error::Polynomial("polynomial is already unreduced".into()));
        }
        if self.is_empty_space() {
            return Ok(Self::empty_space());
        }
        let mut ranks = self.ranks.clone();
        *ranks.entry(0).or_insert(0) += 1;
        Ok(PoincarePolynomial {
            ranks,
            reduced: false,
        })
    }

    /// Multiplies by `t^k`, keeping the reduced flag.
    pub fn shift(&self, k: i32) -> Result<Self> {
        let ranks = self
            .ranks
            .iter()
            .map(|(&d, &r)| {
                d.checked_add(k)
                    .map(|d| (d, r))
                    .ok_or_else(|| Error::Polynomial("degree overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ranks, self.reduced)
    }

    pub fn check_cap(&self, cap: u32) -> Result<()> {
        match self.max_degree() {
            Some(d) if d as i64 > cap as i64 => Err(Error::DegreeCap {
                degree: d as i64,
                cap,
            }),
            _ => Ok(()),
        }
    }

    /// `t^shift · P(t) · Q(t)`.
    fn formal_product(&self, other: &Self, shift: i32, reduced: bool) -> Result<Self> {
        let mut out: BTreeMap<i32, u64> = BTreeMap::new();
        for (&d1, &r1) in &self.ranks {
            for (&d2, &r2) in &other.ranks {
                let d = d1
                    .checked_add(d2)
                    .and_then(|d| d.checked_add(shift))
                    .ok_or_else(|| Error::Polynomial("degree overflow".into()))?;
                let r = r1
                    .checked_mul(r2)
                    .ok_or_else(|| Error::Polynomial("rank overflow".into()))?;
                let slot = out.entry(d).or_insert(0);
                *slot = slot
                    .checked_add(r)
                    .ok_or_else(|| Error::Polynomial("rank overflow".into()))?;
            }
        }
        Self::new(out, reduced)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&d, &r) in &self.ranks {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (r, d) {
                (r, 0) => write!(f, "{r}")?,
                (1, 1) => f.write_str("t")?,
                (r, 1) => write!(f, "{r}t")?,
                (1, d) => write!(f, "t^{d}")?,
                (r, d) => write!(f, "{r}t^{d}")?,
            }
        }
        if self.reduced {
            f.write_str(" (reduced)")?;
        }
        Ok(())
    }
}

pub(crate) fn degree_from_u32(k: u32) -> Result<i32> {
    i32::try_from(k).map_err(|_| Error::Polynomial(format!("degree {k} out of range")))
}

pub fn euler_char(p: &PoincarePolynomial) -> Result<i64> {
    p.euler_char()
}

pub fn total_rank(p: &PoincarePolynomial) -> u64 {
    p.total_rank()
}

/// Reduced polynomial of `X ⋆ Y`: `t · P̃(t) · Q̃(t)`.
pub fn join_poly(p: &PoincarePolynomial, q: &PoincarePolynomial) -> Result<PoincarePolynomial> {
    if !p.reduced || !q.reduced {
        return Err(Error::Polynomial("join_poly expects reduced inputs".into()));
    }
    p.formal_product(q, 1, true)
}

/// Wedge of connected spaces; rejects any summand that is not connected.
pub fn wedge_poly(ps: &[PoincarePolynomial]) -> Result<PoincarePolynomial> {
    if ps.is_empty() {
        return Err(Error::Polynomial("wedge of zero spaces".into()));
    }
    if let Some(i) = ps.iter().position(|p| !p.is_connected()) {
        return Err(Error::Polynomial(format!(
            "wedge summand {i} is not connected; the basepoint component is ambiguous"
        )));
    }
    pointed_wedge_poly(ps)
}

/// Wedge of nonempty pointed spaces, not necessarily connected: reduced ranks
/// add. Agrees with [`wedge_poly`] on connected inputs.
pub fn pointed_wedge_poly(ps: &[PoincarePolynomial]) -> Result<PoincarePolynomial> {
    if ps.is_empty() {
        return Err(Error::Polynomial("wedge of zero spaces".into()));
    }
    let mut acc: Vec<(i32, u64)> = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        if p.reduced {
            return Err(Error::Polynomial("wedge expects unreduced inputs".into()));
        }
        if p.is_empty_space() {
            return Err(Error::Polynomial(format!(
                "wedge summand {i} is empty and has no basepoint"
            )));
        }
        acc.extend(p.to_reduced()?.ranks());
    }
    PoincarePolynomial::reduced(acc)?.to_unreduced()
}

/// Disjoint union: unreduced ranks add.
pub fn disjoint_poly(ps: &[PoincarePolynomial]) -> Result<PoincarePolynomial> {
    if ps.iter().any(|p| p.reduced) {
        return Err(Error::Polynomial(
            "disjoint union expects unreduced inputs".into(),
        ));
    }
    PoincarePolynomial::unreduced(ps.iter().flat_map(|p| p.ranks()))
}

/// Künneth product of unreduced polynomials.
pub fn product_poly(p: &PoincarePolynomial, q: &PoincarePolynomial) -> Result<PoincarePolynomial> {
    if p.reduced || q.reduced {
        return Err(Error::Polynomial(
            "product_poly expects unreduced inputs".into(),
        ));
    }
    p.formal_product(q, 0, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn un(pairs: &[(i32, u64)]) -> PoincarePolynomial {
        PoincarePolynomial::unreduced(pairs.iter().copied()).unwrap()
    }

    fn red(pairs: &[(i32, u64)]) -> PoincarePolynomial {
        PoincarePolynomial::reduced(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(
            euler_char(&un(&[(0, 1), (2, 1), (4, 1), (6, 1)])).unwrap(),
            4
        );
        assert_eq!(euler_char(&un(&[(0, 1)])).unwrap(), 1);
        assert_eq!(
            euler_char(&un(&[(0, 1), (3, 1), (6, 1), (9, 1)])).unwrap(),
            0
        );
        assert!(euler_char(&red(&[(2, 1)])).is_err());
    }

    #[test]
    fn total_rank_examples() {
        assert_eq!(total_rank(&un(&[(0, 1), (3, 1), (6, 1), (9, 1)])), 4);
        assert_eq!(total_rank(&PoincarePolynomial::empty_space()), 0);
        // S^r ⊔ pt ⊔ pt
        let f = disjoint_poly(&[
            PoincarePolynomial::sphere(4).unwrap(),
            PoincarePolynomial::point(),
            PoincarePolynomial::point(),
        ])
        .unwrap();
        assert_eq!(total_rank(&f), 4);
    }

    #[test]
    fn join_examples() {
        let s0 = PoincarePolynomial::sphere(0).unwrap().to_reduced().unwrap();
        let s1 = PoincarePolynomial::sphere(1).unwrap().to_reduced().unwrap();
        let x = un(&[(0, 1), (2, 1), (5, 2)]).to_reduced().unwrap();
        assert_eq!(join_poly(&s0, &x).unwrap(), red(&[(3, 1), (6, 2)]));
        assert_eq!(join_poly(&s1, &s1).unwrap(), red(&[(3, 1)]));

        // contractible factor kills everything
        let cone = PoincarePolynomial::point().to_reduced().unwrap();
        assert!(join_poly(&cone, &x).unwrap().is_zero());

        // the empty space is the unit of the join
        let empty = PoincarePolynomial::empty_space().to_reduced().unwrap();
        assert_eq!(join_poly(&empty, &x).unwrap(), x);
        assert_eq!(join_poly(&empty, &empty).unwrap(), empty);

        assert!(join_poly(&un(&[(0, 1)]), &s0).is_err());
    }

    #[test]
    fn wedge_examples() {
        let spheres: Vec<_> = [2, 4, 6]
            .iter()
            .map(|&k| PoincarePolynomial::sphere(k).unwrap())
            .collect();
        assert_eq!(
            wedge_poly(&spheres).unwrap(),
            un(&[(0, 1), (2, 1), (4, 1), (6, 1)])
        );
        assert_eq!(wedge_poly(&spheres[..1]).unwrap(), spheres[0]);
        let p2 = un(&[(0, 1), (2, 1), (4, 1)]);
        let s6 = PoincarePolynomial::sphere(6).unwrap();
        assert_eq!(
            wedge_poly(&[p2, s6]).unwrap(),
            un(&[(0, 1), (2, 1), (4, 1), (6, 1)])
        );

        let s0 = PoincarePolynomial::sphere(0).unwrap();
        assert!(wedge_poly(&[s0.clone(), spheres[0].clone()]).is_err());
        // pointed wedge of three copies of S^0 is four points
        let four = pointed_wedge_poly(&[s0.clone(), s0.clone(), s0]).unwrap();
        assert_eq!(four, un(&[(0, 4)]));
    }

    #[test]
    fn product_examples() {
        let s2 = PoincarePolynomial::sphere(2).unwrap();
        let s4 = PoincarePolynomial::sphere(4).unwrap();
        assert_eq!(
            product_poly(&s2, &s4).unwrap(),
            un(&[(0, 1), (2, 1), (4, 1), (6, 1)])
        );
        assert_eq!(product_poly(&PoincarePolynomial::point(), &s4).unwrap(), s4);
        let s1 = PoincarePolynomial::sphere(1).unwrap();
        assert_eq!(
            product_poly(&s1, &s1).unwrap(),
            un(&[(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn double_suspension_of_sphere() {
        let s0 = PoincarePolynomial::sphere(0).unwrap().to_reduced().unwrap();
        for k in 0..6 {
            let s = PoincarePolynomial::sphere(k).unwrap().to_reduced().unwrap();
            let twice = join_poly(&s0, &join_poly(&s0, &s).unwrap()).unwrap();
            assert_eq!(
                twice,
                PoincarePolynomial::sphere(k + 2)
                    .unwrap()
                    .to_reduced()
                    .unwrap()
            );
        }
    }

    #[test]
    fn reserved_degree_rejected() {
        assert!(PoincarePolynomial::reduced([(-1, 1), (2, 1)]).is_err());
        assert!(PoincarePolynomial::reduced([(-1, 2)]).is_err());
        assert!(PoincarePolynomial::unreduced([(-1, 1)]).is_err());
    }

    fn connected_poly() -> impl Strategy<Value = PoincarePolynomial> {
        prop::collection::btree_map(1i32..12, 1u64..4, 0..4)
            .prop_map(|m| PoincarePolynomial::unreduced(std::iter::once((0, 1)).chain(m)).unwrap())
    }

    fn nonempty_poly() -> impl Strategy<Value = PoincarePolynomial> {
        prop::collection::btree_map(0i32..12, 1u64..4, 0..4).prop_map(|m| {
            let mut m = m;
            *m.entry(0).or_insert(0) += 1;
            PoincarePolynomial::unreduced(m).unwrap()
        })
    }

    fn any_space_poly() -> impl Strategy<Value = PoincarePolynomial> {
        prop_oneof![
            1 => Just(PoincarePolynomial::empty_space()),
            8 => nonempty_poly(),
        ]
    }

    proptest! {
        #[test]
        fn join_multiplies_total_rank(p in any_space_poly(), q in any_space_poly()) {
            let (rp, rq) = (p.to_reduced().unwrap(), q.to_reduced().unwrap());
            let j = join_poly(&rp, &rq).unwrap();
            prop_assert_eq!(j.total_rank(), rp.total_rank() * rq.total_rank());
        }

        #[test]
        fn join_euler_characteristic(p in any_space_poly(), q in any_space_poly()) {
            let (cp, cq) = (p.euler_char().unwrap(), q.euler_char().unwrap());
            let j = join_poly(&p.to_reduced().unwrap(), &q.to_reduced().unwrap()).unwrap();
            let cj = j.to_unreduced().unwrap().euler_char().unwrap();
            prop_assert_eq!(cj, cp + cq - cp * cq);
        }

        #[test]
        fn wedge_euler_characteristic(ps in prop::collection::vec(connected_poly(), 1..5)) {
            let w = wedge_poly(&ps).unwrap();
            let sum: i64 = ps.iter().map(|p| p.euler_char().unwrap()).sum();
            prop_assert_eq!(w.euler_char().unwrap(), sum - (ps.len() as i64 - 1));
        }

        #[test]
        fn product_euler_characteristic(p in any_space_poly(), q in any_space_poly()) {
            let prod = product_poly(&p, &q).unwrap();
            prop_assert_eq!(
                prod.euler_char().unwrap(),
                p.euler_char().unwrap() * q.euler_char().unwrap()
            );
        }

        #[test]
        fn reduce_round_trip(p in any_space_poly()) {
            prop_assert_eq!(p.to_reduced().unwrap().to_unreduced().unwrap(), p);
        }
    }
}
