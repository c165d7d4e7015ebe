//! Finite presentations of graded-commutative rational algebras.
//!
//! The free algebra on the generators is graded commutative, so odd-degree
//! generators square to zero without any explicit relation. Relations are
//! homogeneous; monomials above `top_degree` vanish.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{self, SparseColumn};
use crate::graded::PoincarePolynomial;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Exponent vector indexed like the presentation's generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Monomial,
    /// Linear combination of monomials; empty means `lhs = 0`.
    pub rhs: Vec<(i64, Monomial)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingParams {
    Toda { n: u32, a: i64, b: i64 },
    Truncated { n: u32, h: u32 },
    MappingCone { n: u32, hopf: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    top_degree: u32,
    params: RingParams,
}

impl RingPresentation {
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<Relation>,
        top_degree: u32,
        params: RingParams,
    ) -> Result<Self> {
        let p = RingPresentation {
            generators,
            relations,
            top_degree,
            params,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    /// Index of the generator with this name.
    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Monomial from `(generator name, exponent)` pairs.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial> {
        let mut exps = vec![0; self.generators.len()];
        for &(name, e) in factors {
            let i = self
                .generator(name)
                .ok_or_else(|| Error::InvalidRing(format!("unknown generator `{name}`")))?;
            exps[i] += e;
        }
        Ok(Monomial(exps))
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as u64 * g.degree as u64)
            .sum()
    }

    fn is_odd(&self, i: usize) -> bool {
        self.generators[i].degree % 2 == 1
    }

    fn validate(&self) -> Result<()> {
        let k = self.generators.len();
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidRing(format!(
                    "generator `{}` has degree 0",
                    g.name
                )));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidRing(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        for rel in &self.relations {
            let all = std::iter::once(&rel.lhs).chain(rel.rhs.iter().map(|(_, m)| m));
            for m in all {
                if m.0.len() != k {
                    return Err(Error::InvalidRing(
                        "relation references undeclared generators".into(),
                    ));
                }
            }
            let d = self.degree_of(&rel.lhs);
            if rel.rhs.iter().any(|(_, m)| self.degree_of(m) != d) {
                return Err(Error::InvalidRing("inhomogeneous relation".into()));
            }
            if self.vanishes_freely(&rel.lhs)
                && rel
                    .rhs
                    .iter()
                    .any(|(c, m)| *c != 0 && !self.vanishes_freely(m))
            {
                let name = rel
                    .lhs
                    .0
                    .iter()
                    .position(|&e| e > 1)
                    .map(|i| self.generators[i].name.clone())
                    .unwrap_or_default();
                return Err(Error::InvalidRing(format!(
                    "odd-degree generator `{name}` must square to zero over the rationals"
                )));
            }
        }
        Ok(())
    }

    /// A monomial is zero in the free graded-commutative algebra when an odd
    /// generator appears more than once.
    fn vanishes_freely(&self, m: &Monomial) -> bool {
        m.0.iter()
            .enumerate()
            .any(|(i, &e)| e > 1 && self.is_odd(i))
    }

    /// Monomials of the free graded-commutative algebra in degree `d`.
    fn basis_in_degree(&self, d: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.generators.len()];
        self.fill_basis(0, d, &mut cur, &mut out);
        out
    }

    fn fill_basis(&self, i: usize, remaining: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let deg = self.generators[i].degree as u64;
        let max_e = remaining / deg;
        let max_e = if self.is_odd(i) { max_e.min(1) } else { max_e };
        for e in 0..=max_e {
            cur[i] = e as u32;
            self.fill_basis(i + 1, remaining - e * deg, cur, out);
        }
        cur[i] = 0;
    }

    /// Graded-commutative product `left · right`, with its Koszul sign, or
    /// `None` when it vanishes.
    fn multiply(&self, left: &Monomial, right: &Monomial) -> Option<(i64, Monomial)> {
        let mut sign = 1i64;
        for (j, &ej) in right.0.iter().enumerate() {
            if ej == 0 || !self.is_odd(j) {
                continue;
            }
            let passes = left
                .0
                .iter()
                .enumerate()
                .filter(|&(i, &ei)| i > j && ei > 0 && self.is_odd(i))
                .count();
            if passes % 2 == 1 {
                sign = -sign;
            }
        }
        let m = Monomial(left.0.iter().zip(&right.0).map(|(a, b)| a + b).collect());
        if self.vanishes_freely(&m) {
            None
        } else {
            Some((sign, m))
        }
    }

    /// Rank of the quotient algebra in degree `d`.
    pub fn rank_in_degree(&self, d: u64) -> Result<u64> {
        if d > self.top_degree as u64 {
            return Ok(0);
        }
        let basis = self.basis_in_degree(d);
        if basis.is_empty() {
            return Ok(0);
        }
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut columns: Vec<SparseColumn> = Vec::new();
        for rel in &self.relations {
            let e = self.degree_of(&rel.lhs);
            if e > d {
                continue;
            }
            for m in self.basis_in_degree(d - e) {
                let mut col = SparseColumn::new();
                let terms =
                    std::iter::once((1i64, &rel.lhs)).chain(rel.rhs.iter().map(|(c, t)| (-c, t)));
                for (coef, term) in terms {
                    if coef == 0 {
                        continue;
                    }
                    if let Some((sign, prod)) = self.multiply(&m, term) {
                        let row = index[&prod];
                        let slot = col.entry(row).or_insert_with(BigRational::zero);
                        *slot += BigRational::from_integer(BigInt::from(sign * coef));
                    }
                }
                columns.push(col);
            }
        }
        let rank = exact::column_rank(columns, exact::DEFAULT_ENTRY_BITS)?;
        Ok((basis.len() - rank) as u64)
    }

    /// Additive ranks of the quotient algebra as an unreduced polynomial.
    pub fn additive_ranks(&self) -> Result<PoincarePolynomial> {
        let mut ranks = Vec::new();
        for d in 0..=self.top_degree as u64 {
            let r = self.rank_in_degree(d)?;
            ranks.push((d as i32, r));
        }
        PoincarePolynomial::unreduced(ranks)
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .zip(&self.generators)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| {
                    if e == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{e}", g.name)
                    }
                })
                .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable relations, e.g. `u1^2 = 5*u2`.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|rel| {
                let rhs: Vec<String> = rel
                    .rhs
                    .iter()
                    .filter(|(c, _)| *c != 0)
                    .map(|(c, m)| match c {
                        1 => self.fmt_monomial(m),
                        -1 => format!("-{}", self.fmt_monomial(m)),
                        c => format!("{c}*{}", self.fmt_monomial(m)),
                    })
                    .collect();
                let rhs = if rhs.is_empty() {
                    "0".into()
                } else {
                    rhs.join(" + ")
                };
                format!("{} = {rhs}", self.fmt_monomial(&rel.lhs))
            })
            .collect()
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}[{}]", g.name, g.degree))
            .collect();
        write!(
            f,
            "Q<{}> / ({}; deg > {} = 0)",
            gens.join(", "),
            self.relation_strings().join(", "),
            self.top_degree
        )
    }
}
