//! Finite simplicial models and their reduced rational homology.
//!
//! This module is an independent check on [`crate::space`]: it never looks
//! at Poincaré-polynomial rules, only at simplices and boundary-matrix ranks
//! computed exactly over the rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{self, SparseColumn};
use crate::graded::PoincarePolynomial;
use crate::space::SpaceExpr;
use crate::{Error, Result};

/// Reduced Betti numbers by degree. The empty complex has rank 1 in degree −1.
pub type RankVector = PoincarePolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexCaps {
    pub max_vertices: usize,
    pub max_simplices: usize,
    pub max_sphere_dim: u32,
    pub max_entry_bits: u64,
}

impl Default for ComplexCaps {
    fn default() -> Self {
        ComplexCaps {
            max_vertices: 20,
            max_simplices: 200_000,
            max_sphere_dim: 8,
            max_entry_bits: exact::DEFAULT_ENTRY_BITS,
        }
    }
}

/// Simplices are stored as sorted vertex lists; the set is closed under
/// taking nonempty faces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: BTreeSet<u32>,
    simplices: BTreeSet<Vec<u32>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn point() -> Self {
        Self::from_facets([vec![0]])
    }

    /// Closes the given facets under faces.
    pub fn from_facets<I>(facets: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut k = SimplicialComplex::empty();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            k.insert_closed(&f);
        }
        k
    }

    fn insert_closed(&mut self, simplex: &[u32]) {
        if simplex.is_empty() || self.simplices.contains(simplex) {
            return;
        }
        let n = simplex.len();
        // all nonempty subsets
        for mask in 1u64..(1u64 << n) {
            let face: Vec<u32> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| simplex[i])
                .collect();
            self.vertices.extend(face.iter().copied());
            self.simplices.insert(face);
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().copied()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.simplices.iter().map(Vec::as_slice)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.len() == 1
                || (0..s.len()).all(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    self.simplices.contains(&face)
                })
        })
    }

    fn check_caps(&self, caps: &ComplexCaps) -> Result<()> {
        if self.vertices.len() > caps.max_vertices || self.simplices.len() > caps.max_simplices {
            return Err(Error::Complex(format!(
                "complex with {} vertices and {} simplices exceeds caps ({}, {})",
                self.vertices.len(),
                self.simplices.len(),
                caps.max_vertices,
                caps.max_simplices
            )));
        }
        Ok(())
    }

    /// Simplices with `k + 1` vertices, sorted.
    fn simplices_of_dim(&self, k: usize) -> Vec<&Vec<u32>> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else { return vec![] };
        (0..=d).map(|k| self.simplices_of_dim(k).len()).collect()
    }

    /// Unreduced Euler characteristic from simplex counts.
    pub fn euler_from_counts(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Integer boundary matrix `∂_k : C_k -> C_{k-1}` as sparse columns,
    /// one per `k`-simplex. `∂_0` is the augmentation onto a single row.
    pub fn boundary_columns(&self, k: usize) -> Vec<Vec<(usize, i64)>> {
        let cols = self.simplices_of_dim(k);
        if k == 0 {
            return cols.iter().map(|_| vec![(0, 1)]).collect();
        }
        let rows: BTreeMap<&Vec<u32>, usize> = self
            .simplices_of_dim(k - 1)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        cols.iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut face = (*s).clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (rows[&face], sign)
                    })
                    .collect()
            })
            .collect()
    }

    /// One simplex per line, vertex ids separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            let line: Vec<String> = s.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let simplex = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Complex(format!("line {}: bad vertex id `{t}`", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            facets.push(simplex);
        }
        Ok(Self::from_facets(facets))
    }

    fn relabel(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut k = SimplicialComplex::empty();
        for s in &self.simplices {
            let mut t: Vec<u32> = s.iter().map(|&v| f(v)).collect();
            t.sort_unstable();
            t.dedup();
            k.vertices.extend(t.iter().copied());
            k.simplices.insert(t);
        }
        k
    }

    fn next_free_id(&self) -> u32 {
        self.vertices.iter().next_back().map_or(0, |v| v + 1)
    }
}

/// Boundary of the `(k+1)`-simplex, a triangulated `S^k`.
pub fn sphere_complex(k: u32, caps: &ComplexCaps) -> Result<SimplicialComplex> {
    if k > caps.max_sphere_dim {
        return Err(Error::Complex(format!(
            "sphere dimension {k} exceeds cap {}",
            caps.max_sphere_dim
        )));
    }
    let n = k + 2;
    let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect::<Vec<u32>>());
    let c = SimplicialComplex::from_facets(facets);
    c.check_caps(caps)?;
    Ok(c)
}

/// Simplicial join; `b` is relabelled to be disjoint from `a`.
pub fn join_complex(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    caps: &ComplexCaps,
) -> Result<SimplicialComplex> {
    let estimate = (a.num_simplices() + 1) * (b.num_simplices() + 1) - 1;
    if estimate > caps.max_simplices || a.num_vertices() + b.num_vertices() > caps.max_vertices {
        return Err(Error::Complex(format!(
            "join would have {estimate} simplices on {} vertices, beyond caps",
            a.num_vertices() + b.num_vertices()
        )));
    }
    let offset = a.next_free_id();
    let b = b.relabel(|v| v + offset);
    let mut out = SimplicialComplex::empty();
    out.vertices = a.vertices.union(&b.vertices).copied().collect();
    let empty: Vec<u32> = Vec::new();
    let left = std::iter::once(&empty).chain(a.simplices.iter());
    for s in left {
        for t in std::iter::once(&empty).chain(b.simplices.iter()) {
            if s.is_empty() && t.is_empty() {
                continue;
            }
            let mut u = s.clone();
            u.extend_from_slice(t);
            u.sort_unstable();
            out.simplices.insert(u);
        }
    }
    Ok(out)
}

/// Disjoint union of `a` and `b` with `b0 ∈ b` identified to `a0 ∈ a`.
pub fn wedge_complex(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    a0: u32,
    b0: u32,
    caps: &ComplexCaps,
) -> Result<SimplicialComplex> {
    if !a.vertices.contains(&a0) || !b.vertices.contains(&b0) {
        return Err(Error::Complex("wedge basepoint is not a vertex".into()));
    }
    let offset = a.next_free_id();
    let b = b.relabel(|v| if v == b0 { a0 } else { v + offset });
    let mut out = a.clone();
    out.vertices.extend(b.vertices.iter().copied());
    out.simplices.extend(b.simplices);
    out.check_caps(caps)?;
    Ok(out)
}

pub fn disjoint_complex(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    caps: &ComplexCaps,
) -> Result<SimplicialComplex> {
    let offset = a.next_free_id();
    let b = b.relabel(|v| v + offset);
    let mut out = a.clone();
    out.vertices.extend(b.vertices.iter().copied());
    out.simplices.extend(b.simplices);
    out.check_caps(caps)?;
    Ok(out)
}

fn boundary_rank(k: &SimplicialComplex, dim: usize, caps: &ComplexCaps) -> Result<usize> {
    let columns: Vec<SparseColumn> = k
        .boundary_columns(dim)
        .into_iter()
        .map(|col| {
            col.into_iter()
                .map(|(r, v)| (r, BigRational::from_integer(BigInt::from(v))))
                .collect()
        })
        .collect();
    exact::column_rank(columns, caps.max_entry_bits)
}

/// Reduced Betti numbers over the rationals.
pub fn rational_homology(k: &SimplicialComplex, caps: &ComplexCaps) -> Result<RankVector> {
    k.check_caps(caps)?;
    let Some(top) = k.dim() else {
        return PoincarePolynomial::reduced([(-1, 1)]);
    };
    let f = k.f_vector();
    // ranks[d] = rank of ∂_d, with ∂_0 the augmentation
    let ranks = (0..=top + 1)
        .map(|d| {
            if d > top {
                Ok(0)
            } else {
                boundary_rank(k, d, caps)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let betti = (0..=top).map(|d| (d as i32, (f[d] - ranks[d] - ranks[d + 1]) as u64));
    PoincarePolynomial::reduced(betti)
}

/// Vertex and simplex counts of the simplicial model of `e`, without
/// building it. Returns `None` for unsupported nodes.
pub fn model_size(e: &SpaceExpr) -> Option<(u128, u128)> {
    Some(match e {
        SpaceExpr::Empty => (0, 0),
        SpaceExpr::Point => (1, 1),
        SpaceExpr::Sphere(k) => {
            let v = *k as u128 + 2;
            (v, (1u128 << v.min(120)) - 2)
        }
        SpaceExpr::Wedge(cs) => {
            let mut it = cs.iter();
            let mut acc = model_size(it.next()?)?;
            for c in it {
                let (v, s) = model_size(c)?;
                acc = (acc.0 + v - 1, acc.1 + s - 1);
            }
            acc
        }
        SpaceExpr::Disjoint(cs) => cs.iter().try_fold((0, 0), |acc, c| {
            let (v, s) = model_size(c)?;
            Some((acc.0 + v, acc.1 + s))
        })?,
        SpaceExpr::Join(a, b) => {
            let (va, sa) = model_size(a)?;
            let (vb, sb) = model_size(b)?;
            (va + vb, (sa + 1) * (sb + 1) - 1)
        }
        SpaceExpr::Susp(c) => {
            let (v, s) = model_size(c)?;
            (v + 2, 3 * (s + 1) - 1)
        }
        _ => return None,
    })
}

/// Builds the simplicial model of a space expression compositionally.
pub fn model_complex(e: &SpaceExpr, caps: &ComplexCaps) -> Result<SimplicialComplex> {
    match e {
        SpaceExpr::Empty => Ok(SimplicialComplex::empty()),
        SpaceExpr::Point => Ok(SimplicialComplex::point()),
        SpaceExpr::Sphere(k) => sphere_complex(*k, caps),
        SpaceExpr::Wedge(cs) => {
            let mut it = cs.iter();
            let first = it
                .next()
                .ok_or_else(|| Error::Complex("wedge of nothing".into()))?;
            let mut acc = model_complex(first, caps)?;
            for c in it {
                let m = model_complex(c, caps)?;
                let a0 = acc.vertices().next();
                let b0 = m.vertices().next();
                let (Some(a0), Some(b0)) = (a0, b0) else {
                    return Err(Error::Complex("wedge summand is empty".into()));
                };
                acc = wedge_complex(&acc, &m, a0, b0, caps)?;
            }
            Ok(acc)
        }
        SpaceExpr::Disjoint(cs) => cs.iter().try_fold(SimplicialComplex::empty(), |acc, c| {
            disjoint_complex(&acc, &model_complex(c, caps)?, caps)
        }),
        SpaceExpr::Join(a, b) => {
            join_complex(&model_complex(a, caps)?, &model_complex(b, caps)?, caps)
        }
        SpaceExpr::Susp(c) => {
            join_complex(&sphere_complex(0, caps)?, &model_complex(c, caps)?, caps)
        }
        other => Err(Error::OracleUnsupported(format!("node `{other}`"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub matches: bool,
    /// Reduced ranks predicted by the polynomial calculus.
    pub expected: PoincarePolynomial,
    /// Reduced ranks of the simplicial model.
    pub computed: RankVector,
}

/// Compares [`SpaceExpr::eval_poincare`] with the homology of the
/// simplicial model of `e`.
pub fn oracle_check(e: &SpaceExpr, caps: &ComplexCaps) -> Result<OracleVerdict> {
    let (v, s) = model_size(e).ok_or_else(|| {
        Error::OracleUnsupported(format!(
            "`{e}`: only pt, empty, S(k), wedge, disj, join and susp have simplicial models"
        ))
    })?;
    if v > caps.max_vertices as u128 || s > caps.max_simplices as u128 {
        return Err(Error::Complex(format!(
            "model of `{e}` needs {v} vertices and {s} simplices, beyond caps"
        )));
    }
    let expected = e.eval_poincare()?.to_reduced()?;
    let computed = rational_homology(&model_complex(e, caps)?, caps)?;
    Ok(OracleVerdict {
        matches: expected == computed,
        expected,
        computed,
    })
}
