//! Seeded random generators for space and action expressions, used by the
//! randomized checks.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::chains::model_size;
use crate::equivariant::{fixed_set, total_space, ActionExpr, Based};
use crate::space::SpaceExpr;

/// Simplex budget for sampled oracle expressions; keeps exact rank
/// computations fast.
pub const ORACLE_SIMPLEX_BUDGET: u128 = 6_000;
pub const ORACLE_VERTEX_BUDGET: u128 = 20;

fn oracle_tree<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> SpaceExpr {
    let leaf = depth == 0 || rng.random_bool(0.35);
    if leaf {
        return if rng.random_bool(0.2) {
            SpaceExpr::Point
        } else {
            SpaceExpr::Sphere(rng.random_range(0..=4))
        };
    }
    match rng.random_range(0..3) {
        0 => {
            let k = rng.random_range(2..=3);
            SpaceExpr::Wedge((0..k).map(|_| oracle_tree(rng, depth - 1)).collect())
        }
        1 => SpaceExpr::join(oracle_tree(rng, depth - 1), oracle_tree(rng, depth - 1)),
        _ => SpaceExpr::susp(oracle_tree(rng, depth - 1)),
    }
}

/// Random expression over point, `S^k` (`k ≤ 4`), wedge, join and
/// suspension, of depth at most 3, whose simplicial model fits the budgets.
pub fn oracle_space<R: Rng + ?Sized>(rng: &mut R) -> SpaceExpr {
    loop {
        let e = oracle_tree(rng, 3);
        if let Some((v, s)) = model_size(&e) {
            if v <= ORACLE_VERTEX_BUDGET && s <= ORACLE_SIMPLEX_BUDGET {
                return e;
            }
        }
    }
}

fn leaf_space<R: Rng + ?Sized>(rng: &mut R) -> SpaceExpr {
    match rng.random_range(0..6) {
        0 => SpaceExpr::Point,
        1 => SpaceExpr::Sphere(rng.random_range(0..=6)),
        2 => {
            let n = rng.random_range(1..=4);
            let a = if n % 2 == 0 {
                rng.random_range(-2..=2)
            } else {
                0
            };
            SpaceExpr::Toda {
                n,
                a,
                b: rng.random_range(-2..=2),
            }
        }
        3 => {
            let n = 2 * rng.random_range(1..=2);
            SpaceExpr::PTrunc {
                h: rng.random_range(1..=3),
                n,
            }
        }
        4 => SpaceExpr::product(
            SpaceExpr::Sphere(rng.random_range(1..=3)),
            SpaceExpr::Sphere(rng.random_range(1..=3)),
        ),
        _ => SpaceExpr::wedge(vec![
            SpaceExpr::Sphere(rng.random_range(1..=4)),
            SpaceExpr::Sphere(rng.random_range(1..=4)),
        ]),
    }
}

fn leaf_action<R: Rng + ?Sized>(rng: &mut R) -> ActionExpr {
    match rng.random_range(0..7) {
        0 => ActionExpr::Trivial(leaf_space(rng)),
        1 => ActionExpr::FreeRotation(2 * rng.random_range(0..=3) + 1),
        2 => {
            let n = 2 * rng.random_range(1..=3);
            ActionExpr::ConeA {
                n,
                k: 2 * rng.random_range(0..=n / 2),
            }
        }
        3 => ActionExpr::MultConeA(*[2, 4, 8].choose(rng).expect("nonempty")),
        4 => ActionExpr::BundleA(2 * rng.random_range(1..=3) + 1),
        5 => ActionExpr::puncture(ActionExpr::BundleA(2 * rng.random_range(1..=3) + 1)),
        _ => {
            let s = if rng.random_bool(0.5) {
                SpaceExpr::Sphere(rng.random_range(0..=5))
            } else {
                SpaceExpr::product(
                    SpaceExpr::Sphere(rng.random_range(1..=3)),
                    SpaceExpr::Sphere(rng.random_range(1..=3)),
                )
            };
            ActionExpr::puncture(ActionExpr::Trivial(s))
        }
    }
}

fn action_tree<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> ActionExpr {
    if depth == 0 || rng.random_bool(0.3) {
        return leaf_action(rng);
    }
    match rng.random_range(0..3) {
        0 => ActionExpr::susp(action_tree(rng, depth - 1)),
        1 => ActionExpr::join(action_tree(rng, depth - 1), action_tree(rng, depth - 1)),
        _ => {
            let k = rng.random_range(2..=3);
            let mut children = Vec::with_capacity(k);
            while children.len() < k {
                let a = action_tree(rng, depth - 1);
                let comps = fixed_set(&a).and_then(|f| f.components()).map(|c| c.len());
                if let Ok(m) = comps {
                    if m > 0 {
                        children.push(Based::at(a, rng.random_range(0..m)));
                    }
                }
            }
            ActionExpr::WedgeA(children)
        }
    }
}

/// Random well-formed action of depth at most `depth`. Wedge basepoints
/// are random fixed components.
pub fn action<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> ActionExpr {
    loop {
        let a = action_tree(rng, depth);
        let ok = fixed_set(&a)
            .and_then(|f| f.eval_poincare())
            .and_then(|_| total_space(&a))
            .and_then(|t| t.eval_poincare())
            .is_ok();
        if ok {
            return a;
        }
    }
}
