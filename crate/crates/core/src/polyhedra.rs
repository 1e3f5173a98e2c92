//! Exact rational polyhedral computations: feasibility of mixed
//! strict/non-strict systems, vertex enumeration, volumes, and hyperplane
//! splitting of full-dimensional cells.

use crate::linalg::{rat_rank, solve_square_rat};
use crate::{rat_int, Error, Rat, Result};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug)]
pub struct LinConstraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub bound: Rat,
}

impl LinConstraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, bound: Rat) -> Self {
        Self { coeffs, rel, bound }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Rel::Le => lhs <= self.bound,
            Rel::Lt => lhs < self.bound,
            Rel::Ge => lhs >= self.bound,
            Rel::Gt => lhs > self.bound,
            Rel::Eq => lhs == self.bound,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<LinConstraint>,
}

impl LinearSystem {
    pub fn new(dim: usize, constraints: Vec<LinConstraint>) -> Self {
        assert!(
            constraints.iter().all(|c| c.coeffs.len() == dim),
            "constraint dimension mismatch"
        );
        Self { dim, constraints }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }
}

/// One-sided inequality `coeffs . x <= bound` (or `<` when strict).
#[derive(Clone, Debug, PartialEq)]
struct Ineq {
    coeffs: Vec<Rat>,
    bound: Rat,
    strict: bool,
}

impl Ineq {
    /// Scale so that the first nonzero coefficient has absolute value 1.
    /// Lets syntactically identical directions be deduplicated.
    fn normalized(mut self) -> Self {
        if let Some(f) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let f = f.abs();
            if !f.is_one() {
                for c in &mut self.coeffs {
                    *c /= &f;
                }
                self.bound /= &f;
            }
        }
        self
    }
}

fn to_ineqs(sys: &LinearSystem) -> Vec<Ineq> {
    let mut out = Vec::new();
    for c in &sys.constraints {
        let neg = || c.coeffs.iter().map(|a| -a.clone()).collect::<Vec<_>>();
        match c.rel {
            Rel::Le => out.push(Ineq {
                coeffs: c.coeffs.clone(),
                bound: c.bound.clone(),
                strict: false,
            }),
            Rel::Lt => out.push(Ineq {
                coeffs: c.coeffs.clone(),
                bound: c.bound.clone(),
                strict: true,
            }),
            Rel::Ge => out.push(Ineq {
                coeffs: neg(),
                bound: -c.bound.clone(),
                strict: false,
            }),
            Rel::Gt => out.push(Ineq {
                coeffs: neg(),
                bound: -c.bound.clone(),
                strict: true,
            }),
            Rel::Eq => {
                out.push(Ineq {
                    coeffs: c.coeffs.clone(),
                    bound: c.bound.clone(),
                    strict: false,
                });
                out.push(Ineq {
                    coeffs: neg(),
                    bound: -c.bound.clone(),
                    strict: false,
                });
            }
        }
    }
    out
}

/// Drop duplicates keeping the strongest bound per direction.
fn prune(ineqs: Vec<Ineq>) -> Vec<Ineq> {
    let mut kept: Vec<Ineq> = Vec::new();
    'next: for q in ineqs.into_iter().map(Ineq::normalized) {
        for k in kept.iter_mut() {
            if k.coeffs == q.coeffs {
                // same direction: keep the stronger bound
                let stronger = q.bound < k.bound || (q.bound == k.bound && q.strict);
                if stronger {
                    *k = q;
                }
                continue 'next;
            }
        }
        kept.push(q);
    }
    kept
}

/// Decide feasibility of a mixed strict/non-strict rational system by
/// Fourier-Motzkin elimination, returning a witness point when feasible.
/// A derived bound is strict iff any contributing parent was strict.
pub fn feasible(sys: &LinearSystem) -> Option<Vec<Rat>> {
    let dim = sys.dim;
    let mut current = prune(to_ineqs(sys));
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    let mut remaining: Vec<usize> = (0..dim).collect();

    while !remaining.is_empty() {
        // eliminate the variable minimizing the pairing blowup
        let (pos_in_remaining, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = current.iter().filter(|q| q.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|q| q.coeffs[v].is_negative()).count();
                pos * neg
            })
            .unwrap();
        remaining.remove(pos_in_remaining);
        stages.push((var, current.clone()));

        let mut next: Vec<Ineq> = Vec::new();
        let (uppers, rest): (Vec<_>, Vec<_>) = current
            .into_iter()
            .partition(|q| q.coeffs[var].is_positive());
        let (lowers, free): (Vec<_>, Vec<_>) =
            rest.into_iter().partition(|q| q.coeffs[var].is_negative());
        next.extend(free);
        for up in &uppers {
            for lo in &lowers {
                let a = &up.coeffs[var];
                let b = lo.coeffs[var].abs();
                // b*up + a*lo cancels the variable
                let coeffs: Vec<Rat> = up
                    .coeffs
                    .iter()
                    .zip(&lo.coeffs)
                    .map(|(u, l)| &b * u + a * l)
                    .collect();
                let bound = &b * &up.bound + a * &lo.bound;
                next.push(Ineq {
                    coeffs,
                    bound,
                    strict: up.strict || lo.strict,
                });
            }
        }
        // constant constraints can be checked immediately
        let mut kept = Vec::new();
        for q in next {
            if q.coeffs.iter().all(Zero::is_zero) {
                let ok = if q.strict {
                    q.bound.is_positive()
                } else {
                    !q.bound.is_negative()
                };
                if !ok {
                    return None;
                }
            } else {
                kept.push(q);
            }
        }
        current = prune(kept);
    }

    // all variables eliminated; back-substitute a witness
    let mut witness = vec![Rat::zero(); dim];
    for (var, ineqs) in stages.into_iter().rev() {
        let mut lower: Option<(Rat, bool)> = None;
        let mut upper: Option<(Rat, bool)> = None;
        for q in &ineqs {
            let a = &q.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest: Rat = q
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != var)
                .map(|(i, c)| c * &witness[i])
                .sum();
            let v = (&q.bound - rest) / a;
            if a.is_positive() {
                // x <= v
                if upper.as_ref().is_none_or(|(u, us)| v < *u || (v == *u && q.strict && !us)) {
                    upper = Some((v, q.strict));
                }
            } else {
                // x >= v
                if lower.as_ref().is_none_or(|(l, ls)| v > *l || (v == *l && q.strict && !ls)) {
                    lower = Some((v, q.strict));
                }
            }
        }
        witness[var] = match (&lower, &upper) {
            (None, None) => Rat::zero(),
            (Some((l, _)), None) => l + Rat::one(),
            (None, Some((u, _))) => u - Rat::one(),
            (Some((l, _)), Some((u, _))) => {
                if l == u {
                    l.clone()
                } else {
                    (l + u) / rat_int(2)
                }
            }
        };
    }
    debug_assert!(sys.holds(&witness), "back-substitution produced a non-witness");
    Some(witness)
}

// ---------------------------------------------------------------------------
// Cells
// ---------------------------------------------------------------------------

/// Closed halfspace `normal . x <= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub bound: Rat,
}

/// Full-dimensional bounded rational polytope, stored by its closure
/// (non-strict inequalities) with vertices precomputed.
#[derive(Clone, Debug)]
pub struct CellPiece {
    dim: usize,
    constraints: Vec<Halfspace>,
    vertices: Vec<Vec<Rat>>,
}

impl CellPiece {
    /// Construct from non-strict inequalities. Returns None when the interior
    /// is empty (the strict version of the system is infeasible).
    pub fn from_halfspaces(dim: usize, constraints: Vec<Halfspace>) -> Option<CellPiece> {
        let strict = LinearSystem::new(
            dim,
            constraints
                .iter()
                .map(|h| LinConstraint::new(h.normal.clone(), Rel::Lt, h.bound.clone()))
                .collect(),
        );
        feasible(&strict)?;
        let vertices = enumerate_vertices(dim, &constraints);
        Some(CellPiece {
            dim,
            constraints,
            vertices,
        })
    }

    pub fn unit_cube(dim: usize) -> CellPiece {
        let mut constraints = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut up = vec![Rat::zero(); dim];
            up[i] = Rat::one();
            constraints.push(Halfspace {
                normal: up.clone(),
                bound: Rat::one(),
            });
            let mut lo = vec![Rat::zero(); dim];
            lo[i] = -Rat::one();
            constraints.push(Halfspace {
                normal: lo,
                bound: Rat::zero(),
            });
        }
        CellPiece::from_halfspaces(dim, constraints).expect("cube has interior")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Halfspace] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// Arithmetic mean of the vertices; interior for full-dimensional cells.
    pub fn interior_sample(&self) -> Vec<Rat> {
        let n = rat_int(self.vertices.len() as i64);
        (0..self.dim)
            .map(|i| {
                let s: Rat = self.vertices.iter().map(|v| v[i].clone()).sum();
                s / &n
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints
            .iter()
            .all(|h| h.normal.iter().zip(x).map(|(a, b)| a * b).sum::<Rat>() <= h.bound)
    }

    fn is_bounded(&self) -> bool {
        // bounded iff the recession cone {A x <= 0} is trivial
        for i in 0..self.dim {
            for sign in [1i64, -1] {
                let mut cons: Vec<LinConstraint> = self
                    .constraints
                    .iter()
                    .map(|h| LinConstraint::new(h.normal.clone(), Rel::Le, Rat::zero()))
                    .collect();
                let mut dir = vec![Rat::zero(); self.dim];
                dir[i] = rat_int(sign);
                cons.push(LinConstraint::new(dir, Rel::Ge, Rat::one()));
                if feasible(&LinearSystem::new(self.dim, cons)).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact Euclidean volume via triangulation from vertex enumeration.
    pub fn volume(&self) -> Result<Rat> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let mut total = Rat::zero();
        for simplex in triangulate(&self.vertices, &self.constraints) {
            total += simplex_volume(&simplex);
        }
        Ok(total)
    }
}

pub(crate) fn enumerate_vertices(dim: usize, constraints: &[Halfspace]) -> Vec<Vec<Rat>> {
    let mut verts: Vec<Vec<Rat>> = Vec::new();
    for combo in (0..constraints.len()).combinations(dim) {
        let a: Vec<Vec<Rat>> = combo.iter().map(|&i| constraints[i].normal.clone()).collect();
        let b: Vec<Rat> = combo.iter().map(|&i| constraints[i].bound.clone()).collect();
        let Some(x) = solve_square_rat(&a, &b) else {
            continue;
        };
        if constraints
            .iter()
            .all(|h| h.normal.iter().zip(&x).map(|(p, q)| p * q).sum::<Rat>() <= h.bound)
            && !verts.contains(&x)
        {
            verts.push(x);
        }
    }
    verts.sort();
    verts
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rat_rank(&diffs)
}

/// Recursive boundary triangulation: cone the lexicographically smallest
/// vertex over the triangulated facets that do not contain it.
fn triangulate(vertices: &[Vec<Rat>], constraints: &[Halfspace]) -> Vec<Vec<Vec<Rat>>> {
    let k = affine_rank(vertices);
    let v0 = vertices[0].clone(); // vertices are kept sorted
    if k == 0 {
        return vec![vec![v0]];
    }
    let mut facets: Vec<Vec<Vec<Rat>>> = Vec::new();
    for h in constraints {
        let tight: Vec<Vec<Rat>> = vertices
            .iter()
            .filter(|v| {
                h.normal.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<Rat>() == h.bound
            })
            .cloned()
            .collect();
        if tight.is_empty() || tight.contains(&v0) {
            continue;
        }
        if affine_rank(&tight) + 1 != k {
            continue;
        }
        if !facets.contains(&tight) {
            facets.push(tight);
        }
    }
    let mut simplices = Vec::new();
    for facet in facets {
        for mut s in triangulate(&facet, constraints) {
            s.push(v0.clone());
            simplices.push(s);
        }
    }
    simplices
}

fn simplex_volume(points: &[Vec<Rat>]) -> Rat {
    let d = points.len() - 1;
    let base = &points[d];
    let rows: Vec<Vec<Rat>> = points[..d]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut det = crate::linalg::det_rat(&rows).abs();
    for k in 1..=d as i64 {
        det /= rat_int(k);
    }
    det
}

/// Split a full-dimensional cell by the hyperplane `normal . x = level`.
/// Pieces with empty interior are dropped; the closures of the result cover
/// the original closure.
pub fn split(cell: &CellPiece, normal: &[Rat], level: &Rat) -> Vec<CellPiece> {
    assert_eq!(normal.len(), cell.dim, "hyperplane dimension mismatch");
    let mut out = Vec::new();
    let mut below = cell.constraints.clone();
    below.push(Halfspace {
        normal: normal.to_vec(),
        bound: level.clone(),
    });
    if let Some(p) = CellPiece::from_halfspaces(cell.dim, below) {
        out.push(p);
    }
    let mut above = cell.constraints.clone();
    above.push(Halfspace {
        normal: normal.iter().map(|a| -a.clone()).collect(),
        bound: -level.clone(),
    });
    if let Some(p) = CellPiece::from_halfspaces(cell.dim, above) {
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn ri(n: i64) -> Rat {
        rat_int(n)
    }

    #[test]
    fn feasible_simple_interval() {
        // x <= 0, x > -1
        let sys = LinearSystem::new(
            1,
            vec![
                LinConstraint::new(vec![ri(1)], Rel::Le, ri(0)),
                LinConstraint::new(vec![ri(1)], Rel::Gt, ri(-1)),
            ],
        );
        let w = feasible(&sys).expect("feasible");
        assert!(sys.holds(&w));
    }

    #[test]
    fn infeasible_interval() {
        let sys = LinearSystem::new(
            1,
            vec![
                LinConstraint::new(vec![ri(1)], Rel::Le, ri(0)),
                LinConstraint::new(vec![ri(1)], Rel::Ge, ri(1)),
            ],
        );
        assert!(feasible(&sys).is_none());
    }

    #[test]
    fn feasible_figure1_conic_system() {
        // 0 < x2 <= 1 and -1 < 3 x1 - x2 <= 0
        let sys = LinearSystem::new(
            2,
            vec![
                LinConstraint::new(vec![ri(0), ri(1)], Rel::Gt, ri(0)),
                LinConstraint::new(vec![ri(0), ri(1)], Rel::Le, ri(1)),
                LinConstraint::new(vec![ri(3), ri(-1)], Rel::Gt, ri(-1)),
                LinConstraint::new(vec![ri(3), ri(-1)], Rel::Le, ri(0)),
            ],
        );
        let w = feasible(&sys).expect("feasible");
        assert!(sys.holds(&w));
        // the witness from the operation example also satisfies the system
        assert!(sys.holds(&[r(1, 3), ri(1)]));
    }

    #[test]
    fn unit_cube_volume() {
        for d in 1..=4 {
            assert_eq!(CellPiece::unit_cube(d).volume().unwrap(), ri(1));
        }
    }

    #[test]
    fn standard_simplex_volume() {
        for d in 1..=4usize {
            let mut cons = Vec::new();
            for i in 0..d {
                let mut n = vec![ri(0); d];
                n[i] = ri(-1);
                cons.push(Halfspace { normal: n, bound: ri(0) });
            }
            cons.push(Halfspace {
                normal: vec![ri(1); d],
                bound: ri(1),
            });
            let cell = CellPiece::from_halfspaces(d, cons).unwrap();
            let mut expect = ri(1);
            for k in 1..=d as i64 {
                expect /= ri(k);
            }
            assert_eq!(cell.volume().unwrap(), expect);
        }
    }

    #[test]
    fn split_square_in_half() {
        let sq = CellPiece::unit_cube(2);
        let parts = split(&sq, &[ri(1), ri(0)], &r(1, 2));
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.volume().unwrap(), r(1, 2));
        }
    }

    #[test]
    fn split_square_missing_hyperplane() {
        let sq = CellPiece::unit_cube(2);
        let parts = split(&sq, &[ri(1), ri(0)], &ri(2));
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].volume().unwrap(), ri(1));
    }

    #[test]
    fn split_cube_by_diagonal_plane() {
        // unit cube in (a, b, t) split by t - a = 0
        let cube = CellPiece::unit_cube(3);
        let parts = split(&cube, &[ri(-1), ri(0), ri(1)], &ri(0));
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.volume().unwrap(), r(1, 2));
        }
    }

    #[test]
    fn prism_volume_third() {
        // {0 <= a,b,t <= 1, t >= a, t >= b} has volume 1/3
        let cube = CellPiece::unit_cube(3);
        let mut cons = cube.constraints().to_vec();
        cons.push(Halfspace {
            normal: vec![ri(1), ri(0), ri(-1)],
            bound: ri(0),
        });
        cons.push(Halfspace {
            normal: vec![ri(0), ri(1), ri(-1)],
            bound: ri(0),
        });
        let cell = CellPiece::from_halfspaces(3, cons).unwrap();
        assert_eq!(cell.volume().unwrap(), r(1, 3));
    }

    #[test]
    fn interior_sample_is_strictly_interior() {
        let sq = CellPiece::unit_cube(2);
        for piece in split(&sq, &[ri(3), ri(-1)], &ri(1)) {
            let p = piece.interior_sample();
            for h in piece.constraints() {
                let lhs: Rat = h.normal.iter().zip(&p).map(|(a, b)| a * b).sum();
                assert!(lhs < h.bound, "sample on the boundary");
            }
        }
    }

    #[test]
    fn unbounded_volume_rejected() {
        // halfplane x >= 0 in R^2
        let cell = CellPiece {
            dim: 2,
            constraints: vec![Halfspace {
                normal: vec![ri(-1), ri(0)],
                bound: ri(0),
            }],
            vertices: vec![],
        };
        assert!(matches!(cell.volume(), Err(Error::Unbounded)));
    }

    proptest! {
        // split conserves volume exactly
        #[test]
        fn split_is_volume_conservative(a in -3i64..6, b in -3i64..6, c in -3i64..6,
                                        lvl_num in -4i64..8, lvl_den in 1i64..4) {
            prop_assume!(a != 0 || b != 0 || c != 0);
            let cube = CellPiece::unit_cube(3);
            let normal = vec![ri(a), ri(b), ri(c)];
            let level = r(lvl_num, lvl_den);
            let parts = split(&cube, &normal, &level);
            let total: Rat = parts.iter().map(|p| p.volume().unwrap()).sum();
            prop_assert_eq!(total, ri(1));
        }

        // feasibility of bounded non-strict systems agrees with vertex enumeration
        #[test]
        fn feasible_matches_vertex_enumeration(cuts in proptest::collection::vec((-2i64..3, -2i64..3, -2i64..3), 1..4)) {
            let mut cons = CellPiece::unit_cube(2).constraints().to_vec();
            for (a, b, c) in cuts {
                cons.push(Halfspace { normal: vec![ri(a), ri(b)], bound: ri(c) });
            }
            let sys = LinearSystem::new(2, cons.iter()
                .map(|h| LinConstraint::new(h.normal.clone(), Rel::Le, h.bound.clone()))
                .collect());
            let verts = enumerate_vertices(2, &cons);
            prop_assert_eq!(feasible(&sys).is_some(), !verts.is_empty());
        }
    }
}
