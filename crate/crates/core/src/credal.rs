//! Linear previsions and polytopes of them.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpProblem, Relation, Sense};
use crate::rat::{self, Rat};
use crate::space::Gamble;

/// Constraint count plus dimension above which vertex enumeration refuses to run.
pub const MAX_ENUMERATION_SIZE: usize = 120;
/// Cap on intermediate rays during enumeration.
pub const MAX_RAYS: usize = 50_000;

/// A probability mass function on the cells of a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearPrevision {
    mass: Gamble,
}

impl LinearPrevision {
    pub fn new(mass: Gamble) -> Result<Self> {
        if mass.values().iter().any(Signed::is_negative) {
            return Err(Error::input("a linear prevision has non-negative masses"));
        }
        let s: Rat = mass.values().iter().sum();
        if !s.is_one() {
            return Err(Error::input(format!(
                "masses sum to {} instead of 1",
                rat::fmt(&s)
            )));
        }
        Ok(LinearPrevision { mass })
    }

    pub fn point_mass(rows: usize, cols: usize, cell: usize) -> Self {
        LinearPrevision {
            mass: Gamble::unit(rows, cols, cell),
        }
    }

    pub fn uniform(rows: usize, cols: usize) -> Self {
        let n = (rows * cols) as i64;
        LinearPrevision {
            mass: Gamble::constant(rows, cols, rat::frac(1, n)),
        }
    }

    pub fn mass(&self) -> &Gamble {
        &self.mass
    }

    pub fn shape(&self) -> (usize, usize) {
        self.mass.shape()
    }

    pub fn expectation(&self, f: &Gamble) -> Rat {
        rat::dot(self.mass.values(), f.values())
    }

    /// `P(ω)` as a `rows × 1` prevision.
    pub fn omega_marginal(&self) -> LinearPrevision {
        let sums = self.mass.row_sums();
        LinearPrevision {
            mass: Gamble::new(sums.len(), 1, sums).expect("nonempty"),
        }
    }

    /// `P(x)` as a `1 × cols` prevision.
    pub fn prize_marginal(&self) -> LinearPrevision {
        let sums = self.mass.col_sums();
        LinearPrevision {
            mass: Gamble::new(1, sums.len(), sums).expect("nonempty"),
        }
    }

    /// Product of a state prevision (`n × 1`) and a prize prevision (`1 × m`).
    pub fn product(omega: &LinearPrevision, prizes: &LinearPrevision) -> LinearPrevision {
        let a = omega.mass.values();
        let b = prizes.mass.values();
        let values = a
            .iter()
            .flat_map(|p| b.iter().map(move |q| p * q))
            .collect();
        LinearPrevision {
            mass: Gamble::new(a.len(), b.len(), values).expect("nonempty"),
        }
    }

    /// `α P + (1 − α) Q`.
    pub fn mix(alpha: &Rat, p: &LinearPrevision, q: &LinearPrevision) -> LinearPrevision {
        let beta = Rat::one() - alpha;
        LinearPrevision {
            mass: p.mass.scale(alpha).add(&q.mass.scale(&beta)),
        }
    }

    /// Bayes conditioning on an event of positive probability.
    pub fn condition(&self, event: &crate::space::EventSet) -> Option<LinearPrevision> {
        let pb = self.expectation(&Gamble::indicator(event));
        if pb.is_zero() {
            return None;
        }
        Some(LinearPrevision {
            mass: self.mass.restrict(event).scale(&(Rat::one() / pb)),
        })
    }
}

/// A nonempty polytope of linear previsions, kept as its vertex list and,
/// when built from constraints, the constraints `P(g) ≥ 0` as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CredalSet {
    rows: usize,
    cols: usize,
    constraints: Option<Vec<Gamble>>,
    vertices: Vec<LinearPrevision>,
}

impl CredalSet {
    /// `{P : P(g) ≥ 0 for every g}`.
    pub fn from_constraints(rows: usize, cols: usize, constraints: Vec<Gamble>) -> Result<Self> {
        for g in &constraints {
            if g.shape() != (rows, cols) {
                return Err(Error::input(format!(
                    "constraint of shape {}x{} on a {rows}x{cols} credal set",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let vertices = enumerate_vertices(rows, cols, &constraints)?;
        if vertices.is_empty() {
            return Err(Error::model("the constraints leave no linear prevision"));
        }
        for v in &vertices {
            if constraints.iter().any(|g| v.expectation(g).is_negative()) {
                return Err(Error::internal("enumerated vertex violates a constraint"));
            }
        }
        Ok(CredalSet {
            rows,
            cols,
            constraints: Some(constraints),
            vertices,
        })
    }

    /// Convex hull of the given previsions; non-extreme points are dropped.
    pub fn from_points(points: Vec<LinearPrevision>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::model("a credal set needs at least one prevision"))?;
        let (rows, cols) = first.shape();
        if points.iter().any(|p| p.shape() != (rows, cols)) {
            return Err(Error::input("previsions of different shapes"));
        }
        let unique: Vec<LinearPrevision> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut vertices = Vec::with_capacity(unique.len());
        for (i, p) in unique.iter().enumerate() {
            let others: Vec<&LinearPrevision> = unique
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            if !hull_contains(&others, p)? {
                vertices.push(p.clone());
            }
        }
        Ok(CredalSet {
            rows,
            cols,
            constraints: None,
            vertices,
        })
    }

    pub fn vacuous(rows: usize, cols: usize) -> Self {
        CredalSet {
            rows,
            cols,
            constraints: Some(Vec::new()),
            vertices: (0..rows * cols)
                .map(|c| LinearPrevision::point_mass(rows, cols, c))
                .collect(),
        }
    }

    pub fn singleton(p: LinearPrevision) -> Self {
        let (rows, cols) = p.shape();
        CredalSet {
            rows,
            cols,
            constraints: None,
            vertices: vec![p],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn n_cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn vertices(&self) -> &[LinearPrevision] {
        &self.vertices
    }

    pub fn constraints(&self) -> Option<&[Gamble]> {
        self.constraints.as_deref()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn lower(&self, f: &Gamble) -> Rat {
        self.vertices
            .iter()
            .map(|v| v.expectation(f))
            .min()
            .expect("nonempty credal set")
    }

    pub fn upper(&self, f: &Gamble) -> Rat {
        self.vertices
            .iter()
            .map(|v| v.expectation(f))
            .max()
            .expect("nonempty credal set")
    }

    /// A vertex attaining the lower prevision of `f`.
    pub fn argmin(&self, f: &Gamble) -> &LinearPrevision {
        self.vertices
            .iter()
            .min_by(|a, b| a.expectation(f).cmp(&b.expectation(f)))
            .expect("nonempty")
    }

    pub fn contains(&self, p: &LinearPrevision) -> Result<bool> {
        if p.shape() != self.shape() {
            return Err(Error::input("prevision shape differs from credal set"));
        }
        hull_contains(&self.vertices.iter().collect::<Vec<_>>(), p)
    }

    /// Hull of the row-sum images of the vertices, on `rows × 1`.
    pub fn omega_marginal(&self) -> Result<CredalSet> {
        CredalSet::from_points(
            self.vertices
                .iter()
                .map(LinearPrevision::omega_marginal)
                .collect(),
        )
    }

    /// Hull of the column-sum images of the vertices, on `1 × cols`.
    pub fn prize_marginal(&self) -> Result<CredalSet> {
        CredalSet::from_points(
            self.vertices
                .iter()
                .map(LinearPrevision::prize_marginal)
                .collect(),
        )
    }

    /// Same polytope: every vertex of each lies in the other.
    pub fn same_polytope(&self, other: &CredalSet) -> Result<bool> {
        for v in &self.vertices {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        for v in &other.vertices {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `p ∈ conv(points)`, decided by an exact feasibility program.
pub fn hull_contains(points: &[&LinearPrevision], p: &LinearPrevision) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    if points.contains(&p) {
        return Ok(true);
    }
    let k = points.len();
    let n = p.mass.len();
    let mut prob = LpProblem::new(k, Sense::Max);
    for c in 0..n {
        prob.add(
            points.iter().map(|q| q.mass.values()[c].clone()).collect(),
            Relation::Eq,
            p.mass.values()[c].clone(),
        );
    }
    prob.add(vec![Rat::one(); k], Relation::Eq, Rat::one());
    Ok(lp::feasible_point(&prob)?.is_some())
}

type Mask = u128;

struct Ray {
    x: Vec<Rat>,
    tight: Mask,
}

/// Vertices of `{P in the simplex : P(g) ≥ 0 for each g}`, exact, deduplicated
/// and sorted lexicographically. Uses the double description method on the
/// homogeneous cone `{x ≥ 0, g·x ≥ 0}` and normalises the extreme rays.
pub fn enumerate_vertices(
    rows: usize,
    cols: usize,
    constraints: &[Gamble],
) -> Result<Vec<LinearPrevision>> {
    let n = rows * cols;
    if n + constraints.len() > MAX_ENUMERATION_SIZE {
        return Err(Error::Resource(format!(
            "vertex enumeration limited to {MAX_ENUMERATION_SIZE} constraints plus cells, got {}",
            n + constraints.len()
        )));
    }
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let mut x = vec![Rat::zero(); n];
            x[j] = Rat::one();
            let tight = (((1 as Mask) << n) - 1) & !((1 as Mask) << j);
            Ray { x, tight }
        })
        .collect();
    let threshold = n.saturating_sub(2) as u32;

    for (ci, g) in constraints.iter().enumerate() {
        let bit: Mask = 1 << (n + ci);
        let vals: Vec<Rat> = rays.iter().map(|r| rat::dot(g.values(), &r.x)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if minus.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.tight |= bit;
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].tight & rays[q].tight;
                if common.count_ones() < threshold {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || (common & !r.tight) != 0);
                if !adjacent {
                    continue;
                }
                let x: Vec<Rat> = rays[q]
                    .x
                    .iter()
                    .zip(&rays[p].x)
                    .map(|(a, b)| &vals[p] * a - &vals[q] * b)
                    .collect();
                let s: Rat = x.iter().sum();
                let x: Vec<Rat> = x.into_iter().map(|v| v / &s).collect();
                next.push(Ray {
                    x,
                    tight: common | bit,
                });
                if next.len() + rays.len() > MAX_RAYS {
                    return Err(Error::Resource(format!(
                        "more than {MAX_RAYS} rays during vertex enumeration"
                    )));
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight |= bit;
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
        if rays.is_empty() {
            return Ok(Vec::new());
        }
    }

    let mut out: BTreeSet<LinearPrevision> = BTreeSet::new();
    for r in rays {
        out.insert(LinearPrevision {
            mass: Gamble::new(rows, cols, r.x)?,
        });
    }
    Ok(out.into_iter().collect())
}

/// Reference enumeration: every choice of `n − 1` active inequalities
/// together with `Σ P = 1`, solved exactly and filtered for feasibility.
pub fn enumerate_vertices_brute(
    rows: usize,
    cols: usize,
    constraints: &[Gamble],
) -> Result<Vec<LinearPrevision>> {
    let n = rows * cols;
    let mut all: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            e
        })
        .collect();
    all.extend(constraints.iter().map(|g| g.values().to_vec()));
    let mut out = BTreeSet::new();
    let k = n - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut a: Vec<Vec<Rat>> = idx.iter().map(|&i| all[i].clone()).collect();
        let mut b = vec![Rat::zero(); k];
        a.push(vec![Rat::one(); n]);
        b.push(Rat::one());
        if let Some(x) = solve_square(a, b) {
            if x.iter().all(|v| !v.is_negative())
                && all[n..].iter().all(|g| !rat::dot(g, &x).is_negative())
            {
                out.insert(LinearPrevision {
                    mass: Gamble::new(rows, cols, x)?,
                });
            }
        }
        // Next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out.into_iter().collect());
            }
            i -= 1;
            if idx[i] < all.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return Ok(out.into_iter().collect());
        }
    }
}

/// Gauss-Jordan on a square system; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn g(vals: &[i64]) -> Gamble {
        Gamble::from_ints(1, vals.len(), vals).unwrap()
    }

    fn masses(v: &[LinearPrevision]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| p.mass().values().to_vec()).collect()
    }

    #[test]
    fn vacuous_gives_point_masses() {
        let v = enumerate_vertices(1, 3, &[]).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(
            CredalSet::from_constraints(1, 3, vec![])
                .unwrap()
                .vertices()
                .len(),
            3
        );
    }

    #[test]
    fn half_line() {
        let v = enumerate_vertices(1, 2, &[g(&[1, -1])]).unwrap();
        assert_eq!(
            masses(&v),
            vec![vec![frac(1, 2), frac(1, 2)], vec![int(1), int(0)]]
        );
    }

    #[test]
    fn forced_equality() {
        let v = enumerate_vertices(1, 2, &[g(&[1, -1]), g(&[-1, 1])]).unwrap();
        assert_eq!(masses(&v), vec![vec![frac(1, 2), frac(1, 2)]]);
    }

    #[test]
    fn empty_polytope_rejected() {
        assert!(matches!(
            CredalSet::from_constraints(1, 2, vec![g(&[-1, -1])]),
            Err(Error::Model(_))
        ));
    }

    #[test]
    fn quarter_bounds_triangle() {
        // p_i ≥ 1/4 written as P(4·I_i − 1) ≥ 0.
        let cons = vec![g(&[3, -1, -1]), g(&[-1, 3, -1]), g(&[-1, -1, 3])];
        let m = CredalSet::from_constraints(1, 3, cons.clone()).unwrap();
        assert_eq!(m.vertices().len(), 3);
        assert_eq!(
            masses(m.vertices()),
            masses(&enumerate_vertices_brute(1, 3, &cons).unwrap())
        );
    }

    #[test]
    fn pruning_interior_points() {
        let pts = vec![
            LinearPrevision::point_mass(1, 2, 0),
            LinearPrevision::point_mass(1, 2, 1),
            LinearPrevision::uniform(1, 2),
            LinearPrevision::uniform(1, 2),
        ];
        let m = CredalSet::from_points(pts).unwrap();
        assert_eq!(m.vertices().len(), 2);
        assert!(m.contains(&LinearPrevision::uniform(1, 2)).unwrap());
    }

    #[test]
    fn resource_bound() {
        let cons = vec![Gamble::zero(1, 2); MAX_ENUMERATION_SIZE];
        assert!(matches!(
            enumerate_vertices(1, 2, &cons),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn marginals_of_product() {
        let a =
            LinearPrevision::new(Gamble::new(2, 1, vec![frac(1, 3), frac(2, 3)]).unwrap()).unwrap();
        let b =
            LinearPrevision::new(Gamble::new(1, 2, vec![frac(1, 4), frac(3, 4)]).unwrap()).unwrap();
        let p = LinearPrevision::product(&a, &b);
        assert_eq!(p.omega_marginal(), a);
        assert_eq!(p.prize_marginal(), b);
    }
}
