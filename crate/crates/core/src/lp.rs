//! Exact two-phase simplex over the rationals.
//!
//! Pivoting follows Bland's rule, so identical problems always produce
//! identical outcomes. Infeasible problems carry a Farkas certificate.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{dot, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Per-variable bounds; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rat>,
    pub upper: Option<Rat>,
}

impl Bound {
    pub fn nonneg() -> Self {
        Bound {
            lower: Some(Rat::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Bound {
            lower: None,
            upper: None,
        }
    }

    pub fn nonpos() -> Self {
        Bound {
            lower: None,
            upper: Some(Rat::zero()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LpProblem {
    /// `num_vars` non-negative variables and a zero objective.
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LpProblem {
            sense,
            objective: vec![Rat::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::nonneg(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_bound(&mut self, var: usize, lower: Option<Rat>, upper: Option<Rat>) {
        self.bounds[var] = Bound { lower, upper };
    }

    /// Constraints followed by one row per finite bound (lower before upper).
    /// Farkas certificates are indexed against this list.
    pub fn all_rows(&self) -> Vec<Constraint> {
        let n = self.num_vars();
        let mut rows = self.constraints.clone();
        for (j, b) in self.bounds.iter().enumerate() {
            let unit = |c: i64| {
                let mut v = vec![Rat::zero(); n];
                v[j] = Rat::from_integer(c.into());
                v
            };
            if let Some(l) = &b.lower {
                rows.push(Constraint {
                    coeffs: unit(1),
                    relation: Relation::Ge,
                    rhs: l.clone(),
                });
            }
            if let Some(u) = &b.upper {
                rows.push(Constraint {
                    coeffs: unit(1),
                    relation: Relation::Le,
                    rhs: u.clone(),
                });
            }
        }
        rows
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::dimension(n, self.bounds.len()));
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::dimension(n, c.coeffs.len()));
            }
        }
        Ok(())
    }

    /// True when `x` satisfies every constraint and bound exactly.
    pub fn is_feasible_point(&self, x: &[Rat]) -> bool {
        x.len() == self.num_vars() && self.all_rows().iter().all(|r| r.holds_at(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub optimum: Option<Rat>,
    pub witness: Option<Vec<Rat>>,
    /// Multipliers over [`LpProblem::all_rows`] proving infeasibility.
    pub farkas: Option<Vec<Rat>>,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn optimum(&self) -> Option<&Rat> {
        self.optimum.as_ref()
    }

    pub fn witness(&self) -> Option<&[Rat]> {
        self.witness.as_deref()
    }
}

/// Checks a Farkas certificate: `y` has the sign pattern of the rows,
/// `Σ y_i a_i = 0` and `Σ y_i b_i > 0`, which no feasible point can satisfy.
pub fn verify_farkas(problem: &LpProblem, y: &[Rat]) -> bool {
    let rows = problem.all_rows();
    if y.len() != rows.len() {
        return false;
    }
    let n = problem.num_vars();
    for (yi, r) in y.iter().zip(&rows) {
        let ok = match r.relation {
            Relation::Ge => !yi.is_negative(),
            Relation::Le => !yi.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return false;
        }
    }
    for j in 0..n {
        let s = y
            .iter()
            .zip(&rows)
            .fold(Rat::zero(), |a, (yi, r)| a + yi * &r.coeffs[j]);
        if !s.is_zero() {
            return false;
        }
    }
    let rhs = y
        .iter()
        .zip(&rows)
        .fold(Rat::zero(), |a, (yi, r)| a + yi * &r.rhs);
    rhs.is_positive()
}

/// Solves the problem exactly.
pub fn solve(problem: &LpProblem) -> Result<LpOutcome> {
    solve_with(problem, true)
}

/// Like [`solve`], without building a Farkas certificate on infeasibility.
pub fn solve_uncertified(problem: &LpProblem) -> Result<LpOutcome> {
    solve_with(problem, false)
}

fn solve_with(problem: &LpProblem, certify: bool) -> Result<LpOutcome> {
    problem.check_dimensions()?;
    let std = StandardForm::build(problem);
    match std.run(problem.sense)? {
        Run::Optimal(u) => {
            let x = std.recover(&u);
            let optimum = dot(&problem.objective, &x);
            if !problem.is_feasible_point(&x) {
                return Err(Error::internal("simplex witness violates a constraint"));
            }
            Ok(LpOutcome {
                status: LpStatus::Optimal,
                optimum: Some(optimum),
                witness: Some(x),
                farkas: None,
            })
        }
        Run::Unbounded => Ok(LpOutcome {
            status: LpStatus::Unbounded,
            optimum: None,
            witness: None,
            farkas: None,
        }),
        Run::Infeasible => {
            let y = if certify {
                Some(farkas_certificate(problem)?)
            } else {
                None
            };
            Ok(LpOutcome {
                status: LpStatus::Infeasible,
                optimum: None,
                witness: None,
                farkas: y,
            })
        }
    }
}

/// Convenience: optimum of a problem expected to be optimal.
pub fn optimum(problem: &LpProblem) -> Result<Option<(Rat, Vec<Rat>)>> {
    let out = solve_with(problem, false)?;
    match out.status {
        LpStatus::Optimal => Ok(Some((out.optimum.unwrap(), out.witness.unwrap()))),
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(Error::internal("unexpectedly unbounded linear program")),
    }
}

/// Returns a feasible point, or `None` when the system is infeasible.
pub fn feasible_point(problem: &LpProblem) -> Result<Option<Vec<Rat>>> {
    let mut p = problem.clone();
    p.objective = vec![Rat::zero(); p.num_vars()];
    Ok(solve_with(&p, false)?.witness)
}

fn farkas_certificate(problem: &LpProblem) -> Result<Vec<Rat>> {
    let rows = problem.all_rows();
    let m = rows.len();
    let n = problem.num_vars();
    let mut aux = LpProblem::new(m, Sense::Min);
    for (i, r) in rows.iter().enumerate() {
        aux.bounds[i] = match r.relation {
            Relation::Ge => Bound::nonneg(),
            Relation::Le => Bound::nonpos(),
            Relation::Eq => Bound::free(),
        };
    }
    for j in 0..n {
        aux.add(
            rows.iter().map(|r| r.coeffs[j].clone()).collect(),
            Relation::Eq,
            Rat::zero(),
        );
    }
    aux.add(
        rows.iter().map(|r| r.rhs.clone()).collect(),
        Relation::Eq,
        Rat::one(),
    );
    let std = StandardForm::build(&aux);
    match std.run(Sense::Min)? {
        Run::Optimal(u) => {
            let y = std.recover(&u);
            if verify_farkas(problem, &y) {
                Ok(y)
            } else {
                Err(Error::internal("Farkas certificate failed verification"))
            }
        }
        _ => Err(Error::internal(
            "no Farkas certificate for an infeasible program",
        )),
    }
}

enum Run {
    Optimal(Vec<Rat>),
    Infeasible,
    Unbounded,
}

/// `x_j = offset_j + Σ (sign, u_k)`.
struct VarMap {
    offset: Rat,
    parts: Vec<(usize, bool)>,
}

struct StandardForm {
    maps: Vec<VarMap>,
    /// Equality rows over u and slacks: coefficients, rhs.
    rows: Vec<(Vec<Rat>, Rat)>,
    /// Per row, the slack column that may start basic (coefficient +1).
    slack_basic: Vec<Option<usize>>,
    n_cols: usize,
    cost: Vec<Rat>,
}

impl StandardForm {
    fn build(p: &LpProblem) -> Self {
        let mut maps = Vec::with_capacity(p.num_vars());
        let mut n_u = 0;
        let mut extra: Vec<(usize, Rat)> = Vec::new();
        for b in &p.bounds {
            match (&b.lower, &b.upper) {
                (Some(l), up) => {
                    maps.push(VarMap {
                        offset: l.clone(),
                        parts: vec![(n_u, true)],
                    });
                    if let Some(u) = up {
                        extra.push((n_u, u - l));
                    }
                    n_u += 1;
                }
                (None, Some(u)) => {
                    maps.push(VarMap {
                        offset: u.clone(),
                        parts: vec![(n_u, false)],
                    });
                    n_u += 1;
                }
                (None, None) => {
                    maps.push(VarMap {
                        offset: Rat::zero(),
                        parts: vec![(n_u, true), (n_u + 1, false)],
                    });
                    n_u += 2;
                }
            }
        }

        let mut raw: Vec<(Vec<Rat>, Relation, Rat)> = Vec::new();
        for c in &p.constraints {
            let mut coeffs = vec![Rat::zero(); n_u];
            let mut rhs = c.rhs.clone();
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let m = &maps[j];
                if !m.offset.is_zero() {
                    rhs -= a * &m.offset;
                }
                for &(k, pos) in &m.parts {
                    if pos {
                        coeffs[k] += a;
                    } else {
                        coeffs[k] -= a;
                    }
                }
            }
            raw.push((coeffs, c.relation, rhs));
        }
        for (k, cap) in extra {
            let mut coeffs = vec![Rat::zero(); n_u];
            coeffs[k] = Rat::one();
            raw.push((coeffs, Relation::Le, cap));
        }

        let n_slack = raw.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_cols = n_u + n_slack;
        let mut rows = Vec::with_capacity(raw.len());
        let mut slack_basic = Vec::with_capacity(raw.len());
        let mut s = n_u;
        for (mut coeffs, rel, mut rhs) in raw {
            coeffs.resize(n_cols, Rat::zero());
            let slack = match rel {
                Relation::Le => {
                    coeffs[s] = Rat::one();
                    s += 1;
                    Some(s - 1)
                }
                Relation::Ge => {
                    coeffs[s] = -Rat::one();
                    s += 1;
                    Some(s - 1)
                }
                Relation::Eq => None,
            };
            if rhs.is_negative() {
                for c in coeffs.iter_mut() {
                    *c = -&*c;
                }
                rhs = -rhs;
            }
            let basic = slack.filter(|&k| coeffs[k].is_one());
            rows.push((coeffs, rhs));
            slack_basic.push(basic);
        }

        let mut cost = vec![Rat::zero(); n_cols];
        for (j, c) in p.objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(k, pos) in &maps[j].parts {
                if pos {
                    cost[k] += c;
                } else {
                    cost[k] -= c;
                }
            }
        }
        StandardForm {
            maps,
            rows,
            slack_basic,
            n_cols,
            cost,
        }
    }

    fn recover(&self, u: &[Rat]) -> Vec<Rat> {
        self.maps
            .iter()
            .map(|m| {
                m.parts.iter().fold(m.offset.clone(), |acc, &(k, pos)| {
                    if pos {
                        acc + &u[k]
                    } else {
                        acc - &u[k]
                    }
                })
            })
            .collect()
    }

    fn run(&self, sense: Sense) -> Result<Run> {
        let m = self.rows.len();
        let n = self.n_cols;
        let needs_art: Vec<usize> = (0..m).filter(|&i| self.slack_basic[i].is_none()).collect();
        let n_art = needs_art.len();
        let total = n + n_art;

        let mut tab = Tableau {
            a: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
            width: total,
        };
        let mut art_idx = 0;
        for i in 0..m {
            let (coeffs, rhs) = &self.rows[i];
            let mut row = coeffs.clone();
            row.resize(total + 1, Rat::zero());
            row[total] = rhs.clone();
            match self.slack_basic[i] {
                Some(k) => tab.basis.push(k),
                None => {
                    row[n + art_idx] = Rat::one();
                    tab.basis.push(n + art_idx);
                    art_idx += 1;
                }
            }
            tab.a.push(row);
        }

        if n_art > 0 {
            let mut c1 = vec![Rat::zero(); total];
            for k in n..total {
                c1[k] = Rat::one();
            }
            let mut obj = tab.reduced_costs(&c1);
            match tab.optimize(&mut obj, total) {
                Pivot::Optimal => {}
                Pivot::Unbounded => return Err(Error::internal("phase one unbounded")),
            }
            // obj[total] holds minus the phase-one optimum.
            if !obj[total].is_zero() {
                return Ok(Run::Infeasible);
            }
            // Drive remaining artificials out of the basis.
            let mut r = 0;
            while r < tab.a.len() {
                if tab.basis[r] >= n {
                    match (0..n).find(|&j| !tab.a[r][j].is_zero()) {
                        Some(j) => {
                            tab.pivot(r, j);
                            r += 1;
                        }
                        None => {
                            tab.a.remove(r);
                            tab.basis.remove(r);
                        }
                    }
                } else {
                    r += 1;
                }
            }
            for row in tab.a.iter_mut() {
                let rhs = row[total].clone();
                row.truncate(n);
                row.push(rhs);
            }
            tab.width = n;
        }

        let c2: Vec<Rat> = match sense {
            Sense::Min => self.cost.clone(),
            Sense::Max => self.cost.iter().map(|c| -c).collect(),
        };
        let mut obj = tab.reduced_costs(&c2);
        match tab.optimize(&mut obj, n) {
            Pivot::Unbounded => Ok(Run::Unbounded),
            Pivot::Optimal => {
                let mut u = vec![Rat::zero(); n];
                for (i, &b) in tab.basis.iter().enumerate() {
                    u[b] = tab.a[i][tab.width].clone();
                }
                Ok(Run::Optimal(u))
            }
        }
    }
}

enum Pivot {
    Optimal,
    Unbounded,
}

struct Tableau {
    a: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// Reduced-cost row `c - c_B B^{-1} A`, with the last entry `-c_B x_B`.
    fn reduced_costs(&self, c: &[Rat]) -> Vec<Rat> {
        let w = self.width;
        let mut obj: Vec<Rat> = c
            .iter()
            .cloned()
            .chain(std::iter::once(Rat::zero()))
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !self.a[i][j].is_zero() {
                    let t = &cb * &self.a[i][j];
                    obj[j] -= t;
                }
            }
        }
        obj
    }

    fn optimize(&mut self, obj: &mut [Rat], allowed: usize) -> Pivot {
        let w = self.width;
        loop {
            let entering = (0..allowed).find(|&j| obj[j].is_negative());
            let Some(e) = entering else {
                return Pivot::Optimal;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.a.len() {
                let piv = &self.a[i][e];
                if piv.is_positive() {
                    let ratio = &self.a[i][w] / piv;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return Pivot::Unbounded;
            };
            self.pivot(r, e);
            let f = obj[e].clone();
            if !f.is_zero() {
                for j in 0..=w {
                    if !self.a[r][j].is_zero() {
                        let t = &f * &self.a[r][j];
                        obj[j] -= t;
                    }
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let p = self.a[r][e].clone();
        if !p.is_one() {
            for j in 0..=w {
                if !self.a[r][j].is_zero() {
                    self.a[r][j] = &self.a[r][j] / &p;
                }
            }
        }
        let prow = self.a[r].clone();
        for i in 0..self.a.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][e].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.a[i];
            for j in 0..=w {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    row[j] -= t;
                }
            }
        }
        self.basis[r] = e;
    }
}
