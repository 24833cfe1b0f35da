//! Coherent sets of desirable gambles.
//!
//! Every representation is reduced to the same normal form before an LP is
//! built: a list of *blocks* and a list of *rays*. A block pairs an event `B`
//! with a credal set whose vertices live on `B`, and contributes the gambles
//! `g = Bg` that every vertex prices strictly above zero. A ray contributes
//! itself. The set is the positive hull of blocks, rays and `L⁺`.
//!
//! * generated sets: no blocks, the generators are the rays;
//! * strict sets: one block on the whole table;
//! * augmented sets: one block on the whole table, the border gambles are rays;
//! * family sets: several blocks (conditional assessments) plus optional rays.

use num_traits::{One, Signed, Zero};

use crate::credal::{CredalSet, LinearPrevision};
use crate::error::{Error, Result};
use crate::lp::{self, Bound, LpProblem, LpStatus, Relation, Sense};
use crate::rat::{self, Rat};
use crate::space::{EventSet, Gamble};

/// Largest number of blocks for which subsets are enumerated.
pub const MAX_BLOCKS: usize = 12;

/// A conditional assessment: a credal set whose vertices are supported on `event`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    event: EventSet,
    credal: CredalSet,
}

impl Block {
    pub fn new(event: EventSet, credal: CredalSet) -> Result<Self> {
        if event.is_empty() {
            return Err(Error::input("a block needs a nonempty event"));
        }
        if event.shape() != credal.shape() {
            return Err(Error::input(
                "block event and credal set have different shapes",
            ));
        }
        for v in credal.vertices() {
            if !v.mass().support().is_subset(&event) {
                return Err(Error::input(
                    "a block's previsions must be supported on its event",
                ));
            }
        }
        Ok(Block { event, credal })
    }

    pub fn event(&self) -> &EventSet {
        &self.event
    }

    pub fn credal(&self) -> &CredalSet {
        &self.credal
    }

    /// `min_V V(f)`, the conditional lower prevision the block assesses.
    pub fn lower(&self, f: &Gamble) -> Rat {
        self.credal.lower(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    /// `posi(generators ∪ L⁺)`.
    Generated { generators: Vec<Gamble> },
    /// `{f ⪈ 0} ∪ {f : P(f) > 0 for all P in the credal set}`.
    Strict { credal: CredalSet },
    /// `posi(Strict(credal) ∪ border)`.
    Augmented {
        credal: CredalSet,
        border: Vec<Gamble>,
    },
    /// `posi(∪ blocks ∪ rays ∪ L⁺)`.
    Family {
        blocks: Vec<Block>,
        rays: Vec<Gamble>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesirSet {
    rows: usize,
    cols: usize,
    repr: Representation,
    /// Normal form: for strict and augmented sets this holds the full-table block.
    blocks: Vec<Block>,
}

/// Proof attached to a membership answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `f ⪈ 0`.
    Positive,
    /// `f = Σ parts + Σ coefficients·rays + residual`, residual ≥ 0, each part
    /// supported on its block's event and priced strictly positive by every
    /// vertex of that block. For generated sets the rays are the generators.
    Decomposition {
        parts: Vec<(usize, Gamble)>,
        ray_coefficients: Vec<Rat>,
        residual: Gamble,
    },
    /// A prevision of the set's credal set with `P(f) ≤ 0`. For augmented sets
    /// `dual` is a non-negative weighting `y` with `y·b ≥ 0` for the border
    /// and `y·f < 0`, which excludes `f` from the border rays plus `L⁺`.
    Separator {
        prevision: LinearPrevision,
        dual: Option<Gamble>,
    },
    /// Zero is never desirable.
    ZeroGamble,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLossVerdict {
    pub avoids: bool,
    /// A convex combination of the gambles that is nowhere positive.
    pub loss_weights: Option<Vec<Rat>>,
    /// A prevision pricing every gamble strictly above zero.
    pub witness: Option<LinearPrevision>,
}

/// `K` avoids partial loss: no convex combination of `K` is `≤ 0`.
pub fn avoids_partial_loss(k: &[Gamble]) -> Result<PartialLossVerdict> {
    let Some(first) = k.first() else {
        return Ok(PartialLossVerdict {
            avoids: true,
            loss_weights: None,
            witness: None,
        });
    };
    let (rows, cols) = first.shape();
    for g in k {
        first.same_shape(g)?;
    }
    let n = rows * cols;
    let mut p = LpProblem::new(k.len(), Sense::Max);
    for c in 0..n {
        p.add(
            k.iter().map(|g| g.values()[c].clone()).collect(),
            Relation::Le,
            Rat::zero(),
        );
    }
    p.add(vec![Rat::one(); k.len()], Relation::Eq, Rat::one());
    if let Some(w) = lp::feasible_point(&p)? {
        return Ok(PartialLossVerdict {
            avoids: false,
            loss_weights: Some(w),
            witness: None,
        });
    }
    let (eps, prev) = positive_pricing(rows, cols, k)?;
    if !eps.is_positive() {
        return Err(Error::internal(
            "no strictly positive pricing for a set avoiding partial loss",
        ));
    }
    Ok(PartialLossVerdict {
        avoids: true,
        loss_weights: None,
        witness: Some(prev),
    })
}

/// `max ε ≤ 1` such that some `P` in the simplex has `P(g) ≥ ε` for all `g`.
fn positive_pricing(rows: usize, cols: usize, k: &[Gamble]) -> Result<(Rat, LinearPrevision)> {
    let n = rows * cols;
    let mut p = LpProblem::new(n + 1, Sense::Max);
    p.objective[n] = Rat::one();
    p.set_bound(n, None, Some(Rat::one()));
    for g in k {
        let mut row: Vec<Rat> = g.values().to_vec();
        row.push(-Rat::one());
        p.add(row, Relation::Ge, Rat::zero());
    }
    let mut s = vec![Rat::one(); n];
    s.push(Rat::zero());
    p.add(s, Relation::Eq, Rat::one());
    let (eps, x) = lp::optimum(&p)?.ok_or_else(|| Error::internal("pricing program infeasible"))?;
    let prev = LinearPrevision::new(Gamble::new(rows, cols, x[..n].to_vec())?)?;
    Ok((eps, prev))
}

/// Scalar variables appearing in a decomposition program.
struct Scalar {
    /// Added to the target gamble: `coeff[c] · value` on cell `c`.
    coeff: Option<Gamble>,
    bound: Bound,
}

/// `target(s) − Σ_{i∈J} g_i − Σ ν·rays ≥ 0` with `g_i` supported on block `i`.
struct Decomp<'a> {
    f: &'a Gamble,
    scalars: Vec<Scalar>,
    /// Block rows `V(g_i) ≥ s[strict]` (or `≥ 0` when `None`).
    strict: Option<usize>,
    blocks: Vec<(usize, &'a Block)>,
    rays: &'a [Gamble],
    /// Extra linear rows over the scalars.
    extra: Vec<(Vec<Rat>, Relation, Rat)>,
    maximize: Option<usize>,
}

struct DecompSolution {
    value: Rat,
    parts: Vec<(usize, Gamble)>,
    nu: Vec<Rat>,
}

impl<'a> Decomp<'a> {
    fn solve(&self) -> Result<Option<DecompSolution>> {
        let (rows, cols) = self.f.shape();
        let n = rows * cols;
        let ns = self.scalars.len();
        let mut offsets = Vec::with_capacity(self.blocks.len());
        let mut nv = ns;
        for (_, b) in &self.blocks {
            offsets.push(nv);
            nv += b.event.len();
        }
        let ray_off = nv;
        nv += self.rays.len();

        let mut p = LpProblem::new(nv, Sense::Max);
        for (i, s) in self.scalars.iter().enumerate() {
            p.bounds[i] = s.bound.clone();
        }
        for (bi, (_, b)) in self.blocks.iter().enumerate() {
            for k in 0..b.event.len() {
                p.bounds[offsets[bi] + k] = Bound::free();
            }
        }
        if let Some(m) = self.maximize {
            p.objective[m] = Rat::one();
        }
        let cell_pos: Vec<Vec<Option<usize>>> = self
            .blocks
            .iter()
            .map(|(_, b)| {
                let mut pos = vec![None; n];
                for (k, c) in b.event.indices().enumerate() {
                    pos[c] = Some(k);
                }
                pos
            })
            .collect();
        for c in 0..n {
            let mut row = vec![Rat::zero(); nv];
            for (i, s) in self.scalars.iter().enumerate() {
                if let Some(g) = &s.coeff {
                    row[i] = g.values()[c].clone();
                }
            }
            for (bi, pos) in cell_pos.iter().enumerate() {
                if let Some(k) = pos[c] {
                    row[offsets[bi] + k] = -Rat::one();
                }
            }
            for (j, r) in self.rays.iter().enumerate() {
                row[ray_off + j] = -&r.values()[c];
            }
            p.add(row, Relation::Ge, -&self.f.values()[c]);
        }
        for (bi, (_, b)) in self.blocks.iter().enumerate() {
            for v in b.credal.vertices() {
                let mut row = vec![Rat::zero(); nv];
                for (k, c) in b.event.indices().enumerate() {
                    row[offsets[bi] + k] = v.mass().values()[c].clone();
                }
                if let Some(t) = self.strict {
                    row[t] = -Rat::one();
                }
                p.add(row, Relation::Ge, Rat::zero());
            }
        }
        for (coeffs, rel, rhs) in &self.extra {
            let mut row = coeffs.clone();
            row.resize(nv, Rat::zero());
            p.add(row, *rel, rhs.clone());
        }
        let out = lp::solve_uncertified(&p)?;
        match out.status {
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(Error::internal(
                "decomposition program unbounded; the set is not coherent",
            )),
            LpStatus::Optimal => {
                let x = out.witness.unwrap();
                let mut parts = Vec::with_capacity(self.blocks.len());
                for (bi, (idx, b)) in self.blocks.iter().enumerate() {
                    let mut g = Gamble::zero(rows, cols);
                    let mut vals = g.values().to_vec();
                    for (k, c) in b.event.indices().enumerate() {
                        vals[c] = x[offsets[bi] + k].clone();
                    }
                    g = Gamble::new(rows, cols, vals)?;
                    parts.push((*idx, g));
                }
                Ok(Some(DecompSolution {
                    value: out.optimum.unwrap(),
                    parts,
                    nu: x[ray_off..].to_vec(),
                }))
            }
        }
    }
}

fn residual_of(f: &Gamble, parts: &[(usize, Gamble)], rays: &[Gamble], nu: &[Rat]) -> Gamble {
    let mut r = f.clone();
    for (_, g) in parts {
        r = r.sub(g);
    }
    for (c, g) in nu.iter().zip(rays) {
        if !c.is_zero() {
            r = r.sub(&g.scale(c));
        }
    }
    r
}

/// Nonempty subsets of `0..k` in increasing size, then lexicographic order.
fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << k))
        .map(|m| (0..k).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl DesirSet {
    /// Natural extension of finitely many gambles. Rejects zero generators and
    /// generator sets that incur partial loss.
    pub fn generated(rows: usize, cols: usize, generators: Vec<Gamble>) -> Result<Self> {
        for g in &generators {
            if g.shape() != (rows, cols) {
                return Err(Error::input("generator shape differs from the set"));
            }
            if g.is_zero() {
                return Err(Error::model("the zero gamble cannot be a generator"));
            }
        }
        let v = avoids_partial_loss(&generators)?;
        if !v.avoids {
            return Err(Error::model("the generators incur partial loss"));
        }
        Ok(DesirSet {
            rows,
            cols,
            repr: Representation::Generated { generators },
            blocks: Vec::new(),
        })
    }

    /// The vacuous set `L⁺`.
    pub fn vacuous(rows: usize, cols: usize) -> Self {
        DesirSet {
            rows,
            cols,
            repr: Representation::Generated {
                generators: Vec::new(),
            },
            blocks: Vec::new(),
        }
    }

    pub fn strict(credal: CredalSet) -> Self {
        let (rows, cols) = credal.shape();
        let block = Block {
            event: EventSet::all(rows, cols),
            credal: credal.clone(),
        };
        DesirSet {
            rows,
            cols,
            repr: Representation::Strict { credal },
            blocks: vec![block],
        }
    }

    /// Strict set plus boundary rays. Each border gamble must have lower
    /// prevision zero and must not be positive; together they must avoid partial loss.
    pub fn augmented(credal: CredalSet, border: Vec<Gamble>) -> Result<Self> {
        let (rows, cols) = credal.shape();
        for b in &border {
            if b.shape() != (rows, cols) {
                return Err(Error::input("border gamble shape differs from the set"));
            }
            if b.is_positive() {
                return Err(Error::model("a border gamble may not be positive"));
            }
            if !credal.lower(b).is_zero() {
                return Err(Error::model(format!(
                    "border gamble {b} has lower prevision {} instead of 0",
                    rat::fmt(&credal.lower(b))
                )));
            }
        }
        if !avoids_partial_loss(&border)?.avoids {
            return Err(Error::model("the border gambles incur partial loss"));
        }
        let block = Block {
            event: EventSet::all(rows, cols),
            credal: credal.clone(),
        };
        Ok(DesirSet {
            rows,
            cols,
            repr: Representation::Augmented { credal, border },
            blocks: vec![block],
        })
    }

    /// Natural extension of conditional assessments and extra rays.
    pub fn family(rows: usize, cols: usize, blocks: Vec<Block>, rays: Vec<Gamble>) -> Result<Self> {
        if blocks.len() > MAX_BLOCKS {
            return Err(Error::Resource(format!(
                "at most {MAX_BLOCKS} blocks are supported"
            )));
        }
        for b in &blocks {
            if b.event.shape() != (rows, cols) {
                return Err(Error::input("block shape differs from the set"));
            }
        }
        for r in &rays {
            if r.shape() != (rows, cols) {
                return Err(Error::input("ray shape differs from the set"));
            }
            if r.is_zero() {
                return Err(Error::model("the zero gamble cannot be a ray"));
            }
        }
        let set = DesirSet {
            rows,
            cols,
            repr: Representation::Family {
                blocks: blocks.clone(),
                rays,
            },
            blocks,
        };
        if let Some(reason) = set.zero_membership()? {
            return Err(Error::model(reason));
        }
        Ok(set)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// Rays of the normal form.
    fn rays(&self) -> &[Gamble] {
        match &self.repr {
            Representation::Generated { generators } => generators,
            Representation::Strict { .. } => &[],
            Representation::Augmented { border, .. } => border,
            Representation::Family { rays, .. } => rays,
        }
    }

    fn check(&self, f: &Gamble) -> Result<()> {
        if f.shape() != (self.rows, self.cols) {
            return Err(Error::input(format!(
                "gamble of shape {}x{} queried against a {}x{} set",
                f.rows(),
                f.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(())
    }

    /// Why zero would be a member, if it would.
    fn zero_membership(&self) -> Result<Option<String>> {
        let v = avoids_partial_loss(self.rays())?;
        if !v.avoids {
            return Ok(Some("the rays incur partial loss".into()));
        }
        let zero = Gamble::zero(self.rows, self.cols);
        for j in subsets(self.blocks.len()) {
            let d = Decomp {
                f: &zero,
                scalars: vec![Scalar {
                    coeff: None,
                    bound: Bound {
                        lower: None,
                        upper: Some(Rat::one()),
                    },
                }],
                strict: Some(0),
                blocks: j.iter().map(|&i| (i, &self.blocks[i])).collect(),
                rays: self.rays(),
                extra: Vec::new(),
                maximize: Some(0),
            };
            if let Some(sol) = d.solve()? {
                if sol.value.is_positive() {
                    return Ok(Some(format!(
                        "blocks {j:?} combine to a non-positive gamble"
                    )));
                }
            }
        }
        Ok(None)
    }

    /// Decides `f ∈ D` exactly, with a certificate.
    pub fn member(&self, f: &Gamble) -> Result<MembershipVerdict> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(MembershipVerdict {
                member: false,
                certificate: Certificate::ZeroGamble,
            });
        }
        if f.is_positive() {
            return Ok(MembershipVerdict {
                member: true,
                certificate: Certificate::Positive,
            });
        }
        if let Representation::Strict { credal } = &self.repr {
            let v = credal.argmin(f);
            return Ok(if v.expectation(f).is_positive() {
                MembershipVerdict {
                    member: true,
                    certificate: Certificate::Decomposition {
                        parts: vec![(0, f.clone())],
                        ray_coefficients: Vec::new(),
                        residual: Gamble::zero(self.rows, self.cols),
                    },
                }
            } else {
                MembershipVerdict {
                    member: false,
                    certificate: Certificate::Separator {
                        prevision: v.clone(),
                        dual: None,
                    },
                }
            });
        }
        if let Some(cert) = self.decompose(f)? {
            return Ok(MembershipVerdict {
                member: true,
                certificate: cert,
            });
        }
        Ok(MembershipVerdict {
            member: false,
            certificate: self.separator(f)?,
        })
    }

    /// Membership without a certificate.
    pub fn contains(&self, f: &Gamble) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(false);
        }
        if f.is_positive() {
            return Ok(true);
        }
        if let Representation::Strict { credal } = &self.repr {
            return Ok(credal.argmin(f).expectation(f).is_positive());
        }
        Ok(self.decompose(f)?.is_some())
    }

    /// Rays (with `L⁺`) first, then subsets of blocks.
    fn decompose(&self, f: &Gamble) -> Result<Option<Certificate>> {
        let rays = self.rays();
        // Blocks first when they cover everything: the open part is the common case.
        let order: Vec<Vec<usize>> = std::iter::once(Vec::new())
            .chain(subsets(self.blocks.len()))
            .collect();
        for j in order {
            let sol = if j.is_empty() {
                Decomp {
                    f,
                    scalars: Vec::new(),
                    strict: None,
                    blocks: Vec::new(),
                    rays,
                    extra: Vec::new(),
                    maximize: None,
                }
                .solve()?
            } else {
                Decomp {
                    f,
                    scalars: vec![Scalar {
                        coeff: None,
                        bound: Bound {
                            lower: None,
                            upper: Some(Rat::one()),
                        },
                    }],
                    strict: Some(0),
                    blocks: j.iter().map(|&i| (i, &self.blocks[i])).collect(),
                    rays,
                    extra: Vec::new(),
                    maximize: Some(0),
                }
                .solve()?
                .filter(|s| s.value.is_positive())
            };
            if let Some(sol) = sol {
                let residual = residual_of(f, &sol.parts, rays, &sol.nu);
                return Ok(Some(Certificate::Decomposition {
                    parts: sol.parts,
                    ray_coefficients: sol.nu,
                    residual,
                }));
            }
        }
        Ok(None)
    }

    /// A prevision in the credal set minimising `P(f)`.
    fn separator(&self, f: &Gamble) -> Result<Certificate> {
        match &self.repr {
            Representation::Generated { .. } => {
                let (_, p) = self.credal_min(f)?;
                Ok(Certificate::Separator {
                    prevision: p,
                    dual: None,
                })
            }
            Representation::Strict { credal } => Ok(Certificate::Separator {
                prevision: credal.argmin(f).clone(),
                dual: None,
            }),
            Representation::Augmented { credal, border } => {
                let prevision = credal.argmin(f).clone();
                let dual = self.border_dual(f, border)?;
                Ok(Certificate::Separator {
                    prevision,
                    dual: Some(dual),
                })
            }
            Representation::Family { .. } => {
                let (_, p) = self.credal_min(f)?;
                Ok(Certificate::Separator {
                    prevision: p,
                    dual: None,
                })
            }
        }
    }

    /// `y ≥ 0` with `y·b ≥ 0` for the border and `y·f = −1`.
    fn border_dual(&self, f: &Gamble, border: &[Gamble]) -> Result<Gamble> {
        let n = self.rows * self.cols;
        let mut p = LpProblem::new(n, Sense::Min);
        for b in border {
            p.add(b.values().to_vec(), Relation::Ge, Rat::zero());
        }
        p.add(f.values().to_vec(), Relation::Eq, -Rat::one());
        let y = lp::feasible_point(&p)?
            .ok_or_else(|| Error::internal("no dual weighting for a non-member"))?;
        Gamble::new(self.rows, self.cols, y)
    }

    /// `min P(f)` over the credal set of `D`, with a minimiser.
    pub fn credal_min(&self, f: &Gamble) -> Result<(Rat, LinearPrevision)> {
        self.check(f)?;
        let n = self.rows * self.cols;
        match &self.repr {
            Representation::Strict { credal } | Representation::Augmented { credal, .. } => {
                let v = credal.argmin(f);
                Ok((v.expectation(f), v.clone()))
            }
            _ => {
                // Variables: P (n), then α per block vertex.
                let counts: Vec<usize> = self
                    .blocks
                    .iter()
                    .map(|b| b.credal.vertices().len())
                    .collect();
                let nv = n + counts.iter().sum::<usize>();
                let mut p = LpProblem::new(nv, Sense::Min);
                p.objective[..n].clone_from_slice(f.values());
                let mut s = vec![Rat::zero(); nv];
                s[..n].iter_mut().for_each(|v| *v = Rat::one());
                p.add(s, Relation::Eq, Rat::one());
                for r in self.rays() {
                    let mut row = r.values().to_vec();
                    row.resize(nv, Rat::zero());
                    p.add(row, Relation::Ge, Rat::zero());
                }
                let mut off = n;
                for b in &self.blocks {
                    let vs = b.credal.vertices();
                    for c in b.event.indices() {
                        let mut row = vec![Rat::zero(); nv];
                        row[c] = Rat::one();
                        for (k, v) in vs.iter().enumerate() {
                            row[off + k] = -&v.mass().values()[c];
                        }
                        p.add(row, Relation::Eq, Rat::zero());
                    }
                    off += vs.len();
                }
                let (val, x) = lp::optimum(&p)?
                    .ok_or_else(|| Error::internal("empty credal set for a coherent set"))?;
                Ok((
                    val,
                    LinearPrevision::new(Gamble::new(self.rows, self.cols, x[..n].to_vec())?)?,
                ))
            }
        }
    }

    /// Replays a certificate against `f` exactly.
    pub fn verify(&self, f: &Gamble, verdict: &MembershipVerdict) -> Result<bool> {
        self.check(f)?;
        Ok(match (&verdict.certificate, verdict.member) {
            (Certificate::Positive, true) => f.is_positive(),
            (Certificate::ZeroGamble, false) => f.is_zero(),
            (
                Certificate::Decomposition {
                    parts,
                    ray_coefficients,
                    residual,
                },
                true,
            ) => {
                let rays = self.rays();
                ray_coefficients.len() == rays.len()
                    && ray_coefficients.iter().all(|c| !c.is_negative())
                    && residual.is_nonneg()
                    && residual_of(f, parts, rays, ray_coefficients) == *residual
                    && parts.iter().all(|(i, g)| {
                        self.blocks.get(*i).is_some_and(|b| {
                            g.support().is_subset(&b.event) && b.credal.lower(g).is_positive()
                        })
                    })
                    && !f.is_zero()
            }
            (Certificate::Separator { prevision, dual }, false) => {
                if f.is_positive()
                    || prevision.expectation(f).is_positive()
                    || !self.prices(prevision)?
                {
                    return Ok(false);
                }
                match &self.repr {
                    Representation::Generated { .. } => prevision.expectation(f).is_negative(),
                    Representation::Augmented { border, .. } => {
                        let Some(y) = dual else { return Ok(false) };
                        y.is_nonneg()
                            && border
                                .iter()
                                .all(|b| !rat::dot(y.values(), b.values()).is_negative())
                            && rat::dot(y.values(), f.values()).is_negative()
                    }
                    _ => true,
                }
            }
            _ => false,
        })
    }

    /// `P` lies in the credal set of `D`.
    pub fn prices(&self, p: &LinearPrevision) -> Result<bool> {
        if p.shape() != self.shape() {
            return Err(Error::input("prevision shape differs from the set"));
        }
        match &self.repr {
            Representation::Generated { generators } => {
                Ok(generators.iter().all(|g| !p.expectation(g).is_negative()))
            }
            Representation::Strict { credal } | Representation::Augmented { credal, .. } => {
                credal.contains(p)
            }
            Representation::Family { rays, blocks } => {
                if rays.iter().any(|r| p.expectation(r).is_negative()) {
                    return Ok(false);
                }
                for b in blocks {
                    let restricted = p.mass().restrict(&b.event);
                    let mass: Rat = restricted.values().iter().sum();
                    if mass.is_zero() {
                        continue;
                    }
                    let q = LinearPrevision::new(restricted.scale(&(Rat::one() / mass)))?;
                    if !b.credal.contains(&q)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `sup{μ : f − μ ∈ D}`.
    pub fn lower_prevision(&self, f: &Gamble) -> Result<Rat> {
        self.check(f)?;
        match &self.repr {
            Representation::Strict { credal } | Representation::Augmented { credal, .. } => {
                Ok(credal.lower(f))
            }
            _ => {
                let ones = Gamble::constant(self.rows, self.cols, -Rat::one());
                let d = Decomp {
                    f,
                    scalars: vec![Scalar {
                        coeff: Some(ones),
                        bound: Bound::free(),
                    }],
                    strict: None,
                    blocks: self.blocks.iter().enumerate().collect(),
                    rays: self.rays(),
                    extra: Vec::new(),
                    maximize: Some(0),
                };
                let sol = d
                    .solve()?
                    .ok_or_else(|| Error::internal("lower prevision program infeasible"))?;
                Ok(sol.value)
            }
        }
    }

    /// `−P_(−f)`.
    pub fn upper_prevision(&self, f: &Gamble) -> Result<Rat> {
        Ok(-self.lower_prevision(&f.neg())?)
    }

    /// `sup{μ : B(f − μ) ∈ D}`.
    pub fn conditional_lower_prevision(&self, f: &Gamble, event: &EventSet) -> Result<Rat> {
        self.check(f)?;
        if event.shape() != self.shape() {
            return Err(Error::input("event shape differs from the set"));
        }
        if event.is_empty() {
            return Err(Error::input("cannot condition on an empty event"));
        }
        let floor = f.min_on(event).expect("nonempty event");
        match &self.repr {
            Representation::Strict { credal } => {
                Ok(strict_conditional(credal, f, event).max(floor))
            }
            _ => {
                let mut best = floor;
                if let Some(v) = self.conditional_rays(f, event)? {
                    best = best.max(v);
                }
                let relevant: Vec<usize> = (0..self.blocks.len())
                    .filter(|&i| !self.blocks[i].event.is_disjoint(event))
                    .collect();
                if let Representation::Augmented { credal, .. } = &self.repr {
                    // Border rays never help strict positivity, so the open part is the strict value.
                    return Ok(best.max(strict_conditional(credal, f, event)));
                }
                for j in subsets(relevant.len()) {
                    let j: Vec<usize> = j.iter().map(|&k| relevant[k]).collect();
                    if let Some(v) = self.conditional_blocks(f, event, &j)? {
                        best = best.max(v);
                    }
                }
                Ok(best)
            }
        }
    }

    /// `max μ` with `B(f − μ) − Σ ν r ≥ 0`.
    fn conditional_rays(&self, f: &Gamble, event: &EventSet) -> Result<Option<Rat>> {
        let bf = f.restrict(event);
        let minus_b = Gamble::indicator(event).neg();
        let d = Decomp {
            f: &bf,
            scalars: vec![Scalar {
                coeff: Some(minus_b),
                bound: Bound::free(),
            }],
            strict: None,
            blocks: Vec::new(),
            rays: self.rays(),
            extra: Vec::new(),
            maximize: Some(0),
        };
        Ok(d.solve()?.map(|s| s.value))
    }

    /// For a nonempty block subset `J`: if `B(f − μ)` can be written with
    /// strictly positive parts for some `μ`, the relaxed optimum in `μ`.
    fn conditional_blocks(&self, f: &Gamble, event: &EventSet, j: &[usize]) -> Result<Option<Rat>> {
        let bf = f.restrict(event);
        let minus_b = Gamble::indicator(event).neg();
        let blocks: Vec<(usize, &Block)> = j.iter().map(|&i| (i, &self.blocks[i])).collect();
        let strict = Decomp {
            f: &bf,
            scalars: vec![
                Scalar {
                    coeff: Some(minus_b.clone()),
                    bound: Bound::free(),
                },
                Scalar {
                    coeff: None,
                    bound: Bound {
                        lower: None,
                        upper: Some(Rat::one()),
                    },
                },
            ],
            strict: Some(1),
            blocks: blocks.clone(),
            rays: self.rays(),
            extra: Vec::new(),
            maximize: Some(1),
        };
        match strict.solve()? {
            Some(s) if s.value.is_positive() => {}
            _ => return Ok(None),
        }
        let relaxed = Decomp {
            f: &bf,
            scalars: vec![Scalar {
                coeff: Some(minus_b),
                bound: Bound::free(),
            }],
            strict: None,
            blocks,
            rays: self.rays(),
            extra: Vec::new(),
            maximize: Some(0),
        };
        Ok(relaxed.solve()?.map(|s| s.value))
    }

    /// Every member is strictly desirable: `f ⪈ 0` or `P_(f) > 0`.
    pub fn is_strictly_desirable(&self) -> Result<bool> {
        match &self.repr {
            Representation::Strict { .. } => Ok(true),
            Representation::Augmented { border, .. } => Ok(border.is_empty()),
            Representation::Generated { generators } => {
                for g in generators {
                    if !g.is_positive() && !self.lower_prevision(g)?.is_positive() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Representation::Family { rays, blocks } => {
                for r in rays {
                    if !r.is_positive() && !self.lower_prevision(r)?.is_positive() {
                        return Ok(false);
                    }
                }
                for b in blocks {
                    if !self
                        .lower_prevision(&Gamble::indicator(&b.event))?
                        .is_positive()
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Every member `f` has `I_{S(f)}(f − ε) ∈ D` for some `ε > 0`; checked on generators.
    pub fn is_fully_archimedean(&self) -> Result<bool> {
        if let Representation::Strict { .. } = self.repr {
            return Ok(true);
        }
        for r in self.rays() {
            if r.is_positive() {
                continue;
            }
            if !self.shrinks(r, &Gamble::indicator(&r.support()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∃ ε > 0 : f − ε d ∈ D`.
    pub fn shrinks(&self, f: &Gamble, d: &Gamble) -> Result<bool> {
        self.check(f)?;
        let minus_d = d.neg();
        let rays = self.rays();
        let eps = Scalar {
            coeff: Some(minus_d.clone()),
            bound: Bound {
                lower: Some(Rat::zero()),
                upper: Some(Rat::one()),
            },
        };
        let plain = Decomp {
            f,
            scalars: vec![eps],
            strict: None,
            blocks: Vec::new(),
            rays,
            extra: Vec::new(),
            maximize: Some(0),
        };
        if plain.solve()?.is_some_and(|s| s.value.is_positive()) {
            return Ok(true);
        }
        for j in subsets(self.blocks.len()) {
            let d = Decomp {
                f,
                scalars: vec![
                    Scalar {
                        coeff: Some(minus_d.clone()),
                        bound: Bound {
                            lower: Some(Rat::zero()),
                            upper: Some(Rat::one()),
                        },
                    },
                    Scalar {
                        coeff: None,
                        bound: Bound::free(),
                    },
                ],
                strict: Some(1),
                blocks: j.iter().map(|&i| (i, &self.blocks[i])).collect(),
                rays,
                extra: vec![(vec![-Rat::one(), Rat::one()], Relation::Le, Rat::zero())],
                maximize: Some(1),
            };
            if d.solve()?.is_some_and(|s| s.value.is_positive()) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// A linear prevision whose strict set contains `D`, when one exists.
    pub fn has_open_superset(&self) -> Result<(bool, Option<LinearPrevision>)> {
        match &self.repr {
            Representation::Generated { generators } => {
                let (eps, p) = positive_pricing(self.rows, self.cols, generators)?;
                Ok(if eps.is_positive() {
                    (true, Some(p))
                } else {
                    (false, None)
                })
            }
            Representation::Strict { credal } => Ok((true, Some(credal.vertices()[0].clone()))),
            Representation::Augmented { credal, border } => {
                let vs = credal.vertices();
                let k = vs.len();
                let mut p = LpProblem::new(k + 1, Sense::Max);
                p.objective[k] = Rat::one();
                p.set_bound(k, None, Some(Rat::one()));
                for b in border {
                    let mut row: Vec<Rat> = vs.iter().map(|v| v.expectation(b)).collect();
                    row.push(-Rat::one());
                    p.add(row, Relation::Ge, Rat::zero());
                }
                let mut s = vec![Rat::one(); k];
                s.push(Rat::zero());
                p.add(s, Relation::Eq, Rat::one());
                let (eps, w) = lp::optimum(&p)?
                    .ok_or_else(|| Error::internal("open superset program infeasible"))?;
                if !eps.is_positive() {
                    return Ok((false, None));
                }
                let mut mass = Gamble::zero(self.rows, self.cols);
                for (wk, v) in w.iter().zip(vs) {
                    mass = mass.add(&v.mass().scale(wk));
                }
                Ok((true, Some(LinearPrevision::new(mass)?)))
            }
            Representation::Family { blocks, rays } => {
                let n = self.rows * self.cols;
                let counts: Vec<usize> = blocks.iter().map(|b| b.credal.vertices().len()).collect();
                let nv = n + counts.iter().sum::<usize>() + 1;
                let e = nv - 1;
                let mut p = LpProblem::new(nv, Sense::Max);
                p.objective[e] = Rat::one();
                p.set_bound(e, None, Some(Rat::one()));
                let mut s = vec![Rat::zero(); nv];
                s[..n].iter_mut().for_each(|v| *v = Rat::one());
                p.add(s, Relation::Eq, Rat::one());
                for r in rays {
                    let mut row = r.values().to_vec();
                    row.resize(nv, Rat::zero());
                    row[e] = -Rat::one();
                    p.add(row, Relation::Ge, Rat::zero());
                }
                let mut off = n;
                for (bi, b) in blocks.iter().enumerate() {
                    let vs = b.credal.vertices();
                    for c in b.event.indices() {
                        let mut row = vec![Rat::zero(); nv];
                        row[c] = Rat::one();
                        for (k, v) in vs.iter().enumerate() {
                            row[off + k] = -&v.mass().values()[c];
                        }
                        p.add(row, Relation::Eq, Rat::zero());
                    }
                    let mut row = vec![Rat::zero(); nv];
                    for k in 0..counts[bi] {
                        row[off + k] = Rat::one();
                    }
                    row[e] = -Rat::one();
                    p.add(row, Relation::Ge, Rat::zero());
                    off += vs.len();
                }
                let (eps, x) = lp::optimum(&p)?
                    .ok_or_else(|| Error::internal("open superset program infeasible"))?;
                if !eps.is_positive() {
                    return Ok((false, None));
                }
                Ok((
                    true,
                    Some(LinearPrevision::new(Gamble::new(
                        self.rows,
                        self.cols,
                        x[..n].to_vec(),
                    )?)?),
                ))
            }
        }
    }

    /// The credal set `{P : P(f) ≥ 0 for all f ∈ D}` with its vertices.
    pub fn credal_set(&self) -> Result<CredalSet> {
        match &self.repr {
            Representation::Generated { generators } => {
                CredalSet::from_constraints(self.rows, self.cols, generators.clone())
            }
            Representation::Strict { credal } | Representation::Augmented { credal, .. } => {
                Ok(credal.clone())
            }
            Representation::Family { blocks, rays } => {
                let mut cons = rays.clone();
                for b in blocks {
                    let h = b.credal.constraints().ok_or_else(|| {
                        Error::input("the credal set of a family needs blocks given by constraints")
                    })?;
                    cons.extend(h.iter().map(|g| g.restrict(&b.event)));
                }
                cons.retain(|g| !g.is_zero());
                CredalSet::from_constraints(self.rows, self.cols, cons)
            }
        }
    }

    /// Conditional set `{f ∈ D : f = Bf}` as a membership oracle.
    pub fn condition(&self, event: &EventSet) -> Result<ConditionalView> {
        if event.shape() != self.shape() {
            return Err(Error::input("event shape differs from the set"));
        }
        if event.is_empty() {
            return Err(Error::input("cannot condition on an empty event"));
        }
        Ok(ConditionalView {
            set: self.clone(),
            event: event.clone(),
        })
    }

    /// Marginal set on one factor as a membership oracle over factor gambles.
    pub fn marginalize(&self, keep: Factor) -> MarginalView {
        MarginalView {
            set: self.clone(),
            keep,
        }
    }
}

/// Strict-set value of `sup{μ : B(f − μ) ∈ Strict(M)}` beyond `min_B f`:
/// `min_V V(Bf)/V(B)` when every vertex charges `B`, otherwise `min_B f`.
fn strict_conditional(credal: &CredalSet, f: &Gamble, event: &EventSet) -> Rat {
    let ind = Gamble::indicator(event);
    let bf = f.restrict(event);
    let floor = f.min_on(event).expect("nonempty event");
    let mut best: Option<Rat> = None;
    for v in credal.vertices() {
        let pb = v.expectation(&ind);
        if pb.is_zero() {
            return floor;
        }
        let r = v.expectation(&bf) / pb;
        best = Some(match best {
            Some(b) if b <= r => b,
            _ => r,
        });
    }
    best.unwrap_or(floor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Omega,
    Prizes,
}

#[derive(Debug, Clone)]
pub struct ConditionalView {
    set: DesirSet,
    event: EventSet,
}

impl ConditionalView {
    pub fn event(&self) -> &EventSet {
        &self.event
    }

    pub fn member(&self, g: &Gamble) -> Result<bool> {
        if g.restrict(&self.event) != *g {
            return Ok(false);
        }
        Ok(self.set.member(g)?.member)
    }

    pub fn lower_prevision(&self, f: &Gamble) -> Result<Rat> {
        self.set.conditional_lower_prevision(f, &self.event)
    }

    /// For generated sets: the generators `Bg` that are members.
    pub fn materialized_generators(&self) -> Result<Option<Vec<Gamble>>> {
        let Representation::Generated { generators } = &self.set.repr else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for g in generators {
            let bg = g.restrict(&self.event);
            if !bg.is_zero() && self.set.member(&bg)?.member && !out.contains(&bg) {
                out.push(bg);
            }
        }
        Ok(Some(out))
    }
}

#[derive(Debug, Clone)]
pub struct MarginalView {
    set: DesirSet,
    keep: Factor,
}

impl MarginalView {
    pub fn factor(&self) -> Factor {
        self.keep
    }

    /// Cylindrical extension of a factor gamble to the joint table.
    pub fn extend(&self, g: &Gamble) -> Result<Gamble> {
        let (rows, cols) = self.set.shape();
        match self.keep {
            Factor::Omega => {
                if g.shape() != (rows, 1) {
                    return Err(Error::input(format!("expected a {rows}x1 state gamble")));
                }
                Ok(Gamble::omega_cylinder(g.values(), cols))
            }
            Factor::Prizes => {
                if g.shape() != (1, cols) {
                    return Err(Error::input(format!("expected a 1x{cols} prize gamble")));
                }
                Ok(Gamble::prize_cylinder(g.values(), rows))
            }
        }
    }

    pub fn member(&self, g: &Gamble) -> Result<bool> {
        Ok(self.set.member(&self.extend(g)?)?.member)
    }

    pub fn lower_prevision(&self, g: &Gamble) -> Result<Rat> {
        self.set.lower_prevision(&self.extend(g)?)
    }

    pub fn credal_set(&self) -> Result<CredalSet> {
        let joint = self.set.credal_set()?;
        match self.keep {
            Factor::Omega => joint.omega_marginal(),
            Factor::Prizes => joint.prize_marginal(),
        }
    }
}

/// Checks the avoiding-partial-loss condition for conditional
/// assessments on every combination of probe gambles (one per block in each
/// nonempty subset of blocks, capped at `PROBE_CAP` combinations overall).
pub fn probe_family(family: &[Block], probes: &[Gamble]) -> Result<Option<String>> {
    const PROBE_CAP: usize = 4096;
    if probes.is_empty() || family.is_empty() {
        return Ok(None);
    }
    let mut checked = 0usize;
    for j in subsets(family.len().min(MAX_BLOCKS)) {
        let mut choice = vec![0usize; j.len()];
        loop {
            // Σ_j B_j (f_j − P_j(f_j)) must have a nonnegative supremum on ∪ B_j.
            let (rows, cols) = family[0].event.shape();
            let mut total = Gamble::zero(rows, cols);
            let mut union = vec![false; rows * cols];
            for (pos, &bi) in j.iter().enumerate() {
                let b = &family[bi];
                let f = &probes[choice[pos]];
                let lp = b.lower(f);
                total = total.add(&f.add_constant(&-lp).restrict(&b.event));
                for c in b.event.indices() {
                    union[c] = true;
                }
            }
            let sup = union
                .iter()
                .enumerate()
                .filter(|(_, &u)| u)
                .map(|(c, _)| total.values()[c].clone())
                .max()
                .expect("nonempty union");
            if sup.is_negative() {
                let used: Vec<String> = choice.iter().map(|&c| probes[c].to_string()).collect();
                return Ok(Some(format!(
                    "blocks {j:?} with probes {} incur a sure loss",
                    used.join(", ")
                )));
            }
            checked += 1;
            if checked >= PROBE_CAP {
                return Ok(None);
            }
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < probes.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Natural extension of conditional credal assessments `(B_i, M_i)`, after
/// probing coherence of the conditional assessments on the caller's gambles.
pub fn build_from_conditional_family(
    rows: usize,
    cols: usize,
    family: Vec<(EventSet, CredalSet)>,
    probes: &[Gamble],
) -> Result<DesirSet> {
    let blocks = family
        .into_iter()
        .map(|(e, m)| Block::new(e, m))
        .collect::<Result<Vec<_>>>()?;
    if let Some(reason) = probe_family(&blocks, probes)? {
        return Err(Error::model(reason));
    }
    DesirSet::family(rows, cols, blocks, Vec::new())
}
