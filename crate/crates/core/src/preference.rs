//! Strict preference relations over horse lotteries and their cones.

use num_traits::{One, Signed, Zero};

use crate::credal::{CredalSet, LinearPrevision};
use crate::desir::{DesirSet, Representation};
use crate::error::{Error, Result};
use crate::lp::{self, LpProblem, Relation, Sense};
use crate::rat::{self, Rat};
use crate::space::{project_pi, EventSet, Gamble, HorseLottery, LotteryPair, Space};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceRelation {
    space: Space,
    pairs: Vec<LotteryPair>,
    bare: bool,
    generators: Vec<Gamble>,
    consistent: bool,
    cone: Option<DesirSet>,
}

impl PreferenceRelation {
    /// Relation on `H(Ω, X_z)`; its cone generators are `π(p − q)`.
    pub fn new(space: Space, pairs: Vec<LotteryPair>) -> Result<Self> {
        if !space.has_worst() {
            return Err(Error::input(
                "this relation needs a space with a worst outcome",
            ));
        }
        let generators = Self::check_pairs(&space, &pairs, space.act_width())?
            .iter()
            .map(|d| project_pi(d, &space))
            .collect::<Result<Vec<_>>>()?;
        let consistent = crate::desir::avoids_partial_loss(&generators)?.avoids;
        let cone = if consistent {
            Some(DesirSet::generated(
                space.n_omega(),
                space.n_prizes(),
                generators.clone(),
            )?)
        } else {
            None
        };
        Ok(PreferenceRelation {
            space,
            pairs,
            bare: false,
            generators,
            consistent,
            cone,
        })
    }

    /// Relation on `H(Ω, X)` without a worst outcome; generators are `p − q`.
    pub fn bare(space: Space, pairs: Vec<LotteryPair>) -> Result<Self> {
        let generators = Self::check_pairs(&space, &pairs, space.n_prizes())?;
        let consistent = bare_consistent(&generators)?;
        let cone = if consistent {
            Some(DesirSet::generated(
                space.n_omega(),
                space.n_prizes(),
                generators.clone(),
            )?)
        } else {
            None
        };
        Ok(PreferenceRelation {
            space,
            pairs,
            bare: true,
            generators,
            consistent,
            cone,
        })
    }

    fn check_pairs(space: &Space, pairs: &[LotteryPair], width: usize) -> Result<Vec<Gamble>> {
        let mut out = Vec::with_capacity(pairs.len());
        for (i, (p, q)) in pairs.iter().enumerate() {
            for l in [p, q] {
                if l.table().shape() != (space.n_omega(), width) {
                    return Err(Error::input(format!(
                        "pair {i}: lotteries must be {}x{} tables",
                        space.n_omega(),
                        width
                    )));
                }
            }
            if p == q {
                return Err(Error::model(format!(
                    "pair {i} prefers a lottery to itself"
                )));
            }
            out.push(p.difference(q));
        }
        Ok(out)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn pairs(&self) -> &[LotteryPair] {
        &self.pairs
    }

    pub fn is_bare(&self) -> bool {
        self.bare
    }

    /// Cone generators: `π(p − q)`, or `p − q` for bare relations.
    pub fn generators(&self) -> &[Gamble] {
        &self.generators
    }

    /// With a worst outcome: the generators avoid partial loss.
    /// Bare: zero is not a positive combination of the differences.
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    fn require_consistent(&self) -> Result<()> {
        if self.consistent {
            Ok(())
        } else {
            Err(Error::model("the relation is not consistent"))
        }
    }

    /// The set of desirable gambles `posi(π(p − q) ∪ L⁺)`.
    pub fn to_desirset(&self) -> Result<DesirSet> {
        if self.bare {
            return Err(Error::input(
                "a bare relation has no gamble image; extend it to a worst outcome first",
            ));
        }
        self.require_consistent()?;
        Ok(self
            .cone
            .clone()
            .expect("consistent relations keep their cone"))
    }

    /// `p ≻ q` in the closure of the relation.
    pub fn holds(&self, p: &HorseLottery, q: &HorseLottery) -> Result<bool> {
        self.require_consistent()?;
        if self.bare {
            let d = p.difference(q);
            if d.shape() != (self.space.n_omega(), self.space.n_prizes()) {
                return Err(Error::input("lottery shape differs from the relation"));
            }
            if d.is_zero() || self.generators.is_empty() {
                return Ok(false);
            }
            let k = self.generators.len();
            let mut prob = LpProblem::new(k, Sense::Max);
            for c in 0..d.len() {
                prob.add(
                    self.generators
                        .iter()
                        .map(|g| g.values()[c].clone())
                        .collect(),
                    Relation::Eq,
                    d.values()[c].clone(),
                );
            }
            return Ok(lp::feasible_point(&prob)?.is_some());
        }
        let d = project_pi(&p.difference(q), &self.space)?;
        let cone = self
            .cone
            .as_ref()
            .expect("consistent relations keep their cone");
        cone.contains(&d)
    }

    /// Minimal extension of a bare relation to a space with a worst outcome:
    /// the natural extension of the differences as gambles.
    pub fn extend_to_worst_outcome(&self) -> Result<DesirSet> {
        if !self.bare {
            return Err(Error::input("the relation already has a worst outcome"));
        }
        self.require_consistent()?;
        Ok(self
            .cone
            .clone()
            .expect("consistent relations keep their cone"))
    }

    pub fn archimedean_class(&self) -> Result<ArchimedeanClass> {
        let set = if self.bare {
            self.extend_to_worst_outcome()?
        } else {
            self.to_desirset()?
        };
        archimedean_class(&set)
    }

    /// Whether the cone sits inside the strict set of some linear prevision.
    pub fn has_open_superset(&self) -> Result<(bool, Option<LinearPrevision>)> {
        let set = if self.bare {
            self.extend_to_worst_outcome()?
        } else {
            self.to_desirset()?
        };
        set.has_open_superset()
    }
}

/// Zero is not a positive combination of the differences.
fn bare_consistent(generators: &[Gamble]) -> Result<bool> {
    if generators.is_empty() {
        return Ok(true);
    }
    let k = generators.len();
    let n = generators[0].len();
    let mut p = LpProblem::new(k, Sense::Max);
    for c in 0..n {
        p.add(
            generators.iter().map(|g| g.values()[c].clone()).collect(),
            Relation::Eq,
            Rat::zero(),
        );
    }
    p.add(vec![Rat::one(); k], Relation::Eq, Rat::one());
    Ok(lp::feasible_point(&p)?.is_none())
}

/// `π(p) ≥ π(q)` everywhere, with `π(p) ≠ π(q)`.
pub fn dominates(p: &HorseLottery, q: &HorseLottery, space: &Space) -> Result<bool> {
    let a = project_pi(p.table(), space)?;
    let b = project_pi(q.table(), space)?;
    Ok(a.sub(&b).is_positive())
}

/// The relation `p ≻ q ⟺ π(p − q) ∈ D`.
#[derive(Debug, Clone)]
pub struct RelationOracle {
    set: DesirSet,
    space: Space,
}

impl RelationOracle {
    pub fn holds(&self, p: &HorseLottery, q: &HorseLottery) -> Result<bool> {
        let d = project_pi(&p.difference(q), &self.space)?;
        self.set.contains(&d)
    }

    pub fn set(&self) -> &DesirSet {
        &self.set
    }
}

pub fn from_desirset(set: &DesirSet, space: &Space) -> Result<RelationOracle> {
    if !space.has_worst() {
        return Err(Error::input("the space needs a worst outcome"));
    }
    if set.shape() != (space.n_omega(), space.n_prizes()) {
        return Err(Error::input("set shape differs from the space"));
    }
    Ok(RelationOracle {
        set: set.clone(),
        space: space.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArchimedeanClass {
    NotWeak,
    WeakOnly,
    Traditional,
}

impl ArchimedeanClass {
    pub fn label(&self) -> &'static str {
        match self {
            ArchimedeanClass::NotWeak => "not-weak",
            ArchimedeanClass::WeakOnly => "weak-only",
            ArchimedeanClass::Traditional => "traditional",
        }
    }
}

/// Weak Archimedeanity is strict desirability; the traditional and strong
/// forms additionally need every cell to have positive lower probability.
pub fn archimedean_class(set: &DesirSet) -> Result<ArchimedeanClass> {
    if !set.is_strictly_desirable()? {
        return Ok(ArchimedeanClass::NotWeak);
    }
    let (r, c) = set.shape();
    for cell in 0..r * c {
        if !set
            .lower_prevision(&Gamble::unit(r, c, cell))?
            .is_positive()
        {
            return Ok(ArchimedeanClass::WeakOnly);
        }
    }
    Ok(ArchimedeanClass::Traditional)
}

/// Result of placing a strict set between a worst-outcome extension and a strict superset.
#[derive(Debug, Clone)]
pub struct Interpolation {
    pub set: DesirSet,
    /// The cone generator used to separate the three sets.
    pub gamble: Gamble,
    /// Minimiser of `P(f)` over the outer credal set.
    pub outer_minimizer: LinearPrevision,
    /// Minimiser of `P(f)` over the credal set of the inner cone.
    pub inner_minimizer: LinearPrevision,
    /// `P_₂(f)` for the returned set.
    pub value: Rat,
    /// In the new set but not the inner cone.
    pub inner_witness: Gamble,
    /// In the outer set but not the new one.
    pub outer_witness: Gamble,
}

/// Given an inner cone `R` and a strict superset `R1`, returns a strict set
/// `R2` with `R ⊊ R2 ⊊ R1`: the hull of `M(R1)` and the midpoint of the two
/// minimisers of a cone generator.
pub fn interpolate_strict_superset(inner: &DesirSet, outer: &DesirSet) -> Result<Interpolation> {
    let Representation::Generated { generators } = inner.representation() else {
        return Err(Error::model("the inner set must be given by generators"));
    };
    let Representation::Strict { credal } = outer.representation() else {
        return Err(Error::model("the outer set must be a strict set"));
    };
    if inner.shape() != outer.shape() {
        return Err(Error::input("the two sets have different shapes"));
    }
    let f = generators
        .iter()
        .find(|g| !g.is_positive())
        .cloned()
        .ok_or_else(|| {
            Error::model("the inner cone has no generator outside the positive gambles")
        })?;
    for g in generators {
        if !outer.member(g)?.member {
            return Err(Error::model(format!(
                "generator {g} of the inner set is not in the outer set"
            )));
        }
    }
    let p1 = credal.argmin(&f).clone();
    let (_, p) = inner.credal_min(&f)?;
    let mid = LinearPrevision::mix(&rat::frac(1, 2), &p1, &p);
    let mut points = credal.vertices().to_vec();
    points.push(mid);
    let m2 = CredalSet::from_points(points)?;
    let value = m2.lower(&f);
    let outer_value = credal.lower(&f);
    let half = rat::frac(1, 2);
    let inner_witness = f.add_constant(&-(&value * &half));
    let outer_witness = f.add_constant(&-((&value + &outer_value) * &half));
    let set = DesirSet::strict(m2);
    debug_assert!(!value.is_negative());
    Ok(Interpolation {
        set,
        gamble: f,
        outer_minimizer: p1,
        inner_minimizer: p,
        value,
        inner_witness,
        outer_witness,
    })
}

/// Indicator of one cell, as a gamble on the relation's space.
pub fn cell_indicator(space: &Space, state: usize, prize: usize) -> Result<Gamble> {
    let ev = EventSet::from_cells(
        space.n_omega(),
        space.n_prizes(),
        &[state * space.n_prizes() + prize],
    )?;
    Ok(Gamble::indicator(&ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn lot(rows: usize, cols: usize, v: &[Rat]) -> HorseLottery {
        HorseLottery::new(Gamble::new(rows, cols, v.to_vec()).unwrap()).unwrap()
    }

    fn space(n: usize, m: usize) -> Space {
        Space::unlabeled(n, m, true).unwrap()
    }

    #[test]
    fn consistency() {
        let s = space(1, 2);
        assert!(PreferenceRelation::new(s.clone(), vec![])
            .unwrap()
            .is_consistent());
        let a = lot(1, 3, &[int(1), int(0), int(0)]);
        let b = lot(1, 3, &[int(0), int(1), int(0)]);
        let r = PreferenceRelation::new(s, vec![(a.clone(), b.clone()), (b, a)]).unwrap();
        assert!(!r.is_consistent());
        let bare = Space::unlabeled(1, 3, false).unwrap();
        let p = lot(1, 3, &[int(1), int(0), int(0)]);
        let q = lot(1, 3, &[int(0), int(1), int(0)]);
        let ray = PreferenceRelation::bare(bare, vec![(p, q)]).unwrap();
        assert!(ray.is_consistent());
    }

    #[test]
    fn holds_examples() {
        let s = space(1, 2);
        let a = lot(1, 3, &[int(1), int(0), int(0)]);
        let b = lot(1, 3, &[int(0), int(1), int(0)]);
        let r = PreferenceRelation::new(s.clone(), vec![(a.clone(), b.clone())]).unwrap();
        assert!(r.holds(&a, &b).unwrap());
        let p = lot(1, 3, &[frac(1, 2), int(0), frac(1, 2)]);
        let q = lot(1, 3, &[int(0), frac(1, 2), frac(1, 2)]);
        assert!(r.holds(&p, &q).unwrap());
        assert!(!r.holds(&q, &p).unwrap());
        let z = HorseLottery::degenerate(1, 3, 2);
        assert!(dominates(&a, &z, &s).unwrap());
        assert!(r.holds(&a, &z).unwrap());
        assert!(!dominates(&a, &a, &s).unwrap());
    }

    #[test]
    fn dominance_rows() {
        let s = space(1, 1);
        let p = lot(1, 2, &[int(1), int(0)]);
        let q = lot(1, 2, &[frac(1, 2), frac(1, 2)]);
        assert!(dominates(&p, &q, &s).unwrap());
    }

    #[test]
    fn vacuous_relation_is_dominance() {
        let s = space(1, 2);
        let r = PreferenceRelation::new(s.clone(), vec![]).unwrap();
        let d = r.to_desirset().unwrap();
        assert_eq!(d, DesirSet::vacuous(1, 2));
        let p = lot(1, 3, &[frac(1, 2), frac(1, 2), int(0)]);
        let q = lot(1, 3, &[frac(1, 2), int(0), frac(1, 2)]);
        assert_eq!(r.holds(&p, &q).unwrap(), dominates(&p, &q, &s).unwrap());
        assert_eq!(r.holds(&q, &p).unwrap(), dominates(&q, &p, &s).unwrap());
    }

    #[test]
    fn strict_uniform_oracle() {
        let s = space(2, 1);
        let d = DesirSet::strict(CredalSet::singleton(LinearPrevision::uniform(2, 1)));
        let o = from_desirset(&d, &s).unwrap();
        let p = lot(2, 2, &[int(1), int(0), int(0), int(1)]);
        let q = lot(2, 2, &[int(0), int(1), frac(1, 2), frac(1, 2)]);
        // π(p − q) = (1, −1/2), uniform expectation 1/4.
        assert!(o.holds(&p, &q).unwrap());
        assert!(!o.holds(&q, &p).unwrap());
    }

    #[test]
    fn extension_examples() {
        let bare = Space::unlabeled(1, 2, false).unwrap();
        let empty = PreferenceRelation::bare(bare.clone(), vec![]).unwrap();
        assert_eq!(
            empty.extend_to_worst_outcome().unwrap(),
            DesirSet::vacuous(1, 2)
        );
        let p = lot(1, 2, &[int(1), int(0)]);
        let q = lot(1, 2, &[int(0), int(1)]);
        let r = PreferenceRelation::bare(bare, vec![(p, q)]).unwrap();
        let ext = r.extend_to_worst_outcome().unwrap();
        let g = Gamble::from_ints(1, 2, &[1, -1]).unwrap();
        assert_eq!(ext, DesirSet::generated(1, 2, vec![g.clone()]).unwrap());
        assert_eq!(ext.lower_prevision(&g).unwrap(), int(0));
        assert_eq!(r.archimedean_class().unwrap(), ArchimedeanClass::NotWeak);
    }

    #[test]
    fn vacuous_archimedean_boundary() {
        let r = PreferenceRelation::new(space(1, 1), vec![]).unwrap();
        assert_eq!(
            r.archimedean_class().unwrap(),
            ArchimedeanClass::Traditional
        );
        let r = PreferenceRelation::new(space(2, 1), vec![]).unwrap();
        assert_eq!(r.archimedean_class().unwrap(), ArchimedeanClass::WeakOnly);
        let pos =
            LinearPrevision::new(Gamble::new(1, 2, vec![frac(1, 3), frac(2, 3)]).unwrap()).unwrap();
        let d = DesirSet::strict(CredalSet::singleton(pos));
        assert_eq!(
            archimedean_class(&d).unwrap(),
            ArchimedeanClass::Traditional
        );
    }

    #[test]
    fn interpolation_halves() {
        let g = Gamble::from_ints(1, 2, &[1, -1]).unwrap();
        let inner = DesirSet::generated(1, 2, vec![g.clone()]).unwrap();
        let p =
            LinearPrevision::new(Gamble::new(1, 2, vec![frac(3, 4), frac(1, 4)]).unwrap()).unwrap();
        let outer = DesirSet::strict(CredalSet::singleton(p));
        let i1 = interpolate_strict_superset(&inner, &outer).unwrap();
        assert_eq!(i1.value, frac(1, 4));
        let i2 = interpolate_strict_superset(&inner, &i1.set).unwrap();
        assert_eq!(i2.value, frac(1, 8));
        assert!(i1.set.member(&i1.inner_witness).unwrap().member);
        assert!(!inner.member(&i1.inner_witness).unwrap().member);
        assert!(outer.member(&i1.outer_witness).unwrap().member);
        assert!(!i1.set.member(&i1.outer_witness).unwrap().member);
        assert!(interpolate_strict_superset(&DesirSet::vacuous(1, 2), &outer).is_err());
    }
}
