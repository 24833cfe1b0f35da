//! Lower and upper previsions, conditional previsions and completeness checks.

use num_traits::Zero;

use crate::credal::CredalSet;
use crate::desir::DesirSet;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::space::{EventSet, Gamble};

pub use crate::credal::{enumerate_vertices, enumerate_vertices_brute, LinearPrevision};

/// A coherent lower prevision, backed either by a set of gambles or a credal set.
#[derive(Debug, Clone)]
pub enum LowerPrevision {
    Desir(DesirSet),
    Credal(CredalSet),
}

impl LowerPrevision {
    pub fn lower(&self, f: &Gamble) -> Result<Rat> {
        match self {
            LowerPrevision::Desir(d) => d.lower_prevision(f),
            LowerPrevision::Credal(m) => {
                if f.shape() != m.shape() {
                    return Err(Error::input("gamble shape differs from the credal set"));
                }
                Ok(m.lower(f))
            }
        }
    }

    pub fn upper(&self, f: &Gamble) -> Result<Rat> {
        Ok(-self.lower(&f.neg())?)
    }

    pub fn credal_set(&self) -> Result<CredalSet> {
        match self {
            LowerPrevision::Desir(d) => d.credal_set(),
            LowerPrevision::Credal(m) => Ok(m.clone()),
        }
    }
}

impl From<DesirSet> for LowerPrevision {
    fn from(d: DesirSet) -> Self {
        LowerPrevision::Desir(d)
    }
}

impl From<CredalSet> for LowerPrevision {
    fn from(m: CredalSet) -> Self {
        LowerPrevision::Credal(m)
    }
}

/// `P_(f) = sup{μ : f − μ ∈ D}`.
pub fn lower_prevision(d: &DesirSet, f: &Gamble) -> Result<Rat> {
    d.lower_prevision(f)
}

/// `P̄(f) = −P_(−f)`.
pub fn upper_prevision(d: &DesirSet, f: &Gamble) -> Result<Rat> {
    d.upper_prevision(f)
}

/// `P_(f|B) = sup{μ : B(f − μ) ∈ D}`.
pub fn conditional_lower_prevision(d: &DesirSet, f: &Gamble, event: &EventSet) -> Result<Rat> {
    d.conditional_lower_prevision(f, event)
}

/// Regular extension on a state event: `min_B f` when `P_(B) = 0`, otherwise
/// the least conditional expectation over the vertices.
pub fn conditional_natural_extension(m: &CredalSet, f: &Gamble, event: &EventSet) -> Result<Rat> {
    if f.shape() != m.shape() || event.shape() != m.shape() {
        return Err(Error::input(
            "gamble, event and credal set must share a shape",
        ));
    }
    if event.is_empty() {
        return Err(Error::input("cannot condition on an empty event"));
    }
    if event.as_state_cylinder().is_none() {
        return Err(Error::input(
            "conditioning events must be cylinders over states",
        ));
    }
    let ind = Gamble::indicator(event);
    if m.lower(&ind).is_zero() {
        return Ok(f.min_on(event).expect("nonempty event"));
    }
    let bf = f.restrict(event);
    Ok(m.vertices()
        .iter()
        .map(|v| v.expectation(&bf) / v.expectation(&ind))
        .min()
        .expect("nonempty credal set"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Beliefs,
    Values,
    Preferences,
}

/// Completeness: the relevant credal set (joint, or a re-hulled marginal) is a single prevision.
pub fn represents_complete(p: &LowerPrevision, scope: Scope) -> Result<bool> {
    let m = p.credal_set()?;
    Ok(match scope {
        Scope::Preferences => m.is_singleton(),
        Scope::Beliefs => m.omega_marginal()?.is_singleton(),
        Scope::Values => m.prize_marginal()?.is_singleton(),
    })
}

pub fn is_linear(p: &LowerPrevision) -> Result<bool> {
    represents_complete(p, Scope::Preferences)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn row(v: &[i64]) -> Gamble {
        Gamble::from_ints(1, v.len(), v).unwrap()
    }

    #[test]
    fn quarter_floor_example() {
        let cons = vec![row(&[3, -1, -1]), row(&[-1, 3, -1]), row(&[-1, -1, 3])];
        let m = CredalSet::from_constraints(1, 3, cons).unwrap();
        // Three states, one prize: transpose to a state table.
        let mt = CredalSet::from_points(
            m.vertices()
                .iter()
                .map(|v| LinearPrevision::new(v.mass().transpose()).unwrap())
                .collect(),
        )
        .unwrap();
        let f = Gamble::from_ints(3, 1, &[1, 0, 0]).unwrap();
        let b = EventSet::states(3, 1, &[0, 1]).unwrap();
        assert_eq!(
            conditional_natural_extension(&mt, &f, &b).unwrap(),
            frac(1, 3)
        );
        assert_eq!(
            conditional_natural_extension(&mt, &Gamble::indicator(&b), &b).unwrap(),
            int(1)
        );
    }

    #[test]
    fn vacuous_conditioning_gives_minimum() {
        let m = CredalSet::vacuous(3, 1);
        let f = Gamble::from_ints(3, 1, &[4, -2, 9]).unwrap();
        let b = EventSet::states(3, 1, &[0, 2]).unwrap();
        assert_eq!(conditional_natural_extension(&m, &f, &b).unwrap(), int(4));
    }

    #[test]
    fn null_event_gives_minimum() {
        let m = CredalSet::singleton(LinearPrevision::point_mass(2, 1, 0));
        let f = Gamble::from_ints(2, 1, &[5, 3]).unwrap();
        let b = EventSet::states(2, 1, &[1]).unwrap();
        assert_eq!(conditional_natural_extension(&m, &f, &b).unwrap(), int(3));
    }

    #[test]
    fn completeness_examples() {
        let prod = LinearPrevision::product(
            &LinearPrevision::uniform(2, 1),
            &LinearPrevision::new(Gamble::new(1, 2, vec![frac(1, 3), frac(2, 3)]).unwrap())
                .unwrap(),
        );
        let p = LowerPrevision::from(DesirSet::strict(CredalSet::singleton(prod)));
        for s in [Scope::Beliefs, Scope::Values, Scope::Preferences] {
            assert!(represents_complete(&p, s).unwrap());
        }
        let coin = LowerPrevision::from(DesirSet::strict(CredalSet::singleton(
            LinearPrevision::uniform(1, 2),
        )));
        assert!(is_linear(&coin).unwrap());
        // p ∈ [1/4, 1/2] on two cells.
        let m = CredalSet::from_constraints(1, 2, vec![row(&[3, -1]), row(&[-1, 1])]).unwrap();
        assert_eq!(m.vertices().len(), 2);
        assert!(!is_linear(&LowerPrevision::from(m)).unwrap());
    }
}
