//! Between the cone generated by (1, -1) and the strict set of P = (3/4, 1/4)
//! there is always another strict set. Repeating the construction halves the
//! lower prevision of (1, -1) each time.

use desirability::credal::{CredalSet, LinearPrevision};
use desirability::desir::DesirSet;
use desirability::preference::interpolate_strict_superset;
use desirability::rat::{self, frac};
use desirability::space::Gamble;

fn main() -> desirability::error::Result<()> {
    let g = Gamble::from_ints(1, 2, &[1, -1])?;
    let inner = DesirSet::generated(1, 2, vec![g])?;
    let p = LinearPrevision::new(Gamble::new(1, 2, vec![frac(3, 4), frac(1, 4)])?)?;
    let mut outer = DesirSet::strict(CredalSet::singleton(p));
    for step in 1..=4 {
        let i = interpolate_strict_superset(&inner, &outer)?;
        println!(
            "step {step}: value {}, new member {} not in the cone, old member {} dropped",
            rat::fmt(&i.value),
            i.inner_witness,
            i.outer_witness
        );
        outer = i.set;
    }
    Ok(())
}
