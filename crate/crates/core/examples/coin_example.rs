//! A fair coin modelled two ways: the strict set of the uniform prevision, and
//! the same set with the boundary gamble (-1, 1) added as a ray.

use desirability::credal::{CredalSet, LinearPrevision};
use desirability::desir::DesirSet;
use desirability::rat;
use desirability::space::{EventSet, Gamble};

fn main() -> desirability::error::Result<()> {
    let uniform = CredalSet::singleton(LinearPrevision::uniform(2, 1));
    let f = Gamble::from_ints(2, 1, &[-1, 1])?;

    let r1 = DesirSet::strict(uniform.clone());
    let r2 = DesirSet::augmented(uniform, vec![f.clone()])?;

    for (name, set) in [("R1", &r1), ("R2", &r2)] {
        println!("{name}");
        println!(
            "  lower prevision of {f}: {}",
            rat::fmt(&set.lower_prevision(&f)?)
        );
        println!("  contains {f}: {}", set.member(&f)?.member);
        println!("  fully archimedean: {}", set.is_fully_archimedean()?);
        println!("  strictly desirable: {}", set.is_strictly_desirable()?);
        let heads = EventSet::states(2, 1, &[0])?;
        let g = Gamble::from_ints(2, 1, &[5, -3])?;
        println!(
            "  lower prevision of {g} given heads: {}",
            rat::fmt(&set.conditional_lower_prevision(&g, &heads)?)
        );
    }
    Ok(())
}
