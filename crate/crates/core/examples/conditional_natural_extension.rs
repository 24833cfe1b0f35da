use desirability::credal::{CredalSet, LinearPrevision};
use desirability::prevision::conditional_natural_extension;
use desirability::rat;
use desirability::space::{EventSet, Gamble};

fn main() -> desirability::error::Result<()> {
    // Three states, one prize, each state at least 1/4 likely.
    let cons = (0..3)
        .map(|i| {
            let mut v = vec![-1; 3];
            v[i] = 3;
            Gamble::from_ints(3, 1, &v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = CredalSet::from_constraints(3, 1, cons)?;
    let f = Gamble::from_ints(3, 1, &[1, 0, 0])?;
    let b = EventSet::states(3, 1, &[0, 1])?;
    println!(
        "P(f | first two states) = {}",
        rat::fmt(&conditional_natural_extension(&m, &f, &b)?)
    );

    // A point mass on the first state gives the other states probability zero,
    // so conditioning on them falls back to the minimum.
    let sure = CredalSet::singleton(LinearPrevision::point_mass(3, 1, 0));
    let g = Gamble::from_ints(3, 1, &[9, 4, 7])?;
    let rest = EventSet::states(3, 1, &[1, 2])?;
    println!(
        "P(g | null event) = {}",
        rat::fmt(&conditional_natural_extension(&sure, &g, &rest)?)
    );
    Ok(())
}
