//! Products of a state marginal and a prize marginal, and checks of whether a
//! joint model treats states and prizes as independent.

use desirability::credal::{CredalSet, LinearPrevision};
use desirability::desir::DesirSet;
use desirability::products::{
    independent_natural_extension, ine_credal_set, is_strong_product, marginal_extension_brute,
    marginal_extension_prevision, satisfies_a4, satisfies_a5, strong_product,
};
use desirability::rat::{self, frac};
use desirability::space::Gamble;

fn main() -> desirability::error::Result<()> {
    let m_omega = CredalSet::from_constraints(2, 1, vec![Gamble::from_ints(2, 1, &[2, -1])?])?;
    let m_x = CredalSet::from_constraints(
        1,
        2,
        vec![
            Gamble::from_ints(1, 2, &[3, -1])?,
            Gamble::from_ints(1, 2, &[-1, 1])?,
        ],
    )?;
    let f = Gamble::from_ints(2, 2, &[-1, 3, 1, 0])?;

    let sp = strong_product(&m_omega, &m_x)?;
    let ine = ine_credal_set(&m_omega, &m_x)?;
    let conditionals = vec![m_x.clone(), m_x.clone()];
    // Each product commits to more than the one before it.
    println!(
        "marginal extension:            {}",
        rat::fmt(&marginal_extension_prevision(&m_omega, &conditionals, &f)?)
    );
    println!(
        "  by vertex combinations:      {}",
        rat::fmt(&marginal_extension_brute(&m_omega, &conditionals, &f)?)
    );
    println!(
        "independent natural extension: {}",
        rat::fmt(&ine.lower(&f))
    );
    println!("strong product:                {}", rat::fmt(&sp.lower(&f)));

    println!("strong product satisfies A5: {}", satisfies_a5(&sp.credal)?);
    println!(
        "strong product is strong:    {}",
        is_strong_product(&sp.credal, &m_omega, &m_x)?
    );
    println!("A4 on the strong product:    {}", satisfies_a4(&sp.credal));

    let correlated = LinearPrevision::new(Gamble::new(
        2,
        2,
        vec![frac(1, 2), frac(0, 1), frac(0, 1), frac(1, 2)],
    )?)?;
    let c = CredalSet::singleton(correlated);
    println!("correlated mass satisfies A5: {}", satisfies_a5(&c)?);
    println!("A4 on the correlated mass:    {}", satisfies_a4(&c));

    // The same product at the level of desirable gambles.
    let r_omega = DesirSet::generated(2, 1, vec![Gamble::from_ints(2, 1, &[2, -1])?])?;
    let r_x = DesirSet::generated(
        1,
        2,
        vec![
            Gamble::from_ints(1, 2, &[3, -1])?,
            Gamble::from_ints(1, 2, &[-1, 1])?,
        ],
    )?;
    let joint = independent_natural_extension(&r_omega, &r_x)?;
    println!(
        "from generators:               {}",
        rat::fmt(&joint.lower_prevision(&f)?)
    );
    Ok(())
}
