//! A preference between two prizes with no worst outcome, extended to one.
//! The extension prices every preference difference at exactly zero, so it is
//! never weakly Archimedean.

use desirability::preference::{ArchimedeanClass, PreferenceRelation};
use desirability::rat;
use desirability::space::{Gamble, HorseLottery, Space};

fn main() -> desirability::error::Result<()> {
    let space = Space::new(
        vec!["rain".into(), "sun".into()],
        vec!["tea".into(), "ice".into()],
        None,
    )?;
    let p = HorseLottery::new(Gamble::from_ints(2, 2, &[1, 0, 0, 1])?)?;
    let q = HorseLottery::new(Gamble::from_ints(2, 2, &[0, 1, 1, 0])?)?;
    let rel = PreferenceRelation::bare(space, vec![(p, q)])?;
    println!("consistent: {}", rel.is_consistent());

    let ext = rel.extend_to_worst_outcome()?;
    for g in rel.generators() {
        println!(
            "generator {g}: lower prevision {}",
            rat::fmt(&ext.lower_prevision(g)?)
        );
    }
    let class = rel.archimedean_class()?;
    assert_eq!(class, ArchimedeanClass::NotWeak);
    println!("archimedean class: {}", class.label());
    Ok(())
}
