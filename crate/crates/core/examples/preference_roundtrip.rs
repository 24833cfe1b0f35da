//! Horse lotteries over a worst outcome and the gambles they map to.

use desirability::preference::{dominates, from_desirset, PreferenceRelation};
use desirability::rat::frac;
use desirability::space::{pi1_inverse, project_pi, Gamble, HorseLottery, Space};

fn main() -> desirability::error::Result<()> {
    let space = Space::new(
        vec!["h".into(), "t".into()],
        vec!["win".into()],
        Some("lose".into()),
    )?;
    let lottery = |v: [(i64, i64); 4]| {
        HorseLottery::new(Gamble::new(
            2,
            2,
            v.iter().map(|&(a, b)| frac(a, b)).collect(),
        )?)
    };
    let bet_heads = lottery([(1, 1), (0, 1), (0, 1), (1, 1)])?;
    let bet_tails = lottery([(0, 1), (1, 1), (1, 1), (0, 1)])?;
    let half = lottery([(1, 2), (1, 2), (1, 2), (1, 2)])?;

    let rel = PreferenceRelation::new(space.clone(), vec![(bet_heads.clone(), half.clone())])?;
    let set = rel.to_desirset()?;
    println!(
        "cone generators: {:?}",
        rel.generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
    );
    println!("heads > tails: {}", rel.holds(&bet_heads, &bet_tails)?);
    println!("half > tails:  {}", rel.holds(&half, &bet_tails)?);

    let oracle = from_desirset(&set, &space)?;
    println!(
        "same answer from the set: {}",
        oracle.holds(&bet_heads, &bet_tails)?
    );

    let g = project_pi(bet_heads.table(), &space)?;
    println!(
        "pi(heads) = {g}, back again: {}",
        pi1_inverse(&g, &space)?.table()
    );
    println!(
        "heads dominates tails: {}",
        dominates(&bet_heads, &bet_tails, &space)?
    );
    Ok(())
}
