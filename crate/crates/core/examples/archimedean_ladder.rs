use desirability::preference::PreferenceRelation;
use desirability::space::Space;

fn main() -> desirability::error::Result<()> {
    println!("vacuous relations with a worst outcome");
    for n in 1..=3 {
        for m in 1..=3 {
            let rel = PreferenceRelation::new(Space::unlabeled(n, m, true)?, vec![])?;
            println!(
                "  |states| = {n}, |prizes| = {m}: {}",
                rel.archimedean_class()?.label()
            );
        }
    }
    Ok(())
}
