use desirability::lp::{self, LpProblem, LpStatus, Relation, Sense};
use desirability::rat::{self, int};

fn main() -> desirability::error::Result<()> {
    // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x, y >= 0
    let mut p = LpProblem::new(2, Sense::Max);
    p.objective = vec![int(3), int(2)];
    p.add(vec![int(1), int(1)], Relation::Le, int(4));
    p.add(vec![int(1), int(3)], Relation::Le, int(6));
    let out = lp::solve(&p)?;
    let x: Vec<String> = out
        .witness
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(rat::fmt)
        .collect();
    println!(
        "{:?}: optimum {} at ({})",
        out.status,
        rat::fmt(out.optimum.as_ref().unwrap()),
        x.join(", ")
    );

    // x + y >= 5 together with x + y <= 4 has no solution; the solver returns
    // multipliers that combine the rows into 0 >= 1.
    p.add(vec![int(1), int(1)], Relation::Ge, int(5));
    let out = lp::solve(&p)?;
    assert_eq!(out.status, LpStatus::Infeasible);
    let y = out.farkas.expect("certificate");
    println!(
        "infeasible, certificate {:?} verifies: {}",
        y.iter().map(rat::fmt).collect::<Vec<_>>(),
        lp::verify_farkas(&p, &y)
    );
    Ok(())
}
