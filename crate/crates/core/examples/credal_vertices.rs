//! Vertices of a credal set given by linear constraints, and the lower
//! prevision computed twice: by a linear program and over the vertex list.

use desirability::credal::{enumerate_vertices, enumerate_vertices_brute, CredalSet};
use desirability::desir::DesirSet;
use desirability::rat;
use desirability::space::Gamble;

fn main() -> desirability::error::Result<()> {
    // Every cell has probability at least 1/4: P(4 I_i - 1) >= 0.
    let cons: Vec<Gamble> = (0..3)
        .map(|i| {
            let mut v = vec![-1; 3];
            v[i] = 3;
            Gamble::from_ints(1, 3, &v)
        })
        .collect::<Result<_, _>>()?;

    let verts = enumerate_vertices(1, 3, &cons)?;
    assert_eq!(verts, enumerate_vertices_brute(1, 3, &cons)?);
    for v in &verts {
        println!("vertex {}", v.mass());
    }

    let m = CredalSet::from_constraints(1, 3, cons.clone())?;
    let d = DesirSet::generated(1, 3, cons)?;
    let f = Gamble::from_ints(1, 3, &[2, -1, 0])?;
    println!("min over vertices: {}", rat::fmt(&m.lower(&f)));
    println!("simplex on the cone: {}", rat::fmt(&d.lower_prevision(&f)?));
    println!("upper prevision: {}", rat::fmt(&d.upper_prevision(&f)?));
    Ok(())
}
