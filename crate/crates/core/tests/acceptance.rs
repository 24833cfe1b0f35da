//! Acceptance suite: one line per criterion, exact rational comparisons only.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use desirability::credal::{
    enumerate_vertices, enumerate_vertices_brute, CredalSet, LinearPrevision,
};
use desirability::desir::{avoids_partial_loss, DesirSet};
use desirability::preference::{
    archimedean_class, from_desirset, interpolate_strict_superset, ArchimedeanClass,
    PreferenceRelation,
};
use desirability::prevision::conditional_natural_extension;
use desirability::products::{
    is_strong_product, marginal_extension_brute, marginal_extension_prevision, satisfies_a4,
    satisfies_a5, strong_product, A4Verdict,
};
use desirability::rat::{frac, int};
use desirability::space::{
    pi1_inverse, pi2_inverse, project_pi, EventSet, Gamble, HorseLottery, Space,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn coin() -> Outcome {
    let u = CredalSet::singleton(LinearPrevision::uniform(2, 1));
    let f = Gamble::from_ints(2, 1, &[-1, 1]).unwrap();
    let r1 = DesirSet::strict(u.clone());
    let r2 = DesirSet::augmented(u, vec![f.clone()]).unwrap();
    let heads = EventSet::states(2, 1, &[0]).unwrap();
    let tails = EventSet::states(2, 1, &[1]).unwrap();
    let probes = [[3, -2], [-1, 1], [0, 0], [5, 7], [-4, -9]];
    for (name, d) in [("R1", &r1), ("R2", &r2)] {
        ensure!(
            d.lower_prevision(&f).unwrap() == int(0),
            "{name}: lower prevision of (-1,1) is not 0"
        );
        for p in probes {
            let g = Gamble::from_ints(2, 1, &p).unwrap();
            ensure!(
                d.conditional_lower_prevision(&g, &heads).unwrap() == int(p[0]),
                "{name}: P(g|h) != g(h) for {g}"
            );
            ensure!(
                d.conditional_lower_prevision(&g, &tails).unwrap() == int(p[1]),
                "{name}: P(g|t) != g(t) for {g}"
            );
        }
    }
    ensure!(!r1.member(&f).unwrap().member, "(-1,1) in R1");
    ensure!(r2.member(&f).unwrap().member, "(-1,1) not in R2");
    ensure!(
        r1.is_fully_archimedean().unwrap(),
        "R1 not fully archimedean"
    );
    ensure!(!r2.is_fully_archimedean().unwrap(), "R2 fully archimedean");
    Ok("2 sets, 5 probes, 2 events".into())
}

fn worst_outcome_extension() -> Outcome {
    let mut rng = rng(2);
    let mut gens = 0;
    for i in 0..20 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=4);
        let r = relation_bare(&mut rng, n, m, k);
        let ext = r.extend_to_worst_outcome().unwrap();
        for g in r.generators() {
            let v = ext.lower_prevision(g).unwrap();
            ensure!(
                v == int(0),
                "relation {i}: lower prevision {v} of generator {g}"
            );
            gens += 1;
        }
        let c = r.archimedean_class().unwrap();
        ensure!(
            c == ArchimedeanClass::NotWeak,
            "relation {i}: class {} for a nonempty cone",
            c.label()
        );
    }
    for n in 1..=3 {
        for m in 1..=3 {
            let r =
                PreferenceRelation::bare(Space::unlabeled(n, m, false).unwrap(), vec![]).unwrap();
            let c = r.archimedean_class().unwrap();
            let want = if n * m == 1 {
                ArchimedeanClass::Traditional
            } else {
                ArchimedeanClass::WeakOnly
            };
            ensure!(c == want, "empty relation on {n}x{m}: {}", c.label());
        }
    }
    Ok(format!(
        "20 relations, {gens} generators, 9 empty relations"
    ))
}

fn vacuous_grid() -> Outcome {
    for n in 1..=3 {
        for m in 1..=3 {
            let r = PreferenceRelation::new(Space::unlabeled(n, m, true).unwrap(), vec![]).unwrap();
            let d = r.to_desirset().unwrap();
            ensure!(
                d.is_strictly_desirable().unwrap(),
                "{n}x{m}: not weakly archimedean"
            );
            let c = r.archimedean_class().unwrap();
            ensure!(
                (c == ArchimedeanClass::Traditional) == (n == 1 && m == 1),
                "{n}x{m}: class {}",
                c.label()
            );
        }
    }
    Ok("9 spaces".into())
}

fn round_trip() -> Outcome {
    let mut rng = rng(4);
    let mut queries = 0;
    let mut true_answers = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let r = relation_z(&mut rng, n, m, k);
        let space = r.space().clone();
        let set = r.to_desirset().unwrap();
        let oracle = from_desirset(&set, &space).unwrap();
        for j in 0..100 {
            let (p, q) = if j % 3 == 0 {
                implied_pair(&mut rng, &r)
            } else {
                (lottery(&mut rng, n, m + 1), lottery(&mut rng, n, m + 1))
            };
            let a = r.holds(&p, &q).unwrap();
            let b = oracle.holds(&p, &q).unwrap();
            let d = project_pi(&p.difference(&q), &space).unwrap();
            let c = fg_member_oracle(r.generators(), &d);
            ensure!(
                a == b && b == c,
                "relation {i}, pair {j}: relation {a}, set {b}, direct {c}"
            );
            ensure!(
                pi1_inverse(&project_pi(p.table(), &space).unwrap(), &space).unwrap() == p,
                "pi1 identity"
            );
            ensure!(
                pi2_inverse(&d, &space).unwrap() == p.difference(&q),
                "pi2 identity"
            );
            queries += 1;
            true_answers += a as usize;
        }
    }
    Ok(format!("{queries} pairs, {true_answers} preferred"))
}

fn envelope() -> Outcome {
    let mut rng = rng(5);
    for i in 0..50 {
        let (rows, cols) = *[
            (1, 2),
            (1, 3),
            (2, 1),
            (2, 2),
            (3, 1),
            (1, 4),
            (2, 3),
            (3, 2),
            (1, 6),
            (6, 1),
        ]
        .get(rng.gen_range(0..10))
        .unwrap();
        let d = fg(&mut rng, rows, cols, 4);
        let gens = match d.representation() {
            desirability::desir::Representation::Generated { generators } => generators.clone(),
            _ => unreachable!(),
        };
        let dd = enumerate_vertices(rows, cols, &gens).unwrap();
        let brute = enumerate_vertices_brute(rows, cols, &gens).unwrap();
        ensure!(dd == brute, "set {i}: vertex lists differ");
        for _ in 0..10 {
            let f = half_gamble(&mut rng, rows, cols, -3, 3);
            let lp = d.lower_prevision(&f).unwrap();
            let oracle = min_over(&brute, &f);
            ensure!(
                lp == oracle,
                "set {i}: simplex {lp}, vertices {oracle} for {f}"
            );
        }
    }
    Ok("50 sets, 500 probes".into())
}

fn conditional() -> Outcome {
    let vac = CredalSet::vacuous(3, 1);
    let f = Gamble::from_ints(3, 1, &[4, -2, 9]).unwrap();
    let b = EventSet::states(3, 1, &[0, 2]).unwrap();
    ensure!(
        vac.lower(&Gamble::indicator(&b)) == int(0),
        "lower probability of B is not zero"
    );
    ensure!(
        conditional_natural_extension(&vac, &f, &b).unwrap() == int(4),
        "vacuous case is not min_B f"
    );

    let cons: Vec<Gamble> = (0..3)
        .map(|i| {
            let mut v = vec![-1; 3];
            v[i] = 3;
            Gamble::from_ints(3, 1, &v).unwrap()
        })
        .collect();
    let m = CredalSet::from_constraints(3, 1, cons).unwrap();
    let quarter = |a, b, c| Gamble::new(3, 1, vec![frac(a, 4), frac(b, 4), frac(c, 4)]).unwrap();
    let hand = [quarter(2, 1, 1), quarter(1, 2, 1), quarter(1, 1, 2)];
    let got: Vec<&Gamble> = m.vertices().iter().map(|v| v.mass()).collect();
    ensure!(
        got.len() == 3 && hand.iter().all(|h| got.contains(&h)),
        "vertices {got:?}"
    );
    let f = Gamble::from_ints(3, 1, &[1, 0, 0]).unwrap();
    let b = EventSet::states(3, 1, &[0, 1]).unwrap();
    // V(Bf)/V(B) at the three vertices: (1/2)/(3/4), (1/4)/(3/4), (1/4)/(1/2).
    let oracle = [frac(2, 3), frac(1, 3), frac(1, 2)]
        .into_iter()
        .min()
        .unwrap();
    let v = conditional_natural_extension(&m, &f, &b).unwrap();
    ensure!(
        v == frac(1, 3) && v == oracle,
        "three-vertex example gave {v}"
    );
    Ok("null event and three-vertex example".into())
}

fn characterization() -> Outcome {
    let mut rng = rng(7);
    for (n, m) in [(2, 2), (3, 2)] {
        for t in 0..5 {
            let mo = imprecise(&mut rng, n, 1);
            let mx = imprecise(&mut rng, 1, m);
            let sp = strong_product(&mo, &mx).unwrap();
            ensure!(
                satisfies_a5(&sp.credal).unwrap(),
                "{n}x{m} trial {t}: A5 fails"
            );
            ensure!(
                is_strong_product(&sp.credal, &mo, &mx).unwrap(),
                "{n}x{m} trial {t}: not a strong product"
            );
            ensure!(
                satisfies_a4(&sp.credal).holds(),
                "{n}x{m} trial {t}: A4 fails"
            );
        }
    }
    let corr = LinearPrevision::new(
        Gamble::new(2, 2, vec![frac(1, 2), int(0), int(0), frac(1, 2)]).unwrap(),
    )
    .unwrap();
    match satisfies_a4(&CredalSet::singleton(corr.clone())) {
        A4Verdict::Fails {
            cell,
            mass,
            product,
            ..
        } => {
            ensure!(
                cell == (0, 0) && mass == frac(1, 2) && product == frac(1, 4),
                "witness {cell:?} {mass} {product}"
            );
        }
        A4Verdict::HoldsExact => return Err("correlated mass passes A4".into()),
    }
    let prod = LinearPrevision::product(&prevision(&mut rng, 2, 1), &prevision(&mut rng, 1, 2));
    let alpha = frac(rng.gen_range(1..=3), 4);
    let mix = LinearPrevision::mix(&alpha, &LinearPrevision::uniform(2, 2), &corr);
    let mut pattern = Vec::new();
    for p in [&prod, &corr, &mix] {
        let c = CredalSet::singleton(p.clone());
        let a = factorizes(p);
        let b = satisfies_a5(&c).unwrap();
        let d = satisfies_a4(&c).holds();
        ensure!(
            a == b && b == d,
            "three-way disagreement on {}: {a} {b} {d}",
            p.mass()
        );
        pattern.push(a);
    }
    ensure!(pattern == [true, false, false], "pattern {pattern:?}");
    Ok("10 strong products, correlated witness, product/correlated/mixture".into())
}

fn total_prevision() -> Outcome {
    let mut rng = rng(8);
    for i in 0..30 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let mo = some_points(&mut rng, n, 1, 3);
        let conds: Vec<CredalSet> = (0..n).map(|_| some_points(&mut rng, 1, m, 3)).collect();
        let f = half_gamble(&mut rng, n, m, -3, 3);
        let a = marginal_extension_prevision(&mo, &conds, &f).unwrap();
        let b = marginal_extension_brute(&mo, &conds, &f).unwrap();
        ensure!(a == b, "instance {i}: {a} vs brute force {b}");
    }
    Ok("30 instances".into())
}

fn axioms() -> Outcome {
    let mut rng = rng(9);
    let mut d_probes = 0;
    let mut members = 0;
    for _ in 0..50 {
        let d = any_set(&mut rng);
        let (r, c) = d.shape();
        ensure!(
            !d.member(&Gamble::zero(r, c)).unwrap().member,
            "D1: zero is desirable"
        );
        for _ in 0..10 {
            let mut f = half_gamble(&mut rng, r, c, -3, 3);
            let mut g = half_gamble(&mut rng, r, c, -3, 3);
            if rng.gen_bool(0.5) {
                f = f.add_constant(&(frac(1, 2) - d.lower_prevision(&f).unwrap()));
                g = g.add_constant(&(frac(1, 2) - d.lower_prevision(&g).unwrap()));
            }
            let fm = d.member(&f).unwrap().member;
            let gm = d.member(&g).unwrap().member;
            ensure!(!f.is_positive() || fm, "D2: {f} positive but not desirable");
            let lambda = frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            ensure!(
                !fm || d.member(&f.scale(&lambda)).unwrap().member,
                "D3 fails for {f}"
            );
            ensure!(
                !(fm && gm) || d.member(&f.add(&g)).unwrap().member,
                "D4 fails for {f} + {g}"
            );
            d_probes += 1;
            members += fm as usize;
        }
    }
    let mut c_probes = 0;
    for _ in 0..50 {
        let d = any_set(&mut rng);
        let (r, c) = d.shape();
        let credal = d.credal_set().ok();
        for _ in 0..10 {
            let f = half_gamble(&mut rng, r, c, -3, 3);
            let g = half_gamble(&mut rng, r, c, -3, 3);
            let pf = d.lower_prevision(&f).unwrap();
            ensure!(pf >= *f.values().iter().min().unwrap(), "C1 fails for {f}");
            let lambda = frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            ensure!(
                d.lower_prevision(&f.scale(&lambda)).unwrap() == &lambda * &pf,
                "C2 fails for {f}"
            );
            let pg = d.lower_prevision(&g).unwrap();
            ensure!(
                d.lower_prevision(&f.add(&g)).unwrap() >= &pf + &pg,
                "C3 fails for {f} + {g}"
            );
            let up = d.upper_prevision(&f).unwrap();
            ensure!(
                up == -d.lower_prevision(&f.neg()).unwrap(),
                "conjugacy fails for {f}"
            );
            if let Some(m) = &credal {
                ensure!(
                    pf == min_over(m.vertices(), &f),
                    "lower envelope fails for {f}"
                );
                ensure!(
                    up == max_over(m.vertices(), &f),
                    "upper envelope fails for {f}"
                );
            }
            c_probes += 1;
        }
    }
    let mut a_probes = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=2);
        let r = {
            let k = rng.gen_range(1..=3);
            relation_z(&mut rng, n, m, k)
        };
        let z = HorseLottery::degenerate(n, m + 1, m);
        for _ in 0..10 {
            let (p, q) = if rng.gen_bool(0.5) {
                implied_pair(&mut rng, &r)
            } else {
                (lottery(&mut rng, n, m + 1), lottery(&mut rng, n, m + 1))
            };
            ensure!(!r.holds(&p, &p).unwrap(), "A1: irreflexivity fails");
            let lower = HorseLottery::mix(&frac(1, 2), &q, &z).unwrap();
            let pq = r.holds(&p, &q).unwrap();
            let ql = r.holds(&q, &lower).unwrap();
            ensure!(
                !(pq && ql) || r.holds(&p, &lower).unwrap(),
                "A1: transitivity fails"
            );
            let third = lottery(&mut rng, n, m + 1);
            let alpha = frac(rng.gen_range(1..=3), 4);
            let mp = HorseLottery::mix(&alpha, &p, &third).unwrap();
            let mq = HorseLottery::mix(&alpha, &q, &third).unwrap();
            ensure!(
                pq == r.holds(&mp, &mq).unwrap(),
                "A2: mixture independence fails"
            );
            a_probes += 1;
        }
    }
    Ok(format!(
        "{d_probes} D probes ({members} members), {c_probes} C probes, {a_probes} A probes"
    ))
}

fn interpolation() -> Outcome {
    let g = Gamble::from_ints(1, 2, &[1, -1]).unwrap();
    let inner = DesirSet::generated(1, 2, vec![g.clone()]).unwrap();
    let p = LinearPrevision::new(Gamble::new(1, 2, vec![frac(3, 4), frac(1, 4)]).unwrap()).unwrap();
    let mut outer = DesirSet::strict(CredalSet::singleton(p));
    let mut values = Vec::new();
    for step in 0..2 {
        let i = interpolate_strict_superset(&inner, &outer).unwrap();
        ensure!(
            i.set.member(&g).unwrap().member,
            "step {step}: generator not in the new set"
        );
        ensure!(
            i.set.member(&i.inner_witness).unwrap().member,
            "step {step}: inner witness outside"
        );
        ensure!(
            !inner.member(&i.inner_witness).unwrap().member,
            "step {step}: inner witness in the cone"
        );
        ensure!(
            outer.member(&i.outer_witness).unwrap().member,
            "step {step}: outer witness outside"
        );
        ensure!(
            !i.set.member(&i.outer_witness).unwrap().member,
            "step {step}: outer witness in the new set"
        );
        let old = outer.credal_set().unwrap();
        let new = i.set.credal_set().unwrap();
        for v in old.vertices() {
            ensure!(
                new.contains(v).unwrap(),
                "step {step}: new set is not inside the outer set"
            );
        }
        values.push(i.value.clone());
        outer = i.set;
    }
    ensure!(values == [frac(1, 4), frac(1, 8)], "values {values:?}");
    Ok("1/4 then 1/8".into())
}

fn structural() -> Outcome {
    let mut rng = rng(11);
    let mut strict = 0;
    for i in 0..50 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=2);
        let space = Space::unlabeled(n, m, true).unwrap();
        let r = if rng.gen_bool(0.3) {
            // Dominance pairs: every generator is a positive gamble.
            let z = HorseLottery::degenerate(n, m + 1, m);
            let pairs = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let p = lottery(&mut rng, n, m + 1);
                    let q = HorseLottery::mix(&frac(1, 2), &p, &z).unwrap();
                    (p, q)
                })
                .filter(|(p, q)| !project_pi(&p.difference(q), &space).unwrap().is_zero())
                .collect();
            PreferenceRelation::new(space, pairs).unwrap()
        } else {
            {
                let k = rng.gen_range(1..=3);
                relation_z(&mut rng, n, m, k)
            }
        };
        let d = r.to_desirset().unwrap();
        let open = d.has_open_superset().unwrap().0;
        let apl = avoids_partial_loss(r.generators()).unwrap().avoids;
        ensure!(
            open == apl,
            "cone {i}: open superset {open}, avoids partial loss {apl}"
        );
        let full = d.is_fully_archimedean().unwrap();
        let sd = d.is_strictly_desirable().unwrap();
        ensure!(
            full == sd,
            "cone {i}: fully archimedean {full}, strictly desirable {sd}"
        );
        ensure!(
            (archimedean_class(&d).unwrap() != ArchimedeanClass::NotWeak) == sd,
            "cone {i}: class disagrees"
        );
        strict += sd as usize;
    }
    Ok(format!("50 cones, {strict} strictly desirable"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "coin example", coin),
        (2, "worst-outcome extension", worst_outcome_extension),
        (3, "vacuous archimedean grid", vacuous_grid),
        (4, "relation/set round trip", round_trip),
        (5, "envelope oracle", envelope),
        (6, "conditional natural extension", conditional),
        (7, "state-independence characterization", characterization),
        (8, "law of total prevision", total_prevision),
        (9, "coherence axiom suites", axioms),
        (10, "strict superset interpolation", interpolation),
        (11, "generated cone structure", structural),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL {name}: {why} ({ms} ms)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
