#![allow(dead_code)]

use desirability::credal::{CredalSet, LinearPrevision};
use desirability::desir::{avoids_partial_loss, Block, DesirSet};
use desirability::lp::{self, LpProblem, Relation, Sense};
use desirability::preference::PreferenceRelation;
use desirability::rat::{frac, int, Rat};
use desirability::space::{project_pi, EventSet, Gamble, HorseLottery, Space};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gamble(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Gamble {
    let v: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(lo..=hi)).collect();
    Gamble::from_ints(rows, cols, &v).unwrap()
}

pub fn nonzero_gamble(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Gamble {
    loop {
        let g = gamble(rng, rows, cols, lo, hi);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Rational gamble with entries `k/2` for `k` in `[2 lo, 2 hi]`.
pub fn half_gamble(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Gamble {
    let v: Vec<Rat> = (0..rows * cols)
        .map(|_| frac(rng.gen_range(2 * lo..=2 * hi), 2))
        .collect();
    Gamble::new(rows, cols, v).unwrap()
}

pub fn pmf(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        let s: i64 = w.iter().sum();
        if s > 0 {
            return w.iter().map(|&x| frac(x, s)).collect();
        }
    }
}

pub fn prevision(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearPrevision {
    LinearPrevision::new(Gamble::new(rows, cols, pmf(rng, rows * cols)).unwrap()).unwrap()
}

pub fn lottery(rng: &mut ChaCha8Rng, rows: usize, width: usize) -> HorseLottery {
    let mut v = Vec::new();
    for _ in 0..rows {
        v.extend(pmf(rng, width));
    }
    HorseLottery::new(Gamble::new(rows, width, v).unwrap()).unwrap()
}

pub fn credal_points(rng: &mut ChaCha8Rng, rows: usize, cols: usize, k: usize) -> CredalSet {
    CredalSet::from_points((0..k).map(|_| prevision(rng, rows, cols)).collect()).unwrap()
}

/// A credal set with at least two extreme points.
pub fn imprecise(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CredalSet {
    loop {
        let k = rng.gen_range(2..=3);
        let m = credal_points(rng, rows, cols, k);
        if m.vertices().len() >= 2 {
            return m;
        }
    }
}

/// A credal set given by one or two random constraints, with at least two vertices.
pub fn imprecise_constraints(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CredalSet {
    loop {
        let k = rng.gen_range(1..=2);
        let cons: Vec<Gamble> = (0..k)
            .map(|_| nonzero_gamble(rng, rows, cols, -2, 3))
            .collect();
        if let Ok(m) = CredalSet::from_constraints(rows, cols, cons) {
            if m.vertices().len() >= 2 {
                return m;
            }
        }
    }
}

pub fn fg(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_gens: usize) -> DesirSet {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Gamble> = (0..k)
            .map(|_| nonzero_gamble(rng, rows, cols, -3, 3))
            .collect();
        if let Ok(d) = DesirSet::generated(rows, cols, gens) {
            return d;
        }
    }
}

pub fn augmented(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DesirSet {
    let m = some_points(rng, rows, cols, 3);
    let mut border = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let g = gamble(rng, rows, cols, -3, 3);
        let b = g.add_constant(&-m.lower(&g));
        if b.is_zero() || b.is_positive() {
            continue;
        }
        let mut trial = border.clone();
        trial.push(b);
        if avoids_partial_loss(&trial).unwrap().avoids {
            border = trial;
        }
    }
    DesirSet::augmented(m, border).unwrap()
}

/// Two-block family on a table with at least two states: a joint credal set
/// on all cells and a Bayes-conditioned one on a state event.
pub fn family(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DesirSet {
    assert!(rows >= 2);
    loop {
        let m = some_points(rng, rows, cols, 2);
        let states: Vec<usize> = (0..rows).filter(|_| rng.gen_bool(0.5)).collect();
        if states.is_empty() || states.len() == rows {
            continue;
        }
        let ev = EventSet::states(rows, cols, &states).unwrap();
        let cond: Option<Vec<LinearPrevision>> =
            m.vertices().iter().map(|v| v.condition(&ev)).collect();
        let Some(cond) = cond else { continue };
        let blocks = vec![
            Block::new(EventSet::all(rows, cols), m).unwrap(),
            Block::new(ev, CredalSet::from_points(cond).unwrap()).unwrap(),
        ];
        if let Ok(d) = DesirSet::family(rows, cols, blocks, Vec::new()) {
            return d;
        }
    }
}

/// One of the four representations, chosen at random.
pub fn any_set(rng: &mut ChaCha8Rng) -> DesirSet {
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(1..=2);
    let rows = if rows * cols == 1 { 2 } else { rows };
    match rng.gen_range(0..4) {
        0 => fg(rng, rows, cols, 3),
        1 => DesirSet::strict(some_points(rng, rows, cols, 3)),
        2 => augmented(rng, rows, cols),
        _ if rows >= 2 => family(rng, rows, cols),
        _ => fg(rng, rows, cols, 3),
    }
}

/// Consistent relation over a space with a worst outcome.
pub fn relation_z(rng: &mut ChaCha8Rng, n: usize, m: usize, pairs: usize) -> PreferenceRelation {
    let space = Space::unlabeled(n, m, true).unwrap();
    loop {
        let mut ps = Vec::new();
        while ps.len() < pairs {
            let p = lottery(rng, n, m + 1);
            let q = lottery(rng, n, m + 1);
            if project_pi(&p.difference(&q), &space).unwrap().is_zero() {
                continue;
            }
            ps.push((p, q));
        }
        let r = PreferenceRelation::new(space.clone(), ps).unwrap();
        if r.is_consistent() {
            return r;
        }
    }
}

/// Consistent relation over a space without a worst outcome.
pub fn relation_bare(rng: &mut ChaCha8Rng, n: usize, m: usize, pairs: usize) -> PreferenceRelation {
    let space = Space::unlabeled(n, m, false).unwrap();
    loop {
        let mut ps = Vec::new();
        while ps.len() < pairs {
            let p = lottery(rng, n, m);
            let q = lottery(rng, n, m);
            if p != q {
                ps.push((p, q));
            }
        }
        let r = PreferenceRelation::bare(space.clone(), ps).unwrap();
        if r.is_consistent() {
            return r;
        }
    }
}

/// Lottery pair whose preference should follow from the relation: a common
/// mixture of one of its pairs with a third lottery.
pub fn implied_pair(rng: &mut ChaCha8Rng, r: &PreferenceRelation) -> (HorseLottery, HorseLottery) {
    let (p, q) = r.pairs().choose(rng).unwrap().clone();
    let third = lottery(rng, p.rows(), p.cols());
    let a = frac(rng.gen_range(1..=4), 4);
    (
        HorseLottery::mix(&a, &p, &third).unwrap(),
        HorseLottery::mix(&a, &q, &third).unwrap(),
    )
}

/// `f ∈ posi(K ∪ L⁺)` by a direct program: `f ≠ 0` and `f − Σ λ_i k_i ≥ 0` for some `λ ≥ 0`.
pub fn fg_member_oracle(gens: &[Gamble], f: &Gamble) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut p = LpProblem::new(gens.len(), Sense::Max);
    for c in 0..f.len() {
        p.add(
            gens.iter().map(|g| g.values()[c].clone()).collect(),
            Relation::Le,
            f.values()[c].clone(),
        );
    }
    lp::feasible_point(&p).unwrap().is_some()
}

pub fn min_over(points: &[LinearPrevision], f: &Gamble) -> Rat {
    points.iter().map(|p| p.expectation(f)).min().unwrap()
}

pub fn max_over(points: &[LinearPrevision], f: &Gamble) -> Rat {
    points.iter().map(|p| p.expectation(f)).max().unwrap()
}

pub fn factorizes(p: &LinearPrevision) -> bool {
    let (n, m) = p.shape();
    let po = p.omega_marginal();
    let px = p.prize_marginal();
    (0..n).all(|w| {
        (0..m).all(|x| *p.mass().get(w, x) == &po.mass().values()[w] * &px.mass().values()[x])
    })
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn small_int(rng: &mut ChaCha8Rng) -> Rat {
    int(rng.gen_range(-3..=3))
}

/// Credal set spanned by one to `max` random points.
pub fn some_points(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max: usize) -> CredalSet {
    let k = rng.gen_range(1..=max);
    credal_points(rng, rows, cols, k)
}
