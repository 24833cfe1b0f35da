//! Joint models built from a state marginal and a prize marginal, and the
//! state-independence checks on joint models.
//!
//! State marginals are `n × 1` tables and prize marginals are `1 × m` tables.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::credal::{hull_contains, CredalSet, LinearPrevision};
use crate::desir::{DesirSet, Representation};
use crate::error::{Error, Result};
use crate::lp::{self, LpProblem, Relation, Sense};
use crate::rat::{self, Rat};
use crate::space::Gamble;

/// Upper bound on the number of `M₁` combinations enumerated by brute force.
pub const MAX_COMBINATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    MarginalExtension,
    IndependentNaturalExtension,
    Strong,
}

impl ProductKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "marginal-extension" | "marginal" => Ok(ProductKind::MarginalExtension),
            "independent-natural-extension" | "ine" => Ok(ProductKind::IndependentNaturalExtension),
            "strong" => Ok(ProductKind::Strong),
            _ => Err(Error::input(format!("unknown product kind '{s}'"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProductKind::MarginalExtension => "marginal-extension",
            ProductKind::IndependentNaturalExtension => "independent-natural-extension",
            ProductKind::Strong => "strong",
        }
    }
}

fn check_omega(m: &CredalSet) -> Result<usize> {
    match m.shape() {
        (n, 1) => Ok(n),
        (r, c) => Err(Error::input(format!(
            "a state marginal is an n x 1 table, got {r}x{c}"
        ))),
    }
}

fn check_prizes(m: &CredalSet) -> Result<usize> {
    match m.shape() {
        (1, n) => Ok(n),
        (r, c) => Err(Error::input(format!(
            "a prize marginal is a 1 x m table, got {r}x{c}"
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub marginal_omega: CredalSet,
    pub marginal_x: CredalSet,
    pub kind: ProductKind,
}

impl ProductSpec {
    pub fn new(
        marginal_omega: CredalSet,
        marginal_x: CredalSet,
        kind: ProductKind,
    ) -> Result<Self> {
        check_omega(&marginal_omega)?;
        check_prizes(&marginal_x)?;
        Ok(ProductSpec {
            marginal_omega,
            marginal_x,
            kind,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.marginal_omega.shape().0, self.marginal_x.shape().1)
    }

    pub fn lower(&self, f: &Gamble) -> Result<Rat> {
        if f.shape() != self.shape() {
            return Err(Error::shape(self.shape(), f.shape()));
        }
        match self.kind {
            ProductKind::MarginalExtension => {
                let conditionals = vec![self.marginal_x.clone(); self.shape().0];
                marginal_extension_prevision(&self.marginal_omega, &conditionals, f)
            }
            ProductKind::IndependentNaturalExtension => {
                ine_lower_prevision(&self.marginal_omega, &self.marginal_x, f)
            }
            ProductKind::Strong => {
                Ok(strong_product(&self.marginal_omega, &self.marginal_x)?.lower(f))
            }
        }
    }

    pub fn upper(&self, f: &Gamble) -> Result<Rat> {
        Ok(-self.lower(&f.neg())?)
    }

    pub fn joint_credal_set(&self) -> Result<CredalSet> {
        match self.kind {
            ProductKind::MarginalExtension => {
                let conditionals = vec![self.marginal_x.clone(); self.shape().0];
                CredalSet::from_points(m1_combinations(&self.marginal_omega, &conditionals)?)
            }
            ProductKind::IndependentNaturalExtension => {
                ine_credal_set(&self.marginal_omega, &self.marginal_x)
            }
            ProductKind::Strong => {
                Ok(strong_product(&self.marginal_omega, &self.marginal_x)?.credal)
            }
        }
    }
}

fn check_conditionals(m_omega: &CredalSet, conditionals: &[CredalSet]) -> Result<(usize, usize)> {
    let n = check_omega(m_omega)?;
    if conditionals.len() != n {
        return Err(Error::dimension(n, conditionals.len()));
    }
    let m = conditionals
        .first()
        .map(check_prizes)
        .transpose()?
        .unwrap_or(0);
    for c in conditionals {
        if check_prizes(c)? != m {
            return Err(Error::input(
                "conditional models have different prize counts",
            ));
        }
    }
    Ok((n, m))
}

/// `P_(f) = P_Ω(P_(f|Ω))` with one conditional credal set per state.
pub fn marginal_extension_prevision(
    m_omega: &CredalSet,
    conditionals: &[CredalSet],
    f: &Gamble,
) -> Result<Rat> {
    let (n, m) = check_conditionals(m_omega, conditionals)?;
    if f.shape() != (n, m) {
        return Err(Error::shape((n, m), f.shape()));
    }
    let g: Vec<Rat> = (0..n)
        .map(|w| {
            conditionals[w].lower(&Gamble::new(1, m, f.row(w).to_vec()).expect("nonempty row"))
        })
        .collect();
    Ok(m_omega.lower(&Gamble::new(n, 1, g).expect("nonempty column")))
}

/// Every `P(ω, x) = V(ω) W_ω(x)` with `V` a vertex of the marginal and an
/// independent choice of conditional vertex `W_ω` for each state.
pub fn m1_combinations(
    m_omega: &CredalSet,
    conditionals: &[CredalSet],
) -> Result<Vec<LinearPrevision>> {
    let (n, m) = check_conditionals(m_omega, conditionals)?;
    let count = conditionals
        .iter()
        .try_fold(m_omega.vertices().len(), |acc, c| {
            acc.checked_mul(c.vertices().len())
        })
        .filter(|c| *c <= MAX_COMBINATIONS)
        .ok_or_else(|| {
            Error::Resource(format!("more than {MAX_COMBINATIONS} vertex combinations"))
        })?;
    let mut out = Vec::with_capacity(count);
    let mut choice = vec![0usize; n];
    for v in m_omega.vertices() {
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            let mut values = Vec::with_capacity(n * m);
            for w in 0..n {
                let vw = &v.mass().values()[w];
                values.extend(
                    conditionals[w].vertices()[choice[w]]
                        .mass()
                        .values()
                        .iter()
                        .map(|x| vw * x),
                );
            }
            out.push(LinearPrevision::new(Gamble::new(n, m, values)?)?);
            let mut k = 0;
            while k < n {
                choice[k] += 1;
                if choice[k] < conditionals[k].vertices().len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(out)
}

/// Brute-force law of total prevision: minimum over all `M₁` combinations.
pub fn marginal_extension_brute(
    m_omega: &CredalSet,
    conditionals: &[CredalSet],
    f: &Gamble,
) -> Result<Rat> {
    let combos = m1_combinations(m_omega, conditionals)?;
    Ok(combos
        .iter()
        .map(|p| p.expectation(f))
        .min()
        .expect("nonempty credal sets"))
}

fn require_generators(d: &DesirSet, what: &str) -> Result<Vec<Gamble>> {
    match d.representation() {
        Representation::Generated { generators } => Ok(generators.clone()),
        _ => Err(Error::input(format!(
            "the {what} marginal must be given by generators"
        ))),
    }
}

fn check_set_shapes(r_omega: &DesirSet, r_x: &DesirSet) -> Result<(usize, usize)> {
    let (n, c) = r_omega.shape();
    let (r, m) = r_x.shape();
    if c != 1 || r != 1 {
        return Err(Error::input(
            "marginal sets must be n x 1 over states and 1 x m over prizes",
        ));
    }
    Ok((n, m))
}

/// Smallest joint set with `R_Ω` as state marginal in which states are
/// irrelevant to prizes: `posi(Ω-cylinders of R_Ω ∪ {I_ω g_X})`.
pub fn irrelevant_product_set(r_omega: &DesirSet, r_x: &DesirSet) -> Result<DesirSet> {
    let (n, m) = check_set_shapes(r_omega, r_x)?;
    let go = require_generators(r_omega, "state")?;
    let gx = require_generators(r_x, "prize")?;
    let mut gens: Vec<Gamble> = go
        .iter()
        .map(|g| Gamble::omega_cylinder(g.values(), m))
        .collect();
    for w in 0..n {
        gens.extend(gx.iter().map(|g| Gamble::on_row(g.values(), n, w)));
    }
    DesirSet::generated(n, m, gens)
}

/// `I_ω g ∈ D` for every state and every generator `g` of `R_X`.
pub fn is_irrelevant_product(d: &DesirSet, r_x: &DesirSet) -> Result<bool> {
    let gx = require_generators(r_x, "prize")?;
    irrelevance_on_probes(d, r_x, &gx)
}

/// `I_ω g ∈ D` for every state and every probe `g` that lies in `R_X`.
pub fn irrelevance_on_probes(d: &DesirSet, r_x: &DesirSet, probes: &[Gamble]) -> Result<bool> {
    let (n, m) = d.shape();
    if r_x.shape() != (1, m) {
        return Err(Error::input("prize marginal shape differs from the joint"));
    }
    for g in probes {
        if !r_x.member(g)?.member {
            continue;
        }
        for w in 0..n {
            if !d.member(&Gamble::on_row(g.values(), n, w))?.member {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `posi({I_ω g_X} ∪ {I_x g_Ω} ∪ L⁺)`.
pub fn independent_natural_extension(r_omega: &DesirSet, r_x: &DesirSet) -> Result<DesirSet> {
    let (n, m) = check_set_shapes(r_omega, r_x)?;
    let go = require_generators(r_omega, "state")?;
    let gx = require_generators(r_x, "prize")?;
    let mut gens = Vec::new();
    for w in 0..n {
        gens.extend(gx.iter().map(|g| Gamble::on_row(g.values(), n, w)));
    }
    for x in 0..m {
        gens.extend(go.iter().map(|g| Gamble::on_col(g.values(), m, x)));
    }
    DesirSet::generated(n, m, gens)
}

/// Constraint gambles `g` with `M = {P : P(g) ≥ 0}`, available for sets
/// built from constraints and for singletons.
pub fn constraint_gambles(m: &CredalSet) -> Result<Vec<Gamble>> {
    if let Some(c) = m.constraints() {
        return Ok(c.to_vec());
    }
    if m.is_singleton() {
        let p = &m.vertices()[0];
        let (r, c) = p.shape();
        let mut out = Vec::new();
        for (cell, pc) in p.mass().values().iter().enumerate() {
            let g = Gamble::unit(r, c, cell).add_constant(&-pc);
            out.push(g.neg());
            out.push(g);
        }
        return Ok(out);
    }
    Err(Error::input(
        "this credal set is given by points; a constraint form is needed",
    ))
}

/// Joint credal set of the independent natural extension:
/// `P(I_ω h) ≥ 0` and `P(I_x k) ≥ 0` for the marginal constraints.
pub fn ine_credal_set(m_omega: &CredalSet, m_x: &CredalSet) -> Result<CredalSet> {
    let n = check_omega(m_omega)?;
    let m = check_prizes(m_x)?;
    let mut cons = Vec::new();
    for h in constraint_gambles(m_x)? {
        cons.extend((0..n).map(|w| Gamble::on_row(h.values(), n, w)));
    }
    for k in constraint_gambles(m_omega)? {
        cons.extend((0..m).map(|x| Gamble::on_col(k.values(), m, x)));
    }
    CredalSet::from_constraints(n, m, cons)
}

/// Independent natural extension from vertex lists: minimise `P(f)` over
/// joints whose rows are cones over `M_X` and whose columns are cones over `M_Ω`.
pub fn ine_lower_prevision(m_omega: &CredalSet, m_x: &CredalSet, f: &Gamble) -> Result<Rat> {
    let n = check_omega(m_omega)?;
    let m = check_prizes(m_x)?;
    if f.shape() != (n, m) {
        return Err(Error::shape((n, m), f.shape()));
    }
    let vx = m_x.vertices();
    let vo = m_omega.vertices();
    let cells = n * m;
    let lam = cells;
    let mu = lam + n * vx.len();
    let total = mu + m * vo.len();
    let mut p = LpProblem::new(total, Sense::Min);
    p.objective[..cells].clone_from_slice(f.values());
    for w in 0..n {
        for x in 0..m {
            let mut row = vec![Rat::zero(); total];
            row[w * m + x] = Rat::one();
            for (j, v) in vx.iter().enumerate() {
                row[lam + w * vx.len() + j] = -v.mass().values()[x].clone();
            }
            p.add(row, Relation::Eq, Rat::zero());
            let mut row = vec![Rat::zero(); total];
            row[w * m + x] = Rat::one();
            for (k, v) in vo.iter().enumerate() {
                row[mu + x * vo.len() + k] = -v.mass().values()[w].clone();
            }
            p.add(row, Relation::Eq, Rat::zero());
        }
    }
    let mut sum = vec![Rat::zero(); total];
    sum[..cells].iter_mut().for_each(|c| *c = Rat::one());
    p.add(sum, Relation::Eq, Rat::one());
    let (value, _) = lp::optimum(&p)?
        .ok_or_else(|| Error::internal("independent natural extension is empty"))?;
    Ok(value)
}

/// Hull of the products of marginal vertices, with the pairs kept for evaluation.
#[derive(Debug, Clone)]
pub struct StrongProduct {
    pub credal: CredalSet,
    pub pairs: Vec<LinearPrevision>,
}

impl StrongProduct {
    /// Minimum of the product expectation over vertex pairs.
    pub fn lower(&self, f: &Gamble) -> Rat {
        self.pairs
            .par_iter()
            .map(|p| p.expectation(f))
            .min()
            .expect("nonempty marginals")
    }

    pub fn upper(&self, f: &Gamble) -> Rat {
        -self.lower(&f.neg())
    }

    pub fn desirset(&self) -> DesirSet {
        DesirSet::strict(self.credal.clone())
    }
}

pub fn strong_product(m_omega: &CredalSet, m_x: &CredalSet) -> Result<StrongProduct> {
    check_omega(m_omega)?;
    check_prizes(m_x)?;
    let pairs: Vec<LinearPrevision> = m_omega
        .vertices()
        .iter()
        .flat_map(|v| {
            m_x.vertices()
                .iter()
                .map(move |w| LinearPrevision::product(v, w))
        })
        .collect();
    let credal = CredalSet::from_points(pairs.clone())?;
    Ok(StrongProduct { credal, pairs })
}

/// Every `V ⊗ W` with `V`, `W` vertices of the given marginals lies in the joint.
pub fn satisfies_a5_with(joint: &CredalSet, m_omega: &CredalSet, m_x: &CredalSet) -> Result<bool> {
    let n = check_omega(m_omega)?;
    let m = check_prizes(m_x)?;
    if joint.shape() != (n, m) {
        return Err(Error::input("joint shape differs from the marginals"));
    }
    let sp = strong_product(m_omega, m_x)?;
    let inside: Vec<bool> = sp
        .pairs
        .par_iter()
        .map(|p| joint.contains(p))
        .collect::<Result<_>>()?;
    Ok(inside.into_iter().all(|b| b))
}

/// Domination by the strong product of the joint's own marginals.
pub fn satisfies_a5(joint: &CredalSet) -> Result<bool> {
    satisfies_a5_with(joint, &joint.omega_marginal()?, &joint.prize_marginal()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum A4Verdict {
    /// Every extreme point factorises.
    HoldsExact,
    /// A vertex whose mass on `cell` differs from the product of its marginals.
    Fails {
        vertex: LinearPrevision,
        cell: (usize, usize),
        mass: Rat,
        product: Rat,
    },
}

impl A4Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, A4Verdict::HoldsExact)
    }
}

impl std::fmt::Display for A4Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            A4Verdict::HoldsExact => write!(f, "holds-exact"),
            A4Verdict::Fails {
                vertex,
                cell,
                mass,
                product,
            } => write!(
                f,
                "fails at vertex {} cell ({}, {}): mass {} but product of marginals {}",
                vertex.mass(),
                cell.0,
                cell.1,
                rat::fmt(mass),
                rat::fmt(product)
            ),
        }
    }
}

/// For a finite joint the credal set must be the hull of factorising previsions,
/// so the check is exact on the vertex list.
pub fn satisfies_a4(joint: &CredalSet) -> A4Verdict {
    let (n, m) = joint.shape();
    for v in joint.vertices() {
        let po = v.omega_marginal();
        let px = v.prize_marginal();
        for w in 0..n {
            for x in 0..m {
                let mass = v.mass().get(w, x).clone();
                let product = &po.mass().values()[w] * &px.mass().values()[x];
                if mass != product {
                    return A4Verdict::Fails {
                        vertex: v.clone(),
                        cell: (w, x),
                        mass,
                        product,
                    };
                }
            }
        }
    }
    A4Verdict::HoldsExact
}

/// `f^ω`: the prize gamble `f(ω, ·)` repeated on every row.
pub fn constant_lift(f: &Gamble, omega: usize) -> Gamble {
    Gamble::prize_cylinder(f.row(omega), f.rows())
}

/// Inequality form on one probe pair: `P_(g − f) ≥ min_ω P_(g − f^ω)`.
pub fn a4_probe(joint: &CredalSet, g: &Gamble, f: &Gamble) -> Result<bool> {
    if g.shape() != joint.shape() || f.shape() != joint.shape() {
        return Err(Error::input("probe shapes differ from the joint"));
    }
    let lhs = joint.lower(&g.sub(f));
    let rhs = (0..f.rows())
        .map(|w| joint.lower(&g.sub(&constant_lift(f, w))))
        .min()
        .expect("nonempty");
    Ok(lhs >= rhs)
}

/// Both inclusions between the joint and the strong product of the marginals.
pub fn is_strong_product(joint: &CredalSet, m_omega: &CredalSet, m_x: &CredalSet) -> Result<bool> {
    if !satisfies_a5_with(joint, m_omega, m_x)? {
        return Ok(false);
    }
    let sp = strong_product(m_omega, m_x)?;
    let refs: Vec<&LinearPrevision> = sp.pairs.iter().collect();
    for v in joint.vertices() {
        if !hull_contains(&refs, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The point `1/2 P + 1/2 Q`, as used for mixtures in tests and examples.
pub fn midpoint(p: &LinearPrevision, q: &LinearPrevision) -> LinearPrevision {
    LinearPrevision::mix(&rat::frac(1, 2), p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn col(v: &[i64]) -> Gamble {
        Gamble::from_ints(v.len(), 1, v).unwrap()
    }

    fn row(v: &[i64]) -> Gamble {
        Gamble::from_ints(1, v.len(), v).unwrap()
    }

    fn correlated() -> CredalSet {
        let v = vec![frac(1, 2), int(0), int(0), frac(1, 2)];
        CredalSet::singleton(LinearPrevision::new(Gamble::new(2, 2, v).unwrap()).unwrap())
    }

    #[test]
    fn marginal_extension_examples() {
        let f = Gamble::from_ints(2, 2, &[1, 0, 0, 0]).unwrap();
        let ux = CredalSet::singleton(LinearPrevision::uniform(1, 2));
        let conds = vec![ux.clone(), ux];
        assert_eq!(
            marginal_extension_prevision(&CredalSet::vacuous(2, 1), &conds, &f).unwrap(),
            int(0)
        );
        let uo = CredalSet::singleton(LinearPrevision::uniform(2, 1));
        assert_eq!(
            marginal_extension_prevision(&uo, &conds, &f).unwrap(),
            frac(1, 4)
        );
        let c = Gamble::constant(2, 2, int(7));
        assert_eq!(
            marginal_extension_prevision(&uo, &conds, &c).unwrap(),
            int(7)
        );
        assert_eq!(
            marginal_extension_brute(&uo, &conds, &f).unwrap(),
            frac(1, 4)
        );
    }

    #[test]
    fn irrelevant_product_examples() {
        let rx = DesirSet::generated(1, 2, vec![row(&[1, -1])]).unwrap();
        let ro = DesirSet::vacuous(2, 1);
        let d = irrelevant_product_set(&ro, &rx).unwrap();
        assert!(
            d.member(&Gamble::from_ints(2, 2, &[1, -1, 1, -1]).unwrap())
                .unwrap()
                .member
        );
        assert!(is_irrelevant_product(&d, &rx).unwrap());
        let vac = irrelevant_product_set(&ro, &DesirSet::vacuous(1, 2)).unwrap();
        assert_eq!(vac, DesirSet::vacuous(2, 2));
        assert!(!is_irrelevant_product(&DesirSet::strict(correlated()), &rx).unwrap());
    }

    #[test]
    fn irrelevance_of_uniform_product_on_probes() {
        let prod = LinearPrevision::product(
            &LinearPrevision::uniform(2, 1),
            &LinearPrevision::uniform(1, 2),
        );
        let d = DesirSet::strict(CredalSet::singleton(prod));
        let rx = DesirSet::strict(CredalSet::singleton(LinearPrevision::uniform(1, 2)));
        let probes = vec![row(&[1, 0]), row(&[3, -1]), row(&[-1, 2]), row(&[1, -1])];
        assert!(irrelevance_on_probes(&d, &rx, &probes).unwrap());
    }

    #[test]
    fn ine_vacuous_is_min() {
        let ro = DesirSet::vacuous(2, 1);
        let rx = DesirSet::vacuous(1, 2);
        let d = independent_natural_extension(&ro, &rx).unwrap();
        let f = Gamble::from_ints(2, 2, &[3, -1, 2, 5]).unwrap();
        assert_eq!(d.lower_prevision(&f).unwrap(), int(-1));
        let lo =
            ine_lower_prevision(&CredalSet::vacuous(2, 1), &CredalSet::vacuous(1, 2), &f).unwrap();
        assert_eq!(lo, int(-1));
    }

    #[test]
    fn ine_paths_agree() {
        let mo = CredalSet::from_constraints(2, 1, vec![col(&[2, -1]), col(&[-1, 3])]).unwrap();
        let mx = CredalSet::from_constraints(1, 2, vec![row(&[3, -1]), row(&[-1, 1])]).unwrap();
        let cs = ine_credal_set(&mo, &mx).unwrap();
        let sp = strong_product(&mo, &mx).unwrap();
        for f in [
            Gamble::from_ints(2, 2, &[1, -1, -1, 1]).unwrap(),
            Gamble::from_ints(2, 2, &[0, 3, -2, 1]).unwrap(),
            Gamble::from_ints(2, 2, &[5, 0, 0, -4]).unwrap(),
        ] {
            let a = cs.lower(&f);
            assert_eq!(a, ine_lower_prevision(&mo, &mx, &f).unwrap());
            assert!(a <= sp.lower(&f));
        }
    }

    #[test]
    fn strong_product_examples() {
        let f = Gamble::from_ints(2, 2, &[3, -1, 2, 6]).unwrap();
        let vac = strong_product(&CredalSet::vacuous(2, 1), &CredalSet::vacuous(1, 2)).unwrap();
        assert_eq!(vac.lower(&f), int(-1));
        let uni = strong_product(
            &CredalSet::singleton(LinearPrevision::uniform(2, 1)),
            &CredalSet::singleton(LinearPrevision::uniform(1, 2)),
        )
        .unwrap();
        assert_eq!(uni.lower(&f), frac(10, 4));
        let mixed = strong_product(
            &CredalSet::vacuous(2, 1),
            &CredalSet::singleton(LinearPrevision::uniform(1, 2)),
        )
        .unwrap();
        assert_eq!(mixed.lower(&f), int(1));
        assert_eq!(mixed.lower(&f), mixed.credal.lower(&f));
    }

    #[test]
    fn a4_a5_examples() {
        let mo = CredalSet::from_constraints(2, 1, vec![col(&[2, -1]), col(&[-1, 3])]).unwrap();
        let mx = CredalSet::from_constraints(1, 2, vec![row(&[3, -1]), row(&[-1, 1])]).unwrap();
        let sp = strong_product(&mo, &mx).unwrap();
        assert!(satisfies_a5(&sp.credal).unwrap());
        assert!(is_strong_product(&sp.credal, &mo, &mx).unwrap());
        assert_eq!(satisfies_a4(&sp.credal), A4Verdict::HoldsExact);
        let ine = ine_credal_set(&mo, &mx).unwrap();
        assert!(satisfies_a5_with(&ine, &mo, &mx).unwrap());

        let c = correlated();
        assert!(!satisfies_a5(&c).unwrap());
        match satisfies_a4(&c) {
            A4Verdict::Fails {
                cell,
                mass,
                product,
                ..
            } => {
                assert_eq!(cell, (0, 0));
                assert_eq!(mass, frac(1, 2));
                assert_eq!(product, frac(1, 4));
            }
            other => panic!("unexpected {other:?}"),
        }
        let prod = CredalSet::singleton(LinearPrevision::uniform(2, 2));
        assert!(is_strong_product(
            &prod,
            &prod.omega_marginal().unwrap(),
            &prod.prize_marginal().unwrap()
        )
        .unwrap());
    }

    #[test]
    fn a4_probe_on_product() {
        let sp = strong_product(
            &CredalSet::vacuous(2, 1),
            &CredalSet::singleton(LinearPrevision::uniform(1, 2)),
        )
        .unwrap();
        let g = Gamble::from_ints(2, 2, &[2, 0, 1, 1]).unwrap();
        let f = Gamble::from_ints(2, 2, &[0, 1, 3, -2]).unwrap();
        assert!(a4_probe(&sp.credal, &g, &f).unwrap());
    }
}
