//! Finite spaces, gambles, horse lotteries and the maps between acts and gambles.
//!
//! Tables are dense and row-major: row `ω`, column `x`. When a space has a
//! worst outcome `z`, act tables carry it as one extra trailing column.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    omega: Vec<String>,
    prizes: Vec<String>,
    worst: Option<String>,
}

impl Space {
    pub fn new(omega: Vec<String>, prizes: Vec<String>, worst: Option<String>) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::input("a space needs at least one state"));
        }
        if prizes.is_empty() {
            return Err(Error::input("a space needs at least one prize"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in omega.iter() {
            if !seen.insert(l) {
                return Err(Error::input(format!("duplicate state label `{l}`")));
            }
        }
        seen.clear();
        for l in prizes.iter().chain(worst.iter()) {
            if !seen.insert(l) {
                return Err(Error::input(format!("duplicate prize label `{l}`")));
            }
        }
        Ok(Space {
            omega,
            prizes,
            worst,
        })
    }

    /// Space with generated labels `w1..`, `x1..` and optionally `z`.
    pub fn unlabeled(n_omega: usize, n_prizes: usize, with_worst: bool) -> Result<Self> {
        Space::new(
            (1..=n_omega).map(|i| format!("w{i}")).collect(),
            (1..=n_prizes).map(|i| format!("x{i}")).collect(),
            with_worst.then(|| "z".to_string()),
        )
    }

    pub fn omega(&self) -> &[String] {
        &self.omega
    }

    pub fn prizes(&self) -> &[String] {
        &self.prizes
    }

    pub fn worst(&self) -> Option<&str> {
        self.worst.as_deref()
    }

    pub fn n_omega(&self) -> usize {
        self.omega.len()
    }

    pub fn n_prizes(&self) -> usize {
        self.prizes.len()
    }

    pub fn n_cells(&self) -> usize {
        self.omega.len() * self.prizes.len()
    }

    pub fn has_worst(&self) -> bool {
        self.worst.is_some()
    }

    /// Columns of an act table: `|X_z|` with a worst outcome, `|X|` otherwise.
    pub fn act_width(&self) -> usize {
        self.prizes.len() + usize::from(self.worst.is_some())
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.omega.iter().position(|l| l == label)
    }

    pub fn prize_index(&self, label: &str) -> Option<usize> {
        self.prizes.iter().position(|l| l == label)
    }

    pub fn zero_gamble(&self) -> Gamble {
        Gamble::zero(self.n_omega(), self.n_prizes())
    }
}

/// Dense exact table over `rows × cols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gamble {
    rows: usize,
    cols: usize,
    values: Vec<Rat>,
}

impl Gamble {
    pub fn new(rows: usize, cols: usize, values: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input(format!("empty table ({rows}x{cols})")));
        }
        if values.len() != rows * cols {
            return Err(Error::dimension(rows * cols, values.len()));
        }
        Ok(Gamble { rows, cols, values })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::dimension(c, bad.len()));
        }
        Gamble::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Single-row table from integers, handy in tests and examples.
    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Gamble::new(rows, cols, values.iter().map(|&v| rat::int(v)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Gamble {
            rows,
            cols,
            values: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn constant(rows: usize, cols: usize, c: Rat) -> Self {
        Gamble {
            rows,
            cols,
            values: vec![c; rows * cols],
        }
    }

    pub fn indicator(event: &EventSet) -> Self {
        Gamble {
            rows: event.rows,
            cols: event.cols,
            values: event
                .mask
                .iter()
                .map(|&b| if b { Rat::one() } else { Rat::zero() })
                .collect(),
        }
    }

    pub fn unit(rows: usize, cols: usize, cell: usize) -> Self {
        let mut g = Gamble::zero(rows, cols);
        g.values[cell] = Rat::one();
        g
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.values[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rat] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    pub fn same_shape(&self, other: &Gamble) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "shape mismatch: {}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        rat::is_nonneg(&self.values)
    }

    /// `f ⪈ 0`: non-negative everywhere and not identically zero.
    pub fn is_positive(&self) -> bool {
        self.is_nonneg() && !self.is_zero()
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Gamble {
        Gamble {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Gamble, f: impl Fn(&Rat, &Rat) -> Rat) -> Gamble {
        assert_eq!(self.shape(), other.shape(), "gamble shapes differ");
        Gamble {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Gamble) -> Gamble {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Gamble) -> Gamble {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Gamble) -> Gamble {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rat) -> Gamble {
        self.map(|v| v * c)
    }

    pub fn neg(&self) -> Gamble {
        self.map(|v| -v)
    }

    pub fn add_constant(&self, c: &Rat) -> Gamble {
        self.map(|v| v + c)
    }

    /// `B·f`: zero outside the event.
    pub fn restrict(&self, event: &EventSet) -> Gamble {
        assert_eq!(
            self.shape(),
            event.shape(),
            "event shape differs from gamble"
        );
        Gamble {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&event.mask)
                .map(|(v, &b)| if b { v.clone() } else { Rat::zero() })
                .collect(),
        }
    }

    pub fn min(&self) -> Rat {
        self.values.iter().min().cloned().expect("nonempty table")
    }

    pub fn max(&self) -> Rat {
        self.values.iter().max().cloned().expect("nonempty table")
    }

    pub fn min_on(&self, event: &EventSet) -> Option<Rat> {
        event.indices().map(|i| &self.values[i]).min().cloned()
    }

    /// `S(f)`: the cells where `f` is nonzero.
    pub fn support(&self) -> EventSet {
        EventSet {
            rows: self.rows,
            cols: self.cols,
            mask: self.values.iter().map(|v| !v.is_zero()).collect(),
        }
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rat> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }

    pub fn transpose(&self) -> Gamble {
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                values.push(self.get(r, c).clone());
            }
        }
        Gamble {
            rows: self.cols,
            cols: self.rows,
            values,
        }
    }

    /// Drops the last column.
    pub fn drop_last_col(&self) -> Gamble {
        let cols = self.cols - 1;
        let values = (0..self.rows)
            .flat_map(|r| self.row(r)[..cols].to_vec())
            .collect();
        Gamble {
            rows: self.rows,
            cols,
            values,
        }
    }

    /// Linear combination `Σ c_i g_i` on the given shape.
    pub fn combination(rows: usize, cols: usize, terms: &[(Rat, &Gamble)]) -> Gamble {
        let mut acc = Gamble::zero(rows, cols);
        for (c, g) in terms {
            if c.is_zero() {
                continue;
            }
            for (a, v) in acc.values.iter_mut().zip(&g.values) {
                if !v.is_zero() {
                    *a += c * v;
                }
            }
        }
        acc
    }

    /// Gamble on `rows × cols` depending on the state only: `g` is a column of length `rows`.
    pub fn omega_cylinder(g: &[Rat], cols: usize) -> Gamble {
        let rows = g.len();
        let values = g
            .iter()
            .flat_map(|v| std::iter::repeat_n(v.clone(), cols))
            .collect();
        Gamble { rows, cols, values }
    }

    /// Gamble on `rows × cols` depending on the prize only.
    pub fn prize_cylinder(g: &[Rat], rows: usize) -> Gamble {
        let cols = g.len();
        let values = (0..rows).flat_map(|_| g.iter().cloned()).collect();
        Gamble { rows, cols, values }
    }

    /// `I_ω · g_X`: the prize gamble `g` placed on row `omega`.
    pub fn on_row(g: &[Rat], rows: usize, omega: usize) -> Gamble {
        let cols = g.len();
        let mut out = Gamble::zero(rows, cols);
        out.values[omega * cols..(omega + 1) * cols].clone_from_slice(g);
        out
    }

    /// `I_x · g_Ω`: the state gamble `g` placed on column `x`.
    pub fn on_col(g: &[Rat], cols: usize, x: usize) -> Gamble {
        let rows = g.len();
        let mut out = Gamble::zero(rows, cols);
        for (r, v) in g.iter().enumerate() {
            out.values[r * cols + x] = v.clone();
        }
        out
    }
}

impl fmt::Display for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(rat::fmt_compact).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A subset of the cells of a `rows × cols` table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventSet {
    rows: usize,
    cols: usize,
    mask: Vec<bool>,
}

impl EventSet {
    pub fn from_cells(rows: usize, cols: usize, cells: &[usize]) -> Result<Self> {
        let mut mask = vec![false; rows * cols];
        for &c in cells {
            if c >= mask.len() {
                return Err(Error::input(format!(
                    "cell {c} outside a {rows}x{cols} table"
                )));
            }
            mask[c] = true;
        }
        Ok(EventSet { rows, cols, mask })
    }

    /// Cylinder `B × X` for a set of states `B`.
    pub fn states(rows: usize, cols: usize, states: &[usize]) -> Result<Self> {
        let mut cells = Vec::new();
        for &s in states {
            if s >= rows {
                return Err(Error::input(format!("state {s} outside {rows} states")));
            }
            cells.extend((0..cols).map(|c| s * cols + c));
        }
        EventSet::from_cells(rows, cols, &cells)
    }

    pub fn all(rows: usize, cols: usize) -> Self {
        EventSet {
            rows,
            cols,
            mask: vec![true; rows * cols],
        }
    }

    pub fn from_mask(rows: usize, cols: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != rows * cols {
            return Err(Error::dimension(rows * cols, mask.len()));
        }
        Ok(EventSet { rows, cols, mask })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.mask[cell]
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn is_subset(&self, other: &EventSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn complement(&self) -> EventSet {
        EventSet {
            rows: self.rows,
            cols: self.cols,
            mask: self.mask.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &EventSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !(a && b))
    }

    /// The state set `B` when the event is a cylinder `B × X`.
    pub fn as_state_cylinder(&self) -> Option<Vec<usize>> {
        let mut states = Vec::new();
        for r in 0..self.rows {
            let row = &self.mask[r * self.cols..(r + 1) * self.cols];
            if row.iter().all(|&b| b) {
                states.push(r);
            } else if row.iter().any(|&b| b) {
                return None;
            }
        }
        Some(states)
    }
}

/// Per-state probability mass functions over the act columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HorseLottery {
    table: Gamble,
}

impl HorseLottery {
    pub fn new(table: Gamble) -> Result<Self> {
        for r in 0..table.rows() {
            let row = table.row(r);
            if row.iter().any(Signed::is_negative) {
                return Err(Error::input(format!("lottery row {r} has a negative mass")));
            }
            let s: Rat = row.iter().sum();
            if !s.is_one() {
                return Err(Error::input(format!(
                    "lottery row {r} sums to {} instead of 1",
                    rat::fmt(&s)
                )));
            }
        }
        Ok(HorseLottery { table })
    }

    /// Constant act: every state puts full mass on column `col`.
    pub fn degenerate(rows: usize, cols: usize, col: usize) -> Self {
        let mut t = Gamble::zero(rows, cols);
        for r in 0..rows {
            t.values[r * cols + col] = Rat::one();
        }
        HorseLottery { table: t }
    }

    pub fn table(&self) -> &Gamble {
        &self.table
    }

    pub fn rows(&self) -> usize {
        self.table.rows()
    }

    pub fn cols(&self) -> usize {
        self.table.cols()
    }

    /// `α p + (1 − α) q`.
    pub fn mix(alpha: &Rat, p: &HorseLottery, q: &HorseLottery) -> Result<HorseLottery> {
        p.table.same_shape(&q.table)?;
        if alpha.is_negative() || *alpha > Rat::one() {
            return Err(Error::input("mixture weight must lie in [0,1]"));
        }
        let beta = Rat::one() - alpha;
        HorseLottery::new(p.table.scale(alpha).add(&q.table.scale(&beta)))
    }

    pub fn difference(&self, other: &HorseLottery) -> Gamble {
        self.table.sub(&other.table)
    }
}

fn require_worst(space: &Space) -> Result<()> {
    if space.has_worst() {
        Ok(())
    } else {
        Err(Error::input("the space has no worst outcome"))
    }
}

/// `π`: drops the `z` column of a table over `Ω × X_z`.
pub fn project_pi(h: &Gamble, space: &Space) -> Result<Gamble> {
    require_worst(space)?;
    if h.shape() != (space.n_omega(), space.act_width()) {
        return Err(Error::input(format!(
            "expected a {}x{} table over states and prizes with z",
            space.n_omega(),
            space.act_width()
        )));
    }
    Ok(h.drop_last_col())
}

fn check_gamble_shape(f: &Gamble, space: &Space) -> Result<()> {
    if f.shape() != (space.n_omega(), space.n_prizes()) {
        return Err(Error::input(format!(
            "expected a {}x{} gamble, found {}x{}",
            space.n_omega(),
            space.n_prizes(),
            f.rows(),
            f.cols()
        )));
    }
    Ok(())
}

/// `π₁⁻¹`: appends the mass `1 − Σ_x f(ω,x)` on `z`.
pub fn pi1_inverse(f: &Gamble, space: &Space) -> Result<HorseLottery> {
    require_worst(space)?;
    check_gamble_shape(f, space)?;
    if f.values()
        .iter()
        .any(|v| v.is_negative() || *v > Rat::one())
    {
        return Err(Error::input("entries must lie in [0,1]"));
    }
    let mut values = Vec::with_capacity(space.n_omega() * space.act_width());
    for r in 0..f.rows() {
        let row = f.row(r);
        let s: Rat = row.iter().sum();
        if s > Rat::one() {
            return Err(Error::input(format!("row {r} sums above 1")));
        }
        values.extend(row.iter().cloned());
        values.push(Rat::one() - s);
    }
    HorseLottery::new(Gamble::new(f.rows(), f.cols() + 1, values)?)
}

/// `π₂⁻¹`: appends `−Σ_x f(ω,x)` on `z`, giving zero row sums.
pub fn pi2_inverse(f: &Gamble, space: &Space) -> Result<Gamble> {
    require_worst(space)?;
    check_gamble_shape(f, space)?;
    let mut values = Vec::with_capacity(space.n_omega() * space.act_width());
    for r in 0..f.rows() {
        let row = f.row(r);
        let s: Rat = row.iter().sum();
        values.extend(row.iter().cloned());
        values.push(-s);
    }
    Gamble::new(f.rows(), f.cols() + 1, values)
}

/// Every row sums to exactly zero.
pub fn is_act_difference(g: &Gamble) -> bool {
    g.row_sums().iter().all(Zero::is_zero)
}

/// Chain decomposition of one row: `Σ_i coefficients[i] (I_{order[i]} − I_{order[i+1]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateChain {
    pub order: Vec<usize>,
    pub coefficients: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub rows: usize,
    pub cols: usize,
    pub states: Vec<StateChain>,
}

impl ChainDecomposition {
    pub fn reconstruct(&self) -> Gamble {
        let mut g = Gamble::zero(self.rows, self.cols);
        for (r, chain) in self.states.iter().enumerate() {
            for (i, c) in chain.coefficients.iter().enumerate() {
                g.values[r * self.cols + chain.order[i]] += c;
                g.values[r * self.cols + chain.order[i + 1]] -= c;
            }
        }
        g
    }
}

/// Writes a zero-row-sum table as a non-negative combination of chain
/// generators `I_{x_i} − I_{x_{i+1}}`, with prizes reordered per state so the
/// non-negative entries come first. Coefficients are the prefix sums.
pub fn decompose_in_generating_family(f: &Gamble) -> Result<ChainDecomposition> {
    if !is_act_difference(f) {
        return Err(Error::input("every row must sum to zero"));
    }
    let mut states = Vec::with_capacity(f.rows());
    for r in 0..f.rows() {
        let row = f.row(r);
        let mut order: Vec<usize> = (0..f.cols()).filter(|&c| !row[c].is_negative()).collect();
        order.extend((0..f.cols()).filter(|&c| row[c].is_negative()));
        let mut coefficients = Vec::with_capacity(f.cols().saturating_sub(1));
        let mut acc = Rat::zero();
        for &c in order.iter().take(f.cols() - 1) {
            acc += &row[c];
            coefficients.push(acc.clone());
        }
        states.push(StateChain {
            order,
            coefficients,
        });
    }
    Ok(ChainDecomposition {
        rows: f.rows(),
        cols: f.cols(),
        states,
    })
}

/// State-wise transposition between the worst act's outcome and `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstSwap {
    /// Column swapped with the trailing `z` column, per state.
    pub columns: Vec<usize>,
}

impl WorstSwap {
    pub fn is_identity(&self, width: usize) -> bool {
        self.columns.iter().all(|&c| c + 1 == width)
    }

    pub fn apply(&self, p: &HorseLottery) -> HorseLottery {
        let mut t = p.table.clone();
        let w = t.cols();
        for (r, &c) in self.columns.iter().enumerate() {
            t.values.swap(r * w + c, r * w + w - 1);
        }
        HorseLottery { table: t }
    }
}

pub type LotteryPair = (HorseLottery, HorseLottery);

/// Relabels outcomes state by state so the worst act `w` becomes the constant act on `z`.
pub fn normalize_worst_act(
    pairs: &[LotteryPair],
    w: &HorseLottery,
) -> Result<(Vec<LotteryPair>, WorstSwap)> {
    let width = w.cols();
    let mut columns = Vec::with_capacity(w.rows());
    for r in 0..w.rows() {
        let row = w.table.row(r);
        let unit = row.iter().position(One::is_one);
        match unit {
            Some(c) if row.iter().filter(|v| !v.is_zero()).count() == 1 => columns.push(c),
            _ => {
                return Err(Error::model(format!(
                    "row {r} of the proposed worst act is not degenerate; a worst act puts unit mass on a single outcome in every state"
                )))
            }
        }
    }
    let swap = WorstSwap { columns };
    let mut out = Vec::with_capacity(pairs.len());
    for (p, q) in pairs {
        if p.table.shape() != w.table.shape() || q.table.shape() != w.table.shape() {
            return Err(Error::input("lottery shapes differ from the worst act"));
        }
        out.push((swap.apply(p), swap.apply(q)));
    }
    debug_assert_eq!(width, w.cols());
    Ok((out, swap))
}
