//! Cohomology tables of ideal sheaves of ACM curves, Castelnuovo–Mumford
//! regularity, and the numerical obstructions used to rule out `(d, g)`
//! pairs on a given ambient.
//!
//! For a curve `C ⊂ X` the tables come from the long exact sequence of
//! `0 -> I_C(n) -> O_X(n) -> O_C(n) -> 0` together with:
//!
//! * `H^1_*(I_C) = 0` (ACM), so `H^0(O_X(n)) -> H^0(O_C(n))` is onto;
//!   in particular `h^0(O_C) = 1` and `h^0(O_C(n)) = 0` for `n < 0`;
//! * Riemann–Roch, `χ(O_C(n)) = nd + 1 - g`;
//! * `h^2(I_C(n)) = h^1(O_C(n)) + h^2(O_X(n))` and `h^3(I_C(n)) = h^3(O_X(n))`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::hilbert::Ambient;
use crate::window::{HilbertRow, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("invalid curve class: {0}")]
    InvalidCurve(String),
    #[error("curve is not ACM; tables are only defined for ACM curves")]
    NotAcm,
    #[error("h^0(I_C({n})) would be negative: no ACM curve with these invariants")]
    NegativeDimension { n: i64 },
    #[error("h^0(O_C({n})) would be negative: the nonspecial section count does not apply")]
    NegativeSections { n: i64 },
    #[error("regularity propagation contradicts known cell h^{i}(I({n})) = {value}")]
    RegularityConflict { i: usize, n: i64, value: u128 },
}

/// Degree, arithmetic genus and ambient of a curve, with its ACM flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveClass {
    ambient: Ambient,
    degree: i64,
    genus: i64,
    acm: bool,
}

impl CurveClass {
    pub fn new(ambient: Ambient, degree: i64, genus: i64, acm: bool) -> Result<Self, CohomError> {
        if degree < 1 {
            return Err(CohomError::InvalidCurve(format!("degree {degree} < 1")));
        }
        if genus < 0 {
            return Err(CohomError::InvalidCurve(format!("genus {genus} < 0")));
        }
        if let Ambient::ProjSpace(n) = ambient {
            if n < 2 {
                return Err(CohomError::InvalidCurve(format!(
                    "curves need P^n with n >= 2, got P{n}"
                )));
            }
        }
        Ok(CurveClass {
            ambient,
            degree,
            genus,
            acm,
        })
    }

    /// An ACM curve.
    pub fn acm(ambient: Ambient, degree: i64, genus: i64) -> Result<Self, CohomError> {
        Self::new(ambient, degree, genus, true)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn is_acm(&self) -> bool {
        self.acm
    }

    fn chi(&self, n: i64) -> i64 {
        rr_chi(self.degree, self.genus, n)
    }
}

/// Riemann–Roch: `χ(O_C(n)) = nd + 1 - g`.
pub fn rr_chi(d: i64, g: i64, n: i64) -> i64 {
    n * d + 1 - g
}

/// `h^0(O_C(n))` for a nonspecial ACM curve: `nd + 1 - g` for `n >= 1`,
/// `1` at `n = 0`, `0` below.
pub fn section_table(curve: &CurveClass, window: Window) -> Result<HilbertRow, CohomError> {
    if !curve.acm {
        return Err(CohomError::NotAcm);
    }
    HilbertRow::try_tabulate(window, |n| section_dim(curve, n))
}

fn section_dim(curve: &CurveClass, n: i64) -> Result<u128, CohomError> {
    match n {
        n if n < 0 => Ok(0),
        0 => Ok(1),
        n => u128::try_from(curve.chi(n)).map_err(|_| CohomError::NegativeSections { n }),
    }
}

/// `h^0(I_C(n)) = h^0(O_X(n)) - h^0(O_C(n))`, with `h^0(O_C(n))` from
/// [`section_table`]. A negative difference is an error, not a clamp.
pub fn ideal_h0_table(curve: &CurveClass, window: Window) -> Result<HilbertRow, CohomError> {
    if !curve.acm {
        return Err(CohomError::NotAcm);
    }
    HilbertRow::try_tabulate(window, |n| ideal_h0(curve, n))
}

fn ideal_h0(curve: &CurveClass, n: i64) -> Result<u128, CohomError> {
    let ambient = curve.ambient.h0(n) as i128;
    let diff = ambient - section_dim(curve, n)? as i128;
    if diff < 0 {
        return Err(CohomError::NegativeDimension { n });
    }
    Ok(diff as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Known(u128),
    Unknown,
}

impl Cell {
    pub fn is_zero(&self) -> bool {
        *self == Cell::Known(0)
    }

    pub fn known(&self) -> Option<u128> {
        match *self {
            Cell::Known(v) => Some(v),
            Cell::Unknown => None,
        }
    }
}

/// Assumptions a table relies on beyond ACM-ness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableFlag {
    /// Some `h^1(O_C(n))`, `n >= 1`, was set to zero from `nd > 2g - 2`,
    /// which holds for integral curves.
    IntegralCurveAssumption,
}

/// `h^i(F(n))` for `i = 0..=3` over a window. A row may be declared
/// identically zero, in which case it is known at every twist, inside the
/// window or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomTable {
    window: Window,
    rows: [Vec<Cell>; 4],
    vanishing: [bool; 4],
    flags: BTreeSet<TableFlag>,
}

impl CohomTable {
    pub fn unknown(window: Window) -> Self {
        let row = vec![Cell::Unknown; window.len()];
        CohomTable {
            window,
            rows: [row.clone(), row.clone(), row.clone(), row],
            vanishing: [false; 4],
            flags: BTreeSet::new(),
        }
    }

    /// Every cell of every row zero, at all twists.
    pub fn vanishing(window: Window) -> Self {
        let mut t = Self::unknown(window);
        for i in 0..4 {
            t.mark_vanishing(i);
        }
        t
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn flags(&self) -> &BTreeSet<TableFlag> {
        &self.flags
    }

    pub fn is_vanishing_row(&self, i: usize) -> bool {
        self.vanishing[i]
    }

    pub fn cell(&self, i: usize, n: i64) -> Cell {
        assert!(i < 4, "cohomology row {i} does not exist");
        if self.vanishing[i] {
            return Cell::Known(0);
        }
        match self.window.index(n) {
            Some(k) => self.rows[i][k],
            None => Cell::Unknown,
        }
    }

    /// Sets a cell inside the window; out-of-window twists are ignored.
    pub fn set(&mut self, i: usize, n: i64, value: u128) {
        assert!(i < 4, "cohomology row {i} does not exist");
        if let Some(k) = self.window.index(n) {
            self.rows[i][k] = Cell::Known(value);
        }
    }

    pub fn mark_vanishing(&mut self, i: usize) {
        self.vanishing[i] = true;
        self.rows[i].iter_mut().for_each(|c| *c = Cell::Known(0));
    }

    pub fn row(&self, i: usize) -> Vec<Cell> {
        self.window.iter().map(|n| self.cell(i, n)).collect()
    }

    /// Castelnuovo–Mumford propagation: if the table is `m`-regular then
    /// `h^i(F(k)) = 0` for all `i > 0`, `k + i >= m`. Fills those cells and
    /// fails if a known cell disagrees.
    pub fn propagate_regularity(&mut self, m: i64) -> Result<(), CohomError> {
        for i in 1..4 {
            if self.vanishing[i] {
                continue;
            }
            for n in self.window.iter().filter(|&n| n + i as i64 >= m) {
                match self.cell(i, n) {
                    Cell::Known(0) | Cell::Unknown => self.set(i, n, 0),
                    Cell::Known(value) => {
                        return Err(CohomError::RegularityConflict { i, n, value })
                    }
                }
            }
        }
        Ok(())
    }

    /// Grid with `h^3` on top and the twist axis at the bottom; unknown cells print `?`.
    pub fn to_text(&self) -> String {
        let show = |c: Cell| match c {
            Cell::Known(v) => v.to_string(),
            Cell::Unknown => "?".to_string(),
        };
        let mut width = 3;
        for n in self.window.iter() {
            width = width.max(n.to_string().len());
            for i in 0..4 {
                width = width.max(show(self.cell(i, n)).len());
            }
        }
        let mut out = String::new();
        for i in (0..4).rev() {
            let _ = write!(out, "h^{i} |");
            for n in self.window.iter() {
                let _ = write!(out, " {:>width$}", show(self.cell(i, n)));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "----+{}", "-".repeat((width + 1) * self.window.len()));
        out.push_str("  n |");
        for n in self.window.iter() {
            let _ = write!(out, " {n:>width$}");
        }
        out.push('\n');
        out
    }

    /// `i,n,value` rows, `?` for unknown cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,n,value\n");
        for i in 0..4 {
            for n in self.window.iter() {
                match self.cell(i, n) {
                    Cell::Known(v) => {
                        let _ = writeln!(out, "{i},{n},{v}");
                    }
                    Cell::Unknown => {
                        let _ = writeln!(out, "{i},{n},?");
                    }
                }
            }
        }
        out
    }
}

/// Smallest `m` found regular and the vanishing cells `(i, m - i)` proving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub regularity: Option<i64>,
    pub witness: Vec<(usize, i64)>,
}

/// Smallest `m` in the window with `h^i(F(m - i)) = 0` known for `i = 1, 2, 3`.
pub fn regularity(table: &CohomTable) -> RegularityReport {
    for m in table.window.iter() {
        let witness: Vec<(usize, i64)> = (1..4).map(|i| (i, m - i as i64)).collect();
        if witness.iter().all(|&(i, n)| table.cell(i, n).is_zero()) {
            return RegularityReport {
                regularity: Some(m),
                witness,
            };
        }
    }
    RegularityReport {
        regularity: None,
        witness: Vec::new(),
    }
}

/// The four-row table of `I_C(n)` for an ACM curve.
///
/// Rows 1 and 3 and the row-2 cells at `n <= 0` are exact. Row 2 at `n >= 1`
/// is known where `h^0(O_X(n)) = χ(O_C(n))` forces `h^1(O_C(n)) = 0`, or by
/// regularity propagation from such cells. Remaining cells with `nd > 2g - 2`
/// are filled under [`TableFlag::IntegralCurveAssumption`]; anything else
/// stays unknown, as does the `h^0` cell above it.
pub fn full_ideal_table(curve: &CurveClass, window: Window) -> Result<CohomTable, CohomError> {
    if !curve.acm {
        return Err(CohomError::NotAcm);
    }
    let ambient = curve.ambient;
    for n in window.iter().filter(|&n| n >= 1) {
        if (ambient.h0(n) as i128) < curve.chi(n) as i128 {
            return Err(CohomError::NegativeDimension { n });
        }
    }

    let mut table = CohomTable::unknown(window);
    table.mark_vanishing(1);
    if ambient.dim() == 3 {
        for n in window.iter() {
            table.set(3, n, ambient.h(3, n));
        }
    } else {
        table.mark_vanishing(3);
    }

    for n in window.iter() {
        if n <= 0 {
            let h0_curve = if n == 0 { 1 } else { 0 };
            let h1_curve = h0_curve - curve.chi(n);
            table.set(2, n, h1_curve as u128 + ambient.h(2, n));
        } else if ambient.h0(n) as i128 == curve.chi(n) as i128 {
            table.set(2, n, ambient.h(2, n));
        }
    }
    if let Some(m) = regularity(&table).regularity {
        table.propagate_regularity(m)?;
    }

    let assumed: Vec<i64> = window
        .iter()
        .filter(|&n| n >= 1 && table.cell(2, n) == Cell::Unknown)
        .filter(|&n| n * curve.degree > 2 * curve.genus - 2)
        .collect();
    if !assumed.is_empty() {
        for &n in &assumed {
            table.set(2, n, ambient.h(2, n));
        }
        table.flags.insert(TableFlag::IntegralCurveAssumption);
        if let Some(m) = regularity(&table).regularity {
            table.propagate_regularity(m)?;
        }
    }

    for n in window.iter() {
        if n <= 0 {
            table.set(0, n, ambient.h0(n) - section_dim(curve, n)?);
        } else if let Cell::Known(h2) = table.cell(2, n) {
            let h1_curve = h2 as i128 - ambient.h(2, n) as i128;
            let sections = curve.chi(n) as i128 + h1_curve;
            if sections < 0 {
                return Err(CohomError::NegativeSections { n });
            }
            let h0 = ambient.h0(n) as i128 - sections;
            if h0 < 0 {
                return Err(CohomError::NegativeDimension { n });
            }
            table.set(0, n, h0 as u128);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// `h^0(O_X(n)) < χ(O_C(n))` at this twist.
    Infeasible(i64),
}

/// Necessary condition for an ACM curve of degree `d`, genus `g` on
/// `ambient`: `h^0(O_X(n)) >= χ(O_C(n))` for all `n >= 1`. `Feasible` does
/// not assert existence.
pub fn acm_embedding_obstruction(d: i64, g: i64, ambient: Ambient) -> Feasibility {
    // slack(n) = h^0(O_X(n)) - χ(n) is convex for n >= 0 on any ambient of
    // dimension >= 2, so once it is nonnegative and nondecreasing it stays so
    let slack = |n: i64| ambient.h0(n) as i128 - rr_chi(d, g, n) as i128;
    let mut n = 1;
    loop {
        let s = slack(n);
        if s < 0 {
            return Feasibility::Infeasible(n);
        }
        if slack(n + 1) >= s {
            return Feasibility::Feasible;
        }
        n += 1;
    }
}

/// Smallest `n >= 1` with `nd > 2g - 2`, from which `h^1(O_C(n)) = 0` on an
/// integral curve.
pub fn nonspecial_threshold(d: i64, g: i64) -> i64 {
    assert!(d >= 1, "degree {d} < 1");
    let canonical = 2 * g - 2;
    if canonical < d {
        1
    } else {
        canonical / d + 1
    }
}

/// Genus of a plane curve of degree `d`.
pub fn plane_genus(d: i64) -> i64 {
    assert!(d >= 1, "degree {d} < 1");
    (d - 1) * (d - 2) / 2
}

/// Genera `(a-1)(b-1)` of bidegree `(a, b)` curves on a smooth quadric
/// surface with `a + b = d`.
pub fn quadric_surface_genus_spectrum(d: i64) -> BTreeSet<i64> {
    assert!(d >= 1, "degree {d} < 1");
    (1..d).map(|a| (a - 1) * (d - a - 1)).collect()
}

/// Surfaces cut on the smooth quadric threefold by hypersurfaces have even degree.
pub fn klein_parity_check(surface_degree: i64) -> bool {
    surface_degree % 2 == 0
}
