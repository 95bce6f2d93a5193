//! Complete-intersection linkage: invariants of the residual curve, and the
//! mapping-cone exchange between E-type and N-type resolutions on `Q`.
//!
//! If `C'` has an E-type resolution `0 -> A -> B -> I_C' -> 0` and `C` is
//! linked to `C'` on `Q` by divisors `O_Q(a)`, `O_Q(b)`, the mapping cone
//! gives the N-type resolution
//!
//! ```text
//! 0 -> B^∨(-a-b) -> A^∨(-a-b) + O(-a) + O(-b) -> I_C -> 0
//! ```
//!
//! and the same recipe read backwards recovers the E-type resolution.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cohomology::{ideal_h0_table, CohomError, CurveClass};
use crate::hilbert::{h0_spinor, Ambient, AtomKind, TwistAtom};
use crate::sheaf::{SheafExpr, SpinorHilbert};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
    #[error(
        "deg Z = {deg_z} does not exceed deg C = {degree}: residual degree would be {residual}"
    )]
    ResidualNegativeDegree {
        degree: i64,
        deg_z: i64,
        residual: i64,
    },
    #[error("residual genus would be {0} < 0")]
    ResidualNegativeGenus(i64),
    #[error("genus drop (1/2)*{0} is not an integer")]
    NonIntegralGenus(i64),
    #[error("expected an {expected} resolution")]
    WrongFlavor { expected: Flavor },
    #[error("resolution has an empty kernel")]
    DegenerateResolution,
    #[error("middle term lacks the link summand {0}")]
    MissingLinkSummand(TwistAtom),
    #[error("mapping cone is inconsistent at twist {n}")]
    MappingConeInconsistent { n: i64 },
    #[error("mapping cones are only available on the quadric threefold, not {0}")]
    NotOnQuadric(Ambient),
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

/// Hypersurface degrees cutting a complete-intersection curve in `P^n`.
/// On `Q` the quadric itself contributes one degree `2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CiLinkage {
    ambient_dim: u32,
    degrees: Vec<i64>,
}

impl CiLinkage {
    pub fn new(ambient_dim: u32, mut degrees: Vec<i64>) -> Result<Self, LinkError> {
        if ambient_dim < 2 || degrees.len() != ambient_dim as usize - 1 {
            return Err(LinkError::InvalidLinkage(format!(
                "a curve in P{ambient_dim} is cut by {} hypersurfaces, got {}",
                ambient_dim.saturating_sub(1),
                degrees.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 1) {
            return Err(LinkError::InvalidLinkage(format!(
                "hypersurface degree {d} < 1"
            )));
        }
        degrees.sort_unstable();
        Ok(CiLinkage {
            ambient_dim,
            degrees,
        })
    }

    /// `Q ∩ O_Q(a) ∩ O_Q(b)` inside `P^4`.
    pub fn on_quadric(a: i64, b: i64) -> Result<Self, LinkError> {
        Self::new(4, vec![2, a, b])
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self) -> i64 {
        self.degrees
            .iter()
            .try_fold(1i64, |acc, &d| acc.checked_mul(d))
            .expect("complete intersection degree overflows i64")
    }
}

/// Invariants of the residual curve `C'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residual {
    pub degree: i64,
    pub genus: i64,
    /// `g(C) - g(C')`.
    pub genus_drop: i64,
}

/// `deg C' = deg Z - deg C` and
/// `g(C) - g(C') = (1/2)(Σ d_i - n - 1)(deg C - deg C')`.
pub fn ci_residual(d: i64, g: i64, linkage: &CiLinkage) -> Result<Residual, LinkError> {
    let deg_z = linkage.degree();
    let residual = deg_z - d;
    if residual < 1 {
        return Err(LinkError::ResidualNegativeDegree {
            degree: d,
            deg_z,
            residual,
        });
    }
    let excess: i64 = linkage.degrees.iter().sum::<i64>() - linkage.ambient_dim as i64 - 1;
    let twice_drop = excess * (d - residual);
    if twice_drop % 2 != 0 {
        return Err(LinkError::NonIntegralGenus(twice_drop));
    }
    let genus = g - twice_drop / 2;
    if genus < 0 {
        return Err(LinkError::ResidualNegativeGenus(genus));
    }
    Ok(Residual {
        degree: residual,
        genus,
        genus_drop: twice_drop / 2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Kernel carries the ACM bundle, middle is split.
    EType,
    /// Middle carries the ACM bundle, kernel is split.
    NType,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::EType => "E-type",
            Flavor::NType => "N-type",
        })
    }
}

/// `0 -> kernel -> middle -> I_C -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTriple {
    pub kernel: SheafExpr,
    pub middle: SheafExpr,
    pub curve: CurveClass,
    pub flavor: Flavor,
}

impl fmt::Display for ResolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> {} -> {} -> I_C -> 0", self.kernel, self.middle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyCell {
    pub n: i64,
    /// `h^0(B(n)) - h^0(A(n))`.
    pub lhs: i128,
    /// `h^0(I_C(n))`; `None` where the curve admits no ACM ideal table.
    pub rhs: Option<u128>,
}

impl ConsistencyCell {
    pub fn passed(&self) -> bool {
        self.rhs.map(|r| r as i128) == Some(self.lhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub cells: Vec<ConsistencyCell>,
    /// `rank(B) - rank(A)`; an ideal sheaf has rank 1.
    pub rank_difference: i64,
    /// `c1(B) - c1(A)`; an ideal sheaf of a curve has trivial determinant.
    pub c1_difference: i64,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.rank_difference == 1
            && self.c1_difference == 0
            && self.cells.iter().all(|c| c.passed())
    }

    pub fn failing_twists(&self) -> Vec<i64> {
        self.cells
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.n)
            .collect()
    }

    /// `n,lhs,rhs,pass`; an undefined right-hand side prints as `?`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lhs,rhs,pass\n");
        for c in &self.cells {
            let rhs = c.rhs.map_or_else(|| "?".to_string(), |r| r.to_string());
            let _ = writeln!(out, "{},{},{},{}", c.n, c.lhs, rhs, c.passed());
        }
        out
    }
}

/// Checks `h^0(B(n)) - h^0(A(n)) = h^0(I_C(n))` on every twist of the
/// window, which holds when `A` is ACM, together with the rank and `c1`
/// balance. Failures are report content.
pub fn resolution_consistency_check(res: &ResolutionTriple, window: Window) -> ConsistencyReport {
    resolution_consistency_check_with(res, window, h0_spinor)
}

pub fn resolution_consistency_check_with(
    res: &ResolutionTriple,
    window: Window,
    spinor: SpinorHilbert,
) -> ConsistencyReport {
    let cells = window
        .iter()
        .map(|n| {
            let lhs = res.middle.h0_with(n, spinor) as i128 - res.kernel.h0_with(n, spinor) as i128;
            let one = Window::new(n, n).expect("singleton window");
            let rhs = ideal_h0_table(&res.curve, one)
                .ok()
                .and_then(|row| row.get(n));
            ConsistencyCell { n, lhs, rhs }
        })
        .collect();
    ConsistencyReport {
        cells,
        rank_difference: res.middle.rank() as i64 - res.kernel.rank() as i64,
        c1_difference: res.middle.c1() - res.kernel.c1(),
    }
}

/// A mapping-cone result. `shared_line_bundles` lists split summands that
/// occur in both terms; a minimal resolution drops such a pair exactly when
/// the corresponding map component is an isomorphism, which the numerical
/// data cannot decide, so they are reported and kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeOutput {
    pub resolution: ResolutionTriple,
    pub shared_line_bundles: Vec<TwistAtom>,
}

fn linked_curve(curve: &CurveClass, a: i64, b: i64) -> Result<CurveClass, LinkError> {
    if curve.ambient() != Ambient::QuadricThreefold {
        return Err(LinkError::NotOnQuadric(curve.ambient()));
    }
    let residual = ci_residual(curve.degree(), curve.genus(), &CiLinkage::on_quadric(a, b)?)?;
    Ok(CurveClass::acm(
        Ambient::QuadricThreefold,
        residual.degree,
        residual.genus,
    )?)
}

/// Line bundles present in both terms, with multiplicity.
pub fn shared_line_bundles(kernel: &SheafExpr, middle: &SheafExpr) -> Vec<TwistAtom> {
    let mut rest = middle.clone();
    let mut shared = Vec::new();
    for &atom in kernel
        .atoms()
        .iter()
        .filter(|a| a.kind == AtomKind::LineBundle)
    {
        if let Some(next) = rest.without(atom) {
            rest = next;
            shared.push(atom);
        }
    }
    shared
}

/// Drops the line bundles in [`shared_line_bundles`] from both terms.
/// Only valid when the connecting map is an isomorphism on those summands.
pub fn cancel_shared_line_bundles(res: &ResolutionTriple) -> ResolutionTriple {
    let mut out = res.clone();
    for atom in shared_line_bundles(&res.kernel, &res.middle) {
        out.kernel = out.kernel.without(atom).expect("shared atom in kernel");
        out.middle = out.middle.without(atom).expect("shared atom in middle");
    }
    out
}

fn finish(
    kernel: SheafExpr,
    middle: SheafExpr,
    curve: CurveClass,
    flavor: Flavor,
) -> Result<ConeOutput, LinkError> {
    let shared = shared_line_bundles(&kernel, &middle);
    let resolution = ResolutionTriple {
        kernel,
        middle,
        curve,
        flavor,
    };
    let report = resolution_consistency_check(&resolution, Window::default());
    if !report.passed() {
        let n = report
            .failing_twists()
            .first()
            .copied()
            .unwrap_or(Window::default().lo());
        return Err(LinkError::MappingConeInconsistent { n });
    }
    Ok(ConeOutput {
        resolution,
        shared_line_bundles: shared,
    })
}

/// N-type resolution of the curve linked to `res.curve` by `O_Q(a)`, `O_Q(b)`.
pub fn mapping_cone_n_from_e(
    res: &ResolutionTriple,
    a: i64,
    b: i64,
) -> Result<ConeOutput, LinkError> {
    if res.flavor != Flavor::EType {
        return Err(LinkError::WrongFlavor {
            expected: Flavor::EType,
        });
    }
    if res.kernel.is_zero() {
        return Err(LinkError::DegenerateResolution);
    }
    let curve = linked_curve(&res.curve, a, b)?;
    let shift = -a - b;
    let kernel = res.middle.dual().twist(shift);
    let links = SheafExpr::on_quadric([TwistAtom::line(-a), TwistAtom::line(-b)]);
    let middle = res
        .kernel
        .dual()
        .twist(shift)
        .direct_sum(&links)
        .map_err(|_| LinkError::NotOnQuadric(res.kernel.ambient()))?;
    finish(kernel, middle, curve, Flavor::NType)
}

/// E-type resolution of the curve linked to `res.curve` by `O_Q(a)`, `O_Q(b)`;
/// inverse of [`mapping_cone_n_from_e`].
pub fn mapping_cone_e_from_n(
    res: &ResolutionTriple,
    a: i64,
    b: i64,
) -> Result<ConeOutput, LinkError> {
    if res.flavor != Flavor::NType {
        return Err(LinkError::WrongFlavor {
            expected: Flavor::NType,
        });
    }
    if res.kernel.is_zero() {
        return Err(LinkError::DegenerateResolution);
    }
    let curve = linked_curve(&res.curve, a, b)?;
    let shift = -a - b;
    let rest = res
        .middle
        .without(TwistAtom::line(-a))
        .ok_or(LinkError::MissingLinkSummand(TwistAtom::line(-a)))?
        .without(TwistAtom::line(-b))
        .ok_or(LinkError::MissingLinkSummand(TwistAtom::line(-b)))?;
    let kernel = rest.dual().twist(shift);
    let middle = res.kernel.dual().twist(shift);
    finish(kernel, middle, curve, Flavor::EType)
}
