//! Rank-4 ACM sheaves on `Q` and how to recognise them from a table of
//! global sections.
//!
//! Every rank-4 ACM bundle on the smooth quadric threefold is one of
//!
//! 1. `E0(a) + O(b) + O(c)`
//! 2. `E0(a) + E0(b)`
//! 3. `O(a1) + O(a2) + O(a3) + O(a4)`
//!
//! so a kernel whose `h^0` row is known can be identified by enumerating
//! twists in a bounded range and comparing rows.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cohomology::{full_ideal_table, ideal_h0_table, regularity, CohomError, CurveClass};
use crate::hilbert::{h0_spinor, Ambient, TwistAtom};
use crate::sheaf::{SheafExpr, SpinorHilbert};
use crate::window::{HilbertRow, Window};

/// Default cap on the number of enumerated candidates.
pub const CANDIDATE_CAP: usize = 10_000;

/// Shortest window that separates the cubic growth patterns.
pub const MIN_MATCH_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("twist range [{lo}, {hi}] is empty")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("{count} candidates exceed the cap of {cap}")]
    RangeTooLarge { count: usize, cap: usize },
    #[error("window of length {0} is too short to separate candidates (need {MIN_MATCH_WINDOW})")]
    WindowTooShort(usize),
    #[error("middle term has fewer sections than I_C at twist {n}: it cannot surject")]
    NegativeKernelDimension { n: i64 },
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `E0(a) + O(b) + O(c)`
    SpinorPlusLines,
    /// `E0(a) + E0(b)`
    TwoSpinors,
    /// `O(a1) + ... + O(a4)`
    Split,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::SpinorPlusLines, Family::TwoSpinors, Family::Split];
}

/// Inclusive twist bounds for candidate enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistBounds {
    pub lo: i64,
    pub hi: i64,
}

impl Default for TwistBounds {
    fn default() -> Self {
        TwistBounds { lo: -6, hi: 3 }
    }
}

fn family_count(family: Family, width: usize) -> usize {
    let pairs = width * (width + 1) / 2;
    match family {
        Family::SpinorPlusLines => width * pairs,
        Family::TwoSpinors => pairs,
        // multisets of size 4
        Family::Split => width * (width + 1) * (width + 2) * (width + 3) / 24,
    }
}

/// All members of one family with twists in `bounds`, in canonical form.
pub fn enumerate_family(family: Family, bounds: TwistBounds) -> Vec<SheafExpr> {
    let twists: Vec<i64> = (bounds.lo..=bounds.hi).collect();
    let mut out = Vec::new();
    match family {
        Family::SpinorPlusLines => {
            for &a in &twists {
                for (i, &b) in twists.iter().enumerate() {
                    for &c in &twists[i..] {
                        out.push(SheafExpr::on_quadric([
                            TwistAtom::spinor(a),
                            TwistAtom::line(b),
                            TwistAtom::line(c),
                        ]));
                    }
                }
            }
        }
        Family::TwoSpinors => {
            for (i, &a) in twists.iter().enumerate() {
                for &b in &twists[i..] {
                    out.push(SheafExpr::on_quadric([
                        TwistAtom::spinor(a),
                        TwistAtom::spinor(b),
                    ]));
                }
            }
        }
        Family::Split => {
            let w = twists.len();
            for i in 0..w {
                for j in i..w {
                    for k in j..w {
                        for l in k..w {
                            out.push(SheafExpr::on_quadric(
                                [twists[i], twists[j], twists[k], twists[l]].map(TwistAtom::line),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every rank-4 candidate with twists in `bounds`, family by family.
pub fn enumerate_rank4_candidates(
    bounds: TwistBounds,
    cap: usize,
) -> Result<Vec<SheafExpr>, ClassifyError> {
    if bounds.lo > bounds.hi {
        return Err(ClassifyError::EmptyRange {
            lo: bounds.lo,
            hi: bounds.hi,
        });
    }
    let width = (bounds.hi - bounds.lo + 1) as usize;
    let count: usize = Family::ALL.iter().map(|&f| family_count(f, width)).sum();
    if count > cap {
        return Err(ClassifyError::RangeTooLarge { count, cap });
    }
    Ok(Family::ALL
        .iter()
        .flat_map(|&f| enumerate_family(f, bounds))
        .collect())
}

/// Candidates whose `h^0` row equals `target` on its whole window.
pub fn match_acm_kernel(
    target: &HilbertRow,
    bounds: TwistBounds,
) -> Result<Vec<SheafExpr>, ClassifyError> {
    match_acm_kernel_with(target, bounds, h0_spinor)
}

pub fn match_acm_kernel_with(
    target: &HilbertRow,
    bounds: TwistBounds,
    spinor: SpinorHilbert,
) -> Result<Vec<SheafExpr>, ClassifyError> {
    let len = target.window().len();
    if len < MIN_MATCH_WINDOW {
        return Err(ClassifyError::WindowTooShort(len));
    }
    let candidates = enumerate_rank4_candidates(bounds, CANDIDATE_CAP)?;
    Ok(candidates
        .into_iter()
        .filter(|c| target.iter().all(|(n, v)| c.h0_with(n, spinor) == v))
        .collect())
}

/// `h^0(A(n)) = h^0(B(n)) - h^0(I_C(n))` for the kernel `A` of `B ->> I_C`.
pub fn kernel_table_from_resolution(
    curve: &CurveClass,
    middle: &SheafExpr,
    window: Window,
) -> Result<HilbertRow, ClassifyError> {
    let ideal = ideal_h0_table(curve, window)?;
    HilbertRow::try_tabulate(window, |n| {
        let have = middle.h0(n);
        let need = ideal.get(n).expect("same window");
        have.checked_sub(need)
            .ok_or(ClassifyError::NegativeKernelDimension { n })
    })
}

/// Minimal generator counts per degree, estimated from Hilbert data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEstimate {
    /// Degree to number of new generators; zero counts omitted.
    pub counts: BTreeMap<i64, u128>,
    /// Set when some count relied on multiplication by linear forms being
    /// injective on the lower-degree generators.
    pub assumes_injective_multiplication: bool,
}

impl GeneratorEstimate {
    /// The split sheaf `⊕ O(-k)^{count}` that surjects onto `I_C`.
    pub fn as_middle(&self, ambient: Ambient) -> SheafExpr {
        let atoms = self
            .counts
            .iter()
            .flat_map(|(&k, &c)| std::iter::repeat_n(TwistAtom::line(-k), c as usize));
        SheafExpr::new(ambient, atoms).expect("line bundles live on every ambient")
    }
}

/// New generators in degree `k`: `h^0(I(k)) - min(h^0(I(k-1)) * h^0(O(1)), h^0(I(k)))`,
/// for `k` from 1 up to the regularity (or the window end if unknown).
///
/// A lower bound, not a syzygy computation.
pub fn generator_estimate(
    curve: &CurveClass,
    window: Window,
) -> Result<GeneratorEstimate, ClassifyError> {
    let table = full_ideal_table(curve, window)?;
    let top = regularity(&table)
        .regularity
        .unwrap_or(window.hi())
        .min(window.hi());
    let lo = window.lo().max(1);
    let mut counts = BTreeMap::new();
    let mut assumes = false;
    if lo > top {
        return Ok(GeneratorEstimate {
            counts,
            assumes_injective_multiplication: assumes,
        });
    }
    let ideal = ideal_h0_table(curve, Window::new(lo - 1, top).expect("lo <= top"))?;
    let linear = curve.ambient().h0(1);
    for k in lo..=top {
        let here = ideal.get(k).expect("in range");
        let below = ideal.get(k - 1).expect("in range");
        if below > 0 {
            assumes = true;
        }
        let spanned = below.saturating_mul(linear).min(here);
        let fresh = here - spanned;
        if fresh > 0 {
            counts.insert(k, fresh);
        }
    }
    Ok(GeneratorEstimate {
        counts,
        assumes_injective_multiplication: assumes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Ambient = Ambient::QuadricThreefold;

    fn row(values: &[u128]) -> HilbertRow {
        HilbertRow::from_values(0, values.to_vec()).unwrap()
    }

    fn w06() -> Window {
        Window::new(0, 6).unwrap()
    }

    #[test]
    fn enumeration_small_ranges() {
        let fam2 = enumerate_family(Family::TwoSpinors, TwistBounds { lo: -1, hi: 0 });
        let shown: Vec<String> = fam2.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["2*E0(-1)", "E0(0) + E0(-1)", "2*E0(0)"]);
        let all = enumerate_rank4_candidates(TwistBounds { lo: 0, hi: 0 }, CANDIDATE_CAP).unwrap();
        let shown: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["2*O(0) + E0(0)", "2*E0(0)", "4*O(0)"]);
    }

    #[test]
    fn enumeration_counts_and_dedup() {
        for width in 1..=8i64 {
            let b = TwistBounds {
                lo: -3,
                hi: -3 + width - 1,
            };
            let all = enumerate_rank4_candidates(b, CANDIDATE_CAP).unwrap();
            let w = width as usize;
            let expected =
                w * w * (w + 1) / 2 + w * (w + 1) / 2 + w * (w + 1) * (w + 2) * (w + 3) / 24;
            assert_eq!(all.len(), expected);
            let unique: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
            assert!(all.iter().all(|s| s.rank() == 4));
        }
        assert_eq!(
            enumerate_rank4_candidates(TwistBounds::default(), CANDIDATE_CAP)
                .unwrap()
                .len(),
            1320
        );
    }

    #[test]
    fn enumeration_errors() {
        assert!(matches!(
            enumerate_rank4_candidates(TwistBounds { lo: -20, hi: 20 }, CANDIDATE_CAP),
            Err(ClassifyError::RangeTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_rank4_candidates(TwistBounds { lo: 1, hi: 0 }, CANDIDATE_CAP),
            Err(ClassifyError::EmptyRange { .. })
        ));
    }

    #[test]
    fn matches_known_kernels_uniquely() {
        let m = match_acm_kernel(&row(&[0, 0, 0, 0, 8, 32, 80]), TwistBounds::default()).unwrap();
        assert_eq!(m, vec![SheafExpr::repeated(TwistAtom::spinor(-2), 2)]);
        let m = match_acm_kernel(&row(&[0, 0, 0, 8, 32, 80, 160]), TwistBounds::default()).unwrap();
        assert_eq!(m, vec![SheafExpr::repeated(TwistAtom::spinor(-1), 2)]);
    }

    #[test]
    fn split_self_match() {
        let x = SheafExpr::on_quadric([
            TwistAtom::line(-1),
            TwistAtom::line(0),
            TwistAtom::line(0),
            TwistAtom::line(0),
        ]);
        let target = HilbertRow::tabulate(w06(), |n| x.h0(n));
        assert_eq!(
            match_acm_kernel(&target, TwistBounds::default()).unwrap(),
            vec![x]
        );
    }

    #[test]
    fn every_candidate_matches_itself() {
        let b = TwistBounds::default();
        for x in enumerate_rank4_candidates(b, CANDIDATE_CAP).unwrap() {
            let target = HilbertRow::tabulate(w06(), |n| x.h0(n));
            let m = match_acm_kernel(&target, b).unwrap();
            assert!(m.contains(&x), "{x}");
        }
    }

    #[test]
    fn short_window_rejected() {
        let target = row(&[0, 0, 0, 8]);
        assert_eq!(
            match_acm_kernel(&target, TwistBounds::default()),
            Err(ClassifyError::WindowTooShort(4))
        );
    }

    #[test]
    fn kernel_tables() {
        let c84 = CurveClass::acm(Q, 8, 4).unwrap();
        let b84 = SheafExpr::on_quadric([-2, -3, -3, -3, -3].map(TwistAtom::line));
        let k = kernel_table_from_resolution(&c84, &b84, w06()).unwrap();
        assert_eq!(k.values(), [0, 0, 0, 0, 8, 32, 80]);
        let c40 = CurveClass::acm(Q, 4, 0).unwrap();
        let k =
            kernel_table_from_resolution(&c40, &SheafExpr::repeated(TwistAtom::line(-2), 5), w06())
                .unwrap();
        assert_eq!(k.values(), [0, 0, 0, 8, 32, 80, 160]);
        // h^0(O_Q(1)) = 5 < h^0(I_C(3)) = 9
        let bad = kernel_table_from_resolution(
            &c84,
            &SheafExpr::on_quadric([TwistAtom::line(-2)]),
            w06(),
        );
        assert_eq!(bad, Err(ClassifyError::NegativeKernelDimension { n: 3 }));
    }

    #[test]
    fn generator_estimates() {
        let g = generator_estimate(&CurveClass::acm(Q, 8, 4).unwrap(), Window::default()).unwrap();
        assert_eq!(g.counts, BTreeMap::from([(2, 1), (3, 4)]));
        assert!(g.assumes_injective_multiplication);
        assert_eq!(g.as_middle(Q).to_string(), "O(-2) + 4*O(-3)");
        let g = generator_estimate(&CurveClass::acm(Q, 4, 0).unwrap(), Window::default()).unwrap();
        assert_eq!(g.counts, BTreeMap::from([(2, 5)]));
        assert!(!g.assumes_injective_multiplication);
        assert_eq!(g.as_middle(Q).to_string(), "5*O(-2)");
        let g = generator_estimate(
            &CurveClass::acm(Ambient::ProjSpace(4), 8, 4).unwrap(),
            Window::default(),
        )
        .unwrap();
        assert_eq!(g.counts, BTreeMap::from([(2, 2), (3, 4)]));
        assert!(g.assumes_injective_multiplication);
    }

    #[test]
    fn generators_bounded_by_regularity() {
        for d in 1..16 {
            for g in 0..12 {
                let c = CurveClass::acm(Q, d, g).unwrap();
                let Ok(table) = full_ideal_table(&c, Window::default()) else {
                    continue;
                };
                let Some(m) = regularity(&table).regularity else {
                    continue;
                };
                let Ok(est) = generator_estimate(&c, Window::default()) else {
                    continue;
                };
                if let Some((&top, _)) = est.counts.last_key_value() {
                    assert!(
                        top <= m,
                        "({d},{g}): generator in degree {top} > regularity {m}"
                    );
                }
            }
        }
    }
}
