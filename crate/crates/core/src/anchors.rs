//! Reference values for degree-8 genus-4 and degree-4 genus-0 ACM curves,
//! checked end to end. Each anchor recomputes a published table or identity
//! and compares it with the literal values.

use std::collections::BTreeMap;

use crate::classification::{
    generator_estimate, kernel_table_from_resolution, match_acm_kernel_with, TwistBounds,
};
use crate::cohomology::{
    acm_embedding_obstruction, full_ideal_table, ideal_h0_table, klein_parity_check,
    nonspecial_threshold, plane_genus, quadric_surface_genus_spectrum, regularity, rr_chi,
    section_table, Cell, CurveClass, Feasibility,
};
use crate::hilbert::{h0_proj, h0_quadric3, h0_spinor, Ambient, TwistAtom};
use crate::liaison::{
    ci_residual, mapping_cone_e_from_n, mapping_cone_n_from_e, resolution_consistency_check_with,
    CiLinkage, Flavor, ResolutionTriple,
};
use crate::sheaf::{SheafExpr, SpinorHilbert};
use crate::window::{HilbertRow, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorStatus {
    Pass,
    Fail,
    /// A known misprint reproduced as expected; not a failure.
    ExpectedDiscrepancy,
}

impl AnchorStatus {
    pub fn label(&self) -> &'static str {
        match self {
            AnchorStatus::Pass => "PASS",
            AnchorStatus::Fail => "FAIL",
            AnchorStatus::ExpectedDiscrepancy => "EXPECTED-DISCREPANCY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorResult {
    pub id: &'static str,
    pub claim: &'static str,
    pub status: AnchorStatus,
    pub detail: String,
}

pub fn all_passed(results: &[AnchorResult]) -> bool {
    results.iter().all(|r| r.status != AnchorStatus::Fail)
}

const Q: Ambient = Ambient::QuadricThreefold;
const P4: Ambient = Ambient::ProjSpace(4);

fn window(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).expect("static window")
}

fn join(values: &[u128]) -> String {
    values
        .iter()
        .map(u128::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn curve(ambient: Ambient, d: i64, g: i64) -> CurveClass {
    CurveClass::acm(ambient, d, g).expect("static curve")
}

fn o(t: i64) -> TwistAtom {
    TwistAtom::line(t)
}

fn e(t: i64) -> TwistAtom {
    TwistAtom::spinor(t)
}

struct Suite {
    spinor: SpinorHilbert,
    results: Vec<AnchorResult>,
}

impl Suite {
    fn record(&mut self, id: &'static str, claim: &'static str, ok: bool, detail: String) {
        let status = if ok {
            AnchorStatus::Pass
        } else {
            AnchorStatus::Fail
        };
        self.results.push(AnchorResult {
            id,
            claim,
            status,
            detail,
        });
    }

    fn row(
        &mut self,
        id: &'static str,
        claim: &'static str,
        expected: &[u128],
        got: Option<Vec<u128>>,
    ) {
        match got {
            Some(got) => {
                let detail = if got == expected {
                    join(expected)
                } else {
                    format!("expected {}, got {}", join(expected), join(&got))
                };
                self.record(id, claim, got == expected, detail);
            }
            None => self.record(
                id,
                claim,
                false,
                format!("expected {}, got error", join(expected)),
            ),
        }
    }

    /// The kernel row from `B - I_C` and the row of the matched sheaf must
    /// both equal the quoted values.
    fn kernel_rows(
        &mut self,
        id: &'static str,
        claim: &'static str,
        quoted: &[u128],
        from_resolution: Option<HilbertRow>,
        from_sheaf: Vec<u128>,
    ) {
        let from_resolution = from_resolution.map(|r| r.values().to_vec());
        let ok = from_resolution.as_deref() == Some(quoted) && from_sheaf == quoted;
        let detail = if ok {
            join(quoted)
        } else {
            format!(
                "expected {}, got {} from the resolution and {} from the sheaf",
                join(quoted),
                from_resolution.map_or_else(|| "error".to_string(), |r| join(&r)),
                join(&from_sheaf)
            )
        };
        self.record(id, claim, ok, detail);
    }
}

fn etype_84() -> ResolutionTriple {
    ResolutionTriple {
        kernel: SheafExpr::repeated(e(-2), 2),
        middle: SheafExpr::on_quadric([o(-2), o(-3), o(-3), o(-3), o(-3)]),
        curve: curve(Q, 8, 4),
        flavor: Flavor::EType,
    }
}

fn etype_40() -> ResolutionTriple {
    ResolutionTriple {
        kernel: SheafExpr::repeated(e(-1), 2),
        middle: SheafExpr::repeated(o(-2), 5),
        curve: curve(Q, 4, 0),
        flavor: Flavor::EType,
    }
}

/// The N-type resolution with the twists as originally printed.
pub fn printed_ntype_84() -> ResolutionTriple {
    ResolutionTriple {
        kernel: SheafExpr::repeated(o(-5), 5),
        middle: SheafExpr::on_quadric([o(-4), o(-3), e(-3), e(-3)]),
        curve: curve(Q, 8, 4),
        flavor: Flavor::NType,
    }
}

pub fn verify_all() -> Vec<AnchorResult> {
    verify_with(h0_spinor)
}

/// Runs every anchor with `spinor` as the Hilbert function of `E0`.
/// Results come back in a fixed order.
pub fn verify_with(spinor: SpinorHilbert) -> Vec<AnchorResult> {
    let mut s = Suite {
        spinor,
        results: Vec::new(),
    };
    let w06 = window(0, 6);
    let c84_p4 = curve(P4, 8, 4);
    let c84_q = curve(Q, 8, 4);
    let c40_q = curve(Q, 4, 0);

    s.record(
        "rr-84",
        "chi(O_C(1)) = 8 + 1 - 4 = 5",
        rr_chi(8, 4, 1) == 5,
        format!("{}", rr_chi(8, 4, 1)),
    );
    s.record(
        "rr-40",
        "chi(O_C(1)) = 4 + 1 - 0 = 5",
        rr_chi(4, 0, 1) == 5,
        format!("{}", rr_chi(4, 0, 1)),
    );
    s.row(
        "ambient-p4",
        "h0(O_P4(n)), n=0..4",
        &[1, 5, 15, 35, 70],
        Some((0..=4).map(|n| h0_proj(4, n)).collect()),
    );
    s.row(
        "ambient-q",
        "h0(O_Q(n)), n=0..6",
        &[1, 5, 14, 30, 55, 91, 140],
        Some((0..=6).map(h0_quadric3).collect()),
    );
    s.row(
        "sections-84",
        "h0(O_C(n)) for (8,4), n=0..4",
        &[1, 5, 13, 21, 29],
        section_table(&c84_p4, window(0, 4))
            .ok()
            .map(|r| r.values().to_vec()),
    );
    s.row(
        "sections-40",
        "h0(O_C(n)) for (4,0), n=0..6",
        &[1, 5, 9, 13, 17, 21, 25],
        section_table(&c40_q, w06).ok().map(|r| r.values().to_vec()),
    );
    s.row(
        "ideal-84-p4",
        "h0(I_C(n)) for (8,4) in P4, n=0..4",
        &[0, 0, 2, 14, 41],
        ideal_h0_table(&c84_p4, window(0, 4))
            .ok()
            .map(|r| r.values().to_vec()),
    );
    s.row(
        "ideal-84-q",
        "h0(I_C(n)) for (8,4) on Q, n=0..6",
        &[0, 0, 1, 9, 26, 54, 95],
        ideal_h0_table(&c84_q, w06)
            .ok()
            .map(|r| r.values().to_vec()),
    );
    s.row(
        "ideal-40-q",
        "h0(I_C(n)) for (4,0) on Q, n=0..6",
        &[0, 0, 5, 17, 38, 70, 115],
        ideal_h0_table(&c40_q, w06)
            .ok()
            .map(|r| r.values().to_vec()),
    );

    let obstruction = acm_embedding_obstruction(8, 4, Ambient::ProjSpace(3));
    s.record(
        "no-84-in-p3",
        "h0(I_C(1)) = 4 - 5 < 0 in P3",
        obstruction == Feasibility::Infeasible(1) && h0_proj(3, 1) == 4,
        format!("{obstruction:?}, h0(O_P3(1)) = {}", h0_proj(3, 1)),
    );
    s.record(
        "nondegenerate-84",
        "h0(I_C(1)) = 0 in P4",
        ideal_h0_table(&c84_p4, window(1, 1))
            .ok()
            .and_then(|r| r.get(1))
            == Some(0),
        "h0(I_C(1)) = 0".to_string(),
    );

    match full_ideal_table(&c84_p4, Window::default()) {
        Ok(t) => {
            let h2 = t.cell(2, 1);
            let h3 = t.cell(3, 0);
            s.record(
                "h2-h3-84",
                "h2(I_C(1)) = 0 and h3(I_C) = 0 in P4",
                h2 == Cell::Known(0) && h3 == Cell::Known(0),
                format!("h2(I_C(1)) = {h2:?}, h3(I_C) = {h3:?}"),
            );
            let m = regularity(&t).regularity;
            s.record(
                "regularity-84",
                "I_C is 3-regular in P4",
                m == Some(3),
                format!("{m:?}"),
            );
        }
        Err(err) => {
            s.record(
                "h2-h3-84",
                "h2(I_C(1)) = 0 and h3(I_C) = 0 in P4",
                false,
                err.to_string(),
            );
            s.record(
                "regularity-84",
                "I_C is 3-regular in P4",
                false,
                err.to_string(),
            );
        }
    }
    let m40 = full_ideal_table(&c40_q, Window::default())
        .ok()
        .and_then(|t| regularity(&t).regularity);
    s.record(
        "regularity-40",
        "I_C of (4,0) on Q is 2-regular",
        m40 == Some(2),
        format!("{m40:?}"),
    );

    let b84 = etype_84().middle;
    s.row(
        "middle-84",
        "h0(O_Q(n-2) + 4*O_Q(n-3)), n=0..6",
        &[0, 0, 1, 9, 34, 86, 175],
        Some(w06.iter().map(|n| b84.h0(n)).collect()),
    );
    let quoted_84 = [0, 0, 0, 0, 8, 32, 80];
    let kernel = kernel_table_from_resolution(&c84_q, &b84, w06).ok();
    let e84: Vec<u128> = w06
        .iter()
        .map(|n| etype_84().kernel.h0_with(n, s.spinor))
        .collect();
    s.kernel_rows(
        "kernel-84",
        "h0(E(n)) for the (8,4) kernel, and h0(2*E0(n-2)), n=0..6",
        &quoted_84,
        kernel,
        e84,
    );
    classify(
        &mut s,
        "classify-84",
        "kernel of the (8,4) E-type resolution is 2*E0(-2)",
        &quoted_84,
        &etype_84().kernel,
    );
    let gens84 = generator_estimate(&c84_q, Window::default())
        .ok()
        .map(|g| g.counts);
    s.record(
        "generators-84",
        "one quadric and 4 new cubic generators on Q",
        gens84 == Some(BTreeMap::from([(2, 1), (3, 4)])),
        format!("{gens84:?}"),
    );
    // the 5-dimensional space of linear multiples of the quadric inside degree 3
    s.record(
        "linear-multiples-84",
        "h0(I_C(2)) * h0(O_Q(1)) = 1 * 5",
        h0_quadric3(1) == 5
            && ideal_h0_table(&c84_q, window(2, 2))
                .ok()
                .and_then(|r| r.get(2))
                == Some(1),
        "5".to_string(),
    );

    let quoted_40 = [0, 0, 0, 8, 32, 80, 160];
    let kernel = kernel_table_from_resolution(&c40_q, &etype_40().middle, w06).ok();
    let e40: Vec<u128> = w06
        .iter()
        .map(|n| etype_40().kernel.h0_with(n, s.spinor))
        .collect();
    s.kernel_rows(
        "kernel-40",
        "h0(E(n)) for the (4,0) kernel, and h0(2*E0(n-1)), n=0..6",
        &quoted_40,
        kernel,
        e40,
    );
    classify(
        &mut s,
        "classify-40",
        "kernel of the (4,0) E-type resolution is 2*E0(-1)",
        &quoted_40,
        &etype_40().kernel,
    );
    let gens40 = generator_estimate(&c40_q, Window::default())
        .ok()
        .map(|g| g.counts);
    s.record(
        "generators-40",
        "I_C of (4,0) is generated by 5 quadrics",
        gens40 == Some(BTreeMap::from([(2, 5)])),
        format!("{gens40:?}"),
    );

    for (id, claim, res) in [
        (
            "consistency-84",
            "0 -> 2*E0(-2) -> O(-2) + 4*O(-3) -> I_C -> 0 balances on n=0..6",
            etype_84(),
        ),
        (
            "consistency-40",
            "0 -> 2*E0(-1) -> 5*O(-2) -> I_C -> 0 balances on n=0..6",
            etype_40(),
        ),
    ] {
        let r = resolution_consistency_check_with(&res, w06, s.spinor);
        s.record(
            id,
            claim,
            r.passed(),
            format!("failing twists {:?}", r.failing_twists()),
        );
    }

    let (rank, c1) = etype_84().kernel.rank_c1();
    s.record(
        "rank-kernel-84",
        "rank E = 4",
        rank == 4,
        format!("rank {rank}, c1 {c1}"),
    );

    let link = CiLinkage::on_quadric(2, 3).expect("static linkage");
    let residual = ci_residual(8, 4, &link);
    s.record(
        "link-84",
        "(8,4) is CI-linked to (4,0), genus drop 1/2 (3 + 4 - 5)(8 - 4) = 4",
        matches!(residual, Ok(r) if (r.degree, r.genus, r.genus_drop) == (4, 0, 4))
            && link.degree() == 12,
        format!("{residual:?}, deg Z = {}", link.degree()),
    );
    s.record(
        "klein-parity",
        "surfaces on Q have even degree: Y of degree 4, components of degree 2",
        klein_parity_check(4) && klein_parity_check(2) && !klein_parity_check(3),
        "4 even, 2 even".to_string(),
    );
    let dual = SheafExpr::repeated(e(-1), 2).dual();
    s.record(
        "dual-rule",
        "(2*E0(-1))^dual = 2*E0(4)",
        dual == SheafExpr::repeated(e(4), 2),
        dual.to_string(),
    );

    match mapping_cone_n_from_e(&etype_40(), 2, 3) {
        Ok(out) => {
            let r = resolution_consistency_check_with(&out.resolution, w06, s.spinor);
            let round_trip = mapping_cone_e_from_n(&out.resolution, 2, 3)
                .map(|back| back.resolution == etype_40())
                .unwrap_or(false);
            s.record(
                "ntype-84",
                "N-type resolution of (8,4) via the linked (4,0) curve",
                r.passed() && round_trip,
                format!(
                    "{}; failing twists {:?}",
                    out.resolution,
                    r.failing_twists()
                ),
            );
        }
        Err(err) => s.record(
            "ntype-84",
            "N-type resolution of (8,4) via the linked (4,0) curve",
            false,
            err.to_string(),
        ),
    }
    let printed = printed_ntype_84();
    let r = resolution_consistency_check_with(&printed, w06, s.spinor);
    let first = r.failing_twists().first().copied();
    s.results.push(AnchorResult {
        id: "ntype-84-printed",
        claim: "0 -> 5*O(-5) -> O(-4) + O(-3) + 2*E0(-3) -> I_C -> 0 as printed",
        status: if first == Some(2) {
            AnchorStatus::ExpectedDiscrepancy
        } else {
            AnchorStatus::Fail
        },
        detail: match r.cells.iter().find(|c| Some(c.n) == first) {
            Some(c) => format!(
                "first failure at n={}: h0(B) - h0(A) = {}, h0(I_C) = {}",
                c.n,
                c.lhs,
                c.rhs
                    .map_or_else(|| "undefined".to_string(), |v| v.to_string())
            ),
            None => "no failure; the documented discrepancy did not reproduce".to_string(),
        },
    });

    let threshold = nonspecial_threshold(8, 4);
    s.record(
        "nonspecial-84",
        "2g - 2 = 6 <= deg C, so h1(O_C(n)) = 0 for n >= 1",
        threshold == 1,
        format!("threshold {threshold}"),
    );
    s.record(
        "plane-genus-8",
        "a plane curve of degree 8 has genus 21",
        plane_genus(8) == 21,
        plane_genus(8).to_string(),
    );
    let spectrum = quadric_surface_genus_spectrum(8);
    s.record(
        "quadric-surface-8",
        "no (8,4) curve on a smooth quadric surface",
        !spectrum.contains(&4),
        format!("genera {spectrum:?}"),
    );
    s.results
}

fn classify(
    s: &mut Suite,
    id: &'static str,
    claim: &'static str,
    quoted: &[u128],
    expected: &SheafExpr,
) {
    let target = HilbertRow::from_values(0, quoted.to_vec()).expect("nonempty");
    match match_acm_kernel_with(&target, TwistBounds::default(), s.spinor) {
        Ok(found) => {
            let shown: Vec<String> = found.iter().map(|x| x.to_string()).collect();
            s.record(
                id,
                claim,
                found.as_slice() == [expected.clone()],
                format!("[{}]", shown.join("; ")),
            );
        }
        Err(err) => s.record(id, claim, false, err.to_string()),
    }
}
