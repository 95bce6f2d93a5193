//! Shared inputs for the criterion benches.

use ql_core::{Ambient, CurveClass, Flavor, ResolutionTriple, SheafExpr, TwistAtom};

pub fn curve_84() -> CurveClass {
    CurveClass::acm(Ambient::QuadricThreefold, 8, 4).expect("valid curve")
}

pub fn curve_40() -> CurveClass {
    CurveClass::acm(Ambient::QuadricThreefold, 4, 0).expect("valid curve")
}

/// `0 -> 2*E0(-1) -> 5*O(-2) -> I_C -> 0` for the (4,0) curve.
pub fn etype_40() -> ResolutionTriple {
    ResolutionTriple {
        kernel: SheafExpr::repeated(TwistAtom::spinor(-1), 2),
        middle: SheafExpr::repeated(TwistAtom::line(-2), 5),
        curve: curve_40(),
        flavor: Flavor::EType,
    }
}
