//! Formal direct sums of twisted line bundles and spinor atoms.

use std::fmt;

use thiserror::Error;

use crate::hilbert::{h0_spinor, Ambient, AtomKind, TwistAtom};

/// Hilbert function used for spinor atoms. [`h0_spinor`] unless a caller
/// substitutes another (mutation checks do).
pub type SpinorHilbert = fn(i64) -> u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("spinor atom {atom} on {ambient}: E0 only exists on the quadric threefold")]
    SpinorOffQuadric { atom: TwistAtom, ambient: Ambient },
    #[error("cannot add sheaves on different ambients ({0} and {1})")]
    AmbientMismatch(Ambient, Ambient),
}

/// A direct sum of atoms, kept sorted so that equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SheafExpr {
    ambient: Ambient,
    atoms: Vec<TwistAtom>,
}

impl SheafExpr {
    pub fn new(
        ambient: Ambient,
        atoms: impl IntoIterator<Item = TwistAtom>,
    ) -> Result<Self, SheafError> {
        let mut atoms: Vec<TwistAtom> = atoms.into_iter().collect();
        if ambient != Ambient::QuadricThreefold {
            if let Some(&atom) = atoms.iter().find(|a| a.kind == AtomKind::Spinor) {
                return Err(SheafError::SpinorOffQuadric { atom, ambient });
            }
        }
        atoms.sort();
        Ok(SheafExpr { ambient, atoms })
    }

    /// Sum of atoms on `Q`; never fails.
    pub fn on_quadric(atoms: impl IntoIterator<Item = TwistAtom>) -> Self {
        let mut atoms: Vec<TwistAtom> = atoms.into_iter().collect();
        atoms.sort();
        SheafExpr {
            ambient: Ambient::QuadricThreefold,
            atoms,
        }
    }

    pub fn zero(ambient: Ambient) -> Self {
        SheafExpr {
            ambient,
            atoms: Vec::new(),
        }
    }

    /// `mult` copies of `atom` on `Q`.
    pub fn repeated(atom: TwistAtom, mult: usize) -> Self {
        Self::on_quadric(std::iter::repeat_n(atom, mult))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn atoms(&self) -> &[TwistAtom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn twist(&self, t: i64) -> Self {
        SheafExpr {
            ambient: self.ambient,
            // uniform shift preserves the order
            atoms: self.atoms.iter().map(|a| a.twisted(t)).collect(),
        }
    }

    pub fn dual(&self) -> Self {
        let mut atoms: Vec<TwistAtom> = self.atoms.iter().map(|a| a.dual()).collect();
        atoms.sort();
        SheafExpr {
            ambient: self.ambient,
            atoms,
        }
    }

    pub fn direct_sum(&self, other: &SheafExpr) -> Result<Self, SheafError> {
        if self.ambient != other.ambient {
            return Err(SheafError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        atoms.sort();
        Ok(SheafExpr {
            ambient: self.ambient,
            atoms,
        })
    }

    /// Removes one copy of `atom`; `None` if it is not a summand.
    pub fn without(&self, atom: TwistAtom) -> Option<Self> {
        let pos = self.atoms.iter().position(|&a| a == atom)?;
        let mut atoms = self.atoms.clone();
        atoms.remove(pos);
        Some(SheafExpr {
            ambient: self.ambient,
            atoms,
        })
    }

    pub fn count(&self, atom: TwistAtom) -> usize {
        self.atoms.iter().filter(|&&a| a == atom).count()
    }

    pub fn rank(&self) -> u64 {
        self.atoms.iter().map(TwistAtom::rank).sum()
    }

    pub fn c1(&self) -> i64 {
        self.atoms.iter().map(TwistAtom::c1).sum()
    }

    pub fn rank_c1(&self) -> (u64, i64) {
        (self.rank(), self.c1())
    }

    /// `h^0(F(n))`.
    pub fn h0(&self, n: i64) -> u128 {
        self.h0_with(n, h0_spinor)
    }

    pub fn h0_with(&self, n: i64, spinor: SpinorHilbert) -> u128 {
        self.atoms
            .iter()
            .map(|a| match a.kind {
                AtomKind::LineBundle => self.ambient.h0(a.twist + n),
                AtomKind::Spinor => spinor(a.twist + n),
            })
            .sum()
    }
}

/// `O(-2) + 4*O(-3)`, `2*E0(-1)`; the zero sheaf renders as `0`.
impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for group in self.atoms.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if group.len() > 1 {
                write!(f, "{}*", group.len())?;
            }
            write!(f, "{}", group[0])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(t: i64) -> TwistAtom {
        TwistAtom::line(t)
    }

    fn e(t: i64) -> TwistAtom {
        TwistAtom::spinor(t)
    }

    #[test]
    fn rendering_is_canonical() {
        let b = SheafExpr::on_quadric([o(-3), o(-3), o(-2), o(-3), o(-3)]);
        assert_eq!(b.to_string(), "O(-2) + 4*O(-3)");
        assert_eq!(SheafExpr::repeated(e(-1), 2).to_string(), "2*E0(-1)");
        let n = SheafExpr::on_quadric([e(-1), o(-3), e(-1), o(-2)]);
        assert_eq!(n.to_string(), "O(-2) + O(-3) + 2*E0(-1)");
        assert_eq!(SheafExpr::zero(Ambient::QuadricThreefold).to_string(), "0");
    }

    #[test]
    fn twist_examples() {
        let e2 = SheafExpr::repeated(e(-1), 2);
        assert_eq!(e2.twist(5), SheafExpr::repeated(e(4), 2));
        let o5 = SheafExpr::repeated(o(-2), 5);
        assert_eq!(o5.twist(0), o5);
        let b = SheafExpr::on_quadric([o(-2), o(-3), o(-3), o(-3), o(-3)]);
        assert_eq!(b.twist(3).to_string(), "O(1) + 4*O(0)");
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            SheafExpr::repeated(e(-1), 2).dual(),
            SheafExpr::repeated(e(4), 2)
        );
        assert_eq!(
            SheafExpr::repeated(o(-2), 5).dual(),
            SheafExpr::repeated(o(2), 5)
        );
        for a in -5..5 {
            assert_eq!(
                SheafExpr::on_quadric([e(3 - a)]).dual(),
                SheafExpr::on_quadric([e(a)])
            );
        }
    }

    #[test]
    fn rank_c1_examples() {
        // c1(E0) = -3 is the unique value balancing O(-2) + 4*O(-3) against E0^2(-2)
        let middle = SheafExpr::on_quadric([o(-2), o(-3), o(-3), o(-3), o(-3)]);
        assert_eq!(middle.rank_c1(), (5, -14));
        let c1_e0 = (middle.c1() / 2) - 2 * (-2);
        assert_eq!(c1_e0, -3);
        assert_eq!(SheafExpr::repeated(e(-2), 2).rank_c1(), (4, -14));
        assert_eq!(SheafExpr::zero(Ambient::QuadricThreefold).rank_c1(), (0, 0));
    }

    #[test]
    fn dual_is_determinant_twist_for_spinor() {
        // rank-2 identity E^∨ = E ⊗ det(E)^{-1}
        for a in -6..6 {
            let atom = e(a);
            assert_eq!(atom.dual(), atom.twisted(-atom.c1()));
        }
    }

    #[test]
    fn h0_examples() {
        let middle = SheafExpr::on_quadric([o(-2), o(-3), o(-3), o(-3), o(-3)]);
        let row: Vec<u128> = (0..=6).map(|n| middle.h0(n)).collect();
        assert_eq!(row, [0, 0, 1, 9, 34, 86, 175]);
        // 160 + 115 from the (4,0) kernel and ideal columns
        assert_eq!(SheafExpr::repeated(o(-2), 5).h0(6), 275);
        assert_eq!(SheafExpr::repeated(e(-2), 2).h0(4), 8);
    }

    #[test]
    fn spinor_rejected_off_quadric() {
        let err = SheafExpr::new(Ambient::ProjSpace(4), [o(0), e(1)]).unwrap_err();
        assert!(matches!(err, SheafError::SpinorOffQuadric { .. }));
        let p4 = SheafExpr::new(Ambient::ProjSpace(4), [o(-2), o(-2)]).unwrap();
        assert_eq!(p4.h0(3), 10);
        assert!(matches!(
            p4.direct_sum(&SheafExpr::on_quadric([o(0)])),
            Err(SheafError::AmbientMismatch(..))
        ));
    }

    #[test]
    fn without_removes_one_copy() {
        let x = SheafExpr::on_quadric([o(-2), o(-3), e(-1), e(-1)]);
        let y = x.without(o(-3)).unwrap();
        assert_eq!(y.to_string(), "O(-2) + 2*E0(-1)");
        assert!(y.without(o(-3)).is_none());
        assert_eq!(x.count(e(-1)), 2);
    }

    fn arb_atom() -> impl Strategy<Value = TwistAtom> {
        (any::<bool>(), -20i64..20).prop_map(|(s, t)| if s { e(t) } else { o(t) })
    }

    fn arb_expr() -> impl Strategy<Value = SheafExpr> {
        prop::collection::vec(arb_atom(), 0..8).prop_map(SheafExpr::on_quadric)
    }

    proptest! {
        #[test]
        fn involutions(x in arb_expr(), t in -30i64..30) {
            prop_assert_eq!(x.dual().dual(), x.clone());
            prop_assert_eq!(x.twist(t).twist(-t), x.clone());
            prop_assert_eq!(x.twist(t).dual(), x.dual().twist(-t));
        }

        #[test]
        fn additivity(x in arb_expr(), y in arb_expr(), n in -5i64..15) {
            let s = x.direct_sum(&y).unwrap();
            prop_assert_eq!(s.rank(), x.rank() + y.rank());
            prop_assert_eq!(s.c1(), x.c1() + y.c1());
            prop_assert_eq!(s.h0(n), x.h0(n) + y.h0(n));
        }

        #[test]
        fn order_insensitive(mut atoms in prop::collection::vec(arb_atom(), 0..8)) {
            let x = SheafExpr::on_quadric(atoms.clone());
            atoms.reverse();
            prop_assert_eq!(SheafExpr::on_quadric(atoms), x);
        }
    }
}
