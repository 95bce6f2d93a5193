//! Closed-form dimension counts of global sections on `P^n` and on the
//! smooth quadric threefold `Q ⊂ P^4`.
//!
//! All counts are exact `u128`. Arithmetic is checked; an overflow panics
//! instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: u32, k: i64) -> u128 {
    if k < 0 || k > n as i64 {
        return 0;
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial coefficient overflows u128")
            / (i as u128 + 1);
    }
    acc
}

/// `h^0(O_{P^dim}(k))`: the number of degree-`k` forms in `dim + 1` variables.
pub fn h0_proj(dim: u32, k: i64) -> u128 {
    assert!(dim >= 1, "projective space of dimension {dim}");
    if k < 0 {
        return 0;
    }
    let top = u32::try_from(dim as i64 + k).expect("twist out of range");
    binom(top, dim as i64)
}

/// `h^0(O_Q(k))` for the quadric threefold: quintary forms of degree `k`
/// modulo multiples of the quadric equation.
pub fn h0_quadric3(k: i64) -> u128 {
    if k < 0 {
        return 0;
    }
    h0_proj(4, k) - h0_proj(4, k - 2)
}

/// `h^0(E0(k))` for the rank-2 spinor-type ACM bundle `E0` on `Q`:
/// `(2/3)(k-1)k(k+1)` for `k >= 2`, zero below.
///
/// The cubic has roots `-1, 0, 1`; vanishing for all `k <= 1` extends the
/// tabulated data (zero at `k = 1`) by ACM-ness.
pub fn h0_spinor(k: i64) -> u128 {
    if k <= 1 {
        return 0;
    }
    let k = k as i128;
    let triple = (k - 1)
        .checked_mul(k)
        .and_then(|p| p.checked_mul(k + 1))
        .and_then(|p| p.checked_mul(2))
        .expect("spinor Hilbert function overflows i128");
    (triple / 3) as u128
}

/// The ambient variety a sheaf or curve lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    /// `P^n`, `n >= 1`.
    ProjSpace(u32),
    /// Smooth quadric hypersurface in `P^4`.
    QuadricThreefold,
}

impl Ambient {
    pub fn dim(&self) -> u32 {
        match *self {
            Ambient::ProjSpace(n) => n,
            Ambient::QuadricThreefold => 3,
        }
    }

    /// `h^0(O_X(k))`.
    pub fn h0(&self, k: i64) -> u128 {
        match *self {
            Ambient::ProjSpace(n) => h0_proj(n, k),
            Ambient::QuadricThreefold => h0_quadric3(k),
        }
    }

    /// `h^i(O_X(k))`. Only `i = 0` and `i = dim` can be nonzero; the top
    /// cohomology comes from Serre duality with `ω = O(-n-1)` on `P^n` and
    /// `ω = O(-3)` on `Q`.
    pub fn h(&self, i: u32, k: i64) -> u128 {
        let top = self.dim();
        if i == 0 {
            self.h0(k)
        } else if i == top {
            match *self {
                Ambient::ProjSpace(n) => h0_proj(n, -k - n as i64 - 1),
                Ambient::QuadricThreefold => h0_quadric3(-k - 3),
            }
        } else {
            0
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::ProjSpace(n) => write!(f, "P{n}"),
            Ambient::QuadricThreefold => f.write_str("Q"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    LineBundle,
    Spinor,
}

/// `O(twist)` or `E0(twist)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistAtom {
    pub kind: AtomKind,
    pub twist: i64,
}

impl TwistAtom {
    pub fn line(twist: i64) -> Self {
        TwistAtom {
            kind: AtomKind::LineBundle,
            twist,
        }
    }

    pub fn spinor(twist: i64) -> Self {
        TwistAtom {
            kind: AtomKind::Spinor,
            twist,
        }
    }

    pub fn rank(&self) -> u64 {
        match self.kind {
            AtomKind::LineBundle => 1,
            AtomKind::Spinor => 2,
        }
    }

    /// First Chern number in hyperplane units; `c1(E0) = -3`.
    pub fn c1(&self) -> i64 {
        match self.kind {
            AtomKind::LineBundle => self.twist,
            AtomKind::Spinor => 2 * self.twist - 3,
        }
    }

    pub fn twisted(self, t: i64) -> Self {
        TwistAtom {
            twist: self.twist + t,
            ..self
        }
    }

    /// `O(a)^∨ = O(-a)`, `E0(a)^∨ = E0(3 - a)`.
    pub fn dual(self) -> Self {
        match self.kind {
            AtomKind::LineBundle => TwistAtom::line(-self.twist),
            AtomKind::Spinor => TwistAtom::spinor(3 - self.twist),
        }
    }
}

/// Line bundles before spinor atoms, then higher twists first.
impl Ord for TwistAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |k: AtomKind| match k {
            AtomKind::LineBundle => 0,
            AtomKind::Spinor => 1,
        };
        rank(self.kind)
            .cmp(&rank(other.kind))
            .then(other.twist.cmp(&self.twist))
    }
}

impl PartialOrd for TwistAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TwistAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::LineBundle => write!(f, "O({})", self.twist),
            AtomKind::Spinor => write!(f, "E0({})", self.twist),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force count of exponent vectors of length `vars` summing to `k`.
    fn monomials(vars: u32, k: i64) -> u128 {
        fn go(vars: u32, k: i64) -> u128 {
            if vars == 1 {
                return 1;
            }
            (0..=k).map(|e| go(vars - 1, k - e)).sum()
        }
        if k < 0 {
            0
        } else {
            go(vars, k)
        }
    }

    /// Degree-`k` monomials in five variables with `x0` exponent at most one:
    /// a basis of forms modulo a quadric with leading term `x0^2`.
    fn quadric_normal_monomials(k: i64) -> u128 {
        if k < 0 {
            return 0;
        }
        let mut count = 0;
        for e0 in 0..=1.min(k) {
            count += monomials(4, k - e0);
        }
        count
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(8, 4), 70);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(6, -1), 0);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn binom_pascal_up_to_64() {
        for n in 1..=64u32 {
            for k in 0..=n as i64 {
                assert_eq!(
                    binom(n, k),
                    binom(n - 1, k - 1) + binom(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn proj_examples() {
        assert_eq!(h0_proj(4, 2), 15);
        assert_eq!(h0_proj(3, 1), 4);
        assert_eq!(h0_proj(4, 0), 1);
        assert_eq!(h0_proj(2, -1), 0);
        let p4: Vec<u128> = (0..=4).map(|k| h0_proj(4, k)).collect();
        assert_eq!(p4, [1, 5, 15, 35, 70]);
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(h0_quadric3(2), 14);
        assert_eq!(h0_quadric3(6), 140);
        assert_eq!(h0_quadric3(-1), 0);
        let q: Vec<u128> = (0..=6).map(h0_quadric3).collect();
        assert_eq!(q, [1, 5, 14, 30, 55, 91, 140]);
    }

    #[test]
    fn proj_matches_monomial_count() {
        for dim in 1..=5 {
            for k in -2..=10 {
                assert_eq!(h0_proj(dim, k), monomials(dim + 1, k), "dim {dim} k {k}");
            }
        }
    }

    #[test]
    fn quadric_matches_monomial_counts() {
        for k in 0..=10 {
            assert_eq!(h0_quadric3(k), monomials(5, k) - monomials(5, k - 2));
            assert_eq!(h0_quadric3(k), quadric_normal_monomials(k));
        }
    }

    // Kernel columns read off the E-type tables, halved because E = E0^2(t):
    // E0^2(-2) at n = 3..6 -> 0, 8, 32, 80; E0^2(-1) at n = 2..6 -> 0, 8, 32, 80, 160.
    #[test]
    fn spinor_matches_tabulated_kernels() {
        let from_p94 = [(3, 0u128), (4, 8), (5, 32), (6, 80)];
        for (n, v) in from_p94 {
            assert_eq!(2 * h0_spinor(n - 2), v, "E0^2(-2) at n = {n}");
        }
        let from_etexists = [(2, 0u128), (3, 8), (4, 32), (5, 80), (6, 160)];
        for (n, v) in from_etexists {
            assert_eq!(2 * h0_spinor(n - 1), v, "E0^2(-1) at n = {n}");
        }
        assert_eq!(h0_spinor(2), 4);
        assert_eq!(h0_spinor(5), 80);
        assert_eq!(h0_spinor(1), 0);
        for k in -20..=1 {
            assert_eq!(h0_spinor(k), 0);
        }
    }

    #[test]
    fn spinor_leading_coefficient() {
        // third finite difference of a cubic a k^3 + ... is 6a; a = rank * deg Q / 3! = 2/3
        let d3 = |k: i64| {
            h0_spinor(k + 3) as i128 - 3 * h0_spinor(k + 2) as i128 + 3 * h0_spinor(k + 1) as i128
                - h0_spinor(k) as i128
        };
        for k in 2..20 {
            assert_eq!(d3(k), 4);
        }
    }

    #[test]
    fn top_cohomology_of_ambients() {
        let q = Ambient::QuadricThreefold;
        assert_eq!(q.h(3, -3), 1);
        assert_eq!(q.h(3, -4), 5);
        assert_eq!(q.h(3, -2), 0);
        assert_eq!(q.h(1, -5), 0);
        let p2 = Ambient::ProjSpace(2);
        assert_eq!(p2.h(2, -3), 1);
        assert_eq!(p2.h(2, -4), 3);
        assert_eq!(Ambient::ProjSpace(4).h(3, -10), 0);
        assert_eq!(Ambient::ProjSpace(3).h(3, -5), 4);
    }

    #[test]
    fn atom_order_and_dual() {
        let mut atoms = [
            TwistAtom::spinor(-1),
            TwistAtom::line(-3),
            TwistAtom::line(-2),
            TwistAtom::spinor(0),
        ];
        atoms.sort();
        let shown: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["O(-2)", "O(-3)", "E0(0)", "E0(-1)"]);
        assert_eq!(TwistAtom::spinor(-1).dual(), TwistAtom::spinor(4));
        assert_eq!(TwistAtom::spinor(-2).c1(), -7);
    }

    proptest! {
        #[test]
        fn hilbert_functions_monotone(k in 0i64..200) {
            prop_assert!(h0_quadric3(k + 1) >= h0_quadric3(k));
            prop_assert!(h0_spinor(k + 1) >= h0_spinor(k));
            prop_assert!(h0_proj(4, k + 1) >= h0_proj(4, k));
        }

        #[test]
        fn spinor_formula_is_exact(k in 2i64..10_000) {
            let k128 = k as i128;
            prop_assert_eq!(3 * h0_spinor(k) as i128, 2 * (k128 - 1) * k128 * (k128 + 1));
        }
    }
}
