//! Loop identities checked by brute force over elements, and the GF(2)
//! discriminants in `φ` that characterize them.
//!
//! Identity evaluation goes through [`CodeLoop::mul_idx`] and the divisions
//! only, never through `φ` directly, so the loop-level verdicts are an
//! independent check on the discriminant formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::factor::{Arith, FactorSet, MAX_SCAN_DIMENSION};
use crate::loops::{CodeLoop, MAX_SCAN_ORDER};
use crate::report::{scan_tuples, IdentityReport};

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::ALL
                    .iter()
                    .copied()
                    .find(|v| v.name().eq_ignore_ascii_case(s))
                    .ok_or_else(|| Error::UnknownName(s.to_string()))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_enum! {
    /// Loop identities. Variables are `x, y, z`; juxtaposition is the loop
    /// product, `\` and `/` the left and right divisions.
    Identity {
        Lc1 => "LC1",
        Lc2 => "LC2",
        Lc3 => "LC3",
        Rc1 => "RC1",
        Rc2 => "RC2",
        Rc3 => "RC3",
        CLoop => "CLOOP",
        Extra1 => "EXTRA1",
        Extra2 => "EXTRA2",
        Extra3 => "EXTRA3",
        La => "LA",
        Ra => "RA",
        Moufang1 => "MOUFANG1",
        Moufang2 => "MOUFANG2",
        Moufang3 => "MOUFANG3",
        Moufang4 => "MOUFANG4",
        Lb => "LB",
        Rb => "RB",
        Lcc => "LCC",
        Rcc => "RCC",
        Flex => "FLEX",
    }
}

impl Identity {
    pub fn arity(self) -> usize {
        match self {
            Identity::La | Identity::Ra | Identity::Flex => 2,
            _ => 3,
        }
    }

    /// The identity in the usual notation.
    pub fn formula(self) -> &'static str {
        match self {
            Identity::Lc1 => "xx·yz = (x·xy)z",
            Identity::Lc2 => "(x·xy)z = x(x·yz)",
            Identity::Lc3 => "(xx·y)z = x(x·yz)",
            Identity::Rc1 => "yz·xx = y(zx·x)",
            Identity::Rc2 => "(yz·x)x = y(zx·x)",
            Identity::Rc3 => "(yz·x)x = y(z·xx)",
            Identity::CLoop => "y(x·xz) = (yx·x)z",
            Identity::Extra1 => "(xy·z)x = x(y·zx)",
            Identity::Extra2 => "xy·xz = x(yx·z)",
            Identity::Extra3 => "yx·zx = (y·xz)x",
            Identity::La => "x·xy = xx·y",
            Identity::Ra => "yx·x = y·xx",
            Identity::Moufang1 => "(xy)(zx) = x((yz)x)",
            Identity::Moufang2 => "(xy)(zx) = (x(yz))x",
            Identity::Moufang3 => "x(y(xz)) = ((xy)x)z",
            Identity::Moufang4 => "((zx)y)x = z(x(yx))",
            Identity::Lb => "x(y(xz)) = (x(yx))z",
            Identity::Rb => "((zx)y)x = z((xy)x)",
            Identity::Lcc => "z·yx = ((zy)/z)·zx",
            Identity::Rcc => "xy·z = xz·(z\\(yz))",
            Identity::Flex => "x(yx) = (xy)x",
        }
    }

    /// Both sides at `(x, y, z)`; `z` is ignored by the binary identities.
    pub fn sides(self, lp: &CodeLoop, x: usize, y: usize, z: usize) -> (usize, usize) {
        let m = |p, q| lp.mul_idx(p, q);
        match self {
            Identity::Lc1 => (m(m(x, x), m(y, z)), m(m(x, m(x, y)), z)),
            Identity::Lc2 => (m(m(x, m(x, y)), z), m(x, m(x, m(y, z)))),
            Identity::Lc3 => (m(m(m(x, x), y), z), m(x, m(x, m(y, z)))),
            Identity::Rc1 => (m(m(y, z), m(x, x)), m(y, m(m(z, x), x))),
            Identity::Rc2 => (m(m(m(y, z), x), x), m(y, m(m(z, x), x))),
            Identity::Rc3 => (m(m(m(y, z), x), x), m(y, m(z, m(x, x)))),
            Identity::CLoop => (m(y, m(x, m(x, z))), m(m(m(y, x), x), z)),
            Identity::Extra1 => (m(m(m(x, y), z), x), m(x, m(y, m(z, x)))),
            Identity::Extra2 => (m(m(x, y), m(x, z)), m(x, m(m(y, x), z))),
            Identity::Extra3 => (m(m(y, x), m(z, x)), m(m(y, m(x, z)), x)),
            Identity::La => (m(x, m(x, y)), m(m(x, x), y)),
            Identity::Ra => (m(m(y, x), x), m(y, m(x, x))),
            Identity::Moufang1 => (m(m(x, y), m(z, x)), m(x, m(m(y, z), x))),
            Identity::Moufang2 => (m(m(x, y), m(z, x)), m(m(x, m(y, z)), x)),
            Identity::Moufang3 => (m(x, m(y, m(x, z))), m(m(m(x, y), x), z)),
            Identity::Moufang4 => (m(m(m(z, x), y), x), m(z, m(x, m(y, x)))),
            Identity::Lb => (m(x, m(y, m(x, z))), m(m(x, m(y, x)), z)),
            Identity::Rb => (m(m(m(z, x), y), x), m(z, m(m(x, y), x))),
            Identity::Lcc => (m(z, m(y, x)), m(lp.right_div_idx(m(z, y), z), m(z, x))),
            Identity::Rcc => (m(m(x, y), z), m(m(x, z), lp.left_div_idx(z, m(y, z)))),
            Identity::Flex => (m(x, m(y, x)), m(m(x, y), x)),
        }
    }
}

/// Checks `id` on every tuple of loop elements; the witness is `(x,y[,z])`.
pub fn check_identity(lp: &CodeLoop, id: Identity) -> Result<IdentityReport> {
    if id.arity() == 3 && lp.order() > MAX_SCAN_ORDER {
        return Err(Error::OrderTooLarge {
            order: lp.order(),
            limit: MAX_SCAN_ORDER,
        });
    }
    Ok(scan_tuples(id.name(), lp.order(), id.arity(), |t| {
        let z = if t.len() == 3 { t[2] } else { 0 };
        let (l, r) = id.sides(lp, t[0], t[1], z);
        l == r
    }))
}

named_enum! {
    /// GF(2) expressions in `φ` over codewords `u, v, w`. `*_RAW` forms are
    /// the direct expansions of the corresponding loop identity.
    Discriminant {
        A1 => "A1",
        A2 => "A2",
        A3 => "A3",
        B1 => "B1",
        B2 => "B2",
        B3 => "B3",
        DPaper => "D_PAPER",
        DRaw => "D_RAW",
        E1 => "E1",
        E2 => "E2",
        E3 => "E3",
        E1Raw => "E1_RAW",
        E2Raw => "E2_RAW",
        E3Raw => "E3_RAW",
    }
}

impl Discriminant {
    pub fn arity(self) -> usize {
        match self {
            Discriminant::A1 | Discriminant::B1 => 2,
            _ => 3,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Discriminant::A1 => "φ(u,u+v)+φ(u,v)+φ(u,u)",
            Discriminant::A2 => "φ(u,v)+φ(u,u+v)+φ(u,v+w)+φ(u,u+v+w)",
            Discriminant::A3 => "φ(u,u)+φ(u,v+w)+φ(u,u+v+w)",
            Discriminant::B1 => "φ(u,u)+φ(v,u)+φ(v+u,u)",
            Discriminant::B2 => "φ(w,u)+φ(w+u,u)+φ(v+w,u)+φ(v+w+u,u)",
            Discriminant::B3 => "φ(u,u)+φ(v+w,u)+φ(v+w+u,u)",
            Discriminant::DPaper => "φ(v,u)+φ(u,w)+φ(v+u,v)+φ(u,u+w)",
            Discriminant::DRaw => "φ(v,u)+φ(u,w)+φ(v+u,u)+φ(u,u+w)",
            Discriminant::E1 => "φ(u,v)+φ(w,u)+φ(u+v,w)+φ(v+w,u)+φ(v,w+u)+φ(u,v+w)",
            Discriminant::E2 => "φ(u,u)+φ(u,v)+φ(v,u)+φ(u,w)+φ(v+u,w)+φ(u,v+w)+φ(u+v,u+w)",
            Discriminant::E3 => "φ(u,u)+φ(v,u)+φ(u,w)+φ(w,u)+φ(v,u+w)+φ(v+w,u)+φ(v+u,w+u)",
            Discriminant::E1Raw => "φ(u,v)+φ(u+v,w)+φ(u+v+w,u)+φ(w,u)+φ(v,w+u)+φ(u,v+w+u)",
            Discriminant::E2Raw => "φ(u,v)+φ(u,w)+φ(u+v,u+w)+φ(v,u)+φ(v+u,w)+φ(u,v+u+w)",
            Discriminant::E3Raw => "φ(v,u)+φ(w,u)+φ(v+u,w+u)+φ(u,w)+φ(v,u+w)+φ(v+u+w,u)",
        }
    }

    fn eval(self, phi: &FactorSet, u: usize, v: usize, w: usize) -> u8 {
        let p = |a: usize, b: usize| phi.value(a, b);
        match self {
            Discriminant::A1 => p(u, u ^ v) ^ p(u, v) ^ p(u, u),
            Discriminant::A2 => p(u, v) ^ p(u, u ^ v) ^ p(u, v ^ w) ^ p(u, u ^ v ^ w),
            Discriminant::A3 => p(u, u) ^ p(u, v ^ w) ^ p(u, u ^ v ^ w),
            // B1(u,w) with the second argument in the v slot
            Discriminant::B1 => p(u, u) ^ p(v, u) ^ p(v ^ u, u),
            Discriminant::B2 => p(w, u) ^ p(w ^ u, u) ^ p(v ^ w, u) ^ p(v ^ w ^ u, u),
            Discriminant::B3 => p(u, u) ^ p(v ^ w, u) ^ p(v ^ w ^ u, u),
            Discriminant::DPaper => p(v, u) ^ p(u, w) ^ p(v ^ u, v) ^ p(u, u ^ w),
            Discriminant::DRaw => p(v, u) ^ p(u, w) ^ p(v ^ u, u) ^ p(u, u ^ w),
            Discriminant::E1 => {
                p(u, v) ^ p(w, u) ^ p(u ^ v, w) ^ p(v ^ w, u) ^ p(v, w ^ u) ^ p(u, v ^ w)
            }
            Discriminant::E2 => {
                p(u, u) ^ p(u, v) ^ p(v, u) ^ p(u, w) ^ p(v ^ u, w) ^ p(u, v ^ w) ^ p(u ^ v, u ^ w)
            }
            Discriminant::E3 => {
                p(u, u) ^ p(v, u) ^ p(u, w) ^ p(w, u) ^ p(v, u ^ w) ^ p(v ^ w, u) ^ p(v ^ u, w ^ u)
            }
            Discriminant::E1Raw => {
                p(u, v) ^ p(u ^ v, w) ^ p(u ^ v ^ w, u) ^ p(w, u) ^ p(v, w ^ u) ^ p(u, v ^ w ^ u)
            }
            Discriminant::E2Raw => {
                p(u, v) ^ p(u, w) ^ p(u ^ v, u ^ w) ^ p(v, u) ^ p(v ^ u, w) ^ p(u, v ^ u ^ w)
            }
            Discriminant::E3Raw => {
                p(v, u) ^ p(w, u) ^ p(v ^ u, w ^ u) ^ p(u, w) ^ p(v, u ^ w) ^ p(v ^ u ^ w, u)
            }
        }
    }

    /// The loop identity whose direct expansion this is, for the raw and
    /// unconditional forms.
    pub fn loop_identity(self) -> Option<Identity> {
        match self {
            Discriminant::A1 => Some(Identity::Lc1),
            Discriminant::A2 => Some(Identity::Lc2),
            Discriminant::A3 => Some(Identity::Lc3),
            Discriminant::B1 => Some(Identity::Rc1),
            Discriminant::B2 => Some(Identity::Rc2),
            Discriminant::B3 => Some(Identity::Rc3),
            Discriminant::DRaw => Some(Identity::CLoop),
            Discriminant::E1Raw => Some(Identity::Extra1),
            Discriminant::E2Raw => Some(Identity::Extra2),
            Discriminant::E3Raw => Some(Identity::Extra3),
            _ => None,
        }
    }
}

fn check_index(phi: &FactorSet, i: usize) -> Result<()> {
    if i >= phi.size() {
        return Err(Error::IndexOutOfRange {
            index: i,
            count: phi.size(),
        });
    }
    Ok(())
}

/// Value of a discriminant at codeword indices `u, v, w`. Binary names
/// ignore `w`.
pub fn discriminant_value(
    phi: &FactorSet,
    name: Discriminant,
    u: usize,
    v: usize,
    w: usize,
) -> Result<u8> {
    check_index(phi, u)?;
    check_index(phi, v)?;
    if name.arity() == 3 {
        check_index(phi, w)?;
    }
    Ok(name.eval(phi, u, v, if name.arity() == 3 { w } else { 0 }))
}

/// Holds iff the discriminant vanishes on every tuple of codewords.
pub fn discriminant_holds(phi: &FactorSet, name: Discriminant) -> Result<IdentityReport> {
    if name.arity() == 3 && phi.dimension() > MAX_SCAN_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: phi.dimension(),
            limit: MAX_SCAN_DIMENSION,
        });
    }
    Ok(scan_tuples(name.name(), phi.size(), name.arity(), |t| {
        let w = if t.len() == 3 { t[2] } else { 0 };
        name.eval(phi, t[0], t[1], w) == 0
    }))
}

named_enum! {
    /// The six congruences that generalize the factor-set axioms.
    Congruence {
        Item1 => "CONG1",
        Item2 => "CONG2",
        Item3 => "CONG3",
        Item4 => "CONG4",
        Item5 => "CONG5",
        Item6 => "CONG6",
    }
}

impl Congruence {
    pub fn item(n: usize) -> Result<Self> {
        Self::ALL
            .get(n.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::UnknownName(format!("congruence item {n}")))
    }

    pub fn arity(self) -> usize {
        match self {
            Congruence::Item6 => 2,
            _ => 3,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Congruence::Item1 => "φ(u,v)+φ(w,u)+φ(u+v,w)+φ(v,w+u) ≡ (u·(v+w))/2",
            Congruence::Item2 => "φ(u+v,u+w) ≡ ||u||/4+(u·v)/2+φ(u,w)+φ(v+u,w)+φ(u,v+w)",
            Congruence::Item3 => "φ(u+v,u+w) ≡ ||u||/4+(u·w)/2+φ(v,u)+φ(v,u+w)+φ(v+w,u)",
            Congruence::Item4 => "φ(v,u)+φ(w,u)+φ(u+v,w)+φ(v,w+u) ≡ (u·v+u·(v+w))/2",
            Congruence::Item5 => "φ(w,u)+φ(v,w)+φ(u,v+w)+φ(v,w+u) ≡ c(u,v,w)+(u·(v+w))/2",
            Congruence::Item6 => "φ(u+v,u) = φ(u,u)+φ(v,u) and φ(u,u+v) = φ(u,u)+φ(u,v)",
        }
    }
}

/// Checks one of the six generalized congruences over all codeword tuples.
pub fn check_congruence(phi: &FactorSet, item: Congruence) -> Result<IdentityReport> {
    if phi.dimension() > MAX_SCAN_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: phi.dimension(),
            limit: MAX_SCAN_DIMENSION,
        });
    }
    if !phi.is_factor_set()? {
        return Err(Error::NotAFactorSet);
    }
    let ar = Arith::new(phi.code());
    let p = |a: usize, b: usize| phi.value(a, b);
    // halves of sums of even counts, mod 2
    let half = |n: u32| ((n / 2) & 1) as u8;
    Ok(scan_tuples(item.name(), phi.size(), item.arity(), |t| {
        let (u, v) = (t[0], t[1]);
        let w = if t.len() == 3 { t[2] } else { 0 };
        match item {
            Congruence::Item1 => {
                p(u, v) ^ p(w, u) ^ p(u ^ v, w) ^ p(v, w ^ u) == ar.half_dot(u, v ^ w)
            }
            Congruence::Item2 => {
                p(u ^ v, u ^ w)
                    == ar.quarter_norm(u) ^ ar.half_dot(u, v) ^ p(u, w) ^ p(v ^ u, w) ^ p(u, v ^ w)
            }
            Congruence::Item3 => {
                p(u ^ v, u ^ w)
                    == ar.quarter_norm(u) ^ ar.half_dot(u, w) ^ p(v, u) ^ p(v, u ^ w) ^ p(v ^ w, u)
            }
            Congruence::Item4 => {
                p(v, u) ^ p(w, u) ^ p(u ^ v, w) ^ p(v, w ^ u)
                    == half(ar.dot(u, v) + ar.dot(u, v ^ w))
            }
            Congruence::Item5 => {
                p(w, u) ^ p(v, w) ^ p(u, v ^ w) ^ p(v, w ^ u)
                    == ar.triple_parity(u, v, w) ^ ar.half_dot(u, v ^ w)
            }
            Congruence::Item6 => {
                p(u ^ v, u) == p(u, u) ^ p(v, u) && p(u, u ^ v) == p(u, u) ^ p(u, v)
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{BitWord, LinearCode};
    use crate::factor::{random_normalized_phi, solve_factor_set};
    use std::sync::Arc;

    fn code(rows: &[&str]) -> Arc<LinearCode> {
        let words: Vec<_> = rows.iter().map(|s| BitWord::parse(s).unwrap()).collect();
        Arc::new(LinearCode::span(&words).unwrap())
    }

    fn hamming_phi() -> FactorSet {
        solve_factor_set(code(&["11110000", "00111100", "00001111", "01010101"])).unwrap()
    }

    fn non_wl_two() -> FactorSet {
        FactorSet::from_fn(code(&["11110000", "00111100"]), |u, v| (u, v) == (1, 2)).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), *id);
        }
        for d in Discriminant::ALL {
            assert_eq!(d.name().parse::<Discriminant>().unwrap(), *d);
        }
        assert_eq!("d_raw".parse::<Discriminant>().unwrap(), Discriminant::DRaw);
        assert!("LC9".parse::<Identity>().is_err());
        assert_eq!(Congruence::item(6).unwrap(), Congruence::Item6);
        assert!(Congruence::item(0).is_err());
        assert!(Congruence::item(7).is_err());
    }

    #[test]
    fn group_satisfies_everything() {
        let phi = solve_factor_set(code(&["1111"])).unwrap();
        let lp = CodeLoop::new(Arc::new(phi));
        for id in Identity::ALL {
            let r = check_identity(&lp, *id).unwrap();
            assert!(r.holds, "{r}");
            assert_eq!(r.scanned, 4u64.pow(id.arity() as u32));
        }
    }

    #[test]
    fn hamming_loop_is_moufang() {
        let lp = CodeLoop::new(Arc::new(hamming_phi()));
        for id in [
            Identity::Moufang1,
            Identity::Moufang2,
            Identity::Moufang3,
            Identity::Moufang4,
        ] {
            let r = check_identity(&lp, id).unwrap();
            assert!(r.holds);
            assert_eq!(r.scanned, 32768);
        }
    }

    #[test]
    fn non_wl_table_breaks_lc1() {
        let phi = non_wl_two();
        let lp = CodeLoop::new(Arc::new(phi.clone()));
        let r = check_identity(&lp, Identity::Lc1).unwrap();
        assert!(!r.holds);
        let t = r.counterexample.unwrap();
        let (l, rr) = Identity::Lc1.sides(&lp, t[0], t[1], t[2]);
        assert_ne!(l, rr);

        assert_eq!(
            discriminant_value(&phi, Discriminant::A1, 1, 2, 0).unwrap(),
            1
        );
        let r = discriminant_holds(&phi, Discriminant::A1).unwrap();
        assert!(!r.holds);
        // first nonzero pair in index order
        let first = (0..4)
            .flat_map(|u| (0..4).map(move |v| (u, v)))
            .find(|&(u, v)| Discriminant::A1.eval(&phi, u, v, 0) == 1)
            .unwrap();
        assert_eq!(r.counterexample, Some(vec![first.0, first.1]));
    }

    #[test]
    fn discriminant_values() {
        for seed in 0..4 {
            let phi = random_normalized_phi(code(&["11110000", "00111100"]), seed).unwrap();
            for u in 0..4 {
                assert_eq!(
                    discriminant_value(&phi, Discriminant::A1, u, 0, 99).unwrap(),
                    0
                );
            }
        }
        let phi = hamming_phi();
        for u in 0..16 {
            for w in 0..16 {
                let d = discriminant_value(&phi, Discriminant::DPaper, u, 0, w).unwrap();
                assert_eq!(d, phi.value(u, u));
                let weight = phi.code().word(u).weight();
                assert_eq!(d == 1, weight % 8 == 4);
            }
        }
        assert!(matches!(
            discriminant_value(&phi, Discriminant::E1, 0, 0, 16),
            Err(Error::IndexOutOfRange { index: 16, .. })
        ));
    }

    #[test]
    fn erratum_probe() {
        let phi = hamming_phi();
        let raw = discriminant_holds(&phi, Discriminant::DRaw).unwrap();
        assert!(raw.holds);
        assert_eq!(raw.scanned, 4096);
        let printed = discriminant_holds(&phi, Discriminant::DPaper).unwrap();
        assert!(!printed.holds);
        let t = printed.counterexample.unwrap();
        assert_eq!(
            discriminant_value(&phi, Discriminant::DPaper, t[0], t[1], t[2]).unwrap(),
            1
        );
    }

    #[test]
    fn factor_set_discriminants_vanish() {
        let phi = hamming_phi();
        for d in Discriminant::ALL {
            let r = discriminant_holds(&phi, *d).unwrap();
            assert_eq!(r.holds, *d != Discriminant::DPaper, "{r}");
        }
    }

    #[test]
    fn congruences_hold_on_factor_sets() {
        for c in [
            code(&["1111"]),
            code(&["11110000", "00111100"]),
            code(&["11110000", "00111100", "00001111", "01010101"]),
        ] {
            let phi = solve_factor_set(c).unwrap();
            for item in Congruence::ALL {
                let r = check_congruence(&phi, *item).unwrap();
                assert!(r.holds, "{r}");
            }
        }
        let phi = random_normalized_phi(code(&["11110000", "00111100"]), 0).unwrap();
        if !phi.is_factor_set().unwrap() {
            assert_eq!(
                check_congruence(&phi, Congruence::Item1),
                Err(Error::NotAFactorSet)
            );
        }
    }

    #[test]
    fn scan_limits() {
        let rows: Vec<BitWord> = (0..6)
            .map(|i| BitWord::from_bits(0b1111 << (4 * i), 24).unwrap())
            .collect();
        let c = Arc::new(LinearCode::span(&rows).unwrap());
        let phi = FactorSet::from_fn(c, |_, _| false).unwrap();
        assert!(discriminant_holds(&phi, Discriminant::A1).is_ok());
        assert!(matches!(
            discriminant_holds(&phi, Discriminant::A2),
            Err(Error::DimensionTooLarge { .. })
        ));
        assert!(matches!(
            check_congruence(&phi, Congruence::Item6),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
