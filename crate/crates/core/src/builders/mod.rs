//! Presentations of the knot groups in the three tunnel number one
//! Montesinos families, continued fraction utilities and genus formulas.

mod case2;
mod case3;
mod cf;
mod two_bridge;

pub use case2::{build_case2, normalize_case2, Case2Knot, Case2Spec, Tangle};
pub use case3::{build_case3, Case3Knot, Case3Spec};
pub use cf::{cf_to_rational, even_continued_fraction, EvenCf};
pub use two_bridge::{build_two_bridge, TwoBridgeKnot, TwoBridgeSpec};

use crate::error::{Error, Result};
use crate::group::{Gen, Presentation, Word};

/// Family parameters accepted by [`genus`].
#[derive(Clone, PartialEq, Debug)]
pub enum FamilySpec {
    TwoBridge(TwoBridgeSpec),
    Case2(Case2Spec),
    Case3(Case3Spec),
}

/// Genus of the knot. Two-bridge: `(k+1)/2`. Case (2): `2g = k+l+2` if
/// `m0 != 0`, else `k+l`. Not available for case (3).
pub fn genus(spec: &FamilySpec) -> Result<u32> {
    match spec {
        FamilySpec::TwoBridge(s) => Ok((s.k() as u32).div_ceil(2)),
        FamilySpec::Case2(s) => {
            let twice = if s.m[0] != 0 {
                s.k() + s.l() + 2
            } else {
                s.k() + s.l()
            };
            Ok(twice as u32 / 2)
        }
        FamilySpec::Case3(_) => Err(Error::Unsupported("genus of the case (3) family".into())),
    }
}

/// Appends relator `lhs * rhs^-1` encoding the relation `lhs = rhs`.
pub(crate) fn relation(lhs: &Word, rhs: &Word) -> Word {
    lhs.mul(&rhs.inverse())
}

/// `x_new = P^e x_old P^-e` encoded as `x_new P^e x_old^-1 P^-e`.
pub(crate) fn conj_relation(x_new: Gen, p: &Word, e: i64, x_old: &Word) -> Word {
    relation(&Word::gen(x_new), &x_old.conj_by(&p.pow(e)))
}

pub(crate) fn names_to_presentation(
    names: Vec<String>,
    relators: Vec<Word>,
    meridian: Gen,
) -> Result<Presentation> {
    Presentation::new(names, relators, meridian)
}
