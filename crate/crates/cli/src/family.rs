use serde::{Deserialize, Serialize};
use tapkit_core::builders::{
    build_case2, build_case3, build_two_bridge, genus, Case2Knot, Case2Spec, Case3Knot, Case3Spec,
    FamilySpec, TwoBridgeKnot, TwoBridgeSpec,
};
use tapkit_core::group::Presentation;
use tapkit_core::Result;

/// Family parameters as stored in presentation documents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Family {
    TwoBridge {
        m: Vec<i64>,
    },
    Case2 {
        beta1: i64,
        m: Vec<i64>,
        n: Vec<i64>,
    },
    Case3 {
        n: i64,
    },
}

pub enum Knot {
    TwoBridge(TwoBridgeKnot),
    Case2(Case2Knot),
    Case3(Case3Knot),
}

impl Family {
    pub fn spec(&self) -> Result<FamilySpec> {
        Ok(match self {
            Family::TwoBridge { m } => FamilySpec::TwoBridge(TwoBridgeSpec::new(m.clone())?),
            Family::Case2 { beta1, m, n } => {
                FamilySpec::Case2(Case2Spec::new(*beta1, m.clone(), n.clone())?)
            }
            Family::Case3 { n } => FamilySpec::Case3(Case3Spec { n: *n }),
        })
    }

    pub fn build(&self) -> Result<Knot> {
        Ok(match self.spec()? {
            FamilySpec::TwoBridge(s) => Knot::TwoBridge(build_two_bridge(&s)?),
            FamilySpec::Case2(s) => Knot::Case2(build_case2(&s)?),
            FamilySpec::Case3(s) => Knot::Case3(build_case3(s)?),
        })
    }

    pub fn genus(&self) -> Option<u32> {
        self.spec().ok().and_then(|s| genus(&s).ok())
    }
}

impl Knot {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Knot::TwoBridge(k) => &k.presentation,
            Knot::Case2(k) => &k.presentation,
            Knot::Case3(k) => &k.presentation,
        }
    }
}
