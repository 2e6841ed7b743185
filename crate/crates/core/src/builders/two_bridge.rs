use super::{conj_relation, names_to_presentation, relation};
use crate::error::{Error, Result};
use crate::group::{Gen, Presentation, Word};

/// Two-bridge knot `C(2m0, -2m1, ..., -2mk)` with `k` odd and all `m_i != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoBridgeSpec {
    pub m: Vec<i64>,
}

impl TwoBridgeSpec {
    pub fn new(m: Vec<i64>) -> Result<Self> {
        let s = TwoBridgeSpec { m };
        s.check()?;
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.m.len().saturating_sub(1)
    }

    fn check(&self) -> Result<()> {
        if self.m.len() < 2 || !self.m.len().is_multiple_of(2) {
            return Err(Error::SpecInvariantViolation(format!(
                "k must be odd, got {} entries",
                self.m.len()
            )));
        }
        if self.m.contains(&0) {
            return Err(Error::SpecInvariantViolation(
                "two-bridge entries must be nonzero".into(),
            ));
        }
        Ok(())
    }
}

/// Presentation with generators `b, a, x_-1, ..., x_2k` and relators
/// `r_-1, ..., r_2k, r_2k+2`.
#[derive(Clone, Debug)]
pub struct TwoBridgeKnot {
    pub spec: TwoBridgeSpec,
    pub presentation: Presentation,
}

impl TwoBridgeKnot {
    pub fn b(&self) -> Gen {
        Gen(0)
    }

    pub fn a(&self) -> Gen {
        Gen(1)
    }

    /// Generator `x_i` for `-1 <= i <= 2k`.
    pub fn x(&self, i: i64) -> Gen {
        assert!(i >= -1 && i <= 2 * self.spec.k() as i64);
        Gen((i + 3) as usize)
    }

    /// Word for `x_i`, including `x_-4 = b`, `x_-3 = a`, `x_-2 = a^-1`.
    pub fn x_word(&self, i: i64) -> Word {
        match i {
            -4 => Word::gen(self.b()),
            -3 => Word::gen(self.a()),
            -2 => Word::gen(self.a()).inverse(),
            _ => Word::gen(self.x(i)),
        }
    }

    /// `x_{2i-3}^s x_{2i-4}^s` with `s = (-1)^i`.
    pub fn twist_word(&self, i: i64) -> Word {
        let u = self.x_word(2 * i - 3).mul(&self.x_word(2 * i - 4));
        if i % 2 == 0 {
            u
        } else {
            self.x_word(2 * i - 3)
                .inverse()
                .mul(&self.x_word(2 * i - 4).inverse())
        }
    }

    /// Position of `r_j` in the relator list (`-1 <= j <= 2k`, or `2k+2`).
    pub fn relator_index(&self, j: i64) -> usize {
        let k = self.spec.k() as i64;
        if j == 2 * k + 2 {
            return (2 * k + 2) as usize;
        }
        assert!(j >= -1 && j <= 2 * k);
        (j + 1) as usize
    }
}

pub fn build_two_bridge(spec: &TwoBridgeSpec) -> Result<TwoBridgeKnot> {
    spec.check()?;
    let k = spec.k() as i64;
    let mut names = vec!["b".to_string(), "a".to_string()];
    names.extend((-1..=2 * k).map(|i| format!("x_{i}")));
    let knot = TwoBridgeKnot {
        spec: spec.clone(),
        presentation: Presentation::placeholder(),
    };
    let mut relators = Vec::new();
    for i in 0..=k {
        let p = knot.twist_word(i);
        let m = spec.m[i as usize];
        relators.push(conj_relation(
            knot.x(2 * i - 1),
            &p,
            m,
            &knot.x_word(2 * i - 3),
        ));
        relators.push(conj_relation(knot.x(2 * i), &p, m, &knot.x_word(2 * i - 4)));
    }
    relators.push(relation(&knot.x_word(2 * k), &Word::gen(knot.b())));
    let presentation = names_to_presentation(names, relators, Gen(0))?;
    Ok(TwoBridgeKnot {
        presentation,
        ..knot
    })
}
