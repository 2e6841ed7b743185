use super::{names_to_presentation, relation};
use crate::error::Result;
use crate::group::{Gen, Presentation, Word};

/// The knot `K_n = M(0; (3n+2, -2n-1), (3, 1), (3, 1))`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Case3Spec {
    pub n: i64,
}

impl Case3Spec {
    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// Exponent of `W` in `y`: `n/2` for even `n`, `(n+1)/2` for odd `n`.
    pub fn power(&self) -> i64 {
        if self.is_even() {
            self.n / 2
        } else {
            (self.n + 1) / 2
        }
    }
}

/// One-relator presentation `<x, z | r>` with `y` expanded into `x, z` letters.
#[derive(Clone, Debug)]
pub struct Case3Knot {
    pub spec: Case3Spec,
    pub presentation: Presentation,
}

impl Case3Knot {
    pub fn x(&self) -> Gen {
        Gen(0)
    }

    pub fn z(&self) -> Gen {
        Gen(1)
    }

    /// Word whose image is `W`.
    pub fn w_word(&self) -> Word {
        w_word(self.spec)
    }

    pub fn y_word(&self) -> Word {
        y_word(self.spec)
    }
}

fn w_word(spec: Case3Spec) -> Word {
    let x = Word::gen(Gen(0));
    let z = Word::gen(Gen(1));
    let (xi, zi) = (x.inverse(), z.inverse());
    if spec.is_even() {
        let c = Word::commutator(&x, &z).mul(&Word::commutator(&xi, &zi));
        c.conj_by(&xi)
    } else {
        Word::commutator(&z, &xi).mul(&Word::commutator(&zi, &x))
    }
}

fn y_word(spec: Case3Spec) -> Word {
    w_word(spec).pow(spec.power())
}

pub fn build_case3(spec: Case3Spec) -> Result<Case3Knot> {
    let x = Word::gen(Gen(0));
    let z = Word::gen(Gen(1));
    let (xi, zi) = (x.inverse(), z.inverse());
    let y = y_word(spec);
    let yi = y.inverse();
    let zxz = x.conj_by(&z);
    let r = if spec.is_even() {
        let lhs = Word::commutator(&xi, &zi)
            .mul(&x)
            .mul(&y)
            .mul(&x)
            .mul(&zxz)
            .mul(&yi);
        let rhs = y.mul(&z).mul(&x).mul(&zxz).mul(&yi).mul(&zxz.inverse());
        relation(&lhs, &rhs)
    } else {
        let lhs = x.mul(&z).mul(&x).mul(&zi).mul(&Word::commutator(&y, &zxz));
        let rhs = z.mul(&xi).mul(&Word::commutator(&zxz, &y)).mul(&x);
        relation(&lhs, &rhs)
    };
    let presentation = names_to_presentation(vec!["x".into(), "z".into()], vec![r], Gen(0))?;
    Ok(Case3Knot { spec, presentation })
}
