use super::{conj_relation, even_continued_fraction, names_to_presentation, relation};
use crate::error::{Error, Result};
use crate::group::{Gen, Presentation, Word};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

/// Case (2) knot `M(0; (2, beta1), beta2/alpha2, beta3/alpha3)` with
/// `beta1 = ±1`, `beta2/alpha2 = [2m0; 2m1, ..., 2mk]` and
/// `beta3/alpha3 = [0; 2n1, ..., 2nl]`, `k` and `l` even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Case2Spec {
    pub beta1_sign: i64,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

impl Case2Spec {
    pub fn new(beta1_sign: i64, m: Vec<i64>, n: Vec<i64>) -> Result<Self> {
        let s = Case2Spec { beta1_sign, m, n };
        s.check()?;
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.m.len().saturating_sub(1)
    }

    pub fn l(&self) -> usize {
        self.n.len()
    }

    fn check(&self) -> Result<()> {
        if self.beta1_sign != 1 && self.beta1_sign != -1 {
            return Err(Error::SpecInvariantViolation(
                "beta1 sign must be +1 or -1".into(),
            ));
        }
        if self.m.is_empty() || !self.k().is_multiple_of(2) || self.k() == 0 {
            return Err(Error::SpecInvariantViolation(format!(
                "k must be even and positive, got m of length {}",
                self.m.len()
            )));
        }
        if !self.l().is_multiple_of(2) || self.l() == 0 {
            return Err(Error::SpecInvariantViolation(format!(
                "l must be even and positive, got n of length {}",
                self.n.len()
            )));
        }
        if self.m[1..].contains(&0) || self.n.contains(&0) {
            return Err(Error::SpecInvariantViolation(
                "m1..mk and n1..nl must be nonzero".into(),
            ));
        }
        Ok(())
    }
}

/// Rational tangle `beta/alpha`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tangle {
    pub alpha: i64,
    pub beta: i64,
}

/// Rewrites `M(b; (2, beta1), (alpha2, beta2), (alpha3, beta3))` into the
/// normal form of [`Case2Spec`] by absorbing `b`, moving integer twists between
/// tangles and applying the parity case analysis.
pub fn normalize_case2(b: i64, tangles: [Tangle; 3]) -> Result<Case2Spec> {
    let [t1, t2, t3] = tangles;
    if t1.alpha != 2 {
        return Err(Error::NotCase2(format!(
            "first tangle needs alpha = 2, got {}",
            t1.alpha
        )));
    }
    for t in [t2, t3] {
        if t.alpha < 3 || t.alpha % 2 == 0 {
            return Err(Error::NotCase2(format!(
                "alpha = {} must be odd and at least 3",
                t.alpha
            )));
        }
    }
    for t in tangles {
        if t.beta.gcd(&t.alpha) != 1 {
            return Err(Error::NotCase2(format!(
                "{}/{} is not reduced",
                t.beta, t.alpha
            )));
        }
    }
    let half = Ratio::new(1, 2);
    let mut f1 = Ratio::new(t1.beta, 2) - b;
    let mut f2 = Ratio::new(t2.beta, t2.alpha);
    let mut f3 = Ratio::new(t3.beta, t3.alpha);
    // f1 is a half-integer: keep 1/2 and push the integer part into f2
    let n1 = (f1 - half).to_integer();
    f1 -= n1;
    f2 += n1;
    let n3 = f3.floor().to_integer();
    f3 -= n3;
    f2 += n3;
    let even = |f: &Ratio<i64>| f.numer() % 2 == 0;
    match (even(&f2), even(&f3)) {
        (true, true) => {}
        (false, false) => {
            let s = f3.numer().signum();
            f2 += s;
            f3 -= s;
        }
        (false, true) => {
            f1 -= 1;
            f2 += 1;
        }
        (true, false) => {
            f1 -= 1;
            f3 += 1;
            if f3 > Ratio::from_integer(1) {
                f3 -= 2;
                f2 += 2;
            }
        }
    }
    debug_assert!(f1.abs() == half && f3.abs() < Ratio::from_integer(1));
    let beta1_sign = f1.numer().signum();
    let cf2 = even_continued_fraction(*f2.numer(), *f2.denom())?;
    let cf3 = even_continued_fraction(*f3.numer(), *f3.denom())?;
    if cf2.last_is_odd() || cf3.last_is_odd() || cf3.entries[0] != 0 {
        return Err(Error::SpecInvariantViolation(
            "unexpected continued fraction shape".into(),
        ));
    }
    let spec = Case2Spec {
        beta1_sign,
        m: cf2.halves(),
        n: cf3.halves()[1..].to_vec(),
    };
    spec.check()?;
    Ok(spec)
}

/// Presentation with generators `a, b, c, x_-4, ..., x_2k, y_-2, ..., y_2l`,
/// relators `r_-4, ..., r_2k+1, s_-2, ..., s_2l+1`, meridian `c`.
#[derive(Clone, Debug)]
pub struct Case2Knot {
    pub spec: Case2Spec,
    pub presentation: Presentation,
}

impl Case2Knot {
    pub fn a(&self) -> Gen {
        Gen(0)
    }

    pub fn b(&self) -> Gen {
        Gen(1)
    }

    pub fn c(&self) -> Gen {
        Gen(2)
    }

    /// `x_i`, `-4 <= i <= 2k`.
    pub fn x(&self, i: i64) -> Gen {
        assert!(i >= -4 && i <= 2 * self.spec.k() as i64);
        Gen((3 + i + 4) as usize)
    }

    /// `y_j`, `-2 <= j <= 2l`.
    pub fn y(&self, j: i64) -> Gen {
        assert!(j >= -2 && j <= 2 * self.spec.l() as i64);
        Gen(3 + 2 * self.spec.k() + 5 + (j + 2) as usize)
    }

    /// `x_{2i-3}^s x_{2i-4}^s`, `s = (-1)^i`.
    pub fn x_twist(&self, i: i64) -> Word {
        twist(
            Word::gen(self.x(2 * i - 3)),
            Word::gen(self.x(2 * i - 4)),
            i,
        )
    }

    /// `y_{2i-3}^s y_{2i-4}^s`, `s = (-1)^i`.
    pub fn y_twist(&self, i: i64) -> Word {
        twist(
            Word::gen(self.y(2 * i - 3)),
            Word::gen(self.y(2 * i - 4)),
            i,
        )
    }

    /// Word defining `x_-4` in terms of `a, c`.
    pub fn x_m4_word(&self) -> Word {
        let (a, c) = (self.a(), self.c());
        if self.spec.beta1_sign > 0 {
            Word::from_powers(&[(c, -1), (a, -1), (c, 1)])
        } else {
            Word::from_powers(&[(a, -1), (c, 1), (a, -1), (c, -1), (a, 1)])
        }
    }

    /// Word defining `y_0` in terms of `a, c`.
    pub fn y0_word(&self) -> Word {
        let (a, c) = (self.a(), self.c());
        if self.spec.beta1_sign > 0 {
            Word::from_powers(&[(c, -1), (a, 1), (c, -1), (a, -1), (c, 1)])
        } else {
            Word::from_powers(&[(a, -1), (c, -1), (a, 1)])
        }
    }

    /// Position of `r_j`, `-4 <= j <= 2k+1`.
    pub fn r_index(&self, j: i64) -> usize {
        assert!(j >= -4 && j <= 2 * self.spec.k() as i64 + 1);
        (j + 4) as usize
    }

    /// Position of `s_j`, `-2 <= j <= 2l+1`.
    pub fn s_index(&self, j: i64) -> usize {
        assert!(j >= -2 && j <= 2 * self.spec.l() as i64 + 1);
        2 * self.spec.k() + 6 + (j + 2) as usize
    }

    /// The relation `x_2k = y_2l` left out of the presentation.
    pub fn rs_relator(&self) -> Word {
        relation(
            &Word::gen(self.x(2 * self.spec.k() as i64)),
            &Word::gen(self.y(2 * self.spec.l() as i64)),
        )
    }
}

fn twist(u: Word, v: Word, i: i64) -> Word {
    if i % 2 == 0 {
        u.mul(&v)
    } else {
        u.inverse().mul(&v.inverse())
    }
}

pub fn build_case2(spec: &Case2Spec) -> Result<Case2Knot> {
    spec.check()?;
    let (k, l) = (spec.k() as i64, spec.l() as i64);
    let mut names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    names.extend((-4..=2 * k).map(|i| format!("x_{i}")));
    names.extend((-2..=2 * l).map(|j| format!("y_{j}")));
    let knot = Case2Knot {
        spec: spec.clone(),
        presentation: Presentation::placeholder(),
    };
    let g = Word::gen;
    let mut rel = Vec::new();
    rel.push(relation(&g(knot.x(-4)), &knot.x_m4_word()));
    rel.push(relation(&g(knot.x(-3)), &g(knot.a())));
    rel.push(relation(&g(knot.x(-2)), &g(knot.b())));
    for i in 0..=k {
        let p = knot.x_twist(i);
        let m = spec.m[i as usize];
        rel.push(conj_relation(
            knot.x(2 * i - 1),
            &p,
            m,
            &g(knot.x(2 * i - 3)),
        ));
        rel.push(conj_relation(knot.x(2 * i), &p, m, &g(knot.x(2 * i - 4))));
    }
    rel.push(relation(
        &g(knot.x(2 * k - 1)),
        &g(knot.x(2 * k - 2)).inverse(),
    ));
    rel.push(relation(&g(knot.y(-2)), &g(knot.b())));
    rel.push(relation(&g(knot.y(-1)), &g(knot.c())));
    rel.push(relation(&g(knot.y(0)), &knot.y0_word()));
    for i in 1..=l {
        let q = knot.y_twist(i);
        let n = spec.n[(i - 1) as usize];
        rel.push(conj_relation(
            knot.y(2 * i - 1),
            &q,
            -n,
            &g(knot.y(2 * i - 3)),
        ));
        rel.push(conj_relation(knot.y(2 * i), &q, -n, &g(knot.y(2 * i - 4))));
    }
    rel.push(relation(
        &g(knot.y(2 * l - 1)),
        &g(knot.y(2 * l - 2)).inverse(),
    ));
    let presentation = names_to_presentation(names, rel, Gen(2))?;
    Ok(Case2Knot {
        presentation,
        ..knot
    })
}
