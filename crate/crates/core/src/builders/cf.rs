use crate::error::{Error, Result};
use num_integer::Integer;

/// Continued fraction `c0 + 1/(c1 + 1/(c2 + ...))` whose entries are even,
/// except that the last entry is odd when numerator and denominator are both odd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvenCf {
    pub entries: Vec<i64>,
}

impl EvenCf {
    /// The `m_i` with `entries[i] = 2 m_i` (the last one `2 m_l + 1` if odd).
    pub fn halves(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|&c| Integer::div_floor(&c, &2))
            .collect()
    }

    pub fn last_is_odd(&self) -> bool {
        self.entries.last().is_some_and(|c| c % 2 != 0)
    }

    pub fn to_rational(&self) -> Result<(i64, i64)> {
        cf_to_rational(&self.entries)
    }
}

/// Even continued fraction expansion of `beta/alpha`, choosing at each step
/// the nearest even integer. Entries after the first are nonzero.
pub fn even_continued_fraction(beta: i64, alpha: i64) -> Result<EvenCf> {
    if alpha < 1 || beta.gcd(&alpha) != 1 {
        return Err(Error::NotCoprime { alpha, beta });
    }
    let (mut p, mut q) = (beta as i128, alpha as i128);
    let mut entries = Vec::new();
    loop {
        if q < 0 {
            p = -p;
            q = -q;
        }
        if p % q == 0 {
            entries.push((p / q) as i64);
            break;
        }
        // nearest even integer to p/q; p/q is not an integer here
        let two_q = 2 * q;
        let c = 2 * Integer::div_floor(&(p + q), &two_q);
        entries.push(c as i64);
        let r = p - c * q;
        p = q;
        q = r;
    }
    Ok(EvenCf { entries })
}

/// Evaluates `c0 + 1/(c1 + 1/(... + 1/ck))` to a reduced fraction with
/// positive denominator, treating intermediate infinities projectively.
pub fn cf_to_rational(entries: &[i64]) -> Result<(i64, i64)> {
    let Some((&last, rest)) = entries.split_last() else {
        return Err(Error::SpecInvariantViolation(
            "empty continued fraction".into(),
        ));
    };
    let (mut p, mut q) = (last as i128, 1i128);
    for &c in rest.iter().rev() {
        let np = c as i128 * p + q;
        q = p;
        p = np;
    }
    if q == 0 {
        return Err(Error::AllDenominatorsZero);
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 {
        p = -p;
        q = -q;
    }
    Ok((p as i64, q as i64))
}
