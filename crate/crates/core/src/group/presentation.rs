use super::{Gen, Letter, Word};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A finite group presentation together with the abelianization degrees
/// `deg: G -> Z` normalised so that the meridian has degree one.
#[derive(Clone, PartialEq, Debug)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridian: Gen,
    degrees: Vec<i64>,
}

/// JSON form: `{"generators": [...], "relators": ["a b^-1 a", ...], "meridian": "a"}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub meridian: String,
}

impl Presentation {
    /// Validates the presentation and computes abelianization degrees.
    pub fn new(generators: Vec<String>, relators: Vec<Word>, meridian: Gen) -> Result<Self> {
        for (i, name) in generators.iter().enumerate() {
            if name.is_empty()
                || name.contains(|c: char| c.is_whitespace() || c == '^')
                || name == "1"
            {
                return Err(Error::Parse(format!("invalid generator name `{name}`")));
            }
            if generators[..i].contains(name) {
                return Err(Error::Parse(format!("duplicate generator `{name}`")));
            }
        }
        if meridian.0 >= generators.len() {
            return Err(Error::UnknownGenerator(format!("#{}", meridian.0)));
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen.0 >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen.0)));
            }
        }
        let degrees = abelianization_degrees(generators.len(), &relators, meridian)?;
        Ok(Presentation {
            generators,
            relators,
            meridian,
            degrees,
        })
    }

    /// Empty presentation used while a builder assembles its relators.
    pub(crate) fn placeholder() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
            meridian: Gen(0),
            degrees: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Gen {
        self.meridian
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Abelianization degree of each generator.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree_of_word(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.exponent() * self.degrees[l.gen.0])
            .sum()
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Gen> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(Gen)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generators[g.0]
    }

    /// Parses a word such as `"a b^-1 c^2"`. The empty word is `"1"` or `""`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word(s, &self.index())
    }

    fn index(&self) -> HashMap<&str, Gen> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), Gen(i)))
            .collect()
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.to_text(&self.generators)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.word_text(r)).collect(),
            meridian: self.generators[self.meridian.0].clone(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let index: HashMap<&str, Gen> = j
            .generators
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), Gen(i)))
            .collect();
        let relators = j
            .relators
            .iter()
            .map(|r| parse_word(r, &index))
            .collect::<Result<Vec<_>>>()?;
        let meridian = *index
            .get(j.meridian.as_str())
            .ok_or_else(|| Error::UnknownGenerator(j.meridian.clone()))?;
        Presentation::new(j.generators.clone(), relators, meridian)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("presentation serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

fn parse_word(s: &str, index: &HashMap<&str, Gen>) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
            ),
            None => (tok, 1),
        };
        let g = *index
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        for _ in 0..exp.unsigned_abs() {
            letters.push(Letter::new(g, exp < 0));
        }
    }
    Ok(Word::from_letters(letters))
}

fn abelianization_degrees(n: usize, relators: &[Word], meridian: Gen) -> Result<Vec<i64>> {
    let rows: Vec<Vec<BigInt>> = relators
        .iter()
        .map(|r| {
            (0..n)
                .map(|g| BigInt::from(r.exponent_sum(Gen(g))))
                .collect()
        })
        .collect();
    let divisors = smith_diagonal(rows.clone(), n);
    let rank = divisors.len();
    if rank + 1 != n {
        return Err(Error::NonCyclicAbelianization(format!(
            "exponent matrix has rank {rank}, expected {}",
            n - 1
        )));
    }
    if let Some(d) = divisors.iter().find(|d| !d.is_one()) {
        return Err(Error::NonCyclicAbelianization(format!(
            "torsion of order {d}"
        )));
    }
    let kernel = rational_kernel_vector(rows, n);
    let m = kernel[meridian.0].clone();
    if m.is_zero() {
        return Err(Error::NonCyclicAbelianization(
            "meridian is trivial in homology".into(),
        ));
    }
    kernel
        .iter()
        .map(|v| {
            let q = v / &m;
            if !q.is_integer() {
                return Err(Error::NonCyclicAbelianization(
                    "meridian does not generate homology".into(),
                ));
            }
            q.to_integer()
                .to_i64()
                .ok_or_else(|| Error::NonCyclicAbelianization("degree overflow".into()))
        })
        .collect()
}

/// Nonzero invariant factors of an integer matrix.
fn smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// A nonzero vector spanning the kernel, assuming the kernel is one dimensional.
fn rational_kernel_vector(rows: Vec<Vec<BigInt>>, n: usize) -> Vec<BigRational> {
    let mut a: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("kernel is nontrivial");
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    v
}
