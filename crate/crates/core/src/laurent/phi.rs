use super::{Block, LaurentPoly};
use crate::error::Result;
use crate::group::{GroupRingElement, Word};
use crate::scalar::Field;
use std::marker::PhantomData;

/// Generator images together with abelianization degrees: the data of the
/// ring map `Z[G] -> M(F[t, t^-1])`, `w -> t^deg(w) rho(w)`.
#[derive(Clone, Debug)]
pub struct Images<F: Field, B: Block<F>> {
    images: Vec<B>,
    inverses: Vec<B>,
    degrees: Vec<i64>,
    _f: PhantomData<F>,
}

impl<F: Field, B: Block<F>> Images<F, B> {
    pub fn new(images: Vec<B>, degrees: Vec<i64>) -> Result<Self> {
        let inverses = images
            .iter()
            .map(|b| b.inverse())
            .collect::<Result<Vec<_>>>()?;
        Ok(Images {
            images,
            inverses,
            degrees,
            _f: PhantomData,
        })
    }

    pub fn image(&self, g: usize) -> &B {
        &self.images[g]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `(rho(w), deg(w))`.
    pub fn word(&self, w: &Word) -> (B, i64) {
        let mut m = B::one();
        let mut d = 0;
        for l in w.letters() {
            let g = l.gen.0;
            if l.inverse {
                m = m * self.inverses[g].clone();
                d -= self.degrees[g];
            } else {
                m = m * self.images[g].clone();
                d += self.degrees[g];
            }
        }
        (m, d)
    }

    pub fn phi_word(&self, w: &Word) -> LaurentPoly<B> {
        let (m, d) = self.word(w);
        LaurentPoly::monomial(m, d)
    }

    pub fn phi(&self, x: &GroupRingElement) -> LaurentPoly<B> {
        let mut terms = Vec::new();
        for (w, n) in x.terms() {
            let (m, d) = self.word(w);
            let n = B::from_scalar(F::from_i64(n));
            terms.push((d, n * m));
        }
        LaurentPoly::from_terms(terms)
    }

    /// Images of all Fox derivatives of `w` in one pass:
    /// entry `g` is `phi(dw/dx_g)`.
    pub fn fox_row(&self, w: &Word) -> Vec<LaurentPoly<B>> {
        let n = self.images.len();
        let mut terms: Vec<Vec<(i64, B)>> = vec![Vec::new(); n];
        let mut prefix = B::one();
        let mut d = 0;
        for l in w.letters() {
            let g = l.gen.0;
            if l.inverse {
                prefix = prefix * self.inverses[g].clone();
                d -= self.degrees[g];
                terms[g].push((d, -prefix.clone()));
            } else {
                terms[g].push((d, prefix.clone()));
                prefix = prefix * self.images[g].clone();
                d += self.degrees[g];
            }
        }
        terms.into_iter().map(LaurentPoly::from_terms).collect()
    }
}
