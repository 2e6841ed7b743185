use crate::group::{Gen, Presentation, Word};
use crate::laurent::Mat2;
use crate::scalar::Ring;

/// Splits a presentation into free generators, definitional relators of the
/// form `g w` (so `g = w^-1`, with `g` not occurring in `w`), and the
/// remaining relators. Images of the free generators then determine all others.
#[derive(Clone, Debug)]
pub struct Propagation {
    free: Vec<Gen>,
    defs: Vec<(Gen, Word)>,
    residual: Vec<usize>,
    num_gens: usize,
}

impl Propagation {
    pub fn new(p: &Presentation) -> Self {
        let n = p.num_generators();
        let mut defined: Vec<Option<(usize, Word)>> = vec![None; n];
        for (i, r) in p.relators().iter().enumerate() {
            let Some(first) = r.letters().first() else {
                continue;
            };
            let g = first.gen;
            if first.inverse
                || defined[g.0].is_some()
                || r.letters()[1..].iter().any(|l| l.gen == g)
            {
                continue;
            }
            let rest = Word::from_letters(r.letters()[1..].iter().copied());
            defined[g.0] = Some((i, rest.inverse()));
        }
        // order definitions so each uses only free or earlier generators
        let mut ready: Vec<bool> = defined.iter().map(|d| d.is_none()).collect();
        let mut defs = Vec::new();
        let mut used = vec![false; p.relators().len()];
        loop {
            let next = (0..n).find(|&g| {
                !ready[g]
                    && defined[g]
                        .as_ref()
                        .is_some_and(|(_, w)| w.letters().iter().all(|l| ready[l.gen.0]))
            });
            let Some(g) = next else { break };
            let (i, w) = defined[g].clone().unwrap();
            ready[g] = true;
            used[i] = true;
            defs.push((Gen(g), w));
        }
        // definitions caught in a cycle become free generators with residual relators
        let free = (0..n)
            .filter(|&g| defined[g].is_none() || !defs.iter().any(|d| d.0 .0 == g))
            .map(Gen)
            .collect();
        let residual = (0..p.relators().len()).filter(|&i| !used[i]).collect();
        Propagation {
            free,
            defs,
            residual,
            num_gens: n,
        }
    }

    pub fn free(&self) -> &[Gen] {
        &self.free
    }

    /// Indices of relators not used as definitions.
    pub fn residual(&self) -> &[usize] {
        &self.residual
    }

    /// Fills in every image from those of the free generators, inverting by
    /// adjugates (all images are assumed to have determinant one).
    pub fn complete<R: Ring>(&self, free_images: &[Mat2<R>]) -> Vec<Mat2<R>> {
        let mut images: Vec<Option<Mat2<R>>> = vec![None; self.num_gens];
        for (g, m) in self.free.iter().zip(free_images) {
            images[g.0] = Some(m.clone());
        }
        for (g, w) in &self.defs {
            let m = eval_word(w, &images);
            images[g.0] = Some(m);
        }
        images
            .into_iter()
            .map(|m| m.expect("every generator is free or defined"))
            .collect()
    }
}

/// Evaluates a word using adjugates for inverses.
pub(crate) fn eval_word<R: Ring>(w: &Word, images: &[Option<Mat2<R>>]) -> Mat2<R> {
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let m = images[l.gen.0].as_ref().expect("image available");
        acc = if l.inverse {
            acc * m.adjugate()
        } else {
            acc * m.clone()
        };
    }
    acc
}
