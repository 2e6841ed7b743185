//! Free groups, their integral group rings, Fox calculus and finite presentations.

mod presentation;
mod ring;
mod word;

pub use presentation::{Presentation, PresentationJson};
pub use ring::GroupRingElement;
pub use word::{Gen, Letter, Word};

/// Fox derivative of `w` with respect to `g`, using
/// `d(uv) = du + u dv`, `d(g) = 1`, `d(g^-1) = -g^-1`.
pub fn fox_derivative(w: &Word, g: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::empty();
    for l in w.letters() {
        if l.gen == g {
            if l.inverse {
                let mut p = prefix.clone();
                p.push(*l);
                out.add_term(p, -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix.push(*l);
    }
    out
}

/// Fox derivatives with respect to every generator in `0..num_gens`.
pub fn fox_jacobian_row(w: &Word, num_gens: usize) -> Vec<GroupRingElement> {
    (0..num_gens).map(|g| fox_derivative(w, Gen(g))).collect()
}
