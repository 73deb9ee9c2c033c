//! Between cocycles and extensions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::{Elem, FiniteGroup, GroupHom};
use crate::h2::AbelianExtension;
use crate::h3::CrossedExtension;

use super::cochain::Cochain;
use super::cohomology::Cohomology;
use super::OracleError;

/// How set-theoretic sections are chosen when reading off a cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionChoice {
    /// The least element of every fibre.
    Least,
    /// A uniformly random element of every fibre other than the zero one.
    Seeded(u64),
}

/// Fibres of `h` over each codomain element, in increasing order.
fn fibres(h: &GroupHom) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new(); h.cod().order()];
    for a in h.dom().elements() {
        out[h.apply(a)].push(a);
    }
    out
}

/// A pointed section of `h` on its image (`None` off the image).
fn section(h: &GroupHom, choice: SectionChoice, rng: &mut ChaCha8Rng) -> Vec<Option<Elem>> {
    fibres(h)
        .into_iter()
        .enumerate()
        .map(|(b, fibre)| match (b, choice) {
            (0, _) => Some(0),
            (_, SectionChoice::Least) => fibre.first().copied(),
            (_, SectionChoice::Seeded(_)) => fibre.choose(rng).copied(),
        })
        .collect()
}

/// The extension `B ×_f C` with `(b, c) + (b', c') = (b + c*b' + f(c, c'), c + c')`,
/// the pair `(b, c)` stored at `b·|C| + c`.
pub fn extension_from_2cocycle(f: &Cochain) -> Result<AbelianExtension, OracleError> {
    if f.degree() != 2 {
        return Err(OracleError::DegreeMismatch { expected: 2, found: f.degree() });
    }
    if !f.is_cocycle() {
        return Err(OracleError::NotACocycle);
    }
    let m = f.module();
    let (b, c) = (m.coeff(), m.base());
    let n = c.order();
    let e = FiniteGroup::from_fn(b.order() * n, |x, y| {
        let (b1, c1, b2, c2) = (x / n, x % n, y / n, y % n);
        b.sum([b1, m.act(c1, b2), f.get(&[c1, c2])]) * n + c.op(c1, c2)
    });
    let kappa = GroupHom::from_fn(b, &e, |x| x * n);
    let gamma = GroupHom::from_fn(&e, c, |x| x % n);
    Ok(AbelianExtension::over(kappa, gamma, m)?)
}

/// `f(c, c') = κ⁻¹(s(c) + s(c') - s(c + c'))` for the least section `s` of `γ`.
pub fn cocycle_of_extension(e: &AbelianExtension) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let s = section(e.gamma(), SectionChoice::Least, &mut rng);
    let kinv = e.kappa().preimage_table();
    let (g, c) = (e.middle(), e.module().base());
    let s = |x: Elem| s[x].expect("γ is onto");
    Cochain::from_fn(e.module(), 2, |t| {
        let defect = g.sub(g.op(s(t[0]), s(t[1])), s(c.op(t[0], t[1])));
        kinv[defect].expect("defect lies in the kernel")
    })
}

/// The class of an abelian extension in `H²`.
pub fn extension_class(e: &AbelianExtension, h2: &Cohomology) -> Result<Elem, OracleError> {
    h2.class_of(&cocycle_of_extension(e))
}

/// The 3-cocycle of a crossed extension `B -j-> E2 -∂-> E1 -p-> C`.
///
/// With a section `s` of `p` and a lift `F(c1, c2) ∈ E2` of the defect
/// `s(c1) + s(c2) - s(c1 + c2)` along `∂`, the value at `(c1, c2, c3)` is
/// `j⁻¹(s(c1)*F(c2, c3) + F(c1, c2 + c3) - F(c1 + c2, c3) - F(c1, c2))`.
pub fn class_of_crossed_extension(x: &CrossedExtension, choice: SectionChoice) -> Cochain {
    let seed = match choice {
        SectionChoice::Least => 0,
        SectionChoice::Seeded(seed) => seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s1 = section(x.p(), choice, &mut rng);
    let lift = section(x.boundary(), choice, &mut rng);
    let (e1, e2, c) = (x.e1(), x.e2(), x.base());
    let jinv = x.j().preimage_table();
    let s = |a: Elem| s1[a].expect("p is onto");
    let big_f = |a: Elem, b: Elem| {
        let defect = e1.sub(e1.op(s(a), s(b)), s(c.op(a, b)));
        lift[defect].expect("defect lies in the image of the boundary")
    };
    Cochain::from_fn(x.module(), 3, |t| {
        let (c1, c2, c3) = (t[0], t[1], t[2]);
        let total = e2.sum([
            x.xm().act(s(c1), big_f(c2, c3)),
            big_f(c1, c.op(c2, c3)),
            e2.neg(big_f(c.op(c1, c2), c3)),
            e2.neg(big_f(c1, c2)),
        ]);
        jinv[total].expect("value lies in the kernel of the boundary")
    })
}

/// The class of a crossed extension in `H³` of its module.
pub fn crossed_extension_class(x: &CrossedExtension, h3: &Cohomology, choice: SectionChoice) -> Result<Elem, OracleError> {
    h3.class_of(&class_of_crossed_extension(x, choice))
}
