//! The projections `p_α`, `p_β` and `p = (p_α, p_β): 𝒪ₙ → 𝒥ₙ × 𝒥ₙ`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{compute_green, GreenStructure};
use crate::jones::JonesMonoid;
use crate::monoid::FiniteMonoid;
use crate::origami::{classify_element, ElementClass, OrigamiMonoid};
use crate::words::{Alphabet, Letter, Word};

/// The direct product `𝒥ₙ × 𝒥ₙ`, generated by `(hᵢ, 1)` and `(1, hᵢ)`.
///
/// The product is presented over the origami alphabet so that `αᵢ` names
/// `(hᵢ, 1)` and `βᵢ` names `(1, hᵢ)`; element `(x, y)` has index
/// `x * |𝒥ₙ| + y` and is labelled by the `α`-copy of `x` followed by the
/// `β`-copy of `y`.
#[derive(Clone, Debug)]
pub struct ProductMonoid {
    pub factor_order: usize,
    pub monoid: FiniteMonoid,
}

impl ProductMonoid {
    pub fn new(jones: &FiniteMonoid) -> Result<Self> {
        jones.require_complete()?;
        let n = jones.alphabet.n;
        let alphabet = Alphabet::origami(n)?;
        let r = alphabet.rank();
        let k = jones.len();
        let lift = |w: &Word, beta: bool| -> Word {
            w.iter().map(|l| Letter(l.0 + if beta { r as u8 } else { 0 })).collect()
        };
        let mut elements = Vec::with_capacity(k * k);
        let mut right = Vec::with_capacity(k * k * 2 * r);
        let mut left = Vec::with_capacity(k * k * 2 * r);
        for x in 0..k {
            for y in 0..k {
                elements.push(lift(jones.word(x), false).concat(&lift(jones.word(y), true)));
                for g in 0..r {
                    right.push((jones.right_mul(x, g) * k + y) as u32);
                }
                for g in 0..r {
                    right.push((x * k + jones.right_mul(y, g)) as u32);
                }
                for g in 0..r {
                    left.push((jones.left_mul(g, x) * k + y) as u32);
                }
                for g in 0..r {
                    left.push((x * k + jones.left_mul(g, y)) as u32);
                }
            }
        }
        let identity = jones.identity * k + jones.identity;
        let monoid = FiniteMonoid::new(alphabet, elements, identity, alphabet.letters().collect(), right, left, true);
        Ok(ProductMonoid { factor_order: k, monoid })
    }

    pub fn len(&self) -> usize {
        self.monoid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monoid.is_empty()
    }

    pub fn components(&self, z: usize) -> (usize, usize) {
        (z / self.factor_order, z % self.factor_order)
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.factor_order + y
    }
}

/// A monoid morphism determined by generator images.
#[derive(Clone, Debug)]
pub struct MonoidMorphism<'a> {
    pub source_alphabet: Alphabet,
    pub target: &'a FiniteMonoid,
    /// Image of each source letter, as a target element.
    pub generator_images: Vec<usize>,
}

impl<'a> MonoidMorphism<'a> {
    pub fn image(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.target.identity, |acc, l| self.target.multiply(acc, self.generator_images[l.code()]))
    }

    /// Fails on the first relation whose sides have different images.
    pub fn check_relations(&self, relations: &[(Word, Word)]) -> Result<()> {
        for (u, v) in relations {
            if self.image(u) != self.image(v) {
                return Err(Error::RelationViolated {
                    lhs: self.source_alphabet.display(u),
                    rhs: self.source_alphabet.display(v),
                });
            }
        }
        Ok(())
    }
}

/// `p` realised on an enumerated `𝒪ₙ`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub product: ProductMonoid,
    /// `images[x]` is `p(x)` as a product element.
    pub images: Vec<usize>,
}

impl Projection {
    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<usize> = self.images.iter().copied().collect();
        hit.len() == self.product.len()
    }

    /// `(p_α(x), p_β(x))` as `𝒥ₙ` element indices.
    pub fn components(&self, x: usize) -> (usize, usize) {
        self.product.components(self.images[x])
    }
}

/// Builds `p` with `αᵢ ↦ (hᵢ, 1)` and `βᵢ ↦ (1, hᵢ)`, checks it on every
/// defining relation of `𝒪ₙ`, and evaluates it on all elements.
pub fn projection_p(origami: &OrigamiMonoid, jones: &JonesMonoid) -> Result<Projection> {
    let product = ProductMonoid::new(&jones.monoid)?;
    let images = {
        let p = &product.monoid;
        let morphism = MonoidMorphism {
            source_alphabet: origami.monoid.alphabet,
            target: p,
            generator_images: (0..p.generator_count()).map(|g| p.right_mul(p.identity, g)).collect(),
        };
        morphism.check_relations(&origami.presentation.pairs())?;
        origami.monoid.elements.iter().map(|w| morphism.image(w)).collect()
    };
    Ok(Projection { product, images })
}

/// Checks that the map sending source generator `g` to target generator
/// `letter_map[g]` extends to an isomorphism whose Cayley graphs coincide.
/// Returns the element bijection, or `None` if there is none.
pub fn cayley_isomorphism(source: &FiniteMonoid, target: &FiniteMonoid, letter_map: &[usize]) -> Result<Option<Vec<usize>>> {
    source.require_complete()?;
    target.require_complete()?;
    if source.len() != target.len() || letter_map.len() != source.generator_count() {
        return Ok(None);
    }
    // Transport along right edges from the identity.
    let mut image = vec![usize::MAX; source.len()];
    image[source.identity] = target.identity;
    let mut queue = std::collections::VecDeque::from([source.identity]);
    while let Some(x) = queue.pop_front() {
        for (g, &tg) in letter_map.iter().enumerate() {
            let y = source.right_mul(x, g);
            let ty = target.right_mul(image[x], tg);
            if image[y] == usize::MAX {
                image[y] = ty;
                queue.push_back(y);
            } else if image[y] != ty {
                return Ok(None);
            }
        }
    }
    let distinct: HashSet<usize> = image.iter().copied().collect();
    if image.contains(&usize::MAX) || distinct.len() != target.len() {
        return Ok(None);
    }
    for x in 0..source.len() {
        for g in 0..source.generator_count() {
            if image[source.left_mul(g, x)] != target.left_mul(letter_map[g], image[x]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(image))
}

/// The submonoid generated by the given generator slots, with its own
/// Cayley graphs over those generators. Elements keep their words.
pub fn generated_submonoid(m: &FiniteMonoid, slots: &[usize]) -> Result<(FiniteMonoid, Vec<usize>)> {
    m.require_complete()?;
    let mut members = vec![m.identity];
    let mut inside = vec![false; m.len()];
    inside[m.identity] = true;
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        for &g in slots {
            let y = m.right_mul(x, g);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        k += 1;
    }
    members.sort_unstable();
    let pos: std::collections::HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut right = Vec::new();
    let mut left = Vec::new();
    let mut closed = true;
    for &x in &members {
        for &g in slots {
            right.push(pos[&m.right_mul(x, g)] as u32);
            match pos.get(&m.left_mul(g, x)) {
                Some(&p) => left.push(p as u32),
                None => {
                    closed = false;
                    left.push(crate::monoid::MISSING);
                }
            }
        }
    }
    debug_assert!(closed, "left multiplication left the generated submonoid");
    let words = members.iter().map(|&x| m.word(x).clone()).collect();
    let generators = slots.iter().map(|&g| m.generators[g]).collect();
    let identity = pos[&m.identity];
    Ok((FiniteMonoid::new(m.alphabet, words, identity, generators, right, left, closed), members))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DClassImage {
    pub origami_class: u32,
    /// 𝒟-class of the product containing `p(D)`; the first one hit if `p(D)`
    /// meets several.
    pub product_class: u32,
    /// `p(D)` lies inside a single product 𝒟-class.
    pub contained: bool,
    /// `p(D)` is all of that product 𝒟-class.
    pub onto: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DClassCounts {
    pub origami: usize,
    pub product: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub dclass_counts: DClassCounts,
    pub map: Vec<DClassImage>,
    /// The induced map on 𝒟-classes is a bijection.
    pub bijection: bool,
    /// Every product 𝒟-class is the full image of some 𝒟-class of `𝒪ₙ`.
    pub every_product_class_hit_onto: bool,
    pub singleton_h: bool,
}

/// Compares the 𝒟-classes of `𝒪ₙ` with those of `𝒥ₙ × 𝒥ₙ` under `p`.
/// Negative outcomes are reported, not raised.
pub fn verify_dclass_correspondence(
    origami: &OrigamiMonoid,
    origami_green: &GreenStructure,
    projection: &Projection,
) -> Result<CorrespondenceReport> {
    let product_green = compute_green(&projection.product.monoid)?;
    let pd = &product_green.d_class_of;
    let mut product_members = vec![0usize; product_green.d_count];
    for &c in pd {
        product_members[c as usize] += 1;
    }
    let mut map = Vec::with_capacity(origami_green.d_count);
    for (d, members) in origami_green.d_classes().into_iter().enumerate() {
        let image: HashSet<usize> = members.iter().map(|&x| projection.images[x]).collect();
        let classes: HashSet<u32> = image.iter().map(|&z| pd[z]).collect();
        let product_class = image.iter().map(|&z| pd[z]).min().unwrap_or(0);
        let contained = classes.len() == 1;
        let onto = contained && image.len() == product_members[product_class as usize];
        map.push(DClassImage { origami_class: d as u32, product_class, contained, onto });
    }
    let targets: HashSet<u32> = map.iter().filter(|m| m.contained).map(|m| m.product_class).collect();
    let bijection = map.iter().all(|m| m.contained)
        && targets.len() == map.len()
        && product_green.d_count == origami_green.d_count;
    let onto_targets: HashSet<u32> = map.iter().filter(|m| m.onto).map(|m| m.product_class).collect();
    Ok(CorrespondenceReport {
        n: origami.presentation.n,
        dclass_counts: DClassCounts { origami: origami_green.d_count, product: product_green.d_count },
        map,
        bijection,
        every_product_class_hit_onto: onto_targets.len() == product_green.d_count,
        singleton_h: verify_singleton_h(origami_green),
    })
}

/// Every ℋ-class is a single element.
pub fn verify_singleton_h(gs: &GreenStructure) -> bool {
    gs.max_h_size() <= 1
}

/// Witnesses `(x, y)` of non-identity elements from different submonoid
/// classes (pure `α`, pure `β`, mixed) sharing a 𝒟-class.
pub fn separation_violations(origami: &FiniteMonoid, gs: &GreenStructure) -> Vec<(usize, usize)> {
    let a = origami.alphabet;
    let mut by_class: std::collections::HashMap<u32, Vec<(ElementClass, usize)>> = Default::default();
    for x in 0..origami.len() {
        let class = classify_element(&a, origami.word(x));
        if class != ElementClass::Identity {
            by_class.entry(gs.d_class_of[x]).or_default().push((class, x));
        }
    }
    let mut bad = Vec::new();
    let mut keys: Vec<_> = by_class.keys().copied().collect();
    keys.sort_unstable();
    for d in keys {
        let members = &by_class[&d];
        let first = members[0];
        if let Some(&(_, y)) = members.iter().find(|(c, _)| *c != first.0) {
            bad.push((first.1, y));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::enumerate_jones;
    use crate::origami::{build_monoid, default_limits};
    use crate::rewriting::EnumerationOptions;

    fn setup(n: usize) -> (OrigamiMonoid, JonesMonoid, Projection) {
        let o = build_monoid(n, &default_limits(), EnumerationOptions::default()).unwrap();
        let j = enumerate_jones(n).unwrap();
        let p = projection_p(&o, &j).unwrap();
        (o, j, p)
    }

    #[test]
    fn images_of_small_words() {
        let (o, j, p) = setup(3);
        let a = o.monoid.alphabet;
        let x = o.monoid.evaluate(&a.parse("a1 b1").unwrap()).unwrap();
        let h1 = j.monoid.evaluate(&j.monoid.alphabet.parse("h1").unwrap()).unwrap();
        assert_eq!(p.components(x), (h1, h1));
        assert_eq!(p.components(o.monoid.identity), (j.monoid.identity, j.monoid.identity));
        let y = o.monoid.evaluate(&a.parse("a1 a2 b2").unwrap()).unwrap();
        let h12 = j.monoid.evaluate(&j.monoid.alphabet.parse("h1 h2").unwrap()).unwrap();
        let h2 = j.monoid.evaluate(&j.monoid.alphabet.parse("h2").unwrap()).unwrap();
        assert_eq!(p.components(y), (h12, h2));
    }

    #[test]
    fn surjective_and_homomorphic() {
        for n in 2..=3 {
            let (o, _, p) = setup(n);
            assert!(p.is_surjective());
            let m = &o.monoid;
            let pm = &p.product.monoid;
            for x in 0..m.len() {
                for y in 0..m.len() {
                    assert_eq!(p.images[m.multiply(x, y)], pm.multiply(p.images[x], p.images[y]));
                }
            }
        }
    }

    #[test]
    fn product_multiplies_componentwise() {
        let j = enumerate_jones(4).unwrap();
        let prod = ProductMonoid::new(&j.monoid).unwrap();
        assert_eq!(prod.len(), 14 * 14);
        let jm = &j.monoid;
        for (x1, y1, x2, y2) in [(1, 2, 3, 4), (5, 0, 7, 13), (13, 13, 2, 9)] {
            let z = prod.monoid.multiply(prod.pair(x1, y1), prod.pair(x2, y2));
            assert_eq!(prod.components(z), (jm.multiply(x1, x2), jm.multiply(y1, y2)));
        }
    }

    #[test]
    fn product_green_factorises() {
        let j = enumerate_jones(3).unwrap();
        let jg = compute_green(&j.monoid).unwrap();
        let prod = ProductMonoid::new(&j.monoid).unwrap();
        let pg = compute_green(&prod.monoid).unwrap();
        for z in 0..prod.len() {
            for w in 0..prod.len() {
                let (a, b) = prod.components(z);
                let (c, d) = prod.components(w);
                let r = jg.r_class_of[a] == jg.r_class_of[c] && jg.r_class_of[b] == jg.r_class_of[d];
                assert_eq!(pg.r_class_of[z] == pg.r_class_of[w], r);
                let l = jg.l_class_of[a] == jg.l_class_of[c] && jg.l_class_of[b] == jg.l_class_of[d];
                assert_eq!(pg.l_class_of[z] == pg.l_class_of[w], l);
            }
        }
    }

    #[test]
    fn submonoids_match_jones() {
        let (o, j, _) = setup(4);
        let (alpha, members) = generated_submonoid(&o.monoid, &[0, 1, 2]).unwrap();
        assert_eq!(alpha.len(), 14);
        assert!(members.iter().all(|&x| !matches!(
            classify_element(&o.monoid.alphabet, o.monoid.word(x)),
            ElementClass::BetaOnly | ElementClass::Mixed
        )));
        assert!(cayley_isomorphism(&alpha, &j.monoid, &[0, 1, 2]).unwrap().is_some());
        // A wrong letter map is rejected.
        assert!(cayley_isomorphism(&alpha, &j.monoid, &[1, 0, 2]).unwrap().is_none());
    }

    #[test]
    fn relation_violation_reported() {
        let j = enumerate_jones(3).unwrap();
        let a = Alphabet::jones(3).unwrap();
        let m = MonoidMorphism { source_alphabet: a, target: &j.monoid, generator_images: vec![1, 2] };
        let bogus = vec![(a.parse("h1").unwrap(), a.parse("h2").unwrap())];
        assert!(matches!(m.check_relations(&bogus), Err(Error::RelationViolated { .. })));
    }

    #[test]
    fn correspondence_small() {
        for n in 2..=3 {
            let (o, _, p) = setup(n);
            let g = compute_green(&o.monoid).unwrap();
            assert!(separation_violations(&o.monoid, &g).is_empty());
            let rep = verify_dclass_correspondence(&o, &g, &p).unwrap();
            assert!(rep.singleton_h);
            assert!(rep.every_product_class_hit_onto);
            assert_eq!(rep.bijection, rep.dclass_counts.origami == rep.dclass_counts.product);
        }
    }
}
