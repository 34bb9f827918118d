//! Per-degree verification suite: the lemmas are hard checks, the
//! conjectures are reported.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::Result;
use crate::green::{compute_green, reference, GreenStructure};
use crate::jones::{catalan, enumerate_jones, jones_rewrite_system, JonesMonoid};
use crate::monoid::FiniteMonoid;
use crate::morphism::{
    cayley_isomorphism, generated_submonoid, projection_p, separation_violations, verify_dclass_correspondence,
    verify_singleton_h, CorrespondenceReport,
};
use crate::origami::{build_monoid, classify_element, ElementClass, OrigamiMonoid};
use crate::rewriting::{enumerate_normal_forms, knuth_bendix, CompletionLimits, EnumerationOptions};

/// Known non-identity element counts of `𝒪ₙ`, indexed by `n`.
pub const KNOWN_NON_IDENTITY_ORDERS: [(usize, usize); 5] = [(2, 6), (3, 44), (4, 293), (5, 2179), (6, 19086)];

/// Normal forms of the non-identity elements of `𝒪₂`.
pub const O2_NORMAL_FORMS: [&str; 6] = ["a1", "b1", "a1 b1", "b1 a1", "a1 b1 a1", "b1 a1 b1"];

/// Exhaustive pair checks are used up to this degree, sampling above it.
pub const EXHAUSTIVE_DEGREE: usize = 4;
/// Random pairs drawn when sampling.
pub const SAMPLED_PAIRS: usize = 100_000;
/// Largest monoid compared against the ideal-set computation.
pub const REFERENCE_GREEN_LIMIT: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// A proved statement; failure is a bug.
    Lemma,
    /// An open statement; the outcome is data.
    Conjecture,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub origami_order: usize,
    pub jones_order: usize,
    #[serde(skip)]
    pub seconds: f64,
    pub checks: Vec<Check>,
    pub correspondence: CorrespondenceReport,
}

impl DegreeReport {
    pub fn lemmas_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Lemma).all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub limits: CompletionLimits,
    pub enumeration: EnumerationOptions,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { limits: CompletionLimits::default(), enumeration: EnumerationOptions::default(), seed: 0x5eed }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn lemma(&mut self, name: &str, passed: bool, detail: String, witness: Option<String>) {
        self.0.push(Check { name: name.into(), kind: CheckKind::Lemma, passed, detail, witness });
    }

    fn conjecture(&mut self, name: &str, passed: bool, detail: String) {
        self.0.push(Check { name: name.into(), kind: CheckKind::Conjecture, passed, detail, witness: None });
    }
}

/// Pairs to test: all of them for small degrees, a seeded sample otherwise.
fn pairs(pool: &[usize], n: usize, rng: &mut StdRng) -> Vec<(usize, usize)> {
    if n <= EXHAUSTIVE_DEGREE {
        pool.iter().flat_map(|&x| pool.iter().map(move |&y| (x, y))).collect()
    } else {
        (0..SAMPLED_PAIRS).map(|_| (pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())])).collect()
    }
}

/// Ideal-set and graph computations of Green's relations agree.
pub fn green_matches_reference(m: &FiniteMonoid, gs: &GreenStructure) -> bool {
    let r = reference::compute(m);
    r.r_class_of == gs.r_class_of
        && r.l_class_of == gs.l_class_of
        && r.h_class_of == gs.h_class_of
        && r.j_class_of == gs.d_class_of
        && r.d_class_of == gs.d_class_of
}

pub fn verify_degree(n: usize, opts: &VerifyOptions) -> Result<DegreeReport> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(opts.seed ^ n as u64);
    let mut checks = Checks(Vec::new());

    let origami = build_monoid(n, &opts.limits, opts.enumeration)?;
    let om = &origami.monoid;
    om.require_complete()?;
    let a = om.alphabet;
    let jones = enumerate_jones(n)?;

    // Orders.
    if n == 2 {
        let mut got: Vec<String> = om.elements.iter().skip(1).map(|w| a.format(w)).collect();
        let mut want: Vec<String> = O2_NORMAL_FORMS.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        checks.lemma("o2_normal_forms", got == want, format!("{:?}", got), None);
    }
    if let Some(&(_, known)) = KNOWN_NON_IDENTITY_ORDERS.iter().find(|(k, _)| *k == n) {
        checks.lemma(
            "origami_order",
            om.len() - 1 == known,
            format!("{} non-identity elements, expected {}", om.len() - 1, known),
            None,
        );
    }
    let presented_jones = {
        let rs = knuth_bendix(&jones_rewrite_system(n)?, &opts.limits)?.into_confluent()?;
        enumerate_normal_forms(&rs, opts.enumeration)?
    };
    let cat = catalan(n) as usize;
    checks.lemma(
        "jones_order",
        jones.len() == cat && presented_jones.len() == cat,
        format!("diagrams {}, presentation {}, Catalan {}", jones.len(), presented_jones.len(), cat),
        None,
    );
    let identity_map: Vec<usize> = (0..n - 1).collect();
    checks.lemma(
        "jones_presentation_matches_diagrams",
        cayley_isomorphism(&presented_jones, &jones.monoid, &identity_map)?.is_some(),
        "hᵢ ↦ generator diagram extends to a Cayley graph isomorphism".into(),
        None,
    );

    // Equality oracle sanity: both sides of every relation agree.
    let rs = origami.system();
    let bad = origami
        .presentation
        .relations
        .iter()
        .find(|r| rs.normal_form(&r.lhs).ok() != rs.normal_form(&r.rhs).ok());
    checks.lemma(
        "relations_hold",
        bad.is_none(),
        format!("{} defining relations", origami.presentation.relations.len()),
        bad.map(|r| format!("({}) {} = {}", r.family, a.display(&r.lhs), a.display(&r.rhs))),
    );

    // Submonoids.
    let mixed: Vec<usize> = (0..om.len())
        .filter(|&x| matches!(classify_element(&a, om.word(x)), ElementClass::Mixed | ElementClass::Identity))
        .collect();
    let tested = pairs(&mixed, n, &mut rng);
    let escape = tested.iter().find(|&&(x, y)| {
        !matches!(classify_element(&a, om.word(om.multiply(x, y))), ElementClass::Mixed | ElementClass::Identity)
    });
    checks.lemma(
        "mixed_submonoid_closed",
        escape.is_none(),
        format!("{} pairs", tested.len()),
        escape.map(|&(x, y)| format!("{} * {}", a.display(om.word(x)), a.display(om.word(y)))),
    );
    let alpha_slots: Vec<usize> = (0..n - 1).collect();
    let beta_slots: Vec<usize> = (n - 1..2 * (n - 1)).collect();
    let (alpha_sub, _) = generated_submonoid(om, &alpha_slots)?;
    let (beta_sub, _) = generated_submonoid(om, &beta_slots)?;
    let alpha_iso = cayley_isomorphism(&alpha_sub, &jones.monoid, &identity_map)?.is_some();
    let beta_iso = cayley_isomorphism(&beta_sub, &jones.monoid, &identity_map)?.is_some();
    checks.lemma(
        "alpha_beta_submonoids_are_jones",
        alpha_iso && beta_iso,
        format!("|O^a| = {}, |O^b| = {}, |J| = {}", alpha_sub.len(), beta_sub.len(), jones.len()),
        None,
    );

    // Projection.
    let projection = projection_p(&origami, &jones)?;
    checks.lemma("p_preserves_relations", true, "all defining relations".into(), None);
    checks.lemma(
        "p_surjective",
        projection.is_surjective(),
        format!("image covers {} of {}", projection.images.iter().collect::<std::collections::HashSet<_>>().len(), projection.product.len()),
        None,
    );
    let all: Vec<usize> = (0..om.len()).collect();
    let homo_pairs = pairs(&all, n, &mut rng);
    let pm = &projection.product.monoid;
    let broken = homo_pairs
        .iter()
        .find(|&&(x, y)| projection.images[om.multiply(x, y)] != pm.multiply(projection.images[x], projection.images[y]));
    checks.lemma(
        "p_homomorphism",
        broken.is_none(),
        format!("{} pairs", homo_pairs.len()),
        broken.map(|&(x, y)| format!("{} * {}", a.display(om.word(x)), a.display(om.word(y)))),
    );
    checks.lemma(
        "order_at_least_jones_squared",
        om.len() >= jones.len() * jones.len(),
        format!("{} >= {}", om.len(), jones.len() * jones.len()),
        None,
    );

    // bar is an automorphism: it maps normal forms to elements and commutes
    // with the Cayley graphs.
    let bar_map: Vec<usize> = (0..2 * (n - 1)).map(|g| if g < n - 1 { g + n - 1 } else { g - (n - 1) }).collect();
    checks.lemma(
        "bar_automorphism",
        cayley_isomorphism(om, om, &bar_map)?.is_some(),
        "αᵢ ↔ βᵢ".into(),
        None,
    );

    // Green's relations.
    let gs = compute_green(om)?;
    let violations = separation_violations(om, &gs);
    checks.lemma(
        "dclass_separation",
        violations.is_empty(),
        format!("{} D-classes", gs.d_count),
        violations.first().map(|&(x, y)| format!("{} D {}", a.display(om.word(x)), a.display(om.word(y)))),
    );
    let singleton = verify_singleton_h(&gs);
    let detail = format!("max H-class size {}", gs.max_h_size());
    if n <= 6 {
        checks.lemma("singleton_h", singleton, detail, None);
    } else {
        checks.conjecture("singleton_h", singleton, detail);
    }
    let lattice = crate::green::d_lattice(&gs);
    checks.lemma(
        "identity_class_maximum",
        lattice.maximum == Some(gs.d_class_of[om.identity]),
        format!("{} Hasse edges", lattice.edges.len()),
        None,
    );
    for (name, m) in [("reference_green_origami", om), ("reference_green_jones", &jones.monoid)] {
        if m.len() <= REFERENCE_GREEN_LIMIT {
            let g = compute_green(m)?;
            checks.lemma(name, green_matches_reference(m, &g), format!("{} elements", m.len()), None);
        }
    }

    let correspondence = verify_dclass_correspondence(&origami, &gs, &projection)?;
    checks.conjecture(
        "dclass_bijection",
        correspondence.bijection,
        format!("{} vs {} D-classes", correspondence.dclass_counts.origami, correspondence.dclass_counts.product),
    );
    checks.conjecture(
        "product_dclasses_are_onto_images",
        correspondence.every_product_class_hit_onto,
        format!("{} product D-classes", correspondence.dclass_counts.product),
    );

    Ok(DegreeReport {
        n,
        origami_order: om.len(),
        jones_order: jones.len(),
        seconds: start.elapsed().as_secs_f64(),
        checks: checks.0,
        correspondence,
    })
}

/// Runs [`verify_degree`] for each `n` in the range.
pub fn verify_range(ns: impl IntoIterator<Item = usize>, opts: &VerifyOptions) -> Result<Vec<DegreeReport>> {
    ns.into_iter().map(|n| verify_degree(n, opts)).collect()
}

/// Builds both monoids for a degree; shared by tests and the CLI.
pub fn build_pair(n: usize, opts: &VerifyOptions) -> Result<(OrigamiMonoid, JonesMonoid)> {
    Ok((build_monoid(n, &opts.limits, opts.enumeration)?, enumerate_jones(n)?))
}
