//! Conjugating a subgroup `X ≤ W` by a base element so that its components
//! are constant along every `Δ`-orbit, and the resulting embedding
//! `X^x ≤ G wr H` when `X` is transitive on `Δ`.
//!
//! For each orbit with representative `δ_i` we pick `t_δ ∈ X` carrying
//! coordinate `δ_i` to `δ` (the BFS witness of the coordinate action) and set
//! `δx = (δ_i f_δ)⁻¹`, where `δ_i f_δ` is the base entry of `t_δ` at `δ_i`.
//! Optionally `t_δ` is first premultiplied by some `s_δ ∈ X_{Γ_{δ_i}}` so
//! that `δ_i f_δ` fixes `δφ`; then `x` fixes `φ`.

use std::collections::btree_map::{BTreeMap, Entry};

use crate::components::WreathSubgroup;
use crate::error::{Error, Hypothesis, Result};
use crate::perm::orbit;
use crate::perm::GenGroup;
use crate::wreath::{PiPoint, WreathElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    representatives: Vec<usize>,
    orbit_of: Vec<usize>,
    elements: Vec<WreathElement>,
}

impl Transversal {
    /// One representative per `Δ`-orbit, in orbit order.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative_of(&self, delta: usize) -> usize {
        self.representatives[self.orbit_of[delta]]
    }

    /// `t_δ`.
    pub fn element(&self, delta: usize) -> &WreathElement {
        &self.elements[delta]
    }

    /// `δ_i f_δ`: the base entry of `t_δ` at the representative.
    pub fn representative_entry(&self, delta: usize) -> &crate::perm::Permutation {
        self.elements[delta].base_entry(self.representative_of(delta))
    }
}

/// Transversal with the minimum of each orbit as its representative.
pub fn build_transversal(x: &WreathSubgroup) -> Transversal {
    build_transversal_with(x, &x.representatives()).expect("minimum representatives are valid")
}

/// Transversal with caller-chosen representatives, one per orbit in the
/// order of [`WreathSubgroup::delta_orbits`].
pub fn build_transversal_with(
    x: &WreathSubgroup,
    representatives: &[usize],
) -> Result<Transversal> {
    let orbits = x.delta_orbits();
    if representatives.len() != orbits.len() {
        return Err(Error::invalid(format!(
            "expected {} orbit representatives, got {}",
            orbits.len(),
            representatives.len()
        )));
    }
    let m = x.context().m();
    let mut orbit_of = vec![0; m];
    let mut elements = vec![x.identity(); m];
    for (i, (orb, &rep)) in orbits.iter().zip(representatives).enumerate() {
        if !orb.contains(&rep) {
            return Err(Error::invalid(format!(
                "representative {rep} is not in orbit {orb:?}"
            )));
        }
        let o = orbit::orbit(
            x.generators(),
            x.identity(),
            rep,
            |&d, w: &WreathElement| w.act_on_coordinate(d),
        );
        for (&delta, t) in o.iter() {
            orbit_of[delta] = i;
            elements[delta] = t.clone();
        }
    }
    Ok(Transversal {
        representatives: representatives.to_vec(),
        orbit_of,
        elements,
    })
}

/// Premultiplies each `t_δ` by an element of `X_{Γ_{δ_i}}` so that its
/// representative entry fixes `δφ`. Every representative's component must be
/// transitive on `Γ`.
pub fn adjust_transversal(
    x: &WreathSubgroup,
    t: &Transversal,
    phi: &PiPoint,
) -> Result<Transversal> {
    x.context().check_point(phi)?;
    for &rep in &t.representatives {
        if !x.component(rep)?.is_transitive() {
            return Err(Hypothesis::ComponentIntransitive { delta: rep }.into());
        }
    }
    let mut adjusted = t.clone();
    let mut witness_orbits = BTreeMap::new();
    for delta in 0..x.context().m() {
        let rep = t.representative_of(delta);
        let point = phi.get(delta);
        let entry = t.representative_entry(delta);
        if entry.apply(point) == point {
            continue;
        }
        // Need s with (point)(δ_i s) = point·entry⁻¹, so the product entry fixes point.
        let target = entry.inverse().apply(point);
        let orbit = match witness_orbits.entry((rep, point)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(x.component_witness_orbit(rep, point)?),
        };
        let s = orbit.witness(target).ok_or_else(|| {
            Error::Internal(format!(
                "no witness mapping {point} to {target} in transitive component at {rep}"
            ))
        })?;
        let new_t = s.multiply(t.element(delta))?;
        if new_t.base_entry(rep).apply(point) != point || new_t.act_on_coordinate(rep) != delta {
            return Err(Error::Internal(format!(
                "adjusted t_{delta} lost its defining property"
            )));
        }
        adjusted.elements[delta] = new_t;
    }
    Ok(adjusted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationCertificate {
    pub x_in_base: bool,
    /// Components of `X^x` agree (as groups, by sifting) along each orbit.
    pub components_constant: bool,
    pub delta_orbits_preserved: bool,
    /// `φx = φ`, when a point was requested.
    pub fixes_point: Option<bool>,
}

impl NormalizationCertificate {
    pub fn passed(&self) -> bool {
        self.x_in_base
            && self.components_constant
            && self.delta_orbits_preserved
            && self.fixes_point != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct NormalizationResult {
    pub x: WreathElement,
    pub transversal: Transversal,
    pub conjugated: WreathSubgroup,
    /// Component of `X` at each orbit representative; equal to every
    /// component of `X^x` on that orbit.
    pub common_components: Vec<GenGroup>,
    pub fixed_point: Option<PiPoint>,
    pub certificate: NormalizationCertificate,
}

impl NormalizationResult {
    pub fn representatives(&self) -> &[usize] {
        self.transversal.representatives()
    }
}

pub fn normalizing_element(
    x: &WreathSubgroup,
    phi: Option<&PiPoint>,
) -> Result<NormalizationResult> {
    normalize_with_representatives(x, &x.representatives(), phi)
}

pub fn normalize_with_representatives(
    x: &WreathSubgroup,
    representatives: &[usize],
    phi: Option<&PiPoint>,
) -> Result<NormalizationResult> {
    let ctx = *x.context();
    if let Some(phi) = phi {
        ctx.check_point(phi)?;
        for delta in 0..ctx.m() {
            if !x.component(delta)?.is_transitive() {
                return Err(Hypothesis::ComponentIntransitive { delta }.into());
            }
        }
    }
    let mut transversal = build_transversal_with(x, representatives)?;
    if let Some(phi) = phi {
        transversal = adjust_transversal(x, &transversal, phi)?;
    }
    let base = (0..ctx.m())
        .map(|delta| transversal.representative_entry(delta).inverse())
        .collect();
    let element = WreathElement::from_base(base)?;
    let conjugated = x.conjugate_by(&element)?;

    let mut components_constant = true;
    for delta in 0..ctx.m() {
        let rep = transversal.representative_of(delta);
        components_constant &= conjugated
            .component(delta)?
            .same_group(conjugated.component(rep)?)?;
    }
    let certificate = NormalizationCertificate {
        x_in_base: element.induced_top().is_identity(),
        components_constant,
        delta_orbits_preserved: conjugated.delta_orbits() == x.delta_orbits(),
        fixes_point: phi.map(|p| &element.act(p) == p),
    };
    let common_components = transversal
        .representatives()
        .iter()
        .map(|&rep| x.component(rep).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalizationResult {
        x: element,
        transversal,
        conjugated,
        common_components,
        fixed_point: phi.cloned(),
        certificate,
    })
}

/// A generator of the conjugated group that failed to sift: a base entry at
/// `coordinate`, or the top when `coordinate` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateFailure {
    pub generator: usize,
    pub coordinate: Option<usize>,
}

/// Sifts every base entry of every generator into `g` and every top into `h`.
pub fn certify_in_wreath(
    generators: &[WreathElement],
    g: &GenGroup,
    h: &GenGroup,
) -> Result<Vec<CertificateFailure>> {
    let mut failures = Vec::new();
    for (k, gen) in generators.iter().enumerate() {
        for (delta, entry) in gen.base().iter().enumerate() {
            if !g.contains(entry)? {
                failures.push(CertificateFailure {
                    generator: k,
                    coordinate: Some(delta),
                });
            }
        }
        if !h.contains(gen.top())? {
            failures.push(CertificateFailure {
                generator: k,
                coordinate: None,
            });
        }
    }
    Ok(failures)
}

#[derive(Debug, Clone)]
pub struct Embedding {
    /// `X^{Γ_{δ1}}`.
    pub g: GenGroup,
    /// Group induced by `X` on `Δ`.
    pub h: GenGroup,
    pub delta1: usize,
    pub normalization: NormalizationResult,
    pub failures: Vec<CertificateFailure>,
}

impl Embedding {
    pub fn x(&self) -> &WreathElement {
        &self.normalization.x
    }

    pub fn conjugated(&self) -> &WreathSubgroup {
        &self.normalization.conjugated
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.normalization.certificate.passed()
    }
}

/// For `X` transitive on `Δ`, finds `x ∈ B` with `X^x ≤ G wr H` where `G` is
/// the component at `delta1`; `x` also fixes `φ` when one is given.
pub fn embed_in_wreath(
    x: &WreathSubgroup,
    delta1: usize,
    phi: Option<&PiPoint>,
) -> Result<Embedding> {
    let g = x.component(delta1)?.clone();
    if !x.is_delta_transitive() {
        return Err(Hypothesis::NotDeltaTransitive.into());
    }
    if phi.is_some() && !g.is_transitive() {
        return Err(Hypothesis::ComponentIntransitive { delta: delta1 }.into());
    }
    let normalization = normalize_with_representatives(x, &[delta1], phi)?;
    let h = x.induced_group().clone();
    let failures = certify_in_wreath(normalization.conjugated.generators(), &g, &h)?;
    Ok(Embedding {
        g,
        h,
        delta1,
        normalization,
        failures,
    })
}

pub fn conjugate_subgroup(x: &WreathSubgroup, element: &WreathElement) -> Result<WreathSubgroup> {
    x.conjugate_by(element)
}
