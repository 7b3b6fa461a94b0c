//! Subgroups `X ≤ W` and their coordinate components.
//!
//! The stabilizer `X_{Γ_δ}` of the partition `Γ_δ` is the set of elements
//! whose top fixes `δ`. Its generators are Schreier generators for the
//! coordinate action, computed directly on wreath elements, and the
//! `δ`-component is their image under `fh ↦ δf`. No step here enumerates
//! `X`; enumeration only appears in the report checks that are explicitly
//! capped.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::orbit::{self, Orbit};
use crate::perm::{GenGroup, Permutation};
use crate::wreath::{PiPoint, WreathContext, WreathElement};

#[derive(Debug, Clone)]
struct Coordinate {
    stabilizer_gens: Vec<WreathElement>,
    component: GenGroup,
}

/// A finitely generated subgroup of `Sym(Γ) wr Sym(Δ)` with its induced
/// coordinate action and per-coordinate components computed up front.
#[derive(Debug, Clone)]
pub struct WreathSubgroup {
    ctx: WreathContext,
    generators: Vec<WreathElement>,
    induced: GenGroup,
    delta_orbits: Vec<Vec<usize>>,
    coords: Vec<Coordinate>,
}

fn on_coordinate(delta: &usize, w: &WreathElement) -> usize {
    w.act_on_coordinate(*delta)
}

fn dedup_non_identity(perms: impl IntoIterator<Item = Permutation>) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    perms
        .into_iter()
        .filter(|p| !p.is_identity() && seen.insert(p.clone()))
        .collect()
}

impl WreathSubgroup {
    pub fn new(ctx: WreathContext, generators: Vec<WreathElement>) -> Result<Self> {
        for g in &generators {
            ctx.ensure_same(&g.context())?;
        }
        let induced = GenGroup::new(
            ctx.m(),
            generators.iter().map(WreathElement::induced_top).collect(),
        )?;
        let delta_orbits = induced.orbits();
        let identity = WreathElement::identity(&ctx);
        let coords = (0..ctx.m())
            .map(|delta| {
                let o = orbit::orbit(&generators, identity.clone(), delta, on_coordinate);
                let stabilizer_gens = orbit::schreier_generators(&generators, &o, on_coordinate);
                let images =
                    dedup_non_identity(stabilizer_gens.iter().map(|w| w.base_entry(delta).clone()));
                let component = GenGroup::new(ctx.q(), images).expect("degree q");
                Coordinate {
                    stabilizer_gens,
                    component,
                }
            })
            .collect();
        Ok(WreathSubgroup {
            ctx,
            generators,
            induced,
            delta_orbits,
            coords,
        })
    }

    pub fn context(&self) -> &WreathContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[WreathElement] {
        &self.generators
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::identity(&self.ctx)
    }

    /// The group `H` induced on `Δ`.
    pub fn induced_group(&self) -> &GenGroup {
        &self.induced
    }

    /// Orbits on `Δ`, each sorted, ordered by minimum.
    pub fn delta_orbits(&self) -> &[Vec<usize>] {
        &self.delta_orbits
    }

    /// Index into [`delta_orbits`](Self::delta_orbits) of the orbit holding `delta`.
    pub fn orbit_index(&self, delta: usize) -> usize {
        self.delta_orbits
            .iter()
            .position(|o| o.contains(&delta))
            .expect("orbits partition Δ")
    }

    /// Minimum index of each orbit.
    pub fn representatives(&self) -> Vec<usize> {
        self.delta_orbits.iter().map(|o| o[0]).collect()
    }

    pub fn is_delta_transitive(&self) -> bool {
        self.delta_orbits.len() == 1
    }

    fn check_delta(&self, delta: usize) -> Result<()> {
        if delta >= self.ctx.m() {
            return Err(Error::invalid(format!(
                "coordinate {delta} out of range for m={}",
                self.ctx.m()
            )));
        }
        Ok(())
    }

    /// Generators of `X_{Γ_δ}`, each with top fixing `δ`.
    pub fn partition_stabilizer_gens(&self, delta: usize) -> Result<&[WreathElement]> {
        self.check_delta(delta)?;
        Ok(&self.coords[delta].stabilizer_gens)
    }

    /// The `δ`-component `X^{Γ_δ} ≤ Sym(Γ)`.
    pub fn component(&self, delta: usize) -> Result<&GenGroup> {
        self.check_delta(delta)?;
        Ok(&self.coords[delta].component)
    }

    pub fn component_witness_orbit(
        &self,
        delta: usize,
        gamma0: usize,
    ) -> Result<ComponentWitnessOrbit> {
        self.check_delta(delta)?;
        if gamma0 >= self.ctx.q() {
            return Err(Error::invalid(format!(
                "symbol {gamma0} out of range for q={}",
                self.ctx.q()
            )));
        }
        let gens = &self.coords[delta].stabilizer_gens;
        let orbit = orbit::orbit(gens, self.identity(), gamma0, |&g, w: &WreathElement| {
            w.base_entry(delta).apply(g)
        });
        Ok(ComponentWitnessOrbit { delta, orbit })
    }

    /// All elements, by closure; fails with `Overflow` above `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<BTreeSet<WreathElement>> {
        orbit::closure(&self.generators, self.identity(), cap)
    }

    /// Orbit of `φ` on `Π`, in BFS order.
    pub fn pi_orbit(&self, phi: &PiPoint) -> Result<Vec<PiPoint>> {
        self.ctx.check_point(phi)?;
        let o = orbit::orbit(&self.generators, self.identity(), phi.clone(), |p, w| {
            w.act(p)
        });
        Ok(o.points().cloned().collect())
    }

    /// Orbits on `Π` in rank order of their first point; needs `q^m <= cap`.
    pub fn pi_orbits(&self, cap: usize) -> Result<Vec<Vec<PiPoint>>> {
        let points = self.ctx.points(cap)?;
        let mut seen = vec![false; points.len()];
        let mut out = Vec::new();
        for p in &points {
            if seen[self.ctx.rank(p)] {
                continue;
            }
            let mut o = self.pi_orbit(p)?;
            o.sort();
            for x in &o {
                seen[self.ctx.rank(x)] = true;
            }
            out.push(o);
        }
        Ok(out)
    }

    pub fn is_transitive_on_pi(&self, cap: usize) -> Result<bool> {
        let n = self
            .ctx
            .pi_size()
            .filter(|&n| n <= cap)
            .ok_or(Error::Overflow { cap })?;
        Ok(self.pi_orbit(&self.ctx.unrank(0))?.len() == n)
    }

    /// `X` as a permutation group on `Π` in rank order.
    pub fn as_pi_group(&self, cap: usize) -> Result<GenGroup> {
        let n = self
            .ctx
            .pi_size()
            .filter(|&n| n <= cap)
            .ok_or(Error::Overflow { cap })?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.as_pi_permutation(cap))
            .collect::<Result<Vec<_>>>()?;
        GenGroup::new(n, gens)
    }

    /// Generator-wise conjugate `x⁻¹ X x`.
    pub fn conjugate_by(&self, x: &WreathElement) -> Result<WreathSubgroup> {
        self.ctx.ensure_same(&x.context())?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(x))
            .collect::<Result<Vec<_>>>()?;
        WreathSubgroup::new(self.ctx, gens)
    }
}

/// Orbit of a symbol under the `δ`-component, with each witness taken from
/// `X_{Γ_δ}` itself rather than from `Sym(Γ)`.
#[derive(Debug, Clone)]
pub struct ComponentWitnessOrbit {
    delta: usize,
    orbit: Orbit<usize, WreathElement>,
}

impl ComponentWitnessOrbit {
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn base_point(&self) -> usize {
        *self.orbit.base()
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.orbit.points().copied()
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, gamma: usize) -> bool {
        self.orbit.contains(&gamma)
    }

    /// Element of `X_{Γ_δ}` whose `δ` entry maps the base point to `gamma`.
    pub fn witness(&self, gamma: usize) -> Option<&WreathElement> {
        self.orbit.witness(&gamma)
    }
}

/// Restriction of a coordinate-invariant wreath element to `coords`,
/// renumbered to `0..coords.len()` in list order.
fn restrict(w: &WreathElement, coords: &[usize], index_of: &[Option<usize>]) -> WreathElement {
    let base = coords.iter().map(|&d| w.base_entry(d).clone()).collect();
    let images = coords
        .iter()
        .map(|&d| index_of[w.act_on_coordinate(d)].expect("coords invariant under w"))
        .collect();
    WreathElement::new(
        base,
        Permutation::from_images(images).expect("bijection on invariant set"),
    )
    .expect("consistent degrees")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    /// `Δ_0` and `Δ_1` in natural order; position `j` is renumbered to `j`.
    pub delta0: Vec<usize>,
    pub delta1: Vec<usize>,
    /// `φ ↦ (φ|Δ0, φ|Δ1)` is a bijection `Π → Ω_0 × Ω_1`.
    pub bijective: bool,
    /// `x ↦ (x_0, x_1)` is injective on `X`.
    pub injective: bool,
    /// `x ↦ (x_0, x_1)` is multiplicative (checked on element × generator).
    pub homomorphism: bool,
    /// `(φx)|Δi = (φ|Δi) x_i` for all `φ`, `x`.
    pub equivariant: bool,
    /// `δ`-components of `X` and of the relevant factor agree as sets.
    pub components_preserved: bool,
    pub group_order: usize,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.injective
            && self.homomorphism
            && self.equivariant
            && self.components_preserved
    }
}

#[derive(Debug, Clone)]
pub struct Split {
    pub part0: WreathSubgroup,
    pub part1: WreathSubgroup,
    pub report: SplitReport,
}

fn closure_of(group: &GenGroup, cap: usize) -> Result<BTreeSet<Permutation>> {
    group.enumerate(cap)
}

/// Splits `X` along an invariant proper subset `Δ_0` of the coordinates and
/// certifies the resulting permutational embedding by enumeration under `cap`.
pub fn split(x: &WreathSubgroup, delta0: &[usize], cap: usize) -> Result<Split> {
    let ctx = *x.context();
    let m = ctx.m();
    let mut in0 = vec![false; m];
    for &d in delta0 {
        if d >= m {
            return Err(Error::invalid(format!(
                "coordinate {d} out of range for m={m}"
            )));
        }
        if in0[d] {
            return Err(Error::invalid(format!("coordinate {d} listed twice")));
        }
        in0[d] = true;
    }
    let part0: Vec<usize> = (0..m).filter(|&d| in0[d]).collect();
    let part1: Vec<usize> = (0..m).filter(|&d| !in0[d]).collect();
    if part0.is_empty() || part1.is_empty() {
        return Err(Error::invalid(
            "delta0 must be a nonempty proper subset of the coordinates",
        ));
    }
    for (k, g) in x.generators().iter().enumerate() {
        if part0.iter().any(|&d| !in0[g.act_on_coordinate(d)]) {
            return Err(Error::invalid(format!(
                "delta0 is not invariant: generator {k} moves it"
            )));
        }
    }

    let index_map = |coords: &[usize]| {
        let mut idx = vec![None; m];
        for (j, &d) in coords.iter().enumerate() {
            idx[d] = Some(j);
        }
        idx
    };
    let idx0 = index_map(&part0);
    let idx1 = index_map(&part1);
    let ctx0 = WreathContext::new(ctx.q(), part0.len())?;
    let ctx1 = WreathContext::new(ctx.q(), part1.len())?;
    let x0 = WreathSubgroup::new(
        ctx0,
        x.generators()
            .iter()
            .map(|g| restrict(g, &part0, &idx0))
            .collect(),
    )?;
    let x1 = WreathSubgroup::new(
        ctx1,
        x.generators()
            .iter()
            .map(|g| restrict(g, &part1, &idx1))
            .collect(),
    )?;

    let points = ctx.points(cap)?;
    let pairs: BTreeSet<(PiPoint, PiPoint)> = points
        .iter()
        .map(|p| (p.restrict(&part0), p.restrict(&part1)))
        .collect();
    let omega = ctx0.pi_size().zip(ctx1.pi_size()).map(|(a, b)| a * b);
    let bijective = pairs.len() == points.len() && omega == Some(points.len());

    let elements: Vec<WreathElement> = x.enumerate(cap)?.into_iter().collect();
    let images: Vec<(WreathElement, WreathElement)> = elements
        .iter()
        .map(|e| (restrict(e, &part0, &idx0), restrict(e, &part1, &idx1)))
        .collect();
    let injective = images.iter().collect::<BTreeSet<_>>().len() == elements.len();

    // Checking x·g for every element x and generator g is enough: any product
    // xy expands into generator steps.
    let gen_images: Vec<(WreathElement, WreathElement)> = x
        .generators()
        .iter()
        .map(|g| (restrict(g, &part0, &idx0), restrict(g, &part1, &idx1)))
        .collect();
    let homomorphism = elements.iter().zip(&images).all(|(a, (a0, a1))| {
        x.generators().iter().zip(&gen_images).all(|(g, (g0, g1))| {
            let ag = a.multiply(g).expect("same context");
            restrict(&ag, &part0, &idx0) == a0.multiply(g0).expect("ctx0")
                && restrict(&ag, &part1, &idx1) == a1.multiply(g1).expect("ctx1")
        })
    });

    let equivariant = images.iter().zip(&elements).all(|((e0, e1), e)| {
        points.iter().all(|p| {
            let moved = e.act(p);
            moved.restrict(&part0) == e0.act(&p.restrict(&part0))
                && moved.restrict(&part1) == e1.act(&p.restrict(&part1))
        })
    });

    let mut components_preserved = true;
    for (part, sub) in [(&part0, &x0), (&part1, &x1)] {
        for (j, &d) in part.iter().enumerate() {
            let whole = closure_of(x.component(d)?, cap)?;
            let factor = closure_of(sub.component(j)?, cap)?;
            components_preserved &= whole == factor;
        }
    }

    let report = SplitReport {
        delta0: part0,
        delta1: part1,
        bijective,
        injective,
        homomorphism,
        equivariant,
        components_preserved,
        group_order: elements.len(),
    };
    Ok(Split {
        part0: x0,
        part1: x1,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveComponentsReport {
    pub pi_transitive: bool,
    pub delta_transitive: bool,
    /// Transitivity of `X^{Γ_δ}` on `Γ`, per coordinate.
    pub components_transitive: Vec<bool>,
    /// Transitivity of the components of `X ∩ B`, computed only when `X` is
    /// transitive on both `Π` and `Δ`.
    pub kernel_components_transitive: Option<Vec<bool>>,
    pub group_order: Option<usize>,
}

impl TransitiveComponentsReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.pi_transitive
    }

    /// True if a transitive `X` has an intransitive component, or an
    /// intransitive component of `X ∩ B` when `X` is also transitive on `Δ`.
    pub fn violation(&self) -> bool {
        if !self.pi_transitive {
            return false;
        }
        let comps = self.components_transitive.iter().any(|t| !t);
        let kernel = self
            .kernel_components_transitive
            .as_ref()
            .is_some_and(|v| v.iter().any(|t| !t));
        comps || kernel
    }
}

/// Checks, for a given `X`, that transitivity on `Π` forces every component
/// (and, with `Δ`-transitivity, every component of `X ∩ B`) to be transitive.
pub fn check_transitive_components(
    x: &WreathSubgroup,
    cap: usize,
) -> Result<TransitiveComponentsReport> {
    let ctx = x.context();
    let pi_transitive = x.is_transitive_on_pi(cap)?;
    let delta_transitive = x.is_delta_transitive();
    let components_transitive = (0..ctx.m())
        .map(|d| x.component(d).map(GenGroup::is_transitive))
        .collect::<Result<Vec<_>>>()?;
    let (kernel_components_transitive, group_order) = if pi_transitive && delta_transitive {
        let elements = x.enumerate(cap)?;
        let kernel: Vec<&WreathElement> = elements.iter().filter(|e| e.is_base()).collect();
        let per_coord = (0..ctx.m())
            .map(|d| {
                let gens = dedup_non_identity(kernel.iter().map(|e| e.base_entry(d).clone()));
                GenGroup::new(ctx.q(), gens).map(|g| g.is_transitive())
            })
            .collect::<Result<Vec<_>>>()?;
        (Some(per_coord), Some(elements.len()))
    } else {
        (None, None)
    };
    Ok(TransitiveComponentsReport {
        pi_transitive,
        delta_transitive,
        components_transitive,
        kernel_components_transitive,
        group_order,
    })
}
