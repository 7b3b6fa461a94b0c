//! Elements of `W = Sym(Γ) wr Sym(Δ)` and the product action on
//! `Π = Func(Δ, Γ)`, with `Γ = {0..q-1}` and `Δ = {0..m-1}`.
//!
//! An element `fh` is stored as its base function (one permutation of `Γ`
//! per coordinate) and its top permutation of `Δ`. It acts on a point `φ` by
//! moving the value at coordinate `δ`, already permuted by `δf`, to
//! coordinate `δh`. Multiplication is the unique rule that makes this a right
//! action.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, GroupElement, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WreathContext {
    q: usize,
    m: usize,
}

impl WreathContext {
    pub fn new(q: usize, m: usize) -> Result<Self> {
        if q == 0 || m == 0 {
            return Err(Error::invalid(format!(
                "alphabet and coordinate sizes must be positive (q={q}, m={m})"
            )));
        }
        Ok(WreathContext { q, m })
    }

    /// `|Γ|`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// `|Δ|`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `q^m`, if it fits in a `usize`.
    pub fn pi_size(&self) -> Option<usize> {
        self.q.checked_pow(u32::try_from(self.m).ok()?)
    }

    /// `(q!)^m · m!`, if it fits in a `u128`.
    pub fn wreath_order(&self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        let base = fact(self.q)?.checked_pow(u32::try_from(self.m).ok()?)?;
        base.checked_mul(fact(self.m)?)
    }

    pub(crate) fn ensure_same(&self, other: &WreathContext) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch {
                q1: self.q,
                m1: self.m,
                q2: other.q,
                m2: other.m,
            });
        }
        Ok(())
    }

    /// Position of `φ` in the lexicographic order of `Π`, coordinate 0 most
    /// significant.
    pub fn rank(&self, phi: &PiPoint) -> usize {
        phi.values.iter().fold(0, |acc, &v| acc * self.q + v)
    }

    pub fn unrank(&self, mut index: usize) -> PiPoint {
        let mut values = vec![0; self.m];
        for slot in values.iter_mut().rev() {
            *slot = index % self.q;
            index /= self.q;
        }
        PiPoint { values }
    }

    /// Every point of `Π` in rank order, provided `q^m <= cap`.
    pub fn points(&self, cap: usize) -> Result<Vec<PiPoint>> {
        let n = self
            .pi_size()
            .filter(|&n| n <= cap)
            .ok_or(Error::Overflow { cap })?;
        Ok((0..n).map(|i| self.unrank(i)).collect())
    }

    pub fn check_point(&self, phi: &PiPoint) -> Result<()> {
        if phi.values.len() != self.m {
            return Err(Error::invalid(format!(
                "point {phi} has length {}, expected {}",
                phi.values.len(),
                self.m
            )));
        }
        if let Some(&v) = phi.values.iter().find(|&&v| v >= self.q) {
            return Err(Error::invalid(format!(
                "entry {v} of {phi} is not below q={}",
                self.q
            )));
        }
        Ok(())
    }

    /// Generators of the full wreath product: `Sym(Γ)` on coordinate 0 plus
    /// `Sym(Δ)` on top. Conjugation by the top group spreads the base part to
    /// every coordinate.
    pub fn full_generators(&self) -> Vec<WreathElement> {
        let mut gens = Vec::new();
        for g in crate::perm::GenGroup::symmetric(self.q).generators() {
            let mut base = vec![Permutation::identity(self.q); self.m];
            base[0] = g.clone();
            gens.push(WreathElement::from_base(base).expect("consistent degrees"));
        }
        for h in crate::perm::GenGroup::symmetric(self.m).generators() {
            gens.push(WreathElement::from_top(self.q, h.clone()));
        }
        gens
    }
}

impl fmt::Display for WreathContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.q, self.m)
    }
}

/// A point of `Π`: entry `δ` is the value `δφ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiPoint {
    values: Vec<usize>,
}

impl PiPoint {
    pub fn new(ctx: &WreathContext, values: Vec<usize>) -> Result<Self> {
        let p = PiPoint { values };
        ctx.check_point(&p)?;
        Ok(p)
    }

    /// Unvalidated constructor; callers must check against a context.
    pub fn from_values(values: Vec<usize>) -> Self {
        PiPoint { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, delta: usize) -> usize {
        self.values[delta]
    }

    pub fn hamming_distance(&self, other: &PiPoint) -> usize {
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Restriction to the listed coordinates, renumbered in list order.
    pub fn restrict(&self, coords: &[usize]) -> PiPoint {
        PiPoint {
            values: coords.iter().map(|&d| self.values[d]).collect(),
        }
    }
}

impl fmt::Display for PiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.values.iter().join(","))
    }
}

impl FromStr for PiPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad point entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PiPoint { values })
    }
}

/// The constant function `δ ↦ γ`.
pub fn constant_point(ctx: &WreathContext, gamma: usize) -> Result<PiPoint> {
    PiPoint::new(ctx, vec![gamma; ctx.m()])
}

/// The `γ`-part of the partition `Γ_δ`: all points whose `δ` entry is `γ`.
pub fn block(ctx: &WreathContext, delta: usize, gamma: usize, cap: usize) -> Result<Vec<PiPoint>> {
    Ok(ctx
        .points(cap)?
        .into_iter()
        .filter(|p| p.get(delta) == gamma)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    base: Vec<Permutation>,
    top: Permutation,
}

impl WreathElement {
    pub fn new(base: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::invalid("base must have at least one coordinate"));
        }
        if base.len() != top.degree() {
            return Err(Error::invalid(format!(
                "base has {} entries but top has degree {}",
                base.len(),
                top.degree()
            )));
        }
        let q = base[0].degree();
        if let Some(bad) = base.iter().find(|p| p.degree() != q) {
            return Err(Error::DegreeMismatch {
                left: q,
                right: bad.degree(),
            });
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(ctx: &WreathContext) -> Self {
        WreathElement {
            base: vec![Permutation::identity(ctx.q()); ctx.m()],
            top: Permutation::identity(ctx.m()),
        }
    }

    pub fn from_base(base: Vec<Permutation>) -> Result<Self> {
        let m = base.len();
        if m == 0 {
            return Err(Error::invalid("base must have at least one coordinate"));
        }
        WreathElement::new(base, Permutation::identity(m))
    }

    pub fn from_top(q: usize, top: Permutation) -> Self {
        WreathElement {
            base: vec![Permutation::identity(q); top.degree()],
            top,
        }
    }

    pub fn context(&self) -> WreathContext {
        WreathContext {
            q: self.base[0].degree(),
            m: self.top.degree(),
        }
    }

    pub fn base(&self) -> &[Permutation] {
        &self.base
    }

    /// `δf`.
    pub fn base_entry(&self, delta: usize) -> &Permutation {
        &self.base[delta]
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    /// Projection onto `Sym(Δ)`; a homomorphism whose kernel is the base group.
    pub fn induced_top(&self) -> Permutation {
        self.top.clone()
    }

    pub fn is_base(&self) -> bool {
        self.top.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.base.iter().all(Permutation::is_identity)
    }

    /// `self · other`: top `h_a h_b`, base entry at `δ` is `(δ f_a)(δ h_a f_b)`.
    pub fn multiply(&self, other: &WreathElement) -> Result<WreathElement> {
        self.context().ensure_same(&other.context())?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &WreathElement) -> WreathElement {
        let base = self
            .base
            .iter()
            .enumerate()
            .map(|(delta, f)| f.then(&other.base[self.top.apply(delta)]))
            .collect();
        WreathElement {
            base,
            top: self.top.then(&other.top),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let mut base = vec![Permutation::identity(self.base[0].degree()); self.base.len()];
        for (delta, f) in self.base.iter().enumerate() {
            base[self.top.apply(delta)] = f.inverse();
        }
        WreathElement {
            base,
            top: self.top.inverse(),
        }
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &WreathElement) -> Result<WreathElement> {
        self.context().ensure_same(&x.context())?;
        Ok(x.inverse().mul_unchecked(self).mul_unchecked(x))
    }

    pub fn apply_point(&self, phi: &PiPoint) -> Result<PiPoint> {
        self.context().check_point(phi)?;
        Ok(self.act(phi))
    }

    /// Product action without validation: `(φg)` at `δh` is `(δφ)(δf)`.
    pub(crate) fn act(&self, phi: &PiPoint) -> PiPoint {
        let mut values = vec![0; phi.values.len()];
        for (delta, &v) in phi.values.iter().enumerate() {
            values[self.top.apply(delta)] = self.base[delta].apply(v);
        }
        PiPoint { values }
    }

    /// Image of the partition index `δ` under the induced action.
    pub fn act_on_coordinate(&self, delta: usize) -> usize {
        self.top.apply(delta)
    }

    /// The permutation of `Π` in rank order that this element induces.
    pub fn as_pi_permutation(&self, cap: usize) -> Result<Permutation> {
        let ctx = self.context();
        let points = ctx.points(cap)?;
        let images = points.iter().map(|p| ctx.rank(&self.act(p))).collect();
        Permutation::from_images(images)
    }
}

impl GroupElement for WreathElement {
    fn compose(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn inverse(&self) -> Self {
        WreathElement::inverse(self)
    }

    fn is_identity(&self) -> bool {
        WreathElement::is_identity(self)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base=[{}] top={}", self.base.iter().join(";"), self.top)
    }
}

impl FromStr for WreathElement {
    type Err = Error;

    /// Parses `base=[p0;p1;...] top=p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("base=[")
            .ok_or_else(|| Error::invalid(format!("expected `base=[...] top=[...]`, got {s:?}")))?;
        let (base_part, top_part) = rest
            .split_once("top=")
            .ok_or_else(|| Error::invalid("missing `top=`"))?;
        let base_part = base_part
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| Error::invalid("unterminated base list"))?;
        let base = base_part
            .split(';')
            .map(str::parse::<Permutation>)
            .collect::<Result<Vec<_>>>()?;
        let top = top_part.parse::<Permutation>()?;
        WreathElement::new(base, top)
    }
}

/// A uniformly random element of the full wreath product.
pub fn random_element<R: rand::Rng + ?Sized>(ctx: &WreathContext, rng: &mut R) -> WreathElement {
    use rand::seq::SliceRandom;
    let mut perm = |n: usize| {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation::from_images(images).expect("shuffle is a bijection")
    };
    let base = (0..ctx.m()).map(|_| perm(ctx.q())).collect();
    WreathElement {
        base,
        top: perm(ctx.m()),
    }
}

/// Every element of the full wreath product, in an order fixed by the
/// lexicographic enumeration of `Sym(Δ)` and `Sym(Γ)`.
pub fn enumerate_full(ctx: &WreathContext, cap: usize) -> Result<Vec<WreathElement>> {
    match ctx.wreath_order() {
        Some(n) if n <= cap as u128 => {}
        _ => return Err(Error::Overflow { cap }),
    }
    let sym_gamma: Vec<Permutation> = all_permutations(ctx.q()).collect();
    let mut out = Vec::new();
    for top in all_permutations(ctx.m()) {
        for base in (0..ctx.m())
            .map(|_| sym_gamma.iter().cloned())
            .multi_cartesian_product()
        {
            out.push(WreathElement {
                base,
                top: top.clone(),
            });
        }
    }
    Ok(out)
}

/// Number of elements of the full wreath product fixing `φ`, by exhaustive
/// enumeration.
pub fn stabilizer_order_oracle(ctx: &WreathContext, phi: &PiPoint, cap: usize) -> Result<u128> {
    ctx.check_point(phi)?;
    let all = enumerate_full(ctx, cap)?;
    Ok(all.iter().filter(|w| &w.act(phi) == phi).count() as u128)
}
