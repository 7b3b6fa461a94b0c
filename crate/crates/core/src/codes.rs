//! Codes in the Hamming graph `H(m, q)` and their canonicalization under a
//! supplied automorphism group.
//!
//! Given `X ≤ Aut(C)` transitive on coordinates with a 2-transitive
//! component, [`canonicalize`] builds `x = x1 x2 x3 x4` so that `C^x` contains
//! `(γ^m)` and `(ν^d, γ^(m-d))` while `X^x ≤ G wr K`.

use std::collections::BTreeSet;
use std::fmt;

use crate::components::WreathSubgroup;
use crate::error::{Error, Hypothesis, Result};
use crate::normalize::{certify_in_wreath, embed_in_wreath, CertificateFailure};
use crate::perm::{GenGroup, Permutation, Transitivity};
use crate::wreath::{constant_point, PiPoint, WreathContext, WreathElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    ctx: WreathContext,
    words: BTreeSet<PiPoint>,
}

impl Code {
    pub fn new(ctx: WreathContext, words: impl IntoIterator<Item = PiPoint>) -> Result<Self> {
        let words: BTreeSet<PiPoint> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::invalid("a code needs at least one word"));
        }
        for w in &words {
            ctx.check_point(w)?;
        }
        Ok(Code { ctx, words })
    }

    pub fn context(&self) -> &WreathContext {
        &self.ctx
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> &BTreeSet<PiPoint> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &PiPoint) -> bool {
        self.words.contains(w)
    }

    pub fn min_distance(&self) -> Result<usize> {
        self.closest_pair().map(|(_, _, d)| d)
    }

    /// First pair, in lexicographic order of `(a, b)` with `a < b`, at the
    /// minimum distance.
    pub fn closest_pair(&self) -> Result<(&PiPoint, &PiPoint, usize)> {
        let words: Vec<&PiPoint> = self.words.iter().collect();
        let mut best: Option<(&PiPoint, &PiPoint, usize)> = None;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let d = a.hamming_distance(b);
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((a, b, d));
                }
            }
        }
        best.ok_or(Error::Hypothesis(Hypothesis::SingletonCode))
    }

    pub fn is_automorphism(&self, w: &WreathElement) -> Result<bool> {
        self.ctx.ensure_same(&w.context())?;
        Ok(self.words.iter().all(|c| self.words.contains(&w.act(c))))
    }

    /// The equivalent code `C^w`.
    pub fn image(&self, w: &WreathElement) -> Result<Code> {
        self.ctx.ensure_same(&w.context())?;
        Ok(Code {
            ctx: self.ctx,
            words: self.words.iter().map(|c| w.act(c)).collect(),
        })
    }
}

impl fmt::Display for Code {
    /// Header `q m`, then one word per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.ctx)?;
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalizationResult {
    pub x1: WreathElement,
    pub x2: WreathElement,
    pub x3: WreathElement,
    pub x4: WreathElement,
    /// `x1 x2 x3 x4`.
    pub x: WreathElement,
    pub code: Code,
    pub conjugated: WreathSubgroup,
    pub g: GenGroup,
    /// Group induced by `X^x` on `Δ`, i.e. `H` conjugated by the top of `x3`.
    pub k: GenGroup,
    /// The codewords `a` and `b` of `C` that were pinned.
    pub source_pair: (PiPoint, PiPoint),
    /// `(γ^m)` and `(ν^d, γ^(m-d))`.
    pub pinned: (PiPoint, PiPoint),
    pub distance: usize,
    pub failures: Vec<CertificateFailure>,
    /// Every component of `X^x` equals `G`.
    pub components_equal_g: bool,
    /// Every generator of `X^x` is an automorphism of `C^x`.
    pub automorphisms_transported: bool,
}

impl CanonicalizationResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.components_equal_g
            && self.automorphisms_transported
            && self.code.contains(&self.pinned.0)
            && self.code.contains(&self.pinned.1)
    }
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Canonical form of `C` with respect to the supplied `X ≤ Aut(C)`, pinning
/// the symbols `gamma` and `nu`. The component at coordinate 0 plays the role
/// of `G`.
pub fn canonicalize(
    code: &Code,
    x: &WreathSubgroup,
    gamma: usize,
    nu: usize,
) -> Result<CanonicalizationResult> {
    let ctx = *code.context();
    ctx.ensure_same(x.context())?;
    let (m, q) = (ctx.m(), ctx.q());
    if gamma >= q || nu >= q {
        return Err(Error::invalid(format!("symbols must be below q={q}")));
    }
    if gamma == nu {
        return Err(Hypothesis::EqualSymbols(gamma).into());
    }
    let (a, b, d) = code.closest_pair()?;
    let (a, b) = (a.clone(), b.clone());
    for (index, g) in x.generators().iter().enumerate() {
        if !code.is_automorphism(g)? {
            return Err(Hypothesis::NotAutomorphism { index }.into());
        }
    }
    if !x.is_delta_transitive() {
        return Err(Hypothesis::NotDeltaTransitive.into());
    }
    if x.component(0)?.transitivity() != Transitivity::TwoTransitive {
        return Err(Hypothesis::ComponentNotTwoTransitive { delta: 0 }.into());
    }

    // Step 1: x1 in the product of the components, taking a to (γ^m).
    let mut base1 = Vec::with_capacity(m);
    for delta in 0..m {
        let orbit = x.component_witness_orbit(delta, a.get(delta))?;
        let witness = orbit
            .witness(gamma)
            .ok_or_else(|| internal(format!("component at {delta} does not reach {gamma}")))?;
        base1.push(witness.base_entry(delta).clone());
    }
    let x1 = WreathElement::from_base(base1)?;
    let all_gamma = constant_point(&ctx, gamma)?;
    if x1.act(&a) != all_gamma {
        return Err(internal("x1 does not carry a to the constant word"));
    }
    let after1 = x.conjugate_by(&x1)?;

    // Step 2: embed with (γ^m) held fixed.
    let embedding = embed_in_wreath(&after1, 0, Some(&all_gamma))?;
    let x2 = embedding.x().clone();
    if x2.act(&all_gamma) != all_gamma {
        return Err(internal("x2 moves the constant word"));
    }
    let g = embedding.g.clone();

    // Step 3: move the support of b·x1x2 onto {0..d-1}, order-preservingly.
    let b12 = x2.act(&x1.act(&b));
    let (support, rest): (Vec<usize>, Vec<usize>) =
        (0..m).partition(|&delta| b12.get(delta) != gamma);
    if support.len() != d {
        return Err(internal(format!(
            "expected {d} entries off gamma, found {}",
            support.len()
        )));
    }
    let mut images = vec![0; m];
    for (j, &delta) in support.iter().chain(&rest).enumerate() {
        images[delta] = j;
    }
    let x3 = WreathElement::from_top(q, Permutation::from_images(images)?);
    let b123 = x3.act(&b12);

    // Step 4: entries of G_γ sending each of the first d entries to ν.
    let stabilizer = g.stabilizer(gamma)?;
    let mut base4 = vec![Permutation::identity(q); m];
    for (delta, slot) in base4.iter_mut().enumerate().take(d) {
        let orbit = stabilizer.orbit_with_transversal(b123.get(delta))?;
        *slot = orbit
            .witness(&nu)
            .ok_or_else(|| {
                internal(format!(
                    "G_gamma does not carry {} to {nu}",
                    b123.get(delta)
                ))
            })?
            .clone();
    }
    let x4 = WreathElement::from_base(base4)?;

    let product = x1.multiply(&x2)?.multiply(&x3)?.multiply(&x4)?;
    let transformed = code.image(&product)?;
    let conjugated = x.conjugate_by(&product)?;
    let k = conjugated.induced_group().clone();
    let failures = certify_in_wreath(conjugated.generators(), &g, &k)?;
    let mut components_equal_g = true;
    for delta in 0..m {
        components_equal_g &= conjugated.component(delta)?.same_group(&g)?;
    }
    let mut automorphisms_transported = true;
    for gen in conjugated.generators() {
        automorphisms_transported &= transformed.is_automorphism(gen)?;
    }
    let second = PiPoint::new(
        &ctx,
        (0..m).map(|i| if i < d { nu } else { gamma }).collect(),
    )?;

    Ok(CanonicalizationResult {
        x1,
        x2,
        x3,
        x4,
        x: product,
        code: transformed,
        conjugated,
        g,
        k,
        source_pair: (a, b),
        pinned: (all_gamma, second),
        distance: d,
        failures,
        components_equal_g,
        automorphisms_transported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: usize, m: usize) -> WreathContext {
        WreathContext::new(q, m).unwrap()
    }

    fn word(v: &[usize]) -> PiPoint {
        PiPoint::from_values(v.to_vec())
    }

    fn code(q: usize, m: usize, words: &[&[usize]]) -> Code {
        Code::new(ctx(q, m), words.iter().map(|w| word(w))).unwrap()
    }

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn flip_all(m: usize) -> WreathElement {
        WreathElement::from_base(vec![p(&[1, 0]); m]).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(
            code(2, 3, &[&[0, 0, 0], &[1, 1, 1]])
                .min_distance()
                .unwrap(),
            3
        );
        assert_eq!(code(2, 2, &[&[0, 0], &[0, 1]]).min_distance().unwrap(), 1);
        assert_eq!(
            code(2, 2, &[&[0, 1]]).min_distance().unwrap_err(),
            Error::Hypothesis(Hypothesis::SingletonCode)
        );
    }

    #[test]
    fn hamming_7_4_distance_by_brute_force() {
        // Words c with Σ c_i (i+1) = 0 in F_2^3.
        let words: Vec<PiPoint> = (0u32..128)
            .map(|n| {
                (0..7)
                    .map(|i| ((n >> (6 - i)) & 1) as usize)
                    .collect::<Vec<_>>()
            })
            .filter(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 1)
                    .fold(0, |acc, (i, _)| acc ^ (i + 1))
                    == 0
            })
            .map(PiPoint::from_values)
            .collect();
        let c = Code::new(ctx(2, 7), words).unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.min_distance().unwrap(), 3);
    }

    #[test]
    fn automorphism_examples() {
        let c = code(2, 3, &[&[0, 0, 0], &[1, 1, 1]]);
        assert!(c
            .is_automorphism(&WreathElement::identity(&ctx(2, 3)))
            .unwrap());
        assert!(c.is_automorphism(&flip_all(3)).unwrap());
        let one = WreathElement::from_base(vec![p(&[1, 0]), p(&[0, 1]), p(&[0, 1])]).unwrap();
        assert!(!c.is_automorphism(&one).unwrap());
        assert!(c
            .is_automorphism(&flip_all(2).multiply(&flip_all(2)).unwrap())
            .is_err());
    }

    #[test]
    fn repetition_code() {
        let c = code(2, 3, &[&[0, 0, 0], &[1, 1, 1]]);
        let x = WreathSubgroup::new(
            ctx(2, 3),
            vec![
                flip_all(3),
                WreathElement::from_top(2, p(&[1, 2, 0])),
                WreathElement::from_top(2, p(&[1, 0, 2])),
            ],
        )
        .unwrap();
        let r = canonicalize(&c, &x, 0, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.distance, 3);
        assert!(r.code.contains(&word(&[0, 0, 0])));
        assert!(r.code.contains(&word(&[1, 1, 1])));
        assert_eq!(r.pinned.1, word(&[1, 1, 1]));
    }

    #[test]
    fn two_word_code_gets_flipped() {
        let c = code(2, 2, &[&[0, 1], &[1, 0]]);
        let x = WreathSubgroup::new(
            ctx(2, 2),
            vec![flip_all(2), WreathElement::from_top(2, p(&[1, 0]))],
        )
        .unwrap();
        let r = canonicalize(&c, &x, 0, 1).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.x1,
            WreathElement::from_base(vec![p(&[0, 1]), p(&[1, 0])]).unwrap()
        );
        assert_eq!(
            r.code.words().iter().cloned().collect::<Vec<_>>(),
            vec![word(&[0, 0]), word(&[1, 1])]
        );
        assert_eq!(r.distance, 2);
    }

    #[test]
    fn even_weight_code() {
        let c = code(2, 3, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let s = p(&[1, 0]);
        let e = Permutation::identity(2);
        let x = WreathSubgroup::new(
            ctx(2, 3),
            vec![
                WreathElement::from_base(vec![e.clone(), s.clone(), s.clone()]).unwrap(),
                WreathElement::from_base(vec![s.clone(), e.clone(), s.clone()]).unwrap(),
                WreathElement::from_top(2, p(&[1, 2, 0])),
                WreathElement::from_top(2, p(&[1, 0, 2])),
            ],
        )
        .unwrap();
        let r = canonicalize(&c, &x, 0, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.pinned, (word(&[0, 0, 0]), word(&[1, 1, 0])));
        assert_eq!(r.code.len(), 4);
        assert_eq!(r.code.min_distance().unwrap(), 2);
    }

    #[test]
    fn canonicalize_checks_hypotheses() {
        let c = code(2, 2, &[&[0, 1], &[1, 0]]);
        let good = WreathSubgroup::new(
            ctx(2, 2),
            vec![flip_all(2), WreathElement::from_top(2, p(&[1, 0]))],
        )
        .unwrap();
        assert_eq!(
            canonicalize(&c, &good, 1, 1).unwrap_err(),
            Error::Hypothesis(Hypothesis::EqualSymbols(1))
        );
        let flips_only = WreathSubgroup::new(ctx(2, 2), vec![flip_all(2)]).unwrap();
        assert_eq!(
            canonicalize(&c, &flips_only, 0, 1).unwrap_err(),
            Error::Hypothesis(Hypothesis::NotDeltaTransitive)
        );
        let swap_only =
            WreathSubgroup::new(ctx(2, 2), vec![WreathElement::from_top(2, p(&[1, 0]))]).unwrap();
        assert_eq!(
            canonicalize(&c, &swap_only, 0, 1).unwrap_err(),
            Error::Hypothesis(Hypothesis::ComponentNotTwoTransitive { delta: 0 })
        );
        let not_aut = WreathSubgroup::new(
            ctx(2, 2),
            vec![WreathElement::from_base(vec![p(&[1, 0]), Permutation::identity(2)]).unwrap()],
        )
        .unwrap();
        assert_eq!(
            canonicalize(&c, &not_aut, 0, 1).unwrap_err(),
            Error::Hypothesis(Hypothesis::NotAutomorphism { index: 0 })
        );
        let single = code(2, 2, &[&[0, 1]]);
        assert_eq!(
            canonicalize(&single, &good, 0, 1).unwrap_err(),
            Error::Hypothesis(Hypothesis::SingletonCode)
        );
    }

    #[test]
    fn ternary_code_with_two_transitive_component() {
        // Ternary repetition code; X holds the diagonal Sym(3) and a 3-cycle on coordinates.
        let c = code(3, 3, &[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]);
        let diag = |g: &[usize]| WreathElement::from_base(vec![p(g); 3]).unwrap();
        let x = WreathSubgroup::new(
            ctx(3, 3),
            vec![
                diag(&[1, 0, 2]),
                diag(&[1, 2, 0]),
                WreathElement::from_top(3, p(&[1, 2, 0])),
            ],
        )
        .unwrap();
        let r = canonicalize(&c, &x, 2, 0).unwrap();
        assert!(r.passed());
        assert!(r.code.contains(&word(&[2, 2, 2])));
        assert!(r.code.contains(&word(&[0, 0, 0])));
    }

    #[test]
    fn display() {
        let c = code(2, 2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.to_string(), "2 2\n0,1\n1,0\n");
    }
}
