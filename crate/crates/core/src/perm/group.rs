use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use super::orbit::{self, Orbit};
use super::Permutation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Transitivity {
    Intransitive,
    Transitive,
    /// Transitive on ordered pairs of distinct points.
    TwoTransitive,
}

impl fmt::Display for Transitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transitivity::Intransitive => "intransitive",
            Transitivity::Transitive => "transitive",
            Transitivity::TwoTransitive => "2-transitive",
        })
    }
}

/// A permutation group given by generators. The stabilizer chain used for
/// membership and order is built on first use.
#[derive(Debug, Clone)]
pub struct GenGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PartialEq for GenGroup {
    /// Equality of generator lists, not of groups; see [`GenGroup::same_group`].
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for GenGroup {}

impl GenGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("group degree must be positive"));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(GenGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        GenGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// `Sym(n)` generated by `(0 1)` and `(0 1 .. n-1)`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::transposition(degree, 0, 1).expect("valid"));
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("valid"));
        }
        GenGroup::new(degree, gens).expect("positive degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::invalid(format!(
                "point {point} out of range for degree {}",
                self.degree
            )));
        }
        Ok(())
    }

    pub fn orbit_with_transversal(&self, point: usize) -> Result<Orbit<usize, Permutation>> {
        self.check_point(point)?;
        Ok(orbit::orbit(
            &self.generators,
            self.identity(),
            point,
            |&i, g| g.apply(i),
        ))
    }

    /// Orbits on points, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let o = self.orbit_with_transversal(start).expect("in range");
            let mut pts: Vec<usize> = o.points().copied().collect();
            pts.sort_unstable();
            for &p in &pts {
                seen[p] = true;
            }
            out.push(pts);
        }
        out
    }

    pub fn schreier_generators(&self, point: usize) -> Result<Vec<Permutation>> {
        let o = self.orbit_with_transversal(point)?;
        Ok(orbit::schreier_generators(&self.generators, &o, |&i, g| {
            g.apply(i)
        }))
    }

    pub fn stabilizer(&self, point: usize) -> Result<GenGroup> {
        GenGroup::new(self.degree, self.schreier_generators(point)?)
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().strip(p, 0).0.is_identity())
    }

    /// Membership by explicit closure; oracle path, bounded by `cap`.
    pub fn contains_by_closure(&self, p: &Permutation, cap: usize) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.enumerate(cap)?.contains(p))
    }

    pub fn enumerate(&self, cap: usize) -> Result<BTreeSet<Permutation>> {
        orbit::closure(&self.generators, self.identity(), cap)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.point).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_with_transversal(0).expect("degree > 0").len() == self.degree
    }

    /// Degree-1 groups count as transitive only: there are no pairs to move.
    pub fn transitivity(&self) -> Transitivity {
        if !self.is_transitive() {
            return Transitivity::Intransitive;
        }
        let n = self.degree;
        if n < 2 {
            return Transitivity::Transitive;
        }
        let pairs = orbit::orbit(
            &self.generators,
            self.identity(),
            (0usize, 1usize),
            |&(a, b), g| (g.apply(a), g.apply(b)),
        );
        if pairs.len() == n * (n - 1) {
            Transitivity::TwoTransitive
        } else {
            Transitivity::Transitive
        }
    }

    pub fn is_subgroup_of(&self, other: &GenGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Group equality via mutual generator membership.
    pub fn same_group(&self, other: &GenGroup) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && other.is_subgroup_of(self)?)
    }

    /// The group generated by `c⁻¹ g c` for every generator `g`.
    pub fn conjugate_by(&self, c: &Permutation) -> Result<GenGroup> {
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: c.degree(),
            });
        }
        GenGroup::new(
            self.degree,
            self.generators.iter().map(|g| g.conjugate_by(c)).collect(),
        )
    }
}

impl fmt::Display for GenGroup {
    /// `<g1, g2, ...>` on an explicit degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} <", self.degree)?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Orbit<usize, Permutation>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: orbit::orbit(
                &[],
                Permutation::identity(degree),
                point,
                |&i, g: &Permutation| g.apply(i),
            ),
        }
    }

    fn refresh(&mut self, degree: usize) {
        self.orbit = orbit::orbit(
            &self.gens,
            Permutation::identity(degree),
            self.point,
            |&i, g| g.apply(i),
        );
    }
}

/// Deterministic Schreier–Sims. Level `i` holds strong generators fixing the
/// base points of all earlier levels; generator sets are nested downwards.
#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            let (residue, depth) = chain.strip(g, 0);
            if !residue.is_identity() {
                chain.add_strong(0, depth, residue);
            }
        }
        while let Some((from, depth, residue)) = chain.unsifted_schreier_generator() {
            chain.add_strong(from, depth, residue);
        }
        chain
    }

    /// First Schreier generator (deepest level first) that does not sift to
    /// the identity through the levels below its own.
    fn unsifted_schreier_generator(&self) -> Option<(usize, usize, Permutation)> {
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            for (beta, u) in level.orbit.iter() {
                for s in &level.gens {
                    let back = level.orbit.witness(&s.apply(*beta)).expect("closed orbit");
                    let schreier = u.then(s).then(&back.inverse());
                    let (residue, depth) = self.strip(&schreier, i + 1);
                    if !residue.is_identity() {
                        return Some((i + 1, depth, residue));
                    }
                }
            }
        }
        None
    }

    /// Adds `g` as a strong generator on levels `from..=to`, opening a new
    /// level at its first moved point when `to` is past the end.
    fn add_strong(&mut self, from: usize, to: usize, g: Permutation) {
        if to == self.levels.len() {
            let point = g.first_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(self.degree, point));
        }
        for level in &mut self.levels[from..=to] {
            level.gens.push(g.clone());
            level.refresh(self.degree);
        }
    }

    /// Sifts `g` from level `from`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let image = h.apply(level.point);
            match level.orbit.witness(&image) {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }
}
