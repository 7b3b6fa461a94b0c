//! Orbit, transversal and closure algorithms that are generic over the group
//! element type. Permutations, wreath elements acting on coordinates and
//! wreath elements acting on `Γ` through one base entry all go through here.

use std::collections::{BTreeSet, VecDeque};
use std::hash::Hash;

use indexmap::IndexMap;

use crate::error::{Error, Result};

/// Minimal group interface. `compose(a, b)` applies `a` first, then `b`.
pub trait GroupElement: Clone + Eq + Hash + Ord {
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// Orbit of a base point together with, for every orbit point, a group
/// element carrying the base point to it. Points are kept in BFS discovery
/// order.
#[derive(Debug, Clone)]
pub struct Orbit<P, E> {
    base: P,
    witnesses: IndexMap<P, E>,
}

impl<P: Clone + Eq + Hash, E> Orbit<P, E> {
    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn contains(&self, p: &P) -> bool {
        self.witnesses.contains_key(p)
    }

    pub fn witness(&self, p: &P) -> Option<&E> {
        self.witnesses.get(p)
    }

    /// Points in discovery order.
    pub fn points(&self) -> impl Iterator<Item = &P> {
        self.witnesses.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, &E)> {
        self.witnesses.iter()
    }
}

/// Breadth-first orbit of `start`. Generators are tried in slice order so the
/// witness for every point is fixed by the input.
pub fn orbit<P, E, F>(gens: &[E], identity: E, start: P, act: F) -> Orbit<P, E>
where
    P: Clone + Eq + Hash,
    E: GroupElement,
    F: Fn(&P, &E) -> P,
{
    let mut witnesses = IndexMap::new();
    witnesses.insert(start.clone(), identity);
    let mut cursor = 0;
    while cursor < witnesses.len() {
        let (point, word) = {
            let (p, w) = witnesses.get_index(cursor).expect("cursor in range");
            (p.clone(), w.clone())
        };
        for g in gens {
            let image = act(&point, g);
            if !witnesses.contains_key(&image) {
                witnesses.insert(image, word.compose(g));
            }
        }
        cursor += 1;
    }
    Orbit {
        base: start,
        witnesses,
    }
}

/// Schreier generators `u_β · s · u_{βs}⁻¹` for the stabilizer of the orbit's
/// base point. Identities and duplicates are dropped; the order follows orbit
/// discovery, then generator order.
pub fn schreier_generators<P, E, F>(gens: &[E], orbit: &Orbit<P, E>, act: F) -> Vec<E>
where
    P: Clone + Eq + Hash,
    E: GroupElement,
    F: Fn(&P, &E) -> P,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (point, word) in orbit.iter() {
        for s in gens {
            let image = act(point, s);
            let back = orbit
                .witness(&image)
                .expect("orbit is closed under its generators");
            let candidate = word.compose(s).compose(&back.inverse());
            if !candidate.is_identity() && seen.insert(candidate.clone()) {
                out.push(candidate);
            }
        }
    }
    out
}

/// Every element of `⟨gens⟩` by BFS closure. Returns `Overflow` rather than a
/// partial set when the group has more than `cap` elements.
pub fn closure<E: GroupElement>(gens: &[E], identity: E, cap: usize) -> Result<BTreeSet<E>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    if seen.len() > cap {
        return Err(Error::Overflow { cap });
    }
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next = e.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::Overflow { cap });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}
