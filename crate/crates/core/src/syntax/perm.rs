use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use super::names::Atom;

/// Swap lists longer than this are rewritten into cycle form after
/// composition, so suspensions stay compact along long rewrite sequences.
const COMPACT_THRESHOLD: usize = 8;

/// A finitely supported permutation of atoms, stored as a list of swappings.
///
/// The list `[(a1 b1), ..., (an bn)]` denotes `(a1 b1) ∘ ... ∘ (an bn)`, so the
/// last swap acts first. Equality and hashing are behavioural: two swap lists
/// are equal when they move every atom to the same place.
#[derive(Clone, Default)]
pub struct Permutation {
    swaps: Vec<(Atom, Atom)>,
}

impl Permutation {
    pub fn id() -> Self {
        Permutation::default()
    }

    pub fn swap(a: Atom, b: Atom) -> Self {
        if a == b {
            Permutation::id()
        } else {
            Permutation {
                swaps: vec![(a, b)],
            }
        }
    }

    pub fn from_swaps<I: IntoIterator<Item = (Atom, Atom)>>(swaps: I) -> Self {
        Permutation {
            swaps: swaps.into_iter().filter(|(a, b)| a != b).collect(),
        }
    }

    pub fn swaps(&self) -> &[(Atom, Atom)] {
        &self.swaps
    }

    pub fn apply(&self, atom: &Atom) -> Atom {
        let mut cur = atom;
        for (a, b) in self.swaps.iter().rev() {
            if cur == a {
                cur = b;
            } else if cur == b {
                cur = a;
            }
        }
        cur.clone()
    }

    pub fn apply_inverse(&self, atom: &Atom) -> Atom {
        let mut cur = atom;
        for (a, b) in &self.swaps {
            if cur == a {
                cur = b;
            } else if cur == b {
                cur = a;
            }
        }
        cur.clone()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        if self.swaps.is_empty() {
            return other.clone();
        }
        if other.swaps.is_empty() {
            return self.clone();
        }
        let mut swaps = self.swaps.clone();
        for s in &other.swaps {
            // adjacent equal swaps cancel
            if swaps.last().is_some_and(|last| same_swap(last, s)) {
                swaps.pop();
            } else {
                swaps.push(s.clone());
            }
        }
        let p = Permutation { swaps };
        if p.swaps.len() > COMPACT_THRESHOLD {
            p.canonical()
        } else {
            p
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            swaps: self.swaps.iter().rev().cloned().collect(),
        }
    }

    /// Atoms mentioned by the swap list; a superset of the support.
    pub fn mentioned(&self) -> BTreeSet<Atom> {
        self.swaps
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    /// `nontriv(π)`: the atoms actually moved.
    pub fn support(&self) -> BTreeSet<Atom> {
        self.mentioned()
            .into_iter()
            .filter(|a| self.apply(a) != *a)
            .collect()
    }

    pub fn is_id(&self) -> bool {
        self.swaps.is_empty() || self.support().is_empty()
    }

    /// The graph of the permutation restricted to its support, sorted by atom.
    pub fn mapping(&self) -> Vec<(Atom, Atom)> {
        self.mentioned()
            .into_iter()
            .filter_map(|a| {
                let b = self.apply(&a);
                (b != a).then_some((a, b))
            })
            .collect()
    }

    /// Builds a permutation extending a partial injection `a ↦ b`.
    ///
    /// Atoms in the image that are not in the domain are sent back onto the
    /// domain atoms that are not in the image, in sorted order, so the result
    /// only moves atoms in `dom ∪ img`. Returns `None` if the pairs are not
    /// injective or not a function.
    pub fn from_injection<I: IntoIterator<Item = (Atom, Atom)>>(pairs: I) -> Option<Permutation> {
        let mut forward: BTreeMap<Atom, Atom> = BTreeMap::new();
        let mut image: BTreeSet<Atom> = BTreeSet::new();
        for (a, b) in pairs {
            if let Some(prev) = forward.get(&a) {
                if *prev != b {
                    return None;
                }
                continue;
            }
            if !image.insert(b.clone()) {
                return None;
            }
            forward.insert(a, b);
        }
        let dom: BTreeSet<Atom> = forward.keys().cloned().collect();
        let dangling: Vec<Atom> = image.difference(&dom).cloned().collect();
        let holes: Vec<Atom> = dom.difference(&image).cloned().collect();
        debug_assert_eq!(dangling.len(), holes.len());
        for (d, h) in dangling.into_iter().zip(holes) {
            forward.insert(d, h);
        }
        Some(Permutation::from_mapping(&forward))
    }

    /// Cycle decomposition of a bijection given by its nontrivial graph.
    fn from_mapping(map: &BTreeMap<Atom, Atom>) -> Permutation {
        let mut seen: BTreeSet<&Atom> = BTreeSet::new();
        let mut swaps = Vec::new();
        for start in map.keys() {
            if seen.contains(start) || map.get(start) == Some(start) {
                continue;
            }
            // the cycle (c1 c2 ... ck) is (c1 c2)∘(c2 c3)∘...∘(c_{k-1} ck)
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = &map[start];
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                cur = &map[cur];
            }
            for w in cycle.windows(2) {
                swaps.push((w[0].clone(), w[1].clone()));
            }
        }
        Permutation { swaps }
    }

    /// A behaviourally equal permutation in cycle form.
    pub fn canonical(&self) -> Permutation {
        let map: BTreeMap<Atom, Atom> = self.mapping().into_iter().collect();
        Permutation::from_mapping(&map)
    }
}

fn same_swap(x: &(Atom, Atom), y: &(Atom, Atom)) -> bool {
    (x.0 == y.0 && x.1 == y.1) || (x.0 == y.1 && x.1 == y.0)
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        if self.swaps == other.swaps {
            return true;
        }
        let atoms: BTreeSet<Atom> = self
            .mentioned()
            .union(&other.mentioned())
            .cloned()
            .collect();
        atoms.iter().all(|a| self.apply(a) == other.apply(a))
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mapping().hash(state);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.swaps.is_empty() {
            return f.write_str("id");
        }
        for (a, b) in &self.swaps {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
