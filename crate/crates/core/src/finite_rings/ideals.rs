//! Ideal descriptors, ideal enumeration and radical computations.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{FiniteRing, RingError, IDEAL_ENUM_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    Left,
    Right,
    TwoSided,
}

/// A validated ideal of a finite ring: the element set is checked to be
/// additively closed, to contain zero, and to be closed under the declared
/// multiplications.
#[derive(Clone)]
pub struct IdealDescriptor {
    ring: FiniteRing,
    sidedness: Sidedness,
    elements: BTreeSet<usize>,
}

impl IdealDescriptor {
    pub fn new(
        ring: FiniteRing,
        sidedness: Sidedness,
        elements: BTreeSet<usize>,
    ) -> Result<Self, RingError> {
        let fail = |reason: String| RingError::NotAnIdeal { sidedness, reason };
        if !elements.contains(&ring.zero()) {
            return Err(fail("does not contain zero".into()));
        }
        if elements.iter().any(|&a| a >= ring.order()) {
            return Err(fail("element index out of range".into()));
        }
        for &a in &elements {
            for &b in &elements {
                if !elements.contains(&ring.add(a, b)) {
                    return Err(fail(format!("not closed under addition at ({a},{b})")));
                }
            }
            for r in ring.elements() {
                if matches!(sidedness, Sidedness::Left | Sidedness::TwoSided)
                    && !elements.contains(&ring.mul(r, a))
                {
                    return Err(fail(format!("not closed under left multiplication at ({r},{a})")));
                }
                if matches!(sidedness, Sidedness::Right | Sidedness::TwoSided)
                    && !elements.contains(&ring.mul(a, r))
                {
                    return Err(fail(format!("not closed under right multiplication at ({a},{r})")));
                }
            }
        }
        Ok(IdealDescriptor {
            ring,
            sidedness,
            elements,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.elements
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.elements.len() < self.ring.order()
    }
}

impl std::fmt::Debug for IdealDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} ideal {{{}}}",
            self.sidedness,
            self.elements
                .iter()
                .map(|&a| self.ring.name(a))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl PartialEq for IdealDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.sidedness == other.sidedness
            && self.ring.same_ring(&other.ring)
            && self.elements == other.elements
    }
}

fn additive_closure(ring: &FiniteRing, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    set.insert(ring.zero());
    loop {
        let mut grew = false;
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                if set.insert(ring.add(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

fn principal_ideal(ring: &FiniteRing, a: usize, sidedness: Sidedness) -> BTreeSet<usize> {
    match sidedness {
        Sidedness::Right => ring.elements().map(|r| ring.mul(a, r)).collect(),
        Sidedness::Left => ring.elements().map(|r| ring.mul(r, a)).collect(),
        Sidedness::TwoSided => {
            let mut seed = BTreeSet::new();
            for r in ring.elements() {
                for s in ring.elements() {
                    seed.insert(ring.mul(ring.mul(r, a), s));
                }
            }
            additive_closure(ring, &seed)
        }
    }
}

/// Enumerates every ideal of the given sidedness as an element set, by
/// closing the principal ideals under pairwise sums. Deterministic order:
/// sorted by (size, elements).
pub fn enumerate_ideals(
    ring: &FiniteRing,
    sidedness: Sidedness,
    bound: usize,
) -> Result<Vec<BTreeSet<usize>>, RingError> {
    let mut ideals: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut push = |set: BTreeSet<usize>, ideals: &mut Vec<BTreeSet<usize>>| -> bool {
        let key: Vec<usize> = set.iter().copied().collect();
        if seen.insert(key) {
            ideals.push(set);
            true
        } else {
            false
        }
    };
    for a in ring.elements() {
        let p = principal_ideal(ring, a, sidedness);
        push(p, &mut ideals);
        if ideals.len() > bound {
            return Err(RingError::ResourceBoundExceeded {
                what: format!("more than {bound} ideals"),
            });
        }
    }
    // Close under pairwise sums (I + J is again an ideal of the same kind).
    let mut frontier = 0;
    while frontier < ideals.len() {
        let current = ideals[frontier].clone();
        for idx in 0..frontier + 1 {
            let other = ideals[idx].clone();
            let mut sum = BTreeSet::new();
            for &x in &current {
                for &y in &other {
                    sum.insert(ring.add(x, y));
                }
            }
            push(sum, &mut ideals);
            if ideals.len() > bound {
                return Err(RingError::ResourceBoundExceeded {
                    what: format!("more than {bound} ideals"),
                });
            }
        }
        frontier += 1;
    }
    ideals.sort_by(|a, b| {
        (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
    });
    Ok(ideals)
}

/// Primality of a proper two-sided ideal `P`, in the noncommutative sense:
/// `aRb` contained in `P` forces `a` or `b` into `P`.
pub fn is_prime_ideal(ring: &FiniteRing, ideal: &BTreeSet<usize>) -> bool {
    if ideal.len() == ring.order() {
        return false;
    }
    for a in ring.elements() {
        if ideal.contains(&a) {
            continue;
        }
        for b in ring.elements() {
            if ideal.contains(&b) {
                continue;
            }
            let sandwiched = ring
                .elements()
                .all(|r| ideal.contains(&ring.mul(ring.mul(a, r), b)));
            if sandwiched {
                return false;
            }
        }
    }
    true
}

impl FiniteRing {
    /// Jacobson radical: the elements `a` such that `1 - r a` is
    /// left-invertible for every `r`. Verified two-sided on return.
    pub fn jacobson_radical(&self) -> IdealDescriptor {
        let one = self.one();
        let left_invertible =
            |u: usize| self.elements().any(|b| self.mul(b, u) == one);
        let set: BTreeSet<usize> = self
            .elements()
            .filter(|&a| {
                self.elements()
                    .all(|r| left_invertible(self.sub(one, self.mul(r, a))))
            })
            .collect();
        IdealDescriptor::new(self.clone(), Sidedness::TwoSided, set)
            .expect("quasi-regular elements always form a two-sided ideal")
    }

    /// Prime radical: intersection of all prime two-sided ideals.
    pub fn prime_radical(&self) -> Result<IdealDescriptor, RingError> {
        let ideals = enumerate_ideals(self, Sidedness::TwoSided, IDEAL_ENUM_BOUND)?;
        let primes: Vec<&BTreeSet<usize>> = ideals
            .iter()
            .filter(|p| is_prime_ideal(self, p))
            .collect();
        let set: BTreeSet<usize> = if primes.is_empty() {
            self.elements().collect()
        } else {
            self.elements()
                .filter(|a| primes.iter().all(|p| p.contains(a)))
                .collect()
        };
        IdealDescriptor::new(self.clone(), Sidedness::TwoSided, set)
    }
}
