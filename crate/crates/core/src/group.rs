//! Materialized permutation groups and exact subgroup arithmetic.
//!
//! Every element of a [`PermGroup`] is enumerated up front and stored in
//! lexicographic order of its image sequence, so an element is addressed by
//! its index and a subgroup is a bitset over those indices. Groups small
//! enough get a full Cayley table; larger ones multiply by composing
//! permutations and looking the product up.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_MATERIALIZE_CAP: usize = 20_000;

/// Largest order for which a Cayley table is built.
const TABLE_LIMIT: usize = 2_500;

/// Index of an element inside its parent group's sorted element list.
pub type Elem = u32;

/// The identity always sorts first.
pub const IDENTITY: Elem = 0;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    generator_ids: Vec<Elem>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, Elem>,
    inverses: Vec<Elem>,
    table: OnceLock<Option<Vec<Elem>>>,
}

impl PermGroup {
    /// Enumerates the closure of `generators` by breadth-first right
    /// multiplication, failing once more than `cap` elements appear.
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPerm(format!("generator {g} has degree {}, expected {degree}", g.degree())));
            }
        }
        let identity = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = x.then(s);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_unstable();
        let lookup: HashMap<Perm, Elem> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let inverses = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let generator_ids = generators.iter().map(|g| lookup[g]).collect();
        Ok(PermGroup { degree, generators, generator_ids, elements, lookup, inverses, table: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(degree, Vec::new(), 1).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[Elem] {
        &self.generator_ids
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, e: Elem) -> &Perm {
        &self.elements[e as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.lookup.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.lookup.contains_key(p)
    }

    /// Number of points moved by at least one generator.
    pub fn moved_points(&self) -> usize {
        (0..self.degree).filter(|&i| self.generators.iter().any(|g| g.image(i) != i)).count()
    }

    fn table(&self) -> Option<&[Elem]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_LIMIT {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for a in &self.elements {
                    for b in &self.elements {
                        t.push(self.lookup[&a.then(b)]);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.table() {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.lookup[&self.element(a).then(self.element(b))],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, each sorted, listed by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n as Elem {
            if class_of[start as usize] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start as usize] = id;
            let mut class = vec![start];
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                for &s in &self.generator_ids {
                    let y = self.conj(x, s);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = id;
                        class.push(y);
                    }
                }
                k += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    // ---- subgroups -------------------------------------------------------

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(IDENTITY as usize);
        Subgroup { members, generators: Vec::new(), order: 1 }
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        Subgroup { members, generators: self.generator_ids.clone(), order: self.order() }
    }

    /// Closure of `base` and `g`, built coset by coset (Dimino).
    pub fn extend(&self, base: &Subgroup, g: Elem) -> Subgroup {
        if base.contains(g) {
            return base.clone();
        }
        let mut generators = base.generators.clone();
        generators.push(g);
        let base_elems: Vec<Elem> = base.iter().collect();
        let mut members = base.members.clone();
        let mut reps = vec![IDENTITY];
        let mut k = 0;
        while k < reps.len() {
            let r = reps[k];
            for &s in &generators {
                let y = self.mul(r, s);
                if !members.contains(y as usize) {
                    for &b in &base_elems {
                        members.insert(self.mul(b, y) as usize);
                    }
                    reps.push(y);
                }
            }
            k += 1;
        }
        let order = base.order * reps.len();
        Subgroup { members, generators, order }
    }

    pub fn subgroup(&self, generators: &[Elem]) -> Subgroup {
        generators.iter().fold(self.trivial_subgroup(), |acc, &g| self.extend(&acc, g))
    }

    pub fn subgroup_from_perms(&self, generators: &[Perm]) -> Result<Subgroup> {
        let ids = generators.iter().map(|p| self.index_of(p).ok_or(Error::NotInGroup)).collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&ids))
    }

    /// Wraps a member set already known to be closed, choosing generators
    /// greedily in element order.
    pub fn subgroup_from_members(&self, members: FixedBitSet) -> Subgroup {
        let mut s = self.trivial_subgroup();
        for x in members.ones() {
            if !s.contains(x as Elem) {
                s = self.extend(&s, x as Elem);
            }
        }
        debug_assert_eq!(s.members, members, "member set is not a subgroup");
        s
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut m = a.members.clone();
        m.intersect_with(&b.members);
        self.subgroup_from_members(m)
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        b.generators.iter().fold(a.clone(), |acc, &g| self.extend(&acc, g))
    }

    /// `s^g`.
    pub fn conjugate(&self, s: &Subgroup, g: Elem) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in s.iter() {
            members.insert(self.conj(x, g) as usize);
        }
        let generators = s.generators.iter().map(|&h| self.conj(h, g)).collect();
        Subgroup { members, generators, order: s.order }
    }

    /// All conjugates of `s`, starting with `s` itself.
    pub fn conjugates(&self, s: &Subgroup) -> Vec<Subgroup> {
        let mut seen: HashSet<FixedBitSet> = HashSet::from([s.members.clone()]);
        let mut out = vec![s.clone()];
        let mut k = 0;
        while k < out.len() {
            for &g in &self.generator_ids {
                let c = self.conjugate(&out[k], g);
                if seen.insert(c.members.clone()) {
                    out.push(c);
                }
            }
            k += 1;
        }
        out
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generator_ids.iter().all(|&g| s.generators.iter().all(|&h| s.contains(self.conj(h, g))))
    }

    pub fn index(&self, s: &Subgroup) -> usize {
        self.order() / s.order
    }

    /// The largest normal subgroup contained in `s`: the intersection of
    /// all conjugates of `s`.
    pub fn core(&self, s: &Subgroup) -> Subgroup {
        let gen_inverses: Vec<Elem> = self.generator_ids.iter().map(|&g| self.inv(g)).collect();
        let mut cur = s.members.clone();
        loop {
            let before = cur.count_ones(..);
            for &gi in &gen_inverses {
                // K ∩ K^g = { x in K : x^(g^-1) in K }
                let next: FixedBitSet =
                    cur.ones().filter(|&x| cur.contains(self.conj(x as Elem, gi) as usize)).collect();
                cur = grow(next, self.order());
            }
            if cur.count_ones(..) == before {
                break;
            }
        }
        self.subgroup_from_members(cur)
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &Subgroup) -> Subgroup {
        let mut n = s.clone();
        loop {
            let mut changed = false;
            for h in n.generators.clone() {
                for &g in &self.generator_ids {
                    let c = self.conj(h, g);
                    if !n.contains(c) {
                        n = self.extend(&n, c);
                        changed = true;
                    }
                }
            }
            if !changed {
                return n;
            }
        }
    }

    pub fn center(&self) -> Subgroup {
        let members: FixedBitSet = (0..self.order() as Elem)
            .filter(|&z| self.generator_ids.iter().all(|&g| self.commute(z, g)))
            .map(|z| z as usize)
            .collect();
        self.subgroup_from_members(grow(members, self.order()))
    }

    /// `{ x in s : xg = gx }`.
    pub fn centralizer_in(&self, g: Elem, s: &Subgroup) -> Subgroup {
        let members: FixedBitSet = s.iter().filter(|&x| self.commute(x, g)).map(|x| x as usize).collect();
        self.subgroup_from_members(grow(members, self.order()))
    }

    /// Action on the disjoint union of the right coset spaces `H_i \ G`.
    pub fn coset_action(&self, collection: &[&Subgroup]) -> CosetAction {
        let n = self.order();
        let mut labels: Vec<Vec<u32>> = Vec::with_capacity(collection.len());
        let mut reps: Vec<Vec<Elem>> = Vec::with_capacity(collection.len());
        for h in collection {
            let mut label = vec![u32::MAX; n];
            let mut rep = Vec::new();
            let hs: Vec<Elem> = h.iter().collect();
            for x in 0..n as Elem {
                if label[x as usize] == u32::MAX {
                    for &y in &hs {
                        label[self.mul(y, x) as usize] = rep.len() as u32;
                    }
                    rep.push(x);
                }
            }
            labels.push(label);
            reps.push(rep);
        }
        let degree: usize = reps.iter().map(Vec::len).sum();
        let acts = |g: Elem| -> Vec<usize> {
            let mut images = Vec::with_capacity(degree);
            let mut offset = 0;
            for (label, rep) in labels.iter().zip(&reps) {
                for &r in rep {
                    images.push(offset + label[self.mul(r, g) as usize] as usize);
                }
                offset += rep.len();
            }
            images
        };
        let generator_images = self
            .generator_ids
            .iter()
            .map(|&g| Perm::from_images(acts(g)).expect("coset action is a bijection"))
            .collect();
        let kernel_members: FixedBitSet =
            (0..n as Elem).filter(|&g| acts(g).iter().enumerate().all(|(i, &j)| i == j)).map(|g| g as usize).collect();
        let kernel = self.subgroup_from_members(grow(kernel_members, n));
        CosetAction { degree, generator_images, kernel }
    }

    /// Stable 64-bit digest of a subgroup's sorted member list.
    pub fn fingerprint(&self, s: &Subgroup) -> u64 {
        let mut h = Sha256::new();
        for x in s.iter() {
            h.update(x.to_le_bytes());
        }
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }

    pub fn generator_perms(&self, s: &Subgroup) -> Vec<Perm> {
        s.generators.iter().map(|&g| self.element(g).clone()).collect()
    }

    /// Materializes `s` as a standalone group on the same points.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> PermGroup {
        PermGroup::generate(self.degree, self.generator_perms(s), s.order).expect("subgroup order bounds its closure")
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

fn grow(mut set: FixedBitSet, len: usize) -> FixedBitSet {
    set.grow(len);
    set
}

/// A subgroup of a [`PermGroup`], as a member bitset over the parent's
/// element indices. Equality and hashing look only at the members.
#[derive(Clone)]
pub struct Subgroup {
    members: FixedBitSet,
    generators: Vec<Elem>,
    order: usize,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|x| x as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.generators)
    }
}

/// Result of [`PermGroup::coset_action`].
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub degree: usize,
    /// Images of the parent's generators, in order.
    pub generator_images: Vec<Perm>,
    pub kernel: Subgroup,
}

impl CosetAction {
    pub fn is_faithful(&self) -> bool {
        self.kernel.is_trivial()
    }

    pub fn induced_group(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::generate(self.degree, self.generator_images.clone(), cap)
    }
}
