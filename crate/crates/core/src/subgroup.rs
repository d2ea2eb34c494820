//! Subgroups, cosets, homomorphisms and quotients.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::set::GroupSet;
use crate::smith::smith;
use crate::sumset::{require_non_empty, sumset_unchecked, translate};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: GroupSet,
}

/// Largest group order for which the full subgroup lattice is enumerated.
pub const FULL_LATTICE_LIMIT: usize = 64;

impl Subgroup {
    /// Smallest subgroup containing `s`, by iterated doubling `M <- M + M`.
    pub fn generated(s: &GroupSet) -> Result<Subgroup> {
        require_non_empty(s)?;
        let mut members = s.clone();
        members.insert(0);
        loop {
            let next = sumset_unchecked(&members, &members);
            if next == members {
                break;
            }
            members = next;
        }
        Ok(Subgroup { members })
    }

    pub fn cyclic(group: &Arc<Group>, g: Element) -> Result<Subgroup> {
        Subgroup::generated(&GroupSet::singleton(group, g)?)
    }

    pub fn whole(group: &Arc<Group>) -> Subgroup {
        Subgroup {
            members: GroupSet::full(group),
        }
    }

    pub fn trivial(group: &Arc<Group>) -> Subgroup {
        Subgroup {
            members: GroupSet::singleton(group, 0).expect("identity"),
        }
    }

    /// Wraps a member set after checking closure; used by parsers and tests.
    pub fn from_members(members: GroupSet) -> Result<Subgroup> {
        let closed = members.contains(0) && sumset_unchecked(&members, &members) == members;
        if closed {
            Ok(Subgroup { members })
        } else {
            Err(Error::PreconditionFailed("set is not a subgroup".into()))
        }
    }

    pub fn members(&self) -> &GroupSet {
        &self.members
    }

    pub fn parent(&self) -> &Arc<Group> {
        self.members.group()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent().order() / self.order()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.contains(x)
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<Element> {
        let group = self.parent();
        let mut span = GroupSet::singleton(group, 0).expect("identity");
        let mut gens = Vec::new();
        for x in self.members.iter() {
            if !span.contains(x) {
                gens.push(x);
                let mut s = span.clone();
                s.insert(x);
                span = Subgroup::generated(&s).expect("non-empty").members;
            }
        }
        gens
    }

    /// One element per coset, the least index in each.
    pub fn coset_representatives(&self) -> GroupSet {
        let group = self.parent();
        let mut covered = GroupSet::empty(group);
        let mut reps = GroupSet::empty(group);
        for x in 0..group.order() {
            if !covered.contains(x) {
                reps.insert(x);
                covered = covered.union(&translate(&self.members, x));
            }
        }
        reps
    }

    /// An isomorphic product-of-cyclic group together with the embedding into the parent.
    pub fn as_group(&self) -> (Arc<Group>, Homomorphism) {
        let parent = self.parent();
        let gens = self.generators();
        if gens.is_empty() {
            let trivial = Group::trivial();
            let embed = Homomorphism::new(&trivial, parent, vec![]).expect("empty map");
            return (trivial, embed);
        }
        let t = gens.len();
        let r = parent.rank();
        // relations x with sum x_j h_j = 0: left kernel of [M; diag(d)]
        let mut a: Vec<Vec<i128>> = gens
            .iter()
            .map(|&h| parent.coords(h).into_iter().map(|x| x as i128).collect())
            .collect();
        for (i, &d) in parent.factors().iter().enumerate() {
            a.push((0..r).map(|j| if i == j { d as i128 } else { 0 }).collect());
        }
        let s = smith(&a, r);
        let relations: Vec<Vec<i128>> = s.u[s.rank..].iter().map(|row| row[..t].to_vec()).collect();
        let s2 = smith(&relations, t);
        let mut factors = Vec::new();
        let mut images = Vec::new();
        for (i, &d) in s2.diagonal.iter().enumerate() {
            if d > 1 {
                factors.push(d as usize);
                // new generator i is x = row i of V^-1 in generator coordinates
                let mut img = vec![0i128; r];
                for (j, &h) in gens.iter().enumerate() {
                    let coef = s2.v_inv[i][j];
                    for (acc, c) in img.iter_mut().zip(parent.coords(h)) {
                        *acc += coef * c as i128;
                    }
                }
                images.push(parent.index_of_reduced(&img));
            }
        }
        let sub = Group::new(&factors).expect("positive factors");
        let embed = Homomorphism::new(&sub, parent, images).expect("generator orders divide factors");
        debug_assert_eq!(sub.order(), self.order());
        (sub, embed)
    }
}

/// A homomorphism given by the images of the standard generators of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: Arc<Group>,
    codomain: Arc<Group>,
    images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(domain: &Arc<Group>, codomain: &Arc<Group>, images: Vec<Element>) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::InvalidHomomorphism(format!(
                "{} generator images for a domain of rank {}",
                images.len(),
                domain.rank()
            )));
        }
        for (i, (&img, &d)) in images.iter().zip(domain.factors()).enumerate() {
            codomain.check(img)?;
            if d % codomain.element_order(img) != 0 {
                return Err(Error::InvalidHomomorphism(format!(
                    "image of generator {i} has order {} not dividing {d}",
                    codomain.element_order(img)
                )));
            }
        }
        Ok(Homomorphism {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images,
        })
    }

    pub fn domain(&self) -> &Arc<Group> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Group> {
        &self.codomain
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: Element) -> Element {
        self.domain
            .coords(x)
            .into_iter()
            .zip(&self.images)
            .fold(0, |acc, (a, &img)| self.codomain.add(acc, self.codomain.mul(a, img)))
    }

    pub fn image(&self, s: &GroupSet) -> Result<GroupSet> {
        self.check_domain(s)?;
        GroupSet::from_elements(&self.codomain, s.iter().map(|x| self.apply(x)))
    }

    pub fn preimage(&self, s: &GroupSet) -> Result<GroupSet> {
        if **s.group() != *self.codomain {
            return Err(Error::GroupMismatch {
                left: s.group().spec(),
                right: self.codomain.spec(),
            });
        }
        let mut out = GroupSet::empty(&self.domain);
        for x in 0..self.domain.order() {
            if s.contains(self.apply(x)) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    pub fn kernel(&self) -> Subgroup {
        let zero = GroupSet::singleton(&self.codomain, 0).expect("identity");
        Subgroup {
            members: self.preimage(&zero).expect("codomain set"),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let full: HashSet<Element> = (0..self.domain.order()).map(|x| self.apply(x)).collect();
        full.len() == self.codomain.order()
    }

    pub fn is_injective_on(&self, s: &GroupSet) -> bool {
        let mut seen = HashSet::new();
        s.iter().all(|x| seen.insert(self.apply(x)))
    }

    fn check_domain(&self, s: &GroupSet) -> Result<()> {
        if **s.group() == *self.domain {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: s.group().spec(),
                right: self.domain.spec(),
            })
        }
    }
}

/// `G / H` in product-of-cyclic form, with the canonical projection.
pub fn quotient_map(group: &Arc<Group>, h: &Subgroup) -> Result<(Arc<Group>, Homomorphism)> {
    if **h.parent() != **group {
        return Err(Error::GroupMismatch {
            left: h.parent().spec(),
            right: group.spec(),
        });
    }
    let r = group.rank();
    if r == 0 {
        let t = Group::trivial();
        let pi = Homomorphism::new(group, &t, vec![])?;
        return Ok((t, pi));
    }
    let mut rel: Vec<Vec<i128>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { group.factors()[i] as i128 } else { 0 })
                .collect()
        })
        .collect();
    for g in h.generators() {
        rel.push(group.coords(g).into_iter().map(|x| x as i128).collect());
    }
    let s = smith(&rel, r);
    let kept: Vec<usize> = (0..r).filter(|&i| s.diagonal[i] > 1).collect();
    let factors: Vec<usize> = kept.iter().map(|&i| s.diagonal[i] as usize).collect();
    let quotient = Group::new(&factors)?;
    let images = (0..r)
        .map(|j| {
            let coords: Vec<i128> = kept.iter().map(|&i| s.v[j][i]).collect();
            quotient.index_of_reduced(&coords)
        })
        .collect();
    let pi = Homomorphism::new(group, &quotient, images)?;
    Ok((quotient, pi))
}

/// All subgroups for groups of order at most [`FULL_LATTICE_LIMIT`];
/// above that only the cyclic subgroups.
pub fn enumerate_subgroups(group: &Arc<Group>) -> Vec<Subgroup> {
    let n = group.order();
    let mut cyclic: Vec<GroupSet> = Vec::new();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    for g in 0..n {
        let h = Subgroup::cyclic(group, g).expect("valid element").members;
        if seen.insert(h.words().to_vec()) {
            cyclic.push(h);
        }
    }
    if n > FULL_LATTICE_LIMIT {
        return cyclic.into_iter().map(|members| Subgroup { members }).collect();
    }
    let mut all: Vec<GroupSet> = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.is_subset(s) {
                    continue;
                }
                let join = Subgroup::generated(&s.union(c)).expect("non-empty").members;
                if seen.insert(join.words().to_vec()) {
                    next.push(join.clone());
                    all.push(join);
                }
            }
        }
        frontier = next;
    }
    all.sort_by_key(|s| (s.len(), s.words().to_vec()));
    all.into_iter().map(|members| Subgroup { members }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Arc<Group>, xs: &[usize]) -> GroupSet {
        GroupSet::from_elements(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn generated_examples() {
        let g = Group::cyclic(12);
        let h = Subgroup::generated(&set(&g, &[2])).unwrap();
        assert_eq!(h.members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(h.order(), 6);
        assert!(Subgroup::generated(&set(&g, &[0, 1, 2])).unwrap().is_whole());
        let p = Group::new(&[2, 4]).unwrap();
        let x = p.index_of(&[0, 2]).unwrap();
        let h = Subgroup::cyclic(&p, x).unwrap();
        assert_eq!(h.members().to_vec(), vec![0, x]);
        assert_eq!(Subgroup::generated(&GroupSet::empty(&g)), Err(Error::EmptySet));
    }

    #[test]
    fn generated_is_idempotent() {
        let g = Group::new(&[2, 6]).unwrap();
        let h = Subgroup::generated(&set(&g, &[3, 8])).unwrap();
        assert_eq!(Subgroup::generated(h.members()).unwrap(), h);
    }

    #[test]
    fn coset_representative_examples() {
        let g = Group::cyclic(12);
        assert_eq!(
            Subgroup::cyclic(&g, 2).unwrap().coset_representatives().to_vec(),
            vec![0, 1]
        );
        assert_eq!(Subgroup::whole(&g).coset_representatives().to_vec(), vec![0]);
        let g6 = Group::cyclic(6);
        assert_eq!(
            Subgroup::cyclic(&g6, 3).unwrap().coset_representatives().to_vec(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn transversal_partitions_group() {
        for factors in [vec![12], vec![2, 6], vec![4, 4], vec![2, 2, 2]] {
            let g = Group::new(&factors).unwrap();
            for h in enumerate_subgroups(&g) {
                let k = h.coset_representatives();
                assert_eq!(k.len() * h.order(), g.order());
                let mut union = GroupSet::empty(&g);
                for x in k.iter() {
                    let t = translate(h.members(), x);
                    assert!(!union.intersects(&t));
                    union = union.union(&t);
                }
                assert!(union.is_full());
            }
        }
    }

    #[test]
    fn quotient_of_z12_by_4() {
        let g = Group::cyclic(12);
        let h = Subgroup::cyclic(&g, 4).unwrap();
        assert_eq!(h.order(), 3);
        let (q, pi) = quotient_map(&g, &h).unwrap();
        assert_eq!(q.order(), 4);
        assert!(pi.is_surjective());
        assert_eq!(pi.kernel(), h);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(pi.apply(g.add(a, b)), q.add(pi.apply(a), pi.apply(b)));
            }
        }
    }

    #[test]
    fn quotient_extremes() {
        let g = Group::new(&[2, 4]).unwrap();
        let (q, pi) = quotient_map(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.order(), 8);
        assert!(pi.is_injective_on(&GroupSet::full(&g)));
        let (q, _) = quotient_map(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_fibres_have_subgroup_order() {
        for factors in [vec![12], vec![2, 6], vec![4, 4], vec![2, 2, 2], vec![3, 6]] {
            let g = Group::new(&factors).unwrap();
            for h in enumerate_subgroups(&g) {
                let (q, pi) = quotient_map(&g, &h).unwrap();
                assert_eq!(q.order() * h.order(), g.order());
                assert_eq!(pi.kernel(), h);
                for y in 0..q.order() {
                    let fibre = pi.preimage(&GroupSet::singleton(&q, y).unwrap()).unwrap();
                    assert_eq!(fibre.len(), h.order());
                }
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        assert_eq!(pi.apply(g.add(a, b)), q.add(pi.apply(a), pi.apply(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_as_group_embeds_isomorphically() {
        for factors in [vec![12], vec![2, 6], vec![4, 4], vec![2, 2, 2], vec![3, 6]] {
            let g = Group::new(&factors).unwrap();
            for h in enumerate_subgroups(&g) {
                let (sub, embed) = h.as_group();
                assert_eq!(sub.order(), h.order());
                let img = embed.image(&GroupSet::full(&sub)).unwrap();
                assert_eq!(&img, h.members());
                assert!(embed.is_injective_on(&GroupSet::full(&sub)));
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        // Z/12 has one subgroup per divisor; (Z/2)^3 has 16 subgroups
        assert_eq!(enumerate_subgroups(&Group::cyclic(12)).len(), 6);
        assert_eq!(enumerate_subgroups(&Group::new(&[2, 2, 2]).unwrap()).len(), 16);
    }
}
