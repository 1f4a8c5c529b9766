//! Conjugacy classes, subgroups, derived series, normalizers and Sylow subgroups
//! of an enumerated group.

use std::collections::HashSet;

use crate::arith::{p_part, prime_power_base};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    parent: u64,
    pub label: String,
    pub representative: GroupElement,
    pub rep_id: ElemId,
    pub size: usize,
    pub element_order: u64,
    members: Vec<ElemId>,
    mask: Vec<bool>,
}

impl ConjugacyClass {
    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn contains(&self, id: ElemId) -> bool {
        self.mask.get(id.index()).copied().unwrap_or(false)
    }

    pub fn belongs_to(&self, g: &FiniteGroup) -> bool {
        self.parent == g.instance()
    }
}

/// Subgroups compare equal when they have the same parent and members.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: u64,
    members: Vec<ElemId>,
    mask: Vec<bool>,
    generators: Vec<ElemId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_members(g, vec![g.identity()], Vec::new())
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let gens = g.generators().iter().filter_map(|e| g.id_of(e)).collect();
        Self::from_members(g, g.ids().collect(), gens)
    }

    fn from_members(g: &FiniteGroup, mut members: Vec<ElemId>, generators: Vec<ElemId>) -> Self {
        members.sort_unstable();
        let mut mask = vec![false; g.order()];
        for m in &members {
            mask[m.index()] = true;
        }
        Subgroup {
            parent: g.instance(),
            members,
            mask,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn contains(&self, id: ElemId) -> bool {
        self.mask.get(id.index()).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn belongs_to(&self, g: &FiniteGroup) -> bool {
        self.parent == g.instance()
    }

    pub(crate) fn same_parent(&self, other: &Subgroup) -> bool {
        self.parent == other.parent
    }

    /// `g H g^-1`
    pub fn conjugate_by(&self, g: &FiniteGroup, by: ElemId) -> Subgroup {
        let members = self.members.iter().map(|&h| g.conjugate(h, by)).collect();
        let gens = self
            .generators
            .iter()
            .map(|&h| g.conjugate(h, by))
            .collect();
        Self::from_members(g, members, gens)
    }
}

fn class_letters(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

/// Classes by orbit closure under conjugation, ordered by element order, then
/// size, then smallest member. Labels are the element order followed by a letter.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut orbits: Vec<Vec<ElemId>> = Vec::new();
    for x in g.ids() {
        if assigned[x.index()] {
            continue;
        }
        let mut orbit = Vec::new();
        for h in g.ids() {
            let c = g.conjugate(x, h);
            if !assigned[c.index()] {
                assigned[c.index()] = true;
                orbit.push(c);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| (g.element_order(o[0]), o.len(), o[0]));

    let mut classes = Vec::with_capacity(orbits.len());
    let mut prev_order = 0;
    let mut letter = 0;
    for members in orbits {
        let rep = members[0];
        let order = g.element_order(rep);
        if order != prev_order {
            prev_order = order;
            letter = 0;
        }
        let mut mask = vec![false; n];
        for m in &members {
            mask[m.index()] = true;
        }
        classes.push(ConjugacyClass {
            parent: g.instance(),
            label: format!("{order}{}", class_letters(letter)),
            representative: g.element(rep).clone(),
            rep_id: rep,
            size: members.len(),
            element_order: order,
            members,
            mask,
        });
        letter += 1;
    }
    classes
}

/// For every element id, the index of its class in `classes`.
pub fn class_lookup(g: &FiniteGroup, classes: &[ConjugacyClass]) -> Vec<usize> {
    let mut out = vec![usize::MAX; g.order()];
    for (ci, c) in classes.iter().enumerate() {
        for m in &c.members {
            out[m.index()] = ci;
        }
    }
    out
}

pub fn centralizer_order(g: &FiniteGroup, x: &GroupElement) -> Result<usize> {
    let x = g.require(x)?;
    Ok(centralizer_order_of(g, x))
}

pub fn centralizer_order_of(g: &FiniteGroup, x: ElemId) -> usize {
    g.ids().filter(|&h| g.mul(h, x) == g.mul(x, h)).count()
}

/// Closure of a set of generators inside the parent. Generators already in the
/// running closure are skipped, so the stored generating set stays small.
pub fn closure(g: &FiniteGroup, seeds: impl IntoIterator<Item = ElemId>) -> Subgroup {
    closure_from(g, Subgroup::trivial(g), seeds)
}

fn closure_from(
    g: &FiniteGroup,
    start: Subgroup,
    seeds: impl IntoIterator<Item = ElemId>,
) -> Subgroup {
    let mut mask = start.mask;
    let mut members = start.members;
    let mut gens = start.generators;
    for s in seeds {
        if mask[s.index()] {
            continue;
        }
        gens.push(s);
        // Right-multiply every member by every generator until nothing new appears.
        let mut frontier = 0;
        let mut queue = members.clone();
        while frontier < queue.len() {
            let m = queue[frontier];
            frontier += 1;
            for &t in &gens {
                let p = g.mul(m, t);
                if !mask[p.index()] {
                    mask[p.index()] = true;
                    members.push(p);
                    queue.push(p);
                }
            }
        }
    }
    members.sort_unstable();
    Subgroup {
        parent: g.instance(),
        members,
        mask,
        generators: gens,
    }
}

pub fn subgroup_generated(g: &FiniteGroup, set: &[GroupElement]) -> Result<Subgroup> {
    let ids = set
        .iter()
        .map(|e| g.require(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(closure(g, ids))
}

/// Subgroup generated by all commutators `a^-1 b^-1 a b`, `a, b` in `h`.
pub fn derived_subgroup(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for &a in h.members() {
        let ai = g.inv(a);
        for &b in h.members() {
            let c = g.mul(g.mul(ai, g.inv(b)), g.mul(a, b));
            if !seen[c.index()] {
                seen[c.index()] = true;
                comms.push(c);
            }
        }
    }
    comms.sort_unstable();
    closure(g, comms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    /// Orders along the derived series, starting with `|G|`, ending when the
    /// series stabilizes.
    pub series: Vec<usize>,
}

pub fn is_solvable(g: &FiniteGroup) -> Solvability {
    let mut current = Subgroup::whole(g);
    let mut series = vec![current.order()];
    while !current.is_trivial() {
        let next = derived_subgroup(g, &current);
        if next.order() == current.order() {
            return Solvability {
                solvable: false,
                series,
            };
        }
        series.push(next.order());
        current = next;
    }
    Solvability {
        solvable: true,
        series,
    }
}

/// Every nontrivial class generates a normal subgroup; `G` is simple when all
/// of them generate `G`.
pub fn is_simple(g: &FiniteGroup, classes: &[ConjugacyClass]) -> bool {
    g.order() > 1
        && classes
            .iter()
            .filter(|c| c.element_order > 1)
            .all(|c| closure(g, c.members().iter().copied()).order() == g.order())
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    // Conjugation is injective, so g<S>g^-1 ⊆ H for the generators S suffices.
    let gens: Vec<ElemId> = if h.generators().is_empty() && !h.is_trivial() {
        h.members().to_vec()
    } else {
        h.generators().to_vec()
    };
    let members = g
        .ids()
        .filter(|&x| gens.iter().all(|&s| h.contains(g.conjugate(s, x))))
        .collect();
    Subgroup::from_members(g, members, Vec::new())
}

fn is_p_element(g: &FiniteGroup, x: ElemId, p: u64) -> bool {
    let o = g.element_order(x);
    o > 1 && p_part(o, p) == o
}

/// Grow a p-subgroup to Sylow size by adjoining the canonically first p-element
/// of its normalizer that lies outside it.
fn normalizer_ascent(g: &FiniteGroup, mut p_sub: Subgroup, p: u64) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    while p_sub.order() < target {
        let n = normalizer(g, &p_sub);
        let next = n
            .members()
            .iter()
            .copied()
            .find(|&y| !p_sub.contains(y) && is_p_element(g, y, p))
            .expect("a proper p-subgroup has a p-element in its normalizer outside it");
        p_sub = closure_from(g, p_sub, [next]);
    }
    p_sub
}

pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    let order = g.order();
    if p < 2 || !crate::arith::is_prime(p) || !(order as u64).is_multiple_of(p) {
        return Err(Error::PrimeNotDividing { prime: p, order });
    }
    let seed = g
        .ids()
        .find(|&x| is_p_element(g, x, p))
        .expect("Cauchy: p divides |G|");
    Ok(normalizer_ascent(g, closure(g, [seed]), p))
}

pub fn sylow_containing(g: &FiniteGroup, x: &GroupElement) -> Result<Subgroup> {
    let x = g.require(x)?;
    sylow_containing_id(g, x)
}

pub fn sylow_containing_id(g: &FiniteGroup, x: ElemId) -> Result<Subgroup> {
    let p = prime_power_base(g.element_order(x)).ok_or(Error::NotPElement)?;
    Ok(normalizer_ascent(g, closure(g, [x]), p))
}

/// Distinct conjugates `gPg^-1`, ordered by their sorted member lists.
pub fn sylow_conjugates(g: &FiniteGroup, p_sub: &Subgroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    let mut out = Vec::new();
    for x in g.ids() {
        let c = p_sub.conjugate_by(g, x);
        if seen.insert(c.members.clone()) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{Permutation, Shape};
    use crate::group::generate_group;

    fn perm_group(gens: &[&str], n: usize) -> FiniteGroup {
        let gens = gens
            .iter()
            .map(|s| Permutation::from_cycles(s, n).unwrap().into())
            .collect();
        generate_group(Shape::Permutation { degree: n }, gens, 10_000).unwrap()
    }

    fn el(s: &str, n: usize) -> GroupElement {
        Permutation::from_cycles(s, n).unwrap().into()
    }

    fn s3() -> FiniteGroup {
        perm_group(&["(1 2)", "(1 2 3)"], 3)
    }
    fn s4() -> FiniteGroup {
        perm_group(&["(1 2 3 4)", "(1 2)"], 4)
    }
    fn a5() -> FiniteGroup {
        perm_group(&["(1 2 3 4 5)", "(1 2 3)"], 5)
    }

    #[test]
    fn class_letters_extend_past_z() {
        assert_eq!(class_letters(0), "A");
        assert_eq!(class_letters(25), "Z");
        assert_eq!(class_letters(26), "AA");
        assert_eq!(class_letters(27), "AB");
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let cl = conjugacy_classes(&g);
        let summary: Vec<(u64, usize, &str)> = cl
            .iter()
            .map(|c| (c.element_order, c.size, c.label.as_str()))
            .collect();
        assert_eq!(summary, vec![(1, 1, "1A"), (2, 3, "2A"), (3, 2, "3A")]);
    }

    #[test]
    fn a5_class_sizes() {
        // Orbit sizes from an independent enumeration of A5 on 5 points.
        let cl = conjugacy_classes(&a5());
        let sizes: Vec<usize> = cl.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
        let labels: Vec<&str> = cl.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1A", "2A", "3A", "5A", "5B"]);
    }

    #[test]
    fn class_size_times_centralizer_is_group_order() {
        for g in [s3(), s4(), a5()] {
            let cl = conjugacy_classes(&g);
            assert_eq!(cl.iter().map(|c| c.size).sum::<usize>(), g.order());
            for c in &cl {
                for &m in c.members() {
                    assert_eq!(c.size * centralizer_order_of(&g, m), g.order());
                    assert_eq!(g.element_order(m), c.element_order);
                }
            }
        }
    }

    #[test]
    fn centralizers() {
        let g = s3();
        assert_eq!(centralizer_order(&g, g.element(g.identity())).unwrap(), 6);
        assert_eq!(centralizer_order(&g, &el("(1 2)", 3)).unwrap(), 2);
        assert!(matches!(
            centralizer_order(&g, &el("(1 2)", 4)),
            Err(Error::NotInGroup)
        ));
    }

    #[test]
    fn generated_subgroups() {
        let g = a5();
        assert_eq!(subgroup_generated(&g, &[]).unwrap().order(), 1);
        assert_eq!(
            subgroup_generated(&g, &[el("(1 2 3 4 5)", 5)])
                .unwrap()
                .order(),
            5
        );
        assert!(subgroup_generated(&g, &[el("(1 2)", 5)]).is_err());
    }

    #[test]
    fn s4_commutators_generate_a4() {
        let g = s4();
        let d = derived_subgroup(&g, &Subgroup::whole(&g));
        assert_eq!(d.order(), 12);
        assert!(d.members().iter().all(|&m| {
            // even permutations: number of even-length cycles is even
            match g.element(m) {
                GroupElement::Permutation(p) => {
                    p.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
                }
                _ => false,
            }
        }));
    }

    #[test]
    fn derived_series() {
        let s = is_solvable(&s4());
        assert!(s.solvable);
        assert_eq!(s.series, vec![24, 12, 4, 1]);
        let s = is_solvable(&s3());
        assert_eq!(s.series, vec![6, 3, 1]);
        let s = is_solvable(&a5());
        assert!(!s.solvable);
        assert_eq!(s.series, vec![60]);
        let c = perm_group(&["(1 2 3 4 5 6)"], 6);
        assert_eq!(derived_subgroup(&c, &Subgroup::whole(&c)).order(), 1);
    }

    #[test]
    fn simplicity() {
        let g = a5();
        assert!(is_simple(&g, &conjugacy_classes(&g)));
        let g = s4();
        assert!(!is_simple(&g, &conjugacy_classes(&g)));
        let c5 = perm_group(&["(1 2 3 4 5)"], 5);
        assert!(is_simple(&c5, &conjugacy_classes(&c5)));
    }

    #[test]
    fn normalizers() {
        let g = s3();
        let a3 = subgroup_generated(&g, &[el("(1 2 3)", 3)]).unwrap();
        assert_eq!(normalizer(&g, &a3).order(), 6);
        let t = subgroup_generated(&g, &[el("(1 2)", 3)]).unwrap();
        let n = normalizer(&g, &t);
        assert_eq!(n, t);
        let g = a5();
        let p5 = sylow_subgroup(&g, 5).unwrap();
        assert_eq!(normalizer(&g, &p5).order(), 10);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow_subgroup(&s4(), 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&a5(), 2).unwrap().order(), 4);
        assert_eq!(sylow_subgroup(&a5(), 5).unwrap().order(), 5);
        assert!(matches!(
            sylow_subgroup(&s4(), 5),
            Err(Error::PrimeNotDividing {
                prime: 5,
                order: 24
            })
        ));
    }

    #[test]
    fn sylow_containing_seeds() {
        let g = s4();
        let t = el("(1 2)", 4);
        let p = sylow_containing(&g, &t).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.contains(g.id_of(&t).unwrap()));
        let g = a5();
        let x = el("(1 3 5 2 4)", 5);
        let p = sylow_containing(&g, &x).unwrap();
        assert_eq!(p, closure(&g, [g.id_of(&x).unwrap()]));
        assert!(matches!(
            sylow_containing(&g, g.element(g.identity())),
            Err(Error::NotPElement)
        ));
        let six = perm_group(&["(1 2)(3 4 5)"], 5);
        let x = six.id_of(&el("(1 2)(3 4 5)", 5)).unwrap();
        assert!(matches!(
            sylow_containing_id(&six, x),
            Err(Error::NotPElement)
        ));
    }

    #[test]
    fn sylow_conjugate_counts() {
        let g = a5();
        let p5 = sylow_subgroup(&g, 5).unwrap();
        assert_eq!(sylow_conjugates(&g, &p5).len(), 6);
        let g = s4();
        let p2 = sylow_subgroup(&g, 2).unwrap();
        assert_eq!(sylow_conjugates(&g, &p2).len(), 3);
        let p3 = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(sylow_conjugates(&g, &p3).len() % 3, 1);
        let g = s3();
        let a3 = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(sylow_conjugates(&g, &a3), vec![a3]);
    }
}
