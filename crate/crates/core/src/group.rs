//! Fully enumerated finite groups.
//!
//! Elements are stored sorted by canonical encoding, so an [`ElemId`] compares
//! exactly as the canonical keys of the elements it names. Every search in this
//! crate that returns "the first" hit iterates ids in increasing order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::element::{GroupElement, Shape};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// Groups up to this order get a precomputed multiplication table.
const CAYLEY_TABLE_LIMIT: usize = 2048;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Index of an element inside its [`FiniteGroup`], in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub(crate) u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    instance: u64,
    name: String,
    shape: Shape,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, ElemId>,
    identity: ElemId,
    inverses: Vec<ElemId>,
    orders: Vec<u64>,
    cayley: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    ///
    /// Fails with [`Error::OrderCapExceeded`] as soon as more than `cap`
    /// elements have been found.
    pub fn generate(
        name: impl Into<String>,
        shape: Shape,
        generators: Vec<GroupElement>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.shape() != shape {
                return Err(Error::IncompatibleElements(format!(
                    "generator {g} is a {}, group is {shape}",
                    g.shape()
                )));
            }
        }
        let identity = GroupElement::identity(shape);
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut found = vec![identity.clone()];
        seen.insert(identity);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = found[i].multiply(g)?;
                if seen.insert(next.clone()) {
                    if found.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    found.push(next);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        drop(seen);
        found.sort();
        Ok(Self::from_sorted(name.into(), shape, generators, found))
    }

    fn from_sorted(
        name: String,
        shape: Shape,
        generators: Vec<GroupElement>,
        elements: Vec<GroupElement>,
    ) -> Self {
        let index: HashMap<GroupElement, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), ElemId(i as u32)))
            .collect();
        let identity = index[&GroupElement::identity(shape)];
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        let n = elements.len();
        let cayley = (n <= CAYLEY_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.multiply(b).expect("same shape")].0);
                }
            }
            t
        });
        let mut group = FiniteGroup {
            instance: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            shape,
            generators,
            elements,
            index,
            identity,
            inverses,
            orders: Vec::new(),
            cayley,
        };
        group.orders = (0..n as u32)
            .map(|i| group.order_by_powers(ElemId(i)))
            .collect();
        group
    }

    fn order_by_powers(&self, g: ElemId) -> u64 {
        let mut k = 1;
        let mut acc = g;
        while acc != self.identity {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub(crate) fn instance(&self) -> u64 {
        self.instance
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    /// Element ids in canonical order.
    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElemId> + ExactSizeIterator {
        (0..self.elements.len() as u32).map(ElemId)
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &GroupElement {
        &self.elements[id.index()]
    }

    pub fn id_of(&self, g: &GroupElement) -> Option<ElemId> {
        self.index.get(g).copied()
    }

    pub fn require(&self, g: &GroupElement) -> Result<ElemId> {
        self.id_of(g).ok_or(Error::NotInGroup)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.cayley {
            Some(t) => ElemId(t[a.index() * self.elements.len() + b.index()]),
            None => {
                let prod = self.elements[a.index()]
                    .multiply(&self.elements[b.index()])
                    .expect("same shape");
                self.index[&prod]
            }
        }
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a.index()]
    }

    /// `g a g^-1`
    pub fn conjugate(&self, a: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: ElemId, e: u64) -> ElemId {
        let e = e % self.orders[a.index()];
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: ElemId) -> u64 {
        self.orders[a.index()]
    }

    pub fn is_abelian(&self) -> bool {
        self.ids()
            .all(|a| self.ids().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Convenience wrapper with the default name.
pub fn generate_group(
    shape: Shape,
    generators: Vec<GroupElement>,
    cap: usize,
) -> Result<FiniteGroup> {
    FiniteGroup::generate("G", shape, generators, cap)
}
