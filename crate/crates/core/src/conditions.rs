//! Coprime-order triple conditions and the three-Sylow product-set condition.
//!
//! All searches walk elements (and subgroups) in canonical order and return the
//! first hit, so witnesses are reproducible.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_power_of, is_prime, prime_divisors, prime_power_base};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::structure::{
    sylow_conjugates, sylow_containing_id, sylow_subgroup, ConjugacyClass, Subgroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Thompson,
    KaplanLevy,
    #[serde(rename = "3po")]
    ThreePo,
    #[serde(rename = "3ppo")]
    ThreePpo,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Thompson => "thompson",
            Flavor::KaplanLevy => "kaplan-levy",
            Flavor::ThreePo => "3po",
            Flavor::ThreePpo => "3ppo",
        })
    }
}

/// How many Sylow subgroups the 3SS search tries per prime triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// One representative Sylow subgroup per prime.
    Fast,
    /// `P1` fixed, every conjugate pair `(P2, P3)`.
    #[default]
    Exhaustive,
}

/// Nontrivial `x, y, z` with `xyz = 1` and order constraints given by `flavor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleWitness {
    pub x: GroupElement,
    pub y: GroupElement,
    pub z: GroupElement,
    pub orders: [u64; 3],
    pub flavor: Flavor,
}

impl TripleWitness {
    fn from_ids(g: &FiniteGroup, ids: [ElemId; 3], flavor: Flavor) -> Self {
        TripleWitness {
            x: g.element(ids[0]).clone(),
            y: g.element(ids[1]).clone(),
            z: g.element(ids[2]).clone(),
            orders: ids.map(|i| g.element_order(i)),
            flavor,
        }
    }

    /// For Kaplan-Levy witnesses, the odd prime `p` with `order(y) = p^k`.
    pub fn odd_prime(&self) -> Option<u64> {
        match self.flavor {
            Flavor::KaplanLevy => prime_power_base(self.orders[1]),
            _ => None,
        }
    }

    /// Recomputes orders and the product from the elements themselves.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidWitness(m.to_string()));
        let orders = [self.x.order(), self.y.order(), self.z.order()];
        if orders != self.orders {
            return bad("stored orders disagree with the elements");
        }
        if orders.contains(&1) {
            return bad("a component is the identity");
        }
        let prod = self.x.multiply(&self.y)?.multiply(&self.z)?;
        if !prod.is_identity() {
            return bad("x*y*z is not the identity");
        }
        if !flavor_accepts(self.flavor, orders) {
            return Err(Error::InvalidWitness(format!(
                "orders {orders:?} violate the {} constraints",
                self.flavor
            )));
        }
        Ok(())
    }
}

fn three_distinct(a: u64, b: u64, c: u64) -> bool {
    a != b && b != c && a != c
}

fn flavor_accepts(flavor: Flavor, [a, b, c]: [u64; 3]) -> bool {
    match flavor {
        Flavor::Thompson => {
            a > 1 && b > 1 && c > 1 && gcd(a, b) == 1 && gcd(b, c) == 1 && gcd(a, c) == 1
        }
        Flavor::KaplanLevy => match prime_power_base(b) {
            Some(p) if p != 2 => is_power_of(a, 2) && c > 1 && gcd(c, 2 * p) == 1,
            _ => false,
        },
        Flavor::ThreePo => is_prime(a) && is_prime(b) && is_prime(c) && three_distinct(a, b, c),
        Flavor::ThreePpo => match (
            prime_power_base(a),
            prime_power_base(b),
            prime_power_base(c),
        ) {
            (Some(p), Some(q), Some(r)) => three_distinct(p, q, r),
            _ => false,
        },
    }
}

/// First `(x, y)` in canonical order passing `pair_ok` whose completion
/// `z = (xy)^-1` satisfies `accept`.
fn search(
    g: &FiniteGroup,
    x_ok: impl Fn(u64) -> bool,
    pair_ok: impl Fn(u64, u64) -> bool,
    accept: impl Fn([u64; 3]) -> bool,
) -> Option<[ElemId; 3]> {
    let xs: Vec<ElemId> = g.ids().filter(|&x| x_ok(g.element_order(x))).collect();
    for &x in &xs {
        let ox = g.element_order(x);
        for y in g.ids() {
            let oy = g.element_order(y);
            if oy == 1 || !pair_ok(ox, oy) {
                continue;
            }
            let z = g.inv(g.mul(x, y));
            let oz = g.element_order(z);
            if oz > 1 && accept([ox, oy, oz]) {
                return Some([x, y, z]);
            }
        }
    }
    None
}

pub fn find_thompson_triple(g: &FiniteGroup) -> Option<TripleWitness> {
    search(
        g,
        |o| o > 1,
        |a, b| gcd(a, b) == 1,
        |o| flavor_accepts(Flavor::Thompson, o),
    )
    .map(|ids| TripleWitness::from_ids(g, ids, Flavor::Thompson))
}

/// Tries odd primes dividing `|G|` in increasing order.
pub fn find_kaplan_levy_triple(g: &FiniteGroup) -> Option<TripleWitness> {
    for p in prime_divisors(g.order() as u64)
        .into_iter()
        .filter(|&p| p != 2)
    {
        let hit = search(
            g,
            |o| is_power_of(o, 2),
            |_, b| is_power_of(b, p),
            |[_, _, c]| gcd(c, 2 * p) == 1,
        );
        if let Some(ids) = hit {
            return Some(TripleWitness::from_ids(g, ids, Flavor::KaplanLevy));
        }
    }
    None
}

pub fn find_3po_triple(g: &FiniteGroup) -> Option<TripleWitness> {
    if prime_divisors(g.order() as u64).len() < 3 {
        return None;
    }
    search(
        g,
        is_prime,
        |a, b| is_prime(b) && a != b,
        |o| flavor_accepts(Flavor::ThreePo, o),
    )
    .map(|ids| TripleWitness::from_ids(g, ids, Flavor::ThreePo))
}

pub fn is_3po(g: &FiniteGroup) -> bool {
    find_3po_triple(g).is_some()
}

pub fn find_3ppo_triple(g: &FiniteGroup) -> Option<TripleWitness> {
    if prime_divisors(g.order() as u64).len() < 3 {
        return None;
    }
    search(
        g,
        |o| prime_power_base(o).is_some(),
        |a, b| matches!((prime_power_base(a), prime_power_base(b)), (Some(p), Some(q)) if p != q),
        |o| flavor_accepts(Flavor::ThreePpo, o),
    )
    .map(|ids| TripleWitness::from_ids(g, ids, Flavor::ThreePpo))
}

pub fn is_3ppo(g: &FiniteGroup) -> bool {
    find_3ppo_triple(g).is_some()
}

/// `#{(x, y, z) in C1 x C2 x C3 : xyz = 1}`.
pub fn brute_count_triples(
    g: &FiniteGroup,
    c1: &ConjugacyClass,
    c2: &ConjugacyClass,
    c3: &ConjugacyClass,
) -> Result<u64> {
    if ![c1, c2, c3].iter().all(|c| c.belongs_to(g)) {
        return Err(Error::NotInGroup);
    }
    let mut count = 0;
    for &x in c1.members() {
        for &y in c2.members() {
            if c3.contains(g.inv(g.mul(x, y))) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Size of the product set plus the first collision found in canonical order.
struct ProductScan {
    size: usize,
    collision: Option<([ElemId; 3], [ElemId; 3])>,
}

fn scan_products(g: &FiniteGroup, subs: [&Subgroup; 3]) -> ProductScan {
    let mut first: Vec<Option<[ElemId; 3]>> = vec![None; g.order()];
    let mut size = 0;
    let mut collision = None;
    for &a in subs[0].members() {
        for &b in subs[1].members() {
            let ab = g.mul(a, b);
            for &c in subs[2].members() {
                let p = g.mul(ab, c);
                match first[p.index()] {
                    None => {
                        first[p.index()] = Some([a, b, c]);
                        size += 1;
                    }
                    Some(prev) => {
                        if collision.is_none() {
                            collision = Some((prev, [a, b, c]));
                        }
                    }
                }
            }
        }
    }
    ProductScan { size, collision }
}

/// `|P1 P2 P3|`, by hashing every product.
pub fn product_set_size(
    g: &FiniteGroup,
    p1: &Subgroup,
    p2: &Subgroup,
    p3: &Subgroup,
) -> Result<usize> {
    if !(p1.belongs_to(g) && p1.same_parent(p2) && p1.same_parent(p3)) {
        return Err(Error::IncompatibleSubgroups);
    }
    Ok(scan_products(g, [p1, p2, p3]).size)
}

#[derive(Debug, Clone)]
pub struct SylowWitness {
    pub primes: [u64; 3],
    pub subgroups: [Subgroup; 3],
    pub product_set_size: usize,
    /// Two componentwise distinct triples in `P1 x P2 x P3` with equal products.
    pub collision: ([GroupElement; 3], [GroupElement; 3]),
}

impl SylowWitness {
    pub fn subgroup_orders(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.subgroups[i].order())
    }

    pub fn full_product(&self) -> usize {
        self.subgroup_orders().iter().product()
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWitness(m));
        let [p, q, r] = self.primes;
        if !(is_prime(p) && is_prime(q) && is_prime(r) && three_distinct(p, q, r)) {
            return bad(format!(
                "primes {:?} are not three distinct primes",
                self.primes
            ));
        }
        for (i, sub) in self.subgroups.iter().enumerate() {
            if !sub.belongs_to(g) {
                return Err(Error::IncompatibleSubgroups);
            }
            let want = crate::arith::p_part(g.order() as u64, self.primes[i]) as usize;
            if sub.order() != want {
                return bad(format!(
                    "P{} has order {}, expected {want}",
                    i + 1,
                    sub.order()
                ));
            }
        }
        let [a, b, c] = &self.subgroups;
        let size = product_set_size(g, a, b, c)?;
        if size != self.product_set_size {
            return bad(format!(
                "stored product set size {} but found {size}",
                self.product_set_size
            ));
        }
        if size >= self.full_product() {
            return bad("product set is not smaller than |P1||P2||P3|".into());
        }
        let (xs, ys) = &self.collision;
        for i in 0..3 {
            let (xi, yi) = (g.require(&xs[i])?, g.require(&ys[i])?);
            if !self.subgroups[i].contains(xi) || !self.subgroups[i].contains(yi) {
                return bad(format!(
                    "collision component {} lies outside P{}",
                    i + 1,
                    i + 1
                ));
            }
            if xi == yi {
                return bad(format!("collision triples agree in component {}", i + 1));
            }
        }
        check_collision_products(xs, ys)
    }
}

fn check_collision_products(xs: &[GroupElement; 3], ys: &[GroupElement; 3]) -> Result<()> {
    let px = xs[0].multiply(&xs[1])?.multiply(&xs[2])?;
    let py = ys[0].multiply(&ys[1])?.multiply(&ys[2])?;
    if px != py {
        return Err(Error::InvalidWitness("collision products differ".into()));
    }
    Ok(())
}

/// Per prime triple: how many Sylow choices were tried and how many gave a
/// strictly smaller product set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeTripleSurvey {
    pub primes: [u64; 3],
    pub choices: usize,
    pub strict: usize,
}

#[derive(Debug, Clone)]
pub struct ThreeSsSurvey {
    pub triples: Vec<PrimeTripleSurvey>,
    pub witness: Option<SylowWitness>,
}

fn prime_triples(g: &FiniteGroup) -> Vec<[u64; 3]> {
    let ps = prime_divisors(g.order() as u64);
    let mut out = Vec::new();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            for k in j + 1..ps.len() {
                out.push([ps[i], ps[j], ps[k]]);
            }
        }
    }
    out
}

/// Walks every prime triple `p1 < p2 < p3` with `P1` fixed to the canonical
/// Sylow `p1`-subgroup; simultaneous conjugation preserves `|P1 P2 P3|`, so
/// this covers all Sylow choices in exhaustive mode.
fn sylow_search(g: &FiniteGroup, mode: SearchMode, stop_at_first: bool) -> ThreeSsSurvey {
    let mut triples = Vec::new();
    let mut witness = None;
    for primes in prime_triples(g) {
        let [p1, p2, p3] = primes;
        let first = sylow_subgroup(g, p1).expect("p1 divides |G|");
        let candidates = |p: u64| {
            let s = sylow_subgroup(g, p).expect("p divides |G|");
            match mode {
                SearchMode::Fast => vec![s],
                SearchMode::Exhaustive => sylow_conjugates(g, &s),
            }
        };
        let seconds = candidates(p2);
        let thirds = candidates(p3);
        let mut survey = PrimeTripleSurvey {
            primes,
            choices: 0,
            strict: 0,
        };
        'pairs: for second in &seconds {
            for third in &thirds {
                survey.choices += 1;
                let scan = scan_products(g, [&first, second, third]);
                let full = first.order() * second.order() * third.order();
                if scan.size < full {
                    survey.strict += 1;
                    if witness.is_none() {
                        let (a, b) = scan.collision.expect("smaller product set has a collision");
                        witness = Some(SylowWitness {
                            primes,
                            subgroups: [first.clone(), second.clone(), third.clone()],
                            product_set_size: scan.size,
                            collision: (
                                a.map(|e| g.element(e).clone()),
                                b.map(|e| g.element(e).clone()),
                            ),
                        });
                    }
                    if stop_at_first {
                        break 'pairs;
                    }
                }
            }
        }
        triples.push(survey);
        if stop_at_first && witness.is_some() {
            break;
        }
    }
    ThreeSsSurvey { triples, witness }
}

pub fn find_3ss_witness(g: &FiniteGroup, mode: SearchMode) -> Option<SylowWitness> {
    sylow_search(g, mode, true).witness
}

pub fn is_3ss(g: &FiniteGroup, mode: SearchMode) -> bool {
    find_3ss_witness(g, mode).is_some()
}

/// Full per-conjugate-choice survey; the witness is the same one
/// [`find_3ss_witness`] returns.
pub fn survey_3ss(g: &FiniteGroup, mode: SearchMode) -> ThreeSsSurvey {
    sylow_search(g, mode, false)
}

/// From `x1 x2 x3 = y1 y2 y3` build
/// `(y1^-1 x1)(x2 y2^-1)(y2 x3 y3^-1 y2^-1) = 1`.
pub fn collision_to_ppo_triple(w: &SylowWitness) -> Result<TripleWitness> {
    let (xs, ys) = &w.collision;
    if xs == ys {
        return Err(Error::InvalidWitness(
            "collision triples are identical".into(),
        ));
    }
    check_collision_products(xs, ys)?;
    let a = ys[0].inverse().multiply(&xs[0])?;
    let b = xs[1].multiply(&ys[1].inverse())?;
    let c = ys[1]
        .multiply(&xs[2])?
        .multiply(&ys[2].inverse())?
        .multiply(&ys[1].inverse())?;
    let t = TripleWitness {
        orders: [a.order(), b.order(), c.order()],
        x: a,
        y: b,
        z: c,
        flavor: Flavor::ThreePpo,
    };
    t.validate()?;
    Ok(t)
}

/// Sylow subgroups through each component of a 3PPO triple; `(x1, x2, x3)`
/// and `(1, 1, 1)` collide because both multiply to the identity.
pub fn ppo_triple_to_sylow_witness(g: &FiniteGroup, t: &TripleWitness) -> Result<SylowWitness> {
    if !matches!(t.flavor, Flavor::ThreePpo | Flavor::ThreePo) {
        return Err(Error::InvalidWitness(format!(
            "expected a 3ppo triple, got {}",
            t.flavor
        )));
    }
    t.validate()?;
    let ids = [g.require(&t.x)?, g.require(&t.y)?, g.require(&t.z)?];
    let primes = t
        .orders
        .map(|o| prime_power_base(o).expect("validated prime power"));
    let subgroups = [
        sylow_containing_id(g, ids[0])?,
        sylow_containing_id(g, ids[1])?,
        sylow_containing_id(g, ids[2])?,
    ];
    let size = scan_products(g, [&subgroups[0], &subgroups[1], &subgroups[2]]).size;
    let one = g.element(g.identity()).clone();
    let w = SylowWitness {
        primes,
        subgroups,
        product_set_size: size,
        collision: (
            [t.x.clone(), t.y.clone(), t.z.clone()],
            [one.clone(), one.clone(), one],
        ),
    };
    w.validate(g)?;
    Ok(w)
}
