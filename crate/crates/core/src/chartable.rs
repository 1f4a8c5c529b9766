//! Character tables with exact entries, class multiplication counts, and
//! binding of table classes to computed conjugacy classes.
//!
//! Table files are JSON documents:
//!
//! ```json
//! {
//!   "groupName": "A5",
//!   "groupOrder": 60,
//!   "classes": [
//!     { "label": "1A", "size": 1, "elementOrder": 1, "inverseClassIndex": 0 },
//!     { "label": "5A", "size": 12, "elementOrder": 5, "inverseClassIndex": 3,
//!       "powerMap": { "2": 4 } }
//!   ],
//!   "characters": [ ["1", "1"], ["3", "(1-r5)/2"] ]
//! }
//! ```
//!
//! Class indices are zero-based. `powerMap` maps an exponent `k` to the index
//! of the class containing `g^k`. Entries are integers or strings in the
//! [`AlgebraicValue`] grammar.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::AlgebraicValue;
use crate::arith::gcd;
use crate::error::{Error, Result, TableViolation};
use crate::group::FiniteGroup;
use crate::structure::{class_lookup, ConjugacyClass};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TableDocument {
    group_name: String,
    group_order: u64,
    classes: Vec<ClassRecord>,
    characters: Vec<Vec<EntryText>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ClassRecord {
    pub label: String,
    pub size: u64,
    pub element_order: u64,
    pub inverse_class_index: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub power_map: BTreeMap<u64, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum EntryText {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_name: String,
    pub group_order: u64,
    pub classes: Vec<ClassRecord>,
    /// One row per irreducible character, one entry per class.
    pub characters: Vec<Vec<AlgebraicValue>>,
    identity_class: usize,
}

pub fn load_character_table(document: &str) -> Result<CharacterTable> {
    let doc: TableDocument =
        serde_json::from_str(document).map_err(|e| Error::Parse(format!("table document: {e}")))?;
    let mut characters = Vec::with_capacity(doc.characters.len());
    for (ci, row) in doc.characters.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            let v = match e {
                EntryText::Int(n) => AlgebraicValue::from_integer(*n),
                EntryText::Text(s) => AlgebraicValue::parse(s).map_err(|err| {
                    Error::Parse(format!("character {} class {}: {err}", ci + 1, j))
                })?,
            };
            parsed.push(v);
        }
        characters.push(parsed);
    }
    CharacterTable::new(doc.group_name, doc.group_order, doc.classes, characters)
}

impl CharacterTable {
    /// Builds a table and checks every structural invariant.
    pub fn new(
        group_name: String,
        group_order: u64,
        classes: Vec<ClassRecord>,
        characters: Vec<Vec<AlgebraicValue>>,
    ) -> Result<Self> {
        use TableViolation::*;
        let k = classes.len();
        if k == 0 {
            return Err(Error::table(Shape, "no classes"));
        }
        if characters.len() != k {
            return Err(Error::table(
                Shape,
                format!("{} characters for {k} classes", characters.len()),
            ));
        }
        if let Some((i, row)) = characters.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(Error::table(
                Shape,
                format!(
                    "character {} has {} entries, expected {k}",
                    i + 1,
                    row.len()
                ),
            ));
        }
        let identities: Vec<usize> = (0..k).filter(|&i| classes[i].element_order == 1).collect();
        let identity_class = match identities.as_slice() {
            [i] if classes[*i].size == 1 => *i,
            _ => {
                return Err(Error::table(
                    Shape,
                    "expected exactly one identity class of size 1",
                ))
            }
        };
        if classes
            .iter()
            .any(|c| c.size == 0 || !group_order.is_multiple_of(c.size))
        {
            return Err(Error::table(
                ClassSum,
                "class size does not divide the group order",
            ));
        }
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != group_order {
            return Err(Error::table(
                ClassSum,
                format!("class sizes sum to {total}, group order is {group_order}"),
            ));
        }

        let table = CharacterTable {
            group_name,
            group_order,
            classes,
            characters,
            identity_class,
        };
        table.check_degrees()?;
        table.check_inverse_map()?;
        table.check_power_map()?;
        table.check_orthogonality()?;
        Ok(table)
    }

    fn check_degrees(&self) -> Result<()> {
        let mut sum = BigInt::zero();
        for (i, row) in self.characters.iter().enumerate() {
            let d = row[self.identity_class]
                .as_integer()
                .filter(|d| d.is_positive())
                .ok_or_else(|| {
                    Error::table(
                        TableViolation::DegreeSum,
                        format!("character {} has non-integral degree", i + 1),
                    )
                })?;
            sum += &d * &d;
        }
        if sum != BigInt::from(self.group_order) {
            return Err(Error::table(
                TableViolation::DegreeSum,
                format!(
                    "sum of squared degrees is {sum}, group order is {}",
                    self.group_order
                ),
            ));
        }
        Ok(())
    }

    fn check_inverse_map(&self) -> Result<()> {
        let k = self.classes.len();
        for (i, c) in self.classes.iter().enumerate() {
            let j = c.inverse_class_index;
            let err = |m: String| Err(Error::table(TableViolation::InverseMap, m));
            if j >= k {
                return err(format!("class {} inverse index {j} out of range", c.label));
            }
            if self.classes[j].inverse_class_index != i {
                return err(format!("inverse map is not an involution at {}", c.label));
            }
            let o = &self.classes[j];
            if o.element_order != c.element_order || o.size != c.size {
                return err(format!(
                    "{} and its inverse class {} differ in order or size",
                    c.label, o.label
                ));
            }
            for (ci, row) in self.characters.iter().enumerate() {
                if row[j] != row[i].conj() {
                    return err(format!(
                        "character {} is not conjugate on {} and its inverse class",
                        ci + 1,
                        c.label
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_power_map(&self) -> Result<()> {
        for c in &self.classes {
            for (&e, &target) in &c.power_map {
                let Some(t) = self.classes.get(target) else {
                    return Err(Error::table(
                        TableViolation::PowerMap,
                        format!("{} power map target {target} out of range", c.label),
                    ));
                };
                let expect = c.element_order / gcd(c.element_order, e);
                if t.element_order != expect {
                    return Err(Error::table(
                        TableViolation::PowerMap,
                        format!(
                            "{}^{e} should have order {expect}, class {} has order {}",
                            c.label, t.label, t.element_order
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Exact column orthogonality: `Σ_χ χ(g_i) conj(χ(g_j)) = δ_ij |G| / |C_i|`.
    fn check_orthogonality(&self) -> Result<()> {
        let k = self.classes.len();
        for i in 0..k {
            for j in i..k {
                let s: AlgebraicValue = self
                    .characters
                    .iter()
                    .map(|row| &row[i] * &row[j].conj())
                    .sum();
                let expect = if i == j {
                    AlgebraicValue::from_rational(BigRational::new(
                        self.group_order.into(),
                        self.classes[i].size.into(),
                    ))
                } else {
                    AlgebraicValue::zero()
                };
                if s != expect {
                    return Err(Error::table(
                        TableViolation::Orthogonality,
                        format!(
                            "columns {} and {} give {s}, expected {expect}",
                            self.classes[i].label, self.classes[j].label
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn degree(&self, character: usize) -> BigInt {
        self.characters[character][self.identity_class]
            .as_integer()
            .expect("validated at construction")
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.classes.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.classes.len(),
            });
        }
        Ok(())
    }

    /// The summands `χ(g_i) χ(g_j) χ(g_k) / χ(1)` in character order.
    pub fn character_sum_terms(&self, i: usize, j: usize, k: usize) -> Result<Vec<AlgebraicValue>> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        Ok((0..self.characters.len())
            .map(|c| {
                let row = &self.characters[c];
                let prod = &(&row[i] * &row[j]) * &row[k];
                prod.div_rational(&BigRational::from_integer(self.degree(c)))
                    .expect("degree is positive")
            })
            .collect())
    }

    pub fn character_sum(&self, i: usize, j: usize, k: usize) -> Result<AlgebraicValue> {
        Ok(self.character_sum_terms(i, j, k)?.into_iter().sum())
    }

    /// `#{(x, y, z) in C_i x C_j x C_k : xyz = 1}` from the table:
    /// `|C_i||C_j||C_k| / |G| · Σ_χ χ(g_i) χ(g_j) conj(χ(g_k^-1)) / χ(1)`.
    pub fn structure_constant_count(&self, i: usize, j: usize, k: usize) -> Result<u64> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        let k_inv = self.classes[k].inverse_class_index;
        let sum: AlgebraicValue = (0..self.characters.len())
            .map(|c| {
                let row = &self.characters[c];
                let prod = &(&row[i] * &row[j]) * &row[k_inv].conj();
                prod.div_rational(&BigRational::from_integer(self.degree(c)))
                    .expect("degree is positive")
            })
            .sum();
        let factor = BigRational::new(
            BigInt::from(self.classes[i].size)
                * BigInt::from(self.classes[j].size)
                * BigInt::from(self.classes[k].size),
            BigInt::from(self.group_order),
        );
        let total = sum.scale(&factor);
        let n = total.as_integer().ok_or_else(|| {
            Error::TableInconsistent(format!(
                "class triple ({}, {}, {}) gives non-integral count {total}",
                self.classes[i].label, self.classes[j].label, self.classes[k].label
            ))
        })?;
        n.to_u64().ok_or_else(|| {
            Error::TableInconsistent(format!(
                "class triple ({}, {}, {}) gives negative count {n}",
                self.classes[i].label, self.classes[j].label, self.classes[k].label
            ))
        })
    }
}

/// Assignment of table classes to computed classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMatching {
    /// `table_to_class[t]` is the index into the computed class list.
    pub table_to_class: Vec<usize>,
    /// Every bijection consistent with orders, sizes, inverse map and power
    /// maps; the first one is `table_to_class`.
    pub consistent: Vec<Vec<usize>>,
}

impl ClassMatching {
    pub fn is_ambiguous(&self) -> bool {
        self.consistent.len() > 1
    }

    /// Table class indices whose image differs between consistent matchings.
    pub fn ambiguous_classes(&self) -> Vec<usize> {
        (0..self.table_to_class.len())
            .filter(|&t| {
                self.consistent
                    .iter()
                    .any(|m| m[t] != self.table_to_class[t])
            })
            .collect()
    }
}

const MAX_MATCHINGS: usize = 64;

/// Binds table classes to computed classes by `(element order, size)`,
/// narrowed by the inverse map and declared power maps. Classes that stay
/// interchangeable (e.g. two order-5 classes swapped by an outer
/// automorphism) are reported through [`ClassMatching::consistent`].
pub fn match_classes(
    g: &FiniteGroup,
    classes: &[ConjugacyClass],
    t: &CharacterTable,
) -> Result<ClassMatching> {
    if g.order() as u64 != t.group_order {
        return Err(Error::WrongTable(format!(
            "group order {} but table `{}` is for order {}",
            g.order(),
            t.group_name,
            t.group_order
        )));
    }
    let mut computed: Vec<(u64, u64)> = classes
        .iter()
        .map(|c| (c.element_order, c.size as u64))
        .collect();
    let mut declared: Vec<(u64, u64)> = t
        .classes
        .iter()
        .map(|c| (c.element_order, c.size))
        .collect();
    computed.sort_unstable();
    declared.sort_unstable();
    if computed != declared {
        return Err(Error::WrongTable(format!(
            "class profile (order, size) of the group differs from table `{}`",
            t.group_name
        )));
    }

    let lookup = class_lookup(g, classes);
    let image = |c: usize, e: u64| lookup[g.pow(classes[c].rep_id, e).index()];
    let inverse = |c: usize| lookup[g.inv(classes[c].rep_id).index()];

    let consistent_pair = |assign: &[Option<usize>], tc: usize| -> bool {
        let c = assign[tc].expect("assigned");
        let rec = &t.classes[tc];
        if let Some(ci) = assign[rec.inverse_class_index] {
            if inverse(c) != ci {
                return false;
            }
        }
        for (&e, &target) in &rec.power_map {
            if let Some(ct) = assign[target] {
                if image(c, e) != ct {
                    return false;
                }
            }
        }
        true
    };

    let n = t.classes.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut found = Vec::new();

    fn backtrack(
        pos: usize,
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
        candidates: &dyn Fn(usize, usize) -> bool,
        check: &dyn Fn(&[Option<usize>], usize) -> bool,
    ) {
        if found.len() >= MAX_MATCHINGS {
            return;
        }
        let n = assign.len();
        if pos == n {
            // constraints whose target was assigned after their source
            if (0..n).all(|tc| check(assign, tc)) {
                found.push(assign.iter().map(|a| a.expect("complete")).collect());
            }
            return;
        }
        for c in 0..n {
            if used[c] || !candidates(pos, c) {
                continue;
            }
            assign[pos] = Some(c);
            used[c] = true;
            if check(assign, pos) {
                backtrack(pos + 1, assign, used, found, candidates, check);
            }
            assign[pos] = None;
            used[c] = false;
        }
    }

    let candidates = |tc: usize, c: usize| {
        let rec = &t.classes[tc];
        rec.element_order == classes[c].element_order && rec.size == classes[c].size as u64
    };
    backtrack(
        0,
        &mut assign,
        &mut used,
        &mut found,
        &candidates,
        &consistent_pair,
    );

    let first = found.first().cloned().ok_or_else(|| {
        Error::WrongTable(format!(
            "no class bijection is consistent with the power maps of `{}`",
            t.group_name
        ))
    })?;
    Ok(ClassMatching {
        table_to_class: first,
        consistent: found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{
        "groupName": "S3", "groupOrder": 6,
        "classes": [
            {"label": "1A", "size": 1, "elementOrder": 1, "inverseClassIndex": 0},
            {"label": "2A", "size": 3, "elementOrder": 2, "inverseClassIndex": 1, "powerMap": {"2": 0}},
            {"label": "3A", "size": 2, "elementOrder": 3, "inverseClassIndex": 2, "powerMap": {"3": 0}}
        ],
        "characters": [[1, 1, 1], [1, -1, 1], ["2", "0", "-1"]]
    }"#;

    const C3: &str = r#"{
        "groupName": "C3", "groupOrder": 3,
        "classes": [
            {"label": "1A", "size": 1, "elementOrder": 1, "inverseClassIndex": 0},
            {"label": "3A", "size": 1, "elementOrder": 3, "inverseClassIndex": 2, "powerMap": {"2": 2}},
            {"label": "3B", "size": 1, "elementOrder": 3, "inverseClassIndex": 1, "powerMap": {"2": 1}}
        ],
        "characters": [
            [1, 1, 1],
            [1, "(-1+i*r3)/2", "(-1-i*r3)/2"],
            [1, "(-1-i*r3)/2", "(-1+i*r3)/2"]
        ]
    }"#;

    #[test]
    fn loads_s3() {
        let t = load_character_table(S3).unwrap();
        assert_eq!(t.num_classes(), 3);
        assert_eq!(
            t.character_sum(0, 0, 0).unwrap(),
            AlgebraicValue::from_integer(6)
        );
        assert_eq!(t.structure_constant_count(0, 0, 0).unwrap(), 1);
        // (2A, 2A, 3A): 3 * 3 * 2 / 6 * (1 + 1 + 0) = 6
        assert_eq!(t.structure_constant_count(1, 1, 2).unwrap(), 6);
    }

    #[test]
    fn complex_table_uses_inverse_classes() {
        let t = load_character_table(C3).unwrap();
        // x y z = 1 with x, y in 3A forces z = (x y)^-1 = g^-2 = g, in 3A
        assert_eq!(t.structure_constant_count(1, 1, 1).unwrap(), 1);
        assert_eq!(t.structure_constant_count(1, 1, 2).unwrap(), 0);
        assert_eq!(t.structure_constant_count(1, 2, 0).unwrap(), 1);
    }

    fn violation(doc: &str) -> TableViolation {
        match load_character_table(doc) {
            Err(Error::TableInvalid { violation, .. }) => violation,
            other => panic!("expected table-invalid, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            violation(&S3.replace(r#"["2", "0", "-1"]"#, r#"["2", "0"]"#)),
            TableViolation::Shape
        );
        assert_eq!(
            violation(&S3.replace(r#"["2", "0", "-1"]"#, r#"["2", "0", "1"]"#)),
            TableViolation::Orthogonality
        );
        assert_eq!(
            violation(&S3.replace(r#"["2", "0", "-1"]"#, r#"["3", "0", "-1"]"#)),
            TableViolation::DegreeSum
        );
        assert_eq!(
            violation(&S3.replace(
                r#""inverseClassIndex": 2, "powerMap""#,
                r#""inverseClassIndex": 1, "powerMap""#
            )),
            TableViolation::InverseMap
        );
        assert_eq!(
            violation(&S3.replace(r#"{"3": 0}"#, r#"{"3": 1}"#)),
            TableViolation::PowerMap
        );
        assert_eq!(
            violation(&S3.replace(r#""size": 3"#, r#""size": 2"#)),
            TableViolation::ClassSum
        );
        assert!(matches!(
            load_character_table(&S3.replace(r#""-1"]"#, r#""z3"]"#)),
            Err(Error::Parse(_))
        ));
        assert!(matches!(load_character_table("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn index_errors() {
        let t = load_character_table(S3).unwrap();
        assert!(matches!(
            t.character_sum(0, 3, 0),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
        assert!(t.structure_constant_count(9, 0, 0).is_err());
    }
}
