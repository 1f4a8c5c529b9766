//! Group elements: permutations of `{1..n}` and invertible matrices over `GF(p)`.
//!
//! Permutations compose left to right: `(a * b)(i) = b(a(i))`, so `(1 2) * (1 3)`
//! is `(1 2 3)`. Matrices multiply row-times-column and are reduced mod `p`.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Parameters shared by all elements of one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Permutation { degree: usize },
    Matrix { dimension: usize, modulus: u32 },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Permutation { degree } => write!(f, "permutation of degree {degree}"),
            Shape::Matrix { dimension, modulus } => {
                write!(f, "{dimension}x{dimension} matrix mod {modulus}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[i]` is the image of point `i + 1`.
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let i = im as usize;
            if i == 0 || i > n {
                return Err(Error::InvalidElement(format!("image {im} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidElement(format!("image {im} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Parses disjoint cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (1..=degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty cycle string".into()));
        }
        while !rest.is_empty() {
            let inner_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in cycle string `{text}`")))?;
            let close = inner_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &inner_start[..close];
            rest = inner_start[close + 1..].trim_start();

            let mut points = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{text}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!(
                        "point {p} outside 1..={degree} in `{text}`"
                    )));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(Error::Parse(format!(
                        "point {p} appears twice in `{text}`; cycles must be disjoint"
                    )));
                }
                points.push(p);
            }
            for (k, &p) in points.iter().enumerate() {
                images[p - 1] = points[(k + 1) % points.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize - 1])
                .collect(),
        }
    }

    fn invert(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32 + 1);
                p = self.images[p] as usize - 1;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Square matrix over `GF(p)` with nonzero determinant, entries row-major in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    dimension: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl ModMatrix {
    pub fn new(dimension: usize, modulus: u32, entries: Vec<u32>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidElement(
                "matrix dimension must be positive".into(),
            ));
        }
        if !is_prime(modulus as u64) {
            return Err(Error::InvalidElement(format!(
                "modulus {modulus} is not prime"
            )));
        }
        if entries.len() != dimension * dimension {
            return Err(Error::InvalidElement(format!(
                "expected {} entries, got {}",
                dimension * dimension,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::InvalidElement(format!(
                "entry {e} outside [0, {modulus})"
            )));
        }
        let m = ModMatrix {
            dimension,
            modulus,
            entries,
        };
        if m.determinant() == 0 {
            return Err(Error::InvalidElement("matrix is singular".into()));
        }
        Ok(m)
    }

    pub fn from_rows(modulus: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidElement("matrix is not square".into()));
        }
        Self::new(d, modulus, rows.concat())
    }

    pub fn identity(dimension: usize, modulus: u32) -> Self {
        let mut entries = vec![0; dimension * dimension];
        for i in 0..dimension {
            entries[i * dimension + i] = 1;
        }
        ModMatrix {
            dimension,
            modulus,
            entries,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dimension + col]
    }

    fn compose(&self, other: &Self) -> Self {
        let d = self.dimension;
        let p = self.modulus as u64;
        let mut entries = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0u64;
                for k in 0..d {
                    acc += self.entries[i * d + k] as u64 * other.entries[k * d + j] as u64;
                }
                entries[i * d + j] = (acc % p) as u32;
            }
        }
        ModMatrix {
            dimension: d,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn determinant(&self) -> u32 {
        let d = self.dimension;
        let p = self.modulus as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&e| e as u64).collect();
        let mut det = 1u64;
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| a[r * d + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for c in 0..d {
                    a.swap(pivot * d + c, col * d + c);
                }
                det = (p - det) % p;
            }
            let pv = a[col * d + col];
            det = det * pv % p;
            let inv = mod_inverse(pv, p);
            for r in col + 1..d {
                let factor = a[r * d + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for c in col..d {
                    a[r * d + c] = (a[r * d + c] + p * p - factor * a[col * d + c]) % p;
                }
            }
        }
        det as u32
    }

    /// Gauss-Jordan elimination on `[A | I]` mod p.
    fn invert(&self) -> Self {
        let d = self.dimension;
        let p = self.modulus as u64;
        let w = 2 * d;
        let mut a = vec![0u64; d * w];
        for r in 0..d {
            for c in 0..d {
                a[r * w + c] = self.entries[r * d + c] as u64;
            }
            a[r * w + d + r] = 1;
        }
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| a[r * w + col] != 0)
                .expect("invertible by construction");
            if pivot != col {
                for c in 0..w {
                    a.swap(pivot * w + c, col * w + c);
                }
            }
            let inv = mod_inverse(a[col * w + col], p);
            for c in 0..w {
                a[col * w + c] = a[col * w + c] * inv % p;
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let factor = a[r * w + col];
                if factor == 0 {
                    continue;
                }
                for c in 0..w {
                    a[r * w + c] = (a[r * w + c] + p * p - factor * a[col * w + c]) % p;
                }
            }
        }
        let mut entries = vec![0u32; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[r * d + c] = a[r * w + d + c] as u32;
            }
        }
        ModMatrix {
            dimension: d,
            modulus: self.modulus,
            entries,
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.dimension {
            if r > 0 {
                f.write_str(",")?;
            }
            let row: Vec<String> = self.entries[r * self.dimension..(r + 1) * self.dimension]
                .iter()
                .map(u32::to_string)
                .collect();
            write!(f, "[{}]", row.join(","))?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Permutation(Permutation),
    Matrix(ModMatrix),
}

impl GroupElement {
    pub fn shape(&self) -> Shape {
        match self {
            GroupElement::Permutation(p) => Shape::Permutation { degree: p.degree() },
            GroupElement::Matrix(m) => Shape::Matrix {
                dimension: m.dimension,
                modulus: m.modulus,
            },
        }
    }

    pub fn identity(shape: Shape) -> Self {
        match shape {
            Shape::Permutation { degree } => {
                GroupElement::Permutation(Permutation::identity(degree))
            }
            Shape::Matrix { dimension, modulus } => {
                GroupElement::Matrix(ModMatrix::identity(dimension, modulus))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Permutation(p) => p
                .images
                .iter()
                .enumerate()
                .all(|(i, &im)| im as usize == i + 1),
            GroupElement::Matrix(m) => {
                let d = m.dimension;
                m.entries
                    .iter()
                    .enumerate()
                    .all(|(k, &e)| e == u32::from(k / d == k % d))
            }
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (GroupElement::Permutation(a), GroupElement::Permutation(b))
                if a.degree() == b.degree() =>
            {
                Ok(GroupElement::Permutation(a.compose(b)))
            }
            (GroupElement::Matrix(a), GroupElement::Matrix(b))
                if a.dimension == b.dimension && a.modulus == b.modulus =>
            {
                Ok(GroupElement::Matrix(a.compose(b)))
            }
            _ => Err(Error::IncompatibleElements(format!(
                "{} vs {}",
                self.shape(),
                other.shape()
            ))),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Permutation(p) => GroupElement::Permutation(p.invert()),
            GroupElement::Matrix(m) => GroupElement::Matrix(m.invert()),
        }
    }

    /// Smallest `k >= 1` with `self^k = 1`, by repeated multiplication.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.multiply(self).expect("same shape");
            k += 1;
        }
        k
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = GroupElement::identity(self.shape());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base).expect("same shape");
            }
            base = base.multiply(&base).expect("same shape");
            e >>= 1;
        }
        result
    }

    /// Canonical byte encoding: a tag byte, the shape parameters, then the
    /// image sequence or row-major entries, all as big-endian `u32`.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        match self {
            GroupElement::Permutation(p) => {
                out.push(0);
                out.extend_from_slice(&(p.degree() as u32).to_be_bytes());
                for &im in &p.images {
                    out.extend_from_slice(&im.to_be_bytes());
                }
            }
            GroupElement::Matrix(m) => {
                out.push(1);
                out.extend_from_slice(&(m.dimension as u32).to_be_bytes());
                out.extend_from_slice(&m.modulus.to_be_bytes());
                for &e in &m.entries {
                    out.extend_from_slice(&e.to_be_bytes());
                }
            }
        }
        out
    }
}

/// Orders elements exactly as their canonical encodings compare bytewise.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Permutation(a), GroupElement::Permutation(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.images.cmp(&b.images)),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => a
                .dimension
                .cmp(&b.dimension)
                .then(a.modulus.cmp(&b.modulus))
                .then_with(|| a.entries.cmp(&b.entries)),
            (GroupElement::Permutation(_), GroupElement::Matrix(_)) => Ordering::Less,
            (GroupElement::Matrix(_), GroupElement::Permutation(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Permutation(p) => p.fmt(f),
            GroupElement::Matrix(m) => m.fmt(f),
        }
    }
}

impl From<Permutation> for GroupElement {
    fn from(p: Permutation) -> Self {
        GroupElement::Permutation(p)
    }
}

impl From<ModMatrix> for GroupElement {
    fn from(m: ModMatrix) -> Self {
        GroupElement::Matrix(m)
    }
}
