//! Integer partitions, normalized spectra, and the lexicographic and
//! dominance orders.
//!
//! Everything here is exact: parts are `usize`, spectra are big rationals, and
//! no comparison ever goes through floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is the lexicographic order. Since parts are positive,
/// comparing `Vec`s element-wise agrees with comparison after zero padding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts are not
    /// weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last() != Some(&0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The rectangle `(width^height)`; empty if either side is zero.
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        Self { parts: vec![width; height] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn is_rectangular(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// Componentwise minimum.
    pub fn intersect(&self, other: &Partition) -> Partition {
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| *a.min(b)).collect();
        Self::from_sorted(parts)
    }

    /// The skew shape `self \ inner` as a partition, when it is one.
    ///
    /// The shape qualifies when its nonempty rows are consecutive, start in
    /// the same column, and have weakly decreasing lengths (it is a translate
    /// of a Young diagram). The result is the list of row lengths.
    pub fn skew_as_partition(&self, inner: &Partition) -> Result<Partition> {
        if !self.contains(inner) {
            return Err(Error::ContainmentViolation { outer: self.clone(), inner: inner.clone() });
        }
        let not_a_partition = || Error::NotAPartition { outer: self.clone(), inner: inner.clone() };

        let rows: Vec<(usize, usize)> = (0..self.length())
            .map(|i| (inner.part(i), self.part(i) - inner.part(i)))
            .collect();
        let Some(first) = rows.iter().position(|&(_, d)| d > 0) else {
            return Ok(Partition::empty());
        };
        let last = rows.iter().rposition(|&(_, d)| d > 0).unwrap();
        let band = &rows[first..=last];
        let start_col = band[0].0;
        if band.iter().any(|&(c, d)| d == 0 || c != start_col) {
            return Err(not_a_partition());
        }
        Partition::new(band.iter().map(|&(_, d)| d).collect()).map_err(|_| not_a_partition())
    }

    /// Every part multiplied by `ell`.
    pub fn scale(&self, ell: usize) -> Partition {
        assert!(ell >= 1, "scale factor must be positive");
        Self::from_sorted(self.parts.iter().map(|p| p * ell).collect())
    }

    /// `self / |self|` as an exact probability vector.
    pub fn normalize(&self) -> Result<RationalSpectrum> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let total = BigInt::from(self.size());
        let entries = self
            .parts
            .iter()
            .map(|&p| Rational::new(BigInt::from(p), total.clone()))
            .collect();
        Ok(RationalSpectrum { entries })
    }

    /// Multiplicity form, e.g. `(4,4,1,1)` gives `[(4, 2), (1, 2)]`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `[4,1,1]`, `[2^5]`, `[4^2,1,1]`, `[]`; brackets and whitespace
/// are optional.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body).trim();
        let mut parts = Vec::new();
        if !body.is_empty() {
            for token in body.split(',') {
                let token = token.trim();
                let (base, exp) = match token.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| err("bad exponent"))?),
                    None => (token, 1),
                };
                let base: usize = base.parse().map_err(|_| err("bad part"))?;
                if base == 0 {
                    return Err(err("parts must be positive"));
                }
                parts.extend(std::iter::repeat_n(base, exp));
            }
        }
        Partition::new(parts).map_err(|_| err("parts must be weakly decreasing"))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A weakly decreasing vector of exact rationals in `[0, 1]` summing to one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSpectrum {
    entries: Vec<Rational>,
}

impl RationalSpectrum {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        if entries.iter().any(|e| *e < zero || *e > one) {
            return Err(Error::Domain("spectrum entries must lie in [0, 1]".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("spectrum entries must be weakly decreasing".into()));
        }
        if entries.iter().fold(Rational::zero(), |acc, e| acc + e) != one {
            return Err(Error::Domain("spectrum entries must sum to 1".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Number of nonzero entries.
    pub fn rank(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|e| e.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `"p/q"` strings; integers print bare.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }
}

impl fmt::Display for RationalSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for RationalSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for RationalSpectrum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalSpectrum {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_lex(&self.entries, &other.entries)
    }
}

impl Serialize for RationalSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

/// Lexicographic comparison with the shorter sequence padded by zeros.
pub fn cmp_lex<T: Ord + Zero>(a: &[T], b: &[T]) -> Ordering {
    let zero = T::zero();
    let len = a.len().max(b.len());
    for i in 0..len {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Dominance (majorization) order on partitions of the same size.
///
/// `Some(Less)` means `a ⊴ b` with `a ≠ b`; `None` means incomparable.
pub fn cmp_dominance(a: &Partition, b: &Partition) -> Result<Option<Ordering>> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch(format!("{a} has size {}, {b} has size {}", a.size(), b.size())));
    }
    let len = a.length().max(b.length());
    let (mut sa, mut sb) = (0usize, 0usize);
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        sa += a.part(i);
        sb += b.part(i);
        le &= sa <= sb;
        ge &= sa >= sb;
    }
    Ok(match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    })
}

/// All partitions of `n` (length at most `max_length` if given), in
/// decreasing lexicographic order.
pub fn enumerate_partitions(n: usize, max_length: Option<usize>) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        if slots == 0 || cap * slots < rest {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_length.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}
