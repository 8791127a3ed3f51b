//! Integer cost vectors and the dominance / lexicographic orders on them.
//!
//! All search quantities (`g`, `h`, `f`, edge costs, re-expansion keys) are
//! [`CostVec`]s of a fixed length `M` per problem instance. User-supplied
//! hyperparameters that may be infinite are [`BoundVec`]s.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

/// Largest edge cost component accepted in an instance. Paths of fewer than
/// 2^32 edges can then be summed in a `u64` without overflow.
pub const MAX_EDGE_COMPONENT: u64 = u32::MAX as u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("cost component overflow while adding {a} + {b}")]
    Overflow { a: CostVec, b: CostVec },
    #[error("cost vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid bound component `{0}` (expected a non-negative integer or `inf`)")]
    ParseBound(String),
    #[error("bound vector has {got} components, expected 1 or {expected}")]
    BoundLength { got: usize, expected: usize },
}

type Storage = SmallVec<[u64; 4]>;

/// A vector of `M` non-negative integer cost components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CostVec(Storage);

impl CostVec {
    pub fn zeros(m: usize) -> Self {
        CostVec(smallvec::smallvec![0; m])
    }

    pub fn from_slice(components: &[u64]) -> Self {
        CostVec(Storage::from_slice(components))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Drops the first component. Used by the dimensionality-reduced
    /// frontiers, where the first component is implied by extraction order.
    pub fn truncate_first(&self) -> CostVec {
        CostVec(Storage::from_slice(&self.0[1..]))
    }

    pub fn checked_add(&self, other: &CostVec) -> Result<CostVec, CostError> {
        check_len(self, other);
        let mut out = Storage::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.checked_add(*b) {
                Some(s) => out.push(s),
                None => {
                    return Err(CostError::Overflow {
                        a: self.clone(),
                        b: other.clone(),
                    })
                }
            }
        }
        Ok(CostVec(out))
    }

    /// Renders as `c1,c2,...`, the format used by traces and oracle output.
    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

impl From<Vec<u64>> for CostVec {
    fn from(v: Vec<u64>) -> Self {
        CostVec(Storage::from_vec(v))
    }
}

impl<const N: usize> From<[u64; N]> for CostVec {
    fn from(v: [u64; N]) -> Self {
        CostVec::from_slice(&v)
    }
}

impl Index<usize> for CostVec {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl fmt::Debug for CostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Display for CostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

/// Lexicographic order, identical to [`lex_compare`].
impl Ord for CostVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }
}

impl PartialOrd for CostVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics on overflow. Instances are validated against
/// [`MAX_EDGE_COMPONENT`] so this only fires on pathological inputs.
impl Add for &CostVec {
    type Output = CostVec;
    fn add(self, rhs: &CostVec) -> CostVec {
        match self.checked_add(rhs) {
            Ok(v) => v,
            Err(e) => panic!("fatal instance error: {e}"),
        }
    }
}

#[inline]
fn check_len(a: &CostVec, b: &CostVec) {
    assert_eq!(
        a.len(),
        b.len(),
        "cost vector length mismatch ({} vs {})",
        a.len(),
        b.len()
    );
}

/// `a ≺ b`: every component of `a` is `<=` the matching one of `b`, and `a != b`.
#[inline]
pub fn dominates(a: &CostVec, b: &CostVec) -> bool {
    check_len(a, b);
    let mut strict = false;
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

/// `a ⪯ b`: every component of `a` is `<=` the matching one of `b`.
#[inline]
pub fn weakly_dominates(a: &CostVec, b: &CostVec) -> bool {
    check_len(a, b);
    a.0.iter().zip(b.0.iter()).all(|(x, y)| x <= y)
}

#[inline]
pub fn lex_compare(a: &CostVec, b: &CostVec) -> Ordering {
    check_len(a, b);
    a.cmp(b)
}

pub fn vec_add(a: &CostVec, b: &CostVec) -> Result<CostVec, CostError> {
    a.checked_add(b)
}

/// One component of a [`BoundVec`]: a finite value or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u64),
    Unbounded,
}

impl Bound {
    pub fn is_zero(self) -> bool {
        self == Bound::Finite(0)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = CostError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Bound::Unbounded);
        }
        t.parse::<u64>()
            .map(Bound::Finite)
            .map_err(|_| CostError::ParseBound(s.to_string()))
    }
}

/// A vector of bounds, used for the partial-expansion window `C` and the
/// iterative-deepening trigger distance `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundVec(SmallVec<[Bound; 4]>);

impl BoundVec {
    pub fn new(components: Vec<Bound>) -> Self {
        BoundVec(SmallVec::from_vec(components))
    }

    pub fn splat(value: Bound, m: usize) -> Self {
        BoundVec(smallvec::smallvec![value; m])
    }

    pub fn zeros(m: usize) -> Self {
        Self::splat(Bound::Finite(0), m)
    }

    pub fn unbounded(m: usize) -> Self {
        Self::splat(Bound::Unbounded, m)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Bound] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| b.is_zero())
    }

    /// `v < self` strictly in every component (`∞` exceeds every finite value).
    pub fn strictly_exceeds(&self, v: &CostVec) -> bool {
        assert_eq!(self.len(), v.len(), "bound vector length mismatch");
        self.0.iter().zip(v.iter()).all(|(b, x)| match b {
            Bound::Unbounded => true,
            Bound::Finite(d) => x < *d,
        })
    }

    /// Parses `inf`, `3`, `1,2,inf` or `1;2;inf`. A single value is
    /// replicated across all `m` components.
    pub fn parse(s: &str, m: usize) -> Result<Self, CostError> {
        let parts: Result<Vec<Bound>, _> = s.split([',', ';']).map(str::parse).collect();
        let parts = parts?;
        match parts.len() {
            1 => Ok(Self::splat(parts[0], m)),
            n if n == m => Ok(BoundVec::new(parts)),
            n => Err(CostError::BoundLength { got: n, expected: m }),
        }
    }

    /// Compact rendering: a single token when all components agree
    /// (`inf`, `0`), otherwise `a;b;c` so it stays a single CSV field.
    pub fn render(&self) -> String {
        match self.0.first() {
            Some(first) if self.0.iter().all(|b| b == first) => first.to_string(),
            _ => {
                let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
                parts.join(";")
            }
        }
    }
}

impl fmt::Display for BoundVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Returns `true` iff `f >_lex r + c`, with `∞` components of `c` making the
/// sum unbounded in that position.
pub fn lex_exceeds_window(f: &CostVec, r: &CostVec, c: &BoundVec) -> bool {
    assert_eq!(f.len(), r.len(), "cost vector length mismatch");
    assert_eq!(f.len(), c.len(), "bound vector length mismatch");
    for i in 0..f.len() {
        let upper = match c.0[i] {
            Bound::Unbounded => return false,
            Bound::Finite(ci) => match r[i].checked_add(ci) {
                Some(u) => u,
                None => return false,
            },
        };
        match f[i].cmp(&upper) {
            Ordering::Less => return false,
            Ordering::Greater => return true,
            Ordering::Equal => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[u64]) -> CostVec {
        CostVec::from_slice(c)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&v(&[1, 2]), &v(&[1, 3])));
        assert!(!dominates(&v(&[1, 2]), &v(&[1, 2])));
        assert!(!dominates(&v(&[1, 2]), &v(&[2, 1])));

        assert!(weakly_dominates(&v(&[1, 2]), &v(&[1, 2])));
        assert!(weakly_dominates(&v(&[1, 2]), &v(&[1, 3])));
        assert!(!weakly_dominates(&v(&[2, 1]), &v(&[1, 2])));
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&v(&[1, 9]), &v(&[2, 0])), Ordering::Less);
        assert_eq!(lex_compare(&v(&[3, 3]), &v(&[3, 3])), Ordering::Equal);
        assert_eq!(lex_compare(&v(&[3, 4]), &v(&[3, 3])), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(vec_add(&v(&[1, 2]), &v(&[3, 4])).unwrap(), v(&[4, 6]));
        assert_eq!(vec_add(&v(&[0, 0]), &v(&[5, 7])).unwrap(), v(&[5, 7]));
        assert_eq!(vec_add(&v(&[9, 1]), &v(&[1, 9])).unwrap(), v(&[10, 10]));
    }

    #[test]
    fn add_overflow_is_reported() {
        let err = vec_add(&v(&[u64::MAX, 0]), &v(&[1, 0])).unwrap_err();
        assert!(matches!(err, CostError::Overflow { .. }));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn length_mismatch_panics() {
        dominates(&v(&[1, 2]), &v(&[1, 2, 3]));
    }

    #[test]
    fn window_comparison() {
        let c = BoundVec::splat(Bound::Finite(2), 2);
        assert!(!lex_exceeds_window(&v(&[5, 9]), &v(&[4, 4]), &c));
        assert!(lex_exceeds_window(&v(&[7, 0]), &v(&[4, 4]), &c));
        assert!(lex_exceeds_window(&v(&[6, 7]), &v(&[4, 4]), &c));
        assert!(!lex_exceeds_window(&v(&[6, 6]), &v(&[4, 4]), &c));
        let inf = BoundVec::unbounded(2);
        assert!(!lex_exceeds_window(&v(&[1000, 1000]), &v(&[0, 0]), &inf));
        let mixed = BoundVec::new(vec![Bound::Finite(0), Bound::Unbounded]);
        assert!(!lex_exceeds_window(&v(&[4, 1000]), &v(&[4, 0]), &mixed));
        assert!(lex_exceeds_window(&v(&[5, 0]), &v(&[4, 0]), &mixed));
    }

    #[test]
    fn bound_parsing() {
        assert_eq!(BoundVec::parse("inf", 3).unwrap(), BoundVec::unbounded(3));
        assert_eq!(BoundVec::parse("0", 2).unwrap(), BoundVec::zeros(2));
        assert_eq!(
            BoundVec::parse("1,inf", 2).unwrap(),
            BoundVec::new(vec![Bound::Finite(1), Bound::Unbounded])
        );
        assert!(BoundVec::parse("1,2,3", 2).is_err());
        assert!(BoundVec::parse("-1", 2).is_err());
        assert_eq!(BoundVec::parse("3", 2).unwrap().render(), "3");
        assert_eq!(BoundVec::parse("1,inf", 2).unwrap().render(), "1;inf");
    }

    #[test]
    fn strictly_exceeds_is_componentwise_strict() {
        let d = BoundVec::splat(Bound::Finite(8), 2);
        assert!(d.strictly_exceeds(&v(&[7, 7])));
        assert!(!d.strictly_exceeds(&v(&[7, 8])));
        assert!(!BoundVec::zeros(2).strictly_exceeds(&v(&[0, 0])));
        assert!(BoundVec::unbounded(2).strictly_exceeds(&v(&[u64::MAX, 3])));
    }

    fn vec_strategy(m: usize) -> impl Strategy<Value = CostVec> {
        proptest::collection::vec(0u64..6, m).prop_map(CostVec::from)
    }

    proptest! {
        #[test]
        fn dominance_relations(a in vec_strategy(3), b in vec_strategy(3), c in vec_strategy(3)) {
            if dominates(&a, &b) {
                prop_assert!(weakly_dominates(&a, &b));
                prop_assert!(lex_compare(&a, &b) == Ordering::Less);
            }
            if weakly_dominates(&a, &b) && a != b {
                prop_assert!(dominates(&a, &b));
            }
            if weakly_dominates(&a, &b) {
                prop_assert!(lex_compare(&a, &b) != Ordering::Greater);
            }
            prop_assert!(!dominates(&a, &a));
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
            prop_assert_eq!(lex_compare(&a, &b), lex_compare(&b, &a).reverse());
        }
    }
}
