//! Finite abelian groups as products of cyclic factors.
//!
//! Elements are dense indices `0..n` under a row-major mixed-radix encoding of
//! the coordinate tuple `(a_1, ..., a_r)`: the last coordinate varies fastest,
//! so `Z/2 x Z/4` lays out `(0,0), (0,1), (0,2), (0,3), (1,0), ...`.

use std::fmt;
use std::sync::Arc;

use crate::bits::{self, or_range, range_is_empty};
use crate::error::{Error, Result};
use crate::smith::smith;

/// Element of a [`Group`], identified by its mixed-radix index.
pub type Element = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    factors: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.spec())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl Group {
    /// Builds `Z/d_1 x ... x Z/d_r`. An empty factor list gives the trivial group.
    pub fn new(factors: &[usize]) -> Result<Arc<Group>> {
        if let Some(&bad) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidFactor(bad));
        }
        let mut order: usize = 1;
        for &d in factors {
            order = order.checked_mul(d).ok_or(Error::OrderOverflow)?;
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(Arc::new(Group {
            factors: factors.to_vec(),
            strides,
            order,
        }))
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: usize) -> Arc<Group> {
        assert!(n >= 1, "cyclic group order must be positive");
        if n == 1 {
            Group::new(&[]).expect("trivial group")
        } else {
            Group::new(&[n]).expect("valid cyclic factor")
        }
    }

    pub fn trivial() -> Arc<Group> {
        Group::cyclic(1)
    }

    /// Every abelian group of order `n` up to isomorphism, in invariant-factor
    /// form `e_1 | ... | e_s`, starting with `Z/n`.
    pub fn all_of_order(n: usize) -> Vec<Arc<Group>> {
        assert!(n >= 1, "group order must be positive");
        let mut rest = n;
        let mut primes = Vec::new();
        let mut p = 2;
        while p * p <= rest {
            let mut a = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            if a > 0 {
                primes.push((p, a));
            }
            p += 1;
        }
        if rest > 1 {
            primes.push((rest, 1));
        }
        // invariant factors as a descending list, largest first
        let mut shapes: Vec<Vec<usize>> = vec![vec![]];
        for (p, a) in primes {
            let mut next = Vec::new();
            for shape in &shapes {
                for part in partitions(a) {
                    let len = shape.len().max(part.len());
                    let merged = (0..len)
                        .map(|i| shape.get(i).copied().unwrap_or(1) * p.pow(part.get(i).copied().unwrap_or(0)))
                        .collect();
                    next.push(merged);
                }
            }
            shapes = next;
        }
        shapes
            .into_iter()
            .map(|mut f| {
                f.reverse();
                Group::new(&f).expect("factors are at least 2")
            })
            .collect()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Factors joined by `x`, the trivial group as `1`.
    pub fn spec(&self) -> String {
        if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
        }
    }

    /// Invariant factors `e_1 | e_2 | ... | e_s` of the group.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let r = self.rank();
        let m: Vec<Vec<i128>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j { self.factors[i] as i128 } else { 0 })
                    .collect()
            })
            .collect();
        smith(&m, r)
            .diagonal
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| d as usize)
            .collect()
    }

    pub fn check(&self, x: Element) -> Result<Element> {
        if x < self.order {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    pub fn coords(&self, x: Element) -> Vec<usize> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (x / s) % d)
            .collect()
    }

    /// Index of a coordinate tuple with `0 <= a_i < d_i`.
    pub fn index_of(&self, coords: &[usize]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::Config(format!(
                "tuple has {} coordinates, group {} has rank {}",
                coords.len(),
                self.spec(),
                self.rank()
            )));
        }
        let mut x = 0;
        for ((&a, &d), &s) in coords.iter().zip(&self.factors).zip(&self.strides) {
            if a >= d {
                return Err(Error::ElementOutOfRange { index: a, order: d });
            }
            x += a * s;
        }
        Ok(x)
    }

    /// Index of an integer coordinate vector, reducing each entry mod its factor.
    pub(crate) fn index_of_reduced(&self, coords: &[i128]) -> Element {
        coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&a, &d), &s)| a.rem_euclid(d as i128) as usize * s)
            .sum()
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.order && b < self.order);
        if self.factors.len() <= 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let mut x = (a / s) % d + (b / s) % d;
            if x >= d {
                x -= d;
            }
            out += x * s;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        debug_assert!(a < self.order);
        if self.factors.len() <= 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) % d;
            out += if x == 0 { 0 } else { (d - x) * s };
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `k * a`.
    pub fn mul(&self, k: usize, a: Element) -> Element {
        if self.factors.len() <= 1 {
            if self.order == 1 {
                return 0;
            }
            return ((k as u128 * a as u128) % self.order as u128) as usize;
        }
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) % d;
            out += ((k as u128 * x as u128) % d as u128) as usize * s;
        }
        out
    }

    pub fn checked_add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    pub fn checked_neg(&self, a: Element) -> Result<Element> {
        Ok(self.neg(self.check(a)?))
    }

    /// Order of an element, the lcm of its coordinate orders.
    pub fn element_order(&self, a: Element) -> usize {
        self.coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / gcd(x, d))
            .fold(1, lcm)
    }

    /// Integers coprime to the group exponent; multiplication by these is an
    /// automorphism. Only meaningful as the full automorphism group for cyclic groups.
    pub fn units(&self) -> Vec<usize> {
        let e = self.exponent();
        (1..e.max(2)).filter(|&u| gcd(u, e) == 1).collect()
    }

    pub fn exponent(&self) -> usize {
        self.factors.iter().copied().fold(1, lcm)
    }

    /// `dst |= src + g` over full-group bit masks.
    ///
    /// Translation by `g` permutes rows of length `d_r` (the last factor) by the
    /// leading part of `g` and rotates each row by `g`'s last coordinate.
    pub(crate) fn or_translate(&self, dst: &mut [u64], src: &[u64], g: Element) {
        let n = self.order;
        if n == 1 || g == 0 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d |= *s;
            }
            return;
        }
        let row_len = *self.factors.last().expect("non-trivial group");
        let rows = n / row_len;
        let shift = g % row_len;
        let lead = g - shift;
        for row in 0..rows {
            let src_start = row * row_len;
            if rows > 1 && range_is_empty(src, src_start, row_len) {
                continue;
            }
            let dst_start = if rows == 1 { 0 } else { self.add(src_start, lead) };
            if shift == 0 {
                or_range(dst, dst_start, src, src_start, row_len);
            } else {
                or_range(dst, dst_start + shift, src, src_start, row_len - shift);
                or_range(dst, dst_start, src, src_start + row_len - shift, shift);
            }
        }
    }

    /// Translation of a single-word mask (groups of order at most 64).
    #[inline]
    pub(crate) fn translate_word(&self, m: u64, g: Element) -> u64 {
        let n = self.order;
        debug_assert!(n <= bits::WORD);
        if g == 0 || m == 0 {
            return m;
        }
        if self.factors.len() == 1 {
            let full = bits::low_mask(n);
            return ((m << g) | (m >> (n - g))) & full;
        }
        let mut out = [0u64];
        self.or_translate(&mut out, &[m], g);
        out[0]
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Partitions of `a` as non-increasing parts, `[a]` first.
fn partitions(a: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            prefix.push(part);
            go(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(a, a, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_of_order() {
        let specs = |n| Group::all_of_order(n).iter().map(|g| g.spec()).collect::<Vec<_>>();
        assert_eq!(specs(1), vec!["1"]);
        assert_eq!(specs(7), vec!["7"]);
        assert_eq!(specs(12), vec!["12", "2x6"]);
        assert_eq!(specs(16), vec!["16", "2x8", "4x4", "2x2x4", "2x2x2x2"]);
        assert_eq!(Group::all_of_order(64).len(), 11);
        assert_eq!(Group::all_of_order(72).len(), 6);
        for g in Group::all_of_order(48) {
            assert_eq!(g.order(), 48);
            assert_eq!(g.invariant_factors(), g.factors());
        }
    }

    #[test]
    fn cyclic_add_and_neg() {
        let g = Group::cyclic(6);
        assert_eq!(g.add(4, 5), 3);
        assert_eq!(g.neg(2), 4);
        assert_eq!(g.neg(0), 0);
        assert_eq!(g.add(3, 0), 3);
    }

    #[test]
    fn product_coordinates() {
        let g = Group::new(&[2, 4]).unwrap();
        let a = g.index_of(&[1, 3]).unwrap();
        let b = g.index_of(&[1, 2]).unwrap();
        assert_eq!(g.coords(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.coords(g.neg(a)), vec![1, 1]);
        assert_eq!(g.element_order(a), 4);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let g = Group::cyclic(6);
        assert_eq!(
            g.checked_add(6, 1),
            Err(Error::ElementOutOfRange { index: 6, order: 6 })
        );
        assert!(Group::new(&[2, 1]).is_err());
    }

    #[test]
    fn trivial_group() {
        let g = Group::trivial();
        assert_eq!(g.order(), 1);
        assert_eq!(g.spec(), "1");
        assert_eq!(g.add(0, 0), 0);
        assert_eq!(g.neg(0), 0);
    }

    #[test]
    fn invariant_factors_of_products() {
        assert_eq!(Group::new(&[2, 3]).unwrap().invariant_factors(), vec![6]);
        assert_eq!(Group::new(&[4, 2, 6]).unwrap().invariant_factors(), vec![2, 2, 12]);
        assert!(Group::trivial().invariant_factors().is_empty());
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for factors in [vec![6], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![2, 3, 5]] {
            let g = Group::new(&factors).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add(a, g.neg(a)), 0);
                for b in 0..n {
                    assert_eq!(g.add(a, b), g.add(b, a));
                    for c in 0..n {
                        assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn word_translation_matches_elementwise() {
        for factors in [vec![13], vec![2, 4], vec![3, 5], vec![2, 2, 3], vec![4, 4, 4]] {
            let g = Group::new(&factors).unwrap();
            let n = g.order();
            let m: u64 = 0x9e37_79b9_7f4a_7c15 & bits::low_mask(n);
            for t in 0..n {
                let mut expect = 0u64;
                for x in 0..n {
                    if m >> x & 1 == 1 {
                        expect |= 1 << g.add(x, t);
                    }
                }
                assert_eq!(g.translate_word(m, t), expect, "{factors:?} by {t}");
            }
        }
    }
}
