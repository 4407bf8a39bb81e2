//! Permutations in image-array form.
//!
//! Points are 1-based in every textual form and 0-based in storage.
//! Products act left to right: `a.compose(&b)` maps `i` to `b(a(i))`.

use std::fmt;
use std::ops::Mul;

use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(GroupError::Parse {
                    token: x.to_string(),
                    reason: format!("image out of range 1..{n}"),
                });
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(GroupError::Parse {
                    token: x.to_string(),
                    reason: "image repeated".into(),
                });
            }
            out.push((x - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Unchecked constructor from 0-based images.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub(crate) fn apply0(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Left-to-right product: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^-1 * other * self`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().then(self).then(x)
    }

    /// The commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.comm(other))
    }

    pub(crate) fn comm(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles as 1-based point lists, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Smallest moved point, 0-based.
    pub(crate) fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Restriction to the block `offset..offset+len` (0-based), relabelled to `0..len`.
    /// The block must be invariant.
    pub(crate) fn restrict(&self, offset: usize, len: usize) -> Permutation {
        Permutation {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset as u32)
                .collect(),
        }
    }

    /// Embeds into degree `degree`, shifting every point by `offset`.
    pub(crate) fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.degree())
    }
}

/// Parses a product of disjoint cycles such as `"(1,2,3)(4 5)"` at the given degree.
///
/// Points inside a cycle are separated by commas or whitespace. `""` and `"()"`
/// denote the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let err = |token: &str, reason: &str| GroupError::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            let end = text[pos..]
                .find(|ch: char| ch == '(' || ch.is_whitespace())
                .map_or(text.len(), |e| pos + e);
            return Err(err(&text[pos..end], "expected `(`"));
        }
        chars.next();
        let mut cycle: Vec<u32> = Vec::new();
        let mut expect_point = true;
        let mut closed = false;
        while let Some(&(p, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
            } else if ch == ')' {
                chars.next();
                closed = true;
                break;
            } else if ch == ',' {
                if expect_point {
                    return Err(err(",", "expected a point"));
                }
                expect_point = true;
                chars.next();
            } else if ch.is_ascii_digit() {
                let mut end = p;
                while let Some(&(q, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = q + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let tok = &text[p..end];
                let point: usize = tok
                    .parse()
                    .map_err(|_| err(tok, "point is not a valid integer"))?;
                if point == 0 || point > degree {
                    return Err(err(tok, &format!("point {point} out of range 1..{degree}")));
                }
                if std::mem::replace(&mut used[point - 1], true) {
                    return Err(err(tok, &format!("point {point} repeated")));
                }
                cycle.push((point - 1) as u32);
                expect_point = false;
            } else {
                return Err(err(&ch.to_string(), "unexpected character"));
            }
        }
        if !closed {
            return Err(err(&text[pos..], "unclosed cycle"));
        }
        if expect_point && !cycle.is_empty() {
            return Err(err(")", "trailing comma"));
        }
        for (i, &a) in cycle.iter().enumerate() {
            images[a as usize] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        parse_cycles(s, n).unwrap()
    }

    #[test]
    fn parse_basic() {
        let a = p("(1,2,3)", 5);
        assert_eq!(a.images(), vec![2, 3, 1, 4, 5]);
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
        assert_eq!(p(" ( 1 2 ) (3,4) ", 4).images(), vec![2, 1, 4, 3]);
        assert!(parse_cycles("", 0).unwrap().is_identity());
    }

    #[test]
    fn parse_errors_name_tokens() {
        match parse_cycles("(1,2)(2,3)", 3) {
            Err(GroupError::Parse { token, reason }) => {
                assert_eq!(token, "2");
                assert!(reason.contains("repeated"));
            }
            other => panic!("{other:?}"),
        }
        match parse_cycles("(1,5)", 3) {
            Err(GroupError::Parse { token, reason }) => {
                assert_eq!(token, "5");
                assert!(reason.contains("out of range"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_cycles("(1,2", 3).is_err());
        assert!(parse_cycles("1,2)", 3).is_err());
        assert!(parse_cycles("(1,,2)", 3).is_err());
        assert!(parse_cycles("(1,a)", 3).is_err());
    }

    #[test]
    fn arithmetic() {
        let t = p("(1,2)", 3);
        assert!(t.compose(&t).unwrap().is_identity());
        let c = p("(1,2,3)", 3);
        assert_eq!(c.compose(&c).unwrap(), p("(1,3,2)", 3));
        assert_eq!(c.compose(&Permutation::identity(3)).unwrap(), c);
        assert_eq!(c.inverse(), p("(1,3,2)", 3));
        assert!(Permutation::identity(3).inverse().is_identity());
        let dt = p("(1,2)(3,4)", 4);
        assert_eq!(dt.inverse(), dt);
        assert!(t.compose(&p("(1,2)", 4)).is_err());
    }

    #[test]
    fn left_to_right_convention() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap().image(1), 3);
    }

    #[test]
    fn commutators() {
        let t = p("(1,2)", 3);
        assert!(t.commutator(&t).unwrap().is_identity());
        assert!(t
            .commutator(&Permutation::identity(3))
            .unwrap()
            .is_identity());
        // multiply out a^-1 b^-1 a b by hand through images
        let c = p("(1,2,3)", 3);
        let k = t.commutator(&c).unwrap();
        let manual: Vec<usize> = (1..=3)
            .map(|i| {
                let x = t.inverse().image(i);
                let x = c.inverse().image(x);
                let x = t.image(x);
                c.image(x)
            })
            .collect();
        assert_eq!(k.images(), manual);
        assert_eq!(k.order(), 3);
    }

    #[test]
    fn display_round_trip() {
        let a = p("(4,5)(1,3,2)", 6);
        assert_eq!(a.to_string(), "(1,3,2)(4,5)");
        assert_eq!(parse_cycles(&a.to_string(), 6).unwrap(), a);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn orders_and_powers() {
        let a = p("(1,2,3)(4,5)", 5);
        assert_eq!(a.order(), 6);
        assert!(a.pow(6).is_identity());
        assert_eq!(a.pow(2), p("(1,3,2)", 5));
    }
}
