use crate::error::{Error, Result};
use num_integer::Integer;
use std::fmt;

/// A permutation of `{0, …, degree-1}` stored as its image list.
///
/// Products compose left to right: `(a * b)(x) = b(a(x))`, so points act on
/// the right as in the usual atlas conventions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::validation("image list is not a bijection"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Image list with 1-based points, as used in text I/O.
    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut out = Vec::with_capacity(self.images.len());
        out.extend(self.images.iter().map(|&x| other.images[x as usize]));
        Permutation { images: out }
    }

    /// Overwrites `out` with `self` then `other`, reusing its allocation.
    pub fn compose_into(&self, other: &Permutation, out: &mut Permutation) {
        out.images.clear();
        out.images
            .extend(self.images.iter().map(|&x| other.images[x as usize]));
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    ///
    /// Panics if the order does not fit in 64 bits, which needs degree in the hundreds
    /// and a deliberately adversarial cycle type.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        order_with_scratch(&self.images, &mut seen)
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Disjoint-cycle notation with 1-based points; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

pub(crate) fn order_with_scratch(images: &[u32], seen: &mut [bool]) -> u64 {
    seen.iter_mut().for_each(|s| *s = false);
    let mut order = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        if len > 1 {
            let g = order.gcd(&len);
            order = (order / g)
                .checked_mul(len)
                .expect("element order exceeds 64 bits");
        }
    }
    order
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Parses disjoint-cycle notation with 1-based points. Whitespace is ignored.
///
/// Errors carry the 1-based column of the offending character on line `line`.
pub fn parse_cycles_at(text: &str, degree: usize, line: usize) -> Result<Permutation> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let err = |col: usize, msg: String| Error::parse(line, col + 1, msg);
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(err(i, "empty permutation; use () for the identity".into()));
    }
    while i < chars.len() {
        if chars[i] != '(' {
            return Err(err(i, format!("expected '(' but found {:?}", chars[i])));
        }
        i += 1;
        skip_ws(&mut i);
        if i < chars.len() && chars[i] == ')' {
            i += 1;
            skip_ws(&mut i);
            continue;
        }
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut i);
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(start, "expected a point".into()));
            }
            let token: String = chars[start..i].iter().collect();
            let point: usize = token
                .parse()
                .map_err(|_| err(start, format!("bad point {token:?}")))?;
            if point == 0 || point > degree {
                return Err(err(start, format!("point {point} outside 1..={degree}")));
            }
            if used[point - 1] {
                return Err(err(start, format!("point {point} repeated")));
            }
            used[point - 1] = true;
            cycle.push(point - 1);
            skip_ws(&mut i);
            match chars.get(i) {
                Some(',') => i += 1,
                Some(')') => {
                    i += 1;
                    break;
                }
                Some(c) => return Err(err(i, format!("expected ',' or ')' but found {c:?}"))),
                None => return Err(err(i, "unterminated cycle".into())),
            }
        }
        for k in 0..cycle.len() {
            images[cycle[k]] = cycle[(k + 1) % cycle.len()] as u32;
        }
        skip_ws(&mut i);
    }
    Ok(Permutation { images })
}

/// Parses disjoint-cycle notation with 1-based points.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    parse_cycles_at(text, degree, 1)
}
