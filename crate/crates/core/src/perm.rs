//! Permutations of `0..n` and extensional permutation groups.
//!
//! Permutations act on the right, as translations do in loop theory: for
//! `p.then(&q)` the point is moved by `p` first and by `q` second, so the
//! product `L_x L_y` of two translations is `lx.then(&ly)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of elements an extensional [`PermGroup`] may hold.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

/// A bijection of `0..n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img >= n {
                return Err(Error::NotLatin(format!(
                    "image {img} of point {i} is out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::NotLatin(format!(
                    "point {img} is hit twice; not a bijection"
                )));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Caller guarantees `images` is a bijection of `0..images.len()`.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&i| i as usize).collect()).is_ok());
        Self { images }
    }

    /// Builds a permutation from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(Error::NotLatin(format!("cycle point out of range 0..{n}")));
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i as u32 == img)
            .count()
    }

    /// Right-action product: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Commutator `[self, other] = self⁻¹ other⁻¹ self other` in right-action order.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    /// The unique square root of an odd-order permutation, `p^((m+1)/2)`.
    pub fn sqrt_odd(&self) -> Result<Permutation> {
        let m = self.order();
        if m.is_multiple_of(2) {
            return Err(Error::EvenOrderPermutation(m as usize));
        }
        Ok(self.pow(m.div_ceil(2)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, omitting fixed points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.apply(i);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `perm_sqrt_odd` as a free function.
pub fn perm_sqrt_odd(p: &Permutation) -> Result<Permutation> {
    p.sqrt_odd()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A permutation group stored extensionally.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    /// Sorted, so two groups with the same members compare equal.
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }
}

/// Closes a generating set under composition, breadth first from the identity.
///
/// `degree` is needed when `generators` is empty.
pub fn close(degree: usize, generators: &[Permutation], cap: usize) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut gens: Vec<Permutation> = generators
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    gens.sort();
    gens.dedup();

    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    // Right-multiplying by generators reaches every element of a finite group.
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for g in &gens {
                let q = p.then(g);
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureCap {
                            cap,
                            partial: seen.len(),
                        });
                    }
                    seen.insert(q.clone());
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(PermGroup {
        degree,
        elements,
        generators: gens,
    })
}

/// The subgroup of elements fixing `point`.
pub fn stabilizer_of(g: &PermGroup, point: usize) -> PermGroup {
    let elements: Vec<Permutation> = g
        .elements
        .iter()
        .filter(|p| p.fixes(point))
        .cloned()
        .collect();
    PermGroup {
        degree: g.degree,
        generators: elements.iter().filter(|p| !p.is_identity()).cloned().collect(),
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c]).unwrap()
    }

    #[test]
    fn sqrt_of_identity_is_identity() {
        let id = Permutation::identity(5);
        assert_eq!(id.sqrt_odd().unwrap(), id);
    }

    #[test]
    fn sqrt_of_three_cycle() {
        let p = cycle(3, &[0, 1, 2]);
        let expected = cycle(3, &[0, 2, 1]);
        assert_eq!(p.sqrt_odd().unwrap(), expected);
        assert_eq!(expected.then(&expected), p);
    }

    #[test]
    fn sqrt_of_five_cycle_is_cube() {
        let c = cycle(5, &[0, 1, 2, 3, 4]);
        let cube = c.then(&c).then(&c);
        let root = c.sqrt_odd().unwrap();
        assert_eq!(root, cube);
        assert_eq!(cube.then(&cube), c);
    }

    #[test]
    fn even_order_has_no_sqrt() {
        let t = cycle(4, &[0, 1]);
        assert!(matches!(t.sqrt_odd(), Err(Error::EvenOrderPermutation(2))));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn then_applies_left_operand_first() {
        let a = cycle(3, &[0, 1]);
        let b = cycle(3, &[1, 2]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = close(4, &[Permutation::identity(4)], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_of_three_cycle() {
        let g = close(3, &[cycle(3, &[0, 1, 2])], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn closure_of_z7_translations_is_regular() {
        let gens: Vec<Permutation> = (0..7)
            .map(|x| Permutation::from_images((0..7).map(|y| (x + y) % 7).collect()).unwrap())
            .collect();
        let g = close(7, &gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(stabilizer_of(&g, 0).order(), 1);
    }

    #[test]
    fn closure_cap_reports_partial_size() {
        let gens = [cycle(6, &[0, 1]), cycle(6, &[0, 1, 2, 3, 4, 5])];
        match close(6, &gens, 100) {
            Err(Error::ClosureCap { cap: 100, partial }) => assert!(partial >= 100),
            other => panic!("expected cap error, got {other:?}"),
        }
        assert_eq!(close(6, &gens, 1000).unwrap().order(), 720);
    }

    #[test]
    fn stabilizer_in_symmetric_group() {
        let gens = [cycle(4, &[0, 1]), cycle(4, &[0, 1, 2, 3])];
        let s4 = close(4, &gens, 1000).unwrap();
        assert_eq!(stabilizer_of(&s4, 0).order(), 6);
    }

    #[test]
    fn display_uses_cycles() {
        assert_eq!(cycle(4, &[0, 2, 1]).to_string(), "(0 2 1)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
