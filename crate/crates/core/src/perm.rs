//! Permutations of `{0, …, n-1}`.
//!
//! Permutations act on the right: the product `a * b` applies `a` first and
//! then `b`, so `i^(ab) = (i^a)^b`. Conjugation is `x^g = g⁻¹ x g` and the
//! commutator is `[a, b] = a⁻¹ b⁻¹ a b`.

use std::borrow::Borrow;
use std::fmt;

use crate::error::GroupError;

/// A bijection of `{0, …, degree-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Box<[u32]>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    /// Builds a permutation from an image array, checking that it is a
    /// bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::NotBijection {
                    position: i,
                    degree: n,
                });
            }
        }
        Ok(Self(images.into_boxed_slice()))
    }

    /// Builds a permutation from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(GroupError::NotBijection {
                        position: a as usize,
                        degree,
                    });
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Box<[u32]>) -> Self {
        Self(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// Writes `self * other` into `out`, which must have the right length.
    pub(crate) fn compose_into(&self, other: &Self, out: &mut [u32]) {
        for (o, &x) in out.iter_mut().zip(self.0.iter()) {
            *o = other.0[x as usize];
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self(inv.into_boxed_slice())
    }

    /// `self^k`, computed cycle by cycle.
    pub fn pow(&self, k: u64) -> Self {
        let n = self.degree();
        let mut out = vec![0u32; n];
        let mut done = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                cycle.push(x as u32);
                x = self.0[x] as usize;
            }
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (j, &pt) in cycle.iter().enumerate() {
                out[pt as usize] = cycle[(j + shift) % len];
            }
        }
        Self(out.into_boxed_slice())
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut x = start;
            while !done[x] {
                done[x] = true;
                len += 1;
                x = self.0[x] as usize;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }
}

impl Borrow<[u32]> for Permutation {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, 0-based; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if done[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !done[x] {
                done[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycle_display_and_order() {
        let p = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn right_action_convention() {
        // (0 1) then (1 2): 0 -> 1 -> 2.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(a.compose(&b).image(0), 2);
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert_eq!(a.compose(&Permutation::identity(7)), a.clone());
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_perm(8), k in 0u64..30) {
            let mut acc = Permutation::identity(8);
            for _ in 0..k {
                acc = acc.compose(&a);
            }
            prop_assert_eq!(a.pow(k), acc);
            prop_assert!(a.pow(a.order()).is_identity());
        }
    }
}
