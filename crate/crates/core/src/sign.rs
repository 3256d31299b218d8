//! Signs and Koszul rules.

use std::ops::{Mul, MulAssign, Neg};

use crate::linalg::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn pow(k: usize) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `-1` when `odd`, `+1` otherwise.
    pub fn from_odd(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `self^k`.
    pub fn powi(self, k: usize) -> Sign {
        if self.is_minus() {
            Sign::pow(k)
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn scalar<R: Field>(self) -> R {
        match self {
            Sign::Plus => R::one(),
            Sign::Minus => -R::one(),
        }
    }

    pub fn apply<R: Field>(self, x: R) -> R {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Koszul sign of reordering a list of graded elements.
///
/// `odd[k]` is the parity of the element at old position `k`; `order[p]` is
/// the old position of the element placed at new position `p`. Only
/// transpositions of two odd elements contribute.
pub fn koszul_sign(odd: &[bool], order: &[usize]) -> Sign {
    debug_assert_eq!(odd.len(), order.len());
    let mut inversions = 0usize;
    for a in 0..order.len() {
        if !odd[order[a]] {
            continue;
        }
        for b in (a + 1)..order.len() {
            if odd[order[b]] && order[a] > order[b] {
                inversions += 1;
            }
        }
    }
    Sign::pow(inversions)
}

/// Signature of a permutation given as `perm[k] = image of k`.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        transpositions += len - 1;
    }
    Sign::pow(transpositions)
}

/// Stable sort of `keys` returning the sorted order and the Koszul sign of
/// the reordering, where every element has parity `odd`.
pub fn sort_with_sign<K: Ord>(keys: &[K], odd: bool) -> (Vec<usize>, Sign) {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let sign = if odd {
        let mut inv = 0usize;
        for a in 0..order.len() {
            for b in (a + 1)..order.len() {
                if order[a] > order[b] {
                    inv += 1;
                }
            }
        }
        Sign::pow(inv)
    } else {
        Sign::Plus
    };
    (order, sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_swaps_only_odd_pairs() {
        assert_eq!(koszul_sign(&[true, true], &[1, 0]), Sign::Minus);
        assert_eq!(koszul_sign(&[true, false], &[1, 0]), Sign::Plus);
        assert_eq!(koszul_sign(&[true, true, true], &[2, 0, 1]), Sign::Plus);
        assert_eq!(koszul_sign(&[true, true, true], &[2, 1, 0]), Sign::Minus);
    }

    #[test]
    fn permutation_sign_matches_inversions() {
        for perm in [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0]] {
            let odd = [true; 3];
            // perm as "image of k" versus "old index at k" are inverse; same sign
            assert_eq!(permutation_sign(&perm), koszul_sign(&odd, &perm));
        }
    }

    #[test]
    fn sort_sign() {
        let (order, s) = sort_with_sign(&[3, 1, 2], true);
        assert_eq!(order, vec![1, 2, 0]);
        assert_eq!(s, Sign::Plus);
        let (_, s) = sort_with_sign(&[2, 1], true);
        assert_eq!(s, Sign::Minus);
        let (_, s) = sort_with_sign(&[2, 1], false);
        assert_eq!(s, Sign::Plus);
    }
}
