use std::collections::btree_map;
use std::collections::BTreeMap;

use super::Field;
use crate::sign::Sign;

/// A finite linear combination of keys with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord, R> {
    terms: BTreeMap<K, R>,
}

impl<K: Ord, R> Default for LinComb<K, R> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, R: Field> LinComb<K, R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, coef: R) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coef);
        c
    }

    pub fn signed(key: K, sign: Sign) -> Self {
        Self::single(key, sign.scalar())
    }

    pub fn add_term(&mut self, key: K, coef: R) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scale: &R) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone() * scale.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_assign_scaled(other, &R::one());
    }

    pub fn scaled(&self, scale: &R) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, scale);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-R::one())
    }

    pub fn coeff(&self, key: &K) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &R)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Apply a linear map given on keys.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2, R>) -> LinComb<K2, R> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_assign_scaled(&f(k), c);
        }
        out
    }

    /// Apply a map sending each key to at most one signed key.
    pub fn map_signed<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<(K2, Sign)>) -> LinComb<K2, R> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            if let Some((k2, s)) = f(k) {
                out.add_term(k2, s.apply(c.clone()));
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, R> {
        self.terms
    }
}

impl<K: Ord + Clone, R: Field> FromIterator<(K, R)> for LinComb<K, R> {
    fn from_iter<I: IntoIterator<Item = (K, R)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}
