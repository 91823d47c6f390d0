//! Sparse linear combinations over C with a deterministic key order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalars::{C64, DROP_REL};

#[derive(Debug, Clone, PartialEq)]
pub struct LinComb<K: Ord> {
    map: BTreeMap<K, C64>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { map: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: C64) -> Self {
        let mut l = Self::new();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: C64) {
        if c.is_zero() {
            return;
        }
        *self.map.entry(k).or_insert_with(C64::zero) += c;
    }

    pub fn add_scaled(&mut self, o: &LinComb<K>, s: C64) {
        for (k, c) in &o.map {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        let map = self.map.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        LinComb { map }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C64)> {
        self.map.iter()
    }

    pub fn get(&self, k: &K) -> C64 {
        self.map.get(k).copied().unwrap_or_else(C64::zero)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.map.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients below the relative threshold.
    pub fn pruned(mut self) -> Self {
        let cut = DROP_REL * self.max_abs();
        self.map.retain(|_, c| c.norm() > cut && !c.is_zero());
        self
    }

    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        let map = self.map.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), *c)).collect();
        LinComb { map }
    }

    pub fn map_keys<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> LinComb<J> {
        let mut out = LinComb::new();
        for (k, c) in &self.map {
            out.add_term(f(k), *c);
        }
        out
    }

    /// max |a_k − b_k| over the union of keys.
    pub fn max_diff(&self, o: &LinComb<K>) -> f64 {
        let mut d = self.clone();
        d.add_scaled(o, C64::new(-1.0, 0.0));
        d.max_abs()
    }
}

impl<K: Ord + Clone> FromIterator<(K, C64)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, C64)>>(it: I) -> Self {
        let mut l = LinComb::new();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }
}

pub fn fmt_coeff(c: C64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(c.re), clean(c.im));
    if im == 0.0 {
        format!("{re:.12}").trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("({re:.12}{im:+.12}i)")
    }
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_prune() {
        let mut l = LinComb::single(1u32, C64::new(1.0, 0.0));
        l.add_term(1, C64::new(-1.0, 0.0));
        l.add_term(2, C64::new(1e-20, 0.0));
        l.add_term(3, C64::new(2.0, 0.0));
        let p = l.pruned();
        assert_eq!(p.len(), 1);
        assert_eq!(p.get(&3).re, 2.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
    }

    #[test]
    fn coeff_format() {
        assert_eq!(fmt_coeff(C64::new(2.5, 0.0)), "2.5");
        assert_eq!(fmt_coeff(C64::new(-1.0, 1e-15)), "-1");
    }
}
