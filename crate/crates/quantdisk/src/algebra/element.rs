use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::{GaussRat, Rational};

/// Finite linear combination of basis vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<I: Ord> {
    terms: BTreeMap<I, GaussRat>,
}

impl<I: Ord + Clone> Default for Element<I> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<I: Ord + Clone> Element<I> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: I) -> Self {
        let mut e = Self::zero();
        e.add_term(i, GaussRat::real(Rational::from_integer(1.into())));
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (I, GaussRat)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn from_real_terms(terms: impl IntoIterator<Item = (I, Rational)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(i, c)| (i, GaussRat::real(c))))
    }

    pub fn add_term(&mut self, i: I, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c);
            }
        }
    }

    /// Coefficient functional e^γ(a).
    pub fn coefficient(&self, i: &I) -> GaussRat {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&I, &GaussRat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &I> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (i, c) in &o.terms {
            r.add_term(i.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (i, c) in &o.terms {
            r.add_term(i.clone(), -c);
        }
        r
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, c)| (i.clone(), c * s)))
    }

    pub fn scale_real(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, c)| (i.clone(), c.scale(s))))
    }

    /// Σ |a_γ|².
    pub fn norm2(&self) -> Rational {
        self.terms.values().map(|c| c.norm_sqr()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn map_indices<J: Ord + Clone>(&self, f: impl Fn(&I) -> J) -> Element<J> {
        Element::from_terms(self.terms.iter().map(|(i, c)| (f(i), c.clone())))
    }
}

impl<I: Ord + Clone> FromIterator<(I, GaussRat)> for Element<I> {
    fn from_iter<T: IntoIterator<Item = (I, GaussRat)>>(iter: T) -> Self {
        Element::from_terms(iter)
    }
}
