//! Sparse polynomials over ℚ whose indeterminates are [`Atom`]s.
//!
//! Arithmetic here is in the free polynomial ring: no rewrite rules are
//! applied. Reduction modulo the trigonometric, exponential and square-root
//! identities happens one level up, in [`super::ScalarExpr`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Atom, Func};
use crate::rational::Rational;

/// A power product of atoms, sorted ascending by atom, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(atom: Atom, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(atom, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn exponent(&self, atom: &Atom) -> u32 {
        self.0
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn mul_atom(&self, atom: &Atom, exp: u32) -> Monomial {
        self.mul(&Monomial::atom(atom.clone(), exp))
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (atom, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *atom {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((atom.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *atom {
                return None;
            } else {
                out.push((atom.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (atom, e) in &self.0 {
            let f = other.exponent(atom);
            if f > 0 {
                out.push((atom.clone(), (*e).min(f)));
            }
        }
        Monomial(out)
    }

    /// Drops one power of the factor at `index`.
    pub fn without_one(&self, index: usize) -> Monomial {
        let mut out = self.0.clone();
        if out[index].1 == 1 {
            out.remove(index);
        } else {
            out[index].1 -= 1;
        }
        Monomial(out)
    }

    /// Canonical form under the rewrite rules: at most one `exp` factor, with
    /// exponent one, and no `cos` or `sqrt` factor squared.
    pub fn is_reduced(&self) -> bool {
        let mut exps = 0;
        for (atom, e) in &self.0 {
            if let Atom::Apply(f, _) = atom {
                match f {
                    Func::Exp => {
                        exps += 1;
                        if *e > 1 || exps > 1 {
                            return false;
                        }
                    }
                    Func::Cos | Func::Sqrt if *e >= 2 => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

impl Ord for Monomial {
    /// Graded order; among equal degrees the largest atom is most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (self.0.len(), other.0.len());
            while i > 0 && j > 0 {
                let (a, ea) = &self.0[i - 1];
                let (b, eb) = &other.0[j - 1];
                match a.cmp(b) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i -= 1;
                            j -= 1;
                        }
                        ord => return ord,
                    },
                    ord => return ord,
                }
            }
            (i > 0).cmp(&(j > 0))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub(crate) struct Poly(BTreeMap<Monomial, Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn atom(atom: Atom) -> Self {
        Poly::term(Monomial::atom(atom, 1), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.0.into_iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.0.iter().next_back()
    }

    pub fn degree(&self) -> u64 {
        self.0.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.keys().all(Monomial::is_reduced)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.keys().flat_map(|m| m.factors().iter().map(|(a, _)| a))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in small.terms() {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, k)| (m.clone(), k * c)).collect())
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (n, k) in self.terms() {
            out.add_term(n.mul(m), k * c);
        }
        out
    }

    /// Product in the free ring.
    pub fn mul_raw(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            for (n, k) in other.terms() {
                out.add_term(m.mul(n), c * k);
            }
        }
        out
    }

    pub fn pow_raw(&self, exp: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..exp {
            out = out.mul_raw(self);
        }
        out
    }

    /// Exact quotient in the free ring, or `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            for (n, k) in divisor.terms() {
                rem.add_term(n.mul(&qm), -&(k * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.0.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial content divides every term"), c.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> Atom {
        Atom::Var(i)
    }

    #[test]
    fn graded_order_puts_x_before_y() {
        let x2 = Monomial::atom(var(0), 2);
        let xy = Monomial::atom(var(0), 1).mul_atom(&var(1), 1);
        let y2 = Monomial::atom(var(1), 2);
        let x = Monomial::atom(var(0), 1);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn exact_division_in_free_ring() {
        // (x + y)(x - y) / (x + y) = x - y
        let x = Poly::atom(var(0));
        let y = Poly::atom(var(1));
        let s = x.add(&y);
        let d = x.add(&y.neg());
        let p = s.mul_raw(&d);
        assert_eq!(p.div_exact(&s), Some(d));
        assert_eq!(p.div_exact(&x), None);
    }

    #[test]
    fn content_of_polynomial() {
        let x = Poly::atom(var(0));
        let y = Poly::atom(var(1));
        let p = x.mul_raw(&x).mul_raw(&y).add(&x.mul_raw(&y).mul_raw(&y));
        let c = p.monomial_content();
        assert_eq!(c, Monomial::atom(var(0), 1).mul_atom(&var(1), 1));
    }
}
