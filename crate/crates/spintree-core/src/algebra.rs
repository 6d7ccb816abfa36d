//! The symbolic enveloping algebra of three generators `X1, X2, X3` with
//! `[Xj, Xk] = i eps_{jkl} Xl`.
//!
//! Elements are finite complex combinations of ordered monomials
//! `X1^k X2^l X3^m`; the type cannot hold an unordered product. Products are
//! straightened into this form by bubbling out-of-order adjacent generator
//! pairs with the commutation relation, scanning right to left.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

/// Coefficients below this magnitude are dropped after every operation.
pub const COEFF_EPS: f64 = 1e-14;

/// Exponents of one ordered monomial `X1^a X2^b X3^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const UNIT: Monomial = Monomial([0, 0, 0]);

    pub fn generator(i: usize) -> Monomial {
        assert!((1..=3).contains(&i), "generator index must be 1..=3");
        let mut exps = [0; 3];
        exps[i - 1] = 1;
        Monomial(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// The monomial as a word of generator indices, e.g. `(2,1,0)` -> `[1,1,2]`.
    fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (idx, &count) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat(idx as u8 + 1).take(count as usize));
        }
        w
    }

    fn from_sorted_word(word: &[u8]) -> Monomial {
        let mut exps = [0u32; 3];
        for &g in word {
            exps[g as usize - 1] += 1;
        }
        Monomial(exps)
    }

    /// Highest generator index with nonzero exponent, if any.
    fn last_generator(&self) -> Option<u8> {
        (0..3).rev().find(|&i| self.0[i] > 0).map(|i| i as u8 + 1)
    }

    fn first_generator(&self) -> Option<u8> {
        (0..3).find(|&i| self.0[i] > 0).map(|i| i as u8 + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("e");
        }
        let mut first = true;
        for (idx, &count) in self.0.iter().enumerate() {
            if count == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "X{}", idx + 1)?;
            if count > 1 {
                write!(f, "^{count}")?;
            }
        }
        Ok(())
    }
}

/// A finite complex combination of ordered monomials.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// The unit `e = X1^0 X2^0 X3^0`.
    pub fn unit() -> Self {
        AlgebraElement::monomial(Monomial::UNIT, Complex64::new(1.0, 0.0))
    }

    /// The generator `X_i`, `i` in `1..=3`.
    pub fn generator(i: usize) -> Self {
        AlgebraElement::monomial(Monomial::generator(i), Complex64::new(1.0, 0.0))
    }

    /// The central element `c = X1^2 + X2^2 + X3^2`.
    pub fn casimir() -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..3 {
            let mut exps = [0; 3];
            exps[i] = 2;
            terms.insert(Monomial(exps), Complex64::new(1.0, 0.0));
        }
        AlgebraElement { terms }
    }

    pub fn monomial(m: Monomial, coeff: Complex64) -> Self {
        let mut el = AlgebraElement::zero();
        el.add_term(m, coeff);
        el
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Complex64)>>(iter: I) -> Self {
        let mut el = AlgebraElement::zero();
        for (m, c) in iter {
            el.add_term(m, c);
        }
        el
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree over all stored monomials.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coeff: Complex64) {
        let entry = self.terms.entry(m).or_default();
        *entry += coeff;
        if entry.norm() < COEFF_EPS {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, -*c);
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|(m, c)| (*m, *c * factor)))
    }

    /// Product in ordered form; associative with `e` as two-sided unit.
    pub fn multiply(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                for (m, c) in multiply_monomials(*ma, *mb).terms() {
                    out.add_term(*m, *c * *ca * *cb);
                }
            }
        }
        out
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        self.multiply(other).sub(&other.multiply(self))
    }

    pub fn pow(&self, exp: u32) -> AlgebraElement {
        let mut out = AlgebraElement::unit();
        for _ in 0..exp {
            out = out.multiply(self);
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical text form: terms sorted by exponent triple, e.g.
    /// `1 * X1 X2 + (0-1i) * X3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.im.abs() < COEFF_EPS {
                write!(f, "{}", c.re)?;
            } else if c.im >= 0.0 {
                write!(f, "({}+{}i)", c.re, c.im)?;
            } else {
                write!(f, "({}-{}i)", c.re, -c.im)?;
            }
            write!(f, " * {m}")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::add(self, rhs)
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.multiply(rhs)
    }
}

/// Straightened product of two ordered monomials.
pub fn multiply_monomials(a: Monomial, b: Monomial) -> AlgebraElement {
    if a.is_unit() {
        return AlgebraElement::monomial(b, Complex64::new(1.0, 0.0));
    }
    if b.is_unit() {
        return AlgebraElement::monomial(a, Complex64::new(1.0, 0.0));
    }
    // The concatenation is already ordered whenever a's last generator does
    // not exceed b's first; exponents then just add.
    if a.last_generator() <= b.first_generator() {
        let exps = [a.0[0] + b.0[0], a.0[1] + b.0[1], a.0[2] + b.0[2]];
        return AlgebraElement::monomial(Monomial(exps), Complex64::new(1.0, 0.0));
    }
    let mut word = a.word();
    word.extend(b.word());
    straighten(word)
}

/// Rewrites a generator word into ordered form.
///
/// Scans right to left for an adjacent out-of-order pair `X_a X_b` (a > b)
/// and replaces it by `X_b X_a + i eps_{abl} X_l`, branching until every
/// word is sorted. The commutator branch shortens the word, the swap branch
/// lowers its inversion count, so the rewriting terminates.
fn straighten(word: Vec<u8>) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    let mut work = vec![(Complex64::new(1.0, 0.0), word)];
    while let Some((coeff, w)) = work.pop() {
        let pair = (0..w.len().saturating_sub(1))
            .rev()
            .find(|&i| w[i] > w[i + 1]);
        match pair {
            None => out.add_term(Monomial::from_sorted_word(&w), coeff),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((coeff, swapped));

                // [X_a, X_b] = i eps_{ab l} X_l with l the third index.
                let l = 6 - a - b;
                let sign = levi_civita(a, b, l);
                let mut contracted = w;
                contracted.remove(i + 1);
                contracted[i] = l;
                work.push((coeff * Complex64::new(0.0, sign), contracted));
            }
        }
    }
    out
}

fn levi_civita(a: u8, b: u8, c: u8) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (2, 1, 3) | (3, 2, 1) | (1, 3, 2) => -1.0,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> AlgebraElement {
        AlgebraElement::generator(i)
    }

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn straightening_x2_x1() {
        // X2 X1 = X1 X2 - i X3
        let prod = x(2).multiply(&x(1));
        assert_eq!(prod.coeff(&Monomial([1, 1, 0])), c64(1.0, 0.0));
        assert_eq!(prod.coeff(&Monomial([0, 0, 1])), c64(0.0, -1.0));
        assert_eq!(prod.term_count(), 2);
    }

    #[test]
    fn unit_laws() {
        let e = AlgebraElement::unit();
        let a = x(3).multiply(&x(1)).add(&AlgebraElement::casimir());
        assert_eq!(e.multiply(&a), a);
        assert_eq!(a.multiply(&e), a);
    }

    #[test]
    fn symbolic_associativity() {
        let lhs = x(3).multiply(&x(2)).multiply(&x(1));
        let rhs = x(3).multiply(&x(2).multiply(&x(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_generators() {
        // [X1, X2] = i X3 and cyclic
        assert_eq!(
            x(1).bracket(&x(2)),
            AlgebraElement::monomial(Monomial([0, 0, 1]), c64(0.0, 1.0))
        );
        assert_eq!(
            x(2).bracket(&x(3)),
            AlgebraElement::monomial(Monomial([1, 0, 0]), c64(0.0, 1.0))
        );
        assert_eq!(
            x(3).bracket(&x(1)),
            AlgebraElement::monomial(Monomial([0, 1, 0]), c64(0.0, 1.0))
        );
    }

    #[test]
    fn bracket_is_alternating() {
        let a = x(1).multiply(&x(2)).add(&x(3).scale(c64(0.5, 0.0)));
        assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn casimir_is_central() {
        let c = AlgebraElement::casimir();
        for i in 1..=3 {
            assert!(x(i).bracket(&c).is_zero(), "[X{i}, c] != 0");
        }
        // and against a composite element
        let a = x(1).multiply(&x(3)).multiply(&x(2));
        assert!(a.bracket(&c).is_zero());
    }

    #[test]
    fn jacobi_identity() {
        let elems = [
            x(1),
            x(2).multiply(&x(3)),
            AlgebraElement::casimir().add(&x(1)),
        ];
        let [a, b, c] = &elems;
        let cyclic = a
            .bracket(&b.bracket(c))
            .add(&b.bracket(&c.bracket(a)))
            .add(&c.bracket(&a.bracket(b)));
        assert!(cyclic.is_zero());
    }

    #[test]
    fn grouping_invariance_of_long_words() {
        // Multiply X3 X3 X2 X1 X2 with different associations.
        let gens = [3, 3, 2, 1, 2].map(x);
        let left = gens
            .iter()
            .fold(AlgebraElement::unit(), |acc, g| acc.multiply(g));
        let right = gens
            .iter()
            .rev()
            .fold(AlgebraElement::unit(), |acc, g| g.multiply(&acc));
        assert_eq!(left, right);
    }

    #[test]
    fn canonical_text_form() {
        // Terms are sorted lexicographically ascending by exponent triple,
        // so pure-X3 monomials print before pure-X1 ones.
        assert_eq!(AlgebraElement::zero().to_string(), "0");
        assert_eq!(AlgebraElement::unit().to_string(), "1 * e");
        assert_eq!(
            AlgebraElement::casimir().to_string(),
            "1 * X3^2 + 1 * X2^2 + 1 * X1^2"
        );
        assert_eq!(x(2).multiply(&x(1)).to_string(), "(0-1i) * X3 + 1 * X1 X2");
    }

    #[test]
    fn scale_and_prune() {
        let a = x(1).scale(c64(1e-15, 0.0));
        assert!(a.is_zero());
        let b = x(1).sub(&x(1));
        assert!(b.is_zero());
    }

    #[test]
    fn max_degree_reporting() {
        assert_eq!(AlgebraElement::zero().max_degree(), 0);
        assert_eq!(AlgebraElement::casimir().max_degree(), 2);
        let q = AlgebraElement::casimir().pow(3);
        assert_eq!(q.max_degree(), 6);
    }
}
