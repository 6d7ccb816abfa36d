//! Tensor powers of the enveloping algebra, the primitive coproduct, and
//! its lift along a coupling tree.
//!
//! A [`TensorElement`] of arity `L` is a finite complex combination of
//! `L`-fold monomial tensors. Slot `i` holds the factor for leaf label
//! `i + 1`, so permuted leaf labels act by permuting slots.
//!
//! The bracket is implemented through the abstract splitting rule
//! `[a (x) b, c (x) d] = [a,c] (x) (bd+db)/2 + (ac+ca)/2 (x) [b,d]`
//! recursively over slots, not as `uv - vu`; the two routes agreeing is one
//! of the checks the test suite runs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{multiply_monomials, AlgebraElement, Monomial, COEFF_EPS};
use crate::error::Error;
use crate::tree::{CouplingTree, Node, NodeRef};

/// A finite complex combination of `L`-fold monomial tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Complex64>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be at least 1");
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `e (x) ... (x) e`.
    pub fn unit(arity: usize) -> Self {
        TensorElement::monomial(vec![Monomial::UNIT; arity], Complex64::new(1.0, 0.0))
    }

    pub fn monomial(key: Vec<Monomial>, coeff: Complex64) -> Self {
        let mut el = TensorElement::zero(key.len());
        el.add_term(key, coeff);
        el
    }

    /// A single algebra monomial placed in one slot, units elsewhere.
    pub fn embed_monomial(arity: usize, slot: usize, m: Monomial, coeff: Complex64) -> Self {
        assert!(slot < arity);
        let mut key = vec![Monomial::UNIT; arity];
        key[slot] = m;
        TensorElement::monomial(key, coeff)
    }

    /// An algebra element placed in one slot, units elsewhere.
    pub fn embed(arity: usize, slot: usize, a: &AlgebraElement) -> Self {
        let mut out = TensorElement::zero(arity);
        for (m, c) in a.terms() {
            let mut key = vec![Monomial::UNIT; arity];
            key[slot] = *m;
            out.add_term(key, *c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Complex64)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &[Monomial]) -> Complex64 {
        self.terms.get(key).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<Monomial>, coeff: Complex64) {
        debug_assert_eq!(key.len(), self.arity);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += coeff;
        if entry.norm() < COEFF_EPS {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), -*c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), *c * factor);
        }
        out
    }

    fn check_arity(&self, other: &TensorElement) -> Result<(), Error> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    /// Factor-wise product `(a (x) b)(c (x) d) = ac (x) bd`, each slot
    /// straightened back into ordered form.
    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_arity(other)?;
        let mut out = TensorElement::zero(self.arity);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                let base = *ca * *cb;
                // Per-slot straightened products, expanded as a running
                // cartesian combination.
                let mut partial: Vec<(Vec<Monomial>, Complex64)> =
                    vec![(Vec::with_capacity(self.arity), base)];
                for (ma, mb) in ka.iter().zip(kb) {
                    let slot = multiply_monomials(*ma, *mb);
                    let mut next = Vec::with_capacity(partial.len() * slot.term_count());
                    for (m, c) in slot.terms() {
                        for (key, coeff) in &partial {
                            let mut key = key.clone();
                            key.push(*m);
                            next.push((key, *coeff * *c));
                        }
                    }
                    partial = next;
                }
                for (key, coeff) in partial {
                    out.add_term(key, coeff);
                }
            }
        }
        Ok(out)
    }

    /// The abstract bracket, split recursively over the first slot.
    pub fn bracket(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_arity(other)?;
        if self.arity == 1 {
            let a = self.as_algebra_element();
            let b = other.as_algebra_element();
            return Ok(from_algebra_element(&a.bracket(&b)));
        }
        let half = Complex64::new(0.5, 0.0);
        let a_split = self.split_head();
        let b_split = other.split_head();
        let mut out = TensorElement::zero(self.arity);
        for (ha, ta) in &a_split {
            for (hb, tb) in &b_split {
                let head_comm = ha.bracket(hb);
                let head_anti = ha.multiply(hb).add(&hb.multiply(ha)).scale(half);
                let tail_anti = ta.multiply(tb)?.add(&tb.multiply(ta)?)?.scale(half);
                let tail_comm = ta.bracket(tb)?;
                out = out.add(&outer(&head_comm, &tail_anti))?;
                out = out.add(&outer(&head_anti, &tail_comm))?;
            }
        }
        Ok(out)
    }

    /// Groups terms by their first-slot monomial: `sum_i head_i (x) tail_i`.
    fn split_head(&self) -> Vec<(AlgebraElement, TensorElement)> {
        let mut groups: BTreeMap<Monomial, TensorElement> = BTreeMap::new();
        for (key, c) in self.terms() {
            let tail = key[1..].to_vec();
            groups
                .entry(key[0])
                .or_insert_with(|| TensorElement::zero(self.arity - 1))
                .add_term(tail, *c);
        }
        groups
            .into_iter()
            .map(|(head, tail)| {
                (
                    AlgebraElement::monomial(head, Complex64::new(1.0, 0.0)),
                    tail,
                )
            })
            .collect()
    }

    /// Reads an arity-1 element back as a plain algebra element.
    pub fn as_algebra_element(&self) -> AlgebraElement {
        assert_eq!(self.arity, 1, "only arity-1 tensors are plain elements");
        AlgebraElement::from_terms(self.terms().map(|(k, c)| (k[0], *c)))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
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
            f.write_str(" * ")?;
            for (j, m) in key.iter().enumerate() {
                if j > 0 {
                    f.write_str(" (x) ")?;
                }
                write!(f, "[{m}]")?;
            }
        }
        Ok(())
    }
}

/// An algebra element as an arity-1 tensor.
pub fn from_algebra_element(a: &AlgebraElement) -> TensorElement {
    let mut out = TensorElement::zero(1);
    for (m, c) in a.terms() {
        out.add_term(vec![*m], *c);
    }
    out
}

/// `head (x) tail`, concatenating slots.
pub fn outer(head: &AlgebraElement, tail: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(1 + tail.arity());
    for (hm, hc) in head.terms() {
        for (tk, tc) in tail.terms() {
            let mut key = Vec::with_capacity(1 + tk.len());
            key.push(*hm);
            key.extend_from_slice(tk);
            out.add_term(key, *hc * *tc);
        }
    }
    out
}

/// The primitive coproduct `D(X_i) = e (x) X_i + X_i (x) e`, extended to
/// ordered monomials as an algebra morphism and linearly to sums.
pub fn coproduct(a: &AlgebraElement) -> TensorElement {
    let mut cache = HashMap::new();
    let mut out = TensorElement::zero(2);
    for (m, c) in a.terms() {
        let d = coproduct_monomial_cached(*m, &mut cache);
        out = out.add(&d.scale(*c)).expect("arity 2 by construction");
    }
    out
}

fn coproduct_generator(i: usize) -> TensorElement {
    let m = Monomial::generator(i);
    let one = Complex64::new(1.0, 0.0);
    let mut out = TensorElement::zero(2);
    out.add_term(vec![Monomial::UNIT, m], one);
    out.add_term(vec![m, Monomial::UNIT], one);
    out
}

fn coproduct_monomial_cached(
    m: Monomial,
    cache: &mut HashMap<Monomial, TensorElement>,
) -> TensorElement {
    if let Some(hit) = cache.get(&m) {
        return hit.clone();
    }
    let mut acc = TensorElement::unit(2);
    for gen in 1..=3 {
        for _ in 0..m.0[gen - 1] {
            acc = acc
                .multiply(&coproduct_generator(gen))
                .expect("arity 2 by construction");
        }
    }
    cache.insert(m, acc.clone());
    acc
}

/// Degree/size envelope beyond which lifts are refused.
const LIFT_MAX_DEGREE: u32 = 8;
const LIFT_MAX_LEAVES: usize = 6;

/// Lifts an element along the whole tree into arity `L`.
///
/// The single-leaf tree lifts to the element itself; at every internal node
/// the coproduct splits each monomial between the two child subtrees, and
/// the leaf labels place the resulting factors in their slots.
pub fn lift(tree: &CouplingTree, a: &AlgebraElement) -> Result<TensorElement, Error> {
    lift_at_node(tree, &tree.root_ref(), a)
}

/// Lifts an element over the subtree rooted at `node`, embedded with units
/// in all slots outside the subtree's leaf set.
pub fn lift_at_node(
    tree: &CouplingTree,
    node: &NodeRef,
    a: &AlgebraElement,
) -> Result<TensorElement, Error> {
    let sub = tree.node(node).map_err(Error::Tree)?;
    if a.max_degree() > LIFT_MAX_DEGREE && node.len() > LIFT_MAX_LEAVES {
        return Err(Error::CostGuard {
            degree: a.max_degree(),
            leaves: node.len(),
        });
    }
    let arity = tree.leaf_count();
    let mut cache = HashMap::new();
    let mut out = TensorElement::zero(arity);
    for (m, c) in a.terms() {
        for (coeff, assignment) in lift_monomial(sub, *m, &mut cache) {
            let mut key = vec![Monomial::UNIT; arity];
            for (label, factor) in assignment {
                key[label as usize - 1] = factor;
            }
            out.add_term(key, coeff * *c);
        }
    }
    Ok(out)
}

/// Per-term lift of one monomial over a subtree: a sum of labelled factor
/// assignments. Assignments are kept sorted by label.
fn lift_monomial(
    node: &Node,
    m: Monomial,
    cache: &mut HashMap<Monomial, TensorElement>,
) -> Vec<(Complex64, Vec<(u32, Monomial)>)> {
    match node {
        Node::Leaf(label) => vec![(Complex64::new(1.0, 0.0), vec![(*label, m)])],
        Node::Pair(left, right) => {
            if m.is_unit() {
                // D(e) = e (x) e at every level: all slots stay units.
                let assignment = node
                    .leaf_set()
                    .into_iter()
                    .map(|l| (l, Monomial::UNIT))
                    .collect();
                return vec![(Complex64::new(1.0, 0.0), assignment)];
            }
            let split = coproduct_monomial_cached(m, cache);
            let mut out = Vec::new();
            for (pair, c) in split.terms() {
                for (cl, al) in lift_monomial(left, pair[0], cache) {
                    for (cr, ar) in lift_monomial(right, pair[1], cache) {
                        let mut assignment = Vec::with_capacity(al.len() + ar.len());
                        assignment.extend_from_slice(&al);
                        assignment.extend_from_slice(&ar);
                        assignment.sort_unstable_by_key(|(label, _)| *label);
                        out.push((*c * cl * cr, assignment));
                    }
                }
            }
            out
        }
    }
}
