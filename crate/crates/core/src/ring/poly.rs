//! Multivariate polynomials with exact coefficients in canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::field::FieldElem;
use crate::ring::monomial::Monomial;
use crate::ring::order::MonomialOrder;
use crate::ring::{Bidegree, Ring};

/// One coefficient-monomial pair. The coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElem,
    pub mono: Monomial,
}

/// A polynomial in canonical form: terms strictly descending under the
/// ring's storage order (grevlex on the declared variable sequence), no
/// zero coefficients, no duplicate monomials. The empty term list is the
/// zero polynomial. Canonical form makes equality a term-list comparison
/// and printing byte-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

const STORAGE_ORDER: MonomialOrder = MonomialOrder::Grevlex;

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial { ring: Arc::clone(ring), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Term { coeff: c, mono: Monomial::one(ring.nvars()) }],
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Polynomial {
        Polynomial::from_monomial(ring, Monomial::var(ring.nvars(), index, 1))
    }

    pub fn from_monomial(ring: &Arc<Ring>, mono: Monomial) -> Polynomial {
        assert_eq!(mono.nvars(), ring.nvars());
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Term { coeff: ring.field().one(), mono }],
        }
    }

    /// Normalize an arbitrary term list: merge duplicate monomials, drop
    /// zeros, sort descending.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(FieldElem, Monomial)>) -> Polynomial {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> =
            acc.into_iter().map(|(mono, coeff)| Term { coeff, mono }).collect();
        terms.sort_by(|a, b| STORAGE_ORDER.cmp(&b.mono, &a.mono));
        Polynomial { ring: Arc::clone(ring), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() || self.is_zero()
    }

    /// A single-term polynomial viewed as its monomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            Some(&self.terms[0].mono)
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.total_degree()).max()
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.as_ref() == other.ring.as_ref() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("ring mismatch")
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match STORAGE_ORDER.cmp(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.coeff.add(&b.coeff);
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a.mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.neg(), mono: t.mono.clone() })
            .collect();
        Polynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("ring mismatch")
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.try_mul(&b.mono)?;
                let c = a.coeff.mul(&b.coeff);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> =
            acc.into_iter().map(|(mono, coeff)| Term { coeff, mono }).collect();
        terms.sort_by(|a, b| STORAGE_ORDER.cmp(&b.mono, &a.mono));
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms })
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.clone() })
            .collect();
        Polynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn mul_term(&self, c: &FieldElem, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.mul(m) })
            .collect();
        Polynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The common bidegree of all terms. Errors on zero input and on
    /// non-bihomogeneous input (reporting two conflicting term bidegrees).
    pub fn bidegree(&self) -> Result<Bidegree> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        let d = self.ring.monomial_bidegree(&first.mono);
        for t in &self.terms[1..] {
            let e = self.ring.monomial_bidegree(&t.mono);
            if e != d {
                return Err(Error::NotBihomogeneous(d, e));
            }
        }
        Ok(d)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_ok()
    }

    /// Zero-pad into a wider ring whose variables start with this ring's.
    pub fn extend(&self, wider: &Arc<Ring>) -> Polynomial {
        assert!(wider.nvars() >= self.ring.nvars());
        debug_assert_eq!(
            &wider.vars()[..self.ring.nvars()],
            self.ring.vars(),
            "extension must preserve variable positions"
        );
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.extend(wider.nvars()) })
            .collect();
        Polynomial { ring: Arc::clone(wider), terms }
    }

    /// Drop trailing auxiliary variables; None if any term uses them.
    pub fn restrict(&self, narrower: &Arc<Ring>) -> Option<Polynomial> {
        assert!(narrower.nvars() <= self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono: t.mono.restrict(narrower.nvars())?,
            });
        }
        Some(Polynomial { ring: Arc::clone(narrower), terms })
    }

    /// Image under the ring map sending variable i to `images[i]`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for t in &self.terms {
            let mut term = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(u32::from(e)));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Leading term under an arbitrary order (scans all terms; canonical
    /// storage is grevlex, so non-grevlex callers pay a linear pass).
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        match order {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.mono, &b.mono)),
        }
    }

    fn fmt_monomial(ring: &Ring, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(ring.var_name(i));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if neg { t.coeff.neg() } else { t.coeff.clone() };
            if t.mono.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                Self::fmt_monomial(&self.ring, &t.mono, &mut out);
            }
        }
        write!(f, "{out}")
    }
}
