//! Ideal-level calculus: sum, product, intersection, colon, saturation, and
//! elimination, with lifted computation in quotient base rings.
//!
//! A handle in a quotient context `A = S/Q` carries Q and performs every
//! Groebner computation on the lifted ideal I + Q in the covering
//! polynomial ring; results keep the same context. Reduced bases are cached
//! per monomial order.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, divide_exact, GroebnerBasis};
use crate::ring::order::MonomialOrder;
use crate::ring::poly::Polynomial;
use crate::ring::{Bidegree, Ring, RingDescriptor};

/// Iteration cap for saturation; Noetherianity guarantees termination long
/// before this on desk-scale input.
const SATURATION_CAP: usize = 64;

/// An ideal given by generators, with a lazily cached reduced Groebner
/// basis per order and an optional quotient context.
#[derive(Debug)]
pub struct IdealHandle {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    quotient: Arc<Vec<Polynomial>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        IdealHandle {
            ring: Arc::clone(&self.ring),
            gens: self.gens.clone(),
            quotient: Arc::clone(&self.quotient),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl IdealHandle {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> IdealHandle {
        IdealHandle::with_quotient(ring, gens, Vec::new())
    }

    pub fn with_quotient(
        ring: &Arc<Ring>,
        gens: Vec<Polynomial>,
        quotient: Vec<Polynomial>,
    ) -> IdealHandle {
        for g in gens.iter().chain(&quotient) {
            assert_eq!(g.ring().as_ref(), ring.as_ref(), "generator outside the ring");
        }
        IdealHandle {
            ring: Arc::clone(ring),
            gens,
            quotient: Arc::new(quotient),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// An ideal in a declared base ring (polynomial or quotient).
    pub fn in_base(base: &RingDescriptor, gens: Vec<Polynomial>) -> IdealHandle {
        IdealHandle::with_quotient(&base.ring, gens, base.quotient.clone())
    }

    pub fn zero(base: &RingDescriptor) -> IdealHandle {
        IdealHandle::in_base(base, Vec::new())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn quotient_relations(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn base(&self) -> RingDescriptor {
        RingDescriptor { ring: Arc::clone(&self.ring), quotient: self.quotient.to_vec() }
    }

    fn derived(&self, gens: Vec<Polynomial>) -> IdealHandle {
        IdealHandle {
            ring: Arc::clone(&self.ring),
            gens,
            quotient: Arc::clone(&self.quotient),
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn same_context(&self, other: &IdealHandle) -> Result<()> {
        if self.ring.as_ref() != other.ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        if self.quotient != other.quotient
            && buchberger_in(&self.ring, &self.quotient, &MonomialOrder::Grevlex)
                != buchberger_in(&self.ring, &other.quotient, &MonomialOrder::Grevlex)
        {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Generators of the lifted ideal I + Q in the covering polynomial ring.
    pub fn lifted_gens(&self) -> Vec<Polynomial> {
        let mut v = self.gens.clone();
        v.extend(self.quotient.iter().cloned());
        v
    }

    /// Reduced Groebner basis of the lifted ideal, cached per order.
    pub fn gb(&self, order: &MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(hit) = self.cache.read().unwrap().get(order) {
            return Arc::clone(hit);
        }
        let basis = Arc::new(buchberger_in(&self.ring, &self.lifted_gens(), order));
        self.cache.write().unwrap().insert(order.clone(), Arc::clone(&basis));
        basis
    }

    /// Membership of (the image of) f.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb(&MonomialOrder::Grevlex).normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality of (images of) ideals in the shared base ring.
    pub fn equals(&self, other: &IdealHandle) -> bool {
        self.same_context(other).is_ok()
            && self.gb(&MonomialOrder::Grevlex).polys()
                == other.gb(&MonomialOrder::Grevlex).polys()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gb(&MonomialOrder::Grevlex).is_zero_ideal()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gb(&MonomialOrder::Grevlex).is_unit_ideal()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_context(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    /// Product ideal, generated by pairwise products of the generators.
    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_context(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                let p = f.mul(g);
                if !p.is_zero() {
                    gens.push(p);
                }
            }
        }
        Ok(self.derived(gens))
    }

    /// Intersection via elimination of one auxiliary variable t from
    /// t*I + (1-t)*J.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_context(other)?;
        let gens = intersect_plain(&self.ring, &self.lifted_gens(), &other.lifted_gens());
        Ok(self.derived(gens))
    }

    /// Colon ideal (I : f), computed as `(1/f)(I n <f>)` in the covering
    /// polynomial ring; in quotient context this is the lift ((I + Q) : f).
    pub fn colon(&self, f: &Polynomial) -> Result<IdealHandle> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.ring().as_ref() != self.ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        let meet = intersect_plain(&self.ring, &self.lifted_gens(), std::slice::from_ref(f));
        let gens = meet.iter().map(|w| divide_exact(w, f)).collect();
        Ok(self.derived(gens))
    }

    /// Colon by an ideal: the intersection of the colons by its generators.
    pub fn colon_ideal(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_context(other)?;
        let mut acc: Option<IdealHandle> = None;
        for g in &other.gens {
            if g.is_zero() {
                continue;
            }
            let c = self.colon(g)?;
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.intersect(&c)?,
            });
        }
        // colon by the zero ideal is the whole ring
        Ok(acc.unwrap_or_else(|| self.derived(vec![Polynomial::one(&self.ring)])))
    }

    /// Saturation (I : J^infinity) by colon iteration. Returns the stable
    /// ideal and the number of strict colon steps (the stabilization index).
    pub fn saturate(&self, other: &IdealHandle) -> Result<(IdealHandle, usize)> {
        self.same_context(other)?;
        let mut current = self.clone();
        for step in 0..SATURATION_CAP {
            let next = current.colon_ideal(other)?;
            if next.equals(&current) {
                return Ok((current, step));
            }
            current = next;
        }
        Err(Error::SaturationDiverged(SATURATION_CAP))
    }

    /// Generators of I n K[remaining variables], via a block-order basis
    /// restricted to polynomials free of `vars`. Quotient contexts must be
    /// lifted first.
    pub fn eliminate(&self, vars: &[usize]) -> Result<IdealHandle> {
        if !self.quotient.is_empty() {
            return Err(Error::QuotientUnsupported);
        }
        for &v in vars {
            if v >= self.ring.nvars() {
                return Err(Error::Unsupported(format!("variable index {v} out of range")));
            }
        }
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let mut mask = vec![false; self.ring.nvars()];
        for &v in vars {
            mask[v] = true;
        }
        let gens = eliminate_plain(&self.ring, &self.gens, &mask);
        Ok(self.derived(gens))
    }

    /// Normal form of f modulo the lifted ideal under grevlex.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb(&MonomialOrder::Grevlex).normal_form(f)
    }

    /// A minimal generating subset for a homogeneous ideal: generators
    /// contained in the ideal of the others are dropped until none remain.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.quotient.is_empty() {
            return Err(Error::QuotientUnsupported);
        }
        let mut gens: Vec<Polynomial> =
            self.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        loop {
            let mut dropped = false;
            for i in 0..gens.len() {
                let rest: Vec<Polynomial> = gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let gb = buchberger_in(&self.ring, &rest, &MonomialOrder::Grevlex);
                if gb.normal_form(&gens[i]).is_zero() {
                    gens.remove(i);
                    dropped = true;
                    break;
                }
            }
            if !dropped {
                return Ok(gens);
            }
        }
    }

    /// Krull dimension of S/I for a polynomial base, read off the initial
    /// ideal: the largest set of variables supporting no minimal generator
    /// of in(I).
    pub fn quotient_dimension(&self) -> Result<usize> {
        if !self.quotient.is_empty() {
            return Err(Error::QuotientUnsupported);
        }
        let n = self.ring.nvars();
        if n > 24 {
            return Err(Error::Unsupported("dimension search limited to 24 variables".into()));
        }
        let gb = self.gb(&MonomialOrder::Grevlex);
        if gb.is_unit_ideal() {
            return Err(Error::Unsupported("the unit ideal has an empty quotient".into()));
        }
        let supports: Vec<u32> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0usize;
        for subset in 0u32..(1 << n) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Height (codimension) of the ideal in its polynomial ring.
    pub fn height(&self) -> Result<usize> {
        Ok(self.ring.nvars() - self.quotient_dimension()?)
    }
}

fn aux_extension(ring: &Arc<Ring>) -> (Arc<Ring>, usize) {
    let name = ring.aux_name(0);
    let wide = ring.extend(&[(name, Bidegree::ZERO)]);
    let t_index = wide.nvars() - 1;
    (wide, t_index)
}

/// Intersection of two ideals of a polynomial ring via the single
/// auxiliary-variable trick.
fn intersect_plain(ring: &Arc<Ring>, lhs: &[Polynomial], rhs: &[Polynomial]) -> Vec<Polynomial> {
    let (wide, t_index) = aux_extension(ring);
    let t = Polynomial::var(&wide, t_index);
    let one_minus_t = Polynomial::one(&wide).sub(&t);
    let mut gens = Vec::with_capacity(lhs.len() + rhs.len());
    for f in lhs {
        gens.push(t.mul(&f.extend(&wide)));
    }
    for g in rhs {
        gens.push(one_minus_t.mul(&g.extend(&wide)));
    }
    let mut mask = vec![false; wide.nvars()];
    mask[t_index] = true;
    eliminate_plain(&wide, &gens, &mask)
        .iter()
        .map(|p| p.restrict(ring).expect("eliminated variable absent"))
        .collect()
}

fn eliminate_plain(ring: &Arc<Ring>, gens: &[Polynomial], mask: &[bool]) -> Vec<Polynomial> {
    let order = MonomialOrder::elim_block(mask.to_vec());
    let gb = buchberger_in(ring, gens, &order);
    gb.polys()
        .iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|t| t.mono.exps().iter().zip(mask).all(|(&e, &m)| !m || e == 0))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::{parse_ring, poly};

    fn setup(src: &str) -> RingDescriptor {
        parse_ring(src).unwrap()
    }

    fn ideal(base: &RingDescriptor, gens: &[&str]) -> IdealHandle {
        IdealHandle::in_base(base, gens.iter().map(|s| poly(s, &base.ring)).collect())
    }

    #[test]
    fn intersect_examples() {
        let b = setup("ring QQ[x1,x2,x3];");
        // Note 2.4(2): the colon of <x2x3, x1x3+x1x2> by x1x2, intersected
        // with the full ideal
        let prefix = ideal(&b, &["x2*x3", "x1*x3 + x1*x2"]);
        let colon = prefix.colon(&poly("x1*x2", &b.ring)).unwrap();
        let full = ideal(&b, &["x2*x3", "x1*x3 + x1*x2", "x1*x2"]);
        let meet = colon.intersect(&full).unwrap();
        assert!(meet.equals(&ideal(&b, &["x2*x3", "x1*x3", "x1*x2"])));
        assert!(!meet.equals(&prefix));

        let i = ideal(&b, &["x1*x2", "x2*x3"]);
        assert!(i.intersect(&i).unwrap().equals(&i));

        let meet = ideal(&b, &["x1"]).intersect(&ideal(&b, &["x2"])).unwrap();
        assert!(meet.equals(&ideal(&b, &["x1*x2"])));
    }

    #[test]
    fn colon_examples() {
        let b = setup("ring QQ[x1,x2,x3,x4];");
        let c = ideal(&b, &["x1*x2"]).colon(&poly("x2*x3", &b.ring)).unwrap();
        assert!(c.equals(&ideal(&b, &["x1"])));

        let c = ideal(&b, &["x2*x4"]).colon(&poly("x1*x4", &b.ring)).unwrap();
        assert!(c.equals(&ideal(&b, &["x2"])));

        let i = ideal(&b, &["x1*x2", "x3*x4"]);
        assert!(i.colon(&Polynomial::one(&b.ring)).unwrap().equals(&i));

        assert!(matches!(i.colon(&Polynomial::zero(&b.ring)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn colon_ideal_examples() {
        let b = setup("ring QQ[x1,x2];");
        let i = ideal(&b, &["x1*x2"]);
        let c = i.colon_ideal(&ideal(&b, &["x1", "x2"])).unwrap();
        assert!(c.equals(&i));
        assert!(i.colon_ideal(&ideal(&b, &["1"])).unwrap().equals(&i));

        // Note 2.4(7): (<a1,a2>I : a3) n I = I
        let full = ideal(&b, &["x1^2", "x2^2", "x1*x2"]);
        let lead = ideal(&b, &["x1^2", "x2^2"]);
        let witness = lead
            .product(&full)
            .unwrap()
            .colon(&poly("x1*x2", &b.ring))
            .unwrap()
            .intersect(&full)
            .unwrap();
        assert!(witness.equals(&full));
    }

    #[test]
    fn saturation_examples() {
        let b = setup("ring QQ[x1,x2,x3];");
        let irrelevant = ideal(&b, &["x1", "x2", "x3"]);
        let (sat, steps) = ideal(&b, &["x1*x2"]).saturate(&irrelevant).unwrap();
        assert!(sat.equals(&ideal(&b, &["x1*x2"])));
        assert_eq!(steps, 0);

        let b1 = setup("ring QQ[x1];");
        let (sat, steps) = ideal(&b1, &["x1^2"]).saturate(&ideal(&b1, &["x1"])).unwrap();
        assert!(sat.is_unit_ideal());
        assert_eq!(steps, 2);
    }

    #[test]
    fn saturation_in_quotient_base() {
        // A = QQ[x1]/<x1^2>: the irrelevant ideal is nilpotent, so the
        // saturation of 0 is everything; in particular x1 lies in it
        let b = setup("ring QQ[x1] mod x1^2;");
        let zero = IdealHandle::zero(&b);
        let m = ideal(&b, &["x1"]);
        let (sat, _) = zero.saturate(&m).unwrap();
        assert!(sat.is_unit_ideal());
        assert!(sat.contains(&poly("x1", &b.ring)));
    }

    #[test]
    fn eliminate_examples() {
        let b = setup("ring QQ[t,x1,x2,y1,y2];");
        let line = ideal(&b, &["t*x1 - y1"]);
        assert!(line.eliminate(&[0]).unwrap().is_zero_ideal());

        let graph = ideal(&b, &["y1 - t*x1", "y2 - t*x2"]);
        let out = graph.eliminate(&[0]).unwrap();
        assert!(out.equals(&ideal(&b, &["x1*y2 - x2*y1"])));

        let i = ideal(&b, &["x1*x2"]);
        assert!(i.eliminate(&[]).unwrap().equals(&i));
    }

    #[test]
    fn colon_containments() {
        let b = setup("ring QQ[x1,x2,x3];");
        let i = ideal(&b, &["x1*x2", "x2*x3^2", "x1^2 + x2^2"]);
        let f = poly("x2*x3", &b.ring);
        let c = i.colon(&f).unwrap();
        // (I : f) * f lies in I, and I lies in (I : f)
        for g in c.gens() {
            assert!(i.contains(&g.mul(&f)));
        }
        assert!(c.contains_ideal(&i));
    }

    #[test]
    fn intersect_commutes_and_bounds() {
        let b = setup("ring QQ[x1,x2,x3];");
        let i = ideal(&b, &["x1*x2", "x3^2"]);
        let j = ideal(&b, &["x1 - x3", "x2*x3"]);
        let ij = i.intersect(&j).unwrap();
        let ji = j.intersect(&i).unwrap();
        assert!(ij.equals(&ji));
        let prod = i.product(&j).unwrap();
        assert!(ij.contains_ideal(&prod));
        assert!(i.contains_ideal(&ij));
        assert!(j.contains_ideal(&ij));
    }

    #[test]
    fn monomial_colon_closed_form() {
        // for monomial I and monomial f, (I : f) = <m_i / gcd(m_i, f)>
        let b = setup("ring QQ[x1,x2,x3,x4];");
        let cases = [
            (vec!["x1*x2", "x2*x3^2", "x3*x4"], "x2*x3"),
            (vec!["x1^2*x2", "x2^2", "x1*x3*x4"], "x1*x2*x4"),
            (vec!["x1*x2*x3", "x4^3"], "x4"),
        ];
        for (gens, f) in cases {
            let i = ideal(&b, &gens);
            let f = poly(f, &b.ring);
            let fm = f.as_monomial().unwrap();
            let closed: Vec<Polynomial> = i
                .gens()
                .iter()
                .map(|g| {
                    let m = g.as_monomial().unwrap();
                    Polynomial::from_monomial(&b.ring, m.div(&m.gcd(fm)).unwrap())
                })
                .collect();
            let expect = IdealHandle::in_base(&b, closed);
            assert!(i.colon(&f).unwrap().equals(&expect));
        }
    }

    #[test]
    fn quotient_context_is_well_defined() {
        // adding Q-multiples to generators leaves the lifted basis unchanged
        let b = setup("ring QQ[x1,x2] mod x1^2 - x2^2;");
        let i = ideal(&b, &["x1*x2"]);
        let tweaked = IdealHandle::in_base(
            &b,
            vec![poly("x1*x2", &b.ring).add(&poly("x2", &b.ring).mul(&b.quotient[0]))],
        );
        assert!(i.equals(&tweaked));
        assert_eq!(
            i.gb(&MonomialOrder::Grevlex).polys(),
            tweaked.gb(&MonomialOrder::Grevlex).polys()
        );
    }

    #[test]
    fn minimal_generators_trim() {
        let b = setup("ring QQ[x1,x2,x3];");
        let i = ideal(&b, &["x2*x3", "x1*x3 + x1*x2", "x1*x2", "x1*x3"]);
        let min = i.minimal_generators().unwrap();
        assert_eq!(min.len(), 3);
    }

    #[test]
    fn handles_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<IdealHandle>();
        assert_send_sync::<Polynomial>();
        assert_send_sync::<crate::groebner::GroebnerBasis>();
    }

    #[test]
    fn dimension_and_height() {
        let b = setup("ring QQ[x1,x2,x3];");
        // triangle edge ideal: dim 1, height 2
        let i = ideal(&b, &["x1*x2", "x2*x3", "x1*x3"]);
        assert_eq!(i.quotient_dimension().unwrap(), 1);
        assert_eq!(i.height().unwrap(), 2);
        // a complete intersection
        let ci = ideal(&b, &["x1", "x2"]);
        assert_eq!(ci.height().unwrap(), 2);
        // zero ideal
        let z = ideal(&b, &[]);
        assert_eq!(z.quotient_dimension().unwrap(), 3);
    }
}
