//! Multivariate division, Buchberger's algorithm with canonical reduced
//! bases, and syzygy computation.
//!
//! Everything runs over free modules S^m; polynomials are the m = 1 case.
//! Module terms are compared term-over-position: the monomial decides under
//! the active ring order, ties broken toward the smaller component. Pair
//! selection uses the sugar strategy with the Gebauer-Moller criteria; the
//! product criterion is applied only in rank one, where it is valid.
//! Determinism: input list order is the only tie-breaking source.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::field::FieldElem;
use crate::ring::monomial::Monomial;
use crate::ring::order::MonomialOrder;
use crate::ring::poly::Polynomial;
use crate::ring::Ring;

/// A reduced Groebner basis: monic elements, no term of any element
/// divisible by the leading term of another, sorted descending by leading
/// monomial. Unique per (ideal, order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_term(&self.order).expect("GB element nonzero").mono.clone())
            .collect()
    }

    /// Canonical normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.polys.is_empty() {
            return f.clone();
        }
        let (_, r) = divide(f, &self.polys, &self.order).expect("basis shares f's ring");
        r
    }
}

/// A generating set for the syzygies of a fixed polynomial list: each
/// generator v satisfies sum(v_j * g_j) = 0 exactly.
#[derive(Debug, Clone)]
pub struct SyzygyModule {
    ring: Arc<Ring>,
    arity: usize,
    generators: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Length of each syzygy vector (= number of input polynomials).
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Exact check that every generator annihilates the input vector.
    pub fn annihilates(&self, gens: &[Polynomial]) -> bool {
        self.generators.iter().all(|v| {
            let mut acc = Polynomial::zero(&self.ring);
            for (c, g) in v.iter().zip(gens) {
                acc = acc.add(&c.mul(g));
            }
            acc.is_zero()
        })
    }

    /// Module equality with another generating set, via reduced module
    /// Groebner bases under grevlex.
    pub fn equals_module(&self, other: &[Vec<Polynomial>]) -> bool {
        let order = MonomialOrder::Grevlex;
        let a = module_reduced_gb(&self.ring, &self.generators, self.arity, &order);
        let b = module_reduced_gb(&self.ring, other, self.arity, &order);
        a == b
    }
}

// ---------------------------------------------------------------------------
// module terms and vectors

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MTerm {
    pub coeff: FieldElem,
    pub mono: Monomial,
    pub comp: usize,
}

/// A free-module element as a term list, sorted strictly descending under
/// the active order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MVec {
    pub terms: Vec<MTerm>,
}

fn cmp_mterm(order: &MonomialOrder, a: &MTerm, b: &MTerm) -> Ordering {
    order.cmp(&a.mono, &b.mono).then_with(|| b.comp.cmp(&a.comp))
}

impl MVec {
    pub fn zero() -> MVec {
        MVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> &MTerm {
        &self.terms[0]
    }

    fn from_terms(order: &MonomialOrder, mut terms: Vec<MTerm>) -> MVec {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| cmp_mterm(order, b, a));
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.mono == t.mono && last.comp == t.comp {
                    last.coeff = last.coeff.add(&t.coeff);
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push(t);
        }
        MVec { terms: out }
    }

    /// self - (c * m) * g, merging sorted term lists.
    fn sub_scaled(&self, order: &MonomialOrder, c: &FieldElem, m: &Monomial, g: &MVec) -> MVec {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let gt = &g.terms[j];
            let scaled = MTerm {
                coeff: gt.coeff.mul(c).neg(),
                mono: gt.mono.mul(m),
                comp: gt.comp,
            };
            match cmp_mterm(order, &self.terms[i], &scaled) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scaled);
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = self.terms[i].coeff.add(&scaled.coeff);
                    if !coeff.is_zero() {
                        out.push(MTerm { coeff, mono: scaled.mono, comp: scaled.comp });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < g.terms.len() {
            let gt = &g.terms[j];
            out.push(MTerm { coeff: gt.coeff.mul(c).neg(), mono: gt.mono.mul(m), comp: gt.comp });
            j += 1;
        }
        MVec { terms: out }
    }

    fn scale(&self, c: &FieldElem) -> MVec {
        MVec {
            terms: self
                .terms
                .iter()
                .map(|t| MTerm { coeff: t.coeff.mul(c), mono: t.mono.clone(), comp: t.comp })
                .collect(),
        }
    }

    fn mul_mono(&self, m: &Monomial) -> MVec {
        MVec {
            terms: self
                .terms
                .iter()
                .map(|t| MTerm { coeff: t.coeff.clone(), mono: t.mono.mul(m), comp: t.comp })
                .collect(),
        }
    }

    pub fn from_poly(order: &MonomialOrder, f: &Polynomial, comp: usize) -> MVec {
        let terms = f
            .terms()
            .iter()
            .map(|t| MTerm { coeff: t.coeff.clone(), mono: t.mono.clone(), comp })
            .collect();
        MVec::from_terms(order, terms)
    }

    pub fn from_columns(order: &MonomialOrder, column: &[Polynomial]) -> MVec {
        let mut terms = Vec::new();
        for (comp, f) in column.iter().enumerate() {
            for t in f.terms() {
                terms.push(MTerm { coeff: t.coeff.clone(), mono: t.mono.clone(), comp });
            }
        }
        MVec::from_terms(order, terms)
    }

    pub fn to_polys(&self, ring: &Arc<Ring>, ncomp: usize) -> Vec<Polynomial> {
        let mut cols: Vec<Vec<(FieldElem, Monomial)>> = vec![Vec::new(); ncomp];
        for t in &self.terms {
            cols[t.comp].push((t.coeff.clone(), t.mono.clone()));
        }
        cols.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect()
    }
}

// ---------------------------------------------------------------------------
// division

struct Quotients {
    want: bool,
    terms: Vec<Vec<(FieldElem, Monomial)>>,
}

fn mdivide_inner(
    order: &MonomialOrder,
    f: &MVec,
    divisors: &[MVec],
    want_quotients: bool,
) -> (Quotients, MVec) {
    let mut q = Quotients { want: want_quotients, terms: vec![Vec::new(); divisors.len()] };
    let mut rem: Vec<MTerm> = Vec::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let lead = work.lt().clone();
        for (j, g) in divisors.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let glt = g.lt();
            if glt.comp == lead.comp {
                if let Some(m) = lead.mono.div(&glt.mono) {
                    let c = lead.coeff.div(&glt.coeff).expect("leading coefficient nonzero");
                    work = work.sub_scaled(order, &c, &m, g);
                    if q.want {
                        q.terms[j].push((c, m));
                    }
                    continue 'outer;
                }
            }
        }
        rem.push(work.terms.remove(0));
    }
    (q, MVec { terms: rem })
}

/// Deterministic multivariate division: f = sum(q_i * g_i) + r with no term
/// of r divisible by any divisor's leading term; the first divisor in list
/// order wins.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    let ring = f.ring();
    for g in divisors {
        if g.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
    }
    let divs: Vec<MVec> = divisors.iter().map(|g| MVec::from_poly(order, g, 0)).collect();
    let (q, r) = mdivide_inner(order, &MVec::from_poly(order, f, 0), &divs, true);
    let quotients: Vec<Polynomial> =
        q.terms.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect();
    let remainder = r.to_polys(ring, 1).pop().unwrap();
    debug_assert!(
        {
            let mut acc = remainder.clone();
            for (qi, gi) in quotients.iter().zip(divisors) {
                acc = acc.add(&qi.mul(gi));
            }
            acc == *f
        },
        "division identity violated"
    );
    Ok((quotients, remainder))
}

/// Exact quotient f / g; panics unless g divides f.
pub fn divide_exact(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mut q, r) = divide(f, std::slice::from_ref(g), &MonomialOrder::Grevlex)
        .expect("same ring, nonzero divisor");
    assert!(r.is_zero(), "inexact polynomial division");
    q.pop().unwrap()
}

// ---------------------------------------------------------------------------
// Buchberger

struct Pair {
    a: usize,
    b: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    rank_one: bool,
    basis: Vec<MVec>,
    sugar: Vec<u32>,
    exprs: Option<Vec<Vec<MVec>>>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn new(order: &'a MonomialOrder, rank_one: bool, track: bool) -> Self {
        Engine {
            order,
            rank_one,
            basis: Vec::new(),
            sugar: Vec::new(),
            exprs: if track { Some(Vec::new()) } else { None },
            pairs: Vec::new(),
        }
    }

    fn lcm_of(&self, a: usize, b: usize) -> Option<Monomial> {
        let la = self.basis[a].lt();
        let lb = self.basis[b].lt();
        if la.comp != lb.comp {
            return None;
        }
        Some(la.mono.lcm(&lb.mono))
    }

    fn pair_sugar(&self, a: usize, b: usize, lcm: &Monomial) -> u32 {
        let da = self.sugar[a] + lcm.div(&self.basis[a].lt().mono).unwrap().total_degree();
        let db = self.sugar[b] + lcm.div(&self.basis[b].lt().mono).unwrap().total_degree();
        da.max(db)
    }

    /// Gebauer-Moller update when basis element `t` is appended.
    fn update_pairs(&mut self, t: usize) {
        let lt_t = self.basis[t].lt().clone();

        // chain criterion against the new element
        let mut retained = Vec::with_capacity(self.pairs.len());
        for p in std::mem::take(&mut self.pairs) {
            let same_comp = self.basis[p.a].lt().comp == lt_t.comp;
            let drop = same_comp && lt_t.mono.divides(&p.lcm) && {
                let lcm_at = self.lcm_of(p.a, t).unwrap();
                let lcm_bt = self.lcm_of(p.b, t).unwrap();
                lcm_at != p.lcm && lcm_bt != p.lcm
            };
            if !drop {
                retained.push(p);
            }
        }
        self.pairs = retained;

        // candidate new pairs
        let cands: Vec<(usize, Monomial)> = (0..t)
            .filter(|&i| !self.basis[i].is_zero())
            .filter_map(|i| self.lcm_of(i, t).map(|l| (i, l)))
            .collect();

        // drop candidates whose lcm strictly contains another candidate's
        let mut keep = vec![true; cands.len()];
        for i in 0..cands.len() {
            if !keep[i] {
                continue;
            }
            for j in 0..cands.len() {
                if i == j {
                    continue;
                }
                if cands[j].1.divides(&cands[i].1) && cands[j].1 != cands[i].1 {
                    keep[i] = false;
                    break;
                }
            }
        }
        // among equal lcms keep one; a coprime-lead member kills its class
        // (rank one only, where the product criterion holds)
        let mut classes: Vec<(Monomial, Option<usize>)> = Vec::new();
        for (idx, (i, lcm)) in cands.into_iter().enumerate() {
            if !keep[idx] {
                continue;
            }
            let coprime =
                self.rank_one && self.basis[i].lt().mono.is_coprime(&self.basis[t].lt().mono);
            match classes.iter_mut().find(|(l, _)| *l == lcm) {
                Some((_, slot)) => {
                    if coprime {
                        *slot = None;
                    }
                }
                None => classes.push((lcm, if coprime { None } else { Some(i) })),
            }
        }
        for (lcm, slot) in classes {
            if let Some(i) = slot {
                let sugar = self.pair_sugar(i, t, &lcm);
                self.pairs.push(Pair { a: i, b: t, lcm, sugar });
            }
        }
    }

    fn select_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for i in 1..self.pairs.len() {
            let p = &self.pairs[i];
            let q = &self.pairs[best];
            let c = p
                .sugar
                .cmp(&q.sugar)
                .then_with(|| self.order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.a, p.b).cmp(&(q.a, q.b)));
            if c == Ordering::Less {
                best = i;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Full normal form against the current basis, tracking expressions and
    /// sugar through the reduction.
    fn reduce(
        &self,
        f: MVec,
        expr: Option<Vec<MVec>>,
        sugar: u32,
    ) -> (MVec, Option<Vec<MVec>>, u32) {
        let mut work = f;
        let mut expr = expr;
        let mut sug = sugar;
        let mut rem: Vec<MTerm> = Vec::new();
        'outer: while !work.is_zero() {
            let lead = work.lt().clone();
            for (j, g) in self.basis.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let glt = g.lt();
                if glt.comp == lead.comp {
                    if let Some(m) = lead.mono.div(&glt.mono) {
                        let c = lead.coeff.div(&glt.coeff).expect("monic basis");
                        work = work.sub_scaled(self.order, &c, &m, g);
                        if let Some(e) = expr.as_mut() {
                            let ge = &self.exprs.as_ref().unwrap()[j];
                            for (ek, gk) in e.iter_mut().zip(ge) {
                                *ek = ek.sub_scaled(self.order, &c, &m, gk);
                            }
                        }
                        sug = sug.max(self.sugar[j] + m.total_degree());
                        continue 'outer;
                    }
                }
            }
            rem.push(work.terms.remove(0));
        }
        (MVec { terms: rem }, expr, sug)
    }

    fn insert(&mut self, f: MVec, expr: Option<Vec<MVec>>, sugar: u32) {
        debug_assert!(!f.is_zero());
        let inv = f.lt().coeff.inverse().expect("leading coefficient invertible");
        let f = f.scale(&inv);
        if let Some(exprs) = self.exprs.as_mut() {
            let e = expr.expect("expression tracked").iter().map(|v| v.scale(&inv)).collect();
            exprs.push(e);
        }
        self.basis.push(f);
        self.sugar.push(sugar);
        let t = self.basis.len() - 1;
        self.update_pairs(t);
    }

    fn run(&mut self) {
        while let Some(p) = self.select_pair() {
            let (fa, fb) = (&self.basis[p.a], &self.basis[p.b]);
            let ma = p.lcm.div(&fa.lt().mono).unwrap();
            let mb = p.lcm.div(&fb.lt().mono).unwrap();
            let one = fa.lt().coeff.spec().one();
            let s = fa.mul_mono(&ma).sub_scaled(self.order, &one, &mb, fb);
            let expr = self.exprs.as_ref().map(|exprs| {
                exprs[p.a]
                    .iter()
                    .zip(&exprs[p.b])
                    .map(|(ea, eb)| ea.mul_mono(&ma).sub_scaled(self.order, &one, &mb, eb))
                    .collect()
            });
            let (r, re, sug) = self.reduce(s, expr, p.sugar);
            if !r.is_zero() {
                self.insert(r, re, sug);
            }
        }
    }

    /// Shrink to the reduced basis: minimal leading terms, tails in normal
    /// form, everything monic, sorted descending by lead. Expressions follow
    /// along.
    fn reduce_basis(&mut self) {
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.basis.len() {
            if self.basis[i].is_zero() {
                continue;
            }
            let li = self.basis[i].lt().clone();
            let dominated = (0..self.basis.len()).any(|j| {
                j != i
                    && !self.basis[j].is_zero()
                    && self.basis[j].lt().comp == li.comp
                    && self.basis[j].lt().mono.divides(&li.mono)
                    && (self.basis[j].lt().mono != li.mono || j < i)
            });
            if !dominated {
                keep.push(i);
            }
        }
        let mut basis: Vec<MVec> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let sugar: Vec<u32> = keep.iter().map(|&i| self.sugar[i]).collect();
        let mut exprs = self
            .exprs
            .take()
            .map(|old| keep.iter().map(|&i| old[i].clone()).collect::<Vec<_>>());

        loop {
            let mut changed = false;
            for i in 0..basis.len() {
                let others: Vec<MVec> = basis
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let (q, r) = mdivide_inner(self.order, &basis[i], &others, exprs.is_some());
                if r != basis[i] {
                    changed = true;
                    if let Some(exprs) = exprs.as_mut() {
                        let other_idx: Vec<usize> = (0..basis.len()).filter(|j| *j != i).collect();
                        let mut e = exprs[i].clone();
                        for (slot, &j) in other_idx.iter().enumerate() {
                            for (c, m) in &q.terms[slot] {
                                let ej = exprs[j].clone();
                                for (ek, gk) in e.iter_mut().zip(&ej) {
                                    *ek = ek.sub_scaled(self.order, c, m, gk);
                                }
                            }
                        }
                        exprs[i] = e;
                    }
                    basis[i] = r;
                }
            }
            if !changed {
                break;
            }
        }
        let nonzero: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i].is_zero()).collect();

        let mut order_idx = nonzero;
        order_idx.sort_by(|&i, &j| cmp_mterm(self.order, basis[j].lt(), basis[i].lt()));
        let mut out = Vec::with_capacity(order_idx.len());
        let mut out_sugar = Vec::with_capacity(order_idx.len());
        let mut out_exprs = exprs.as_ref().map(|_| Vec::with_capacity(order_idx.len()));
        for &i in &order_idx {
            let inv = basis[i].lt().coeff.inverse().expect("nonzero lead");
            out.push(basis[i].scale(&inv));
            out_sugar.push(sugar[i]);
            if let (Some(oe), Some(exprs)) = (out_exprs.as_mut(), exprs.as_ref()) {
                oe.push(exprs[i].iter().map(|v| v.scale(&inv)).collect::<Vec<_>>());
            }
        }
        self.basis = out;
        self.sugar = out_sugar;
        self.exprs = out_exprs;
    }
}

fn engine_for<'a>(
    order: &'a MonomialOrder,
    inputs: &[MVec],
    rank_one: bool,
    track: bool,
) -> Engine<'a> {
    let mut eng = Engine::new(order, rank_one, track);
    let n = inputs.len();
    for (j, f) in inputs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let sugar = f.terms.iter().map(|t| t.mono.total_degree()).max().unwrap_or(0);
        let expr = track.then(|| {
            let mut e = vec![MVec::zero(); n];
            e[j] = MVec {
                terms: vec![MTerm {
                    coeff: f.lt().coeff.spec().one(),
                    mono: Monomial::one(f.lt().mono.nvars()),
                    comp: 0,
                }],
            };
            e
        });
        let (r, re, sug) = eng.reduce(f.clone(), expr, sugar);
        if !r.is_zero() {
            eng.insert(r, re, sug);
        }
    }
    eng.run();
    eng
}

/// Reduced Groebner basis of the ideal generated by `gens`; zero generators
/// are discarded. Canonical for the (ideal, order) pair.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::EmptyGenerators);
    };
    let ring = first.ring().clone();
    for g in gens {
        if g.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch);
        }
    }
    Ok(buchberger_in(&ring, gens, order))
}

/// Like `buchberger` but usable with an empty generator list (zero ideal).
pub fn buchberger_in(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> GroebnerBasis {
    let inputs: Vec<MVec> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| MVec::from_poly(order, g, 0))
        .collect();
    let mut eng = engine_for(order, &inputs, true, false);
    eng.reduce_basis();
    let polys = eng.basis.iter().map(|v| v.to_polys(ring, 1).pop().unwrap()).collect();
    GroebnerBasis { ring: Arc::clone(ring), order: order.clone(), polys }
}

/// Ideal membership: the normal form of f modulo a Groebner basis is zero.
pub fn membership(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool> {
    if f.ring().as_ref() != basis.ring.as_ref() {
        return Err(Error::RingMismatch);
    }
    Ok(basis.normal_form(f).is_zero())
}

/// Ideal equality via canonical reduced bases.
pub fn ideal_equal(
    lhs: &[Polynomial],
    rhs: &[Polynomial],
    ring: &Arc<Ring>,
    order: &MonomialOrder,
) -> bool {
    buchberger_in(ring, lhs, order).polys == buchberger_in(ring, rhs, order).polys
}

// ---------------------------------------------------------------------------
// syzygies

/// Generators of the first syzygy module of `gens` (relations among the
/// given list, redundant generators included).
pub fn syzygies(gens: &[Polynomial], order: &MonomialOrder) -> Result<SyzygyModule> {
    let Some(first) = gens.first() else {
        return Err(Error::EmptyGenerators);
    };
    let ring = first.ring().clone();
    for g in gens {
        if g.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch);
        }
    }
    let columns: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let generators = module_syzygies(&ring, &columns, 1, order);
    Ok(SyzygyModule { ring, arity: gens.len(), generators })
}

/// Syzygies of a list of free-module elements given as columns over S^ncomp.
/// Returns vectors of length = number of columns. The construction is the
/// classical one: Schreyer generators from the S-pairs of a Groebner basis H
/// of the column span, mapped back through the tracked expressions H = C*G,
/// plus the rows of I - D*C where G = D*H by division.
pub(crate) fn module_syzygies(
    ring: &Arc<Ring>,
    columns: &[Vec<Polynomial>],
    ncomp: usize,
    order: &MonomialOrder,
) -> Vec<Vec<Polynomial>> {
    let k = columns.len();
    let inputs: Vec<MVec> = columns.iter().map(|c| MVec::from_columns(order, c)).collect();
    debug_assert!(columns.iter().all(|c| c.len() == ncomp));

    let mut zero_syzygies: Vec<Vec<Polynomial>> = Vec::new();
    for (j, f) in inputs.iter().enumerate() {
        if f.is_zero() {
            let mut v = vec![Polynomial::zero(ring); k];
            v[j] = Polynomial::one(ring);
            zero_syzygies.push(v);
        }
    }

    let mut eng = engine_for(order, &inputs, ncomp == 1, true);
    eng.reduce_basis();
    let basis = std::mem::take(&mut eng.basis);
    let exprs = eng.exprs.take().expect("tracked");
    let t = basis.len();
    if t == 0 {
        return zero_syzygies;
    }

    let mut d_rows: Vec<Vec<Vec<(FieldElem, Monomial)>>> = Vec::with_capacity(k);
    for f in &inputs {
        if f.is_zero() {
            d_rows.push(vec![Vec::new(); t]);
            continue;
        }
        let (q, r) = mdivide_inner(order, f, &basis, true);
        assert!(r.is_zero(), "input must reduce to zero over its own basis");
        d_rows.push(q.terms);
    }

    let one = ring.field().one();
    let mut syz: Vec<Vec<MVec>> = Vec::new();

    for a in 0..t {
        for b in (a + 1)..t {
            let (la, lb) = (basis[a].lt(), basis[b].lt());
            if la.comp != lb.comp {
                continue;
            }
            let lcm = la.mono.lcm(&lb.mono);
            let ma = lcm.div(&la.mono).unwrap();
            let mb = lcm.div(&lb.mono).unwrap();
            let s = basis[a].mul_mono(&ma).sub_scaled(order, &one, &mb, &basis[b]);
            let (q, r) = mdivide_inner(order, &s, &basis, true);
            assert!(r.is_zero(), "S-pair of a Groebner basis must reduce to zero");
            let mut v: Vec<MVec> = vec![MVec::zero(); k];
            {
                let mut absorb = |idx: usize, c: &FieldElem, m: &Monomial| {
                    for (slot, ev) in exprs[idx].iter().enumerate() {
                        v[slot] = v[slot].sub_scaled(order, &c.neg(), m, ev);
                    }
                };
                absorb(a, &one, &ma);
                absorb(b, &one.neg(), &mb);
                for (c_idx, terms) in q.terms.iter().enumerate() {
                    for (c, m) in terms {
                        absorb(c_idx, &c.neg(), m);
                    }
                }
            }
            syz.push(v);
        }
    }

    for i in 0..k {
        if inputs[i].is_zero() {
            continue;
        }
        let mut v: Vec<MVec> = vec![MVec::zero(); k];
        v[i] = MVec {
            terms: vec![MTerm { coeff: one.clone(), mono: Monomial::one(ring.nvars()), comp: 0 }],
        };
        for (j, terms) in d_rows[i].iter().enumerate() {
            for (c, m) in terms {
                for (slot, ev) in exprs[j].iter().enumerate() {
                    v[slot] = v[slot].sub_scaled(order, c, m, ev);
                }
            }
        }
        syz.push(v);
    }

    let mut out: Vec<Vec<Polynomial>> = zero_syzygies;
    for v in syz {
        let polys: Vec<Polynomial> =
            v.iter().map(|mv| mv.to_polys(ring, 1).pop().unwrap()).collect();
        if polys.iter().all(Polynomial::is_zero) {
            continue;
        }
        if out.contains(&polys) {
            continue;
        }
        out.push(polys);
    }
    out
}

/// Reduced module Groebner basis of the span of `columns` in S^ncomp, for
/// module equality tests.
pub(crate) fn module_reduced_gb(
    _ring: &Arc<Ring>,
    columns: &[Vec<Polynomial>],
    ncomp: usize,
    order: &MonomialOrder,
) -> Vec<MVec> {
    let inputs: Vec<MVec> = columns.iter().map(|c| MVec::from_columns(order, c)).collect();
    debug_assert!(columns.iter().all(|c| c.len() == ncomp));
    let mut eng = engine_for(order, &inputs, ncomp == 1, false);
    eng.reduce_basis();
    eng.basis
}
