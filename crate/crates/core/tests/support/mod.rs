//! Test-only brute-force oracle: ideal membership for homogeneous ideals by
//! degree-truncated linear algebra over the rationals, independent of the
//! Groebner path it cross-checks.

use lintype_core::{FieldElem, Monomial, Polynomial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;

/// All monomials of the given total degree in n variables.
pub fn monomials_of_degree(n: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; n];
    fn rec(n: usize, pos: usize, left: u32, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos == n - 1 {
            current[pos] = left as u16;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e as u16;
            rec(n, pos + 1, left - e, current, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(n, 0, degree, &mut current, &mut out);
    out
}

fn as_rational(c: &FieldElem) -> BigRational {
    match c {
        FieldElem::Rat(r) => r.clone(),
        FieldElem::Fp { .. } => panic!("oracle runs over the rationals"),
    }
}

/// Exact rank of a rational matrix (rows of equal length) by Gaussian
/// elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let pivot = rows[row][col].clone();
        for r in (row + 1)..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..ncols {
                let sub = &rows[row][c] * &factor;
                rows[r][c] = &rows[r][c] - sub;
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Does the homogeneous polynomial `part` of degree d lie in the span of
/// { m * g : g in gens, deg(m * g) = d }? Exact linear algebra.
fn homogeneous_component_in_ideal(part: &Polynomial, gens: &[Polynomial], ring: &Arc<Ring>) -> bool {
    let d = part.total_degree().expect("nonzero component");
    let basis = monomials_of_degree(ring.nvars(), d);
    let index_of = |m: &Monomial| basis.iter().position(|b| b == m).expect("degree-d monomial");

    let mut columns: Vec<Vec<BigRational>> = Vec::new();
    for g in gens {
        let Some(gd) = g.total_degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - gd) {
            let prod = g.mul_term(&FieldElem::from_i64(ring.field(), 1), &m);
            let mut col = vec![BigRational::from_integer(BigInt::from(0)); basis.len()];
            for t in prod.terms() {
                col[index_of(&t.mono)] = as_rational(&t.coeff);
            }
            columns.push(col);
        }
    }
    let mut target = vec![BigRational::from_integer(BigInt::from(0)); basis.len()];
    for t in part.terms() {
        target[index_of(&t.mono)] = as_rational(&t.coeff);
    }

    // column span test: rank(A) == rank(A | target), done on transposes
    let without: Vec<Vec<BigRational>> = columns.clone();
    let mut with = columns;
    with.push(target);
    rational_rank(without) == rational_rank(with)
}

/// Brute-force membership in a homogeneous ideal: split f into homogeneous
/// components and test each by linear algebra. `gens` must be homogeneous.
pub fn oracle_membership(f: &Polynomial, gens: &[Polynomial]) -> bool {
    if f.is_zero() {
        return true;
    }
    let ring = f.ring().clone();
    for g in gens {
        assert!(
            g.is_zero() || g.bidegree().is_ok() || is_total_homogeneous(g),
            "oracle needs homogeneous generators"
        );
    }
    // split by total degree
    let max_d = f.total_degree().unwrap();
    for d in 0..=max_d {
        let part_terms: Vec<(FieldElem, Monomial)> = f
            .terms()
            .iter()
            .filter(|t| t.mono.total_degree() == d)
            .map(|t| (t.coeff.clone(), t.mono.clone()))
            .collect();
        if part_terms.is_empty() {
            continue;
        }
        let part = Polynomial::from_terms(&ring, part_terms);
        if !homogeneous_component_in_ideal(&part, gens, &ring) {
            return false;
        }
    }
    true
}

pub fn is_total_homogeneous(g: &Polynomial) -> bool {
    let mut degs = g.terms().iter().map(|t| t.mono.total_degree());
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

/// SplitMix64: a tiny deterministic PRNG so randomized acceptance runs are
/// reproducible across platforms.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}
