//! Minimal bigraded free resolutions, Betti tables, and x-/y-regularity.
//!
//! Resolutions are built by iterated syzygy computation on the previous
//! differential's columns, pruning unit entries as soon as a step is
//! computed so intermediate ranks stay near-minimal; a final `minimalize`
//! pass guarantees no constant entry survives. Shift bookkeeping: entry
//! (k, l) of the i-th differential is zero or bihomogeneous of bidegree
//! `shifts[i][l] - shifts[i-1][k]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::BigradedPresentation;
use crate::error::{Error, Result};
use crate::groebner::{divide_exact, module_syzygies};
use crate::ring::order::MonomialOrder;
use crate::ring::poly::Polynomial;
use crate::ring::{Bidegree, Ring};

pub type Matrix = Vec<Vec<Polynomial>>;

/// A free resolution of S/J with bidegree shift bookkeeping. `matrices[k]`
/// is the differential F_{k+1} -> F_k as a rows-by-columns array (rows
/// indexed by the target's basis); `shifts[k]` lists the bidegree shifts of
/// F_k's generators, with `shifts[0] = [(0,0)]` for the cyclic quotient.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    ring: Arc<Ring>,
    matrices: Vec<Matrix>,
    shifts: Vec<Vec<Bidegree>>,
    minimal: bool,
}

impl ResolutionData {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Homological length (index of the last nonzero free module).
    pub fn length(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn shifts(&self) -> &[Vec<Bidegree>] {
        &self.shifts
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn rank(&self, i: usize) -> usize {
        self.shifts.get(i).map_or(0, Vec::len)
    }

    /// d_i composed with d_{i+1} is identically zero at every step.
    pub fn is_complex(&self) -> bool {
        for k in 0..self.matrices.len().saturating_sub(1) {
            let d_i = &self.matrices[k];
            let d_next = &self.matrices[k + 1];
            let rows = self.rank(k);
            let mid = self.rank(k + 1);
            let cols = self.rank(k + 2);
            for r in 0..rows {
                for c in 0..cols {
                    let mut acc = Polynomial::zero(&self.ring);
                    for m in 0..mid {
                        acc = acc.add(&d_i[r][m].mul(&d_next[m][c]));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Shift bookkeeping invariant: every nonzero entry is bihomogeneous of
    /// the bidegree its shifts dictate.
    pub fn shifts_consistent(&self) -> bool {
        for (k, m) in self.matrices.iter().enumerate() {
            for (r, row) in m.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    if entry.is_zero() {
                        continue;
                    }
                    let Ok(d) = entry.bidegree() else { return false };
                    let src = self.shifts[k + 1][c];
                    let tgt = self.shifts[k][r];
                    if tgt.add(d) != src {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Ranks of the differentials over the fraction field, by exact
    /// fraction-free Gaussian elimination; checks
    /// rank d_i + rank d_{i+1} = rank F_i at every interior step.
    pub fn exactness_ranks_hold(&self) -> bool {
        let ranks: Vec<usize> = self.matrices.iter().map(|m| matrix_rank(&self.ring, m)).collect();
        for i in 1..=self.matrices.len() {
            let incoming = ranks[i - 1];
            let outgoing = if i < self.matrices.len() { ranks[i] } else { 0 };
            if incoming + outgoing != self.rank(i) {
                return false;
            }
        }
        true
    }
}

/// Rank over Frac(S) by Bareiss fraction-free elimination.
pub fn matrix_rank(ring: &Arc<Ring>, m: &Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a: Matrix = m.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pivot);
        for r in (row + 1)..rows {
            for c in (col + 1)..cols {
                let num = a[row][col].mul(&a[r][c]).sub(&a[r][col].mul(&a[row][c]));
                a[r][c] = if num.is_zero() { num } else { divide_exact(&num, &prev) };
            }
            a[r][col] = Polynomial::zero(ring);
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// A bigraded Betti table: multiplicity of each bidegree shift per
/// homological index, read off a minimal resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Bidegree), usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub dx: u32,
    pub dy: u32,
    pub mult: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, shift: Bidegree) -> usize {
        self.entries.get(&(i, shift)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(&(i, d), &mult)| BettiEntry { i, dx: d.dx, dy: d.dy, mult })
            .collect()
    }

    /// Total Betti number at homological index i.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((j, _), _)| *j == i).map(|(_, &m)| m).sum()
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    /// Two-axis grid: rows are (dx, dy) shifts, columns homological degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_i = self.max_index();
        let shifts: Vec<Bidegree> = {
            let mut s: Vec<Bidegree> = self.entries.keys().map(|&(_, d)| d).collect();
            s.sort();
            s.dedup();
            s
        };
        write!(f, "{:>10}", "(dx,dy)")?;
        for i in 0..=max_i {
            write!(f, "{i:>6}")?;
        }
        writeln!(f)?;
        for d in shifts {
            write!(f, "{:>10}", format!("({},{})", d.dx, d.dy))?;
            for i in 0..=max_i {
                let m = self.get(i, d);
                if m == 0 {
                    write!(f, "{:>6}", ".")?;
                } else {
                    write!(f, "{m:>6}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Free resolution of S/J for a bihomogeneous defining ideal, minimal after
/// pruning, of length at most the variable count.
pub fn free_resolution(p: &BigradedPresentation) -> Result<ResolutionData> {
    let ring = Arc::clone(p.ambient());
    for g in p.defining() {
        if g.is_zero() {
            continue;
        }
        g.bidegree()?;
    }
    let gens: Vec<Polynomial> = p.defining().iter().filter(|g| !g.is_zero()).cloned().collect();

    let mut shifts: Vec<Vec<Bidegree>> = vec![vec![Bidegree::ZERO]];
    let mut matrices: Vec<Matrix> = Vec::new();
    if gens.is_empty() {
        return Ok(ResolutionData { ring, matrices, shifts, minimal: true });
    }

    let d1: Matrix = vec![gens.clone()];
    shifts.push(gens.iter().map(|g| g.bidegree().expect("checked")).collect());
    matrices.push(d1);
    prune_units(&mut matrices, &mut shifts);

    loop {
        let step = matrices.len();
        assert!(
            step <= ring.nvars() + 1,
            "internal error: resolution exceeded the variable count"
        );
        let last = &matrices[step - 1];
        let rows = shifts[step - 1].len();
        let cols = shifts[step].len();
        if cols == 0 {
            break;
        }
        let columns: Vec<Vec<Polynomial>> =
            (0..cols).map(|l| (0..rows).map(|k| last[k][l].clone()).collect()).collect();
        let syz = module_syzygies(&ring, &columns, rows.max(1), &MonomialOrder::Grevlex);
        if syz.is_empty() {
            break;
        }
        // next differential: rows = current cols, columns = syzygies
        let mut next: Matrix = vec![vec![Polynomial::zero(&ring); syz.len()]; cols];
        let mut next_shifts: Vec<Bidegree> = Vec::with_capacity(syz.len());
        for (l, v) in syz.iter().enumerate() {
            let mut shift: Option<Bidegree> = None;
            for (k, entry) in v.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let d = entry.bidegree()?;
                let s = shifts[step][k].add(d);
                match shift {
                    None => shift = Some(s),
                    Some(prev) => {
                        assert_eq!(prev, s, "syzygy not bihomogeneous against shifts")
                    }
                }
                next[k][l] = entry.clone();
            }
            next_shifts.push(shift.expect("syzygy vector nonzero"));
        }
        matrices.push(next);
        shifts.push(next_shifts);
        prune_units(&mut matrices, &mut shifts);
        if shifts.last().map_or(true, Vec::is_empty) {
            trim_trailing(&mut matrices, &mut shifts);
            break;
        }
    }
    trim_trailing(&mut matrices, &mut shifts);

    let res = ResolutionData { ring, matrices, shifts, minimal: true };
    debug_assert!(res.is_complex());
    debug_assert!(res.shifts_consistent());
    Ok(res)
}

/// Cancel unit (nonzero constant) entries by row/column reduction until
/// none remain. Homotopy equivalence: Betti data of the quotient complex is
/// unchanged, and composing to zero is preserved.
pub fn minimalize(r: &ResolutionData) -> ResolutionData {
    let mut matrices = r.matrices.clone();
    let mut shifts = r.shifts.clone();
    prune_units(&mut matrices, &mut shifts);
    trim_trailing(&mut matrices, &mut shifts);
    let out = ResolutionData { ring: Arc::clone(&r.ring), matrices, shifts, minimal: true };
    debug_assert!(out.is_complex());
    out
}

fn find_unit(matrices: &[Matrix]) -> Option<(usize, usize, usize)> {
    for (k, m) in matrices.iter().enumerate() {
        for (r, row) in m.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if !entry.is_zero() && entry.is_constant() {
                    return Some((k, r, c));
                }
            }
        }
    }
    None
}

fn prune_units(matrices: &mut Vec<Matrix>, shifts: &mut [Vec<Bidegree>]) {
    while let Some((k, r, c)) = find_unit(matrices) {
        let u = matrices[k][r][c].clone();
        let u_inv = Polynomial::constant(
            u.ring(),
            u.terms()[0].coeff.inverse().expect("constant entry is a unit"),
        );
        debug_assert_eq!(shifts[k][r], shifts[k + 1][c], "unit entry joins equal shifts");

        // pivot inside d_{k+1}
        let m = &mut matrices[k];
        let rows = m.len();
        let cols = m[0].len();
        let mut new_m: Matrix = Vec::with_capacity(rows - 1);
        for a in 0..rows {
            if a == r {
                continue;
            }
            let mut row = Vec::with_capacity(cols - 1);
            for b in 0..cols {
                if b == c {
                    continue;
                }
                let adj = m[a][b].sub(&m[a][c].mul(&u_inv).mul(&m[r][b]));
                row.push(adj);
            }
            new_m.push(row);
        }
        matrices[k] = new_m;
        shifts[k].remove(r);
        shifts[k + 1].remove(c);

        // delete column r of the previous differential
        if k > 0 {
            for row in matrices[k - 1].iter_mut() {
                row.remove(r);
            }
        }
        // delete row c of the next differential
        if k + 1 < matrices.len() {
            matrices[k + 1].remove(c);
        }
    }
}

/// Drop trailing zero-rank steps.
fn trim_trailing(matrices: &mut Vec<Matrix>, shifts: &mut Vec<Vec<Bidegree>>) {
    while shifts.len() > 1 && shifts.last().map_or(false, Vec::is_empty) {
        shifts.pop();
        matrices.pop();
    }
}

/// Betti table of a minimal resolution: shift multiplicities per
/// homological index equal the bigraded Tor dimensions.
pub fn betti(r: &ResolutionData) -> Result<BettiTable> {
    if !r.minimal {
        return Err(Error::Unsupported("betti numbers need a minimal resolution".into()));
    }
    let mut entries: BTreeMap<(usize, Bidegree), usize> = BTreeMap::new();
    for (i, step) in r.shifts.iter().enumerate() {
        for &d in step {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}

/// (reg_x, reg_y) from a minimal resolution: the suprema over homological
/// index i of (max shift component at step i) - i. `None` encodes negative
/// infinity (the zero module).
pub fn reg_xy(r: &ResolutionData) -> Result<(Option<i64>, Option<i64>)> {
    if !r.minimal {
        return Err(Error::Unsupported("regularity needs a minimal resolution".into()));
    }
    let mut reg_x: Option<i64> = None;
    let mut reg_y: Option<i64> = None;
    for (i, step) in r.shifts.iter().enumerate() {
        for &d in step {
            let vx = i64::from(d.dx) - i as i64;
            let vy = i64::from(d.dy) - i as i64;
            reg_x = Some(reg_x.map_or(vx, |cur| cur.max(vx)));
            reg_y = Some(reg_y.map_or(vy, |cur| cur.max(vy)));
        }
    }
    Ok((reg_x, reg_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rees_ideal, sym_ideal};
    use crate::ring::parse::{parse_ring, poly};
    use crate::ring::FieldSpec;

    fn pres(ring_src: &str, gens: &[&str]) -> BigradedPresentation {
        let rd = parse_ring(ring_src).unwrap();
        let gens = gens.iter().map(|s| poly(s, &rd.ring)).collect();
        BigradedPresentation::custom(&rd.ring, gens)
    }

    #[test]
    fn zero_ideal_resolves_in_length_zero() {
        let p = pres("ring QQ[x1,x2];", &[]);
        let r = free_resolution(&p).unwrap();
        assert_eq!(r.length(), 0);
        assert_eq!(r.shifts()[0], vec![Bidegree::ZERO]);
        let b = betti(&r).unwrap();
        assert_eq!(b.get(0, Bidegree::ZERO), 1);
        assert_eq!(reg_xy(&r).unwrap(), (Some(0), Some(0)));
    }

    #[test]
    fn principal_bigraded_ideal_is_one_step() {
        let p = pres("ring QQ[x1,x2,y1,y2] xdeg x* ydeg y*;", &["x1*y2 - x2*y1"]);
        let r = free_resolution(&p).unwrap();
        assert_eq!(r.length(), 1);
        assert_eq!(r.shifts()[1], vec![Bidegree::new(1, 1)]);
        assert_eq!(reg_xy(&r).unwrap(), (Some(0), Some(0)));
    }

    #[test]
    fn unit_ideal_resolves_to_zero_module() {
        let p = pres("ring QQ[x1,x2];", &["1"]);
        let r = free_resolution(&p).unwrap();
        assert_eq!(r.length(), 0);
        assert!(r.shifts()[0].is_empty());
        assert_eq!(reg_xy(&r).unwrap(), (None, None));
    }

    #[test]
    fn koszul_complex_on_two_variables() {
        let p = pres("ring QQ[x1,x2];", &["x1", "x2"]);
        let r = free_resolution(&p).unwrap();
        assert!(r.is_complex());
        assert!(r.shifts_consistent());
        assert!(r.exactness_ranks_hold());
        let b = betti(&r).unwrap();
        assert_eq!(b.get(1, Bidegree::new(1, 0)), 2);
        assert_eq!(b.get(2, Bidegree::new(2, 0)), 1);
        assert_eq!(r.length(), 2);
        // classical regularity of a complete intersection of linear forms
        assert_eq!(reg_xy(&r).unwrap().0, Some(0));
        // minimalize is a fixpoint on minimal input
        let again = minimalize(&r);
        assert_eq!(again.shifts(), r.shifts());
        assert_eq!(again.matrices(), r.matrices());
    }

    #[test]
    fn padded_trivial_summand_is_removed() {
        let rd = parse_ring("ring QQ[x1,x2];").unwrap();
        let ring = rd.ring;
        let z = || Polynomial::zero(&ring);
        let d1 = vec![vec![poly("x1", &ring), poly("x2", &ring), z()]];
        let d2 = vec![
            vec![poly("x2", &ring), z()],
            vec![poly("-x1", &ring), z()],
            vec![z(), Polynomial::one(&ring)],
        ];
        let padded = ResolutionData {
            ring: Arc::clone(&ring),
            matrices: vec![d1, d2],
            shifts: vec![
                vec![Bidegree::ZERO],
                vec![Bidegree::new(1, 0), Bidegree::new(1, 0), Bidegree::new(3, 0)],
                vec![Bidegree::new(2, 0), Bidegree::new(3, 0)],
            ],
            minimal: false,
        };
        assert!(padded.is_complex());
        let min = minimalize(&padded);
        let b = betti(&min).unwrap();
        assert_eq!(b.get(1, Bidegree::new(1, 0)), 2);
        assert_eq!(b.get(1, Bidegree::new(3, 0)), 0);
        assert_eq!(b.get(2, Bidegree::new(2, 0)), 1);
        assert_eq!(b.total(1), 2);
        assert_eq!(b.total(2), 1);
    }

    #[test]
    fn path_ideal_of_c5_betti_shape() {
        let p = pres(
            "ring QQ[x1..x5];",
            &["x1*x2*x3", "x2*x3*x4", "x3*x4*x5", "x4*x5*x1", "x5*x1*x2"],
        );
        let r = free_resolution(&p).unwrap();
        assert!(r.is_complex());
        assert!(r.shifts_consistent());
        assert!(r.exactness_ranks_hold());
        let b = betti(&r).unwrap();
        assert_eq!(b.get(1, Bidegree::new(3, 0)), 5);
        assert_eq!(b.get(2, Bidegree::new(4, 0)), 5);
        assert_eq!(b.get(3, Bidegree::new(5, 0)), 1);
        assert_eq!(b.total(1), 5);
        assert_eq!(b.total(2), 5);
        assert_eq!(b.total(3), 1);
        assert_eq!(r.length(), 3);
        assert_eq!(reg_xy(&r).unwrap().0, Some(2));
    }

    #[test]
    fn betti_invariant_under_generator_permutation() {
        let a = pres("ring QQ[x1,x2,x3];", &["x1*x2", "x2*x3", "x1*x3"]);
        let b = pres("ring QQ[x1,x2,x3];", &["x2*x3", "x1*x3", "x1*x2"]);
        let ra = free_resolution(&a).unwrap();
        let rb = free_resolution(&b).unwrap();
        assert_eq!(betti(&ra).unwrap(), betti(&rb).unwrap());
    }

    #[test]
    fn rees_of_regular_pair_has_zero_y_regularity() {
        let rd = parse_ring("ring QQ[x1,x2];").unwrap();
        let gens = vec![poly("x1", &rd.ring), poly("x2", &rd.ring)];
        let rees = rees_ideal(&gens).unwrap();
        let r = free_resolution(&rees).unwrap();
        assert_eq!(reg_xy(&r).unwrap().1, Some(0));
        let sym = sym_ideal(&gens).unwrap();
        let rs = free_resolution(&sym).unwrap();
        assert_eq!(reg_xy(&rs).unwrap().1, Some(0));
    }

    #[test]
    fn display_grid_renders() {
        let p = pres("ring QQ[x1,x2];", &["x1", "x2"]);
        let r = free_resolution(&p).unwrap();
        let grid = betti(&r).unwrap().to_string();
        assert!(grid.contains("(1,0)"));
        assert!(grid.contains("(2,0)"));
        let _ = FieldSpec::Rational;
    }
}
