//! Rings, bidegrees, monomials, orders, polynomials, and the input grammar.

pub mod field;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;

pub use field::{FieldElem, FieldSpec};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;

use serde::Serialize;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A bidegree (dx, dy). Multiplication of bihomogeneous elements adds
/// bidegrees componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub dx: u32,
    pub dy: u32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { dx: 0, dy: 0 };

    pub fn new(dx: u32, dy: u32) -> Self {
        Bidegree { dx, dy }
    }

    pub fn add(self, other: Bidegree) -> Bidegree {
        Bidegree { dx: self.dx + other.dx, dy: self.dy + other.dy }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// A polynomial ring: ordered variable names, coefficient field, and a
/// bidegree per variable. Values are immutable and shared through `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    field: FieldSpec,
    bidegrees: Vec<Bidegree>,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: FieldSpec, bidegrees: Vec<Bidegree>) -> Result<Arc<Ring>> {
        assert_eq!(vars.len(), bidegrees.len());
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Parse {
                    line: 0,
                    col: 0,
                    msg: format!("duplicate variable `{v}`"),
                });
            }
        }
        Ok(Arc::new(Ring { vars, field, bidegrees }))
    }

    /// All variables carry the default bidegree (1, 0).
    pub fn standard(vars: &[&str], field: FieldSpec) -> Arc<Ring> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let degs = vec![Bidegree::new(1, 0); names.len()];
        Ring::new(names, field, degs).expect("distinct variable names")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn bidegrees(&self) -> &[Bidegree] {
        &self.bidegrees
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Bidegree {
        let mut dx = 0u32;
        let mut dy = 0u32;
        for (e, bd) in m.exps().iter().zip(&self.bidegrees) {
            dx += u32::from(*e) * bd.dx;
            dy += u32::from(*e) * bd.dy;
        }
        Bidegree::new(dx, dy)
    }

    /// The this-ring mask of variables with bidegree of the given block.
    /// x-block = (dx > 0, dy = 0), y-block = (dx = 0, dy > 0).
    pub fn block_mask(&self, y_block: bool) -> Vec<bool> {
        self.bidegrees
            .iter()
            .map(|bd| if y_block { bd.dy > 0 && bd.dx == 0 } else { bd.dx > 0 && bd.dy == 0 })
            .collect()
    }

    /// Append fresh variables, producing a wider ring. Existing variables
    /// keep their positions, so polynomials inject by zero-padding.
    pub fn extend(self: &Arc<Ring>, extra: &[(String, Bidegree)]) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        let mut degs = self.bidegrees.clone();
        for (name, bd) in extra {
            assert!(!vars.contains(name), "extension variable collides");
            vars.push(name.clone());
            degs.push(*bd);
        }
        Arc::new(Ring { vars, field: self.field, bidegrees: degs })
    }

    /// A reserved-namespace auxiliary variable name; `#` starts a comment in
    /// the input grammar, so user input can never collide with it.
    pub fn aux_name(&self, k: usize) -> String {
        format!("#t{k}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(", "))
    }
}

/// A ring together with optional quotient relations: the base rings
/// `A = S/Q` of sequence checks. The relations live in the plain polynomial
/// ring `S`; no nesting.
#[derive(Debug, Clone)]
pub struct RingDescriptor {
    pub ring: Arc<Ring>,
    pub quotient: Vec<Polynomial>,
}

impl RingDescriptor {
    pub fn plain(ring: Arc<Ring>) -> Self {
        RingDescriptor { ring, quotient: Vec::new() }
    }

    pub fn quotient(ring: Arc<Ring>, relations: Vec<Polynomial>) -> Self {
        for r in &relations {
            assert!(Arc::ptr_eq(r.ring(), &ring) || r.ring().as_ref() == ring.as_ref());
        }
        RingDescriptor { ring, quotient: relations }
    }

    pub fn is_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }
}
