//! Monomial orders: grevlex, lex, elimination blocks, and the y-dominant
//! order used for initial ideals of symmetric-algebra presentations.

use std::cmp::Ordering;

use crate::ring::monomial::Monomial;

/// A total, multiplicative order on monomials of a fixed ring.
///
/// `Grevlex` and `Lex` read the ring's variable sequence as
/// x1 > x2 > ... > xn. `Block` compares the tagged variables first (by
/// grevlex among themselves), so a Groebner basis under it eliminates
/// exactly those variables. `YBlockRevlex` compares the tagged y-variables
/// first by grevlex with y1 smallest, then falls back to grevlex on the
/// rest; it is the reverse-lexicographic order with y1 < y2 < ... < yn that
/// the s-sequence test is pinned to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Block { eliminated: Vec<bool>, inner: Box<MonomialOrder> },
    YBlockRevlex { y_vars: Vec<bool> },
}

impl MonomialOrder {
    pub fn elim_block(eliminated: Vec<bool>) -> Self {
        MonomialOrder::Block { eliminated, inner: Box::new(MonomialOrder::Grevlex) }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }

    pub fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a.iter().copied(), b.iter().copied()),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block { eliminated, inner } => {
                let masked = grevlex(
                    masked_iter(a, eliminated, true),
                    masked_iter(b, eliminated, true),
                );
                if masked != Ordering::Equal {
                    return masked;
                }
                let ra: Vec<u16> = masked_iter(a, eliminated, false).collect();
                let rb: Vec<u16> = masked_iter(b, eliminated, false).collect();
                inner.cmp_exps(&ra, &rb)
            }
            MonomialOrder::YBlockRevlex { y_vars } => {
                // grevlex with y1 smallest = grevlex over the reversed y-block
                let ya: Vec<u16> = masked_iter(a, y_vars, true).collect();
                let yb: Vec<u16> = masked_iter(b, y_vars, true).collect();
                let ycmp = grevlex(ya.iter().rev().copied(), yb.iter().rev().copied());
                if ycmp != Ordering::Equal {
                    return ycmp;
                }
                grevlex(masked_iter(a, y_vars, false), masked_iter(b, y_vars, false))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn masked_iter<'a>(
    exps: &'a [u16],
    mask: &'a [bool],
    keep: bool,
) -> impl DoubleEndedIterator<Item = u16> + Clone + 'a {
    exps.iter()
        .zip(mask)
        .filter(move |(_, &m)| m == keep)
        .map(|(&e, _)| e)
}

/// Graded reverse lexicographic: higher total degree wins; on equal degree
/// the monomial whose rightmost differing exponent is smaller wins.
fn grevlex(
    a: impl DoubleEndedIterator<Item = u16> + Clone,
    b: impl DoubleEndedIterator<Item = u16> + Clone,
) -> Ordering {
    let da: u32 = a.clone().map(u32::from).sum();
    let db: u32 = b.clone().map(u32::from).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.rev().zip(b.rev()) {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // degree first
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 0])), Ordering::Greater);
        // x1^2 > x1x2 > x2^2
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // classic grevlex vs lex separation: x1x3 vs x2^2
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    #[test]
    fn grevlex_lex_agree_univariate() {
        for a in 0..6u16 {
            for b in 0..6u16 {
                assert_eq!(
                    MonomialOrder::Grevlex.cmp(&m(&[a]), &m(&[b])),
                    MonomialOrder::Lex.cmp(&m(&[a]), &m(&[b]))
                );
            }
        }
    }

    #[test]
    fn block_order_eliminates() {
        // variables (x, y, t), eliminating t: any monomial with t beats any
        // without
        let o = MonomialOrder::elim_block(vec![false, false, true]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 0, 2])), Ordering::Less);
        // ties fall through to grevlex on (x, y)
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[1, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn y_block_dominates() {
        // variables (x1, x2, y1, y2): any y beats any pure-x monomial, and
        // y2 > y1
        let o = MonomialOrder::YBlockRevlex { y_vars: vec![false, false, true, true] };
        assert_eq!(o.cmp(&m(&[0, 0, 1, 0]), &m(&[4, 4, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 0, 1]), &m(&[0, 0, 1, 0])), Ordering::Greater);
        // equal y-part: grevlex on the x-part decides
        assert_eq!(o.cmp(&m(&[2, 0, 1, 0]), &m(&[1, 1, 1, 0])), Ordering::Greater);
        // y1y3 < y2^2 pattern inside a 3-variable y-block
        let o3 = MonomialOrder::YBlockRevlex { y_vars: vec![true, true, true] };
        assert_eq!(o3.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    fn arb_mono(nvars: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..5, nvars).prop_map(Monomial::new)
    }

    fn arb_order(nvars: usize) -> impl Strategy<Value = MonomialOrder> {
        let mask = proptest::collection::vec(any::<bool>(), nvars);
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            mask.clone().prop_map(MonomialOrder::elim_block),
            mask.prop_map(|y_vars| MonomialOrder::YBlockRevlex { y_vars }),
        ]
    }

    proptest! {
        // m1 <= m2 implies m1*n <= m2*n for every order tag
        #[test]
        fn multiplicative(
            ord in arb_order(6),
            a in arb_mono(6),
            b in arb_mono(6),
            n in arb_mono(6),
        ) {
            let before = ord.cmp(&a, &b);
            let after = ord.cmp(&a.mul(&n), &b.mul(&n));
            prop_assert_eq!(before, after);
        }

        // total order: antisymmetric and 1 is minimal among its multiples
        #[test]
        fn total_and_wellfounded(ord in arb_order(5), a in arb_mono(5), b in arb_mono(5)) {
            let ab = ord.cmp(&a, &b);
            let ba = ord.cmp(&b, &a);
            prop_assert_eq!(ab, ba.reverse());
            if ab == Ordering::Equal {
                prop_assert_eq!(&a, &b);
            }
            let one = Monomial::one(5);
            prop_assert_ne!(ord.cmp(&a.mul(&b), &a), Ordering::Less);
            if !b.is_one() {
                prop_assert_eq!(ord.cmp(&one, &b), Ordering::Less);
            }
        }
    }
}
