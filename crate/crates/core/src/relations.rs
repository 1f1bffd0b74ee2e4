//! Congruences of a finite semigroup and their quotients.
//!
//! A partition p of the carrier is a congruence when a ~ b implies both
//! a·c ~ b·c and c·a ~ c·b for every c. A [`Congruence`] ties a validated
//! partition to the semigroup it is compatible with; the quotient labels
//! classes by their smallest element, ascending.
//!
//! A congruence is called a *monoid congruence* here when its quotient
//! has a (two-sided) identity element. The one-class congruence always
//! qualifies, since the trivial semigroup is a monoid.

use alloc::vec::Vec;

use crate::partition::Partition;
use crate::semigroup::Semigroup;
use crate::subset::SubsetMask;

/// A partition validated as compatible with a specific semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence<'s> {
    semigroup: &'s Semigroup,
    partition: Partition,
}

/// First triple `(a, b, c)` breaking compatibility: a ~ b but
/// a·c ≁ b·c or c·a ≁ c·b. Scans pairs (a, b) with a < b, right
/// multiplication before left. `None` means p is a congruence.
pub fn congruence_witness(s: &Semigroup, p: &Partition) -> Option<[usize; 3]> {
    debug_assert_eq!(p.order(), s.order());
    let n = s.order();
    for a in 0..n {
        for b in a + 1..n {
            if !p.same_class(a, b) {
                continue;
            }
            for c in 0..n {
                if !p.same_class(s.product(a, c), s.product(b, c))
                    || !p.same_class(s.product(c, a), s.product(c, b))
                {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

impl<'s> Congruence<'s> {
    /// Validates compatibility and wraps the partition.
    pub fn new(s: &'s Semigroup, partition: Partition) -> Result<Self, CongruenceError> {
        if partition.order() != s.order() {
            return Err(CongruenceError::OrderMismatch {
                semigroup: s.order(),
                partition: partition.order(),
            });
        }
        if let Some([a, b, c]) = congruence_witness(s, &partition) {
            return Err(CongruenceError::NotACongruence { a, b, c });
        }
        Ok(Congruence { semigroup: s, partition })
    }

    /// Wraps a partition the caller has already established to be
    /// compatible (or deliberately wants to treat as such, e.g. to probe
    /// how checks report an incompatible relation).
    pub fn new_unchecked(s: &'s Semigroup, partition: Partition) -> Self {
        assert_eq!(partition.order(), s.order(), "partition of a different carrier");
        Congruence { semigroup: s, partition }
    }

    pub fn semigroup(&self) -> &'s Semigroup {
        self.semigroup
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    /// The quotient semigroup. Class `c` of the quotient is the image of
    /// the elements mapped to `c` by the partition, so quotient ids follow
    /// the least elements of the classes, ascending.
    pub fn quotient(&self) -> Semigroup {
        let p = &self.partition;
        let k = p.num_classes();
        let reps: Vec<usize> = (0..k)
            .map(|c| (0..self.order()).find(|&x| p.class_of(x) == c).unwrap())
            .collect();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(p.class_of(self.semigroup.product(a, b)));
            }
        }
        Semigroup::from_table(k, table)
            .expect("quotient of a congruence is a semigroup")
    }

    /// The union of the given classes as a subset of the carrier.
    pub fn class_union(&self, class_ids: &[usize]) -> Result<SubsetMask, CongruenceError> {
        let mut u = SubsetMask::empty(self.order());
        for &c in class_ids {
            if c >= self.partition.num_classes() {
                return Err(CongruenceError::UnknownClass {
                    class: c,
                    num_classes: self.partition.num_classes(),
                });
            }
            u = u.union(self.partition.class_mask(c));
        }
        Ok(u)
    }

    /// True when `a` is a union of whole classes.
    pub fn is_class_union(&self, a: SubsetMask) -> bool {
        self.partition.is_class_union(a)
    }

    /// The identity class of the quotient, when the quotient is a monoid.
    /// `Some` is what makes this congruence a monoid congruence.
    pub fn monoid_identity_class(&self) -> Option<SubsetMask> {
        let q = self.quotient();
        q.identity_element().map(|e| self.partition.class_mask(e))
    }
}

/// Every congruence of `s`, by scanning all set partitions in
/// lexicographic restricted-growth order (so the one-class congruence
/// comes first and the all-singletons one last). The scan touches
/// Bell(n) partitions, so the order is capped.
pub fn enumerate_congruences(
    s: &Semigroup,
    cap: usize,
) -> Result<Vec<Congruence<'_>>, CongruenceError> {
    if s.order() > cap {
        return Err(CongruenceError::CapExceeded { order: s.order(), cap });
    }
    Ok(Partition::all(s.order())
        .filter(|p| congruence_witness(s, p).is_none())
        .map(|p| Congruence { semigroup: s, partition: p })
        .collect())
}

/// Why a partition could not be used as a congruence.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("partition of {partition} elements against a semigroup of order {semigroup}")]
    OrderMismatch { semigroup: usize, partition: usize },
    #[error("not a congruence: witness ({a}, {b}, {c})")]
    NotACongruence { a: usize, b: usize, c: usize },
    #[error("order {order} above congruence-enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("class {class} out of range (partition has {num_classes} classes)")]
    UnknownClass { class: usize, num_classes: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps;
    use alloc::string::ToString;

    fn min2() -> Semigroup {
        Semigroup::named("chain_min", 2).unwrap()
    }

    fn null2() -> Semigroup {
        Semigroup::named("null", 2).unwrap()
    }

    fn zmul3() -> Semigroup {
        Semigroup::named("zmod_mult", 3).unwrap()
    }

    fn min3() -> Semigroup {
        Semigroup::named("chain_min", 3).unwrap()
    }

    #[test]
    fn unit_classes_of_mod_3_multiplication_form_a_congruence() {
        let s = zmul3();
        let p = Partition::parse("0;1,2", 3).unwrap();
        assert_eq!(congruence_witness(&s, &p), None);
        assert!(Congruence::new(&s, p).is_ok());
    }

    #[test]
    fn splitting_the_chain_the_wrong_way_yields_the_first_witness() {
        let s = min3();
        let p = Partition::parse("0,2;1", 3).unwrap();
        assert_eq!(congruence_witness(&s, &p), Some([0, 2, 1]));
        assert_eq!(
            Congruence::new(&s, p.clone()).unwrap_err(),
            CongruenceError::NotACongruence { a: 0, b: 2, c: 1 }
        );
    }

    #[test]
    fn the_null_semigroup_has_exactly_the_trivial_congruences() {
        let s = null2();
        let all = enumerate_congruences(&s, caps::CONGRUENCE_ORDER).unwrap();
        let strings: Vec<_> = all.iter().map(|c| c.partition().to_string()).collect();
        assert_eq!(strings, ["0,1", "0;1"]);
    }

    #[test]
    fn the_three_element_chain_has_four_congruences() {
        let s = min3();
        let all = enumerate_congruences(&s, caps::CONGRUENCE_ORDER).unwrap();
        let strings: Vec<_> = all.iter().map(|c| c.partition().to_string()).collect();
        assert_eq!(strings, ["0,1,2", "0,1;2", "0;1,2", "0;1;2"]);
    }

    #[test]
    fn order_one_has_exactly_one_congruence_and_it_is_monoid() {
        let s = Semigroup::named("null", 1).unwrap();
        let all = enumerate_congruences(&s, caps::CONGRUENCE_ORDER).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(
            all[0].monoid_identity_class(),
            Some(SubsetMask::universe(1))
        );
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let s = Semigroup::named("null", 4).unwrap();
        assert!(matches!(
            enumerate_congruences(&s, 3),
            Err(CongruenceError::CapExceeded { order: 4, cap: 3 })
        ));
    }

    #[test]
    fn quotient_of_mod_3_units_is_the_two_element_chain() {
        let s = zmul3();
        let c = Congruence::new(&s, Partition::parse("0;1,2", 3).unwrap()).unwrap();
        let q = c.quotient();
        assert_eq!(q, min2());
        assert_eq!(
            c.monoid_identity_class(),
            Some(SubsetMask::from_elements(3, [1, 2]))
        );
    }

    #[test]
    fn identity_partition_classifies_by_the_semigroup_itself() {
        // The chain has an identity, so its finest congruence is monoid.
        let s = min2();
        let c = Congruence::new(&s, Partition::identity(2)).unwrap();
        assert_eq!(c.monoid_identity_class(), Some(SubsetMask::singleton(2, 1)));
        // The null semigroup has none, so only the one-class congruence is.
        let s = null2();
        let c = Congruence::new(&s, Partition::identity(2)).unwrap();
        assert_eq!(c.monoid_identity_class(), None);
        let c = Congruence::new(&s, Partition::universal(2)).unwrap();
        assert_eq!(c.monoid_identity_class(), Some(SubsetMask::universe(2)));
    }

    #[test]
    fn class_union_collects_classes_and_rejects_bad_ids() {
        let s = min3();
        let c = Congruence::new(&s, Partition::parse("0;1,2", 3).unwrap()).unwrap();
        assert_eq!(c.class_union(&[]).unwrap(), SubsetMask::empty(3));
        assert_eq!(
            c.class_union(&[1]).unwrap(),
            SubsetMask::from_elements(3, [1, 2])
        );
        assert_eq!(c.class_union(&[0, 1]).unwrap(), SubsetMask::universe(3));
        assert!(matches!(
            c.class_union(&[2]),
            Err(CongruenceError::UnknownClass { class: 2, num_classes: 2 })
        ));
        assert!(c.is_class_union(SubsetMask::from_elements(3, [1, 2])));
        assert!(!c.is_class_union(SubsetMask::singleton(3, 1)));
    }

    #[test]
    fn quotients_preserve_commutativity_across_the_chain_catalog() {
        for n in 1..=5 {
            let s = Semigroup::named("chain_min", n).unwrap();
            for c in enumerate_congruences(&s, caps::CONGRUENCE_ORDER).unwrap() {
                let q = c.quotient();
                assert!(q.is_commutative());
                assert_eq!(q.order(), c.partition().num_classes());
            }
        }
    }
}
