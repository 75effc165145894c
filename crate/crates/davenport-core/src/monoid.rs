//! Indexed presentation of a finite commutative monoid.

/// A finite commutative monoid whose elements are identified with the
/// indices `0..order()`.
///
/// The sequence engine and its oracles are generic over this trait, so
/// the same search runs over the multiplicative semigroup of a ring, an
/// abstract abelian group, or a quotient given by a coset table.
pub trait FiniteMonoid {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn combine(&self, a: usize, b: usize) -> usize;
}
