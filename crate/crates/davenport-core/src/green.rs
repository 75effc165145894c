//! Green's preorder and congruence on `S_R`, stabilizers of elements in
//! the unit group, and the separating-unit construction.
//!
//! On `S_R` the preorder `a ≤_H b` (a is reachable from b by one extra
//! factor) is characterized componentwise: `gcd(b_i, n_i)` divides
//! `gcd(a_i, n_i)` for every coordinate.  The forward direction is a
//! divisibility computation; the converse holds because
//! `gcd(b_i, n_i) | a_i` makes `b_i · x ≡ a_i (mod n_i)` solvable.  Both
//! this fast path and the definitional existence search are implemented
//! and cross-checked by the verification suites rather than trusting the
//! derivation.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, pot_unchecked};
use crate::error::{Error, Falsification};
use crate::ring::{Element, RingSpec};
use crate::Limits;

/// `a ≤_H b`: true iff `a = b` or `a = b·c` for some `c ∈ S_R`.
pub fn leq_h(ring: &RingSpec, a: &Element, b: &Element) -> bool {
    ring.gcd_profile(b).divides(&ring.gcd_profile(a))
}

/// `a H b`: mutual reachability, i.e. equal gcd profiles.
pub fn h_equiv(ring: &RingSpec, a: &Element, b: &Element) -> bool {
    ring.gcd_profile(a) == ring.gcd_profile(b)
}

/// `a <_H b`: strictly lower in the preorder.
pub fn strictly_below(ring: &RingSpec, a: &Element, b: &Element) -> bool {
    leq_h(ring, a, b) && !h_equiv(ring, a, b)
}

/// The subgroup `St(c) = {u ∈ U(S_R) : u·c = c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSubgroup {
    fixed: Element,
    members: Vec<Element>,
    indices: Vec<usize>,
}

impl StabilizerSubgroup {
    pub fn fixed(&self) -> &Element {
        &self.fixed
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn contains(&self, ring: &RingSpec, u: &Element) -> bool {
        self.contains_index(ring.index_of(u))
    }

    pub fn is_subset_of(&self, other: &StabilizerSubgroup) -> bool {
        self.indices.iter().all(|i| other.contains_index(*i))
    }

    pub fn is_strict_subset_of(&self, other: &StabilizerSubgroup) -> bool {
        self.len() < other.len() && self.is_subset_of(other)
    }
}

/// Exact stabilizer of `c`, by filtering the enumerated unit group.
pub fn stabilizer(ring: &RingSpec, c: &Element, limits: &Limits) -> Result<StabilizerSubgroup, Error> {
    ring.assert_member(c);
    let mut members = Vec::new();
    let mut indices = Vec::new();
    for u in ring.units(limits)? {
        if &ring.mul(&u, c)? == c {
            indices.push(ring.index_of(&u));
            members.push(u);
        }
    }
    debug_assert!(members.contains(&ring.one()));
    Ok(StabilizerSubgroup { fixed: c.clone(), members, indices })
}

/// A coordinate where the separating-unit hypothesis holds, together
/// with the chosen prime and its valuation in `gcd(a_t, n_t)`.
struct SeparatingSite {
    coordinate: usize,
    prime: u64,
    alpha: u32,
}

/// Finds the smallest qualifying coordinate `t` for the pair
/// `a <_H b`: either some prime `p > 2` loses valuation from
/// `gcd(a_t, n_t)` to `gcd(b_t, n_t)`, or 2 does while
/// `pot_2(gcd(a_t, n_t)) < pot_2(n_t)`.
fn separating_site(ring: &RingSpec, a: &Element, b: &Element) -> Option<SeparatingSite> {
    let profile_a = ring.gcd_profile(a);
    let profile_b = ring.gcd_profile(b);
    for (t, &n) in ring.moduli().iter().enumerate() {
        let ga = profile_a.entries()[t];
        let gb = profile_b.entries()[t];
        // Primes whose valuation drops from gcd(a_t, n_t) to gcd(b_t, n_t),
        // in ascending order.
        let mut drops: Vec<u64> = Vec::new();
        let mut qualified = false;
        for (p, _) in crate::arith::factorize(n) {
            let va = pot_unchecked(p, ga);
            let vb = pot_unchecked(p, gb);
            if vb < va {
                drops.push(p);
                if p > 2 || va < pot_unchecked(2, n) {
                    qualified = true;
                }
            }
        }
        if qualified {
            let q = *drops.last().expect("a qualified coordinate has a drop");
            let alpha = pot_unchecked(q, ga);
            return Some(SeparatingSite { coordinate: t, prime: q, alpha });
        }
    }
    None
}

/// Constructs a unit `d` with `d·a = a` and `d·b ≠ b`, certifying
/// `St(b) ⊊ St(a)` for a strictly ordered pair `a <_H b`.
///
/// At the chosen coordinate `t` the entry is `2·n_t/q^α + 1` when
/// `q > 2` and that value is coprime to `n_t`, and `n_t/q^α + 1`
/// otherwise; all other coordinates are 1.  The three guarantees
/// (unit, fixes `a`, moves `b`) are re-verified before returning.
pub fn separating_unit(ring: &RingSpec, a: &Element, b: &Element) -> Result<Element, Error> {
    ring.assert_member(a);
    ring.assert_member(b);
    if !strictly_below(ring, a, b) {
        return Err(Error::invalid("separating unit needs a <_H b strictly".to_string()));
    }
    let Some(site) = separating_site(ring, a, b) else {
        return Err(Error::invalid(
            "no coordinate satisfies the separating-unit hypothesis".to_string(),
        ));
    };
    let t = site.coordinate;
    let n = ring.moduli()[t];
    let q_alpha = site.prime.pow(site.alpha);
    let base = n / q_alpha;
    let first = (2 * base + 1) % n;
    let entry = if site.prime > 2 && gcd(first, n) == 1 {
        first
    } else {
        (base + 1) % n
    };
    let mut residues = vec![1u64; ring.rank()];
    residues[t] = entry;
    let d = ring.element(residues)?;

    let falsify = |what: &str| {
        Error::Falsified(Falsification {
            claim: "separating-unit".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!(
                "a={:?} b={:?} d={:?}: {what}",
                a.residues(),
                b.residues(),
                d.residues()
            ),
        })
    };
    if !ring.is_unit(&d) {
        return Err(falsify("d is not a unit"));
    }
    if &ring.mul(&d, a)? != a {
        return Err(falsify("d does not fix a"));
    }
    if &ring.mul(&d, b)? == b {
        return Err(falsify("d does not move b"));
    }
    Ok(d)
}

/// Does the pair `a <_H b` satisfy the hypothesis under which a
/// separating unit is constructed?
pub fn separating_hypothesis(ring: &RingSpec, a: &Element, b: &Element) -> bool {
    strictly_below(ring, a, b) && separating_site(ring, a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(moduli: &[u64]) -> RingSpec {
        RingSpec::new(moduli.to_vec()).unwrap()
    }

    fn el(r: &RingSpec, residues: &[u64]) -> Element {
        r.element(residues.to_vec()).unwrap()
    }

    #[test]
    fn preorder_examples() {
        let z6 = ring(&[6]);
        assert!(leq_h(&z6, &el(&z6, &[4]), &el(&z6, &[2])));
        let z4 = ring(&[4]);
        assert!(leq_h(&z4, &el(&z4, &[2]), &el(&z4, &[1])));
        assert!(!leq_h(&z4, &el(&z4, &[1]), &el(&z4, &[2])));
    }

    #[test]
    fn congruence_examples() {
        let z6 = ring(&[6]);
        assert!(h_equiv(&z6, &el(&z6, &[2]), &el(&z6, &[4])));
        let z4 = ring(&[4]);
        assert!(h_equiv(&z4, &el(&z4, &[1]), &el(&z4, &[3])));
        assert!(!h_equiv(&z4, &el(&z4, &[2]), &el(&z4, &[0])));
    }

    #[test]
    fn strict_order_examples() {
        let z4 = ring(&[4]);
        assert!(strictly_below(&z4, &el(&z4, &[2]), &el(&z4, &[1])));
        let z6 = ring(&[6]);
        assert!(!strictly_below(&z6, &el(&z6, &[4]), &el(&z6, &[2])));
        let z8 = ring(&[8]);
        assert!(strictly_below(&z8, &el(&z8, &[4]), &el(&z8, &[2])));
    }

    #[test]
    fn stabilizer_examples() {
        let limits = Limits::default();
        let z4 = ring(&[4]);
        let st2 = stabilizer(&z4, &el(&z4, &[2]), &limits).unwrap();
        assert_eq!(st2.members(), &[el(&z4, &[1]), el(&z4, &[3])]);
        let st1 = stabilizer(&z4, &el(&z4, &[1]), &limits).unwrap();
        assert_eq!(st1.members(), &[el(&z4, &[1])]);
        let z6 = ring(&[6]);
        let st0 = stabilizer(&z6, &el(&z6, &[0]), &limits).unwrap();
        assert_eq!(st0.members(), &[el(&z6, &[1]), el(&z6, &[5])]);
        assert!(st1.is_strict_subset_of(&st2));
    }

    #[test]
    fn separating_unit_examples() {
        let z8 = ring(&[8]);
        let d = separating_unit(&z8, &el(&z8, &[4]), &el(&z8, &[2])).unwrap();
        assert_eq!(d, el(&z8, &[3]));

        let z9 = ring(&[9]);
        let d = separating_unit(&z9, &el(&z9, &[3]), &el(&z9, &[1])).unwrap();
        assert_eq!(d, el(&z9, &[7]));

        let z12 = ring(&[12]);
        let d = separating_unit(&z12, &el(&z12, &[3]), &el(&z12, &[1])).unwrap();
        assert_eq!(d, el(&z12, &[5]));
    }

    #[test]
    fn separating_unit_rejects_unqualified_pairs() {
        // In Z_4, 0 <_H 2 but the only dropping prime is 2 with
        // pot_2(gcd(0, 4)) = pot_2(4), so the hypothesis fails.
        let z4 = ring(&[4]);
        let a = el(&z4, &[0]);
        let b = el(&z4, &[2]);
        assert!(strictly_below(&z4, &a, &b));
        assert!(!separating_hypothesis(&z4, &a, &b));
        assert!(matches!(
            separating_unit(&z4, &a, &b),
            Err(Error::InvalidInput(_))
        ));
        // Not strictly ordered.
        assert!(separating_unit(&z4, &b, &b).is_err());
    }
}
