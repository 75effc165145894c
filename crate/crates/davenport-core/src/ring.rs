//! The ring `R = Z_{n1} ⊕ … ⊕ Z_{nr}`, its multiplicative semigroup,
//! and the unit group.
//!
//! Residues are stored zero-based in `[0, n_i)`.  The classical tuple
//! form `θ` uses representatives in `[1, n_i]` with `n_i` standing for
//! the residue 0; conversion is a display concern only, and the gcd
//! convention `gcd(0, n_i) = n_i` keeps all divisibility arithmetic
//! identical between the two representations.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, crt_solve, euler_phi, factorize, gcd, mul_order, pow_mod};
use crate::error::Error;
use crate::group::AbelianGroupSpec;
use crate::monoid::FiniteMonoid;
use crate::Limits;

/// One member of `S_R`: an `r`-tuple of residues, entry `i` reduced
/// modulo `n_i`.
///
/// The derived lexicographic order coincides with the mixed-radix index
/// order and is the canonical element order throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    residues: Vec<u64>,
}

impl Element {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn rank(&self) -> usize {
        self.residues.len()
    }
}

/// Componentwise `gcd(residue_i, n_i)`, with `gcd(0, n_i) = n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdProfile {
    entries: Vec<u64>,
}

impl GcdProfile {
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Componentwise divisibility: does every entry of `self` divide the
    /// matching entry of `other`?
    pub fn divides(&self, other: &GcdProfile) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(&d, &m)| m % d == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(|&d| d == 1)
    }
}

/// The three even-structure counts of a ring that bound the gap
/// `D(S_R) - D(U(S_R))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingInvariants {
    /// Coordinates with `2 ∥ n_i` (exactly divisible).
    pub p2: u32,
    /// Coordinates with `2 | n_i`.
    pub delta: u32,
    /// Coordinates with `pot_2(n_i) ∈ [1, 3]`.
    pub conj_bound: u32,
}

/// The moduli `(n_1, …, n_r)` of the ring, all `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    moduli: Vec<u64>,
    order: u128,
}

impl RingSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self, Error> {
        if moduli.is_empty() {
            return Err(Error::invalid("ring needs at least one modulus".to_string()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::invalid(alloc::format!(
                "modulus {bad} is below 2"
            )));
        }
        let mut order: u128 = 1;
        for &n in &moduli {
            order = order.checked_mul(u128::from(n)).ok_or_else(|| {
                Error::invalid("semigroup order overflows u128".to_string())
            })?;
        }
        Ok(RingSpec { moduli, order })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `|S_R| = ∏ n_i`.
    pub fn semigroup_order(&self) -> u128 {
        self.order
    }

    /// Multiplicative identity: the all-ones tuple.
    pub fn one(&self) -> Element {
        Element {
            residues: vec![1; self.rank()],
        }
    }

    /// The absorbing all-zeros tuple.
    pub fn zero(&self) -> Element {
        Element {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each entry modulo `n_i`.
    pub fn element(&self, residues: Vec<u64>) -> Result<Element, Error> {
        if residues.len() != self.rank() {
            return Err(Error::invalid(alloc::format!(
                "element has {} coordinates, ring has {}",
                residues.len(),
                self.rank()
            )));
        }
        let residues = residues
            .into_iter()
            .zip(&self.moduli)
            .map(|(a, &n)| a % n)
            .collect();
        Ok(Element { residues })
    }

    pub(crate) fn assert_member(&self, a: &Element) {
        assert_eq!(
            a.rank(),
            self.rank(),
            "element rank does not match ring rank"
        );
        debug_assert!(a.residues.iter().zip(&self.moduli).all(|(&a, &n)| a < n));
    }

    /// Componentwise product reduced modulo the moduli.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, Error> {
        if a.rank() != self.rank() || b.rank() != self.rank() {
            return Err(Error::invalid(alloc::format!(
                "rank mismatch: ring {}, operands {} and {}",
                self.rank(),
                a.rank(),
                b.rank()
            )));
        }
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| ((u128::from(x) * u128::from(y)) % u128::from(n)) as u64)
            .collect();
        Ok(Element { residues })
    }

    pub fn gcd_profile(&self, a: &Element) -> GcdProfile {
        self.assert_member(a);
        let entries = a
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| if x == 0 { n } else { gcd(x, n) })
            .collect();
        GcdProfile { entries }
    }

    /// A tuple is invertible iff every coordinate is coprime to its
    /// modulus, i.e. the gcd profile is all-ones.
    pub fn is_unit(&self, a: &Element) -> bool {
        self.gcd_profile(a).is_all_ones()
    }

    /// The classical one-based tuple form: residue 0 is displayed as `n_i`.
    pub fn theta(&self, a: &Element) -> Vec<u64> {
        self.assert_member(a);
        a.residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| if x == 0 { n } else { x })
            .collect()
    }

    /// Mixed-radix index of the residue tuple (first coordinate most
    /// significant, so index order is lexicographic order).
    pub fn index_of(&self, a: &Element) -> usize {
        self.assert_member(a);
        let mut idx: u128 = 0;
        for (&x, &n) in a.residues.iter().zip(&self.moduli) {
            idx = idx * u128::from(n) + u128::from(x);
        }
        idx as usize
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let mut residues = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.moduli[i] as usize;
            residues[i] = (idx % n) as u64;
            idx /= n;
        }
        Element { residues }
    }

    fn check_enumeration(&self, limits: &Limits) -> Result<(), Error> {
        if self.order > u128::from(limits.max_enumeration) {
            return Err(Error::limit(alloc::format!(
                "semigroup order {} exceeds enumeration cap {}",
                self.order,
                limits.max_enumeration
            )));
        }
        Ok(())
    }

    /// All elements in canonical order. Guarded by the enumeration cap.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Element>, Error> {
        self.check_enumeration(limits)?;
        Ok((0..self.order as usize).map(|i| self.element_at(i)).collect())
    }

    /// All units in canonical order; the count is `∏ φ(n_i)`.
    pub fn units(&self, limits: &Limits) -> Result<Vec<Element>, Error> {
        self.check_enumeration(limits)?;
        Ok(self.unit_indices(limits)?.into_iter().map(|i| self.element_at(i)).collect())
    }

    pub(crate) fn unit_indices(&self, limits: &Limits) -> Result<Vec<usize>, Error> {
        self.check_enumeration(limits)?;
        Ok((0..self.order as usize)
            .filter(|&i| self.is_unit(&self.element_at(i)))
            .collect())
    }

    pub fn unit_count(&self) -> u128 {
        self.moduli.iter().map(|&n| u128::from(euler_phi(n))).product()
    }

    /// The counts `P_2`, `δ` and the conjectured gap bound.
    pub fn invariants(&self) -> RingInvariants {
        let mut p2 = 0;
        let mut delta = 0;
        let mut conj_bound = 0;
        for &n in &self.moduli {
            let v = arith::pot_unchecked(2, n);
            if v == 1 {
                p2 += 1;
            }
            if v >= 1 {
                delta += 1;
            }
            if (1..=3).contains(&v) {
                conj_bound += 1;
            }
        }
        RingInvariants { p2, delta, conj_bound }
    }

    /// Cyclic decomposition of `U(S_R)` with explicit generators.
    ///
    /// Each `(Z/n_i)*` is split along the prime powers of `n_i`: odd
    /// prime-power parts are cyclic, and the `2^k` part is trivial for
    /// `k = 1`, `C_2` for `k = 2`, and `C_2 × C_{2^{k-2}}` (generated by
    /// `-1` and `3`) for `k >= 3`.  The emitted generator tuple is
    /// certified against the enumerated unit group before returning.
    pub fn unit_group_structure(&self, limits: &Limits) -> Result<UnitGroupStructure, Error> {
        let unit_count = self.unit_count();
        if unit_count > u128::from(limits.max_enumeration) {
            return Err(Error::limit(alloc::format!(
                "unit group order {unit_count} exceeds enumeration cap {}",
                limits.max_enumeration
            )));
        }
        let mut factors: Vec<u64> = Vec::new();
        let mut generators: Vec<Element> = Vec::new();
        for (i, &n) in self.moduli.iter().enumerate() {
            for (p, k) in factorize(n) {
                let q = p.pow(k);
                let cofactor = n / q;
                let mut push = |gen_mod_q: u64, order: u64| -> Result<(), Error> {
                    let lifted = crt_solve(&[(q, gen_mod_q), (cofactor, 1 % cofactor)])?;
                    let mut residues = vec![1u64; self.rank()];
                    residues[i] = lifted;
                    factors.push(order);
                    generators.push(Element { residues });
                    Ok(())
                };
                if p == 2 {
                    match k {
                        1 => {}
                        2 => push(3, 2)?,
                        _ => {
                            push(q - 1, 2)?;
                            push(3, 1 << (k - 2))?;
                        }
                    }
                } else {
                    push(primitive_root(p, k), euler_phi(q))?;
                }
            }
        }
        let structure = UnitGroupStructure {
            group: AbelianGroupSpec::new(factors)?,
            generators,
        };
        structure.certify(self, limits)?;
        Ok(structure)
    }
}

impl FiniteMonoid for RingSpec {
    fn order(&self) -> usize {
        self.order as usize
    }

    fn identity(&self) -> usize {
        self.index_of(&self.one())
    }

    fn combine(&self, a: usize, b: usize) -> usize {
        let mut idx: u128 = 0;
        let mut x = a;
        let mut y = b;
        // Walk coordinates from least significant, then re-accumulate.
        let mut digits = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.moduli[i] as usize;
            digits[i] = (((x % n) as u128 * (y % n) as u128) % n as u128) as u64;
            x /= n;
            y /= n;
        }
        for (d, &n) in digits.iter().zip(&self.moduli) {
            idx = idx * u128::from(n) + u128::from(*d);
        }
        idx as usize
    }
}

/// Smallest primitive root modulo the odd prime power `p^k`.
fn primitive_root(p: u64, k: u32) -> u64 {
    let q = p.pow(k);
    let phi = euler_phi(q);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(f, _)| f).collect();
    (2..q)
        .find(|&g| {
            gcd(g, q) == 1 && prime_factors.iter().all(|&f| pow_mod(g, phi / f, q) != 1)
        })
        .expect("every odd prime power has a primitive root")
}

/// Cyclic factor orders of `U(S_R)` together with a generator per factor.
///
/// The exponent map `(e_1, …, e_k) ↦ ∏ g_j^{e_j}` is the certified
/// isomorphism from the abstract group onto the unit group.
#[derive(Clone, Debug)]
pub struct UnitGroupStructure {
    pub group: AbelianGroupSpec,
    pub generators: Vec<Element>,
}

impl UnitGroupStructure {
    /// Image of an exponent tuple under the isomorphism.
    pub fn map(&self, ring: &RingSpec, exponents: &[u64]) -> Result<Element, Error> {
        if exponents.len() != self.generators.len() {
            return Err(Error::invalid("exponent tuple has wrong arity".to_string()));
        }
        let mut acc = ring.one();
        for (gen, (&e, &d)) in self
            .generators
            .iter()
            .zip(exponents.iter().zip(self.group.factors()))
        {
            let mut power = gen.clone();
            let mut e = e % d;
            // Square-and-multiply over ring elements.
            while e > 0 {
                if e & 1 == 1 {
                    acc = ring.mul(&acc, &power)?;
                }
                power = ring.mul(&power, &power)?;
                e >>= 1;
            }
        }
        Ok(acc)
    }

    /// Checks that the exponent map is an isomorphism onto the unit group:
    /// each generator has exactly its factor's order, the image is all of
    /// `U(S_R)` without repetition, and (for small unit groups) the map is
    /// verified to be a homomorphism pair by pair.
    fn certify(&self, ring: &RingSpec, limits: &Limits) -> Result<(), Error> {
        for (gen, &d) in self.generators.iter().zip(self.group.factors()) {
            // Order of the generator coordinate equals the factor order.
            let coord = gen
                .residues
                .iter()
                .zip(ring.moduli())
                .find(|&(&g, _)| g != 1);
            let order = match coord {
                Some((&g, &n)) => mul_order(g, n),
                None => 1,
            };
            if order != d {
                return Err(Error::invalid(alloc::format!(
                    "generator order {order} does not match factor {d}"
                )));
            }
        }
        let unit_count = ring.unit_count();
        if self.group.order() != unit_count {
            return Err(Error::invalid(alloc::format!(
                "factor product {} does not match unit count {unit_count}",
                self.group.order()
            )));
        }
        // Bijectivity: the image of all exponent tuples is |U| distinct units.
        let mut image: Vec<usize> = Vec::with_capacity(unit_count as usize);
        for idx in 0..self.group.order() as usize {
            let tuple = self.group.element_at(idx);
            let e = self.map(ring, &tuple)?;
            if !ring.is_unit(&e) {
                return Err(Error::invalid("image leaves the unit group".to_string()));
            }
            image.push(ring.index_of(&e));
        }
        image.sort_unstable();
        image.dedup();
        if image.len() as u128 != unit_count {
            return Err(Error::invalid("exponent map is not injective".to_string()));
        }
        // Pairwise homomorphism check on small unit groups.
        if unit_count <= u128::from(limits.pairwise_check) {
            let n = self.group.order() as usize;
            for x in 0..n {
                for y in 0..n {
                    let xs = self.group.element_at(x);
                    let ys = self.group.element_at(y);
                    let sum = self.group.element_at(self.group.combine(x, y));
                    let lhs = self.map(ring, &sum)?;
                    let rhs = ring.mul(&self.map(ring, &xs)?, &self.map(ring, &ys)?)?;
                    if lhs != rhs {
                        return Err(Error::invalid(
                            "exponent map is not a homomorphism".to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
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
    fn mul_examples() {
        let z6 = ring(&[6]);
        assert_eq!(z6.mul(&el(&z6, &[2]), &el(&z6, &[5])).unwrap(), el(&z6, &[4]));

        let z4z2 = ring(&[4, 2]);
        assert_eq!(
            z4z2.mul(&el(&z4z2, &[2, 1]), &el(&z4z2, &[2, 1])).unwrap(),
            el(&z4z2, &[0, 1])
        );

        for idx in 0..z4z2.order() {
            let a = z4z2.element_at(idx);
            assert_eq!(z4z2.mul(&a, &z4z2.one()).unwrap(), a);
        }

        assert!(z6.mul(&el(&z6, &[2]), &z4z2.one()).is_err());
    }

    #[test]
    fn gcd_profiles() {
        let z6 = ring(&[6]);
        assert_eq!(z6.gcd_profile(&el(&z6, &[4])).entries(), &[2]);
        assert_eq!(z6.gcd_profile(&el(&z6, &[0])).entries(), &[6]);
        let z8z2 = ring(&[8, 2]);
        assert_eq!(z8z2.gcd_profile(&el(&z8z2, &[4, 0])).entries(), &[4, 2]);
    }

    #[test]
    fn units_and_unit_tests() {
        let limits = Limits::default();
        let z12 = ring(&[12]);
        assert!(z12.is_unit(&el(&z12, &[5])));
        assert!(!z12.is_unit(&el(&z12, &[6])));
        assert!(z12.is_unit(&z12.one()));

        let z8 = ring(&[8]);
        let units: Vec<u64> = z8.units(&limits).unwrap().iter().map(|u| u.residues()[0]).collect();
        assert_eq!(units, alloc::vec![1, 3, 5, 7]);
        assert_eq!(ring(&[6]).units(&limits).unwrap().len(), 2);
        assert_eq!(ring(&[2]).units(&limits).unwrap().len(), 1);
    }

    #[test]
    fn unit_counts_match_phi_product() {
        let limits = Limits::default();
        for moduli in [&[2u64, 12][..], &[9], &[4, 4], &[30]] {
            let r = ring(moduli);
            assert_eq!(r.units(&limits).unwrap().len() as u128, r.unit_count());
        }
    }

    #[test]
    fn invariants_examples() {
        let inv = ring(&[6]).invariants();
        assert_eq!((inv.p2, inv.delta, inv.conj_bound), (1, 1, 1));
        let inv = ring(&[8, 4, 2]).invariants();
        assert_eq!((inv.p2, inv.delta, inv.conj_bound), (1, 3, 3));
        let inv = ring(&[9]).invariants();
        assert_eq!((inv.p2, inv.delta, inv.conj_bound), (0, 0, 0));
    }

    #[test]
    fn unit_group_factors() {
        let limits = Limits::default();
        assert_eq!(
            ring(&[8]).unit_group_structure(&limits).unwrap().group.factors(),
            &[2, 2]
        );
        assert_eq!(
            ring(&[9]).unit_group_structure(&limits).unwrap().group.factors(),
            &[6]
        );
        assert_eq!(
            ring(&[12]).unit_group_structure(&limits).unwrap().group.factors(),
            &[2, 2]
        );
    }

    #[test]
    fn unit_group_structure_is_brute_force_checked() {
        // Order multisets of the abstract group and the enumerated unit
        // group must coincide (they determine the abelian isomorphism type).
        let limits = Limits::default();
        for moduli in [&[8u64][..], &[9], &[12], &[16], &[2, 12], &[5, 5], &[24]] {
            let r = ring(moduli);
            let s = r.unit_group_structure(&limits).unwrap();
            let mut abstract_orders: Vec<u64> = (0..s.group.order() as usize)
                .map(|i| s.group.element_order(i))
                .collect();
            let mut unit_orders: Vec<u64> = r
                .units(&limits)
                .unwrap()
                .iter()
                .map(|u| {
                    let mut k = 1u64;
                    let mut acc = u.clone();
                    while acc != r.one() {
                        acc = r.mul(&acc, u).unwrap();
                        k += 1;
                    }
                    k
                })
                .collect();
            abstract_orders.sort_unstable();
            unit_orders.sort_unstable();
            assert_eq!(abstract_orders, unit_orders, "ring {moduli:?}");
        }
    }

    #[test]
    fn theta_display_form() {
        let z6z2 = ring(&[6, 2]);
        assert_eq!(z6z2.theta(&el(&z6z2, &[0, 1])), alloc::vec![6, 1]);
        assert_eq!(z6z2.theta(&el(&z6z2, &[5, 0])), alloc::vec![5, 2]);
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let r = ring(&[4, 3, 2]);
        let mut prev: Option<Element> = None;
        for idx in 0..r.order() {
            let e = r.element_at(idx);
            assert_eq!(r.index_of(&e), idx);
            if let Some(p) = prev {
                assert!(p < e);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn semigroup_axioms_exhaustive() {
        // Associativity and commutativity over every triple/pair of the
        // index space, for rings up to order 64.
        for moduli in [&[12u64][..], &[4, 4], &[6, 6], &[2, 2, 2, 2]] {
            let r = ring(moduli);
            let n = r.order();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(r.combine(a, b), r.combine(b, a));
                    for c in 0..n {
                        assert_eq!(
                            r.combine(r.combine(a, b), c),
                            r.combine(a, r.combine(b, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_profile_count_is_divisor_count_product() {
        for moduli in [&[12u64][..], &[8, 8], &[6, 6], &[36]] {
            let r = ring(moduli);
            let mut profiles: Vec<Vec<u64>> = (0..r.order())
                .map(|i| r.gcd_profile(&r.element_at(i)).entries().to_vec())
                .collect();
            profiles.sort_unstable();
            profiles.dedup();
            let expected: u64 = r.moduli().iter().map(|&n| arith::divisor_count(n)).product();
            assert_eq!(profiles.len() as u64, expected);
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(RingSpec::new(alloc::vec![]).is_err());
        assert!(RingSpec::new(alloc::vec![1]).is_err());
        assert!(RingSpec::new(alloc::vec![4, 0]).is_err());
    }
}
