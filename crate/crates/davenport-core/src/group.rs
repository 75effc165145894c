//! Abstract finite abelian groups given by cyclic factor orders, with
//! subgroup closures, coset quotients, and invariant factors.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::factorize;
use crate::error::Error;
use crate::monoid::FiniteMonoid;

/// `C_{d_1} ⊕ … ⊕ C_{d_k}` under componentwise addition.
///
/// Every factor is `>= 2`; the empty factor list is the trivial group.
/// Elements are `k`-tuples with entry `j` in `[0, d_j)`, identified with
/// their mixed-radix index (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    factors: Vec<u64>,
    order: u128,
}

impl AbelianGroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self, Error> {
        if let Some(&bad) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::invalid(alloc::format!(
                "cyclic factor {bad} is below 2"
            )));
        }
        let mut order: u128 = 1;
        for &d in &factors {
            order = order
                .checked_mul(u128::from(d))
                .ok_or_else(|| Error::invalid("group order overflows u128".to_string()))?;
        }
        Ok(AbelianGroupSpec { factors, order })
    }

    pub fn trivial() -> Self {
        AbelianGroupSpec { factors: Vec::new(), order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u64> {
        let mut tuple = vec![0u64; self.factors.len()];
        for j in (0..self.factors.len()).rev() {
            let d = self.factors[j] as usize;
            tuple[j] = (idx % d) as u64;
            idx /= d;
        }
        tuple
    }

    pub fn index_of(&self, tuple: &[u64]) -> Result<usize, Error> {
        if tuple.len() != self.factors.len() {
            return Err(Error::invalid(alloc::format!(
                "tuple arity {} does not match {} factors",
                tuple.len(),
                self.factors.len()
            )));
        }
        let mut idx: u128 = 0;
        for (&x, &d) in tuple.iter().zip(&self.factors) {
            if x >= d {
                return Err(Error::invalid(alloc::format!(
                    "entry {x} is out of range for factor {d}"
                )));
            }
            idx = idx * u128::from(d) + u128::from(x);
        }
        Ok(idx as usize)
    }

    /// Additive order of the element with the given index.
    pub fn element_order(&self, idx: usize) -> u64 {
        let tuple = self.element_at(idx);
        tuple
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / crate::arith::gcd(x, d))
            .fold(1, num_lcm)
    }

    /// The same group presented in invariant-factor form
    /// `d_1 | d_2 | … | d_k`.
    ///
    /// Prime powers of all factors are rebucketed: the largest power of
    /// each prime goes into the last invariant factor, the second largest
    /// into the one before, and so on.
    pub fn invariant_factors(&self) -> AbelianGroupSpec {
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for &d in &self.factors {
            for (p, k) in factorize(d) {
                let q = p.pow(k);
                match by_prime.iter_mut().find(|(prime, _)| *prime == p) {
                    Some((_, powers)) => powers.push(q),
                    None => by_prime.push((p, vec![q])),
                }
            }
        }
        let mut slots = 0usize;
        for (_, powers) in &mut by_prime {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            slots = slots.max(powers.len());
        }
        let mut factors = vec![1u64; slots];
        for (_, powers) in &by_prime {
            for (slot, &q) in powers.iter().enumerate() {
                factors[slot] *= q;
            }
        }
        factors.reverse();
        AbelianGroupSpec::new(factors).expect("invariant factors are >= 2")
    }

    /// Is the factor list already a divisibility chain?
    pub fn is_invariant_chain(&self) -> bool {
        self.factors.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Sorted indices of the subgroup generated by the given tuples.
    pub fn subgroup_closure(&self, generators: &[Vec<u64>]) -> Result<Vec<usize>, Error> {
        let mut member = vec![false; self.order as usize];
        member[0] = true;
        let mut frontier = vec![0usize];
        let gens: Vec<usize> = generators
            .iter()
            .map(|g| self.index_of(g))
            .collect::<Result<_, _>>()?;
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.combine(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok((0..self.order as usize).filter(|&i| member[i]).collect())
    }

    /// Coset table of the quotient by the subgroup with the given sorted
    /// member indices.
    pub fn quotient(&self, subgroup: &[usize]) -> Result<QuotientTable, Error> {
        let n = self.order as usize;
        if subgroup.first() != Some(&0) {
            return Err(Error::invalid("subgroup must contain the identity".to_string()));
        }
        for &a in subgroup {
            for &b in subgroup {
                if subgroup.binary_search(&self.combine(a, b)).is_err() {
                    return Err(Error::invalid("member set is not closed under addition".to_string()));
                }
            }
        }
        // Canonical representative of a coset: its least member index.
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &h in subgroup {
                let y = self.combine(x, h);
                if coset_of[y] != usize::MAX {
                    return Err(Error::invalid(
                        "subgroup members do not tile the group".to_string(),
                    ));
                }
                coset_of[y] = id;
            }
        }
        Ok(QuotientTable { group: self.clone(), reps, coset_of })
    }
}

fn num_lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

impl FiniteMonoid for AbelianGroupSpec {
    fn order(&self) -> usize {
        self.order as usize
    }

    fn identity(&self) -> usize {
        0
    }

    fn combine(&self, a: usize, b: usize) -> usize {
        let mut idx: u128 = 0;
        let mut x = a;
        let mut y = b;
        let mut digits = vec![0u64; self.factors.len()];
        for j in (0..self.factors.len()).rev() {
            let d = self.factors[j] as usize;
            digits[j] = ((x % d + y % d) % d) as u64;
            x /= d;
            y /= d;
        }
        for (&t, &d) in digits.iter().zip(&self.factors) {
            idx = idx * u128::from(d) + u128::from(t);
        }
        idx as usize
    }
}

/// The quotient group `G/H` realized by coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientTable {
    group: AbelianGroupSpec,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl QuotientTable {
    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }
}

impl FiniteMonoid for QuotientTable {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> usize {
        self.coset_of[0]
    }

    fn combine(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.group.combine(self.reps[a], self.reps[b])]
    }
}
