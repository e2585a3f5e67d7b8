//! The exponent set of the logarithmic Jacobian ideal modulo `p`, and its
//! comparison across characteristics.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{det, generates_full_lattice, Int, LatticeMatrix, LatticeVector};
use crate::semigroup::AffineSemigroup;

/// Exponents of the logarithmic Jacobian ideal mod `p`: sums of `d` distinct
/// generators whose `d x d` determinant does not vanish (mod `p` when
/// `p > 0`). `characteristic = 0` means the untwisted ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogJacobianSet {
    pub characteristic: u64,
    /// Distinct exponent vectors, sorted lexicographically.
    pub exponents: Vec<LatticeVector>,
    /// Number of d-subsets whose determinant qualified.
    pub subset_count: usize,
    /// Total number of d-subsets scanned, `C(n, d)`.
    pub subsets_scanned: usize,
}

impl LogJacobianSet {
    pub fn same_exponents(&self, other: &LogJacobianSet) -> bool {
        self.exponents == other.exponents
    }
}

pub(crate) fn is_zero_or_prime(p: u64) -> bool {
    if p == 0 {
        return true;
    }
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut f = 3;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

pub(crate) fn check_characteristic(p: u64) -> Result<(), Error> {
    if is_zero_or_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("characteristic {p} is neither 0 nor prime")))
    }
}

/// Builds the exponent set by scanning all `C(n, d)` generator subsets in
/// lexicographic order with exact determinants.
///
/// Requires the generators to span `Z^d`; otherwise every maximal minor
/// shares a common factor and the construction loses its meaning.
pub fn gamma_p(semigroup: &AffineSemigroup, p: u64) -> Result<LogJacobianSet, Error> {
    check_characteristic(p)?;
    let d = semigroup.dim();
    let gens = semigroup.generators();
    if !generates_full_lattice(gens, d) {
        return Err(Error::LatticeNotFull);
    }
    let matrix = LatticeMatrix::from_columns(gens.to_vec()).expect("nonempty generators");
    let modulus = Int::from(p);

    let mut exponents = std::collections::BTreeSet::new();
    let mut subset_count = 0;
    let mut subsets_scanned = 0;
    for subset in (0..gens.len()).combinations(d) {
        subsets_scanned += 1;
        let square = matrix.select_columns(&subset).expect("valid indices");
        let value = det(&square).expect("square by construction");
        let qualifies = if p == 0 {
            !value.is_zero()
        } else {
            !(&value % &modulus).is_zero()
        };
        if !qualifies {
            continue;
        }
        subset_count += 1;
        let mut sum = LatticeVector::zero(d);
        for &i in &subset {
            sum = &sum + &gens[i];
        }
        exponents.insert(sum);
    }
    // With Z-span Z^d the gcd of the maximal minors is 1, so some subset
    // qualifies in every characteristic.
    assert!(
        !exponents.is_empty(),
        "full-lattice generators must yield a nonempty exponent set"
    );
    Ok(LogJacobianSet {
        characteristic: p,
        exponents: exponents.into_iter().collect(),
        subset_count,
        subsets_scanned,
    })
}

/// Per-prime comparison of the exponent set against characteristic zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeComparison {
    pub characteristic: u64,
    pub equal_to_char_zero: bool,
    pub gamma: LogJacobianSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharComparison {
    pub char_zero: LogJacobianSet,
    pub primes: Vec<PrimeComparison>,
    /// True when every listed prime reproduces the characteristic-zero set.
    pub characteristic_free: bool,
}

/// Computes the exponent set in characteristic zero and modulo each listed
/// prime, reporting set equality per prime and the global verdict.
pub fn compare_characteristics(
    semigroup: &AffineSemigroup,
    primes: &[u64],
) -> Result<CharComparison, Error> {
    let char_zero = gamma_p(semigroup, 0)?;
    let mut comparisons = Vec::with_capacity(primes.len());
    for &p in primes {
        if p == 0 {
            return Err(Error::InvalidParameter("prime list must not contain 0".into()));
        }
        let gamma = gamma_p(semigroup, p)?;
        // A determinant nonzero mod p is nonzero over Z.
        assert!(
            gamma.exponents.iter().all(|e| char_zero.exponents.binary_search(e).is_ok()),
            "exponent set mod {p} must be contained in the characteristic-zero set"
        );
        let equal = gamma.same_exponents(&char_zero);
        comparisons.push(PrimeComparison { characteristic: p, equal_to_char_zero: equal, gamma });
    }
    let characteristic_free = comparisons.iter().all(|c| c.equal_to_char_zero);
    Ok(CharComparison { char_zero, primes: comparisons, characteristic_free })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(entries)
    }

    fn semigroup(dim: usize, gens: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(dim, gens.iter().map(|g| v(g)).collect(), None).unwrap()
    }

    fn cusp() -> AffineSemigroup {
        semigroup(1, &[&[2], &[3]])
    }

    #[test]
    fn cusp_exponents_by_characteristic() {
        assert_eq!(gamma_p(&cusp(), 2).unwrap().exponents, vec![v(&[3])]);
        assert_eq!(gamma_p(&cusp(), 3).unwrap().exponents, vec![v(&[2])]);
        for p in [0, 5, 7] {
            assert_eq!(gamma_p(&cusp(), p).unwrap().exponents, vec![v(&[2]), v(&[3])]);
        }
    }

    #[test]
    fn m22_exponent_set() {
        let s = semigroup(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        let gamma = gamma_p(&s, 0).unwrap();
        assert_eq!(
            gamma.exponents,
            vec![v(&[-1, 2, 2]), v(&[0, 1, 2]), v(&[0, 2, 1]), v(&[1, 1, 1])]
        );
        assert_eq!(gamma.subsets_scanned, 4);
        assert_eq!(gamma.subset_count, 4);
    }

    #[test]
    fn standard_basis_single_exponent() {
        let s = semigroup(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for p in [0, 2, 3, 5] {
            let gamma = gamma_p(&s, p).unwrap();
            assert_eq!(gamma.exponents, vec![v(&[1, 1, 1])]);
        }
    }

    #[test]
    fn rejects_rank_deficient_generators() {
        let s = semigroup(1, &[&[2]]);
        assert_eq!(gamma_p(&s, 0), Err(Error::LatticeNotFull));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(matches!(gamma_p(&cusp(), 4), Err(Error::InvalidParameter(_))));
        assert!(matches!(gamma_p(&cusp(), 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cusp_is_not_characteristic_free() {
        let report = compare_characteristics(&cusp(), &[2, 3]).unwrap();
        assert!(!report.characteristic_free);
        assert!(!report.primes[0].equal_to_char_zero);
        assert!(!report.primes[1].equal_to_char_zero);
    }

    #[test]
    fn m22_is_characteristic_free() {
        let s = semigroup(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        let report = compare_characteristics(&s, &[2, 3, 5, 7]).unwrap();
        assert!(report.characteristic_free);
    }

    #[test]
    fn primality_check() {
        assert!(is_zero_or_prime(0));
        assert!(is_zero_or_prime(2));
        assert!(is_zero_or_prime(13));
        assert!(!is_zero_or_prime(1));
        assert!(!is_zero_or_prime(9));
        assert!(!is_zero_or_prime(91));
    }
}
