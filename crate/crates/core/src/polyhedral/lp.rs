//! Exact-rational phase-I simplex. Decides feasibility of `A z = b, z >= 0`
//! and returns a witness solution. Bland's rule guarantees termination.

use num_traits::{One, Signed, Zero};

use crate::exactla::Rational;

/// Finds `z >= 0` with `A z = b`, where `a` is row-major with `m` rows of
/// equal length `n`. Returns the witness or `None` when infeasible.
pub(crate) fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, |row| row.len());
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint matrix");
    if n == 0 {
        return b.iter().all(|x| x.is_zero()).then(Vec::new);
    }

    // Tableau over columns [original | artificial], rhs kept nonnegative.
    let total = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(total);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        tab.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..total).collect();

    loop {
        // Reduced costs for the phase-I objective (sum of artificials):
        // r_j = c_j - sum_i c_basis[i] * tab[i][j], with c = 0 on original
        // columns and 1 on artificials.
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut r = if j >= n { Rational::one() } else { Rational::zero() };
            for i in 0..m {
                if basis[i] >= n {
                    r -= &tab[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break; // Bland: smallest eligible index
            }
        }
        let Some(e) = entering else { break };

        // Ratio test; ties broken by smallest basic variable index (Bland).
        let mut leaving: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][e].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][e];
            let better = match &leaving {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let (l, _) = leaving.expect("phase-I objective is bounded below");

        // Pivot on (l, e).
        let piv = tab[l][e].clone();
        for x in tab[l].iter_mut() {
            *x /= &piv;
        }
        rhs[l] /= &piv;
        for i in 0..m {
            if i == l || tab[i][e].is_zero() {
                continue;
            }
            let factor = tab[i][e].clone();
            for j in 0..total {
                let sub = &factor * &tab[l][j];
                tab[i][j] -= sub;
            }
            let sub = &factor * &rhs[l];
            rhs[i] -= sub;
        }
        basis[l] = e;
    }

    let objective: Rational = (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| rhs[i].clone())
        .sum();
    if !objective.is_zero() {
        return None;
    }

    let mut z = vec![Rational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            z[basis[i]] = rhs[i].clone();
        }
    }
    Some(z)
}
