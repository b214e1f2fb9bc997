//! Exact phase-one simplex for conic membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Nonnegative multipliers expressing a vector as a conic combination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub multipliers: Vec<BigRational>,
}

impl Certificate {
    /// Multipliers cleared to integers: returns `(lambda, scale)` with
    /// `sum lambda_i g_i = scale * v` and `scale > 0` minimal.
    pub fn integral(&self) -> (Vec<BigInt>, BigInt) {
        let scale = self
            .multipliers
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let lambda = self
            .multipliers
            .iter()
            .map(|x| (x * &scale).to_integer())
            .collect();
        (lambda, scale)
    }
}

/// Decides whether `v` lies in the cone generated by `generators`, returning
/// a certificate if it does.
///
/// Solves `G lambda = v, lambda >= 0` with a phase-one simplex over the
/// rationals; Bland's rule rules out cycling.
pub fn conic_membership(v: &[BigInt], generators: &[Vec<BigInt>]) -> Option<Certificate> {
    let rows = v.len();
    let m = generators.len();
    debug_assert!(generators.iter().all(|g| g.len() == rows));
    if v.iter().all(Zero::is_zero) {
        return Some(Certificate {
            multipliers: vec![BigRational::zero(); m],
        });
    }
    // columns: m structural, rows artificial, then the right-hand side
    let width = m + rows + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let flip = v[i].is_negative();
            let mut row = vec![BigRational::zero(); width];
            for (j, g) in generators.iter().enumerate() {
                let x = BigRational::from_integer(g[i].clone());
                row[j] = if flip { -x } else { x };
            }
            row[m + i] = BigRational::one();
            row[rhs] = BigRational::from_integer(v[i].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j >= m && j < rhs {
                BigRational::zero()
            } else {
                -t.iter().fold(BigRational::zero(), |acc, row| acc + &row[j])
            }
        })
        .collect();

    while let Some(enter) = (0..m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }

    // cost[rhs] holds minus the objective value
    if !cost[rhs].is_zero() {
        return None;
    }
    let mut multipliers = vec![BigRational::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            multipliers[b] = t[i][rhs].clone();
        }
    }
    Some(Certificate { multipliers })
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], p: usize, q: usize) {
    let inv = t[p][q].recip();
    for x in t[p].iter_mut() {
        *x *= &inv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !cost[q].is_zero() {
        let f = cost[q].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::vector::from_i64;

    fn gens(v: &[[i64; 3]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|g| from_i64(g)).collect()
    }

    fn rat(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn generator_itself() {
        let g = gens(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let cert = conic_membership(&from_i64(&[1, 0, 0]), &g).unwrap();
        assert_eq!(cert.multipliers, rat(&[1, 0, 0]));
    }

    #[test]
    fn implicit_row_certificate() {
        let g = gens(&[[0, 1, 0], [1, -1, 1], [-1, 0, -1]]);
        let cert = conic_membership(&from_i64(&[0, -1, 0]), &g).unwrap();
        assert_eq!(cert.multipliers, rat(&[0, 1, 1]));
    }

    #[test]
    fn outside_the_orthant() {
        let g = gens(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(conic_membership(&from_i64(&[1, -1, 0]), &g).is_none());
        assert!(conic_membership(&from_i64(&[1, 0, 0]), &[]).is_none());
        assert!(conic_membership(&from_i64(&[0, 0, 0]), &[]).is_some());
    }

    #[test]
    fn rational_multipliers_are_cleared() {
        let g = vec![from_i64(&[2, 0]), from_i64(&[0, 3])];
        let cert = conic_membership(&from_i64(&[1, 1]), &g).unwrap();
        let (lambda, scale) = cert.integral();
        assert_eq!(scale, BigInt::from(6));
        assert_eq!(lambda, from_i64(&[3, 2]));
    }
}
