//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use xfan::numeric::vector::from_i64;
use xfan::{ExchangeMatrix, IntMatrix, LaurentPolynomial, Quiver};

pub fn big(v: &[i64]) -> Vec<BigInt> {
    from_i64(v)
}

pub fn a2() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap()
}

pub fn a3() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).unwrap()
}

pub fn b2() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[[0, 1], [-2, 0]]).unwrap()
}

pub fn g2() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[[0, 1], [-3, 0]]).unwrap()
}

pub fn kronecker() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[[0, -2], [2, 0]]).unwrap()
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                let pr = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves a square rational system by Cramer-free elimination; `None` if singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                let pr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
                let bc = b[c].clone();
                b[i] -= f * bc;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Conic membership by exhaustive search over linearly independent subsets
/// of generators (Caratheodory).
pub fn conic_membership_by_bases(v: &[BigInt], gens: &[Vec<BigInt>]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let n = v.len();
    let m = gens.len();
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if idx.len() > n {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| gens[i].clone()).collect();
        if rational_rank(&sub) != idx.len() {
            continue;
        }
        // least-squares-free: pick idx.len() independent coordinates
        let k = idx.len();
        let coords = independent_coordinates(&sub);
        let a: Vec<Vec<BigRational>> = coords
            .iter()
            .map(|&r| (0..k).map(|j| BigRational::from_integer(sub[j][r].clone())).collect())
            .collect();
        let b: Vec<BigRational> = coords
            .iter()
            .map(|&r| BigRational::from_integer(v[r].clone()))
            .collect();
        let Some(lambda) = solve(a, b) else { continue };
        if lambda.iter().any(|x| x.is_negative()) {
            continue;
        }
        let ok = (0..n).all(|r| {
            let s = (0..k).fold(BigRational::zero(), |acc, j| {
                acc + &lambda[j] * BigRational::from_integer(sub[j][r].clone())
            });
            s == BigRational::from_integer(v[r].clone())
        });
        if ok {
            return true;
        }
    }
    false
}

/// Coordinates (rows of the transposed generator matrix) forming a basis.
fn independent_coordinates(sub: &[Vec<BigInt>]) -> Vec<usize> {
    let n = sub[0].len();
    let mut chosen: Vec<usize> = Vec::new();
    for r in 0..n {
        let mut trial = chosen.clone();
        trial.push(r);
        let rows: Vec<Vec<BigInt>> = trial
            .iter()
            .map(|&c| sub.iter().map(|g| g[c].clone()).collect())
            .collect();
        if rational_rank(&rows) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == sub.len() {
            break;
        }
    }
    chosen
}

/// All integer points of `[-r, r]^n`.
pub fn box_points(n: usize, r: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for x in -r..=r {
                let mut q: Vec<BigInt> = p.clone();
                q.push(BigInt::from(x));
                next.push(q);
            }
        }
        out = next;
    }
    out
}

pub fn satisfies(rows: &[Vec<BigInt>], beta: &[BigInt]) -> bool {
    rows.iter().all(|r| {
        let s: BigInt = r.iter().zip(beta).map(|(a, b)| a * b).sum();
        !s.is_negative()
    })
}

/// Random skew-symmetrizable matrix `S D` with `|entries| <= 3`.
pub fn random_exchange_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s: i64 = rng.gen_range(-1..=1);
            rows[i][j] = s * d[j];
            rows[j][i] = -s * d[i];
        }
    }
    ExchangeMatrix::from_rows(&rows).unwrap()
}

/// Random acyclic quiver: arrows follow a random vertex order.
pub fn random_acyclic_quiver(rng: &mut ChaCha8Rng, n: usize) -> Quiver {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let m: u64 = rng.gen_range(0..=2);
            if m > 0 {
                arrows.push((order[a], order[b], m));
            }
        }
    }
    Quiver::from_arrows(n, &arrows).unwrap()
}

/// Orientations of Dynkin diagrams used for knitting checks.
pub fn dynkin_quivers() -> Vec<(&'static str, Quiver)> {
    let path = |n: usize, flips: &[usize]| {
        let arrows: Vec<(usize, usize, u64)> = (0..n - 1)
            .map(|i| if flips.contains(&i) { (i + 1, i, 1) } else { (i, i + 1, 1) })
            .collect();
        Quiver::from_arrows(n, &arrows).unwrap()
    };
    vec![
        ("A2", path(2, &[])),
        ("A3 linear", path(3, &[])),
        ("A3 sink", path(3, &[1])),
        ("A3 source", path(3, &[0])),
        ("A4 linear", path(4, &[])),
        ("A4 alternating", path(4, &[1])),
        ("A5 linear", path(5, &[])),
        ("A5 alternating", path(5, &[1, 3])),
        (
            "D4 subspace",
            Quiver::from_arrows(4, &[(1, 0, 1), (2, 0, 1), (3, 0, 1)]).unwrap(),
        ),
        (
            "D4 mixed",
            Quiver::from_arrows(4, &[(0, 1, 1), (2, 0, 1), (0, 3, 1)]).unwrap(),
        ),
    ]
}

/// F-polynomials by brute force: mutate the labelled seed with the
/// principal-coefficient matrix `[B; I]` and cluster variables as Laurent
/// polynomials in `x_1..x_n, y_1..y_n`, then set every `x_i = 1`.
pub fn brute_force_f(b: &ExchangeMatrix, seq: &[usize]) -> Vec<LaurentPolynomial> {
    let n = b.n();
    let vars = 2 * n;
    let mut ext: Vec<Vec<BigInt>> = b.matrix().to_rows();
    for i in 0..n {
        ext.push((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect());
    }
    let mut x: Vec<LaurentPolynomial> = (0..n).map(|i| LaurentPolynomial::var(vars, i)).collect();
    for &k in seq {
        let mut plus = LaurentPolynomial::one(vars);
        let mut minus = LaurentPolynomial::one(vars);
        for (i, row) in ext.iter().enumerate() {
            let e = &row[k];
            if e.is_zero() {
                continue;
            }
            let base = if i < n {
                x[i].clone()
            } else {
                LaurentPolynomial::var(vars, i)
            };
            let p = base.pow(i64::try_from(&e.abs()).unwrap()).unwrap();
            if e.is_positive() {
                plus = plus.mul(&p).unwrap();
            } else {
                minus = minus.mul(&p).unwrap();
            }
        }
        x[k] = plus.add(&minus).unwrap().div_exact(&x[k]).unwrap();
        ext = mutate_extended(&ext, k);
    }
    let keep: Vec<usize> = (n..vars).collect();
    x.iter().map(|p| p.specialize_to_one(&keep)).collect()
}

/// Matrix mutation of a `2n x n` matrix, written out directly.
fn mutate_extended(m: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let mut out = m.to_vec();
    for i in 0..m.len() {
        for j in 0..m[0].len() {
            if i == k || j == k {
                out[i][j] = -&m[i][j];
            } else {
                let p = &m[i][k] * &m[k][j];
                if p.is_positive() {
                    if m[i][k].is_positive() {
                        out[i][j] = &m[i][j] + p;
                    } else {
                        out[i][j] = &m[i][j] - p;
                    }
                }
            }
        }
    }
    out
}

/// Cluster variables at `x = 1` and the given positive rational `y`, using
/// only the exchange relation in rational arithmetic.
pub fn numeric_f(b: &ExchangeMatrix, seq: &[usize], y: &[BigRational]) -> Vec<BigRational> {
    let n = b.n();
    let mut ext: Vec<Vec<BigInt>> = b.matrix().to_rows();
    for i in 0..n {
        ext.push((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect());
    }
    let mut x = vec![BigRational::one(); n];
    for &k in seq {
        let mut plus = BigRational::one();
        let mut minus = BigRational::one();
        for (i, row) in ext.iter().enumerate() {
            let e = &row[k];
            if e.is_zero() {
                continue;
            }
            let base = if i < n { x[i].clone() } else { y[i - n].clone() };
            let p = num_traits::Pow::pow(&base, u32::try_from(&e.abs()).unwrap());
            if e.is_positive() {
                plus *= p;
            } else {
                minus *= p;
            }
        }
        x[k] = (plus + minus) / &x[k];
        ext = mutate_extended(&ext, k);
    }
    x
}

pub fn int_matrix(rows: &[[i64; 3]]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}
