//! Exchange matrices, skew-symmetrizers, quivers and matrix mutation.
//!
//! Directions are 0-based here. Error values report them 1-based.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{vector, IntMatrix};

/// A square integer matrix together with a positive skew-symmetrizer `d`,
/// so that `d[i] * b[i][j] == -d[j] * b[j][i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExchangeMatrix {
    b: IntMatrix,
    d: Vec<BigInt>,
}

impl ExchangeMatrix {
    /// Validates `b` and attaches its componentwise-minimal skew-symmetrizer.
    pub fn validate(b: IntMatrix) -> Result<Self> {
        let d = minimal_symmetrizer(&b)?;
        Ok(Self { b, d })
    }

    /// Validates `b` against a caller-supplied skew-symmetrizer.
    pub fn with_symmetrizer(b: IntMatrix, d: Vec<BigInt>) -> Result<Self> {
        check_square(&b)?;
        if d.len() != b.rows() {
            return Err(Error::DimensionMismatch {
                expected: b.rows(),
                found: d.len(),
            });
        }
        if let Some(i) = d.iter().position(|x| !x.is_positive()) {
            return Err(Error::NotSkewSymmetrizable(format!(
                "d[{}] = {} is not positive",
                i + 1,
                d[i]
            )));
        }
        let n = b.rows();
        for i in 0..n {
            for j in 0..n {
                if &d[i] * b.get(i, j) != -(&d[j] * b.get(j, i)) {
                    return Err(Error::NotSkewSymmetrizable(format!(
                        "d[{i1}]*b[{i1}][{j1}] != -d[{j1}]*b[{j1}][{i1}]",
                        i1 = i + 1,
                        j1 = j + 1
                    )));
                }
            }
        }
        Ok(Self { b, d })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::validate(IntMatrix::from_rows(rows))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.b.get(i, j)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.d.iter().all(One::is_one)
    }

    pub fn check_direction(&self, k: usize) -> Result<()> {
        if k >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Mutation in direction `k` (0-based). The symmetrizer is unchanged.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_direction(k)?;
        Ok(Self {
            b: mutate_matrix(&self.b, k),
            d: self.d.clone(),
        })
    }

    /// The ensemble map `beta -> B * beta`.
    pub fn p_star(&self, beta: &[BigInt]) -> Result<Vec<BigInt>> {
        self.b.mul_vec(beta)
    }

    /// Saturated integer basis of `ker B`, in Hermite normal form.
    pub fn kernel_of_p_star(&self) -> Vec<Vec<BigInt>> {
        self.b.kernel_basis()
    }

    pub fn quiver(&self) -> Result<Quiver> {
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let n = self.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let b = self.b.get(i, j);
                if b.is_positive() {
                    arrows.push(Arrow {
                        source: i,
                        target: j,
                        multiplicity: b.to_u64().unwrap_or(u64::MAX),
                    });
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// True if some pair of directions has `|b_ij * b_ji| >= 4`. A pattern
    /// containing such a seed is of infinite type.
    pub fn has_infinite_pair(&self) -> bool {
        let n = self.n();
        let four = BigInt::from(4);
        (0..n).any(|i| (i + 1..n).any(|j| (self.b.get(i, j) * self.b.get(j, i)).abs() >= four))
    }
}

fn check_square(b: &IntMatrix) -> Result<()> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    Ok(())
}

/// Solves `d[i] * b[i][j] = -d[j] * b[j][i]` by propagation along the
/// connected components of the graph with edges `b[i][j] != 0`, then scales
/// each component to the smallest positive integer solution.
fn minimal_symmetrizer(b: &IntMatrix) -> Result<Vec<BigInt>> {
    check_square(b)?;
    let n = b.rows();
    for i in 0..n {
        if !b.get(i, i).is_zero() {
            return Err(Error::NotSkewSymmetrizable(format!(
                "nonzero diagonal entry at {}",
                i + 1
            )));
        }
    }
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        let mut component = vec![root];
        d[root] = Some(BigRational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited vertex has a value");
            for j in 0..n {
                let (bij, bji) = (b.get(i, j), b.get(j, i));
                if bij.is_zero() && bji.is_zero() {
                    continue;
                }
                if bij.is_zero() || bji.is_zero() || bij.signum() == bji.signum() {
                    return Err(Error::NotSkewSymmetrizable(format!(
                        "entries ({i1},{j1}) = {bij} and ({j1},{i1}) = {bji} are not of opposite sign",
                        i1 = i + 1,
                        j1 = j + 1
                    )));
                }
                let dj = &di * BigRational::new(bij.clone(), -bji.clone());
                match &d[j] {
                    Some(existing) if *existing != dj => {
                        return Err(Error::NotSkewSymmetrizable(format!(
                            "inconsistent ratios around direction {}",
                            j + 1
                        )));
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        let lcm = component
            .iter()
            .fold(BigInt::one(), |l, &i| l.lcm(d[i].as_ref().unwrap().denom()));
        let ints: Vec<BigInt> = component
            .iter()
            .map(|&i| (d[i].as_ref().unwrap() * &lcm).to_integer())
            .collect();
        let g = vector::content(&ints);
        for (&i, x) in component.iter().zip(ints) {
            d[i] = Some(BigRational::from_integer(x / &g));
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

/// Matrix mutation in direction `k`.
pub fn mutate_matrix(b: &IntMatrix, k: usize) -> IntMatrix {
    let (rows, cols) = (b.rows(), b.cols());
    let mut out = b.clone();
    for i in 0..rows {
        for j in 0..cols {
            if i == k || j == k {
                out.set(i, j, -b.get(i, j));
                continue;
            }
            let bik = b.get(i, k);
            if k >= cols || bik.is_zero() {
                continue;
            }
            let prod = bik * b.get(k, j);
            if prod.is_positive() {
                let delta = if bik.is_positive() { prod } else { -prod };
                out.set(i, j, b.get(i, j) + delta);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: u64,
}

/// A quiver without loops or 2-cycles on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Parallel arrows are merged. Opposite arrows between the same pair
    /// cancel, as they do in the exchange matrix.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, u64)]) -> Result<Self> {
        let mut b = IntMatrix::zeros(n, n);
        for &(s, t, m) in arrows {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v + 1, n });
                }
            }
            if s == t {
                return Err(Error::NotSkewSymmetrizable(format!("loop at {}", s + 1)));
            }
            let m = BigInt::from(m);
            b.set(s, t, b.get(s, t) + &m);
            b.set(t, s, b.get(t, s) - &m);
        }
        ExchangeMatrix::validate(b)?.quiver()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        let mut b = IntMatrix::zeros(self.n, self.n);
        for a in &self.arrows {
            b.set(a.source, a.target, BigInt::from(a.multiplicity));
            b.set(a.target, a.source, -BigInt::from(a.multiplicity));
        }
        ExchangeMatrix::validate(b).expect("quiver matrices are skew-symmetric")
    }

    /// A topological order of the vertices (sources first), ties broken by
    /// smallest index, or `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}
