//! Homogeneous inequality systems `A beta >= 0` and their cones.

mod simplex;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

pub use simplex::{conic_membership, Certificate};

use crate::error::Result;
use crate::numeric::matrix::{reduce_modulo_rowspace, rref};
use crate::numeric::{vector, IntMatrix};
use crate::pattern::PatternNode;
use crate::seed::ExchangeMatrix;

/// Rows `a_i = c_i^T B`; the cone is `{beta : A beta >= 0}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InequalitySystem {
    a: IntMatrix,
    history: Vec<usize>,
}

/// `A = C^T B` for a node of the pattern rooted at `b`.
pub fn build_system(node: &PatternNode, b: &ExchangeMatrix) -> InequalitySystem {
    let a = node
        .c_matrix()
        .transpose()
        .mul(b.matrix())
        .expect("node and root have the same rank");
    InequalitySystem {
        a,
        history: node.history().to_vec(),
    }
}

impl InequalitySystem {
    pub fn new(a: IntMatrix) -> Self {
        Self {
            a,
            history: Vec::new(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.a.to_rows()
    }

    /// Mutation sequence (0-based) of the node the system came from.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn ambient_dim(&self) -> usize {
        self.a.cols()
    }

    pub fn contains(&self, beta: &[BigInt]) -> Result<bool> {
        Ok(self.a.mul_vec(beta)?.iter().all(|x| !x.is_negative()))
    }

    pub fn classify(&self) -> ConeDescription {
        classify(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    /// Every row (0-based) defining this facet; the first is the representative.
    pub rows: Vec<usize>,
    /// Primitive normal, reduced modulo the span of the implicit equalities.
    pub normal: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeDescription {
    pub system: InequalitySystem,
    /// Rows that hold with equality on the whole cone.
    pub implicit: Vec<usize>,
    pub strict: Vec<usize>,
    pub facets: Vec<Facet>,
    pub dim: usize,
    /// Basis of `{beta : A beta = 0}` in Hermite normal form.
    pub lineality: Vec<Vec<BigInt>>,
    /// For each implicit row `k`, multipliers with `sum lambda_i a_i = -a_k`.
    pub implicit_certificates: Vec<(usize, Certificate)>,
    /// Reduced row echelon basis of the implicit rows, as primitive rows.
    pub equations: Vec<Vec<BigInt>>,
}

/// Opaque key; equal exactly when two descriptions define the same cone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    equations: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

/// Implicit equalities, dimension, facets and lineality space of a system.
pub fn classify(system: &InequalitySystem) -> ConeDescription {
    let rows = system.rows();
    let n = system.ambient_dim();
    let mut implicit = Vec::new();
    let mut strict = Vec::new();
    let mut certificates = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        match conic_membership(&vector::neg(row), &rows) {
            Some(cert) => {
                implicit.push(k);
                certificates.push((k, cert));
            }
            None => strict.push(k),
        }
    }
    let eq_rows: Vec<Vec<BigInt>> = implicit.iter().map(|&k| rows[k].clone()).collect();
    let eq_basis = rref(&eq_rows);
    let dim = n - eq_basis.len();

    // group strict rows that agree up to a positive scalar on the affine hull
    let mut classes: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for &j in &strict {
        let normal = vector::primitive_rational(&reduce_modulo_rowspace(&rows[j], &eq_basis));
        let entry = classes.entry(normal.clone()).or_default();
        if entry.is_empty() {
            order.push(normal);
        }
        entry.push(j);
    }
    let mut facets = Vec::new();
    for normal in order {
        let members = &classes[&normal];
        let mut others: Vec<Vec<BigInt>> = strict
            .iter()
            .filter(|j| !members.contains(j))
            .map(|&j| rows[j].clone())
            .collect();
        for r in &eq_rows {
            others.push(r.clone());
            others.push(vector::neg(r));
        }
        if conic_membership(&rows[members[0]], &others).is_none() {
            facets.push(Facet {
                rows: members.clone(),
                normal,
            });
        }
    }
    ConeDescription {
        system: system.clone(),
        implicit,
        strict,
        facets,
        dim,
        lineality: system.matrix().kernel_basis(),
        implicit_certificates: certificates,
        equations: eq_basis.iter().map(|r| vector::primitive_rational(r)).collect(),
    }
}

/// Rays and lineality generators of a cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

impl ConeDescription {
    pub fn rank_of_implicit(&self) -> usize {
        self.equations.len()
    }

    /// Representative row of each facet.
    pub fn facet_indices(&self) -> Vec<usize> {
        self.facets.iter().map(|f| f.rows[0]).collect()
    }

    pub fn contains(&self, beta: &[BigInt]) -> Result<bool> {
        self.system.contains(beta)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut facets: Vec<Vec<BigInt>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        facets.sort();
        CanonicalKey {
            equations: self.equations.clone(),
            facets,
            lineality: self.lineality.clone(),
        }
    }

    /// Primitive extreme rays of the cone modulo its lineality space, taken
    /// in the orthogonal complement of that space.
    ///
    /// Each ray spans the one-dimensional solution set of the implicit
    /// equations, the lineality-orthogonality equations and some set of
    /// tight facet inequalities.
    pub fn generators(&self) -> Generators {
        let n = self.system.ambient_dim();
        let rows = self.system.rows();
        let pointed_dim = self.dim - self.lineality.len();
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        if pointed_dim > 0 {
            let mut base: Vec<Vec<BigInt>> = self.equations.clone();
            base.extend(self.lineality.iter().cloned());
            let facet_rows: Vec<&Vec<BigInt>> =
                self.facets.iter().map(|f| &rows[f.rows[0]]).collect();
            for subset in subsets(facet_rows.len(), pointed_dim - 1) {
                let mut eqs = base.clone();
                eqs.extend(subset.iter().map(|&i| facet_rows[i].clone()));
                let m = if eqs.is_empty() {
                    IntMatrix::zeros(0, n)
                } else {
                    IntMatrix::try_from_rows(eqs).expect("equal row lengths")
                };
                let ker = m.kernel_basis();
                if ker.len() != 1 {
                    continue;
                }
                for candidate in [ker[0].clone(), vector::neg(&ker[0])] {
                    let r = vector::primitive(&candidate);
                    if self.contains(&r).unwrap_or(false) && !rays.contains(&r) {
                        rays.push(r);
                    }
                }
            }
            rays.sort();
        }
        Generators {
            rays,
            lineality: self.lineality.clone(),
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{initial_node, node_at};
    use crate::numeric::vector::from_i64;

    fn system(rows: &[[i64; 3]]) -> InequalitySystem {
        InequalitySystem::new(IntMatrix::from_rows(rows))
    }

    fn a3() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).unwrap()
    }

    #[test]
    fn build_systems() {
        let b = a3();
        let root = build_system(&initial_node(&b), &b);
        assert_eq!(root.matrix(), &IntMatrix::from_rows(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]));
        let ex = build_system(&node_at(&b, &[0, 2], false).unwrap(), &b);
        assert_eq!(ex.matrix(), &IntMatrix::from_rows(&[[0, -1, 0], [-1, 2, -1], [0, -1, 0]]));
        let k = ExchangeMatrix::from_rows(&[[0, -2], [2, 0]]).unwrap();
        let ks = build_system(&initial_node(&k), &k);
        assert_eq!(ks.matrix(), k.matrix());
    }

    #[test]
    fn containment() {
        let s = system(&[[0, -1, 0], [-1, 2, -1], [0, -1, 0]]);
        assert!(s.contains(&from_i64(&[-1, -1, -1])).unwrap());
        assert!(!s.contains(&from_i64(&[0, 1, 0])).unwrap());
        assert!(s.contains(&from_i64(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn maximal_cone_has_two_facets() {
        let d = system(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).classify();
        assert!(d.implicit.is_empty());
        assert_eq!(d.dim, 3);
        assert_eq!(d.facets.len(), 2);
        assert_eq!(d.facets[0].rows, vec![0, 2]);
        assert_eq!(d.facets[1].rows, vec![1]);
        assert_eq!(d.lineality, vec![from_i64(&[1, 0, -1])]);
    }

    #[test]
    fn two_dimensional_cone() {
        let d = system(&[[1, -1, 1], [0, -1, 0], [-1, 1, -1]]).classify();
        assert_eq!(d.implicit, vec![0, 2]);
        assert_eq!(d.rank_of_implicit(), 1);
        assert_eq!(d.dim, 2);
        assert_eq!(d.facet_indices(), vec![1]);
    }

    #[test]
    fn one_dimensional_cone() {
        let d = system(&[[0, 1, 0], [1, -1, 1], [-1, 0, -1]]).classify();
        assert_eq!(d.implicit, vec![0, 1, 2]);
        assert_eq!(d.rank_of_implicit(), 2);
        assert_eq!(d.dim, 1);
        assert!(d.facets.is_empty());
        assert_eq!(d.lineality, vec![from_i64(&[1, 0, -1])]);
        let (lambda, _) = d.implicit_certificates[0].1.integral();
        assert_eq!(lambda, from_i64(&[0, 1, 1]));
    }

    #[test]
    fn zero_system() {
        let d = InequalitySystem::new(IntMatrix::zeros(2, 2)).classify();
        assert_eq!(d.implicit, vec![0, 1]);
        assert_eq!(d.dim, 2);
        assert!(d.facets.is_empty());
        assert_eq!(d.lineality.len(), 2);
        let g = d.generators();
        assert!(g.rays.is_empty());
    }

    #[test]
    fn canonical_keys() {
        let a = system(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).classify();
        let b = system(&[[-1, 0, -1], [0, 1, 0], [0, 1, 0]]).classify();
        assert_eq!(a.canonical_key(), b.canonical_key());
        let t1 = system(&[[0, 1, 0], [1, -1, 1], [-1, 0, -1]]).classify();
        let t2 = system(&[[1, 0, 1], [0, -1, 0], [-1, 1, -1]]).classify();
        assert_eq!(t1.canonical_key(), t2.canonical_key());
        let c2 = system(&[[0, -1, 0], [-1, 2, -1], [0, -1, 0]]).classify();
        assert_ne!(a.canonical_key(), c2.canonical_key());
    }

    #[test]
    fn rays_of_a_pointed_cone() {
        let d = InequalitySystem::new(IntMatrix::from_rows(&[[1, 0], [1, 1]])).classify();
        assert_eq!(d.facets.len(), 2);
        let g = d.generators();
        assert_eq!(g.rays, vec![from_i64(&[0, 1]), from_i64(&[1, -1])]);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn rays_modulo_lineality() {
        let d = system(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).classify();
        let g = d.generators();
        // orthogonal complement of (1,0,-1) is spanned by (1,0,1) and (0,1,0)
        assert_eq!(g.rays, vec![from_i64(&[-1, 0, -1]), from_i64(&[0, 1, 0])]);
    }
}
