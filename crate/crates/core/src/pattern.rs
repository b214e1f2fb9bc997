//! The mutation tree rooted at a seed, carrying c-, g-matrices and
//! F-polynomials at each vertex.
//!
//! C is the c-matrix of the pattern whose initial exchange matrix is `-B^T`;
//! since mutation commutes with `B -> -B^T`, it is tracked in the same pass as
//! the g-matrix and F-polynomials of the pattern at `B`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{vector, IntMatrix, LaurentPolynomial};
use crate::seed::ExchangeMatrix;
use crate::xfan::small_exponent;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternNode {
    b: ExchangeMatrix,
    c: IntMatrix,
    g: IntMatrix,
    f: Option<Vec<LaurentPolynomial>>,
    history: Vec<usize>,
}

pub fn initial_node(b: &ExchangeMatrix) -> PatternNode {
    PatternNode::initial(b, true)
}

pub fn mutate_node(node: &PatternNode, k: usize) -> Result<PatternNode> {
    node.mutate(k)
}

impl PatternNode {
    /// The root: `C = G = I`, every F-polynomial equal to 1. With
    /// `track_f = false` F-polynomials are skipped at this node and all
    /// its descendants.
    pub fn initial(b: &ExchangeMatrix, track_f: bool) -> Self {
        let n = b.n();
        Self {
            b: b.clone(),
            c: IntMatrix::identity(n),
            g: IntMatrix::identity(n),
            f: track_f.then(|| vec![LaurentPolynomial::one(n); n]),
            history: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn exchange_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn c_matrix(&self) -> &IntMatrix {
        &self.c
    }

    pub fn g_matrix(&self) -> &IntMatrix {
        &self.g
    }

    pub fn f_polynomials(&self) -> Option<&[LaurentPolynomial]> {
        self.f.as_deref()
    }

    /// Reduced mutation sequence (0-based) leading from the root here.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn c_vectors(&self) -> Vec<Vec<BigInt>> {
        self.c.columns()
    }

    pub fn g_vectors(&self) -> Vec<Vec<BigInt>> {
        self.g.columns()
    }

    /// The c-matrix of the pattern at `B` itself: `D^-1 C D`.
    pub fn c_matrix_of_b_pattern(&self) -> IntMatrix {
        let d = self.b.symmetrizer();
        let n = self.n();
        let mut out = self.c.clone();
        for j in 0..n {
            for k in 0..n {
                let v = self.c.get(j, k) * &d[k];
                debug_assert!((&v % &d[j]).is_zero());
                out.set(j, k, v / &d[j]);
            }
        }
        out
    }

    /// Sign (+1 or -1) of c-vector `k`.
    pub fn c_sign(&self, k: usize) -> Result<i8> {
        match vector::sign(&self.c.column(k)) {
            Some(s) if s != 0 => Ok(s),
            _ => Err(Error::SignCoherenceViolation {
                column: k + 1,
                history: one_based(&self.history),
            }),
        }
    }

    /// The deduplication key: `(B, C)` verbatim.
    pub fn key(&self) -> (IntMatrix, IntMatrix) {
        (self.b.matrix().clone(), self.c.clone())
    }

    /// Key identifying the seed up to relabelling of its directions: columns
    /// of C sorted, with B permuted to match.
    pub fn unlabelled_key(&self) -> (Vec<Vec<BigInt>>, IntMatrix) {
        let cols = self.c.columns();
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by(|&x, &y| cols[x].cmp(&cols[y]));
        let n = self.n();
        let mut b = IntMatrix::zeros(n, n);
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                b.set(i, j, self.b.get(pi, pj).clone());
            }
        }
        (perm.iter().map(|&p| cols[p].clone()).collect(), b)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.b.check_direction(k)?;
        let n = self.n();
        let eps = self.c_sign(k)?;
        let b = self.b.matrix();

        let mut c = self.c.clone();
        for i in 0..n {
            let cik = self.c.get(i, k);
            for j in 0..n {
                if j == k {
                    c.set(i, j, -cik);
                    continue;
                }
                // entry (k, j) of -B^T is -b[j][k]
                let prod = cik * -b.get(j, k);
                if prod.is_positive() {
                    let delta = if cik.is_positive() { prod } else { -prod };
                    c.set(i, j, self.c.get(i, j) + delta);
                }
            }
        }

        // g'_k = -g_k + sum_i [-eps * b_ik]_+ g_i
        let mut g = self.g.clone();
        for r in 0..n {
            let mut v = -self.g.get(r, k);
            for i in 0..n {
                let coeff = -BigInt::from(eps) * b.get(i, k);
                if coeff.is_positive() {
                    v += coeff * self.g.get(r, i);
                }
            }
            g.set(r, k, v);
        }

        let f = match &self.f {
            Some(f) => Some(self.mutate_f(f, k)?),
            None => None,
        };

        let mut history = self.history.clone();
        if history.last() == Some(&k) {
            history.pop();
        } else {
            history.push(k);
        }
        let node = Self {
            b: self.b.mutate(k)?,
            c,
            g,
            f,
            history,
        };
        node.check_invariants()?;
        Ok(node)
    }

    /// F-polynomial exchange relation in direction `k`, with principal
    /// coefficients read off the c-matrix of the pattern at `B`.
    fn mutate_f(&self, f: &[LaurentPolynomial], k: usize) -> Result<Vec<LaurentPolynomial>> {
        let n = self.n();
        let d = self.b.symmetrizer();
        let mut plus_y = vec![0i64; n];
        let mut minus_y = vec![0i64; n];
        for j in 0..n {
            let v = self.c.get(j, k) * &d[k] / &d[j];
            let v = small_exponent(&v)?;
            if v > 0 {
                plus_y[j] = v;
            } else {
                minus_y[j] = -v;
            }
        }
        let mut plus = LaurentPolynomial::monomial(plus_y, BigInt::one());
        let mut minus = LaurentPolynomial::monomial(minus_y, BigInt::one());
        for (i, fi) in f.iter().enumerate() {
            let bik = self.b.get(i, k);
            if bik.is_zero() {
                continue;
            }
            let e = small_exponent(&bik.abs())?;
            let p = fi.pow(e)?;
            if bik.is_positive() {
                plus = plus.mul(&p)?;
            } else {
                minus = minus.mul(&p)?;
            }
        }
        let mut out = f.to_vec();
        out[k] = plus.add(&minus)?.div_exact(&f[k])?;
        Ok(out)
    }

    /// Sign coherence, tropical duality `G C^T = I`, and constant term 1 of
    /// every F-polynomial.
    pub fn check_invariants(&self) -> Result<()> {
        for k in 0..self.n() {
            self.c_sign(k)?;
        }
        let prod = self.g.mul(&self.c.transpose())?;
        if !prod.is_identity() {
            return Err(Error::DualityViolation {
                history: one_based(&self.history),
            });
        }
        if let Some(f) = &self.f {
            if f.iter().any(|p| !p.constant_term().is_one()) {
                return Err(Error::ConstantTermViolation {
                    history: one_based(&self.history),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|k| k + 1).collect()
}

/// Applies a 0-based mutation sequence to the root.
pub fn node_at(b: &ExchangeMatrix, sequence: &[usize], track_f: bool) -> Result<PatternNode> {
    let mut node = PatternNode::initial(b, track_f);
    for &k in sequence {
        node = node.mutate(k)?;
    }
    Ok(node)
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub max_depth: usize,
    /// Stop once this many nodes have been visited.
    pub max_nodes: Option<usize>,
    pub track_f: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Stop as soon as a seed with `|b_ij b_ji| >= 4` is seen.
    pub stop_on_infinite_type: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            max_depth: 12,
            max_nodes: None,
            track_f: true,
            threads: None,
            stop_on_infinite_type: false,
        }
    }
}

impl EnumerateOptions {
    pub fn depth(max_depth: usize) -> Self {
        Self {
            max_depth,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct PatternCatalog {
    root: ExchangeMatrix,
    nodes: Vec<PatternNode>,
    explored_depth: usize,
    complete: bool,
    node_cap_hit: bool,
    infinite_type: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CVectorSet {
    pub vectors: BTreeSet<Vec<BigInt>>,
    /// Set when the catalog was not complete.
    pub partial: bool,
}

/// Breadth-first enumeration of distinct labelled seeds.
///
/// Each round expands the whole frontier in parallel and then inserts the
/// children sequentially in (parent, direction) order, so the result does not
/// depend on the number of threads.
pub fn enumerate(b: &ExchangeMatrix, options: &EnumerateOptions) -> Result<PatternCatalog> {
    match options.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool construction");
            pool.install(|| enumerate_inner(b, options))
        }
        None => enumerate_inner(b, options),
    }
}

fn enumerate_inner(b: &ExchangeMatrix, options: &EnumerateOptions) -> Result<PatternCatalog> {
    let root = PatternNode::initial(b, options.track_f);
    let n = b.n();
    let mut visited: HashSet<(IntMatrix, IntMatrix)> = HashSet::new();
    visited.insert(root.key());
    let mut catalog = PatternCatalog {
        root: b.clone(),
        nodes: vec![root],
        explored_depth: 0,
        complete: false,
        node_cap_hit: false,
        infinite_type: b.has_infinite_pair(),
    };
    if catalog.infinite_type && options.stop_on_infinite_type {
        return Ok(catalog);
    }
    let mut frontier: Vec<usize> = vec![0];
    while catalog.explored_depth < options.max_depth {
        let children: Vec<Vec<PatternNode>> = frontier
            .par_iter()
            .map(|&idx| {
                let node = &catalog.nodes[idx];
                (0..n)
                    .filter(|&k| node.history.last() != Some(&k))
                    .map(|k| node.mutate(k))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        catalog.explored_depth += 1;
        let mut next = Vec::new();
        'insert: for child in children.into_iter().flatten() {
            if options.max_nodes.is_some_and(|cap| catalog.nodes.len() >= cap) {
                catalog.node_cap_hit = true;
                break 'insert;
            }
            if visited.insert(child.key()) {
                if child.b.has_infinite_pair() {
                    catalog.infinite_type = true;
                }
                next.push(catalog.nodes.len());
                catalog.nodes.push(child);
            }
        }
        if catalog.node_cap_hit || (catalog.infinite_type && options.stop_on_infinite_type) {
            break;
        }
        if next.is_empty() {
            catalog.complete = true;
            break;
        }
        frontier = next;
    }
    Ok(catalog)
}

impl PatternCatalog {
    pub fn root(&self) -> &ExchangeMatrix {
        &self.root
    }

    /// Nodes in BFS order; index 0 is the root.
    pub fn nodes(&self) -> &[PatternNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn explored_depth(&self) -> usize {
        self.explored_depth
    }

    /// True only if the BFS frontier became empty.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn node_cap_hit(&self) -> bool {
        self.node_cap_hit
    }

    /// True if some visited seed certifies infinite type.
    pub fn infinite_type_detected(&self) -> bool {
        self.infinite_type
    }

    pub fn unlabelled_count(&self) -> usize {
        self.nodes
            .iter()
            .map(PatternNode::unlabelled_key)
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn find(&self, c: &IntMatrix) -> Option<&PatternNode> {
        self.nodes.iter().find(|node| &node.c == c)
    }

    pub fn positive_c_vectors(&self) -> CVectorSet {
        let vectors = self
            .nodes
            .iter()
            .flat_map(PatternNode::c_vectors)
            .filter(|v| vector::sign(v) == Some(1))
            .collect();
        CVectorSet {
            vectors,
            partial: !self.complete,
        }
    }
}
