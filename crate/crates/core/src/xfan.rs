//! The fan of cones `{beta : C^T B beta >= 0}` over a pattern catalog, and
//! theta functions at its integral points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::cone::{build_system, CanonicalKey, ConeDescription};
use crate::error::{display_vec, Error, Result};
use crate::numeric::LaurentPolynomial;
use crate::pattern::{node_at, PatternCatalog, PatternNode};

#[derive(Clone, Debug)]
pub struct XCone {
    pub description: ConeDescription,
    /// Histories (0-based) of every catalog node realizing this cone, in BFS order.
    pub witnesses: Vec<Vec<usize>>,
}

impl XCone {
    pub fn dim(&self) -> usize {
        self.description.dim
    }
}

#[derive(Clone, Debug)]
pub struct XFanReport {
    /// Distinct cones in order of first appearance.
    pub cones: Vec<XCone>,
    /// Number of distinct cones of each dimension.
    pub dims: BTreeMap<usize, usize>,
    pub complete: bool,
}

pub fn assemble_fan(catalog: &PatternCatalog) -> XFanReport {
    let root = catalog.root();
    let descriptions: Vec<ConeDescription> = catalog
        .nodes()
        .par_iter()
        .map(|node| build_system(node, root).classify())
        .collect();
    let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
    let mut cones: Vec<XCone> = Vec::new();
    for (node, desc) in catalog.nodes().iter().zip(descriptions) {
        let key = desc.canonical_key();
        match index.get(&key) {
            Some(&i) => cones[i].witnesses.push(node.history().to_vec()),
            None => {
                index.insert(key, cones.len());
                cones.push(XCone {
                    description: desc,
                    witnesses: vec![node.history().to_vec()],
                });
            }
        }
    }
    let mut dims = BTreeMap::new();
    for c in &cones {
        *dims.entry(c.dim()).or_insert(0) += 1;
    }
    XFanReport {
        cones,
        dims,
        complete: catalog.is_complete(),
    }
}

/// `alpha = C^T B beta` for a node.
pub fn alpha_at(node: &PatternNode, catalog: &PatternCatalog, beta: &[BigInt]) -> Result<Vec<BigInt>> {
    let p = catalog.root().p_star(beta)?;
    node.c_matrix().vec_mul(&p)
}

/// First node in BFS order whose cone contains `beta`, with its `alpha`.
pub fn locate<'a>(
    beta: &[BigInt],
    catalog: &'a PatternCatalog,
) -> Result<Option<(&'a PatternNode, Vec<BigInt>)>> {
    let p = catalog.root().p_star(beta)?;
    for node in catalog.nodes() {
        let alpha = node.c_matrix().vec_mul(&p)?;
        if alpha.iter().all(|x| !x.is_negative()) {
            return Ok(Some((node, alpha)));
        }
    }
    Ok(None)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaFunction {
    pub beta: Vec<BigInt>,
    pub value: LaurentPolynomial,
    /// History (0-based) of the witnessing node.
    pub witness: Vec<usize>,
    pub alpha: Vec<BigInt>,
}

/// `y^beta * prod_i F_i^alpha_i` at a node whose cone contains `beta`.
pub fn theta_at(node: &PatternNode, beta: &[BigInt], alpha: &[BigInt]) -> Result<LaurentPolynomial> {
    let owned;
    let f = match node.f_polynomials() {
        Some(f) => f,
        None => {
            let b = node.exchange_matrix();
            // replay from the root of the same pattern with F tracking on
            let root = root_of(node)?;
            owned = node_at(&root, node.history(), true)?;
            debug_assert_eq!(owned.exchange_matrix(), b);
            owned.f_polynomials().expect("tracked")
        }
    };
    let exps = beta.iter().map(small_exponent).collect::<Result<Vec<i64>>>()?;
    let mut value = LaurentPolynomial::monomial(exps, BigInt::one());
    for (fi, a) in f.iter().zip(alpha) {
        let e = small_exponent(a)?;
        if e != 0 {
            value = value.mul(&fi.pow(e)?)?;
        }
    }
    Ok(value)
}

pub(crate) fn small_exponent(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::ExponentOverflow(x.to_string()))
}

/// Undoes a node's history to recover the root exchange matrix.
fn root_of(node: &PatternNode) -> Result<crate::seed::ExchangeMatrix> {
    let mut b = node.exchange_matrix().clone();
    for &k in node.history().iter().rev() {
        b = b.mutate(k)?;
    }
    Ok(b)
}

pub fn theta(beta: &[BigInt], catalog: &PatternCatalog) -> Result<ThetaFunction> {
    let Some((node, alpha)) = locate(beta, catalog)? else {
        let reason = if catalog.is_complete() {
            "outside the cluster complex".to_string()
        } else {
            format!("not found within mutation depth {}", catalog.explored_depth())
        };
        return Err(Error::NotInVisitedComplex {
            beta: display_vec(beta),
            reason,
        });
    };
    Ok(ThetaFunction {
        beta: beta.to_vec(),
        value: theta_at(node, beta, &alpha)?,
        witness: node.history().to_vec(),
        alpha,
    })
}
