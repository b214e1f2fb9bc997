//! Path algebras of acyclic quivers: Cartan and Coxeter matrices, g-vectors
//! of objects of the derived category, AR knitting and hyperplane normals.
//!
//! Dimension vectors are rows; g-vectors are columns. A shifted object
//! `X[1]` is encoded by the negated dimension vector of `X`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::conic_membership;
use crate::error::{display_vec, Error, Result};
use crate::numeric::{vector, IntMatrix};
use crate::seed::{ExchangeMatrix, Quiver};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathAlgebraData {
    quiver: Quiver,
    b: IntMatrix,
    /// Entry `(j, i)` counts the paths from `j` to `i`; column `i` is the
    /// dimension vector of the projective `P_i`.
    cartan: IntMatrix,
    cartan_inv: IntMatrix,
    /// `-C C^-T`, the inverse Coxeter transformation on dimension vectors.
    coxeter_inv: IntMatrix,
    /// `-C^T C^-1`
    coxeter: IntMatrix,
    topological_order: Vec<usize>,
}

pub fn path_algebra_data(q: &Quiver) -> Result<PathAlgebraData> {
    PathAlgebraData::new(q)
}

impl PathAlgebraData {
    pub fn new(q: &Quiver) -> Result<Self> {
        let order = q.topological_order().ok_or(Error::NotAcyclic)?;
        let n = q.n();
        let mut adjacency = IntMatrix::zeros(n, n);
        for a in q.arrows() {
            let v = adjacency.get(a.source, a.target) + BigInt::from(a.multiplicity);
            adjacency.set(a.source, a.target, v);
        }
        // sum of the powers of the adjacency matrix; nilpotent since acyclic
        let mut cartan = IntMatrix::identity(n);
        let mut power = IntMatrix::identity(n);
        for _ in 0..n {
            power = power.mul(&adjacency)?;
            if power.is_zero() {
                break;
            }
            cartan = add(&cartan, &power);
        }
        let cartan_inv = cartan.integer_inverse()?;
        let inv_t = cartan_inv.transpose();
        let b = q.exchange_matrix().matrix().clone();
        if add(&inv_t, &cartan_inv.neg()) != b {
            return Err(Error::ConventionViolation);
        }
        let coxeter_inv = cartan.mul(&inv_t)?.neg();
        let coxeter = cartan.transpose().mul(&cartan_inv)?.neg();
        Ok(Self {
            quiver: q.clone(),
            b,
            cartan,
            cartan_inv,
            coxeter_inv,
            coxeter,
            topological_order: order,
        })
    }

    pub fn from_exchange_matrix(b: &ExchangeMatrix) -> Result<Self> {
        Self::new(&b.quiver()?)
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn exchange_matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn cartan_inv(&self) -> &IntMatrix {
        &self.cartan_inv
    }

    /// Matrix of the Euler form: `C^-T`.
    pub fn euler_form(&self) -> IntMatrix {
        self.cartan_inv.transpose()
    }

    pub fn coxeter_inv(&self) -> &IntMatrix {
        &self.coxeter_inv
    }

    /// The symmetrized Euler form `C^-1 + C^-T` is positive definite exactly
    /// when every component of the underlying graph is a Dynkin diagram.
    pub fn is_dynkin(&self) -> bool {
        let s = add(&self.cartan_inv, &self.cartan_inv.transpose());
        (1..=self.n()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            let minor = s.select_rows(&idx).transpose().select_rows(&idx);
            minor.determinant().map(|d| d.is_positive()).unwrap_or(false)
        })
    }

    pub fn g_vector(&self, x: &DerivedObject) -> Result<Vec<BigInt>> {
        self.cartan_inv.mul_vec(&x.dim)
    }

    /// Class of `tau^-1 X`, i.e. `-C C^-T dim(X)^T`.
    pub fn tau_inverse_dim(&self, x: &DerivedObject) -> Result<DerivedObject> {
        DerivedObject::new(self.coxeter_inv.mul_vec(&x.dim)?)
    }

    pub fn tau_dim(&self, x: &DerivedObject) -> Result<DerivedObject> {
        DerivedObject::new(self.coxeter.mul_vec(&x.dim)?)
    }

    /// Compares `B dim(X)^T` with `-(g^X + g^{tau^-1 X})`.
    pub fn verify_dv_gv(&self, x: &DerivedObject) -> Result<DvGv> {
        let lhs = self.b.mul_vec(&x.dim)?;
        let g = self.g_vector(x)?;
        let gt = self.g_vector(&self.tau_inverse_dim(x)?)?;
        let rhs = vector::neg(&vector::add(&g, &gt));
        Ok(DvGv {
            holds: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// Knits the AR quiver from the projectives.
    ///
    /// With `window = None` knitting runs until the newest slice holds no
    /// module, which requires Dynkin type. With `Some(w)` slices `0..=w` are
    /// produced for any acyclic quiver.
    pub fn knit(&self, window: Option<usize>) -> Result<ARQuiverSlice> {
        let n = self.n();
        if window.is_none() && !self.is_dynkin() {
            return Err(Error::NotRepresentationFinite);
        }
        // orbits[i][r] is the class of tau^-r P_i
        let mut orbits: Vec<Vec<Vec<BigInt>>> =
            (0..n).map(|i| vec![self.cartan.column(i)]).collect();
        let mut module = vec![vec![true]; n];
        for i in 0..n {
            module[i][0] = vector::sign(&orbits[i][0]) == Some(1);
        }
        let mut slices = 1;
        loop {
            let last = slices - 1;
            let more = match window {
                Some(w) => slices <= w,
                None => (0..n).any(|i| module[i][last]),
            };
            if !more {
                break;
            }
            for &i in &self.topological_order {
                let mut sum = vector::neg(&orbits[i][last]);
                for (j, r, m) in self.mesh_middles(i, last) {
                    let v = &orbits[j][r];
                    for _ in 0..m {
                        sum = vector::add(&sum, v);
                    }
                }
                let still = module[i][last] && vector::sign(&sum) == Some(1);
                module[i].push(still);
                orbits[i].push(sum);
            }
            slices += 1;
        }

        let mut slice = ARQuiverSlice {
            vertices: Vec::new(),
            meshes: Vec::new(),
            exhaustive: window.is_none(),
        };
        let mut ids = vec![vec![None; slices]; n];
        let is_module = module.clone();
        let mut id_of = |slice: &mut ARQuiverSlice, i: usize, r: usize| -> usize {
            *ids[i][r].get_or_insert_with(|| {
                slice.vertices.push(KnitVertex {
                    vertex: i,
                    slice: r,
                    object: DerivedObject {
                        dim: orbits[i][r].clone(),
                        label: None,
                    },
                    is_module: module[i][r],
                });
                slice.vertices.len() - 1
            })
        };
        for r in 0..slices {
            for &i in &self.topological_order {
                if is_module[i][r] {
                    id_of(&mut slice, i, r);
                }
            }
        }
        for r in 0..slices.saturating_sub(1) {
            for &i in &self.topological_order {
                if !is_module[i][r] {
                    continue;
                }
                let source = id_of(&mut slice, i, r);
                let mut middles = Vec::new();
                for (j, rr, m) in self.mesh_middles(i, r) {
                    let id = id_of(&mut slice, j, rr);
                    middles.extend(std::iter::repeat_n(id, m as usize));
                }
                let target = id_of(&mut slice, i, r + 1);
                slice.meshes.push(Mesh {
                    source,
                    middles,
                    target,
                });
            }
        }
        Ok(slice)
    }

    /// Middle terms of the mesh starting at `(i, r)`: `(j, r)` for each
    /// arrow `i -> j` and `(j, r + 1)` for each arrow `j -> i`.
    fn mesh_middles(&self, i: usize, r: usize) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for a in self.quiver.arrows() {
            if a.source == i {
                out.push((a.target, r, a.multiplicity));
            }
        }
        for a in self.quiver.arrows() {
            if a.target == i {
                out.push((a.source, r + 1, a.multiplicity));
            }
        }
        out
    }

    /// `(c^T B)^T` for a positive c-vector, checked against the mesh starting
    /// at the module with dimension vector `c` when knitted data is given.
    pub fn normal_vector(&self, c: &[BigInt], knit: Option<&ARQuiverSlice>) -> Result<NormalVector> {
        if c.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: c.len(),
            });
        }
        if vector::sign(c) != Some(1) {
            return Err(Error::NotPositive(display_vec(c)));
        }
        let normal = self.b.vec_mul(c)?;
        let mut mesh_sum = None;
        if let Some(k) = knit {
            match k.module_with_dim(c) {
                Some(v) => {
                    if let Some(mesh) = k.mesh_from(v) {
                        let mut sum = vec![BigInt::zero(); self.n()];
                        for &m in &mesh.middles {
                            sum = vector::add(&sum, &self.g_vector(&k.vertices[m].object)?);
                        }
                        if sum != normal {
                            return Err(Error::ConventionViolation);
                        }
                        mesh_sum = Some(sum);
                    }
                }
                None if k.exhaustive => return Err(Error::NotARoot(display_vec(c))),
                None => {}
            }
        }
        Ok(NormalVector {
            primitive: vector::primitive(&normal),
            normal,
            mesh_sum,
        })
    }

    /// Minimal sets `H` of c-vectors admitting positive `lambda` with
    /// `sum_{k in H} lambda_k (g^{X_k} + g^{tau^-1 X_k}) = 0`.
    ///
    /// A negative c-vector stands for the shift of the module with the
    /// opposite dimension vector. Sets are searched up to size `n`.
    pub fn kernel_certificates(&self, cvecs: &[Vec<BigInt>]) -> Result<Vec<KernelCertificate>> {
        let mut w = Vec::with_capacity(cvecs.len());
        for c in cvecs {
            match vector::sign(c) {
                Some(s) if s != 0 => {}
                _ => return Err(Error::NotSignCoherent(display_vec(c))),
            }
            let x = DerivedObject::new(c.clone())?;
            let g = self.g_vector(&x)?;
            let gt = self.g_vector(&self.tau_inverse_dim(&x)?)?;
            w.push(vector::add(&g, &gt));
        }
        let mut found: Vec<KernelCertificate> = Vec::new();
        for size in 1..=self.n().min(w.len()) {
            for subset in combinations(w.len(), size) {
                if found
                    .iter()
                    .any(|f| f.subset.iter().all(|i| subset.contains(i)))
                {
                    continue;
                }
                let gens: Vec<Vec<BigInt>> = subset.iter().map(|&i| w[i].clone()).collect();
                let total = gens.iter().fold(vec![BigInt::zero(); self.n()], |a, g| vector::add(&a, g));
                // lambda = mu + 1 with mu >= 0 solving sum mu_k w_k = -sum w_k
                let Some(cert) = conic_membership(&vector::neg(&total), &gens) else {
                    continue;
                };
                let (mu, scale) = cert.integral();
                let lambda = vector::primitive(&mu.iter().map(|m| m + &scale).collect::<Vec<_>>());
                found.push(KernelCertificate { subset, lambda });
            }
        }
        Ok(found)
    }
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let data = a.entries().iter().zip(b.entries()).map(|(x, y)| x + y).collect();
    IntMatrix::new(a.rows(), a.cols(), data).expect("same shape")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// An object of the derived category known through its class.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DerivedObject {
    pub dim: Vec<BigInt>,
    pub label: Option<String>,
}

impl DerivedObject {
    pub fn new(dim: Vec<BigInt>) -> Result<Self> {
        if vector::is_zero(&dim) {
            return Err(Error::NotARoot(display_vec(&dim)));
        }
        Ok(Self { dim, label: None })
    }

    pub fn from_i64(dim: &[i64]) -> Result<Self> {
        Self::new(vector::from_i64(dim))
    }

    pub fn shift(&self) -> Self {
        Self {
            dim: vector::neg(&self.dim),
            label: self.label.as_ref().map(|l| format!("{l}[1]")),
        }
    }

    pub fn is_shifted(&self) -> bool {
        vector::sign(&self.dim) == Some(-1)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DvGv {
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnitVertex {
    /// Vertex of the quiver whose projective starts this orbit.
    pub vertex: usize,
    /// Number of applications of `tau^-1`.
    pub slice: usize,
    pub object: DerivedObject,
    pub is_module: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mesh {
    pub source: usize,
    /// Indices into the vertex list, repeated by arrow multiplicity.
    pub middles: Vec<usize>,
    pub target: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ARQuiverSlice {
    pub vertices: Vec<KnitVertex>,
    pub meshes: Vec<Mesh>,
    /// True if the whole module category was knitted.
    pub exhaustive: bool,
}

impl ARQuiverSlice {
    pub fn modules(&self) -> impl Iterator<Item = &KnitVertex> {
        self.vertices.iter().filter(|v| v.is_module)
    }

    pub fn module_dims(&self) -> BTreeSet<Vec<BigInt>> {
        self.modules().map(|v| v.object.dim.clone()).collect()
    }

    pub fn module_with_dim(&self, dim: &[BigInt]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.is_module && v.object.dim == dim)
    }

    pub fn mesh_from(&self, vertex: usize) -> Option<&Mesh> {
        self.meshes.iter().find(|m| m.source == vertex)
    }

    /// True if `dim(target) = sum dim(middles) - dim(source)` for every mesh.
    pub fn is_additive(&self) -> bool {
        self.meshes.iter().all(|m| {
            let mut sum = vector::neg(&self.vertices[m.source].object.dim);
            for &x in &m.middles {
                sum = vector::add(&sum, &self.vertices[x].object.dim);
            }
            sum == self.vertices[m.target].object.dim
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalVector {
    pub normal: Vec<BigInt>,
    pub primitive: Vec<BigInt>,
    /// Sum of g-vectors over the mesh middles, when knitted data covered `c`.
    pub mesh_sum: Option<Vec<BigInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelCertificate {
    /// Indices into the c-vector list passed in.
    pub subset: Vec<usize>,
    /// Positive primitive integer multipliers, one per subset member.
    pub lambda: Vec<BigInt>,
}

impl KernelCertificate {
    pub fn is_positive(&self) -> bool {
        self.lambda.iter().all(|x| x.is_positive())
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::vector::from_i64;

    fn a3() -> PathAlgebraData {
        let b = ExchangeMatrix::from_rows(&[[0, 1, 0], [-1, 0, -1], [0, 1, 0]]).unwrap();
        PathAlgebraData::from_exchange_matrix(&b).unwrap()
    }

    fn kronecker() -> PathAlgebraData {
        let b = ExchangeMatrix::from_rows(&[[0, -2], [2, 0]]).unwrap();
        PathAlgebraData::from_exchange_matrix(&b).unwrap()
    }

    fn obj(v: &[i64]) -> DerivedObject {
        DerivedObject::from_i64(v).unwrap()
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(
            a3().cartan(),
            &IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 0], [0, 1, 1]])
        );
        assert_eq!(kronecker().cartan(), &IntMatrix::from_rows(&[[1, 0], [2, 1]]));
        let empty = Quiver::from_arrows(3, &[]).unwrap();
        let data = PathAlgebraData::new(&empty).unwrap();
        assert!(data.cartan().is_identity());
        assert!(data.exchange_matrix().is_zero());
    }

    #[test]
    fn cyclic_quivers_are_rejected() {
        let cyc = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(PathAlgebraData::new(&cyc).unwrap_err(), Error::NotAcyclic);
    }

    #[test]
    fn g_vectors() {
        let d = a3();
        assert_eq!(d.g_vector(&obj(&[0, 1, 0])).unwrap(), from_i64(&[-1, 1, -1]));
        assert_eq!(d.g_vector(&obj(&[1, 1, 1])).unwrap(), from_i64(&[0, 1, 0]));
        let k = kronecker();
        for dd in 0..6i64 {
            let g = k.g_vector(&obj(&[dd, dd + 1])).unwrap();
            assert_eq!(g[1], BigInt::from(1 - dd));
            assert_eq!(g[0], BigInt::from(dd));
        }
    }

    #[test]
    fn tau_inverse() {
        let d = a3();
        assert_eq!(d.tau_inverse_dim(&obj(&[0, 1, 0])).unwrap().dim, from_i64(&[-1, -1, -1]));
        assert_eq!(d.tau_inverse_dim(&obj(&[1, 0, 0])).unwrap().dim, from_i64(&[0, 1, 1]));
        let x = obj(&[1, 1, 0]);
        assert_eq!(d.tau_dim(&d.tau_inverse_dim(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn dv_gv() {
        let d = a3();
        let r = d.verify_dv_gv(&obj(&[0, 1, 0])).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, from_i64(&[1, 0, 1]));
        let k = kronecker();
        for dd in 0..6i64 {
            let r = k.verify_dv_gv(&obj(&[dd, dd + 1])).unwrap();
            assert!(r.holds);
            assert_eq!(r.lhs, from_i64(&[-2 * (dd + 1), 2 * dd]));
        }
        for i in 0..3 {
            assert!(d.verify_dv_gv(&DerivedObject::new(d.cartan().column(i)).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn knitting_a3() {
        let d = a3();
        let k = d.knit(None).unwrap();
        assert!(k.is_additive());
        let expected: BTreeSet<Vec<BigInt>> = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
        ]
        .iter()
        .map(|v| from_i64(v))
        .collect();
        assert_eq!(k.module_dims(), expected);
        let s2 = k.module_with_dim(&from_i64(&[0, 1, 0])).unwrap();
        let mesh = k.mesh_from(s2).unwrap();
        let mut middles: Vec<Vec<BigInt>> =
            mesh.middles.iter().map(|&m| k.vertices[m].object.dim.clone()).collect();
        middles.sort();
        assert_eq!(middles, vec![from_i64(&[-1, 0, 0]), from_i64(&[0, 0, -1])]);
        assert_eq!(k.vertices[mesh.target].object.dim, from_i64(&[-1, -1, -1]));
        let gsum = mesh.middles.iter().fold(from_i64(&[0, 0, 0]), |acc, &m| {
            vector::add(&acc, &d.g_vector(&k.vertices[m].object).unwrap())
        });
        assert_eq!(gsum, from_i64(&[-1, 0, -1]));
    }

    #[test]
    fn knitting_semisimple() {
        let q = Quiver::from_arrows(2, &[]).unwrap();
        let d = PathAlgebraData::new(&q).unwrap();
        let k = d.knit(None).unwrap();
        assert_eq!(k.modules().count(), 2);
        for m in &k.meshes {
            assert!(m.middles.is_empty());
            assert!(k.vertices[m.target].object.is_shifted());
        }
    }

    #[test]
    fn knitting_requires_dynkin() {
        assert_eq!(kronecker().knit(None).unwrap_err(), Error::NotRepresentationFinite);
        let w = kronecker().knit(Some(3)).unwrap();
        assert!(w.is_additive());
        assert!(w.module_dims().contains(&from_i64(&[3, 4])));
    }

    #[test]
    fn normals() {
        let d = a3();
        let k = d.knit(None).unwrap();
        let n = d.normal_vector(&from_i64(&[0, 1, 0]), Some(&k)).unwrap();
        assert_eq!(n.normal, from_i64(&[-1, 0, -1]));
        assert_eq!(n.mesh_sum, Some(from_i64(&[-1, 0, -1])));
        let n = d.normal_vector(&from_i64(&[1, 1, 1]), Some(&k)).unwrap();
        assert_eq!(n.normal, from_i64(&[-1, 2, -1]));
        assert_eq!(
            d.normal_vector(&from_i64(&[1, -1, 0]), None).unwrap_err(),
            Error::NotPositive(vec!["1".into(), "-1".into(), "0".into()])
        );
        assert!(matches!(
            d.normal_vector(&from_i64(&[1, 0, 1]), Some(&k)),
            Err(Error::NotARoot(_))
        ));
        let kr = kronecker();
        for dd in 0..6i64 {
            let n = kr.normal_vector(&from_i64(&[dd, dd + 1]), None).unwrap();
            assert_eq!(n.normal, from_i64(&[2 * (dd + 1), -2 * dd]));
            assert_eq!(n.primitive, from_i64(&[dd + 1, -dd]));
        }
    }

    #[test]
    fn certificates() {
        let d = a3();
        let c = vec![from_i64(&[1, 0, 0]), from_i64(&[0, 0, -1])];
        let certs = d.kernel_certificates(&c).unwrap();
        assert_eq!(
            certs,
            vec![KernelCertificate {
                subset: vec![0, 1],
                lambda: from_i64(&[1, 1])
            }]
        );
        let both_positive = vec![from_i64(&[1, 0, 0]), from_i64(&[0, 0, 1])];
        assert!(d.kernel_certificates(&both_positive).unwrap().is_empty());
        let single = vec![from_i64(&[1, 0, -1])];
        assert!(matches!(
            d.kernel_certificates(&single),
            Err(Error::NotSignCoherent(_))
        ));
        let zero_b = PathAlgebraData::new(&Quiver::from_arrows(2, &[]).unwrap()).unwrap();
        let certs = zero_b.kernel_certificates(&[from_i64(&[1, 0])]).unwrap();
        assert_eq!(certs[0].subset, vec![0]);
    }

    #[test]
    fn dynkin_detection() {
        assert!(a3().is_dynkin());
        assert!(!kronecker().is_dynkin());
    }
}
