//! Complex Schur decomposition with eigenvalue reordering, triangular
//! Sylvester solves, and spectral projectors for eigenvalue clusters.

use crate::error::{Error, Result};
use nalgebra::{Complex, SMatrix};

pub type C = Complex<f64>;
pub type CMat5 = SMatrix<C, 5, 5>;

/// Unitary similarity A = Q T Q^H with T upper triangular and a chosen
/// cluster of eigenvalues occupying the leading diagonal block.
pub struct OrderedSchur {
    pub q: CMat5,
    pub t: CMat5,
    pub cluster_size: usize,
}

/// Swap the adjacent diagonal entries t[p,p], t[p+1,p+1] of an upper
/// triangular T by a Givens rotation, updating Q accordingly.
fn swap_adjacent(t: &mut CMat5, q: &mut CMat5, p: usize) -> Result<()> {
    let a = t[(p, p)];
    let b = t[(p, p + 1)];
    let c = t[(p + 1, p + 1)];
    // eigenvector of [[a, b], [0, c]] for eigenvalue c is (b, c - a)
    let w0 = b;
    let w1 = c - a;
    let norm = (w0.norm_sqr() + w1.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(Error::Splitting(format!("cannot reorder identical coupled eigenvalues at {p}")));
    }
    // Givens G with G (w0, w1)^T = (r, 0)^T
    let cs = w0 / norm;
    let sn = w1 / norm;
    // apply G to rows p, p+1 of T and G^H to columns p, p+1 of T and Q
    for j in 0..5 {
        let tp = t[(p, j)];
        let tq = t[(p + 1, j)];
        t[(p, j)] = cs.conj() * tp + sn.conj() * tq;
        t[(p + 1, j)] = -sn * tp + cs * tq;
    }
    for i in 0..5 {
        let tp = t[(i, p)];
        let tq = t[(i, p + 1)];
        t[(i, p)] = tp * cs + tq * sn;
        t[(i, p + 1)] = -tp * sn.conj() + tq * cs.conj();
        let qp = q[(i, p)];
        let qq = q[(i, p + 1)];
        q[(i, p)] = qp * cs + qq * sn;
        q[(i, p + 1)] = -qp * sn.conj() + qq * cs.conj();
    }
    t[(p + 1, p)] = C::new(0.0, 0.0);
    Ok(())
}

/// Schur form of `a` with the eigenvalues selected by `select` (applied to
/// the unordered diagonal) moved to the leading block.
pub fn ordered_schur(a: &CMat5, select: impl Fn(C) -> bool) -> Result<OrderedSchur> {
    let schur = a.schur();
    let (mut q, mut t) = schur.unpack();
    // explicit zeroing of the strictly lower part guards against roundoff dust
    for i in 1..5 {
        for j in 0..i {
            t[(i, j)] = C::new(0.0, 0.0);
        }
    }
    let mut selected: Vec<bool> = (0..5).map(|i| select(t[(i, i)])).collect();
    let cluster_size = selected.iter().filter(|&&s| s).count();
    let mut front = 0usize;
    for i in 0..5 {
        if selected[i] {
            let mut p = i;
            while p > front {
                swap_adjacent(&mut t, &mut q, p - 1)?;
                selected.swap(p - 1, p);
                p -= 1;
            }
            front += 1;
        }
    }
    Ok(OrderedSchur { q, t, cluster_size })
}

/// Solve the triangular Sylvester equation T11 X - X T22 = -T12 arising from
/// the block-triangular Schur form; requires disjoint diagonal spectra.
fn triangular_sylvester(t: &CMat5, k: usize) -> Result<SMatrix<C, 5, 5>> {
    // X is k x (5-k), stored in the top-right of a 5x5 scratch
    let m = 5 - k;
    let mut x = SMatrix::<C, 5, 5>::zeros();
    for j in 0..m {
        for i in (0..k).rev() {
            let mut rhs = -t[(i, k + j)];
            for p in (i + 1)..k {
                rhs -= t[(i, p)] * x[(p, j)];
            }
            for p in 0..j {
                rhs += x[(i, p)] * t[(k + p, k + j)];
            }
            let denom = t[(i, i)] - t[(k + j, k + j)];
            if denom.norm() < 1e-13 {
                return Err(Error::Splitting(format!(
                    "cluster separation below tolerance: |{} - {}|",
                    t[(i, i)],
                    t[(k + j, k + j)]
                )));
            }
            x[(i, j)] = rhs / denom;
        }
    }
    Ok(x)
}

/// Invariant-subspace data for an eigenvalue cluster: an orthonormal basis,
/// the spectral (oblique) projector, and the cluster eigenvalues.
pub struct ClusterSubspace {
    pub basis: Vec<nalgebra::SVector<C, 5>>,
    pub projector: CMat5,
    pub eigenvalues: Vec<C>,
    /// sum of cluster eigenvalues (= trace of A restricted to the subspace)
    pub rate_sum: C,
}

pub fn cluster_subspace(a: &CMat5, select: impl Fn(C) -> bool) -> Result<ClusterSubspace> {
    let os = ordered_schur(a, select)?;
    let k = os.cluster_size;
    let x = triangular_sylvester(&os.t, k)?;
    // spectral projector: Q [[I, -X], [0, 0]] Q^H
    let mut core = SMatrix::<C, 5, 5>::zeros();
    for i in 0..k {
        core[(i, i)] = C::new(1.0, 0.0);
        for j in 0..(5 - k) {
            core[(i, k + j)] = -x[(i, j)];
        }
    }
    let projector = os.q * core * os.q.adjoint();
    let basis = (0..k).map(|j| os.q.column(j).into_owned()).collect();
    let eigenvalues: Vec<C> = (0..k).map(|i| os.t[(i, i)]).collect();
    let rate_sum = eigenvalues.iter().sum();
    Ok(ClusterSubspace { basis, projector, eigenvalues, rate_sum })
}

/// Operator 2-norm of a complex 5x5 matrix by power iteration on A^H A.
pub fn op_norm2_c5(a: &CMat5) -> f64 {
    let ata = a.adjoint() * a;
    let mut v = nalgebra::SVector::<C, 5>::from_fn(|i, _| C::new(1.0 + i as f64 * 0.3, 0.2 - i as f64 * 0.1));
    let mut lam = 0.0f64;
    for _ in 0..200 {
        let w = ata * v;
        let n = w.norm();
        if n == 0.0 {
            return 0.0;
        }
        let new = n;
        v = w / C::new(n, 0.0);
        if (new - lam).abs() <= 1e-13 * new.max(1.0) {
            lam = new;
            break;
        }
        lam = new;
    }
    lam.sqrt()
}
