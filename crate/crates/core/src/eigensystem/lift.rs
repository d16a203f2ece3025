//! Exterior powers of matrices: the lifted operator A^(k) acting on wedge
//! products in the lexicographic standard basis, plus the duality pairing
//! used to contract a 3-form against a 2-form in dimension five.

use nalgebra::{Complex, DMatrix, SMatrix, SVector};

type C = Complex<f64>;

/// Lexicographically ordered k-subsets of {0..n-1}.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return if k == 0 { vec![vec![]] } else { out };
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lifted operator: A^(k)(w₁∧…∧w_k) = Σ_j w₁∧…∧(A w_j)∧…∧w_k, represented in
/// the lexicographic basis e_{j1}∧…∧e_{jk}. Replacing e_{j_m} (slot m) by e_i
/// lands on the sorted set rest∪{i} with sign (-1)^{|m - pos|}, pos the number
/// of rest entries below i.
pub fn lift(a: &DMatrix<C>, k: usize) -> DMatrix<C> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert!(k >= 1 && k <= n);
    let combos = combinations(n, k);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        combos.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let dim = combos.len();
    let mut out = DMatrix::<C>::zeros(dim, dim);
    for (col, combo) in combos.iter().enumerate() {
        for (slot, &j) in combo.iter().enumerate() {
            let mut rest = combo.clone();
            rest.remove(slot);
            for i in 0..n {
                let aij = a[(i, j)];
                if aij == C::new(0.0, 0.0) {
                    continue;
                }
                if i == j {
                    out[(col, col)] += aij;
                } else if !rest.contains(&i) {
                    let pos = rest.iter().take_while(|&&r| r < i).count();
                    let mut set = rest.clone();
                    set.insert(pos, i);
                    let row = index[&set];
                    let parity = if (slot as i64 - pos as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    out[(row, col)] += aij * C::new(parity, 0.0);
                }
            }
        }
    }
    out
}

const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
const TRIPLES: [(usize, usize, usize); 10] = [
    (0, 1, 2),
    (0, 1, 3),
    (0, 1, 4),
    (0, 2, 3),
    (0, 2, 4),
    (0, 3, 4),
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 4),
    (2, 3, 4),
];

/// Second additive compound of a 5×5 matrix as a fixed-size 10×10: entry
/// (I,J) is Σa_ii on the diagonal, ±a_ij when the index sets share one
/// element, zero otherwise.
pub fn lift2_fast(a: &SMatrix<C, 5, 5>) -> SMatrix<C, 10, 10> {
    let mut out = SMatrix::<C, 10, 10>::zeros();
    for (r, &(i0, i1)) in PAIRS.iter().enumerate() {
        for (c, &(j0, j1)) in PAIRS.iter().enumerate() {
            if r == c {
                out[(r, c)] = a[(i0, i0)] + a[(i1, i1)];
                continue;
            }
            let iset = [i0, i1];
            let jset = [j0, j1];
            let shared: Vec<usize> = iset.iter().copied().filter(|i| jset.contains(i)).collect();
            if shared.len() != 1 {
                continue;
            }
            let i = if i0 == shared[0] { (i1, 1) } else { (i0, 0) };
            let j = if j0 == shared[0] { (j1, 1) } else { (j0, 0) };
            let parity = if (i.1 + j.1) % 2 == 0 { 1.0 } else { -1.0 };
            out[(r, c)] = a[(i.0, j.0)] * C::new(parity, 0.0);
        }
    }
    out
}

/// Third additive compound of a 5×5 matrix as a fixed-size 10×10.
pub fn lift3_fast(a: &SMatrix<C, 5, 5>) -> SMatrix<C, 10, 10> {
    let mut out = SMatrix::<C, 10, 10>::zeros();
    for (r, &(i0, i1, i2)) in TRIPLES.iter().enumerate() {
        for (c, &(j0, j1, j2)) in TRIPLES.iter().enumerate() {
            if r == c {
                out[(r, c)] = a[(i0, i0)] + a[(i1, i1)] + a[(i2, i2)];
                continue;
            }
            let iset = [i0, i1, i2];
            let jset = [j0, j1, j2];
            let only_i: Vec<usize> = (0..3).filter(|&s| !jset.contains(&iset[s])).collect();
            let only_j: Vec<usize> = (0..3).filter(|&s| !iset.contains(&jset[s])).collect();
            if only_i.len() != 1 {
                continue;
            }
            let parity = if (only_i[0] + only_j[0]) % 2 == 0 { 1.0 } else { -1.0 };
            out[(r, c)] = a[(iset[only_i[0]], jset[only_j[0]])] * C::new(parity, 0.0);
        }
    }
    out
}

/// Wedge of the k columns of a 5×k matrix, in the lexicographic basis.
pub fn wedge_columns_2(v: &SMatrix<C, 5, 2>) -> SVector<C, 10> {
    let combos = combinations(5, 2);
    SVector::<C, 10>::from_fn(|r, _| {
        let c = &combos[r];
        v[(c[0], 0)] * v[(c[1], 1)] - v[(c[1], 0)] * v[(c[0], 1)]
    })
}

pub fn wedge_columns_3(v: &SMatrix<C, 5, 3>) -> SVector<C, 10> {
    let combos = combinations(5, 3);
    SVector::<C, 10>::from_fn(|r, _| {
        let c = &combos[r];
        let m = SMatrix::<C, 3, 3>::from_fn(|i, j| v[(c[i], j)]);
        m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
    })
}

/// Pairing signs: a 3-form w and 2-form v in dimension 5 contract to the
/// coefficient of e₀∧…∧e₄ in w∧v. `dual_3form(w)` returns the 2-form-indexed
/// vector d with w∧v = Σ_P d_P v_P.
pub fn dual_3form(w: &SVector<C, 10>) -> SVector<C, 10> {
    let pairs = combinations(5, 2);
    let triples = combinations(5, 3);
    let triple_index: std::collections::HashMap<Vec<usize>, usize> =
        triples.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    SVector::<C, 10>::from_fn(|p, _| {
        let pair = &pairs[p];
        let comp: Vec<usize> = (0..5).filter(|i| !pair.contains(i)).collect();
        let t = triple_index[&comp];
        // parity of the permutation (comp..., pair...) relative to (0..4)
        let mut perm: Vec<usize> = comp.clone();
        perm.extend_from_slice(pair);
        let sign = permutation_sign(&perm);
        w[t] * C::new(sign, 0.0)
    })
}

fn permutation_sign(perm: &[usize]) -> f64 {
    let mut sign = 1.0;
    let n = perm.len();
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// ‖M^(k)‖_p ≤ k‖M‖_p for p ∈ {1, ∞}.
pub fn lifted_norm_check(m: &DMatrix<C>, k: usize, p_inf: bool) -> bool {
    let lifted = lift(m, k);
    let (nm, nl) = if p_inf {
        (norm_inf(m), norm_inf(&lifted))
    } else {
        (norm_1(m), norm_1(&lifted))
    };
    nl <= k as f64 * nm + 1e-12 * nm.max(1.0)
}

pub fn norm_1(m: &DMatrix<C>) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn norm_inf(m: &DMatrix<C>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
