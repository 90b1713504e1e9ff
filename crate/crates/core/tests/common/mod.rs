//! Reference implementations used as test oracles. Plain `Vec` matrices and
//! textbook algorithms, sharing no code path with the library.
#![allow(dead_code)]

use trotter_core::c64;

pub type M = Vec<Vec<c64>>;

pub fn zeros(d: usize) -> M {
    vec![vec![c64::new(0.0, 0.0); d]; d]
}

pub fn eye(d: usize) -> M {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &M, b: &M) -> M {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for k in 0..d {
            let aik = a[i][k];
            for j in 0..d {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn add(a: &M, b: &M, s: c64) -> M {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q * s).collect()).collect()
}

pub fn scale(a: &M, s: c64) -> M {
    a.iter().map(|row| row.iter().map(|x| x * s).collect()).collect()
}

pub fn adjoint(a: &M) -> M {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn kron(a: &M, b: &M) -> M {
    let (da, db) = (a.len(), b.len());
    let mut c = zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    c[i * db + k][j * db + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    c
}

pub fn pauli_matrix(c: char) -> M {
    let (o, l, i) = (c64::new(0.0, 0.0), c64::new(1.0, 0.0), c64::new(0.0, 1.0));
    match c {
        'I' => vec![vec![l, o], vec![o, l]],
        'X' => vec![vec![o, l], vec![l, o]],
        'Y' => vec![vec![o, -i], vec![i, o]],
        'Z' => vec![vec![l, o], vec![o, -l]],
        _ => panic!("not a Pauli: {c}"),
    }
}

/// Kronecker expansion of a string like "XYZ", leftmost factor first.
pub fn pauli_string_matrix(s: &str) -> M {
    let mut chars = s.chars();
    let first = pauli_matrix(chars.next().unwrap());
    chars.fold(first, |acc, c| kron(&acc, &pauli_matrix(c)))
}

pub fn pauli_sum_matrix(n: usize, terms: &[(c64, String)]) -> M {
    terms
        .iter()
        .fold(zeros(1 << n), |acc, (c, s)| add(&acc, &pauli_string_matrix(s), *c))
}

pub fn from_library(op: &trotter_core::DenseOperator) -> M {
    let full = op.to_full();
    (0..full.nrows()).map(|i| (0..full.ncols()).map(|j| full[(i, j)]).collect()).collect()
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

/// Cyclic Jacobi eigenvalues of a Hermitian matrix.
pub fn jacobi_eigenvalues(h: &M) -> Vec<f64> {
    let d = h.len();
    let mut a = h.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // unitary phase so that the (p, q) entry becomes real
                let phase = apq / apq.norm();
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                // rotation acting on columns p, q: [c, s*phase; -s*conj(phase)... ] built explicitly
                let mut g = eye(d);
                g[p][p] = c64::new(c, 0.0);
                g[q][q] = c64::new(c, 0.0);
                g[p][q] = phase * s;
                g[q][p] = -phase.conj() * s;
                a = matmul(&matmul(&adjoint(&g), &a), &g);
            }
        }
    }
    (0..d).map(|i| a[i][i].re).collect()
}

/// Largest singular value via Jacobi eigenvalues of `A^† A`.
pub fn spectral_norm(a: &M) -> f64 {
    jacobi_eigenvalues(&matmul(&adjoint(a), a)).into_iter().fold(0.0, f64::max).max(0.0).sqrt()
}

/// `exp(A)` by scaling, Taylor series and squaring.
pub fn expm(a: &M) -> M {
    let d = a.len();
    let norm1: f64 = (0..d).map(|j| (0..d).map(|i| a[i][j].norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    let mut s = 1.0;
    while norm1 * s > 0.05 {
        s /= 2.0;
        squarings += 1;
    }
    let small = scale(a, c64::new(s, 0.0));
    let mut term = eye(d);
    let mut sum = eye(d);
    for k in 1..30 {
        term = scale(&matmul(&term, &small), c64::new(1.0 / k as f64, 0.0));
        sum = add(&sum, &term, c64::new(1.0, 0.0));
    }
    for _ in 0..squarings {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// `exp(-i h t)`.
pub fn propagator(h: &M, t: f64) -> M {
    expm(&scale(h, c64::new(0.0, -t)))
}

/// Random unitary from Gram-Schmidt on a random complex matrix.
pub fn random_unitary(d: usize, rng: &mut impl rand::Rng) -> M {
    let cols: Vec<Vec<c64>> = (0..d)
        .map(|_| (0..d).map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    let mut basis: Vec<Vec<c64>> = Vec::new();
    for mut v in cols {
        for b in &basis {
            let proj: c64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
        let nrm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|x| x / nrm).collect());
    }
    // column j of the result is basis[j]
    (0..d).map(|i| (0..d).map(|j| basis[j][i]).collect()).collect()
}

pub fn random_matrix(d: usize, rng: &mut impl rand::Rng) -> M {
    (0..d)
        .map(|_| (0..d).map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect()
}

pub fn to_library(m: &M) -> trotter_core::DenseOperator {
    let d = m.len();
    let full = faer::Mat::from_fn(d, d, |i, j| m[i][j]);
    trotter_core::DenseOperator::from_full(full).unwrap()
}
