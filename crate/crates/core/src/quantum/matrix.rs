use super::{c, QuantumState, C64};

pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

pub(crate) fn identity2() -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub(crate) fn zero4() -> Mat4 {
    [[c(0.0, 0.0); 4]; 4]
}

/// `n . sigma` for a real 3-vector `n`.
pub(crate) fn pauli_dot(n: [f64; 3]) -> Mat2 {
    let [x, y, z] = n;
    [[c(z, 0.0), c(x, -y)], [c(x, y), c(-z, 0.0)]]
}

pub(crate) fn pauli(i: usize) -> Mat2 {
    let mut n = [0.0; 3];
    n[i] = 1.0;
    pauli_dot(n)
}

pub(crate) fn add2(a: &Mat2, b: &Mat2, sign: f64) -> Mat2 {
    let mut out = *a;
    for (r, row) in out.iter_mut().enumerate() {
        for (col, v) in row.iter_mut().enumerate() {
            *v += b[r][col] * sign;
        }
    }
    out
}

pub(crate) fn scale2(a: &Mat2, s: f64) -> Mat2 {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

pub(crate) fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = zero4();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub(crate) fn add4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for (r, row) in out.iter_mut().enumerate() {
        for (col, v) in row.iter_mut().enumerate() {
            *v += b[r][col];
        }
    }
    out
}

/// `<psi|M|psi>` for a two-qubit state.
pub(crate) fn expectation4(psi: &QuantumState, m: &Mat4) -> C64 {
    let a = psi.amplitudes();
    let mut acc = c(0.0, 0.0);
    for i in 0..4 {
        let mut row = c(0.0, 0.0);
        for j in 0..4 {
            row += m[i][j] * a[j];
        }
        acc += a[i].conj() * row;
    }
    acc
}
