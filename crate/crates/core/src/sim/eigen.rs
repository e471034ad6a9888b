//! Dense symmetric eigensolver (Householder reduction followed by implicit
//! QL), used as the exact-diagonalization reference for small registers.
//!
//! Complex Hermitian matrices `A + iB` are handled through the real symmetric
//! embedding `[[A, -B], [B, A]]`, whose spectrum is that of `A + iB` with
//! every eigenvalue doubled.

use super::state::{StateVector, MAX_SIM_QUBITS};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::scalar::{cx, i_pow, Cx, Real};

/// Dense row-major matrix of a Pauli sum.
pub fn dense_matrix<T: Real>(h: &PauliSum<T>) -> Result<Vec<Cx<T>>> {
    let n = h.n_qubits();
    if n > MAX_SIM_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_SIM_QUBITS });
    }
    let d = 1usize << n;
    let mut m = vec![cx(T::zero(), T::zero()); d * d];
    for (p, &c) in h.iter() {
        let xm = p.x_bits() as usize;
        let zm = p.z_bits() as usize;
        let base: Cx<T> = i_pow::<T>(p.phase().power().wrapping_add(p.y_count() as u8)) * c;
        for j in 0..d {
            let f = if (j & zm).count_ones() & 1 == 1 { -base } else { base };
            m[(j ^ xm) * d + j] += f;
        }
    }
    Ok(m)
}

/// Eigen-decomposition of a real symmetric matrix (row-major, `n × n`).
///
/// Returns ascending eigenvalues and the matrix whose column `k` is the
/// eigenvector for eigenvalue `k`.
pub fn symmetric_eigen<T: Real>(a: &[T], n: usize) -> (Vec<T>, Vec<T>) {
    let mut v = a.to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut v, &mut d, &mut e, n);
    tql2(&mut v, &mut d, &mut e, n);
    (d, v)
}

fn tred2<T: Real>(v: &mut [T], d: &mut [T], e: &mut [T], n: usize) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let upd = f * e[k] + g * d[k];
                    v[at(k, j)] -= upd;
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }
    for i in 0..n.saturating_sub(1) {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    let upd = g * d[k];
                    v[at(k, j)] -= upd;
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    v[at(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

fn tql2<T: Real>(v: &mut [T], d: &mut [T], e: &mut [T], n: usize) {
    let at = |i: usize, j: usize| i * n + j;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        let m = m.min(n - 1);
        if m > l {
            loop {
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (T::lit(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in l + 2..n {
                    d[i] -= h;
                }
                f += h;
                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[at(k, i + 1)];
                        v[at(k, i + 1)] = s * v[at(k, i)] + c * h;
                        v[at(k, i)] = c * v[at(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    // Selection sort into ascending order.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in i + 1..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for j in 0..n {
                v.swap(at(j, i), at(j, k));
            }
        }
    }
}

/// Lowest eigenpair of a Pauli sum by dense diagonalization.
pub fn exact_ground<T: Real>(h: &PauliSum<T>) -> Result<(T, StateVector<T>)> {
    let n = h.n_qubits();
    let m = dense_matrix(h)?;
    let d = 1usize << n;
    let is_real = m.iter().all(|z| z.im == T::zero());
    let amps = if is_real {
        let a: Vec<T> = m.iter().map(|z| z.re).collect();
        let (_, vecs) = symmetric_eigen(&a, d);
        (0..d).map(|r| cx(vecs[r * d], T::zero())).collect::<Vec<_>>()
    } else {
        let dd = 2 * d;
        let mut a = vec![T::zero(); dd * dd];
        for r in 0..d {
            for c in 0..d {
                let z = m[r * d + c];
                a[r * dd + c] = z.re;
                a[(r + d) * dd + c + d] = z.re;
                a[r * dd + c + d] = -z.im;
                a[(r + d) * dd + c] = z.im;
            }
        }
        let (_, vecs) = symmetric_eigen(&a, dd);
        (0..d).map(|r| cx(vecs[r * dd], vecs[(r + d) * dd])).collect::<Vec<_>>()
    };
    let state = StateVector::from_amplitudes(n, amps)?;
    // Rayleigh quotient of the normalized vector is the more accurate energy.
    let energy = state.expectation(h)?;
    Ok((energy, state))
}
