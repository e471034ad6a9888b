//! In-place kernels over a flat amplitude buffer where `bit` indexes the
//! buffer position. Density matrices reuse them by treating row qubit `q` as
//! bit `n + q` and column qubit `q` as bit `q`.

use crate::scalar::{cx, i_pow, Cx, Real};

pub type Mat2<T> = [[Cx<T>; 2]; 2];

pub(crate) fn apply_1q<T: Real>(data: &mut [Cx<T>], bit: usize, m: &Mat2<T>) {
    let stride = 1usize << bit;
    let len = data.len();
    let mut base = 0;
    while base < len {
        for i in base..base + stride {
            let a0 = data[i];
            let a1 = data[i + stride];
            data[i] = m[0][0] * a0 + m[0][1] * a1;
            data[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += stride << 1;
    }
}

pub(crate) fn apply_cnot<T: Real>(data: &mut [Cx<T>], control: usize, target: usize) {
    let cm = 1usize << control;
    let tm = 1usize << target;
    for i in 0..data.len() {
        if i & cm != 0 && i & tm == 0 {
            data.swap(i, i | tm);
        }
    }
}

pub(crate) fn apply_cphase<T: Real>(data: &mut [Cx<T>], a: usize, b: usize, phase: Cx<T>) {
    let m = (1usize << a) | (1usize << b);
    for (i, amp) in data.iter_mut().enumerate() {
        if i & m == m {
            *amp = *amp * phase;
        }
    }
}

/// `out = P · data` for the Pauli word with bit masks `x`, `z` shifted by
/// `offset` bits, phase `i^phase`.
pub(crate) fn pauli_image<T: Real>(data: &[Cx<T>], x: u64, z: u64, phase: u8, offset: usize) -> Vec<Cx<T>> {
    let xm = (x as usize) << offset;
    let zm = (z as usize) << offset;
    // P = phase · i^{#Y} · X^x Z^z with Z acting first.
    let base: Cx<T> = i_pow(phase.wrapping_add((x & z).count_ones() as u8));
    let neg = -base;
    let mut out = vec![cx(T::zero(), T::zero()); data.len()];
    for (j, &amp) in data.iter().enumerate() {
        let f = if (j & zm).count_ones() & 1 == 1 { neg } else { base };
        out[j ^ xm] = f * amp;
    }
    out
}

pub(crate) fn rz<T: Real>(angle: T) -> Mat2<T> {
    let h = angle / T::lit(2.0);
    let z = cx(T::zero(), T::zero());
    [[cx(h.cos(), -h.sin()), z], [z, cx(h.cos(), h.sin())]]
}

pub(crate) fn hadamard<T: Real>() -> Mat2<T> {
    let s = T::FRAC_1_SQRT_2();
    [[cx(s, T::zero()), cx(s, T::zero())], [cx(s, T::zero()), cx(-s, T::zero())]]
}

pub(crate) fn pauli_x<T: Real>() -> Mat2<T> {
    let o = cx(T::one(), T::zero());
    let z = cx(T::zero(), T::zero());
    [[z, o], [o, z]]
}

pub(crate) fn sqrt_x<T: Real>() -> Mat2<T> {
    let h = T::lit(0.5);
    let p = cx(h, h);
    let m = cx(h, -h);
    [[p, m], [m, p]]
}

pub(crate) fn s_dagger<T: Real>() -> Mat2<T> {
    let o = cx(T::one(), T::zero());
    let z = cx(T::zero(), T::zero());
    [[o, z], [z, cx(T::zero(), -T::one())]]
}

pub(crate) fn conj2<T: Real>(m: &Mat2<T>) -> Mat2<T> {
    [[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]]
}
