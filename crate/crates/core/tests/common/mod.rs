//! Reference implementations that share no code with the crate's numerics:
//! characteristic-polynomial eigenvalues, an exact Lindblad propagator built
//! from a hand-written superoperator, and index-formula partial transposes.

#![allow(dead_code)]

use qsl_core::linalg::{ComplexMatrix, C64};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Plain row-major square matrix used only by the oracles.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<C64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![ZERO; n * n],
        }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_crate(m: &ComplexMatrix) -> Self {
        Self::from_fn(m.dim(), |i, j| m[(i, j)])
    }

    pub fn to_crate(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.n, self.a.clone()).unwrap()
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        Dense::from_fn(self.n, |i, j| {
            (0..self.n).map(|k| self.at(i, k) * o.at(k, j)).sum()
        })
    }

    pub fn add(&self, o: &Dense) -> Dense {
        Dense::from_fn(self.n, |i, j| self.at(i, j) + o.at(i, j))
    }

    pub fn scale(&self, s: C64) -> Dense {
        Dense::from_fn(self.n, |i, j| self.at(i, j) * s)
    }

    pub fn dagger(&self) -> Dense {
        Dense::from_fn(self.n, |i, j| self.at(j, i).conj())
    }

    pub fn transpose(&self) -> Dense {
        Dense::from_fn(self.n, |i, j| self.at(j, i))
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn kron(&self, o: &Dense) -> Dense {
        let m = o.n;
        Dense::from_fn(self.n * m, |i, j| {
            self.at(i / m, j / m) * o.at(i % m, j % m)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn sx() -> Dense {
    Dense::from_fn(2, |i, j| if i != j { ONE } else { ZERO })
}

pub fn sy() -> Dense {
    Dense {
        n: 2,
        a: vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO],
    }
}

pub fn sz() -> Dense {
    Dense {
        n: 2,
        a: vec![ONE, ZERO, ZERO, -ONE],
    }
}

/// `|1⟩⟨0|`
pub fn lowering() -> Dense {
    Dense {
        n: 2,
        a: vec![ZERO, ZERO, ONE, ZERO],
    }
}

/// Characteristic polynomial coefficients `[c_0, …, c_n]` (monic, `c_n = 1`) by Faddeev–LeVerrier.
pub fn char_poly(m: &Dense) -> Vec<C64> {
    let n = m.n;
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    let mut mk = Dense::zeros(n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&Dense::eye(n).scale(coeffs[n - k + 1]));
        coeffs[n - k] = -m.mul(&mk).trace() / k as f64;
    }
    coeffs
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let eval = |z: C64| coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a);
    let radius = 1.0 + coeffs[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0_f64;
        for i in 0..n {
            let mut denom = ONE;
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = c(1e-30, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    roots
}

/// Eigenvalues of a Hermitian matrix from its characteristic polynomial, ascending.
pub fn eigenvalues_oracle(m: &ComplexMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = poly_roots(&char_poly(&Dense::from_crate(m)))
        .iter()
        .map(|z| z.re)
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// `(ρ^{Γ_B})_{(a b),(a' b')} = ρ_{(a b'),(a' b)}` for two qubits.
pub fn partial_transpose_b_oracle(m: &ComplexMatrix) -> ComplexMatrix {
    let d = Dense::from_fn(4, |i, j| {
        let (a, b) = (i / 2, i % 2);
        let (ap, bp) = (j / 2, j % 2);
        m[(a * 2 + bp, ap * 2 + b)]
    });
    d.to_crate()
}

/// Negativity as the summed magnitude of negative eigenvalues of `ρ^{Γ_B}`.
pub fn negativity_oracle(rho: &ComplexMatrix) -> f64 {
    eigenvalues_oracle(&partial_transpose_b_oracle(rho))
        .into_iter()
        .filter(|&l| l < 0.0)
        .map(f64::abs)
        .sum()
}

/// Generator data written out independently of the crate's process table.
pub struct Generator {
    pub h: Dense,
    pub jumps: Vec<Dense>,
}

fn on_a(m: &Dense) -> Dense {
    m.kron(&Dense::eye(2))
}

fn on_b(m: &Dense) -> Dense {
    Dense::eye(2).kron(m)
}

pub fn nonlocal_generator(theta: f64, mu_z: f64) -> Generator {
    let h = sx()
        .kron(&sx())
        .scale(c(theta, 0.0))
        .add(&sz().kron(&sz()).scale(c(mu_z, 0.0)));
    Generator { h, jumps: vec![] }
}

pub fn dephasing_generator(gamma: f64) -> Generator {
    let k = c((gamma / 2.0).sqrt(), 0.0);
    Generator {
        h: Dense::zeros(4),
        jumps: vec![on_a(&sz()).scale(k), on_b(&sz()).scale(k)],
    }
}

pub fn depolarizing_generator(gamma: f64) -> Generator {
    let k = c((gamma / 8.0).sqrt(), 0.0);
    let mut jumps = Vec::new();
    for s in [sx(), sy(), sz()] {
        jumps.push(on_a(&s).scale(k));
        jumps.push(on_b(&s).scale(k));
    }
    Generator {
        h: Dense::zeros(4),
        jumps,
    }
}

pub fn amplitude_generator(gamma: f64) -> Generator {
    let k = c((gamma / 2.0).sqrt(), 0.0);
    Generator {
        h: Dense::zeros(4),
        jumps: vec![on_a(&lowering()).scale(k), on_b(&lowering()).scale(k)],
    }
}

/// Row-major vectorization: `vec(A X B) = (A ⊗ Bᵀ) vec(X)`.
/// `ℒ(ρ) = −i[H,ρ] + Σ 2LρL† − L†Lρ − ρL†L`.
pub fn superoperator(g: &Generator) -> Dense {
    let n = g.h.n;
    let id = Dense::eye(n);
    let mi = c(0.0, -1.0);
    let mut s =
        g.h.kron(&id)
            .scale(mi)
            .add(&id.kron(&g.h.transpose()).scale(-mi));
    for l in &g.jumps {
        let ldl = l.dagger().mul(l);
        s = s
            .add(&l.kron(&l.dagger().transpose()).scale(c(2.0, 0.0)))
            .add(&ldl.kron(&id).scale(-ONE))
            .add(&id.kron(&ldl.transpose()).scale(-ONE));
    }
    s
}

/// `ℒ†(O) = i[H,O] + Σ 2L†OL − L†LO − OL†L`.
pub fn adjoint_superoperator(g: &Generator) -> Dense {
    let n = g.h.n;
    let id = Dense::eye(n);
    let pi = c(0.0, 1.0);
    let mut s =
        g.h.kron(&id)
            .scale(pi)
            .add(&id.kron(&g.h.transpose()).scale(-pi));
    for l in &g.jumps {
        let ldl = l.dagger().mul(l);
        s = s
            .add(&l.dagger().kron(&l.transpose()).scale(c(2.0, 0.0)))
            .add(&ldl.kron(&id).scale(-ONE))
            .add(&id.kron(&ldl.transpose()).scale(-ONE));
    }
    s
}

/// `e^{A}` by scaling and squaring with a 24-term Taylor series.
pub fn expm(a: &Dense) -> Dense {
    let norm = a.max_abs() * a.n as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a.scale(c(scale, 0.0));
    let mut term = Dense::eye(a.n);
    let mut sum = Dense::eye(a.n);
    for k in 1..=24 {
        term = term.mul(&x).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// `e^{t S} vec(M)`, reshaped.
pub fn propagate(super_op: &Dense, m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = m.dim();
    let prop = expm(&super_op.scale(c(t, 0.0)));
    let v: Vec<C64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
    let out: Vec<C64> = (0..n * n)
        .map(|i| (0..n * n).map(|j| prop.at(i, j) * v[j]).sum())
        .collect();
    ComplexMatrix::from_vec(n, out).unwrap()
}

/// `√p|00⟩ + √(1−p)|11⟩` as a density matrix, written directly.
pub fn psi_p_oracle(p: f64) -> ComplexMatrix {
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = c(a * a, 0.0);
    m[(0, 3)] = c(a * b, 0.0);
    m[(3, 0)] = c(a * b, 0.0);
    m[(3, 3)] = c(b * b, 0.0);
    m
}

/// Composite Simpson over an even number of panels.
pub fn simpson_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for k in 1..panels {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `e^{t_k S} vec(M)` at `t_k = k·t_final/panels`, `k = 0..=panels`, from one exact step propagator.
pub fn propagate_grid(
    super_op: &Dense,
    m: &ComplexMatrix,
    t_final: f64,
    panels: usize,
) -> Vec<ComplexMatrix> {
    let n = m.dim();
    let step = expm(&super_op.scale(c(t_final / panels as f64, 0.0)));
    let mut v: Vec<C64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
    let mut out = Vec::with_capacity(panels + 1);
    for k in 0..=panels {
        if k > 0 {
            v = (0..n * n)
                .map(|i| (0..n * n).map(|j| step.at(i, j) * v[j]).sum())
                .collect();
        }
        out.push(ComplexMatrix::from_vec(n, v.clone()).unwrap());
    }
    out
}

/// `S vec(M)`, reshaped.
pub fn apply_super(super_op: &Dense, m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let v: Vec<C64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
    let out = (0..n * n)
        .map(|i| (0..n * n).map(|j| super_op.at(i, j) * v[j]).sum())
        .collect();
    ComplexMatrix::from_vec(n, out).unwrap()
}

/// Composite Simpson over equally spaced samples (even number of panels).
pub fn simpson_samples(values: &[f64], h: f64) -> f64 {
    let panels = values.len() - 1;
    assert!(panels.is_multiple_of(2));
    let mut s = values[0] + values[panels];
    for (k, v) in values.iter().enumerate().take(panels).skip(1) {
        s += v * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `T_NSL` from the exact propagator and the characteristic-polynomial spectrum.
pub fn nsl_oracle(g: &Generator, p: f64, t_final: f64, panels: usize) -> f64 {
    let s = superoperator(g);
    let states = propagate_grid(&s, &psi_p_oracle(p), t_final, panels);
    let num = 2.0 * (negativity_oracle(&states[panels]) - negativity_oracle(&states[0])).abs();
    let speeds: Vec<f64> = states
        .iter()
        .map(|r| {
            let rate = partial_transpose_b_oracle(&apply_super(&s, r));
            eigenvalues_oracle(&rate).iter().map(|l| l.abs()).sum()
        })
        .collect();
    let lambda = simpson_samples(&speeds, t_final / panels as f64) / t_final;
    num / lambda
}
