use alloc::vec::Vec;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the unit eigenvector for `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut scaled = v.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= self.eigenvalues[j];
            }
        }
        scaled.matmul_unchecked(&v.adjoint())
    }

    /// Projector onto the span of eigenvectors whose eigenvalue exceeds `cutoff`.
    pub fn support_projector(&self, cutoff: f64) -> (ComplexMatrix, usize) {
        let n = self.eigenvectors.rows();
        let mut p = ComplexMatrix::zeros(n, n);
        let mut rank = 0;
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            if lambda > cutoff {
                let v = self.eigenvectors.column(j);
                p.add_scaled(C64::new(1.0, 0.0), &ComplexMatrix::outer(&v))
                    .expect("same shape");
                rank += 1;
            }
        }
        (p, rank)
    }
}

/// Outcome of a positivity test; always carries the witness eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdVerdict {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input must be Hermitian to `tol` in the max-entry norm; only its
/// Hermitian part is diagonalized. The rotation order is fixed, so the
/// result is bit-for-bit reproducible for a given input.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    let mut a = hermitian_input(m, tol)?;
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, Some(&mut v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Ascending eigenvalues only; skips accumulating eigenvectors.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let mut a = hermitian_input(m, tol)?;
    jacobi(&mut a, None);
    let mut ev: Vec<f64> = (0..a.rows()).map(|i| a[(i, i)].re).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// PSD test: true iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<PsdVerdict> {
    let min_eigenvalue = min_eigenvalue(m, tol)?;
    Ok(PsdVerdict {
        psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

pub fn min_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(hermitian_eigenvalues(m, tol)?[0])
}

fn hermitian_input(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let deviation = m.hermiticity_defect();
    if deviation.is_nan() || deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(m.hermitian_part())
}

fn off_diagonal_sq(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(a: &mut ComplexMatrix, mut v: Option<&mut ComplexMatrix>) {
    let n = a.rows();
    let total = a.frobenius_norm();
    if n == 1 || total == 0.0 {
        return;
    }
    let stop = (f64::EPSILON * total) * (f64::EPSILON * total);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(a) <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(a, v.as_deref_mut(), p, q);
            }
        }
    }
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
}

/// Annihilates `a[p,q]` with `G = diag-phase · real rotation`:
/// `G_pp = c`, `G_pq = s`, `G_qp = -s e^{-iφ}`, `G_qq = c e^{-iφ}` where
/// `a[p,q] = |a_pq| e^{iφ}`, and replaces `a` by `G† a G`.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Rotations that would not change the diagonal in floating point are
    // skipped; the off-diagonal entry is then negligible.
    if app.abs() + 100.0 * b == app.abs() && aqq.abs() + 100.0 * b == aqq.abs() {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / b;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ph_conj = phase.conj();
    let n = a.rows();

    // a <- a G (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - ph_conj * akq * s;
        a[(k, q)] = akp * s + ph_conj * akq * c;
    }
    // a <- G† a (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - phase * aqk * s;
        a[(q, k)] = apk * s + phase * aqk * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - ph_conj * vkq * s;
            v[(k, q)] = vkp * s + ph_conj * vkq * c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Cholesky of `m + shift·I`; succeeds iff the shifted matrix is positive
    /// definite. Independent of the Jacobi path.
    fn cholesky_ok(m: &ComplexMatrix, shift: f64) -> bool {
        let n = m.rows();
        let mut l = vec![c(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = m[(j, j)].re + shift;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d <= 0.0 {
                return false;
            }
            let d = libm::sqrt(d);
            l[j * n + j] = c(d, 0.0);
            for i in j + 1..n {
                let mut s = m[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / d;
            }
        }
        true
    }

    fn sample_hermitian() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            &[c(2.0, 0.0), c(0.5, -1.0), c(0.0, 0.25), c(-0.3, 0.0)],
            &[c(0.5, 1.0), c(-1.0, 0.0), c(0.7, 0.7), c(0.0, -0.4)],
            &[c(0.0, -0.25), c(0.7, -0.7), c(0.1, 0.0), c(1.2, 0.0)],
            &[c(-0.3, 0.0), c(0.0, 0.4), c(1.2, 0.0), c(0.6, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let s = hermitian_eigen(&ComplexMatrix::from_diagonal(&[3.0, 1.0, 2.0]), 1e-9).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert!(
            s.reconstruct()
                .max_abs_diff(&ComplexMatrix::from_diagonal(&[3.0, 1.0, 2.0]))
                < 1e-15
        );
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let s = hermitian_eigen(&x, 1e-9).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_bell_cnot_output_spectrum() {
        // Closed-form roots of λ² - λ/2 - 1/4 = 0.
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.0]]).unwrap();
        let roots = [(1.0 - libm::sqrt(5.0)) / 4.0, (1.0 + libm::sqrt(5.0)) / 4.0];
        let s = hermitian_eigen(&m, 1e-9).unwrap();
        for (got, want) in s.eigenvalues.iter().zip(roots) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
            assert!((got * got - got / 2.0 - 0.25).abs() < 1e-15);
        }
        let v = is_psd(&m, 1e-9).unwrap();
        assert!(!v.psd);
        assert!((v.min_eigenvalue + 0.309_016_994_374_947_4).abs() < 1e-12);
    }

    #[test]
    fn psd_boundaries() {
        let v = is_psd(&ComplexMatrix::identity(2), 1e-9).unwrap();
        assert!(v.psd);
        assert_eq!(v.min_eigenvalue, 1.0);
        let v = is_psd(&ComplexMatrix::zeros(3, 3), 1e-9).unwrap();
        assert!(v.psd);
        assert_eq!(v.min_eigenvalue, 0.0);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(hermitian_eigen(&m, 1e-9), Err(Error::NotHermitian { deviation: 1.0 }));
        assert!(matches!(is_psd(&m, 1e-9), Err(Error::NotHermitian { .. })));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(hermitian_eigen(&rect, 1e-9).is_err());
    }

    #[test]
    fn complex_reconstruction_and_orthonormality() {
        let m = sample_hermitian();
        let s = hermitian_eigen(&m, 1e-12).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
        assert!(s.eigenvectors.unitarity_defect() < 1e-13);
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let ev = hermitian_eigenvalues(&m, 1e-12).unwrap();
        for (a, b) in ev.iter().zip(&s.eigenvalues) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn psd_agrees_with_cholesky() {
        let m = sample_hermitian();
        let lo = min_eigenvalue(&m, 1e-12).unwrap();
        // m - (λmin - δ) I is positive definite, m - (λmin + δ) I is not.
        assert!(cholesky_ok(&m, -lo + 1e-9));
        assert!(!cholesky_ok(&m, -lo - 1e-9));
    }

    #[test]
    fn deterministic() {
        let m = sample_hermitian();
        assert_eq!(hermitian_eigen(&m, 1e-9).unwrap(), hermitian_eigen(&m, 1e-9).unwrap());
    }

    #[test]
    fn degenerate_spectrum() {
        let s = hermitian_eigen(&ComplexMatrix::identity(4).scale_real(0.25), 1e-9).unwrap();
        assert!(s.eigenvalues.iter().all(|&l| (l - 0.25).abs() < 1e-16));
        let (p, rank) = s.support_projector(1e-9);
        assert_eq!(rank, 4);
        assert!(p.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }
}
