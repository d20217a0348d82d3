//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
pub(crate) fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()) * C64::from(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors =
        CMat::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>());
    (values, vectors)
}

pub(crate) fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Orthonormal basis (as columns) of the kernel of `m`, counting singular
/// values `<= tol * max(1, largest)` as zero.
pub(crate) fn null_space(m: &CMat, tol: f64) -> CMat {
    let cols = m.ncols();
    // the thin SVD only exposes `min(rows, cols)` right singular vectors
    let padded;
    let m = if m.nrows() < cols {
        padded = m.clone().resize_vertically(cols, C64::from(0.0));
        &padded
    } else {
        m
    };
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let scale = svd.singular_values.max().max(1.0);
    let basis: Vec<DVector<C64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= tol * scale)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect();
    if basis.is_empty() {
        CMat::zeros(cols, 0)
    } else {
        CMat::from_columns(&basis)
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let z = CMat::from_fn(n, n, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::from(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `V diag(values) V*`.
pub(crate) fn from_eigen(values: &[f64], vectors: &CMat) -> CMat {
    let mut scaled = vectors.clone();
    for (j, &x) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(x);
    }
    scaled * vectors.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..6 {
            let u = random_unitary(n, &mut rng);
            assert!((&u * u.adjoint() - CMat::identity(n, n)).norm() < 1e-12);
        }
    }

    #[test]
    fn eigen_descending_and_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(4, &mut rng);
        let vals = [3.0, -1.0, 2.0, 0.5];
        let m = from_eigen(&vals, &u);
        let (got, vecs) = hermitian_eigen(&m);
        assert_eq!(got.len(), 4);
        for (g, e) in got.iter().zip([3.0, 2.0, 0.5, -1.0]) {
            assert!((g - e).abs() < 1e-12);
        }
        assert!((from_eigen(&got, &vecs) - m).norm() < 1e-12);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = CMat::from_row_slice(1, 3, &[C64::from(1.0), C64::from(1.0), C64::from(0.0)]);
        let k = null_space(&m, 1e-12);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
    }
}
