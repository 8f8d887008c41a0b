use conewit_core::{CMat, CVec, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_cvec(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    let v = random_cvec(rng, n);
    let nv = v.norm();
    v / c(nv, 0.0)
}

pub fn random_cmat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    let a = random_cmat(rng, n, n);
    a.add(&a.adjoint()).scale(0.5)
}

pub fn basis_vec(n: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[i] = c(1.0, 0.0);
    v
}
