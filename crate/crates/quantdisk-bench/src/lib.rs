//! Shared fixtures for the benchmarks.

use quantdisk::algebra::Element;
use quantdisk::disk::{DiskIndex, IndexTriple};
use quantdisk::exact::{rat, GaussRat};

/// Every cone basis vector up to `level`, with small distinct Gaussian coefficients.
pub fn cone_element(n: usize, level: u32) -> Element<IndexTriple> {
    Element::from_terms(IndexTriple::up_to(n, level).into_iter().enumerate().map(|(k, t)| {
        let k = k as i64;
        (t, GaussRat::new(rat(k % 5 + 1, k % 3 + 1), rat(k % 2, 7)))
    }))
}

/// Every disk basis vector up to `level`, same coefficient pattern as [`cone_element`].
pub fn disk_element(n: usize, level: u32) -> Element<DiskIndex> {
    Element::from_terms(DiskIndex::up_to(n, level).into_iter().enumerate().map(|(k, t)| {
        let k = k as i64;
        (t, GaussRat::new(rat(k % 5 + 1, k % 3 + 1), rat(k % 2, 7)))
    }))
}

/// Σ_{k ≤ deg} (k+1)/(k+2)·e_k in a model with `u64` indices.
pub fn dense_poly(deg: u64) -> Element<u64> {
    Element::from_real_terms((0..=deg).map(|k| (k, rat(k as i64 + 1, k as i64 + 2))))
}
