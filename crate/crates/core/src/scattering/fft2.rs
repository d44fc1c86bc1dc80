use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::C64;

/// Two-dimensional FFT on a row-major `nx × ny` array.
///
/// Spectra are returned transposed (row-major `ny × nx` becomes `nx × ny`)
/// because only pointwise products are taken between spectra.
pub struct Fft2 {
    nx: usize,
    ny: usize,
    fx: Arc<dyn Fft<f64>>,
    fy: Arc<dyn Fft<f64>>,
    ix: Arc<dyn Fft<f64>>,
    iy: Arc<dyn Fft<f64>>,
    tmp: Vec<C64>,
    scratch: Vec<C64>,
}

fn transpose(src: &[C64], dst: &mut [C64], rows: usize, cols: usize) {
    for r in 0..rows {
        for c in 0..cols {
            dst[c * rows + r] = src[r * cols + c];
        }
    }
}

impl Fft2 {
    pub fn new(nx: usize, ny: usize) -> Self {
        let mut p = FftPlanner::new();
        let fx = p.plan_fft_forward(nx);
        let fy = p.plan_fft_forward(ny);
        let ix = p.plan_fft_inverse(nx);
        let iy = p.plan_fft_inverse(ny);
        let s = [&fx, &fy, &ix, &iy].iter().map(|f| f.get_inplace_scratch_len()).max().unwrap();
        Self { nx, ny, fx, fy, ix, iy, tmp: vec![C64::default(); nx * ny], scratch: vec![C64::default(); s] }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Unnormalised forward transform; `data` ends in transposed layout.
    pub fn forward(&mut self, data: &mut [C64]) {
        self.fx.process_with_scratch(data, &mut self.scratch);
        transpose(data, &mut self.tmp, self.ny, self.nx);
        self.fy.process_with_scratch(&mut self.tmp, &mut self.scratch);
        data.copy_from_slice(&self.tmp);
    }

    /// Unnormalised inverse of [`Fft2::forward`]; `data` returns to row-major layout.
    pub fn inverse(&mut self, data: &mut [C64]) {
        self.iy.process_with_scratch(data, &mut self.scratch);
        transpose(data, &mut self.tmp, self.nx, self.ny);
        self.ix.process_with_scratch(&mut self.tmp, &mut self.scratch);
        data.copy_from_slice(&self.tmp);
    }
}
