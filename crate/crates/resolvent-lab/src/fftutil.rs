//! Small shared helpers around rustfft: unnormalized n-dimensional
//! transforms on row-major boxes, and FFT-friendly size selection.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// In-place unnormalized DFT along every axis of a row-major
/// `dims`-shaped array. `inverse` selects the e^{+2πi·} sign, so an
/// inverse transform of unit mode coefficients evaluates the
/// trigonometric polynomial on the uniform grid.
pub(crate) fn fft_nd(data: &mut [Complex64], dims: &[usize], inverse: bool) {
    let total: usize = dims.iter().product();
    assert_eq!(data.len(), total, "data length must match the grid shape");
    let mut planner = FftPlanner::new();
    for (axis, &len) in dims.iter().enumerate() {
        let fft = if inverse {
            planner.plan_fft_inverse(len)
        } else {
            planner.plan_fft_forward(len)
        };
        let stride: usize = dims[axis + 1..].iter().product();
        let outer: usize = dims[..axis].iter().product();
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut line = vec![Complex64::default(); len];
        for o in 0..outer {
            let block = o * len * stride;
            for s in 0..stride {
                if stride == 1 {
                    fft.process_with_scratch(
                        &mut data[block..block + len],
                        &mut scratch,
                    );
                } else {
                    for (i, v) in line.iter_mut().enumerate() {
                        *v = data[block + s + i * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (i, v) in line.iter().enumerate() {
                        data[block + s + i * stride] = *v;
                    }
                }
            }
        }
    }
}

/// Smallest n ≥ `min` whose prime factors are all in {2, 3, 5}.
pub(crate) fn good_fft_size(min: usize) -> usize {
    let mut n = min.max(1);
    loop {
        let mut m = n;
        for p in [2usize, 3, 5] {
            while m % p == 0 {
                m /= p;
            }
        }
        if m == 1 {
            return n;
        }
        n += 1;
    }
}
