//! Local-maximum detection with topographic prominence and interpolated
//! width.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Position in the input; the leftmost sample of a flat top.
    pub index: usize,
    /// Height above the higher of the two bases, in value units.
    pub prominence: f64,
    /// Extent at `value - rel_height * prominence`, in samples.
    pub width: f64,
}

/// Finds every strict local maximum of `x`.
///
/// A sample is a peak when it rises from its left neighbour and the flat run
/// starting at it is followed by a lower sample. Endpoints are never peaks.
/// Prominence uses the lowest point between the peak and the nearest higher
/// sample (or the boundary) on each side; width is measured between the
/// linearly interpolated crossings of the reference height inside those
/// bases.
pub fn find_peaks(x: &[f64], rel_height: f64) -> Vec<Peak> {
    local_maxima(x)
        .into_iter()
        .map(|index| {
            let (prominence, left_base, right_base) = prominence(x, index);
            let width = width(x, index, prominence, left_base, right_base, rel_height);
            Peak {
                index,
                prominence,
                width,
            }
        })
        .collect()
}

fn local_maxima(x: &[f64]) -> Vec<usize> {
    let n = x.len();
    let mut peaks = Vec::new();
    if n < 3 {
        return peaks;
    }
    let last = n - 1;
    let mut i = 1;
    while i < last {
        if x[i - 1] < x[i] {
            let mut ahead = i + 1;
            while ahead < last && x[ahead] == x[i] {
                ahead += 1;
            }
            if x[ahead] < x[i] {
                peaks.push(i);
            }
            i = ahead;
        } else {
            i += 1;
        }
    }
    peaks
}

fn prominence(x: &[f64], peak: usize) -> (f64, usize, usize) {
    let top = x[peak];

    let mut left_min = top;
    let mut left_base = peak;
    let mut i = peak as isize;
    while i >= 0 && x[i as usize] <= top {
        if x[i as usize] < left_min {
            left_min = x[i as usize];
            left_base = i as usize;
        }
        i -= 1;
    }

    let mut right_min = top;
    let mut right_base = peak;
    let mut j = peak;
    while j < x.len() && x[j] <= top {
        if x[j] < right_min {
            right_min = x[j];
            right_base = j;
        }
        j += 1;
    }

    (top - left_min.max(right_min), left_base, right_base)
}

fn width(
    x: &[f64],
    peak: usize,
    prominence: f64,
    left_base: usize,
    right_base: usize,
    rel_height: f64,
) -> f64 {
    let height = x[peak] - prominence * rel_height;

    let mut i = peak;
    while left_base < i && height < x[i] {
        i -= 1;
    }
    let mut left = i as f64;
    if x[i] < height {
        left += (height - x[i]) / (x[i + 1] - x[i]);
    }

    let mut j = peak;
    while j < right_base && height < x[j] {
        j += 1;
    }
    let mut right = j as f64;
    if x[j] < height {
        right -= (height - x[j]) / (x[j - 1] - x[j]);
    }

    right - left
}
