use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex64;

/// Outcome of a sampled injectivity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnivalenceReport {
    pub samples: usize,
    /// Smallest distance between the images of two distinct samples.
    pub min_separation: f64,
    pub distinct: bool,
}

/// Checks that the images are pairwise further apart than `tol`, by a sweep
/// over the images sorted by real part.
pub fn univalence_scan(images: &[Complex64], tol: f64) -> UnivalenceReport {
    let mut pts: Vec<Complex64> = images.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[j].re - pts[i].re >= best {
                break;
            }
            best = best.min((pts[j] - pts[i]).norm());
        }
    }
    UnivalenceReport { samples: pts.len(), min_separation: best, distinct: best > tol }
}
