use crate::error::{Error, Result};
use crate::path::PlanarPath;

/// p-variation of a polyline.
///
/// Along a segment `|x_t − x_s|^p` is convex in either endpoint, so the
/// supremum over partitions is attained on vertex times; a dynamic program
/// over vertices finds it in O(n²).
pub fn p_variation(path: &PlanarPath, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::arg(format!("p must be at least 1, got {p}")));
    }
    let z = path.points();
    if p == 1.0 {
        return Ok(path.length());
    }
    let mut best = vec![0.0f64; z.len()];
    for j in 1..z.len() {
        best[j] = (0..j)
            .map(|i| best[i] + (z[j] - z[i]).norm().powf(p))
            .fold(f64::NEG_INFINITY, f64::max);
    }
    Ok(best[z.len() - 1].powf(1.0 / p))
}
