use crate::error::{Error, Result};

/// The `ell`-th Catalan number, the number of Dyck paths with `ell` up-steps.
///
/// Exact for `ell ≤ 30`.
pub fn catalan_number(ell: u32) -> Result<u64> {
    if ell > 30 {
        return Err(Error::arg(format!("catalan_number is exact only up to 30, got {ell}")));
    }
    // C_{n+1} = C_n · 2(2n + 1) / (n + 2), exact in integers
    let mut c: u128 = 1;
    for n in 0..ell as u128 {
        c = c * 2 * (2 * n + 1) / (n + 2);
    }
    Ok(c as u64)
}

/// A ±1 walk that starts and ends at 0 and never goes below it.
pub fn is_dyck_path(steps: &[i8]) -> bool {
    let mut height = 0i64;
    for &s in steps {
        match s {
            1 | -1 => height += s as i64,
            _ => return false,
        }
        if height < 0 {
            return false;
        }
    }
    height == 0
}
