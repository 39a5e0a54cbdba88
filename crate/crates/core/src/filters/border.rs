//! Out-of-range index mapping for neighbourhood operations.

/// Mirror without repeating the edge sample: `... 2 1 | 0 1 2 ... n-1 | n-2 ...`.
///
/// Folds repeatedly, so offsets larger than the axis length are handled too.
#[inline]
pub fn reflect101(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m < n as isize {
        m as usize
    } else {
        (period - m) as usize
    }
}

/// Clamp to the nearest edge sample.
#[inline]
pub fn replicate(i: isize, n: usize) -> usize {
    i.clamp(0, n as isize - 1) as usize
}
