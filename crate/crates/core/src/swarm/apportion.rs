//! Largest-remainder apportionment of drones to clusters.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot apportion over all-zero cluster sizes")]
pub struct AllZeroSizes;

/// Splits `n_drones` in proportion to `sizes` (Hamilton's method).
///
/// Each cluster gets the floor of its exact quota; leftover drones go to the
/// largest fractional remainders, ties to the lower index. Computed in
/// integers, so quotas and remainders are exact.
pub fn allocate_drones(sizes: &[usize], n_drones: usize) -> Result<Vec<usize>, AllZeroSizes> {
    let total: u128 = sizes.iter().map(|&s| s as u128).sum();
    if total == 0 {
        return Err(AllZeroSizes);
    }
    let n = n_drones as u128;
    let mut seats: Vec<usize> = sizes.iter().map(|&s| (n * s as u128 / total) as usize).collect();
    let assigned: usize = seats.iter().sum();

    let mut order: Vec<usize> = (0..sizes.len()).collect();
    // remainder numerators share the denominator `total`
    order.sort_by(|&a, &b| {
        let ra = n * sizes[a] as u128 % total;
        let rb = n * sizes[b] as u128 % total;
        rb.cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(n_drones - assigned) {
        seats[i] += 1;
    }
    Ok(seats)
}
