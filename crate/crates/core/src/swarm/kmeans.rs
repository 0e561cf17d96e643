//! Deterministic Lloyd's k-means over player positions.

use crate::geom::{distance, Vec2};

pub const MAX_ITERATIONS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    pub centroids: Vec<Vec2>,
    pub sizes: Vec<usize>,
    /// Cluster index of each input point.
    pub labels: Vec<usize>,
}

fn nearest_centroid(p: Vec2, centroids: &[Vec2]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, &centroid) in centroids.iter().enumerate() {
        let d = distance(p, centroid);
        // strict: ties stay with the lower index
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

/// Clusters `positions` (given in ascending player-id order) into `k` groups.
///
/// Centroids start at the first `k` positions; each iteration assigns
/// every point to its nearest centroid (ties to the lower index) and moves
/// each centroid to the mean of its points. An empty cluster keeps its
/// centroid. Stops after [`MAX_ITERATIONS`] or when centroids stop moving.
/// `k` is clamped to `1..=positions.len()`.
pub fn cluster_players(positions: &[Vec2], k: usize) -> Clustering {
    if positions.is_empty() {
        return Clustering {
            centroids: Vec::new(),
            sizes: Vec::new(),
            labels: Vec::new(),
        };
    }
    let k = k.clamp(1, positions.len());
    let mut centroids: Vec<Vec2> = positions[..k].to_vec();
    let mut labels = vec![0usize; positions.len()];
    let mut sizes = vec![0usize; k];

    for _ in 0..MAX_ITERATIONS {
        let mut sums = vec![Vec2::ZERO; k];
        sizes.iter_mut().for_each(|s| *s = 0);
        for (label, &p) in labels.iter_mut().zip(positions) {
            let c = nearest_centroid(p, &centroids);
            *label = c;
            sums[c] += p;
            sizes[c] += 1;
        }
        let updated: Vec<Vec2> = (0..k)
            .map(|c| {
                if sizes[c] == 0 {
                    centroids[c]
                } else {
                    sums[c] * (1.0 / sizes[c] as f64)
                }
            })
            .collect();
        let converged = updated == centroids;
        centroids = updated;
        if converged {
            break;
        }
    }

    Clustering {
        centroids,
        sizes,
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Vec2> {
        v.iter().map(|&(x, y)| Vec2::new(x, y)).collect()
    }

    #[test]
    fn two_obvious_clusters() {
        let c = cluster_players(&pts(&[(0.0, 0.0), (0.0, 1.0), (10.0, 10.0), (10.0, 11.0)]), 2);
        assert_eq!(c.centroids, pts(&[(0.0, 0.5), (10.0, 10.5)]));
        assert_eq!(c.sizes, vec![2, 2]);
        assert_eq!(c.labels, vec![0, 0, 1, 1]);
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let p = pts(&[(1.0, 2.0), (3.0, 8.0), (8.0, 5.0)]);
        let c = cluster_players(&p, 1);
        assert_eq!(c.centroids, vec![Vec2::new(4.0, 5.0)]);
        assert_eq!(c.sizes, vec![3]);
    }

    #[test]
    fn identical_points_collapse() {
        let p = pts(&[(3.0, 3.0); 4]);
        let c = cluster_players(&p, 9);
        assert_eq!(c.centroids.len(), 4);
        assert!(c.centroids.iter().all(|&q| q == Vec2::new(3.0, 3.0)));
        assert_eq!(c.sizes, vec![4, 0, 0, 0]);
    }

    #[test]
    fn empty_input() {
        assert!(cluster_players(&[], 3).centroids.is_empty());
    }
}
