use num_complex::Complex64;

/// A point of `Pⁿ`, stored with its largest homogeneous coordinate of modulus 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    /// Normalizes a tuple; `None` when every coordinate vanishes.
    pub fn new(coords: Vec<Complex64>) -> Option<Self> {
        let max = coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !max.is_finite() || max <= 0.0 {
            return None;
        }
        Some(ProjectivePoint {
            coords: coords.into_iter().map(|c| c / max).collect(),
        })
    }

    /// Builds a point from `(log|w_j|, arg w_j)` pairs, subtracting the largest
    /// log-modulus before exponentiating.
    pub fn from_log_polar(values: &[(f64, f64)]) -> Option<Self> {
        let top = values
            .iter()
            .map(|v| v.0)
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY || top.is_nan() {
            return None;
        }
        let coords = values
            .iter()
            .map(|&(lm, arg)| {
                if lm == top {
                    Complex64::from_polar(1.0, arg)
                } else {
                    Complex64::from_polar((lm - top).exp(), arg)
                }
            })
            .collect();
        Some(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Chordal Fubini–Study distance `sqrt(1 − |⟨p,q⟩|² / (‖p‖²‖q‖²))`, in `[0, 1]`.
///
/// The numerator is evaluated through Lagrange's identity
/// `‖p‖²‖q‖² − |⟨p,q⟩|² = Σ_{i<j} |p_i q_j − p_j q_i|²`, which keeps small
/// distances accurate.
pub fn fs_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    assert_eq!(p.coords.len(), q.coords.len(), "points live in different spaces");
    let np: f64 = p.coords.iter().map(|c| c.norm_sqr()).sum();
    let nq: f64 = q.coords.iter().map(|c| c.norm_sqr()).sum();
    let mut cross = 0.0;
    for i in 0..p.coords.len() {
        for j in (i + 1)..p.coords.len() {
            cross += (p.coords[i] * q.coords[j] - p.coords[j] * q.coords[i]).norm_sqr();
        }
    }
    (cross / (np * nq)).sqrt().min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[(f64, f64)]) -> ProjectivePoint {
        ProjectivePoint::new(v.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
    }

    #[test]
    fn fs_distance_examples() {
        let a = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let b = pt(&[(0.0, 0.0), (1.0, 0.0)]);
        let c = pt(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(fs_distance(&a, &a), 0.0);
        assert_eq!(fs_distance(&a, &b), 1.0);
        // oracle: 1 − |<c,a>|² / (|c|²|a|²) = 1 − 1/2
        assert!((fs_distance(&c, &a) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(fs_distance(&a, &c), fs_distance(&c, &a));
    }

    #[test]
    fn all_zero_tuple_is_rejected() {
        assert!(ProjectivePoint::new(vec![Complex64::new(0.0, 0.0); 3]).is_none());
        assert!(ProjectivePoint::from_log_polar(&[(f64::NEG_INFINITY, 0.0); 2]).is_none());
    }

    #[test]
    fn normalization_puts_max_modulus_at_one() {
        let p = pt(&[(3.0, 4.0), (1.0, 0.0)]);
        assert_eq!(p.coords()[0].norm(), 1.0);
        assert!((p.coords()[1].norm() - 0.2).abs() < 1e-15);
    }
}
