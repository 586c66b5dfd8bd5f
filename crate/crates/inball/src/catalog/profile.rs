//! Piecewise line/arc profile curves in the (x, y) half-plane, revolvable
//! about the y-axis.

use super::CatalogError;

/// One profile piece, parametrized by t in [0, 1].
#[derive(Debug, Clone, Copy)]
pub enum Piece {
    Line { a: (f64, f64), b: (f64, f64) },
    /// Circular arc `center + radius * (cos, sin)(ang0 + t * (ang1 - ang0))`.
    Arc { center: (f64, f64), radius: f64, ang0: f64, ang1: f64 },
}

impl Piece {
    pub fn point(&self, t: f64) -> (f64, f64) {
        match *self {
            Piece::Line { a, b } => (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)),
            Piece::Arc { center, radius, ang0, ang1 } => {
                let ang = ang0 + t * (ang1 - ang0);
                (center.0 + radius * ang.cos(), center.1 + radius * ang.sin())
            }
        }
    }

    /// d/dt of `point`.
    pub fn derivative(&self, t: f64) -> (f64, f64) {
        match *self {
            Piece::Line { a, b } => (b.0 - a.0, b.1 - a.1),
            Piece::Arc { center: _, radius, ang0, ang1 } => {
                let sweep = ang1 - ang0;
                let ang = ang0 + t * sweep;
                (-radius * sweep * ang.sin(), radius * sweep * ang.cos())
            }
        }
    }

    pub fn second_derivative(&self, t: f64) -> (f64, f64) {
        match *self {
            Piece::Line { .. } => (0.0, 0.0),
            Piece::Arc { center: _, radius, ang0, ang1 } => {
                let sweep = ang1 - ang0;
                let ang = ang0 + t * sweep;
                (-radius * sweep * sweep * ang.cos(), -radius * sweep * sweep * ang.sin())
            }
        }
    }

    pub fn min_x(&self) -> f64 {
        (0..=64)
            .map(|k| self.point(k as f64 / 64.0).0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn length_estimate(&self) -> f64 {
        match *self {
            Piece::Line { a, b } => ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt(),
            Piece::Arc { radius, ang0, ang1, .. } => radius * (ang1 - ang0).abs(),
        }
    }
}

/// A connected chain of pieces. `smooth[i]` records whether the tangent
/// lines of pieces `i` and `i+1` agree at their shared junction (for a
/// closed profile the last flag refers to the wrap-around junction).
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    pub pieces: Vec<Piece>,
    pub smooth: Vec<bool>,
    pub closed: bool,
}

impl ProfileCurve {
    /// Builds the chain, verifying endpoint agreement and `x >= 0`, and
    /// deriving the tangency flags from the geometry.
    pub fn new(pieces: Vec<Piece>, closed: bool) -> Result<Self, CatalogError> {
        assert!(!pieces.is_empty());
        let n = pieces.len();
        let junction_count = if closed { n } else { n.saturating_sub(1) };
        let mut smooth = Vec::with_capacity(junction_count);
        for i in 0..junction_count {
            let a = &pieces[i];
            let b = &pieces[(i + 1) % n];
            let pa = a.point(1.0);
            let pb = b.point(0.0);
            let gap = ((pa.0 - pb.0).powi(2) + (pa.1 - pb.1).powi(2)).sqrt();
            if gap > 1e-12 {
                return Err(CatalogError::DisconnectedProfile(gap));
            }
            let da = a.derivative(1.0);
            let db = b.derivative(0.0);
            // Tangent lines agree when the directions are parallel
            // (same or opposite sense; folds count as tangent).
            let cross = da.0 * db.1 - da.1 * db.0;
            let na = (da.0 * da.0 + da.1 * da.1).sqrt();
            let nb = (db.0 * db.0 + db.1 * db.1).sqrt();
            smooth.push(cross.abs() <= 1e-9 * na * nb);
        }
        for p in &pieces {
            let mx = p.min_x();
            if mx < -1e-9 {
                return Err(CatalogError::NonRevolvable(mx));
            }
        }
        Ok(Self { pieces, smooth, closed })
    }

    /// Whether a piece endpoint sits on the revolution axis.
    pub fn touches_axis(&self, piece: usize, end_t: f64) -> bool {
        self.pieces[piece].point(end_t).0.abs() < 1e-9
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_profile_is_smooth_and_closed() {
        use std::f64::consts::PI;
        let pieces = vec![
            Piece::Arc { center: (2.0, 0.0), radius: 1.0, ang0: 0.0, ang1: PI },
            Piece::Arc { center: (2.0, 0.0), radius: 1.0, ang0: PI, ang1: 2.0 * PI },
        ];
        let p = ProfileCurve::new(pieces, true).unwrap();
        assert!(p.smooth.iter().all(|&s| s));
    }

    #[test]
    fn disconnected_profile_rejected() {
        let pieces = vec![
            Piece::Line { a: (0.0, 0.0), b: (1.0, 0.0) },
            Piece::Line { a: (1.5, 0.0), b: (2.0, 0.0) },
        ];
        assert!(ProfileCurve::new(pieces, false).is_err());
    }

    #[test]
    fn negative_x_rejected() {
        let pieces = vec![Piece::Line { a: (-0.5, 0.0), b: (1.0, 0.0) }];
        assert!(matches!(
            ProfileCurve::new(pieces, false),
            Err(CatalogError::NonRevolvable(_))
        ));
    }
}
