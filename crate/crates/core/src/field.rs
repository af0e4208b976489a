//! Direction-dependent functions on the unit circle or sphere.
//!
//! A [`DirectionField`] is a surface tension (even, bounded below by a
//! positive constant) or a more general nonnegative direction function.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{icosphere, Vec2, Vec3};

type Evaluator = Arc<dyn Fn(Vec3) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Constant(f64),
    L1,
    Cos4 { amplitude: f64 },
    /// Sorted angles in `[0, 2pi)` with values, interpolated periodically.
    Table(Vec<(f64, f64)>),
    Custom(Evaluator),
}

/// Positive (or nonnegative) function of a unit normal.
#[derive(Clone)]
pub struct DirectionField {
    name: String,
    /// Surface dimension `d`; the ambient space is `d + 1` dimensional.
    dimension: usize,
    even: bool,
    lower_bound: f64,
    scale: f64,
    kind: Kind,
}

impl fmt::Debug for DirectionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectionField")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("even", &self.even)
            .field("scale", &self.scale)
            .finish()
    }
}

impl DirectionField {
    pub fn isotropic(dimension: usize, value: f64) -> Self {
        Self {
            name: "isotropic".into(),
            dimension,
            even: true,
            lower_bound: value,
            scale: 1.0,
            kind: Kind::Constant(value),
        }
    }

    /// `|n_1| + ... + |n_{d+1}|`, the support function of the cube.
    pub fn l1(dimension: usize) -> Self {
        Self {
            name: "l1".into(),
            dimension,
            even: true,
            lower_bound: 1.0,
            scale: 1.0,
            kind: Kind::L1,
        }
    }

    /// `1 + a cos(4 theta)` in the plane; in 3D the cubic analogue
    /// `1 + a (5/2)(n_1^4 + n_2^4 + n_3^4 - 3/5)`.
    pub fn cos4(dimension: usize, amplitude: f64) -> Self {
        Self {
            name: "cos4".into(),
            dimension,
            even: true,
            lower_bound: 1.0 - amplitude.abs(),
            scale: 1.0,
            kind: Kind::Cos4 { amplitude },
        }
    }

    /// Named built-in: `isotropic`, `l1` or `cos4` (amplitude 0.3).
    pub fn builtin(name: &str, dimension: usize) -> Result<Self> {
        match name {
            "isotropic" => Ok(Self::isotropic(dimension, 1.0)),
            "l1" => Ok(Self::l1(dimension)),
            "cos4" => Ok(Self::cos4(dimension, 0.3)),
            _ => Err(Error::InvalidParameter(format!(
                "unknown direction field '{name}' (expected isotropic, l1 or cos4)"
            ))),
        }
    }

    /// Planar table of `(angle, value)` samples, linearly interpolated in
    /// the angle and extended periodically.
    pub fn tabulated(samples: &[(f64, f64)], even: bool) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter(
                "tabulated field needs at least two samples".into(),
            ));
        }
        let mut table: Vec<(f64, f64)> = samples
            .iter()
            .map(|&(a, v)| (a.rem_euclid(TAU), v))
            .collect();
        if table.iter().any(|(a, v)| !a.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite table entry".into()));
        }
        table.sort_by(|a, b| a.0.total_cmp(&b.0));
        table.dedup_by(|b, a| (a.0 - b.0).abs() < 1e-15);
        let lower = table.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        Ok(Self {
            name: "tabulated".into(),
            dimension: 1,
            even,
            lower_bound: lower,
            scale: 1.0,
            kind: Kind::Table(table),
        })
    }

    /// Arbitrary evaluator; planar fields receive `z = 0`.
    pub fn custom(
        name: &str,
        dimension: usize,
        even: bool,
        lower_bound: f64,
        f: impl Fn(Vec3) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dimension,
            even,
            lower_bound,
            scale: 1.0,
            kind: Kind::Custom(Arc::new(f)),
        }
    }

    /// Planar custom evaluator.
    pub fn custom2(
        name: &str,
        even: bool,
        lower_bound: f64,
        f: impl Fn(Vec2) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::custom(name, 1, even, lower_bound, move |n| f(Vec2::new(n.x, n.y)))
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let mut out = self.clone();
        out.scale *= lambda;
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn lower_bound(&self) -> f64 {
        self.lower_bound * self.scale
    }

    pub fn eval(&self, n: Vec3) -> f64 {
        let raw = match &self.kind {
            Kind::Constant(c) => *c,
            Kind::L1 => n.x.abs() + n.y.abs() + n.z.abs(),
            Kind::Cos4 { amplitude } => {
                if self.dimension == 1 {
                    let theta = n.y.atan2(n.x);
                    1.0 + amplitude * (4.0 * theta).cos()
                } else {
                    let s = n.x.powi(4) + n.y.powi(4) + n.z.powi(4);
                    1.0 + amplitude * 2.5 * (s - 0.6)
                }
            }
            Kind::Table(table) => interpolate_periodic(table, n.y.atan2(n.x)),
            Kind::Custom(f) => f(n),
        };
        raw * self.scale
    }

    pub fn eval2(&self, n: Vec2) -> f64 {
        self.eval(Vec3::new(n.x, n.y, 0.0))
    }

    /// Sample directions used for validation: `count` uniform angles in
    /// the plane, an icosphere in space.
    pub fn sample_directions(&self, count: usize) -> Vec<Vec3> {
        if self.dimension == 1 {
            (0..count)
                .map(|k| {
                    let v = Vec2::from_angle(TAU * (k as f64 + 0.5) / count as f64);
                    Vec3::new(v.x, v.y, 0.0)
                })
                .collect()
        } else {
            icosphere(3)
        }
    }

    /// Checks positivity and, for even fields, `f(n) = f(-n)` on sampled
    /// directions.
    pub fn validate_surface_tension(&self) -> Result<()> {
        for n in self.sample_directions(720) {
            let v = self.eval(n);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::RejectedInput(format!(
                    "{} takes the non-positive value {v} at ({:.6}, {:.6}, {:.6})",
                    self.name, n.x, n.y, n.z
                )));
            }
            if self.even && (v - self.eval(-n)).abs() > 1e-12 * v.abs().max(1.0) {
                return Err(Error::RejectedInput(format!(
                    "{} is declared even but differs at opposite normals",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

fn interpolate_periodic(table: &[(f64, f64)], angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    let idx = table.partition_point(|t| t.0 <= a);
    let (lo, hi) = if idx == 0 || idx == table.len() {
        let last = table[table.len() - 1];
        let first = table[0];
        let lo = (last.0 - TAU, last.1);
        let hi = (first.0 + TAU, first.1);
        if idx == 0 {
            (lo, first)
        } else {
            (last, hi)
        }
    } else {
        (table[idx - 1], table[idx])
    };
    let t = (a - lo.0) / (hi.0 - lo.0);
    lo.1 + t * (hi.1 - lo.1)
}

/// Parses a CSV table with rows `angle,value` or `x,y,value`; a header row
/// and `#` comments are skipped.
pub fn parse_direction_table(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        let nums: std::result::Result<Vec<f64>, _> = cols.iter().map(|c| c.parse::<f64>()).collect();
        let nums = match nums {
            Ok(v) => v,
            Err(_) if rows.is_empty() && lineno == 0 => continue,
            Err(_) => {
                return Err(Error::InvalidParameter(format!(
                    "line {}: not a numeric row",
                    lineno + 1
                )))
            }
        };
        match nums.as_slice() {
            [a, v] => rows.push((*a, *v)),
            [x, y, v] => rows.push((y.atan2(*x), *v)),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "line {}: expected 2 or 3 columns",
                    lineno + 1
                )))
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_interpolates_linearly_and_wraps() {
        let f = DirectionField::tabulated(&[(0.0, 1.0), (std::f64::consts::PI, 3.0)], false)
            .unwrap();
        assert!((f.eval2(Vec2::from_angle(std::f64::consts::FRAC_PI_2)) - 2.0).abs() < 1e-12);
        assert!((f.eval2(Vec2::from_angle(-std::f64::consts::FRAC_PI_2)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn builtins_are_valid_tensions() {
        for name in ["isotropic", "l1", "cos4"] {
            for d in [1, 2] {
                DirectionField::builtin(name, d)
                    .unwrap()
                    .validate_surface_tension()
                    .unwrap();
            }
        }
    }

    #[test]
    fn negative_tension_rejected() {
        let f = DirectionField::custom2("bad", true, 0.0, |n| n.x.abs() - 0.5);
        assert!(matches!(
            f.validate_surface_tension(),
            Err(Error::RejectedInput(_))
        ));
    }

    #[test]
    fn parses_both_row_forms() {
        let rows = parse_direction_table("angle,value\n0,1\n# c\n0,1,2\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[1].0 - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
