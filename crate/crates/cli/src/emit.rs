//! Text formats written by the subcommands: CSV, JSON, SVG and PGM.

use std::fmt::Write as _;

use wulff_core::geometry::Vec2;

/// `x` with `digits` significant digits, trailing zeros trimmed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn csv_num(x: f64) -> String {
    sig(x, 12)
}

/// Builds a CSV document with a header row and LF line endings.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn points_csv(points: &[Vec2]) -> String {
    let mut csv = Csv::new(&["x", "y"]);
    for p in points {
        csv.row(&[csv_num(p.x), csv_num(p.y)]);
    }
    csv.finish()
}

fn svg_num(x: f64) -> String {
    sig(x, 9)
}

fn svg_path(points: &[Vec2], close: bool) -> String {
    let mut d = String::new();
    for (k, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{},{} ", if k == 0 { "M" } else { "L" }, svg_num(p.x), svg_num(-p.y));
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// Closed polygon in the viewBox `[-1.2 R, 1.2 R]^2`, `R` the largest vertex norm.
pub fn polygon_svg(points: &[Vec2]) -> String {
    let r = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-12);
    let lo = -1.2 * r;
    let side = 2.4 * r;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <path d=\"{}\" fill=\"#dbe8f5\" stroke=\"#1f4e79\" stroke-width=\"{}\"/>\n</svg>\n",
        svg_num(lo),
        svg_num(lo),
        svg_num(side),
        svg_num(side),
        svg_path(points, true),
        svg_num(0.005 * side)
    )
}

/// Open polylines in the window `[0, w]^2`; the first is drawn as the reference.
pub fn overlay_svg(reference: &[Vec2], others: &[Vec<Vec2>], w: f64) -> String {
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        svg_num(-0.05 * w),
        svg_num(-1.05 * w),
        svg_num(1.1 * w),
        svg_num(1.1 * w)
    );
    let stroke = svg_num(0.003 * w);
    for curve in others {
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"#7f7f7f\" stroke-opacity=\"0.3\" stroke-width=\"{stroke}\"/>",
            svg_path(curve, false)
        );
    }
    let _ = writeln!(
        out,
        "<path d=\"{}\" fill=\"none\" stroke=\"#c00000\" stroke-width=\"{}\"/>",
        svg_path(reference, false),
        svg_num(0.006 * w)
    );
    out.push_str("</svg>\n");
    out
}

/// Plain (`P2`) greymap: `+1` white, `-1` black, first row at the top.
pub fn spins_pgm(side: usize, spin: impl Fn(usize, usize) -> i8) -> String {
    let mut out = format!("P2\n{side} {side}\n255\n");
    for row in (0..side).rev() {
        let line: Vec<&str> = (0..side).map(|x| if spin(x, row) > 0 { "255" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Exact integer as a JSON number.
pub fn json_int(x: &num_bigint::BigInt) -> serde_json::Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(sig(2.0, 12), "2");
        assert_eq!(sig(-0.000125, 12), "-0.000125");
        assert_eq!(sig(1.5e-9, 12), "1.5e-9");
        assert_eq!(sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(sig(1.0 / 3.0, 9), "0.333333333");
    }

    #[test]
    fn pgm_layout() {
        let pgm = spins_pgm(2, |x, y| if x == 0 && y == 1 { 1 } else { -1 });
        assert_eq!(pgm, "P2\n2 2\n255\n255 0\n0 0\n");
    }

    #[test]
    fn big_integers_stay_exact() {
        let big: num_bigint::BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(json_int(&big).to_string(), "123456789012345678901234567890");
    }
}
