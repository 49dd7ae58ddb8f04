use std::f64::consts::PI;
use std::io::{self, Write};

use super::conic::{WallClass, WallConic};
use crate::arith::QuadExt;

fn f(x: &crate::arith::Rational) -> f64 {
    QuadExt::from(x.clone()).to_f64()
}

/// `n` points `(α, β)` with `α > 0` on the wall. Vertical lines are sampled for
/// `α ∈ (0, alpha_max]`; empty and degenerate walls give no points.
pub fn sample_conic(wall: &WallConic, n: usize, alpha_max: f64) -> Vec<(f64, f64)> {
    match wall.class {
        WallClass::Ellipse => {
            let c = f(&wall.center_beta().expect("ellipse"));
            let apex = f(&wall.apex_alpha_sq().expect("ellipse"));
            let (ra, rb) = (apex.sqrt(), (apex / 3.0).sqrt());
            (0..n)
                .map(|k| {
                    let t = PI * (k as f64 + 0.5) / n as f64;
                    (ra * t.sin(), c + rb * t.cos())
                })
                .collect()
        }
        WallClass::Line => {
            let b = f(&wall.center_beta().expect("line"));
            (0..n)
                .map(|k| (alpha_max * (k as f64 + 1.0) / n as f64, b))
                .collect()
        }
        WallClass::Empty | WallClass::Degenerate => Vec::new(),
    }
}

/// Writes `alpha,beta,wall_id` rows, `resolution` samples per wall, wall ids in input order.
pub fn emit_plot_csv<W: Write>(
    walls: &[WallConic],
    resolution: usize,
    alpha_max: f64,
    mut out: W,
) -> io::Result<()> {
    writeln!(out, "alpha,beta,wall_id")?;
    for (id, wall) in walls.iter().enumerate() {
        for (a, b) in sample_conic(wall, resolution, alpha_max) {
            writeln!(out, "{a:.16e},{b:.16e},{id}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::ChernVector;
    use crate::walls::self_wall;

    #[test]
    fn samples_lie_on_wall() {
        let w = self_wall(&ChernVector::parse("2,1,-1,0").unwrap()).unwrap();
        let pts = sample_conic(&w, 50, 1.0);
        assert_eq!(pts.len(), 50);
        for (a, b) in pts {
            assert!(a > 0.0);
            assert!(w.eval_f64(a, b).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_layout() {
        let w = self_wall(&ChernVector::parse("1,1,0,0").unwrap()).unwrap();
        let mut buf = Vec::new();
        emit_plot_csv(&[w.clone(), w], 3, 1.0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "alpha,beta,wall_id");
        assert_eq!(lines.len(), 7);
        assert!(lines[6].ends_with(",1"));
        let first: Vec<&str> = lines[1].split(',').collect();
        assert!(first[0].contains('e'));
    }
}
