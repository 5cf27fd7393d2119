//! Deterministic SVG emission: white-queen cells in red, black-queen cells
//! in blue, optional board grid.
//!
//! Geometry stays in math convention (origin bottom-left); the y-axis flip
//! happens only at emission. Output is byte-stable for identical scenes:
//! cells in region order, each vertex loop rotated to start at its
//! lexicographically smallest vertex, coordinates printed with nine
//! fractional digits.

use crate::geometry::Region;
use crate::rational::to_f64;
use std::fmt::Write;

pub const WHITE_FILL: &str = "#FF0000";
pub const BLACK_FILL: &str = "#0000FF";

#[derive(Debug, Clone)]
pub struct Scene {
    pub white: Region,
    pub black: Region,
    pub grid_n: Option<u32>,
    pub canvas_px: u32,
}

impl Scene {
    pub fn new(white: Region, black: Region) -> Self {
        Scene { white, black, grid_n: None, canvas_px: 600 }
    }

    pub fn with_grid(mut self, n: u32) -> Self {
        assert!(n >= 1);
        self.grid_n = Some(n);
        self
    }
}

pub fn to_svg(scene: &Scene) -> String {
    let size = scene.canvas_px;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"  <rect x="0" y="0" width="{size}" height="{size}" fill="#FFFFFF"/>"##
    )
    .unwrap();

    for (region, fill) in [(&scene.white, WHITE_FILL), (&scene.black, BLACK_FILL)] {
        for cell in region.cells() {
            let canonical = cell.canonical_rotation();
            let mut d = String::new();
            for (i, v) in canonical.vertices().iter().enumerate() {
                let px = to_f64(&v.x) * size as f64;
                // Flip to screen coordinates.
                let py = (1.0 - to_f64(&v.y)) * size as f64;
                let op = if i == 0 { 'M' } else { 'L' };
                write!(d, "{op} {px:.9},{py:.9} ").unwrap();
            }
            d.push('Z');
            writeln!(out, r#"  <path d="{d}" fill="{fill}"/>"#).unwrap();
        }
    }

    if let Some(n) = scene.grid_n {
        writeln!(out, r##"  <g stroke="#808080" stroke-width="0.5">"##).unwrap();
        for i in 0..n {
            let t = i as f64 / n as f64 * size as f64;
            writeln!(
                out,
                r#"    <line x1="{t:.9}" y1="0" x2="{t:.9}" y2="{size}"/>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"    <line x1="0" y1="{t:.9}" x2="{size}" y2="{t:.9}"/>"#
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }

    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{find, jubin, ParamPoint};
    use crate::geometry::black_region;
    use crate::rational::rat;

    fn jubin_scene() -> Scene {
        let family = find("jubin").unwrap();
        let white = family.build_white(&jubin::optimum_point()).unwrap();
        let black = black_region(&white).unwrap();
        Scene::new(white, black)
    }

    #[test]
    fn jubin_scene_has_exactly_four_paths() {
        let svg = to_svg(&jubin_scene());
        assert_eq!(svg.matches("<path").count(), 4);
        assert_eq!(svg.matches(WHITE_FILL).count(), 2);
        assert_eq!(svg.matches(BLACK_FILL).count(), 2);
    }

    #[test]
    fn empty_scene_is_a_valid_document_with_no_paths() {
        let svg = to_svg(&Scene::new(Region::empty(), Region::empty()));
        assert_eq!(svg.matches("<path").count(), 0);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn triangle_scene_with_grid_has_two_paths_and_240_lines() {
        let family = find("triangle").unwrap();
        let p = ParamPoint::new(family, vec![rat(1, 2)]).unwrap();
        let white = family.build_white(&p).unwrap();
        let black = black_region(&white).unwrap();
        let svg = to_svg(&Scene::new(white, black).with_grid(120));
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<line").count(), 240);
    }

    #[test]
    fn output_is_byte_identical_across_calls() {
        assert_eq!(to_svg(&jubin_scene()), to_svg(&jubin_scene()));
    }

    #[test]
    fn every_path_closes_a_polygon_with_three_plus_vertices() {
        let svg = to_svg(&jubin_scene());
        for line in svg.lines().filter(|l| l.contains("<path")) {
            assert!(line.contains('Z'));
            assert!(line.matches("L ").count() >= 2);
        }
    }
}
