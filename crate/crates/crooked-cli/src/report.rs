//! Deterministic plain-text output: every float is printed with 17
//! significant digits (enough to round-trip an f64), so identical inputs
//! produce byte-identical reports and mesh files.

use crooked_core::oracle::{PieceTag, TriangleMesh};
use crooked_core::{AffinePoint, LorentzVector};
use serde::{Deserialize, Serialize};

/// 17 significant digits in scientific notation; `-0` is normalized so the
/// two zero encodings cannot leak into output.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

pub fn fmt_vector(v: LorentzVector) -> String {
    format!("({}, {}, {})", fmt_f64(v.x1), fmt_f64(v.x2), fmt_f64(v.x3))
}

pub fn fmt_point(p: AffinePoint) -> String {
    fmt_vector(p.to_vector())
}

/// Line-oriented report: `key = value` pairs under `[section]` headers.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn section(&mut self, name: &str) {
        if !self.lines.is_empty() {
            self.lines.push(String::new());
        }
        self.lines.push(format!("[{name}]"));
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    pub fn kvf(&mut self, key: &str, value: f64) {
        self.lines.push(format!("{key} = {}", fmt_f64(value)));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

fn group_name(tag: PieceTag) -> &'static str {
    match tag {
        PieceTag::Stem => "stem",
        PieceTag::WingPlus => "wing_plus",
        PieceTag::WingMinus => "wing_minus",
    }
}

/// Wavefront OBJ for a list of leaf meshes: one object per leaf, piece tags
/// as group names, faces 1-indexed into the shared vertex stream.
pub fn obj_for_leaves(leaves: &[(usize, &TriangleMesh)]) -> String {
    let mut out = String::new();
    out.push_str("# crooked plane leaves\n");
    let mut base = 0usize;
    for (index, mesh) in leaves {
        out.push_str(&format!("o leaf_{index:03}\n"));
        for v in &mesh.vertices {
            let v = v.to_vector();
            out.push_str(&format!(
                "v {} {} {}\n",
                fmt_f64(v.x1),
                fmt_f64(v.x2),
                fmt_f64(v.x3)
            ));
        }
        let mut current: Option<PieceTag> = None;
        for (tri, tag) in mesh.triangles.iter().zip(&mesh.tags) {
            if current != Some(*tag) {
                out.push_str(&format!("g {}\n", group_name(*tag)));
                current = Some(*tag);
            }
            out.push_str(&format!(
                "f {} {} {}\n",
                base + tri[0] + 1,
                base + tri[1] + 1,
                base + tri[2] + 1
            ));
        }
        base += mesh.vertices.len();
    }
    out
}

/// Manifest written next to exported leaf meshes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: String,
    pub family: String,
    pub interval: [f64; 2],
    pub count: usize,
    pub extent: f64,
    pub resolution: usize,
    pub leaves: Vec<ManifestLeaf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestLeaf {
    pub index: usize,
    pub file: String,
    pub t: f64,
    pub vertex: [f64; 3],
    pub director: [f64; 3],
    pub vertices: usize,
    pub triangles: usize,
}

impl Manifest {
    pub fn render(&self) -> String {
        toml::to_string_pretty(self).expect("manifest always serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_digits_and_total() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        let x = std::f64::consts::PI;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn obj_indices_are_one_based_and_grouped() {
        use crooked_core::{mesh_crooked_plane, CrookedPlane};
        let cp = CrookedPlane::new(
            crooked_core::AffinePoint::new(0.0, 0.0, 0.0),
            LorentzVector::new(1.0, 0.0, 0.0),
        )
        .unwrap();
        let mesh = mesh_crooked_plane(&cp, 2.0, 4).unwrap();
        let obj = obj_for_leaves(&[(0, &mesh)]);
        assert!(obj.contains("o leaf_000\n"));
        for g in ["g stem", "g wing_plus", "g wing_minus"] {
            assert!(obj.contains(g), "missing `{g}`");
        }
        assert!(!obj.contains(" 0 "), "OBJ faces must be 1-indexed");
        let max_index = obj
            .lines()
            .filter(|l| l.starts_with("f "))
            .flat_map(|l| {
                l.split_whitespace()
                    .skip(1)
                    .map(|s| s.parse::<usize>().unwrap())
            })
            .max()
            .unwrap();
        assert_eq!(max_index, mesh.vertices.len());
    }
}
