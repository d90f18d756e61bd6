//! Graph and incidence exports: DOT and CSV adjacency, pencil JSON.

use std::fmt::Write;

use serde::Serialize;

use crate::apsg::{PencilStructure, SemipolarSpace};

fn header(space: &SemipolarSpace) -> String {
    format!(
        "points indexed row-major over (v, u) coordinates, v varying slowest; p = {}, nu = {}, n = {}, {} points",
        space.field().modulus(),
        space.nu(),
        space.n(),
        space.size()
    )
}

fn edges(space: &SemipolarSpace) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..space.size()).flat_map(move |i| space.neighbors(i).iter().filter(move |&j| j > i).map(move |j| (i, j)))
}

/// Undirected DOT graph of `~`, self-loops omitted.
pub fn adjacency_dot(space: &SemipolarSpace) -> String {
    let mut out = String::new();
    writeln!(out, "// {}", header(space)).unwrap();
    out.push_str("graph adjacency {\n");
    for i in 0..space.size() {
        let c: Vec<String> = space.grid().coords(i).iter().map(|x| x.to_string()).collect();
        writeln!(out, "  {i} [label=\"{}\"];", c.join(",")).unwrap();
    }
    for (i, j) in edges(space) {
        writeln!(out, "  {i} -- {j};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edge list `p_index,q_index` with `p_index < q_index`.
pub fn adjacency_csv(space: &SemipolarSpace) -> String {
    let mut out = String::new();
    writeln!(out, "# {}", header(space)).unwrap();
    out.push_str("p_index,q_index\n");
    for (i, j) in edges(space) {
        writeln!(out, "{i},{j}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct PencilExport<'a> {
    at: Vec<u32>,
    /// Directions of the singular lines through `at`.
    points: Vec<Vec<u32>>,
    /// Singular planes through `at`, as indices into `points`.
    lines: &'a [Vec<usize>],
    image: Vec<Vec<u32>>,
    null_system_lines: usize,
    isomorphic: bool,
}

pub fn pencil_json(pencil: &PencilStructure) -> String {
    let e = PencilExport {
        at: pencil.at.coords(),
        points: pencil.lines.iter().map(|l| l.dir().coords()).collect(),
        lines: &pencil.planes,
        image: pencil.image.iter().map(|v| v.coords().to_vec()).collect(),
        null_system_lines: pencil.null_system_lines,
        isomorphic: pencil.isomorphic,
    };
    serde_json::to_string_pretty(&e).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Semiform;
    use crate::gf::Field;
    use crate::linalg::Budget;

    fn sym1() -> SemipolarSpace {
        SemipolarSpace::new(&Semiform::symplectic(Field::new(3).unwrap(), 1).unwrap(), Budget::default()).unwrap()
    }

    #[test]
    fn dot_has_every_vertex() {
        let s = sym1();
        let dot = adjacency_dot(&s);
        assert!(dot.starts_with("// points indexed row-major"));
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 27);
        // Each point has 8 neighbours besides itself.
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 27 * 8 / 2);
    }

    #[test]
    fn csv_matches_adjacency() {
        let s = sym1();
        let csv = adjacency_csv(&s);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with('#'));
        assert_eq!(lines.next(), Some("p_index,q_index"));
        for row in lines {
            let (a, b) = row.split_once(',').unwrap();
            let (a, b): (usize, usize) = (a.parse().unwrap(), b.parse().unwrap());
            assert!(a < b && s.adjacent_idx(a, b));
        }
    }

    #[test]
    fn pencil_export_roundtrips_as_json() {
        let s = sym1();
        let p = s.pencil_structure(&s.origin()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&pencil_json(&p)).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 4);
        assert_eq!(v["isomorphic"], true);
    }
}
