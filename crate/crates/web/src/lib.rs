//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Every query returns a JSON string; the page parses it and recolours the grid.

use semipolar::apsg::SemipolarSpace;
use semipolar::metric::{bisector_m, bisector_t, sphere, Bisector};
use semipolar::{Budget, Field, Semiform};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// The symplectic affine polar space over `GF(p)` with `n = 2m`.
#[wasm_bindgen]
pub struct Demo {
    space: SemipolarSpace,
}

#[derive(Serialize)]
struct Layout {
    p: u32,
    nu: usize,
    n: usize,
    size: usize,
    /// One block per value of `v`; inside a block, `u` fills `rows × cols`.
    blocks: usize,
    rows: usize,
    cols: usize,
    coords: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct LineView {
    dir: Vec<u32>,
    points: Vec<usize>,
}

#[derive(Serialize)]
struct BisectorView {
    classification: String,
    equation: Option<serde_json::Value>,
    points: Vec<usize>,
}

impl From<Bisector> for BisectorView {
    fn from(b: Bisector) -> Self {
        let r = b.report();
        BisectorView {
            classification: serde_json::to_value(r.classification).unwrap().as_str().unwrap_or_default().to_string(),
            equation: r.equation.map(|e| serde_json::to_value(e).unwrap()),
            points: b.points,
        }
    }
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(p: u32, m: usize) -> Result<Demo, String> {
        let field = Field::new(p).map_err(|e| e.to_string())?;
        let rho = Semiform::symplectic(field, m).map_err(|e| e.to_string())?;
        let space = SemipolarSpace::new(&rho, Budget::default()).map_err(|e| e.to_string())?;
        Ok(Demo { space })
    }

    pub fn size(&self) -> usize {
        self.space.size()
    }

    pub fn layout(&self) -> String {
        let s = &self.space;
        let q = s.field().modulus() as usize;
        let n = s.n();
        let cols = q.pow(n.div_ceil(2) as u32);
        let layout = Layout {
            p: s.field().modulus(),
            nu: s.nu(),
            n,
            size: s.size(),
            blocks: q.pow(s.nu() as u32),
            rows: q.pow((n / 2) as u32),
            cols,
            coords: (0..s.size()).map(|i| s.grid().coords(i).to_vec()).collect(),
        };
        serde_json::to_string(&layout).unwrap()
    }

    /// Points adjacent to point `i`, with the affine dimension of that set.
    pub fn joinable(&self, i: usize) -> Result<String, String> {
        let p = self.point(i)?;
        let (members, dim) = self.space.joinable_subspace(&p);
        Ok(json!({ "point": i, "members": members, "dim": dim }).to_string())
    }

    /// Singular lines through point `i`, one entry per direction.
    pub fn singular_lines(&self, i: usize) -> Result<String, String> {
        let p = self.point(i)?;
        let lines: Vec<LineView> = self
            .space
            .singular_lines_through(&p)
            .iter()
            .map(|l| LineView { dir: l.dir().coords(), points: self.space.line_indices(l) })
            .collect();
        Ok(serde_json::to_string(&json!({ "point": i, "lines": lines })).unwrap())
    }

    /// The two bisectors and the sphere of the pair `(i, j)`.
    pub fn bisectors(&self, i: usize, j: usize) -> Result<String, String> {
        let (p1, p2) = (self.point(i)?, self.point(j)?);
        let s = &self.space;
        let view = |b: semipolar::Result<Bisector>| b.map(BisectorView::from).map_err(|e| e.to_string());
        let out = json!({
            "pair": [i, j],
            "t": view(bisector_t(s, &p1, &p2))?,
            "m": view(bisector_m(s, &p1, &p2))?,
            "sphere": view(sphere(s, &p1, &p2))?,
        });
        Ok(out.to_string())
    }
}

impl Demo {
    fn point(&self, i: usize) -> Result<semipolar::Point, String> {
        if i < self.space.size() {
            Ok(self.space.point(i))
        } else {
            Err(format!("point index {i} out of range"))
        }
    }
}
