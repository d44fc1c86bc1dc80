use serde::{Deserialize, Serialize};

use super::symmetry::D4Element;
use crate::{Error, Result};

/// Scatterer shapes. All shapes are centred on the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Geometry {
    /// Axis-aligned `width × height` rectangle.
    Rectangle { width: f64, height: f64 },
    /// `size × size` square with its upper-right `notch × notch` quadrant removed.
    LShape { size: f64, notch: f64 },
    Disk { radius: f64 },
}

impl Geometry {
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let pos = |name: &str, v: f64, errs: &mut Vec<String>| {
            if !(v > 0.0 && v.is_finite()) {
                errs.push(format!("{name} must be positive (got {v})"));
            }
        };
        match *self {
            Geometry::Rectangle { width, height } => {
                pos("width", width, &mut errs);
                pos("height", height, &mut errs);
            }
            Geometry::LShape { size, notch } => {
                pos("size", size, &mut errs);
                pos("notch", notch, &mut errs);
                if notch >= size {
                    errs.push(format!("notch ({notch}) must be smaller than size ({size})"));
                }
            }
            Geometry::Disk { radius } => pos("radius", radius, &mut errs),
        }
        if errs.is_empty() { Ok(()) } else { Err(Error::Config(errs)) }
    }

    /// Short identifier used in reports and file names.
    pub fn id(&self) -> String {
        match *self {
            Geometry::Rectangle { width, height } => format!("rectangle-{width}x{height}"),
            Geometry::LShape { size, notch } => format!("l-shape-{size}-{notch}"),
            Geometry::Disk { radius } => format!("disk-{radius}"),
        }
    }

    /// Half-widths of the bounding box.
    pub fn half_extent(&self) -> [f64; 2] {
        match *self {
            Geometry::Rectangle { width, height } => [width / 2.0, height / 2.0],
            Geometry::LShape { size, .. } => [size / 2.0, size / 2.0],
            Geometry::Disk { radius } => [radius, radius],
        }
    }

    /// Counter-clockwise vertex list for polygonal shapes.
    pub fn polygon(&self) -> Option<Vec<[f64; 2]>> {
        match *self {
            Geometry::Rectangle { width, height } => {
                let (a, b) = (width / 2.0, height / 2.0);
                Some(vec![[-a, -b], [a, -b], [a, b], [-a, b]])
            }
            Geometry::LShape { size, notch } => {
                let s = size / 2.0;
                let c = s - notch;
                Some(vec![[-s, -s], [s, -s], [s, c], [c, c], [c, s], [-s, s]])
            }
            Geometry::Disk { .. } => None,
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Geometry::Rectangle { width, height } => width * height,
            Geometry::LShape { size, notch } => size * size - notch * notch,
            Geometry::Disk { radius } => std::f64::consts::PI * radius * radius,
        }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self {
            Geometry::Disk { radius } => p[0].hypot(p[1]) < *radius,
            _ => {
                let poly = self.polygon().expect("polygonal shape");
                let mut inside = false;
                let n = poly.len();
                for i in 0..n {
                    let (a, b) = (poly[i], poly[(i + 1) % n]);
                    if (a[1] > p[1]) != (b[1] > p[1]) {
                        let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                        if p[0] < x {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }

    /// Fraction of the box `[x0,x1]×[y0,y1]` covered by the shape.
    pub fn cell_fraction(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
        let area = (x1 - x0) * (y1 - y0);
        match *self {
            Geometry::Disk { radius } => {
                let near_x = if x0 > 0.0 { x0 } else if x1 < 0.0 { x1 } else { 0.0 };
                let near_y = if y0 > 0.0 { y0 } else if y1 < 0.0 { y1 } else { 0.0 };
                if near_x.hypot(near_y) >= radius {
                    return 0.0;
                }
                let far_x = x0.abs().max(x1.abs());
                let far_y = y0.abs().max(y1.abs());
                if far_x.hypot(far_y) <= radius {
                    return 1.0;
                }
                const SS: usize = 64;
                let (dx, dy) = ((x1 - x0) / SS as f64, (y1 - y0) / SS as f64);
                let mut hits = 0usize;
                for i in 0..SS {
                    let x = x0 + (i as f64 + 0.5) * dx;
                    for j in 0..SS {
                        let y = y0 + (j as f64 + 0.5) * dy;
                        if x.hypot(y) < radius {
                            hits += 1;
                        }
                    }
                }
                hits as f64 / (SS * SS) as f64
            }
            _ => {
                let poly = self.polygon().expect("polygonal shape");
                clipped_area(&poly, x0, x1, y0, y1) / area
            }
        }
    }
}

/// Area of a (possibly non-convex) polygon clipped to an axis-aligned box.
fn clipped_area(poly: &[[f64; 2]], x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let mut pts = poly.to_vec();
    let planes: [(usize, f64, bool); 4] = [(0, x0, true), (0, x1, false), (1, y0, true), (1, y1, false)];
    for (axis, c, keep_above) in planes {
        if pts.is_empty() {
            break;
        }
        let inside = |p: &[f64; 2]| if keep_above { p[axis] >= c } else { p[axis] <= c };
        let mut out = Vec::with_capacity(pts.len() + 4);
        for i in 0..pts.len() {
            let cur = pts[i];
            let prev = pts[(i + pts.len() - 1) % pts.len()];
            let (ci, pi) = (inside(&cur), inside(&prev));
            if ci != pi {
                let t = (c - prev[axis]) / (cur[axis] - prev[axis]);
                out.push([prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])]);
            }
            if ci {
                out.push(cur);
            }
        }
        pts = out;
    }
    let n = pts.len();
    let twice: f64 = (0..n).map(|i| {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        a[0] * b[1] - b[0] * a[1]
    }).sum();
    (twice / 2.0).abs()
}

/// Uniform square-cell raster of a scatterer, centred on the origin.
#[derive(Clone, Debug, Serialize)]
pub struct ScattererGrid {
    pub geometry: Geometry,
    pub rho0: f64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    /// Lower-left corner of the raster.
    pub origin: [f64; 2],
    /// Covered area fraction per cell, indexed `iy * nx + ix`.
    pub fractions: Vec<f64>,
}

impl ScattererGrid {
    /// Raster with `cells` cells across the longer side of the bounding box.
    pub fn new(geometry: Geometry, cells: usize, rho0: f64) -> Result<Self> {
        let mut errs = Vec::new();
        if let Err(Error::Config(e)) = geometry.validate() {
            errs.extend(e);
        }
        if !rho0.is_finite() || !(rho0 > 0.0) {
            errs.push(format!("rho0 must be a positive number (got {rho0})"));
        } else if rho0 == 1.0 {
            errs.push("rho0 must be a constant different from one".into());
        }
        if cells < 2 {
            errs.push(format!("need at least 2 cells across the scatterer (got {cells})"));
        }
        if !errs.is_empty() {
            return Err(Error::Config(errs));
        }
        let [ex, ey] = geometry.half_extent();
        let h = 2.0 * ex.max(ey) / cells as f64;
        let count = |e: f64| ((2.0 * e / h) - 1e-9).ceil().max(1.0) as usize;
        let (nx, ny) = (count(ex), count(ey));
        let origin = [-(nx as f64) * h / 2.0, -(ny as f64) * h / 2.0];
        let mut fractions = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            let y0 = origin[1] + iy as f64 * h;
            for ix in 0..nx {
                let x0 = origin[0] + ix as f64 * h;
                fractions.push(geometry.cell_fraction(x0, x0 + h, y0, y0 + h));
            }
        }
        Ok(Self { geometry, rho0, h, nx, ny, origin, fractions })
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn center(&self, ix: usize, iy: usize) -> [f64; 2] {
        [self.origin[0] + (ix as f64 + 0.5) * self.h, self.origin[1] + (iy as f64 + 0.5) * self.h]
    }

    pub fn center_of(&self, c: usize) -> [f64; 2] {
        self.center(c % self.nx, c / self.nx)
    }

    /// Cell-centre indicator: true where the covered fraction is at least one half.
    pub fn mask(&self) -> Vec<bool> {
        self.fractions.iter().map(|&f| f >= 0.5).collect()
    }

    /// Total covered area `h² Σ f`.
    pub fn covered_area(&self) -> f64 {
        self.fractions.iter().sum::<f64>() * self.h * self.h
    }

    /// Same shape with a different contrast.
    pub fn with_rho0(&self, rho0: f64) -> Result<Self> {
        if !rho0.is_finite() || !(rho0 > 0.0) || rho0 == 1.0 {
            return Err(Error::config(format!("rho0 must be positive and different from one (got {rho0})")));
        }
        Ok(Self { rho0, ..self.clone() })
    }

    /// Image of cell `c` under a symmetry of the square lattice, if it lands on the raster.
    pub fn map_cell(&self, g: &D4Element, c: usize) -> Option<usize> {
        let (ix, iy) = ((c % self.nx) as i64, (c / self.nx) as i64);
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        let p = g.apply_i([2 * ix + 1 - nx, 2 * iy + 1 - ny]);
        let (jx, jy) = (p[0] + nx - 1, p[1] + ny - 1);
        if jx < 0 || jy < 0 || jx % 2 != 0 || jy % 2 != 0 {
            return None;
        }
        let (jx, jy) = (jx / 2, jy / 2);
        (jx < nx && jy < ny).then_some((jy * nx + jx) as usize)
    }

    /// Lattice symmetries that leave the area fractions unchanged.
    pub fn symmetry_group(&self) -> Vec<D4Element> {
        D4Element::all()
            .into_iter()
            .filter(|g| {
                (0..self.cells()).all(|c| match self.map_cell(g, c) {
                    Some(d) => (self.fractions[c] - self.fractions[d]).abs() <= 1e-12,
                    None => false,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_one_rejected() {
        let e = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 16, 1.0).unwrap_err();
        assert!(e.to_string().contains("different from one"));
    }

    #[test]
    fn aligned_rectangle_is_exact() {
        let g = ScattererGrid::new(Geometry::Rectangle { width: 1.0, height: 0.5 }, 16, 2.0).unwrap();
        assert_eq!((g.nx, g.ny), (16, 8));
        assert!(g.fractions.iter().all(|&f| f == 1.0));
        assert_eq!(g.symmetry_group().len(), 4);
    }

    #[test]
    fn areas_match() {
        for geo in [
            Geometry::Disk { radius: 0.5 },
            Geometry::LShape { size: 1.0, notch: 0.35 },
            Geometry::Rectangle { width: 0.93, height: 0.41 },
        ] {
            let g = ScattererGrid::new(geo.clone(), 40, 2.0).unwrap();
            let rel = (g.covered_area() - geo.area()).abs() / geo.area();
            assert!(rel < 2e-4, "{geo:?} {rel}");
        }
    }

    #[test]
    fn symmetry_groups() {
        let disk = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 24, 2.0).unwrap();
        assert_eq!(disk.symmetry_group().len(), 8);
        let l = ScattererGrid::new(Geometry::LShape { size: 1.0, notch: 0.5 }, 24, 2.0).unwrap();
        assert_eq!(l.symmetry_group().len(), 2);
    }
}
