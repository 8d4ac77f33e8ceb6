//! SVG route maps.

use std::fmt::Write as _;

use crate::document::SolutionDocument;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

/// Maps instance coordinates onto the canvas:
/// `cx = margin + (x - min_x) * scale`, `cy = margin + (max_y - y) * scale`
/// (y grows upwards in the instance, downwards in SVG).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min_x: f64,
    pub max_y: f64,
    pub scale: f64,
    pub margin: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    /// Fits `points` into a `size`-pixel-wide plot area, preserving aspect.
    pub fn fit(points: impl IntoIterator<Item = (f64, f64)>, size: f64, margin: f64) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        let scale = size / extent;
        Viewport {
            min_x: x0,
            max_y: y1,
            scale,
            margin,
            width: (x1 - x0) * scale + 2.0 * margin,
            height: (y1 - y0) * scale + 2.0 * margin,
        }
    }

    pub fn to_canvas(&self, x: f64, y: f64) -> (f64, f64) {
        (self.margin + (x - self.min_x) * self.scale, self.margin + (self.max_y - y) * self.scale)
    }

    pub fn from_canvas(&self, cx: f64, cy: f64) -> (f64, f64) {
        ((cx - self.margin) / self.scale + self.min_x, self.max_y - (cy - self.margin) / self.scale)
    }
}

pub fn render_svg(doc: &SolutionDocument) -> String {
    let points = std::iter::once((doc.depot.x, doc.depot.y))
        .chain(doc.routes.iter().flat_map(|r| r.stops.iter().map(|s| (s.x, s.y))));
    let vp = Viewport::fit(points, 600.0, 30.0);
    let legend_w = 190.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
        w = vp.width + legend_w,
        h = vp.height.max(40.0 + 16.0 * doc.routes.len() as f64),
    );
    let _ = writeln!(
        s,
        r#"<!-- viewport: cx = {m} + (x - {x0}) * {k}; cy = {m} + ({y1} - y) * {k} -->"#,
        m = vp.margin,
        x0 = vp.min_x,
        y1 = vp.max_y,
        k = vp.scale
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (k, r) in doc.routes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = r
            .stops
            .iter()
            .map(|st| {
                let (cx, cy) = vp.to_canvas(st.x, st.y);
                format!("{cx:.2},{cy:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="route" data-vehicle="{}" points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            r.vehicle,
            pts.join(" ")
        );
        for st in r.stops.iter().filter(|st| !st.node_id.is_depot()) {
            let (cx, cy) = vp.to_canvas(st.x, st.y);
            let _ = writeln!(
                s,
                r#"<circle class="customer" data-id="{}" cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{color}"/>"#,
                st.node_id
            );
        }
    }

    let (dx, dy) = vp.to_canvas(doc.depot.x, doc.depot.y);
    let _ = writeln!(
        s,
        r#"<rect class="depot" x="{:.2}" y="{:.2}" width="10" height="10" fill="black"/>"#,
        dx - 5.0,
        dy - 5.0
    );

    let lx = vp.width + 10.0;
    let _ = writeln!(
        s,
        r#"<text x="{lx:.0}" y="20" font-family="sans-serif" font-size="12">{} ({} routes, {:.2})</text>"#,
        doc.instance,
        doc.routes.len(),
        doc.metrics.total_distance
    );
    for (k, r) in doc.routes.iter().enumerate() {
        let y = 40.0 + 16.0 * k as f64;
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, r#"<rect x="{lx:.0}" y="{:.0}" width="10" height="10" fill="{color}"/>"#, y - 9.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{y:.0}" font-family="sans-serif" font-size="11">route {}: {:.2}</text>"#,
            lx + 16.0,
            r.vehicle,
            r.distance
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_round_trip() {
        let vp = Viewport::fit([(0.0, 0.0), (100.0, 50.0)], 600.0, 30.0);
        assert_eq!(vp.to_canvas(0.0, 50.0), (30.0, 30.0));
        assert_eq!(vp.to_canvas(100.0, 0.0), (630.0, 330.0));
        let (x, y) = vp.from_canvas(vp.to_canvas(37.5, 12.25).0, vp.to_canvas(37.5, 12.25).1);
        assert!((x - 37.5).abs() < 1e-9 && (y - 12.25).abs() < 1e-9);
    }
}
