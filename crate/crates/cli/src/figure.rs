//! Deterministic SVG rendering of a construction.
//!
//! Output is byte-identical for identical (scene, options): element order
//! is fixed, styles are fully specified defaults, and every coordinate is
//! printed with the same formatting rule (shortest round-trip decimal,
//! capped at 12 significant digits). Geometry is emitted in world
//! coordinates inside a single root group carrying the y-up transform;
//! markers and labels are emitted in screen coordinates so text renders
//! upright.

use hagge_core::construction::{
    classic_hagge, construct, AnyScene, ClassicHagge, ConstructError, ConstructionOutput,
    OutputFlags, PathKind,
};
use hagge_core::geom::{Circle, Point};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct StrokeStyle {
    pub color: &'static str,
    pub width: f64,
    pub dash: Option<&'static str>,
}

impl StrokeStyle {
    fn attrs(&self) -> String {
        let mut s = format!(
            "stroke=\"{}\" stroke-width=\"{}\" vector-effect=\"non-scaling-stroke\"",
            self.color,
            fmt_num(self.width)
        );
        if let Some(dash) = self.dash {
            write!(s, " stroke-dasharray=\"{dash}\"").unwrap();
        }
        s
    }
}

/// Stroke styles per element class.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleTable {
    pub circumcircle: StrokeStyle,
    pub triangle: StrokeStyle,
    pub chords: StrokeStyle,
    pub parallelogram_edges: StrokeStyle,
    pub parallelogram_diagonals: StrokeStyle,
    pub special_circle: StrokeStyle,
    pub midpoint_circle: StrokeStyle,
    pub hagge_overlay: StrokeStyle,
}

impl Default for StyleTable {
    fn default() -> Self {
        StyleTable {
            circumcircle: StrokeStyle {
                color: "#444444",
                width: 1.5,
                dash: None,
            },
            triangle: StrokeStyle {
                color: "#1f77b4",
                width: 1.5,
                dash: None,
            },
            chords: StrokeStyle {
                color: "#999999",
                width: 1.0,
                dash: Some("4 3"),
            },
            parallelogram_edges: StrokeStyle {
                color: "#2ca02c",
                width: 0.8,
                dash: Some("2 2"),
            },
            parallelogram_diagonals: StrokeStyle {
                color: "#2ca02c",
                width: 1.0,
                dash: Some("7 3"),
            },
            special_circle: StrokeStyle {
                color: "#d62728",
                width: 2.0,
                dash: None,
            },
            midpoint_circle: StrokeStyle {
                color: "#9467bd",
                width: 1.5,
                dash: Some("5 3"),
            },
            hagge_overlay: StrokeStyle {
                color: "#ff7f0e",
                width: 1.5,
                dash: Some("3 3"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureOptions {
    pub width: u32,
    pub height: u32,
    pub show_labels: bool,
    pub show_special_circle: bool,
    pub show_midpoint_circle: bool,
    /// Overlay the classic construction: side reflections of the chord
    /// ends and their circle through the orthocenter.
    pub show_hagge_overlay: bool,
    /// Draw the Q-to-special-point parallelogram diagonals.
    pub show_diagonals: bool,
    pub styles: StyleTable,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            width: 800,
            height: 800,
            show_labels: true,
            show_special_circle: true,
            show_midpoint_circle: true,
            show_hagge_overlay: false,
            show_diagonals: true,
            styles: StyleTable::default(),
        }
    }
}

pub struct Figure {
    pub svg: String,
    pub flags: OutputFlags,
}

/// Shortest round-trip decimal, capped at 12 significant digits, with
/// negative zero normalized away.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

struct Viewport {
    scale: f64,
    tx: f64,
    ty: f64,
}

impl Viewport {
    fn fit(bounds: (f64, f64, f64, f64), width: f64, height: f64) -> Viewport {
        let (x0, y0, x1, y1) = bounds;
        let pad_x = 0.08 * (x1 - x0).max(1e-9);
        let pad_y = 0.08 * (y1 - y0).max(1e-9);
        let (x0, y0, x1, y1) = (x0 - pad_x, y0 - pad_y, x1 + pad_x, y1 + pad_y);
        let scale = (width / (x1 - x0)).min(height / (y1 - y0));
        let cx = (x0 + x1) / 2.0;
        let cy = (y0 + y1) / 2.0;
        Viewport {
            scale,
            tx: width / 2.0 - scale * cx,
            ty: height / 2.0 + scale * cy,
        }
    }

    fn to_screen(&self, p: &Point<f64>) -> (f64, f64) {
        (self.tx + self.scale * p.x, self.ty - self.scale * p.y)
    }
}

struct Bounds {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            x0: f64::INFINITY,
            y0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y1: f64::NEG_INFINITY,
        }
    }

    fn point(&mut self, p: &Point<f64>) {
        self.x0 = self.x0.min(p.x);
        self.y0 = self.y0.min(p.y);
        self.x1 = self.x1.max(p.x);
        self.y1 = self.y1.max(p.y);
    }

    fn circle(&mut self, c: &Circle<f64>) {
        let center = c.center();
        let r = c.radius_sq().max(0.0).sqrt();
        self.point(&Point::new(center.x - r, center.y - r));
        self.point(&Point::new(center.x + r, center.y + r));
    }
}

fn world_segment(buf: &mut String, a: &Point<f64>, b: &Point<f64>, style: &StrokeStyle) {
    writeln!(
        buf,
        "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>",
        fmt_num(a.x),
        fmt_num(a.y),
        fmt_num(b.x),
        fmt_num(b.y),
        style.attrs()
    )
    .unwrap();
}

fn world_circle(buf: &mut String, c: &Circle<f64>, style: &StrokeStyle) {
    let center = c.center();
    let r = c.radius_sq().max(0.0).sqrt();
    writeln!(
        buf,
        "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" {}/>",
        fmt_num(center.x),
        fmt_num(center.y),
        fmt_num(r),
        style.attrs()
    )
    .unwrap();
}

fn world_polygon(buf: &mut String, points: &[&Point<f64>], style: &StrokeStyle) {
    let coords: Vec<String> = points
        .iter()
        .map(|p| format!("{},{}", fmt_num(p.x), fmt_num(p.y)))
        .collect();
    writeln!(
        buf,
        "    <polygon points=\"{}\" fill=\"none\" {}/>",
        coords.join(" "),
        style.attrs()
    )
    .unwrap();
}

/// Renders a scene through the geometric construction path.
pub fn render_scene(scene: &AnyScene, opts: &FigureOptions) -> Result<Figure, ConstructError> {
    let out: ConstructionOutput<f64> = match scene {
        AnyScene::Exact(s) => construct(s, PathKind::Geometric)?.to_double(),
        AnyScene::Double(s) => construct(s, PathKind::Geometric)?,
    };
    // The overlay is skipped when the classic construction degenerates
    // (generator at a vertex or on the circumcircle).
    let hagge: Option<ClassicHagge<f64>> = if opts.show_hagge_overlay {
        classic_hagge(&out.vertices, &out.d).ok()
    } else {
        None
    };

    let mut bounds = Bounds::new();
    bounds.circle(&out.circumcircle);
    for p in out
        .vertices
        .iter()
        .chain(out.chord_ends.iter())
        .chain(out.special_points.iter())
        .chain(out.chord_midpoints.iter())
        .chain([
            &out.p,
            &out.q,
            &out.d,
            &out.special_center,
            &out.circumcenter,
        ])
    {
        bounds.point(p);
    }
    if opts.show_special_circle {
        if let Some(c) = &out.special_circle {
            bounds.circle(c);
        }
    }
    if opts.show_midpoint_circle {
        if let Some(c) = &out.midpoint_circle {
            bounds.circle(c);
        }
    }
    if let Some(h) = &hagge {
        bounds.circle(&h.circle);
        for p in h.reflections.iter().chain([&h.orthocenter]) {
            bounds.point(p);
        }
    }

    let width = opts.width as f64;
    let height = opts.height as f64;
    let view = Viewport::fit((bounds.x0, bounds.y0, bounds.x1, bounds.y1), width, height);

    let mut svg = String::new();
    writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        opts.width, opts.height, opts.width, opts.height
    )
    .unwrap();
    writeln!(
        svg,
        "  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        opts.width, opts.height
    )
    .unwrap();

    // All geometry lives in one y-up world-coordinate group.
    writeln!(
        svg,
        "  <g transform=\"translate({} {}) scale({} -{})\">",
        fmt_num(view.tx),
        fmt_num(view.ty),
        fmt_num(view.scale),
        fmt_num(view.scale)
    )
    .unwrap();

    let styles = &opts.styles;
    world_circle(&mut svg, &out.circumcircle, &styles.circumcircle);
    world_polygon(
        &mut svg,
        &[&out.vertices[0], &out.vertices[1], &out.vertices[2]],
        &styles.triangle,
    );
    // Chords from each vertex through D to the far intersection.
    for (v, e) in out.vertices.iter().zip(out.chord_ends.iter()) {
        world_segment(&mut svg, v, e, &styles.chords);
    }
    // Parallelogram edges vertex-Q and Q-chordEnd and the two sides
    // parallel to them through the special point.
    for ((v, e), u) in out
        .vertices
        .iter()
        .zip(out.chord_ends.iter())
        .zip(out.special_points.iter())
    {
        world_segment(&mut svg, v, &out.q, &styles.parallelogram_edges);
        world_segment(&mut svg, &out.q, e, &styles.parallelogram_edges);
        world_segment(&mut svg, e, u, &styles.parallelogram_edges);
        world_segment(&mut svg, u, v, &styles.parallelogram_edges);
    }
    if opts.show_diagonals {
        for u in &out.special_points {
            world_segment(&mut svg, &out.q, u, &styles.parallelogram_diagonals);
        }
    }
    if opts.show_special_circle {
        if let Some(c) = &out.special_circle {
            world_circle(&mut svg, c, &styles.special_circle);
        }
    }
    if opts.show_midpoint_circle {
        if let Some(c) = &out.midpoint_circle {
            world_circle(&mut svg, c, &styles.midpoint_circle);
        }
    }
    if let Some(h) = &hagge {
        world_circle(&mut svg, &h.circle, &styles.hagge_overlay);
        for r in &h.reflections {
            world_segment(&mut svg, &h.orthocenter, r, &styles.hagge_overlay);
        }
    }
    writeln!(svg, "  </g>").unwrap();

    // Markers and labels in screen coordinates: text stays upright.
    writeln!(
        svg,
        "  <g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"13\">"
    )
    .unwrap();
    let mut labeled: Vec<(&str, &Point<f64>, &str)> = vec![
        ("O", &out.circumcenter, "#111111"),
        ("P", &out.p, "#111111"),
        ("Q", &out.q, "#111111"),
        ("D", &out.d, "#2ca02c"),
        ("K", &out.special_center, "#d62728"),
        ("A", &out.vertices[0], "#1f77b4"),
        ("B", &out.vertices[1], "#1f77b4"),
        ("C", &out.vertices[2], "#1f77b4"),
        ("E", &out.chord_ends[0], "#888888"),
        ("F", &out.chord_ends[1], "#888888"),
        ("G", &out.chord_ends[2], "#888888"),
        ("U", &out.special_points[0], "#d62728"),
        ("V", &out.special_points[1], "#d62728"),
        ("W", &out.special_points[2], "#d62728"),
        ("U'", &out.chord_midpoints[0], "#9467bd"),
        ("V'", &out.chord_midpoints[1], "#9467bd"),
        ("W'", &out.chord_midpoints[2], "#9467bd"),
    ];
    if let Some(h) = &hagge {
        labeled.push(("H", &h.orthocenter, "#ff7f0e"));
    }
    for (label, point, color) in labeled {
        let (sx, sy) = view.to_screen(point);
        writeln!(
            svg,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>",
            fmt_num(sx),
            fmt_num(sy),
            color
        )
        .unwrap();
        if opts.show_labels {
            writeln!(
                svg,
                "    <text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>",
                fmt_num(sx + 6.0),
                fmt_num(sy - 6.0),
                color,
                label
            )
            .unwrap();
        }
    }
    writeln!(svg, "  </g>").unwrap();
    writeln!(svg, "</svg>").unwrap();

    Ok(Figure {
        svg,
        flags: out.flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hagge_core::io::scene_from_str;

    const S1: &str = r#"{
        "triangle": {"params": [0, 1, -1]},
        "P": {"k": "1/2"},
        "D": [0, "1/2"],
        "backend": "exact"
    }"#;

    #[test]
    fn fmt_num_is_stable_and_capped() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_num(230.4), "230.4");
        // 12 significant digits, then shortest round-trip of the rounded value.
        assert_eq!(fmt_num(0.1234567890123456), "0.123456789012");
    }

    #[test]
    fn rendering_is_deterministic() {
        let scene = scene_from_str(S1).unwrap();
        let a = render_scene(&scene, &FigureOptions::default()).unwrap();
        let b = render_scene(&scene, &FigureOptions::default()).unwrap();
        assert_eq!(a.svg, b.svg);
        assert!(a.svg.contains("<svg "));
        assert!(a.svg.ends_with("</svg>\n"));
    }

    #[test]
    fn layer_toggles_change_output() {
        let scene = scene_from_str(S1).unwrap();
        let with = render_scene(&scene, &FigureOptions::default()).unwrap();
        let without = render_scene(
            &scene,
            &FigureOptions {
                show_midpoint_circle: false,
                ..FigureOptions::default()
            },
        )
        .unwrap();
        assert_ne!(with.svg, without.svg);
        assert!(with.svg.len() > without.svg.len());
    }

    #[test]
    fn degenerate_scene_renders_without_circles() {
        let text = r#"{
            "triangle": {"params": [0, 1, -1]},
            "P": {"k": "1/2"},
            "D": [0, 0],
            "backend": "exact"
        }"#;
        let scene = scene_from_str(text).unwrap();
        let fig = render_scene(&scene, &FigureOptions::default()).unwrap();
        assert!(fig.flags.d_at_circumcenter);
        assert!(!fig.svg.contains(r##"stroke="#d62728""##));
        assert!(!fig.svg.contains(r##"stroke="#9467bd""##));
    }

    #[test]
    fn hagge_overlay_adds_layer() {
        let scene = scene_from_str(S1).unwrap();
        let fig = render_scene(
            &scene,
            &FigureOptions {
                show_hagge_overlay: true,
                ..FigureOptions::default()
            },
        )
        .unwrap();
        assert!(fig.svg.contains(r##"stroke="#ff7f0e""##));
        assert!(fig.svg.contains(">H</text>"));
    }
}
