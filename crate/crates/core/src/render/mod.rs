//! Deterministic SVG output for cyclic polygon plots, glyph layouts and the
//! parallel-coordinates and radar-chart baselines.
//!
//! Documents are assembled as plain text with a fixed element order and
//! every coordinate printed with six decimals, so identical inputs give
//! byte-identical files.

pub mod inspect;
mod svg;

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Dataset, GlyphLayout, Point2, ScaleSpec, Scheme, Transform};
use crate::scheme::select;
use svg::{f6, SvgWriter};

/// Light/dark pairs of five hues.
pub const PAIRED_PALETTE: [&str; 10] = [
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00",
    "#cab2d6", "#6a3d9a",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ColorBy {
    /// Class label when the dataset has labels, item index otherwise.
    ClassLabel,
    ItemIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderStyle {
    pub width: u32,
    pub height: u32,
    /// Space between the canvas edge and the axis lines.
    pub margin: f64,
    pub dot_radius: f64,
    pub stroke_width: f64,
    pub dot_opacity: f64,
    pub palette: Vec<String>,
    pub color_by: ColorBy,
    pub font_size: f64,
    pub show_dots: bool,
    pub show_arrows: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            width: 600,
            height: 600,
            margin: 60.0,
            dot_radius: 3.0,
            stroke_width: 1.0,
            dot_opacity: 0.6,
            palette: PAIRED_PALETTE.iter().map(|s| s.to_string()).collect(),
            color_by: ColorBy::ClassLabel,
            font_size: 11.0,
            show_dots: true,
            show_arrows: true,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        if !(self.dot_opacity > 0.0 && self.dot_opacity <= 1.0) {
            return Err(Error::InvalidConfig(
                "dot opacity must lie in (0, 1]".into(),
            ));
        }
        if self.palette.is_empty() {
            return Err(Error::InvalidConfig(
                "palette needs at least one color".into(),
            ));
        }
        let inner = 2.0 * (self.margin + self.inset());
        if f64::from(self.width) <= inner || f64::from(self.height) <= inner {
            return Err(Error::InvalidConfig("canvas too small for margins".into()));
        }
        Ok(())
    }

    /// Gap between the axis lines and the data marks.
    fn inset(&self) -> f64 {
        2.0 * self.dot_radius + self.stroke_width + 2.0
    }

    fn tick_length(&self) -> f64 {
        5.0
    }

    fn colors(&self, ds_labels: Option<&[String]>, count: usize) -> Vec<&str> {
        let by_label = match (self.color_by, ds_labels) {
            (ColorBy::ClassLabel, Some(labels)) => {
                let mut distinct: Vec<&str> = Vec::new();
                Some(
                    labels
                        .iter()
                        .map(|l| match distinct.iter().position(|d| d == l) {
                            Some(i) => i,
                            None => {
                                distinct.push(l);
                                distinct.len() - 1
                            }
                        })
                        .collect::<Vec<_>>(),
                )
            }
            _ => None,
        };
        (0..count)
            .map(|i| {
                let slot = by_label.as_ref().map_or(i, |ids| ids[i]);
                self.palette[slot % self.palette.len()].as_str()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

/// Maps data coordinates into the content rectangle, y pointing up.
struct Frame {
    scale: ScaleSpec,
    axes: Rect,
    content: Rect,
}

impl Frame {
    fn new(scale: ScaleSpec, style: &RenderStyle) -> Self {
        let axes = Rect {
            x0: style.margin,
            y0: style.margin,
            x1: f64::from(style.width) - style.margin,
            y1: f64::from(style.height) - style.margin,
        };
        let i = style.inset();
        let content = Rect {
            x0: axes.x0 + i,
            y0: axes.y0 + i,
            x1: axes.x1 - i,
            y1: axes.y1 - i,
        };
        Self {
            scale,
            axes,
            content,
        }
    }

    fn t(&self, v: f64) -> f64 {
        match self.scale.transform {
            Transform::Linear => v,
            Transform::Log10 => v.log10(),
        }
    }

    fn px(&self, x: f64) -> f64 {
        let (a, b) = (self.t(self.scale.x_min), self.t(self.scale.x_max));
        self.content.x0 + (self.t(x) - a) / (b - a) * (self.content.x1 - self.content.x0)
    }

    fn py(&self, y: f64) -> f64 {
        let (a, b) = (self.t(self.scale.y_min), self.t(self.scale.y_max));
        self.content.y1 - (self.t(y) - a) / (b - a) * (self.content.y1 - self.content.y0)
    }

    fn map(&self, p: Point2) -> Point2 {
        Point2::new(self.px(p.x), self.py(p.y))
    }
}

/// Tick values: five evenly spaced for linear axes, powers of ten for log
/// axes (falling back to the bounds when no decade lies inside).
fn ticks(transform: Transform, lo: f64, hi: f64) -> Vec<f64> {
    match transform {
        Transform::Linear => (0..5).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect(),
        Transform::Log10 => {
            let first = lo.log10().ceil() as i32;
            let last = hi.log10().floor() as i32;
            if first > last {
                vec![lo, hi]
            } else {
                (first..=last).map(|e| 10f64.powi(e)).collect()
            }
        }
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e5).contains(&a) {
        return format!("{v:.1e}");
    }
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn write_axes(w: &mut SvgWriter, frame: &Frame, style: &RenderStyle, titles: (&str, &str)) {
    let tl = style.tick_length();
    let fs = style.font_size;
    let a = frame.axes;
    let s = frame.scale;

    w.open("g", &[("class", "axis x-axis")]);
    w.line(
        "axis-line",
        Point2::new(a.x0, a.y1),
        Point2::new(a.x1, a.y1),
        "#000000",
        1.0,
    );
    for v in ticks(s.transform, s.x_min, s.x_max) {
        let x = frame.px(v);
        w.line(
            "tick",
            Point2::new(x, a.y1),
            Point2::new(x, a.y1 + tl),
            "#000000",
            1.0,
        );
        w.text(
            "tick-label",
            Point2::new(x, a.y1 + tl + fs + 1.0),
            "middle",
            fs,
            None,
            &tick_label(v),
        );
    }
    let title_at = Point2::new(0.5 * (a.x0 + a.x1), a.y1 + tl + 2.0 * fs + 8.0);
    w.text("axis-title", title_at, "middle", fs, None, titles.0);
    w.close("g");

    w.open("g", &[("class", "axis y-axis")]);
    w.line(
        "axis-line",
        Point2::new(a.x0, a.y0),
        Point2::new(a.x0, a.y1),
        "#000000",
        1.0,
    );
    for v in ticks(s.transform, s.y_min, s.y_max) {
        let y = frame.py(v);
        w.line(
            "tick",
            Point2::new(a.x0 - tl, y),
            Point2::new(a.x0, y),
            "#000000",
            1.0,
        );
        w.text(
            "tick-label",
            Point2::new(a.x0 - tl - 2.0, y + 0.35 * fs),
            "end",
            fs,
            None,
            &tick_label(v),
        );
    }
    let title_at = Point2::new(fs + 2.0, 0.5 * (a.y0 + a.y1));
    w.text("axis-title", title_at, "middle", fs, Some(-90.0), titles.1);
    w.close("g");
}

/// Equilateral triangle with side 2·r centered on `at`, pointing along `dir`.
fn arrow_points(at: Point2, dir: Point2, r: f64) -> [Point2; 3] {
    let len = dir.x.hypot(dir.y);
    let u = if len > 0.0 {
        dir * (1.0 / len)
    } else {
        Point2::new(1.0, 0.0)
    };
    let n = Point2::new(-u.y, u.x);
    let side = 2.0 * r;
    let apex = at + u * (side / 3f64.sqrt());
    let back = at - u * (side / (2.0 * 3f64.sqrt()));
    [apex, back + n * (side / 2.0), back - n * (side / 2.0)]
}

fn log_violations<'a>(rows: impl Iterator<Item = (usize, &'a [Point2])>) -> Vec<usize> {
    rows.filter(|(_, pts)| pts.iter().any(|p| p.x <= 0.0 || p.y <= 0.0))
        .map(|(i, _)| i)
        .collect()
}

/// Cyclic polygon plot: one closed polygon per vector with semi-transparent
/// vertex dots and an arrow at the first vertex pointing to the second,
/// over a single axis pair drawn outside the content.
pub fn render_cpp(
    ds: &Dataset,
    scheme: Scheme,
    scale: &ScaleSpec,
    style: &RenderStyle,
) -> Result<String> {
    style.validate()?;
    scale.validate()?;
    let polygons: Vec<_> = ds.vectors.iter().map(|d| select(d, scheme)).collect();
    if scale.transform == Transform::Log10 {
        let bad = log_violations(polygons.iter().map(|p| p.vertices.as_slice()).enumerate());
        if !bad.is_empty() {
            return Err(Error::NonPositiveLog { rows: bad });
        }
    }
    let frame = Frame::new(*scale, style);
    let colors = style.colors(ds.labels.as_deref(), ds.len());
    let mut w = SvgWriter::new(style.width, style.height);
    write_axes(&mut w, &frame, style, ("x", "y"));

    w.open("g", &[("class", "polygons")]);
    for (i, poly) in polygons.iter().enumerate() {
        let pix: Vec<Point2> = poly.vertices.iter().map(|&v| frame.map(v)).collect();
        w.open("g", &[("class", "item"), ("data-index", &i.to_string())]);
        w.polygon("polygon", &pix, colors[i], style.stroke_width, None);
        if style.show_dots {
            for &p in &pix {
                w.dot(p, style.dot_radius, colors[i], style.dot_opacity);
            }
        }
        w.close("g");
    }
    w.close("g");

    if style.show_arrows {
        w.open("g", &[("class", "arrows")]);
        for (i, poly) in polygons.iter().enumerate() {
            let v0 = frame.map(poly.vertices[0]);
            let dir = match poly.vertices.get(1) {
                Some(&v1) => frame.map(v1) - v0,
                None => Point2::new(1.0, 0.0),
            };
            let tri = arrow_points(v0, dir, style.dot_radius);
            w.polygon("arrow", &tri, "none", 0.0, Some(colors[i]));
        }
        w.close("g");
    }
    Ok(w.finish())
}

/// Glyph layout: every glyph drawn at its placement coordinate, with axes
/// titled by what the placement measures. Glyphs that collapsed to a point
/// are drawn as a single dot.
pub fn render_glyphs(
    layout: &GlyphLayout,
    scale: &ScaleSpec,
    style: &RenderStyle,
    labels: Option<&[String]>,
) -> Result<String> {
    style.validate()?;
    scale.validate()?;
    if scale.transform == Transform::Log10 {
        let bad = log_violations(
            layout
                .entries
                .iter()
                .map(|e| e.polygon.vertices.as_slice())
                .enumerate(),
        );
        if !bad.is_empty() {
            return Err(Error::NonPositiveLog { rows: bad });
        }
    }
    let frame = Frame::new(*scale, style);
    let colors = style.colors(labels, layout.entries.len());
    let mut w = SvgWriter::new(style.width, style.height);
    write_axes(&mut w, &frame, style, layout.strategy.axis_titles());

    w.open("g", &[("class", "glyphs")]);
    for (i, e) in layout.entries.iter().enumerate() {
        let pix: Vec<Point2> = e.polygon.vertices.iter().map(|&v| frame.map(v)).collect();
        w.open("g", &[("class", "item"), ("data-index", &i.to_string())]);
        w.polygon("glyph", &pix, colors[i], style.stroke_width, None);
        let collapsed = e
            .polygon
            .vertices
            .iter()
            .all(|&v| v == e.polygon.vertices[0]);
        if collapsed {
            w.dot(
                frame.map(e.centroid),
                style.dot_radius,
                colors[i],
                style.dot_opacity,
            );
        }
        w.close("g");
    }
    w.close("g");
    Ok(w.finish())
}

/// Parallel coordinates: n vertical axes at unit spacing and one polyline
/// per vector. With `shared_scale` all axes use the global min/max,
/// otherwise each axis is scaled to its own range.
pub fn render_pcp(ds: &Dataset, style: &RenderStyle, shared_scale: bool) -> Result<String> {
    style.validate()?;
    let n = ds.dimension();
    let ranges = axis_ranges(ds, shared_scale);
    let frame = Frame::new(
        ScaleSpec::new(Transform::Linear, 0.0, 1.0, 0.0, 1.0)?,
        style,
    );
    let c = frame.content;
    let axis_x = |j: usize| c.x0 + (c.x1 - c.x0) * j as f64 / (n - 1) as f64;
    let colors = style.colors(ds.labels.as_deref(), ds.len());
    let mut w = SvgWriter::new(style.width, style.height);

    for j in 0..n {
        let x = axis_x(j);
        w.open("g", &[("class", "axis pcp-axis")]);
        w.line(
            "axis-line",
            Point2::new(x, c.y0),
            Point2::new(x, c.y1),
            "#000000",
            1.0,
        );
        let name = ds
            .attribute_names
            .as_ref()
            .map_or_else(|| format!("d{j}"), |names| names[j].clone());
        w.text(
            "axis-title",
            Point2::new(x, c.y1 + style.font_size + 6.0),
            "middle",
            style.font_size,
            None,
            &name,
        );
        w.close("g");
    }

    w.open("g", &[("class", "polylines")]);
    for (i, d) in ds.vectors.iter().enumerate() {
        let pts: Vec<Point2> = (0..n)
            .map(|j| {
                let u = unit(d[j], ranges[j]).unwrap_or(0.5);
                Point2::new(axis_x(j), c.y1 - u * (c.y1 - c.y0))
            })
            .collect();
        w.polyline("polyline", &pts, colors[i], style.stroke_width);
    }
    w.close("g");
    Ok(w.finish())
}

/// Radar chart: n radial axes at angles 2πj/n (counter-clockwise from +x)
/// with per-axis min-max normalization; a value at its axis maximum lies
/// on the unit circle. Constant axes place every value at radius 1.
pub fn render_rc(ds: &Dataset, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    let n = ds.dimension();
    if n < 3 {
        return Err(Error::TooFewAxes(n));
    }
    let ranges = axis_ranges(ds, false);
    let center = Point2::new(f64::from(style.width) / 2.0, f64::from(style.height) / 2.0);
    let radius = (f64::from(style.width.min(style.height)) / 2.0 - style.margin).max(1.0);
    let spoke = |j: usize, r: f64| {
        let a = TAU * j as f64 / n as f64;
        Point2::new(
            center.x + r * radius * a.cos(),
            center.y - r * radius * a.sin(),
        )
    };
    let colors = style.colors(ds.labels.as_deref(), ds.len());
    let mut w = SvgWriter::new(style.width, style.height);

    for j in 0..n {
        w.open("g", &[("class", "axis radial")]);
        w.line("axis-line", center, spoke(j, 1.0), "#000000", 1.0);
        let name = ds
            .attribute_names
            .as_ref()
            .map_or_else(|| format!("d{j}"), |names| names[j].clone());
        w.text(
            "axis-title",
            spoke(j, 1.08),
            "middle",
            style.font_size,
            None,
            &name,
        );
        w.close("g");
    }

    w.open("g", &[("class", "radars")]);
    for (i, d) in ds.vectors.iter().enumerate() {
        let pts: Vec<Point2> = (0..n)
            .map(|j| spoke(j, unit(d[j], ranges[j]).unwrap_or(1.0)))
            .collect();
        w.polygon("radar", &pts, colors[i], style.stroke_width, None);
    }
    w.close("g");
    Ok(w.finish())
}

fn axis_ranges(ds: &Dataset, shared: bool) -> Vec<(f64, f64)> {
    let n = ds.dimension();
    let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); n];
    for d in &ds.vectors {
        for (j, &v) in d.components().iter().enumerate() {
            ranges[j] = (ranges[j].0.min(v), ranges[j].1.max(v));
        }
    }
    if shared {
        let global = ranges
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |acc, r| {
                (acc.0.min(r.0), acc.1.max(r.1))
            });
        ranges = vec![global; n];
    }
    ranges
}

/// Position of `v` within `[lo, hi]`, `None` for an empty range.
fn unit(v: f64, (lo, hi): (f64, f64)) -> Option<f64> {
    (hi > lo).then(|| (v - lo) / (hi - lo))
}

/// Bounds that fit every vertex of every polygon of `ds`.
pub fn fit_cpp_scale(ds: &Dataset, scheme: Scheme, transform: Transform) -> Result<ScaleSpec> {
    let pts: Vec<Point2> = ds
        .vectors
        .iter()
        .flat_map(|d| select(d, scheme).vertices)
        .collect();
    if transform == Transform::Log10 {
        let bad: Vec<usize> = ds
            .vectors
            .iter()
            .enumerate()
            .filter(|(_, d)| d.components().iter().any(|&v| v <= 0.0))
            .map(|(i, _)| i)
            .collect();
        if !bad.is_empty() {
            return Err(Error::NonPositiveLog { rows: bad });
        }
    }
    ScaleSpec::fit(transform, &pts)
}

/// Bounds that fit every glyph vertex of a layout.
pub fn fit_glyph_scale(layout: &GlyphLayout, transform: Transform) -> Result<ScaleSpec> {
    let pts: Vec<Point2> = layout
        .entries
        .iter()
        .flat_map(|e| e.polygon.vertices.iter().copied())
        .collect();
    if transform == Transform::Log10 {
        let bad = log_violations(
            layout
                .entries
                .iter()
                .map(|e| e.polygon.vertices.as_slice())
                .enumerate(),
        );
        if !bad.is_empty() {
            return Err(Error::NonPositiveLog { rows: bad });
        }
    }
    ScaleSpec::fit(transform, &pts)
}

#[doc(hidden)]
pub fn format_coordinate(v: f64) -> String {
    f6(v)
}
