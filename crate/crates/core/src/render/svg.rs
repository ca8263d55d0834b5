use std::fmt::Write;

use crate::model::Point2;

pub(crate) fn f6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Minimal SVG 1.1 text builder with a fixed attribute order.
pub(crate) struct SvgWriter {
    buf: String,
    depth: usize,
}

impl SvgWriter {
    pub fn new(width: u32, height: u32) -> Self {
        let mut buf = String::new();
        buf.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        let _ = writeln!(
            buf,
            "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>"
        );
        Self { buf, depth: 1 }
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
    }

    pub fn open(&mut self, tag: &str, attrs: &[(&str, &str)]) {
        self.indent();
        let _ = write!(self.buf, "<{tag}");
        for (k, v) in attrs {
            let _ = write!(self.buf, " {k}=\"{}\"", escape(v));
        }
        self.buf.push_str(">\n");
        self.depth += 1;
    }

    pub fn close(&mut self, tag: &str) {
        self.depth -= 1;
        self.indent();
        let _ = writeln!(self.buf, "</{tag}>");
    }

    pub fn line(&mut self, class: &str, a: Point2, b: Point2, stroke: &str, width: f64) {
        self.indent();
        let _ = writeln!(
            self.buf,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            f6(a.x),
            f6(a.y),
            f6(b.x),
            f6(b.y),
            f6(width)
        );
    }

    pub fn text(
        &mut self,
        class: &str,
        at: Point2,
        anchor: &str,
        size: f64,
        rotate: Option<f64>,
        text: &str,
    ) {
        self.indent();
        let _ = write!(
            self.buf,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\" font-size=\"{}\" font-family=\"sans-serif\"",
            f6(at.x),
            f6(at.y),
            f6(size)
        );
        if let Some(deg) = rotate {
            let _ = write!(
                self.buf,
                " transform=\"rotate({} {} {})\"",
                f6(deg),
                f6(at.x),
                f6(at.y)
            );
        }
        let _ = writeln!(self.buf, ">{}</text>", escape(text));
    }

    fn path_data(points: &[Point2], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            if i > 0 {
                d.push(' ');
            }
            let _ = write!(d, "{cmd} {},{}", f6(p.x), f6(p.y));
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }

    /// Closed path. `fill` of `None` draws an outline only.
    pub fn polygon(
        &mut self,
        class: &str,
        points: &[Point2],
        stroke: &str,
        width: f64,
        fill: Option<&str>,
    ) {
        self.indent();
        let _ = writeln!(
            self.buf,
            "<path class=\"{class}\" d=\"{}\" fill=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            Self::path_data(points, true),
            fill.unwrap_or("none"),
            f6(width)
        );
    }

    pub fn polyline(&mut self, class: &str, points: &[Point2], stroke: &str, width: f64) {
        self.indent();
        let _ = writeln!(
            self.buf,
            "<path class=\"{class}\" d=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            Self::path_data(points, false),
            f6(width)
        );
    }

    pub fn dot(&mut self, at: Point2, r: f64, fill: &str, opacity: f64) {
        self.indent();
        let _ = writeln!(
            self.buf,
            "<circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" fill-opacity=\"{}\"/>",
            f6(at.x),
            f6(at.y),
            f6(r),
            f6(opacity)
        );
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}
