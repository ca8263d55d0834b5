//! Reads back the documents produced by this module so layout properties
//! (mark counts, axis placement, dot spread) can be checked without a full
//! SVG parser. Only the element shapes written here are understood.

use crate::model::Point2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BoundingBox {
    pub fn of(points: impl IntoIterator<Item = Point2>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = Self {
            x0: first.x,
            y0: first.y,
            x1: first.x,
            y1: first.y,
        };
        for p in it {
            b.x0 = b.x0.min(p.x);
            b.y0 = b.y0.min(p.y);
            b.x1 = b.x1.max(p.x);
            b.y1 = b.y1.max(p.y);
        }
        Some(b)
    }

    pub fn union(self, o: Self) -> Self {
        Self {
            x0: self.x0.min(o.x0),
            y0: self.y0.min(o.y0),
            x1: self.x1.max(o.x1),
            y1: self.y1.max(o.y1),
        }
    }

    /// True when the interiors overlap.
    pub fn intersects(&self, o: &Self) -> bool {
        self.x0 < o.x1 && o.x0 < self.x1 && self.y0 < o.y1 && o.y0 < self.y1
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mark {
    Circle {
        class: String,
        center: Point2,
        r: f64,
    },
    Path {
        class: String,
        points: Vec<Point2>,
        closed: bool,
    },
    Line {
        class: String,
        a: Point2,
        b: Point2,
    },
    /// Text with an estimated extent (average glyph width 0.6 em).
    Text {
        class: String,
        text: String,
        bbox: BoundingBox,
    },
}

impl Mark {
    pub fn class(&self) -> &str {
        match self {
            Mark::Circle { class, .. }
            | Mark::Path { class, .. }
            | Mark::Line { class, .. }
            | Mark::Text { class, .. } => class,
        }
    }

    pub fn bbox(&self) -> BoundingBox {
        match self {
            Mark::Circle { center, r, .. } => BoundingBox {
                x0: center.x - r,
                y0: center.y - r,
                x1: center.x + r,
                y1: center.y + r,
            },
            Mark::Path { points, .. } => {
                BoundingBox::of(points.iter().copied()).unwrap_or(BoundingBox {
                    x0: 0.0,
                    y0: 0.0,
                    x1: 0.0,
                    y1: 0.0,
                })
            }
            Mark::Line { a, b, .. } => BoundingBox::of([*a, *b]).expect("two points"),
            Mark::Text { bbox, .. } => *bbox,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub width: f64,
    pub height: f64,
    pub marks: Vec<Mark>,
    /// Class attribute of every `<g>` element, in document order.
    pub groups: Vec<String>,
}

const DATA_CLASSES: [&str; 6] = ["polygon", "dot", "arrow", "glyph", "polyline", "radar"];
const AXIS_CLASSES: [&str; 4] = ["axis-line", "tick", "tick-label", "axis-title"];

impl Document {
    pub fn count(&self, class: &str) -> usize {
        self.marks.iter().filter(|m| m.class() == class).count()
    }

    pub fn group_count(&self, class: &str) -> usize {
        self.groups.iter().filter(|g| *g == class).count()
    }

    pub fn data_marks(&self) -> impl Iterator<Item = &Mark> {
        self.marks
            .iter()
            .filter(|m| DATA_CLASSES.contains(&m.class()))
    }

    pub fn axis_marks(&self) -> impl Iterator<Item = &Mark> {
        self.marks
            .iter()
            .filter(|m| AXIS_CLASSES.contains(&m.class()))
    }

    pub fn data_bbox(&self) -> Option<BoundingBox> {
        self.data_marks().map(Mark::bbox).reduce(BoundingBox::union)
    }

    /// Exactly one horizontal and one vertical axis group.
    pub fn has_single_axis_pair(&self) -> bool {
        self.group_count("axis x-axis") == 1 && self.group_count("axis y-axis") == 1
    }

    /// No axis line, tick, tick label or title overlaps the region spanned
    /// by the data marks.
    pub fn axes_exterior(&self) -> bool {
        match self.data_bbox() {
            Some(data) => self.axis_marks().all(|m| !m.bbox().intersects(&data)),
            None => true,
        }
    }

    /// Area of the box spanned by the 5th–95th percentile of dot centers in
    /// each direction, as a fraction of the canvas.
    pub fn dot_cloud_fraction(&self) -> Option<f64> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for m in &self.marks {
            if let Mark::Circle { class, center, .. } = m {
                if class == "dot" {
                    xs.push(center.x);
                    ys.push(center.y);
                }
            }
        }
        if xs.is_empty() {
            return None;
        }
        let spread = |v: &mut Vec<f64>| {
            v.sort_by(f64::total_cmp);
            percentile(v, 0.95) - percentile(v, 0.05)
        };
        Some(spread(&mut xs) * spread(&mut ys) / (self.width * self.height))
    }
}

/// Linear-interpolated percentile of sorted data.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn attr<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = line.find(&key)? + key.len();
    let end = line[start..].find('"')? + start;
    Some(&line[start..end])
}

fn num(line: &str, name: &str) -> f64 {
    attr(line, name)
        .and_then(|v| v.parse().ok())
        .unwrap_or(f64::NAN)
}

fn unescape(text: &str) -> String {
    text.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&amp;", "&")
}

fn parse_path(d: &str) -> (Vec<Point2>, bool) {
    let mut points = Vec::new();
    let mut closed = false;
    for tok in d.split_whitespace() {
        match tok {
            "M" | "L" => {}
            "Z" => closed = true,
            xy => {
                if let Some((x, y)) = xy.split_once(',') {
                    if let (Ok(x), Ok(y)) = (x.parse(), y.parse()) {
                        points.push(Point2::new(x, y));
                    }
                }
            }
        }
    }
    (points, closed)
}

fn text_bbox(line: &str, content: &str) -> BoundingBox {
    let (x, y, fs) = (num(line, "x"), num(line, "y"), num(line, "font-size"));
    let w = 0.6 * fs * content.chars().count() as f64;
    let x0 = match attr(line, "text-anchor") {
        Some("middle") => x - w / 2.0,
        Some("end") => x - w,
        _ => x,
    };
    let horizontal = BoundingBox {
        x0,
        y0: y - fs,
        x1: x0 + w,
        y1: y + 0.25 * fs,
    };
    // Quarter-turn rotations about the anchor swap the extent.
    match attr(line, "transform") {
        Some(t) if t.starts_with("rotate(-90") || t.starts_with("rotate(90") => {
            let corners = [
                Point2::new(horizontal.x0, horizontal.y0),
                Point2::new(horizontal.x1, horizontal.y0),
                Point2::new(horizontal.x0, horizontal.y1),
                Point2::new(horizontal.x1, horizontal.y1),
            ];
            let sign = if t.starts_with("rotate(-90") {
                -1.0
            } else {
                1.0
            };
            BoundingBox::of(corners.iter().map(|c| {
                let (dx, dy) = (c.x - x, c.y - y);
                Point2::new(x - sign * dy, y + sign * dx)
            }))
            .expect("four corners")
        }
        _ => horizontal,
    }
}

/// Parses a document written by this crate's renderers.
pub fn parse(svg: &str) -> Document {
    let mut doc = Document::default();
    for raw in svg.lines() {
        let line = raw.trim();
        let class = attr(line, "class").unwrap_or("").to_string();
        if line.starts_with("<svg") {
            doc.width = num(line, "width");
            doc.height = num(line, "height");
        } else if line.starts_with("<g") {
            doc.groups.push(class);
        } else if line.starts_with("<circle") {
            doc.marks.push(Mark::Circle {
                class,
                center: Point2::new(num(line, "cx"), num(line, "cy")),
                r: num(line, "r"),
            });
        } else if line.starts_with("<path") {
            let (points, closed) = parse_path(attr(line, "d").unwrap_or(""));
            doc.marks.push(Mark::Path {
                class,
                points,
                closed,
            });
        } else if line.starts_with("<line") {
            doc.marks.push(Mark::Line {
                class,
                a: Point2::new(num(line, "x1"), num(line, "y1")),
                b: Point2::new(num(line, "x2"), num(line, "y2")),
            });
        } else if line.starts_with("<text") {
            let content = line
                .split_once('>')
                .and_then(|(_, rest)| rest.rsplit_once("</text>"))
                .map_or(String::new(), |(t, _)| unescape(t));
            let bbox = text_bbox(line, &content);
            doc.marks.push(Mark::Text {
                class,
                text: content,
                bbox,
            });
        }
    }
    doc
}
