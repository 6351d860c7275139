//! Deterministic SVG output for point clouds, bounding circles and lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Point2};
use crate::queries::Line;

/// Stroke color for circumcircles.
pub const CIRCUM_COLOR: &str = "red";
/// Stroke color for general bounding circles.
pub const GENERAL_COLOR: &str = "blue";

#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    Points {
        points: Vec<Point2>,
        radius_px: f64,
        color: String,
    },
    /// Always stroked, never filled.
    Circle {
        ball: Ball<Point2>,
        stroke_px: f64,
        color: String,
    },
    /// Drawn as the segment clipped to the viewport.
    Line {
        line: Line<Point2>,
        stroke_px: f64,
        color: String,
    },
    Label {
        text: String,
        anchor: Point2,
        color: String,
    },
}

/// World-coordinate rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let v = Self {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        if v.width() > 0.0 && v.height() > 0.0 && v.width().is_finite() && v.height().is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidArgument(
                "viewport must have positive finite area".into(),
            ))
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    /// Grows the shorter side symmetrically to the canvas aspect ratio.
    pub fn fit_aspect(self, width_px: u32, height_px: u32) -> Self {
        let target = width_px as f64 / height_px as f64;
        let aspect = self.width() / self.height();
        if aspect < target {
            let grow = (self.height() * target - self.width()) / 2.0;
            Self {
                x_min: self.x_min - grow,
                x_max: self.x_max + grow,
                ..self
            }
        } else if aspect > target {
            let grow = (self.width() / target - self.height()) / 2.0;
            Self {
                y_min: self.y_min - grow,
                y_max: self.y_max + grow,
                ..self
            }
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub layers: Vec<Primitive>,
    /// `None` selects [`auto_viewport`] with [`DEFAULT_MARGIN`].
    pub viewport: Option<Viewport>,
    pub width_px: u32,
    pub height_px: u32,
}

pub const DEFAULT_MARGIN: f64 = 0.05;

impl Scene {
    pub fn new(width_px: u32, height_px: u32) -> Result<Self> {
        if width_px == 0 || height_px == 0 {
            return Err(Error::InvalidArgument(
                "canvas dimensions must be positive".into(),
            ));
        }
        Ok(Self {
            layers: Vec::new(),
            viewport: None,
            width_px,
            height_px,
        })
    }

    pub fn push(&mut self, p: Primitive) -> &mut Self {
        self.layers.push(p);
        self
    }

    pub fn points(&mut self, points: Vec<Point2>, color: &str) -> &mut Self {
        self.push(Primitive::Points {
            points,
            radius_px: 0.75,
            color: color.into(),
        })
    }

    pub fn circle(&mut self, ball: Ball<Point2>, color: &str) -> &mut Self {
        self.push(Primitive::Circle {
            ball,
            stroke_px: 1.5,
            color: color.into(),
        })
    }

    pub fn line(&mut self, line: Line<Point2>, color: &str) -> &mut Self {
        self.push(Primitive::Line {
            line,
            stroke_px: 1.0,
            color: color.into(),
        })
    }

    pub fn label(&mut self, text: &str, anchor: Point2, color: &str) -> &mut Self {
        self.push(Primitive::Label {
            text: text.into(),
            anchor,
            color: color.into(),
        })
    }
}

/// Smallest axis-aligned box around every primitive with finite extent,
/// padded by `margin` times its larger side, then fitted to the canvas
/// aspect ratio.
pub fn auto_viewport(scene: &Scene, margin: f64) -> Result<Viewport> {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |x: f64, y: f64, r: f64| {
        lo[0] = lo[0].min(x - r);
        lo[1] = lo[1].min(y - r);
        hi[0] = hi[0].max(x + r);
        hi[1] = hi[1].max(y + r);
    };
    for layer in &scene.layers {
        match layer {
            Primitive::Points { points, .. } => points.iter().for_each(|p| grow(p.re, p.im, 0.0)),
            Primitive::Circle { ball, .. } => grow(ball.center.re, ball.center.im, ball.radius),
            Primitive::Label { anchor, .. } => grow(anchor.re, anchor.im, 0.0),
            Primitive::Line { .. } => {}
        }
    }
    if !(lo[0].is_finite() && lo[1].is_finite() && hi[0].is_finite() && hi[1].is_finite()) {
        return Err(Error::EmptyScene);
    }
    let mut pad = margin * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    if pad == 0.0 && hi[0] - lo[0] == 0.0 && hi[1] - lo[1] == 0.0 {
        // A lone point: give it a unit frame.
        pad = 0.5;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad);
    // Flat extents (e.g. collinear points) still need positive area.
    if x1 - x0 == 0.0 {
        let h = (y1 - y0) / 2.0;
        x0 -= h;
        x1 += h;
    }
    if y1 - y0 == 0.0 {
        let h = (x1 - x0) / 2.0;
        y0 -= h;
        y1 += h;
    }
    Ok(Viewport::new(x0, x1, y0, y1)?.fit_aspect(scene.width_px, scene.height_px))
}

/// Affine world-to-canvas map with a flipped y axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanvasTransform {
    viewport: Viewport,
    scale: f64,
    height_px: f64,
}

impl CanvasTransform {
    pub fn new(viewport: Viewport, width_px: u32, height_px: u32) -> Self {
        let viewport = viewport.fit_aspect(width_px, height_px);
        Self {
            scale: width_px as f64 / viewport.width(),
            viewport,
            height_px: height_px as f64,
        }
    }

    pub fn point(&self, z: Point2) -> (f64, f64) {
        (
            (z.re - self.viewport.x_min) * self.scale,
            (self.viewport.y_max - z.im) * self.scale,
        )
    }

    pub fn length(&self, r: f64) -> f64 {
        r * self.scale
    }

    pub fn viewport(&self) -> Viewport {
        self.viewport
    }

    pub fn height_px(&self) -> f64 {
        self.height_px
    }
}

/// Formats `x` with `digits` significant digits and no exponent, trimming
/// trailing zeros.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.9999 -> 10.000).
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn num(x: f64) -> String {
    fmt_sig(x, 9)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

// Parameter range of the line inside the viewport, by slab clipping.
fn clip(line: &Line<Point2>, v: &Viewport) -> Option<(f64, f64)> {
    let (a, u) = (line.anchor(), line.dir());
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    for (origin, dir, lo, hi) in [
        (a.re, u.re, v.x_min, v.x_max),
        (a.im, u.im, v.y_min, v.y_max),
    ] {
        if dir == 0.0 {
            if origin < lo || origin > hi {
                return None;
            }
        } else {
            let (ta, tb) = ((lo - origin) / dir, (hi - origin) / dir);
            t0 = t0.max(ta.min(tb));
            t1 = t1.min(ta.max(tb));
        }
    }
    (t0 <= t1).then_some((t0, t1))
}

/// Renders the scene as an SVG 1.1 document.
///
/// Output is byte-identical for identical scenes: layers are written in
/// order and every coordinate goes through [`fmt_sig`] with 9 digits.
pub fn emit(scene: &Scene) -> Result<String> {
    if scene.width_px == 0 || scene.height_px == 0 {
        return Err(Error::InvalidArgument(
            "canvas dimensions must be positive".into(),
        ));
    }
    let viewport = match scene.viewport {
        Some(v) => Viewport::new(v.x_min, v.x_max, v.y_min, v.y_max)?,
        None => auto_viewport(scene, DEFAULT_MARGIN)?,
    };
    let tf = CanvasTransform::new(viewport, scene.width_px, scene.height_px);
    let (w, h) = (scene.width_px, scene.height_px);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>"
    );
    for layer in &scene.layers {
        match layer {
            Primitive::Points {
                points,
                radius_px,
                color,
            } => {
                let _ = writeln!(out, "<g fill=\"{}\" stroke=\"none\">", escape(color));
                for p in points {
                    let (x, y) = tf.point(*p);
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                        num(x),
                        num(y),
                        num(*radius_px)
                    );
                }
                out.push_str("</g>\n");
            }
            Primitive::Circle {
                ball,
                stroke_px,
                color,
            } => {
                let (x, y) = tf.point(ball.center);
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    num(x),
                    num(y),
                    num(tf.length(ball.radius)),
                    escape(color),
                    num(*stroke_px)
                );
            }
            Primitive::Line {
                line,
                stroke_px,
                color,
            } => {
                if let Some((t0, t1)) = clip(line, &tf.viewport()) {
                    let (x1, y1) = tf.point(line.at(t0));
                    let (x2, y2) = tf.point(line.at(t1));
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                        num(x1),
                        num(y1),
                        num(x2),
                        num(y2),
                        escape(color),
                        num(*stroke_px)
                    );
                }
            }
            Primitive::Label {
                text,
                anchor,
                color,
            } => {
                let (x, y) = tf.point(*anchor);
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" fill=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
                    num(x),
                    num(y),
                    escape(color),
                    escape(text)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
