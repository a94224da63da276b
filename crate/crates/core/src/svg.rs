//! Minimal standalone SVG scatter plots.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;

/// Named role of an overlaid curve; decides its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveRole {
    Upper,
    Lower,
    Axis,
}

impl CurveRole {
    fn class(self) -> &'static str {
        match self {
            CurveRole::Upper => "upper",
            CurveRole::Lower => "lower",
            CurveRole::Axis => "axis-family",
        }
    }

    fn color(self) -> &'static str {
        match self {
            CurveRole::Upper => "orangered",
            CurveRole::Lower => "dodgerblue",
            CurveRole::Axis => "forestgreen",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub role: CurveRole,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPlot {
    pub title: String,
    pub x: Axis,
    pub y: Axis,
    pub points: Vec<(f64, f64)>,
    pub curves: Vec<Curve>,
    /// Free-form provenance lines stored in `<desc>`.
    pub description: Vec<String>,
}

pub fn escape(text: &str) -> String {
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

/// A 1-2-5 step giving between 4 and 10 ticks over `span`.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let mult = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    mult * mag
}

fn ticks(min: f64, max: f64) -> Vec<f64> {
    let step = tick_step(max - min);
    let first = (min / step).ceil() as i64;
    let last = (max / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

impl ScatterPlot {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.min) / (self.x.max - self.x.min) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.min) / (self.y.max - self.y.min) * (HEIGHT - TOP - BOTTOM)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let (x0, x1) = (self.px(self.x.min), self.px(self.x.max));
        let (y0, y1) = (self.py(self.y.min), self.py(self.y.max));
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="14">"#
        )
        .unwrap();
        writeln!(s, "<title>{}</title>", escape(&self.title)).unwrap();
        writeln!(s, "<desc>{}</desc>", escape(&self.description.join("\n"))).unwrap();
        writeln!(
            s,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        )
        .unwrap();

        writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1">"#).unwrap();
        writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>"#).unwrap();
        writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>"#).unwrap();
        for t in ticks(self.x.min, self.x.max) {
            let x = self.px(t);
            writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}"/><text x="{x:.2}" y="{}" text-anchor="middle" stroke="none">{}</text>"#,
                y0 + 5.0,
                y0 + 22.0,
                fmt_tick(t)
            )
            .unwrap();
        }
        for t in ticks(self.y.min, self.y.max) {
            let y = self.py(t);
            writeln!(
                s,
                r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}"/><text x="{}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                y + 5.0,
                fmt_tick(t)
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
        writeln!(
            s,
            r#"<text class="x-label" x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 20.0,
            escape(&self.x.label)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text class="y-label" transform="translate(22 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
            (y0 + y1) / 2.0,
            escape(&self.y.label)
        )
        .unwrap();

        writeln!(
            s,
            r#"<g class="scatter" fill="purple" fill-opacity="0.35">"#
        )
        .unwrap();
        for &(x, y) in &self.points {
            writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="1"/>"#,
                self.px(x),
                self.py(y)
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();

        for (k, c) in self.curves.iter().enumerate() {
            let mut d = String::new();
            for (i, &(x, y)) in c.points.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                write!(d, "{cmd}{:.2} {:.2} ", self.px(x), self.py(y)).unwrap();
            }
            writeln!(
                s,
                r#"<path class="boundary {}" d="{}" fill="none" stroke="{}" stroke-width="2"><title>{}</title></path>"#,
                c.role.class(),
                d.trim_end(),
                c.role.color(),
                escape(&c.label)
            )
            .unwrap();
            let ly = TOP + 10.0 + 20.0 * k as f64;
            writeln!(
                s,
                r#"<g class="legend"><line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">{}</text></g>"#,
                x1 - 260.0,
                x1 - 230.0,
                c.role.color(),
                x1 - 222.0,
                ly + 5.0,
                escape(&c.label)
            )
            .unwrap();
        }
        writeln!(s, "</svg>").unwrap();
        s
    }
}

fn fmt_tick(t: f64) -> String {
    let r = (t * 1e6).round() / 1e6;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_cover_range() {
        assert_eq!(ticks(0.0, 1.0).len(), 6);
        let t = ticks(0.0, 3.0);
        assert_eq!(t.first(), Some(&0.0));
        assert_eq!(t.last(), Some(&3.0));
        assert!(ticks(0.0, 0.5).len() >= 4);
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & c>\"d\""), "a&lt;b &amp; c&gt;&quot;d&quot;");
    }

    #[test]
    fn renders_points_and_curves() {
        let plot = ScatterPlot {
            title: "t".into(),
            x: Axis {
                label: "x".into(),
                min: 0.0,
                max: 1.0,
            },
            y: Axis {
                label: "y <".into(),
                min: 0.0,
                max: 1.0,
            },
            points: vec![(0.0, 0.0), (1.0, 1.0)],
            curves: vec![Curve {
                label: "c".into(),
                role: CurveRole::Upper,
                points: vec![(0.0, 1.0), (1.0, 0.0)],
            }],
            description: vec!["seed: 1".into()],
        };
        let svg = plot.render();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains(r#"<circle cx="80.00" cy="530.00" r="1"/>"#));
        assert!(svg.contains(r#"<circle cx="770.00" cy="40.00" r="1"/>"#));
        assert!(svg.contains("M80.00 40.00 L770.00 530.00"));
        assert!(svg.contains("y &lt;"));
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    }
}
