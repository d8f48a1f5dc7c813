//! Static SVG scenes of zero loci.
//!
//! Output is a pure function of the scene: fixed 800×800 canvas, fixed
//! element order and three-decimal coordinates.

use std::fmt::Write;

use num_complex::Complex64;

use crate::geometry::Circle;

const SIZE: f64 = 800.0;
const HALF: f64 = SIZE / 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayKind {
    Measured,
    Predicted,
    Tangent,
}

impl RayKind {
    fn class(self) -> &'static str {
        match self {
            RayKind::Measured => "measured",
            RayKind::Predicted => "predicted",
            RayKind::Tangent => "tangent",
        }
    }

    fn stroke(self) -> &'static str {
        match self {
            RayKind::Measured => "#1f77b4",
            RayKind::Predicted => "#d62728",
            RayKind::Tangent => "#2ca02c",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    /// Zeros drawn hollow.
    pub before: Vec<Complex64>,
    /// Zeros drawn filled.
    pub after: Vec<Complex64>,
    /// Pairs of rays `arg z = ±angle`.
    pub rays: Vec<(RayKind, f64)>,
    pub discs: Vec<Circle>,
    pub notes: Vec<String>,
}

impl Scene {
    /// Half-width of the plotted square: 1.2 times the largest zero modulus
    /// or disc extent, and 1 when there is nothing to plot.
    pub fn extent(&self) -> f64 {
        let zeros = self.before.iter().chain(&self.after).map(|z| z.norm());
        let discs = self.discs.iter().map(|c| c.center.abs() + c.radius);
        let m = zeros.chain(discs).fold(0.0, f64::max);
        if m > 0.0 && m.is_finite() {
            1.2 * m
        } else {
            1.0
        }
    }

    pub fn render(&self) -> String {
        let ext = self.extent();
        let k = HALF / ext;
        let px = |x: f64| HALF + k * x;
        let py = |y: f64| HALF - k * y;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800" data-extent="{ext:.6}">"#
        );
        let _ = writeln!(s, r##"<rect x="0" y="0" width="800" height="800" fill="#ffffff"/>"##);
        let _ = writeln!(
            s,
            r##"<g class="axes" stroke="#999999" stroke-width="1"><line x1="0" y1="{c:.3}" x2="800" y2="{c:.3}"/><line x1="{c:.3}" y1="0" x2="{c:.3}" y2="800"/></g>"##,
            c = HALF
        );
        let reach = ext * 2f64.sqrt();
        for &(kind, angle) in &self.rays {
            let _ = write!(
                s,
                r#"<g class="rays {}" stroke="{}" stroke-width="1.5" data-angle="{angle:.9}">"#,
                kind.class(),
                kind.stroke()
            );
            for sign in [1.0, -1.0] {
                let end = Complex64::from_polar(reach, sign * angle);
                let _ = write!(
                    s,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                    px(0.0),
                    py(0.0),
                    px(end.re),
                    py(end.im)
                );
            }
            let _ = writeln!(s, "</g>");
        }
        for c in &self.discs {
            let _ = writeln!(
                s,
                r##"<circle class="disc" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#2ca02c" fill-opacity="0.08" stroke="#2ca02c" data-center="{:.9}" data-radius="{:.9}"/>"##,
                px(c.center),
                py(0.0),
                k * c.radius,
                c.center,
                c.radius
            );
        }
        for (class, zeros, fill) in [("before", &self.before, "none"), ("after", &self.after, "#000000")] {
            for z in zeros.iter() {
                let _ = writeln!(
                    s,
                    r##"<circle class="zero {class}" cx="{:.3}" cy="{:.3}" r="5" fill="{fill}" stroke="#000000" data-re="{:.9}" data-im="{:.9}"/>"##,
                    px(z.re),
                    py(z.im),
                    z.re,
                    z.im
                );
            }
        }
        for (i, note) in self.notes.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text class="note" x="10" y="{:.3}" font-family="monospace" font-size="12">{}</text>"#,
                20.0 + 16.0 * i as f64,
                escape(note)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
