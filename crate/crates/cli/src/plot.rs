use std::fmt::Write;

use rivalloc::{Instance, SolveReport};

/// Static SVG: customers (area grows with weight), their R/2 circles, the
/// centroid and the follower's best response.
pub fn render(inst: &Instance, report: &SolveReport) -> String {
    let r = inst.half_separation();
    let follower = report.follower(inst.separation());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let pts = inst.customers().iter().map(|c| c.site).chain([report.centroid, follower]);
    for p in pts {
        x0 = x0.min(p.x - r);
        y0 = y0.min(p.y - r);
        x1 = x1.max(p.x + r);
        y1 = y1.max(p.y + r);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (x0, y0, w, h) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let unit = w.max(h) / 200.0;
    let wmax = inst.customers().iter().map(|c| c.weight).fold(0.0, f64::max);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {} {w} {h}" width="800" height="{}">"#,
        -(y0 + h),
        (800.0 * h / w).round()
    );
    // flip y so the plot reads like the plane
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    for c in inst.customers() {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{r}" fill="none" stroke="#9ab" stroke-width="{}"/>"##,
            c.site.x,
            c.site.y,
            0.5 * unit
        );
    }
    for c in inst.customers() {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#246"/>"##,
            c.site.x,
            c.site.y,
            unit * (1.0 + 2.0 * (c.weight / wmax).sqrt())
        );
    }
    let (c, f) = (report.centroid, follower);
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c33" stroke-dasharray="{} {}" stroke-width="{}"/>"##,
        c.x,
        c.y,
        f.x,
        f.y,
        2.0 * unit,
        unit,
        0.6 * unit
    );
    let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="{}" fill="#d80"/>"##, c.x, c.y, 2.5 * unit);
    let _ = writeln!(
        s,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#c33" stroke-width="{}"/>"##,
        f.x,
        f.y,
        2.5 * unit,
        0.8 * unit
    );
    s.push_str("</g>\n</svg>\n");
    s
}
