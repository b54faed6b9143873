//! Deterministic SVG rendering of instances and labelings: the boundary
//! rectangle, sites as dots, leaders as two-segment polylines, labels as
//! rectangles, translucent bands over each group's labels, arrows for
//! ordering constraints, and red highlights on anything the verifier
//! flagged. Output bytes depend only on the input.

use std::fmt::Write as _;

use crate::model::{CandidateSource, Instance, Side};
use crate::rational::Rational;
use crate::verify::{Labeling, VerifyReport};

const GROUP_COLORS: &[&str] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
    "#1f78b4", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
]
.as_slice();

fn f(value: &Rational) -> f64 {
    let num = value.numer();
    let den = value.denom();
    let num: f64 = num.to_string().parse().unwrap_or(0.0);
    let den: f64 = den.to_string().parse().unwrap_or(1.0);
    num / den
}

struct Canvas {
    out: String,
    scale: f64,
    x0: f64,
    y1: f64,
}

impl Canvas {
    fn x(&self, v: f64) -> f64 {
        (v - self.x0) * self.scale + 40.0
    }

    fn y(&self, v: f64) -> f64 {
        (self.y1 - v) * self.scale + 40.0
    }
}

/// Renders an instance with an optional labeling. Violations from the
/// report, when given, are stroked red.
pub fn render_svg(
    instance: &Instance,
    labeling: Option<&Labeling>,
    report: Option<&VerifyReport>,
) -> String {
    let b = &instance.boundary;
    let label_width = (f(&b.x_right) - f(&b.x_left)) * 0.18;

    // world extent: boundary plus labels on both sides
    let mut lo_y = f(&b.y_bottom);
    let mut hi_y = f(&b.y_top);
    if let (Some(labeling), CandidateSource::Fixed(cands)) = (labeling, &instance.candidates) {
        for (site, cand) in &labeling.assignment {
            let c = &cands[cand.0];
            let h = f(&instance.sites[site.0].label_height);
            lo_y = lo_y.min(f(&c.y) - h / 2.0);
            hi_y = hi_y.max(f(&c.y) + h / 2.0);
        }
    }
    let x0 = f(&b.x_left) - label_width - 2.0;
    let x1 = f(&b.x_right) + label_width + 2.0;
    let scale = 720.0 / (x1 - x0).max(1e-9);
    let width = (x1 - x0) * scale + 80.0;
    let height = (hi_y - lo_y) * scale + 80.0;

    let mut canvas = Canvas {
        out: String::new(),
        scale,
        x0,
        y1: hi_y,
    };
    let _ = writeln!(
        canvas.out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    let _ = writeln!(
        canvas.out,
        "<rect x=\"0\" y=\"0\" width=\"{width:.1}\" height=\"{height:.1}\" fill=\"white\"/>"
    );

    // boundary box
    let bx = canvas.x(f(&b.x_left));
    let by = canvas.y(f(&b.y_top));
    let bw = (f(&b.x_right) - f(&b.x_left)) * scale;
    let bh = (f(&b.y_top) - f(&b.y_bottom)) * scale;
    let _ = writeln!(
        canvas.out,
        "<rect x=\"{bx:.2}\" y=\"{by:.2}\" width=\"{bw:.2}\" height=\"{bh:.2}\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\"/>"
    );

    let cands = match &instance.candidates {
        CandidateSource::Fixed(c) => c.as_slice(),
        CandidateSource::Sliding => &[],
    };

    // group bands behind everything else
    if let Some(labeling) = labeling {
        for (gi, group) in instance.constraints.groups.iter().enumerate() {
            let color = GROUP_COLORS[gi % GROUP_COLORS.len()];
            for side in [Side::Left, Side::Right] {
                let mut lo: Option<f64> = None;
                let mut hi: Option<f64> = None;
                for &s in group {
                    let Some(cand) = labeling.candidate_of(s) else { continue };
                    let c = &cands[cand.0];
                    if c.side != side {
                        continue;
                    }
                    let h = f(&instance.sites[s.0].label_height);
                    let top = f(&c.y) + h / 2.0;
                    let bottom = f(&c.y) - h / 2.0;
                    lo = Some(lo.map_or(bottom, |v: f64| v.min(bottom)));
                    hi = Some(hi.map_or(top, |v: f64| v.max(top)));
                }
                if let (Some(lo), Some(hi)) = (lo, hi) {
                    let x = match side {
                        Side::Right => canvas.x(f(&b.x_right)) + 1.0,
                        Side::Left => canvas.x(f(&b.x_left)) - label_width * scale - 1.0,
                    };
                    let _ = writeln!(
                        canvas.out,
                        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\" opacity=\"0.25\"/>",
                        x,
                        canvas.y(hi) - 2.0,
                        label_width * scale,
                        (hi - lo) * scale + 4.0,
                    );
                }
            }
        }
    }

    // leaders and labels
    if let Some(labeling) = labeling {
        let crossing_sites: std::collections::BTreeSet<usize> = report
            .map(|r| {
                r.leader_leader
                    .iter()
                    .flat_map(|&(a, b)| [a.0, b.0])
                    .chain(r.leader_site.iter().map(|&(a, _)| a.0))
                    .chain(r.label_overlaps.iter().flat_map(|&(a, b)| [a.0, b.0]))
                    .chain(r.separation.iter().map(|&(a, _)| a.0))
                    .collect()
            })
            .unwrap_or_default();
        for (site_id, cand_id) in &labeling.assignment {
            let site = &instance.sites[site_id.0];
            let cand = &cands[cand_id.0];
            let side_x = match cand.side {
                Side::Right => f(&b.x_right),
                Side::Left => f(&b.x_left),
            };
            let sx = canvas.x(f(&site.x));
            let sy = canvas.y(f(&site.y));
            let bendx = sx;
            let bendy = canvas.y(f(&cand.y));
            let portx = canvas.x(side_x);
            let (color, width) = if crossing_sites.contains(&site_id.0) {
                ("#d62728", 2.2)
            } else {
                ("#444", 1.2)
            };
            let _ = writeln!(
                canvas.out,
                "<polyline points=\"{sx:.2},{sy:.2} {bendx:.2},{bendy:.2} {portx:.2},{bendy:.2}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>"
            );
            // label rectangle
            let h = f(&site.label_height) * scale;
            let lx = match cand.side {
                Side::Right => portx,
                Side::Left => portx - label_width * scale,
            };
            let _ = writeln!(
                canvas.out,
                "<rect x=\"{lx:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"#f4f4f4\" stroke=\"{color}\" stroke-width=\"0.8\"/>",
                bendy - h / 2.0,
                label_width * scale,
            );
            let _ = writeln!(
                canvas.out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"{:.2}\" font-family=\"sans-serif\" fill=\"#111\">{}</text>",
                lx + 3.0,
                bendy + h * 0.18,
                (h * 0.6).min(14.0).max(6.0),
                site_id.0,
            );
        }
    }

    // ordering arrows along the boundary
    if let (Some(labeling), true) = (labeling, !instance.constraints.order.is_empty()) {
        for &(u, v) in &instance.constraints.order {
            let (Some(cu), Some(cv)) = (labeling.candidate_of(u), labeling.candidate_of(v)) else {
                continue;
            };
            let (cu, cv) = (&cands[cu.0], &cands[cv.0]);
            if cu.side != cv.side {
                continue;
            }
            let x = match cu.side {
                Side::Right => canvas.x(f(&b.x_right)) + label_width * scale + 6.0,
                Side::Left => canvas.x(f(&b.x_left)) - label_width * scale - 6.0,
            };
            let y_from = canvas.y(f(&cu.y));
            let y_to = canvas.y(f(&cv.y));
            let _ = writeln!(
                canvas.out,
                "<line x1=\"{x:.2}\" y1=\"{y_from:.2}\" x2=\"{x:.2}\" y2=\"{y_to:.2}\" stroke=\"#999\" stroke-width=\"0.8\" marker-end=\"url(#arrow)\"/>"
            );
        }
    }

    // sites on top
    for site in &instance.sites {
        let _ = writeln!(
            canvas.out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.6\" fill=\"#111\"/>",
            canvas.x(f(&site.x)),
            canvas.y(f(&site.y)),
        );
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        canvas
            .out
            .replacen(
                "\">",
                "\">\n<defs><marker id=\"arrow\" viewBox=\"0 0 6 6\" refX=\"5\" refY=\"3\" markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#999\"/></marker></defs>",
                1
            )
            .trim_end()
    );
    out.push_str("</svg>\n");
    out
}
