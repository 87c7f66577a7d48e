//! CSV, SVG and sidecar metadata writers.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};

/// One sampled value. `post` rows hold the right limit at a jump time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub value: Complex64,
    pub post: bool,
}

/// `n` uniform points on `[0, T]` merged with the jump times. Each jump time
/// appears once; the caller adds its post-jump row.
pub fn sample_times(d: &Derivator, n: usize) -> Vec<f64> {
    let t_end = d.horizon();
    let n = n.max(2);
    let mut ts: Vec<f64> = (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect();
    ts.extend(d.jumps().iter().map(|j| j.t));
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// Samples `value` on [`sample_times`], adding a `post` row with
/// `value_right` at every jump.
pub fn sample(
    d: &Derivator,
    n: usize,
    value: &dyn Fn(f64) -> Result<Complex64>,
    value_right: &dyn Fn(f64) -> Result<Complex64>,
) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for t in sample_times(d, n) {
        out.push(Sample {
            t,
            value: value(t)?,
            post: false,
        });
        if d.jump_at(t) > 0.0 {
            out.push(Sample {
                t,
                value: value_right(t)?,
                post: true,
            });
        }
    }
    Ok(out)
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_text(samples: &[Sample]) -> String {
    let mut s = String::from("t,value,value_im,post\n");
    for r in samples {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_num(r.t),
            fmt_num(r.value.re),
            fmt_num(r.value.im),
            u8::from(r.post)
        );
    }
    s
}

/// Parses a CSV written by [`csv_text`].
pub fn parse_csv(text: &str) -> Result<Vec<Sample>> {
    let mut lines = text.lines();
    if lines.next() != Some("t,value,value_im,post") {
        return Err(Error::Config("unexpected CSV header".into()));
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Config(format!("bad number '{s}'")));
            match f.as_slice() {
                [t, re, im, post] => Ok(Sample {
                    t: num(t)?,
                    value: Complex64::new(num(re)?, num(im)?),
                    post: *post == "1",
                }),
                _ => Err(Error::Config(format!("bad CSV row '{line}'"))),
            }
        })
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Line plot of the real parts. The curve is broken at each jump and the gap
/// is drawn as a dashed vertical segment.
pub fn svg_text(title: &str, samples: &[Sample]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    let (t0, t1) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.t), b.max(s.t)));
    let (mut y0, mut y1) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.value.re), b.max(s.value.re)));
    if !(y1 > y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let tx = |t: f64| PAD + (t - t0) / (t1 - t0).max(f64::MIN_POSITIVE) * (W - 2.0 * PAD);
    let ty = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    let mut verticals = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let p = (tx(s.t), ty(s.value.re));
        if s.post {
            if let Some(prev) = i.checked_sub(1).map(|j| &samples[j]) {
                verticals.push((tx(prev.t), ty(prev.value.re), p.1));
            }
            segments.push(Vec::new());
        }
        segments.last_mut().expect("non-empty").push(p);
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{PAD}" y="20" font-family="sans-serif" font-size="14">{}</text>"#,
        title.replace('&', "&amp;").replace('<', "&lt;")
    );
    let _ = writeln!(
        s,
        r#"<line x1="{PAD}" y1="{y}" x2="{x2}" y2="{y}" stroke="gray"/>"#,
        y = H - PAD,
        x2 = W - PAD
    );
    for seg in segments.iter().filter(|seg| !seg.is_empty()) {
        let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    }
    for (x, ya, yb) in verticals {
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{ya:.2}" x2="{x:.2}" y2="{yb:.2}" stroke="steelblue" stroke-dasharray="3,3"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Sidecar `key = value` lines. Kept out of the CSV so data files stay
/// byte-identical across runs.
pub fn meta_text(entries: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in entries {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_and_post_rows() {
        let d = Derivator::pure_jump(1.0, [(0.3, 1.0)]).unwrap();
        let f = |t: f64| Ok(Complex64::new(d.g(t) + t / 3.0, -t));
        let fr = |t: f64| Ok(Complex64::new(d.g_right(t) + t / 3.0, -t));
        let rows = sample(&d, 11, &f, &fr).unwrap();
        assert_eq!(rows.iter().filter(|r| r.post).count(), 1);
        let back = parse_csv(&csv_text(&rows)).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn svg_has_one_polyline_per_piece() {
        let d = Derivator::pure_jump(1.0, [(0.3, 1.0), (0.6, 1.0)]).unwrap();
        let f = |t: f64| Ok(Complex64::new(d.g(t), 0.0));
        let fr = |t: f64| Ok(Complex64::new(d.g_right(t), 0.0));
        let svg = svg_text("g", &sample(&d, 5, &f, &fr).unwrap());
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }
}
