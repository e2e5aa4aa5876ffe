use std::fmt::Write;

use perapprox::spectral::BandSpectrum;

const WIDTH: f64 = 800.0;
const ROW: f64 = 28.0;
const LEFT: f64 = 110.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const AXIS: f64 = 50.0;

/// Band diagram: one row per approximant, energy on a linear horizontal axis.
pub fn band_diagram(rows: &[(usize, usize, &BandSpectrum)]) -> String {
    let lo = rows.iter().map(|r| r.2.min()).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.2.max()).fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.02 * (hi - lo).max(1e-9);
    let (e0, e1) = (lo - pad, hi + pad);
    let plot_w = WIDTH - LEFT - RIGHT;
    let x = |e: f64| LEFT + (e - e0) / (e1 - e0) * plot_w;
    let height = TOP + ROW * rows.len() as f64 + AXIS;
    let axis_y = TOP + ROW * rows.len() as f64;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#).unwrap();
    for (i, (k, q, bands)) in rows.iter().enumerate() {
        let y = TOP + ROW * (i as f64 + 0.5);
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">k={k} q={q}</text>"#, LEFT - 10.0, y + 4.0).unwrap();
        for &(a, b) in bands.intervals() {
            // very thin bands still get a visible tick
            let w = (x(b) - x(a)).max(0.8);
            writeln!(s, r#"<rect x="{:.3}" y="{:.2}" width="{:.3}" height="{:.2}" fill="black"/>"#, x(a), y - 7.0, w, 14.0).unwrap();
        }
    }
    writeln!(s, r#"<line x1="{LEFT}" y1="{axis_y}" x2="{:.2}" y2="{axis_y}" stroke="black"/>"#, WIDTH - RIGHT).unwrap();
    for t in 0..=4 {
        let e = e0 + (e1 - e0) * t as f64 / 4.0;
        let tx = x(e);
        writeln!(s, r#"<line x1="{tx:.2}" y1="{axis_y}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#, axis_y + 5.0).unwrap();
        writeln!(s, r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{e:.3}</text>"#, axis_y + 19.0).unwrap();
    }
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">energy E</text>"#, LEFT + plot_w / 2.0, axis_y + 40.0).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">approximant</text>"#, LEFT / 2.0, TOP - 12.0).unwrap();
    s.push_str("</svg>\n");
    s
}
