//! Hand-emitted SVG scatter plot of Shapiro-Wilk p-value against sample
//! size. No plotting dependency: the output is a small, standalone,
//! byte-reproducible XML document.

use crate::corpus::CorpusRecord;
use crate::error::{Error, Result};
use crate::special::Probability;
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 58.0;

/// Renders the scatter plot: x is sample size on a log10 scale, y is the
/// p-value in [0, 1], one circle per record, plus a horizontal reference
/// line at `alpha`.
pub fn scatter_svg_string(records: &[CorpusRecord], alpha: Probability) -> Result<String> {
    if records.is_empty() {
        return Err(Error::Usage("cannot plot an empty record set".into()));
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let log_n = |n: usize| (n as f64).log10();
    let n_min = records.iter().map(|r| r.n).min().expect("non-empty");
    let n_max = records.iter().map(|r| r.n).max().expect("non-empty");
    let mut x_lo = log_n(n_min).floor();
    let mut x_hi = log_n(n_max).ceil();
    if x_hi - x_lo < 1.0 {
        // degenerate span: widen to a full decade around the data
        x_lo -= 0.5;
        x_hi = x_lo + 1.0 + (x_hi - x_lo).max(0.0);
    }
    let x_of = |n: usize| MARGIN_LEFT + (log_n(n) - x_lo) / (x_hi - x_lo) * plot_w;
    let y_of = |p: f64| MARGIN_TOP + (1.0 - p) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = MARGIN_TOP;
    let y1 = HEIGHT - MARGIN_BOTTOM;
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y1:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black" stroke-width="1"/>"#
    );

    // x ticks at powers of ten
    let mut decade = x_lo.ceil() as i32;
    while (decade as f64) <= x_hi {
        let n = 10f64.powi(decade);
        let x = MARGIN_LEFT + (decade as f64 - x_lo) / (x_hi - x_lo) * plot_w;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y1:.2}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            y1 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            y1 + 20.0,
            n as u64
        );
        decade += 1;
    }

    // y ticks every 0.2
    for k in 0..=5 {
        let p = k as f64 * 0.2;
        let y = y_of(p);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black" stroke-width="1"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{p:.1}</text>"#,
            x0 - 9.0,
            y + 4.0
        );
    }

    // axis labels
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">sample size (log scale)</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">Shapiro-Wilk p-value</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    // reference line at p = alpha
    let y_alpha = y_of(alpha.value());
    let _ = writeln!(
        svg,
        r#"<line class="ref" x1="{x0:.2}" y1="{y_alpha:.2}" x2="{x1:.2}" y2="{y_alpha:.2}" stroke="crimson" stroke-width="1.5" stroke-dasharray="6 4"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="crimson" text-anchor="start">p = {}</text>"#,
        x1 - 54.0,
        y_alpha - 6.0,
        alpha.value()
    );

    // data markers
    for r in records {
        let _ = writeln!(
            svg,
            r#"<circle class="pt" cx="{:.2}" cy="{:.2}" r="3" fill="steelblue" fill-opacity="0.65"/>"#,
            x_of(r.n),
            y_of(r.sw_p.value())
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes the plot to `path` (write-then-rename, so a failed
/// write never leaves a truncated file).
pub fn scatter_svg(records: &[CorpusRecord], path: &Path, alpha: Probability) -> Result<()> {
    let svg = scatter_svg_string(records, alpha)?;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = path.with_extension("svg.tmp");
    if let Some(dir) = dir {
        if !dir.as_os_str().is_empty() && !dir.exists() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("directory {} does not exist", dir.display()),
            )));
        }
    }
    std::fs::write(&tmp, svg)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, n: usize, p: f64) -> CorpusRecord {
        CorpusRecord {
            variable_id: id.into(),
            n,
            sw_w: 0.95,
            sw_p: Probability::new(p).unwrap(),
        }
    }

    #[test]
    fn one_record_yields_one_marker_and_one_reference_line() {
        let svg =
            scatter_svg_string(&[record("a", 25, 0.3)], Probability::new(0.05).unwrap()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches(r#"class="ref""#).count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn marker_at_alpha_sits_on_the_reference_line() {
        let alpha = Probability::new(0.05).unwrap();
        let svg = scatter_svg_string(&[record("a", 100, 0.05)], alpha).unwrap();
        let cy = svg
            .split("cy=\"")
            .nth(1)
            .and_then(|s| s.split('"').next())
            .unwrap()
            .to_string();
        let ref_line = svg
            .split("class=\"ref\"")
            .nth(1)
            .unwrap()
            .split("y1=\"")
            .nth(1)
            .and_then(|s| s.split('"').next())
            .unwrap()
            .to_string();
        assert_eq!(cy, ref_line);
    }

    #[test]
    fn empty_records_are_a_usage_error() {
        assert!(matches!(
            scatter_svg_string(&[], Probability::new(0.05).unwrap()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn output_is_byte_reproducible() {
        let records: Vec<CorpusRecord> = (0..40)
            .map(|i| record(&format!("v{i}"), 10 + i * 13, (i as f64 * 0.023) % 1.0))
            .collect();
        let alpha = Probability::new(0.05).unwrap();
        let a = scatter_svg_string(&records, alpha).unwrap();
        let b = scatter_svg_string(&records, alpha).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<circle").count(), 40);
    }

    #[test]
    fn file_write_is_atomic_and_errors_on_missing_dir() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        scatter_svg(&[record("a", 10, 0.5)], &path, Probability::new(0.05).unwrap()).unwrap();
        assert!(path.exists());
        let missing = dir.path().join("no/such/dir/plot.svg");
        assert!(matches!(
            scatter_svg(&[record("a", 10, 0.5)], &missing, Probability::new(0.05).unwrap()),
            Err(Error::Io(_))
        ));
    }
}
