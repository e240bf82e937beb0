//! CSV and SVG output. Both are deterministic functions of the grid.

use std::fmt::Write;

use super::{Grid, Shade};
use crate::numerics::rational::fmt_pq;

pub const CSV_HEADER: &str = "alpha,beta,rule_id,verdict,kind";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

pub fn render(grid: &Grid, format: Format) -> String {
    match format {
        Format::Csv => to_csv(grid),
        Format::Svg => to_svg(grid),
    }
}

/// One row per cell and rule, cells in grid order, rules in evaluation order.
pub fn to_csv(grid: &Grid) -> String {
    let mut out = String::with_capacity(grid.cells.len() * 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for cell in &grid.cells {
        let (a, b) = (fmt_pq(&cell.alpha), fmt_pq(&cell.beta));
        for c in &cell.classifications {
            writeln!(
                out,
                "{a},{b},{},{},{}",
                c.rule_id,
                c.verdict.as_str(),
                c.kind.as_str()
            )
            .unwrap();
        }
    }
    out
}

const MARGIN: u32 = 48;
const SIDE: u32 = 480;

fn fill(shade: Shade) -> Option<&'static str> {
    match shade {
        Shade::Winning => Some("#2b6cd4"),
        Shade::Losing => Some("#d43b2b"),
        Shade::ConjectureWinning => Some("url(#hatch-win)"),
        Shade::ConjectureLosing => Some("url(#hatch-lose)"),
        Shade::Unknown => None,
    }
}

/// The unit square with α to the right and β upward. Each grid point owns
/// the square of side `1/(n+1)` centered on it; unknown cells stay white.
pub fn to_svg(grid: &Grid) -> String {
    let total = SIDE + 2 * MARGIN;
    let n = grid.grid_n as f64;
    let cell = SIDE as f64 / (n + 1.0);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .unwrap();
    writeln!(
        out,
        "<title>Schmidt diagram: {}</title>",
        grid.target.label()
    )
    .unwrap();
    out.push_str(concat!(
        "<defs>\n",
        r##"<pattern id="hatch-win" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#2b6cd4" stroke-width="3"/></pattern>"##,
        "\n",
        r##"<pattern id="hatch-lose" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(-45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#d43b2b" stroke-width="3"/></pattern>"##,
        "\n</defs>\n",
    ));
    writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{SIDE}" height="{SIDE}" fill="#ffffff"/>"##
    )
    .unwrap();
    for (k, zv) in grid.cells.iter().enumerate() {
        let Some(color) = fill(zv.shade()) else {
            continue;
        };
        let (i, j) = (
            (k / grid.grid_n) as f64 + 1.0,
            (k % grid.grid_n) as f64 + 1.0,
        );
        let x = MARGIN as f64 + (i - 0.5) * cell;
        let y = MARGIN as f64 + SIDE as f64 - (j + 0.5) * cell;
        writeln!(
            out,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}" fill="{color}"/>"#
        )
        .unwrap();
    }
    let (lo, hi) = (MARGIN, MARGIN + SIDE);
    writeln!(
        out,
        r##"<rect x="{lo}" y="{lo}" width="{SIDE}" height="{SIDE}" fill="none" stroke="#000000" stroke-width="1"/>"##
    )
    .unwrap();
    let font = r#"font-family="serif" font-size="16" text-anchor="middle""#;
    writeln!(
        out,
        r#"<text x="{}" y="{}" {font}>α</text>"#,
        lo + SIDE / 2,
        hi + 36
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" {font}>β</text>"#,
        lo - 30,
        lo + SIDE / 2
    )
    .unwrap();
    for (label, x, y) in [
        ("0", lo, hi + 18),
        ("1", hi, hi + 18),
        ("1", lo - 14, lo + 5),
    ] {
        writeln!(out, r#"<text x="{x}" y="{y}" {font}>{label}</text>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::TargetSet;
    use crate::diagram::{sweep, SweepOptions, Verdict};
    use crate::numerics::rat;

    #[test]
    fn csv_rows() {
        let g = sweep(&TargetSet::ReferenceS, 1, &SweepOptions::default()).unwrap();
        assert_eq!(
            to_csv(&g),
            "alpha,beta,rule_id,verdict,kind\n\
             1/2,1/2,trivial-a,Inapplicable,TRIVIAL\n\
             1/2,1/2,trivial-b,Inapplicable,TRIVIAL\n\
             1/2,1/2,thm-nontrivial-s,Losing,THEOREM\n"
        );
    }

    #[test]
    fn all_inapplicable_grid_is_white() {
        let mut g = sweep(&TargetSet::Generic, 2, &SweepOptions::default()).unwrap();
        for c in g
            .cells
            .iter_mut()
            .flat_map(|zv| zv.classifications.iter_mut())
        {
            c.verdict = Verdict::Inapplicable;
        }
        assert_eq!(to_csv(&g).lines().count(), 1 + 4 * 2);
        let svg = to_svg(&g);
        assert!(!svg.contains("#2b6cd4\"/>") && !svg.contains("url(#hatch"));
        assert!(svg.contains(">α</text>") && svg.contains(">β</text>"));
    }

    #[test]
    fn conjecture_cells_are_hatched() {
        let g = sweep(
            &TargetSet::DMinus { c: rat(7, 10) },
            9,
            &SweepOptions::default(),
        )
        .unwrap();
        let svg = to_svg(&g);
        assert!(
            svg.contains(r#"fill="url(#hatch-win)""#) || svg.contains(r#"fill="url(#hatch-lose)""#)
        );
        assert_eq!(svg, to_svg(&g));
    }
}
