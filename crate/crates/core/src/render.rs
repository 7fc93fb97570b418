//! Text rendering of light grids.

use crate::switching::LightGrid;

pub const ON: char = '●';
pub const OFF: char = '○';

/// One line per row (`●` on, `○` off) followed by a caption.
pub fn render_grid(grid: &LightGrid, value: Option<(&str, u64)>) -> String {
    let n = grid.n();
    let mut out = String::with_capacity(n * (3 * n + 1) + 32);
    for i in 0..n {
        for j in 0..n {
            out.push(if grid.get(i, j) > 0 { ON } else { OFF });
        }
        out.push('\n');
    }
    match value {
        Some((label, v)) => out.push_str(&format!("n = {n}, {label} = {v}\n")),
        None => out.push_str(&format!("n = {n}\n")),
    }
    out
}

/// Maps rendered glyph rows back to the `+`/`-` grid format, ignoring the
/// caption.
pub fn glyphs_to_grid_text(rendered: &str) -> String {
    rendered
        .lines()
        .filter(|l| l.starts_with([ON, OFF]))
        .map(|l| {
            let mut s: String = l.chars().map(|c| if c == ON { '+' } else { '-' }).collect();
            s.push('\n');
            s
        })
        .collect()
}
