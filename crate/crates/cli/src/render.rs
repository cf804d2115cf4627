//! SVG drawings of tile sets.
//!
//! Each tile is a square cut along its diagonals: the north quarter shows the
//! input digit, the south quarter the output digits, and the west and east
//! quarters the horizontal labels. Labels are coloured by their rank in the
//! sorted label list and named in a legend below the grid.

use std::fmt::Write;

use anyhow::{bail, Result};
use kariforge::karigen::{HLabel, ZTile, ZTileSet};

/// Larger sets are refused: the drawing would be unreadable.
pub const MAX_RENDERED_TILES: usize = 500;

const SIZE: usize = 60;
const GAP: usize = 10;
const COLUMNS: usize = 8;
const LINE: usize = 16;

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
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

/// Evenly spread hues from the golden angle.
fn colour(rank: usize) -> String {
    let hue = (rank as f64 * 137.507_764) % 360.0;
    format!("hsl({hue:.1},65%,75%)")
}

fn digit_colour(d: u8) -> &'static str {
    ["#ffffff", "#404040", "#a0a0a0", "#d0d0d0"]
        .get(usize::from(d))
        .copied()
        .unwrap_or("#808080")
}

fn bottom_text(tile: &ZTile, named: bool) -> String {
    if named {
        tile.bottom
            .iter()
            .map(|(g, d)| format!("{g}:{d}"))
            .collect::<Vec<_>>()
            .join(" ")
    } else {
        tile.out().to_string()
    }
}

fn text(svg: &mut String, x: usize, y: usize, body: &str) {
    writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-size="10" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
        escape(body)
    )
    .expect("writing to a string");
}

fn polygon(svg: &mut String, points: [(usize, usize); 3], fill: &str) {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
    writeln!(
        svg,
        r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
        pts.join(" ")
    )
    .expect("writing to a string");
}

/// Renders `tiles`; `generators` adds a caption naming the group generators.
pub fn render_svg(tiles: &ZTileSet, generators: Option<&[String]>) -> Result<String> {
    if tiles.len() > MAX_RENDERED_TILES {
        bail!(
            "{} tiles exceed the rendering limit of {MAX_RENDERED_TILES}",
            tiles.len()
        );
    }
    let labels: Vec<HLabel> = tiles.labels();
    let rank = |l: &HLabel| labels.binary_search(l).expect("label of the set");
    let named = tiles.outs().len() > 1 || generators.is_some();

    let rows = tiles.len().div_ceil(COLUMNS).max(1);
    let grid_h = GAP + rows * (SIZE + GAP);
    let caption_lines = usize::from(generators.is_some());
    let legend_y = grid_h + caption_lines * LINE + LINE;
    let height = legend_y + labels.len() * LINE + GAP;
    let width = (GAP + COLUMNS * (SIZE + GAP)).max(400);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace">"#
    )
    .expect("writing to a string");
    for (i, tile) in tiles.tiles().iter().enumerate() {
        let x0 = GAP + (i % COLUMNS) * (SIZE + GAP);
        let y0 = GAP + (i / COLUMNS) * (SIZE + GAP);
        let (x1, y1) = (x0 + SIZE, y0 + SIZE);
        let c = (x0 + SIZE / 2, y0 + SIZE / 2);
        polygon(&mut svg, [(x0, y0), (x1, y0), c], digit_colour(tile.top));
        polygon(&mut svg, [(x0, y1), (x1, y1), c], digit_colour(tile.out()));
        polygon(&mut svg, [(x0, y0), (x0, y1), c], &colour(rank(&tile.left)));
        polygon(
            &mut svg,
            [(x1, y0), (x1, y1), c],
            &colour(rank(&tile.right)),
        );
        text(&mut svg, c.0, y0 + 8, &tile.top.to_string());
        text(&mut svg, c.0, y1 - 8, &bottom_text(tile, named));
        text(&mut svg, x0 + 10, c.1, &format!("h{}", rank(&tile.left)));
        text(&mut svg, x1 - 10, c.1, &format!("h{}", rank(&tile.right)));
    }
    if let Some(gens) = generators {
        writeln!(
            svg,
            r#"<text x="{GAP}" y="{}" font-size="12">{}</text>"#,
            grid_h + LINE,
            escape(&format!(
                "{} tiles over Z x <{}>: north is the input, south the output per generator",
                tiles.len(),
                gens.join(", ")
            ))
        )
        .expect("writing to a string");
    }
    for (i, label) in labels.iter().enumerate() {
        let y = legend_y + i * LINE;
        writeln!(
            svg,
            r#"<rect x="{GAP}" y="{}" width="12" height="12" fill="{}" stroke="black" stroke-width="0.5"/>"#,
            y - 10,
            colour(i)
        )
        .expect("writing to a string");
        writeln!(
            svg,
            r#"<text x="{}" y="{y}" font-size="11">{}</text>"#,
            GAP + 18,
            escape(&format!("h{i} = {label}"))
        )
        .expect("writing to a string");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
