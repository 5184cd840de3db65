//! Minimal SVG heatmap for distance matrices: linear grayscale, darker is
//! closer, row order supplied by the caller (classification order).

use citeclust_core::compare::DistanceMatrix;

const CELL: usize = 14;
const LABEL_SPACE: usize = 120;

pub fn render(matrix: &DistanceMatrix, order: &[usize]) -> String {
    let n = matrix.len();
    let side = LABEL_SPACE + n * CELL;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side}\" height=\"{side}\" \
         font-family=\"monospace\" font-size=\"10\">\n"
    ));
    for (row, &i) in order.iter().enumerate() {
        let y = LABEL_SPACE + row * CELL;
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            LABEL_SPACE - 4,
            y + CELL - 4,
            xml_escape(&matrix.labels()[i])
        ));
        for (col, &j) in order.iter().enumerate() {
            let x = LABEL_SPACE + col * CELL;
            let level = (matrix.value(i, j).clamp(0.0, 1.0) * 255.0).round() as u8;
            svg.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
                 fill=\"rgb({level},{level},{level})\"/>\n"
            ));
        }
    }
    for (col, &j) in order.iter().enumerate() {
        let x = LABEL_SPACE + col * CELL;
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" transform=\"rotate(-90 {} {})\">{}</text>\n",
            x + CELL - 4,
            LABEL_SPACE - 4,
            x + CELL - 4,
            LABEL_SPACE - 4,
            xml_escape(&matrix.labels()[j])
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
