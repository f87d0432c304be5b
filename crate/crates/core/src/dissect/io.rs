//! JSON interchange and SVG rendering.

use serde::{Deserialize, Serialize};

use super::{DissectError, Dissection};
use crate::exact::{format_number, parse_number, TowerReal};
use crate::geom::{PlacedTriangle, Point};
use crate::trispace::Triangle;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DissectionFile {
    pub region: SidesFile,
    #[serde(rename = "declaredTile")]
    pub declared_tile: SidesFile,
    pub pieces: Vec<PieceFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SidesFile {
    pub sides: [String; 3],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub vertices: [[String; 2]; 3],
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn to_json(d: &Dissection) -> String {
    let region = d.triangle.exact_sides().expect("dissections hold exact regions");
    let file = DissectionFile {
        region: SidesFile {
            sides: region.map(|s| format_number(&s)),
        },
        declared_tile: SidesFile {
            sides: d.declared_tile.clone().map(|s| format_number(&s)),
        },
        pieces: d
            .pieces
            .iter()
            .map(|p| PieceFile {
                vertices: p.vertices().clone().map(|v| [format_number(&v.x), format_number(&v.y)]),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serialises");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Dissection, DissectError> {
    let file: DissectionFile = serde_json::from_str(text).map_err(|e| DissectError::Format(e.to_string()))?;
    let parse3 = |s: &[String; 3]| -> Result<[TowerReal; 3], DissectError> {
        Ok([parse_number(&s[0])?, parse_number(&s[1])?, parse_number(&s[2])?])
    };
    let [a, b, c] = parse3(&file.region.sides)?;
    let triangle = Triangle::from_sides(&a, &b, &c)?;
    let tile = parse3(&file.declared_tile.sides)?;
    let pieces = file
        .pieces
        .iter()
        .map(|p| {
            let v = p
                .vertices
                .iter()
                .map(|[x, y]| Ok(Point::new(parse_number(x)?, parse_number(y)?)))
                .collect::<Result<Vec<_>, DissectError>>()?;
            Ok(PlacedTriangle::new(v[0].clone(), v[1].clone(), v[2].clone())?)
        })
        .collect::<Result<Vec<_>, DissectError>>()?;
    Dissection::new(triangle, pieces, tile)
}

fn sig12(v: f64) -> String {
    let r: f64 = format!("{v:.11e}").parse().expect("formatted float");
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

const SVG_SIZE: f64 = 800.0;
const SVG_MARGIN: f64 = 20.0;

/// Renders filled pieces and a region outline; `y` is flipped so the region
/// appears upright.
pub fn svg_polygons(pieces: &[Vec<(f64, f64)>], outline: &[Vec<(f64, f64)>]) -> String {
    let all = pieces.iter().chain(outline).flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let scale = (SVG_SIZE - 2.0 * SVG_MARGIN) / (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let w = (x1 - x0) * scale + 2.0 * SVG_MARGIN;
    let h = (y1 - y0) * scale + 2.0 * SVG_MARGIN;
    let pts = |poly: &Vec<(f64, f64)>| {
        poly.iter()
            .map(|&(x, y)| {
                let sx = SVG_MARGIN + (x - x0) * scale;
                let sy = SVG_MARGIN + (y1 - y) * scale;
                format!("{},{}", sig12(sx), sig12(sy))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        sig12(w),
        sig12(h),
        sig12(w),
        sig12(h)
    );
    for (k, p) in pieces.iter().enumerate() {
        let hue = (k * 47) % 360;
        out.push_str(&format!(
            "  <polygon class=\"piece\" points=\"{}\" fill=\"hsl({hue},60%,80%)\" stroke=\"black\" stroke-width=\"1\"/>\n",
            pts(p)
        ));
    }
    for p in outline {
        out.push_str(&format!(
            "  <polygon class=\"outline\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n",
            pts(p)
        ));
    }
    out.push_str("</svg>\n");
    out
}

pub fn svg(d: &Dissection) -> String {
    let poly = |t: &PlacedTriangle| t.vertices().iter().map(Point::to_f64).collect::<Vec<_>>();
    let pieces: Vec<_> = d.pieces.iter().map(poly).collect();
    svg_polygons(&pieces, &[poly(&d.region)])
}

#[cfg(test)]
mod tests {
    use super::super::{standard_dissection, verify_dissection};
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let t = Triangle::exact(parse_number("7/8").unwrap(), parse_number("3/4").unwrap()).unwrap();
        let d = standard_dissection(&t, 3).unwrap();
        let text = to_json(&d);
        let back = from_json(&text).unwrap();
        assert!(verify_dissection(&back).valid);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn svg_has_one_polygon_per_piece_plus_outline() {
        let t = Triangle::exact(parse_number("1").unwrap(), parse_number("1").unwrap()).unwrap();
        let d = standard_dissection(&t, 3).unwrap();
        let s = svg(&d);
        assert_eq!(s.matches("<polygon").count(), 10);
        assert_eq!(s.matches("class=\"outline\"").count(), 1);
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(from_json("{\"region\":{\"sides\":[\"1\",\"1\",\"1\"]},\"extra\":1}").is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(400.0), "400");
    }
}
