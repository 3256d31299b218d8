//! Line format: `"n_ext n_int ; e1-i0 e2-i0 i0-e3 ; v0 s0 s1 s2"`.
//!
//! The second field lists oriented segments as `source-target`, with `eK`
//! for external point `K` (1-based) and `iV` for internal vertex `V`
//! (0-based). The third field is the orientation: every internal vertex
//! `vV` and segment `sK` exactly once, optionally also every external point
//! `eK`. Parsing returns the diagram in normal order together with the
//! Koszul sign of reordering the given orientation into it.

use super::config::{Config, OrientationElement};
use super::diagram::{Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::sign::{koszul_sign, Sign};

/// Render `g` in normal orientation.
pub fn format_diagram(g: &Diagram) -> String {
    let segs: Vec<String> = g.segments().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let orient: Vec<String> = (0..g.n_int())
        .map(|v| format!("v{v}"))
        .chain((0..g.n_segments()).map(|s| format!("s{s}")))
        .collect();
    format!(
        "{} {} ; {} ; {}",
        g.n_ext(),
        g.n_int(),
        segs.join(" "),
        orient.join(" ")
    )
}

/// Parse one line; the diagram need not be admissible or canonical.
pub fn parse_diagram(text: &str, cfg: &Config) -> Result<(Diagram, Sign)> {
    let err = |msg: String| Error::parse(1, msg);
    let fields: Vec<&str> = text.trim().split(';').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(err(format!("expected 3 `;`-separated fields, got {}", fields.len())));
    }
    let counts: Vec<usize> = fields[0]
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(format!("bad count `{t}`"))))
        .collect::<Result<_>>()?;
    let [n, m] = counts[..] else {
        return Err(err("expected `n_ext n_int`".into()));
    };
    let segments = fields[1]
        .split_whitespace()
        .map(|t| {
            let (a, b) = t.split_once('-').ok_or_else(|| err(format!("bad segment `{t}`")))?;
            Ok((parse_endpoint(a).map_err(err)?, parse_endpoint(b).map_err(err)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Diagram::new(n, m, segments)?;

    let given: Vec<OrientationElement> = fields[2]
        .split_whitespace()
        .map(|t| parse_element(t).map_err(err))
        .collect::<Result<_>>()?;
    let with_ext = given.iter().any(|e| matches!(e, OrientationElement::External(_)));
    let mut normal: Vec<OrientationElement> = Vec::new();
    if with_ext {
        normal.extend((1..=n as u8).map(OrientationElement::External));
    }
    normal.extend((0..m as u8).map(OrientationElement::Internal));
    normal.extend((0..g.n_segments() as u8).map(OrientationElement::Segment));
    if given.len() != normal.len() {
        return Err(err(format!(
            "orientation lists {} elements, expected {}",
            given.len(),
            normal.len()
        )));
    }
    let mut order = Vec::with_capacity(normal.len());
    for e in &normal {
        let pos = given
            .iter()
            .position(|x| x == e)
            .ok_or_else(|| err(format!("orientation is missing {e:?}")))?;
        order.push(pos);
    }
    let odd: Vec<bool> = given.iter().map(|e| e.is_odd(cfg.d)).collect();
    Ok((g, koszul_sign(&odd, &order)))
}

fn parse_index(t: &str) -> std::result::Result<u8, String> {
    t.parse().map_err(|_| format!("bad index `{t}`"))
}

fn parse_endpoint(t: &str) -> std::result::Result<Endpoint, String> {
    match t.split_at_checked(1) {
        Some(("e", k)) => Ok(Endpoint::Ext(parse_index(k)?)),
        Some(("i", v)) => Ok(Endpoint::Int(parse_index(v)?)),
        _ => Err(format!("bad endpoint `{t}`")),
    }
}

fn parse_element(t: &str) -> std::result::Result<OrientationElement, String> {
    match t.split_at_checked(1) {
        Some(("e", k)) => Ok(OrientationElement::External(parse_index(k)?)),
        Some(("v", v)) => Ok(OrientationElement::Internal(parse_index(v)?)),
        Some(("s", s)) => Ok(OrientationElement::Segment(parse_index(s)?)),
        _ => Err(format!("bad orientation element `{t}`")),
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_diagram(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = Config::new(4, 3).unwrap();
        let g = Diagram::star(3, &[1, 2, 3]).unwrap();
        let s = format_diagram(&g);
        assert_eq!(s, "3 1 ; i0-e1 i0-e2 i0-e3 ; v0 s0 s1 s2");
        assert_eq!(parse_diagram(&s, &cfg).unwrap(), (g, Sign::Plus));
    }

    #[test]
    fn orientation_sign() {
        let even = Config::new(4, 3).unwrap();
        let odd = Config::new(5, 3).unwrap();
        let line = "3 1 ; i0-e1 i0-e2 i0-e3 ; v0 s1 s0 s2";
        assert_eq!(parse_diagram(line, &even).unwrap().1, Sign::Minus);
        assert_eq!(parse_diagram(line, &odd).unwrap().1, Sign::Plus);
        let line = "2 0 ; e1-e2 ; e2 e1 s0";
        assert_eq!(parse_diagram(line, &even).unwrap().1, Sign::Minus);
    }

    #[test]
    fn rejects_garbage() {
        let cfg = Config::new(4, 3).unwrap();
        for bad in [
            "",
            "2 0 ; e1-e2",
            "2 0 ; e1-x2 ; s0",
            "2 0 ; e1-e2 ; s0 s0",
            "2 0 ; e1-e3 ; s0",
        ] {
            assert!(parse_diagram(bad, &cfg).is_err(), "{bad}");
        }
    }
}
