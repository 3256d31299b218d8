use super::canon::canonicalize_unchecked;
use super::config::Config;
use super::diagram::{Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinComb};
use crate::sign::{koszul_sign, Sign};

/// Indices of segments with at least one internal endpoint.
pub fn contractible_segments(g: &Diagram) -> Vec<usize> {
    (0..g.n_segments()).filter(|&s| !g.is_chord(s)).collect()
}

/// Contract segment `s`, merging its endpoints.
///
/// The disappearing vertex is the internal endpoint (the target, when both
/// are internal). The segment is first turned to point at it, then the pair
/// `[segment, vertex]` is moved to the front of the orientation and dropped.
pub fn contract<R: Field>(g: &Diagram, s: usize, cfg: &Config) -> Result<LinComb<Diagram, R>> {
    if s >= g.n_segments() {
        return Err(Error::IndexOutOfRange {
            what: "segment",
            index: s,
            max: g.n_segments(),
        });
    }
    if g.is_chord(s) {
        return Err(Error::Malformed("chords are not contracted".into()));
    }
    let (a, b) = g.segments()[s];
    let (survivor, gone, mut sign) = match (a, b) {
        (_, Endpoint::Int(v)) => (a, v, Sign::Plus),
        (Endpoint::Int(v), _) => (b, v, cfg.reversal_sign()),
        _ => unreachable!(),
    };

    // orientation: [v_0 .. v_{m-1}, s_0 .. s_{k-1}]
    let m = g.n_int();
    let k = g.n_segments();
    let mut odd = vec![cfg.vertex_odd(); m];
    odd.extend(std::iter::repeat_n(cfg.segment_odd(), k));
    let seg_pos = m + s;
    let vert_pos = gone as usize;
    let mut order = vec![seg_pos, vert_pos];
    order.extend((0..m + k).filter(|&p| p != seg_pos && p != vert_pos));
    sign *= koszul_sign(&odd, &order);

    let relabel = |e: Endpoint| -> Endpoint {
        match e {
            Endpoint::Int(v) if v == gone => relabel_survivor(survivor, gone),
            Endpoint::Int(v) if v > gone => Endpoint::Int(v - 1),
            x => x,
        }
    };
    let mut segs = Vec::with_capacity(k - 1);
    for (t, &(x, y)) in g.segments().iter().enumerate() {
        if t == s {
            continue;
        }
        let (x, y) = (relabel(x), relabel(y));
        if x == y {
            return Ok(LinComb::zero());
        }
        segs.push((x, y));
    }
    let h = Diagram::from_raw(g.n_ext(), m - 1, segs);
    Ok(match canonicalize_unchecked(&h, cfg) {
        Some((c, cs)) => LinComb::signed(c, sign * cs),
        None => LinComb::zero(),
    })
}

fn relabel_survivor(survivor: Endpoint, gone: u8) -> Endpoint {
    match survivor {
        Endpoint::Int(w) if w > gone => Endpoint::Int(w - 1),
        x => x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use Endpoint::*;

    #[test]
    fn tripod_leg() {
        for d in [4u32, 5] {
            let cfg = Config::new(d, 3).unwrap();
            let tripod = Diagram::star(3, &[1, 2, 3]).unwrap();
            let r: LinComb<Diagram, BigRational> = contract(&tripod, 0, &cfg).unwrap();
            assert_eq!(r.len(), 1);
            let (g, _) = r.iter().next().unwrap();
            assert_eq!(g.segments(), &[(Ext(1), Ext(2)), (Ext(1), Ext(3))]);
        }
    }

    #[test]
    fn loop_gives_zero() {
        // theta graph on two internal vertices hanging off the line
        let cfg = Config::new(5, 3).unwrap();
        let g = Diagram::new(
            2,
            2,
            vec![(Int(0), Int(1)), (Int(0), Int(1)), (Int(0), Ext(1)), (Int(1), Ext(2))],
        )
        .unwrap();
        let r: LinComb<Diagram, BigRational> = contract(&g, 0, &cfg).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn chord_rejected() {
        let cfg = Config::new(4, 3).unwrap();
        let g = Diagram::chord(2, 1, 2).unwrap();
        assert!(contractible_segments(&g).is_empty());
        assert!(contract::<BigRational>(&g, 0, &cfg).is_err());
    }
}
