use crate::arnold::{reduce, ForestMonomial};
use crate::diagrams::{canonicalize_unchecked, contract, contractible_segments, Config, Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinComb};
use crate::sign::{koszul_sign, Sign};

pub type DnElement<R> = LinComb<Diagram, R>;

fn canonical_term<R: Field>(g: &Diagram, sign: Sign, cfg: &Config) -> DnElement<R> {
    match canonicalize_unchecked(g, cfg) {
        Some((c, s)) => LinComb::signed(c, sign * s),
        None => LinComb::zero(),
    }
}

fn linear<R: Field>(x: &DnElement<R>, mut f: impl FnMut(&Diagram) -> Result<DnElement<R>>) -> Result<DnElement<R>> {
    let mut out = LinComb::zero();
    for (g, c) in x.iter() {
        out.add_assign_scaled(&f(g)?, c);
    }
    Ok(out)
}

/// Sum of the contractions of all segments with an internal endpoint.
pub fn differential_d<R: Field>(g: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    let mut out = LinComb::zero();
    for s in contractible_segments(g) {
        out.add_assign(&contract::<R>(g, s, cfg)?);
    }
    Ok(out)
}

pub fn differential_d_comb<R: Field>(x: &DnElement<R>, cfg: &Config) -> Result<DnElement<R>> {
    linear(x, |g| differential_d(g, cfg))
}

/// Internal vertices of `y` are relabeled after those of `x`; the
/// orientation `[V_x, S_x, V_y, S_y]` is brought to `[V_x, V_y, S_x, S_y]`.
fn superimpose(x: &Diagram, y: &Diagram, cfg: &Config) -> (Diagram, Sign) {
    let shift = x.n_int() as u8;
    let up = |e: Endpoint| match e {
        Endpoint::Int(v) => Endpoint::Int(v + shift),
        other => other,
    };
    let mut segs = x.segments().to_vec();
    segs.extend(y.segments().iter().map(|&(a, b)| (up(a), up(b))));
    let (mx, sx, my, sy) = (x.n_int(), x.n_segments(), y.n_int(), y.n_segments());
    let mut odd = vec![cfg.vertex_odd(); mx];
    odd.extend(std::iter::repeat_n(cfg.segment_odd(), sx));
    odd.extend(std::iter::repeat_n(cfg.vertex_odd(), my));
    odd.extend(std::iter::repeat_n(cfg.segment_odd(), sy));
    let order: Vec<usize> = (0..mx)
        .chain(mx + sx..mx + sx + my)
        .chain(mx..mx + sx)
        .chain(mx + sx + my..mx + sx + my + sy)
        .collect();
    (Diagram::from_raw(x.n_ext(), mx + my, segs), koszul_sign(&odd, &order))
}

/// Superimposition product in `D_n`.
pub fn product_d<R: Field>(x: &Diagram, y: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    if x.n_ext() != y.n_ext() {
        return Err(Error::Shape(format!(
            "product of diagrams on {} and {} points",
            x.n_ext(),
            y.n_ext()
        )));
    }
    let (g, sign) = superimpose(x, y, cfg);
    Ok(canonical_term(&g, sign, cfg))
}

pub fn product_d_comb<R: Field>(x: &DnElement<R>, y: &DnElement<R>, cfg: &Config) -> Result<DnElement<R>> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_assign_scaled(&product_d::<R>(a, b, cfg)?, &(ca.clone() * cb.clone()));
        }
    }
    Ok(out)
}

/// Diagrams with internal vertices go to zero, chord diagrams to their
/// Arnold monomial.
pub fn ibar<R: Field>(g: &Diagram, cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    if g.has_internal() {
        return Ok(LinComb::zero());
    }
    let word: Vec<(u8, u8)> = g
        .segments()
        .iter()
        .map(|&(a, b)| match (a, b) {
            (Endpoint::Ext(a), Endpoint::Ext(b)) => (a, b),
            _ => unreachable!("no internal vertices"),
        })
        .collect();
    reduce(g.n_ext(), &word, cfg)
}

pub fn ibar_comb<R: Field>(x: &DnElement<R>, cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    let mut out = LinComb::zero();
    for (g, c) in x.iter() {
        out.add_assign_scaled(&ibar::<R>(g, cfg)?, c);
    }
    Ok(out)
}

fn map_ext(g: &Diagram, f: impl Fn(u8) -> u8) -> Vec<(Endpoint, Endpoint)> {
    let m = |e: Endpoint| match e {
        Endpoint::Ext(k) => Endpoint::Ext(f(k)),
        other => other,
    };
    g.segments().iter().map(|&(a, b)| (m(a), m(b))).collect()
}

/// Face `d_k: D_n → D_{n-1}`, `0 ≤ k ≤ n`.
pub fn face_d<R: Field>(k: usize, g: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    let n = g.n_ext();
    if n == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "face",
            index: k,
            max: n,
        });
    }
    let val = g.ext_valences();
    if k == 0 || k == n {
        let v = if k == 0 { 1 } else { n };
        if val[v - 1] != 0 {
            return Ok(LinComb::zero());
        }
        let shift = u8::from(k == 0);
        let segs = map_ext(g, |x| x - shift);
        return Ok(canonical_term(
            &Diagram::from_raw(n - 1, g.n_int(), segs),
            Sign::Plus,
            cfg,
        ));
    }
    let k = k as u8;
    let segs = map_ext(g, |x| if x <= k { x } else { x - 1 });
    if segs.iter().any(|(a, b)| a == b) {
        return Ok(LinComb::zero());
    }
    Ok(canonical_term(
        &Diagram::from_raw(n - 1, g.n_int(), segs),
        Sign::Plus,
        cfg,
    ))
}

/// Degeneracy `s_k: D_n → D_{n+1}`, `1 ≤ k ≤ n+1`: an isolated point at `k`.
pub fn degeneracy_d<R: Field>(k: usize, g: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    let n = g.n_ext();
    if k == 0 || k > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "degeneracy",
            index: k,
            max: n + 1,
        });
    }
    let k = k as u8;
    let segs = map_ext(g, |x| if x >= k { x + 1 } else { x });
    Ok(canonical_term(
        &Diagram::from_raw(n + 1, g.n_int(), segs),
        Sign::Plus,
        cfg,
    ))
}

/// The factors of `g` under superimposition: each chord, and each connected
/// component of the internal vertices together with its legs.
pub fn pieces(g: &Diagram) -> usize {
    let chords = (0..g.n_segments()).filter(|&s| g.is_chord(s)).count();
    let comp = g.components(false);
    let mut roots: Vec<usize> = (0..g.n_int()).map(|v| comp[g.n_ext() + v]).collect();
    roots.sort_unstable();
    roots.dedup();
    chords + roots.len()
}

/// Not a product of two non-trivial diagrams: exactly one piece.
pub fn is_indecomposable(g: &Diagram) -> bool {
    pieces(g) == 1
}

/// The projection `D_n → P_n = D̄_n / D̄_n²`.
pub fn project_p<R: Field>(x: &DnElement<R>) -> DnElement<R> {
    x.iter()
        .filter(|(g, _)| is_indecomposable(g))
        .map(|(g, c)| (g.clone(), c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use Endpoint::*;

    fn cfg(d: u32) -> Config {
        Config::new(d, 3).unwrap()
    }

    fn canon(g: Diagram, d: u32) -> Diagram {
        canonicalize_unchecked(&g, &cfg(d)).unwrap().0
    }

    #[test]
    fn tripod_differential_is_three_v_diagrams() {
        for d in [4, 5] {
            let tripod = Diagram::star(3, &[1, 2, 3]).unwrap();
            let dt: DnElement<Rational> = differential_d(&tripod, &cfg(d)).unwrap();
            assert_eq!(dt.len(), 3);
            assert!(dt.keys().all(|g| !g.has_internal() && g.n_segments() == 2));
            let img: LinComb<_, Rational> = ibar_comb(&dt, &cfg(d)).unwrap();
            assert!(img.is_zero());
            let forest = Diagram::chord(3, 1, 2).unwrap();
            assert!(differential_d::<Rational>(&forest, &cfg(d)).unwrap().is_zero());
        }
    }

    #[test]
    fn chord_squares() {
        let c = Diagram::chord(2, 1, 2).unwrap();
        assert!(product_d::<Rational>(&c, &c, &cfg(4)).unwrap().is_zero());
        let sq = product_d::<Rational>(&c, &c, &cfg(5)).unwrap();
        assert_eq!(sq.len(), 1);
        assert!(project_p(&sq).is_zero());
        let unit = Diagram::trivial(2);
        assert_eq!(
            product_d::<Rational>(&unit, &c, &cfg(4)).unwrap(),
            LinComb::single(c, Rational::from_i64(1))
        );
    }

    #[test]
    fn ibar_signs() {
        let g = Diagram::new(3, 0, vec![(Ext(1), Ext(3)), (Ext(3), Ext(2))]).unwrap();
        let x: LinComb<_, Rational> = ibar(&g, &cfg(4)).unwrap();
        let y: LinComb<_, Rational> = reduce(3, &[(1, 3), (2, 3)], &cfg(4)).unwrap();
        assert_eq!(x, y);
        let x: LinComb<_, Rational> = ibar(&g, &cfg(5)).unwrap();
        let y: LinComb<_, Rational> = reduce(3, &[(1, 3), (2, 3)], &cfg(5)).unwrap();
        assert_eq!(x, y.negated());
        let tripod = Diagram::star(3, &[1, 2, 3]).unwrap();
        assert!(ibar::<Rational>(&tripod, &cfg(4)).unwrap().is_zero());
    }

    #[test]
    fn faces_and_degeneracies() {
        let c = Diagram::chord(2, 1, 2).unwrap();
        assert!(face_d::<Rational>(1, &c, &cfg(4)).unwrap().is_zero());
        let tripod = canon(Diagram::star(3, &[1, 2, 3]).unwrap(), 4);
        assert!(face_d::<Rational>(0, &tripod, &cfg(4)).unwrap().is_zero());
        let s: DnElement<Rational> = degeneracy_d(1, &c, &cfg(4)).unwrap();
        assert_eq!(
            s,
            LinComb::single(Diagram::chord(3, 2, 3).unwrap(), Rational::from_i64(1))
        );
    }

    #[test]
    fn indecomposables() {
        let tripod = Diagram::star(3, &[1, 2, 3]).unwrap();
        assert!(is_indecomposable(&tripod));
        let padded = Diagram::star(4, &[1, 2, 3]).unwrap();
        assert!(is_indecomposable(&padded));
        let two = Diagram::new(3, 0, vec![(Ext(1), Ext(2)), (Ext(2), Ext(3))]).unwrap();
        assert!(!is_indecomposable(&two));
        assert!(!is_indecomposable(&Diagram::trivial(2)));
    }
}
