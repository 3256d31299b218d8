use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::prim::prim_dims;
use super::table::{j_prime, BettiTable, Session};
use crate::arnold::{self, basis_a, product_a, ForestMonomial};
use crate::bigraded::ComplexId;
use crate::diagrams::{enumerate_diagrams, Config, Diagram};
use crate::error::{Error, Result};
use crate::graphcomplex::{degeneracy_d, differential_d, face_d, ibar, ibar_comb, product_d};
use crate::kohno::{Kohno, LieElement};
use crate::linalg::{Field, LinComb};
use crate::Rational;

/// Largest number of points in the diagram-side and simplicial checks.
pub const MAX_POINTS_CHECKED: usize = 4;

/// The checkable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Every differential squares to zero; Euler characteristics match.
    DSquared,
    /// `H(D_n)` is `A_n`, concentrated in internal degree zero.
    DiagramHomology,
    /// `H(P_n)` is `L_n`, concentrated on the tree line.
    QuotientHomology,
    /// `H(Tot D) = H(Tot A)` cell by cell.
    TotD,
    /// `H(Tot P) = H(Tot L)` cell by cell.
    TotP,
    /// Primitives of `H(Tot A)` match `H(Tot L)` under `j' = j - i + 1`.
    Primitives,
    /// The low-degree classes of `H(Tot P)`, with certified representatives.
    Cycles,
    /// Vanishing outside the boundary lines.
    Support,
    /// (Co)simplicial identities and compatibility of `ibar`.
    Simplicial,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::DSquared,
        Claim::DiagramHomology,
        Claim::QuotientHomology,
        Claim::TotD,
        Claim::TotP,
        Claim::Primitives,
        Claim::Cycles,
        Claim::Support,
        Claim::Simplicial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::DSquared => "d-squared",
            Claim::DiagramHomology => "diagram-homology",
            Claim::QuotientHomology => "quotient-homology",
            Claim::TotD => "tot-d",
            Claim::TotP => "tot-p",
            Claim::Primitives => "primitives",
            Claim::Cycles => "cycles",
            Claim::Support => "support",
            Claim::Simplicial => "simplicial",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown claim `{s}`")))
    }
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: String,
    pub i: Option<usize>,
    pub degree: Option<i64>,
    pub expected: i64,
    pub actual: i64,
    pub pass: bool,
}

impl Verdict {
    fn new(label: impl Into<String>, i: Option<usize>, degree: Option<i64>, expected: i64, actual: i64) -> Self {
        Verdict {
            label: label.into(),
            i,
            degree,
            expected,
            actual,
            pass: expected == actual,
        }
    }
}

/// A homology class given by a cycle in a named basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRepresentative {
    pub complex: ComplexId,
    pub i: usize,
    pub degree: i64,
    pub level: usize,
    /// `(basis element, rational coefficient)`.
    pub terms: Vec<(String, String)>,
    /// Checked to be a cycle that is not a boundary.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub d: u32,
    pub max_complexity: usize,
    pub cells: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representatives: Vec<CycleRepresentative>,
}

impl VerificationReport {
    fn new(claim: Claim, cfg: &Config) -> Self {
        VerificationReport {
            claim,
            d: cfg.d,
            max_complexity: cfg.max_complexity,
            cells: Vec::new(),
            representatives: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass) && self.representatives.iter().all(|r| r.certified)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.cells.iter().filter(|c| !c.pass)
    }

    fn push(&mut self, v: Verdict) {
        self.cells.push(v);
    }

    /// Compare two tables at every cell present in either.
    fn compare(&mut self, label: &str, expected: &BettiTable, actual: &BettiTable) {
        let keys: BTreeSet<(usize, i64)> = expected
            .cells
            .iter()
            .chain(&actual.cells)
            .map(|c| (c.i, c.degree))
            .collect();
        for (i, degree) in keys {
            self.push(Verdict::new(
                label,
                Some(i),
                Some(degree),
                expected.dim(i, degree) as i64,
                actual.dim(i, degree) as i64,
            ));
        }
    }
}

fn point_range(cfg: &Config) -> std::ops::RangeInclusive<usize> {
    1..=MAX_POINTS_CHECKED.min(cfg.max_points)
}

pub fn verify(claim: Claim, session: &Session) -> Result<VerificationReport> {
    match claim {
        Claim::DSquared => verify_d_squared(session),
        Claim::DiagramHomology => verify_diagram_homology(session),
        Claim::QuotientHomology => verify_quotient_homology(session),
        Claim::TotD => verify_tot_d(session),
        Claim::TotP => verify_tot_p(session),
        Claim::Primitives => verify_primitives(session),
        Claim::Cycles => verify_cycles(session),
        Claim::Support => verify_support(session),
        Claim::Simplicial => verify_simplicial(session.config()),
    }
}

pub fn verify_all(session: &Session) -> Result<Vec<VerificationReport>> {
    Claim::ALL.iter().map(|&c| verify(c, session)).collect()
}

pub fn verify_d_squared(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::DSquared, cfg);
    let mut ids = vec![
        ComplexId::TotA,
        ComplexId::TotAIndecomposable,
        ComplexId::TotD,
        ComplexId::TotP,
        ComplexId::TotL,
    ];
    for n in point_range(cfg) {
        ids.push(ComplexId::Dn(n));
        ids.push(ComplexId::Pn(n));
    }
    for id in ids {
        let c = session.complex(id)?;
        let failures = c.d_squared_failures()?;
        for (&i, col) in &c.columns {
            let bad = failures.iter().filter(|f| f.0 == i).count();
            report.push(Verdict::new(format!("{id} d²"), Some(i), None, 0, bad as i64));
            let sign = |deg: i64| if deg % 2 == 0 { 1 } else { -1 };
            let chain: i64 = col
                .pieces
                .iter()
                .map(|(&deg, p)| sign(deg) * p.basis.len() as i64)
                .sum();
            let homology: i64 = col.homology()?.iter().map(|(&deg, &h)| sign(deg) * h as i64).sum();
            report.push(Verdict::new(format!("{id} euler"), Some(i), None, chain, homology));
        }
    }
    Ok(report)
}

/// Coefficient of `t^i` in `∏_{k=1}^{n-1} (1 + k t)`.
pub fn arnold_dim(n: usize, i: usize) -> u64 {
    let mut coeffs = vec![1u64];
    for k in 1..n as u64 {
        let mut next = vec![0u64; coeffs.len() + 1];
        for (e, &c) in coeffs.iter().enumerate() {
            next[e] += c;
            next[e + 1] += c * k;
        }
        coeffs = next;
    }
    coeffs.get(i).copied().unwrap_or(0)
}

pub fn verify_diagram_homology(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::DiagramHomology, cfg);
    for n in point_range(cfg) {
        let table = session.betti(ComplexId::Dn(n))?;
        for i in 0..=cfg.max_complexity {
            let top = (cfg.d as i64 - 1) * i as i64;
            let expected = arnold_dim(n, i) as i64;
            report.push(Verdict::new(
                format!("A_{n} basis vs product formula"),
                Some(i),
                None,
                expected,
                basis_a(n, i, cfg)?.len() as i64,
            ));
            report.push(Verdict::new(
                format!("D{n} top degree"),
                Some(i),
                Some(top),
                expected,
                table.dim(i, top) as i64,
            ));
            for c in table.cells.iter().filter(|c| c.i == i && c.degree != top) {
                report.push(Verdict::new(
                    format!("D{n} off top"),
                    Some(i),
                    Some(c.degree),
                    0,
                    c.dim as i64,
                ));
            }
        }
    }
    Ok(report)
}

pub fn verify_quotient_homology(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::QuotientHomology, cfg);
    for n in point_range(cfg) {
        let table = session.betti(ComplexId::Pn(n))?;
        for i in 1..=cfg.max_complexity {
            let tree = (cfg.d as i64 - 1) * i as i64 - (i as i64 - 1);
            let expected = session.kohno().basis(n, i)?.len() as i64;
            report.push(Verdict::new(
                format!("P{n} tree degree"),
                Some(i),
                Some(tree),
                expected,
                table.dim(i, tree) as i64,
            ));
            for c in table.cells.iter().filter(|c| c.i == i && c.degree != tree) {
                report.push(Verdict::new(
                    format!("P{n} off tree"),
                    Some(i),
                    Some(c.degree),
                    0,
                    c.dim as i64,
                ));
            }
        }
    }
    Ok(report)
}

pub fn verify_tot_d(session: &Session) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::TotD, session.config());
    report.compare(
        "totD vs totA",
        &session.betti(ComplexId::TotA)?,
        &session.betti(ComplexId::TotD)?,
    );
    Ok(report)
}

pub fn verify_tot_p(session: &Session) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::TotP, session.config());
    report.compare(
        "totP vs totL",
        &session.betti(ComplexId::TotL)?,
        &session.betti(ComplexId::TotP)?,
    );
    Ok(report)
}

pub fn verify_primitives(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::Primitives, cfg);
    let prim = match prim_dims(session) {
        Ok(p) => p,
        Err(Error::Consistency(msg)) => {
            report.push(Verdict::new(
                format!("two primitive counts agree: {msg}"),
                None,
                None,
                0,
                1,
            ));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.push(Verdict::new("two primitive counts agree", None, None, 0, 0));
    let lie = session.betti(ComplexId::TotL)?;
    for c in &prim.cells {
        let jp = j_prime(c.i, c.level);
        let label = match jp {
            Some(jp) => format!("prim (i={}, j={}) vs E2 (i={}, j'={jp})", c.i, c.level, c.i),
            None => format!("prim (i={}, j={})", c.i, c.level),
        };
        report.push(Verdict::new(
            label,
            Some(c.i),
            Some(c.degree),
            lie.dim(c.i, c.degree) as i64,
            c.dim as i64,
        ));
    }
    for c in lie.nonzero() {
        if prim.dim(c.i, c.degree) == 0 {
            report.push(Verdict::new(
                "E2 class without primitive",
                Some(c.i),
                Some(c.degree),
                c.dim as i64,
                0,
            ));
        }
    }
    Ok(report)
}

/// The classes `(complexity, degree, present)` expected at the bottom of `H(Tot P)`.
pub fn expected_cycles(d: u32) -> Vec<(usize, i64, bool)> {
    let d = d as i64;
    vec![(1, d - 3, true), (2, 2 * d - 6, true), (2, 2 * d - 5, d % 2 == 1)]
}

pub fn verify_cycles(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::Cycles, cfg);
    let tot = session.complex(ComplexId::TotP)?;
    let table = BettiTable::from_complex(&tot)?;
    for (i, degree, present) in expected_cycles(cfg.d) {
        if i > cfg.max_complexity {
            continue;
        }
        let dim = table.dim(i, degree);
        report.push(Verdict::new(
            if present { "class present" } else { "class absent" },
            Some(i),
            Some(degree),
            i64::from(present),
            i64::from(dim > 0),
        ));
        if let Some(rep) = representative(&tot, ComplexId::TotP, i, degree) {
            report.representatives.push(rep);
        }
    }
    Ok(report)
}

/// A certified non-bounding cycle of `complex` at `(i, degree)`, if any.
pub fn representative(
    complex: &crate::QBigradedComplex,
    id: ComplexId,
    i: usize,
    degree: i64,
) -> Option<CycleRepresentative> {
    let col = complex.columns.get(&i)?;
    let piece = col.pieces.get(&degree)?;
    let v = col.nonbounding_cycle(degree)?;
    Some(CycleRepresentative {
        complex: id,
        i,
        degree,
        level: piece.level,
        terms: v
            .iter()
            .map(|(&k, c)| (piece.basis[k].clone(), c.to_string()))
            .collect(),
        certified: col.certify_nonbounding(degree, &v),
    })
}

pub fn verify_support(session: &Session) -> Result<VerificationReport> {
    let cfg = session.config();
    let mut report = VerificationReport::new(Claim::Support, cfg);
    let a = session.betti(ComplexId::TotA)?;
    let l = session.betti(ComplexId::TotL)?;
    for i in 1..=cfg.max_complexity {
        let outside_a: usize = a
            .nonzero()
            .filter(|c| c.i == i && !(i + 1..=2 * i).contains(&c.level))
            .map(|c| c.dim)
            .sum();
        report.push(Verdict::new(
            "totA outside i+1 ≤ j ≤ 2i",
            Some(i),
            None,
            0,
            outside_a as i64,
        ));
        let outside_l: usize = l
            .nonzero()
            .filter(|c| c.i == i && !(2..=i + 1).contains(&c.level))
            .map(|c| c.dim)
            .sum();
        report.push(Verdict::new(
            "totL outside 2 ≤ j' ≤ i+1",
            Some(i),
            None,
            0,
            outside_l as i64,
        ));
    }
    Ok(report)
}

type Op<'a, E> = &'a dyn Fn(usize, &E) -> Result<E>;

/// Failures of the simplicial identities on `x` at level `n`; faces `0..=n`,
/// degeneracies `0..=n` (0-based).
fn simplicial_failures<E: PartialEq + Clone>(n: usize, x: &E, face: Op<E>, degen: Op<E>) -> Result<usize> {
    let mut bad = 0;
    let mut check = |a: E, b: E| bad += usize::from(a != b);
    if n >= 2 {
        for j in 1..=n {
            let dj = face(j, x)?;
            for i in 0..j {
                check(face(i, &dj)?, face(j - 1, &face(i, x)?)?);
            }
        }
    }
    for j in 0..=n {
        let sj = degen(j, x)?;
        for i in 0..=n + 1 {
            let lhs = face(i, &sj)?;
            if i == j || i == j + 1 {
                check(lhs, x.clone());
            } else if n >= 1 && i < j {
                check(lhs, degen(j - 1, &face(i, x)?)?);
            } else if n >= 1 {
                check(lhs, degen(j, &face(i - 1, x)?)?);
            }
        }
        for i in 0..=j {
            check(degen(i, &degen(j, x)?)?, degen(j + 1, &degen(i, x)?)?);
        }
    }
    Ok(bad)
}

/// Failures of the cosimplicial identities on `x` at level `n`; cofaces
/// `0..=n+1`, codegeneracies `0..n` (0-based).
fn cosimplicial_failures<E: PartialEq + Clone>(n: usize, x: &E, coface: Op<E>, codegen: Op<E>) -> Result<usize> {
    let mut bad = 0;
    let mut check = |a: E, b: E| bad += usize::from(a != b);
    for i in 0..=n + 1 {
        let di = coface(i, x)?;
        for j in i + 1..=n + 2 {
            check(coface(j, &di)?, coface(i, &coface(j - 1, x)?)?);
        }
        for j in 0..=n {
            let lhs = codegen(j, &di)?;
            if i == j || i == j + 1 {
                check(lhs, x.clone());
            } else if i < j {
                check(lhs, coface(i, &codegen(j - 1, x)?)?);
            } else {
                check(lhs, coface(i - 1, &codegen(j, x)?)?);
            }
        }
    }
    if n >= 2 {
        for j in 0..=n - 2 {
            for i in 0..=j {
                check(codegen(j, &codegen(i, x)?)?, codegen(i, &codegen(j + 1, x)?)?);
            }
        }
    }
    Ok(bad)
}

fn linear<K: Ord + Clone, K2: Ord + Clone, R: Field>(
    x: &LinComb<K, R>,
    f: impl Fn(&K) -> Result<LinComb<K2, R>>,
) -> Result<LinComb<K2, R>> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        out.add_assign_scaled(&f(k)?, c);
    }
    Ok(out)
}

/// Simplicial identities on `A_•` and `D_•`, cosimplicial identities on
/// `L^•`, and compatibility of `ibar` with faces, degeneracies, the
/// contraction differential and products, for at most four points.
pub fn verify_simplicial(cfg: &Config) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::Simplicial, cfg);
    let mut wide = *cfg;
    wide.max_points = wide.max_points.max(MAX_POINTS_CHECKED + 2);
    let cfg = &wide;
    let max_i = cfg.max_complexity;

    type A = LinComb<ForestMonomial, Rational>;
    type D = LinComb<Diagram, Rational>;
    let a_face = |k: usize, x: &A| linear(x, |m| arnold::face(k, m, cfg));
    let a_degen = |k: usize, x: &A| {
        linear(x, |m| {
            Ok(LinComb::single(arnold::degeneracy(k + 1, m)?, Rational::from_i64(1)))
        })
    };
    let d_face = |k: usize, x: &D| linear(x, |g| face_d(k, g, cfg));
    let d_degen = |k: usize, x: &D| linear(x, |g| degeneracy_d(k + 1, g, cfg));

    let kohno = Kohno::<Rational>::new(*cfg);
    let l_coface = |k: usize, x: &LieElement<Rational>| kohno.coface(k, x);
    let l_codegen = |k: usize, x: &LieElement<Rational>| kohno.codegeneracy(k + 1, x);

    for n in 0..=MAX_POINTS_CHECKED {
        let (mut a_bad, mut d_bad, mut l_bad) = (0, 0, 0);
        let (mut face_bad, mut degen_bad, mut diff_bad, mut prod_bad) = (0, 0, 0, 0);
        let mut a_basis = Vec::new();
        let mut d_basis = Vec::new();
        for i in 0..=max_i {
            a_basis.extend(basis_a(n, i, cfg)?);
            d_basis.extend(enumerate_diagrams(n, i, cfg)?);
            if n >= 2 && i >= 1 {
                for w in kohno.basis(n, i)? {
                    let x = LieElement::from_terms(n, [(w, Rational::from_i64(1))]);
                    l_bad += cosimplicial_failures(n, &x, &l_coface, &l_codegen)?;
                }
            }
        }
        for m in &a_basis {
            let x = LinComb::single(m.clone(), Rational::from_i64(1));
            a_bad += simplicial_failures(n, &x, &a_face, &a_degen)?;
        }
        for g in &d_basis {
            let x: D = LinComb::single(g.clone(), Rational::from_i64(1));
            d_bad += simplicial_failures(n, &x, &d_face, &d_degen)?;
            let image: A = ibar(g, cfg)?;
            if n >= 1 {
                for k in 0..=n {
                    face_bad += usize::from(ibar_comb(&face_d(k, g, cfg)?, cfg)? != a_face(k, &image)?);
                }
            }
            for k in 0..=n {
                degen_bad += usize::from(ibar_comb(&d_degen(k, &x)?, cfg)? != a_degen(k, &image)?);
            }
            diff_bad += usize::from(!ibar_comb::<Rational>(&differential_d(g, cfg)?, cfg)?.is_zero());
            for h in &d_basis {
                if g.complexity() + h.complexity() > max_i as i64 {
                    continue;
                }
                let lhs = ibar_comb(&product_d::<Rational>(g, h, cfg)?, cfg)?;
                let rhs = linear(&image, |p| linear(&ibar::<Rational>(h, cfg)?, |q| product_a(p, q, cfg)))?;
                prod_bad += usize::from(lhs != rhs);
            }
        }
        let mut push =
            |label: &str, bad: usize| report.push(Verdict::new(format!("{label}, n={n}"), None, None, 0, bad as i64));
        push("A simplicial identities", a_bad);
        push("D simplicial identities", d_bad);
        push("L cosimplicial identities", l_bad);
        push("ibar commutes with faces", face_bad);
        push("ibar commutes with degeneracies", degen_bad);
        push("ibar kills the contraction differential", diff_bad);
        push("ibar multiplicative", prod_bad);
    }
    Ok(report)
}
