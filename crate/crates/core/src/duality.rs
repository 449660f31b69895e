//! Verification reports: cone, join and product formulas, Borel–Moore
//! models, Poincaré duality, complementary duality over fields, biduality
//! and the local Deligne conditions on cone charts.
//!
//! Every expected value is computed by applying a formula to independently
//! computed inputs; nothing is hard-coded.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::matrix::collect_vec;
use crate::algebra::{Coefficients, DegreeSummary, Echelon, HomologySummary, Int, Scalars, SparseVec};
use crate::blowup::{blowup_cohomology, BlowupComplex, Restriction};
use crate::chains::{intersection_complex, Bidual, ChainOptions, Theory};
use crate::constructors::{cone, join_sphere, product_cube, Space};
use crate::error::{Error, Result};
use crate::filtered::Orientation;
use crate::perversity::Perversity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub degree: i64,
    pub expected: DegreeSummary,
    pub computed: DegreeSummary,
    pub source: String,
    pub pass: bool,
}

impl Row {
    fn new(degree: i64, expected: DegreeSummary, computed: DegreeSummary, source: impl Into<String>) -> Self {
        let pass = expected == computed;
        Row { degree, expected, computed, source: source.into(), pass }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub check: String,
    pub space: String,
    pub perversity: String,
    pub coefficients: Coefficients,
    pub rows: Vec<Row>,
    pub verdict: Verdict,
    /// Filled in by callers that ask for timing; never part of the default
    /// output so that reports are byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl DualityReport {
    fn new(check: &str, space: &str, perversity: String, coefficients: Coefficients, rows: Vec<Row>, start: Instant) -> Self {
        let verdict = if rows.iter().all(|r| r.pass) { Verdict::Pass } else { Verdict::Fail };
        DualityReport {
            check: check.to_string(),
            space: space.to_string(),
            perversity,
            coefficients,
            rows,
            verdict,
            timing_ms: None,
            elapsed: start.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_timing(mut self) -> Self {
        self.timing_ms = Some(self.elapsed.as_millis() as u64);
        self
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {} on {} with {} over {}",
            self.check, self.space, self.perversity, self.coefficients
        )?;
        for r in &self.rows {
            let mark = if r.pass { "ok" } else { "MISMATCH" };
            writeln!(f, "  {:>3}  expected {:<12} computed {:<12} {:<8} {}", r.degree, r.expected.to_string(), r.computed.to_string(), mark, r.source)?;
        }
        Ok(())
    }
}

fn tame(coeff: Coefficients) -> ChainOptions<'static> {
    ChainOptions::new(Theory::Tame, coeff)
}

fn tame_homology(s: &Space, p: &Perversity, coeff: Coefficients, relative: bool) -> Result<HomologySummary> {
    let mut opts = tame(coeff);
    if relative {
        opts = opts.relative_to(&s.boundary);
    }
    intersection_complex(&s.complex, p, &opts)?.homology()
}

fn tame_cohomology(s: &Space, p: &Perversity, coeff: Coefficients) -> Result<HomologySummary> {
    intersection_complex(&s.complex, p, &tame(coeff))?.cohomology()
}

/// Reduced degree: drop one free summand in degree 0.
fn reduced(h: &HomologySummary, k: i64) -> DegreeSummary {
    let mut d = h.get(k);
    if k == 0 {
        d.betti = d.betti.saturating_sub(1);
    }
    d
}

/// `Ext(M, R)` for a finitely generated `M`: its torsion over ℤ, zero over a
/// field.
fn ext(m: &DegreeSummary, coeff: Coefficients) -> DegreeSummary {
    match coeff {
        Coefficients::Integers => DegreeSummary { betti: 0, torsion: m.torsion.clone() },
        _ => DegreeSummary::default(),
    }
}

fn rank(d: DegreeSummary) -> DegreeSummary {
    DegreeSummary::free(d.betti)
}

/// The cone on `l` with the perversity induced from `p_l` and apex value
/// `p_v`, and the complementary value `Dp̄(v)`.
fn cone_chart(l: &Space, p_l: &Perversity, p_v: i64) -> Result<(Space, Perversity, i64)> {
    let c = cone(l)?;
    let p = p_l.induce(&l.complex, &c.map, &c.space.complex, p_v)?;
    let n = c.space.complex.formal_dimension() as i64;
    Ok((c.space, p, n - 2 - p_v))
}

/// Cone formulas for `cone(L)`: (i) blown-up cohomology, (ii) tame
/// homology, (iii) tame cochain cohomology with its `Ext` term, (iv) the
/// pair `(cone L, L)`.
pub fn verify_cone_formulas(label: &str, l: &Space, p_l: &Perversity, p_v: i64, coeff: Coefficients) -> Result<Vec<DualityReport>> {
    if !l.is_compact() {
        return Err(Error::BadParam("the cone formulas need a compact base".into()));
    }
    let (c, p, dp) = cone_chart(l, p_l, p_v)?;
    let n = c.complex.formal_dimension() as i64;
    let space = format!("cone({label})");
    let perv = format!("p(v)={p_v}");
    let mut out = Vec::with_capacity(4);

    let start = Instant::now();
    let base = blowup_cohomology(&l.complex, p_l, coeff)?;
    let got = blowup_cohomology(&c.complex, &p, coeff)?;
    let rows = (0..=n)
        .map(|k| {
            if k <= p_v {
                Row::new(k, base.get(k), got.get(k), "H^k(L), k <= p(v)")
            } else {
                Row::new(k, DegreeSummary::default(), got.get(k), "0, k > p(v)")
            }
        })
        .collect();
    out.push(DualityReport::new("cone-blowup", &space, perv.clone(), coeff, rows, start));

    let start = Instant::now();
    let base = tame_homology(l, p_l, coeff, false)?;
    let got = tame_homology(&c, &p, coeff, false)?;
    let rows = (0..=n)
        .map(|k| {
            if k <= dp {
                Row::new(k, base.get(k), got.get(k), "h_k(L), k <= Dp(v)")
            } else {
                Row::new(k, DegreeSummary::default(), got.get(k), "0, k > Dp(v)")
            }
        })
        .collect();
    out.push(DualityReport::new("cone-tame", &space, perv.clone(), coeff, rows, start));

    let start = Instant::now();
    let base_co = tame_cohomology(l, p_l, coeff)?;
    let got = tame_cohomology(&c, &p, coeff)?;
    let rows = (0..=n)
        .map(|k| {
            if k <= dp {
                Row::new(k, base_co.get(k), got.get(k), "h^k(L), k <= Dp(v)")
            } else if k == dp + 1 {
                Row::new(k, ext(&base.get(k - 1), coeff), got.get(k), "Ext(h_{k-1}(L)), k = Dp(v)+1")
            } else {
                Row::new(k, DegreeSummary::default(), got.get(k), "0, k > Dp(v)+1")
            }
        })
        .collect();
    out.push(DualityReport::new("cone-cochain", &space, perv.clone(), coeff, rows, start));

    let start = Instant::now();
    let got = tame_homology(&c, &p, coeff, true)?;
    // Long exact sequence of (cone, L): reduced when h_0(cone) = h_0(L),
    // unreduced when the cone has no homology at all (Dp(v) < 0).
    let rows = (0..=n)
        .map(|k| {
            if k <= dp + 1 {
                Row::new(k, DegreeSummary::default(), got.get(k), "0, k <= Dp(v)+1")
            } else if dp >= 0 {
                Row::new(k, reduced(&base, k - 1), got.get(k), "reduced h_{k-1}(L)")
            } else {
                Row::new(k, base.get(k - 1), got.get(k), "h_{k-1}(L), Dp(v) < 0")
            }
        })
        .collect();
    out.push(DualityReport::new("cone-pair", &space, perv, coeff, rows, start));
    Ok(out)
}

/// `h_*(S^a ∗ X)` against the three-branch formula in `h_*(X)`.
pub fn verify_join_formula(
    label: &str,
    x: &Space,
    p_x: &Perversity,
    a: usize,
    p_sphere: i64,
    coeff: Coefficients,
) -> Result<DualityReport> {
    let start = Instant::now();
    let j = join_sphere(a, x)?;
    let p = p_x.induce(&x.complex, &j.map, &j.space.complex, p_sphere)?;
    let n = j.space.complex.formal_dimension() as i64;
    let a = a as i64;
    let dp = (n - a) - 2 - p_sphere;
    let base = tame_homology(x, p_x, coeff, false)?;
    let got = tame_homology(&j.space, &p, coeff, false)?;
    let rows = (0..=n)
        .map(|k| {
            if k <= dp {
                Row::new(k, base.get(k), got.get(k), "h_k(X), k <= Dp(S)")
            } else if k <= dp + a + 1 {
                Row::new(k, DegreeSummary::default(), got.get(k), "0, Dp(S) < k <= Dp(S)+a+1")
            } else {
                Row::new(k, base.get(k - a - 1), got.get(k), "h_{k-a-1}(X), k >= Dp(S)+a+2")
            }
        })
        .collect();
    Ok(DualityReport::new(
        "join",
        &format!("join_sphere({a},{label})"),
        format!("p(S)={p_sphere}"),
        coeff,
        rows,
        start,
    ))
}

/// `h_k(L × I^a, L × ∂I^a)` against `h_{k−a}(L)`.
pub fn verify_bm_product_formula(label: &str, l: &Space, p_l: &Perversity, a: usize, coeff: Coefficients) -> Result<DualityReport> {
    if a == 0 {
        return Err(Error::BadParam("the product formula needs a >= 1".into()));
    }
    let start = Instant::now();
    let prod = product_cube(a, l)?;
    let p = p_l.induce(&l.complex, &prod.map, &prod.space.complex, 0)?;
    let handle = prod.handle.expect("products record their handle");
    let pair = Space { complex: prod.space.complex, boundary: handle };
    let base = tame_homology(l, p_l, coeff, false)?;
    let got = tame_homology(&pair, &p, coeff, true)?;
    let n = pair.complex.formal_dimension() as i64;
    let a = a as i64;
    let rows = (0..=n).map(|k| Row::new(k, base.get(k - a), got.get(k), "h_{k-a}(L)")).collect();
    Ok(DualityReport::new("bm-product", &format!("product_cube({a},{label})"), p_l.to_string(), coeff, rows, start))
}

fn orientable_over(s: &Space, coeff: Coefficients) -> Result<()> {
    let report = s.complex.pseudomanifold_check(Some(&s.boundary));
    if !report.passes() {
        return Err(Error::NotPseudomanifold(report.failures.join("; ")));
    }
    if coeff != Coefficients::PrimeField(2) {
        s.complex.orient()?;
    }
    Ok(())
}

/// `ℋ^k_p̄(X)` against `h^{BM}_{n−k}(X)`, the latter as homology relative to
/// the boundary of the model.
pub fn verify_poincare(label: &str, x: &Space, p: &Perversity, coeff: Coefficients) -> Result<DualityReport> {
    orientable_over(x, coeff)?;
    let start = Instant::now();
    let n = x.complex.formal_dimension() as i64;
    let bm = tame_homology(x, p, coeff, true)?;
    let got = blowup_cohomology(&x.complex, p, coeff)?;
    let rows = (0..=n).map(|k| Row::new(k, bm.get(n - k), got.get(k), "BM h_{n-k}(X)")).collect();
    Ok(DualityReport::new("poincare", label, p.to_string(), coeff, rows, start))
}

fn require_field(coeff: Coefficients) -> Result<()> {
    if coeff.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField)
    }
}

/// Ranks of `ℋ^k_p̄(X)` against ranks of `h^k_{Dp̄}(X)`.
pub fn verify_complementary_field(label: &str, x: &Space, p: &Perversity, coeff: Coefficients) -> Result<DualityReport> {
    require_field(coeff)?;
    let start = Instant::now();
    let n = x.complex.formal_dimension() as i64;
    let dual = tame_cohomology(x, &p.complementary(), coeff)?;
    let got = blowup_cohomology(&x.complex, p, coeff)?;
    let rows = (0..=n).map(|k| Row::new(k, rank(dual.get(k)), rank(got.get(k)), "rank h^k_{Dp}(X)")).collect();
    Ok(DualityReport::new("complementary", label, p.to_string(), coeff, rows, start))
}

/// `Φ_X` is a chain map inducing isomorphisms `H_k(C) → H_k(Hom(Hom(C,R),R))`.
pub fn verify_bidual_field(label: &str, x: &Space, p: &Perversity, coeff: Coefficients) -> Result<DualityReport> {
    require_field(coeff)?;
    let start = Instant::now();
    let chains = intersection_complex(&x.complex, p, &tame(coeff))?;
    let bidual = Bidual::new(chains.complex())?;
    let chain_map = bidual.is_chain_map();
    let len = chains.ambient.len();
    let source = chains.complex().homology()?.resized(len);
    let target = bidual.bidual.homology()?.resized(len);
    let rows = (0..len)
        .map(|k| {
            let mut row = Row::new(k as i64, source.get(k as i64), target.get(k as i64), "induced map is an isomorphism");
            row.pass = row.pass && chain_map && (k >= bidual.phi.len() || bidual.induces_iso(k));
            row
        })
        .collect();
    Ok(DualityReport::new("bidual", label, p.to_string(), coeff, rows, start))
}

/// On the chart `cone(L)`: (a) `ℋ^i_p̄` vanishes above `p(v)`; (b) restriction
/// to the base copy of `L` induces isomorphisms in degrees `≤ p(v)`.
pub fn verify_local_deligne(label: &str, l: &Space, p_l: &Perversity, p_v: i64, coeff: Coefficients) -> Result<DualityReport> {
    if !l.is_compact() {
        return Err(Error::BadParam("the cone chart needs a compact link".into()));
    }
    let start = Instant::now();
    let (c, p, _) = cone_chart(l, p_l, p_v)?;
    let base = c.complex.restrict(&c.boundary)?;
    let p_base = p.pullback(&c.complex, &base)?;
    let bc = BlowupComplex::new(&c.complex);
    let bb = BlowupComplex::new(&base);
    let res = Restriction::new(&c.complex, &bc, &p, &base, &bb, &p_base, coeff)?;
    let len = bc.complex.len();
    let on_cone = res.source.complex.homology()?.resized(len);
    let on_base = res.target.complex.homology()?.resized(len);
    let mut rows = Vec::new();
    for k in 0..len as i64 {
        if k > p_v {
            rows.push(Row::new(k, DegreeSummary::default(), on_cone.get(k), "vanishing above p(v)"));
        } else {
            let mut row = Row::new(k, on_base.get(k), on_cone.get(k), "restriction to L is an isomorphism");
            row.pass = row.pass && res.induces_iso(k as usize);
            rows.push(row);
        }
    }
    Ok(DualityReport::new("deligne", &format!("cone({label})"), format!("p(v)={p_v}"), coeff, rows, start))
}

/// Ranks of `h^{BM}_{n−k}` against ranks of `h^k_{Dp̄}`: what Poincaré and
/// complementary duality together imply over a field.
pub fn verify_meta(label: &str, x: &Space, p: &Perversity, coeff: Coefficients) -> Result<DualityReport> {
    require_field(coeff)?;
    orientable_over(x, coeff)?;
    let start = Instant::now();
    let n = x.complex.formal_dimension() as i64;
    let bm = tame_homology(x, p, coeff, true)?;
    let dual = tame_cohomology(x, &p.complementary(), coeff)?;
    let rows = (0..=n).map(|k| Row::new(k, rank(dual.get(k)), rank(bm.get(n - k)), "rank h^k_{Dp}(X)")).collect();
    Ok(DualityReport::new("meta", label, p.to_string(), coeff, rows, start))
}

/// The fundamental cycle `γ_X` is an allowable `0̄`-cycle (relative to the
/// boundary) whose class generates `h^{0̄}_n ≅ R`.
pub fn verify_fundamental_cycle(label: &str, x: &Space, coeff: Coefficients) -> Result<DualityReport> {
    orientable_over(x, coeff)?;
    let start = Instant::now();
    let n = x.complex.formal_dimension();
    let orientation = match x.complex.orient() {
        Ok(o) => o,
        Err(_) => Orientation {
            signs: (0..x.complex.count(n)).map(|i| (i, 1)).collect(),
        },
    };
    let gamma = x.complex.fundamental_cycle(&orientation);
    let p = Perversity::zero(&x.complex);
    let opts = tame(coeff).relative_to(&x.boundary);
    let ic = intersection_complex(&x.complex, &p, &opts)?;
    let sc = coeff.scalars();
    let ambient: SparseVec = collect_vec(
        sc,
        gamma.iter().map(|(i, v)| (ic.generator_position(n, *i).expect("top simplices are regular"), v.clone())),
    );
    let h = ic.homology()?;
    let generates = ic.chains.coordinates(n, &ambient).is_some_and(|coords| {
        let d = &ic.complex().diffs[n];
        let cycle = d.mul_vec(sc, &coords).is_empty();
        let kernel = Echelon::new(d, sc, true).kernel_basis();
        cycle && kernel.len() == 1 && unit_multiple(sc, &kernel[0], &coords)
    });
    let mut row = Row::new(n as i64, DegreeSummary::free(1), h.get(n as i64), "[gamma] generates h_n");
    row.pass = row.pass && generates;
    Ok(DualityReport::new("fundamental-cycle", label, p.to_string(), coeff, vec![row], start))
}

fn unit_multiple(sc: Scalars, a: &[(usize, Int)], b: &[(usize, Int)]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let Some(u) = sc.div_exact(&b[0].1, &a[0].1) else { return false };
    sc.is_unit(&u) && a.iter().zip(b).all(|((i, x), (j, y))| i == j && sc.mul(&u, x) == *y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{circle, rp2, torus};

    fn zero(s: &Space) -> Perversity {
        Perversity::zero(&s.complex)
    }

    #[test]
    fn torus_cone_blowup_row() {
        let t = torus();
        let r = verify_cone_formulas("torus", &t, &zero(&t), 1, Coefficients::Integers).unwrap();
        assert!(r.iter().all(DualityReport::passed), "{}", r.iter().map(ToString::to_string).collect::<String>());
        let computed: Vec<String> = r[0].rows.iter().map(|row| row.computed.to_string()).collect();
        assert_eq!(computed, ["Z", "Z^2", "0", "0"]);
    }

    #[test]
    fn rp2_cone_ext_term() {
        let l = rp2();
        let r = verify_cone_formulas("rp2", &l, &zero(&l), 0, Coefficients::Integers).unwrap();
        let cochain = &r[2];
        assert!(cochain.passed(), "{cochain}");
        assert_eq!(cochain.rows[2].computed.to_string(), "Z/2");
    }

    #[test]
    fn circle_pair() {
        let l = circle(6).unwrap();
        let r = verify_cone_formulas("circle(6)", &l, &zero(&l), 0, Coefficients::Integers).unwrap();
        let pair = &r[3];
        assert!(pair.passed(), "{pair}");
        let computed: Vec<String> = pair.rows.iter().map(|row| row.computed.to_string()).collect();
        assert_eq!(computed, ["0", "0", "Z"]);
    }

    #[test]
    fn poincare_needs_orientation() {
        let c = cone(&rp2()).unwrap().space;
        let p = zero(&c);
        assert!(matches!(verify_poincare("cone(rp2)", &c, &p, Coefficients::Integers), Err(Error::NonOrientable)));
        assert!(verify_poincare("cone(rp2)", &c, &p, Coefficients::PrimeField(2)).unwrap().passed());
    }

    #[test]
    fn fundamental_cycles() {
        for (label, s) in [("torus", torus()), ("cone(circle(6))", cone(&circle(6).unwrap()).unwrap().space)] {
            let r = verify_fundamental_cycle(label, &s, Coefficients::Integers).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn bm_product_of_a_point() {
        let pt = crate::constructors::point();
        let r = verify_bm_product_formula("point", &pt, &zero(&pt), 2, Coefficients::Integers).unwrap();
        assert!(r.passed(), "{r}");
        assert!(verify_bm_product_formula("point", &pt, &zero(&pt), 0, Coefficients::Integers).is_err());
    }
}
