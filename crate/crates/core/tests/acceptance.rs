//! Acceptance criteria 1–10. Prints one line per criterion and exits non-zero
//! if any fails. All comparisons are exact: ranks and torsion multisets must
//! be equal.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stratihom::algebra::{Coefficients, Int, Scalars, SparseMatrix, SparseVec};
use stratihom::blowup::{local_complex, restriction_map, BlowupComplex};
use stratihom::chains::{ambient_complex, intersection_complex, tame_boundary, tame_boundary_by_join, ChainOptions, Theory};
use stratihom::constructors::{cone, Space};
use stratihom::duality::{
    verify_bidual_field, verify_bm_product_formula, verify_complementary_field, verify_cone_formulas,
    verify_fundamental_cycle, verify_join_formula, verify_local_deligne, verify_meta, verify_poincare, DualityReport,
};
use stratihom::filtered::FilteredComplex;
use stratihom::perversity::Perversity;
use stratihom::recipe::Recipe;

const Z: Coefficients = Coefficients::Integers;
const Q: Coefficients = Coefficients::Rationals;
const Z2: Coefficients = Coefficients::PrimeField(2);

fn space(recipe: &str) -> Space {
    recipe.parse::<Recipe>().unwrap().evaluate().unwrap()
}

fn zero(s: &Space) -> Perversity {
    Perversity::zero(&s.complex)
}

fn top(s: &Space) -> Perversity {
    Perversity::top(&s.complex)
}

/// Outcome of one criterion: how many cases passed, the slowest case, and
/// descriptions of failures.
struct Tally {
    cases: usize,
    failures: Vec<String>,
    slowest: Duration,
    limit: Duration,
}

impl Tally {
    fn new(limit_secs: u64) -> Self {
        Tally { cases: 0, failures: Vec::new(), slowest: Duration::ZERO, limit: Duration::from_secs(limit_secs) }
    }

    fn timed<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        self.slowest = self.slowest.max(took);
        out
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &DualityReport) {
        self.check(r.passed(), || r.to_string());
    }

    fn passed(&self) -> bool {
        self.failures.is_empty() && self.slowest <= self.limit
    }

    fn print(&self, n: usize, title: &str) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let failed = self.failures.len();
        println!(
            "criterion {n:>2} {verdict}  {title}: {}/{} cases exact (tolerance: equal ranks and torsion), slowest case {:.2} s (limit {} s)",
            self.cases - failed,
            self.cases,
            self.slowest.as_secs_f64(),
            self.limit.as_secs()
        );
        for f in &self.failures {
            for line in f.lines() {
                println!("      {line}");
            }
        }
    }
}

const BASES: [&str; 3] = ["circle(6)", "torus", "rp2"];
const APEX_VALUES: [i64; 4] = [-1, 0, 1, 2];

fn criterion_cone(which: usize, limit: u64) -> Tally {
    let mut t = Tally::new(limit);
    for base in BASES {
        let l = space(base);
        for p_v in APEX_VALUES {
            for coeff in [Z, Q, Z2] {
                let reports = t.timed(|| verify_cone_formulas(base, &l, &zero(&l), p_v, coeff).unwrap());
                if which == 1 {
                    t.report(&reports[0]);
                } else {
                    t.report(&reports[1]);
                    t.report(&reports[2]);
                }
            }
        }
    }
    if which == 2 {
        let l = space("rp2");
        let reports = verify_cone_formulas("rp2", &l, &zero(&l), 0, Z).unwrap();
        let degree_two = reports[2].rows[2].computed.to_string();
        t.check(degree_two == "Z/2", || format!("cone(rp2) cochain degree 2 is {degree_two}, expected Z/2"));
    }
    t
}

fn criterion_3() -> Tally {
    let mut t = Tally::new(60);
    for base in ["circle(3)", "torus"] {
        let x = space(base);
        for a in [0, 1] {
            for p_s in [-1, 0, 1, 2] {
                let r = t.timed(|| verify_join_formula(base, &x, &zero(&x), a, p_s, Z).unwrap());
                t.report(&r);
            }
        }
    }
    let st = space("join_sphere(0,torus)");
    let opts = ChainOptions::new(Theory::Tame, Z);
    for (p, want) in [(zero(&st), "(Z, Z^2, 0, Z)"), (top(&st), "(Z, 0, Z^2, Z)")] {
        let got = intersection_complex(&st.complex, &p, &opts).unwrap().homology().unwrap().to_string();
        t.check(got == want, || format!("suspended torus with {p}: {got}, expected {want}"));
    }
    t
}

fn criterion_4() -> Tally {
    let mut t = Tally::new(60);
    let circle = space("circle(6)");
    let r = t.timed(|| verify_bm_product_formula("circle(6)", &circle, &zero(&circle), 1, Z).unwrap());
    t.report(&r);
    let pt = space("point");
    let r = t.timed(|| verify_bm_product_formula("point", &pt, &zero(&pt), 2, Z).unwrap());
    t.report(&r);
    let cc = space("cone(circle(6))");
    for p_v in [0, 1] {
        let p = Perversity::parse(&format!("strata:{{S0.0:{p_v}}}"), &cc.complex).unwrap();
        let r = t.timed(|| verify_bm_product_formula("cone(circle(6))", &cc, &p, 1, Z).unwrap());
        t.report(&r);
    }
    for base in ["circle(6)", "torus"] {
        let l = space(base);
        for p_v in APEX_VALUES {
            let reports = t.timed(|| verify_cone_formulas(base, &l, &zero(&l), p_v, Z).unwrap());
            t.report(&reports[3]);
        }
    }
    t
}

/// Spaces and coefficients for the duality criteria.
fn duality_grid() -> Vec<(&'static str, Vec<Coefficients>)> {
    vec![
        ("sphere(2)", vec![Z]),
        ("cone(circle(6))", vec![Z]),
        ("join_sphere(0,torus)", vec![Z]),
        ("cone(rp2)", vec![Z2]),
    ]
}

fn criterion_5() -> Tally {
    let mut t = Tally::new(120);
    for (recipe, coeffs) in duality_grid() {
        let x = space(recipe);
        for coeff in coeffs {
            for p in [zero(&x), top(&x)] {
                let r = t.timed(|| verify_poincare(recipe, &x, &p, coeff).unwrap());
                t.report(&r);
            }
        }
    }
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::new(120);
    for (recipe, _) in duality_grid() {
        let x = space(recipe);
        for coeff in [Q, Z2] {
            for p in [zero(&x), top(&x)] {
                let r = t.timed(|| verify_complementary_field(recipe, &x, &p, coeff).unwrap());
                t.report(&r);
                // The meta check inherits the orientability precondition of
                // Poincaré duality.
                match t.timed(|| verify_meta(recipe, &x, &p, coeff)) {
                    Ok(meta) => t.report(&meta),
                    Err(stratihom::Error::NonOrientable) if coeff != Z2 => {}
                    Err(e) => t.check(false, || format!("meta on {recipe}: {e}")),
                }
            }
        }
    }
    t
}

fn criterion_7() -> Tally {
    let mut t = Tally::new(60);
    for recipe in ["join_sphere(0,torus)", "cone(rp2)"] {
        let x = space(recipe);
        for coeff in [Q, Z2] {
            for p in [zero(&x), top(&x)] {
                let r = t.timed(|| verify_bidual_field(recipe, &x, &p, coeff).unwrap());
                t.report(&r);
            }
        }
    }
    t
}

fn criterion_8() -> Tally {
    let mut t = Tally::new(60);
    for base in ["circle(6)", "torus"] {
        let l = space(base);
        for p_v in [-1, 0, 1] {
            let r = t.timed(|| verify_local_deligne(base, &l, &zero(&l), p_v, Z).unwrap());
            t.report(&r);
        }
    }
    t
}

// ---- criterion 9: property suites ----

const PROPERTY_ZOO: [&str; 9] = [
    "circle(6)",
    "torus",
    "rp2",
    "sphere(2)",
    "cone(circle(6))",
    "cone(torus)",
    "cone(rp2)",
    "join_sphere(0,torus)",
    "product_cube(1,cone(circle(6)))",
];

const ORIENTED_ZOO: [&str; 7] = [
    "circle(6)",
    "torus",
    "sphere(2)",
    "cone(circle(6))",
    "cone(torus)",
    "join_sphere(0,torus)",
    "product_cube(1,cone(circle(6)))",
];

fn regular_simplices(x: &FilteredComplex) -> Vec<Vec<usize>> {
    (0..=x.dimension()).flat_map(|d| x.simplices(d).iter().filter(|s| x.is_regular(s)).cloned()).collect()
}

fn compose(sc: Scalars, a: &[SparseMatrix], b: &[SparseMatrix]) -> Vec<SparseMatrix> {
    a.iter().zip(b).map(|(a, b)| a.mul(sc, b)).collect()
}

fn local_checks(t: &mut Tally, name: &str, x: &FilteredComplex) {
    let sc = Scalars::Integers;
    for sigma in regular_simplices(x) {
        let (c, _) = local_complex(x, &sigma).unwrap();
        t.check(c.check_square_zero().is_ok(), || format!("{name}: local δ² ≠ 0 on {}", x.label(&sigma)));
        let facets: Vec<Vec<usize>> = x.facets(&sigma).into_iter().map(|(f, _)| f).filter(|f| x.is_regular(f)).collect();
        for f in &facets {
            let (cf, _) = local_complex(x, f).unwrap();
            let res = restriction_map(x, &sigma, f).unwrap();
            let commutes = (0..c.len() - 1).all(|d| {
                let lhs = res[d + 1].mul(sc, &c.diffs[d]);
                if d >= cf.len() {
                    return lhs.is_zero();
                }
                lhs.to_dense() == cf.diffs[d].mul(sc, &res[d]).to_dense()
            });
            t.check(commutes, || format!("{name}: restriction {} → {} does not commute with δ", x.label(&sigma), x.label(f)));
        }
        // Two facet paths to a codimension-two face agree with the direct map.
        if let [f1, f2, ..] = facets.as_slice() {
            let g: Vec<usize> = f1.iter().copied().filter(|v| f2.contains(v)).collect();
            if !g.is_empty() && x.is_regular(&g) {
                let direct = restriction_map(x, &sigma, &g).unwrap();
                let via1 = compose(sc, &restriction_map(x, f1, &g).unwrap(), &restriction_map(x, &sigma, f1).unwrap());
                let via2 = compose(sc, &restriction_map(x, f2, &g).unwrap(), &restriction_map(x, &sigma, f2).unwrap());
                let agree = |via: &[SparseMatrix]| {
                    (0..direct.len()).all(|d| match via.get(d) {
                        Some(m) => m.to_dense() == direct[d].to_dense(),
                        None => direct[d].is_zero(),
                    })
                };
                t.check(agree(&via1) && agree(&via2), || format!("{name}: facet paths to {} disagree", x.label(&g)));
            }
        }
    }
}

fn random_cochain(rng: &mut ChaCha8Rng, b: &BlowupComplex, degree: usize) -> SparseVec {
    let len = b.basis[degree].len();
    let mut v: Vec<(usize, Int)> = (0..rng.gen_range(1..=4))
        .map(|_| (rng.gen_range(0..len), Int::from(rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 })))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v.dedup_by_key(|(i, _)| *i);
    v
}

fn add(sc: Scalars, a: &[(usize, Int)], b: &[(usize, Int)]) -> SparseVec {
    stratihom::algebra::matrix::lin_comb(sc, &Int::ONE, a, &Int::ONE, b)
}

fn cup_checks(t: &mut Tally, name: &str, x: &FilteredComplex, rng: &mut ChaCha8Rng) {
    let sc = Scalars::Integers;
    let b = BlowupComplex::new(x);
    let degrees: Vec<usize> = (0..b.basis.len()).filter(|&d| !b.basis[d].is_empty()).collect();
    let unit = b.unit();
    let mut pairs = 0;
    while pairs < 200 {
        let (p, q, r) = (degrees[rng.gen_range(0..degrees.len())], degrees[rng.gen_range(0..degrees.len())], degrees[rng.gen_range(0..degrees.len())]);
        let (w, e, z) = (random_cochain(rng, &b, p), random_cochain(rng, &b, q), random_cochain(rng, &b, r));
        pairs += 1;
        // Unit.
        let left = b.cup(sc, 0, &unit, p, &w);
        let right = b.cup(sc, p, &w, 0, &unit);
        t.check(left == w && right == w, || format!("{name}: 1 is not a unit on degree {p}"));
        // Associativity.
        let we = b.cup(sc, p, &w, q, &e);
        let ez = b.cup(sc, q, &e, r, &z);
        let lhs = if p + q < b.basis.len() { b.cup(sc, p + q, &we, r, &z) } else { Vec::new() };
        let rhs = if q + r < b.basis.len() { b.cup(sc, p, &w, q + r, &ez) } else { Vec::new() };
        t.check(lhs == rhs, || format!("{name}: cup not associative in degrees {p},{q},{r}"));
        // Leibniz.
        if p + q < b.basis.len() {
            let d_we = b.coboundary(sc, p + q, &we);
            let dw = b.coboundary(sc, p, &w);
            let de = b.coboundary(sc, q, &e);
            let first = if p + 1 < b.basis.len() { b.cup(sc, p + 1, &dw, q, &e) } else { Vec::new() };
            let mut second = if q + 1 < b.basis.len() { b.cup(sc, p, &w, q + 1, &de) } else { Vec::new() };
            if p % 2 == 1 {
                second = stratihom::algebra::matrix::scale(sc, &Int::from(-1), &second);
            }
            t.check(d_we == add(sc, &first, &second), || format!("{name}: Leibniz fails in degrees {p},{q}"));
        }
        // Subadditivity of the perverse degree.
        if p + q < b.basis.len() {
            let dw = b.perverse_degree(x, p, &w);
            let de = b.perverse_degree(x, q, &e);
            let dc = b.perverse_degree(x, p + q, &we);
            let ok = dc.iter().all(|(s, c)| match (c, dw[s], de[s]) {
                (None, _, _) => true,
                (Some(c), Some(a), Some(b)) => *c <= a + b,
                _ => false,
            });
            t.check(ok, || format!("{name}: perverse degree not subadditive in degrees {p},{q}"));
        }
    }
}

fn monotonicity_checks(t: &mut Tally, name: &str, x: &FilteredComplex) {
    let lower = Perversity::zero(x);
    let upper = Perversity::top(x);
    let b = BlowupComplex::new(x);
    let small = b.perverse_complex(x, &lower, Z).unwrap();
    let large = b.perverse_complex(x, &upper, Z).unwrap();
    let blowup_ok = (0..small.basis.len())
        .all(|k| small.basis[k].cols.iter().all(|c| large.coordinates(k, c).is_some()));
    t.check(blowup_ok, || format!("{name}: blown-up complex for 0 not inside the one for t"));
    for theory in [Theory::Tame, Theory::King] {
        let opts = ChainOptions::new(theory, Z);
        let small = intersection_complex(x, &lower, &opts).unwrap();
        let large = intersection_complex(x, &upper, &opts).unwrap();
        let ok = (0..small.chains.basis.len())
            .all(|k| small.chains.basis[k].cols.iter().all(|c| large.chains.coordinates(k, c).is_some()));
        t.check(ok, || format!("{name}: {theory} chains for 0 not inside those for t"));
    }
}

fn criterion_9() -> Tally {
    let mut t = Tally::new(300);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let start = Instant::now();
    for name in PROPERTY_ZOO {
        let x = space(name).complex;
        for theory in [Theory::Tame, Theory::King] {
            let (c, _) = ambient_complex(&x, theory);
            t.check(c.check_square_zero().is_ok(), || format!("{name}: {theory} differential squares to nonzero"));
        }
        for s in regular_simplices(&x) {
            let same = tame_boundary(&x, &s).unwrap() == tame_boundary_by_join(&x, &s).unwrap();
            t.check(same, || format!("{name}: tame boundary formulas differ on {}", x.label(&s)));
        }
        let b = BlowupComplex::new(&x);
        t.check(b.complex.check_square_zero().is_ok(), || format!("{name}: global δ² ≠ 0"));
        local_checks(&mut t, name, &x);
        cup_checks(&mut t, name, &x, &mut rng);
        monotonicity_checks(&mut t, name, &x);
    }
    for name in ORIENTED_ZOO {
        let s = space(name);
        let r = verify_fundamental_cycle(name, &s, Z).unwrap();
        t.report(&r);
    }
    for name in ["circle(6)", "torus", "rp2", "sphere(2)"] {
        let s = space(name);
        let ordinary = s.complex.chain_complex().dual().homology().unwrap();
        for p in [zero(&s), top(&s)] {
            let h = stratihom::blowup::blowup_cohomology(&s.complex, &p, Z).unwrap();
            t.check(h == ordinary, || format!("{name}: blown-up cohomology {h} differs from ordinary {ordinary}"));
        }
    }
    t.slowest = start.elapsed();
    t
}

/// Serialized reports from a fixed slice of the suite, for the determinism
/// check.
fn fingerprint_run() -> String {
    let mut out = String::new();
    let st = space("join_sphere(0,torus)");
    for p in [zero(&st), top(&st)] {
        out += &serde_json::to_string(&verify_poincare("join_sphere(0,torus)", &st, &p, Z).unwrap()).unwrap();
        out += &serde_json::to_string(&verify_bidual_field("join_sphere(0,torus)", &st, &p, Q).unwrap()).unwrap();
    }
    let l = space("rp2");
    for r in verify_cone_formulas("rp2", &l, &zero(&l), 0, Z).unwrap() {
        out += &serde_json::to_string(&r).unwrap();
    }
    let c = cone(&space("torus")).unwrap().space;
    out += &serde_json::to_string(&BlowupComplex::new(&c.complex).complex.dims).unwrap();
    out
}

fn main() -> ExitCode {
    stratihom::parallel::init_threads_from_env();
    let suite = Instant::now();
    let mut all = true;
    let mut run = |n: usize, title: &str, f: &dyn Fn() -> Tally| {
        let t = f();
        t.print(n, title);
        all &= t.passed();
    };
    run(1, "blown-up cone formula", &|| criterion_cone(1, 30));
    run(2, "tame and cochain cone formulas", &|| criterion_cone(2, 10));
    run(3, "join lemma", &criterion_3);
    run(4, "Borel-Moore models", &criterion_4);
    run(5, "Poincare duality", &criterion_5);
    run(6, "complementary duality over fields", &criterion_6);
    run(7, "biduality", &criterion_7);
    run(8, "local Deligne conditions", &criterion_8);
    run(9, "property suites", &criterion_9);

    let first = fingerprint_run();
    let second = fingerprint_run();
    let total = suite.elapsed();
    let ok = first == second && total <= Duration::from_secs(15 * 60);
    println!(
        "criterion 10 {}  wall clock and determinism: suite {:.1} s (limit 900 s), repeated reports byte-identical: {}",
        if ok { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        first == second
    );
    all &= ok;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
