//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed. Exits
//! non-zero if any criterion fails other than the single documented one.
//!
//! Set `BIMANIN_SKIP_HEAVY=1` to leave out the (34,34) row.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use bimanin_core::action::{dim_cusp_forms, dim_w_oracle, Parity, PolyVec};
use bimanin_core::algebra::{check_identities, GroupAlgebraElement, Ideal};
use bimanin_core::checks::{property_suite, theta2_suite, SuiteOptions};
use bimanin_core::homology::{order_one_analogue, theta1, triangle36_kernel};
use bimanin_core::linalg::SubspaceBasis;
use bimanin_core::modular::{common_neighbours, cusp_height, Cusp};
use bimanin_core::spaces::{Engine, TableRow, REFERENCE_TABLE};
use bimanin_core::Result;

/// Budget for all rows with both weights at most 24.
const LIGHT_BUDGET: Duration = Duration::from_secs(10 * 60);
/// Budget for the (34,34) row.
const HEAVY_BUDGET: Duration = Duration::from_secs(60 * 60);
const LIGHT_WEIGHT: usize = 24;

/// The bound `h(difference) <= min` fails; this pair is the smallest witness found.
const LEMTRI_WITNESS: ((i64, i64), (i64, i64)) = ((9, 22), (2, 5));

struct Outcome {
    id: &'static str,
    ok: bool,
    detail: String,
    known_failure: bool,
}

impl Outcome {
    fn new(id: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Outcome { id, ok, detail: detail.into(), known_failure: false }
    }
}

fn poly(text: &str, w1: usize, w2: usize) -> PolyVec {
    PolyVec::parse(text, w1, w2).expect("reference polynomial parses")
}

fn span(polys: &[&str], w1: usize, w2: usize) -> SubspaceBasis {
    let rows: Vec<_> = polys.iter().map(|t| poly(t, w1, w2).into_coeffs()).collect();
    SubspaceBasis::span((w1 + 1) * (w2 + 1), &rows)
}

fn dim_s(k: usize) -> usize {
    dim_cusp_forms(k as i64).unwrap()
}

fn table_reproduction(engine: &Engine) -> Result<Outcome> {
    let skip_heavy = std::env::var("BIMANIN_SKIP_HEAVY").is_ok_and(|v| v == "1");
    let light: Vec<&TableRow> = REFERENCE_TABLE.iter().filter(|r| r.w1.max(r.w2) <= LIGHT_WEIGHT).collect();
    let heavy: Vec<&TableRow> = REFERENCE_TABLE.iter().filter(|r| r.w1.max(r.w2) > LIGHT_WEIGHT).collect();
    let mut mismatches = vec![];
    let start = Instant::now();
    for r in &light {
        let got = engine.table_row(r.w1, r.w2)?;
        if got != **r {
            mismatches.push(format!("({},{}) got {}", r.w1, r.w2, got.to_csv()));
        }
    }
    let light_time = start.elapsed();
    let mut detail = format!("{} rows <= {LIGHT_WEIGHT} in {:.1}s", light.len(), light_time.as_secs_f64());
    let mut ok = light_time <= LIGHT_BUDGET;
    if skip_heavy {
        detail += &format!("; {} heavy row(s) skipped", heavy.len());
        ok = false;
    } else {
        let start = Instant::now();
        for r in &heavy {
            let got = engine.table_row(r.w1, r.w2)?;
            if got != **r {
                mismatches.push(format!("({},{}) got {}", r.w1, r.w2, got.to_csv()));
            }
        }
        let t = start.elapsed();
        ok &= t <= HEAVY_BUDGET;
        detail += &format!("; heavy rows in {:.1}s", t.as_secs_f64());
    }
    if !mismatches.is_empty() {
        ok = false;
        detail += &format!("; mismatches: {}", mismatches.join(", "));
    }
    Ok(Outcome::new("1 table reproduction", ok, detail))
}

const P28_PLUS: &str = "(28/45 X2^2 - X2^4 + 28/70 X2^6 - 1/45 X2^8) \
    + 2 X1 (8/45 X2 - 56/70 X2^3 + 56/70 X2^5 - 8/45 X2^7) \
    + X1^2 (1/45 - 28/70 X2^2 + X2^4 - 28/45 X2^6)";
const P28_MINUS: &str = "(16/5 X2 - 35/3 X2^3 + 28/3 X2^5 - 5/3 X2^7) \
    + 2 X1 (2/5 - 35/6 X2^2 + 35/3 X2^4 - 35/6 X2^6 + 2/5 X2^8) \
    + X1^2 (-5/3 X2 + 28/3 X2^3 - 35/3 X2^5 + 16/5 X2^7)";

fn explicit_bases(engine: &Engine) -> Result<Outcome> {
    let mut failures = vec![];
    let w10 = span(&["1 - X^10", "X^2 - 3X^4 + 3X^6 - X^8", "4X - 25X^3 + 42X^5 - 25X^7 + 4X^9"], 10, 0);
    if engine.w_single(10, Parity::Both)? != w10 {
        failures.push("W10".to_string());
    }
    let lists: [(usize, usize, Vec<&str>); 5] = [
        (2, 2, vec!["1 - X1^2*X2^2", "(X1 - X2)*(1 - X1*X2)"]),
        (2, 4, vec!["1 - X1^2*X2^4", "(X1 - X2)*(1 - X1*X2^3)", "(X1 - X2)^2*(1 - X2^2)"]),
        (2, 6, vec!["1 - X1^2*X2^6", "(X1 - X2)*(1 - X1*X2^5)", "(X1 - X2)^2*(1 - X2^4)"]),
        (
            4,
            4,
            vec!["1 - X1^4*X2^4", "(X1 - X2)*(1 - X1^3*X2^3)", "(X1 - X2)^2*(1 - X1^2*X2^2)", "(X1 - X2)^3*(1 - X1*X2)"],
        ),
        (2, 8, vec!["1 - X1^2*X2^8", "(X1 - X2)*(1 - X1*X2^7)", "(X1 - X2)^2*(1 - X2^6)", P28_PLUS, P28_MINUS]),
    ];
    for (w1, w2, list) in &lists {
        if engine.v_ideal(*w1, *w2, Ideal::ID, Parity::Both)? != span(list, *w1, *w2) {
            failures.push(format!("ID({w1},{w2})"));
        }
    }
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    if poly(P28_PLUS, 2, 8).coeff(0, 2) != &q(28, 45) || poly(P28_MINUS, 2, 8).coeff(0, 1) != &q(16, 5) {
        failures.push("P(2,8) coefficients".to_string());
    }
    let detail = if failures.is_empty() { "W10 and ID at (2,2) (2,4) (2,6) (4,4) (2,8)".into() } else { failures.join(", ") };
    Ok(Outcome::new("2 explicit bases", failures.is_empty(), detail))
}

fn prop19(engine: &Engine) -> Result<Outcome> {
    let dw = |w: usize| engine.w_single(w, Parity::Both).map(|b| b.dim());
    let mut pairs: Vec<(usize, usize)> =
        (2..=12).step_by(2).flat_map(|a| (2..=12).step_by(2).map(move |b| (a, b))).collect();
    pairs.push((10, 10));
    let mut bad = vec![];
    for &(w1, w2) in &pairs {
        let d = engine.v_ideal(w1, w2, Ideal::ID, Parity::Both)?.dim();
        let mut expect = 0;
        for w in (w1.abs_diff(w2)..=w1 + w2).step_by(2) {
            expect += dw(w)?;
        }
        let dim_e = engine.e_space(w1, w2, Parity::Both)?.dim();
        if d != expect || dim_e + 1 != dw(w1)? + dw(w2)? + d {
            bad.push(format!("({w1},{w2})"));
        }
    }
    let detail = if bad.is_empty() { format!("{} pairs", pairs.len()) } else { bad.join(" ") };
    Ok(Outcome::new("3 diagonal and Eisenstein dimensions", bad.is_empty(), detail))
}

fn section_map(engine: &Engine) -> Result<Outcome> {
    let mut checked = 0;
    let mut bad = vec![];
    for (w1, w2) in [(2, 8), (4, 6), (2, 12), (10, 10)] {
        let vid = engine.v_ideal(w1, w2, Ideal::ID, Parity::Both)?;
        for row in engine.w_single(w1 + w2, Parity::Both)?.rows() {
            let p = PolyVec::from_coeffs(w1 + w2, 0, row.clone())?;
            let ok = match engine.section_id(&p, w1, w2) {
                Ok(s) => vid.contains(s.coeffs()) && s.diagonal() == p,
                Err(_) => false,
            };
            if !ok {
                bad.push(format!("({w1},{w2}) {p}"));
            }
            checked += 1;
        }
    }
    let detail = if bad.is_empty() { format!("{checked} basis vectors") } else { bad.join(", ") };
    Ok(Outcome::new("4 section map", bad.is_empty(), detail))
}

fn decomposition_theorem() -> Result<Outcome> {
    let ids = check_identities()?;
    let ids_ok = ids.len() == 12 && ids.iter().all(|c| c.holds);
    let theta2 = theta2_suite(false)?;
    let gens_ok = theta2.iter().filter(|c| c.check.starts_with("theta2 vanishes")).count() == 4
        && theta2.iter().all(|c| c.passed());
    let report = triangle36_kernel();
    let ok = ids_ok && gens_ok && report.lattice_equal;
    let detail = format!(
        "{} identities hold: {ids_ok}; I2 generators vanish: {gens_ok}; lattice_equal: {} (kernel rank {})",
        ids.len(),
        report.lattice_equal,
        report.kernel_rank
    );
    Ok(Outcome::new("5 decomposition identities and 36 triangles", ok, detail))
}

fn order_one() -> Result<Outcome> {
    let a = theta1(&GroupAlgebraElement::parse("1+S", 1)?)?.is_zero();
    let b = theta1(&GroupAlgebraElement::parse("1+U+U^2", 1)?)?.is_zero();
    let r = order_one_analogue();
    let ok = a && b && r.theta1_manin_zero && r.lattice_equal;
    let detail = format!("Theta1 zero: {a}, {b}; nullity {}; lattice_equal: {}", r.nullity, r.lattice_equal);
    Ok(Outcome::new("6 order-one analogue", ok, detail))
}

fn cross_oracle(engine: &Engine) -> Result<Outcome> {
    let mut bad = vec![];
    for w in (0..=40).step_by(2) {
        let s = dim_s(w + 2);
        let both = engine.w_single(w, Parity::Both)?.dim();
        let even = engine.w_single(w, Parity::Even)?.dim();
        let odd = engine.w_single(w, Parity::Odd)?.dim();
        // W_0 is zero; the split formula starts at w = 2.
        let split_ok = w == 0 || (even == s + 1 && odd == s);
        let formula_ok = w == 0 || both == 2 * s + 1;
        if !formula_ok || both != dim_w_oracle(w)? || !split_ok {
            bad.push(format!("W{w}: {both} = {even} + {odd}, dim S = {s}"));
        }
    }
    for r in &REFERENCE_TABLE {
        if r.gap_pair != 2 * dim_s(r.w1 + 2) * dim_s(r.w2 + 2) {
            bad.push(format!("gap ({},{})", r.w1, r.w2));
        }
    }
    let detail = if bad.is_empty() { "weights 2..40 and all table gaps".into() } else { bad.join(", ") };
    Ok(Outcome::new("7 cross-oracle dimensions", bad.is_empty(), detail))
}

fn property_suites(engine: &Engine) -> Result<Vec<Outcome>> {
    let opts = SuiteOptions { samples: 200, ..SuiteOptions::default() };
    let checks = property_suite(&opts, engine)?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    let detail = if failed.is_empty() { format!("{} properties", checks.len()) } else { failed.join("; ") };
    let mut out = vec![Outcome::new("8 property suites", failed.is_empty(), detail)];

    // The lemma's literal bound on the difference cusp.
    let ((p1, q1), (p2, q2)) = LEMTRI_WITNESS;
    let (a, b) = (Cusp::from_i64(p1, q1)?, Cusp::from_i64(p2, q2)?);
    let [_, diff] = common_neighbours(&a, &b).expect("witness cusps are adjacent");
    let (ha, hb, hd) = (cusp_height(&a), cusp_height(&b), cusp_height(&diff));
    let holds = hd <= ha.min(hb);
    let mut literal = Outcome::new(
        "8 literal bound h(difference) <= min",
        holds,
        format!("{a}, {b}: heights {ha}, {hb}; difference {diff} has height {hd}"),
    );
    // Documented as unattainable; only an unexpected pass is reported as a problem.
    literal.known_failure = !holds && hd <= ha.max(hb);
    out.push(literal);
    Ok(out)
}

fn run() -> Result<Vec<Outcome>> {
    let engine = Engine::new();
    let mut out = vec![
        explicit_bases(&engine)?,
        prop19(&engine)?,
        section_map(&engine)?,
        decomposition_theorem()?,
        order_one()?,
        cross_oracle(&engine)?,
    ];
    out.extend(property_suites(&engine)?);
    out.insert(0, table_reproduction(&engine)?);
    Ok(out)
}

fn main() -> ExitCode {
    let outcomes = match run() {
        Ok(o) => o,
        Err(e) => {
            println!("FAIL acceptance aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!();
    let mut unexpected = 0;
    for o in &outcomes {
        let status = if o.ok { "PASS" } else { "FAIL" };
        let note = if o.known_failure { " [known failure]" } else { "" };
        println!("{status} {}: {}{note}", o.id, o.detail);
        if !o.ok && !o.known_failure {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.ok).count();
    println!("{passed} of {} criteria lines passed, {unexpected} unexpected failure(s)", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
