//! Verification suites shared by the command line and the test targets.
//!
//! Every check yields a [`Check`] with a pass/fail status and a witness: the
//! sample count on success, the first counterexample on failure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{act1_matrix, act2_matrix, haberland_pairing, Parity, PolyVec};
use crate::algebra::{identities, GroupAlgebraElement, Ideal};
use crate::error::{Error, Result};
use crate::homology::{
    order_one_analogue, subdivision_check, theta1, theta2_decompose, theta2_vanishes, triangle36_kernel,
};
use crate::linalg::IntMatrix;
use crate::modular::{common_neighbours, cusp_distance, cusp_height, cusp_region, Cusp, Psl2, Region};
use crate::spaces::{reflect_basis, Engine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub witness: String,
}

impl Check {
    pub fn new(check: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check { check: check.into(), status: if ok { Status::Pass } else { Status::Fail }, witness: witness.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn from_sampled(check: &str, samples: usize, first_failure: Option<String>) -> Self {
        match first_failure {
            None => Check::new(check, true, format!("{samples} samples")),
            Some(w) => Check::new(check, false, w),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{s} {}: {}", self.check, self.witness)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Theta2,
    Triangles36,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identities" => Ok(Suite::Identities),
            "theta2" => Ok(Suite::Theta2),
            "triangles36" => Ok(Suite::Triangles36),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Corrupts one input so the suite must fail; used to test failure paths.
    pub inject_fault: bool,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { inject_fault: false, seed: 0x5eed, samples: 50 }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions, engine: &Engine) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Identities => identity_suite(opts.inject_fault)?,
        Suite::Theta2 => theta2_suite(opts.inject_fault)?,
        Suite::Triangles36 => triangles36_suite(engine)?,
        Suite::Properties => property_suite(opts, engine)?,
        Suite::All => {
            let mut out = identity_suite(opts.inject_fault)?;
            out.extend(theta2_suite(opts.inject_fault)?);
            out.extend(triangles36_suite(engine)?);
            out.extend(property_suite(opts, engine)?);
            out
        }
    })
}

/// The twelve certificates, plus a negative control that must be rejected.
pub fn identity_suite(inject_fault: bool) -> Result<Vec<Check>> {
    let mut out = vec![];
    let gens = Ideal::I2.generators();
    for (n, id) in identities().into_iter().enumerate() {
        let mut target = gens[id.generator - 1].clone();
        if inject_fault && n == 0 {
            target = target.scale(-1);
        }
        let c = id.check_against(&target)?;
        let name = format!("identity gen{} in {}", c.generator, c.ideal);
        let witness = if c.holds { id.certificate()?.to_string() } else { format!("residual {}", c.residual) };
        out.push(Check::new(name, c.holds, witness));
    }
    let flipped = {
        let id = &identities()[3];
        let (c, i) = &id.terms[0];
        let mut bad = id.clone();
        bad.terms[0] = (c.scale(-1), *i);
        bad.check()?
    };
    out.push(Check::new("control: sign-flipped certificate rejected", !flipped.holds, flipped.residual));
    Ok(out)
}

/// `Theta_2` vanishes on the `I2` generators and not on a lone triangle.
pub fn theta2_suite(inject_fault: bool) -> Result<Vec<Check>> {
    let mut out = vec![];
    for (i, mut g) in Ideal::I2.generators().into_iter().enumerate() {
        if inject_fault && i == 1 {
            // Flip the sign of the (1, U) term.
            g = g.sub(&GroupAlgebraElement::parse("2*(1,U)", 2)?)?;
        }
        out.push(Check::new(format!("theta2 vanishes on I2 generator {}", i + 1), theta2_vanishes(&g)?, g.to_string()));
    }
    let lone = GroupAlgebraElement::one(2);
    out.push(Check::new("control: theta2 of (1,1) is nonzero", !theta2_vanishes(&lone)?, "(1,1)"));
    for m in ["1+S", "1+U+U^2"] {
        let t = theta1(&GroupAlgebraElement::parse(m, 1)?)?;
        out.push(Check::new(format!("theta1({m}) = 0"), t.is_zero(), t.to_string()));
    }
    let (oo, zero) = (Cusp::infinity(), Cusp::integer(0));
    let x = theta2_decompose(&oo, &zero, &Psl2::identity())?;
    out.push(Check::new("decompose (oo, 0, 1)", x == GroupAlgebraElement::parse("-(S,S)", 2)?, x.to_string()));
    Ok(out)
}

pub fn triangles36_suite(engine: &Engine) -> Result<Vec<Check>> {
    let r = triangle36_kernel();
    let summary = format!(
        "kernel rank {}, {} translates of rank {}, enlarged search: {}",
        r.kernel_rank, r.translates, r.translate_rank, r.enlarged
    );
    let mut out = vec![
        Check::new("triangles36: I2 generators lie in the kernel", r.generators_in_kernel, summary.clone()),
        Check::new("triangles36: edge classes are exclusive", r.classes_exclusive, format!("{} constraints", r.constraints)),
        Check::new("triangles36: kernel lattice equals the I2 translate lattice", r.lattice_equal, summary),
    ];
    // Kernel elements act by zero on W: the kernel lies in the annihilating ideal.
    let six = crate::homology::six_elements();
    for (w1, w2) in [(4, 4), (10, 10)] {
        let w = engine.w_pair(w1, w2, Parity::Both)?;
        let mut bad = None;
        for row in r.kernel.iter_rows() {
            let mut x = GroupAlgebraElement::zero(2);
            for (j, c) in row.iter().enumerate() {
                let c: i64 = c.try_into().expect("small kernel entries");
                let key = vec![six[j / 6].clone(), six[j % 6].clone()];
                x = x.add(&GroupAlgebraElement::basis(key).scale(c))?;
            }
            if !annihilates(&x, &w, w1, w2)? {
                bad = Some(x.to_string());
                break;
            }
        }
        out.push(Check::from_sampled(&format!("triangles36: kernel annihilates W_{{{w1},{w2}}}"), r.kernel_rank, bad));
    }
    let o = order_one_analogue();
    out.push(Check::new(
        "order one: closed chains on B0 are generated by 1+S, 1+U+U^2",
        o.lattice_equal && o.theta1_manin_zero,
        format!("{} edges, nullity {}, {} translates", o.edges.len(), o.nullity, o.translates),
    ));
    Ok(out)
}

fn annihilates(x: &GroupAlgebraElement, w: &crate::linalg::SubspaceBasis, w1: usize, w2: usize) -> Result<bool> {
    let m = x.action_matrix(w1, w2)?.matrix.to_rational();
    Ok(w.rows().iter().all(|r| m.mul_vec(r).iter().all(Zero::is_zero)))
}

pub fn random_psl2(rng: &mut impl Rng, max_len: usize) -> Psl2 {
    let letters = [Psl2::s(), Psl2::u(), Psl2::t(), Psl2::t().inverse()];
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(Psl2::identity(), |acc, _| &acc * &letters[rng.gen_range(0..letters.len())])
}

pub fn random_cusp(rng: &mut impl Rng, max_den: i64) -> Cusp {
    if rng.gen_ratio(1, 20) {
        return Cusp::infinity();
    }
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-3 * max_den..=3 * max_den);
    Cusp::from_i64(p, q).expect("q > 0")
}

fn random_poly(rng: &mut impl Rng, w: usize) -> PolyVec {
    let c = (0..=w).map(|_| BigRational::from_integer(rng.gen_range(-5i64..=5).into())).collect();
    PolyVec::from_coeffs(w, 0, c).unwrap()
}

fn apply(m: &IntMatrix, p: &PolyVec) -> PolyVec {
    let (w1, w2) = p.weights();
    PolyVec::from_coeffs(w1, w2, m.to_rational().mul_vec(p.coeffs())).unwrap()
}

/// Pairs `(a, b)` of adjacent cusps in `B1`, drawn as consecutive Farey neighbours.
fn random_adjacent_b1(rng: &mut impl Rng) -> (Cusp, Cusp) {
    loop {
        let g = random_psl2(rng, 10);
        let (a, b) = (g.at_infinity(), g.at_zero());
        if cusp_region(&a) == Region::B1 && cusp_region(&b) == Region::B1 {
            return (a, b);
        }
    }
}

/// Randomized properties with a fixed seed.
pub fn property_suite(opts: &SuiteOptions, engine: &Engine) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = opts.samples;
    let mut out = vec![];

    let mut bad = None;
    for _ in 0..n {
        let (g, h) = (random_psl2(&mut rng, 8), random_psl2(&mut rng, 8));
        let w = 2 * rng.gen_range(0..=6);
        if act1_matrix(&(&g * &h), w) != act1_matrix(&g, w).mul(&act1_matrix(&h, w)) {
            bad = Some(format!("g = {g:?}, h = {h:?}, w = {w}"));
            break;
        }
        let (g2, h2) = (random_psl2(&mut rng, 6), random_psl2(&mut rng, 6));
        let lhs = act2_matrix(&(&g * &h), &(&g2 * &h2), 4, 2).matrix;
        let rhs = act2_matrix(&g, &g2, 4, 2).matrix.mul(&act2_matrix(&h, &h2, 4, 2).matrix);
        if lhs != rhs {
            bad = Some(format!("pair action at (4,2): {g:?}, {g2:?}, {h:?}, {h2:?}"));
            break;
        }
    }
    out.push(Check::from_sampled("action is a homomorphism", n, bad));

    let mut bad = None;
    for w in (0..=12).step_by(2) {
        let id = IntMatrix::identity(w + 1);
        let s = act1_matrix(&Psl2::s(), w);
        let u = act1_matrix(&Psl2::u(), w);
        if s.mul(&s) != id || u.mul(&u).mul(&u) != id {
            bad = Some(format!("w = {w}"));
        }
    }
    out.push(Check::from_sampled("S^2 = U^3 = 1 on V_w, w <= 12", 7, bad));

    let mut bad = None;
    for _ in 0..n {
        let g = random_psl2(&mut rng, 8);
        let w = 2 * rng.gen_range(1..=6);
        let (p, q) = (random_poly(&mut rng, w), random_poly(&mut rng, w));
        let m = act1_matrix(&g, w);
        if haberland_pairing(&apply(&m, &p), &apply(&m, &q))? != haberland_pairing(&p, &q)? {
            bad = Some(format!("g = {g:?}, P = {p}, Q = {q}"));
            break;
        }
    }
    out.push(Check::from_sampled("pairing is invariant", n, bad));

    let mut bad = None;
    for _ in 0..n {
        let w = 2 * rng.gen_range(1..=6);
        let a: i64 = rng.gen_range(-6..=6);
        let p = random_poly(&mut rng, w);
        // (X - a)^w
        let kernel: Vec<BigRational> = (0..=w)
            .map(|k| {
                let b = num_integer::binomial(BigInt::from(w), BigInt::from(k));
                BigRational::from_integer(b * BigInt::from(-a).pow((w - k) as u32))
            })
            .collect();
        let kernel = PolyVec::from_coeffs(w, 0, kernel).unwrap();
        let value: BigRational =
            p.coeffs().iter().enumerate().map(|(k, c)| c * BigRational::from_integer(BigInt::from(a).pow(k as u32))).sum();
        if haberland_pairing(&kernel, &p)? != value {
            bad = Some(format!("a = {a}, P = {p}"));
            break;
        }
    }
    out.push(Check::from_sampled("pairing evaluates: [(X-a)^w, P] = P(a)", n, bad));

    let mut bad = None;
    for _ in 0..n {
        let (a, b, c) = (random_cusp(&mut rng, 25), random_cusp(&mut rng, 25), random_cusp(&mut rng, 25));
        let g = random_psl2(&mut rng, 8);
        let (dab, dba) = (cusp_distance(&a, &b), cusp_distance(&b, &a));
        let ok = dab == dba
            && cusp_distance(&a, &a) == 0
            && (a == b || dab > 0)
            && dab <= cusp_distance(&a, &c) + cusp_distance(&c, &b)
            && cusp_distance(&g.act(&a), &g.act(&b)) == dab
            && ((dab == 1) == a.is_adjacent(&b));
        if !ok {
            bad = Some(format!("a = {a}, b = {b}, c = {c}, g = {g:?}"));
            break;
        }
    }
    out.push(Check::from_sampled("cusp distance is a Gamma-invariant metric", n, bad));

    let mut bad = None;
    for _ in 0..n {
        let (a, b) = random_adjacent_b1(&mut rng);
        let (ha, hb) = (cusp_height(&a), cusp_height(&b));
        let Some([sum, diff]) = common_neighbours(&a, &b) else {
            bad = Some(format!("no common neighbours for {a}, {b}"));
            break;
        };
        let ok = cusp_height(&sum) == ha.min(hb) + 1 && cusp_height(&diff) <= ha.max(hb);
        if !ok {
            bad = Some(format!("{a}, {b}: h = {ha}, {hb}; mediant {sum}, difference {diff}"));
            break;
        }
    }
    out.push(Check::from_sampled("adjacent B1 cusps: h(mediant) = min + 1, h(difference) <= max", n, bad));

    for (w1, w2) in [(4, 4), (10, 10)] {
        let w = engine.w_pair(w1, w2, Parity::Both)?;
        let ok = reflect_basis(&w, w1, w2, true, true) == w;
        out.push(Check::new(format!("W_{{{w1},{w2}}} is (eps,eps)-stable"), ok, format!("dim {}", w.dim())));
        let wm = engine.w_minus(w1, w2);
        out.push(Check::new(
            format!("W^-_{{{w1},{w2}}} = (1,eps) W"),
            wm.is_ok(),
            match wm {
                Ok(b) => format!("dim {}", b.dim()),
                Err(e) => e.to_string(),
            },
        ));
        let mut bad = None;
        let gens = Ideal::I2.generators();
        for _ in 0..n / 5 {
            let key = [random_psl2(&mut rng, 5), random_psl2(&mut rng, 5)];
            let x = gens[rng.gen_range(0..gens.len())].left_translate(&key);
            if !annihilates(&x, &w, w1, w2)? {
                bad = Some(x.to_string());
                break;
            }
        }
        out.push(Check::from_sampled(&format!("translated I2 generators annihilate W_{{{w1},{w2}}}"), n / 5, bad));
    }

    let mut bad = None;
    let mut done = 0;
    while done < 100 {
        let (a, b) = (random_cusp(&mut rng, 12), random_cusp(&mut rng, 12));
        if a == b || cusp_height(&a) > 4 || cusp_height(&b) > 4 {
            continue;
        }
        let g = random_psl2(&mut rng, 6);
        done += 1;
        if let Err(e) = theta2_decompose(&a, &b, &g) {
            bad = Some(format!("({a}, {b}, {g:?}): {e}"));
            break;
        }
    }
    out.push(Check::from_sampled("theta2_decompose self-verifies", 100, bad));

    let mut bad = None;
    let steps = ["S", "U", "S*T", "U*T^2", "S*T^-3"].map(|w| Psl2::parse_word(w).unwrap());
    for _ in 0..n {
        let g1 = random_psl2(&mut rng, 8);
        let g2 = &g1 * &steps[rng.gen_range(0..steps.len())];
        if !subdivision_check(&g1, &g2)? {
            bad = Some(format!("{g1:?}, {g2:?}"));
            break;
        }
    }
    out.push(Check::from_sampled("four-triangle subdivision", n, bad));

    Ok(out)
}
