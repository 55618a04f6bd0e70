//! The `check` suites. Each case yields a pass or a failure message.

use std::fmt;

use clap::ValueEnum;
use num::{One, Zero};
use qca::blade;
use qca::config::AlgebraConfig;
use qca::exterior::{counit_blade, gco, graded_tensor_wedge, wedge};
use qca::expr::eval_str;
use qca::hopf::{self, ConvCtx, Endo, Side};
use qca::pairing::{self, cmul, VectorForm, WickDirection};
use qca::qft::{self, U2Params};
use qca::scalar::{frac, int};
use qca::{Multivector, QcaError, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 0x5eed;

const APPENDIX: &str = include_str!("../golden/appendix.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Invariants,
    Antipode,
    Integrals,
    U2,
}

/// Dimension used when the command line names none.
pub fn default_dim(s: Suite) -> usize {
    match s {
        Suite::Appendix | Suite::Invariants => 4,
        Suite::Antipode | Suite::Integrals => 2,
        Suite::U2 => 4,
    }
}

pub struct Report {
    cases: Vec<(String, Result<(), String>)>,
}

impl Report {
    fn new() -> Self {
        Report { cases: Vec::new() }
    }

    fn record(&mut self, name: impl Into<String>, r: Result<(), String>) {
        self.cases.push((name.into(), r));
    }

    fn expect(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.record(name, if ok { Ok(()) } else { Err(detail()) });
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|(_, r)| r.is_ok())
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|(n, r)| match r {
                Ok(()) => json!({ "case": n, "pass": true }),
                Err(d) => json!({ "case": n, "pass": false, "detail": d }),
            })
            .collect();
        let passed = self.cases.iter().filter(|(_, r)| r.is_ok()).count();
        json!({ "passed": passed, "failed": self.cases.len() - passed, "cases": cases })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, r) in &self.cases {
            match r {
                Ok(()) => writeln!(f, "PASS {n}")?,
                Err(d) => writeln!(f, "FAIL {n}: {d}")?,
            }
        }
        let passed = self.cases.iter().filter(|(_, r)| r.is_ok()).count();
        writeln!(f, "{passed} passed, {} failed", self.cases.len() - passed)
    }
}

pub fn run(s: Suite, cfg: &AlgebraConfig, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new();
    match s {
        Suite::Appendix => appendix(&mut rep),
        Suite::Invariants => invariants(cfg.dim, &mut rng, &mut rep),
        Suite::Antipode => antipode(cfg, &mut rng, &mut rep),
        Suite::Integrals => integrals(&mut rng, &mut rep),
        Suite::U2 => u2(&mut rng, &mut rep),
    }
    rep
}

fn rat(r: &mut impl Rng) -> Scalar {
    frac(r.gen_range(-9..=9), r.gen_range(1..=5))
}

fn form(r: &mut impl Rng, dim: usize) -> VectorForm {
    let vals: Vec<Scalar> = (0..dim * dim).map(|_| rat(r)).collect();
    VectorForm::from_fn(dim, |i, j| vals[(i - 1) * dim + j - 1].clone())
}

fn nonzero_form(r: &mut impl Rng, dim: usize) -> VectorForm {
    loop {
        let f = form(r, dim);
        if !f.is_zero() {
            return f;
        }
    }
}

fn mv(r: &mut impl Rng, dim: usize) -> Multivector {
    Multivector::from_terms(dim, blade::basis(dim).into_iter().map(|b| (b, rat(r)))).expect("dims agree")
}

/// Every case carries its own dimension and forms.
fn appendix(rep: &mut Report) {
    let cases: Vec<Value> = serde_json::from_str(APPENDIX).expect("bundled golden file is valid JSON");
    for case in cases {
        let name = case["name"].as_str().unwrap_or("?").to_string();
        let mut c = case.clone();
        let obj = c.as_object_mut().expect("case object");
        let (expr, want) = (obj.remove("expr"), obj.remove("expect"));
        obj.remove("name");
        let result = (|| {
            let cfg = AlgebraConfig::from_json(&c).map_err(|e| e.to_string())?;
            let expr = expr.as_ref().and_then(Value::as_str).ok_or("case has no expr")?;
            let want = want.as_ref().and_then(Value::as_str).ok_or("case has no expect")?;
            let got = eval_str(expr, &cfg).map_err(|e| format!("{expr}: {e}"))?.to_string();
            if got == want {
                Ok(())
            } else {
                Err(format!("{expr} gave {got}, expected {want}"))
            }
        })();
        rep.record(name, result);
    }
}

fn invariants(max_dim: usize, r: &mut ChaCha8Rng, rep: &mut Report) {
    const REPS: usize = 10;
    for dim in 1..=max_dim {
        let mut fails: Vec<String> = Vec::new();
        let mut check = |name: &str, ok: bool| {
            if !ok && !fails.iter().any(|f| f == name) {
                fails.push(name.to_string());
            }
        };
        for _ in 0..REPS {
            let (a, b, c) = (mv(r, dim), mv(r, dim), mv(r, dim));
            let w = |x: &Multivector, y: &Multivector| wedge(x, y).expect("dims agree");
            check("wedge associativity", w(&w(&a, &b), &c) == w(&a, &w(&b, &c)));
            let t = gco(&a);
            let basis_gco = |x| gco(&Multivector::blade(dim, x));
            check("co-associativity", t.expand_leg(0, basis_gco) == t.expand_leg(1, basis_gco));
            let left = t.contract(|l| Multivector::blade(dim, l[1]).scale(&counit_blade(l[0])));
            let right = t.contract(|l| Multivector::blade(dim, l[0]).scale(&counit_blade(l[1])));
            check("counit laws", left == a && right == a);
            check("co-product is multiplicative", gco(&w(&a, &b)) == graded_tensor_wedge(&gco(&a), &gco(&b)));
            let conv = t.contract(|l| w(&hopf::grassmann_antipode(&Multivector::blade(dim, l[0])), &Multivector::blade(dim, l[1])));
            check("antipode axiom", conv == Multivector::scalar(dim, qca::exterior::counit(&a)));
            let f = form(r, dim).antisymmetric_part();
            let d = pairing::wick_transform(&a, &f, WickDirection::ToDotted).expect("antisymmetric");
            check("Wick round trip", pairing::wick_transform(&d, &f, WickDirection::FromDotted).ok() == Some(a.clone()));
            check("meet equals vee", qca::cayley::meet(&a, &b).ok() == qca::cayley::vee(&a, &b).ok());
            if dim <= 3 {
                let bf = form(r, dim);
                let m = |x: &Multivector, y: &Multivector| cmul(x, y, &bf).expect("dims agree");
                check("Clifford associativity", m(&m(&a, &b), &c) == m(&a, &m(&b, &c)));
            }
        }
        let name = format!("dim {dim}: {REPS} random cases per law");
        rep.record(name, if fails.is_empty() { Ok(()) } else { Err(fails.join(", ")) });
    }
}

/// The dim-2 antipode in closed form, `None` where `N` vanishes.
fn closed_form_antipode(b: &VectorForm, c: &VectorForm) -> Option<Endo> {
    let (bb, bc, cz, cw) = (b.get(1, 2), b.get(2, 1), c.get(1, 2), c.get(2, 1));
    let bcm = b.mul(c);
    let n = Scalar::one() - bcm.trace() + bcm.det();
    if n.is_zero() {
        return None;
    }
    let z = Scalar::zero;
    let m = [
        [Scalar::one() + (bc - bb) * (cw - cz), z(), z(), bb - bc],
        [z(), -Scalar::one(), z(), z()],
        [z(), z(), -Scalar::one(), z()],
        [cz - cw, z(), z(), Scalar::one()],
    ];
    let m: Vec<Vec<Scalar>> = m.iter().map(|row| row.iter().map(|x| x / &n).collect()).collect();
    Endo::from_matrix(2, &m).ok()
}

fn antipode(cfg: &AlgebraConfig, r: &mut ChaCha8Rng, rep: &mut Report) {
    if cfg.b.is_some() || cfg.c.is_some() {
        let zero = VectorForm::zero(cfg.dim);
        let (b, c) = (cfg.b.clone().unwrap_or(zero.clone()), cfg.c.clone().unwrap_or(zero));
        let r = match (hopf::antipode_solve(&b, &c), ConvCtx::clifford(&b, &c)) {
            (Ok(s), Ok(ctx)) => {
                if !hopf::is_antipode(&s, &ctx) {
                    Err("solution fails the antipode axiom".to_string())
                } else if cfg.dim == 2 && closed_form_antipode(&b, &c).as_ref() != Some(&s) {
                    Err("solution differs from the closed form".to_string())
                } else {
                    Ok(())
                }
            }
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        };
        rep.record("configured (B, C)", r);
    }
    let mut n = 0;
    while n < 20 {
        let (b, c) = (form(r, 2), form(r, 2));
        let Some(want) = closed_form_antipode(&b, &c) else { continue };
        n += 1;
        let got = hopf::antipode_solve(&b, &c);
        rep.expect(format!("closed form #{n}"), got.as_ref() == Ok(&want), || format!("{got:?}"));
    }
    let mut n = 0;
    while n < 10 {
        let b = form(r, 2);
        let Some(c) = b.inverse() else { continue };
        n += 1;
        let got = hopf::antipode_solve(&b, &c);
        rep.expect(format!("C = B^-1 #{n}"), got == Err(QcaError::NoAntipode), || format!("{got:?}"));
    }
}

fn integrals(r: &mut ChaCha8Rng, rep: &mut Report) {
    let g = ConvCtx::grassmann(2).expect("dim 2");
    let top = blade::top(2);
    for side in [Side::Left, Side::Right] {
        let ints = hopf::integral_space(&g, side);
        let ok = ints.len() == 1 && blade::basis(2).into_iter().all(|b| (b == top) != ints[0].value(b).is_zero());
        rep.expect(format!("Grassmann {side:?} integral"), ok, || format!("{} integrals", ints.len()));
        let co = hopf::cointegral_space(&g, side);
        let ok = co.len() == 1 && co[0].homogeneous_grade() == Some(2);
        rep.expect(format!("Grassmann {side:?} cointegral"), ok, || format!("{co:?}"));
    }
    for k in 1..=10 {
        let (b, c) = (nonzero_form(r, 2), nonzero_form(r, 2));
        let ctx = ConvCtx::clifford(&b, &c).expect("dim 2");
        let empty = [Side::Left, Side::Right]
            .iter()
            .all(|&s| hopf::integral_space(&ctx, s).is_empty() && hopf::cointegral_space(&ctx, s).is_empty());
        rep.expect(format!("Cl(B,C) #{k} has none"), empty, || "nonzero integral space".into());
        let ctx0 = ConvCtx::clifford(&b, &VectorForm::zero(2)).expect("dim 2");
        let back = [Side::Left, Side::Right].iter().all(|&s| !hopf::integral_space(&ctx0, s).is_empty());
        rep.expect(format!("Cl(B,0) #{k} has integrals"), back, || "integral space is empty".into());
    }
}

fn u2(r: &mut ChaCha8Rng, rep: &mut Report) {
    let z = Scalar::zero;
    let p = |r: Scalar, q, t, u, m| U2Params { s: r.clone(), r, q, t, u, m };
    let named = [
        ("Fock", p(int(1), z(), z(), z(), z()), int(1), int(1)),
        ("dual Fock", p(z(), z(), z(), z(), z()), int(0), int(0)),
        ("edge", p(frac(1, 2), z(), z(), frac(1, 2), frac(-1, 2)), frac(1, 2), int(0)),
    ];
    for (name, params, nu, w) in named {
        let a = qft::u2_analysis(&params);
        let ok = a.as_ref().is_ok_and(|a| a.nu == nu && a.w == w && a.positive);
        rep.expect(name, ok, || format!("{a:?}"));
    }
    for k in 1..=5 {
        let params = U2Params { r: rat(r), s: z(), q: rat(r), t: rat(r), u: rat(r), m: rat(r) };
        let params = U2Params { s: params.r.clone(), ..params };
        let half = frac(1, 2);
        let want = VectorForm::new(vec![vec![&half - &params.r, params.q.clone()], vec![params.t.clone(), &half - &params.s]]);
        let a = qft::u2_analysis(&params);
        let ok = a.as_ref().ok().map(|a| &a.propagator) == want.as_ref().ok();
        rep.expect(format!("propagator #{k}"), ok, || format!("{a:?}"));
    }
    for k in 1..=5 {
        let (q, t, nu) = (rat(r), rat(r), rat(r));
        let u = loop {
            let u = rat(r);
            if !u.is_zero() {
                break u;
            }
        };
        let m = &q * &t / &u;
        let a = qft::u2_analysis(&p(nu.clone(), q, t, u, m));
        let ok = a.as_ref().is_ok_and(|a| a.quasifree && a.w == &nu * &nu);
        rep.expect(format!("quasifree parabola #{k}"), ok, || format!("{a:?}"));
    }
    let uni = qft::u1_matrix(&frac(1, 3));
    let ok = qft::expectation(&[1, 2], &uni).ok() == Some(frac(1, 3)) && qft::expectation(&[2, 1], &uni).ok() == Some(frac(2, 3));
    rep.expect("U(1) expectations", ok, || "wrong ν or 1 − ν".into());
}
