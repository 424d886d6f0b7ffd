//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
//! failure. Tolerances and time limits are fixed below.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use coulombkit::abelian_algebra::{
    commutator, multiply, poisson_bracket, AbelianElement, Context, Mode,
};
use coulombkit::abelianization::{
    adjoint_isomorphism_check, gr_lift, minuscule_lift, rank1_branch, Family, LocalizedElement,
};
use coulombkit::cli::run_captured;
use coulombkit::degeneration::{generation_check, gr_multiply, leading_term};
use coulombkit::hypertoric::{induced_theory, reduction_oracle, LatticeSequence};
use coulombkit::lattice::{Coweight, MatterContent, RootDatum, Theory, Weight};
use coulombkit::monopole::{delta2, levi_series, monopole_series, MonopoleRequest};
use coulombkit::properties;
use coulombkit::random::Sampler;
use coulombkit::symbolic::{q, qr, Poly, TruncatedSeries, Q};
use coulombkit::Error;

const SEED: u64 = 20_240_601;
const ASSOCIATIVITY_CASES: usize = 300;
const SIGMA_CASES: usize = 200;
const EMBEDDING_CASES: usize = 200;
const POISSON_CASES: usize = 100;
const LIMIT_U1: Duration = Duration::from_secs(1);
const LIMIT_SL2: Duration = Duration::from_secs(5);
const LIMIT_RANK1: Duration = Duration::from_secs(1);
const GENERATION_RADIUS: i64 = 3;
const HYPERTORIC_DEGREE: i64 = 10;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let e = start.elapsed();
    check(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

fn weights(rank: usize, list: &[(&[i64], u32)]) -> MatterContent {
    MatterContent::new(
        rank,
        list.iter()
            .filter(|(_, m)| *m > 0)
            .map(|(w, m)| (Weight(w.to_vec()), *m)),
    )
    .unwrap()
}

fn theory(rd: RootDatum, list: &[(&[i64], u32)]) -> Theory {
    Theory::new(rd.clone(), weights(rd.rank(), list)).unwrap()
}

fn u1(n: u32) -> Theory {
    theory(RootDatum::torus(1), &[(&[1], n)])
}

fn sl2_fund(n: u32) -> Theory {
    theory(RootDatum::sl2(), &[(&[1], n), (&[-1], n)])
}

fn pgl2_adjoint(copies: u32) -> Theory {
    theory(RootDatum::pgl2(), &[(&[1], copies), (&[-1], copies)])
}

fn series(
    h: Result<coulombkit::monopole::HilbertSeries, Error>,
) -> Result<TruncatedSeries, String> {
    h.map(|h| h.series).map_err(|e| e.to_string())
}

fn hilbert(t: &Theory, d: i64) -> Result<TruncatedSeries, String> {
    series(monopole_series(&MonopoleRequest::new(t.clone(), d)))
}

/// `(a ± h/2)^n` by the binomial theorem.
fn binomial_oracle(ctx: &Arc<Context>, n: u32, sign: i64) -> Poly {
    let s = ctx.space();
    let mut out = Poly::zero(s);
    let mut binom = Q::from_integer(1.into());
    for k in 0..=n {
        let c = &binom * qr(sign.pow(k), 1 << k);
        let term = &Poly::t(s, 0).pow(n - k) * &Poly::hbar(s).pow(k);
        out = &out + &term.scale(&c);
        binom *= qr(i64::from(n - k), i64::from(k + 1));
    }
    out
}

fn criterion_1() -> Outcome {
    for n in [1u32, 2, 3, 5] {
        let ctx = Context::new(1, u1(n).matter, Mode::Quantized).unwrap();
        let x = AbelianElement::r(&ctx, &[1]);
        let y = AbelianElement::r(&ctx, &[-1]);
        let a = AbelianElement::t(&ctx, 0);
        let h = AbelianElement::from_poly(&ctx, Poly::hbar(ctx.space()));
        let xy = multiply(&x, &y).map_err(|e| e.to_string())?;
        let yx = multiply(&y, &x).map_err(|e| e.to_string())?;
        check(
            xy == AbelianElement::from_poly(&ctx, binomial_oracle(&ctx, n, 1)),
            || format!("N={n}: xy = {xy}"),
        )?;
        check(
            yx == AbelianElement::from_poly(&ctx, binomial_oracle(&ctx, n, -1)),
            || format!("N={n}: yx = {yx}"),
        )?;
        let xa = commutator(&x, &a).unwrap();
        let ya = commutator(&y, &a).unwrap();
        check(xa == multiply(&h, &x).unwrap(), || {
            format!("N={n}: [x,a] = {xa}")
        })?;
        check(ya == multiply(&h, &y).unwrap().neg(), || {
            format!("N={n}: [y,a] = {ya}")
        })?;
        let an = AbelianElement::from_poly(&ctx, Poly::t(ctx.space(), 0).pow(n))
            .at_hbar_zero()
            .unwrap();
        check(
            xy.at_hbar_zero().unwrap() == an && yx.at_hbar_zero().unwrap() == an,
            || format!("N={n}: products at hbar=0 differ from a^N"),
        )?;
    }
    Ok(())
}

fn reports_pass(reports: &[properties::PropertyReport]) -> Outcome {
    for r in reports {
        check(r.passed(), || {
            format!(
                "{}: {} failures, first: {}",
                r.name,
                r.failures.len(),
                r.failures[0]
            )
        })?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut s = Sampler::new(SEED);
    let mut reports = Vec::new();
    let run = |r: coulombkit::Result<properties::PropertyReport>| r.map_err(|e| e.to_string());
    for mode in [Mode::Classical, Mode::Quantized, Mode::Flavored] {
        reports.push(run(properties::associativity(
            &mut s,
            mode,
            ASSOCIATIVITY_CASES,
        ))?);
    }
    reports.push(run(properties::commutativity(&mut s, ASSOCIATIVITY_CASES))?);
    for mode in [Mode::Classical, Mode::Quantized] {
        reports.push(run(properties::sigma_isomorphism(
            &mut s,
            mode,
            SIGMA_CASES,
        ))?);
        reports.push(run(properties::embedding_homomorphism(
            &mut s,
            mode,
            EMBEDDING_CASES,
        ))?);
        reports.push(run(properties::self_dual_grading(
            &mut s,
            mode,
            EMBEDDING_CASES,
        ))?);
    }
    reports_pass(&reports)
}

fn criterion_3() -> Outcome {
    let mut s = Sampler::new(SEED + 1);
    let reports = properties::poisson_axioms(&mut s, POISSON_CASES).map_err(|e| e.to_string())?;
    reports_pass(&reports)?;
    let ctx = Context::new(1, u1(1).matter, Mode::Classical).unwrap();
    let b = poisson_bracket(
        &AbelianElement::r(&ctx, &[1]),
        &AbelianElement::r(&ctx, &[-1]),
    )
    .unwrap();
    check(b == AbelianElement::one(&ctx), || format!("{{x,y}} = {b}"))
}

/// Hilbert series of `C[x,y,a]/(xy − a²)` with all generators in degree 2:
/// the standard monomials are those not divisible by `xy`.
fn conic_oracle(max_degree: i64) -> Vec<i64> {
    let mut c = vec![0i64; max_degree as usize + 1];
    let top = max_degree / 2;
    for i in 0..=top {
        for j in 0..=top {
            for k in 0..=top {
                if i > 0 && j > 0 {
                    continue;
                }
                let d = 2 * (i + j + k);
                if d <= max_degree {
                    c[d as usize] += 1;
                }
            }
        }
    }
    c
}

fn as_ints(s: &TruncatedSeries, upto: i64) -> Result<Vec<i64>, String> {
    (0..=upto)
        .map(|k| {
            let c = s.coeff_t(k);
            if c.is_integer() {
                i64::try_from(c.to_integer()).map_err(|_| format!("coefficient of t^{k} too large"))
            } else {
                Err(format!("coefficient of t^{k} is {c}"))
            }
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = hilbert(&u1(2), 8)?;
    within(start, LIMIT_U1, "monopole series")?;
    let got = as_ints(&s, 8)?;
    check(got == conic_oracle(8), || {
        format!("{got:?} vs oracle {:?}", conic_oracle(8))
    })?;
    let even: Vec<i64> = got.iter().step_by(2).copied().collect();
    check(even == [1, 3, 5, 7, 9], || {
        format!("even coefficients {even:?}")
    })
}

/// Coefficients of `(1 − t¹²)/((1 − t⁴)²(1 − t⁶))` by direct expansion.
fn sl2_closed_form(max_degree: usize) -> Vec<i64> {
    let mut c = vec![0i64; max_degree + 1];
    for i in (0..=max_degree).step_by(4) {
        for j in (0..=max_degree - i).step_by(4) {
            for k in (0..=max_degree - i - j).step_by(6) {
                c[i + j + k] += 1;
            }
        }
    }
    let mut out = c.clone();
    for d in 12..=max_degree {
        out[d] -= c[d - 12];
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let s = hilbert(&sl2_fund(4), 20)?;
    within(start, LIMIT_SL2, "monopole series")?;
    let got = as_ints(&s, 20)?;
    let expect = sl2_closed_form(20);
    check(got == expect, || format!("{got:?} vs {expect:?}"))?;
    let half_integral = s
        .iter()
        .any(|(k, c)| *k % 2 != 0 && !num_traits::Zero::is_zero(c));
    check(!half_integral, || "half-integral terms".into())
}

fn write_theory(name: &str, json: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("coulombkit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn criterion_6() -> Outcome {
    for (name, t, json) in [
        ("pgl2_pure.json", pgl2_adjoint(0), r#"{"preset": "PGL2"}"#),
        (
            "pgl2_adjoint.json",
            pgl2_adjoint(1),
            r#"{"preset": "PGL2", "matter": [{"weight": [1]}, {"weight": [0]}, {"weight": [-1]}]}"#,
        ),
    ] {
        match monopole_series(&MonopoleRequest::new(t, 6)) {
            Err(e @ Error::BadTheory(_)) => check(e.exit_code() == 3, || {
                format!("{name}: exit code {}", e.exit_code())
            })?,
            other => return Err(format!("{name}: expected a bad theory, got {other:?}")),
        }
        let path = write_theory(name, json);
        let (code, out, _) = run_captured(
            [
                "coulombkit",
                "hilbert",
                path.to_str().unwrap(),
                "--max-degree",
                "6",
                "--json",
            ],
            "",
        );
        check(code == 3, || format!("{name}: CLI exit code {code}"))?;
        check(out.contains("\"bad-theory\""), || {
            format!("{name}: envelope {out}")
        })?;
    }
    Ok(())
}

/// `Σ |⟨χ, λ₀⟩| dim N(χ) / 2`, plus one for `PGL(2)`.
fn closed_form_n(t: &Theory, pgl: bool) -> u32 {
    let sum: i64 = t
        .matter
        .entries()
        .iter()
        .map(|e| e.weight.0[0].abs() * i64::from(e.mult))
        .sum();
    (sum / 2) as u32 + u32::from(pgl)
}

fn criterion_7() -> Outcome {
    let cases = [
        ("PGL2 pure", pgl2_adjoint(0), true, None),
        ("PGL2 adjoint", pgl2_adjoint(1), true, Some(q(-4))),
        ("SL2 + 4 fund", sl2_fund(4), false, None),
    ];
    let expected_n = [1u32, 2, 4];
    for ((name, t, pgl, c), n) in cases.into_iter().zip(expected_n) {
        let start = Instant::now();
        let h = rank1_branch(&t, Mode::Classical).map_err(|e| format!("{name}: {e}"))?;
        within(start, LIMIT_RANK1, name)?;
        check(h.family == Family::Generic, || {
            format!("{name}: family {:?}", h.family)
        })?;
        check(h.n == n && h.n == closed_form_n(&t, pgl), || {
            format!("{name}: N = {}", h.n)
        })?;
        check(!num_traits::Zero::is_zero(&h.c), || {
            format!("{name}: c = 0")
        })?;
        if let Some(c) = c {
            check(h.c == c, || format!("{name}: c = {}", h.c))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let r = adjoint_isomorphism_check(&pgl2_adjoint(1)).map_err(|e| e.to_string())?;
    check(r.pass, || format!("{r:?}"))
}

fn lift(f: &Poly, l: i64, ctx: &Arc<Context>, rd: &RootDatum) -> LocalizedElement {
    let lambda = Coweight(vec![l]);
    if rd.is_closed_orbit(&lambda).unwrap() {
        minuscule_lift(f, &lambda, ctx, rd).unwrap()
    } else {
        gr_lift(f, &lambda, ctx, rd).unwrap()
    }
}

fn criterion_9() -> Outcome {
    let rank1 = [
        pgl2_adjoint(0),
        pgl2_adjoint(1),
        pgl2_adjoint(2),
        theory(
            RootDatum::pgl2(),
            &[(&[1], 2), (&[-1], 2), (&[3], 1), (&[-3], 1)],
        ),
        sl2_fund(4),
        sl2_fund(0),
    ];
    for t in &rank1 {
        let ctx = Context::new(1, t.matter.clone(), Mode::Classical).unwrap();
        let s = ctx.space();
        let a = Poly::t(s, 0);
        let lifts = [
            lift(&Poly::one(s), 1, &ctx, &t.rd),
            lift(&a, 1, &ctx, &t.rd),
            lift(&(&a * &a), 0, &ctx, &t.rd),
            lift(&Poly::one(s), 2, &ctx, &t.rd),
        ];
        for x in &lifts {
            for y in &lifts {
                let lhs = leading_term(&x.mul(y).unwrap()).map_err(|e| e.to_string())?;
                let rhs = gr_multiply(&leading_term(x).unwrap(), &leading_term(y).unwrap())
                    .map_err(|e| e.to_string())?;
                check(lhs == rhs, || {
                    format!("{:?}: {lhs} vs {rhs}", t.rd.simple_coroots())
                })?;
            }
        }
    }
    let theories: Vec<Theory> = vec![
        u1(2),
        pgl2_adjoint(2),
        sl2_fund(4),
        theory(RootDatum::torus(2), &[(&[1, 1], 1), (&[1, -1], 1)]),
        theory(RootDatum::gl(2), &[(&[1, 0], 2), (&[0, 1], 2)]),
    ];
    for t in &theories {
        let r = generation_check(&t.rd, &t.matter, GENERATION_RADIUS).map_err(|e| e.to_string())?;
        check(r.failures.is_empty() && r.classes_checked > 0, || {
            format!("{:?}", r.failures)
        })?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let sequences = [
        LatticeSequence::new(vec![vec![1], vec![1]], vec![vec![1, -1]]),
        LatticeSequence::new(
            vec![vec![1], vec![1], vec![1]],
            vec![vec![1, -1, 0], vec![0, 1, -1]],
        ),
        LatticeSequence::new(
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1]],
            vec![vec![1, 1, -1, 0], vec![0, 0, 1, -1]],
        ),
    ];
    for seq in sequences {
        let seq = seq.map_err(|e| e.to_string())?;
        check(seq.d() <= 4, || "sequence too long".into())?;
        let t = induced_theory(&seq).map_err(|e| e.to_string())?;
        let m = hilbert(&t, HYPERTORIC_DEGREE)?;
        let o = reduction_oracle(&seq, HYPERTORIC_DEGREE).map_err(|e| e.to_string())?;
        check(m == o, || format!("alpha {:?}: {m} vs {o}", seq.alpha))?;
    }
    Ok(())
}

/// The monopole sum over PGL(2) coweights of one parity.
fn pgl2_parity_part(t: &Theory, parity: i64, order: i64) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for l in 0..=order {
        if l % 2 != parity {
            continue;
        }
        let lambda = Coweight(vec![l]);
        let d = delta2(&lambda, &t.matter, &t.rd);
        if 2 * d > order {
            continue;
        }
        let p = levi_series(&lambda, &t.rd, order).unwrap();
        out = out.add(&p.shift(2 * d).truncate(order));
    }
    out
}

fn criterion_11() -> Outcome {
    let d = 8;
    let (a, b) = (u1(2), sl2_fund(4));
    let product = a.product(&b).map_err(|e| e.to_string())?;
    let lhs = hilbert(&product, d)?;
    let rhs = hilbert(&a, d)?.mul(&hilbert(&b, d)?);
    check(lhs == rhs, || format!("product: {lhs} vs {rhs}"))?;

    let plain = theory(RootDatum::sl2(), &[(&[1], 4), (&[-1], 4)]);
    let padded = theory(RootDatum::sl2(), &[(&[1], 4), (&[-1], 4), (&[0], 3)]);
    check(hilbert(&plain, d)? == hilbert(&padded, d)?, || {
        "trivial summand changes the series".into()
    })?;
    let ctx = Context::new(1, plain.matter.clone(), Mode::Quantized).unwrap();
    let ctx0 = Context::new(1, padded.matter.clone(), Mode::Quantized).unwrap();
    let x = multiply(
        &AbelianElement::r(&ctx, &[2]),
        &AbelianElement::r(&ctx, &[-1]),
    )
    .unwrap();
    let x0 = multiply(
        &AbelianElement::r(&ctx0, &[2]),
        &AbelianElement::r(&ctx0, &[-1]),
    )
    .unwrap();
    check(x.to_string() == x0.to_string(), || {
        "trivial summand changes the algebra".into()
    })?;

    // SL(2) with two adjoints against the even coweights of PGL(2).
    let order = 2 * d;
    let sl = theory(RootDatum::sl2(), &[(&[2], 2), (&[-2], 2)]);
    let pgl = pgl2_adjoint(2);
    let even = pgl2_parity_part(&pgl, 0, order);
    let odd = pgl2_parity_part(&pgl, 1, order);
    let sl_series = hilbert(&sl, d)?;
    check(sl_series == even, || {
        format!("SL2 {sl_series} vs even part {even}")
    })?;
    check(hilbert(&pgl, d)? == even.add(&odd), || {
        "PGL2 series is not the sum of its parts".into()
    })
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("quantized U(1) relations", criterion_1),
        ("algebra axioms", criterion_2),
        ("Poisson structure", criterion_3),
        ("monopole formula, U(1) with 2 flavors", criterion_4),
        ("monopole formula, SL(2) with 4 fundamentals", criterion_5),
        ("bad theory detection", criterion_6),
        ("rank-one branches", criterion_7),
        ("adjoint check", criterion_8),
        ("degeneration consistency", criterion_9),
        ("hypertoric reduction", criterion_10),
        ("structural identities", criterion_11),
    ];
    let mut failed = 0;
    let mut stdout = std::io::stdout().lock();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => writeln!(stdout, "PASS {:>2} {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                writeln!(stdout, "FAIL {:>2} {name} ({ms} ms): {e}", i + 1)
            }
        }
        .unwrap();
    }
    writeln!(stdout, "{} criteria, {failed} failed", criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
