//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splice_core::invariants::{
    alexander_polynomial, conway_polynomial, conway_potential, is_fibered, potential_factors,
    seifert_determinant_sign,
};
use splice_core::verify::{check_torres, random_diagram_at, run_checks, run_suite};
use splice_core::{
    parse, seifert_example, serialize, BinomialFactorization, ExpandedJson, Expansion,
    ExponentVector, FactoredJson, GeneratorConfig, LaurentError, LaurentPoly, Outcome,
    OutputEnvelope, Potential, Sign, SuiteSummary,
};

const SUITE_SEED: u64 = 7;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn ev(c: &[i64]) -> ExponentVector {
    ExponentVector::from_i64s(c)
}

fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(nvars, terms.iter().map(|&(e, c)| (ev(e), BigInt::from(c)))).unwrap()
}

fn pairwise_coprime(xs: &[i64]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

fn coprime_tuples(max_len: usize, max_entry: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &frontier {
            for x in 1..=max_entry {
                let mut u = t.clone();
                u.push(x);
                if pairwise_coprime(&u) {
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The closed formula for the star-shaped example: numerator
/// `(α/α_1, ..., α/α_n)` to the power `k - 2`, one denominator
/// `(α/(α_1 α_i), ..., α/(α_n α_i))` per leaf `i`.
fn example_formula(alphas: &[i64], n: usize) -> BinomialFactorization {
    let alpha: i64 = alphas.iter().product();
    let k = alphas.len() as i64;
    let mut factors = vec![(
        ExponentVector::from_i64s(&alphas[..n].iter().map(|a| alpha / a).collect::<Vec<_>>()),
        k - 2,
    )];
    for ai in &alphas[n..] {
        let e: Vec<i64> = alphas[..n].iter().map(|a| alpha / (a * ai)).collect();
        factors.push((ExponentVector::from_i64s(&e), -1));
    }
    BinomialFactorization::from_parts(n, Sign::Plus, factors, 0).unwrap()
}

fn criterion_1() -> Verdict {
    let tuples = coprime_tuples(5, 7);
    let mut cases = 0;
    for alphas in &tuples {
        for n in 1..=alphas.len() {
            cases += 1;
            let d = seifert_example(alphas, n).unwrap();
            let got = conway_potential(&d).unwrap();
            let want = Potential::Factored(example_formula(alphas, n));
            if got != want {
                return verdict(
                    false,
                    format!("alphas {alphas:?}, n = {n}: {got} != {want}"),
                );
            }
        }
    }
    verdict(true, format!("{} tuples, {cases} diagrams", tuples.len()))
}

fn criterion_2() -> Verdict {
    let d = seifert_example(&[1, 2, 3], 1).unwrap();
    // Ω = det(t^-1 A - t A^T) for the Seifert matrix A = [[-1, 1], [0, -1]]
    let m = |a: i64, at: i64| poly(1, &[(&[-1], a), (&[1], -at)]);
    let (m00, m01, m10, m11) = (m(-1, -1), m(1, 0), m(0, 1), m(-1, -1));
    let seifert = m00
        .checked_mul(&m11)
        .unwrap()
        .checked_add(&m01.checked_mul(&m10).unwrap().negated());
    let seifert = seifert.unwrap();
    // Δ (t^3 - 1)(t^2 - 1) = (t^6 - 1)(t - 1)
    let alex = alexander_polynomial(&d).unwrap();
    let Expansion::Poly(delta) = &alex else {
        return verdict(false, "alexander polynomial vanished");
    };
    let lhs = [
        poly(1, &[(&[3], 1), (&[0], -1)]),
        poly(1, &[(&[2], 1), (&[0], -1)]),
    ]
    .iter()
    .try_fold(delta.clone(), |acc, p| acc.checked_mul(p))
    .unwrap();
    let rhs = poly(1, &[(&[6], 1), (&[0], -1)])
        .checked_mul(&poly(1, &[(&[1], 1), (&[0], -1)]))
        .unwrap();

    let omega = conway_polynomial(&d).unwrap();
    let checks = [
        (omega.to_string() == "t^2 - 1 + t^-2", "Ω rendering"),
        (omega == Expansion::Poly(seifert), "Ω = det(t^-1 A - t A^T)"),
        (alex.to_string() == "t^2 - t + 1", "Δ rendering"),
        (lhs == rhs, "Δ cyclotomic identity"),
        (is_fibered(&d), "fibered"),
        (
            seifert_determinant_sign(&d) == Ok(Sign::Plus),
            "det(-A) sign",
        ),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => verdict(false, format!("{what} mismatch")),
        None => verdict(true, "Ω, Δ, fibered, det(-A) = +1"),
    }
}

fn criterion_3() -> Verdict {
    let d = seifert_example(&[1, 1], 2).unwrap();
    let reversed = d.reverse_component(1).unwrap();
    let torres = check_torres(&d, 0);
    let sublink = potential_factors(&d.delete_component(0).unwrap());
    let mut expected_sublink = BinomialFactorization::unit(1);
    expected_sublink.push(ev(&[1]), -1).unwrap();
    let checks = [
        (
            conway_potential(&d) == Ok(Potential::Factored(BinomialFactorization::unit(2))),
            "∇ = 1",
        ),
        (
            conway_potential(&reversed)
                == Ok(Potential::Factored(BinomialFactorization::with_sign(
                    2,
                    Sign::Minus,
                ))),
            "reversed ∇ = -1",
        ),
        (
            conway_polynomial(&d).map(|e| e.to_string()) == Ok("t - t^-1".to_string()),
            "Ω = t - t^-1",
        ),
        (torres.outcome == Outcome::Pass, "Torres check"),
        (sublink == expected_sublink, "∇ of the sublink"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => verdict(false, format!("{what} failed")),
        None => verdict(true, "∇ = 1, reversed -1, Ω = t - t^-1, Torres"),
    }
}

fn suite_config() -> GeneratorConfig {
    GeneratorConfig {
        max_vertices: 12,
        max_components: 5,
        max_weight: 7,
        zero_prob: 0.1,
        seed: SUITE_SEED,
    }
}

fn criterion_4() -> Verdict {
    let cfg = suite_config();
    let reports = run_suite(&cfg, 1000).unwrap();
    let identities = [
        "symmetry",
        "reversal",
        "torres",
        "split_vanishing",
        "alexander_consistency",
        "valency_sum",
    ];
    let relevant: Vec<_> = reports
        .iter()
        .filter(|r| identities.contains(&r.identity.split('[').next().unwrap()))
        .cloned()
        .collect();
    let summary = SuiteSummary::from_reports(&relevant);
    if let Some(r) = relevant.iter().find(|r| r.outcome == Outcome::Fail) {
        return verdict(false, format!("{r}: {:?} vs {:?}", r.expected, r.actual));
    }
    let mut non_exact = 0;
    for idx in 0..1000 {
        let d = random_diagram_at(&cfg, idx).unwrap();
        if let Err(e) = conway_polynomial(&d) {
            if matches!(
                e,
                splice_core::InvariantError::Algebra(LaurentError::NonExactDivision { .. })
            ) {
                non_exact += 1;
            }
        }
    }
    verdict(
        non_exact == 0,
        format!("{summary}, NonExactDivision from conway_polynomial: {non_exact}"),
    )
}

fn criterion_5() -> Verdict {
    let cfg = suite_config();
    let mut fibered = 0;
    for idx in 0..1000 {
        let d = random_diagram_at(&cfg, idx).unwrap();
        if !is_fibered(&d) {
            continue;
        }
        fibered += 1;
        let want = seifert_determinant_sign(&d).unwrap().to_bigint();
        let got = match conway_polynomial(&d) {
            Ok(Expansion::Poly(p)) => p.leading_coeff().cloned(),
            _ => None,
        };
        if got.as_ref() != Some(&want) {
            return verdict(
                false,
                format!("idx {idx}: leading coefficient {got:?}, expected {want}"),
            );
        }
        let report = run_checks(&d)
            .into_iter()
            .find(|r| r.identity == "leading_coefficient")
            .unwrap();
        if report.outcome != Outcome::Pass {
            return verdict(false, format!("idx {idx}: {report}"));
        }
    }
    verdict(fibered > 0, format!("{fibered} fibered diagrams"))
}

fn random_factored(rng: &mut ChaCha8Rng) -> BinomialFactorization {
    let nvars = rng.gen_range(1..=3);
    let sign = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let mut f = BinomialFactorization::with_sign(nvars, sign);
    for _ in 0..rng.gen_range(0..=4) {
        let base: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
        if base.iter().all(|&x| x == 0) {
            continue;
        }
        let m = rng.gen_range(1..=2);
        f.push(ev(&base), m).unwrap();
        // a divisor of the factor just pushed: T^{kℓ} - T^{-kℓ} is divisible by T^ℓ - T^-ℓ
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(2..=3);
            let multiple: Vec<i64> = base.iter().map(|x| x * k).collect();
            f.push(ev(&multiple), 1).unwrap();
            f.push(ev(&base), -1).unwrap();
        }
    }
    if rng.gen_bool(0.3) {
        let e: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-2..=2)).collect();
        if e.iter().any(|&x| x != 0) {
            f.push(ev(&e), -1).unwrap();
        }
    }
    f
}

fn random_point(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<BigRational> {
    (0..nvars)
        .map(|_| {
            let mut num = rng.gen_range(-9i64..=9);
            if num == 0 {
                num = 1;
            }
            BigRational::new(num.into(), rng.gen_range(1i64..=9).into())
        })
        .collect()
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut forms, mut points) = (0, 0);
    for _ in 0..10_000 {
        if forms == 200 {
            break;
        }
        let f = random_factored(&mut rng);
        let expanded = match f.expand() {
            Ok(Expansion::Poly(p)) => p,
            Ok(Expansion::Zero) => continue,
            Err(LaurentError::NonExactDivision { .. }) => continue,
            Err(e) => return verdict(false, format!("{f}: {e}")),
        };
        forms += 1;
        let mut taken = 0;
        while taken < 5 {
            let x = random_point(&mut rng, f.nvars());
            let want = match f.eval(&x) {
                Ok(v) => v,
                Err(LaurentError::VanishingDenominator) => continue,
                Err(e) => return verdict(false, format!("{f}: {e}")),
            };
            let got = expanded.eval(&x).unwrap();
            if got != want {
                return verdict(false, format!("{f} at {x:?}: {got} != {want}"));
            }
            taken += 1;
            points += 1;
        }
    }
    verdict(forms == 200, format!("{forms} forms, {points} points"))
}

fn criterion_7() -> Verdict {
    let cfg = GeneratorConfig {
        seed: 77,
        ..suite_config()
    };
    for idx in 0..1000 {
        let d = random_diagram_at(&cfg, idx).unwrap();
        let src = serialize(&d);
        match parse(&src) {
            Ok(back) if back == d => {}
            _ => return verdict(false, format!("idx {idx}: parse(serialize(d)) != d")),
        }

        let potential = potential_factors(&d);
        let alexander = alexander_polynomial(&d);
        let mut env = OutputEnvelope::new("splice", "0.1.0", src.as_bytes());
        env.insert("potential", FactoredJson::from(&potential));
        if let Ok(a) = &alexander {
            env.insert(
                "alexander",
                ExpandedJson::from_expansion(a, d.component_count()),
            );
        }
        let json = env.to_json();
        let back = match OutputEnvelope::from_json(&json) {
            Ok(b) => b,
            Err(e) => return verdict(false, format!("idx {idx}: {e}")),
        };
        let same = back == env
            && back.to_json() == json
            && back.factored("potential") == Ok(Some(potential))
            && alexander
                .map(|a| back.expanded("alexander") == Ok(Some(a)))
                .unwrap_or(true);
        if !same {
            return verdict(false, format!("idx {idx}: envelope did not round-trip"));
        }
    }
    verdict(true, "1000 diagrams, DSL and JSON envelope")
}

type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "example conformance",
            criterion_1,
            Some(Duration::from_secs(10)),
        ),
        ("trefoil golden values", criterion_2, None),
        ("Hopf golden values", criterion_3, None),
        ("identity suite", criterion_4, Some(Duration::from_secs(60))),
        ("leading coefficient", criterion_5, None),
        ("algebra oracle", criterion_6, None),
        ("round trip", criterion_7, None),
    ];
    let mut all_ok = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = v.ok && in_time;
        all_ok &= ok;
        let budget = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "criterion {} {}: {name}: {} [{:.2}s{budget}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64()
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
