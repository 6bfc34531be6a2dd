//! End-to-end acceptance checks, one output line per criterion. Runs without
//! the libtest harness so the lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use qtangent::closedform::{
    closed_form_series, dual_series, dual_vector, pair_residual, search_pairs, tan_from_vector,
    ExponentVector, SearchBox, DUAL_TABLE, PAIR_TABLE,
};
use qtangent::contfrac::{
    closed_continuants, continuants, convergent, dual_schedule_residuals, extract_cf, CfSchedule,
    ClosedContinuants, ScheduleName,
};
use qtangent::divisibility::{
    big_t_all, divide_by_products, gauss_ratio, mixed_product, tanrec_residual_from, MixedKind,
    DIVISIBLE_VECTORS,
};
use qtangent::oracle::{classical_probability, count_alternating_permutations, oracle_compare};
use qtangent::qalg::{verify_product_formula, QRat, ZSeries};
use qtangent::updown::{recursion_series, tau, Kind, Variant};

// Every comparison below is exact; the only tolerances are orders and ranges.
const PAIR_ORDER: usize = 12;
const TAN_ORDER: usize = 13;
const SEC_ORDER: usize = 12;
const ORACLE_GRID: [(usize, usize); 2] = [(7, 8), (5, 14)];
const LIMIT_MAX_N: usize = 9;
const CF_MAX_DEPTH: usize = 6;
const CLOSED_CONTINUANT_MAX_N: usize = 8;
const CONJ_DEPTH: usize = 6;
const DIVISIBILITY_MAX_N: usize = 8;
const PRODUCT_FORMULA_MAX_N: usize = 12;

const fn ev(a: i64, b: i64, c: i64, d: i64) -> ExponentVector {
    ExponentVector { a, b, c, d }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(id: &str, title: &str, start: Instant, o: &Outcome) {
    println!(
        "criterion {id} [{title}]: {} ({}; {:.2}s)",
        if o.ok { "PASS" } else { "FAIL" },
        o.detail,
        start.elapsed().as_secs_f64()
    );
}

fn pair_classification() -> Outcome {
    let bx = SearchBox::new((-2, 4), (-3, 3), (-2, 4), (-3, 3));
    let found = search_pairs(&bx, PAIR_ORDER);
    let mut expected = PAIR_TABLE.to_vec();
    expected.sort();
    Outcome {
        ok: found == expected,
        detail: format!(
            "{} of {} candidates survive, expected {}",
            found.len(),
            bx.len(),
            expected.len()
        ),
    }
}

fn recursion_vs_closed_form() -> Outcome {
    let mut bad = Vec::new();
    for v in Variant::all() {
        let order = if v.kind() == Kind::Tangent {
            TAN_ORDER
        } else {
            SEC_ORDER
        };
        let rec = recursion_series(v, order);
        if closed_form_series(v, order)
            .map(|c| c != rec)
            .unwrap_or(true)
        {
            bad.push(v.to_string());
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("10 variants, mismatches: {bad:?}"),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for (max_n, m) in ORACLE_GRID {
        for v in Variant::all() {
            for n in (1..=max_n).filter(|&n| v.admits_length(n)) {
                checks += 1;
                match oracle_compare(v, n, m) {
                    Ok(r) if r.is_zero() => {}
                    _ => bad.push(format!("{v} n={n} M={m}")),
                }
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("{checks} residuals, nonzero: {bad:?}"),
    }
}

fn classical_limit() -> Outcome {
    let mut bad = Vec::new();
    let counts: Vec<u64> = (1..=LIMIT_MAX_N)
        .map(count_alternating_permutations)
        .collect();
    for v in Variant::all() {
        for n in (1..=LIMIT_MAX_N).filter(|&n| v.admits_length(n)) {
            let limit = tau(v, n).ok().and_then(|t| t.value.eval_at_q1().ok());
            let want = classical_probability(n);
            if limit
                .map(|l| QRat::from_rational(&l) != want)
                .unwrap_or(true)
            {
                bad.push(format!("{v} n={n}"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("counts {counts:?}, mismatches: {bad:?}"),
    }
}

fn first_difference(a: &ZSeries, b: &ZSeries) -> Option<usize> {
    (a - b).first_nonzero()
}

fn proven_fractions() -> Outcome {
    let order = 2 * CF_MAX_DEPTH + 3;
    let mut bad = Vec::new();
    for name in ScheduleName::PROVEN {
        let s = CfSchedule::named(name);
        let t = tan_from_vector(name.vector(), order).expect("cosine has unit constant term");
        for n in 1..=CF_MAX_DEPTH {
            let c = convergent(&s, n, order).expect("q_n(0) is nonzero");
            if first_difference(&c, &t).is_some_and(|k| k < 2 * n + 1) {
                bad.push(format!("{name} depth {n}"));
            }
        }
    }
    for (closed, name) in [
        (ClosedContinuants::Thm1, ScheduleName::Thm1),
        (ClosedContinuants::Thm0101, ScheduleName::Thm0101),
    ] {
        for n in 1..=CLOSED_CONTINUANT_MAX_N {
            if closed_continuants(closed, n) != continuants(&CfSchedule::named(name), n) {
                bad.push(format!("closed continuants {name} n={n}"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("4 schedules to depth {CF_MAX_DEPTH}, failures: {bad:?}"),
    }
}

fn exponents(t: &ZSeries) -> Option<Vec<i64>> {
    extract_cf(t, CONJ_DEPTH).ok()?.ansatz_exponents()
}

fn conjecture_evidence() -> (Outcome, Outcome) {
    let order = 2 * CONJ_DEPTH + 1;
    let t1010 = tan_from_vector(ev(1, 0, 1, 0), order).unwrap();
    let t1111 = tan_from_vector(ev(1, 1, 1, -1), order).unwrap();
    let e1010 = exponents(&t1010);
    let e1111 = exponents(&t1111);
    let want1010 = vec![0, -2, 1, -9, 6, -20];
    let want1111 = vec![0, 0, -5, 3, -14, 10];
    let direct = e1010.as_ref() == Some(&want1010) && e1111.as_ref() == Some(&want1111);

    // corollary: q -> 1/q carries the first expansion onto the second
    let schedule_map = dual_schedule_residuals(
        &CfSchedule::named(ScheduleName::Conj1010),
        &CfSchedule::named(ScheduleName::Conj1111),
        CONJ_DEPTH,
    )
    .iter()
    .all(QRat::is_zero);
    let series_map = exponents(&dual_series(&t1010)).as_ref() == Some(&want1111);
    let main = Outcome {
        ok: direct && schedule_map && series_map,
        detail: format!(
            "e(1,0,1,0) = {e1010:?}, e(1,1,1,-1) = {e1111:?}, q->1/q maps schedules: {}",
            schedule_map && series_map
        ),
    };

    // the literal half-power scaling route
    let scaled: Vec<_> = [1, -1]
        .into_iter()
        .map(|d| {
            (
                d,
                t1010
                    .scale_arg_half_power(d)
                    .ok()
                    .and_then(|s| exponents(&s)),
            )
        })
        .collect();
    let hits = scaled.iter().any(|(_, e)| e.as_ref() == Some(&want1111));
    let literal = Outcome {
        ok: hits,
        detail: format!("scaling (1,0,1,0) by q^(+-1/2) gives {scaled:?}"),
    };
    (main, literal)
}

fn divisibility() -> Outcome {
    let mut bad = Vec::new();
    for v in DIVISIBLE_VECTORS {
        match big_t_all(v, DIVISIBILITY_MAX_N) {
            Ok(ts) => {
                for t in &ts {
                    if divide_by_products(t).is_err() {
                        bad.push(format!("{v} n={}", t.n));
                    }
                }
                if v == ev(1, 0, 1, 0) {
                    for n in 1..=DIVISIBILITY_MAX_N {
                        if !tanrec_residual_from(&ts, n)
                            .map(|r| r.is_zero())
                            .unwrap_or(false)
                        {
                            bad.push(format!("tanrec n={n}"));
                        }
                    }
                }
            }
            Err(e) => bad.push(format!("{v}: {e}")),
        }
    }
    for kind in MixedKind::ALL {
        for n in kind.min_n()..=DIVISIBILITY_MAX_N {
            if !mixed_product(kind, n).residual.is_zero() {
                bad.push(format!("{} n={n}", kind.name()));
            }
        }
    }
    for n in 1..=DIVISIBILITY_MAX_N {
        for k in 1..=n {
            if gauss_ratio(n, k).is_err() {
                bad.push(format!("gauss_ratio({n},{k})"));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("6 vectors, n <= {DIVISIBILITY_MAX_N}, failures: {bad:?}"),
    }
}

fn identity_kernel() -> Outcome {
    let mut bad = Vec::new();
    for n in 0..=PRODUCT_FORMULA_MAX_N {
        let points = [
            QRat::one(),
            QRat::from_int(-3),
            QRat::q(),
            "1 + q / 2 - q^2".parse::<QRat>().unwrap(),
            -QRat::q_pow(-(n as i64)),
        ];
        for (i, z) in points.iter().enumerate() {
            if !verify_product_formula(n, z).is_zero() {
                bad.push(format!("product formula n={n} point {i}"));
            }
        }
    }
    for v in PAIR_TABLE {
        if !pair_residual(v, PAIR_ORDER).is_zero() {
            bad.push(format!("pair {v}"));
        }
    }
    // dual pairs, listed independently of DUAL_TABLE
    let table2 = [
        (ev(0, 0, 0, 0), ev(2, 1, 2, -1)),
        (ev(2, 1, 0, 0), ev(0, 0, 2, -1)),
        (ev(0, 1, 0, 1), ev(2, 0, 2, -2)),
        (ev(2, 0, 0, 1), ev(0, 1, 2, -2)),
        (ev(1, 0, 1, 0), ev(1, 1, 1, -1)),
        (ev(1, 1, 1, 0), ev(1, 0, 1, -1)),
    ];
    if DUAL_TABLE != table2 {
        bad.push("dual table constant".into());
    }
    for (a, b) in table2 {
        if dual_vector(a) != b || dual_vector(b) != a {
            bad.push(format!("dual {a} <-> {b}"));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("failures: {bad:?}"),
    }
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    let run = |failed: &mut Vec<String>, id: &str, title: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        report(id, title, start, &o);
        if !o.ok {
            failed.push(id.to_string());
        }
    };
    run(
        &mut failed,
        "1",
        "pair classification",
        &pair_classification,
    );
    run(
        &mut failed,
        "2",
        "recursion equals closed form",
        &recursion_vs_closed_form,
    );
    run(&mut failed, "3", "oracle equivalence", &oracle_equivalence);
    run(&mut failed, "4", "classical limit", &classical_limit);
    run(
        &mut failed,
        "5",
        "proven continued fractions",
        &proven_fractions,
    );

    let start = Instant::now();
    let (main, literal) = conjecture_evidence();
    report("6", "conjectural continued fractions", start, &main);
    if !main.ok {
        failed.push("6".into());
    }
    // Not asserted: half-power scaling relates (1,0,1,0) to (1,1,1,1), not to
    // (1,1,1,-1). The line is printed so the outcome stays visible.
    report(
        "6-scaling",
        "half-power scaling maps the schedules",
        start,
        &literal,
    );

    run(&mut failed, "7", "divisibility", &divisibility);
    run(&mut failed, "8", "identity kernel", &identity_kernel);
    if failed.is_empty() {
        println!("acceptance: all asserted criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
