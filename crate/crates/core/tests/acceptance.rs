//! Acceptance criteria. Every criterion is an exact comparison; one
//! PASS/FAIL line is printed per criterion (run with `--nocapture` to see them).

use std::time::Instant;

use squiral::complexity::Oracle;
use squiral::pattern::{enumerate_windows, set_equals};
use squiral::sequences::{
    closed_form_a, closed_form_params, SimplifiedRecursion, TripleRecursion, INITIAL_A, INITIAL_B,
    INITIAL_C,
};
use squiral::supertile;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Oracle) -> Outcome);

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn table1_brute(oracle: &Oracle) -> Outcome {
    for n in 1..=10u64 {
        let t = oracle.brute_force_triple(n).map_err(|e| e.to_string())?;
        let i = n as usize - 1;
        let want = (INITIAL_A[i], INITIAL_B[i], INITIAL_C[i]);
        if (t.a, t.b, t.c) != want {
            return Err(format!("n={n}: got {:?}, want {want:?}", (t.a, t.b, t.c)));
        }
    }
    // the constants themselves, as published
    check(
        INITIAL_A == [2, 14, 70, 126, 270, 438, 630, 790, 958, 1134]
            && INITIAL_B == [4, 36, 96, 192, 348, 528, 708, 872, 1044, 1332]
            && INITIAL_C == INITIAL_B,
        "n = 1..10 match exactly",
        "constant table differs from the published values",
    )
}

fn closed_form_table(_: &Oracle) -> Outcome {
    for n in 1..=10u64 {
        let v = closed_form_a(n).map_err(|e| e.to_string())?;
        if v != INITIAL_A[n as usize - 1] {
            return Err(format!("n={n}: closed form {v}"));
        }
    }
    Ok("n = 1..10 (1..3 fixed, 4..10 by formula)".into())
}

fn three_way(_: &Oracle) -> Outcome {
    let mut rec = TripleRecursion::new();
    let mut simp = SimplifiedRecursion::new();
    for n in 1..=100_000u64 {
        let r = rec.triple(n).map_err(|e| e.to_string())?.a;
        let s = simp.a(n).map_err(|e| e.to_string())?;
        let c = closed_form_a(n).map_err(|e| e.to_string())?;
        if !(r == s && s == c) {
            return Err(format!("n={n}: recursion {r} simplified {s} closed {c}"));
        }
    }
    Ok("1 <= n <= 100000".into())
}

fn oracle_beyond_table(oracle: &Oracle) -> Outcome {
    let mut rec = TripleRecursion::new();
    for n in 11..=25u64 {
        let b = oracle.brute_force_triple(n).map_err(|e| e.to_string())?;
        let r = rec.triple(n).map_err(|e| e.to_string())?;
        if b != r {
            return Err(format!("n={n}: brute {b:?} recursion {r:?}"));
        }
    }
    let mut stretch = 25;
    for n in 26..=40u64 {
        match oracle.brute_force_triple(n) {
            Ok(b) if b == rec.triple(n).unwrap() => stretch = n,
            Ok(b) => return Err(format!("n={n}: brute {b:?} disagrees with recursion")),
            Err(e) => {
                println!("    stretch stopped at n={n}: {e}");
                break;
            }
        }
    }
    Ok(format!("11 <= n <= 25, stretch reached n = {stretch}"))
}

fn plateau_certificates(_: &Oracle) -> Outcome {
    let sets = |h: usize, a: u32, b: u32| {
        let x = enumerate_windows(&supertile(a).unwrap(), h, h).unwrap();
        let y = enumerate_windows(&supertile(b).unwrap(), h, h).unwrap();
        (x, y)
    };
    let (t2, t3) = sets(2, 2, 3);
    let (t3b, t4) = sets(4, 3, 4);
    check(
        set_equals(&t2, &t3) && t2.len() == 14 && set_equals(&t3b, &t4) && t3b.len() == 126,
        "P(T_2,2x2)=P(T_3,2x2) [14], P(T_3,4x4)=P(T_4,4x4) [126]",
        format!(
            "2x2: {} / {}, 4x4: {} / {}",
            t2.len(),
            t3.len(),
            t3b.len(),
            t4.len()
        ),
    )
}

fn partition(oracle: &Oracle) -> Outcome {
    let r = oracle.verify_partition(4, 4).map_err(|e| e.to_string())?;
    if !(r.holds() && r.class_sizes == [14; 9] && r.total == 126) {
        return Err(format!("4x4: {r:?}"));
    }
    let mut seen = Vec::new();
    for (h, w) in [(5, 5), (4, 5)] {
        let r = oracle.verify_partition(h, w).map_err(|e| e.to_string())?;
        if !r.holds() || r.class_sizes.iter().sum::<usize>() != r.total {
            return Err(format!("{h}x{w}: {r:?}"));
        }
        seen.push(format!("{h}x{w}: {:?} = {}", r.class_sizes, r.total));
    }
    Ok(format!("4x4: 9 x 14 = 126; {}", seen.join("; ")))
}

fn extension(oracle: &Oracle) -> Outcome {
    let p33 = oracle
        .phase_class_via_mu(5, 5, 3, 3)
        .map_err(|e| e.to_string())?
        .len();
    let p11 = oracle
        .phase_class_via_mu(9, 9, 1, 1)
        .map_err(|e| e.to_string())?
        .len();
    if p33 != p11 {
        return Err(format!("|P_33(5x5)| = {p33}, |P_11(9x9)| = {p11}"));
    }
    let mut cases: Vec<_> = (1..=3)
        .flat_map(|i| (1..=3).map(move |j| (0, 0, i, j)))
        .collect();
    cases.push((1, 1, 3, 3));
    for (s, t, i, j) in cases {
        let r = oracle
            .verify_extension(s, t, i, j)
            .map_err(|e| e.to_string())?;
        if !r.holds() {
            return Err(format!("s={s} t={t} i={i} j={j}: {r:?}"));
        }
    }
    Ok(format!(
        "|P_33(5x5)| = |P_11(9x9)| = {p33}; all (i,j) at s=t=0 and (3,3) at s=t=1"
    ))
}

fn b_equals_c(oracle: &Oracle) -> Outcome {
    for n in 1..=12u64 {
        let t = oracle.brute_force_triple(n).map_err(|e| e.to_string())?;
        if t.b != t.c {
            return Err(format!("brute n={n}: B={} C={}", t.b, t.c));
        }
    }
    let mut rec = TripleRecursion::new();
    for n in 1..=100_000u64 {
        let t = rec.triple(n).map_err(|e| e.to_string())?;
        if t.b != t.c {
            return Err(format!("recursion n={n}: B={} C={}", t.b, t.c));
        }
    }
    Ok("brute n <= 12, recursion n <= 100000".into())
}

fn float_regression(_: &Oracle) -> Outcome {
    let p = closed_form_params(245).map_err(|e| e.to_string())?;
    let closed = closed_form_a(245).map_err(|e| e.to_string())?;
    let rec = TripleRecursion::new()
        .triple(245)
        .map_err(|e| e.to_string())?
        .a;
    let float_alpha = ((243f64).ln() / (3f64).ln()).floor() as u32;
    check(
        p.alpha == 5 && closed == rec && float_alpha == 4,
        format!("alpha = 5 (double-precision log gives {float_alpha}), A_245 = {closed}"),
        format!("alpha={} closed={closed} recursion={rec}", p.alpha),
    )
}

fn phase_constructions(oracle: &Oracle) -> Outcome {
    for (h, w) in [(4, 4), (5, 5), (4, 5)] {
        for i in 1..=3 {
            for j in 1..=3 {
                let mu = oracle
                    .phase_class_via_mu(h, w, i, j)
                    .map_err(|e| e.to_string())?;
                let pos = oracle
                    .phase_class_by_position(h, w, i, j)
                    .map_err(|e| e.to_string())?;
                if !set_equals(&mu, &pos) {
                    return Err(format!(
                        "{h}x{w} phase ({i},{j}): {} vs {}",
                        mu.len(),
                        pos.len()
                    ));
                }
            }
        }
    }
    Ok("4x4, 5x5, 4x5 for all nine phases".into())
}

#[test]
fn acceptance_criteria() {
    let oracle = Oracle::default();
    let criteria: [Criterion; 10] = [
        ("1 initial columns by brute force", table1_brute),
        ("2 closed form vs initial columns", closed_form_table),
        ("3 three-way sequence agreement", three_way),
        (
            "4 brute force vs recursion beyond n = 10",
            oracle_beyond_table,
        ),
        ("5 plateau certificates", plateau_certificates),
        ("6 phase partition", partition),
        ("7 extension", extension),
        ("8 B = C", b_equals_c),
        ("9 floating-point regression", float_regression),
        ("10 phase-class constructions agree", phase_constructions),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&oracle);
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} ({secs:.2}s)"),
            Err(msg) => {
                println!("FAIL  criterion {name}: {msg} ({secs:.2}s)");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
