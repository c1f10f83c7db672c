//! One line per acceptance criterion. Criteria 1 to 11 must pass; criterion 12
//! is conjectural evidence and is reported without failing the run.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use apolar::apolarity::ann_graded;
use apolar::classification::Membership;
use apolar::divided_powers::monomials_of_degree;
use apolar::golden::{quotient_action, tab_expected, tab_map};
use apolar::random;
use apolar::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

const Q: Field = Field::Rationals;

fn e(x: Error) -> String {
    x.to_string()
}

fn dp(s: &str, n: usize) -> DPPoly {
    parse_poly(s, n, Q, Mode::DividedPower).unwrap()
}

macro_rules! ensure {
    ($c:expr, $($m:tt)*) => {
        if !$c {
            return Err(format!($($m)*));
        }
    };
}

fn c1() -> Outcome {
    let t = Instant::now();
    let r = golden_13331().map_err(e)?;
    let dims: Vec<usize> = r.normal_forms.iter().map(|c| c.tangent_dim).collect();
    ensure!(dims == [29, 28, 28, 27, 27, 26, 27, 26, 26, 25, 24], "dimensions {dims:?}");
    let s = t.elapsed().as_secs_f64();
    ensure!(s < 60.0, "took {s:.1} s");
    Ok(format!("dimensions {dims:?} in {s:.2} s"))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let cases: [(&str, &[&str]); 3] = [
        ("x^[4] + y^[4] + z^[4]", &["a*b*c"]),
        ("x^[3]*y + z^[4]", &["b^3", "b^2*c"]),
        ("x^[3]*y + x^[2]*z^[2]", &["b^2*c", "b^3", "a*b^2 - 2*b*c^2"]),
    ];
    for (src, ops) in cases {
        let got = perp_tangent(&dp(src, 3), true, 3).map_err(e)?;
        let v: Vec<Operator> = ops.iter().map(|s| parse_operator(s, 3, Q, 3).unwrap()).collect();
        let want = Basis::span_operators(Ambient::s(3, Q, 0, 3), &v).map_err(e)?;
        ensure!(got == want, "{src}: perp has dimension {}", got.dim());
    }
    let s = t.elapsed().as_secs_f64();
    ensure!(s < 5.0, "took {s:.1} s");
    Ok(format!("three perp spans equal in {s:.2} s"))
}

fn c3() -> Outcome {
    let (a, b) = (Q.from_i64(1), Q.from_i64(2));
    let m = quotient_action(&dp("x^[3]*y + x^[2]*z^[2]", 3), &tab_map(&a, &b)).map_err(e)?;
    let want: Vec<Vec<Scalar>> =
        [[64, 0, 0], [-192, 32, 0], [216, -72, 16]].iter().map(|r| r.iter().map(|&x| Q.from_i64(x)).collect()).collect();
    ensure!(m == want, "matrix {m:?}");
    ensure!(want == tab_expected(&a, &b).map_err(e)?, "closed form disagrees");
    Ok("[[64,0,0],[-192,32,0],[216,-72,16]] in basis y*y*y, y*y*z, y*z*z".into())
}

fn c4() -> Outcome {
    let h = |f: &DPPoly| hilbert_function(f).map(|h| h.values().to_vec()).map_err(e);
    ensure!(h(&dp("x^[3]*y", 2))? == [1, 2, 2, 2, 1], "x^[3]y");
    let all4: Vec<String> = monomials_of_degree(3, 4)
        .iter()
        .map(|m| format!("x^[{}]*y^[{}]*z^[{}]", m.exps()[0], m.exps()[1], m.exps()[2]))
        .collect();
    let fl = dp(&format!("x^[4] + y^[4] + z^[4] + {}", all4.join(" + ")), 3);
    ensure!(h(&fl)? == [1, 3, 4, 3, 1], "F_λ gives {:?}", h(&fl)?);
    for d in 3..=7u32 {
        let mut want = vec![1];
        want.extend(std::iter::repeat(2).take(d as usize - 1));
        want.push(1);
        ensure!(h(&dp(&format!("x^[{}]*y", d - 1), 2))? == want, "x^[{}]y", d - 1);
        ensure!(h(&dp(&format!("x^[{d}] + y^[{d}]"), 2))? == want, "x^[{d}] + y^[{d}]");
    }
    Ok("all Hilbert functions match".into())
}

fn random_compressed(n: usize, d: u32, rng: &mut ChaCha8Rng) -> Result<DPPoly> {
    loop {
        let f = &random::form(n, Q, d, rng) + &random::poly(n, Q, 0, d - 1, rng);
        if is_compressed(&f)? {
            return Ok(f);
        }
    }
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for (n, d) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
        for _ in 0..5 {
            let f = random_compressed(n, d, &mut rng).map_err(e)?;
            let (_, t) = t_compressed_normal_form(&f).map_err(e)?;
            ensure!(t.result == f.tdf(), "(n,d) = ({n},{d}): ended at {}", t.result);
            t.validate().map_err(e)?;
            ensure!(t.accumulated.apply(&f).map_err(e)? == f.tdf(), "replay differs");
            count += 1;
        }
    }
    for _ in 0..5 {
        let f = random_compressed(2, 5, &mut rng).map_err(e)?;
        let (_, t) = t_compressed_normal_form(&f).map_err(e)?;
        ensure!(t.result == f.part(4, 5), "(2,5): ended at {}", t.result);
        t.validate().map_err(e)?;
        count += 1;
    }
    Ok(format!("{count} compressed polynomials reduced and replayed"))
}

fn c6() -> Outcome {
    let r = golden_char2().map_err(e)?;
    Ok(format!(
        "H = {:?}, a^2 in perp, dim tangent {} < {}, orbit dimension refused",
        r.hilbert, r.tangent_dim, r.ambient_dim
    ))
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let form = dp("x^[5] + y^[5]", 2);
    for k in 0..10 {
        let g = random::unipotent_element(2, Q, 5, &mut rng).map_err(e)?;
        let f = g.apply(&form).map_err(e)?;
        match unip_orbit_membership(&form, &f).map_err(e)? {
            Membership::Yes(t) => t.validate().map_err(e)?,
            Membership::No { degree } => return Err(format!("sample {k} rejected at degree {degree}")),
        }
    }
    let no = unip_orbit_membership(&dp("x^[3]*y", 2), &dp("x^[3]*y + y^[3]", 2)).map_err(e)?;
    ensure!(no == Membership::No { degree: 3 }, "x^[3]y + y^[3] gave {no:?}");
    Ok("10 round trips accepted; x^[3]y + y^[3] rejected at degree 3".into())
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for lambda in [-3, 0, 1, 5] {
        let lam = Q.from_i64(lambda);
        let nf = &dp("x^[6] + x^[2]*y^[2]", 2) + &dp("y^[3]", 2).scale(&lam);
        let f = &nf + &random::poly(2, Q, 0, 2, &mut rng);
        let r = golden_1222111(&f).map_err(e)?;
        ensure!(r.lambda.as_ref() == Some(&lam), "λ = {lambda} came back as {:?}", r.lambda);
        ensure!(r.normal_form == nf, "normal form {}", r.normal_form);
        let sd = symmetric_decomposition(&f).map_err(e)?;
        ensure!(sd.delta(0) == [1, 1, 1, 1, 1, 1, 1], "Δ_0 = {:?}", sd.delta(0));
        ensure!(sd.delta(1) == [0; 6], "Δ_1 = {:?}", sd.delta(1));
        ensure!(sd.delta(2) == [0, 1, 1, 1, 0], "Δ_2 = {:?}", sd.delta(2));
        ensure!(sd.delta(3) == [0; 4] && sd.delta(4) == [0; 3], "Δ_3 or Δ_4 nonzero");
    }
    Ok("λ recovered for λ in {-3, 0, 1, 5}; Δ_0 = (1,1,1,1,1,1,1), Δ_2 = (0,1,1,1,0)".into())
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut gaps = Vec::new();
    while done < 5 {
        let form = random::form(2, Q, 9, &mut rng);
        if !ann_graded(&form, 1).map_err(e)?.is_zero() {
            continue;
        }
        let tp = perp_tangent(&form, false, 8).map_err(e)?.project(8, 8).dim();
        let sq = ideal_square_graded(&form, 8).map_err(e)?.dim();
        ensure!(tp > sq, "perp {tp} vs I^2 {sq}");
        ensure!(!dense_orbit_test(&form).map_err(e)?, "dense orbit test returned true");
        gaps.push(format!("{tp}>{sq}"));
        done += 1;
    }
    Ok(format!("dim perp_8 > dim (I^2)_8 for 5 forms: {}", gaps.join(", ")))
}

fn c10() -> Outcome {
    for n in 1..=10u64 {
        for d in 2..=12u64 {
            let listed = d <= 4 || (d == 5 && n <= 6) || (d == 6 && n == 2) || n == 1;
            ensure!(cangrad_pair_filter(n, d) == listed, "(n,d) = ({n},{d})");
        }
    }
    Ok("110 pairs match the list".into())
}

fn c11() -> Outcome {
    const CASES: u64 = 1000;
    let mut parts = Vec::new();
    for (name, check) in common::PROPERTIES {
        for field in [Q, Field::Prime(101)] {
            for seed in 0..CASES {
                let mut rng = ChaCha8Rng::seed_from_u64(seed * 7919 + 11);
                check(field, &mut rng).map_err(|m| format!("{name} over {field}, seed {seed}: {m}"))?;
            }
        }
        parts.push(name);
    }
    Ok(format!("{CASES} cases over q and fp:101 each: {}", parts.join(", ")))
}

fn c12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut lines = Vec::new();
    let mut all = true;
    for (n, d) in [(2, 6), (3, 5), (4, 5)] {
        let form = random::form(n, Q, d, &mut rng);
        let ok = dense_orbit_test(&form).map_err(e)?;
        all &= ok;
        lines.push(format!("(n,d)=({n},{d}): {ok}"));
    }
    let text = lines.join("; ");
    if all {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "(1,3,3,3,1) tangent dimensions", c1),
        (2, "perp bases of F1, F2, F3", c2),
        (3, "t_{a,b} matrix at (1,2)", c3),
        (4, "Hilbert functions", c4),
        (5, "compressed reduction", c5),
        (6, "characteristic two counterexample", c6),
        (7, "unipotent orbit membership", c7),
        (8, "(1,2,2,2,1,1,1) normal form", c8),
        (9, "large degree obstruction", c9),
        (10, "inequality filter", c10),
        (11, "property suites", c11),
        (12, "dense orbit evidence (conjectural)", c12),
    ];
    let mut failed = 0;
    for (num, name, run) in criteria {
        let t = Instant::now();
        let out = run();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {num:>2} PASS  {name}: {msg} [{secs:.1} s]"),
            Err(msg) if num == 12 => println!("criterion {num:>2} FINDING  {name}: {msg} [{secs:.1} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {num:>2} FAIL  {name}: {msg} [{secs:.1} s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
