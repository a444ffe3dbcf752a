//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every number below is recomputed from scratch by brute force or
//! by an oracle written here, independently of the library routine under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use agcode::bezout_code::bezout_code;
use agcode::bipoly::BiPoly;
use agcode::curve_algebra::{curve_family_a, curve_family_b, AlgebraElement, Curve};
use agcode::evaluation_code::{eval_code, eval_dimensions, evaluate, rational_points};
use agcode::gf::FieldSpec;
use agcode::harness::{parse_spec, report, run_channel_experiment, ReportOptions};
use agcode::linear::{min_weight_of_span, weight, DEFAULT_BUDGET};
use agcode::order_bound::{
    nu_pairs, order_bound_d, order_bound_dphi, random_layer_vector, staircase_holds,
    syndrome_matrix,
};
use agcode::reed_solomon::RsCode;
use agcode::semigroup::{frobenius_two_gen, NumericalSemigroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(p: u32, r: u32) -> FieldSpec {
    FieldSpec::new(p, r, None).unwrap()
}

fn hermitian() -> Curve {
    let f = gf(2, 2);
    curve_family_a(&f, 3, BiPoly::y(&f)).unwrap()
}

/// The three algebras of the axiom checks: family A over GF(4), family B
/// over GF(5) and GF(7), all with m = 3.
fn algebras() -> Vec<(&'static str, Curve)> {
    vec![
        ("A/GF(4) x^3+y^2+y", hermitian()),
        (
            "B/GF(5) y^2=x^3+1",
            curve_family_b(&gf(5, 1), &[1, 0, 0, 1]).unwrap(),
        ),
        (
            "B/GF(7) y^2=x^3+x+3",
            curve_family_b(&gf(7, 1), &[3, 1, 0, 1]).unwrap(),
        ),
    ]
}

/// An element whose heaviest monomial has weight exactly `w`.
fn element_of_weight(curve: &Curve, rng: &mut ChaCha8Rng, w: u64) -> AlgebraElement {
    let f = curve.field();
    let base = curve.random_element(rng, w.saturating_sub(1));
    let base = if w == 0 { curve.constant(0) } else { base };
    let top = curve
        .monomial(curve.basis_monomial(w).unwrap())
        .scale(rng.random_range(1..f.q()));
    base.add(&top).unwrap()
}

fn random_weight(curve: &Curve, rng: &mut ChaCha8Rng, max: u64) -> u64 {
    let elems = curve.semigroup().elements_up_to(max);
    elems[rng.random_range(0..elems.len())]
}

// 1 ---------------------------------------------------------------------

fn rs_mds() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)] {
        let f = gf(p, r);
        let q = f.q() as usize;
        for k in 1..=q {
            if (q as u128).pow(k as u32) > 1 << 20 {
                break;
            }
            let rs = RsCode::new(&f, k).unwrap();
            let d = rs
                .min_distance_bruteforce(1 << 20)
                .map_err(|e| e.to_string())?;
            ensure(d == q - k + 1, || {
                format!("q={q} k={k}: d={d}, expected {}", q - k + 1)
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:.1?}, limit 30 s")
    })?;
    Ok(format!("{checked} codes have d = q-k+1 ({elapsed:.1?})"))
}

// 2 ---------------------------------------------------------------------

/// Membership of `i·a + j·b` for every integer up to `ab`, by listing sums.
fn two_gen_oracle(a: u64, b: u64) -> (u64, u64, u64, bool) {
    let bound = a * b;
    let mut member = vec![false; bound as usize + 1];
    for i in 0..=b {
        for j in 0..=a {
            let v = i * a + j * b;
            if v <= bound {
                member[v as usize] = true;
            }
        }
    }
    let gaps: Vec<u64> = (0..=bound).filter(|&x| !member[x as usize]).collect();
    let frob = *gaps.last().unwrap();
    let c = frob + 1;
    let g = gaps.len() as u64;
    let symmetric = (0..c).all(|s| member[s as usize] != member[(c - 1 - s) as usize]);
    (frob, c, g, symmetric)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn semigroups() -> Outcome {
    let mut pairs = 0;
    for a in 2..=12u64 {
        for b in a + 1..=12 {
            if gcd(a, b) != 1 {
                continue;
            }
            let (frob, c, g, symmetric) = two_gen_oracle(a, b);
            let expect = (a * b - a - b, (a - 1) * (b - 1), (a - 1) * (b - 1) / 2);
            ensure((frob, c, g) == expect, || {
                format!("<{a},{b}>: oracle {:?} vs formula {expect:?}", (frob, c, g))
            })?;
            ensure(frobenius_two_gen(a, b) == Ok(expect), || {
                format!("<{a},{b}>: frobenius_two_gen disagrees")
            })?;
            let sg = NumericalSemigroup::new(&[a, b]).unwrap();
            ensure(
                (sg.frobenius(), sg.conductor(), sg.genus()) == (Some(frob), c, g),
                || {
                    format!(
                        "<{a},{b}>: semigroup reports {:?}",
                        (sg.frobenius(), sg.conductor(), sg.genus())
                    )
                },
            )?;
            ensure(symmetric && sg.is_symmetric(), || {
                format!("<{a},{b}> not symmetric")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} coprime pairs match Frobenius, conductor, genus, symmetry"
    ))
}

// 3 ---------------------------------------------------------------------

fn weight_axioms() -> Outcome {
    const TRIALS: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, curve) in algebras() {
        let fld = curve.field().clone();
        for t in 0..TRIALS {
            let fail = |axiom: u32| format!("{name}, trial {t}: axiom {axiom}");
            let wf = random_weight(&curve, &mut rng, 12);
            let f = element_of_weight(&curve, &mut rng, wf);
            // half the time g shares f's weight, so axiom 5 gets exercised
            let wg = if t % 2 == 0 {
                wf
            } else {
                random_weight(&curve, &mut rng, 12)
            };
            let g = element_of_weight(&curve, &mut rng, wg);
            let wh = random_weight(&curve, &mut rng, 8);
            let h = element_of_weight(&curve, &mut rng, wh);
            ensure(
                curve.constant(0).weight().is_none() && f.weight() == Some(wf),
                || fail(1),
            )?;
            let lam = rng.random_range(1..fld.q());
            ensure(f.scale(lam).weight() == f.weight(), || fail(2))?;
            let sum = f.add(&g).unwrap();
            ensure(sum.weight() <= f.weight().max(g.weight()), || fail(3))?;
            ensure(wf == wg || sum.weight() == Some(wf.max(wg)), || fail(3))?;
            let (lo, hi) = if wf < wg { (&f, &g) } else { (&g, &f) };
            ensure(
                wf == wg || lo.mul(&h).unwrap().weight() < hi.mul(&h).unwrap().weight(),
                || fail(4),
            )?;
            if wf == wg {
                let good: Vec<u32> = (1..fld.q())
                    .filter(|&c| f.sub(&g.scale(c)).unwrap().weight() < g.weight())
                    .collect();
                ensure(good.len() == 1, || fail(5))?;
            }
            ensure(f.mul(&g).unwrap().weight() == Some(wf + wg), || fail(6))?;
        }
    }
    Ok(format!(
        "{} randomized trials per algebra, 3 algebras, all weight axioms hold",
        TRIALS
    ))
}

// 4 ---------------------------------------------------------------------

fn hermitian_pipeline() -> Outcome {
    let start = Instant::now();
    let curve = hermitian();
    let f = curve.field().clone();
    let oracle: Vec<(u32, u32)> = (0..4)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .filter(|&(x, y)| f.add(f.pow(x, 3), f.add(f.mul(y, y), y)) == 0)
        .collect();
    let pts = rational_points(&curve).unwrap();
    ensure(pts.len() == 8 && pts.points() == oracle.as_slice(), || {
        format!("{} points", pts.len())
    })?;
    let n = pts.len();
    let g = curve.semigroup().genus() as i64;
    ensure(g == 1, || format!("genus {g}"))?;
    let mut ls = 0;
    for l in 1.. {
        let rho = curve.semigroup().nth(l) as usize;
        if rho >= n {
            break;
        }
        let ec = eval_code(&curve, &pts, l).unwrap();
        ensure(ec.rank() == l, || format!("dim E_{l} = {}", ec.rank()))?;
        let d = min_weight_of_span(ec.generator(), 1 << 20)
            .map_err(|e| e.to_string())?
            .unwrap();
        ensure(d >= n - rho, || format!("d(E_{l}) = {d} < {}", n - rho))?;
        ensure(d as i64 >= n as i64 + 1 - l as i64 - g, || {
            format!("d(E_{l}) = {d} below genus bound")
        })?;
        ls += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.1?}, limit 60 s")
    })?;
    Ok(format!(
        "8 points; l = 1..{ls}: dim E_l = l, d >= 8 - rho_l, d >= n+1-k-g ({elapsed:.1?})"
    ))
}

// 5 ---------------------------------------------------------------------

fn order_bound_chain() -> Outcome {
    let curve = hermitian();
    let pts = rational_points(&curve).unwrap();
    let n = pts.len();
    let sg = curve.semigroup();
    let horizon = 20;
    let dims = eval_dimensions(&pts, horizon + 1);
    let mut rows = Vec::new();
    for l in 1..=horizon {
        let dim_c = n - dims[l - 1];
        if dim_c == 0 || 4u128.pow(dim_c as u32) > 1 << 20 {
            continue;
        }
        let ec = eval_code(&curve, &pts, l).unwrap();
        let dc = min_weight_of_span(&ec.dual_basis(), 1 << 20)
            .map_err(|e| e.to_string())?
            .unwrap() as u64;
        let d = order_bound_d(sg, l, horizon).map_err(|e| e.to_string())?;
        let dphi = order_bound_dphi(sg, &dims, n, l, horizon)
            .map_err(|e| e.to_string())?
            .unwrap();
        ensure(dc >= dphi && dphi >= d, || {
            format!("l={l}: d(C_l)={dc}, d_phi={dphi}, d={d}")
        })?;
        rows.push(format!("{l}:{dc}>={dphi}>={d}"));
    }
    Ok(format!("d(C_l) >= d_phi >= d for l:{}", rows.join(" ")))
}

// 6 ---------------------------------------------------------------------

fn rank_lemma() -> Outcome {
    let curve = hermitian();
    let pts = rational_points(&curve).unwrap();
    let n = pts.len();
    let q = curve.field().q();
    let height = eval_dimensions(&pts, 4 * n)
        .iter()
        .position(|&d| d == n)
        .unwrap()
        + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..500 {
        let y: Vec<u32> = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    0
                } else {
                    rng.random_range(0..q)
                }
            })
            .collect();
        let s = syndrome_matrix(&y, &pts, height).unwrap();
        ensure(s.rank() == weight(&y), || {
            format!("trial {t}: rank {} vs weight {}", s.rank(), weight(&y))
        })?;
    }
    let mut layers = 0;
    for l in 1..=height {
        for _ in 0..20 {
            let Some(y) = random_layer_vector(&pts, l, &mut rng) else {
                break;
            };
            let s = syndrome_matrix(&y, &pts, l + 1).unwrap();
            ensure(staircase_holds(&s, &nu_pairs(curve.semigroup(), l)), || {
                format!("staircase fails at l={l}")
            })?;
        }
        if random_layer_vector(&pts, l, &mut rng).is_some() {
            layers += 1;
        }
    }
    Ok(format!(
        "500 random y with rank S(y) = w(y) (N = {height}); staircase holds on {layers} layers"
    ))
}

// 7 ---------------------------------------------------------------------

fn quotient_dimensions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, curve) in algebras() {
        for _ in 0..20 {
            let w = random_weight(&curve, &mut rng, 12);
            let f = element_of_weight(&curve, &mut rng, w);
            let dim = curve.quotient_dimension(&f).map_err(|e| e.to_string())?;
            ensure(dim as u64 == w, || {
                format!("{name}: dim R/<{}> = {dim}, weight {w}", f.poly())
            })?;
        }
    }
    Ok("20 elements per algebra, 3 algebras: dim R/<f> = rho(f)".into())
}

// 8 ---------------------------------------------------------------------

fn zero_count() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tight = 0;
    for (name, curve) in algebras() {
        let pts = rational_points(&curve).unwrap();
        let n = pts.len() as u64;
        let fld = curve.field().clone();
        for t in 0..SAMPLES {
            // odd trials are products of x - a, which pile up zeros
            let f = if t % 2 == 0 {
                let w = random_weight(&curve, &mut rng, n + 4);
                element_of_weight(&curve, &mut rng, w)
            } else {
                let mut p = curve.constant(1);
                for _ in 0..rng.random_range(1..=3) {
                    let a = rng.random_range(0..fld.q());
                    let lin = BiPoly::x(&fld).sub(&BiPoly::constant(&fld, a)).unwrap();
                    p = p.mul(&curve.reduce(&lin).unwrap()).unwrap();
                }
                p
            };
            let zeros = evaluate(&f, &pts)
                .unwrap()
                .iter()
                .filter(|&&v| v == 0)
                .count() as u64;
            let w = f.weight().unwrap();
            ensure(zeros <= w, || {
                format!("{name}: {} has {zeros} zeros, weight {w}", f.poly())
            })?;
            tight += u64::from(zeros == w);
        }
    }
    Ok(format!(
        "{} nonzero elements per curve, 3 curves, zeros <= rho(f) ({tight} tight)",
        SAMPLES
    ))
}

// 9 ---------------------------------------------------------------------

fn bezout() -> Outcome {
    let f = gf(2, 2);
    let g = BiPoly::from_terms(&f, &[(3, 0, 1), (0, 2, 1), (0, 1, 1)]).unwrap();
    let pts: Vec<(u32, u32)> = (0..4)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .filter(|&(x, y)| g.eval(x, y) == 0)
        .collect();
    ensure(pts.len() == 8, || format!("{} points", pts.len()))?;
    let mut out = vec![];
    for l in 1..=2u32 {
        let c = bezout_code(&g, &pts, l).map_err(|e| e.to_string())?;
        let designed = if l < 3 {
            ((l + 1) * (l + 2) / 2) as usize
        } else {
            unreachable!()
        };
        ensure(c.designed_k() == designed, || {
            format!("l={l}: designed k {}", c.designed_k())
        })?;
        ensure(c.rank() == designed, || {
            format!("l={l}: rank {} vs designed {designed}", c.rank())
        })?;
        let d = c
            .min_distance_bruteforce(DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(d >= 8 - 3 * l as usize, || {
            format!("l={l}: d = {d} < {}", 8 - 3 * l)
        })?;
        out.push(format!("l={l}: k={designed} d={d}>={}", 8 - 3 * l));
    }
    Ok(out.join(", "))
}

// 10 --------------------------------------------------------------------

const RS_SPEC: &str =
    "[field]\np = 5\n\n[code]\nkind = \"rs\"\nk = 2\n\n[channel]\ntrials = 1000\n";
const HERMITIAN_SPEC: &str = "[field]\np = 2\nr = 2\n\n[curve]\nfamily = \"A\"\nm = 3\ntail = [[0, 1, 1]]\n\n[code]\nkind = \"eval\"\nl = 4\n\n[channel]\ntrials = 1000\n";

fn channel() -> Outcome {
    let rs = RsCode::new(&gf(5, 1), 2).unwrap();
    let herm = eval_code(&hermitian(), &rational_points(&hermitian()).unwrap(), 4).unwrap();
    let codes = [
        ("RS [5,2]", rs.linear_code().unwrap()),
        ("Hermitian [8,4]", herm.linear_code().unwrap()),
    ];
    let mut out = vec![];
    for (name, code) in &codes {
        let d = code.min_distance_bruteforce(DEFAULT_BUDGET).unwrap();
        for e in 0..=(d - 1) / 2 {
            let r = run_channel_experiment(code, e, 1000, 2024, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?;
            ensure(r.successes == r.trials && r.success_rate() == 1.0, || {
                format!("{name}, e={e}: {}/{}", r.successes, r.trials)
            })?;
        }
        out.push(format!("{name} d={d} e<={}", (d - 1) / 2));
    }
    for spec in [RS_SPEC, HERMITIAN_SPEC] {
        let spec = parse_spec(spec).map_err(|e| e.to_string())?;
        let opts = ReportOptions {
            seed: 77,
            ..Default::default()
        };
        let a = report(&spec, &opts).map_err(|e| e.to_string())?;
        let b = report(&spec, &opts).map_err(|e| e.to_string())?;
        ensure(a.ok(), || format!("report checks fail:\n{a}"))?;
        ensure(
            a.channel.as_ref().is_some_and(|c| c.successes == 1000),
            || "report channel below 1.0".into(),
        )?;
        ensure(
            a.to_string() == b.to_string() && a.to_json() == b.to_json(),
            || "reports differ".into(),
        )?;
    }
    Ok(format!(
        "1000 trials, success 1.0: {}; reports byte-identical",
        out.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("RS codes are MDS", rs_mds),
        ("two-generator semigroups", semigroups),
        ("order and weight axioms", weight_axioms),
        ("Hermitian evaluation codes", hermitian_pipeline),
        ("order bound chain", order_bound_chain),
        ("syndrome rank lemma and staircase", rank_lemma),
        ("quotient dimension", quotient_dimensions),
        ("zero count", zero_count),
        ("Bezout codes", bezout),
        ("channel experiment", channel),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
