//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wickenum::algebra::{int, rat};
use wickenum::fatgraph::map_count;
use wickenum::integrands::{integrate_psi_symbolic, integrate_spec, IntegrandKind, IntegrandSpec};
use wickenum::verify::{
    self, verify_bipz_report, verify_coin, verify_ice, verify_main2, verify_main3, verify_main7,
    verify_planar_convergence, verify_prr_report, verify_witt, Identity, Report, SOfN,
};
use wickenum::wick::{wick_value, EdgeMultiset};
use wickenum::{ExactPoly, Monomial, TruncatedSeries, Truncation, Var, VarGroup};

const WICK_SAMPLES: usize = 500;
const WICK_MAX_FACTORS: usize = 10;
const WICK_MAX_N: u16 = 4;
const WICK_TIME_LIMIT: Duration = Duration::from_secs(10);
const SEED: u64 = 0x5eed_0001;

type Outcome = Result<String, String>;

fn passed(r: &Report) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        let m = &r.mismatches[0];
        Err(format!(
            "{} (N = {:?}): {} mismatches, first {} {} lhs {} rhs {}",
            r.identity,
            r.n,
            r.mismatches.len(),
            m.case,
            m.monomial,
            m.lhs,
            m.rhs
        ))
    }
}

fn engine<T>(r: wickenum::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Counts perfect matchings of factor positions into reversed pairs by
/// trying every partner of the lowest unmatched position.
fn brute_force_matchings(items: &[(u16, u16)], used: &mut Vec<bool>) -> u64 {
    let Some(a) = used.iter().position(|u| !u) else {
        return 1;
    };
    used[a] = true;
    let mut total = 0;
    for b in a + 1..items.len() {
        if !used[b] && items[b] == (items[a].1, items[a].0) {
            used[b] = true;
            total += brute_force_matchings(items, used);
            used[b] = false;
        }
    }
    used[a] = false;
    total
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut nonzero = 0;
    for sample in 0..WICK_SAMPLES {
        let n = rng.gen_range(1..=WICK_MAX_N);
        let len = rng.gen_range(0..=WICK_MAX_FACTORS);
        // Half the samples are built from reversed pairs so that nonzero
        // values are common.
        let mut items = Vec::with_capacity(len);
        if sample % 2 == 0 {
            while items.len() + 2 <= len {
                let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
                items.extend([(i, j), (j, i)]);
            }
        }
        while items.len() < len {
            items.push((rng.gen_range(1..=n), rng.gen_range(1..=n)));
        }
        let count = brute_force_matchings(&items, &mut vec![false; items.len()]);
        let want = int(count as i64) / int(n as i64).pow(len as i32 / 2);
        let set = engine(EdgeMultiset::new(n, items.clone()))?;
        let got = wick_value(&set).eval_n(&int(n as i64)).as_constant();
        if got != Some(want.clone()) {
            return Err(format!("N = {n}, I = {items:?}: got {got:?}, want {want}"));
        }
        nonzero += usize::from(count > 0);
    }
    let elapsed = start.elapsed();
    if elapsed > WICK_TIME_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{WICK_SAMPLES} samples ({nonzero} nonzero) in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    passed(&engine(verify_main7(None, &[0, 1, 2, 3], 8))?)?;
    passed(&engine(verify_main3(None, &[0, 1, 2], 4))?)?;
    Ok("main7 r = 0..3 to 8 edges, main3 r = 0..2 to 4 edges".into())
}

fn criterion_3() -> Outcome {
    for n in [2, 3, 4] {
        passed(&engine(verify_ice(Some(n), 6))?)?;
    }
    Ok("N = 2, 3, 4 to 6 edges".into())
}

fn criterion_4() -> Outcome {
    for n in [3, 4, 5] {
        passed(&engine(verify_main2(Some(n), None))?)?;
    }
    passed(&engine(verify_main2(None, Some(5)))?)?;
    let xi = IntegrandSpec {
        n: Some(3),
        ..IntegrandSpec::new(IntegrandKind::Xi)
    };
    let v = engine(integrate_spec(&xi))?.as_constant();
    if v != Some(int(1) + rat(1, 27)) {
        return Err(format!("<xi> at N = 3 is {v:?}, want 28/27"));
    }
    Ok("N = 3, 4, 5 and symbolic to 5 vertices; <xi>(3) = 28/27".into())
}

fn criterion_5() -> Outcome {
    passed(&engine(verify_prr_report(3, 6))?)?;
    Ok("N = 3 to entry degree 6".into())
}

fn criterion_6() -> Outcome {
    let r = engine(verify_coin(2, 7))?;
    passed(&r)?;
    Ok(format!("{} multisets of size 2..7", r.compared))
}

fn criterion_7() -> Outcome {
    passed(&engine(verify_witt(&[1, 2, 3], 6))?)?;
    Ok("k = 1, 2, 3 to degree 6".into())
}

fn criterion_8() -> Outcome {
    let r = engine(verify_bipz_report(&[2, 3, 4], 2))?;
    passed(&r)?;
    // Exponents of z2, z3, z4, all pinned so that mixed terms stay out.
    let z = |e: [i32; 3]| -> Vec<(Var, i32)> { (2..=4).map(|i| (Var::Zi(i), e[i as usize - 2])).collect() };
    let psi = engine(integrate_psi_symbolic(&[2, 3, 4], 2, 8))?;
    let t = Truncation::new().with(VarGroup::IndexedZ, 2);
    let log = engine(engine(TruncatedSeries::new(psi, t))?.log())?.into_payload();
    for e in [[1, 0, 0], [0, 0, 1], [0, 2, 0]] {
        if log.coeff_of(&z(e)).is_zero() {
            return Err(format!("log<psi> has no z2^{} z3^{} z4^{} term", e[0], e[1], e[2]));
        }
    }
    let (m0, m1) = (engine(map_count(0, &[4]))?, engine(map_count(1, &[4]))?);
    if (m0, m1) != (2, 1) {
        return Err(format!("one-vertex quartic maps: M0 = {m0}, M1 = {m1}"));
    }
    let n2 = ExactPoly::term(Monomial::new([(Var::N, 2)]).expect("valid"), int(1));
    let want = (n2.scale(&int(2)) + ExactPoly::one()).scale(&rat(-1, 4));
    let got = log.coeff_of(&z([0, 0, 1]));
    if got != want {
        return Err(format!("z4 coefficient {got}, want {want}"));
    }
    Ok(format!("{} coefficients; M0 = 2, M1 = 1, [z4] = {want}", r.compared))
}

fn criterion_9() -> Outcome {
    let r = engine(verify_planar_convergence(4, &[4, 6, 8], SOfN::Sqrt))?;
    let table = r.table.as_ref().expect("convergence reports carry a table");
    let p = |n: usize, rr: usize| table.rows.iter().find(|row| row.n == n && row.r == rr).map(|row| row.p);
    if (p(3, 1), p(3, 2)) != (Some(3), Some(1)) {
        return Err(format!("p(3,1), p(3,2) = {:?}, {:?}", p(3, 1), p(3, 2)));
    }
    if table.p_totals.last() != Some(&(4, 38)) {
        return Err(format!("p totals {:?}", table.p_totals));
    }
    let ok = table.rows.iter().filter(|row| row.pass).count();
    passed(&r).map_err(|_| {
        let failing: Vec<String> =
            r.mismatches.iter().map(|m| format!("[{}: {}]", m.case, m.lhs)).collect();
        format!("{ok}/{} rows converge; failing {}", table.rows.len(), failing.join(" "))
    })?;
    Ok(format!("{ok}/{} rows converge", table.rows.len()))
}

fn cli(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wickenum"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion_10() -> Outcome {
    let mut runs = 0;
    for id in Identity::ALL {
        let expected_code = if verify::run(id, &Default::default()).map_err(|e| e.to_string())?.passed() {
            0
        } else {
            3
        };
        let mut first: Option<Vec<u8>> = None;
        for jobs in ["1", "4"] {
            for _ in 0..2 {
                let (bytes, code) = cli(&["--jobs", jobs, "verify", id.name()])?;
                if code != expected_code {
                    return Err(format!("{id} --jobs {jobs} exited {code}"));
                }
                match &first {
                    None => first = Some(bytes),
                    Some(f) if *f != bytes => {
                        return Err(format!("{id} --jobs {jobs} output differs"))
                    }
                    Some(_) => {}
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs, byte-identical per identity"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Wick values against brute-force matchings", criterion_1),
        ("trail double cover and fat-graph sums", criterion_2),
        ("<zeta> = <eta>", criterion_3),
        ("<xi> - 1 against cycle double covers", criterion_4),
        ("walk product against xi", criterion_5),
        ("alternating coin arrangements", criterion_6),
        ("Witt product", criterion_7),
        ("log<psi> against map counts", criterion_8),
        ("planar counts from log<eta> as N grows", criterion_9),
        ("deterministic output across --jobs", criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
