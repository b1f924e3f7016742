//! Acceptance criteria. Each criterion is checked directly here and through
//! the library's named verification check; both must agree. Run with
//! `cargo test -p zlconst --test acceptance -- --nocapture` to see the
//! PASS/FAIL lines.

use std::time::{Duration, Instant};

use zlconst::amenability::{
    amzl_direct_norm, amzl_general, closed_form_a2xb, closed_form_affine, closed_form_dihedral,
    closed_form_extraspecial, closed_form_for, frobenius_min_scan, lemma_linear_block_norm,
};
use zlconst::char_table::character_table;
use zlconst::families::{frobenius_semidirect, quaternion8};
use zlconst::group::{center, conjugacy_classes};
use zlconst::verify::{self, Instance, VerifyOptions};
use zlconst::{Error, ExactRational, Family, FrobeniusSpec};

const TOL: f64 = 1e-9;
const SEED: u64 = 1;

fn r(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

type Outcome = Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn library_check(name: &str) -> Result<(), String> {
    let opts = VerifyOptions {
        seed: SEED,
        only: Some(vec![name.to_string()]),
        corrupt_table: false,
    };
    let out = verify::run(&opts).map_err(|e| e.to_string())?;
    match out.as_slice() {
        [o] if o.passed => Ok(()),
        [o] => Err(format!("library check `{name}` failed: {}", o.detail)),
        _ => Err(format!(
            "library check `{name}` returned {} outcomes",
            out.len()
        )),
    }
}

fn instances(families: Vec<Family>) -> Result<Vec<Instance>, String> {
    families
        .into_iter()
        .map(|f| verify::instance(f, SEED).map_err(|e| e.to_string()))
        .collect()
}

fn general(inst: &Instance) -> f64 {
    amzl_general(&inst.analysis.table).value_float
}

fn golden() -> Outcome {
    let cases: Vec<(Family, ExactRational, ExactRational)> = vec![
        (
            Family::Dihedral { n: 3 },
            closed_form_dihedral(3).unwrap(),
            r(7, 3),
        ),
        (
            Family::Dihedral { n: 4 },
            closed_form_dihedral(4).unwrap(),
            r(7, 4),
        ),
        (
            Family::Extraspecial { p: 2, n: 1 },
            closed_form_extraspecial(2, 1).unwrap(),
            r(7, 4),
        ),
        (
            Family::Quaternion8,
            closed_form_extraspecial(2, 1).unwrap(),
            r(7, 4),
        ),
        (
            Family::Dihedral { n: 5 },
            closed_form_dihedral(5).unwrap(),
            r(73, 25),
        ),
        (
            Family::A2xb { q: 5 },
            closed_form_a2xb(5).unwrap(),
            r(73, 25),
        ),
    ];
    for (family, closed, expected) in cases {
        ensure(closed == expected, || {
            format!("{family}: closed form {closed}, expected {expected}")
        })?;
        let inst = verify::instance(family.clone(), SEED).map_err(|e| e.to_string())?;
        let g = general(&inst);
        ensure((g - expected.to_f64()).abs() < TOL, || {
            format!("{family}: general {g} vs {expected}")
        })?;
    }
    // Q8 is not a Heisenberg group; check its table route separately
    let q8 = quaternion8().map_err(|e| e.to_string())?;
    let p = conjugacy_classes(&q8);
    let t = character_table(&q8, &p, SEED).map_err(|e| e.to_string())?;
    let v = amzl_general(&t).value_float;
    ensure((v - 1.75).abs() < TOL, || format!("Q8 general {v}"))?;
    library_check("golden")?;
    Ok("7/3, 7/4 (D4, Q8, extraspecial(2,1)), 73/25 (D5, a2xb(5))".into())
}

fn consistency() -> Outcome {
    let all = instances(verify::corpus())?;
    let mut worst = 0.0f64;
    for inst in &all {
        let g = general(inst);
        let direct = amzl_direct_norm(&inst.analysis.table, &inst.analysis.partition)
            .map_err(|e| e.to_string())?;
        let two = inst
            .analysis
            .two_degree()
            .ok_or_else(|| format!("{}: not a two-degree group", inst.family))?
            .map_err(|e| e.to_string())?;
        let (_, closed) = closed_form_for(&inst.family)
            .ok_or_else(|| format!("{}: no closed form", inst.family))?
            .map_err(|e| e.to_string())?;
        ensure(two == closed, || {
            format!("{}: two-degree {two} vs closed {closed}", inst.family)
        })?;
        for v in [direct, two.to_f64(), closed.to_f64()] {
            worst = worst.max((g - v).abs());
        }
        ensure(worst < TOL, || {
            format!("{}: routes disagree by {worst:e}", inst.family)
        })?;
    }
    ensure(all.len() == 31, || {
        format!("corpus has {} groups", all.len())
    })?;
    library_check("consistency")?;
    Ok(format!("{} groups, max residual {worst:.2e}", all.len()))
}

fn linear_block() -> Outcome {
    let mut fams = verify::corpus();
    fams.extend(verify::abelian_controls());
    let all = instances(fams)?;
    let mut worst = 0.0f64;
    for inst in &all {
        let v = lemma_linear_block_norm(&inst.analysis.table);
        worst = worst.max((v - 1.0).abs());
    }
    ensure(worst < TOL, || {
        format!("linear block norm off by {worst:e}")
    })?;
    library_check("lemma24")?;
    Ok(format!(
        "{} groups, max |norm - 1| = {worst:.2e}",
        all.len()
    ))
}

fn frobenius() -> Outcome {
    let mut count = 0;
    for inst in instances(verify::corpus())? {
        let Some((k, h)) = verify::frobenius_parameters(&inst.family) else {
            continue;
        };
        count += 1;
        ensure(center(&inst.group).order() == 1, || {
            format!("{}: non-trivial centre", inst.family)
        })?;
        let mut sizes = vec![1usize];
        sizes.extend(std::iter::repeat_n(h, (k - 1) / h));
        sizes.extend(std::iter::repeat_n(k, h - 1));
        sizes.sort_unstable();
        let mut got = inst.analysis.partition.sizes().to_vec();
        got.sort_unstable();
        ensure(got == sizes, || {
            format!("{}: class sizes {got:?}", inst.family)
        })?;
        let mut degrees = vec![1u64; h];
        degrees.extend(std::iter::repeat_n(h as u64, (k - 1) / h));
        let mut got = inst.analysis.table.degrees().to_vec();
        got.sort_unstable();
        ensure(got == degrees, || {
            format!("{}: degrees {got:?}", inst.family)
        })?;
    }
    // Z_4 acting on Z_5 by x -> 4x factors through Z_2
    match frobenius_semidirect(&FrobeniusSpec::cyclic(5, 4, 4)) {
        Err(Error::NotFixedPointFree(_)) => {}
        other => return Err(format!("non-fixed-point-free action gave {other:?}")),
    }
    library_check("frobenius")?;
    Ok(format!(
        "{count} Frobenius groups; Z_4 on Z_5 through Z_2 rejected"
    ))
}

fn scan() -> Outcome {
    let rows = frobenius_min_scan(12, 60).map_err(|e| e.to_string())?;
    let target = r(2, 3);
    let minima: Vec<_> = rows.iter().filter(|row| row.f == target).collect();
    ensure(
        minima.len() == 1 && minima[0].h == 2 && minima[0].k == 3,
        || format!("minimum rows {minima:?}"),
    )?;
    ensure(rows.iter().all(|row| row.f >= target), || {
        "value below 2/3".into()
    })?;
    for row in &rows {
        // F(k, h) = ((h^2 - 1)/h)(1 - (h - 1)/k)(1 - 1/k)
        let (h, k) = (row.h as i64, row.k as i64);
        let f = r(h * h - 1, h) * r(k - h + 1, k) * r(k - 1, k);
        ensure(f == row.f, || {
            format!("F({k},{h}) = {} but expected {f}", row.f)
        })?;
    }
    for h in 2..=12u64 {
        let mut fs: Vec<_> = rows.iter().filter(|row| row.h == h).collect();
        fs.sort_by_key(|row| row.k);
        ensure(fs.windows(2).all(|w| w[0].f < w[1].f), || {
            format!("F(., {h}) not increasing")
        })?;
    }
    library_check("scan")?;
    Ok(format!(
        "{} admissible pairs, unique minimum 2/3 at (2,3)",
        rows.len()
    ))
}

fn figure1() -> Outcome {
    let rows = verify::figure1(SEED).map_err(|e| e.to_string())?;
    let expected = [r(4, 3), r(48, 25), r(4, 3), r(3, 4), r(3, 4)];
    let got: Vec<_> = rows.iter().map(|row| row.minimum.clone()).collect();
    ensure(got == expected, || format!("minima {got:?}"))?;
    ensure(rows.iter().all(|row| row.verified), || {
        "a row failed verification".into()
    })?;
    let one = ExactRational::one();
    let direct = [
        closed_form_affine(3).unwrap() - one.clone(),
        closed_form_a2xb(5).unwrap() - one.clone(),
        closed_form_dihedral(3).unwrap() - one.clone(),
        closed_form_dihedral(4).unwrap() - one.clone(),
        closed_form_extraspecial(2, 1).unwrap() - one,
    ];
    ensure(direct == expected, || {
        format!("closed forms at minimal instances {direct:?}")
    })?;
    ensure(closed_form_dihedral(6).unwrap() == r(7, 3), || {
        "D6 does not follow 1 + 3(1 - 2/n)^2".into()
    })?;
    ensure(verify::EVEN_DIHEDRAL_NOTE.contains("misprint"), || {
        "figure note missing".into()
    })?;
    library_check("figure1")?;
    Ok("minima 4/3, 48/25, 4/3, 3/4, 3/4; even-dihedral note emitted".into())
}

fn negative() -> Outcome {
    let mut last = 0;
    let mut values = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let inst = verify::instance(Family::Affine { q: p }, SEED).map_err(|e| e.to_string())?;
        let max = *inst.analysis.table.degrees().iter().max().unwrap();
        ensure(max == p - 1 && max > last, || {
            format!("Aff(F_{p}): max degree {max}")
        })?;
        last = max;
        let closed = closed_form_affine(p).unwrap();
        ensure(closed == r(5 * p as i64 - 8, p as i64), || {
            format!("Aff(F_{p}): {closed}")
        })?;
        ensure(closed < r(5, 1), || format!("Aff(F_{p}) not below 5"))?;
        let g = general(&inst);
        ensure((g - closed.to_f64()).abs() < TOL, || {
            format!("Aff(F_{p}): general {g}")
        })?;
        values.push(closed.to_string());
    }
    library_check("negative")?;
    Ok(format!(
        "max degrees p-1 increasing; constants {} all < 5",
        values.join(", ")
    ))
}

fn lower_bound() -> Outcome {
    let mut smallest = f64::INFINITY;
    for inst in instances(verify::corpus())? {
        let g = general(&inst);
        smallest = smallest.min(g);
        ensure(g >= 1.75 - TOL, || format!("{}: {g} < 7/4", inst.family))?;
    }
    for inst in instances(verify::abelian_controls())? {
        let rep = amzl_general(&inst.analysis.table);
        ensure(rep.value_exact == Some(ExactRational::one()), || {
            format!("{}: {:?}", inst.family, rep.value_exact)
        })?;
        ensure((rep.value_float - 1.0).abs() < TOL, || {
            format!("{}: {}", inst.family, rep.value_float)
        })?;
    }
    library_check("lowerbound")?;
    Ok(format!(
        "smallest non-abelian value {smallest:.12}; abelian controls exactly 1"
    ))
}

fn tables() -> Outcome {
    let all = instances(verify::corpus())?;
    let mut worst = 0.0f64;
    let (mut lo, mut hi) = (usize::MAX, 0);
    for inst in &all {
        let t = &inst.analysis.table;
        let n = inst.group.order();
        lo = lo.min(n);
        hi = hi.max(n);
        let res = t.residuals();
        worst = worst.max(res.row.max(res.column) / n as f64);
        ensure(
            res.row < 1e-8 * n as f64 && res.column < 1e-8 * n as f64,
            || format!("{}: {res:?}", inst.family),
        )?;
        let sq: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(sq == n as u64, || {
            format!("{}: sum d^2 = {sq}", inst.family)
        })?;
        ensure(
            inst.analysis.linear_count * inst.analysis.derived_order == n,
            || format!("{}: |L||G'| != |G|", inst.family),
        )?;
        let other = character_table(&inst.group, &inst.analysis.partition, 0xC0FFEE)
            .map_err(|e| e.to_string())?;
        ensure(other.degrees() == t.degrees(), || {
            format!("{}: degrees depend on seed", inst.family)
        })?;
        let diff = t
            .values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        ensure(diff < 1e-6, || {
            format!("{}: table depends on seed ({diff:e})", inst.family)
        })?;
    }
    library_check("chartable")?;
    Ok(format!(
        "{} tables, orders {lo}..{hi}, max residual/|G| {worst:.2e}, seed-independent",
        all.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        (
            "1 golden exact values",
            golden,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 formula consistency sweep",
            consistency,
            Some(Duration::from_secs(60)),
        ),
        ("3 linear block norm", linear_block, None),
        ("4 Frobenius structure", frobenius, None),
        ("5 Frobenius minimum scan", scan, None),
        ("6 family summary table", figure1, None),
        ("7 unbounded degree, bounded constant", negative, None),
        ("8 lower bound", lower_bound, None),
        ("9 character-table engine", tables, None),
    ];
    let mut failed = Vec::new();
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if took > limit {
                outcome = Err(format!("took {took:?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({:.2}s)", took.as_secs_f64()),
            Err(detail) => {
                println!("FAIL [{name}] {detail} ({:.2}s)", took.as_secs_f64());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
