//! The verification corpus: named checks over a fixed set of groups, run by
//! `zlconst verify`, and the family summary table printed by `zlconst figure1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::amenability::{
    amzl_direct_norm, amzl_general, analyze, closed_form_a2xb, closed_form_affine,
    closed_form_dihedral, closed_form_extraspecial, closed_form_for, frobenius_min_scan,
    lemma_linear_block_norm, Analysis,
};
use crate::char_table::{character_degrees, character_table, ORTHOGONALITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::families::{frobenius_class_sizes, frobenius_semidirect, Family, FrobeniusSpec};
use crate::group::{center, GroupTable};
use crate::rational::ExactRational;
use crate::DEFAULT_ORDER_CAP;

/// Agreement tolerance between numeric routes.
pub const VALUE_TOLERANCE: f64 = 1e-9;

/// Names accepted by `verify --only`.
pub const CHECK_NAMES: [&str; 9] = [
    "golden",
    "consistency",
    "lemma24",
    "frobenius",
    "scan",
    "figure1",
    "negative",
    "lowerbound",
    "chartable",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub only: Option<Vec<String>>,
    /// Perturbs one computed character table before validation.
    pub corrupt_table: bool,
}

/// The non-abelian groups every cross-check runs over.
pub fn corpus() -> Vec<Family> {
    let mut v: Vec<Family> = (3..=12).map(|n| Family::Dihedral { n }).collect();
    v.extend([3, 4, 5, 7, 8, 9, 11, 13].map(|q| Family::Affine { q }));
    v.extend([5, 7, 9, 11, 13].map(|q| Family::A2xb { q }));
    v.extend([(2, 1), (2, 2), (3, 1), (5, 1)].map(|(p, n)| Family::Extraspecial { p, n }));
    v.push(Family::Quaternion8);
    v.extend(
        [(7, 3, 2), (11, 5, 3), (13, 4, 5)]
            .map(|(k, h, u)| Family::Frobenius(FrobeniusSpec::cyclic(k, h, u))),
    );
    v
}

pub fn abelian_controls() -> Vec<Family> {
    vec![
        Family::Cyclic { n: 4 },
        Family::Abelian { orders: vec![2, 2] },
        Family::Cyclic { n: 6 },
    ]
}

/// A built and analysed group.
pub struct Instance {
    pub family: Family,
    pub group: GroupTable,
    pub analysis: Analysis,
}

pub fn instance(family: Family, seed: u64) -> Result<Instance> {
    let group = family.build(DEFAULT_ORDER_CAP)?;
    let analysis = analyze(&group, seed)?;
    Ok(Instance {
        family,
        group,
        analysis,
    })
}

/// Kernel and complement orders when the instance is a Frobenius group with
/// abelian kernel and complement.
pub fn frobenius_parameters(family: &Family) -> Option<(usize, usize)> {
    match family {
        Family::Dihedral { n } if n % 2 == 1 => Some((*n as usize, 2)),
        Family::Affine { q } => Some((*q as usize, *q as usize - 1)),
        Family::A2xb { q } => Some((*q as usize, (*q as usize - 1) / 2)),
        Family::Frobenius(s) => Some((s.kernel_order() as usize, s.complement_order() as usize)),
        _ => None,
    }
}

struct Checker<'a> {
    out: Vec<CheckOutcome>,
    opts: &'a VerifyOptions,
}

impl Checker<'_> {
    fn wanted(&self, name: &str) -> bool {
        self.opts
            .only
            .as_ref()
            .is_none_or(|o| o.iter().any(|n| n == name))
    }

    fn record(&mut self, name: &'static str, result: Result<String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.out.push(CheckOutcome {
            name,
            passed,
            detail,
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(msg()))
    }
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

/// Runs the selected checks. Unknown names in `only` are a usage error.
pub fn run(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
            return Err(Error::Usage(format!(
                "unknown check `{bad}` (known: {})",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let mut c = Checker {
        out: Vec::new(),
        opts,
    };
    let needs_corpus = [
        "golden",
        "consistency",
        "lemma24",
        "frobenius",
        "lowerbound",
        "chartable",
    ]
    .iter()
    .any(|n| c.wanted(n));
    let (corpus, controls) = if needs_corpus {
        let built: Result<Vec<Instance>> = corpus()
            .into_iter()
            .map(|f| instance(f, opts.seed))
            .collect();
        let ctrl: Result<Vec<Instance>> = abelian_controls()
            .into_iter()
            .map(|f| instance(f, opts.seed))
            .collect();
        match (built, ctrl) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                c.record("corpus", Err(e));
                return Ok(c.out);
            }
        }
    } else {
        (Vec::new(), Vec::new())
    };

    if c.wanted("golden") {
        let r = check_golden(&corpus);
        c.record("golden", r);
    }
    if c.wanted("consistency") {
        let r = check_consistency(&corpus);
        c.record("consistency", r);
    }
    if c.wanted("lemma24") {
        let r = check_linear_block(&corpus, &controls);
        c.record("lemma24", r);
    }
    if c.wanted("frobenius") {
        let r = check_frobenius(&corpus);
        c.record("frobenius", r);
    }
    if c.wanted("scan") {
        let r = frobenius_min_scan(12, 60).map(|rows| {
            format!(
                "{} admissible pairs, minimum 2/3 only at (h,k) = (2,3)",
                rows.len()
            )
        });
        c.record("scan", r);
    }
    if c.wanted("figure1") {
        let r = figure1(opts.seed).and_then(|rows| {
            let mins: Vec<String> = rows.iter().map(|r| r.minimum.to_string()).collect();
            let want = ["4/3", "48/25", "4/3", "3/4", "3/4"];
            ensure(mins == want, || {
                format!("minima {mins:?}, expected {want:?}")
            })?;
            ensure(rows.iter().all(|r| r.verified), || {
                "a minimal instance disagrees with the general formula".into()
            })?;
            Ok(format!("family minima {}", mins.join(", ")))
        });
        c.record("figure1", r);
    }
    if c.wanted("negative") {
        let r = check_degree_unbounded(opts.seed);
        c.record("negative", r);
    }
    if c.wanted("lowerbound") {
        let r = check_lower_bound(&corpus, &controls);
        c.record("lowerbound", r);
    }
    if c.wanted("chartable") {
        let r = check_tables(&corpus, opts);
        c.record("chartable", r);
    }
    Ok(c.out)
}

fn find<'a>(corpus: &'a [Instance], f: &Family) -> Result<&'a Instance> {
    corpus
        .iter()
        .find(|i| &i.family == f)
        .ok_or_else(|| Error::CheckFailed(format!("{f} missing from corpus")))
}

fn check_golden(corpus: &[Instance]) -> Result<String> {
    let cases = [
        (Family::Dihedral { n: 3 }, rat(7, 3)),
        (Family::Dihedral { n: 4 }, rat(7, 4)),
        (Family::Quaternion8, rat(7, 4)),
        (Family::Extraspecial { p: 2, n: 1 }, rat(7, 4)),
        (Family::Dihedral { n: 5 }, rat(73, 25)),
        (Family::A2xb { q: 5 }, rat(73, 25)),
    ];
    for (family, want) in &cases {
        let inst = find(corpus, family)?;
        let (_, closed) = closed_form_for(family).expect("named family")?;
        ensure(&closed == want, || {
            format!("{family}: closed form {closed}, expected {want}")
        })?;
        let two = inst
            .analysis
            .two_degree()
            .ok_or_else(|| Error::CheckFailed(format!("{family} lacks two degrees")))??;
        ensure(&two == want, || {
            format!("{family}: two-degree value {two}, expected {want}")
        })?;
        let general = amzl_general(&inst.analysis.table).value_float;
        ensure((general - want.to_f64()).abs() < VALUE_TOLERANCE, || {
            format!("{family}: general value {general}, expected {want}")
        })?;
    }
    Ok("7/3, 7/4 (D4, Q8, extraspecial(2,1)), 73/25 (D5, a2xb(5)) exact".into())
}

fn check_consistency(corpus: &[Instance]) -> Result<String> {
    let mut worst: f64 = 0.0;
    for inst in corpus {
        let f = &inst.family;
        let general = amzl_general(&inst.analysis.table).value_float;
        let oracle = amzl_direct_norm(&inst.analysis.table, &inst.analysis.partition)?;
        let two = inst
            .analysis
            .two_degree()
            .ok_or_else(|| Error::CheckFailed(format!("{f} lacks two degrees")))??;
        let (_, closed) = closed_form_for(f).expect("named family")?;
        ensure(two == closed, || {
            format!("{f}: two-degree {two} != closed form {closed}")
        })?;
        for (name, v) in [
            ("oracle", oracle),
            ("two-degree", two.to_f64()),
            ("closed form", closed.to_f64()),
        ] {
            let d = (general - v).abs();
            worst = worst.max(d);
            ensure(d < VALUE_TOLERANCE, || {
                format!("{f}: general {general} vs {name} {v}")
            })?;
        }
    }
    Ok(format!("{} groups, max residual {worst:.2e}", corpus.len()))
}

fn check_linear_block(corpus: &[Instance], controls: &[Instance]) -> Result<String> {
    let mut worst: f64 = 0.0;
    for inst in corpus.iter().chain(controls) {
        let v = lemma_linear_block_norm(&inst.analysis.table);
        worst = worst.max((v - 1.0).abs());
        ensure((v - 1.0).abs() < VALUE_TOLERANCE, || {
            format!("{}: linear block norm {v}", inst.family)
        })?;
    }
    Ok(format!(
        "{} groups, max |norm - 1| = {worst:.2e}",
        corpus.len() + controls.len()
    ))
}

fn check_frobenius(corpus: &[Instance]) -> Result<String> {
    let mut count = 0;
    for inst in corpus {
        let Some((k, h)) = frobenius_parameters(&inst.family) else {
            continue;
        };
        let f = &inst.family;
        ensure(center(&inst.group).order() == 1, || {
            format!("{f}: centre is not trivial")
        })?;
        let sizes = inst.analysis.partition.size_multiset();
        ensure(sizes == frobenius_class_sizes(k, h), || {
            format!("{f}: class sizes {sizes:?}")
        })?;
        let mut want = vec![1u64; h];
        want.extend(std::iter::repeat_n(h as u64, (k - 1) / h));
        want.sort_unstable();
        let got = character_degrees(&inst.analysis.table);
        ensure(got == want, || {
            format!("{f}: degrees {got:?}, expected {want:?}")
        })?;
        count += 1;
    }
    // Z4 acting on Z5 through its order-2 quotient
    match frobenius_semidirect(&FrobeniusSpec::cyclic(5, 4, 4)) {
        Err(Error::NotFixedPointFree(_)) => {}
        other => {
            return Err(Error::CheckFailed(format!(
                "non-fixed-point-free action accepted: {other:?}"
            )))
        }
    }
    Ok(format!(
        "{count} Frobenius groups; non-fixed-point-free action rejected"
    ))
}

fn check_degree_unbounded(seed: u64) -> Result<String> {
    let mut prev_degree = 0;
    let mut values = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let inst = instance(Family::Affine { q: p }, seed)?;
        let max_degree = *inst.analysis.table.degrees().iter().max().unwrap_or(&0);
        ensure(max_degree == p - 1, || {
            format!("Aff(F_{p}) max degree {max_degree}")
        })?;
        ensure(max_degree > prev_degree, || {
            "max degree not increasing".into()
        })?;
        prev_degree = max_degree;
        let exact = closed_form_affine(p)?;
        ensure(
            exact == ExactRational::from_integer(5) - rat(8, p as i64),
            || "closed form mismatch".into(),
        )?;
        ensure(exact < ExactRational::from_integer(5), || {
            format!("Aff(F_{p}) constant {exact} >= 5")
        })?;
        let general = amzl_general(&inst.analysis.table).value_float;
        ensure(
            (general - exact.to_f64()).abs() < VALUE_TOLERANCE && general < 5.0,
            || format!("Aff(F_{p}) general value {general}"),
        )?;
        values.push(exact.to_string());
    }
    Ok(format!(
        "max degrees p-1 = 2,4,6,10,12; constants {} all < 5",
        values.join(", ")
    ))
}

fn check_lower_bound(corpus: &[Instance], controls: &[Instance]) -> Result<String> {
    let bound = 7.0 / 4.0 - VALUE_TOLERANCE;
    let mut smallest = f64::INFINITY;
    for inst in corpus {
        let v = amzl_general(&inst.analysis.table).value_float;
        smallest = smallest.min(v);
        ensure(v >= bound, || {
            format!("{}: constant {v} below 7/4", inst.family)
        })?;
        ensure(v >= 301.0 / 300.0, || {
            format!("{}: constant {v} below 301/300", inst.family)
        })?;
    }
    for inst in controls {
        let rep = amzl_general(&inst.analysis.table);
        ensure(rep.value_exact == Some(ExactRational::one()), || {
            format!("{}: not exactly 1", inst.family)
        })?;
        ensure((rep.value_float - 1.0).abs() < VALUE_TOLERANCE, || {
            format!("{}: {}", inst.family, rep.value_float)
        })?;
    }
    Ok(format!(
        "smallest non-abelian constant {smallest:.12}; abelian controls exactly 1"
    ))
}

fn check_tables(corpus: &[Instance], opts: &VerifyOptions) -> Result<String> {
    let mut worst_ratio: f64 = 0.0;
    for (idx, inst) in corpus.iter().enumerate() {
        let f = &inst.family;
        let n = inst.group.order();
        let mut table = inst.analysis.table.clone();
        if opts.corrupt_table && idx == 0 {
            table.perturb(table.num_classes() - 1, 1, Complex64::new(1e-3, 0.0));
        }
        let res = table.validate()?;
        worst_ratio = worst_ratio.max(res.row.max(res.column) / n as f64);
        let deg_sq: u64 = table.degrees().iter().map(|d| d * d).sum();
        ensure(deg_sq == n as u64, || {
            format!("{f}: sum of squared degrees {deg_sq}")
        })?;
        ensure(
            inst.analysis.linear_count * inst.analysis.derived_order == n,
            || format!("{f}: |L|·|G'| != |G|"),
        )?;
        for other_seed in [opts.seed.wrapping_add(1), opts.seed ^ 0xDEAD_BEEF] {
            let other = character_table(&inst.group, &inst.analysis.partition, other_seed)?;
            ensure(other.degrees() == table.degrees(), || {
                format!("{f}: degrees depend on the seed")
            })?;
            let diff = other
                .values()
                .iter()
                .zip(table.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            ensure(diff < ORTHOGONALITY_TOLERANCE * n as f64, || {
                format!("{f}: sorted table depends on the seed ({diff:.2e})")
            })?;
        }
    }
    Ok(format!(
        "{} tables, max residual/|G| = {worst_ratio:.2e}, seed-independent",
        corpus.len()
    ))
}

/// One row of the family summary table.
#[derive(Clone, Debug, Serialize)]
pub struct FigureRow {
    pub family: &'static str,
    pub condition: &'static str,
    pub order: &'static str,
    pub linear_characters: &'static str,
    pub nonlinear_degree: &'static str,
    pub am_minus_one: &'static str,
    /// Minimum of `AM − 1` over the family.
    pub minimum: ExactRational,
    pub attained_at: String,
    /// `AM − 1` of the minimal instance via the general formula.
    pub general_value: f64,
    pub verified: bool,
}

/// Printed by `figure1` next to the even-dihedral row.
pub const EVEN_DIHEDRAL_NOTE: &str =
    "note: for even n the constant is 1 + 3(1 - 2/n)^2 (order 2n); \
the summary entry 3(1 - (2n)^-1)^2 is a misprint and does not give the stated minimum 3/4";

/// Labels for one summary row, its minimal instance and neighbouring values.
type FigureSpec = (
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    Family,
    Vec<ExactRational>,
);

/// The family summary table, each minimum checked against the general
/// formula on its minimal instance and against neighbouring instances.
pub fn figure1(seed: u64) -> Result<Vec<FigureRow>> {
    let one = ExactRational::one();
    let specs: [FigureSpec; 5] = [
        (
            "Aff(F_q)",
            "q >= 3",
            "q(q-1)",
            "q-1",
            "q-1",
            "4(1-2/q)",
            Family::Affine { q: 3 },
            [4u64, 5, 7, 8, 9]
                .iter()
                .map(|&q| closed_form_affine(q))
                .collect::<Result<_>>()?,
        ),
        (
            "a2xb of F_q",
            "q >= 5 odd",
            "q(q-1)/2",
            "(q-1)/2",
            "(q-1)/2",
            "(q+1)(1-9/q^2)/2",
            Family::A2xb { q: 5 },
            [7u64, 9, 11, 13]
                .iter()
                .map(|&q| closed_form_a2xb(q))
                .collect::<Result<_>>()?,
        ),
        (
            "D_n",
            "n odd >= 3",
            "2n",
            "2",
            "2",
            "3(1-1/n)^2",
            Family::Dihedral { n: 3 },
            [5u64, 7, 9, 11]
                .iter()
                .map(|&n| closed_form_dihedral(n))
                .collect::<Result<_>>()?,
        ),
        (
            "D_n",
            "n even >= 4",
            "2n",
            "4",
            "2",
            "3(1-2/n)^2",
            Family::Dihedral { n: 4 },
            [6u64, 8, 10, 12]
                .iter()
                .map(|&n| closed_form_dihedral(n))
                .collect::<Result<_>>()?,
        ),
        (
            "p-extraspecial",
            "p prime, n >= 1",
            "p^(2n+1)",
            "p^(2n)",
            "p^n",
            "2(1-p^-2n)(1-p^-1)",
            Family::Extraspecial { p: 2, n: 1 },
            [(2u64, 2u32), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
                .iter()
                .map(|&(p, n)| closed_form_extraspecial(p, n))
                .collect::<Result<_>>()?,
        ),
    ];
    let mut rows = Vec::new();
    for (family, condition, order, linear, degree, formula, minimal, others) in specs {
        let (_, closed) = closed_form_for(&minimal).expect("named family")?;
        let minimum = &closed - &one;
        let inst = instance(minimal.clone(), seed)?;
        let general_value = amzl_general(&inst.analysis.table).value_float - 1.0;
        let verified = (general_value - minimum.to_f64()).abs() < VALUE_TOLERANCE
            && others.iter().all(|v| (v - &one) > minimum);
        rows.push(FigureRow {
            family,
            condition,
            order,
            linear_characters: linear,
            nonlinear_degree: degree,
            am_minus_one: formula,
            minimum,
            attained_at: minimal.params(),
            general_value,
            verified,
        });
    }
    Ok(rows)
}
