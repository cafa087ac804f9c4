//! Built-in acceptance checks, run by the `selftest` subcommand.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ball_disjoint, Rational};
use crate::correspondence::{
    averaging_check, correspondence_lattice, field_from_subgroup, fields_equal, fixed_field,
    primitive_independence_check, CorrespondenceReport,
};
use crate::groups::{all_subgroups, arrangement_array, substitution_group, Arrangement, PermGroup};
use crate::numberfield::{splitting_field, SplittingField};
use crate::poly::{MultiPoly, UniPoly};
use crate::resolvent::{
    admissible_specs, certify_spec, exact_separation_certificate, search_resolvent, ResolventSpec,
};
use crate::roots::{isolate_roots, reconstruct_rational, RootSystem};
use crate::sympoly::decompose;

pub const PRECISION: u32 = 128;
pub const NORM_BOUND: u32 = 8;

/// Test polynomials with their expected number of subgroups.
pub const CORPUS: [(&[i64], usize); 6] = [
    (&[-2, 0, 1], 2),
    (&[1, 0, 1], 2),
    (&[-2, 0, 0, 1], 6),
    (&[-1, -3, 0, 1], 2),
    (&[1, 0, 0, 0, 1], 5),
    (&[-2, 0, 0, 0, 1], 10),
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {}: {} [{}] {} ({:.2?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

fn timed(
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: impl FnOnce() -> Result<String, String>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail = format!("{detail}; exceeded {limit:?}");
        }
    }
    CriterionResult {
        id,
        title,
        pass,
        detail,
        elapsed,
    }
}

pub struct CorpusEntry {
    pub poly: UniPoly,
    pub expected_subgroups: usize,
    pub roots: RootSystem,
    pub field: SplittingField,
    pub report: CorrespondenceReport,
}

/// Builds the splitting field and correspondence report for each corpus polynomial.
pub fn build_corpus() -> Result<Vec<CorpusEntry>, String> {
    CORPUS
        .iter()
        .map(|(c, expected)| {
            let poly = UniPoly::from_ints(c);
            let roots = isolate_roots(&poly, PRECISION).map_err(|e| format!("{poly}: {e}"))?;
            let spec = search_resolvent(&roots, NORM_BOUND).map_err(|e| format!("{poly}: {e}"))?;
            let field =
                splitting_field(&poly, &spec, &roots).map_err(|e| format!("{poly}: {e}"))?;
            let report = correspondence_lattice(&field).map_err(|e| format!("{poly}: {e}"))?;
            Ok(CorpusEntry {
                poly,
                expected_subgroups: *expected,
                roots,
                field,
                report,
            })
        })
        .collect()
}

pub fn criterion_1() -> CriterionResult {
    timed(
        1,
        "quartic arrangement array",
        Some(Duration::from_secs(1)),
        || {
            let g = PermGroup::alternating(4);
            let v4 = PermGroup::klein_four();
            let blocks =
                arrangement_array(&g, &v4, &Arrangement::identity(4)).map_err(|e| e.to_string())?;
            let rows: BTreeSet<_> = blocks
                .iter()
                .flat_map(|b| b.arrangements.rows().to_vec())
                .collect();
            if rows.len() != 12
                || blocks.len() != 3
                || blocks.iter().any(|b| b.arrangements.len() != 4)
            {
                return Err(format!(
                    "{} arrangements in {} blocks",
                    rows.len(),
                    blocks.len()
                ));
            }
            for b in &blocks {
                let pi = substitution_group(&b.arrangements).map_err(|e| e.to_string())?;
                if pi != v4 {
                    return Err(format!(
                        "block {} has substitutions {:?}",
                        b.representative.cycle_string(),
                        pi.cycle_strings()
                    ));
                }
            }
            Ok("12 arrangements, 3 blocks of 4, each substitution group is V4".into())
        },
    )
}

pub fn criterion_2(corpus: &[CorpusEntry]) -> CriterionResult {
    timed(2, "L_H equals the fixed field", None, || {
        let mut count = 0;
        for e in corpus {
            for h in all_subgroups(&e.field.galois.group).map_err(|x| x.to_string())? {
                let a = field_from_subgroup(&h, &e.field).map_err(|x| x.to_string())?;
                let b = fixed_field(&h, &e.field).map_err(|x| x.to_string())?;
                if !fields_equal(&a, &b).map_err(|x| x.to_string())? {
                    return Err(format!("{}: subgroup {:?}", e.poly, h.cycle_strings()));
                }
                count += 1;
            }
        }
        Ok(format!(
            "{count} subgroups over {} polynomials",
            corpus.len()
        ))
    })
}

pub fn criterion_3(corpus: &[CorpusEntry]) -> CriterionResult {
    timed(3, "bijection and degree", None, || {
        let mut summary = Vec::new();
        for e in corpus {
            let d = e.field.degree();
            let fields: BTreeSet<Vec<Vec<Rational>>> = e
                .report
                .subgroups
                .iter()
                .map(|s| s.field.basis().clone())
                .collect();
            let subgroups = e.report.subgroups.len();
            if subgroups != e.expected_subgroups || fields.len() != subgroups {
                return Err(format!(
                    "{}: {} subgroups, {} subfields",
                    e.poly,
                    subgroups,
                    fields.len()
                ));
            }
            if let Some(s) = e
                .report
                .subgroups
                .iter()
                .find(|s| s.dim() * s.subgroup.order() != d)
            {
                return Err(format!(
                    "{}: dim {} with |H| = {}",
                    e.poly,
                    s.dim(),
                    s.subgroup.order()
                ));
            }
            summary.push(format!("{}: {subgroups}/{}", e.poly, fields.len()));
        }
        Ok(summary.join(", "))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "independence of the primitive element", None, || {
        let mut checked = 0;
        for c in [&[-2i64, 0, 1][..], &[-2, 0, 0, 1]] {
            let f = UniPoly::from_ints(c);
            let rs = isolate_roots(&f, PRECISION).map_err(|e| e.to_string())?;
            let specs: Vec<ResolventSpec> = admissible_specs(&rs, NORM_BOUND).take(2).collect();
            if specs.len() < 2 {
                return Err(format!("{f}: fewer than two admissible weight vectors"));
            }
            let a = splitting_field(&f, &specs[0], &rs).map_err(|e| e.to_string())?;
            let b = splitting_field(&f, &specs[1], &rs).map_err(|e| e.to_string())?;
            for h in all_subgroups(&a.galois.group).map_err(|e| e.to_string())? {
                if !primitive_independence_check(&h, &a, &b).map_err(|e| e.to_string())? {
                    return Err(format!("{f}: subgroup {:?}", h.cycle_strings()));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} subgroups agree"))
    })
}

pub fn criterion_5(corpus: &[CorpusEntry]) -> CriterionResult {
    timed(5, "distinct conjugate values", None, || {
        for e in corpus {
            let spec = &e.report.spec;
            let rs = certify_spec(&e.roots, spec).map_err(|x| format!("{}: {x}", e.poly))?;
            let n = rs.degree();
            let prec = rs.precision_bits() + 64;
            let balls: Vec<_> = PermGroup::symmetric(n)
                .elements()
                .iter()
                .map(|s| spec.value_ball(&rs, s, prec))
                .collect();
            let disjoint = (0..balls.len())
                .all(|i| (i + 1..balls.len()).all(|j| ball_disjoint(&balls[i], &balls[j])));
            if !disjoint {
                return Err(format!("{}: overlapping values", e.poly));
            }
            if n <= 3 {
                let cert =
                    exact_separation_certificate(&e.poly, spec).map_err(|x| x.to_string())?;
                if cert.is_zero() {
                    return Err(format!("{}: exact certificate is zero", e.poly));
                }
            }
        }
        Ok("balls disjoint; exact certificates nonzero for n <= 3".into())
    })
}

fn random_symmetric(rng: &mut ChaCha8Rng) -> MultiPoly {
    let n = rng.gen_range(1..=4usize);
    let mut p = MultiPoly::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let total = rng.gen_range(0..=8u32);
        let mut exps = vec![0u32; n];
        for _ in 0..total {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        for perm in PermGroup::symmetric(n).elements() {
            let permuted: Vec<u32> = (0..n).map(|i| exps[perm.apply(i)]).collect();
            p = &p + &MultiPoly::monomial(c.clone(), permuted);
        }
    }
    p
}

pub fn criterion_6() -> CriterionResult {
    timed(
        6,
        "symmetric decomposition round trip",
        Some(Duration::from_secs(30)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            for i in 0..200 {
                let p = random_symmetric(&mut rng);
                let q = decompose(&p).map_err(|e| format!("sample {i}: {e}"))?;
                if q.expand() != p {
                    return Err(format!("sample {i}: round trip differs"));
                }
            }
            let x = |i| MultiPoly::var(2, i);
            let sum_sq = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
            let diff = &x(0) - &x(1);
            let a = decompose(&sum_sq).map_err(|e| e.to_string())?.to_string();
            let b = decompose(&(&diff * &diff))
                .map_err(|e| e.to_string())?
                .to_string();
            if a != "E1^2 - 2*E2" || b != "E1^2 - 4*E2" {
                return Err(format!("got {a} and {b}"));
            }
            Ok("200 samples; E1^2 - 2*E2 and E1^2 - 4*E2".into())
        },
    )
}

pub fn criterion_7(corpus: &[CorpusEntry]) -> CriterionResult {
    timed(7, "averaging witness", None, || {
        let mut count = 0;
        for e in corpus {
            for h in all_subgroups(&e.field.galois.group).map_err(|x| x.to_string())? {
                let fixed = fixed_field(&h, &e.field).map_err(|x| x.to_string())?;
                for x in fixed.basis_elements() {
                    if !averaging_check(&x, &h, &e.field).map_err(|x| x.to_string())? {
                        return Err(format!("{}: element {x}", e.poly));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} basis elements"))
    })
}

/// Monic integer polynomial with the given integer roots times a random cofactor.
fn random_squarefree(rng: &mut ChaCha8Rng) -> (UniPoly, Vec<i64>) {
    loop {
        let degree = rng.gen_range(1..=6usize);
        let known = rng.gen_range(0..=degree.min(3));
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < known {
            let r = rng.gen_range(-10..=10);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut f = UniPoly::one();
        for &r in &roots {
            f = &f * &UniPoly::from_ints(&[-r, 1]);
        }
        let mut cofactor: Vec<i64> = (0..degree - known)
            .map(|_| rng.gen_range(-20..=20))
            .collect();
        cofactor.push(1);
        let f = &f * &UniPoly::from_ints(&cofactor);
        if f.is_squarefree() {
            return (f, roots);
        }
    }
}

pub fn criterion_8() -> CriterionResult {
    timed(
        8,
        "certified root isolation",
        Some(Duration::from_secs(60)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            let one = num_bigint::BigInt::from(1);
            for i in 0..100 {
                let (f, known) = random_squarefree(&mut rng);
                let rs = isolate_roots(&f, 64).map_err(|e| format!("sample {i} ({f}): {e}"))?;
                let n = f.degree().unwrap_or(0) as u32;
                for b in rs.enclosures() {
                    let value = f.eval_ball(&b.midpoint(), rs.working_precision());
                    if value.abs_upper() > b.radius().pow(n) {
                        return Err(format!("sample {i} ({f}): radius below |f(z)|^(1/n)"));
                    }
                }
                let e = rs.enclosures();
                if !(0..e.len()).all(|a| (a + 1..e.len()).all(|c| ball_disjoint(&e[a], &e[c]))) {
                    return Err(format!("sample {i} ({f}): overlapping enclosures"));
                }
                for r in &known {
                    let target = Rational::from(*r);
                    if !e
                        .iter()
                        .any(|b| reconstruct_rational(b, &one).as_ref() == Some(&target))
                    {
                        return Err(format!("sample {i} ({f}): root {r} not recovered"));
                    }
                }
            }
            Ok("100 polynomials certified".into())
        },
    )
}

/// Runs all criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    let start = Instant::now();
    let corpus = build_corpus();
    let build_time = start.elapsed();
    let mut out = vec![criterion_1()];
    match &corpus {
        Ok(c) => {
            let mut r2 = criterion_2(c);
            r2.elapsed += build_time;
            if r2.elapsed > Duration::from_secs(300) {
                r2.pass = false;
            }
            out.push(r2);
            out.push(criterion_3(c));
        }
        Err(e) => {
            for (id, title) in [
                (2, "L_H equals the fixed field"),
                (3, "bijection and degree"),
            ] {
                out.push(CriterionResult {
                    id,
                    title,
                    pass: false,
                    detail: e.clone(),
                    elapsed: build_time,
                });
            }
        }
    }
    out.push(criterion_4());
    match &corpus {
        Ok(c) => out.push(criterion_5(c)),
        Err(e) => out.push(CriterionResult {
            id: 5,
            title: "distinct conjugate values",
            pass: false,
            detail: e.clone(),
            elapsed: Duration::ZERO,
        }),
    }
    out.push(criterion_6());
    match &corpus {
        Ok(c) => out.push(criterion_7(c)),
        Err(e) => out.push(CriterionResult {
            id: 7,
            title: "averaging witness",
            pass: false,
            detail: e.clone(),
            elapsed: Duration::ZERO,
        }),
    }
    out.push(criterion_8());
    out
}
