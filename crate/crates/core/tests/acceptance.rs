//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use galois_cert::arith::{ball_disjoint, ComplexBall, Rational};
use galois_cert::correspondence::{
    averaging_check, field_from_subgroup, fields_equal, fixed_field, primitive_independence_check,
    CorrespondenceError,
};
use galois_cert::groups::{
    all_subgroups, arrangement_array, substitution_group, Arrangement, PermGroup, Permutation,
};
use galois_cert::numberfield::{splitting_field, SplittingField};
use galois_cert::poly::{MultiPoly, UniPoly};
use galois_cert::resolvent::{
    admissible_specs, certify_spec, exact_separation_certificate, search_resolvent,
};
use galois_cert::roots::{isolate_roots, reconstruct_rational};
use galois_cert::sympoly::decompose;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRECISION: u32 = 128;
const NORM_BOUND: u32 = 8;

/// Wall-clock limits per criterion.
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(300);
const LIMIT_6: Duration = Duration::from_secs(30);
const LIMIT_8: Duration = Duration::from_secs(60);

/// Corpus polynomials (ascending coefficients) and expected subgroup counts.
const CORPUS: [(&str, &[i64], usize); 6] = [
    ("x^2 - 2", &[-2, 0, 1], 2),
    ("x^2 + 1", &[1, 0, 1], 2),
    ("x^3 - 2", &[-2, 0, 0, 1], 6),
    ("x^3 - 3x - 1", &[-1, -3, 0, 1], 2),
    ("x^4 + 1", &[1, 0, 0, 0, 1], 5),
    ("x^4 - 2", &[-2, 0, 0, 0, 1], 10),
];

type Outcome = Result<String, String>;

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

// Plain permutation helpers on image vectors, independent of the library.

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Every subset of `g` that contains the identity and is closed under composition.
fn brute_force_subgroups(g: &[Vec<usize>]) -> Vec<BTreeSet<Vec<usize>>> {
    let n = g[0].len();
    let id: Vec<usize> = (0..n).collect();
    let others: Vec<&Vec<usize>> = g.iter().filter(|p| **p != id).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << others.len() {
        let mut set: BTreeSet<Vec<usize>> = (0..others.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| others[i].clone())
            .collect();
        set.insert(id.clone());
        if set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&compose(a, b))))
        {
            out.push(set);
        }
    }
    out
}

fn to_group(n: usize, set: &BTreeSet<Vec<usize>>) -> PermGroup {
    PermGroup::from_elements(n, set.iter().map(|p| Permutation::new(p.clone()).unwrap())).unwrap()
}

struct Entry {
    name: &'static str,
    poly: UniPoly,
    expected: usize,
    field: SplittingField,
}

fn build_corpus() -> Result<Vec<Entry>, String> {
    CORPUS
        .iter()
        .map(|&(name, c, expected)| {
            let poly = UniPoly::from_ints(c);
            let rs = isolate_roots(&poly, PRECISION).map_err(err(name))?;
            let spec = search_resolvent(&rs, NORM_BOUND).map_err(err(name))?;
            let field = splitting_field(&poly, &spec, &rs).map_err(err(name))?;
            Ok(Entry {
                name,
                poly,
                expected,
                field,
            })
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let a4: Vec<Vec<usize>> = all_perms(4).into_iter().filter(|p| is_even(p)).collect();
    let v4: BTreeSet<Vec<usize>> = [
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ]
    .into();
    let g = PermGroup::from_elements(4, a4.iter().map(|p| Permutation::new(p.clone()).unwrap()))
        .unwrap();
    let h = to_group(4, &v4);
    let blocks = arrangement_array(&g, &h, &Arrangement::identity(4)).map_err(|e| e.to_string())?;
    let rows: BTreeSet<Vec<usize>> = blocks
        .iter()
        .flat_map(|b| b.arrangements.rows().iter().map(|r| r.order().to_vec()))
        .collect();
    if rows.len() != 12 || blocks.len() != 3 || blocks.iter().any(|b| b.arrangements.len() != 4) {
        return Err(format!(
            "{} arrangements in {} blocks",
            rows.len(),
            blocks.len()
        ));
    }
    if rows != a4.iter().cloned().collect() {
        return Err("arrangements are not the even orderings".into());
    }
    for b in &blocks {
        let pi = substitution_group(&b.arrangements).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<usize>> = pi.elements().iter().map(|p| p.images().to_vec()).collect();
        // letter substitution beta o alpha^-1 between every pair of rows
        let mut oracle = BTreeSet::new();
        for alpha in b.arrangements.rows() {
            for beta in b.arrangements.rows() {
                oracle.insert(compose(beta.order(), &inverse(alpha.order())));
            }
        }
        if got != v4 || oracle != v4 {
            return Err(format!(
                "block {}: substitutions {:?}",
                b.representative.cycle_string(),
                got
            ));
        }
    }
    Ok("12 arrangements in 3 blocks of 4; every substitution group is the Klein four-group".into())
}

fn criterion_2(corpus: &[Entry]) -> Outcome {
    let mut count = 0;
    for e in corpus {
        let sf = &e.field;
        for h in all_subgroups(&sf.galois.group).map_err(err(e.name))? {
            let lh = field_from_subgroup(&h, sf).map_err(err(e.name))?;
            let fixed = fixed_field(&h, sf).map_err(err(e.name))?;
            if !fields_equal(&lh, &fixed).map_err(err(e.name))? {
                return Err(format!("{}: subgroup {:?}", e.name, h.cycle_strings()));
            }
            for x in lh.basis_elements() {
                for s in h.elements() {
                    if sf.apply(s, &x).as_ref() != Some(&x) {
                        return Err(format!("{}: {} moves {x}", e.name, s.cycle_string()));
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} subgroups over {} polynomials",
        corpus.len()
    ))
}

fn criterion_3(corpus: &[Entry]) -> Outcome {
    let mut summary = Vec::new();
    for e in corpus {
        let sf = &e.field;
        let n = e.poly.degree().unwrap();
        let d = sf.degree();
        let g: Vec<Vec<usize>> = sf
            .galois
            .group
            .elements()
            .iter()
            .map(|p| p.images().to_vec())
            .collect();
        let oracle = brute_force_subgroups(&g);
        let library = all_subgroups(&sf.galois.group).map_err(err(e.name))?;
        if oracle.len() != e.expected || library.len() != e.expected {
            return Err(format!(
                "{}: {} subgroups by brute force, {} from the library",
                e.name,
                oracle.len(),
                library.len()
            ));
        }
        let mut fields = BTreeSet::new();
        for set in &oracle {
            let lh = field_from_subgroup(&to_group(n, set), sf).map_err(err(e.name))?;
            if lh.dim() * set.len() != d {
                return Err(format!(
                    "{}: dim {} with |H| = {} and degree {d}",
                    e.name,
                    lh.dim(),
                    set.len()
                ));
            }
            fields.insert(lh.basis().clone());
        }
        if fields.len() != oracle.len() {
            return Err(format!(
                "{}: {} subfields for {} subgroups",
                e.name,
                fields.len(),
                oracle.len()
            ));
        }
        summary.push(format!("{} {}/{}", e.name, oracle.len(), fields.len()));
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for (name, c) in [("x^2 - 2", &[-2i64, 0, 1][..]), ("x^3 - 2", &[-2, 0, 0, 1])] {
        let f = UniPoly::from_ints(c);
        let rs = isolate_roots(&f, PRECISION).map_err(err(name))?;
        let specs: Vec<_> = admissible_specs(&rs, NORM_BOUND).take(2).collect();
        if specs.len() < 2 || specs[0] == specs[1] {
            return Err(format!("{name}: fewer than two distinct weight vectors"));
        }
        let a = splitting_field(&f, &specs[0], &rs).map_err(err(name))?;
        let b = splitting_field(&f, &specs[1], &rs).map_err(err(name))?;
        for h in all_subgroups(&a.galois.group).map_err(err(name))? {
            if !primitive_independence_check(&h, &a, &b).map_err(err(name))? {
                return Err(format!("{name}: subgroup {:?}", h.cycle_strings()));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} subgroups agree under two weight vectors"
    ))
}

fn criterion_5(corpus: &[Entry]) -> Outcome {
    for e in corpus {
        let spec = &e.field.galois.spec;
        let rs = certify_spec(&e.field.roots, spec).map_err(err(e.name))?;
        let n = rs.degree();
        let prec = rs.precision_bits() + 64;
        let balls: Vec<ComplexBall> = PermGroup::symmetric(n)
            .elements()
            .iter()
            .map(|s| spec.value_ball(&rs, s, prec))
            .collect();
        if balls.len() != (1..=n).product::<usize>() {
            return Err(format!("{}: {} conjugate values", e.name, balls.len()));
        }
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if !ball_disjoint(&balls[i], &balls[j]) {
                    return Err(format!("{}: values {i} and {j} overlap", e.name));
                }
            }
        }
        if n <= 3 {
            let exact = exact_separation_certificate(&e.poly, spec).map_err(err(e.name))?;
            let mut product = ComplexBall::from_int(1);
            for i in 0..balls.len() {
                for j in i + 1..balls.len() {
                    let diff = balls[i].sub(&balls[j], prec);
                    product = product.mul(&diff.mul(&diff, prec), prec);
                }
            }
            if exact.is_zero() || !product.contains(&exact, &Rational::zero()) {
                return Err(format!(
                    "{}: exact certificate {exact} disagrees with {product}",
                    e.name
                ));
            }
        }
    }
    Ok("all conjugate balls disjoint; exact certificates nonzero and enclosed for n <= 3".into())
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
        let orbit: BTreeSet<Vec<u32>> = all_perms(n)
            .iter()
            .map(|s| s.iter().map(|&i| exps[i]).collect())
            .collect();
        for m in orbit {
            p = &p + &MultiPoly::monomial(c.clone(), m);
        }
    }
    p
}

/// `e_1..e_n` of a point, from the expansion of `prod (1 + x_i t)`.
fn elementary_at(point: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for x in point {
        let mut next = e.clone();
        next.push(Rational::zero());
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * x);
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let p = random_symmetric(&mut rng);
        let q = decompose(&p).map_err(|e| format!("sample {i}: {e}"))?;
        if q.expand() != p {
            return Err(format!("sample {i}: expansion differs from {p}"));
        }
        for _ in 0..3 {
            let point: Vec<Rational> = (0..p.nvars())
                .map(|_| Rational::new(rng.gen_range(-7..=7), rng.gen_range(1..=3)))
                .collect();
            let via_e = q
                .evaluate(&elementary_at(&point))
                .map_err(|e| format!("sample {i}: {e}"))?;
            if via_e != p.eval(&point) {
                return Err(format!("sample {i}: values differ at {point:?}"));
            }
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
    Ok("200 samples round trip; x1^2+x2^2 = E1^2 - 2*E2, (x1-x2)^2 = E1^2 - 4*E2".into())
}

fn criterion_7(corpus: &[Entry]) -> Outcome {
    let mut count = 0;
    for e in corpus {
        let sf = &e.field;
        for h in all_subgroups(&sf.galois.group).map_err(err(e.name))? {
            for x in fixed_field(&h, sf).map_err(err(e.name))?.basis_elements() {
                if !averaging_check(&x, &h, sf).map_err(err(e.name))? {
                    return Err(format!("{}: {x}", e.name));
                }
                count += 1;
            }
            if h.order() > 1
                && !matches!(
                    averaging_check(&sf.generator(), &h, sf),
                    Err(CorrespondenceError::Precondition(_))
                )
            {
                return Err(format!(
                    "{}: generator accepted as fixed by {:?}",
                    e.name,
                    h.cycle_strings()
                ));
            }
        }
    }
    Ok(format!(
        "{count} spanning elements averaged back to themselves"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8007);
    let one = BigInt::from(1);
    let mut samples = 0;
    while samples < 100 {
        let degree = rng.gen_range(1..=6usize);
        let known = rng.gen_range(0..=degree.min(3));
        let mut roots: BTreeSet<i64> = BTreeSet::new();
        while roots.len() < known {
            roots.insert(rng.gen_range(-12..=12));
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
        if !f.is_squarefree() {
            continue;
        }
        samples += 1;
        let rs = isolate_roots(&f, 64).map_err(err(&f.to_string()))?;
        let balls = rs.enclosures();
        if balls.len() != degree {
            return Err(format!("{f}: {} balls", balls.len()));
        }
        for b in balls {
            let value = f.eval_ball(&b.midpoint(), rs.working_precision());
            if value.abs_upper() > b.radius().pow(degree as u32) {
                return Err(format!("{f}: radius below |f(z)|^(1/n) at {b}"));
            }
        }
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if !ball_disjoint(&balls[i], &balls[j]) {
                    return Err(format!("{f}: balls {i} and {j} overlap"));
                }
            }
        }
        for &r in &roots {
            let target = Rational::from(r);
            let hits = balls
                .iter()
                .filter(|b| b.contains(&target, &Rational::zero()))
                .count();
            let recovered = balls
                .iter()
                .any(|b| reconstruct_rational(b, &one).as_ref() == Some(&target));
            if hits != 1 || !recovered {
                return Err(format!(
                    "{f}: root {r} in {hits} balls, recovered {recovered}"
                ));
            }
        }
    }
    Ok(format!("{samples} squarefree polynomials certified"))
}

/// Runs one criterion; `setup` is time already spent on its inputs.
fn report(
    id: u8,
    title: &str,
    limit: Option<Duration>,
    setup: Duration,
    run: impl FnOnce() -> Outcome,
) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed() + setup;
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail = format!("{detail}; took longer than {limit:?}");
        }
    }
    let status = if pass { "PASS" } else { "FAIL" };
    let bound = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
    println!("criterion {id}: {status} [{title}] {detail} ({elapsed:.2?}{bound})");
    pass
}

fn main() -> ExitCode {
    let mut ok = report(
        1,
        "quartic arrangement array",
        Some(LIMIT_1),
        Duration::ZERO,
        criterion_1,
    );
    let start = Instant::now();
    let corpus = build_corpus();
    let build = start.elapsed();
    ok &= report(
        2,
        "L_H equals the fixed field",
        Some(LIMIT_2),
        build,
        || {
            corpus
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|c| criterion_2(c))
        },
    );
    ok &= report(3, "bijection and degree", None, Duration::ZERO, || {
        corpus
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|c| criterion_3(c))
    });
    ok &= report(
        4,
        "independence of the weight vector",
        None,
        Duration::ZERO,
        criterion_4,
    );
    ok &= report(5, "distinct conjugate values", None, Duration::ZERO, || {
        corpus
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|c| criterion_5(c))
    });
    ok &= report(
        6,
        "symmetric decomposition round trip",
        Some(LIMIT_6),
        Duration::ZERO,
        criterion_6,
    );
    ok &= report(7, "averaging witness", None, Duration::ZERO, || {
        corpus
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|c| criterion_7(c))
    });
    ok &= report(
        8,
        "certified root isolation",
        Some(LIMIT_8),
        Duration::ZERO,
        criterion_8,
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
