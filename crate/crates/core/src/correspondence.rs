//! Subgroups and subfields of a splitting field.
//!
//! For a subgroup `H`, `L_H` is generated by the elementary symmetric values
//! of the conjugates `{s(V) : s in H}`, while `L^H` is the common fixed space
//! of the automorphisms in `H`. Both are kept as canonical echelon bases in
//! the power basis of `V`, so equality is a syntactic comparison.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use thiserror::Error;

use crate::arith::{Rational, RingElement};
use crate::groups::{all_subgroups, GroupError, PermGroup, Permutation};
use crate::linalg::{kernel, rref, Matrix};
use crate::numberfield::{NumberFieldElement, NumberFieldError, PowerTable, SplittingField};
use crate::poly::UniPoly;
use crate::resolvent::ResolventSpec;
use crate::sympoly::elementary_values;

/// Largest group for which every subset of automorphisms is tried when
/// counting fixed fields; larger groups use subsets of at most two.
pub const EXHAUSTIVE_SUBSET_ORDER: usize = 10;

/// Coefficient range for primitive element candidates.
const PRIMITIVE_COEFF_BOUND: i64 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrespondenceError {
    #[error("{0} is not an automorphism of the field")]
    NotInGroup(String),
    #[error("subfields belong to different fields")]
    AmbientMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("check {check} failed: {witness}")]
    Assertion { check: String, witness: String },
    #[error("isomorphism between primitive elements failed: {0}")]
    Isomorphism(String),
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn assertion(check: &str, witness: String) -> CorrespondenceError {
    CorrespondenceError::Assertion {
        check: check.to_string(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    basis: Matrix,
    pivots: Vec<usize>,
    /// Basis rows times `common`, as integers.
    scaled: Vec<Vec<BigInt>>,
    common: BigInt,
    modulus: Arc<UniPoly>,
}

impl Subfield {
    /// Canonical form of the span of `vectors`, verified to be a subring
    /// containing 1.
    pub fn from_span(
        vectors: &[Vec<Rational>],
        modulus: &Arc<UniPoly>,
    ) -> Result<Self, CorrespondenceError> {
        let (basis, pivots) = rref(vectors);
        let common = basis
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.numer() * (&common / c.denom()))
                    .collect()
            })
            .collect();
        let sub = Subfield {
            basis,
            pivots,
            scaled,
            common,
            modulus: Arc::clone(modulus),
        };
        let one = NumberFieldElement::constant(Rational::one(), modulus);
        if !sub.contains(&one) {
            return Err(assertion(
                "contains_one",
                format!("span of dimension {}", sub.dim()),
            ));
        }
        let elems = sub.basis_elements();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                let p = a * b;
                if !sub.contains(&p) {
                    return Err(assertion(
                        "multiplicative_closure",
                        format!("({a}) * ({b}) = {p}"),
                    ));
                }
            }
        }
        Ok(sub)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<NumberFieldElement> {
        self.basis
            .iter()
            .map(|row| NumberFieldElement::from_coeffs(row.clone(), &self.modulus))
            .collect()
    }

    /// In reduced echelon form the only candidate combination is
    /// `sum_k x[pivot_k] * row_k`; compare it with `x` in integers.
    pub fn contains(&self, x: &NumberFieldElement) -> bool {
        let den = x
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = x
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (0..ints.len()).all(|j| {
            let combo: BigInt = self
                .pivots
                .iter()
                .zip(&self.scaled)
                .filter(|(&p, _)| !ints[p].is_zero())
                .map(|(&p, row)| &ints[p] * &row[j])
                .sum();
            combo == &ints[j] * &self.common
        })
    }

    pub fn is_subfield_of(&self, other: &Subfield) -> bool {
        self.basis_elements().iter().all(|x| other.contains(x))
    }
}

fn automorphism_images(
    h: &PermGroup,
    sf: &SplittingField,
) -> Result<Vec<NumberFieldElement>, CorrespondenceError> {
    h.elements()
        .iter()
        .map(|s| {
            sf.automorphism(s)
                .map(|a| a.image.clone())
                .ok_or_else(|| CorrespondenceError::NotInGroup(s.cycle_string()))
        })
        .collect()
}

/// Generators `g_k = e_k(s_1(V), ..., s_m(V))` for `k = 1..m`.
pub fn conjugate_symmetric_values(
    h: &PermGroup,
    sf: &SplittingField,
) -> Result<Vec<NumberFieldElement>, CorrespondenceError> {
    let images = automorphism_images(h, sf)?;
    Ok(elementary_values(&images).into_iter().skip(1).collect())
}

/// The field generated by the symmetric functions of the `H`-conjugates of `V`.
pub fn field_from_subgroup(
    h: &PermGroup,
    sf: &SplittingField,
) -> Result<Subfield, CorrespondenceError> {
    let gens = conjugate_symmetric_values(h, sf)?;
    let mut vectors = vec![sf.constant(Rational::one()).coeffs().to_vec()];
    loop {
        let (basis, _) = rref(&vectors);
        let before = basis.len();
        let mut next = basis.clone();
        for row in &basis {
            let b = sf.element(row.clone());
            for g in &gens {
                next.push((&b * g).coeffs().to_vec());
            }
        }
        let (closed, _) = rref(&next);
        vectors = closed;
        if vectors.len() == before {
            return Subfield::from_span(&vectors, &sf.modulus);
        }
    }
}

fn fixed_space(perms: &[Permutation], sf: &SplittingField) -> Result<Matrix, CorrespondenceError> {
    let d = sf.degree();
    let mut rows = Vec::new();
    for s in perms {
        let m = sf
            .apply_matrix(s)
            .ok_or_else(|| CorrespondenceError::NotInGroup(s.cycle_string()))?;
        for (i, mut row) in m.into_iter().enumerate() {
            row[i] -= &Rational::one();
            rows.push(row);
        }
    }
    Ok(kernel(&rows, d))
}

/// Elements fixed by every automorphism in `h`.
pub fn fixed_field(h: &PermGroup, sf: &SplittingField) -> Result<Subfield, CorrespondenceError> {
    Subfield::from_span(&fixed_space(h.elements(), sf)?, &sf.modulus)
}

pub fn fields_equal(a: &Subfield, b: &Subfield) -> Result<bool, CorrespondenceError> {
    if a.modulus != b.modulus {
        return Err(CorrespondenceError::AmbientMismatch);
    }
    Ok(a.basis == b.basis)
}

/// Checks that `x` equals the average of its `H`-conjugates and that the
/// average lies in `L_H`.
pub fn averaging_check(
    x: &NumberFieldElement,
    h: &PermGroup,
    sf: &SplittingField,
) -> Result<bool, CorrespondenceError> {
    averaging_within(x, h, sf, &fixed_field(h, sf)?, &field_from_subgroup(h, sf)?)
}

fn averaging_within(
    x: &NumberFieldElement,
    h: &PermGroup,
    sf: &SplittingField,
    fixed: &Subfield,
    lh: &Subfield,
) -> Result<bool, CorrespondenceError> {
    if !fixed.contains(x) {
        return Err(CorrespondenceError::Precondition(format!(
            "{x} is not fixed by the subgroup"
        )));
    }
    let mut sum = sf.constant(Rational::zero());
    for s in h.elements() {
        let moved = sf
            .apply(s, x)
            .ok_or_else(|| CorrespondenceError::NotInGroup(s.cycle_string()))?;
        sum = &sum + &moved;
    }
    let average = sum.scale(&Rational::new(1, h.order() as i64));
    Ok(&average == x && lh.contains(&average))
}

/// Embedding of `other` into `target` sending the roots of `other` to the
/// same-labelled roots of `target`, given by the powers of the image of
/// `other`'s generator.
pub fn field_isomorphism(
    other: &SplittingField,
    target: &SplittingField,
) -> Result<PowerTable, CorrespondenceError> {
    if other.root_exprs.len() != target.root_exprs.len() {
        return Err(CorrespondenceError::Isomorphism(
            "different polynomials".into(),
        ));
    }
    let mut image = target.constant(Rational::zero());
    for (a, phi) in other.galois.spec.weights().iter().zip(&target.root_exprs) {
        image = &image + &phi.scale(&Rational::from(*a));
    }
    let table = PowerTable::new(&image);
    if !table.eval(&other.modulus).is_zero() {
        return Err(CorrespondenceError::Isomorphism(format!(
            "{image} is not a root of {}",
            other.modulus.display_with("V")
        )));
    }
    for (i, (src, dst)) in other.root_exprs.iter().zip(&target.root_exprs).enumerate() {
        if &table.substitute_into(src) != dst {
            return Err(CorrespondenceError::Isomorphism(format!(
                "root {} is not preserved",
                i + 1
            )));
        }
    }
    Ok(table)
}

/// Transports `L_H` of `other` into `sf` and compares it with `L_H` of `sf`.
pub fn primitive_independence_check(
    h: &PermGroup,
    sf: &SplittingField,
    other: &SplittingField,
) -> Result<bool, CorrespondenceError> {
    let iso = field_isomorphism(other, sf)?;
    let transported: Vec<Vec<Rational>> = field_from_subgroup(h, other)?
        .basis_elements()
        .iter()
        .map(|x| iso.substitute_into(x).coeffs().to_vec())
        .collect();
    let moved = Subfield::from_span(&transported, &sf.modulus)?;
    fields_equal(&moved, &field_from_subgroup(h, sf)?)
}

/// Minimal polynomial of `x` over the rationals, from the first linear
/// dependence among its powers.
pub fn minimal_polynomial(x: &NumberFieldElement) -> UniPoly {
    let mut powers = vec![x.pow(0).coeffs().to_vec()];
    let mut current = x.pow(0);
    loop {
        current = &current * x;
        powers.push(current.coeffs().to_vec());
        let k = powers.len();
        let rows: Matrix = (0..x.degree())
            .map(|i| powers.iter().map(|p| p[i].clone()).collect())
            .collect();
        if let Some(v) = kernel(&rows, k).into_iter().next() {
            let lead = v[k - 1].clone();
            return UniPoly::new(v.iter().map(|c| c / &lead).collect());
        }
    }
}

/// Integer vectors with at most `max_support` nonzero entries in
/// `[-bound, bound]`, ordered by support size, then support, then values.
fn small_combinations(len: usize, max_support: usize, bound: i64) -> Vec<Vec<i64>> {
    fn supports(
        len: usize,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            supports(len, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let values: Vec<i64> = (1..=bound).flat_map(|c| [c, -c]).collect();
    let mut out = Vec::new();
    for size in 1..=max_support.min(len) {
        let mut sups = Vec::new();
        supports(len, size, 0, &mut Vec::new(), &mut sups);
        for sup in sups {
            let mut idx = vec![0usize; size];
            loop {
                let mut v = vec![0i64; len];
                for (&pos, &j) in sup.iter().zip(&idx) {
                    v[pos] = values[j];
                }
                out.push(v);
                let Some(p) = (0..size).rev().find(|&p| idx[p] + 1 < values.len()) else {
                    break;
                };
                idx[p] += 1;
                for q in idx.iter_mut().skip(p + 1) {
                    *q = 0;
                }
            }
        }
    }
    out
}

/// A generator of `field` among small integer combinations of the `g_k`,
/// with its minimal polynomial.
pub fn primitive_element(
    field: &Subfield,
    gens: &[NumberFieldElement],
) -> Option<(NumberFieldElement, UniPoly)> {
    if field.dim() == 1 {
        let one = NumberFieldElement::constant(Rational::one(), &field.modulus);
        return Some((one.clone(), minimal_polynomial(&one)));
    }
    for combo in small_combinations(gens.len(), 3, PRIMITIVE_COEFF_BOUND) {
        let mut x = gens[0].zero_like();
        for (c, g) in combo.iter().zip(gens) {
            if *c != 0 {
                x = &x + &g.scale(&Rational::from(*c));
            }
        }
        let mp = minimal_polynomial(&x);
        if mp.degree() == Some(field.dim()) {
            return Some((x, mp));
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct SubgroupEntry {
    pub subgroup: PermGroup,
    pub field: Subfield,
    pub primitive: NumberFieldElement,
    pub primitive_min_poly: UniPoly,
    pub fixed_field_equal: bool,
}

impl SubgroupEntry {
    pub fn dim(&self) -> usize {
        self.field.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub polynomial: UniPoly,
    pub spec: ResolventSpec,
    pub min_poly: UniPoly,
    pub group: PermGroup,
    pub subgroups: Vec<SubgroupEntry>,
    pub checks: Vec<Check>,
}

impl CorrespondenceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn subsets_for_surjectivity(perms: &[Permutation]) -> Vec<Vec<Permutation>> {
    let n = perms.len();
    if n <= EXHAUSTIVE_SUBSET_ORDER {
        (0u32..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| perms[i].clone())
                    .collect()
            })
            .collect()
    } else {
        let mut out = vec![Vec::new()];
        for i in 0..n {
            out.push(vec![perms[i].clone()]);
            for j in i + 1..n {
                out.push(vec![perms[i].clone(), perms[j].clone()]);
            }
        }
        out
    }
}

/// Builds both fields for every subgroup and certifies the correspondence.
pub fn correspondence_lattice(
    sf: &SplittingField,
) -> Result<CorrespondenceReport, CorrespondenceError> {
    let g = &sf.galois.group;
    let d = sf.degree();
    let mut checks = Vec::new();
    let mut pass = |name: &str| {
        checks.push(Check {
            name: name.to_string(),
            pass: true,
        })
    };

    let mut composition_ok = true;
    for a in &sf.automorphisms {
        for b in &sf.automorphisms {
            let product = sf.automorphism(&a.perm.compose(&b.perm)).ok_or_else(|| {
                assertion(
                    "composition_closure",
                    a.perm.compose(&b.perm).cycle_string(),
                )
            })?;
            composition_ok &= a.apply(&b.image) == product.image;
        }
    }
    if !composition_ok {
        return Err(assertion(
            "composition_closure",
            "automorphism images do not compose".into(),
        ));
    }
    pass("composition_closure");

    let subgroups = all_subgroups(g)?;
    let mut entries: Vec<SubgroupEntry> = Vec::with_capacity(subgroups.len());
    let mut fixed_fields = Vec::with_capacity(subgroups.len());
    for h in &subgroups {
        let lh = field_from_subgroup(h, sf)?;
        let fixed = fixed_field(h, sf)?;
        let equal = fields_equal(&lh, &fixed)?;
        if !equal {
            return Err(assertion(
                "fixed_field_equality",
                h.cycle_strings().join(" "),
            ));
        }
        let gens = conjugate_symmetric_values(h, sf)?;
        let (primitive, primitive_min_poly) = primitive_element(&lh, &gens)
            .ok_or_else(|| assertion("primitive_elements", h.cycle_strings().join(" ")))?;
        entries.push(SubgroupEntry {
            subgroup: h.clone(),
            field: lh,
            primitive,
            primitive_min_poly,
            fixed_field_equal: equal,
        });
        fixed_fields.push(fixed);
    }
    pass("fixed_field_equality");
    pass("primitive_elements");

    for e in &entries {
        if e.dim() * e.subgroup.order() != d {
            return Err(assertion(
                "degree",
                format!("dim {} * |H| {} != {d}", e.dim(), e.subgroup.order()),
            ));
        }
    }
    pass("degree");

    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if a.field == b.field {
                return Err(assertion(
                    "injectivity",
                    format!(
                        "{{{}}} and {{{}}}",
                        a.subgroup.cycle_strings().join(" "),
                        b.subgroup.cycle_strings().join(" ")
                    ),
                ));
            }
        }
    }
    pass("injectivity");

    for a in &entries {
        for b in &entries {
            if a.subgroup != b.subgroup
                && a.subgroup.is_subgroup_of(&b.subgroup)
                && !b.field.is_subfield_of(&a.field)
            {
                return Err(assertion(
                    "inclusion_reversal",
                    format!(
                        "{{{}}} in {{{}}}",
                        a.subgroup.cycle_strings().join(" "),
                        b.subgroup.cycle_strings().join(" ")
                    ),
                ));
            }
        }
    }
    pass("inclusion_reversal");

    let mut kernels: Vec<Subfield> = Vec::new();
    for subset in subsets_for_surjectivity(g.elements()) {
        let k = Subfield::from_span(&fixed_space(&subset, sf)?, &sf.modulus)?;
        if !kernels.contains(&k) {
            kernels.push(k);
        }
    }
    if kernels.len() != entries.len() {
        return Err(assertion(
            "surjectivity",
            format!(
                "{} fixed fields for {} subgroups",
                kernels.len(),
                entries.len()
            ),
        ));
    }
    if let Some(k) = kernels
        .iter()
        .find(|k| !entries.iter().any(|e| &e.field == *k))
    {
        return Err(assertion(
            "surjectivity",
            format!("fixed field of dimension {} has no subgroup", k.dim()),
        ));
    }
    pass("surjectivity");

    for e in &entries {
        let basis = e.field.basis_elements();
        let stabilizer: Vec<Permutation> = sf
            .automorphisms
            .iter()
            .filter(|a| basis.iter().all(|x| &a.apply(x) == x))
            .map(|a| a.perm.clone())
            .collect();
        let gal = PermGroup::from_elements(g.degree(), stabilizer)?;
        if gal != e.subgroup {
            return Err(assertion(
                "subfield_galois_group",
                e.subgroup.cycle_strings().join(" "),
            ));
        }
    }
    pass("subfield_galois_group");

    for e in &entries {
        let basis = e.field.basis_elements();
        let sum = basis
            .iter()
            .fold(sf.constant(Rational::zero()), |acc, x| &acc + x);
        for x in basis.iter().chain(std::iter::once(&sum)) {
            if x.is_zero() {
                continue;
            }
            if !e.field.contains(&x.inverse()?) {
                return Err(assertion("inverse_closure", format!("1/({x})")));
            }
        }
    }
    pass("inverse_closure");

    for (e, fixed) in entries.iter().zip(&fixed_fields) {
        for x in e.field.basis_elements() {
            if !averaging_within(&x, &e.subgroup, sf, fixed, &e.field)? {
                return Err(assertion("averaging", format!("{x}")));
            }
        }
    }
    pass("averaging");

    Ok(CorrespondenceReport {
        polynomial: sf.roots.poly().clone(),
        spec: sf.galois.spec.clone(),
        min_poly: sf.galois.min_poly.clone(),
        group: g.clone(),
        subgroups: entries,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::splitting_field;
    use crate::resolvent::search_resolvent;
    use crate::roots::isolate_roots;

    fn field(c: &[i64]) -> SplittingField {
        let f = UniPoly::from_ints(c);
        let rs = isolate_roots(&f, 128).unwrap();
        let spec = search_resolvent(&rs, 8).unwrap();
        splitting_field(&f, &spec, &rs).unwrap()
    }

    #[test]
    fn trivial_and_full_subgroups() {
        let sf = field(&[-2, 0, 0, 1]);
        let g = sf.galois.group.clone();
        assert_eq!(field_from_subgroup(&g, &sf).unwrap().dim(), 1);
        assert_eq!(fixed_field(&g, &sf).unwrap().dim(), 1);
        let triv = PermGroup::trivial(3);
        assert_eq!(field_from_subgroup(&triv, &sf).unwrap().dim(), 6);
        assert_eq!(fixed_field(&triv, &sf).unwrap().dim(), 6);
        let whole = fixed_field(&triv, &sf).unwrap();
        let q = fixed_field(&g, &sf).unwrap();
        assert!(!fields_equal(&whole, &q).unwrap());
        assert!(fields_equal(&q, &q).unwrap());
    }

    #[test]
    fn quadratic_subfield_of_cube_root_two() {
        let sf = field(&[-2, 0, 0, 1]);
        let a3 = PermGroup::alternating(3);
        let l = field_from_subgroup(&a3, &sf).unwrap();
        assert_eq!(l.dim(), 2);
        let u = l
            .basis_elements()
            .into_iter()
            .find(|x| !x.is_rational())
            .unwrap();
        let mp = minimal_polynomial(&u);
        assert_eq!(mp.degree(), Some(2));
        // discriminant of the quadratic is -3 times a rational square
        let (b, c) = (mp.coeff(1), mp.coeff(0));
        let disc = &(&b * &b) - &(&c * &Rational::from(4));
        let ratio = &disc / &Rational::from(-3);
        let (num, den) = (ratio.numer().clone(), ratio.denom().clone());
        assert!(num.sign() == num_bigint::Sign::Plus);
        assert_eq!(num.sqrt().pow(2), num);
        assert_eq!(den.sqrt().pow(2), den);
        assert!(averaging_check(&u, &a3, &sf).unwrap());
    }

    #[test]
    fn averaging_requires_fixed_element() {
        let sf = field(&[-2, 0, 1]);
        let g = sf.galois.group.clone();
        assert!(averaging_check(&sf.constant(Rational::from(5)), &g, &sf).unwrap());
        assert!(averaging_check(&sf.generator(), &PermGroup::trivial(2), &sf).unwrap());
        assert!(matches!(
            averaging_check(&sf.generator(), &g, &sf),
            Err(CorrespondenceError::Precondition(_))
        ));
    }

    #[test]
    fn lattice_of_cube_root_two() {
        let sf = field(&[-2, 0, 0, 1]);
        let report = correspondence_lattice(&sf).unwrap();
        let mut dims: Vec<usize> = report.subgroups.iter().map(SubgroupEntry::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 3, 3, 3, 6]);
        assert!(report.all_pass());
    }

    #[test]
    fn independence_for_sqrt_two() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let rs = isolate_roots(&f, 128).unwrap();
        let a = splitting_field(&f, &ResolventSpec::new(vec![0, 1]), &rs).unwrap();
        let b = splitting_field(&f, &ResolventSpec::new(vec![1, 0]), &rs).unwrap();
        for h in all_subgroups(&a.galois.group).unwrap() {
            assert!(primitive_independence_check(&h, &a, &b).unwrap());
        }
    }

    #[test]
    fn combination_order() {
        let c = small_combinations(2, 2, 1);
        assert_eq!(
            c,
            vec![
                vec![1, 0],
                vec![-1, 0],
                vec![0, 1],
                vec![0, -1],
                vec![1, 1],
                vec![1, -1],
                vec![-1, 1],
                vec![-1, -1]
            ]
        );
    }
}
