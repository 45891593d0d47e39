//! Signature catalogs: abstract bordisms with declared signatures.
//!
//! A catalog bordism lists the labels of its incoming and outgoing closed
//! components and carries an integer signature. Disjoint union and gluing
//! add signatures, and gluing requires the labels to match. There is a single
//! field on every bordism, whose action is the signature in the additive
//! monoid of integers, so each state sum is a Kronecker delta.
//!
//! [`signature_of_form`] computes the signature of a symmetric integer
//! matrix; [`signature_oracle`] recomputes it from the characteristic
//! polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{ActionSystem, BordismModel, CylinderShape, FieldSystem};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{Category, Mor};

/// Most labels per side for which isomorphisms are enumerated.
const ISO_LABEL_LIMIT: usize = 5;

/// A catalog bordism `in → out` with signature `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogBordism {
    #[serde(rename = "in", default)]
    pub incoming: Vec<String>,
    #[serde(rename = "out", default)]
    pub outgoing: Vec<String>,
    pub signature: i64,
}

/// A reordering of incoming and outgoing labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    /// Incoming label `i` of the source goes to position `incoming[i]`.
    pub incoming: Vec<usize>,
    pub outgoing: Vec<usize>,
}

/// The model of catalog bordisms over a pool of closed labels.
#[derive(Clone, Debug)]
pub struct CatalogModel {
    pub labels: Vec<String>,
    pub max_boundary: usize,
}

impl Default for CatalogModel {
    fn default() -> Self {
        CatalogModel { labels: vec!["S3".into(), "T3".into(), "L31".into()], max_boundary: 2 }
    }
}

impl CatalogModel {
    fn random_labels(&self, n: usize, rng: &mut dyn RngCore) -> Vec<String> {
        (0..n).map(|_| self.labels.choose(rng).expect("labels").clone()).collect()
    }

    fn random_side(&self, rng: &mut dyn RngCore) -> Vec<String> {
        let n = rng.gen_range(0..=self.max_boundary);
        self.random_labels(n, rng)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Maps sending `from[i]` to a position of `to` with the same label.
fn label_matchings(from: &[String], to: &[String]) -> Vec<Vec<usize>> {
    if from.len() != to.len() || from.len() > ISO_LABEL_LIMIT {
        return Vec::new();
    }
    permutations(from.len()).into_iter().filter(|p| p.iter().enumerate().all(|(i, &j)| from[i] == to[j])).collect()
}

impl BordismModel for CatalogModel {
    type Bordism = CatalogBordism;
    type Closed = Vec<String>;
    type Homeo = LabelMap;

    fn name(&self) -> String {
        "signature-catalog".into()
    }

    fn incoming(&self, w: &CatalogBordism) -> Vec<String> {
        w.incoming.clone()
    }

    fn outgoing(&self, w: &CatalogBordism) -> Vec<String> {
        w.outgoing.clone()
    }

    fn empty(&self) -> CatalogBordism {
        CatalogBordism { incoming: Vec::new(), outgoing: Vec::new(), signature: 0 }
    }

    fn empty_closed(&self) -> Vec<String> {
        Vec::new()
    }

    fn disjoint(&self, a: &CatalogBordism, b: &CatalogBordism) -> Result<CatalogBordism> {
        Ok(CatalogBordism {
            incoming: [a.incoming.clone(), b.incoming.clone()].concat(),
            outgoing: [a.outgoing.clone(), b.outgoing.clone()].concat(),
            signature: a.signature + b.signature,
        })
    }

    fn disjoint_closed(&self, m: &Vec<String>, n: &Vec<String>) -> Vec<String> {
        [m.clone(), n.clone()].concat()
    }

    fn glue(&self, a: &CatalogBordism, b: &CatalogBordism) -> Result<CatalogBordism> {
        if a.outgoing != b.incoming {
            return Err(Error::BoundaryMismatch(format!("outgoing {:?} does not match incoming {:?}", a.outgoing, b.incoming)));
        }
        Ok(CatalogBordism { incoming: a.incoming.clone(), outgoing: b.outgoing.clone(), signature: a.signature + b.signature })
    }

    fn cylinder(&self, m: &Vec<String>, shape: CylinderShape) -> Result<CatalogBordism> {
        let double = [m.clone(), m.clone()].concat();
        let (incoming, outgoing) = match shape {
            CylinderShape::Straight => (m.clone(), m.clone()),
            CylinderShape::Cup => (Vec::new(), double),
            CylinderShape::Cap => (double, Vec::new()),
        };
        Ok(CatalogBordism { incoming, outgoing, signature: 0 })
    }

    fn homeomorphisms(&self, a: &CatalogBordism, b: &CatalogBordism) -> Result<Vec<LabelMap>> {
        if a.signature != b.signature {
            return Ok(Vec::new());
        }
        let ins = label_matchings(&a.incoming, &b.incoming);
        let outs = label_matchings(&a.outgoing, &b.outgoing);
        Ok(ins.iter().flat_map(|i| outs.iter().map(move |o| LabelMap { incoming: i.clone(), outgoing: o.clone() })).collect())
    }

    fn identity_homeo(&self, w: &CatalogBordism) -> LabelMap {
        LabelMap { incoming: (0..w.incoming.len()).collect(), outgoing: (0..w.outgoing.len()).collect() }
    }

    fn compose_homeo(&self, psi: &LabelMap, phi: &LabelMap) -> LabelMap {
        LabelMap { incoming: phi.incoming.iter().map(|&i| psi.incoming[i]).collect(), outgoing: phi.outgoing.iter().map(|&i| psi.outgoing[i]).collect() }
    }

    fn scramble(&self, w: &CatalogBordism, rng: &mut dyn RngCore) -> (CatalogBordism, LabelMap) {
        let mut pi: Vec<usize> = (0..w.incoming.len()).collect();
        let mut po: Vec<usize> = (0..w.outgoing.len()).collect();
        pi.shuffle(rng);
        po.shuffle(rng);
        let place = |labels: &[String], p: &[usize]| {
            let mut out = labels.to_vec();
            for (i, &j) in p.iter().enumerate() {
                out[j] = labels[i].clone();
            }
            out
        };
        let w2 = CatalogBordism { incoming: place(&w.incoming, &pi), outgoing: place(&w.outgoing, &po), signature: w.signature };
        (w2, LabelMap { incoming: pi, outgoing: po })
    }

    fn relabel_boundary(&self, w: &CatalogBordism, perm_in: &[usize], perm_out: &[usize]) -> Result<(CatalogBordism, LabelMap)> {
        let invert = |perm: &[usize], n: usize| -> Result<Vec<usize>> {
            if perm.is_empty() {
                return Ok((0..n).collect());
            }
            let mut inv = vec![usize::MAX; n];
            if perm.len() != n {
                return Err(Error::InvalidParams("boundary relabeling has the wrong length".into()));
            }
            for (i, &j) in perm.iter().enumerate() {
                if j >= n || inv[j] != usize::MAX {
                    return Err(Error::InvalidParams("boundary relabeling is not a permutation".into()));
                }
                inv[j] = i;
            }
            Ok(inv)
        };
        let (ii, io) = (invert(perm_in, w.incoming.len())?, invert(perm_out, w.outgoing.len())?);
        let pick = |labels: &[String], perm: &[usize]| if perm.is_empty() { labels.to_vec() } else { perm.iter().map(|&i| labels[i].clone()).collect() };
        let w2 = CatalogBordism { incoming: pick(&w.incoming, perm_in), outgoing: pick(&w.outgoing, perm_out), signature: w.signature };
        Ok((w2, LabelMap { incoming: ii, outgoing: io }))
    }

    fn closed_size(&self, m: &Vec<String>) -> usize {
        m.len()
    }

    fn sample_bordism(&self, rng: &mut dyn RngCore) -> CatalogBordism {
        CatalogBordism { incoming: self.random_side(rng), outgoing: self.random_side(rng), signature: rng.gen_range(-4..=4) }
    }

    fn sample_glue_pair(&self, rng: &mut dyn RngCore) -> (CatalogBordism, CatalogBordism) {
        let a = self.sample_bordism(rng);
        let b = CatalogBordism { incoming: a.outgoing.clone(), outgoing: self.random_side(rng), signature: rng.gen_range(-4..=4) };
        (a, b)
    }

    fn sample_closed(&self, rng: &mut dyn RngCore) -> Vec<String> {
        self.random_side(rng)
    }

    fn sample_coboundary(&self, m: &Vec<String>, rng: &mut dyn RngCore) -> Result<CatalogBordism> {
        Ok(CatalogBordism { incoming: Vec::new(), outgoing: m.clone(), signature: rng.gen_range(-4..=4) })
    }

    fn render(&self, w: &CatalogBordism) -> Value {
        serde_json::to_value(w).expect("serializable")
    }

    fn render_closed(&self, m: &Vec<String>) -> Value {
        json!(m)
    }
}

/// The single-field system on catalog bordisms.
#[derive(Clone, Debug, Default)]
pub struct SingleField {
    model: CatalogModel,
}

impl SingleField {
    pub fn new(model: CatalogModel) -> SingleField {
        SingleField { model }
    }

    fn check(field: &Key) -> Result<()> {
        if *field != Key::unit() {
            return Err(Error::FieldNotOnBordism(format!("{field} is not the unique field")));
        }
        Ok(())
    }
}

impl FieldSystem for SingleField {
    type Model = CatalogModel;

    fn model(&self) -> &CatalogModel {
        &self.model
    }

    fn name(&self) -> String {
        "single-field".into()
    }

    fn fields_on_bordism(&self, _: &CatalogBordism) -> Result<Vec<Key>> {
        Ok(vec![Key::unit()])
    }

    fn fields_on_closed(&self, _: &Vec<String>) -> Result<Vec<Key>> {
        Ok(vec![Key::unit()])
    }

    fn restrict_in(&self, _: &CatalogBordism, field: &Key) -> Result<Key> {
        Self::check(field)?;
        Ok(Key::unit())
    }

    fn restrict_out(&self, _: &CatalogBordism, field: &Key) -> Result<Key> {
        Self::check(field)?;
        Ok(Key::unit())
    }

    fn split_disjoint(&self, _: &CatalogBordism, _: &CatalogBordism, field: &Key) -> Result<(Key, Key)> {
        Self::check(field)?;
        Ok((Key::unit(), Key::unit()))
    }

    fn join_disjoint(&self, _: &CatalogBordism, _: &CatalogBordism, fa: &Key, fb: &Key) -> Result<Key> {
        Self::check(fa)?;
        Self::check(fb)?;
        Ok(Key::unit())
    }

    fn split_closed(&self, _: &Vec<String>, _: &Vec<String>, field: &Key) -> Result<(Key, Key)> {
        Self::check(field)?;
        Ok((Key::unit(), Key::unit()))
    }

    fn join_closed(&self, _: &Vec<String>, _: &Vec<String>, f: &Key, g: &Key) -> Result<Key> {
        Self::check(f)?;
        Self::check(g)?;
        Ok(Key::unit())
    }

    fn split_glue(&self, a: &CatalogBordism, b: &CatalogBordism, field: &Key) -> Result<(Key, Key)> {
        self.split_disjoint(a, b, field)
    }

    fn join_glue(&self, a: &CatalogBordism, b: &CatalogBordism, fa: &Key, fb: &Key) -> Result<Option<Key>> {
        self.join_disjoint(a, b, fa, fb).map(Some)
    }

    fn pullback(&self, _: &LabelMap, _: &CatalogBordism, _: &CatalogBordism, field: &Key) -> Result<Key> {
        Self::check(field)?;
        Ok(Key::unit())
    }

    fn pullback_boundary(&self, _: &LabelMap, _: &CatalogBordism, _: &CatalogBordism, field: &Key) -> Result<Key> {
        if *field != Key::pair(Key::unit(), Key::unit()) {
            return Err(Error::FieldNotOnBordism(format!("{field} is not the unique boundary field")));
        }
        Ok(field.clone())
    }

    fn subdivision_invariant(&self) -> bool {
        true
    }
}

/// The signature action into the additive monoid of integers.
#[derive(Clone, Debug)]
pub struct SignatureAction {
    category: Arc<Category>,
}

impl Default for SignatureAction {
    fn default() -> Self {
        SignatureAction { category: Arc::new(Category::Integers) }
    }
}

impl ActionSystem<CatalogModel> for SignatureAction {
    fn category(&self) -> &Arc<Category> {
        &self.category
    }

    fn act(&self, w: &CatalogBordism, field: &Key) -> Result<Mor> {
        SingleField::check(field)?;
        Ok(Mor::Int(w.signature))
    }
}

fn rational_matrix(m: &[Vec<i64>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect())
}

/// The signature of a symmetric integer matrix by exact symmetric
/// elimination. A nonzero diagonal pivot contributes its sign. When the
/// diagonal vanishes, a nonzero off-diagonal entry spans a hyperbolic plane,
/// which contributes `0` and is split off by a 2×2 block pivot.
pub fn signature_of_form(m: &[Vec<i64>]) -> Result<i64> {
    let mut a = rational_matrix(m)?;
    let mut sig = 0i64;
    while !a.is_empty() {
        let n = a.len();
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let p = a[i][i].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            a = rest.iter().map(|&r| rest.iter().map(|&c| &a[r][c] - &a[r][i] * &a[i][c] / &p).collect()).collect();
            continue;
        }
        let Some((i, j)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        // Block [[0, b], [b, 0]] with inverse [[0, 1/b], [1/b, 0]].
        let b = a[i][j].clone();
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        a = rest
            .iter()
            .map(|&r| rest.iter().map(|&c| &a[r][c] - (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &b).collect())
            .collect();
    }
    Ok(sig)
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

/// Remainder of `a` divided by `b` (coefficients low degree first).
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Sign of `p` at `+∞` (`at_neg = false`) or `−∞`.
fn sign_at_infinity(p: &Poly, at_neg: bool) -> i32 {
    let Some(lead) = p.last() else { return 0 };
    let s = if lead.is_positive() { 1 } else { -1 };
    if at_neg && (p.len() - 1) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_at_zero(p: &Poly) -> i32 {
    match p.first() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of `p` in `(0, ∞)` and `(−∞, 0)`, for `p(0) ≠ 0`,
/// from the Sturm sequence.
fn sturm_counts(p: &Poly) -> (usize, usize) {
    let mut seq = vec![p.clone(), derivative(p)];
    while !seq.last().expect("nonempty").is_empty() {
        let n = seq.len();
        let r: Poly = poly_rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|q| !q.is_empty());
    let v_zero = sign_changes(seq.iter().map(sign_at_zero));
    let v_pos = sign_changes(seq.iter().map(|q| sign_at_infinity(q, false)));
    let v_neg = sign_changes(seq.iter().map(|q| sign_at_infinity(q, true)));
    (v_zero - v_pos, v_neg - v_zero)
}

/// The characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &[Vec<i64>]) -> Result<Vec<BigRational>> {
    let a = rational_matrix(m)?;
    let n = a.len();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j])).collect()).collect()
    };
    // coeffs[k] is the coefficient of x^(n-k).
    let mut coeffs = vec![BigRational::one()];
    let mut mk: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for k in 1..=n {
        let am = mul(&a, &mk);
        let trace = (0..n).fold(BigRational::zero(), |s, i| s + &am[i][i]);
        let c = -trace / BigRational::from_integer(BigInt::from(k));
        coeffs.push(c.clone());
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
    }
    coeffs.reverse();
    Ok(coeffs)
}

/// The signature as (positive − negative) eigenvalue counts with
/// multiplicity, from Sturm sequences of the characteristic polynomial and
/// its successive gcds with derivatives.
pub fn signature_oracle(m: &[Vec<i64>]) -> Result<i64> {
    let mut p = trim(characteristic_polynomial(m)?);
    let (mut pos, mut neg) = (0usize, 0usize);
    while p.len() > 1 {
        let mut q = p.clone();
        while q.first().is_some_and(|c| c.is_zero()) {
            q.remove(0);
        }
        let (a, b) = sturm_counts(&q);
        pos += a;
        neg += b;
        let g = gcd(&p, &derivative(&p));
        let lead = g.last().expect("nonzero").clone();
        p = g.into_iter().map(|c| c / &lead).collect();
    }
    Ok(pos as i64 - neg as i64)
}

/// The `E₈` lattice form (Cartan matrix).
pub fn e8_form() -> Vec<Vec<i64>> {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut m = vec![vec![0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        m[i][j] = -1;
        m[j][i] = -1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures_of_standard_forms() {
        assert_eq!(signature_of_form(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]).unwrap(), 1);
        assert_eq!(signature_of_form(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(signature_of_form(&e8_form()).unwrap(), 8);
        assert_eq!(signature_oracle(&e8_form()).unwrap(), 8);
        assert_eq!(signature_of_form(&[]).unwrap(), 0);
        assert_eq!(signature_of_form(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
    }

    #[test]
    fn non_symmetric_forms_are_rejected() {
        assert!(matches!(signature_of_form(&[vec![0, 1], vec![2, 0]]), Err(Error::NotSymmetric)));
        assert!(matches!(signature_oracle(&[vec![1, 2]]), Err(Error::NotSymmetric)));
    }

    #[test]
    fn oracle_counts_repeated_eigenvalues() {
        assert_eq!(signature_oracle(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]).unwrap(), 1);
        assert_eq!(signature_oracle(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        assert_eq!(signature_oracle(&[vec![-2, 0, 0, 0], vec![0, -2, 0, 0], vec![0, 0, -2, 0], vec![0, 0, 0, 3]]).unwrap(), -2);
    }

    #[test]
    fn characteristic_polynomial_of_hyperbolic_plane() {
        let p = characteristic_polynomial(&[vec![0, 1], vec![1, 0]]).unwrap();
        let ints: Vec<BigInt> = p.iter().map(|c| c.to_integer()).collect();
        assert_eq!(ints, vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)]);
    }
}
