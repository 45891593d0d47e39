//! A carrier-agnostic semiring interface and its randomized law checker.

use std::fmt::Debug;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::report::LawReport;

/// A semiring whose operations may reject foreign values.
///
/// Implemented by [`super::Descriptor`] and by the two convolution products,
/// so a single law checker serves every layer.
pub trait Semiring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// The summation law on a finite family.
    fn sum(&self, family: &[Self::Elem]) -> Result<Self::Elem> {
        let mut acc = self.zero();
        for x in family {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    fn render(&self, a: &Self::Elem) -> Value {
        json!(format!("{a:?}"))
    }
}

/// Checks the semiring axioms and the finite complete-monoid laws.
///
/// Each of `samples` rounds draws fresh elements with `gen` and records one
/// case per law in `report`: associativity and commutativity of `+`,
/// associativity of `·`, two-sided distributivity, absorbing zero, neutral
/// units, the empty/singleton/pair cases of the summation law, the partition
/// law on families of size at most 16 split into random two-level partitions,
/// distributivity over whole families, zerosumfreeness, and the exchange of
/// row and column sums.
pub fn check_semiring_laws<S, R, G>(s: &S, samples: usize, rng: &mut R, mut gen: G, report: &mut LawReport)
where
    S: Semiring,
    R: Rng,
    G: FnMut(&mut R) -> S::Elem,
{
    let r = |x: &S::Elem| s.render(x);
    let zero = s.zero();
    let one = s.one();
    report.record_result("sum-empty", s.sum(&[]).map(|z| z == zero), || json!({}));
    for _ in 0..samples {
        let a = gen(rng);
        let b = gen(rng);
        let c = gen(rng);
        let abc = || json!({ "a": r(&a), "b": r(&b), "c": r(&c) });

        let lhs = s.add(&a, &b).and_then(|ab| s.add(&ab, &c));
        let rhs = s.add(&b, &c).and_then(|bc| s.add(&a, &bc));
        report.record_result("add-associativity", eq(lhs, rhs), abc);

        report.record_result("add-commutativity", eq(s.add(&a, &b), s.add(&b, &a)), abc);

        let lhs = s.mul(&a, &b).and_then(|ab| s.mul(&ab, &c));
        let rhs = s.mul(&b, &c).and_then(|bc| s.mul(&a, &bc));
        report.record_result("mul-associativity", eq(lhs, rhs), abc);

        let lhs = s.add(&b, &c).and_then(|bc| s.mul(&a, &bc));
        let rhs = s.mul(&a, &b).and_then(|ab| s.mul(&a, &c).and_then(|ac| s.add(&ab, &ac)));
        report.record_result("left-distributivity", eq(lhs, rhs), abc);

        let lhs = s.add(&b, &c).and_then(|bc| s.mul(&bc, &a));
        let rhs = s.mul(&b, &a).and_then(|ba| s.mul(&c, &a).and_then(|ca| s.add(&ba, &ca)));
        report.record_result("right-distributivity", eq(lhs, rhs), abc);

        let absorbs = s.mul(&zero, &a).and_then(|x| s.mul(&a, &zero).map(|y| x == zero && y == zero));
        report.record_result("zero-absorbing", absorbs, abc);

        let neutral = s.mul(&one, &a).and_then(|x| s.mul(&a, &one).map(|y| x == a && y == a));
        report.record_result("one-neutral", neutral, abc);

        let add_neutral = s.add(&zero, &a).and_then(|x| s.add(&a, &zero).map(|y| x == a && y == a));
        report.record_result("zero-neutral", add_neutral, abc);

        report.record_result("sum-singleton", s.sum(std::slice::from_ref(&a)).map(|x| x == a), abc);
        report.record_result("sum-pair", eq(s.sum(&[a.clone(), b.clone()]), s.add(&a, &b)), abc);

        let zsf = s.add(&a, &b).map(|ab| !s.is_zero(&ab) || (s.is_zero(&a) && s.is_zero(&b)));
        report.record_result("zerosumfree", zsf, abc);

        let family: Vec<S::Elem> = (0..rng.gen_range(0..=16)).map(|_| gen(rng)).collect();
        let blocks = random_two_level_partition(rng, family.len());
        let partition_ok = (|| -> Result<bool> {
            let total = s.sum(&family)?;
            let mut block_sums = Vec::with_capacity(blocks.len());
            for block in &blocks {
                let mut inner = Vec::with_capacity(block.len());
                for sub in block {
                    let items: Vec<S::Elem> = sub.iter().map(|&i| family[i].clone()).collect();
                    inner.push(s.sum(&items)?);
                }
                block_sums.push(s.sum(&inner)?);
            }
            Ok(s.sum(&block_sums)? == total)
        })();
        report.record_result("partition-law", partition_ok, || {
            json!({ "family": family.iter().map(r).collect::<Vec<_>>(), "partition": blocks })
        });

        let dist_ok = (|| -> Result<bool> {
            let total = s.sum(&family)?;
            let left: Vec<S::Elem> = family.iter().map(|x| s.mul(&a, x)).collect::<Result<_>>()?;
            let right: Vec<S::Elem> = family.iter().map(|x| s.mul(x, &a)).collect::<Result<_>>()?;
            Ok(s.mul(&a, &total)? == s.sum(&left)? && s.mul(&total, &a)? == s.sum(&right)?)
        })();
        report.record_result("infinite-distributivity", dist_ok, || {
            json!({ "scalar": r(&a), "family": family.iter().map(r).collect::<Vec<_>>() })
        });

        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let grid: Vec<Vec<S::Elem>> = (0..rows).map(|_| (0..cols).map(|_| gen(rng)).collect()).collect();
        let fubini_ok = (|| -> Result<bool> {
            let row_sums: Vec<S::Elem> = grid.iter().map(|row| s.sum(row)).collect::<Result<_>>()?;
            let col_sums: Vec<S::Elem> = (0..cols)
                .map(|j| s.sum(&grid.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
                .collect::<Result<_>>()?;
            Ok(s.sum(&row_sums)? == s.sum(&col_sums)?)
        })();
        report.record_result("fubini", fubini_ok, || {
            json!({ "grid": grid.iter().map(|row| row.iter().map(r).collect::<Vec<_>>()).collect::<Vec<_>>() })
        });
    }
}

fn eq<T: PartialEq>(x: Result<T>, y: Result<T>) -> Result<bool> {
    Ok(x? == y?)
}

/// Splits `0..n` into shuffled blocks, each split again into sub-blocks.
fn random_two_level_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let outer = rng.gen_range(1..=4usize);
    let mut blocks: Vec<Vec<Vec<usize>>> = (0..outer).map(|_| vec![Vec::new(), Vec::new()]).collect();
    for i in idx {
        let b = rng.gen_range(0..outer);
        let sb = rng.gen_range(0..2);
        blocks[b][sb].push(i);
    }
    blocks
}
