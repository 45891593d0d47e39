//! Strict monoidal categories.
//!
//! Two presentations are supported. A [`TableCategory`] lists its objects and
//! morphisms with explicit composition and tensor tables. Rule-form categories
//! compute composition and tensor: the integers under addition, the grid
//! `{0, 1/k, …, 1}` under `max`, the trivial monoid, and the skeletal category
//! of exact rational matrices whose objects are dimensions and whose tensor is
//! the Kronecker product.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::LawReport;

/// Morphisms of the category of exact rational matrices: a `rows × cols`
/// matrix is a morphism from `cols` to `rows`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatMorphism {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl MatMorphism {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<MatMorphism> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len())));
        }
        Ok(MatMorphism { rows, cols, entries })
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Result<MatMorphism> {
        MatMorphism::new(rows, cols, entries.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    /// A `1×1` matrix.
    pub fn scalar(x: BigRational) -> MatMorphism {
        MatMorphism { rows: 1, cols: 1, entries: vec![x] }
    }

    pub fn identity(n: usize) -> MatMorphism {
        let entries = (0..n * n).map(|i| if i / n == i % n { BigRational::one() } else { BigRational::zero() }).collect();
        MatMorphism { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    /// Matrix product `self · other`, that is `self ∘ other`.
    pub fn compose(&self, other: &MatMorphism) -> Result<MatMorphism> {
        if self.cols != other.rows {
            return Err(Error::NonComposable(format!("{}x{} after {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut entries = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    entries[i * other.cols + j] += a * other.entry(k, j);
                }
            }
        }
        Ok(MatMorphism { rows: self.rows, cols: other.cols, entries })
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &MatMorphism) -> MatMorphism {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![BigRational::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        entries[(i * other.rows + p) * cols + j * other.cols + q] = a * other.entry(p, q);
                    }
                }
            }
        }
        MatMorphism { rows, cols, entries }
    }
}

impl fmt::Display for MatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                let r = self.entry(i, j);
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())?;
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())?;
                }
            }
        }
        f.write_str("]")
    }
}

/// A morphism of some category. Table-form morphisms are compared by id,
/// rule-form morphisms by payload.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mor {
    /// Index into a table-form category.
    Id(u32),
    /// An integer of the integer monoid.
    Int(i64),
    /// Numerator `n` of the grid value `n/k`.
    Grid(u32),
    /// The only morphism of the trivial monoid.
    Star,
    /// A matrix of the matrix category.
    Mat(MatMorphism),
}

/// An object of some category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    Id(u32),
    /// The single object of a rule-form monoid.
    Unit,
    /// A dimension of the matrix category.
    Dim(usize),
}

/// A morphism record of a table-form category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorRecord {
    pub name: String,
    pub dom: u32,
    pub cod: u32,
}

/// A finite strict monoidal category given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorRecord>,
    /// `(β, α) ↦ β∘α`, defined exactly on composable pairs.
    comp: BTreeMap<(u32, u32), u32>,
    identities: Vec<u32>,
    tensor_obj: Vec<Vec<u32>>,
    tensor_mor: Vec<Vec<u32>>,
    unit: u32,
    index: HashMap<String, u32>,
}

/// JSON form of a table-form category.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSpec {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorSpec>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[β, α, β∘α]`.
    pub compose: Vec<[String; 3]>,
    /// Triples `[X, Y, X⊗Y]`.
    pub tensor_objects: Vec<[String; 3]>,
    /// Triples `[α, β, α⊗β]`.
    pub tensor_morphisms: Vec<[String; 3]>,
    pub unit: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

impl TableCategory {
    /// Builds the tables and checks their shape: names resolve, composition is
    /// defined exactly on composable pairs with the right typing, identities
    /// are endomorphisms, and both tensor tables are total.
    pub fn from_spec(spec: &TableSpec) -> Result<TableCategory> {
        let bad = |m: String| Error::InvalidCategory(m);
        let obj_index: HashMap<&str, u32> = spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i as u32)).collect();
        if obj_index.len() != spec.objects.len() || spec.objects.is_empty() {
            return Err(bad("object ids must be distinct and nonempty".into()));
        }
        let obj = |s: &str| obj_index.get(s).copied().ok_or_else(|| bad(format!("unknown object `{s}`")));
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for (i, m) in spec.morphisms.iter().enumerate() {
            if index.insert(m.id.clone(), i as u32).is_some() {
                return Err(bad(format!("duplicate morphism `{}`", m.id)));
            }
            morphisms.push(MorRecord { name: m.id.clone(), dom: obj(&m.dom)?, cod: obj(&m.cod)? });
        }
        let mor = |s: &str| index.get(s).copied().ok_or_else(|| bad(format!("unknown morphism `{s}`")));
        let mut identities = vec![u32::MAX; spec.objects.len()];
        for (o, m) in &spec.identities {
            let (o, m) = (obj(o)?, mor(m)?);
            let rec = &morphisms[m as usize];
            if rec.dom != o || rec.cod != o {
                return Err(bad(format!("identity `{}` is not an endomorphism of `{}`", rec.name, spec.objects[o as usize])));
            }
            identities[o as usize] = m;
        }
        if let Some(o) = identities.iter().position(|&m| m == u32::MAX) {
            return Err(bad(format!("object `{}` has no identity", spec.objects[o])));
        }
        let mut comp = BTreeMap::new();
        for [b, a, r] in &spec.compose {
            let (b, a, r) = (mor(b)?, mor(a)?, mor(r)?);
            let (rb, ra, rr) = (&morphisms[b as usize], &morphisms[a as usize], &morphisms[r as usize]);
            if ra.cod != rb.dom {
                return Err(bad(format!("composition entry for non-composable pair ({}, {})", rb.name, ra.name)));
            }
            if rr.dom != ra.dom || rr.cod != rb.cod {
                return Err(bad(format!("{} ∘ {} has the wrong type", rb.name, ra.name)));
            }
            if comp.insert((b, a), r).is_some() {
                return Err(bad(format!("duplicate composition entry for ({}, {})", rb.name, ra.name)));
            }
        }
        for (a, ra) in morphisms.iter().enumerate() {
            for (b, rb) in morphisms.iter().enumerate() {
                if ra.cod == rb.dom && !comp.contains_key(&(b as u32, a as u32)) {
                    return Err(bad(format!("missing composition {} ∘ {}", rb.name, ra.name)));
                }
            }
        }
        let n_obj = spec.objects.len();
        let mut tensor_obj = vec![vec![u32::MAX; n_obj]; n_obj];
        for [x, y, z] in &spec.tensor_objects {
            tensor_obj[obj(x)? as usize][obj(y)? as usize] = obj(z)?;
        }
        if tensor_obj.iter().flatten().any(|&z| z == u32::MAX) {
            return Err(bad("object tensor table is not total".into()));
        }
        let n_mor = morphisms.len();
        let mut tensor_mor = vec![vec![u32::MAX; n_mor]; n_mor];
        for [a, b, c] in &spec.tensor_morphisms {
            tensor_mor[mor(a)? as usize][mor(b)? as usize] = mor(c)?;
        }
        if tensor_mor.iter().flatten().any(|&z| z == u32::MAX) {
            return Err(bad("morphism tensor table is not total".into()));
        }
        Ok(TableCategory {
            name: spec.name.clone(),
            objects: spec.objects.clone(),
            morphisms,
            comp,
            identities,
            tensor_obj,
            tensor_mor,
            unit: obj(&spec.unit)?,
            index,
        })
    }

    pub fn to_spec(&self) -> TableSpec {
        let m = |i: u32| self.morphisms[i as usize].name.clone();
        let o = |i: u32| self.objects[i as usize].clone();
        let mut tensor_objects = Vec::new();
        for (x, row) in self.tensor_obj.iter().enumerate() {
            for (y, &z) in row.iter().enumerate() {
                tensor_objects.push([o(x as u32), o(y as u32), o(z)]);
            }
        }
        let mut tensor_morphisms = Vec::new();
        for (a, row) in self.tensor_mor.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                tensor_morphisms.push([m(a as u32), m(b as u32), m(c)]);
            }
        }
        TableSpec {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.iter().map(|r| MorSpec { id: r.name.clone(), dom: o(r.dom), cod: o(r.cod) }).collect(),
            identities: self.identities.iter().enumerate().map(|(x, &i)| (o(x as u32), m(i))).collect(),
            compose: self.comp.iter().map(|(&(b, a), &r)| [m(b), m(a), m(r)]).collect(),
            tensor_objects,
            tensor_morphisms,
            unit: o(self.unit),
        }
    }

    pub fn morphism_id(&self, name: &str) -> Option<Mor> {
        self.index.get(name).map(|&i| Mor::Id(i))
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }
}

/// A strict monoidal category in table or rule form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Category {
    Table(TableCategory),
    /// `(ℤ, +)` as a one-object category with `∘ = ⊗ = +`.
    Integers,
    /// `{0, 1/k, …, 1}` with `∘ = ⊗ = max` and unit `0`.
    GridMax { k: u32 },
    /// The one-morphism category.
    Trivial,
    /// Objects are dimensions, morphisms rational matrices, tensor is Kronecker.
    Matrix,
}

/// The name used in the data model.
pub type StrictMonCat = Category;

impl Category {
    pub fn name(&self) -> String {
        match self {
            Category::Table(t) => t.name.clone(),
            Category::Integers => "integer-monoid".into(),
            Category::GridMax { k } => format!("grid-max-monoid({k})"),
            Category::Trivial => "trivial-monoid".into(),
            Category::Matrix => "matrix-category".into(),
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self, Category::Table(_))
    }

    pub fn as_table(&self) -> Option<&TableCategory> {
        match self {
            Category::Table(t) => Some(t),
            _ => None,
        }
    }

    /// True for categories with exactly one object, that is monoids.
    pub fn is_one_object(&self) -> bool {
        match self {
            Category::Table(t) => t.objects.len() == 1,
            Category::Matrix => false,
            _ => true,
        }
    }

    pub fn contains(&self, m: &Mor) -> bool {
        match (self, m) {
            (Category::Table(t), Mor::Id(i)) => (*i as usize) < t.morphisms.len(),
            (Category::Integers, Mor::Int(_)) => true,
            (Category::GridMax { k }, Mor::Grid(n)) => n <= k,
            (Category::Trivial, Mor::Star) => true,
            (Category::Matrix, Mor::Mat(_)) => true,
            _ => false,
        }
    }

    fn check(&self, m: &Mor) -> Result<()> {
        if self.contains(m) {
            Ok(())
        } else {
            Err(Error::NotInCategory(format!("{m:?} in {}", self.name())))
        }
    }

    pub fn dom(&self, m: &Mor) -> Result<Obj> {
        self.check(m)?;
        Ok(match (self, m) {
            (Category::Table(t), Mor::Id(i)) => Obj::Id(t.morphisms[*i as usize].dom),
            (Category::Matrix, Mor::Mat(a)) => Obj::Dim(a.cols),
            _ => Obj::Unit,
        })
    }

    pub fn cod(&self, m: &Mor) -> Result<Obj> {
        self.check(m)?;
        Ok(match (self, m) {
            (Category::Table(t), Mor::Id(i)) => Obj::Id(t.morphisms[*i as usize].cod),
            (Category::Matrix, Mor::Mat(a)) => Obj::Dim(a.rows),
            _ => Obj::Unit,
        })
    }

    /// `β ∘ α`.
    pub fn compose(&self, beta: &Mor, alpha: &Mor) -> Result<Mor> {
        self.check(beta)?;
        self.check(alpha)?;
        match (self, beta, alpha) {
            (Category::Table(t), Mor::Id(b), Mor::Id(a)) => t.comp.get(&(*b, *a)).map(|&r| Mor::Id(r)).ok_or_else(|| {
                Error::NonComposable(format!("{} ∘ {}", t.morphisms[*b as usize].name, t.morphisms[*a as usize].name))
            }),
            (Category::Integers, Mor::Int(b), Mor::Int(a)) => Ok(Mor::Int(b + a)),
            (Category::GridMax { .. }, Mor::Grid(b), Mor::Grid(a)) => Ok(Mor::Grid(*b.max(a))),
            (Category::Trivial, _, _) => Ok(Mor::Star),
            (Category::Matrix, Mor::Mat(b), Mor::Mat(a)) => Ok(Mor::Mat(b.compose(a)?)),
            _ => unreachable!("membership checked"),
        }
    }

    /// `α ⊗ β`.
    pub fn tensor(&self, alpha: &Mor, beta: &Mor) -> Result<Mor> {
        self.check(alpha)?;
        self.check(beta)?;
        Ok(match (self, alpha, beta) {
            (Category::Table(t), Mor::Id(a), Mor::Id(b)) => Mor::Id(t.tensor_mor[*a as usize][*b as usize]),
            (Category::Integers, Mor::Int(a), Mor::Int(b)) => Mor::Int(a + b),
            (Category::GridMax { .. }, Mor::Grid(a), Mor::Grid(b)) => Mor::Grid(*a.max(b)),
            (Category::Trivial, _, _) => Mor::Star,
            (Category::Matrix, Mor::Mat(a), Mor::Mat(b)) => Mor::Mat(a.kron(b)),
            _ => unreachable!("membership checked"),
        })
    }

    pub fn contains_obj(&self, x: &Obj) -> bool {
        match (self, x) {
            (Category::Table(t), Obj::Id(i)) => (*i as usize) < t.objects.len(),
            (Category::Matrix, Obj::Dim(_)) => true,
            (Category::Table(_), _) | (Category::Matrix, _) => false,
            (_, Obj::Unit) => true,
            _ => false,
        }
    }

    fn check_obj(&self, x: &Obj) -> Result<()> {
        if self.contains_obj(x) {
            Ok(())
        } else {
            Err(Error::NotInCategory(format!("object {x:?} in {}", self.name())))
        }
    }

    /// `X ⊗ Y` on objects.
    pub fn tensor_obj(&self, x: &Obj, y: &Obj) -> Result<Obj> {
        self.check_obj(x)?;
        self.check_obj(y)?;
        Ok(match (self, x, y) {
            (Category::Table(t), Obj::Id(a), Obj::Id(b)) => Obj::Id(t.tensor_obj[*a as usize][*b as usize]),
            (Category::Matrix, Obj::Dim(a), Obj::Dim(b)) => Obj::Dim(a * b),
            _ => Obj::Unit,
        })
    }

    pub fn identity(&self, x: &Obj) -> Result<Mor> {
        self.check_obj(x)?;
        Ok(match (self, x) {
            (Category::Table(t), Obj::Id(i)) => Mor::Id(t.identities[*i as usize]),
            (Category::Integers, _) => Mor::Int(0),
            (Category::GridMax { .. }, _) => Mor::Grid(0),
            (Category::Trivial, _) => Mor::Star,
            (Category::Matrix, Obj::Dim(n)) => Mor::Mat(MatMorphism::identity(*n)),
            _ => unreachable!("membership checked"),
        })
    }

    /// The unit object `I`.
    pub fn unit(&self) -> Obj {
        match self {
            Category::Table(t) => Obj::Id(t.unit),
            Category::Matrix => Obj::Dim(1),
            _ => Obj::Unit,
        }
    }

    /// `id_I`.
    pub fn unit_identity(&self) -> Mor {
        self.identity(&self.unit()).expect("unit object belongs to the category")
    }

    pub fn is_identity(&self, m: &Mor) -> bool {
        match self.dom(m) {
            Ok(x) => self.identity(&x).map(|id| id == *m).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// All objects, or `None` when there are infinitely many.
    pub fn objects(&self) -> Option<Vec<Obj>> {
        match self {
            Category::Table(t) => Some((0..t.objects.len() as u32).map(Obj::Id).collect()),
            Category::Matrix => None,
            _ => Some(vec![Obj::Unit]),
        }
    }

    /// All morphisms, or `None` when there are infinitely many.
    pub fn morphisms(&self) -> Option<Vec<Mor>> {
        match self {
            Category::Table(t) => Some((0..t.morphisms.len() as u32).map(Mor::Id).collect()),
            Category::GridMax { k } => Some((0..=*k).map(Mor::Grid).collect()),
            Category::Trivial => Some(vec![Mor::Star]),
            Category::Integers | Category::Matrix => None,
        }
    }

    pub fn render_mor(&self, m: &Mor) -> String {
        match (self, m) {
            (Category::Table(t), Mor::Id(i)) if (*i as usize) < t.morphisms.len() => t.morphisms[*i as usize].name.clone(),
            (Category::GridMax { k }, Mor::Grid(n)) => {
                let r = BigRational::new(BigInt::from(*n), BigInt::from(*k));
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (_, Mor::Int(v)) => v.to_string(),
            (_, Mor::Star) => "id".into(),
            (_, Mor::Mat(a)) => a.to_string(),
            (_, other) => format!("{other:?}"),
        }
    }

    pub fn render_obj(&self, x: &Obj) -> String {
        match (self, x) {
            (Category::Table(t), Obj::Id(i)) if (*i as usize) < t.objects.len() => t.objects[*i as usize].clone(),
            (_, Obj::Dim(n)) => n.to_string(),
            (_, Obj::Unit) => "I".into(),
            (_, other) => format!("{other:?}"),
        }
    }

    /// Inverse of [`Category::render_mor`] for every form except matrices.
    pub fn parse_mor(&self, s: &str) -> Result<Mor> {
        let bad = || Error::Parse(format!("`{s}` is not a morphism of {}", self.name()));
        match self {
            Category::Table(t) => t.morphism_id(s).ok_or_else(bad),
            Category::Integers => s.trim().parse().map(Mor::Int).map_err(|_| bad()),
            Category::GridMax { k } => {
                let (p, q): (i64, i64) = match s.split_once('/') {
                    Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
                    None => (s.trim().parse().map_err(|_| bad())?, 1),
                };
                if q <= 0 || p < 0 || (p * *k as i64) % q != 0 || p * *k as i64 / q > *k as i64 {
                    return Err(bad());
                }
                Ok(Mor::Grid((p * *k as i64 / q) as u32))
            }
            Category::Trivial => (s == "id").then_some(Mor::Star).ok_or_else(bad),
            Category::Matrix => Err(Error::Unsupported("parsing matrix morphisms".into())),
        }
    }

    /// A random morphism. Rule-form samples stay in small windows.
    pub fn sample_mor<R: Rng + ?Sized>(&self, rng: &mut R) -> Mor {
        match self {
            Category::Table(t) => Mor::Id(rng.gen_range(0..t.morphisms.len() as u32)),
            Category::Integers => Mor::Int(rng.gen_range(-5..=5)),
            Category::GridMax { k } => Mor::Grid(rng.gen_range(0..=*k)),
            Category::Trivial => Mor::Star,
            Category::Matrix => {
                let rows = rng.gen_range(0..=2);
                let cols = rng.gen_range(0..=2);
                Mor::Mat(random_matrix(rng, rows, cols))
            }
        }
    }

    /// A random morphism with the given domain.
    pub fn sample_mor_from<R: Rng + ?Sized>(&self, rng: &mut R, dom: &Obj) -> Mor {
        match (self, dom) {
            (Category::Table(t), Obj::Id(x)) => {
                let options: Vec<u32> = (0..t.morphisms.len() as u32).filter(|&i| t.morphisms[i as usize].dom == *x).collect();
                Mor::Id(options[rng.gen_range(0..options.len())])
            }
            (Category::Matrix, Obj::Dim(n)) => {
                let rows = rng.gen_range(0..=2);
                Mor::Mat(random_matrix(rng, rows, *n))
            }
            _ => self.sample_mor(rng),
        }
    }
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> MatMorphism {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    MatMorphism::from_ints(rows, cols, &entries).expect("sized by construction")
}

/// `β ∘ α`.
pub fn mc_compose(cat: &Category, beta: &Mor, alpha: &Mor) -> Result<Mor> {
    cat.compose(beta, alpha)
}

/// `α ⊗ β`.
pub fn mc_tensor(cat: &Category, alpha: &Mor, beta: &Mor) -> Result<Mor> {
    cat.tensor(alpha, beta)
}

/// Selects which product [`mc_factorizations`] inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    Comp,
    Tensor,
}

/// All factorizations of `gamma` in a table-form category: pairs `(β, α)` with
/// `β∘α = γ` in composition mode, pairs `(α, β)` with `α⊗β = γ` in tensor mode.
pub fn mc_factorizations(cat: &Category, gamma: &Mor, mode: FactorMode) -> Result<Vec<(Mor, Mor)>> {
    let t = cat.as_table().ok_or(Error::UnsupportedEnumeration)?;
    cat.check(gamma)?;
    let n = t.morphisms.len() as u32;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (first, second) = (Mor::Id(x), Mor::Id(y));
            let hit = match mode {
                FactorMode::Comp => t.comp.get(&(x, y)).map(|&r| Mor::Id(r)) == Some(gamma.clone()),
                FactorMode::Tensor => Mor::Id(t.tensor_mor[x as usize][y as usize]) == *gamma,
            };
            if hit {
                out.push((first, second));
            }
        }
    }
    Ok(out)
}

/// The pair sets `CTC(γ; ξ′, ξ″)` and `TCT(γ; ξ′, ξ″)` of a table-form category:
/// pairs `(η′, η″)` with `(η′∘ξ′) ⊗ (η″∘ξ″) = γ`, respectively
/// `(η′⊗η″) ∘ (ξ′⊗ξ″) = γ`.
pub fn mc_ctc_tct(cat: &Category, gamma: &Mor, xi1: &Mor, xi2: &Mor) -> Result<(Vec<(Mor, Mor)>, Vec<(Mor, Mor)>)> {
    let morphisms = cat.as_table().map(|_| cat.morphisms().expect("table form is finite")).ok_or(Error::UnsupportedEnumeration)?;
    cat.check(gamma)?;
    let xi = cat.tensor(xi1, xi2)?;
    let mut ctc = Vec::new();
    let mut tct = Vec::new();
    for e1 in &morphisms {
        for e2 in &morphisms {
            if let (Ok(a), Ok(b)) = (cat.compose(e1, xi1), cat.compose(e2, xi2)) {
                if cat.tensor(&a, &b)? == *gamma {
                    ctc.push((e1.clone(), e2.clone()));
                }
            }
            if let Ok(c) = cat.compose(&cat.tensor(e1, e2)?, &xi) {
                if c == *gamma {
                    tct.push((e1.clone(), e2.clone()));
                }
            }
        }
    }
    Ok((ctc, tct))
}

/// The one-object category of a finite commutative monoid. `table[a][b]` is
/// the index of `a·b`. Associativity, commutativity and the unit are checked.
pub fn mc_monoid_to_category(name: &str, elements: &[&str], table: &[Vec<usize>]) -> Result<Category> {
    let n = elements.len();
    if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidMonoid("table must be square over the element list".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if table[a][b] != table[b][a] {
                return Err(Error::InvalidMonoid(format!("{}·{} is not commutative", elements[a], elements[b])));
            }
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidMonoid(format!(
                        "({}·{})·{} differs from {}·({}·{})",
                        elements[a], elements[b], elements[c], elements[a], elements[b], elements[c]
                    )));
                }
            }
        }
    }
    let unit = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).ok_or_else(|| Error::InvalidMonoid("no unit element".into()))?;
    let mut compose = Vec::new();
    let mut tensor_morphisms = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let triple = [elements[a].to_string(), elements[b].to_string(), elements[table[a][b]].to_string()];
            compose.push(triple.clone());
            tensor_morphisms.push(triple);
        }
    }
    let spec = TableSpec {
        name: name.to_string(),
        objects: vec!["I".into()],
        morphisms: elements.iter().map(|e| MorSpec { id: e.to_string(), dom: "I".into(), cod: "I".into() }).collect(),
        identities: [("I".to_string(), elements[unit].to_string())].into_iter().collect(),
        compose,
        tensor_objects: vec![["I".into(), "I".into(), "I".into()]],
        tensor_morphisms,
        unit: "I".into(),
    };
    Ok(Category::Table(TableCategory::from_spec(&spec)?))
}

/// The monoid `{1, χ, μ}` with `χ² = μ`, `χμ = μ`, `μ² = μ`.
pub fn polya_category() -> Category {
    mc_monoid_to_category("polya", &["1", "chi", "mu"], &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).expect("valid monoid")
}

/// The multiplicative monoid `{0, 1}` of the field with two elements.
pub fn iv_category() -> Category {
    mc_monoid_to_category("f2-multiplicative", &["0", "1"], &[vec![0, 0], vec![0, 1]]).expect("valid monoid")
}

/// A category with objects `X`, `Y` and one non-identity morphism `γ: X → Y`.
/// It is the poset `X < Y` with `⊗ = max` and unit `X`.
pub fn two_object_category() -> Category {
    let s = |x: &str| x.to_string();
    let m = |id: &str, dom: &str, cod: &str| MorSpec { id: s(id), dom: s(dom), cod: s(cod) };
    let t = |a: &str, b: &str, c: &str| [s(a), s(b), s(c)];
    let spec = TableSpec {
        name: "two-object".into(),
        objects: vec![s("X"), s("Y")],
        morphisms: vec![m("id_X", "X", "X"), m("gamma", "X", "Y"), m("id_Y", "Y", "Y")],
        identities: [(s("X"), s("id_X")), (s("Y"), s("id_Y"))].into_iter().collect(),
        compose: vec![
            t("id_X", "id_X", "id_X"),
            t("gamma", "id_X", "gamma"),
            t("id_Y", "gamma", "gamma"),
            t("id_Y", "id_Y", "id_Y"),
        ],
        tensor_objects: vec![t("X", "X", "X"), t("X", "Y", "Y"), t("Y", "X", "Y"), t("Y", "Y", "Y")],
        tensor_morphisms: vec![
            t("id_X", "id_X", "id_X"),
            t("id_X", "gamma", "gamma"),
            t("id_X", "id_Y", "id_Y"),
            t("gamma", "id_X", "gamma"),
            t("gamma", "gamma", "gamma"),
            t("gamma", "id_Y", "id_Y"),
            t("id_Y", "id_X", "id_Y"),
            t("id_Y", "gamma", "id_Y"),
            t("id_Y", "id_Y", "id_Y"),
        ],
        unit: s("X"),
    };
    Category::Table(TableCategory::from_spec(&spec).expect("valid table"))
}

/// Loads a table-form category from JSON and rejects it unless every axiom holds.
pub fn load_table_category(json_text: &str) -> Result<Category> {
    let spec: TableSpec = serde_json::from_str(json_text).map_err(|e| Error::Parse(e.to_string()))?;
    let cat = Category::Table(TableCategory::from_spec(&spec)?);
    let report = mc_check_axioms(&cat, 0, 0);
    if !report.passed() {
        return Err(Error::InvalidCategory(format!("axioms fail: {}", report.failing_laws().join(", "))));
    }
    Ok(cat)
}

/// Largest table-form category checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 200;

/// Checks the strict monoidal category axioms. Table-form categories with at
/// most [`EXHAUSTIVE_LIMIT`] morphisms are checked exhaustively and ignore
/// `samples`; everything else is sampled.
pub fn mc_check_axioms(cat: &Category, samples: usize, seed: u64) -> LawReport {
    let mut report = LawReport::new(format!("category {}", cat.name()));
    let r = |m: &Mor| cat.render_mor(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let exhaustive = cat.as_table().map(|t| t.morphisms.len() <= EXHAUSTIVE_LIMIT).unwrap_or(false);
    let (morphisms, objects): (Vec<Mor>, Vec<Obj>) = if exhaustive {
        (cat.morphisms().expect("finite"), cat.objects().expect("finite"))
    } else {
        let ms: Vec<Mor> = (0..samples.max(1)).map(|_| cat.sample_mor(&mut rng)).collect();
        let os: Vec<Obj> = ms.iter().filter_map(|m| cat.dom(m).ok()).collect();
        (ms, os)
    };

    // Composable chains γ∘β∘α built from domains so rule-form samples compose.
    let chains: Vec<(Mor, Mor, Mor)> = if exhaustive {
        let mut out = Vec::new();
        for a in &morphisms {
            for b in morphisms.iter().filter(|b| cat.dom(b).ok() == cat.cod(a).ok()) {
                for c in morphisms.iter().filter(|c| cat.dom(c).ok() == cat.cod(b).ok()) {
                    out.push((c.clone(), b.clone(), a.clone()));
                }
            }
        }
        out
    } else {
        morphisms
            .iter()
            .map(|a| {
                let b = cat.sample_mor_from(&mut rng, &cat.cod(a).expect("member"));
                let c = cat.sample_mor_from(&mut rng, &cat.cod(&b).expect("member"));
                (c, b, a.clone())
            })
            .collect()
    };
    for (c, b, a) in &chains {
        let ok = (|| -> Result<bool> { Ok(cat.compose(c, &cat.compose(b, a)?)? == cat.compose(&cat.compose(c, b)?, a)?) })();
        report.record_result("composition-associativity", ok, || json!([r(c), r(b), r(a)]));
    }

    for a in &morphisms {
        let ok = (|| -> Result<bool> {
            let (d, c) = (cat.dom(a)?, cat.cod(a)?);
            Ok(cat.compose(&cat.identity(&c)?, a)? == *a && cat.compose(a, &cat.identity(&d)?)? == *a)
        })();
        report.record_result("identity-neutral", ok, || json!(r(a)));
        let unit = cat.unit_identity();
        let ok = (|| -> Result<bool> { Ok(cat.tensor(a, &unit)? == *a && cat.tensor(&unit, a)? == *a) })();
        report.record_result("tensor-unit-morphisms", ok, || json!(r(a)));
    }

    for x in &objects {
        let ok = (|| -> Result<bool> {
            let id = cat.identity(x)?;
            Ok(cat.dom(&id)? == *x && cat.cod(&id)? == *x)
        })();
        report.record_result("identity-typing", ok, || json!(cat.render_obj(x)));
        let u = cat.unit();
        let ok = cat.tensor_obj(x, &u).and_then(|a| cat.tensor_obj(&u, x).map(|b| a == *x && b == *x));
        report.record_result("tensor-unit-objects", ok, || json!(cat.render_obj(x)));
        for y in &objects {
            let ok = (|| -> Result<bool> {
                let lhs = cat.tensor(&cat.identity(x)?, &cat.identity(y)?)?;
                Ok(lhs == cat.identity(&cat.tensor_obj(x, y)?)?)
            })();
            report.record_result("tensor-of-identities", ok, || json!([cat.render_obj(x), cat.render_obj(y)]));
            for z in &objects {
                let ok = (|| -> Result<bool> {
                    Ok(cat.tensor_obj(&cat.tensor_obj(x, y)?, z)? == cat.tensor_obj(x, &cat.tensor_obj(y, z)?)?)
                })();
                report.record_result("tensor-associativity-objects", ok, || {
                    json!([cat.render_obj(x), cat.render_obj(y), cat.render_obj(z)])
                });
            }
        }
    }

    let triples: Vec<(Mor, Mor, Mor)> = if exhaustive {
        let mut out = Vec::new();
        for a in &morphisms {
            for b in &morphisms {
                for c in &morphisms {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        out
    } else {
        (0..samples).map(|_| (cat.sample_mor(&mut rng), cat.sample_mor(&mut rng), cat.sample_mor(&mut rng))).collect()
    };
    for (a, b, c) in &triples {
        let ok = (|| -> Result<bool> { Ok(cat.tensor(&cat.tensor(a, b)?, c)? == cat.tensor(a, &cat.tensor(b, c)?)?) })();
        report.record_result("tensor-associativity-morphisms", ok, || json!([r(a), r(b), r(c)]));
    }

    let pairs: Vec<(Mor, Mor)> = if exhaustive {
        let mut out = Vec::new();
        for a in &morphisms {
            for b in &morphisms {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    } else {
        (0..samples).map(|_| (cat.sample_mor(&mut rng), cat.sample_mor(&mut rng))).collect()
    };
    for (a, b) in &pairs {
        let ok = (|| -> Result<bool> {
            let t = cat.tensor(a, b)?;
            Ok(cat.dom(&t)? == cat.tensor_obj(&cat.dom(a)?, &cat.dom(b)?)? && cat.cod(&t)? == cat.tensor_obj(&cat.cod(a)?, &cat.cod(b)?)?)
        })();
        report.record_result("tensor-typing", ok, || json!([r(a), r(b)]));
        if cat.cod(a).ok() == cat.dom(b).ok() {
            let ok = (|| -> Result<bool> {
                let c = cat.compose(b, a)?;
                Ok(cat.dom(&c)? == cat.dom(a)? && cat.cod(&c)? == cat.cod(b)?)
            })();
            report.record_result("composition-typing", ok, || json!([r(b), r(a)]));
        }
    }

    // Interchange on composable pairs (ξ, η) with η∘ξ defined.
    let composable: Vec<(Mor, Mor)> = if exhaustive {
        let mut out = Vec::new();
        for xi in &morphisms {
            for eta in morphisms.iter().filter(|e| cat.dom(e).ok() == cat.cod(xi).ok()) {
                out.push((eta.clone(), xi.clone()));
            }
        }
        out
    } else {
        morphisms
            .iter()
            .map(|xi| (cat.sample_mor_from(&mut rng, &cat.cod(xi).expect("member")), xi.clone()))
            .collect()
    };
    let quads: Vec<(&(Mor, Mor), &(Mor, Mor))> = if exhaustive {
        composable.iter().flat_map(|p| composable.iter().map(move |q| (p, q))).collect()
    } else {
        (0..samples)
            .filter(|_| !composable.is_empty())
            .map(|_| (&composable[rng.gen_range(0..composable.len())], &composable[rng.gen_range(0..composable.len())]))
            .collect()
    };
    for ((e1, x1), (e2, x2)) in quads {
        let ok = (|| -> Result<bool> {
            let lhs = cat.tensor(&cat.compose(e1, x1)?, &cat.compose(e2, x2)?)?;
            let rhs = cat.compose(&cat.tensor(e1, e2)?, &cat.tensor(x1, x2)?)?;
            Ok(lhs == rhs)
        })();
        report.record_result("interchange", ok, || json!({ "eta1": r(e1), "xi1": r(x1), "eta2": r(e2), "xi2": r(x2) }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(cat: &Category, name: &str) -> Mor {
        cat.as_table().unwrap().morphism_id(name).unwrap()
    }

    #[test]
    fn compose_examples() {
        let two = two_object_category();
        let g = id(&two, "gamma");
        assert_eq!(two.compose(&id(&two, "id_Y"), &g).unwrap(), g);
        assert!(matches!(two.compose(&g, &g), Err(Error::NonComposable(_))));
        assert_eq!(Category::Integers.compose(&Mor::Int(3), &Mor::Int(4)).unwrap(), Mor::Int(7));
        let a = Mor::Mat(MatMorphism::from_ints(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap());
        assert_eq!(Category::Matrix.compose(&Mor::Mat(MatMorphism::identity(2)), &a).unwrap(), a);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(Category::GridMax { k: 2 }.tensor(&Mor::Grid(1), &Mor::Grid(2)).unwrap(), Mor::Grid(2));
        assert_eq!(Category::Integers.tensor(&Mor::Int(3), &Mor::Int(-5)).unwrap(), Mor::Int(-2));
        let k = Category::Matrix
            .tensor(&Mor::Mat(MatMorphism::identity(2)), &Mor::Mat(MatMorphism::identity(3)))
            .unwrap();
        assert_eq!(k, Mor::Mat(MatMorphism::identity(6)));
    }

    #[test]
    fn kronecker_is_strictly_associative_and_interchanges() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let dims: Vec<usize> = (0..6).map(|_| rng.gen_range(1..=2)).collect();
            let a = random_matrix(&mut rng, dims[0], dims[1]);
            let b = random_matrix(&mut rng, dims[2], dims[3]);
            let c = random_matrix(&mut rng, dims[4], dims[5]);
            assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
            let a2 = random_matrix(&mut rng, dims[1], dims[5]);
            let b2 = random_matrix(&mut rng, dims[3], dims[4]);
            let lhs = a.compose(&a2).unwrap().kron(&b.compose(&b2).unwrap());
            let rhs = a.kron(&b).compose(&a2.kron(&b2)).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(MatMorphism::scalar(BigRational::one()).kron(&MatMorphism::identity(3)), MatMorphism::identity(3));
    }

    #[test]
    fn monoid_categories() {
        let p = polya_category();
        assert!(p.is_one_object());
        assert!(mc_check_axioms(&p, 0, 0).passed());
        assert!(mc_check_axioms(&iv_category(), 0, 0).passed());
        let trivial = mc_monoid_to_category("trivial", &["1"], &[vec![0]]).unwrap();
        assert_eq!(trivial.morphisms().unwrap().len(), 1);
        let not_assoc = mc_monoid_to_category("bad", &["a", "b"], &[vec![1, 0], vec![0, 0]]);
        assert!(matches!(not_assoc, Err(Error::InvalidMonoid(_))));
    }

    #[test]
    fn polya_factorizations() {
        let p = polya_category();
        let (one, chi, mu) = (id(&p, "1"), id(&p, "chi"), id(&p, "mu"));
        let f = mc_factorizations(&p, &chi, FactorMode::Tensor).unwrap();
        assert_eq!(f, vec![(one.clone(), chi.clone()), (chi.clone(), one.clone())]);
        let f: std::collections::BTreeSet<_> = mc_factorizations(&p, &mu, FactorMode::Tensor).unwrap().into_iter().collect();
        let expected: std::collections::BTreeSet<_> = [
            (one.clone(), mu.clone()),
            (mu.clone(), one.clone()),
            (chi.clone(), chi.clone()),
            (chi.clone(), mu.clone()),
            (mu.clone(), chi.clone()),
            (mu.clone(), mu.clone()),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
        assert!(mc_factorizations(&p, &one, FactorMode::Comp).unwrap().contains(&(one.clone(), one)));
        assert!(matches!(mc_factorizations(&Category::Integers, &Mor::Int(0), FactorMode::Comp), Err(Error::UnsupportedEnumeration)));
    }

    #[test]
    fn ctc_tct() {
        for cat in [polya_category(), iv_category()] {
            let ms = cat.morphisms().unwrap();
            for g in &ms {
                for x1 in &ms {
                    for x2 in &ms {
                        let (ctc, tct) = mc_ctc_tct(&cat, g, x1, x2).unwrap();
                        assert_eq!(ctc, tct);
                    }
                }
            }
        }
        let two = two_object_category();
        let ms = two.morphisms().unwrap();
        let mut strict = false;
        for g in &ms {
            for x1 in &ms {
                for x2 in &ms {
                    let (ctc, tct) = mc_ctc_tct(&two, g, x1, x2).unwrap();
                    assert!(ctc.iter().all(|p| tct.contains(p)));
                    strict |= ctc.len() < tct.len();
                }
            }
        }
        assert!(strict);
        assert!(matches!(mc_ctc_tct(&Category::Integers, &Mor::Int(0), &Mor::Int(0), &Mor::Int(0)), Err(Error::UnsupportedEnumeration)));
    }

    #[test]
    fn rule_forms_pass_sampled_axioms() {
        assert!(mc_check_axioms(&Category::Integers, 200, 1).passed());
        assert!(mc_check_axioms(&Category::GridMax { k: 3 }, 200, 1).passed());
        assert!(mc_check_axioms(&Category::Trivial, 20, 1).passed());
        assert!(mc_check_axioms(&Category::Matrix, 100, 1).passed());
        assert!(mc_check_axioms(&two_object_category(), 0, 0).passed());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let two = two_object_category();
        let text = serde_json::to_string(&two.as_table().unwrap().to_spec()).unwrap();
        assert_eq!(load_table_category(&text).unwrap(), two);
        let mut spec = two.as_table().unwrap().to_spec();
        spec.compose.pop();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(matches!(load_table_category(&text), Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn broken_interchange_is_flagged() {
        // {1, a} with a∘a = a but a⊗a = 1: the tensor table is not a functor.
        let cat = Category::Table(
            TableCategory::from_spec(&TableSpec {
                name: "broken".into(),
                objects: vec!["I".into()],
                morphisms: vec![
                    MorSpec { id: "1".into(), dom: "I".into(), cod: "I".into() },
                    MorSpec { id: "a".into(), dom: "I".into(), cod: "I".into() },
                ],
                identities: [("I".to_string(), "1".to_string())].into_iter().collect(),
                compose: vec![
                    ["1".into(), "1".into(), "1".into()],
                    ["1".into(), "a".into(), "a".into()],
                    ["a".into(), "1".into(), "a".into()],
                    ["a".into(), "a".into(), "a".into()],
                ],
                tensor_objects: vec![["I".into(), "I".into(), "I".into()]],
                tensor_morphisms: vec![
                    ["1".into(), "1".into(), "1".into()],
                    ["1".into(), "a".into(), "a".into()],
                    ["a".into(), "1".into(), "a".into()],
                    ["a".into(), "a".into(), "1".into()],
                ],
                unit: "I".into(),
            })
            .unwrap(),
        );
        let report = mc_check_axioms(&cat, 0, 0);
        assert!(report.entry("interchange").unwrap().failures > 0);
    }
}
