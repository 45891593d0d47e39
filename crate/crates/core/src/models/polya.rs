//! Point-set configurations for Pólya and Burnside counting.
//!
//! A finite permutation group `G` acts on a finite universe: either the
//! colorings `Y^X` with `(wg)(x) = w(g(x))`, or the base set `X` itself. A
//! bordism is a closed `G`-stable set of points, each tagged with the index
//! of the copy it belongs to so that disjoint unions are formal. A field is a
//! subset of `E(W) = {(w, g) : wg = w}`; its action is `1`, `χ` or `μ` when
//! it has zero, one, or at least two elements.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::conv::{q_mon_product, ConvElement};
use crate::engine::{ActionSystem, BordismModel, CylinderShape, FieldSystem, Tft};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{polya_category, Category, Mor};

/// Largest `|E(W)|` whose fields are enumerated.
pub const FIELD_LIMIT: usize = 16;

/// Largest universe accepted.
const UNIVERSE_LIMIT: usize = 1 << 16;

/// A finite permutation group on `{0, …, degree-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    pub degree: usize,
    pub elements: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Validates that `elements` is a group under composition.
    pub fn new(degree: usize, elements: Vec<Vec<usize>>) -> Result<PermGroup> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if elements.is_empty() {
            return bad("a group needs at least one element".into());
        }
        let set: BTreeSet<Vec<usize>> = elements.iter().cloned().collect();
        if set.len() != elements.len() {
            return bad("group elements repeat".into());
        }
        for g in &elements {
            let mut s = g.clone();
            s.sort_unstable();
            if s != (0..degree).collect::<Vec<_>>() {
                return bad(format!("{g:?} is not a permutation of {degree} points"));
            }
        }
        if !set.contains(&(0..degree).collect::<Vec<_>>()) {
            return bad("the identity is missing".into());
        }
        for g in &elements {
            for h in &elements {
                if !set.contains(&compose(g, h)) {
                    return bad(format!("{g:?}∘{h:?} is not in the group"));
                }
            }
        }
        Ok(PermGroup { degree, elements })
    }

    /// The closure of `generators` under composition.
    pub fn generated(degree: usize, generators: &[Vec<usize>]) -> Result<PermGroup> {
        let id: Vec<usize> = (0..degree).collect();
        let mut set: BTreeSet<Vec<usize>> = [id.clone()].into_iter().collect();
        let mut frontier = vec![id];
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidParams(format!("{g:?} does not act on {degree} points")));
            }
        }
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = compose(g, &x);
                if set.len() > 100_000 {
                    return Err(Error::TooLarge("group closure exceeds 100000 elements".into()));
                }
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        PermGroup::new(degree, set.into_iter().collect())
    }

    /// Rotations of an `n`-gon.
    pub fn cyclic(n: usize) -> PermGroup {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup::generated(n, &[rot]).expect("cyclic group")
    }

    /// Symmetries of an `n`-gon.
    pub fn dihedral(n: usize) -> PermGroup {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        PermGroup::generated(n, &[rot, refl]).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The number of cycles of each element, fixed points included.
    pub fn cycle_counts(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|g| {
                let mut seen = vec![false; self.degree];
                let mut cycles = 0;
                for s in 0..self.degree {
                    if !seen[s] {
                        cycles += 1;
                        let mut x = s;
                        while !seen[x] {
                            seen[x] = true;
                            x = g[x];
                        }
                    }
                }
                cycles
            })
            .collect()
    }
}

/// `(g∘h)(x) = g(h(x))`.
fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    h.iter().map(|&x| g[x]).collect()
}

/// The finite set on which the group acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseKind {
    /// Colorings `X → Y` with `|Y|` colors.
    Colorings { colors: usize },
    /// The base set `X`.
    Base,
}

/// A `G`-set with its action table `act[g][p] = p·g`.
#[derive(Clone, Debug)]
pub struct Universe {
    pub group: PermGroup,
    pub kind: UniverseKind,
    pub points: usize,
    act: Vec<Vec<usize>>,
}

impl Universe {
    pub fn colorings(group: PermGroup, colors: usize) -> Result<Universe> {
        if colors == 0 {
            return Err(Error::InvalidParams("at least one color is needed".into()));
        }
        let points = (colors as u128).checked_pow(group.degree as u32).filter(|&p| p <= UNIVERSE_LIMIT as u128).ok_or_else(|| {
            Error::TooLarge(format!("{colors}^{} colorings exceed {UNIVERSE_LIMIT}", group.degree))
        })? as usize;
        let act = group
            .elements
            .iter()
            .map(|g| {
                (0..points)
                    .map(|p| {
                        let w = digits(p, colors, group.degree);
                        undigits(&(0..group.degree).map(|x| w[g[x]]).collect::<Vec<_>>(), colors)
                    })
                    .collect()
            })
            .collect();
        Ok(Universe { group, kind: UniverseKind::Colorings { colors }, points, act })
    }

    /// `X` with `x·g = g⁻¹(x)`.
    pub fn base(group: PermGroup) -> Universe {
        let points = group.degree;
        let act = group
            .elements
            .iter()
            .map(|g| {
                let mut inv = vec![0; points];
                for (x, &y) in g.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Universe { group, kind: UniverseKind::Base, points, act }
    }

    pub fn act(&self, g: usize, p: usize) -> usize {
        self.act[g][p]
    }

    /// The orbit of `p`, sorted.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.group.order()).map(|g| self.act(g, p)).collect();
        set.into_iter().collect()
    }

    /// Group elements fixing `p`.
    pub fn stabilizer(&self, p: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(g, p) == p).collect()
    }

    /// The coloring at index `p`, or the base point.
    pub fn describe(&self, p: usize) -> Vec<usize> {
        match self.kind {
            UniverseKind::Colorings { colors } => digits(p, colors, self.group.degree),
            UniverseKind::Base => vec![p],
        }
    }

    /// Orbit representatives (smallest element of each orbit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.points];
        let mut reps = Vec::new();
        for p in 0..self.points {
            if !seen[p] {
                reps.push(p);
                for q in self.orbit(p) {
                    seen[q] = true;
                }
            }
        }
        reps
    }

    fn color_permutations(&self) -> Vec<Vec<usize>> {
        match self.kind {
            UniverseKind::Colorings { colors } => permutations(colors),
            UniverseKind::Base => vec![Vec::new()],
        }
    }

    /// Applies a color permutation to a point.
    fn recolor(&self, pi: &[usize], p: usize) -> usize {
        match self.kind {
            UniverseKind::Colorings { colors } => {
                let w = digits(p, colors, self.group.degree);
                undigits(&w.iter().map(|&c| pi[c]).collect::<Vec<_>>(), colors)
            }
            UniverseKind::Base => p,
        }
    }
}

fn digits(mut p: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = p % base;
        p /= base;
    }
    out
}

fn undigits(w: &[usize], base: usize) -> usize {
    w.iter().rev().fold(0, |acc, &c| acc * base + c)
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
    out.sort();
    out
}

/// A tagged point `(copy, point)`.
pub type Tagged = (u32, usize);

/// A `G`-stable set of tagged points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyaBordism(pub BTreeSet<Tagged>);

/// A bijection of tagged points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap(pub BTreeMap<Tagged, Tagged>);

/// Closed `G`-sets over a universe.
#[derive(Clone, Debug)]
pub struct PolyaModel {
    pub universe: Arc<Universe>,
    /// When false, [`BordismModel::scramble`] may return bijections that do
    /// not commute with the group action. Used for negative controls.
    pub equivariant_only: bool,
}

impl PolyaModel {
    pub fn new(universe: Universe) -> PolyaModel {
        PolyaModel { universe: Arc::new(universe), equivariant_only: true }
    }

    /// The whole universe as a single copy.
    pub fn whole(&self) -> PolyaBordism {
        PolyaBordism((0..self.universe.points).map(|p| (0, p)).collect())
    }

    /// The orbit of `p` as a single copy.
    pub fn orbit(&self, p: usize) -> PolyaBordism {
        PolyaBordism(self.universe.orbit(p).into_iter().map(|q| (0, q)).collect())
    }

    /// Checks `G`-stability of every copy.
    pub fn validate(&self, w: &PolyaBordism) -> Result<()> {
        for &(t, p) in &w.0 {
            if p >= self.universe.points {
                return Err(Error::InvalidBordism(format!("point {p} is outside the universe")));
            }
            for g in 0..self.universe.group.order() {
                if !w.0.contains(&(t, self.universe.act(g, p))) {
                    return Err(Error::InvalidBordism(format!("copy {t} is not stable under the group")));
                }
            }
        }
        Ok(())
    }

    /// `E(W)` in sorted order.
    pub fn isotropy_pairs(&self, w: &PolyaBordism) -> Vec<(Tagged, usize)> {
        w.0.iter().flat_map(|&tp| self.universe.stabilizer(tp.1).into_iter().map(move |g| (tp, g))).collect()
    }

    fn tags(w: &PolyaBordism) -> Vec<u32> {
        let set: BTreeSet<u32> = w.0.iter().map(|&(t, _)| t).collect();
        set.into_iter().collect()
    }

    fn apply(&self, w: &PolyaBordism, tag_map: &BTreeMap<u32, u32>, pi: &[usize]) -> PointMap {
        PointMap(w.0.iter().map(|&(t, p)| ((t, p), (tag_map[&t], self.universe.recolor(pi, p)))).collect())
    }
}

fn image(map: &PointMap) -> BTreeSet<Tagged> {
    map.0.values().copied().collect()
}

impl BordismModel for PolyaModel {
    type Bordism = PolyaBordism;
    type Closed = ();
    type Homeo = PointMap;

    fn name(&self) -> String {
        "polya".into()
    }

    fn incoming(&self, _: &PolyaBordism) {}

    fn outgoing(&self, _: &PolyaBordism) {}

    fn empty(&self) -> PolyaBordism {
        PolyaBordism(BTreeSet::new())
    }

    fn empty_closed(&self) {}

    fn disjoint(&self, a: &PolyaBordism, b: &PolyaBordism) -> Result<PolyaBordism> {
        let offset = a.0.iter().map(|&(t, _)| t + 1).max().unwrap_or(0);
        let tags = Self::tags(b);
        let renumber: BTreeMap<u32, u32> = tags.iter().enumerate().map(|(i, &t)| (t, offset + i as u32)).collect();
        let mut out = a.0.clone();
        out.extend(b.0.iter().map(|&(t, p)| (renumber[&t], p)));
        Ok(PolyaBordism(out))
    }

    fn disjoint_closed(&self, _: &(), _: &()) {}

    fn glue(&self, a: &PolyaBordism, b: &PolyaBordism) -> Result<PolyaBordism> {
        self.disjoint(a, b)
    }

    fn cylinder(&self, _: &(), _: CylinderShape) -> Result<PolyaBordism> {
        Ok(self.empty())
    }

    /// Equivariant bijections obtained from a bijection of copies and a
    /// permutation of the colors.
    fn homeomorphisms(&self, a: &PolyaBordism, b: &PolyaBordism) -> Result<Vec<PointMap>> {
        let (ta, tb) = (Self::tags(a), Self::tags(b));
        if ta.len() != tb.len() || a.0.len() != b.0.len() || ta.len() > 5 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for sigma in permutations(ta.len()) {
            let tag_map: BTreeMap<u32, u32> = ta.iter().enumerate().map(|(i, &t)| (t, tb[sigma[i]])).collect();
            for pi in self.universe.color_permutations() {
                let map = self.apply(a, &tag_map, &pi);
                if image(&map) == b.0 {
                    out.push(map);
                }
            }
        }
        Ok(out)
    }

    fn identity_homeo(&self, w: &PolyaBordism) -> PointMap {
        PointMap(w.0.iter().map(|&x| (x, x)).collect())
    }

    fn compose_homeo(&self, psi: &PointMap, phi: &PointMap) -> PointMap {
        PointMap(phi.0.iter().map(|(&x, y)| (x, psi.0[y])).collect())
    }

    fn scramble(&self, w: &PolyaBordism, rng: &mut dyn RngCore) -> (PolyaBordism, PointMap) {
        let tags = Self::tags(w);
        let mut fresh: Vec<u32> = (0..tags.len() as u32 + 2).collect();
        fresh.shuffle(rng);
        let tag_map: BTreeMap<u32, u32> = tags.iter().zip(fresh).map(|(&t, f)| (t, f)).collect();
        let perms = self.universe.color_permutations();
        let pi = perms.choose(rng).expect("nonempty").clone();
        let mut map = self.apply(w, &tag_map, &pi);
        if !self.equivariant_only {
            let mut targets: Vec<Tagged> = map.0.values().copied().collect();
            targets.shuffle(rng);
            map = PointMap(map.0.keys().copied().zip(targets).collect());
        }
        (PolyaBordism(image(&map)), map)
    }

    fn relabel_boundary(&self, w: &PolyaBordism, _: &[usize], _: &[usize]) -> Result<(PolyaBordism, PointMap)> {
        Ok((w.clone(), self.identity_homeo(w)))
    }

    fn closed_size(&self, _: &()) -> usize {
        0
    }

    /// One or two orbits in distinct copies, with `|E| ≤ 12` where possible.
    fn sample_bordism(&self, rng: &mut dyn RngCore) -> PolyaBordism {
        let order = self.universe.group.order();
        let max_orbits = (12 / order).clamp(1, 2);
        let count = rng.gen_range(0..=max_orbits);
        let mut w = self.empty();
        for _ in 0..count {
            let p = rng.gen_range(0..self.universe.points);
            w = self.disjoint(&w, &self.orbit(p)).expect("formal union");
        }
        w
    }

    fn sample_glue_pair(&self, rng: &mut dyn RngCore) -> (PolyaBordism, PolyaBordism) {
        let p = rng.gen_range(0..self.universe.points);
        let b = if rng.gen_bool(0.5) { self.orbit(rng.gen_range(0..self.universe.points)) } else { self.empty() };
        (self.orbit(p), b)
    }

    fn sample_closed(&self, _: &mut dyn RngCore) {}

    fn sample_coboundary(&self, _: &(), rng: &mut dyn RngCore) -> Result<PolyaBordism> {
        Ok(self.sample_bordism(rng))
    }

    fn render(&self, w: &PolyaBordism) -> Value {
        json!(w.0.iter().map(|&(t, p)| json!({ "copy": t, "point": self.universe.describe(p) })).collect::<Vec<_>>())
    }

    fn render_closed(&self, _: &()) -> Value {
        json!([])
    }
}

/// Subsets of `E(W)`, as sorted tuples of `(copy, point, g)` triples.
#[derive(Clone, Debug)]
pub struct IsotropyFields {
    model: PolyaModel,
}

impl IsotropyFields {
    pub fn new(model: PolyaModel) -> IsotropyFields {
        IsotropyFields { model }
    }

    fn encode(pairs: &[(Tagged, usize)]) -> Key {
        Key::Tuple(pairs.iter().map(|&((t, p), g)| Key::ints(&[t as i64, p as i64, g as i64])).collect())
    }

    fn decode(field: &Key) -> Result<Vec<(Tagged, usize)>> {
        let bad = || Error::FieldNotOnBordism(format!("{field} is not a set of isotropy pairs"));
        field
            .as_tuple()
            .ok_or_else(bad)?
            .iter()
            .map(|k| match k.as_tuple() {
                Some([t, p, g]) => match (t.as_int(), p.as_int(), g.as_int()) {
                    (Some(t), Some(p), Some(g)) if t >= 0 && p >= 0 && g >= 0 => Ok(((t as u32, p as usize), g as usize)),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            })
            .collect()
    }

    fn decode_on(&self, w: &PolyaBordism, field: &Key) -> Result<Vec<(Tagged, usize)>> {
        let pairs = Self::decode(field)?;
        let e: BTreeSet<(Tagged, usize)> = self.model.isotropy_pairs(w).into_iter().collect();
        if pairs.iter().any(|x| !e.contains(x)) {
            return Err(Error::FieldNotOnBordism(format!("{field} is not a subset of E(W)")));
        }
        Ok(pairs)
    }
}

impl FieldSystem for IsotropyFields {
    type Model = PolyaModel;

    fn model(&self) -> &PolyaModel {
        &self.model
    }

    fn name(&self) -> String {
        "isotropy-subsets".into()
    }

    fn fields_on_bordism(&self, w: &PolyaBordism) -> Result<Vec<Key>> {
        let e = self.model.isotropy_pairs(w);
        if e.len() > FIELD_LIMIT {
            return Err(Error::TooLarge(format!("|E(W)| = {} exceeds {FIELD_LIMIT}", e.len())));
        }
        let mut out: Vec<Key> = (0u32..1 << e.len())
            .map(|mask| {
                let subset: Vec<(Tagged, usize)> = e.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                Self::encode(&subset)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn fields_on_closed(&self, _: &()) -> Result<Vec<Key>> {
        Ok(vec![Key::unit()])
    }

    fn restrict_in(&self, w: &PolyaBordism, field: &Key) -> Result<Key> {
        self.decode_on(w, field)?;
        Ok(Key::unit())
    }

    fn restrict_out(&self, w: &PolyaBordism, field: &Key) -> Result<Key> {
        self.restrict_in(w, field)
    }

    fn split_disjoint(&self, a: &PolyaBordism, b: &PolyaBordism, field: &Key) -> Result<(Key, Key)> {
        let ab = self.model.disjoint(a, b)?;
        let pairs = self.decode_on(&ab, field)?;
        // Copies of `b` were renumbered after those of `a`.
        let offset = a.0.iter().map(|&(t, _)| t + 1).max().unwrap_or(0);
        let tb = PolyaModel::tags(b);
        let back: BTreeMap<u32, u32> = tb.iter().enumerate().map(|(i, &t)| (offset + i as u32, t)).collect();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for ((t, p), g) in pairs {
            if a.0.contains(&(t, p)) {
                x.push(((t, p), g));
            } else {
                y.push(((back[&t], p), g));
            }
        }
        y.sort();
        Ok((Self::encode(&x), Self::encode(&y)))
    }

    fn join_disjoint(&self, a: &PolyaBordism, b: &PolyaBordism, fa: &Key, fb: &Key) -> Result<Key> {
        let (x, y) = (self.decode_on(a, fa)?, self.decode_on(b, fb)?);
        let offset = a.0.iter().map(|&(t, _)| t + 1).max().unwrap_or(0);
        let tb = PolyaModel::tags(b);
        let fwd: BTreeMap<u32, u32> = tb.iter().enumerate().map(|(i, &t)| (t, offset + i as u32)).collect();
        let mut all = x;
        all.extend(y.into_iter().map(|((t, p), g)| ((fwd[&t], p), g)));
        all.sort();
        Ok(Self::encode(&all))
    }

    fn split_closed(&self, _: &(), _: &(), _: &Key) -> Result<(Key, Key)> {
        Ok((Key::unit(), Key::unit()))
    }

    fn join_closed(&self, _: &(), _: &(), _: &Key, _: &Key) -> Result<Key> {
        Ok(Key::unit())
    }

    fn split_glue(&self, a: &PolyaBordism, b: &PolyaBordism, field: &Key) -> Result<(Key, Key)> {
        self.split_disjoint(a, b, field)
    }

    fn join_glue(&self, a: &PolyaBordism, b: &PolyaBordism, fa: &Key, fb: &Key) -> Result<Option<Key>> {
        self.join_disjoint(a, b, fa, fb).map(Some)
    }

    /// `φ*F = {(x, g) ∈ E(W) : (φ(x), g) ∈ F}`.
    fn pullback(&self, phi: &PointMap, w: &PolyaBordism, w2: &PolyaBordism, field: &Key) -> Result<Key> {
        let f: BTreeSet<(Tagged, usize)> = self.decode_on(w2, field)?.into_iter().collect();
        let mut out = Vec::new();
        for (x, g) in self.model.isotropy_pairs(w) {
            let y = *phi.0.get(&x).ok_or_else(|| Error::InvalidHomeomorphism("point map is not defined on W".into()))?;
            if f.contains(&(y, g)) {
                out.push((x, g));
            }
        }
        Ok(Self::encode(&out))
    }

    fn pullback_boundary(&self, _: &PointMap, _: &PolyaBordism, _: &PolyaBordism, field: &Key) -> Result<Key> {
        Ok(field.clone())
    }

    fn subdivision_invariant(&self) -> bool {
        true
    }
}

/// The support-size action into the monoid `{1, χ, μ}`.
#[derive(Clone, Debug)]
pub struct SupportAction {
    category: Arc<Category>,
    values: [Mor; 3],
}

impl SupportAction {
    pub fn new() -> SupportAction {
        let cat = polya_category();
        let t = cat.as_table().expect("table");
        let values = [t.morphism_id("1").expect("1"), t.morphism_id("chi").expect("chi"), t.morphism_id("mu").expect("mu")];
        SupportAction { category: Arc::new(cat), values }
    }

    pub fn chi(&self) -> &Mor {
        &self.values[1]
    }
}

impl Default for SupportAction {
    fn default() -> Self {
        SupportAction::new()
    }
}

impl ActionSystem<PolyaModel> for SupportAction {
    fn category(&self) -> &Arc<Category> {
        &self.category
    }

    fn act(&self, _: &PolyaBordism, field: &Key) -> Result<Mor> {
        let n = IsotropyFields::decode(field)?.len();
        Ok(self.values[n.min(2)].clone())
    }
}

/// The Pólya theory over a universe.
pub type PolyaTft = Tft<IsotropyFields, SupportAction>;

/// `Z_W` for the whole universe as the `⊗̂_m` product of the state sums of
/// its orbits. Each orbit is small enough to enumerate its fields.
pub fn whole_state_sum(tft: &PolyaTft) -> Result<ConvElement> {
    let model = tft.model();
    let mut acc = tft.q().one_mon();
    for rep in model.universe.orbit_representatives() {
        let z = tft.state_sum(&model.orbit(rep), &Key::pair(Key::unit(), Key::unit()))?;
        acc = q_mon_product(&acc, &z)?;
    }
    Ok(acc)
}

/// The five counting quantities, each computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyaChain {
    /// `Z_W(χ)` from the orbit product of state sums, rendered.
    pub state_sum_chi: Value,
    /// `Σ_w |G_w|`.
    pub stabilizer_sum: BigUint,
    /// `Σ_g |W^g|`.
    pub fixed_point_sum: BigUint,
    /// `Σ_g |Y|^{c(g)}` for colorings, or `Σ_g |X^g|` counted from cycles of length 1 for the base set.
    pub cycle_sum: BigUint,
    /// `|W/G| · |G|` with `|W/G|` from union-find.
    pub orbits_times_order: BigUint,
    pub orbit_count: usize,
    pub group_order: usize,
}

impl PolyaChain {
    pub fn to_json(&self) -> Value {
        json!({
            "group_order": self.group_order,
            "orbit_count": self.orbit_count,
            "state_sum_chi": self.state_sum_chi,
            "stabilizer_sum": self.stabilizer_sum.to_string(),
            "fixed_point_sum": self.fixed_point_sum.to_string(),
            "cycle_sum": self.cycle_sum.to_string(),
            "orbits_times_order": self.orbits_times_order.to_string(),
        })
    }

    /// True when all five quantities agree.
    pub fn consistent(&self, desc: &crate::semiring::Descriptor) -> bool {
        let n = &self.stabilizer_sum;
        let as_elem = |x: &BigUint| desc.render(&crate::semiring::Element::Nat(crate::semiring::Ext::Fin(x.clone())));
        self.state_sum_chi == as_elem(n) && n == &self.fixed_point_sum && n == &self.cycle_sum && n == &self.orbits_times_order
    }
}

/// Orbit count by union-find over the action.
pub fn orbit_count_oracle(universe: &Universe) -> usize {
    let mut parent: Vec<usize> = (0..universe.points).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for g in 0..universe.group.order() {
        for p in 0..universe.points {
            let (a, b) = (find(&mut parent, p), find(&mut parent, universe.act(g, p)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..universe.points).filter(|&p| find(&mut parent, p) == p).count()
}

/// `|W^g|` for each group element, by testing every point.
pub fn fixed_point_oracle(universe: &Universe) -> Vec<usize> {
    (0..universe.group.order()).map(|g| (0..universe.points).filter(|&p| universe.act(g, p) == p).count()).collect()
}

/// Computes the chain for `tft`, whose model must be the whole universe.
pub fn polya_chain(tft: &PolyaTft) -> Result<PolyaChain> {
    let universe = &tft.model().universe;
    let z = whole_state_sum(tft)?;
    let chi = SupportAction::new().chi().clone();
    let stabilizer_sum: BigUint = (0..universe.points).map(|p| BigUint::from(universe.stabilizer(p).len())).sum();
    let fixed_point_sum: BigUint = fixed_point_oracle(universe).into_iter().map(BigUint::from).sum();
    let cycle_sum: BigUint = match universe.kind {
        UniverseKind::Colorings { colors } => universe.group.cycle_counts().into_iter().map(|c| BigUint::from(colors).pow(c as u32)).sum(),
        UniverseKind::Base => universe.group.elements.iter().map(|g| BigUint::from(g.iter().enumerate().filter(|(x, &y)| *x == y).count())).sum(),
    };
    let orbit_count = orbit_count_oracle(universe);
    let group_order = universe.group.order();
    Ok(PolyaChain {
        state_sum_chi: tft.descriptor().render(&z.value(&chi)),
        stabilizer_sum,
        fixed_point_sum,
        cycle_sum,
        orbits_times_order: BigUint::from(orbit_count) * BigUint::from(group_order),
        orbit_count,
        group_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_constructions() {
        assert_eq!(PermGroup::cyclic(3).order(), 3);
        assert_eq!(PermGroup::dihedral(4).order(), 8);
        assert!(PermGroup::new(2, vec![vec![1, 0]]).is_err());
        assert!(PermGroup::new(3, vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert_eq!(PermGroup::cyclic(4).cycle_counts(), vec![4, 1, 2, 1]);
    }

    #[test]
    fn necklace_orbit_counts() {
        assert_eq!(orbit_count_oracle(&Universe::colorings(PermGroup::cyclic(3), 2).unwrap()), 4);
        assert_eq!(orbit_count_oracle(&Universe::colorings(PermGroup::cyclic(4), 2).unwrap()), 6);
        let trivial = PermGroup::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(orbit_count_oracle(&Universe::colorings(trivial, 3).unwrap()), 27);
    }

    #[test]
    fn coloring_action_is_a_right_action() {
        let u = Universe::colorings(PermGroup::dihedral(4), 2).unwrap();
        let els = &u.group.elements;
        for (gi, g) in els.iter().enumerate() {
            for (hi, h) in els.iter().enumerate() {
                let gh = els.iter().position(|x| *x == compose(g, h)).unwrap();
                for p in 0..u.points {
                    assert_eq!(u.act(hi, u.act(gi, p)), u.act(gh, p));
                }
            }
        }
    }

    #[test]
    fn recoloring_is_equivariant() {
        let model = PolyaModel::new(Universe::colorings(PermGroup::cyclic(3), 3).unwrap());
        let w = model.whole();
        let maps = model.homeomorphisms(&w, &w).unwrap();
        assert_eq!(maps.len(), 6);
        let u = &model.universe;
        for m in maps {
            for (&(_, p), &(_, q)) in &m.0 {
                for g in 0..3 {
                    assert_eq!(m.0[&(0, u.act(g, p))].1, u.act(g, q));
                }
            }
        }
    }
}
