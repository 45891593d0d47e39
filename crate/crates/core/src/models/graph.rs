//! Graph 1-bordisms and the vertex-labeling field systems behind the Max,
//! intermediate value and Delta theories.
//!
//! A bordism is a multigraph whose components are arcs and cycles. Boundary
//! vertices have degree 1 and are listed as incoming or outgoing; interior
//! vertices have degree 2. A closed object is a number of points. Fields
//! label every vertex with an integer; a closed field is the tuple of labels
//! of its points in order.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{ActionSystem, BordismModel, CylinderShape, FieldSystem};
use crate::error::{Error, Result};
use crate::fun::Key;
use crate::moncat::{iv_category, Category, Mor};

/// Most isomorphisms returned by one enumeration.
const ISO_LIMIT: usize = 512;

/// Most vertices accepted by the isomorphism search.
const ISO_VERTEX_LIMIT: usize = 16;

/// A graph bordism `in → out`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphBordism {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(rename = "in")]
    pub incoming: Vec<usize>,
    #[serde(rename = "out")]
    pub outgoing: Vec<usize>,
}

impl GraphBordism {
    /// Validates the degree conditions.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, incoming: Vec<usize>, outgoing: Vec<usize>) -> Result<GraphBordism> {
        let g = GraphBordism { vertices, edges, incoming, outgoing };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidBordism(m));
        let mut degree = vec![0usize; self.vertices];
        for &(u, v) in &self.edges {
            if u >= self.vertices || v >= self.vertices {
                return bad(format!("edge ({u},{v}) leaves the vertex range"));
            }
            if u == v {
                return bad(format!("loop at vertex {u}"));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut role = vec![0u8; self.vertices];
        for &b in self.incoming.iter().chain(&self.outgoing) {
            if b >= self.vertices {
                return bad(format!("boundary vertex {b} out of range"));
            }
            if role[b] != 0 {
                return bad(format!("vertex {b} listed twice on the boundary"));
            }
            role[b] = 1;
        }
        for v in 0..self.vertices {
            let want = if role[v] == 1 { 1 } else { 2 };
            if degree[v] != want {
                return bad(format!("vertex {v} has degree {} but needs {want}", degree[v]));
            }
        }
        Ok(())
    }

    /// A straight strand `p – v₁ – … – v_m – q` from one incoming to one outgoing point.
    pub fn interval(interior: usize) -> GraphBordism {
        let n = interior + 2;
        let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
        GraphBordism { vertices: n, edges, incoming: vec![0], outgoing: vec![n - 1] }
    }

    /// The bordism `W_=` on `{p₊, p₋} → {q₊, q₋}`: strands `p₊…q₊` and `p₋…q₋`.
    pub fn parallel_strands(interior: usize) -> GraphBordism {
        let a = GraphBordism::interval(interior);
        disjoint_graphs(&a, &a)
    }

    /// The bordism `W_⊃⊂` on `{p₊, p₋} → {q₊, q₋}`: arcs `p₊…p₋` and `q₊…q₋`.
    pub fn turnbacks(interior: usize) -> GraphBordism {
        let n = interior + 2;
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.extend((0..n - 1).map(|i| (n + i, n + i + 1)));
        GraphBordism { vertices: 2 * n, edges, incoming: vec![0, n - 1], outgoing: vec![n, 2 * n - 1] }
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn multiplicity(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &(u, v) in &self.edges {
            *m.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        m
    }

    /// Connected components as a vertex → component index map.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.vertices];
        let mut count = 0;
        for s in 0..self.vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Applies a vertex relabeling `v ↦ perm[v]`.
    fn relabel(&self, perm: &[usize]) -> GraphBordism {
        GraphBordism {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
            incoming: self.incoming.iter().map(|&v| perm[v]).collect(),
            outgoing: self.outgoing.iter().map(|&v| perm[v]).collect(),
        }
    }
}

fn disjoint_graphs(a: &GraphBordism, b: &GraphBordism) -> GraphBordism {
    let off = a.vertices;
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(u, v)| (u + off, v + off)));
    let mut incoming = a.incoming.clone();
    incoming.extend(b.incoming.iter().map(|v| v + off));
    let mut outgoing = a.outgoing.clone();
    outgoing.extend(b.outgoing.iter().map(|v| v + off));
    GraphBordism { vertices: a.vertices + b.vertices, edges, incoming, outgoing }
}

/// The vertex map of a graph isomorphism `a → b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap(pub Vec<usize>);

/// The model of graph 1-bordisms. Closed objects are point counts.
#[derive(Clone, Debug, Default)]
pub struct GraphModel {
    /// Largest number of boundary points per side in sampled bordisms.
    pub max_boundary: usize,
    /// Largest number of vertices in sampled bordisms.
    pub max_vertices: usize,
}

impl GraphModel {
    pub fn new() -> GraphModel {
        GraphModel { max_boundary: 2, max_vertices: 8 }
    }

    /// A random bordism `m → n` with `m + n` even, at most `max_vertices` vertices.
    pub fn sample_between(&self, m: usize, n: usize, rng: &mut dyn RngCore) -> Result<GraphBordism> {
        if (m + n) % 2 == 1 {
            return Err(Error::InvalidBordism(format!("no graph bordism joins {m} and {n} points")));
        }
        let boundary = m + n;
        let mut budget = self.max_vertices.saturating_sub(boundary);
        let mut order: Vec<usize> = (0..boundary).collect();
        order.shuffle(rng);
        let mut vertices = boundary;
        let mut edges = Vec::new();
        for pair in order.chunks(2) {
            let inner = if budget > 0 { rng.gen_range(0..=budget.min(2)) } else { 0 };
            budget -= inner;
            let mut prev = pair[0];
            for _ in 0..inner {
                edges.push((prev, vertices));
                prev = vertices;
                vertices += 1;
            }
            edges.push((prev, pair[1]));
        }
        if budget >= 2 && rng.gen_bool(0.3) {
            let len = rng.gen_range(2..=budget.min(3));
            let start = vertices;
            for i in 0..len {
                edges.push((start + i, start + (i + 1) % len));
            }
            vertices += len;
        }
        let g = GraphBordism { vertices, edges, incoming: (0..m).collect(), outgoing: (m..m + n).collect() };
        let mut perm: Vec<usize> = (0..vertices).collect();
        perm.shuffle(rng);
        Ok(g.relabel(&perm))
    }

    fn random_sides(&self, rng: &mut dyn RngCore) -> (usize, usize) {
        let m = rng.gen_range(0..=self.max_boundary);
        let mut n = rng.gen_range(0..=self.max_boundary);
        if (m + n) % 2 == 1 {
            n = if n == 0 { 1 } else { n - 1 };
        }
        (m, n)
    }

    /// All boundary-preserving isomorphisms, by backtracking over vertices.
    fn isomorphisms(&self, a: &GraphBordism, b: &GraphBordism) -> Result<Vec<VertexMap>> {
        if a.vertices > ISO_VERTEX_LIMIT {
            return Err(Error::TooLarge(format!("isomorphism search is limited to {ISO_VERTEX_LIMIT} vertices")));
        }
        if a.vertices != b.vertices || a.edges.len() != b.edges.len() || a.incoming.len() != b.incoming.len() || a.outgoing.len() != b.outgoing.len() {
            return Ok(Vec::new());
        }
        let role = |g: &GraphBordism| {
            let mut r = vec![0u8; g.vertices];
            g.incoming.iter().for_each(|&v| r[v] = 1);
            g.outgoing.iter().for_each(|&v| r[v] = 2);
            r
        };
        let (ra, rb) = (role(a), role(b));
        let (ma, mb) = (a.multiplicity(), b.multiplicity());
        let adj = a.neighbours();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; a.vertices];
        let mut used = vec![false; b.vertices];
        #[allow(clippy::too_many_arguments)]
        fn go(
            v: usize,
            n: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ra: &[u8],
            rb: &[u8],
            ma: &BTreeMap<(usize, usize), usize>,
            mb: &BTreeMap<(usize, usize), usize>,
            adj: &[Vec<usize>],
            out: &mut Vec<VertexMap>,
        ) {
            if out.len() >= ISO_LIMIT {
                return;
            }
            if v == n {
                out.push(VertexMap(map.clone()));
                return;
            }
            for t in 0..n {
                if used[t] || ra[v] != rb[t] {
                    continue;
                }
                let ok = adj[v].iter().filter(|&&u| u < v).all(|&u| {
                    let key_a = (u.min(v), u.max(v));
                    let (x, y) = (map[u], t);
                    mb.get(&(x.min(y), x.max(y))) == ma.get(&key_a)
                });
                if !ok {
                    continue;
                }
                map[v] = t;
                used[t] = true;
                go(v + 1, n, map, used, ra, rb, ma, mb, adj, out);
                used[t] = false;
                map[v] = usize::MAX;
            }
        }
        go(0, a.vertices, &mut map, &mut used, &ra, &rb, &ma, &mb, &adj, &mut out);
        Ok(out)
    }
}

impl BordismModel for GraphModel {
    type Bordism = GraphBordism;
    type Closed = usize;
    type Homeo = VertexMap;

    fn name(&self) -> String {
        "graph".into()
    }

    fn incoming(&self, w: &GraphBordism) -> usize {
        w.incoming.len()
    }

    fn outgoing(&self, w: &GraphBordism) -> usize {
        w.outgoing.len()
    }

    fn empty(&self) -> GraphBordism {
        GraphBordism { vertices: 0, edges: Vec::new(), incoming: Vec::new(), outgoing: Vec::new() }
    }

    fn empty_closed(&self) -> usize {
        0
    }

    fn disjoint(&self, a: &GraphBordism, b: &GraphBordism) -> Result<GraphBordism> {
        Ok(disjoint_graphs(a, b))
    }

    fn disjoint_closed(&self, m: &usize, n: &usize) -> usize {
        m + n
    }

    /// Keeps the vertices of `a`, then the non-incoming vertices of `b`;
    /// `b.in[i]` is identified with `a.out[i]`.
    fn glue(&self, a: &GraphBordism, b: &GraphBordism) -> Result<GraphBordism> {
        if a.outgoing.len() != b.incoming.len() {
            return Err(Error::BoundaryMismatch(format!("gluing {} outgoing points to {} incoming points", a.outgoing.len(), b.incoming.len())));
        }
        let map = glue_map(a, b);
        let mut edges = a.edges.clone();
        edges.extend(b.edges.iter().map(|&(u, v)| (map[u], map[v])));
        let vertices = a.vertices + b.vertices - b.incoming.len();
        let g = GraphBordism { vertices, edges, incoming: a.incoming.clone(), outgoing: b.outgoing.iter().map(|&v| map[v]).collect() };
        g.validate()?;
        Ok(g)
    }

    fn cylinder(&self, m: &usize, shape: CylinderShape) -> Result<GraphBordism> {
        let m = *m;
        let edges = (0..m).map(|i| (i, m + i)).collect();
        let (incoming, outgoing) = match shape {
            CylinderShape::Straight => ((0..m).collect(), (m..2 * m).collect()),
            CylinderShape::Cup => (Vec::new(), (0..2 * m).collect()),
            CylinderShape::Cap => ((0..2 * m).collect(), Vec::new()),
        };
        Ok(GraphBordism { vertices: 2 * m, edges, incoming, outgoing })
    }

    fn homeomorphisms(&self, a: &GraphBordism, b: &GraphBordism) -> Result<Vec<VertexMap>> {
        self.isomorphisms(a, b)
    }

    fn identity_homeo(&self, w: &GraphBordism) -> VertexMap {
        VertexMap((0..w.vertices).collect())
    }

    fn compose_homeo(&self, psi: &VertexMap, phi: &VertexMap) -> VertexMap {
        VertexMap(phi.0.iter().map(|&v| psi.0[v]).collect())
    }

    fn scramble(&self, w: &GraphBordism, rng: &mut dyn RngCore) -> (GraphBordism, VertexMap) {
        let mut perm: Vec<usize> = (0..w.vertices).collect();
        perm.shuffle(rng);
        let mut w2 = w.relabel(&perm);
        w2.incoming.shuffle(rng);
        w2.outgoing.shuffle(rng);
        w2.edges.shuffle(rng);
        (w2, VertexMap(perm))
    }

    fn relabel_boundary(&self, w: &GraphBordism, perm_in: &[usize], perm_out: &[usize]) -> Result<(GraphBordism, VertexMap)> {
        let pick = |list: &[usize], perm: &[usize]| -> Result<Vec<usize>> {
            if perm.is_empty() {
                return Ok(list.to_vec());
            }
            let mut sorted = perm.to_vec();
            sorted.sort_unstable();
            if sorted != (0..list.len()).collect::<Vec<_>>() {
                return Err(Error::InvalidParams("boundary relabeling is not a permutation".into()));
            }
            Ok(perm.iter().map(|&i| list[i]).collect())
        };
        let w2 = GraphBordism { incoming: pick(&w.incoming, perm_in)?, outgoing: pick(&w.outgoing, perm_out)?, ..w.clone() };
        Ok((w2, self.identity_homeo(w)))
    }

    fn closed_size(&self, m: &usize) -> usize {
        *m
    }

    fn sample_bordism(&self, rng: &mut dyn RngCore) -> GraphBordism {
        let (m, n) = self.random_sides(rng);
        self.sample_between(m, n, rng).expect("even boundary")
    }

    fn sample_disjoint_pair(&self, rng: &mut dyn RngCore) -> (GraphBordism, GraphBordism) {
        let mut piece = || {
            let (m, n) = self.random_sides(rng);
            let half = GraphModel { max_vertices: (self.max_vertices / 2).max(m + n), ..self.clone() };
            half.sample_between(m, n, rng).expect("even boundary")
        };
        (piece(), piece())
    }

    fn sample_glue_pair(&self, rng: &mut dyn RngCore) -> (GraphBordism, GraphBordism) {
        let (m, n) = self.random_sides(rng);
        let mut p = rng.gen_range(0..=self.max_boundary);
        if (n + p) % 2 == 1 {
            p = if p == 0 { 1 } else { p - 1 };
        }
        let half = GraphModel { max_vertices: (self.max_vertices / 2 + 2).max(m + n).max(n + p), ..self.clone() };
        (half.sample_between(m, n, rng).expect("even"), half.sample_between(n, p, rng).expect("even"))
    }

    fn sample_closed(&self, rng: &mut dyn RngCore) -> usize {
        rng.gen_range(0..=self.max_boundary)
    }

    fn sample_coboundary(&self, m: &usize, rng: &mut dyn RngCore) -> Result<GraphBordism> {
        self.sample_between(0, *m, rng)
    }

    fn render(&self, w: &GraphBordism) -> Value {
        serde_json::to_value(w).expect("serializable")
    }

    fn render_closed(&self, m: &usize) -> Value {
        json!(m)
    }
}

/// Where each vertex of `b` lands in `a ∪ b`.
fn glue_map(a: &GraphBordism, b: &GraphBordism) -> Vec<usize> {
    let mut map = vec![usize::MAX; b.vertices];
    for (i, &v) in b.incoming.iter().enumerate() {
        map[v] = a.outgoing[i];
    }
    let mut next = a.vertices;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    map
}

/// How vertex labels may vary along edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelMode {
    /// One label per connected component.
    LocallyConstant,
    /// Labels of adjacent vertices differ by at most one.
    Step,
}

/// Integer vertex labelings with values in `lo..=hi`.
#[derive(Clone, Debug)]
pub struct GraphFields {
    model: GraphModel,
    pub mode: LabelMode,
    pub lo: i64,
    pub hi: i64,
}

impl GraphFields {
    pub fn new(mode: LabelMode, lo: i64, hi: i64) -> Result<GraphFields> {
        if lo > hi {
            return Err(Error::InvalidParams(format!("empty label range {lo}..={hi}")));
        }
        Ok(GraphFields { model: GraphModel::new(), mode, lo, hi })
    }

    pub fn with_model(mut self, model: GraphModel) -> GraphFields {
        self.model = model;
        self
    }

    fn labels(field: &Key) -> Result<Vec<i64>> {
        field
            .as_tuple()
            .ok_or_else(|| Error::FieldNotOnBordism(format!("{field} is not a labeling")))?
            .iter()
            .map(|k| k.as_int().ok_or_else(|| Error::FieldNotOnBordism(format!("{field} has a non-integer label"))))
            .collect()
    }

    fn labels_on(&self, w: &GraphBordism, field: &Key) -> Result<Vec<i64>> {
        let l = Self::labels(field)?;
        if l.len() != w.vertices {
            return Err(Error::FieldNotOnBordism(format!("{field} labels {} vertices, the graph has {}", l.len(), w.vertices)));
        }
        Ok(l)
    }

    /// Whether `labels` is a field on `w`.
    pub fn is_field(&self, w: &GraphBordism, labels: &[i64]) -> bool {
        if labels.len() != w.vertices || labels.iter().any(|&x| x < self.lo || x > self.hi) {
            return false;
        }
        w.edges.iter().all(|&(u, v)| match self.mode {
            LabelMode::LocallyConstant => labels[u] == labels[v],
            LabelMode::Step => (labels[u] - labels[v]).abs() <= 1,
        })
    }
}

impl FieldSystem for GraphFields {
    type Model = GraphModel;

    fn model(&self) -> &GraphModel {
        &self.model
    }

    fn name(&self) -> String {
        let mode = match self.mode {
            LabelMode::LocallyConstant => "lc",
            LabelMode::Step => "step",
        };
        format!("graph-{mode}[{}..{}]", self.lo, self.hi)
    }

    fn fields_on_bordism(&self, w: &GraphBordism) -> Result<Vec<Key>> {
        let values: Vec<i64> = (self.lo..=self.hi).collect();
        let mut out = Vec::new();
        match self.mode {
            LabelMode::LocallyConstant => {
                let (count, comp) = w.components();
                let mut choice = vec![0usize; count];
                loop {
                    out.push(Key::ints(&comp.iter().map(|&c| values[choice[c]]).collect::<Vec<_>>()));
                    let mut i = 0;
                    while i < count {
                        choice[i] += 1;
                        if choice[i] < values.len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == count {
                        break;
                    }
                }
            }
            LabelMode::Step => {
                let adj = w.neighbours();
                let mut labels = vec![0i64; w.vertices];
                fn go(v: usize, labels: &mut Vec<i64>, adj: &[Vec<usize>], values: &[i64], out: &mut Vec<Key>) {
                    if v == labels.len() {
                        out.push(Key::ints(labels));
                        return;
                    }
                    for &x in values {
                        if adj[v].iter().all(|&u| u >= v || (labels[u] - x).abs() <= 1) {
                            labels[v] = x;
                            go(v + 1, labels, adj, values, out);
                        }
                    }
                }
                go(0, &mut labels, &adj, &values, &mut out);
            }
        }
        out.sort();
        Ok(out)
    }

    fn fields_on_closed(&self, m: &usize) -> Result<Vec<Key>> {
        let values: Vec<i64> = (self.lo..=self.hi).collect();
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..*m {
            out = out.into_iter().flat_map(|p| values.iter().map(move |&x| [p.clone(), vec![x]].concat())).collect();
        }
        let mut keys: Vec<Key> = out.iter().map(|l| Key::ints(l)).collect();
        keys.sort();
        Ok(keys)
    }

    fn restrict_in(&self, w: &GraphBordism, field: &Key) -> Result<Key> {
        let l = self.labels_on(w, field)?;
        Ok(Key::ints(&w.incoming.iter().map(|&v| l[v]).collect::<Vec<_>>()))
    }

    fn restrict_out(&self, w: &GraphBordism, field: &Key) -> Result<Key> {
        let l = self.labels_on(w, field)?;
        Ok(Key::ints(&w.outgoing.iter().map(|&v| l[v]).collect::<Vec<_>>()))
    }

    fn split_disjoint(&self, a: &GraphBordism, b: &GraphBordism, field: &Key) -> Result<(Key, Key)> {
        let l = Self::labels(field)?;
        if l.len() != a.vertices + b.vertices {
            return Err(Error::FieldNotOnBordism(format!("{field} does not label the disjoint union")));
        }
        Ok((Key::ints(&l[..a.vertices]), Key::ints(&l[a.vertices..])))
    }

    fn join_disjoint(&self, a: &GraphBordism, b: &GraphBordism, fa: &Key, fb: &Key) -> Result<Key> {
        Ok(Key::ints(&[self.labels_on(a, fa)?, self.labels_on(b, fb)?].concat()))
    }

    fn split_closed(&self, m: &usize, n: &usize, field: &Key) -> Result<(Key, Key)> {
        let l = Self::labels(field)?;
        if l.len() != m + n {
            return Err(Error::FieldNotOnBordism(format!("{field} does not label {} points", m + n)));
        }
        Ok((Key::ints(&l[..*m]), Key::ints(&l[*m..])))
    }

    fn join_closed(&self, m: &usize, n: &usize, f: &Key, g: &Key) -> Result<Key> {
        let (x, y) = (Self::labels(f)?, Self::labels(g)?);
        if x.len() != *m || y.len() != *n {
            return Err(Error::FieldNotOnBordism("closed field has the wrong number of points".into()));
        }
        Ok(Key::ints(&[x, y].concat()))
    }

    fn split_glue(&self, a: &GraphBordism, b: &GraphBordism, field: &Key) -> Result<(Key, Key)> {
        let l = Self::labels(field)?;
        let map = glue_map(a, b);
        if l.len() != a.vertices + b.vertices - b.incoming.len() {
            return Err(Error::FieldNotOnBordism(format!("{field} does not label the glued graph")));
        }
        Ok((Key::ints(&l[..a.vertices]), Key::ints(&map.iter().map(|&v| l[v]).collect::<Vec<_>>())))
    }

    fn join_glue(&self, a: &GraphBordism, b: &GraphBordism, fa: &Key, fb: &Key) -> Result<Option<Key>> {
        let (x, y) = (self.labels_on(a, fa)?, self.labels_on(b, fb)?);
        if a.outgoing.iter().zip(&b.incoming).any(|(&u, &v)| x[u] != y[v]) {
            return Ok(None);
        }
        let map = glue_map(a, b);
        let mut l = x;
        l.resize(a.vertices + b.vertices - b.incoming.len(), 0);
        for (v, &t) in map.iter().enumerate() {
            l[t] = y[v];
        }
        Ok(Some(Key::ints(&l)))
    }

    fn pullback(&self, phi: &VertexMap, w: &GraphBordism, w2: &GraphBordism, field: &Key) -> Result<Key> {
        let l = self.labels_on(w2, field)?;
        if phi.0.len() != w.vertices {
            return Err(Error::InvalidHomeomorphism("vertex map has the wrong length".into()));
        }
        Ok(Key::ints(&phi.0.iter().map(|&v| l[v]).collect::<Vec<_>>()))
    }

    fn pullback_boundary(&self, phi: &VertexMap, w: &GraphBordism, w2: &GraphBordism, field: &Key) -> Result<Key> {
        let t = field.as_tuple().filter(|t| t.len() == 2).ok_or_else(|| Error::FieldNotOnBordism(format!("{field} is not a boundary pair")))?;
        let (fin, fout) = (Self::labels(&t[0])?, Self::labels(&t[1])?);
        let side = |list: &[usize], list2: &[usize], values: &[i64]| -> Result<Key> {
            let pos: BTreeMap<usize, usize> = list2.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let labels = list
                .iter()
                .map(|v| pos.get(&phi.0[*v]).map(|&i| values[i]).ok_or_else(|| Error::InvalidHomeomorphism("boundary point not mapped to the boundary".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Key::ints(&labels))
        };
        Ok(Key::pair(side(&w.incoming, &w2.incoming, &fin)?, side(&w.outgoing, &w2.outgoing, &fout)?))
    }

    fn subdivision_invariant(&self) -> bool {
        self.mode == LabelMode::LocallyConstant
    }
}

/// Which action a graph theory uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphActionKind {
    /// The largest label, in the max monoid on `0..=k`.
    Max,
    /// `1` when no label is zero, else `0`, in the multiplicative monoid of `F₂`.
    IntermediateValue,
    /// The single morphism of the trivial category.
    Delta,
    /// The capped sum of labels in the max monoid. It is not multiplicative
    /// under gluing and serves as a negative control.
    CappedSum,
}

#[derive(Clone, Debug)]
pub struct GraphAction {
    pub kind: GraphActionKind,
    category: Arc<Category>,
    one: Mor,
    zero: Mor,
}

impl GraphAction {
    pub fn new(kind: GraphActionKind, k: u32) -> GraphAction {
        let (category, one, zero) = match kind {
            GraphActionKind::Max | GraphActionKind::CappedSum => (Category::GridMax { k }, Mor::Grid(0), Mor::Grid(0)),
            GraphActionKind::IntermediateValue => {
                let cat = iv_category();
                let t = cat.as_table().expect("table");
                let (one, zero) = (t.morphism_id("1").expect("1"), t.morphism_id("0").expect("0"));
                (cat, one, zero)
            }
            GraphActionKind::Delta => (Category::Trivial, Mor::Star, Mor::Star),
        };
        GraphAction { kind, category: Arc::new(category), one, zero }
    }
}

impl ActionSystem<GraphModel> for GraphAction {
    fn category(&self) -> &Arc<Category> {
        &self.category
    }

    fn act(&self, w: &GraphBordism, field: &Key) -> Result<Mor> {
        let labels = GraphFields::labels(field)?;
        if labels.len() != w.vertices {
            return Err(Error::FieldNotOnBordism(format!("{field} does not label the graph")));
        }
        let k = match self.category.as_ref() {
            Category::GridMax { k } => *k as i64,
            _ => 0,
        };
        Ok(match self.kind {
            GraphActionKind::Max => Mor::Grid(labels.iter().copied().max().unwrap_or(0).clamp(0, k) as u32),
            GraphActionKind::CappedSum => Mor::Grid(labels.iter().sum::<i64>().clamp(0, k) as u32),
            GraphActionKind::IntermediateValue => {
                if labels.contains(&0) {
                    self.zero.clone()
                } else {
                    self.one.clone()
                }
            }
            GraphActionKind::Delta => Mor::Star,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gluing_two_intervals_gives_a_longer_interval() {
        let m = GraphModel::new();
        let g = m.glue(&GraphBordism::interval(0), &GraphBordism::interval(0)).unwrap();
        assert_eq!(g.vertices, 3);
        assert_eq!(g.edges.len(), 2);
        assert_eq!((g.incoming.len(), g.outgoing.len()), (1, 1));
        assert_eq!(g.components().0, 1);
    }

    #[test]
    fn disjoint_union_concatenates_boundaries() {
        let m = GraphModel::new();
        let u = m.disjoint(&GraphBordism::interval(0), &GraphBordism::interval(1)).unwrap();
        assert_eq!(u.incoming, vec![0, 2]);
        assert_eq!(u.outgoing, vec![1, 4]);
        assert_eq!(u.components().0, 2);
    }

    #[test]
    fn interval_has_exactly_one_isomorphism_to_itself() {
        let m = GraphModel::new();
        let w = GraphBordism::interval(2);
        assert_eq!(m.homeomorphisms(&w, &w).unwrap(), vec![VertexMap(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn degree_violations_are_rejected() {
        assert!(GraphBordism::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![0], vec![2]).is_err());
        assert!(GraphBordism::new(2, vec![(0, 1)], vec![0], vec![0]).is_err());
        assert!(GraphBordism::new(3, vec![(0, 1)], vec![0], vec![1]).is_err());
    }

    #[test]
    fn scrambled_copies_are_isomorphic() {
        let m = GraphModel::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let w = m.sample_bordism(&mut rng);
            w.validate().unwrap();
            let (w2, phi) = m.scramble(&w, &mut rng);
            let isos = m.homeomorphisms(&w, &w2).unwrap();
            assert!(isos.contains(&phi));
        }
    }

    #[test]
    fn step_fields_on_a_path_from_one_to_minus_one_hit_zero() {
        // Every labeling of a path whose ends are 1 and -1 with unit steps passes 0.
        let f = GraphFields::new(LabelMode::Step, -1, 1).unwrap();
        for edges in 1..=8 {
            let w = GraphBordism::interval(edges - 1);
            for field in f.fields_on_bordism(&w).unwrap() {
                let l = GraphFields::labels(&field).unwrap();
                if l[0] == 1 && l[edges] == -1 {
                    assert!(l.contains(&0));
                }
            }
        }
    }
}
