use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::combinations;
use crate::error::{invalid, Result};
use crate::linalg::{self, affine_dim, complement, coords, dot, from_coords, orthonormal_basis, sub, AffineHull};

pub const MAX_DIM: usize = 6;

/// Supporting half-space `normal . x <= offset` of a facet, with the vertices on it.
#[derive(Debug, Clone)]
pub struct Facet {
    pub vertices: Vec<usize>,
    /// Outward unit normal, lying in the direction space of the affine hull.
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// A face of the lattice. The top face is the polytope itself.
#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of the facets containing this face.
    pub facets: Vec<usize>,
    /// Volume of the face in its own dimension.
    pub volume: f64,
    origin: Vec<f64>,
    basis: Vec<Vec<f64>>,
}

impl Face {
    pub fn centroid(&self, p: &Polytope) -> Vec<f64> {
        let pts: Vec<&[f64]> = self.vertices.iter().map(|&i| p.vertices[i].as_slice()).collect();
        linalg::centroid(&pts)
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        let d = sub(x, &self.origin);
        let mut out = self.origin.clone();
        for b in &self.basis {
            linalg::axpy(&mut out, dot(&d, b), b);
        }
        out
    }
}

/// Convex polytope given by vertices and facets, with its full face lattice.
/// Lower-dimensional polytopes live in their affine hull; the facets are then
/// the faces of codimension one inside that hull.
#[derive(Debug, Clone)]
pub struct Polytope {
    n: usize,
    vertices: Vec<Vec<f64>>,
    hull: AffineHull,
    perp: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    tol: f64,
}

/// JSON form: `{ "dim": n, "vertices": [[...]], "facets": [[indices]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default)]
    pub facets: Vec<Vec<usize>>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vec<f64>>, facets: &[Vec<usize>]) -> Result<Polytope> {
        if vertices.is_empty() {
            return invalid("polytope needs at least one vertex");
        }
        let n = vertices[0].len();
        if n == 0 || n > MAX_DIM {
            return invalid(format!("ambient dimension {n} outside 1..={MAX_DIM}"));
        }
        if vertices.iter().any(|v| v.len() != n || v.iter().any(|c| !c.is_finite())) {
            return invalid("vertices must be finite points of equal dimension");
        }
        let scale = vertices.iter().flatten().fold(1.0f64, |m, c| m.max(c.abs()));
        let tol = linalg::TOL * scale;
        for i in 0..vertices.len() {
            for j in 0..i {
                if linalg::dist(&vertices[i], &vertices[j]) <= tol {
                    return invalid(format!("duplicate vertices {j} and {i}"));
                }
            }
        }
        let refs: Vec<&[f64]> = vertices.iter().map(|v| v.as_slice()).collect();
        let hull = AffineHull::of(&refs);
        let k = hull.dim();
        let perp = complement(&hull.basis, n);
        let all: Vec<f64> = linalg::centroid(&refs);

        let mut facet_list: Vec<Facet> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        if k == 0 && !facets.is_empty() {
            return invalid("a single point has no facets");
        }
        for (fi, f) in facets.iter().enumerate() {
            let mut set: Vec<usize> = f.clone();
            set.sort_unstable();
            set.dedup();
            if set.is_empty() || set.iter().any(|&i| i >= vertices.len()) {
                return invalid(format!("facet {fi} has an empty or out-of-range vertex list"));
            }
            let pts: Vec<&[f64]> = set.iter().map(|&i| vertices[i].as_slice()).collect();
            if affine_dim(&pts) + 1 != k {
                return invalid(format!("facet {fi} does not span a hyperplane of the hull"));
            }
            let f0 = pts[0];
            let local: Vec<Vec<f64>> = pts.iter().map(|p| coords(&sub(p, f0), &hull.basis)).collect();
            let fb = orthonormal_basis(&local, 1e-9);
            let nloc = complement(&fb, k);
            if nloc.len() != 1 {
                return invalid(format!("facet {fi} normal is not unique"));
            }
            let mut normal = from_coords(&nloc[0], &hull.basis, n);
            if dot(&normal, &sub(&all, f0)) > 0.0 {
                normal = linalg::scale(&normal, -1.0);
            }
            let offset = dot(&normal, f0);
            let mut tight = Vec::new();
            let mut strict = false;
            for (i, v) in vertices.iter().enumerate() {
                let s = dot(&normal, v) - offset;
                if s > tol {
                    return invalid(format!("facet {fi} does not support the vertex set (vertex {i} outside)"));
                }
                if s.abs() <= tol {
                    tight.push(i);
                } else {
                    strict = true;
                }
            }
            if !strict {
                return invalid(format!("facet {fi} contains every vertex"));
            }
            if seen.insert(tight.clone()) {
                facet_list.push(Facet { vertices: tight, normal, offset });
            }
        }

        let mut p = Polytope { n, vertices, hull, perp, facets: facet_list, faces: Vec::new(), tol };
        p.build_lattice()?;
        Ok(p)
    }

    fn build_lattice(&mut self) -> Result<()> {
        let k = self.hull.dim();
        let nv = self.vertices.len();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
        for q in &queue {
            sets.insert(q.clone());
        }
        while let Some(s) = queue.pop() {
            for f in &self.facets {
                let inter: Vec<usize> = s.iter().copied().filter(|i| f.vertices.binary_search(i).is_ok()).collect();
                if !inter.is_empty() && sets.insert(inter.clone()) {
                    queue.push(inter);
                }
            }
        }
        sets.insert((0..nv).collect());
        let mut faces: Vec<Face> = Vec::new();
        for s in sets {
            let pts: Vec<&[f64]> = s.iter().map(|&i| self.vertices[i].as_slice()).collect();
            let h = AffineHull::of(&pts);
            let facets: Vec<usize> = (0..self.facets.len())
                .filter(|&fi| s.iter().all(|i| self.facets[fi].vertices.binary_search(i).is_ok()))
                .collect();
            faces.push(Face { dim: h.dim(), vertices: s, facets, volume: 0.0, origin: h.origin, basis: h.basis });
        }
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.vertices.cmp(&b.vertices)));

        // Every vertex must be a 0-face and every ridge must lie on exactly two facets.
        let zero: BTreeSet<usize> = faces.iter().filter(|f| f.dim == 0).map(|f| f.vertices[0]).collect();
        if k >= 1 && zero.len() != nv {
            return invalid("facet data incomplete: some vertex is not cut out by facets");
        }
        if k == 1 && self.facets.len() != 2 {
            return invalid("a segment needs exactly its two endpoints as facets");
        }
        if k >= 2 {
            for f in faces.iter().filter(|f| f.dim + 2 == k) {
                if f.facets.len() != 2 {
                    return invalid("facet data incomplete: a ridge does not lie on exactly two facets");
                }
            }
        }
        if faces.iter().any(|f| f.dim > k || (f.dim == k && f.vertices.len() != nv)) {
            return invalid("facet data inconsistent with the affine hull");
        }

        for idx in 0..faces.len() {
            let dim = faces[idx].dim;
            let vol = match dim {
                0 => 1.0,
                1 => {
                    let v = &faces[idx].vertices;
                    if v.len() != 2 {
                        return invalid("an edge must have exactly two vertices");
                    }
                    linalg::dist(&self.vertices[v[0]], &self.vertices[v[1]])
                }
                _ => {
                    let c = faces[idx].centroid(self);
                    let mut total = 0.0;
                    for g in faces.iter().filter(|g| g.dim + 1 == dim) {
                        if g.vertices.iter().all(|i| faces[idx].vertices.binary_search(i).is_ok()) {
                            let h = linalg::dist(&c, &g.project(&c));
                            total += h * g.volume / dim as f64;
                        }
                    }
                    total
                }
            };
            if dim > 0 && vol <= self.tol {
                return invalid("degenerate face volume");
            }
            faces[idx].volume = vol;
        }
        self.faces = faces;
        Ok(())
    }

    /// Bounded polytope `{x : a_j . x <= b_j}`; `Ok(None)` when empty.
    pub fn from_halfspaces(n: usize, cons: &[(Vec<f64>, f64)]) -> Result<Option<Polytope>> {
        if n == 0 || n > MAX_DIM {
            return invalid(format!("ambient dimension {n} outside 1..={MAX_DIM}"));
        }
        if cons.iter().any(|(a, b)| a.len() != n || !b.is_finite()) {
            return invalid("half-space dimension mismatch");
        }
        if n == 2 {
            return clip_polygon(cons);
        }
        let scale = cons.iter().fold(1.0f64, |m, (_, b)| m.max(b.abs()));
        let tol = 1e-9 * scale;
        let mut verts: Vec<Vec<f64>> = Vec::new();
        for combo in combinations(cons.len(), n) {
            let rows: Vec<Vec<f64>> = combo.iter().map(|&i| cons[i].0.clone()).collect();
            let rhs: Vec<f64> = combo.iter().map(|&i| cons[i].1).collect();
            let Some(x) = linalg::solve(&rows, &rhs) else { continue };
            if cons.iter().all(|(a, b)| dot(a, &x) <= b + tol)
                && !verts.iter().any(|v| linalg::dist(v, &x) <= 1e-7 * scale)
            {
                verts.push(x);
            }
        }
        if verts.is_empty() {
            return Ok(None);
        }
        let refs: Vec<&[f64]> = verts.iter().map(|v| v.as_slice()).collect();
        let k = affine_dim(&refs);
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        if k >= 1 {
            for (a, b) in cons {
                let tight: Vec<usize> = (0..verts.len()).filter(|&i| (dot(a, &verts[i]) - b).abs() <= 1e-7 * scale).collect();
                if tight.is_empty() || tight.len() == verts.len() {
                    continue;
                }
                let pts: Vec<&[f64]> = tight.iter().map(|&i| verts[i].as_slice()).collect();
                if affine_dim(&pts) + 1 == k {
                    facets.insert(tight);
                }
            }
        }
        let facets: Vec<Vec<usize>> = facets.into_iter().collect();
        Polytope::new(verts, &facets).map(Some)
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Polytope> {
        if j.vertices.iter().any(|v| v.len() != j.dim) {
            return invalid("vertex length differs from dim");
        }
        if j.facets.is_empty() && j.vertices.len() == 2 {
            return Polytope::new(j.vertices.clone(), &[vec![0], vec![1]]);
        }
        Polytope::new(j.vertices.clone(), &j.facets)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson { dim: self.n, vertices: self.vertices.clone(), facets: self.facets.iter().map(|f| f.vertices.clone()).collect() }
    }

    pub fn point(p: Vec<f64>) -> Result<Polytope> {
        Polytope::new(vec![p], &[])
    }

    pub fn segment(a: Vec<f64>, b: Vec<f64>) -> Result<Polytope> {
        Polytope::new(vec![a, b], &[vec![0], vec![1]])
    }

    /// Axis-aligned box `[lo, hi]`. Coordinates with `lo == hi` give a flat box.
    pub fn cuboid(lo: &[f64], hi: &[f64]) -> Result<Polytope> {
        let n = lo.len();
        if hi.len() != n || lo.iter().zip(hi).any(|(a, b)| a > b) {
            return invalid("cuboid bounds mismatch");
        }
        let free: Vec<usize> = (0..n).filter(|&d| hi[d] > lo[d]).collect();
        let m = free.len();
        let mut verts = Vec::new();
        for mask in 0..(1usize << m) {
            let mut v = lo.to_vec();
            for (bit, &d) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v[d] = hi[d];
                }
            }
            verts.push(v);
        }
        let mut facets = Vec::new();
        if m >= 1 {
            for bit in 0..m {
                for side in 0..2 {
                    facets.push((0..verts.len()).filter(|mask| mask >> bit & 1 == side).collect());
                }
            }
        }
        Polytope::new(verts, &facets)
    }

    pub fn unit_cube(n: usize) -> Result<Polytope> {
        Polytope::cuboid(&vec![0.0; n], &vec![1.0; n])
    }

    /// Standard simplex with vertices 0, e_1, ..., e_n.
    pub fn simplex(n: usize) -> Result<Polytope> {
        let mut verts = vec![vec![0.0; n]];
        for i in 0..n {
            verts.push(linalg::unit(i, n));
        }
        let facets: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|&j| j != skip).collect()).collect();
        Polytope::new(verts, &facets)
    }

    /// Convex polygon from vertices listed in cyclic order (any ambient dimension).
    pub fn polygon(points: Vec<Vec<f64>>) -> Result<Polytope> {
        let m = points.len();
        if m < 3 {
            return invalid("polygon needs at least three vertices");
        }
        let facets: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
        Polytope::new(points, &facets)
    }

    /// Same combinatorics with every vertex mapped by `f` (meant for isometries and scalings).
    pub fn map_vertices(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Polytope> {
        let verts = self.vertices.iter().map(|v| f(v)).collect();
        let facets: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
        Polytope::new(verts, &facets)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, i: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == i)
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Index of the face with exactly this vertex set.
    pub fn face_index(&self, vertices: &[usize]) -> Option<usize> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        self.faces.iter().position(|f| f.vertices == s)
    }

    /// Direction space of the affine hull.
    pub fn hull_basis(&self) -> &[Vec<f64>] {
        &self.hull.basis
    }

    /// Orthonormal basis of the orthogonal complement of the hull direction.
    pub fn hull_complement(&self) -> &[Vec<f64>] {
        &self.perp
    }

    pub fn volume(&self) -> f64 {
        self.faces[self.top()].volume
    }

    /// Face counts by dimension, top face included.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for f in &self.faces {
            out[f.dim] += 1;
        }
        out
    }

    /// Half-space description; hull equalities are encoded as opposing pairs.
    pub fn halfspaces(&self) -> Vec<(Vec<f64>, f64)> {
        let mut out: Vec<(Vec<f64>, f64)> = self.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
        for w in &self.perp {
            let c = dot(w, &self.hull.origin);
            out.push((w.clone(), c));
            out.push((linalg::scale(w, -1.0), -c));
        }
        out
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset + self.tol)
            && self.perp.iter().all(|w| (dot(w, x) - dot(w, &self.hull.origin)).abs() <= self.tol)
    }

    /// Euclidean distance from `x`. The nearest point is the projection of `x`
    /// onto the affine hull of the face holding it in its relative interior, so
    /// it is the closest of those face projections that land inside.
    pub fn distance(&self, x: &[f64]) -> f64 {
        if self.contains(x) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for f in &self.faces {
            let p = f.project(x);
            if self.contains(&p) {
                best = best.min(linalg::dist(x, &p));
            }
        }
        best
    }

    /// Axis-aligned bounding box.
    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = lo.clone();
        for v in &self.vertices {
            for d in 0..self.n {
                lo[d] = lo[d].min(v[d]);
                hi[d] = hi[d].max(v[d]);
            }
        }
        (lo, hi)
    }

    /// Intersection with another polytope in the same ambient space.
    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.n != other.n {
            return invalid("intersection of polytopes in different ambient spaces");
        }
        let mut cons = self.halfspaces();
        cons.extend(other.halfspaces());
        Polytope::from_halfspaces(self.n, &cons)
    }
}

/// Planar half-plane intersection by clipping a large square one constraint
/// at a time. Each vertex remembers the constraints of its two edges so the
/// final coordinates are recomputed from the original lines.
fn clip_polygon(cons: &[(Vec<f64>, f64)]) -> Result<Option<Polytope>> {
    const BOX: Option<usize> = None;
    let mut lines: Vec<(Vec<f64>, f64)> = Vec::new();
    for (a, b) in cons {
        let r = linalg::norm(a);
        if r <= 1e-12 {
            if *b < -1e-9 {
                return Ok(None);
            }
            continue;
        }
        lines.push((linalg::scale(a, 1.0 / r), b / r));
    }
    let scale = lines.iter().fold(1.0f64, |m, (_, b)| m.max(b.abs()));
    let tol = 1e-9 * scale;
    let big = 1e6 * scale;
    // (vertex, constraint of the edge leaving it)
    let mut poly: Vec<(Vec<f64>, Option<usize>)> =
        vec![(vec![-big, -big], BOX), (vec![big, -big], BOX), (vec![big, big], BOX), (vec![-big, big], BOX)];
    for (c, (a, b)) in lines.iter().enumerate() {
        let m = poly.len();
        let mut out = Vec::with_capacity(m + 1);
        for i in 0..m {
            let (cur, tag) = &poly[i];
            let nxt = &poly[(i + 1) % m].0;
            let sc = dot(a, cur) - b;
            let sn = dot(a, nxt) - b;
            let cut = |t: f64| -> Vec<f64> { cur.iter().zip(nxt).map(|(p, q)| p + t * (q - p)).collect() };
            if sc <= tol {
                out.push((cur.clone(), *tag));
                if sn > tol {
                    out.push((cut(sc / (sc - sn)), Some(c)));
                }
            } else if sn <= tol {
                out.push((cut(sc / (sc - sn)), *tag));
            }
        }
        // Drop a vertex that coincides with its successor; the successor's edge survives.
        let mut dedup: Vec<(Vec<f64>, Option<usize>)> = Vec::with_capacity(out.len());
        for k in 0..out.len() {
            let next = &out[(k + 1) % out.len()].0;
            if out.len() > 1 && linalg::dist(&out[k].0, next) <= 1e-7 * scale {
                continue;
            }
            dedup.push(out[k].clone());
        }
        if dedup.is_empty() && !out.is_empty() {
            dedup.push(out[0].clone());
        }
        poly = dedup;
        if poly.is_empty() {
            return Ok(None);
        }
    }
    let m = poly.len();
    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(m);
    for i in 0..m {
        let prev = poly[(i + m - 1) % m].1;
        let (x, tag) = &poly[i];
        if m > 2 && (prev.is_none() || tag.is_none()) {
            return invalid("half-space system is unbounded");
        }
        let mut v = x.clone();
        if let (Some(p), Some(t)) = (prev, tag) {
            if p != *t {
                let rows = vec![lines[p].0.clone(), lines[*t].0.clone()];
                if let Some(y) = linalg::solve(&rows, &[lines[p].1, lines[*t].1]) {
                    if linalg::dist(&y, x) <= 1e-6 * scale {
                        v = y;
                    }
                }
            }
        }
        verts.push(v);
    }
    if verts.iter().any(|v| v.iter().any(|c| c.abs() >= 0.5 * big)) {
        return invalid("half-space system is unbounded");
    }
    let refs: Vec<&[f64]> = verts.iter().map(|v| v.as_slice()).collect();
    match affine_dim(&refs) {
        0 => Polytope::point(verts.swap_remove(0)).map(Some),
        1 => {
            let h = AffineHull::of(&refs);
            let t: Vec<f64> = verts.iter().map(|v| dot(&sub(v, &h.origin), &h.basis[0])).collect();
            let lo = (0..m).min_by(|&i, &j| t[i].total_cmp(&t[j])).unwrap();
            let hi = (0..m).max_by(|&i, &j| t[i].total_cmp(&t[j])).unwrap();
            Polytope::segment(verts[lo].clone(), verts[hi].clone()).map(Some)
        }
        _ => {
            // Remove vertices lying on the segment between their neighbours.
            let mut keep = Vec::with_capacity(m);
            for i in 0..m {
                let p = &verts[(i + m - 1) % m];
                let q = &verts[(i + 1) % m];
                let v = &verts[i];
                let cross = (v[0] - p[0]) * (q[1] - p[1]) - (v[1] - p[1]) * (q[0] - p[0]);
                if cross.abs() > 1e-12 * scale * scale {
                    keep.push(v.clone());
                }
            }
            Polytope::polygon(keep).map(Some)
        }
    }
}

/// Count faces of each dimension, for quick structural assertions.
pub fn face_counts(p: &Polytope) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for f in p.faces() {
        *m.entry(f.dim).or_insert(0) += 1;
    }
    m
}
