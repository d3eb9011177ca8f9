//! Independent reconstruction of branched covers as polygon complexes.
//!
//! The base orbifold is cut into one polygon whose boundary word lists, in
//! order, a loop around each cone point, a spoke-mirror-spoke detour per
//! mirror circle, a commutator per handle and a square per crosscap. Each
//! cone loop also bounds a small cap disk containing the cone point. The
//! cover has one polygon per sheet, edges `(letter, sheet)` and one cap per
//! cycle of the cone loop's voltage. Across a mirror, sheet `t` meets sheet
//! `t + n/2`, so mirror edges are identified in pairs with their direction
//! preserved and no boundary survives.
//!
//! Nothing here uses the Riemann–Hurwitz formula or the fixed-point formula;
//! the counts come from cells of the complex.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::arith::{discrete_div, gcd};
use crate::epimorphism::{CyclicEpimorphism, GeneratorImages};
use crate::orbifold::{Character, OrbifoldSignature};
use crate::{Error, Rational, Result};

/// Fixed-point data of an orientation-reversing involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedLocusProfile {
    /// Number of fixed circles.
    pub circle_count: u32,
    /// Components of the complement of the fixed circles.
    pub complement_components: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Cone(usize),
    Handle,
    Crosscap,
    Spoke(usize),
    Mirror(usize),
    Filler,
}

#[derive(Clone, Debug)]
enum Face {
    Sheet(u32),
    /// Cap of cone `cone`, listing the sheets of its cycle in order.
    Cap { cone: usize, cycle: Vec<u32> },
}

/// A branched cover of a closed 2-orbifold, built cell by cell.
#[derive(Clone, Debug)]
pub struct CombinatorialCover {
    n: u32,
    letters: Vec<(Letter, u32)>,
    /// Per cone: index and image.
    cones: Vec<(u32, u32)>,
    faces: Vec<Face>,
    /// `(edge, forward)` per side of each face.
    sides: Vec<Vec<(usize, bool)>>,
    edge_count: usize,
    vertex_count: usize,
    /// Endpoints of each edge.
    ends: Vec<(usize, usize)>,
    /// Orientation sign of each face, if the complex is orientable.
    signs: Option<Vec<i8>>,
    components: usize,
}

/// Summary of a cover as reported by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub chi: i64,
    pub orientable: bool,
    pub connected: bool,
    /// Fixed-point counts of the orientation-preserving nontrivial powers.
    pub fixed_counts: Vec<PowerFixedCount>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerFixedCount {
    pub power: u32,
    pub fixed_points: u32,
}

/// Quotient of a cover by the subgroup generated by one deck transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub order: u32,
    pub character: Character,
    pub signature: OrbifoldSignature,
    /// `(index, rotation)` per cone point, with the rotation written as a
    /// multiple of the generator. Exact for orientation-preserving
    /// generators; otherwise defined up to sign.
    pub cones: Vec<(u32, u32)>,
}

impl CombinatorialCover {
    pub fn from_epimorphism(epi: &CyclicEpimorphism) -> Result<Self> {
        Self::build(&epi.realize())
    }

    /// Builds the cover; fails if the voltages do not close up or the result
    /// is disconnected.
    pub fn build(images: &GeneratorImages) -> Result<Self> {
        let cover = Self::build_unchecked(images)?;
        if cover.components != 1 {
            return Err(Error::DisconnectedCover(format!(
                "{} components over Z{}",
                cover.components, images.n
            )));
        }
        Ok(cover)
    }

    /// Builds the cover without insisting on connectivity.
    pub fn build_unchecked(images: &GeneratorImages) -> Result<Self> {
        let n = images.n;
        if n == 0 {
            return Err(Error::InvalidArgument("group order must be positive".into()));
        }
        if !images.boundary.is_empty() && (n % 2 == 1 || images.mirror != Some(n / 2)) {
            return Err(Error::InvalidArgument("mirrors need reflection image n/2".into()));
        }
        let half = (n / 2).max(1);

        let mut letters: Vec<(Letter, u32)> = Vec::new();
        let mut word: Vec<(usize, bool)> = Vec::new();
        let push = |letters: &mut Vec<(Letter, u32)>, letter: Letter, voltage: u32| {
            letters.push((letter, voltage % n));
            letters.len() - 1
        };
        for (i, &(_, c)) in images.cones.iter().enumerate() {
            let id = push(&mut letters, Letter::Cone(i), c);
            word.push((id, true));
        }
        for (k, &e) in images.boundary.iter().enumerate() {
            let s = push(&mut letters, Letter::Spoke(k), 0);
            let m = push(&mut letters, Letter::Mirror(k), e);
            word.extend([(s, true), (m, true), (s, false)]);
        }
        for &(a, b) in &images.handles {
            let a = push(&mut letters, Letter::Handle, a);
            let b = push(&mut letters, Letter::Handle, b);
            word.extend([(a, true), (b, true), (a, false), (b, false)]);
        }
        for &d in &images.crosscaps {
            let d = push(&mut letters, Letter::Crosscap, d);
            word.extend([(d, true), (d, true)]);
        }
        if word.is_empty() {
            let x = push(&mut letters, Letter::Filler, 0);
            word.extend([(x, true), (x, false)]);
        }

        // Vertex 0 is the polygon corner; vertex 1 + k sits on mirror k.
        let vertex_id = |kind: usize, t: u32| -> usize {
            if kind == 0 {
                t as usize
            } else {
                n as usize + (kind - 1) * half as usize + (t % half) as usize
            }
        };
        let vertex_count = n as usize + images.boundary.len() * half as usize;
        let edge_id = |letter: usize, t: u32| -> usize {
            let span = n as usize;
            match letters[letter].0 {
                Letter::Mirror(_) => letter * span + (t % half) as usize,
                _ => letter * span + t as usize,
            }
        };
        let endpoint_kinds = |letter: usize| -> (usize, usize) {
            match letters[letter].0 {
                Letter::Spoke(k) => (0, k + 1),
                Letter::Mirror(k) => (k + 1, k + 1),
                _ => (0, 0),
            }
        };

        let mut faces = Vec::new();
        let mut sides = Vec::new();
        for s in 0..n {
            let mut cur = s;
            let mut boundary = Vec::with_capacity(word.len());
            for &(letter, forward) in &word {
                let v = letters[letter].1;
                if forward {
                    boundary.push((edge_id(letter, cur), true));
                    cur = (cur + v) % n;
                } else {
                    cur = (cur + n - v) % n;
                    boundary.push((edge_id(letter, cur), false));
                }
            }
            if cur != s {
                return Err(Error::InvalidArgument(format!(
                    "boundary word has voltage {} instead of 0",
                    (cur + n - s) % n
                )));
            }
            faces.push(Face::Sheet(s));
            sides.push(boundary);
        }
        for (i, &(_, c)) in images.cones.iter().enumerate() {
            let letter = word[i].0;
            let mut seen = vec![false; n as usize];
            for start in 0..n {
                if seen[start as usize] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut t = start;
                while !seen[t as usize] {
                    seen[t as usize] = true;
                    cycle.push(t);
                    t = (t + c) % n;
                }
                sides.push(cycle.iter().map(|&t| (edge_id(letter, t), true)).collect());
                faces.push(Face::Cap { cone: i, cycle });
            }
        }

        let edge_count_raw = letters.len() * n as usize;
        let mut ends = vec![(usize::MAX, usize::MAX); edge_count_raw];
        for letter in 0..letters.len() {
            let (tail, head) = endpoint_kinds(letter);
            let v = letters[letter].1;
            for t in 0..n {
                ends[edge_id(letter, t)] = (vertex_id(tail, t), vertex_id(head, (t + v) % n));
            }
        }

        // Each edge must be seen from exactly two sides.
        let mut incidence: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edge_count_raw];
        for (f, boundary) in sides.iter().enumerate() {
            for &(e, forward) in boundary {
                incidence[e].push((f, forward));
            }
        }
        let mut edge_count = 0;
        for (e, inc) in incidence.iter().enumerate() {
            match inc.len() {
                0 => {}
                2 => edge_count += 1,
                k => {
                    return Err(Error::InvalidArgument(format!("edge {e} has {k} sides")));
                }
            }
        }

        let mut components = UnionFind::<usize>::new(faces.len());
        for inc in &incidence {
            if let [(f1, _), (f2, _)] = inc[..] {
                components.union(f1, f2);
            }
        }
        let roots: BTreeSet<usize> = (0..faces.len()).map(|f| components.find(f)).collect();
        let signs = orient(faces.len(), &incidence);

        Ok(CombinatorialCover {
            n,
            cones: images.cones.clone(),
            letters,
            faces,
            sides,
            edge_count,
            vertex_count,
            ends,
            signs,
            components: roots.len(),
        })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count as i64 + self.faces.len() as i64
    }

    pub fn is_orientable(&self) -> bool {
        self.signs.is_some()
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Genus of the cover, when it is a connected orientable surface.
    pub fn genus(&self) -> Option<u32> {
        let chi = self.euler_characteristic();
        (self.is_orientable() && self.is_connected() && chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as u32)
    }

    /// Orientation character of the deck transformation `y`.
    pub fn character_of(&self, y: u32) -> Result<Character> {
        let signs = self.signs.as_ref().ok_or_else(|| self.non_orientable())?;
        let image = self.map_face(0, y);
        Ok(if signs[0] == signs[image] {
            Character::Preserving
        } else {
            Character::Reversing
        })
    }

    fn non_orientable(&self) -> Error {
        Error::NonOrientableCover(format!("cover over Z{} is non-orientable", self.n))
    }

    fn map_face(&self, f: usize, y: u32) -> usize {
        match &self.faces[f] {
            Face::Sheet(s) => ((s + y) % self.n) as usize,
            Face::Cap { cone, cycle } => {
                let target = (cycle[0] + y) % self.n;
                self.faces
                    .iter()
                    .position(|face| matches!(face, Face::Cap { cone: c, cycle } if c == cone && cycle.contains(&target)))
                    .expect("caps partition the sheets")
            }
        }
    }

    fn map_edge(&self, e: usize, y: u32) -> usize {
        let span = self.n as usize;
        let (letter, t) = (e / span, (e % span) as u32);
        let t = (t + y) % self.n;
        match self.letters[letter].0 {
            Letter::Mirror(_) => letter * span + (t % (self.n / 2)) as usize,
            _ => letter * span + t as usize,
        }
    }

    fn live_edges(&self) -> BTreeSet<usize> {
        self.sides.iter().flatten().map(|&(e, _)| e).collect()
    }

    /// Cells mapped to themselves by the deck transformation `y`; each
    /// contributes exactly one fixed point when `y` preserves orientation.
    pub fn fixed_points(&self, y: u32) -> u32 {
        let y = y % self.n;
        if y == 0 {
            return 0;
        }
        let faces = (0..self.faces.len()).filter(|&f| self.map_face(f, y) == f).count();
        let edges = self.live_edges().into_iter().filter(|&e| self.map_edge(e, y) == e).count();
        let vertices = self.invariant_vertices(y).len();
        (faces + edges + vertices) as u32
    }

    fn invariant_vertices(&self, y: u32) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in self.live_edges() {
            let image = self.map_edge(e, y);
            let (a, b) = self.ends[e];
            let (c, d) = self.ends[image];
            if a == c {
                out.insert(a);
            }
            if b == d {
                out.insert(b);
            }
        }
        out
    }

    /// Fixed circles of the orientation-reversing involution `y`, each as a
    /// set of edges.
    fn fixed_circles(&self, y: u32) -> Vec<BTreeSet<usize>> {
        let fixed: Vec<usize> = self.live_edges().into_iter().filter(|&e| self.map_edge(e, y) == e).collect();
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        for &e in &fixed {
            let (a, b) = self.ends[e];
            uf.union(a, b);
        }
        let mut circles: Vec<(usize, BTreeSet<usize>)> = Vec::new();
        for &e in &fixed {
            let root = uf.find(self.ends[e].0);
            match circles.iter_mut().find(|(r, _)| *r == root) {
                Some((_, set)) => {
                    set.insert(e);
                }
                None => circles.push((root, BTreeSet::from([e]))),
            }
        }
        circles.into_iter().map(|(_, set)| set).collect()
    }

    /// Face components left after cutting along the edges fixed by `y`.
    fn complement(&self, y: u32) -> UnionFind<usize> {
        let mut uf = UnionFind::<usize>::new(self.faces.len());
        let mut seen: Vec<Option<usize>> = vec![None; self.ends.len()];
        for (f, boundary) in self.sides.iter().enumerate() {
            for &(e, _) in boundary {
                if self.map_edge(e, y) == e {
                    continue;
                }
                match seen[e] {
                    Some(other) => {
                        uf.union(f, other);
                    }
                    None => seen[e] = Some(f),
                }
            }
        }
        uf
    }

    /// Fixed circles and complement components of an orientation-reversing
    /// involution.
    pub fn involution_profile(&self, y: u32) -> Result<FixedLocusProfile> {
        let y = y % self.n;
        if y == 0 || !(2 * y).is_multiple_of(self.n) {
            return Err(Error::InvalidArgument(format!("{y} is not an involution of Z{}", self.n)));
        }
        if self.character_of(y)? != Character::Reversing {
            return Err(Error::InvalidArgument(format!("{y} preserves orientation")));
        }
        let circles = self.fixed_circles(y).len() as u32;
        let uf = self.complement(y);
        let roots: BTreeSet<usize> = (0..self.faces.len()).map(|f| uf.find(f)).collect();
        Ok(FixedLocusProfile {
            circle_count: circles,
            complement_components: roots.len() as u32,
        })
    }

    /// Fixed-point counts of every orientation-preserving nontrivial power.
    pub fn report(&self) -> OracleReport {
        let fixed_counts = (1..self.n)
            .filter(|&y| matches!(self.character_of(y), Ok(Character::Preserving)))
            .map(|y| PowerFixedCount {
                power: y,
                fixed_points: self.fixed_points(y),
            })
            .collect();
        OracleReport {
            chi: self.euler_characteristic(),
            orientable: self.is_orientable(),
            connected: self.is_connected(),
            fixed_counts,
        }
    }

    /// Quotient by the cyclic subgroup generated by the deck transformation
    /// `d`, read off from the cells and their stabilizers.
    pub fn quotient(&self, d: u32) -> Result<Quotient> {
        let n = self.n;
        let signs = self.signs.as_ref().ok_or_else(|| self.non_orientable())?;
        let d = d % n;
        let m = n / gcd(n, d);
        if m < 2 {
            return Err(Error::InvalidArgument(format!("power {d} is trivial in Z{n}")));
        }
        let character = self.character_of(d)?;
        let elements: Vec<u32> = (0..m).map(|j| (j as u64 * d as u64 % n as u64) as u32).collect();

        let mut cones = Vec::new();
        let mut covered = vec![false; self.faces.len()];
        for f in 0..self.faces.len() {
            let Face::Cap { cone, cycle } = &self.faces[f] else { continue };
            if covered[f] {
                continue;
            }
            for &y in &elements {
                covered[self.map_face(f, y)] = true;
            }
            let stabilizer = elements.iter().filter(|&&y| self.map_face(f, y) == f).count() as u32;
            if stabilizer < 2 {
                continue;
            }
            let (q, c) = self.cones[*cone];
            let step = (q / stabilizer) as u64 * c as u64 % n as u64;
            let rotation = if signs[f] > 0 { step as u32 } else { (n - step as u32) % n };
            let j = discrete_div(rotation, d, n).expect("stabilizer lies in the subgroup") % m;
            debug_assert_eq!(cycle.len() as u32, q);
            let j = if character == Character::Reversing { j.min(m - j) } else { j };
            cones.push((stabilizer, j));
        }
        cones.sort_unstable();

        let reflection = if m.is_multiple_of(2) {
            let r = elements[(m / 2) as usize];
            (self.character_of(r)? == Character::Reversing).then_some(r)
        } else {
            None
        };

        let mut mirrors = 0;
        let mut underlying_orientable = character == Character::Preserving;
        if let Some(r) = reflection {
            let circles = self.fixed_circles(r);
            let mut seen = vec![false; circles.len()];
            for i in 0..circles.len() {
                if seen[i] {
                    continue;
                }
                mirrors += 1;
                let e = *circles[i].iter().next().expect("circle has edges");
                for &y in &elements {
                    let image = self.map_edge(e, y);
                    let k = circles.iter().position(|c| c.contains(&image)).expect("circles are permuted");
                    seen[k] = true;
                }
            }
            let uf = self.complement(r);
            let home = uf.find(0);
            underlying_orientable = elements
                .iter()
                .filter(|&&y| uf.find(self.map_face(0, y)) == home)
                .all(|&y| signs[self.map_face(0, y)] == signs[0]);
        }

        let chi = Rational::new(self.euler_characteristic(), m as i64);
        let cone_defect = cones
            .iter()
            .fold(Rational::from_integer(0), |acc, &(q, _)| acc + Rational::new(q as i64 - 1, q as i64));
        let underlying = chi + cone_defect;
        if !underlying.is_integer() {
            return Err(Error::InvalidArgument(format!("non-integral underlying characteristic {underlying}")));
        }
        let deficit = 2 - mirrors as i64 - underlying.to_integer();
        let genus = if underlying_orientable {
            if deficit % 2 != 0 {
                return Err(Error::InvalidArgument("odd deficit for an orientable quotient".into()));
            }
            deficit / 2
        } else {
            deficit
        };
        if genus < 0 {
            return Err(Error::InvalidArgument(format!("negative quotient genus {genus}")));
        }
        let signature = OrbifoldSignature::new(
            underlying_orientable,
            genus as u32,
            cones.iter().map(|&(q, _)| q).collect(),
            mirrors,
        )?;
        Ok(Quotient {
            order: m,
            character,
            signature,
            cones,
        })
    }
}

/// Two-colours the faces so that every edge is traversed in opposite
/// directions by its two sides. `None` if no such colouring exists.
fn orient(face_count: usize, incidence: &[Vec<(usize, bool)>]) -> Option<Vec<i8>> {
    let mut adjacency: Vec<Vec<(usize, i8)>> = vec![Vec::new(); face_count];
    for inc in incidence {
        if let [(f1, d1), (f2, d2)] = inc[..] {
            let relation = if d1 == d2 { -1 } else { 1 };
            adjacency[f1].push((f2, relation));
            adjacency[f2].push((f1, relation));
        }
    }
    let mut signs = vec![0i8; face_count];
    for start in 0..face_count {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &(h, relation) in &adjacency[f] {
                let want = signs[f] * relation;
                if signs[h] == 0 {
                    signs[h] = want;
                    stack.push(h);
                } else if signs[h] != want {
                    return None;
                }
            }
        }
    }
    Some(signs)
}
