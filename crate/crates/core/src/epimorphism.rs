//! Surjections from an orbifold group onto `Z_n` and their canonical forms.
//!
//! Orbifold groups are written in NEC normal form. For a signature with
//! handles `a_i, b_i`, crosscaps `d_j`, cones `c_i` of index `q_i`, and mirror
//! circles with reflections `r_k` and boundary-parallel loops `e_k`, the long
//! relation abelianizes to
//!
//! ```text
//! sum c_i + sum e_k + 2 * sum d_j = 0   (mod n)
//! ```
//!
//! and each reflection must map to `n/2`, the unique involution of `Z_n`.
//! Handle and boundary images are existence-checked and then dropped from
//! the class datum; they only ever widen the generated subgroup.
//!
//! Equivalence moves used for canonical forms:
//!
//! * M1: permute cones of equal index,
//! * M2: multiply every image by a unit of `Z_n`,
//! * M3: handle images are not part of the datum,
//! * M4: permute crosscaps,
//! * M5: push a cone point around a crosscap, `(c, d) -> (-c, d + c)`, which
//!   preserves the long relation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, generates, neg, order};
use crate::orbifold::{Character, OrbifoldSignature};
use crate::{Error, Result};

/// Admissibility mode for epimorphism enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact order, long relation, surjectivity, and the orientation-character
    /// parity test that makes the kernel an orientable surface group.
    Strict,
    /// Exact order, long relation and surjectivity only.
    Paper,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Paper => "paper",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "paper" => Ok(Mode::Paper),
            other => Err(Error::Parse {
                input: other.into(),
                reason: "expected `strict` or `paper`".into(),
            }),
        }
    }
}

/// Images of the orbifold group generators in `Z_n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicEpimorphism {
    signature: OrbifoldSignature,
    n: u32,
    /// Aligned with `signature.cone_indices()`.
    cone_images: Vec<u32>,
    crosscap_images: Vec<u32>,
    handle_rank: u32,
    mirror_value: Option<u32>,
    strict_parity: bool,
}

/// Concrete images of every generator, including the handle and boundary
/// generators that are not part of the class datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub n: u32,
    /// `(index, image)` per cone point.
    pub cones: Vec<(u32, u32)>,
    pub handles: Vec<(u32, u32)>,
    pub crosscaps: Vec<u32>,
    /// Boundary-parallel loop image per mirror circle.
    pub boundary: Vec<u32>,
    /// Image of every reflection, present iff there are mirror circles.
    pub mirror: Option<u32>,
}

impl GeneratorImages {
    /// Long-relation residue; zero for a well-defined homomorphism.
    pub fn relation_residue(&self) -> u32 {
        let n = self.n as u64;
        let sum: u64 = self.cones.iter().map(|&(_, c)| c as u64).sum::<u64>()
            + self.boundary.iter().map(|&e| e as u64).sum::<u64>()
            + 2 * self.crosscaps.iter().map(|&d| d as u64).sum::<u64>();
        (sum % n) as u32
    }

    pub fn is_surjective(&self) -> bool {
        let all = self
            .cones
            .iter()
            .map(|&(_, c)| c)
            .chain(self.handles.iter().flat_map(|&(a, b)| [a, b]))
            .chain(self.crosscaps.iter().copied())
            .chain(self.boundary.iter().copied())
            .chain(self.mirror);
        generates(all, self.n)
    }
}

impl CyclicEpimorphism {
    /// Validates the datum against `mode`; `strict_parity` records whether the
    /// parity test holds.
    pub fn new(
        signature: OrbifoldSignature,
        n: u32,
        cone_images: Vec<u32>,
        crosscap_images: Vec<u32>,
        mode: Mode,
    ) -> Result<Self> {
        if cone_images.len() != signature.cone_indices().len() {
            return Err(Error::InvalidArgument(format!(
                "{} cone images for signature {signature}",
                cone_images.len()
            )));
        }
        if crosscap_images.len() != signature.crosscaps() as usize {
            return Err(Error::InvalidArgument(format!(
                "{} crosscap images for signature {signature}",
                crosscap_images.len()
            )));
        }
        let cone_images: Vec<u32> = cone_images.into_iter().map(|c| c % n.max(1)).collect();
        let crosscap_images: Vec<u32> = crosscap_images.into_iter().map(|d| d % n.max(1)).collect();
        let character = character_of(&signature);
        let parity = satisfies_parity(&signature, n, &cone_images, &crosscap_images, character);
        let ok = admissible(&signature, n, &cone_images, &crosscap_images, character, mode);
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "images {cone_images:?} / {crosscap_images:?} are not admissible for {signature} onto Z{n} in {mode} mode"
            )));
        }
        Ok(Self::assemble(signature, n, cone_images, crosscap_images, parity))
    }

    fn assemble(
        signature: OrbifoldSignature,
        n: u32,
        cone_images: Vec<u32>,
        crosscap_images: Vec<u32>,
        strict_parity: bool,
    ) -> Self {
        let mirror_value = (signature.mirror_circles() > 0).then_some(n / 2);
        CyclicEpimorphism {
            handle_rank: 2 * signature.handles(),
            signature,
            n,
            cone_images,
            crosscap_images,
            mirror_value,
            strict_parity,
        }
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn cone_images(&self) -> &[u32] {
        &self.cone_images
    }

    pub fn crosscap_images(&self) -> &[u32] {
        &self.crosscap_images
    }

    pub fn handle_rank(&self) -> u32 {
        self.handle_rank
    }

    pub fn mirror_value(&self) -> Option<u32> {
        self.mirror_value
    }

    pub fn strict_parity(&self) -> bool {
        self.strict_parity
    }

    /// First generator whose image disagrees with the orientation character
    /// of the quotient, if any.
    pub fn parity_violation(&self) -> Option<String> {
        if self.character() == Character::Preserving {
            return None;
        }
        let n = self.n;
        if n % 2 == 1 {
            return Some(format!("Z{n} has odd order, so no image can reverse orientation"));
        }
        if let Some(i) = self.crosscap_images.iter().position(|d| d % 2 == 0) {
            return Some(format!(
                "crosscap {} maps to {} (even), but a crosscap reverses orientation",
                i + 1,
                self.crosscap_images[i]
            ));
        }
        if let Some(i) = self.cone_images.iter().position(|c| c % 2 == 1) {
            return Some(format!(
                "cone {} maps to {} (odd), but a cone rotation preserves orientation",
                i + 1,
                self.cone_images[i]
            ));
        }
        if self.signature.mirror_circles() > 0 && (n / 2).is_multiple_of(2) {
            return Some(format!("reflections map to {} (even), but a reflection reverses orientation", n / 2));
        }
        None
    }

    pub fn character(&self) -> Character {
        character_of(&self.signature)
    }

    /// Allowed residues for handle and boundary generators are the multiples
    /// of this step.
    fn free_step(&self) -> u32 {
        if self.strict_parity && self.character() == Character::Reversing {
            2
        } else {
            1
        }
    }

    /// Picks concrete handle and boundary images that satisfy the long
    /// relation and make the map onto.
    pub fn realize(&self) -> GeneratorImages {
        realize_free(
            &self.signature,
            self.n,
            &self.cone_images,
            &self.crosscap_images,
            self.mirror_value,
            self.free_step(),
        )
    }

    fn key(&self) -> (&OrbifoldSignature, u32, &[u32], &[u32], Option<u32>) {
        (
            &self.signature,
            self.n,
            &self.cone_images,
            &self.crosscap_images,
            self.mirror_value,
        )
    }
}

impl PartialEq for CyclicEpimorphism {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CyclicEpimorphism {}

impl Hash for CyclicEpimorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for CyclicEpimorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicEpimorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

fn character_of(sig: &OrbifoldSignature) -> Character {
    if sig.requires_reversing() {
        Character::Reversing
    } else {
        Character::Preserving
    }
}

/// Parity of each stored image equals the orientation character of its
/// generator: cones even, crosscaps odd, reflections odd.
fn satisfies_parity(sig: &OrbifoldSignature, n: u32, cones: &[u32], crosscaps: &[u32], character: Character) -> bool {
    if character == Character::Preserving {
        return true;
    }
    if n % 2 == 1 {
        return false;
    }
    let mirror_ok = sig.mirror_circles() == 0 || (n / 2) % 2 == 1;
    mirror_ok && cones.iter().all(|c| c % 2 == 0) && crosscaps.iter().all(|d| d % 2 == 1)
}

fn realize_free(
    sig: &OrbifoldSignature,
    n: u32,
    cones: &[u32],
    crosscaps: &[u32],
    mirror: Option<u32>,
    step: u32,
) -> GeneratorImages {
    let n64 = n as u64;
    let partial = (cones.iter().map(|&c| c as u64).sum::<u64>()
        + 2 * crosscaps.iter().map(|&d| d as u64).sum::<u64>())
        % n64;
    let balance = neg(partial as u32, n);
    let mirrors = sig.mirror_circles() as usize;
    let mut boundary = vec![0; mirrors];
    if let Some(first) = boundary.first_mut() {
        *first = balance;
    }
    let mut handles = vec![(0, 0); sig.handles() as usize];
    let base: Vec<u32> = cones
        .iter()
        .chain(crosscaps)
        .chain(boundary.iter())
        .copied()
        .chain(mirror)
        .collect();
    if !generates(base, n) {
        if let Some(first) = handles.first_mut() {
            first.0 = step % n;
        } else if mirrors >= 2 {
            boundary[0] = (balance + n - step % n) % n;
            boundary[1] = step % n;
        }
    }
    GeneratorImages {
        n,
        cones: sig.cone_indices().iter().copied().zip(cones.iter().copied()).collect(),
        handles,
        crosscaps: crosscaps.to_vec(),
        boundary,
        mirror,
    }
}

fn admissible(
    sig: &OrbifoldSignature,
    n: u32,
    cones: &[u32],
    crosscaps: &[u32],
    character: Character,
    mode: Mode,
) -> bool {
    let reversing = character == Character::Reversing;
    if reversing && n % 2 == 1 {
        return false;
    }
    if sig.mirror_circles() > 0 && n % 2 == 1 {
        return false;
    }
    if sig.cone_indices().iter().zip(cones).any(|(&q, &c)| order(c, n) != q) {
        return false;
    }
    let strict = mode == Mode::Strict;
    if strict && !satisfies_parity(sig, n, cones, crosscaps, character) {
        return false;
    }
    if reversing && !strict {
        // The orientation character must be visible somewhere.
        let mirror_odd = sig.mirror_circles() > 0 && (n / 2) % 2 == 1;
        if !mirror_odd && !crosscaps.iter().any(|d| d % 2 == 1) {
            return false;
        }
    }
    let step = if strict && reversing { 2 } else { 1 };
    let mirror = (sig.mirror_circles() > 0).then_some(n / 2);
    let images = realize_free(sig, n, cones, crosscaps, mirror, step);
    if images.boundary.iter().any(|e| e % step != 0) {
        return false;
    }
    images.relation_residue() == 0 && images.is_surjective()
}

/// Every admissible assignment, with images sorted inside each block of equal
/// cone index and crosscaps sorted.
pub fn enumerate_epimorphisms(
    sig: &OrbifoldSignature,
    n: u32,
    character: Character,
    mode: Mode,
) -> Result<Vec<CyclicEpimorphism>> {
    if character == Character::Reversing && n % 2 == 1 {
        return Err(Error::OddReversingOrder(n));
    }
    if character_of(sig) != character {
        return Err(Error::CharacterMismatch {
            signature: sig.to_string(),
            character: character.to_string(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("order must be at least 2, got {n}")));
    }
    let strict = mode == Mode::Strict;
    let reversing = character == Character::Reversing;

    let mut cone_choices: Vec<Vec<Vec<u32>>> = Vec::new();
    for (q, count) in sig.cone_blocks() {
        let elems = arith::elements_of_order(q, n);
        cone_choices.push(nondecreasing(&elems, count));
    }
    let crosscap_pool: Vec<u32> = if strict && reversing {
        (0..n).filter(|d| d % 2 == 1).collect()
    } else {
        (0..n).collect()
    };
    let crosscap_choices = nondecreasing(&crosscap_pool, sig.crosscaps() as usize);

    let mut out = Vec::new();
    let mut cones = Vec::new();
    product(&cone_choices, 0, &mut cones, &mut |cones| {
        for crosscaps in &crosscap_choices {
            if admissible(sig, n, cones, crosscaps, character, mode) {
                let parity = satisfies_parity(sig, n, cones, crosscaps, character);
                out.push(CyclicEpimorphism::assemble(sig.clone(), n, cones.to_vec(), crosscaps.clone(), parity));
            }
        }
    });
    Ok(out)
}

fn nondecreasing(pool: &[u32], len: usize) -> Vec<Vec<u32>> {
    fn go(pool: &[u32], start: usize, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, i, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, len, &mut Vec::with_capacity(len), &mut out);
    out
}

fn product(blocks: &[Vec<Vec<u32>>], i: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if i == blocks.len() {
        emit(cur);
        return;
    }
    for choice in &blocks[i] {
        let len = cur.len();
        cur.extend_from_slice(choice);
        product(blocks, i + 1, cur, emit);
        cur.truncate(len);
    }
}

type State = (Vec<u32>, Vec<u32>);

fn normalize(sig: &OrbifoldSignature, (mut cones, mut crosscaps): State) -> State {
    let mut start = 0;
    for (_, count) in sig.cone_blocks() {
        cones[start..start + count].sort_unstable();
        start += count;
    }
    crosscaps.sort_unstable();
    (cones, crosscaps)
}

/// Orbit of `epi` under the moves M1–M5, as normalized states.
fn orbit(epi: &CyclicEpimorphism) -> BTreeSet<State> {
    let n = epi.n;
    let sig = &epi.signature;
    let units = arith::units(n);
    let start = normalize(sig, (epi.cone_images.clone(), epi.crosscap_images.clone()));
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((cones, crosscaps)) = queue.pop_front() {
        let mut next = Vec::new();
        for &u in &units {
            let scale = |v: &Vec<u32>| v.iter().map(|&x| (x as u64 * u as u64 % n as u64) as u32).collect();
            next.push((scale(&cones), scale(&crosscaps)));
        }
        for i in 0..cones.len() {
            for j in 0..crosscaps.len() {
                let mut c = cones.clone();
                let mut d = crosscaps.clone();
                d[j] = (d[j] + c[i]) % n;
                c[i] = neg(c[i], n);
                next.push((c, d));
            }
        }
        for state in next {
            let state = normalize(sig, state);
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    seen
}

/// Lexicographically least member of the orbit of `epi`.
pub fn canonicalize(epi: &CyclicEpimorphism) -> CyclicEpimorphism {
    let (cones, crosscaps) = orbit(epi).into_iter().next().expect("orbit contains its seed");
    CyclicEpimorphism {
        cone_images: cones,
        crosscap_images: crosscaps,
        ..epi.clone()
    }
}

/// Canonical forms of `epis`, deduplicated and sorted.
pub fn canonical_classes(epis: &[CyclicEpimorphism]) -> Vec<CyclicEpimorphism> {
    let mut classes: Vec<CyclicEpimorphism> = Vec::new();
    let mut covered: BTreeSet<State> = BTreeSet::new();
    for epi in epis {
        let state = normalize(&epi.signature, (epi.cone_images.clone(), epi.crosscap_images.clone()));
        if covered.contains(&state) {
            continue;
        }
        let orbit = orbit(epi);
        let (cones, crosscaps) = orbit.iter().next().cloned().expect("nonempty orbit");
        covered.extend(orbit);
        classes.push(CyclicEpimorphism {
            cone_images: cones,
            crosscap_images: crosscaps,
            ..epi.clone()
        });
    }
    classes.sort();
    classes
}

fn list(values: &[u32]) -> String {
    let items: Vec<String> = values.iter().map(u32::to_string).collect();
    format!("[{}]", items.join(","))
}

impl fmt::Display for CyclicEpimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{} @ {} : cones={}", self.n, self.signature, list(&self.cone_images))?;
        if !self.crosscap_images.is_empty() {
            write!(f, " crosscaps={}", list(&self.crosscap_images))?;
        }
        if let Some(m) = self.mirror_value {
            write!(f, " mirror={m}")?;
        }
        Ok(())
    }
}

impl CyclicEpimorphism {
    /// Parses the text form and validates it in `mode`.
    pub fn parse(input: &str, mode: Mode) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = input.split_once(" : ").ok_or_else(|| err("missing ` : `"))?;
        let (group, sig) = head.trim().split_once('@').ok_or_else(|| err("missing `@`"))?;
        let n: u32 = group
            .trim()
            .strip_prefix('Z')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad group `Z<n>`"))?;
        let signature: OrbifoldSignature = sig.trim().parse()?;
        let mut cones = None;
        let mut crosscaps = Vec::new();
        let mut mirror = None;
        for field in tail.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| err("field without `=`"))?;
            match key {
                "cones" => cones = Some(parse_list(value).ok_or_else(|| err("bad cone list"))?),
                "crosscaps" => crosscaps = parse_list(value).ok_or_else(|| err("bad crosscap list"))?,
                "mirror" => mirror = Some(value.parse::<u32>().map_err(|_| err("bad mirror value"))?),
                _ => return Err(err("unknown field")),
            }
        }
        let cones = cones.ok_or_else(|| err("missing cones"))?;
        let epi = CyclicEpimorphism::new(signature, n, cones, crosscaps, mode)?;
        if mirror != epi.mirror_value {
            return Err(err("mirror value must be n/2 exactly when mirrors are present"));
        }
        Ok(epi)
    }
}

fn parse_list(s: &str) -> Option<Vec<u32>> {
    let body = s.strip_prefix('[')?.strip_suffix(']')?;
    if body.is_empty() {
        return Some(Vec::new());
    }
    body.split(',').map(|x| x.trim().parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> OrbifoldSignature {
        s.parse().unwrap()
    }

    fn images(s: &str, n: u32, c: Character, mode: Mode) -> Vec<(Vec<u32>, Vec<u32>)> {
        enumerate_epimorphisms(&sig(s), n, c, mode)
            .unwrap()
            .into_iter()
            .map(|e| (e.cone_images.clone(), e.crosscap_images.clone()))
            .collect()
    }

    #[test]
    fn sphere_2244_onto_z4() {
        assert_eq!(images("S2(2,2,4,4)", 4, Character::Preserving, Mode::Strict), vec![(vec![2, 2, 1, 3], vec![])]);
    }

    #[test]
    fn torus_one_cone_has_none() {
        assert!(images("T(3)", 3, Character::Preserving, Mode::Strict).is_empty());
        assert!(images("T(2)", 4, Character::Preserving, Mode::Strict).is_empty());
    }

    #[test]
    fn projective_plane_24_onto_z8() {
        let found = images("N1(2,4)", 8, Character::Reversing, Mode::Strict);
        assert_eq!(
            found,
            vec![(vec![4, 2], vec![1]), (vec![4, 2], vec![5]), (vec![4, 6], vec![3]), (vec![4, 6], vec![7])]
        );
    }

    #[test]
    fn klein_bottle_one_cone_onto_z4() {
        assert!(images("N2(2)", 4, Character::Reversing, Mode::Strict).is_empty());
        let relaxed = images("N2(2)", 4, Character::Reversing, Mode::Paper);
        assert_eq!(relaxed.len(), 4);
        assert!(relaxed.iter().all(|(_, d)| (d[0] + d[1]) % 2 == 1));
    }

    #[test]
    fn character_mismatch_rejected() {
        let err = enumerate_epimorphisms(&sig("D(3,3)|m1"), 6, Character::Preserving, Mode::Strict);
        assert!(matches!(err, Err(Error::CharacterMismatch { .. })));
        let err = enumerate_epimorphisms(&sig("S2(3,3,3,3)"), 6, Character::Reversing, Mode::Strict);
        assert!(matches!(err, Err(Error::CharacterMismatch { .. })));
        let err = enumerate_epimorphisms(&sig("N1(3,3)"), 3, Character::Reversing, Mode::Strict);
        assert_eq!(err, Err(Error::OddReversingOrder(3)));
    }

    fn epi(s: &str, n: u32, cones: &[u32], crosscaps: &[u32]) -> CyclicEpimorphism {
        CyclicEpimorphism::new(sig(s), n, cones.to_vec(), crosscaps.to_vec(), Mode::Paper).unwrap()
    }

    #[test]
    fn units_identify_z5_representations() {
        let a = canonicalize(&epi("S2(5,5,5)", 5, &[1, 1, 3], &[]));
        let b = canonicalize(&epi("S2(5,5,5)", 5, &[1, 2, 2], &[]));
        assert_eq!(a, b);
        assert_eq!(a.cone_images(), &[1, 1, 3]);
    }

    #[test]
    fn units_identify_z6_representations() {
        let a = canonicalize(&epi("S2(3,6,6)", 6, &[4, 1, 1], &[]));
        let b = canonicalize(&epi("S2(3,6,6)", 6, &[2, 5, 5], &[]));
        assert_eq!(a, b);
    }

    #[test]
    fn disk_33_splits_into_two_classes() {
        let all = enumerate_epimorphisms(&sig("D(3,3)|m1"), 6, Character::Reversing, Mode::Strict).unwrap();
        assert_eq!(all.len(), 3);
        let classes = canonical_classes(&all);
        let cones: Vec<&[u32]> = classes.iter().map(|c| c.cone_images()).collect();
        assert_eq!(cones, vec![&[2, 2][..], &[2, 4][..]]);
    }

    #[test]
    fn point_push_merges_projective_plane_33() {
        let all = enumerate_epimorphisms(&sig("N1(3,3)"), 6, Character::Reversing, Mode::Strict).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(canonical_classes(&all).len(), 1);
    }

    #[test]
    fn point_push_merges_relaxed_klein_bottle_data() {
        let all = enumerate_epimorphisms(&sig("N2(2)"), 4, Character::Reversing, Mode::Paper).unwrap();
        let classes = canonical_classes(&all);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].to_string(), "Z4 @ N2(2) : cones=[2] crosscaps=[0,1]");
        assert!(!classes[0].strict_parity());
    }

    #[test]
    fn text_round_trip() {
        let e = epi("S2(2,2,3,3)", 6, &[3, 3, 2, 4], &[]);
        assert_eq!(e.to_string(), "Z6 @ S2(2,2,3,3) : cones=[3,3,2,4]");
        assert_eq!(CyclicEpimorphism::parse(&e.to_string(), Mode::Strict).unwrap(), e);
        let m = epi("D(3,3)|m1", 6, &[2, 4], &[]);
        assert_eq!(m.to_string(), "Z6 @ D(3,3)|m1 : cones=[2,4] mirror=3");
        assert_eq!(CyclicEpimorphism::parse(&m.to_string(), Mode::Strict).unwrap(), m);
        assert!(CyclicEpimorphism::parse("Z6 @ D(3,3)|m1 : cones=[2,4]", Mode::Strict).is_err());
        assert!(CyclicEpimorphism::parse("Z4 @ N2(2) : cones=[2] crosscaps=[0,1]", Mode::Strict).is_err());
        assert!(CyclicEpimorphism::parse("Z4 @ N2(2) : cones=[2] crosscaps=[0,1]", Mode::Paper).is_ok());
    }

    #[test]
    fn realized_images_close_the_relation() {
        let e = epi("N1|m2", 2, &[], &[1]);
        let g = e.realize();
        assert_eq!(g.relation_residue(), 0);
        assert!(g.is_surjective());
        let t = epi("T(2,2)", 2, &[1, 1], &[]).realize();
        assert_eq!(t.handles, vec![(0, 0)]);
        let u = CyclicEpimorphism::new(sig("T(2,2)"), 4, vec![2, 2], vec![], Mode::Strict).unwrap().realize();
        assert_eq!(u.handles, vec![(1, 0)]);
    }
}
