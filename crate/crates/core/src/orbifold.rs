//! Quotient 2-orbifold signatures and their Riemann–Hurwitz enumeration.
//!
//! A signature describes a closed 2-orbifold whose singular set consists of
//! isolated cone points and mirror (reflector) boundary circles. Corner
//! reflectors never appear: every point stabilizer of a cyclic action is
//! cyclic, so a point on a mirror has stabilizer of order 2 exactly.
//! Boundary circles without mirrors are likewise excluded, since quotients
//! of closed surfaces are closed orbifolds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Largest handle count scanned for an orientable underlying surface.
pub fn max_handles(g: u32) -> u32 {
    g
}

/// Largest crosscap count scanned for a non-orientable underlying surface.
pub fn max_crosscaps(g: u32) -> u32 {
    2 * g + 2
}

/// Largest mirror-circle count scanned.
pub fn max_mirrors(g: u32) -> u32 {
    g + 1
}

/// Largest number of cone points scanned.
pub fn max_cones(g: u32) -> u32 {
    2 * g + 2
}

/// Whether the generator of the action preserves or reverses the orientation
/// of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    Preserving,
    Reversing,
}

impl Character {
    pub const ALL: [Character; 2] = [Character::Preserving, Character::Reversing];

    pub fn sign(self) -> char {
        match self {
            Character::Preserving => '+',
            Character::Reversing => '-',
        }
    }

    /// Character of the `d`-th power.
    pub fn power(self, d: u32) -> Character {
        match self {
            Character::Reversing if d % 2 == 1 => Character::Reversing,
            _ => Character::Preserving,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Preserving => "preserving",
            Character::Reversing => "reversing",
        })
    }
}

impl FromStr for Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "preserving" | "+" => Ok(Character::Preserving),
            "reversing" | "-" => Ok(Character::Reversing),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected `preserving` or `reversing`".into(),
            }),
        }
    }
}

/// Type of a quotient 2-orbifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    orientable: bool,
    /// Handle count if orientable, crosscap count otherwise.
    genus: u32,
    /// Cone indices, ascending.
    cones: Vec<u32>,
    mirrors: u32,
}

impl OrbifoldSignature {
    pub fn new(orientable: bool, genus: u32, mut cones: Vec<u32>, mirrors: u32) -> Result<Self> {
        if let Some(&q) = cones.iter().find(|&&q| q < 2) {
            return Err(Error::InvalidSignature(format!("cone index {q} is below 2")));
        }
        if !orientable && genus == 0 {
            return Err(Error::InvalidSignature(
                "a non-orientable underlying surface needs at least one crosscap".into(),
            ));
        }
        cones.sort_unstable();
        Ok(OrbifoldSignature {
            orientable,
            genus,
            cones,
            mirrors,
        })
    }

    pub fn orientable(genus: u32, cones: Vec<u32>) -> Result<Self> {
        Self::new(true, genus, cones, 0)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    /// Handle count (orientable) or crosscap count (non-orientable).
    pub fn genus_or_crosscaps(&self) -> u32 {
        self.genus
    }

    pub fn handles(&self) -> u32 {
        if self.orientable {
            self.genus
        } else {
            0
        }
    }

    pub fn crosscaps(&self) -> u32 {
        if self.orientable {
            0
        } else {
            self.genus
        }
    }

    pub fn cone_indices(&self) -> &[u32] {
        &self.cones
    }

    pub fn mirror_circles(&self) -> u32 {
        self.mirrors
    }

    /// Euler characteristic of the underlying surface (mirror circles are
    /// boundary components of it).
    pub fn underlying_euler_characteristic(&self) -> i64 {
        let base = if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        };
        base - self.mirrors as i64
    }

    /// Orbifold Euler characteristic in any scalar type.
    pub fn euler_characteristic<T: Scalar>(&self) -> T {
        self.cones.iter().fold(
            T::from_int(self.underlying_euler_characteristic()),
            |acc, &q| acc - (T::from_int(1) - T::from_ratio(1, q as i64)),
        )
    }

    /// The signature can only come from an orientation-reversing action.
    pub fn requires_reversing(&self) -> bool {
        !self.orientable || self.mirrors > 0
    }

    /// Cone indices grouped into `(index, multiplicity)` blocks, ascending.
    pub fn cone_blocks(&self) -> Vec<(u32, usize)> {
        let mut blocks: Vec<(u32, usize)> = Vec::new();
        for &q in &self.cones {
            match blocks.last_mut() {
                Some((last, count)) if *last == q => *count += 1,
                _ => blocks.push((q, 1)),
            }
        }
        blocks
    }

    fn sort_key(&self) -> (u8, u32, u32, usize, &[u32]) {
        (
            if self.orientable { 0 } else { 1 },
            self.genus,
            self.mirrors,
            self.cones.len(),
            &self.cones,
        )
    }
}

impl PartialOrd for OrbifoldSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrbifoldSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Exact orbifold Euler characteristic.
pub fn orbifold_euler_characteristic(sig: &OrbifoldSignature) -> Rational {
    sig.euler_characteristic()
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.orientable, self.genus) {
            (true, 0) if self.mirrors > 0 => f.write_str("D")?,
            (true, 0) => f.write_str("S2")?,
            (true, 1) => f.write_str("T")?,
            (true, h) => write!(f, "Sg{h}")?,
            (false, k) => write!(f, "N{k}")?,
        }
        if !self.cones.is_empty() {
            let cones: Vec<String> = self.cones.iter().map(u32::to_string).collect();
            write!(f, "({})", cones.join(","))?;
        }
        if self.mirrors > 0 {
            write!(f, "|m{}", self.mirrors)?;
        }
        Ok(())
    }
}

impl FromStr for OrbifoldSignature {
    type Err = Error;

    /// Accepts the printed form plus the aliases `RP2` (= `N1`), `K`
    /// (= `N2`) and `S2|m1(3,3)` (mirror suffix before the cone list).
    fn from_str(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let base_end = s.find(['(', '|']).unwrap_or(s.len());
        let (base, mut rest) = s.split_at(base_end);

        let (orientable, genus, is_disk) = match base {
            "S2" => (true, 0, false),
            "D" => (true, 0, true),
            "T" => (true, 1, false),
            "RP2" => (false, 1, false),
            "K" => (false, 2, false),
            b if b.starts_with("Sg") => (true, parse_u32(&b[2..]).ok_or_else(|| err("bad handle count"))?, false),
            b if b.starts_with('N') => (false, parse_u32(&b[1..]).ok_or_else(|| err("bad crosscap count"))?, false),
            _ => return Err(err("unknown underlying surface")),
        };

        let mut cones = Vec::new();
        let mut mirrors = 0;
        let mut seen_cones = false;
        let mut seen_mirrors = false;
        while !rest.is_empty() {
            if let Some(tail) = rest.strip_prefix('(') {
                if seen_cones {
                    return Err(err("duplicate cone list"));
                }
                let close = tail.find(')').ok_or_else(|| err("unclosed cone list"))?;
                let body = &tail[..close];
                if !body.is_empty() {
                    for item in body.split(',') {
                        cones.push(parse_u32(item).ok_or_else(|| err("bad cone index"))?);
                    }
                }
                seen_cones = true;
                rest = &tail[close + 1..];
            } else if let Some(tail) = rest.strip_prefix("|m") {
                if seen_mirrors {
                    return Err(err("duplicate mirror suffix"));
                }
                let end = tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len());
                mirrors = parse_u32(&tail[..end]).ok_or_else(|| err("bad mirror count"))?;
                seen_mirrors = true;
                rest = &tail[end..];
            } else {
                return Err(err("unexpected trailing text"));
            }
        }
        if is_disk && mirrors == 0 {
            return Err(err("`D` denotes a genus-0 surface with at least one mirror circle"));
        }
        OrbifoldSignature::new(orientable, genus, cones, mirrors).map_err(|e| err(&e.to_string()))
    }
}

fn parse_u32(s: &str) -> Option<u32> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// All signatures of quotients `Σ_g / Z_n` for actions of the given
/// character, in canonical order.
pub fn enumerate_quotient_signatures(
    g: u32,
    n: u32,
    character: Character,
) -> Result<Vec<OrbifoldSignature>> {
    enumerate_with_bounds(g, n, character, Bounds::standard(g))
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Bounds {
    pub handles: u32,
    pub crosscaps: u32,
    pub mirrors: u32,
    pub cones: u32,
}

impl Bounds {
    pub(crate) fn standard(g: u32) -> Self {
        Bounds {
            handles: max_handles(g),
            crosscaps: max_crosscaps(g),
            mirrors: max_mirrors(g),
            cones: max_cones(g),
        }
    }
}

pub(crate) fn enumerate_with_bounds(
    g: u32,
    n: u32,
    character: Character,
    bounds: Bounds,
) -> Result<Vec<OrbifoldSignature>> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("genus must be at least 2, got {g}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("order must be at least 2, got {n}")));
    }
    let reversing = character == Character::Reversing;
    if reversing && n % 2 == 1 {
        return Err(Error::OddReversingOrder(n));
    }

    // Point stabilizers of a reversing action are rotations inside the
    // index-2 preserving subgroup.
    let rotation_bound = if reversing { n / 2 } else { n };
    let indices: Vec<u32> = (2..=rotation_bound).filter(|q| rotation_bound % q == 0).collect();
    // A reflection maps to n/2, which must itself be orientation-reversing.
    let mirrors_allowed = reversing && (n / 2) % 2 == 1;

    let target = 2 - 2 * g as i64;
    let mut out = Vec::new();
    let underlying: Vec<(bool, u32)> = if reversing {
        (0..=bounds.handles)
            .map(|h| (true, h))
            .chain((1..=bounds.crosscaps).map(|k| (false, k)))
            .collect()
    } else {
        (0..=bounds.handles).map(|h| (true, h)).collect()
    };

    for (orientable, genus) in underlying {
        let mirror_range = if mirrors_allowed { 0..=bounds.mirrors } else { 0..=0 };
        for mirrors in mirror_range {
            if reversing && orientable && mirrors == 0 {
                continue;
            }
            let chi_u = if orientable { 2 - 2 * genus as i64 } else { 2 - genus as i64 } - mirrors as i64;
            // n * chi_u - sum (n - n/q) = 2 - 2g
            let budget = n as i64 * chi_u - target;
            if budget < 0 {
                continue;
            }
            let mut current = Vec::new();
            cone_multisets(&indices, 0, n as i64, budget, bounds.cones as usize, &mut current, &mut |cones| {
                if let Ok(sig) = OrbifoldSignature::new(orientable, genus, cones.to_vec(), mirrors) {
                    out.push(sig);
                }
            });
        }
    }

    for sig in &out {
        let chi: Rational = sig.euler_characteristic();
        debug_assert_eq!(chi * Rational::from_integer(n as i64), Rational::from_integer(target));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn cone_multisets(
    indices: &[u32],
    start: usize,
    n: i64,
    budget: i64,
    max_len: usize,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if budget == 0 {
        emit(current);
        return;
    }
    if current.len() == max_len {
        return;
    }
    for (i, &q) in indices.iter().enumerate().skip(start) {
        let cost = n - n / q as i64;
        if cost > budget {
            continue;
        }
        current.push(q);
        cone_multisets(indices, i, n, budget - cost, max_len, current, emit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> OrbifoldSignature {
        s.parse().unwrap()
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(orbifold_euler_characteristic(&sig("S2(2,2,2,2,2,2)")), Rational::from_integer(-1));
        assert_eq!(orbifold_euler_characteristic(&sig("S2(5,5,5)")), Rational::new(-2, 5));
        assert_eq!(orbifold_euler_characteristic(&sig("S2")), Rational::from_integer(2));
        assert_eq!(orbifold_euler_characteristic(&sig("D(3,3)|m1")), Rational::new(-1, 3));
        let approx: f64 = sig("S2(5,5,5)").euler_characteristic();
        assert!((approx + 0.4).abs() < 1e-12);
    }

    #[test]
    fn text_forms() {
        for text in ["S2(2,2,3,3)", "T(2,2)", "N1(2,3)", "D(3,3)|m1", "N3", "T|m1", "D|m3", "Sg2(3)", "N2(2)"] {
            assert_eq!(sig(text).to_string(), text);
        }
        assert_eq!(sig("S2|m1(3,3)"), sig("D(3,3)|m1"));
        assert_eq!(sig("RP2(2,4)").to_string(), "N1(2,4)");
        assert_eq!(sig("K(2)").to_string(), "N2(2)");
        assert_eq!(sig("S2(3,2)").to_string(), "S2(2,3)");
        assert!("D(3,3)".parse::<OrbifoldSignature>().is_err());
        assert!("S2(1)".parse::<OrbifoldSignature>().is_err());
        assert!("N0".parse::<OrbifoldSignature>().is_err());
        assert!("Q(2)".parse::<OrbifoldSignature>().is_err());
    }

    fn texts(g: u32, n: u32, c: Character) -> Vec<String> {
        enumerate_quotient_signatures(g, n, c).unwrap().iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn genus_two_involutions() {
        assert_eq!(texts(2, 2, Character::Preserving), ["S2(2,2,2,2,2,2)", "T(2,2)"]);
        assert_eq!(texts(2, 2, Character::Reversing), ["D|m3", "T|m1", "N1|m2", "N2|m1", "N3"]);
    }

    #[test]
    fn genus_two_special_orders() {
        assert!(texts(2, 7, Character::Preserving).is_empty());
        assert_eq!(texts(2, 4, Character::Reversing), ["N1(2,2,2)", "N2(2)"]);
        assert_eq!(texts(2, 6, Character::Reversing), ["D(3,3)|m1", "N1(3,3)"]);
        assert_eq!(texts(2, 4, Character::Preserving), ["S2(2,2,4,4)", "S2(2,2,2,2,2)", "T(2)"]);
        assert_eq!(texts(2, 12, Character::Reversing), ["N1(2,3)"]);
    }

    #[test]
    fn reversing_odd_order_rejected() {
        assert_eq!(
            enumerate_quotient_signatures(2, 5, Character::Reversing),
            Err(Error::OddReversingOrder(5))
        );
    }

    #[test]
    fn power_character() {
        assert_eq!(Character::Reversing.power(3), Character::Reversing);
        assert_eq!(Character::Reversing.power(2), Character::Preserving);
        assert_eq!(Character::Preserving.power(1), Character::Preserving);
    }
}
