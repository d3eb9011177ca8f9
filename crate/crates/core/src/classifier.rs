//! Conjugacy classes of cyclic actions, their powers and fixed-point data.
//!
//! Two actions of `Z_n` on a genus-`g` surface are conjugate in the mapping
//! class group exactly when their epimorphisms agree up to the moves applied
//! by [`canonicalize`](crate::epimorphism::canonicalize), so a class is stored
//! as its canonical epimorphism.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::catalog::Catalog;
use crate::epimorphism::{canonical_classes, canonicalize, enumerate_epimorphisms, CyclicEpimorphism, Mode};
use crate::oracle::{CombinatorialCover, FixedLocusProfile};
use crate::orbifold::{enumerate_quotient_signatures, Character, OrbifoldSignature};
use crate::{Error, Result};

/// A conjugacy class of a periodic map on a closed orientable surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionClass {
    name: Option<String>,
    genus: u32,
    epi: CyclicEpimorphism,
    mode_provenance: Mode,
}

/// Fixed-point count of one orientation-preserving power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerFixedPoints {
    pub power: u32,
    pub fixed_points: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedData {
    pub powers: Vec<PowerFixedPoints>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<FixedLocusProfile>,
}

/// Serialized form of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub genus: u32,
    pub order: u32,
    pub character: Character,
    pub signature: String,
    pub cone_images: Vec<u32>,
    pub crosscap_images: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_value: Option<u32>,
    pub mode_provenance: Mode,
    pub fixed_data: FixedData,
}

impl ActionClass {
    /// Wraps an epimorphism whose kernel is a genus-`genus` surface group.
    pub fn new(genus: u32, epi: &CyclicEpimorphism) -> Self {
        let mode_provenance = if epi.strict_parity() { Mode::Strict } else { Mode::Paper };
        ActionClass {
            name: None,
            genus,
            epi: canonicalize(epi),
            mode_provenance,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Catalog name if present, else the canonical epimorphism text.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.epi.to_string())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn order(&self) -> u32 {
        self.epi.order()
    }

    pub fn character(&self) -> Character {
        self.epi.character()
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        self.epi.signature()
    }

    pub fn epimorphism(&self) -> &CyclicEpimorphism {
        &self.epi
    }

    pub fn mode_provenance(&self) -> Mode {
        self.mode_provenance
    }

    /// Number of fixed points of the `d`-th power; only defined for
    /// nontrivial orientation-preserving powers.
    pub fn fixed_points(&self, d: u32) -> Result<u32> {
        let n = self.order();
        if d.is_multiple_of(n) {
            return Err(Error::InvalidArgument(format!("power {d} of an order-{n} map is the identity")));
        }
        if self.character().power(d) == Character::Reversing {
            return Err(Error::InvalidArgument(format!(
                "power {d} reverses orientation; its fixed set is not a finite point set"
            )));
        }
        Ok(self
            .signature()
            .cone_indices()
            .iter()
            .map(|&q| n / q)
            .filter(|&step| d.is_multiple_of(step))
            .sum())
    }

    /// Fixed circles and complement components of an orientation-reversing
    /// involution; `None` for other classes.
    pub fn involution_profile(&self) -> Option<FixedLocusProfile> {
        if self.order() != 2 || self.character() != Character::Reversing {
            return None;
        }
        let sig = self.signature();
        Some(FixedLocusProfile {
            circle_count: sig.mirror_circles(),
            complement_components: if sig.is_orientable() { 2 } else { 1 },
        })
    }

    pub fn fixed_data(&self) -> FixedData {
        let powers = (1..self.order())
            .filter_map(|d| {
                self.fixed_points(d).ok().map(|fixed_points| PowerFixedPoints {
                    power: d,
                    fixed_points,
                })
            })
            .collect();
        FixedData {
            powers,
            involution: self.involution_profile(),
        }
    }

    pub fn record(&self) -> ClassRecord {
        ClassRecord {
            name: self.name.clone(),
            genus: self.genus,
            order: self.order(),
            character: self.character(),
            signature: self.signature().to_string(),
            cone_images: self.epi.cone_images().to_vec(),
            crosscap_images: self.epi.crosscap_images().to_vec(),
            mirror_value: self.epi.mirror_value(),
            mode_provenance: self.mode_provenance,
            fixed_data: self.fixed_data(),
        }
    }
}

impl fmt::Display for ActionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name}: {}", self.epi),
            None => write!(f, "{}", self.epi),
        }
    }
}

/// All conjugacy classes of order-`n` actions of the given character on the
/// genus-`g` surface.
///
/// In paper mode, signatures the catalog lists with a relaxed presentation
/// are enumerated without the orientation-character parity test; every other
/// signature is enumerated strictly in both modes.
pub fn classify(g: u32, n: u32, character: Character, mode: Mode) -> Result<Vec<ActionClass>> {
    let signatures = enumerate_quotient_signatures(g, n, character)?;
    let catalog = (g == Catalog::GENUS).then(Catalog::genus2);
    let mut classes = Vec::new();
    for sig in &signatures {
        let relaxed = mode == Mode::Paper && catalog.is_some_and(|c| c.relaxed_presentation(sig, n));
        let epi_mode = if relaxed { Mode::Paper } else { Mode::Strict };
        let epis = enumerate_epimorphisms(sig, n, character, epi_mode)?;
        for epi in canonical_classes(&epis) {
            let class = ActionClass::new(g, &epi);
            classes.push(match catalog.and_then(|c| c.name_of(class.epimorphism())) {
                Some(name) => class.with_name(name),
                None => class,
            });
        }
    }
    Ok(classes)
}

/// Upper end of the order scan used by [`classify_all`].
pub fn scan_limit(g: u32) -> u32 {
    2 * (4 * g + 4)
}

/// Every class of every order up to twice the largest possible order, both
/// characters. Finding a class above `4g + 4` is reported as an error.
pub fn classify_all(g: u32, mode: Mode) -> Result<Vec<ActionClass>> {
    let bound = 4 * g + 4;
    let mut all = Vec::new();
    for n in 2..=scan_limit(g) {
        for character in Character::ALL {
            if character == Character::Reversing && n % 2 == 1 {
                continue;
            }
            let classes = classify(g, n, character, mode)?;
            if n > bound && !classes.is_empty() {
                return Err(Error::ScanBound { genus: g, order: n, bound });
            }
            all.extend(classes);
        }
    }
    Ok(all)
}

/// Largest order of a periodic map on the genus-`g` surface, optionally
/// restricted to one character.
pub fn max_order(g: u32, character: Option<Character>, mode: Mode) -> Result<u32> {
    let classes = classify_all(g, mode)?;
    Ok(classes
        .iter()
        .filter(|c| character.is_none_or(|ch| c.character() == ch))
        .map(ActionClass::order)
        .max()
        .unwrap_or(1))
}

/// Invariants of a cyclic action read off a cover, used to recognise the
/// class of a power among the enumerated classes of its order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fingerprint {
    signature: OrbifoldSignature,
    exact: Option<CyclicEpimorphism>,
    cones: Vec<(u32, u32)>,
    fixed: Vec<Option<u32>>,
    involution: Option<FixedLocusProfile>,
}

fn fingerprint(cover: &CombinatorialCover, d: u32) -> Result<Fingerprint> {
    let quotient = cover.quotient(d)?;
    let n = cover.order();
    let m = quotient.order;
    let element = |j: u32| (j as u64 * d as u64 % n as u64) as u32;
    let exact = if quotient.character == Character::Preserving {
        let images = quotient.cones.iter().map(|&(_, j)| j).collect();
        let epi = CyclicEpimorphism::new(quotient.signature.clone(), m, images, Vec::new(), Mode::Strict)?;
        Some(canonicalize(&epi))
    } else {
        None
    };
    let cones = if exact.is_some() { Vec::new() } else { quotient.cones.clone() };
    let mut fixed = Vec::new();
    for j in 1..m {
        let y = element(j);
        fixed.push(match cover.character_of(y)? {
            Character::Preserving => Some(cover.fixed_points(y)),
            Character::Reversing => None,
        });
    }
    let involution = if m % 2 == 0 && cover.character_of(element(m / 2))? == Character::Reversing {
        Some(cover.involution_profile(element(m / 2))?)
    } else {
        None
    };
    Ok(Fingerprint {
        signature: quotient.signature,
        exact,
        cones,
        fixed,
        involution,
    })
}

/// Class of the `d`-th power of `class`.
///
/// The cover of `class` is rebuilt and divided by the subgroup generated by
/// the power; the resulting quotient data is matched against every class of
/// the power's order.
pub fn power_class(class: &ActionClass, d: u32) -> Result<ActionClass> {
    let n = class.order();
    let m = n / gcd(n, d % n);
    if m < 2 {
        return Err(Error::InvalidArgument(format!("power {d} of an order-{n} map is the identity")));
    }
    let cover = CombinatorialCover::from_epimorphism(class.epimorphism())?;
    let target = fingerprint(&cover, d)?;
    let character = class.character().power(d);
    let mut matches = Vec::new();
    for candidate in classify(class.genus(), m, character, class.mode_provenance())? {
        let candidate_cover = match CombinatorialCover::from_epimorphism(candidate.epimorphism()) {
            Ok(c) if c.is_orientable() => c,
            _ => continue,
        };
        if fingerprint(&candidate_cover, 1)? == target {
            matches.push(candidate);
        }
    }
    match matches.len() {
        1 => Ok(matches.pop().expect("one match")),
        _ => Err(Error::AmbiguousPower {
            class: class.label(),
            exponent: d,
            candidates: matches.iter().map(ActionClass::label).collect(),
        }),
    }
}
