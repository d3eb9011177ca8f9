//! Extendability of periodic surface maps over the 3-sphere.
//!
//! A periodic map `h` of a surface `Σ ⊂ S^3` extends with type
//! `(ε_Σ, ε_S)` when some periodic map of `S^3` leaves `Σ` invariant,
//! restricts to `h`, and has orientation signs `ε_Σ` on the surface and
//! `ε_S` on the sphere. Verdicts combine necessary-condition rules, an
//! explicit family of isometries of the sphere, and catalog facts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, lcm};
use crate::catalog::{Catalog, FactStatus};
use crate::classifier::{classify, power_class, ActionClass};
use crate::epimorphism::{CyclicEpimorphism, Mode};
use crate::orbifold::Character;
use crate::{Error, Result};

/// Orientation signs `(surface, sphere)` of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionType {
    Pp,
    Pm,
    Mp,
    Mm,
}

impl ExtensionType {
    pub const ALL: [ExtensionType; 4] = [ExtensionType::Pp, ExtensionType::Pm, ExtensionType::Mp, ExtensionType::Mm];

    pub fn from_signs(surface: Character, sphere: Character) -> Self {
        use Character::*;
        match (surface, sphere) {
            (Preserving, Preserving) => ExtensionType::Pp,
            (Preserving, Reversing) => ExtensionType::Pm,
            (Reversing, Preserving) => ExtensionType::Mp,
            (Reversing, Reversing) => ExtensionType::Mm,
        }
    }

    pub fn surface(self) -> Character {
        match self {
            ExtensionType::Pp | ExtensionType::Pm => Character::Preserving,
            _ => Character::Reversing,
        }
    }

    pub fn sphere(self) -> Character {
        match self {
            ExtensionType::Pp | ExtensionType::Mp => Character::Preserving,
            _ => Character::Reversing,
        }
    }

    /// Type of the `d`-th power of an extension of this type.
    pub fn power(self, d: u32) -> Self {
        Self::from_signs(self.surface().power(d), self.sphere().power(d))
    }

    pub fn code(self) -> &'static str {
        match self {
            ExtensionType::Pp => "pp",
            ExtensionType::Pm => "pm",
            ExtensionType::Mp => "mp",
            ExtensionType::Mm => "mm",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ExtensionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.surface().sign(), self.sphere().sign())
    }
}

impl FromStr for ExtensionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtensionType::ALL
            .into_iter()
            .find(|t| t.code() == s || t.to_string() == s)
            .ok_or_else(|| Error::Parse {
                input: s.into(),
                reason: "expected pp, pm, mp, mm or (±,±)".into(),
            })
    }
}

/// The set of sphere signs realized by a class, or unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    Known { plus: bool, minus: bool },
    Unknown,
}

impl Bracket {
    pub const EMPTY: Bracket = Bracket::Known { plus: false, minus: false };
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bracket::Known { plus: true, minus: true } => "{+,-}",
            Bracket::Known { plus: true, minus: false } => "{+}",
            Bracket::Known { plus: false, minus: true } => "{-}",
            Bracket::Known { plus: false, minus: false } => "{∅}",
            Bracket::Unknown => "unknown",
        })
    }
}

impl FromStr for Bracket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "{+,-}" | "{-,+}" => Bracket::Known { plus: true, minus: true },
            "{+}" => Bracket::Known { plus: true, minus: false },
            "{-}" => Bracket::Known { plus: false, minus: true },
            "{∅}" | "{}" => Bracket::EMPTY,
            "unknown" => Bracket::Unknown,
            other => {
                return Err(Error::Parse {
                    input: other.into(),
                    reason: "expected {+}, {-}, {+,-}, {∅} or unknown".into(),
                })
            }
        })
    }
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceSource {
    Rule,
    Construction,
    Catalog,
}

/// Why a type is ruled out or realized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Evidence {
    pub source: EvidenceSource,
    /// Rule id, construction word or catalog evidence id.
    pub id: String,
    pub detail: String,
}

impl Evidence {
    fn rule(id: &str, detail: impl Into<String>) -> Self {
        Evidence {
            source: EvidenceSource::Rule,
            id: id.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", serde_json::to_value(self.source).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(), self.id, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeStatus {
    RuledOut(Evidence),
    Realized(Evidence),
    Open,
}

impl TypeStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TypeStatus::RuledOut(_) => "ruled_out",
            TypeStatus::Realized(_) => "realized",
            TypeStatus::Open => "open",
        }
    }

    pub fn is_ruled_out(&self) -> bool {
        matches!(self, TypeStatus::RuledOut(_))
    }

    pub fn is_realized(&self) -> bool {
        matches!(self, TypeStatus::Realized(_))
    }
}

/// Per-type statuses and the combined bracket of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendabilityVerdict {
    class: String,
    statuses: [TypeStatus; 4],
    /// Every piece of evidence considered, including redundant ones.
    evidence: Vec<(ExtensionType, Evidence)>,
}

#[derive(Serialize)]
struct EvidenceRecord<'a> {
    #[serde(rename = "type")]
    ty: &'static str,
    #[serde(flatten)]
    evidence: &'a Evidence,
}

#[derive(Serialize)]
pub struct VerdictRecord<'a> {
    class: &'a str,
    types: std::collections::BTreeMap<&'static str, &'static str>,
    summary: Bracket,
    evidence: Vec<EvidenceRecord<'a>>,
}

impl ExtendabilityVerdict {
    pub fn class(&self) -> &str {
        &self.class
    }

    pub fn status(&self, ty: ExtensionType) -> &TypeStatus {
        &self.statuses[ty.index()]
    }

    pub fn evidence(&self) -> &[(ExtensionType, Evidence)] {
        &self.evidence
    }

    /// Bracket of sphere signs; unknown while any type of the class's own
    /// surface sign is open.
    pub fn summary(&self) -> Bracket {
        let mut plus = false;
        let mut minus = false;
        for ty in ExtensionType::ALL {
            match self.status(ty) {
                TypeStatus::Open => return Bracket::Unknown,
                TypeStatus::Realized(_) if ty.sphere() == Character::Preserving => plus = true,
                TypeStatus::Realized(_) => minus = true,
                TypeStatus::RuledOut(_) => {}
            }
        }
        Bracket::Known { plus, minus }
    }

    pub fn record(&self) -> VerdictRecord<'_> {
        VerdictRecord {
            class: &self.class,
            types: ExtensionType::ALL.iter().map(|&t| (t.code(), self.status(t).label())).collect(),
            summary: self.summary(),
            evidence: self
                .evidence
                .iter()
                .map(|(t, e)| EvidenceRecord {
                    ty: t.code(),
                    evidence: e,
                })
                .collect(),
        }
    }
}

/// Isometry `(z1, z2) -> (u z1 or u z̄1, v z2 or v z̄2)` of the unit sphere in
/// `C^2`, with `u, v` roots of unity stored as exponents of `e^(2πi/N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBidiagonalMap {
    modulus: u32,
    exponents: [u32; 2],
    conjugate: [bool; 2],
}

impl SignedBidiagonalMap {
    /// Exponent modulus used for genus `g`.
    pub fn modulus(g: u32) -> u32 {
        lcm(8, 4 * (g + 1))
    }

    pub fn new(g: u32, exponents: [u32; 2], conjugate: [bool; 2]) -> Self {
        let modulus = Self::modulus(g);
        SignedBidiagonalMap {
            modulus,
            exponents: exponents.map(|e| e % modulus),
            conjugate,
        }
    }

    pub fn identity(g: u32) -> Self {
        Self::new(g, [0, 0], [false, false])
    }

    /// `(z1, z2) -> (i z1, e^(πi/(g+1)) z2)`.
    pub fn tau(g: u32) -> Self {
        let n = Self::modulus(g);
        Self::new(g, [n / 4, n / (2 * (g + 1))], [false, false])
    }

    /// `(z1, z2) -> (-z1, z2)`.
    pub fn rho(g: u32) -> Self {
        Self::new(g, [Self::modulus(g) / 2, 0], [false, false])
    }

    /// `(z1, z2) -> (z̄1, z2)`.
    pub fn sigma(g: u32) -> Self {
        Self::new(g, [0, 0], [true, false])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "maps for different genera");
        let n = self.modulus;
        let mut exponents = [0; 2];
        let mut conjugate = [false; 2];
        for k in 0..2 {
            let inner = if self.conjugate[k] { (n - other.exponents[k]) % n } else { other.exponents[k] };
            exponents[k] = (self.exponents[k] + inner) % n;
            conjugate[k] = self.conjugate[k] ^ other.conjugate[k];
        }
        SignedBidiagonalMap {
            modulus: n,
            exponents,
            conjugate,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SignedBidiagonalMap {
            modulus: self.modulus,
            exponents: [0, 0],
            conjugate: [false, false],
        };
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.exponents == [0, 0] && self.conjugate == [false, false]
    }

    /// Least `k >= 1` with `self^k` the identity.
    pub fn order(&self) -> u32 {
        let mut current = *self;
        let mut k = 1;
        while !current.is_identity() {
            current = self.compose(&current);
            k += 1;
        }
        k
    }

    /// Vertex shifts `(α, β)` on the `a` and `b` vertex sets, if the map
    /// permutes both sets.
    fn vertex_shifts(&self, g: u32) -> Option<(u32, u32)> {
        let n = self.modulus;
        if n != Self::modulus(g) {
            return None;
        }
        let a_step = n / 4;
        let b_step = n / (2 * (g + 1));
        (self.exponents[0].is_multiple_of(a_step) && self.exponents[1].is_multiple_of(b_step))
            .then(|| (self.exponents[0] / a_step, self.exponents[1] / b_step))
    }

    /// Whether the map preserves the union of the two vertex-bipartite graphs
    /// joining `a_even`–`b_even` and `a_odd`–`b_odd`.
    pub fn is_graph_preserving(&self, g: u32) -> bool {
        matches!(self.vertex_shifts(g), Some((alpha, beta)) if alpha % 2 == beta % 2)
    }

    /// Whether the map exchanges the two graphs, and hence the two sides of
    /// the surface.
    pub fn swaps_sides(&self, g: u32) -> Result<bool> {
        match self.vertex_shifts(g) {
            Some((alpha, beta)) if alpha % 2 == beta % 2 => Ok(alpha % 2 == 1),
            _ => Err(Error::NotGraphPreserving(g)),
        }
    }

    /// Extension type `(ε_Σ, ε_S)` of the map on the genus-`g` surface.
    pub fn map_type(&self, g: u32) -> Result<ExtensionType> {
        let swap = self.swaps_sides(g)?;
        let conjugations = self.conjugate.iter().filter(|&&c| c).count();
        let sphere = if conjugations % 2 == 0 { Character::Preserving } else { Character::Reversing };
        let surface = if swap { flip(sphere) } else { sphere };
        Ok(ExtensionType::from_signs(surface, sphere))
    }

    /// Parses a word such as `sigma rho tau^3`, composed right to left.
    pub fn from_word(word: &str, g: u32) -> Result<Self> {
        let mut out = Self::identity(g);
        for token in word.split_whitespace() {
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>().map_err(|_| Error::Parse {
                        input: word.into(),
                        reason: format!("bad exponent in `{token}`"),
                    })?,
                ),
                None => (token, 1),
            };
            let generator = match base {
                "tau" => Self::tau(g),
                "rho" => Self::rho(g),
                "sigma" => Self::sigma(g),
                _ => {
                    return Err(Error::Parse {
                        input: word.into(),
                        reason: format!("unknown generator `{base}`"),
                    })
                }
            };
            out = out.compose(&generator.pow(exp));
        }
        Ok(out)
    }
}

fn flip(c: Character) -> Character {
    match c {
        Character::Preserving => Character::Reversing,
        Character::Reversing => Character::Preserving,
    }
}

fn word_text(a: u32, b: u32, k: u32) -> String {
    let mut parts = Vec::new();
    if a == 1 {
        parts.push("sigma".to_string());
    }
    if b == 1 {
        parts.push("rho".to_string());
    }
    match k {
        0 => {}
        1 => parts.push("tau".into()),
        k => parts.push(format!("tau^{k}")),
    }
    parts.join(" ")
}

type RuleResult = [Option<Evidence>; 4];

/// Necessary-condition rules, memoized over the powers they recurse into.
#[derive(Default)]
pub struct ObstructionEngine {
    memo: HashMap<CyclicEpimorphism, RuleResult>,
}

impl ObstructionEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Per-type statuses from the rules alone.
    pub fn apply(&mut self, class: &ActionClass) -> Result<[TypeStatus; 4]> {
        Ok(self
            .rules(class)?
            .map(|e| e.map_or(TypeStatus::Open, TypeStatus::RuledOut)))
    }

    fn rules(&mut self, class: &ActionClass) -> Result<RuleResult> {
        if let Some(hit) = self.memo.get(class.epimorphism()) {
            return Ok(hit.clone());
        }
        let mut out: RuleResult = Default::default();
        let n = class.order();
        let character = class.character();
        let sig = class.signature();
        let rule_out = |out: &mut RuleResult, ty: ExtensionType, evidence: Evidence| {
            out[ty.index()].get_or_insert(evidence);
        };

        for ty in ExtensionType::ALL {
            if ty.surface() != character {
                rule_out(&mut out, ty, Evidence::rule("R-char", format!("surface sign of the class is {}", character.sign())));
            }
        }
        if character == Character::Preserving {
            let cones = sig.cone_indices();
            if cones.len() % 2 == 1 {
                rule_out(
                    &mut out,
                    ExtensionType::Pp,
                    Evidence::rule("R-odd", format!("odd number of cone points in {sig}")),
                );
            }
            if cones.contains(&n) && cones.iter().any(|&q| q < n) {
                rule_out(
                    &mut out,
                    ExtensionType::Pp,
                    Evidence::rule("R-top", format!("{sig} mixes cones of index {n} with lower indices")),
                );
            }
        }
        if n % 2 == 1 {
            for ty in [ExtensionType::Pm, ExtensionType::Mm] {
                rule_out(&mut out, ty, Evidence::rule("R-oddorder", format!("odd order {n}")));
            }
        }
        if n == 2 {
            match character {
                Character::Preserving => {
                    let fixed = class.fixed_points(1)?;
                    if fixed > 2 {
                        rule_out(
                            &mut out,
                            ExtensionType::Pm,
                            Evidence::rule("R-inv-fix-pres", format!("involution with {fixed} fixed points")),
                        );
                    }
                }
                Character::Reversing => {
                    let profile = class.involution_profile().expect("reversing involution");
                    if profile.circle_count > 1 {
                        rule_out(
                            &mut out,
                            ExtensionType::Mp,
                            Evidence::rule("R-inv-fix-rev-p", format!("{} fixed circles", profile.circle_count)),
                        );
                    }
                    if profile.circle_count >= 1 && profile.complement_components == 1 {
                        rule_out(
                            &mut out,
                            ExtensionType::Mm,
                            Evidence::rule("R-inv-fix-rev-r", "fixed circles do not separate the surface"),
                        );
                    }
                }
            }
        }

        for d in divisors(n).into_iter().filter(|&d| d > 1 && d < n) {
            let power = match power_class(class, d) {
                Ok(p) => p,
                Err(Error::NonOrientableCover(_)) => continue,
                Err(e) => return Err(e),
            };
            let below = self.rules(&power)?;
            for ty in ExtensionType::ALL {
                if out[ty.index()].is_some() {
                    continue;
                }
                let forced = ty.power(d);
                if let Some(reason) = &below[forced.index()] {
                    out[ty.index()] = Some(Evidence::rule(
                        "R-power",
                        format!("power {d} would be {} of type {forced}, ruled out by {}", power.label(), reason.id),
                    ));
                }
            }
        }
        self.memo.insert(class.epimorphism().clone(), out.clone());
        Ok(out)
    }
}

/// Per-type statuses from the rules alone.
pub fn apply_obstructions(class: &ActionClass) -> Result<[TypeStatus; 4]> {
    ObstructionEngine::new().apply(class)
}

/// Class of the generator `τ(g)` among the order-`(4g+4)` classes.
fn tau_class(g: u32) -> Result<Option<ActionClass>> {
    let candidates = classify(g, 4 * g + 4, Character::Reversing, Mode::Strict)?;
    if g == Catalog::GENUS {
        let named = Catalog::genus2().quotient_class("tau");
        return Ok(candidates.into_iter().find(|c| named.is_some() && c.name() == named));
    }
    Ok(match candidates.len() {
        1 => candidates.into_iter().next(),
        _ => None,
    })
}

/// Types realized by words `σ^a ρ^b τ^k` in the isometry family.
pub fn realize_from_constructions(class: &ActionClass) -> Result<Vec<(ExtensionType, Evidence)>> {
    let g = class.genus();
    let n = class.order();
    let tau = SignedBidiagonalMap::tau(g);
    let tau_order = tau.order();
    let mut tau_class_cache: Option<Option<ActionClass>> = None;
    let catalog = (g == Catalog::GENUS).then(Catalog::genus2);
    let mut found: Vec<(ExtensionType, Evidence)> = Vec::new();
    for k in 0..tau_order {
        for a in 0..2 {
            for b in 0..2 {
                let word = word_text(a, b, k);
                let map = SignedBidiagonalMap::sigma(g)
                    .pow(a)
                    .compose(&SignedBidiagonalMap::rho(g).pow(b))
                    .compose(&tau.pow(k));
                if map.is_identity() || map.order() != n {
                    continue;
                }
                let ty = map.map_type(g)?;
                if ty.surface() != class.character() || found.iter().any(|(t, _)| *t == ty) {
                    continue;
                }
                let via_power = (0..tau_order).find(|&j| tau.pow(j) == map);
                let matched = match via_power {
                    Some(j) => {
                        let base = tau_class_cache.get_or_insert_with(|| tau_class(g).ok().flatten());
                        match base {
                            Some(base) if j == 1 => base.epimorphism() == class.epimorphism(),
                            Some(base) => match power_class(base, j) {
                                Ok(p) => p.epimorphism() == class.epimorphism(),
                                Err(_) => false,
                            },
                            None => false,
                        }
                    }
                    None => catalog.is_some_and(|c| {
                        c.quotients().iter().any(|q| {
                            SignedBidiagonalMap::from_word(&q.word, g).is_ok_and(|m| m == map)
                                && class.name() == Some(q.class.as_str())
                        })
                    }),
                };
                if matched {
                    found.push((
                        ty,
                        Evidence {
                            source: EvidenceSource::Construction,
                            id: if word.is_empty() { "id".into() } else { word.clone() },
                            detail: format!("restriction of {word} (order {n}, type {ty})"),
                        },
                    ));
                }
            }
        }
    }
    Ok(found)
}

/// Which evidence sources [`decide_with`] consults besides the rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sources {
    pub constructions: bool,
    pub catalog: bool,
}

impl Sources {
    pub const ALL: Sources = Sources {
        constructions: true,
        catalog: true,
    };
    pub const RULES_ONLY: Sources = Sources {
        constructions: false,
        catalog: false,
    };
}

/// Full verdict from rules, constructions and catalog facts.
pub fn decide(class: &ActionClass) -> Result<ExtendabilityVerdict> {
    decide_with(&mut ObstructionEngine::new(), class, Sources::ALL)
}

/// Verdict from the obstruction rules alone.
pub fn decide_rules_only(class: &ActionClass) -> Result<ExtendabilityVerdict> {
    decide_with(&mut ObstructionEngine::new(), class, Sources::RULES_ONLY)
}

pub fn decide_with(engine: &mut ObstructionEngine, class: &ActionClass, sources: Sources) -> Result<ExtendabilityVerdict> {
    let mut ruled: Vec<(ExtensionType, Evidence)> = Vec::new();
    let mut realized: Vec<(ExtensionType, Evidence)> = Vec::new();
    for (ty, status) in ExtensionType::ALL.into_iter().zip(engine.apply(class)?) {
        if let TypeStatus::RuledOut(e) = status {
            ruled.push((ty, e));
        }
    }
    if sources.constructions {
        realized.extend(realize_from_constructions(class)?);
    }
    if sources.catalog && class.genus() == Catalog::GENUS {
        if let Some(name) = class.name() {
            let catalog = Catalog::genus2();
            for fact in catalog.facts_for(name) {
                let evidence = Evidence {
                    source: EvidenceSource::Catalog,
                    id: fact.evidence.clone(),
                    detail: catalog.evidence_text(&fact.evidence).unwrap_or_default().to_string(),
                };
                match fact.status {
                    FactStatus::Realized => realized.push((fact.ty, evidence)),
                    FactStatus::RuledOut => ruled.push((fact.ty, evidence)),
                }
            }
        }
    }

    let statuses = ExtensionType::ALL.map(|ty| {
        let r = ruled.iter().find(|(t, _)| *t == ty);
        let z = realized.iter().find(|(t, _)| *t == ty);
        match (r, z) {
            (Some((_, r)), Some((_, z))) => Err(Error::Inconsistent {
                class: class.label(),
                ty: ty.to_string(),
                ruled_out: r.to_string(),
                realized: z.to_string(),
            }),
            (Some((_, r)), None) => Ok(TypeStatus::RuledOut(r.clone())),
            (None, Some((_, z))) => Ok(TypeStatus::Realized(z.clone())),
            (None, None) => Ok(TypeStatus::Open),
        }
    });
    let [a, b, c, d] = statuses;
    let statuses = [a?, b?, c?, d?];
    let mut evidence: Vec<(ExtensionType, Evidence)> = ruled.into_iter().chain(realized).collect();
    evidence.sort_by_key(|(t, _)| *t);
    Ok(ExtendabilityVerdict {
        class: class.label(),
        statuses,
        evidence,
    })
}
