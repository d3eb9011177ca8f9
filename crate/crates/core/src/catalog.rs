//! Golden genus-2 table and the crosschecker against enumeration.
//!
//! The table ships as a line-oriented text file (`data/genus2.catalog`)
//! embedded at compile time. Fields are separated by `" | "`; a bare `|`
//! belongs to the mirror notation of signatures.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;

use crate::classifier::ActionClass;
use crate::epimorphism::{CyclicEpimorphism, Mode};
use crate::extend::{Bracket, ExtensionType};
use crate::oracle::CombinatorialCover;
use crate::orbifold::{Character, OrbifoldSignature};
use crate::{Error, Result};

const GENUS2: &str = include_str!("../data/genus2.catalog");

/// One named class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub order: u32,
    pub character: Character,
    pub signature: OrbifoldSignature,
    pub epimorphism: CyclicEpimorphism,
    pub bracket: Bracket,
    pub evidence: Vec<String>,
    pub realization: Option<String>,
    pub notes: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactStatus {
    Realized,
    RuledOut,
}

/// An extendability fact whose proof lives outside this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub class: String,
    pub ty: ExtensionType,
    pub status: FactStatus,
    pub evidence: String,
}

/// Quotient of the genus-2 surface by a word in the isometry family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFact {
    pub word: String,
    pub signature: OrbifoldSignature,
    pub class: String,
    pub evidence: String,
}

/// Linear bound `a g + b` per genus parity; `None` when unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constant {
    pub even: Option<(i64, i64)>,
    pub odd: Option<(i64, i64)>,
}

impl Constant {
    pub fn at(&self, g: u32) -> Option<i64> {
        let (a, b) = if g.is_multiple_of(2) { self.even? } else { self.odd? };
        Some(a * g as i64 + b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    evidence: BTreeMap<String, String>,
    facts: Vec<Fact>,
    quotients: Vec<QuotientFact>,
    relaxed: Vec<(OrbifoldSignature, u32)>,
    constants: BTreeMap<String, Constant>,
}

fn fields(line: &str) -> Vec<&str> {
    line.split(" | ").map(str::trim).collect()
}

fn optional(field: &str) -> Option<String> {
    (field != "-" && !field.is_empty()).then(|| field.to_string())
}

fn parse_linear(s: &str) -> Option<(i64, i64)> {
    if s == "-" {
        return None;
    }
    let (a, rest) = s.split_once('g')?;
    let a = if a.is_empty() { 1 } else { a.parse().ok()? };
    let b = if rest.is_empty() {
        0
    } else if let Some(r) = rest.strip_prefix('+') {
        r.parse().ok()?
    } else {
        rest.parse().ok()?
    };
    Some((a, b))
}

impl Catalog {
    /// Genus the shipped table describes.
    pub const GENUS: u32 = 2;

    /// The embedded genus-2 table.
    pub fn genus2() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(GENUS2).expect("embedded catalog is well formed"))
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let mut section = String::new();
        let mut catalog = Catalog {
            entries: Vec::new(),
            evidence: BTreeMap::new(),
            facts: Vec::new(),
            quotients: Vec::new(),
            relaxed: Vec::new(),
            constants: BTreeMap::new(),
        };
        let mut notes: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.to_string();
                continue;
            }
            let bad = |reason: &str| Error::Catalog(format!("line {}: {reason}: {line}", lineno + 1));
            let f = fields(line);
            match (section.as_str(), f.len()) {
                ("classes", 8) => {
                    let order: u32 = f[1].parse().map_err(|_| bad("bad order"))?;
                    let character: Character = f[2].parse()?;
                    let signature: OrbifoldSignature = f[3].parse()?;
                    let epimorphism = CyclicEpimorphism::parse(f[4], Mode::Paper)?;
                    if epimorphism.order() != order
                        || epimorphism.signature() != &signature
                        || epimorphism.character() != character
                    {
                        return Err(bad("epimorphism disagrees with order, character or signature"));
                    }
                    catalog.entries.push(CatalogEntry {
                        name: f[0].to_string(),
                        order,
                        character,
                        signature,
                        epimorphism,
                        bracket: f[5].parse()?,
                        evidence: if f[6] == "-" {
                            Vec::new()
                        } else {
                            f[6].split(',').map(|s| s.trim().to_string()).collect()
                        },
                        realization: optional(f[7]),
                        notes: None,
                    });
                }
                ("notes", 2) => notes.push((f[0].to_string(), f[1].to_string())),
                ("evidence", 2) => {
                    if catalog.evidence.insert(f[0].to_string(), f[1].to_string()).is_some() {
                        return Err(bad("duplicate evidence id"));
                    }
                }
                ("facts", 4) => catalog.facts.push(Fact {
                    class: f[0].to_string(),
                    ty: f[1].parse()?,
                    status: match f[2] {
                        "realized" => FactStatus::Realized,
                        "ruled_out" => FactStatus::RuledOut,
                        _ => return Err(bad("status must be realized or ruled_out")),
                    },
                    evidence: f[3].to_string(),
                }),
                ("quotients", 4) => catalog.quotients.push(QuotientFact {
                    word: f[0].to_string(),
                    signature: f[1].parse()?,
                    class: f[2].to_string(),
                    evidence: f[3].to_string(),
                }),
                ("presentations", 3) => {
                    if f[2] != "relaxed" {
                        return Err(bad("only relaxed presentations are supported"));
                    }
                    catalog
                        .relaxed
                        .push((f[0].parse()?, f[1].parse().map_err(|_| bad("bad order"))?));
                }
                ("constants", 3) => {
                    let even = parse_linear(f[1]);
                    let odd = parse_linear(f[2]);
                    if (even.is_none() && f[1] != "-") || (odd.is_none() && f[2] != "-") {
                        return Err(bad("bad linear form"));
                    }
                    catalog.constants.insert(f[0].to_string(), Constant { even, odd });
                }
                _ => return Err(bad("unexpected record")),
            }
        }
        for (name, note) in notes {
            let entry = catalog
                .entries
                .iter_mut()
                .find(|e| e.name == name)
                .ok_or_else(|| Error::Catalog(format!("note for unknown class {name}")))?;
            entry.notes = Some(note);
        }
        catalog.validate()?;
        Ok(catalog)
    }

    fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for e in &self.entries {
            if !names.insert(e.name.as_str()) {
                return Err(Error::Catalog(format!("duplicate class {}", e.name)));
            }
            for id in &e.evidence {
                if !self.evidence.contains_key(id) {
                    return Err(Error::Catalog(format!("{}: unknown evidence {id}", e.name)));
                }
            }
        }
        for fact in &self.facts {
            if !names.contains(fact.class.as_str()) {
                return Err(Error::Catalog(format!("fact for unknown class {}", fact.class)));
            }
            if !self.evidence.contains_key(&fact.evidence) {
                return Err(Error::Catalog(format!("fact cites unknown evidence {}", fact.evidence)));
            }
        }
        for q in &self.quotients {
            let entry = self
                .entry(&q.class)
                .ok_or_else(|| Error::Catalog(format!("quotient names unknown class {}", q.class)))?;
            if entry.signature != q.signature {
                return Err(Error::Catalog(format!("quotient of {} disagrees with {}", q.word, q.class)));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        let key = normalize_name(name);
        self.entries.iter().find(|e| normalize_name(&e.name) == key)
    }

    pub fn name_of(&self, epi: &CyclicEpimorphism) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| &e.epimorphism == epi)
            .map(|e| e.name.as_str())
    }

    /// The signature is listed with a presentation whose surjection list is
    /// taken without the parity test.
    pub fn relaxed_presentation(&self, sig: &OrbifoldSignature, n: u32) -> bool {
        self.relaxed.iter().any(|(s, m)| s == sig && *m == n)
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn facts_for<'a>(&'a self, class: &'a str) -> impl Iterator<Item = &'a Fact> + 'a {
        self.facts.iter().filter(move |f| f.class == class)
    }

    pub fn evidence_text(&self, id: &str) -> Option<&str> {
        self.evidence.get(id).map(String::as_str)
    }

    pub fn quotients(&self) -> &[QuotientFact] {
        &self.quotients
    }

    /// Class named in the quotient table for `word`.
    pub fn quotient_class(&self, word: &str) -> Option<&str> {
        self.quotients.iter().find(|q| q.word == word).map(|q| q.class.as_str())
    }

    pub fn constant(&self, name: &str) -> Option<Constant> {
        self.constants.get(name).copied()
    }
}

/// Accepts `tau_{6,2}`, `tau62` and `tau_6,2` alike.
fn normalize_name(name: &str) -> String {
    name.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ',' | ' ')).collect()
}

/// Oracle verdict on a catalog datum that strict enumeration rejects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adjudication {
    pub name: String,
    pub epimorphism: String,
    pub chi: i64,
    pub orientable: bool,
    pub connected: bool,
    /// Why strict enumeration rejects the datum.
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictMismatch {
    pub name: String,
    pub expected: String,
    pub found: String,
}

/// Differences between an enumeration and the catalog.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    /// `(catalog name, canonical epimorphism)`.
    pub matched: Vec<(String, String)>,
    pub missing_in_enumeration: Vec<String>,
    pub missing_in_catalog: Vec<String>,
    pub verdict_mismatches: Vec<VerdictMismatch>,
    pub adjudications: Vec<Adjudication>,
}

impl CrosscheckReport {
    /// Only documented entries are missing, each with an oracle verdict.
    pub fn only_documented_diffs(&self, catalog: &Catalog) -> bool {
        self.missing_in_catalog.is_empty()
            && self.verdict_mismatches.is_empty()
            && self.missing_in_enumeration.iter().all(|name| {
                catalog.entry(name).is_some_and(|e| e.notes.is_some())
                    && self.adjudications.iter().any(|a| &a.name == name)
            })
    }

    pub fn fully_matched(&self) -> bool {
        self.missing_in_enumeration.is_empty()
            && self.missing_in_catalog.is_empty()
            && self.verdict_mismatches.is_empty()
    }

    /// 0 when fully matched in paper mode, or when strict mode differs only
    /// in documented entries; 1 otherwise.
    pub fn exit_code(&self, mode: Mode, catalog: &Catalog) -> i32 {
        let ok = match mode {
            Mode::Paper => self.fully_matched(),
            Mode::Strict => self.fully_matched() || self.only_documented_diffs(catalog),
        };
        if ok {
            0
        } else {
            1
        }
    }
}

/// Compares enumerated classes (and optionally their brackets) with the
/// catalog.
pub fn crosscheck(catalog: &Catalog, classes: &[ActionClass], verdicts: Option<&[(String, Bracket)]>) -> CrosscheckReport {
    let mut report = CrosscheckReport::default();
    let mut seen = BTreeSet::new();
    for class in classes {
        match catalog.name_of(class.epimorphism()) {
            Some(name) => {
                seen.insert(name.to_string());
                report.matched.push((name.to_string(), class.epimorphism().to_string()));
            }
            None => report.missing_in_catalog.push(class.epimorphism().to_string()),
        }
    }
    for entry in catalog.entries() {
        if seen.contains(&entry.name) {
            continue;
        }
        report.missing_in_enumeration.push(entry.name.clone());
        if entry.notes.is_some() {
            if let Some(a) = adjudicate(entry) {
                report.adjudications.push(a);
            }
        }
    }
    if let Some(verdicts) = verdicts {
        for (name, bracket) in verdicts {
            if let Some(entry) = catalog.entry(name) {
                if entry.bracket != *bracket {
                    report.verdict_mismatches.push(VerdictMismatch {
                        name: entry.name.clone(),
                        expected: entry.bracket.to_string(),
                        found: bracket.to_string(),
                    });
                }
            }
        }
    }
    report
}

/// Builds the cover of a catalog datum and reports what surface it is.
pub fn adjudicate(entry: &CatalogEntry) -> Option<Adjudication> {
    let cover = CombinatorialCover::build_unchecked(&entry.epimorphism.realize()).ok()?;
    Some(Adjudication {
        name: entry.name.clone(),
        epimorphism: entry.epimorphism.to_string(),
        chi: cover.euler_characteristic(),
        orientable: cover.is_orientable(),
        connected: cover.is_connected(),
        violation: entry.epimorphism.parity_violation(),
    })
}
