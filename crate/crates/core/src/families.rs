//! Example families (cycle path ideals, generic Pfaffians) and the
//! machine-readable regression corpus.
//!
//! The corpus ships as input-grammar text files plus a JSON manifest of
//! expected verdicts (see `corpus/` in this crate); the same data is
//! embedded so the library and CLI run it without touching the filesystem.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_linear_type, rees_ideal};
use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::resolve::{free_resolution, reg_xy};
use crate::ring::parse::{parse_session, Session};
use crate::ring::poly::Polynomial;
use crate::ring::{FieldSpec, Monomial, Ring};
use crate::sequences::{
    is_almost_regular, is_c_sequence, is_d_sequence, is_interval_type, is_m_sequence,
    is_regular_sequence, is_s_sequence, is_seq_linear_type, is_unconditioned_d,
    msequence_c_criterion, SaturatingBlock, Verdict,
};

/// Generators of the path ideal of the cycle C_n: n monomials, each the
/// product of `len` cyclically consecutive variables.
pub fn cycle_path_ideal(n: usize, len: usize) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    if n < 3 || len < 1 || len > n - 1 {
        return Err(Error::Unsupported(format!(
            "cycle path ideal needs 3 <= n and 1 <= len <= n-1, got n={n}, len={len}"
        )));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::standard(&name_refs, FieldSpec::Rational);
    let gens = (0..n)
        .map(|i| {
            let mut exps = vec![0u16; n];
            for o in 0..len {
                exps[(i + o) % n] = 1;
            }
            Polynomial::from_monomial(&ring, Monomial::new(exps))
        })
        .collect();
    Ok((ring, gens))
}

/// The n = 2r+1 maximal-order Pfaffians of a generic skew-symmetric matrix:
/// P_k is the Pfaffian of the submatrix deleting row and column k, expanded
/// recursively along the first remaining row with alternating signs.
pub fn pfaffian_sequence(r: usize) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    if r < 2 {
        return Err(Error::Unsupported("pfaffian family needs r >= 2".into()));
    }
    if r > 3 {
        return Err(Error::Unsupported("pfaffian family capped at r = 3".into()));
    }
    let n = 2 * r + 1;
    let mut names = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            names.push(format!("u{i}{j}"));
        }
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::standard(&name_refs, FieldSpec::Rational);
    let var_of = |i: usize, j: usize| -> Polynomial {
        debug_assert!(i < j);
        let name = format!("u{i}{j}");
        Polynomial::var(&ring, ring.var_index(&name).expect("declared"))
    };
    let gens = (1..=n)
        .map(|k| {
            let idx: Vec<usize> = (1..=n).filter(|&i| i != k).collect();
            pfaffian_of(&ring, &var_of, &idx)
        })
        .collect();
    Ok((ring, gens))
}

fn pfaffian_of(
    ring: &Arc<Ring>,
    var_of: &dyn Fn(usize, usize) -> Polynomial,
    idx: &[usize],
) -> Polynomial {
    if idx.is_empty() {
        return Polynomial::one(ring);
    }
    debug_assert!(idx.len() % 2 == 0);
    let i0 = idx[0];
    let mut acc = Polynomial::zero(ring);
    for t in 1..idx.len() {
        let j = idx[t];
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&v| v != j).collect();
        let term = var_of(i0, j).mul(&pfaffian_of(ring, var_of, &rest));
        acc = if t % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// An expected verdict value: boolean property or integer invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expected {
    Bool(bool),
    Int(i64),
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Bool(b) => write!(f, "{b}"),
            Expected::Int(i) => write!(f, "{i}"),
        }
    }
}

/// One corpus entry: an input document plus its expected verdict map.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub source: String,
    pub input: String,
    pub expect: BTreeMap<String, Expected>,
    pub expect_witness: BTreeMap<String, Vec<String>>,
    pub skip: Option<String>,
}

impl CorpusEntry {
    pub fn session(&self) -> Result<Session> {
        parse_session(&self.input)
    }
}

#[derive(Debug, Deserialize)]
struct ManifestFile {
    schema: String,
    entries: Vec<ManifestEntry>,
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    id: String,
    file: String,
    source: String,
    #[serde(default)]
    expect: BTreeMap<String, Expected>,
    #[serde(default)]
    witness: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    skip: Option<String>,
}

const MANIFEST: &str = include_str!("../corpus/manifest.json");

const CORPUS_FILES: &[(&str, &str)] = &[
    ("2_4_1.txt", include_str!("../corpus/2_4_1.txt")),
    ("2_4_2.txt", include_str!("../corpus/2_4_2.txt")),
    ("2_4_3.txt", include_str!("../corpus/2_4_3.txt")),
    ("2_4_4.txt", include_str!("../corpus/2_4_4.txt")),
    ("2_4_5.txt", include_str!("../corpus/2_4_5.txt")),
    ("2_4_6.txt", include_str!("../corpus/2_4_6.txt")),
    ("2_4_7.txt", include_str!("../corpus/2_4_7.txt")),
    ("2_4_8.txt", include_str!("../corpus/2_4_8.txt")),
    ("2_10_1.txt", include_str!("../corpus/2_10_1.txt")),
    ("2_12_1.txt", include_str!("../corpus/2_12_1.txt")),
    ("2_12_2.txt", include_str!("../corpus/2_12_2.txt")),
    ("2_12_3.txt", include_str!("../corpus/2_12_3.txt")),
];

fn entries_from_manifest(
    manifest: &str,
    read: impl Fn(&str) -> Result<String>,
) -> Result<Vec<CorpusEntry>> {
    let parsed: ManifestFile = serde_json::from_str(manifest)
        .map_err(|e| Error::Unsupported(format!("corpus manifest: {e}")))?;
    if parsed.schema != "lintype/corpus/1" {
        return Err(Error::Unsupported(format!(
            "unsupported corpus manifest schema `{}`",
            parsed.schema
        )));
    }
    let mut out = Vec::with_capacity(parsed.entries.len());
    for e in parsed.entries {
        for key in e.expect.keys().chain(e.witness.keys()) {
            if !PROPERTY_KEYS.contains(&key.as_str()) {
                return Err(Error::Unsupported(format!(
                    "corpus entry {}: unknown property key `{key}`",
                    e.id
                )));
            }
        }
        out.push(CorpusEntry {
            id: e.id,
            source: e.source,
            input: read(&e.file)?,
            expect: e.expect,
            expect_witness: e.witness,
            skip: e.skip,
        });
    }
    Ok(out)
}

/// The shipped regression corpus (embedded copy of `corpus/`).
pub fn corpus() -> Vec<CorpusEntry> {
    entries_from_manifest(MANIFEST, |name| {
        CORPUS_FILES
            .iter()
            .find(|(f, _)| *f == name)
            .map(|(_, content)| content.to_string())
            .ok_or_else(|| Error::Unsupported(format!("embedded corpus file `{name}` missing")))
    })
    .expect("embedded corpus is well-formed")
}

/// Load a corpus from a manifest directory on disk.
pub fn corpus_from_dir(dir: &std::path::Path) -> Result<Vec<CorpusEntry>> {
    let manifest = std::fs::read_to_string(dir.join("manifest.json"))
        .map_err(|e| Error::Unsupported(format!("reading manifest.json: {e}")))?;
    entries_from_manifest(&manifest, |name| {
        std::fs::read_to_string(dir.join(name))
            .map_err(|e| Error::Unsupported(format!("reading corpus file `{name}`: {e}")))
    })
}

/// Every property key the corpus and CLI understand.
pub const PROPERTY_KEYS: &[&str] = &[
    "regular",
    "d-seq",
    "wrr",
    "c-seq",
    "seq-lt",
    "almost-reg",
    "s-seq",
    "strong-s-seq",
    "m-seq",
    "interval-type",
    "m-seq-c-criterion",
    "uncond-d",
    "linear-type",
    "rees-reg-x",
    "rees-reg-y",
    "height",
    "min-gens",
];

/// The outcome of evaluating one property on one input.
#[derive(Debug, Clone)]
pub enum Observed {
    Bool(Verdict),
    Int(i64),
}

impl Observed {
    pub fn matches(&self, expected: Expected) -> bool {
        match (self, expected) {
            (Observed::Bool(v), Expected::Bool(b)) => v.result == b,
            (Observed::Int(i), Expected::Int(j)) => *i == j,
            _ => false,
        }
    }

    pub fn display_value(&self) -> String {
        match self {
            Observed::Bool(v) => v.result.to_string(),
            Observed::Int(i) => i.to_string(),
        }
    }
}

/// Evaluate one property key against an input document. Boolean keys run
/// the corresponding sequence decider on the document's main sequence;
/// integer keys compute the named invariant of the ideal it generates.
pub fn check_property(key: &str, session: &Session) -> Result<Observed> {
    let base = &session.ring;
    let gens: Vec<Polynomial> = session
        .main_sequence()
        .ok_or_else(|| Error::Unsupported("input declares no sequence or ideal".into()))?
        .to_vec();
    let verdict = |v: Verdict| Ok(Observed::Bool(v));
    if base.is_quotient()
        && matches!(
            key,
            "s-seq" | "strong-s-seq" | "linear-type" | "rees-reg-x" | "rees-reg-y" | "height"
                | "min-gens"
        )
    {
        return Err(Error::QuotientUnsupported);
    }
    match key {
        "regular" => verdict(is_regular_sequence(&gens, base)?),
        "d-seq" => verdict(is_d_sequence(&gens, base)?),
        "wrr" => verdict(is_weak_rel_reg_compat(&gens, base)?),
        "c-seq" => verdict(is_c_sequence(&gens, base)?),
        "seq-lt" => verdict(is_seq_linear_type(&gens, base)?),
        "almost-reg" => verdict(is_almost_regular(&gens, base, SaturatingBlock::All)?),
        "s-seq" => verdict(is_s_sequence(&gens, false)?),
        "strong-s-seq" => verdict(is_s_sequence(&gens, true)?),
        "m-seq" => verdict(is_m_sequence(&gens)?),
        "interval-type" => verdict(is_interval_type(&gens)?),
        "m-seq-c-criterion" => verdict(msequence_c_criterion(&gens)?),
        "uncond-d" => verdict(is_unconditioned_d(&gens, base)?),
        "linear-type" => {
            let b = is_linear_type(&gens)?;
            let mut v = Verdict {
                property: "linear-type".into(),
                result: b,
                fail_index: None,
                witnesses: Default::default(),
                notes: Vec::new(),
            };
            if !b {
                v.notes.push("the Rees ideal strictly contains the symmetric ideal".into());
            }
            Ok(Observed::Bool(v))
        }
        "rees-reg-x" | "rees-reg-y" => {
            let pres = rees_ideal(&gens)?;
            let res = free_resolution(&pres)?;
            let (rx, ry) = reg_xy(&res)?;
            let v = if key == "rees-reg-x" { rx } else { ry };
            Ok(Observed::Int(v.ok_or_else(|| {
                Error::Unsupported("regularity of the zero module is -infinity".into())
            })?))
        }
        "height" => {
            let h = IdealHandle::in_base(base, gens).height()?;
            Ok(Observed::Int(h as i64))
        }
        "min-gens" => {
            let m = IdealHandle::in_base(base, gens).minimal_generators()?.len();
            Ok(Observed::Int(m as i64))
        }
        _ => Err(Error::Unsupported(format!("unknown property key `{key}`"))),
    }
}

// thin rename shim so the dispatch table reads uniformly
use crate::sequences::is_weak_rel_reg as is_weak_rel_reg_compat;

/// Result of checking one expected value of a corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub key: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    /// Some(true/false) when the manifest pins a witness ideal for this key.
    pub witness_ok: Option<bool>,
}

/// Result of evaluating a whole corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub skipped: Option<String>,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

/// Run every expected verdict of a corpus entry, including pinned witness
/// ideals, and report pass/fail per key.
pub fn evaluate_entry(entry: &CorpusEntry) -> Result<EntryReport> {
    if let Some(reason) = &entry.skip {
        return Ok(EntryReport {
            id: entry.id.clone(),
            skipped: Some(reason.clone()),
            pass: true,
            checks: Vec::new(),
        });
    }
    let session = entry.session()?;
    let mut checks = Vec::new();
    let mut all = true;
    for (key, &expected) in &entry.expect {
        let observed = check_property(key, &session)?;
        let mut pass = observed.matches(expected);
        let mut witness_ok = None;
        if let Some(gens) = entry.expect_witness.get(key) {
            let ok = match &observed {
                Observed::Bool(v) => {
                    let want: Result<Vec<Polynomial>> = gens
                        .iter()
                        .map(|s| crate::ring::parse::parse_polynomial(s, &session.ring.ring))
                        .collect();
                    let want = IdealHandle::in_base(&session.ring, want?);
                    let got = v.witnesses.intersection.as_ref().or(v.witnesses.colon.as_ref());
                    got.map(|h| h.equals(&want)).unwrap_or(false)
                }
                Observed::Int(_) => false,
            };
            witness_ok = Some(ok);
            pass = pass && ok;
        }
        all = all && pass;
        checks.push(CheckReport {
            key: key.clone(),
            expected: expected.to_string(),
            observed: observed.display_value(),
            pass,
            witness_ok,
        });
    }
    Ok(EntryReport { id: entry.id.clone(), skipped: None, pass: all, checks })
}
