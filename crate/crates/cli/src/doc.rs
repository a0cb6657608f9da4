//! Interchange documents: one JSON object per file, tagged by `kind` and
//! carrying a `version`.
//!
//! ```json
//! {"kind": "lattice", "version": 1, "name": "c3",
//!  "elements": ["0", "m", "1"], "cover": [[0, 1], [1, 2]]}
//! ```

use serde::{Deserialize, Serialize};

use frame_canext::canext::{CanExtBundle, Provenance};
use frame_canext::filters::scott_open_poset;
use frame_canext::order::{build_lattice, FiniteLattice, RelationMode};
use frame_canext::polarity::Polarity;
use frame_canext::proximity::ProximityLattice;
use frame_canext::spaces::FiniteSpace;
use frame_canext::Bits;

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

fn version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Lattice(LatticeDoc),
    Space(SpaceDoc),
    Map(MapDoc),
    Polarity(PolarityDoc),
    Proximity(ProximityDoc),
    Canext(CanExtDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Space(_) => "space",
            Document::Map(_) => "map",
            Document::Polarity(_) => "polarity",
            Document::Proximity(_) => "proximity",
            Document::Canext(_) => "canext",
        }
    }

    pub fn version(&self) -> u32 {
        match self {
            Document::Lattice(d) => d.version,
            Document::Space(d) => d.version,
            Document::Map(d) => d.version,
            Document::Polarity(d) => d.version,
            Document::Proximity(d) => d.version,
            Document::Canext(d) => d.version,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Lattice(d) => d.name.as_deref(),
            Document::Space(d) => d.name.as_deref(),
            Document::Map(d) => d.name.as_deref(),
            Document::Polarity(d) => d.name.as_deref(),
            Document::Proximity(d) => d.name.as_deref(),
            Document::Canext(d) => d.name.as_deref(),
        }
    }
}

/// A lattice given by element names and its cover pairs, or with `leq`
/// any relation generating the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub cover: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leq: Vec<[usize; 2]>,
}

fn index_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl LatticeDoc {
    pub fn from_lattice(name: Option<&str>, l: &FiniteLattice) -> LatticeDoc {
        LatticeDoc {
            version: FORMAT_VERSION,
            name: name.map(str::to_string),
            elements: l
                .names()
                .map(<[String]>::to_vec)
                .unwrap_or_else(|| index_names(l.size())),
            cover: l.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            leq: Vec::new(),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice, CliError> {
        let n = self.elements.len();
        let l = if self.leq.is_empty() {
            let pairs: Vec<(usize, usize)> = self.cover.iter().map(|p| (p[0], p[1])).collect();
            build_lattice(n, &pairs, RelationMode::Cover)?
        } else {
            let pairs: Vec<(usize, usize)> = self
                .cover
                .iter()
                .chain(&self.leq)
                .map(|p| (p[0], p[1]))
                .collect();
            build_lattice(n, &pairs, RelationMode::Leq)?
        };
        Ok(l.with_names(self.elements.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

impl SpaceDoc {
    pub fn from_space(name: Option<&str>, x: &FiniteSpace) -> SpaceDoc {
        SpaceDoc {
            version: FORMAT_VERSION,
            name: name.map(str::to_string),
            points: x.point_count(),
            opens: x.opens().iter().map(|u| u.iter().collect()).collect(),
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace, CliError> {
        let mut opens = Vec::with_capacity(self.opens.len());
        for (k, u) in self.opens.iter().enumerate() {
            if let Some(&p) = u.iter().find(|&&p| p >= self.points) {
                return Err(CliError::Semantic(format!(
                    "open {k} names point {p}, space has {}",
                    self.points
                )));
            }
            opens.push(u.iter().copied().collect::<Bits>());
        }
        Ok(FiniteSpace::new(self.points, opens)?)
    }
}

/// A map between two lattices referred to by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub source: String,
    pub target: String,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarityDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x: usize,
    pub y: usize,
    pub z: Vec<[usize; 2]>,
}

impl PolarityDoc {
    pub fn from_polarity(name: Option<&str>, p: &Polarity) -> PolarityDoc {
        PolarityDoc {
            version: FORMAT_VERSION,
            name: name.map(str::to_string),
            x: p.x_size(),
            y: p.y_size(),
            z: p.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_polarity(&self) -> Result<Polarity, CliError> {
        let pairs: Vec<(usize, usize)> = self.z.iter().map(|p| (p[0], p[1])).collect();
        Ok(Polarity::new(self.x, self.y, &pairs)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProximityDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: LatticeDoc,
    pub r: Vec<[usize; 2]>,
}

impl ProximityDoc {
    pub fn from_proximity(name: Option<&str>, p: &ProximityLattice) -> ProximityDoc {
        ProximityDoc {
            version: FORMAT_VERSION,
            name: name.map(str::to_string),
            base: LatticeDoc::from_lattice(None, &p.base),
            r: p.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Parses without validating the axioms, so that failing relations can
    /// still be reported on.
    pub fn to_parts(&self) -> Result<(FiniteLattice, Vec<Bits>), CliError> {
        let base = self.base.to_lattice()?;
        let pairs: Vec<(usize, usize)> = self.r.iter().map(|p| (p[0], p[1])).collect();
        let r = frame_canext::proximity::relation_from_pairs(&base, &pairs)?;
        Ok((base, r))
    }
}

/// A canonical-extension bundle, with everything needed to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanExtDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub source: LatticeDoc,
    pub extension: LatticeDoc,
    /// The Scott-open filters of the source, in the order `e_so` uses.
    pub scott_open: Vec<Vec<usize>>,
    pub maps: BundleMaps,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleMaps {
    pub e: Vec<usize>,
    pub e_so: Vec<usize>,
}

impl CanExtDoc {
    pub fn from_bundle(name: Option<&str>, b: &CanExtBundle) -> CanExtDoc {
        CanExtDoc {
            version: FORMAT_VERSION,
            name: name.map(str::to_string),
            source: LatticeDoc::from_lattice(None, &b.source),
            extension: LatticeDoc::from_lattice(None, &b.extension),
            scott_open: b
                .scott_open
                .filters
                .iter()
                .map(|f| f.iter().collect())
                .collect(),
            maps: BundleMaps {
                e: b.e.clone(),
                e_so: b.e_so.clone(),
            },
            provenance: b.provenance,
        }
    }

    /// Rebuilds the bundle; the listed filters must be exactly the
    /// Scott-open filters of the source, in the canonical order.
    pub fn to_bundle(&self) -> Result<CanExtBundle, CliError> {
        let source = self.source.to_lattice()?;
        let extension = self.extension.to_lattice()?;
        let so = scott_open_poset(&source)?;
        let listed: Vec<Bits> = self
            .scott_open
            .iter()
            .map(|f| f.iter().copied().collect())
            .collect();
        if listed != so.filters {
            return Err(CliError::Semantic(
                "scott_open does not list the source's Scott-open filters in canonical order"
                    .into(),
            ));
        }
        let b = CanExtBundle {
            source,
            extension,
            scott_open: so,
            e: self.maps.e.clone(),
            e_so: self.maps.e_so.clone(),
            provenance: self.provenance,
        };
        b.validate_shape()?;
        Ok(b)
    }
}

/// Parses one document. Syntax errors carry line and column; unknown
/// versions are refused.
pub fn parse(text: &str) -> Result<Document, CliError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.version() != FORMAT_VERSION {
        return Err(CliError::Version(doc.version()));
    }
    Ok(doc)
}

pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use frame_canext::canext::canonical_extension;
    use frame_canext::corpus::{c3, two};

    #[test]
    fn two_element_frame() {
        let d = parse(
            r#"{"kind": "lattice", "version": 1, "elements": ["0", "1"], "cover": [[0, 1]]}"#,
        )
        .unwrap();
        let Document::Lattice(l) = d else { panic!() };
        assert_eq!(l.to_lattice().unwrap().size(), 2);
    }

    #[test]
    fn out_of_range_cover_names_the_pair() {
        let d = parse(
            r#"{"kind": "lattice", "version": 1, "elements": ["0", "1"], "cover": [[0, 5]]}"#,
        )
        .unwrap();
        let Document::Lattice(l) = d else { panic!() };
        let msg = l.to_lattice().unwrap_err().to_string();
        assert!(msg.contains("(0, 5)"), "{msg}");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("{\n  \"kind\": \"lattice\",\n  \"elements\": ,\n}").unwrap_err();
        match err {
            CliError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 15)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn bundle_round_trip() {
        let b = canonical_extension(&c3()).unwrap();
        let doc = Document::Canext(CanExtDoc::from_bundle(Some("c3"), &b));
        let back = parse(&serialize(&doc)).unwrap();
        assert_eq!(back, doc);
        let Document::Canext(d) = back else { panic!() };
        assert_eq!(d.to_bundle().unwrap(), b);
    }

    #[test]
    fn lattice_round_trip() {
        for l in [two(), c3()] {
            let doc = LatticeDoc::from_lattice(Some("x"), &l);
            assert_eq!(doc.to_lattice().unwrap(), l);
            assert_eq!(
                parse(&serialize(&Document::Lattice(doc.clone()))).unwrap(),
                Document::Lattice(doc)
            );
        }
    }

    #[test]
    fn unnamed_lattices_get_index_names() {
        let l =
            frame_canext::build_lattice(2, &[(0, 1)], frame_canext::RelationMode::Cover).unwrap();
        let back = LatticeDoc::from_lattice(None, &l).to_lattice().unwrap();
        assert!(back.same_order(&l));
        assert_eq!(back.label(1), "1");
    }

    #[test]
    fn wrong_version_refused() {
        let err = parse(r#"{"kind": "lattice", "version": 7, "elements": ["0"]}"#).unwrap_err();
        assert!(matches!(err, CliError::Version(7)));
    }
}
