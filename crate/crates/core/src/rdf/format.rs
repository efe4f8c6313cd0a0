use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// The concrete syntaxes the registry reads and writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RdfFormat {
    Turtle,
    TriG,
    NTriples,
    NQuads,
}

impl RdfFormat {
    pub const ALL: [RdfFormat; 4] =
        [RdfFormat::Turtle, RdfFormat::TriG, RdfFormat::NTriples, RdfFormat::NQuads];

    pub fn media_type(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "text/turtle",
            RdfFormat::TriG => "application/trig",
            RdfFormat::NTriples => "application/n-triples",
            RdfFormat::NQuads => "application/n-quads",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "ttl",
            RdfFormat::TriG => "trig",
            RdfFormat::NTriples => "nt",
            RdfFormat::NQuads => "nq",
        }
    }

    /// Whether the syntax can express named graphs.
    pub fn supports_named_graphs(self) -> bool {
        matches!(self, RdfFormat::TriG | RdfFormat::NQuads)
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "ttl" => Some(RdfFormat::Turtle),
            "trig" => Some(RdfFormat::TriG),
            "nt" => Some(RdfFormat::NTriples),
            "nq" => Some(RdfFormat::NQuads),
            _ => None,
        }
    }

    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension().and_then(|e| e.to_str()).and_then(Self::from_extension)
    }

    /// Accepts a bare media type or one with parameters (`text/turtle; charset=utf-8`).
    pub fn from_media_type(media_type: &str) -> Option<Self> {
        let essence = media_type.split(';').next().unwrap_or("").trim().to_ascii_lowercase();
        Self::ALL.into_iter().find(|f| f.media_type() == essence)
    }
}

impl fmt::Display for RdfFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RdfFormat::Turtle => "turtle",
            RdfFormat::TriG => "trig",
            RdfFormat::NTriples => "n-triples",
            RdfFormat::NQuads => "n-quads",
        })
    }
}

impl FromStr for RdfFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "turtle" | "ttl" => Ok(RdfFormat::Turtle),
            "trig" => Ok(RdfFormat::TriG),
            "n-triples" | "ntriples" | "nt" => Ok(RdfFormat::NTriples),
            "n-quads" | "nquads" | "nq" => Ok(RdfFormat::NQuads),
            _ => RdfFormat::from_media_type(s).ok_or_else(|| format!("unknown RDF format {s:?}")),
        }
    }
}

impl serde::Serialize for RdfFormat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RdfFormat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_and_media_types() {
        for f in RdfFormat::ALL {
            assert_eq!(RdfFormat::from_extension(f.extension()), Some(f));
            assert_eq!(RdfFormat::from_media_type(f.media_type()), Some(f));
            assert_eq!(f.to_string().parse::<RdfFormat>(), Ok(f));
        }
        assert_eq!(
            RdfFormat::from_media_type("text/turtle; charset=utf-8"),
            Some(RdfFormat::Turtle)
        );
        assert_eq!(RdfFormat::from_path(Path::new("a/b.TTL")), Some(RdfFormat::Turtle));
    }
}
