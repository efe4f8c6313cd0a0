use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::SourceDataset;
use crate::rdf::{serialize_with, FormatCapabilityError, RdfFormat, SerializeOptions};

pub const DEFAULT_CAP_LADDER: [u64; 3] = [10, 100, 1000];

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DistributionKind {
    Flat,
    Stream,
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistributionKind::Flat => "flat",
            DistributionKind::Stream => "stream",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Distribution {
    pub kind: DistributionKind,
    pub format: RdfFormat,
    /// `None` means the full stream.
    pub size_cap: Option<u64>,
    pub byte_size: u64,
    pub sha256: String,
    pub file_name: String,
}

impl Distribution {
    pub fn file_name_for(kind: DistributionKind, format: RdfFormat, cap: Option<u64>) -> String {
        let cap = cap.map_or_else(|| "full".to_owned(), |c| c.to_string());
        match kind {
            DistributionKind::Flat => format!("flat_{cap}.{}", format.extension()),
            DistributionKind::Stream => format!("stream_{cap}.{}.tar", format.extension()),
        }
    }

    pub fn media_type(&self) -> &'static str {
        match self.kind {
            DistributionKind::Flat => self.format.media_type(),
            DistributionKind::Stream => "application/x-tar",
        }
    }
}

/// A distribution together with its bytes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub distribution: Distribution,
    pub bytes: Vec<u8>,
}

/// Caps strictly below the element count, followed by the full stream.
pub fn effective_caps(ladder: &[u64], element_count: u64) -> Vec<Option<u64>> {
    let mut caps: Vec<Option<u64>> = ladder.iter().copied().filter(|&c| c < element_count).map(Some).collect();
    caps.push(None);
    caps
}

fn element_file_name(index: usize, count: usize, format: RdfFormat) -> String {
    let width = count.saturating_sub(1).to_string().len();
    format!("{index:0width$}.{}", format.extension())
}

/// Uncompressed tar with fixed metadata so equal inputs give equal bytes.
pub fn deterministic_tar(entries: &[(String, &[u8])]) -> Vec<u8> {
    let mut builder = tar::Builder::new(Vec::new());
    for (name, bytes) in entries {
        let mut header = tar::Header::new_ustar();
        header.set_path(name).expect("element names are short relative paths");
        header.set_size(bytes.len() as u64);
        header.set_mode(0o644);
        header.set_mtime(0);
        header.set_uid(0);
        header.set_gid(0);
        header.set_entry_type(tar::EntryType::Regular);
        header.set_cksum();
        builder.append(&header, *bytes).expect("writing to memory");
    }
    builder.into_inner().expect("writing to memory")
}

struct Serialized {
    /// Blank nodes prefixed with the element index, for concatenation.
    scoped: Vec<Vec<u8>>,
    plain: Vec<Vec<u8>>,
}

fn serialize_elements(src: &SourceDataset, format: RdfFormat) -> Result<Serialized, FormatCapabilityError> {
    let pairs = src
        .elements
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let scoped = serialize_with(e, format, &SerializeOptions { blank_prefix: format!("e{i}_") })?;
            let plain = serialize_with(e, format, &SerializeOptions::default())?;
            Ok((scoped, plain))
        })
        .collect::<Result<Vec<_>, FormatCapabilityError>>()?;
    let (scoped, plain) = pairs.into_iter().unzip();
    Ok(Serialized { scoped, plain })
}

/// Every (format, kind, cap) combination, in that nesting order.
pub fn build_distributions(
    src: &SourceDataset,
    ladder: &[u64],
    formats: &[RdfFormat],
) -> Result<Vec<Artifact>, FormatCapabilityError> {
    let caps = effective_caps(ladder, src.len() as u64);
    let mut out = Vec::new();
    for &format in formats {
        let serialized = serialize_elements(src, format)?;
        for kind in [DistributionKind::Flat, DistributionKind::Stream] {
            for &cap in &caps {
                let n = cap.map_or(src.len(), |c| c as usize);
                let bytes = match kind {
                    DistributionKind::Flat => serialized.scoped[..n].concat(),
                    DistributionKind::Stream => {
                        let entries: Vec<(String, &[u8])> = serialized.plain[..n]
                            .iter()
                            .enumerate()
                            .map(|(i, b)| (element_file_name(i, src.len(), format), b.as_slice()))
                            .collect();
                        deterministic_tar(&entries)
                    }
                };
                out.push(Artifact {
                    distribution: Distribution {
                        kind,
                        format,
                        size_cap: cap,
                        byte_size: bytes.len() as u64,
                        sha256: sha256_hex(&bytes),
                        file_name: Distribution::file_name_for(kind, format, cap),
                    },
                    bytes,
                });
            }
        }
    }
    Ok(out)
}
