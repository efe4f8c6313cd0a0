use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::PackageError;
use crate::rdf::{parse_document, RdfDataset, RdfFormat};

/// An ordered stream of elements, one per input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDataset {
    pub elements: Vec<RdfDataset>,
    /// File names the elements were read from, in the same order.
    pub names: Vec<String>,
    pub origin: PathBuf,
}

impl SourceDataset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Reads a directory or a `.tar` archive of RDF files. Files are taken in
/// byte-wise lexicographic order of their names; files with an unknown
/// extension are ignored.
pub fn load_source(origin: &Path) -> Result<SourceDataset, PackageError> {
    let io = |e: std::io::Error| PackageError::Io { path: origin.to_owned(), source: e };
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    if origin.is_dir() {
        for entry in fs::read_dir(origin).map_err(io)? {
            let entry = entry.map_err(io)?;
            let path = entry.path();
            if !entry.file_type().map_err(io)?.is_file() || RdfFormat::from_path(&path).is_none() {
                continue;
            }
            let bytes = fs::read(&path).map_err(|e| PackageError::Io { path: path.clone(), source: e })?;
            files.push((entry.file_name().to_string_lossy().into_owned(), bytes));
        }
    } else {
        let file = fs::File::open(origin).map_err(io)?;
        let mut archive = tar::Archive::new(file);
        for entry in archive.entries().map_err(io)? {
            let mut entry = entry.map_err(io)?;
            if !entry.header().entry_type().is_file() {
                continue;
            }
            let name = entry.path().map_err(io)?.to_string_lossy().into_owned();
            if RdfFormat::from_path(Path::new(&name)).is_none() {
                continue;
            }
            let mut bytes = Vec::new();
            entry.read_to_end(&mut bytes).map_err(io)?;
            files.push((name, bytes));
        }
    }
    if files.is_empty() {
        return Err(PackageError::EmptySource(origin.to_owned()));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));

    let elements = files
        .par_iter()
        .map(|(name, bytes)| {
            let format = RdfFormat::from_path(Path::new(name)).expect("filtered above");
            parse_document(bytes, format, None)
                .map_err(|error| PackageError::Syntax { file: name.clone(), error })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SourceDataset {
        elements,
        names: files.into_iter().map(|(n, _)| n).collect(),
        origin: origin.to_owned(),
    })
}
