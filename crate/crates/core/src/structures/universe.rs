use std::collections::HashSet;
use std::sync::Arc;

use crate::{Error, Result, MAX_ELEMENTS};

/// A finite nonempty ground set `{0, .., size-1}` with optional display labels.
///
/// Two universes of the same size denote the same index set; labels are
/// display metadata and play no part in set algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl Universe {
    pub fn new(size: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if size > MAX_ELEMENTS {
            return Err(Error::TooLarge(size));
        }
        if let Some(labels) = &labels {
            if labels.len() != size {
                return Err(Error::BadLabels(format!(
                    "{} labels for {} elements",
                    labels.len(),
                    size
                )));
            }
            let mut seen = HashSet::new();
            for l in labels {
                if !seen.insert(l.as_str()) {
                    return Err(Error::BadLabels(format!("duplicate label `{l}`")));
                }
            }
        }
        Ok(Universe {
            size,
            labels: labels.map(Into::into),
        })
    }

    /// Unlabelled universe of the given size.
    pub fn of_size(size: usize) -> Result<Self> {
        Self::new(size, None)
    }

    /// Labels `1, 2, .., n`.
    pub fn numbered(size: usize) -> Result<Self> {
        Self::new(size, Some((1..=size).map(|i| i.to_string()).collect()))
    }

    /// Labels `a, b, c, ..`; falls back to `v1, v2, ..` past 26 elements.
    pub fn lettered(size: usize) -> Result<Self> {
        let labels = (0..size)
            .map(|i| {
                if size <= 26 {
                    char::from(b'a' + i as u8).to_string()
                } else {
                    format!("v{}", i + 1)
                }
            })
            .collect();
        Self::new(size, Some(labels))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`: its label, or the decimal index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Resolves a display name back to an index.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == name),
            None => name.parse().ok().filter(|&i| i < self.size),
        }
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::BadElement {
                element: x,
                size: self.size,
            })
        }
    }
}
