use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// Horizontal edge label of a tile.
///
/// Atoms are carries; tags keep the label spaces of united tile sets apart;
/// tuples pair the labels of composed or multiplied tile sets.
///
/// JSON: an atom is a rational string, a tuple an array, a tagged label
/// `{"tag": .., "label": ..}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HLabel {
    Atom(Rat),
    Tagged { tag: String, label: Box<HLabel> },
    Tuple(Vec<HLabel>),
}

impl HLabel {
    pub fn tagged(tag: &str, label: HLabel) -> HLabel {
        HLabel::Tagged {
            tag: tag.to_string(),
            label: Box::new(label),
        }
    }

    pub fn pair(first: HLabel, second: HLabel) -> HLabel {
        HLabel::Tuple(vec![first, second])
    }
}

impl fmt::Display for HLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HLabel::Atom(r) => write!(f, "{r}"),
            HLabel::Tagged { tag, label } => write!(f, "{tag}:{label}"),
            HLabel::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for HLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
