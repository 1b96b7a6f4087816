use serde::{Deserialize, Serialize};

use crate::dice::{Die, FaceValue};
use crate::error::{Error, Result};
use crate::hierarchy::{DiceFamily, Word};
use crate::loshu::AssignmentStack;

/// On-disk form of a family. Dice are listed by die number; `faces` holds
/// the distinct face values, each present `multiplicity` times on the die.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub depth: usize,
    pub multiplicity: u32,
    /// Level descriptors in the stack-file syntax; empty when unknown.
    #[serde(default)]
    pub stack: Vec<String>,
    pub dice: Vec<DieEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DieEntry {
    pub word: Word,
    pub paper_number: u64,
    pub faces: Vec<String>,
}

impl FamilyDocument {
    pub fn from_family(family: &DiceFamily) -> Self {
        FamilyDocument {
            depth: family.depth(),
            multiplicity: family.multiplicity(),
            stack: family
                .stack()
                .map(AssignmentStack::descriptors)
                .unwrap_or_default(),
            dice: family
                .iter()
                .map(|(word, die)| DieEntry {
                    paper_number: word.paper_number(),
                    word,
                    faces: die.distinct_faces().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }

    pub fn into_family(self) -> Result<DiceFamily> {
        let stack = if self.stack.is_empty() {
            None
        } else {
            Some(AssignmentStack::parse(&self.stack.join("\n"))?)
        };
        if self.multiplicity == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        let entries = self
            .dice
            .into_iter()
            .map(|entry| {
                if entry.word.paper_number() != entry.paper_number {
                    return Err(Error::MalformedFamily(format!(
                        "word {} is die {}, not {}",
                        entry.word,
                        entry.word.paper_number(),
                        entry.paper_number
                    )));
                }
                let faces = entry
                    .faces
                    .iter()
                    .map(|f| f.parse::<FaceValue>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| {
                        Error::MalformedFamily(format!("die {}: {e}", entry.paper_number))
                    })?;
                let die = Die::uniform(faces, self.multiplicity).map_err(|e| {
                    Error::MalformedFamily(format!("die {}: {e}", entry.paper_number))
                })?;
                Ok((entry.word, die))
            })
            .collect::<Result<Vec<_>>>()?;
        DiceFamily::from_dice(self.depth, self.multiplicity, stack, entries)
    }
}

pub fn family_to_json(family: &DiceFamily) -> String {
    let mut s = serde_json::to_string_pretty(&FamilyDocument::from_family(family))
        .expect("family documents always serialize");
    s.push('\n');
    s
}

pub fn family_from_json(text: &str) -> Result<DiceFamily> {
    let doc: FamilyDocument = serde_json::from_str(text)?;
    doc.into_family()
}
