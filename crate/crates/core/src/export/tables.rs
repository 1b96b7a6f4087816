//! Printed-layout tables for depths 1 to 3, and a reader for them.
//!
//! Each row lists a die's three distinct faces; every face appears twice on
//! the physical die.

use std::fmt::Write;

use crate::dice::{Die, FaceValue};
use crate::error::{Error, Result};
use crate::hierarchy::{generate, DiceFamily, Word};
use crate::loshu::Preset;

const MULTIPLICITY: u32 = 2;

fn headings(depth: usize) -> Result<&'static [&'static str]> {
    Ok(match depth {
        1 => &["Base dice: A beats B, B beats C, C beats A"],
        2 => &[
            "The dice of shades of red",
            "The dice of shades of blue",
            "The dice of shades of green",
        ],
        3 => &[
            "D1..D9: left large circle",
            "D10..D18: top large circle",
            "D19..D27: right large circle",
        ],
        d => return Err(Error::UnsupportedTableDepth(d)),
    })
}

fn label(depth: usize, number: u64) -> String {
    match depth {
        1 => format!("Die {}", char::from(b'A' + (number - 1) as u8)),
        2 => format!("Die {number}"),
        _ => format!("D{number}"),
    }
}

/// Rows like `D1 222 489 954`, grouped under `#` headings.
pub fn render_tables(depth: usize) -> Result<String> {
    let headings = headings(depth)?;
    let preset = match depth {
        1 => Preset::Paper1,
        2 => Preset::Paper2,
        _ => Preset::Paper3,
    };
    let family = generate(&preset.stack()?, MULTIPLICITY)?;
    let per_group = family.len() / headings.len();
    let mut out = String::from("# Half of the faces are shown; each value appears twice.\n");
    for (i, (word, die)) in family.iter().enumerate() {
        if i % per_group == 0 {
            let _ = writeln!(out, "# {}", headings[i / per_group]);
        }
        let _ = write!(out, "{}", label(depth, word.paper_number()));
        for face in die.distinct_faces() {
            let _ = write!(out, " {face}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn tokens_with_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(|c: char| c.is_whitespace())
        .scan(0, |pos, t| {
            let start = *pos;
            *pos += t.len() + 1;
            Some((start, t))
        })
        .filter(|(_, t)| !t.is_empty())
}

/// Reads rows written by [`render_tables`] (or by hand in the same layout).
/// Faces get multiplicity 2. Positions in errors are byte offsets.
pub fn parse_tables(text: &str) -> Result<DiceFamily> {
    let mut rows: Vec<(usize, u64, Vec<FaceValue>)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = tokens_with_offsets(line);
        let (_, first) = tokens.next().expect("non-empty line");
        let number_text = if first == "Die" {
            tokens
                .next()
                .ok_or_else(|| Error::parse(here, "missing die label"))?
                .1
        } else {
            first
                .strip_prefix('D')
                .ok_or_else(|| Error::parse(here, format!("unexpected label `{first}`")))?
        };
        let number = match number_text {
            "A" => 1,
            "B" => 2,
            "C" => 3,
            n => n
                .parse::<u64>()
                .map_err(|_| Error::parse(here, format!("bad die number `{n}`")))?,
        };
        let faces = tokens
            .map(|(col, t)| {
                t.parse::<FaceValue>().map_err(|e| match e {
                    Error::Parse { position, message } => {
                        Error::parse(here + col + position, message)
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if faces.is_empty() {
            return Err(Error::parse(here, "row without faces"));
        }
        rows.push((here, number, faces));
    }
    let depth = rows
        .first()
        .map(|(_, _, f)| f[0].len())
        .ok_or_else(|| Error::parse(0, "no table rows"))?;
    let entries = rows
        .into_iter()
        .map(|(pos, number, faces)| {
            let word = Word::from_paper_number(number, depth)
                .map_err(|e| Error::parse(pos, e.to_string()))?;
            let die =
                Die::uniform(faces, MULTIPLICITY).map_err(|e| Error::parse(pos, e.to_string()))?;
            Ok((word, die))
        })
        .collect::<Result<Vec<_>>>()?;
    DiceFamily::from_dice(depth, MULTIPLICITY, None, entries)
}
