use serde::Serialize;

use crate::dice::{FaceValue, Rational};
use crate::error::{Error, Result};
use crate::hierarchy::{DiceFamily, Word};

/// A face read as a decimal fraction: `221` becomes `0.221`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedPoint {
    pub word: Word,
    pub paper_number: u64,
    pub rank: usize,
    /// Exactly `k` digits after the point.
    pub decimal: String,
    #[serde(serialize_with = "crate::dice::ser_ratio")]
    pub value: Rational,
}

/// Largest depth whose `10^k` denominator fits in a `u64`.
const MAX_DEPTH: usize = 19;

fn normalize(face: &FaceValue) -> (String, Rational) {
    let mut decimal = String::from("0.");
    let mut numer = 0u64;
    for d in face.digits() {
        decimal.push(char::from(b'0' + d.get()));
        numer = numer * 10 + u64::from(d.get());
    }
    (decimal, Rational::new(numer, 10u64.pow(face.len() as u32)))
}

/// One point per `(word, rank)`, in paper order.
pub fn normalized_values(family: &DiceFamily) -> Result<Vec<NormalizedPoint>> {
    if family.depth() > MAX_DEPTH {
        return Err(Error::DepthTooLarge(family.depth()));
    }
    let mut points = Vec::with_capacity(family.len() * 3);
    for (word, die) in family.iter() {
        for (rank, face) in die.distinct_faces().enumerate() {
            let (decimal, value) = normalize(face);
            points.push(NormalizedPoint {
                paper_number: word.paper_number(),
                word: word.clone(),
                rank,
                decimal,
                value,
            });
        }
    }
    Ok(points)
}

/// Columns: `word, paper_number, rank, decimal, numerator, denominator`.
pub fn points_to_csv(points: &[NormalizedPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "word",
        "paper_number",
        "rank",
        "decimal",
        "numerator",
        "denominator",
    ])?;
    for p in points {
        w.write_record([
            p.word.to_string(),
            p.paper_number.to_string(),
            p.rank.to_string(),
            p.decimal.clone(),
            p.value.numer().to_string(),
            p.value.denom().to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::generate;
    use crate::loshu::Preset;

    #[test]
    fn place_value() {
        let (d, v) = normalize(&"221".parse().unwrap());
        assert_eq!(d, "0.221");
        assert_eq!(v, Rational::new(221, 1000));
        let (d, v) = normalize(&"9".parse().unwrap());
        assert_eq!(d, "0.9");
        assert_eq!(v, Rational::new(9, 10));
        // lowest terms
        assert_eq!(normalize(&"25".parse().unwrap()).1, Rational::new(1, 4));
    }

    #[test]
    fn depth_three_points() {
        let f = generate(&Preset::Paper3.stack().unwrap(), 2).unwrap();
        let pts = normalized_values(&f).unwrap();
        assert_eq!(pts.len(), 81);
        assert_eq!(pts[3].decimal, "0.221");
        assert_eq!(pts[3].paper_number, 2);
        let csv = points_to_csv(&pts).unwrap();
        assert!(csv.starts_with("word,paper_number,rank,decimal,numerator,denominator\n"));
        assert!(csv.contains("\n001,2,0,0.221,221,1000\n"));
        assert_eq!(csv.lines().count(), 82);
    }
}
