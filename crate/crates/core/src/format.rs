//! On-disk point sets and content digests.
//!
//! ```json
//! {"version":"1","n":6,"d":2,"points":[[0,0],[2,0],[3,0],[0,2]]}
//! ```
//!
//! Coordinates may be any integers on input and are reduced into
//! `[0, n)`. Output is always canonical: reduced coordinates, input order
//! kept, compact JSON with a trailing newline.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::energy::PointSet;
use crate::error::{Error, Result};
use crate::ring::factorize;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub version: String,
    pub n: u64,
    pub d: usize,
    pub points: Vec<Vec<i64>>,
}

impl PointSetFile {
    pub fn from_set(set: &PointSet) -> Self {
        PointSetFile {
            version: FORMAT_VERSION.to_string(),
            n: set.n(),
            d: set.dim(),
            points: set
                .points()
                .iter()
                .map(|p| p.iter().map(|&x| x as i64).collect())
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<PointSet> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported point-set version {:?} (expected {FORMAT_VERSION:?})",
                self.version
            )));
        }
        if self.n > i64::MAX as u64 {
            return Err(Error::InvalidModulus(self.n));
        }
        PointSet::from_integers(factorize(self.n)?, self.d, &self.points)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let file: PointSetFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("point-set JSON: {e}")))?;
    file.to_set()
}

pub fn point_set_json(set: &PointSet) -> String {
    PointSetFile::from_set(set).to_json()
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_point_set(&text)
}

pub fn write_point_set(path: &Path, set: &PointSet) -> std::io::Result<()> {
    fs::write(path, point_set_json(set))
}

/// `sha256:` followed by the hex digest of the canonical JSON.
pub fn digest(set: &PointSet) -> String {
    format!(
        "sha256:{}",
        hex::encode(Sha256::digest(point_set_json(set).as_bytes()))
    )
}

/// `num/den`, always with an explicit denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == 0.into() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example_2_3;

    #[test]
    fn round_trip_is_byte_exact() {
        let text = "{\"version\":\"1\",\"n\":6,\"d\":2,\"points\":[[0,0],[2,0],[3,0],[0,2]]}\n";
        let set = parse_point_set(text).unwrap();
        assert_eq!(set, example_2_3());
        assert_eq!(point_set_json(&set), text);
    }

    #[test]
    fn reduces_on_input() {
        let set = parse_point_set(r#"{"version":"1","n":6,"d":1,"points":[[-1],[8]]}"#).unwrap();
        assert_eq!(
            point_set_json(&set),
            "{\"version\":\"1\",\"n\":6,\"d\":1,\"points\":[[5],[2]]}\n"
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_point_set("{").is_err());
        assert!(parse_point_set(r#"{"version":"2","n":6,"d":1,"points":[[1]]}"#).is_err());
        assert!(parse_point_set(r#"{"version":"1","n":6,"d":1,"points":[]}"#).is_err());
        assert!(parse_point_set(r#"{"version":"1","n":6,"d":1,"points":[[1],[7]]}"#).is_err());
        assert!(parse_point_set(r#"{"version":"1","n":6,"d":2,"points":[[1]]}"#).is_err());
        assert!(parse_point_set(r#"{"version":"1","n":1,"d":1,"points":[[0]]}"#).is_err());
        assert!(parse_point_set(r#"{"version":"1","n":6,"d":1,"points":[[0]],"x":1}"#).is_err());
    }

    #[test]
    fn digest_depends_on_content() {
        let a = example_2_3();
        assert_eq!(digest(&a), digest(&a.clone()));
        assert!(digest(&a).starts_with("sha256:"));
        let b = a.translate(&[1, 0]).unwrap();
        assert_ne!(digest(&a), digest(&b));
    }

    #[test]
    fn rationals() {
        let r = parse_rational("6/4").unwrap();
        assert_eq!(rational_string(&r), "3/2");
        assert_eq!(rational_string(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
