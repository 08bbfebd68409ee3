//! Points of the projective plane with rational coordinates.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A point `[x:y:z]`, stored with its first nonzero coordinate equal to one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Rational; 3],
}

impl ProjPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        let coords = [x, y, z];
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or_else(|| Error::Parameter("[0:0:0] is not a point".into()))?;
        let inv = Rational::one() / lead;
        Ok(Self {
            coords: coords.map(|c| c * &inv),
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Index of the last nonzero coordinate, used to pick an affine chart.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap()
    }

    /// Representative with coordinate `chart()` equal to one.
    pub fn affine_rep(&self) -> [Rational; 3] {
        let k = self.chart();
        let inv = Rational::one() / &self.coords[k];
        self.coords.clone().map(|c| c * &inv)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_points_are_equal() {
        assert_eq!(ProjPoint::from_ints(2, 4, -6), ProjPoint::from_ints(-1, -2, 3));
        assert_ne!(ProjPoint::from_ints(1, 0, 0), ProjPoint::from_ints(0, 1, 0));
        assert!(ProjPoint::new(int(0), int(0), int(0)).is_err());
    }

    #[test]
    fn normalized_display() {
        assert_eq!(ProjPoint::from_ints(0, 3, 6).to_string(), "[0:1:2]");
        assert_eq!(ProjPoint::from_ints(2, 4, 0).chart(), 1);
    }
}
