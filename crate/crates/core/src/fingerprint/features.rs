use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const FEATURE_COUNT: usize = 23;

/// Canonical feature order. Index 0 is `COR`.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "COR",
    "COV",
    "SIM",
    "LNG",
    "FBR_norm",
    "FBR_raw",
    "COH",
    "LEN",
    "ENT",
    "ASL",
    "S1",
    "S2",
    "S3",
    "S4",
    "W1",
    "W2",
    "K_S",
    "K_W",
    "SIM_Rw",
    "SIM_Rsc",
    "LNG_Rw",
    "LNG_Rsc",
    "word_count",
];

/// Length statistics kept beside the fingerprint for the simple baseline.
pub const AUX_NAMES: [&str; 3] = [
    "aux_char_count",
    "aux_sentence_count",
    "aux_avg_word_length",
];

pub fn feature_index(name: &str) -> Option<usize> {
    FEATURE_NAMES.iter().position(|n| *n == name)
}

/// The 23 fingerprint values in canonical order. Serializes as a map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Features(pub [f64; FEATURE_COUNT]);

impl Default for Features {
    fn default() -> Self {
        Features([0.0; FEATURE_COUNT])
    }
}

impl Features {
    pub fn get(&self, name: &str) -> Option<f64> {
        feature_index(name).map(|i| self.0[i])
    }

    /// Panics on an unknown name.
    pub fn set(&mut self, name: &str, value: f64) {
        let i = feature_index(name).unwrap_or_else(|| panic!("unknown feature `{name}`"));
        self.0[i] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        FEATURE_NAMES.iter().copied().zip(self.0.iter().copied())
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Serialize for Features {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(FEATURE_COUNT))?;
        for (name, value) in self.iter() {
            map.serialize_entry(name, &value)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Features {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Features;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map with the {FEATURE_COUNT} canonical feature names")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Features, A::Error> {
                let mut values = [None; FEATURE_COUNT];
                while let Some((key, value)) = map.next_entry::<String, f64>()? {
                    let i = feature_index(&key)
                        .ok_or_else(|| de::Error::custom(format!("unknown feature `{key}`")))?;
                    values[i] = Some(value);
                }
                let mut out = [0.0; FEATURE_COUNT];
                for (i, v) in values.iter().enumerate() {
                    out[i] = v.ok_or_else(|| de::Error::missing_field(FEATURE_NAMES[i]))?;
                }
                Ok(Features(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        assert_eq!(FEATURE_NAMES.len(), 23);
        assert_eq!(feature_index("COR"), Some(0));
        assert_eq!(feature_index("word_count"), Some(22));
        let unique: std::collections::BTreeSet<_> = FEATURE_NAMES.iter().collect();
        assert_eq!(unique.len(), 23);
    }

    #[test]
    fn serde_round_trip_is_exact() {
        let mut f = Features::default();
        for (i, v) in f.0.iter_mut().enumerate() {
            *v = (i as f64 + 0.1) / 3.0;
        }
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.starts_with("{\"COR\":"));
        let back: Features = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Features>("{\"COR\":1.0}").is_err());
    }
}
