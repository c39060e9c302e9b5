use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::snf::canonical_chain;

/// Finitely generated abelian group `Z^free_rank ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_k}`
/// with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds the canonical form of `Z^free_rank ⊕ ⊕_i Z_{orders_i}`.
    /// An order of zero contributes a free summand; orders of one vanish.
    pub fn new(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                free += 1;
            } else {
                finite.push(o);
            }
        }
        let torsion = canonical_chain(finite).into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank: free, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| t > &BigInt::one()) && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::new(self.free_rank + other.free_rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// True when `n` kills every torsion element.
    pub fn torsion_annihilated_by(&self, n: &BigInt) -> bool {
        self.torsion.iter().all(|t| n.is_multiple_of(t))
    }

    /// The torsion subgroup alone.
    pub fn torsion_part(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseGroupError(String);

impl fmt::Display for ParseGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse abelian group: {}", self.0)
    }
}

impl std::error::Error for ParseGroupError {}

impl FromStr for AbelianGroup {
    type Err = ParseGroupError;

    /// Accepts forms like `0`, `Z`, `Z^9 ⊕ Z_3`, `Z^{9} + Z_{3}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        if cleaned == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in cleaned.split(['⊕', '+']) {
            let err = || ParseGroupError(s.to_string());
            if part == "Z" {
                free += 1;
            } else if let Some(exp) = part.strip_prefix("Z^") {
                free += exp.parse::<usize>().map_err(|_| err())?;
            } else if let Some(order) = part.strip_prefix("Z_") {
                let o: BigInt = order.parse().map_err(|_| err())?;
                if o <= BigInt::zero() {
                    return Err(err());
                }
                orders.push(o);
            } else {
                return Err(err());
            }
        }
        Ok(AbelianGroup::new(free, orders))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Order {
    Number(u64),
    Text(String),
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion_json(&self.torsion))?;
        st.end()
    }
}

/// Torsion orders as JSON numbers, falling back to strings beyond `u64`.
pub(crate) fn torsion_json(torsion: &[BigInt]) -> Vec<serde_json::Value> {
    torsion
        .iter()
        .map(|t| match t.to_u64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(t.to_string()),
        })
        .collect()
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            free_rank: usize,
            torsion: Vec<Order>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut orders = Vec::with_capacity(raw.torsion.len());
        for o in raw.torsion {
            orders.push(match o {
                Order::Number(v) => BigInt::from(v),
                Order::Text(s) => s.parse().map_err(de::Error::custom)?,
            });
        }
        Ok(AbelianGroup::new(raw.free_rank, orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(g("Z^{9} ⊕ Z_{3}").to_string(), "Z^9 ⊕ Z_3");
        assert_eq!(g("0"), AbelianGroup::trivial());
        assert_eq!(g("Z").to_string(), "Z");
        assert_eq!(g("Z_2 + Z_3"), AbelianGroup::new(0, vec![BigInt::from(6)]));
        assert!("Q^2".parse::<AbelianGroup>().is_err());
        assert!("Z_0".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn canonical_form() {
        let a = AbelianGroup::new(1, vec![BigInt::from(4), BigInt::from(6), BigInt::from(1)]);
        assert_eq!(a.torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert!(a.is_canonical());
        assert_eq!(AbelianGroup::new(a.free_rank, a.torsion.clone()), a);
    }

    #[test]
    fn direct_sum_and_annihilation() {
        let s = g("Z^5").direct_sum(&g("Z^4 ⊕ Z_3"));
        assert_eq!(s, g("Z^9 ⊕ Z_3"));
        assert!(s.torsion_annihilated_by(&BigInt::from(3)));
        assert!(!s.torsion_annihilated_by(&BigInt::from(2)));
    }

    #[test]
    fn json_round_trip() {
        let a = g("Z^16 ⊕ Z_2");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"free_rank":16,"torsion":[2]}"#);
        let back: AbelianGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
