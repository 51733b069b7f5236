use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The sorter families this crate knows how to build and cost.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Architecture {
    Bitonic,
    PrunedBitonic,
    Bubble,
    SimplifiedBubble,
    Radix,
    PrunedRadix,
    /// Anything imported under a name we do not recognize.
    Custom(String),
}

impl Architecture {
    pub const BUILTIN: [Architecture; 6] = [
        Architecture::Bitonic,
        Architecture::PrunedBitonic,
        Architecture::Bubble,
        Architecture::SimplifiedBubble,
        Architecture::Radix,
        Architecture::PrunedRadix,
    ];

    /// The three sorters that only produce the `L` smallest entries.
    pub const PRUNED: [Architecture; 3] = [
        Architecture::PrunedBitonic,
        Architecture::SimplifiedBubble,
        Architecture::PrunedRadix,
    ];

    pub fn name(&self) -> &str {
        match self {
            Architecture::Bitonic => "bitonic",
            Architecture::PrunedBitonic => "pruned-bitonic",
            Architecture::Bubble => "bubble",
            Architecture::SimplifiedBubble => "simplified-bubble",
            Architecture::Radix => "radix",
            Architecture::PrunedRadix => "pruned-radix",
            Architecture::Custom(name) => name,
        }
    }

    pub fn is_network(&self) -> bool {
        !matches!(self, Architecture::Radix | Architecture::PrunedRadix)
    }

    /// Whether correct operation depends on the structured-list relations.
    pub fn requires_structured_input(&self) -> bool {
        matches!(
            self,
            Architecture::PrunedBitonic
                | Architecture::Bubble
                | Architecture::SimplifiedBubble
                | Architecture::PrunedRadix
        )
    }

    pub fn requires_power_of_two(&self) -> bool {
        matches!(self, Architecture::Bitonic | Architecture::PrunedBitonic)
    }

    /// Checks that this architecture can be built for `list_size`.
    pub fn check_list_size(&self, list_size: usize) -> Result<()> {
        if list_size < 2 {
            return Err(Error::ListSizeTooSmall(list_size));
        }
        if self.requires_power_of_two() && !list_size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(list_size));
        }
        Ok(())
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bitonic" => Architecture::Bitonic,
            "pruned-bitonic" => Architecture::PrunedBitonic,
            "bubble" | "full-bubble" => Architecture::Bubble,
            "simplified-bubble" => Architecture::SimplifiedBubble,
            "radix" => Architecture::Radix,
            "pruned-radix" | "radix-pruned" => Architecture::PrunedRadix,
            other => Architecture::Custom(other.to_owned()),
        })
    }
}

impl Serialize for Architecture {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Architecture {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(s.parse().expect("architecture parsing is infallible"))
    }
}
