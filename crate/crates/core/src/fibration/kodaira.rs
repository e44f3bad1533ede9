use std::fmt;

use serde::{Serialize, Serializer};

/// Kodaira symbol of a fibre of a minimal elliptic surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaTag {
    Smooth,
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaTag {
    /// Type from `(ord g₂, ord g₃, ord Δ)` of a minimal model; `None`
    /// stands for the zero polynomial. Returns `None` when the valuations
    /// are not those of a minimal model.
    pub fn from_valuations(v2: Option<u32>, v3: Option<u32>, v_delta: u32) -> Option<Self> {
        let v2 = v2.unwrap_or(u32::MAX);
        let v3 = v3.unwrap_or(u32::MAX);
        if v2 >= 4 && v3 >= 6 {
            return None;
        }
        if v_delta == 0 {
            return Some(KodairaTag::Smooth);
        }
        if v2 == 0 {
            return Some(KodairaTag::I(v_delta));
        }
        Some(match v_delta {
            2 => KodairaTag::II,
            3 => KodairaTag::III,
            4 => KodairaTag::IV,
            6.. if v2 == 2 && v3 == 3 => KodairaTag::IStar(v_delta - 6),
            6 => KodairaTag::IStar(0),
            8 => KodairaTag::IVStar,
            9 => KodairaTag::IIIStar,
            10 => KodairaTag::IIStar,
            _ => return None,
        })
    }

    /// Additive types with Kodaira index `ε`.
    pub fn additive_with_index(epsilon: u32) -> Vec<Self> {
        let mut out = match epsilon {
            2 => vec![KodairaTag::II],
            3 => vec![KodairaTag::III],
            4 => vec![KodairaTag::IV],
            8 => vec![KodairaTag::IVStar],
            9 => vec![KodairaTag::IIIStar],
            10 => vec![KodairaTag::IIStar],
            _ => vec![],
        };
        if epsilon >= 6 {
            out.push(KodairaTag::IStar(epsilon - 6));
        }
        out
    }

    /// Kodaira index `ε` (the order of the minimal discriminant).
    pub fn epsilon(self) -> u32 {
        match self {
            KodairaTag::Smooth => 0,
            KodairaTag::I(b) => b,
            KodairaTag::II => 2,
            KodairaTag::III => 3,
            KodairaTag::IV => 4,
            KodairaTag::IStar(b) => b + 6,
            KodairaTag::IIStar => 10,
            KodairaTag::IIIStar => 9,
            KodairaTag::IVStar => 8,
        }
    }

    /// Number of irreducible components `ν`.
    pub fn nu(self) -> u32 {
        match self {
            KodairaTag::Smooth => 1,
            KodairaTag::I(b) => b,
            KodairaTag::II => 1,
            KodairaTag::III => 2,
            KodairaTag::IV => 3,
            KodairaTag::IStar(b) => b + 5,
            KodairaTag::IIStar => 9,
            KodairaTag::IIIStar => 8,
            KodairaTag::IVStar => 7,
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaTag::I(_))
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, KodairaTag::Smooth | KodairaTag::I(_))
    }
}

impl fmt::Display for KodairaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaTag::Smooth => f.write_str("smooth"),
            KodairaTag::I(b) => write!(f, "I_{b}"),
            KodairaTag::II => f.write_str("II"),
            KodairaTag::III => f.write_str("III"),
            KodairaTag::IV => f.write_str("IV"),
            KodairaTag::IStar(b) => write!(f, "I_{b}*"),
            KodairaTag::IIStar => f.write_str("II*"),
            KodairaTag::IIIStar => f.write_str("III*"),
            KodairaTag::IVStar => f.write_str("IV*"),
        }
    }
}

impl Serialize for KodairaTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A fibre type together with its index and component count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KodairaType {
    pub tag: KodairaTag,
    pub epsilon: u32,
    pub nu: u32,
}

impl From<KodairaTag> for KodairaType {
    fn from(tag: KodairaTag) -> Self {
        KodairaType { tag, epsilon: tag.epsilon(), nu: tag.nu() }
    }
}
