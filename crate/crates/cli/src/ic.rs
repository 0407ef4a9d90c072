use std::fmt;
use std::str::FromStr;

use evoca_core::ca::Configuration;
use evoca_core::objectives::sample_with_ones;
use evoca_core::seed::rng_from;

/// Initial configuration named on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum IcSpec {
    SingleOne,
    AllZeros,
    AllOnes,
    /// `round(rho * N)` ones at seeded random cells.
    Density(f64),
    /// Reading-order hex, cell 0 first.
    Hex(String),
}

impl FromStr for IcSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single-one" => Ok(Self::SingleOne),
            "all-zeros" => Ok(Self::AllZeros),
            "all-ones" => Ok(Self::AllOnes),
            _ => {
                if let Some(rho) = s.strip_prefix("density:") {
                    let rho: f64 = rho.parse().map_err(|_| format!("bad density {rho:?}"))?;
                    if !(0.0..=1.0).contains(&rho) {
                        return Err(format!("density {rho} outside [0, 1]"));
                    }
                    Ok(Self::Density(rho))
                } else if let Some(hex) = s.strip_prefix("hex:") {
                    if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                        return Err(format!("bad hex configuration {hex:?}"));
                    }
                    Ok(Self::Hex(hex.to_string()))
                } else {
                    Err(format!(
                        "unknown IC {s:?}; expected single-one, all-zeros, all-ones, density:<rho> or hex:<digits>"
                    ))
                }
            }
        }
    }
}

impl fmt::Display for IcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SingleOne => f.write_str("single-one"),
            Self::AllZeros => f.write_str("all-zeros"),
            Self::AllOnes => f.write_str("all-ones"),
            Self::Density(rho) => write!(f, "density:{rho}"),
            Self::Hex(h) => write!(f, "hex:{h}"),
        }
    }
}

impl IcSpec {
    /// Builds the configuration for lattice width `n`. `at` places the single
    /// one (centered when absent); `seed` drives the density placement.
    pub fn build(&self, n: usize, at: Option<usize>, seed: u64) -> Result<Configuration, String> {
        if n == 0 {
            return Err("lattice width must be positive".into());
        }
        match self {
            Self::SingleOne => match at {
                Some(i) => Configuration::single_one(n, i).map_err(|e| e.to_string()),
                None => Ok(Configuration::single_one_centered(n)),
            },
            Self::AllZeros => Ok(Configuration::zeros(n)),
            Self::AllOnes => Ok(Configuration::ones(n)),
            Self::Density(rho) => {
                let ones = (rho * n as f64).round() as usize;
                Ok(sample_with_ones(n, ones, &mut rng_from(seed, 0)))
            }
            Self::Hex(h) => Configuration::from_hex(n, h).map_err(|e| e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("single-one".parse(), Ok(IcSpec::SingleOne));
        assert_eq!("density:0.25".parse(), Ok(IcSpec::Density(0.25)));
        assert!("density:1.5".parse::<IcSpec>().is_err());
        assert!("hex:zz".parse::<IcSpec>().is_err());
        assert!("random".parse::<IcSpec>().is_err());
        for s in ["all-ones", "density:0.5", "hex:0f"] {
            assert_eq!(s.parse::<IcSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn build() {
        assert_eq!(IcSpec::SingleOne.build(11, None, 0).unwrap().to_string(), "00000100000");
        assert_eq!(IcSpec::SingleOne.build(5, Some(0), 0).unwrap().to_string(), "10000");
        assert!(IcSpec::SingleOne.build(5, Some(5), 0).is_err());
        let c = IcSpec::Density(0.3).build(20, None, 4).unwrap();
        assert_eq!(c.count_ones(), 6);
        assert_eq!(c, IcSpec::Density(0.3).build(20, None, 4).unwrap());
        assert!(IcSpec::Hex("ff".into()).build(5, None, 0).is_err());
    }
}
