//! Example bands shipped with the crate.
//!
//! | name         | size | notes                                                 |
//! |--------------|------|-------------------------------------------------------|
//! | `y3`         | 3    | semilattice `e, f > g`                                |
//! | `band4`      | 4    | non-normal; `IG` is not abundant                      |
//! | `normal5`    | 5    | normal; normal forms are not unique                   |
//! | `nonnormal5` | 5    | component projection fails without normality          |
//! | `normal10`   | 10   | normal; `IG` is not abundant                          |
//! | `rect1`      | 5    | 2x2 rectangular band with an identity adjoined        |

use crate::band::Band;
use crate::error::BandError;

pub const Y3: &str = include_str!("../bands/y3.band");
pub const BAND4: &str = include_str!("../bands/band4.band");
pub const NORMAL5: &str = include_str!("../bands/normal5.band");
pub const NONNORMAL5: &str = include_str!("../bands/nonnormal5.band");
pub const NORMAL10: &str = include_str!("../bands/normal10.band");
pub const RECT1: &str = include_str!("../bands/rect1.band");

/// Strong-semilattice descriptions of the two normal examples.
pub const NORMAL5_SSL: &str = include_str!("../bands/normal5.ssl");
pub const NORMAL10_SSL: &str = include_str!("../bands/normal10.ssl");

pub const NAMES: [&str; 6] = ["y3", "band4", "normal5", "nonnormal5", "normal10", "rect1"];

/// Band-file text of a bundled band.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "y3" => Y3,
        "band4" => BAND4,
        "normal5" => NORMAL5,
        "nonnormal5" => NONNORMAL5,
        "normal10" => NORMAL10,
        "rect1" => RECT1,
        _ => return None,
    })
}

/// Parses a bundled band; `None` for unknown names.
pub fn band(name: &str) -> Option<Band> {
    source(name).map(|text| parse_bundled(name, text))
}

fn parse_bundled(name: &str, text: &str) -> Band {
    Band::parse(text).unwrap_or_else(|e: BandError| panic!("bundled band {name} is invalid: {e}"))
}

/// Every bundled band, in the order of [`NAMES`].
pub fn all() -> Vec<(&'static str, Band)> {
    NAMES
        .iter()
        .map(|&name| (name, parse_bundled(name, source(name).unwrap())))
        .collect()
}
