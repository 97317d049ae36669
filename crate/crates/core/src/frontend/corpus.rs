//! Theories shipped with the library.

use super::parse::parse_theory;
use crate::rewrite::Theory;

pub const BETAETA: &str = include_str!("../../theories/betaeta.nrw");
pub const NONCLOSED: &str = include_str!("../../theories/nonclosed.nrw");
pub const GROW: &str = include_str!("../../theories/remark43.nrw");
pub const FOL: &str = include_str!("../../theories/fol.nrw");

/// `(file name, source)` for every bundled theory.
pub const BUNDLED: [(&str, &str); 4] = [
    ("betaeta.nrw", BETAETA),
    ("nonclosed.nrw", NONCLOSED),
    ("remark43.nrw", GROW),
    ("fol.nrw", FOL),
];

/// Parses a bundled theory by file name, with or without the extension.
pub fn bundled(name: &str) -> Option<Theory> {
    let file = if name.ends_with(".nrw") {
        name.to_string()
    } else {
        format!("{name}.nrw")
    };
    BUNDLED
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, src)| parse_theory(src).expect("bundled theories parse"))
}

pub fn betaeta() -> Theory {
    bundled("betaeta").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_theories_parse() {
        for (name, src) in BUNDLED {
            let th = parse_theory(src).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!th.rules.is_empty(), "{name}");
        }
        assert_eq!(betaeta().rules.len(), 5);
        assert!(bundled("missing").is_none());
    }
}
