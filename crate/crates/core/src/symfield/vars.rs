//! The fixed, global variable alphabet.
//!
//! Every expression in the crate lives over the same ordered list of
//! symbols. The position of a symbol in [`ALPHABET`] is also its rank in the
//! lexicographic tie-break of the graded-lex term order, so `q1` is the
//! "largest" variable and chart-local names come last.

use std::fmt;
use std::sync::OnceLock;

/// Canonical symbols followed by reserved chart-local names.
const BASE: &[&str] = &[
    "q1", "p1", "q2", "p2", "x", "y", "z", "w", "q", "t", "a2", "p", "alpha", "u0", "u1", "u2", "u3",
    "u4",
];

const CHART_PREFIXES: &[&str] = &["x", "y", "z", "w", "q", "X", "Y", "Z", "W"];
const CHART_LEVELS: u8 = 9;

/// Auxiliary symbols used internally (scaling limits, characteristic polynomials).
const AUX: &[&str] = &["eps", "lam"];

static ALPHABET: OnceLock<Vec<&'static str>> = OnceLock::new();

fn alphabet() -> &'static [&'static str] {
    ALPHABET.get_or_init(|| {
        let mut names: Vec<&'static str> = BASE.to_vec();
        for prefix in CHART_PREFIXES {
            for level in 1..=CHART_LEVELS {
                let name: &'static str = Box::leak(format!("{prefix}{level}").into_boxed_str());
                if !names.contains(&name) {
                    names.push(name);
                }
            }
        }
        names.extend_from_slice(AUX);
        assert!(names.len() <= u8::MAX as usize);
        names
    })
}

/// A symbol of the global alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub fn lookup(name: &str) -> Option<Var> {
        alphabet().iter().position(|n| *n == name).map(|i| Var(i as u8))
    }

    /// Looks up a name that is known to be in the alphabet.
    ///
    /// Panics on unknown names; meant for catalogue construction.
    pub fn named(name: &str) -> Var {
        Var::lookup(name).unwrap_or_else(|| panic!("`{name}` is not in the variable alphabet"))
    }

    pub fn name(self) -> &'static str {
        alphabet()[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Chart-local name `prefix{level}`, e.g. `chart("x", 3)` is `x3`.
    pub fn chart(prefix: &str, level: u8) -> Var {
        Var::named(&format!("{prefix}{level}"))
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..alphabet().len()).map(|i| Var(i as u8))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shorthand used by the catalogues: `v("q1")`.
pub fn v(name: &str) -> Var {
    Var::named(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_fixed() {
        let order: Vec<_> = ["q1", "p1", "q2", "p2", "x", "y", "z", "w", "q", "t", "a2"]
            .iter()
            .map(|n| v(n))
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn chart_names_resolve() {
        assert_eq!(Var::chart("x", 8).name(), "x8");
        assert_eq!(Var::chart("q", 1), v("q1"));
        assert_eq!(Var::lookup("nope"), None);
    }
}
