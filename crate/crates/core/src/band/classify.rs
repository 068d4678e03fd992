use std::fmt;

use super::{Band, DClassDecomposition, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Semilattice,
    Rectangular,
    Chain,
    Normal,
    RegularBand,
    LocallyLarge,
    YBasic,
    Pliant,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Semilattice => "semilattice",
            Property::Rectangular => "rectangular",
            Property::Chain => "chain",
            Property::Normal => "normal",
            Property::RegularBand => "regular-band",
            Property::LocallyLarge => "locally-large",
            Property::YBasic => "y-basic",
            Property::Pliant => "pliant",
        })
    }
}

/// Elements refuting a defining condition.
///
/// Layout of `elements` per property:
/// - semilattice `(e, f)`: `ef != fe`
/// - rectangular `(x, y)`: `xyx != x`
/// - chain `(e, f)`: classes of `e` and `f` incomparable
/// - normal `(x, y, z)`: `xyzx != xzyx`
/// - regular band `(x, y, z)`: `xyxzx != xyzx`
/// - locally large `(u, v)`: class of `u` below class of `v`, and `uv != u` or `vu != u`
/// - Y-basic `(x, y, p, q)`: all in one class, `xy != x` and `pq != q`
/// - pliant `(u, w, t)`: `u, w` strictly above the class of `t`, `utu != wtw`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub property: Property,
    pub elements: Vec<Elem>,
}

impl Refutation {
    /// Re-evaluates the defining condition on the witness; true when it is
    /// a genuine violation.
    pub fn is_genuine(&self, b: &Band, d: &DClassDecomposition) -> bool {
        let m = |xs: &[Elem]| b.product(xs);
        let e = &self.elements;
        match (self.property, e.as_slice()) {
            (Property::Semilattice, &[x, y]) => b.mul(x, y) != b.mul(y, x),
            (Property::Rectangular, &[x, y]) => m(&[x, y, x]) != x,
            (Property::Chain, &[x, y]) => !d.comparable(d.class_of(x), d.class_of(y)),
            (Property::Normal, &[x, y, z]) => m(&[x, y, z, x]) != m(&[x, z, y, x]),
            (Property::RegularBand, &[x, y, z]) => m(&[x, y, x, z, x]) != m(&[x, y, z, x]),
            (Property::LocallyLarge, &[u, v]) => {
                d.lt(d.class_of(u), d.class_of(v)) && (b.mul(u, v) != u || b.mul(v, u) != u)
            }
            (Property::YBasic, &[x, y, p, q]) => {
                let c = d.class_of(x);
                [y, p, q].iter().all(|&z| d.class_of(z) == c)
                    && b.mul(x, y) != x
                    && b.mul(p, q) != q
            }
            (Property::Pliant, &[u, w, t]) => {
                let c = d.class_of(t);
                d.lt(c, d.class_of(u)) && d.lt(c, d.class_of(w)) && m(&[u, t, u]) != m(&[w, t, w])
            }
            _ => false,
        }
    }

    pub fn render(&self, b: &Band) -> String {
        let names: Vec<&str> = self.elements.iter().map(|&e| b.name(e)).collect();
        format!("{}: ({})", self.property, names.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandClassification {
    pub is_semilattice: bool,
    pub is_rectangular: bool,
    pub is_chain: bool,
    pub is_normal: bool,
    pub is_regular_band: bool,
    pub is_locally_large: bool,
    pub is_y_basic: bool,
    /// `None` when the band is not normal: pliancy is only defined there.
    pub is_pliant: Option<bool>,
    pub refutations: Vec<Refutation>,
}

impl BandClassification {
    pub fn refutation(&self, p: Property) -> Option<&Refutation> {
        self.refutations.iter().find(|r| r.property == p)
    }

    pub fn flag(&self, p: Property) -> Option<bool> {
        Some(match p {
            Property::Semilattice => self.is_semilattice,
            Property::Rectangular => self.is_rectangular,
            Property::Chain => self.is_chain,
            Property::Normal => self.is_normal,
            Property::RegularBand => self.is_regular_band,
            Property::LocallyLarge => self.is_locally_large,
            Property::YBasic => self.is_y_basic,
            Property::Pliant => return self.is_pliant,
        })
    }
}

fn find_pair(n: usize, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| bad(x, y))
        .map(|(x, y)| vec![x, y])
}

/// Exhaustive check of every defining condition; refuted flags carry the
/// first violating tuple in lexicographic order.
pub fn classify(b: &Band, d: &DClassDecomposition) -> BandClassification {
    let n = b.len();
    let m = |xs: &[Elem]| b.product(xs);
    let mut refutations = Vec::new();
    let mut record = |p: Property, w: Option<Vec<Elem>>| match w {
        Some(elements) => {
            refutations.push(Refutation {
                property: p,
                elements,
            });
            false
        }
        None => true,
    };

    let is_semilattice = record(
        Property::Semilattice,
        find_pair(n, |x, y| b.mul(x, y) != b.mul(y, x)),
    );
    let is_rectangular = record(
        Property::Rectangular,
        find_pair(n, |x, y| m(&[x, y, x]) != x),
    );
    let is_chain = record(
        Property::Chain,
        find_pair(n, |x, y| !d.comparable(d.class_of(x), d.class_of(y))),
    );

    // xyzx = xzyx is symmetric in y and z, so only z < y is scanned.
    let normal_witness = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..y).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| m(&[x, y, z, x]) != m(&[x, z, y, x]))
        .map(|(x, y, z)| vec![x, y, z]);
    let is_normal = record(Property::Normal, normal_witness);

    let regular_witness = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| m(&[x, y, x, z, x]) != m(&[x, y, z, x]))
        .map(|(x, y, z)| vec![x, y, z]);
    let is_regular_band = record(Property::RegularBand, regular_witness);

    let is_locally_large = record(
        Property::LocallyLarge,
        find_pair(n, |u, v| {
            d.lt(d.class_of(u), d.class_of(v)) && (b.mul(u, v) != u || b.mul(v, u) != u)
        }),
    );

    let mut y_basic_witness = None;
    for class in d.classes() {
        let not_left_zero = class
            .iter()
            .flat_map(|&x| class.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| b.mul(x, y) != x);
        let not_right_zero = class
            .iter()
            .flat_map(|&x| class.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| b.mul(x, y) != y);
        if let (Some((x, y)), Some((p, q))) = (not_left_zero, not_right_zero) {
            y_basic_witness = Some(vec![x, y, p, q]);
            break;
        }
    }
    let is_y_basic = record(Property::YBasic, y_basic_witness);

    let is_pliant = if is_normal {
        let mut witness = None;
        'classes: for (c, class) in d.classes().iter().enumerate() {
            let t = class[0];
            let mut image: Option<(Elem, Elem)> = None;
            for u in 0..n {
                if !d.lt(c, d.class_of(u)) {
                    continue;
                }
                let img = m(&[u, t, u]);
                match image {
                    None => image = Some((u, img)),
                    Some((w, prev)) if prev != img => {
                        witness = Some(vec![w, u, t]);
                        break 'classes;
                    }
                    Some(_) => {}
                }
            }
        }
        Some(record(Property::Pliant, witness))
    } else {
        None
    };

    BandClassification {
        is_semilattice,
        is_rectangular,
        is_chain,
        is_normal,
        is_regular_band,
        is_locally_large,
        is_y_basic,
        is_pliant,
        refutations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::decompose;
    use crate::bundled;

    fn run(name: &str) -> (Band, DClassDecomposition, BandClassification) {
        let b = bundled::band(name).unwrap();
        let d = decompose(&b);
        let c = classify(&b, &d);
        (b, d, c)
    }

    fn names(b: &Band, r: &Refutation) -> Vec<String> {
        r.elements.iter().map(|&e| b.name(e).to_string()).collect()
    }

    #[test]
    fn band4_is_not_normal() {
        let (b, _, c) = run("band4");
        assert!(!c.is_normal);
        assert_eq!(
            names(&b, c.refutation(Property::Normal).unwrap()),
            ["a", "x", "b"]
        );
        assert_eq!(c.is_pliant, None);
    }

    #[test]
    fn normal10_flags() {
        let (b, _, c) = run("normal10");
        assert!(c.is_normal && c.is_regular_band);
        assert_eq!(c.is_pliant, Some(false));
        assert!(!c.is_y_basic);
        assert!(!c.is_locally_large);
        assert_eq!(
            names(&b, c.refutation(Property::LocallyLarge).unwrap()),
            ["e", "b"]
        );
        let e = b.index_of("e").unwrap();
        let bb = b.index_of("b").unwrap();
        assert_eq!(b.name(b.mul(e, bb)), "f");
        assert_eq!(
            names(&b, c.refutation(Property::Pliant).unwrap()),
            ["a", "b", "e"]
        );
    }

    #[test]
    fn y3_flags() {
        let (_, _, c) = run("y3");
        assert!(c.is_semilattice && c.is_locally_large && c.is_normal);
        assert!(!c.is_chain && !c.is_rectangular);
    }

    #[test]
    fn rect1_flags() {
        let (_, _, c) = run("rect1");
        assert!(c.is_locally_large && c.is_chain);
        assert!(!c.is_rectangular && !c.is_semilattice);
        // Identity adjoined to a 2x2 band is normal only if every
        // non-maximal class is trivial: here it is not.
        assert!(!c.is_normal);
    }

    #[test]
    fn flags_are_consistent_and_witnesses_genuine() {
        for (name, b) in bundled::all() {
            let d = decompose(&b);
            let c = classify(&b, &d);
            if c.is_semilattice {
                assert!(c.is_normal, "{name}");
            }
            if c.is_normal {
                assert!(c.is_regular_band, "{name}");
            }
            if c.is_locally_large {
                assert!(c.is_regular_band, "{name}");
            }
            for p in [
                Property::Semilattice,
                Property::Rectangular,
                Property::Chain,
                Property::Normal,
                Property::RegularBand,
                Property::LocallyLarge,
                Property::YBasic,
                Property::Pliant,
            ] {
                match c.flag(p) {
                    Some(false) => {
                        let r = c.refutation(p).expect("false flag carries a witness");
                        assert!(r.is_genuine(&b, &d), "{name}: {}", r.render(&b));
                    }
                    _ => assert!(c.refutation(p).is_none(), "{name} {p}"),
                }
            }
        }
    }
}
