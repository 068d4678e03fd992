use super::{Band, ClassId, DClassDecomposition, Elem};
use crate::error::{Error, Result};

/// The maps `φ_{α,β}: B_α → B_β` (for `β ≤ α`) of a normal band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMorphisms {
    /// `images[x][β]` is `x φ_{class(x), β}` when `β ≤ class(x)`.
    images: Vec<Vec<Option<Elem>>>,
}

impl StructureMorphisms {
    /// `x φ_{class(x), β}`, or `None` unless `β ≤ class(x)`.
    pub fn apply(&self, x: Elem, beta: ClassId) -> Option<Elem> {
        self.images[x][beta]
    }

    /// The graph of `φ_{α,β}` in element order, or `None` unless `β ≤ α`.
    pub fn map(
        &self,
        d: &DClassDecomposition,
        alpha: ClassId,
        beta: ClassId,
    ) -> Option<Vec<(Elem, Elem)>> {
        if !d.leq(beta, alpha) {
            return None;
        }
        Some(
            d.members(alpha)
                .iter()
                .map(|&x| (x, self.images[x][beta].expect("β ≤ α")))
                .collect(),
        )
    }
}

fn is_normal(b: &Band) -> bool {
    let n = b.len();
    (0..n).all(|x| {
        (0..n).all(|y| (0..y).all(|z| b.product(&[x, y, z, x]) == b.product(&[x, z, y, x])))
    })
}

/// Extracts `φ_{α,β}(x) = x f x` for the first `f ∈ B_β`, then checks
/// choice independence, (B1), (B2) and `xy = (xφ)(yφ)` exhaustively.
pub fn structure_morphisms(b: &Band, d: &DClassDecomposition) -> Result<StructureMorphisms> {
    if !is_normal(b) {
        return Err(Error::NotNormal);
    }
    let n = b.len();
    let k = d.num_classes();
    let mut images = vec![vec![None; k]; n];
    for x in 0..n {
        let alpha = d.class_of(x);
        for beta in 0..k {
            if !d.leq(beta, alpha) {
                continue;
            }
            let members = d.members(beta);
            let img = b.product(&[x, members[0], x]);
            for &f in &members[1..] {
                if b.product(&[x, f, x]) != img {
                    return Err(Error::Inconsistent(format!(
                        "x f x depends on f for x = {} into {}",
                        b.name(x),
                        d.label(b, beta)
                    )));
                }
            }
            images[x][beta] = Some(img);
        }
    }
    let m = StructureMorphisms { images };

    for x in 0..n {
        let alpha = d.class_of(x);
        if m.apply(x, alpha) != Some(x) {
            return Err(Error::Inconsistent(format!(
                "φ not the identity on {}",
                b.name(x)
            )));
        }
        for beta in 0..k {
            for gamma in 0..k {
                if d.leq(gamma, beta) && d.leq(beta, alpha) {
                    let via = m.apply(x, beta).and_then(|y| m.apply(y, gamma));
                    if via != m.apply(x, gamma) {
                        return Err(Error::Inconsistent(format!(
                            "φ composition fails for {}",
                            b.name(x)
                        )));
                    }
                }
            }
        }
        for y in 0..n {
            let ab = d.meet(alpha, d.class_of(y));
            let lhs = b.mul(x, y);
            let rhs = b.mul(m.apply(x, ab).unwrap(), m.apply(y, ab).unwrap());
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "product law fails for ({}, {})",
                    b.name(x),
                    b.name(y)
                )));
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::decompose;
    use crate::bundled;

    #[test]
    fn normal10_alpha_to_beta() {
        let b = bundled::band("normal10").unwrap();
        let d = decompose(&b);
        let m = structure_morphisms(&b, &d).unwrap();
        let graph: Vec<(&str, &str)> = m
            .map(&d, 0, 1)
            .unwrap()
            .into_iter()
            .map(|(x, y)| (b.name(x), b.name(y)))
            .collect();
        assert_eq!(graph, [("a", "e"), ("b", "f"), ("c", "g"), ("d", "h")]);
        let to_bottom: Vec<&str> = m
            .map(&d, 1, 3)
            .unwrap()
            .into_iter()
            .map(|(_, y)| b.name(y))
            .collect();
        assert_eq!(to_bottom, ["u"; 4]);
        assert!(m.map(&d, 1, 2).is_none());
    }

    #[test]
    fn identity_on_each_class() {
        for name in ["normal10", "normal5", "y3"] {
            let b = bundled::band(name).unwrap();
            let d = decompose(&b);
            let m = structure_morphisms(&b, &d).unwrap();
            for c in 0..d.num_classes() {
                for (x, y) in m.map(&d, c, c).unwrap() {
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn rejects_non_normal() {
        let b = bundled::band("band4").unwrap();
        let d = decompose(&b);
        assert_eq!(structure_morphisms(&b, &d), Err(Error::NotNormal));
    }
}
