//! Word problem deciders for `IG(B)`.
//!
//! Semilattices and rectangular bands have unique normal forms; locally
//! large bands are decided blockwise on almost normal forms; in a normal
//! band, words whose letters all lie above one component are decided in
//! that component. Everything else goes through cheap invariants that can
//! prove inequality and then the bounded search.

use std::fmt;

use crate::analysis::Analysis;
use crate::band::{Band, ClassId, Elem};
use crate::error::{Error, Result};
use crate::igword::{anf, significant_indices, y_projection, ScanDirection};
use crate::rewrite::{bfs_equal, normal_form, BfsOutcome, Budget, GenWord, RewriteCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    NotEqual,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::NotEqual => "not-equal",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Identical,
    SemilatticeNf,
    RectangularNf,
    LocallyLarge,
    NormalComponent,
    DistinctGenerators,
    YProjection,
    BandImage,
    PrefixRClass,
    SuffixLClass,
    BfsOracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Identical => "identical",
            Method::SemilatticeNf => "semilattice-nf",
            Method::RectangularNf => "rectangular-nf",
            Method::LocallyLarge => "locally-large",
            Method::NormalComponent => "normal-component",
            Method::DistinctGenerators => "distinct-generators",
            Method::YProjection => "y-projection",
            Method::BandImage => "band-image",
            Method::PrefixRClass => "prefix-r-class",
            Method::SuffixLClass => "suffix-l-class",
            Method::BfsOracle => "bfs-oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A derivation from the first word to the second.
    Certificate(RewriteCertificate),
    /// Distinct canonical forms (normal forms, or almost normal forms with
    /// blocks in normal form).
    CanonicalForms { left: GenWord, right: GenWord },
    /// Different ordered Y-components.
    YComponents {
        left: Vec<ClassId>,
        right: Vec<ClassId>,
    },
    /// Different images under `IG(B) → B`.
    BandImage { left: Elem, right: Elem },
    /// Two different single generators.
    DistinctGenerators { left: Elem, right: Elem },
    /// Prefix products up to the `index`-th left-to-right significant
    /// index are not R-related in `B`.
    PrefixRClass {
        index: usize,
        left: Elem,
        right: Elem,
    },
    /// Suffix products from the `index`-th right-to-left significant index
    /// are not L-related in `B`.
    SuffixLClass {
        index: usize,
        left: Elem,
        right: Elem,
    },
    /// The search gave up; `exhausted` records whether the length-capped
    /// closure of one side was completed.
    Budget { explored: usize, exhausted: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub evidence: Evidence,
}

impl EqualityVerdict {
    fn equal(method: Method, c: RewriteCertificate) -> Self {
        EqualityVerdict {
            verdict: Verdict::Equal,
            method,
            evidence: Evidence::Certificate(c),
        }
    }

    fn not_equal(method: Method, evidence: Evidence) -> Self {
        EqualityVerdict {
            verdict: Verdict::NotEqual,
            method,
            evidence,
        }
    }

    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn is_not_equal(&self) -> bool {
        self.verdict == Verdict::NotEqual
    }

    pub fn certificate(&self) -> Option<&RewriteCertificate> {
        match &self.evidence {
            Evidence::Certificate(c) => Some(c),
            _ => None,
        }
    }

    /// A multi-line report: verdict and method, then the evidence.
    pub fn render(&self, b: &Band) -> String {
        let head = format!("{} ({})", self.verdict, self.method);
        let name = |e: Elem| b.name(e).to_string();
        let classes = |cs: &[ClassId]| {
            cs.iter()
                .map(|&c| crate::band::DClassDecomposition::class_name(c))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let body = match &self.evidence {
            Evidence::Certificate(c) => c.to_text(b),
            Evidence::CanonicalForms { left, right } => {
                format!(
                    "canonical forms: {} / {}\n",
                    left.render(b),
                    right.render(b)
                )
            }
            Evidence::YComponents { left, right } => {
                format!("y-components: {} / {}\n", classes(left), classes(right))
            }
            Evidence::BandImage { left, right } => {
                format!("band images: {} / {}\n", name(*left), name(*right))
            }
            Evidence::DistinctGenerators { left, right } => {
                format!("distinct generators: {} / {}\n", name(*left), name(*right))
            }
            Evidence::PrefixRClass { index, left, right } => format!(
                "prefix products at significant index {index} not R-related: {} / {}\n",
                name(*left),
                name(*right)
            ),
            Evidence::SuffixLClass { index, left, right } => format!(
                "suffix products at significant index {index} not L-related: {} / {}\n",
                name(*left),
                name(*right)
            ),
            Evidence::Budget {
                explored,
                exhausted,
            } => format!(
                "search budget reached after {explored} words (length-capped closure {})\n",
                if *exhausted {
                    "exhausted"
                } else {
                    "not exhausted"
                }
            ),
        };
        format!("{head}\n{body}")
    }
}

/// Decides by comparing normal forms, which must be unique for `b`.
fn by_normal_forms(b: &Band, w1: &GenWord, w2: &GenWord, method: Method) -> EqualityVerdict {
    let (n1, c1) = normal_form(b, w1);
    let (n2, c2) = normal_form(b, w2);
    if n1 == n2 {
        EqualityVerdict::equal(method, c1.then(c2.reversed()))
    } else {
        EqualityVerdict::not_equal(
            method,
            Evidence::CanonicalForms {
                left: n1,
                right: n2,
            },
        )
    }
}

fn is_semilattice(b: &Band) -> bool {
    b.elements()
        .all(|x| b.elements().all(|y| b.mul(x, y) == b.mul(y, x)))
}

fn is_rectangular(b: &Band) -> bool {
    b.elements()
        .all(|x| b.elements().all(|y| b.product(&[x, y, x]) == x))
}

fn check_words(b: &Band, ws: [&GenWord; 2]) -> Result<()> {
    ws.iter().try_for_each(|w| w.check(b))
}

/// `IG(Y)` has unique normal forms.
pub fn equal_semilattice(b: &Band, w1: &GenWord, w2: &GenWord) -> Result<EqualityVerdict> {
    check_words(b, [w1, w2])?;
    if !is_semilattice(b) {
        return Err(Error::NotSemilattice);
    }
    Ok(by_normal_forms(b, w1, w2, Method::SemilatticeNf))
}

/// `IG(B)` has unique normal forms for a rectangular band `B`.
pub fn equal_rectangular(b: &Band, w1: &GenWord, w2: &GenWord) -> Result<EqualityVerdict> {
    check_words(b, [w1, w2])?;
    if !is_rectangular(b) {
        return Err(Error::NotRectangular);
    }
    Ok(by_normal_forms(b, w1, w2, Method::RectangularNf))
}

/// Compares almost normal forms whose blocks are in normal form; for a
/// locally large band these are canonical.
fn by_almost_normal_forms(
    a: &Analysis,
    w1: &GenWord,
    w2: &GenWord,
    method: Method,
) -> EqualityVerdict {
    let (f1, c1) = anf(a, w1);
    let (f2, c2) = anf(a, w2);
    if f1.components() != f2.components() {
        return EqualityVerdict::not_equal(
            Method::YProjection,
            Evidence::YComponents {
                left: f1.components().to_vec(),
                right: f2.components().to_vec(),
            },
        );
    }
    if f1.word() == f2.word() {
        EqualityVerdict::equal(method, c1.then(c2.reversed()))
    } else {
        EqualityVerdict::not_equal(
            method,
            Evidence::CanonicalForms {
                left: f1.word().clone(),
                right: f2.word().clone(),
            },
        )
    }
}

pub fn equal_locally_large(a: &Analysis, w1: &GenWord, w2: &GenWord) -> Result<EqualityVerdict> {
    check_words(a.band(), [w1, w2])?;
    if !a.classification().is_locally_large {
        return Err(Error::NotLocallyLarge);
    }
    Ok(by_almost_normal_forms(a, w1, w2, Method::LocallyLarge))
}

/// Replaces each letter `x ∈ B_β` by `x φ_{β,α}`.
pub fn project_component(a: &Analysis, w: &GenWord, alpha: ClassId) -> Result<GenWord> {
    w.check(a.band())?;
    let m = a.require_normal()?;
    let letters = w
        .iter()
        .map(|&x| {
            m.apply(x, alpha).ok_or_else(|| Error::NotAbove {
                letter: a.band().name(x).to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GenWord::new(letters)
}

/// Equality of words over a single component `B_α` of a normal band,
/// decided in `IG(B_α)`.
pub fn equal_normal_component(a: &Analysis, w1: &GenWord, w2: &GenWord) -> Result<EqualityVerdict> {
    check_words(a.band(), [w1, w2])?;
    a.require_normal()?;
    let alpha = a.class_of(w1[0]);
    if let Some(&x) = w1
        .iter()
        .chain(w2.iter())
        .find(|&&x| a.class_of(x) != alpha)
    {
        return Err(Error::MixedComponents(a.band().name(x).to_string()));
    }
    let members = a.decomposition().members(alpha);
    let component = a.band().restrict(members)?;
    let local = |w: &GenWord| {
        GenWord::new(
            w.iter()
                .map(|x| members.iter().position(|m| m == x).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let verdict = equal_rectangular(&component, &local(w1), &local(w2))?;
    // Basic pairs inside B_α are basic in B with the same products, so the
    // normal forms computed in B are the component's.
    let mut out = by_normal_forms(a.band(), w1, w2, Method::NormalComponent);
    if out.verdict != verdict.verdict {
        return Err(Error::Inconsistent(
            "component normal forms disagree with the band's".into(),
        ));
    }
    out.method = Method::NormalComponent;
    Ok(out)
}

/// Runs the strongest decider that applies, then inequality filters, then
/// the bounded search. Inconclusive only when the search gives up.
pub fn equal(a: &Analysis, w1: &GenWord, w2: &GenWord, budget: Budget) -> EqualityVerdict {
    let b = a.band();
    if w1 == w2 {
        return EqualityVerdict::equal(Method::Identical, RewriteCertificate::identity(w1.clone()));
    }
    let class = a.classification();
    if class.is_semilattice {
        return by_normal_forms(b, w1, w2, Method::SemilatticeNf);
    }
    if class.is_rectangular {
        return by_normal_forms(b, w1, w2, Method::RectangularNf);
    }
    if class.is_locally_large {
        return by_almost_normal_forms(a, w1, w2, Method::LocallyLarge);
    }
    if w1.len() == 1 && w2.len() == 1 {
        return EqualityVerdict::not_equal(
            Method::DistinctGenerators,
            Evidence::DistinctGenerators {
                left: w1[0],
                right: w2[0],
            },
        );
    }
    let (p1, p2) = (y_projection(a, w1), y_projection(a, w2));
    if p1.normal_form != p2.normal_form {
        return EqualityVerdict::not_equal(
            Method::YProjection,
            Evidence::YComponents {
                left: p1.normal_form.into_letters(),
                right: p2.normal_form.into_letters(),
            },
        );
    }
    let (e1, e2) = (w1.evaluate(b), w2.evaluate(b));
    if e1 != e2 {
        return EqualityVerdict::not_equal(
            Method::BandImage,
            Evidence::BandImage {
                left: e1,
                right: e2,
            },
        );
    }
    if class.is_normal && p1.normal_form.len() == 1 {
        // Every letter lies above the single component, so each word equals
        // its projection there; equality is then decided in that component.
        return by_almost_normal_forms(a, w1, w2, Method::NormalComponent);
    }
    if let Some(v) = prefix_filter(a, w1, w2) {
        return v;
    }
    if let Some(v) = suffix_filter(a, w1, w2) {
        return v;
    }
    match bfs_equal(b, w1, w2, budget) {
        BfsOutcome::Equal(c) => EqualityVerdict::equal(Method::BfsOracle, c),
        BfsOutcome::DistinctWithinBudget { explored } => EqualityVerdict {
            verdict: Verdict::Inconclusive,
            method: Method::BfsOracle,
            evidence: Evidence::Budget {
                explored,
                exhausted: true,
            },
        },
        BfsOutcome::Inconclusive { explored } => EqualityVerdict {
            verdict: Verdict::Inconclusive,
            method: Method::BfsOracle,
            evidence: Evidence::Budget {
                explored,
                exhausted: false,
            },
        },
    }
}

fn prefix_filter(a: &Analysis, w1: &GenWord, w2: &GenWord) -> Option<EqualityVerdict> {
    let b = a.band();
    let d = a.decomposition();
    let s1 = significant_indices(d, w1, ScanDirection::LeftToRight);
    let s2 = significant_indices(d, w2, ScanDirection::LeftToRight);
    for (l, (&i, &j)) in s1.indices.iter().zip(&s2.indices).enumerate() {
        let (x, y) = (b.product(&w1[..i]), b.product(&w2[..j]));
        if !b.r_related(x, y) {
            return Some(EqualityVerdict::not_equal(
                Method::PrefixRClass,
                Evidence::PrefixRClass {
                    index: l + 1,
                    left: x,
                    right: y,
                },
            ));
        }
    }
    None
}

fn suffix_filter(a: &Analysis, w1: &GenWord, w2: &GenWord) -> Option<EqualityVerdict> {
    let b = a.band();
    let d = a.decomposition();
    let s1 = significant_indices(d, w1, ScanDirection::RightToLeft);
    let s2 = significant_indices(d, w2, ScanDirection::RightToLeft);
    for (l, (&i, &j)) in s1.indices.iter().zip(&s2.indices).enumerate() {
        let (x, y) = (b.product(&w1[i - 1..]), b.product(&w2[j - 1..]));
        if !b.l_related(x, y) {
            return Some(EqualityVerdict::not_equal(
                Method::SuffixLClass,
                Evidence::SuffixLClass {
                    index: l + 1,
                    left: x,
                    right: y,
                },
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::check_certificate;

    fn power(a: &Analysis, base: &str, n: usize) -> GenWord {
        a.w(&vec![base; n].join(" "))
    }

    #[test]
    fn semilattice_examples() {
        let a = Analysis::bundled("y3");
        let b = a.band();
        let v = equal_semilattice(b, &power(&a, "e f", 2), &power(&a, "e f", 3)).unwrap();
        assert!(v.is_not_equal());
        let v = equal_semilattice(b, &a.w("e g f"), &a.w("g")).unwrap();
        assert!(v.is_equal());
        assert!(check_certificate(b, v.certificate().unwrap()));
        let b4 = Analysis::bundled("band4");
        assert_eq!(
            equal_semilattice(b4.band(), &b4.w("a"), &b4.w("a")),
            Err(Error::NotSemilattice)
        );
    }

    #[test]
    fn rectangular_examples() {
        let a = Analysis::bundled("nonnormal5");
        let d = a.decomposition();
        let beta = d.class_of(a.band().index_of("u").unwrap());
        let comp = a.band().restrict(d.members(beta)).unwrap();
        let w = |s: &str| GenWord::parse(&comp, s).unwrap();
        assert!(equal_rectangular(&comp, &w("u' w"), &w("w'"))
            .unwrap()
            .is_not_equal());
        let r = crate::band::rectangular_band(2, 2, &["p", "q", "r", "s"]).unwrap();
        let w = |s: &str| GenWord::parse(&r, s).unwrap();
        assert!(equal_rectangular(&r, &w("p q"), &w("q"))
            .unwrap()
            .is_equal());
        assert!(equal_rectangular(&r, &w("p"), &w("p")).unwrap().is_equal());
    }

    #[test]
    fn locally_large_examples() {
        let a = Analysis::bundled("rect1");
        let v = equal_locally_large(&a, &a.w("p a q"), &a.w("p q")).unwrap();
        assert!(v.is_equal());
        assert!(check_certificate(a.band(), v.certificate().unwrap()));
        assert!(equal_locally_large(&a, &a.w("p s"), &a.w("s"))
            .unwrap()
            .is_not_equal());
        let n10 = Analysis::bundled("normal10");
        assert_eq!(
            equal_locally_large(&n10, &n10.w("e"), &n10.w("e")),
            Err(Error::NotLocallyLarge)
        );
    }

    #[test]
    fn projection_examples() {
        let a = Analysis::bundled("normal10");
        let d = a.decomposition();
        let beta = d.class_of(a.band().index_of("e").unwrap());
        let delta = d.class_of(a.band().index_of("u").unwrap());
        assert_eq!(
            project_component(&a, &a.w("e h e"), beta).unwrap(),
            a.w("e h e")
        );
        assert_eq!(
            project_component(&a, &a.w("e d e"), beta).unwrap(),
            a.w("e h e")
        );
        assert_eq!(
            project_component(&a, &a.w("a b"), delta).unwrap(),
            a.w("u u")
        );
        assert!(matches!(
            project_component(&a, &a.w("v"), beta),
            Err(Error::NotAbove { .. })
        ));
        let b4 = Analysis::bundled("band4");
        assert_eq!(project_component(&b4, &b4.w("a"), 0), Err(Error::NotNormal));
    }

    #[test]
    fn normal_component_examples() {
        let a = Analysis::bundled("normal10");
        assert!(equal_normal_component(&a, &a.w("e h e"), &a.w("e"))
            .unwrap()
            .is_not_equal());
        let v = equal_normal_component(&a, &a.w("e f"), &a.w("f")).unwrap();
        assert!(v.is_equal());
        assert!(check_certificate(a.band(), v.certificate().unwrap()));
        assert!(matches!(
            equal_normal_component(&a, &a.w("e v"), &a.w("e")),
            Err(Error::MixedComponents(_))
        ));
    }

    #[test]
    fn dispatcher_examples() {
        let a = Analysis::bundled("nonnormal5");
        let v = equal(&a, &a.w("u' w"), &a.w("w'"), Budget::default());
        assert!(v.is_equal(), "{}", v.render(a.band()));
        assert_eq!(v.method, Method::BfsOracle);
        let c = v.certificate().unwrap();
        assert!(check_certificate(a.band(), c));
        assert!(c.len() <= 6);

        let n10 = Analysis::bundled("normal10");
        let v = equal(&n10, &n10.w("e v"), &n10.w("g v"), Budget::default());
        assert_eq!(v.method, Method::PrefixRClass);
        assert!(v.is_not_equal());
        let v = equal(&n10, &n10.w("e d"), &n10.w("e h"), Budget::default());
        assert!(v.is_equal());
        assert_eq!(v.method, Method::NormalComponent);
        assert!(check_certificate(n10.band(), v.certificate().unwrap()));
    }
}
