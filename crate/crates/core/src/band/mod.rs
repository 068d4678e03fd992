//! Finite bands given by Cayley tables.
//!
//! A [`Band`] is validated on construction: every element is idempotent and
//! the table is associative. Everything downstream (D-classes, structure
//! maps, rewriting) relies on those two facts.

mod classify;
mod decompose;
mod morphisms;
mod strong;

pub use classify::{classify, BandClassification, Property, Refutation};
pub use decompose::{decompose, ClassId, DClassDecomposition};
pub use morphisms::{structure_morphisms, StructureMorphisms};
pub use strong::{build_strong_semilattice, ComponentSpec, StrongSemilatticeSpec};

use std::fmt;

use crate::error::BandError;

/// Index of an element in its band, in declaration order.
pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Band {
    names: Vec<String>,
    /// Row-major `n * n` Cayley table.
    table: Vec<Elem>,
}

impl fmt::Debug for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Band")
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Band {
    /// Builds a band from element names and a square table of indices,
    /// checking idempotency and associativity.
    pub fn from_rows(names: Vec<String>, rows: Vec<Vec<Elem>>) -> Result<Band, BandError> {
        let n = names.len();
        if n == 0 {
            return Err(BandError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(BandError::Syntax {
                    line: r + 1,
                    column: 1,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(BandError::EntryOutOfRange { row: r, column: c });
                }
                table.push(v);
            }
        }
        if rows.len() != n {
            return Err(BandError::Syntax {
                line: rows.len() + 1,
                column: 1,
                message: format!("table has {} rows, expected {n}", rows.len()),
            });
        }
        let band = Band { names, table };
        band.validate()?;
        Ok(band)
    }

    fn validate(&self) -> Result<(), BandError> {
        let n = self.len();
        for e in 0..n {
            if self.mul(e, e) != e {
                return Err(BandError::NonIdempotent {
                    element: self.names[e].clone(),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(BandError::NotAssociative {
                            x: self.names[x].clone(),
                            y: self.names[y].clone(),
                            z: self.names[z].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the plain-text band format:
    ///
    /// ```text
    /// # comment
    /// elements: e f g
    /// e: e g g
    /// f: g f g
    /// g: g g g
    /// ```
    pub fn parse(text: &str) -> Result<Band, BandError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| (i + 1, strip_comment(raw)))
            .filter(|(_, l)| !l.trim().is_empty());

        let (header_line, header) = lines.next().ok_or(BandError::Empty)?;
        let rest = header
            .trim_start()
            .strip_prefix("elements:")
            .ok_or_else(|| BandError::Syntax {
                line: header_line,
                column: leading_ws(header) + 1,
                message: "expected `elements:`".into(),
            })?;
        let offset = header.len() - rest.len();
        let mut names: Vec<String> = Vec::new();
        for (col, tok) in tokens(rest) {
            if !is_valid_name(tok) {
                return Err(BandError::Syntax {
                    line: header_line,
                    column: offset + col,
                    message: format!("invalid element name `{tok}`"),
                });
            }
            if names.iter().any(|n| n == tok) {
                return Err(BandError::Syntax {
                    line: header_line,
                    column: offset + col,
                    message: format!("duplicate element `{tok}`"),
                });
            }
            names.push(tok.to_string());
        }
        if names.is_empty() {
            return Err(BandError::Empty);
        }
        let n = names.len();
        let lookup = |name: &str| names.iter().position(|x| x == name);

        let mut rows: Vec<Option<Vec<Elem>>> = vec![None; n];
        let mut last_line = header_line;
        for (line_no, line) in lines {
            last_line = line_no;
            let Some(colon) = line.find(':') else {
                return Err(BandError::Syntax {
                    line: line_no,
                    column: leading_ws(line) + 1,
                    message: "expected `<name>: <entries>`".into(),
                });
            };
            let label = line[..colon].trim();
            let label_col = leading_ws(line) + 1;
            let row_elem = lookup(label).ok_or_else(|| BandError::UnknownElement {
                line: line_no,
                column: label_col,
                name: label.to_string(),
            })?;
            if rows[row_elem].is_some() {
                return Err(BandError::Syntax {
                    line: line_no,
                    column: label_col,
                    message: format!("row `{label}` given twice"),
                });
            }
            let mut row = Vec::with_capacity(n);
            for (col, tok) in tokens(&line[colon + 1..]) {
                let column = colon + 1 + col;
                let v = lookup(tok).ok_or_else(|| BandError::UnknownElement {
                    line: line_no,
                    column,
                    name: tok.to_string(),
                })?;
                row.push(v);
            }
            if row.len() != n {
                return Err(BandError::Syntax {
                    line: line_no,
                    column: line.len() + 1,
                    message: format!("row `{label}` has {} entries, expected {n}", row.len()),
                });
            }
            rows[row_elem] = Some(row);
        }
        let mut full = Vec::with_capacity(n);
        for (e, row) in rows.into_iter().enumerate() {
            match row {
                Some(r) => full.push(r),
                None => {
                    return Err(BandError::Syntax {
                        line: last_line + 1,
                        column: 1,
                        message: format!("missing row for `{}`", names[e]),
                    })
                }
            }
        }
        Band::from_rows(names, full)
    }

    /// Serializes to the format read by [`Band::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.names.join(" "));
        for e in 0..self.len() {
            let row: Vec<&str> = (0..self.len())
                .map(|f| self.names[self.mul(e, f)].as_str())
                .collect();
            out.push_str(&format!("{}: {}\n", self.names[e], row.join(" ")));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.names.len() + b]
    }

    /// Product of a non-empty sequence of elements.
    pub fn product(&self, letters: &[Elem]) -> Elem {
        let (&first, rest) = letters.split_first().expect("product of an empty sequence");
        rest.iter().fold(first, |acc, &x| self.mul(acc, x))
    }

    /// `Some((ef, fe))` when `{e, f} ∩ {ef, fe}` is non-empty.
    pub fn is_basic_pair(&self, e: Elem, f: Elem) -> Option<(Elem, Elem)> {
        let ef = self.mul(e, f);
        let fe = self.mul(f, e);
        if ef == e || ef == f || fe == e || fe == f {
            Some((ef, fe))
        } else {
            None
        }
    }

    /// `e R f` in the band: `ef = f` and `fe = e`.
    pub fn r_related(&self, e: Elem, f: Elem) -> bool {
        self.mul(e, f) == f && self.mul(f, e) == e
    }

    /// `e L f` in the band: `ef = e` and `fe = f`.
    pub fn l_related(&self, e: Elem, f: Elem) -> bool {
        self.mul(e, f) == e && self.mul(f, e) == f
    }

    /// The subband on `elements` (which must be closed under the product),
    /// keeping their relative order and names.
    pub fn restrict(&self, elements: &[Elem]) -> Result<Band, BandError> {
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        let pos = |x: Elem| elements.iter().position(|&e| e == x);
        let mut rows = Vec::with_capacity(elements.len());
        for (r, &e) in elements.iter().enumerate() {
            let mut row = Vec::with_capacity(elements.len());
            for (c, &f) in elements.iter().enumerate() {
                row.push(
                    pos(self.mul(e, f)).ok_or(BandError::EntryOutOfRange { row: r, column: c })?,
                );
            }
            rows.push(row);
        }
        Band::from_rows(names, rows)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// Whitespace-separated tokens with their 1-based byte column.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = s.as_ptr() as usize;
    s.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - base + 1, t))
}

/// Builds a `rows x cols` rectangular band named row-major by `names`,
/// with `(i, j)(k, l) = (i, l)`.
pub fn rectangular_band(rows: usize, cols: usize, names: &[&str]) -> Result<Band, BandError> {
    assert_eq!(rows * cols, names.len(), "need rows * cols names");
    let table = (0..rows * cols)
        .map(|x| {
            (0..rows * cols)
                .map(|y| (x / cols) * cols + y % cols)
                .collect()
        })
        .collect();
    Band::from_rows(names.iter().map(|s| s.to_string()).collect(), table)
}
