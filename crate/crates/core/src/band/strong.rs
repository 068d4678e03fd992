//! Normal bands assembled from a semilattice of rectangular bands and
//! connecting maps on covering pairs.
//!
//! File format (`#` comments):
//!
//! ```text
//! component alpha: rows=2 cols=2 names=a b c d
//! component beta: rows=1 cols=1 names=v
//! order: alpha > beta
//! phi alpha beta: a->v b->v c->v d->v
//! ```
//!
//! A `phi` line may be omitted when the target component has one element.

use std::collections::BTreeMap;

use super::{decompose, is_valid_name, Band};
use crate::error::{PathConflict, StrongSemilatticeError as SsError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    /// Row-major element names.
    pub names: Vec<String>,
}

impl ComponentSpec {
    fn product(&self, x: usize, y: usize) -> usize {
        (x / self.cols) * self.cols + y % self.cols
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrongSemilatticeSpec {
    pub components: Vec<ComponentSpec>,
    /// `(upper, lower)` component indices.
    pub order: Vec<(usize, usize)>,
    /// `(upper, lower, [(x, xφ)])` for covering pairs.
    pub phi: Vec<(usize, usize, Vec<(String, String)>)>,
}

fn syntax(line: usize, message: impl Into<String>) -> SsError {
    SsError::Syntax {
        line,
        message: message.into(),
    }
}

impl StrongSemilatticeSpec {
    pub fn parse(text: &str) -> Result<Self, SsError> {
        let mut spec = StrongSemilatticeSpec::default();
        let mut pending_order: Vec<(usize, String, String)> = Vec::new();
        let mut pending_phi: Vec<(usize, String, String, Vec<(String, String)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("order:") {
                let (hi, lo) = rest
                    .split_once('>')
                    .ok_or_else(|| syntax(line_no, "expected `order: <upper> > <lower>`"))?;
                pending_order.push((line_no, hi.trim().to_string(), lo.trim().to_string()));
            } else if let Some(rest) = line.strip_prefix("component ") {
                let (name, fields) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line_no, "expected `component <name>: ...`"))?;
                let name = name.trim();
                if !is_valid_name(name) {
                    return Err(syntax(line_no, format!("invalid component name `{name}`")));
                }
                spec.components
                    .push(parse_component(line_no, name, fields)?);
            } else if let Some(rest) = line.strip_prefix("phi ") {
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line_no, "expected `phi <upper> <lower>: x->y ...`"))?;
                let mut parts = head.split_whitespace();
                let (Some(hi), Some(lo), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(syntax(line_no, "expected two component names after `phi`"));
                };
                let mut pairs = Vec::new();
                for tok in body.split_whitespace() {
                    let (x, y) = tok
                        .split_once("->")
                        .ok_or_else(|| syntax(line_no, format!("expected `x->y`, got `{tok}`")))?;
                    pairs.push((x.to_string(), y.to_string()));
                }
                pending_phi.push((line_no, hi.to_string(), lo.to_string(), pairs));
            } else {
                return Err(syntax(line_no, format!("unrecognized line `{line}`")));
            }
        }
        let index = |name: &str| {
            spec.components
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| SsError::UnknownComponent(name.to_string()))
        };
        for (_, hi, lo) in &pending_order {
            spec.order.push((index(hi)?, index(lo)?));
        }
        for (_, hi, lo, pairs) in pending_phi {
            spec.phi.push((index(&hi)?, index(&lo)?, pairs));
        }
        Ok(spec)
    }
}

fn parse_component(line: usize, name: &str, fields: &str) -> Result<ComponentSpec, SsError> {
    let fields = fields.trim();
    let (head, names) = fields
        .split_once("names=")
        .ok_or_else(|| syntax(line, "missing `names=`"))?;
    let mut rows = None;
    let mut cols = None;
    for tok in head.split_whitespace() {
        let parse = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| syntax(line, format!("bad number in `{tok}`")))
        };
        if let Some(v) = tok.strip_prefix("rows=") {
            rows = Some(parse(v)?);
        } else if let Some(v) = tok.strip_prefix("cols=") {
            cols = Some(parse(v)?);
        } else {
            return Err(syntax(line, format!("unexpected `{tok}`")));
        }
    }
    let (Some(rows), Some(cols)) = (rows, cols) else {
        return Err(syntax(line, "component needs rows= and cols="));
    };
    let names: Vec<String> = names.split_whitespace().map(str::to_string).collect();
    if rows == 0 || cols == 0 || names.len() != rows * cols {
        return Err(syntax(
            line,
            format!(
                "component {name} needs {} names, got {}",
                rows * cols,
                names.len()
            ),
        ));
    }
    if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
        return Err(syntax(line, format!("invalid element name `{bad}`")));
    }
    Ok(ComponentSpec {
        name: name.to_string(),
        rows,
        cols,
        names,
    })
}

/// Synthesizes the Cayley table `xy = (xφ_{α,αβ})(yφ_{β,αβ})`.
pub fn build_strong_semilattice(spec: &StrongSemilatticeSpec) -> Result<Band, SsError> {
    let k = spec.components.len();
    if k == 0 {
        return Err(SsError::Band(crate::error::BandError::Empty));
    }
    let cname = |c: usize| spec.components[c].name.clone();

    // Reflexive-transitive closure: leq[lo][hi].
    let mut leq = vec![vec![false; k]; k];
    for (c, row) in leq.iter_mut().enumerate() {
        row[c] = true;
    }
    for &(hi, lo) in &spec.order {
        leq[lo][hi] = true;
    }
    for m in 0..k {
        for i in 0..k {
            if leq[i][m] {
                for j in 0..k {
                    if leq[m][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if leq[i][j] && leq[j][i] {
                return Err(SsError::NotPartialOrder(format!(
                    "{} and {} are mutually below each other",
                    cname(i),
                    cname(j)
                )));
            }
        }
    }

    let mut meet = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let lower: Vec<usize> = (0..k).filter(|&c| leq[c][a] && leq[c][b]).collect();
            let greatest = lower
                .iter()
                .copied()
                .find(|&g| lower.iter().all(|&c| leq[c][g]))
                .ok_or_else(|| SsError::NotMeetSemilattice(cname(a), cname(b)))?;
            meet[a][b] = greatest;
        }
    }

    let covers = |hi: usize, lo: usize| {
        hi != lo && leq[lo][hi] && !(0..k).any(|m| m != hi && m != lo && leq[lo][m] && leq[m][hi])
    };

    // Covering maps as local-index tables.
    let mut cover_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (hi, lo, pairs) in &spec.phi {
        let (hi, lo) = (*hi, *lo);
        let bad = |message: String| SsError::BadMorphism {
            from: cname(hi),
            to: cname(lo),
            message,
        };
        if !covers(hi, lo) {
            return Err(bad("not a covering pair".into()));
        }
        let (src, dst) = (&spec.components[hi], &spec.components[lo]);
        let mut map = vec![usize::MAX; src.names.len()];
        for (x, y) in pairs {
            let xi = src
                .names
                .iter()
                .position(|n| n == x)
                .ok_or_else(|| bad(format!("`{x}` is not in {}", src.name)))?;
            let yi = dst
                .names
                .iter()
                .position(|n| n == y)
                .ok_or_else(|| bad(format!("`{y}` is not in {}", dst.name)))?;
            if map[xi] != usize::MAX && map[xi] != yi {
                return Err(bad(format!("`{x}` mapped twice")));
            }
            map[xi] = yi;
        }
        if let Some(missing) = map.iter().position(|&v| v == usize::MAX) {
            return Err(bad(format!("no image for `{}`", src.names[missing])));
        }
        for x in 0..src.names.len() {
            for y in 0..src.names.len() {
                if map[src.product(x, y)] != dst.product(map[x], map[y]) {
                    return Err(bad(format!(
                        "not a morphism at ({}, {})",
                        src.names[x], src.names[y]
                    )));
                }
            }
        }
        cover_map.insert((hi, lo), map);
    }
    for hi in 0..k {
        for lo in 0..k {
            if covers(hi, lo) && !cover_map.contains_key(&(hi, lo)) {
                let dst = &spec.components[lo];
                if dst.names.len() != 1 {
                    return Err(SsError::BadMorphism {
                        from: cname(hi),
                        to: cname(lo),
                        message: "missing, and the target has more than one element".into(),
                    });
                }
                cover_map.insert((hi, lo), vec![0; spec.components[hi].names.len()]);
            }
        }
    }

    // Composites along every descending chain of covers; all must agree.
    let mut composite: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for hi in 0..k {
        let mut paths: Vec<(Vec<usize>, Vec<usize>)> =
            vec![(vec![hi], (0..spec.components[hi].names.len()).collect())];
        while let Some((path, map)) = paths.pop() {
            let last = *path.last().unwrap();
            match composite.get(&(hi, last)) {
                Some((existing, existing_path)) if *existing != map => {
                    let x = existing.iter().zip(&map).position(|(a, b)| a != b).unwrap();
                    let names_of =
                        |p: &[usize]| p.iter().map(|&c| cname(c)).collect::<Vec<_>>().join(">");
                    let dst = &spec.components[last];
                    return Err(SsError::PathDependence(Box::new(PathConflict {
                        from: cname(hi),
                        to: cname(last),
                        element: spec.components[hi].names[x].clone(),
                        path_a: names_of(existing_path),
                        image_a: dst.names[existing[x]].clone(),
                        path_b: names_of(&path),
                        image_b: dst.names[map[x]].clone(),
                    })));
                }
                Some(_) => {}
                None => {
                    composite.insert((hi, last), (map.clone(), path.clone()));
                }
            }
            for lo in 0..k {
                if let Some(step) = cover_map.get(&(last, lo)) {
                    let next: Vec<usize> = map.iter().map(|&x| step[x]).collect();
                    let mut p = path.clone();
                    p.push(lo);
                    paths.push((p, next));
                }
            }
        }
    }
    let phi = |hi: usize, lo: usize, x: usize| composite[&(hi, lo)].0[x];

    let mut offsets = Vec::with_capacity(k);
    let mut names = Vec::new();
    let mut owner = Vec::new();
    for (c, comp) in spec.components.iter().enumerate() {
        offsets.push(names.len());
        for (i, n) in comp.names.iter().enumerate() {
            if names.contains(n) {
                return Err(syntax(0, format!("element `{n}` declared twice")));
            }
            names.push(n.clone());
            owner.push((c, i));
        }
    }
    let total = names.len();
    let mut rows = vec![vec![0; total]; total];
    for x in 0..total {
        let (a, xi) = owner[x];
        for y in 0..total {
            let (b, yi) = owner[y];
            let m = meet[a][b];
            let local = spec.components[m].product(phi(a, m, xi), phi(b, m, yi));
            rows[x][y] = offsets[m] + local;
        }
    }
    let band = Band::from_rows(names, rows)?;

    let d = decompose(&band);
    if d.num_classes() != k {
        return Err(SsError::Mismatch(format!(
            "{} D-classes for {k} components",
            d.num_classes()
        )));
    }
    for c in 0..k {
        let expected: Vec<usize> =
            (offsets[c]..offsets[c] + spec.components[c].names.len()).collect();
        if d.members(c) != expected.as_slice() {
            return Err(SsError::Mismatch(format!(
                "component {} is not a D-class",
                cname(c)
            )));
        }
        for c2 in 0..k {
            if d.leq(c, c2) != leq[c][c2] {
                return Err(SsError::Mismatch(format!(
                    "order between {} and {} not recovered",
                    cname(c),
                    cname(c2)
                )));
            }
        }
    }
    Ok(band)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::{decompose, structure_morphisms};
    use crate::bundled;

    #[test]
    fn normal10_matches_bundled_table() {
        let spec = StrongSemilatticeSpec::parse(bundled::NORMAL10_SSL).unwrap();
        let built = build_strong_semilattice(&spec).unwrap();
        assert_eq!(built, bundled::band("normal10").unwrap());
    }

    #[test]
    fn normal5_has_ca_equal_b() {
        let spec = StrongSemilatticeSpec::parse(bundled::NORMAL5_SSL).unwrap();
        let b = build_strong_semilattice(&spec).unwrap();
        assert_eq!(b, bundled::band("normal5").unwrap());
        let i = |n: &str| b.index_of(n).unwrap();
        assert_eq!(b.mul(i("c"), i("a")), i("b"));
        assert_eq!(b.mul(i("a"), i("c")), i("c"));
        assert_eq!(b.mul(i("a"), i("d")), i("d"));
    }

    #[test]
    fn single_component_is_rectangular() {
        let spec =
            StrongSemilatticeSpec::parse("component r: rows=2 cols=3 names=a b c d e f\n").unwrap();
        let b = build_strong_semilattice(&spec).unwrap();
        let rect = crate::band::rectangular_band(2, 3, &["a", "b", "c", "d", "e", "f"]).unwrap();
        assert_eq!(b, rect);
    }

    #[test]
    fn path_dependence_is_reported() {
        // Two routes from top to bottom through 2-element middles with
        // maps that disagree at the bottom.
        let text = "\
component t: rows=1 cols=2 names=t1 t2
component l: rows=1 cols=2 names=l1 l2
component r: rows=1 cols=2 names=r1 r2
component m: rows=1 cols=2 names=m1 m2
order: t > l
order: t > r
order: l > m
order: r > m
phi t l: t1->l1 t2->l2
phi t r: t1->r1 t2->r2
phi l m: l1->m1 l2->m2
phi r m: r1->m2 r2->m1
";
        let spec = StrongSemilatticeSpec::parse(text).unwrap();
        let err = build_strong_semilattice(&spec).unwrap_err();
        assert!(matches!(err, SsError::PathDependence(_)), "{err}");
    }

    #[test]
    fn rejects_non_meet_order() {
        let text = "\
component a: rows=1 cols=1 names=a
component b: rows=1 cols=1 names=b
component c: rows=1 cols=1 names=c
component d: rows=1 cols=1 names=d
order: a > c
order: a > d
order: b > c
order: b > d
";
        let spec = StrongSemilatticeSpec::parse(text).unwrap();
        assert!(matches!(
            build_strong_semilattice(&spec),
            Err(SsError::NotMeetSemilattice(..))
        ));
    }

    #[test]
    fn recovers_description_from_table() {
        for text in [bundled::NORMAL10_SSL, bundled::NORMAL5_SSL] {
            let spec = StrongSemilatticeSpec::parse(text).unwrap();
            let b = build_strong_semilattice(&spec).unwrap();
            let d = decompose(&b);
            let m = structure_morphisms(&b, &d).unwrap();
            for (c, comp) in spec.components.iter().enumerate() {
                let names: Vec<&str> = d.members(c).iter().map(|&e| b.name(e)).collect();
                assert_eq!(names, comp.names);
            }
            for &(hi, lo) in &spec.order {
                assert!(d.lt(lo, hi));
            }
            for (hi, lo, pairs) in &spec.phi {
                let graph: Vec<(String, String)> = m
                    .map(&d, *hi, *lo)
                    .unwrap()
                    .into_iter()
                    .map(|(x, y)| (b.name(x).to_string(), b.name(y).to_string()))
                    .collect();
                let mut want = pairs.clone();
                want.sort_by_key(|(x, _)| b.index_of(x));
                assert_eq!(graph, want);
            }
        }
    }
}
