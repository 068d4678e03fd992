use super::{Band, Elem};

/// Index of a D-class (a component of the structure semilattice).
pub type ClassId = usize;

/// The band as a semilattice `Y` of rectangular bands `B_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClassDecomposition {
    class_of: Vec<ClassId>,
    classes: Vec<Vec<Elem>>,
    meet: Vec<Vec<ClassId>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// D-classes as the equivalence generated by `L ∪ R`, with the induced
/// meet on classes. Class ids follow first appearance in declaration order.
pub fn decompose(b: &Band) -> DClassDecomposition {
    let n = b.len();
    let mut uf = UnionFind((0..n).collect());
    for e in 0..n {
        for f in (e + 1)..n {
            if b.l_related(e, f) || b.r_related(e, f) {
                uf.union(e, f);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for e in 0..n {
        let r = uf.find(e);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[e] = root_class[r];
        classes[root_class[r]].push(e);
    }

    let k = classes.len();
    let mut meet = vec![vec![0; k]; k];
    for a in 0..k {
        for c in 0..k {
            let m = class_of[b.mul(classes[a][0], classes[c][0])];
            // Representative independence: B_α B_β ⊆ B_{αβ}.
            for &x in &classes[a] {
                for &y in &classes[c] {
                    assert_eq!(
                        class_of[b.mul(x, y)],
                        m,
                        "D-classes are not a congruence; the table is not a band"
                    );
                }
            }
            meet[a][c] = m;
        }
    }
    DClassDecomposition {
        class_of,
        classes,
        meet,
    }
}

impl DClassDecomposition {
    pub fn class_of(&self, e: Elem) -> ClassId {
        self.class_of[e]
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn members(&self, c: ClassId) -> &[Elem] {
        &self.classes[c]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn meet(&self, a: ClassId, b: ClassId) -> ClassId {
        self.meet[a][b]
    }

    /// `α ≤ β` in the structure semilattice.
    pub fn leq(&self, a: ClassId, b: ClassId) -> bool {
        self.meet[a][b] == a
    }

    pub fn lt(&self, a: ClassId, b: ClassId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ClassId, b: ClassId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Classes of the letters of a word.
    pub fn project(&self, letters: &[Elem]) -> Vec<ClassId> {
        letters.iter().map(|&x| self.class_of[x]).collect()
    }

    /// Display label of a class, e.g. `{e,f,g,h}`.
    pub fn label(&self, b: &Band, c: ClassId) -> String {
        let names: Vec<&str> = self.classes[c].iter().map(|&e| b.name(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Short name used for the class as a generator of `IG(Y)`.
    pub fn class_name(c: ClassId) -> String {
        format!("D{c}")
    }

    /// The structure semilattice `Y` as a band in its own right, with
    /// elements `D0, D1, ...` in class-id order.
    pub fn semilattice_band(&self) -> Band {
        let names = (0..self.num_classes()).map(Self::class_name).collect();
        Band::from_rows(names, self.meet.clone()).expect("a meet table is a band")
    }

    /// Rows (R-classes) and columns (L-classes) of a class, as an egg-box
    /// grid: `grid[i][j]` is the unique element in row `i` and column `j`.
    pub fn eggbox(&self, b: &Band, c: ClassId) -> Vec<Vec<Elem>> {
        let members = &self.classes[c];
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for &e in members {
            match rows.iter_mut().find(|r| b.r_related(r[0], e)) {
                Some(r) => r.push(e),
                None => rows.push(vec![e]),
            }
        }
        // Align columns by L-class of the first row.
        let first = rows[0].clone();
        rows.iter()
            .map(|r| {
                first
                    .iter()
                    .map(|&col| {
                        *r.iter()
                            .find(|&&x| b.l_related(x, col))
                            .expect("rectangular class")
                    })
                    .collect()
            })
            .collect()
    }
}
