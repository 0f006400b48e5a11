//! Plabic fences, their braids and quivers, and the local moves relating them.

use std::fmt;

use thiserror::Error;

use crate::quiver::Quiver;
use crate::seed::ClusterAutomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FenceError {
    #[error("row {0} outside 1..{1}")]
    Row(usize, usize),
    #[error("column {0} out of range")]
    OutOfRange(usize),
    #[error("no {move_name} pattern at column {site}")]
    Pattern { move_name: &'static str, site: usize },
    #[error("empty fence")]
    Empty,
    #[error("fence is not all white")]
    NotAllWhite,
    #[error("leftmost column is not white")]
    LeftmostNotWhite,
    #[error("braid generator s{0} invalid on {1} strands")]
    Generator(usize, usize),
    #[error("column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// A vertical edge between lines `row` and `row + 1` (rows counted from the
/// bottom, starting at 1). A white edge has its white vertex at the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Column {
    pub row: usize,
    pub color: Color,
}

impl Column {
    pub fn white(row: usize) -> Self {
        Column { row, color: Color::White }
    }

    pub fn black(row: usize) -> Self {
        Column { row, color: Color::Black }
    }

    /// Color of this edge's endpoint on horizontal line `line`.
    fn color_on_line(&self, line: usize) -> Color {
        if line == self.row {
            self.color
        } else {
            self.color.flipped()
        }
    }
}

/// A bounded face: the gap between consecutive columns `left < right` in `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face {
    pub row: usize,
    pub left: usize,
    pub right: usize,
}

/// A positive braid word on `strands` strands; letters are 1-based generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, FenceError> {
        if let Some(&g) = letters.iter().find(|&&g| g == 0 || g >= strands) {
            return Err(FenceError::Generator(g, strands));
        }
        Ok(BraidWord { strands, letters })
    }

    /// `(s1 ... s_{n-1})^n`.
    pub fn full_twist(strands: usize) -> Self {
        let letters = (0..strands).flat_map(|_| 1..strands).collect();
        BraidWord { strands, letters }
    }

    /// Strand permutation: `perm[p]` is where the strand starting at `p` ends (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for &g in &self.letters {
            at.swap(g - 1, g);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    /// Drops a literal trailing full twist, if present.
    pub fn strip_full_twist(&self) -> (BraidWord, bool) {
        let ft = Self::full_twist(self.strands).letters;
        if self.letters.ends_with(&ft) {
            let l = self.letters[..self.letters.len() - ft.len()].to_vec();
            (BraidWord { strands: self.strands, letters: l }, true)
        } else {
            (self.clone(), false)
        }
    }

    /// Parses tokens `s<i>`, `s<i>^<k>` and `D2` (the full twist).
    pub fn parse(s: &str, strands: usize) -> Result<Self, FenceError> {
        let mut letters = Vec::new();
        for (col, tok) in crate::quiver::tokens(s) {
            let err = |msg: &str| FenceError::Parse { col: col + 1, msg: msg.to_string() };
            if tok == "D2" {
                letters.extend(Self::full_twist(strands).letters);
                continue;
            }
            let body = tok.strip_prefix('s').ok_or_else(|| err("expected s<i> or D2"))?;
            let (g, k) = match body.split_once('^') {
                Some((g, k)) => (g, k.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (body, 1),
            };
            let g: usize = g.parse().map_err(|_| err("bad generator"))?;
            if g == 0 || g >= strands {
                return Err(FenceError::Generator(g, strands));
            }
            letters.extend(std::iter::repeat(g).take(k));
        }
        Ok(BraidWord { strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.letters.iter().map(|g| format!("s{g}")).collect();
        write!(f, "{}", t.join(" "))
    }
}

/// Columns on `lines` horizontal lines, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlabicFence {
    lines: usize,
    columns: Vec<Column>,
}

/// Outcome of a local move: the new fence, the face (of the source) whose
/// mutation relates the two seeds, and where every source face went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FenceMove {
    pub fence: PlabicFence,
    pub mutated: Option<usize>,
    pub face_map: Vec<usize>,
}

impl PlabicFence {
    pub fn new(lines: usize, columns: Vec<Column>) -> Result<Self, FenceError> {
        for c in &columns {
            if c.row == 0 || c.row >= lines {
                return Err(FenceError::Row(c.row, lines));
            }
        }
        Ok(PlabicFence { lines, columns })
    }

    /// The all-white fence of a braid word.
    pub fn from_braid(b: &BraidWord) -> Self {
        PlabicFence { lines: b.strands, columns: b.letters.iter().map(|&g| Column::white(g)).collect() }
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn is_all_white(&self) -> bool {
        self.columns.iter().all(|c| c.color == Color::White)
    }

    /// White letters in order, then black letters in reverse order.
    pub fn to_braid(&self) -> BraidWord {
        let mut letters: Vec<usize> = self.columns.iter().filter(|c| c.color == Color::White).map(|c| c.row).collect();
        letters.extend(self.columns.iter().rev().filter(|c| c.color == Color::Black).map(|c| c.row));
        BraidWord { strands: self.lines, letters }
    }

    /// Bounded faces, row-major and left to right.
    pub fn faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for row in 1..self.lines {
            let pos: Vec<usize> = (0..self.columns.len()).filter(|&p| self.columns[p].row == row).collect();
            out.extend(pos.windows(2).map(|w| Face { row, left: w[0], right: w[1] }));
        }
        out
    }

    /// `v<r>` with `r` the 1-based rank of the face by left endpoint.
    pub fn face_labels(&self) -> Vec<String> {
        let faces = self.faces();
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by_key(|&i| faces[i].left);
        let mut labels = vec![String::new(); faces.len()];
        for (r, &i) in order.iter().enumerate() {
            labels[i] = format!("v{}", r + 1);
        }
        labels
    }

    /// One mutable vertex per face.
    ///
    /// A shared vertical edge points from the face on the side of its white
    /// lower vertex; a shared stretch of line between faces in adjacent rows
    /// carries an arrow when its two endpoints differ in color, pointing up
    /// when the right endpoint is white.
    pub fn to_quiver(&self) -> Quiver {
        let faces = self.faces();
        let n = faces.len();
        let mut q = Quiver::new(n, 0);
        for (i, f) in faces.iter().enumerate() {
            for (j, g) in faces.iter().enumerate() {
                if g.row == f.row && g.left == f.right {
                    let (s, t) = if self.columns[f.right].color == Color::White { (i, j) } else { (j, i) };
                    q.add_arrows(s, t, 1).unwrap();
                }
                if g.row == f.row + 1 {
                    let lo = f.left.max(g.left);
                    let hi = f.right.min(g.right);
                    if lo < hi {
                        let line = f.row + 1;
                        let cl = self.columns[lo].color_on_line(line);
                        let cr = self.columns[hi].color_on_line(line);
                        if cl != cr {
                            let (s, t) = if cr == Color::White { (i, j) } else { (j, i) };
                            q.add_arrows(s, t, 1).unwrap();
                        }
                    }
                }
            }
        }
        q.with_labels(self.face_labels()).unwrap()
    }

    fn index_of_face(faces: &[Face], f: Face) -> usize {
        faces.iter().position(|g| *g == f).expect("face exists")
    }

    /// Braid move on columns `site..site+3`: `(i, j, i) -> (j, i, j)` with
    /// `|i - j| = 1` and one color. Equivalent to mutation at the face
    /// bounded by the outer two columns.
    pub fn r3_move(&self, site: usize) -> Result<FenceMove, FenceError> {
        let bad = FenceError::Pattern { move_name: "braid", site };
        if site + 2 >= self.columns.len() {
            return Err(bad);
        }
        let (a, b, c) = (self.columns[site], self.columns[site + 1], self.columns[site + 2]);
        if a.row != c.row || a.row.abs_diff(b.row) != 1 || a.color != b.color || b.color != c.color {
            return Err(bad);
        }
        let (i, j) = (a.row, b.row);
        let (p, q, r) = (site, site + 1, site + 2);
        let mut cols = self.columns.clone();
        cols[p] = Column { row: j, color: a.color };
        cols[q] = Column { row: i, color: a.color };
        cols[r] = Column { row: j, color: a.color };
        let new = PlabicFence { lines: self.lines, columns: cols };
        let old_faces = self.faces();
        let new_faces = new.faces();
        let mut mutated = None;
        let face_map = old_faces
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let (x, y) = (f.left, f.right);
                let t = if f.row == i {
                    if (x, y) == (p, r) {
                        mutated = Some(k);
                        Face { row: j, left: p, right: r }
                    } else if y == p {
                        Face { row: i, left: x, right: q }
                    } else if x == r {
                        Face { row: i, left: q, right: y }
                    } else {
                        *f
                    }
                } else if f.row == j {
                    if y == q {
                        Face { row: j, left: x, right: p }
                    } else if x == q {
                        Face { row: j, left: r, right: y }
                    } else {
                        *f
                    }
                } else {
                    *f
                };
                Self::index_of_face(&new_faces, t)
            })
            .collect();
        Ok(FenceMove { fence: new, mutated, face_map })
    }

    /// Adjacent columns in one row with different colors swap colors;
    /// mutation at the face between them.
    pub fn square_move(&self, site: usize) -> Result<FenceMove, FenceError> {
        let bad = FenceError::Pattern { move_name: "square", site };
        if site + 1 >= self.columns.len() {
            return Err(bad);
        }
        let (a, b) = (self.columns[site], self.columns[site + 1]);
        if a.row != b.row || a.color == b.color {
            return Err(bad);
        }
        let mut cols = self.columns.clone();
        cols[site].color = b.color;
        cols[site + 1].color = a.color;
        let faces = self.faces();
        let k = Self::index_of_face(&faces, Face { row: a.row, left: site, right: site + 1 });
        Ok(FenceMove {
            fence: PlabicFence { lines: self.lines, columns: cols },
            mutated: Some(k),
            face_map: (0..faces.len()).collect(),
        })
    }

    /// Swaps adjacent columns in different rows: allowed when the rows are at
    /// least two apart, or adjacent with different colors. No mutation.
    pub fn slide(&self, site: usize) -> Result<FenceMove, FenceError> {
        let bad = FenceError::Pattern { move_name: "slide", site };
        if site + 1 >= self.columns.len() {
            return Err(bad);
        }
        let (a, b) = (self.columns[site], self.columns[site + 1]);
        let d = a.row.abs_diff(b.row);
        if !(d >= 2 || (d == 1 && a.color != b.color)) {
            return Err(bad);
        }
        let mut cols = self.columns.clone();
        cols.swap(site, site + 1);
        let new = PlabicFence { lines: self.lines, columns: cols };
        let new_faces = new.faces();
        let sw = |x: usize| if x == site { site + 1 } else if x == site + 1 { site } else { x };
        let face_map = self
            .faces()
            .iter()
            .map(|f| Self::index_of_face(&new_faces, Face { row: f.row, left: sw(f.left), right: sw(f.right) }))
            .collect();
        Ok(FenceMove { fence: new, mutated: None, face_map })
    }

    /// Slide when the rows differ, square move when they agree.
    pub fn swap_columns(&self, site: usize) -> Result<FenceMove, FenceError> {
        if site + 1 < self.columns.len() && self.columns[site].row == self.columns[site + 1].row {
            self.square_move(site)
        } else {
            self.slide(site)
        }
    }

    pub fn flip(&self, col: usize) -> Result<PlabicFence, FenceError> {
        if col >= self.columns.len() {
            return Err(FenceError::OutOfRange(col));
        }
        let mut f = self.clone();
        f.columns[col].color = f.columns[col].color.flipped();
        Ok(f)
    }

    /// One cyclic rotation: the leftmost column turns black, travels to the
    /// right end by square moves and slides, and turns white again.
    ///
    /// Target faces are identified with source faces by row-major index.
    pub fn cyclic_rotation(&self) -> Result<(PlabicFence, ClusterAutomorphism), FenceError> {
        let mut w = FenceWalk::new(self);
        w.rotate()?;
        let target = w.fence.clone();
        Ok((target, w.automorphism(&self.to_quiver())))
    }

    /// `m` successive rotations.
    pub fn rotations(&self, m: usize) -> Result<(PlabicFence, ClusterAutomorphism), FenceError> {
        let mut w = FenceWalk::new(self);
        for _ in 0..m {
            w.rotate()?;
        }
        let target = w.fence.clone();
        Ok((target, w.automorphism(&self.to_quiver())))
    }

    /// The rotation by the full braid length, an automorphism of the fence seed.
    pub fn full_cyclic_rotation(&self) -> Result<ClusterAutomorphism, FenceError> {
        let m = self.columns.len();
        self.rotations(m).map(|r| r.1)
    }

    /// The DT sequence: the rightmost white column is flipped to black and
    /// moved left past all remaining white columns, repeatedly. The all-black
    /// result is the mirror of the source (order reversed, colors swapped),
    /// which contributes the final relabeling.
    pub fn dt_sequence(&self) -> Result<ClusterAutomorphism, FenceError> {
        if !self.is_all_white() {
            return Err(FenceError::NotAllWhite);
        }
        let mut w = FenceWalk::new(self);
        let m = self.columns.len();
        for placed in 0..m {
            let mut x = m - 1;
            w.flip(x)?;
            while x > placed {
                w.swap(x - 1)?;
                x -= 1;
            }
        }
        debug_assert!(w.fence.columns.iter().zip(self.columns.iter().rev()).all(|(a, b)| a.row == b.row && a.color == Color::Black));
        // the mirror sends face k of a row to face (count - 1 - k) of the same row
        let faces = self.faces();
        let mirror: Vec<usize> = w
            .fence
            .faces()
            .iter()
            .map(|f| Self::index_of_face(&faces, Face { row: f.row, left: m - 1 - f.right, right: m - 1 - f.left }))
            .collect();
        w.lab = {
            let mut nl = vec![0; w.lab.len()];
            for (f, &s) in w.lab.iter().enumerate() {
                nl[mirror[f]] = s;
            }
            nl
        };
        w.fence = self.clone();
        Ok(w.automorphism(&self.to_quiver()))
    }

    pub fn to_text(&self) -> String {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("{}{}", if c.color == Color::White { "w" } else { "b" }, c.row))
            .collect();
        format!("fence {}\n{}\n", self.lines, cols.join(" "))
    }

    /// Parses `fence <lines>` followed by tokens `w<i>` / `b<i>`.
    pub fn parse(s: &str) -> Result<Self, FenceError> {
        let toks = crate::quiver::tokens(s);
        let err = |col: usize, msg: &str| FenceError::Parse { col: col + 1, msg: msg.to_string() };
        if toks.len() < 2 || toks[0].1 != "fence" {
            return Err(err(0, "expected `fence <lines>`"));
        }
        let lines: usize = toks[1].1.parse().map_err(|_| err(toks[1].0, "bad line count"))?;
        let mut cols = Vec::new();
        for &(c, t) in &toks[2..] {
            let color = match t.as_bytes()[0] {
                b'w' => Color::White,
                b'b' => Color::Black,
                _ => return Err(err(c, "expected w<i> or b<i>")),
            };
            let row: usize = t[1..].parse().map_err(|_| err(c, "bad row"))?;
            cols.push(Column { row, color });
        }
        Self::new(lines, cols)
    }
}

impl fmt::Display for PlabicFence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Follows a sequence of moves while remembering which source face every
/// current face came from; mutations are recorded by source face.
#[derive(Debug, Clone)]
pub struct FenceWalk {
    pub fence: PlabicFence,
    /// `lab[f]` is the source face now at face `f`.
    pub lab: Vec<usize>,
    /// Mutated faces, as source faces.
    pub word: Vec<usize>,
}

impl FenceWalk {
    pub fn new(f: &PlabicFence) -> Self {
        FenceWalk { fence: f.clone(), lab: (0..f.faces().len()).collect(), word: vec![] }
    }

    fn take(&mut self, mv: FenceMove) {
        if let Some(k) = mv.mutated {
            self.word.push(self.lab[k]);
        }
        let mut nl = vec![0; self.lab.len()];
        for (k, &t) in mv.face_map.iter().enumerate() {
            nl[t] = self.lab[k];
        }
        self.lab = nl;
        self.fence = mv.fence;
    }

    pub fn swap(&mut self, site: usize) -> Result<(), FenceError> {
        let mv = self.fence.swap_columns(site)?;
        self.take(mv);
        Ok(())
    }

    pub fn r3(&mut self, site: usize) -> Result<(), FenceError> {
        let mv = self.fence.r3_move(site)?;
        self.take(mv);
        Ok(())
    }

    pub fn flip(&mut self, col: usize) -> Result<(), FenceError> {
        self.fence = self.fence.flip(col)?;
        Ok(())
    }

    /// One cyclic rotation of the current fence.
    pub fn rotate(&mut self) -> Result<(), FenceError> {
        let m = self.fence.columns.len();
        if m == 0 {
            return Err(FenceError::Empty);
        }
        if self.fence.columns[0].color != Color::White {
            return Err(FenceError::LeftmostNotWhite);
        }
        self.flip(0)?;
        for x in 0..m - 1 {
            self.swap(x)?;
        }
        self.flip(m - 1)
    }

    /// Moves column `x` to the left by slides past far rows and braid moves
    /// through doubled neighbours; returns where it stopped.
    pub fn move_left(&mut self, mut x: usize) -> usize {
        while x > 0 {
            let cols = &self.fence.columns;
            let (rc, ry) = (cols[x].row, cols[x - 1].row);
            if rc.abs_diff(ry) >= 2 {
                self.swap(x - 1).expect("slide");
                x -= 1;
            } else if x >= 2 && cols[x - 2].row == rc && ry.abs_diff(rc) == 1 && self.fence.r3_move(x - 2).is_ok() {
                self.r3(x - 2).expect("braid move");
                x -= 2;
            } else {
                break;
            }
        }
        x
    }

    /// The recorded word and face relabeling, named by `q`'s labels (faces
    /// of the current fence are identified with source faces by index).
    pub fn automorphism(&self, q: &Quiver) -> ClusterAutomorphism {
        let mut perm = vec![0; self.lab.len()];
        for (f, &s) in self.lab.iter().enumerate() {
            perm[s] = f;
        }
        ClusterAutomorphism::from_indices(q, &self.word, &perm)
    }
}
