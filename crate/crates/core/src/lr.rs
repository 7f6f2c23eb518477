//! Littlewood–Richardson coefficients by LR-tableau enumeration.
//!
//! `c^ν_{λ,μ}` counts semistandard fillings of the skew shape `ν/λ` with
//! content `μ` whose reverse reading word (right to left, top to bottom) is a
//! lattice word. Cells are filled row by row, left to right. Because rows are
//! weakly increasing, the lattice condition for a row reduces to
//! `above[v] + row[v] <= above[v-1]` for each label `v`, which can be checked
//! every time a cell is placed.

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LrQuery {
    /// ν
    pub outer: Partition,
    /// λ
    pub inner_left: Partition,
    /// μ, the content
    pub inner_right: Partition,
}

impl LrQuery {
    pub fn new(outer: Partition, inner_left: Partition, inner_right: Partition) -> Self {
        Self { outer, inner_left, inner_right }
    }

    fn is_viable(&self) -> bool {
        self.outer.size() == self.inner_left.size() + self.inner_right.size()
            && self.outer.contains(&self.inner_left)
            && self.outer.contains(&self.inner_right)
    }
}

/// `c^{outer}_{inner_left, inner_right}`; zero when the sizes do not add up.
pub fn lr_coefficient(q: &LrQuery) -> u64 {
    if !q.is_viable() {
        return 0;
    }
    let mut search = Search::new(q, false);
    search.fill(0, 0);
    search.count
}

/// Whether `c^{outer}_{inner_left, inner_right} > 0`, stopping at the first
/// LR tableau found.
pub fn lr_positive(q: &LrQuery) -> bool {
    if !q.is_viable() {
        return false;
    }
    let mut search = Search::new(q, true);
    search.fill(0, 0);
    search.count > 0
}

struct Search<'a> {
    outer: &'a Partition,
    inner: &'a Partition,
    content: &'a [usize],
    tab: Vec<Vec<usize>>,
    used: Vec<usize>,
    above: Vec<usize>,
    row: Vec<usize>,
    count: u64,
    stop_at_first: bool,
}

impl<'a> Search<'a> {
    fn new(q: &'a LrQuery, stop_at_first: bool) -> Self {
        let labels = q.inner_right.length();
        Self {
            outer: &q.outer,
            inner: &q.inner_left,
            content: q.inner_right.parts(),
            tab: q.outer.parts().iter().map(|&w| vec![usize::MAX; w]).collect(),
            used: vec![0; labels],
            above: vec![0; labels],
            row: vec![0; labels],
            count: 0,
            stop_at_first,
        }
    }

    fn done(&self) -> bool {
        self.stop_at_first && self.count > 0
    }

    fn fill(&mut self, i: usize, j: usize) {
        if self.done() {
            return;
        }
        if i == self.outer.length() {
            self.count = self.count.checked_add(1).expect("LR coefficient overflowed u64");
            return;
        }
        let start = self.inner.part(i);
        let end = self.outer.part(i);
        let j = j.max(start);
        if j == end {
            // row finished: fold its counts into the rows-above tally
            let saved_above = self.above.clone();
            let saved_row = std::mem::replace(&mut self.row, vec![0; self.content.len()]);
            for (a, r) in self.above.iter_mut().zip(&saved_row) {
                *a += r;
            }
            self.fill(i + 1, 0);
            self.above = saved_above;
            self.row = saved_row;
            return;
        }

        let mut lo = if j > start { self.tab[i][j - 1] } else { 0 };
        if i > 0 && j >= self.inner.part(i - 1) {
            lo = lo.max(self.tab[i - 1][j] + 1);
        }
        // a label v needs at least v rows above it in its column, so v <= i
        let hi = (i + 1).min(self.content.len());
        for v in lo..hi {
            if self.used[v] == self.content[v] {
                continue;
            }
            if v > 0 && self.above[v] + self.row[v] + 1 > self.above[v - 1] {
                continue;
            }
            self.tab[i][j] = v;
            self.used[v] += 1;
            self.row[v] += 1;
            self.fill(i, j + 1);
            self.row[v] -= 1;
            self.used[v] -= 1;
            if self.done() {
                break;
            }
        }
        self.tab[i][j] = usize::MAX;
    }
}
