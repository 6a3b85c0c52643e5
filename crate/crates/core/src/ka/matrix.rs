use super::KaTerm;
use crate::automaton::GsAutomaton;
use crate::error::{Error, Result};

/// Dense row-major matrix of KA terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<KaTerm>,
}

impl KaMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        KaMatrix {
            rows,
            cols,
            entries: vec![KaTerm::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = KaMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, KaTerm::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<KaTerm>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Ok(KaMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &KaTerm {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, t: KaTerm) {
        self.entries[i * self.cols + j] = t;
    }

    pub fn add(&self, other: &KaMatrix) -> Result<KaMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| KaTerm::plus(a, b))
            .collect();
        Ok(KaMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &KaMatrix) -> Result<KaMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = KaMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = KaTerm::zero();
                for k in 0..self.cols {
                    acc = KaTerm::plus(&acc, &KaTerm::times(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> KaMatrix {
        let mut out = KaMatrix::zero(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    fn from_blocks(a: KaMatrix, b: KaMatrix, c: KaMatrix, d: KaMatrix) -> KaMatrix {
        let k = a.rows;
        let n = k + d.rows;
        let mut out = KaMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let t = match (i < k, j < k) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - k),
                    (false, true) => c.get(i - k, j),
                    (false, false) => d.get(i - k, j - k),
                };
                out.set(i, j, t.clone());
            }
        }
        out
    }

    /// `M*`, splitting off a leading block of size `⌈n/2⌉` at every level.
    pub fn star(&self) -> Result<KaMatrix> {
        self.check_square()?;
        Ok(star_default(self))
    }

    /// `M*` using the block formula with a leading `k × k` block at the top
    /// level (recursive stars use the default split). `1 <= k < n`.
    pub fn star_partitioned(&self, k: usize) -> Result<KaMatrix> {
        self.check_square()?;
        if k == 0 || k >= self.rows {
            return Err(Error::Dimension(format!(
                "partition size {k} is not in 1..{} for a {}x{} matrix",
                self.rows, self.rows, self.rows
            )));
        }
        Ok(star_blocks(self, k))
    }

    fn check_square(&self) -> Result<()> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "star of a non-square {}x{} matrix",
                self.rows, self.cols
            )))
        }
    }
}

fn star_default(m: &KaMatrix) -> KaMatrix {
    match m.rows {
        0 => m.clone(),
        1 => KaMatrix {
            rows: 1,
            cols: 1,
            entries: vec![KaTerm::star(m.get(0, 0))],
        },
        2 => {
            let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
            let (t, x) = (KaTerm::times, KaTerm::star);
            let a_star = x(a);
            let d_star = x(d);
            // (a + b d* c)*   and   (d + c a* b)*
            let f = x(&KaTerm::plus(a, &t(&t(b, &d_star), c)));
            let g = x(&KaTerm::plus(d, &t(&t(c, &a_star), b)));
            KaMatrix {
                rows: 2,
                cols: 2,
                entries: vec![f.clone(), t(&t(&f, b), &d_star), t(&t(&g, c), &a_star), g],
            }
        }
        n => star_blocks(m, n.div_ceil(2)),
    }
}

/// `E = [A B; C D]`, `F = A + B D* C`,
/// `E* = [F*, F* B D*; D* C F*, D* + D* C F* B D*]`.
fn star_blocks(m: &KaMatrix, k: usize) -> KaMatrix {
    let n = m.rows;
    let a = m.block(0, k, 0, k);
    let b = m.block(0, k, k, n);
    let c = m.block(k, n, 0, k);
    let d = m.block(k, n, k, n);
    let mul = |x: &KaMatrix, y: &KaMatrix| x.mul(y).expect("block dimensions agree");
    let d_star = star_default(&d);
    let f = a
        .add(&mul(&mul(&b, &d_star), &c))
        .expect("block dimensions agree");
    let f_star = star_default(&f);
    let top_right = mul(&mul(&f_star, &b), &d_star);
    let bottom_left = mul(&mul(&d_star, &c), &f_star);
    let bottom_right = d_star
        .add(&mul(&bottom_left, &mul(&b, &d_star)))
        .expect("block dimensions agree");
    KaMatrix::from_blocks(f_star, top_right, bottom_left, bottom_right)
}

/// `A = Σ_ℓ ℓ·A_ℓ` as a matrix of letter sums.
pub fn transition_matrix(aut: &GsAutomaton) -> KaMatrix {
    let n = aut.n();
    let mut m = KaMatrix::zero(n, n);
    for tr in aut.transitions() {
        let entry = KaTerm::plus(m.get(tr.from, tr.to), &KaTerm::letter(tr.label));
        m.set(tr.from, tr.to, entry);
    }
    m
}

/// The regular expression `uᵀ A* v` accepted by `aut`.
pub fn encode_automaton(aut: &GsAutomaton) -> KaTerm {
    let star = star_default(&transition_matrix(aut));
    let mut acc = KaTerm::zero();
    for &i in aut.starts() {
        for &j in aut.accepts() {
            acc = KaTerm::plus(&acc, star.get(i, j));
        }
    }
    acc
}
