use super::words::{inverse, word_cmp, Configuration, Letter, SDWord, WordClass};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{Field, Matrix};
use crate::rep_mod::MatrixModule;
use serde::Serialize;
use std::cmp::Ordering;

/// lambda = omega, mu = omega^2 in GF(4); lambda - mu = 1.
pub const LAMBDA: u8 = 2;
pub const MU: u8 = 3;

pub fn gf4() -> Field {
    Field::new(4).expect("GF(4) exists")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Loop {
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    V,
    Image(Loop),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeLabel {
    Plain,
    X,
    Iota(Loop),
    Idem(Loop),
    Mu,
    LambdaOverDiff,
    OneOverDiff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub is_a: bool,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExpandedQuiver {
    pub vertices: Vec<Space>,
    pub edges: Vec<Edge>,
}

impl ExpandedQuiver {
    fn vertex(&mut self, s: Space) -> usize {
        self.vertices.push(s);
        self.vertices.len() - 1
    }

    fn edge(&mut self, src: usize, dst: usize, is_a: bool, label: EdgeLabel) {
        self.edges.push(Edge { src, dst, is_a, label });
    }

    /// Path src -> ... -> dst through fresh vertices, with labels a/b alternating from `first_a`.
    fn chain(&mut self, src: usize, dst: usize, edges: usize, first_a: bool, space: Space) {
        let mut cur = src;
        for k in 0..edges {
            let next = if k + 1 == edges { dst } else { self.vertex(space) };
            self.edge(cur, next, first_a == (k % 2 == 0), EdgeLabel::Plain);
            cur = next;
        }
    }

    pub fn count(&self, s: Space) -> usize {
        self.vertices.iter().filter(|&&v| v == s).count()
    }

    /// Edge for letter c between u and v, `toward_u` giving the orientation.
    fn letter(&mut self, c: Letter, u: usize, v: usize, toward_u: bool, ell: usize) {
        let (src, dst) = if toward_u { (v, u) } else { (u, v) };
        match c {
            Letter::B(_) => self.edge(src, dst, false, EdgeLabel::Plain),
            Letter::A(i) if i.abs() <= 1 && i != 0 => self.edge(src, dst, true, EdgeLabel::Plain),
            Letter::A(i) if i != 0 => self.chain(src, dst, 2 * i.unsigned_abs() as usize - 1, true, Space::V),
            Letter::A(_) => {
                // a_0 gadget: top -> left (1), top -> right (mu), left/right -> bottom, chain top .. bottom
                let (left, right) = (dst, src);
                let top = self.vertex(Space::V);
                let mut inner = vec![top];
                for _ in 1..2 * ell + 2 {
                    inner.push(self.vertex(Space::V));
                }
                let bottom = *inner.last().unwrap();
                for k in 0..inner.len() - 1 {
                    self.edge(inner[k], inner[k + 1], k % 2 == 1, EdgeLabel::Plain);
                }
                self.edge(top, left, true, EdgeLabel::Plain);
                self.edge(top, right, true, EdgeLabel::Mu);
                self.edge(left, bottom, true, EdgeLabel::LambdaOverDiff);
                self.edge(right, bottom, true, EdgeLabel::OneOverDiff);
            }
        }
    }

    /// e (or f) gadget at v: I_1 -> v by inclusion, v -> I_last by the idempotent, chain b a ... b.
    fn idempotent_gadget(&mut self, v: usize, l: Loop, ell: usize) {
        let space = Space::Image(l);
        let first = self.vertex(space);
        let last = self.vertex(space);
        self.chain_between(first, last, 2 * ell + 1, space);
        self.edge(first, v, true, EdgeLabel::Iota(l));
        self.edge(v, last, true, EdgeLabel::Idem(l));
    }

    fn chain_between(&mut self, first: usize, last: usize, edges: usize, space: Space) {
        self.chain(first, last, edges, false, space);
    }
}

/// Orientation of the edge for letter w[i] in a linear reading: toward the left vertex?
fn toward_left(c: Letter, left: &[Letter], right: &[Letter]) -> bool {
    match c.index().cmp(&0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => word_cmp(left, right) != Ordering::Less,
    }
}

fn band_sides(w: &[Letter], i: usize) -> (Vec<Letter>, Vec<Letter>) {
    let left: Vec<Letter> = inverse(&w[..i]).into_iter().chain(inverse(&w[i + 1..])).collect();
    let right: Vec<Letter> = w[i + 1..].iter().chain(&w[..i]).copied().collect();
    (left, right)
}

/// Rotate (and possibly invert) a band so that it starts with b_1.
pub fn band_start(w: &[Letter]) -> Vec<Letter> {
    let inv = inverse(w);
    super::words::rotations(w)
        .chain(super::words::rotations(&inv))
        .filter(|r| r[0] == Letter::B(1))
        .min()
        .expect("bands contain b-letters")
}

/// Preliminary quiver of a configuration, expanded with the a_i, a_0 and e/f gadgets.
pub fn expand(config: &Configuration) -> ExpandedQuiver {
    let ell = config.word.ell;
    let mut q = ExpandedQuiver::default();
    match config.class {
        WordClass::AsymString => {
            let w = &config.word.letters;
            let vs: Vec<usize> = (0..=w.len()).map(|_| q.vertex(Space::V)).collect();
            for (i, &c) in w.iter().enumerate() {
                let t = toward_left(c, &inverse(&w[..i]), &w[i + 1..]);
                q.letter(c, vs[i], vs[i + 1], t, ell);
            }
        }
        WordClass::SymString => {
            let z = &config.spine;
            let vs: Vec<usize> = (0..=z.len()).map(|_| q.vertex(Space::V)).collect();
            for (i, &c) in z.iter().enumerate() {
                let right: Vec<Letter> =
                    z[i + 1..].iter().copied().chain([Letter::A(0)]).chain(inverse(z)).collect();
                let t = toward_left(c, &inverse(&z[..i]), &right);
                q.letter(c, vs[i], vs[i + 1], t, ell);
            }
            q.idempotent_gadget(vs[z.len()], Loop::E, ell);
        }
        WordClass::AsymBand => {
            let w = band_start(&config.word.letters);
            let n = w.len();
            let vs: Vec<usize> = (0..n).map(|_| q.vertex(Space::V)).collect();
            for (i, &c) in w.iter().enumerate() {
                let (u, v) = (vs[i], vs[(i + 1) % n]);
                if i == 0 {
                    q.edge(v, u, false, EdgeLabel::X);
                    continue;
                }
                let (left, right) = band_sides(&w, i);
                q.letter(c, u, v, toward_left(c, &left, &right), ell);
            }
        }
        WordClass::SymBand => {
            let z = &config.spine;
            let w = &config.word.letters;
            let vs: Vec<usize> = (0..=z.len()).map(|_| q.vertex(Space::V)).collect();
            for (i, &c) in z.iter().enumerate() {
                let (left, right) = band_sides(w, i);
                q.letter(c, vs[i], vs[i + 1], toward_left(c, &left, &right), ell);
            }
            q.idempotent_gadget(vs[0], Loop::F, ell);
            q.idempotent_gadget(vs[z.len()], Loop::E, ell);
        }
        WordClass::Invalid(_) => {}
    }
    q
}

/// Module of the auxiliary algebra attached to a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuxChoice {
    /// The one-dimensional space (asymmetric strings).
    Field,
    /// One-dimensional space with e acting as identity or 0 (symmetric strings).
    Idempotent { e: bool },
    /// Jordan block of size `dim` with nonzero eigenvalue (asymmetric bands).
    Jordan { dim: usize, eigenvalue: u8 },
    /// Pair of idempotents, an indecomposable of the four-subspace type (symmetric bands).
    Idempotents { e: Vec<Vec<u8>>, f: Vec<Vec<u8>> },
}

impl AuxChoice {
    pub fn dim(&self) -> usize {
        match self {
            AuxChoice::Field | AuxChoice::Idempotent { .. } => 1,
            AuxChoice::Jordan { dim, .. } => *dim,
            AuxChoice::Idempotents { e, .. } => e.len(),
        }
    }

    pub fn legal_for(&self, class: &WordClass) -> bool {
        matches!(
            (self, class),
            (AuxChoice::Field, WordClass::AsymString)
                | (AuxChoice::Idempotent { .. }, WordClass::SymString)
                | (AuxChoice::Jordan { .. }, WordClass::AsymBand)
                | (AuxChoice::Idempotents { .. }, WordClass::SymBand)
        )
    }

    fn idempotent(&self, l: Loop) -> Matrix {
        let f = gf4();
        match (self, l) {
            (AuxChoice::Idempotent { e }, Loop::E) => Matrix::scalar(f, 1, *e as u8),
            (AuxChoice::Idempotents { e, .. }, Loop::E) => Matrix::from_rows(f, e),
            (AuxChoice::Idempotents { f: m, .. }, Loop::F) => Matrix::from_rows(f, m),
            _ => Matrix::zeros(f, self.dim(), self.dim()),
        }
    }

    fn x(&self) -> Matrix {
        let f = gf4();
        match self {
            AuxChoice::Jordan { dim, eigenvalue } => {
                let mut j = Matrix::scalar(f, *dim, *eigenvalue);
                for r in 0..dim.saturating_sub(1) {
                    j.set(r, r + 1, 1);
                }
                j
            }
            _ => Matrix::identity(f, self.dim()),
        }
    }
}

/// Idempotent e = B P with B the pivot columns of e and P the nonzero rows of rref(e).
fn rank_factor(e: &Matrix) -> (Matrix, Matrix) {
    let (r, pivots) = e.rref();
    let k = pivots.len();
    let cols: Vec<Vec<u8>> = pivots.iter().map(|&c| e.col(c)).collect();
    let b = if k == 0 { Matrix::zeros(e.field, e.rows, 0) } else { Matrix::from_cols(e.field, e.rows, &cols) };
    let p = r.submatrix(0, 0, k, e.cols);
    (b, p)
}

fn matrix_rows<S: serde::Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.rows))?;
    for r in 0..m.rows {
        seq.serialize_element(m.row(r))?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct SDModule {
    pub dim: usize,
    #[serde(serialize_with = "matrix_rows")]
    pub a: Matrix,
    #[serde(serialize_with = "matrix_rows")]
    pub b: Matrix,
    pub word: SDWord,
    pub class: WordClass,
    pub aux: AuxChoice,
}

impl SDModule {
    pub fn module(&self) -> MatrixModule {
        MatrixModule { field: self.a.field, dim: self.dim, gens: vec![self.a.clone(), self.b.clone()] }
    }
}

/// First failing relation among a^3 = 0, b^2 = 0, a^2 = (ba)^l b.
pub fn relation_violation(a: &Matrix, b: &Matrix, ell: usize) -> Option<&'static str> {
    let a2 = a.mul(a);
    if !a2.mul(a).is_zero() {
        return Some("a^3 != 0");
    }
    if !b.mul(b).is_zero() {
        return Some("b^2 != 0");
    }
    if b.mul(a).pow(ell as u64).mul(b) != a2 {
        return Some("a^2 != (ba)^l b");
    }
    None
}

/// Module dimension without materializing.
pub fn module_dim(q: &ExpandedQuiver, aux: &AuxChoice) -> usize {
    let k = aux.dim();
    let re = aux.idempotent(Loop::E).rank();
    let rf = aux.idempotent(Loop::F).rank();
    q.count(Space::V) * k + q.count(Space::Image(Loop::E)) * re + q.count(Space::Image(Loop::F)) * rf
}

pub fn materialize(config: &Configuration, q: &ExpandedQuiver, aux: &AuxChoice) -> Result<SDModule> {
    if !aux.legal_for(&config.class) {
        return Err(GpiError::Invalid(format!("auxiliary choice {aux:?} is not legal for {}", config.class.name())));
    }
    let field = gf4();
    let k = aux.dim();
    let (be, pe) = rank_factor(&aux.idempotent(Loop::E));
    let (bf, pf) = rank_factor(&aux.idempotent(Loop::F));
    let dims: Vec<usize> = q
        .vertices
        .iter()
        .map(|s| match s {
            Space::V => k,
            Space::Image(Loop::E) => be.cols,
            Space::Image(Loop::F) => bf.cols,
        })
        .collect();
    let mut offset = vec![0usize; dims.len() + 1];
    for (i, d) in dims.iter().enumerate() {
        offset[i + 1] = offset[i] + d;
    }
    let n = offset[dims.len()];
    let mut a = Matrix::zeros(field, n, n);
    let mut b = Matrix::zeros(field, n, n);
    let lambda_over = field.mul(LAMBDA, field.inv(field.sub(LAMBDA, MU)).expect("lambda != mu"));
    let one_over = field.inv(field.sub(LAMBDA, MU)).expect("lambda != mu");
    for e in &q.edges {
        let (ds, dd) = (dims[e.src], dims[e.dst]);
        let block = match e.label {
            EdgeLabel::Plain => Matrix::identity(field, ds),
            EdgeLabel::X => aux.x(),
            EdgeLabel::Iota(Loop::E) => be.clone(),
            EdgeLabel::Iota(Loop::F) => bf.clone(),
            EdgeLabel::Idem(Loop::E) => pe.clone(),
            EdgeLabel::Idem(Loop::F) => pf.clone(),
            EdgeLabel::Mu => Matrix::scalar(field, ds, MU),
            EdgeLabel::LambdaOverDiff => Matrix::scalar(field, ds, lambda_over),
            EdgeLabel::OneOverDiff => Matrix::scalar(field, ds, one_over),
        };
        debug_assert_eq!((block.rows, block.cols), (dd, ds));
        let target = if e.is_a { &mut a } else { &mut b };
        for r in 0..dd {
            for c in 0..ds {
                let cur = target.get(offset[e.dst] + r, offset[e.src] + c);
                target.set(offset[e.dst] + r, offset[e.src] + c, field.add(cur, block.get(r, c)));
            }
        }
    }
    if let Some(bad) = relation_violation(&a, &b, config.word.ell) {
        return Err(GpiError::Verification(format!(
            "module for {} [{}] with {aux:?} fails {bad}",
            super::words::word_string(&config.word.letters),
            config.class.name()
        )));
    }
    Ok(SDModule { dim: n, a, b, word: config.word.clone(), class: config.class.clone(), aux: aux.clone() })
}

/// Build the module of a word with a given class and auxiliary choice.
pub fn build_module(word: &SDWord, class: &WordClass, aux: &AuxChoice) -> Result<SDModule> {
    let found = super::words::classify_word(word);
    if &found != class {
        return Err(GpiError::Invalid(format!("word classifies as {}, not {}", found.name(), class.name())));
    }
    let w = &word.letters;
    let spine = match class {
        WordClass::SymString => w[..w.len() / 2].to_vec(),
        WordClass::SymBand => {
            // rotate to z a_0 z^-1 a_0
            let n = w.len();
            (0..n)
                .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
                .find_map(|rot| {
                    let h = n / 2 - 1;
                    let z = rot[..h].to_vec();
                    let ok = rot[h] == Letter::A(0) && rot[n - 1] == Letter::A(0) && rot[h + 1..n - 1] == inverse(&z)[..];
                    ok.then_some(z)
                })
                .ok_or_else(|| GpiError::Invalid("symmetric band has no z a0 z^-1 a0 rotation".into()))?
        }
        _ => w.clone(),
    };
    let config = Configuration {
        word: if *class == WordClass::SymBand {
            SDWord::band(word.ell, spine.iter().copied().chain([Letter::A(0)]).chain(inverse(&spine)).chain([Letter::A(0)]).collect())
        } else {
            word.clone()
        },
        class: class.clone(),
        spine,
    };
    materialize(&config, &expand(&config), aux)
}
