//! Algebras, coalgebras, bialgebras, comodules and operators given by
//! structure constants, with their axiom checks.

use crate::error::{Error, Result};
use crate::linalg::{einsum, rank, Tensor};
use crate::report::CheckReport;
use crate::scalar::Scalar;

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

fn check_labels(labels: Option<Vec<String>>, n: usize) -> Result<Vec<String>> {
    match labels {
        None => Ok(default_labels(n)),
        Some(l) if l.len() == n => Ok(l),
        Some(l) => Err(Error::shape(format!("{} basis labels for dimension {n}", l.len()))),
    }
}

pub(crate) fn expect_shape(t: &Tensor, shape: &[usize], what: &str) -> Result<()> {
    if t.shape() != shape {
        return Err(Error::shape(format!(
            "{what} has shape {:?}, expected {shape:?}",
            t.shape()
        )));
    }
    Ok(())
}

/// Associative, not necessarily unital algebra. `mul[k][i][j]` is the
/// coefficient of e_k in e_i·e_j.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    mul: Tensor,
    unit: Option<Tensor>,
    labels: Vec<String>,
}

impl Algebra {
    pub fn new(mul: Tensor, unit: Option<Tensor>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mul.shape().first().copied().unwrap_or(0);
        expect_shape(&mul, &[n, n, n], "multiplication")?;
        if let Some(u) = &unit {
            expect_shape(u, &[n], "unit")?;
        }
        Ok(Algebra {
            mul,
            unit,
            labels: check_labels(labels, n)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.mul.shape()[0]
    }

    pub fn mul(&self) -> &Tensor {
        &self.mul
    }

    pub fn unit(&self) -> Option<&Tensor> {
        self.unit.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Coassociative, not necessarily counital coalgebra. `comul[j][k][i]` is
/// the coefficient of e_j⊗e_k in Δ(e_i).
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra {
    comul: Tensor,
    counit: Option<Tensor>,
    labels: Vec<String>,
}

impl Coalgebra {
    pub fn new(comul: Tensor, counit: Option<Tensor>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = comul.shape().first().copied().unwrap_or(0);
        expect_shape(&comul, &[n, n, n], "comultiplication")?;
        if let Some(e) = &counit {
            expect_shape(e, &[n], "counit")?;
        }
        Ok(Coalgebra {
            comul,
            counit,
            labels: check_labels(labels, n)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.comul.shape()[0]
    }

    pub fn comul(&self) -> &Tensor {
        &self.comul
    }

    pub fn counit(&self) -> Option<&Tensor> {
        self.counit.as_ref()
    }

    pub fn require_counit(&self) -> Result<&Tensor> {
        self.counit.as_ref().ok_or(Error::MissingCounit)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn without_counit(&self) -> Coalgebra {
        Coalgebra {
            counit: None,
            ..self.clone()
        }
    }

    /// The co-opposite coalgebra, Δ^cop = flip∘Δ.
    pub fn cop(&self) -> Coalgebra {
        Coalgebra {
            comul: self.comul.permute_legs(&[1, 0, 2]).expect("rank-3"),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bialgebra {
    alg: Algebra,
    coalg: Coalgebra,
}

impl Bialgebra {
    pub fn new(alg: Algebra, coalg: Coalgebra) -> Result<Self> {
        if alg.dim() != coalg.dim() {
            return Err(Error::shape(format!(
                "algebra of dimension {} with coalgebra of dimension {}",
                alg.dim(),
                coalg.dim()
            )));
        }
        Ok(Bialgebra { alg, coalg })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalg
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Comodule over a coalgebra. Left coaction `[a][m'][m]` (M → C⊗M), right
/// coaction `[m'][a][m]` (M → M⊗C).
#[derive(Clone, Debug, PartialEq)]
pub struct Comodule {
    side: Side,
    over: Coalgebra,
    coaction: Tensor,
}

impl Comodule {
    pub fn new(side: Side, over: Coalgebra, coaction: Tensor) -> Result<Self> {
        let n = over.dim();
        let m = coaction.shape().last().copied().unwrap_or(0);
        let shape = match side {
            Side::Left => [n, m, m],
            Side::Right => [m, n, m],
        };
        expect_shape(&coaction, &shape, "coaction")?;
        Ok(Comodule { side, over, coaction })
    }

    /// C as a comodule over itself via Δ.
    pub fn regular(c: &Coalgebra, side: Side) -> Comodule {
        Comodule {
            side,
            over: c.clone(),
            coaction: c.comul().clone(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn over(&self) -> &Coalgebra {
        &self.over
    }

    pub fn coaction(&self) -> &Tensor {
        &self.coaction
    }

    pub fn dim(&self) -> usize {
        self.coaction.shape()[2]
    }
}

/// Endomorphism in column convention: `mat[i][j]` is the coefficient of e_i
/// in Op(e_j).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOp {
    mat: Tensor,
}

impl LinearOp {
    pub fn new(mat: Tensor) -> Result<Self> {
        let n = mat.shape().first().copied().unwrap_or(0);
        expect_shape(&mat, &[n, n], "operator")?;
        Ok(LinearOp { mat })
    }

    pub fn zero(n: usize) -> Self {
        LinearOp {
            mat: Tensor::zeros(&[n, n]),
        }
    }

    pub fn identity(n: usize) -> Self {
        LinearOp {
            mat: Tensor::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.shape()[0]
    }

    pub fn mat(&self) -> &Tensor {
        &self.mat
    }

    pub fn add(&self, other: &LinearOp) -> Result<LinearOp> {
        LinearOp::new(self.mat.add(&other.mat)?)
    }

    pub fn sub(&self, other: &LinearOp) -> Result<LinearOp> {
        LinearOp::new(self.mat.sub(&other.mat)?)
    }

    pub fn scale(&self, k: &Scalar) -> LinearOp {
        LinearOp {
            mat: self.mat.scale(k),
        }
    }

    /// `self + k·id`.
    pub fn shift(&self, k: &Scalar) -> LinearOp {
        LinearOp {
            mat: self
                .mat
                .add(&Tensor::identity(self.dim()).scale(k))
                .expect("square"),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOp) -> Result<LinearOp> {
        LinearOp::new(einsum("ij,jk->ik", &[&self.mat, &other.mat])?)
    }
}

/// `mat[i][j] = σ(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    mat: Tensor,
}

impl BilinearForm {
    pub fn new(mat: Tensor) -> Result<Self> {
        let n = mat.shape().first().copied().unwrap_or(0);
        expect_shape(&mat, &[n, n], "bilinear form")?;
        Ok(BilinearForm { mat })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm {
            mat: Tensor::zeros(&[n, n]),
        }
    }

    /// `(ξ⊗ζ)(c, d) = ξ(c)ζ(d)`.
    pub fn product(xi: &Tensor, zeta: &Tensor) -> Result<Self> {
        BilinearForm::new(xi.outer(zeta))
    }

    pub fn dim(&self) -> usize {
        self.mat.shape()[0]
    }

    pub fn mat(&self) -> &Tensor {
        &self.mat
    }

    pub fn add(&self, other: &BilinearForm) -> Result<BilinearForm> {
        BilinearForm::new(self.mat.add(&other.mat)?)
    }

    pub fn sub(&self, other: &BilinearForm) -> Result<BilinearForm> {
        BilinearForm::new(self.mat.sub(&other.mat)?)
    }

    pub fn scale(&self, k: &Scalar) -> BilinearForm {
        BilinearForm {
            mat: self.mat.scale(k),
        }
    }
}

pub(crate) fn same_dim(n: usize, ops: &[usize]) -> Result<()> {
    if ops.iter().any(|&m| m != n) {
        return Err(Error::shape(format!("operator dimensions {ops:?} on a carrier of dimension {n}")));
    }
    Ok(())
}

// ---- compositions used throughout ---------------------------------------

/// `(A⊗B)∘Δ∘P`, with `None` standing for the identity. Legs `[a][b][i]`.
pub(crate) fn sandwich(
    delta: &Tensor,
    left: Option<&Tensor>,
    right: Option<&Tensor>,
    pre: Option<&Tensor>,
) -> Tensor {
    let mut t = match pre {
        Some(p) => einsum("abz,zi->abi", &[delta, p]).expect("shapes checked by caller"),
        None => delta.clone(),
    };
    if let Some(a) = left {
        t = t.op_on_leg(a, 0).expect("shapes checked by caller");
    }
    if let Some(b) = right {
        t = t.op_on_leg(b, 1).expect("shapes checked by caller");
    }
    t
}

/// `P∘μ∘(A⊗B)`. Legs `[k][i][j]`.
pub(crate) fn sandwich_mul(
    mul: &Tensor,
    post: Option<&Tensor>,
    left: Option<&Tensor>,
    right: Option<&Tensor>,
) -> Tensor {
    let mut t = match post {
        Some(p) => einsum("kz,zij->kij", &[p, mul]).expect("shapes checked by caller"),
        None => mul.clone(),
    };
    if let Some(a) = left {
        t = einsum("kxj,xi->kij", &[&t, a]).expect("shapes checked by caller");
    }
    if let Some(b) = right {
        t = einsum("kiy,yj->kij", &[&t, b]).expect("shapes checked by caller");
    }
    t
}

/// `(Δ⊗id)Δ`, legs `[a][b][c][i]`.
pub(crate) fn delta_left(delta: &Tensor) -> Tensor {
    einsum("abx,xci->abci", &[delta, delta]).expect("square")
}

/// `(id⊗Δ)Δ`, legs `[a][b][c][i]`.
pub(crate) fn delta_right(delta: &Tensor) -> Tensor {
    einsum("axi,bcx->abci", &[delta, delta]).expect("square")
}

// ---- checks --------------------------------------------------------------

/// μ∘(μ⊗id) = μ∘(id⊗μ); failures are indexed `(out, i, j, k)` for
/// (e_i e_j) e_k. Unit laws are added when a unit is present.
pub fn check_associativity(a: &Algebra) -> CheckReport {
    let mut r = CheckReport::new("associativity");
    let mu = a.mul();
    let lhs = einsum("oxk,xij->oijk", &[mu, mu]).expect("square");
    let rhs = einsum("oix,xjk->oijk", &[mu, mu]).expect("square");
    r.equation("(ab)c = a(bc)", &lhs, &rhs);
    if a.unit().is_some() {
        unit_laws(&mut r, a);
    }
    r
}

fn unit_laws(r: &mut CheckReport, a: &Algebra) {
    let u = a.unit().expect("caller checked");
    let id = Tensor::identity(a.dim());
    r.equation("1·x = x", &einsum("kij,i->kj", &[a.mul(), u]).expect("square"), &id);
    r.equation("x·1 = x", &einsum("kij,j->ki", &[a.mul(), u]).expect("square"), &id);
}

fn counit_laws(r: &mut CheckReport, c: &Coalgebra) {
    let e = c.counit().expect("caller checked");
    let id = Tensor::identity(c.dim());
    r.equation("(ε⊗id)Δ = id", &einsum("jki,j->ki", &[c.comul(), e]).expect("square"), &id);
    r.equation("(id⊗ε)Δ = id", &einsum("jki,k->ji", &[c.comul(), e]).expect("square"), &id);
}

/// (Δ⊗id)Δ = (id⊗Δ)Δ; failures indexed `(a, b, c, i)` for the coefficient
/// of e_a⊗e_b⊗e_c in the image of e_i. Counit laws are added when present.
pub fn check_coassociativity(c: &Coalgebra) -> CheckReport {
    let mut r = CheckReport::new("coassociativity");
    let d = c.comul();
    r.equation("(Δ⊗id)Δ = (id⊗Δ)Δ", &delta_left(d), &delta_right(d));
    if c.counit().is_some() {
        counit_laws(&mut r, c);
    }
    r
}

/// Associativity, coassociativity, Δ(xy) = Δ(x)Δ(y), and the unit/counit
/// compatibilities that make sense for the data present.
pub fn check_bialgebra(h: &Bialgebra) -> CheckReport {
    let mut r = CheckReport::new("bialgebra");
    r.absorb(check_associativity(h.algebra()));
    r.absorb(check_coassociativity(h.coalgebra()));
    let (mu, d) = (h.algebra().mul(), h.coalgebra().comul());
    let lhs = einsum("abk,kij->abij", &[d, mu]).expect("square");
    let rhs = einsum("pqi,rsj,apr,bqs->abij", &[d, d, mu, mu]).expect("square");
    r.equation("Δ(xy) = Δ(x)Δ(y)", &lhs, &rhs);
    if let Some(e) = h.coalgebra().counit() {
        let lhs = einsum("k,kij->ij", &[e, mu]).expect("square");
        r.equation("ε(xy) = ε(x)ε(y)", &lhs, &e.outer(e));
    }
    if let Some(u) = h.algebra().unit() {
        let lhs = einsum("abk,k->ab", &[d, u]).expect("square");
        r.equation("Δ(1) = 1⊗1", &lhs, &u.outer(u));
        if let Some(e) = h.coalgebra().counit() {
            let v = einsum("k,k->", &[e, u]).expect("square");
            r.equation("ε(1) = 1", &v, &Tensor::scalar(Scalar::one()));
        }
    }
    r
}

/// Coassociativity of the coaction, plus the counit law when C is counital.
pub fn check_comodule(m: &Comodule) -> CheckReport {
    let mut r = CheckReport::new("comodule");
    let (rho, d) = (m.coaction(), m.over().comul());
    let id = Tensor::identity(m.dim());
    match m.side() {
        Side::Left => {
            let lhs = einsum("abx,xnm->abnm", &[d, rho]).expect("shapes");
            let rhs = einsum("aym,bny->abnm", &[rho, rho]).expect("shapes");
            r.equation("(Δ⊗id)ρ = (id⊗ρ)ρ", &lhs, &rhs);
            if let Some(e) = m.over().counit() {
                let lhs = einsum("anm,a->nm", &[rho, e]).expect("shapes");
                r.equation("(ε⊗id)ρ = id", &lhs, &id);
            }
        }
        Side::Right => {
            let lhs = einsum("ybm,nay->nabm", &[rho, rho]).expect("shapes");
            let rhs = einsum("nxm,abx->nabm", &[rho, d]).expect("shapes");
            r.equation("(ρ⊗id)ρ = (id⊗Δ)ρ", &lhs, &rhs);
            if let Some(e) = m.over().counit() {
                let lhs = einsum("nam,a->nm", &[rho, e]).expect("shapes");
                r.equation("(id⊗ε)ρ = id", &lhs, &id);
            }
        }
    }
    r
}

/// f⋆g = μ∘(f⊗g)∘Δ for operators (rank 2) or (f⊗g)∘Δ for functionals (rank 1).
pub fn convolution(f: &Tensor, g: &Tensor, h: &Bialgebra) -> Result<Tensor> {
    let n = h.dim();
    match (f.shape(), g.shape()) {
        ([a, b], [c, d]) if [*a, *b, *c, *d] == [n; 4] => {
            einsum("kxy,xa,yb,abi->ki", &[h.algebra().mul(), f, g, h.coalgebra().comul()])
        }
        ([a], [b]) if *a == n && *b == n => einsum("a,b,abi->i", &[f, g, h.coalgebra().comul()]),
        _ => Err(Error::shape(format!(
            "convolution of {:?} and {:?} over dimension {n}",
            f.shape(),
            g.shape()
        ))),
    }
}

/// The homogeneous system `(id⊗f)Δ = 0` (or `(f⊗id)Δ = 0`) decouples by
/// rows of f; each row solves the same n²×n system.
fn annihilator_rank(c: &Coalgebra, right_leg: bool) -> Result<usize> {
    let n = c.dim();
    let d = c.comul();
    let m = Tensor::from_fn(&[n * n, n], |ix| {
        let (i, j, b) = (ix[0] / n, ix[0] % n, ix[1]);
        if right_leg {
            d.get(&[j, b, i]).clone()
        } else {
            d.get(&[b, j, i]).clone()
        }
    });
    Ok(rank(&m)?.rank)
}

/// True iff only f = 0 satisfies `(id⊗f)Δ = 0`, and only f = 0 satisfies
/// `(f⊗id)Δ = 0`.
pub fn check_nondegenerate_coalgebra(c: &Coalgebra) -> Result<bool> {
    let n = c.dim();
    Ok(annihilator_rank(c, true)? == n && annihilator_rank(c, false)? == n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compat {
    Multiplicative,
    Comultiplicative,
}

/// f(xy) = f(x)f(y).
pub fn check_multiplicative(a: &Algebra, f: &LinearOp) -> Result<CheckReport> {
    same_dim(a.dim(), &[f.dim()])?;
    let mut r = CheckReport::new("multiplicative map");
    let lhs = sandwich_mul(a.mul(), Some(f.mat()), None, None);
    let rhs = sandwich_mul(a.mul(), None, Some(f.mat()), Some(f.mat()));
    r.equation("f(xy) = f(x)f(y)", &lhs, &rhs);
    Ok(r)
}

/// Δ∘g = (g⊗g)∘Δ.
pub fn check_comultiplicative(c: &Coalgebra, g: &LinearOp) -> Result<CheckReport> {
    same_dim(c.dim(), &[g.dim()])?;
    let mut r = CheckReport::new("comultiplicative map");
    let lhs = sandwich(c.comul(), None, None, Some(g.mat()));
    let rhs = sandwich(c.comul(), Some(g.mat()), Some(g.mat()), None);
    r.equation("Δg = (g⊗g)Δ", &lhs, &rhs);
    Ok(r)
}

pub fn check_fg_compat(h: &Bialgebra, f: &LinearOp, mode: Compat) -> Result<CheckReport> {
    match mode {
        Compat::Multiplicative => check_multiplicative(h.algebra(), f),
        Compat::Comultiplicative => check_comultiplicative(h.coalgebra(), f),
    }
}

/// Δ_D∘f = (f⊗f)∘Δ_C for a map f: C → D given as a `[d][c]` matrix.
pub fn check_coalgebra_map(f: &Tensor, c: &Coalgebra, d: &Coalgebra) -> Result<CheckReport> {
    expect_shape(f, &[d.dim(), c.dim()], "coalgebra map")?;
    let mut r = CheckReport::new("coalgebra map");
    let lhs = einsum("abx,xi->abi", &[d.comul(), f])?;
    let rhs = einsum("ax,by,xyi->abi", &[f, f, c.comul()])?;
    r.equation("Δf = (f⊗f)Δ", &lhs, &rhs);
    if let (Some(ec), Some(ed)) = (c.counit(), d.counit()) {
        let lhs = einsum("a,ai->i", &[ed, f])?;
        r.equation("ε∘f = ε", &lhs, ec);
    }
    Ok(r)
}

/// f(xy) = f(x)f(y) for f: A → B given as a `[b][a]` matrix.
pub fn check_algebra_map(f: &Tensor, a: &Algebra, b: &Algebra) -> Result<CheckReport> {
    expect_shape(f, &[b.dim(), a.dim()], "algebra map")?;
    let mut r = CheckReport::new("algebra map");
    let lhs = einsum("kx,xij->kij", &[f, a.mul()])?;
    let rhs = einsum("kxy,xi,yj->kij", &[b.mul(), f, f])?;
    r.equation("f(xy) = f(x)f(y)", &lhs, &rhs);
    Ok(r)
}
