//! Rota-Baxter operators, systems, cosystems and bisystems, and the
//! coproducts built from cosystems.

use crate::error::{Error, Result};
use crate::linalg::{einsum, Tensor};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::structures::{
    check_comultiplicative, check_nondegenerate_coalgebra, delta_left,
    delta_right, same_dim, sandwich, sandwich_mul, Algebra, Bialgebra, Coalgebra, LinearOp, Side,
};

#[derive(Clone, Debug, PartialEq)]
pub struct RBSystem {
    pub carrier: Algebra,
    pub r: LinearOp,
    pub s: LinearOp,
}

impl RBSystem {
    pub fn new(carrier: Algebra, r: LinearOp, s: LinearOp) -> Result<Self> {
        same_dim(carrier.dim(), &[r.dim(), s.dim()])?;
        Ok(RBSystem { carrier, r, s })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RBCosystem {
    pub carrier: Coalgebra,
    pub q: LinearOp,
    pub t: LinearOp,
}

impl RBCosystem {
    pub fn new(carrier: Coalgebra, q: LinearOp, t: LinearOp) -> Result<Self> {
        same_dim(carrier.dim(), &[q.dim(), t.dim()])?;
        Ok(RBCosystem { carrier, q, t })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RBBisystem {
    pub carrier: Bialgebra,
    pub r: LinearOp,
    pub s: LinearOp,
    pub q: LinearOp,
    pub t: LinearOp,
}

impl RBBisystem {
    pub fn new(carrier: Bialgebra, r: LinearOp, s: LinearOp, q: LinearOp, t: LinearOp) -> Result<Self> {
        same_dim(carrier.dim(), &[r.dim(), s.dim(), q.dim(), t.dim()])?;
        Ok(RBBisystem { carrier, r, s, q, t })
    }

    pub fn system(&self) -> RBSystem {
        RBSystem {
            carrier: self.carrier.algebra().clone(),
            r: self.r.clone(),
            s: self.s.clone(),
        }
    }

    pub fn cosystem(&self) -> RBCosystem {
        RBCosystem {
            carrier: self.carrier.coalgebra().clone(),
            q: self.q.clone(),
            t: self.t.clone(),
        }
    }
}

/// R(a)R(b) = R(aR(b)) + R(R(a)b) + λR(ab); failures indexed `(out, i, j)`.
pub fn check_rb_algebra(a: &Algebra, r: &LinearOp, lambda: &Scalar) -> Result<CheckReport> {
    same_dim(a.dim(), &[r.dim()])?;
    let (mu, rm) = (a.mul(), r.mat());
    let lhs = sandwich_mul(mu, None, Some(rm), Some(rm));
    let rhs = sandwich_mul(mu, Some(rm), None, Some(rm))
        .add(&sandwich_mul(mu, Some(rm), Some(rm), None))?
        .add(&sandwich_mul(mu, Some(rm), None, None).scale(lambda))?;
    let mut rep = CheckReport::new("rb-algebra");
    rep.equation("R(a)R(b) = R(aR(b)) + R(R(a)b) + λR(ab)", &lhs, &rhs);
    Ok(rep)
}

/// (Q⊗Q)Δ = (id⊗Q)ΔQ + (Q⊗id)ΔQ + γΔQ; failures indexed `(a, b, i)`.
pub fn check_rb_coalgebra(c: &Coalgebra, q: &LinearOp, gamma: &Scalar) -> Result<CheckReport> {
    same_dim(c.dim(), &[q.dim()])?;
    let (d, qm) = (c.comul(), q.mat());
    let lhs = sandwich(d, Some(qm), Some(qm), None);
    let rhs = sandwich(d, None, Some(qm), Some(qm))
        .add(&sandwich(d, Some(qm), None, Some(qm)))?
        .add(&sandwich(d, None, None, Some(qm)).scale(gamma))?;
    let mut rep = CheckReport::new("rb-coalgebra");
    rep.equation("Q(c1)⊗Q(c2) = Q(c)1⊗Q(Q(c)2) + Q(Q(c)1)⊗Q(c)2 + γQ(c)1⊗Q(c)2", &lhs, &rhs);
    Ok(rep)
}

/// R(a)R(b) = R(R(a)b + aS(b)) and S(a)S(b) = S(R(a)b + aS(b)).
pub fn check_rb_system(a: &Algebra, r: &LinearOp, s: &LinearOp) -> Result<CheckReport> {
    same_dim(a.dim(), &[r.dim(), s.dim()])?;
    let (mu, rm, sm) = (a.mul(), r.mat(), s.mat());
    let inner = |outer: &Tensor| -> Result<Tensor> {
        sandwich_mul(mu, Some(outer), Some(rm), None).add(&sandwich_mul(mu, Some(outer), None, Some(sm)))
    };
    let mut rep = CheckReport::new("rb-system");
    rep.equation(
        "R(a)R(b) = R(R(a)b + aS(b))",
        &sandwich_mul(mu, None, Some(rm), Some(rm)),
        &inner(rm)?,
    );
    rep.equation(
        "S(a)S(b) = S(R(a)b + aS(b))",
        &sandwich_mul(mu, None, Some(sm), Some(sm)),
        &inner(sm)?,
    );
    Ok(rep)
}

fn cosystem_sides(d: &Tensor, q: &Tensor, t: &Tensor, outer: &Tensor) -> Result<(Tensor, Tensor)> {
    let lhs = sandwich(d, Some(outer), Some(outer), None);
    let rhs = sandwich(d, Some(q), None, Some(outer)).add(&sandwich(d, None, Some(t), Some(outer)))?;
    Ok((lhs, rhs))
}

/// Q(c1)⊗Q(c2) = Q(Q(c)1)⊗Q(c)2 + Q(c)1⊗T(Q(c)2) and
/// T(c1)⊗T(c2) = Q(T(c)1)⊗T(c)2 + T(c)1⊗T(T(c)2).
pub fn check_rb_cosystem(c: &Coalgebra, q: &LinearOp, t: &LinearOp) -> Result<CheckReport> {
    same_dim(c.dim(), &[q.dim(), t.dim()])?;
    let (d, qm, tm) = (c.comul(), q.mat(), t.mat());
    let mut rep = CheckReport::new("rb-cosystem");
    let (l, r) = cosystem_sides(d, qm, tm, qm)?;
    rep.equation("Q(c1)⊗Q(c2) = Q(Q(c)1)⊗Q(c)2 + Q(c)1⊗T(Q(c)2)", &l, &r);
    let (l, r) = cosystem_sides(d, qm, tm, tm)?;
    rep.equation("T(c1)⊗T(c2) = Q(T(c)1)⊗T(c)2 + T(c)1⊗T(T(c)2)", &l, &r);
    Ok(rep)
}

pub fn check_rb_bisystem(b: &RBBisystem) -> Result<CheckReport> {
    let mut rep = CheckReport::new("rb-bisystem");
    rep.absorb(check_rb_system(b.carrier.algebra(), &b.r, &b.s)?);
    rep.absorb(check_rb_cosystem(b.carrier.coalgebra(), &b.q, &b.t)?);
    Ok(rep)
}

/// An (R, Q) structure of weight (λ, γ) on a bialgebra: R is a weight-λ
/// operator on the algebra and Q a weight-γ operator on the coalgebra.
pub fn check_rb_bialgebra(
    h: &Bialgebra,
    r: &LinearOp,
    lambda: &Scalar,
    q: &LinearOp,
    gamma: &Scalar,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("rb-bialgebra");
    rep.absorb(check_rb_algebra(h.algebra(), r, lambda)?);
    rep.absorb(check_rb_coalgebra(h.coalgebra(), q, gamma)?);
    Ok(rep)
}

fn require(report: CheckReport, what: &str) -> Result<()> {
    if report.verdict() {
        Ok(())
    } else {
        Err(Error::precondition(what, report))
    }
}

/// (C, Q, Q+γ·id) and (C, Q+γ·id, Q) from a weight-γ Rota-Baxter coalgebra.
pub fn weight_to_cosystems(c: &Coalgebra, q: &LinearOp, gamma: &Scalar) -> Result<(RBCosystem, RBCosystem)> {
    require(check_rb_coalgebra(c, q, gamma)?, "Q is not a Rota-Baxter operator of the given weight")?;
    let shifted = q.shift(gamma);
    Ok((
        RBCosystem::new(c.clone(), q.clone(), shifted.clone())?,
        RBCosystem::new(c.clone(), shifted, q.clone())?,
    ))
}

/// (A, R, R+λ·id) and (A, R+λ·id, R) from a weight-λ Rota-Baxter algebra.
pub fn weight_to_systems(a: &Algebra, r: &LinearOp, lambda: &Scalar) -> Result<(RBSystem, RBSystem)> {
    require(check_rb_algebra(a, r, lambda)?, "R is not a Rota-Baxter operator of the given weight")?;
    let shifted = r.shift(lambda);
    Ok((
        RBSystem::new(a.clone(), r.clone(), shifted.clone())?,
        RBSystem::new(a.clone(), shifted, r.clone())?,
    ))
}

/// The four bisystems obtained from a Rota-Baxter bialgebra of weight (λ, γ).
pub fn weight_to_bisystems(
    h: &Bialgebra,
    r: &LinearOp,
    lambda: &Scalar,
    q: &LinearOp,
    gamma: &Scalar,
) -> Result<Vec<RBBisystem>> {
    let (s1, s2) = weight_to_systems(h.algebra(), r, lambda)?;
    let (c1, c2) = weight_to_cosystems(h.coalgebra(), q, gamma)?;
    let mut out = Vec::new();
    for s in [&s1, &s2] {
        for c in [&c1, &c2] {
            out.push(RBBisystem::new(h.clone(), s.r.clone(), s.s.clone(), c.q.clone(), c.t.clone())?);
        }
    }
    Ok(out)
}

fn require_cosystem(cs: &RBCosystem) -> Result<()> {
    require(check_rb_cosystem(&cs.carrier, &cs.q, &cs.t)?, "not a Rota-Baxter cosystem")
}

fn star_tensor(cs: &RBCosystem) -> Tensor {
    let d = cs.carrier.comul();
    sandwich(d, Some(cs.q.mat()), None, None)
        .add(&sandwich(d, None, Some(cs.t.mat()), None))
        .expect("same shape")
}

/// Δ*(c) = Q(c1)⊗c2 + c1⊗T(c2), without a counit.
pub fn star_coproduct(cs: &RBCosystem) -> Result<Coalgebra> {
    require_cosystem(cs)?;
    Coalgebra::new(star_tensor(cs), None, Some(cs.carrier.labels().to_vec()))
}

/// Δ•(c) = Q(c1)⊗c2 − T(c2)⊗c1, with its pre-Lie verdict.
pub fn bullet_coproduct(cs: &RBCosystem) -> Result<(Tensor, CheckReport)> {
    require_cosystem(cs)?;
    let d = cs.carrier.comul();
    let right = sandwich(d, None, Some(cs.t.mat()), None).permute_legs(&[1, 0, 2])?;
    let bullet = sandwich(d, Some(cs.q.mat()), None, None).sub(&right)?;
    let report = check_pre_lie(&bullet)?;
    Ok((bullet, report))
}

/// Δ_C − Φ(12)Δ_C = 0 with Δ_C = (Δ⊗id)Δ − (id⊗Δ)Δ.
pub fn check_pre_lie(comul: &Tensor) -> Result<CheckReport> {
    let n = comul.shape().first().copied().unwrap_or(0);
    if comul.shape() != [n, n, n] {
        return Err(Error::shape(format!("coproduct of shape {:?}", comul.shape())));
    }
    let assoc = delta_left(comul).sub(&delta_right(comul))?;
    let flipped = assoc.permute_legs(&[1, 0, 2, 3])?;
    let mut rep = CheckReport::new("pre-lie");
    rep.equation("Δ_C = Φ(12)Δ_C", &assoc, &flipped);
    Ok(rep)
}

/// F(c⊗d) = Q(c)⊗d + c⊗T(d) as a `[a][b][i][j]` tensor.
pub fn twistor_f(q: &LinearOp, t: &LinearOp) -> Tensor {
    let id = Tensor::identity(q.dim());
    einsum("ai,bj->abij", &[q.mat(), &id])
        .and_then(|x| x.add(&einsum("ai,bj->abij", &[&id, t.mat()])?))
        .expect("square")
}

/// F̃ = Q⊗Q⊗id + Q⊗id⊗T + id⊗T⊗T as a `[a][b][c][i][j][k]` tensor.
pub fn twistor_f_tilde(q: &LinearOp, t: &LinearOp) -> Tensor {
    let id = Tensor::identity(q.dim());
    let (qm, tm) = (q.mat(), t.mat());
    let term = |x: &Tensor, y: &Tensor, z: &Tensor| einsum("ai,bj,ck->abcijk", &[x, y, z]).expect("square");
    term(qm, qm, &id)
        .add(&term(qm, &id, tm))
        .and_then(|s| s.add(&term(&id, tm, tm)))
        .expect("same shape")
}

/// Both squares of the weak copseudotwistor diagram for given F and F̃.
pub fn check_copseudotwistor(c: &Coalgebra, f: &Tensor, f_tilde: &Tensor) -> Result<CheckReport> {
    let d = c.comul();
    let mut rep = CheckReport::new("weak-copseudotwistor");
    let lhs = einsum("abcxyj,xyi->abcij", &[f_tilde, d])?;
    let rhs = einsum("abxy,xyp,pcij->abcij", &[f, d, f])?;
    rep.equation("F̃(Δ⊗id) = (F⊗id)(Δ⊗id)F", &lhs, &rhs);
    let lhs = einsum("abcixy,xyj->abcij", &[f_tilde, d])?;
    let rhs = einsum("aqij,xyq,bcxy->abcij", &[f, d, f])?;
    rep.equation("F̃(id⊗Δ) = (id⊗F)(id⊗Δ)F", &lhs, &rhs);
    Ok(rep)
}

/// F, F̃ and the verdict on both squares plus Δ* = F∘Δ.
pub fn copseudotwistor(cs: &RBCosystem) -> Result<(Tensor, Tensor, CheckReport)> {
    require_cosystem(cs)?;
    let f = twistor_f(&cs.q, &cs.t);
    let ft = twistor_f_tilde(&cs.q, &cs.t);
    let mut rep = check_copseudotwistor(&cs.carrier, &f, &ft)?;
    let fd = einsum("abxy,xyi->abi", &[&f, cs.carrier.comul()])?;
    rep.equation("Δ* = F∘Δ", &star_tensor(cs), &fd);
    Ok((f, ft, rep))
}

/// Left: ΔQ = (id⊗Q)Δ. Right: ΔT = (T⊗id)Δ.
pub fn check_colinearity(c: &Coalgebra, op: &LinearOp, side: Side) -> Result<CheckReport> {
    same_dim(c.dim(), &[op.dim()])?;
    let (d, m) = (c.comul(), op.mat());
    let lhs = sandwich(d, None, None, Some(m));
    let mut rep = CheckReport::new("colinearity");
    match side {
        Side::Left => rep.equation("ΔQ = (id⊗Q)Δ", &lhs, &sandwich(d, None, Some(m), None)),
        Side::Right => rep.equation("ΔT = (T⊗id)Δ", &lhs, &sandwich(d, Some(m), None, None)),
    };
    Ok(rep)
}

/// For left-colinear Q and right-colinear T: c1⊗TQ(c2) = QT(c1)⊗c2 = 0.
/// On a non-degenerate carrier also TQ = QT = 0, and the verdict is
/// compared with the cosystem check.
pub fn orthogonality_criterion(c: &Coalgebra, q: &LinearOp, t: &LinearOp) -> Result<CheckReport> {
    require(check_colinearity(c, q, Side::Left)?, "Q is not left colinear")?;
    require(check_colinearity(c, t, Side::Right)?, "T is not right colinear")?;
    let tq = t.compose(q)?;
    let qt = q.compose(t)?;
    let d = c.comul();
    let mut rep = CheckReport::new("orthogonality");
    let a = rep.residual("c1⊗TQ(c2) = 0", &sandwich(d, None, Some(tq.mat()), None));
    let b = rep.residual("QT(c1)⊗c2 = 0", &sandwich(d, Some(qt.mat()), None, None));
    let cosystem = check_rb_cosystem(c, q, t)?.verdict();
    rep.condition("criterion agrees with the cosystem check", (a && b) == cosystem);
    match check_nondegenerate_coalgebra(c) {
        Ok(true) => {
            let a = rep.residual("TQ = 0", tq.mat());
            let b = rep.residual("QT = 0", qt.mat());
            rep.condition("orthogonality agrees with the cosystem check", (a && b) == cosystem);
        }
        Ok(false) => rep.note("carrier is degenerate; TQ = QT = 0 not asserted"),
        Err(e) => rep.note(format!("non-degeneracy undecided: {e}")),
    }
    Ok(rep)
}

/// The twisting hypothesis for (C, Q, Q∘g): the first cosystem identity with
/// T = Q∘g.
pub fn check_twist_hypothesis(c: &Coalgebra, q: &LinearOp, g: &LinearOp) -> Result<CheckReport> {
    same_dim(c.dim(), &[q.dim(), g.dim()])?;
    let qg = q.compose(g)?;
    let (l, r) = cosystem_sides(c.comul(), q.mat(), qg.mat(), q.mat())?;
    let mut rep = CheckReport::new("twist-hypothesis");
    rep.equation("Q(c1)⊗Q(c2) = Q(Q(c)1)⊗Q(c)2 + Q(c)1⊗Q^g(Q(c)2)", &l, &r);
    Ok(rep)
}

/// (C, Q, Q∘g) for comultiplicative g satisfying the twisting hypothesis.
pub fn twisted_cosystem(c: &Coalgebra, q: &LinearOp, g: &LinearOp) -> Result<RBCosystem> {
    require(check_comultiplicative(c, g)?, "g is not comultiplicative")?;
    require(check_twist_hypothesis(c, q, g)?, "twisting hypothesis fails")?;
    RBCosystem::new(c.clone(), q.clone(), q.compose(g)?)
}

/// (A, R, R∘f) for multiplicative f with R(x)R(y) = R(R(x)y + xR^f(y)).
pub fn twisted_system(a: &Algebra, r: &LinearOp, f: &LinearOp) -> Result<RBSystem> {
    require(crate::structures::check_multiplicative(a, f)?, "f is not multiplicative")?;
    let rf = r.compose(f)?;
    let mu = a.mul();
    let lhs = sandwich_mul(mu, None, Some(r.mat()), Some(r.mat()));
    let rhs = sandwich_mul(mu, Some(r.mat()), Some(r.mat()), None)
        .add(&sandwich_mul(mu, Some(r.mat()), None, Some(rf.mat())))?;
    let mut rep = CheckReport::new("twist-hypothesis");
    rep.equation("R(x)R(y) = R(R(x)y + xR^f(y))", &lhs, &rhs);
    require(rep, "twisting hypothesis fails")?;
    RBSystem::new(a.clone(), r.clone(), rf)
}

/// Δ_r(c) = c1⊗T(c2), Δ_l(c) = Q(c1)⊗c2, with the dendriform verdict.
pub fn dendriform_from_cosystem(cs: &RBCosystem) -> Result<(Tensor, Tensor, CheckReport)> {
    require_cosystem(cs)?;
    let d = cs.carrier.comul();
    let dr = sandwich(d, None, Some(cs.t.mat()), None);
    let dl = sandwich(d, Some(cs.q.mat()), None, None);
    let mut rep = check_dendriform(&dr, &dl)?;
    rep.equation("Δ* = Δ_r + Δ_l", &star_tensor(cs), &dr.add(&dl)?);
    Ok((dr, dl, rep))
}

/// (Δr⊗id)Δr = (id⊗(Δr+Δl))Δr, (Δl⊗id)Δr = (id⊗Δr)Δl,
/// ((Δr+Δl)⊗id)Δl = (id⊗Δl)Δl.
pub fn check_dendriform(dr: &Tensor, dl: &Tensor) -> Result<CheckReport> {
    let n = dr.shape().first().copied().unwrap_or(0);
    if dr.shape() != [n, n, n] || dl.shape() != [n, n, n] {
        return Err(Error::shape(format!("dendriform halves {:?} and {:?}", dr.shape(), dl.shape())));
    }
    // (X⊗id)Y and (id⊗X)Y
    let left = |x: &Tensor, y: &Tensor| einsum("abx,xci->abci", &[x, y]).expect("square");
    let right = |x: &Tensor, y: &Tensor| einsum("axi,bcx->abci", &[y, x]).expect("square");
    let sum = dr.add(dl)?;
    let mut rep = CheckReport::new("dendriform");
    rep.equation("(Δr⊗id)Δr = (id⊗Δr + id⊗Δl)Δr", &left(dr, dr), &right(&sum, dr));
    rep.equation("(Δl⊗id)Δr = (id⊗Δr)Δl", &left(dl, dr), &right(dr, dl));
    rep.equation("(Δr⊗id + Δl⊗id)Δl = (id⊗Δl)Δl", &left(&sum, dl), &right(dl, dl));
    Ok(rep)
}

/// Δ* as a tensor, without checking the cosystem hypothesis.
pub fn star_coproduct_tensor(cs: &RBCosystem) -> Tensor {
    star_tensor(cs)
}
