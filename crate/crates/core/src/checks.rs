//! Named checkers and constructions over structure files.

use crate::error::{Error, Result};
use crate::format::Structure;
use crate::report::CheckReport;
use crate::rota_baxter::{self as rb, RBBisystem, RBCosystem};
use crate::scalar::Scalar;
use crate::structures::{self as st, BilinearForm, Coalgebra, LinearOp, Side};
use crate::yang_baxter::{self as yb, CovariantBialgebra, CYBP};

/// Inputs a checker or construction takes, by role.
#[derive(Clone, Copy, Debug)]
pub struct Spec {
    pub name: &'static str,
    pub ops: &'static [&'static str],
    pub forms: &'static [&'static str],
    pub weights: &'static [&'static str],
    pub about: &'static str,
}

const fn spec(
    name: &'static str,
    ops: &'static [&'static str],
    forms: &'static [&'static str],
    weights: &'static [&'static str],
    about: &'static str,
) -> Spec {
    Spec {
        name,
        ops,
        forms,
        weights,
        about,
    }
}

pub const CHECKERS: &[Spec] = &[
    spec("associativity", &[], &[], &[], "mul is associative"),
    spec("coassociativity", &[], &[], &[], "comul is coassociative"),
    spec("bialgebra", &[], &[], &[], "mul and comul form a bialgebra"),
    spec("nondegenerate", &[], &[], &[], "the coalgebra is non-degenerate"),
    spec("pre-lie", &[], &[], &[], "comul is a pre-Lie coproduct"),
    spec("rb-algebra", &["R"], &[], &["lambda"], "R is Rota-Baxter of weight lambda on the algebra"),
    spec("rb-coalgebra", &["Q"], &[], &["gamma"], "Q is Rota-Baxter of weight gamma on the coalgebra"),
    spec("rb-bialgebra", &["R", "Q"], &[], &["lambda", "gamma"], "rb-algebra for R and rb-coalgebra for Q"),
    spec("rb-system", &["R", "S"], &[], &[], "(R, S) is a Rota-Baxter system"),
    spec("rb-cosystem", &["Q", "T"], &[], &[], "(Q, T) is a Rota-Baxter cosystem"),
    spec("rb-bisystem", &["R", "S", "Q", "T"], &[], &[], "(R, S, Q, T) is a Rota-Baxter bisystem"),
    spec("colinear-left", &["Q"], &[], &[], "ΔQ = (id⊗Q)Δ"),
    spec("colinear-right", &["T"], &[], &[], "ΔT = (T⊗id)Δ"),
    spec("copseudotwistor", &["Q", "T"], &[], &[], "F and F̃ of a cosystem form a weak copseudotwistor"),
    spec("dendriform", &["Q", "T"], &[], &[], "Δ_r, Δ_l of a cosystem form a dendriform coalgebra"),
    spec("cybp", &[], &["sigma", "tau"], &[], "(σ, τ) is a coassociative Yang-Baxter pair"),
    spec("aybe", &[], &["sigma"], &[], "σ solves the coassociative Yang-Baxter equation"),
    spec("coqt", &[], &["sigma", "tau"], &[], "the principal structure of (σ, τ) is coquasitriangular"),
    spec("inf-coqt", &[], &["sigma"], &[], "the principal infinitesimal bialgebra of σ is coquasitriangular"),
    spec("principal-criterion", &[], &["sigma", "tau"], &[], "the principal product is associative"),
    spec("inf-bialgebra", &[], &[], &[], "(comul, mul) is an infinitesimal bialgebra"),
];

pub const CONSTRUCTIONS: &[Spec] = &[
    spec("star-coproduct", &["Q", "T"], &[], &[], "comul := Δ*(c) = Q(c1)⊗c2 + c1⊗T(c2)"),
    spec("bullet-coproduct", &["Q", "T"], &[], &[], "comul := Δ•(c) = Q(c1)⊗c2 − T(c2)⊗c1"),
    spec("cop", &[], &[], &[], "co-opposite comultiplication"),
    spec("principal", &[], &["sigma", "tau"], &[], "mul := c1σ(c2,d) − τ(c,d1)d2, bimaps δσ, δτ"),
    spec("right-dual", &[], &[], &[], "C′ of an infinitesimal bialgebra"),
    spec("left-dual", &[], &[], &[], "′C of an infinitesimal bialgebra"),
    spec("dhat", &[], &[], &[], "the tensor coalgebra C⊗′C with its form σ and product"),
];

fn find(table: &'static [Spec], name: &str, what: &str) -> Result<&'static Spec> {
    table.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = table.iter().map(|s| s.name).collect();
        Error::Usage(format!("unknown {what} `{name}`; expected one of {}", names.join(", ")))
    })
}

pub fn checker(name: &str) -> Result<&'static Spec> {
    find(CHECKERS, name, "checker")
}

pub fn construction(name: &str) -> Result<&'static Spec> {
    find(CONSTRUCTIONS, name, "construction")
}

/// Resolved inputs for one call.
pub struct Inputs<'a> {
    pub ops: Vec<&'a LinearOp>,
    pub forms: Vec<&'a BilinearForm>,
    pub weights: Vec<Scalar>,
}

impl Spec {
    fn arity(&self, ops: usize, forms: usize, weights: usize) -> Result<()> {
        let mut bad = Vec::new();
        for (role, want, got) in [
            ("operator", self.ops, ops),
            ("form", self.forms, forms),
            ("weight", self.weights, weights),
        ] {
            if want.len() != got {
                bad.push(format!("{} {role}(s) ({}) but got {got}", want.len(), want.join(", ")));
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Usage(format!("`{}` takes {}", self.name, bad.join("; "))))
        }
    }

    /// Looks the named inputs up in `s`.
    pub fn inputs<'a>(
        &self,
        s: &'a Structure,
        ops: &[String],
        forms: &[String],
        weights: Vec<Scalar>,
    ) -> Result<Inputs<'a>> {
        self.arity(ops.len(), forms.len(), weights.len())?;
        Ok(Inputs {
            ops: ops.iter().map(|n| s.operator(n)).collect::<Result<_>>()?,
            forms: forms.iter().map(|n| s.form(n)).collect::<Result<_>>()?,
            weights,
        })
    }
}

fn inf_bialgebra(s: &Structure) -> Result<CovariantBialgebra> {
    let mu = s.mul.clone().ok_or_else(|| Error::Format("the file has no mul".into()))?;
    CovariantBialgebra::infinitesimal(s.coalgebra()?, mu)
}

/// Runs checker `name` on `s`.
pub fn run_check(name: &str, s: &Structure, inp: &Inputs) -> Result<CheckReport> {
    let spec = checker(name)?;
    spec.arity(inp.ops.len(), inp.forms.len(), inp.weights.len())?;
    let (o, f, w) = (&inp.ops, &inp.forms, &inp.weights);
    let cosystem = || RBCosystem::new(s.coalgebra()?, o[0].clone(), o[1].clone());
    let precondition = |r: Result<CheckReport>| match r {
        Err(Error::PreconditionFailed { report, .. }) => Ok(*report),
        other => other,
    };
    match name {
        "associativity" => Ok(st::check_associativity(&s.algebra()?)),
        "coassociativity" => Ok(st::check_coassociativity(&s.coalgebra()?)),
        "bialgebra" => Ok(st::check_bialgebra(&s.bialgebra()?)),
        "nondegenerate" => {
            let mut rep = CheckReport::new("nondegenerate");
            rep.condition("only f = 0 is killed by (id⊗f)Δ and by (f⊗id)Δ", st::check_nondegenerate_coalgebra(&s.coalgebra()?)?);
            Ok(rep)
        }
        "pre-lie" => rb::check_pre_lie(s.coalgebra()?.comul()),
        "rb-algebra" => rb::check_rb_algebra(&s.algebra()?, o[0], &w[0]),
        "rb-coalgebra" => rb::check_rb_coalgebra(&s.coalgebra()?, o[0], &w[0]),
        "rb-bialgebra" => rb::check_rb_bialgebra(&s.bialgebra()?, o[0], &w[0], o[1], &w[1]),
        "rb-system" => rb::check_rb_system(&s.algebra()?, o[0], o[1]),
        "rb-cosystem" => rb::check_rb_cosystem(&s.coalgebra()?, o[0], o[1]),
        "rb-bisystem" => {
            let b = RBBisystem::new(s.bialgebra()?, o[0].clone(), o[1].clone(), o[2].clone(), o[3].clone())?;
            rb::check_rb_bisystem(&b)
        }
        "colinear-left" => rb::check_colinearity(&s.coalgebra()?, o[0], Side::Left),
        "colinear-right" => rb::check_colinearity(&s.coalgebra()?, o[0], Side::Right),
        "copseudotwistor" => precondition(rb::copseudotwistor(&cosystem()?).map(|x| x.2)),
        "dendriform" => precondition(rb::dendriform_from_cosystem(&cosystem()?).map(|x| x.2)),
        "cybp" => Ok(yb::check_cybp(&CYBP::new(s.coalgebra()?, f[0].clone(), f[1].clone())?)),
        "aybe" => yb::check_aybe(&s.coalgebra()?, f[0]),
        "coqt" => yb::check_coqt(&s.coalgebra()?, f[0], f[1]),
        "inf-coqt" => yb::check_inf_coqt(&s.coalgebra()?, f[0]),
        "principal-criterion" => yb::check_principal_criterion(&s.coalgebra()?, f[0], f[1]),
        "inf-bialgebra" => Ok(yb::check_covariant_bialgebra(&inf_bialgebra(s)?)),
        _ => unreachable!("registered checker {name}"),
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn with_coalgebra(s: &Structure, c: &Coalgebra) -> Structure {
    let mut out = s.clone();
    out.comul = Some(c.comul().clone());
    out.counit = c.counit().cloned();
    out.mul = None;
    out.unit = None;
    out
}

fn from_inf(s: &Structure, cb: &CovariantBialgebra, prefix: &str) -> Structure {
    let mut out = Structure::empty(s.ring.clone(), labels(prefix, cb.dim()));
    out.comul = Some(cb.coalg.comul().clone());
    out.counit = cb.coalg.counit().cloned();
    out.mul = Some(cb.mu.clone());
    out
}

/// Runs construction `name` on `s`, returning a new structure.
pub fn run_construction(name: &str, s: &Structure, inp: &Inputs) -> Result<Structure> {
    let spec = construction(name)?;
    spec.arity(inp.ops.len(), inp.forms.len(), inp.weights.len())?;
    let (o, f) = (&inp.ops, &inp.forms);
    let cosystem = || RBCosystem::new(s.coalgebra()?, o[0].clone(), o[1].clone());
    match name {
        "star-coproduct" => Ok(with_coalgebra(s, &rb::star_coproduct(&cosystem()?)?)),
        "bullet-coproduct" => {
            let (bullet, _) = rb::bullet_coproduct(&cosystem()?)?;
            Ok(with_coalgebra(s, &Coalgebra::new(bullet, None, Some(s.labels.clone()))?))
        }
        "cop" => {
            let mut out = s.clone();
            out.comul = Some(s.coalgebra()?.cop().comul().clone());
            Ok(out)
        }
        "principal" => {
            let c = s.coalgebra()?;
            let (ds, dt, mu) = yb::principal_maps(&c, f[0], f[1])?;
            let mut out = s.clone();
            out.mul = Some(mu);
            out.unit = None;
            out.bimaps.insert("delta_sigma".into(), ds);
            out.bimaps.insert("delta_tau".into(), dt);
            Ok(out)
        }
        "right-dual" | "left-dual" => {
            let (prime, left_prime) = yb::dual_inf_bialgebras(&inf_bialgebra(s)?)?;
            let cb = if name == "right-dual" { prime } else { left_prime };
            Ok(from_inf(s, &cb, "f"))
        }
        "dhat" => {
            let cb = inf_bialgebra(s)?;
            let (dh, sigma, mu, _) = yb::dhat(&cb)?;
            let mut out = Structure::empty(s.ring.clone(), labels("w", dh.dim()));
            out.comul = Some(dh.comul().clone());
            out.mul = Some(mu);
            out.forms.insert("sigma".into(), sigma);
            Ok(out)
        }
        _ => unreachable!("registered construction {name}"),
    }
}
