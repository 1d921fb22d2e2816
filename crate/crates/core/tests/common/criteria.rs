//! The eight acceptance criteria as functions returning a verdict with a
//! one-line summary.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rbx_core::corpus::{load_corpus, verify_entries, CorpusEntry, Status, Summary};
use rbx_core::format::FlagKind;
use rbx_core::rota_baxter::{
    bullet_coproduct, check_dendriform, check_rb_bisystem, check_rb_cosystem, copseudotwistor,
    dendriform_from_cosystem, star_coproduct, weight_to_bisystems, weight_to_cosystems, RBCosystem,
};
use rbx_core::structures::{check_coassociativity, check_nondegenerate_coalgebra, BilinearForm, Coalgebra, LinearOp};
use rbx_core::yang_baxter::{
    canonical_double, check_aybe, check_covariant_bialgebra, check_cybp, check_double_coalgebra,
    dhat, dual_inf_bialgebras, principal_associator_residual, principal_bialgebra, tensor_coalgebra,
    zeta_xi_maps, CYBP,
};
use rbx_core::Error;

use super::pools::Carrier;
use super::{assignments, point, rng, to_tensor, Dense};

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

/// The corpus with its verification summary, mutation controls included.
pub struct CorpusRun {
    pub entries: Vec<CorpusEntry>,
    pub summary: Summary,
    pub elapsed: Duration,
}

pub fn run_corpus() -> CorpusRun {
    let start = Instant::now();
    let entries = load_corpus().expect("bundled corpus loads");
    let summary = verify_entries(&entries, true);
    CorpusRun {
        entries,
        summary,
        elapsed: start.elapsed(),
    }
}

impl CorpusRun {
    fn passing(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries
            .iter()
            .zip(&self.summary.outcomes)
            .filter(|(_, o)| o.status == Status::Pass && o.verdict)
            .map(|(e, _)| e)
    }
}

fn kind_name(k: FlagKind) -> &'static str {
    match k {
        FlagKind::DeltaVariant => "delta-variant",
        FlagKind::Sqrt => "sqrt",
        FlagKind::Misprint => "misprint",
    }
}

/// Every entry passes or carries a flag of a permitted kind, within 60 s.
pub fn corpus_reproduction(run: &CorpusRun) -> Verdict {
    let s = &run.summary;
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let mut outside = 0;
    for (e, o) in run.entries.iter().zip(&s.outcomes) {
        if o.status != Status::Flagged {
            continue;
        }
        let kind = e.claim.flagged.as_ref().expect("flagged entries carry a flag").kind;
        *kinds.entry(kind_name(kind)).or_default() += 1;
        if kind == FlagKind::Misprint {
            outside += 1;
        }
    }
    let kinds: Vec<String> = kinds.iter().map(|(k, n)| format!("{n} {k}")).collect();
    let fail = s.count(Status::Fail);
    let secs = run.elapsed.as_secs_f64();
    Verdict::new(
        fail == 0 && outside == 0 && secs < 60.0,
        format!(
            "{} entries: {} pass, {} fail, {} flagged ({}); {outside} flagged outside the permitted sources; {secs:.1} s",
            s.outcomes.len(),
            s.count(Status::Pass),
            fail,
            s.count(Status::Flagged),
            kinds.join(", "),
        ),
    )
}

/// Doubling one coefficient flips at least 95% of the verdicts that leave
/// the family, and every survivor is free.
pub fn negative_controls(run: &CorpusRun) -> Verdict {
    let c = &run.summary.controls;
    let total: usize = c.iter().map(|f| f.mutations.len()).sum();
    let flipped: usize = c.iter().map(|f| f.flipped()).sum();
    let free: usize = c.iter().map(|f| f.free()).sum();
    let unexplained: usize = c.iter().map(|f| f.unexplained().count()).sum();
    let worst = c
        .iter()
        .min_by(|a, b| a.rate().total_cmp(&b.rate()))
        .map(|f| format!("{} at {:.1}%", f.family, 100.0 * f.rate()))
        .unwrap_or_default();
    Verdict::new(
        !c.is_empty() && unexplained == 0 && c.iter().all(|f| f.rate() >= 0.95),
        format!(
            "{} families, {flipped}/{total} mutations flipped, {free} survivors free, {unexplained} unexplained; lowest rate {worst}",
            c.len()
        ),
    )
}

/// Passing printed cosystems, the cosystem half of bisystems, and the
/// cosystems obtained from each distinct weighted coalgebra operator.
pub fn corpus_cosystems(run: &CorpusRun) -> Vec<(String, RBCosystem)> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for e in &run.entries {
        let s = &*e.structure;
        let ops = &e.claim.ops;
        let op = |i: usize| s.operator(&ops[i]).expect("validated").clone();
        let Ok(c) = s.coalgebra() else { continue };
        let printed = match e.claim.checker.as_str() {
            "rb-cosystem" => Some((op(0), op(1))),
            "rb-bisystem" => Some((op(2), op(3))),
            _ => None,
        };
        if let Some((q, t)) = printed {
            if check_rb_cosystem(&c, &q, &t).expect("square").verdict() {
                out.push((e.id.clone(), RBCosystem::new(c, q, t).expect("square")));
            }
            continue;
        }
        if e.claim.checker == "rb-bialgebra" && seen.insert((e.file.clone(), ops[1].clone(), e.claim.weights[1].clone())) {
            let gamma = s.scalar(&e.claim.weights[1]).expect("validated");
            if let Ok((a, b)) = weight_to_cosystems(&c, &op(1), &gamma) {
                out.push((format!("{}/(Q,Q+γ)", e.id), a));
                out.push((format!("{}/(Q+γ,Q)", e.id), b));
            }
        }
    }
    out
}

/// Star, bullet, copseudotwistor and dendriform constructions on every
/// corpus cosystem.
pub fn construction_coherence(run: &CorpusRun) -> Verdict {
    let cosystems = corpus_cosystems(run);
    let mut bad: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (id, cs) in &cosystems {
        let star = star_coproduct(cs).map(|c| check_coassociativity(&c).verdict());
        let bullet = bullet_coproduct(cs).map(|(_, r)| r.verdict());
        let twistor = copseudotwistor(cs).map(|(_, _, r)| r.verdict());
        let dend = dendriform_from_cosystem(cs).map(|(_, _, r)| r.verdict());
        for (what, ok) in [("star", star), ("bullet", bullet), ("copseudotwistor", twistor), ("dendriform", dend)] {
            if !matches!(ok, Ok(true)) {
                bad.entry(what).or_default().push(id.clone());
            }
        }
    }
    let printed = cosystems.iter().filter(|(id, _)| !id.contains('/')).count();
    let failures: Vec<String> = bad.iter().map(|(k, ids)| format!("{k} fails on {}", ids.join(" "))).collect();
    Verdict::new(
        printed > 0 && bad.is_empty(),
        format!(
            "{} cosystems ({printed} printed, {} from weights): {}",
            cosystems.len(),
            cosystems.len() - printed,
            if failures.is_empty() {
                "Δ* coassociative, Δ• pre-Lie, copseudotwistor squares and Δ* = F∘Δ, dendriform with Δ* = Δr + Δl".to_string()
            } else {
                failures.join("; ")
            }
        ),
    )
}

/// The four bisystems from every passing weighted bialgebra entry.
pub fn weight_degenerations(run: &CorpusRun) -> Verdict {
    let mut entries = 0;
    let mut bisystems = 0;
    let mut bad = Vec::new();
    for e in run.passing().filter(|e| e.claim.checker == "rb-bialgebra") {
        entries += 1;
        let s = &*e.structure;
        let ops = &e.claim.ops;
        let w = |i: usize| s.scalar(&e.claim.weights[i]).expect("validated");
        let h = s.bialgebra().expect("bialgebra entry");
        let (r, q) = (s.operator(&ops[0]).unwrap(), s.operator(&ops[1]).unwrap());
        match weight_to_bisystems(&h, r, &w(0), q, &w(1)) {
            Ok(all) => {
                for b in &all {
                    bisystems += 1;
                    if !check_rb_bisystem(b).map(|r| r.verdict()).unwrap_or(false) {
                        bad.push(e.id.clone());
                    }
                }
            }
            Err(err) => bad.push(format!("{}: {err}", e.id)),
        }
    }
    Verdict::new(
        entries > 0 && bad.is_empty(),
        format!(
            "{entries} weighted entries, {bisystems} bisystems checked, {} failures{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join(" ")) }
        ),
    )
}

/// The two T₂ presentations and the 2-dimensional grouplike coalgebra.
pub fn carriers(entries: &[CorpusEntry]) -> Vec<Carrier> {
    let coalgebra_of = |id: &str| -> Coalgebra {
        let e = entries.iter().find(|e| e.id == id).expect("structure entry");
        e.structure.coalgebra().expect("has a coalgebra")
    };
    vec![
        Carrier::new("T2 (u1⊗u3 + u3⊗u2)", coalgebra_of("ex5.9.sigma")),
        Carrier::new("T2 (u3⊗u1 + u2⊗u3)", coalgebra_of("sec6.dim4.structure")),
        Carrier::new("K×K", coalgebra_of("sec6.dim2.structure")),
    ]
}

pub const POOL: usize = 60;

#[derive(Default)]
pub struct Pool {
    pub positive: usize,
    pub negative: usize,
    pub disagree: usize,
}

impl Pool {
    fn record(&mut self, library: bool, oracle: bool) {
        if library != oracle {
            self.disagree += 1;
        } else if library {
            self.positive += 1;
        } else {
            self.negative += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.disagree == 0 && self.positive > 0 && self.negative > 0 && self.positive + self.negative >= 50
    }
}

/// Pair check against the pair identities by loops, Yang-Baxter check against the
/// coquasitriangular identities, the principal associativity criterion
/// against direct associativity, and the cosystem check against the
/// dendriform equations on non-degenerate carriers.
pub fn biconditional_pools(run: &CorpusRun, seed: u64) -> (bool, Vec<(String, Pool)>) {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for c in carriers(&run.entries) {
        let d = &c.dense;
        let form = |m: &super::Mat| BilinearForm::new(to_tensor(m)).unwrap();
        let op = |m: &super::Mat| LinearOp::new(to_tensor(m)).unwrap();

        let mut pair = Pool::default();
        let mut criterion = Pool::default();
        for _ in 0..POOL {
            let (s, t) = c.pair(&mut r);
            let p = CYBP::new(c.coalg.clone(), form(&s), form(&t)).unwrap();
            pair.record(check_cybp(&p).verdict(), d.coqt(&s, &t));
            let residual = principal_associator_residual(&c.coalg, &p.sigma, &p.tau).unwrap();
            criterion.record(residual.is_zero(), d.principal_associative(&s, &t));
        }

        let mut aybe = Pool::default();
        for _ in 0..POOL {
            let s = c.form(&mut r);
            aybe.record(check_aybe(&c.coalg, &form(&s)).unwrap().verdict(), d.coqt(&s, &s));
        }

        let mut dend = Pool::default();
        let nondegenerate = matches!(check_nondegenerate_coalgebra(&c.coalg), Ok(true));
        for _ in 0..POOL {
            let (q, t) = c.operators(&mut r);
            let cosystem = check_rb_cosystem(&c.coalg, &op(&q), &op(&t)).unwrap().verdict();
            assert_eq!(cosystem, d.rb_cosystem(&q, &t), "cosystem oracle on {}", c.name);
            let (dr, dl) = d.dendriform_halves(&q, &t);
            let dendriform = check_dendriform(&dr, &dl).unwrap().verdict();
            if nondegenerate {
                dend.record(cosystem, dendriform);
            } else if cosystem && !dendriform {
                dend.disagree += 1;
            }
        }

        out.push((format!("{} pair ⇔ pair identities", c.name), pair));
        out.push((format!("{} Yang-Baxter ⇔ coqt identities", c.name), aybe));
        out.push((format!("{} principal criterion ⇔ associativity", c.name), criterion));
        if nondegenerate {
            out.push((format!("{} cosystem ⇔ dendriform", c.name), dend));
        }
    }
    let ok = out.iter().all(|(_, p)| p.ok()) && out.iter().any(|(n, _)| n.contains("dendriform"));
    (ok, out)
}

pub fn biconditionals(run: &CorpusRun) -> Verdict {
    let (ok, pools) = biconditional_pools(run, 5);
    let parts: Vec<String> = pools
        .iter()
        .filter(|(_, p)| !p.ok())
        .map(|(n, p)| format!("{n}: {}+/{}-/{} disagree", p.positive, p.negative, p.disagree))
        .collect();
    let agree: usize = pools.iter().map(|(_, p)| p.positive + p.negative).sum();
    let pos: usize = pools.iter().map(|(_, p)| p.positive).sum();
    Verdict::new(
        ok,
        if parts.is_empty() {
            format!("{} pools, {agree} agreeing verdicts ({pos} positive)", pools.len())
        } else {
            parts.join("; ")
        },
    )
}

/// The infinitesimal bialgebra σ = ε⊗τ₀ on T₂, after checking its hypothesis.
pub fn example_bialgebra(run: &CorpusRun) -> Result<rbx_core::yang_baxter::CovariantBialgebra, String> {
    let e = run.entries.iter().find(|e| e.id == "ex5.9.sigma").expect("ex5.9 entry");
    let s = &*e.structure;
    let c = s.coalgebra().unwrap();
    let eps = c.counit().expect("counital").clone();
    let tau0 = rbx_core::Tensor::basis(4, 2);
    let d = Dense::from_coalgebra(&c).unwrap();
    let t0: Vec<super::Q> = (0..4).map(|i| tau0.get(&[i]).eval(&[]).unwrap()).collect();
    if !d.square_zero(&t0) {
        return Err("τ0(c1)τ0(c2) ≠ 0".into());
    }
    let sigma = BilinearForm::product(&eps, &tau0).map_err(|e| e.to_string())?;
    if sigma != *s.form("sigma").unwrap() {
        return Err("σ = ε⊗τ0 differs from the corpus form".into());
    }
    let cb = principal_bialgebra(&c, &sigma, &sigma).map_err(|e| e.to_string())?;
    if !check_covariant_bialgebra(&cb).verdict() {
        return Err("(T2, μ_σ) is not an infinitesimal bialgebra".into());
    }
    Ok(cb)
}

/// D̂(T₂): coassociativity, the Yang-Baxter equation for its σ, and μ_σ
/// against the principal product.
pub fn dhat_pipeline(run: &CorpusRun) -> Verdict {
    let start = Instant::now();
    let cb = match example_bialgebra(run) {
        Ok(cb) => cb,
        Err(why) => return Verdict::new(false, why),
    };
    let (dh, _, _, rep) = match dhat(&cb) {
        Ok(x) => x,
        Err(e) => return Verdict::new(false, format!("D̂ construction failed: {e}")),
    };
    let secs = start.elapsed().as_secs_f64();
    let mut parts = vec![format!("hypothesis τ0(c1)τ0(c2) = 0 holds; D̂ has dimension {}", dh.dim())];
    for (label, prefix) in [("coassociative", "coassociativity"), ("Yang-Baxter", "aybe: "), ("μ_σ principal", "μ_σ = ")] {
        let sec = rep.sections.iter().find(|s| s.name.starts_with(prefix));
        let state = match sec {
            Some(s) if s.passed() => "yes".to_string(),
            Some(s) => format!("no ({} residuals)", s.failures.len()),
            None => "missing".to_string(),
        };
        parts.push(format!("{label}: {state}"));
    }
    parts.push(format!("{secs:.1} s"));
    let core_ok = rep
        .sections
        .iter()
        .filter(|s| !s.informational)
        .all(|s| s.passed());
    Verdict::new(core_ok && secs < 10.0, parts.join("; "))
}

/// Duals, ζ and ξ, the canonical double and its tensor coalgebra on the
/// ex5.9.sigma instance.
pub fn duals_and_morphisms(run: &CorpusRun) -> Verdict {
    let cb = match example_bialgebra(run) {
        Ok(cb) => cb,
        Err(why) => return Verdict::new(false, why),
    };
    let sigma = {
        let e = run.entries.iter().find(|e| e.id == "ex5.9.sigma").unwrap();
        e.structure.form("sigma").unwrap().clone()
    };
    let mut parts = Vec::new();
    let mut ok = true;
    let mut note = |name: &str, r: Result<bool, Error>| {
        let pass = matches!(r, Ok(true));
        ok &= pass;
        parts.push(format!("{name} {}", if pass { "ok" } else { "FAILS" }));
    };
    note(
        "C′ and ′C infinitesimal",
        dual_inf_bialgebras(&cb).map(|(a, b)| check_covariant_bialgebra(&a).verdict() && check_covariant_bialgebra(&b).verdict()),
    );
    note("ζ, ξ morphisms", zeta_xi_maps(&cb.coalg, &sigma).map(|(_, _, r)| r.verdict()));
    match canonical_double(&cb) {
        Ok(d) => {
            note("double coalgebra", check_double_coalgebra(&d).map(|r| r.verdict()));
            note(
                "tensor coalgebra coassociative",
                tensor_coalgebra(&d).map(|c| check_coassociativity(&c).verdict()),
            );
        }
        Err(e) => note("canonical double", Err(e)),
    }
    Verdict::new(ok, parts.join(", "))
}

/// Every symbolic PASS re-passes at five random points where no
/// denominator vanishes.
pub fn specialization(run: &CorpusRun, points: usize) -> Verdict {
    let mut r = rng(23);
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in run.passing() {
        let len = e.structure.ring.len();
        let mut done = 0;
        let mut tries = 0;
        while done < points && tries < 200 {
            tries += 1;
            let at = point(&mut r, len);
            match e.run_specialized(&assignments(&at)) {
                Err(Error::DivisionByZero) => continue,
                Err(err) => {
                    bad.push(format!("{}: {err}", e.id));
                    break;
                }
                Ok(rep) => {
                    done += 1;
                    checked += 1;
                    if !rep.verdict() {
                        bad.push(e.id.clone());
                        break;
                    }
                }
            }
        }
        if done < points && bad.last() != Some(&e.id) {
            bad.push(format!("{}: only {done} defined points", e.id));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{checked} specialized checks over {} entries, {} failures{}",
            run.passing().count(),
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join(" ")) }
        ),
    )
}
