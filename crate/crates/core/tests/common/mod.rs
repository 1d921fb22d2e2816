//! Shared test helpers: random rational points and a plain-loop oracle that
//! evaluates the claimed identities numerically, without tensors or einsum.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rbx_core::corpus::CorpusEntry;
use rbx_core::format::Structure;
use rbx_core::structures::Coalgebra;
use rbx_core::{Error, Scalar, Tensor};

pub mod criteria;
pub mod pools;

pub type Q = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A small nonzero rational.
pub fn small(rng: &mut ChaCha8Rng) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-9..=9);
    }
    q(n, rng.gen_range(1..=7))
}

pub fn point(rng: &mut ChaCha8Rng, len: usize) -> Vec<Q> {
    (0..len).map(|_| small(rng)).collect()
}

pub fn assignments(values: &[Q]) -> Vec<(usize, Q)> {
    values.iter().cloned().enumerate().collect()
}

/// Structure constants evaluated at a rational point.
pub struct Dense {
    pub n: usize,
    /// `mul[i][j][k]`: coefficient of e_k in e_i·e_j.
    pub mul: Option<Vec<Vec<Vec<Q>>>>,
    /// `comul[i][j][k]`: coefficient of e_j⊗e_k in Δ(e_i).
    pub comul: Option<Vec<Vec<Vec<Q>>>>,
    pub unit: Option<Vec<Q>>,
    pub counit: Option<Vec<Q>>,
}

pub type Mat = Vec<Vec<Q>>;

fn ev(s: &Scalar, at: &[Q]) -> Result<Q, Error> {
    s.eval(at)
}

pub fn eval_mat(t: &Tensor, at: &[Q]) -> Result<Mat, Error> {
    let n = t.shape()[0];
    let m = t.shape()[1];
    (0..n)
        .map(|i| (0..m).map(|j| ev(t.get(&[i, j]), at)).collect())
        .collect()
}

fn eval_vec(t: &Tensor, at: &[Q]) -> Result<Vec<Q>, Error> {
    (0..t.shape()[0]).map(|i| ev(t.get(&[i]), at)).collect()
}

impl Dense {
    pub fn new(s: &Structure, at: &[Q]) -> Result<Dense, Error> {
        let n = s.dim;
        let cube = |t: &Tensor, f: &dyn Fn(usize, usize, usize) -> [usize; 3]| -> Result<Vec<Vec<Vec<Q>>>, Error> {
            let mut out = vec![vec![vec![Q::zero(); n]; n]; n];
            for (i, plane) in out.iter_mut().enumerate() {
                for (j, row) in plane.iter_mut().enumerate() {
                    for (k, x) in row.iter_mut().enumerate() {
                        *x = ev(t.get(&f(i, j, k)), at)?;
                    }
                }
            }
            Ok(out)
        };
        Ok(Dense {
            n,
            mul: s.mul.as_ref().map(|t| cube(t, &|i, j, k| [k, i, j])).transpose()?,
            comul: s.comul.as_ref().map(|t| cube(t, &|i, j, k| [j, k, i])).transpose()?,
            unit: s.unit.as_ref().map(|t| eval_vec(t, at)).transpose()?,
            counit: s.counit.as_ref().map(|t| eval_vec(t, at)).transpose()?,
        })
    }

    /// A coalgebra with constant coefficients.
    pub fn from_coalgebra(c: &Coalgebra) -> Result<Dense, Error> {
        let n = c.dim();
        let mut comul = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, plane) in comul.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, x) in row.iter_mut().enumerate() {
                    *x = ev(c.comul().get(&[j, k, i]), &[])?;
                }
            }
        }
        Ok(Dense {
            n,
            mul: None,
            comul: Some(comul),
            unit: None,
            counit: c.counit().map(|t| eval_vec(t, &[])).transpose()?,
        })
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        (0..self.n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
    }

    pub fn prod(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mul = self.mul.as_ref().expect("algebra");
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if b[j].is_zero() {
                    continue;
                }
                for k in 0..self.n {
                    out[k] += &a[i] * &b[j] * &mul[i][j][k];
                }
            }
        }
        out
    }

    /// Δ(v) as an n×n matrix of e_j⊗e_k coefficients.
    pub fn delta(&self, v: &[Q]) -> Mat {
        let comul = self.comul.as_ref().expect("coalgebra");
        let mut out = vec![vec![Q::zero(); self.n]; self.n];
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                for k in 0..self.n {
                    out[j][k] += &v[i] * &comul[i][j][k];
                }
            }
        }
        out
    }

    /// (a ⊗ b) applied to a two-leg element; `None` is the identity.
    fn both(&self, a: Option<&Mat>, b: Option<&Mat>, m: &Mat) -> Mat {
        let n = self.n;
        let mut out = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                if m[j][k].is_zero() {
                    continue;
                }
                for x in 0..n {
                    let ca = match a {
                        Some(a) => a[x][j].clone(),
                        None if x == j => Q::one(),
                        None => continue,
                    };
                    if ca.is_zero() {
                        continue;
                    }
                    for y in 0..n {
                        let cb = match b {
                            Some(b) => b[y][k].clone(),
                            None if y == k => Q::one(),
                            None => continue,
                        };
                        out[x][y] += &m[j][k] * &ca * cb;
                    }
                }
            }
        }
        out
    }

    fn all_zero(m: &Mat) -> bool {
        m.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    fn add(a: &Mat, b: &Mat) -> Mat {
        a.iter()
            .zip(b)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect()
    }

    fn sub(a: &Mat, b: &Mat) -> Mat {
        a.iter()
            .zip(b)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
            .collect()
    }

    fn scale(a: &Mat, k: &Q) -> Mat {
        a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
    }

    pub fn rb_algebra(&self, r: &Mat, lambda: &Q) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                let (x, y) = (self.basis(a), self.basis(b));
                let (rx, ry) = (apply(r, &x), apply(r, &y));
                let lhs = self.prod(&rx, &ry);
                let inner: Vec<Q> = self
                    .prod(&x, &ry)
                    .iter()
                    .zip(self.prod(&rx, &y))
                    .zip(self.prod(&x, &y))
                    .map(|((u, v), w)| u + v + lambda * w)
                    .collect();
                if lhs != apply(r, &inner) {
                    return false;
                }
            }
        }
        true
    }

    pub fn rb_coalgebra(&self, qm: &Mat, gamma: &Q) -> bool {
        for c in 0..self.n {
            let x = self.basis(c);
            let lhs = self.both(Some(qm), Some(qm), &self.delta(&x));
            let dq = self.delta(&apply(qm, &x));
            let rhs = Self::add(
                &Self::add(&self.both(None, Some(qm), &dq), &self.both(Some(qm), None, &dq)),
                &Self::scale(&dq, gamma),
            );
            if !Self::all_zero(&Self::sub(&lhs, &rhs)) {
                return false;
            }
        }
        true
    }

    pub fn rb_system(&self, r: &Mat, s: &Mat) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                let (x, y) = (self.basis(a), self.basis(b));
                let inner: Vec<Q> = self
                    .prod(&apply(r, &x), &y)
                    .iter()
                    .zip(self.prod(&x, &apply(s, &y)))
                    .map(|(u, v)| u + v)
                    .collect();
                if self.prod(&apply(r, &x), &apply(r, &y)) != apply(r, &inner) {
                    return false;
                }
                if self.prod(&apply(s, &x), &apply(s, &y)) != apply(s, &inner) {
                    return false;
                }
            }
        }
        true
    }

    pub fn rb_cosystem(&self, qm: &Mat, t: &Mat) -> bool {
        for c in 0..self.n {
            let x = self.basis(c);
            let d = self.delta(&x);
            for (op, lhs) in [(qm, self.both(Some(qm), Some(qm), &d)), (t, self.both(Some(t), Some(t), &d))] {
                let dop = self.delta(&apply(op, &x));
                let rhs = Self::add(&self.both(Some(qm), None, &dop), &self.both(None, Some(t), &dop));
                if !Self::all_zero(&Self::sub(&lhs, &rhs)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn bialgebra(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (self.basis(a), self.basis(b));
                for c in 0..n {
                    let z = self.basis(c);
                    if self.prod(&self.prod(&x, &y), &z) != self.prod(&x, &self.prod(&y, &z)) {
                        return false;
                    }
                }
                // Δ(xy) = Σ x1y1 ⊗ x2y2
                let (dx, dy) = (self.delta(&x), self.delta(&y));
                let mut rhs = vec![vec![Q::zero(); n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let w = &dx[i][j] * &dy[k][l];
                                if w.is_zero() {
                                    continue;
                                }
                                let left = self.prod(&self.basis(i), &self.basis(k));
                                let right = self.prod(&self.basis(j), &self.basis(l));
                                for p in 0..n {
                                    for r in 0..n {
                                        rhs[p][r] += &w * &left[p] * &right[r];
                                    }
                                }
                            }
                        }
                    }
                }
                if self.delta(&self.prod(&x, &y)) != rhs {
                    return false;
                }
            }
            // coassociativity on e_a
            let d = self.delta(&self.basis(a));
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut l = Q::zero();
                        let mut r = Q::zero();
                        for x in 0..n {
                            l += &d[x][k] * &self.delta(&self.basis(x))[i][j];
                            r += &d[i][x] * &self.delta(&self.basis(x))[j][k];
                        }
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for a in 0..n {
                let x = self.basis(a);
                if self.prod(u, &x) != x || self.prod(&x, u) != x {
                    return false;
                }
            }
        }
        if let Some(e) = &self.counit {
            for a in 0..n {
                let d = self.delta(&self.basis(a));
                let left: Vec<Q> = (0..n).map(|k| (0..n).map(|j| &e[j] * &d[j][k]).sum()).collect();
                let right: Vec<Q> = (0..n).map(|j| (0..n).map(|k| &e[k] * &d[j][k]).sum()).collect();
                if left != self.basis(a) || right != self.basis(a) {
                    return false;
                }
            }
        }
        true
    }

    /// σ(c1,e)σ(c2,d) − σ(c,d1)σ(d2,e) + σ(d,e1)σ(c,e2) = 0.
    pub fn aybe(&self, s: &Mat) -> bool {
        let n = self.n;
        for c in 0..n {
            for d in 0..n {
                for e in 0..n {
                    let (dc, dd, de) = (
                        self.delta(&self.basis(c)),
                        self.delta(&self.basis(d)),
                        self.delta(&self.basis(e)),
                    );
                    let mut v = Q::zero();
                    for x in 0..n {
                        for y in 0..n {
                            v += &dc[x][y] * &s[x][e] * &s[y][d];
                            v -= &dd[x][y] * &s[c][x] * &s[y][e];
                            v += &de[x][y] * &s[d][x] * &s[c][y];
                        }
                    }
                    if !v.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Dense {
    /// μ(e_c, e_d) = c1σ(c2,d) − τ(c,d1)d2.
    pub fn principal(&self, s: &Mat, t: &Mat, c: usize, d: usize) -> Vec<Q> {
        let (dc, dd) = (self.delta(&self.basis(c)), self.delta(&self.basis(d)));
        let mut out = vec![Q::zero(); self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                out[x] += &dc[x][y] * &s[y][d];
                out[y] -= &t[c][x] * &dd[x][y];
            }
        }
        out
    }

    fn principal_vec(&self, s: &Mat, t: &Mat, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let w = &a[i] * &b[j];
                if w.is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(self.principal(s, t, i, j)) {
                    *o += &w * v;
                }
            }
        }
        out
    }

    pub fn principal_associative(&self, s: &Mat, t: &Mat) -> bool {
        let n = self.n;
        for c in 0..n {
            for d in 0..n {
                let cd = self.principal(s, t, c, d);
                for e in 0..n {
                    let de = self.principal(s, t, d, e);
                    let left = self.principal_vec(s, t, &cd, &self.basis(e));
                    let right = self.principal_vec(s, t, &self.basis(c), &de);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// σ(c, de) = σ(c1,e)σ(c2,d) and τ(cd, e) = −τ(d,e1)τ(c,e2), with the
    /// principal product.
    pub fn coqt(&self, s: &Mat, t: &Mat) -> bool {
        let n = self.n;
        for c in 0..n {
            let dc = self.delta(&self.basis(c));
            for d in 0..n {
                let cd = self.principal(s, t, c, d);
                for e in 0..n {
                    let de = self.principal(s, t, d, e);
                    let lhs: Q = (0..n).map(|x| &s[c][x] * &de[x]).sum();
                    let mut rhs = Q::zero();
                    let lhs2: Q = (0..n).map(|x| &cd[x] * &t[x][e]).sum();
                    let mut rhs2 = Q::zero();
                    let ee = self.delta(&self.basis(e));
                    for x in 0..n {
                        for y in 0..n {
                            rhs += &dc[x][y] * &s[x][e] * &s[y][d];
                            rhs2 -= &ee[x][y] * &t[d][x] * &t[c][y];
                        }
                    }
                    if lhs != rhs || lhs2 != rhs2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Δ_r(c) = c1⊗T(c2) and Δ_l(c) = Q(c1)⊗c2, in the comultiplication
    /// layout.
    pub fn dendriform_halves(&self, qm: &Mat, t: &Mat) -> (Tensor, Tensor) {
        let n = self.n;
        let d: Vec<Mat> = (0..n).map(|i| self.delta(&self.basis(i))).collect();
        let dr = Tensor::from_fn(&[n, n, n], |ix| {
            let (j, k, i) = (ix[0], ix[1], ix[2]);
            Scalar::from_rational((0..n).map(|y| &d[i][j][y] * &t[k][y]).sum())
        });
        let dl = Tensor::from_fn(&[n, n, n], |ix| {
            let (j, k, i) = (ix[0], ix[1], ix[2]);
            Scalar::from_rational((0..n).map(|x| &d[i][x][k] * &qm[j][x]).sum())
        });
        (dr, dl)
    }

    /// φ(c1)φ(c2) = 0 for every basis c.
    pub fn square_zero(&self, phi: &[Q]) -> bool {
        (0..self.n).all(|c| {
            let d = self.delta(&self.basis(c));
            let v: Q = (0..self.n)
                .flat_map(|x| (0..self.n).map(move |y| (x, y)))
                .map(|(x, y)| &d[x][y] * &phi[x] * &phi[y])
                .sum();
            v.is_zero()
        })
    }

    /// α(c1)α(c2) = α(c) for every basis c.
    pub fn grouplike(&self, alpha: &[Q]) -> bool {
        (0..self.n).all(|c| {
            let d = self.delta(&self.basis(c));
            let v: Q = (0..self.n)
                .flat_map(|x| (0..self.n).map(move |y| (x, y)))
                .map(|(x, y)| &d[x][y] * &alpha[x] * &alpha[y])
                .sum();
            v == alpha[c]
        })
    }
}

pub fn to_tensor(m: &Mat) -> Tensor {
    Tensor::from_fn(&[m.len(), m[0].len()], |ix| Scalar::from_rational(m[ix[0]][ix[1]].clone()))
}

pub fn outer(a: &[Q], b: &[Q]) -> Mat {
    a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect()
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &Mat, k: &Q) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn apply(m: &Mat, v: &[Q]) -> Vec<Q> {
    (0..m.len())
        .map(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// The entry's claimed checker evaluated by the plain-loop oracle at `at`.
pub fn oracle_verdict(entry: &CorpusEntry, at: &[Q]) -> Result<bool, Error> {
    let s = &*entry.structure;
    let dense = Dense::new(s, at)?;
    let op = |i: usize| eval_mat(s.operator(&entry.claim.ops[i]).unwrap().mat(), at);
    let weight = |i: usize| s.scalar(&entry.claim.weights[i]).and_then(|w| w.eval(at));
    let form = |i: usize| eval_mat(s.form(&entry.claim.forms[i]).unwrap().mat(), at);
    Ok(match entry.claim.checker.as_str() {
        "bialgebra" => dense.bialgebra(),
        "rb-algebra" => dense.rb_algebra(&op(0)?, &weight(0)?),
        "rb-coalgebra" => dense.rb_coalgebra(&op(0)?, &weight(0)?),
        "rb-bialgebra" => dense.rb_algebra(&op(0)?, &weight(0)?) && dense.rb_coalgebra(&op(1)?, &weight(1)?),
        "rb-system" => dense.rb_system(&op(0)?, &op(1)?),
        "rb-cosystem" => dense.rb_cosystem(&op(0)?, &op(1)?),
        "rb-bisystem" => dense.rb_system(&op(0)?, &op(1)?) && dense.rb_cosystem(&op(2)?, &op(3)?),
        "aybe" => dense.aybe(&form(0)?),
        other => panic!("no oracle for {other}"),
    })
}

/// A random point at which every coefficient of the entry is defined.
pub fn defined_point(entry: &CorpusEntry, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let len = entry.structure.ring.len();
    for _ in 0..100 {
        let at = point(rng, len);
        match oracle_verdict(entry, &at) {
            Err(Error::DivisionByZero) => continue,
            Err(e) => panic!("{}: {e}", entry.id),
            Ok(_) => return at,
        }
    }
    panic!("{}: no defined point found", entry.id)
}
