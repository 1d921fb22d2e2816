//! Random pools of forms and operator pairs on a fixed constant coalgebra.
//! Each pool mixes the known solution families with random and perturbed
//! candidates, so both verdicts occur.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rbx_core::structures::Coalgebra;

use super::{mat_add, mat_scale, outer, small, Dense, Mat, Q};

pub struct Carrier {
    pub name: String,
    pub coalg: Coalgebra,
    pub dense: Dense,
    grouplike: Vec<Vec<Q>>,
    square_zero_supports: Vec<Vec<usize>>,
}

fn indicator(n: usize, on: &[usize]) -> Vec<Q> {
    (0..n).map(|i| if on.contains(&i) { Q::one() } else { Q::zero() }).collect()
}

impl Carrier {
    pub fn new(name: &str, coalg: Coalgebra) -> Carrier {
        let dense = Dense::from_coalgebra(&coalg).expect("constant coalgebra");
        let n = dense.n;
        let grouplike = (0..1usize << n)
            .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .map(|on| indicator(n, &on))
            .filter(|a| dense.grouplike(a))
            .collect();
        let mut square_zero_supports = Vec::new();
        for i in 0..n {
            for j in i..n {
                let on = if i == j { vec![i] } else { vec![i, j] };
                if dense.square_zero(&indicator(n, &on)) {
                    square_zero_supports.push(on);
                }
            }
        }
        Carrier {
            name: name.to_string(),
            coalg,
            dense,
            grouplike,
            square_zero_supports,
        }
    }

    pub fn n(&self) -> usize {
        self.dense.n
    }

    fn zeros(&self) -> Mat {
        vec![vec![Q::zero(); self.n()]; self.n()]
    }

    fn counit(&self) -> Vec<Q> {
        self.dense.counit.clone().unwrap_or_else(|| vec![Q::zero(); self.n()])
    }

    /// A functional with φ(c1)φ(c2) = 0, zero if none was found.
    fn square_zero(&self, rng: &mut ChaCha8Rng) -> Vec<Q> {
        for _ in 0..20 {
            let Some(on) = self.square_zero_supports.choose(rng) else { break };
            let phi: Vec<Q> = (0..self.n())
                .map(|i| if on.contains(&i) { small(rng) } else { Q::zero() })
                .collect();
            if self.dense.square_zero(&phi) {
                return phi;
            }
        }
        vec![Q::zero(); self.n()]
    }

    pub fn random_form(&self, rng: &mut ChaCha8Rng) -> Mat {
        let n = self.n();
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(0.25) { small(rng) } else { Q::zero() })
                    .collect()
            })
            .collect()
    }

    fn perturb(&self, m: &Mat, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = m.clone();
        let (i, j) = (rng.gen_range(0..self.n()), rng.gen_range(0..self.n()));
        m[i][j] += small(rng);
        m
    }

    /// ε⊗φ with φ square-zero.
    fn counit_form(&self, rng: &mut ChaCha8Rng) -> Mat {
        outer(&self.counit(), &self.square_zero(rng))
    }

    /// σ = kε⊗α + (1−k)α⊗ε and τ = σ − ε⊗ε for a grouplike functional α.
    fn character_pair(&self, rng: &mut ChaCha8Rng) -> (Mat, Mat) {
        let e = self.counit();
        let Some(a) = self.grouplike.choose(rng) else {
            return (self.zeros(), self.zeros());
        };
        let s = if rng.gen_bool(0.5) { outer(&e, a) } else { outer(a, &e) };
        let t = mat_add(&s, &mat_scale(&outer(&e, &e), &-Q::one()));
        (s, t)
    }

    pub fn form(&self, rng: &mut ChaCha8Rng) -> Mat {
        match rng.gen_range(0..5) {
            0 => self.zeros(),
            1 | 2 => self.counit_form(rng),
            3 => self.random_form(rng),
            _ => {
                let base = self.counit_form(rng);
                self.perturb(&base, rng)
            }
        }
    }

    pub fn pair(&self, rng: &mut ChaCha8Rng) -> (Mat, Mat) {
        match rng.gen_range(0..7) {
            0 => (self.zeros(), self.zeros()),
            1 => {
                let s = self.counit_form(rng);
                (s.clone(), s)
            }
            2 => self.character_pair(rng),
            3 => {
                let (x, z) = (self.square_zero(rng), self.square_zero(rng));
                (outer(&x, &z), outer(&z, &x))
            }
            4 => (self.random_form(rng), self.random_form(rng)),
            5 => {
                let (s, t) = self.character_pair(rng);
                (self.perturb(&s, rng), t)
            }
            _ => {
                let s = self.counit_form(rng);
                (s.clone(), self.perturb(&s, rng))
            }
        }
    }

    /// Q(c) = σ(c1,c3)c2 by loops.
    fn pair_operator(&self, s: &Mat) -> Mat {
        let n = self.n();
        let d: Vec<Mat> = (0..n).map(|i| self.dense.delta(&self.dense.basis(i))).collect();
        let mut out = self.zeros();
        for i in 0..n {
            for x in 0..n {
                for c in 0..n {
                    if d[i][x][c].is_zero() {
                        continue;
                    }
                    for a in 0..n {
                        for b in 0..n {
                            out[b][i] += &d[i][x][c] * &d[x][a][b] * &s[a][c];
                        }
                    }
                }
            }
        }
        out
    }

    /// A candidate (Q, T): from a pair that passes the plain-loop pair
    /// equations, or random.
    pub fn operators(&self, rng: &mut ChaCha8Rng) -> (Mat, Mat) {
        match rng.gen_range(0..4) {
            0 | 1 => {
                for _ in 0..20 {
                    let (s, t) = self.pair(rng);
                    if self.dense.coqt(&s, &t) {
                        let (q, t) = (self.pair_operator(&s), self.pair_operator(&t));
                        return if rng.gen_bool(0.7) { (q, t) } else { (self.perturb(&q, rng), t) };
                    }
                }
                (self.zeros(), self.zeros())
            }
            2 => (self.random_form(rng), self.random_form(rng)),
            _ => {
                let q = self.random_form(rng);
                (q.clone(), mat_add(&q, &mat_scale(&identity(self.n()), &small(rng))))
            }
        }
    }
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| indicator(n, &[i])).collect()
}
