//! Sparse Einstein summation.
//!
//! Operands are joined pairwise left to right on their shared labels; a label
//! is summed out as soon as neither a later operand nor the output uses it.
//! Only nonzero entries are visited, which keeps identities on the 16-dim
//! doubles cheap even though their iterated coproducts are large as dense
//! arrays.

use std::collections::HashMap;

use super::Tensor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct Sparse {
    labels: Vec<usize>,
    entries: Vec<(Vec<usize>, Scalar)>,
}

/// `einsum("xyc,xe,yd->cde", &[&delta, &sigma, &sigma])`.
///
/// Letters name legs; a letter repeated across operands is summed unless it
/// appears after `->`. A letter repeated within one operand takes the diagonal.
pub fn einsum(spec: &str, operands: &[&Tensor]) -> Result<Tensor> {
    let (lhs, rhs) = spec
        .split_once("->")
        .ok_or_else(|| Error::shape(format!("einsum spec `{spec}` lacks `->`")))?;
    let inputs: Vec<&str> = lhs.split(',').map(str::trim).collect();
    if inputs.len() != operands.len() {
        return Err(Error::shape(format!(
            "einsum spec `{spec}` names {} operands, got {}",
            inputs.len(),
            operands.len()
        )));
    }
    let label = |c: char| c as usize;
    let labelled: Vec<Vec<usize>> = inputs.iter().map(|s| s.chars().map(label).collect()).collect();
    let out: Vec<usize> = rhs.trim().chars().map(label).collect();
    let pairs: Vec<(&Tensor, &[usize])> = operands
        .iter()
        .zip(&labelled)
        .map(|(t, l)| (*t, l.as_slice()))
        .collect();
    einsum_labels(&pairs, &out)
}

pub(crate) fn einsum_labels(operands: &[(&Tensor, &[usize])], out: &[usize]) -> Result<Tensor> {
    let mut extent: HashMap<usize, usize> = HashMap::new();
    for (t, labels) in operands {
        if labels.len() != t.rank() {
            return Err(Error::shape(format!(
                "{} labels for a rank-{} tensor",
                labels.len(),
                t.rank()
            )));
        }
        for (&l, &n) in labels.iter().zip(t.shape()) {
            if *extent.entry(l).or_insert(n) != n {
                return Err(Error::shape(format!("label {l} bound to extents {} and {n}", extent[&l])));
            }
        }
    }
    for (i, l) in out.iter().enumerate() {
        if !extent.contains_key(l) || out[..i].contains(l) {
            return Err(Error::shape("einsum output labels must be distinct input labels"));
        }
    }
    let out_shape: Vec<usize> = out.iter().map(|l| extent[l]).collect();

    let needed_after = |k: usize| -> Vec<usize> {
        let mut v: Vec<usize> = out.to_vec();
        for (_, labels) in &operands[k + 1..] {
            v.extend_from_slice(labels);
        }
        v
    };

    let Some(((first, first_labels), rest)) = operands.split_first() else {
        return Ok(Tensor::zeros(&out_shape));
    };
    let mut cur = sparse(first, first_labels);
    cur = reduce(cur, &needed_after(0));
    for (k, (t, labels)) in rest.iter().enumerate() {
        let b = sparse(t, labels);
        cur = join(&cur, &b, &needed_after(k + 1));
        if cur.entries.is_empty() {
            break;
        }
    }

    let mut result = Tensor::zeros(&out_shape);
    if cur.entries.is_empty() {
        return Ok(result);
    }
    let pos: Vec<usize> = out
        .iter()
        .map(|l| cur.labels.iter().position(|x| x == l).expect("output label kept"))
        .collect();
    let mut idx = vec![0; out.len()];
    for (ix, v) in cur.entries {
        for (slot, &p) in idx.iter_mut().zip(&pos) {
            *slot = ix[p];
        }
        result.set(&idx, v);
    }
    Ok(result)
}

/// Nonzero entries over the distinct labels, restricted to the diagonal of
/// repeated labels.
fn sparse(t: &Tensor, labels: &[usize]) -> Sparse {
    let mut uniq: Vec<usize> = Vec::new();
    let mut slot: Vec<usize> = Vec::with_capacity(labels.len());
    for &l in labels {
        match uniq.iter().position(|&u| u == l) {
            Some(p) => slot.push(p),
            None => {
                slot.push(uniq.len());
                uniq.push(l);
            }
        }
    }
    let mut entries = Vec::new();
    'outer: for (ix, v) in t.nonzero_entries() {
        let mut key = vec![usize::MAX; uniq.len()];
        for (&s, &i) in slot.iter().zip(&ix) {
            if key[s] != usize::MAX && key[s] != i {
                continue 'outer;
            }
            key[s] = i;
        }
        entries.push((key, v.clone()));
    }
    Sparse {
        labels: uniq,
        entries,
    }
}

/// Sums out every label not in `keep`.
fn reduce(s: Sparse, keep: &[usize]) -> Sparse {
    if s.labels.iter().all(|l| keep.contains(l)) {
        return s;
    }
    let kept: Vec<usize> = (0..s.labels.len()).filter(|&i| keep.contains(&s.labels[i])).collect();
    let labels = kept.iter().map(|&i| s.labels[i]).collect();
    let mut acc: HashMap<Vec<usize>, Scalar> = HashMap::new();
    for (ix, v) in s.entries {
        let key: Vec<usize> = kept.iter().map(|&i| ix[i]).collect();
        accumulate(&mut acc, key, v);
    }
    Sparse {
        labels,
        entries: finish(acc),
    }
}

fn join(a: &Sparse, b: &Sparse, keep: &[usize]) -> Sparse {
    let shared: Vec<(usize, usize)> = a
        .labels
        .iter()
        .enumerate()
        .filter_map(|(i, l)| b.labels.iter().position(|x| x == l).map(|j| (i, j)))
        .collect();
    // result label sources: (from_a, position)
    let mut labels = Vec::new();
    let mut source = Vec::new();
    for (i, &l) in a.labels.iter().enumerate() {
        if keep.contains(&l) {
            labels.push(l);
            source.push((true, i));
        }
    }
    for (j, &l) in b.labels.iter().enumerate() {
        if keep.contains(&l) && !a.labels.contains(&l) {
            labels.push(l);
            source.push((false, j));
        }
    }
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (n, (ix, _)) in b.entries.iter().enumerate() {
        let key: Vec<usize> = shared.iter().map(|&(_, j)| ix[j]).collect();
        groups.entry(key).or_default().push(n);
    }
    let mut acc: HashMap<Vec<usize>, Scalar> = HashMap::new();
    let mut key = Vec::with_capacity(shared.len());
    for (ia, va) in &a.entries {
        key.clear();
        key.extend(shared.iter().map(|&(i, _)| ia[i]));
        let Some(group) = groups.get(&key) else {
            continue;
        };
        for &n in group {
            let (ib, vb) = &b.entries[n];
            let out: Vec<usize> = source
                .iter()
                .map(|&(from_a, p)| if from_a { ia[p] } else { ib[p] })
                .collect();
            accumulate(&mut acc, out, va.mul(vb));
        }
    }
    Sparse {
        labels,
        entries: finish(acc),
    }
}

fn accumulate(acc: &mut HashMap<Vec<usize>, Scalar>, key: Vec<usize>, v: Scalar) {
    match acc.get_mut(&key) {
        Some(s) => *s = s.add(&v),
        None => {
            acc.insert(key, v);
        }
    }
}

/// Drops cancelled entries and fixes a deterministic order, so later sums
/// happen in the same order on every run.
fn finish(acc: HashMap<Vec<usize>, Scalar>) -> Vec<(Vec<usize>, Scalar)> {
    let mut v: Vec<_> = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    v.sort_by(|x, y| x.0.cmp(&y.0));
    v
}
